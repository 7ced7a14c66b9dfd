//! Alternating-group machinery: decomposing even permutations into few
//! 3-cycles, and expressing an arbitrary 3-cycle as a short word in a
//! generating set that contains one.

use super::{GroupError, Letter, Permutation, Word};
use std::collections::HashMap;
use std::collections::VecDeque;

/// True iff `p` is a single 3-cycle.
pub fn is_three_cycle(p: &Permutation) -> bool {
    let cycles = p.cycles();
    cycles.len() == 1 && cycles[0].len() == 3
}

/// Write an even permutation as a product of at most `degree` 3-cycles
/// (left-to-right product order). The identity yields the empty list.
///
/// Transpositions from the cycle decomposition are paired up: two equal ones
/// cancel, two sharing a point form a 3-cycle, and two disjoint ones split as
/// (a b)(c d) = (a c b)·(a c d).
pub fn three_cycle_decompose(p: &Permutation) -> Result<Vec<Permutation>, GroupError> {
    if !p.is_even() {
        return Err(GroupError::OddPermutation);
    }
    let degree = p.degree();
    // Cycle (a0 a1 … a_{m−1}) = (a0 a1)(a1 a2)…(a_{m−2} a_{m−1}).
    let mut transpositions: Vec<(usize, usize)> = Vec::new();
    for cycle in p.cycles() {
        for w in cycle.windows(2) {
            transpositions.push((w[0], w[1]));
        }
    }
    debug_assert_eq!(transpositions.len() % 2, 0);

    let mut out = Vec::new();
    for pair in transpositions.chunks(2) {
        let (a, b) = pair[0];
        let (c, d) = pair[1];
        let shared: Vec<usize> = [a, b]
            .iter()
            .copied()
            .filter(|&x| x == c || x == d)
            .collect();
        match shared.len() {
            2 => {} // equal transpositions cancel
            1 => {
                // (a b)(c d) with one common point is a 3-cycle; compute it directly.
                let t1 = Permutation::from_cycles(degree, &[vec![a, b]])?;
                let t2 = Permutation::from_cycles(degree, &[vec![c, d]])?;
                let prod = &t1 * &t2;
                debug_assert!(is_three_cycle(&prod));
                out.push(prod);
            }
            _ => {
                // Disjoint: (a b)(c d) = (a c b)(a c d).
                out.push(Permutation::from_cycles(degree, &[vec![a, c, b]])?);
                out.push(Permutation::from_cycles(degree, &[vec![a, c, d]])?);
            }
        }
    }
    debug_assert!(out.len() <= degree);
    Ok(out)
}

/// Express a 3-cycle as a word in `gens`, where some generator is itself a
/// 3-cycle (the base). BFS over the conjugation action finds a conjugator
/// word `u` with `target = u·base^{±1}·u⁻¹`; the result is `u b^{±1} u⁻¹`
/// of odd length `2|u| + 1`.
///
/// Both the base and its inverse are used as BFS roots: on 4 points the
/// 3-cycles split into two conjugacy classes, one per root.
pub fn express_three_cycle(target: &Permutation, gens: &[Permutation]) -> Result<Word, GroupError> {
    if !is_three_cycle(target) {
        return Err(GroupError::NotThreeCycle);
    }
    let base_idx = gens
        .iter()
        .position(is_three_cycle)
        .ok_or(GroupError::BaseMissing)?;
    let base = &gens[base_idx];

    // letters[i] = (letter, acting permutation)
    let letters: Vec<(Letter, Permutation)> = gens
        .iter()
        .enumerate()
        .flat_map(|(j, g)| [((j, 1i8), g.clone()), ((j, -1i8), g.inverse())])
        .collect();

    // parent: state -> (previous state, conjugating letter); roots map to None.
    let mut parent: HashMap<Permutation, Option<(Permutation, Letter)>> = HashMap::new();
    let mut root_letter: HashMap<Permutation, i8> = HashMap::new();
    let mut queue = VecDeque::new();
    for (sign, root) in [(1i8, base.clone()), (-1i8, base.inverse())] {
        if !parent.contains_key(&root) {
            parent.insert(root.clone(), None);
            root_letter.insert(root.clone(), sign);
            queue.push_back(root);
        }
    }

    while let Some(cur) = queue.pop_front() {
        if &cur == target {
            break;
        }
        for (letter, l) in &letters {
            let next = &(l * &cur) * &l.inverse();
            if !parent.contains_key(&next) {
                parent.insert(next.clone(), Some((cur.clone(), *letter)));
                queue.push_back(next);
            }
        }
    }

    if !parent.contains_key(target) {
        return Err(GroupError::NotReachable(format!(
            "3-cycle {target} not in the conjugation orbit of the base"
        )));
    }

    // Walk back to a root, collecting the conjugator letters. The path root
    // →l1→ … →lt→ target means target = (lt · … · l1) base^± (…)⁻¹, and
    // walking backwards yields lt first, which is exactly the left-to-right
    // order of the conjugator word u.
    let mut u = Vec::new();
    let mut at = target.clone();
    while let Some((prev, letter)) = &parent[&at] {
        u.push(*letter);
        at = prev.clone();
    }
    let sign = root_letter[&at];
    let u = Word(u);
    Ok(u.concat(&Word(vec![(base_idx, sign)])).concat(&u.inverse()))
}
