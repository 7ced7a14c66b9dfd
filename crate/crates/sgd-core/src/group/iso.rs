//! Isomorphism testing for explicit group tables.

use super::{
    bfs_words, element_order, greedy_generators, subgroup_closure, Group, GroupTable, Word,
};

/// Search for an isomorphism `G → H`, returned as the image vector of the
/// elements of `G`. A fixed greedy generating sequence of `G` is mapped to
/// candidate tuples in `H`; candidates are pruned by element order and by the
/// order of the subgroup generated so far, then the induced map is checked on
/// the whole table.
pub fn is_isomorphic(g: &GroupTable, h: &GroupTable) -> Option<Vec<usize>> {
    let n = g.order();
    if n != h.order() {
        return None;
    }
    // Order-profile invariant.
    let mut g_profile: Vec<usize> = (0..n).map(|x| element_order(g, x)).collect();
    let h_orders: Vec<usize> = (0..n).map(|x| element_order(h, x)).collect();
    let mut h_profile = h_orders.clone();
    g_profile.sort_unstable();
    h_profile.sort_unstable();
    if g_profile != h_profile {
        return None;
    }

    let gens = greedy_generators(g);
    if gens.is_empty() {
        // Trivial group.
        return Some(vec![h.identity()]);
    }
    let gen_orders: Vec<usize> = gens.iter().map(|&x| element_order(g, x)).collect();
    // Size of ⟨g_1..g_i⟩ for each prefix, for pruning.
    let prefix_sizes: Vec<usize> = (1..=gens.len())
        .map(|i| subgroup_closure(g, &gens[..i]).len())
        .collect();
    // Every element of G as a word in the generating sequence.
    let bfs = bfs_words(g, &gens).expect("generating sequence generates G");
    let words: Vec<Word> = (0..n).map(|x| bfs.witness(x).expect("generated")).collect();

    let mut images = Vec::with_capacity(gens.len());
    search(
        g,
        h,
        &gens,
        &gen_orders,
        &prefix_sizes,
        &h_orders,
        &words,
        &mut images,
    )
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &GroupTable,
    h: &GroupTable,
    gens: &[usize],
    gen_orders: &[usize],
    prefix_sizes: &[usize],
    h_orders: &[usize],
    words: &[Word],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        return extend_and_check(g, h, images, words);
    }
    for candidate in 0..h.order() {
        if h_orders[candidate] != gen_orders[depth] {
            continue;
        }
        images.push(candidate);
        if subgroup_closure(h, images).len() == prefix_sizes[depth] {
            if let Some(found) = search(
                g,
                h,
                gens,
                gen_orders,
                prefix_sizes,
                h_orders,
                words,
                images,
            ) {
                return Some(found);
            }
        }
        images.pop();
    }
    None
}

fn extend_and_check(
    g: &GroupTable,
    h: &GroupTable,
    images: &[usize],
    words: &[Word],
) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for word in words {
        let y = super::eval_word(word, images, h).expect("image assignment is complete");
        if hit[y] {
            return None; // not injective
        }
        hit[y] = true;
        map.push(y);
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != h.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(map)
}
