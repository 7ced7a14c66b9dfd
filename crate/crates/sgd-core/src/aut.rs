//! Automorphism groups, the left regular representation, holomorphs, the
//! canonical map R from the normaliser of the regular image onto Aut(G),
//! brute-force normalisers at tiny degree, and the centre/orbit-count bound.

use crate::group::{
    bfs_words, centre, element_order, eval_word, greedy_generators, k2_at, point_orbits,
    subgroup_closure, Group, GroupError, GroupTable, PermGroup, Permutation, Word,
};
use rayon::prelude::*;
use serde::Serialize;

/// Default order cap for the exhaustive automorphism search.
pub const AUT_DEFAULT_LIMIT: usize = 64;
/// Cap with the explicit large flag (enough for the 720-element S6 table).
pub const AUT_LARGE_LIMIT: usize = 720;

/// The automorphism group of a table, as permutations of element indices.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub base_order: usize,
    /// All automorphisms, sorted by image vector.
    pub automorphisms: Vec<Permutation>,
    /// Indices (into `automorphisms`) of the inner automorphisms.
    pub inner: Vec<usize>,
    pub out_order: usize,
}

impl AutGroup {
    pub fn order(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn inner_order(&self) -> usize {
        self.inner.len()
    }

    /// The automorphisms as a permutation group on element indices.
    pub fn as_perm_group(&self) -> Result<PermGroup, GroupError> {
        PermGroup::new(self.base_order, self.automorphisms.clone())
    }
}

/// A small generating sequence, preferring 2-element sequences (found by a
/// bounded scan from high-order elements) and falling back to the greedy
/// sequence.
fn small_generating_sequence(g: &GroupTable) -> Vec<usize> {
    let n = g.order();
    if n == 1 {
        return Vec::new();
    }
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(element_order(g, x)));
    if let Some(&a) = by_order.first() {
        if subgroup_closure(g, &[a]).len() == n {
            return vec![a];
        }
    }
    for &a in by_order.iter().take(12) {
        for b in 0..n {
            if b == g.identity() || b == a {
                continue;
            }
            if subgroup_closure(g, &[a, b]).len() == n {
                return vec![a, b];
            }
        }
    }
    greedy_generators(g)
}

/// Orders of a fixed list of short words in two or more generators; cheap
/// necessary conditions a candidate image tuple must reproduce.
fn word_fingerprint(g: &GroupTable, gens: &[usize]) -> Vec<usize> {
    let mut orders = Vec::new();
    for i in 0..gens.len() {
        for j in 0..gens.len() {
            if i == j {
                continue;
            }
            let (a, b) = (gens[i], gens[j]);
            orders.push(element_order(g, g.mul(a, b)));
            orders.push(element_order(g, g.mul(a, g.mul(b, b))));
            // commutator a⁻¹b⁻¹ab
            let c = g.mul(g.mul(g.inverse(a), g.inverse(b)), g.mul(a, b));
            orders.push(element_order(g, c));
        }
    }
    orders
}

/// Exhaustive automorphism search by generator images: candidates must match
/// element orders, prefix subgroup orders, and a short-word fingerprint;
/// survivors are extended to full maps through BFS witness words and checked
/// against the whole table.
pub fn automorphisms(g: &GroupTable, allow_large: bool) -> Result<AutGroup, GroupError> {
    let n = g.order();
    let limit = if allow_large {
        AUT_LARGE_LIMIT
    } else {
        AUT_DEFAULT_LIMIT
    };
    if n > limit {
        return Err(GroupError::SizeLimit(format!(
            "automorphism search on order {n} exceeds the limit {limit}"
        )));
    }
    if n == 1 {
        return Ok(AutGroup {
            base_order: 1,
            automorphisms: vec![Permutation::identity(1)],
            inner: vec![0],
            out_order: 1,
        });
    }

    let gens = small_generating_sequence(g);
    let gen_orders: Vec<usize> = gens.iter().map(|&x| element_order(g, x)).collect();
    let prefix_sizes: Vec<usize> = (1..=gens.len())
        .map(|i| subgroup_closure(g, &gens[..i]).len())
        .collect();
    let fingerprint = word_fingerprint(g, &gens);
    let bfs = bfs_words(g, &gens)?;
    let words: Vec<Word> = (0..n)
        .map(|x| bfs.witness(x).expect("generating sequence"))
        .collect();
    let orders: Vec<usize> = (0..n).map(|x| element_order(g, x)).collect();

    let mut found: Vec<Permutation> = Vec::new();
    let mut images: Vec<usize> = Vec::new();
    search_automorphisms(
        g,
        &gens,
        &gen_orders,
        &prefix_sizes,
        &fingerprint,
        &orders,
        &words,
        &mut images,
        &mut found,
    );

    found.sort_unstable();
    let inner_set: Vec<Permutation> = {
        let mut set: Vec<Permutation> = (0..n).map(|u| conjugation_map(g, u)).collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    let inner: Vec<usize> = inner_set
        .iter()
        .map(|p| {
            found
                .binary_search(p)
                .expect("inner automorphism found by search")
        })
        .collect();
    debug_assert_eq!(found.len() % inner.len(), 0);
    let out_order = found.len() / inner.len();
    Ok(AutGroup {
        base_order: n,
        automorphisms: found,
        inner,
        out_order,
    })
}

/// Number of outer automorphisms: |Aut(G)| / |Inn(G)|.
pub fn out_order(g: &GroupTable, allow_large: bool) -> Result<usize, GroupError> {
    Ok(automorphisms(g, allow_large)?.out_order)
}

fn conjugation_map(g: &GroupTable, u: usize) -> Permutation {
    let ui = g.inverse(u);
    Permutation::from_images((0..g.order()).map(|x| g.mul(g.mul(u, x), ui)).collect())
        .expect("conjugation is a bijection")
}

#[allow(clippy::too_many_arguments)]
fn search_automorphisms(
    g: &GroupTable,
    gens: &[usize],
    gen_orders: &[usize],
    prefix_sizes: &[usize],
    fingerprint: &[usize],
    orders: &[usize],
    words: &[Word],
    images: &mut Vec<usize>,
    found: &mut Vec<Permutation>,
) {
    let depth = images.len();
    if depth == gens.len() {
        if word_fingerprint(g, images) != fingerprint {
            return;
        }
        if let Some(map) = extend_by_words(g, images, words) {
            found.push(map);
        }
        return;
    }
    for candidate in 0..g.order() {
        if orders[candidate] != gen_orders[depth] {
            continue;
        }
        images.push(candidate);
        if subgroup_closure(g, images).len() == prefix_sizes[depth] {
            search_automorphisms(
                g,
                gens,
                gen_orders,
                prefix_sizes,
                fingerprint,
                orders,
                words,
                images,
                found,
            );
        }
        images.pop();
    }
}

fn extend_by_words(g: &GroupTable, images: &[usize], words: &[Word]) -> Option<Permutation> {
    let n = g.order();
    let mut map = Vec::with_capacity(n);
    let mut hit = vec![false; n];
    for word in words {
        let y = eval_word(word, images, g).expect("valid word");
        if hit[y] {
            return None;
        }
        hit[y] = true;
        map.push(y);
    }
    for a in 0..n {
        for b in 0..n {
            if map[g.mul(a, b)] != g.mul(map[a], map[b]) {
                return None;
            }
        }
    }
    Some(Permutation::from_images(map).expect("bijection"))
}

/// The left regular representation g ↦ τ_g with τ_g(x) = g·x.
#[derive(Debug, Clone)]
pub struct RegularRep {
    pub source: GroupTable,
    /// The image ⟨τ_g : g in a generating sequence⟩ ≤ Sym(G).
    pub image: PermGroup,
}

impl RegularRep {
    pub fn tau(&self, g: usize) -> Permutation {
        let n = self.source.order();
        Permutation::from_images((0..n).map(|x| self.source.mul(g, x)).collect())
            .expect("left translation is a bijection")
    }

    /// Recover g from τ_g (τ_g maps the identity to g).
    pub fn element_of(&self, tau: &Permutation) -> usize {
        tau.apply(self.source.identity())
    }
}

pub fn regular_representation(g: &GroupTable) -> RegularRep {
    let n = g.order();
    let gens = if n == 1 {
        vec![g.identity()]
    } else {
        greedy_generators(g)
    };
    let rep = RegularRep {
        source: g.clone(),
        image: PermGroup::new(
            n,
            gens.iter()
                .map(|&x| {
                    Permutation::from_images((0..n).map(|y| g.mul(x, y)).collect())
                        .expect("bijection")
                })
                .collect(),
        )
        .expect("valid permutations"),
    };
    debug_assert_eq!(rep.image.order(), n, "regular representation is faithful");
    rep
}

/// The holomorph: the subgroup of Sym(G) generated by the regular image and
/// the automorphisms. Its order is |G|·|Aut(G)|, and it equals the
/// normaliser of the regular image in Sym(G).
pub fn holomorph(g: &GroupTable, aut: &AutGroup) -> Result<PermGroup, GroupError> {
    let rep = regular_representation(g);
    let mut gens: Vec<Permutation> = rep.image.generators().to_vec();
    gens.extend(aut.automorphisms.iter().cloned());
    let hol = PermGroup::new(g.order(), gens)?;
    let expected = g.order() * aut.order();
    if hol.order() != expected {
        return Err(GroupError::InvalidInput(format!(
            "holomorph order {} ≠ |G|·|Aut(G)| = {expected}",
            hol.order()
        )));
    }
    Ok(hol)
}

/// The canonical map R: for φ normalising the regular image,
/// R(φ)(g) = h where φ·τ_g·φ⁻¹ = τ_h. Errors if φ does not normalise.
pub fn r_map(phi: &Permutation, rep: &RegularRep) -> Result<Permutation, GroupError> {
    let n = rep.source.order();
    if phi.degree() != n {
        return Err(GroupError::InvalidPermutation(format!(
            "φ has degree {}, expected {n}",
            phi.degree()
        )));
    }
    let phi_inv = phi.inverse();
    let mut images = Vec::with_capacity(n);
    for g in 0..n {
        let conj = &(phi * &rep.tau(g)) * &phi_inv;
        let h = rep.element_of(&conj);
        if conj != rep.tau(h) {
            return Err(GroupError::NotNormalizing(format!(
                "φ·τ_{g}·φ⁻¹ is not a left translation"
            )));
        }
        images.push(h);
    }
    let map = Permutation::from_images(images)
        .map_err(|_| GroupError::NotNormalizing("R(φ) is not a bijection".into()))?;
    debug_assert!(preserves_table(&rep.source, &map));
    Ok(map)
}

fn preserves_table(g: &GroupTable, map: &Permutation) -> bool {
    let n = g.order();
    (0..n).all(|a| (0..n).all(|b| map.apply(g.mul(a, b)) == g.mul(map.apply(a), map.apply(b))))
}

/// Brute-force normaliser of H in S_n by sweeping all n! permutations;
/// n ≤ 8. It suffices to check σhσ⁻¹ ∈ H on generators: conjugation by σ
/// is an automorphism of S_n, so σHσ⁻¹ is a subgroup of H of equal order.
pub fn brute_normalizer(h: &PermGroup) -> Result<PermGroup, GroupError> {
    let n = h.degree();
    if n > 8 {
        return Err(GroupError::SizeLimit(format!(
            "brute normaliser at degree {n} > 8"
        )));
    }
    let all = all_permutations(n);
    let found: Vec<Permutation> = all
        .into_par_iter()
        .filter(|sigma| {
            let inv = sigma.inverse();
            h.generators()
                .iter()
                .all(|gen| h.contains(&(&(sigma * gen) * &inv)))
        })
        .collect();
    // already sorted: all_permutations enumerates in lexicographic order
    PermGroup::new(n, found)
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        if rest.is_empty() {
            out.push(Permutation::from_images(prefix.clone()).expect("permutation"));
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            prefix.push(x);
            rec(prefix, rest, out);
            prefix.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// The finite centre bound: |C(G)| ≤ ∏ over 1-orbit representatives r of
/// k₂(G, r).
#[derive(Debug, Clone, Serialize)]
pub struct CentreBoundReport {
    pub centre_order: usize,
    pub orbit_reps: Vec<usize>,
    pub k2_values: Vec<usize>,
    pub bound: u128,
    pub holds: bool,
}

pub fn centre_bound_report(g: &PermGroup) -> CentreBoundReport {
    let centre_order = centre(g).len();
    let orbit_reps: Vec<usize> = point_orbits(g).iter().map(|o| o[0]).collect();
    let k2_values: Vec<usize> = orbit_reps.iter().map(|&r| k2_at(g, r)).collect();
    let bound = k2_values.iter().map(|&k| k as u128).product();
    CentreBoundReport {
        centre_order,
        orbit_reps,
        k2_values,
        bound,
        holds: (centre_order as u128) <= bound,
    }
}
