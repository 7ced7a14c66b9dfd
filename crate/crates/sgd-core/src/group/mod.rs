//! Finite group representations and the machinery built on them: word
//! evaluation, Cayley-graph BFS, orbit counting, simplicity and isomorphism
//! testing. Elements are always `usize` indices into a fixed enumeration;
//! [`GroupTable`] and [`PermGroup`] both implement the [`Group`] trait.

mod alt;
mod bfs;
mod construct;
mod iso;
mod orbits;
mod perm;
mod psl;
mod word;

pub use alt::{express_three_cycle, is_three_cycle, three_cycle_decompose};
pub use bfs::{bfs_words, cayley_diameter, BfsTable};
pub use construct::{
    alternating, cyclic, dihedral, direct_product_perm, direct_product_table, quaternion_table,
    symmetric, wreath_c2_sym,
};
pub use iso::is_isomorphic;
pub use orbits::{k2_at, orbits, pair_orbit_ids, pair_orbits, point_orbits};
pub use perm::{PermGroup, Permutation};
pub use psl::{projective_space_size, psl, psl_order, Gf, PslGroup};
pub use word::{eval_word, Letter, Presentation, Word};

use rand::{Rng, SeedableRng};
use thiserror::Error;

/// Groups larger than this are rejected by the exhaustive algorithms
/// (simplicity, conjugacy classes) that walk whole element lists.
pub const EXHAUSTIVE_LIMIT: usize = 10_000;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("not a valid permutation: {0}")]
    InvalidPermutation(String),
    #[error("not a group table: {0}")]
    InvalidTable(String),
    #[error("word refers to generator {index} but only {count} were assigned")]
    GeneratorIndex { index: usize, count: usize },
    #[error("generators reach only {reached} of {order} elements")]
    NotGenerating { reached: usize, order: usize },
    #[error("permutation is odd")]
    OddPermutation,
    #[error("no 3-cycle among the generators")]
    BaseMissing,
    #[error("target is not a 3-cycle")]
    NotThreeCycle,
    #[error("not reachable: {0}")]
    NotReachable(String),
    #[error("permutation does not normalise the regular image: {0}")]
    NotNormalizing(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// A finite group whose elements are indices `0..order()`.
pub trait Group {
    fn order(&self) -> usize;
    fn identity(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inverse(&self, a: usize) -> usize;
}

/// Multiplicative order of an element.
pub fn element_order(g: &impl Group, a: usize) -> usize {
    let e = g.identity();
    let mut x = a;
    let mut n = 1;
    while x != e {
        x = g.mul(x, a);
        n += 1;
    }
    n
}

/// All elements commuting with the whole group, ascending.
pub fn centre(g: &impl Group) -> Vec<usize> {
    let n = g.order();
    (0..n)
        .filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect()
}

/// Subgroup generated by `gens`, as a sorted element list.
pub fn subgroup_closure(g: &impl Group, gens: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let e = g.identity();
    seen[e] = true;
    let mut frontier = vec![e];
    while let Some(a) = frontier.pop() {
        for &s in gens {
            let b = g.mul(a, s);
            if !seen[b] {
                seen[b] = true;
                frontier.push(b);
            }
        }
    }
    (0..g.order()).filter(|&x| seen[x]).collect()
}

/// A small generating sequence: repeatedly adjoin the least element outside
/// the subgroup generated so far. At most log2(order) generators.
pub fn greedy_generators(g: &impl Group) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut have = subgroup_closure(g, &gens);
    while have.len() < g.order() {
        let next = (0..g.order())
            .find(|x| have.binary_search(x).is_err())
            .unwrap();
        gens.push(next);
        have = subgroup_closure(g, &gens);
    }
    gens
}

/// Conjugacy classes, each sorted ascending, ordered by least member.
pub fn conjugacy_classes(g: &impl Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut class_of = vec![usize::MAX; n];
    let mut classes = Vec::new();
    for x in 0..n {
        if class_of[x] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut class = vec![x];
        class_of[x] = id;
        let mut frontier = vec![x];
        while let Some(a) = frontier.pop() {
            for t in 0..n {
                let c = g.mul(g.mul(t, a), g.inverse(t));
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    class.push(c);
                    frontier.push(c);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Normal closure of a single element: the subgroup generated by its
/// conjugacy class (a conjugation-closed generating set yields a normal
/// subgroup), as a sorted element list.
pub fn normal_closure(g: &impl Group, x: usize) -> Vec<usize> {
    let n = g.order();
    let mut class = vec![x];
    let mut in_class = vec![false; n];
    in_class[x] = true;
    let mut frontier = vec![x];
    while let Some(a) = frontier.pop() {
        for t in 0..n {
            let c = g.mul(g.mul(t, a), g.inverse(t));
            if !in_class[c] {
                in_class[c] = true;
                class.push(c);
                frontier.push(c);
            }
        }
    }
    subgroup_closure(g, &class)
}

/// True iff every nonidentity element normally generates the whole group.
/// Classes share normal closures, so one representative per class suffices.
pub fn is_simple(g: &impl Group) -> Result<bool, GroupError> {
    let n = g.order();
    if n < 2 {
        return Err(GroupError::InvalidInput(
            "simplicity needs at least 2 elements".into(),
        ));
    }
    if n > EXHAUSTIVE_LIMIT {
        return Err(GroupError::SizeLimit(format!(
            "simplicity test is exhaustive; order {n} exceeds {EXHAUSTIVE_LIMIT}"
        )));
    }
    let e = g.identity();
    for class in conjugacy_classes(g) {
        if class == [e] {
            continue;
        }
        if normal_closure(g, class[0]).len() != n {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Finite group as an explicit multiplication table.
///
/// Construction checks the Latin-square property, a two-sided identity and
/// inverses, and associativity: exhaustively up to order 256, by 10^5
/// seeded random triples beyond that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    table: Vec<usize>, // row-major: table[a*order + b] = a·b
    identity: usize,
    inverse: Vec<usize>,
}

const ASSOC_SAMPLES: u32 = 100_000;

impl GroupTable {
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<GroupTable, GroupError> {
        Self::from_rows_with_seed(rows, 0x00db_5eed)
    }

    /// `seed` drives the sampled associativity check used above order 256.
    pub fn from_rows_with_seed(rows: Vec<Vec<usize>>, seed: u64) -> Result<GroupTable, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::InvalidTable(format!(
                    "row {i} has length {} ≠ {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::InvalidTable(format!(
                        "entry ({i},{j}) = {v} out of range"
                    )));
                }
                table.push(v);
            }
        }

        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[i * n + j];
                if seen[v] {
                    return Err(GroupError::InvalidTable(format!("row {i} repeats {v}")));
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[j * n + i];
                if seen[v] {
                    return Err(GroupError::InvalidTable(format!("column {i} repeats {v}")));
                }
                seen[v] = true;
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no two-sided identity".into()))?;

        let mut inverse = vec![0; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or_else(|| GroupError::InvalidTable(format!("{a} has no two-sided inverse")))?;
            inverse[a] = inv;
        }

        let assoc = |a: usize, b: usize, c: usize| {
            table[table[a * n + b] * n + c] == table[a * n + table[b * n + c]]
        };
        if n <= 256 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if !assoc(a, b, c) {
                            return Err(GroupError::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..ASSOC_SAMPLES {
                let a = rng.gen_range(0..n);
                let b = rng.gen_range(0..n);
                let c = rng.gen_range(0..n);
                if !assoc(a, b, c) {
                    return Err(GroupError::InvalidTable(format!(
                        "associativity fails at sampled ({a},{b},{c})"
                    )));
                }
            }
        }

        Ok(GroupTable {
            order: n,
            table,
            identity,
            inverse,
        })
    }

    /// Materialize any group as a table. Skips validation: the input is
    /// already a group.
    pub fn from_group(g: &impl Group) -> GroupTable {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                table.push(g.mul(a, b));
            }
        }
        GroupTable {
            order: n,
            table,
            identity: g.identity(),
            inverse: (0..n).map(|a| g.inverse(a)).collect(),
        }
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| self.table[a * self.order..(a + 1) * self.order].to_vec())
            .collect()
    }
}

impl Group for GroupTable {
    fn order(&self) -> usize {
        self.order
    }

    fn identity(&self) -> usize {
        self.identity
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }
}
