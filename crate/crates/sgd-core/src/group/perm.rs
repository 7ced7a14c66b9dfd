//! Permutations on `{0, …, n−1}` and permutation groups given by generators.

use super::{Group, GroupError};
use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::OnceLock;

/// A bijection on `{0, …, n−1}`, stored as its image vector.
///
/// The product `a * b` is function composition with `b` applied first:
/// `(a * b)(x) = a(b(x))`. Words multiply left to right under the same
/// convention, so `eval([l1, l2]) = l1 * l2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Permutation, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v >= n {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {v} out of range for degree {n}"
                )));
            }
            if seen[v] {
                return Err(GroupError::InvalidPermutation(format!(
                    "image {v} repeated"
                )));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    /// Build from disjoint cycles, e.g. `[[0,1],[2,3]]` for (0 1)(2 3).
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Permutation, GroupError> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut moved = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {p} out of range for degree {degree}"
                    )));
                }
                if moved[p] {
                    return Err(GroupError::InvalidPermutation(format!(
                        "point {p} appears in two cycles"
                    )));
                }
                moved[p] = true;
                images[p] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y] = x;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Nontrivial cycles, each rotated to start at its least point, sorted by
    /// that point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    /// Parity: even iff the permutation is a product of an even number of
    /// transpositions.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| lcm(acc, c.len()))
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        Permutation {
            images: (0..rhs.images.len())
                .map(|x| self.images[rhs.images[x]])
                .collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, p) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

struct Closure {
    /// All elements, sorted by image vector; the identity is index 0.
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

/// A permutation group given by generators. The element list is computed on
/// first use and cached; elements are then addressed by their index in the
/// sorted list (identity first).
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    closure: OnceLock<Closure>,
}

impl fmt::Debug for Closure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Closure({} elements)", self.elements.len())
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup::new(self.degree, self.generators.clone()).expect("clone of valid group")
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup, GroupError> {
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::InvalidPermutation(format!(
                    "generator degree {} ≠ group degree {degree}",
                    g.degree()
                )));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            closure: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    fn closure(&self) -> &Closure {
        self.closure.get_or_init(|| {
            let mut seen: HashSet<Permutation> = HashSet::new();
            let id = Permutation::identity(self.degree);
            seen.insert(id.clone());
            let mut frontier = vec![id];
            while let Some(p) = frontier.pop() {
                for g in &self.generators {
                    let q = &p * g;
                    if seen.insert(q.clone()) {
                        frontier.push(q);
                    }
                }
            }
            let mut elements: Vec<Permutation> = seen.into_iter().collect();
            elements.sort_unstable();
            debug_assert!(elements[0].is_identity());
            let index = elements
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, p)| (p, i))
                .collect();
            Closure { elements, index }
        })
    }

    /// All group elements, sorted by image vector (identity first).
    pub fn elements(&self) -> &[Permutation] {
        &self.closure().elements
    }

    pub fn element_index(&self, p: &Permutation) -> Option<usize> {
        self.closure().index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.element_index(p).is_some()
    }

    /// Indices of the defining generators in the element list.
    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators
            .iter()
            .map(|g| self.element_index(g).expect("generator in own closure"))
            .collect()
    }

    pub fn to_table(&self) -> super::GroupTable {
        super::GroupTable::from_group(self)
    }
}

impl Group for PermGroup {
    fn order(&self) -> usize {
        self.closure().elements.len()
    }

    fn identity(&self) -> usize {
        0
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        let c = self.closure();
        let p = &c.elements[a] * &c.elements[b];
        c.index[&p]
    }

    fn inverse(&self, a: usize) -> usize {
        let c = self.closure();
        c.index[&c.elements[a].inverse()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cycles: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(degree, &cycles).unwrap()
    }

    #[test]
    fn cycle_construction_and_display() {
        let p = perm(5, &[&[0, 1], &[2, 3]]);
        assert_eq!(p.to_string(), "(0 1)(2 3)");
        assert_eq!(p.apply(0), 1);
        assert_eq!(p.apply(4), 4);
        assert!(p.is_even());
        assert_eq!(p.order(), 2);
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = perm(3, &[&[0, 1]]);
        let b = perm(3, &[&[1, 2]]);
        // (a*b)(1) = a(b(1)) = a(2) = 2; (a*b)(2) = a(1) = 0; (a*b)(0) = a(0) = 1.
        assert_eq!((&a * &b).to_string(), "(0 1 2)");
    }

    #[test]
    fn inverse_composes_to_identity() {
        let p = perm(6, &[&[0, 3, 1], &[2, 5]]);
        assert!((&p * &p.inverse()).is_identity());
    }

    #[test]
    fn parity() {
        assert!(perm(4, &[&[0, 1, 2]]).is_even());
        assert!(!perm(4, &[&[0, 1]]).is_even());
        assert!(perm(4, &[&[0, 1], &[2, 3]]).is_even());
        assert!(Permutation::identity(4).is_even());
    }

    #[test]
    fn closure_of_s3() {
        let g = PermGroup::new(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert!(g.elements()[0].is_identity());
        // Group axioms through the trait.
        for a in 0..6 {
            assert_eq!(g.mul(a, g.inverse(a)), 0);
            assert_eq!(g.mul(a, 0), a);
        }
    }

    #[test]
    fn invalid_cycles_rejected() {
        assert!(Permutation::from_cycles(3, &[vec![0, 3]]).is_err());
        assert!(Permutation::from_cycles(3, &[vec![0, 1], vec![1, 2]]).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }
}
