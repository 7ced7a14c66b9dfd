//! PSL_n(q) at desk scale: the permutation action of SL_n(q) on projective
//! points (the scalar centre acts trivially, so the image is PSL_n(q)), with
//! the elementary transvections as designated generators.

use super::{GroupError, PermGroup, Permutation};

/// Arithmetic of a small finite field. Prime fields use modular arithmetic;
/// GF(4) ships as an explicit table.
#[derive(Debug, Clone)]
pub struct Gf {
    q: usize,
    mul: Vec<usize>,
    add: Vec<usize>,
}

impl Gf {
    /// Supported sizes: 2, 3, 4, 5, 7.
    pub fn new(q: usize) -> Result<Gf, GroupError> {
        match q {
            2 | 3 | 5 | 7 => {
                let mut add = vec![0; q * q];
                let mut mul = vec![0; q * q];
                for a in 0..q {
                    for b in 0..q {
                        add[a * q + b] = (a + b) % q;
                        mul[a * q + b] = (a * b) % q;
                    }
                }
                Ok(Gf { q, mul, add })
            }
            4 => {
                // GF(4) = F2[ω]/(ω²+ω+1), elements 0, 1, ω=2, ω²=3.
                // Addition is XOR of the 2-bit representations.
                let add: Vec<usize> = (0..16).map(|i| (i / 4) ^ (i % 4)).collect();
                #[rustfmt::skip]
                let mul = vec![
                    0, 0, 0, 0,
                    0, 1, 2, 3,
                    0, 2, 3, 1,
                    0, 3, 1, 2,
                ];
                Ok(Gf { q: 4, mul, add })
            }
            _ => Err(GroupError::InvalidInput(format!(
                "unsupported field size {q} (use 2, 3, 4, 5 or 7)"
            ))),
        }
    }

    pub fn size(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "inverse of 0");
        (1..self.q)
            .find(|&b| self.mul(a, b) == 1)
            .expect("field element has an inverse")
    }
}

/// Number of projective points of P^{n−1}(F_q): (q^n − 1)/(q − 1).
pub fn projective_space_size(n: usize, q: usize) -> usize {
    (q.pow(n as u32) - 1) / (q - 1)
}

/// PSL_n(q) acting on projective points, plus its elementary generators.
#[derive(Debug, Clone)]
pub struct PslGroup {
    pub n: usize,
    pub q: usize,
    /// The permutation group on projective points, generated by the images
    /// of all elementary transvections E_{ij}(λ).
    pub group: PermGroup,
    /// The transvection images, in the generator order of `group`.
    pub elementary: Vec<Permutation>,
}

/// Build PSL_n(q) for n ∈ {2, 3} and q ∈ {2, 3, 4, 5, 7}.
pub fn psl(n: usize, q: usize) -> Result<PslGroup, GroupError> {
    if !(n == 2 || n == 3) {
        return Err(GroupError::SizeLimit(format!(
            "psl supports n ∈ {{2, 3}}, got {n}"
        )));
    }
    if psl_order(n, q) > super::EXHAUSTIVE_LIMIT {
        return Err(GroupError::SizeLimit(format!(
            "PSL({n},{q}) has order {}, beyond desk scale",
            psl_order(n, q)
        )));
    }
    let field = Gf::new(q)?;
    let points = projective_points(n, &field);
    let index = |v: &[usize]| -> usize {
        let norm = normalize(v, &field);
        points
            .iter()
            .position(|p| p == &norm)
            .expect("normalized point enumerated")
    };

    let mut elementary = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for lambda in 1..q {
                // E_{ij}(λ) = I + λ·e_{ij} acting by left multiplication.
                let images: Vec<usize> = points
                    .iter()
                    .map(|p| {
                        let mut w = p.clone();
                        w[i] = field.add(w[i], field.mul(lambda, p[j]));
                        index(&w)
                    })
                    .collect();
                elementary.push(Permutation::from_images(images)?);
            }
        }
    }
    let group = PermGroup::new(points.len(), elementary.clone())?;
    Ok(PslGroup {
        n,
        q,
        group,
        elementary,
    })
}

/// Order of PSL_n(q).
pub fn psl_order(n: usize, q: usize) -> usize {
    let mut order = q.pow((n * (n - 1) / 2) as u32);
    for i in 2..=n {
        order *= q.pow(i as u32) - 1;
    }
    order / gcd(n, q - 1)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Scale so the last nonzero coordinate is 1.
fn normalize(v: &[usize], field: &Gf) -> Vec<usize> {
    let last = v.iter().rposition(|&c| c != 0).expect("nonzero vector");
    let scale = field.inv(v[last]);
    v.iter().map(|&c| field.mul(c, scale)).collect()
}

/// Canonical enumeration of projective points: nonzero vectors in
/// lexicographic order, normalized, first occurrence kept.
fn projective_points(n: usize, field: &Gf) -> Vec<Vec<usize>> {
    let q = field.size();
    let mut points = Vec::new();
    let mut v = vec![0; n];
    loop {
        // lexicographic increment with v[0] most significant
        let mut i = n;
        while i > 0 {
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
            if i == 0 {
                debug_assert_eq!(points.len(), projective_space_size(n, q));
                return points;
            }
        }
        let norm = normalize(&v, field);
        if !points.contains(&norm) {
            points.push(norm);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{is_isomorphic, Group};

    #[test]
    fn field_axioms_hold_for_gf4() {
        let f = Gf::new(4).unwrap();
        for a in 0..4 {
            assert_eq!(f.add(a, a), 0, "characteristic 2");
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..4 {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..4 {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn psl_orders() {
        assert_eq!(psl_order(2, 2), 6);
        assert_eq!(psl_order(2, 3), 12);
        assert_eq!(psl_order(2, 4), 60);
        assert_eq!(psl_order(2, 5), 60);
        assert_eq!(psl_order(2, 7), 168);
        assert_eq!(psl_order(3, 2), 168);
        for (n, q) in [(2, 2), (2, 3), (2, 4), (2, 5), (2, 7), (3, 2)] {
            let p = psl(n, q).unwrap();
            assert_eq!(p.group.order(), psl_order(n, q), "PSL({n},{q})");
            assert_eq!(p.group.degree(), projective_space_size(n, q));
        }
    }

    #[test]
    fn psl_2_3_is_a4() {
        let p = psl(2, 3).unwrap();
        let a4 = crate::group::alternating(4).unwrap();
        assert!(is_isomorphic(&p.group.to_table(), &a4.to_table()).is_some());
    }

    #[test]
    fn unsupported_parameters_rejected() {
        assert!(psl(4, 2).is_err());
        assert!(psl(2, 9).is_err());
    }
}
