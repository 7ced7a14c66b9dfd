//! Constructions for the small-group catalog: cyclic, dihedral, symmetric,
//! alternating, quaternion, direct products, and C2 ≀ Sm in its natural
//! action on 2m points.

use super::{Group, GroupError, GroupTable, PermGroup, Permutation};

/// C_n acting on n points by rotation (this is also its regular action).
pub fn cyclic(n: usize) -> Result<PermGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::InvalidInput("cyclic group needs n ≥ 1".into()));
    }
    if n == 1 {
        return PermGroup::new(1, vec![Permutation::identity(1)]);
    }
    let rot = Permutation::from_cycles(n, &[(0..n).collect()])?;
    PermGroup::new(n, vec![rot])
}

/// D_n of order 2n acting on the n vertices of a regular n-gon; n ≥ 3.
pub fn dihedral(n: usize) -> Result<PermGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidInput(
            "dihedral group needs n ≥ 3".into(),
        ));
    }
    let rot = Permutation::from_cycles(n, &[(0..n).collect()])?;
    let refl = Permutation::from_images((0..n).map(|i| (n - i) % n).collect())?;
    PermGroup::new(n, vec![rot, refl])
}

/// S_n in its natural action; n ≥ 1.
pub fn symmetric(n: usize) -> Result<PermGroup, GroupError> {
    match n {
        0 => Err(GroupError::InvalidInput(
            "symmetric group needs n ≥ 1".into(),
        )),
        1 => PermGroup::new(1, vec![Permutation::identity(1)]),
        2 => PermGroup::new(2, vec![Permutation::from_cycles(2, &[vec![0, 1]])?]),
        _ => PermGroup::new(
            n,
            vec![
                Permutation::from_cycles(n, &[vec![0, 1]])?,
                Permutation::from_cycles(n, &[(0..n).collect()])?,
            ],
        ),
    }
}

/// A_n in its natural action; n ≥ 3. Generators: (0 1 2) together with the
/// full n-cycle for odd n, or the (n−1)-cycle on {1, …, n−1} for even n.
pub fn alternating(n: usize) -> Result<PermGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::InvalidInput(
            "alternating group needs n ≥ 3".into(),
        ));
    }
    let three = Permutation::from_cycles(n, &[vec![0, 1, 2]])?;
    if n == 3 {
        return PermGroup::new(3, vec![three]);
    }
    let big = if n % 2 == 1 {
        Permutation::from_cycles(n, &[(0..n).collect()])?
    } else {
        Permutation::from_cycles(n, &[(1..n).collect()])?
    };
    PermGroup::new(n, vec![three, big])
}

/// Q8 = {±1, ±i, ±j, ±k} as a multiplication table, identity at index 0.
/// Element order: 1, −1, i, −i, j, −j, k, −k.
pub fn quaternion_table() -> GroupTable {
    // Signed units: (axis, sign) with axes 1, i, j, k.
    // index -> (axis, sign): 0:+1, 1:−1, 2:+i, 3:−i, 4:+j, 5:−j, 6:+k, 7:−k.
    fn unpack(x: usize) -> (usize, i8) {
        (x / 2, if x.is_multiple_of(2) { 1 } else { -1 })
    }
    fn pack(axis: usize, sign: i8) -> usize {
        axis * 2 + usize::from(sign < 0)
    }
    // i·j = k, j·k = i, k·i = j; squares of units are −1.
    fn axis_mul(a: usize, b: usize) -> (usize, i8) {
        match (a, b) {
            (0, x) => (x, 1),
            (x, 0) => (x, 1),
            (x, y) if x == y => (0, -1),
            (1, 2) => (3, 1),
            (2, 3) => (1, 1),
            (3, 1) => (2, 1),
            (2, 1) => (3, -1),
            (3, 2) => (1, -1),
            (1, 3) => (2, -1),
            _ => unreachable!(),
        }
    }
    let rows: Vec<Vec<usize>> = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (ax, sx) = unpack(x);
                    let (ay, sy) = unpack(y);
                    let (az, sz) = axis_mul(ax, ay);
                    pack(az, sx * sy * sz)
                })
                .collect()
        })
        .collect();
    GroupTable::from_rows(rows).expect("quaternion table is a group")
}

/// Direct product acting on the disjoint union of the two domains.
pub fn direct_product_perm(a: &PermGroup, b: &PermGroup) -> Result<PermGroup, GroupError> {
    let degree = a.degree() + b.degree();
    let mut gens = Vec::new();
    for g in a.generators() {
        let mut images: Vec<usize> = g.images().to_vec();
        images.extend(a.degree()..degree);
        gens.push(Permutation::from_images(images)?);
    }
    for g in b.generators() {
        let mut images: Vec<usize> = (0..a.degree()).collect();
        images.extend(g.images().iter().map(|&x| x + a.degree()));
        gens.push(Permutation::from_images(images)?);
    }
    PermGroup::new(degree, gens)
}

/// Direct product of tables, elements ordered (a, b) ↦ a·|B| + b.
pub fn direct_product_table(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let (na, nb) = (a.order(), b.order());
    let rows: Vec<Vec<usize>> = (0..na * nb)
        .map(|x| {
            let (xa, xb) = (x / nb, x % nb);
            (0..na * nb)
                .map(|y| {
                    let (ya, yb) = (y / nb, y % nb);
                    a.mul(xa, ya) * nb + b.mul(xb, yb)
                })
                .collect()
        })
        .collect();
    GroupTable::from_rows(rows).expect("product of groups is a group")
}

/// C2 ≀ Sm in its imprimitive action on 2m points: block i is {2i, 2i+1};
/// generated by the flip of block 0 and the adjacent block swaps. Order
/// 2^m · m!.
pub fn wreath_c2_sym(m: usize) -> Result<PermGroup, GroupError> {
    if m == 0 {
        return Err(GroupError::InvalidInput(
            "wreath product needs m ≥ 1".into(),
        ));
    }
    let degree = 2 * m;
    let mut gens = vec![Permutation::from_cycles(degree, &[vec![0, 1]])?];
    for i in 0..m.saturating_sub(1) {
        gens.push(Permutation::from_cycles(
            degree,
            &[vec![2 * i, 2 * i + 2], vec![2 * i + 1, 2 * i + 3]],
        )?);
    }
    PermGroup::new(degree, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{centre, element_order};

    #[test]
    fn construction_orders() {
        assert_eq!(cyclic(1).unwrap().order(), 1);
        assert_eq!(cyclic(12).unwrap().order(), 12);
        assert_eq!(dihedral(6).unwrap().order(), 12);
        assert_eq!(symmetric(5).unwrap().order(), 120);
        assert_eq!(alternating(5).unwrap().order(), 60);
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert_eq!(quaternion_table().order(), 8);
        assert_eq!(wreath_c2_sym(3).unwrap().order(), 48);
    }

    #[test]
    fn alternating_generators_are_even() {
        for n in 3..=7 {
            let g = alternating(n).unwrap();
            assert!(g.generators().iter().all(Permutation::is_even));
            assert!(g.elements().iter().all(Permutation::is_even));
        }
    }

    #[test]
    fn quaternion_structure() {
        let q = quaternion_table();
        // Unique involution −1 (index 1); i² = −1; centre = {1, −1}.
        assert_eq!(element_order(&q, 1), 2);
        assert_eq!(q.mul(2, 2), 1);
        assert_eq!((0..8).filter(|&x| element_order(&q, x) == 2).count(), 1);
        assert_eq!((0..8).filter(|&x| element_order(&q, x) == 4).count(), 6);
        assert_eq!(centre(&q), vec![0, 1]);
    }

    #[test]
    fn direct_product_of_perm_groups() {
        let g = direct_product_perm(&alternating(4).unwrap(), &cyclic(2).unwrap()).unwrap();
        assert_eq!(g.degree(), 6);
        assert_eq!(g.order(), 24);
    }

    #[test]
    fn klein_four_as_product() {
        let c2 = cyclic(2).unwrap();
        let v = direct_product_perm(&c2, &c2).unwrap();
        assert_eq!(v.order(), 4);
        assert!((0..4).all(|x| element_order(&v, x) <= 2));
    }

    #[test]
    fn wreath_centre_is_global_flip() {
        for m in 2..=4 {
            let g = wreath_c2_sym(m).unwrap();
            let z = centre(&g);
            assert_eq!(z.len(), 2, "C2 wr S{m} has centre of order 2");
            let flip = Permutation::from_cycles(
                2 * m,
                &(0..m).map(|i| vec![2 * i, 2 * i + 1]).collect::<Vec<_>>(),
            )
            .unwrap();
            assert!(z.contains(&g.element_index(&flip).unwrap()));
        }
    }
}
