//! Orbit machinery for permutation groups: 1- and 2-orbits of the natural
//! (diagonal) action, and the per-representative 2-orbit count k₂(G, r).

use super::{GroupError, PermGroup};

/// Orbits of points, each sorted, ordered by least member.
pub fn point_orbits(g: &PermGroup) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = vec![start];
        orbit_of[start] = id;
        let mut frontier = vec![start];
        while let Some(x) = frontier.pop() {
            for gen in g.generators() {
                let y = gen.apply(x);
                if orbit_of[y] == usize::MAX {
                    orbit_of[y] = id;
                    orbit.push(y);
                    frontier.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Orbit id of every ordered pair under the diagonal action, as a flat
/// `degree²` vector (pair (a,b) at index a·degree + b), plus the orbit count.
/// Ids are assigned in order of each orbit's least pair.
pub fn pair_orbit_ids(g: &PermGroup) -> (Vec<usize>, usize) {
    let n = g.degree();
    let mut orbit_of = vec![usize::MAX; n * n];
    let mut count = 0;
    for start in 0..n * n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = count;
        count += 1;
        orbit_of[start] = id;
        let mut frontier = vec![(start / n, start % n)];
        while let Some((a, b)) = frontier.pop() {
            for gen in g.generators() {
                let (x, y) = (gen.apply(a), gen.apply(b));
                if orbit_of[x * n + y] == usize::MAX {
                    orbit_of[x * n + y] = id;
                    frontier.push((x, y));
                }
            }
        }
    }
    (orbit_of, count)
}

/// 2-orbits as explicit pair lists, each sorted, ordered by least pair.
pub fn pair_orbits(g: &PermGroup) -> Vec<Vec<(usize, usize)>> {
    let n = g.degree();
    let (ids, count) = pair_orbit_ids(g);
    let mut orbits = vec![Vec::new(); count];
    for a in 0..n {
        for b in 0..n {
            orbits[ids[a * n + b]].push((a, b));
        }
    }
    orbits
}

/// Orbit partition of the diagonal action on p-tuples, p ∈ {1, 2}. Tuples
/// are returned as vectors so both arities share a shape.
pub fn orbits(g: &PermGroup, arity: usize) -> Result<Vec<Vec<Vec<usize>>>, GroupError> {
    match arity {
        1 => Ok(point_orbits(g)
            .into_iter()
            .map(|orbit| orbit.into_iter().map(|x| vec![x]).collect())
            .collect()),
        2 => Ok(pair_orbits(g)
            .into_iter()
            .map(|orbit| orbit.into_iter().map(|(a, b)| vec![a, b]).collect())
            .collect()),
        p => Err(GroupError::InvalidInput(format!(
            "orbit arity must be 1 or 2, got {p}"
        ))),
    }
}

/// k₂(G, r): the number of 2-orbits containing a pair of the form (r, t).
/// Depends only on the 1-orbit of r.
pub fn k2_at(g: &PermGroup, r: usize) -> usize {
    let n = g.degree();
    let (ids, _) = pair_orbit_ids(g);
    let mut seen: Vec<usize> = (0..n).map(|t| ids[r * n + t]).collect();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}
