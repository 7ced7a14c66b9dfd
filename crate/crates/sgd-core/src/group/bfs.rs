//! Breadth-first search over a Cayley graph, producing exact geodesic
//! distances and shortlex-least witness words.

use super::{Group, GroupError, Letter, Word};
use std::collections::VecDeque;

/// Result of a Cayley BFS from the identity over the alphabet
/// `{gens ∪ inverses}`. Letters are tried in the fixed tie-break order
/// `(0,+), (0,−), (1,+), (1,−), …`, making every stored witness the
/// shortlex-least word for its element.
#[derive(Debug, Clone)]
pub struct BfsTable {
    dist: Vec<Option<u32>>,
    parent: Vec<Option<(usize, Letter)>>,
    reached: usize,
}

impl BfsTable {
    /// Geodesic distance of `element` from the identity, if reached.
    pub fn distance(&self, element: usize) -> Option<u32> {
        self.dist[element]
    }

    /// Shortlex-least witness word for `element`, if reached.
    pub fn witness(&self, element: usize) -> Option<Word> {
        self.dist[element]?;
        let mut letters = Vec::new();
        let mut at = element;
        while let Some((prev, letter)) = self.parent[at] {
            letters.push(letter);
            at = prev;
        }
        letters.reverse();
        Some(Word(letters))
    }

    pub fn reached(&self) -> usize {
        self.reached
    }

    pub fn reached_all(&self, order: usize) -> bool {
        self.reached == order
    }

    /// Max distance over reached elements.
    pub fn eccentricity(&self) -> u32 {
        self.dist.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Elements at each distance (index = distance).
    pub fn distance_histogram(&self) -> Vec<usize> {
        let mut hist = vec![0usize; self.eccentricity() as usize + 1];
        for d in self.dist.iter().flatten() {
            hist[*d as usize] += 1;
        }
        hist
    }
}

/// BFS from the identity over `gens` and their inverses.
pub fn bfs_words(g: &impl Group, gens: &[usize]) -> Result<BfsTable, GroupError> {
    if gens.is_empty() {
        return Err(GroupError::InvalidInput(
            "bfs needs at least one generator".into(),
        ));
    }
    let n = g.order();
    for &x in gens {
        if x >= n {
            return Err(GroupError::InvalidInput(format!(
                "element {x} out of range for order {n}"
            )));
        }
    }
    // Letter alphabet in tie-break order; the element each letter multiplies by.
    let alphabet: Vec<(Letter, usize)> = gens
        .iter()
        .enumerate()
        .flat_map(|(j, &x)| [((j, 1i8), x), ((j, -1i8), g.inverse(x))])
        .collect();

    let mut dist = vec![None; n];
    let mut parent = vec![None; n];
    let e = g.identity();
    dist[e] = Some(0);
    let mut reached = 1;
    let mut queue = VecDeque::new();
    queue.push_back(e);
    while let Some(a) = queue.pop_front() {
        let d = dist[a].unwrap();
        for &(letter, x) in &alphabet {
            let b = g.mul(a, x);
            if dist[b].is_none() {
                dist[b] = Some(d + 1);
                parent[b] = Some((a, letter));
                reached += 1;
                queue.push_back(b);
            }
        }
    }
    Ok(BfsTable {
        dist,
        parent,
        reached,
    })
}

/// Exact Cayley diameter: the max geodesic distance, requiring that `gens`
/// actually generate `g`.
pub fn cayley_diameter(g: &impl Group, gens: &[usize]) -> Result<u32, GroupError> {
    let table = bfs_words(g, gens)?;
    if !table.reached_all(g.order()) {
        return Err(GroupError::NotGenerating {
            reached: table.reached(),
            order: g.order(),
        });
    }
    Ok(table.eccentricity())
}
