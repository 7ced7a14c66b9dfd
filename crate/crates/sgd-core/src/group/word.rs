//! Words over signed generator letters, and presentations.

use super::{Group, GroupError, Permutation};
use serde::{Deserialize, Serialize};
use std::fmt;

/// A signed generator letter `x_j^{±1}`: `(j, +1)` or `(j, -1)`.
pub type Letter = (usize, i8);

/// A word in generators and their inverses, multiplied left to right:
/// `[l1, l2, l3]` denotes the product `l1·l2·l3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The formal inverse: letters reversed, signs flipped.
    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(j, s)| (j, -s)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `w^n` for `n ≥ 0`.
    pub fn pow(&self, n: usize) -> Word {
        let mut letters = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            letters.extend_from_slice(&self.0);
        }
        Word(letters)
    }

    /// Largest generator index mentioned, if any.
    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|&(j, _)| j).max()
    }

    fn check_letters(&self) -> Result<(), GroupError> {
        for &(_, s) in &self.0 {
            if s != 1 && s != -1 {
                return Err(GroupError::InvalidInput(format!(
                    "letter sign must be ±1, got {s}"
                )));
            }
        }
        Ok(())
    }

    /// Evaluate over raw permutations: `assignment[j]` is the image of `x_j`.
    pub fn eval_perms(&self, assignment: &[Permutation]) -> Result<Permutation, GroupError> {
        self.check_letters()?;
        let degree = assignment
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| GroupError::InvalidInput("empty assignment".into()))?;
        let mut acc = Permutation::identity(degree);
        for &(j, s) in &self.0 {
            let p = assignment.get(j).ok_or(GroupError::GeneratorIndex {
                index: j,
                count: assignment.len(),
            })?;
            acc = if s >= 0 {
                &acc * p
            } else {
                &acc * &p.inverse()
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, &(j, s)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            write!(f, "x{j}")?;
            if s < 0 {
                write!(f, "⁻¹")?;
            }
        }
        Ok(())
    }
}

/// Evaluate a word in `g` under an assignment of group elements to
/// generators. The empty word is the identity.
pub fn eval_word(w: &Word, assignment: &[usize], g: &impl Group) -> Result<usize, GroupError> {
    w.check_letters()?;
    let mut acc = g.identity();
    for &(j, s) in &w.0 {
        let &x = assignment.get(j).ok_or(GroupError::GeneratorIndex {
            index: j,
            count: assignment.len(),
        })?;
        let x = if s >= 0 { x } else { g.inverse(x) };
        acc = g.mul(acc, x);
    }
    Ok(acc)
}

/// A group presentation `⟨x_1, …, x_k | r_1, …, r_m⟩`. The toolkit never
/// builds the presented group from the relators; presentations are consumed
/// together with a concrete target group and an assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Result<Presentation, GroupError> {
        let p = Presentation {
            generators,
            relators,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), GroupError> {
        for (i, r) in self.relators.iter().enumerate() {
            r.check_letters()?;
            if let Some(j) = r.max_generator() {
                if j >= self.generators {
                    return Err(GroupError::InvalidInput(format!(
                        "relator {i} uses x{j} but the presentation has {} generators",
                        self.generators
                    )));
                }
            }
        }
        Ok(())
    }

    /// The length ℓ: generator count plus the sum of relator lengths.
    pub fn length(&self) -> usize {
        self.generators + self.relators.iter().map(Word::len).sum::<usize>()
    }
}
