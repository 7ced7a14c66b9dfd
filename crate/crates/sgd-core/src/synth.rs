//! Sentence synthesis: the generation formula δ_{v,k}, describing sentences
//! built from a presentation plus a diameter exponent, presentation
//! verification, and the elementary-decomposition check for PSL_n(q).
//!
//! Variable numbering in synthesized formulas: the subject (the element
//! being generated, or the universally quantified y) is v0; the generators
//! x_1..x_k are v1..vk; recursion level i binds the triple
//! v(k+3i−2), v(k+3i−1), v(k+3i); nontriviality-guard witnesses come after
//! all of those.

use crate::formula::{length, symbol_count, Formula, LengthReport, Term};
use crate::group::{
    bfs_words, eval_word, is_simple, Group, GroupError, Presentation, PslGroup, Word,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Published length constants: every synthesized δ_{v,k} satisfies
/// `symbol_count ≤ A·k + B·v + C` (in fact with equality), and every
/// synthesized describing sentence satisfies `symbol_count ≤ D·(v+ℓ) + E`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SynthConstants {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
}

pub const SYNTH_CONSTANTS: SynthConstants = SynthConstants {
    a: 10,
    b: 17,
    c: 1,
    d: 17,
    e: 19,
};

/// δ's length is exactly linear: `A·k + B·v + C` symbols.
pub fn delta_length_bound(v: u32, k: u32) -> u64 {
    let SynthConstants { a, b, c, .. } = SYNTH_CONSTANTS;
    a * u64::from(k) + b * u64::from(v) + c
}

/// The describing-sentence bound `D·(v+ℓ) + E`.
pub fn psi_length_bound(v: u32, presentation_length: usize) -> u64 {
    let SynthConstants { d, e, .. } = SYNTH_CONSTANTS;
    d * (u64::from(v) + presentation_length as u64) + e
}

/// Smallest r with 2^r ≥ m (so 1 maps to 0).
pub fn ceil_log2(m: u64) -> u32 {
    if m <= 1 {
        0
    } else {
        64 - (m - 1).leading_zeros()
    }
}

fn pow2_at_least(v: u32, d: u64) -> bool {
    v >= 63 || d <= (1u64 << v)
}

/// The generation formula δ_{v,k}(g; x_1..x_k), free in v0 (the subject g)
/// and v1..vk. It holds iff g is a product of at most 2^v generators and
/// inverses:
///
/// - δ_{0,k}: the disjunction over j of g = x_j ∨ g = x_j⁻¹ ∨ g = 1;
/// - δ_{i,k}: ∃u∃v (g = u·v ∧ ∀w ((w = u ∨ w = v) → δ_{i−1,k}(w))),
///
/// so each level contains a single copy of the one below and the length
/// grows by a constant per level.
pub fn delta_formula(v: u32, k: u32) -> Formula {
    assert!(k >= 1, "delta needs at least one generator");
    let f = build_delta(v, k, 0);
    debug_assert_eq!(symbol_count(&f), delta_length_bound(v, k));
    f
}

fn build_delta(level: u32, k: u32, subject: u32) -> Formula {
    let g = || Term::var(subject);
    if level == 0 {
        let mut parts = Vec::with_capacity(3 * k as usize);
        for j in 1..=k {
            parts.push(Formula::eq(g(), Term::var(j)));
            parts.push(Formula::eq(g(), Term::inv(Term::var(j))));
            parts.push(Formula::eq(g(), Term::One));
        }
        return Formula::or(parts);
    }
    let base = k + 3 * (level - 1);
    let (u, v, w) = (base + 1, base + 2, base + 3);
    Formula::exists(
        u,
        Formula::exists(
            v,
            Formula::and(vec![
                Formula::eq(g(), Term::mul(Term::var(u), Term::var(v))),
                Formula::forall(
                    w,
                    Formula::implies(
                        Formula::or(vec![
                            Formula::eq(Term::var(w), Term::var(u)),
                            Formula::eq(Term::var(w), Term::var(v)),
                        ]),
                        build_delta(level - 1, k, w),
                    ),
                ),
            ]),
        ),
    )
}

/// Translate a word to a term over x_1..x_k (variables v1..vk),
/// parenthesized left-associatively. The empty word is the identity.
pub fn word_to_term(w: &Word) -> Term {
    let mut letters = w.letters().iter();
    let letter_term = |&(j, s): &(usize, i8)| {
        let x = Term::var(j as u32 + 1);
        if s >= 0 {
            x
        } else {
            Term::inv(x)
        }
    };
    match letters.next() {
        None => Term::One,
        Some(first) => letters.fold(letter_term(first), |acc, l| Term::mul(acc, letter_term(l))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Guard `x_1 ≠ 1`; requires a simple target (every proper quotient
    /// kills everything, so the guard leaves exactly the target).
    #[serde(rename = "simple")]
    Simple,
    /// Guard "at least 3 elements", for targets whose only proper
    /// nontrivial quotient has 2 elements (symmetric groups).
    #[serde(rename = "at_least_3")]
    AtLeast3,
}

/// Everything a describing sentence is synthesized from: a presentation, a
/// concrete target realizing it, the images of the generators, and the
/// diameter exponent v asserting diameter ≤ 2^v.
#[derive(Debug, Clone)]
pub struct DescriptionJob<G> {
    pub presentation: Presentation,
    pub target: G,
    pub assignment: Vec<usize>,
    pub v: u32,
    pub variant: Variant,
    /// Permit `Variant::Simple` on a non-simple target. The sentence is
    /// still well-formed; whether it describes the target then depends on
    /// which generators survive in proper quotients, so uniqueness must be
    /// checked by sweep. Off by default.
    pub allow_nonsimple: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub relators_ok: bool,
    /// Indices of relators that do not vanish under the assignment.
    pub failed_relators: Vec<usize>,
    pub generates: bool,
    pub reached: usize,
    pub order: usize,
    /// Exact Cayley diameter of the subgroup generated by the assignment
    /// (equals the group's diameter when `generates`).
    pub diameter: u32,
    pub v: u32,
    pub v_ok: bool,
}

impl VerifyReport {
    pub fn all_ok(&self) -> bool {
        self.relators_ok && self.generates && self.v_ok
    }
}

#[derive(Debug, Error)]
pub enum SynthError {
    #[error("presentation fails under the assignment: relators_ok={} generates={}", .0.relators_ok, .0.generates)]
    PresentationFails(VerifyReport),
    #[error("target is not simple (use `allow_nonsimple` to bypass, or variant at_least_3)")]
    NotSimple,
    #[error("diameter {} exceeds 2^{}", .0.diameter, .0.v)]
    DiameterExceeded(VerifyReport),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Evaluate every relator under the assignment, check that the assignment
/// generates the target, and compare the exact diameter against 2^v.
pub fn verify_presentation(
    presentation: &Presentation,
    target: &impl Group,
    assignment: &[usize],
    v: u32,
) -> Result<VerifyReport, GroupError> {
    presentation.validate()?;
    if assignment.len() != presentation.generators {
        return Err(GroupError::InvalidInput(format!(
            "assignment has {} elements for {} generators",
            assignment.len(),
            presentation.generators
        )));
    }
    let e = target.identity();
    let mut failed = Vec::new();
    for (i, r) in presentation.relators.iter().enumerate() {
        if eval_word(r, assignment, target)? != e {
            failed.push(i);
        }
    }
    let bfs = bfs_words(target, assignment)?;
    let diameter = bfs.eccentricity();
    Ok(VerifyReport {
        relators_ok: failed.is_empty(),
        failed_relators: failed,
        generates: bfs.reached_all(target.order()),
        reached: bfs.reached(),
        order: target.order(),
        diameter,
        v,
        v_ok: pow2_at_least(v, u64::from(diameter)),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SynthReport {
    pub length: LengthReport,
    pub presentation_length: usize,
    pub v: u32,
    pub diameter: u32,
    pub length_bound: u64,
    pub simplicity_bypassed: bool,
}

/// Build the describing sentence for a verified job:
///
/// ∃x_1…∃x_k ( guard ∧ r_1 = 1 ∧ … ∧ r_m = 1 ∧ ∀y δ_{v,k}(y; x̄) )
///
/// where the guard is x_1 ≠ 1 (`Simple`) or a sentence asserting at least
/// three elements (`AtLeast3`). Relators of length zero are vacuous and
/// skipped. The result always satisfies the published `D·(v+ℓ)+E` bound.
pub fn describing_sentence<G: Group>(
    job: &DescriptionJob<G>,
) -> Result<(Formula, SynthReport), SynthError> {
    let report = verify_presentation(&job.presentation, &job.target, &job.assignment, job.v)?;
    if !report.relators_ok || !report.generates {
        return Err(SynthError::PresentationFails(report));
    }
    if !report.v_ok {
        return Err(SynthError::DiameterExceeded(report));
    }
    let mut bypassed = false;
    if job.variant == Variant::Simple && !is_simple(&job.target)? {
        if !job.allow_nonsimple {
            return Err(SynthError::NotSimple);
        }
        bypassed = true;
    }

    let k = job.presentation.generators as u32;
    let guard = match job.variant {
        Variant::Simple => Formula::neq(Term::var(1), Term::One),
        Variant::AtLeast3 => {
            // ∃a∃b (a ≠ 1 ∧ b ≠ 1 ∧ a ≠ b), the shortest sentence with
            // this meaning in the group signature.
            let a = k + 3 * job.v + 1;
            let b = a + 1;
            Formula::exists(
                a,
                Formula::exists(
                    b,
                    Formula::and(vec![
                        Formula::neq(Term::var(a), Term::One),
                        Formula::neq(Term::var(b), Term::One),
                        Formula::neq(Term::var(a), Term::var(b)),
                    ]),
                ),
            )
        }
    };

    let mut conjuncts = vec![guard];
    for r in &job.presentation.relators {
        if r.is_empty() {
            continue;
        }
        conjuncts.push(Formula::eq(word_to_term(r), Term::One));
    }
    conjuncts.push(Formula::forall(0, delta_formula(job.v, k)));

    let mut psi = Formula::and(conjuncts);
    for x in (1..=k).rev() {
        psi = Formula::exists(x, psi);
    }
    debug_assert!(psi.is_sentence());

    let report = SynthReport {
        length: length(&psi),
        presentation_length: job.presentation.length(),
        v: job.v,
        diameter: report.diameter,
        length_bound: psi_length_bound(job.v, job.presentation.length()),
        simplicity_bypassed: bypassed,
    };
    assert!(
        report.length.symbol_count <= report.length_bound,
        "synthesized sentence breaks the published length bound: {} > {}",
        report.length.symbol_count,
        report.length_bound
    );
    Ok((psi, report))
}

#[derive(Debug, Clone, Serialize)]
pub struct RowReductionReport {
    pub n: usize,
    pub q: usize,
    pub group_order: usize,
    /// Max over all elements of the least number of elementary transvection
    /// images multiplying to it.
    pub max_factors: u32,
    /// n², the row-reduction bound.
    pub bound: u32,
    pub within_bound: bool,
}

/// Check, exhaustively, that every element of PSL_n(q) is a product of at
/// most n² elementary transvection images. The elementary set is closed
/// under inverses, so BFS distance over it is exactly the least factor
/// count.
pub fn psl_row_reduction_check(p: &PslGroup) -> Result<RowReductionReport, GroupError> {
    let gens = p.group.generator_indices();
    let bfs = bfs_words(&p.group, &gens)?;
    if !bfs.reached_all(p.group.order()) {
        return Err(GroupError::NotGenerating {
            reached: bfs.reached(),
            order: p.group.order(),
        });
    }
    let max_factors = bfs.eccentricity();
    let bound = (p.n * p.n) as u32;
    Ok(RowReductionReport {
        n: p.n,
        q: p.q,
        group_order: p.group.order(),
        max_factors,
        bound,
        within_bound: max_factors <= bound,
    })
}
