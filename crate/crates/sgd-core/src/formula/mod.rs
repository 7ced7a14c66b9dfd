//! First-order language of groups: terms over (·, ⁻¹, 1), formulas with
//! equality and quantifiers, a deterministic S-expression surface syntax,
//! and the length metric used by every compressibility ledger.

mod parse;

pub use parse::{parse, parse_term, ParseError, Pos};

use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt;

/// A group-signature term. Variables are numbered, not named; `v7` in the
/// surface syntax is `Var(7)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    /// The identity constant, rendered `e`.
    One,
    Var(u32),
    Mul(Box<Term>, Box<Term>),
    Inv(Box<Term>),
}

impl Term {
    pub fn var(i: u32) -> Term {
        Term::Var(i)
    }

    #[allow(clippy::should_implement_trait)] // constructor, not arithmetic
    pub fn mul(lhs: Term, rhs: Term) -> Term {
        Term::Mul(Box::new(lhs), Box::new(rhs))
    }

    pub fn inv(t: Term) -> Term {
        Term::Inv(Box::new(t))
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Term::One => {}
            Term::Var(i) => {
                out.insert(*i);
            }
            Term::Mul(l, r) => {
                l.collect_vars(out);
                r.collect_vars(out);
            }
            Term::Inv(t) => t.collect_vars(out),
        }
    }

    fn max_var(&self) -> Option<u32> {
        match self {
            Term::One => None,
            Term::Var(i) => Some(*i),
            Term::Mul(l, r) => l.max_var().max(r.max_var()),
            Term::Inv(t) => t.max_var(),
        }
    }

    /// Replace every occurrence of `var` by `replacement`.
    pub fn substitute(&self, var: u32, replacement: &Term) -> Term {
        match self {
            Term::One => Term::One,
            Term::Var(i) => {
                if *i == var {
                    replacement.clone()
                } else {
                    Term::Var(*i)
                }
            }
            Term::Mul(l, r) => Term::mul(
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
            Term::Inv(t) => Term::inv(t.substitute(var, replacement)),
        }
    }

    fn node_count(&self) -> u64 {
        match self {
            Term::One | Term::Var(_) => 1,
            Term::Mul(l, r) => 1 + l.node_count() + r.node_count(),
            Term::Inv(t) => 1 + t.node_count(),
        }
    }

    fn depth(&self) -> u64 {
        match self {
            Term::One | Term::Var(_) => 1,
            Term::Mul(l, r) => 1 + l.depth().max(r.depth()),
            Term::Inv(t) => 1 + t.depth(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::One => write!(f, "e"),
            Term::Var(i) => write!(f, "v{i}"),
            Term::Mul(l, r) => write!(f, "(* {l} {r})"),
            Term::Inv(t) => write!(f, "(inv {t})"),
        }
    }
}

/// A first-order formula over the group signature. `And`/`Or` are n-ary and
/// always nonempty; use the [`Formula::and`]/[`Formula::or`] constructors,
/// which flatten nested conjunctions/disjunctions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Forall(u32, Box<Formula>),
    Exists(u32, Box<Formula>),
}

impl Formula {
    pub fn eq(lhs: Term, rhs: Term) -> Formula {
        Formula::Eq(lhs, rhs)
    }

    /// `lhs ≠ rhs`, sugar for `Not(Eq(..))`.
    pub fn neq(lhs: Term, rhs: Term) -> Formula {
        Formula::Not(Box::new(Formula::Eq(lhs, rhs)))
    }

    #[allow(clippy::should_implement_trait)] // constructor, not an operator impl
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    /// N-ary conjunction; nested `And`s are flattened. Panics on an empty list.
    pub fn and(parts: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(parts.len());
        for part in parts {
            match part {
                Formula::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "empty conjunction");
        if flat.len() == 1 {
            flat.into_iter().next().unwrap()
        } else {
            Formula::And(flat)
        }
    }

    /// N-ary disjunction; nested `Or`s are flattened. Panics on an empty list.
    pub fn or(parts: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(parts.len());
        for part in parts {
            match part {
                Formula::Or(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "empty disjunction");
        if flat.len() == 1 {
            flat.into_iter().next().unwrap()
        } else {
            Formula::Or(flat)
        }
    }

    pub fn implies(hyp: Formula, concl: Formula) -> Formula {
        Formula::Implies(Box::new(hyp), Box::new(concl))
    }

    pub fn forall(var: u32, body: Formula) -> Formula {
        Formula::Forall(var, Box::new(body))
    }

    pub fn exists(var: u32, body: Formula) -> Formula {
        Formula::Exists(var, Box::new(body))
    }

    pub fn free_vars(&self) -> BTreeSet<u32> {
        match self {
            Formula::Eq(l, r) => {
                let mut s = l.free_vars();
                s.extend(r.free_vars());
                s
            }
            Formula::Not(f) => f.free_vars(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().flat_map(|f| f.free_vars()).collect(),
            Formula::Implies(h, c) => {
                let mut s = h.free_vars();
                s.extend(c.free_vars());
                s
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let mut s = body.free_vars();
                s.remove(v);
                s
            }
        }
    }

    /// A sentence is a formula with no free variables.
    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Largest variable index mentioned anywhere (free or bound).
    pub fn max_var(&self) -> Option<u32> {
        match self {
            Formula::Eq(l, r) => l.max_var().max(r.max_var()),
            Formula::Not(f) => f.max_var(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().filter_map(|f| f.max_var()).max(),
            Formula::Implies(h, c) => h.max_var().max(c.max_var()),
            Formula::Forall(v, body) | Formula::Exists(v, body) => Some(*v).max(body.max_var()),
        }
    }

    /// Capture-avoiding substitution of `replacement` for the free variable
    /// `var`. Binders that would capture a variable of `replacement` are
    /// renamed to fresh indices.
    pub fn substitute(&self, var: u32, replacement: &Term) -> Formula {
        let mut fresh = self
            .max_var()
            .max(replacement.max_var())
            .map_or(0, |m| m + 1);
        self.subst_inner(var, replacement, &mut fresh)
    }

    fn subst_inner(&self, var: u32, replacement: &Term, fresh: &mut u32) -> Formula {
        match self {
            Formula::Eq(l, r) => Formula::Eq(
                l.substitute(var, replacement),
                r.substitute(var, replacement),
            ),
            Formula::Not(f) => Formula::not(f.subst_inner(var, replacement, fresh)),
            Formula::And(fs) => Formula::And(
                fs.iter()
                    .map(|f| f.subst_inner(var, replacement, fresh))
                    .collect(),
            ),
            Formula::Or(fs) => Formula::Or(
                fs.iter()
                    .map(|f| f.subst_inner(var, replacement, fresh))
                    .collect(),
            ),
            Formula::Implies(h, c) => Formula::implies(
                h.subst_inner(var, replacement, fresh),
                c.subst_inner(var, replacement, fresh),
            ),
            Formula::Forall(v, body) => {
                let (v, body) = Self::subst_under_binder(*v, body, var, replacement, fresh);
                Formula::Forall(v, Box::new(body))
            }
            Formula::Exists(v, body) => {
                let (v, body) = Self::subst_under_binder(*v, body, var, replacement, fresh);
                Formula::Exists(v, Box::new(body))
            }
        }
    }

    fn subst_under_binder(
        binder: u32,
        body: &Formula,
        var: u32,
        replacement: &Term,
        fresh: &mut u32,
    ) -> (u32, Formula) {
        if binder == var {
            // Shadowed: the substituted variable is not free below here.
            return (binder, body.clone());
        }
        if replacement.free_vars().contains(&binder) && body.free_vars().contains(&var) {
            // Rename the binder before substituting so `replacement` is not captured.
            let renamed = *fresh;
            *fresh += 1;
            let body = body.subst_inner(binder, &Term::Var(renamed), fresh);
            (renamed, body.subst_inner(var, replacement, fresh))
        } else {
            (binder, body.subst_inner(var, replacement, fresh))
        }
    }

    /// Render to the canonical S-expression text. `parse(render(f))`
    /// reproduces `f` exactly.
    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Eq(l, r) => write!(f, "(= {l} {r})"),
            Formula::Not(inner) => write!(f, "(not {inner})"),
            Formula::And(fs) => {
                write!(f, "(and")?;
                for part in fs {
                    write!(f, " {part}")?;
                }
                write!(f, ")")
            }
            Formula::Or(fs) => {
                write!(f, "(or")?;
                for part in fs {
                    write!(f, " {part}")?;
                }
                write!(f, ")")
            }
            Formula::Implies(h, c) => write!(f, "(=> {h} {c})"),
            Formula::Forall(v, body) => write!(f, "(forall v{v} {body})"),
            Formula::Exists(v, body) => write!(f, "(exists v{v} {body})"),
        }
    }
}

/// Length accounting for a formula. `symbol_count` is the contract: the
/// number of AST nodes, where every quantifier, connective, `=`, `*`, `inv`,
/// `e` and variable occurrence costs one symbol regardless of the variable's
/// index. The other fields are informational.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LengthReport {
    pub symbol_count: u64,
    pub quantifier_count: u64,
    /// Variable occurrences in terms (binder positions not included).
    pub variable_count: u64,
    pub depth: u64,
}

/// The length metric `|φ|` under the unit-cost variable convention.
pub fn length(f: &Formula) -> LengthReport {
    LengthReport {
        symbol_count: symbol_count(f),
        quantifier_count: quantifier_count(f),
        variable_count: variable_count(f),
        depth: depth(f),
    }
}

pub fn symbol_count(f: &Formula) -> u64 {
    match f {
        Formula::Eq(l, r) => 1 + l.node_count() + r.node_count(),
        Formula::Not(inner) => 1 + symbol_count(inner),
        Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(symbol_count).sum::<u64>(),
        Formula::Implies(h, c) => 1 + symbol_count(h) + symbol_count(c),
        Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + symbol_count(body),
    }
}

fn quantifier_count(f: &Formula) -> u64 {
    match f {
        Formula::Eq(..) => 0,
        Formula::Not(inner) => quantifier_count(inner),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().map(quantifier_count).sum(),
        Formula::Implies(h, c) => quantifier_count(h) + quantifier_count(c),
        Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + quantifier_count(body),
    }
}

fn variable_count(f: &Formula) -> u64 {
    fn term_vars(t: &Term) -> u64 {
        match t {
            Term::One => 0,
            Term::Var(_) => 1,
            Term::Mul(l, r) => term_vars(l) + term_vars(r),
            Term::Inv(t) => term_vars(t),
        }
    }
    match f {
        Formula::Eq(l, r) => term_vars(l) + term_vars(r),
        Formula::Not(inner) => variable_count(inner),
        Formula::And(fs) | Formula::Or(fs) => fs.iter().map(variable_count).sum(),
        Formula::Implies(h, c) => variable_count(h) + variable_count(c),
        Formula::Forall(_, body) | Formula::Exists(_, body) => variable_count(body),
    }
}

fn depth(f: &Formula) -> u64 {
    match f {
        Formula::Eq(l, r) => 1 + l.depth().max(r.depth()),
        Formula::Not(inner) => 1 + depth(inner),
        Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(depth).max().unwrap_or(0),
        Formula::Implies(h, c) => 1 + depth(h).max(depth(c)),
        Formula::Forall(_, body) | Formula::Exists(_, body) => 1 + depth(body),
    }
}

/// Alternate length metric where a variable of index `i` (including binder
/// positions) costs the bit length of `i + 1` instead of 1. Reported for
/// comparison; no contract depends on it.
pub fn binary_symbol_count(f: &Formula) -> u64 {
    fn bits(i: u32) -> u64 {
        (u64::from(i) + 1).ilog2() as u64 + 1
    }
    fn term(t: &Term) -> u64 {
        match t {
            Term::One => 1,
            Term::Var(i) => bits(*i),
            Term::Mul(l, r) => 1 + term(l) + term(r),
            Term::Inv(t) => 1 + term(t),
        }
    }
    match f {
        Formula::Eq(l, r) => 1 + term(l) + term(r),
        Formula::Not(inner) => 1 + binary_symbol_count(inner),
        Formula::And(fs) | Formula::Or(fs) => 1 + fs.iter().map(binary_symbol_count).sum::<u64>(),
        Formula::Implies(h, c) => 1 + binary_symbol_count(h) + binary_symbol_count(c),
        Formula::Forall(v, body) | Formula::Exists(v, body) => {
            1 + bits(*v) + binary_symbol_count(body)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Term {
        Term::Var(i)
    }

    #[test]
    fn render_smallest_equation() {
        let f = Formula::eq(v(0), Term::One);
        assert_eq!(f.render(), "(= v0 e)");
    }

    #[test]
    fn render_tautology_shape() {
        let f = Formula::forall(0, Formula::eq(v(0), v(0)));
        assert_eq!(f.render(), "(forall v0 (= v0 v0))");
    }

    #[test]
    fn smallest_equation_has_three_symbols() {
        let f = Formula::eq(v(0), Term::One);
        let report = length(&f);
        assert_eq!(report.symbol_count, 3);
        assert_eq!(report.quantifier_count, 0);
        assert_eq!(report.variable_count, 1);
        assert_eq!(report.depth, 2);
    }

    #[test]
    fn and_or_flatten() {
        let f = Formula::and(vec![
            Formula::eq(v(0), Term::One),
            Formula::and(vec![
                Formula::eq(v(1), Term::One),
                Formula::eq(v(2), Term::One),
            ]),
        ]);
        match &f {
            Formula::And(parts) => assert_eq!(parts.len(), 3),
            other => panic!("expected flattened And, got {other:?}"),
        }
        // Singleton collapses to the part itself.
        let g = Formula::or(vec![Formula::eq(v(0), Term::One)]);
        assert_eq!(g, Formula::eq(v(0), Term::One));
    }

    #[test]
    fn substitute_free_variable() {
        let f = Formula::eq(v(0), Term::One);
        assert_eq!(f.substitute(0, &v(7)), Formula::eq(v(7), Term::One));
    }

    #[test]
    fn substitute_respects_shadowing() {
        let f = Formula::forall(0, Formula::eq(v(0), Term::One));
        assert_eq!(f.substitute(0, &v(7)), f);
    }

    #[test]
    fn substitute_avoids_capture() {
        // ∀v1 (v0 = v1), then v0 := v1 must not produce ∀v1 (v1 = v1).
        let f = Formula::forall(1, Formula::eq(v(0), v(1)));
        let g = f.substitute(0, &v(1));
        match g {
            Formula::Forall(b, body) => {
                assert_ne!(b, 1);
                assert_eq!(*body, Formula::eq(v(1), v(b)));
            }
            other => panic!("unexpected shape {other:?}"),
        }
    }

    #[test]
    fn binary_metric_weights_large_indices() {
        let f = Formula::eq(v(0), v(6));
        assert_eq!(symbol_count(&f), 3);
        // v0 costs 1 bit, v6 costs 3 bits (index+1 = 7).
        assert_eq!(binary_symbol_count(&f), 5);
    }
}
