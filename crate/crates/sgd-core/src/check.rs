//! Brute-force first-order model checking over finite groups.
//!
//! Evaluation is plain Tarskian recursion with short-circuiting, a node
//! budget, and optional memoization at quantifier nodes keyed by the
//! restriction of the environment to the subformula's free variables. The
//! memo is what makes deeply nested generation formulas feasible: each
//! level's truth table is computed once per outer binding instead of once
//! per call path.

use crate::formula::{Formula, Term};
use crate::group::{Group, GroupTable};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CheckError {
    #[error("variable v{0} is unbound")]
    UnboundVariable(u32),
    #[error("not a sentence: free variables {0:?}")]
    NotClosed(Vec<u32>),
    #[error("node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
}

/// Variable bindings for evaluation.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Environment {
    bindings: BTreeMap<u32, usize>,
}

impl Environment {
    pub fn new() -> Environment {
        Environment::default()
    }

    pub fn bind(&mut self, var: u32, element: usize) -> &mut Self {
        self.bindings.insert(var, element);
        self
    }

    pub fn get(&self, var: u32) -> Option<usize> {
        self.bindings.get(&var).copied()
    }

    pub fn bindings(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.bindings.iter().map(|(&v, &e)| (v, e))
    }
}

/// Default node budget: aborts runaway checks rather than hanging.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Memoization starts paying off once quantifier nesting gets deep; below
/// the threshold the hash traffic costs more than it saves.
pub const MEMO_QUANTIFIER_THRESHOLD: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MemoPolicy {
    /// Memoize iff the formula has more than [`MEMO_QUANTIFIER_THRESHOLD`] quantifiers.
    Auto,
    On,
    Off,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    pub budget: u64,
    pub memo: MemoPolicy,
    /// Worker count for the outermost quantifier and for catalog sweeps.
    /// 1 = fully sequential (deterministic `nodes_visited`).
    pub jobs: usize,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            budget: DEFAULT_BUDGET,
            memo: MemoPolicy::Auto,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckOutcome {
    pub value: bool,
    pub nodes_visited: u64,
    pub elapsed: Duration,
}

/// Formula compiled for evaluation: quantifier nodes get a memo slot and a
/// sorted free-variable list so memo keys can be built without tree walks.
enum Node {
    Eq(Term, Term),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Quant {
        exists: bool,
        var: u32,
        body: Box<Node>,
        memo_slot: usize,
        free: Vec<u32>,
    },
}

struct Compiled {
    root: Node,
    memo_slots: usize,
    quantifiers: u64,
}

fn compile(f: &Formula) -> Compiled {
    fn go(f: &Formula, slots: &mut usize, quants: &mut u64) -> Node {
        match f {
            Formula::Eq(l, r) => Node::Eq(l.clone(), r.clone()),
            Formula::Not(inner) => Node::Not(Box::new(go(inner, slots, quants))),
            Formula::And(fs) => Node::And(fs.iter().map(|f| go(f, slots, quants)).collect()),
            Formula::Or(fs) => Node::Or(fs.iter().map(|f| go(f, slots, quants)).collect()),
            Formula::Implies(h, c) => Node::Implies(
                Box::new(go(h, slots, quants)),
                Box::new(go(c, slots, quants)),
            ),
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                *quants += 1;
                let free: Vec<u32> = f.free_vars().into_iter().collect();
                let slot = *slots;
                *slots += 1;
                Node::Quant {
                    exists: matches!(f, Formula::Exists(..)),
                    var: *v,
                    body: Box::new(go(body, slots, quants)),
                    memo_slot: slot,
                    free,
                }
            }
        }
    }
    let mut slots = 0;
    let mut quants = 0;
    let root = go(f, &mut slots, &mut quants);
    Compiled {
        root,
        memo_slots: slots,
        quantifiers: quants,
    }
}

struct EvalState<'a, G: Group> {
    g: &'a G,
    budget: u64,
    visited: u64,
    memo: Option<Vec<HashMap<Vec<usize>, bool>>>,
    env: Vec<Option<usize>>,
}

impl<'a, G: Group> EvalState<'a, G> {
    fn visit(&mut self) -> Result<(), CheckError> {
        self.visited += 1;
        if self.visited > self.budget {
            Err(CheckError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn eval_term(&mut self, t: &Term) -> Result<usize, CheckError> {
        self.visit()?;
        match t {
            Term::One => Ok(self.g.identity()),
            Term::Var(v) => self
                .env
                .get(*v as usize)
                .copied()
                .flatten()
                .ok_or(CheckError::UnboundVariable(*v)),
            Term::Mul(l, r) => {
                let l = self.eval_term(l)?;
                let r = self.eval_term(r)?;
                Ok(self.g.mul(l, r))
            }
            Term::Inv(inner) => {
                let x = self.eval_term(inner)?;
                Ok(self.g.inverse(x))
            }
        }
    }

    fn eval(&mut self, node: &Node) -> Result<bool, CheckError> {
        self.visit()?;
        match node {
            Node::Eq(l, r) => Ok(self.eval_term(l)? == self.eval_term(r)?),
            Node::Not(inner) => Ok(!self.eval(inner)?),
            Node::And(parts) => {
                for part in parts {
                    if !self.eval(part)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Node::Or(parts) => {
                for part in parts {
                    if self.eval(part)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Node::Implies(h, c) => {
                if !self.eval(h)? {
                    return Ok(true);
                }
                self.eval(c)
            }
            Node::Quant {
                exists,
                var,
                body,
                memo_slot,
                free,
            } => {
                let key: Option<Vec<usize>> = if self.memo.is_some() {
                    let mut key = Vec::with_capacity(free.len());
                    for &v in free {
                        let x = self
                            .env
                            .get(v as usize)
                            .copied()
                            .flatten()
                            .ok_or(CheckError::UnboundVariable(v))?;
                        key.push(x);
                    }
                    if let Some(memo) = &self.memo {
                        if let Some(&hit) = memo[*memo_slot].get(&key) {
                            return Ok(hit);
                        }
                    }
                    Some(key)
                } else {
                    None
                };

                let var = *var as usize;
                if self.env.len() <= var {
                    self.env.resize(var + 1, None);
                }
                let saved = self.env[var];
                let mut result = !*exists;
                for x in 0..self.g.order() {
                    self.env[var] = Some(x);
                    match self.eval(body) {
                        Ok(v) => {
                            if v == *exists {
                                result = *exists;
                                break;
                            }
                        }
                        Err(e) => {
                            self.env[var] = saved;
                            return Err(e);
                        }
                    }
                }
                self.env[var] = saved;
                if let (Some(memo), Some(key)) = (&mut self.memo, key) {
                    memo[*memo_slot].insert(key, result);
                }
                Ok(result)
            }
        }
    }
}

/// A reusable evaluator for one formula over one group. Evaluations share
/// the memo, so sweeping many environments over the same formula costs far
/// less than independent calls.
pub struct Evaluator<'a, G: Group> {
    compiled: Compiled,
    g: &'a G,
    options: CheckOptions,
    memo: Option<Vec<HashMap<Vec<usize>, bool>>>,
    nodes_total: u64,
}

impl<'a, G: Group> Evaluator<'a, G> {
    pub fn new(f: &Formula, g: &'a G, options: CheckOptions) -> Evaluator<'a, G> {
        let compiled = compile(f);
        let memo_on = match options.memo {
            MemoPolicy::On => true,
            MemoPolicy::Off => false,
            MemoPolicy::Auto => compiled.quantifiers > MEMO_QUANTIFIER_THRESHOLD,
        };
        let memo = memo_on.then(|| vec![HashMap::new(); compiled.memo_slots]);
        Evaluator {
            compiled,
            g,
            options,
            memo,
            nodes_total: 0,
        }
    }

    /// Evaluate under `env`; the memo and the budget persist across calls.
    pub fn eval(&mut self, env: &Environment) -> Result<CheckOutcome, CheckError> {
        let start = Instant::now();
        let mut dense: Vec<Option<usize>> = Vec::new();
        for (v, x) in env.bindings() {
            if dense.len() <= v as usize {
                dense.resize(v as usize + 1, None);
            }
            dense[v as usize] = Some(x);
        }
        let mut state = EvalState {
            g: self.g,
            budget: self.options.budget.saturating_sub(self.nodes_total),
            visited: 0,
            memo: self.memo.take(),
            env: dense,
        };
        let result = state.eval(&self.compiled.root);
        self.memo = state.memo.take();
        self.nodes_total += state.visited;
        let value = result?;
        Ok(CheckOutcome {
            value,
            nodes_visited: state.visited,
            elapsed: start.elapsed(),
        })
    }

    pub fn nodes_total(&self) -> u64 {
        self.nodes_total
    }
}

/// Evaluate `f` over `g` under `env`. All free variables must be bound.
pub fn eval(
    f: &Formula,
    g: &impl Group,
    env: &Environment,
    options: CheckOptions,
) -> Result<CheckOutcome, CheckError> {
    for v in f.free_vars() {
        if env.get(v).is_none() {
            return Err(CheckError::UnboundVariable(v));
        }
    }
    Evaluator::new(f, g, options).eval(env)
}

/// Evaluate a sentence (no free variables) over `g`.
///
/// With `options.jobs > 1` and an outermost quantifier, the quantified
/// elements are split across worker threads (each with its own memo and a
/// full per-worker budget); the value is unchanged but `nodes_visited` then
/// depends on scheduling.
pub fn check_sentence(
    s: &Formula,
    g: &(impl Group + Sync),
    options: CheckOptions,
) -> Result<CheckOutcome, CheckError> {
    let free = s.free_vars();
    if !free.is_empty() {
        return Err(CheckError::NotClosed(free.into_iter().collect()));
    }
    if options.jobs > 1 {
        if let Formula::Exists(var, body) | Formula::Forall(var, body) = s {
            let exists = matches!(s, Formula::Exists(..));
            let start = Instant::now();
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(options.jobs)
                .build()
                .expect("worker pool");
            let n = g.order();
            let results: Vec<Result<(bool, u64), CheckError>> = pool.install(|| {
                (0..n)
                    .into_par_iter()
                    .map(|x| {
                        let mut env = Environment::new();
                        env.bind(*var, x);
                        let mut inner =
                            Evaluator::new(body, g, CheckOptions { jobs: 1, ..options });
                        inner.eval(&env).map(|o| (o.value, o.nodes_visited))
                    })
                    .collect()
            });
            let mut nodes = 1;
            let mut value = !exists;
            for r in results {
                let (v, n) = r?;
                nodes += n;
                if v == exists {
                    value = exists;
                }
            }
            return Ok(CheckOutcome {
                value,
                nodes_visited: nodes,
                elapsed: start.elapsed(),
            });
        }
    }
    Evaluator::new(s, g, options).eval(&Environment::new())
}

/// One catalog member's result in a uniqueness sweep.
#[derive(Debug, Clone)]
pub struct SweepEntry {
    pub name: String,
    pub order: usize,
    pub value: bool,
    pub isomorphic_to_target: bool,
    pub nodes_visited: u64,
}

/// Result of evaluating a sentence across a catalog against a target.
#[derive(Debug, Clone)]
pub struct UniquenessReport {
    pub entries: Vec<SweepEntry>,
    /// Names where the sentence's truth disagreed with isomorphism to the target.
    pub violators: Vec<String>,
    pub target_in_catalog: bool,
}

impl UniquenessReport {
    pub fn unique(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Evaluate `s` on every catalog member and compare truth against
/// isomorphism with `target`: the sentence should hold exactly on the
/// members isomorphic to the target. Groups are swept in parallel when
/// `options.jobs > 1`.
pub fn describes_uniquely(
    s: &Formula,
    target: &GroupTable,
    catalog: &[(String, GroupTable)],
    options: CheckOptions,
) -> Result<UniquenessReport, CheckError> {
    let run = |(name, table): &(String, GroupTable)| -> Result<SweepEntry, CheckError> {
        let iso = crate::group::is_isomorphic(target, table).is_some();
        let outcome = check_sentence(s, table, CheckOptions { jobs: 1, ..options })?;
        Ok(SweepEntry {
            name: name.clone(),
            order: table.order(),
            value: outcome.value,
            isomorphic_to_target: iso,
            nodes_visited: outcome.nodes_visited,
        })
    };
    let entries: Vec<SweepEntry> = if options.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("worker pool");
        pool.install(|| catalog.par_iter().map(run).collect::<Result<_, _>>())?
    } else {
        catalog.iter().map(run).collect::<Result<_, _>>()?
    };
    let violators = entries
        .iter()
        .filter(|e| e.value != e.isomorphic_to_target)
        .map(|e| e.name.clone())
        .collect();
    let target_in_catalog = entries.iter().any(|e| e.isomorphic_to_target);
    Ok(UniquenessReport {
        entries,
        violators,
        target_in_catalog,
    })
}
