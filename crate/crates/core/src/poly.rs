//! Multilinear graded polynomials: words over a fixed variable set with
//! exact-rational coefficients, plus the alternation/symmetrization
//! operators, the T-operation substitution, the Grassmann star and the
//! parity-forgetting transform.
//!
//! Alternation over a set of size s multiplies the term count by up to s!,
//! so operators are recorded lazily as a composition list with an explicit
//! [`MultilinearPolynomial::expand`] step guarded by a term budget. The
//! evaluator consumes the lazy form directly.

use crate::error::PolyError;
use crate::group::{GradingGroup, GroupElt};
use crate::scalar::{format_scalar, parse_scalar, Scalar};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

/// Default cap on expanded term counts.
pub const DEFAULT_TERM_BUDGET: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum VarRole {
    Designated,
    Frame,
    Bridge,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVariable {
    pub id: String,
    pub degree: GroupElt,
    pub role: VarRole,
}

impl GradedVariable {
    pub fn new(id: impl Into<String>, degree: GroupElt, role: VarRole) -> Self {
        GradedVariable {
            id: id.into(),
            degree,
            role,
        }
    }
}

/// A monomial: the variable indices in multiplication order. Every variable
/// of the polynomial appears exactly once (multilinearity).
pub type Word = Vec<u32>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum OpKind {
    Alternate,
    Symmetrize,
}

/// A pending alternation or symmetrization over a set of variable indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetOp {
    pub kind: OpKind,
    pub set: Vec<u32>,
}

/// One step of construction provenance; a polynomial can be re-derived from
/// its seed by replaying the steps in order.
#[derive(Debug, Clone, PartialEq)]
pub enum TraceStep {
    TSubstitute {
        var: String,
        delta: Vec<GradedVariable>,
    },
    Alternate {
        set: Vec<String>,
    },
    Symmetrize {
        set: Vec<String>,
    },
    GrassmannStar,
    ForgetParity,
    /// f := left * f with disjoint variables.
    LeftProduct {
        left: Box<MultilinearPolynomial>,
    },
    /// f := f^(1) ... f^(copies), fresh ids per copy with the given suffixes.
    Duplicate {
        suffixes: Vec<String>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct MultilinearPolynomial {
    group: Arc<GradingGroup>,
    vars: Vec<GradedVariable>,
    base: BTreeMap<Word, Scalar>,
    ops: Vec<SetOp>,
    trace: Vec<TraceStep>,
}

static FRESH_COUNTER: AtomicU64 = AtomicU64::new(1);

/// Process-unique suffix source for fresh variable ids.
pub fn fresh_id(prefix: &str) -> String {
    let n = FRESH_COUNTER.fetch_add(1, Ordering::Relaxed);
    format!("{prefix}{n}")
}

fn check_var_id(id: &str) -> Result<(), PolyError> {
    if id.is_empty()
        || id
            .chars()
            .any(|c| c.is_whitespace() || c == '.' || c == ':' || c == '*')
    {
        return Err(PolyError::Invalid(format!("bad variable id {id:?}")));
    }
    Ok(())
}

impl MultilinearPolynomial {
    pub fn from_terms(
        group: Arc<GradingGroup>,
        vars: Vec<GradedVariable>,
        terms: Vec<(Word, Scalar)>,
    ) -> Result<Self, PolyError> {
        let n = vars.len();
        {
            let mut ids = std::collections::HashSet::new();
            for v in &vars {
                check_var_id(&v.id)?;
                if !ids.insert(v.id.as_str()) {
                    return Err(PolyError::VariableCollision(v.id.clone()));
                }
                if v.degree >= group.order() {
                    return Err(PolyError::Invalid(format!(
                        "degree of {} outside the grading group",
                        v.id
                    )));
                }
            }
        }
        let mut base: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (word, coeff) in terms {
            if word.len() != n {
                return Err(PolyError::NotMultilinear(format!(
                    "word of length {} over {} variables",
                    word.len(),
                    n
                )));
            }
            let mut seen = vec![false; n];
            for &v in &word {
                if v as usize >= n || seen[v as usize] {
                    return Err(PolyError::NotMultilinear(
                        "word is not a permutation of the variables".into(),
                    ));
                }
                seen[v as usize] = true;
            }
            if coeff.is_zero() {
                continue;
            }
            let entry = base.entry(word).or_insert_with(|| Scalar::zero());
            *entry += coeff;
            if entry.is_zero() {
                // avoid borrowing issues: mark and sweep below
            }
        }
        base.retain(|_, c| !c.is_zero());
        Ok(MultilinearPolynomial {
            group,
            vars,
            base,
            ops: Vec::new(),
            trace: Vec::new(),
        })
    }

    /// The single monomial with the variables in the given order.
    pub fn monomial(group: Arc<GradingGroup>, vars: Vec<GradedVariable>) -> Self {
        let n = vars.len() as u32;
        let word: Word = (0..n).collect();
        MultilinearPolynomial::from_terms(group, vars, vec![(word, crate::scalar::q(1))])
            .expect("monomial construction")
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    pub fn vars(&self) -> &[GradedVariable] {
        &self.vars
    }

    pub fn ops(&self) -> &[SetOp] {
        &self.ops
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn var_index(&self, id: &str) -> Option<u32> {
        self.vars.iter().position(|v| v.id == id).map(|i| i as u32)
    }

    /// Base terms (without pending operators applied).
    pub fn base_terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.base
    }

    pub fn is_expanded(&self) -> bool {
        self.ops.is_empty()
    }

    /// Number of terms the full expansion would produce, if it fits in usize.
    pub fn expanded_term_bound(&self) -> Option<usize> {
        let mut bound = self.base.len();
        for op in &self.ops {
            let mut fact = 1usize;
            for k in 2..=op.set.len() {
                fact = fact.checked_mul(k)?;
            }
            bound = bound.checked_mul(fact)?;
        }
        Some(bound)
    }

    /// Folds all pending operators into the term map, within `budget` terms.
    pub fn expand(&self, budget: usize) -> Result<Self, PolyError> {
        match self.expanded_term_bound() {
            Some(b) if b <= budget => {}
            other => {
                return Err(PolyError::TermBudgetExceeded {
                    terms: other.unwrap_or(usize::MAX),
                    budget,
                })
            }
        }
        let mut terms = self.base.clone();
        for op in &self.ops {
            let mut next: BTreeMap<Word, Scalar> = BTreeMap::new();
            let set = &op.set;
            for (perm, sign) in permutations_with_sign(set.len()) {
                let signed = op.kind == OpKind::Alternate && sign < 0;
                for (word, coeff) in &terms {
                    let mut new_word = word.clone();
                    for x in &mut new_word {
                        if let Some(pos) = set.iter().position(|v| v == x) {
                            *x = set[perm[pos]];
                        }
                    }
                    let c = if signed { -coeff.clone() } else { coeff.clone() };
                    let entry = next.entry(new_word).or_insert_with(Scalar::zero);
                    *entry += c;
                }
            }
            next.retain(|_, c| !c.is_zero());
            terms = next;
        }
        Ok(MultilinearPolynomial {
            group: self.group.clone(),
            vars: self.vars.clone(),
            base: terms,
            ops: Vec::new(),
            trace: self.trace.clone(),
        })
    }

    fn resolve_set(&self, set: &[&str]) -> Result<Vec<u32>, PolyError> {
        let mut indices = Vec::with_capacity(set.len());
        for id in set {
            let idx = self
                .var_index(id)
                .ok_or_else(|| PolyError::UnknownVariable((*id).into()))?;
            if indices.contains(&idx) {
                return Err(PolyError::Invalid(format!("set repeats variable {id}")));
            }
            indices.push(idx);
        }
        Ok(indices)
    }

    fn push_op(&self, kind: OpKind, set: &[&str]) -> Result<Self, PolyError> {
        let indices = self.resolve_set(set)?;
        let first_degree = indices
            .first()
            .map(|&i| self.vars[i as usize].degree)
            .unwrap_or_default();
        if indices
            .iter()
            .any(|&i| self.vars[i as usize].degree != first_degree)
        {
            return Err(PolyError::MixedDegreeSet);
        }
        let mut out = self.clone();
        let mut sorted = indices;
        sorted.sort_unstable();
        out.ops.push(SetOp {
            kind,
            set: sorted.clone(),
        });
        out.trace.push(match kind {
            OpKind::Alternate => TraceStep::Alternate {
                set: sorted
                    .iter()
                    .map(|&i| self.vars[i as usize].id.clone())
                    .collect(),
            },
            OpKind::Symmetrize => TraceStep::Symmetrize {
                set: sorted
                    .iter()
                    .map(|&i| self.vars[i as usize].id.clone())
                    .collect(),
            },
        });
        Ok(out)
    }

    /// Signed sum over all permutations of `set` (lazily recorded).
    pub fn alternate(&self, set: &[&str]) -> Result<Self, PolyError> {
        self.push_op(OpKind::Alternate, set)
    }

    /// Unsigned sum over all permutations of `set` (lazily recorded).
    pub fn symmetrize(&self, set: &[&str]) -> Result<Self, PolyError> {
        self.push_op(OpKind::Symmetrize, set)
    }

    /// True when the pending operator sets are pairwise disjoint (the only
    /// form the evaluator consumes without expansion).
    pub fn ops_disjoint(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for op in &self.ops {
            for v in &op.set {
                if !seen.insert(*v) {
                    return false;
                }
            }
        }
        true
    }

    /// The T-operation: every occurrence of `var` becomes `var * delta` where
    /// `delta` is a monomial in fresh variables. The result stays in the
    /// T-ideal generated by `self`; the step is recorded in the trace.
    pub fn t_substitute(
        &self,
        var: &str,
        delta: Vec<GradedVariable>,
    ) -> Result<Self, PolyError> {
        let expanded = if self.ops.is_empty() {
            self.clone()
        } else {
            self.expand(DEFAULT_TERM_BUDGET)?
        };
        let target = expanded
            .var_index(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.into()))?;
        for d in &delta {
            check_var_id(&d.id)?;
            if expanded.vars.iter().any(|v| v.id == d.id) {
                return Err(PolyError::VariableCollision(d.id.clone()));
            }
        }
        {
            let mut ids = std::collections::HashSet::new();
            for d in &delta {
                if !ids.insert(d.id.as_str()) {
                    return Err(PolyError::VariableCollision(d.id.clone()));
                }
            }
        }
        let offset = expanded.vars.len() as u32;
        let mut vars = expanded.vars.clone();
        vars.extend(delta.iter().cloned());
        let mut terms = Vec::new();
        for (word, coeff) in &expanded.base {
            let mut new_word = Vec::with_capacity(word.len() + delta.len());
            for &v in word {
                new_word.push(v);
                if v == target {
                    new_word.extend((0..delta.len() as u32).map(|i| offset + i));
                }
            }
            terms.push((new_word, coeff.clone()));
        }
        let mut out = MultilinearPolynomial::from_terms(expanded.group.clone(), vars, terms)?;
        out.trace = expanded.trace.clone();
        out.trace.push(TraceStep::TSubstitute {
            var: var.into(),
            delta,
        });
        Ok(out)
    }

    /// Product `self * rhs` over disjoint variable sets.
    pub fn product(&self, rhs: &MultilinearPolynomial) -> Result<Self, PolyError> {
        if self.group != rhs.group {
            return Err(PolyError::Invalid(
                "product of polynomials over different grading groups".into(),
            ));
        }
        for v in &rhs.vars {
            if self.vars.iter().any(|w| w.id == v.id) {
                return Err(PolyError::VariableCollision(v.id.clone()));
            }
        }
        let offset = self.vars.len() as u32;
        let mut vars = self.vars.clone();
        vars.extend(rhs.vars.iter().cloned());
        let mut base = BTreeMap::new();
        for (wl, cl) in &self.base {
            for (wr, cr) in &rhs.base {
                let mut word = wl.clone();
                word.extend(wr.iter().map(|v| v + offset));
                base.insert(word, cl * cr);
            }
        }
        let mut ops = self.ops.clone();
        ops.extend(rhs.ops.iter().map(|op| SetOp {
            kind: op.kind,
            set: op.set.iter().map(|v| v + offset).collect(),
        }));
        Ok(MultilinearPolynomial {
            group: self.group.clone(),
            vars,
            base,
            ops,
            trace: self.trace.clone(),
        })
    }

    /// A copy with every variable id suffixed (for building disjoint copies).
    pub fn with_id_suffix(&self, suffix: &str) -> Self {
        let mut out = self.clone();
        for v in &mut out.vars {
            v.id = format!("{}{}", v.id, suffix);
        }
        out
    }

    /// The Grassmann star: each monomial's coefficient is multiplied by the
    /// sign of the permutation the word induces on its odd variables,
    /// relative to the declared variable order. An involution.
    pub fn grassmann_star(&self) -> Result<Self, PolyError> {
        if self.group.super_split().is_none() {
            return Err(PolyError::NoParity);
        }
        let expanded = if self.ops.is_empty() {
            self.clone()
        } else {
            self.expand(DEFAULT_TERM_BUDGET)?
        };
        let odd: Vec<u32> = (0..expanded.vars.len() as u32)
            .filter(|&i| {
                expanded
                    .group
                    .parity(expanded.vars[i as usize].degree)
                    .unwrap()
                    == 1
            })
            .collect();
        let rank: BTreeMap<u32, usize> = odd.iter().enumerate().map(|(r, &v)| (v, r)).collect();
        let mut base = BTreeMap::new();
        for (word, coeff) in &expanded.base {
            let seq: Vec<usize> = word.iter().filter_map(|v| rank.get(v).copied()).collect();
            let mut inversions = 0usize;
            for i in 0..seq.len() {
                for j in i + 1..seq.len() {
                    if seq[i] > seq[j] {
                        inversions += 1;
                    }
                }
            }
            let c = if inversions % 2 == 1 {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            base.insert(word.clone(), c);
        }
        let mut trace = expanded.trace.clone();
        trace.push(TraceStep::GrassmannStar);
        Ok(MultilinearPolynomial {
            group: expanded.group.clone(),
            vars: expanded.vars.clone(),
            base,
            ops: Vec::new(),
            trace,
        })
    }

    /// Forgets the Z2 factor of the grading: a variable of degree `(eps, g)`
    /// becomes a variable of degree `g`; distinct variables stay distinct.
    pub fn forget_parity(&self) -> Result<Self, PolyError> {
        let split = self.group.super_split().ok_or(PolyError::NoParity)?;
        let base_group = split.base.clone();
        let vars = self
            .vars
            .iter()
            .map(|v| GradedVariable {
                id: v.id.clone(),
                degree: split.base_part[v.degree],
                role: v.role,
            })
            .collect();
        let mut trace = self.trace.clone();
        trace.push(TraceStep::ForgetParity);
        Ok(MultilinearPolynomial {
            group: base_group,
            vars,
            base: self.base.clone(),
            ops: self.ops.clone(),
            trace,
        })
    }

    /// Degree of a word: the ordered product of its variables' degrees.
    pub fn word_degree(&self, word: &[u32]) -> GroupElt {
        self.group
            .word_product(word.iter().map(|&v| self.vars[v as usize].degree))
    }

    /// Renders the expanded polynomial; terms in lexicographic word order.
    pub fn to_text(&self) -> Result<String, PolyError> {
        let expanded = if self.ops.is_empty() {
            self.clone()
        } else {
            self.expand(DEFAULT_TERM_BUDGET)?
        };
        let mut out = String::from("vars:");
        for v in &expanded.vars {
            let role = match v.role {
                VarRole::Designated => "/d",
                VarRole::Frame => "/f",
                VarRole::Bridge => "/b",
                VarRole::Other => "",
            };
            out.push_str(&format!(
                " {}:{}{}",
                v.id,
                expanded.group.label(v.degree),
                role
            ));
        }
        out.push('\n');
        for (word, coeff) in &expanded.base {
            let word_text = word
                .iter()
                .map(|&v| expanded.vars[v as usize].id.clone())
                .collect::<Vec<_>>()
                .join(".");
            out.push_str(&format!("{} * {}\n", format_scalar(coeff), word_text));
        }
        Ok(out)
    }

    pub fn from_text(text: &str, group: Arc<GradingGroup>) -> Result<Self, PolyError> {
        let mut vars: Vec<GradedVariable> = Vec::new();
        let mut terms: Vec<(Word, Scalar)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vars:") {
                for item in rest.split_whitespace() {
                    let (id, spec) = item
                        .split_once(':')
                        .ok_or_else(|| PolyError::Invalid(format!("bad var spec {item}")))?;
                    let (deg_label, role) = match spec.split_once('/') {
                        Some((d, "d")) => (d, VarRole::Designated),
                        Some((d, "f")) => (d, VarRole::Frame),
                        Some((d, "b")) => (d, VarRole::Bridge),
                        Some((d, _)) => (d, VarRole::Other),
                        None => (spec, VarRole::Other),
                    };
                    let degree = group
                        .elt_by_label(deg_label)
                        .ok_or_else(|| PolyError::Invalid(format!("unknown degree {deg_label}")))?;
                    vars.push(GradedVariable::new(id, degree, role));
                }
                continue;
            }
            let (coeff_text, word_text) = line
                .split_once('*')
                .ok_or_else(|| PolyError::Invalid(format!("bad term line {line}")))?;
            let coeff = parse_scalar(coeff_text)
                .ok_or_else(|| PolyError::Invalid(format!("bad coefficient {coeff_text}")))?;
            let mut word = Vec::new();
            for id in word_text.trim().split('.') {
                let idx = vars
                    .iter()
                    .position(|v| v.id == id)
                    .ok_or_else(|| PolyError::UnknownVariable(id.into()))?;
                word.push(idx as u32);
            }
            terms.push((word, coeff));
        }
        MultilinearPolynomial::from_terms(group, vars, terms)
    }

    /// Replays a trace on a seed polynomial.
    pub fn replay(
        seed: &MultilinearPolynomial,
        trace: &[TraceStep],
    ) -> Result<MultilinearPolynomial, PolyError> {
        let mut p = seed.clone();
        for step in trace {
            p = match step {
                TraceStep::TSubstitute { var, delta } => p.t_substitute(var, delta.clone())?,
                TraceStep::Alternate { set } => {
                    let refs: Vec<&str> = set.iter().map(|s| s.as_str()).collect();
                    p.alternate(&refs)?
                }
                TraceStep::Symmetrize { set } => {
                    let refs: Vec<&str> = set.iter().map(|s| s.as_str()).collect();
                    p.symmetrize(&refs)?
                }
                TraceStep::GrassmannStar => p.grassmann_star()?,
                TraceStep::ForgetParity => p.forget_parity()?,
                TraceStep::LeftProduct { left } => left.product(&p)?,
                TraceStep::Duplicate { suffixes } => {
                    let mut acc: Option<MultilinearPolynomial> = None;
                    for s in suffixes {
                        let copy = p.with_id_suffix(s);
                        acc = Some(match acc {
                            None => copy,
                            Some(a) => a.product(&copy)?,
                        });
                    }
                    acc.ok_or_else(|| PolyError::Invalid("empty duplication".into()))?
                }
            };
        }
        Ok(p)
    }
}

/// All permutations of `0..n` with their signs.
pub fn permutations_with_sign(n: usize) -> Vec<(Vec<usize>, i8)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    // Heap's algorithm, tracking parity: each swap flips the sign.
    fn heap(k: usize, perm: &mut Vec<usize>, sign: &mut i8, out: &mut Vec<(Vec<usize>, i8)>) {
        if k <= 1 {
            out.push((perm.clone(), *sign));
            return;
        }
        for i in 0..k {
            heap(k - 1, perm, sign, out);
            if i < k - 1 {
                if k % 2 == 0 {
                    perm.swap(i, k - 1);
                } else {
                    perm.swap(0, k - 1);
                }
                *sign = -*sign;
            }
        }
    }
    let mut sign = 1i8;
    heap(n, &mut perm, &mut sign, &mut out);
    out
}

/// The standard polynomial `St_n = sum over Sym(n) of sgn * x_1...x_n`.
pub fn standard(n: usize) -> MultilinearPolynomial {
    let group = GradingGroup::trivial();
    let vars: Vec<GradedVariable> = (1..=n)
        .map(|i| GradedVariable::new(format!("x{i}"), 0, VarRole::Designated))
        .collect();
    let p = MultilinearPolynomial::monomial(group, vars);
    let ids: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    p.alternate(&refs).expect("standard polynomial")
}

/// The Capelli polynomial `c_n`: alternation of the x's in
/// `x_1 y_1 x_2 y_2 ... x_n y_n`.
pub fn capelli(n: usize) -> MultilinearPolynomial {
    let group = GradingGroup::trivial();
    let mut vars = Vec::new();
    for i in 1..=n {
        vars.push(GradedVariable::new(format!("x{i}"), 0, VarRole::Designated));
        vars.push(GradedVariable::new(format!("y{i}"), 0, VarRole::Frame));
    }
    let p = MultilinearPolynomial::monomial(group, vars);
    let ids: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    p.alternate(&refs).expect("capelli polynomial")
}

/// Commutator `[x, y] = xy - yx` over the trivial group.
pub fn commutator() -> MultilinearPolynomial {
    standard(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn two_vars() -> MultilinearPolynomial {
        let group = GradingGroup::trivial();
        MultilinearPolynomial::monomial(
            group,
            vec![
                GradedVariable::new("x1", 0, VarRole::Other),
                GradedVariable::new("x2", 0, VarRole::Other),
            ],
        )
    }

    #[test]
    fn alternate_two_variables() {
        let p = two_vars().alternate(&["x1", "x2"]).unwrap();
        let e = p.expand(100).unwrap();
        assert_eq!(e.base_terms().len(), 2);
        assert_eq!(e.base_terms()[&vec![0, 1]], q(1));
        assert_eq!(e.base_terms()[&vec![1, 0]], q(-1));
    }

    #[test]
    fn double_alternation_multiplies_by_factorial() {
        let p = two_vars().alternate(&["x1", "x2"]).unwrap();
        let twice = p.alternate(&["x1", "x2"]).unwrap().expand(100).unwrap();
        let once = p.expand(100).unwrap();
        for (w, c) in once.base_terms() {
            assert_eq!(twice.base_terms()[w], c * q(2));
        }
    }

    #[test]
    fn alternate_kills_symmetric_polynomial() {
        let sym = two_vars().symmetrize(&["x1", "x2"]).unwrap();
        let alt = sym.alternate(&["x1", "x2"]).unwrap().expand(100).unwrap();
        assert!(alt.base_terms().is_empty());
    }

    #[test]
    fn symmetrize_examples() {
        let p = two_vars().symmetrize(&["x1", "x2"]).unwrap().expand(100).unwrap();
        assert_eq!(p.base_terms()[&vec![0, 1]], q(1));
        assert_eq!(p.base_terms()[&vec![1, 0]], q(1));
        let anti = two_vars().alternate(&["x1", "x2"]).unwrap();
        let sym_of_anti = anti.symmetrize(&["x1", "x2"]).unwrap().expand(100).unwrap();
        assert!(sym_of_anti.base_terms().is_empty());
    }

    #[test]
    fn mixed_degree_set_rejected() {
        let group = GradingGroup::z2();
        let p = MultilinearPolynomial::monomial(
            group,
            vec![
                GradedVariable::new("a", 0, VarRole::Other),
                GradedVariable::new("b", 1, VarRole::Other),
            ],
        );
        assert_eq!(p.alternate(&["a", "b"]).unwrap_err(), PolyError::MixedDegreeSet);
    }

    #[test]
    fn t_substitution_inserts_delta() {
        let group = GradingGroup::trivial();
        let p = MultilinearPolynomial::monomial(
            group,
            vec![
                GradedVariable::new("X1", 0, VarRole::Other),
                GradedVariable::new("w1", 0, VarRole::Bridge),
                GradedVariable::new("X2", 0, VarRole::Other),
            ],
        );
        let delta = vec![
            GradedVariable::new("y1", 0, VarRole::Frame),
            GradedVariable::new("x1", 0, VarRole::Designated),
            GradedVariable::new("y2", 0, VarRole::Frame),
        ];
        let s = p.t_substitute("X1", delta).unwrap();
        assert_eq!(s.vars().len(), 6);
        let word = s.base_terms().keys().next().unwrap();
        let ids: Vec<&str> = word.iter().map(|&v| s.vars()[v as usize].id.as_str()).collect();
        assert_eq!(ids, vec!["X1", "y1", "x1", "y2", "w1", "X2"]);
        // empty delta leaves p unchanged (modulo trace)
        let same = p.t_substitute("X1", vec![]).unwrap();
        assert_eq!(same.base_terms(), p.base_terms());
        // collision detected
        let collide = p.t_substitute("X1", vec![GradedVariable::new("w1", 0, VarRole::Other)]);
        assert_eq!(
            collide.unwrap_err(),
            PolyError::VariableCollision("w1".into())
        );
    }

    #[test]
    fn star_is_involution_and_fixes_even() {
        let group = GradingGroup::z2();
        let even = MultilinearPolynomial::monomial(
            group.clone(),
            vec![
                GradedVariable::new("a", 0, VarRole::Other),
                GradedVariable::new("b", 0, VarRole::Other),
            ],
        );
        assert_eq!(
            even.grassmann_star().unwrap().base_terms(),
            even.base_terms()
        );
        let odd_pair = MultilinearPolynomial::from_terms(
            group,
            vec![
                GradedVariable::new("a", 1, VarRole::Other),
                GradedVariable::new("b", 1, VarRole::Other),
            ],
            vec![(vec![0, 1], q(1)), (vec![1, 0], q(1))],
        )
        .unwrap();
        let star = odd_pair.grassmann_star().unwrap();
        assert_eq!(star.base_terms()[&vec![0, 1]], q(1));
        assert_eq!(star.base_terms()[&vec![1, 0]], q(-1));
        let twice = star.grassmann_star().unwrap();
        assert_eq!(twice.base_terms(), odd_pair.base_terms());
    }

    #[test]
    fn forget_parity_keeps_variables_distinct() {
        let g2 = GradingGroup::z2_times(GradingGroup::klein());
        let e0 = g2.elt_by_label("0|e").unwrap();
        let e1 = g2.elt_by_label("1|e").unwrap();
        let p = MultilinearPolynomial::monomial(
            g2,
            vec![
                GradedVariable::new("a", e0, VarRole::Other),
                GradedVariable::new("b", e1, VarRole::Other),
            ],
        );
        let f = p.forget_parity().unwrap();
        assert_eq!(f.vars().len(), 2);
        assert_eq!(f.group().order(), 4);
        assert_eq!(f.vars()[0].degree, f.vars()[1].degree);
        assert_ne!(f.vars()[0].id, f.vars()[1].id);
    }

    #[test]
    fn standard_and_capelli_shapes() {
        let s2 = standard(2).expand(100).unwrap();
        assert_eq!(s2.base_terms().len(), 2);
        let c1 = capelli(1).expand(100).unwrap();
        assert_eq!(c1.base_terms().len(), 1);
        let s4 = standard(4).expand(100).unwrap();
        assert_eq!(s4.base_terms().len(), 24);
    }

    #[test]
    fn budget_guard_fires() {
        let group = GradingGroup::trivial();
        let vars: Vec<GradedVariable> = (0..8)
            .map(|i| GradedVariable::new(format!("x{i}"), 0, VarRole::Other))
            .collect();
        let ids: Vec<String> = vars.iter().map(|v| v.id.clone()).collect();
        let refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
        let p = MultilinearPolynomial::monomial(group, vars)
            .alternate(&refs)
            .unwrap();
        assert!(matches!(
            p.expand(100),
            Err(PolyError::TermBudgetExceeded { .. })
        ));
    }

    #[test]
    fn text_round_trip() {
        let p = standard(3).expand(100).unwrap();
        let text = p.to_text().unwrap();
        let back = MultilinearPolynomial::from_text(&text, GradingGroup::trivial()).unwrap();
        assert_eq!(back.base_terms(), p.base_terms());
        assert_eq!(text, back.to_text().unwrap());
    }

    #[test]
    fn replay_reconstructs() {
        let p = two_vars();
        let derived = p
            .t_substitute(
                "x1",
                vec![
                    GradedVariable::new("y1", 0, VarRole::Frame),
                    GradedVariable::new("z1", 0, VarRole::Designated),
                ],
            )
            .unwrap()
            .alternate(&["x1", "x2"])
            .unwrap();
        let replayed = MultilinearPolynomial::replay(&p, derived.trace()).unwrap();
        assert_eq!(
            replayed.expand(1000).unwrap().base_terms(),
            derived.expand(1000).unwrap().base_terms()
        );
    }

    proptest! {
        #[test]
        fn disjoint_ops_commute(n in 2usize..5) {
            let group = GradingGroup::trivial();
            let vars: Vec<GradedVariable> = (0..2 * n)
                .map(|i| GradedVariable::new(format!("v{i}"), 0, VarRole::Other))
                .collect();
            let ids: Vec<String> = vars.iter().map(|v| v.id.clone()).collect();
            let p = MultilinearPolynomial::monomial(group, vars);
            let s1: Vec<&str> = ids[..n].iter().map(|s| s.as_str()).collect();
            let s2: Vec<&str> = ids[n..].iter().map(|s| s.as_str()).collect();
            let a = p.alternate(&s1).unwrap().symmetrize(&s2).unwrap().expand(100_000).unwrap();
            let b = p.symmetrize(&s2).unwrap().alternate(&s1).unwrap().expand(100_000).unwrap();
            prop_assert_eq!(a.base_terms(), b.base_terms());
        }

        #[test]
        fn no_zero_coefficients_after_ops(seed in 0u64..50) {
            let group = GradingGroup::trivial();
            let vars: Vec<GradedVariable> = (0..4)
                .map(|i| GradedVariable::new(format!("v{i}"), 0, VarRole::Other))
                .collect();
            let w1: Word = vec![0, 1, 2, 3];
            let w2: Word = vec![1, 0, 2, 3];
            let c = q((seed % 5) as i64) - q(2);
            let p = MultilinearPolynomial::from_terms(
                group,
                vars,
                vec![(w1, q(1)), (w2, c)],
            ).unwrap();
            let e = p.alternate(&["v0", "v1"]).unwrap().expand(10_000).unwrap();
            prop_assert!(e.base_terms().values().all(|v| !v.is_zero()));
        }
    }
}
