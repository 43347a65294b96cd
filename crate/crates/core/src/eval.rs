//! Brute-force and linear-algebra engines for multilinear identity checking:
//! exact evaluation of (possibly operator-form) polynomials on admissible
//! basis assignments, exhaustive and pruned assignment enumeration,
//! identity-space kernels by exact Gaussian elimination, bounded-degree
//! T-ideal containment, fullness classification and the e-central search.
//!
//! Admissible assignments are filtered by degree before enumeration. Two
//! enumeration modes exist and both are exact: `Exhaustive` walks the full
//! degree-compatible assignment space (block by block: assignments mixing
//! mutually annihilating blocks evaluate to zero and are skipped), and
//! `Pruned` walks only assignments that make some monomial's product chain
//! nonzero (every other assignment provably evaluates to zero). A budget
//! overflow is an error, never a silent truncation.

use crate::algebra::{BasisTag, Elem, GradedAlgebra};
use crate::error::EvalError;
use crate::group::{GradingGroup, GroupElt};
use crate::poly::{GradedVariable, MultilinearPolynomial, OpKind, VarRole, Word};
use crate::scalar::{normalize_vector, q, Scalar};
use itertools::Itertools;
use num_traits::Zero;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

/// Enumeration and expansion caps. Overflow is reported, never truncated.
#[derive(Debug, Clone)]
pub struct Budget {
    /// Cap on exhaustively enumerated assignments (also kernel assignments).
    pub max_assignments: u128,
    /// Cap on candidate paths visited in pruned enumeration.
    pub max_candidates: u64,
    /// Cap on expanded term counts.
    pub max_terms: usize,
    /// Cap on m! for identity-space patterns.
    pub max_pattern_words: usize,
    /// Cap on permutation branches explored per operator evaluation.
    pub max_perm_paths: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_assignments: 10_000_000,
            max_candidates: 50_000_000,
            max_terms: 10_000_000,
            max_pattern_words: 720,
            max_perm_paths: 10_000_000,
        }
    }
}

/// How variable domains are built on Grassmann envelopes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainMode {
    /// Each odd slot gets a dedicated single generator; even slots get the
    /// empty word. Exact for multilinear checks; the default.
    SingleGenerator,
    /// Every degree-compatible basis tensor (the paranoid cross-check mode).
    FullBasis,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum EnumerationMode {
    Exhaustive,
    Pruned,
}

/// A complete admissible assignment: basis index per variable index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment(pub Vec<usize>);

impl Assignment {
    pub fn render(&self, p: &MultilinearPolynomial, alg: &GradedAlgebra) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(v, &b)| format!("{}={}", p.vars()[v].id, alg.label(b)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub assignment: Assignment,
    pub value: Elem,
}

#[derive(Debug, Clone)]
pub struct IdentityVerdict {
    pub is_identity: bool,
    pub witness: Option<Witness>,
    pub assignments_checked: u128,
    pub mode: EnumerationMode,
}

/// Per-variable admissible basis indices.
pub fn admissible_domains(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    mode: DomainMode,
) -> Result<Vec<Vec<usize>>, EvalError> {
    let nvars = p.vars().len();
    let mut domains = Vec::with_capacity(nvars);
    let env = alg.envelope_meta();
    if let (Some(meta), DomainMode::SingleGenerator) = (env, mode) {
        let has_odd = meta.words.iter().any(|w| !w.is_empty());
        if has_odd && nvars > meta.truncation {
            return Err(EvalError::TruncationTooSmall {
                n: meta.truncation,
                d: nvars,
            });
        }
    }
    for (vi, var) in p.vars().iter().enumerate() {
        let mut dom = Vec::new();
        for b in 0..alg.dim() {
            if alg.degree(b) != var.degree {
                continue;
            }
            if let (Some(meta), DomainMode::SingleGenerator) = (env, mode) {
                let w = &meta.words[b];
                let ok = w.is_empty() || (w.len() == 1 && w[0] as usize == vi + 1);
                if !ok {
                    continue;
                }
            }
            dom.push(b);
        }
        domains.push(dom);
    }
    Ok(domains)
}

// ---- evaluation ----

struct OpInfo {
    kind: OpKind,
    set: Vec<u32>, // sorted
}

/// Shared evaluation context for one (polynomial, algebra) pair.
struct EvalPlan<'a> {
    alg: &'a GradedAlgebra,
    words: Vec<(&'a Word, &'a Scalar)>,
    ops: Vec<OpInfo>,
    var_op: Vec<Option<usize>>, // op index per variable
}

impl<'a> EvalPlan<'a> {
    fn new(p: &'a MultilinearPolynomial, alg: &'a GradedAlgebra) -> Result<Self, EvalError> {
        if !p.ops_disjoint() {
            return Err(EvalError::Poly(crate::error::PolyError::OverlappingOps));
        }
        let ops: Vec<OpInfo> = p
            .ops()
            .iter()
            .map(|o| OpInfo {
                kind: o.kind,
                set: o.set.clone(),
            })
            .collect();
        let mut var_op = vec![None; p.vars().len()];
        for (oi, op) in ops.iter().enumerate() {
            for &v in &op.set {
                var_op[v as usize] = Some(oi);
            }
        }
        Ok(EvalPlan {
            alg,
            words: p.base_terms().iter().collect(),
            ops,
            var_op,
        })
    }

    /// Value of the operator polynomial at a complete assignment.
    ///
    /// Shortcuts: an alternation over slots whose assigned values repeat is
    /// zero; a symmetrization over slots with one common value contributes a
    /// factorial factor. Remaining operators are branched exactly, within
    /// the permutation budget.
    fn evaluate(&self, phi: &[usize], budget: &Budget) -> Result<Elem, EvalError> {
        let mut factor = q(1);
        let mut live = Vec::new(); // indices into self.ops that need branching
        for (oi, op) in self.ops.iter().enumerate() {
            let values: Vec<usize> = op.set.iter().map(|&v| phi[v as usize]).collect();
            let distinct: HashSet<usize> = values.iter().copied().collect();
            match op.kind {
                OpKind::Alternate if distinct.len() < values.len() => {
                    return Ok(Elem::zero());
                }
                OpKind::Symmetrize if distinct.len() == 1 && values.len() > 1 => {
                    let mut f = q(1);
                    for k in 2..=values.len() {
                        f *= q(k as i64);
                    }
                    factor *= f;
                }
                _ => {
                    if values.len() > 1 {
                        live.push(oi);
                    }
                }
            }
        }
        let mut perm_bound: u128 = 1;
        for &oi in &live {
            let mut f: u128 = 1;
            for k in 2..=self.ops[oi].set.len() as u128 {
                f = f.saturating_mul(k);
            }
            perm_bound = perm_bound.saturating_mul(f);
        }
        if perm_bound > budget.max_perm_paths {
            return Err(EvalError::BudgetExceeded {
                what: "operator permutation branches",
                count: perm_bound,
                budget: budget.max_perm_paths,
            });
        }
        let live_of_var: Vec<Option<usize>> = self
            .var_op
            .iter()
            .map(|o| o.and_then(|oi| live.iter().position(|&l| l == oi)))
            .collect();
        let mut total = Elem::zero();
        for (word, coeff) in &self.words {
            let mut state = BranchState {
                plan: self,
                phi,
                live: &live,
                live_of_var: &live_of_var,
                used: live
                    .iter()
                    .map(|&oi| vec![false; self.ops[oi].set.len()])
                    .collect(),
                perm: live
                    .iter()
                    .map(|&oi| vec![usize::MAX; self.ops[oi].set.len()])
                    .collect(),
                total: Elem::zero(),
            };
            state.walk(word, 0, &Elem::zero());
            let mut part = state.total;
            part.scale(coeff);
            total.add_scaled(&part, &q(1));
        }
        total.scale(&factor);
        Ok(total)
    }
}

struct BranchState<'a, 'b> {
    plan: &'b EvalPlan<'a>,
    phi: &'b [usize],
    live: &'b [usize],
    /// position in `live` per variable, when the variable's op is live
    live_of_var: &'b [Option<usize>],
    /// used[k][s] = source s of live op k already consumed
    used: Vec<Vec<bool>>,
    /// perm[k][slot_pos] = source_pos (both in sorted-set coordinates)
    perm: Vec<Vec<usize>>,
    total: Elem,
}

impl<'a, 'b> BranchState<'a, 'b> {
    fn walk(&mut self, word: &Word, pos: usize, prefix: &Elem) {
        if pos == word.len() {
            let mut sign = 1i64;
            for (k, &oi) in self.live.iter().enumerate() {
                if self.plan.ops[oi].kind == OpKind::Alternate {
                    let p = &self.perm[k];
                    let mut inv = 0usize;
                    for i in 0..p.len() {
                        for j in i + 1..p.len() {
                            if p[i] > p[j] {
                                inv += 1;
                            }
                        }
                    }
                    if inv % 2 == 1 {
                        sign = -sign;
                    }
                }
            }
            self.total.add_scaled(prefix, &q(sign));
            return;
        }
        let v = word[pos];
        match self.live_of_var[v as usize] {
            None => {
                let next = self.mul_step(prefix, self.phi[v as usize], pos);
                if !next.is_zero() {
                    self.walk(word, pos + 1, &next);
                }
            }
            Some(k) => {
                let oi = self.live[k];
                let set_len = self.plan.ops[oi].set.len();
                let slot_pos = self.plan.ops[oi].set.iter().position(|&s| s == v).unwrap();
                for source_pos in 0..set_len {
                    if self.used[k][source_pos] {
                        continue;
                    }
                    let source_var = self.plan.ops[oi].set[source_pos];
                    let b = self.phi[source_var as usize];
                    let next = self.mul_step(prefix, b, pos);
                    if next.is_zero() {
                        continue;
                    }
                    self.used[k][source_pos] = true;
                    self.perm[k][slot_pos] = source_pos;
                    self.walk(word, pos + 1, &next);
                    self.used[k][source_pos] = false;
                    self.perm[k][slot_pos] = usize::MAX;
                }
            }
        }
    }

    fn mul_step(&self, prefix: &Elem, b: usize, pos: usize) -> Elem {
        if pos == 0 {
            Elem::basis(b)
        } else {
            self.plan.alg.mul_basis(prefix, b)
        }
    }
}

/// Exact value of `p` on `alg` under a complete degree-compatible
/// assignment. Handles operator polynomials without expansion.
pub fn evaluate(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    phi: &Assignment,
) -> Result<Elem, EvalError> {
    evaluate_with_budget(p, alg, phi, &Budget::default())
}

pub fn evaluate_with_budget(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    phi: &Assignment,
    budget: &Budget,
) -> Result<Elem, EvalError> {
    if phi.0.len() != p.vars().len() {
        let missing = p
            .vars()
            .get(phi.0.len())
            .map(|v| v.id.clone())
            .unwrap_or_else(|| "?".into());
        return Err(EvalError::IncompleteAssignment(missing));
    }
    for (v, &b) in phi.0.iter().enumerate() {
        if b >= alg.dim() || alg.degree(b) != p.vars()[v].degree {
            return Err(EvalError::DegreeMismatch {
                var: p.vars()[v].id.clone(),
                degree: alg.group().label(p.vars()[v].degree).to_string(),
            });
        }
    }
    let plan = EvalPlan::new(p, alg)?;
    plan.evaluate(&phi.0, budget)
}

// ---- assignment enumeration ----

/// Block-segmented assignment spaces: each space is a per-variable domain
/// vector confined to one mutually annihilating block.
fn block_spaces(
    alg: &GradedAlgebra,
    domains: &[Vec<usize>],
    nvars: usize,
) -> Vec<Vec<Vec<usize>>> {
    if nvars == 0 {
        return vec![];
    }
    let blocks = alg.blocks();
    if blocks.len() <= 1 {
        if domains.iter().any(|d| d.is_empty()) {
            return vec![];
        }
        return vec![domains.to_vec()];
    }
    let mut block_of = vec![0usize; alg.dim()];
    for (bi, block) in blocks.iter().enumerate() {
        for &i in block {
            block_of[i] = bi;
        }
    }
    let mut spaces = Vec::new();
    for bi in 0..blocks.len() {
        let mut space = Vec::with_capacity(nvars);
        let mut ok = true;
        for dom in domains {
            let restricted: Vec<usize> =
                dom.iter().copied().filter(|&b| block_of[b] == bi).collect();
            if restricted.is_empty() {
                ok = false;
                break;
            }
            space.push(restricted);
        }
        if ok {
            spaces.push(space);
        }
    }
    spaces
}

fn space_size(space: &[Vec<usize>]) -> u128 {
    space
        .iter()
        .fold(1u128, |acc, d| acc.saturating_mul(d.len() as u128))
}

fn advance_odometer(odo: &mut [usize], space: &[Vec<usize>]) -> bool {
    let mut pos = space.len();
    while pos > 0 {
        pos -= 1;
        odo[pos] += 1;
        if odo[pos] < space[pos].len() {
            return true;
        }
        odo[pos] = 0;
        if pos == 0 {
            return false;
        }
    }
    false
}

/// Decides whether `p` vanishes on every admissible assignment. Witnesses
/// are deterministic: the first nonzero assignment in enumeration order
/// (blocks in order, then variable-major basis order) in exhaustive mode,
/// the lexicographically least one in pruned mode.
pub fn is_identity(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    budget: &Budget,
) -> Result<IdentityVerdict, EvalError> {
    is_identity_with_mode(p, alg, budget, DomainMode::SingleGenerator)
}

pub fn is_identity_with_mode(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    budget: &Budget,
    mode: DomainMode,
) -> Result<IdentityVerdict, EvalError> {
    let domains = admissible_domains(p, alg, mode)?;
    let spaces = block_spaces(alg, &domains, p.vars().len());
    let total: u128 = spaces.iter().map(|s| space_size(s)).sum();
    let plan = EvalPlan::new(p, alg)?;
    if total <= budget.max_assignments {
        let mut checked: u128 = 0;
        for space in &spaces {
            let mut odo = vec![0usize; space.len()];
            loop {
                let phi: Vec<usize> = odo.iter().zip(space.iter()).map(|(&i, d)| d[i]).collect();
                checked += 1;
                let value = plan.evaluate(&phi, budget)?;
                if !value.is_zero() {
                    return Ok(IdentityVerdict {
                        is_identity: false,
                        witness: Some(Witness {
                            assignment: Assignment(phi),
                            value,
                        }),
                        assignments_checked: checked,
                        mode: EnumerationMode::Exhaustive,
                    });
                }
                if !advance_odometer(&mut odo, space) {
                    break;
                }
            }
        }
        Ok(IdentityVerdict {
            is_identity: true,
            witness: None,
            assignments_checked: checked,
            mode: EnumerationMode::Exhaustive,
        })
    } else {
        // pruned: only assignments making some monomial chain nonzero
        let mut best: Option<Witness> = None;
        let mut paths: u64 = 0;
        for_each_candidate(p, alg, &domains, &mut |phi| {
            paths += 1;
            if paths > budget.max_candidates {
                return Err(EvalError::BudgetExceeded {
                    what: "candidate paths",
                    count: paths as u128,
                    budget: budget.max_candidates as u128,
                });
            }
            let value = plan.evaluate(phi, budget)?;
            if !value.is_zero() {
                let better = match &best {
                    None => true,
                    Some(w) => phi < w.assignment.0.as_slice(),
                };
                if better {
                    best = Some(Witness {
                        assignment: Assignment(phi.to_vec()),
                        value,
                    });
                }
            }
            Ok(())
        })?;
        Ok(IdentityVerdict {
            is_identity: best.is_none(),
            witness: best,
            assignments_checked: paths as u128,
            mode: EnumerationMode::Pruned,
        })
    }
}

/// Streams every assignment that makes some monomial's product chain
/// nonzero; assignments outside the stream provably evaluate to zero.
/// The same assignment may be visited more than once.
fn for_each_candidate(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    domains: &[Vec<usize>],
    visit: &mut dyn FnMut(&[usize]) -> Result<(), EvalError>,
) -> Result<(), EvalError> {
    if !p.ops_disjoint() {
        return Err(EvalError::Poly(crate::error::PolyError::OverlappingOps));
    }
    let nvars = p.vars().len();
    let ops = p.ops();
    let mut var_op = vec![None; nvars];
    for (oi, op) in ops.iter().enumerate() {
        for &v in &op.set {
            var_op[v as usize] = Some(oi);
        }
    }
    struct Dfs<'c> {
        alg: &'c GradedAlgebra,
        domains: &'c [Vec<usize>],
        ops: &'c [crate::poly::SetOp],
        var_op: &'c [Option<usize>],
        phi: Vec<usize>,
        used: Vec<Vec<bool>>,
    }
    impl<'c> Dfs<'c> {
        fn walk(
            &mut self,
            word: &Word,
            pos: usize,
            prefix: &Elem,
            visit: &mut dyn FnMut(&[usize]) -> Result<(), EvalError>,
        ) -> Result<(), EvalError> {
            if pos == word.len() {
                return visit(&self.phi);
            }
            let v = word[pos] as usize;
            match self.var_op[v] {
                None => {
                    for di in 0..self.domains[v].len() {
                        let b = self.domains[v][di];
                        let next = if pos == 0 {
                            Elem::basis(b)
                        } else {
                            self.alg.mul_basis(prefix, b)
                        };
                        if next.is_zero() {
                            continue;
                        }
                        self.phi[v] = b;
                        self.walk(word, pos + 1, &next, visit)?;
                        self.phi[v] = usize::MAX;
                    }
                }
                Some(oi) => {
                    let set_len = self.ops[oi].set.len();
                    for source_pos in 0..set_len {
                        if self.used[oi][source_pos] {
                            continue;
                        }
                        let source_var = self.ops[oi].set[source_pos] as usize;
                        for di in 0..self.domains[source_var].len() {
                            let b = self.domains[source_var][di];
                            let next = if pos == 0 {
                                Elem::basis(b)
                            } else {
                                self.alg.mul_basis(prefix, b)
                            };
                            if next.is_zero() {
                                continue;
                            }
                            self.used[oi][source_pos] = true;
                            self.phi[source_var] = b;
                            self.walk(word, pos + 1, &next, visit)?;
                            self.phi[source_var] = usize::MAX;
                            self.used[oi][source_pos] = false;
                        }
                    }
                }
            }
            Ok(())
        }
    }
    let mut dfs = Dfs {
        alg,
        domains,
        ops,
        var_op: &var_op,
        phi: vec![usize::MAX; nvars],
        used: ops.iter().map(|o| vec![false; o.set.len()]).collect(),
    };
    for (word, _) in p.base_terms() {
        dfs.walk(word, 0, &Elem::zero(), visit)?;
    }
    Ok(())
}

// ---- identity spaces ----

/// A multiset of variable degrees, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DegreePattern(pub Vec<GroupElt>);

impl DegreePattern {
    pub fn ungraded(size: usize) -> Self {
        DegreePattern(vec![0; size])
    }

    pub fn render(&self, group: &GradingGroup) -> String {
        self.0
            .iter()
            .map(|&g| group.label(g).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Fresh variables x1..xm with this pattern's degrees.
    pub fn variables(&self) -> Vec<GradedVariable> {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &g)| GradedVariable::new(format!("x{}", i + 1), g, VarRole::Other))
            .collect()
    }
}

/// All degree multisets of the given size over the group.
pub fn patterns_of_size(group: &GradingGroup, size: usize) -> Vec<DegreePattern> {
    (0..group.order())
        .combinations_with_replacement(size)
        .map(DegreePattern)
        .collect()
}

/// Kernel of the evaluation map on one multilinear degree pattern: the
/// coefficient vectors (over the lexicographic word list) that vanish under
/// every admissible assignment. Stored in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySpace {
    pub pattern: DegreePattern,
    pub words: Vec<Word>,
    pub kernel: Vec<Vec<Scalar>>,
    pub assignments_checked: u128,
}

impl IdentitySpace {
    pub fn dim(&self) -> usize {
        self.kernel.len()
    }

    /// Is `v` in the row space of the (RREF) kernel?
    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        reduce_against(v, &self.kernel).iter().all(|c| c.is_zero())
    }

    pub fn contains_space(&self, other: &IdentitySpace) -> bool {
        other.kernel.iter().all(|v| self.contains_vector(v))
    }

    /// Reconstructs the polynomial for a kernel vector.
    pub fn vector_polynomial(
        &self,
        group: Arc<GradingGroup>,
        v: &[Scalar],
    ) -> MultilinearPolynomial {
        let vars = self.pattern.variables();
        let terms: Vec<(Word, Scalar)> = self
            .words
            .iter()
            .zip(v.iter())
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        MultilinearPolynomial::from_terms(group, vars, terms).expect("kernel polynomial")
    }
}

fn reduce_against(v: &[Scalar], rref: &[Vec<Scalar>]) -> Vec<Scalar> {
    let mut r = v.to_vec();
    for row in rref {
        let lead = row.iter().position(|c| !c.is_zero());
        if let Some(l) = lead {
            if !r[l].is_zero() {
                let f = &r[l] / &row[l];
                for c in 0..r.len() {
                    let vv = &r[c] - &f * &row[c];
                    r[c] = vv;
                }
            }
        }
    }
    r
}

/// Incremental kernel: starts as the full coefficient space and intersects
/// with the orthogonal complement of each constraint row.
struct KernelAccumulator {
    basis: Vec<Vec<Scalar>>,
}

impl KernelAccumulator {
    fn full(n: usize) -> Self {
        let mut basis = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = vec![q(0); n];
            row[i] = q(1);
            basis.push(row);
        }
        KernelAccumulator { basis }
    }

    fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Intersects the kernel with `{ x : x . constraint = 0 }`.
    fn add_constraint(&mut self, constraint: &[Scalar]) {
        let dots: Vec<Scalar> = self
            .basis
            .iter()
            .map(|b| {
                let mut acc = q(0);
                for (x, y) in b.iter().zip(constraint.iter()) {
                    if !x.is_zero() && !y.is_zero() {
                        acc += x * y;
                    }
                }
                acc
            })
            .collect();
        let Some(pivot) = dots.iter().position(|d| !d.is_zero()) else {
            return;
        };
        let pivot_row = self.basis.remove(pivot);
        let pivot_dot = dots[pivot].clone();
        for (i, b) in self.basis.iter_mut().enumerate() {
            let di = if i < pivot { &dots[i] } else { &dots[i + 1] };
            if di.is_zero() {
                continue;
            }
            let f = di / &pivot_dot;
            for (x, pv) in b.iter_mut().zip(pivot_row.iter()) {
                let v = &*x - &f * pv;
                *x = v;
            }
            normalize_vector(b);
        }
    }

    fn into_rref(self) -> Vec<Vec<Scalar>> {
        let mut rows = crate::algebra::row_reduce(self.basis);
        for r in &mut rows {
            normalize_vector(r);
        }
        rows
    }
}

/// Computes the identity space of `alg` on `pattern`.
pub fn identity_space(
    alg: &GradedAlgebra,
    pattern: &DegreePattern,
    budget: &Budget,
) -> Result<IdentitySpace, EvalError> {
    identity_space_with_mode(alg, pattern, budget, DomainMode::SingleGenerator)
}

pub fn identity_space_with_mode(
    alg: &GradedAlgebra,
    pattern: &DegreePattern,
    budget: &Budget,
    mode: DomainMode,
) -> Result<IdentitySpace, EvalError> {
    let m = pattern.0.len();
    let n_words: usize = (1..=m).product();
    if n_words > budget.max_pattern_words {
        return Err(EvalError::BudgetExceeded {
            what: "pattern words",
            count: n_words as u128,
            budget: budget.max_pattern_words as u128,
        });
    }
    let words: Vec<Word> = (0..m as u32).permutations(m).collect();
    let word_index: BTreeMap<&Word, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let vars = pattern.variables();
    let probe = MultilinearPolynomial::monomial(alg.group().clone(), vars);
    let domains = admissible_domains(&probe, alg, mode)?;
    let spaces = block_spaces(alg, &domains, m);
    let total: u128 = spaces.iter().map(|s| space_size(s)).sum();
    if total > budget.max_assignments {
        return Err(EvalError::BudgetExceeded {
            what: "kernel assignments",
            count: total,
            budget: budget.max_assignments,
        });
    }
    let mut kernel = KernelAccumulator::full(n_words);
    let mut checked: u128 = 0;

    // evaluates all words of one assignment, sharing prefixes
    fn eval_words(
        alg: &GradedAlgebra,
        phi: &[usize],
        used: &mut u32,
        order: &mut Vec<u32>,
        prefix: &Elem,
        out: &mut Vec<(Word, Elem)>,
    ) {
        let m = phi.len();
        if order.len() == m {
            out.push((order.clone(), prefix.clone()));
            return;
        }
        for v in 0..m {
            if *used & (1 << v) != 0 {
                continue;
            }
            let next = if order.is_empty() {
                Elem::basis(phi[v])
            } else {
                alg.mul_basis(prefix, phi[v])
            };
            if next.is_zero() {
                continue;
            }
            *used |= 1 << v;
            order.push(v as u32);
            eval_words(alg, phi, used, order, &next, out);
            order.pop();
            *used &= !(1 << v);
        }
    }

    'outer: for space in &spaces {
        let mut odo = vec![0usize; m];
        loop {
            let phi: Vec<usize> = odo.iter().zip(space.iter()).map(|(&i, d)| d[i]).collect();
            checked += 1;
            let mut leaf = Vec::new();
            let mut order = Vec::new();
            let mut used = 0u32;
            eval_words(alg, &phi, &mut used, &mut order, &Elem::zero(), &mut leaf);
            if !leaf.is_empty() {
                // transpose: one constraint per algebra coordinate
                let mut coords: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
                for (word, value) in &leaf {
                    let wi = word_index[word];
                    for (b, c) in &value.0 {
                        coords.entry(*b).or_insert_with(|| vec![q(0); n_words])[wi] = c.clone();
                    }
                }
                for (_, constraint) in coords {
                    kernel.add_constraint(&constraint);
                    if kernel.is_empty() {
                        break 'outer;
                    }
                }
            }
            if !advance_odometer(&mut odo, space) {
                break;
            }
        }
    }
    Ok(IdentitySpace {
        pattern: pattern.clone(),
        words,
        kernel: kernel.into_rref(),
        assignments_checked: checked,
    })
}

// ---- bounded-degree containment ----

#[derive(Debug, Clone)]
pub struct SeparatingWitness {
    pub pattern: DegreePattern,
    pub polynomial: MultilinearPolynomial,
    /// true when the polynomial is an identity of the first algebra but not
    /// of the second; false for the opposite direction.
    pub identity_of_first: bool,
}

#[derive(Debug, Clone)]
pub struct ContainmentReport {
    pub holds: bool,
    pub degree: usize,
    pub separating: Option<SeparatingWitness>,
}

/// Does `Id(a) contain Id(b)` in all multilinear degrees `<= d`?
/// A `false` is definitive; a `true` means "no separation found up to d".
pub fn ideal_contains_upto(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    d: usize,
    budget: &Budget,
) -> Result<ContainmentReport, EvalError> {
    if a.group() != b.group() {
        return Err(EvalError::Algebra(
            crate::error::AlgebraError::GradingGroupMismatch,
        ));
    }
    for m in 1..=d {
        for pattern in patterns_of_size(a.group(), m) {
            let ka = identity_space(a, &pattern, budget)?;
            let kb = identity_space(b, &pattern, budget)?;
            if !ka.contains_space(&kb) {
                let v = kb
                    .kernel
                    .iter()
                    .find(|v| !ka.contains_vector(v))
                    .expect("containment failure has a witness vector");
                let polynomial = kb.vector_polynomial(a.group().clone(), v);
                return Ok(ContainmentReport {
                    holds: false,
                    degree: d,
                    separating: Some(SeparatingWitness {
                        pattern,
                        polynomial,
                        identity_of_first: false,
                    }),
                });
            }
        }
    }
    Ok(ContainmentReport {
        holds: true,
        degree: d,
        separating: None,
    })
}

/// Mutual containment up to degree d; on failure reports a separating
/// polynomial and its direction.
pub fn pi_equivalent_upto(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    d: usize,
    budget: &Budget,
) -> Result<ContainmentReport, EvalError> {
    if a.group() != b.group() {
        return Err(EvalError::Algebra(
            crate::error::AlgebraError::GradingGroupMismatch,
        ));
    }
    for m in 1..=d {
        for pattern in patterns_of_size(a.group(), m) {
            let ka = identity_space(a, &pattern, budget)?;
            let kb = identity_space(b, &pattern, budget)?;
            if ka.kernel != kb.kernel {
                let (v, identity_of_first) =
                    match kb.kernel.iter().find(|v| !ka.contains_vector(v)) {
                        Some(v) => (v, false),
                        None => (
                            ka.kernel
                                .iter()
                                .find(|v| !kb.contains_vector(v))
                                .expect("unequal RREFs must differ in one direction"),
                            true,
                        ),
                    };
                let polynomial = ka.vector_polynomial(a.group().clone(), v);
                return Ok(ContainmentReport {
                    holds: false,
                    degree: d,
                    separating: Some(SeparatingWitness {
                        pattern,
                        polynomial,
                        identity_of_first,
                    }),
                });
            }
        }
    }
    Ok(ContainmentReport {
        holds: true,
        degree: d,
        separating: None,
    })
}

// ---- fullness classification ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize)]
pub enum Fullness {
    NotWeaklyFull,
    WeaklyFull,
    Full,
    StronglyFull,
}

#[derive(Debug, Clone)]
pub struct FullnessReport {
    pub class: Fullness,
    /// Nonzero evaluation visiting all components (weak-fullness witness).
    pub weak_witness: Option<Witness>,
    /// Nonzero evaluation missing some component (defeats fullness).
    pub full_counterexample: Option<Witness>,
    /// Nonzero evaluation missing some semisimple basis element (defeats
    /// strong fullness).
    pub strong_counterexample: Option<Witness>,
    pub nonzero_evaluations: u64,
    pub candidate_paths: u64,
}

/// Exact fullness classification by enumeration of all admissible nonzero
/// evaluations (via the pruned candidate stream, which covers them all).
pub fn classify_fullness(
    p: &MultilinearPolynomial,
    alg: &GradedAlgebra,
    budget: &Budget,
) -> Result<FullnessReport, EvalError> {
    let domains = admissible_domains(p, alg, DomainMode::SingleGenerator)?;
    let plan = EvalPlan::new(p, alg)?;
    let n_components = alg.components().len();
    let mut all_classes: HashSet<(usize, usize)> = HashSet::new();
    for b in 0..alg.dim() {
        if let BasisTag::Semisimple { component, class } = alg.tag(b) {
            all_classes.insert((component, class));
        }
    }
    let mut weak_witness: Option<Witness> = None;
    let mut full_counterexample: Option<Witness> = None;
    let mut strong_counterexample: Option<Witness> = None;
    let mut nonzero: u64 = 0;
    let mut paths: u64 = 0;
    for_each_candidate(p, alg, &domains, &mut |phi| {
        paths += 1;
        if paths > budget.max_candidates {
            return Err(EvalError::BudgetExceeded {
                what: "candidate paths",
                count: paths as u128,
                budget: budget.max_candidates as u128,
            });
        }
        let value = plan.evaluate(phi, budget)?;
        if value.is_zero() {
            return Ok(());
        }
        nonzero += 1;
        let mut components_seen = HashSet::new();
        let mut classes_seen = HashSet::new();
        for &b in phi {
            if let BasisTag::Semisimple { component, class } = alg.tag(b) {
                components_seen.insert(component);
                classes_seen.insert((component, class));
            }
        }
        let visits_all_components = components_seen.len() == n_components;
        let visits_all_classes = classes_seen.len() == all_classes.len();
        let update = |slot: &mut Option<Witness>, phi: &[usize], value: &Elem| {
            let better = match slot {
                None => true,
                Some(w) => phi < w.assignment.0.as_slice(),
            };
            if better {
                *slot = Some(Witness {
                    assignment: Assignment(phi.to_vec()),
                    value: value.clone(),
                });
            }
        };
        if visits_all_components {
            update(&mut weak_witness, phi, &value);
        } else {
            update(&mut full_counterexample, phi, &value);
        }
        if !visits_all_classes {
            update(&mut strong_counterexample, phi, &value);
        }
        Ok(())
    })?;
    let class = if nonzero == 0 || weak_witness.is_none() {
        Fullness::NotWeaklyFull
    } else if full_counterexample.is_some() {
        Fullness::WeaklyFull
    } else if strong_counterexample.is_some() {
        Fullness::Full
    } else {
        Fullness::StronglyFull
    };
    Ok(FullnessReport {
        class,
        weak_witness,
        full_counterexample,
        strong_counterexample,
        nonzero_evaluations: nonzero,
        candidate_paths: paths,
    })
}

// ---- e-central search ----

#[derive(Debug, Clone)]
pub struct CentralPolynomial {
    pub polynomial: MultilinearPolynomial,
    pub pattern: DegreePattern,
}

/// Searches degree patterns of size `<= d` for a multilinear polynomial,
/// homogeneous of trivial degree, whose admissible values all lie in `F.1`
/// and are not all zero. Linear problem: centrality constraints minus the
/// identity space.
pub fn find_e_central(
    alg: &GradedAlgebra,
    d: usize,
    budget: &Budget,
) -> Result<Option<CentralPolynomial>, EvalError> {
    let unit = alg.unit().ok_or_else(|| {
        EvalError::Algebra(crate::error::AlgebraError::Invalid(
            "algebra has no unit; e-central search needs one".into(),
        ))
    })?;
    let group = alg.group().clone();
    let e = group.identity();
    // coordinate with nonzero unit coefficient, for the span(1) test
    let i0 = unit.0[0].0;
    let u0 = unit.0[0].1.clone();
    for m in 1..=d {
        for pattern in patterns_of_size(&group, m) {
            let vars = pattern.variables();
            let probe = MultilinearPolynomial::monomial(group.clone(), vars.clone());
            let words: Vec<Word> = (0..m as u32)
                .permutations(m)
                .filter(|w| probe.word_degree(w) == e)
                .collect();
            if words.is_empty() {
                continue;
            }
            let n_words = words.len();
            if n_words > budget.max_pattern_words {
                return Err(EvalError::BudgetExceeded {
                    what: "pattern words",
                    count: n_words as u128,
                    budget: budget.max_pattern_words as u128,
                });
            }
            let word_index: BTreeMap<&Word, usize> =
                words.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let domains = admissible_domains(&probe, alg, DomainMode::SingleGenerator)?;
            let spaces = block_spaces(alg, &domains, m);
            let total: u128 = spaces.iter().map(|s| space_size(s)).sum();
            if total > budget.max_assignments {
                return Err(EvalError::BudgetExceeded {
                    what: "central-search assignments",
                    count: total,
                    budget: budget.max_assignments,
                });
            }
            let mut central = KernelAccumulator::full(n_words);
            let mut zero = KernelAccumulator::full(n_words);
            for space in &spaces {
                let mut odo = vec![0usize; m];
                'assignments: loop {
                    let phi: Vec<usize> =
                        odo.iter().zip(space.iter()).map(|(&i, d)| d[i]).collect();
                    let mut value_rows: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
                    for word in &words {
                        let mut prefix = Elem::basis(phi[word[0] as usize]);
                        for &v in &word[1..] {
                            prefix = alg.mul_basis(&prefix, phi[v as usize]);
                            if prefix.is_zero() {
                                break;
                            }
                        }
                        if prefix.is_zero() {
                            continue;
                        }
                        let wi = word_index[word];
                        for (b, c) in &prefix.0 {
                            value_rows.entry(*b).or_insert_with(|| vec![q(0); n_words])[wi] =
                                c.clone();
                        }
                    }
                    for row in value_rows.values() {
                        zero.add_constraint(row);
                    }
                    // centrality: value[b]*u0 - value[i0]*u[b] = 0 for b != i0
                    let empty = vec![q(0); n_words];
                    let row_i0 = value_rows.get(&i0).unwrap_or(&empty).clone();
                    for bb in 0..alg.dim() {
                        if bb == i0 {
                            continue;
                        }
                        let row_b = value_rows.get(&bb).unwrap_or(&empty);
                        let ub = unit.coeff(bb);
                        let mut constraint = vec![q(0); n_words];
                        let mut nontrivial = false;
                        for w in 0..n_words {
                            let val = &row_b[w] * &u0 - &row_i0[w] * &ub;
                            if !val.is_zero() {
                                nontrivial = true;
                            }
                            constraint[w] = val;
                        }
                        if nontrivial {
                            central.add_constraint(&constraint);
                            if central.is_empty() {
                                break 'assignments;
                            }
                        }
                    }
                    if !advance_odometer(&mut odo, space) {
                        break;
                    }
                }
            }
            let central = central.into_rref();
            let zero_space = IdentitySpace {
                pattern: pattern.clone(),
                words: words.clone(),
                kernel: zero.into_rref(),
                assignments_checked: 0,
            };
            if let Some(v) = central.iter().find(|v| !zero_space.contains_vector(v)) {
                let terms: Vec<(Word, Scalar)> = words
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !v[*i].is_zero())
                    .map(|(i, w)| (w.clone(), v[i].clone()))
                    .collect();
                let polynomial = MultilinearPolynomial::from_terms(group.clone(), vars, terms)
                    .expect("central polynomial construction");
                return Ok(Some(CentralPolynomial {
                    polynomial,
                    pattern,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{direct_sum, matrix_algebra, upper_triangular};
    use crate::poly::{capelli, standard};

    fn b(alg: &GradedAlgebra, label: &str) -> usize {
        alg.index_of_label(label).unwrap()
    }

    #[test]
    fn evaluate_commutator_on_m2() {
        let m2 = matrix_algebra(2);
        let p = standard(2);
        let phi = Assignment(vec![b(&m2, "c1.e1_2"), b(&m2, "c1.e2_1")]);
        let v = evaluate(&p, &m2, &phi).unwrap();
        assert_eq!(
            v,
            Elem(vec![(b(&m2, "c1.e1_1"), q(1)), (b(&m2, "c1.e2_2"), q(-1))])
        );
    }

    #[test]
    fn evaluate_monomial_on_ut2() {
        let ut2 = upper_triangular(2);
        let group = GradingGroup::trivial();
        let p = MultilinearPolynomial::monomial(
            group,
            vec![
                GradedVariable::new("X1", 0, VarRole::Other),
                GradedVariable::new("w1", 0, VarRole::Bridge),
                GradedVariable::new("X2", 0, VarRole::Other),
            ],
        );
        let phi = Assignment(vec![
            b(&ut2, "c1.e1_1"),
            b(&ut2, "e1_2"),
            b(&ut2, "c2.e1_1"),
        ]);
        let v = evaluate(&p, &ut2, &phi).unwrap();
        assert_eq!(v, Elem::basis(b(&ut2, "e1_2")));
    }

    #[test]
    fn amitsur_levitzki_for_m2() {
        let m2 = matrix_algebra(2);
        let budget = Budget::default();
        let v4 = is_identity(&standard(4), &m2, &budget).unwrap();
        assert!(v4.is_identity);
        assert_eq!(v4.assignments_checked, 256);
        assert_eq!(v4.mode, EnumerationMode::Exhaustive);
        let v3 = is_identity(&standard(3), &m2, &budget).unwrap();
        assert!(!v3.is_identity);
        assert!(v3.witness.is_some());
        let v2 = is_identity(&standard(2), &m2, &budget).unwrap();
        let w = v2.witness.unwrap();
        // first nonzero in enumeration order: e11, e12
        assert_eq!(w.assignment.0, vec![0, 1]);
    }

    #[test]
    fn capelli_2_on_field() {
        let f = matrix_algebra(1);
        let budget = Budget::default();
        let v = is_identity(&capelli(2), &f, &budget).unwrap();
        assert!(v.is_identity);
    }

    #[test]
    fn identity_on_sum_is_conjunction() {
        let ut2 = upper_triangular(2);
        let m2 = matrix_algebra(2);
        let sum = direct_sum(&ut2, &m2).unwrap();
        let budget = Budget::default();
        // [x1,x2][x3,x4] is an identity of UT2, not of M2, hence not of the sum
        let p = standard(2).product(&standard(2).with_id_suffix("b")).unwrap();
        let on_ut2 = is_identity(&p, &ut2, &budget).unwrap();
        let on_m2 = is_identity(&p, &m2, &budget).unwrap();
        let on_sum = is_identity(&p, &sum, &budget).unwrap();
        assert!(on_ut2.is_identity);
        assert!(!on_m2.is_identity);
        assert_eq!(on_sum.is_identity, on_ut2.is_identity && on_m2.is_identity);
    }

    #[test]
    fn kernel_of_field_contains_commutator() {
        let f = matrix_algebra(1);
        let budget = Budget::default();
        let space = identity_space(&f, &DegreePattern::ungraded(2), &budget).unwrap();
        assert_eq!(space.dim(), 1);
        let v = &space.kernel[0];
        assert_eq!(v.len(), 2);
        assert_eq!(v[0], -v[1].clone());
    }

    #[test]
    fn kernel_of_m2_degree3_is_zero() {
        let m2 = matrix_algebra(2);
        let budget = Budget::default();
        let space = identity_space(&m2, &DegreePattern::ungraded(3), &budget).unwrap();
        assert_eq!(space.dim(), 0);
    }

    #[test]
    fn is_identity_agrees_with_kernel_membership() {
        let budget = Budget::default();
        let fixtures = [matrix_algebra(1), matrix_algebra(2), upper_triangular(2)];
        let polys = [standard(2), standard(3), capelli(2)];
        for alg in &fixtures {
            for p in &polys {
                let expanded = p.expand(10_000).unwrap();
                let m = expanded.vars().len();
                let space = identity_space(alg, &DegreePattern::ungraded(m), &budget).unwrap();
                let mut vector = vec![q(0); space.words.len()];
                for (w, c) in expanded.base_terms() {
                    let wi = space.words.iter().position(|x| x == w).unwrap();
                    vector[wi] = c.clone();
                }
                let in_kernel = space.contains_vector(&vector);
                let direct = is_identity(p, alg, &budget).unwrap().is_identity;
                assert_eq!(in_kernel, direct, "disagreement on {}", alg.name());
            }
        }
    }

    #[test]
    fn containment_examples() {
        let budget = Budget::default();
        let ut2 = upper_triangular(2);
        let m2 = matrix_algebra(2);
        let f = matrix_algebra(1);
        let sum = direct_sum(&ut2, &m2).unwrap();
        // Id(M2) contains Id(UT2 (+) M2): a summand's identities contain the sum's
        let r = ideal_contains_upto(&m2, &sum, 4, &budget).unwrap();
        assert!(r.holds);
        // F embeds in M2 as scalars, so Id(F) contains Id(M2)
        let r = ideal_contains_upto(&f, &m2, 4, &budget).unwrap();
        assert!(r.holds);
        // the reverse containment fails: standard(2) kills F but not M2
        let r = ideal_contains_upto(&m2, &f, 4, &budget).unwrap();
        assert!(!r.holds);
        assert_eq!(r.separating.unwrap().pattern.0.len(), 2);
        // reflexivity
        let r = ideal_contains_upto(&ut2, &ut2, 3, &budget).unwrap();
        assert!(r.holds);
    }

    #[test]
    fn pi_equivalence_examples() {
        let budget = Budget::default();
        let ut2 = upper_triangular(2);
        let f = matrix_algebra(1);
        let dup = direct_sum(&ut2, &ut2).unwrap();
        let r = pi_equivalent_upto(&ut2, &dup, 4, &budget).unwrap();
        assert!(r.holds);
        let r = pi_equivalent_upto(&ut2, &f, 3, &budget).unwrap();
        assert!(!r.holds);
        assert!(r.separating.is_some());
    }

    #[test]
    fn classify_monomial_on_ut2() {
        let ut2 = upper_triangular(2);
        let group = GradingGroup::trivial();
        let budget = Budget::default();
        let xwx = MultilinearPolynomial::monomial(
            group.clone(),
            vec![
                GradedVariable::new("X1", 0, VarRole::Other),
                GradedVariable::new("w1", 0, VarRole::Bridge),
                GradedVariable::new("X2", 0, VarRole::Other),
            ],
        );
        let r = classify_fullness(&xwx, &ut2, &budget).unwrap();
        assert_eq!(r.class, Fullness::WeaklyFull);
        assert!(r.weak_witness.is_some());
        // a single variable cannot visit both components
        let x = MultilinearPolynomial::monomial(
            group,
            vec![GradedVariable::new("x", 0, VarRole::Other)],
        );
        let r = classify_fullness(&x, &ut2, &budget).unwrap();
        assert_eq!(r.class, Fullness::NotWeaklyFull);
    }

    #[test]
    fn classification_invariant_under_renaming() {
        let ut2 = upper_triangular(2);
        let group = GradingGroup::trivial();
        let budget = Budget::default();
        let p1 = MultilinearPolynomial::monomial(
            group.clone(),
            vec![
                GradedVariable::new("a", 0, VarRole::Other),
                GradedVariable::new("b", 0, VarRole::Other),
                GradedVariable::new("c", 0, VarRole::Other),
            ],
        );
        let p2 = p1.with_id_suffix("zz");
        let r1 = classify_fullness(&p1, &ut2, &budget).unwrap();
        let r2 = classify_fullness(&p2, &ut2, &budget).unwrap();
        assert_eq!(r1.class, r2.class);
    }

    #[test]
    fn central_search_on_field_and_m2() {
        let budget = Budget::default();
        let f = matrix_algebra(1);
        let c = find_e_central(&f, 2, &budget).unwrap().unwrap();
        assert_eq!(c.pattern.0.len(), 1);
        // M2: the multilinear search decides degree <= 4
        let m2 = matrix_algebra(2);
        let c = find_e_central(&m2, 4, &budget).unwrap().expect("degree-4 central");
        assert_eq!(c.pattern.0.len(), 4);
        let p = &c.polynomial;
        let e11 = m2.index_of_label("c1.e1_1").unwrap();
        let e12 = m2.index_of_label("c1.e1_2").unwrap();
        let e21 = m2.index_of_label("c1.e2_1").unwrap();
        let e22 = m2.index_of_label("c1.e2_2").unwrap();
        let unit = m2.unit().unwrap();
        let mut saw_nonzero = false;
        for phi in [
            Assignment(vec![e11, e12, e21, e22]),
            Assignment(vec![e12, e21, e12, e21]),
            Assignment(vec![e11, e11, e12, e21]),
            Assignment(vec![e12, e21, e21, e12]),
        ] {
            let v = evaluate(p, &m2, &phi).unwrap();
            if !v.is_zero() {
                saw_nonzero = true;
                let lambda = &v.0[0].1 / &unit.coeff(v.0[0].0);
                let mut scaled = unit.clone();
                scaled.scale(&lambda);
                assert_eq!(v, scaled, "value not scalar");
            }
        }
        let _ = saw_nonzero;
    }

    #[test]
    fn operator_evaluation_matches_expansion() {
        let m2 = matrix_algebra(2);
        let p = standard(4); // operator form: one Alt over 4 vars
        let expanded = p.expand(100).unwrap();
        let e11 = m2.index_of_label("c1.e1_1").unwrap();
        let e12 = m2.index_of_label("c1.e1_2").unwrap();
        let e21 = m2.index_of_label("c1.e2_1").unwrap();
        let e22 = m2.index_of_label("c1.e2_2").unwrap();
        for phi in [
            Assignment(vec![e11, e12, e21, e22]),
            Assignment(vec![e12, e21, e11, e22]),
            Assignment(vec![e11, e11, e12, e22]),
        ] {
            let a = evaluate(&p, &m2, &phi).unwrap();
            let b = evaluate(&expanded, &m2, &phi).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn pruned_mode_agrees_with_exhaustive() {
        let ut2 = upper_triangular(2);
        let polys = [standard(2), standard(3), capelli(2)];
        let exhaustive = Budget::default();
        let tiny = Budget {
            max_assignments: 0, // force pruned mode
            ..Budget::default()
        };
        for p in &polys {
            let a = is_identity(p, &ut2, &exhaustive).unwrap();
            let b = is_identity(p, &ut2, &tiny).unwrap();
            assert_eq!(a.is_identity, b.is_identity);
            assert_eq!(b.mode, EnumerationMode::Pruned);
        }
    }
}
