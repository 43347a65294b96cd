//! Finite-dimensional graded algebras over exact rationals, presented by
//! structure constants with explicit semisimple components and radical basis.

use crate::error::AlgebraError;
use crate::group::{GradingGroup, GroupElt};
use crate::scalar::{format_scalar, q, Scalar};
use num_traits::Zero;
use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

/// Sparse element: sorted `(basis index, coefficient)` pairs, no zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Elem(pub Vec<(usize, Scalar)>);

impl Elem {
    pub fn zero() -> Self {
        Elem(Vec::new())
    }

    pub fn basis(i: usize) -> Self {
        Elem(vec![(i, q(1))])
    }

    pub fn scaled_basis(i: usize, c: Scalar) -> Self {
        if c.is_zero() {
            Elem::zero()
        } else {
            Elem(vec![(i, c)])
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scale(&mut self, c: &Scalar) {
        if c.is_zero() {
            self.0.clear();
        } else {
            for (_, v) in &mut self.0 {
                *v *= c;
            }
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &Elem, c: &Scalar) {
        if c.is_zero() || other.is_zero() {
            return;
        }
        let mut merged = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some((bi, vi)), Some((bj, vj))) if bi == bj => {
                    let v = vi + vj * c;
                    if !v.is_zero() {
                        merged.push((*bi, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some((bi, vi)), Some((bj, _))) if bi < bj => {
                    merged.push((*bi, vi.clone()));
                    i += 1;
                }
                (Some(_), Some((bj, vj))) => {
                    merged.push((*bj, vj * c));
                    j += 1;
                }
                (Some((bi, vi)), None) => {
                    merged.push((*bi, vi.clone()));
                    i += 1;
                }
                (None, Some((bj, vj))) => {
                    merged.push((*bj, vj * c));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        self.0 = merged;
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.0
            .binary_search_by_key(&i, |(b, _)| *b)
            .map(|p| self.0[p].1.clone())
            .unwrap_or_else(|_| q(0))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().map(|(b, _)| *b)
    }
}

/// What a basis element is: part of a semisimple component or of the radical.
///
/// `class` identifies the semisimple basis vector the element represents,
/// as a position inside its component's canonical basis. Grassmann-envelope
/// tensors `w (x) z` share the class of `z`, which is what strong-fullness
/// bookkeeping needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    Semisimple { component: usize, class: usize },
    Radical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisElement {
    pub label: String,
    pub degree: GroupElt,
    pub tag: BasisTag,
}

/// The built-in graded-simple component templates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComponentKind {
    /// Full matrix algebra `M_n` in the trivial degree.
    Matrix { n: usize },
    /// Matrix algebra with elementary grading: `deg e_{r,s} = g_r^{-1} g_s`.
    Elementary { signature: Vec<GroupElt> },
    /// Super-simple `M_{l,f}`: elementary Z2-grading split after `l` rows.
    SuperElementary { l: usize, f: usize },
    /// `F^alpha G (x) M_n` with a {+1,-1}-valued 2-cocycle; `u_h (x) e_{r,s}`
    /// has degree `h`.
    SignTwisted { n: usize, signs: Vec<Vec<i8>> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleComponentDescriptor {
    pub kind: ComponentKind,
    /// Dimension of each homogeneous component, indexed by group element.
    pub dims: Vec<u64>,
}

/// Metadata attached to Grassmann-envelope algebras: for each basis element,
/// the Grassmann word (ascending generator indices) and the index of the
/// underlying basis element of the enveloped algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnvelopeMeta {
    pub words: Vec<Vec<u16>>,
    pub underlying: Vec<usize>,
    pub truncation: usize,
}

#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    name: String,
    group: Arc<GradingGroup>,
    basis: Vec<BasisElement>,
    /// products[i][j] = basis_i * basis_j as a sparse element
    products: Vec<Vec<Elem>>,
    components: Vec<SimpleComponentDescriptor>,
    component_basis: Vec<Vec<usize>>,
    radical: Vec<usize>,
    /// Partition of basis indices into mutually annihilating groups.
    blocks: Vec<Vec<usize>>,
    envelope: Option<EnvelopeMeta>,
}

/// Result of the fullness search: a permutation of the components and a
/// concrete nonzero basis chain `b_1 r_1 b_2 r_2 ... b_q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullWitness {
    pub permutation: Vec<usize>,
    pub chain: Vec<usize>,
    pub value: Elem,
}

/// Per-component vectors of homogeneous dimensions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionProfile {
    pub group: Arc<GradingGroup>,
    pub components: Vec<Vec<u64>>,
}

impl DimensionProfile {
    /// Drops all-zero component vectors; tuples differing by zeros are equal.
    pub fn normalized(&self) -> Vec<Vec<u64>> {
        let mut v: Vec<Vec<u64>> = self
            .components
            .iter()
            .filter(|c| c.iter().any(|&d| d > 0))
            .cloned()
            .collect();
        v.sort();
        v
    }

    pub fn ungraded(entries: &[u64]) -> Self {
        DimensionProfile {
            group: GradingGroup::trivial(),
            components: entries.iter().map(|&d| vec![d]).collect(),
        }
    }
}

impl ComponentKind {
    /// Canonical basis for this kind over `group`: labels, degrees and the
    /// component-local structure constants.
    fn canonical_basis(
        &self,
        group: &GradingGroup,
    ) -> Result<(Vec<String>, Vec<GroupElt>, Vec<Vec<Elem>>), AlgebraError> {
        match self {
            ComponentKind::Matrix { n } => {
                let sig = vec![group.identity(); *n];
                ComponentKind::Elementary { signature: sig }.canonical_basis(group)
            }
            ComponentKind::SuperElementary { l, f } => {
                let even = group
                    .compose_split(0, base_identity(group)?)
                    .ok_or(AlgebraError::Invalid("group has no Z2 factor".into()))?;
                let odd = group
                    .compose_split(1, base_identity(group)?)
                    .ok_or(AlgebraError::Invalid("group has no Z2 factor".into()))?;
                let mut sig = vec![even; *l];
                sig.extend(std::iter::repeat(odd).take(*f));
                if sig.is_empty() {
                    return Err(AlgebraError::EmptySignature);
                }
                ComponentKind::Elementary { signature: sig }.canonical_basis(group)
            }
            ComponentKind::Elementary { signature } => {
                let n = signature.len();
                if n == 0 {
                    return Err(AlgebraError::EmptySignature);
                }
                for &g in signature {
                    if g >= group.order() {
                        return Err(AlgebraError::UnknownDegree(format!("signature entry {g}")));
                    }
                }
                let idx = |r: usize, s: usize| r * n + s;
                let mut labels = Vec::with_capacity(n * n);
                let mut degrees = Vec::with_capacity(n * n);
                for r in 0..n {
                    for s in 0..n {
                        labels.push(format!("e{}_{}", r + 1, s + 1));
                        degrees.push(group.mul(group.inv(signature[r]), signature[s]));
                    }
                }
                let mut prods = vec![vec![Elem::zero(); n * n]; n * n];
                for r in 0..n {
                    for s in 0..n {
                        for t in 0..n {
                            for v in 0..n {
                                if s == t {
                                    prods[idx(r, s)][idx(t, v)] = Elem::basis(idx(r, v));
                                }
                            }
                        }
                    }
                }
                Ok((labels, degrees, prods))
            }
            ComponentKind::SignTwisted { n, signs } => {
                let go = group.order();
                if *n == 0 {
                    return Err(AlgebraError::EmptySignature);
                }
                if signs.len() != go || signs.iter().any(|r| r.len() != go) {
                    return Err(AlgebraError::InvalidCocycle("sign table has wrong shape".into()));
                }
                for row in signs {
                    for &v in row {
                        if v != 1 && v != -1 {
                            return Err(AlgebraError::InvalidCocycle(
                                "values must be +1 or -1".into(),
                            ));
                        }
                    }
                }
                let e = group.identity();
                for g in 0..go {
                    if signs[e][g] != 1 || signs[g][e] != 1 {
                        return Err(AlgebraError::InvalidCocycle(
                            "cocycle is not normalized at the identity".into(),
                        ));
                    }
                }
                for g in 0..go {
                    for h in 0..go {
                        for k in 0..go {
                            let lhs = signs[g][h] * signs[group.mul(g, h)][k];
                            let rhs = signs[h][k] * signs[g][group.mul(h, k)];
                            if lhs != rhs {
                                return Err(AlgebraError::InvalidCocycle(format!(
                                    "cocycle identity fails at ({}, {}, {})",
                                    group.label(g),
                                    group.label(h),
                                    group.label(k)
                                )));
                            }
                        }
                    }
                }
                let idx = |h: usize, r: usize, s: usize| h * n * n + r * n + s;
                let mut labels = Vec::new();
                let mut degrees = Vec::new();
                for h in 0..go {
                    for r in 0..*n {
                        for s in 0..*n {
                            labels.push(format!("u{}.e{}_{}", group.label(h), r + 1, s + 1));
                            degrees.push(h);
                        }
                    }
                }
                let dim = go * n * n;
                let mut prods = vec![vec![Elem::zero(); dim]; dim];
                for g in 0..go {
                    for h in 0..go {
                        for r in 0..*n {
                            for s in 0..*n {
                                for t in 0..*n {
                                    for v in 0..*n {
                                        if s == t {
                                            prods[idx(g, r, s)][idx(h, t, v)] = Elem::scaled_basis(
                                                idx(group.mul(g, h), r, v),
                                                q(signs[g][h] as i64),
                                            );
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                Ok((labels, degrees, prods))
            }
        }
    }

    pub fn dims(&self, group: &GradingGroup) -> Result<Vec<u64>, AlgebraError> {
        let (_, degrees, _) = self.canonical_basis(group)?;
        let mut dims = vec![0u64; group.order()];
        for d in degrees {
            dims[d] += 1;
        }
        Ok(dims)
    }

    /// A short stable name for reports.
    pub fn display(&self, group: &GradingGroup) -> String {
        match self {
            ComponentKind::Matrix { n } => format!("M{n}"),
            ComponentKind::Elementary { signature } => format!(
                "M{}[{}]",
                signature.len(),
                signature
                    .iter()
                    .map(|&g| group.label(g))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            ComponentKind::SuperElementary { l, f } => format!("M{l},{f}"),
            ComponentKind::SignTwisted { n, signs } => {
                let twisted = signs.iter().flatten().any(|&s| s == -1);
                if twisted {
                    format!("F^aG(x)M{n}")
                } else {
                    format!("FG(x)M{n}")
                }
            }
        }
    }
}

fn base_identity(group: &GradingGroup) -> Result<GroupElt, AlgebraError> {
    group
        .super_split()
        .map(|s| s.base.identity())
        .ok_or(AlgebraError::Invalid("group has no Z2 factor".into()))
}

/// Incremental builder for a [`GradedAlgebra`]: components + radical basis +
/// sparse extra structure constants.
pub struct AlgebraBuilder {
    name: String,
    group: Arc<GradingGroup>,
    components: Vec<(String, ComponentKind, Option<Vec<String>>)>,
    radical: Vec<(String, GroupElt)>,
    products: Vec<(String, String, Vec<(Scalar, String)>)>,
}

impl AlgebraBuilder {
    pub fn new(name: impl Into<String>, group: Arc<GradingGroup>) -> Self {
        AlgebraBuilder {
            name: name.into(),
            group,
            components: Vec::new(),
            radical: Vec::new(),
            products: Vec::new(),
        }
    }

    pub fn component(mut self, name: impl Into<String>, kind: ComponentKind) -> Self {
        self.components.push((name.into(), kind, None));
        self
    }

    /// Component with caller-chosen basis labels (positionally matching the
    /// canonical basis of the kind).
    pub fn raw_component(
        mut self,
        name: impl Into<String>,
        kind: ComponentKind,
        labels: Vec<String>,
    ) -> Self {
        self.components.push((name.into(), kind, Some(labels)));
        self
    }

    pub fn radical_element(mut self, label: impl Into<String>, degree: GroupElt) -> Self {
        self.radical.push((label.into(), degree));
        self
    }

    /// Declares `left * right = sum of (coeff, label)`. Unlisted products
    /// involving radical elements default to zero; products inside a
    /// component come from its descriptor and are checked if listed.
    pub fn product(
        mut self,
        left: impl Into<String>,
        right: impl Into<String>,
        value: Vec<(Scalar, String)>,
    ) -> Self {
        self.products.push((left.into(), right.into(), value));
        self
    }

    pub fn build(self) -> Result<GradedAlgebra, AlgebraError> {
        let group = self.group.clone();
        let mut basis: Vec<BasisElement> = Vec::new();
        let mut components = Vec::new();
        let mut component_basis: Vec<Vec<usize>> = Vec::new();
        let mut local_products: Vec<Vec<Vec<Elem>>> = Vec::new();

        for (cname, kind, custom) in &self.components {
            let (labels, degrees, prods) = kind.canonical_basis(&group)?;
            let labels: Vec<String> = match custom {
                None => labels.iter().map(|l| format!("{cname}.{l}")).collect(),
                Some(ls) => {
                    if ls.len() != labels.len() {
                        return Err(AlgebraError::ComponentMismatch {
                            component: cname.clone(),
                            detail: format!(
                                "raw basis has {} labels, canonical basis has {}",
                                ls.len(),
                                labels.len()
                            ),
                        });
                    }
                    ls.clone()
                }
            };
            let comp_index = components.len();
            let start = basis.len();
            for (pos, (label, degree)) in labels.iter().zip(degrees.iter()).enumerate() {
                basis.push(BasisElement {
                    label: label.clone(),
                    degree: *degree,
                    tag: BasisTag::Semisimple {
                        component: comp_index,
                        class: pos,
                    },
                });
            }
            let dims = kind.dims(&group)?;
            components.push(SimpleComponentDescriptor {
                kind: kind.clone(),
                dims,
            });
            component_basis.push((start..basis.len()).collect());
            local_products.push(prods);
        }

        let mut radical = Vec::new();
        for (label, degree) in &self.radical {
            if *degree >= group.order() {
                return Err(AlgebraError::UnknownDegree(label.clone()));
            }
            radical.push(basis.len());
            basis.push(BasisElement {
                label: label.clone(),
                degree: *degree,
                tag: BasisTag::Radical,
            });
        }

        let dim = basis.len();
        let mut label_index: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            if label_index.insert(b.label.as_str(), i).is_some() {
                return Err(AlgebraError::Invalid(format!(
                    "duplicate basis label {}",
                    b.label
                )));
            }
        }

        // default products
        let mut products = vec![vec![Elem::zero(); dim]; dim];
        for (c, indices) in component_basis.iter().enumerate() {
            for (li, &i) in indices.iter().enumerate() {
                for (lj, &j) in indices.iter().enumerate() {
                    let mut p = local_products[c][li][lj].clone();
                    for (b, _) in &mut p.0 {
                        *b = indices[*b];
                    }
                    p.0.sort_by_key(|(b, _)| *b);
                    products[i][j] = p;
                }
            }
        }

        // explicit products
        for (left, right, value) in &self.products {
            let &i = label_index
                .get(left.as_str())
                .ok_or_else(|| AlgebraError::Invalid(format!("unknown basis label {left}")))?;
            let &j = label_index
                .get(right.as_str())
                .ok_or_else(|| AlgebraError::Invalid(format!("unknown basis label {right}")))?;
            let mut elem = Elem::zero();
            for (c, label) in value {
                let &b = label_index
                    .get(label.as_str())
                    .ok_or_else(|| AlgebraError::Invalid(format!("unknown basis label {label}")))?;
                elem.add_scaled(&Elem::basis(b), c);
            }
            let (ci, cj) = (basis[i].tag, basis[j].tag);
            match (ci, cj) {
                (
                    BasisTag::Semisimple { component: a, .. },
                    BasisTag::Semisimple { component: b, .. },
                ) if a == b => {
                    if products[i][j] != elem {
                        return Err(AlgebraError::ComponentMismatch {
                            component: self.components[a].0.clone(),
                            detail: format!(
                                "declared {left}*{right} disagrees with the descriptor"
                            ),
                        });
                    }
                }
                (BasisTag::Semisimple { .. }, BasisTag::Semisimple { .. }) => {
                    if !elem.is_zero() {
                        return Err(AlgebraError::ComponentsNotOrthogonal {
                            left: left.clone(),
                            right: right.clone(),
                        });
                    }
                }
                _ => {
                    products[i][j] = elem;
                }
            }
        }

        let alg = GradedAlgebra {
            name: self.name,
            group,
            basis,
            products,
            components,
            component_basis,
            radical,
            blocks: Vec::new(),
            envelope: None,
        };
        let mut alg = alg;
        alg.blocks = alg.compute_blocks();
        alg.validate()?;
        Ok(alg)
    }
}

impl GradedAlgebra {
    /// Internal constructor for algebras assembled by trusted code paths
    /// (direct sums, fusion, envelopes, merges). Invariant checks still run.
    pub(crate) fn from_parts(
        name: String,
        group: Arc<GradingGroup>,
        basis: Vec<BasisElement>,
        products: Vec<Vec<Elem>>,
        components: Vec<SimpleComponentDescriptor>,
        component_basis: Vec<Vec<usize>>,
        radical: Vec<usize>,
        envelope: Option<EnvelopeMeta>,
    ) -> Result<Self, AlgebraError> {
        let mut alg = GradedAlgebra {
            name,
            group,
            basis,
            products,
            components,
            component_basis,
            radical,
            blocks: Vec::new(),
            envelope,
        };
        alg.blocks = alg.compute_blocks();
        alg.validate()?;
        Ok(alg)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn group(&self) -> &Arc<GradingGroup> {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> GroupElt {
        self.basis[i].degree
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn tag(&self, i: usize) -> BasisTag {
        self.basis[i].tag
    }

    pub fn product(&self, i: usize, j: usize) -> &Elem {
        &self.products[i][j]
    }

    pub fn components(&self) -> &[SimpleComponentDescriptor] {
        &self.components
    }

    pub fn component_basis(&self, c: usize) -> &[usize] {
        &self.component_basis[c]
    }

    pub fn radical_indices(&self) -> &[usize] {
        &self.radical
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn envelope_meta(&self) -> Option<&EnvelopeMeta> {
        self.envelope.as_ref()
    }

    pub fn index_of_label(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical.len()
    }

    /// a * b by bilinear extension of the structure constants.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let mut out = Elem::zero();
        for (i, ci) in &a.0 {
            for (j, cj) in &b.0 {
                let c = ci * cj;
                out.add_scaled(&self.products[*i][*j], &c);
            }
        }
        out
    }

    /// a * basis_j (hot path of every evaluator loop).
    pub fn mul_basis(&self, a: &Elem, j: usize) -> Elem {
        let mut out = Elem::zero();
        for (i, ci) in &a.0 {
            out.add_scaled(&self.products[*i][j], ci);
        }
        out
    }

    /// Exhaustive invariant checks: degree additivity, associativity on all
    /// basis triples, radical ideal + nilpotency, component orthogonality.
    pub fn validate(&self) -> Result<(), AlgebraError> {
        let dim = self.dim();
        for i in 0..dim {
            for j in 0..dim {
                let expected = self.group.mul(self.degree(i), self.degree(j));
                for (b, _) in &self.products[i][j].0 {
                    if self.degree(*b) != expected {
                        return Err(AlgebraError::DegreeViolation {
                            left: self.label(i).into(),
                            right: self.label(j).into(),
                        });
                    }
                }
            }
        }
        let radical_set: HashSet<usize> = self.radical.iter().copied().collect();
        for &r in &self.radical {
            for i in 0..dim {
                for (prod, pair) in [
                    (&self.products[i][r], (i, r)),
                    (&self.products[r][i], (r, i)),
                ] {
                    for (b, _) in &prod.0 {
                        if !radical_set.contains(b) {
                            return Err(AlgebraError::RadicalNotIdeal {
                                witness: format!(
                                    "{}*{} has a semisimple term",
                                    self.label(pair.0),
                                    self.label(pair.1)
                                ),
                            });
                        }
                    }
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = &self.products[i][j];
                for k in 0..dim {
                    let left = self.mul_basis(ij, k);
                    let right = self.mul(&Elem::basis(i), &self.products[j][k]);
                    if left != right {
                        return Err(AlgebraError::NonAssociative {
                            a: self.label(i).into(),
                            b: self.label(j).into(),
                            c: self.label(k).into(),
                        });
                    }
                }
            }
        }
        if self.nilpotency_index_checked().is_none() {
            return Err(AlgebraError::RadicalNotNilpotent);
        }
        for (a, ia) in self.component_basis.iter().enumerate() {
            for (b, ib) in self.component_basis.iter().enumerate() {
                if a == b {
                    continue;
                }
                for &i in ia {
                    for &j in ib {
                        if !self.products[i][j].is_zero() {
                            return Err(AlgebraError::ComponentsNotOrthogonal {
                                left: self.label(i).into(),
                                right: self.label(j).into(),
                            });
                        }
                    }
                }
            }
        }
        // components carry the canonical structure constants of their kind
        for (c, indices) in self.component_basis.iter().enumerate() {
            let (_, degrees, prods) = self.components[c].kind.canonical_basis(&self.group)?;
            if degrees.len() != indices.len() {
                return Err(AlgebraError::ComponentMismatch {
                    component: format!("#{c}"),
                    detail: "basis size differs from the descriptor".into(),
                });
            }
            for (li, &i) in indices.iter().enumerate() {
                if self.degree(i) != degrees[li] {
                    return Err(AlgebraError::ComponentMismatch {
                        component: format!("#{c}"),
                        detail: format!("degree of {} differs from canonical", self.label(i)),
                    });
                }
                for (lj, &j) in indices.iter().enumerate() {
                    let mut expected = prods[li][lj].clone();
                    for (b, _) in &mut expected.0 {
                        *b = indices[*b];
                    }
                    expected.0.sort_by_key(|(b, _)| *b);
                    if self.products[i][j] != expected {
                        return Err(AlgebraError::ComponentMismatch {
                            component: format!("#{c}"),
                            detail: format!(
                                "{}*{} differs from canonical",
                                self.label(i),
                                self.label(j)
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    fn compute_blocks(&self) -> Vec<Vec<usize>> {
        // union-find over "units": one node per component, one per radical element
        let n_units = self.components.len() + self.radical.len();
        let mut parent: Vec<usize> = (0..n_units).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let unit_of = |tag: BasisTag, radical_pos: &BTreeMap<usize, usize>, idx: usize| match tag {
            BasisTag::Semisimple { component, .. } => component,
            BasisTag::Radical => self.components.len() + radical_pos[&idx],
        };
        let radical_pos: BTreeMap<usize, usize> = self
            .radical
            .iter()
            .enumerate()
            .map(|(p, &i)| (i, p))
            .collect();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if self.products[i][j].is_zero() {
                    continue;
                }
                let ui = unit_of(self.tag(i), &radical_pos, i);
                let uj = unit_of(self.tag(j), &radical_pos, j);
                let (ri, rj) = (find(&mut parent, ui), find(&mut parent, uj));
                if ri != rj {
                    parent[ri] = rj;
                }
                for (b, _) in &self.products[i][j].0 {
                    let ub = unit_of(self.tag(*b), &radical_pos, *b);
                    let (ri, rb) = (find(&mut parent, ui), find(&mut parent, ub));
                    if ri != rb {
                        parent[ri] = rb;
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            let u = unit_of(self.tag(i), &radical_pos, i);
            let root = find(&mut parent, u);
            groups.entry(root).or_default().push(i);
        }
        groups.into_values().collect()
    }

    /// Least `m >= 1` with `J^m = 0`, or None if the radical span fails to be
    /// nilpotent within `dim + 1` steps.
    fn nilpotency_index_checked(&self) -> Option<usize> {
        if self.radical.is_empty() {
            return Some(1);
        }
        let j_span: Vec<Elem> = self.radical.iter().map(|&i| Elem::basis(i)).collect();
        let mut power = j_span.clone();
        let mut m = 1;
        while !power.is_empty() {
            if m > self.dim() + 1 {
                return None;
            }
            power = span_product(self, &power, &j_span);
            m += 1;
        }
        Some(m)
    }

    /// Least `m` with `J^m = 0` (`1` when the radical is zero).
    pub fn nilpotency_index(&self) -> usize {
        self.nilpotency_index_checked()
            .expect("validated algebras have nilpotent radicals")
    }

    pub fn dimension_profile(&self) -> DimensionProfile {
        let mut components = Vec::new();
        for indices in &self.component_basis {
            let mut v = vec![0u64; self.group.order()];
            for &i in indices {
                v[self.degree(i)] += 1;
            }
            components.push(v);
        }
        DimensionProfile {
            group: self.group.clone(),
            components,
        }
    }

    /// Fullness search: a permutation pi with
    /// `A_pi(1) . J . A_pi(2) ... J . A_pi(q) != 0`, found by depth-first
    /// search over component orders and basis chains with prefix pruning.
    /// Single-component and purely radical algebras are vacuously full.
    pub fn is_full(&self) -> Option<FullWitness> {
        let nc = self.components.len();
        if nc == 0 {
            return Some(FullWitness {
                permutation: vec![],
                chain: vec![],
                value: Elem::zero(),
            });
        }
        if nc == 1 {
            let b = self.component_basis[0][0];
            return Some(FullWitness {
                permutation: vec![0],
                chain: vec![b],
                value: Elem::basis(b),
            });
        }
        let mut used = vec![false; nc];
        let mut perm = Vec::new();
        let mut chain = Vec::new();
        self.full_search(&mut used, &mut perm, &mut chain, &Elem::zero())
    }

    fn full_search(
        &self,
        used: &mut Vec<bool>,
        perm: &mut Vec<usize>,
        chain: &mut Vec<usize>,
        prefix: &Elem,
    ) -> Option<FullWitness> {
        let nc = self.components.len();
        if perm.len() == nc {
            return Some(FullWitness {
                permutation: perm.clone(),
                chain: chain.clone(),
                value: prefix.clone(),
            });
        }
        for c in 0..nc {
            if used[c] {
                continue;
            }
            used[c] = true;
            perm.push(c);
            for &b in &self.component_basis[c] {
                let after_b = if perm.len() == 1 {
                    Elem::basis(b)
                } else {
                    self.mul_basis(prefix, b)
                };
                if after_b.is_zero() {
                    continue;
                }
                chain.push(b);
                if perm.len() == nc {
                    if let Some(w) = self.full_search(used, perm, chain, &after_b) {
                        return Some(w);
                    }
                } else {
                    for &r in &self.radical {
                        let after_r = self.mul_basis(&after_b, r);
                        if after_r.is_zero() {
                            continue;
                        }
                        chain.push(r);
                        if let Some(w) = self.full_search(used, perm, chain, &after_r) {
                            return Some(w);
                        }
                        chain.pop();
                    }
                }
                chain.pop();
            }
            perm.pop();
            used[c] = false;
        }
        None
    }

    /// Two-sided unit, when one exists.
    pub fn unit(&self) -> Option<Elem> {
        // Solve sum_i x_i (b_i b_j) = b_j and sum_i x_i (b_j b_i) = b_j for all j.
        let dim = self.dim();
        let mut rows: Vec<Vec<Scalar>> = Vec::new(); // columns: dim unknowns + 1 rhs
        for j in 0..dim {
            for coord in 0..dim {
                let mut left = vec![q(0); dim + 1];
                let mut right = vec![q(0); dim + 1];
                for i in 0..dim {
                    left[i] = self.products[i][j].coeff(coord);
                    right[i] = self.products[j][i].coeff(coord);
                }
                left[dim] = if coord == j { q(1) } else { q(0) };
                right[dim] = left[dim].clone();
                rows.push(left);
                rows.push(right);
            }
        }
        solve_linear(rows, dim).map(|sol| {
            let mut e = Elem::zero();
            for (i, c) in sol.into_iter().enumerate() {
                e.add_scaled(&Elem::basis(i), &c);
            }
            e
        })
    }

    /// Same structure constants over the trivial group; keeps components,
    /// radical tags, blocks and envelope metadata.
    pub fn forget_grading(&self) -> GradedAlgebra {
        let trivial = GradingGroup::trivial();
        let mut basis = self.basis.clone();
        for b in &mut basis {
            b.degree = 0;
        }
        GradedAlgebra {
            name: format!("{}(ungraded)", self.name),
            group: trivial,
            basis,
            products: self.products.clone(),
            components: self
                .components
                .iter()
                .map(|c| SimpleComponentDescriptor {
                    kind: c.kind.clone(),
                    dims: vec![c.dims.iter().sum()],
                })
                .collect(),
            component_basis: self.component_basis.clone(),
            radical: self.radical.clone(),
            blocks: self.blocks.clone(),
            envelope: self.envelope.clone(),
        }
    }

    pub fn format_elem(&self, e: &Elem) -> String {
        if e.is_zero() {
            return "0".into();
        }
        e.0.iter()
            .map(|(b, c)| format!("{} {}", format_scalar(c), self.label(*b)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Span of pairwise products of two spanning sets, as a reduced row basis.
pub fn span_product(alg: &GradedAlgebra, xs: &[Elem], ys: &[Elem]) -> Vec<Elem> {
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for x in xs {
        for y in ys {
            let p = alg.mul(x, y);
            if !p.is_zero() {
                let mut row = vec![q(0); alg.dim()];
                for (b, c) in &p.0 {
                    row[*b] = c.clone();
                }
                rows.push(row);
            }
        }
    }
    let reduced = row_reduce(rows);
    reduced
        .into_iter()
        .map(|row| {
            let mut e = Elem::zero();
            for (i, c) in row.into_iter().enumerate() {
                if !c.is_zero() {
                    e.add_scaled(&Elem::basis(i), &c);
                }
            }
            e
        })
        .collect()
}

/// Gaussian elimination to row echelon form, dropping zero rows.
pub fn row_reduce(mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for c in col..cols {
            let v = &rows[rank][c] * &inv;
            rows[rank][c] = v;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..cols {
                    let v = &rows[r][c] - &f * &rows[rank][c];
                    rows[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.truncate(rank);
    rows
}

/// Solves an inhomogeneous system given as rows `(a_1..a_n | b)`; returns one
/// solution if consistent.
fn solve_linear(rows: Vec<Vec<Scalar>>, unknowns: usize) -> Option<Vec<Scalar>> {
    let reduced = row_reduce(rows);
    let mut solution = vec![q(0); unknowns];
    for row in reduced.iter().rev() {
        let lead = row[..unknowns].iter().position(|c| !c.is_zero());
        match lead {
            None => {
                if !row[unknowns].is_zero() {
                    return None;
                }
            }
            Some(l) => {
                let mut v = row[unknowns].clone();
                for c in l + 1..unknowns {
                    v -= &row[c] * &solution[c];
                }
                solution[l] = v / row[l].clone();
            }
        }
    }
    // verify (free variables default to zero, so check all equations)
    for row in &reduced {
        let mut acc = q(0);
        for c in 0..unknowns {
            acc += &row[c] * &solution[c];
        }
        if acc != row[unknowns] {
            return None;
        }
    }
    Some(solution)
}

/// Direct sum: disjoint bases, zero cross products. Basis labels are
/// prefixed `s{i}.` per summand.
pub fn direct_sum(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra, AlgebraError> {
    if a.group != b.group {
        return Err(AlgebraError::GradingGroupMismatch);
    }
    direct_sum_many(&format!("{}(+){}", a.name, b.name), &[a, b])
}

/// n-ary direct sum with the same conventions as [`direct_sum`].
pub fn direct_sum_many(
    name: &str,
    parts: &[&GradedAlgebra],
) -> Result<GradedAlgebra, AlgebraError> {
    let Some(first) = parts.first() else {
        return Err(AlgebraError::Invalid("empty direct sum".into()));
    };
    for p in parts {
        if p.group != first.group {
            return Err(AlgebraError::GradingGroupMismatch);
        }
    }
    let mut basis = Vec::new();
    let mut components = Vec::new();
    let mut component_basis = Vec::new();
    let mut radical = Vec::new();
    let mut offsets = Vec::new();
    let mut envelope: Option<EnvelopeMeta> = if parts.iter().all(|p| p.envelope.is_some()) {
        Some(EnvelopeMeta {
            words: Vec::new(),
            underlying: Vec::new(),
            truncation: parts
                .iter()
                .map(|p| p.envelope.as_ref().unwrap().truncation)
                .min()
                .unwrap(),
        })
    } else {
        None
    };
    let mut underlying_offset = 0usize;
    for (s, part) in parts.iter().enumerate() {
        let offset = basis.len();
        offsets.push(offset);
        let comp_offset = components.len();
        for be in &part.basis {
            let tag = match be.tag {
                BasisTag::Semisimple { component, class } => BasisTag::Semisimple {
                    component: component + comp_offset,
                    class,
                },
                BasisTag::Radical => BasisTag::Radical,
            };
            basis.push(BasisElement {
                label: format!("s{}.{}", s + 1, be.label),
                degree: be.degree,
                tag,
            });
        }
        components.extend(part.components.iter().cloned());
        component_basis.extend(
            part.component_basis
                .iter()
                .map(|ix| ix.iter().map(|&i| i + offset).collect::<Vec<_>>()),
        );
        radical.extend(part.radical.iter().map(|&i| i + offset));
        if let Some(env) = &mut envelope {
            let pm = part.envelope.as_ref().unwrap();
            env.words.extend(pm.words.iter().cloned());
            env.underlying
                .extend(pm.underlying.iter().map(|&u| u + underlying_offset));
            underlying_offset += pm.underlying.iter().copied().max().map_or(0, |m| m + 1);
        }
    }
    let dim = basis.len();
    let mut products = vec![vec![Elem::zero(); dim]; dim];
    for (s, part) in parts.iter().enumerate() {
        let offset = offsets[s];
        for i in 0..part.dim() {
            for j in 0..part.dim() {
                let mut p = part.products[i][j].clone();
                for (b, _) in &mut p.0 {
                    *b += offset;
                }
                products[i + offset][j + offset] = p;
            }
        }
    }
    GradedAlgebra::from_parts(
        name.to_string(),
        first.group.clone(),
        basis,
        products,
        components,
        component_basis,
        radical,
        envelope,
    )
}

/// Fusion along a matching of isomorphic components (same descriptor).
/// The matched components of `b` are identified with their partners in `a`;
/// radicals stay disjoint and annihilate each other.
pub fn fuse(
    a: &GradedAlgebra,
    b: &GradedAlgebra,
    matching: &[(usize, usize)],
) -> Result<GradedAlgebra, AlgebraError> {
    if a.group != b.group {
        return Err(AlgebraError::GradingGroupMismatch);
    }
    if matching.is_empty() {
        return direct_sum(a, b);
    }
    let mut seen_a = HashSet::new();
    let mut seen_b = HashSet::new();
    for &(ca, cb) in matching {
        if ca >= a.components.len() || cb >= b.components.len() {
            return Err(AlgebraError::NonIsomorphicMatching(format!(
                "component index out of range ({ca}, {cb})"
            )));
        }
        if !seen_a.insert(ca) || !seen_b.insert(cb) {
            return Err(AlgebraError::NonIsomorphicMatching(
                "matching repeats a component".into(),
            ));
        }
        if a.components[ca] != b.components[cb] {
            return Err(AlgebraError::NonIsomorphicMatching(format!(
                "components {ca} and {cb} have different descriptors"
            )));
        }
    }

    // layout: all of a's basis, then b's unmatched components, then b's radical
    let mut basis: Vec<BasisElement> = a
        .basis
        .iter()
        .map(|be| BasisElement {
            label: format!("s1.{}", be.label),
            degree: be.degree,
            tag: be.tag,
        })
        .collect();
    let mut components = a.components.clone();
    let mut component_basis = a.component_basis.clone();
    let mut radical = a.radical.clone();

    // map from b's basis index to the fused index
    let mut b_map = vec![usize::MAX; b.dim()];
    for &(ca, cb) in matching {
        for (pos, &bi) in b.component_basis[cb].iter().enumerate() {
            b_map[bi] = a.component_basis[ca][pos];
        }
    }
    for (cb, indices) in b.component_basis.iter().enumerate() {
        if seen_b.contains(&cb) {
            continue;
        }
        let new_c = components.len();
        components.push(b.components[cb].clone());
        let mut new_indices = Vec::new();
        for (pos, &bi) in indices.iter().enumerate() {
            b_map[bi] = basis.len();
            new_indices.push(basis.len());
            basis.push(BasisElement {
                label: format!("s2.{}", b.basis[bi].label),
                degree: b.basis[bi].degree,
                tag: BasisTag::Semisimple {
                    component: new_c,
                    class: pos,
                },
            });
        }
        component_basis.push(new_indices);
    }
    for &ri in &b.radical {
        b_map[ri] = basis.len();
        radical.push(basis.len());
        basis.push(BasisElement {
            label: format!("s2.{}", b.basis[ri].label),
            degree: b.basis[ri].degree,
            tag: BasisTag::Radical,
        });
    }

    let dim = basis.len();
    let mut products = vec![vec![Elem::zero(); dim]; dim];
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let mut p = a.products[i][j].clone();
            p.0.sort_by_key(|(bb, _)| *bb);
            products[i][j] = p;
        }
    }
    // b-owned pairs: any pair with at least one element outside the matched
    // components (there the a-products above already agree by canonicality).
    let b_owned = |i: usize| -> bool { b_map[i] >= a.dim() };
    for i in 0..b.dim() {
        for j in 0..b.dim() {
            if !(b_owned(i) || b_owned(j)) {
                continue;
            }
            let mut p = b.products[i][j].clone();
            for (bb, _) in &mut p.0 {
                *bb = b_map[*bb];
            }
            p.0.sort_by_key(|(bb, _)| *bb);
            products[b_map[i]][b_map[j]] = p;
        }
    }

    GradedAlgebra::from_parts(
        format!("fuse({},{})", a.name, b.name),
        a.group.clone(),
        basis,
        products,
        components,
        component_basis,
        radical,
        None,
    )
}

/// Super-simple dimension classification per the even/odd dimension formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuperSimpleKind {
    MatrixLF { l: usize, f: usize },
    GroupAlgebraTensorMatrix { n: usize },
    NotRealizable,
}

/// Recovers the super-simple algebra with homogeneous dimensions `(d0, d1)`:
/// `M_{l,f}` from `l^2 + f^2 = d0`, `2lf = d1`, or `FC2 (x) M_n` when
/// `d0 = d1 = n^2`.
pub fn classify_super_simple(d0: u64, d1: u64) -> SuperSimpleKind {
    fn isqrt(v: u64) -> Option<u64> {
        let r = (v as f64).sqrt().round() as u64;
        for c in r.saturating_sub(2)..=r + 2 {
            if c * c == v {
                return Some(c);
            }
        }
        None
    }
    if d0 == d1 {
        if let Some(n) = isqrt(d0) {
            if n > 0 {
                return SuperSimpleKind::GroupAlgebraTensorMatrix { n: n as usize };
            }
        }
    }
    if d0 >= d1 {
        if let (Some(sum), Some(diff)) = (isqrt(d0 + d1), isqrt(d0 - d1)) {
            if (sum + diff) % 2 == 0 {
                let l = (sum + diff) / 2;
                let f = (sum - diff) / 2;
                if l >= 1 && l * l + f * f == d0 && 2 * l * f == d1 {
                    return SuperSimpleKind::MatrixLF {
                        l: l as usize,
                        f: f as usize,
                    };
                }
            }
        }
    }
    SuperSimpleKind::NotRealizable
}

/// The n-by-n upper-triangular fixture: n one-dimensional components and
/// radical spanned by `e_{i,j}`, i < j.
pub fn upper_triangular(n: usize) -> GradedAlgebra {
    let group = GradingGroup::trivial();
    let mut builder = AlgebraBuilder::new(format!("UT{n}"), group);
    for i in 1..=n {
        builder = builder.component(format!("c{i}"), ComponentKind::Matrix { n: 1 });
    }
    for i in 1..=n {
        for j in i + 1..=n {
            builder = builder.radical_element(format!("e{i}_{j}"), 0);
        }
    }
    let diag = |i: usize| format!("c{i}.e1_1");
    let rad = |i: usize, j: usize| format!("e{i}_{j}");
    for i in 1..=n {
        for j in i + 1..=n {
            builder = builder.product(diag(i), rad(i, j), vec![(q(1), rad(i, j))]);
            builder = builder.product(rad(i, j), diag(j), vec![(q(1), rad(i, j))]);
            for k in j + 1..=n {
                builder = builder.product(rad(i, j), rad(j, k), vec![(q(1), rad(i, k))]);
            }
        }
    }
    builder.build().expect("upper triangular fixture")
}

/// `M_n` with the trivial grading over the trivial group.
pub fn matrix_algebra(n: usize) -> GradedAlgebra {
    AlgebraBuilder::new(format!("M{n}"), GradingGroup::trivial())
        .component("c1", ComponentKind::Matrix { n })
        .build()
        .expect("matrix algebra fixture")
}

/// `FC2 (x) M_n` over Z2 (trivial sign cocycle).
pub fn fc2_tensor_matrix(n: usize) -> GradedAlgebra {
    let group = GradingGroup::z2();
    AlgebraBuilder::new(format!("FC2xM{n}"), group)
        .component(
            "c1",
            ComponentKind::SignTwisted {
                n,
                signs: vec![vec![1, 1], vec![1, 1]],
            },
        )
        .build()
        .expect("FC2 tensor fixture")
}

/// `M_{l,f}` over Z2.
pub fn super_matrix(l: usize, f: usize) -> GradedAlgebra {
    AlgebraBuilder::new(format!("M{l},{f}"), GradingGroup::z2())
        .component("c1", ComponentKind::SuperElementary { l, f })
        .build()
        .expect("super matrix fixture")
}

/// Pure even field F viewed as a super algebra (odd part zero).
pub fn even_field_super() -> GradedAlgebra {
    AlgebraBuilder::new("F(even)", GradingGroup::z2())
        .component("c1", ComponentKind::Matrix { n: 1 })
        .build()
        .expect("even field fixture")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q_ratio;

    #[test]
    fn matrix_units_multiply() {
        let m2 = matrix_algebra(2);
        assert_eq!(m2.dim(), 4);
        let e11 = m2.index_of_label("c1.e1_1").unwrap();
        let e12 = m2.index_of_label("c1.e1_2").unwrap();
        let e21 = m2.index_of_label("c1.e2_1").unwrap();
        assert_eq!(*m2.product(e11, e12), Elem::basis(e12));
        assert_eq!(*m2.product(e12, e21), Elem::basis(e11));
        assert!(m2.product(e12, e12).is_zero());
        assert_eq!(m2.nilpotency_index(), 1);
    }

    #[test]
    fn upper_triangular_radical() {
        let ut2 = upper_triangular(2);
        assert_eq!(ut2.dim(), 3);
        assert_eq!(ut2.nilpotency_index(), 2);
        let ut3 = upper_triangular(3);
        assert_eq!(ut3.nilpotency_index(), 3);
        let w = ut2.is_full().expect("UT2 is full");
        assert_eq!(w.permutation, vec![0, 1]);
        let e12 = ut2.index_of_label("e1_2").unwrap();
        assert_eq!(w.value, Elem::basis(e12));
    }

    #[test]
    fn f_times_f_is_not_full() {
        let group = GradingGroup::trivial();
        let ff = AlgebraBuilder::new("FxF", group)
            .component("c1", ComponentKind::Matrix { n: 1 })
            .component("c2", ComponentKind::Matrix { n: 1 })
            .build()
            .unwrap();
        assert!(ff.is_full().is_none());
        assert_eq!(ff.blocks().len(), 2);
    }

    #[test]
    fn inconsistent_constants_rejected() {
        let group = GradingGroup::trivial();
        // declare e11*e12 = e21 inside M2: contradicts the descriptor
        let r = AlgebraBuilder::new("bad", group)
            .component("c1", ComponentKind::Matrix { n: 2 })
            .product("c1.e1_1", "c1.e1_2", vec![(q(1), "c1.e2_1".into())])
            .build();
        assert!(matches!(r, Err(AlgebraError::ComponentMismatch { .. })));
    }

    #[test]
    fn bad_radical_products_rejected() {
        let group = GradingGroup::trivial();
        // r*r = e11 puts a semisimple term in J.J
        let r = AlgebraBuilder::new("bad", group)
            .component("c1", ComponentKind::Matrix { n: 1 })
            .radical_element("r", 0)
            .product("r", "r", vec![(q(1), "c1.e1_1".into())])
            .build();
        assert!(matches!(r, Err(AlgebraError::RadicalNotIdeal { .. })));
    }

    #[test]
    fn non_nilpotent_radical_rejected() {
        let group = GradingGroup::trivial();
        let r = AlgebraBuilder::new("bad", group)
            .radical_element("r", 0)
            .product("r", "r", vec![(q(1), "r".into())])
            .build();
        assert!(matches!(r, Err(AlgebraError::RadicalNotNilpotent)));
    }

    #[test]
    fn degree_violation_rejected() {
        let group = GradingGroup::z2();
        // odd * odd must be even; declare it odd
        let r = AlgebraBuilder::new("bad", group)
            .radical_element("r0", 0)
            .radical_element("r1", 1)
            .product("r1", "r1", vec![(q(1), "r1".into())])
            .build();
        assert!(matches!(r, Err(AlgebraError::DegreeViolation { .. })));
    }

    #[test]
    fn super_component_dimensions() {
        let m11 = super_matrix(1, 1);
        let p = m11.dimension_profile();
        assert_eq!(p.components, vec![vec![2, 2]]);
        let fc2 = fc2_tensor_matrix(1);
        assert_eq!(fc2.dimension_profile().components, vec![vec![1, 1]]);
        let fc2m2 = fc2_tensor_matrix(2);
        assert_eq!(fc2m2.dimension_profile().components, vec![vec![4, 4]]);
    }

    #[test]
    fn klein_crossed_product_dimensions() {
        let klein = GradingGroup::klein();
        let sig: Vec<usize> = (0..4).collect(); // (e, s, t, st)
        let a = AlgebraBuilder::new("M4klein", klein)
            .component("c1", ComponentKind::Elementary { signature: sig })
            .build()
            .unwrap();
        assert_eq!(a.dimension_profile().components, vec![vec![4, 4, 4, 4]]);
    }

    #[test]
    fn sign_cocycle_validation() {
        let klein = GradingGroup::klein();
        // nontrivial class: beta((a1,b1),(a2,b2)) = (-1)^(b1 a2)
        // order e, s=(1,0), t=(0,1), st=(1,1)
        let b = |g: usize| (g == 2 || g == 3) as i32; // b-coordinate
        let a = |g: usize| (g == 1 || g == 3) as i32; // a-coordinate
        let signs: Vec<Vec<i8>> = (0..4)
            .map(|g| (0..4).map(|h| if b(g) * a(h) % 2 == 1 { -1 } else { 1 }).collect())
            .collect();
        let alg = AlgebraBuilder::new("twisted", GradingGroup::klein())
            .component("c1", ComponentKind::SignTwisted { n: 1, signs: signs.clone() })
            .build()
            .unwrap();
        assert_eq!(alg.dim(), 4);
        // u_s u_t = -u_t u_s in the nontrivial class
        let us = alg.index_of_label("c1.us.e1_1").unwrap();
        let ut = alg.index_of_label("c1.ut.e1_1").unwrap();
        let st = alg.mul(&Elem::basis(us), &Elem::basis(ut));
        let ts = alg.mul(&Elem::basis(ut), &Elem::basis(us));
        let mut neg = ts.clone();
        neg.scale(&q(-1));
        assert_eq!(st, neg);

        let mut broken = signs;
        broken[0][1] = -1; // breaks identity normalization
        let r = AlgebraBuilder::new("bad", klein)
            .component("c1", ComponentKind::SignTwisted { n: 1, signs: broken })
            .build();
        assert!(matches!(r, Err(AlgebraError::InvalidCocycle(_))));
    }

    #[test]
    fn direct_sum_profile_concatenates() {
        let ut2 = upper_triangular(2);
        let m2 = matrix_algebra(2);
        let s = direct_sum(&ut2, &m2).unwrap();
        assert_eq!(s.components().len(), 3);
        assert_eq!(s.radical_indices().len(), 1);
        assert_eq!(
            s.dimension_profile().components,
            vec![vec![1], vec![1], vec![4]]
        );
        assert_eq!(s.blocks().len(), 2);
        // a summand's identities contain the sum's; fullness fails for sums
        assert!(s.is_full().is_none());
    }

    #[test]
    fn fuse_empty_matching_is_direct_sum() {
        let ut2 = upper_triangular(2);
        let a = fuse(&ut2, &ut2, &[]).unwrap();
        let b = direct_sum(&ut2, &ut2).unwrap();
        assert_eq!(a.dim(), b.dim());
        for i in 0..a.dim() {
            assert_eq!(a.basis()[i], b.basis()[i]);
            for j in 0..a.dim() {
                assert_eq!(a.product(i, j), b.product(i, j));
            }
        }
    }

    #[test]
    fn fuse_ut2_pair() {
        let ut2 = upper_triangular(2);
        let c = fuse(&ut2, &ut2, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(c.components().len(), 2);
        assert_eq!(c.radical_indices().len(), 2);
        assert_eq!(c.dim(), 4);
        // both radicals bridge the same pair of idempotents
        let e1 = c.index_of_label("s1.c1.e1_1").unwrap();
        let ra = c.index_of_label("s1.e1_2").unwrap();
        let rb = c.index_of_label("s2.e1_2").unwrap();
        assert_eq!(*c.product(e1, ra), Elem::basis(ra));
        assert_eq!(*c.product(e1, rb), Elem::basis(rb));
        assert!(c.product(ra, rb).is_zero());
        assert!(c.is_full().is_some());
    }

    #[test]
    fn fuse_rejects_mismatched_components() {
        let ut2 = upper_triangular(2);
        let m2 = matrix_algebra(2);
        let r = fuse(&ut2, &m2, &[(0, 0)]);
        assert!(matches!(r, Err(AlgebraError::NonIsomorphicMatching(_))));
    }

    #[test]
    fn super_simple_classification() {
        assert_eq!(
            classify_super_simple(2, 2),
            SuperSimpleKind::MatrixLF { l: 1, f: 1 }
        );
        assert_eq!(
            classify_super_simple(1, 1),
            SuperSimpleKind::GroupAlgebraTensorMatrix { n: 1 }
        );
        assert_eq!(classify_super_simple(3, 1), SuperSimpleKind::NotRealizable);
        assert_eq!(
            classify_super_simple(4, 0),
            SuperSimpleKind::MatrixLF { l: 2, f: 0 }
        );
    }

    #[test]
    fn unit_of_matrix_algebra() {
        let m2 = matrix_algebra(2);
        let u = m2.unit().unwrap();
        let e11 = m2.index_of_label("c1.e1_1").unwrap();
        let e22 = m2.index_of_label("c1.e2_2").unwrap();
        assert_eq!(u, Elem(vec![(e11, q(1)), (e22, q(1))]));
    }

    #[test]
    fn scaled_arithmetic() {
        let mut e = Elem::zero();
        e.add_scaled(&Elem::basis(2), &q_ratio(1, 2));
        e.add_scaled(&Elem::basis(0), &q(3));
        e.add_scaled(&Elem::basis(2), &q_ratio(-1, 2));
        assert_eq!(e, Elem(vec![(0, q(3))]));
    }
}
