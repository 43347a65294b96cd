//! Finite grading groups with optional `Z2 x G` factorization.

use crate::error::AlgebraError;
use std::sync::Arc;

/// Index of a group element inside its [`GradingGroup`].
pub type GroupElt = usize;

/// Recorded direct-product structure `Z2 x G`. Element `i` of the product
/// corresponds to the pair `(parity[i], base_part[i])`.
#[derive(Debug, Clone)]
pub struct SuperSplit {
    pub parity: Vec<u8>,
    pub base_part: Vec<GroupElt>,
    pub base: Arc<GradingGroup>,
}

/// A finite group given by labels and a full product table.
#[derive(Debug, Clone)]
pub struct GradingGroup {
    labels: Vec<String>,
    table: Vec<Vec<GroupElt>>,
    identity: GroupElt,
    inverse: Vec<GroupElt>,
    super_split: Option<SuperSplit>,
}

impl PartialEq for GradingGroup {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.table == other.table
    }
}
impl Eq for GradingGroup {}

impl GradingGroup {
    /// Builds a group from labels and a product table, checking the axioms
    /// exhaustively.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<GroupElt>>) -> Result<Arc<Self>, AlgebraError> {
        let n = labels.len();
        if n == 0 {
            return Err(AlgebraError::GroupLaw("empty element list".into()));
        }
        {
            let mut seen = std::collections::HashSet::new();
            for l in &labels {
                if !seen.insert(l.clone()) {
                    return Err(AlgebraError::GroupLaw(format!("duplicate label {l}")));
                }
            }
        }
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(AlgebraError::GroupLaw("product table has wrong shape".into()));
        }
        for row in &table {
            for &v in row {
                if v >= n {
                    return Err(AlgebraError::GroupLaw("product table entry out of range".into()));
                }
            }
        }
        // associativity, exhaustively
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(AlgebraError::GroupLaw(format!(
                            "not associative at ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or_else(|| AlgebraError::GroupLaw("no identity element".into()))?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            inverse[a] = (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| AlgebraError::GroupLaw(format!("{} has no inverse", labels[a])))?;
        }
        Ok(Arc::new(GradingGroup {
            labels,
            table,
            identity,
            inverse,
            super_split: None,
        }))
    }

    /// The trivial group.
    pub fn trivial() -> Arc<Self> {
        GradingGroup::from_table(vec!["e".into()], vec![vec![0]]).unwrap()
    }

    /// `Z2 x base`, with the factorization recorded for parity-aware
    /// operations. Labels are `0`/`1` over a trivial base and `0|g`/`1|g`
    /// otherwise.
    pub fn z2_times(base: Arc<GradingGroup>) -> Arc<Self> {
        let bn = base.order();
        let n = 2 * bn;
        let label = |p: usize, g: usize| -> String {
            if bn == 1 {
                format!("{p}")
            } else {
                format!("{p}|{}", base.labels[g])
            }
        };
        let idx = |p: usize, g: usize| p * bn + g;
        let mut labels = Vec::with_capacity(n);
        for p in 0..2 {
            for g in 0..bn {
                labels.push(label(p, g));
            }
        }
        let mut table = vec![vec![0; n]; n];
        for p1 in 0..2 {
            for g1 in 0..bn {
                for p2 in 0..2 {
                    for g2 in 0..bn {
                        table[idx(p1, g1)][idx(p2, g2)] = idx((p1 + p2) % 2, base.table[g1][g2]);
                    }
                }
            }
        }
        let mut grp = (*GradingGroup::from_table(labels, table).unwrap()).clone();
        let mut parity = vec![0u8; n];
        let mut base_part = vec![0usize; n];
        for p in 0..2 {
            for g in 0..bn {
                parity[idx(p, g)] = p as u8;
                base_part[idx(p, g)] = g;
            }
        }
        grp.super_split = Some(SuperSplit {
            parity,
            base_part,
            base,
        });
        Arc::new(grp)
    }

    /// The group `Z2` (= `Z2 x trivial`), the grading group of super algebras.
    pub fn z2() -> Arc<Self> {
        GradingGroup::z2_times(GradingGroup::trivial())
    }

    /// Klein four-group with labels `e, s, t, st`.
    pub fn klein() -> Arc<Self> {
        let labels = ["e", "s", "t", "st"].map(String::from).to_vec();
        // index by (a, b) in Z2 x Z2: e=(0,0) s=(1,0) t=(0,1) st=(1,1)
        let coords = [(0, 0), (1, 0), (0, 1), (1, 1)];
        let find = |c: (u8, u8)| coords.iter().position(|&x| x == c).unwrap();
        let mut table = vec![vec![0; 4]; 4];
        for (i, &(a1, b1)) in coords.iter().enumerate() {
            for (j, &(a2, b2)) in coords.iter().enumerate() {
                table[i][j] = find(((a1 + a2) % 2, (b1 + b2) % 2));
            }
        }
        GradingGroup::from_table(labels, table).unwrap()
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn identity(&self) -> GroupElt {
        self.identity
    }

    pub fn mul(&self, a: GroupElt, b: GroupElt) -> GroupElt {
        self.table[a][b]
    }

    pub fn inv(&self, a: GroupElt) -> GroupElt {
        self.inverse[a]
    }

    pub fn label(&self, a: GroupElt) -> &str {
        &self.labels[a]
    }

    pub fn elt_by_label(&self, label: &str) -> Option<GroupElt> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn super_split(&self) -> Option<&SuperSplit> {
        self.super_split.as_ref()
    }

    /// Parity of an element under the recorded `Z2 x G` factorization.
    pub fn parity(&self, a: GroupElt) -> Option<u8> {
        self.super_split.as_ref().map(|s| s.parity[a])
    }

    /// Element of the product with the given parity and base part.
    pub fn compose_split(&self, parity: u8, base_elt: GroupElt) -> Option<GroupElt> {
        let split = self.super_split.as_ref()?;
        (0..self.order()).find(|&i| split.parity[i] == parity && split.base_part[i] == base_elt)
    }

    /// Product of a word of elements, left to right.
    pub fn word_product(&self, word: impl IntoIterator<Item = GroupElt>) -> GroupElt {
        word.into_iter().fold(self.identity, |acc, g| self.mul(acc, g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_z2() {
        let t = GradingGroup::trivial();
        assert_eq!(t.order(), 1);
        let z2 = GradingGroup::z2();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.mul(1, 1), 0);
        assert_eq!(z2.parity(1), Some(1));
        assert_eq!(z2.label(0), "0");
    }

    #[test]
    fn klein_structure() {
        let k = GradingGroup::klein();
        let s = k.elt_by_label("s").unwrap();
        let t = k.elt_by_label("t").unwrap();
        let st = k.elt_by_label("st").unwrap();
        assert_eq!(k.mul(s, t), st);
        assert_eq!(k.mul(s, s), k.identity());
        assert_eq!(k.inv(st), st);
    }

    #[test]
    fn z2_times_klein_split() {
        let g2 = GradingGroup::z2_times(GradingGroup::klein());
        assert_eq!(g2.order(), 8);
        let odd_s = g2.elt_by_label("1|s").unwrap();
        assert_eq!(g2.parity(odd_s), Some(1));
        let split = g2.super_split().unwrap();
        assert_eq!(split.base.label(split.base_part[odd_s]), "s");
        // parity is a homomorphism
        for a in 0..8 {
            for b in 0..8 {
                let pa = g2.parity(a).unwrap();
                let pb = g2.parity(b).unwrap();
                assert_eq!(g2.parity(g2.mul(a, b)).unwrap(), (pa + pb) % 2);
            }
        }
    }

    #[test]
    fn bad_tables_rejected() {
        // 2-element "table" without identity row
        let r = GradingGroup::from_table(
            vec!["a".into(), "b".into()],
            vec![vec![1, 1], vec![1, 1]],
        );
        assert!(r.is_err());
    }
}
