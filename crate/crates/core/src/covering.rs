//! The covering relation on dimension profiles: partition the covered
//! profile's components into groups, one per covering component, so that each
//! group's componentwise sum stays below the covering vector in every degree
//! simultaneously. Ungraded tuples, super pairs and G-graded vectors all run
//! through the same vector test (the ungraded case uses the trivial group).

use crate::algebra::DimensionProfile;
use crate::error::ReduceError;
use serde::Serialize;

/// A verified covering certificate: `groups[j]` lists the indices of covered
/// components assigned to covering component `j`; `sums[j]` is their
/// componentwise sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverWitness {
    pub groups: Vec<Vec<usize>>,
    pub sums: Vec<Vec<u64>>,
}

impl CoverWitness {
    /// Re-validates the witness against the two profiles by direct summation.
    pub fn validate(&self, cover: &[Vec<u64>], covered: &[Vec<u64>]) -> bool {
        if self.groups.len() != cover.len() {
            return false;
        }
        let mut seen = vec![false; covered.len()];
        for (j, group) in self.groups.iter().enumerate() {
            let width = cover[j].len();
            let mut sum = vec![0u64; width];
            for &i in group {
                if i >= covered.len() || seen[i] {
                    return false;
                }
                seen[i] = true;
                for (d, s) in covered[i].iter().zip(sum.iter_mut()) {
                    *s += d;
                }
            }
            if sum != self.sums[j] {
                return false;
            }
            if sum.iter().zip(cover[j].iter()).any(|(s, b)| s > b) {
                return false;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The weight of a tuple: the sum of its entries (0 for the empty tuple).
pub fn sigma_weight(tuple: &[u64]) -> u64 {
    tuple.iter().sum()
}

/// Does `cover` cover `covered`? Backtracking over assignments of covered
/// components to covering components with componentwise-sum pruning; the
/// first witness in lexicographic assignment order is returned. Empty groups
/// are permitted and all-zero components are dropped up front.
pub fn covers(cover: &DimensionProfile, covered: &DimensionProfile) -> Option<CoverWitness> {
    assert_eq!(
        cover.group, covered.group,
        "profiles over different grading groups"
    );
    let b = cover.normalized();
    let a = covered.normalized();
    covers_vectors(&b, &a)
}

/// Vector-level covering test (profiles already normalized).
pub fn covers_vectors(cover: &[Vec<u64>], covered: &[Vec<u64>]) -> Option<CoverWitness> {
    let width = cover
        .first()
        .or_else(|| covered.first())
        .map_or(0, |v| v.len());
    debug_assert!(cover.iter().chain(covered.iter()).all(|v| v.len() == width));
    if covered.is_empty() {
        return Some(CoverWitness {
            groups: vec![Vec::new(); cover.len()],
            sums: vec![vec![0; width]; cover.len()],
        });
    }
    if cover.is_empty() {
        return None;
    }
    // remaining[j] = capacity left in covering component j
    let mut remaining: Vec<Vec<u64>> = cover.to_vec();
    let mut assignment = vec![usize::MAX; covered.len()];
    let total_capacity: Vec<u64> = (0..width)
        .map(|d| cover.iter().map(|v| v[d]).sum())
        .collect();
    let mut total_needed: Vec<u64> = (0..width)
        .map(|d| covered.iter().map(|v| v[d]).sum())
        .collect();
    if total_needed
        .iter()
        .zip(total_capacity.iter())
        .any(|(n, c)| n > c)
    {
        return None;
    }
    fn assign(
        i: usize,
        covered: &[Vec<u64>],
        remaining: &mut Vec<Vec<u64>>,
        assignment: &mut Vec<usize>,
        total_left: &mut Vec<u64>,
    ) -> bool {
        if i == covered.len() {
            return true;
        }
        let need = &covered[i];
        for j in 0..remaining.len() {
            if need.iter().zip(remaining[j].iter()).all(|(n, r)| n <= r) {
                for (d, n) in need.iter().enumerate() {
                    remaining[j][d] -= n;
                    total_left[d] -= n;
                }
                assignment[i] = j;
                // prune: per-degree totals must still fit the largest residue
                let feasible = (0..need.len()).all(|d| {
                    total_left[d] <= remaining.iter().map(|r| r[d]).sum::<u64>()
                });
                if feasible && assign(i + 1, covered, remaining, assignment, total_left) {
                    return true;
                }
                assignment[i] = usize::MAX;
                for (d, n) in need.iter().enumerate() {
                    remaining[j][d] += n;
                    total_left[d] += n;
                }
            }
        }
        false
    }
    if !assign(
        0,
        covered,
        &mut remaining,
        &mut assignment,
        &mut total_needed,
    ) {
        return None;
    }
    let mut groups = vec![Vec::new(); cover.len()];
    for (i, &j) in assignment.iter().enumerate() {
        groups[j].push(i);
    }
    let sums = groups
        .iter()
        .map(|g| {
            let mut s = vec![0u64; width];
            for &i in g {
                for (d, v) in covered[i].iter().enumerate() {
                    s[d] += v;
                }
            }
            s
        })
        .collect();
    let w = CoverWitness { groups, sums };
    debug_assert!(w.validate(cover, covered));
    Some(w)
}

/// Exhaustive oracle: tries every function from covered components to
/// covering components. Shares no code with the backtracking search.
pub fn covers_oracle(cover: &[Vec<u64>], covered: &[Vec<u64>]) -> bool {
    if covered.is_empty() {
        return true;
    }
    if cover.is_empty() {
        return false;
    }
    let s = cover.len();
    let q = covered.len();
    let width = cover[0].len();
    let mut func = vec![0usize; q];
    loop {
        let mut ok = true;
        'check: for j in 0..s {
            for d in 0..width {
                let sum: u64 = (0..q).filter(|&i| func[i] == j).map(|i| covered[i][d]).sum();
                if sum > cover[j][d] {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok {
            return true;
        }
        // next function in lexicographic order
        let mut pos = q;
        while pos > 0 {
            pos -= 1;
            func[pos] += 1;
            if func[pos] < s {
                break;
            }
            func[pos] = 0;
            if pos == 0 {
                return false;
            }
        }
    }
}

/// Antisymmetry check: if the profiles cover each other they must be equal as
/// multisets of vectors after dropping zeros. Reports a violation as an error
/// (it would indicate an implementation bug).
pub fn mutual_cover_implies_equal(
    beta: &DimensionProfile,
    alpha: &DimensionProfile,
) -> Result<bool, ReduceError> {
    let forward = covers(beta, alpha).is_some();
    let backward = covers(alpha, beta).is_some();
    if forward && backward {
        if beta.normalized() == alpha.normalized() {
            Ok(true)
        } else {
            Err(ReduceError::AntisymmetryViolation)
        }
    } else {
        Ok(true)
    }
}

/// Elements of `set` not strictly covered by another element. "Strictly"
/// means covered by a profile that is not equal (after dropping zeros).
pub fn maximal_profiles(set: &[DimensionProfile]) -> Vec<DimensionProfile> {
    let mut out = Vec::new();
    for (i, p) in set.iter().enumerate() {
        let dominated = set.iter().enumerate().any(|(j, r)| {
            j != i && r.normalized() != p.normalized() && covers(r, p).is_some()
        });
        if !dominated {
            out.push(p.clone());
        }
    }
    out
}

/// Majorization diagnostic: per degree, sorted-prefix sums of the covering
/// profile dominate those of the covered one and totals dominate. Strictly
/// weaker than covering; surfaced in reports for the classic fixture where
/// majorization holds but covering fails.
pub fn majorizes(cover: &DimensionProfile, covered: &DimensionProfile) -> bool {
    let b = cover.normalized();
    let a = covered.normalized();
    let width = b.first().or_else(|| a.first()).map_or(0, |v| v.len());
    for d in 0..width {
        let mut bs: Vec<u64> = b.iter().map(|v| v[d]).collect();
        let mut as_: Vec<u64> = a.iter().map(|v| v[d]).collect();
        bs.sort_unstable_by(|x, y| y.cmp(x));
        as_.sort_unstable_by(|x, y| y.cmp(x));
        let total_b: u64 = bs.iter().sum();
        let total_a: u64 = as_.iter().sum();
        if total_b < total_a {
            return false;
        }
        let mut pb = 0u64;
        let mut pa = 0u64;
        for k in 0..bs.len().max(as_.len()) {
            pb += bs.get(k).copied().unwrap_or(0);
            pa += as_.get(k).copied().unwrap_or(0);
            if pb < pa {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ungraded(entries: &[u64]) -> DimensionProfile {
        DimensionProfile::ungraded(entries)
    }

    #[test]
    fn sigma_weight_examples() {
        assert_eq!(sigma_weight(&[10, 9, 3, 3]), 25);
        assert_eq!(sigma_weight(&[]), 0);
        assert_eq!(sigma_weight(&[5]), 5);
    }

    #[test]
    fn classic_cover_pair() {
        let beta = ungraded(&[16, 12]);
        let w = covers(&beta, &ungraded(&[10, 9, 3, 3])).expect("covers");
        assert!(w.validate(&beta.normalized(), &ungraded(&[10, 9, 3, 3]).normalized()));
        assert!(covers(&beta, &ungraded(&[15, 8, 5])).is_none());
        // majorization holds for the non-covering pair
        assert!(majorizes(&beta, &ungraded(&[15, 8, 5])));
    }

    #[test]
    fn reflexive_and_zero_padding() {
        let p = ungraded(&[3, 2]);
        let w = covers(&p, &p).unwrap();
        assert_eq!(w.groups, vec![vec![0], vec![1]]);
        let padded = ungraded(&[3, 2, 0, 0]);
        assert!(covers(&p, &padded).is_some());
        assert!(covers(&padded, &p).is_some());
    }

    #[test]
    fn super_example_couples_parities() {
        use crate::group::GradingGroup;
        let z2 = GradingGroup::z2();
        let beta = DimensionProfile {
            group: z2.clone(),
            components: vec![vec![17, 8], vec![13, 12]],
        };
        let alpha_ok = DimensionProfile {
            group: z2.clone(),
            components: vec![vec![16, 0], vec![10, 4], vec![2, 2]],
        };
        let alpha_bad = DimensionProfile {
            group: z2.clone(),
            components: vec![vec![10, 6], vec![10, 6], vec![4, 4]],
        };
        assert!(covers(&beta, &alpha_ok).is_some());
        assert!(covers(&beta, &alpha_bad).is_none());
        // per-parity tuples separately do cover
        assert!(covers(&ungraded(&[17, 13]), &ungraded(&[10, 10, 4])).is_some());
        assert!(covers(&ungraded(&[8, 12]), &ungraded(&[6, 6, 4])).is_some());
    }

    #[test]
    fn antisymmetry_on_fixed_pairs() {
        assert!(mutual_cover_implies_equal(&ungraded(&[16, 12]), &ungraded(&[16, 12])).unwrap());
        assert!(mutual_cover_implies_equal(&ungraded(&[3, 2]), &ungraded(&[5])).unwrap());
    }

    #[test]
    fn maximal_profile_extraction() {
        let s = vec![ungraded(&[2]), ungraded(&[1, 1])];
        let m = maximal_profiles(&s);
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].normalized(), ungraded(&[2]).normalized());
        let incomparable = vec![ungraded(&[16, 12]), ungraded(&[15, 8, 5])];
        assert_eq!(maximal_profiles(&incomparable).len(), 2);
        let single = vec![ungraded(&[7])];
        assert_eq!(maximal_profiles(&single).len(), 1);
    }

    #[test]
    fn oracle_agrees_on_small_cases() {
        let cases: Vec<(Vec<Vec<u64>>, Vec<Vec<u64>>)> = vec![
            (vec![vec![16], vec![12]], vec![vec![10], vec![9], vec![3], vec![3]]),
            (vec![vec![16], vec![12]], vec![vec![15], vec![8], vec![5]]),
            (vec![vec![4]], vec![vec![1], vec![1]]),
            (vec![vec![2], vec![2]], vec![vec![3]]),
            (
                vec![vec![17, 8], vec![13, 12]],
                vec![vec![10, 6], vec![10, 6], vec![4, 4]],
            ),
        ];
        for (b, a) in cases {
            assert_eq!(covers_vectors(&b, &a).is_some(), covers_oracle(&b, &a));
        }
    }
}
