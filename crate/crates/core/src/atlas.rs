//! Closed-form small cases used as ground truth: the combinatorial types of
//! partitions of the line, and the classification of two-label normals.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::arrangement::{carries, Arrangement, CarryVerdict, EnumLimits, Partition};
use crate::error::Error;
use crate::exactgeom::{HVector, HomogeneousCone, Rat};
use crate::Result;

/// A combinatorial type of a (possibly non-proper) partition of R^1: the
/// distinct occupied labels in left-to-right order. With k labels occupied
/// the realization cell has dimension k - 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct D1Type {
    pub occupied: Vec<usize>,
}

impl D1Type {
    pub fn k(&self) -> usize {
        self.occupied.len()
    }

    pub fn dim(&self) -> usize {
        self.k() - 1
    }
}

/// All combinatorial types on the line for label count n: every ordered
/// selection of 1 <= k <= n distinct labels. Returns the per-dimension cell
/// counts (k! * C(n, k) in dimension k - 1) along with the full list.
pub fn enum_d1_types(n: usize) -> Result<(BTreeMap<usize, u64>, Vec<D1Type>)> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidInput("label count must be in 1..=8".into()));
    }
    let mut types = Vec::new();
    let mut current: Vec<usize> = Vec::new();
    let mut used = alloc::vec![false; n + 1];

    fn extend(
        n: usize,
        current: &mut Vec<usize>,
        used: &mut [bool],
        types: &mut Vec<D1Type>,
    ) {
        if !current.is_empty() {
            types.push(D1Type {
                occupied: current.clone(),
            });
        }
        if current.len() == n {
            return;
        }
        for next in 1..=n {
            if !used[next] {
                used[next] = true;
                current.push(next);
                extend(n, current, used, types);
                current.pop();
                used[next] = false;
            }
        }
    }

    extend(n, &mut current, &mut used, &mut types);
    types.sort_by(|a, b| a.k().cmp(&b.k()).then(a.occupied.cmp(&b.occupied)));
    let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
    for t in &types {
        *counts.entry(t.dim()).or_insert(0) += 1;
    }
    Ok((counts, types))
}

/// Builds the n-partition of R^1 whose occupied regions appear in the given
/// left-to-right order, separated by the strictly increasing cut points.
/// Labels not mentioned become empty regions.
pub fn d1_partition(n: usize, order: &[usize], cuts: &[Rat]) -> Result<Partition> {
    if order.is_empty() || order.len() > n {
        return Err(Error::InvalidInput("order must name 1..=n labels".into()));
    }
    let mut seen = alloc::vec![false; n + 1];
    for &l in order {
        if l == 0 || l > n || seen[l] {
            return Err(Error::InvalidInput(alloc::format!("bad label {l}")));
        }
        seen[l] = true;
    }
    if cuts.len() + 1 != order.len() {
        return Err(Error::InvalidInput(
            "need exactly one fewer cut than occupied labels".into(),
        ));
    }
    for w in cuts.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidInput("cuts must be strictly increasing".into()));
        }
    }
    let chart = HVector::basis(2, 0).neg();
    // x <= b is (-b, 1) . (x_0, x_1) <= 0; x >= a is (a, -1) . x <= 0.
    let below = |b: &Rat| HVector::new(alloc::vec![-b.clone(), crate::exactgeom::rat(1)]);
    let above = |a: &Rat| HVector::new(alloc::vec![a.clone(), crate::exactgeom::rat(-1)]);
    let mut regions: Vec<Option<HomogeneousCone>> = alloc::vec![None; n];
    for (t, &label) in order.iter().enumerate() {
        let mut ineqs = alloc::vec![chart.clone()];
        if t > 0 {
            ineqs.push(above(&cuts[t - 1]));
        }
        if t < cuts.len() {
            ineqs.push(below(&cuts[t]));
        }
        regions[label - 1] = Some(HomogeneousCone::from_inequalities(ineqs, 2));
    }
    Partition::from_region_cones(n, 1, regions, None)
}

/// Classification of a two-label normal by inspection, with the carrying
/// verdict recomputed from the arrangement for agreement checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPartitionDiag {
    /// Verdict expected from the direction of the normal alone.
    pub expected: CarryVerdict,
    /// Verdict computed by the carrying test.
    pub computed: CarryVerdict,
    pub agree: bool,
}

/// Classifies c as a proper 2-partition normal or one of the two poles, and
/// verifies that the carrying test agrees.
pub fn two_partition_roundtrip(c: &HVector, d: usize) -> Result<TwoPartitionDiag> {
    if c.is_zero() {
        return Err(Error::InvalidInput("zero normal".into()));
    }
    if c.len() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            got: c.len(),
        });
    }
    let pole = HVector::basis(d + 1, 0);
    let expected = if c.proj_eq_positive(&pole) {
        CarryVerdict::CarriesNonProper {
            empty_labels: alloc::vec![1],
        }
    } else if c.proj_eq_positive(&pole.neg()) {
        CarryVerdict::CarriesNonProper {
            empty_labels: alloc::vec![2],
        }
    } else {
        CarryVerdict::CarriesProper
    };
    let mut normals = BTreeMap::new();
    normals.insert((1, 2), c.clone());
    let a = Arrangement::new(2, d, normals)?;
    let computed = carries(&a, &EnumLimits::default())?;
    let agree = expected == computed;
    Ok(TwoPartitionDiag {
        expected,
        computed,
        agree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactgeom::{rat, ratio};
    use crate::metric::{distance, McOpts};

    #[test]
    fn type_counts_match_the_falling_factorial() {
        let (counts, types) = enum_d1_types(3).unwrap();
        assert_eq!(counts.get(&0), Some(&3));
        assert_eq!(counts.get(&1), Some(&6));
        assert_eq!(counts.get(&2), Some(&6));
        assert_eq!(types.len(), 15);

        let (counts, _) = enum_d1_types(1).unwrap();
        assert_eq!(counts.len(), 1);
        assert_eq!(counts.get(&0), Some(&1));

        let (counts, _) = enum_d1_types(4).unwrap();
        assert_eq!(counts.get(&0), Some(&4));
        assert_eq!(counts.get(&1), Some(&12));
        assert_eq!(counts.get(&2), Some(&24));
        assert_eq!(counts.get(&3), Some(&24));

        // k! C(n, k) for all n <= 6.
        for n in 1..=6usize {
            let (counts, _) = enum_d1_types(n).unwrap();
            for k in 1..=n {
                let mut expect = 1u64;
                for v in 0..k {
                    expect *= (n - v) as u64;
                }
                assert_eq!(counts.get(&(k - 1)), Some(&expect), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn line_partitions_and_their_errors() {
        let p = d1_partition(3, &[1, 2, 3], &[rat(0), rat(1)]).unwrap();
        assert!(p.is_proper());
        let q = d1_partition(3, &[2, 1], &[rat(0)]).unwrap();
        assert_eq!(q.nonempty_labels(), alloc::vec![1, 2]);
        let r = d1_partition(3, &[1], &[]).unwrap();
        assert_eq!(r.nonempty_labels(), alloc::vec![1]);
        assert!(d1_partition(3, &[1, 2], &[rat(1), rat(0)]).is_err());
        assert!(d1_partition(3, &[1, 1], &[rat(0)]).is_err());
        assert!(d1_partition(2, &[1, 2], &[]).is_err());
    }

    #[test]
    fn roundtrip_classifications() {
        let proper = two_partition_roundtrip(&HVector::from_ints(&[0, 1, 0]), 2).unwrap();
        assert_eq!(proper.expected, CarryVerdict::CarriesProper);
        assert!(proper.agree);
        let north = two_partition_roundtrip(&HVector::from_ints(&[1, 0, 0]), 2).unwrap();
        assert_eq!(
            north.expected,
            CarryVerdict::CarriesNonProper {
                empty_labels: alloc::vec![1]
            }
        );
        assert!(north.agree);
        let south = two_partition_roundtrip(&HVector::from_ints(&[-1, 0, 0]), 2).unwrap();
        assert_eq!(
            south.expected,
            CarryVerdict::CarriesNonProper {
                empty_labels: alloc::vec![2]
            }
        );
        assert!(south.agree);
    }

    #[test]
    fn roundtrip_agrees_on_random_normals() {
        // Seeded LCG over small integer coordinates, 100 normals per
        // dimension.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((state >> 48) as i64 % 7) - 3
        };
        for d in 1..=3usize {
            let mut count = 0;
            while count < 100 {
                let coords: Vec<i64> = (0..=d).map(|_| next()).collect();
                let v = HVector::from_ints(&coords);
                if v.is_zero() {
                    continue;
                }
                count += 1;
                let diag = two_partition_roundtrip(&v, d).unwrap();
                assert!(diag.agree, "disagreement at {v:?}");
            }
        }
    }

    #[test]
    fn boundary_law_cut_merging() {
        // Merging two adjacent cuts: the distance to the merged type
        // decreases monotonically with the gap.
        let opts = McOpts::default();
        for n in 3..=4usize {
            let limit = d1_partition(n, &[1, 3], &[rat(0)]).unwrap();
            let mut last = f64::INFINITY;
            for gap in [rat(1), ratio(1, 4), ratio(1, 16)] {
                let p = d1_partition(n, &[1, 2, 3], &[rat(0), gap]).unwrap();
                let dist = distance(&p, &limit, &opts).unwrap().value;
                assert!(dist < last, "not shrinking at {dist}");
                last = dist;
            }
            assert!(last < 0.6);
        }
    }

    #[test]
    fn distance_is_continuous_in_the_cuts() {
        let opts = McOpts::default();
        let base = d1_partition(2, &[1, 2], &[rat(0)]).unwrap();
        for k in 1..=8 {
            let delta = ratio(1, 1 << k);
            let moved = d1_partition(2, &[1, 2], core::slice::from_ref(&delta)).unwrap();
            let dist = distance(&base, &moved, &opts).unwrap().value;
            let delta_f = 1.0 / (1u64 << k) as f64;
            // d_mu = 2 arctan(delta) <= 2 delta.
            assert!(dist <= 2.0 * delta_f + 1e-12);
            assert!(dist > 0.0);
        }
    }
}
