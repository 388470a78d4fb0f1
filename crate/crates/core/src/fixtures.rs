//! Canonical arrangements used across the test suites and shipped as CLI
//! fixture files. All coordinates are small integers so every predicate stays
//! cheap and exact.

use alloc::vec::Vec;

use crate::arrangement::{Arrangement, EnumLimits, Partition};
use crate::exactgeom::HVector;

/// Four regions: two wedges left of the y-axis split by the line x = 6y, a
/// slab 0 < x < 1, and the halfplane x > 1. The four pair hyperplanes
/// involving labels {1,2} x {3,4} coincide as the line x = 0.
pub fn ex1() -> Arrangement {
    Arrangement::from_int_rows(
        4,
        2,
        &[
            &[0, 1, -6], // {1,2}
            &[0, 1, 0],  // {1,3}
            &[0, 1, 0],  // {1,4}
            &[0, 1, 0],  // {2,3}
            &[0, 1, 0],  // {2,4}
            &[-1, 1, 0], // {3,4}
        ],
    )
    .unwrap()
}

/// EX1 with the {2,4} normal replaced so that the cell left of the y-axis and
/// below both the lines x = 6y and y = 0 acquires the 3-cycle 2 -> 1 -> 4 -> 2
/// and no source.
pub fn ex1_broken() -> Arrangement {
    ex1().with_normal(2, 4, HVector::from_ints(&[0, 0, -1]))
}

/// EX1 with the wall between regions 1 and 2 rotated to x = 5y. Same
/// combinatorics as EX1.
pub fn ex1_rotated() -> Arrangement {
    ex1().with_normal(1, 2, HVector::from_ints(&[0, 1, -5]))
}

/// EX1 with the wall between regions 3 and 4 moved to x = 2. Same
/// combinatorics as EX1.
pub fn ex1_shifted() -> Arrangement {
    ex1().with_normal(3, 4, HVector::from_ints(&[-2, 1, 0]))
}

/// Four parallel slabs cut by the lines x = 0, 1, 2; non-essential (its
/// minimal face is the antipodal point pair on the equator).
pub fn parl() -> Arrangement {
    Arrangement::from_int_rows(
        4,
        2,
        &[
            &[0, 1, 0],  // {1,2}: x = 0
            &[-1, 1, 0], // {1,3}: x = 1
            &[-1, 1, 0], // {1,4}: x = 1
            &[-1, 1, 0], // {2,3}: x = 1
            &[-2, 1, 0], // {2,4}: x = 2
            &[-2, 1, 0], // {3,4}: x = 2
        ],
    )
    .unwrap()
}

/// Parallel slabs with the last cut moved from x = 2 to x = 3. Same
/// combinatorics as `parl`.
pub fn parl_stretched() -> Arrangement {
    parl()
        .with_normal(2, 4, HVector::from_ints(&[-3, 1, 0]))
        .with_normal(3, 4, HVector::from_ints(&[-3, 1, 0]))
}

/// Parallel slabs on cuts x = -1, 1, 2.
pub fn parl_shifted() -> Arrangement {
    parl()
        .with_normal(1, 2, HVector::from_ints(&[1, 1, 0]))
        .with_normal(1, 3, HVector::from_ints(&[-1, 1, 0]))
}

/// Three regions: quadrant II, quadrant III, and the right halfplane. The
/// right region's cone has a lineality line, so the partition is essential
/// but not pointed.
pub fn y3() -> Arrangement {
    Arrangement::from_int_rows(
        3,
        2,
        &[
            &[0, 0, -1], // {1,2}: y = 0
            &[0, 1, 0],  // {1,3}: x = 0
            &[0, 1, 0],  // {2,3}: x = 0
        ],
    )
    .unwrap()
}

/// `y3` padded to four labels with an empty fourth region.
pub fn y3_as4() -> Arrangement {
    Arrangement::from_int_rows(
        4,
        2,
        &[
            &[0, 0, -1], // {1,2}
            &[0, 1, 0],  // {1,3}
            &[0, 1, 0],  // {1,4}: region 1 left of x = 0
            &[0, 1, 0],  // {2,3}
            &[0, 1, 0],  // {2,4}
            &[0, -1, 0], // {3,4}: region 3 right of x = 0
        ],
    )
    .unwrap()
}

/// Two halfplanes plus two empty labels.
pub fn half4() -> Arrangement {
    Arrangement::from_int_rows(
        4,
        2,
        &[
            &[0, 1, 0],  // {1,2}
            &[0, 1, 0],  // {1,3}
            &[0, 1, 0],  // {1,4}
            &[0, -1, 0], // {2,3}
            &[0, -1, 0], // {2,4}
            &[1, 0, 0],  // {3,4}: both empty, any normal separates
        ],
    )
    .unwrap()
}

/// The integer ray directions of the pointed 5-partition, counterclockwise.
pub const PENT_RAYS: [(i64, i64); 5] = [(0, 5), (-5, 2), (-3, -4), (3, -4), (5, 2)];

/// Pointed 5-partition of the plane: five sectors around the origin with the
/// integer ray directions of `PENT_RAYS`; region i spans rays u_i to u_{i+1}.
pub fn pent() -> Arrangement {
    // Adjacent walls are the rays themselves; the remaining pairs are
    // separated by coordinate lines, which miss both open sectors.
    Arrangement::from_int_rows(
        5,
        2,
        &[
            &[0, -2, -5], // {1,2}: ray u_2
            &[0, 0, -1],  // {1,3}
            &[0, 1, 0],   // {1,4}
            &[0, 1, 0],   // {1,5}: ray u_1 lies on x = 0
            &[0, 4, -3],  // {2,3}: ray u_3
            &[0, 1, 0],   // {2,4}
            &[0, 1, 0],   // {2,5}
            &[0, 4, 3],   // {3,4}: ray u_4
            &[0, 0, 1],   // {3,5}
            &[0, -2, 5],  // {4,5}: ray u_5
        ],
    )
    .unwrap()
}

/// Pointed 4-partition into the open quadrants.
pub fn quad() -> Arrangement {
    Arrangement::from_int_rows(
        4,
        2,
        &[
            &[0, -1, 0],  // {1,2}: x = 0, NE on the right
            &[0, -1, -1], // {1,3}: diagonal y = -x
            &[0, 0, -1],  // {1,4}: y = 0
            &[0, 0, -1],  // {2,3}: y = 0
            &[0, 1, -1],  // {2,4}: diagonal y = x
            &[0, 1, 0],   // {3,4}: x = 0
        ],
    )
    .unwrap()
}

/// Two labels split by a single hyperplane through the origin of the chart.
pub fn two_halfspaces(d: usize) -> Arrangement {
    let mut v = alloc::vec![0i64; d + 1];
    v[1] = 1;
    Arrangement::from_int_rows(2, d, &[&v]).unwrap()
}

/// The non-proper two-label arrangement whose normal is the pole
/// (1, 0, ..., 0): region 1 is empty and region 2 is everything.
pub fn polar2(d: usize) -> Arrangement {
    let mut v = alloc::vec![0i64; d + 1];
    v[0] = 1;
    Arrangement::from_int_rows(2, d, &[&v]).unwrap()
}

/// The 1-partition of R^d (no hyperplanes at all); non-essential with the
/// full equator as its minimal face.
pub fn one_region(d: usize) -> Arrangement {
    Arrangement::from_int_rows(1, d, &[]).unwrap()
}

/// Sliver family: P_1 = {y < 0}, P_2 = {y > 1}, P_3 = {0 < y < 1, x < a},
/// P_4 = {0 < y < 1, x > a}. As a grows, region 4 shrinks toward the
/// non-proper limit `sliver_limit`.
pub fn sliver(a: i64) -> Arrangement {
    Arrangement::from_int_rows(
        4,
        2,
        &[
            &[0, 0, 1],   // {1,2}: y = 0
            &[0, 0, 1],   // {1,3}
            &[0, 0, 1],   // {1,4}
            &[1, 0, -1],  // {2,3}: y = 1
            &[1, 0, -1],  // {2,4}
            &[-a, 1, 0],  // {3,4}: x = a
        ],
    )
    .unwrap()
}

/// Limit of the sliver family: region 4 empty, region 3 the full slab.
pub fn sliver_limit() -> Arrangement {
    sliver(0).with_normal(3, 4, HVector::from_ints(&[-1, 0, 1]))
}

/// Projection shorthand used by tests: the carried partition of a fixture.
pub fn partition_of(a: &Arrangement) -> Partition {
    crate::arrangement::project_pi(a, &EnumLimits::default()).unwrap()
}

/// The ten-partition pool with shared (n, d) = (4, 2) used by the metric
/// property suites.
pub fn metric_pool() -> Vec<Partition> {
    let relabeled = ex1().relabel(&[4, 2, 3, 1]).unwrap();
    alloc::vec![
        partition_of(&ex1()),
        partition_of(&ex1_rotated()),
        partition_of(&ex1_shifted()),
        partition_of(&parl()),
        partition_of(&parl_stretched()),
        partition_of(&parl_shifted()),
        partition_of(&quad()),
        partition_of(&y3_as4()),
        partition_of(&half4()),
        partition_of(&relabeled),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::{carries, CarryVerdict};

    #[test]
    fn pent_normals_have_the_right_sides() {
        // Every stored pair normal must be strictly negative on an interior
        // point of region i and strictly positive on one of region j.
        let rays = PENT_RAYS;
        let interior = |i: usize| {
            let (a, b) = (rays[i - 1], rays[i % 5]);
            HVector::from_ints(&[1, a.0 + b.0, a.1 + b.1])
        };
        let arr = pent();
        for (i, j) in crate::arrangement::pairs(5) {
            let c = arr.normal(i, j);
            assert!(
                c.dot(&interior(i)).unwrap() < crate::exactgeom::rat(0),
                "pair {i},{j} not negative on region {i}"
            );
            assert!(
                c.dot(&interior(j)).unwrap() > crate::exactgeom::rat(0),
                "pair {i},{j} not positive on region {j}"
            );
        }
    }

    #[test]
    fn sliver_family_members_carry() {
        let lim = EnumLimits::default();
        for a in [1, 2, 4, 8, 16, 32, 64] {
            assert_eq!(carries(&sliver(a), &lim).unwrap(), CarryVerdict::CarriesProper);
        }
        assert_eq!(
            carries(&sliver_limit(), &lim).unwrap(),
            CarryVerdict::CarriesNonProper { empty_labels: alloc::vec![4] }
        );
    }

    #[test]
    fn pool_members_share_shape() {
        for p in metric_pool() {
            assert_eq!(p.n(), 4);
            assert_eq!(p.d(), 2);
        }
    }
}
