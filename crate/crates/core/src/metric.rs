//! The spherical measure of regions and the symmetric-difference distance
//! between partitions.
//!
//! The measure of a region is the d-volume of its projection to the upper
//! hemisphere, so every region (bounded or not) has finite measure, capped by
//! the hemisphere volume. The distance between two partitions with the same
//! label count is the sum over labels of the measures of the symmetric
//! differences.
//!
//! d = 1 and d = 2 are computed exactly (arc angles and spherical angle
//! excess on exact rational vertex rays, converted to floating point only in
//! the final angle evaluations, which keeps the error near 1e-12 per
//! vertex); higher dimensions fall back to seeded Monte Carlo with a
//! binomial standard error.

use alloc::vec::Vec;
#[cfg(not(feature = "std"))]
use num_traits::Float;
use rand_core::{RngCore, SeedableRng};

use crate::arrangement::Partition;
use crate::error::Error;
use crate::exactgeom::{HVector, HomogeneousCone};
use crate::Result;

const PI: f64 = core::f64::consts::PI;

/// How a measure value was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ExactD1,
    ExactD2,
    MonteCarlo,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::ExactD1 => "exact_d1",
            Method::ExactD2 => "exact_d2",
            Method::MonteCarlo => "monte_carlo",
        }
    }
}

/// A measure together with its provenance; `stderr` is zero for the exact
/// methods.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalMeasureValue {
    pub value: f64,
    pub method: Method,
    pub stderr: f64,
}

/// Monte Carlo sampling parameters. The seed is mandatory wherever sampling
/// can occur; exact paths ignore it.
#[derive(Clone, Copy, Debug)]
pub struct McOpts {
    pub seed: u64,
    pub samples: u64,
}

impl Default for McOpts {
    fn default() -> Self {
        McOpts {
            seed: 0,
            samples: 1_000_000,
        }
    }
}

/// d-volume of the upper hemisphere of S^d: pi^{(d+1)/2} / Gamma((d+1)/2).
pub fn hemisphere_volume(d: usize) -> f64 {
    if d % 2 == 1 {
        // (d+1)/2 is an integer k: pi^k / (k-1)!
        let k = (d + 1) / 2;
        let mut v = 1.0;
        for _ in 0..k {
            v *= PI;
        }
        for m in 1..k {
            v /= m as f64;
        }
        v
    } else {
        // (d+1)/2 = k + 1/2 with k = d/2: pi^k 4^k k! / (2k)!
        let k = d / 2;
        let mut v = 1.0;
        for _ in 0..k {
            v *= 4.0 * PI;
        }
        for m in 1..=k {
            v *= m as f64;
        }
        for m in 1..=2 * k {
            v /= m as f64;
        }
        v
    }
}

fn ensure_region_shaped(c: &HomogeneousCone, d: usize) -> Result<()> {
    if c.ambient_dim() != d + 1 {
        return Err(Error::DimensionMismatch {
            expected: d + 1,
            got: c.ambient_dim(),
        });
    }
    let chart = HVector::basis(d + 1, 0).neg();
    if !c.valid_inequality(&chart)? {
        return Err(Error::InvalidInput(
            "measure is defined for cones inside the upper halfspace".into(),
        ));
    }
    Ok(())
}

fn unit(v: &[f64]) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / norm).collect()
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Arc length of a 1-dimensional region cone on the upper half of S^1.
fn arc_measure(c: &HomogeneousCone) -> Result<f64> {
    if c.cone_dim()? < 2 {
        return Ok(0.0);
    }
    let gens = c.generators()?;
    // Angle of each boundary ray measured from the pole direction; the cone
    // is the angular interval between the extremes.
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for g in &gens {
        let f = g.to_f64();
        let theta = f[1].atan2(f[0]);
        lo = lo.min(theta);
        hi = hi.max(theta);
    }
    Ok(hi - lo)
}

/// Area of a 2-dimensional spherical polygon by angle excess over the cycle
/// of its boundary rays.
fn polygon_measure(c: &HomogeneousCone) -> Result<f64> {
    if c.cone_dim()? < 3 {
        return Ok(0.0);
    }
    let gens = c.generators()?;
    // Boundary vertices: generators tight on at least one inequality.
    let mut verts: Vec<Vec<f64>> = Vec::new();
    for g in &gens {
        let mut tight = false;
        for a in c.inequalities() {
            if a.dot(g)?.eq(&crate::exactgeom::rat(0)) {
                tight = true;
                break;
            }
        }
        if tight {
            verts.push(unit(&g.to_f64()));
        }
    }
    if verts.is_empty() {
        // No boundary within the upper halfspace: the full hemisphere.
        return Ok(2.0 * PI);
    }
    if verts.len() < 3 {
        return Err(Error::Internal(alloc::format!(
            "degenerate polygon with {} boundary rays",
            verts.len()
        )));
    }
    // Cyclic order around an interior axis.
    let axis = unit(&c.relint_point()?.to_f64());
    let seed = if axis[0].abs() < 0.9 {
        alloc::vec![1.0, 0.0, 0.0]
    } else {
        alloc::vec![0.0, 1.0, 0.0]
    };
    let u = {
        let proj = dot(&seed, &axis);
        unit(&[
            seed[0] - proj * axis[0],
            seed[1] - proj * axis[1],
            seed[2] - proj * axis[2],
        ])
    };
    let v = alloc::vec![
        axis[1] * u[2] - axis[2] * u[1],
        axis[2] * u[0] - axis[0] * u[2],
        axis[0] * u[1] - axis[1] * u[0],
    ];
    verts.sort_by(|a, b| {
        let ta = dot(a, &v).atan2(dot(a, &u));
        let tb = dot(b, &v).atan2(dot(b, &u));
        ta.partial_cmp(&tb).unwrap()
    });
    // Interior angles; collinear (flat) vertices contribute pi and are
    // harmless.
    let m = verts.len();
    let mut excess = -((m as f64) - 2.0) * PI;
    for i in 0..m {
        let prev = &verts[(i + m - 1) % m];
        let here = &verts[i];
        let next = &verts[(i + 1) % m];
        let tangent = |to: &Vec<f64>| {
            let proj = dot(to, here);
            unit(&[
                to[0] - proj * here[0],
                to[1] - proj * here[1],
                to[2] - proj * here[2],
            ])
        };
        let tp = tangent(prev);
        let tn = tangent(next);
        let cross = alloc::vec![
            tp[1] * tn[2] - tp[2] * tn[1],
            tp[2] * tn[0] - tp[0] * tn[2],
            tp[0] * tn[1] - tp[1] * tn[0],
        ];
        let cross_norm = cross.iter().map(|x| x * x).sum::<f64>().sqrt();
        excess += cross_norm.atan2(dot(&tp, &tn));
    }
    Ok(excess)
}

struct GaussStream {
    rng: rand_chacha::ChaCha8Rng,
    spare: Option<f64>,
}

impl GaussStream {
    fn new(seed: u64) -> Self {
        GaussStream {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
            spare: None,
        }
    }

    fn uniform01(&mut self) -> f64 {
        // 53 random bits into (0, 1].
        ((self.rng.next_u64() >> 11) + 1) as f64 * (1.0 / 9007199254740992.0)
    }

    fn gauss(&mut self) -> f64 {
        if let Some(z) = self.spare.take() {
            return z;
        }
        let u1 = self.uniform01();
        let u2 = self.uniform01();
        let r = (-2.0 * u1.ln()).sqrt();
        let (s, c) = (2.0 * PI * u2).sin_cos();
        self.spare = Some(r * s);
        r * c
    }
}

const MC_CHUNK: u64 = 4096;

/// Monte Carlo measure of `f(point) == true` over the upper hemisphere.
///
/// Points are uniform on S^d via normalized Gaussians with the lower
/// halfspace rejected. Samples are drawn in fixed-size chunks whose
/// substreams derive deterministically from (seed, chunk index) and are
/// reduced in chunk order, so an estimate is reproducible bit for bit for a
/// given seed and sample count.
fn mc_measure<F: FnMut(&[f64]) -> bool>(
    d: usize,
    opts: &McOpts,
    mut f: F,
) -> SphericalMeasureValue {
    let total = hemisphere_volume(d);
    let n = opts.samples.max(1);
    let mut hits: u64 = 0;
    let chunks = n.div_ceil(MC_CHUNK);
    let mut point = alloc::vec![0.0f64; d + 1];
    for chunk in 0..chunks {
        let sub = opts.seed ^ (chunk.wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut g = GaussStream::new(sub);
        let lo = chunk * MC_CHUNK;
        let hi = (lo + MC_CHUNK).min(n);
        for _ in lo..hi {
            loop {
                for x in point.iter_mut() {
                    *x = g.gauss();
                }
                if point[0] > 0.0 {
                    break;
                }
            }
            if f(&point) {
                hits += 1;
            }
        }
    }
    let p = hits as f64 / n as f64;
    SphericalMeasureValue {
        value: p * total,
        method: Method::MonteCarlo,
        stderr: total * (p * (1.0 - p) / n as f64).sqrt(),
    }
}

fn float_member(c: &HomogeneousCone, x: &[f64]) -> bool {
    let ineqs: bool = c.inequalities().iter().all(|a| {
        let af = a.to_f64();
        dot(&af, x) <= 0.0
    });
    ineqs
        && c.equalities().iter().all(|b| {
            let bf = b.to_f64();
            dot(&bf, x) == 0.0
        })
}

/// The measure of one region cone.
pub fn mu_region(c: &HomogeneousCone, d: usize, opts: &McOpts) -> Result<SphericalMeasureValue> {
    ensure_region_shaped(c, d)?;
    match d {
        1 => Ok(SphericalMeasureValue {
            value: arc_measure(c)?,
            method: Method::ExactD1,
            stderr: 0.0,
        }),
        2 => Ok(SphericalMeasureValue {
            value: polygon_measure(c)?,
            method: Method::ExactD2,
            stderr: 0.0,
        }),
        _ => Ok(mc_measure(d, opts, |x| float_member(c, x))),
    }
}

/// Measure of the symmetric difference of two region cones.
pub fn sym_diff_measure(
    a: &HomogeneousCone,
    b: &HomogeneousCone,
    d: usize,
    opts: &McOpts,
) -> Result<SphericalMeasureValue> {
    ensure_region_shaped(a, d)?;
    ensure_region_shaped(b, d)?;
    if d <= 2 {
        let meet = a.intersect(b)?;
        let ma = mu_region(a, d, opts)?;
        let mb = mu_region(b, d, opts)?;
        let mm = mu_region(&meet, d, opts)?;
        Ok(SphericalMeasureValue {
            value: ma.value + mb.value - 2.0 * mm.value,
            method: ma.method,
            stderr: 0.0,
        })
    } else {
        Ok(mc_measure(d, opts, |x| {
            float_member(a, x) != float_member(b, x)
        }))
    }
}

/// Monte Carlo estimate of the symmetric difference regardless of dimension;
/// used to cross-check the exact low-dimensional paths.
pub fn mc_sym_diff_measure(
    a: &HomogeneousCone,
    b: &HomogeneousCone,
    d: usize,
    opts: &McOpts,
) -> Result<SphericalMeasureValue> {
    ensure_region_shaped(a, d)?;
    ensure_region_shaped(b, d)?;
    Ok(mc_measure(d, opts, |x| {
        float_member(a, x) != float_member(b, x)
    }))
}

/// Monte Carlo estimate of a single region's measure.
pub fn mc_mu_region(c: &HomogeneousCone, d: usize, opts: &McOpts) -> Result<SphericalMeasureValue> {
    ensure_region_shaped(c, d)?;
    Ok(mc_measure(d, opts, |x| float_member(c, x)))
}

/// The distance between two partitions with the same n and d: the sum over
/// labels of the measures of the symmetric differences. An empty region
/// contributes the measure of its partner.
pub fn distance(p: &Partition, q: &Partition, opts: &McOpts) -> Result<SphericalMeasureValue> {
    if p.n() != q.n() || p.d() != q.d() {
        return Err(Error::InvalidInput(
            "distance needs matching n and d".into(),
        ));
    }
    let d = p.d();
    let method = match d {
        1 => Method::ExactD1,
        2 => Method::ExactD2,
        _ => Method::MonteCarlo,
    };
    let mut value = 0.0;
    let mut var = 0.0;
    for i in 1..=p.n() {
        let m = match (p.region(i), q.region(i)) {
            (None, None) => continue,
            (Some(a), None) => mu_region(a, d, opts)?,
            (None, Some(b)) => mu_region(b, d, opts)?,
            (Some(a), Some(b)) => sym_diff_measure(a, b, d, opts)?,
        };
        value += m.value;
        var += m.stderr * m.stderr;
    }
    Ok(SphericalMeasureValue {
        value,
        method,
        stderr: var.sqrt(),
    })
}

/// Do the region measures sum to the hemisphere volume? Tolerance is
/// absolute 1e-9 for the exact methods and four standard errors for Monte
/// Carlo.
pub fn total_measure_check(p: &Partition, opts: &McOpts) -> Result<bool> {
    let d = p.d();
    let mut sum = 0.0;
    let mut var = 0.0;
    for i in p.nonempty_labels() {
        let m = mu_region(p.region(i).unwrap(), d, opts)?;
        sum += m.value;
        var += m.stderr * m.stderr;
    }
    let gap = (sum - hemisphere_volume(d)).abs();
    let tol = if d <= 2 { 1e-9 } else { 4.0 * var.sqrt().max(1e-12) };
    Ok(gap <= tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn opts() -> McOpts {
        McOpts {
            seed: 7,
            samples: 200_000,
        }
    }

    #[test]
    fn hemisphere_volumes() {
        assert!((hemisphere_volume(1) - PI).abs() < 1e-12);
        assert!((hemisphere_volume(2) - 2.0 * PI).abs() < 1e-12);
        assert!((hemisphere_volume(3) - PI * PI).abs() < 1e-12);
        assert!((hemisphere_volume(4) - 4.0 * PI * PI / 3.0).abs() < 1e-12);
    }

    #[test]
    fn y3_region_measures() {
        let p = fixtures::partition_of(&fixtures::y3());
        // Halfplane region: half the hemisphere.
        let m3 = mu_region(p.region(3).unwrap(), 2, &opts()).unwrap();
        assert!((m3.value - PI).abs() < 1e-9, "{}", m3.value);
        // Quadrant region: a quarter.
        let m1 = mu_region(p.region(1).unwrap(), 2, &opts()).unwrap();
        assert!((m1.value - PI / 2.0).abs() < 1e-9);
        assert_eq!(m1.method, Method::ExactD2);
        assert_eq!(m1.stderr, 0.0);
    }

    #[test]
    fn d1_halfline_measure() {
        // The ray x > 0 in R^1 has arc measure pi/2.
        let cone = HomogeneousCone::from_inequalities(
            alloc::vec![HVector::from_ints(&[-1, 0]), HVector::from_ints(&[0, -1])],
            2,
        );
        let m = mu_region(&cone, 1, &opts()).unwrap();
        assert!((m.value - PI / 2.0).abs() < 1e-12);
        assert_eq!(m.method, Method::ExactD1);
    }

    #[test]
    fn sym_diff_basics() {
        let p = fixtures::partition_of(&fixtures::y3());
        let c = p.region(1).unwrap();
        let zero = sym_diff_measure(c, c, 2, &opts()).unwrap();
        assert!(zero.value.abs() < 1e-12);
        // Disjoint halfplanes x < 0 and x > 0 differ by the whole hemisphere.
        let left = HomogeneousCone::from_inequalities(
            alloc::vec![HVector::from_ints(&[-1, 0, 0]), HVector::from_ints(&[0, 1, 0])],
            3,
        );
        let right = HomogeneousCone::from_inequalities(
            alloc::vec![HVector::from_ints(&[-1, 0, 0]), HVector::from_ints(&[0, -1, 0])],
            3,
        );
        let m = sym_diff_measure(&left, &right, 2, &opts()).unwrap();
        assert!((m.value - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn distance_on_interval_partitions() {
        // Two-region cuts at 0 and at 1: each label contributes pi/4.
        let p = crate::atlas::d1_partition(2, &[1, 2], &[crate::exactgeom::rat(0)]).unwrap();
        let q = crate::atlas::d1_partition(2, &[1, 2], &[crate::exactgeom::rat(1)]).unwrap();
        let m = distance(&p, &q, &opts()).unwrap();
        assert!((m.value - PI / 2.0).abs() < 1e-9, "{}", m.value);
        let zero = distance(&p, &p, &opts()).unwrap();
        assert!(zero.value.abs() < 1e-12);
    }

    #[test]
    fn label_swap_distance_is_the_full_sphere() {
        let a = fixtures::two_halfspaces(2);
        let p = fixtures::partition_of(&a);
        let swapped = fixtures::partition_of(&a.relabel(&[2, 1]).unwrap());
        let m = distance(&p, &swapped, &opts()).unwrap();
        assert!((m.value - 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn totals_on_fixtures() {
        for a in [
            fixtures::ex1(),
            fixtures::parl(),
            fixtures::y3(),
            fixtures::pent(),
            fixtures::quad(),
        ] {
            let p = fixtures::partition_of(&a);
            assert!(total_measure_check(&p, &opts()).unwrap());
        }
    }

    #[test]
    fn monte_carlo_agrees_with_exact_d2() {
        let p = fixtures::partition_of(&fixtures::ex1());
        for i in 1..=4 {
            let exact = mu_region(p.region(i).unwrap(), 2, &opts()).unwrap();
            let mc = mc_mu_region(p.region(i).unwrap(), 2, &opts()).unwrap();
            assert!(
                (mc.value - exact.value).abs() <= 4.0 * mc.stderr,
                "region {i}: exact {} vs mc {} +- {}",
                exact.value,
                mc.value,
                mc.stderr
            );
        }
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let p = fixtures::partition_of(&fixtures::y3());
        let a = mc_mu_region(p.region(3).unwrap(), 2, &opts()).unwrap();
        let b = mc_mu_region(p.region(3).unwrap(), 2, &opts()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        let other = mc_mu_region(
            p.region(3).unwrap(),
            2,
            &McOpts {
                seed: 8,
                samples: 200_000,
            },
        )
        .unwrap();
        assert_ne!(a.value.to_bits(), other.value.to_bits());
    }

    #[test]
    fn two_region_distance_is_continuous_along_the_polar_path() {
        // Two-label normals on a path through the pole (1, 0, 0): the
        // distance between consecutive partitions is bounded by a fixed
        // multiple of the angle step, including across the pole itself.
        let opts = McOpts::default();
        let partition_at = |t: i64| {
            let c = HVector::new(alloc::vec![
                crate::exactgeom::ratio(t, 4),
                crate::exactgeom::rat(1),
                crate::exactgeom::rat(0),
            ]);
            let mut m = alloc::collections::BTreeMap::new();
            m.insert((1usize, 2usize), c);
            let a = crate::arrangement::Arrangement::new(2, 2, m).unwrap();
            crate::arrangement::project_pi(&a, &crate::arrangement::EnumLimits::default()).unwrap()
        };
        let angle = |t: i64| ((t as f64) / 4.0).atan();
        for t in -8..8 {
            let p = partition_at(t);
            let q = partition_at(t + 1);
            let gap = distance(&p, &q, &opts).unwrap().value;
            let step = (angle(t + 1) - angle(t)).abs();
            assert!(gap <= 5.0 * step + 1e-9, "t={t}: {gap} vs step {step}");
        }
    }

    #[test]
    fn d3_monte_carlo_halfspace() {
        // Half of the 3-hemisphere: volume pi^2 / 2.
        let c = HomogeneousCone::from_inequalities(
            alloc::vec![
                HVector::from_ints(&[-1, 0, 0, 0]),
                HVector::from_ints(&[0, 1, 0, 0]),
            ],
            4,
        );
        let m = mu_region(&c, 3, &opts()).unwrap();
        assert_eq!(m.method, Method::MonteCarlo);
        assert!((m.value - PI * PI / 2.0).abs() <= 4.0 * m.stderr);
    }
}
