//! Exact rational linear algebra, homogeneous cones, and strict-feasibility
//! LP. Every predicate in the crate bottoms out here; nothing in this module
//! ever rounds.
//!
//! Coordinates live in R^{d+1} with index 0 the lifting coordinate: the point
//! x in R^d lifts to the ray through (1, x), the upper hemisphere is x_0 > 0,
//! and the equator x_0 = 0 holds the directions at infinity. Normals and
//! points are kept projectively, as nonzero rational vectors up to positive
//! scaling, so that no predicate ever needs an irrational unit normalization.

mod cone;
mod linalg;
mod lp;

pub use cone::HomogeneousCone;
pub use linalg::det_sign;
pub use linalg::solve;
pub(crate) use linalg::{kernel_basis, rank};
pub(crate) use lp::mixed_feasible;

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::Result;

/// Exact rational scalar: arbitrary-precision numerator over a positive
/// arbitrary-precision denominator, always in lowest terms.
pub type Rat = num_rational::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for the rational n/d.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the on-disk rational convention: "p/q" with q > 0, or plain "p".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::InvalidInput(alloc::format!("bad integer {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den.is_zero() || den.is_negative() {
                return Err(Error::InvalidInput(alloc::format!(
                    "denominator must be positive in {s:?}"
                )));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Formats a rational in the on-disk convention ("p" or "p/q").
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// A point or normal of R^{d+1} in homogeneous coordinates.
///
/// Index 0 is the lifting coordinate. Two vectors are projectively equal when
/// one is a positive rational multiple of the other; a normal and its
/// negation describe the same hyperplane with opposite orientations.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HVector {
    coords: Vec<Rat>,
}

impl HVector {
    pub fn new(coords: Vec<Rat>) -> Self {
        HVector { coords }
    }

    /// Builds a vector from integer coordinates.
    pub fn from_ints(coords: &[i64]) -> Self {
        HVector::new(coords.iter().map(|&c| rat(c)).collect())
    }

    /// Number of coordinates (d + 1 for ambient dimension d).
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> &Rat {
        &self.coords[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Exact inner product. Errors on length mismatch.
    pub fn dot(&self, other: &HVector) -> Result<Rat> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        let mut acc = Rat::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            acc += a * b;
        }
        Ok(acc)
    }

    pub fn neg(&self) -> HVector {
        HVector::new(self.coords.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, s: &Rat) -> HVector {
        HVector::new(self.coords.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &HVector) -> Result<HVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        Ok(HVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        ))
    }

    /// The k-th standard basis vector of R^dim.
    pub fn basis(dim: usize, k: usize) -> HVector {
        let mut c = alloc::vec![Rat::zero(); dim];
        c[k] = Rat::from_integer(BigInt::from(1));
        HVector::new(c)
    }

    /// True when `other` is a positive rational multiple of `self`.
    pub fn proj_eq_positive(&self, other: &HVector) -> bool {
        if self.len() != other.len() || self.is_zero() || other.is_zero() {
            return false;
        }
        let mut scale: Option<Rat> = None;
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (true, false) | (false, true) => return false,
                (false, false) => {
                    let s = b / a;
                    if s.is_negative() || s.is_zero() {
                        return false;
                    }
                    match &scale {
                        None => scale = Some(s),
                        Some(prev) => {
                            if *prev != s {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }

    /// True when the two vectors span the same line (either sign of multiple).
    pub fn proj_eq(&self, other: &HVector) -> bool {
        self.proj_eq_positive(other) || self.proj_eq_positive(&other.neg())
    }

    /// Canonical representative of the line through this vector: integer
    /// coordinates with content 1 and first nonzero coordinate positive.
    pub fn canonical_line(&self) -> HVector {
        let mut v = self.primitive_integer();
        if let Some(first) = v.coords.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                v = v.neg();
            }
        }
        v
    }

    /// Clears denominators and divides by the content, preserving direction.
    pub fn primitive_integer(&self) -> HVector {
        use num_integer::Integer;
        let mut lcm = BigInt::from(1);
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for i in &ints {
            gcd = gcd.gcd(i);
        }
        if gcd.is_zero() {
            return self.clone();
        }
        HVector::new(
            ints.into_iter()
                .map(|i| Rat::from_integer(i / &gcd))
                .collect(),
        )
    }

    /// Floating-point image (used only for measures and rendering, never in
    /// predicates).
    pub fn to_f64(&self) -> Vec<f64> {
        self.coords
            .iter()
            .map(|c| {
                let n = c.numer().to_f64().unwrap_or(f64::NAN);
                let d = c.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            })
            .collect()
    }
}

impl fmt::Debug for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, ")")
    }
}

/// Sign of an exact quantity: -1, 0, or +1.
pub type Sign = i8;

/// Decides whether some x satisfies a.x < 0 for every normal in `normals`.
///
/// Decided exactly by maximizing t subject to a.x + t <= 0 and t <= 1; the
/// strict system is solvable iff the optimum is positive.
pub fn strict_feasible(normals: &[HVector], ambient_dim: usize) -> Result<bool> {
    for n in normals {
        if n.len() != ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: ambient_dim,
                got: n.len(),
            });
        }
    }
    let strict: Vec<&HVector> = normals.iter().collect();
    Ok(mixed_feasible(&strict, &[], &[], ambient_dim)?.is_some())
}

/// Exact sign of det(v_0, ..., v_d) for d+1 vectors of length d+1.
pub fn det_sign_checked(vectors: &[HVector]) -> Result<Sign> {
    let n = vectors.len();
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
    }
    Ok(det_sign(vectors))
}

/// Decides whether the conic hull of `points` equals the linear subspace `l`.
///
/// `l` must actually be a linear subspace and every point must lie in it; the
/// points positively span iff they span `l` linearly and some strictly
/// positive combination of them vanishes.
pub fn positively_spans(points: &[HVector], l: &HomogeneousCone) -> Result<bool> {
    if l.lineality_dim()? != l.cone_dim()? {
        return Err(Error::InvalidInput(
            "positively_spans target is not a linear subspace".to_string(),
        ));
    }
    for p in points {
        if !l.contains(p)? {
            return Err(Error::InvalidInput(
                "point outside the target subspace".to_string(),
            ));
        }
    }
    if points.is_empty() {
        return Ok(l.cone_dim()? == 0);
    }
    let dim = points[0].len();
    // Linear span must be all of l.
    if rank(points)? != l.cone_dim()? {
        return Ok(false);
    }
    // Zero must be a strictly positive combination: a lambda > 0 in the kernel
    // of the (d+1) x m point matrix. Rows of the kernel basis give the lambda
    // coordinates, so we ask for a kernel element with every row positive.
    let m = points.len();
    let rows: Vec<HVector> = (0..dim)
        .map(|k| HVector::new(points.iter().map(|p| p.coord(k).clone()).collect()))
        .collect();
    let kernel = kernel_basis(&rows, m)?;
    if kernel.is_empty() {
        return Ok(false);
    }
    let kdim = kernel.len();
    let coeff_rows: Vec<HVector> = (0..m)
        .map(|i| HVector::new(kernel.iter().map(|b| b.coord(i).clone()).collect()))
        .collect();
    let neg_rows: Vec<HVector> = coeff_rows.iter().map(|r| r.neg()).collect();
    let strict: Vec<&HVector> = neg_rows.iter().collect();
    Ok(mixed_feasible(&strict, &[], &[], kdim)?.is_some())
}

/// Exact membership of `point` in the conic hull of `generators`.
///
/// Farkas form: the point is outside iff some y has y.point > 0 and
/// y.g <= 0 for every generator g.
pub fn in_conic_hull(point: &HVector, generators: &[HVector]) -> Result<bool> {
    if point.is_zero() {
        return Ok(true);
    }
    let dim = point.len();
    let neg = point.neg();
    let strict = [&neg];
    let weak: Vec<&HVector> = generators.iter().collect();
    Ok(mixed_feasible(&strict, &weak, &[], dim)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parse_and_format_round_trip() {
        for s in ["3", "-7", "5/2", "-11/4", "0"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/-2").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn projective_equality_is_positive_scaling_only() {
        let a = HVector::from_ints(&[0, 1, -6]);
        let b = HVector::new(alloc::vec![rat(0), ratio(1, 2), rat(-3)]);
        assert!(a.proj_eq_positive(&b));
        assert!(!a.proj_eq_positive(&a.neg()));
        assert!(a.proj_eq(&a.neg()));
        assert!(!a.proj_eq_positive(&HVector::from_ints(&[0, 1, 6])));
    }

    #[test]
    fn canonical_line_normalizes_sign_and_content() {
        let a = HVector::new(alloc::vec![rat(0), ratio(-2, 3), rat(4)]);
        let c = a.canonical_line();
        assert_eq!(c, HVector::from_ints(&[0, 1, -6]));
        assert_eq!(a.neg().canonical_line(), c);
    }

    #[test]
    fn strict_feasible_trivial_cases() {
        // Empty system in R^3: any x works.
        assert!(strict_feasible(&[], 3).unwrap());
        // a.x < 0 and -a.x < 0 contradict.
        let a = HVector::from_ints(&[1, 0, 0]);
        assert!(!strict_feasible(&[a.clone(), a.neg()], 3).unwrap());
    }

    #[test]
    fn strict_feasible_ex1_source_one_region() {
        // Region of the EX1 arrangement whose tournament source is label 1:
        // witness is the lift of (-1, 1).
        let normals = alloc::vec![
            HVector::from_ints(&[0, 1, -6]),
            HVector::from_ints(&[0, 1, 0]),
            HVector::from_ints(&[0, 1, 0]),
            HVector::from_ints(&[-1, 0, 0]),
        ];
        let witness = HVector::from_ints(&[1, -1, 1]);
        for n in &normals {
            assert!(n.dot(&witness).unwrap().is_negative());
        }
        assert!(strict_feasible(&normals, 3).unwrap());
    }

    #[test]
    fn positively_spans_examples() {
        // Antipodal pair positively spans the z-axis.
        let z = HVector::from_ints(&[0, 0, 1]);
        let axis = HomogeneousCone::from_equalities(
            alloc::vec![HVector::from_ints(&[1, 0, 0]), HVector::from_ints(&[0, 1, 0])],
            3,
        );
        assert!(positively_spans(&[z.clone(), z.neg()], &axis).unwrap());
        assert!(!positively_spans(core::slice::from_ref(&z), &axis).unwrap());

        // Three vectors with a positive vanishing combination span the
        // equator plane.
        let plane =
            HomogeneousCone::from_equalities(alloc::vec![HVector::from_ints(&[1, 0, 0])], 3);
        let pts = alloc::vec![
            HVector::from_ints(&[0, 1, 0]),
            HVector::from_ints(&[0, 0, 1]),
            HVector::from_ints(&[0, -1, -1]),
        ];
        assert!(positively_spans(&pts, &plane).unwrap());
        // Without the closing vector the hull is only a quadrant of the plane.
        assert!(!positively_spans(&pts[..2], &plane).unwrap());
        // Points outside the subspace are an input error.
        let off = HVector::from_ints(&[1, 0, 0]);
        assert!(positively_spans(&[off], &plane).is_err());
    }

    #[test]
    fn conic_hull_membership() {
        let gens = alloc::vec![
            HVector::from_ints(&[1, 0, 0]),
            HVector::from_ints(&[0, 1, 0]),
        ];
        assert!(in_conic_hull(&HVector::from_ints(&[2, 3, 0]), &gens).unwrap());
        assert!(!in_conic_hull(&HVector::from_ints(&[1, -1, 0]), &gens).unwrap());
        assert!(!in_conic_hull(&HVector::from_ints(&[0, 0, 1]), &gens).unwrap());
        assert!(in_conic_hull(&HVector::from_ints(&[0, 0, 0]), &gens).unwrap());
    }
}
