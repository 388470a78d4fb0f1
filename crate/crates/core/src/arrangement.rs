//! Oriented central hyperplane arrangements and the partitions they carry.
//!
//! An arrangement stores one projective normal per unordered pair of labels,
//! with the convention that swapping the pair negates the normal. Each full
//! sign vector selects an open region of the affine chart; the region's sign
//! vector orients the complete graph on the labels, and the arrangement
//! carries a partition exactly when every nonempty region's tournament has a
//! source. The carried partition is proper when every label is the source of
//! some nonempty region.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::Error;
use crate::exactgeom::{mixed_feasible, HVector, HomogeneousCone, Sign};
use crate::Result;

/// Enumeration budget shared by region and face enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumLimits {
    /// Maximum number of hyperplanes that an enumeration may branch on.
    pub max_hyperplanes: usize,
}

impl Default for EnumLimits {
    fn default() -> Self {
        EnumLimits { max_hyperplanes: 24 }
    }
}

/// A central oriented hyperplane arrangement on labels 1..=n in R^{d+1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    n: usize,
    d: usize,
    /// Normals in pair order (1,2), (1,3), ..., (1,n), (2,3), ...
    normals: Vec<HVector>,
}

/// Index of the unordered pair {i, j} (1-based, i < j) in triangular order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    let i0 = i - 1;
    let j0 = j - 1;
    i0 * n - i0 * (i0 + 1) / 2 + (j0 - i0 - 1)
}

/// All unordered pairs (i, j) with 1 <= i < j <= n, in triangular order.
pub fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..=n).flat_map(move |i| (i + 1..=n).map(move |j| (i, j)))
}

impl Arrangement {
    /// Builds an arrangement from the map {i,j} -> normal with i < j.
    pub fn new(n: usize, d: usize, normals: BTreeMap<(usize, usize), HVector>) -> Result<Self> {
        if n == 0 || d == 0 {
            return Err(Error::InvalidInput("n and d must be positive".into()));
        }
        let expected = n * (n - 1) / 2;
        if normals.len() != expected {
            return Err(Error::InvalidInput(alloc::format!(
                "expected {expected} normals, got {}",
                normals.len()
            )));
        }
        let mut list = Vec::with_capacity(expected);
        for (i, j) in pairs(n) {
            let v = normals
                .get(&(i, j))
                .ok_or_else(|| Error::InvalidInput(alloc::format!("missing normal {i},{j}")))?;
            if v.len() != d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: d + 1,
                    got: v.len(),
                });
            }
            if v.is_zero() {
                return Err(Error::InvalidInput(alloc::format!("zero normal {i},{j}")));
            }
            list.push(v.clone());
        }
        Ok(Arrangement { n, d, normals: list })
    }

    /// Convenience constructor from integer normals in pair order.
    pub fn from_int_rows(n: usize, d: usize, rows: &[&[i64]]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for ((i, j), row) in pairs(n).zip(rows) {
            map.insert((i, j), HVector::from_ints(row));
        }
        Arrangement::new(n, d, map)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    /// The oriented normal of the ordered pair (i, j); `c_ji = -c_ij`.
    pub fn normal(&self, i: usize, j: usize) -> HVector {
        if i < j {
            self.normals[pair_index(self.n, i, j)].clone()
        } else {
            self.normals[pair_index(self.n, j, i)].neg()
        }
    }

    pub fn stored_normals(&self) -> impl Iterator<Item = ((usize, usize), &HVector)> {
        pairs(self.n).zip(self.normals.iter())
    }

    /// Replaces the normal of pair {i,j} (i < j), for fixture surgery.
    pub fn with_normal(mut self, i: usize, j: usize, v: HVector) -> Self {
        let idx = pair_index(self.n, i, j);
        self.normals[idx] = v;
        self
    }

    /// Applies a label permutation sigma (1-based), transforming normals with
    /// the sign flips required by the pair-order convention.
    pub fn relabel(&self, sigma: &[usize]) -> Result<Arrangement> {
        if sigma.len() != self.n {
            return Err(Error::InvalidInput("permutation length mismatch".into()));
        }
        let mut map = BTreeMap::new();
        for (i, j) in pairs(self.n) {
            // The new pair {sigma(i), sigma(j)} keeps its normal oriented
            // against the smaller new label.
            let (a, b) = (sigma[i - 1], sigma[j - 1]);
            let v = if a < b {
                self.normal(i, j)
            } else {
                self.normal(j, i)
            };
            map.insert((a.min(b), a.max(b)), v);
        }
        Arrangement::new(self.n, self.d, map)
    }

    fn check_cap(&self, limits: &EnumLimits) -> Result<()> {
        let m = self.normals.len();
        if m > limits.max_hyperplanes {
            return Err(Error::CapExceeded {
                hyperplanes: m,
                cap: limits.max_hyperplanes,
            });
        }
        Ok(())
    }
}

/// A full sign assignment on the pairs, `s_ij` for i < j, with the
/// symmetrized access `s_ji = -s_ij`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SignVector {
    n: usize,
    signs: Vec<Sign>,
}

impl SignVector {
    pub fn new(n: usize, signs: Vec<Sign>) -> Result<Self> {
        if signs.len() != n * (n - 1) / 2 {
            return Err(Error::InvalidInput("sign vector length mismatch".into()));
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(Error::InvalidInput("signs must be +1 or -1".into()));
        }
        Ok(SignVector { n, signs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `s_ij`, defined for any ordered pair of distinct labels.
    pub fn sign(&self, i: usize, j: usize) -> Sign {
        if i < j {
            self.signs[pair_index(self.n, i, j)]
        } else {
            -self.signs[pair_index(self.n, j, i)]
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), Sign)> + '_ {
        pairs(self.n).zip(self.signs.iter().copied())
    }

    pub fn negated(&self) -> SignVector {
        SignVector {
            n: self.n,
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

/// The orientation of the complete graph induced by a sign vector: the edge
/// {i, j} points i -> j exactly when `s_ij = +1`.
#[derive(Clone, Copy)]
pub struct Tournament<'a>(pub &'a SignVector);

impl Tournament<'_> {
    /// The unique vertex that is the head of no edge, when one exists. A
    /// complete graph admits at most one source.
    pub fn source(&self) -> Option<usize> {
        let s = self.0;
        let mut found = None;
        for i in 1..=s.n() {
            if (1..=s.n()).filter(|&j| j != i).all(|j| s.sign(i, j) == 1) {
                debug_assert!(found.is_none(), "two sources in a tournament");
                found = Some(i);
                if cfg!(not(debug_assertions)) {
                    break;
                }
            }
        }
        found
    }
}

/// The homogeneous normals carving the open region of sign vector `s`: the
/// oriented pair normals plus the chart normal keeping x_0 positive.
pub fn region_inequalities(a: &Arrangement, s: &SignVector) -> Result<Vec<HVector>> {
    if s.n() != a.n() {
        return Err(Error::InvalidInput(
            "sign vector/arrangement mismatch".into(),
        ));
    }
    let mut out = Vec::with_capacity(a.normals.len() + 1);
    for ((i, j), sign) in s.entries() {
        let c = a.normal(i, j);
        out.push(if sign == 1 { c } else { c.neg() });
    }
    out.push(HVector::basis(a.ambient_dim(), 0).neg());
    Ok(out)
}

/// Is the open region of `s` nonempty? Exact strict feasibility.
pub fn region_nonempty(a: &Arrangement, s: &SignVector) -> Result<bool> {
    let normals = region_inequalities(a, s)?;
    crate::exactgeom::strict_feasible(&normals, a.ambient_dim())
}

/// All sign vectors with a nonempty region, in ascending lexicographic order
/// of their entry vectors.
///
/// Depth-first assignment over the pairs with strict-feasibility pruning of
/// every partial prefix, so the cost tracks the true cell count rather than
/// 2^m.
pub fn enumerate_nonempty_regions(
    a: &Arrangement,
    limits: &EnumLimits,
) -> Result<Vec<SignVector>> {
    a.check_cap(limits)?;
    let m = a.normals.len();
    let dim = a.ambient_dim();
    let mut out = Vec::new();
    let mut prefix: Vec<Sign> = Vec::with_capacity(m);
    let mut stack: Vec<HVector> = alloc::vec![HVector::basis(dim, 0).neg()];

    fn dfs(
        a: &Arrangement,
        k: usize,
        prefix: &mut Vec<Sign>,
        stack: &mut Vec<HVector>,
        out: &mut Vec<SignVector>,
    ) -> Result<()> {
        let dim = a.ambient_dim();
        let strict: Vec<&HVector> = stack.iter().collect();
        if mixed_feasible(&strict, &[], &[], dim)?.is_none() {
            return Ok(());
        }
        if k == a.normals.len() {
            out.push(SignVector::new(a.n(), prefix.clone())?);
            return Ok(());
        }
        for sign in [-1i8, 1i8] {
            let c = &a.normals[k];
            stack.push(if sign == 1 { c.clone() } else { c.neg() });
            prefix.push(sign);
            dfs(a, k + 1, prefix, stack, out)?;
            prefix.pop();
            stack.pop();
        }
        Ok(())
    }

    dfs(a, 0, &mut prefix, &mut stack, &mut out)?;
    out.sort();
    Ok(out)
}

/// Outcome of the carrying test, with a witness for each verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CarryVerdict {
    /// Every nonempty region has a source and every label is some region's
    /// source.
    CarriesProper,
    /// Every nonempty region has a source but the listed labels are not; the
    /// carried partition has those regions empty.
    CarriesNonProper { empty_labels: Vec<usize> },
    /// Some nonempty region has a sourceless tournament.
    DoesNotCarry { witness: SignVector },
}

impl CarryVerdict {
    pub fn carries(&self) -> bool {
        !matches!(self, CarryVerdict::DoesNotCarry { .. })
    }
}

/// Decides whether the arrangement carries a partition, and whether that
/// partition is proper.
pub fn carries(a: &Arrangement, limits: &EnumLimits) -> Result<CarryVerdict> {
    let cells = enumerate_nonempty_regions(a, limits)?;
    let mut sourced = alloc::vec![false; a.n() + 1];
    for s in &cells {
        match Tournament(s).source() {
            Some(i) => sourced[i] = true,
            None => return Ok(CarryVerdict::DoesNotCarry { witness: s.clone() }),
        }
    }
    let empty: Vec<usize> = (1..=a.n()).filter(|&i| !sourced[i]).collect();
    if empty.is_empty() {
        Ok(CarryVerdict::CarriesProper)
    } else {
        Ok(CarryVerdict::CarriesNonProper { empty_labels: empty })
    }
}

/// A possibly non-proper partition in its spherical homogeneous form: one
/// closed region cone per label (None marks an empty region), each cone lying
/// in the upper halfspace. The extra lower-halfspace region is implicit.
#[derive(Clone, Debug)]
pub struct Partition {
    n: usize,
    d: usize,
    regions: Vec<Option<HomogeneousCone>>,
    provenance: Option<Arrangement>,
}

impl Partition {
    /// Assembles a partition from prebuilt region cones. The caller vouches
    /// for the covering property; arrangements that carry are the certified
    /// route here.
    pub fn from_region_cones(
        n: usize,
        d: usize,
        regions: Vec<Option<HomogeneousCone>>,
        provenance: Option<Arrangement>,
    ) -> Result<Self> {
        if regions.len() != n {
            return Err(Error::InvalidInput("region count mismatch".into()));
        }
        for c in regions.iter().flatten() {
            if c.ambient_dim() != d + 1 {
                return Err(Error::DimensionMismatch {
                    expected: d + 1,
                    got: c.ambient_dim(),
                });
            }
        }
        Ok(Partition {
            n,
            d,
            regions,
            provenance,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    pub fn provenance(&self) -> Option<&Arrangement> {
        self.provenance.as_ref()
    }

    /// The region cone of label i (1-based), or None when the region is
    /// empty.
    pub fn region(&self, i: usize) -> Option<&HomogeneousCone> {
        self.regions[i - 1].as_ref()
    }

    pub fn nonempty_labels(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&i| self.regions[i - 1].is_some())
            .collect()
    }

    pub fn is_proper(&self) -> bool {
        self.regions.iter().all(|r| r.is_some())
    }

    /// The cone of the implicit extra region: the closed lower halfspace.
    pub fn infinity_cone(&self) -> HomogeneousCone {
        HomogeneousCone::from_inequalities(
            alloc::vec![HVector::basis(self.ambient_dim(), 0)],
            self.ambient_dim(),
        )
    }

    /// Distinct hyperplanes touching the partition: the pair normals when an
    /// arrangement is attached, otherwise every region constraint, plus the
    /// equator. Canonicalized per line and deduplicated.
    pub fn hyperplanes(&self) -> Vec<HVector> {
        let dim = self.ambient_dim();
        let mut seen: Vec<HVector> = Vec::new();
        let mut push = |v: HVector| {
            if v.is_zero() {
                return;
            }
            let c = v.canonical_line();
            if !seen.contains(&c) {
                seen.push(c);
            }
        };
        match &self.provenance {
            Some(a) => {
                for (_, v) in a.stored_normals() {
                    push(v.clone());
                }
            }
            None => {
                for cone in self.regions.iter().flatten() {
                    for v in cone.inequalities() {
                        push(v.clone());
                    }
                    for v in cone.equalities() {
                        push(v.clone());
                    }
                }
            }
        }
        push(HVector::basis(dim, 0));
        seen
    }
}

/// Projects a carrying arrangement to the partition it carries.
///
/// Region i gets the closed cone `{x_0 >= 0, c_ij . x <= 0 for all j}`;
/// labels whose open region is infeasible become empty regions. Errors when
/// the arrangement does not carry.
pub fn project_pi(a: &Arrangement, limits: &EnumLimits) -> Result<Partition> {
    let verdict = carries(a, limits)?;
    if let CarryVerdict::DoesNotCarry { witness } = verdict {
        return Err(Error::ContractViolation(alloc::format!(
            "arrangement does not carry a partition (sourceless cell {:?})",
            witness.entries().collect::<Vec<_>>()
        )));
    }
    let dim = a.ambient_dim();
    let mut regions = Vec::with_capacity(a.n());
    for i in 1..=a.n() {
        let mut normals = Vec::with_capacity(a.n());
        for j in 1..=a.n() {
            if j != i {
                normals.push(a.normal(i, j));
            }
        }
        normals.push(HVector::basis(dim, 0).neg());
        let open_nonempty = crate::exactgeom::strict_feasible(&normals, dim)?;
        if open_nonempty {
            regions.push(Some(HomogeneousCone::from_inequalities(normals, dim)));
        } else {
            regions.push(None);
        }
    }
    Partition::from_region_cones(a.n(), a.d(), regions, Some(a.clone()))
}
