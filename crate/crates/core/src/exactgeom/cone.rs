//! Closed convex polyhedral cones in H-form, with exact predicates.

use alloc::vec::Vec;
use num_traits::{Signed, Zero};

use super::{kernel_basis, mixed_feasible, rank, HVector};
use crate::error::Error;
use crate::Result;

/// A closed convex cone `{x : a.x <= 0 for all inequalities, b.x = 0 for all
/// equalities}` in R^{ambient_dim}. Always contains 0.
///
/// Values are immutable after construction; constraint edits go through the
/// consuming `with_*` builders, so derived quantities can never go stale.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousCone {
    inequalities: Vec<HVector>,
    equalities: Vec<HVector>,
    ambient_dim: usize,
}

impl HomogeneousCone {
    pub fn new(
        inequalities: Vec<HVector>,
        equalities: Vec<HVector>,
        ambient_dim: usize,
    ) -> Self {
        debug_assert!(inequalities
            .iter()
            .chain(&equalities)
            .all(|v| v.len() == ambient_dim));
        HomogeneousCone {
            inequalities,
            equalities,
            ambient_dim,
        }
    }

    /// The whole space (no constraints).
    pub fn full_space(ambient_dim: usize) -> Self {
        HomogeneousCone::new(Vec::new(), Vec::new(), ambient_dim)
    }

    pub fn from_inequalities(inequalities: Vec<HVector>, ambient_dim: usize) -> Self {
        HomogeneousCone::new(inequalities, Vec::new(), ambient_dim)
    }

    pub fn from_equalities(equalities: Vec<HVector>, ambient_dim: usize) -> Self {
        HomogeneousCone::new(Vec::new(), equalities, ambient_dim)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn inequalities(&self) -> &[HVector] {
        &self.inequalities
    }

    pub fn equalities(&self) -> &[HVector] {
        &self.equalities
    }

    pub fn with_inequality(mut self, a: HVector) -> Self {
        debug_assert_eq!(a.len(), self.ambient_dim);
        self.inequalities.push(a);
        self
    }

    pub fn with_equality(mut self, b: HVector) -> Self {
        debug_assert_eq!(b.len(), self.ambient_dim);
        self.equalities.push(b);
        self
    }

    /// Intersection: concatenation of the two constraint systems.
    pub fn intersect(&self, other: &HomogeneousCone) -> Result<HomogeneousCone> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut ineq = self.inequalities.clone();
        ineq.extend(other.inequalities.iter().cloned());
        let mut eq = self.equalities.clone();
        eq.extend(other.equalities.iter().cloned());
        Ok(HomogeneousCone::new(ineq, eq, self.ambient_dim))
    }

    /// Exact membership test.
    pub fn contains(&self, x: &HVector) -> Result<bool> {
        if x.len() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                got: x.len(),
            });
        }
        for a in &self.inequalities {
            if a.dot(x)?.is_positive() {
                return Ok(false);
            }
        }
        for b in &self.equalities {
            if !b.dot(x)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Indices of inequalities that hold with equality on the whole cone,
    /// each detected by one strict-feasibility probe against the rest.
    pub fn implicit_equalities(&self) -> Result<Vec<usize>> {
        let mut implicit = Vec::new();
        for i in 0..self.inequalities.len() {
            let target = &self.inequalities[i];
            let strict = [target];
            let weak: Vec<&HVector> = self
                .inequalities
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, a)| a)
                .collect();
            let eq: Vec<&HVector> = self.equalities.iter().collect();
            if mixed_feasible(&strict, &weak, &eq, self.ambient_dim)?.is_none() {
                implicit.push(i);
            }
        }
        Ok(implicit)
    }

    /// All constraint normals that vanish identically on the cone: the stated
    /// equalities plus the implicit ones.
    fn equality_span(&self) -> Result<Vec<HVector>> {
        let mut eqs = self.equalities.clone();
        for i in self.implicit_equalities()? {
            eqs.push(self.inequalities[i].clone());
        }
        Ok(eqs)
    }

    /// Dimension of the linear hull of the cone.
    pub fn cone_dim(&self) -> Result<usize> {
        let eqs = self.equality_span()?;
        Ok(self.ambient_dim - rank(&eqs)?)
    }

    /// Dimension of the lineality space `C intersect -C`, the null space of
    /// all constraint normals.
    pub fn lineality_dim(&self) -> Result<usize> {
        Ok(self.ambient_dim - rank(&self.all_normals())?)
    }

    fn all_normals(&self) -> Vec<HVector> {
        let mut v = self.inequalities.clone();
        v.extend(self.equalities.iter().cloned());
        v
    }

    /// Basis of the lineality space.
    pub fn lineality_basis(&self) -> Result<Vec<HVector>> {
        kernel_basis(&self.all_normals(), self.ambient_dim)
    }

    /// True when the cone is exactly `{0}`.
    pub fn is_trivial(&self) -> Result<bool> {
        Ok(self.cone_dim()? == 0)
    }

    /// True when the cone is a linear subspace.
    pub fn is_linear_subspace(&self) -> Result<bool> {
        Ok(self.lineality_dim()? == self.cone_dim()?)
    }

    /// Deterministic rational point in the relative interior: all implicit
    /// equalities hold, all remaining inequalities are strictly negative.
    /// Errors on the trivial cone.
    pub fn relint_point(&self) -> Result<HVector> {
        if self.is_trivial()? {
            return Err(Error::DegenerateCone);
        }
        let implicit = self.implicit_equalities()?;
        let mut eq: Vec<&HVector> = self.equalities.iter().collect();
        for &i in &implicit {
            eq.push(&self.inequalities[i]);
        }
        let strict: Vec<&HVector> = self
            .inequalities
            .iter()
            .enumerate()
            .filter(|(j, _)| !implicit.contains(j))
            .map(|(_, a)| a)
            .collect();
        if strict.is_empty() {
            // The cone is a linear subspace; take the first kernel basis
            // vector under the fixed pivot order.
            let eq_owned: Vec<HVector> = eq.into_iter().cloned().collect();
            let basis = kernel_basis(&eq_owned, self.ambient_dim)?;
            return basis.into_iter().next().ok_or(Error::DegenerateCone);
        }
        let point = mixed_feasible(&strict, &[], &eq, self.ambient_dim)?
            .ok_or_else(|| Error::Internal("relint probe infeasible".into()))?;
        // Membership in the strict sense is re-verified post hoc.
        for a in strict {
            debug_assert!(a.dot(&point)?.is_negative());
        }
        Ok(point)
    }

    /// True when `a.x <= 0` holds on the entire cone.
    pub fn valid_inequality(&self, a: &HVector) -> Result<bool> {
        let neg = a.neg();
        let strict = [&neg];
        let weak: Vec<&HVector> = self.inequalities.iter().collect();
        let eq: Vec<&HVector> = self.equalities.iter().collect();
        Ok(mixed_feasible(&strict, &weak, &eq, self.ambient_dim)?.is_none())
    }

    /// True when `other` is a subset of this cone.
    pub fn contains_cone(&self, other: &HomogeneousCone) -> Result<bool> {
        for a in &self.inequalities {
            if !other.valid_inequality(a)? {
                return Ok(false);
            }
        }
        for b in &self.equalities {
            if !other.valid_inequality(b)? || !other.valid_inequality(&b.neg())? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Exact set equality, by mutual containment.
    pub fn set_eq(&self, other: &HomogeneousCone) -> Result<bool> {
        Ok(self.contains_cone(other)? && other.contains_cone(self)?)
    }

    /// V-form generators: a spanning set `{+/- lineality basis} union
    /// {extreme rays modulo lineality}` whose conic hull is the cone.
    ///
    /// Minimal nonlineality faces are found by promoting subsets of the
    /// non-implicit inequalities to equalities and keeping the ones whose
    /// solution space sticks out of the lineality space by exactly one
    /// dimension.
    pub fn generators(&self) -> Result<Vec<HVector>> {
        let mut gens: Vec<HVector> = Vec::new();
        let lin = self.lineality_basis()?;
        let lin_dim = lin.len();
        for b in &lin {
            gens.push(b.clone());
            gens.push(b.neg());
        }
        if self.cone_dim()? == lin_dim {
            return Ok(gens);
        }
        let implicit = self.implicit_equalities()?;
        let base_eq: Vec<HVector> = {
            let mut v = self.equalities.clone();
            for &i in &implicit {
                v.push(self.inequalities[i].clone());
            }
            v
        };
        let free: Vec<usize> = (0..self.inequalities.len())
            .filter(|i| !implicit.contains(i))
            .collect();
        let nfree = free.len();
        let mut rays: Vec<HVector> = Vec::new();
        for mask in 0u64..(1u64 << nfree) {
            let mut eqs = base_eq.clone();
            for (bit, &i) in free.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    eqs.push(self.inequalities[i].clone());
                }
            }
            let kern = kernel_basis(&eqs, self.ambient_dim)?;
            if kern.len() != lin_dim + 1 {
                continue;
            }
            // Pick a kernel vector outside the lineality space.
            let mut lin_plus = lin.clone();
            let Some(candidate) = kern.into_iter().find(|v| {
                lin_plus.push(v.clone());
                let r = rank(&lin_plus).unwrap_or(0);
                lin_plus.pop();
                r == lin_dim + 1
            }) else {
                continue;
            };
            let oriented = if self.contains(&candidate)? {
                candidate
            } else {
                let neg = candidate.neg();
                if self.contains(&neg)? {
                    neg
                } else {
                    continue;
                }
            };
            let canon = oriented.primitive_integer();
            if !rays.iter().any(|r| r.proj_eq_positive(&canon)) {
                rays.push(canon);
            }
        }
        gens.extend(rays);
        Ok(gens)
    }
}
