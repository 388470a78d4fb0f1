//! The realization constraint system for node assignments, cone facet
//! enumeration, the cone-tiling check, and reconstruction of a partition
//! from an admissible assignment.
//!
//! A node assignment maps every node of a reference system to a candidate
//! vector, treated projectively (nonzero, up to positive scaling). The
//! assignment realizes a partition of the same combinatorial type when the
//! basis frames keep their reference determinant signs, the flat frames stay
//! degenerate, nodes at infinity stay on the equator, the rest keep positive
//! lifting coordinate, and some generic vector lies in the interior of
//! exactly one of the d-cell hulls. The doubled-angle assignment on the
//! pointed 5-partition passes every sign condition yet double-covers the
//! hemisphere; only the last condition rejects it.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::arrangement::{EnumLimits, Partition};
use crate::error::Error;
use crate::exactgeom::{det_sign, rank, HVector, HomogeneousCone, Rat, Sign};
use crate::faces::FaceIndex;
use crate::nodes::{
    comb_equiv, comb_type, enumerate_frames, frame_signs_with, Analysis, NodeId,
};
use crate::Result;

/// Candidate vectors for every node of a reference node system.
#[derive(Clone, Debug, Default)]
pub struct NodeAssignment {
    vectors: BTreeMap<NodeId, HVector>,
}

impl NodeAssignment {
    pub fn new(vectors: BTreeMap<NodeId, HVector>) -> Self {
        NodeAssignment { vectors }
    }

    /// The identity assignment of a node system.
    pub fn identity(ns: &crate::nodes::NodeSystem) -> Self {
        let mut vectors = BTreeMap::new();
        for id in ns.ids() {
            vectors.insert(id.clone(), ns.vector(&id).unwrap().clone());
        }
        NodeAssignment { vectors }
    }

    pub fn insert(&mut self, id: NodeId, v: HVector) {
        self.vectors.insert(id, v);
    }

    pub fn vector(&self, id: &NodeId) -> Option<&HVector> {
        self.vectors.get(id)
    }

    pub fn vectors(&self) -> &BTreeMap<NodeId, HVector> {
        &self.vectors
    }
}

/// Pass/fail of one condition with a short witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondResult {
    pub passed: bool,
    pub witness: Option<String>,
}

impl CondResult {
    fn pass() -> Self {
        CondResult {
            passed: true,
            witness: None,
        }
    }

    fn fail(witness: String) -> Self {
        CondResult {
            passed: false,
            witness: Some(witness),
        }
    }
}

/// The outcome of checking an assignment against the constraint system.
#[derive(Clone, Debug)]
pub struct ConstraintReport {
    /// All assigned vectors nonzero (projective stand-in for normalization).
    pub nonzero: CondResult,
    /// Basis frames keep the reference determinant sign.
    pub basis_signs: CondResult,
    /// Flat frames stay degenerate.
    pub flats: CondResult,
    /// Nodes at infinity stay on the equator.
    pub at_infinity: CondResult,
    /// All other nodes keep a positive lifting coordinate.
    pub interior: CondResult,
    /// A generic vector in the interior of exactly one d-cell hull.
    pub g_condition: CondResult,
    pub generic_g: Option<HVector>,
    pub cones_containing_g: Option<usize>,
}

impl ConstraintReport {
    pub fn passed(&self) -> bool {
        self.nonzero.passed
            && self.basis_signs.passed
            && self.flats.passed
            && self.at_infinity.passed
            && self.interior.passed
            && self.g_condition.passed
    }
}

/// One facet of a cone given by generators.
#[derive(Clone, Debug)]
pub struct Facet {
    /// Oriented so that `normal . x <= 0` holds on the cone.
    pub normal: HVector,
    /// Indices of the generators lying on the facet.
    pub on: Vec<usize>,
}

/// Facet description of the conic hull of `generators`.
#[derive(Clone, Debug)]
pub struct FacetEnumeration {
    /// Linear dimension of the hull.
    pub dim: usize,
    /// Facets; empty when the hull is not full-dimensional.
    pub facets: Vec<Facet>,
}

impl FacetEnumeration {
    /// The hull as an H-form cone; only valid when full-dimensional.
    pub fn h_cone(&self, ambient_dim: usize) -> HomogeneousCone {
        HomogeneousCone::from_inequalities(
            self.facets.iter().map(|f| f.normal.clone()).collect(),
            ambient_dim,
        )
    }

    /// Strict interior membership via the facet normals.
    pub fn strictly_inside(&self, ambient_dim: usize, x: &HVector) -> Result<bool> {
        if self.dim != ambient_dim {
            return Ok(false);
        }
        for f in &self.facets {
            if !f.normal.dot(x)?.lt(&crate::exactgeom::rat(0)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Enumerates the facets of the conic hull of `generators` by scanning the
/// d-subsets that span a hyperplane with every generator weakly on one side.
/// Degenerate (lower-dimensional) generator sets report their dimension and
/// no facets.
pub fn cone_facets(generators: &[HVector]) -> Result<FacetEnumeration> {
    if generators.is_empty() {
        return Ok(FacetEnumeration {
            dim: 0,
            facets: Vec::new(),
        });
    }
    let ambient = generators[0].len();
    let dim = rank(generators)?;
    if dim < ambient {
        return Ok(FacetEnumeration {
            dim,
            facets: Vec::new(),
        });
    }
    let d = ambient - 1;
    let mut subset = alloc::vec![0usize; d];
    let mut facets: Vec<Facet> = Vec::new();
    let mut seen: BTreeSet<HVector> = BTreeSet::new();

    fn choose(
        generators: &[HVector],
        ambient: usize,
        start: usize,
        slot: usize,
        subset: &mut Vec<usize>,
        seen: &mut BTreeSet<HVector>,
        facets: &mut Vec<Facet>,
    ) -> Result<()> {
        let d = ambient - 1;
        if slot == d {
            let rows: Vec<HVector> = subset.iter().map(|&i| generators[i].clone()).collect();
            if rank(&rows)? != d {
                return Ok(());
            }
            let kernel = crate::exactgeom::kernel_basis(&rows, ambient)?;
            if kernel.len() != 1 {
                return Ok(());
            }
            let mut normal = kernel[0].primitive_integer();
            let mut has_neg = false;
            let mut has_pos = false;
            for g in generators {
                let s = normal.dot(g)?;
                if s.lt(&crate::exactgeom::rat(0)) {
                    has_neg = true;
                } else if s.gt(&crate::exactgeom::rat(0)) {
                    has_pos = true;
                }
            }
            if has_neg && has_pos {
                return Ok(());
            }
            if has_pos {
                normal = normal.neg();
            }
            let canon = normal.canonical_line();
            if seen.contains(&canon) {
                return Ok(());
            }
            seen.insert(canon);
            let mut on = Vec::new();
            for (i, g) in generators.iter().enumerate() {
                if normal.dot(g)?.eq(&crate::exactgeom::rat(0)) {
                    on.push(i);
                }
            }
            facets.push(Facet { normal, on });
            return Ok(());
        }
        for i in start..generators.len() {
            subset[slot] = i;
            choose(generators, ambient, i + 1, slot + 1, subset, seen, facets)?;
        }
        Ok(())
    }

    choose(
        generators,
        ambient,
        0,
        0,
        &mut subset,
        &mut seen,
        &mut facets,
    )?;
    facets.sort_by(|a, b| {
        a.normal
            .canonical_line()
            .coords()
            .cmp(b.normal.canonical_line().coords())
    });
    Ok(FacetEnumeration { dim: ambient, facets })
}

fn infinity_node_ids(an: &Analysis) -> BTreeSet<NodeId> {
    let mut out = BTreeSet::new();
    for (idx, f) in an.poset.faces() {
        if f.half_linear && f.at_infinity {
            out.insert(NodeId::Face(idx.clone()));
        }
    }
    // The minimal face of a non-essential partition lies on the equator, so
    // its whole tuple is at infinity.
    for k in 0..an.nodes.minimal_nodes().len() {
        out.insert(NodeId::Minimal(k));
    }
    out
}

/// The d-dimensional cells of the complex with their node lists, in
/// deterministic order.
fn d_cells(an: &Analysis) -> Vec<(String, Vec<NodeId>)> {
    an.pn
        .cells_of_dim(an.pn.d() as i64)
        .map(|c| (c.key(), c.nodes.iter().cloned().collect()))
        .collect()
}

struct GDraw {
    rng: rand_chacha::ChaCha8Rng,
    dim: usize,
}

impl GDraw {
    fn new(seed: u64, dim: usize) -> Self {
        GDraw {
            rng: rand_chacha::ChaCha8Rng::seed_from_u64(seed),
            dim,
        }
    }

    /// Random integer vector with positive lifting coordinate and entries
    /// bounded by 2^20.
    fn next(&mut self) -> HVector {
        let mut coords = Vec::with_capacity(self.dim);
        let first = 1 + (self.rng.next_u64() % (1 << 20)) as i64;
        coords.push(first);
        for _ in 1..self.dim {
            let raw = (self.rng.next_u64() % (1 << 21)) as i64;
            coords.push(raw - (1 << 20));
        }
        HVector::from_ints(&coords)
    }
}

/// Default number of trial vectors for the generic-vector searches.
pub const DEFAULT_G_TRIALS: usize = 256;

/// Checks a node assignment against the realization constraints of the
/// reference partition and node system.
pub fn check_constraints(
    p: &Partition,
    an: &Analysis,
    x: &NodeAssignment,
    seed: u64,
    trials: usize,
) -> Result<ConstraintReport> {
    let dim = p.ambient_dim();
    // Every node needs exactly one vector of the right shape.
    for id in an.nodes.ids() {
        match x.vector(&id) {
            None => {
                return Err(Error::InvalidInput(alloc::format!(
                    "assignment misses node {id}"
                )))
            }
            Some(v) if v.len() != dim => {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.len(),
                })
            }
            _ => {}
        }
    }

    let mut nonzero = CondResult::pass();
    for id in an.nodes.ids() {
        if x.vector(&id).unwrap().is_zero() {
            nonzero = CondResult::fail(alloc::format!("node {id} assigned the zero vector"));
            break;
        }
    }

    // Reference and candidate frame signs.
    let frames = enumerate_frames(&an.pn);
    let ref_signs = frame_signs_with(&an.pn, &frames, |id| {
        an.nodes
            .vector(id)
            .cloned()
            .ok_or_else(|| Error::Internal(alloc::format!("missing node {id}")))
    })?;
    let cand_signs = frame_signs_with(&an.pn, &frames, |id| {
        x.vector(id)
            .cloned()
            .ok_or_else(|| Error::Internal(alloc::format!("missing assignment {id}")))
    })?;
    let mut basis_signs = CondResult::pass();
    let mut flats = CondResult::pass();
    for frame in &frames {
        let key = frame.key(&an.pn);
        let r: Sign = ref_signs[&key];
        let c: Sign = cand_signs[&key];
        if r == 0 {
            if c != 0 && flats.passed {
                flats = CondResult::fail(alloc::format!("flat frame {key} became independent"));
            }
        } else if c != r && basis_signs.passed {
            basis_signs = CondResult::fail(alloc::format!(
                "basis frame {key} has sign {c}, expected {r}"
            ));
        }
    }

    let infinity_ids = infinity_node_ids(an);
    let mut at_infinity = CondResult::pass();
    let mut interior = CondResult::pass();
    for id in an.nodes.ids() {
        let v = x.vector(&id).unwrap();
        let first = v.coord(0);
        if infinity_ids.contains(&id) {
            if !first.eq(&crate::exactgeom::rat(0)) && at_infinity.passed {
                at_infinity =
                    CondResult::fail(alloc::format!("node {id} left the equator"));
            }
        } else if !first.gt(&crate::exactgeom::rat(0)) && interior.passed {
            interior = CondResult::fail(alloc::format!(
                "node {id} lost its positive lifting coordinate"
            ));
        }
    }

    // Generic-vector search over the d-cell hulls.
    let cells = d_cells(an);
    let mut hulls = Vec::new();
    for (_, nodes) in &cells {
        let gens: Vec<HVector> = nodes
            .iter()
            .map(|id| x.vector(id).unwrap().clone())
            .collect();
        hulls.push((cone_facets(&gens)?, gens));
    }
    // Genericity certificates: no vanishing determinant against any
    // hyperplane-spanning d-subset of co-cellular nodes.
    let mut subsets: BTreeSet<Vec<NodeId>> = BTreeSet::new();
    let d = p.d();
    for (_, nodes) in &cells {
        let m = nodes.len();
        let mut pick = alloc::vec![0usize; d];
        fn rec(
            nodes: &[NodeId],
            start: usize,
            slot: usize,
            d: usize,
            pick: &mut Vec<usize>,
            out: &mut BTreeSet<Vec<NodeId>>,
        ) {
            if slot == d {
                let mut s: Vec<NodeId> = pick.iter().map(|&i| nodes[i].clone()).collect();
                s.sort();
                out.insert(s);
                return;
            }
            for i in start..nodes.len() {
                pick[slot] = i;
                rec(nodes, i + 1, slot + 1, d, pick, out);
            }
        }
        rec(nodes, 0, 0, d.min(m), &mut pick, &mut subsets);
    }
    let spanning: Vec<Vec<HVector>> = subsets
        .iter()
        .map(|ids| {
            ids.iter()
                .map(|id| x.vector(id).unwrap().clone())
                .collect::<Vec<_>>()
        })
        .filter(|vs: &Vec<HVector>| vs.len() == d && rank(vs).unwrap_or(0) == d)
        .collect();

    let mut draw = GDraw::new(seed, dim);
    let mut g_condition = CondResult::fail("no generic trial vector found".into());
    let mut generic_g = None;
    let mut cones_containing_g = None;
    for _ in 0..trials {
        let g = draw.next();
        let mut generic = true;
        for sub in &spanning {
            let mut mat = alloc::vec![g.clone()];
            mat.extend(sub.iter().cloned());
            if det_sign(&mat) == 0 {
                generic = false;
                break;
            }
        }
        if !generic {
            continue;
        }
        let mut count = 0usize;
        for (facets, _) in &hulls {
            if facets.strictly_inside(dim, &g)? {
                count += 1;
            }
        }
        if generic_g.is_none() {
            generic_g = Some(g.clone());
            cones_containing_g = Some(count);
        }
        if count == 1 {
            generic_g = Some(g);
            cones_containing_g = Some(1);
            g_condition = CondResult::pass();
            break;
        } else {
            g_condition = CondResult::fail(alloc::format!(
                "generic vector lies in {count} cell hull interiors"
            ));
        }
    }

    Ok(ConstraintReport {
        nonzero,
        basis_signs,
        flats,
        at_infinity,
        interior,
        g_condition,
        generic_g,
        cones_containing_g,
    })
}

/// A sparse monomial: coefficient times a product of powers of named
/// variables.
#[derive(Clone, Debug)]
pub struct Monomial {
    pub coef: Rat,
    pub powers: BTreeMap<String, u32>,
}

/// A polynomial as a list of monomials.
#[derive(Clone, Debug, Default)]
pub struct Poly {
    pub monomials: Vec<Monomial>,
}

impl Poly {
    pub fn eval(&self, values: &BTreeMap<String, Rat>) -> Result<Rat> {
        let mut total = crate::exactgeom::rat(0);
        for m in &self.monomials {
            let mut term = m.coef.clone();
            for (var, pow) in &m.powers {
                let v = values
                    .get(var)
                    .ok_or_else(|| Error::InvalidInput(alloc::format!("unbound variable {var}")))?;
                for _ in 0..*pow {
                    term *= v;
                }
            }
            total += term;
        }
        Ok(total)
    }
}

/// A labeled polynomial constraint.
#[derive(Clone, Debug)]
pub struct LabeledPoly {
    pub label: String,
    pub poly: Poly,
}

/// One d-cell entry of the generic-vector block.
#[derive(Clone, Debug)]
pub struct GBlockCell {
    pub cell: String,
    pub nodes: Vec<NodeId>,
}

/// The exported realization system: polynomial equations and strict
/// inequalities in the node coordinates, plus the generic-vector block.
///
/// Assignments are treated projectively, so the unit normalizations are kept
/// in their own block: they pin representatives without changing the
/// semialgebraic content and take no part in the sign checks.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    pub variables: Vec<String>,
    pub unit_norms: Vec<LabeledPoly>,
    pub equalities: Vec<LabeledPoly>,
    pub strict_inequalities: Vec<LabeledPoly>,
    pub g_block: Vec<GBlockCell>,
}

fn var_name(id: &NodeId, coord: usize) -> String {
    alloc::format!("x_{}_{coord}", id.canonical_string())
}

/// Signed permutation expansion of det(x_{n_0}, ..., x_{n_d}), with sign
/// read off the inversion count of each permutation.
fn det_poly(nodes: &[NodeId], scale: Sign) -> Poly {
    let n = nodes.len();
    let mut monomials = Vec::new();
    fn rec(
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        nodes: &[NodeId],
        scale: Sign,
        out: &mut Vec<Monomial>,
    ) {
        if perm.len() == n {
            let mut inversions = 0usize;
            for i in 0..n {
                for j in i + 1..n {
                    if perm[i] > perm[j] {
                        inversions += 1;
                    }
                }
            }
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            let mut powers: BTreeMap<String, u32> = BTreeMap::new();
            for (row, &col) in perm.iter().enumerate() {
                *powers.entry(var_name(&nodes[row], col)).or_insert(0) += 1;
            }
            out.push(Monomial {
                coef: crate::exactgeom::rat(sign * scale as i64),
                powers,
            });
            return;
        }
        for col in 0..n {
            if !used[col] {
                used[col] = true;
                perm.push(col);
                rec(n, perm, used, nodes, scale, out);
                perm.pop();
                used[col] = false;
            }
        }
    }
    let mut perm = Vec::with_capacity(n);
    let mut used = alloc::vec![false; n];
    rec(n, &mut perm, &mut used, nodes, scale, &mut monomials);
    Poly { monomials }
}

/// Exports the realization system of a partition with its reference node
/// system: flat equations, equator equations, oriented basis inequalities,
/// positivity of interior lifting coordinates, unit normalizations, and the
/// generic-vector block over the d-cells. Variable order follows the
/// canonical node order.
pub fn export_constraints(p: &Partition, an: &Analysis) -> Result<ConstraintSystem> {
    let dim = p.ambient_dim();
    let mut variables = Vec::new();
    for id in an.nodes.ids() {
        for k in 0..dim {
            variables.push(var_name(&id, k));
        }
    }

    let mut unit_norms = Vec::new();
    for id in an.nodes.ids() {
        let mut monomials = Vec::new();
        for k in 0..dim {
            let mut powers = BTreeMap::new();
            powers.insert(var_name(&id, k), 2);
            monomials.push(Monomial {
                coef: crate::exactgeom::rat(1),
                powers,
            });
        }
        monomials.push(Monomial {
            coef: crate::exactgeom::rat(-1),
            powers: BTreeMap::new(),
        });
        unit_norms.push(LabeledPoly {
            label: alloc::format!("unit:{id}"),
            poly: Poly { monomials },
        });
    }

    let frames = enumerate_frames(&an.pn);
    let ref_signs = frame_signs_with(&an.pn, &frames, |id| {
        an.nodes
            .vector(id)
            .cloned()
            .ok_or_else(|| Error::Internal(alloc::format!("missing node {id}")))
    })?;

    let mut equalities = Vec::new();
    let mut strict_inequalities = Vec::new();
    let mut sorted_frames: Vec<&crate::nodes::NodeFrame> = frames.iter().collect();
    sorted_frames.sort_by_key(|f| f.key(&an.pn));
    for frame in sorted_frames {
        let key = frame.key(&an.pn);
        let r = ref_signs[&key];
        if r == 0 {
            equalities.push(LabeledPoly {
                label: alloc::format!("flat:{key}"),
                poly: det_poly(&frame.nodes, 1),
            });
        } else {
            strict_inequalities.push(LabeledPoly {
                label: alloc::format!("basis:{key}"),
                poly: det_poly(&frame.nodes, r),
            });
        }
    }

    let infinity_ids = infinity_node_ids(an);
    for id in an.nodes.ids() {
        let mut powers = BTreeMap::new();
        powers.insert(var_name(&id, 0), 1);
        let poly = Poly {
            monomials: alloc::vec![Monomial {
                coef: crate::exactgeom::rat(1),
                powers,
            }],
        };
        if infinity_ids.contains(&id) {
            equalities.push(LabeledPoly {
                label: alloc::format!("equator:{id}"),
                poly,
            });
        } else {
            strict_inequalities.push(LabeledPoly {
                label: alloc::format!("lift:{id}"),
                poly,
            });
        }
    }

    let g_block = d_cells(an)
        .into_iter()
        .map(|(cell, nodes)| GBlockCell { cell, nodes })
        .collect();

    Ok(ConstraintSystem {
        variables,
        unit_norms,
        equalities,
        strict_inequalities,
        g_block,
    })
}

/// Values binding the system variables to an assignment's coordinates.
pub fn assignment_values(
    an: &Analysis,
    x: &NodeAssignment,
) -> Result<BTreeMap<String, Rat>> {
    let mut values = BTreeMap::new();
    for id in an.nodes.ids() {
        let v = x
            .vector(&id)
            .ok_or_else(|| Error::InvalidInput(alloc::format!("assignment misses node {id}")))?;
        for (k, c) in v.coords().iter().enumerate() {
            values.insert(var_name(&id, k), c.clone());
        }
    }
    Ok(values)
}

/// Verdict of the cone-tiling test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FzVerdict {
    Tiles,
    NotTiles,
    /// The trial budget produced no generic vector; not a refutation.
    Indeterminate,
}

/// Outcome of [`fz_check`] with diagnostics.
#[derive(Clone, Debug)]
pub struct FzCheck {
    pub verdict: FzVerdict,
    pub detail: String,
    pub generic_g: Option<HVector>,
    pub cones_containing_g: Option<usize>,
}

/// Checks whether full-dimensional cones (given by generators) tile the
/// ambient cone: some generic vector lies in the interior of exactly one
/// cone, and every facet not on the ambient boundary is exactly covered by
/// faces of the neighboring cones.
pub fn fz_check(
    cones: &[Vec<HVector>],
    ambient: &HomogeneousCone,
    seed: u64,
    trials: usize,
) -> Result<FzCheck> {
    let dim = ambient.ambient_dim();
    let mut facet_enums = Vec::new();
    for (k, gens) in cones.iter().enumerate() {
        for g in gens {
            if !ambient.contains(g)? {
                return Err(Error::InvalidInput(alloc::format!(
                    "generator of cone {k} leaves the ambient cone"
                )));
            }
        }
        let fe = cone_facets(gens)?;
        if fe.dim != dim {
            return Ok(FzCheck {
                verdict: FzVerdict::NotTiles,
                detail: alloc::format!("cone {k} has dimension {} < {dim}", fe.dim),
                generic_g: None,
                cones_containing_g: None,
            });
        }
        facet_enums.push(fe);
    }
    let h_cones: Vec<HomogeneousCone> = facet_enums.iter().map(|fe| fe.h_cone(dim)).collect();

    // Facet matching: across every generic point of every wall not on the
    // ambient boundary, the cones must cover both sides equally. A cone
    // whose interior contains the point covers both; a cone with the point
    // on its boundary covers the side its facet normal points away from.
    // Gaps and one-sided overlaps fail here; the Y-shaped families where one
    // wall of a region is split among several neighbors pass.
    let ambient_implicit = ambient.implicit_equalities()?;
    let mut walls: Vec<HVector> = Vec::new();
    for fe in &facet_enums {
        for f in &fe.facets {
            let c = f.normal.canonical_line();
            if !walls.contains(&c) {
                walls.push(c);
            }
        }
    }
    let cells = crate::faces::covector_cells(&walls, dim)?;
    for (i, fe) in facet_enums.iter().enumerate() {
        'facet: for facet in &fe.facets {
            // Skip facets lying in the ambient boundary.
            for (bi, b) in ambient.inequalities().iter().enumerate() {
                if ambient_implicit.contains(&bi) {
                    continue;
                }
                let mut on_boundary = !facet.on.is_empty();
                for &gi in &facet.on {
                    if !b.dot(&cones[i][gi])?.eq(&crate::exactgeom::rat(0)) {
                        on_boundary = false;
                        break;
                    }
                }
                if on_boundary {
                    continue 'facet;
                }
            }
            let facet_cone = h_cones[i].clone().with_equality(facet.normal.clone());
            for (pattern, witness) in &cells {
                if witness.is_zero() || !facet_cone.contains(witness)? {
                    continue;
                }
                // Only cells that are relatively open in the wall hyperplane
                // carry a well-defined two-sided covering degree.
                let zeros: Vec<HVector> = pattern
                    .iter()
                    .zip(&walls)
                    .filter(|(s, _)| **s == 0)
                    .map(|(_, w)| w.clone())
                    .collect();
                if rank(&zeros)? != 1 {
                    continue;
                }
                let mut toward = 0usize;
                let mut away = 0usize;
                for hk in &h_cones {
                    if !hk.contains(witness)? {
                        continue;
                    }
                    let mut active_pos = false;
                    let mut active_neg = false;
                    for a in hk.inequalities() {
                        if a.dot(witness)?.eq(&crate::exactgeom::rat(0)) {
                            if a.proj_eq_positive(&facet.normal) {
                                active_pos = true;
                            } else {
                                active_neg = true;
                            }
                        }
                    }
                    match (active_pos, active_neg) {
                        (false, false) => {
                            toward += 1;
                            away += 1;
                        }
                        (true, false) => toward += 1,
                        (false, true) => away += 1,
                        (true, true) => {
                            return Err(Error::Internal(
                                "full-dimensional cone pinched to a wall".into(),
                            ))
                        }
                    }
                }
                if toward != away {
                    return Ok(FzCheck {
                        verdict: FzVerdict::NotTiles,
                        detail: alloc::format!(
                            "unbalanced crossing ({toward} vs {away}) at a wall of cone {i}"
                        ),
                        generic_g: None,
                        cones_containing_g: None,
                    });
                }
            }
        }
    }

    // Generic vector in exactly one interior.
    let mut draw = GDraw::new(seed, dim);
    let mut first_generic: Option<(HVector, usize)> = None;
    for _ in 0..trials {
        let g = draw.next();
        if !ambient.contains(&g)? {
            continue;
        }
        let mut generic = true;
        'outer: for fe in &facet_enums {
            for facet in &fe.facets {
                if facet.normal.dot(&g)?.eq(&crate::exactgeom::rat(0)) {
                    generic = false;
                    break 'outer;
                }
            }
        }
        if !generic {
            continue;
        }
        let mut count = 0usize;
        for fe in &facet_enums {
            if fe.strictly_inside(dim, &g)? {
                count += 1;
            }
        }
        if first_generic.is_none() {
            first_generic = Some((g.clone(), count));
        }
        if count == 1 {
            return Ok(FzCheck {
                verdict: FzVerdict::Tiles,
                detail: "generic vector in exactly one cone; facets matched".into(),
                generic_g: Some(g),
                cones_containing_g: Some(1),
            });
        }
    }
    match first_generic {
        Some((g, count)) => Ok(FzCheck {
            verdict: FzVerdict::NotTiles,
            detail: alloc::format!("every generic trial lies in {count} cone interiors"),
            generic_g: Some(g),
            cones_containing_g: Some(count),
        }),
        None => Ok(FzCheck {
            verdict: FzVerdict::Indeterminate,
            detail: "trial budget exhausted without a generic vector".into(),
            generic_g: None,
            cones_containing_g: None,
        }),
    }
}

/// Rebuilds a partition from an admissible assignment: each region cone is
/// the conic hull of its assigned node vectors, converted to inequality form
/// through facet enumeration. The result is asserted combinatorially
/// equivalent to the reference partition.
pub fn reconstruct(
    p: &Partition,
    an: &Analysis,
    x: &NodeAssignment,
    seed: u64,
) -> Result<Partition> {
    let report = check_constraints(p, an, x, seed, DEFAULT_G_TRIALS)?;
    if !report.passed() {
        return Err(Error::ContractViolation(
            "assignment fails the realization constraints".into(),
        ));
    }
    let dim = p.ambient_dim();
    let mut regions: Vec<Option<HomogeneousCone>> = alloc::vec![None; p.n()];
    for i in p.nonempty_labels() {
        let face = FaceIndex::from_regions(&[i], false);
        let mut gens: Vec<HVector> = Vec::new();
        for cell in an.pn.cells_of_dim(p.d() as i64) {
            if cell.parent == face {
                for id in &cell.nodes {
                    let v = x.vector(id).unwrap().clone();
                    if !gens.contains(&v) {
                        gens.push(v);
                    }
                }
            }
        }
        let fe = cone_facets(&gens)?;
        if fe.dim != dim {
            return Err(Error::Internal(alloc::format!(
                "reconstructed region {i} is not full-dimensional"
            )));
        }
        regions[i - 1] = Some(fe.h_cone(dim));
    }
    let rebuilt = Partition::from_region_cones(p.n(), p.d(), regions, None)?;
    let limits = EnumLimits::default();
    let t_ref = comb_type(p, &limits)?;
    let t_new = comb_type(&rebuilt, &limits)?;
    if !comb_equiv(&t_ref, &t_new) {
        return Err(Error::Internal(
            "reconstruction changed the combinatorial type".into(),
        ));
    }
    Ok(rebuilt)
}

/// The doubled-angle reassignment of the pointed 5-partition: the node at
/// ray j moves to ray 2j-1 (mod 5), the center stays. Every sign condition
/// holds but the image cells double-cover the hemisphere.
pub fn pent_doubled_assignment(an: &Analysis) -> NodeAssignment {
    let rays = crate::fixtures::PENT_RAYS;
    let mut x = NodeAssignment::default();
    for id in an.nodes.ids() {
        let NodeId::Face(face) = &id else {
            continue;
        };
        let labels: Vec<usize> = face.region_labels().collect();
        if !face.at_infinity() {
            // The center vertex keeps its vector.
            x.insert(id.clone(), an.nodes.vector(&id).unwrap().clone());
            continue;
        }
        // The infinity vertex between regions j-1 and j sits on ray j.
        let j = if labels == alloc::vec![1, 5] {
            1
        } else {
            labels[1]
        };
        let target = (2 * j - 1 - 1) % 5; // ray index 2j-1, zero-based
        let (a, b) = rays[target];
        x.insert(id.clone(), HVector::from_ints(&[0, a, b]));
    }
    x
}
