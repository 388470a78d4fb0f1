//! Node systems, the refined cell complex they induce, node frames and
//! orientations, and combinatorial-type certificates.
//!
//! A node system places one point in the relative interior of each
//! half-linear face; a non-essential partition additionally gets k+2 points
//! positively spanning the linear span of its minimal face (k its dimension).
//! The complex refines the face structure so that every cell is the spherical
//! hull of its nodes: the minimal face is triangulated by small node subsets,
//! each half-linear face becomes pyramids over its boundary with its node as
//! apex, and all remaining faces are kept whole.
//!
//! Node frames are choices of d+1 distinct nodes along a complete flag of the
//! complex. The signs of their determinants constitute the orientation; all
//! independent choices along one flag share a sign, which is asserted
//! internally. The combinatorial type bundles the index family, the
//! half-linear subset, and the orientation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::{EnumLimits, Partition};
use crate::error::Error;
use crate::exactgeom::{
    det_sign, in_conic_hull, positively_spans, rank, HVector, HomogeneousCone, Sign,
};
use crate::faces::{enumerate_faces, is_essential, FaceIndex, FacePoset};
use crate::Result;

/// Identity of a node: the half-linear face it interiorizes, or a position
/// in the ordered minimal-face tuple. Purely combinatorial, hence shared
/// between partitions of the same type.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    Face(FaceIndex),
    Minimal(usize),
}

impl NodeId {
    pub fn canonical_string(&self) -> String {
        match self {
            NodeId::Face(f) => f.canonical_string(),
            NodeId::Minimal(k) => alloc::format!("m{k}"),
        }
    }

    pub fn parse(s: &str) -> Result<NodeId> {
        if let Some(rest) = s.strip_prefix('m') {
            if let Ok(k) = rest.parse::<usize>() {
                return Ok(NodeId::Minimal(k));
            }
        }
        Ok(NodeId::Face(FaceIndex::parse(s)?))
    }
}

impl core::fmt::Display for NodeId {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// A node system: rational relative-interior directions, one per half-linear
/// face, plus the ordered spanning tuple on the minimal face when the
/// partition is non-essential.
#[derive(Clone, Debug)]
pub struct NodeSystem {
    face_nodes: BTreeMap<FaceIndex, HVector>,
    minimal_nodes: Vec<HVector>,
}

impl NodeSystem {
    pub fn new(face_nodes: BTreeMap<FaceIndex, HVector>, minimal_nodes: Vec<HVector>) -> Self {
        NodeSystem {
            face_nodes,
            minimal_nodes,
        }
    }

    pub fn face_nodes(&self) -> &BTreeMap<FaceIndex, HVector> {
        &self.face_nodes
    }

    pub fn minimal_nodes(&self) -> &[HVector] {
        &self.minimal_nodes
    }

    pub fn len(&self) -> usize {
        self.face_nodes.len() + self.minimal_nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All node ids in canonical order: face nodes by face index, then the
    /// minimal tuple by position.
    pub fn ids(&self) -> Vec<NodeId> {
        let mut out: Vec<NodeId> = self.face_nodes.keys().cloned().map(NodeId::Face).collect();
        for k in 0..self.minimal_nodes.len() {
            out.push(NodeId::Minimal(k));
        }
        out
    }

    pub fn vector(&self, id: &NodeId) -> Option<&HVector> {
        match id {
            NodeId::Face(f) => self.face_nodes.get(f),
            NodeId::Minimal(k) => self.minimal_nodes.get(*k),
        }
    }
}

/// True when x lies in the relative interior of the cone: member, with every
/// non-implicit inequality strict.
fn in_relative_interior(cone: &HomogeneousCone, x: &HVector) -> Result<bool> {
    if !cone.contains(x)? {
        return Ok(false);
    }
    let implicit = cone.implicit_equalities()?;
    for (j, a) in cone.inequalities().iter().enumerate() {
        if implicit.contains(&j) {
            continue;
        }
        if a.dot(x)?.eq(&crate::exactgeom::rat(0)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The deterministic default node system: the canonical relative-interior
/// point of every half-linear face, and on a non-essential minimal face the
/// kernel basis b_0..b_k followed by -(b_0 + ... + b_k).
pub fn default_node_system(p: &Partition, poset: &FacePoset) -> Result<NodeSystem> {
    let mut face_nodes = BTreeMap::new();
    for (idx, f) in poset.faces() {
        if f.half_linear {
            face_nodes.insert(idx.clone(), f.cone.relint_point()?);
        }
    }
    let minimal = poset.face(poset.minimal_face()).ok_or_else(|| {
        Error::Internal("poset lacks its minimal face".into())
    })?;
    let mut minimal_nodes = Vec::new();
    if minimal.dim >= 0 {
        let basis = minimal.cone.lineality_basis()?;
        if basis.len() as i64 != minimal.dim + 1 {
            return Err(Error::Internal("minimal face is not linear".into()));
        }
        let mut sum = HVector::new(alloc::vec![crate::exactgeom::rat(0); p.ambient_dim()]);
        for b in &basis {
            sum = sum.add(b)?;
            minimal_nodes.push(b.clone());
        }
        minimal_nodes.push(sum.neg());
        if !positively_spans(&minimal_nodes, &minimal.cone)? {
            return Err(Error::Internal("minimal nodes fail to span".into()));
        }
    }
    Ok(NodeSystem {
        face_nodes,
        minimal_nodes,
    })
}

/// Degrees of freedom of the space of node systems: the half-linear face
/// dimensions summed, plus k(k+2) on a non-essential partition.
pub fn node_system_dim(poset: &FacePoset) -> Result<usize> {
    let mut total: usize = 0;
    for (_, f) in poset.faces() {
        if f.half_linear {
            total += f.dim as usize;
        }
    }
    let minimal = poset.face(poset.minimal_face()).unwrap();
    if minimal.dim >= 0 {
        let k = minimal.dim as usize;
        total += k * (k + 2);
    }
    Ok(total)
}

/// Validates a node system against a partition: every face node in the
/// relative interior of its half-linear face, exactly one node per
/// half-linear face, and a positively spanning minimal tuple of the right
/// length.
pub fn validate_node_system(p: &Partition, poset: &FacePoset, ns: &NodeSystem) -> Result<()> {
    let hl = poset.half_linear_faces();
    if ns.face_nodes.keys().cloned().collect::<BTreeSet<_>>() != hl {
        return Err(Error::ContractViolation(
            "face nodes must cover exactly the half-linear faces".into(),
        ));
    }
    for (idx, v) in &ns.face_nodes {
        if v.is_zero() || v.len() != p.ambient_dim() {
            return Err(Error::ContractViolation(alloc::format!(
                "bad node vector on face {idx}"
            )));
        }
        let cone = &poset.face(idx).unwrap().cone;
        if !in_relative_interior(cone, v)? {
            return Err(Error::ContractViolation(alloc::format!(
                "node of face {idx} is not in its relative interior"
            )));
        }
    }
    let minimal = poset.face(poset.minimal_face()).unwrap();
    if minimal.dim < 0 {
        if !ns.minimal_nodes.is_empty() {
            return Err(Error::ContractViolation(
                "essential partitions take no minimal nodes".into(),
            ));
        }
    } else {
        let k = minimal.dim as usize;
        if ns.minimal_nodes.len() != k + 2 {
            return Err(Error::ContractViolation(alloc::format!(
                "expected {} minimal nodes",
                k + 2
            )));
        }
        if !positively_spans(&ns.minimal_nodes, &minimal.cone)? {
            return Err(Error::ContractViolation(
                "minimal nodes do not positively span the minimal face".into(),
            ));
        }
    }
    Ok(())
}

/// How a cell of the refined complex arose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CellKind {
    MinimalSimplex,
    Pyramid,
    Plain,
}

/// A cell of the refined complex: the spherical hull of its node set.
#[derive(Clone, Debug)]
pub struct Cell {
    pub dim: i64,
    pub nodes: BTreeSet<NodeId>,
    pub parent: FaceIndex,
    pub kind: CellKind,
}

impl Cell {
    /// Combinatorial identity: parent face plus node set.
    pub fn key(&self) -> String {
        let mut s = self.parent.canonical_string();
        s.push(':');
        for (k, n) in self.nodes.iter().enumerate() {
            if k > 0 {
                s.push('+');
            }
            s.push_str(&n.canonical_string());
        }
        s
    }
}

/// The refined regular cell complex induced by a node system.
#[derive(Clone, Debug)]
pub struct PNComplex {
    d: usize,
    cells: Vec<Cell>,
}

impl PNComplex {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cells_of_dim(&self, dim: i64) -> impl Iterator<Item = &Cell> {
        self.cells.iter().filter(move |c| c.dim == dim)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells
            .iter()
            .filter(|c| c.dim >= 0)
            .map(|c| if c.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Containment of cells coincides with containment of node sets in a
    /// regular complex whose vertices are the nodes.
    pub fn cell_leq(&self, a: usize, b: usize) -> bool {
        self.cells[a].nodes.is_subset(&self.cells[b].nodes)
    }
}

/// Builds the refined complex. Faces are processed by increasing dimension
/// so that pyramid bases always exist.
pub fn build_pn(p: &Partition, poset: &FacePoset, ns: &NodeSystem) -> Result<PNComplex> {
    validate_node_system(p, poset, ns)?;
    let mut cells: Vec<Cell> = Vec::new();
    let minimal = poset.face(poset.minimal_face()).unwrap();

    // Simplices spanned by small subsets of the minimal tuple.
    if minimal.dim >= 0 {
        let k = minimal.dim as usize;
        let m = ns.minimal_nodes.len();
        for mask in 1u32..(1 << m) {
            let members: Vec<usize> = (0..m).filter(|b| mask >> b & 1 == 1).collect();
            if members.is_empty() || members.len() > k + 1 {
                continue;
            }
            let vectors: Vec<HVector> = members
                .iter()
                .map(|&i| ns.minimal_nodes[i].clone())
                .collect();
            if rank(&vectors)? != members.len() {
                return Err(Error::ContractViolation(
                    "degenerate minimal node subset".into(),
                ));
            }
            cells.push(Cell {
                dim: members.len() as i64 - 1,
                nodes: members.into_iter().map(NodeId::Minimal).collect(),
                parent: poset.minimal_face().clone(),
                kind: CellKind::MinimalSimplex,
            });
        }
    }

    // Remaining faces by increasing dimension.
    let mut order: Vec<&crate::faces::Face> = poset
        .faces()
        .map(|(_, f)| f)
        .filter(|f| f.dim >= 0 && f.index != *poset.minimal_face())
        .collect();
    order.sort_by_key(|f| f.dim);
    for face in order {
        if face.half_linear {
            let apex = NodeId::Face(face.index.clone());
            // The boundary of a half-linear face is the full subsphere of its
            // lineality space; its cells are exactly those whose nodes lie in
            // that subspace.
            let lin_normals: Vec<HVector> = face
                .cone
                .inequalities()
                .iter()
                .chain(face.cone.equalities())
                .cloned()
                .collect();
            let in_lineality = |v: &HVector| -> Result<bool> {
                for n in &lin_normals {
                    if !n.dot(v)?.eq(&crate::exactgeom::rat(0)) {
                        return Ok(false);
                    }
                }
                Ok(true)
            };
            let mut pyramids = Vec::new();
            // Pyramid over the empty base: the apex alone.
            pyramids.push(Cell {
                dim: 0,
                nodes: [apex.clone()].into_iter().collect(),
                parent: face.index.clone(),
                kind: CellKind::Pyramid,
            });
            for cell in &cells {
                let mut on_boundary = true;
                for id in &cell.nodes {
                    let v = ns.vector(id).unwrap();
                    if !in_lineality(v)? {
                        on_boundary = false;
                        break;
                    }
                }
                if on_boundary {
                    let mut nodes = cell.nodes.clone();
                    nodes.insert(apex.clone());
                    pyramids.push(Cell {
                        dim: cell.dim + 1,
                        nodes,
                        parent: face.index.clone(),
                        kind: CellKind::Pyramid,
                    });
                }
            }
            cells.extend(pyramids);
        } else {
            // Plain face: one cell holding every node inside the face cone.
            let mut nodes = BTreeSet::new();
            for id in ns.ids() {
                let v = ns.vector(&id).unwrap();
                if face.cone.contains(v)? {
                    nodes.insert(id);
                }
            }
            cells.push(Cell {
                dim: face.dim,
                nodes,
                parent: face.index.clone(),
                kind: CellKind::Plain,
            });
        }
    }

    cells.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.key().cmp(&b.key())));
    // The 0-cells must be exactly the nodes.
    let vertices: BTreeSet<&NodeId> = cells
        .iter()
        .filter(|c| c.dim == 0)
        .flat_map(|c| c.nodes.iter())
        .collect();
    if vertices.len() != ns.len()
        || cells.iter().filter(|c| c.dim == 0).any(|c| c.nodes.len() != 1)
    {
        return Err(Error::Internal("complex vertices differ from nodes".into()));
    }
    Ok(PNComplex {
        d: p.d(),
        cells,
    })
}

/// Checks the hull property: every nonempty face equals the conic hull of
/// the nodes it contains (both inclusions exact).
pub fn hull_check(p: &Partition, poset: &FacePoset, ns: &NodeSystem) -> Result<bool> {
    let _ = p;
    for (_, face) in poset.faces() {
        if face.dim < 0 {
            continue;
        }
        let mut inside: Vec<HVector> = Vec::new();
        for id in ns.ids() {
            let v = ns.vector(&id).unwrap();
            if face.cone.contains(v)? {
                inside.push(v.clone());
            }
        }
        for g in face.cone.generators()? {
            if !in_conic_hull(&g, &inside)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A node frame: d+1 distinct nodes chosen along a complete flag of cells
/// with dimensions 0..=d.
#[derive(Clone, Debug)]
pub struct NodeFrame {
    /// Node ids by flag position.
    pub nodes: Vec<NodeId>,
    /// Indices into the complex's cell list, by dimension.
    pub flag: Vec<usize>,
}

impl NodeFrame {
    /// Combinatorial key shared between partitions of one type: the flag's
    /// cell keys plus the chosen nodes.
    pub fn key(&self, pn: &PNComplex) -> String {
        let mut s = String::new();
        for (k, &c) in self.flag.iter().enumerate() {
            if k > 0 {
                s.push('>');
            }
            s.push_str(&pn.cells()[c].key());
        }
        s.push('|');
        for (k, n) in self.nodes.iter().enumerate() {
            if k > 0 {
                s.push(',');
            }
            s.push_str(&n.canonical_string());
        }
        s
    }

    /// Key of the flag alone.
    pub fn flag_key(&self, pn: &PNComplex) -> String {
        let mut s = String::new();
        for (k, &c) in self.flag.iter().enumerate() {
            if k > 0 {
                s.push('>');
            }
            s.push_str(&pn.cells()[c].key());
        }
        s
    }
}

/// Enumerates every node frame of the complex: complete flags by node-set
/// inclusion, then all distinct node selections along the flag.
pub fn enumerate_frames(pn: &PNComplex) -> Vec<NodeFrame> {
    let d = pn.d() as i64;
    let mut flags: Vec<Vec<usize>> = pn
        .cells()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim == 0)
        .map(|(i, _)| alloc::vec![i])
        .collect();
    for dim in 1..=d {
        let mut extended = Vec::new();
        for flag in &flags {
            let last = *flag.last().unwrap();
            for (i, c) in pn.cells().iter().enumerate() {
                if c.dim == dim && pn.cell_leq(last, i) {
                    let mut f = flag.clone();
                    f.push(i);
                    extended.push(f);
                }
            }
        }
        flags = extended;
    }
    let mut frames = Vec::new();
    for flag in flags {
        let mut selections: Vec<Vec<NodeId>> = alloc::vec![Vec::new()];
        for &cell in &flag {
            let mut next = Vec::new();
            for sel in &selections {
                for node in &pn.cells()[cell].nodes {
                    if !sel.contains(node) {
                        let mut s = sel.clone();
                        s.push(node.clone());
                        next.push(s);
                    }
                }
            }
            selections = next;
        }
        for nodes in selections {
            frames.push(NodeFrame {
                nodes,
                flag: flag.clone(),
            });
        }
    }
    frames
}

/// The orientation of a partition: determinant signs of all node frames,
/// keyed combinatorially. Frames with dependent nodes (flats) carry sign 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub signs: BTreeMap<String, Sign>,
}

impl Orientation {
    pub fn negated(&self) -> Orientation {
        Orientation {
            signs: self.signs.iter().map(|(k, s)| (k.clone(), -s)).collect(),
        }
    }
}

/// Evaluates frame signs under an arbitrary node-vector lookup (used both
/// for reference node systems and for candidate assignments).
pub fn frame_signs_with<F>(pn: &PNComplex, frames: &[NodeFrame], lookup: F) -> Result<BTreeMap<String, Sign>>
where
    F: Fn(&NodeId) -> Result<HVector>,
{
    let mut out = BTreeMap::new();
    for frame in frames {
        let vectors: Vec<HVector> = frame
            .nodes
            .iter()
            .map(&lookup)
            .collect::<Result<Vec<_>>>()?;
        out.insert(frame.key(pn), det_sign(&vectors));
    }
    Ok(out)
}

/// The reference orientation of a node system, with the per-flag consistency
/// assertion: all independent frames along one flag share one sign.
pub fn orientation(pn: &PNComplex, ns: &NodeSystem) -> Result<Orientation> {
    let frames = enumerate_frames(pn);
    let signs = frame_signs_with(pn, &frames, |id| {
        ns.vector(id)
            .cloned()
            .ok_or_else(|| Error::Internal(alloc::format!("missing node {id}")))
    })?;
    let mut per_flag: BTreeMap<String, Sign> = BTreeMap::new();
    for frame in &frames {
        let s = signs[&frame.key(pn)];
        if s == 0 {
            continue;
        }
        let fk = frame.flag_key(pn);
        match per_flag.get(&fk) {
            None => {
                per_flag.insert(fk, s);
            }
            Some(&prev) => {
                if prev != s {
                    return Err(Error::Internal(alloc::format!(
                        "two independent frames of flag {fk} disagree in sign"
                    )));
                }
            }
        }
    }
    Ok(Orientation { signs })
}

/// The combinatorial type certificate of a partition.
#[derive(Clone, Debug)]
pub struct CombType {
    pub index_family: BTreeSet<FaceIndex>,
    pub half_linear: BTreeSet<FaceIndex>,
    pub orientation: Orientation,
    /// Non-essential partitions admit both global orientations, depending on
    /// the choice of the minimal tuple; matching may negate globally.
    pub orientation_flip_allowed: bool,
}

/// Everything derived from one partition in a single pass.
pub struct Analysis {
    pub poset: FacePoset,
    pub nodes: NodeSystem,
    pub pn: PNComplex,
}

/// Runs the face, node, and complex pipeline with the default node system.
pub fn analyze(p: &Partition, limits: &EnumLimits) -> Result<Analysis> {
    let poset = enumerate_faces(p, limits)?;
    let nodes = default_node_system(p, &poset)?;
    let pn = build_pn(p, &poset, &nodes)?;
    Ok(Analysis { poset, nodes, pn })
}

/// Assembles the combinatorial-type certificate of a partition.
pub fn comb_type(p: &Partition, limits: &EnumLimits) -> Result<CombType> {
    let analysis = analyze(p, limits)?;
    let orientation = orientation(&analysis.pn, &analysis.nodes)?;
    Ok(CombType {
        index_family: analysis.poset.faces().map(|(k, _)| k.clone()).collect(),
        half_linear: analysis.poset.half_linear_faces(),
        orientation,
        orientation_flip_allowed: !is_essential(p)?,
    })
}

/// Combinatorial equivalence of two certificates: equal labeled index
/// families, equal half-linear subsets, and orientations matching under some
/// allowed global sign.
pub fn comb_equiv(a: &CombType, b: &CombType) -> bool {
    if a.index_family != b.index_family || a.half_linear != b.half_linear {
        return false;
    }
    let keys_a: BTreeSet<&String> = a.orientation.signs.keys().collect();
    let keys_b: BTreeSet<&String> = b.orientation.signs.keys().collect();
    if keys_a != keys_b {
        return false;
    }
    let matches = |eps: Sign| {
        a.orientation
            .signs
            .iter()
            .all(|(k, &s)| b.orientation.signs[k] == eps * s)
    };
    if matches(1) {
        return true;
    }
    if a.orientation_flip_allowed || b.orientation_flip_allowed {
        return matches(-1);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn setup(a: &crate::arrangement::Arrangement) -> (Partition, Analysis) {
        let p = fixtures::partition_of(a);
        let an = analyze(&p, &EnumLimits::default()).unwrap();
        (p, an)
    }

    #[test]
    fn node_counts_on_fixtures() {
        // nodes = half-linear faces + (k + 2 when non-essential).
        for (arr, expect) in [
            (fixtures::pent(), 6),
            (fixtures::ex1(), 6),
            (fixtures::parl(), 7),
            (fixtures::y3(), 5),
            (fixtures::one_region(2), 4),
            (fixtures::quad(), 5),
        ] {
            let (_, an) = setup(&arr);
            assert_eq!(an.nodes.len(), expect);
        }
    }

    #[test]
    fn node_system_dims() {
        for (arr, expect) in [
            (fixtures::ex1(), 2),
            (fixtures::pent(), 0),
            (fixtures::parl(), 5),
            (fixtures::y3(), 1),
        ] {
            let (_, an) = setup(&arr);
            assert_eq!(node_system_dim(&an.poset).unwrap(), expect, "{arr:?}");
        }
    }

    #[test]
    fn parl_minimal_nodes_are_antipodal() {
        let (_, an) = setup(&fixtures::parl());
        let m = an.nodes.minimal_nodes();
        assert_eq!(m.len(), 2);
        assert!(m[0].proj_eq_positive(&m[1].neg()));
    }

    #[test]
    fn one_region_complex_matches_the_disk_picture() {
        let (_, an) = setup(&fixtures::one_region(2));
        // 3 boundary vertices + apex, 3 boundary edges + 3 pyramid edges,
        // 3 two-cells.
        assert_eq!(an.pn.cells_of_dim(0).count(), 4);
        assert_eq!(an.pn.cells_of_dim(1).count(), 6);
        assert_eq!(an.pn.cells_of_dim(2).count(), 3);
        assert_eq!(an.pn.euler_characteristic(), 1);
    }

    #[test]
    fn pointed_complexes_equal_the_face_complex() {
        for arr in [fixtures::pent(), fixtures::quad()] {
            let (_, an) = setup(&arr);
            // Every cell is plain or a vertex apex, and cells biject with
            // nonempty faces.
            let face_count = an.poset.faces().filter(|(_, f)| f.dim >= 0).count();
            assert_eq!(an.pn.cells().len(), face_count);
            for c in an.pn.cells() {
                let face = an.poset.face(&c.parent).unwrap();
                assert_eq!(c.dim, face.dim);
            }
        }
    }

    #[test]
    fn ex1_complex_splits_the_two_half_linear_edges() {
        let (_, an) = setup(&fixtures::ex1());
        assert_eq!(an.pn.cells_of_dim(0).count(), 6);
        assert_eq!(an.pn.cells_of_dim(1).count(), 9);
        assert_eq!(an.pn.cells_of_dim(2).count(), 4);
        assert_eq!(an.pn.euler_characteristic(), 1);
        // The edge between regions 3 and 4 contributes two pyramid segments.
        let f34 = FaceIndex::parse("34").unwrap();
        let segs: Vec<&Cell> = an
            .pn
            .cells()
            .iter()
            .filter(|c| c.parent == f34 && c.dim == 1)
            .collect();
        assert_eq!(segs.len(), 2);
        assert!(segs.iter().all(|c| c.kind == CellKind::Pyramid));
    }

    #[test]
    fn euler_characteristic_is_one_for_all_fixture_complexes() {
        for arr in [
            fixtures::ex1(),
            fixtures::parl(),
            fixtures::y3(),
            fixtures::pent(),
            fixtures::quad(),
            fixtures::one_region(2),
        ] {
            let (_, an) = setup(&arr);
            assert_eq!(an.pn.euler_characteristic(), 1, "{arr:?}");
        }
    }

    #[test]
    fn cell_dimension_law() {
        // Every cell's node set spans one more dimension than the cell.
        for arr in [fixtures::ex1(), fixtures::parl(), fixtures::y3()] {
            let (_, an) = setup(&arr);
            for c in an.pn.cells() {
                let vs: Vec<HVector> = c
                    .nodes
                    .iter()
                    .map(|id| an.nodes.vector(id).unwrap().clone())
                    .collect();
                assert_eq!(
                    rank(&vs).unwrap() as i64,
                    c.dim + 1,
                    "cell {} of {arr:?}",
                    c.key()
                );
            }
        }
    }

    #[test]
    fn hull_property_holds_and_detects_missing_nodes() {
        let (p, an) = setup(&fixtures::ex1());
        assert!(hull_check(&p, &an.poset, &an.nodes).unwrap());
        let (p, an) = setup(&fixtures::parl());
        assert!(hull_check(&p, &an.poset, &an.nodes).unwrap());
        // Deleting the node of a one-dimensional half-linear face leaves its
        // cone without an interior generator.
        let (p, an) = setup(&fixtures::ex1());
        let mut broken = an.nodes.face_nodes().clone();
        broken.remove(&FaceIndex::parse("34").unwrap());
        let ns = NodeSystem::new(broken, Vec::new());
        assert!(!hull_check(&p, &an.poset, &ns).unwrap());
    }

    #[test]
    fn frames_and_flag_consistency() {
        for arr in [
            fixtures::ex1(),
            fixtures::parl(),
            fixtures::y3(),
            fixtures::pent(),
            fixtures::one_region(2),
        ] {
            let (_, an) = setup(&arr);
            // Orientation construction asserts one sign per flag.
            let o = orientation(&an.pn, &an.nodes).unwrap();
            assert!(!o.signs.is_empty());
        }
    }

    #[test]
    fn pent_frames_match_flag_count_oracle() {
        let (_, an) = setup(&fixtures::pent());
        let frames = enumerate_frames(&an.pn);
        // Oracle: per region, 3 boundary edges times 2 vertices each; one
        // free node per flag; 5 regions.
        assert_eq!(frames.len(), 30);
        // Pointed complexes have no flats.
        let o = orientation(&an.pn, &an.nodes).unwrap();
        assert!(o.signs.values().all(|&s| s != 0));
    }

    #[test]
    fn parl_antipodal_flats() {
        let (_, an) = setup(&fixtures::parl());
        let o = orientation(&an.pn, &an.nodes).unwrap();
        // Any frame through both minimal nodes is a flat.
        let mut flats = 0;
        for (key, s) in &o.signs {
            if key.contains("m0") && key.contains("m1") {
                let chosen = key.split('|').nth(1).unwrap();
                if chosen.contains("m0") && chosen.contains("m1") {
                    assert_eq!(*s, 0, "frame {key}");
                    flats += 1;
                }
            }
        }
        assert!(flats > 0);
    }

    #[test]
    fn orientation_is_stable_under_node_choice_for_essential() {
        // Move the free node of the EX1 wall to another relative-interior
        // point; all signs must persist.
        let (p, an) = setup(&fixtures::ex1());
        let mut moved = an.nodes.face_nodes().clone();
        let f34 = FaceIndex::parse("34").unwrap();
        // The wall cone is spanned by (1,1,0) and the z axis; slide the node.
        let new_node = HVector::from_ints(&[2, 2, 5]);
        assert!(an
            .poset
            .face(&f34)
            .unwrap()
            .cone
            .contains(&new_node)
            .unwrap());
        moved.insert(f34, new_node);
        let ns2 = NodeSystem::new(moved, Vec::new());
        let pn2 = build_pn(&p, &an.poset, &ns2).unwrap();
        let o1 = orientation(&an.pn, &an.nodes).unwrap();
        let o2 = orientation(&pn2, &ns2).unwrap();
        assert_eq!(o1, o2);
    }

    #[test]
    fn parl_minimal_swap_flips_every_sign() {
        let (p, an) = setup(&fixtures::parl());
        let swapped = NodeSystem::new(
            an.nodes.face_nodes().clone(),
            alloc::vec![
                an.nodes.minimal_nodes()[1].clone(),
                an.nodes.minimal_nodes()[0].clone(),
            ],
        );
        let pn2 = build_pn(&p, &an.poset, &swapped).unwrap();
        let o1 = orientation(&an.pn, &an.nodes).unwrap();
        let o2 = orientation(&pn2, &swapped).unwrap();
        assert_eq!(o1.negated(), o2);
    }

    #[test]
    fn top_cells_tile_the_hemisphere() {
        // The d-cells of the refined complex cover the upper halfspace
        // exactly, also when they refine the regions (the one-region disk).
        use crate::realization::{fz_check, FzVerdict};
        let upper = HomogeneousCone::from_inequalities(
            alloc::vec![HVector::basis(3, 0).neg()],
            3,
        );
        for arr in [
            fixtures::one_region(2),
            fixtures::parl(),
            fixtures::ex1(),
            fixtures::y3(),
        ] {
            let (_, an) = setup(&arr);
            let cones: Vec<Vec<HVector>> = an
                .pn
                .cells_of_dim(2)
                .map(|c| {
                    c.nodes
                        .iter()
                        .map(|id| an.nodes.vector(id).unwrap().clone())
                        .collect()
                })
                .collect();
            let out = fz_check(&cones, &upper, 31, 256).unwrap();
            assert_eq!(out.verdict, FzVerdict::Tiles, "{arr:?}: {}", out.detail);
        }
    }

    #[test]
    fn cell_boundaries_are_unions_of_cells() {
        // Facets of each cell (computed in coordinates of the cell's span)
        // decompose into the lower-dimensional cells of the complex.
        use crate::exactgeom::solve;
        use crate::realization::cone_facets;
        for arr in [
            fixtures::ex1(),
            fixtures::parl(),
            fixtures::y3(),
            fixtures::pent(),
            fixtures::one_region(2),
        ] {
            let (_, an) = setup(&arr);
            for cell in an.pn.cells() {
                if cell.dim < 1 {
                    continue;
                }
                let ids: Vec<NodeId> = cell.nodes.iter().cloned().collect();
                let vecs: Vec<HVector> = ids
                    .iter()
                    .map(|id| an.nodes.vector(id).unwrap().clone())
                    .collect();
                // Greedy independent basis of the span.
                let mut basis: Vec<HVector> = Vec::new();
                for v in &vecs {
                    let mut trial = basis.clone();
                    trial.push(v.clone());
                    if rank(&trial).unwrap() == trial.len() {
                        basis.push(v.clone());
                    }
                }
                assert_eq!(basis.len() as i64, cell.dim + 1);
                // Coordinates of every node in that basis.
                let width = basis.len();
                let rows: Vec<HVector> = (0..an.pn.d() + 1)
                    .map(|r| {
                        HVector::new(
                            basis.iter().map(|b| b.coord(r).clone()).collect(),
                        )
                    })
                    .collect();
                let coords: Vec<HVector> = vecs
                    .iter()
                    .map(|v| {
                        HVector::new(
                            solve(&rows, v.coords(), width).unwrap().unwrap(),
                        )
                    })
                    .collect();
                let fe = cone_facets(&coords).unwrap();
                assert!(!fe.facets.is_empty());
                for facet in &fe.facets {
                    let facet_ids: BTreeSet<NodeId> =
                        facet.on.iter().map(|&i| ids[i].clone()).collect();
                    // The subcells inside this facet union to its node set,
                    // and there is at least one.
                    let mut union: BTreeSet<NodeId> = BTreeSet::new();
                    let mut found = 0;
                    for sub in an.pn.cells_of_dim(cell.dim - 1) {
                        if sub.nodes.is_subset(&facet_ids) {
                            union.extend(sub.nodes.iter().cloned());
                            found += 1;
                        }
                    }
                    assert!(found >= 1, "bare facet of {} in {arr:?}", cell.key());
                    assert_eq!(union, facet_ids, "facet cover of {}", cell.key());
                }
            }
        }
    }

    fn reflect(a: &crate::arrangement::Arrangement) -> crate::arrangement::Arrangement {
        let mut out = a.clone();
        for (pair, v) in a.stored_normals() {
            let mut coords: Vec<crate::exactgeom::Rat> = v.coords().to_vec();
            coords[1] = -coords[1].clone();
            out = out.with_normal(pair.0, pair.1, HVector::new(coords));
        }
        out
    }

    #[test]
    fn reflection_flips_orientations_of_essential_partitions() {
        for arr in [fixtures::ex1(), fixtures::pent(), fixtures::y3()] {
            let (_, an) = setup(&arr);
            let (_, am) = setup(&reflect(&arr));
            let o = orientation(&an.pn, &an.nodes).unwrap();
            let m = orientation(&am.pn, &am.nodes).unwrap();
            assert_eq!(o.negated(), m, "{arr:?}");
        }
    }

    #[test]
    fn comb_types_and_equivalence() {
        let lim = EnumLimits::default();
        let t_ex1 = comb_type(&fixtures::partition_of(&fixtures::ex1()), &lim).unwrap();
        assert_eq!(t_ex1.index_family.len(), 16);
        assert_eq!(t_ex1.half_linear.len(), 6);
        assert!(!t_ex1.orientation_flip_allowed);

        // Reflexive.
        assert!(comb_equiv(&t_ex1, &t_ex1));

        // Rotating or shifting a wall keeps the type.
        let t_rot = comb_type(&fixtures::partition_of(&fixtures::ex1_rotated()), &lim).unwrap();
        assert!(comb_equiv(&t_ex1, &t_rot));
        assert!(comb_equiv(&t_rot, &t_ex1));
        let t_shift = comb_type(&fixtures::partition_of(&fixtures::ex1_shifted()), &lim).unwrap();
        assert!(comb_equiv(&t_ex1, &t_shift));

        // Different combinatorics.
        let t_parl = comb_type(&fixtures::partition_of(&fixtures::parl()), &lim).unwrap();
        assert!(t_parl.orientation_flip_allowed);
        assert!(!comb_equiv(&t_ex1, &t_parl));

        // Labels matter.
        let relabeled = fixtures::ex1().relabel(&[4, 2, 3, 1]).unwrap();
        let t_rel = comb_type(&fixtures::partition_of(&relabeled), &lim).unwrap();
        assert!(!comb_equiv(&t_ex1, &t_rel));

        // The pointed type certificate has vertex-only half-linear set.
        let t_pent = comb_type(&fixtures::partition_of(&fixtures::pent()), &lim).unwrap();
        assert_eq!(t_pent.half_linear.len(), 6);
        assert!(comb_equiv(&t_pent, &t_pent));

        // A non-essential type matches its own minimal-node swap through the
        // global flip.
        let t_parl2 = comb_type(&fixtures::partition_of(&fixtures::parl()), &lim).unwrap();
        let flipped = CombType {
            orientation: t_parl2.orientation.negated(),
            ..t_parl2.clone()
        };
        assert!(comb_equiv(&t_parl, &flipped));
    }
}
