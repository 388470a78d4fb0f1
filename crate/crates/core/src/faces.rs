//! Index sets, faces, and the face poset of a (possibly non-proper)
//! partition.
//!
//! Every point x of R^{d+1} has an index set I(x): the labels of all closed
//! region cones containing x, with the infinity label for the lower
//! halfspace. A face is the intersection of the closures named by a realized
//! index set; faces are ordered by inclusion, which for realized index sets
//! is exactly reverse containment of the sets (larger index, smaller face).
//! The minimal face is I(0), realized by the origin; for essential partitions
//! it is the empty face.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::arrangement::{EnumLimits, Partition};
use crate::error::Error;
use crate::exactgeom::{mixed_feasible, HVector, HomogeneousCone, Sign};
use crate::Result;

/// A region label or the infinity label of the lower halfspace.
/// Ordered with infinity last.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    Region(usize),
    Infinity,
}

impl core::fmt::Display for Label {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Label::Region(i) => write!(f, "{i}"),
            Label::Infinity => write!(f, "i"),
        }
    }
}

/// A sorted set of labels naming a face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FaceIndex {
    members: BTreeSet<Label>,
}

impl FaceIndex {
    pub fn new(members: BTreeSet<Label>) -> Self {
        FaceIndex { members }
    }

    pub fn from_regions(labels: &[usize], infinity: bool) -> Self {
        let mut members: BTreeSet<Label> = labels.iter().map(|&i| Label::Region(i)).collect();
        if infinity {
            members.insert(Label::Infinity);
        }
        FaceIndex { members }
    }

    pub fn members(&self) -> &BTreeSet<Label> {
        &self.members
    }

    pub fn contains(&self, l: Label) -> bool {
        self.members.contains(&l)
    }

    pub fn at_infinity(&self) -> bool {
        self.members.contains(&Label::Infinity)
    }

    pub fn region_labels(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().filter_map(|l| match l {
            Label::Region(i) => Some(*i),
            Label::Infinity => None,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &FaceIndex) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Canonical string: region labels in order, then `i` for infinity.
    /// Single-digit labels concatenate ("134i"); larger labels fall back to
    /// comma separation to stay unambiguous.
    pub fn canonical_string(&self) -> String {
        let compact = self.region_labels().all(|i| i < 10);
        let mut out = String::new();
        for (k, l) in self.members.iter().enumerate() {
            if !compact && k > 0 {
                out.push(',');
            }
            out.push_str(&alloc::format!("{l}"));
        }
        out
    }

    /// Parses the canonical string form.
    pub fn parse(s: &str) -> Result<FaceIndex> {
        let mut members = BTreeSet::new();
        if s.contains(',') {
            for part in s.split(',') {
                if part == "i" {
                    members.insert(Label::Infinity);
                } else {
                    let v: usize = part
                        .parse()
                        .map_err(|_| Error::InvalidInput(alloc::format!("bad label {part:?}")))?;
                    members.insert(Label::Region(v));
                }
            }
        } else {
            for ch in s.chars() {
                match ch {
                    'i' => {
                        members.insert(Label::Infinity);
                    }
                    '1'..='9' => {
                        members.insert(Label::Region(ch as usize - '0' as usize));
                    }
                    _ => {
                        return Err(Error::InvalidInput(alloc::format!(
                            "bad face index character {ch:?}"
                        )))
                    }
                }
            }
        }
        Ok(FaceIndex { members })
    }
}

impl core::fmt::Display for FaceIndex {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// One face of the partition.
#[derive(Clone, Debug)]
pub struct Face {
    pub index: FaceIndex,
    /// The cone over the face: intersection of the member region cones.
    pub cone: HomogeneousCone,
    /// Spherical dimension (cone dimension minus one; -1 for the empty face).
    pub dim: i64,
    pub half_linear: bool,
    pub at_infinity: bool,
    /// A face is bounded when its closure misses the equator entirely.
    pub bounded: bool,
}

/// The faces of a partition ordered by inclusion.
#[derive(Clone, Debug)]
pub struct FacePoset {
    n: usize,
    d: usize,
    faces: BTreeMap<FaceIndex, Face>,
    minimal: FaceIndex,
}

impl FacePoset {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn faces(&self) -> impl Iterator<Item = (&FaceIndex, &Face)> {
        self.faces.iter()
    }

    pub fn face(&self, index: &FaceIndex) -> Option<&Face> {
        self.faces.get(index)
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn minimal_face(&self) -> &FaceIndex {
        &self.minimal
    }

    /// Inclusion order: F_a <= F_b iff b's index is contained in a's.
    pub fn leq(&self, a: &FaceIndex, b: &FaceIndex) -> bool {
        b.is_subset(a)
    }

    /// The faces covered by `index`: immediate predecessors in inclusion.
    pub fn children(&self, index: &FaceIndex) -> Vec<FaceIndex> {
        let below: Vec<&FaceIndex> = self
            .faces
            .keys()
            .filter(|k| *k != index && self.leq(k, index))
            .collect();
        below
            .iter()
            .filter(|k| {
                !below
                    .iter()
                    .any(|m| m != *k && self.leq(k, m) && self.leq(m, index))
            })
            .map(|k| (*k).clone())
            .collect()
    }

    /// Indices of the half-linear faces.
    pub fn half_linear_faces(&self) -> BTreeSet<FaceIndex> {
        self.faces
            .iter()
            .filter(|(_, f)| f.half_linear)
            .map(|(k, _)| k.clone())
            .collect()
    }

    /// Sum of (-1)^dim over the nonempty faces.
    pub fn euler_characteristic(&self) -> i64 {
        self.faces
            .values()
            .filter(|f| f.dim >= 0)
            .map(|f| if f.dim % 2 == 0 { 1 } else { -1 })
            .sum()
    }
}

/// The closed cone of a label: the region cone, the lower halfspace for the
/// infinity label, or None for an empty region.
pub fn region_cone(p: &Partition, label: Label) -> Option<HomogeneousCone> {
    match label {
        Label::Region(i) => p.region(i).cloned(),
        Label::Infinity => Some(p.infinity_cone()),
    }
}

/// The index set I(x): all labels whose closed cone contains x. The origin
/// gets I(0), the full label set of nonempty regions plus infinity.
pub fn index_set(p: &Partition, x: &HVector) -> Result<FaceIndex> {
    let mut members = BTreeSet::new();
    if x.is_zero() {
        for i in p.nonempty_labels() {
            members.insert(Label::Region(i));
        }
        members.insert(Label::Infinity);
        return Ok(FaceIndex::new(members));
    }
    for i in p.nonempty_labels() {
        if p.region(i).unwrap().contains(x)? {
            members.insert(Label::Region(i));
        }
    }
    if p.infinity_cone().contains(x)? {
        members.insert(Label::Infinity);
    }
    Ok(FaceIndex::new(members))
}

/// The cone over the face named by `index`: intersection of the member
/// cones. For I(0) of an essential partition this is `{0}`.
pub fn face_cone(p: &Partition, index: &FaceIndex) -> Result<HomogeneousCone> {
    let dim = p.ambient_dim();
    let mut cone = HomogeneousCone::full_space(dim);
    for l in index.members() {
        let c = region_cone(p, *l)
            .ok_or_else(|| Error::InvalidInput(alloc::format!("label {l} names an empty region")))?;
        cone = cone.intersect(&c)?;
    }
    Ok(cone)
}

/// Relatively open cells of the central arrangement of `hyperplanes`: every
/// realizable sign pattern together with an exact witness point (the zero
/// vector for the all-zero pattern when the normals span).
///
/// Depth-first search over patterns, pruning by feasibility of every prefix;
/// deterministic order.
pub fn covector_cells(hyperplanes: &[HVector], dim: usize) -> Result<Vec<(Vec<Sign>, HVector)>> {
    fn dfs(
        hyperplanes: &[HVector],
        dim: usize,
        pattern: &mut Vec<Sign>,
        strict: &mut Vec<HVector>,
        eq: &mut Vec<HVector>,
        out: &mut Vec<(Vec<Sign>, HVector)>,
    ) -> Result<()> {
        let strict_refs: Vec<&HVector> = strict.iter().collect();
        let eq_refs: Vec<&HVector> = eq.iter().collect();
        let Some(witness) = mixed_feasible(&strict_refs, &[], &eq_refs, dim)? else {
            return Ok(());
        };
        if pattern.len() == hyperplanes.len() {
            out.push((pattern.clone(), witness));
            return Ok(());
        }
        let h = hyperplanes[pattern.len()].clone();
        for sign in [0i8, 1, -1] {
            pattern.push(sign);
            match sign {
                0 => eq.push(h.clone()),
                1 => strict.push(h.neg()),
                _ => strict.push(h.clone()),
            }
            dfs(hyperplanes, dim, pattern, strict, eq, out)?;
            match sign {
                0 => {
                    eq.pop();
                }
                _ => {
                    strict.pop();
                }
            }
            pattern.pop();
        }
        Ok(())
    }

    let mut out = Vec::new();
    dfs(
        hyperplanes,
        dim,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
        &mut out,
    )?;
    Ok(out)
}

/// Enumerates the full face poset of a partition.
///
/// The index set is constant on every cell of the arrangement spanned by the
/// partition's hyperplanes (the equator included), so one witness point per
/// cell reaches every realized index. The pure-infinity index is excluded;
/// I(0) is always included.
pub fn enumerate_faces(p: &Partition, limits: &EnumLimits) -> Result<FacePoset> {
    let hyperplanes = p.hyperplanes();
    if hyperplanes.len() > limits.max_hyperplanes {
        return Err(Error::CapExceeded {
            hyperplanes: hyperplanes.len(),
            cap: limits.max_hyperplanes,
        });
    }
    let dim = p.ambient_dim();
    let mut indices: BTreeSet<FaceIndex> = BTreeSet::new();
    for (_, witness) in covector_cells(&hyperplanes, dim)? {
        let idx = index_set(p, &witness)?;
        if idx.is_empty() {
            return Err(Error::ContractViolation(
                "a cell lies in no region closure; the input does not cover".into(),
            ));
        }
        if idx.len() == 1 && idx.at_infinity() {
            continue;
        }
        indices.insert(idx);
    }
    let zero = HVector::new(alloc::vec![crate::exactgeom::rat(0); dim]);
    let minimal = index_set(p, &zero)?;
    indices.insert(minimal.clone());

    let mut faces = BTreeMap::new();
    for index in indices {
        let cone = face_cone(p, &index)?;
        let cone_dim = cone.cone_dim()?;
        let lin_dim = cone.lineality_dim()?;
        let half_linear = cone_dim > 0 && lin_dim + 1 == cone_dim;
        let at_infinity = index.at_infinity();
        let equator = cone.clone().with_equality(HVector::basis(dim, 0));
        let bounded = equator.cone_dim()? == 0;
        faces.insert(
            index.clone(),
            Face {
                index,
                cone,
                dim: cone_dim as i64 - 1,
                half_linear,
                at_infinity,
                bounded,
            },
        );
    }

    // Inclusion must agree with reverse index containment on realized faces;
    // cone containment is the ground truth.
    let keys: Vec<FaceIndex> = faces.keys().cloned().collect();
    for a in &keys {
        for b in &keys {
            if a == b {
                continue;
            }
            let by_index = b.is_subset(a);
            let by_cone = faces[b].cone.contains_cone(&faces[a].cone)?;
            if by_index != by_cone {
                return Err(Error::Internal(alloc::format!(
                    "face order mismatch between {a} and {b}"
                )));
            }
        }
    }

    Ok(FacePoset {
        n: p.n(),
        d: p.d(),
        faces,
        minimal,
    })
}

/// A partition is essential when the minimal face is empty, i.e. the common
/// intersection of all closures is the origin alone.
pub fn is_essential(p: &Partition) -> Result<bool> {
    let zero = HVector::new(alloc::vec![crate::exactgeom::rat(0); p.ambient_dim()]);
    let minimal = index_set(p, &zero)?;
    face_cone(p, &minimal)?.is_trivial()
}

/// A partition is pointed when it is proper and every region cone has
/// trivial lineality. Pointed partitions are always essential.
pub fn is_pointed(p: &Partition) -> Result<bool> {
    if !p.is_proper() {
        return Ok(false);
    }
    for i in 1..=p.n() {
        if p.region(i).unwrap().lineality_dim()? != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The proper faces of a polyhedral cone, found by promoting inequality
/// subsets to equalities one step at a time and deduplicating by the tight
/// set. Sorted by ascending cone dimension, then tight set.
pub fn subfaces(cone: &HomogeneousCone) -> Result<Vec<HomogeneousCone>> {
    let base_tight: BTreeSet<usize> = cone.implicit_equalities()?.into_iter().collect();
    let mut seen: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    seen.insert(base_tight.clone());
    let mut queue: Vec<(BTreeSet<usize>, HomogeneousCone)> =
        alloc::vec![(base_tight, cone.clone())];
    let mut found: Vec<(usize, BTreeSet<usize>, HomogeneousCone)> = Vec::new();
    while let Some((tight, face)) = queue.pop() {
        for j in 0..cone.inequalities().len() {
            if tight.contains(&j) {
                continue;
            }
            let promoted = face.clone().with_equality(cone.inequalities()[j].clone());
            let mut new_tight: BTreeSet<usize> =
                promoted.implicit_equalities()?.into_iter().collect();
            new_tight.insert(j);
            if seen.contains(&new_tight) {
                continue;
            }
            seen.insert(new_tight.clone());
            let dim = promoted.cone_dim()?;
            found.push((dim, new_tight.clone(), promoted.clone()));
            queue.push((new_tight, promoted));
        }
    }
    // Distinct tight sets can still describe one geometric face when the
    // H-description is redundant; a final set-equality pass settles that.
    found.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let mut out: Vec<HomogeneousCone> = Vec::new();
    for (_, _, face) in found {
        let mut dup = false;
        for kept in &out {
            if kept.set_eq(&face)? {
                dup = true;
                break;
            }
        }
        if !dup && !face.set_eq(cone)? {
            out.push(face);
        }
    }
    Ok(out)
}

/// Pairs of (d-1)-faces of one region that lie flat in a common
/// (d-1)-subface of its cone and meet in a (d-2)-face: walls that meet at a
/// straight dihedral angle.
pub fn pi_angles(p: &Partition, poset: &FacePoset) -> Result<BTreeSet<(FaceIndex, FaceIndex)>> {
    let d = p.d();
    let mut out = BTreeSet::new();
    if d < 2 {
        return Ok(out);
    }
    for i in p.nonempty_labels() {
        let cone = p.region(i).unwrap();
        let walls: Vec<&Face> = poset
            .faces
            .values()
            .filter(|f| f.dim == d as i64 - 1 && f.index.contains(Label::Region(i)))
            .collect();
        for sub in subfaces(cone)? {
            if sub.cone_dim()? != d {
                continue;
            }
            let inside: Vec<&&Face> = walls
                .iter()
                .filter(|f| sub.contains_cone(&f.cone).unwrap_or(false))
                .collect();
            for a in 0..inside.len() {
                for b in a + 1..inside.len() {
                    let meet = inside[a].cone.intersect(&inside[b].cone)?;
                    if meet.cone_dim()? == d - 1 {
                        let (x, y) = (inside[a].index.clone(), inside[b].index.clone());
                        out.insert(if x <= y { (x, y) } else { (y, x) });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The adjacency graph: pairs of labels whose closed cones meet in a cone of
/// dimension d (a full wall).
pub fn adjacency_graph(p: &Partition) -> Result<BTreeSet<(usize, usize)>> {
    let mut out = BTreeSet::new();
    let labels = p.nonempty_labels();
    for (ai, &i) in labels.iter().enumerate() {
        for &j in &labels[ai + 1..] {
            let meet = p.region(i).unwrap().intersect(p.region(j).unwrap())?;
            if meet.cone_dim()? == p.d() {
                out.insert((i, j));
            }
        }
    }
    Ok(out)
}

/// Checks that `target` (a subface, say) is exactly a union of faces of the
/// partition; returns the face indices when it is.
///
/// Every cell of the partition's hyperplane arrangement is either inside or
/// disjoint from `target`, so it suffices that every cell with a witness in
/// the target belongs to a face whose cone the target contains.
pub fn union_of_faces(
    p: &Partition,
    poset: &FacePoset,
    target: &HomogeneousCone,
) -> Result<Option<Vec<FaceIndex>>> {
    let mut members: Vec<FaceIndex> = Vec::new();
    for (idx, f) in poset.faces() {
        if f.dim >= 0 && target.contains_cone(&f.cone)? {
            members.push(idx.clone());
        }
    }
    for (_, witness) in covector_cells(&p.hyperplanes(), p.ambient_dim())? {
        if witness.is_zero() || !target.contains(&witness)? {
            continue;
        }
        let idx = index_set(p, &witness)?;
        if !members.contains(&idx) {
            return Ok(None);
        }
    }
    Ok(Some(members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn poset_of(a: &crate::arrangement::Arrangement) -> (Partition, FacePoset) {
        let p = fixtures::partition_of(a);
        let poset = enumerate_faces(&p, &EnumLimits::default()).unwrap();
        (p, poset)
    }

    fn idx(s: &str) -> FaceIndex {
        FaceIndex::parse(s).unwrap()
    }

    #[test]
    fn face_index_strings() {
        let i = FaceIndex::from_regions(&[1, 3, 4], true);
        assert_eq!(i.canonical_string(), "134i");
        assert_eq!(FaceIndex::parse("134i").unwrap(), i);
        let big = FaceIndex::from_regions(&[1, 12], false);
        assert_eq!(big.canonical_string(), "1,12");
        assert_eq!(FaceIndex::parse("1,12").unwrap(), big);
    }

    #[test]
    fn index_sets_of_ex1_match_the_fixture() {
        let p = fixtures::partition_of(&fixtures::ex1());
        // The origin lift sits on all three left cones.
        assert_eq!(
            index_set(&p, &HVector::from_ints(&[1, 0, 0])).unwrap(),
            idx("123")
        );
        // The vertical direction at infinity, where the parallel walls meet.
        assert_eq!(
            index_set(&p, &HVector::from_ints(&[0, 0, 1])).unwrap(),
            idx("134i")
        );
        // Direction of the oblique ray at infinity.
        assert_eq!(
            index_set(&p, &HVector::from_ints(&[0, -6, -1])).unwrap(),
            idx("12i")
        );
        // The origin of R^{d+1} gets the full index set.
        let zero = HVector::from_ints(&[0, 0, 0]);
        assert_eq!(index_set(&p, &zero).unwrap(), idx("1234i"));
    }

    #[test]
    fn ex1_face_poset_is_the_expected_sixteen() {
        let (_, poset) = poset_of(&fixtures::ex1());
        let expected: Vec<(&str, i64)> = alloc::vec![
            ("1234i", -1),
            ("123", 0),
            ("12i", 0),
            ("134i", 0),
            ("234i", 0),
            ("12", 1),
            ("13", 1),
            ("23", 1),
            ("34", 1),
            ("1i", 1),
            ("2i", 1),
            ("4i", 1),
            ("1", 2),
            ("2", 2),
            ("3", 2),
            ("4", 2),
        ];
        assert_eq!(poset.len(), 16);
        for (s, dim) in expected {
            let f = poset.face(&idx(s)).unwrap_or_else(|| panic!("missing {s}"));
            assert_eq!(f.dim, dim, "dim of {s}");
        }
        assert_eq!(poset.minimal_face(), &idx("1234i"));
        // Covering relation spot checks.
        let children_of_f3: BTreeSet<FaceIndex> = poset.children(&idx("3")).into_iter().collect();
        assert_eq!(
            children_of_f3,
            ["13", "23", "34"].iter().map(|s| idx(s)).collect()
        );
        let children_of_f134i: BTreeSet<FaceIndex> =
            poset.children(&idx("134i")).into_iter().collect();
        assert_eq!(
            children_of_f134i,
            [idx("1234i")].into_iter().collect::<BTreeSet<_>>()
        );
        let children_of_f13 = poset.children(&idx("13"));
        assert!(children_of_f13.contains(&idx("134i")));
        assert!(children_of_f13.contains(&idx("123")));
    }

    #[test]
    fn y3_face_poset_from_cell_oracle() {
        let (_, poset) = poset_of(&fixtures::y3());
        let names: BTreeSet<String> = poset.faces().map(|(k, _)| k.canonical_string()).collect();
        let expected: BTreeSet<String> = [
            "123i", "123", "12i", "13i", "23i", "12", "13", "23", "1i", "2i", "3i", "1", "2", "3",
        ]
        .iter()
        .map(|s| String::from(*s))
        .collect();
        assert_eq!(names, expected);
        assert_eq!(poset.euler_characteristic(), 1);
    }

    #[test]
    fn one_region_partition_has_two_faces() {
        let (_, poset) = poset_of(&fixtures::one_region(2));
        assert_eq!(poset.len(), 2);
        let minimal = poset.face(&idx("1i")).unwrap();
        assert_eq!(minimal.dim, 1);
        assert!(!minimal.half_linear);
        let top = poset.face(&idx("1")).unwrap();
        assert_eq!(top.dim, 2);
        assert!(top.half_linear);
    }

    #[test]
    fn essential_and_pointed_classification() {
        let ex1 = fixtures::partition_of(&fixtures::ex1());
        let parl = fixtures::partition_of(&fixtures::parl());
        let y3 = fixtures::partition_of(&fixtures::y3());
        let pent = fixtures::partition_of(&fixtures::pent());
        let quad = fixtures::partition_of(&fixtures::quad());
        assert!(is_essential(&ex1).unwrap());
        assert!(!is_essential(&parl).unwrap());
        assert!(is_essential(&y3).unwrap());
        assert!(is_essential(&pent).unwrap());
        assert!(!is_pointed(&ex1).unwrap());
        assert!(!is_pointed(&parl).unwrap());
        assert!(!is_pointed(&y3).unwrap());
        assert!(is_pointed(&pent).unwrap());
        assert!(is_pointed(&quad).unwrap());
    }

    #[test]
    fn half_linear_censuses() {
        let (_, ex1) = poset_of(&fixtures::ex1());
        let hl: BTreeSet<String> = ex1
            .half_linear_faces()
            .iter()
            .map(|f| f.canonical_string())
            .collect();
        let expected: BTreeSet<String> = ["123", "12i", "134i", "234i", "34", "4i"]
            .iter()
            .map(|s| String::from(*s))
            .collect();
        assert_eq!(hl, expected);

        let (_, parl) = poset_of(&fixtures::parl());
        let hl: BTreeSet<String> = parl
            .half_linear_faces()
            .iter()
            .map(|f| f.canonical_string())
            .collect();
        let expected: BTreeSet<String> = ["12", "23", "34", "1i", "4i"]
            .iter()
            .map(|s| String::from(*s))
            .collect();
        assert_eq!(hl, expected);

        let (_, pent) = poset_of(&fixtures::pent());
        for f in pent.half_linear_faces() {
            assert_eq!(pent.face(&f).unwrap().dim, 0, "only vertices for pointed");
        }
        assert_eq!(pent.half_linear_faces().len(), 6);
    }

    #[test]
    fn subfaces_of_fixture_cones() {
        let p = fixtures::partition_of(&fixtures::ex1());
        // Region 3 is a slab cone: two walls plus the shared axis at
        // infinity.
        let subs = subfaces(p.region(3).unwrap()).unwrap();
        let wall_dims: Vec<usize> = subs.iter().map(|c| c.cone_dim().unwrap()).collect();
        assert_eq!(wall_dims.iter().filter(|&&d| d == 2).count(), 2);
        // One wall is the {3,4} face, the other the union of {1,3} and {2,3}.
        let poset = enumerate_faces(&p, &EnumLimits::default()).unwrap();
        let f34 = &poset.face(&idx("34")).unwrap().cone;
        assert!(subs.iter().any(|s| s.set_eq(f34).unwrap()));
        let union_wall = subs
            .iter()
            .find(|s| s.cone_dim().unwrap() == 2 && !s.set_eq(f34).unwrap())
            .unwrap();
        let cover = union_of_faces(&p, &poset, union_wall).unwrap().unwrap();
        let cover_names: BTreeSet<String> = cover.iter().map(|f| f.canonical_string()).collect();
        assert!(cover_names.contains("13"));
        assert!(cover_names.contains("23"));

        // A vertex cone has exactly one proper face, the origin.
        let vertex = face_cone(&p, &idx("123")).unwrap();
        let vsubs = subfaces(&vertex).unwrap();
        assert_eq!(vsubs.len(), 1);
        assert!(vsubs[0].is_trivial().unwrap());

        // A slab region of the parallel fixture has two wall subfaces.
        let parl = fixtures::partition_of(&fixtures::parl());
        let subs = subfaces(parl.region(2).unwrap()).unwrap();
        assert_eq!(subs.iter().filter(|c| c.cone_dim().unwrap() == 2).count(), 2);
    }

    #[test]
    fn pi_angle_censuses() {
        let (p, poset) = poset_of(&fixtures::ex1());
        let angles = pi_angles(&p, &poset).unwrap();
        assert_eq!(
            angles,
            [(idx("13"), idx("23"))].into_iter().collect::<BTreeSet<_>>()
        );
        let (p, poset) = poset_of(&fixtures::pent());
        assert!(pi_angles(&p, &poset).unwrap().is_empty());
        let (p, poset) = poset_of(&fixtures::parl());
        assert!(pi_angles(&p, &poset).unwrap().is_empty());
    }

    #[test]
    fn adjacency_graphs() {
        let adj =
            |a: &crate::arrangement::Arrangement| adjacency_graph(&fixtures::partition_of(a)).unwrap();
        assert_eq!(
            adj(&fixtures::ex1()),
            [(1, 2), (1, 3), (2, 3), (3, 4)].into_iter().collect()
        );
        assert_eq!(
            adj(&fixtures::y3()),
            [(1, 2), (1, 3), (2, 3)].into_iter().collect()
        );
        assert_eq!(
            adj(&fixtures::parl()),
            [(1, 2), (2, 3), (3, 4)].into_iter().collect()
        );
    }

    #[test]
    fn euler_characteristic_is_one_on_essential_fixtures() {
        for a in [
            fixtures::ex1(),
            fixtures::y3(),
            fixtures::pent(),
            fixtures::quad(),
        ] {
            let (_, poset) = poset_of(&a);
            assert_eq!(poset.euler_characteristic(), 1);
        }
    }

    #[test]
    fn strict_reverse_inclusion_law() {
        // Realized indices: strictly larger index means strictly smaller
        // face.
        let mut checked = 0usize;
        for a in [
            fixtures::ex1(),
            fixtures::y3(),
            fixtures::parl(),
            fixtures::pent(),
        ] {
            let (_, poset) = poset_of(&a);
            let faces: Vec<&Face> = poset.faces().map(|(_, f)| f).collect();
            for x in &faces {
                for y in &faces {
                    if x.index != y.index && x.index.is_subset(&y.index) {
                        assert!(x.cone.contains_cone(&y.cone).unwrap());
                        assert!(!y.cone.contains_cone(&x.cone).unwrap());
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked >= 100, "only {checked} strict pairs checked");
    }

    #[test]
    fn unique_linear_face_is_the_minimal_face() {
        for a in [
            fixtures::ex1(),
            fixtures::y3(),
            fixtures::parl(),
            fixtures::pent(),
            fixtures::one_region(2),
        ] {
            let (_, poset) = poset_of(&a);
            let linear: Vec<&FaceIndex> = poset
                .faces()
                .filter(|(_, f)| f.dim >= 0 && f.cone.is_linear_subspace().unwrap())
                .map(|(k, _)| k)
                .collect();
            if poset.face(poset.minimal_face()).unwrap().dim >= 0 {
                assert_eq!(linear, alloc::vec![poset.minimal_face()]);
            } else {
                assert!(linear.is_empty());
            }
        }
    }

    #[test]
    fn essential_iff_interior_vertex_iff_bounded_face() {
        for a in [
            fixtures::ex1(),
            fixtures::y3(),
            fixtures::parl(),
            fixtures::pent(),
            fixtures::quad(),
            fixtures::one_region(2),
            fixtures::half4(),
        ] {
            let (p, poset) = poset_of(&a);
            let essential = is_essential(&p).unwrap();
            let interior_vertex = poset
                .faces()
                .any(|(_, f)| f.dim == 0 && !f.at_infinity);
            let bounded_face = poset.faces().any(|(_, f)| f.dim >= 0 && f.bounded);
            assert_eq!(essential, interior_vertex, "{a:?}");
            assert_eq!(essential, bounded_face, "{a:?}");
        }
    }

    #[test]
    fn coverage_by_random_rational_points() {
        // Seeded LCG; exact membership of every sample in some face.
        let p = fixtures::partition_of(&fixtures::ex1());
        let poset = enumerate_faces(&p, &EnumLimits::default()).unwrap();
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) as i64 - (1 << 30)
        };
        for _ in 0..2000 {
            let x = HVector::from_ints(&[(next().rem_euclid(1 << 16)) + 1, next(), next()]);
            let idx = index_set(&p, &x).unwrap();
            assert!(poset.face(&idx).is_some(), "uncovered point {x:?}");
        }
    }
}
