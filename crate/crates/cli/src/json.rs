//! On-disk JSON forms and their conversions to the core types. Rationals are
//! strings "p/q" with positive q ("p" for integers); map keys are sorted, so
//! serialization is byte-deterministic.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use convpart_core::arrangement::{Arrangement, CarryVerdict, Partition, SignVector};
use convpart_core::exactgeom::{format_rat, parse_rat, HVector, HomogeneousCone};
use convpart_core::faces::{FaceIndex, FacePoset};
use convpart_core::metric::SphericalMeasureValue;
use convpart_core::nodes::{CombType, NodeId, NodeSystem};
use convpart_core::realization::{
    ConstraintReport, ConstraintSystem, FzCheck, FzVerdict, NodeAssignment,
};

pub type JsonError = String;

fn bad(msg: impl Into<String>) -> JsonError {
    msg.into()
}

pub fn vector_to_strings(v: &HVector) -> Vec<String> {
    v.coords().iter().map(format_rat).collect()
}

pub fn vector_from_strings(raw: &[String]) -> Result<HVector, JsonError> {
    let coords = raw
        .iter()
        .map(|s| parse_rat(s).map_err(|e| bad(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(HVector::new(coords))
}

/// The canonical arrangement file:
/// `{"d":2,"n":4,"normals":{"1,2":["0","1","-6"],...}}` with one entry per
/// unordered pair i < j.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct ArrangementFile {
    pub d: usize,
    pub n: usize,
    pub normals: BTreeMap<String, Vec<String>>,
}

impl ArrangementFile {
    pub fn to_core(&self) -> Result<Arrangement, JsonError> {
        let mut map = BTreeMap::new();
        for (key, raw) in &self.normals {
            let (i, j) = key
                .split_once(',')
                .ok_or_else(|| bad(format!("bad pair key {key:?}")))?;
            let i: usize = i.trim().parse().map_err(|_| bad(format!("bad pair {key:?}")))?;
            let j: usize = j.trim().parse().map_err(|_| bad(format!("bad pair {key:?}")))?;
            if i >= j {
                return Err(bad(format!("pair key {key:?} must have i < j")));
            }
            map.insert((i, j), vector_from_strings(raw)?);
        }
        Arrangement::new(self.n, self.d, map).map_err(|e| bad(e.to_string()))
    }

    pub fn from_core(a: &Arrangement) -> Self {
        let mut normals = BTreeMap::new();
        for ((i, j), v) in a.stored_normals() {
            normals.insert(format!("{i},{j}"), vector_to_strings(v));
        }
        ArrangementFile {
            d: a.d(),
            n: a.n(),
            normals,
        }
    }
}

pub fn read_arrangement(path: &std::path::Path) -> Result<Arrangement, JsonError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let file: ArrangementFile =
        serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    file.to_core()
}

#[derive(Serialize, Deserialize, Debug)]
pub struct CarriesOut {
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub empty_labels: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<BTreeMap<String, i8>>,
}

pub fn sign_vector_map(s: &SignVector) -> BTreeMap<String, i8> {
    s.entries()
        .map(|((i, j), sign)| (format!("{i},{j}"), sign))
        .collect()
}

impl CarriesOut {
    pub fn from_verdict(v: &CarryVerdict) -> Self {
        match v {
            CarryVerdict::CarriesProper => CarriesOut {
                verdict: "carries_proper".into(),
                empty_labels: None,
                witness: None,
            },
            CarryVerdict::CarriesNonProper { empty_labels } => CarriesOut {
                verdict: "carries_nonproper".into(),
                empty_labels: Some(empty_labels.clone()),
                witness: None,
            },
            CarryVerdict::DoesNotCarry { witness } => CarriesOut {
                verdict: "does_not_carry".into(),
                empty_labels: None,
                witness: Some(sign_vector_map(witness)),
            },
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct FaceOut {
    pub dim: i64,
    pub half_linear: bool,
    pub at_infinity: bool,
    pub bounded: bool,
    pub covers: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct FacesOut {
    pub n: usize,
    pub d: usize,
    pub essential: bool,
    pub pointed: bool,
    pub minimal_face: String,
    pub faces: BTreeMap<String, FaceOut>,
}

impl FacesOut {
    pub fn build(p: &Partition, poset: &FacePoset) -> Result<Self, JsonError> {
        let essential = convpart_core::faces::is_essential(p).map_err(|e| bad(e.to_string()))?;
        let pointed = convpart_core::faces::is_pointed(p).map_err(|e| bad(e.to_string()))?;
        let mut faces = BTreeMap::new();
        for (idx, f) in poset.faces() {
            let mut covers: Vec<String> = poset
                .children(idx)
                .iter()
                .map(FaceIndex::canonical_string)
                .collect();
            covers.sort();
            faces.insert(
                idx.canonical_string(),
                FaceOut {
                    dim: f.dim,
                    half_linear: f.half_linear,
                    at_infinity: f.at_infinity,
                    bounded: f.bounded,
                    covers,
                },
            );
        }
        Ok(FacesOut {
            n: poset.n(),
            d: poset.d(),
            essential,
            pointed,
            minimal_face: poset.minimal_face().canonical_string(),
            faces,
        })
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct TypeOut {
    pub index_family: Vec<String>,
    pub half_linear: Vec<String>,
    pub orientation: BTreeMap<String, i8>,
    pub orientation_flip_allowed: bool,
    pub hash: String,
}

/// 64-bit FNV-1a; the hash is advisory (equality of certificates is always
/// decided on the full data).
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl TypeOut {
    pub fn build(t: &CombType) -> Self {
        let index_family: Vec<String> = t
            .index_family
            .iter()
            .map(FaceIndex::canonical_string)
            .collect();
        let half_linear: Vec<String> = t
            .half_linear
            .iter()
            .map(FaceIndex::canonical_string)
            .collect();
        let orientation: BTreeMap<String, i8> = t
            .orientation
            .signs
            .iter()
            .map(|(k, s)| (k.clone(), *s))
            .collect();
        let mut out = TypeOut {
            index_family,
            half_linear,
            orientation,
            orientation_flip_allowed: t.orientation_flip_allowed,
            hash: String::new(),
        };
        let body = serde_json::json!({
            "index_family": out.index_family,
            "half_linear": out.half_linear,
            "orientation": out.orientation,
            "orientation_flip_allowed": out.orientation_flip_allowed,
        });
        out.hash = format!("fnv1a64:{:016x}", fnv1a64(body.to_string().as_bytes()));
        out
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct DistanceOut {
    pub value: f64,
    pub method: String,
    pub stderr: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
}

impl DistanceOut {
    pub fn build(m: &SphericalMeasureValue, seed: Option<u64>, samples: Option<u64>) -> Self {
        let mc = matches!(m.method, convpart_core::metric::Method::MonteCarlo);
        DistanceOut {
            value: m.value,
            method: m.method.name().into(),
            stderr: m.stderr,
            seed: if mc { seed } else { None },
            samples: if mc { samples } else { None },
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct NodesOut {
    pub essential: bool,
    pub node_system_dim: usize,
    pub nodes: BTreeMap<String, Vec<String>>,
}

impl NodesOut {
    pub fn build(p: &Partition, poset: &FacePoset, ns: &NodeSystem) -> Result<Self, JsonError> {
        let mut nodes = BTreeMap::new();
        for id in ns.ids() {
            nodes.insert(
                id.canonical_string(),
                vector_to_strings(ns.vector(&id).unwrap()),
            );
        }
        Ok(NodesOut {
            essential: convpart_core::faces::is_essential(p).map_err(|e| bad(e.to_string()))?,
            node_system_dim: convpart_core::nodes::node_system_dim(poset)
                .map_err(|e| bad(e.to_string()))?,
            nodes,
        })
    }
}

/// Assignment file: a map node id -> rational vector.
pub fn read_assignment(path: &std::path::Path) -> Result<NodeAssignment, JsonError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
    let raw: BTreeMap<String, Vec<String>> =
        serde_json::from_str(&text).map_err(|e| bad(format!("{}: {e}", path.display())))?;
    let mut out = NodeAssignment::default();
    for (key, coords) in raw {
        let id = NodeId::parse(&key).map_err(|e| bad(e.to_string()))?;
        out.insert(id, vector_from_strings(&coords)?);
    }
    Ok(out)
}

#[derive(Serialize, Deserialize, Debug)]
pub struct CondOut {
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct ReportOut {
    pub passed: bool,
    pub nonzero: CondOut,
    pub basis_signs: CondOut,
    pub flats: CondOut,
    pub at_infinity: CondOut,
    pub interior: CondOut,
    pub g_condition: CondOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_g: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cones_containing_g: Option<usize>,
}

impl ReportOut {
    pub fn build(r: &ConstraintReport) -> Self {
        let cond = |c: &convpart_core::realization::CondResult| CondOut {
            passed: c.passed,
            witness: c.witness.clone(),
        };
        ReportOut {
            passed: r.passed(),
            nonzero: cond(&r.nonzero),
            basis_signs: cond(&r.basis_signs),
            flats: cond(&r.flats),
            at_infinity: cond(&r.at_infinity),
            interior: cond(&r.interior),
            g_condition: cond(&r.g_condition),
            generic_g: r.generic_g.as_ref().map(vector_to_strings),
            cones_containing_g: r.cones_containing_g,
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct ReconstructOut {
    pub report: ReportOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comb_equiv: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regions: Option<BTreeMap<String, Vec<Vec<String>>>>,
}

pub fn region_map(p: &Partition) -> BTreeMap<String, Vec<Vec<String>>> {
    let mut out = BTreeMap::new();
    for i in p.nonempty_labels() {
        let cone: &HomogeneousCone = p.region(i).unwrap();
        out.insert(
            i.to_string(),
            cone.inequalities().iter().map(vector_to_strings).collect(),
        );
    }
    out
}

#[derive(Serialize, Deserialize, Debug)]
pub struct MonomialOut {
    pub coef: String,
    pub powers: BTreeMap<String, u32>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct PolyOut {
    pub label: String,
    pub monomials: Vec<MonomialOut>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct GCellOut {
    pub cell: String,
    pub nodes: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct ConstraintsOut {
    pub variables: Vec<String>,
    pub unit_norms: Vec<PolyOut>,
    pub equalities: Vec<PolyOut>,
    pub strict_inequalities: Vec<PolyOut>,
    pub g_block: Vec<GCellOut>,
}

impl ConstraintsOut {
    pub fn build(system: &ConstraintSystem) -> Self {
        let poly = |lp: &convpart_core::realization::LabeledPoly| PolyOut {
            label: lp.label.clone(),
            monomials: lp
                .poly
                .monomials
                .iter()
                .map(|m| MonomialOut {
                    coef: format_rat(&m.coef),
                    powers: m.powers.iter().map(|(k, v)| (k.clone(), *v)).collect(),
                })
                .collect(),
        };
        ConstraintsOut {
            variables: system.variables.clone(),
            unit_norms: system.unit_norms.iter().map(poly).collect(),
            equalities: system.equalities.iter().map(poly).collect(),
            strict_inequalities: system.strict_inequalities.iter().map(poly).collect(),
            g_block: system
                .g_block
                .iter()
                .map(|c| GCellOut {
                    cell: c.cell.clone(),
                    nodes: c.nodes.iter().map(NodeId::canonical_string).collect(),
                })
                .collect(),
        }
    }
}

/// Cone family file for the tiling check.
#[derive(Serialize, Deserialize, Debug)]
pub struct FzFile {
    pub ambient: AmbientIn,
    pub cones: Vec<Vec<Vec<String>>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct AmbientIn {
    pub dim: usize,
    #[serde(default)]
    pub inequalities: Vec<Vec<String>>,
    #[serde(default)]
    pub equalities: Vec<Vec<String>>,
}

impl FzFile {
    pub fn to_core(&self) -> Result<(Vec<Vec<HVector>>, HomogeneousCone), JsonError> {
        let parse_list = |rows: &[Vec<String>]| -> Result<Vec<HVector>, JsonError> {
            rows.iter().map(|r| vector_from_strings(r)).collect()
        };
        let ambient = HomogeneousCone::new(
            parse_list(&self.ambient.inequalities)?,
            parse_list(&self.ambient.equalities)?,
            self.ambient.dim,
        );
        let cones = self
            .cones
            .iter()
            .map(|gens| parse_list(gens))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((cones, ambient))
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct FzOut {
    pub verdict: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generic_g: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cones_containing_g: Option<usize>,
}

impl FzOut {
    pub fn build(out: &FzCheck) -> Self {
        FzOut {
            verdict: match out.verdict {
                FzVerdict::Tiles => "tiles".into(),
                FzVerdict::NotTiles => "not_tiles".into(),
                FzVerdict::Indeterminate => "indeterminate".into(),
            },
            detail: out.detail.clone(),
            generic_g: out.generic_g.as_ref().map(vector_to_strings),
            cones_containing_g: out.cones_containing_g,
        }
    }
}

#[derive(Serialize, Deserialize, Debug)]
pub struct EnumD1Out {
    pub n: usize,
    pub counts: BTreeMap<String, u64>,
    pub types: Vec<Vec<String>>,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct EquivOut {
    pub equivalent: bool,
}

/// Pretty JSON with a trailing newline; key order is fixed by the BTreeMaps.
pub fn to_pretty(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
