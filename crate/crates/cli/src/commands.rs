//! Command implementations. Every command returns its process exit code and
//! the bytes for stdout; errors bubble up as strings and exit with code 1.

use std::path::Path;

use convpart_core::arrangement::{carries, project_pi, CarryVerdict, EnumLimits, Partition};
use convpart_core::atlas;
use convpart_core::faces::enumerate_faces;
use convpart_core::metric::{distance, McOpts};
use convpart_core::nodes::{analyze, comb_equiv, comb_type};
use convpart_core::realization::{
    check_constraints, export_constraints, fz_check, reconstruct, FzVerdict, DEFAULT_G_TRIALS,
};

use crate::json::{self, to_pretty};
use crate::render::{render, View};

pub struct CmdResult {
    pub exit: i32,
    pub output: String,
}

fn ok(output: String) -> Result<CmdResult, String> {
    Ok(CmdResult { exit: 0, output })
}

fn load_partition(path: &Path, limits: &EnumLimits) -> Result<Partition, String> {
    let a = json::read_arrangement(path)?;
    project_pi(&a, limits).map_err(|e| e.to_string())
}

/// Exit codes: 0 proper, 2 non-proper, 3 does not carry.
pub fn cmd_carries(path: &Path, limits: &EnumLimits) -> Result<CmdResult, String> {
    let a = json::read_arrangement(path)?;
    let verdict = carries(&a, limits).map_err(|e| e.to_string())?;
    let exit = match &verdict {
        CarryVerdict::CarriesProper => 0,
        CarryVerdict::CarriesNonProper { .. } => 2,
        CarryVerdict::DoesNotCarry { .. } => 3,
    };
    Ok(CmdResult {
        exit,
        output: to_pretty(&json::CarriesOut::from_verdict(&verdict)),
    })
}

pub fn cmd_faces(path: &Path, limits: &EnumLimits) -> Result<CmdResult, String> {
    let p = load_partition(path, limits)?;
    let poset = enumerate_faces(&p, limits).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::FacesOut::build(&p, &poset)?))
}

pub fn cmd_type(path: &Path, limits: &EnumLimits) -> Result<CmdResult, String> {
    let p = load_partition(path, limits)?;
    let t = comb_type(&p, limits).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::TypeOut::build(&t)))
}

pub fn cmd_equiv(a: &Path, b: &Path, limits: &EnumLimits) -> Result<CmdResult, String> {
    let pa = load_partition(a, limits)?;
    let pb = load_partition(b, limits)?;
    let ta = comb_type(&pa, limits).map_err(|e| e.to_string())?;
    let tb = comb_type(&pb, limits).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::EquivOut {
        equivalent: comb_equiv(&ta, &tb),
    }))
}

pub fn cmd_distance(
    a: &Path,
    b: &Path,
    seed: Option<u64>,
    samples: u64,
    limits: &EnumLimits,
) -> Result<CmdResult, String> {
    let pa = load_partition(a, limits)?;
    let pb = load_partition(b, limits)?;
    if pa.d() >= 3 && seed.is_none() {
        return Err("--seed is required for Monte Carlo distances (d >= 3)".into());
    }
    let opts = McOpts {
        seed: seed.unwrap_or(0),
        samples,
    };
    let m = distance(&pa, &pb, &opts).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::DistanceOut::build(
        &m,
        seed,
        Some(samples),
    )))
}

pub fn cmd_nodes(path: &Path, limits: &EnumLimits) -> Result<CmdResult, String> {
    let p = load_partition(path, limits)?;
    let an = analyze(&p, limits).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::NodesOut::build(&p, &an.poset, &an.nodes)?))
}

/// Exit codes: 0 realized, 2 rejected by the constraint system.
pub fn cmd_reconstruct(
    path: &Path,
    assignment: &Path,
    seed: u64,
    limits: &EnumLimits,
) -> Result<CmdResult, String> {
    let p = load_partition(path, limits)?;
    let an = analyze(&p, limits).map_err(|e| e.to_string())?;
    let x = json::read_assignment(assignment)?;
    let report = check_constraints(&p, &an, &x, seed, DEFAULT_G_TRIALS)
        .map_err(|e| e.to_string())?;
    if !report.passed() {
        return Ok(CmdResult {
            exit: 2,
            output: to_pretty(&json::ReconstructOut {
                report: json::ReportOut::build(&report),
                comb_equiv: None,
                regions: None,
            }),
        });
    }
    let rebuilt = reconstruct(&p, &an, &x, seed).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::ReconstructOut {
        report: json::ReportOut::build(&report),
        comb_equiv: Some(true),
        regions: Some(json::region_map(&rebuilt)),
    }))
}

pub fn cmd_constraints(path: &Path, limits: &EnumLimits) -> Result<CmdResult, String> {
    let p = load_partition(path, limits)?;
    let an = analyze(&p, limits).map_err(|e| e.to_string())?;
    let system = export_constraints(&p, &an).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::ConstraintsOut::build(&system)))
}

/// Exit codes: 0 tiles, 2 does not tile, 3 indeterminate.
pub fn cmd_fzcheck(path: &Path, seed: u64) -> Result<CmdResult, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let file: json::FzFile =
        serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let (cones, ambient) = file.to_core()?;
    let out = fz_check(&cones, &ambient, seed, DEFAULT_G_TRIALS).map_err(|e| e.to_string())?;
    let exit = match out.verdict {
        FzVerdict::Tiles => 0,
        FzVerdict::NotTiles => 2,
        FzVerdict::Indeterminate => 3,
    };
    Ok(CmdResult {
        exit,
        output: to_pretty(&json::FzOut::build(&out)),
    })
}

pub fn cmd_enum_d1(n: usize) -> Result<CmdResult, String> {
    let (counts, types) = atlas::enum_d1_types(n).map_err(|e| e.to_string())?;
    ok(to_pretty(&json::EnumD1Out {
        n,
        counts: counts
            .into_iter()
            .map(|(dim, c)| (dim.to_string(), c))
            .collect(),
        types: types
            .into_iter()
            .map(|t| t.occupied.iter().map(|l| l.to_string()).collect())
            .collect(),
    }))
}

pub fn cmd_render(
    path: &Path,
    view: View,
    window: f64,
    limits: &EnumLimits,
) -> Result<CmdResult, String> {
    let p = load_partition(path, limits)?;
    if p.d() != 2 {
        return Err(format!("render supports d = 2 only, got d = {}", p.d()));
    }
    let poset = enumerate_faces(&p, limits).map_err(|e| e.to_string())?;
    ok(render(&p, &poset, view, window))
}
