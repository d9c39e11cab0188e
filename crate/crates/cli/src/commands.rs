use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use num_complex::Complex64;
use polyhardy_core::polyanalytic::boundary_limits;
use polyhardy_core::verify::{self, VerifyConfig};
use polyhardy_core::{
    apply_sk, cauchy_transform, diagnose, hardy_split, solve_jump_problem, CurveDescriptor,
    PointClass, ProjectionDefects, Side, WhitneyJet,
};
use serde::Serialize;

use crate::config::{RunConfig, DEFAULT_VERIFY_K};
use crate::probes;

/// Process exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Nothing usable was produced.
    Failed,
    /// Ran to completion but a measured defect exceeds its threshold.
    AboveTolerance,
}

impl Outcome {
    pub fn code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Failed => 1,
            Outcome::AboveTolerance => 2,
        }
    }
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn write_jet(path: &Path, jet: &WhitneyJet) -> Result<()> {
    jet.write(path)
        .with_context(|| format!("writing {}", path.display()))
}

fn prepare_out(config: &RunConfig) -> Result<&Path> {
    let dir = config.out_dir()?;
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    Ok(dir)
}

fn side_label(class: PointClass) -> &'static str {
    match class {
        PointClass::Interior => Side::Plus.label(),
        PointClass::Exterior => Side::Minus.label(),
        PointClass::NearBoundary => "near-boundary",
    }
}

#[derive(Serialize)]
struct DecomposeReport<'a> {
    input: &'a str,
    curve: &'a CurveDescriptor,
    k: usize,
    tolerance: f64,
    involution_defect: f64,
    projection_defects: ProjectionDefects,
    oracle_gap: Option<f64>,
    reconstruction_error: f64,
    plus_sup_norm: f64,
    minus_sup_norm: f64,
    pass: bool,
}

pub fn decompose(config: &RunConfig) -> Result<Outcome> {
    let tol = config.tolerance()?;
    let loaded = config.load_jet()?;
    let out = prepare_out(config)?;
    let split = hardy_split(&loaded.jet)?;
    let diagnostics = diagnose(&loaded.jet, loaded.exact.as_ref())?;
    let pass = diagnostics.involution_defect <= tol;

    write_jet(&out.join("plus.json"), &split.plus)?;
    write_jet(&out.join("minus.json"), &split.minus)?;
    write_json(
        &out.join("report.json"),
        &DecomposeReport {
            input: &loaded.label,
            curve: loaded.jet.curve().descriptor(),
            k: loaded.jet.k(),
            tolerance: tol,
            involution_defect: diagnostics.involution_defect,
            projection_defects: diagnostics.projection_defects,
            oracle_gap: diagnostics.oracle_gap,
            reconstruction_error: split.reconstruction_error,
            plus_sup_norm: split.plus.sup_norm(),
            minus_sup_norm: split.minus.sup_norm(),
            pass,
        },
    )?;
    if pass {
        Ok(Outcome::Success)
    } else {
        log::warn!(
            "involution defect {:e} exceeds tolerance {tol:e}",
            diagnostics.involution_defect
        );
        Ok(Outcome::AboveTolerance)
    }
}

pub fn apply(config: &RunConfig) -> Result<Outcome> {
    let loaded = config.load_jet()?;
    let out = prepare_out(config)?;
    write_jet(&out.join("sk.json"), &apply_sk(&loaded.jet)?)?;
    Ok(Outcome::Success)
}

pub fn verify(config: &RunConfig) -> Result<Outcome> {
    let verify_config = VerifyConfig {
        curve: config.descriptor()?,
        k_max: config.k.unwrap_or(DEFAULT_VERIFY_K),
        seed: config.seed(),
        tolerance: config.tolerance()?,
    };
    let report = verify::run(&verify_config)?;
    match &config.out {
        Some(_) => {
            let out = prepare_out(config)?;
            write_json(&out.join("report.json"), &report)?;
            for p in &report.properties {
                println!(
                    "{} {}: defect {:e}, threshold {:e}",
                    if p.pass { "PASS" } else { "FAIL" },
                    p.name,
                    p.defect,
                    p.threshold
                );
            }
        }
        None => println!("{}", serde_json::to_string_pretty(&report)?),
    }
    Ok(if report.all_pass {
        Outcome::Success
    } else {
        Outcome::AboveTolerance
    })
}

/// Shortest round-trip text, in exponent form for very small or large magnitudes.
fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e16).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn write_values(path: &Path, rows: &[(Complex64, Complex64, PointClass)]) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["re_z", "im_z", "re_F", "im_F", "side"])?;
    for (z, v, class) in rows {
        w.write_record([
            num(z.re),
            num(z.im),
            num(v.re),
            num(v.im),
            side_label(*class).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn write_rejects(path: &Path, rejects: &[(Complex64, f64)], band: f64) -> Result<()> {
    let mut w =
        csv::Writer::from_path(path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["re_z", "im_z", "distance", "band"])?;
    for (z, d) in rejects {
        w.write_record([num(z.re), num(z.im), num(*d), num(band)])?;
    }
    w.flush()?;
    Ok(())
}

/// Evaluates `value` at the accepted probes and writes `values.csv` and
/// `rejects.csv`. Returns false when no probe was accepted.
fn probe_outputs<F>(config: &RunConfig, jet: &WhitneyJet, out: &Path, value: F) -> Result<bool>
where
    F: Fn(Complex64, PointClass) -> Result<Complex64>,
{
    let text = match &config.probes {
        Some(t) => t,
        None => return Ok(true),
    };
    let points = probes::parse(text)?;
    let curve = jet.curve();
    let (accepted, rejected) = probes::partition(curve, &points);
    let rows = accepted
        .iter()
        .map(|&(z, class)| Ok((z, value(z, class)?, class)))
        .collect::<Result<Vec<_>>>()?;
    write_values(&out.join("values.csv"), &rows)?;
    write_rejects(&out.join("rejects.csv"), &rejected, curve.band())?;
    if !rejected.is_empty() {
        log::warn!(
            "{} probe(s) within {:e} of the curve were rejected, see rejects.csv",
            rejected.len(),
            curve.band()
        );
    }
    if rows.is_empty() {
        log::error!("no probe point is far enough from the curve");
    }
    Ok(!rows.is_empty())
}

pub fn evaluate(config: &RunConfig) -> Result<Outcome> {
    if config.probes.is_none() {
        anyhow::bail!("evaluate needs probe points (--probes)");
    }
    let loaded = config.load_jet()?;
    let out = prepare_out(config)?;
    let jet = &loaded.jet;
    let any = probe_outputs(config, jet, out, |z, class| {
        let side = match class {
            PointClass::Interior => Side::Plus,
            _ => Side::Minus,
        };
        Ok(cauchy_transform(jet, z, side)?)
    })?;
    Ok(if any {
        Outcome::Success
    } else {
        Outcome::Failed
    })
}

#[derive(Serialize)]
struct JumpReport<'a> {
    input: &'a str,
    curve: &'a CurveDescriptor,
    k: usize,
    tolerance: f64,
    max_jump_residual: f64,
    pass: bool,
}

pub fn jump_solve(config: &RunConfig) -> Result<Outcome> {
    let tol = config.tolerance()?;
    let loaded = config.load_jet()?;
    let out = prepare_out(config)?;
    let jet = &loaded.jet;
    let solution = solve_jump_problem(jet);
    let residuals = solution.jump_residuals()?;
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);

    write_jet(
        &out.join("interior.json"),
        &boundary_limits(jet, Side::Plus)?,
    )?;
    write_jet(
        &out.join("exterior.json"),
        &boundary_limits(jet, Side::Minus)?,
    )?;

    let path = out.join("residuals.csv");
    let mut w =
        csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
    w.write_record(["node", "re_t", "im_t", "residual"])?;
    for (i, (t, r)) in jet.curve().points().iter().zip(&residuals).enumerate() {
        w.write_record([i.to_string(), num(t.re), num(t.im), num(*r)])?;
    }
    w.flush()?;

    let pass = max_residual <= tol;
    write_json(
        &out.join("report.json"),
        &JumpReport {
            input: &loaded.label,
            curve: jet.curve().descriptor(),
            k: jet.k(),
            tolerance: tol,
            max_jump_residual: max_residual,
            pass,
        },
    )?;
    if !pass {
        log::warn!("largest jump residual {max_residual:e} exceeds tolerance {tol:e}");
    }
    let any = probe_outputs(config, jet, out, |z, _| Ok(solution.evaluate(z)?))?;
    Ok(if any {
        Outcome::Success
    } else {
        Outcome::Failed
    })
}
