//! Principal-value quadrature, the operator `S_k`, its Plemelj projections
//! and the Hardy split.
//!
//! Row `j2` of `S_k f` is
//!
//! ```text
//! (1/(pi i)) PV int sum_{p=j2..k} conj(t - zeta)^(p-j2) / (p-j2)! f_p(zeta) / (zeta - t) dzeta
//! ```
//!
//! The factor `conj(t - zeta)^q` is expanded binomially in `conj(t)` and
//! `conj(zeta)`, so every term is a PV Cauchy integral of `conj(zeta)^r f_p`
//! against the single kernel `1/(zeta - t)`. Those are computed once for all
//! rows and recombined per target.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::curve::CurveDiscretization;
use crate::error::{Error, Result};
use crate::jet::WhitneyJet;
use crate::laurent::{sk_exact_circle, LaurentJet};

/// Derivative in the curve parameter of periodic samples on `[0, 2 pi)`.
pub fn spectral_derivative(values: &[Complex64]) -> Vec<Complex64> {
    let n = values.len();
    let mut buf = values.to_vec();
    let mut planner = FftPlanner::<f64>::new();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, v) in buf.iter_mut().enumerate() {
        let wave = if 2 * k < n {
            k as f64
        } else if 2 * k > n {
            k as f64 - n as f64
        } else {
            0.0
        };
        *v *= Complex64::new(0.0, wave / n as f64);
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf
}

/// `(1/(pi i)) PV int g(zeta) / (zeta - t_i) dzeta` at every node `t_i`.
///
/// Singularity subtraction: the PV integral of `(g(zeta) - g(t_i))/(zeta - t_i)`
/// is regular and integrated by the trapezoidal rule, with the diagonal entry
/// replaced by its limit `d/ds g(gamma(s_i))`; the subtracted part contributes
/// `g(t_i)`.
pub fn pv_cauchy(curve: &CurveDiscretization, g: &[Complex64]) -> Result<Vec<Complex64>> {
    if g.len() != curve.len() {
        return Err(Error::Input(format!(
            "{} samples for a curve with {} nodes",
            g.len(),
            curve.len()
        )));
    }
    if let Some(i) = g.iter().position(|z| !z.is_finite()) {
        return Err(Error::Input(format!("non-finite sample at node {i}")));
    }
    let points = curve.points();
    let scale = Complex64::new(0.0, -curve.step() / PI);
    let weights: Vec<Complex64> = curve.tangents().iter().map(|&t| t * scale).collect();
    let dg = spectral_derivative(g);

    Ok((0..points.len())
        .into_par_iter()
        .map(|i| {
            let (t, gt) = (points[i], g[i]);
            let mut acc = dg[i] * scale;
            for (j, (&z, &w)) in points.iter().zip(&weights).enumerate() {
                if j != i {
                    acc += (g[j] - gt) / (z - t) * w;
                }
            }
            acc + gt
        })
        .collect())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binom(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `S_k f` on the `(0, j2)` components.
pub fn apply_sk(f: &WhitneyJet) -> Result<WhitneyJet> {
    let curve = f.curve();
    let k = f.k();
    let points = curve.points();
    let conj_points: Vec<Complex64> = points.iter().map(|z| z.conj()).collect();

    // pv[p][r] = PV transform of conj(zeta)^r f_p, 0 <= r <= p
    let pv: Vec<Vec<Vec<Complex64>>> = (0..=k)
        .map(|p| {
            let row = f.row(p);
            if row.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
                return Ok(vec![vec![Complex64::new(0.0, 0.0); row.len()]; p + 1]);
            }
            (0..=p)
                .map(|r| {
                    let g: Vec<Complex64> = row
                        .iter()
                        .zip(&conj_points)
                        .map(|(&v, &zb)| v * zb.powi(r as i32))
                        .collect();
                    pv_cauchy(curve, &g)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let components = (0..=k)
        .map(|j2| {
            (0..points.len())
                .map(|i| {
                    let tb = conj_points[i];
                    let mut acc = Complex64::new(0.0, 0.0);
                    for (p, pv_p) in pv.iter().enumerate().skip(j2) {
                        let q = p - j2;
                        let mut term = Complex64::new(0.0, 0.0);
                        for (r, pv_pr) in pv_p.iter().enumerate().take(q + 1) {
                            let sign = if r % 2 == 0 { 1.0 } else { -1.0 };
                            term += tb.powi((q - r) as i32) * pv_pr[i] * (sign * binom(q, r));
                        }
                        acc += term / factorial(q);
                    }
                    acc
                })
                .collect()
        })
        .collect();
    Ok(f.with_components(components))
}

/// `(f + S_k f) / 2`.
pub fn p_plus(f: &WhitneyJet) -> Result<WhitneyJet> {
    let s = apply_sk(f)?;
    Ok(combine(f, &s, 1.0))
}

/// `(f - S_k f) / 2`.
pub fn p_minus(f: &WhitneyJet) -> Result<WhitneyJet> {
    let s = apply_sk(f)?;
    Ok(combine(f, &s, -1.0))
}

fn combine(f: &WhitneyJet, s: &WhitneyJet, sign: f64) -> WhitneyJet {
    f.with_components(
        f.components()
            .iter()
            .zip(s.components())
            .map(|(a, b)| {
                a.iter()
                    .zip(b)
                    .map(|(&x, &y)| (x + y * sign) * 0.5)
                    .collect()
            })
            .collect(),
    )
}

/// `f = plus + minus` with `plus` in the image of `P+` and `minus` in the image of `P-`.
#[derive(Clone, Debug)]
pub struct HardySplit {
    pub plus: WhitneyJet,
    pub minus: WhitneyJet,
    /// `sup |f - (plus + minus)|`.
    pub reconstruction_error: f64,
    /// `sup |S_k^2 f - f|`.
    pub involution_defect: f64,
}

pub fn hardy_split(f: &WhitneyJet) -> Result<HardySplit> {
    let s = apply_sk(f)?;
    let plus = combine(f, &s, 1.0);
    let minus = combine(f, &s, -1.0);
    let reconstruction_error = f.sup_distance(&plus.add(&minus)?)?;
    let involution_defect = apply_sk(&s)?.sup_distance(f)?;
    Ok(HardySplit {
        plus,
        minus,
        reconstruction_error,
        involution_defect,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProjectionDefects {
    /// `sup |P+ P+ f - P+ f|`
    pub plus_idempotent: f64,
    /// `sup |P- P- f - P- f|`
    pub minus_idempotent: f64,
    /// `sup |P+ P- f|`
    pub plus_minus: f64,
    /// `sup |P- P+ f|`
    pub minus_plus: f64,
    /// `sup |P+ f + P- f - f|`
    pub sum_identity: f64,
}

impl ProjectionDefects {
    pub fn max(&self) -> f64 {
        [
            self.plus_idempotent,
            self.minus_idempotent,
            self.plus_minus,
            self.minus_plus,
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// Diagnostic report for one jet.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkDiagnostics {
    pub involution_defect: f64,
    pub projection_defects: ProjectionDefects,
    /// Gap to the residue oracle, when the curve is the unit circle and the
    /// exact data is known.
    pub oracle_gap: Option<f64>,
}

pub fn projection_defects(f: &WhitneyJet) -> Result<ProjectionDefects> {
    let plus = p_plus(f)?;
    let minus = p_minus(f)?;
    Ok(ProjectionDefects {
        plus_idempotent: p_plus(&plus)?.sup_distance(&plus)?,
        minus_idempotent: p_minus(&minus)?.sup_distance(&minus)?,
        plus_minus: p_plus(&minus)?.sup_norm(),
        minus_plus: p_minus(&plus)?.sup_norm(),
        sum_identity: plus.add(&minus)?.sup_distance(f)?,
    })
}

/// Largest gap between quadrature `S_k` and the residue oracle for Laurent
/// data sampled on the unit circle.
pub fn oracle_gap(curve: Arc<CurveDiscretization>, jet: &LaurentJet) -> Result<f64> {
    if !curve.is_unit_circle() {
        return Err(Error::Domain(
            "the residue oracle needs the unit circle".into(),
        ));
    }
    let sampled = WhitneyJet::from_laurent(curve.clone(), jet);
    let quad = apply_sk(&sampled)?;
    let exact = WhitneyJet::from_laurent(curve, &sk_exact_circle(jet)?);
    quad.sup_distance(&exact)
}

pub fn diagnose(f: &WhitneyJet, exact: Option<&LaurentJet>) -> Result<SkDiagnostics> {
    let s = apply_sk(f)?;
    let involution_defect = apply_sk(&s)?.sup_distance(f)?;
    let oracle_gap = match exact {
        Some(jet) if f.curve().is_unit_circle() => Some(oracle_gap(f.curve().clone(), jet)?),
        _ => None,
    };
    Ok(SkDiagnostics {
        involution_defect,
        projection_defects: projection_defects(f)?,
        oracle_gap,
    })
}
