//! Property suites behind the `verify` command.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveDescriptor, CurveDiscretization};
use crate::error::Result;
use crate::jet::{jet_from_polyanalytic, WhitneyJet};
use crate::laurent::{lemma1_value, sk_exact_circle};
use crate::polyanalytic::{alt_binom_closed_form, alt_binom_sum, solve_jump_problem};
use crate::samples::{self, Builtin};
use crate::sk_operator::{apply_sk, oracle_gap, p_minus, p_plus, projection_defects};

pub const LEMMA1_TOL: f64 = 1e-13;
pub const EXACT_ORACLE_TOL: f64 = 1e-13;
pub const ORACLE_TOL: f64 = 1e-10;
pub const SPECTRAL_RATIO: f64 = 1e-4;
pub const TRACE_TOL: f64 = 1e-9;
pub const JUMP_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub curve: CurveDescriptor,
    /// Jet orders `0..=k_max` are exercised.
    pub k_max: usize,
    pub seed: u64,
    /// Threshold for the involution and projection suites.
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            curve: CurveDescriptor::Circle {
                center: [0.0, 0.0],
                radius: 1.0,
                n: 256,
            },
            k_max: 3,
            seed: 7,
            tolerance: 1e-8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub defect: f64,
    pub threshold: f64,
    pub pass: bool,
}

impl PropertyResult {
    fn new(name: &str, defect: f64, threshold: f64) -> Self {
        Self {
            name: name.to_string(),
            defect,
            threshold,
            pass: defect <= threshold,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub properties: Vec<PropertyResult>,
    pub all_pass: bool,
}

const CORPUS_SIZE: usize = 20;
const TRACE_COUNT: usize = 10;
const LEMMA1_PAIRS: usize = 50;

fn random_unit<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn run(config: &VerifyConfig) -> Result<VerifyReport> {
    let curve = Arc::new(CurveDiscretization::from_descriptor(config.curve.clone())?);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut properties = Vec::new();
    let orders = config.k_max + 1;

    let corpus: Vec<_> = (0..CORPUS_SIZE)
        .map(|i| samples::random_laurent_jet(&mut rng, i % orders, -8, 8))
        .collect();

    let mut involution = 0.0f64;
    let mut projections = 0.0f64;
    let mut sum_identity = 0.0f64;
    for exact in &corpus {
        let f = WhitneyJet::from_laurent(curve.clone(), exact);
        let s = apply_sk(&f)?;
        involution = involution.max(apply_sk(&s)?.sup_distance(&f)?);
        let defects = projection_defects(&f)?;
        projections = projections.max(defects.max());
        sum_identity = sum_identity.max(defects.sum_identity / f.sup_norm().max(1.0));
    }
    properties.push(PropertyResult::new(
        "involution",
        involution,
        config.tolerance,
    ));
    properties.push(PropertyResult::new(
        "projection-algebra",
        projections,
        config.tolerance,
    ));
    properties.push(PropertyResult::new(
        "projection-sum",
        sum_identity,
        4.0 * f64::EPSILON,
    ));

    if curve.is_unit_circle() {
        let mut exact_defect = 0.0f64;
        let mut gap = 0.0f64;
        for exact in &corpus {
            let twice = sk_exact_circle(&sk_exact_circle(exact)?)?;
            exact_defect = exact_defect.max(twice.max_abs_diff(exact));
            gap = gap.max(oracle_gap(curve.clone(), exact)?);
        }
        properties.push(PropertyResult::new(
            "involution-oracle",
            exact_defect,
            EXACT_ORACLE_TOL,
        ));
        properties.push(PropertyResult::new("oracle-equivalence", gap, ORACLE_TOL));

        let fixed = samples::geometric_laurent_jet(config.k_max, 60, 0.7);
        let coarse = oracle_gap(Arc::new(curve.descriptor().with_nodes(32).build()?), &fixed)?;
        let fine = oracle_gap(
            Arc::new(curve.descriptor().with_nodes(128).build()?),
            &fixed,
        )?;
        properties.push(PropertyResult::new(
            "oracle-spectral-decay",
            fine / coarse,
            SPECTRAL_RATIO,
        ));
    }

    let mut plus_defect = 0.0f64;
    let mut minus_defect = 0.0f64;
    for i in 0..TRACE_COUNT {
        let k = i % orders;
        let inner = samples::random_interior_polyanalytic(&mut rng, k, 5);
        let f = jet_from_polyanalytic(&inner, curve.clone(), k)?;
        plus_defect = plus_defect.max(p_plus(&f)?.sup_distance(&f)?);
        let outer = samples::random_exterior_polyanalytic(&mut rng, k, 5);
        let f = jet_from_polyanalytic(&outer, curve.clone(), k)?;
        minus_defect = minus_defect.max(p_minus(&f)?.sup_distance(&f)?);
    }
    properties.push(PropertyResult::new(
        "trace-interior",
        plus_defect,
        TRACE_TOL,
    ));
    properties.push(PropertyResult::new(
        "trace-exterior",
        minus_defect,
        TRACE_TOL,
    ));

    let mut lemma = 0.0f64;
    for _ in 0..LEMMA1_PAIRS {
        let t = random_unit(&mut rng);
        let mut tau = random_unit(&mut rng);
        while tau == t {
            tau = random_unit(&mut rng);
        }
        for m in 1..=6 {
            for n in 1..=6 {
                lemma = lemma.max(lemma1_value(m, n, t, tau)?.norm());
            }
        }
    }
    properties.push(PropertyResult::new("lemma1-grid", lemma, LEMMA1_TOL));

    let mut mismatches = 0usize;
    for k in 0..=10 {
        for m in 0..=k {
            if alt_binom_sum(k, m)? != alt_binom_closed_form(k, m) {
                mismatches += 1;
            }
        }
    }
    properties.push(PropertyResult::new("comb-identity", mismatches as f64, 0.0));

    let jet = Builtin::Mixed.jet(curve.clone(), config.k_max)?;
    let residual = solve_jump_problem(&jet)
        .jump_residuals()?
        .into_iter()
        .fold(0.0, f64::max);
    properties.push(PropertyResult::new("jump-identity", residual, JUMP_TOL));

    let all_pass = properties.iter().all(|p| p.pass);
    Ok(VerifyReport {
        config: config.clone(),
        properties,
        all_pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coarse_grid_reports_failures() {
        let config = VerifyConfig {
            curve: CurveDescriptor::Circle {
                center: [0.0, 0.0],
                radius: 1.0,
                n: 8,
            },
            k_max: 2,
            ..VerifyConfig::default()
        };
        let report = run(&config).unwrap();
        assert!(!report.all_pass);
        let inv = report
            .properties
            .iter()
            .find(|p| p.name == "involution")
            .unwrap();
        assert!(!inv.pass && inv.defect > inv.threshold);
    }
}
