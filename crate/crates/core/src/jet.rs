//! Whitney jets sampled on a curve, stored by their `(0, n)` components.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveDescriptor, CurveDiscretization};
use crate::error::{Error, Result};
use crate::laurent::LaurentJet;
use crate::polyanalytic::PolyanalyticFn;

/// Jet of order `k`: row `n` holds `f^(0,n)` at every curve node.
#[derive(Clone, Debug)]
pub struct WhitneyJet {
    alpha: f64,
    curve: Arc<CurveDiscretization>,
    components: Vec<Vec<Complex64>>,
}

impl WhitneyJet {
    pub fn new(
        curve: Arc<CurveDiscretization>,
        components: Vec<Vec<Complex64>>,
        alpha: f64,
    ) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Input("a jet needs at least one component".into()));
        }
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Input(format!(
                "Hölder exponent must lie in (0, 1], got {alpha}"
            )));
        }
        for (n, row) in components.iter().enumerate() {
            if row.len() != curve.len() {
                return Err(Error::Input(format!(
                    "component {n} has {} samples, curve has {} nodes",
                    row.len(),
                    curve.len()
                )));
            }
            if let Some(i) = row.iter().position(|z| !z.is_finite()) {
                return Err(Error::Input(format!(
                    "non-finite sample in component {n} at node {i}"
                )));
            }
        }
        Ok(Self {
            alpha,
            curve,
            components,
        })
    }

    pub fn zeros(curve: Arc<CurveDiscretization>, k: usize) -> Self {
        let n = curve.len();
        Self {
            alpha: 1.0,
            curve,
            components: vec![vec![Complex64::new(0.0, 0.0); n]; k + 1],
        }
    }

    /// Samples each component at the curve points, read as a function of `z`.
    pub fn from_laurent(curve: Arc<CurveDiscretization>, jet: &LaurentJet) -> Self {
        let components = jet
            .components()
            .iter()
            .map(|p| curve.points().iter().map(|&z| p.eval(z)).collect())
            .collect();
        Self {
            alpha: 1.0,
            curve,
            components,
        }
    }

    pub fn from_fn<F>(curve: Arc<CurveDiscretization>, k: usize, f: F) -> Self
    where
        F: Fn(usize, Complex64) -> Complex64,
    {
        let components = (0..=k)
            .map(|n| curve.points().iter().map(|&z| f(n, z)).collect())
            .collect();
        Self {
            alpha: 1.0,
            curve,
            components,
        }
    }

    pub fn with_alpha(mut self, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha <= 1.0) {
            return Err(Error::Input(format!(
                "Hölder exponent must lie in (0, 1], got {alpha}"
            )));
        }
        self.alpha = alpha;
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.components.len() - 1
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn curve(&self) -> &Arc<CurveDiscretization> {
        &self.curve
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    pub fn row(&self, n: usize) -> &[Complex64] {
        &self.components[n]
    }

    pub(crate) fn with_components(&self, components: Vec<Vec<Complex64>>) -> Self {
        debug_assert!(components.iter().all(|r| r.len() == self.curve.len()));
        Self {
            alpha: self.alpha,
            curve: self.curve.clone(),
            components,
        }
    }

    /// The sub-collection `f_(0,j2)`: rows `j2..=k`, as a jet of order `k - j2`.
    pub fn subjet(&self, j2: usize) -> Result<Self> {
        if j2 > self.k() {
            return Err(Error::Domain(format!(
                "sub-jet index {j2} exceeds jet order {}",
                self.k()
            )));
        }
        Ok(self.with_components(self.components[j2..].to_vec()))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.k() != other.k() {
            return Err(Error::Input(format!(
                "jet orders differ: {} vs {}",
                self.k(),
                other.k()
            )));
        }
        if !Arc::ptr_eq(&self.curve, &other.curve)
            && self.curve.descriptor() != other.curve.descriptor()
        {
            return Err(Error::Input("jets live on different curves".into()));
        }
        Ok(())
    }

    fn zip_with<F>(&self, other: &Self, op: F) -> Result<Self>
    where
        F: Fn(Complex64, Complex64) -> Complex64,
    {
        self.check_compatible(other)?;
        Ok(self.with_components(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect())
                .collect(),
        ))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.map(|z| z * s)
    }

    pub fn map<F: Fn(Complex64) -> Complex64>(&self, f: F) -> Self {
        self.with_components(
            self.components
                .iter()
                .map(|row| row.iter().map(|&z| f(z)).collect())
                .collect(),
        )
    }

    pub fn sup_norm(&self) -> f64 {
        self.components
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |self - other|` over all rows and nodes.
    pub fn sup_distance(&self, other: &Self) -> Result<f64> {
        Ok(self.sub(other)?.sup_norm())
    }

    pub fn to_file(&self) -> JetFile {
        JetFile {
            k: self.k(),
            alpha: self.alpha,
            curve: self.curve.descriptor().clone(),
            components: self
                .components
                .iter()
                .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    pub fn from_file(file: JetFile) -> Result<Self> {
        if file.components.len() != file.k + 1 {
            return Err(Error::Input(format!(
                "jet declares k={} but carries {} components",
                file.k,
                file.components.len()
            )));
        }
        let curve = Arc::new(file.curve.build()?);
        let components = file
            .components
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        Self::new(curve, components, file.alpha)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_file())?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::from_file(serde_json::from_str(text)?)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }
}

fn default_alpha() -> f64 {
    1.0
}

/// JSON form of a jet: `{"k", "alpha", "curve", "components"}`, row `n` = `f^(0,n)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JetFile {
    pub k: usize,
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    pub curve: CurveDescriptor,
    pub components: Vec<Vec<[f64; 2]>>,
}

/// Boundary jet `f^(0,j) = dbar^j F` of a polyanalytic function of order at most `k + 1`.
pub fn jet_from_polyanalytic(
    f: &PolyanalyticFn,
    curve: Arc<CurveDiscretization>,
    k: usize,
) -> Result<WhitneyJet> {
    if f.order() > k + 1 {
        return Err(Error::OrderMismatch {
            order: f.order(),
            limit: k + 1,
        });
    }
    let components = (0..=k)
        .map(|j| f.dbar(j).trace(&curve))
        .collect::<Result<Vec<_>>>()?;
    WhitneyJet::new(curve, components, 1.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Finite Lipschitz-constant estimate along the antiholomorphic Taylor direction:
///
/// `sup |f_j2(t) - sum_l f_(j2+l)(tau) conj(t - tau)^l / l!| / |t - tau|^(k + alpha - j2)`
///
/// over the given node pairs and `0 <= j2 <= k`. Coincident pairs are skipped.
pub fn compatibility_residual(f: &WhitneyJet, sample_pairs: &[(usize, usize)]) -> f64 {
    let k = f.k();
    let points = f.curve().points();
    let mut worst: f64 = 0.0;
    for &(i, ip) in sample_pairs {
        let (Some(&t), Some(&tau)) = (points.get(i), points.get(ip)) else {
            log::warn!("node pair ({i}, {ip}) out of range, skipped");
            continue;
        };
        let dist = (t - tau).norm();
        if dist == 0.0 {
            log::warn!("coincident node pair ({i}, {ip}) skipped");
            continue;
        }
        let dbar = (t - tau).conj();
        for j2 in 0..=k {
            let taylor: Complex64 = (0..=k - j2)
                .map(|l| f.row(j2 + l)[ip] * dbar.powi(l as i32) / factorial(l))
                .sum();
            let remainder = (f.row(j2)[i] - taylor).norm();
            worst = worst.max(remainder / dist.powf(k as f64 + f.alpha() - j2 as f64));
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::LaurentPoly;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit_circle(n: usize) -> Arc<CurveDiscretization> {
        Arc::new(CurveDiscretization::circle(c(0.0, 0.0), 1.0, n).unwrap())
    }

    fn poly(terms: &[(i64, f64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, x)| (e, c(x, 0.0)))).unwrap()
    }

    fn neighbour_pairs(n: usize) -> Vec<(usize, usize)> {
        (0..n)
            .flat_map(|i| (1..=3).map(move |s| (i, (i + s) % n)))
            .collect()
    }

    #[test]
    fn jet_of_zbar() {
        let curve = unit_circle(32);
        let f = PolyanalyticFn::exact(vec![LaurentPoly::zero(), poly(&[(0, 1.0)])]).unwrap();
        let jet = jet_from_polyanalytic(&f, curve.clone(), 1).unwrap();
        for (i, t) in curve.points().iter().enumerate() {
            assert!((jet.row(0)[i] - 1.0 / t).norm() < 1e-15);
            assert!((jet.row(1)[i] - c(1.0, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn jet_of_analytic_k0() {
        let curve = unit_circle(16);
        let f = PolyanalyticFn::exact(vec![poly(&[(2, 1.0)])]).unwrap();
        let jet = jet_from_polyanalytic(&f, curve.clone(), 0).unwrap();
        for (i, t) in curve.points().iter().enumerate() {
            assert!((jet.row(0)[i] - t * t).norm() < 1e-15);
        }
    }

    #[test]
    fn jet_of_triple_analytic() {
        // F = zbar^2/2 + zbar z: f01 = zbar + z, f02 = 1
        let curve = unit_circle(32);
        let f = PolyanalyticFn::exact(vec![
            LaurentPoly::zero(),
            poly(&[(1, 1.0)]),
            poly(&[(0, 0.5)]),
        ])
        .unwrap();
        let jet = jet_from_polyanalytic(&f, curve.clone(), 2).unwrap();
        for (i, t) in curve.points().iter().enumerate() {
            assert!((jet.row(1)[i] - (t.conj() + t)).norm() < 1e-14);
            assert!((jet.row(2)[i] - c(1.0, 0.0)).norm() < 1e-15);
        }
        // finite-difference spot check of dbar off the curve
        let z = c(0.3, -0.2);
        let h = 1e-5;
        let dbar = (f.evaluate(z + h).unwrap() - f.evaluate(z - h).unwrap()) / (4.0 * h)
            + (f.evaluate(z + c(0.0, h)).unwrap() - f.evaluate(z - c(0.0, h)).unwrap())
                * c(0.0, 1.0)
                / (4.0 * h);
        assert!((dbar - (z.conj() + z)).norm() < 1e-8);
    }

    #[test]
    fn order_mismatch() {
        let f = PolyanalyticFn::exact(vec![
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            poly(&[(0, 1.0)]),
        ])
        .unwrap();
        assert!(matches!(
            jet_from_polyanalytic(&f, unit_circle(16), 1),
            Err(Error::OrderMismatch { order: 3, limit: 2 })
        ));
    }

    #[test]
    fn subjet_rows() {
        let curve = unit_circle(16);
        let jet = WhitneyJet::from_fn(curve, 2, |n, z| z * n as f64);
        assert_eq!(jet.subjet(0).unwrap().components(), jet.components());
        let top = jet.subjet(2).unwrap();
        assert_eq!(top.k(), 0);
        assert_eq!(top.row(0), jet.row(2));
        assert!(jet.subjet(3).is_err());
    }

    #[test]
    fn subjet_matches_dbar_construction() {
        let curve = unit_circle(32);
        let f = PolyanalyticFn::exact(vec![
            LaurentPoly::zero(),
            LaurentPoly::zero(),
            poly(&[(0, 0.5)]),
        ])
        .unwrap();
        let jet = jet_from_polyanalytic(&f, curve.clone(), 2).unwrap();
        let direct = jet_from_polyanalytic(&f.dbar(1), curve, 1).unwrap();
        assert_eq!(jet.subjet(1).unwrap().components(), direct.components());
    }

    #[test]
    fn residual_of_constant_is_zero() {
        let jet = WhitneyJet::from_fn(unit_circle(32), 0, |_, _| c(2.0, -1.0));
        assert_eq!(compatibility_residual(&jet, &neighbour_pairs(32)), 0.0);
    }

    #[test]
    fn residual_bounded_under_refinement_and_flags_corruption() {
        // F = zbar^2: f00 = zbar^2, f01 = 2 zbar, f02 = 2, plus an analytic-free term
        let f = PolyanalyticFn::exact(vec![
            poly(&[(0, 1.0)]),
            poly(&[(0, 1.0)]),
            poly(&[(0, 0.5)]),
        ])
        .unwrap();
        let mut previous = None;
        for n in [32, 64, 128] {
            let jet = jet_from_polyanalytic(&f, unit_circle(n), 2).unwrap();
            let r = compatibility_residual(&jet, &neighbour_pairs(n));
            assert!(r < 1e-6, "residual {r} at N={n}");
            previous = Some(r);
        }
        let clean = previous.unwrap();
        let jet = jet_from_polyanalytic(&f, unit_circle(128), 2).unwrap();
        let mut rows = jet.components().to_vec();
        rows[1][17] += c(1.0, 0.0);
        let corrupted = jet.with_components(rows);
        let bad = compatibility_residual(&corrupted, &neighbour_pairs(128));
        assert!(bad >= 10.0 * clean.max(1e-300));
        assert!(bad > 1.0);
    }

    #[test]
    fn coincident_pairs_skipped() {
        let jet = WhitneyJet::from_fn(unit_circle(16), 1, |_, z| z);
        assert_eq!(compatibility_residual(&jet, &[(3, 3)]), 0.0);
    }

    #[test]
    fn json_shape_and_validation() {
        let jet = WhitneyJet::from_fn(unit_circle(8), 1, |n, z| z * (n + 1) as f64);
        let text = jet.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["k"], 1);
        assert_eq!(value["curve"]["kind"], "circle");
        assert_eq!(value["components"][1][0][0], 2.0);
        let back = WhitneyJet::from_json(&text).unwrap();
        assert_eq!(back.components(), jet.components());

        let bad = r#"{"k":1,"alpha":1,"curve":{"kind":"circle","center":[0,0],"radius":1,"N":8},
                      "components":[[[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]]}"#;
        assert!(WhitneyJet::from_json(bad).is_err());
    }
}
