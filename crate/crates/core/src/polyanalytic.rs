//! Polyanalytic functions `F = sum_{m=0..k} F_m(z) conj(z)^m`, their Cauchy-type
//! representations on either side of a curve, and the jump problem.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::curve::{CurveDiscretization, PointClass};
use crate::error::{Error, Result};
use crate::jet::WhitneyJet;
use crate::laurent::LaurentPoly;
use crate::sk_operator::{apply_sk, p_minus, p_plus};

/// Interior (`Plus`) or exterior (`Minus`) domain of a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Plus => "interior",
            Side::Minus => "exterior",
        }
    }

    fn class(self) -> PointClass {
        match self {
            Side::Plus => PointClass::Interior,
            Side::Minus => PointClass::Exterior,
        }
    }
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

#[derive(Clone, Debug)]
enum Repr {
    /// Analytic components as Laurent polynomials in `z`.
    Exact(Vec<LaurentPoly>),
    /// Cauchy-type integral of a boundary jet.
    ///
    /// `Plus`: `F = sum_m C[F_m] conj(z)^m`. `Minus`: `F = -sum_m C[F_m] conj(z)^m
    /// + sum_m F_m(inf) conj(z)^m`. Here `C` is the Cauchy integral and `F_m` on
    /// the curve comes from the jet through [`components_from_derivatives`].
    Numeric {
        jet: WhitneyJet,
        side: Side,
        at_infinity: Vec<Complex64>,
        boundary_components: Vec<Vec<Complex64>>,
    },
}

/// A polyanalytic function of order `k + 1`.
#[derive(Clone, Debug)]
pub struct PolyanalyticFn {
    repr: Repr,
}

impl PolyanalyticFn {
    pub fn exact(components: Vec<LaurentPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Input(
                "a polyanalytic function needs at least one component".into(),
            ));
        }
        Ok(Self {
            repr: Repr::Exact(components),
        })
    }

    pub fn zero() -> Self {
        Self {
            repr: Repr::Exact(vec![LaurentPoly::zero()]),
        }
    }

    /// The function whose boundary jet on `side` is `jet`, with analytic
    /// components vanishing at infinity on the exterior side.
    pub fn from_jet(jet: WhitneyJet, side: Side) -> Self {
        let k = jet.k();
        Self::numeric(jet, side, vec![zero(); k + 1])
    }

    /// Exterior function with prescribed bounded limits `F_m(inf)`.
    pub fn from_jet_with_limits(jet: WhitneyJet, at_infinity: Vec<Complex64>) -> Result<Self> {
        if at_infinity.len() != jet.k() + 1 {
            return Err(Error::Input(format!(
                "{} values at infinity for a jet of order {}",
                at_infinity.len(),
                jet.k()
            )));
        }
        Ok(Self::numeric(jet, Side::Minus, at_infinity))
    }

    fn numeric(jet: WhitneyJet, side: Side, at_infinity: Vec<Complex64>) -> Self {
        let k = jet.k();
        let n = jet.curve().len();
        let mut boundary_components = vec![vec![zero(); n]; k + 1];
        let points = jet.curve().points();
        for i in 0..n {
            let values: Vec<Complex64> = (0..=k).map(|j| jet.row(j)[i]).collect();
            for (m, fm) in components_from_derivatives(&values, points[i])
                .into_iter()
                .enumerate()
            {
                boundary_components[m][i] = fm;
            }
        }
        Self {
            repr: Repr::Numeric {
                jet,
                side,
                at_infinity,
                boundary_components,
            },
        }
    }

    /// `k + 1`.
    pub fn order(&self) -> usize {
        match &self.repr {
            Repr::Exact(c) => c.len(),
            Repr::Numeric { jet, .. } => jet.k() + 1,
        }
    }

    pub fn exact_components(&self) -> Option<&[LaurentPoly]> {
        match &self.repr {
            Repr::Exact(c) => Some(c),
            Repr::Numeric { .. } => None,
        }
    }

    pub fn side(&self) -> Option<Side> {
        match &self.repr {
            Repr::Exact(_) => None,
            Repr::Numeric { side, .. } => Some(*side),
        }
    }

    /// `F_m(inf)` when every analytic component is bounded at infinity.
    pub fn at_infinity(&self) -> Option<Vec<Complex64>> {
        match &self.repr {
            Repr::Exact(c) => c
                .iter()
                .all(|p| p.max_exponent().is_none_or(|e| e <= 0))
                .then(|| c.iter().map(|p| p.coeff(0)).collect()),
            Repr::Numeric {
                side: Side::Minus,
                at_infinity,
                ..
            } => Some(at_infinity.clone()),
            Repr::Numeric { .. } => None,
        }
    }

    pub fn vanishes_at_infinity(&self) -> bool {
        self.at_infinity()
            .is_some_and(|v| v.iter().all(|z| *z == zero()))
    }

    /// `d^j/dzbar^j F`, of order `order - j` (the zero function once `j >= order`).
    pub fn dbar(&self, j: usize) -> Self {
        if j >= self.order() {
            return Self::zero();
        }
        match &self.repr {
            Repr::Exact(c) => Self {
                repr: Repr::Exact(
                    c.iter()
                        .enumerate()
                        .skip(j)
                        .map(|(m, p)| p.scale(Complex64::new(factorial(m) / factorial(m - j), 0.0)))
                        .collect(),
                ),
            },
            Repr::Numeric {
                jet,
                side,
                at_infinity,
                ..
            } => {
                let limits = at_infinity
                    .iter()
                    .enumerate()
                    .skip(j)
                    .map(|(m, a)| a * (factorial(m) / factorial(m - j)))
                    .collect();
                Self::numeric(jet.subjet(j).expect("j < order"), *side, limits)
            }
        }
    }

    fn check_point(&self, z: Complex64) -> Result<()> {
        if let Repr::Numeric { jet, side, .. } = &self.repr {
            check_side(jet.curve(), z, Some(*side))?;
        }
        Ok(())
    }

    /// Analytic components `F_m(z)`.
    pub fn component_values(&self, z: Complex64) -> Result<Vec<Complex64>> {
        self.check_point(z)?;
        match &self.repr {
            Repr::Exact(c) => {
                if z == zero() && c.iter().any(|p| p.min_exponent().is_some_and(|e| e < 0)) {
                    return Err(Error::Domain("component with a pole evaluated at 0".into()));
                }
                Ok(c.iter().map(|p| p.eval(z)).collect())
            }
            Repr::Numeric {
                jet,
                side,
                at_infinity,
                boundary_components,
            } => {
                let curve = jet.curve();
                Ok(boundary_components
                    .iter()
                    .zip(at_infinity)
                    .map(|(fm, a)| {
                        let c = cauchy_sum(curve, fm, z);
                        match side {
                            Side::Plus => c,
                            Side::Minus => a - c,
                        }
                    })
                    .collect())
            }
        }
    }

    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        let zb = z.conj();
        Ok(self
            .component_values(z)?
            .into_iter()
            .enumerate()
            .map(|(m, fm)| fm * zb.powi(m as i32))
            .sum())
    }

    /// Parallel evaluation; results keep the input order.
    pub fn evaluate_many(&self, points: &[Complex64]) -> Vec<Result<Complex64>> {
        points.par_iter().map(|&z| self.evaluate(z)).collect()
    }

    /// Boundary values of `F` at the curve nodes.
    ///
    /// Exact functions are evaluated pointwise. Jet-backed functions use their
    /// one-sided Plemelj limit and must live on the same curve.
    pub fn trace(&self, curve: &Arc<CurveDiscretization>) -> Result<Vec<Complex64>> {
        match &self.repr {
            Repr::Exact(c) => {
                let values: Vec<Complex64> = curve
                    .points()
                    .iter()
                    .map(|&z| {
                        let zb = z.conj();
                        c.iter()
                            .enumerate()
                            .map(|(m, p)| p.eval(z) * zb.powi(m as i32))
                            .sum()
                    })
                    .collect();
                if values.iter().any(|v: &Complex64| !v.is_finite()) {
                    return Err(Error::Domain("function is singular on the curve".into()));
                }
                Ok(values)
            }
            Repr::Numeric {
                jet,
                side,
                at_infinity,
                ..
            } => {
                if !Arc::ptr_eq(jet.curve(), curve)
                    && jet.curve().descriptor() != curve.descriptor()
                {
                    return Err(Error::Input(
                        "trace requested on a curve other than the source jet's".into(),
                    ));
                }
                let top = jet.subjet(0)?;
                match side {
                    Side::Plus => Ok(p_plus(&top)?.row(0).to_vec()),
                    Side::Minus => {
                        let minus = p_minus(&top)?;
                        Ok(minus
                            .row(0)
                            .iter()
                            .zip(curve.points())
                            .map(|(&v, z)| {
                                let zb = z.conj();
                                v + at_infinity
                                    .iter()
                                    .enumerate()
                                    .map(|(m, a)| a * zb.powi(m as i32))
                                    .sum::<Complex64>()
                            })
                            .collect())
                    }
                }
            }
        }
    }
}

fn check_side(curve: &CurveDiscretization, z: Complex64, side: Option<Side>) -> Result<()> {
    match curve.classify(z) {
        PointClass::NearBoundary => Err(Error::NearBoundary {
            z,
            distance: curve.distance(z),
            band: curve.band(),
        }),
        class => match side {
            Some(s) if s.class() != class => Err(Error::WrongSide {
                z,
                expected: s.label(),
            }),
            _ => Ok(()),
        },
    }
}

/// `(1/(2 pi i)) int g(zeta) / (zeta - z) dzeta` by the trapezoidal rule.
fn cauchy_sum(curve: &CurveDiscretization, g: &[Complex64], z: Complex64) -> Complex64 {
    let scale = Complex64::new(0.0, -curve.step() / (2.0 * std::f64::consts::PI));
    curve
        .points()
        .iter()
        .zip(curve.tangents())
        .zip(g)
        .map(|((&p, &t), &v)| v * t / (p - z))
        .sum::<Complex64>()
        * scale
}

/// Analytic components `F_m(z)` from the values `d^j F/dzbar^j (z)`, `j = 0..=k`:
///
/// `F_m = sum_{j=m..k} (-1)^(j-m) / ((j-m)! m!) d^j F conj(z)^(j-m)`.
pub fn components_from_derivatives(values: &[Complex64], z: Complex64) -> Vec<Complex64> {
    let k = values.len().saturating_sub(1);
    let zb = z.conj();
    (0..values.len())
        .map(|m| {
            (m..=k)
                .map(|j| {
                    let sign = if (j - m) % 2 == 0 { 1.0 } else { -1.0 };
                    values[j] * zb.powi((j - m) as i32) * (sign / (factorial(j - m) * factorial(m)))
                })
                .sum()
        })
        .collect()
}

fn factorial_i64(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// `sum_{j=m..k} (-1)^(j-m) / ((j-m)! (k+1-j)!)`, exactly.
pub fn alt_binom_sum(k: usize, m: usize) -> Result<Ratio<i64>> {
    if m > k {
        return Err(Error::Domain(format!("m = {m} exceeds k = {k}")));
    }
    if k > 18 {
        return Err(Error::Domain(format!("k = {k} overflows exact factorials")));
    }
    Ok((m..=k)
        .map(|j| {
            let sign = if (j - m).is_multiple_of(2) { 1 } else { -1 };
            Ratio::new(sign, factorial_i64(j - m) * factorial_i64(k + 1 - j))
        })
        .sum())
}

/// `-(-1)^(k+1-m) / (k+1-m)!`.
pub fn alt_binom_closed_form(k: usize, m: usize) -> Ratio<i64> {
    let sign = if (k + 1 - m).is_multiple_of(2) { -1 } else { 1 };
    Ratio::new(sign, factorial_i64(k + 1 - m))
}

/// `(1/(2 pi i)) sum_m int conj(z - zeta)^m f_m(zeta) / (m! (zeta - z)) dzeta`
/// for `z` off the near-boundary band, on either side.
pub fn cauchy_integral(f: &WhitneyJet, z: Complex64) -> Result<Complex64> {
    let curve = f.curve();
    check_side(curve, z, None)?;
    let scale = Complex64::new(0.0, -curve.step() / (2.0 * std::f64::consts::PI));
    let k = f.k();
    let sum: Complex64 = curve
        .points()
        .iter()
        .zip(curve.tangents())
        .enumerate()
        .map(|(i, (&p, &t))| {
            let dbar = (z - p).conj();
            let mut kernel_sum = zero();
            let mut power = Complex64::new(1.0, 0.0);
            for m in 0..=k {
                kernel_sum += f.row(m)[i] * power / factorial(m);
                power *= dbar;
            }
            kernel_sum * t / (p - z)
        })
        .sum();
    Ok(sum * scale)
}

/// Cauchy-type representation of the polyanalytic function with boundary jet
/// `f` on `side`; on the exterior the analytic components vanish at infinity.
pub fn cauchy_transform(f: &WhitneyJet, z: Complex64, side: Side) -> Result<Complex64> {
    cauchy_transform_with_limits(f, z, side, None)
}

/// As [`cauchy_transform`], adding `sum_m F_m(inf) conj(z)^m` on the exterior.
pub fn cauchy_transform_with_limits(
    f: &WhitneyJet,
    z: Complex64,
    side: Side,
    at_infinity: Option<&[Complex64]>,
) -> Result<Complex64> {
    check_side(f.curve(), z, Some(side))?;
    let c = cauchy_integral(f, z)?;
    Ok(match side {
        Side::Plus => c,
        Side::Minus => {
            let zb = z.conj();
            let correction: Complex64 = at_infinity
                .unwrap_or(&[])
                .iter()
                .enumerate()
                .map(|(m, a)| a * zb.powi(m as i32))
                .sum();
            correction - c
        }
    })
}

/// One-sided boundary values of `d^j/dzbar^j` of the Cauchy integral of `f`:
/// `(f_j + [S f]_j)/2` from inside, `(-f_j + [S f]_j)/2` from outside.
pub fn boundary_limit(f: &WhitneyJet, j: usize, side: Side) -> Result<Vec<Complex64>> {
    if j > f.k() {
        return Err(Error::Domain(format!(
            "row {j} exceeds jet order {}",
            f.k()
        )));
    }
    Ok(boundary_limits(f, side)?.row(j).to_vec())
}

/// All rows of [`boundary_limit`] from a single application of `S_k`.
pub fn boundary_limits(f: &WhitneyJet, side: Side) -> Result<WhitneyJet> {
    let s = apply_sk(f)?;
    let sign = match side {
        Side::Plus => 1.0,
        Side::Minus => -1.0,
    };
    s.map(|v| v * 0.5)
        .add(&f.scale(Complex64::new(0.5 * sign, 0.0)))
}

/// Sectionally polyanalytic solution of the jump problem for `f`.
#[derive(Clone, Debug)]
pub struct JumpSolution {
    pub source: WhitneyJet,
    /// The Cauchy integral of `f` restricted to the interior.
    pub interior: PolyanalyticFn,
    /// The Cauchy integral of `f` restricted to the exterior.
    pub exterior: PolyanalyticFn,
}

impl JumpSolution {
    pub fn evaluate(&self, z: Complex64) -> Result<Complex64> {
        match self.source.curve().classify(z) {
            PointClass::Interior => self.interior.evaluate(z),
            PointClass::Exterior => self.exterior.evaluate(z),
            PointClass::NearBoundary => Err(Error::NearBoundary {
                z,
                distance: self.source.curve().distance(z),
                band: self.source.curve().band(),
            }),
        }
    }

    /// Per node, `max_j |[dbar^j F]^+ - [dbar^j F]^- - f_j|` with both limits
    /// taken from the two piecewise representations.
    pub fn jump_residuals(&self) -> Result<Vec<f64>> {
        let curve = self.source.curve();
        let mut worst = vec![0.0f64; curve.len()];
        for j in 0..=self.source.k() {
            let inner = self.interior.dbar(j).trace(curve)?;
            let outer = self.exterior.dbar(j).trace(curve)?;
            for (i, w) in worst.iter_mut().enumerate() {
                *w = w.max((inner[i] - outer[i] - self.source.row(j)[i]).norm());
            }
        }
        Ok(worst)
    }
}

/// The function equal to the Cauchy integral of `f` off the curve: its
/// `dbar^(k+1)` vanishes, `dbar^j` jumps by `f_j` across the curve and the
/// exterior analytic components vanish at infinity.
pub fn solve_jump_problem(f: &WhitneyJet) -> JumpSolution {
    // On the exterior the stored representation is -C[g]; g = -f gives C[f].
    let negated = f.scale(Complex64::new(-1.0, 0.0));
    JumpSolution {
        source: f.clone(),
        interior: PolyanalyticFn::from_jet(f.clone(), Side::Plus),
        exterior: PolyanalyticFn::from_jet(negated, Side::Minus),
    }
}
