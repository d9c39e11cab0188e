//! Laurent polynomials on the unit circle and closed-form singular integrals.
//!
//! For `t` on the unit circle, `conj(t) = 1/t`, so every kernel of the form
//! `conj(t - zeta)^q / (zeta - t)^m` collapses to `(zeta - t)^(q - m) / (t zeta)^q`.
//! Integrals against Laurent data then reduce to two facts:
//!
//! * a polynomial in `zeta, 1/zeta` integrates to `2 pi i` times its `zeta^-1`
//!   coefficient;
//! * `(1/(pi i)) PV int zeta^e / (zeta - t) dzeta = sign(e) t^e` (with
//!   `sign(e) = +1` for `e >= 0`), and higher-order poles are finite parts,
//!   taken as `t`-derivatives of that value divided by `(m-1)!`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest exponent magnitude any operation may produce.
pub const MAX_EXPONENT: i64 = 64;

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn check_exponent(e: i64) -> Result<i32> {
    if e.abs() > MAX_EXPONENT {
        Err(Error::ExponentRange(e))
    } else {
        Ok(e as i32)
    }
}

/// Finite Laurent series `sum_n c_n t^n`, stored without zero coefficients.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Complex64) -> Self {
        let mut p = Self::zero();
        p.accumulate(0, c);
        p
    }

    pub fn monomial(exponent: i64, c: Complex64) -> Result<Self> {
        let mut p = Self::zero();
        p.accumulate(check_exponent(exponent)?, c);
        Ok(p)
    }

    /// Sums the given terms; repeated exponents add up.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Complex64)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.accumulate(check_exponent(e)?, c);
        }
        Ok(p)
    }

    fn accumulate(&mut self, e: i32, c: Complex64) {
        let slot = self.coeffs.entry(e).or_insert_with(zero);
        *slot += c;
        if *slot == zero() {
            self.coeffs.remove(&e);
        }
    }

    pub fn coeff(&self, e: i64) -> Complex64 {
        i32::try_from(e)
            .ok()
            .and_then(|e| self.coeffs.get(&e).copied())
            .unwrap_or_else(zero)
    }

    /// `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e as i64, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().map(|&e| e as i64)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().map(|&e| e as i64)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.terms().map(|(e, c)| c * z.powi(e as i32)).sum()
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.accumulate(e as i32, c * s);
        }
        p
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Result<Self> {
        Self::from_terms(self.terms().map(|(e, c)| (e + shift, c)))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let mut p = Self::zero();
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                p.accumulate(check_exponent(a + b)?, x * y);
            }
        }
        Ok(p)
    }

    /// `d/dt`.
    pub fn derivative(&self) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            if e != 0 {
                p.accumulate(e as i32 - 1, c * e as f64);
            }
        }
        p
    }

    /// Largest coefficient modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.clone() - other.clone())
            .terms()
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max)
    }

    /// The PV Cauchy operator `(1/(pi i)) PV int p(zeta)/(zeta - t) dzeta`
    /// on the unit circle: `c_n -> c_n` for `n >= 0`, `c_n -> -c_n` for `n < 0`.
    pub fn cauchy_multiplier(&self) -> Self {
        let mut p = Self::zero();
        for (e, c) in self.terms() {
            p.accumulate(e as i32, if e >= 0 { c } else { -c });
        }
        p
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;

    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms() {
            self.accumulate(e as i32, c);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Mul<Complex64> for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: Complex64) -> LaurentPoly {
        self.scale(rhs)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(i64, f64, f64)> = self.terms().map(|(e, c)| (e, c.re, c.im)).collect();
        triples.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(i64, f64, f64)>::deserialize(deserializer)?;
        LaurentPoly::from_terms(
            triples
                .into_iter()
                .map(|(e, re, im)| (e, Complex64::new(re, im))),
        )
        .map_err(D::Error::custom)
    }
}

/// Exact jet on the unit circle: entry `n` is `f^(0,n)` as a Laurent polynomial in `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LaurentJet {
    components: Vec<LaurentPoly>,
}

impl LaurentJet {
    pub fn new(components: Vec<LaurentPoly>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Input("a jet needs at least one component".into()));
        }
        Ok(Self { components })
    }

    pub fn zero(k: usize) -> Self {
        Self {
            components: vec![LaurentPoly::zero(); k + 1],
        }
    }

    pub fn k(&self) -> usize {
        self.components.len() - 1
    }

    pub fn components(&self) -> &[LaurentPoly] {
        &self.components
    }

    pub fn component(&self, n: usize) -> &LaurentPoly {
        &self.components[n]
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self {
            components: self.components.iter().map(|p| p.scale(s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k() != other.k() {
            return Err(Error::Input(format!(
                "jet orders differ: {} vs {}",
                self.k(),
                other.k()
            )));
        }
        Ok(Self {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.max_abs_diff(b))
            .fold(0.0, f64::max)
    }
}

/// All components `(j1, j2)`, `j1 + j2 <= k`, of `S_k f` on the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct FullJetCircle {
    k: usize,
    components: BTreeMap<(usize, usize), LaurentPoly>,
}

impl FullJetCircle {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, j1: usize, j2: usize) -> Option<&LaurentPoly> {
        self.components.get(&(j1, j2))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize), &LaurentPoly)> {
        self.components.iter()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binom(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `e (e-1) ... (e-r+1) / r!` for any integer `e`.
fn falling_binom(e: i64, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (e - i as i64) as f64 / (i + 1) as f64)
}

/// `(1/(pi i)) FP int h(zeta) / (zeta - t)^m dzeta` on the unit circle, as a
/// Laurent polynomial in `t`.
fn finite_part(h: &LaurentPoly, m: usize) -> Result<LaurentPoly> {
    LaurentPoly::from_terms(h.terms().filter_map(|(e, c)| {
        let sign = if e >= 0 { 1.0 } else { -1.0 };
        let coef = sign * falling_binom(e, m - 1);
        (coef != 0.0).then(|| (e - (m as i64 - 1), c * coef))
    }))
}

/// `(1/(pi i)) int g(zeta) (zeta - t)^d / (t zeta)^q dzeta` with `d >= 0`:
/// the integrand is a Laurent polynomial in `zeta`, so only the residue at 0
/// contributes.
fn smooth_kernel(g: &LaurentPoly, d: usize, q: usize) -> Result<LaurentPoly> {
    let terms = (0..=d).filter_map(|r| {
        let c = g.coeff(q as i64 - r as i64 - 1);
        if c == zero() {
            return None;
        }
        let sign = if (d - r).is_multiple_of(2) { 1.0 } else { -1.0 };
        Some((
            d as i64 - r as i64 - q as i64,
            c * (2.0 * sign * binom(d, r)),
        ))
    });
    LaurentPoly::from_terms(terms)
}

/// Component `(j1, j2)` of `S_k f` on the unit circle:
/// `j1! j2!/(pi i) int sum_p C(p,j2) conj(t-zeta)^(p-j2) f_p(zeta)/p! / (zeta-t)^(j1+1) dzeta`.
fn sk_component(jet: &LaurentJet, j1: usize, j2: usize) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero();
    for p in j2..=jet.k() {
        let g = jet.component(p);
        if g.is_zero() {
            continue;
        }
        let q = p - j2;
        let weight = factorial(j1) / factorial(q);
        // conj(t - zeta)^q / (zeta - t)^(j1+1) = (zeta - t)^(q - j1 - 1) / (t zeta)^q
        let d = q as i64 - j1 as i64 - 1;
        let term = if d >= 0 {
            smooth_kernel(g, d as usize, q)?
        } else {
            finite_part(&g.shift(-(q as i64))?, (-d) as usize)?.shift(-(q as i64))?
        };
        acc = acc + term.scale(Complex64::new(weight, 0.0));
    }
    Ok(acc)
}

/// The `(0, j2)` components of `S_k f`, computed by residues.
pub fn sk_exact_circle(jet: &LaurentJet) -> Result<LaurentJet> {
    let components = (0..=jet.k())
        .map(|j2| sk_component(jet, 0, j2))
        .collect::<Result<Vec<_>>>()?;
    LaurentJet::new(components)
}

/// Every component `(j1, j2)` with `j1 + j2 <= k` of `S_k f`. Poles of order
/// two and higher are finite parts defined by differentiating the PV value.
pub fn sk_full_jet_circle(jet: &LaurentJet) -> Result<FullJetCircle> {
    let k = jet.k();
    let mut components = BTreeMap::new();
    for j1 in 0..=k {
        for j2 in 0..=k - j1 {
            components.insert((j1, j2), sk_component(jet, j1, j2)?);
        }
    }
    Ok(FullJetCircle { k, components })
}

/// Trace on the unit circle of `sum_m F_m(z) conj(z)^m`, given the analytic
/// components as Laurent polynomials in `z`.
pub fn circle_trace(components: &[LaurentPoly]) -> Result<LaurentPoly> {
    components
        .iter()
        .enumerate()
        .try_fold(LaurentPoly::zero(), |acc, (m, f)| {
            Ok(acc + f.shift(-(m as i64))?)
        })
}

/// Trace on the unit circle of `d^j/dzbar^j sum_m F_m(z) conj(z)^m`.
pub fn dbar_on_circle(components: &[LaurentPoly], j: usize) -> Result<LaurentPoly> {
    let shifted: Vec<LaurentPoly> = components
        .iter()
        .enumerate()
        .skip(j)
        .map(|(m, f)| f.scale(Complex64::new(factorial(m) / factorial(m - j), 0.0)))
        .collect();
    circle_trace(&shifted)
}

/// `C(e, r)` for integer `e`, exactly.
fn generalized_binom(e: i128, r: u32) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..r as i128 {
        num *= e - i;
        den *= i + 1;
    }
    num / den
}

/// `(1/(pi i)) int dzeta / ((zeta - t)^m (zeta - tau)^n)` for distinct `t, tau`
/// on the unit circle.
///
/// Only the simple-pole partial-fraction coefficients contribute. Both are
/// integer multiples of `(t - tau)^-(m+n-1)`; the integers are formed exactly.
pub fn lemma1_value(m: u32, n: u32, t: Complex64, tau: Complex64) -> Result<Complex64> {
    if m == 0 || n == 0 {
        return Err(Error::Domain(format!(
            "pole orders must be >= 1, got m={m}, n={n}"
        )));
    }
    if m + n > 40 {
        return Err(Error::Domain(
            "pole orders too large for exact coefficients".into(),
        ));
    }
    for z in [t, tau] {
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("{z} is not on the unit circle")));
        }
    }
    if t == tau {
        return Err(Error::Domain("confluent poles t = tau".into()));
    }
    // Around t: (zeta - tau)^-n = d^-n sum_r C(-n, r) (u/d)^r with u = zeta - t, d = t - tau.
    let at_t = generalized_binom(-(n as i128), m - 1);
    // Around tau: (zeta - t)^-m = (-d)^-m sum_r C(-m, r) (-v/d)^r with v = zeta - tau.
    let sign = if (n + m - 1).is_multiple_of(2) { 1 } else { -1 };
    let at_tau = sign * generalized_binom(-(m as i128), n - 1);
    let total = at_t + at_tau;
    let d = t - tau;
    Ok(d.powi(-((m + n - 1) as i32)) * total as f64)
}
