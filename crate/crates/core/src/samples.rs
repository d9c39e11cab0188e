//! Seeded Laurent test data and the built-in test functions.

use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;

use crate::curve::CurveDiscretization;
use crate::error::{Error, Result};
use crate::jet::{jet_from_polyanalytic, WhitneyJet};
use crate::laurent::{dbar_on_circle, LaurentJet, LaurentPoly};
use crate::polyanalytic::PolyanalyticFn;

fn random_coeff<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

/// Every exponent in `lo..=hi` with a coefficient uniform in the unit square.
pub fn random_laurent_poly<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> LaurentPoly {
    LaurentPoly::from_terms((lo..=hi).map(|e| (e, random_coeff(rng))))
        .expect("exponent range within guard")
}

pub fn random_laurent_jet<R: Rng>(rng: &mut R, k: usize, lo: i64, hi: i64) -> LaurentJet {
    LaurentJet::new((0..=k).map(|_| random_laurent_poly(rng, lo, hi)).collect())
        .expect("non-empty jet")
}

/// Polyanalytic function of order `k + 1` with analytic components supported on `lo..=hi`.
pub fn random_polyanalytic<R: Rng>(rng: &mut R, k: usize, lo: i64, hi: i64) -> PolyanalyticFn {
    PolyanalyticFn::exact((0..=k).map(|_| random_laurent_poly(rng, lo, hi)).collect())
        .expect("non-empty components")
}

/// Polynomial components: polyanalytic in the whole plane.
pub fn random_interior_polyanalytic<R: Rng>(rng: &mut R, k: usize, max_exp: i64) -> PolyanalyticFn {
    random_polyanalytic(rng, k, 0, max_exp)
}

/// Components in `z^-max_exp..=z^-1`: polyanalytic off the origin, vanishing at infinity.
pub fn random_exterior_polyanalytic<R: Rng>(rng: &mut R, k: usize, max_exp: i64) -> PolyanalyticFn {
    random_polyanalytic(rng, k, -max_exp, -1)
}

/// `sum_{|n| <= max_exp} ratio^|n| e^{i n} t^n` in every row, scaled per row.
/// Not band-limited at coarse resolutions, so quadrature errors decay geometrically.
pub fn geometric_laurent_jet(k: usize, max_exp: i64, ratio: f64) -> LaurentJet {
    let rows = (0..=k)
        .map(|row| {
            LaurentPoly::from_terms((-max_exp..=max_exp).map(|e| {
                let phase = Complex64::from_polar(1.0, (e + row as i64) as f64);
                (e, phase * ratio.powi(e.abs() as i32) / (row + 1) as f64)
            }))
            .expect("exponent range within guard")
        })
        .collect();
    LaurentJet::new(rows).expect("non-empty jet")
}

/// Exact boundary jet on the unit circle of an exact-mode polyanalytic function.
pub fn circle_jet(f: &PolyanalyticFn, k: usize) -> Result<LaurentJet> {
    let comps = f
        .exact_components()
        .ok_or_else(|| Error::Input("circle jets need exact components".into()))?;
    if f.order() > k + 1 {
        return Err(Error::OrderMismatch {
            order: f.order(),
            limit: k + 1,
        });
    }
    LaurentJet::new(
        (0..=k)
            .map(|j| dbar_on_circle(comps, j))
            .collect::<Result<Vec<_>>>()?,
    )
}

/// Named test functions available from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Builtin {
    Zero,
    One,
    /// `F_m(z) = z^(m+2)`, polyanalytic inside any curve.
    InteriorPoly,
    /// `F_m(z) = z^-(m+2)`, polyanalytic outside any curve around 0, vanishing at infinity.
    ExteriorPoly,
    /// Sum of the interior and exterior functions.
    Mixed,
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "zero" => Ok(Builtin::Zero),
            "one" => Ok(Builtin::One),
            "interior-poly" => Ok(Builtin::InteriorPoly),
            "exterior-poly" => Ok(Builtin::ExteriorPoly),
            "mixed" => Ok(Builtin::Mixed),
            other => Err(Error::Input(format!(
                "unknown built-in test function '{other}'"
            ))),
        }
    }
}

impl Builtin {
    pub const ALL: [Builtin; 5] = [
        Builtin::Zero,
        Builtin::One,
        Builtin::InteriorPoly,
        Builtin::ExteriorPoly,
        Builtin::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Zero => "zero",
            Builtin::One => "one",
            Builtin::InteriorPoly => "interior-poly",
            Builtin::ExteriorPoly => "exterior-poly",
            Builtin::Mixed => "mixed",
        }
    }

    fn monomials(k: usize, sign: i64) -> PolyanalyticFn {
        PolyanalyticFn::exact(
            (0..=k)
                .map(|m| {
                    LaurentPoly::monomial(sign * (m as i64 + 2), Complex64::new(1.0, 0.0))
                        .expect("small exponent")
                })
                .collect(),
        )
        .expect("non-empty components")
    }

    /// The exact interior and exterior pieces whose traces sum to the built-in jet.
    pub fn pieces(self, k: usize) -> (PolyanalyticFn, PolyanalyticFn) {
        let zero = PolyanalyticFn::zero();
        match self {
            Builtin::Zero => (zero.clone(), zero),
            Builtin::One => (
                PolyanalyticFn::exact(vec![LaurentPoly::constant(Complex64::new(1.0, 0.0))])
                    .expect("non-empty"),
                zero,
            ),
            Builtin::InteriorPoly => (Self::monomials(k, 1), zero),
            Builtin::ExteriorPoly => (zero, Self::monomials(k, -1)),
            Builtin::Mixed => (Self::monomials(k, 1), Self::monomials(k, -1)),
        }
    }

    pub fn jet(self, curve: Arc<CurveDiscretization>, k: usize) -> Result<WhitneyJet> {
        let (inner, outer) = self.pieces(k);
        jet_from_polyanalytic(&inner, curve.clone(), k)?
            .add(&jet_from_polyanalytic(&outer, curve, k)?)
    }
}
