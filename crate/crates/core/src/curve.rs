//! Smooth, positively oriented closed curves sampled at equispaced parameter
//! nodes `s_i = 2*pi*i/N`.
//!
//! Every integral operator in the crate consumes a [`CurveDiscretization`]:
//! periodic trapezoidal quadrature over these nodes is spectrally accurate
//! for the trigonometric parametrizations supported here.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest accepted node count.
pub const MIN_NODES: usize = 4;

/// Width of the near-boundary band in units of the largest arclength spacing.
pub const BAND_FACTOR: f64 = 5.0;

/// Analytic description of a curve, also its JSON form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CurveDescriptor {
    Circle {
        center: [f64; 2],
        radius: f64,
        #[serde(rename = "N")]
        n: usize,
    },
    /// `a cos s + i b sin s`, centered at the origin.
    Ellipse {
        a: f64,
        b: f64,
        #[serde(rename = "N")]
        n: usize,
    },
    /// `sum_n c_n e^{i n s}`, coefficients as `[n, re, im]`.
    Trig {
        coefficients: Vec<(i32, f64, f64)>,
        #[serde(rename = "N")]
        n: usize,
    },
}

impl CurveDescriptor {
    pub fn nodes(&self) -> usize {
        match self {
            CurveDescriptor::Circle { n, .. }
            | CurveDescriptor::Ellipse { n, .. }
            | CurveDescriptor::Trig { n, .. } => *n,
        }
    }

    /// Same curve with a different node count.
    pub fn with_nodes(&self, nodes: usize) -> CurveDescriptor {
        let mut d = self.clone();
        match &mut d {
            CurveDescriptor::Circle { n, .. }
            | CurveDescriptor::Ellipse { n, .. }
            | CurveDescriptor::Trig { n, .. } => *n = nodes,
        }
        d
    }

    pub fn build(&self) -> Result<CurveDiscretization> {
        CurveDiscretization::from_descriptor(self.clone())
    }
}

/// Point classification relative to a curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointClass {
    Interior,
    Exterior,
    NearBoundary,
}

#[derive(Clone, Debug)]
pub struct CurveDiscretization {
    descriptor: CurveDescriptor,
    params: Vec<f64>,
    points: Vec<Complex64>,
    tangents: Vec<Complex64>,
    reference: Complex64,
}

impl CurveDiscretization {
    pub fn circle(center: Complex64, radius: f64, n: usize) -> Result<Self> {
        Self::from_descriptor(CurveDescriptor::Circle {
            center: [center.re, center.im],
            radius,
            n,
        })
    }

    pub fn ellipse(a: f64, b: f64, n: usize) -> Result<Self> {
        Self::from_descriptor(CurveDescriptor::Ellipse { a, b, n })
    }

    pub fn trig(coefficients: Vec<(i32, Complex64)>, n: usize) -> Result<Self> {
        Self::from_descriptor(CurveDescriptor::Trig {
            coefficients: coefficients
                .into_iter()
                .map(|(k, c)| (k, c.re, c.im))
                .collect(),
            n,
        })
    }

    pub fn from_descriptor(descriptor: CurveDescriptor) -> Result<Self> {
        let n = descriptor.nodes();
        if n < MIN_NODES || !n.is_multiple_of(2) {
            return Err(Error::Config(format!(
                "node count must be an even integer >= {MIN_NODES}, got {n}"
            )));
        }
        let h = 2.0 * PI / n as f64;
        let params: Vec<f64> = (0..n).map(|i| i as f64 * h).collect();

        let (points, tangents, reference, check_simple) = match &descriptor {
            CurveDescriptor::Circle { center, radius, .. } => {
                if !(radius.is_finite() && *radius > 0.0) {
                    return Err(Error::InvalidCurve(format!(
                        "radius must be positive, got {radius}"
                    )));
                }
                let c = Complex64::new(center[0], center[1]);
                let (p, t): (Vec<_>, Vec<_>) = params
                    .iter()
                    .map(|&s| {
                        let e = Complex64::from_polar(1.0, s);
                        (c + e * radius, Complex64::i() * e * radius)
                    })
                    .unzip();
                (p, t, c, false)
            }
            CurveDescriptor::Ellipse { a, b, .. } => {
                if !(a.is_finite() && b.is_finite() && *a > 0.0 && *b > 0.0) {
                    return Err(Error::InvalidCurve(format!(
                        "semi-axes must be positive, got a={a}, b={b}"
                    )));
                }
                let (p, t): (Vec<_>, Vec<_>) = params
                    .iter()
                    .map(|&s| {
                        let (sn, cs) = s.sin_cos();
                        (
                            Complex64::new(a * cs, b * sn),
                            Complex64::new(-a * sn, b * cs),
                        )
                    })
                    .unzip();
                (p, t, Complex64::new(0.0, 0.0), false)
            }
            CurveDescriptor::Trig { coefficients, .. } => {
                if coefficients.is_empty() {
                    return Err(Error::InvalidCurve("empty trigonometric series".into()));
                }
                let coeffs: Vec<(f64, Complex64)> = coefficients
                    .iter()
                    .map(|&(k, re, im)| (k as f64, Complex64::new(re, im)))
                    .collect();
                let (p, t): (Vec<_>, Vec<_>) = params
                    .iter()
                    .map(|&s| {
                        coeffs.iter().fold(
                            (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)),
                            |(p, t), &(k, c)| {
                                let e = c * Complex64::from_polar(1.0, k * s);
                                (p + e, t + Complex64::i() * k * e)
                            },
                        )
                    })
                    .unzip();
                let reference = coefficients
                    .iter()
                    .find(|c| c.0 == 0)
                    .map(|&(_, re, im)| Complex64::new(re, im))
                    .unwrap_or_default();
                (p, t, reference, true)
            }
        };

        if points.iter().chain(&tangents).any(|z| !z.is_finite()) {
            return Err(Error::InvalidCurve("non-finite samples".into()));
        }
        if let Some(i) = tangents.iter().position(|t| t.norm() <= 1e-12) {
            return Err(Error::InvalidCurve(format!(
                "degenerate parametrization: vanishing tangent at node {i}"
            )));
        }

        let curve = CurveDiscretization {
            descriptor,
            params,
            points,
            tangents,
            reference,
        };

        if check_simple {
            if let Some((i, j)) = curve.first_self_intersection() {
                return Err(Error::InvalidCurve(format!(
                    "self-intersection between segments {i} and {j}"
                )));
            }
        }
        if curve.signed_area() <= 0.0 {
            return Err(Error::InvalidCurve("curve is negatively oriented".into()));
        }
        let mut reference = curve.reference;
        if curve.winding_number(reference) != 1 {
            reference = curve.centroid();
        }
        let curve = CurveDiscretization { reference, ..curve };
        if curve.winding_number(curve.reference) != 1 {
            return Err(Error::InvalidCurve(
                "no interior reference point with winding number +1".into(),
            ));
        }
        Ok(curve)
    }

    pub fn descriptor(&self) -> &CurveDescriptor {
        &self.descriptor
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Parameter step `2*pi/N`.
    pub fn step(&self) -> f64 {
        2.0 * PI / self.len() as f64
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[Complex64] {
        &self.points
    }

    pub fn tangents(&self) -> &[Complex64] {
        &self.tangents
    }

    /// Interior point about which the discrete winding number is +1.
    pub fn interior_reference(&self) -> Complex64 {
        self.reference
    }

    pub fn is_unit_circle(&self) -> bool {
        matches!(
            self.descriptor,
            CurveDescriptor::Circle { center: [0.0, 0.0], radius, .. } if radius == 1.0
        )
    }

    /// Trapezoidal arclength.
    pub fn arclength(&self) -> f64 {
        self.tangents.iter().map(|t| t.norm()).sum::<f64>() * self.step()
    }

    /// Largest node spacing measured in arclength, `max |gamma'(s_i)| * h`.
    pub fn max_spacing(&self) -> f64 {
        self.tangents.iter().map(|t| t.norm()).fold(0.0, f64::max) * self.step()
    }

    /// Half-width of the band around the curve where off-curve quadrature is refused.
    pub fn band(&self) -> f64 {
        BAND_FACTOR * self.max_spacing()
    }

    /// Discrete winding number of the node polygon about `z`.
    pub fn winding_number(&self, z: Complex64) -> i64 {
        let n = self.len();
        let total: f64 = (0..n)
            .map(|i| {
                let a = self.points[i] - z;
                let b = self.points[(i + 1) % n] - z;
                (b / a).arg()
            })
            .sum();
        (total / (2.0 * PI)).round() as i64
    }

    /// Distance from `z` to the node polygon.
    pub fn distance(&self, z: Complex64) -> f64 {
        let n = self.len();
        (0..n)
            .map(|i| segment_distance(z, self.points[i], self.points[(i + 1) % n]))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn classify(&self, z: Complex64) -> PointClass {
        if self.distance(z) < self.band() {
            PointClass::NearBoundary
        } else if self.winding_number(z) != 0 {
            PointClass::Interior
        } else {
            PointClass::Exterior
        }
    }

    fn signed_area(&self) -> f64 {
        let n = self.len();
        0.5 * (0..n)
            .map(|i| {
                let a = self.points[i];
                let b = self.points[(i + 1) % n];
                a.re * b.im - b.re * a.im
            })
            .sum::<f64>()
    }

    fn centroid(&self) -> Complex64 {
        let n = self.len();
        let area = self.signed_area();
        let (cx, cy) = (0..n).fold((0.0, 0.0), |(cx, cy), i| {
            let a = self.points[i];
            let b = self.points[(i + 1) % n];
            let cross = a.re * b.im - b.re * a.im;
            (cx + (a.re + b.re) * cross, cy + (a.im + b.im) * cross)
        });
        Complex64::new(cx / (6.0 * area), cy / (6.0 * area))
    }

    fn first_self_intersection(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            let (a, b) = (self.points[i], self.points[(i + 1) % n]);
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (self.points[j], self.points[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a - o).re * (b - o).im - (a - o).im * (b - o).re
}

fn segments_cross(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    d1 * d2 <= 0.0 && d3 * d4 <= 0.0 && !(d1 == 0.0 && d2 == 0.0)
}

fn segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + ab * t)).norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn unit_circle_four_nodes_are_unit_roots() {
        let curve = CurveDiscretization::circle(c(0.0, 0.0), 1.0, 4).unwrap();
        let expected = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (p, e) in curve.points().iter().zip(expected) {
            assert!((p - e).norm() < 1e-15);
        }
    }

    #[test]
    fn circle_is_positively_oriented() {
        let curve = CurveDiscretization::circle(c(0.0, 0.0), 1.0, 64).unwrap();
        assert_eq!(curve.winding_number(c(0.0, 0.0)), 1);
    }

    #[test]
    fn shifted_circle_radius() {
        let center = c(2.0, 1.0);
        let curve = CurveDiscretization::circle(center, 0.5, 32).unwrap();
        for p in curve.points() {
            assert!(((p - center).norm() - 0.5).abs() < 1e-15);
        }
        assert_eq!(curve.classify(center), PointClass::Interior);
    }

    #[test]
    fn rejects_bad_node_counts() {
        assert!(matches!(
            CurveDiscretization::circle(c(0.0, 0.0), 1.0, 33),
            Err(Error::Config(_))
        ));
        assert!(matches!(
            CurveDiscretization::circle(c(0.0, 0.0), 1.0, 2),
            Err(Error::Config(_))
        ));
        assert!(CurveDiscretization::circle(c(0.0, 0.0), -1.0, 8).is_err());
    }

    #[test]
    fn ellipse_start_point_and_tangent() {
        let curve = CurveDiscretization::ellipse(2.0, 1.0, 64).unwrap();
        assert!((curve.points()[0] - c(2.0, 0.0)).norm() < 1e-15);
        assert!((curve.tangents()[0] - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn degenerate_ellipse_is_unit_circle() {
        let e = CurveDiscretization::ellipse(1.0, 1.0, 32).unwrap();
        let o = CurveDiscretization::circle(c(0.0, 0.0), 1.0, 32).unwrap();
        for i in 0..32 {
            assert!((e.points()[i] - o.points()[i]).norm() < 1e-15);
            assert!((e.tangents()[i] - o.tangents()[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn perturbed_circle_winds_once() {
        // e^{is}(1 + 0.1 cos 3s) = e^{is} + 0.05 e^{4is} + 0.05 e^{-2is}
        let curve = CurveDiscretization::trig(
            vec![(1, c(1.0, 0.0)), (4, c(0.05, 0.0)), (-2, c(0.05, 0.0))],
            128,
        )
        .unwrap();
        assert_eq!(curve.winding_number(c(0.0, 0.0)), 1);
        assert_eq!(curve.winding_number(curve.interior_reference()), 1);
        let s = curve.params()[5];
        let exact = Complex64::from_polar(1.0 + 0.1 * (3.0 * s).cos(), s);
        assert!((curve.points()[5] - exact).norm() < 1e-14);
    }

    #[test]
    fn rejects_self_intersecting_trig_curve() {
        // limacon-like curve with an inner loop
        let err = CurveDiscretization::trig(vec![(1, c(1.0, 0.0)), (2, c(1.5, 0.0))], 128);
        assert!(matches!(err, Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn rejects_reversed_orientation() {
        let err = CurveDiscretization::trig(vec![(-1, c(1.0, 0.0))], 64);
        assert!(matches!(err, Err(Error::InvalidCurve(_))));
    }

    #[test]
    fn unit_circle_arclength_is_spectral() {
        let curve = CurveDiscretization::circle(c(0.0, 0.0), 1.0, 64).unwrap();
        assert!((curve.arclength() - 2.0 * PI).abs() < 1e-12);
        let e = CurveDiscretization::ellipse(2.0, 1.0, 64).unwrap();
        // complete elliptic integral: 4 a E(1 - b^2/a^2), a=2, b=1
        assert!((e.arclength() - 9.688448220547675).abs() < 1e-12);
    }

    #[test]
    fn classify_points() {
        let curve = CurveDiscretization::circle(c(0.0, 0.0), 1.0, 64).unwrap();
        assert_eq!(curve.classify(c(0.0, 0.0)), PointClass::Interior);
        assert_eq!(curve.classify(c(3.0, 0.0)), PointClass::Exterior);
        // band = 5 * 2*pi/64 ~ 0.49
        assert!((curve.band() - 5.0 * 2.0 * PI / 64.0).abs() < 1e-15);
        assert_eq!(curve.classify(c(1.001, 0.0)), PointClass::NearBoundary);
        assert_eq!(curve.classify(c(1.4, 0.0)), PointClass::NearBoundary);
        assert_eq!(curve.classify(c(1.6, 0.0)), PointClass::Exterior);
    }

    #[test]
    fn descriptor_json_shape() {
        let d = CurveDescriptor::Circle {
            center: [0.0, 0.0],
            radius: 1.0,
            n: 64,
        };
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(
            s,
            r#"{"kind":"circle","center":[0.0,0.0],"radius":1.0,"N":64}"#
        );
        let back: CurveDescriptor =
            serde_json::from_str(r#"{"kind":"ellipse","a":2,"b":1,"N":32}"#).unwrap();
        assert_eq!(
            back,
            CurveDescriptor::Ellipse {
                a: 2.0,
                b: 1.0,
                n: 32
            }
        );
    }
}
