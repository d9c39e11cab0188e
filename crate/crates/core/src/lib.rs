//! Hardy decomposition of higher-order Lipschitz (Whitney) jets on smooth
//! closed curves into boundary traces of polyanalytic functions.
//!
//! A jet of order `k` is stored canonically by its antiholomorphic
//! components `f^(0,n)`, `0 <= n <= k`, sampled at the nodes of a
//! [`CurveDiscretization`]. The singular operator `S_k` ([`apply_sk`]) is an
//! involution on such data; its Plemelj projections split a jet into the
//! traces of a polyanalytic function inside the curve and one outside that
//! vanishes at infinity ([`hardy_split`]).
//!
//! On the unit circle every integral in play has a closed form for Laurent
//! data, which [`laurent`] computes by residues. That module is the oracle the
//! quadrature is checked against.

pub mod curve;
pub mod error;
pub mod jet;
pub mod laurent;
pub mod polyanalytic;
pub mod samples;
pub mod sk_operator;
pub mod verify;

pub use curve::{CurveDescriptor, CurveDiscretization, PointClass};
pub use error::{Error, Result};
pub use jet::{compatibility_residual, jet_from_polyanalytic, WhitneyJet};
pub use laurent::{
    lemma1_value, sk_exact_circle, sk_full_jet_circle, FullJetCircle, LaurentJet, LaurentPoly,
};
pub use num_complex::Complex64;
pub use polyanalytic::{
    alt_binom_closed_form, alt_binom_sum, boundary_limit, cauchy_integral, cauchy_transform,
    components_from_derivatives, solve_jump_problem, JumpSolution, PolyanalyticFn, Side,
};
pub use sk_operator::{
    apply_sk, diagnose, hardy_split, p_minus, p_plus, pv_cauchy, HardySplit, ProjectionDefects,
    SkDiagnostics,
};
