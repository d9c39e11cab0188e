//! Run configuration: an optional JSON file merged with command-line flags.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use polyhardy_core::samples::{self, Builtin};
use polyhardy_core::{CurveDescriptor, CurveDiscretization, LaurentJet, WhitneyJet};
use serde::Deserialize;

pub const DEFAULT_NODES: usize = 256;
pub const DEFAULT_K: usize = 1;
pub const DEFAULT_VERIFY_K: usize = 3;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_SEED: u64 = 7;

/// A curve given either as shorthand text or as a full descriptor.
#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum CurveSpec {
    Text(String),
    Descriptor(CurveDescriptor),
}

/// Settings shared by every command. All fields are optional so that a file
/// and the flags can each supply a subset.
#[derive(Clone, Debug, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub curve: Option<CurveSpec>,
    pub k: Option<usize>,
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub tol: Option<f64>,
    #[serde(rename = "in")]
    pub input: Option<String>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub probes: Option<String>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fields set in `over` replace those in `self`.
    pub fn overlay(self, over: RunConfig) -> RunConfig {
        RunConfig {
            curve: over.curve.or(self.curve),
            k: over.k.or(self.k),
            n: over.n.or(self.n),
            tol: over.tol.or(self.tol),
            input: over.input.or(self.input),
            out: over.out.or(self.out),
            seed: over.seed.or(self.seed),
            probes: over.probes.or(self.probes),
        }
    }

    pub fn tolerance(&self) -> Result<f64> {
        let tol = self.tol.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol > 0.0) {
            bail!("tolerance must be positive, got {tol}");
        }
        Ok(tol)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn out_dir(&self) -> Result<&Path> {
        self.out
            .as_deref()
            .ok_or_else(|| anyhow!("an output directory is required (--out)"))
    }

    /// Curve from `curve` and `N`, defaulting to the unit circle.
    pub fn descriptor(&self) -> Result<CurveDescriptor> {
        let base = match &self.curve {
            None => parse_curve("circle", self.n)?,
            Some(CurveSpec::Descriptor(d)) => d.clone(),
            Some(CurveSpec::Text(text)) => parse_curve(text, self.n)?,
        };
        Ok(match self.n {
            Some(n) => base.with_nodes(n),
            None => base,
        })
    }

    pub fn input(&self) -> Result<Input> {
        let text = self
            .input
            .as_deref()
            .ok_or_else(|| anyhow!("an input jet is required (--in PATH or --in builtin:NAME)"))?;
        Input::parse(text)
    }

    /// Loads the input jet, checking it against any curve or order given
    /// explicitly.
    pub fn load_jet(&self) -> Result<LoadedJet> {
        match self.input()? {
            Input::Builtin(b) => {
                let k = self.k.unwrap_or(DEFAULT_K);
                let curve = Arc::new(CurveDiscretization::from_descriptor(self.descriptor()?)?);
                let jet = b.jet(curve.clone(), k)?;
                let exact = if curve.is_unit_circle() {
                    let (inner, outer) = b.pieces(k);
                    Some(samples::circle_jet(&inner, k)?.add(&samples::circle_jet(&outer, k)?)?)
                } else {
                    None
                };
                Ok(LoadedJet {
                    label: format!("builtin:{}", b.name()),
                    jet,
                    exact,
                })
            }
            Input::File(path) => {
                let jet = WhitneyJet::read(&path)
                    .with_context(|| format!("reading jet {}", path.display()))?;
                if let Some(k) = self.k {
                    if k != jet.k() {
                        bail!("--k {k} conflicts with the input jet order {}", jet.k());
                    }
                }
                if self.curve.is_some() || self.n.is_some() {
                    let requested = self.descriptor()?;
                    if &requested != jet.curve().descriptor() {
                        bail!("the requested curve differs from the curve stored in the input jet");
                    }
                }
                Ok(LoadedJet {
                    label: path.display().to_string(),
                    jet,
                    exact: None,
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Builtin(Builtin),
    File(PathBuf),
}

impl Input {
    pub fn parse(text: &str) -> Result<Self> {
        match text.strip_prefix("builtin:") {
            Some(name) => {
                let known: Vec<_> = Builtin::ALL.iter().map(|b| b.name()).collect();
                name.parse()
                    .map(Input::Builtin)
                    .map_err(|e| anyhow!("{e}; known: {}", known.join(", ")))
            }
            None => Ok(Input::File(PathBuf::from(text))),
        }
    }
}

pub struct LoadedJet {
    pub label: String,
    pub jet: WhitneyJet,
    /// Laurent form of the data on the unit circle, when known.
    pub exact: Option<LaurentJet>,
}

fn numbers(args: &str, expected: usize, what: &str) -> Result<Vec<f64>> {
    let values = args
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .with_context(|| format!("bad numbers in '{what}:{args}'"))?;
    if values.len() != expected {
        bail!("'{what}' takes {expected} numbers, got {}", values.len());
    }
    Ok(values)
}

/// Accepts inline JSON, a path to a JSON descriptor, or the shorthands
/// `circle`, `circle:cx,cy,r`, `ellipse:a,b`.
pub fn parse_curve(text: &str, n: Option<usize>) -> Result<CurveDescriptor> {
    let text = text.trim();
    let n = n.unwrap_or(DEFAULT_NODES);
    if text.starts_with('{') {
        return serde_json::from_str(text).context("parsing inline curve JSON");
    }
    let (head, args) = match text.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (text, None),
    };
    match (head, args) {
        ("circle", None) => Ok(CurveDescriptor::Circle {
            center: [0.0, 0.0],
            radius: 1.0,
            n,
        }),
        ("circle", Some(a)) => {
            let v = numbers(a, 3, "circle")?;
            Ok(CurveDescriptor::Circle {
                center: [v[0], v[1]],
                radius: v[2],
                n,
            })
        }
        ("ellipse", Some(a)) => {
            let v = numbers(a, 2, "ellipse")?;
            Ok(CurveDescriptor::Ellipse {
                a: v[0],
                b: v[1],
                n,
            })
        }
        _ => {
            let path = Path::new(text);
            if !path.exists() {
                bail!("unrecognized curve '{text}' (expected circle, circle:cx,cy,r, ellipse:a,b, JSON, or a file)");
            }
            let body = std::fs::read_to_string(path)
                .with_context(|| format!("reading curve {}", path.display()))?;
            serde_json::from_str(&body).with_context(|| format!("parsing curve {}", path.display()))
        }
    }
}
