//! Probe points: a two-column CSV file or an inline list such as `0.1,0.5i,-1+2i`.

use std::path::Path;

use anyhow::{anyhow, Context, Result};
use num_complex::Complex64;
use polyhardy_core::{CurveDiscretization, PointClass};

pub fn parse(text: &str) -> Result<Vec<Complex64>> {
    let path = Path::new(text);
    if path.is_file() {
        return read_csv(path);
    }
    text.split(|c: char| c == ',' || c == ';' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<Complex64>()
                .map_err(|_| anyhow!("bad probe '{s}' (expected e.g. 0.5, 0.5i, 1-2i)"))
        })
        .collect()
}

fn read_csv(path: &Path) -> Result<Vec<Complex64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("opening probes {}", path.display()))?;
    let mut points = Vec::new();
    for (line, record) in reader.records().enumerate() {
        let record = record?;
        let parsed: Option<(f64, f64)> = match (record.get(0), record.get(1)) {
            (Some(a), Some(b)) => a.parse().ok().zip(b.parse().ok()),
            _ => None,
        };
        match parsed {
            Some((re, im)) => points.push(Complex64::new(re, im)),
            // a header row
            None if line == 0 => continue,
            None => {
                return Err(anyhow!(
                    "{}:{}: expected two numbers",
                    path.display(),
                    line + 1
                ));
            }
        }
    }
    Ok(points)
}

type Partition = (Vec<(Complex64, PointClass)>, Vec<(Complex64, f64)>);

/// Splits probes into accepted points with their side and rejects with
/// their distance to the curve.
pub fn partition(curve: &CurveDiscretization, points: &[Complex64]) -> Partition {
    let mut accepted = Vec::new();
    let mut rejected = Vec::new();
    for &z in points {
        match curve.classify(z) {
            PointClass::NearBoundary => rejected.push((z, curve.distance(z))),
            class => accepted.push((z, class)),
        }
    }
    (accepted, rejected)
}
