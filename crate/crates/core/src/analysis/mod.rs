//! Sequence acceleration, power-law exponent fits and the reference-constant registry.

mod registry;

pub use registry::{registry, registry_compare, CompareLine, RegistryEntry, RegistryKind, Verdict};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Aitken Δ² output. `flagged` lists positions where the second difference
/// vanished without the first difference vanishing; those slots carry the
/// latest raw term instead of an accelerated one.
#[derive(Debug, Clone, PartialEq)]
pub struct Aitken {
    pub values: Vec<f64>,
    pub flagged: Vec<usize>,
}

pub fn aitken(seq: &[f64]) -> Result<Aitken> {
    if seq.len() < 3 {
        return Err(Error::TooShort {
            needed: 3,
            got: seq.len(),
        });
    }
    let mut values = Vec::with_capacity(seq.len() - 2);
    let mut flagged = Vec::new();
    for (i, w) in seq.windows(3).enumerate() {
        let d1 = w[1] - w[0];
        let d2 = w[2] - w[1];
        let dd = d2 - d1;
        let scale = w.iter().fold(0.0f64, |m, x| m.max(x.abs())).max(f64::MIN_POSITIVE);
        if d1 == 0.0 && d2 == 0.0 {
            values.push(w[2]);
        } else if dd.abs() <= 1e-14 * scale || !dd.is_finite() {
            values.push(w[2]);
            flagged.push(i);
        } else {
            values.push(w[2] - d2 * d2 / dd);
        }
    }
    Ok(Aitken { values, flagged })
}

/// Value at zero of the polynomial through `(x, y)` points (Neville's scheme).
fn neville_at_zero(points: &[(f64, f64)]) -> f64 {
    let mut p: Vec<f64> = points.iter().map(|&(_, y)| y).collect();
    let xs: Vec<f64> = points.iter().map(|&(x, _)| x).collect();
    let m = p.len();
    for level in 1..m {
        for i in 0..m - level {
            let (xi, xj) = (xs[i], xs[i + level]);
            p[i] = (xj * p[i] - xi * p[i + 1]) / (xj - xi);
        }
    }
    p[0]
}

/// Richardson extrapolation in `1/n`: each window of `order + 1` consecutive
/// `(n, a_n)` points is fitted by a polynomial of degree `order` in `1/n` and
/// evaluated at `1/n = 0`. Output length is `len - order`.
pub fn richardson(seq: &[(f64, f64)], order: usize) -> Result<Vec<f64>> {
    richardson_in(seq, order, |n| 1.0 / n)
}

/// Richardson extrapolation with a caller-chosen abscissa, e.g. `1/n²`.
pub fn richardson_in(seq: &[(f64, f64)], order: usize, abscissa: impl Fn(f64) -> f64) -> Result<Vec<f64>> {
    if seq.len() < order + 1 {
        return Err(Error::TooShort {
            needed: order + 1,
            got: seq.len(),
        });
    }
    let pts: Vec<(f64, f64)> = seq.iter().map(|&(n, a)| (abscissa(n), a)).collect();
    Ok(pts.windows(order + 1).map(neville_at_zero).collect())
}

/// Spread of the last two iterates; zero for a single iterate.
pub fn spread(values: &[f64]) -> f64 {
    match values {
        [.., a, b] => (b - a).abs(),
        _ => 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FitMode {
    /// `c(n) ~ A mu^n n^(gamma - 1)`; exponent is gamma.
    Growth { mu: f64 },
    /// `s(n) ~ D n^(2 nu)`; exponent is nu.
    Displacement,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub exponent: f64,
    pub amplitude: f64,
    /// Root-mean-square residual of the log-log fit.
    pub residual: f64,
    /// Inclusive range of n used.
    pub window: (u32, u32),
}

/// Ordinary least squares, returns (slope, intercept, rms residual).
pub fn least_squares(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let m = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / m;
    let my = ys.iter().sum::<f64>() / m;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    (slope, intercept, (rss / m).sqrt())
}

/// Log-log least-squares fit of a critical exponent over the upper half of the
/// available `n`. Input is `(n, value)` with `n >= 1`.
pub fn fit_exponent(seq: &[(u32, f64)], mode: FitMode) -> Result<FitResult> {
    let pts: Vec<(u32, f64)> = seq.iter().copied().filter(|&(n, _)| n >= 1).collect();
    if pts.len() < 6 {
        return Err(Error::TooShort {
            needed: 6,
            got: pts.len(),
        });
    }
    if let Some(&(n, v)) = pts.iter().find(|&&(_, v)| v.is_nan() || v <= 0.0) {
        return Err(Error::Domain(format!("nonpositive value {v} at n={n}")));
    }
    let window = &pts[pts.len() / 2..];
    let xs: Vec<f64> = window.iter().map(|&(n, _)| (n as f64).ln()).collect();
    let ys: Vec<f64> = match mode {
        FitMode::Growth { mu } => {
            if mu.is_nan() || mu <= 0.0 {
                return Err(Error::Domain(format!("growth fit needs mu > 0, got {mu}")));
            }
            window.iter().map(|&(n, v)| v.ln() - n as f64 * mu.ln()).collect()
        }
        FitMode::Displacement => window.iter().map(|&(_, v)| v.ln()).collect(),
    };
    let (slope, intercept, residual) = least_squares(&xs, &ys);
    let exponent = match mode {
        FitMode::Growth { .. } => slope + 1.0,
        FitMode::Displacement => slope / 2.0,
    };
    Ok(FitResult {
        exponent,
        amplitude: intercept.exp(),
        residual,
        window: (window[0].0, window[window.len() - 1].0),
    })
}

/// Ratio-method estimate of a growth constant from exact counts.
///
/// Uses `sqrt(a(n+1)/a(n-1))` when `alternate` is set (damps odd/even
/// oscillation on bipartite lattices), else `a(n+1)/a(n)`, then Richardson in
/// `1/n` of the given order.
/// Raw `(n, ratio)` pairs and their accelerated iterates.
pub type RatioSequence = (Vec<(f64, f64)>, Vec<f64>);

pub fn ratio_estimate(ln_counts: &[(u32, f64)], alternate: bool, order: usize) -> Result<RatioSequence> {
    let mut ratios = Vec::new();
    if alternate {
        for w in ln_counts.windows(3) {
            ratios.push((w[1].0 as f64, ((w[2].1 - w[0].1) / 2.0).exp()));
        }
    } else {
        for w in ln_counts.windows(2) {
            ratios.push((w[1].0 as f64, (w[1].1 - w[0].1).exp()));
        }
    }
    let acc = richardson(&ratios, order)?;
    Ok((ratios, acc))
}
