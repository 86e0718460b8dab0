//! Exact enumeration of self-avoiding walks on the infinite hypercubic lattice.
//!
//! Walks are grown depth-first inside a box of side `2 n_max + 3` centred on
//! the origin, so no bounds checks are needed. By symmetry every walk is
//! reduced to one whose first step is `+e0`; with [`Symmetry::Full`] the walk
//! is further pinned so that its first step off the `e0` axis is `+e1`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use num_traits::ToPrimitive;

use crate::analysis::{fit_exponent, registry, richardson, spread, FitMode, FitResult};
use crate::error::{Error, Result, WorkBudget};
use crate::series::{big_ln, big_to_f64, BigCount, EstimateReport, Provenance, SeriesTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Symmetry {
    /// Fix the first step only; multiply by `2d`.
    FirstStep,
    /// Also fix the first off-axis step; multiply by `2d * 2(d-1)`.
    #[default]
    Full,
}

#[derive(Debug, Clone, Copy)]
pub struct SawOptions {
    pub symmetry: Symmetry,
    pub budget: WorkBudget,
}

impl Default for SawOptions {
    fn default() -> Self {
        SawOptions {
            symmetry: Symmetry::Full,
            budget: WorkBudget::DEFAULT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WalkCensus {
    pub dim: usize,
    pub max_len: usize,
    /// n -> c(n)
    pub counts: SeriesTable,
    /// n -> sum over n-step walks of |w(n)|^2
    pub sq_disp_sums: SeriesTable,
}

/// Per-length tallies for a subtree.
#[derive(Clone)]
struct Tally {
    counts: Vec<u64>,
    sq: Vec<u64>,
}

impl Tally {
    fn new(len: usize) -> Self {
        Tally {
            counts: vec![0; len],
            sq: vec![0; len],
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        for (a, b) in self.sq.iter_mut().zip(&other.sq) {
            *a += b;
        }
        self
    }
}

/// A walk prefix handed to a worker: the sequence of (axis, sign) steps.
type Prefix = Vec<(usize, i64)>;

struct Walker {
    dim: usize,
    max_len: usize,
    strides: Vec<usize>,
    origin: usize,
    occupied: Vec<bool>,
    coords: Vec<i64>,
}

impl Walker {
    fn new(dim: usize, max_len: usize) -> Self {
        let side = 2 * max_len + 3;
        let strides: Vec<usize> = (0..dim).map(|k| side.pow(k as u32)).collect();
        let origin = strides.iter().map(|s| s * (max_len + 1)).sum();
        Walker {
            dim,
            max_len,
            strides,
            origin,
            occupied: vec![false; side.pow(dim as u32)],
            coords: vec![0; dim],
        }
    }

    fn norm(&self) -> u64 {
        self.coords.iter().map(|c| (c * c) as u64).sum()
    }

    fn offset(&self, pos: usize, axis: usize, sign: i64) -> usize {
        if sign > 0 {
            pos + self.strides[axis]
        } else {
            pos - self.strides[axis]
        }
    }

    /// Walk the prefix, tally each of its lengths, then enumerate all extensions.
    fn run(&mut self, prefix: &[(usize, i64)], tally: &mut Tally) {
        let mut pos = self.origin;
        self.occupied[pos] = true;
        let mut trail = vec![pos];
        for &(axis, sign) in prefix {
            pos = self.offset(pos, axis, sign);
            debug_assert!(!self.occupied[pos]);
            self.occupied[pos] = true;
            self.coords[axis] += sign;
            trail.push(pos);
        }
        // Shorter lengths were tallied by the prefix generator.
        let len = prefix.len();
        tally.counts[len] += 1;
        tally.sq[len] += self.norm();
        if len < self.max_len {
            self.extend(pos, len, tally);
        }
        for p in trail {
            self.occupied[p] = false;
        }
        self.coords.iter_mut().for_each(|c| *c = 0);
    }

    fn extend(&mut self, pos: usize, len: usize, tally: &mut Tally) {
        let norm = self.norm();
        self.extend_from(pos, len, norm, tally);
    }

    fn extend_from(&mut self, pos: usize, len: usize, norm: u64, tally: &mut Tally) {
        let next = len + 1;
        if next == self.max_len {
            // Leaf level: count free neighbours without descending.
            let (mut count, mut sq) = (0u64, 0u64);
            for axis in 0..self.dim {
                let c = self.coords[axis];
                let stride = self.strides[axis];
                if !self.occupied[pos + stride] {
                    count += 1;
                    sq += (norm as i64 + 2 * c + 1) as u64;
                }
                if !self.occupied[pos - stride] {
                    count += 1;
                    sq += (norm as i64 - 2 * c + 1) as u64;
                }
            }
            tally.counts[next] += count;
            tally.sq[next] += sq;
            return;
        }
        for axis in 0..self.dim {
            for sign in [1i64, -1] {
                let np = self.offset(pos, axis, sign);
                if self.occupied[np] {
                    continue;
                }
                let c = self.coords[axis];
                let nnorm = (norm as i64 + 2 * sign * c + 1) as u64;
                self.occupied[np] = true;
                self.coords[axis] = c + sign;
                tally.counts[next] += 1;
                tally.sq[next] += nnorm;
                self.extend_from(np, next, nnorm, tally);
                self.coords[axis] = c;
                self.occupied[np] = false;
            }
        }
    }
}

/// Generate all self-avoiding prefixes of exactly `depth` steps (or shorter
/// ones that hit `max_len`), recording tallies for lengths below `depth`.
fn prefixes(dim: usize, seed: Prefix, depth: usize, tally: &mut Tally, out: &mut Vec<Prefix>) {
    fn rec(
        dim: usize,
        walk: &mut Prefix,
        sites: &mut Vec<Vec<i64>>,
        depth: usize,
        tally: &mut Tally,
        out: &mut Vec<Prefix>,
    ) {
        if walk.len() == depth {
            out.push(walk.clone());
            return;
        }
        let here = sites.last().unwrap().clone();
        let norm: i64 = here.iter().map(|c| c * c).sum();
        tally.counts[walk.len()] += 1;
        tally.sq[walk.len()] += norm as u64;
        for axis in 0..dim {
            for sign in [1i64, -1] {
                let mut next = here.clone();
                next[axis] += sign;
                if sites.contains(&next) {
                    continue;
                }
                walk.push((axis, sign));
                sites.push(next);
                rec(dim, walk, sites, depth, tally, out);
                sites.pop();
                walk.pop();
            }
        }
    }
    let mut sites = vec![vec![0i64; dim]];
    for &(axis, sign) in &seed {
        let mut next = sites.last().unwrap().clone();
        next[axis] += sign;
        sites.push(next);
    }
    let mut walk = seed;
    rec(dim, &mut walk, &mut sites, depth, tally, out);
}

fn projected_nodes(dim: usize, n_max: usize, symmetry: Symmetry) -> f64 {
    let d = dim as f64;
    let mu = (2.0 * d - 1.0 - 0.5 / d).max(1.0);
    let reduction = match symmetry {
        Symmetry::FirstStep => 2.0 * d,
        Symmetry::Full => 2.0 * d * (2.0 * d - 2.0).max(1.0),
    };
    mu.powi(n_max.saturating_sub(1) as i32) * 1.5 / reduction
}

pub fn enumerate_saw(dim: usize, n_max: usize) -> Result<WalkCensus> {
    enumerate_saw_with(dim, n_max, SawOptions::default())
}

pub fn enumerate_saw_with(dim: usize, n_max: usize, opts: SawOptions) -> Result<WalkCensus> {
    if dim == 0 || n_max == 0 {
        return Err(Error::Domain(format!(
            "need dim >= 1 and max length >= 1 (dim={dim}, n_max={n_max})"
        )));
    }
    if n_max > 64 || ((2 * n_max + 3) as f64).powi(dim as i32) > (1u64 << 31) as f64 {
        return Err(Error::Domain(format!(
            "lattice box too large for dim={dim}, n_max={n_max}"
        )));
    }
    opts.budget.check(
        "self-avoiding walk enumeration",
        projected_nodes(dim, n_max, opts.symmetry),
    )?;

    let len = n_max + 1;
    // Reduced tallies over walks of length >= 1 in the fixed sector, plus the
    // number of on-axis walks for the Full reduction.
    let mut head = Tally::new(len);
    let mut tasks: Vec<Prefix> = Vec::new();
    let split = (n_max).min(if dim == 2 { 10 } else { 6 });

    let symmetry = if dim == 1 { Symmetry::FirstStep } else { opts.symmetry };
    match symmetry {
        Symmetry::FirstStep => {
            prefixes(dim, vec![(0, 1)], split, &mut head, &mut tasks);
        }
        Symmetry::Full => {
            // Straight runs of k steps along +e0 followed by a +e1 step.
            for k in 1..n_max {
                let mut seed: Prefix = vec![(0, 1); k];
                seed.push((1, 1));
                prefixes(dim, seed, split.max(k + 1), &mut head, &mut tasks);
            }
        }
    }

    let body = tasks
        .par_iter()
        .map_init(
            || Walker::new(dim, n_max),
            |walker, prefix| {
                let mut t = Tally::new(len);
                walker.run(prefix, &mut t);
                t
            },
        )
        .reduce(|| Tally::new(len), Tally::merge);
    let reduced = head.merge(body);

    let d = dim as u64;
    let mut counts = SeriesTable::new(Provenance::new("self-avoiding walk", format!("Z^{dim}")).with("max_len", n_max));
    let mut sq =
        SeriesTable::new(Provenance::new("squared end-to-end distance sum", format!("Z^{dim}")).with("max_len", n_max));
    counts.insert(0, BigCount::from(1u32));
    sq.insert(0, BigCount::from(0u32));
    for n in 1..len {
        let (c, s) = match symmetry {
            Symmetry::FirstStep => (reduced.counts[n] as u128, reduced.sq[n] as u128),
            Symmetry::Full => {
                let fold = 2 * (d as u128 - 1);
                let axis_sq = (n * n) as u128;
                (
                    1 + fold * reduced.counts[n] as u128,
                    axis_sq + fold * reduced.sq[n] as u128,
                )
            }
        };
        counts.insert(n as u32, BigCount::from(c * 2 * d as u128));
        sq.insert(n as u32, BigCount::from(s * 2 * d as u128));
    }
    Ok(WalkCensus {
        dim,
        max_len: n_max,
        counts,
        sq_disp_sums: sq,
    })
}

/// Exact mean squared end-to-end distance of the n-step walks.
pub fn mean_square_displacement(census: &WalkCensus, n: usize) -> Result<BigRational> {
    if n > census.max_len {
        return Err(Error::Domain(format!("n={n} beyond census length {}", census.max_len)));
    }
    let c = census.counts.get(n as u32).expect("census is dense");
    let s = census.sq_disp_sums.get(n as u32).expect("census is dense");
    Ok(BigRational::new(BigInt::from(s.clone()), BigInt::from(c.clone())))
}

/// Connective constant from `sqrt(c(n)/c(n-2))` over even `n`, Richardson
/// order 2 in `1/n`. Restricting to one parity removes the odd/even
/// oscillation of the bipartite lattice.
pub fn mu_estimate(census: &WalkCensus) -> Result<EstimateReport> {
    let ln = |n: usize| big_ln(census.counts.get(n as u32).expect("census is dense"));
    let ratios: Vec<(f64, f64)> = (4..=census.max_len)
        .step_by(2)
        .map(|n| (n as f64, ((ln(n) - ln(n - 2)) / 2.0).exp()))
        .collect();
    if ratios.len() < 4 {
        return Err(Error::TooShort {
            needed: 4,
            got: ratios.len(),
        });
    }
    let accelerated = richardson(&ratios, 2)?;
    let key = format!("mu_d{}", census.dim);
    let target = registry().iter().find(|e| e.key == key).map(|e| e.value());
    Ok(EstimateReport {
        quantity: format!("connective constant, d={}", census.dim),
        method: "sqrt(c(n)/c(n-2)) over even n, Richardson order 2 in 1/n".into(),
        value: *accelerated.last().unwrap(),
        raw: ratios,
        error_proxy: spread(&accelerated),
        accelerated,
        target,
        notes: Vec::new(),
    })
}

/// Fits of `gamma` (from `c(n) / mu^n`) and `nu` (from the mean squared displacement).
pub fn exponent_fits(census: &WalkCensus, mu: f64) -> Result<(FitResult, FitResult)> {
    let counts: Vec<(u32, f64)> = census.counts.iter().map(|(n, c)| (n, big_to_f64(c))).collect();
    let disp: Vec<(u32, f64)> = (1..=census.max_len)
        .map(|n| {
            let m = mean_square_displacement(census, n)?;
            Ok((n as u32, m.to_f64().unwrap_or(f64::NAN)))
        })
        .collect::<Result<_>>()?;
    Ok((
        fit_exponent(&counts, FitMode::Growth { mu })?,
        fit_exponent(&disp, FitMode::Displacement)?,
    ))
}
