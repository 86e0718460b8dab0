//! Dimer coverings and monomer-dimer arrangements of free-boundary boxes.
//!
//! Counting is a broken-profile transfer over cells in row-major order. The
//! state is a bitmask over the next `W` cells (`W` = product of all but the
//! slowest dimension): bit `t` set means cell `i + t` is already covered by a
//! dimer placed from an earlier cell.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::analysis::{richardson, spread};
use crate::error::{Error, Result, WorkBudget};
use crate::precision::Dd;
use crate::series::{big_ln, BigCount, EstimateReport, Provenance, SeriesTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoveringKind {
    DimerOnly2D,
    MonomerDimer2D,
    DimerOnly3D,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoveringCensus {
    pub kind: CoveringKind,
    /// n -> count on the free n x n (x n) box.
    pub counts: SeriesTable,
}

/// Accumulator for the transfer: `u128` first, `BigCount` when that overflows.
trait Acc: Clone + Send {
    fn empty() -> Self;
    fn unit() -> Self;
    fn is_empty(&self) -> bool;
    /// Adds, returning false on overflow.
    fn add(&mut self, other: &Self) -> bool;
    fn into_big(self) -> BigCount;
}

impl Acc for u128 {
    fn empty() -> Self {
        0
    }
    fn unit() -> Self {
        1
    }
    fn is_empty(&self) -> bool {
        *self == 0
    }
    fn add(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn into_big(self) -> BigCount {
        BigCount::from(self)
    }
}

impl Acc for BigCount {
    fn empty() -> Self {
        BigCount::zero()
    }
    fn unit() -> Self {
        BigCount::from(1u32)
    }
    fn is_empty(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn into_big(self) -> BigCount {
        self
    }
}

fn profile_dp<T: Acc>(dims: &[usize], monomers: bool) -> Option<BigCount> {
    let cells: usize = dims.iter().product();
    let strides: Vec<usize> = (0..dims.len()).map(|a| dims[a + 1..].iter().product()).collect();
    let window = strides[0];
    let size = 1usize << window;
    let mut cur: Vec<T> = vec![T::empty(); size];
    let mut next: Vec<T> = vec![T::empty(); size];
    cur[0] = T::unit();
    let mut coord = vec![0usize; dims.len()];
    for _ in 0..cells {
        for v in next.iter_mut() {
            *v = T::empty();
        }
        for state in 0..size {
            if cur[state].is_empty() {
                continue;
            }
            let val = std::mem::replace(&mut cur[state], T::empty());
            if state & 1 == 1 {
                if !next[state >> 1].add(&val) {
                    return None;
                }
                continue;
            }
            if monomers && !next[state >> 1].add(&val) {
                return None;
            }
            for (axis, &stride) in strides.iter().enumerate() {
                if coord[axis] + 1 < dims[axis]
                    && state & (1 << stride) == 0
                    && !next[(state | 1 << stride) >> 1].add(&val)
                {
                    return None;
                }
            }
        }
        std::mem::swap(&mut cur, &mut next);
        for axis in (0..dims.len()).rev() {
            coord[axis] += 1;
            if coord[axis] < dims[axis] {
                break;
            }
            coord[axis] = 0;
        }
    }
    Some(std::mem::replace(&mut cur[0], T::empty()).into_big())
}

/// Exact count on a free-boundary box with the given dimensions (slowest first).
pub fn count_box(dims: &[usize], monomers: bool, budget: WorkBudget) -> Result<BigCount> {
    if dims.is_empty() || dims.contains(&0) {
        return Err(Error::Domain(format!("box dimensions must be positive: {dims:?}")));
    }
    let cells: usize = dims.iter().product();
    if !monomers && cells % 2 == 1 {
        return Ok(BigCount::zero());
    }
    let window: usize = dims[1..].iter().product();
    if window > 30 {
        return Err(Error::Budget {
            what: "profile transfer (state space 2^window)",
            projected: u64::MAX,
            budget: budget.0,
        });
    }
    budget.check("profile transfer", cells as f64 * (1u64 << window) as f64)?;
    Ok(match profile_dp::<u128>(dims, monomers) {
        Some(v) => v,
        None => profile_dp::<BigCount>(dims, monomers).expect("big integers do not overflow"),
    })
}

pub fn count_dimer_coverings_2d(n: usize) -> Result<BigCount> {
    count_box(&[n, n], false, WorkBudget::DEFAULT)
}

pub fn count_dimer_rect(rows: usize, cols: usize) -> Result<BigCount> {
    count_box(&[rows, cols], false, WorkBudget::DEFAULT)
}

pub fn count_monomer_dimer(n: usize) -> Result<BigCount> {
    count_box(&[n, n], true, WorkBudget::DEFAULT)
}

pub fn count_dimer_coverings_3d(n: usize) -> Result<BigCount> {
    count_box(&[n, n, n], false, WorkBudget::DEFAULT)
}

pub fn census(kind: CoveringKind, sides: impl IntoIterator<Item = usize>) -> Result<CoveringCensus> {
    let (name, lattice) = match kind {
        CoveringKind::DimerOnly2D => ("dimer coverings", "square, free"),
        CoveringKind::MonomerDimer2D => ("monomer-dimer arrangements", "square, free"),
        CoveringKind::DimerOnly3D => ("dimer coverings", "cubic, free"),
    };
    let mut counts = SeriesTable::new(Provenance::new(name, lattice));
    for n in sides {
        let c = match kind {
            CoveringKind::DimerOnly2D => count_dimer_coverings_2d(n)?,
            CoveringKind::MonomerDimer2D => count_monomer_dimer(n)?,
            CoveringKind::DimerOnly3D => count_dimer_coverings_3d(n)?,
        };
        counts.insert(n as u32, c);
    }
    Ok(CoveringCensus { kind, counts })
}

/// Mode-product evaluation of the dimer count of an m x n rectangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KasteleynValue {
    pub value: f64,
    /// Nearest integer to the extended-precision product.
    pub nearest: BigCount,
    /// Distance from the product to `nearest`.
    pub distance: f64,
    /// Bound on the absolute error of the product.
    pub error_bound: f64,
}

/// `prod_{j,k} (4 cos^2(j pi/(m+1)) + 4 cos^2(k pi/(n+1)))^(1/4)`.
///
/// Factors with `j` and `m+1-j` coincide, so the fourth roots are grouped into
/// integer powers, leaving square roots only for a middle index of an odd side.
pub fn kasteleyn_count(m: usize, n: usize) -> Result<KasteleynValue> {
    if m == 0 || n == 0 || (m * n) % 2 == 1 {
        return Err(Error::Domain(format!("m*n must be even and positive (m={m}, n={n})")));
    }
    let four_cos2 = |j: usize, side: usize| {
        let c = Dd::PI.mul_f64(j as f64).div_f64((side + 1) as f64).cos();
        (c * c).mul_f64(4.0)
    };
    // Index classes with their multiplicity among 1..=side.
    let classes = |side: usize| -> Vec<(usize, u32)> {
        let mut v: Vec<(usize, u32)> = (1..=side / 2).map(|j| (j, 2)).collect();
        if side % 2 == 1 {
            v.push((side.div_ceil(2), 1));
        }
        v
    };
    let mut product = Dd::ONE;
    let mut ops = 0usize;
    for &(j, mj) in &classes(m) {
        let a = four_cos2(j, m);
        for &(k, mk) in &classes(n) {
            let t = a + four_cos2(k, n);
            // Exponent (mj * mk) / 4 is 1 or 1/2 here since m*n is even.
            let factor = match mj * mk {
                4 => t,
                2 => t.sqrt(),
                _ => unreachable!("both sides odd"),
            };
            product = product * factor;
            ops += 1;
        }
    }
    let value = product.to_f64();
    let error_bound = value.abs() * (ops as f64 + 4.0) * 64.0 * Dd::EPS;
    let (h, r) = product.round_parts();
    let nearest_int = BigInt::from_f64(h).unwrap() + BigInt::from_f64(r).unwrap();
    let nearest_f = Dd::new(h) + Dd::new(r);
    let distance = (product - nearest_f).to_f64().abs();
    if distance + error_bound >= 0.25 {
        return Err(Error::Consistency(format!(
            "rounding of the mode product is ambiguous for {m}x{n} (distance {distance:.3e}, error bound {error_bound:.3e})"
        )));
    }
    Ok(KasteleynValue {
        value,
        nearest: nearest_int
            .to_biguint()
            .ok_or_else(|| Error::Consistency("negative product".into()))?,
        distance,
        error_bound,
    })
}

/// Catalan's constant by the accelerated alternating series of
/// Cohen, Rodriguez Villegas and Zagier, with its truncation bound.
pub fn catalan() -> (f64, f64) {
    let n = 30usize;
    let mut d = (3.0 + 8f64.sqrt()).powi(n as i32);
    d = (d + 1.0 / d) / 2.0;
    let mut b = -1.0f64;
    let mut c = -d;
    let mut s = 0.0f64;
    for k in 0..n {
        c = b - c;
        s += c / ((2 * k + 1) as f64).powi(2);
        let kf = k as f64;
        let nf = n as f64;
        b *= (kf + nf) * (kf - nf) / ((kf + 0.5) * (kf + 1.0));
    }
    let value = s / d;
    // Terms are moments of a positive measure on [0, 1].
    let bound = 2.0 * value / (3.0 + 8f64.sqrt()).powi(n as i32);
    (value, bound)
}

/// `exp(2G/pi)`, the square-lattice dimer constant.
pub fn dimer_constant() -> f64 {
    (2.0 * catalan().0 / std::f64::consts::PI).exp()
}

fn per_site_exponential(table: &SeriesTable, dim: i32, power: f64) -> Vec<(f64, f64)> {
    table
        .iter()
        .filter(|(_, c)| !Zero::is_zero(*c))
        .map(|(n, c)| (n as f64, power * big_ln(c) / (n as f64).powi(dim)))
        .collect()
}

fn estimate_from_logs(
    quantity: &str,
    logs: &[(f64, f64)],
    order: usize,
    target: f64,
    method: &str,
) -> Result<EstimateReport> {
    let acc_logs = richardson(logs, order)?;
    let accelerated: Vec<f64> = acc_logs.iter().map(|v| v.exp()).collect();
    Ok(EstimateReport {
        quantity: quantity.into(),
        method: method.into(),
        value: *accelerated.last().unwrap(),
        raw: logs.iter().map(|&(n, l)| (n, l.exp())).collect(),
        error_proxy: spread(&accelerated),
        accelerated,
        target: Some(target),
        notes: Vec::new(),
    })
}

/// Extrapolate `f(n)^(2/N)` over even `n` from a table of dimer counts.
pub fn dimer_entropy_from_table(table: &SeriesTable) -> Result<EstimateReport> {
    let logs = per_site_exponential(table, 2, 2.0);
    if logs.len() < 4 {
        return Err(Error::TooShort {
            needed: 4,
            got: logs.len(),
        });
    }
    estimate_from_logs(
        "exp(2G/pi)",
        &logs,
        2,
        dimer_constant(),
        "f(n)^(2/N) over even n, Richardson order 2 in 1/n on the logarithm",
    )
}

pub fn dimer_entropy_estimate(n_max: usize) -> Result<EstimateReport> {
    if n_max < 8 || n_max % 2 == 1 {
        return Err(Error::TooShort { needed: 8, got: n_max });
    }
    let c = census(CoveringKind::DimerOnly2D, (2..=n_max).step_by(2))?;
    dimer_entropy_from_table(&c.counts)
}

/// Extrapolate `g(n)^(1/N)` from a table of monomer-dimer counts.
pub fn kappa_from_table(table: &SeriesTable) -> Result<EstimateReport> {
    let logs = per_site_exponential(table, 2, 1.0);
    if logs.len() < 6 {
        return Err(Error::TooShort {
            needed: 6,
            got: logs.len(),
        });
    }
    let mut r = estimate_from_logs(
        "kappa",
        &logs,
        3,
        1.940215351,
        "g(n)^(1/N), Richardson order 3 in 1/n on the logarithm",
    )?;
    if logs.windows(2).any(|w| w[1].1 < w[0].1) {
        r.notes.push("raw sequence is not increasing".into());
    }
    Ok(r)
}

pub fn kappa_estimate(n_max: usize) -> Result<EstimateReport> {
    if n_max < 10 {
        return Err(Error::TooShort { needed: 10, got: n_max });
    }
    let c = census(CoveringKind::MonomerDimer2D, 1..=n_max)?;
    kappa_from_table(&c.counts)
}

/// Cubic-lattice dimer entropy from the two computable sizes. Low confidence.
pub fn lambda_estimate() -> Result<EstimateReport> {
    let sides = [2usize, 4];
    let mut raw = Vec::new();
    let mut notes = vec!["LOW-CONFIDENCE: two finite sizes, free boundary".to_string()];
    for n in sides {
        let h = count_dimer_coverings_3d(n)?;
        let sites = (n * n * n) as f64;
        let v = 2.0 * big_ln(&h) / sites;
        raw.push((n as f64, v));
        let inside = (0.44007584..=0.463107).contains(&v);
        notes.push(format!(
            "n={n}: h={h}, (2/N) ln h = {v:.5} {}; (1/N) ln h = {:.5}",
            if inside {
                "inside [0.44007584, 0.463107]"
            } else {
                "outside [0.44007584, 0.463107] (finite size)"
            },
            v / 2.0
        ));
    }
    let value = raw.last().unwrap().1;
    Ok(EstimateReport {
        quantity: "lambda".into(),
        method: "(2/N) ln h(n) at the largest computable n, no extrapolation".into(),
        value,
        accelerated: vec![value],
        error_proxy: (raw[1].1 - raw[0].1).abs(),
        raw,
        target: Some(0.4466),
        notes,
    })
}

pub fn big_to_u64(x: &BigCount) -> Option<u64> {
    x.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Matchings of a grid graph by direct recursion on the lowest free cell.
    fn brute(rows: usize, cols: usize, monomers: bool) -> u64 {
        fn rec(used: &mut Vec<bool>, rows: usize, cols: usize, monomers: bool) -> u64 {
            let Some(i) = used.iter().position(|u| !u) else {
                return 1;
            };
            let (r, c) = (i / cols, i % cols);
            used[i] = true;
            let mut total = if monomers { rec(used, rows, cols, monomers) } else { 0 };
            if c + 1 < cols && !used[i + 1] {
                used[i + 1] = true;
                total += rec(used, rows, cols, monomers);
                used[i + 1] = false;
            }
            if r + 1 < rows && !used[i + cols] {
                used[i + cols] = true;
                total += rec(used, rows, cols, monomers);
                used[i + cols] = false;
            }
            used[i] = false;
            total
        }
        rec(&mut vec![false; rows * cols], rows, cols, monomers)
    }

    fn u(x: BigCount) -> u64 {
        x.to_u64().unwrap()
    }

    #[test]
    fn dimer_examples() {
        assert_eq!(u(count_dimer_coverings_2d(2).unwrap()), 2);
        assert_eq!(u(count_dimer_coverings_2d(3).unwrap()), 0);
        assert_eq!(u(count_dimer_coverings_2d(4).unwrap()), 36);
        assert_eq!(brute(4, 4, false), 36);
    }

    #[test]
    fn monomer_dimer_examples() {
        assert_eq!(u(count_monomer_dimer(1).unwrap()), 1);
        assert_eq!(u(count_monomer_dimer(2).unwrap()), 7);
        assert_eq!(brute(3, 3, true), 131);
        assert_eq!(u(count_monomer_dimer(3).unwrap()), 131);
    }

    #[test]
    fn profile_dp_matches_brute_force() {
        for rows in 1..=4 {
            for cols in 1..=5 {
                assert_eq!(
                    u(count_box(&[rows, cols], false, WorkBudget::DEFAULT).unwrap()),
                    brute(rows, cols, false)
                );
                assert_eq!(
                    u(count_box(&[rows, cols], true, WorkBudget::DEFAULT).unwrap()),
                    brute(rows, cols, true)
                );
            }
        }
    }

    #[test]
    fn sweep_direction_does_not_matter() {
        for (a, b) in [(3, 8), (5, 6), (2, 11)] {
            assert_eq!(
                count_box(&[a, b], false, WorkBudget::DEFAULT),
                count_box(&[b, a], false, WorkBudget::DEFAULT)
            );
            assert_eq!(
                count_box(&[a, b], true, WorkBudget::DEFAULT),
                count_box(&[b, a], true, WorkBudget::DEFAULT)
            );
        }
        assert_eq!(
            count_box(&[2, 3, 4], false, WorkBudget::DEFAULT),
            count_box(&[4, 3, 2], false, WorkBudget::DEFAULT)
        );
    }

    #[test]
    fn cubic_examples() {
        assert_eq!(u(count_dimer_coverings_3d(2).unwrap()), 9);
        assert_eq!(u(count_dimer_coverings_3d(3).unwrap()), 0);
        assert!(matches!(count_dimer_coverings_3d(6), Err(Error::Budget { .. })));
    }

    #[test]
    fn big_integer_fallback_kicks_in() {
        // 2^(cells) style growth overflows u128 long before n = 14.
        let g = count_monomer_dimer(14).unwrap();
        assert!(g.bits() > 128);
        assert_eq!(count_box(&[14, 14], true, WorkBudget::DEFAULT).unwrap(), g);
    }

    #[test]
    fn mode_product_matches_transfer() {
        for n in (2..=12).step_by(2) {
            let k = kasteleyn_count(n, n).unwrap();
            assert_eq!(k.nearest, count_dimer_coverings_2d(n).unwrap(), "n={n}");
        }
        for (m, n) in [(2, 3), (3, 4), (5, 6), (1, 8)] {
            assert_eq!(kasteleyn_count(m, n).unwrap().nearest, count_dimer_rect(m, n).unwrap());
        }
        assert!(kasteleyn_count(3, 5).is_err());
    }

    #[test]
    fn catalan_and_dimer_constant() {
        let (g, bound) = catalan();
        assert!((g - 0.915_965_594_177_219_015).abs() < 1e-15);
        assert!(bound < 1e-20);
        assert!((dimer_constant() - 1.79162281206959342).abs() < 1e-15);
    }

    #[test]
    fn synthetic_geometric_tables() {
        let mut t = SeriesTable::default();
        for n in (2..=10u32).step_by(2) {
            t.insert(n, BigCount::from(3u32).pow(n * n / 2));
        }
        assert!((dimer_entropy_from_table(&t).unwrap().value - 3.0).abs() < 1e-12);
        let mut g = SeriesTable::default();
        for n in 1..=10u32 {
            g.insert(n, BigCount::from(2u32).pow(n * n));
        }
        assert!((kappa_from_table(&g).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn raw_dimer_sequence_is_monotone() {
        let r = dimer_entropy_estimate(8).unwrap();
        assert!(r.raw.windows(2).all(|w| w[1].1 > w[0].1));
    }

    #[test]
    fn invariants_between_models() {
        for n in 1..=6 {
            let g = count_monomer_dimer(n).unwrap();
            assert!(g >= count_dimer_coverings_2d(n).unwrap());
        }
    }

    #[test]
    fn monomer_dimer_parity_is_not_always_odd() {
        // Odd up to n = 3, then 10012 at n = 4.
        let g: Vec<u64> = (1..=6).map(|n| u(count_monomer_dimer(n).unwrap())).collect();
        assert_eq!(g, [1, 7, 131, 10012, 2810694, 2989126727]);
    }

    #[test]
    fn lambda_report_flags_finite_size() {
        assert_eq!(u(count_dimer_coverings_3d(4).unwrap()), 5051532105);
        let r = lambda_estimate().unwrap();
        assert!((r.value - 2.0 * 5051532105f64.ln() / 64.0).abs() < 1e-12);
        assert!((r.value - 0.698217).abs() < 1e-6);
        assert!(r.notes.iter().any(|n| n.contains("outside")));
    }
}
