//! Row transfer matrices for square ice and the hard-core gases.
//!
//! Hard models are counted cell by cell on a free n x n board. The state is a
//! window over the last `n + 1` cells in row-major order, so bit `k` holds cell
//! `i - 1 - k`: bit 0 is the left neighbour, bit `n - 1` the one above, bit `n`
//! the upper-left and bit `n - 2` the upper-right.
//!
//! Ice uses vertical-arrow row states on the torus. Walking along a row, the
//! horizontal arrow obeys `h[j+1] = h[j] + up[j] - up'[j]`, which is the ice
//! rule at vertex `j`; the row closes when `h[n] = h[0]`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{richardson_in, spread};
use crate::error::{Error, Result, WorkBudget};
use crate::series::{BigCount, EstimateReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HardModel {
    HardSquare,
    HardHexagon,
    King,
}

impl HardModel {
    pub fn target(self) -> f64 {
        match self {
            HardModel::HardSquare => 1.50304808247533226,
            HardModel::HardHexagon => 1.395485972479302735,
            HardModel::King => 1.342643951124,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HardModel::HardSquare => "hard squares",
            HardModel::HardHexagon => "hard hexagons",
            HardModel::King => "non-attacking kings",
        }
    }
}

/// Models accepted by [`entropy_constant`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntropyModel {
    Hard(HardModel),
    Ice,
}

pub const ICE_ENTROPY: f64 = 1.539600717839002039;

/// Whether cell `col` may be occupied given the window `state` on a board of width `width`.
fn may_occupy(model: HardModel, state: u64, col: usize, width: usize) -> bool {
    let bit = |k: usize| state >> k & 1 == 1;
    if col > 0 && bit(0) {
        return false;
    }
    if bit(width - 1) {
        return false;
    }
    let upper_left = col > 0 && bit(width);
    let upper_right = col + 1 < width && width >= 2 && bit(width - 2);
    match model {
        HardModel::HardSquare => true,
        HardModel::HardHexagon => !upper_left,
        HardModel::King => !upper_left && !upper_right,
    }
}

/// Exact count of admissible `rows x cols` configurations, free boundary.
pub fn count_hard_rect(model: HardModel, rows: usize, cols: usize) -> Result<BigCount> {
    if rows == 0 || cols == 0 {
        return Err(Error::Domain("board dimensions must be positive".into()));
    }
    if cols > 40 {
        return Err(Error::Budget {
            what: "hard-model transfer width",
            projected: cols as u64,
            budget: 40,
        });
    }
    let mask = (1u64 << (cols + 1)) - 1;
    let mut cur: HashMap<u64, BigUint> = HashMap::from([(0, BigUint::from(1u32))]);
    for _ in 0..rows {
        for col in 0..cols {
            let mut next: HashMap<u64, BigUint> = HashMap::with_capacity(cur.len() * 2);
            for (state, count) in cur {
                let empty = (state << 1) & mask;
                if may_occupy(model, state, col, cols) {
                    *next.entry(empty | 1).or_default() += &count;
                }
                *next.entry(empty).or_default() += count;
            }
            cur = next;
        }
    }
    Ok(cur.into_values().sum())
}

pub fn count_hard_configs(model: HardModel, n: usize) -> Result<BigCount> {
    count_hard_rect(model, n, n)
}

/// Power iteration result for one row width.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Eigen {
    pub width: usize,
    pub value: f64,
    pub iterations: usize,
}

const TOLERANCE: f64 = 1e-12;
const MAX_ITERATIONS: usize = 100_000;

/// Dominant eigenvalue of a nonnegative operator by shifted power iteration.
/// The shift keeps periodic operators from oscillating.
fn power_iterate(width: usize, mut v: Vec<f64>, shift: f64, apply: impl Fn(&[f64]) -> Vec<f64>) -> Result<Eigen> {
    let norm = |x: &[f64]| x.iter().sum::<f64>();
    let s = norm(&v);
    v.iter_mut().for_each(|x| *x /= s);
    let mut prev = f64::NAN;
    for it in 1..=MAX_ITERATIONS {
        let mut w = apply(&v);
        for (wi, vi) in w.iter_mut().zip(&v) {
            *wi += shift * vi;
        }
        let lambda = norm(&w);
        w.iter_mut().for_each(|x| *x /= lambda);
        v = w;
        if (lambda - prev).abs() <= TOLERANCE * lambda {
            return Ok(Eigen {
                width,
                value: lambda - shift,
                iterations: it,
            });
        }
        prev = lambda;
    }
    Err(Error::Consistency(format!(
        "power iteration did not converge for width {width}"
    )))
}

/// Applies one full row of cell steps to a dense vector over window states.
fn hard_row(model: HardModel, width: usize, v: &[f64]) -> Vec<f64> {
    let mask = (1usize << (width + 1)) - 1;
    let mut cur = v.to_vec();
    let mut next = vec![0.0; cur.len()];
    for col in 0..width {
        next.iter_mut().for_each(|x| *x = 0.0);
        for (state, &x) in cur.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let empty = (state << 1) & mask;
            if may_occupy(model, state as u64, col, width) {
                next[empty | 1] += x;
            }
            next[empty] += x;
        }
        std::mem::swap(&mut cur, &mut next);
    }
    // The cell two rows back no longer matters.
    let half = 1 << width;
    for s in half..cur.len() {
        let x = std::mem::take(&mut cur[s]);
        cur[s - half] += x;
    }
    cur
}

pub fn hard_eigenvalue(model: HardModel, width: usize) -> Result<Eigen> {
    if width == 0 {
        return Err(Error::Domain("row width must be positive".into()));
    }
    if width > 22 {
        return Err(Error::Budget {
            what: "dense hard-model transfer width",
            projected: width as u64,
            budget: 22,
        });
    }
    let mut start = vec![0.0; 1 << (width + 1)];
    start[0] = 1.0;
    let start = hard_row(model, width, &start);
    power_iterate(width, start, 0.0, |v| hard_row(model, width, v))
}

/// One nonzero transfer entry between ice row states, tagged with `h[0]`.
#[derive(Debug, Clone, Copy)]
struct IceEdge {
    from: usize,
    to: usize,
    h0: u8,
}

/// Ice transfer restricted to row states with `up` upward arrows.
struct IceSector {
    states: Vec<u32>,
    edges: Vec<IceEdge>,
}

impl IceSector {
    fn new(n: usize, up: u32) -> IceSector {
        let states: Vec<u32> = (0u32..1 << n).filter(|s| s.count_ones() == up).collect();
        let index: HashMap<u32, usize> = states.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut edges = Vec::new();
        for (from, &a) in states.iter().enumerate() {
            for h0 in 0..2u8 {
                // Depth-first over columns: (column, h, partial b).
                let mut stack = vec![(0usize, h0, 0u32)];
                while let Some((j, h, b)) = stack.pop() {
                    if j == n {
                        if h == h0 {
                            edges.push(IceEdge {
                                from,
                                to: index[&b],
                                h0,
                            });
                        }
                        continue;
                    }
                    let aj = (a >> j & 1) as u8;
                    for bj in 0..2u8 {
                        let hn = h as i8 + aj as i8 - bj as i8;
                        if (0..=1).contains(&hn) {
                            stack.push((j + 1, hn as u8, b | (bj as u32) << j));
                        }
                    }
                }
            }
        }
        edges.sort_by_key(|e| (e.from, e.to, e.h0));
        IceSector { states, edges }
    }

    fn dense(&self) -> Vec<Vec<u128>> {
        let b = self.states.len();
        let mut m = vec![vec![0u128; b]; b];
        for e in &self.edges {
            m[e.from][e.to] += 1;
        }
        m
    }

    fn apply(&self, v: &[f64]) -> Vec<f64> {
        let mut w = vec![0.0; v.len()];
        for e in &self.edges {
            w[e.to] += v[e.from];
        }
        w
    }
}

fn overflow() -> Error {
    Error::Budget {
        what: "exact transfer trace exceeds 128-bit range",
        projected: u64::MAX,
        budget: u64::MAX,
    }
}

fn mat_mul(a: &[Vec<u128>], b: &[Vec<u128>]) -> Result<Vec<Vec<u128>>> {
    let n = b.first().map_or(0, Vec::len);
    a.par_iter()
        .map(|row| {
            let mut out = vec![0u128; n];
            for (k, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out.iter_mut().zip(&b[k]) {
                    *o = x.checked_mul(y).and_then(|p| o.checked_add(p)).ok_or_else(overflow)?;
                }
            }
            Ok(out)
        })
        .collect()
}

fn mat_pow(m: &[Vec<u128>], mut e: usize) -> Result<Vec<Vec<u128>>> {
    let n = m.len();
    let mut result: Vec<Vec<u128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as u128).collect()).collect();
    let mut base = m.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            result = mat_mul(&result, &base)?;
        }
        e >>= 1;
        if e > 0 {
            base = mat_mul(&base, &base)?;
        }
    }
    Ok(result)
}

/// `Tr(m^e)` as `sum_ij P_ij Q_ji` with `P = m^(e/2)`, `Q = m^(e - e/2)`.
fn trace_pow(m: &[Vec<u128>], e: usize) -> Result<u128> {
    let p = mat_pow(m, e / 2)?;
    let q = if e.is_multiple_of(2) {
        p.clone()
    } else {
        mat_mul(&p, m)?
    };
    let mut t = 0u128;
    for (i, row) in p.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            t = x
                .checked_mul(q[j][i])
                .and_then(|y| t.checked_add(y))
                .ok_or_else(overflow)?;
        }
    }
    Ok(t)
}

fn check_torus(n: usize, max: usize, budget: WorkBudget, what: &'static str) -> Result<()> {
    if n < 2 {
        return Err(Error::Domain(format!("torus side must be at least 2, got {n}")));
    }
    if n > max {
        return Err(Error::Budget {
            what,
            projected: n as u64,
            budget: max as u64,
        });
    }
    budget.check(what, (1u64 << n) as f64 * (n * n) as f64)
}

/// Ice-rule orientations of the n x n torus, exact.
pub fn count_ice_states(n: usize) -> Result<BigCount> {
    check_torus(n, 13, WorkBudget::DEFAULT, "ice transfer trace")?;
    let mut total = 0u128;
    for up in 0..=n as u32 {
        let t = trace_pow(&IceSector::new(n, up).dense(), n)?;
        total = total.checked_add(t).ok_or_else(overflow)?;
    }
    Ok(BigCount::from(total))
}

/// Ice states whose height function is single-valued mod 3 around both
/// torus cycles: the net arrow flux across each cut is divisible by 3.
pub fn count_ice_states_mod3_flat(n: usize) -> Result<BigCount> {
    check_torus(n, 9, WorkBudget::DEFAULT, "ice winding transfer")?;
    let mut total = 0u128;
    // Flux across a horizontal cut is 2*up - n, across a vertical cut 2*H - n
    // with H the number of rows whose h[0] is 1.
    let target = (2 * n) % 3;
    for up in (0..=n as u32).filter(|&k| (2 * k as usize + 3 * n - n).is_multiple_of(3)) {
        let sector = IceSector::new(n, up);
        let b = sector.states.len();
        let mut m = vec![vec![0u128; 3 * b]; 3 * b];
        for e in &sector.edges {
            for r in 0..3 {
                m[3 * e.from + r][3 * e.to + (r + e.h0 as usize) % 3] += 1;
            }
        }
        let p = mat_pow(&m, n)?;
        for a in 0..b {
            total = total.checked_add(p[3 * a][3 * a + target]).ok_or_else(overflow)?;
        }
    }
    Ok(BigCount::from(total))
}

/// Proper 3-colourings of the faces of the n x n torus.
pub fn count_three_colorings(n: usize) -> Result<BigCount> {
    check_torus(n, 10, WorkBudget::DEFAULT, "colouring transfer trace")?;
    let rings: Vec<Vec<u8>> = (0..3usize.pow(n as u32))
        .map(|mut x| {
            (0..n)
                .map(|_| {
                    let c = (x % 3) as u8;
                    x /= 3;
                    c
                })
                .collect::<Vec<u8>>()
        })
        .filter(|r| (0..n).all(|j| r[j] != r[(j + 1) % n]))
        .collect();
    let m: Vec<Vec<u128>> = rings
        .iter()
        .map(|a| {
            rings
                .iter()
                .map(|b| a.iter().zip(b).all(|(x, y)| x != y) as u128)
                .collect()
        })
        .collect();
    Ok(BigCount::from(trace_pow(&m, n)?))
}

/// Both forms of the ice/colouring correspondence at one size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColoringCheck {
    pub n: usize,
    pub ice: BigCount,
    pub colorings: BigCount,
    pub flat_ice: BigCount,
}

impl ColoringCheck {
    /// `colourings == 3 * all ice states`.
    pub fn plain_identity(&self) -> bool {
        self.colorings == &self.ice * 3u32
    }

    /// `colourings == 3 * ice states with flux divisible by 3`.
    pub fn flat_identity(&self) -> bool {
        self.colorings == &self.flat_ice * 3u32
    }
}

pub fn coloring_check(n: usize) -> Result<ColoringCheck> {
    Ok(ColoringCheck {
        n,
        ice: count_ice_states(n)?,
        colorings: count_three_colorings(n)?,
        flat_ice: count_ice_states_mod3_flat(n)?,
    })
}

/// Dominant eigenvalue of the ice transfer in the zero-polarization sector.
pub fn ice_eigenvalue(n: usize) -> Result<Eigen> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::Domain(format!(
            "ice row width must be even and at least 2, got {n}"
        )));
    }
    if n > 20 {
        return Err(Error::Budget {
            what: "ice transfer width",
            projected: n as u64,
            budget: 20,
        });
    }
    let sector = IceSector::new(n, n as u32 / 2);
    power_iterate(n, vec![1.0; sector.states.len()], 1.0, |v| sector.apply(v))
}

/// Entropy constant from dominant eigenvalues.
///
/// Hard models: `Lambda(n+1)/Lambda(n)`, which converges exponentially for free
/// boundaries. Ice: `ln Lambda(n) / n` on even widths, Richardson order 2 in `1/n^2`.
pub fn entropy_constant(model: EntropyModel, n_max: usize) -> Result<EstimateReport> {
    if n_max < 8 {
        return Err(Error::TooShort { needed: 8, got: n_max });
    }
    match model {
        EntropyModel::Hard(m) => {
            let eig: Vec<Eigen> = (1..=n_max)
                .into_par_iter()
                .map(|w| hard_eigenvalue(m, w))
                .collect::<Result<_>>()?;
            let raw: Vec<(f64, f64)> = eig
                .iter()
                .map(|e| (e.width as f64, e.value.powf(1.0 / e.width as f64)))
                .collect();
            let accelerated: Vec<f64> = eig.windows(2).map(|w| w[1].value / w[0].value).collect();
            Ok(EstimateReport {
                quantity: m.name().into(),
                method: "ratio of dominant row-transfer eigenvalues Lambda(n+1)/Lambda(n)".into(),
                value: *accelerated.last().unwrap(),
                raw,
                error_proxy: spread(&accelerated),
                accelerated,
                target: Some(m.target()),
                notes: vec![format!("power iteration tolerance {TOLERANCE:e}")],
            })
        }
        EntropyModel::Ice => {
            let eig: Vec<Eigen> = (1..=n_max / 2)
                .into_par_iter()
                .map(|h| ice_eigenvalue(2 * h))
                .collect::<Result<_>>()?;
            let logs: Vec<(f64, f64)> = eig
                .iter()
                .map(|e| (e.width as f64, e.value.ln() / e.width as f64))
                .collect();
            let accelerated: Vec<f64> = richardson_in(&logs, 2, |n| 1.0 / (n * n))?
                .into_iter()
                .map(f64::exp)
                .collect();
            Ok(EstimateReport {
                quantity: "square ice".into(),
                method: "ln Lambda(n)/n over even torus widths, Richardson order 2 in 1/n^2".into(),
                value: *accelerated.last().unwrap(),
                raw: logs.iter().map(|&(n, l)| (n, l.exp())).collect(),
                error_proxy: spread(&accelerated),
                accelerated,
                target: Some(ICE_ENTROPY),
                notes: vec!["raw values are Lambda(n)^(1/n), asymptotic to theta(n)^(1/N)".into()],
            })
        }
    }
}

/// Integer coefficients of the hard-hexagon minimal polynomial, by even power
/// from 24 down to 0.
pub const HEXAGON_MINPOLY: [(u32, &str); 12] = [
    (24, "25937424601"),
    (22, "2013290651222784"),
    (20, "2505062311720673792"),
    (18, "797726698866658379776"),
    (16, "7449488310131083100160"),
    (14, "2958015038376958230528"),
    (12, "-72405670285649161617408"),
    (10, "107155448150443388043264"),
    (8, "-71220809441400405884928"),
    (6, "-73347491183630103871488"),
    (4, "97143135277377575190528"),
    (0, "-32751691810479015985152"),
];

fn parse_decimal(x: &str) -> Result<BigRational> {
    let bad = || Error::Domain(format!("not a decimal number: {x:?}"));
    let t = x.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let v = BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
    Ok(if neg { -v } else { v })
}

/// `|P(x)| / sum |a_i| x^i` for the hexagon polynomial, evaluated exactly.
pub fn hexagon_minpoly_residual(x: &str) -> Result<f64> {
    hexagon_residual_exact(&parse_decimal(x)?)
}

pub fn hexagon_minpoly_residual_f64(x: f64) -> Result<f64> {
    let r = BigRational::from_float(x).ok_or_else(|| Error::Domain(format!("non-finite argument {x}")))?;
    hexagon_residual_exact(&r)
}

fn hexagon_residual_exact(x: &BigRational) -> Result<f64> {
    if !x.is_positive() {
        return Err(Error::Domain("argument must be positive".into()));
    }
    let mut value = BigRational::zero();
    let mut scale = BigRational::zero();
    for (p, c) in HEXAGON_MINPOLY {
        let c: BigInt = c.parse().expect("coefficient literal");
        let term = BigRational::from_integer(c) * num_traits::pow(x.clone(), p as usize);
        scale += term.abs();
        value += term;
    }
    (value.abs() / scale)
        .to_f64()
        .ok_or_else(|| Error::Consistency("residual not representable".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use HardModel::*;

    fn brute_hard(model: HardModel, n: usize) -> u64 {
        let mut total = 0;
        for bits in 0u32..1 << (n * n) {
            let at = |r: usize, c: usize| bits >> (r * n + c) & 1 == 1;
            let ok = (0..n).all(|r| {
                (0..n).all(|c| {
                    if !at(r, c) {
                        return true;
                    }
                    let mut nb = vec![(r, c + 1), (r + 1, c)];
                    match model {
                        HardSquare => {}
                        HardHexagon => nb.push((r + 1, c + 1)),
                        King => {
                            nb.push((r + 1, c + 1));
                            if c > 0 {
                                nb.push((r + 1, c - 1));
                            }
                        }
                    }
                    nb.into_iter().all(|(a, b)| a >= n || b >= n || !at(a, b))
                })
            });
            total += ok as u64;
        }
        total
    }

    /// Orientation scan over the 2N bonds of the torus (a multigraph at n = 2).
    fn brute_ice(n: usize) -> u64 {
        let sites = n * n;
        let mut bonds = Vec::new();
        for r in 0..n {
            for c in 0..n {
                bonds.push((r * n + c, r * n + (c + 1) % n));
                bonds.push((r * n + c, ((r + 1) % n) * n + c));
            }
        }
        let mut total = 0;
        for bits in 0u64..1 << bonds.len() {
            let mut out = vec![0u8; sites];
            for (k, &(a, b)) in bonds.iter().enumerate() {
                out[if bits >> k & 1 == 1 { a } else { b }] += 1;
            }
            total += out.iter().all(|&o| o == 2) as u64;
        }
        total
    }

    fn brute_colorings(n: usize) -> u64 {
        let mut total = 0;
        let mut col = vec![0u8; n * n];
        for mut x in 0..3u64.pow((n * n) as u32) {
            for c in col.iter_mut() {
                *c = (x % 3) as u8;
                x /= 3;
            }
            let ok = (0..n).all(|r| {
                (0..n)
                    .all(|c| col[r * n + c] != col[r * n + (c + 1) % n] && col[r * n + c] != col[((r + 1) % n) * n + c])
            });
            total += ok as u64;
        }
        total
    }

    fn u(x: BigCount) -> u64 {
        x.to_u64().unwrap()
    }

    #[test]
    fn small_hard_values() {
        assert_eq!(u(count_hard_configs(HardSquare, 1).unwrap()), 2);
        assert_eq!(u(count_hard_configs(HardSquare, 2).unwrap()), 7);
        assert_eq!(u(count_hard_configs(HardHexagon, 2).unwrap()), 6);
        assert_eq!(u(count_hard_configs(King, 2).unwrap()), 5);
    }

    #[test]
    fn hard_transfer_matches_brute_force() {
        for model in [HardSquare, HardHexagon, King] {
            for n in 1..=4 {
                assert_eq!(
                    u(count_hard_configs(model, n).unwrap()),
                    brute_hard(model, n),
                    "{model:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn hard_counts_are_nested() {
        for n in 2..=10 {
            let s = count_hard_configs(HardSquare, n).unwrap();
            let h = count_hard_configs(HardHexagon, n).unwrap();
            let k = count_hard_configs(King, n).unwrap();
            assert!(s > h && h > k, "n={n}");
        }
    }

    #[test]
    fn ice_matches_orientation_scan() {
        for n in 2..=3 {
            assert_eq!(u(count_ice_states(n).unwrap()), brute_ice(n), "n={n}");
        }
    }

    #[test]
    fn colorings_match_brute_force() {
        for n in 2..=4 {
            assert_eq!(u(count_three_colorings(n).unwrap()), brute_colorings(n), "n={n}");
        }
    }

    #[test]
    fn flat_ice_gives_colorings() {
        for n in 2..=7 {
            let c = coloring_check(n).unwrap();
            assert!(c.flat_identity(), "n={n}: {c:?}");
        }
    }

    #[test]
    fn eigenvalue_matches_counts() {
        // Lambda(w)^rows dominates the count on a rows x w strip.
        let e = hard_eigenvalue(HardSquare, 6).unwrap();
        let a = count_hard_rect(HardSquare, 41, 6).unwrap();
        let b = count_hard_rect(HardSquare, 40, 6).unwrap();
        let ratio = crate::series::big_to_f64(&a) / crate::series::big_to_f64(&b);
        assert!((ratio - e.value).abs() < 1e-10 * e.value);
        let i = ice_eigenvalue(4).unwrap();
        assert!(i.value > 1.0);
    }

    #[test]
    fn hexagon_polynomial() {
        assert!(hexagon_minpoly_residual("1.395485972479302735").unwrap() < 1e-15);
        let at_one: BigInt = HEXAGON_MINPOLY.iter().map(|(_, c)| c.parse::<BigInt>().unwrap()).sum();
        assert!(!at_one.is_zero());
        assert!(hexagon_minpoly_residual("1").unwrap() > 1e-3);
        assert!(hexagon_minpoly_residual("abc").is_err());
        assert!(hexagon_minpoly_residual("-1.3").is_err());
    }

    #[test]
    fn short_inputs_rejected() {
        assert!(matches!(
            entropy_constant(EntropyModel::Ice, 6),
            Err(Error::TooShort { .. })
        ));
        assert!(count_ice_states(1).is_err());
    }
}
