//! Even subgraphs ("even polygonal drawings") of the periodic hypercubic
//! lattice, and the free-energy series coefficients they determine.
//!
//! Two counting routes:
//!
//! * [`Method::CycleSpace`] walks the whole cycle space in Gray-code order.
//!   Exponential in `bonds - sites + 1`, so only for small tori.
//! * [`Method::TrailSearch`] enumerates connected even subgraphs as closed
//!   trails whose lowest-index bond is the starting bond, deduplicated per
//!   root, then combines vertex-disjoint components. Cost grows with the
//!   number of short closed trails, not with the lattice volume.
//!
//! On a torus of side `n`, straight cycles that wind around have length `n`.
//! Counts for `r >= n` therefore differ from the infinite-lattice polynomials,
//! and [`DrawingCensus::thermodynamic`] records whether `n > r_max`.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, WorkBudget};
use crate::lattice::{Boundary, Lattice, LatticeSpec};
use crate::series::{BigCount, Provenance, SeriesTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Cycle space when its dimension is at most 24, trail search otherwise.
    Auto,
    CycleSpace,
    TrailSearch,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DrawingCensus {
    pub spec: LatticeSpec,
    pub max_bonds: usize,
    /// r -> B(r), for 1 <= r <= max_bonds.
    pub counts: SeriesTable,
    /// `side > max_bonds`: no winding cycle fits in the counted range.
    pub thermodynamic: bool,
}

impl DrawingCensus {
    pub fn sites(&self) -> usize {
        self.spec.site_count()
    }
}

fn check_spec(spec: &LatticeSpec) -> Result<Lattice> {
    if spec.boundary != Boundary::Torus {
        return Err(Error::Domain("even drawings are counted on the torus".into()));
    }
    Lattice::new(*spec)
}

pub fn count_even_drawings(spec: &LatticeSpec, r_max: usize) -> Result<DrawingCensus> {
    count_even_drawings_with(spec, r_max, Method::Auto, WorkBudget::DEFAULT)
}

pub fn count_even_drawings_with(
    spec: &LatticeSpec,
    r_max: usize,
    method: Method,
    budget: WorkBudget,
) -> Result<DrawingCensus> {
    let lattice = check_spec(spec)?;
    let cyclomatic = lattice.bonds().len() + 1 - lattice.site_count();
    let method = match method {
        Method::Auto if cyclomatic <= 24 => Method::CycleSpace,
        Method::Auto => Method::TrailSearch,
        m => m,
    };
    let raw = match method {
        Method::CycleSpace => {
            budget.check("cycle-space scan", 2f64.powi(cyclomatic as i32))?;
            cycle_space_weights(&lattice)
        }
        _ => {
            let deg = (2 * spec.dim) as f64;
            let projected = lattice.bonds().len() as f64 * (deg - 1.0).powi(r_max.saturating_sub(1) as i32) / 8.0;
            budget.check("even-subgraph trail search", projected)?;
            trail_search(&lattice, r_max)
        }
    };
    let mut counts = SeriesTable::new(
        Provenance::new(
            "even polygonal drawings",
            format!("torus d={} n={}", spec.dim, spec.side),
        )
        .with("max_bonds", r_max)
        .with("method", format!("{method:?}")),
    );
    for r in 1..=r_max {
        counts.insert(r as u32, BigCount::from(raw.get(r).copied().unwrap_or(0)));
    }
    Ok(DrawingCensus {
        spec: *spec,
        max_bonds: r_max,
        counts,
        thermodynamic: spec.side > r_max,
    })
}

/// Histogram of edge counts over the full cycle space.
fn cycle_space_weights(lattice: &Lattice) -> Vec<u64> {
    let bonds = lattice.bonds();
    let words = bonds.len().div_ceil(64);
    let n = lattice.site_count();
    // BFS spanning tree; each non-tree bond closes one fundamental cycle.
    let mut parent_bond = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut tree = vec![false; bonds.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &b in lattice.incident(v) {
            let w = if bonds[b].a == v { bonds[b].b } else { bonds[b].a };
            if !seen[w] {
                seen[w] = true;
                parent_bond[w] = b;
                tree[b] = true;
                queue.push_back(w);
            }
        }
    }
    let path_to_root = |mut v: usize, set: &mut Vec<u64>| {
        while parent_bond[v] != usize::MAX {
            let b = parent_bond[v];
            set[b / 64] ^= 1 << (b % 64);
            v = if bonds[b].a == v { bonds[b].b } else { bonds[b].a };
        }
    };
    let basis: Vec<Vec<u64>> = bonds
        .iter()
        .filter(|b| !tree[b.index])
        .map(|b| {
            let mut set = vec![0u64; words];
            set[b.index / 64] ^= 1 << (b.index % 64);
            path_to_root(b.a, &mut set);
            path_to_root(b.b, &mut set);
            set
        })
        .collect();
    let mut hist = vec![0u64; bonds.len() + 1];
    let mut current = vec![0u64; words];
    hist[0] += 1;
    for i in 1u64..(1u64 << basis.len()) {
        let k = i.trailing_zeros() as usize;
        for (c, b) in current.iter_mut().zip(&basis[k]) {
            *c ^= b;
        }
        hist[current.iter().map(|w| w.count_ones() as usize).sum::<usize>()] += 1;
    }
    hist
}

/// A connected even subgraph: sorted bond indices and sorted sites.
struct Component {
    bonds: Vec<u32>,
    sites: Vec<u32>,
}

struct TrailSearch<'l> {
    lattice: &'l Lattice,
    r_max: usize,
    root: usize,
    start: usize,
    dist: Vec<u8>,
    used: Vec<bool>,
    trail: Vec<u32>,
    found: HashSet<Vec<u32>>,
}

impl TrailSearch<'_> {
    fn extend(&mut self, at: usize) {
        if at == self.start {
            let mut set = self.trail.clone();
            set.sort_unstable();
            self.found.insert(set);
        }
        let left = self.r_max - self.trail.len();
        if left == 0 {
            return;
        }
        let bonds = self.lattice.bonds();
        for &b in self.lattice.incident(at) {
            if b <= self.root || self.used[b] {
                continue;
            }
            let next = if bonds[b].a == at { bonds[b].b } else { bonds[b].a };
            if self.dist[next] as usize > left - 1 {
                continue;
            }
            self.used[b] = true;
            self.trail.push(b as u32);
            self.extend(next);
            self.trail.pop();
            self.used[b] = false;
        }
    }
}

fn bfs_dist(lattice: &Lattice, from: usize, cap: usize) -> Vec<u8> {
    let mut dist = vec![u8::MAX; lattice.site_count()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        let d = dist[v];
        if d as usize >= cap {
            continue;
        }
        for &w in lattice.neighbors_flat(v) {
            if dist[w] == u8::MAX {
                dist[w] = d + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Connected even subgraphs with at most `r_max` bonds, each exactly once.
fn connected_components(lattice: &Lattice, r_max: usize) -> Vec<Component> {
    let bonds = lattice.bonds();
    let cap = (r_max / 2 + 1).min(254);
    let per_root: Vec<Vec<Vec<u32>>> = (0..bonds.len())
        .into_par_iter()
        .map(|root| {
            let bond = bonds[root];
            let mut search = TrailSearch {
                lattice,
                r_max,
                root,
                start: bond.a,
                dist: bfs_dist(lattice, bond.a, cap),
                used: vec![false; bonds.len()],
                trail: vec![root as u32],
                found: HashSet::new(),
            };
            search.used[root] = true;
            search.extend(bond.b);
            let mut sets: Vec<Vec<u32>> = search.found.into_iter().collect();
            sets.sort_unstable();
            sets
        })
        .collect();
    per_root
        .into_iter()
        .flatten()
        .map(|set| {
            let mut sites: Vec<u32> = set
                .iter()
                .flat_map(|&b| [bonds[b as usize].a as u32, bonds[b as usize].b as u32])
                .collect();
            sites.sort_unstable();
            sites.dedup();
            debug_assert!(is_even(lattice, &set));
            Component { bonds: set, sites }
        })
        .collect()
}

fn is_even(lattice: &Lattice, set: &[u32]) -> bool {
    let mut deg = vec![0u8; lattice.site_count()];
    for &b in set {
        let bond = lattice.bonds()[b as usize];
        deg[bond.a] ^= 1;
        deg[bond.b] ^= 1;
    }
    deg.iter().all(|&d| d == 0)
}

/// Count families of pairwise vertex-disjoint components by total size.
fn trail_search(lattice: &Lattice, r_max: usize) -> Vec<u64> {
    let mut comps = connected_components(lattice, r_max);
    comps.sort_by(|x, y| x.bonds.len().cmp(&y.bonds.len()).then_with(|| x.bonds.cmp(&y.bonds)));
    let sizes: Vec<usize> = comps.iter().map(|c| c.bonds.len()).collect();
    // First index whose size exceeds s.
    let upper = |s: usize| sizes.partition_point(|&x| x <= s);

    fn families(
        comps: &[Component],
        upper: &dyn Fn(usize) -> usize,
        from: usize,
        left: usize,
        total: usize,
        stamp: &mut Vec<bool>,
        hist: &mut Vec<u64>,
    ) {
        for j in from..upper(left) {
            let c = &comps[j];
            if c.sites.iter().any(|&s| stamp[s as usize]) {
                continue;
            }
            let size = c.bonds.len();
            hist[total + size] += 1;
            for &s in &c.sites {
                stamp[s as usize] = true;
            }
            families(comps, upper, j + 1, left - size, total + size, stamp, hist);
            for &s in &c.sites {
                stamp[s as usize] = false;
            }
        }
    }

    let first = upper(r_max);
    let parts: Vec<Vec<u64>> = (0..first)
        .into_par_iter()
        .map(|i| {
            let mut hist = vec![0u64; r_max + 1];
            let mut stamp = vec![false; lattice.site_count()];
            let c = &comps[i];
            let size = c.bonds.len();
            hist[size] += 1;
            for &s in &c.sites {
                stamp[s as usize] = true;
            }
            families(&comps, &upper, i + 1, r_max - size, size, &mut stamp, &mut hist);
            hist
        })
        .collect();
    let mut hist = vec![0u64; r_max + 1];
    hist[0] = 1;
    for p in parts {
        for (h, v) in hist.iter_mut().zip(p) {
            *h += v;
        }
    }
    hist
}

/// Coefficients of `(1/N) log(1 + sum_r B(r) z^r)` up to `z^r_max`, exactly.
pub fn beta_from_counts(census: &DrawingCensus) -> Result<BTreeMap<u32, BigRational>> {
    if !census.thermodynamic {
        return Err(Error::Domain(format!(
            "side {} <= max bonds {}: winding cycles contaminate the counts",
            census.spec.side, census.max_bonds
        )));
    }
    Ok(log_series(&census.counts, census.max_bonds, census.sites()))
}

/// Formal `(1/N) log(1 + P(z))` where `P` has the table's coefficients.
pub fn log_series(counts: &SeriesTable, order: usize, sites: usize) -> BTreeMap<u32, BigRational> {
    let p: Vec<BigRational> = (0..=order)
        .map(|r| {
            let v = if r == 0 { None } else { counts.get(r as u32) };
            BigRational::from_integer(v.map(|c| BigInt::from(c.clone())).unwrap_or_default())
        })
        .collect();
    // k L_k = k P_k - sum_{j<k} j L_j P_{k-j}
    let mut l = vec![BigRational::zero(); order + 1];
    for k in 1..=order {
        let mut acc = BigRational::from_integer(BigInt::from(k)) * &p[k];
        for j in 1..k {
            acc -= BigRational::from_integer(BigInt::from(j)) * &l[j] * &p[k - j];
        }
        l[k] = acc / BigRational::from_integer(BigInt::from(k));
    }
    let n = BigRational::from_integer(BigInt::from(sites));
    (1..=order).map(|k| (k as u32, &l[k] / &n)).collect()
}

/// Closed-form coefficient polynomials in the dimension for k = 4, 6, 8, 10.
pub fn beta_polynomial(dim: i64, k: u32) -> Result<BigRational> {
    let d = BigInt::from(dim);
    let base = &d * (&d - BigInt::one());
    let int = |v: i64| BigInt::from(v);
    let (num, den) = match k {
        4 => (base, 2),
        6 => (base * (int(8) * &d - int(13)), 3),
        8 => (base * (int(108) * &d * &d - int(424) * &d + int(425)), 4),
        10 => (
            int(2) * base * (int(2976) * &d * &d * &d - int(19814) * &d * &d + int(44956) * &d - int(34419)),
            15,
        ),
        _ => {
            return Err(Error::Domain(format!(
                "no closed form for k={k}; supported: 4, 6, 8, 10"
            )))
        }
    };
    Ok(BigRational::new(num, BigInt::from(den)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Adjacency;
    use num_traits::ToPrimitive;

    fn torus(dim: usize, side: usize) -> LatticeSpec {
        LatticeSpec::cubic(dim, side, Boundary::Torus)
    }

    fn counts(c: &DrawingCensus) -> Vec<u64> {
        c.counts.iter().map(|(_, v)| v.to_u64().unwrap()).collect()
    }

    /// Every subset of bonds, checked for even degree.
    fn all_subsets(spec: &LatticeSpec) -> Vec<u64> {
        let lat = Lattice::new(*spec).unwrap();
        let e = lat.bonds().len();
        assert!(e <= 24);
        let mut hist = vec![0u64; e + 1];
        for mask in 0u32..(1 << e) {
            let mut deg = vec![0u8; lat.site_count()];
            for (i, b) in lat.bonds().iter().enumerate() {
                if mask >> i & 1 == 1 {
                    deg[b.a] ^= 1;
                    deg[b.b] ^= 1;
                }
            }
            if deg.iter().all(|&d| d == 0) {
                hist[mask.count_ones() as usize] += 1;
            }
        }
        hist
    }

    #[test]
    fn cycle_space_matches_subset_scan() {
        for spec in [torus(3, 2), torus(2, 3), torus(2, 2), torus(1, 5)] {
            let lat = Lattice::new(spec).unwrap();
            let hist = cycle_space_weights(&lat);
            assert_eq!(hist[..], all_subsets(&spec)[..], "{spec:?}");
        }
    }

    #[test]
    fn trail_search_matches_cycle_space_on_small_tori() {
        for (spec, r) in [
            (torus(2, 4), 16),
            (torus(3, 2), 12),
            (torus(2, 3), 12),
            (torus(2, 5), 12),
        ] {
            let a = count_even_drawings_with(&spec, r, Method::TrailSearch, WorkBudget::DEFAULT).unwrap();
            let b = count_even_drawings_with(&spec, r, Method::CycleSpace, WorkBudget::DEFAULT).unwrap();
            assert_eq!(counts(&a), counts(&b), "{spec:?}");
        }
    }

    #[test]
    fn square_lattice_formulas() {
        let c = count_even_drawings(&torus(2, 10), 8).unwrap();
        assert!(c.thermodynamic);
        let n = 100u64;
        assert_eq!(counts(&c), vec![0, 0, 0, n, 0, 2 * n, 0, n * (n + 9) / 2]);
    }

    #[test]
    fn winding_flag() {
        let c = count_even_drawings(&torus(2, 4), 8).unwrap();
        assert!(!c.thermodynamic);
        assert!(beta_from_counts(&c).is_err());
    }

    #[test]
    fn beta_from_square_counts() {
        let c = count_even_drawings(&torus(2, 10), 8).unwrap();
        let beta = beta_from_counts(&c).unwrap();
        assert_eq!(beta[&4], BigRational::from_integer(1.into()));
        assert_eq!(beta[&8], BigRational::new(9.into(), 2.into()));
        for k in [4, 6, 8] {
            assert_eq!(beta[&k], beta_polynomial(2, k).unwrap());
        }
        for k in [1, 2, 3, 5, 7] {
            assert!(beta[&k].is_zero());
        }
    }

    #[test]
    fn beta_is_size_independent() {
        let a = beta_from_counts(&count_even_drawings(&torus(2, 10), 8).unwrap()).unwrap();
        let b = beta_from_counts(&count_even_drawings(&torus(2, 12), 8).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(beta_polynomial(2, 4).unwrap(), BigRational::from_integer(1.into()));
        assert_eq!(beta_polynomial(3, 6).unwrap(), BigRational::from_integer(22.into()));
        assert_eq!(beta_polynomial(2, 10).unwrap(), BigRational::from_integer(12.into()));
        for k in [4, 6, 8, 10] {
            assert!(beta_polynomial(1, k).unwrap().is_zero());
        }
        assert!(beta_polynomial(3, 12).is_err());
    }

    #[test]
    fn rejects_free_boundary() {
        let spec = LatticeSpec {
            dim: 2,
            side: 5,
            boundary: Boundary::Free,
            adjacency: Adjacency::SquareNN,
        };
        assert!(count_even_drawings(&spec, 4).is_err());
    }
}
