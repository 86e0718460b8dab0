//! Geometry shared by the enumerators: sites, adjacency, wraparound and bond indexing.
//!
//! Sites are stored as flat row-major integers (last coordinate fastest); the
//! coordinate tuple is the external representation. Under [`Boundary::Torus`]
//! with side 1 or 2, parallel bonds between the same pair of sites collapse to
//! a single bond and self-loops are dropped, so the result is always a simple
//! graph.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Boundary {
    Torus,
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Adjacency {
    /// Nearest neighbours on the square lattice (d = 2).
    SquareNN,
    /// Square lattice plus the (i+1, j+1) diagonal.
    Triangular,
    /// Square lattice plus both diagonals.
    King,
    /// Nearest neighbours on the d-dimensional hypercubic lattice.
    CubicNN,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeSpec {
    pub dim: usize,
    pub side: usize,
    pub boundary: Boundary,
    pub adjacency: Adjacency,
}

impl LatticeSpec {
    pub fn new(dim: usize, side: usize, boundary: Boundary, adjacency: Adjacency) -> Result<Self> {
        let spec = LatticeSpec {
            dim,
            side,
            boundary,
            adjacency,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn square(side: usize, boundary: Boundary) -> Self {
        LatticeSpec {
            dim: 2,
            side,
            boundary,
            adjacency: Adjacency::SquareNN,
        }
    }

    pub fn cubic(dim: usize, side: usize, boundary: Boundary) -> Self {
        LatticeSpec {
            dim,
            side,
            boundary,
            adjacency: Adjacency::CubicNN,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.side == 0 {
            return Err(Error::Domain(format!(
                "dimension and side must be positive (dim={}, side={})",
                self.dim, self.side
            )));
        }
        if matches!(
            self.adjacency,
            Adjacency::SquareNN | Adjacency::Triangular | Adjacency::King
        ) && self.dim != 2
        {
            return Err(Error::Domain(format!(
                "{:?} adjacency is two-dimensional, got dim={}",
                self.adjacency, self.dim
            )));
        }
        let sites = (self.side as f64).powi(self.dim as i32);
        if sites > (1u64 << 32) as f64 {
            return Err(Error::Domain(format!("lattice too large: {sites} sites")));
        }
        Ok(())
    }

    pub fn site_count(&self) -> usize {
        self.side.pow(self.dim as u32)
    }

    /// Neighbour offsets in lexicographic order.
    pub fn offsets(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = match self.adjacency {
            Adjacency::SquareNN | Adjacency::CubicNN => (0..self.dim)
                .flat_map(|axis| {
                    [1i64, -1].into_iter().map(move |s| {
                        let mut v = vec![0i64; self.dim];
                        v[axis] = s;
                        v
                    })
                })
                .collect(),
            Adjacency::Triangular => vec![
                vec![1, 0],
                vec![-1, 0],
                vec![0, 1],
                vec![0, -1],
                vec![1, 1],
                vec![-1, -1],
            ],
            Adjacency::King => {
                let mut v = Vec::new();
                for a in -1i64..=1 {
                    for b in -1i64..=1 {
                        if a != 0 || b != 0 {
                            v.push(vec![a, b]);
                        }
                    }
                }
                v
            }
        };
        out.sort();
        out
    }

    pub fn flat(&self, coords: &[usize]) -> Result<usize> {
        if coords.len() != self.dim || coords.iter().any(|&c| c >= self.side) {
            return Err(Error::Domain(format!(
                "site {coords:?} out of range for dim={} side={}",
                self.dim, self.side
            )));
        }
        Ok(coords.iter().fold(0, |acc, &c| acc * self.side + c))
    }

    pub fn coords(&self, mut flat: usize) -> Vec<usize> {
        let mut c = vec![0; self.dim];
        for slot in c.iter_mut().rev() {
            *slot = flat % self.side;
            flat /= self.side;
        }
        c
    }

    fn step(&self, coords: &[usize], offset: &[i64]) -> Option<Vec<usize>> {
        let n = self.side as i64;
        let mut out = Vec::with_capacity(self.dim);
        for (&c, &o) in coords.iter().zip(offset) {
            let t = c as i64 + o;
            match self.boundary {
                Boundary::Torus => out.push(t.rem_euclid(n) as usize),
                Boundary::Free if (0..n).contains(&t) => out.push(t as usize),
                Boundary::Free => return None,
            }
        }
        Some(out)
    }
}

/// A site given by its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Site(pub Vec<usize>);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Bond {
    /// Flat endpoints with `a < b`.
    pub a: usize,
    pub b: usize,
    pub index: usize,
}

/// A realized lattice: neighbour lists and bond table, immutable after construction.
#[derive(Debug, Clone)]
pub struct Lattice {
    spec: LatticeSpec,
    neighbors: Vec<Vec<usize>>,
    bonds: Vec<Bond>,
    bond_lookup: HashMap<(usize, usize), usize>,
    incident: Vec<Vec<usize>>,
}

impl Lattice {
    pub fn new(spec: LatticeSpec) -> Result<Self> {
        spec.validate()?;
        let offsets = spec.offsets();
        let count = spec.site_count();
        let mut neighbors = Vec::with_capacity(count);
        for s in 0..count {
            let c = spec.coords(s);
            let mut list: Vec<usize> = Vec::with_capacity(offsets.len());
            for off in &offsets {
                if let Some(t) = spec.step(&c, off) {
                    let t = spec.flat(&t)?;
                    if t != s && !list.contains(&t) {
                        list.push(t);
                    }
                }
            }
            neighbors.push(list);
        }

        let mut bonds = Vec::new();
        let mut bond_lookup = HashMap::new();
        let mut incident = vec![Vec::new(); count];
        for (s, list) in neighbors.iter().enumerate() {
            for &t in list {
                let key = (s.min(t), s.max(t));
                if let std::collections::hash_map::Entry::Vacant(e) = bond_lookup.entry(key) {
                    let index = bonds.len();
                    e.insert(index);
                    bonds.push(Bond {
                        a: key.0,
                        b: key.1,
                        index,
                    });
                    incident[key.0].push(index);
                    incident[key.1].push(index);
                }
            }
        }
        Ok(Lattice {
            spec,
            neighbors,
            bonds,
            bond_lookup,
            incident,
        })
    }

    pub fn spec(&self) -> &LatticeSpec {
        &self.spec
    }

    pub fn site_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn neighbors_flat(&self, site: usize) -> &[usize] {
        &self.neighbors[site]
    }

    pub fn bonds(&self) -> &[Bond] {
        &self.bonds
    }

    /// Bond indices incident to a flat site.
    pub fn incident(&self, site: usize) -> &[usize] {
        &self.incident[site]
    }

    pub fn bond_index(&self, a: usize, b: usize) -> Option<usize> {
        self.bond_lookup.get(&(a.min(b), a.max(b))).copied()
    }
}

/// All sites adjacent to `site`, in lexicographic offset order, wrapped under torus boundary.
pub fn neighbors(spec: &LatticeSpec, site: &Site) -> Result<Vec<Site>> {
    spec.validate()?;
    let s = spec.flat(&site.0)?;
    let mut out: Vec<Site> = Vec::new();
    for off in spec.offsets() {
        if let Some(t) = spec.step(&site.0, &off) {
            if spec.flat(&t)? != s && !out.iter().any(|o| o.0 == t) {
                out.push(Site(t));
            }
        }
    }
    Ok(out)
}

/// Every adjacent pair exactly once, with a stable index.
pub fn bonds(spec: &LatticeSpec) -> Result<Vec<Bond>> {
    Ok(Lattice::new(*spec)?.bonds)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn site(c: &[usize]) -> Site {
        Site(c.to_vec())
    }

    fn all_specs(max_side: usize) -> Vec<LatticeSpec> {
        let mut out = Vec::new();
        for side in 1..=max_side {
            for boundary in [Boundary::Torus, Boundary::Free] {
                for adjacency in [Adjacency::SquareNN, Adjacency::Triangular, Adjacency::King] {
                    out.push(LatticeSpec {
                        dim: 2,
                        side,
                        boundary,
                        adjacency,
                    });
                }
                for dim in 1..=3 {
                    if side <= 4 || dim < 3 {
                        out.push(LatticeSpec::cubic(dim, side, boundary));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn torus_corner_wraps() {
        let spec = LatticeSpec::square(4, Boundary::Torus);
        let mut got = neighbors(&spec, &site(&[0, 0])).unwrap();
        got.sort();
        let mut want = vec![site(&[1, 0]), site(&[3, 0]), site(&[0, 1]), site(&[0, 3])];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn free_corner_has_two_neighbors() {
        let spec = LatticeSpec::square(4, Boundary::Free);
        let mut got = neighbors(&spec, &site(&[0, 0])).unwrap();
        got.sort();
        assert_eq!(got, vec![site(&[0, 1]), site(&[1, 0])]);
    }

    #[test]
    fn free_king_bulk_has_eight() {
        let spec = LatticeSpec::new(2, 4, Boundary::Free, Adjacency::King).unwrap();
        assert_eq!(neighbors(&spec, &site(&[1, 1])).unwrap().len(), 8);
    }

    #[test]
    fn triangular_bulk_has_six_including_main_diagonal() {
        let spec = LatticeSpec::new(2, 5, Boundary::Free, Adjacency::Triangular).unwrap();
        let n = neighbors(&spec, &site(&[2, 2])).unwrap();
        assert_eq!(n.len(), 6);
        assert!(n.contains(&site(&[3, 3])));
        assert!(n.contains(&site(&[1, 1])));
        assert!(!n.contains(&site(&[1, 3])));
    }

    #[test]
    fn out_of_range_site_is_rejected() {
        let spec = LatticeSpec::square(4, Boundary::Free);
        assert!(matches!(neighbors(&spec, &site(&[4, 0])), Err(Error::Domain(_))));
        assert!(matches!(neighbors(&spec, &site(&[0])), Err(Error::Domain(_))));
    }

    #[test]
    fn bond_counts() {
        assert_eq!(bonds(&LatticeSpec::square(4, Boundary::Torus)).unwrap().len(), 32);
        assert_eq!(bonds(&LatticeSpec::cubic(3, 2, Boundary::Torus)).unwrap().len(), 12);
        assert_eq!(bonds(&LatticeSpec::cubic(3, 3, Boundary::Torus)).unwrap().len(), 81);
        assert_eq!(bonds(&LatticeSpec::square(4, Boundary::Free)).unwrap().len(), 24);
    }

    #[test]
    fn neighbor_relation_is_symmetric() {
        for spec in all_specs(6) {
            let lat = Lattice::new(spec).unwrap();
            for s in 0..lat.site_count() {
                for &t in lat.neighbors_flat(s) {
                    assert!(lat.neighbors_flat(t).contains(&s), "{spec:?} {s} {t}");
                }
            }
        }
    }

    #[test]
    fn torus_degree_is_constant() {
        for spec in all_specs(6) {
            if spec.boundary != Boundary::Torus || spec.side < 3 {
                continue;
            }
            let want = match spec.adjacency {
                Adjacency::SquareNN | Adjacency::CubicNN => 2 * spec.dim,
                Adjacency::Triangular => 6,
                Adjacency::King => 8,
            };
            let lat = Lattice::new(spec).unwrap();
            for s in 0..lat.site_count() {
                assert_eq!(lat.neighbors_flat(s).len(), want, "{spec:?}");
            }
            assert_eq!(lat.bonds().len(), want * lat.site_count() / 2);
        }
    }

    #[test]
    fn bond_index_round_trips() {
        for spec in all_specs(5) {
            let lat = Lattice::new(spec).unwrap();
            for (i, b) in lat.bonds().iter().enumerate() {
                assert_eq!(b.index, i);
                assert_eq!(lat.bond_index(b.b, b.a), Some(i));
                assert!(lat.neighbors_flat(b.a).contains(&b.b));
            }
        }
    }
}
