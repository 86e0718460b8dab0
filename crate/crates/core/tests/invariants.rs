//! Randomized checks of structural invariants.

use proptest::prelude::*;

use latconst::coverings;
use latconst::entropy::{self, HardModel};
use latconst::lattice::{neighbors, Adjacency, Boundary, Lattice, LatticeSpec, Site};
use latconst::percolation::{self, SiteConfig};
use latconst::walks;

fn spec_strategy() -> impl Strategy<Value = LatticeSpec> {
    let planar = (
        prop::sample::select(vec![Adjacency::SquareNN, Adjacency::Triangular, Adjacency::King]),
        3usize..=6,
    )
        .prop_map(|(adjacency, side)| (2, side, adjacency));
    let cubic = (1usize..=3, 3usize..=5).prop_map(|(dim, side)| (dim, side, Adjacency::CubicNN));
    (
        prop_oneof![planar, cubic],
        prop::sample::select(vec![Boundary::Torus, Boundary::Free]),
    )
        .prop_map(|((dim, side, adjacency), boundary)| LatticeSpec {
            dim,
            side,
            boundary,
            adjacency,
        })
}

fn matrix_strategy() -> impl Strategy<Value = (usize, Vec<u8>)> {
    (1usize..=9).prop_flat_map(|n| (Just(n), prop::collection::vec(0u8..=1, n * n)))
}

fn site_stats(n: usize, cells: &[u8]) -> percolation::ClusterStats {
    let rows: Vec<&[u8]> = cells.chunks(n).collect();
    percolation::label_clusters_site(&SiteConfig::from_matrix(&rows).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn neighbours_are_mutual_and_bonds_round_trip(spec in spec_strategy()) {
        let lat = Lattice::new(spec).unwrap();
        for s in 0..lat.site_count() {
            let site = Site(spec.coords(s));
            for t in neighbors(&spec, &site).unwrap() {
                prop_assert!(neighbors(&spec, &t).unwrap().contains(&site));
            }
        }
        for (i, b) in lat.bonds().iter().enumerate() {
            prop_assert_eq!(b.index, i);
            prop_assert_eq!(lat.bond_index(b.a, b.b), Some(i));
            prop_assert_eq!(lat.bond_index(b.b, b.a), Some(i));
        }
        if spec.boundary == Boundary::Torus {
            let degree = lat.neighbors_flat(0).len();
            prop_assert!((0..lat.site_count()).all(|s| lat.neighbors_flat(s).len() == degree));
        }
    }

    #[test]
    fn site_clusters_survive_transpose_and_reflection((n, cells) in matrix_strategy()) {
        let base = site_stats(n, &cells);
        let transposed: Vec<u8> = (0..n * n).map(|k| cells[(k % n) * n + k / n]).collect();
        let mirrored: Vec<u8> = (0..n * n).map(|k| cells[(k / n) * n + (n - 1 - k % n)]).collect();
        prop_assert_eq!(&site_stats(n, &transposed), &base);
        prop_assert_eq!(&site_stats(n, &mirrored), &base);
        let occupied = cells.iter().filter(|&&c| c == 1).count();
        prop_assert_eq!(base.cluster_sizes.iter().sum::<usize>(), occupied);
        prop_assert_eq!(base.total_clusters, base.cluster_sizes.len());
    }

    #[test]
    fn adding_a_site_changes_cluster_count_by_at_most_three((n, cells) in matrix_strategy(), pick in any::<prop::sample::Index>()) {
        let empty: Vec<usize> = (0..n * n).filter(|&k| cells[k] == 0).collect();
        prop_assume!(!empty.is_empty());
        let mut more = cells.clone();
        more[empty[pick.index(empty.len())]] = 1;
        let before = site_stats(n, &cells).total_clusters as i64;
        let after = site_stats(n, &more).total_clusters as i64;
        prop_assert!((-3..=1).contains(&(after - before)));
    }

    #[test]
    fn profile_dp_is_symmetric_and_nested(rows in 1usize..=7, cols in 1usize..=7) {
        let f = coverings::count_dimer_rect(rows, cols).unwrap();
        prop_assert_eq!(&f, &coverings::count_dimer_rect(cols, rows).unwrap());
        if rows * cols % 2 == 1 {
            prop_assert_eq!(f.clone(), 0u32.into());
        }
        let n = rows.max(cols);
        prop_assert!(coverings::count_monomer_dimer(n).unwrap() >= coverings::count_dimer_coverings_2d(n).unwrap());
    }

    #[test]
    fn hard_models_are_nested(rows in 1usize..=8, cols in 1usize..=8) {
        let sq = entropy::count_hard_rect(HardModel::HardSquare, rows, cols).unwrap();
        let hex = entropy::count_hard_rect(HardModel::HardHexagon, rows, cols).unwrap();
        let king = entropy::count_hard_rect(HardModel::King, rows, cols).unwrap();
        prop_assert!(sq >= hex && hex >= king);
        prop_assert_eq!(sq, entropy::count_hard_rect(HardModel::HardSquare, cols, rows).unwrap());
        prop_assert_eq!(king, entropy::count_hard_rect(HardModel::King, cols, rows).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn walk_counts_are_submultiplicative(dim in 2usize..=4, m in 1u32..=4, k in 1u32..=4) {
        let w = walks::enumerate_saw(dim, 8).unwrap();
        let c = |n: u32| w.counts.get(n).unwrap().clone();
        prop_assert!(c(m + k) <= c(m) * c(k));
        let n = m + k;
        prop_assert!(&c(n) % (2 * dim as u32) == 0u32.into());
        prop_assert!(w.sq_disp_sums.get(n).unwrap() <= &(c(n) * n * n));
    }
}
