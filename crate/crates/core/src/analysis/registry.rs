use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegistryKind {
    /// Known in closed form; value printed to the precision available.
    Exact,
    /// Numerical estimate or conjecture.
    Estimate,
    /// Rigorous interval `(lower, upper)`.
    BoundPair,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegistryEntry {
    pub key: &'static str,
    /// Decimal text exactly as published; for bound pairs, `"lower,upper"`.
    pub printed: &'static str,
    pub kind: RegistryKind,
    pub source: &'static str,
    pub description: &'static str,
}

impl RegistryEntry {
    pub fn value(&self) -> f64 {
        self.printed.split(',').next().unwrap().parse().unwrap()
    }

    /// `(lower, upper)` for bound pairs.
    pub fn bounds(&self) -> Option<(f64, f64)> {
        if self.kind != RegistryKind::BoundPair {
            return None;
        }
        let mut it = self.printed.split(',').map(|s| s.trim().parse::<f64>().unwrap());
        Some((it.next()?, it.next()?))
    }
}

macro_rules! entry {
    ($key:expr, $printed:expr, $kind:ident, $source:expr, $desc:expr) => {
        RegistryEntry {
            key: $key,
            printed: $printed,
            kind: RegistryKind::$kind,
            source: $source,
            description: $desc,
        }
    };
}

const SAW: &str = "self-avoiding walks";
const ANIMALS: &str = "polyominoes";
const ISING: &str = "Ising high-temperature series";
const DIMERS: &str = "monomers and dimers";
const ICE: &str = "ice models";
const HARD: &str = "hard squares and hexagons";
const PERC: &str = "percolation";

static ENTRIES: &[RegistryEntry] = &[
    entry!(
        "mu_d2_bounds",
        "2.62002,2.6939",
        BoundPair,
        SAW,
        "connective constant, d=2"
    ),
    entry!("mu_d2", "2.6381585", Estimate, SAW, "connective constant, d=2"),
    entry!(
        "mu_d3_bounds",
        "4.572140,4.7476",
        BoundPair,
        SAW,
        "connective constant, d=3"
    ),
    entry!("mu_d3", "4.683907", Estimate, SAW, "connective constant, d=3"),
    entry!(
        "mu_d4_bounds",
        "6.742945,6.8179",
        BoundPair,
        SAW,
        "connective constant, d=4"
    ),
    entry!("mu_d4", "6.7720", Estimate, SAW, "connective constant, d=4"),
    entry!(
        "mu_d5_bounds",
        "8.828529,8.8602",
        BoundPair,
        SAW,
        "connective constant, d=5"
    ),
    entry!("mu_d5", "8.8386", Estimate, SAW, "connective constant, d=5"),
    entry!(
        "mu_d6_bounds",
        "10.874038,10.8886",
        BoundPair,
        SAW,
        "connective constant, d=6"
    ),
    entry!("mu_d6", "10.8788", Estimate, SAW, "connective constant, d=6"),
    entry!(
        "gamma_d2",
        "1.34375",
        Estimate,
        SAW,
        "walk-count exponent, d=2 (conjectured 43/32)"
    ),
    entry!("gamma_d3", "1.1575", Estimate, SAW, "walk-count exponent, d=3"),
    entry!(
        "nu_d2",
        "0.75",
        Estimate,
        SAW,
        "displacement exponent, d=2 (conjectured 3/4)"
    ),
    entry!("nu_d3", "0.5877", Estimate, SAW, "displacement exponent, d=3"),
    entry!(
        "alpha_bounds",
        "3.791,4.649551",
        BoundPair,
        ANIMALS,
        "polyomino growth constant"
    ),
    entry!("alpha", "4.06265", Estimate, ANIMALS, "polyomino growth constant"),
    entry!(
        "animal_amplitude",
        "0.316",
        Estimate,
        ANIMALS,
        "amplitude C in A(n) ~ C alpha^n / n"
    ),
    entry!(
        "ising_zc_d2",
        "0.414213562373095049",
        Exact,
        ISING,
        "radius of convergence, d=2 (sqrt 2 - 1)"
    ),
    entry!("ising_zc_d3", "0.218094", Estimate, ISING, "radius of convergence, d=3"),
    entry!("ising_zc_d4", "0.14855", Estimate, ISING, "radius of convergence, d=4"),
    entry!("ising_zc_d5", "0.1134", Estimate, ISING, "radius of convergence, d=5"),
    entry!("ising_zc_d6", "0.0920", Estimate, ISING, "radius of convergence, d=6"),
    entry!("ising_zc_d7", "0.0775", Estimate, ISING, "radius of convergence, d=7"),
    entry!(
        "susceptibility_amplitude_d2",
        "0.9625817322",
        Exact,
        ISING,
        "critical susceptibility amplitude, d=2"
    ),
    entry!("kappa", "1.940215351", Estimate, DIMERS, "monomer-dimer constant"),
    entry!(
        "dimer_2d",
        "1.79162281206959342",
        Exact,
        DIMERS,
        "exp(2G/pi), square-lattice dimer constant"
    ),
    entry!(
        "lambda_bounds",
        "0.44007584,0.463107",
        BoundPair,
        DIMERS,
        "cubic-lattice dimer entropy"
    ),
    entry!("lambda", "0.4466", Estimate, DIMERS, "cubic-lattice dimer entropy"),
    entry!(
        "square_ice",
        "1.539600717839002039",
        Exact,
        ICE,
        "residual entropy of square ice, (4/3)^(3/2)"
    ),
    entry!(
        "ice_w_bounds",
        "1.5067,1.5070",
        BoundPair,
        ICE,
        "residual entropy of Ice-Ih / Ice-Ic"
    ),
    entry!(
        "hard_square",
        "1.50304808247533226",
        Estimate,
        HARD,
        "hard square entropy constant"
    ),
    entry!(
        "hard_hexagon",
        "1.395485972479302735",
        Exact,
        HARD,
        "hard hexagon entropy constant"
    ),
    entry!(
        "king",
        "1.342643951124",
        Estimate,
        HARD,
        "non-attacking kings entropy constant"
    ),
    entry!(
        "hexagon_zc",
        "11.09016994374947424",
        Exact,
        HARD,
        "hard hexagon critical activity (11+5 sqrt 5)/2"
    ),
    entry!("square_zc", "3.7962", Estimate, HARD, "hard square critical activity"),
    entry!(
        "ks_half",
        "0.065770",
        Estimate,
        PERC,
        "site cluster density at p=1/2, square"
    ),
    entry!(
        "kb_half",
        "0.09807621135331594",
        Exact,
        PERC,
        "bond cluster density at p=1/2, square, (3 sqrt 3 - 5)/2"
    ),
    entry!(
        "pc_site_square_bounds",
        "0.556,0.679492",
        BoundPair,
        PERC,
        "site threshold, square"
    ),
    entry!("pc_site_square", "0.5927460", Estimate, PERC, "site threshold, square"),
    entry!(
        "ks_pc",
        "0.0275981",
        Estimate,
        PERC,
        "site cluster density at p_c, square"
    ),
    entry!("pc_bond_square", "0.5", Exact, PERC, "bond threshold, square"),
    entry!(
        "pc_bond_triangular",
        "0.347296355333860698",
        Exact,
        PERC,
        "bond threshold, triangular, 2 sin(pi/18)"
    ),
    entry!(
        "kb_triangular",
        "0.1118442752845497",
        Exact,
        PERC,
        "bond cluster density at p_c, triangular"
    ),
];

pub fn registry() -> &'static [RegistryEntry] {
    ENTRIES
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Inside,
    Outside,
    /// Point comparison; see `relative_error`.
    Compared,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareLine {
    pub key: String,
    pub computed: f64,
    pub reference: String,
    pub kind: RegistryKind,
    pub relative_error: Option<f64>,
    pub verdict: Verdict,
    /// Containment in the companion `<key>_bounds` interval, when one exists.
    pub within_bounds: Option<bool>,
}

impl std::fmt::Display for CompareLine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.verdict, self.relative_error) {
            (Verdict::Compared, Some(rel)) => {
                write!(
                    f,
                    "{:<28} computed {:<22.15} reference {:<24} rel.err {:.3e}",
                    self.key, self.computed, self.reference, rel
                )?;
                match self.within_bounds {
                    Some(true) => write!(f, "  inside bounds"),
                    Some(false) => write!(f, "  OUTSIDE bounds"),
                    None => Ok(()),
                }
            }
            (v, _) => write!(
                f,
                "{:<28} computed {:<22.15} interval ({}) {:?}",
                self.key, self.computed, self.reference, v
            ),
        }
    }
}

fn companion_bounds(key: &str) -> Option<(f64, f64)> {
    let name = format!("{key}_bounds");
    ENTRIES.iter().find(|e| e.key == name).and_then(RegistryEntry::bounds)
}

pub fn registry_compare(key: &str, computed: f64) -> Result<CompareLine> {
    let entry = ENTRIES
        .iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::UnknownKey(key.to_string()))?;
    let line = match entry.bounds() {
        Some((lo, hi)) => CompareLine {
            key: key.to_string(),
            computed,
            reference: entry.printed.to_string(),
            kind: entry.kind,
            relative_error: None,
            verdict: if lo < computed && computed < hi {
                Verdict::Inside
            } else {
                Verdict::Outside
            },
            within_bounds: Some(lo < computed && computed < hi),
        },
        None => {
            let reference = entry.value();
            CompareLine {
                key: key.to_string(),
                computed,
                reference: entry.printed.to_string(),
                kind: entry.kind,
                relative_error: Some(((computed - reference) / reference).abs()),
                verdict: Verdict::Compared,
                within_bounds: companion_bounds(key).map(|(lo, hi)| lo < computed && computed < hi),
            }
        }
    };
    Ok(line)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_pairs_are_ordered() {
        for e in registry() {
            if let Some((lo, hi)) = e.bounds() {
                assert!(lo < hi, "{}", e.key);
            } else {
                assert!(e.value().is_finite(), "{}", e.key);
            }
        }
    }

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<_> = registry().iter().map(|e| e.key).collect();
        keys.sort();
        keys.dedup();
        assert_eq!(keys.len(), registry().len());
    }

    #[test]
    fn compare_examples() {
        let k = registry_compare("kappa", 1.9402).unwrap();
        assert!((k.relative_error.unwrap() - 7.9e-6).abs() < 1e-7);
        assert_eq!(registry_compare("mu_d2_bounds", 2.64).unwrap().verdict, Verdict::Inside);
        assert_eq!(registry_compare("mu_d2", 2.64).unwrap().within_bounds, Some(true));
        assert_eq!(
            registry_compare("pc_site_square", 0.70).unwrap().within_bounds,
            Some(false)
        );
        assert_eq!(registry_compare("kappa", 1.9).unwrap().within_bounds, None);
        assert_eq!(
            registry_compare("pc_site_square_bounds", 0.70).unwrap().verdict,
            Verdict::Outside
        );
        assert!(matches!(registry_compare("nope", 1.0), Err(Error::UnknownKey(_))));
    }
}
