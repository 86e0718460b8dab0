//! Exact count tables and estimate reports shared by every module.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

/// Arbitrary-precision nonnegative integer used for every exact count.
pub type BigCount = BigUint;

/// Where a table came from: model, lattice and the parameters that produced it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub model: String,
    pub lattice: String,
    pub params: BTreeMap<String, String>,
}

impl Provenance {
    pub fn new(model: impl Into<String>, lattice: impl Into<String>) -> Self {
        Provenance {
            model: model.into(),
            lattice: lattice.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }
}

/// Ordered map from an index (n, r or k) to an exact count.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesTable {
    pub provenance: Provenance,
    #[serde(with = "decimal_map")]
    entries: BTreeMap<u32, BigCount>,
}

impl SeriesTable {
    pub fn new(provenance: Provenance) -> Self {
        SeriesTable {
            provenance,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, index: u32, value: BigCount) {
        self.entries.insert(index, value);
    }

    pub fn get(&self, index: u32) -> Option<&BigCount> {
        self.entries.get(&index)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigCount)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, v))
    }

    pub fn max_index(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    /// Count as `f64`, or `None` if the index is missing.
    pub fn get_f64(&self, index: u32) -> Option<f64> {
        self.get(index).map(big_to_f64)
    }
}

/// Natural logarithm of a big count, accurate for values far beyond `f64::MAX`.
pub fn big_ln(x: &BigCount) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return big_to_f64(x).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn big_to_f64(x: &BigCount) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}

/// Result of extrapolating a finite-size sequence toward its limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateReport {
    pub quantity: String,
    pub method: String,
    /// Extrapolated limit.
    pub value: f64,
    /// Raw finite-size sequence as (size, value) pairs.
    pub raw: Vec<(f64, f64)>,
    /// Accelerated iterates, last one is `value`.
    pub accelerated: Vec<f64>,
    /// Spread of the last accelerated iterates.
    pub error_proxy: f64,
    pub target: Option<f64>,
    pub notes: Vec<String>,
}

impl EstimateReport {
    pub fn residual(&self) -> Option<f64> {
        self.target.map(|t| (self.value - t).abs())
    }

    pub fn raw_residual(&self) -> Option<f64> {
        match (self.target, self.raw.last()) {
            (Some(t), Some(&(_, v))) => Some((v - t).abs()),
            _ => None,
        }
    }
}

mod decimal_map {
    use std::collections::BTreeMap;

    use num_bigint::BigUint;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<u32, BigUint>, s: S) -> Result<S::Ok, S::Error> {
        let as_str: BTreeMap<String, String> = map.iter().map(|(k, v)| (k.to_string(), v.to_str_radix(10))).collect();
        as_str.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u32, BigUint>, D::Error> {
        let raw = BTreeMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let key = k.parse::<u32>().map_err(D::Error::custom)?;
                let val = BigUint::parse_bytes(v.as_bytes(), 10)
                    .ok_or_else(|| D::Error::custom(format!("bad integer `{v}`")))?;
                Ok((key, val))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_ln_matches_float_for_small_values() {
        let x = BigCount::from(5051532105u64);
        assert!((big_ln(&x) - 5051532105f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn big_ln_handles_huge_values() {
        let x = BigCount::from(3u32).pow(2000);
        assert!((big_ln(&x) - 2000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn table_json_uses_decimal_strings() {
        let mut t = SeriesTable::new(Provenance::new("dimer3d", "cubic").with("side", 4));
        t.insert(4, BigCount::from(5051532105u64));
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"5051532105\""));
        let back: SeriesTable = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }
}
