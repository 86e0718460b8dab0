//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Results cross the boundary as flat arrays or JSON strings.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use latconst::entropy::{self, EntropyModel, HardModel};
use latconst::percolation;
use latconst::walks;

fn js_err(e: latconst::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// A random site configuration of the free n x n grid, labelled by cluster.
#[wasm_bindgen]
pub struct ClusterSample {
    labels: Vec<u32>,
    clusters: usize,
    largest: usize,
    spans: bool,
}

#[wasm_bindgen]
impl ClusterSample {
    /// Row-major labels, 0 for an empty site.
    pub fn labels(&self) -> Vec<u32> {
        self.labels.clone()
    }

    pub fn clusters(&self) -> usize {
        self.clusters
    }

    pub fn largest(&self) -> usize {
        self.largest
    }

    /// Whether some cluster touches both the left and right columns.
    pub fn spans(&self) -> bool {
        self.spans
    }
}

#[wasm_bindgen]
pub fn percolation_sample(n: usize, p: f64, seed: u32) -> Result<ClusterSample, JsError> {
    let config = percolation::sample_site_config(n, p, u64::from(seed), 0).map_err(js_err)?;
    let stats = percolation::label_clusters_site(&config);
    let labels = percolation::site_cluster_map(&config);
    let left: std::collections::HashSet<u32> = (0..n).map(|r| labels[r * n]).filter(|&l| l > 0).collect();
    let spans = (0..n).any(|r| left.contains(&labels[r * n + n - 1]));
    Ok(ClusterSample {
        clusters: stats.total_clusters,
        largest: stats.cluster_sizes.last().copied().unwrap_or(0),
        spans,
        labels,
    })
}

#[derive(Serialize)]
struct Sequence {
    quantity: String,
    raw: Vec<(f64, f64)>,
    accelerated: Vec<f64>,
    value: f64,
    target: Option<f64>,
}

fn parse_model(name: &str) -> Result<EntropyModel, JsError> {
    Ok(match name {
        "ice" => EntropyModel::Ice,
        "hardsquare" => EntropyModel::Hard(HardModel::HardSquare),
        "hardhexagon" => EntropyModel::Hard(HardModel::HardHexagon),
        "king" => EntropyModel::Hard(HardModel::King),
        other => return Err(JsError::new(&format!("unknown model {other:?}"))),
    })
}

/// Finite-size entropy sequence and its extrapolation, as JSON.
#[wasm_bindgen]
pub fn entropy_sequence(model: &str, n_max: usize) -> Result<String, JsError> {
    let r = entropy::entropy_constant(parse_model(model)?, n_max).map_err(js_err)?;
    let seq = Sequence {
        quantity: r.quantity,
        raw: r.raw,
        accelerated: r.accelerated,
        value: r.value,
        target: r.target,
    };
    serde_json::to_string(&seq).map_err(|e| JsError::new(&e.to_string()))
}

/// Longest walk the demo will enumerate: roughly 10^8 walks at most.
fn walk_limit(dim: usize) -> usize {
    match dim {
        2 => 20,
        3 => 13,
        4 => 10,
        5 => 9,
        _ => 8,
    }
}

/// Self-avoiding walk counts c(0..=n_max) as decimal strings, JSON encoded.
#[wasm_bindgen]
pub fn walk_counts(dim: usize, n_max: usize) -> Result<String, JsError> {
    let limit = walk_limit(dim);
    if n_max > limit {
        return Err(JsError::new(&format!(
            "length {n_max} is too long for the demo in d={dim} (max {limit})"
        )));
    }
    let census = walks::enumerate_saw(dim, n_max).map_err(js_err)?;
    let counts: Vec<String> = census.counts.iter().map(|(_, c)| c.to_string()).collect();
    serde_json::to_string(&counts).map_err(|e| JsError::new(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_is_consistent() {
        let s = percolation_sample(20, 0.6, 3).unwrap();
        assert_eq!(s.labels().len(), 400);
        assert_eq!(*s.labels().iter().max().unwrap() as usize, s.clusters());
        let full = percolation_sample(5, 1.0, 0).unwrap();
        assert!(full.spans() && full.largest() == 25);
    }

    #[test]
    fn sequences_serialize() {
        let v: serde_json::Value = serde_json::from_str(&entropy_sequence("hardsquare", 8).unwrap()).unwrap();
        assert!((v["value"].as_f64().unwrap() - 1.503048).abs() < 1e-4);
        let c: Vec<String> = serde_json::from_str(&walk_counts(2, 3).unwrap()).unwrap();
        assert_eq!(c, ["1", "4", "12", "36"]);
        assert!(walk_limit(3) < walk_limit(2));
    }
}
