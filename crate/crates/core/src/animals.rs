//! Fixed site polyominoes counted with Redelmeier's untried-set recursion.
//!
//! Cells live on the half-plane `y > 0 or (y == 0 and x >= 0)`; the origin is
//! the lowest-leftmost cell of every counted polyomino, which identifies
//! translates. Nothing but counts is stored.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{ratio_estimate, spread};
use crate::error::{Error, Result, WorkBudget};
use crate::series::{big_ln, BigCount, EstimateReport, Provenance, SeriesTable};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnimalCensus {
    pub max_order: usize,
    /// n -> A(n)
    pub counts: SeriesTable,
}

/// Bounding box of the current polyomino relative to the origin cell.
#[derive(Debug, Clone, Copy)]
struct BBox {
    min_x: i32,
    max_x: i32,
    max_y: i32,
}

impl BBox {
    fn with(self, x: i32, y: i32) -> BBox {
        BBox {
            min_x: self.min_x.min(x),
            max_x: self.max_x.max(x),
            max_y: self.max_y.max(y),
        }
    }
}

trait Tally: Send + Sync {
    fn record(&mut self, order: usize, bbox: BBox);
    fn merge(&mut self, other: Self);
}

#[derive(Clone)]
struct Counts(Vec<u64>);

impl Tally for Counts {
    #[inline]
    fn record(&mut self, order: usize, _bbox: BBox) {
        self.0[order] += 1;
    }

    fn merge(&mut self, other: Self) {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
    }
}

/// Tally keyed by (order, width, height).
#[derive(Clone, Default)]
struct BoxCounts(BTreeMap<(usize, usize, usize), u64>);

impl Tally for BoxCounts {
    fn record(&mut self, order: usize, b: BBox) {
        let key = (order, (b.max_x - b.min_x + 1) as usize, (b.max_y + 1) as usize);
        *self.0.entry(key).or_insert(0) += 1;
    }

    fn merge(&mut self, other: Self) {
        for (k, v) in other.0 {
            *self.0.entry(k).or_insert(0) += v;
        }
    }
}

/// Grid geometry: x in `[-n, n]`, y in `[0, n)`, one guard cell on every side.
struct Grid {
    order: usize,
    width: usize,
}

impl Grid {
    fn new(order: usize) -> Self {
        Grid {
            order,
            width: 2 * order + 3,
        }
    }

    fn cells(&self) -> usize {
        self.width * (self.order + 2)
    }

    fn index(&self, x: i32, y: i32) -> usize {
        ((y + 1) as usize) * self.width + (x + self.order as i32 + 1) as usize
    }

    fn xy(&self, idx: usize) -> (i32, i32) {
        let y = (idx / self.width) as i32 - 1;
        let x = (idx % self.width) as i32 - self.order as i32 - 1;
        (x, y)
    }

    /// Initial reached-map: every cell outside the canonical half-plane is blocked.
    fn initial_reached(&self) -> Vec<bool> {
        let mut reached = vec![false; self.cells()];
        for (idx, r) in reached.iter_mut().enumerate() {
            let (x, y) = self.xy(idx);
            let inside = y > 0 || (y == 0 && x >= 0);
            let in_range = x.abs() <= self.order as i32 && (y as usize) < self.order + 1 && y >= 0;
            *r = !(inside && in_range);
        }
        reached
    }
}

struct Task {
    untried: Vec<usize>,
    reached: Vec<bool>,
    order: usize,
    bbox: BBox,
}

struct Redelmeier<'g, T> {
    grid: &'g Grid,
    max_order: usize,
    reached: Vec<bool>,
    tally: T,
    /// Order at which states are handed off as tasks instead of expanded.
    split_at: Option<usize>,
    tasks: Vec<Task>,
}

impl<T: Tally> Redelmeier<'_, T> {
    /// Expand every way of adding one untried cell to a polyomino of `order - 1` cells.
    fn run(&mut self, untried: &mut Vec<usize>, order: usize, bbox: BBox) {
        let w = self.grid.width;
        while let Some(cell) = untried.pop() {
            let (x, y) = self.grid.xy(cell);
            let bb = bbox.with(x, y);
            self.tally.record(order, bb);
            if order == self.max_order {
                continue;
            }
            let mut child = untried.clone();
            let mut marked = [usize::MAX; 4];
            for (slot, nb) in marked.iter_mut().zip([cell + 1, cell - 1, cell + w, cell - w]) {
                if !self.reached[nb] {
                    self.reached[nb] = true;
                    child.push(nb);
                    *slot = nb;
                }
            }
            if self.split_at == Some(order) {
                self.tasks.push(Task {
                    untried: child,
                    reached: self.reached.clone(),
                    order: order + 1,
                    bbox: bb,
                });
            } else {
                self.run(&mut child, order + 1, bb);
            }
            for nb in marked {
                if nb != usize::MAX {
                    self.reached[nb] = false;
                }
            }
        }
    }
}

fn projected_work(max_order: usize) -> f64 {
    4.1f64.powi(max_order as i32) / max_order as f64
}

fn enumerate<T: Tally + Clone>(max_order: usize, empty: T, budget: WorkBudget) -> Result<T> {
    if max_order == 0 {
        return Err(Error::Domain("polyomino order must be at least 1".into()));
    }
    if max_order > 40 {
        return Err(Error::Domain(format!("order {max_order} is beyond exact reach")));
    }
    budget.check("polyomino enumeration", projected_work(max_order))?;
    let grid = Grid::new(max_order);
    let origin = grid.index(0, 0);
    let mut reached = grid.initial_reached();
    reached[origin] = true;
    let split = if max_order > 10 { Some(max_order.min(6)) } else { None };
    let mut head = Redelmeier {
        grid: &grid,
        max_order,
        reached,
        tally: empty.clone(),
        split_at: split,
        tasks: Vec::new(),
    };
    let start = BBox {
        min_x: 0,
        max_x: 0,
        max_y: 0,
    };
    head.run(&mut vec![origin], 1, start);
    let tasks = std::mem::take(&mut head.tasks);
    let mut total = head.tally;
    let parts: Vec<T> = tasks
        .into_par_iter()
        .map(|mut task| {
            let mut worker = Redelmeier {
                grid: &grid,
                max_order,
                reached: task.reached,
                tally: empty.clone(),
                split_at: None,
                tasks: Vec::new(),
            };
            worker.run(&mut task.untried, task.order, task.bbox);
            worker.tally
        })
        .collect();
    for p in parts {
        total.merge(p);
    }
    Ok(total)
}

/// Number of fixed polyominoes of every order up to `n_max`.
pub fn count_polyominoes(n_max: usize) -> Result<AnimalCensus> {
    count_polyominoes_with(n_max, WorkBudget::DEFAULT)
}

pub fn count_polyominoes_with(n_max: usize, budget: WorkBudget) -> Result<AnimalCensus> {
    let counts = enumerate(n_max, Counts(vec![0; n_max + 1]), budget)?;
    let mut table = SeriesTable::new(Provenance::new("fixed site polyomino", "square").with("max_order", n_max));
    for (n, c) in counts.0.iter().enumerate().skip(1) {
        table.insert(n as u32, BigCount::from(*c));
    }
    Ok(AnimalCensus {
        max_order: n_max,
        counts: table,
    })
}

/// Polyomino counts split by exact bounding box: `(order, width, height) -> count`.
pub fn count_polyominoes_by_box(n_max: usize) -> Result<BTreeMap<(usize, usize, usize), u64>> {
    Ok(enumerate(n_max, BoxCounts::default(), WorkBudget::DEFAULT)?.0)
}

/// Growth-constant estimate from the ratios `A(n+1)/A(n)`, Richardson-accelerated in `1/n`.
pub fn alpha_estimate(census: &AnimalCensus) -> Result<EstimateReport> {
    alpha_from_table(&census.counts)
}

pub fn alpha_from_table(counts: &SeriesTable) -> Result<EstimateReport> {
    let ln: Vec<(u32, f64)> = counts.iter().map(|(n, c)| (n, big_ln(c))).collect();
    if ln.len() < 8 {
        return Err(Error::TooShort {
            needed: 8,
            got: ln.len(),
        });
    }
    let (ratios, acc) = ratio_estimate(&ln, false, 2)?;
    let value = *acc.last().unwrap();
    let mut notes = Vec::new();
    for &(n, r) in &ratios {
        if r > 4.649551 {
            let msg = format!("ratio at n={n} exceeds the rigorous upper bound 4.649551");
            notes.push(if n >= 10.0 {
                msg
            } else {
                format!("{msg} (small n, informational)")
            });
        }
    }
    // Amplitude of A(n) ~ C alpha^n / n at the largest order, report only.
    if let Some(&(n, l)) = ln.last() {
        let c = (l - n as f64 * value.ln() + (n as f64).ln()).exp();
        notes.push(format!("amplitude C ~ {c:.4} from n={n} (report only)"));
    }
    Ok(EstimateReport {
        quantity: "alpha".into(),
        method: "ratio A(n+1)/A(n), Richardson order 2 in 1/n".into(),
        value,
        raw: ratios,
        error_proxy: spread(&acc),
        accelerated: acc,
        target: Some(4.06265),
        notes,
    })
}
