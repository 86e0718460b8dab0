//! Argument model, output documents and rendering for the `latconst` binary.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use latconst::analysis::{registry, registry_compare, CompareLine};
use latconst::coverings::{self, CoveringKind};
use latconst::entropy::{self, EntropyModel, HardModel};
use latconst::ising::{self, Method};
use latconst::lattice::{Boundary, LatticeSpec};
use latconst::percolation::{self, GridKind, McEstimate, McParams, Mode};
use latconst::walks::{self, SawOptions, Symmetry};
use latconst::{animals, EstimateReport, WorkBudget};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "latconst",
    version,
    about = "Exact enumeration and growth-constant estimates for lattice models"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub threads: Option<u64>,

    /// Work budget in elementary enumeration steps.
    #[arg(long, global = true, env = "LATCONST_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: Option<u64>,

    /// Write the output here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Self-avoiding walk counts and squared displacements.
    Walks(WalksArgs),
    /// Fixed polyomino counts.
    Animals(AnimalsArgs),
    /// Even polygonal drawings on the torus and the derived series coefficients.
    Ising(IsingArgs),
    /// Dimer and monomer-dimer counts on free boxes.
    Coverings(CoveringsArgs),
    /// Ice and hard-core model counts and entropy constants.
    Entropy(EntropyArgs),
    /// Percolation: Monte Carlo densities, exact values, thresholds.
    Perc(PercArgs),
    /// Computed values against the constants registry.
    Report(ReportArgs),
}

#[derive(Args, Debug, Clone)]
pub struct WalksArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub max_n: usize,
    /// Also write the full census as JSON.
    #[arg(long)]
    pub census: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
pub struct AnimalsArgs {
    #[arg(long)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    CycleSpace,
    TrailSearch,
}

#[derive(Args, Debug, Clone)]
pub struct IsingArgs {
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long)]
    pub side: usize,
    #[arg(long)]
    pub max_bonds: usize,
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    pub method: MethodArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CoveringModel {
    Dimer2d,
    MonomerDimer,
    Dimer3d,
}

#[derive(Args, Debug, Clone)]
pub struct CoveringsArgs {
    #[arg(long, value_enum)]
    pub model: CoveringModel,
    /// Largest side; every side from 1 up is tabulated.
    #[arg(long)]
    pub side: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EntropyModelArg {
    Ice,
    Hardsquare,
    Hardhexagon,
    King,
}

#[derive(Args, Debug, Clone)]
pub struct EntropyArgs {
    #[arg(long, value_enum)]
    pub model: EntropyModelArg,
    #[arg(long)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Site,
    Bond,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GridArg {
    Square,
    Tri,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundaryArg {
    Free,
    Torus,
}

#[derive(Args, Debug, Clone)]
#[command(args_conflicts_with_subcommands = true)]
pub struct PercArgs {
    #[command(subcommand)]
    pub action: Option<PercAction>,
    #[command(flatten)]
    pub mc: McArgs,
}

#[derive(Args, Debug, Clone)]
pub struct McArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Site)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = GridArg::Square)]
    pub lattice: GridArg,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 64)]
    pub side: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = BoundaryArg::Free)]
    pub boundary: BoundaryArg,
    /// Also run side/2 and report the linear extrapolation in 1/side.
    #[arg(long)]
    pub extrapolate: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum PercAction {
    /// Exact cluster densities.
    Exact {
        #[arg(value_enum)]
        which: ExactKind,
    },
    /// Threshold estimate from crossing probabilities.
    Pc(PcArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactKind {
    KbHalf,
    KbHalfIntegral,
    KbTri,
}

#[derive(Args, Debug, Clone)]
pub struct PcArgs {
    #[arg(long, value_enum, default_value_t = ModeArg::Site)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = GridArg::Square)]
    pub lattice: GridArg,
    #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
    pub sides: Vec<usize>,
    #[arg(long, default_value_t = 2000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct ReportArgs {
    /// Include the slower enumerations and Monte Carlo runs.
    #[arg(long)]
    pub all: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: impl Into<String>, columns: &[&str]) -> Table {
        Table {
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Everything a command emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub command: String,
    pub tables: Vec<Table>,
    pub estimates: Vec<EstimateReport>,
    pub comparisons: Vec<CompareLine>,
    pub notes: Vec<String>,
}

impl Document {
    fn new(command: &str) -> Document {
        Document {
            command: command.into(),
            tables: Vec::new(),
            estimates: Vec::new(),
            comparisons: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn compare(&mut self, key: &str, computed: f64) -> Result<(), CliError> {
        self.comparisons.push(registry_compare(key, computed)?);
        Ok(())
    }

    fn estimate(&mut self, key: Option<&str>, report: EstimateReport) -> Result<(), CliError> {
        if let Some(k) = key {
            self.compare(k, report.value)?;
        }
        self.estimates.push(report);
        Ok(())
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(latconst::Error),
    Io(String),
}

impl From<latconst::Error> for CliError {
    fn from(e: latconst::Error) -> Self {
        CliError::Core(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl CliError {
    /// 2 validation, 3 budget, 4 internal consistency, 1 anything else.
    pub fn exit_code(&self) -> i32 {
        use latconst::Error::*;
        match self {
            CliError::Core(Domain(_) | TooShort { .. } | UnknownKey(_) | NotBracketed(_)) => 2,
            CliError::Core(Budget { .. }) => 3,
            CliError::Core(Consistency(_) | Quadrature(_)) => 4,
            CliError::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "validation",
            3 => "budget",
            4 => "consistency",
            _ => "io",
        }
    }

    /// One-line JSON error for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self.kind(), "message": self.to_string() }).to_string()
    }
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

fn budget(cli: &Cli) -> WorkBudget {
    cli.budget.map_or(WorkBudget::DEFAULT, WorkBudget)
}

pub fn run(cli: &Cli) -> Result<Document, CliError> {
    match &cli.command {
        Command::Walks(a) => run_walks(a, budget(cli)),
        Command::Animals(a) => run_animals(a, budget(cli)),
        Command::Ising(a) => run_ising(a, budget(cli)),
        Command::Coverings(a) => run_coverings(a),
        Command::Entropy(a) => run_entropy(a),
        Command::Perc(a) => run_perc(a),
        Command::Report(a) => run_report(a),
    }
}

fn run_walks(a: &WalksArgs, budget: WorkBudget) -> Result<Document, CliError> {
    let census = walks::enumerate_saw_with(
        a.dim,
        a.max_n,
        SawOptions {
            symmetry: Symmetry::Full,
            budget,
        },
    )?;
    if let Some(path) = &a.census {
        let json = serde_json::to_string_pretty(&census).map_err(|e| CliError::Io(e.to_string()))?;
        std::fs::write(path, json + "\n").map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    let mut doc = Document::new("walks");
    let mut t = Table::new(
        format!("self-avoiding walks, d={}", a.dim),
        &["n", "c(n)", "s(n)", "s(n)/c(n)"],
    );
    for n in 0..=a.max_n {
        let c = census.counts.get(n as u32).expect("dense census");
        let sq = census.sq_disp_sums.get(n as u32).expect("dense census");
        t.push(vec![s(n), s(c), s(sq), s(walks::mean_square_displacement(&census, n)?)]);
    }
    doc.tables.push(t);
    if a.max_n >= 10 {
        let mu = walks::mu_estimate(&census)?;
        let key = format!("mu_d{}", a.dim);
        let has_key = registry().iter().any(|e| e.key == key);
        let mu_value = mu.value;
        doc.estimate(has_key.then_some(key.as_str()), mu)?;
        if (a.dim == 2 || a.dim == 3) && a.max_n >= 12 {
            let reference = registry_compare(&key, 0.0)?
                .reference
                .parse::<f64>()
                .unwrap_or(mu_value);
            let (g, v) = walks::exponent_fits(&census, reference)?;
            let mut f = Table::new("exponent fits", &["exponent", "value", "window", "residual"]);
            f.push(vec![
                s("gamma"),
                s(g.exponent),
                format!("{}..{}", g.window.0, g.window.1),
                s(g.residual),
            ]);
            f.push(vec![
                s("nu"),
                s(v.exponent),
                format!("{}..{}", v.window.0, v.window.1),
                s(v.residual),
            ]);
            doc.tables.push(f);
            doc.compare(&format!("gamma_d{}", a.dim), g.exponent)?;
            doc.compare(&format!("nu_d{}", a.dim), v.exponent)?;
        }
    }
    Ok(doc)
}

fn run_animals(a: &AnimalsArgs, budget: WorkBudget) -> Result<Document, CliError> {
    let census = animals::count_polyominoes_with(a.max_n, budget)?;
    let mut doc = Document::new("animals");
    let mut t = Table::new("fixed polyominoes", &["n", "A(n)"]);
    for (n, c) in census.counts.iter() {
        t.push(vec![s(n), s(c)]);
    }
    doc.tables.push(t);
    if a.max_n >= 8 {
        doc.estimate(Some("alpha"), animals::alpha_estimate(&census)?)?;
    }
    Ok(doc)
}

fn run_ising(a: &IsingArgs, budget: WorkBudget) -> Result<Document, CliError> {
    let method = match a.method {
        MethodArg::Auto => Method::Auto,
        MethodArg::CycleSpace => Method::CycleSpace,
        MethodArg::TrailSearch => Method::TrailSearch,
    };
    let spec = LatticeSpec::new(a.dim, a.side, Boundary::Torus, latconst::lattice::Adjacency::CubicNN)?;
    let census = ising::count_even_drawings_with(&spec, a.max_bonds, method, budget)?;
    let mut doc = Document::new("ising");
    let mut t = Table::new(
        format!("even polygonal drawings, d={} torus side {}", a.dim, a.side),
        &["r", "B(r)"],
    );
    for (r, c) in census.counts.iter() {
        t.push(vec![s(r), s(c)]);
    }
    doc.tables.push(t);
    if census.thermodynamic {
        let betas = ising::beta_from_counts(&census)?;
        let mut b = Table::new("series coefficients", &["k", "from counts", "polynomial", "equal"]);
        for (k, v) in &betas {
            let poly = ising::beta_polynomial(a.dim as i64, *k).ok();
            let (p, eq) = match &poly {
                Some(p) => (s(p), s(p == v)),
                None => (s("-"), s("-")),
            };
            b.push(vec![s(k), s(v), p, eq]);
        }
        doc.tables.push(b);
    } else {
        doc.notes.push(
            "side does not exceed the bond count; winding polygons contaminate the counts, coefficients omitted".into(),
        );
    }
    Ok(doc)
}

fn run_coverings(a: &CoveringsArgs) -> Result<Document, CliError> {
    let kind = match a.model {
        CoveringModel::Dimer2d => CoveringKind::DimerOnly2D,
        CoveringModel::MonomerDimer => CoveringKind::MonomerDimer2D,
        CoveringModel::Dimer3d => CoveringKind::DimerOnly3D,
    };
    let census = coverings::census(kind, 1..=a.side)?;
    let mut doc = Document::new("coverings");
    match a.model {
        CoveringModel::Dimer2d => {
            let mut t = Table::new("dimer coverings of the n x n square", &["n", "f(n)", "product formula"]);
            for (n, c) in census.counts.iter() {
                let k = if n % 2 == 0 {
                    s(coverings::kasteleyn_count(n as usize, n as usize)?.nearest)
                } else {
                    s("-")
                };
                t.push(vec![s(n), s(c), k]);
            }
            doc.tables.push(t);
            if a.side >= 8 {
                let even = census_even(&census.counts);
                doc.estimate(Some("dimer_2d"), coverings::dimer_entropy_from_table(&even)?)?;
            }
        }
        CoveringModel::MonomerDimer => {
            let mut t = Table::new("monomer-dimer arrangements of the n x n square", &["n", "g(n)"]);
            for (n, c) in census.counts.iter() {
                t.push(vec![s(n), s(c)]);
            }
            doc.tables.push(t);
            if a.side >= 6 {
                doc.estimate(Some("kappa"), coverings::kappa_from_table(&census.counts)?)?;
            }
        }
        CoveringModel::Dimer3d => {
            let mut t = Table::new("dimer coverings of the n x n x n cube", &["n", "h(n)"]);
            for (n, c) in census.counts.iter() {
                t.push(vec![s(n), s(c)]);
            }
            doc.tables.push(t);
            if a.side >= 4 {
                doc.estimate(Some("lambda"), coverings::lambda_estimate()?)?;
            }
        }
    }
    Ok(doc)
}

fn census_even(t: &latconst::SeriesTable) -> latconst::SeriesTable {
    let mut out = latconst::SeriesTable::new(t.provenance.clone());
    for (n, c) in t.iter().filter(|(n, _)| n % 2 == 0) {
        out.insert(n, c.clone());
    }
    out
}

fn run_entropy(a: &EntropyArgs) -> Result<Document, CliError> {
    let mut doc = Document::new("entropy");
    let hard = match a.model {
        EntropyModelArg::Ice => None,
        EntropyModelArg::Hardsquare => Some(HardModel::HardSquare),
        EntropyModelArg::Hardhexagon => Some(HardModel::HardHexagon),
        EntropyModelArg::King => Some(HardModel::King),
    };
    match hard {
        Some(model) => {
            let mut t = Table::new(
                format!("{} on the n x n board", model.name()),
                &["n", "count", "Lambda(n)"],
            );
            for n in 1..=a.max_n {
                let c = entropy::count_hard_configs(model, n)?;
                let e = entropy::hard_eigenvalue(model, n)?;
                t.push(vec![s(n), s(c), s(e.value)]);
            }
            doc.tables.push(t);
            if a.max_n >= 8 {
                let key = match model {
                    HardModel::HardSquare => "hard_square",
                    HardModel::HardHexagon => "hard_hexagon",
                    HardModel::King => "king",
                };
                let r = entropy::entropy_constant(EntropyModel::Hard(model), a.max_n)?;
                if model == HardModel::HardHexagon {
                    doc.notes.push(format!(
                        "minimal polynomial relative residual: {:e} at the estimate, {:e} at 1.395485972479302735",
                        entropy::hexagon_minpoly_residual_f64(r.value)?,
                        entropy::hexagon_minpoly_residual("1.395485972479302735")?
                    ));
                }
                doc.estimate(Some(key), r)?;
            }
        }
        None => {
            if a.max_n < 2 {
                return Err(latconst::Error::Domain("ice needs max-n of at least 2".into()).into());
            }
            let mut t = Table::new("ice-rule orientations of the n x n torus", &["n", "theta(n)"]);
            for n in 2..=a.max_n.min(13) {
                t.push(vec![s(n), s(entropy::count_ice_states(n)?)]);
            }
            doc.tables.push(t);
            let mut c = Table::new(
                "3-colourings of the torus faces",
                &[
                    "n",
                    "colourings",
                    "3 theta(n)",
                    "3 x flux-compatible",
                    "plain identity",
                    "flux identity",
                ],
            );
            for n in 2..=a.max_n.min(7) {
                let k = entropy::coloring_check(n)?;
                c.push(vec![
                    s(n),
                    s(&k.colorings),
                    s(&k.ice * 3u32),
                    s(&k.flat_ice * 3u32),
                    s(k.plain_identity()),
                    s(k.flat_identity()),
                ]);
            }
            doc.tables.push(c);
            if a.max_n >= 8 {
                doc.estimate(
                    Some("square_ice"),
                    entropy::entropy_constant(EntropyModel::Ice, a.max_n)?,
                )?;
            }
        }
    }
    Ok(doc)
}

fn mode(m: ModeArg) -> Mode {
    match m {
        ModeArg::Site => Mode::Site,
        ModeArg::Bond => Mode::Bond,
    }
}

fn grid(g: GridArg) -> GridKind {
    match g {
        GridArg::Square => GridKind::Square,
        GridArg::Tri => GridKind::Triangular,
    }
}

fn mc_row(label: &str, e: &McEstimate) -> Vec<String> {
    vec![
        s(label),
        s(e.params.n),
        s(e.mean),
        s(e.std_error),
        s(e.samples),
        s(e.skipped),
    ]
}

/// Registry key for a density run at the tabulated reference parameters.
fn density_key(m: Mode, g: GridKind, p: f64) -> Option<&'static str> {
    match (m, g) {
        (Mode::Site, GridKind::Square) if p == 0.5 => Some("ks_half"),
        (Mode::Bond, GridKind::Square) if p == 0.5 => Some("kb_half"),
        (Mode::Bond, GridKind::Triangular) if (p - percolation::pc_bond_triangular()).abs() < 1e-12 => {
            Some("kb_triangular")
        }
        _ => None,
    }
}

fn run_perc(a: &PercArgs) -> Result<Document, CliError> {
    let mut doc = Document::new("perc");
    match &a.action {
        Some(PercAction::Exact { which }) => {
            let mut t = Table::new("exact cluster densities", &["quantity", "value"]);
            match which {
                ExactKind::KbHalf => {
                    let v = percolation::exact_kb_half_closed();
                    t.push(vec![s("K_B(1/2), (3 sqrt 3 - 5)/2"), s(v)]);
                    doc.compare("kb_half", v)?;
                }
                ExactKind::KbHalfIntegral => {
                    let v = percolation::exact_kb_half_integral_with(&Default::default())?;
                    let closed = percolation::exact_kb_half_closed();
                    t.push(vec![s("K_B(1/2), integral"), s(v.value)]);
                    t.push(vec![s("quadrature error bound"), s(v.error_bound)]);
                    t.push(vec![s("derivative extrapolation spread"), s(v.derivative_spread)]);
                    t.push(vec![s("difference from closed form"), s(v.value - closed)]);
                    doc.compare("kb_half", v.value)?;
                }
                ExactKind::KbTri => {
                    let v = percolation::exact_kb_triangular()?;
                    let f = percolation::kb_triangular_forms();
                    t.push(vec![s("K_B(p_c) triangular"), s(v)]);
                    t.push(vec![s("cosecant form"), s(f.cosecant)]);
                    t.push(vec![s("radical form"), s(f.radical)]);
                    t.push(vec![s("p_c = 2 sin(pi/18)"), s(percolation::pc_bond_triangular())]);
                    doc.compare("kb_triangular", v)?;
                    doc.compare("pc_bond_triangular", percolation::pc_bond_triangular())?;
                }
            }
            doc.tables.push(t);
        }
        Some(PercAction::Pc(p)) => {
            let (m, g) = (mode(p.mode), grid(p.lattice));
            let r = percolation::estimate_pc(m, g, &p.sides, p.trials, p.seed)?;
            let key = match (m, g) {
                (Mode::Site, GridKind::Square) => "pc_site_square",
                (Mode::Bond, GridKind::Square) => "pc_bond_square",
                _ => "pc_bond_triangular",
            };
            doc.estimate(Some(key), r)?;
        }
        None => {
            let mc = &a.mc;
            let mut params = McParams::new(mode(mc.mode), grid(mc.lattice), mc.p, mc.side, mc.trials, mc.seed);
            params.boundary = match mc.boundary {
                BoundaryArg::Free => Boundary::Free,
                BoundaryArg::Torus => Boundary::Torus,
            };
            let mut t = Table::new(
                "Monte Carlo cluster statistics",
                &["quantity", "side", "mean", "std_error", "samples", "skipped"],
            );
            let key = density_key(params.mode, params.grid, params.p);
            if mc.extrapolate {
                let x = percolation::mean_cluster_density_extrapolated(&params)?;
                t.push(mc_row("clusters per site", &x.large));
                t.push(mc_row("clusters per site", &x.small));
                t.push(vec![
                    s("clusters per site, extrapolated"),
                    s("inf"),
                    s(x.value),
                    s(x.std_error),
                    s(x.large.samples + x.small.samples),
                    s(0),
                ]);
                if let Some(k) = key {
                    doc.compare(k, x.value)?;
                }
            } else {
                let d = percolation::mean_cluster_density(&params)?;
                t.push(mc_row("clusters per site", &d));
                if let Some(k) = key {
                    doc.compare(k, d.mean)?;
                }
            }
            t.push(mc_row("mean cluster size", &percolation::mean_cluster_size(&params)?));
            doc.tables.push(t);
        }
    }
    Ok(doc)
}

fn run_report(a: &ReportArgs) -> Result<Document, CliError> {
    let mut doc = Document::new("report");
    doc.compare("dimer_2d", coverings::dimer_constant())?;
    doc.compare("kb_half", percolation::exact_kb_half_closed())?;
    doc.compare("kb_triangular", percolation::exact_kb_triangular()?)?;
    doc.compare("pc_bond_triangular", percolation::pc_bond_triangular())?;
    for (model, key) in [
        (HardModel::HardSquare, "hard_square"),
        (HardModel::HardHexagon, "hard_hexagon"),
        (HardModel::King, "king"),
    ] {
        doc.estimate(Some(key), entropy::entropy_constant(EntropyModel::Hard(model), 14)?)?;
    }
    doc.estimate(Some("square_ice"), entropy::entropy_constant(EntropyModel::Ice, 12)?)?;
    doc.estimate(Some("kappa"), coverings::kappa_estimate(10)?)?;
    doc.estimate(Some("dimer_2d"), coverings::dimer_entropy_estimate(12)?)?;
    doc.notes.push(format!(
        "hard hexagon minimal polynomial residual at 1.395485972479302735: {:e}",
        entropy::hexagon_minpoly_residual("1.395485972479302735")?
    ));
    if a.all {
        let w = walks::enumerate_saw(2, 20)?;
        doc.estimate(Some("mu_d2"), walks::mu_estimate(&w)?)?;
        let (g, v) = walks::exponent_fits(&w, 2.6381585)?;
        doc.compare("gamma_d2", g.exponent)?;
        doc.compare("nu_d2", v.exponent)?;
        let w3 = walks::enumerate_saw(3, 12)?;
        doc.estimate(Some("mu_d3"), walks::mu_estimate(&w3)?)?;
        doc.estimate(
            Some("alpha"),
            animals::alpha_estimate(&animals::count_polyominoes(16)?)?,
        )?;
        doc.estimate(Some("lambda"), coverings::lambda_estimate()?)?;
        doc.compare("kb_half", percolation::exact_kb_half_integral()?)?;
        for (m, g, p, key) in [
            (Mode::Site, GridKind::Square, 0.5, "ks_half"),
            (Mode::Bond, GridKind::Square, 0.5, "kb_half"),
            (
                Mode::Bond,
                GridKind::Triangular,
                percolation::pc_bond_triangular(),
                "kb_triangular",
            ),
        ] {
            let x = percolation::mean_cluster_density_extrapolated(&McParams::new(m, g, p, 64, 2000, 1))?;
            doc.compare(key, x.value)?;
        }
        for (m, g, key) in [
            (Mode::Site, GridKind::Square, "pc_site_square"),
            (Mode::Bond, GridKind::Square, "pc_bond_square"),
            (Mode::Bond, GridKind::Triangular, "pc_bond_triangular"),
        ] {
            doc.estimate(Some(key), percolation::estimate_pc(m, g, &[16, 32, 64], 1000, 1)?)?;
        }
    }
    Ok(doc)
}

fn estimate_table(reports: &[EstimateReport]) -> Table {
    let mut t = Table::new(
        "estimates",
        &[
            "quantity",
            "value",
            "target",
            "residual",
            "raw last",
            "raw residual",
            "error proxy",
            "method",
        ],
    );
    let opt = |x: Option<f64>| x.map_or_else(|| s("-"), s);
    for r in reports {
        t.push(vec![
            r.quantity.clone(),
            s(r.value),
            opt(r.target),
            opt(r.residual()),
            opt(r.raw.last().map(|p| p.1)),
            opt(r.raw_residual()),
            s(r.error_proxy),
            r.method.clone(),
        ]);
    }
    t
}

fn comparison_table(lines: &[CompareLine]) -> Table {
    let mut t = Table::new(
        "registry comparison",
        &[
            "key",
            "computed",
            "reference",
            "relative error",
            "verdict",
            "within bounds",
        ],
    );
    for c in lines {
        t.push(vec![
            c.key.clone(),
            s(c.computed),
            c.reference.clone(),
            c.relative_error.map_or_else(|| s("-"), |r| format!("{r:e}")),
            format!("{:?}", c.verdict),
            c.within_bounds.map_or_else(|| s("-"), s),
        ]);
    }
    t
}

/// Data tables followed by the estimate and comparison tables.
fn all_tables(doc: &Document) -> Vec<Table> {
    let mut out = doc.tables.clone();
    if !doc.estimates.is_empty() {
        out.push(estimate_table(&doc.estimates));
        let notes: Vec<(String, String)> = doc
            .estimates
            .iter()
            .flat_map(|r| r.notes.iter().map(move |n| (r.quantity.clone(), n.clone())))
            .collect();
        if !notes.is_empty() {
            let mut t = Table::new("estimate notes", &["quantity", "note"]);
            for (q, n) in notes {
                t.push(vec![q, n]);
            }
            out.push(t);
        }
    }
    if !doc.comparisons.is_empty() {
        out.push(comparison_table(&doc.comparisons));
    }
    out
}

pub fn render(doc: &Document, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(doc).expect("document serializes") + "\n",
        Format::Csv => render_csv(doc),
        Format::Table => render_text(doc),
    }
}

fn render_csv(doc: &Document) -> String {
    let block = |t: &Table| {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        w.write_record([format!("# {}", t.title)]).expect("in-memory write");
        w.write_record(&t.columns).expect("in-memory write");
        for r in &t.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
    };
    let mut out: Vec<String> = all_tables(doc).iter().map(block).collect();
    if !doc.notes.is_empty() {
        out.push(doc.notes.iter().map(|n| format!("# note: {n}\n")).collect());
    }
    out.join("\n")
}

fn render_text(doc: &Document) -> String {
    let mut out = String::new();
    for t in all_tables(doc) {
        let widths: Vec<usize> = (0..t.columns.len())
            .map(|j| {
                t.rows
                    .iter()
                    .map(|r| r[j].len())
                    .chain([t.columns[j].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
            padded.join("  ").trim_end().to_string() + "\n"
        };
        out += &format!("{}\n", t.title);
        out += &line(&t.columns);
        out += &line(&widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>());
        for r in &t.rows {
            out += &line(r);
        }
        out += "\n";
    }
    for n in &doc.notes {
        out += &format!("note: {n}\n");
    }
    out
}
