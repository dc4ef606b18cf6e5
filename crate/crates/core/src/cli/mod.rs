//! Command-line front end: spectrum, thermal sweeps, critical curves and
//! bound audits as CSV (with a `# meta:` line) or JSON.

pub mod grid;
pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::bounds::{dyn_corr_ratio, general_bound_check_in, Ensemble};
use crate::critical::{critical_distance, Method, Picture, LOW_T_MAX};
use crate::error::{Error, Result};
use crate::fock::ModePartition;
use crate::hubbard::{analytic_spectrum, thermal_state, ChainParams, DimerParams};
use crate::measures::{mode_correlation, mutual_info};
use crate::particle::{nonfreeness, quantum_nonfreeness};
use crate::ree::{mode_entanglement, SolverConfig};

use grid::parse_grid;
use table::{finite, fmt_f64, fmt_opt, fmt_text, render_csv, render_json, Row};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_SOLVER: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

/// Environment variable holding the default worker count.
pub const JOBS_ENV: &str = "FERMICORR_JOBS";

#[derive(Debug, Parser)]
#[command(name = "fermicorr", version, about = "Mode and particle correlation of the thermal Hubbard dimer")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit JSON instead of CSV.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long, global = true, env = JOBS_ENV, default_value_t = 0)]
    jobs: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form energies of the two-electron dimer.
    Spectrum(SpectrumArgs),
    /// Correlation and entanglement measures along a distance grid.
    Sweep(SweepArgs),
    /// Critical distances of entanglement sudden death.
    Critical(CriticalArgs),
    /// Audit of the free-energy bound on the mutual information.
    Bounds(BoundsArgs),
}

#[derive(Debug, Args)]
struct SpectrumArgs {
    /// Distance grid.
    #[arg(long, conflicts_with = "t")]
    r: Option<String>,
    /// Hopping grid.
    #[arg(long)]
    t: Option<String>,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// Initial number of product components in the separable ansatz.
    #[arg(long, default_value_t = SolverConfig::default().components)]
    ree_components: usize,
    /// Independent starts per minimization.
    #[arg(long, default_value_t = SolverConfig::default().restarts)]
    ree_restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Relative stagnation tolerance of the minimizer.
    #[arg(long, default_value_t = SolverConfig::default().tol)]
    tol: f64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            components: self.ree_components,
            restarts: self.ree_restarts,
            seed: self.seed,
            tol: self.tol,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EnsembleArg {
    GrandCanonical,
    Canonical,
}

impl From<EnsembleArg> for Ensemble {
    fn from(e: EnsembleArg) -> Self {
        match e {
            EnsembleArg::GrandCanonical => Ensemble::GrandCanonical,
            EnsembleArg::Canonical => Ensemble::Canonical,
        }
    }
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Temperature grid; 0 selects the ground state.
    #[arg(long = "T", default_value = "0.1")]
    temperature: String,
    #[arg(long, default_value = "0.2:4:0.02")]
    r: String,
    /// Restrict the measure columns to one picture.
    #[arg(long, value_enum, default_value = "all")]
    picture: PictureSel,
    #[command(flatten)]
    solver: SolverArgs,
    /// Ensemble of the state entering I_plain, wolf_rhs and c_dyn.
    #[arg(long, value_enum, default_value = "grand-canonical")]
    ensemble: EnsembleArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PictureArg {
    Mode,
    Particle,
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum PictureSel {
    All,
    Mode,
    Particle,
}

impl PictureSel {
    fn only(self) -> Option<Picture> {
        match self {
            PictureSel::All => None,
            PictureSel::Mode => Some(Picture::Mode),
            PictureSel::Particle => Some(Picture::Particle),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    All,
    Exact,
    LowT,
    Asymptotic,
}

#[derive(Debug, Args)]
struct CriticalArgs {
    #[arg(long, value_enum, default_value = "mode")]
    picture: PictureArg,
    /// Temperature grid.
    #[arg(long = "T", default_value = "log:1e-3:0.3:40")]
    temperature: String,
    #[arg(long, value_enum, default_value = "all")]
    method: MethodArg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    Dimer,
    Chain,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    #[arg(long, value_enum, default_value = "dimer")]
    model: ModelArg,
    /// Sites of the chain model (2 to 4).
    #[arg(long, default_value_t = 3)]
    sites: usize,
    /// Temperature grid.
    #[arg(long = "T", default_value = "0.05,0.1,0.5")]
    temperature: String,
    /// Distance grid; every bond has hopping `e^{-r}`.
    #[arg(long, default_value = "0.1:8:0.1")]
    r: String,
    #[arg(long, value_enum, default_value = "grand-canonical")]
    ensemble: EnsembleArg,
}

#[derive(Debug, Serialize)]
pub struct SpectrumRow {
    pub r: Option<f64>,
    pub t: f64,
    #[serde(rename = "E")]
    pub energies: [f64; 6],
}

impl Row for SpectrumRow {
    const HEADER: &'static [&'static str] = &["r", "t", "E0", "E1", "E2", "E3", "E4", "E5"];
    fn cells(&self) -> Vec<String> {
        let mut c = vec![fmt_f64(self.r.unwrap_or(f64::INFINITY)), fmt_f64(self.t)];
        c.extend(self.energies.iter().map(|&e| fmt_f64(e)));
        c
    }
}

/// Every measure of the dimer at one `(T, r)`.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Serialize)]
pub struct MeasureRecord {
    pub T: f64,
    pub r: f64,
    pub t: f64,
    pub C_mode_ssr: Option<f64>,
    pub E_mode_ssr: Option<f64>,
    pub C_part: Option<f64>,
    pub E_part: Option<f64>,
    pub I_plain: Option<f64>,
    /// `null` at `T = 0`, where the bound is infinite.
    pub wolf_rhs: Option<f64>,
    pub c_dyn: Option<f64>,
    pub status: String,
}

impl Row for MeasureRecord {
    const HEADER: &'static [&'static str] = &[
        "T", "r", "t", "C_mode_ssr", "E_mode_ssr", "C_part", "E_part", "I_plain", "wolf_rhs", "c_dyn", "status",
    ];
    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f64(self.T),
            fmt_f64(self.r),
            fmt_f64(self.t),
            fmt_opt(self.C_mode_ssr),
            fmt_opt(self.E_mode_ssr),
            fmt_opt(self.C_part),
            fmt_opt(self.E_part),
            fmt_opt(self.I_plain),
            match (self.wolf_rhs, self.T == 0.0) {
                (None, true) => "inf".into(),
                (rhs, _) => fmt_opt(rhs),
            },
            fmt_opt(self.c_dyn),
            fmt_text(&self.status),
        ]
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Serialize)]
pub struct CriticalRow {
    pub T: f64,
    pub r_exact: Option<f64>,
    pub r_lowT: Option<f64>,
    pub r_asymptote: Option<f64>,
    pub status: String,
}

impl Row for CriticalRow {
    const HEADER: &'static [&'static str] = &["T", "r_exact", "r_lowT", "r_asymptote", "status"];
    fn cells(&self) -> Vec<String> {
        vec![
            fmt_f64(self.T),
            fmt_opt(self.r_exact),
            fmt_opt(self.r_lowT),
            fmt_opt(self.r_asymptote),
            fmt_text(&self.status),
        ]
    }
}

#[allow(non_snake_case)]
#[derive(Debug, Serialize)]
pub struct BoundsRow {
    pub sites: usize,
    pub T: f64,
    pub r: f64,
    pub t: f64,
    pub I: Option<f64>,
    pub rhs: Option<f64>,
    pub ratio: Option<f64>,
    pub satisfied: Option<bool>,
    pub status: String,
}

impl Row for BoundsRow {
    const HEADER: &'static [&'static str] = &["sites", "T", "r", "t", "I", "rhs", "ratio", "satisfied", "status"];
    fn cells(&self) -> Vec<String> {
        vec![
            self.sites.to_string(),
            fmt_f64(self.T),
            fmt_f64(self.r),
            fmt_f64(self.t),
            fmt_opt(self.I),
            fmt_opt(self.rhs),
            fmt_opt(self.ratio),
            self.satisfied.map(|s| s.to_string()).unwrap_or_default(),
            fmt_text(&self.status),
        ]
    }
}

/// Parses `args` (program name first), writes the result table to `out`
/// and diagnostics to `err`, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start {} workers: {e}", cli.jobs);
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| execute(&cli));
    match result {
        Ok((text, code)) => {
            if let Err(e) = out.write_all(text.as_bytes()) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if code == EXIT_SOLVER {
                let _ = writeln!(err, "warning: some rows failed; see the status column");
            } else if code == EXIT_VIOLATION {
                let _ = writeln!(err, "error: correlation bound violated; see the satisfied column");
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Spectrum(a) => spectrum(a, cli.json),
        Command::Sweep(a) => sweep(a, cli.json),
        Command::Critical(a) => critical(a, cli.json),
        Command::Bounds(a) => bounds(a, cli.json),
    }
}

fn meta(command: &str, flags: serde_json::Value) -> serde_json::Value {
    json!({
        "program": "fermicorr",
        "version": env!("CARGO_PKG_VERSION"),
        "command": command,
        "flags": flags,
    })
}

fn emit<R: Row>(meta: &serde_json::Value, rows: &[R], as_json: bool) -> String {
    if as_json {
        render_json(meta, rows)
    } else {
        render_csv(meta, rows)
    }
}

fn spectrum(a: &SpectrumArgs, as_json: bool) -> Result<(String, i32)> {
    let hoppings: Vec<(Option<f64>, f64)> = match (&a.r, &a.t) {
        (_, Some(t)) => parse_grid(t)?.into_iter().map(|t| ((t > 0.0).then(|| -t.ln()), t)).collect(),
        (r, None) => parse_grid(r.as_deref().unwrap_or("0:6:0.05"))?
            .into_iter()
            .map(|r| (Some(r), (-r).exp()))
            .collect(),
    };
    let rows = hoppings
        .into_iter()
        .map(|(r, t)| Ok(SpectrumRow { r, t, energies: analytic_spectrum(t)?.energies }))
        .collect::<Result<Vec<_>>>()?;
    let flags = json!({ "r": a.r, "t": a.t });
    Ok((emit(&meta("spectrum", flags), &rows, as_json), EXIT_OK))
}

/// Measures of the dimer at `(temperature, r)`; failures land in `status`.
/// With `only` set, the other picture's columns are left empty.
pub fn measure_record(
    temperature: f64,
    r: f64,
    config: &SolverConfig,
    ensemble: Ensemble,
    only: Option<Picture>,
) -> Result<MeasureRecord> {
    let p = DimerParams::from_distance(r)?;
    let rho = thermal_state(&p, temperature)?;
    let part = ModePartition::dimer_left_right();
    let mut errors = Vec::new();
    let mut keep = |what: &str, v: Result<f64>| match v {
        Ok(x) => Some(x),
        Err(e) => {
            errors.push(format!("{what}: {e}"));
            None
        }
    };
    let (mut c_mode, mut e_mode, mut c_part, mut e_part) = (None, None, None, None);
    if only != Some(Picture::Particle) {
        c_mode = keep("C_mode_ssr", mode_correlation(&rho, &part, true).map(f64::from));
        e_mode = keep("E_mode_ssr", mode_entanglement(&rho, &part, true, config).map(f64::from));
    }
    if only != Some(Picture::Mode) {
        c_part = Some(nonfreeness(&rho).value());
        e_part = keep("E_part", quantum_nonfreeness(&rho));
    }
    let (i_plain, wolf_rhs, c_dyn) = if temperature == 0.0 {
        (keep("I_plain", mutual_info(&rho, &part).map(f64::from)), None, None)
    } else {
        match general_bound_check_in(&ChainParams::dimer(&p), temperature, ensemble) {
            Ok(rep) => {
                let c = dyn_corr_ratio(&rep).ok().map(|d| d.c_dyn);
                (Some(rep.mutual_info), Some(rep.rhs), c)
            }
            Err(e) => {
                errors.push(format!("bound: {e}"));
                (None, None, None)
            }
        }
    };
    Ok(MeasureRecord {
        T: temperature,
        r,
        t: p.t(),
        C_mode_ssr: c_mode,
        E_mode_ssr: e_mode,
        C_part: c_part,
        E_part: e_part,
        I_plain: i_plain,
        wolf_rhs,
        c_dyn,
        status: if errors.is_empty() { "ok".into() } else { errors.join("; ") },
    })
}

fn sweep(a: &SweepArgs, as_json: bool) -> Result<(String, i32)> {
    let temps = parse_grid(&a.temperature)?;
    if let Some(t) = temps.iter().find(|t| **t < 0.0) {
        return Err(Error::InvalidParameter(format!("temperature must be >= 0, got {t}")));
    }
    let config = a.solver.config();
    config.validate()?;
    let rs = parse_grid(&a.r)?;
    let ensemble = Ensemble::from(a.ensemble);
    let points: Vec<(f64, f64)> = temps.iter().flat_map(|&t| rs.iter().map(move |&r| (t, r))).collect();
    let rows: Vec<MeasureRecord> = points
        .par_iter()
        .map(|&(temperature, r)| {
            measure_record(temperature, r, &config, ensemble, a.picture.only()).unwrap_or_else(|e| MeasureRecord {
                T: temperature,
                r,
                t: (-r).exp(),
                C_mode_ssr: None,
                E_mode_ssr: None,
                C_part: None,
                E_part: None,
                I_plain: None,
                wolf_rhs: None,
                c_dyn: None,
                status: e.to_string(),
            })
        })
        .collect();
    let code = if rows.iter().all(|r| r.status == "ok") { EXIT_OK } else { EXIT_SOLVER };
    let flags = json!({
        "T": a.temperature,
        "r": a.r,
        "picture": format!("{:?}", a.picture).to_lowercase(),
        "ree_components": config.components,
        "ree_restarts": config.restarts,
        "seed": config.seed,
        "tol": config.tol,
        "ensemble": ensemble,
    });
    Ok((emit(&meta("sweep", flags), &rows, as_json), code))
}

fn positive_temperatures(spec: &str) -> Result<Vec<f64>> {
    let temps = parse_grid(spec)?;
    if let Some(t) = temps.iter().find(|t| **t <= 0.0) {
        return Err(Error::InvalidParameter(format!("temperatures must be positive, got {t}")));
    }
    Ok(temps)
}

fn critical(a: &CriticalArgs, as_json: bool) -> Result<(String, i32)> {
    let temps = positive_temperatures(&a.temperature)?;
    let picture = match a.picture {
        PictureArg::Mode => Picture::Mode,
        PictureArg::Particle => Picture::Particle,
    };
    let wants = |m: MethodArg| a.method == MethodArg::All || a.method == m;
    let rows: Vec<CriticalRow> = temps
        .par_iter()
        .map(|&t| {
            let mut errors = Vec::new();
            let mut get = |m: Method, applicable: bool| {
                if !applicable {
                    return None;
                }
                match critical_distance(picture, m, t) {
                    Ok(r) => Some(r),
                    Err(e) => {
                        errors.push(format!("{m:?}: {e}"));
                        None
                    }
                }
            };
            let r_exact = get(Method::Exact, wants(MethodArg::Exact));
            let r_low = get(Method::LowT, wants(MethodArg::LowT) && t <= LOW_T_MAX);
            let r_asym = get(Method::Asymptotic, wants(MethodArg::Asymptotic));
            CriticalRow {
                T: t,
                r_exact,
                r_lowT: r_low,
                r_asymptote: r_asym,
                status: if errors.is_empty() { "ok".into() } else { errors.join("; ") },
            }
        })
        .collect();
    let code = if rows.iter().all(|r| r.status == "ok") { EXIT_OK } else { EXIT_SOLVER };
    let flags = json!({ "picture": picture, "T": a.temperature, "method": format!("{:?}", a.method) });
    Ok((emit(&meta("critical", flags), &rows, as_json), code))
}

fn bounds(a: &BoundsArgs, as_json: bool) -> Result<(String, i32)> {
    let sites = match a.model {
        ModelArg::Dimer => 2,
        ModelArg::Chain => a.sites,
    };
    ChainParams::uniform(sites, 1.0)?;
    let temps = positive_temperatures(&a.temperature)?;
    let rs = parse_grid(&a.r)?;
    let ensemble = Ensemble::from(a.ensemble);
    let points: Vec<(f64, f64)> = temps.iter().flat_map(|&t| rs.iter().map(move |&r| (t, r))).collect();
    let rows: Vec<BoundsRow> = points
        .par_iter()
        .map(|&(temp, r)| {
            let t = (-r).exp();
            let rep = ChainParams::uniform(sites, t).and_then(|c| general_bound_check_in(&c, temp, ensemble));
            match rep {
                Ok(rep) => BoundsRow {
                    sites,
                    T: temp,
                    r,
                    t,
                    I: Some(rep.mutual_info),
                    rhs: finite(rep.rhs),
                    ratio: rep.ratio,
                    satisfied: Some(rep.satisfied),
                    status: "ok".into(),
                },
                Err(e) => BoundsRow {
                    sites,
                    T: temp,
                    r,
                    t,
                    I: None,
                    rhs: None,
                    ratio: None,
                    satisfied: None,
                    status: e.to_string(),
                },
            }
        })
        .collect();
    let code = if rows.iter().any(|r| r.satisfied == Some(false)) {
        EXIT_VIOLATION
    } else if rows.iter().any(|r| r.status != "ok") {
        EXIT_SOLVER
    } else {
        EXIT_OK
    };
    let flags = json!({ "sites": sites, "T": a.temperature, "r": a.r, "ensemble": ensemble });
    Ok((emit(&meta("bounds", flags), &rows, as_json), code))
}
