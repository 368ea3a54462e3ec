//! Batch command-line surface: weight configs in, CSV artifacts and a
//! human-readable summary out.
//!
//! Exit codes: 0 success / inequalities satisfied, 1 violated inequality or
//! domain error, 2 usage error (bad flags, missing input files).

use clap::{Parser, Subcommand};
use radvar::config::load_weight_config;
use radvar::decompose::Side;
use radvar::report::{fnum, read_profile_csv, write_csv, write_profile_csv};
use radvar::sampling::{blowup_profile, random_profile, random_weight, standard_params};
use radvar::{
    check_poincare, decompose_degeneracy, density_report, minimize_h, AuxWeight,
    BoundaryBehavior, QuadratureConfig, SolverConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "radvar", version, about = "Degenerate radial weights: decomposition, auxiliary weight, Poincaré checks, relaxed-energy minimization")]
struct Cli {
    /// Directory for CSV artifacts (default: $RADVAR_OUT_DIR, else ".").
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Override the adaptive-quadrature relative tolerance.
    #[arg(long, global = true)]
    rel_tol: Option<f64>,
    /// Override the adaptive-quadrature maximum bisection depth.
    #[arg(long, global = true)]
    max_depth: Option<u32>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose the weight into degeneracy intervals and classify both
    /// endpoints of each (kernel integrable or not).
    AnalyzeWeight {
        /// Weight config (TOML: problem table + piece array).
        #[arg(long)]
        config: PathBuf,
    },
    /// Tabulate η, η̂_p and the truncated weight min(η̂_p, 1) on a uniform
    /// grid over (a, b).
    BuildAuxWeight {
        #[arg(long)]
        config: PathBuf,
        /// Number of grid points.
        #[arg(long, default_value_t = 512)]
        grid: usize,
    },
    /// Verify the interval-wise weighted Poincaré inequality for a profile;
    /// exit 0 when satisfied, 1 when violated.
    CheckPoincare {
        #[arg(long)]
        config: PathBuf,
        /// Profile CSV with columns (r, v).
        #[arg(long)]
        profile: PathBuf,
    },
    /// Minimize H(u) = Dirichlet energy + fidelity distance to the datum.
    Minimize {
        #[arg(long)]
        config: PathBuf,
        /// Datum CSV with columns (r, g).
        #[arg(long)]
        datum: PathBuf,
        /// Nodes per degeneracy interval.
        #[arg(long)]
        grid: Option<usize>,
        /// First smoothing parameter of the ε-continuation.
        #[arg(long)]
        eps_start: Option<f64>,
        /// Last smoothing parameter of the ε-continuation.
        #[arg(long)]
        eps_end: Option<f64>,
        /// Gradient sup-norm target.
        #[arg(long)]
        grad_tol: Option<f64>,
    },
    /// Clip-and-extend convergence table: energies of Lipschitz approximants
    /// climbing to the relaxed energy of a blow-up profile.
    RelaxDemo {
        #[arg(long)]
        config: PathBuf,
        /// Profile CSV (r, v); defaults to a generated log-type blow-up
        /// profile on the first degeneracy interval.
        #[arg(long)]
        profile: Option<PathBuf>,
        /// Number of halvings in the δ ladder.
        #[arg(long, default_value_t = 12)]
        steps: usize,
    },
    /// Randomized Poincaré sweep over generated weights and profiles;
    /// deterministic for a fixed seed. Exit 1 if any case is violated.
    Fuzz {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
}

enum CliError {
    Usage(String),
    Domain(radvar::Error),
}

impl From<radvar::Error> for CliError {
    fn from(e: radvar::Error) -> Self {
        CliError::Domain(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Domain(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn out_dir(cli: &Cli) -> Result<PathBuf, CliError> {
    let dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os("RADVAR_OUT_DIR").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::Usage(format!("cannot create output dir {}: {e}", dir.display())))?;
    Ok(dir)
}

fn quad_config(cli: &Cli) -> QuadratureConfig {
    let mut cfg = QuadratureConfig::default();
    if let Some(t) = cli.rel_tol {
        cfg.rel_tol = t;
    }
    if let Some(d) = cli.max_depth {
        cfg.max_depth = d;
    }
    cfg
}

fn require_file(p: &Path) -> Result<(), CliError> {
    if p.is_file() {
        Ok(())
    } else {
        Err(CliError::Usage(format!(
            "input file {} not found",
            p.display()
        )))
    }
}

fn behavior_name(b: BoundaryBehavior) -> &'static str {
    match b {
        BoundaryBehavior::VanishingLimit => "vanishing",
        BoundaryBehavior::FiniteExtension => "finite",
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let dir = out_dir(cli)?;
    let qcfg = quad_config(cli);
    match &cli.cmd {
        Cmd::AnalyzeWeight { config } => {
            require_file(config)?;
            let (params, spec) = load_weight_config(config)?;
            let dec = decompose_degeneracy(&spec, &params, &qcfg)?;
            let rows: Vec<Vec<String>> = dec
                .intervals()
                .iter()
                .enumerate()
                .map(|(i, iv)| {
                    vec![
                        i.to_string(),
                        fnum(iv.lo),
                        fnum(iv.hi),
                        iv.left_integrable.to_string(),
                        iv.right_integrable.to_string(),
                    ]
                })
                .collect();
            let path = dir.join("decomposition.csv");
            write_csv(
                &path,
                &["i", "a_i", "b_i", "left_integrable", "right_integrable"],
                &rows,
            )?;
            println!(
                "weight on ({}, {}), d = {}, p = {}: {} degeneracy interval(s), class {:?}",
                params.a,
                params.b,
                params.d,
                params.p,
                dec.intervals().len(),
                dec.class(),
            );
            for (i, iv) in dec.intervals().iter().enumerate() {
                println!(
                    "  interval {i}: ({:.6}, {:.6})  kernel integrable left={} right={}",
                    iv.lo, iv.hi, iv.left_integrable, iv.right_integrable
                );
            }
            println!("wrote {}", path.display());
            Ok(true)
        }
        Cmd::BuildAuxWeight { config, grid } => {
            require_file(config)?;
            if *grid < 2 {
                return Err(CliError::Usage("--grid must be at least 2".into()));
            }
            let (params, spec) = load_weight_config(config)?;
            let aux = AuxWeight::build(&spec, &params, &qcfg)?;
            let n = *grid;
            let rows: Vec<Vec<String>> = (0..n)
                .map(|j| {
                    let t = params.a + (params.b - params.a) * j as f64 / (n - 1) as f64;
                    vec![
                        fnum(t),
                        fnum(spec.eval(t)),
                        fnum(aux.eval(t)),
                        fnum(aux.truncated(t)),
                    ]
                })
                .collect();
            let path = dir.join("aux_weight.csv");
            write_csv(&path, &["t", "eta", "eta_hat_p", "w_tilde"], &rows)?;
            for (i, iv) in aux.intervals().iter().enumerate() {
                println!(
                    "interval {i}: ({:.6}, {:.6})  mid const {:.6e}  limits {:.3e}/{:.3e} ({}/{})  band jump at q2 {:.3e}",
                    iv.lo,
                    iv.hi,
                    iv.mid_const,
                    iv.left_limit,
                    iv.right_limit,
                    behavior_name(aux.boundary_behavior(i, Side::Left)),
                    behavior_name(aux.boundary_behavior(i, Side::Right)),
                    iv.right_band_jump,
                );
            }
            println!("wrote {}", path.display());
            Ok(true)
        }
        Cmd::CheckPoincare { config, profile } => {
            require_file(config)?;
            require_file(profile)?;
            let (params, spec) = load_weight_config(config)?;
            let prof = read_profile_csv(profile)?;
            let aux = AuxWeight::build(&spec, &params, &qcfg)?;
            let report = check_poincare(&prof, &aux, &qcfg)?;
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|r| {
                    vec![
                        r.interval.to_string(),
                        fnum(r.c),
                        fnum(r.anchor_value),
                        fnum(r.lhs),
                        fnum(r.rhs),
                        fnum(r.margin()),
                    ]
                })
                .collect();
            let path = dir.join("poincare.csv");
            write_csv(
                &path,
                &["interval", "c", "anchor_value", "lhs", "rhs", "margin"],
                &rows,
            )?;
            let ok = report.satisfied(1e-9) && report.satisfied_per_interval(1e-9);
            println!(
                "Σ lhs = {:.12e}  Σ rhs = {:.12e}  margin = {:.6e}  {}",
                report.lhs_total,
                report.rhs_total,
                report.margin_total(),
                if ok { "satisfied" } else { "VIOLATED" },
            );
            println!("wrote {}", path.display());
            Ok(ok)
        }
        Cmd::Minimize {
            config,
            datum,
            grid,
            eps_start,
            eps_end,
            grad_tol,
        } => {
            require_file(config)?;
            require_file(datum)?;
            let (params, spec) = load_weight_config(config)?;
            let g = read_profile_csv(datum)?;
            let aux = AuxWeight::build(&spec, &params, &qcfg)?;
            let mut scfg = SolverConfig::default();
            if let Some(n) = grid {
                scfg.grid_size = *n;
            }
            if let Some(e) = eps_start {
                scfg.eps_start = *e;
            }
            if let Some(e) = eps_end {
                scfg.eps_end = *e;
            }
            if let Some(t) = grad_tol {
                scfg.grad_tol = *t;
            }
            let res = minimize_h(&g, &aux, &scfg)?;
            let prof_path = dir.join("minimizer.csv");
            write_profile_csv(&prof_path, &res.profile, "u0")?;
            let bk = &res.breakdown;
            let rows: Vec<Vec<String>> = bk
                .per_interval
                .iter()
                .enumerate()
                .map(|(i, &e)| vec![i.to_string(), fnum(e)])
                .collect();
            let bk_path = dir.join("breakdown.csv");
            write_csv(&bk_path, &["interval", "dirichlet_energy"], &rows)?;
            println!(
                "H = {:.12e}  (dirichlet {:.12e} + fidelity {:.12e})",
                bk.h_value, bk.dirichlet_total, bk.fidelity
            );
            println!(
                "stages {}  iterations {}  final grad sup-norm {:.3e}  perturbation certificate {:.3e}",
                res.diagnostics.stages,
                res.diagnostics.iterations,
                res.diagnostics.final_grad_norm,
                res.certificate,
            );
            for (lo, hi) in &res.indifferent_region {
                println!("H-indifferent on ({lo:.6}, {hi:.6}): u = g there");
            }
            println!("wrote {} and {}", prof_path.display(), bk_path.display());
            Ok(true)
        }
        Cmd::RelaxDemo {
            config,
            profile,
            steps,
        } => {
            require_file(config)?;
            if *steps == 0 {
                return Err(CliError::Usage("--steps must be positive".into()));
            }
            let (params, spec) = load_weight_config(config)?;
            let aux = AuxWeight::build(&spec, &params, &qcfg)?;
            if aux.intervals().is_empty() {
                return Err(CliError::Domain(radvar::Error::InvalidSpec(
                    "weight has no degeneracy intervals; nothing to relax".into(),
                )));
            }
            let prof = match profile {
                Some(p) => {
                    require_file(p)?;
                    read_profile_csv(p)?
                }
                None => {
                    // Blow up at a vanishing endpoint when one exists.
                    let side = if aux.boundary_behavior(0, Side::Right)
                        == BoundaryBehavior::VanishingLimit
                    {
                        Side::Right
                    } else {
                        Side::Left
                    };
                    blowup_profile(&aux, 0, side, 400)?
                }
            };
            let min_len = aux
                .intervals()
                .iter()
                .map(|iv| iv.len())
                .fold(f64::INFINITY, f64::min);
            let deltas: Vec<f64> = (2..2 + *steps as i32)
                .map(|k| min_len * 2f64.powi(-k))
                .collect();
            let rep = density_report(&prof, &aux, &deltas, &qcfg)?;
            let rows: Vec<Vec<String>> = rep
                .rows
                .iter()
                .map(|r| {
                    vec![
                        fnum(r.delta),
                        fnum(r.energy),
                        fnum(r.fid_dist),
                        fnum(r.grad_dist),
                    ]
                })
                .collect();
            let path = dir.join("relax_table.csv");
            write_csv(&path, &["delta", "energy", "fid_dist", "grad_dist"], &rows)?;
            println!(
                "relaxed energy {:.12e}; {} clip levels, final gap {:.3e}, final fidelity distance {:.3e}, energies monotone: {}",
                rep.f_bar,
                rep.rows.len(),
                rep.final_energy_gap(),
                rep.final_fid_dist(),
                rep.energy_monotone(),
            );
            println!("wrote {}", path.display());
            Ok(true)
        }
        Cmd::Fuzz { seed, cases } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut rows = Vec::with_capacity(*cases);
            let mut violations = 0usize;
            for case in 0..*cases {
                let d = [1u32, 2, 3][rng.gen_range(0..3)];
                let p = [1.5, 2.0, 3.0][rng.gen_range(0..3)];
                let params = standard_params(d, p);
                let spec = random_weight(&mut rng, &params);
                let aux = AuxWeight::build(&spec, &params, &qcfg)?;
                let prof = random_profile(&mut rng, params.a, params.b);
                let report = check_poincare(&prof, &aux, &qcfg)?;
                let ok = report.satisfied(1e-9) && report.satisfied_per_interval(1e-9);
                if !ok {
                    violations += 1;
                }
                rows.push(vec![
                    case.to_string(),
                    seed.to_string(),
                    d.to_string(),
                    fnum(p),
                    aux.intervals().len().to_string(),
                    fnum(report.lhs_total),
                    fnum(report.rhs_total),
                    fnum(report.margin_total()),
                    ok.to_string(),
                ]);
            }
            let path = dir.join("fuzz_report.csv");
            write_csv(
                &path,
                &[
                    "case",
                    "seed",
                    "d",
                    "p",
                    "n_intervals",
                    "lhs_total",
                    "rhs_total",
                    "margin",
                    "satisfied",
                ],
                &rows,
            )?;
            println!(
                "seed {seed}: {} cases, {} violation(s)",
                cases, violations
            );
            println!("wrote {}", path.display());
            Ok(violations == 0)
        }
    }
}
