//! `bec2` — experiment runner for the two-mode collision model.

use bec2_cli::config::{
    load_config, parse_init, parse_list_f64, parse_theta_grid, two_units, CanonicalCfg,
    ExactCfg, Experiment, K0Grid, Mode, ParamsCfg, RunConfig, SweepGrids, TimeGrid, Units,
};
use bec2_cli::{runner, CliError};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "bec2",
    version,
    about = "Two-mode condensate with mode-exchange collisions: ground-state distributions, dynamics, entanglement sweeps and verification",
    after_help = "Exit codes: 0 ok, 1 verification failure, 2 invalid configuration, 3 off-manifold in exact mode, 4 numerical failure, 5 aperiodic period request.\nEnvironment: BEC2_THREADS caps sweep concurrency."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Ground-state number distribution (CSV + optional SVG)
    Ground(GroundArgs),
    /// Relative-population trace with collapse/revival markers
    Dynamics(DynamicsArgs),
    /// Mode-entanglement sweep over angle, seed projection and sector size
    Entanglement(EntanglementArgs),
    /// Run the verification suite and write verify_report.json
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Spin label j (half-integers allowed); the sector holds 2j particles
    #[arg(long, allow_negative_numbers = true)]
    j: Option<f64>,
    /// Rotation angle theta in [0, pi]
    #[arg(long, allow_negative_numbers = true)]
    theta: Option<f64>,
    /// Exchange phase phi
    #[arg(long, allow_negative_numbers = true)]
    phi: Option<f64>,
    /// Linear coefficient of the diagonal model
    #[arg(long, allow_negative_numbers = true)]
    a1: Option<f64>,
    /// Quadratic coefficient of the diagonal model
    #[arg(long, allow_negative_numbers = true)]
    a2: Option<f64>,
    /// Mode detuning (canonical couplings)
    #[arg(long = "delta-omega", allow_negative_numbers = true)]
    delta_omega: Option<f64>,
    /// Josephson coupling strength
    #[arg(long = "lambda", allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Cross-mode elastic strength (coefficient of a†b†ab)
    #[arg(long = "u", allow_negative_numbers = true)]
    u: Option<f64>,
    /// One-particle-exchange collision strength
    #[arg(long = "mu", allow_negative_numbers = true)]
    mu: Option<f64>,
    /// Two-particle-exchange collision strength
    #[arg(long = "Lambda", allow_negative_numbers = true)]
    lambda2: Option<f64>,
    /// Force the closed-form route (requires the solvable manifold)
    #[arg(long, conflicts_with = "numeric")]
    exact: bool,
    /// Force the eigensolver route
    #[arg(long)]
    numeric: bool,
    /// Output directory (default "out")
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also emit SVG plots
    #[arg(long)]
    svg: bool,
    /// Report physical (m = 2k) or paper-style (k) populations
    #[arg(long)]
    units: Option<String>,
    /// JSON run configuration (replaces the model flags)
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct GroundArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Seed projection k0 of the solvable eigenstate (default: the energy
    /// minimizer)
    #[arg(long, allow_negative_numbers = true)]
    k0: Option<f64>,
}

#[derive(Args)]
struct DynamicsArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Trace length
    #[arg(long = "t-max")]
    t_max: Option<f64>,
    /// Number of samples on [0, t_max]
    #[arg(long)]
    steps: Option<usize>,
    /// Initial state: dicke:K, rotated:THETA0,K or file:PATH
    /// (default rotated:pi/2,j)
    #[arg(long)]
    init: Option<String>,
}

#[derive(Args)]
struct EntanglementArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Angle grid START:END:N (default 0:pi:181)
    #[arg(long = "theta-grid")]
    theta_grid: Option<String>,
    /// Seed projections: "edge", "all" or a comma list of k values
    #[arg(long = "k0-grid")]
    k0_grid: Option<String>,
    /// Comma list of j values to sweep
    #[arg(long = "j-grid")]
    j_grid: Option<String>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Output directory (default "out")
    #[arg(long)]
    out: Option<PathBuf>,
    /// Negative control: inject an additive defect on the mu coupling so
    /// the conjugation-identity criterion fails
    #[arg(long = "perturb-mu", allow_negative_numbers = true)]
    perturb_mu: Option<f64>,
}

fn units_from(text: Option<&str>) -> Result<Units, CliError> {
    match text {
        None => Ok(Units::Physical),
        Some("physical") => Ok(Units::Physical),
        Some("paper") => Ok(Units::Paper),
        Some(other) => Err(CliError::InvalidConfig(format!(
            "units {other:?} (expected physical or paper)"
        ))),
    }
}

impl ModelArgs {
    fn any_model_flag(&self) -> bool {
        self.j.is_some()
            || self.theta.is_some()
            || self.phi.is_some()
            || self.a1.is_some()
            || self.a2.is_some()
            || self.delta_omega.is_some()
            || self.lambda.is_some()
            || self.u.is_some()
            || self.mu.is_some()
            || self.lambda2.is_some()
    }

    fn mode(&self) -> Mode {
        if self.exact {
            Mode::Exact
        } else if self.numeric {
            Mode::Numeric
        } else {
            Mode::Auto
        }
    }

    fn two_j(&self) -> Result<u32, CliError> {
        let j = self
            .j
            .ok_or_else(|| CliError::InvalidConfig("--j is required".into()))?;
        let two_j = two_units("j", j)?;
        if two_j < 0 {
            return Err(CliError::InvalidConfig(format!("j = {j} is negative")));
        }
        Ok(two_j as u32)
    }

    fn has_canonical_flags(&self) -> bool {
        self.delta_omega.is_some()
            || self.lambda.is_some()
            || self.u.is_some()
            || self.mu.is_some()
            || self.lambda2.is_some()
    }

    /// Build params from flags; `default_exact` supplies (a1, a2) when the
    /// closed-form route only needs the angle (ground/entanglement).
    fn params(&self, default_exact: Option<(f64, f64)>) -> Result<ParamsCfg, CliError> {
        let two_j = self.two_j()?;
        if self.has_canonical_flags() {
            if self.a1.is_some() || self.a2.is_some() || self.theta.is_some() {
                return Err(CliError::InvalidConfig(
                    "mixing canonical couplings with manifold coordinates".into(),
                ));
            }
            return Ok(ParamsCfg::Canonical(CanonicalCfg {
                a0: 0.0,
                delta_omega: self.delta_omega.unwrap_or(0.0),
                lam: self.lambda.unwrap_or(0.0),
                phi: self.phi.unwrap_or(0.0),
                u_cross: self.u.unwrap_or(0.0),
                mu: self.mu.unwrap_or(0.0),
                lambda2: self.lambda2.unwrap_or(0.0),
                two_j,
            }));
        }
        let theta = self
            .theta
            .ok_or_else(|| CliError::InvalidConfig("--theta is required".into()))?;
        let (a1, a2) = match (self.a1, self.a2) {
            (Some(a1), Some(a2)) => (a1, a2),
            (None, None) => default_exact.ok_or_else(|| {
                CliError::InvalidConfig("--a1 and --a2 are required".into())
            })?,
            _ => {
                return Err(CliError::InvalidConfig(
                    "--a1 and --a2 must be given together".into(),
                ))
            }
        };
        Ok(ParamsCfg::Exact(ExactCfg { a1, a2, theta, phi: self.phi.unwrap_or(0.0), two_j }))
    }

    fn apply_common(&self, config: &mut RunConfig) -> Result<(), CliError> {
        if let Some(out) = &self.out {
            config.out = out.display().to_string();
        }
        if self.svg {
            config.emit_svg = true;
        }
        if let Some(units) = &self.units {
            config.units = units_from(Some(units))?;
        }
        Ok(())
    }

    /// Load `--config` if given, enforcing that no model flags compete.
    fn try_config(&self, experiment: Experiment) -> Result<Option<RunConfig>, CliError> {
        let Some(path) = &self.config else { return Ok(None) };
        if self.any_model_flag() {
            return Err(CliError::InvalidConfig(
                "--config replaces the model flags; drop one or the other".into(),
            ));
        }
        let mut config = load_config(path)?;
        if config.experiment != experiment {
            return Err(CliError::InvalidConfig(format!(
                "config experiment {:?} does not match the subcommand",
                config.experiment
            )));
        }
        self.apply_common(&mut config)?;
        Ok(Some(config))
    }
}

fn ground_config(args: &GroundArgs) -> Result<RunConfig, CliError> {
    if let Some(config) = args.model.try_config(Experiment::Ground)? {
        return Ok(config);
    }
    let two_k0 = args.k0.map(|k| two_units("k0", k)).transpose()?;
    // with an explicit seed projection the ladder coefficients only label
    // the state; default them so the minimizer lands on k0
    let default_exact = two_k0.map(|tk| (-(tk as f64), 1.0));
    let params = args.model.params(default_exact)?;
    let mut config = RunConfig {
        experiment: Experiment::Ground,
        mode: args.model.mode(),
        params: Some(params),
        two_k0,
        time: None,
        init: None,
        sweep: None,
        out: "out".into(),
        emit_svg: false,
        units: Units::Physical,
        perturb_mu: None,
    };
    args.model.apply_common(&mut config)?;
    Ok(config)
}

fn dynamics_config(args: &DynamicsArgs) -> Result<RunConfig, CliError> {
    if let Some(mut config) = args.model.try_config(Experiment::Dynamics)? {
        if let (Some(t_max), Some(n_steps)) = (args.t_max, args.steps) {
            config.time = Some(TimeGrid { t_max, n_steps });
        }
        return Ok(config);
    }
    let params = args.model.params(None)?;
    let time = match (args.t_max, args.steps) {
        (Some(t_max), Some(n_steps)) => TimeGrid { t_max, n_steps },
        _ => {
            return Err(CliError::InvalidConfig(
                "--t-max and --steps are required".into(),
            ))
        }
    };
    let init = args.init.as_deref().map(parse_init).transpose()?;
    let mut config = RunConfig {
        experiment: Experiment::Dynamics,
        mode: args.model.mode(),
        params: Some(params),
        two_k0: None,
        time: Some(time),
        init,
        sweep: None,
        out: "out".into(),
        emit_svg: false,
        units: Units::Physical,
        perturb_mu: None,
    };
    args.model.apply_common(&mut config)?;
    Ok(config)
}

fn entanglement_config(args: &EntanglementArgs) -> Result<RunConfig, CliError> {
    if let Some(config) = args.model.try_config(Experiment::Entanglement)? {
        return Ok(config);
    }
    let theta = args.theta_grid.as_deref().map(parse_theta_grid).transpose()?;
    let two_k0 = match args.k0_grid.as_deref() {
        None => None,
        Some(word @ ("all" | "edge")) => Some(K0Grid::Keyword(word.to_string())),
        Some(list) => {
            let ks = parse_list_f64("k0 grid", list)?;
            Some(K0Grid::List(
                ks.into_iter()
                    .map(|k| two_units("k0", k))
                    .collect::<Result<Vec<_>, _>>()?,
            ))
        }
    };
    let two_j_list = match args.j_grid.as_deref() {
        None => None,
        Some(list) => {
            let js = parse_list_f64("j grid", list)?;
            let mut out = Vec::new();
            for j in js {
                let two_j = two_units("j", j)?;
                if two_j < 0 {
                    return Err(CliError::InvalidConfig(format!("j = {j} is negative")));
                }
                out.push(two_j as u32);
            }
            Some(out)
        }
    };
    // the sweep carries its own angles; model coordinates are optional
    let params = if args.model.j.is_some() {
        let two_j = args.model.two_j()?;
        Some(ParamsCfg::Exact(ExactCfg {
            a1: args.model.a1.unwrap_or(0.0),
            a2: args.model.a2.unwrap_or(1.0),
            theta: args.model.theta.unwrap_or(0.0),
            phi: args.model.phi.unwrap_or(0.0),
            two_j,
        }))
    } else {
        None
    };
    if params.is_none() && two_j_list.is_none() {
        return Err(CliError::InvalidConfig("--j or --j-grid is required".into()));
    }
    let mut config = RunConfig {
        experiment: Experiment::Entanglement,
        mode: args.model.mode(),
        params,
        two_k0: None,
        time: None,
        init: None,
        sweep: Some(SweepGrids { theta, two_k0, two_j: two_j_list }),
        out: "out".into(),
        emit_svg: false,
        units: Units::Physical,
        perturb_mu: None,
    };
    args.model.apply_common(&mut config)?;
    Ok(config)
}

fn verify_config(args: &VerifyArgs) -> RunConfig {
    RunConfig {
        experiment: Experiment::Verify,
        mode: Mode::Auto,
        params: None,
        two_k0: None,
        time: None,
        init: None,
        sweep: None,
        out: args.out.as_ref().map(|p| p.display().to_string()).unwrap_or_else(|| "out".into()),
        emit_svg: false,
        units: Units::Physical,
        perturb_mu: args.perturb_mu,
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let config = match &cli.cmd {
        Cmd::Ground(args) => ground_config(args)?,
        Cmd::Dynamics(args) => dynamics_config(args)?,
        Cmd::Entanglement(args) => entanglement_config(args)?,
        Cmd::Verify(args) => verify_config(args),
    };
    let summary = runner::run(&config)?;
    for file in &summary.files {
        eprintln!("wrote {}", file.display());
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
