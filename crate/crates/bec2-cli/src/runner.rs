//! Experiment runners. Each produces deterministic CSV files plus a JSON
//! manifest with resolved parameters, the route taken, convention notes
//! and output checksums.

use crate::config::{
    Experiment, InitState, K0Grid, Mode, RunConfig, ThetaGrid, Units,
};
use crate::csvio::{fmt_f64, CsvFile};
use crate::{svg, CliError};
use bec2::exact::{
    collapse_time, ground_index, mean_m_analytic, revival_period, wigner_row, EnergyLadder,
    Periodicity, RevivalPeriod,
};
use bec2::fock::{build_hamiltonian, m_operator, FockBasis, StateVector};
use bec2::model::{
    canonical_to_exact, coefficient_scale, exact_to_canonical, CanonicalParams, ExactParams,
};
use bec2::observables::{count_peaks, ground_entropy, ProbabilityRow};
use bec2::spectral::{eigh, evolve, SpectralDecomposition};
use bec2::verify::{run_acceptance, VerifyOptions};
use bec2::Complex64 as C64;
use serde_json::json;
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Residual threshold (relative to the coupling scale) for auto-routing to
/// the closed-form path.
const AUTO_ROUTE_TOL: f64 = 1e-9;
/// Relative spectral gap below which the numeric ground state is reported
/// as two branches.
const DEGENERACY_TOL: f64 = 1e-10;
/// Default prominence floor for peak counting.
const PEAK_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Exact,
    Numeric,
}

impl Route {
    fn as_str(self) -> &'static str {
        match self {
            Route::Exact => "exact",
            Route::Numeric => "numeric",
        }
    }
}

struct Resolved {
    canonical: CanonicalParams,
    exact: Option<ExactParams>,
    route: Route,
    residual: f64,
    scale: f64,
    degenerate_angle: bool,
}

pub struct RunSummary {
    pub out_dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub exit_ok: bool,
}

pub fn run(config: &RunConfig) -> Result<RunSummary, CliError> {
    match config.experiment {
        Experiment::Ground => run_ground(config),
        Experiment::Dynamics => run_dynamics(config),
        Experiment::Entanglement => run_entanglement(config),
        Experiment::Verify => run_verify(config),
    }
}

fn resolve_params(config: &RunConfig) -> Result<Resolved, CliError> {
    let params = config
        .params
        .as_ref()
        .ok_or_else(|| CliError::InvalidConfig("no model parameters given".into()))?;
    match params {
        crate::config::ParamsCfg::Exact(x) => {
            let exact = ExactParams {
                a1: x.a1,
                a2: x.a2,
                theta: x.theta,
                phi: x.phi,
                two_j: x.two_j,
            };
            exact
                .validate()
                .map_err(|e| CliError::InvalidConfig(e.to_string()))?;
            let canonical = exact_to_canonical(&exact);
            let scale = coefficient_scale(&canonical);
            let route = match config.mode {
                Mode::Numeric => Route::Numeric,
                Mode::Exact | Mode::Auto => Route::Exact,
            };
            Ok(Resolved {
                canonical,
                exact: Some(exact),
                route,
                residual: 0.0,
                scale,
                degenerate_angle: false,
            })
        }
        crate::config::ParamsCfg::Canonical(c) => {
            let canonical = CanonicalParams {
                a0: c.a0,
                delta_omega: c.delta_omega,
                lam: c.lam,
                phi: bec2::model::wrap_phi(c.phi),
                u_cross: c.u_cross,
                mu: c.mu,
                lambda2: c.lambda2,
                two_j: c.two_j,
            };
            canonical
                .validate()
                .map_err(|e| CliError::InvalidConfig(e.to_string()))?;
            let scale = coefficient_scale(&canonical);
            match canonical_to_exact(&canonical, AUTO_ROUTE_TOL) {
                Ok(rec) => {
                    let route = match config.mode {
                        Mode::Numeric => Route::Numeric,
                        Mode::Exact | Mode::Auto => Route::Exact,
                    };
                    Ok(Resolved {
                        canonical,
                        exact: Some(rec.params),
                        route,
                        residual: rec.residual,
                        scale,
                        degenerate_angle: rec.degenerate_angle,
                    })
                }
                Err(bec2::model::ModelError::NotSolvable { residual, scale, .. }) => {
                    if config.mode == Mode::Exact {
                        return Err(CliError::OffManifold { residual, scale });
                    }
                    Ok(Resolved {
                        canonical,
                        exact: None,
                        route: Route::Numeric,
                        residual,
                        scale,
                        degenerate_angle: false,
                    })
                }
                Err(e) => Err(CliError::InvalidConfig(e.to_string())),
            }
        }
    }
}

fn params_json(r: &Resolved) -> serde_json::Value {
    let c = &r.canonical;
    json!({
        "canonical": {
            "a0": c.a0, "delta_omega": c.delta_omega, "lam": c.lam, "phi": c.phi,
            "u_cross": c.u_cross, "mu": c.mu, "lambda2": c.lambda2, "two_j": c.two_j,
        },
        "exact": r.exact.as_ref().map(|x| json!({
            "a1": x.a1, "a2": x.a2, "theta": x.theta, "phi": x.phi, "two_j": x.two_j,
        })),
        "route": r.route.as_str(),
        "manifold_residual": r.residual,
        "coupling_scale": r.scale,
        "degenerate_angle": r.degenerate_angle,
    })
}

fn convention_json(units: Units) -> serde_json::Value {
    json!({
        "rotation_generator": "exp[(theta/2)(e^{-i phi} a b† - e^{i phi} a† b)] on the fixed sector",
        "u_cross": "a2 (1 - 3 cos^2 theta) / 2 from the operator identity; references quoting the halved value use u_alt = u_cross / 2",
        "relative_population": "m = a†a - b†b = 2k (physical); paper-style axes use k = m/2",
        "units": match units { Units::Physical => "physical", Units::Paper => "paper" },
        "hbar": 1.0,
    })
}

struct ManifestBuilder {
    start: Instant,
    outputs: Vec<serde_json::Value>,
    extras: serde_json::Map<String, serde_json::Value>,
}

impl ManifestBuilder {
    fn new() -> Self {
        Self { start: Instant::now(), outputs: Vec::new(), extras: serde_json::Map::new() }
    }

    fn add_file(&mut self, f: &CsvFile) {
        self.outputs.push(json!({
            "file": f.name,
            "sha256": f.sha256_hex(),
            "rows": f.rows(),
        }));
    }

    fn extra(&mut self, key: &str, value: serde_json::Value) {
        self.extras.insert(key.to_string(), value);
    }

    fn write(
        self,
        dir: &Path,
        experiment: &str,
        params: Option<serde_json::Value>,
        units: Units,
    ) -> Result<PathBuf, CliError> {
        let manifest = json!({
            "tool": "bec2",
            "version": env!("CARGO_PKG_VERSION"),
            "experiment": experiment,
            "parameters": params,
            "conventions": convention_json(units),
            "outputs": self.outputs,
            "extras": serde_json::Value::Object(self.extras),
            "wall_clock_s": self.start.elapsed().as_secs_f64(),
        });
        let path = dir.join("run_manifest.json");
        std::fs::write(&path, serde_json::to_string_pretty(&manifest)? .as_bytes())?;
        Ok(path)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::InvalidConfig(e.to_string())
    }
}

fn ensure_out_dir(config: &RunConfig) -> Result<PathBuf, CliError> {
    let dir = PathBuf::from(&config.out);
    std::fs::create_dir_all(&dir)?;
    Ok(dir)
}

// ---------------------------------------------------------------- ground

fn run_ground(config: &RunConfig) -> Result<RunSummary, CliError> {
    let dir = ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new();
    let resolved = resolve_params(config)?;
    let two_j = resolved.canonical.two_j;
    let basis = FockBasis::new(two_j);

    // (projection label or eigenvalue index, probabilities) per branch
    let mut branches: Vec<(String, Vec<f64>)> = Vec::new();
    match resolved.route {
        Route::Exact => {
            let x = resolved.exact.as_ref().expect("exact route carries coordinates");
            let members: Vec<i64> = match config.two_k0 {
                Some(two_k0) => vec![two_k0],
                None => {
                    let (two_k0, tie) = ground_index(x.a1, x.a2, two_j).map_err(|e| {
                        CliError::InvalidConfig(format!(
                            "ground selection undefined: {e}; pass an explicit k0"
                        ))
                    })?;
                    let mut m = vec![two_k0];
                    if tie {
                        let ladder = EnergyLadder { a1: x.a1, a2: x.a2 };
                        let e0 = ladder.energy_two_k(two_k0);
                        for i in 0..basis.dim() {
                            let tk = basis.two_k_at(i);
                            if tk != two_k0
                                && (ladder.energy_two_k(tk) - e0).abs()
                                    <= 1e-12 * (1.0 + e0.abs())
                            {
                                m.push(tk);
                            }
                        }
                    }
                    m
                }
            };
            for two_k0 in members {
                let probs = bec2::exact::ground_distribution(x, two_k0)
                    .map_err(|e| CliError::InvalidConfig(e.to_string()))?;
                branches.push((format!("{}", two_k0 as f64 / 2.0), probs));
            }
            manifest.extra("ground_two_k0", json!(branches.iter().map(|b| &b.0).collect::<Vec<_>>()));
        }
        Route::Numeric => {
            let h = build_hamiltonian(&resolved.canonical);
            let dec = eigh(&h).map_err(|e| CliError::Numerical(e.to_string()))?;
            let gap_tol = DEGENERACY_TOL * h.max_abs().max(f64::MIN_POSITIVE);
            let mut idx = vec![0usize];
            if dec.eigenvalues.len() > 1 && dec.eigenvalues[1] - dec.eigenvalues[0] <= gap_tol {
                idx.push(1);
            }
            for i in idx {
                let col = dec.eigenvectors.col(i);
                branches.push((format!("E{i}"), col.iter().map(|z| z.norm_sqr()).collect()));
            }
            manifest.extra("ground_energy", json!(dec.eigenvalues[0]));
            if dec.eigenvalues.len() > 1 {
                manifest.extra("spectral_gap", json!(dec.eigenvalues[1] - dec.eigenvalues[0]));
            }
        }
    }

    let branched = branches.len() > 1;
    let header = if branched {
        "k,m_physical,probability,branch"
    } else {
        "k,m_physical,probability"
    };
    let mut csv = CsvFile::new("ground.csv", header);
    for (bi, (_, probs)) in branches.iter().enumerate() {
        for (i, &p) in probs.iter().enumerate() {
            let k = basis.k_at(i);
            let mut fields = vec![fmt_f64(k), fmt_f64(2.0 * k), fmt_f64(p)];
            if branched {
                fields.push(bi.to_string());
            }
            csv.row(&fields);
        }
    }

    let peak_count = count_peaks(
        &ProbabilityRow { basis, probs: branches[0].1.clone() },
        PEAK_FLOOR,
    );
    manifest.extra("peak_count", json!(peak_count));
    manifest.extra("peak_prominence_floor", json!(PEAK_FLOOR));
    manifest.extra("branch_count", json!(branches.len()));

    manifest.add_file(&csv);
    let mut files = vec![csv.write_to(&dir)?];
    if config.emit_svg {
        let points: Vec<(f64, f64)> = branches[0]
            .1
            .iter()
            .enumerate()
            .map(|(i, &p)| (basis.k_at(i), p))
            .collect();
        let art = svg::line_plot(&points, "ground-state number distribution", "k", "P(k)");
        let path = dir.join("ground.svg");
        std::fs::write(&path, art)?;
        files.push(path);
    }
    files.push(manifest.write(&dir, "ground", Some(params_json(&resolved)), config.units)?);
    Ok(RunSummary { out_dir: dir, files, exit_ok: true })
}

// -------------------------------------------------------------- dynamics

/// Build the initial condition. Exact route: a coefficient row over the
/// rotated eigenbasis. Numeric route: amplitudes over the number basis.
fn initial_coefficients(
    init: &InitState,
    two_j: u32,
) -> Result<Vec<C64>, CliError> {
    let basis = FockBasis::new(two_j);
    match init {
        InitState::Dicke { two_k } => {
            let idx = basis.index_of_two_k(*two_k).ok_or_else(|| {
                CliError::InvalidConfig(format!(
                    "init projection two_k = {two_k} outside the two_j = {two_j} sector"
                ))
            })?;
            let mut v = vec![C64::new(0.0, 0.0); basis.dim()];
            v[idx] = C64::new(1.0, 0.0);
            Ok(v)
        }
        InitState::Rotated { theta0, two_k } => {
            let row = wigner_row(two_j, *two_k, *theta0)
                .map_err(|e| CliError::InvalidConfig(e.to_string()))?;
            Ok(row.amps.iter().map(|&a| C64::new(a, 0.0)).collect())
        }
        InitState::File { path } => {
            let text = std::fs::read_to_string(path)?;
            let mut v = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let (re, im) = line.split_once(',').ok_or_else(|| {
                    CliError::InvalidConfig(format!("{path}:{}: expected re,im", lineno + 1))
                })?;
                let re: f64 = re.trim().parse().map_err(|_| {
                    CliError::InvalidConfig(format!("{path}:{}: bad real part", lineno + 1))
                })?;
                let im: f64 = im.trim().parse().map_err(|_| {
                    CliError::InvalidConfig(format!("{path}:{}: bad imaginary part", lineno + 1))
                })?;
                v.push(C64::new(re, im));
            }
            if v.len() != basis.dim() {
                return Err(CliError::InvalidConfig(format!(
                    "{path}: {} amplitudes for a dimension-{} sector",
                    v.len(),
                    basis.dim()
                )));
            }
            let norm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if (norm2 - 1.0).abs() > 1e-6 {
                return Err(CliError::InvalidConfig(format!(
                    "{path}: amplitude norm^2 = {norm2} is not 1"
                )));
            }
            let norm = norm2.sqrt();
            Ok(v.into_iter().map(|z| z / norm).collect())
        }
    }
}

fn init_description(init: &InitState) -> serde_json::Value {
    match init {
        InitState::Dicke { two_k } => json!({"kind": "dicke", "two_k": two_k}),
        InitState::Rotated { theta0, two_k } => {
            json!({"kind": "rotated", "theta0": theta0, "two_k": two_k})
        }
        InitState::File { path } => json!({"kind": "file", "path": path}),
    }
}

fn run_dynamics(config: &RunConfig) -> Result<RunSummary, CliError> {
    let dir = ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new();
    let resolved = resolve_params(config)?;
    let two_j = resolved.canonical.two_j;
    let time = config
        .time
        .ok_or_else(|| CliError::InvalidConfig("dynamics needs a time grid".into()))?;
    let t_max_ok = time.t_max.is_finite() && time.t_max > 0.0;
    if !t_max_ok || time.n_steps < 2 {
        return Err(CliError::InvalidConfig(
            "time grid needs t_max > 0 and at least 2 steps".into(),
        ));
    }
    let init = config
        .init
        .clone()
        .unwrap_or(InitState::Rotated { theta0: PI / 2.0, two_k: two_j as i64 });
    let coeffs = initial_coefficients(&init, two_j)?;
    let units_factor = match config.units {
        Units::Physical => 1.0,
        Units::Paper => 0.5,
    };

    let ts: Vec<f64> = (0..time.n_steps)
        .map(|i| time.t_max * i as f64 / (time.n_steps - 1) as f64)
        .collect();

    let trace: Vec<f64> = match resolved.route {
        Route::Exact => {
            let x = resolved.exact.as_ref().expect("exact route carries coordinates");
            ts.iter()
                .map(|&t| mean_m_analytic(x, &coeffs, t))
                .collect::<Result<_, _>>()
                .map_err(|e| CliError::InvalidConfig(e.to_string()))?
        }
        Route::Numeric => {
            let h = build_hamiltonian(&resolved.canonical);
            let dec: SpectralDecomposition =
                eigh(&h).map_err(|e| CliError::Numerical(e.to_string()))?;
            let mut s0 = StateVector::new(h.basis, coeffs.clone())
                .map_err(|e| CliError::InvalidConfig(e.to_string()))?;
            s0.normalize();
            let mop = m_operator(h.basis);
            ts.iter()
                .map(|&t| {
                    evolve(&dec, &s0, t)
                        .map(|s| mop.expectation(&s))
                        .map_err(|e| CliError::Numerical(e.to_string()))
                })
                .collect::<Result<_, _>>()?
        }
    };

    let mut csv = CsvFile::new("dynamics.csv", "t,mean_m");
    for (&t, &m) in ts.iter().zip(trace.iter()) {
        csv.row(&[fmt_f64(t), fmt_f64(m * units_factor)]);
    }

    // collapse/revival markers, available whenever exact coordinates are known
    let mut markers = CsvFile::new("markers.csv", "name,value");
    let mut aperiodic = false;
    let mut period_json = serde_json::Value::Null;
    if let Some(x) = &resolved.exact {
        if x.a2 != 0.0 {
            for n in 0..4u32 {
                let tr = collapse_time(x.a2, n).expect("a2 != 0");
                markers.row(&[format!("t_r_{n}"), fmt_f64(tr)]);
            }
            match revival_period(x.a1, x.a2).expect("a2 != 0") {
                Periodicity::Periodic(RevivalPeriod { p, q, p_r, t1, approx }) => {
                    markers.row(&["p".into(), p.to_string()]);
                    markers.row(&["q".into(), q.to_string()]);
                    markers.row(&["p_r".into(), p_r.to_string()]);
                    markers.row(&["t1".into(), fmt_f64(t1)]);
                    period_json = json!({
                        "p": p, "q": q, "p_r": p_r, "t1": t1,
                        "ratio_reconstructed_from_floats": approx,
                    });
                }
                Periodicity::NotPeriodic => {
                    aperiodic = true;
                    period_json = json!({"rational": false});
                }
            }
        }
    }

    manifest.extra("initial_state", init_description(&init));
    manifest.extra("revival", period_json);
    manifest.add_file(&csv);
    manifest.add_file(&markers);
    let mut files = vec![csv.write_to(&dir)?, markers.write_to(&dir)?];
    if config.emit_svg {
        let points: Vec<(f64, f64)> = ts
            .iter()
            .zip(trace.iter())
            .map(|(&t, &m)| (t, m * units_factor))
            .collect();
        let ylabel = match config.units {
            Units::Physical => "<a†a - b†b>",
            Units::Paper => "<Jz>",
        };
        let art = svg::line_plot(&points, "relative population", "t", ylabel);
        let path = dir.join("dynamics.svg");
        std::fs::write(&path, art)?;
        files.push(path);
    }
    files.push(manifest.write(&dir, "dynamics", Some(params_json(&resolved)), config.units)?);
    if aperiodic {
        return Err(CliError::Aperiodic);
    }
    Ok(RunSummary { out_dir: dir, files, exit_ok: true })
}

// ---------------------------------------------------------- entanglement

fn thread_cap(n_items: usize) -> usize {
    let hw = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cap = std::env::var("BEC2_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(hw);
    cap.min(n_items.max(1))
}

fn run_entanglement(config: &RunConfig) -> Result<RunSummary, CliError> {
    let dir = ensure_out_dir(config)?;
    let mut manifest = ManifestBuilder::new();
    let base_two_j = config
        .params
        .as_ref()
        .map(|p| p.two_j())
        .or_else(|| {
            config.sweep.as_ref().and_then(|s| s.two_j.as_ref().and_then(|v| v.first().copied()))
        })
        .ok_or_else(|| CliError::InvalidConfig("no spin label given".into()))?;

    let sweep = config.sweep.clone();
    let theta_grid = sweep
        .as_ref()
        .and_then(|s| s.theta)
        .unwrap_or(ThetaGrid { start: 0.0, end: PI, n: 181 });
    if theta_grid.n == 0 {
        return Err(CliError::InvalidConfig("theta grid has zero points".into()));
    }
    if !(0.0..=PI).contains(&theta_grid.start) || !(0.0..=PI).contains(&theta_grid.end) {
        return Err(CliError::InvalidConfig("theta grid must lie inside [0, pi]".into()));
    }
    let j_list: Vec<u32> = sweep
        .as_ref()
        .and_then(|s| s.two_j.clone())
        .unwrap_or_else(|| vec![base_two_j]);
    if j_list.is_empty() {
        return Err(CliError::InvalidConfig("spin grid is empty".into()));
    }
    let k0_grid = sweep
        .as_ref()
        .and_then(|s| s.two_k0.clone())
        .unwrap_or(K0Grid::Keyword("edge".into()));

    // flatten the sweep: (theta, two_k0, two_j) in fixed row order
    let thetas = theta_grid.values();
    let mut points: Vec<(f64, i64, u32)> = Vec::new();
    for &two_j in &j_list {
        let k0s: Vec<i64> = match &k0_grid {
            K0Grid::Keyword(word) => match word.as_str() {
                "edge" => vec![two_j as i64],
                "all" => (0..=two_j as i64).map(|i| 2 * i - two_j as i64).collect(),
                other => {
                    return Err(CliError::InvalidConfig(format!(
                        "k0 grid keyword {other:?} (expected \"all\" or \"edge\")"
                    )))
                }
            },
            K0Grid::List(list) => {
                for &two_k0 in list {
                    if FockBasis::new(two_j).index_of_two_k(two_k0).is_none() {
                        return Err(CliError::InvalidConfig(format!(
                            "two_k0 = {two_k0} invalid for two_j = {two_j}"
                        )));
                    }
                }
                list.clone()
            }
        };
        for &two_k0 in &k0s {
            for &theta in &thetas {
                points.push((theta, two_k0, two_j));
            }
        }
    }

    // grid points are independent; BEC2_THREADS caps the worker count
    let workers = thread_cap(points.len());
    let mut values = vec![0.0f64; points.len()];
    if workers <= 1 {
        for (slot, &(theta, two_k0, two_j)) in values.iter_mut().zip(points.iter()) {
            *slot = ground_entropy(theta, two_j, two_k0)
                .map_err(|e| CliError::InvalidConfig(e.to_string()))?
                .bits;
        }
    } else {
        let chunk = points.len().div_ceil(workers);
        let results: Vec<Result<Vec<f64>, String>> = std::thread::scope(|scope| {
            let handles: Vec<_> = points
                .chunks(chunk)
                .map(|part| {
                    scope.spawn(move || {
                        part.iter()
                            .map(|&(theta, two_k0, two_j)| {
                                ground_entropy(theta, two_j, two_k0)
                                    .map(|e| e.bits)
                                    .map_err(|e| e.to_string())
                            })
                            .collect()
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut cursor = 0usize;
        for part in results {
            let part = part.map_err(CliError::InvalidConfig)?;
            values[cursor..cursor + part.len()].copy_from_slice(&part);
            cursor += part.len();
        }
    }

    let mut csv = CsvFile::new("entropy.csv", "theta,k0,j,entropy_bits");
    for (&(theta, two_k0, two_j), &bits) in points.iter().zip(values.iter()) {
        csv.row(&[
            fmt_f64(theta),
            fmt_f64(two_k0 as f64 / 2.0),
            fmt_f64(two_j as f64 / 2.0),
            fmt_f64(bits),
        ]);
    }

    // argmax over theta per (j, k0) slice
    let mut argmax = Vec::new();
    let mut i = 0usize;
    while i < points.len() {
        let (_, two_k0, two_j) = points[i];
        let slice_end = i + thetas.len();
        let (best_idx, best) = values[i..slice_end]
            .iter()
            .enumerate()
            .fold((0usize, f64::NEG_INFINITY), |acc, (n, &v)| {
                if v > acc.1 {
                    (n, v)
                } else {
                    acc
                }
            });
        argmax.push(json!({
            "two_j": two_j,
            "two_k0": two_k0,
            "theta_argmax": thetas[best_idx],
            "entropy_bits": best,
        }));
        i = slice_end;
    }
    manifest.extra("theta_argmax_per_slice", serde_json::Value::Array(argmax));
    manifest.extra("workers", json!(workers));

    manifest.add_file(&csv);
    let mut files = vec![csv.write_to(&dir)?];
    if config.emit_svg {
        let first_j = j_list[0];
        let rows: Vec<(i64, usize)> = points
            .iter()
            .enumerate()
            .filter(|(_, &(_, _, two_j))| two_j == first_j)
            .filter(|(i, _)| i % thetas.len() == 0)
            .map(|(i, &(_, two_k0, _))| (two_k0, i))
            .collect();
        let art = if rows.len() > 1 {
            let ys: Vec<f64> = rows.iter().map(|&(k, _)| k as f64 / 2.0).collect();
            let grid: Vec<Vec<f64>> = rows
                .iter()
                .map(|&(_, start)| values[start..start + thetas.len()].to_vec())
                .collect();
            svg::heatmap(&thetas, &ys, &grid, "mode entanglement", "theta", "k0")
        } else {
            let pts: Vec<(f64, f64)> = thetas
                .iter()
                .zip(values.iter())
                .map(|(&t, &v)| (t, v))
                .collect();
            svg::line_plot(&pts, "mode entanglement", "theta", "entropy (bits)")
        };
        let path = dir.join("entropy.svg");
        std::fs::write(&path, art)?;
        files.push(path);
    }
    let params = config.params.as_ref().map(|_| {
        resolve_params(config).map(|r| params_json(&r)).unwrap_or(serde_json::Value::Null)
    });
    files.push(manifest.write(&dir, "entanglement", params, config.units)?);
    Ok(RunSummary { out_dir: dir, files, exit_ok: true })
}

// ------------------------------------------------------------------ verify

fn run_verify(config: &RunConfig) -> Result<RunSummary, CliError> {
    let dir = ensure_out_dir(config)?;
    let start = Instant::now();
    let opts = VerifyOptions { perturb_mu: config.perturb_mu.unwrap_or(0.0) };
    let report = run_acceptance(&opts);
    for c in &report.criteria {
        println!("{}", c.line());
    }
    let convention = &report.u_cross_convention;
    let value = json!({
        "tool": "bec2",
        "version": env!("CARGO_PKG_VERSION"),
        "all_passed": report.all_passed(),
        "perturb_mu": opts.perturb_mu,
        "criteria": report.criteria.iter().map(|c| json!({
            "id": c.id,
            "name": c.name,
            "passed": c.passed,
            "measured": c.measured,
            "threshold": c.threshold,
            "detail": c.detail,
        })).collect::<Vec<_>>(),
        "u_cross_convention": {
            "adopted": convention.adopted,
            "dictionary": convention.dictionary,
            "identity_residual_adopted": convention.residual_derived,
            "identity_residual_halved": convention.residual_halved,
        },
        "wall_clock_s": start.elapsed().as_secs_f64(),
    });
    let path = dir.join("verify_report.json");
    std::fs::write(&path, serde_json::to_string_pretty(&value)?.as_bytes())?;
    if report.all_passed() {
        println!("verification passed ({} criteria)", report.criteria.len());
        Ok(RunSummary { out_dir: dir, files: vec![path], exit_ok: true })
    } else {
        println!("verification FAILED");
        Err(CliError::VerifyFailed)
    }
}
