//! Acceptance checks tying the closed-form and numerical routes together.
//!
//! Each criterion reports a measured figure against its pinned threshold;
//! the CLI `verify` subcommand and the `acceptance` integration test both
//! run through this module. `VerifyOptions::perturb_mu` injects a coupling
//! defect so the suite can demonstrate that it actually fails when the
//! operator identity breaks.

use crate::exact::{
    collapse_time, eigenstate, lab_dicke_coeffs, mean_m_analytic, revival_period, wigner_row,
    Periodicity,
};
use crate::fock::{build_hamiltonian, m_operator, FockBasis, StateVector};
use crate::model::{
    canonical_to_exact, coefficient_scale, exact_to_canonical, solvability_residual, ExactParams,
};
use crate::observables::{count_peaks, ground_entropy, ProbabilityRow};
use crate::spectral::{conjugate_oracle, eigh, evolve, rotation_unitary, RotationSpec};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Additive defect injected into the μ coupling before the conjugation
    /// identity check; a negative control for the suite itself.
    pub perturb_mu: f64,
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: &'static str,
    pub name: &'static str,
    pub passed: bool,
    /// Worst measured figure (residual, deviation, ...), when meaningful.
    pub measured: Option<f64>,
    /// Threshold the figure was held against, when meaningful.
    pub threshold: Option<f64>,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        match (self.measured, self.threshold) {
            (Some(m), Some(t)) => {
                format!("{} {} [{}] measured {:.3e} vs {:.1e}: {}", self.id, status, self.name, m, t, self.detail)
            }
            _ => format!("{} {} [{}] {}", self.id, status, self.name, self.detail),
        }
    }
}

/// Which cross-collision convention the conjugation identity selects.
#[derive(Clone, Debug)]
pub struct UCrossConventionReport {
    /// Identity residual with `u = a2(1−3cos²θ)/2` (the adopted form).
    pub residual_derived: f64,
    /// Identity residual with the halved coefficient `u/2` quoted by some
    /// references.
    pub residual_halved: f64,
    pub adopted: &'static str,
    pub dictionary: &'static str,
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub criteria: Vec<CriterionResult>,
    pub u_cross_convention: UCrossConventionReport,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

pub fn run_acceptance(opts: &VerifyOptions) -> VerifyReport {
    let criteria = vec![
        ac01_conjugation_identity(opts),
        ac02_manifold_spectrum(),
        ac03_analytic_vs_numeric_dynamics(),
        ac04_revival_periods(),
        ac05_collapse_time(),
        ac06_distribution_morphology(),
        ac07_self_trapping_dichotomy(),
        ac08_entropy_maximum_angle(),
        ac09_entropy_local_minimum(),
        ac10_entropy_growth(),
        ac11_row_stability(),
        ac12_mapping_roundtrip(),
        ac13_convention_report().0,
    ];
    VerifyReport { criteria, u_cross_convention: ac13_convention_report().1 }
}

pub fn ac01_conjugation_identity(opts: &VerifyOptions) -> CriterionResult {
    let mut worst = 0.0f64;
    let mut worst_case = String::new();
    for &two_j in &[2u32, 4, 6, 8] {
        for &theta in &[0.3, 1.0, 1.35046, 2.5] {
            for &phi in &[0.0, 0.7] {
                for &a1 in &[0.0, 2.0] {
                    for &a2 in &[1.0, -3.0] {
                        let x = ExactParams { a1, a2, theta, phi, two_j };
                        let oracle = conjugate_oracle(&x).expect("within oracle cap").dense_view();
                        let mut c = exact_to_canonical(&x);
                        c.mu += opts.perturb_mu;
                        let built = build_hamiltonian(&c).dense_view();
                        let scale = oracle.max_abs().max(f64::MIN_POSITIVE);
                        let rel = built.max_abs_diff(&oracle) / scale;
                        if rel > worst {
                            worst = rel;
                            worst_case = format!("two_j={two_j} theta={theta} phi={phi} a1={a1} a2={a2}");
                        }
                    }
                }
            }
        }
    }
    CriterionResult {
        id: "AC-1",
        name: "conjugation identity",
        passed: worst <= 1e-10,
        measured: Some(worst),
        threshold: Some(1e-10),
        detail: format!("worst grid point: {worst_case}"),
    }
}

pub fn ac02_manifold_spectrum() -> CriterionResult {
    let points = [
        (3.0, 1.0, 0.4, 0.0),
        (0.0, -2.0, 1.35046, 0.7),
        (5.0, 0.5, 2.6, 1.2),
        (1.0, 1.0, 0.9, 3.1),
        (4.0, -1.5, 1.9, 5.5),
    ];
    let mut worst = 0.0f64;
    for &(a1, a2, theta, phi) in &points {
        let x = ExactParams { a1, a2, theta, phi, two_j: 200 };
        let h = build_hamiltonian(&exact_to_canonical(&x));
        let dec = eigh(&h).expect("sector diagonalization");
        let basis = h.basis;
        let mut expected: Vec<f64> = (0..basis.dim())
            .map(|i| {
                let k = basis.k_at(i);
                a1 * k + a2 * k * k
            })
            .collect();
        expected.sort_by(|p, q| p.partial_cmp(q).unwrap());
        let scale = expected.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(1.0);
        for (got, want) in dec.eigenvalues.iter().zip(expected.iter()) {
            worst = worst.max((got - want).abs() / scale);
        }
    }
    CriterionResult {
        id: "AC-2",
        name: "spectrum equals energy ladder",
        passed: worst <= 1e-9,
        measured: Some(worst),
        threshold: Some(1e-9),
        detail: "j = 100, 5 manifold points".into(),
    }
}

pub fn ac03_analytic_vs_numeric_dynamics() -> CriterionResult {
    let x = ExactParams { a1: 49.0, a2: 1.0, theta: 1.35, phi: 0.0, two_j: 40 };
    // deterministic pseudo-random real coefficient row
    let dim = 41usize;
    let mut state = 0x5eed_ac03_u64;
    let mut coeffs: Vec<C64> = (0..dim)
        .map(|_| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            C64::new(((state >> 11) as f64 / (1u64 << 53) as f64) - 0.5, 0.0)
        })
        .collect();
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    coeffs.iter_mut().for_each(|c| *c /= norm);

    let h = build_hamiltonian(&exact_to_canonical(&x));
    let dec = eigh(&h).expect("sector diagonalization");
    let basis = h.basis;
    let mut s0 = StateVector::zero(basis);
    for (i, cf) in coeffs.iter().enumerate() {
        let psi = eigenstate(&x, basis.two_k_at(i)).expect("in-sector projection");
        for (dst, src) in s0.amps.iter_mut().zip(psi.amps.iter()) {
            *dst += cf * src;
        }
    }
    let mop = m_operator(basis);
    let mut worst = 0.0f64;
    for i in 0..400 {
        let t = 3.0 * PI * i as f64 / 399.0;
        let numeric = mop.expectation(&evolve(&dec, &s0, t).expect("same basis"));
        let analytic = mean_m_analytic(&x, &coeffs, t).expect("normalized row");
        worst = worst.max((numeric - analytic).abs());
    }
    let bound = 1e-7 * 40.0;
    CriterionResult {
        id: "AC-3",
        name: "analytic vs numeric relative population",
        passed: worst <= bound,
        measured: Some(worst),
        threshold: Some(bound),
        detail: "j = 20, 400 points on [0, 3pi]".into(),
    }
}

pub fn ac04_revival_periods() -> CriterionResult {
    let cases: [(f64, i64); 4] = [(49.0, 1), (50.0, 2), (101.0 / 3.0, 3), (59.0 / 2.0, 4)];
    let mut ok = true;
    let mut detail = String::new();
    let mut worst = 0.0f64;
    for &(a1, want_pr) in &cases {
        match revival_period(a1, 1.0) {
            Ok(Periodicity::Periodic(rp)) => {
                if rp.p_r != want_pr {
                    ok = false;
                    detail.push_str(&format!("a1={a1}: p_r={} want {want_pr}; ", rp.p_r));
                }
                // trace repeats after t1
                let x = ExactParams { a1, a2: 1.0, theta: 1.35, phi: 0.0, two_j: 60 };
                let coeffs: Vec<C64> = wigner_row(60, 60, PI / 2.0)
                    .expect("top row")
                    .amps
                    .iter()
                    .map(|&a| C64::new(a, 0.0))
                    .collect();
                for i in 0..200 {
                    let t = rp.t1 * i as f64 / 199.0;
                    let m0 = mean_m_analytic(&x, &coeffs, t).expect("normalized");
                    let m1 = mean_m_analytic(&x, &coeffs, t + rp.t1).expect("normalized");
                    worst = worst.max((m0 - m1).abs());
                }
            }
            other => {
                ok = false;
                detail.push_str(&format!("a1={a1}: unexpected {other:?}; "));
            }
        }
    }
    let bound = 1e-6 * 60.0;
    CriterionResult {
        id: "AC-4",
        name: "revival periods and trace periodicity",
        passed: ok && worst <= bound,
        measured: Some(worst),
        threshold: Some(bound),
        detail: if detail.is_empty() { "p_r = 1,2,3,4 reproduced; j = 30 trace".into() } else { detail },
    }
}

pub fn ac05_collapse_time() -> CriterionResult {
    let tr = collapse_time(1.0, 0).expect("a2 != 0");
    let formula_ok = (tr - PI / 2.0).abs() < 1e-15;

    // oscillation amplitude at the collapse time, binomial coefficient row
    let x = ExactParams { a1: 49.0, a2: 1.0, theta: 1.35, phi: 0.0, two_j: 200 };
    let coeffs: Vec<C64> = wigner_row(200, 200, PI / 2.0)
        .expect("top row")
        .amps
        .iter()
        .map(|&a| C64::new(a, 0.0))
        .collect();
    let dc = {
        // stationary part: drop the off-diagonal sum by evaluating with
        // sinθ-term averaged out over a period of the fastest phase — the
        // constant term is 2cosθ Σ k|C_k|², computable directly
        let basis = FockBasis::new(200);
        let theta_cos = 1.35f64.cos();
        2.0 * theta_cos
            * coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| basis.k_at(i) * c.norm_sqr())
                .sum::<f64>()
    };
    let osc0 = (mean_m_analytic(&x, &coeffs, 0.0).unwrap() - dc).abs();
    let osc_tr = (mean_m_analytic(&x, &coeffs, tr).unwrap() - dc).abs();
    let ratio = osc_tr / osc0;
    CriterionResult {
        id: "AC-5",
        name: "collapse time and amplitude suppression",
        passed: formula_ok && ratio <= 0.05,
        measured: Some(ratio),
        threshold: Some(0.05),
        detail: format!("t_r(0) = {tr:.6} (pi/2), oscillation ratio at t_r"),
    }
}

pub fn ac06_distribution_morphology() -> CriterionResult {
    let two_j = 2000u32;
    let theta = 1.0;
    let basis = FockBasis::new(two_j);
    let count_at = |two_k0: i64| {
        let row = wigner_row(two_j, two_k0, theta).expect("in-sector");
        count_peaks(&ProbabilityRow { basis, probs: row.probabilities() }, 1e-6)
    };
    let counts: Vec<usize> = [2000i64, 1954, 1800, 1400, 0].iter().map(|&k| count_at(k)).collect();
    let top_single = counts[0] == 1;
    let cat_multi = counts[1] >= 2;
    let monotone = counts.windows(2).all(|w| w[1] >= w[0]);
    CriterionResult {
        id: "AC-6",
        name: "distribution morphology at j = 1000",
        passed: top_single && cat_multi && monotone,
        measured: Some(counts[1] as f64),
        threshold: Some(2.0),
        detail: format!("peak counts along k0 = 1000, 977, 900, 700, 0: {counts:?}"),
    }
}

pub fn ac07_self_trapping_dichotomy() -> CriterionResult {
    // collision-dominated bare model: population pinned in one mode
    let two_j = 200u32;
    let c = crate::model::CanonicalParams {
        a0: 0.0,
        delta_omega: 0.0,
        lam: 1.0,
        phi: 0.0,
        u_cross: 100.0,
        mu: 0.0,
        lambda2: 0.0,
        two_j,
    };
    let h = build_hamiltonian(&c);
    let dec = eigh(&h).expect("sector diagonalization");
    let s0 = StateVector::basis_vector(h.basis, two_j as usize);
    let mop = m_operator(h.basis);
    let mut trapped_min = f64::INFINITY;
    for i in 0..=200 {
        let t = 50.0 * i as f64 / 200.0;
        let m = mop.expectation(&evolve(&dec, &s0, t).expect("same basis"));
        trapped_min = trapped_min.min(m);
    }
    let trapped_ok = trapped_min >= 0.8 * two_j as f64;

    // equal-ratio collision model at θ = π/2: population crosses zero
    let x = ExactParams { a1: 1.0, a2: 100.0, theta: PI / 2.0, phi: 0.0, two_j };
    let coeffs = lab_dicke_coeffs(&x, two_j as i64).expect("edge state");
    let mut released_min = f64::INFINITY;
    for i in 0..=400 {
        let t = 0.2 * i as f64 / 400.0;
        released_min = released_min.min(mean_m_analytic(&x, &coeffs, t).expect("normalized"));
    }
    let released_ok = released_min < 0.0;
    CriterionResult {
        id: "AC-7",
        name: "self-trapping dichotomy",
        passed: trapped_ok && released_ok,
        measured: Some(trapped_min / (two_j as f64)),
        threshold: Some(0.8),
        detail: format!(
            "bare model min <m>/2j = {:.3}; collision model min <m> = {:.3}",
            trapped_min / two_j as f64,
            released_min
        ),
    }
}

pub fn ac08_entropy_maximum_angle() -> CriterionResult {
    let mut ok = true;
    let mut detail = String::new();
    for &two_j in &[10u32, 100] {
        let mut argmax = 0usize;
        let mut best = -1.0f64;
        for i in 0..181 {
            let theta = PI * i as f64 / 180.0;
            let s = ground_entropy(theta, two_j, two_j as i64).expect("edge state").bits;
            if s > best {
                best = s;
                argmax = i;
            }
        }
        if (argmax as i64 - 90).abs() > 1 {
            ok = false;
        }
        let zero = ground_entropy(0.0, two_j, two_j as i64).expect("edge state").bits;
        if zero != 0.0 {
            ok = false;
        }
        detail.push_str(&format!("two_j={two_j}: argmax index {argmax}, S(0)={zero}; "));
    }
    CriterionResult {
        id: "AC-8",
        name: "entropy maximum at theta = pi/2",
        passed: ok,
        measured: None,
        threshold: None,
        detail,
    }
}

pub fn ac09_entropy_local_minimum() -> CriterionResult {
    let mut ok = true;
    let mut detail = String::new();
    for &two_j in &[100u32, 1000] {
        let s0 = ground_entropy(PI / 2.0, two_j, 0).expect("center").bits;
        let s1 = ground_entropy(PI / 2.0, two_j, 2).expect("offset").bits;
        if s0 >= s1 {
            ok = false;
        }
        detail.push_str(&format!("two_j={two_j}: S(0)={s0:.6} < S(1)={s1:.6}; "));
    }
    CriterionResult {
        id: "AC-9",
        name: "entropy local minimum at k0 = 0",
        passed: ok,
        measured: None,
        threshold: None,
        detail,
    }
}

pub fn ac10_entropy_growth() -> CriterionResult {
    let sizes = [10u32, 50, 100, 500, 1000];
    let values: Vec<f64> = sizes
        .iter()
        .map(|&two_j| ground_entropy(PI / 2.0, two_j, 0).expect("center").bits)
        .collect();
    let increasing = values.windows(2).all(|w| w[1] > w[0]);
    CriterionResult {
        id: "AC-10",
        name: "entropy grows with particle number",
        passed: increasing,
        measured: None,
        threshold: None,
        detail: format!("S(pi/2, j, 0) over 2j = {sizes:?}: {values:?}"),
    }
}

pub fn ac11_row_stability() -> CriterionResult {
    // unit norm up to j = 10^4
    let mut worst_norm = 0.0f64;
    for &two_j in &[200u32, 2000, 20000] {
        for &theta in &[0.3, 1.0, 2.5] {
            for two_k0 in [two_j as i64, 0, -(two_j as i64)] {
                let row = wigner_row(two_j, two_k0, theta).expect("in-sector");
                let norm2: f64 = row.amps.iter().map(|a| a * a).sum();
                worst_norm = worst_norm.max((norm2 - 1.0).abs());
            }
        }
    }

    // rotation-matrix oracle at j <= 20
    let mut worst_col = 0.0f64;
    for &two_j in &[39u32, 40] {
        for &theta in &[0.3, 1.35046, 2.5] {
            let u = rotation_unitary(&RotationSpec { theta, phi: 0.0, two_j });
            let basis = FockBasis::new(two_j);
            for col in 0..basis.dim() {
                let row = wigner_row(two_j, basis.two_k_at(col), theta).expect("in-sector");
                for r in 0..basis.dim() {
                    worst_col = worst_col.max((row.amps[r] - u.at(r, col).re).abs());
                }
            }
        }
    }

    // binomial closed form at j = 500, k0 = j
    let two_j = 1000u32;
    let theta = 1.0f64;
    let row = wigner_row(two_j, two_j as i64, theta).expect("edge row");
    let mut lnf = vec![0.0f64; two_j as usize + 1];
    let mut acc = 0.0f64;
    let mut comp = 0.0f64;
    for (i, slot) in lnf.iter_mut().enumerate().skip(1) {
        let term = (i as f64).ln();
        let y = term - comp;
        let t = acc + y;
        comp = (t - acc) - y;
        acc = t;
        *slot = acc;
    }
    let lc2 = 2.0 * (theta / 2.0).cos().ln();
    let ls2 = 2.0 * (theta / 2.0).sin().ln();
    let mut worst_binomial = 0.0f64;
    for (i, a) in row.amps.iter().enumerate() {
        let ln_p = lnf[two_j as usize] - lnf[i] - lnf[two_j as usize - i]
            + i as f64 * lc2
            + (two_j as usize - i) as f64 * ls2;
        worst_binomial = worst_binomial.max((a * a - ln_p.exp()).abs());
    }

    let passed = worst_norm <= 1e-10 && worst_col <= 1e-10 && worst_binomial <= 1e-12;
    CriterionResult {
        id: "AC-11",
        name: "rotated-row stability",
        passed,
        measured: Some(worst_norm.max(worst_col).max(worst_binomial)),
        threshold: Some(1e-10),
        detail: format!(
            "norm defect {worst_norm:.2e} (to j=1e4); oracle defect {worst_col:.2e} (j<=20); binomial defect {worst_binomial:.2e} (j=500)"
        ),
    }
}

pub fn ac12_mapping_roundtrip() -> CriterionResult {
    // roundtrip + on-manifold residual on a deterministic sample
    let mut worst_round = 0.0f64;
    let mut worst_resid = 0.0f64;
    let mut state = 0x5eed_ac12_u64;
    let mut next = || {
        state = state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (state >> 11) as f64 / (1u64 << 53) as f64
    };
    for _ in 0..50 {
        let x = ExactParams {
            a1: 1e3 * next().max(1e-6),
            a2: 1e3 * (2.0 * next() - 1.0),
            theta: 1e-3 + (PI - 2e-3) * next(),
            phi: 2.0 * PI * next() * 0.999,
            two_j: (next() * 100.0) as u32,
        };
        let c = exact_to_canonical(&x);
        let scale = x.a1.abs().max(x.a2.abs());
        match canonical_to_exact(&c, 1e-9) {
            Ok(rec) => {
                worst_round = worst_round
                    .max((rec.params.a1 - x.a1).abs() / scale)
                    .max((rec.params.a2 - x.a2).abs() / scale)
                    .max((rec.params.theta - x.theta).abs());
            }
            Err(_) => worst_round = f64::INFINITY,
        }
        worst_resid = worst_resid
            .max(solvability_residual(&c) / coefficient_scale(&c).max(f64::MIN_POSITIVE));
    }

    // off-manifold fixture: doubled μ must be rejected
    let x = ExactParams { a1: 2.0, a2: 4.0, theta: 0.9, phi: 0.3, two_j: 20 };
    let mut fixture = exact_to_canonical(&x);
    fixture.mu *= 2.0;
    let fixture_resid = solvability_residual(&fixture) / coefficient_scale(&fixture);
    let fixture_ok = fixture_resid > 1e-9;

    // inversion of the reference detuning/coupling pair, with the
    // cross-collision value as quoted next to it (halved convention, hence
    // the factor 2); expected angle frozen from atan2(487, 109) = 1.3506060
    // and amplitude from 2·hypot(109, 487) = 998.0982
    let theta_ref = f64::atan2(487.0, 109.0);
    let a1_ref = 2.0 * f64::hypot(109.0, 487.0);
    let manifold = exact_to_canonical(&ExactParams {
        a1: a1_ref,
        a2: 1.0,
        theta: theta_ref,
        phi: 0.0,
        two_j: 2000,
    });
    let probe = crate::model::CanonicalParams {
        delta_omega: 109.0,
        lam: 487.0,
        u_cross: 2.0 * 0.214027,
        ..manifold
    };
    let inv = canonical_to_exact(&probe, 1e-6);
    let inversion_ok = match &inv {
        Ok(rec) => {
            (rec.params.a1 - a1_ref).abs() <= 0.01
                && (rec.params.theta - theta_ref).abs() <= 1e-4
                && (rec.params.a2 - 1.0).abs() <= 1e-3
        }
        Err(_) => false,
    };

    let passed = worst_round <= 1e-12 && worst_resid <= 1e-12 && fixture_ok && inversion_ok;
    CriterionResult {
        id: "AC-12",
        name: "mapping roundtrip and manifold residual",
        passed,
        measured: Some(worst_round.max(worst_resid)),
        threshold: Some(1e-12),
        detail: format!(
            "roundtrip {worst_round:.2e}; residual {worst_resid:.2e}; doubled-mu residual {fixture_resid:.2e}; reference inversion ok: {inversion_ok}"
        ),
    }
}

pub fn ac13_convention_report() -> (CriterionResult, UCrossConventionReport) {
    let x = ExactParams { a1: 0.7, a2: 1.0, theta: 1.0, phi: 0.3, two_j: 4 };
    let oracle = conjugate_oracle(&x).expect("small sector").dense_view();
    let scale = oracle.max_abs();
    let derived = exact_to_canonical(&x);
    let mut halved = derived.clone();
    halved.u_cross /= 2.0;
    let residual_derived = build_hamiltonian(&derived).dense_view().max_abs_diff(&oracle) / scale;
    let residual_halved = build_hamiltonian(&halved).dense_view().max_abs_diff(&oracle) / scale;
    let report = UCrossConventionReport {
        residual_derived,
        residual_halved,
        adopted: "u_cross = a2 (1 - 3 cos^2 theta) / 2",
        dictionary: "references quoting the halved value use u_alt = u_cross / 2",
    };
    let passed = residual_derived <= 1e-10 && residual_halved > 1e-3;
    (
        CriterionResult {
            id: "AC-13",
            name: "cross-collision convention",
            passed,
            measured: Some(residual_derived),
            threshold: Some(1e-10),
            detail: format!(
                "identity residual {residual_derived:.2e} with adopted form, {residual_halved:.2e} with halved form"
            ),
        },
        report,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_control_breaks_conjugation_identity() {
        let clean = ac01_conjugation_identity(&VerifyOptions::default());
        assert!(clean.passed, "{}", clean.line());
        let broken = ac01_conjugation_identity(&VerifyOptions { perturb_mu: 1e-3 });
        assert!(!broken.passed, "{}", broken.line());
    }

    #[test]
    fn convention_report_selects_exactly_one_form() {
        let (crit, report) = ac13_convention_report();
        assert!(crit.passed, "{}", crit.line());
        assert!(report.residual_derived < 1e-10);
        assert!(report.residual_halved > 1e-3);
    }

    #[test]
    fn ground_index_is_consistent_with_entropy_scan() {
        // the selected ground projection actually minimizes the ladder
        let (two_k0, tie) = crate::exact::ground_index(-4.0, 1.0, 10).unwrap();
        assert_eq!((two_k0, tie), (4, false));
    }
}
