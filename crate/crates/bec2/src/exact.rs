//! Closed-form route on the solvable manifold: stable rotated-Dicke
//! amplitude rows, exact eigenstates and energies, ground-state selection,
//! analytic relative-population dynamics, collapse times and revival
//! periods.

use crate::fock::{FockBasis, StateVector};
use crate::model::ExactParams;
use num_complex::Complex64 as C64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExactError {
    #[error("projection two_k = {two_k} outside the two_j = {two_j} sector")]
    ProjectionOutOfRange { two_j: u32, two_k: i64 },
    #[error("coefficient row has length {got}, sector dimension is {want}")]
    CoefficientLength { got: usize, want: usize },
    #[error("coefficient row is not normalized: |norm^2 - 1| = {defect:.3e}")]
    BadCoefficients { defect: f64 },
    #[error("a2 = 0: phases never dephase, no collapse or revival")]
    NoCollisions,
    #[error("every projection minimizes the energy (a1 = a2 = 0)")]
    AllDegenerate,
}

/// How a rotated-Dicke amplitude row was computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WignerMethod {
    /// Two-sided three-term recurrence (production path).
    Recurrence,
    /// Exponential of the rotation generator via the eigensolver
    /// (cross-check path).
    GeneratorExponential,
}

/// Amplitudes ⟨j,k| R(θ) |j,k0⟩ of a rotated Dicke state over the target
/// projection k, real for the φ = 0 rotation. Unit norm.
#[derive(Clone, Debug)]
pub struct WignerRow {
    pub two_j: u32,
    pub two_k0: i64,
    pub theta: f64,
    pub amps: Vec<f64>,
    pub method: WignerMethod,
}

impl WignerRow {
    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a * a).collect()
    }
}

fn check_projection(two_j: u32, two_k: i64) -> Result<(), ExactError> {
    let tj = two_j as i64;
    if two_k.abs() > tj || (two_k - tj) % 2 != 0 {
        return Err(ExactError::ProjectionOutOfRange { two_j, two_k });
    }
    Ok(())
}

/// Ladder factor between adjacent projections: `√(j(j+1) − k(k+1))` for the
/// step k → k+1, indexed by the lower basis slot.
fn ladder(two_j: i64, i: usize) -> f64 {
    let tk = 2 * i as i64 - two_j;
    (((two_j * (two_j + 2) - tk * (tk + 2)) as f64).sqrt()) / 2.0
}

/// Amplitude row of the rotated Dicke state `R(θ)|j, k0⟩` (rotation phase
/// φ = 0).
///
/// The row is the eigenvector of the tridiagonal operator
/// `cosθ·Jz + sinθ·Jx` with eigenvalue k0, so it satisfies a three-term
/// recurrence. Running it upward from the bottom edge and downward from the
/// top edge, gluing inside the classically allowed region and renormalizing
/// keeps the evaluation stable far beyond where the alternating factorial
/// sum breaks down; the bottom edge of the true row is strictly positive
/// for θ ∈ (0, π), which pins the global sign.
pub fn wigner_row(two_j: u32, two_k0: i64, theta: f64) -> Result<WignerRow, ExactError> {
    check_projection(two_j, two_k0)?;
    assert!(
        (0.0..=PI).contains(&theta),
        "rotation angle {theta} outside [0, pi]"
    );
    let tj = two_j as i64;
    let dim = two_j as usize + 1;
    let mut amps = vec![0.0f64; dim];

    let (s, c) = theta.sin_cos();
    if dim == 1 {
        amps[0] = 1.0;
    } else if s == 0.0 || theta == PI {
        if c >= 0.0 {
            // identity
            amps[((two_k0 + tj) / 2) as usize] = 1.0;
        } else {
            // half-turn: |j,k0⟩ → (−1)^{j−k0} |j,−k0⟩
            let idx = ((-two_k0 + tj) / 2) as usize;
            let sign = if ((tj - two_k0) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            amps[idx] = sign;
        }
    } else {
        recurrence_row(tj, two_k0, s, c, &mut amps);
    }

    Ok(WignerRow { two_j, two_k0, theta, amps, method: WignerMethod::Recurrence })
}

fn recurrence_row(tj: i64, two_k0: i64, s: f64, c: f64, amps: &mut [f64]) {
    let dim = amps.len();
    let k0 = two_k0 as f64 / 2.0;
    let j = tj as f64 / 2.0;
    let half_s = 0.5 * s;
    // (k0 − k_i cosθ), the diagonal defect at slot i
    let b = |i: usize| k0 - (i as f64 - j) * c;

    // the mean of the rotated distribution sits inside the allowed region
    let i_center = (((2.0 * k0 * c + tj as f64) / 2.0).round()).clamp(0.0, (dim - 1) as f64)
        as usize;
    let i_hi = (i_center + 3).min(dim - 1);
    let i_lo = i_center.saturating_sub(3);

    const BIG: f64 = 1e250;

    // upward sweep from the bottom edge; rescale on the newest entry
    let mut up = vec![0.0f64; i_hi + 1];
    up[0] = 1.0;
    if i_hi >= 1 {
        up[1] = b(0) * up[0] / (half_s * ladder(tj, 0));
        rescale_if_large(&mut up[..2], BIG);
    }
    for i in 1..i_hi {
        up[i + 1] =
            (b(i) * up[i] - half_s * ladder(tj, i - 1) * up[i - 1]) / (half_s * ladder(tj, i));
        rescale_if_large(&mut up[..i + 2], BIG);
    }

    // downward sweep from the top edge; here the newest entry sits at the
    // front of the live slice
    let mut down = vec![0.0f64; dim];
    down[dim - 1] = 1.0;
    if dim >= 2 && i_lo <= dim - 2 {
        down[dim - 2] = b(dim - 1) * down[dim - 1] / (half_s * ladder(tj, dim - 2));
        rescale_front_if_large(&mut down[dim - 2..], BIG);
    }
    for i in (i_lo + 1..dim - 1).rev() {
        down[i - 1] =
            (b(i) * down[i] - half_s * ladder(tj, i) * down[i + 1]) / (half_s * ladder(tj, i - 1));
        rescale_front_if_large(&mut down[i - 1..], BIG);
    }

    // each sweep carries its own rescaling history; bring both to unit peak
    // so the glue ratio cannot overflow
    let up_peak = up.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if up_peak > 0.0 {
        up.iter_mut().for_each(|v| *v /= up_peak);
    }
    let down_peak = down[i_lo..].iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if down_peak > 0.0 {
        down.iter_mut().for_each(|v| *v /= down_peak);
    }

    // Glue candidates must pass the local oscillatory test: outside the
    // classically allowed region the sweep running away from its seed is
    // contaminated by the growing solution, so its entries cannot be
    // trusted. The center index always qualifies (the rotated mean lies in
    // the allowed region), which covers sub-lattice-width rows.
    let ic = i_center.clamp(i_lo, i_hi);
    let oscillatory = |i: usize| -> bool {
        let gl = if i == 0 { 0.0 } else { ladder(tj, i - 1) };
        let gr = if i + 1 == dim { 0.0 } else { ladder(tj, i) };
        b(i).abs() <= half_s * (gl + gr)
    };
    let mut m = ic;
    let mut best = 0.0f64;
    for cand in i_lo..=i_hi {
        if cand != ic && !oscillatory(cand) {
            continue;
        }
        let p = up[cand].abs() * down[cand].abs();
        if p > best {
            best = p;
            m = cand;
        }
    }
    if best > 0.0 {
        let scale = up[m] / down[m];
        amps[..=m].copy_from_slice(&up[..=m]);
        for i in (m + 1)..dim {
            amps[i] = scale * down[i];
        }
    } else {
        // no overlap survived in floats; keep the larger sweep
        let up_max = up.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        let down_max = down.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if up_max >= down_max {
            amps[..=i_hi].copy_from_slice(&up[..=i_hi]);
            amps[i_hi + 1..].iter_mut().for_each(|v| *v = 0.0);
        } else {
            amps[..i_lo].iter_mut().for_each(|v| *v = 0.0);
            amps[i_lo..].copy_from_slice(&down[i_lo..]);
        }
    }

    // normalize, guarding the sum of squares against overflow
    let peak = amps.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if peak > 0.0 {
        amps.iter_mut().for_each(|v| *v /= peak);
    }
    let norm = amps.iter().map(|v| v * v).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|v| *v /= norm);
}

fn rescale_if_large(window: &mut [f64], big: f64) {
    let newest = window[window.len() - 1].abs();
    if newest > big {
        let f = 1.0 / newest;
        window.iter_mut().for_each(|v| *v *= f);
    }
}

fn rescale_front_if_large(window: &mut [f64], big: f64) {
    let newest = window[0].abs();
    if newest > big {
        let f = 1.0 / newest;
        window.iter_mut().for_each(|v| *v *= f);
    }
}

/// Same row through the rotation-generator exponential (cross-check path;
/// O(dim³), keep the sector small).
pub fn wigner_row_expgen(two_j: u32, two_k0: i64, theta: f64) -> Result<WignerRow, ExactError> {
    check_projection(two_j, two_k0)?;
    let u = crate::spectral::rotation_unitary(&crate::spectral::RotationSpec {
        theta,
        phi: 0.0,
        two_j,
    });
    let basis = FockBasis::new(two_j);
    let col = basis.index_of_two_k(two_k0).expect("checked projection");
    let amps: Vec<f64> = (0..basis.dim())
        .map(|r| {
            let z = u.at(r, col);
            debug_assert!(z.im.abs() < 1e-9, "rotation at phi = 0 must be real");
            z.re
        })
        .collect();
    Ok(WignerRow { two_j, two_k0, theta, amps, method: WignerMethod::GeneratorExponential })
}

/// Exact eigenstate `R(θ, φ)|j, k⟩` of the manifold Hamiltonian with energy
/// `a1·k + a2·k²`. The rotation phase twists the real row by
/// `e^{iφ(k' − k)}` on target projection k'.
pub fn eigenstate(x: &ExactParams, two_k: i64) -> Result<StateVector, ExactError> {
    let row = wigner_row(x.two_j, two_k, x.theta)?;
    let basis = FockBasis::new(x.two_j);
    let amps: Vec<C64> = row
        .amps
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let dk = (basis.two_k_at(i) - two_k) as f64 / 2.0;
            C64::from_polar(a, x.phi * dk)
        })
        .collect();
    Ok(StateVector { basis, amps })
}

/// Energies of the diagonal model over the sector.
#[derive(Clone, Copy, Debug)]
pub struct EnergyLadder {
    pub a1: f64,
    pub a2: f64,
}

impl EnergyLadder {
    pub fn energy_two_k(&self, two_k: i64) -> f64 {
        let k = two_k as f64 / 2.0;
        self.a1 * k + self.a2 * k * k
    }

    /// Gap E(k−1) − E(k) = −a1 − a2(2k − 1).
    pub fn gap_below_two_k(&self, two_k: i64) -> f64 {
        -self.a1 - self.a2 * (two_k as f64 - 1.0)
    }
}

/// Projection(s) minimizing `a1·k + a2·k²` over the sector.
///
/// Returns twice the minimizer and a degeneracy flag (exact ties report the
/// smaller |k| member, negative first).
pub fn ground_index(a1: f64, a2: f64, two_j: u32) -> Result<(i64, bool), ExactError> {
    if a1 == 0.0 && a2 == 0.0 {
        return Err(ExactError::AllDegenerate);
    }
    let tj = two_j as i64;
    let ladder = EnergyLadder { a1, a2 };
    if a2 > 0.0 {
        // parabola vertex at two_k = −a1/a2; beyond the sector edge the
        // nearest member minimizes uniquely
        let two_v = -a1 / a2;
        if two_v <= -(tj as f64) {
            return Ok((-tj, false));
        }
        if two_v >= tj as f64 {
            return Ok((tj, false));
        }
        // nearest sector value; the grid steps by 2 with parity of two_j
        let t = (two_v + tj as f64) / 2.0;
        let lo = (t.floor() as i64).clamp(0, tj);
        let hi = (t.ceil() as i64).clamp(0, tj);
        let c_lo = 2 * lo - tj;
        let c_hi = 2 * hi - tj;
        if c_lo == c_hi {
            return Ok((c_lo, false));
        }
        let e_lo = ladder.energy_two_k(c_lo);
        let e_hi = ladder.energy_two_k(c_hi);
        if e_lo == e_hi {
            // exact midpoint: smaller |k|, negative first on an |k| tie
            let pick = if c_lo.abs() < c_hi.abs() {
                c_lo
            } else if c_hi.abs() < c_lo.abs() {
                c_hi
            } else {
                c_lo.min(c_hi)
            };
            return Ok((pick, true));
        }
        Ok(if e_lo < e_hi { (c_lo, false) } else { (c_hi, false) })
    } else if a2 < 0.0 {
        if a1 < 0.0 {
            Ok((tj, false))
        } else if a1 > 0.0 {
            Ok((-tj, false))
        } else {
            // pure inverted parabola: both edges
            Ok((-tj, tj != 0))
        }
    } else {
        // linear ladder
        Ok(if a1 > 0.0 { (-tj, false) } else { (tj, false) })
    }
}

/// Ground-state number distribution `P(k) = |⟨j,k|ψ0⟩|²` for
/// `ψ0 = R(θ,φ)|j,k0⟩`; the phase φ drops out.
pub fn ground_distribution(x: &ExactParams, two_k0: i64) -> Result<Vec<f64>, ExactError> {
    Ok(wigner_row(x.two_j, two_k0, x.theta)?.probabilities())
}

/// Analytic relative population ⟨a†a − b†b⟩(t) for the state
/// `Σ_k C_k R|j,k⟩` evolving under the manifold Hamiltonian:
///
/// ```text
/// ⟨m⟩(t) = 2 cosθ Σ_k k|C_k|²
///        − 2 sinθ Σ_k g_{k−1} Re( C̄_k C_{k−1} e^{iφ} e^{−i(E_{k−1}−E_k)t} )
/// ```
///
/// with `g_{k−1} = √(j(j+1) − k(k−1))`. For real coefficient rows the
/// off-diagonal factor reduces to `C_k C_{k−1} cos(φ − (E_{k−1}−E_k)t)`;
/// the complex form is the one that matches spectral evolution.
pub fn mean_m_analytic(x: &ExactParams, coeffs: &[C64], t: f64) -> Result<f64, ExactError> {
    let dim = x.two_j as usize + 1;
    if coeffs.len() != dim {
        return Err(ExactError::CoefficientLength { got: coeffs.len(), want: dim });
    }
    let norm2: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum();
    if (norm2 - 1.0).abs() > 1e-8 {
        return Err(ExactError::BadCoefficients { defect: (norm2 - 1.0).abs() });
    }
    let tj = x.two_j as i64;
    let ladder_e = EnergyLadder { a1: x.a1, a2: x.a2 };
    let (s, c) = x.theta.sin_cos();
    let phase0 = C64::from_polar(1.0, x.phi);

    let mut dc = 0.0f64;
    for (i, cf) in coeffs.iter().enumerate() {
        let k = (2 * i as i64 - tj) as f64 / 2.0;
        dc += k * cf.norm_sqr();
    }
    let mut osc = 0.0f64;
    for i in 1..dim {
        let two_k = 2 * i as i64 - tj;
        let gap = ladder_e.gap_below_two_k(two_k);
        let g = ladder(tj, i - 1);
        let z = coeffs[i].conj() * coeffs[i - 1] * phase0 * C64::from_polar(1.0, -gap * t);
        osc += g * z.re;
    }
    Ok(2.0 * (c * dc - s * osc))
}

/// Coefficient row (in the eigenbasis) describing the sector basis state
/// with projection `two_k_lab`: `C_k = ⟨j,k|R†|j,k_lab⟩`.
pub fn lab_dicke_coeffs(x: &ExactParams, two_k_lab: i64) -> Result<Vec<C64>, ExactError> {
    let row = wigner_row(x.two_j, two_k_lab, x.theta)?;
    let basis = FockBasis::new(x.two_j);
    // ⟨k|R†|k_lab⟩ = conj(⟨k_lab|R|k⟩) = (−1)^{k_lab−k} row[k] e^{iφ(k−k_lab)}
    Ok(row
        .amps
        .iter()
        .enumerate()
        .map(|(i, &a)| {
            let dk2 = two_k_lab - basis.two_k_at(i);
            let sign = if (dk2 / 2) % 2 == 0 { 1.0 } else { -1.0 };
            C64::from_polar(a * sign, -x.phi * dk2 as f64 / 2.0)
        })
        .collect())
}

/// Time at which the off-diagonal cosines first cancel: `(2n+1)π / (2|a2|)`.
pub fn collapse_time(a2: f64, n: u32) -> Result<f64, ExactError> {
    if a2 == 0.0 {
        return Err(ExactError::NoCollisions);
    }
    Ok((2.0 * n as f64 + 1.0) * PI / (2.0 * a2.abs()))
}

/// Revival bookkeeping: `a1/a2 = p/q` in lowest terms, the period in
/// revival units and the absolute period.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RevivalPeriod {
    pub p: i64,
    pub q: i64,
    /// Revivals per full period: q when p−q is even, else 2q.
    pub p_r: i64,
    /// Absolute period `p_r · π / |a2|`.
    pub t1: f64,
    /// Set when the ratio came from floating-point reconstruction rather
    /// than exact integers.
    pub approx: bool,
}

/// Outcome of the periodicity analysis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Periodicity {
    Periodic(RevivalPeriod),
    /// No rational ratio within tolerance: collapses and revivals occur but
    /// no revival repeats the first one exactly.
    NotPeriodic,
}

/// Relative tolerance for declaring a floating ratio rational.
pub const RATIO_RECONSTRUCTION_TOL: f64 = 1e-12;
/// Largest denominator tried by the reconstruction.
pub const RATIO_DENOMINATOR_CAP: i64 = 1_000_000;

/// Periodicity of the relative-population trace from floating coefficients.
/// The ratio a1/a2 is reconstructed by continued fractions with denominator
/// cap 10⁶ and relative tolerance 10⁻¹²; prefer
/// [`revival_period_ratio`] when the ratio is known exactly.
pub fn revival_period(a1: f64, a2: f64) -> Result<Periodicity, ExactError> {
    if a2 == 0.0 {
        return Err(ExactError::NoCollisions);
    }
    let r = a1 / a2;
    match reconstruct_rational(r, RATIO_DENOMINATOR_CAP, RATIO_RECONSTRUCTION_TOL) {
        Some((p, q)) => Ok(Periodicity::Periodic(make_period(p, q, a2, true))),
        None => Ok(Periodicity::NotPeriodic),
    }
}

/// Periodicity from the exact ratio `a1/a2 = num/den` (den ≠ 0); `a2` only
/// sets the absolute time scale.
pub fn revival_period_ratio(num: i64, den: i64, a2: f64) -> Result<RevivalPeriod, ExactError> {
    if a2 == 0.0 || den == 0 {
        return Err(ExactError::NoCollisions);
    }
    let (p, q) = reduce_ratio(num, den);
    Ok(make_period(p, q, a2, false))
}

fn make_period(p: i64, q: i64, a2: f64, approx: bool) -> RevivalPeriod {
    let p_r = if (p - q) % 2 == 0 { q } else { 2 * q };
    RevivalPeriod { p, q, p_r, t1: p_r as f64 * PI / a2.abs(), approx }
}

fn reduce_ratio(num: i64, den: i64) -> (i64, i64) {
    let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1) as i64;
    let sign = if den < 0 { -1 } else { 1 };
    (sign * num / g, sign * den / g)
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Best rational p/q with q ≤ cap and |r − p/q| ≤ tol·max(1, |r|), via the
/// continued-fraction convergents of r.
fn reconstruct_rational(r: f64, cap: i64, tol: f64) -> Option<(i64, i64)> {
    if !r.is_finite() {
        return None;
    }
    let bound = tol * r.abs().max(1.0);
    let mut x = r;
    let (mut p0, mut q0) = (1i64, 0i64);
    let (mut p1, mut q1) = (x.floor() as i64, 1i64);
    for _ in 0..64 {
        if (r - p1 as f64 / q1 as f64).abs() <= bound {
            return Some(reduce_ratio(p1, q1));
        }
        let frac = x - x.floor();
        if frac.abs() < 1e-18 {
            break;
        }
        x = 1.0 / frac;
        let a = x.floor();
        if !a.is_finite() || a >= i64::MAX as f64 / 2.0 {
            break;
        }
        let p2 = a as i64 * p1 + p0;
        let q2 = a as i64 * q1 + q0;
        if q2 > cap || q2 <= 0 {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
    }
    if q1 > 0 && q1 <= cap && (r - p1 as f64 / q1 as f64).abs() <= bound {
        return Some(reduce_ratio(p1, q1));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::build_hamiltonian;
    use crate::model::exact_to_canonical;
    use crate::spectral::{eigh, evolve, rotation_unitary, RotationSpec};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    const FRAC_PI_2: f64 = PI / 2.0;

    /// ln n! with compensated accumulation; test oracle helper.
    fn ln_factorial_table(n: usize) -> Vec<f64> {
        let mut table = vec![0.0f64; n + 1];
        let mut acc = 0.0f64;
        let mut comp = 0.0f64;
        for (i, slot) in table.iter_mut().enumerate().skip(1) {
            let term = (i as f64).ln();
            let y = term - comp;
            let t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            *slot = acc;
        }
        table
    }

    /// Alternating factorial sum for the rotation amplitude; only stable for
    /// small sectors, used as an independent oracle there.
    fn factorial_sum_row(two_j: u32, two_k0: i64, theta: f64) -> Vec<f64> {
        assert!(two_j <= 24, "factorial sum oracle only below j ~ 12");
        assert_eq!(two_j % 2, 0, "oracle written for integer j");
        let j = (two_j / 2) as i64;
        let k0 = two_k0 / 2;
        let lf = ln_factorial_table(two_j as usize + 1);
        let ch = (theta / 2.0).cos();
        let sh = (theta / 2.0).sin();
        let mut out = vec![0.0f64; two_j as usize + 1];
        for (i, slot) in out.iter_mut().enumerate() {
            let k = i as i64 - j;
            let pref = 0.5
                * (lf[(j + k0) as usize]
                    + lf[(j - k0) as usize]
                    + lf[(j + k) as usize]
                    + lf[(j - k) as usize]);
            let mut acc = 0.0f64;
            for r in 0..=(two_j as i64) {
                let d1 = j + k0 - r;
                let d2 = r;
                let d3 = j - r - k;
                let d4 = r - k0 + k;
                if d1 < 0 || d3 < 0 || d4 < 0 {
                    continue;
                }
                let ln_den = lf[d1 as usize] + lf[d2 as usize] + lf[d3 as usize] + lf[d4 as usize];
                let pow_c = (two_j - (2 * r - k0 + k) as u32) as i32;
                let pow_s = (2 * r - k0 + k) as i32;
                let sign = if (r - k0 + k) % 2 == 0 { 1.0 } else { -1.0 };
                acc += sign * (pref - ln_den).exp() * ch.powi(pow_c) * sh.powi(pow_s);
            }
            // row index convention: ⟨j,k|R|j,k0⟩ with R = e^{−iθJy}
            *slot = acc;
        }
        out
    }

    #[test]
    fn delta_row_at_zero_angle() {
        let row = wigner_row(10, 4, 0.0).unwrap();
        let idx = FockBasis::new(10).index_of_two_k(4).unwrap();
        for (i, a) in row.amps.iter().enumerate() {
            let want = if i == idx { 1.0 } else { 0.0 };
            assert_eq!(*a, want);
        }
    }

    #[test]
    fn two_level_row_closed_form() {
        for theta in [0.2, 1.1, 2.9] {
            let row = wigner_row(1, 1, theta).unwrap();
            assert!((row.amps[0] - (theta / 2.0).sin()).abs() < 1e-14);
            assert!((row.amps[1] - (theta / 2.0).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn row_matches_rotation_columns_small_sectors() {
        for &two_j in &[1u32, 2, 5, 39, 40] {
            for &theta in &[0.3, 1.35046, 2.5] {
                let u = rotation_unitary(&RotationSpec { theta, phi: 0.0, two_j });
                let basis = FockBasis::new(two_j);
                for col in 0..basis.dim() {
                    let two_k0 = basis.two_k_at(col);
                    let row = wigner_row(two_j, two_k0, theta).unwrap();
                    for r in 0..basis.dim() {
                        let want = u.at(r, col).re;
                        assert!(
                            (row.amps[r] - want).abs() < 1e-10,
                            "two_j={two_j} theta={theta} k0={two_k0} r={r}: {} vs {}",
                            row.amps[r],
                            want
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn row_matches_expgen_method() {
        for &(two_j, two_k0, theta) in
            &[(24u32, 0i64, 1.0), (24, 24, 0.4), (25, -13, 2.2), (40, 8, 2.9)]
        {
            let a = wigner_row(two_j, two_k0, theta).unwrap();
            let b = wigner_row_expgen(two_j, two_k0, theta).unwrap();
            for (x, y) in a.amps.iter().zip(b.amps.iter()) {
                assert!((x - y).abs() < 1e-10, "two_j={two_j} k0={two_k0} theta={theta}");
            }
        }
    }

    #[test]
    fn row_matches_factorial_sum_small() {
        for &(two_j, two_k0, theta) in &[(8u32, 2i64, 0.9), (12, -6, 1.7), (20, 0, 2.4)] {
            let row = wigner_row(two_j, two_k0, theta).unwrap();
            let oracle = factorial_sum_row(two_j, two_k0, theta);
            for (a, b) in row.amps.iter().zip(oracle.iter()) {
                assert!((a - b).abs() < 1e-8, "two_j={two_j} k0={two_k0}");
            }
        }
    }

    #[test]
    fn top_row_binomial_law() {
        // k0 = j: P(k) = C(2j, j+k) cos^{2(j+k)} sin^{2(j−k)} of θ/2
        for &two_j in &[10u32, 100, 1000] {
            let theta = 1.0;
            let row = wigner_row(two_j, two_j as i64, theta).unwrap();
            let lf = ln_factorial_table(two_j as usize);
            let lc2 = 2.0 * (theta / 2.0).cos().ln();
            let ls2 = 2.0 * (theta / 2.0).sin().ln();
            for (i, a) in row.amps.iter().enumerate() {
                let na = i as f64;
                let nb = two_j as f64 - na;
                let ln_p = lf[two_j as usize] - lf[i] - lf[two_j as usize - i]
                    + na * lc2
                    + nb * ls2;
                assert!(
                    (a * a - ln_p.exp()).abs() < 1e-12,
                    "two_j={two_j} i={i}"
                );
            }
        }
    }

    #[test]
    fn rows_orthonormal_mid_sector() {
        let two_j = 400; // j = 200
        let theta = 1.2;
        let basis = FockBasis::new(two_j);
        let rows: Vec<WignerRow> = (0..basis.dim())
            .map(|i| wigner_row(two_j, basis.two_k_at(i), theta).unwrap())
            .collect();
        for a in (0..rows.len()).step_by(37) {
            for b in (a..rows.len()).step_by(41) {
                let dot: f64 = rows[a]
                    .amps
                    .iter()
                    .zip(rows[b].amps.iter())
                    .map(|(x, y)| x * y)
                    .sum();
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-10, "a={a} b={b} dot={dot}");
            }
        }
    }

    #[test]
    fn half_turn_row_is_signed_delta() {
        let row = wigner_row(6, 4, PI).unwrap();
        // amplitude (−1)^{j−k0} at −k0, everything else 0
        let idx = FockBasis::new(6).index_of_two_k(-4).unwrap();
        assert_eq!(row.amps[idx], -1.0); // j−k0 = 1
        let total: f64 = row.amps.iter().map(|a| a.abs()).sum();
        assert_eq!(total, 1.0);
    }

    #[test]
    fn unit_norm_at_large_sectors() {
        for &two_j in &[2000u32, 20000] {
            for &theta in &[0.3, 1.0, 2.5] {
                for &two_k0 in &[two_j as i64, 0, -(two_j as i64) / 2] {
                    let two_k0 = two_k0 - (two_k0 - two_j as i64).rem_euclid(2);
                    let row = wigner_row(two_j, two_k0, theta).unwrap();
                    let norm2: f64 = row.amps.iter().map(|a| a * a).sum();
                    assert!(
                        (norm2 - 1.0).abs() <= 1e-10,
                        "two_j={two_j} theta={theta} k0={two_k0}"
                    );
                }
            }
        }
    }

    #[test]
    fn projection_checks() {
        assert!(matches!(
            wigner_row(10, 12, 1.0),
            Err(ExactError::ProjectionOutOfRange { .. })
        ));
        assert!(matches!(
            wigner_row(10, 3, 1.0), // parity mismatch
            Err(ExactError::ProjectionOutOfRange { .. })
        ));
    }

    #[test]
    fn eigenstate_at_zero_angle_is_basis_vector() {
        let x = ExactParams { a1: 1.0, a2: 2.0, theta: 0.0, phi: 0.9, two_j: 8 };
        let s = eigenstate(&x, 2).unwrap();
        let idx = FockBasis::new(8).index_of_two_k(2).unwrap();
        for (i, a) in s.amps.iter().enumerate() {
            let want = if i == idx { 1.0 } else { 0.0 };
            assert!((a.norm() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenstate_residual_small_sectors() {
        let mut rng = StdRng::seed_from_u64(0xe1a_0001);
        for _ in 0..10 {
            let x = ExactParams {
                a1: rng.gen_range(-3.0..3.0),
                a2: rng.gen_range(-3.0..3.0),
                theta: rng.gen_range(0.05..PI - 0.05),
                phi: rng.gen_range(0.0..6.28),
                two_j: rng.gen_range(1..=20),
            };
            let h = build_hamiltonian(&exact_to_canonical(&x));
            let scale = h.max_abs().max(f64::MIN_POSITIVE);
            let basis = FockBasis::new(x.two_j);
            let ladder_e = EnergyLadder { a1: x.a1, a2: x.a2 };
            for i in 0..basis.dim() {
                let two_k = basis.two_k_at(i);
                let psi = eigenstate(&x, two_k).unwrap();
                let hv = h.mul_vec(&psi.amps);
                let e = ladder_e.energy_two_k(two_k);
                let resid: f64 = hv
                    .iter()
                    .zip(psi.amps.iter())
                    .map(|(a, b)| (a - e * b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(resid <= 1e-9 * scale, "{x:?} two_k={two_k} resid={resid:.3e}");
            }
        }
    }

    #[test]
    fn half_pi_top_eigenstate_probabilities_binomial() {
        let x = ExactParams { a1: 1.0, a2: 0.5, theta: FRAC_PI_2, phi: 0.0, two_j: 12 };
        let s = eigenstate(&x, 12).unwrap();
        let lf = ln_factorial_table(12);
        for (i, a) in s.amps.iter().enumerate() {
            let p = (lf[12] - lf[i] - lf[12 - i]).exp() / 2f64.powi(12);
            assert!((a.norm_sqr() - p).abs() < 1e-12);
        }
    }

    #[test]
    fn ground_index_examples_and_brute_force() {
        // j = 5 sector (two_j = 10)
        assert_eq!(ground_index(0.0, 1.0, 10).unwrap(), (0, false));
        assert_eq!(ground_index(-4.0, 1.0, 10).unwrap(), (4, false)); // k0 = 2
        assert_eq!(ground_index(-100.0, 1.0, 10).unwrap(), (10, false)); // clipped to +j
        assert_eq!(ground_index(3.0, -1.0, 10).unwrap(), (-10, false)); // spin coherent
        assert!(matches!(ground_index(0.0, 0.0, 10), Err(ExactError::AllDegenerate)));

        let mut rng = StdRng::seed_from_u64(0x97e_0001);
        for _ in 0..300 {
            let a1 = if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(-20.0..20.0) };
            let a2 = match rng.gen_range(0..4) {
                0 => 0.0,
                1 => rng.gen_range(-3.0..0.0),
                _ => rng.gen_range(0.0..3.0),
            };
            if a1 == 0.0 && a2 == 0.0 {
                continue;
            }
            let two_j = rng.gen_range(0..=25u32);
            let (two_k0, _) = ground_index(a1, a2, two_j).unwrap();
            let ladder_e = EnergyLadder { a1, a2 };
            let basis = FockBasis::new(two_j);
            let best = (0..basis.dim())
                .map(|i| ladder_e.energy_two_k(basis.two_k_at(i)))
                .fold(f64::INFINITY, f64::min);
            let got = ladder_e.energy_two_k(two_k0);
            assert!(
                got <= best + 1e-12 * (1.0 + best.abs()),
                "a1={a1} a2={a2} two_j={two_j}: picked {two_k0} at {got}, best {best}"
            );
        }
    }

    #[test]
    fn ground_index_exact_tie() {
        // vertex exactly between k = 0 and k = 1 → smaller |k| wins, flagged
        let (two_k0, tie) = ground_index(-1.0, 1.0, 10).unwrap();
        assert_eq!(two_k0, 0);
        assert!(tie);
        // vertex between k = ±1/2 in a half-integer sector → negative first
        let (two_k0, tie) = ground_index(0.0, 1.0, 9).unwrap();
        assert_eq!(two_k0, -1);
        assert!(tie);
    }

    #[test]
    fn ground_distribution_morphology_at_scale() {
        let x = |_k0: i64| ExactParams { a1: 0.0, a2: 1.0, theta: 1.0, phi: 0.0, two_j: 2000 };
        let p_top = ground_distribution(&x(2000), 2000).unwrap();
        let maxima = count_strict_maxima(&p_top);
        assert_eq!(maxima, 1);
        let p_cat = ground_distribution(&x(1954), 1954).unwrap();
        assert!(count_strict_maxima(&p_cat) >= 2);
    }

    fn count_strict_maxima(p: &[f64]) -> usize {
        let floor = 1e-6 * p.iter().fold(0.0f64, |a, &v| a.max(v));
        let mut count = 0;
        for i in 0..p.len() {
            let left = if i == 0 { f64::NEG_INFINITY } else { p[i - 1] };
            let right = if i + 1 == p.len() { f64::NEG_INFINITY } else { p[i + 1] };
            if p[i] > left && p[i] > right && p[i] > floor {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn mean_m_constant_cases() {
        let x = ExactParams { a1: 2.0, a2: 1.0, theta: 0.8, phi: 0.0, two_j: 10 };
        // single coefficient: ⟨m⟩ = 2k cosθ for all t
        let mut coeffs = vec![C64::new(0.0, 0.0); 11];
        coeffs[8] = C64::new(1.0, 0.0); // two_k = 6, k = 3
        for t in [0.0, 0.7, 5.0] {
            let m = mean_m_analytic(&x, &coeffs, t).unwrap();
            assert!((m - 2.0 * 3.0 * 0.8f64.cos()).abs() < 1e-12);
        }
        // θ = 0: frozen at 2 Σ k |C_k|²
        let x0 = ExactParams { theta: 0.0, ..x };
        let mut c2 = vec![C64::new(0.0, 0.0); 11];
        c2[0] = C64::new(0.6, 0.0);
        c2[10] = C64::new(0.0, 0.8);
        let want = 2.0 * (-5.0 * 0.36 + 5.0 * 0.64);
        for t in [0.0, 1.3] {
            assert!((mean_m_analytic(&x0, &c2, t).unwrap() - want).abs() < 1e-12);
        }
    }

    #[test]
    fn analytic_trace_matches_spectral_evolution() {
        // includes complex coefficients and a nonzero rotation phase
        let x = ExactParams { a1: 49.0, a2: 1.0, theta: 1.35, phi: 0.7, two_j: 40 };
        let mut rng = StdRng::seed_from_u64(0xa3a_0001);
        let mut coeffs: Vec<C64> = (0..41)
            .map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        coeffs.iter_mut().for_each(|c| *c /= norm);

        let h = build_hamiltonian(&exact_to_canonical(&x));
        let dec = eigh(&h).unwrap();
        let basis = h.basis;
        let mut s0 = StateVector::zero(basis);
        for (i, cf) in coeffs.iter().enumerate() {
            let psi = eigenstate(&x, basis.two_k_at(i)).unwrap();
            for (dst, src) in s0.amps.iter_mut().zip(psi.amps.iter()) {
                *dst += cf * src;
            }
        }
        assert!((s0.norm() - 1.0).abs() < 1e-10);
        let mop = crate::fock::m_operator(basis);
        for i in 0..60 {
            let t = 0.11 * i as f64;
            let numeric = mop.expectation(&evolve(&dec, &s0, t).unwrap());
            let analytic = mean_m_analytic(&x, &coeffs, t).unwrap();
            assert!(
                (numeric - analytic).abs() < 1e-8 * 2.0 * 20.0,
                "t={t}: {numeric} vs {analytic}"
            );
        }
    }

    #[test]
    fn unnormalized_coefficients_rejected() {
        let x = ExactParams { a1: 1.0, a2: 1.0, theta: 1.0, phi: 0.0, two_j: 2 };
        let coeffs = vec![C64::new(1.0, 0.0); 3];
        assert!(matches!(
            mean_m_analytic(&x, &coeffs, 0.0),
            Err(ExactError::BadCoefficients { .. })
        ));
    }

    #[test]
    fn collapse_time_values() {
        assert!((collapse_time(1.0, 0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!((collapse_time(1.0, 1).unwrap() - 1.5 * PI).abs() < 1e-15);
        assert!((collapse_time(-2.0, 0).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!(matches!(collapse_time(0.0, 0), Err(ExactError::NoCollisions)));
    }

    #[test]
    fn revival_period_reference_ratios() {
        let cases = [
            (49.0, 1i64, 1i64),
            (50.0, 2, 1),
            (101.0 / 3.0, 3, 3),
            (59.0 / 2.0, 4, 2),
        ];
        for &(a1, p_r, q) in &cases {
            match revival_period(a1, 1.0).unwrap() {
                Periodicity::Periodic(rp) => {
                    assert_eq!(rp.p_r, p_r, "a1={a1}");
                    assert_eq!(rp.q, q, "a1={a1}");
                    assert!(rp.approx);
                    assert!((rp.t1 - p_r as f64 * PI).abs() < 1e-9);
                }
                Periodicity::NotPeriodic => panic!("a1={a1} should be periodic"),
            }
        }
    }

    #[test]
    fn revival_period_zero_linear_term() {
        match revival_period(0.0, 1.0).unwrap() {
            Periodicity::Periodic(rp) => {
                assert_eq!((rp.p, rp.q, rp.p_r), (0, 1, 2));
            }
            _ => panic!("expected periodic"),
        }
    }

    #[test]
    fn irrational_ratio_not_periodic() {
        assert_eq!(
            revival_period(2f64.sqrt(), 1.0).unwrap(),
            Periodicity::NotPeriodic
        );
        assert!(matches!(revival_period(1.0, 0.0), Err(ExactError::NoCollisions)));
    }

    #[test]
    fn exact_ratio_entry_point() {
        let rp = revival_period_ratio(101, 3, 1.0).unwrap();
        assert_eq!((rp.p, rp.q, rp.p_r), (101, 3, 3));
        assert!(!rp.approx);
        let rp = revival_period_ratio(-6, 4, 2.0).unwrap();
        assert_eq!((rp.p, rp.q), (-3, 2));
        assert_eq!(rp.p_r, 4); // −3 − 2 odd
        assert!((rp.t1 - 4.0 * PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn analytic_trace_is_periodic_at_reported_period() {
        let x = ExactParams { a1: 101.0 / 3.0, a2: 1.0, theta: 1.35, phi: 0.0, two_j: 60 };
        let coeffs: Vec<C64> = wigner_row(60, 60, FRAC_PI_2)
            .unwrap()
            .amps
            .iter()
            .map(|&a| C64::new(a, 0.0))
            .collect();
        let rp = revival_period_ratio(101, 3, 1.0).unwrap();
        for i in 0..200 {
            let t = rp.t1 * i as f64 / 199.0;
            let a = mean_m_analytic(&x, &coeffs, t).unwrap();
            let b = mean_m_analytic(&x, &coeffs, t + rp.t1).unwrap();
            assert!((a - b).abs() <= 1e-6 * 60.0, "t={t}");
        }
    }

    #[test]
    fn lab_dicke_coefficients_reproduce_basis_state() {
        let x = ExactParams { a1: 1.0, a2: 100.0, theta: FRAC_PI_2, phi: 0.4, two_j: 14 };
        let coeffs = lab_dicke_coeffs(&x, 14).unwrap();
        let basis = FockBasis::new(14);
        let mut s = StateVector::zero(basis);
        for (i, cf) in coeffs.iter().enumerate() {
            let psi = eigenstate(&x, basis.two_k_at(i)).unwrap();
            for (dst, src) in s.amps.iter_mut().zip(psi.amps.iter()) {
                *dst += cf * src;
            }
        }
        // should equal the lab basis vector with n_a = 2j
        for (i, a) in s.amps.iter().enumerate() {
            let want = if i == 14 { 1.0 } else { 0.0 };
            assert!((a.norm() - want).abs() < 1e-10, "i={i}");
        }
    }
}
