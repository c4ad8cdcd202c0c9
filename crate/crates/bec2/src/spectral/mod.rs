//! General-parameter numerical route: a self-contained Hermitian
//! eigensolver, the SU(2) sector rotation, the dense conjugation oracle and
//! spectral time evolution.
//!
//! The eigensolver first tries to peel the band phases off with a diagonal
//! unitary (every Hamiltonian built from [`crate::fock::build_hamiltonian`]
//! carries one global phase per band, so this almost always applies), which
//! reduces the problem to a real symmetric one. Matrices that resist the
//! phase peel — or that carry a dense panel — go through complex
//! Householder reduction instead. Both paths end in implicit-shift QL.

mod tridiag;

use crate::dense::CMat;
use crate::fock::{FockBasis, HermitianOperator, StateVector};
use crate::model::ExactParams;
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Cap on `two_j` for the dense conjugation oracle.
pub const ORACLE_TWO_J_CAP: u32 = 64;

#[derive(Debug, Error)]
pub enum SpectralError {
    #[error("QL iteration failed to converge for eigenvalue {index}")]
    ConvergenceFailure { index: usize },
    #[error("two_j = {two_j} exceeds the dense-oracle cap {cap}")]
    SizeExceeded { two_j: u32, cap: u32 },
    #[error("state and decomposition bases differ")]
    BasisMismatch,
}

/// Eigenvalues (ascending) with orthonormal eigenvectors as matrix columns.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub basis: FockBasis,
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

/// SU(2) rotation of angle θ about the axis set by φ.
#[derive(Clone, Copy, Debug)]
pub struct RotationSpec {
    pub theta: f64,
    pub phi: f64,
    pub two_j: u32,
}

/// Full Hermitian eigendecomposition.
///
/// Deterministic: eigenvalues ascend and each eigenvector's
/// largest-magnitude entry is made real positive.
pub fn eigh(h: &HermitianOperator) -> Result<SpectralDecomposition, SpectralError> {
    let n = h.basis.dim();
    let (mut vals, mut vecs) = if !h.has_dense() {
        match absorb_band_phases(h) {
            Some((phases, diag, r1, r2)) => real_banded_path(n, &phases, &diag, &r1, &r2)?,
            None => complex_dense_path(&h.dense_view())?,
        }
    } else {
        complex_dense_path(&h.dense_view())?
    };

    // ascending order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).expect("finite eigenvalues"));
    let sorted_vals: Vec<f64> = order.iter().map(|&i| vals[i]).collect();
    let mut sorted = CMat::zeros(n);
    for (dst, &src) in order.iter().enumerate() {
        for r in 0..n {
            sorted.set(r, dst, vecs.at(r, src));
        }
    }
    vals = sorted_vals;
    vecs = sorted;

    // fix each column's phase: largest-magnitude entry real positive
    for c in 0..n {
        let mut best = 0usize;
        let mut best_mag = 0.0f64;
        for r in 0..n {
            let m = vecs.at(r, c).norm();
            if m > best_mag {
                best_mag = m;
                best = r;
            }
        }
        let pivot = vecs.at(best, c);
        if pivot.norm() > 0.0 {
            let ph = pivot.conj() / pivot.norm();
            for r in 0..n {
                let v = vecs.at(r, c);
                vecs.set(r, c, v * ph);
            }
        }
    }

    Ok(SpectralDecomposition { basis: h.basis, eigenvalues: vals, eigenvectors: vecs })
}

/// Try to find a diagonal unitary P with P†HP real. Succeeds whenever each
/// band carries a consistent phase structure (one global φ per band, signs
/// free), which covers every Hamiltonian assembled from the model
/// couplings.
fn absorb_band_phases(
    h: &HermitianOperator,
) -> Option<(Vec<C64>, Vec<f64>, Vec<f64>, Vec<f64>)> {
    let n = h.basis.dim();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut p = vec![C64::new(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let t = h.raise1[i];
        p[i + 1] = if t.norm() > 0.0 {
            let next = t * p[i];
            next / next.norm()
        } else {
            p[i]
        };
    }
    let mut r1 = vec![0.0f64; n.saturating_sub(1)];
    for i in 0..n.saturating_sub(1) {
        let k1 = p[i + 1].conj() * h.raise1[i] * p[i];
        if k1.im.abs() > 1e-12 * scale {
            return None;
        }
        r1[i] = k1.re;
    }
    let mut r2 = vec![0.0f64; n.saturating_sub(2)];
    for i in 0..n.saturating_sub(2) {
        let k2 = p[i + 2].conj() * h.raise2[i] * p[i];
        if k2.im.abs() > 1e-12 * scale {
            return None;
        }
        r2[i] = k2.re;
    }
    Some((p, h.diag.clone(), r1, r2))
}

fn real_banded_path(
    n: usize,
    phases: &[C64],
    diag: &[f64],
    r1: &[f64],
    r2: &[f64],
) -> Result<(Vec<f64>, CMat), SpectralError> {
    // dense symmetric matrix, column-major
    let mut v = vec![0.0f64; n * n];
    for i in 0..n {
        v[i + i * n] = diag[i];
    }
    for (i, &x) in r1.iter().enumerate() {
        v[(i + 1) + i * n] = x;
        v[i + (i + 1) * n] = x;
    }
    for (i, &x) in r2.iter().enumerate() {
        v[(i + 2) + i * n] = x;
        v[i + (i + 2) * n] = x;
    }
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    tridiag::tred2(n, &mut v, &mut d, &mut e);
    tridiag::tql2(&mut d, &mut e, |i, c, s| {
        let (lo, hi) = v.split_at_mut((i + 1) * n);
        let ci = &mut lo[i * n..];
        let ci1 = &mut hi[..n];
        for k in 0..n {
            let h = ci1[k];
            ci1[k] = s * ci[k] + c * h;
            ci[k] = c * ci[k] - s * h;
        }
    })
    .map_err(|index| SpectralError::ConvergenceFailure { index })?;

    // restore phases: H = P K P† so eigenvectors pick up p row-wise
    let vecs = CMat::from_fn(n, |r, c| phases[r] * v[r + c * n]);
    Ok((d, vecs))
}

fn complex_dense_path(m: &CMat) -> Result<(Vec<f64>, CMat), SpectralError> {
    let n = m.dim();
    if n == 1 {
        return Ok((vec![m.at(0, 0).re], CMat::identity(1)));
    }
    let (mut d, mut e, mut q) = hermitian_tridiagonalize(m);
    tridiag::tql2(&mut d, &mut e, |i, c, s| {
        for k in 0..n {
            let h = q.at(k, i + 1);
            let g = q.at(k, i);
            q.set(k, i + 1, s * g + c * h);
            q.set(k, i, c * g - s * h);
        }
    })
    .map_err(|index| SpectralError::ConvergenceFailure { index })?;
    Ok((d, q))
}

/// Householder reduction of a complex Hermitian matrix to a real symmetric
/// tridiagonal one, returning (diagonal, couplings, accumulated unitary).
fn hermitian_tridiagonalize(m: &CMat) -> (Vec<f64>, Vec<f64>, CMat) {
    let n = m.dim();
    let mut h = m.clone();
    let mut q = CMat::identity(n);
    let scale = m.max_abs().max(f64::MIN_POSITIVE);

    let mut v = vec![C64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        // norm of the column below the subdiagonal decides if work is needed
        let mut below2 = 0.0f64;
        for i in (k + 2)..n {
            below2 += h.at(i, k).norm_sqr();
        }
        if below2.sqrt() <= 1e-300 * scale {
            continue;
        }
        let x0 = h.at(k + 1, k);
        let xnorm = (x0.norm_sqr() + below2).sqrt();
        let alpha = if x0.norm() > 0.0 {
            -x0 / x0.norm() * xnorm
        } else {
            C64::new(-xnorm, 0.0)
        };
        for item in v.iter_mut() {
            *item = C64::new(0.0, 0.0);
        }
        v[k + 1] = x0 - alpha;
        for i in (k + 2)..n {
            v[i] = h.at(i, k);
        }
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm <= 1e-300 * scale {
            continue;
        }
        for item in v.iter_mut() {
            *item /= vnorm;
        }
        // H <- (I − 2vv†) H (I − 2vv†); v vanishes on rows 0..=k so the
        // leading block is untouched
        let w = h_mul_vec(&h, &v);
        let gamma: C64 = v.iter().zip(w.iter()).map(|(a, b)| a.conj() * b).sum();
        for r in (k + 1)..n {
            for c in 0..n {
                let upd = -2.0 * (w[r] * v[c].conj() + v[r] * w[c].conj())
                    + 4.0 * gamma * v[r] * v[c].conj();
                h.add_assign_at(r, c, upd);
            }
        }
        for r in 0..=k {
            for c in (k + 1)..n {
                let upd = -2.0 * (w[r] * v[c].conj()) ;
                h.add_assign_at(r, c, upd);
            }
        }
        // Q <- Q (I − 2vv†)
        for r in 0..n {
            let mut t = C64::new(0.0, 0.0);
            for (i, vi) in v.iter().enumerate() {
                t += q.at(r, i) * vi;
            }
            if t.norm_sqr() == 0.0 {
                continue;
            }
            for (c, vc) in v.iter().enumerate() {
                let upd = -2.0 * t * vc.conj();
                q.add_assign_at(r, c, upd);
            }
        }
    }

    // absorb subdiagonal phases into the accumulated unitary
    let mut d = vec![0.0f64; n];
    let mut e = vec![0.0f64; n];
    let mut p = vec![C64::new(1.0, 0.0); n];
    for i in 0..n {
        d[i] = h.at(i, i).re;
    }
    for i in 0..n - 1 {
        let t = h.at(i + 1, i);
        e[i] = t.norm();
        p[i + 1] = if t.norm() > 0.0 { t * p[i] / t.norm() } else { p[i] };
    }
    for c in 0..n {
        for r in 0..n {
            let val = q.at(r, c) * p[c];
            q.set(r, c, val);
        }
    }
    (d, e, q)
}

fn h_mul_vec(h: &CMat, v: &[C64]) -> Vec<C64> {
    let n = h.dim();
    let mut out = vec![C64::new(0.0, 0.0); n];
    for r in 0..n {
        let mut acc = C64::new(0.0, 0.0);
        for c in 0..n {
            acc += h.at(r, c) * v[c];
        }
        out[r] = acc;
    }
    out
}

/// Dense unitary of the sector rotation,
/// `U(θ, φ) = exp[(θ/2)(e^{−iφ} A† − e^{iφ} A)]` with `A` the matrix of
/// `a†b`. At φ = 0 this is the standard rotation about the y spin axis,
/// and conjugating the diagonal model with it reproduces the canonical
/// coupling formulas with their printed signs.
pub fn rotation_unitary(r: &RotationSpec) -> CMat {
    let basis = FockBasis::new(r.two_j);
    let n = basis.dim();
    if r.theta == 0.0 {
        return CMat::identity(n);
    }
    // i·G is Hermitian tridiagonal with raising entries −i(θ/2)e^{iφ}·a_n
    let tj = r.two_j as f64;
    let half = 0.5 * r.theta;
    let ph = C64::from_polar(1.0, r.phi);
    let raise1: Vec<C64> = (0..n.saturating_sub(1))
        .map(|i| {
            let a = ((i as f64 + 1.0) * (tj - i as f64)).sqrt();
            C64::new(0.0, -1.0) * ph * (half * a)
        })
        .collect();
    let ig = HermitianOperator::from_bands(
        basis,
        vec![0.0; n],
        raise1,
        vec![C64::new(0.0, 0.0); n.saturating_sub(2)],
    );
    let dec = eigh(&ig).expect("rotation generator is well conditioned");
    // U = W e^{−iω} W†
    let w = &dec.eigenvectors;
    let mut u = CMat::zeros(n);
    for (l, &om) in dec.eigenvalues.iter().enumerate() {
        let f = C64::from_polar(1.0, -om);
        for rr in 0..n {
            let wl = w.at(rr, l) * f;
            if wl.norm_sqr() == 0.0 {
                continue;
            }
            for cc in 0..n {
                u.add_assign_at(rr, cc, wl * w.at(cc, l).conj());
            }
        }
    }
    u
}

/// Ground-truth conjugated operator `U(θ,φ) · H0 · U(θ,φ)†` with
/// `H0 = a1·Jz + a2·Jz²`. Dense work, capped at `two_j ≤ 64`.
pub fn conjugate_oracle(x: &ExactParams) -> Result<HermitianOperator, SpectralError> {
    if x.two_j > ORACLE_TWO_J_CAP {
        return Err(SpectralError::SizeExceeded { two_j: x.two_j, cap: ORACLE_TWO_J_CAP });
    }
    let basis = FockBasis::new(x.two_j);
    let n = basis.dim();
    let u = rotation_unitary(&RotationSpec { theta: x.theta, phi: x.phi, two_j: x.two_j });
    let h0 = CMat::from_fn(n, |r, c| {
        if r == c {
            let k = basis.k_at(r);
            C64::new(x.a1 * k + x.a2 * k * k, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let m = u.mul(&h0).mul(&u.adjoint());
    // hermitize away rounding asymmetry
    let herm = CMat::from_fn(n, |r, c| 0.5 * (m.at(r, c) + m.at(c, r).conj()));
    Ok(HermitianOperator::from_dense(basis, herm))
}

/// Propagate a state: `s(t) = V e^{−iEt} V† s0` (ħ = 1).
pub fn evolve(
    d: &SpectralDecomposition,
    s0: &StateVector,
    t: f64,
) -> Result<StateVector, SpectralError> {
    if d.basis != s0.basis {
        return Err(SpectralError::BasisMismatch);
    }
    let mut coeffs = d.eigenvectors.adjoint_mul_vec(&s0.amps);
    for (c, &ev) in coeffs.iter_mut().zip(d.eigenvalues.iter()) {
        *c *= C64::from_polar(1.0, -ev * t);
    }
    let amps = d.eigenvectors.mul_vec(&coeffs);
    Ok(StateVector { basis: d.basis, amps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{build_hamiltonian, m_operator};
    use crate::model::{exact_to_canonical, CanonicalParams};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::PI;

    fn re(v: f64) -> C64 {
        C64::new(v, 0.0)
    }

    fn diag_operator(vals: &[f64]) -> HermitianOperator {
        let basis = FockBasis::new(vals.len() as u32 - 1);
        HermitianOperator::from_bands(
            basis,
            vals.to_vec(),
            vec![re(0.0); vals.len() - 1],
            vec![re(0.0); vals.len().saturating_sub(2)],
        )
    }

    #[test]
    fn diagonal_input_sorted() {
        let h = diag_operator(&[3.0, 1.0, 2.0]);
        let d = eigh(&h).unwrap();
        assert_eq!(d.eigenvalues, vec![1.0, 2.0, 3.0]);
        // permutation eigenvectors
        assert!((d.eigenvectors.at(1, 0) - re(1.0)).norm() < 1e-14);
        assert!((d.eigenvectors.at(2, 1) - re(1.0)).norm() < 1e-14);
        assert!((d.eigenvectors.at(0, 2) - re(1.0)).norm() < 1e-14);
    }

    #[test]
    fn exchange_two_level() {
        let basis = FockBasis::new(1);
        let h = HermitianOperator::from_bands(basis, vec![0.0, 0.0], vec![re(1.0)], vec![]);
        let d = eigh(&h).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-14);
    }

    fn random_hermitian(n: usize, rng: &mut StdRng) -> CMat {
        let mut m = CMat::zeros(n);
        for r in 0..n {
            m.set(r, r, re(rng.gen_range(-1.0..1.0)));
            for c in (r + 1)..n {
                let z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(r, c, z);
                m.set(c, r, z.conj());
            }
        }
        m
    }

    #[test]
    fn random_hermitian_reconstruction() {
        let mut rng = StdRng::seed_from_u64(0x0e16_0001);
        for _ in 0..10 {
            let m = random_hermitian(6, &mut rng);
            let basis = FockBasis::new(5);
            let h = HermitianOperator::from_dense(basis, m.clone());
            let d = eigh(&h).unwrap();
            // residual ||H V − V E||
            for c in 0..6 {
                let col = d.eigenvectors.col(c);
                let hv = m.mul_vec(&col);
                for r in 0..6 {
                    assert!((hv[r] - d.eigenvalues[c] * col[r]).norm() < 1e-12);
                }
            }
            assert!(d.eigenvectors.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn banded_phase_peel_matches_dense_fallback() {
        let mut rng = StdRng::seed_from_u64(0x0e16_0002);
        for _ in 0..5 {
            let c = CanonicalParams {
                a0: rng.gen_range(-1.0..1.0),
                delta_omega: rng.gen_range(-1.0..1.0),
                lam: rng.gen_range(-1.0..1.0),
                phi: rng.gen_range(0.0..6.28),
                u_cross: rng.gen_range(-1.0..1.0),
                mu: rng.gen_range(-1.0..1.0),
                lambda2: rng.gen_range(-1.0..1.0),
                two_j: 9,
            };
            let h = build_hamiltonian(&c);
            let via_band = eigh(&h).unwrap();
            let via_dense =
                eigh(&HermitianOperator::from_dense(h.basis, h.dense_view())).unwrap();
            for (a, b) in via_band.eigenvalues.iter().zip(via_dense.eigenvalues.iter()) {
                assert!((a - b).abs() < 1e-11);
            }
            // both eigenbases diagonalize the same matrix
            let m = h.dense_view();
            for cidx in 0..h.basis.dim() {
                let col = via_band.eigenvectors.col(cidx);
                let hv = m.mul_vec(&col);
                for r in 0..h.basis.dim() {
                    assert!((hv[r] - via_band.eigenvalues[cidx] * col[r]).norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn rotation_identity_at_zero_angle() {
        let u = rotation_unitary(&RotationSpec { theta: 0.0, phi: 1.3, two_j: 6 });
        assert_eq!(u.max_abs_diff(&CMat::identity(7)), 0.0);
    }

    #[test]
    fn rotation_two_level_closed_form() {
        for theta in [0.4, 1.0, 2.3] {
            let u = rotation_unitary(&RotationSpec { theta, phi: 0.0, two_j: 1 });
            assert!((u.at(0, 0).norm() - (theta / 2.0).cos()).abs() < 1e-13);
            assert!((u.at(0, 1).norm() - (theta / 2.0).sin()).abs() < 1e-13);
            assert!(u.unitarity_defect() < 1e-12);
        }
    }

    #[test]
    fn rotation_unitarity() {
        for (theta, phi, two_j) in [(0.7, 0.0, 5), (2.9, 1.1, 12), (PI, 4.0, 8)] {
            let u = rotation_unitary(&RotationSpec { theta, phi, two_j });
            assert!(u.unitarity_defect() < 1e-12, "theta={theta} phi={phi}");
        }
    }

    #[test]
    fn oracle_at_zero_angle_is_diagonal_model() {
        let x = ExactParams { a1: 1.5, a2: -0.7, theta: 0.0, phi: 0.0, two_j: 5 };
        let h = conjugate_oracle(&x).unwrap().dense_view();
        let basis = FockBasis::new(5);
        for i in 0..6 {
            let k = basis.k_at(i);
            assert!((h.at(i, i) - re(1.5 * k - 0.7 * k * k)).norm() < 1e-13);
        }
    }

    #[test]
    fn oracle_zero_coefficients_zero_matrix() {
        let x = ExactParams { a1: 0.0, a2: 0.0, theta: 1.1, phi: 0.5, two_j: 4 };
        let h = conjugate_oracle(&x).unwrap().dense_view();
        assert!(h.max_abs() < 1e-14);
    }

    #[test]
    fn oracle_matches_mapped_band_build() {
        let x = ExactParams { a1: 2.0, a2: 4.0, theta: 0.9, phi: 0.4, two_j: 6 };
        let oracle = conjugate_oracle(&x).unwrap().dense_view();
        let built = build_hamiltonian(&exact_to_canonical(&x)).dense_view();
        let scale = oracle.max_abs();
        assert!(built.max_abs_diff(&oracle) <= 1e-10 * scale);
    }

    #[test]
    fn oracle_fixes_cross_collision_coefficient() {
        // at θ = π/2, a2 = 4 the conjugation demands u_cross = 2; the
        // halved convention breaks the identity
        let x = ExactParams { a1: 2.0, a2: 4.0, theta: PI / 2.0, phi: 0.0, two_j: 10 };
        let oracle = conjugate_oracle(&x).unwrap().dense_view();
        let c = exact_to_canonical(&x);
        assert!((c.u_cross - 2.0).abs() < 1e-12);
        let built = build_hamiltonian(&c).dense_view();
        let scale = oracle.max_abs();
        assert!(built.max_abs_diff(&oracle) <= 1e-10 * scale);
        let mut halved = c.clone();
        halved.u_cross /= 2.0;
        let off = build_hamiltonian(&halved).dense_view();
        assert!(off.max_abs_diff(&oracle) > 1e-3 * scale);
    }

    #[test]
    fn oracle_size_cap() {
        let x = ExactParams { a1: 1.0, a2: 1.0, theta: 0.5, phi: 0.0, two_j: 65 };
        assert!(matches!(
            conjugate_oracle(&x),
            Err(SpectralError::SizeExceeded { .. })
        ));
    }

    #[test]
    fn evolve_at_zero_time_is_identity() {
        let c = CanonicalParams {
            a0: 0.2,
            delta_omega: 0.4,
            lam: 0.6,
            phi: 0.0,
            u_cross: 0.1,
            mu: 0.0,
            lambda2: 0.3,
            two_j: 6,
        };
        let h = build_hamiltonian(&c);
        let d = eigh(&h).unwrap();
        let mut s0 = StateVector::basis_vector(h.basis, 2);
        s0.normalize();
        let s = evolve(&d, &s0, 0.0).unwrap();
        for (a, b) in s.amps.iter().zip(s0.amps.iter()) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn eigenvector_moduli_stationary() {
        let c = CanonicalParams {
            a0: 0.0,
            delta_omega: 0.7,
            lam: 0.9,
            phi: 0.3,
            u_cross: 0.2,
            mu: 0.1,
            lambda2: 0.4,
            two_j: 5,
        };
        let h = build_hamiltonian(&c);
        let d = eigh(&h).unwrap();
        let s0 = StateVector::new(h.basis, d.eigenvectors.col(2)).unwrap();
        for t in [0.3, 1.7, 9.2] {
            let s = evolve(&d, &s0, t).unwrap();
            for (a, b) in s.amps.iter().zip(s0.amps.iter()) {
                assert!((a.norm() - b.norm()).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn rabi_oscillation_closed_form() {
        // j = 1/2, δω = 0, λ > 0, start all in mode a: ⟨m⟩(t) = cos(2λt)
        let lam = 0.8;
        let c = CanonicalParams {
            a0: 0.0,
            delta_omega: 0.0,
            lam,
            phi: 0.0,
            u_cross: 0.0,
            mu: 0.0,
            lambda2: 0.0,
            two_j: 1,
        };
        let h = build_hamiltonian(&c);
        let d = eigh(&h).unwrap();
        let mop = m_operator(h.basis);
        let s0 = StateVector::basis_vector(h.basis, 1);
        for i in 0..30 {
            let t = 0.21 * i as f64;
            let s = evolve(&d, &s0, t).unwrap();
            let m = mop.expectation(&s);
            assert!((m - (2.0 * lam * t).cos()).abs() < 1e-12);
        }
    }

    #[test]
    fn norm_and_energy_conserved_along_trajectory() {
        let x = ExactParams { a1: 3.0, a2: 1.0, theta: 1.2, phi: 0.6, two_j: 100 };
        let c = exact_to_canonical(&x);
        let h = build_hamiltonian(&c);
        let d = eigh(&h).unwrap();
        let mut s0 = StateVector::zero(h.basis);
        for (i, a) in s0.amps.iter_mut().enumerate() {
            *a = C64::new((0.13 * i as f64).sin(), (0.29 * i as f64).cos());
        }
        s0.normalize();
        let e0 = h.expectation(&s0);
        let scale = h.max_abs();
        for i in 0..1000 {
            let t = 0.02 * i as f64;
            let s = evolve(&d, &s0, t).unwrap();
            assert!((s.norm() - 1.0).abs() <= 1e-10);
            if i % 100 == 0 {
                assert!((h.expectation(&s) - e0).abs() <= 1e-9 * scale);
            }
        }
    }

    #[test]
    fn evolve_rejects_basis_mismatch() {
        let h = diag_operator(&[1.0, 2.0]);
        let d = eigh(&h).unwrap();
        let s0 = StateVector::basis_vector(FockBasis::new(3), 0);
        assert!(matches!(evolve(&d, &s0, 1.0), Err(SpectralError::BasisMismatch)));
    }

    #[test]
    #[ignore = "dimension-2001 scaling check, run explicitly"]
    fn eigh_handles_dim_2001() {
        let x = ExactParams { a1: 49.0, a2: 1.0, theta: 1.35, phi: 0.0, two_j: 2000 };
        let c = exact_to_canonical(&x);
        let h = build_hamiltonian(&c);
        let start = std::time::Instant::now();
        let d = eigh(&h).unwrap();
        let elapsed = start.elapsed();
        eprintln!("dim-2001 eigh took {elapsed:?}");
        assert!(elapsed.as_secs() < 300);
        // spot-check the spectrum against the ladder
        let basis = h.basis;
        let mut expected: Vec<f64> = (0..basis.dim())
            .map(|i| {
                let k = basis.k_at(i);
                49.0 * k + k * k
            })
            .collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let scale = expected.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for (got, want) in d.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).abs() <= 1e-9 * scale);
        }
    }
}
