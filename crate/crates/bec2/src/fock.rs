//! Fixed-particle-number two-mode Fock sector: basis bookkeeping, ladder
//! operator words (the brute-force oracle primitive), and assembly of the
//! model Hamiltonian as a banded Hermitian matrix.
//!
//! Basis convention shared by every module: index `i` holds
//! `n_a = i, n_b = 2j − i`, so the projection is `k = i − j` and the
//! physical relative population `a†a − b†b` is `2k`.

use crate::dense::CMat;
use crate::model::CanonicalParams;
use num_complex::Complex64 as C64;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FockBasis {
    two_j: u32,
}

impl FockBasis {
    pub fn new(two_j: u32) -> Self {
        Self { two_j }
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Twice the projection k of basis index `i`.
    pub fn two_k_at(&self, i: usize) -> i64 {
        2 * i as i64 - self.two_j as i64
    }

    /// Projection k of basis index `i` as a float (may be half-integer).
    pub fn k_at(&self, i: usize) -> f64 {
        self.two_k_at(i) as f64 / 2.0
    }

    /// Basis index holding projection `two_k`, if it is in the sector.
    pub fn index_of_two_k(&self, two_k: i64) -> Option<usize> {
        let tj = self.two_j as i64;
        if two_k.abs() > tj || (two_k - tj) % 2 != 0 {
            return None;
        }
        Some(((two_k + tj) / 2) as usize)
    }
}

#[derive(Debug, Error)]
pub enum FockError {
    #[error("operator word changes total particle number by {net}")]
    SectorViolation { net: i64 },
    #[error("state and operator bases differ")]
    BasisMismatch,
    #[error("amplitude vector has length {got}, basis dimension is {want}")]
    LengthMismatch { got: usize, want: usize },
}

/// Complex amplitudes over a fixed sector.
#[derive(Clone, Debug)]
pub struct StateVector {
    pub basis: FockBasis,
    pub amps: Vec<C64>,
}

impl StateVector {
    pub fn new(basis: FockBasis, amps: Vec<C64>) -> Result<Self, FockError> {
        if amps.len() != basis.dim() {
            return Err(FockError::LengthMismatch { got: amps.len(), want: basis.dim() });
        }
        Ok(Self { basis, amps })
    }

    pub fn zero(basis: FockBasis) -> Self {
        Self { basis, amps: vec![C64::new(0.0, 0.0); basis.dim()] }
    }

    /// Basis vector with `n_a = index`.
    pub fn basis_vector(basis: FockBasis, index: usize) -> Self {
        let mut s = Self::zero(basis);
        s.amps[index] = C64::new(1.0, 0.0);
        s
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            for a in &mut self.amps {
                *a /= n;
            }
        }
    }

    /// ⟨self | other⟩ with the conjugate on `self`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        debug_assert_eq!(self.basis, other.basis);
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// Single ladder generator acting on one of the two modes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    /// a†
    ADag,
    /// a
    A,
    /// b†
    BDag,
    /// b
    B,
}

impl Gen {
    fn net(self) -> i64 {
        match self {
            Gen::ADag | Gen::BDag => 1,
            Gen::A | Gen::B => -1,
        }
    }
}

/// Product of ladder generators with a complex prefactor. `ops` is written
/// in operator order (leftmost factor first) and applied right-to-left.
#[derive(Clone, Debug)]
pub struct OperatorWord {
    pub factor: C64,
    pub ops: Vec<Gen>,
}

impl OperatorWord {
    pub fn new(factor: C64, ops: Vec<Gen>) -> Self {
        Self { factor, ops }
    }

    /// Creations minus annihilations; must vanish for in-sector words.
    pub fn net_count(&self) -> i64 {
        self.ops.iter().map(|g| g.net()).sum()
    }
}

/// Apply a zero-net-count ladder word to a state. Exact ladder algebra
/// `a|n⟩ = √n |n−1⟩`, `a†|n⟩ = √(n+1) |n+1⟩`; the result is generally
/// unnormalized and may be zero.
pub fn apply_word(w: &OperatorWord, s: &StateVector) -> Result<StateVector, FockError> {
    let net = w.net_count();
    if net != 0 {
        return Err(FockError::SectorViolation { net });
    }
    let basis = s.basis;
    let tj = basis.two_j() as i64;
    let mut out = StateVector::zero(basis);
    for (i, amp) in s.amps.iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let mut na = i as i64;
        let mut nb = tj - na;
        let mut coef = 1.0f64;
        for g in w.ops.iter().rev() {
            match g {
                Gen::A => {
                    if na == 0 {
                        coef = 0.0;
                        break;
                    }
                    coef *= (na as f64).sqrt();
                    na -= 1;
                }
                Gen::ADag => {
                    coef *= (na as f64 + 1.0).sqrt();
                    na += 1;
                }
                Gen::B => {
                    if nb == 0 {
                        coef = 0.0;
                        break;
                    }
                    coef *= (nb as f64).sqrt();
                    nb -= 1;
                }
                Gen::BDag => {
                    coef *= (nb as f64 + 1.0).sqrt();
                    nb += 1;
                }
            }
        }
        if coef == 0.0 {
            continue;
        }
        debug_assert_eq!(na + nb, tj);
        out.amps[na as usize] += w.factor * coef * amp;
    }
    Ok(out)
}

/// Hermitian operator on a sector, stored as its diagonal and the two
/// raising amplitudes; lowering entries are implied by conjugate symmetry.
/// An optional dense panel carries matrices that only happen to be banded
/// numerically (conjugation-oracle output), so comparisons see every entry.
#[derive(Clone, Debug)]
pub struct HermitianOperator {
    pub basis: FockBasis,
    /// ⟨n|H|n⟩ (real by Hermiticity).
    pub diag: Vec<f64>,
    /// ⟨n+1|H|n⟩, the one-step raising amplitude.
    pub raise1: Vec<C64>,
    /// ⟨n+2|H|n⟩, the two-step raising amplitude.
    pub raise2: Vec<C64>,
    dense: Option<CMat>,
}

impl HermitianOperator {
    pub fn from_bands(
        basis: FockBasis,
        diag: Vec<f64>,
        raise1: Vec<C64>,
        raise2: Vec<C64>,
    ) -> Self {
        let dim = basis.dim();
        assert_eq!(diag.len(), dim);
        assert_eq!(raise1.len(), dim.saturating_sub(1));
        assert_eq!(raise2.len(), dim.saturating_sub(2));
        Self { basis, diag, raise1, raise2, dense: None }
    }

    /// Wrap a dense Hermitian matrix. Entries outside the band are kept in
    /// the dense panel; the band fields hold the banded projection.
    pub fn from_dense(basis: FockBasis, m: CMat) -> Self {
        let dim = basis.dim();
        assert_eq!(m.dim(), dim);
        let defect = m.hermitian_defect();
        assert!(
            defect <= 1e-10 * m.max_abs().max(f64::MIN_POSITIVE),
            "matrix is not Hermitian: defect {defect:.3e}"
        );
        let diag = (0..dim).map(|i| m.at(i, i).re).collect();
        let raise1 = (0..dim.saturating_sub(1)).map(|i| m.at(i + 1, i)).collect();
        let raise2 = (0..dim.saturating_sub(2)).map(|i| m.at(i + 2, i)).collect();
        Self { basis, diag, raise1, raise2, dense: Some(m) }
    }

    pub fn has_dense(&self) -> bool {
        self.dense.is_some()
    }

    /// Dense Hermitian view. Returns the stored panel when present,
    /// otherwise assembles it from the bands.
    pub fn dense_view(&self) -> CMat {
        if let Some(m) = &self.dense {
            return m.clone();
        }
        let dim = self.basis.dim();
        let mut m = CMat::zeros(dim);
        for i in 0..dim {
            m.set(i, i, C64::new(self.diag[i], 0.0));
        }
        for (i, &v) in self.raise1.iter().enumerate() {
            m.set(i + 1, i, v);
            m.set(i, i + 1, v.conj());
        }
        for (i, &v) in self.raise2.iter().enumerate() {
            m.set(i + 2, i, v);
            m.set(i, i + 2, v.conj());
        }
        m
    }

    pub fn max_abs(&self) -> f64 {
        if let Some(m) = &self.dense {
            return m.max_abs();
        }
        let d = self.diag.iter().map(|v| v.abs()).fold(0.0, f64::max);
        let r1 = self.raise1.iter().map(|v| v.norm()).fold(0.0, f64::max);
        let r2 = self.raise2.iter().map(|v| v.norm()).fold(0.0, f64::max);
        d.max(r1).max(r2)
    }

    /// H·v using the band structure (dense panel, when present).
    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        if let Some(m) = &self.dense {
            return m.mul_vec(v);
        }
        let dim = self.basis.dim();
        assert_eq!(v.len(), dim);
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for i in 0..dim {
            out[i] += self.diag[i] * v[i];
        }
        for (i, &r) in self.raise1.iter().enumerate() {
            out[i + 1] += r * v[i];
            out[i] += r.conj() * v[i + 1];
        }
        for (i, &r) in self.raise2.iter().enumerate() {
            out[i + 2] += r * v[i];
            out[i] += r.conj() * v[i + 2];
        }
        out
    }

    /// ⟨s|H|s⟩ for a normalized state.
    pub fn expectation(&self, s: &StateVector) -> f64 {
        let hv = self.mul_vec(&s.amps);
        s.amps
            .iter()
            .zip(hv.iter())
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// The Hamiltonian as a list of ladder words, one per second-quantized term.
/// This is the oracle form: summing [`apply_word`] over it on every basis
/// vector reproduces the banded assembly entry for entry.
pub fn hamiltonian_terms(c: &CanonicalParams) -> Vec<OperatorWord> {
    use Gen::*;
    let ph = C64::from_polar(1.0, c.phi);
    let ph2 = C64::from_polar(1.0, 2.0 * c.phi);
    let re = |v: f64| C64::new(v, 0.0);
    let terms = vec![
        OperatorWord::new(re(c.a0), vec![]),
        OperatorWord::new(re(c.delta_omega), vec![ADag, A]),
        OperatorWord::new(re(-c.delta_omega), vec![BDag, B]),
        OperatorWord::new(ph * c.lam, vec![ADag, B]),
        OperatorWord::new(ph.conj() * c.lam, vec![A, BDag]),
        OperatorWord::new(re(c.u_cross), vec![ADag, BDag, A, B]),
        OperatorWord::new(ph2 * c.lambda2, vec![ADag, ADag, B, B]),
        OperatorWord::new(ph2.conj() * c.lambda2, vec![BDag, BDag, A, A]),
        OperatorWord::new(ph * c.mu, vec![ADag, ADag, A, B]),
        OperatorWord::new(-ph * c.mu, vec![ADag, BDag, B, B]),
        OperatorWord::new(ph.conj() * c.mu, vec![BDag, ADag, A, A]),
        OperatorWord::new(-ph.conj() * c.mu, vec![BDag, BDag, B, A]),
    ];
    // every term conserves the sector
    for t in &terms {
        assert_eq!(t.net_count(), 0, "malformed Hamiltonian term");
    }
    terms
}

/// Assemble the Hamiltonian from closed-form band entries.
///
/// diagonal(n) = a0 + δω(2n−2j) + u·n(2j−n)
/// raise1(n)   = e^{iφ} [λ + μ(2n+1−2j)] √((n+1)(2j−n))
/// raise2(n)   = Λ e^{2iφ} √((n+1)(n+2)(2j−n)(2j−n−1))
///
/// The forms are validated against the word oracle in the test suite.
pub fn build_hamiltonian(c: &CanonicalParams) -> HermitianOperator {
    let basis = FockBasis::new(c.two_j);
    let dim = basis.dim();
    let tj = c.two_j as f64;
    let ph = C64::from_polar(1.0, c.phi);
    let ph2 = C64::from_polar(1.0, 2.0 * c.phi);

    let diag: Vec<f64> = (0..dim)
        .map(|n| {
            let nf = n as f64;
            c.a0 + c.delta_omega * (2.0 * nf - tj) + c.u_cross * nf * (tj - nf)
        })
        .collect();
    let raise1: Vec<C64> = (0..dim.saturating_sub(1))
        .map(|n| {
            let nf = n as f64;
            let amp = (c.lam + c.mu * (2.0 * nf + 1.0 - tj)) * ((nf + 1.0) * (tj - nf)).sqrt();
            ph * amp
        })
        .collect();
    let raise2: Vec<C64> = (0..dim.saturating_sub(2))
        .map(|n| {
            let nf = n as f64;
            let amp = c.lambda2
                * ((nf + 1.0) * (nf + 2.0) * (tj - nf) * (tj - nf - 1.0)).sqrt();
            ph2 * amp
        })
        .collect();
    HermitianOperator::from_bands(basis, diag, raise1, raise2)
}

/// Hamiltonian assembled by brute-force ladder algebra; ground truth for
/// [`build_hamiltonian`]'s band formulas.
pub fn build_hamiltonian_via_words(c: &CanonicalParams) -> HermitianOperator {
    let basis = FockBasis::new(c.two_j);
    let dim = basis.dim();
    let terms = hamiltonian_terms(c);
    let mut m = CMat::zeros(dim);
    for col in 0..dim {
        let e = StateVector::basis_vector(basis, col);
        for t in &terms {
            let out = apply_word(t, &e).expect("terms conserve the sector");
            for (row, amp) in out.amps.iter().enumerate() {
                m.add_assign_at(row, col, *amp);
            }
        }
    }
    HermitianOperator::from_dense(basis, m)
}

/// The relative population `a†a − b†b`: diagonal entries `2k`.
pub fn m_operator(basis: FockBasis) -> HermitianOperator {
    let dim = basis.dim();
    let diag = (0..dim).map(|i| basis.two_k_at(i) as f64).collect();
    HermitianOperator::from_bands(
        basis,
        diag,
        vec![C64::new(0.0, 0.0); dim.saturating_sub(1)],
        vec![C64::new(0.0, 0.0); dim.saturating_sub(2)],
    )
}

/// The projection Jz = (a†a − b†b)/2: diagonal entries `k`.
pub fn jz_operator(basis: FockBasis) -> HermitianOperator {
    let dim = basis.dim();
    let diag = (0..dim).map(|i| basis.k_at(i)).collect();
    HermitianOperator::from_bands(
        basis,
        diag,
        vec![C64::new(0.0, 0.0); dim.saturating_sub(1)],
        vec![C64::new(0.0, 0.0); dim.saturating_sub(2)],
    )
}
