//! Measurement layer: number distributions, relative population, mode
//! entanglement and peak counting.

use crate::exact::{wigner_row, ExactError};
use crate::fock::{FockBasis, StateVector};

/// Probabilities over the projection k of a sector.
#[derive(Clone, Debug)]
pub struct ProbabilityRow {
    pub basis: FockBasis,
    pub probs: Vec<f64>,
}

/// Von Neumann entropy in bits.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyValue {
    pub bits: f64,
}

/// `P(k) = |⟨n_a = j+k | ψ⟩|²` for a normalized state.
pub fn number_distribution(s: &StateVector) -> ProbabilityRow {
    ProbabilityRow {
        basis: s.basis,
        probs: s.amps.iter().map(|a| a.norm_sqr()).collect(),
    }
}

/// Average relative population `⟨a†a − b†b⟩ = Σ 2k P(k)`.
pub fn mean_m(s: &StateVector) -> f64 {
    s.amps
        .iter()
        .enumerate()
        .map(|(i, a)| s.basis.two_k_at(i) as f64 * a.norm_sqr())
        .sum()
}

/// Average projection `⟨Jz⟩ = Σ k P(k)` (half the relative population).
pub fn mean_jz(s: &StateVector) -> f64 {
    0.5 * mean_m(s)
}

fn shannon_bits(probs: &[f64]) -> f64 {
    let bits: f64 = probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum();
    // normalization noise can leave a −1e−16 on near-pure states
    bits.max(0.0)
}

/// Mode entanglement of a pure sector state.
///
/// With the total particle number fixed, the reduced state of mode `a` is
/// diagonal in its own number basis, so the von Neumann entropy is the
/// Shannon entropy of the number distribution. A generic partial-trace
/// cross-check lives in the tests.
pub fn entanglement_entropy(s: &StateVector) -> EntropyValue {
    EntropyValue { bits: shannon_bits(&number_distribution(s).probs) }
}

/// Entanglement of the rotated Dicke state `R(θ,φ)|j,k0⟩`; the rotation
/// phase never reaches the probabilities.
pub fn ground_entropy(theta: f64, two_j: u32, two_k0: i64) -> Result<EntropyValue, ExactError> {
    let row = wigner_row(two_j, two_k0, theta)?;
    Ok(EntropyValue { bits: shannon_bits(&row.probabilities()) })
}

/// Count strict local maxima above `prominence_floor · max(probs)`;
/// plateaus count once, at their leftmost index.
pub fn count_peaks(p: &ProbabilityRow, prominence_floor: f64) -> usize {
    assert!(prominence_floor > 0.0, "prominence floor must be positive");
    let probs = &p.probs;
    let n = probs.len();
    if n == 0 {
        return 0;
    }
    let threshold = prominence_floor * probs.iter().fold(0.0f64, |a, &v| a.max(v));
    let mut count = 0usize;
    let mut i = 0usize;
    while i < n {
        // plateau [i, jend] of equal values
        let mut jend = i;
        while jend + 1 < n && probs[jend + 1] == probs[i] {
            jend += 1;
        }
        let left = if i == 0 { f64::NEG_INFINITY } else { probs[i - 1] };
        let right = if jend + 1 == n { f64::NEG_INFINITY } else { probs[jend + 1] };
        if probs[i] > left && probs[i] > right && probs[i] > threshold {
            count += 1;
        }
        i = jend + 1;
    }
    count
}
