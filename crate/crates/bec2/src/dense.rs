//! Small dense complex matrices, row-major storage.
//!
//! Sized for sector dimensions up to a few thousand; used for unitaries,
//! eigenvector sets and oracle comparisons. Not a general linear-algebra
//! layer.

use num_complex::Complex64 as C64;

#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    data: Vec<C64>,
}

impl CMat {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![C64::new(0.0, 0.0); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C64::new(1.0, 0.0));
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let mut m = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C64 {
        self.data[r * self.n + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.n + c] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, r: usize, c: usize, v: C64) {
        self.data[r * self.n + c] += v;
    }

    pub fn col(&self, c: usize) -> Vec<C64> {
        (0..self.n).map(|r| self.at(r, c)).collect()
    }

    pub fn adjoint(&self) -> CMat {
        CMat::from_fn(self.n, |r, c| self.at(c, r).conj())
    }

    pub fn mul(&self, other: &CMat) -> CMat {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = CMat::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.at(r, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.at(k, c);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        let n = self.n;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for r in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for c in 0..n {
                acc += self.at(r, c) * v[c];
            }
            out[r] = acc;
        }
        out
    }

    /// `self† · v`, without forming the adjoint.
    pub fn adjoint_mul_vec(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(self.n, v.len(), "dimension mismatch");
        let n = self.n;
        let mut out = vec![C64::new(0.0, 0.0); n];
        for r in 0..n {
            let vr = v[r];
            for c in 0..n {
                out[c] += self.at(r, c).conj() * vr;
            }
        }
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &CMat) -> f64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest deviation from `M = M†`.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for r in 0..self.n {
            for c in r..self.n {
                let d = (self.at(r, c) - self.at(c, r).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Largest deviation of `self† · self` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().mul(self);
        gram.max_abs_diff(&CMat::identity(self.n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn mul_identity() {
        let m = CMat::from_fn(3, |r, cidx| c((r * 3 + cidx) as f64, 0.5));
        let i = CMat::identity(3);
        assert_eq!(m.mul(&i), m);
        assert_eq!(i.mul(&m), m);
    }

    #[test]
    fn adjoint_involution() {
        let m = CMat::from_fn(4, |r, cidx| c(r as f64 - cidx as f64, 0.3 * r as f64));
        assert_eq!(m.adjoint().adjoint(), m);
    }

    #[test]
    fn adjoint_mul_vec_matches_explicit() {
        let m = CMat::from_fn(3, |r, cidx| c(0.2 * r as f64 + cidx as f64, 0.1));
        let v = vec![c(1.0, -1.0), c(0.5, 0.0), c(0.0, 2.0)];
        let direct = m.adjoint().mul_vec(&v);
        let fused = m.adjoint_mul_vec(&v);
        for (a, b) in direct.iter().zip(fused.iter()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn hermitian_defect_detects_asymmetry() {
        let mut m = CMat::identity(2);
        assert_eq!(m.hermitian_defect(), 0.0);
        m.set(0, 1, c(0.0, 1.0));
        m.set(1, 0, c(0.0, 1.0)); // conjugate would be -i
        assert!(m.hermitian_defect() > 1.0);
    }
}
