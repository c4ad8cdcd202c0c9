//! Symmetric eigensolver core: Householder reduction to tridiagonal form
//! and implicit-shift QL iteration, ported from the classic EISPACK/Jama
//! routines (public domain).
//!
//! Matrices are flat column-major (`m[row + col*n]`) so the column updates
//! in the hot loops stay contiguous.

/// Reduce a real symmetric matrix to tridiagonal form, accumulating the
/// orthogonal transformation in place.
///
/// On entry `v` holds the symmetric matrix; on exit it holds the
/// accumulated transformation Q with `A = Q T Qᵀ`. `d` receives the
/// diagonal of T and `e[i]` the coupling of rows `i` and `i+1`
/// (`e[n-1]` is zero).
pub fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    assert_eq!(v.len(), n * n);
    assert_eq!(d.len(), n);
    assert_eq!(e.len(), n);
    if n == 0 {
        return;
    }
    let at = |col: usize, row: usize| row + col * n;

    for j in 0..n {
        d[j] = v[at(j, n - 1)];
    }

    for i in (1..n).rev() {
        let mut scale = 0.0f64;
        let mut h = 0.0f64;
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(j, i - 1)];
                v[at(j, i)] = 0.0;
                v[at(i, j)] = 0.0;
            }
        } else {
            for k in 0..i {
                d[k] /= scale;
                h += d[k] * d[k];
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = 0.0;
            }
            // transform remaining columns
            for j in 0..i {
                let f = d[j];
                v[at(i, j)] = f;
                let mut g = e[j] + v[at(j, j)] * f;
                for k in (j + 1)..i {
                    g += v[at(j, k)] * d[k];
                    e[k] += v[at(j, k)] * f;
                }
                e[j] = g;
            }
            let mut f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[at(j, k)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(j, i - 1)];
                v[at(j, i)] = 0.0;
            }
        }
        d[i] = h;
    }

    // accumulate transformations
    for i in 0..n.saturating_sub(1) {
        v[at(i, n - 1)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(i + 1, k)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(i + 1, k)] * v[at(j, k)];
                }
                for k in 0..=i {
                    v[at(j, k)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(i + 1, k)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(j, n - 1)];
        v[at(j, n - 1)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;

    // shift couplings to e[i] ~ (i, i+1)
    for i in 0..n - 1 {
        e[i] = e[i + 1];
    }
    e[n - 1] = 0.0;
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
///
/// `d` holds the diagonal and `e[i]` the coupling of rows `i` and `i+1`
/// (`e[n-1]` ignored). On success `d` holds the eigenvalues (unsorted);
/// every plane rotation applied is reported through `rot(i, c, s)` so the
/// caller can accumulate eigenvectors in whatever storage it uses.
///
/// Fails with the offending eigenvalue index if 64 iterations do not
/// converge.
pub fn tql2(
    d: &mut [f64],
    e: &mut [f64],
    mut rot: impl FnMut(usize, f64, f64),
) -> Result<(), usize> {
    let n = d.len();
    assert_eq!(e.len(), n);
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;

    let eps = f64::EPSILON;
    let mut f = 0.0f64;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }
        if m > l {
            let mut iter = 0usize;
            loop {
                iter += 1;
                if iter > 64 {
                    return Err(l);
                }
                // form shift
                let g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = f64::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                f += h;
                // implicit QL sweep
                p = d[m];
                let mut c = 1.0f64;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0f64;
                let mut s2 = 0.0f64;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = f64::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    rot(i, c, s);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }
    Ok(())
}
