//! Inertia of complex hermitian matrices.
//!
//! A hermitian matrix is reduced to real symmetric tridiagonal form by
//! complex Householder reflections; eigenvalue counts below a threshold then
//! come from Sturm sequences, and individual eigenvalues from bisection.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::LinalgError;

/// Relative factor for the default sign tolerance.
pub const DEFAULT_RELATIVE_TOL: f64 = 1e-9;

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMatrix {
    n: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![Complex64::new(0.0, 0.0); n * n] }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        Self::from_fn(d.len(), |i, j| if i == j { Complex64::new(d[i], 0.0) } else { Complex64::new(0.0, 0.0) })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.n + j] = v;
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).conj())
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }

    /// Frobenius norm, an upper bound for the spectral norm.
    pub fn frobenius_norm(&self) -> f64 {
        libm::sqrt(self.data.iter().map(|z| z.norm_sqr()).sum())
    }

    /// Largest entrywise deviation from being hermitian.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in i..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Replaces the matrix by `(H + H*)/2`.
    fn symmetrized(&self) -> Self {
        Self::from_fn(self.n, |i, j| (self.get(i, j) + self.get(j, i).conj()) * 0.5)
    }
}

/// Eigenvalue sign counts of a hermitian matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    pub fn size(&self) -> usize {
        self.n_plus + self.n_minus + self.n_zero
    }
}

/// Symmetric tridiagonal matrix: diagonal `d`, off-diagonal `e` (`e.len() == d.len() - 1`).
#[derive(Clone, Debug)]
struct Tridiagonal {
    d: Vec<f64>,
    e: Vec<f64>,
}

impl Tridiagonal {
    /// Number of eigenvalues strictly below `x`.
    fn count_below(&self, x: f64) -> usize {
        let n = self.d.len();
        if n == 0 {
            return 0;
        }
        let tiny = f64::MIN_POSITIVE * 4.0;
        let mut count = 0;
        let mut q = self.d[0] - x;
        for i in 0..n {
            if i > 0 {
                let b = self.e[i - 1];
                q = self.d[i] - x - b * b / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.d.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.e[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.e[i].abs() } else { 0.0 };
            lo = lo.min(self.d[i] - r);
            hi = hi.max(self.d[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest `|λ|` (from 1), from above, by bisection on `within`.
    fn abs_quantile(&self, k: usize, within: &dyn Fn(f64) -> usize) -> f64 {
        let (lo, hi) = self.gershgorin();
        let (mut a, mut b) = (0.0, lo.abs().max(hi.abs()) * (1.0 + 1e-12) + f64::MIN_POSITIVE);
        let resolution = 4.0 * f64::EPSILON * b;
        for _ in 0..200 {
            if b - a <= resolution {
                break;
            }
            let mid = 0.5 * (a + b);
            if within(mid) >= k {
                b = mid;
            } else {
                a = mid;
            }
        }
        b
    }

    /// All eigenvalues in ascending order, by bisection on Sturm counts.
    fn eigenvalues(&self) -> Vec<f64> {
        let n = self.d.len();
        if n == 0 {
            return Vec::new();
        }
        let (lo, hi) = self.gershgorin();
        let pad = 1e-12 * (lo.abs().max(hi.abs()) + 1.0);
        let (lo, hi) = (lo - pad, hi + pad);
        let resolution = 4.0 * f64::EPSILON * lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        (0..n)
            .map(|k| {
                // smallest x with count_below(x) > k
                let (mut a, mut b) = (lo, hi);
                for _ in 0..200 {
                    if b - a <= resolution {
                        break;
                    }
                    let mid = 0.5 * (a + b);
                    if self.count_below(mid) > k {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                0.5 * (a + b)
            })
            .collect()
    }
}

/// Householder reduction of a hermitian matrix to a real symmetric
/// tridiagonal matrix with the same eigenvalues.
fn tridiagonalize(h: &ComplexMatrix) -> Tridiagonal {
    let n = h.size();
    let mut a = h.data.clone();
    let zero = Complex64::new(0.0, 0.0);
    let mut e = Vec::with_capacity(n.saturating_sub(1));
    let mut v = vec![zero; n];
    let mut w = vec![zero; n];
    for k in 0..n.saturating_sub(1) {
        let lo = k + 1;
        let alpha = libm::sqrt((lo..n).map(|i| a[i * n + k].norm_sqr()).sum());
        if alpha == 0.0 {
            e.push(0.0);
            continue;
        }
        let x0 = a[lo * n + k];
        let phase = if x0.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { x0 / x0.norm() };
        // H = I − τ v v*, with H x = β e₁ and β = −phase·|x|
        let beta = -phase * alpha;
        for i in lo..n {
            v[i] = a[i * n + k];
        }
        v[lo] -= beta;
        let vnorm: f64 = (lo..n).map(|i| v[i].norm_sqr()).sum();
        let tau = 2.0 / vnorm;
        // p = τ A v, then w = p − (τ/2)(v* p) v
        for i in lo..n {
            let mut acc = zero;
            for j in lo..n {
                acc += a[i * n + j] * v[j];
            }
            w[i] = acc * tau;
        }
        let vp: Complex64 = (lo..n).map(|i| v[i].conj() * w[i]).sum();
        let kk = vp * (tau / 2.0);
        for i in lo..n {
            w[i] -= kk * v[i];
        }
        // A ← A − v w* − w v*
        for i in lo..n {
            for j in lo..n {
                a[i * n + j] -= v[i] * w[j].conj() + w[i] * v[j].conj();
            }
        }
        e.push(alpha);
    }
    // a diagonal unitary makes the off-diagonal β entries real, of size |x|
    let d = (0..n).map(|i| a[i * n + i].re).collect();
    Tridiagonal { d, e }
}

/// Eigenvalues of a hermitian matrix in ascending order (the input is
/// symmetrized first).
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    tridiagonalize(&h.symmetrized()).eigenvalues()
}

/// Default sign tolerance `1e-9 · ‖H‖_F`.
pub fn default_tolerance(h: &ComplexMatrix) -> f64 {
    DEFAULT_RELATIVE_TOL * h.frobenius_norm()
}

/// Counts eigenvalues above `tol`, below `-tol`, and within `[-tol, tol]`.
///
/// `tol = None` selects [`default_tolerance`]. Fails if `h` deviates from its
/// conjugate transpose by more than the tolerance.
pub fn hermitian_inertia(h: &ComplexMatrix, tol: Option<f64>) -> Result<Inertia, LinalgError> {
    let tol = tol.unwrap_or_else(|| default_tolerance(h));
    let defect = h.hermitian_defect();
    if defect > tol.max(f64::EPSILON * h.frobenius_norm() * 16.0) {
        return Err(LinalgError::NotHermitian { deviation: defect });
    }
    let n = h.size();
    let t = tridiagonalize(&h.symmetrized());
    let below = t.count_below(-tol);
    let not_above = t.count_below(next_up(tol));
    Ok(Inertia { n_plus: n - not_above, n_minus: below, n_zero: not_above - below })
}

fn next_up(x: f64) -> f64 {
    if x == 0.0 {
        f64::MIN_POSITIVE
    } else {
        x + x.abs() * f64::EPSILON
    }
}

/// Relative size below which a retained eigenvalue counts as unresolved.
pub const SIGN_SEPARATION_TOL: f64 = 1e-10;

/// Signature of `h` when its nullity is known exactly: the `nullity`
/// eigenvalues of least magnitude are discarded, the rest are counted by sign.
///
/// Fails with [`LinalgError::AmbiguousSign`] when a retained eigenvalue is not
/// clearly separated from the discarded ones.
pub fn signature_with_known_nullity(h: &ComplexMatrix, nullity: usize) -> Result<i64, LinalgError> {
    signature_with_tolerance(h, nullity, SIGN_SEPARATION_TOL)
}

/// As [`signature_with_known_nullity`], with retained eigenvalues required to
/// exceed `rel_tol · ‖h‖_F` in magnitude.
pub fn signature_with_tolerance(h: &ComplexMatrix, nullity: usize, rel_tol: f64) -> Result<i64, LinalgError> {
    let n = h.size();
    assert!(nullity <= n);
    if nullity == n {
        return Ok(0);
    }
    let t = tridiagonalize(&h.symmetrized());
    let floor = rel_tol * h.frobenius_norm().max(f64::MIN_POSITIVE);
    // eigenvalues with |λ| <= x
    let within = |x: f64| t.count_below(next_up(x)) - t.count_below(-x);
    let largest_dropped = if nullity > 0 { t.abs_quantile(nullity, &within) } else { 0.0 };
    let threshold = floor.max(1e3 * largest_dropped);
    if within(threshold) > nullity {
        return Err(LinalgError::AmbiguousSign);
    }
    let positive = n - t.count_below(next_up(threshold));
    let negative = t.count_below(-threshold);
    Ok(positive as i64 - negative as i64)
}
