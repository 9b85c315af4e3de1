//! Seifert matrices and their first invariants.
//!
//! A Seifert matrix `S` of a `(2n−1)`-dimensional link carries the sign
//! `ε = (−1)^n`. From it we get the common-kernel dimension `n₀`, the Keef
//! splitting `S ≅ S_ndeg ⊕ 0`, the Alexander polynomial
//! `det(t·S_ndeg + (−1)^n S_ndeg^T)`, the intersection form `−εS − S^T` and,
//! for nonsingular `S`, the monodromy `−ε(S^T)^{-1} S`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::modular::integer_pencil_det;
use crate::linalg::{common_kernel, invariant_factors, PolyMatrix, Rat, RatMatrix, RatPoly};

/// Integer Seifert matrix together with the dimension parameter `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeifertMatrix {
    n: u32,
    mu: usize,
    entries: Vec<i64>,
    name: Option<String>,
}

impl SeifertMatrix {
    /// Builds from rows, checking squareness and `n >= 1`.
    pub fn new(n: u32, rows: Vec<Vec<i64>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        let mu = rows.len();
        let mut entries = Vec::with_capacity(mu * mu);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != mu {
                return Err(Error::NotSquare { row, len: r.len(), expected: mu });
            }
            entries.extend(r);
        }
        Ok(Self { n, mu, entries, name: None })
    }

    /// Row-major constructor; panics if `entries.len() != mu²` or `n == 0`.
    pub fn from_flat(n: u32, mu: usize, entries: Vec<i64>) -> Self {
        assert!(n >= 1, "dimension parameter must be positive");
        assert_eq!(entries.len(), mu * mu);
        Self { n, mu, entries, name: None }
    }

    /// The empty matrix: the unknot in every dimension.
    pub fn empty(n: u32) -> Self {
        Self::from_flat(n, 0, Vec::new())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The Milnor number, i.e. the matrix size.
    pub fn mu(&self) -> usize {
        self.mu
    }

    /// `ε = (−1)^n`.
    pub fn epsilon(&self) -> i64 {
        if self.n % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.mu + j]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.mu.max(1)).take(self.mu).map(<[i64]>::to_vec).collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.mu, self.mu, |i, j| Rat::from_integer(self.get(i, j).into()))
    }

    pub fn transpose(&self) -> Self {
        let mu = self.mu;
        let entries = (0..mu * mu).map(|k| self.get(k % mu, k / mu)).collect();
        Self { n: self.n, mu, entries, name: self.name.clone() }
    }

    /// Block sum `self ⊕ other`; dimensions must agree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        let mu = self.mu + other.mu;
        let mut entries = vec![0; mu * mu];
        for i in 0..self.mu {
            for j in 0..self.mu {
                entries[i * mu + j] = self.get(i, j);
            }
        }
        for i in 0..other.mu {
            for j in 0..other.mu {
                entries[(self.mu + i) * mu + self.mu + j] = other.get(i, j);
            }
        }
        Ok(Self { n: self.n, mu, entries, name: None })
    }

    /// Adjoins `k` zero rows and columns.
    pub fn padded(&self, k: usize) -> Self {
        self.direct_sum(&Self::from_flat(self.n, k, vec![0; k * k])).unwrap()
    }

    /// Same matrix viewed in another dimension.
    pub fn with_dimension(&self, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidDimension(n));
        }
        Ok(Self { n, ..self.clone() })
    }

    pub(crate) fn big_entries(&self) -> Vec<BigInt> {
        self.entries.iter().map(|&x| BigInt::from(x)).collect()
    }

    /// Coefficients (ascending, length `μ + 1`) of `det(t·S + (−1)^n S^T)`.
    /// The leading coefficient is `det S`.
    pub fn pencil_determinant(&self) -> Vec<BigInt> {
        let a = self.big_entries();
        let sign = BigInt::from(self.epsilon());
        let b: Vec<BigInt> = self.transpose().big_entries().into_iter().map(|x| x * &sign).collect();
        integer_pencil_det(&a, &b, self.mu)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.mu == 0 || !self.pencil_determinant()[self.mu].is_zero()
    }
}

/// `dim(ker S ∩ ker S^T)`.
pub fn n0(s: &SeifertMatrix) -> usize {
    let m = s.to_rat();
    common_kernel(&m, &m.transpose()).map(|k| k.len()).unwrap_or(0)
}

/// Result of splitting off common kernels: `T^T S T = s_ndeg ⊕ 0_{n0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct KeefDecomposition {
    pub s_ndeg: RatMatrix,
    pub n0: usize,
    /// Invertible; its first `size(s_ndeg)` columns span the nondegenerate part.
    pub transform: RatMatrix,
    /// Set when `s_ndeg` is still singular although its common kernel is trivial.
    pub warning: bool,
}

pub fn keef_reduce(s: &SeifertMatrix) -> KeefDecomposition {
    let mu = s.mu();
    let full = s.to_rat();
    let mut transform = RatMatrix::identity(mu);
    // columns [0, r) of `transform` span the part still to be reduced
    let mut r = mu;
    loop {
        let t_r = RatMatrix::from_fn(mu, r, |i, j| transform.get(i, j).clone());
        let a = &(&t_r.transpose() * &full) * &t_r;
        let kernel = common_kernel(&a, &a.transpose()).expect("square by construction");
        if kernel.is_empty() {
            let warning = r > 0 && a.det().is_zero();
            return KeefDecomposition { s_ndeg: a, n0: mu - r, transform, warning };
        }
        // complement the kernel by the standard vectors at non-pivot positions
        let (_, pivots) = RatMatrix::from_fn(kernel.len(), r, |i, j| kernel[i][j].clone()).rref();
        let keep: Vec<usize> = (0..r).filter(|j| !pivots.contains(j)).collect();
        let mut step_cols: Vec<Vec<Rat>> = keep
            .iter()
            .map(|&j| {
                let mut e = vec![Rat::zero(); r];
                e[j] = Rat::one();
                e
            })
            .collect();
        step_cols.extend(kernel);
        let step = RatMatrix::from_columns(r, &step_cols);
        let mut next = transform.clone();
        let head = &t_r * &step;
        for i in 0..mu {
            for j in 0..r {
                next.set(i, j, head.get(i, j).clone());
            }
        }
        transform = next;
        r = keep.len();
    }
}

/// Integer polynomial with content 1, positive leading coefficient and
/// nonzero constant term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlexanderPolynomial {
    coeffs: Vec<BigInt>,
}

impl AlexanderPolynomial {
    /// Normalizes a nonzero polynomial. The zero polynomial maps to `1`.
    pub fn normalize(p: &RatPoly) -> Self {
        if p.is_zero() {
            return Self { coeffs: vec![BigInt::one()] };
        }
        Self { coeffs: p.strip_t_power().integer_primitive() }
    }

    /// Coefficients in ascending degree.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn poly(&self) -> RatPoly {
        RatPoly::from_bigints(&self.coeffs)
    }
}

impl core::fmt::Display for AlexanderPolynomial {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        self.poly().fmt(f)
    }
}

pub fn alexander(s: &SeifertMatrix) -> AlexanderPolynomial {
    if s.mu() == 0 {
        return AlexanderPolynomial::normalize(&RatPoly::one());
    }
    let det = s.pencil_determinant();
    if !det[s.mu()].is_zero() {
        return AlexanderPolynomial::normalize(&RatPoly::from_bigints(&det));
    }
    let keef = keef_reduce(s);
    if !keef.warning {
        return alexander_of_rational(&keef.s_ndeg, s.epsilon());
    }
    alexander_from_invariant_factors(s)
}

/// Product of the nonzero invariant factors of `t·S + (−1)^n S^T`.
pub fn alexander_from_invariant_factors(s: &SeifertMatrix) -> AlexanderPolynomial {
    let m = s.to_rat();
    let pencil = PolyMatrix::pencil(&m, &m.transpose().scale(&Rat::from_integer(s.epsilon().into())));
    let product = invariant_factors(&pencil)
        .iter()
        .filter(|f| !f.is_zero())
        .fold(RatPoly::one(), |acc, f| &acc * f);
    AlexanderPolynomial::normalize(&product)
}

fn alexander_of_rational(m: &RatMatrix, eps: i64) -> AlexanderPolynomial {
    let d = Rat::from_integer(m.denominator_lcm());
    let a = m.scale(&d).to_integer_entries().unwrap();
    let n = m.rows();
    let b: Vec<BigInt> = (0..n * n).map(|k| &a[(k % n) * n + k / n] * BigInt::from(eps)).collect();
    AlexanderPolynomial::normalize(&RatPoly::from_bigints(&integer_pencil_det(&a, &b, n)))
}

/// `b = −εS − S^T`.
pub fn intersection_form(s: &SeifertMatrix) -> RatMatrix {
    let eps = s.epsilon();
    RatMatrix::from_fn(s.mu(), s.mu(), |i, j| Rat::from_integer((-eps * s.get(i, j) - s.get(j, i)).into()))
}

/// `h = −ε (S^T)^{-1} S`.
pub fn monodromy(s: &SeifertMatrix) -> Result<RatMatrix> {
    let m = s.to_rat();
    let inv = m.transpose().inverse().ok_or(Error::Singular)?;
    Ok((&inv * &m).scale(&Rat::from_integer((-s.epsilon()).into())))
}

/// Absolute value of `det S`.
pub fn det_abs(s: &SeifertMatrix) -> BigInt {
    if s.mu() == 0 {
        return BigInt::one();
    }
    s.pencil_determinant()[s.mu()].abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(1, vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    fn int_poly(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn rejects_ragged_rows() {
        let e = SeifertMatrix::new(1, vec![vec![1, 2], vec![3]]).unwrap_err();
        assert_eq!(e, Error::NotSquare { row: 1, len: 1, expected: 2 });
        assert_eq!(SeifertMatrix::new(0, vec![]).unwrap_err(), Error::InvalidDimension(0));
    }

    #[test]
    fn n0_examples() {
        assert_eq!(n0(&trefoil()), 0);
        assert_eq!(n0(&SeifertMatrix::from_flat(1, 2, vec![0; 4])), 2);
        assert_eq!(n0(&trefoil().padded(1)), 1);
    }

    #[test]
    fn keef_examples() {
        let k = keef_reduce(&trefoil());
        assert_eq!((k.n0, k.warning), (0, false));
        assert_eq!(k.s_ndeg, trefoil().to_rat());

        let k = keef_reduce(&trefoil().padded(2));
        assert_eq!((k.n0, k.warning), (2, false));
        assert_eq!(k.s_ndeg, trefoil().to_rat());

        let k = keef_reduce(&SeifertMatrix::new(1, vec![vec![0, 0], vec![1, 0]]).unwrap());
        assert!(k.warning);
        assert_eq!(k.n0, 0);
    }

    #[test]
    fn keef_transform_witnesses_the_split() {
        // the common kernel is spanned by (1, 1, -1), not by a standard vector
        let s = SeifertMatrix::new(1, vec![vec![1, 0, 1], vec![0, 2, 2], vec![1, 2, 3]]).unwrap();
        let k = keef_reduce(&s);
        assert_eq!((k.n0, k.warning), (1, false));
        let t = &k.transform;
        let reduced = &(&t.transpose() * &s.to_rat()) * t;
        let mut want = RatMatrix::zeros(3, 3);
        for i in 0..2 {
            for j in 0..2 {
                want.set(i, j, k.s_ndeg.get(i, j).clone());
            }
        }
        assert_eq!(reduced, want);
        assert!(!t.det().is_zero());
    }

    #[test]
    fn alexander_examples() {
        assert_eq!(alexander(&trefoil()).coeffs(), int_poly(&[1, -1, 1]));
        assert_eq!(alexander(&SeifertMatrix::empty(1)).coeffs(), int_poly(&[1]));
        // S = [-1], n = 1: -t + 1 normalizes to t - 1
        let hopf = SeifertMatrix::new(1, vec![vec![-1]]).unwrap();
        assert_eq!(alexander(&hopf).coeffs(), int_poly(&[-1, 1]));
        assert_eq!(alexander(&trefoil().padded(3)), alexander(&trefoil()));
    }

    #[test]
    fn alexander_routes_agree() {
        let s = SeifertMatrix::new(1, vec![vec![1, 0, 1], vec![0, 2, 2], vec![1, 2, 3]]).unwrap();
        assert_eq!(alexander(&s), alexander_from_invariant_factors(&s));
        assert_eq!(alexander(&trefoil()), alexander_from_invariant_factors(&trefoil()));
    }

    #[test]
    fn intersection_form_examples() {
        assert_eq!(intersection_form(&trefoil()), RatMatrix::from_i64_rows(&[vec![0, 1], vec![-1, 0]]));
        let s = SeifertMatrix::new(2, vec![vec![1, 2], vec![0, 3]]).unwrap();
        let b = intersection_form(&s);
        assert_eq!(b.transpose(), b);
        assert_eq!(intersection_form(&SeifertMatrix::empty(1)).rows(), 0);
    }

    #[test]
    fn monodromy_examples() {
        assert_eq!(monodromy(&trefoil()).unwrap(), RatMatrix::from_i64_rows(&[vec![1, -1], vec![1, 0]]));
        let hopf = SeifertMatrix::new(1, vec![vec![-1]]).unwrap();
        assert_eq!(monodromy(&hopf).unwrap(), RatMatrix::from_i64_rows(&[vec![1]]));
        let sym = SeifertMatrix::new(2, vec![vec![2, 1], vec![1, 3]]).unwrap();
        assert_eq!(monodromy(&sym).unwrap(), RatMatrix::identity(2).scale(&Rat::from_integer((-1).into())));
        assert_eq!(monodromy(&trefoil().padded(1)).unwrap_err(), Error::Singular);
    }
}
