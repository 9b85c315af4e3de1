//! Matrices over `Q[t]` and their Smith normal form.

use alloc::vec::Vec;

use super::{RatMatrix, RatPoly};

/// Dense matrix of rational polynomials, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatPoly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> RatPoly) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// The linear pencil `t·A + B`.
    pub fn pencil(a: &RatMatrix, b: &RatMatrix) -> Self {
        assert_eq!((a.rows(), a.cols()), (b.rows(), b.cols()));
        Self::from_fn(a.rows(), a.cols(), |i, j| RatPoly::new(alloc::vec![b.get(i, j).clone(), a.get(i, j).clone()]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatPoly {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: RatPoly) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// Evaluates every entry at `t = x`.
    pub fn eval(&self, x: &super::Rat) -> RatMatrix {
        RatMatrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(x))
    }
}

/// Invariant factors of `p` over `Q[t]`: monic, each dividing the next, with
/// zero factors (rank deficiency over `Q(t)`) listed last. A matrix with
/// `min(rows, cols) = k` yields exactly `k` factors.
pub fn invariant_factors(p: &PolyMatrix) -> Vec<RatPoly> {
    let mut a = p.clone();
    let (r, c) = (a.rows, a.cols);
    let k_max = r.min(c);
    let mut diag = Vec::with_capacity(k_max);
    for k in 0..k_max {
        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for i in k..r {
                for j in k..c {
                    if let Some(d) = a.get(i, j).degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                break;
            };
            a.swap_rows(k, pi);
            a.swap_cols(k, pj);
            let pivot = a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..r {
                if a.get(i, k).is_zero() {
                    continue;
                }
                let (q, _) = a.get(i, k).div_rem(&pivot);
                for j in k..c {
                    let v = a.get(i, j) - &(&q * a.get(k, j));
                    a.set(i, j, v);
                }
                clean &= a.get(i, k).is_zero();
            }
            for j in k + 1..c {
                if a.get(k, j).is_zero() {
                    continue;
                }
                let (q, _) = a.get(k, j).div_rem(&pivot);
                for i in k..r {
                    let v = a.get(i, j) - &(&q * a.get(i, k));
                    a.set(i, j, v);
                }
                clean &= a.get(k, j).is_zero();
            }
            if clean {
                break;
            }
        }
        diag.push(a.get(k, k).clone());
    }
    // gcd/lcm sweep turns the diagonal into a divisibility chain
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let (x, y) = (&diag[i], &diag[j]);
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let g = x.gcd(y);
            let l = if x.is_zero() || y.is_zero() { RatPoly::zero() } else { (x * y).exact_div(&g).unwrap().monic() };
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.into_iter().map(|d| d.monic()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rat;
    use alloc::vec;

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_i64(c)
    }

    #[test]
    fn diagonal_input() {
        let m = PolyMatrix::from_fn(2, 2, |i, j| if i == j { p(&[0, 1]) } else { RatPoly::zero() });
        assert_eq!(invariant_factors(&m), vec![p(&[0, 1]), p(&[0, 1])]);
    }

    #[test]
    fn trefoil_pencil() {
        let s = RatMatrix::from_i64_rows(&[vec![-1, 1], vec![0, -1]]);
        let st = s.transpose();
        let pencil = PolyMatrix::pencil(&s, &st.scale(&Rat::from_integer((-1).into())));
        let f = invariant_factors(&pencil);
        assert_eq!(f.len(), 2);
        assert_eq!(f[0], RatPoly::one());
        assert_eq!(f[1], p(&[1, -1, 1]));
    }

    #[test]
    fn zero_matrix() {
        let m = PolyMatrix::from_fn(1, 1, |_, _| RatPoly::zero());
        assert_eq!(invariant_factors(&m), vec![RatPoly::zero()]);
    }

    #[test]
    fn non_coprime_diagonal_is_rearranged() {
        // diag(t, t+1) ~ diag(1, t(t+1))
        let m = PolyMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => p(&[0, 1]),
            (1, 1) => p(&[1, 1]),
            _ => RatPoly::zero(),
        });
        assert_eq!(invariant_factors(&m), vec![RatPoly::one(), p(&[0, 1, 1])]);
    }
}
