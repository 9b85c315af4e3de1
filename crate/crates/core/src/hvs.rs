//! Hermitian variation structures of nonsingular Seifert forms.
//!
//! A simple structure is determined by its variation map `V = (S^{-1})^T`:
//! `h = −ε V (V^T)^{-1}` and `b = −V^{-1} − ε (V^T)^{-1}`.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::angle::Angle;
use crate::error::{Error, Result};
use crate::linalg::cyclotomic::{approximate_roots, cyclotomic_factorization, cyclotomic_polynomial, euler_phi};
use crate::linalg::inertia::hermitian_eigenvalues;
use crate::linalg::poly::rat_to_f64;
use crate::linalg::{ComplexMatrix, LinalgError, Rat, RatMatrix, RatPoly};
use crate::seifert::SeifertMatrix;
use crate::spectrum::UnitBlock;

#[derive(Clone, Debug, PartialEq)]
pub struct Hvs {
    pub epsilon: i64,
    pub b: RatMatrix,
    pub h: RatMatrix,
    pub v: RatMatrix,
}

/// Outcome of the exact axiom checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HvsAxioms {
    /// `V·b = h − I`.
    pub variation: bool,
    /// `V^T = −ε V h^T`.
    pub variation_symmetry: bool,
    /// `h^T b h = b`.
    pub isometry: bool,
    /// `b^T = ε b`.
    pub epsilon_symmetric: bool,
}

impl HvsAxioms {
    pub fn all(&self) -> bool {
        self.variation && self.variation_symmetry && self.isometry && self.epsilon_symmetric
    }
}

fn signed(m: &RatMatrix, sign: i64) -> RatMatrix {
    if sign == 1 { m.clone() } else { -m }
}

pub fn hvs_from_seifert(s: &SeifertMatrix) -> Result<Hvs> {
    let eps = s.epsilon();
    let st = s.to_rat().transpose();
    let v = st.inverse().ok_or(Error::Singular)?;
    // V^{-1} = S^T and (V^T)^{-1} = S
    let sm = s.to_rat();
    let h = signed(&(&v * &sm), -eps);
    let b = &(-&st) - &signed(&sm, eps);
    Ok(Hvs { epsilon: eps, b, h, v })
}

impl Hvs {
    pub fn dim(&self) -> usize {
        self.h.rows()
    }

    pub fn axioms(&self) -> HvsAxioms {
        let id = RatMatrix::identity(self.dim());
        let ht = self.h.transpose();
        HvsAxioms {
            variation: &self.v * &self.b == &self.h - &id,
            variation_symmetry: self.v.transpose() == signed(&(&self.v * &ht), -self.epsilon),
            isometry: &(&ht * &self.b) * &self.h == self.b,
            epsilon_symmetric: self.b.transpose() == signed(&self.b, self.epsilon),
        }
    }

    /// `det(t·I − h)`.
    pub fn characteristic_polynomial(&self) -> RatPoly {
        self.h.characteristic_polynomial()
    }

    /// The Seifert form `(V^T)^{-1}`.
    pub fn seifert_form(&self) -> RatMatrix {
        self.v.transpose().inverse().expect("the variation map of a simple structure is invertible")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Eigenvalue {
    /// `e^{2πi·angle}` with `angle ∈ (0, 1]`.
    RootOfUnity(Rat),
    /// Numerical value of an eigenvalue that is not a root of unity.
    Algebraic(Complex64),
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanBlock {
    pub eigenvalue: Eigenvalue,
    pub size: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JordanData {
    pub blocks: Vec<JordanBlock>,
}

impl JordanData {
    /// `Σ size · count`.
    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|b| b.size * b.count).sum()
    }

    pub fn is_semisimple(&self) -> bool {
        self.blocks.iter().all(|b| b.size == 1)
    }
}

/// Per-eigenvalue block counts from kernel dimensions of `g(h)^j`, where
/// every one of the `deg` roots of `g` has algebraic multiplicity `mult`.
fn block_sizes(h: &RatMatrix, g: &RatPoly, deg: usize, mult: usize) -> Result<Vec<(usize, usize)>> {
    let mu = h.rows();
    let base = g.eval_matrix(h);
    let mut power = base.clone();
    // e[j] = Σ_blocks min(j, size) for a single root
    let mut e = alloc::vec![0usize];
    loop {
        let null = mu - power.rank();
        if null % deg != 0 {
            return Err(Error::NonUniformJordan);
        }
        e.push(null / deg);
        if null / deg >= mult {
            break;
        }
        if e[e.len() - 1] == e[e.len() - 2] {
            return Err(Error::Calibration(format!("kernel dimensions stall below multiplicity {mult}")));
        }
        power = &power * &base;
    }
    let at_least = |j: usize| if j < e.len() { e[j] - e[j - 1] } else { 0 };
    Ok((1..e.len()).map(|k| (k, at_least(k) - at_least(k + 1))).filter(|&(_, c)| c > 0).collect())
}

pub fn jordan_data(hvs: &Hvs) -> Result<JordanData> {
    let (cyc, rest) = cyclotomic_factorization(&hvs.characteristic_polynomial());
    let mut blocks = Vec::new();
    for (m, mult) in cyc {
        let phi = euler_phi(m) as usize;
        let sizes = block_sizes(&hvs.h, &cyclotomic_polynomial(m), phi, mult)?;
        for a in (1..=m).filter(|&a| num_integer::gcd(a, m) == 1) {
            for &(size, count) in &sizes {
                let angle = Rat::new((a as i64).into(), (m as i64).into());
                blocks.push(JordanBlock { eigenvalue: Eigenvalue::RootOfUnity(angle), size, count });
            }
        }
    }
    if rest.degree().is_some_and(|d| d > 0) {
        for (g, mult) in rest.squarefree_decomposition() {
            let deg = g.degree().unwrap_or(0);
            if deg == 0 {
                continue;
            }
            let sizes = block_sizes(&hvs.h, &g, deg, mult)?;
            for z in approximate_roots(&g) {
                for &(size, count) in &sizes {
                    blocks.push(JordanBlock { eigenvalue: Eigenvalue::Algebraic(z), size, count });
                }
            }
        }
    }
    Ok(JordanData { blocks })
}

fn to_complex(m: &RatMatrix, factor: Complex64) -> ComplexMatrix {
    ComplexMatrix::from_fn(m.rows(), |i, j| factor * rat_to_f64(m.get(i, j)))
}

/// Rectangular product `a^T · m · a` for a column basis `a`.
fn congruence(m: &RatMatrix, a: &RatMatrix) -> RatMatrix {
    &(&a.transpose() * m) * a
}

/// Matrix of `h` on the subspace spanned by the columns of `k`, which must be `h`-invariant.
fn restrict(h: &RatMatrix, k: &RatMatrix) -> RatMatrix {
    let (_, pivots) = k.transpose().rref();
    let sub = |m: &RatMatrix| RatMatrix::from_fn(pivots.len(), m.cols(), |i, j| m.get(pivots[i], j).clone());
    let hk = h * k;
    &sub(k).inverse().expect("pivot rows of a basis are independent") * &sub(&hk)
}

/// `(n_plus, n_minus)` of the hermitian form `g` on the `rank`-dimensional range of `p`.
fn restricted_inertia(g: &ComplexMatrix, p: &ComplexMatrix, rank: usize) -> Result<(usize, usize)> {
    let m = p.conj_transpose().mul(g).mul(p);
    let mut ev = hermitian_eigenvalues(&m);
    ev.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let scale = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let kept = ev[rank - 1].abs();
    let dropped = ev.get(rank).map_or(0.0, |x| x.abs());
    if kept <= 1e-10 * scale || kept <= 1e3 * dropped {
        return Err(LinalgError::AmbiguousSign.into());
    }
    let plus = ev[..rank].iter().filter(|&&x| x > 0.0).count();
    Ok((plus, rank - plus))
}

/// Signs of the `W^1_λ(±1)` summands of a semisimple structure whose
/// eigenvalues are roots of unity.
///
/// For `λ ≠ 1` the sign is the inertia of `−ε·b` (times `i` when `b` is
/// skew) on the `λ`-eigenspace. On the 1-eigenspace `b` vanishes and the
/// Seifert form is used instead: there it is `(−ε)`-hermitian.
pub fn semisimple_signs(hvs: &Hvs) -> Result<Vec<UnitBlock>> {
    let mu = hvs.dim();
    if mu == 0 {
        return Ok(Vec::new());
    }
    let (cyc, rest) = cyclotomic_factorization(&hvs.characteristic_polynomial());
    if rest.degree().is_some_and(|d| d > 0) {
        return Err(Error::NotRootOfUnity);
    }
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let eps = hvs.epsilon;
    let s = hvs.seifert_form();
    let mut out = Vec::new();
    for (m, mult) in cyc {
        let phi = euler_phi(m) as usize;
        let kernel = cyclotomic_polynomial(m).eval_matrix(&hvs.h).kernel();
        if kernel.len() != phi * mult {
            return Err(Error::NotSemisimple);
        }
        let k = RatMatrix::from_columns(mu, &kernel);
        let (form, factor) = if m == 1 {
            (congruence(&s, &k), if eps == 1 { i } else { one })
        } else {
            (congruence(&hvs.b, &k), if eps == -1 { i } else { one } * (-eps as f64))
        };
        let g = to_complex(&form, factor);
        let c = to_complex(&restrict(&hvs.h, &k), one);
        let d = c.size();
        // powers C^j, j < m; C has order m
        let mut powers = Vec::with_capacity(m as usize);
        let mut acc = ComplexMatrix::from_real_diagonal(&alloc::vec![1.0; d]);
        for _ in 0..m {
            powers.push(acc.clone());
            acc = acc.mul(&c);
        }
        for a in (1..=m).filter(|&a| num_integer::gcd(a, m) == 1) {
            let theta = 2.0 * core::f64::consts::PI * a as f64 / m as f64;
            let mut p = ComplexMatrix::zeros(d);
            for (j, pw) in powers.iter().enumerate() {
                let w = Complex64::from_polar(1.0 / m as f64, -theta * j as f64);
                for r in 0..d {
                    for col in 0..d {
                        p.set(r, col, p.get(r, col) + w * pw.get(r, col));
                    }
                }
            }
            let (plus, minus) = restricted_inertia(&g, &p, mult)?;
            let angle = Angle::Exact(Rat::new((a as i64).into(), (m as i64).into()));
            // λ ≠ 1: positive means u = +1; λ = 1: negative means u = +1
            let (up, down) = if m == 1 { (minus, plus) } else { (plus, minus) };
            for (u, count) in [(1i8, up), (-1, down)] {
                if count > 0 {
                    out.push(UnitBlock { angle: angle.clone(), size: 1, u, count });
                }
            }
        }
    }
    out.sort_by(|x, y| x.angle.cmp(&y.angle).then(x.u.cmp(&y.u)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;
    use crate::seifert::{intersection_form, monodromy};
    use crate::spectrum::{extract_spectrum, spectrum_from_decomposition};
    use alloc::vec;
    use num_traits::One;

    fn trefoil() -> SeifertMatrix {
        SeifertMatrix::new(1, vec![vec![-1, 1], vec![0, -1]]).unwrap()
    }

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        RatMatrix::from_i64_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn root(a: i64, m: i64) -> Eigenvalue {
        Eigenvalue::RootOfUnity(Rat::new(a.into(), m.into()))
    }

    fn with_h(h: RatMatrix) -> Hvs {
        let mu = h.rows();
        Hvs { epsilon: -1, b: RatMatrix::zeros(mu, mu), h, v: RatMatrix::identity(mu) }
    }

    #[test]
    fn trefoil_structure() {
        let x = hvs_from_seifert(&trefoil()).unwrap();
        assert_eq!(x.h, rm(&[&[1, -1], &[1, 0]]));
        assert_eq!(x.b, rm(&[&[0, 1], &[-1, 0]]));
        assert!(x.axioms().all());
        assert_eq!(x.seifert_form(), trefoil().to_rat());
    }

    #[test]
    fn scalar_structure() {
        let x = hvs_from_seifert(&SeifertMatrix::new(1, vec![vec![-1]]).unwrap()).unwrap();
        assert_eq!(x.h, rm(&[&[1]]));
        assert!(x.axioms().all());
        let singular = SeifertMatrix::new(1, vec![vec![0]]).unwrap();
        assert_eq!(hvs_from_seifert(&singular).unwrap_err(), Error::Singular);
    }

    #[test]
    fn matches_seifert_module() {
        for name in ["A1", "A4", "D4", "A3@2", "brieskorn:2,3,4", "A2@4"] {
            let s = lookup(name).unwrap();
            let x = hvs_from_seifert(&s).unwrap();
            assert_eq!(x.b, intersection_form(&s), "{name}");
            assert_eq!(x.h, monodromy(&s).unwrap(), "{name}");
            assert!(x.axioms().all(), "{name}");
        }
    }

    #[test]
    fn broken_structure_detected() {
        let mut x = hvs_from_seifert(&trefoil()).unwrap();
        x.b = rm(&[&[0, 1], &[1, 0]]);
        let ax = x.axioms();
        assert!(!ax.variation && !ax.epsilon_symmetric);
    }

    #[test]
    fn jordan_examples() {
        let j = jordan_data(&hvs_from_seifert(&trefoil()).unwrap()).unwrap();
        assert_eq!(
            j.blocks,
            vec![
                JordanBlock { eigenvalue: root(1, 6), size: 1, count: 1 },
                JordanBlock { eigenvalue: root(5, 6), size: 1, count: 1 },
            ]
        );
        let j = jordan_data(&with_h(RatMatrix::identity(2))).unwrap();
        assert_eq!(j.blocks, vec![JordanBlock { eigenvalue: root(1, 1), size: 1, count: 2 }]);
        let j = jordan_data(&with_h(rm(&[&[1, 1], &[0, 1]]))).unwrap();
        assert_eq!(j.blocks, vec![JordanBlock { eigenvalue: root(1, 1), size: 2, count: 1 }]);
        assert!(!j.is_semisimple());
    }

    #[test]
    fn mixed_jordan_types() {
        // J_2(1) ⊕ J_1(1) ⊕ J_3(-1)
        let mut h = RatMatrix::zeros(6, 6);
        for (i, d) in [1, 1, 1, -1, -1, -1].into_iter().enumerate() {
            h.set(i, i, Rat::from_integer(d.into()));
        }
        for (r, c) in [(0, 1), (3, 4), (4, 5)] {
            h.set(r, c, Rat::one());
        }
        let j = jordan_data(&with_h(h)).unwrap();
        assert_eq!(j.dimension(), 6);
        let sizes: Vec<_> = j.blocks.iter().map(|b| (b.eigenvalue.clone(), b.size, b.count)).collect();
        assert_eq!(sizes, vec![(root(1, 1), 1, 1), (root(1, 1), 2, 1), (root(1, 2), 3, 1)]);
    }

    #[test]
    fn off_circle_jordan() {
        let j = jordan_data(&with_h(rm(&[&[2, 1], &[1, 1]]))).unwrap();
        assert_eq!(j.dimension(), 2);
        assert!(j.blocks.iter().all(|b| matches!(b.eigenvalue, Eigenvalue::Algebraic(_))));
    }

    #[test]
    fn trefoil_signs() {
        let signs = semisimple_signs(&hvs_from_seifert(&trefoil()).unwrap()).unwrap();
        assert_eq!(signs.len(), 2);
        assert!(signs.iter().all(|b| b.count == 1 && b.size == 1));
        let (sp, _) = spectrum_from_decomposition(&signs, &[]).unwrap();
        assert_eq!(sp, extract_spectrum(&trefoil()).unwrap());
    }

    #[test]
    fn route_equivalence_small() {
        for name in ["A1", "A2", "A5", "D4", "A1@2", "A3@2", "D4@3", "brieskorn:3,4", "brieskorn:2,3,5", "A2@4"] {
            let s = lookup(name).unwrap();
            let signs = semisimple_signs(&hvs_from_seifert(&s).unwrap()).unwrap();
            let (sp, _) = spectrum_from_decomposition(&signs, &[]).unwrap();
            assert_eq!(sp, extract_spectrum(&s).unwrap(), "{name}");
        }
    }

    #[test]
    fn non_semisimple_rejected() {
        let x = with_h(rm(&[&[1, 1], &[0, 1]]));
        assert_eq!(semisimple_signs(&x).unwrap_err(), Error::NotSemisimple);
        let x = with_h(rm(&[&[2, 1], &[1, 1]]));
        assert_eq!(semisimple_signs(&x).unwrap_err(), Error::NotRootOfUnity);
    }
}
