//! Seifert matrices and spectra of Brieskorn singularities `Σ x_i^{a_i}`.
//!
//! Matrices come from iterated Thom–Sebastiani joins of one-variable blocks.
//! Spectra come from the weighted-homogeneous formula `{Σ k_i/a_i}` by
//! direct enumeration, which never looks at a matrix.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::linalg::Rat;
use crate::seifert::SeifertMatrix;

/// Exponents `a_1, …, a_{n+1}`, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrieskornExponents(Vec<u32>);

impl BrieskornExponents {
    pub fn new(a: Vec<i64>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::InvalidDimension(0));
        }
        let mut out = Vec::with_capacity(a.len());
        for x in a {
            if !(2..=u32::MAX as i64).contains(&x) {
                return Err(Error::InvalidExponent(x));
            }
            out.push(x as u32);
        }
        Ok(Self(out))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// `Π (a_i − 1)`.
    pub fn milnor_number(&self) -> usize {
        self.0.iter().map(|&a| a as usize - 1).product()
    }

    /// Number of variables minus one.
    pub fn dimension(&self) -> u32 {
        self.0.len() as u32 - 1
    }
}

/// A Seifert form together with the number of variables of its germ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertBlock {
    pub vars: usize,
    pub mu: usize,
    pub entries: Vec<i64>,
}

/// Block for `x^a`: upper bidiagonal, `−1` on the diagonal, `+1` above it.
pub fn one_var_seifert(a: i64) -> Result<SeifertBlock> {
    if a < 2 {
        return Err(Error::InvalidExponent(a));
    }
    let mu = (a - 1) as usize;
    let mut entries = vec![0; mu * mu];
    for i in 0..mu {
        entries[i * mu + i] = -1;
        if i + 1 < mu {
            entries[i * mu + i + 1] = 1;
        }
    }
    Ok(SeifertBlock { vars: 1, mu, entries })
}

/// Join of `f(x)` and `g(y)`: the Kronecker product scaled by `(−1)^{p·q}`,
/// with `p`, `q` the variable counts.
pub fn thom_sebastiani(x: &SeifertBlock, y: &SeifertBlock) -> SeifertBlock {
    let sign = if (x.vars * y.vars) % 2 == 0 { 1 } else { -1 };
    let mu = x.mu * y.mu;
    let mut entries = vec![0; mu * mu];
    for i1 in 0..x.mu {
        for i2 in 0..x.mu {
            let a = x.entries[i1 * x.mu + i2];
            if a == 0 {
                continue;
            }
            for j1 in 0..y.mu {
                for j2 in 0..y.mu {
                    let r = i1 * y.mu + j1;
                    let c = i2 * y.mu + j2;
                    entries[r * mu + c] = sign * a * y.entries[j1 * y.mu + j2];
                }
            }
        }
    }
    SeifertBlock { vars: x.vars + y.vars, mu, entries }
}

/// Seifert matrix of `Σ x_i^{a_i}`, with `n = len − 1 >= 1`.
pub fn brieskorn(e: &BrieskornExponents) -> Result<SeifertMatrix> {
    let n = e.dimension();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut block = one_var_seifert(e.0[0] as i64)?;
    for &a in &e.0[1..] {
        block = thom_sebastiani(&block, &one_var_seifert(a as i64)?);
    }
    let label = e.0.iter().map(|a| format!("{a}")).collect::<Vec<_>>().join(",");
    Ok(SeifertMatrix::from_flat(n, block.mu, block.entries).with_name(format!("brieskorn:{label}")))
}

/// `{Σ k_i/a_i : 1 <= k_i <= a_i − 1}` as a sorted multiset.
pub fn brieskorn_spectrum_oracle(e: &BrieskornExponents) -> Vec<Rat> {
    let mut out = vec![Rat::from_integer(BigInt::from(0))];
    for &a in &e.0 {
        let mut next = Vec::with_capacity(out.len() * (a as usize - 1));
        for v in &out {
            for k in 1..a {
                next.push(v + Rat::new(BigInt::from(k), BigInt::from(a)));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Exponents of `A_k` suspended to dimension `n`: `(2, …, 2, k + 1)`.
pub fn a_exponents(k: u32, n: u32) -> BrieskornExponents {
    let mut a = vec![2i64; n as usize];
    a.push(k as i64 + 1);
    BrieskornExponents::new(a).expect("valid by construction")
}

/// Exponents of `D_4 = x^3 + y^3`, suspended to dimension `n`.
pub fn d4_exponents(n: u32) -> BrieskornExponents {
    let mut a = vec![2i64; n as usize - 1];
    a.extend([3, 3]);
    BrieskornExponents::new(a).expect("valid by construction")
}

/// Resolves `A<k>`, `A<k>@<n>`, `D4`, `D4@<n>` and `brieskorn:a,b,...`.
pub fn lookup_exponents(name: &str) -> Result<BrieskornExponents> {
    let unknown = || Error::UnknownCatalogName(String::from(name));
    if let Some(list) = name.strip_prefix("brieskorn:") {
        let a = list
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| unknown()))
            .collect::<Result<Vec<_>>>()?;
        return BrieskornExponents::new(a);
    }
    let (base, n) = match name.split_once('@') {
        Some((b, n)) => (b, n.parse::<u32>().map_err(|_| unknown())?),
        None => (name, 1),
    };
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    if base == "D4" {
        return Ok(d4_exponents(n));
    }
    let k = base.strip_prefix('A').and_then(|k| k.parse::<u32>().ok()).filter(|&k| k >= 1).ok_or_else(unknown)?;
    Ok(a_exponents(k, n))
}

pub fn lookup(name: &str) -> Result<SeifertMatrix> {
    Ok(brieskorn(&lookup_exponents(name)?)?.with_name(name))
}

/// A deformation of `central` into singularities `locals`, with the verdict
/// the semicontinuity check is expected to return.
#[derive(Clone, Debug)]
pub struct AdjacencyInstance {
    pub label: String,
    pub central: SeifertMatrix,
    pub locals: Vec<SeifertMatrix>,
    pub central_exponents: BrieskornExponents,
    pub local_exponents: Vec<BrieskornExponents>,
    pub expect_holds: bool,
}

fn instance(label: String, central: BrieskornExponents, locals: Vec<BrieskornExponents>) -> AdjacencyInstance {
    AdjacencyInstance {
        label,
        central: brieskorn(&central).unwrap(),
        locals: locals.iter().map(|e| brieskorn(e).unwrap()).collect(),
        central_exponents: central,
        local_exponents: locals,
        expect_holds: true,
    }
}

/// Known adjacencies: `A_k → A_j` for `j <= k <= 6` in dimensions 1 to 3,
/// `D_4 → A_j` for `j <= 3` in dimension 1, and a few splittings of `A_k`
/// into several simpler points.
pub fn adjacency_examples() -> Vec<AdjacencyInstance> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for k in 1..=6 {
            for j in 1..=k {
                out.push(instance(format!("A{k} -> A{j} (n={n})"), a_exponents(k, n), vec![a_exponents(j, n)]));
            }
        }
    }
    for j in 1..=3 {
        out.push(instance(format!("D4 -> A{j} (n=1)"), d4_exponents(1), vec![a_exponents(j, 1)]));
    }
    out.push(instance(String::from("D4 -> D4 (n=1)"), d4_exponents(1), vec![d4_exponents(1)]));
    for (k, parts) in [(3, vec![1, 1]), (4, vec![2, 1]), (5, vec![2, 2]), (5, vec![1, 1, 1])] {
        let label = parts.iter().map(|j| format!("A{j}")).collect::<Vec<_>>().join(" + ");
        out.push(instance(
            format!("A{k} -> {label} (n=1)"),
            a_exponents(k, 1),
            parts.iter().map(|&j| a_exponents(j, 1)).collect(),
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(a: &[i64]) -> BrieskornExponents {
        BrieskornExponents::new(a.to_vec()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n.into(), d.into())
    }

    #[test]
    fn one_var_blocks() {
        assert_eq!(one_var_seifert(2).unwrap().entries, [-1]);
        assert_eq!(one_var_seifert(3).unwrap().entries, [-1, 1, 0, -1]);
        assert_eq!(one_var_seifert(4).unwrap().entries, [-1, 1, 0, 0, -1, 1, 0, 0, -1]);
        assert_eq!(one_var_seifert(1).unwrap_err(), Error::InvalidExponent(1));
    }

    #[test]
    fn join_with_empty_block() {
        let empty = SeifertBlock { vars: 1, mu: 0, entries: vec![] };
        assert_eq!(thom_sebastiani(&one_var_seifert(3).unwrap(), &empty).mu, 0);
    }

    #[test]
    fn trefoil_from_join() {
        let s = brieskorn(&ex(&[2, 3])).unwrap();
        assert_eq!(s.rows(), vec![vec![-1, 1], vec![0, -1]]);
        assert_eq!(s.n(), 1);
    }

    #[test]
    fn milnor_numbers() {
        for e in [&[2, 2, 3][..], &[2, 2, 2, 2, 3], &[3, 4, 5]] {
            let e = ex(e);
            assert_eq!(brieskorn(&e).unwrap().mu(), e.milnor_number());
            assert_eq!(brieskorn_spectrum_oracle(&e).len(), e.milnor_number());
        }
        assert_eq!(brieskorn(&ex(&[2, 2, 3])).unwrap().n(), 2);
        assert_eq!(brieskorn(&ex(&[2, 2, 2, 2, 3])).unwrap().n(), 4);
        assert_eq!(brieskorn(&ex(&[5])).unwrap_err(), Error::InvalidDimension(0));
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(brieskorn_spectrum_oracle(&ex(&[2, 3])), [r(5, 6), r(7, 6)]);
        assert_eq!(brieskorn_spectrum_oracle(&ex(&[2, 2, 3])), [r(4, 3), r(5, 3)]);
        assert_eq!(brieskorn_spectrum_oracle(&ex(&[2, 2, 4])), [r(5, 4), r(6, 4), r(7, 4)]);
    }

    #[test]
    fn names() {
        assert_eq!(lookup_exponents("A3").unwrap(), ex(&[2, 4]));
        assert_eq!(lookup_exponents("A2@2").unwrap(), ex(&[2, 2, 3]));
        assert_eq!(lookup_exponents("D4").unwrap(), ex(&[3, 3]));
        assert_eq!(lookup_exponents("brieskorn:2, 3,5").unwrap(), ex(&[2, 3, 5]));
        assert!(lookup("E9").is_err());
        assert!(lookup("A0").is_err());
        assert_eq!(lookup("A2").unwrap().name(), Some("A2"));
    }

    #[test]
    fn adjacency_instances_share_dimension() {
        let list = adjacency_examples();
        assert!(list.iter().any(|i| i.label == "A3 -> A2 (n=1)"));
        assert!(list.iter().any(|i| i.label == "A2 -> A2 (n=1)"));
        for inst in &list {
            assert!(inst.locals.iter().all(|l| l.n() == inst.central.n()));
        }
    }
}
