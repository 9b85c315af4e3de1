//! Word-size modular arithmetic: primes, ranks and determinants modulo a
//! prime, and a multimodular determinant for integer pencils.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Primes are searched downward from here; products fit in `u128`.
const PRIME_CEILING: u64 = 1 << 62;

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

pub fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &SMALL {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `ℓ ≡ 1 (mod q)` below 2^62, in decreasing order.
pub fn primes_congruent_one(q: u64) -> impl Iterator<Item = u64> {
    let q = q.max(1);
    let mut k = (PRIME_CEILING - 1) / q;
    core::iter::from_fn(move || {
        while k > 0 {
            let cand = k * q + 1;
            k -= 1;
            if is_prime(cand) {
                return Some(cand);
            }
        }
        None
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A primitive `q`-th root of unity modulo the prime `p` (requires `q | p - 1`).
pub fn primitive_root_of_unity(q: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % q, 0);
    if q == 1 {
        return 1;
    }
    let factors = prime_factors(q);
    for a in 2..p {
        let z = pow_mod(a, (p - 1) / q, p);
        if factors.iter().all(|&r| pow_mod(z, q / r, p) != 1) {
            return z;
        }
    }
    unreachable!("no primitive root of unity found")
}

pub fn bigint_mod(x: &BigInt, p: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Rank of a row-major matrix over `F_p`. The matrix is consumed as scratch.
pub fn rank_mod(mut m: Vec<u64>, rows: usize, cols: usize, p: u64) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&i| m[i * cols + c] != 0) else {
            continue;
        };
        if piv != rank {
            for j in 0..cols {
                m.swap(piv * cols + j, rank * cols + j);
            }
        }
        let inv = inv_mod(m[rank * cols + c], p);
        for i in rank + 1..rows {
            let f = m[i * cols + c];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            for j in c..cols {
                let v = mul_mod(f, m[rank * cols + j], p);
                m[i * cols + j] = sub_mod(m[i * cols + j], v, p);
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square row-major matrix over `F_p`.
pub fn det_mod(mut m: Vec<u64>, n: usize, p: u64) -> u64 {
    let mut det = 1u64;
    for c in 0..n {
        let Some(piv) = (c..n).find(|&i| m[i * n + c] != 0) else {
            return 0;
        };
        if piv != c {
            for j in 0..n {
                m.swap(piv * n + j, c * n + j);
            }
            det = sub_mod(0, det, p);
        }
        let pv = m[c * n + c];
        det = mul_mod(det, pv, p);
        let inv = inv_mod(pv, p);
        for i in c + 1..n {
            let f = m[i * n + c];
            if f == 0 {
                continue;
            }
            let f = mul_mod(f, inv, p);
            for j in c..n {
                let v = mul_mod(f, m[c * n + j], p);
                m[i * n + j] = sub_mod(m[i * n + j], v, p);
            }
        }
    }
    det
}

/// Coefficients (ascending) of the polynomial of degree `<= n` through
/// `(x_i, y_i)`, `x_i = i`, over `F_p`.
fn interpolate_mod(ys: &[u64], p: u64) -> Vec<u64> {
    let n = ys.len();
    // Newton divided differences
    let mut coef = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = sub_mod(coef[i], coef[i - 1], p);
            let den = inv_mod(j as u64 % p, p);
            coef[i] = mul_mod(num, den, p);
        }
    }
    // expand Σ coef_k Π_{i<k} (t - i)
    let mut out = vec![0u64; n];
    for k in (0..n).rev() {
        // out = out * (t - k) + coef_k
        let mut next = vec![0u64; n];
        for d in 0..n {
            if out[d] == 0 {
                continue;
            }
            if d + 1 < n {
                next[d + 1] = add_mod(next[d + 1], out[d], p);
            }
            next[d] = sub_mod(next[d], mul_mod(out[d], k as u64 % p, p), p);
        }
        next[0] = add_mod(next[0], coef[k], p);
        out = next;
    }
    out
}

fn sum_of_squares_bits(row: &[BigInt]) -> u64 {
    let s: BigInt = row.iter().map(|x| x * x).sum();
    s.bits()
}

/// Coefficients (ascending) of `det(t·A + B)` over `F_p`. When `A` is
/// invertible this is `det A · det(t − X)` with `X = −A⁻¹B`, from a Hessenberg
/// reduction of `X`; otherwise by evaluation and interpolation.
pub fn pencil_det_mod(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    match solve_mod(a, b, n, p) {
        Some((det_a, c)) => {
            let x: Vec<u64> = c.into_iter().map(|v| sub_mod(0, v, p)).collect();
            charpoly_mod(x, n, p).into_iter().map(|v| mul_mod(v, det_a, p)).collect()
        }
        None => {
            let ys: Vec<u64> = (0..=n as u64)
                .map(|x| {
                    let m: Vec<u64> = a.iter().zip(b).map(|(&ai, &bi)| add_mod(mul_mod(ai, x, p), bi, p)).collect();
                    det_mod(m, n, p)
                })
                .collect();
            interpolate_mod(&ys, p)
        }
    }
}

/// `(det A, A⁻¹B)` over `F_p`, or `None` if `A` is singular.
fn solve_mod(a: &[u64], b: &[u64], n: usize, p: u64) -> Option<(u64, Vec<u64>)> {
    let w = 2 * n;
    let mut m = vec![0u64; n * w];
    for i in 0..n {
        m[i * w..i * w + n].copy_from_slice(&a[i * n..(i + 1) * n]);
        m[i * w + n..(i + 1) * w].copy_from_slice(&b[i * n..(i + 1) * n]);
    }
    let mut det = 1;
    for c in 0..n {
        let piv = (c..n).find(|&i| m[i * w + c] != 0)?;
        if piv != c {
            for j in 0..w {
                m.swap(piv * w + j, c * w + j);
            }
            det = sub_mod(0, det, p);
        }
        det = mul_mod(det, m[c * w + c], p);
        let inv = inv_mod(m[c * w + c], p);
        for j in c..w {
            m[c * w + j] = mul_mod(m[c * w + j], inv, p);
        }
        for i in 0..n {
            let f = m[i * w + c];
            if i == c || f == 0 {
                continue;
            }
            for j in c..w {
                let v = mul_mod(f, m[c * w + j], p);
                m[i * w + j] = sub_mod(m[i * w + j], v, p);
            }
        }
    }
    let c = (0..n).flat_map(|i| m[i * w + n..(i + 1) * w].to_vec()).collect();
    Some((det, c))
}

/// Coefficients (ascending) of `det(t − X)` over `F_p`, by reduction to
/// upper Hessenberg form and the usual three-term expansion.
pub fn charpoly_mod(mut x: Vec<u64>, n: usize, p: u64) -> Vec<u64> {
    for m in 1..n.saturating_sub(1) {
        let j = m - 1;
        let Some(piv) = (m..n).find(|&i| x[i * n + j] != 0) else { continue };
        if piv != m {
            for k in 0..n {
                x.swap(piv * n + k, m * n + k);
            }
            for k in 0..n {
                x.swap(k * n + piv, k * n + m);
            }
        }
        let inv = inv_mod(x[m * n + j], p);
        for i in m + 1..n {
            let u = mul_mod(x[i * n + j], inv, p);
            if u == 0 {
                continue;
            }
            // row_i −= u·row_m, then col_m += u·col_i
            for k in 0..n {
                let v = mul_mod(u, x[m * n + k], p);
                x[i * n + k] = sub_mod(x[i * n + k], v, p);
            }
            for k in 0..n {
                let v = mul_mod(u, x[k * n + i], p);
                x[k * n + m] = add_mod(x[k * n + m], v, p);
            }
        }
    }
    // polys[k] = char poly of the leading k×k block
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        // (t − h_kk)·P_k
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add_mod(next[d + 1], c, p);
            next[d] = sub_mod(next[d], mul_mod(x[k * n + k], c, p), p);
        }
        // − Σ_{i<k} h_ik · Π_{l=i+1..=k} h_{l,l−1} · P_i
        let mut prod = 1;
        for i in (0..k).rev() {
            prod = mul_mod(prod, x[(i + 1) * n + i], p);
            if prod == 0 {
                break;
            }
            let coef = mul_mod(x[i * n + k], prod, p);
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub_mod(next[d], mul_mod(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().expect("nonempty")
}

/// Exact coefficients (ascending, length `n + 1`) of `det(t·A + B)` for
/// integer `n × n` matrices, by evaluation and interpolation modulo several
/// primes and Chinese remaindering under a Hadamard-type bound.
pub fn integer_pencil_det(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n * n);
    if n == 0 {
        return vec![BigInt::one()];
    }
    // |coeff| <= Π_i (|A_i| + |B_i|) <= Π_i 2·max(|A_i|, |B_i|)
    let mut bound_bits: u64 = 2;
    for i in 0..n {
        let ra = sum_of_squares_bits(&a[i * n..(i + 1) * n]);
        let rb = sum_of_squares_bits(&b[i * n..(i + 1) * n]);
        bound_bits += ra.max(rb).div_ceil(2) + 1;
    }
    let mut modulus = BigInt::one();
    let mut residues: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for p in primes_congruent_one(1) {
        if modulus.bits() > bound_bits + 1 {
            break;
        }
        let am: Vec<u64> = a.iter().map(|x| bigint_mod(x, p)).collect();
        let bm: Vec<u64> = b.iter().map(|x| bigint_mod(x, p)).collect();
        let coeffs = pencil_det_mod(&am, &bm, n, p);
        // CRT: x ≡ r (mod M), x ≡ c (mod p)
        let m_mod_p = bigint_mod(&modulus, p);
        let m_inv = inv_mod(m_mod_p, p);
        for (r, &c) in residues.iter_mut().zip(&coeffs) {
            let r_mod_p = bigint_mod(r, p);
            let k = mul_mod(sub_mod(c, r_mod_p, p), m_inv, p);
            *r += &modulus * BigInt::from(k);
        }
        modulus *= BigInt::from(p);
    }
    let half = &modulus >> 1;
    residues
        .into_iter()
        .map(|r| if r > half { r - &modulus } else { r })
        .map(|r| if r.sign() == Sign::NoSign { BigInt::zero() } else { r })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2) && is_prime(97) && !is_prime(91));
        assert!(is_prime((1u64 << 61) - 1));
        let p = primes_congruent_one(12).next().unwrap();
        assert_eq!(p % 12, 1);
        let z = primitive_root_of_unity(12, p);
        assert_eq!(pow_mod(z, 12, p), 1);
        assert_ne!(pow_mod(z, 6, p), 1);
        assert_ne!(pow_mod(z, 4, p), 1);
    }

    #[test]
    fn rank_and_det() {
        let p = 101;
        assert_eq!(rank_mod(vec![1, 2, 2, 4], 2, 2, p), 1);
        assert_eq!(det_mod(vec![1, 2, 3, 4], 2, p), p - 2);
    }

    #[test]
    fn trefoil_pencil_det() {
        // det(t S - S^T), S = [[-1, 1], [0, -1]] is t^2 - t + 1
        let s: Vec<BigInt> = [-1, 1, 0, -1].iter().map(|&x| BigInt::from(x)).collect();
        let mst: Vec<BigInt> = [1, 0, -1, 1].iter().map(|&x| BigInt::from(x)).collect();
        let c = integer_pencil_det(&s, &mst, 2);
        assert_eq!(c, vec![BigInt::from(1), BigInt::from(-1), BigInt::from(1)]);
    }

    #[test]
    fn pencil_det_large_coefficients() {
        // diag(1000 t + 999, -7 t + 3, 5 t)
        let z = BigInt::zero;
        let a = vec![BigInt::from(1000), z(), z(), z(), BigInt::from(-7), z(), z(), z(), BigInt::from(5)];
        let b = vec![BigInt::from(999), z(), z(), z(), BigInt::from(3), z(), z(), z(), z()];
        let c = integer_pencil_det(&a, &b, 3);
        // 5t (1000t + 999)(-7t + 3) = 5t(-7000 t^2 + 3000 t - 6993 t + 2997)
        let want: Vec<BigInt> = [0, 14985, -19965, -35000].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(c, want);
    }

    #[test]
    fn both_pencil_routes_agree() {
        let p = 1_000_003;
        let mut state = 7u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) % 7
        };
        for n in 1..9 {
            for _ in 0..10 {
                let a: Vec<u64> = (0..n * n).map(|_| next()).collect();
                let b: Vec<u64> = (0..n * n).map(|_| next()).collect();
                let ys: Vec<u64> = (0..=n as u64)
                    .map(|x| det_mod(a.iter().zip(&b).map(|(&ai, &bi)| add_mod(mul_mod(ai, x, p), bi, p)).collect(), n, p))
                    .collect();
                assert_eq!(pencil_det_mod(&a, &b, n, p), interpolate_mod(&ys, p));
            }
        }
    }
}
