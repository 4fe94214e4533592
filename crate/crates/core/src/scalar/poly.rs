//! Dense univariate polynomials over `Z/m`, coefficients in ascending order.
//!
//! These are plain `Vec<u64>` helpers; the ring modulus is passed explicitly.

use crate::arith::{inv_mod, mul_mod};
use crate::error::{Error, Result};

pub type Poly = Vec<u64>;

pub fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], m: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + y) % m
        })
        .collect();
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], m: u64) -> Poly {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|i| {
            let x = a.get(i).copied().unwrap_or(0);
            let y = b.get(i).copied().unwrap_or(0);
            (x + m - y % m) % m
        })
        .collect();
    trim(out)
}

pub fn scale(a: &[u64], c: u64, m: u64) -> Poly {
    trim(a.iter().map(|&x| mul_mod(x, c, m)).collect())
}

pub fn mul(a: &[u64], b: &[u64], m: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, m)) % m;
        }
    }
    trim(out)
}

/// Quotient and remainder by a polynomial whose leading coefficient is a unit mod `m`.
pub fn divrem(a: &[u64], f: &[u64], m: u64) -> Result<(Poly, Poly)> {
    let df =
        degree(f).ok_or_else(|| Error::InvalidParameter("division by zero polynomial".into()))?;
    let lead_inv = inv_mod(f[df], m).ok_or(Error::NotInvertible)?;
    let mut r: Poly = trim(a.to_vec());
    if r.len() <= df {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![0u64; r.len() - df];
    while let Some(dr) = degree(&r) {
        if dr < df {
            break;
        }
        let c = mul_mod(r[dr], lead_inv, m);
        q[dr - df] = c;
        for i in 0..=df {
            let t = mul_mod(c, f[i], m);
            r[dr - df + i] = (r[dr - df + i] + m - t) % m;
        }
        r = trim(r);
    }
    Ok((trim(q), r))
}

pub fn rem(a: &[u64], f: &[u64], m: u64) -> Result<Poly> {
    Ok(divrem(a, f, m)?.1)
}

/// `a^e mod f` over `Z/m`.
pub fn pow_rem(a: &[u64], mut e: u64, f: &[u64], m: u64) -> Result<Poly> {
    let mut acc = vec![1 % m];
    let mut base = rem(a, f, m)?;
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&mul(&acc, &base, m), f, m)?;
        }
        base = rem(&mul(&base, &base, m), f, m)?;
        e >>= 1;
    }
    Ok(trim(acc))
}

/// Extended Euclid over the prime field `F_p`: returns `(g, s, t)` with `s a + t b = g`, `g` monic.
pub fn ext_gcd_fp(a: &[u64], b: &[u64], p: u64) -> Result<(Poly, Poly, Poly)> {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p)?;
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let d = degree(&r0).ok_or_else(|| Error::InvalidParameter("gcd of zero polynomials".into()))?;
    let inv = inv_mod(r0[d], p).ok_or(Error::NotInvertible)?;
    Ok((scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p)))
}

/// Hensel-lifts a coprime factorization `target ≡ u·v (mod p)` with `u`, `v` monic to
/// monic factors modulo `p^n`. `target` must be monic with coefficients mod `p^n`.
pub fn hensel_lift(target: &[u64], u: &[u64], v: &[u64], p: u64, n: u32) -> Result<(Poly, Poly)> {
    let pn = p.pow(n);
    let target_p: Poly = trim(target.iter().map(|&c| c % p).collect());
    if mul(u, v, p) != target_p {
        return Err(Error::InvalidParameter(
            "factors do not multiply to the target mod p".into(),
        ));
    }
    let (g, _, t) = ext_gcd_fp(u, v, p)?;
    if g != vec![1] {
        return Err(Error::InvalidParameter(
            "Hensel factors are not coprime mod p".into(),
        ));
    }
    let mut uu = u.to_vec();
    let mut vv = v.to_vec();
    let mut pk = 1u64;
    for _ in 1..n {
        pk *= p;
        let next = pk * p;
        let prod = mul(&uu, &vv, next);
        let diff = sub(target, &prod, next);
        // every coefficient of diff is divisible by p^k
        let e: Poly = trim(diff.iter().map(|&c| (c / pk) % p).collect());
        let te = mul(&t, &e, p);
        let (_, du) = divrem(&te, u, p)?;
        let rhs = sub(&e, &mul(v, &du, p), p);
        let (dv, r) = divrem(&rhs, u, p)?;
        if !r.is_empty() {
            return Err(Error::Internal("inexact Hensel correction".into()));
        }
        uu = add(&uu, &scale(&du, pk, next), next);
        vv = add(&vv, &scale(&dv, pk, next), next);
    }
    let uu = uu.iter().map(|&c| c % pn).collect();
    let vv = vv.iter().map(|&c| c % pn).collect();
    Ok((trim(uu), trim(vv)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        let a = vec![3, 0, 2, 1];
        let f = vec![1, 1, 1];
        let (q, r) = divrem(&a, &f, 5).unwrap();
        assert_eq!(add(&mul(&q, &f, 5), &r, 5), trim(a));
    }

    #[test]
    fn hensel_lifts_cyclotomic_split() {
        // x^3 - 1 = (x^2 + x + 1)(x - 1) over Z/4; lift from mod 2
        let target = vec![3, 0, 0, 1];
        let (u, v) = hensel_lift(&target, &[1, 1, 1], &[1, 1], 2, 2).unwrap();
        assert_eq!(mul(&u, &v, 4), target);
        assert_eq!(u, vec![1, 1, 1]);
        assert_eq!(v, vec![3, 1]);
    }
}
