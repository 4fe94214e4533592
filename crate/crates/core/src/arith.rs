//! Small integer helpers shared across the crate.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Returns `(g, x, y)` with `a*x + b*y = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd((a % m) as i64, m as i64);
    if g != 1 {
        None
    } else {
        Some(x.rem_euclid(m as i64) as u64)
    }
}

/// `p`-adic valuation of a nonzero residue modulo `p^n`; returns `n` for zero.
pub fn valuation(mut a: u64, p: u64, n: u32) -> u32 {
    if a == 0 {
        return n;
    }
    let mut v = 0;
    while a.is_multiple_of(p) {
        a /= p;
        v += 1;
    }
    v
}

/// `p^e` with overflow checking.
pub fn checked_pow(p: u64, e: u32) -> Option<u64> {
    p.checked_pow(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_factors() {
        assert!(is_prime(2) && is_prime(3) && is_prime(241));
        assert!(!is_prime(1) && !is_prime(9) && !is_prime(0));
        assert_eq!(prime_factors(3_486_784_400), vec![2, 5, 11, 61, 1181]);
        assert_eq!(prime_factors(26), vec![2, 13]);
    }

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(3, 9), None);
        assert_eq!(inv_mod(2, 9), Some(5));
        let (g, x, y) = ext_gcd(2, 3);
        assert_eq!(g, 1);
        assert_eq!(2 * x + 3 * y, 1);
    }
}
