//! Index-based lookup tables for a small field `F_q`.
//!
//! Elements are encoded as `Σ c_i p^i` from their power-basis coordinates, so
//! the prime-field element `c` has index `c`. Multiplication goes through
//! discrete logarithms to the generator `t`; addition is a full `q x q` table.

use crate::error::{guard, Error, Result};
use crate::scalar::ring::{FqElem, WittElem, WittRing};

/// Largest field for which tables are built.
pub const TABLE_FIELD_LIMIT: u128 = 1 << 13;

#[derive(Debug, Clone)]
pub struct FieldTables {
    p: u64,
    h: usize,
    q: usize,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    chi: Vec<i8>,
}

impl FieldTables {
    pub fn new(p: u64, h: usize) -> Result<Self> {
        let ring = WittRing::field(p, h)?;
        guard("table field size", ring.size(), TABLE_FIELD_LIMIT)?;
        let q = ring.size() as usize;
        let encode = |x: &FqElem| -> usize {
            x.0.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        let decode = |mut i: usize| -> FqElem {
            let mut v = vec![0u64; h];
            for c in v.iter_mut() {
                *c = (i % p as usize) as u64;
                i /= p as usize;
            }
            WittElem(v)
        };
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let g = ring.gen();
        let mut cur = ring.one();
        for k in 0..q - 1 {
            let idx = encode(&cur);
            if log[idx] != u32::MAX {
                return Err(Error::Internal("generator is not primitive".into()));
            }
            log[idx] = k as u32;
            exp.push(idx as u16);
            cur = ring.mul(&cur, &g);
        }
        let mut add = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let elems: Vec<FqElem> = (0..q).map(decode).collect();
        for a in 0..q {
            neg[a] = encode(&ring.neg(&elems[a])) as u16;
            for b in a..q {
                let s = encode(&ring.add(&elems[a], &elems[b])) as u16;
                add[a * q + b] = s;
                add[b * q + a] = s;
            }
        }
        let mut chi = vec![0i8; q];
        for a in 1..q {
            chi[a] = if p == 2 || log[a] % 2 == 0 { 1 } else { -1 };
        }
        Ok(FieldTables {
            p,
            h,
            q,
            exp,
            log,
            add,
            neg,
            chi,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn q(&self) -> usize {
        self.q
    }

    /// Index of the prime-field element `c mod p`.
    #[inline]
    pub fn from_int(&self, c: i64) -> usize {
        c.rem_euclid(self.p as i64) as usize
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    /// Row of the addition table for `a`: `row[b] = a + b`.
    #[inline]
    pub fn add_row(&self, a: usize) -> &[u16] {
        &self.add[a * self.q..(a + 1) * self.q]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        if a == 0 || b == 0 {
            return 0;
        }
        let k = (self.log[a] as usize + self.log[b] as usize) % (self.q - 1);
        self.exp[k] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let k = (self.log[a] as u128 * e as u128 % (self.q as u128 - 1)) as usize;
        self.exp[k] as usize
    }

    pub fn inv(&self, a: usize) -> Result<usize> {
        if a == 0 {
            return Err(Error::NotInvertible);
        }
        let k = (self.q - 1 - self.log[a] as usize) % (self.q - 1);
        Ok(self.exp[k] as usize)
    }

    /// Discrete log to the generator `t`; `None` for zero.
    pub fn log(&self, a: usize) -> Option<u32> {
        (a != 0).then(|| self.log[a])
    }

    pub fn exp(&self, k: u64) -> usize {
        self.exp[(k % (self.q as u64 - 1)) as usize] as usize
    }

    /// Quadratic character: 0 at zero, otherwise ±1.
    #[inline]
    pub fn chi(&self, a: usize) -> i8 {
        self.chi[a]
    }

    pub fn chi_table(&self) -> &[i8] {
        &self.chi
    }

    /// `a^p`.
    pub fn frobenius(&self, a: usize) -> usize {
        self.pow(a, self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_agree_with_ring() {
        let t = FieldTables::new(3, 2).unwrap();
        assert_eq!(t.q(), 9);
        for a in 0..9 {
            assert_eq!(t.add(a, t.neg(a)), 0);
            if a != 0 {
                assert_eq!(t.mul(a, t.inv(a).unwrap()), 1);
            }
            for b in 0..9 {
                for c in 0..9 {
                    let lhs = t.mul(a, t.add(b, c));
                    assert_eq!(lhs, t.add(t.mul(a, b), t.mul(a, c)));
                }
            }
        }
        let squares = (1..9).filter(|&a| t.chi(a) == 1).count();
        assert_eq!(squares, 4);
    }

    #[test]
    fn prime_field_indices_are_integers() {
        let t = FieldTables::new(7, 1).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(t.mul(a, b), a * b % 7);
                assert_eq!(t.add(a, b), (a + b) % 7);
            }
        }
    }
}
