//! Matrices over a scalar ring `W_n(F_{p^h})`, stored as flat coordinate vectors.

use crate::arith::mul_mod;
use crate::scalar::{WittElem, WittRing};

/// A `rows x cols` matrix over a Witt ring; entry `(i, j)` occupies
/// `data[(i * cols + j) * h ..][..h]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingMat {
    pub rows: usize,
    pub cols: usize,
    pub h: usize,
    pub data: Vec<u64>,
}

impl RingMat {
    pub fn zeros(rows: usize, cols: usize, h: usize) -> Self {
        RingMat {
            rows,
            cols,
            h,
            data: vec![0; rows * cols * h],
        }
    }

    pub fn identity(r: usize, h: usize) -> Self {
        Self::scalar(r, h, 1)
    }

    /// `c * Id` for an integer `c` (already reduced by the caller).
    pub fn scalar(r: usize, h: usize, c: u64) -> Self {
        let mut m = Self::zeros(r, r, h);
        for i in 0..r {
            m.data[(i * r + i) * h] = c;
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, h: usize, entries: &[WittElem]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        RingMat {
            rows,
            cols,
            h,
            data: entries.iter().flat_map(|e| e.0.iter().copied()).collect(),
        }
    }

    /// Integer matrix embedded as constants.
    pub fn from_int_rows(rows: &[Vec<i64>], h: usize, modulus: u64) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c, h);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.data[(i * c + j) * h] = x.rem_euclid(modulus as i64) as u64;
            }
        }
        m
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &[u64] {
        let o = (i * self.cols + j) * self.h;
        &self.data[o..o + self.h]
    }

    #[inline]
    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [u64] {
        let o = (i * self.cols + j) * self.h;
        &mut self.data[o..o + self.h]
    }

    pub fn elem(&self, i: usize, j: usize) -> WittElem {
        WittElem(self.entry(i, j).to_vec())
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &RingMat, ring: &WittRing) -> RingMat {
        let m = ring.modulus();
        RingMat {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + b) % m)
                .collect(),
            ..*self
        }
    }

    pub fn sub(&self, other: &RingMat, ring: &WittRing) -> RingMat {
        let m = ring.modulus();
        RingMat {
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| (a + m - b) % m)
                .collect(),
            ..*self
        }
    }

    pub fn neg(&self, ring: &WittRing) -> RingMat {
        let m = ring.modulus();
        RingMat {
            data: self.data.iter().map(|a| (m - a) % m).collect(),
            ..*self
        }
    }

    pub fn scale_int(&self, c: u64, ring: &WittRing) -> RingMat {
        let m = ring.modulus();
        RingMat {
            data: self.data.iter().map(|&a| mul_mod(a, c, m)).collect(),
            ..*self
        }
    }

    pub fn mul(&self, other: &RingMat, ring: &WittRing) -> RingMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let h = self.h;
        let m = ring.modulus();
        let mut out = RingMat::zeros(self.rows, other.cols, h);
        let mut tmp = vec![0u64; h];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.entry(i, k);
                if a.iter().all(|&x| x == 0) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.entry(k, j);
                    if b.iter().all(|&x| x == 0) {
                        continue;
                    }
                    ring.mul_into(a, b, &mut tmp);
                    for (o, t) in out.entry_mut(i, j).iter_mut().zip(&tmp) {
                        *o = (*o + t) % m;
                    }
                }
            }
        }
        out
    }

    /// Entrywise `σ^k`.
    pub fn frobenius(&self, k: i64, ring: &WittRing) -> RingMat {
        if k.rem_euclid(self.h as i64) == 0 {
            return self.clone();
        }
        let mut out = RingMat::zeros(self.rows, self.cols, self.h);
        for (src, dst) in self.data.chunks(self.h).zip(out.data.chunks_mut(self.h)) {
            ring.frobenius_into(src, k, dst);
        }
        out
    }

    pub fn transpose(&self) -> RingMat {
        let mut out = RingMat::zeros(self.cols, self.rows, self.h);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entry_mut(j, i).copy_from_slice(self.entry(i, j));
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64], ring: &WittRing) -> Vec<u64> {
        let col = RingMat {
            rows: self.cols,
            cols: 1,
            h: self.h,
            data: v.to_vec(),
        };
        self.mul(&col, ring).data
    }

    /// Reduction mod `p^m`.
    pub fn truncate(&self, m: u32, ring: &WittRing) -> RingMat {
        let pm = ring.p().pow(m);
        RingMat {
            data: self.data.iter().map(|x| x % pm).collect(),
            ..*self
        }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &RingMat) -> RingMat {
        let (r, c) = (self.rows + other.rows, self.cols + other.cols);
        let mut out = RingMat::zeros(r, c, self.h);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.entry_mut(i, j).copy_from_slice(self.entry(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.entry_mut(self.rows + i, self.cols + j)
                    .copy_from_slice(other.entry(i, j));
            }
        }
        out
    }

    /// Inverse, if the reduction mod `p` is invertible.
    pub fn inverse(&self, ring: &WittRing) -> Option<RingMat> {
        let r = self.rows;
        if r != self.cols {
            return None;
        }
        let h = self.h;
        let mut a = self.clone();
        let mut inv = RingMat::identity(r, h);
        let mut tmp = vec![0u64; h];
        let m = ring.modulus();
        for c in 0..r {
            let pr = (c..r).find(|&i| ring.is_unit(&a.elem(i, c)))?;
            if pr != c {
                for j in 0..r {
                    for t in 0..h {
                        a.data.swap((pr * r + j) * h + t, (c * r + j) * h + t);
                        inv.data.swap((pr * r + j) * h + t, (c * r + j) * h + t);
                    }
                }
            }
            let pinv = ring.inv(&a.elem(c, c)).ok()?;
            for j in 0..r {
                ring.mul_into(a.entry(c, j), &pinv.0, &mut tmp);
                a.entry_mut(c, j).copy_from_slice(&tmp);
                ring.mul_into(inv.entry(c, j), &pinv.0, &mut tmp);
                inv.entry_mut(c, j).copy_from_slice(&tmp);
            }
            for i in 0..r {
                if i == c {
                    continue;
                }
                let f = a.elem(i, c);
                if ring.is_zero(&f) {
                    continue;
                }
                for j in 0..r {
                    ring.mul_into(&f.0, a.entry(c, j), &mut tmp);
                    for (o, t) in a.entry_mut(i, j).iter_mut().zip(&tmp) {
                        *o = (*o + m - t) % m;
                    }
                    ring.mul_into(&f.0, inv.entry(c, j), &mut tmp);
                    for (o, t) in inv.entry_mut(i, j).iter_mut().zip(&tmp) {
                        *o = (*o + m - t) % m;
                    }
                }
            }
        }
        Some(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_and_frobenius() {
        let r = WittRing::new(2, 3, 2).unwrap();
        let t = r.gen();
        let one = r.one();
        let zero = r.zero();
        let a = RingMat::from_entries(
            2,
            2,
            3,
            &[t.clone(), one.clone(), zero.clone(), r.add(&t, &one)],
        );
        let ai = a.inverse(&r).unwrap();
        assert_eq!(a.mul(&ai, &r), RingMat::identity(2, 3));
        let fa = a.frobenius(1, &r);
        assert_eq!(fa.elem(0, 0), r.frobenius(&t, 1));
        assert_eq!(fa.frobenius(2, &r), a);
    }
}
