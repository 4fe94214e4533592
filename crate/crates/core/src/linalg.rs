//! Dense linear algebra over `Z/p^n`, with the field case `n = 1` singled out.

use crate::arith::{inv_mod, mul_mod, valuation};
use crate::error::{Error, Result};

/// Row-major dense matrix of residues; the modulus travels with the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Mat {
            rows: r,
            cols: c,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &Mat, m: u64) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + mul_mod(a, other.get(k, j), m)) % m;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u64], m: u64) -> Vec<u64> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| (acc + mul_mod(a, b, m)) % m)
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn reduce(&self, m: u64) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x % m).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// Reduced row echelon form over `F_p`; returns the pivot columns.
pub fn rref(a: &mut Mat, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(pr) = (r..a.rows).find(|&i| !a.get(i, c).is_multiple_of(p)) else {
            continue;
        };
        if pr != r {
            for j in 0..a.cols {
                a.data.swap(pr * a.cols + j, r * a.cols + j);
            }
        }
        let inv = inv_mod(a.get(r, c), p).expect("nonzero mod p");
        for j in c..a.cols {
            let v = mul_mod(a.get(r, j), inv, p);
            a.set(r, j, v);
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let f = a.get(i, c) % p;
            if f == 0 {
                continue;
            }
            for j in c..a.cols {
                let v = (a.get(i, j) + p - mul_mod(f, a.get(r, j), p)) % p;
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank_fp(a: &Mat, p: u64) -> usize {
    let mut b = a.reduce(p);
    rref(&mut b, p).len()
}

/// Null space over `F_p`. Basis vector `k` has a 1 at the `k`-th free column
/// and 0 at the other free columns, so coordinates of any kernel vector are
/// read off at `free` positions.
pub fn nullspace_fp(a: &Mat, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut b = a.reduce(p);
    let pivots = rref(&mut b, p);
    let mut is_pivot = vec![false; a.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..a.cols).filter(|&c| !is_pivot[c]).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![0u64; a.cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - b.get(r, f)) % p;
            }
            v
        })
        .collect();
    (basis, free)
}

/// Solves `a x = rhs` over `F_p`, returning one solution if any.
pub fn solve_fp(a: &Mat, rhs: &[u64], p: u64) -> Option<Vec<u64>> {
    let mut aug = Mat::zeros(a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.get(i, j) % p);
        }
        aug.set(i, a.cols, rhs[i] % p);
    }
    let pivots = rref(&mut aug, p);
    if pivots.last() == Some(&a.cols) {
        return None;
    }
    let mut x = vec![0u64; a.cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug.get(r, a.cols);
    }
    Some(x)
}

/// Inverse over `Z/p^n` of a square matrix, if it is invertible (i.e. invertible mod `p`).
pub fn inverse_mod(a: &Mat, p: u64, n: u32) -> Result<Mat> {
    if a.rows != a.cols {
        return Err(Error::InvalidParameter(
            "inverse of a non-square matrix".into(),
        ));
    }
    let m = p.pow(n);
    let k = a.rows;
    let mut aug = Mat::zeros(k, 2 * k);
    for i in 0..k {
        for j in 0..k {
            aug.set(i, j, a.get(i, j) % m);
        }
        aug.set(i, k + i, 1);
    }
    for c in 0..k {
        let pr = (c..k)
            .find(|&i| !aug.get(i, c).is_multiple_of(p))
            .ok_or(Error::NotInvertible)?;
        if pr != c {
            for j in 0..2 * k {
                aug.data.swap(pr * 2 * k + j, c * 2 * k + j);
            }
        }
        let inv = inv_mod(aug.get(c, c), m).ok_or(Error::NotInvertible)?;
        for j in 0..2 * k {
            let v = mul_mod(aug.get(c, j), inv, m);
            aug.set(c, j, v);
        }
        for i in 0..k {
            if i == c {
                continue;
            }
            let f = aug.get(i, c);
            if f == 0 {
                continue;
            }
            for j in 0..2 * k {
                let v = (aug.get(i, j) + m - mul_mod(f, aug.get(c, j), m)) % m;
                aug.set(i, j, v);
            }
        }
    }
    let mut out = Mat::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, aug.get(i, k + j));
        }
    }
    Ok(out)
}

/// A generator of a submodule of `(Z/p^n)^N` together with its additive order `p^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGen {
    pub vector: Vec<u64>,
    pub exponent: u32,
}

/// Kernel of `a` over `Z/p^n` as a direct sum of cyclic submodules.
///
/// Uses a Smith-style reduction that tracks column operations only: with
/// `U a V = D`, the kernel is `V` applied to `{y : D y = 0}`.
pub fn kernel_mod_pn(a: &Mat, p: u64, n: u32) -> Vec<KernelGen> {
    let m = p.pow(n);
    let mut d = a.reduce(m);
    let nc = a.cols;
    let mut v = Mat::identity(nc);
    let mut vals: Vec<u32> = Vec::new();
    let steps = a.rows.min(nc);
    for k in 0..steps {
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..d.rows {
            for j in k..nc {
                let x = d.get(i, j);
                if x == 0 {
                    continue;
                }
                let val = valuation(x, p, n);
                if best.is_none_or(|(b, _, _)| val < b) {
                    best = Some((val, i, j));
                    if val == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((val, pi, pj)) = best else { break };
        if pi != k {
            for j in 0..nc {
                d.data.swap(pi * nc + j, k * nc + j);
            }
        }
        if pj != k {
            for i in 0..d.rows {
                d.data.swap(i * nc + pj, i * nc + k);
            }
            for i in 0..nc {
                v.data.swap(i * nc + pj, i * nc + k);
            }
        }
        let pv = p.pow(val);
        let unit = d.get(k, k) / pv;
        let uinv = inv_mod(unit, m).expect("unit part");
        for j in 0..nc {
            let x = mul_mod(d.get(k, j), uinv, m);
            d.set(k, j, x);
        }
        // clear column k below and above
        for i in 0..d.rows {
            if i == k {
                continue;
            }
            let x = d.get(i, k);
            if x == 0 {
                continue;
            }
            let f = x / pv;
            for j in 0..nc {
                let y = (d.get(i, j) + m - mul_mod(f, d.get(k, j), m)) % m;
                d.set(i, j, y);
            }
        }
        // clear row k to the right, mirrored on V
        for j in 0..nc {
            if j == k {
                continue;
            }
            let x = d.get(k, j);
            if x == 0 {
                continue;
            }
            let f = x / pv;
            for i in 0..d.rows {
                let y = (d.get(i, j) + m - mul_mod(f, d.get(i, k), m)) % m;
                d.set(i, j, y);
            }
            for i in 0..nc {
                let y = (v.get(i, j) + m - mul_mod(f, v.get(i, k), m)) % m;
                v.set(i, j, y);
            }
        }
        vals.push(val);
    }
    let mut gens = Vec::new();
    for k in 0..nc {
        let (scale, exponent) = match vals.get(k) {
            Some(&0) => continue,
            Some(&val) => (p.pow(n - val), val),
            None => (1, n),
        };
        let vector = (0..nc).map(|i| mul_mod(v.get(i, k), scale, m)).collect();
        gens.push(KernelGen { vector, exponent });
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_kernel() {
        let a = Mat::from_rows(&[vec![1, 2, 0, 1], vec![2, 4, 1, 0]]);
        let (basis, free) = nullspace_fp(&a, 5);
        assert_eq!(basis.len(), 2);
        assert_eq!(free, vec![1, 3]);
        for b in &basis {
            assert!(a.mul_vec(b, 5).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inverse_round_trip_mod_9() {
        let a = Mat::from_rows(&[vec![1, 3], vec![2, 4]]);
        let ai = inverse_mod(&a, 3, 2).unwrap();
        assert_eq!(a.mul(&ai, 9), Mat::identity(2));
        let s = Mat::from_rows(&[vec![3, 0], vec![0, 1]]);
        assert_eq!(inverse_mod(&s, 3, 2), Err(Error::NotInvertible));
    }

    #[test]
    fn kernel_over_z4_counts() {
        // 2x = 0 mod 4 has 2 solutions; x + 2y = 0 has 4 solutions in (Z/4)^2
        let g = kernel_mod_pn(&Mat::from_rows(&[vec![2]]), 2, 2);
        assert_eq!(g.iter().map(|k| k.exponent).sum::<u32>(), 1);
        let g = kernel_mod_pn(&Mat::from_rows(&[vec![1, 2]]), 2, 2);
        assert_eq!(g.iter().map(|k| k.exponent).sum::<u32>(), 2);
    }

    #[test]
    fn kernel_matches_brute_force_mod_8() {
        let a = Mat::from_rows(&[vec![2, 4, 6], vec![4, 0, 2]]);
        let mut brute = 0;
        for x in 0..8u64 {
            for y in 0..8u64 {
                for z in 0..8u64 {
                    if a.mul_vec(&[x, y, z], 8).iter().all(|&c| c == 0) {
                        brute += 1;
                    }
                }
            }
        }
        let gens = kernel_mod_pn(&a, 2, 3);
        let size: u32 = gens.iter().map(|k| k.exponent).sum();
        assert_eq!(1u64 << size, brute);
        for g in &gens {
            assert!(a.mul_vec(&g.vector, 8).iter().all(|&c| c == 0));
        }
    }
}
