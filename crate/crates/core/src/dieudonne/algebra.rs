//! Finite-dimensional associative algebras over `F_p` given by structure
//! constants, with the Jacobson radical and quotients.

use crate::arith::mul_mod;
use crate::error::{guard, Error, Result};
use crate::linalg::{nullspace_fp, rank_fp, rref, Mat};

/// An `F_p`-algebra with basis `b_0..b_{d-1}` and `b_i b_j = Σ_k c_{ijk} b_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpAlgebra {
    pub p: u64,
    pub dim: usize,
    /// `mult[i * dim + j]` holds the coordinates of `b_i b_j`.
    pub mult: Vec<Vec<u64>>,
    pub one: Vec<u64>,
}

/// A subspace of `F_p^d` held as reduced row echelon rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: &[Vec<u64>], p: u64) -> Self {
        let mut m = Mat::zeros(vectors.len(), ambient);
        for (i, v) in vectors.iter().enumerate() {
            for (j, &x) in v.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        let pivots = rref(&mut m, p);
        let rows = (0..pivots.len()).map(|i| m.row(i).to_vec()).collect();
        Subspace {
            ambient,
            rows,
            pivots,
        }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace {
            ambient,
            rows,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its component along the subspace, with zeros at the pivots.
    pub fn reduce(&self, v: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = out[pc];
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = (*o + p - mul_mod(c, r, p)) % p;
            }
        }
        out
    }

    pub fn contains(&self, v: &[u64], p: u64) -> bool {
        self.reduce(v, p).iter().all(|&x| x == 0)
    }

    /// Coordinates of a member in the echelon basis.
    pub fn coords(&self, v: &[u64]) -> Vec<u64> {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    pub fn combine(&self, coeffs: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; self.ambient];
        for (row, &c) in self.rows.iter().zip(coeffs) {
            if c == 0 {
                continue;
            }
            for (o, &r) in out.iter_mut().zip(row) {
                *o = (*o + mul_mod(c, r, p)) % p;
            }
        }
        out
    }

    /// Columns that are not pivots: the standard complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Rows `w` with `w · v = 0` for every `v` in the subspace.
    pub fn annihilator(&self, p: u64) -> Mat {
        let (basis, _) = nullspace_fp(&Mat::from_rows(&self.rows_or_zero()), p);
        let mut m = Mat::zeros(basis.len(), self.ambient);
        for (i, b) in basis.iter().enumerate() {
            for (j, &x) in b.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    fn rows_or_zero(&self) -> Vec<Vec<u64>> {
        if self.rows.is_empty() {
            vec![vec![0; self.ambient]]
        } else {
            self.rows.clone()
        }
    }

    pub fn is_subspace_of(&self, other: &Subspace, p: u64) -> bool {
        self.rows.iter().all(|r| other.contains(r, p))
    }
}

impl FpAlgebra {
    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let d = self.dim;
        let mut out = vec![0u64; d];
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            for j in 0..d {
                if y[j] == 0 {
                    continue;
                }
                let c = mul_mod(x[i], y[j], p);
                for (o, &m) in out.iter_mut().zip(&self.mult[i * d + j]) {
                    *o = (*o + mul_mod(c, m, p)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[i] = 1;
        v
    }

    /// Matrix of `y ↦ x y` (column `j` is `x b_j`).
    pub fn left_mul_matrix(&self, x: &[u64]) -> Mat {
        let d = self.dim;
        let mut m = Mat::zeros(d, d);
        for j in 0..d {
            let col = self.mul(x, &self.basis_vector(j));
            for (i, &c) in col.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    pub fn is_unit(&self, x: &[u64]) -> bool {
        rank_fp(&self.left_mul_matrix(x), self.p) == self.dim
    }

    pub fn is_nilpotent(&self, x: &[u64]) -> bool {
        let mut cur = x.to_vec();
        for _ in 0..=self.dim {
            if cur.iter().all(|&c| c == 0) {
                return true;
            }
            cur = self.mul(&cur, x);
        }
        cur.iter().all(|&c| c == 0)
    }

    /// Span of all products `a b` with `a ∈ left`, `b ∈ right`.
    pub fn product_space(&self, left: &Subspace, right: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in &left.rows {
            for b in &right.rows {
                vecs.push(self.mul(a, b));
            }
        }
        Subspace::span(self.dim, &vecs, self.p)
    }

    /// Jacobson radical by the trace-power criterion over `F_p`: starting
    /// from the whole algebra, keep the elements `a` with `g_i(a b) = 0` for
    /// every basis element `b`, where `g_i(x) = Tr(x̂^(p^i)) / p^i mod p` on an
    /// integral lift of the regular representation.
    pub fn radical(&self) -> Result<Subspace> {
        let p = self.p;
        let d = self.dim;
        let mut levels = 0u32;
        while (p as u128).pow(levels + 1) <= d as u128 {
            levels += 1;
        }
        let reps: Vec<Mat> = (0..d)
            .map(|j| self.left_mul_matrix(&self.basis_vector(j)))
            .collect();
        let mut current = Subspace::full(d);
        for i in 0..=levels {
            if current.dim() == 0 {
                break;
            }
            let modulus = p.pow(i + 1);
            let pi = p.pow(i);
            let mut system = Mat::zeros(d, current.dim());
            for (l, a) in current.rows.iter().enumerate() {
                let la = self.left_mul_matrix(a);
                for (j, rb) in reps.iter().enumerate() {
                    // regular representation of a b_j is L_a L_{b_j}
                    let x = la.mul(rb, p);
                    let tr = trace_of_power(&x, p.pow(i), modulus);
                    if !tr.is_multiple_of(pi) {
                        return Err(Error::Internal(
                            "trace power not divisible as expected".into(),
                        ));
                    }
                    system.set(j, l, (tr / pi) % p);
                }
            }
            let (kernel, _) = nullspace_fp(&system, p);
            let vecs: Vec<Vec<u64>> = kernel.iter().map(|s| current.combine(s, p)).collect();
            current = Subspace::span(d, &vecs, p);
        }
        self.check_radical(&current)?;
        Ok(current)
    }

    /// `J` must be a two-sided nilpotent ideal.
    fn check_radical(&self, j: &Subspace) -> Result<()> {
        let full = Subspace::full(self.dim);
        if !self.product_space(j, &full).is_subspace_of(j, self.p)
            || !self.product_space(&full, j).is_subspace_of(j, self.p)
        {
            return Err(Error::Internal("radical is not a two-sided ideal".into()));
        }
        let mut power = j.clone();
        for _ in 0..=self.dim {
            if power.dim() == 0 {
                return Ok(());
            }
            power = self.product_space(&power, j);
        }
        Err(Error::Internal("radical is not nilpotent".into()))
    }

    /// `J ⊋ J² ⊋ … ⊋ 0`, starting with `J` itself.
    pub fn radical_filtration(&self, j: &Subspace) -> Vec<Subspace> {
        let mut out = vec![j.clone()];
        while out.last().is_some_and(|s| s.dim() > 0) {
            let next = self.product_space(out.last().expect("nonempty"), j);
            out.push(next);
        }
        out
    }

    /// Quotient by a two-sided ideal, using the standard complement of the
    /// ideal's echelon basis. Returns the quotient and the complement columns.
    pub fn quotient(&self, ideal: &Subspace) -> (FpAlgebra, Vec<usize>) {
        let cols = ideal.complement_columns();
        let q = cols.len();
        let project = |v: &[u64]| -> Vec<u64> {
            let r = ideal.reduce(v, self.p);
            cols.iter().map(|&c| r[c]).collect()
        };
        let mut mult = Vec::with_capacity(q * q);
        for &a in &cols {
            for &b in &cols {
                mult.push(project(&self.mult[a * self.dim + b]));
            }
        }
        let one = project(&self.one);
        (
            FpAlgebra {
                p: self.p,
                dim: q,
                mult,
                one,
            },
            cols,
        )
    }

    /// All elements, encoded in base `p` with coordinate 0 least significant.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        let size = (self.p as u128)
            .checked_pow(self.dim as u32)
            .unwrap_or(u128::MAX);
        guard("algebra enumeration", size, 1 << 22)?;
        Ok((0..size as u64)
            .map(|code| decode(code, self.p, self.dim))
            .collect())
    }

    /// `{x : x y nilpotent for all y}`, by enumeration; small algebras only.
    pub fn radical_bruteforce(&self) -> Result<Subspace> {
        let els = self.elements()?;
        guard("brute-force radical", (els.len() as u128).pow(2), 1 << 24)?;
        let members: Vec<Vec<u64>> = els
            .iter()
            .filter(|x| els.iter().all(|y| self.is_nilpotent(&self.mul(x, y))))
            .cloned()
            .collect();
        Ok(Subspace::span(self.dim, &members, self.p))
    }
}

pub fn encode(v: &[u64], p: u64) -> u64 {
    v.iter().rev().fold(0, |acc, &c| acc * p + c)
}

pub fn decode(mut code: u64, p: u64, dim: usize) -> Vec<u64> {
    let mut v = vec![0; dim];
    for c in v.iter_mut() {
        *c = code % p;
        code /= p;
    }
    v
}

fn trace_of_power(x: &Mat, e: u64, modulus: u64) -> u64 {
    let mut acc = Mat::identity(x.rows);
    let mut base = x.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, modulus);
        }
        base = base.mul(&base, modulus);
        e >>= 1;
    }
    (0..acc.rows).fold(0, |t, i| (t + acc.get(i, i)) % modulus)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// Group algebra `F_p[G]` from a multiplication table.
    pub(crate) fn group_algebra(p: u64, table: &[Vec<usize>]) -> FpAlgebra {
        let d = table.len();
        let mut mult = Vec::with_capacity(d * d);
        for i in 0..d {
            for j in 0..d {
                let mut v = vec![0; d];
                v[table[i][j]] = 1;
                mult.push(v);
            }
        }
        let mut one = vec![0; d];
        one[0] = 1;
        FpAlgebra {
            p,
            dim: d,
            mult,
            one,
        }
    }

    fn cyclic(k: usize) -> Vec<Vec<usize>> {
        (0..k)
            .map(|i| (0..k).map(|j| (i + j) % k).collect())
            .collect()
    }

    fn s3() -> Vec<Vec<usize>> {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 0, 2],
            [0, 2, 1],
            [2, 1, 0],
            [1, 2, 0],
            [2, 0, 1],
        ];
        let idx = |q: [usize; 3]| perms.iter().position(|&x| x == q).unwrap();
        perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| idx([a[b[0]], a[b[1]], a[b[2]]]))
                    .collect()
            })
            .collect()
    }

    #[test]
    fn radical_of_group_algebras() {
        // F_p[C_p] is local with radical of dimension p - 1
        for p in [2u64, 3, 5] {
            let a = group_algebra(p, &cyclic(p as usize));
            let j = a.radical().unwrap();
            assert_eq!(j.dim(), p as usize - 1);
            assert_eq!(j, a.radical_bruteforce().unwrap());
        }
        // F_2[S_3] has radical of dimension 1; F_3[S_3] of dimension 4
        let a = group_algebra(2, &s3());
        assert_eq!(a.radical().unwrap().dim(), 1);
        assert_eq!(a.radical().unwrap(), a.radical_bruteforce().unwrap());
        let a = group_algebra(3, &s3());
        assert_eq!(a.radical().unwrap().dim(), 4);
        assert_eq!(a.radical().unwrap(), a.radical_bruteforce().unwrap());
        // semisimple: F_5[S_3]
        assert_eq!(group_algebra(5, &s3()).radical().unwrap().dim(), 0);
        // F_2[C_4] needs the higher trace levels
        let a = group_algebra(2, &cyclic(4));
        assert_eq!(a.radical().unwrap().dim(), 3);
    }

    #[test]
    fn quotient_by_radical_is_semisimple() {
        let a = group_algebra(3, &s3());
        let j = a.radical().unwrap();
        let (q, _) = a.quotient(&j);
        assert_eq!(q.dim, 2);
        assert_eq!(q.radical().unwrap().dim(), 0);
        let units = q
            .elements()
            .unwrap()
            .into_iter()
            .filter(|x| q.is_unit(x))
            .count();
        assert_eq!(units, 4);
    }
}
