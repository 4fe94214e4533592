//! Genus-two curves `y² = f(x)` over `F_q`, `q <= 49`: p-rank through the
//! Cartier–Manin matrix and the unit-root factor of the Weil polynomial.
//!
//! Arithmetic happens in `F_{q²}`, which holds `F_q` as the elements with
//! `x^q = x`; point counts over both fields give the Weil polynomial.

use std::collections::BTreeMap;

use num_rational::Ratio;

use crate::error::{guard, Error, Result};
use crate::par::Execution;
use crate::scalar::poly::hensel_lift;
use crate::scalar::FieldTables;

/// Largest base field for genus two.
pub const GENUS2_Q_LIMIT: u128 = 49;

#[derive(Clone, Debug)]
pub struct Genus2Field {
    big: FieldTables,
    p: u64,
    e: u32,
    q: u64,
    sub: Vec<usize>,
}

impl Genus2Field {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if p < 3 {
            return Err(Error::InvalidParameter("genus two needs p >= 3".into()));
        }
        let q = (p as u128).checked_pow(e).unwrap_or(u128::MAX);
        guard("genus-two field size", q, GENUS2_Q_LIMIT)?;
        let q = q as u64;
        let big = FieldTables::new(p, 2 * e as usize)?;
        let mut sub: Vec<usize> = (0..big.q()).filter(|&x| big.pow(x, q) == x).collect();
        sub.sort_unstable();
        if sub.len() as u64 != q {
            return Err(Error::Internal("subfield has the wrong size".into()));
        }
        Ok(Genus2Field { big, p, e, q, sub })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Elements of `F_q`, as indices in the ambient table.
    pub fn subfield(&self) -> &[usize] {
        &self.sub
    }

    pub fn tables(&self) -> &FieldTables {
        &self.big
    }

    /// Quadratic character of `F_q` on a subfield element.
    fn chi_small(&self, y: usize) -> i64 {
        match self.big.log(y) {
            None => 0,
            Some(k) => {
                if (k as u64 / (self.q + 1)).is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn eval(&self, f: &[usize], x: usize) -> usize {
        f.iter()
            .rev()
            .fold(0, |acc, &c| self.big.add(self.big.mul(acc, x), c))
    }

    fn poly_trim(mut a: Vec<usize>) -> Vec<usize> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn poly_mul(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let t = &self.big;
        let mut out = vec![0usize; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = t.add(out[i + j], t.mul(x, y));
            }
        }
        out
    }

    fn poly_rem(&self, a: &[usize], b: &[usize]) -> Result<Vec<usize>> {
        let t = &self.big;
        let b = Self::poly_trim(b.to_vec());
        let lead = t.inv(*b.last().ok_or(Error::NotInvertible)?)?;
        let mut r = Self::poly_trim(a.to_vec());
        while r.len() >= b.len() {
            let c = t.mul(*r.last().expect("nonempty"), lead);
            let shift = r.len() - b.len();
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = t.sub(r[shift + i], t.mul(c, bi));
            }
            r = Self::poly_trim(r);
        }
        Ok(r)
    }

    fn is_squarefree(&self, f: &[usize]) -> Result<bool> {
        let t = &self.big;
        let df: Vec<usize> = f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| t.mul(t.from_int(i as i64), c))
            .collect();
        let mut a = Self::poly_trim(f.to_vec());
        let mut b = Self::poly_trim(df);
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b)?;
            a = b;
            b = r;
        }
        Ok(a.len() == 1)
    }

    /// Checks degree, squarefreeness and that the coefficients lie in `F_q`.
    pub fn validate(&self, f: &[usize]) -> Result<()> {
        let f = Self::poly_trim(f.to_vec());
        if !(f.len() == 6 || f.len() == 7) {
            return Err(Error::InvalidParameter("f must have degree 5 or 6".into()));
        }
        if f.iter().any(|c| self.sub.binary_search(c).is_err()) {
            return Err(Error::InvalidParameter(
                "coefficients must lie in F_q".into(),
            ));
        }
        if !self.is_squarefree(&f)? {
            return Err(Error::SingularCurve);
        }
        Ok(())
    }

    /// `(#C(F_q), #C(F_{q²}))` for the smooth model.
    pub fn point_counts(&self, f: &[usize]) -> Result<(u64, u64)> {
        self.validate(f)?;
        let f = Self::poly_trim(f.to_vec());
        let t = &self.big;
        let lead = *f.last().expect("nonempty");
        let (inf1, inf2) = if f.len() == 6 {
            (1, 1)
        } else {
            (1 + self.chi_small(lead), 1 + t.chi(lead) as i64)
        };
        let s1: i64 = self
            .sub
            .iter()
            .map(|&x| 1 + self.chi_small(self.eval(&f, x)))
            .sum();
        let s2: i64 = (0..t.q()).map(|x| 1 + t.chi(self.eval(&f, x)) as i64).sum();
        Ok(((s1 + inf1) as u64, (s2 + inf2) as u64))
    }

    /// Weil polynomial `x⁴ + c1 x³ + c2 x² + q c1 x + q²`.
    pub fn weil_polynomial(&self, f: &[usize]) -> Result<WeilPolynomial> {
        let (n1, n2) = self.point_counts(f)?;
        let q = self.q as i64;
        let s1 = q + 1 - n1 as i64;
        let s2 = q * q + 1 - n2 as i64;
        let c2 = (s1 * s1 - s2) / 2;
        Ok(WeilPolynomial {
            q: self.q,
            c1: -s1,
            c2,
        })
    }

    /// `M_{ij}` = coefficient of `x^{ip-j}` in `f^{(p-1)/2}`, `i, j ∈ {1, 2}`.
    pub fn cartier_manin(&self, f: &[usize]) -> [[usize; 2]; 2] {
        let mut h = vec![1usize];
        for _ in 0..(self.p - 1) / 2 {
            h = self.poly_mul(&h, f);
        }
        let coeff = |k: i64| {
            if k >= 0 && (k as usize) < h.len() {
                h[k as usize]
            } else {
                0
            }
        };
        let p = self.p as i64;
        [
            [coeff(p - 1), coeff(p - 2)],
            [coeff(2 * p - 1), coeff(2 * p - 2)],
        ]
    }

    fn mat_mul(&self, a: &[[usize; 2]; 2], b: &[[usize; 2]; 2]) -> [[usize; 2]; 2] {
        let t = &self.big;
        let mut out = [[0usize; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = t.add(t.mul(a[i][0], b[0][j]), t.mul(a[i][1], b[1][j]));
            }
        }
        out
    }

    fn mat_frob(&self, a: &[[usize; 2]; 2], k: u32) -> [[usize; 2]; 2] {
        let e = self.p.pow(k);
        a.map(|row| row.map(|x| self.big.pow(x, e)))
    }

    fn rank2(&self, a: &[[usize; 2]; 2]) -> u8 {
        let t = &self.big;
        let det = t.sub(t.mul(a[0][0], a[1][1]), t.mul(a[0][1], a[1][0]));
        if det != 0 {
            2
        } else if a.iter().flatten().any(|&x| x != 0) {
            1
        } else {
            0
        }
    }

    /// `M σ(M) … σ^{k-1}(M)`.
    fn iterate(&self, m: &[[usize; 2]; 2], k: u32) -> [[usize; 2]; 2] {
        let mut out = [[1, 0], [0, 1]];
        for i in 0..k {
            out = self.mat_mul(&out, &self.mat_frob(m, i));
        }
        out
    }

    /// Characteristic polynomial mod `p` of the `q`-power Hasse–Witt
    /// iterate, as `(trace, det)`.
    pub fn hasse_witt_charpoly(&self, f: &[usize]) -> Result<(u64, u64)> {
        let h = self.iterate(&self.cartier_manin(f), self.e);
        let t = &self.big;
        let tr = t.add(h[0][0], h[1][1]);
        let det = t.sub(t.mul(h[0][0], h[1][1]), t.mul(h[0][1], h[1][0]));
        let to_int = |x: usize| {
            if (x as u64) < self.p {
                Ok(x as u64)
            } else {
                Err(Error::Internal(
                    "Hasse–Witt invariant outside the prime field".into(),
                ))
            }
        };
        Ok((to_int(tr)?, to_int(det)?))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeilPolynomial {
    pub q: u64,
    pub c1: i64,
    pub c2: i64,
}

impl WeilPolynomial {
    /// Number of unit roots, read off the Newton polygon.
    pub fn unit_root_count(&self, p: u64) -> u8 {
        let p = p as i64;
        if self.c2.rem_euclid(p) != 0 {
            2
        } else if self.c1.rem_euclid(p) != 0 {
            1
        } else {
            0
        }
    }

    /// Coefficients modulo `m`, constant term first.
    fn coefficients_mod(&self, m: u64) -> Vec<u64> {
        let q = self.q as i64;
        [q * q, q * self.c1, self.c2, self.c1, 1]
            .iter()
            .map(|&c| c.rem_euclid(m as i64) as u64)
            .collect()
    }
}

/// p-rank from the stable rank of the Cartier–Manin iterate; the rank is
/// checked to be stable one step further.
pub fn genus2_prank(field: &Genus2Field, f: &[usize]) -> Result<u8> {
    field.validate(f)?;
    let m = field.cartier_manin(f);
    let r2 = field.rank2(&field.iterate(&m, 2));
    let r3 = field.rank2(&field.iterate(&m, 3));
    if r2 != r3 {
        return Err(Error::Internal(
            "Cartier–Manin iterate did not stabilize".into(),
        ));
    }
    Ok(r2)
}

/// Unit-root factor of the Weil polynomial modulo `p^n`, monic, constant term first.
pub fn genus2_frobenius_charpoly(field: &Genus2Field, f: &[usize], n: u32) -> Result<Vec<u64>> {
    let w = field.weil_polynomial(f)?;
    let p = field.p;
    let rank = w.unit_root_count(p);
    let target = w.coefficients_mod(p.pow(n));
    let pm = |c: i64| c.rem_euclid(p as i64) as u64;
    let (u, v) = match rank {
        2 => (vec![pm(w.c2), pm(w.c1), 1], vec![0, 0, 1]),
        1 => (vec![pm(w.c1), 1], vec![0, 0, 0, 1]),
        _ => return Err(Error::NoUnitRoot(w.c1)),
    };
    let (unit, _) = hensel_lift(&target, &u, &v, p, n)?;
    Ok(unit)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Genus2Report {
    pub q: u64,
    pub n: u32,
    pub curves: u64,
    /// Curves of p-rank 0, 1, 2.
    pub prank_counts: [u64; 3],
    /// p-rank-two curves by unit-root charpoly `(c0, c1)` of `x² + c1 x + c0`.
    pub charpoly_counts: BTreeMap<(u64, u64), u64>,
    /// `#{α ∈ GL_2(Z/p^n) with that charpoly} / |GL_2(Z/p^n)|`, i.e. the sum
    /// of `1/|Z(α)|` over the classes sharing it.
    pub predicted: BTreeMap<(u64, u64), Ratio<u64>>,
}

impl Genus2Report {
    pub fn max_abs_deviation(&self) -> f64 {
        let total = self.prank_counts[2].max(1) as f64;
        self.predicted
            .iter()
            .map(|(k, r)| {
                let obs = *self.charpoly_counts.get(k).unwrap_or(&0) as f64 / total;
                (obs - *r.numer() as f64 / *r.denom() as f64).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// Charpoly census of `GL_2(Z/p^n)`.
pub fn gl2_charpoly_frequencies(p: u64, n: u32) -> Result<BTreeMap<(u64, u64), Ratio<u64>>> {
    let m = p.pow(n);
    guard("GL_2 census", (m as u128).pow(4), 1 << 24)?;
    let mut counts: BTreeMap<(u64, u64), u64> = BTreeMap::new();
    let mut total = 0u64;
    for a in 0..m {
        for b in 0..m {
            for c in 0..m {
                for d in 0..m {
                    let det = (a * d + m * m - b * c % m) % m;
                    if det.is_multiple_of(p) {
                        continue;
                    }
                    let tr = (a + d) % m;
                    // x² - tr x + det
                    *counts.entry((det, (m - tr) % m)).or_default() += 1;
                    total += 1;
                }
            }
        }
    }
    Ok(counts
        .into_iter()
        .map(|(k, c)| (k, Ratio::new(c, total)))
        .collect())
}

/// Monic quintics `x⁵ + a4 x⁴ + … + a0` over `F_q`, exhaustively.
pub fn run_genus2_survey(p: u64, e: u32, n: u32, exec: &Execution) -> Result<Genus2Report> {
    let field = Genus2Field::new(p, e)?;
    let q = field.q as usize;
    guard("genus-two survey size", (q as u128).pow(5), 1 << 22)?;
    let sub = field.subfield().to_vec();
    let chunks = exec.map_chunks(q, |top| -> Result<([u64; 3], BTreeMap<(u64, u64), u64>)> {
        let mut pr = [0u64; 3];
        let mut cp: BTreeMap<(u64, u64), u64> = BTreeMap::new();
        for code in 0..q.pow(4) {
            let mut f = vec![0usize; 6];
            let mut c = code;
            for coeff in f.iter_mut().take(4) {
                *coeff = sub[c % q];
                c /= q;
            }
            f[4] = sub[top];
            f[5] = 1;
            if !field.is_squarefree(&f)? {
                continue;
            }
            let w = field.weil_polynomial(&f)?;
            let r = w.unit_root_count(p);
            pr[r as usize] += 1;
            if r == 2 {
                let u = genus2_frobenius_charpoly(&field, &f, n)?;
                *cp.entry((u[0], u[1])).or_default() += 1;
            }
        }
        Ok((pr, cp))
    })?;
    let mut prank_counts = [0u64; 3];
    let mut charpoly_counts = BTreeMap::new();
    for chunk in chunks {
        let (pr, cp) = chunk?;
        for i in 0..3 {
            prank_counts[i] += pr[i];
        }
        for (k, v) in cp {
            *charpoly_counts.entry(k).or_insert(0) += v;
        }
    }
    Ok(Genus2Report {
        q: field.q,
        n,
        curves: prank_counts.iter().sum(),
        prank_counts,
        charpoly_counts,
        predicted: gl2_charpoly_frequencies(p, n)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_sub(field: &Genus2Field, coeffs: &[u64]) -> Vec<usize> {
        coeffs
            .iter()
            .map(|&c| field.tables().from_int(c as i64))
            .collect()
    }

    #[test]
    fn x5_plus_x_over_f9() {
        let field = Genus2Field::new(3, 2).unwrap();
        let f = to_sub(&field, &[0, 1, 0, 0, 0, 1]);
        let r = genus2_prank(&field, &f).unwrap();
        let w = field.weil_polynomial(&f).unwrap();
        assert_eq!(r, w.unit_root_count(3));
    }

    #[test]
    fn prank_agrees_with_weil_polynomial() {
        use rand::{Rng, SeedableRng};
        for (p, e) in [(3, 1), (3, 2), (5, 1), (7, 1)] {
            let field = Genus2Field::new(p, e).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
            let mut checked = 0;
            while checked < 50 {
                let f: Vec<usize> = (0..7)
                    .map(|_| field.subfield()[rng.random_range(0..field.q() as usize)])
                    .collect();
                if f[6] == 0 || field.validate(&f).is_err() {
                    continue;
                }
                let w = field.weil_polynomial(&f).unwrap();
                assert!(w.c1.abs() <= 4 * (field.q() as f64).sqrt() as i64 + 1);
                assert_eq!(
                    genus2_prank(&field, &f).unwrap(),
                    w.unit_root_count(p),
                    "p={p} e={e} f={f:?}"
                );
                // Weil polynomial mod p equals x² times the Hasse–Witt charpoly
                let (tr, det) = field.hasse_witt_charpoly(&f).unwrap();
                assert_eq!(w.c1.rem_euclid(p as i64) as u64, (p - tr) % p);
                assert_eq!(w.c2.rem_euclid(p as i64) as u64, det);
                checked += 1;
            }
        }
    }

    #[test]
    fn unit_factor_is_compatible() {
        let field = Genus2Field::new(5, 1).unwrap();
        let f = to_sub(&field, &[1, 2, 0, 3, 0, 1]);
        let w = field.weil_polynomial(&f).unwrap();
        if w.unit_root_count(5) == 2 {
            let u1 = genus2_frobenius_charpoly(&field, &f, 1).unwrap();
            let u2 = genus2_frobenius_charpoly(&field, &f, 2).unwrap();
            assert_eq!(u2.iter().map(|c| c % 5).collect::<Vec<_>>(), u1);
            assert_ne!(u2[0] % 5, 0);
        }
    }

    #[test]
    fn ordinary_dominates_at_q9() {
        let r = run_genus2_survey(3, 2, 1, &Execution::sequential()).unwrap();
        assert!(r.prank_counts[2] > r.prank_counts[1] && r.prank_counts[2] > r.prank_counts[0]);
        let total: Ratio<u64> = r.predicted.values().copied().sum();
        assert_eq!(total, Ratio::from_integer(1));
    }
}
