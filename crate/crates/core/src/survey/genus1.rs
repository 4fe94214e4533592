//! Elliptic curves over a small field, counted through the quadratic
//! character: `#E = q + 1 + Σ_x χ(f(x))`.

use crate::error::{Error, Result};
use crate::scalar::FieldTables;

/// Which two-parameter family of cubics `y² = x³ + …` is enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveFamily {
    /// `y² = x³ + A x + B`.
    ShortWeierstrass,
    /// `y² = x³ + A x² + B`. In characteristic 3 every short Weierstrass
    /// curve has `j = 0` and is supersingular, so this family is used there.
    QuadraticTerm,
}

impl CurveFamily {
    pub fn for_prime(p: u64) -> Result<Self> {
        match p {
            0..=2 => Err(Error::InvalidParameter(format!(
                "p = {p} is not supported; p must be >= 3"
            ))),
            3 => Ok(CurveFamily::QuadraticTerm),
            _ => Ok(CurveFamily::ShortWeierstrass),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveFamily::ShortWeierstrass => "y^2 = x^3 + A x + B",
            CurveFamily::QuadraticTerm => "y^2 = x^3 + A x^2 + B",
        }
    }

    /// Coefficients `(a2, a4, a6)` of `x³ + a2 x² + a4 x + a6`.
    fn coefficients(&self, a: usize, b: usize) -> (usize, usize, usize) {
        match self {
            CurveFamily::ShortWeierstrass => (0, a, b),
            CurveFamily::QuadraticTerm => (a, 0, b),
        }
    }

    /// `x ↦ x³ + A x` or `x ↦ x³ + A x²`, the part of the cubic without `B`.
    pub fn partial_cubic(&self, t: &FieldTables, a: usize) -> Vec<u16> {
        (0..t.q())
            .map(|x| {
                let x2 = t.mul(x, x);
                let x3 = t.mul(x2, x);
                let term = match self {
                    CurveFamily::ShortWeierstrass => t.mul(a, x),
                    CurveFamily::QuadraticTerm => t.mul(a, x2),
                };
                t.add(x3, term) as u16
            })
            .collect()
    }

    pub fn is_nonsingular(&self, t: &FieldTables, a: usize, b: usize) -> bool {
        let (a2, a4, a6) = self.coefficients(a, b);
        cubic_discriminant(t, a2, a4, a6) != 0
    }
}

/// Discriminant of `x³ + a x² + b x + c`:
/// `a²b² - 4b³ - 4a³c - 27c² + 18abc`.
pub fn cubic_discriminant(t: &FieldTables, a: usize, b: usize, c: usize) -> usize {
    let k = |n: i64| t.from_int(n);
    let m = |x: usize, y: usize| t.mul(x, y);
    let a2 = m(a, a);
    let b2 = m(b, b);
    let terms = [
        m(a2, b2),
        m(k(-4), m(b2, b)),
        m(k(-4), m(m(a2, a), c)),
        m(k(-27), m(c, c)),
        m(k(18), m(m(a, b), c)),
    ];
    terms.into_iter().fold(0, |acc, x| t.add(acc, x))
}

/// `#E(F_q)` for `y² = x³ + A x + B`.
pub fn point_count(t: &FieldTables, a: usize, b: usize) -> Result<u64> {
    point_count_in(t, CurveFamily::ShortWeierstrass, a, b)
}

pub fn point_count_in(t: &FieldTables, family: CurveFamily, a: usize, b: usize) -> Result<u64> {
    if t.p() == 2 {
        return Err(Error::InvalidParameter(
            "characteristic 2 is not supported".into(),
        ));
    }
    if !family.is_nonsingular(t, a, b) {
        return Err(Error::SingularCurve);
    }
    let g = family.partial_cubic(t, a);
    let s = character_sum(t, &g, b);
    Ok((t.q() as i64 + 1 + s) as u64)
}

/// `Σ_x χ(g(x) + B)`; the inner loop is two table lookups per `x`.
#[inline]
pub fn character_sum(t: &FieldTables, g: &[u16], b: usize) -> i64 {
    let row = t.add_row(b);
    let chi = t.chi_table();
    g.iter()
        .map(|&v| chi[row[v as usize] as usize] as i64)
        .sum()
}

/// One nonsingular member of a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CurveRecord {
    pub q: u64,
    pub a: usize,
    pub b: usize,
    /// `q + 1 - #E`.
    pub trace: i64,
    pub p_rank: u8,
}

/// Every nonsingular `(A, B)` in index order; small fields only.
pub fn enumerate_curves(t: &FieldTables, family: CurveFamily) -> Result<Vec<CurveRecord>> {
    let q = t.q();
    let mut out = Vec::new();
    for a in 0..q {
        let g = family.partial_cubic(t, a);
        for b in 0..q {
            if !family.is_nonsingular(t, a, b) {
                continue;
            }
            let trace = -character_sum(t, &g, b);
            check_weil(trace, q as u64)?;
            let p_rank = u8::from(trace.rem_euclid(t.p() as i64) != 0);
            out.push(CurveRecord {
                q: q as u64,
                a,
                b,
                trace,
                p_rank,
            });
        }
    }
    Ok(out)
}

pub(crate) fn check_weil(trace: i64, q: u64) -> Result<()> {
    if (trace * trace) as u64 > 4 * q {
        return Err(Error::Internal(format!(
            "trace {trace} violates the Weil bound at q = {q}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_count(t: &FieldTables, family: CurveFamily, a: usize, b: usize) -> u64 {
        let (a2, a4, a6) = family.coefficients(a, b);
        let mut n = 1;
        for x in 0..t.q() {
            let x2 = t.mul(x, x);
            let rhs = [t.mul(x2, x), t.mul(a2, x2), t.mul(a4, x), a6]
                .into_iter()
                .fold(0, |s, v| t.add(s, v));
            n += (0..t.q()).filter(|&y| t.mul(y, y) == rhs).count() as u64;
        }
        n
    }

    #[test]
    fn y2_x3_plus_1_over_f5() {
        let t = FieldTables::new(5, 1).unwrap();
        assert_eq!(point_count(&t, 0, 1).unwrap(), 6);
        assert_eq!(point_count(&t, 0, 0), Err(Error::SingularCurve));
    }

    #[test]
    fn character_sum_matches_naive_count() {
        for (p, h) in [(3, 2), (5, 1), (7, 1)] {
            let t = FieldTables::new(p, h).unwrap();
            let family = CurveFamily::for_prime(p).unwrap();
            for r in enumerate_curves(&t, family).unwrap() {
                assert_eq!(
                    (t.q() as i64 + 1 - r.trace) as u64,
                    naive_count(&t, family, r.a, r.b)
                );
            }
        }
    }

    #[test]
    fn nonsingular_totals() {
        for (p, h) in [(5, 1), (7, 1), (5, 2)] {
            let t = FieldTables::new(p, h).unwrap();
            let q = t.q();
            assert_eq!(
                enumerate_curves(&t, CurveFamily::ShortWeierstrass)
                    .unwrap()
                    .len(),
                q * q - q
            );
        }
        let t = FieldTables::new(3, 2).unwrap();
        assert_eq!(
            enumerate_curves(&t, CurveFamily::QuadraticTerm)
                .unwrap()
                .len(),
            8 * 8
        );
        // the short family in characteristic 3 has no ordinary member
        assert!(enumerate_curves(&t, CurveFamily::ShortWeierstrass)
            .unwrap()
            .iter()
            .all(|r| r.p_rank == 0));
    }
}
