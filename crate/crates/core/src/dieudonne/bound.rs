//! Newton polygons and the maximal-order bound on automorphism groups.

use std::fmt;
use std::str::FromStr;

use crate::arith::{gcd, is_prime};
use crate::error::{Error, Result};

/// One isoclinic part: `m` copies of the minimal group of height `c + d`
/// and slope `d / (c + d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Segment {
    pub c: u32,
    pub d: u32,
    pub m: u32,
}

impl Segment {
    pub fn height(&self) -> u32 {
        self.c + self.d
    }

    /// Compares `d/(c+d)` with `1/2`.
    fn side(&self) -> std::cmp::Ordering {
        self.d.cmp(&self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    segments: Vec<Segment>,
    polarized: bool,
}

impl NewtonPolygon {
    pub fn new(mut segments: Vec<Segment>, polarized: bool) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvalidParameter("empty Newton polygon".into()));
        }
        for s in &segments {
            if s.m == 0 || s.height() == 0 {
                return Err(Error::InvalidParameter(format!(
                    "degenerate segment {}:{}:{}",
                    s.c, s.d, s.m
                )));
            }
            if gcd(s.c as u64, s.d as u64) != 1 {
                return Err(Error::InvalidParameter(format!(
                    "segment {}:{} is not reduced",
                    s.c, s.d
                )));
            }
        }
        segments.sort();
        if polarized {
            let mut mirrored: Vec<Segment> = segments
                .iter()
                .map(|s| Segment {
                    c: s.d,
                    d: s.c,
                    m: s.m,
                })
                .collect();
            mirrored.sort();
            let merged = |v: &[Segment]| {
                let mut out: Vec<Segment> = Vec::new();
                for s in v {
                    match out.last_mut() {
                        Some(l) if (l.c, l.d) == (s.c, s.d) => l.m += s.m,
                        _ => out.push(*s),
                    }
                }
                out
            };
            if merged(&segments) != merged(&mirrored) {
                return Err(Error::InvalidParameter(
                    "polarized polygon is not symmetric".into(),
                ));
            }
        }
        Ok(NewtonPolygon {
            segments,
            polarized,
        })
    }

    /// Polarized exactly when the slopes are symmetric.
    pub fn auto(segments: Vec<Segment>) -> Result<Self> {
        let sym = NewtonPolygon::new(segments.clone(), true);
        match sym {
            Ok(p) => Ok(p),
            Err(_) => NewtonPolygon::new(segments, false),
        }
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn polarized(&self) -> bool {
        self.polarized
    }

    pub fn height(&self) -> u32 {
        self.segments.iter().map(|s| s.m * s.height()).sum()
    }

    /// Parses `c:d:m,c:d:m,...` without deciding polarization.
    pub fn parse_segments(s: &str) -> Result<Vec<Segment>> {
        s.split(',')
            .map(|part| {
                let nums: Vec<u32> = part
                    .trim()
                    .split(':')
                    .map(|x| x.trim().parse::<u32>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::InvalidParameter(format!("segment {part:?}: {e}")))?;
                match nums[..] {
                    [c, d, m] => Ok(Segment { c, d, m }),
                    [c, d] => Ok(Segment { c, d, m: 1 }),
                    _ => Err(Error::InvalidParameter(format!(
                        "segment {part:?} is not c:d:m"
                    ))),
                }
            })
            .collect()
    }
}

impl FromStr for NewtonPolygon {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NewtonPolygon::auto(NewtonPolygon::parse_segments(s)?)
    }
}

impl fmt::Display for NewtonPolygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .segments
            .iter()
            .map(|s| format!("{}:{}:{}", s.c, s.d, s.m))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

fn overflow() -> Error {
    Error::InvalidParameter("bound overflows u128".into())
}

/// `#GL_m(O/p^n) = #GL_m(F_{p^h}) · p^(h m² (h n - 1))` for the maximal order
/// `O` of the division algebra of invariant `d/h`.
pub fn gl_maximal_order(p: u64, h: u32, m: u32, n: u32) -> Result<u128> {
    let q = (p as u128).checked_pow(h).ok_or_else(overflow)?;
    let qm = q.checked_pow(m).ok_or_else(overflow)?;
    let mut out: u128 = 1;
    for i in 0..m {
        out = out.checked_mul(qm - q.pow(i)).ok_or_else(overflow)?;
    }
    let exp = h * m * m * (h * n - 1);
    out.checked_mul((p as u128).checked_pow(exp).ok_or_else(overflow)?)
        .ok_or_else(overflow)
}

/// Product over segments of `#GL_m(O/p^n)`. For a polarized polygon the
/// polarization pairs slope `s` with `1 - s`, so only slopes `<= 1/2` count.
pub fn automorphism_bound(nu: &NewtonPolygon, n: u32, p: u64) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be >= 1".into()));
    }
    let mut out: u128 = 1;
    for s in nu.segments() {
        if nu.polarized() && s.side() == std::cmp::Ordering::Greater {
            continue;
        }
        out = out
            .checked_mul(gl_maximal_order(p, s.height(), s.m, n)?)
            .ok_or_else(overflow)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_values() {
        let nu: NewtonPolygon = "2:1:1".parse().unwrap();
        assert!(!nu.polarized());
        assert_eq!(automorphism_bound(&nu, 1, 2).unwrap(), 448);
        let ord: NewtonPolygon = "1:0:1,0:1:1".parse().unwrap();
        assert!(ord.polarized());
        assert_eq!(automorphism_bound(&ord, 1, 5).unwrap(), 4);
        assert_eq!(automorphism_bound(&ord, 2, 5).unwrap(), 20);
    }

    #[test]
    fn rejects_bad_polygons() {
        assert!("2:2:1".parse::<NewtonPolygon>().is_err());
        assert!("2:1:0".parse::<NewtonPolygon>().is_err());
        assert!(NewtonPolygon::new(vec![Segment { c: 2, d: 1, m: 1 }], true).is_err());
        assert!("x".parse::<NewtonPolygon>().is_err());
    }

    #[test]
    fn gl_over_field() {
        assert_eq!(gl_maximal_order(3, 1, 2, 1).unwrap(), 48);
        assert_eq!(gl_maximal_order(2, 1, 3, 1).unwrap(), 168);
    }
}
