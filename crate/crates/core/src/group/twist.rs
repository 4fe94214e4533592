//! Forms over finite fields as conjugacy classes of a finite group.

use std::io::Write;

use num_rational::Ratio;

use crate::arith::{ext_gcd, gcd};
use crate::error::{guard, Error, Result};
use crate::group::table::FiniteGroupTable;

/// One form: a class representative `α` with its centralizer order and the
/// predicted frequency `1/|Z(α)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistDescriptor {
    pub rep: usize,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub predicted_frequency: Ratio<u64>,
    /// The identity class, i.e. the split form.
    pub distinguished: bool,
}

/// Descriptors of all conjugacy classes, ordered by size then least member.
pub fn conjugacy_descriptors(g: &FiniteGroupTable) -> Vec<TwistDescriptor> {
    g.conjugacy_classes()
        .into_iter()
        .map(|c| {
            let z = g.order() / c.size();
            TwistDescriptor {
                rep: c.rep(),
                class_size: c.size(),
                centralizer_order: z,
                predicted_frequency: Ratio::new(1, z as u64),
                distinguished: c.rep() == g.identity(),
            }
        })
        .collect()
}

/// Forms over an extension of degree `m`: classes of elements with `α^m = e`.
pub fn twists_over(g: &FiniteGroupTable, m: u64) -> Result<Vec<TwistDescriptor>> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "extension degree must be >= 1".into(),
        ));
    }
    Ok(conjugacy_descriptors(g)
        .into_iter()
        .filter(|d| g.pow(d.rep, m) == g.identity())
        .collect())
}

/// The class of a twist after extending scalars by degree `r`.
pub fn base_change(g: &FiniteGroupTable, alpha: usize, r: u64) -> Result<usize> {
    if r == 0 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    Ok(g.pow(alpha, r))
}

/// Order of the discrete automorphism group of the `α`-twist: `|Z(α)|`.
pub fn twist_aut_order(g: &FiniteGroupTable, alpha: usize) -> usize {
    g.centralizer(alpha).len()
}

/// `⊕ Z/m_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianPresentation {
    pub moduli: Vec<u64>,
}

impl AbelianPresentation {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidParameter("moduli must be >= 1".into()));
        }
        Ok(AbelianPresentation { moduli })
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().product()
    }

    pub fn scale(&self, k: i64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| ((k.rem_euclid(m as i64) as u128 * x as u128) % m as u128) as u64)
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), m)| (x + y) % m)
            .collect()
    }

    /// Every element, first coordinate slowest.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..m).map(move |x| {
                        let mut v = prefix.clone();
                        v.push(x);
                        v
                    })
                })
                .collect();
        }
        out
    }
}

/// Finds `b, c` with `r c + a = s b` when `gcd(r, s) = 1`: with `s v - r u = 1`
/// take `b = v a` and `c = u a`.
pub fn merge_twists_coprime(
    group: &AbelianPresentation,
    a: &[u64],
    r: u64,
    s: u64,
) -> Result<(Vec<u64>, Vec<u64>)> {
    if gcd(r, s) != 1 {
        return Err(Error::NotCoprime(r, s));
    }
    if a.len() != group.moduli.len() {
        return Err(Error::InvalidParameter(
            "element has the wrong number of coordinates".into(),
        ));
    }
    // s x + r y = 1, so v = x and u = -y
    let (_, x, y) = ext_gcd(s as i64, r as i64);
    let (v, u) = (x, -y);
    let b = group.scale(v, a);
    let c = group.scale(u, a);
    let lhs = group.add(&group.scale(r as i64, &c), a);
    let rhs = group.scale(s as i64, &b);
    if lhs != rhs {
        return Err(Error::Internal("r c + a = s b fails".into()));
    }
    Ok((b, c))
}

/// Class descriptors with frequencies computed inside `restrict_to` when given.
pub fn frequency_table(
    g: &FiniteGroupTable,
    restrict_to: Option<&[usize]>,
) -> Result<Vec<TwistDescriptor>> {
    let descriptors = match restrict_to {
        None => conjugacy_descriptors(g),
        Some(sub) => {
            let h = g.subgroup(sub)?;
            let mut sorted = sub.to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            conjugacy_descriptors(&h)
                .into_iter()
                .map(|d| TwistDescriptor {
                    rep: sorted[d.rep],
                    ..d
                })
                .collect()
        }
    };
    let total: usize = descriptors.iter().map(|d| d.class_size).sum();
    let mass: Ratio<u64> = descriptors
        .iter()
        .map(|d| Ratio::new(d.class_size as u64, total as u64))
        .sum();
    if mass != Ratio::from_integer(1) {
        return Err(Error::Internal(
            "class sizes do not sum to the group order".into(),
        ));
    }
    Ok(descriptors)
}

/// Independent count of `H¹(Z/m, Γ)` with trivial action: homomorphisms
/// `Z/m → Γ` up to conjugation, via canonical orbit minima.
pub fn h1_cyclic_oracle(g: &FiniteGroupTable, m: u64) -> Result<usize> {
    guard("oracle group order", g.order() as u128, 2000)?;
    guard("oracle degree", m as u128, 12)?;
    if m == 0 {
        return Err(Error::InvalidParameter("degree must be >= 1".into()));
    }
    let mut canon = std::collections::BTreeSet::new();
    for gamma in 0..g.order() {
        // the cocycle is determined by the image of the generator
        let mut x = g.identity();
        for _ in 0..m {
            x = g.mul(x, gamma);
        }
        if x != g.identity() {
            continue;
        }
        let least = (0..g.order())
            .map(|y| g.mul(g.mul(y, gamma), g.inv(y)))
            .min()
            .expect("nonempty");
        canon.insert(least);
    }
    Ok(canon.len())
}

/// CSV with columns `class_rep, class_size, centralizer_order, predicted_frequency`.
pub fn write_frequency_csv<W: Write>(
    g: &FiniteGroupTable,
    rows: &[TwistDescriptor],
    mut out: W,
) -> std::io::Result<()> {
    writeln!(
        out,
        "class_rep,class_size,centralizer_order,predicted_frequency"
    )?;
    for d in rows {
        writeln!(
            out,
            "{},{},{},{}/{}",
            csv_field(g.label(d.rep)),
            d.class_size,
            d.centralizer_order,
            d.predicted_frequency.numer(),
            d.predicted_frequency.denom()
        )?;
    }
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_twists() {
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(twists_over(&s3, 2).unwrap().len(), 2);
        assert_eq!(twists_over(&s3, 3).unwrap().len(), 2);
        assert_eq!(twists_over(&s3, 1).unwrap().len(), 1);
        assert!(twists_over(&s3, 1).unwrap()[0].distinguished);
        let cents: Vec<usize> = conjugacy_descriptors(&s3)
            .iter()
            .map(|d| d.centralizer_order)
            .collect();
        assert_eq!(cents, vec![6, 3, 2]);
    }

    #[test]
    fn base_change_in_z6() {
        let z6 = FiniteGroupTable::cyclic(6).unwrap();
        let two = z6.find_label("2").unwrap();
        assert_eq!(z6.label(base_change(&z6, two, 5).unwrap()), "4");
        assert_eq!(base_change(&z6, two, 3).unwrap(), z6.identity());
    }

    #[test]
    fn merge_example_z4() {
        let a = AbelianPresentation::new(vec![4]).unwrap();
        let (b, c) = merge_twists_coprime(&a, &[1], 3, 2).unwrap();
        assert_eq!(a.add(&a.scale(3, &c), &[1]), a.scale(2, &b));
        assert_eq!(
            merge_twists_coprime(&a, &[1], 2, 4),
            Err(Error::NotCoprime(2, 4))
        );
        assert_eq!(
            merge_twists_coprime(&a, &[0], 3, 2).unwrap(),
            (vec![0], vec![0])
        );
    }

    #[test]
    fn csv_uses_exact_fractions() {
        let g = FiniteGroupTable::general_linear(1, 5, 1).unwrap();
        let rows = frequency_table(&g, None).unwrap();
        let mut buf = Vec::new();
        write_frequency_csv(&g, &rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().skip(1).all(|l| l.ends_with(",1,4,1/4")));
    }
}
