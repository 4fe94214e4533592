//! Forms of the supersingular rank-two BT₁ over fields containing `F_{p²}`.
//!
//! A form is presented by a generator `x` with `F x = y` and `V x = λ y`.
//! Changing the generator multiplies `λ` by an element of `τ(K^×)`, where
//! `τ(a) = σ(a) / σ⁻¹(a)`, so the form is classified by `λ ∈ K^× / τ(K^×)`.

use std::io::Write;
use std::sync::Arc;

use crate::arith::gcd;
use crate::dieudonne::{minimal_module, pi0_at, polarized_double, DieudonneModule, RingMat};
use crate::error::{Error, Result};
use crate::group::twist::conjugacy_descriptors;
use crate::scalar::{FieldTables, WittElem, WittRing};

/// A field `K = F_{p^h}` with `h` even.
#[derive(Clone, Debug)]
pub struct FormField {
    tables: Arc<FieldTables>,
}

impl FormField {
    pub fn new(p: u64, h: usize) -> Result<Self> {
        if h == 0 || h % 2 == 1 {
            return Err(Error::InvalidParameter(format!(
                "F_{{{p}^2}} is not contained in F_{{{p}^{h}}}"
            )));
        }
        Ok(FormField {
            tables: Arc::new(FieldTables::new(p, h)?),
        })
    }

    pub fn tables(&self) -> &FieldTables {
        &self.tables
    }

    pub fn p(&self) -> u64 {
        self.tables.p()
    }

    pub fn h(&self) -> usize {
        self.tables.h()
    }

    fn sigma_inv(&self, a: usize) -> usize {
        self.tables.pow(a, self.p().pow(self.h() as u32 - 1))
    }

    /// `σ(a) / σ⁻¹(a)`.
    pub fn tau(&self, a: usize) -> Result<usize> {
        if a == 0 {
            return Err(Error::NotInvertible);
        }
        let t = &self.tables;
        Ok(t.mul(t.frobenius(a), t.inv(self.sigma_inv(a))?))
    }

    /// `[K^× : τ(K^×)]`, from the exponent of `τ` on the cyclic group.
    pub fn tau_image_index(&self) -> u64 {
        let q1 = self.tables.q() as u64 - 1;
        // τ(g) = g^(p - p^(h-1))
        let e = (self.p() as i128 - self.p().pow(self.h() as u32 - 1) as i128)
            .rem_euclid(q1 as i128) as u64;
        gcd(e, q1)
    }

    /// Index by listing the image.
    pub fn tau_image_index_exhaustive(&self) -> Result<u64> {
        let q = self.tables.q();
        let mut seen = vec![false; q];
        for a in 1..q {
            seen[self.tau(a)?] = true;
        }
        let image = seen.iter().filter(|&&s| s).count() as u64;
        Ok((q as u64 - 1) / image)
    }

    /// Coset of `a` in `K^× / τ(K^×)`, as a discrete-log residue.
    pub fn coset_label(&self, a: usize) -> Result<u64> {
        let k = self.tables.log(a).ok_or(Error::NotInvertible)?;
        Ok(k as u64 % self.tau_image_index())
    }
}

/// Rank-two module with basis `x, y`, `F x = y`, `V x = λ y`, `F y = V y = 0`.
#[derive(Clone, Debug)]
pub struct CyclicGenModule {
    field: FormField,
    lambda: usize,
}

impl CyclicGenModule {
    pub fn new(field: FormField, lambda: usize) -> Result<Self> {
        if lambda == 0 || lambda >= field.tables.q() {
            return Err(Error::InvalidParameter(
                "λ must be a nonzero field element".into(),
            ));
        }
        Ok(CyclicGenModule { field, lambda })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    /// `F (u x + w y) = σ(u) y`.
    fn apply_f(&self, v: (usize, usize)) -> (usize, usize) {
        (0, self.field.tables.frobenius(v.0))
    }

    /// `V (u x + w y) = λ σ⁻¹(u) y`.
    fn apply_v(&self, v: (usize, usize)) -> (usize, usize) {
        (
            0,
            self.field
                .tables
                .mul(self.lambda, self.field.sigma_inv(v.0)),
        )
    }

    /// `λ` with respect to the generator `b x + c y`.
    pub fn lambda_for(&self, b: usize, c: usize) -> Result<usize> {
        if b == 0 {
            return Err(Error::InvalidParameter(
                "b x + c y is not a generator when b = 0".into(),
            ));
        }
        let t = &self.field.tables;
        let x = (b, c);
        let fy = self.apply_f(x);
        let vx = self.apply_v(x);
        Ok(t.mul(vx.1, t.inv(fy.1)?))
    }

    pub fn form_class(&self, b: usize, c: usize) -> Result<u64> {
        self.field.coset_label(self.lambda_for(b, c)?)
    }

    /// The same module as a Dieudonné module over `W_1(K)`.
    pub fn to_module(&self) -> Result<DieudonneModule> {
        let (p, h) = (self.field.p(), self.field.h());
        let ring = WittRing::field(p, h)?;
        let coords = |mut i: usize| {
            let mut v = vec![0u64; h];
            for c in v.iter_mut() {
                *c = (i % p as usize) as u64;
                i /= p as usize;
            }
            WittElem(v)
        };
        let zero = ring.zero();
        let one = ring.one();
        let f = RingMat::from_entries(2, 2, h, &[zero.clone(), zero.clone(), one, zero.clone()]);
        let v = RingMat::from_entries(
            2,
            2,
            h,
            &[zero.clone(), zero.clone(), coords(self.lambda), zero],
        );
        DieudonneModule::new(ring, f, v, None)
    }
}

/// Norm-one elements of `F_{p²}^×` counted exhaustively, cross-checked
/// against the component group of the polarized supersingular module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedCount {
    pub count: u64,
    pub pi0_order: usize,
    pub cyclic: bool,
}

pub fn polarized_form_count(p: u64) -> Result<PolarizedCount> {
    let t = FieldTables::new(p, 2)?;
    let norm_one: Vec<usize> = (1..t.q())
        .filter(|&a| t.mul(a, t.frobenius(a)) == 1)
        .collect();
    let count = norm_one.len() as u64;
    let cyclic = norm_one
        .iter()
        .any(|&a| (1..count).all(|k| t.pow(a, k) != 1));
    let pi0 = pi0_at(&polarized_double(p, 1, 1, 1)?, 1)?;
    if pi0.order() as u64 != count {
        return Err(Error::Internal(format!(
            "norm-one count {count} disagrees with |π₀| = {}",
            pi0.order()
        )));
    }
    Ok(PolarizedCount {
        count,
        pi0_order: pi0.order(),
        cyclic,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormRow {
    pub p: u64,
    pub field_degree: usize,
    pub form_label: String,
    pub polarized: bool,
}

/// All forms over `F_{p^degree}`: unpolarized ones labelled by
/// `K^× / τ(K^×)`, polarized ones by the norm-one group, each cross-checked
/// against the conjugacy classes of the computed component group.
pub fn form_census(p: u64, degree: usize) -> Result<Vec<FormRow>> {
    let field = FormField::new(p, degree)?;
    let index = field.tau_image_index();
    if field.tau_image_index_exhaustive()? != index {
        return Err(Error::Internal("τ index disagrees with enumeration".into()));
    }
    let mut rows = Vec::new();
    let mut labels = std::collections::BTreeSet::new();
    for lambda in 1..field.tables.q() {
        labels.insert(CyclicGenModule::new(field.clone(), lambda)?.form_class(1, 0)?);
    }
    let classes = conjugacy_descriptors(
        &pi0_at(&minimal_module(p, 1, 1, 1)?.without_pairing(), degree / 2)?.table,
    )
    .len();
    if labels.len() != classes {
        return Err(Error::Internal(format!(
            "{} τ-cosets but {classes} classes of π₀",
            labels.len()
        )));
    }
    for l in labels {
        rows.push(FormRow {
            p,
            field_degree: degree,
            form_label: l.to_string(),
            polarized: false,
        });
    }
    let t = field.tables();
    let q1 = t.q() as u64 - 1;
    // norm-one elements of F_{p²} inside K: exponents multiple of (q-1)/(p+1)
    let step = q1 / (p + 1);
    let pol_classes =
        conjugacy_descriptors(&pi0_at(&polarized_double(p, 1, 1, 1)?, degree / 2)?.table).len();
    if pol_classes as u64 != p + 1 {
        return Err(Error::Internal(format!(
            "{pol_classes} polarized classes, expected {}",
            p + 1
        )));
    }
    for k in 0..=p {
        let a = t.exp(k * step);
        debug_assert_eq!(t.pow(a, p + 1), 1);
        rows.push(FormRow {
            p,
            field_degree: degree,
            form_label: (k * step).to_string(),
            polarized: true,
        });
    }
    Ok(rows)
}

pub fn write_census_csv<W: Write>(rows: &[FormRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "p,field_degree,form_label,polarized")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{}",
            r.p,
            r.field_degree,
            r.form_label,
            u8::from(r.polarized)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tau_kernel_is_fp2() {
        for (p, h) in [(2, 2), (3, 2), (2, 4), (3, 4)] {
            let k = FormField::new(p, h).unwrap();
            let t = k.tables();
            let q = t.q() as u64;
            let kernel: Vec<usize> = (1..t.q()).filter(|&a| k.tau(a).unwrap() == 1).collect();
            assert_eq!(kernel.len() as u64, p * p - 1);
            // F_{p²} inside K: exponents divisible by (q-1)/(p²-1)
            let step = (q - 1) / (p * p - 1);
            assert!(kernel
                .iter()
                .all(|&a| (t.log(a).unwrap() as u64).is_multiple_of(step)));
            assert_eq!(k.tau_image_index(), p * p - 1);
            assert_eq!(k.tau_image_index_exhaustive().unwrap(), p * p - 1);
        }
    }

    #[test]
    fn odd_degree_rejected() {
        assert!(FormField::new(3, 3).is_err());
    }

    #[test]
    fn module_is_bt1() {
        let k = FormField::new(3, 2).unwrap();
        for lambda in 1..9 {
            let m = CyclicGenModule::new(k.clone(), lambda)
                .unwrap()
                .to_module()
                .unwrap();
            assert!(m.bt1_check().unwrap());
        }
    }

    #[test]
    fn census_sizes() {
        let rows = form_census(3, 2).unwrap();
        assert_eq!(rows.iter().filter(|r| !r.polarized).count(), 8);
        assert_eq!(rows.iter().filter(|r| r.polarized).count(), 4);
        let c = polarized_form_count(2).unwrap();
        assert_eq!((c.count, c.pi0_order), (3, 3));
    }
}
