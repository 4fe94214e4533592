//! Automorphism groups, component groups and lift images.
//!
//! At truncation level one, `Aut = E^×` for the endomorphism algebra `E`
//! with radical `J`. The kernel `1 + J` of `E^× → (E/J)^×` is a normal
//! `p`-group, so the component group is the image in `(E/J)^×` modulo its
//! largest normal `p`-subgroup. With a pairing, `Aut` is the unitary group
//! `{A : A* A = 1}`, whose image in `(E/J)^×` is found by lifting through
//! the filtration `J ⊃ J² ⊃ … ⊃ 0` one linear step at a time.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use crate::dieudonne::algebra::{decode, encode, FpAlgebra, Subspace};
use crate::dieudonne::endo::{
    endomorphism_algebra, involution_matrix, preserves_pairing, EndoAlgebra, MatrixAlgebra,
};
use crate::dieudonne::matrix::RingMat;
use crate::dieudonne::module::{minimal_module, polarized_double, DieudonneModule};
use crate::error::{guard, Error, Result};
use crate::group::table::{FiniteGroupTable, TABLE_LIMIT};
use crate::linalg::{nullspace_fp, solve_fp, Mat};
use crate::scalar::WittRing;

/// Largest automorphism group that is enumerated explicitly.
pub const AUT_LIMIT: u128 = 1 << 24;
/// Largest quotient algebra `E/J` that is enumerated.
const QUOTIENT_LIMIT: u128 = 1 << 20;
/// Cap on the extension degree searched by [`splitting_degree`].
pub const SPLITTING_CAP: usize = 12;

/// An explicit group of invertible matrices.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    ring: Arc<WittRing>,
    rank: usize,
    elements: Vec<RingMat>,
}

impl MatrixGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[RingMat] {
        &self.elements
    }

    pub fn ring(&self) -> &Arc<WittRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Cayley table, elements indexed in increasing coordinate order.
    pub fn to_table(&self) -> Result<FiniteGroupTable> {
        guard(
            "group table order",
            self.elements.len() as u128,
            TABLE_LIMIT as u128,
        )?;
        let mut els = self.elements.clone();
        els.sort();
        let ring = Arc::clone(&self.ring);
        FiniteGroupTable::from_elements(&els, |a, b| a.mul(b, &ring), matrix_label)
    }
}

fn matrix_label(m: &RingMat) -> String {
    m.data
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn coords_label(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Level-one unit structure of an endomorphism algebra.
struct UnitStructure {
    endo: EndoAlgebra,
    p: u64,
    alg: FpAlgebra,
    radical: Subspace,
    /// `filtration[k] = J^(k+1)`, ending with the zero space.
    filtration: Vec<Subspace>,
    quotient: FpAlgebra,
    cols: Vec<usize>,
    star: Option<Mat>,
}

impl UnitStructure {
    fn new(m: &DieudonneModule) -> Result<Self> {
        if m.n() != 1 {
            return Err(Error::InvalidParameter(
                "unit structure needs truncation level one".into(),
            ));
        }
        let endo = endomorphism_algebra(m, true)?;
        let alg = endo.matrix_algebra().expect("level one").algebra().clone();
        Self::from_algebra(endo, alg)
    }

    fn from_algebra(endo: EndoAlgebra, alg: FpAlgebra) -> Result<Self> {
        let radical = alg.radical()?;
        let filtration = alg.radical_filtration(&radical);
        let (quotient, cols) = alg.quotient(&radical);
        let star = endo.involution().cloned();
        Ok(UnitStructure {
            p: alg.p,
            endo,
            alg,
            radical,
            filtration,
            quotient,
            cols,
            star,
        })
    }

    fn lift(&self, x: &[u64]) -> Vec<u64> {
        let mut v = vec![0u64; self.alg.dim];
        for (&c, &xi) in self.cols.iter().zip(x) {
            v[c] = xi;
        }
        v
    }

    fn quotient_size(&self) -> u128 {
        (self.p as u128)
            .checked_pow(self.quotient.dim as u32)
            .unwrap_or(u128::MAX)
    }

    fn quotient_units(&self) -> Result<Vec<Vec<u64>>> {
        guard(
            "quotient algebra size",
            self.quotient_size(),
            QUOTIENT_LIMIT,
        )?;
        Ok(self
            .quotient
            .elements()?
            .into_iter()
            .filter(|x| self.quotient.is_unit(x))
            .collect())
    }

    fn star(&self, a: &[u64]) -> Vec<u64> {
        self.star
            .as_ref()
            .expect("pairing present")
            .mul_vec(a, self.p)
    }

    /// `A* A - 1`.
    fn defect(&self, a: &[u64]) -> Vec<u64> {
        self.alg.sub(&self.alg.mul(&self.star(a), a), &self.alg.one)
    }

    /// Quotient elements whose lift is unitary modulo `J`.
    fn unitary_candidates(&self) -> Result<Vec<Vec<u64>>> {
        guard(
            "quotient algebra size",
            self.quotient_size(),
            QUOTIENT_LIMIT,
        )?;
        Ok(self
            .quotient
            .elements()?
            .into_iter()
            .filter(|x| self.radical.contains(&self.defect(&self.lift(x)), self.p))
            .collect())
    }

    /// Walks the lifting tree below `a`, where `A* A - 1 ∈ J^(k+1)`.
    fn descend(&self, a: Vec<u64>, k: usize, mode: Mode, out: &mut Vec<Vec<u64>>) -> Result<u128> {
        let here = &self.filtration[k];
        if here.dim() == 0 {
            if mode == Mode::Collect {
                out.push(a);
            }
            return Ok(1);
        }
        let next = &self.filtration[k + 1];
        let p = self.p;
        // complement of J^(k+2) inside J^(k+1)
        let mut basis = next.clone();
        let mut ys = Vec::new();
        for r in &here.rows {
            if !basis.contains(r, p) {
                ys.push(r.clone());
                let mut rows = basis.rows.clone();
                rows.push(r.clone());
                basis = Subspace::span(self.alg.dim, &rows, p);
            }
        }
        let w = next.annihilator(p);
        let a_star = self.star(&a);
        let mut system = Mat::zeros(w.rows, ys.len());
        for (l, y) in ys.iter().enumerate() {
            let term = self
                .alg
                .add(&self.alg.mul(&a_star, y), &self.alg.mul(&self.star(y), &a));
            for (i, x) in w.mul_vec(&term, p).into_iter().enumerate() {
                system.set(i, l, x);
            }
        }
        let rhs: Vec<u64> = w
            .mul_vec(&self.defect(&a), p)
            .into_iter()
            .map(|x| (p - x) % p)
            .collect();
        let Some(part) = solve_fp(&system, &rhs, p) else {
            return Ok(0);
        };
        let (kernel, _) = nullspace_fp(&system, p);
        if mode == Mode::Count && next.dim() == 0 {
            return Ok((p as u128).pow(kernel.len() as u32));
        }
        let combos = (p as u128)
            .checked_pow(kernel.len() as u32)
            .unwrap_or(u128::MAX);
        guard("lifting branch", combos, AUT_LIMIT)?;
        let mut total = 0u128;
        for code in 0..combos as u64 {
            let t = decode(code, p, kernel.len());
            let mut s = part.clone();
            for (ti, kv) in t.iter().zip(&kernel) {
                for (si, &kx) in s.iter_mut().zip(kv) {
                    *si = (*si + ti * kx) % p;
                }
            }
            let mut child = a.clone();
            for (sl, y) in s.iter().zip(&ys) {
                for (c, &yx) in child.iter_mut().zip(y) {
                    *c = (*c + sl * yx) % p;
                }
            }
            total += self.descend(child, k + 1, mode, out)?;
            if mode == Mode::Exists && total > 0 {
                return Ok(1);
            }
            if total > AUT_LIMIT && mode == Mode::Collect {
                return Err(Error::SizeGuard {
                    what: "automorphism group",
                    size: total,
                    limit: AUT_LIMIT,
                });
            }
        }
        Ok(total)
    }

    fn polarized(&self) -> bool {
        self.star.is_some()
    }

    /// Image of `Aut` in `(E/J)^×`, as quotient coordinates.
    fn aut_image(&self) -> Result<Vec<Vec<u64>>> {
        if !self.polarized() {
            return self.quotient_units();
        }
        let mut image = Vec::new();
        let mut scratch = Vec::new();
        for x in self.unitary_candidates()? {
            if self.descend(self.lift(&x), 0, Mode::Exists, &mut scratch)? > 0 {
                image.push(x);
            }
        }
        Ok(image)
    }

    fn aut_order(&self) -> Result<u128> {
        if !self.polarized() {
            let units = self.quotient_units()?.len() as u128;
            let kernel = (self.p as u128)
                .checked_pow(self.radical.dim() as u32)
                .ok_or_else(|| Error::InvalidParameter("order overflows".into()))?;
            return units
                .checked_mul(kernel)
                .ok_or_else(|| Error::InvalidParameter("order overflows".into()));
        }
        let mut total = 0u128;
        let mut scratch = Vec::new();
        for x in self.unitary_candidates()? {
            total += self.descend(self.lift(&x), 0, Mode::Count, &mut scratch)?;
        }
        Ok(total)
    }

    fn aut_elements(&self) -> Result<Vec<Vec<u64>>> {
        let order = self.aut_order()?;
        guard("automorphism group", order, AUT_LIMIT)?;
        let mut out = Vec::with_capacity(order as usize);
        if self.polarized() {
            for x in self.unitary_candidates()? {
                self.descend(self.lift(&x), 0, Mode::Collect, &mut out)?;
            }
        } else {
            let jsize = (self.p as u128).pow(self.radical.dim() as u32) as u64;
            for x in self.quotient_units()? {
                let base = self.lift(&x);
                for code in 0..jsize {
                    let j = self
                        .radical
                        .combine(&decode(code, self.p, self.radical.dim()), self.p);
                    out.push(self.alg.add(&base, &j));
                }
            }
        }
        Ok(out)
    }

    fn matrix_algebra(&self) -> &MatrixAlgebra {
        self.endo.matrix_algebra().expect("level one")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    Exists,
    Count,
    Collect,
}

/// The component group of the automorphism group at a fixed base field.
#[derive(Clone, Debug)]
pub struct ComponentGroup {
    /// `π₀`, the image of `Aut` in `(E/J)^×` modulo its largest normal `p`-subgroup.
    pub table: FiniteGroupTable,
    /// The image of `Aut` in `(E/J)^×`.
    pub image: FiniteGroupTable,
    /// For each element of `image`, its class in `table`.
    pub coset_of: Vec<usize>,
    /// Extension degree over the module's base field.
    pub degree: usize,
    index: HashMap<u64, usize>,
    endo: MatrixAlgebra,
    radical: Subspace,
    cols: Vec<usize>,
}

impl ComponentGroup {
    pub fn order(&self) -> usize {
        self.table.order()
    }

    /// Class in `π₀` of an automorphism given by its matrix at level one.
    pub fn class_of_matrix(&self, a: &RingMat) -> Result<usize> {
        let coords = self
            .endo
            .coords(a)
            .ok_or_else(|| Error::InvalidParameter("matrix is not an endomorphism".into()))?;
        let p = self.endo.field().p();
        let r = self.radical.reduce(&coords, p);
        let q: Vec<u64> = self.cols.iter().map(|&c| r[c]).collect();
        let idx = self.index.get(&encode(&q, p)).ok_or_else(|| {
            Error::InvalidParameter("matrix is not in the automorphism image".into())
        })?;
        Ok(self.coset_of[*idx])
    }
}

/// Component group after extending scalars by degree `degree`.
pub fn pi0_at(m: &DieudonneModule, degree: usize) -> Result<ComponentGroup> {
    if m.n() != 1 {
        return Err(Error::InvalidParameter(
            "component groups are computed at truncation level one".into(),
        ));
    }
    let base = m.base_change_degree(degree)?;
    let us = UnitStructure::new(&base)?;
    let image = us.aut_image()?;
    guard("component image", image.len() as u128, TABLE_LIMIT as u128)?;
    let p = us.p;
    let table =
        FiniteGroupTable::from_elements(&image, |a, b| us.quotient.mul(a, b), |a| coords_label(a))?;
    let op = table.largest_normal_p_subgroup(p);
    let (quot, coset_of) = table.quotient(&op)?;
    let index = image
        .iter()
        .enumerate()
        .map(|(i, x)| (encode(x, p), i))
        .collect();
    Ok(ComponentGroup {
        table: quot,
        image: table,
        coset_of,
        degree,
        index,
        endo: us.matrix_algebra().clone(),
        radical: us.radical.clone(),
        cols: us.cols.clone(),
    })
}

/// Smallest `m <= 12` at which `|π₀|` agrees at degrees `m`, `2m` and `4m`.
pub fn splitting_degree(m: &DieudonneModule) -> Result<usize> {
    let mut cache: HashMap<usize, usize> = HashMap::new();
    let mut order = |d: usize| -> Result<usize> {
        if let Some(&o) = cache.get(&d) {
            return Ok(o);
        }
        let o = pi0_at(m, d)?.order();
        cache.insert(d, o);
        Ok(o)
    };
    for d in 1..=SPLITTING_CAP {
        let a = order(d)?;
        if a == order(2 * d)? && a == order(4 * d)? {
            return Ok(d);
        }
    }
    Err(Error::NoStabilization(SPLITTING_CAP))
}

/// The component group at the splitting degree.
pub fn pi0(m: &DieudonneModule) -> Result<ComponentGroup> {
    let d = splitting_degree(m)?;
    pi0_at(m, d)
}

/// `|Aut|` after extending scalars by `degree`; respects the pairing when present.
pub fn automorphism_order(m: &DieudonneModule, degree: usize) -> Result<u128> {
    let base = m.base_change_degree(degree)?;
    if base.n() == 1 {
        return UnitStructure::new(&base)?.aut_order();
    }
    let endo = endomorphism_algebra(&base, false)?;
    if base.pairing().is_some() {
        return Ok(level_n_units(&endo, AUT_LIMIT)?.len() as u128);
    }
    units_count_level_n(&endo)
}

/// Units of a level-`n` endomorphism module: `|ker(mod p)| · |I^×|` where `I`
/// is the reduction mod `p`.
fn units_count_level_n(endo: &EndoAlgebra) -> Result<u128> {
    let red = endo.reduction()?;
    let p = endo.module().p() as u128;
    let kernel_exp = endo.log_size() - red.dim() as u32;
    let us = UnitStructure::from_algebra(endo.clone(), red.algebra().clone())?;
    let units = us.aut_order()?;
    units
        .checked_mul(p.pow(kernel_exp))
        .ok_or_else(|| Error::InvalidParameter("order overflows".into()))
}

fn level_n_units(endo: &EndoAlgebra, limit: u128) -> Result<Vec<RingMat>> {
    let m = endo.module();
    let ring = m.ring();
    let field = WittRing::field(m.p(), m.h())?;
    Ok(endo
        .elements(limit)?
        .into_iter()
        .filter(|a| a.truncate(1, ring).inverse(&field).is_some())
        .filter(|a| preserves_pairing(m, a))
        .collect())
}

/// `Aut` as an explicit matrix group; rejects groups above `2^24` elements.
pub fn automorphism_group(m: &DieudonneModule, degree: usize) -> Result<MatrixGroup> {
    let base = m.base_change_degree(degree)?;
    let ring = Arc::clone(base.ring());
    let rank = base.rank();
    if base.n() == 1 {
        let us = UnitStructure::new(&base)?;
        let alg = us.matrix_algebra().clone();
        let elements = us
            .aut_elements()?
            .iter()
            .map(|c| alg.to_matrix(c))
            .collect();
        return Ok(MatrixGroup {
            ring,
            rank,
            elements,
        });
    }
    let endo = endomorphism_algebra(&base, false)?;
    if base.pairing().is_none() {
        guard("automorphism group", units_count_level_n(&endo)?, AUT_LIMIT)?;
    }
    Ok(MatrixGroup {
        ring,
        rank,
        elements: level_n_units(&endo, AUT_LIMIT)?,
    })
}

/// Image of `Aut` of the level-`n_high` module in `π₀` of its reduction mod `p`.
#[derive(Clone, Debug)]
pub struct LiftImage {
    pub pi0: ComponentGroup,
    /// Indices into `pi0.table`.
    pub classes: Vec<usize>,
    pub subgroup: FiniteGroupTable,
}

impl LiftImage {
    pub fn is_surjective(&self) -> bool {
        self.classes.len() == self.pi0.order()
    }
}

/// Lifts of automorphisms from level `n_high` to level `n_low = 1`, for the
/// minimal module `H_{c,d}` or, when `polarized`, its polarized double.
pub fn lift_image(
    p: u64,
    c: usize,
    d: usize,
    n_high: u32,
    n_low: u32,
    polarized: bool,
) -> Result<LiftImage> {
    if n_low != 1 {
        return Err(Error::InvalidParameter(
            "lift images are computed onto level one".into(),
        ));
    }
    if n_high <= n_low {
        return Err(Error::InvalidParameter("n_high must exceed n_low".into()));
    }
    let build = |n| {
        if polarized {
            polarized_double(p, c, d, n)
        } else {
            minimal_module(p, c, d, n)
        }
    };
    let low = build(n_low)?;
    let high = build(n_high)?;
    let cg = pi0_at(&low, 1)?;
    let endo = endomorphism_algebra(&high, false)?;
    let mut classes = BTreeSet::new();
    if polarized {
        for a in level_n_units(&endo, AUT_LIMIT)? {
            classes.insert(cg.class_of_matrix(&a.truncate(1, high.ring()))?);
        }
    } else {
        let red = endo.reduction()?;
        let alg = red.algebra();
        for x in alg.elements()? {
            if alg.is_unit(&x) {
                classes.insert(cg.class_of_matrix(&red.to_matrix(&x))?);
            }
        }
    }
    let classes: Vec<usize> = classes.into_iter().collect();
    let subgroup = cg.table.subgroup(&classes)?;
    Ok(LiftImage {
        pi0: cg,
        classes,
        subgroup,
    })
}

/// `|(End_N mod p^n)^×|` for the image of the level-`N` endomorphisms in
/// level `n`, with `N` increased until the image stabilizes.
pub fn stable_endomorphism_units(
    build: &dyn Fn(u32) -> Result<DieudonneModule>,
    n: u32,
) -> Result<u128> {
    let mut previous: Option<(u32, u128)> = None;
    for big in n + 1..=n + 8 {
        let module = build(big)?;
        let endo = endomorphism_algebra(&module, false)?;
        let (size_exp, units) = truncated_units(&endo, n)?;
        if previous == Some((size_exp, units)) {
            return Ok(units);
        }
        previous = Some((size_exp, units));
    }
    Err(Error::NoStabilization(8))
}

/// Order of the image of the level-`N` automorphisms in level one, with
/// `N` increased until the image of the endomorphisms stabilizes. With a
/// pairing, the units of the stable image that preserve it are counted.
pub fn stable_automorphism_order(
    build: &dyn Fn(u32) -> Result<DieudonneModule>,
    n: u32,
) -> Result<u128> {
    let base = build(n)?;
    if base.pairing().is_none() {
        return stable_endomorphism_units(build, n);
    }
    if n != 1 {
        return Err(Error::InvalidParameter(
            "polarized stable counts are computed at truncation level one".into(),
        ));
    }
    let mut previous: Option<MatrixAlgebra> = None;
    for big in 2..=9 {
        let endo = endomorphism_algebra(&build(big)?, false)?;
        let (_, red) = truncated_image(&endo, 1)?;
        if let Some(prev) = previous.filter(|prev| prev.dim() == red.dim()) {
            return unitary_units_in_span(&base, &prev);
        }
        previous = Some(red);
    }
    Err(Error::NoStabilization(8))
}

fn unitary_units_in_span(m: &DieudonneModule, span: &MatrixAlgebra) -> Result<u128> {
    let endo = endomorphism_algebra(m, false)?;
    let mut us = UnitStructure::from_algebra(endo, span.algebra().clone())?;
    us.star = Some(involution_matrix(m, span)?);
    us.aut_order()
}

/// Size exponent of the image of `endo` modulo `p^n`, and its reduction mod `p`.
fn truncated_image(endo: &EndoAlgebra, n: u32) -> Result<(u32, MatrixAlgebra)> {
    let m = endo.module();
    let p = m.p();
    let pn = p.pow(n);
    let vecs: Vec<Vec<u64>> = endo
        .generators()
        .iter()
        .map(|g| g.vector.iter().map(|x| x % pn).collect())
        .collect();
    // image size: p^(n k) / |kernel of coefficients -> vectors| over Z/p^n
    let k = vecs.len();
    let dim = vecs.first().map_or(0, Vec::len);
    let mut a = Mat::zeros(dim, k);
    for (j, v) in vecs.iter().enumerate() {
        for (i, &x) in v.iter().enumerate() {
            a.set(i, j, x);
        }
    }
    let kernel_exp: u32 = crate::linalg::kernel_mod_pn(&a, p, n)
        .iter()
        .map(|g| g.exponent)
        .sum();
    let size_exp = n * k as u32 - kernel_exp;
    let field = WittRing::field(p, m.h())?;
    let red_vecs: Vec<Vec<u64>> = vecs
        .iter()
        .map(|v| v.iter().map(|x| x % p).collect())
        .collect();
    Ok((
        size_exp,
        MatrixAlgebra::from_span(field, m.rank(), &red_vecs)?,
    ))
}

/// Size exponent and unit count of the image of `endo` modulo `p^n`.
fn truncated_units(endo: &EndoAlgebra, n: u32) -> Result<(u32, u128)> {
    let (size_exp, red) = truncated_image(endo, n)?;
    let us = UnitStructure::from_algebra(endo.clone(), red.algebra().clone())?;
    let units = us.aut_order()? * (endo.module().p() as u128).pow(size_exp - red.dim() as u32);
    Ok((size_exp, units))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dieudonne::module::{ordinary_module, twisted_etale_plane};

    fn brute_force_order(m: &DieudonneModule) -> usize {
        let endo = endomorphism_algebra(m, false).unwrap();
        level_n_units(&endo, 1 << 22).unwrap().len()
    }

    #[test]
    fn h21_over_f2() {
        let m = minimal_module(2, 2, 1, 1).unwrap();
        assert_eq!(automorphism_order(&m, 1).unwrap(), 448);
        assert_eq!(brute_force_order(&m), 448);
        assert_eq!(automorphism_group(&m, 1).unwrap().order(), 448);
        let cg = pi0(&m).unwrap();
        assert_eq!(cg.degree, 1);
        assert_eq!(cg.order(), 7);
        assert!(cg.table.is_cyclic());
    }

    #[test]
    fn unitary_counts_match_enumeration() {
        for (p, c, d) in [(2, 1, 1), (3, 1, 1), (5, 1, 1)] {
            let m = polarized_double(p, c, d, 1).unwrap();
            let direct = brute_force_order(&m);
            assert_eq!(
                automorphism_order(&m, 1).unwrap(),
                direct as u128,
                "p={p} c={c} d={d}"
            );
            let g = automorphism_group(&m, 1).unwrap();
            assert_eq!(g.order(), direct);
            assert!(g.elements().iter().all(|a| preserves_pairing(&m, a)));
        }
    }

    #[test]
    fn supersingular_curve_components() {
        let m = polarized_double(3, 1, 1, 1).unwrap();
        // already over F_9: the norm-one elements
        let cg = pi0(&m).unwrap();
        assert_eq!((cg.degree, cg.order()), (1, 4));
        assert!(cg.table.is_cyclic());
    }

    #[test]
    fn ordinary_elliptic_components() {
        let m = ordinary_module(5, 1, 1).unwrap();
        assert_eq!(automorphism_order(&m, 1).unwrap(), 4);
        assert_eq!(pi0(&m).unwrap().order(), 4);
    }

    #[test]
    fn twisted_plane_splits_at_two() {
        let m = twisted_etale_plane(3, 1).unwrap();
        assert_eq!(pi0_at(&m, 1).unwrap().order(), 4);
        assert_eq!(pi0_at(&m, 2).unwrap().order(), 48);
        assert_eq!(splitting_degree(&m).unwrap(), 2);
    }

    #[test]
    fn level_two_unit_count() {
        let m = minimal_module(2, 2, 1, 2).unwrap();
        assert_eq!(
            automorphism_order(&m, 1).unwrap() as usize,
            brute_force_order(&m)
        );
    }

    #[test]
    fn lifts_are_surjective_for_h21() {
        let li = lift_image(2, 2, 1, 2, 1, false).unwrap();
        assert!(li.is_surjective());
        assert_eq!(
            lift_image(2, 2, 1, 3, 2, false).unwrap_err(),
            Error::InvalidParameter("lift images are computed onto level one".into())
        );
    }
}
