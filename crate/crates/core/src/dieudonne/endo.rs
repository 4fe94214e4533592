//! Endomorphism algebras of Dieudonné modules.
//!
//! `A` is an endomorphism iff `A [F] = [F] σ(A)` and `A [V] = [V] σ⁻¹(A)`.
//! Both equations are `Z/p^n`-linear in the coordinates of `A`, so the
//! solution set is the kernel of one flattened integer matrix.

use std::sync::Arc;

use crate::dieudonne::algebra::{FpAlgebra, Subspace};
use crate::dieudonne::matrix::RingMat;
use crate::dieudonne::module::DieudonneModule;
use crate::error::{guard, Error, Result};
use crate::linalg::{kernel_mod_pn, nullspace_fp, KernelGen, Mat};
use crate::scalar::WittRing;

/// An `F_p`-subalgebra of `M_r(F_{p^h})`, stored as an echelon basis of
/// flattened matrices together with its structure constants.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    field: Arc<WittRing>,
    rank: usize,
    space: Subspace,
    algebra: FpAlgebra,
}

impl MatrixAlgebra {
    /// The algebra spanned by `vectors`, which must be closed under products
    /// and contain the identity.
    pub fn from_span(field: Arc<WittRing>, rank: usize, vectors: &[Vec<u64>]) -> Result<Self> {
        if field.n() != 1 {
            return Err(Error::InvalidParameter(
                "matrix algebras live over the residue field".into(),
            ));
        }
        let p = field.p();
        let h = field.h();
        let space = Subspace::span(rank * rank * h, vectors, p);
        let d = space.dim();
        let as_mat = |v: &[u64]| RingMat {
            rows: rank,
            cols: rank,
            h,
            data: v.to_vec(),
        };
        let mut mult = Vec::with_capacity(d * d);
        for a in &space.rows {
            let ma = as_mat(a);
            for b in &space.rows {
                let prod = ma.mul(&as_mat(b), &field);
                if !space.contains(&prod.data, p) {
                    return Err(Error::Internal(
                        "span is not closed under multiplication".into(),
                    ));
                }
                mult.push(space.coords(&prod.data));
            }
        }
        let id = RingMat::identity(rank, h);
        if !space.contains(&id.data, p) {
            return Err(Error::Internal("span does not contain the identity".into()));
        }
        let one = space.coords(&id.data);
        Ok(MatrixAlgebra {
            field,
            rank,
            space,
            algebra: FpAlgebra {
                p,
                dim: d,
                mult,
                one,
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn algebra(&self) -> &FpAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Arc<WittRing> {
        &self.field
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> Vec<RingMat> {
        self.space
            .rows
            .iter()
            .map(|v| self.to_matrix_flat(v))
            .collect()
    }

    fn to_matrix_flat(&self, v: &[u64]) -> RingMat {
        RingMat {
            rows: self.rank,
            cols: self.rank,
            h: self.field.h(),
            data: v.to_vec(),
        }
    }

    pub fn to_matrix(&self, coords: &[u64]) -> RingMat {
        self.to_matrix_flat(&self.space.combine(coords, self.field.p()))
    }

    /// Coordinates of a member matrix; `None` if it lies outside.
    pub fn coords(&self, m: &RingMat) -> Option<Vec<u64>> {
        let p = self.field.p();
        let reduced: Vec<u64> = m.data.iter().map(|x| x % p).collect();
        self.space
            .contains(&reduced, p)
            .then(|| self.space.coords(&reduced))
    }
}

/// The solution set of the endomorphism equations.
#[derive(Clone, Debug)]
pub struct EndoAlgebra {
    module: DieudonneModule,
    gens: Vec<KernelGen>,
    /// Present at truncation level one.
    matrix_algebra: Option<MatrixAlgebra>,
    /// Matrix of `A ↦ P⁻¹ Aᵀ P` in algebra coordinates, when requested.
    involution: Option<Mat>,
}

/// Residual of the endomorphism equations at `a`, flattened.
fn residual(m: &DieudonneModule, a: &RingMat) -> Vec<u64> {
    let r = m.ring();
    let f = &m.f().matrix;
    let v = &m.v().matrix;
    let mut out = a.mul(f, r).sub(&f.mul(&a.frobenius(1, r), r), r).data;
    out.extend(a.mul(v, r).sub(&v.mul(&a.frobenius(-1, r), r), r).data);
    out
}

pub fn is_endomorphism(m: &DieudonneModule, a: &RingMat) -> bool {
    residual(m, a).iter().all(|&x| x == 0)
}

/// `P⁻¹ Aᵀ P`.
pub fn adjoint(m: &DieudonneModule, a: &RingMat) -> Result<RingMat> {
    let r = m.ring();
    let pm = m
        .pairing()
        .ok_or_else(|| Error::InvalidParameter("module has no pairing".into()))?;
    let pinv = pm.inverse(r).ok_or(Error::NotInvertible)?;
    Ok(pinv.mul(&a.transpose(), r).mul(pm, r))
}

/// `Aᵀ P A = P`.
pub fn preserves_pairing(m: &DieudonneModule, a: &RingMat) -> bool {
    let r = m.ring();
    match m.pairing() {
        None => true,
        Some(pm) => a.transpose().mul(pm, r).mul(a, r) == *pm,
    }
}

/// Solves the endomorphism equations. With `pairing_compatible` set, the
/// adjoint involution of the pairing is attached; the isometry condition
/// itself is quadratic and is imposed on the unit group, not on the algebra.
pub fn endomorphism_algebra(m: &DieudonneModule, pairing_compatible: bool) -> Result<EndoAlgebra> {
    let ring = m.ring();
    let (p, n, h, rk) = (m.p(), m.n(), m.h(), m.rank());
    let unknowns = rk * rk * h;
    guard("endomorphism unknowns", unknowns as u128, 4096)?;
    let mut system = Mat::zeros(2 * unknowns, unknowns);
    let mut unit = RingMat::zeros(rk, rk, h);
    for col in 0..unknowns {
        unit.data[col] = 1;
        for (row, x) in residual(m, &unit).into_iter().enumerate() {
            system.set(row, col, x);
        }
        unit.data[col] = 0;
    }
    let (gens, matrix_algebra) = if n == 1 {
        let (basis, _) = nullspace_fp(&system, p);
        let gens = basis
            .iter()
            .map(|v| KernelGen {
                vector: v.clone(),
                exponent: 1,
            })
            .collect();
        (
            gens,
            Some(MatrixAlgebra::from_span(Arc::clone(ring), rk, &basis)?),
        )
    } else {
        (kernel_mod_pn(&system, p, n), None)
    };
    let mut endo = EndoAlgebra {
        module: m.clone(),
        gens,
        matrix_algebra,
        involution: None,
    };
    if pairing_compatible && m.pairing().is_some() {
        if let Some(alg) = &endo.matrix_algebra {
            endo.involution = Some(involution_matrix(m, alg)?);
        }
    }
    Ok(endo)
}

/// The adjoint involution on a `*`-stable subalgebra, in its coordinates.
pub(crate) fn involution_matrix(m: &DieudonneModule, alg: &MatrixAlgebra) -> Result<Mat> {
    let d = alg.dim();
    let mut inv = Mat::zeros(d, d);
    for (j, b) in alg.basis().iter().enumerate() {
        let star = adjoint(m, b)?;
        let c = alg
            .coords(&star)
            .ok_or_else(|| Error::Internal("subalgebra is not stable under the adjoint".into()))?;
        for (i, x) in c.into_iter().enumerate() {
            inv.set(i, j, x);
        }
    }
    Ok(inv)
}

impl EndoAlgebra {
    pub fn module(&self) -> &DieudonneModule {
        &self.module
    }

    /// Generators of the solution module with their additive orders `p^e`.
    pub fn generators(&self) -> &[KernelGen] {
        &self.gens
    }

    pub fn generator_matrices(&self) -> Vec<RingMat> {
        let (rk, h) = (self.module.rank(), self.module.h());
        self.gens
            .iter()
            .map(|g| RingMat {
                rows: rk,
                cols: rk,
                h,
                data: g.vector.clone(),
            })
            .collect()
    }

    /// `log_p |End|`.
    pub fn log_size(&self) -> u32 {
        self.gens.iter().map(|g| g.exponent).sum()
    }

    pub fn matrix_algebra(&self) -> Option<&MatrixAlgebra> {
        self.matrix_algebra.as_ref()
    }

    pub fn involution(&self) -> Option<&Mat> {
        self.involution.as_ref()
    }

    pub fn contains(&self, a: &RingMat) -> bool {
        is_endomorphism(&self.module, a)
    }

    /// Every element `Σ c_k g_k` with `0 <= c_k < p^{e_k}`.
    pub fn elements(&self, limit: u128) -> Result<Vec<RingMat>> {
        let size = (self.module.p() as u128)
            .checked_pow(self.log_size())
            .unwrap_or(u128::MAX);
        guard("endomorphism enumeration", size, limit)?;
        let ring = self.module.ring();
        let mats = self.generator_matrices();
        let p = self.module.p();
        let mut out = vec![RingMat::zeros(
            self.module.rank(),
            self.module.rank(),
            self.module.h(),
        )];
        for (g, gm) in self.gens.iter().zip(&mats) {
            let count = p.pow(g.exponent);
            let mut next = Vec::with_capacity(out.len() * count as usize);
            for base in &out {
                let mut cur = base.clone();
                for _ in 0..count {
                    next.push(cur.clone());
                    cur = cur.add(gm, ring);
                }
            }
            out = next;
        }
        Ok(out)
    }

    /// The reduction mod `p` of the algebra, as a subalgebra of `M_r(F_{p^h})`.
    pub fn reduction(&self) -> Result<MatrixAlgebra> {
        if let Some(a) = &self.matrix_algebra {
            return Ok(a.clone());
        }
        let p = self.module.p();
        let field = WittRing::field(p, self.module.h())?;
        let vecs: Vec<Vec<u64>> = self
            .gens
            .iter()
            .map(|g| g.vector.iter().map(|x| x % p).collect())
            .collect();
        MatrixAlgebra::from_span(field, self.module.rank(), &vecs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dieudonne::module::{minimal_module, polarized_double};

    #[test]
    fn h21_over_f2_has_dimension_nine() {
        let m = minimal_module(2, 2, 1, 1).unwrap();
        let e = endomorphism_algebra(&m, false).unwrap();
        assert_eq!(e.log_size(), 9);
        let alg = e.matrix_algebra().unwrap();
        for a in alg.basis() {
            assert!(e.contains(&a));
        }
    }

    #[test]
    fn involution_is_an_anti_automorphism() {
        let m = polarized_double(3, 2, 1, 1).unwrap();
        let e = endomorphism_algebra(&m, true).unwrap();
        let s = e.involution().unwrap();
        let alg = e.matrix_algebra().unwrap().algebra();
        let p = 3;
        let star = |x: &[u64]| s.mul_vec(x, p);
        for i in 0..alg.dim {
            let bi = alg.basis_vector(i);
            assert_eq!(star(&star(&bi)), bi);
            for j in 0..alg.dim {
                let bj = alg.basis_vector(j);
                assert_eq!(star(&alg.mul(&bi, &bj)), alg.mul(&star(&bj), &star(&bi)));
            }
        }
    }

    #[test]
    fn level_two_count_is_consistent() {
        let m = minimal_module(2, 2, 1, 2).unwrap();
        let e = endomorphism_algebra(&m, false).unwrap();
        let all = e.elements(1 << 18).unwrap();
        assert_eq!(all.len() as u128, 1u128 << e.log_size());
        assert!(all.iter().all(|a| e.contains(a)));
    }
}
