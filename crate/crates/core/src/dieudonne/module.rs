//! Dieudonné modules: free modules over `W_n(F_{p^h})` with a σ-linear `F`
//! and a σ⁻¹-linear `V`, optionally carrying an alternating pairing.

use std::fmt::Write as _;
use std::sync::Arc;

use crate::arith::gcd;
use crate::dieudonne::matrix::RingMat;
use crate::error::{Error, Result};
use crate::linalg::{rank_fp, Mat};
use crate::scalar::{WittElem, WittRing};

/// `v ↦ matrix · σ^twist(v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemilinearMap {
    pub matrix: RingMat,
    pub twist: i64,
}

impl SemilinearMap {
    pub fn apply(&self, v: &[u64], ring: &WittRing) -> Vec<u64> {
        let h = ring.h();
        let mut sv = vec![0u64; v.len()];
        for (src, dst) in v.chunks(h).zip(sv.chunks_mut(h)) {
            ring.frobenius_into(src, self.twist, dst);
        }
        self.matrix.mul_vec(&sv, ring)
    }

    /// Matrix of the map as a `Z/p^n`-linear endomorphism of the flattened
    /// coordinate space (index `i * h + c` is coordinate `c` of entry `i`).
    pub fn flattened(&self, ring: &WittRing) -> Mat {
        let h = ring.h();
        let dim = self.matrix.rows * h;
        let mut out = Mat::zeros(dim, dim);
        let mut basis = vec![0u64; dim];
        for col in 0..dim {
            basis.iter_mut().for_each(|x| *x = 0);
            basis[col] = 1;
            let img = self.apply(&basis, ring);
            for (row, &x) in img.iter().enumerate() {
                out.set(row, col, x);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct DieudonneModule {
    ring: Arc<WittRing>,
    rank: usize,
    f: SemilinearMap,
    v: SemilinearMap,
    pairing: Option<RingMat>,
}

impl PartialEq for DieudonneModule {
    fn eq(&self, other: &Self) -> bool {
        *self.ring == *other.ring
            && self.rank == other.rank
            && self.f == other.f
            && self.v == other.v
            && self.pairing == other.pairing
    }
}
impl Eq for DieudonneModule {}

impl DieudonneModule {
    /// Builds a module and checks `F V = V F = p`, plus the pairing axioms when
    /// a pairing is supplied.
    pub fn new(
        ring: Arc<WittRing>,
        f: RingMat,
        v: RingMat,
        pairing: Option<RingMat>,
    ) -> Result<Self> {
        let m = Self::new_unchecked(ring, f, v, pairing)?;
        m.validate()?;
        Ok(m)
    }

    /// Only shape checks; used for deliberately malformed inputs.
    pub fn new_unchecked(
        ring: Arc<WittRing>,
        f: RingMat,
        v: RingMat,
        pairing: Option<RingMat>,
    ) -> Result<Self> {
        let rank = f.rows;
        let h = ring.h();
        let ok = |m: &RingMat| m.rows == rank && m.cols == rank && m.h == h;
        if rank == 0 || !ok(&f) || !ok(&v) || pairing.as_ref().is_some_and(|p| !ok(p)) {
            return Err(Error::InvalidModule(
                "matrix dimensions do not match the rank".into(),
            ));
        }
        Ok(DieudonneModule {
            ring,
            rank,
            f: SemilinearMap {
                matrix: f,
                twist: 1,
            },
            v: SemilinearMap {
                matrix: v,
                twist: -1,
            },
            pairing,
        })
    }

    pub fn ring(&self) -> &Arc<WittRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn f(&self) -> &SemilinearMap {
        &self.f
    }

    pub fn v(&self) -> &SemilinearMap {
        &self.v
    }

    pub fn pairing(&self) -> Option<&RingMat> {
        self.pairing.as_ref()
    }

    pub fn p(&self) -> u64 {
        self.ring.p()
    }

    pub fn h(&self) -> usize {
        self.ring.h()
    }

    pub fn n(&self) -> u32 {
        self.ring.n()
    }

    pub fn without_pairing(&self) -> Self {
        DieudonneModule {
            pairing: None,
            ..self.clone()
        }
    }

    pub fn with_pairing(&self, pairing: RingMat) -> Result<Self> {
        let m = DieudonneModule {
            pairing: Some(pairing),
            ..self.clone()
        };
        m.validate()?;
        Ok(m)
    }

    /// Matrix of `F ∘ V`, namely `[F] σ([V])`.
    pub fn fv(&self) -> RingMat {
        let r = &self.ring;
        self.f.matrix.mul(&self.v.matrix.frobenius(1, r), r)
    }

    /// Matrix of `V ∘ F`, namely `[V] σ⁻¹([F])`.
    pub fn vf(&self) -> RingMat {
        let r = &self.ring;
        self.v.matrix.mul(&self.f.matrix.frobenius(-1, r), r)
    }

    pub fn validate(&self) -> Result<()> {
        let p_id = RingMat::scalar(self.rank, self.h(), self.p() % self.ring.modulus());
        if self.fv() != p_id || self.vf() != p_id {
            return Err(Error::InvalidModule("F V = V F = p fails".into()));
        }
        if let Some(pm) = &self.pairing {
            if !is_alternating(pm, &self.ring) {
                return Err(Error::InvalidModule("pairing is not alternating".into()));
            }
            if pm.inverse(&self.ring).is_none() {
                return Err(Error::InvalidModule("pairing is not invertible".into()));
            }
            if !self.pairing_compatible() {
                return Err(Error::InvalidModule(
                    "pairing is not compatible with F and V".into(),
                ));
            }
        }
        Ok(())
    }

    /// `⟨Fx, y⟩ = σ⟨x, Vy⟩` on basis vectors, i.e. `[F]^T P = σ(P [V])`.
    pub fn pairing_compatible(&self) -> bool {
        let Some(pm) = &self.pairing else { return true };
        let r = &self.ring;
        let lhs = self.f.matrix.transpose().mul(pm, r);
        let rhs = pm.mul(&self.v.matrix, r).frobenius(1, r);
        lhs == rhs
    }

    /// The BT₁ condition `im F = ker V` and `im V = ker F` over `F_p`.
    pub fn bt1_check(&self) -> Result<bool> {
        if self.n() != 1 {
            return Err(Error::InvalidParameter(
                "the BT1 check needs a module over a field".into(),
            ));
        }
        let p = self.p();
        let fl = self.f.flattened(&self.ring);
        let vl = self.v.flattened(&self.ring);
        let dim = fl.rows;
        let (rf, rv) = (rank_fp(&fl, p), rank_fp(&vl, p));
        // V∘F = 0 and F∘V = 0 give the inclusions; ranks give equality.
        let vf_zero = vl.mul(&fl, p).is_zero();
        let fv_zero = fl.mul(&vl, p).is_zero();
        Ok(vf_zero && fv_zero && rf == dim - rv && rv == dim - rf)
    }

    pub fn direct_sum(&self, other: &DieudonneModule) -> Result<DieudonneModule> {
        if *self.ring != *other.ring {
            return Err(Error::InvalidParameter(
                "direct sum over different rings".into(),
            ));
        }
        let pairing = match (&self.pairing, &other.pairing) {
            (Some(a), Some(b)) => Some(a.block_diag(b)),
            _ => None,
        };
        DieudonneModule::new(
            Arc::clone(&self.ring),
            self.f.matrix.block_diag(&other.f.matrix),
            self.v.matrix.block_diag(&other.v.matrix),
            pairing,
        )
    }

    /// The same module in the basis given by the columns of `b`.
    pub fn change_basis(&self, b: &RingMat) -> Result<DieudonneModule> {
        let r = &self.ring;
        let bi = b.inverse(r).ok_or(Error::NotInvertible)?;
        let f = bi.mul(&self.f.matrix, r).mul(&b.frobenius(1, r), r);
        let v = bi.mul(&self.v.matrix, r).mul(&b.frobenius(-1, r), r);
        let pairing = self
            .pairing
            .as_ref()
            .map(|pm| b.transpose().mul(pm, r).mul(b, r));
        DieudonneModule::new(Arc::clone(r), f, v, pairing)
    }

    /// Extension of scalars along an embedding of rings.
    pub fn base_change(&self, target: &Arc<WittRing>) -> Result<DieudonneModule> {
        let emb = self.ring.embedding_into(target)?;
        let map = |m: &RingMat| {
            let entries: Vec<WittElem> = m
                .data
                .chunks(self.h())
                .map(|c| emb.apply(&WittElem(c.to_vec())))
                .collect();
            RingMat::from_entries(m.rows, m.cols, target.h(), &entries)
        };
        DieudonneModule::new(
            Arc::clone(target),
            map(&self.f.matrix),
            map(&self.v.matrix),
            self.pairing.as_ref().map(map),
        )
    }

    /// Extension of scalars to `W_n(F_{p^(h m)})`.
    pub fn base_change_degree(&self, m: usize) -> Result<DieudonneModule> {
        if m == 1 {
            return Ok(self.clone());
        }
        let target = WittRing::new(self.p(), self.h() * m, self.n())?;
        self.base_change(&target)
    }

    /// Plain-text serialization: header `p h n rank`, then blocks `F`, `V`
    /// and optionally `P`, one matrix row per line with entries written as
    /// comma-separated coordinates.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} {} {}", self.p(), self.h(), self.n(), self.rank);
        let mut block = |name: &str, m: &RingMat| {
            let _ = writeln!(s, "{name}");
            for i in 0..m.rows {
                let row: Vec<String> = (0..m.cols)
                    .map(|j| {
                        m.entry(i, j)
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                let _ = writeln!(s, "{}", row.join(" "));
            }
        };
        block("F", &self.f.matrix);
        block("V", &self.v.matrix);
        if let Some(pm) = &self.pairing {
            block("P", pm);
        }
        s
    }

    pub fn from_text(text: &str) -> Result<DieudonneModule> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let perr = |line: usize, msg: &str| Error::Parse {
            line,
            msg: msg.to_string(),
        };
        let (hl, header) = *lines.first().ok_or_else(|| perr(1, "empty input"))?;
        let nums: Vec<u64> = header
            .split_whitespace()
            .map(|t| {
                t.parse::<u64>()
                    .map_err(|_| perr(hl, "header must be four integers"))
            })
            .collect::<Result<_>>()?;
        let [p, h, n, rank] = nums[..] else {
            return Err(perr(hl, "header must be `p h n rank`"));
        };
        if h == 0 || n == 0 || rank == 0 || n > 32 {
            return Err(perr(hl, "degenerate header"));
        }
        let ring = WittRing::new(p, h as usize, n as u32)?;
        let (h, rank) = (h as usize, rank as usize);
        let mut idx = 1;
        let mut read_block = |name: &str| -> Result<Option<RingMat>> {
            let Some(&(ln, l)) = lines.get(idx) else {
                return Ok(None);
            };
            if l != name {
                return Err(perr(ln, &format!("expected block `{name}`")));
            }
            idx += 1;
            let mut m = RingMat::zeros(rank, rank, h);
            for i in 0..rank {
                let &(ln, row) = lines
                    .get(idx)
                    .ok_or_else(|| perr(ln + 1, "missing matrix row"))?;
                idx += 1;
                let entries: Vec<&str> = row.split_whitespace().collect();
                if entries.len() != rank {
                    return Err(perr(ln, "wrong number of entries in row"));
                }
                for (j, e) in entries.iter().enumerate() {
                    let coords: Vec<u64> = e
                        .split(',')
                        .map(|c| c.parse::<u64>().map_err(|_| perr(ln, "bad coordinate")))
                        .collect::<Result<_>>()?;
                    if coords.len() != h || coords.iter().any(|&c| c >= ring.modulus()) {
                        return Err(perr(ln, "entry must have h reduced coordinates"));
                    }
                    m.entry_mut(i, j).copy_from_slice(&coords);
                }
            }
            Ok(Some(m))
        };
        let f = read_block("F")?.ok_or_else(|| perr(hl + 1, "missing F block"))?;
        let v = read_block("V")?.ok_or_else(|| perr(hl + 1, "missing V block"))?;
        let pairing = read_block("P")?;
        if let Some(&(ln, _)) = lines.get(idx) {
            return Err(perr(ln, "trailing input"));
        }
        DieudonneModule::new(ring, f, v, pairing)
    }
}

fn is_alternating(pm: &RingMat, ring: &WittRing) -> bool {
    if pm.transpose() != pm.neg(ring) {
        return false;
    }
    (0..pm.rows).all(|i| pm.entry(i, i).iter().all(|&c| c == 0))
}

/// Shift matrix `e_i ↦ e_{i+s}` on a rank-`h` module with `e_{i+h} = p e_i`.
fn shift(h: usize, s: usize, ring: &WittRing) -> RingMat {
    let mut m = RingMat::zeros(h, h, ring.h());
    let p = ring.p() % ring.modulus();
    for i in 0..h {
        let (row, val) = if i + s < h {
            (i + s, 1)
        } else {
            (i + s - h, p)
        };
        m.entry_mut(row, i)[0] = val;
    }
    m
}

/// The minimal module `H_{c,d}` of height `h = c + d` over `W_n(F_{p^h})`:
/// `F e_i = e_{i+d}`, `V e_i = e_{i+c}`, `e_{i+h} = p e_i`.
pub fn minimal_module(p: u64, c: usize, d: usize, n: u32) -> Result<DieudonneModule> {
    if gcd(c as u64, d as u64) != 1 {
        return Err(Error::NotCoprime(c as u64, d as u64));
    }
    let h = c + d;
    let ring = WittRing::new(p, h, n)?;
    let f = shift(h, d, &ring);
    let v = shift(h, c, &ring);
    DieudonneModule::new(ring, f, v, None)
}

/// The alternating pairing on `H_{1,1}`: `u [[0,1],[-1,0]]` with `σ(u) = -u`,
/// taking the first such unit in enumeration order.
fn h11_pairing(ring: &WittRing) -> Result<RingMat> {
    let u = ring
        .elements()?
        .into_iter()
        .find(|u| ring.is_unit(u) && ring.frobenius(u, 1) == ring.neg(u))
        .ok_or_else(|| Error::Internal("no anti-invariant unit".into()))?;
    let zero = ring.zero();
    Ok(RingMat::from_entries(
        2,
        2,
        ring.h(),
        &[zero.clone(), u.clone(), ring.neg(&u), zero],
    ))
}

/// `H_{c,d} ⊕ H_{d,c}` with the pairing `[[0, J], [-J, 0]]`, `J` the
/// anti-diagonal identity. For `(1,1)` this is `H_{1,1}` with its own pairing.
pub fn polarized_double(p: u64, c: usize, d: usize, n: u32) -> Result<DieudonneModule> {
    if gcd(c as u64, d as u64) != 1 {
        return Err(Error::NotCoprime(c as u64, d as u64));
    }
    if (c, d) == (1, 1) {
        let m = minimal_module(p, 1, 1, n)?;
        let pm = h11_pairing(m.ring())?;
        return m.with_pairing(pm);
    }
    let a = minimal_module(p, c, d, n)?;
    let b = minimal_module(p, d, c, n)?;
    let sum = a.direct_sum(&b)?;
    let h = c + d;
    let ring = Arc::clone(sum.ring());
    let mut pm = RingMat::zeros(2 * h, 2 * h, h);
    let minus_one = ring.modulus() - 1;
    for i in 0..h {
        pm.entry_mut(i, h + (h - 1 - i))[0] = 1;
        pm.entry_mut(h + i, h - 1 - i)[0] = minus_one;
    }
    sum.with_pairing(pm)
        .map_err(|e| Error::InvalidModule(format!("polarized double: {e}")))
}

/// `rank` copies of the unit-root line: `F = Id`, `V = p`.
pub fn etale_module(p: u64, h: usize, rank: usize, n: u32) -> Result<DieudonneModule> {
    let ring = WittRing::new(p, h, n)?;
    let pm = p % ring.modulus();
    DieudonneModule::new(
        Arc::clone(&ring),
        RingMat::identity(rank, h),
        RingMat::scalar(rank, h, pm),
        None,
    )
}

/// `rank` copies of the dual line: `F = p`, `V = Id`.
pub fn multiplicative_module(p: u64, h: usize, rank: usize, n: u32) -> Result<DieudonneModule> {
    let ring = WittRing::new(p, h, n)?;
    let pm = p % ring.modulus();
    DieudonneModule::new(
        Arc::clone(&ring),
        RingMat::scalar(rank, h, pm),
        RingMat::identity(rank, h),
        None,
    )
}

/// The ordinary module of dimension `g` over `W_n(F_p)` with the standard
/// alternating pairing `[[0, I], [-I, 0]]` between its two blocks.
pub fn ordinary_module(p: u64, g: usize, n: u32) -> Result<DieudonneModule> {
    if g == 0 {
        return Err(Error::InvalidParameter("g must be >= 1".into()));
    }
    let sum = etale_module(p, 1, g, n)?.direct_sum(&multiplicative_module(p, 1, g, n)?)?;
    let ring = Arc::clone(sum.ring());
    let mut pm = RingMat::zeros(2 * g, 2 * g, 1);
    for i in 0..g {
        pm.entry_mut(i, g + i)[0] = 1;
        pm.entry_mut(g + i, i)[0] = ring.modulus() - 1;
    }
    sum.with_pairing(pm)
}

/// A rank-2 unit-root module over `W_n(F_p)` whose Frobenius swaps the basis:
/// split only after a quadratic extension.
pub fn twisted_etale_plane(p: u64, n: u32) -> Result<DieudonneModule> {
    let ring = WittRing::new(p, 1, n)?;
    let pm = (p % ring.modulus()) as i64;
    let m = ring.modulus();
    DieudonneModule::new(
        Arc::clone(&ring),
        RingMat::from_int_rows(&[vec![0, 1], vec![1, 0]], 1, m),
        RingMat::from_int_rows(&[vec![0, pm], vec![pm, 0]], 1, m),
        None,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h21_matches_displayed_matrices() {
        // F x1 = x2, F x2 = x3, F x3 = p x1; V x1 = x3, V x2 = p x1, V x3 = p x2
        let m = minimal_module(3, 2, 1, 2).unwrap();
        let r = m.ring();
        let f = RingMat::from_int_rows(&[vec![0, 0, 3], vec![1, 0, 0], vec![0, 1, 0]], 3, 9);
        let v = RingMat::from_int_rows(&[vec![0, 3, 0], vec![0, 0, 3], vec![1, 0, 0]], 3, 9);
        assert_eq!(m.f().matrix, f);
        assert_eq!(m.v().matrix, v);
        assert_eq!(m.fv(), RingMat::scalar(3, 3, 3));
        assert_eq!(m.vf(), RingMat::scalar(3, 3, 3));
        assert!(r.n() == 2);
    }

    #[test]
    fn bt1_examples() {
        assert!(minimal_module(2, 2, 1, 1).unwrap().bt1_check().unwrap());
        assert!(minimal_module(2, 1, 2, 1).unwrap().bt1_check().unwrap());
        assert!(ordinary_module(3, 1, 1).unwrap().bt1_check().unwrap());
        let ring = WittRing::new(2, 1, 1).unwrap();
        let bad = DieudonneModule::new_unchecked(
            ring.clone(),
            RingMat::identity(1, 1),
            RingMat::identity(1, 1),
            None,
        )
        .unwrap();
        assert!(!bad.bt1_check().unwrap());
        assert!(DieudonneModule::new(
            ring.clone(),
            RingMat::identity(1, 1),
            RingMat::identity(1, 1),
            None
        )
        .is_err());
        let etale =
            DieudonneModule::new(ring, RingMat::identity(1, 1), RingMat::zeros(1, 1, 1), None)
                .unwrap();
        assert!(etale.bt1_check().unwrap());
        assert!(minimal_module(2, 2, 1, 2).unwrap().bt1_check().is_err());
    }

    #[test]
    fn gcd_is_enforced() {
        assert_eq!(minimal_module(2, 2, 2, 1), Err(Error::NotCoprime(2, 2)));
    }

    #[test]
    fn pairings_are_compatible() {
        for p in [2, 3, 5] {
            for n in [1, 2] {
                assert!(polarized_double(p, 2, 1, n).is_ok());
                assert!(polarized_double(p, 1, 1, n).is_ok());
                assert!(ordinary_module(p, 2, n).is_ok());
            }
        }
        assert!(polarized_double(2, 3, 2, 1).is_ok());
    }

    #[test]
    fn h11_pairing_constant_at_p2_n2() {
        let m = polarized_double(2, 1, 1, 2).unwrap();
        let r = m.ring();
        let u = m.pairing().unwrap().elem(0, 1);
        assert_eq!(u, r.add(&r.one(), &r.mul(&r.from_int(2), &r.gen())));
    }

    #[test]
    fn text_round_trip() {
        let m = polarized_double(3, 2, 1, 2).unwrap();
        let s = m.to_text();
        let back = DieudonneModule::from_text(&s).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_text(), s);
        assert!(matches!(
            DieudonneModule::from_text("2 1 1"),
            Err(Error::Parse { .. })
        ));
    }
}
