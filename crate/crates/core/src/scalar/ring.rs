//! Finite fields `F_{p^h}` and truncated Witt rings `W_n(F_{p^h})`.
//!
//! Both are realized as `(Z/p^n)[t]/(f)` where `f` is monic of degree `h`,
//! reduces to a primitive polynomial mod `p`, and divides `X^(p^h-1) - 1`.
//! With that choice `t ↦ t^p` is a ring endomorphism (the Witt Frobenius),
//! and `n = 1` is literally the field.

use std::fmt;
use std::sync::Arc;

use crate::arith::{gcd, is_prime, mul_mod, prime_factors};
use crate::error::{guard, Error, Result};
use crate::scalar::poly::{self, Poly};

/// Largest ring size `p^(h n)` supported.
pub const RING_SIZE_LIMIT: u128 = 1 << 32;

/// A prime field extension described by a primitive modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldParams {
    p: u64,
    h: usize,
    modulus: Poly,
}

impl FieldParams {
    /// Picks the first primitive monic polynomial of degree `h`, scanning the
    /// non-leading coefficients `(c_0, .., c_{h-1})` in increasing order of
    /// `Σ c_i p^i`.
    pub fn new(p: u64, h: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::InvalidParameter(
                "extension degree must be >= 1".into(),
            ));
        }
        guard(
            "field size p^h",
            (p as u128).saturating_pow(h as u32),
            RING_SIZE_LIMIT,
        )?;
        let count = p.pow(h as u32);
        for code in 0..count {
            let mut f: Poly = (0..h).map(|i| (code / p.pow(i as u32)) % p).collect();
            f.push(1);
            if is_primitive(p, &f)? {
                return Ok(FieldParams { p, h, modulus: f });
            }
        }
        Err(Error::Internal(format!(
            "no primitive polynomial of degree {h} over F_{p}"
        )))
    }

    /// Uses a caller-supplied modulus, which must be primitive.
    pub fn with_modulus(p: u64, modulus: Poly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = poly::trim(modulus);
        let h = poly::degree(&modulus).unwrap_or(0);
        if h == 0 || modulus[h] != 1 {
            return Err(Error::InvalidParameter(
                "modulus must be monic of degree >= 1".into(),
            ));
        }
        guard(
            "field size p^h",
            (p as u128).saturating_pow(h as u32),
            RING_SIZE_LIMIT,
        )?;
        if !is_primitive(p, &modulus)? {
            return Err(Error::InvalidParameter("modulus is not primitive".into()));
        }
        Ok(FieldParams { p, h, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn h(&self) -> usize {
        self.h
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Field size `p^h`.
    pub fn size(&self) -> u64 {
        self.p.pow(self.h as u32)
    }
}

/// True iff the residue class of `X` has multiplicative order exactly `p^h - 1`
/// in `F_p[X]/(f)`. That forces `f` irreducible, since the quotient ring then has
/// `p^h - 1` units.
pub fn is_primitive(p: u64, f: &[u64]) -> Result<bool> {
    let h = match poly::degree(f) {
        Some(h) if h >= 1 => h,
        _ => return Ok(false),
    };
    if f[0].is_multiple_of(p) {
        return Ok(false);
    }
    let order = p.pow(h as u32) - 1;
    let x: Poly = vec![0, 1];
    if poly::pow_rem(&x, order, f, p)? != vec![1] {
        return Ok(false);
    }
    for r in prime_factors(order) {
        if poly::pow_rem(&x, order / r, f, p)? == vec![1] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Parameters of `W_n(F_{p^h})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WittRingParams {
    pub p: u64,
    pub h: usize,
    pub n: u32,
    pub lifted_modulus: Poly,
}

/// Computes the unique monic lift of the primitive modulus of `F_{p^h}` to
/// `Z/p^n` that divides `X^(p^h - 1) - 1`.
pub fn lift_modulus(p: u64, h: usize, n: u32) -> Result<WittRingParams> {
    let field = FieldParams::new(p, h)?;
    lift_field_modulus(&field, n)
}

fn lift_field_modulus(field: &FieldParams, n: u32) -> Result<WittRingParams> {
    let (p, h) = (field.p, field.h);
    if n == 0 {
        return Err(Error::InvalidParameter(
            "truncation level must be >= 1".into(),
        ));
    }
    guard(
        "ring size p^(h n)",
        (p as u128).saturating_pow((h as u32).saturating_mul(n)),
        RING_SIZE_LIMIT,
    )?;
    let pn = p.pow(n);
    if n == 1 {
        return Ok(WittRingParams {
            p,
            h,
            n,
            lifted_modulus: field.modulus.clone(),
        });
    }
    // In (Z/p^n)[X]/(f) the element X^(q^(n-1)) is the multiplicative lift of
    // the residue of X; its Galois orbit under x ↦ x^p has the lifted modulus as
    // minimal polynomial.
    let f = &field.modulus;
    let q = field.size();
    let mut tau: Poly = vec![0, 1];
    for _ in 1..n {
        tau = poly::pow_rem(&tau, q, f, pn)?;
    }
    // product over conjugates of (Y - tau^(p^i)), coefficients in (Z/p^n)[X]/(f)
    let mut prod: Vec<Poly> = vec![vec![1]];
    let mut conj = tau;
    for _ in 0..h {
        let mut next: Vec<Poly> = vec![Vec::new(); prod.len() + 1];
        for (k, c) in prod.iter().enumerate() {
            next[k + 1] = poly::add(&next[k + 1], c, pn);
            let term = poly::rem(&poly::mul(c, &conj, pn), f, pn)?;
            next[k] = poly::sub(&next[k], &term, pn);
        }
        prod = next;
        conj = poly::pow_rem(&conj, p, f, pn)?;
    }
    let mut lifted = Vec::with_capacity(h + 1);
    for c in &prod {
        match poly::degree(c) {
            None => lifted.push(0),
            Some(0) => lifted.push(c[0]),
            Some(_) => {
                return Err(Error::Internal(
                    "lifted modulus has non-constant coefficient".into(),
                ))
            }
        }
    }
    let params = WittRingParams {
        p,
        h,
        n,
        lifted_modulus: lifted,
    };
    // verify divisibility of X^(q-1) - 1
    if poly::pow_rem(&[0, 1], q - 1, &params.lifted_modulus, pn)? != vec![1] {
        return Err(Error::Internal(
            "lifted modulus does not divide X^(q-1) - 1".into(),
        ));
    }
    Ok(params)
}

/// An element of a field or Witt ring: coordinates in the power basis of `t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittElem(pub Vec<u64>);

/// Field elements are Witt elements at truncation level one.
pub type FqElem = WittElem;

impl WittElem {
    pub fn coords(&self) -> &[u64] {
        &self.0
    }
}

impl fmt::Display for WittElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// `W_n(F_{p^h})` with precomputed reduction and Frobenius data.
#[derive(Debug)]
pub struct WittRing {
    field: FieldParams,
    params: WittRingParams,
    pn: u64,
    /// `t^(h+j) mod f` for `j < h - 1`.
    reduction: Vec<Vec<u64>>,
    /// `frob[k]` is the matrix of `σ^k` (row-major `h x h`, column `i` = `σ^k(t^i)`).
    frob: Vec<Vec<u64>>,
}

impl PartialEq for WittRing {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params
    }
}
impl Eq for WittRing {}

impl WittRing {
    pub fn new(p: u64, h: usize, n: u32) -> Result<Arc<Self>> {
        let field = FieldParams::new(p, h)?;
        Self::from_field(field, n)
    }

    /// The finite field `F_{p^h}` (truncation level one).
    pub fn field(p: u64, h: usize) -> Result<Arc<Self>> {
        Self::new(p, h, 1)
    }

    pub fn from_field(field: FieldParams, n: u32) -> Result<Arc<Self>> {
        let params = lift_field_modulus(&field, n)?;
        let h = field.h;
        let pn = field.p.pow(n);
        let f = &params.lifted_modulus;
        let mut reduction = Vec::with_capacity(h.saturating_sub(1));
        for j in 0..h.saturating_sub(1) {
            let mut mono = vec![0u64; h + j + 1];
            mono[h + j] = 1;
            let mut r = poly::rem(&mono, f, pn)?;
            r.resize(h, 0);
            reduction.push(r);
        }
        let mut ring = WittRing {
            field,
            params,
            pn,
            reduction,
            frob: Vec::new(),
        };
        // σ(t^i) = (t^p)^i
        let mut t = vec![0u64; h];
        if h == 1 {
            t[0] = (pn - ring.params.lifted_modulus[0] % pn) % pn;
        } else {
            t[1] = 1;
        }
        let tp = ring.pow_raw(&t, ring.field.p);
        let mut sigma = vec![0u64; h * h];
        let mut col = ring.one().0;
        for i in 0..h {
            for r in 0..h {
                sigma[r * h + i] = col[r];
            }
            col = ring.mul_raw(&col, &tp);
        }
        let mut frob = Vec::with_capacity(h);
        let mut cur = identity(h);
        for _ in 0..h {
            frob.push(cur.clone());
            cur = matmul(&sigma, &cur, h, pn);
        }
        if cur != identity(h) {
            return Err(Error::Internal("σ^h is not the identity".into()));
        }
        ring.frob = frob;
        Ok(Arc::new(ring))
    }

    pub fn p(&self) -> u64 {
        self.field.p
    }

    pub fn h(&self) -> usize {
        self.field.h
    }

    pub fn n(&self) -> u32 {
        self.params.n
    }

    /// `p^n`, the characteristic of the ring.
    pub fn modulus(&self) -> u64 {
        self.pn
    }

    pub fn field_params(&self) -> &FieldParams {
        &self.field
    }

    pub fn params(&self) -> &WittRingParams {
        &self.params
    }

    /// Number of ring elements, `p^(h n)`.
    pub fn size(&self) -> u128 {
        (self.pn as u128).pow(self.h() as u32)
    }

    pub fn zero(&self) -> WittElem {
        WittElem(vec![0; self.h()])
    }

    pub fn one(&self) -> WittElem {
        self.from_int(1)
    }

    pub fn from_int(&self, c: i64) -> WittElem {
        let mut v = vec![0; self.h()];
        v[0] = c.rem_euclid(self.pn as i64) as u64;
        WittElem(v)
    }

    /// The distinguished generator `t`.
    pub fn gen(&self) -> WittElem {
        let mut v = vec![0; self.h()];
        if self.h() == 1 {
            v[0] = (self.pn - self.params.lifted_modulus[0] % self.pn) % self.pn;
        } else {
            v[1] = 1;
        }
        WittElem(v)
    }

    pub fn elem(&self, coords: &[u64]) -> Result<WittElem> {
        if coords.len() != self.h() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.h(),
                coords.len()
            )));
        }
        Ok(WittElem(coords.iter().map(|&c| c % self.pn).collect()))
    }

    /// Enumerates every element, in increasing order of `Σ c_i (p^n)^i`.
    pub fn elements(&self) -> Result<Vec<WittElem>> {
        guard("ring enumeration", self.size(), 1 << 24)?;
        let total = self.size() as u64;
        let h = self.h();
        Ok((0..total)
            .map(|code| {
                WittElem(
                    (0..h)
                        .map(|i| (code / self.pn.pow(i as u32)) % self.pn)
                        .collect(),
                )
            })
            .collect())
    }

    pub fn add(&self, a: &WittElem, b: &WittElem) -> WittElem {
        WittElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + y) % self.pn)
                .collect(),
        )
    }

    pub fn sub(&self, a: &WittElem, b: &WittElem) -> WittElem {
        WittElem(
            a.0.iter()
                .zip(&b.0)
                .map(|(x, y)| (x + self.pn - y) % self.pn)
                .collect(),
        )
    }

    pub fn neg(&self, a: &WittElem) -> WittElem {
        WittElem(a.0.iter().map(|x| (self.pn - x) % self.pn).collect())
    }

    pub fn mul(&self, a: &WittElem, b: &WittElem) -> WittElem {
        WittElem(self.mul_raw(&a.0, &b.0))
    }

    pub fn is_zero(&self, a: &WittElem) -> bool {
        a.0.iter().all(|&c| c == 0)
    }

    /// Units are exactly the elements that are nonzero mod `p`.
    pub fn is_unit(&self, a: &WittElem) -> bool {
        a.0.iter().any(|&c| c % self.p() != 0)
    }

    pub fn pow(&self, a: &WittElem, e: u64) -> WittElem {
        WittElem(self.pow_raw(&a.0, e))
    }

    pub fn inv(&self, a: &WittElem) -> Result<WittElem> {
        if !self.is_unit(a) {
            return Err(Error::NotInvertible);
        }
        // |W_n(F_q)^×| = (q - 1) q^(n-1)
        let q = self.field.size() as u128;
        let order = (q - 1) * q.pow(self.n() - 1);
        let e =
            u64::try_from(order - 1).map_err(|_| Error::Internal("unit group too large".into()))?;
        Ok(self.pow(a, e))
    }

    /// `σ^k(x)`; `k` may be negative.
    pub fn frobenius(&self, x: &WittElem, k: i64) -> WittElem {
        let mut out = vec![0u64; self.h()];
        self.frobenius_into(&x.0, k, &mut out);
        WittElem(out)
    }

    pub(crate) fn frobenius_into(&self, x: &[u64], k: i64, out: &mut [u64]) {
        let h = self.h();
        let m = &self.frob[k.rem_euclid(h as i64) as usize];
        for r in 0..h {
            let mut acc = 0u64;
            for c in 0..h {
                acc = (acc + mul_mod(m[r * h + c], x[c], self.pn)) % self.pn;
            }
            out[r] = acc;
        }
    }

    /// Multiplicative lift of a residue-field element.
    pub fn teichmuller(&self, a: &FqElem) -> Result<WittElem> {
        if a.0.len() != self.h() {
            return Err(Error::InvalidParameter(
                "residue element has the wrong degree".into(),
            ));
        }
        let q = self.field.size();
        let mut x = WittElem(a.0.iter().map(|&c| c % self.p()).collect());
        for _ in 0..=self.n() {
            let next = self.pow(&x, q);
            if next == x {
                return Ok(x);
            }
            x = next;
        }
        Err(Error::Internal(
            "Teichmüller iteration did not stabilize".into(),
        ))
    }

    /// Reduction `W_n → W_m` for `m <= n`.
    pub fn truncate(&self, a: &WittElem, m: u32) -> WittElem {
        let pm = self.p().pow(m);
        WittElem(a.0.iter().map(|c| c % pm).collect())
    }

    pub(crate) fn mul_raw(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.h()];
        self.mul_into(a, b, &mut out);
        out
    }

    /// `out = a * b`; `out` must have length `h`.
    pub(crate) fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let h = self.h();
        let pn = self.pn;
        if h == 1 {
            out[0] = mul_mod(a[0], b[0], pn);
            return;
        }
        let mut prod = [0u64; 64];
        let mut heap;
        let buf: &mut [u64] = if 2 * h - 1 <= 64 {
            &mut prod[..2 * h - 1]
        } else {
            heap = vec![0u64; 2 * h - 1];
            &mut heap
        };
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mul_mod(x, y, pn)) % pn;
            }
        }
        out.copy_from_slice(&buf[..h]);
        for j in 0..h - 1 {
            let c = buf[h + j];
            if c == 0 {
                continue;
            }
            let red = &self.reduction[j];
            for r in 0..h {
                out[r] = (out[r] + mul_mod(c, red[r], pn)) % pn;
            }
        }
    }

    fn pow_raw(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let mut acc = self.one().0;
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Evaluates a polynomial with integer coefficients (mod `p^n`) at `x`.
    pub fn eval_int_poly(&self, coeffs: &[u64], x: &WittElem) -> WittElem {
        let mut acc = self.zero();
        for &c in coeffs.iter().rev() {
            acc = self.mul(&acc, x);
            acc = self.add(&acc, &self.from_int((c % self.pn) as i64));
        }
        acc
    }

    /// An embedding of this ring into `target`, which must have the same `p`,
    /// the same truncation level, and an extension degree divisible by `h`.
    pub fn embedding_into(self: &Arc<Self>, target: &Arc<WittRing>) -> Result<RingEmbedding> {
        if target.p() != self.p() || target.n() != self.n() || !target.h().is_multiple_of(self.h())
        {
            return Err(Error::InvalidParameter(
                "incompatible rings for embedding".into(),
            ));
        }
        let q_small = self.field.size() - 1;
        let q_big = target.field.size() - 1;
        guard("embedding search", q_small as u128, 1 << 20)?;
        let base = target.pow(&target.gen(), q_big / q_small);
        let f = &self.params.lifted_modulus;
        let mut image = None;
        let mut cand = target.one();
        for k in 1..=q_small {
            cand = target.mul(&cand, &base);
            if gcd(k, q_small) != 1 && q_small > 1 {
                continue;
            }
            if target.is_zero(&target.eval_int_poly(f, &cand)) {
                image = Some(cand.clone());
                break;
            }
        }
        let image = image
            .ok_or_else(|| Error::Internal("no root of the modulus in the extension".into()))?;
        let mut powers = Vec::with_capacity(self.h());
        let mut cur = target.one();
        for _ in 0..self.h() {
            powers.push(cur.clone());
            cur = target.mul(&cur, &image);
        }
        Ok(RingEmbedding {
            source: Arc::clone(self),
            target: Arc::clone(target),
            powers,
        })
    }
}

/// A ring homomorphism `W_n(F_{p^h}) → W_n(F_{p^{h'}})`.
#[derive(Debug, Clone)]
pub struct RingEmbedding {
    source: Arc<WittRing>,
    target: Arc<WittRing>,
    powers: Vec<WittElem>,
}

impl RingEmbedding {
    pub fn apply(&self, x: &WittElem) -> WittElem {
        let t = &self.target;
        let mut acc = t.zero();
        for (c, pw) in x.0.iter().zip(&self.powers) {
            let scaled = WittElem(pw.0.iter().map(|v| mul_mod(*v, *c, t.modulus())).collect());
            acc = t.add(&acc, &scaled);
        }
        acc
    }

    pub fn source(&self) -> &Arc<WittRing> {
        &self.source
    }

    pub fn target(&self) -> &Arc<WittRing> {
        &self.target
    }
}

fn identity(h: usize) -> Vec<u64> {
    let mut m = vec![0u64; h * h];
    for i in 0..h {
        m[i * h + i] = 1;
    }
    m
}

fn matmul(a: &[u64], b: &[u64], h: usize, m: u64) -> Vec<u64> {
    let mut out = vec![0u64; h * h];
    for i in 0..h {
        for k in 0..h {
            let x = a[i * h + k];
            if x == 0 {
                continue;
            }
            for j in 0..h {
                out[i * h + j] = (out[i * h + j] + mul_mod(x, b[k * h + j], m)) % m;
            }
        }
    }
    out
}

/// The root `u` of `x^2 - a x + q ≡ 0 (mod p^n)` with `u ≡ a (mod p)`.
pub fn unit_root(a: i64, q: u64, p: u64, n: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !q.is_multiple_of(p) {
        return Err(Error::InvalidParameter(format!(
            "{p} does not divide q = {q}"
        )));
    }
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::NoUnitRoot(a));
    }
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParameter("p^n overflows".into()))? as i128;
    let (a, q) = (a as i128, q as i128);
    let f = |x: i128| (x * x - a * x + q).rem_euclid(pn);
    let mut x = a.rem_euclid(pn);
    for _ in 0..=n {
        let fx = f(x);
        if fx == 0 {
            break;
        }
        let d = (2 * x - a).rem_euclid(pn) as u64;
        let dinv = crate::arith::inv_mod(d, pn as u64).ok_or(Error::NotInvertible)? as i128;
        x = (x - fx * dinv % pn).rem_euclid(pn);
    }
    if f(x) != 0 {
        return Err(Error::Internal("unit root Newton iteration failed".into()));
    }
    Ok(x as u64)
}
