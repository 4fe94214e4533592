//! Explicit finite groups given by Cayley tables.

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{inv_mod, is_prime, mul_mod};
use crate::error::{guard, Error, Result};

/// Largest group stored as a full table.
pub const TABLE_LIMIT: usize = 4096;
/// Largest matrix group enumerated by [`FiniteGroupTable::general_linear`].
pub const GL_LIMIT: u128 = 2000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    table: Vec<u16>,
    identity: usize,
    inverse: Vec<u16>,
    labels: Vec<String>,
}

/// A conjugacy class: its members in increasing index order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn rep(&self) -> usize {
        self.members[0]
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

impl FiniteGroupTable {
    /// Validates the group axioms; associativity is exhaustive up to order 512
    /// and sampled on random triples above.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let order = table.len();
        guard("group table order", order as u128, TABLE_LIMIT as u128)?;
        if order == 0 || labels.len() != order || table.iter().any(|r| r.len() != order) {
            return Err(Error::InvalidParameter("malformed group table".into()));
        }
        if table.iter().flatten().any(|&x| x >= order) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        let flat: Vec<u16> = table.iter().flatten().map(|&x| x as u16).collect();
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidParameter("no identity element".into()))?;
        let mut inverse = vec![0u16; order];
        for g in 0..order {
            let gi = (0..order)
                .find(|&x| table[g][x] == identity)
                .ok_or_else(|| Error::InvalidParameter("element without inverse".into()))?;
            inverse[g] = gi as u16;
        }
        let grp = FiniteGroupTable {
            order,
            table: flat,
            identity,
            inverse,
            labels,
        };
        if !grp.check_associative() {
            return Err(Error::InvalidParameter(
                "operation is not associative".into(),
            ));
        }
        Ok(grp)
    }

    /// Builds the table of a group given by explicit elements closed under `mul`.
    pub fn from_elements<T, F, L>(elements: &[T], mul: F, label: L) -> Result<Self>
    where
        T: Clone + Eq + Hash,
        F: Fn(&T, &T) -> T,
        L: Fn(&T) -> String,
    {
        guard(
            "group table order",
            elements.len() as u128,
            TABLE_LIMIT as u128,
        )?;
        let index: HashMap<&T, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        if index.len() != elements.len() {
            return Err(Error::InvalidParameter("duplicate group elements".into()));
        }
        let mut table = Vec::with_capacity(elements.len());
        for a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for b in elements {
                let c = mul(a, b);
                let &k = index
                    .get(&c)
                    .ok_or_else(|| Error::InvalidParameter("element set is not closed".into()))?;
                row.push(k);
            }
            table.push(row);
        }
        Self::from_table(table, elements.iter().map(label).collect())
    }

    pub fn cyclic(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameter("cyclic group of order 0".into()));
        }
        Self::abelian(&[k as u64])
    }

    /// `⊕ Z/m_i` with elements ordered lexicographically, first factor slowest.
    pub fn abelian(moduli: &[u64]) -> Result<Self> {
        if moduli.contains(&0) {
            return Err(Error::InvalidParameter("moduli must be >= 1".into()));
        }
        let size: u128 = moduli.iter().map(|&m| m as u128).product();
        guard("group table order", size, TABLE_LIMIT as u128)?;
        let elems = abelian_elements(moduli);
        Self::from_elements(
            &elems,
            |a, b| {
                a.iter()
                    .zip(b)
                    .zip(moduli)
                    .map(|((x, y), m)| (x + y) % m)
                    .collect::<Vec<u64>>()
            },
            |a| a.iter().map(u64::to_string).collect::<Vec<_>>().join(","),
        )
    }

    /// The symmetric group on `k` letters, permutations in lexicographic order.
    pub fn symmetric(k: usize) -> Result<Self> {
        if k == 0 || k > 6 {
            return Err(Error::InvalidParameter(
                "symmetric groups are supported for 1 <= k <= 6".into(),
            ));
        }
        let mut perms = vec![(0..k).collect::<Vec<usize>>()];
        loop {
            let mut next = perms.last().expect("nonempty").clone();
            let Some(i) = (0..k.saturating_sub(1))
                .rev()
                .find(|&i| next[i] < next[i + 1])
            else {
                break;
            };
            let j = (i + 1..k)
                .rev()
                .find(|&j| next[j] > next[i])
                .expect("successor exists");
            next.swap(i, j);
            next[i + 1..].reverse();
            perms.push(next);
        }
        // (a b)(x) = a(b(x))
        Self::from_elements(
            &perms,
            |a, b| b.iter().map(|&x| a[x]).collect::<Vec<usize>>(),
            |a| {
                a.iter()
                    .map(|x| (x + 1).to_string())
                    .collect::<Vec<_>>()
                    .join("")
            },
        )
    }

    /// `GL_g(Z/p^n)` by enumeration; matrices row-major, in lexicographic order.
    pub fn general_linear(g: usize, p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if g == 0 || n == 0 {
            return Err(Error::InvalidParameter("g and n must be >= 1".into()));
        }
        let order = gl_order(g, p, n)?;
        guard("GL order", order, GL_LIMIT)?;
        let m = p.pow(n);
        let mats: Vec<Vec<u64>> = abelian_elements(&vec![m; g * g])
            .into_iter()
            .filter(|a| det_is_unit(a, g, p))
            .collect();
        Self::from_elements(
            &mats,
            |a, b| {
                let mut c = vec![0u64; g * g];
                for i in 0..g {
                    for k in 0..g {
                        for j in 0..g {
                            c[i * g + j] =
                                (c[i * g + j] + mul_mod(a[i * g + k], b[k * g + j], m)) % m;
                        }
                    }
                }
                c
            },
            |a| {
                let rows: Vec<String> = a
                    .chunks(g)
                    .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
                    .collect();
                format!("[{}]", rows.join(";"))
            },
        )
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = self.identity;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, a: usize, by: usize) -> usize {
        self.mul(self.mul(by, a), self.inv(by))
    }

    fn check_associative(&self) -> bool {
        let n = self.order;
        let ok = |a: usize, b: usize, c: usize| {
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        };
        if n <= 512 {
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| ok(a, b, c))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            (0..200_000).all(|_| {
                ok(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )
            })
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Classes ordered by size, then by least member.
    pub fn conjugacy_classes(&self) -> Vec<ConjugacyClass> {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut members: Vec<usize> = (0..n).map(|x| self.conjugate(g, x)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            classes.push(ConjugacyClass { members });
        }
        classes.sort_by_key(|c| (c.size(), c.rep()));
        classes
    }

    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&x| self.mul(x, a) == self.mul(a, x))
            .collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&a| (0..self.order).all(|x| self.mul(x, a) == self.mul(a, x)))
            .collect()
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || subset.iter().any(|&x| x >= self.order) {
            return false;
        }
        let mut member = vec![false; self.order];
        for &x in subset {
            member[x] = true;
        }
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| member[self.mul(a, self.inv(b))]))
    }

    pub fn is_normal(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in subset {
            member[x] = true;
        }
        self.is_subgroup(subset)
            && subset
                .iter()
                .all(|&a| (0..self.order).all(|g| member[self.conjugate(a, g)]))
    }

    /// The subgroup on `subset` as a table of its own (labels kept).
    pub fn subgroup(&self, subset: &[usize]) -> Result<FiniteGroupTable> {
        if !self.is_subgroup(subset) {
            return Err(Error::NotSubgroup(format!("{} elements", subset.len())));
        }
        let mut elems = subset.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        Self::from_table(
            table,
            elems.iter().map(|&e| self.labels[e].clone()).collect(),
        )
    }

    /// Subgroup generated by `gens`; `None` as soon as it would exceed `cap`
    /// elements or contain an element rejected by `allow`.
    fn generate_bounded(
        &self,
        gens: &[usize],
        cap: usize,
        allow: &dyn Fn(usize) -> bool,
    ) -> Option<Vec<usize>> {
        let mut member = vec![false; self.order];
        let mut elems = vec![self.identity];
        member[self.identity] = true;
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    if !allow(y) || elems.len() == cap {
                        return None;
                    }
                    member[y] = true;
                    elems.push(y);
                }
            }
        }
        Some(elems)
    }

    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut s = self
            .generate_bounded(gens, self.order, &|_| true)
            .expect("no cap");
        s.sort_unstable();
        s
    }

    /// Largest normal `p`-subgroup.
    pub fn largest_normal_p_subgroup(&self, p: u64) -> Vec<usize> {
        let mut p_part = 1usize;
        while self.order.is_multiple_of(p_part * p as usize) {
            p_part *= p as usize;
        }
        let is_p_elem = |x: usize| {
            let mut o = self.element_order(x);
            while o.is_multiple_of(p as usize) {
                o /= p as usize;
            }
            o == 1
        };
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        for x in 0..self.order {
            if member[x] || !is_p_elem(x) {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(x, g)).collect();
            class.sort_unstable();
            class.dedup();
            if let Some(closure) = self.generate_bounded(&class, p_part, &is_p_elem) {
                // a finite group of p-elements is a p-group
                for y in closure {
                    member[y] = true;
                }
            }
        }
        (0..self.order).filter(|&x| member[x]).collect()
    }

    /// Quotient by a normal subgroup; returns the table and, for each element,
    /// the index of its coset. Cosets are indexed by their least member.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FiniteGroupTable, Vec<usize>)> {
        if !self.is_normal(normal) {
            return Err(Error::NotSubgroup("not a normal subgroup".into()));
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for g in 0..self.order {
            if coset_of[g] != usize::MAX {
                continue;
            }
            let idx = reps.len();
            reps.push(g);
            for &k in normal {
                coset_of[self.mul(g, k)] = idx;
            }
        }
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        let labels = reps.iter().map(|&r| self.labels[r].clone()).collect();
        Ok((Self::from_table(table, labels)?, coset_of))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }
}

fn abelian_elements(moduli: &[u64]) -> Vec<Vec<u64>> {
    let size: u64 = moduli.iter().product();
    (0..size)
        .map(|mut code| {
            let mut v = vec![0u64; moduli.len()];
            for (i, &m) in moduli.iter().enumerate().rev() {
                v[i] = code % m;
                code /= m;
            }
            v
        })
        .collect()
}

/// `|GL_g(Z/p^n)| = |GL_g(F_p)| · p^(g² (n-1))`.
pub fn gl_order(g: usize, p: u64, n: u32) -> Result<u128> {
    let overflow = || Error::InvalidParameter("group order overflows".into());
    let q = p as u128;
    let qg = q.checked_pow(g as u32).ok_or_else(overflow)?;
    let mut ord: u128 = 1;
    for i in 0..g {
        ord = ord.checked_mul(qg - q.pow(i as u32)).ok_or_else(overflow)?;
    }
    let lift = q
        .checked_pow((g * g) as u32 * (n - 1))
        .ok_or_else(overflow)?;
    ord.checked_mul(lift).ok_or_else(overflow)
}

/// Invertibility over `Z/p^n` only depends on the determinant mod `p`.
fn det_is_unit(a: &[u64], g: usize, p: u64) -> bool {
    let mut b: Vec<u64> = a.iter().map(|x| x % p).collect();
    for c in 0..g {
        let Some(r) = (c..g).find(|&r| b[r * g + c] != 0) else {
            return false;
        };
        for j in 0..g {
            b.swap(r * g + j, c * g + j);
        }
        let inv = inv_mod(b[c * g + c], p).expect("nonzero");
        for r2 in c + 1..g {
            let f = mul_mod(b[r2 * g + c], inv, p);
            for j in 0..g {
                b[r2 * g + j] = (b[r2 * g + j] + p - mul_mod(f, b[c * g + j], p)) % p;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_classes() {
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| c.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(!s3.is_abelian());
        assert_eq!(s3.center(), vec![s3.identity()]);
    }

    #[test]
    fn gl_orders() {
        assert_eq!(
            FiniteGroupTable::general_linear(2, 2, 1).unwrap().order(),
            6
        );
        assert_eq!(
            FiniteGroupTable::general_linear(2, 3, 1).unwrap().order(),
            48
        );
        assert_eq!(
            FiniteGroupTable::general_linear(1, 5, 2).unwrap().order(),
            20
        );
        assert_eq!(
            FiniteGroupTable::general_linear(2, 2, 2).unwrap().order(),
            96
        );
        assert!(matches!(
            FiniteGroupTable::general_linear(2, 3, 2),
            Err(Error::SizeGuard { .. })
        ));
    }

    #[test]
    fn normal_p_subgroups() {
        let s3 = FiniteGroupTable::symmetric(3).unwrap();
        assert_eq!(s3.largest_normal_p_subgroup(3).len(), 3);
        assert_eq!(s3.largest_normal_p_subgroup(2).len(), 1);
        let s4 = FiniteGroupTable::symmetric(4).unwrap();
        assert_eq!(s4.largest_normal_p_subgroup(2).len(), 4);
        let z12 = FiniteGroupTable::cyclic(12).unwrap();
        let o2 = z12.largest_normal_p_subgroup(2);
        assert_eq!(o2.len(), 4);
        let (q, _) = z12.quotient(&o2).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_cyclic());
    }
}
