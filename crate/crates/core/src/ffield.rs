//! Exact arithmetic in GF(p^e).
//!
//! Elements are packed integers: the base-`p` digits of an element are its
//! coefficients in the power basis `1, x, x^2, ...` of `GF(p)[x]/(f)`, where
//! `f` is the lexicographically least primitive polynomial of degree `e`.
//! Multiplication goes through exp/log tables built from the root `x` of `f`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest field order for which tables are built.
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// A field element, packed as base-`p` digits of its power-basis coordinates.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
#[serde(transparent)]
pub struct Fe(pub u32);

impl Fe {
    pub const ZERO: Fe = Fe(0);
    pub const ONE: Fe = Fe(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^e` into `(p, e)` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// The finite field GF(p^e).
pub struct FiniteField {
    p: u32,
    e: u32,
    order: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.e, self.modulus)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

/// Builds GF(p^e) behind an `Arc` so that algebras and groups can share it.
pub fn make_field(p: u64, e: u32) -> Result<Arc<FiniteField>> {
    FiniteField::new(p, e).map(Arc::new)
}

impl FiniteField {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let order = p.checked_pow(e).filter(|&o| o <= MAX_FIELD_ORDER).ok_or(Error::FieldTooLarge {
            p,
            e,
            bound: MAX_FIELD_ORDER,
        })?;
        let (p, order) = (p as u32, order as u32);
        let (modulus, exp) = least_primitive_polynomial(p, e, order);
        let n = (order - 1) as usize;
        let mut log = vec![0u32; order as usize];
        for (i, &v) in exp.iter().enumerate() {
            log[v as usize] = i as u32;
        }
        let mut doubled = exp.clone();
        doubled.extend_from_slice(&exp);
        debug_assert_eq!(doubled.len(), 2 * n);
        Ok(FiniteField { p, e, order, modulus, exp: doubled, log })
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients of the defining polynomial, lowest degree first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.order).map(Fe)
    }

    /// Generator of the multiplicative group (the class of `x`).
    pub fn generator(&self) -> Fe {
        Fe(self.exp[1 % (self.order as usize - 1).max(1)])
    }

    /// Image of the integer `n` in the prime field.
    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if self.e == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= self.p { s - self.p } else { s });
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        if self.p == 2 {
            return a;
        }
        if self.e == 1 {
            return Fe(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe::ZERO;
        }
        Fe(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// `a + b * c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: Fe, b: Fe, c: Fe) -> Fe {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a.0 == 0 {
            return None;
        }
        let n = self.order - 1;
        Some(Fe(self.exp[((n - self.log[a.0 as usize]) % n) as usize]))
    }

    pub fn pow(&self, a: Fe, k: u64) -> Fe {
        if k == 0 {
            return Fe::ONE;
        }
        if a.0 == 0 {
            return Fe::ZERO;
        }
        let n = (self.order - 1) as u64;
        let l = (self.log[a.0 as usize] as u64 * (k % n)) % n;
        Fe(self.exp[l as usize])
    }

    /// Discrete logarithm base [`generator`](Self::generator).
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)? as u64;
        let n = (self.order - 1) as u64;
        Some(n / gcd(n, l))
    }

    /// An element of multiplicative order exactly `n`.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<Fe> {
        let group = (self.order - 1) as u64;
        if n == 0 || !group.is_multiple_of(n) {
            return Err(Error::RootOrder { n, order: group });
        }
        Ok(Fe(self.exp[(group / n) as usize % group as usize]))
    }

    /// Digits of `a` over the prime field, lowest power first.
    pub fn digits(&self, a: Fe) -> Vec<u32> {
        let mut x = a.0;
        (0..self.e)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Searches monic degree-`e` polynomials in lexicographic order of their
/// low-order coefficients and returns the first one whose root generates the
/// multiplicative group, together with the power table of that root.
fn least_primitive_polynomial(p: u32, e: u32, order: u32) -> (Vec<u32>, Vec<u32>) {
    if e == 1 {
        // Least primitive root g, modulus x - g.
        let g = (1..p.max(2))
            .find(|&g| {
                let mut v = 1u64;
                let mut period = 0;
                loop {
                    v = v * g as u64 % p as u64;
                    period += 1;
                    if v == 1 {
                        break;
                    }
                }
                period == p - 1
            })
            .unwrap_or(1);
        let mut exp = Vec::with_capacity((p - 1) as usize);
        let mut v = 1u64;
        for _ in 0..p - 1 {
            exp.push(v as u32);
            v = v * g as u64 % p as u64;
        }
        return (vec![(p - g) % p, 1], exp);
    }
    let n = (order - 1) as usize;
    // `low` packs the coefficients of x^0 .. x^(e-1).
    for low in 0..order {
        let coeffs: Vec<u32> = (0..e).map(|i| low / p.pow(i) % p).collect();
        if coeffs[0] == 0 {
            continue;
        }
        if let Some(exp) = power_table(p, e, &coeffs, n) {
            let mut modulus = coeffs;
            modulus.push(1);
            return (modulus, exp);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Powers of `x` modulo `x^e + c_{e-1} x^{e-1} + ... + c_0`, if `x` has order `n`.
fn power_table(p: u32, e: u32, low: &[u32], n: usize) -> Option<Vec<u32>> {
    let e = e as usize;
    let mut cur = vec![0u32; e];
    cur[0] = 1;
    let pack = |v: &[u32]| v.iter().rev().fold(0u32, |acc, &d| acc * p + d);
    let mut exp = Vec::with_capacity(n);
    for i in 0..n {
        let packed = pack(&cur);
        if i > 0 && packed == 1 {
            return None;
        }
        exp.push(packed);
        // multiply by x, then reduce x^e = -(c_0 + ... + c_{e-1} x^{e-1})
        let top = cur[e - 1];
        for j in (1..e).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        if top != 0 {
            for j in 0..e {
                cur[j] = (cur[j] + (p - low[j]) * top) % p;
            }
        }
    }
    (pack(&cur) == 1).then_some(exp)
}

/// An embedding GF(p^f) -> GF(p^e) for `f | e`, with relative trace.
pub struct FieldEmbedding {
    sub: Arc<FiniteField>,
    sup: Arc<FiniteField>,
    image: Vec<Fe>,
    preimage: HashMap<Fe, Fe>,
}

impl FieldEmbedding {
    pub fn new(sub: Arc<FiniteField>, sup: Arc<FiniteField>) -> Result<Self> {
        let incompatible = Error::IncompatibleFields { sub: sub.order() as u64, sup: sup.order() as u64 };
        if sub.characteristic() != sup.characteristic() || !sup.degree().is_multiple_of(sub.degree()) {
            return Err(incompatible);
        }
        // the image of `x` is the least root of the sub-field modulus in `sup`
        let root = sup
            .elements()
            .find(|&z| {
                let mut acc = Fe::ZERO;
                for &c in sub.modulus().iter().rev() {
                    acc = sup.add(sup.mul(acc, z), Fe(c));
                }
                acc.is_zero()
            })
            .ok_or(incompatible)?;
        let mut image = vec![Fe::ZERO; sub.order() as usize];
        let mut power = Fe::ONE;
        let g = sub.generator();
        let mut elem = Fe::ONE;
        for _ in 0..sub.order() - 1 {
            image[elem.0 as usize] = power;
            power = sup.mul(power, root);
            elem = sub.mul(elem, g);
        }
        let preimage = image.iter().enumerate().map(|(i, &z)| (z, Fe(i as u32))).collect();
        Ok(FieldEmbedding { sub, sup, image, preimage })
    }

    pub fn sub(&self) -> &Arc<FiniteField> {
        &self.sub
    }

    pub fn sup(&self) -> &Arc<FiniteField> {
        &self.sup
    }

    pub fn embed(&self, z: Fe) -> Fe {
        self.image[z.0 as usize]
    }

    /// Inverse of [`embed`](Self::embed) on its image.
    pub fn restrict(&self, z: Fe) -> Option<Fe> {
        self.preimage.get(&z).copied()
    }

    /// Relative trace `z + z^s + z^(s^2) + ...` with `s = |sub|`, returned in `sub`.
    pub fn trace(&self, z: Fe) -> Result<Fe> {
        let s = self.sub.order() as u64;
        let steps = self.sup.degree() / self.sub.degree();
        let mut acc = Fe::ZERO;
        let mut conj = z;
        for _ in 0..steps {
            acc = self.sup.add(acc, conj);
            conj = self.sup.pow(conj, s);
        }
        self.restrict(acc).ok_or_else(|| Error::Internal("trace left the subfield".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = make_field(2, 1).unwrap();
        assert_eq!(f2.elements().count(), 2);
        assert_eq!(f2.mul(Fe::ONE, Fe::ONE), Fe::ONE);
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.mult_order(f9.generator()), Some(8));
        for x in f9.elements() {
            assert_eq!(f9.pow(x, 9), x);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 17), Err(Error::FieldTooLarge { .. })));
        assert!(make_field(2, 0).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f9 = make_field(3, 2).unwrap();
        let xi = f9.primitive_root_of_unity(8).unwrap();
        assert_eq!(f9.mult_order(xi), Some(8));
        let f5 = make_field(5, 1).unwrap();
        let eta = f5.primitive_root_of_unity(4).unwrap();
        assert_eq!(f5.mult_order(eta), Some(4));
        let f7 = make_field(7, 1).unwrap();
        assert_eq!(f7.primitive_root_of_unity(5).unwrap_err(), Error::RootOrder { n: 5, order: 6 });
    }

    #[test]
    fn trace_is_frobenius_fixed() {
        for p in [3u64, 7] {
            let sub = make_field(p, 1).unwrap();
            let sup = make_field(p, 2).unwrap();
            let emb = FieldEmbedding::new(sub.clone(), sup.clone()).unwrap();
            let n = if p == 3 { 8 } else { 16 };
            let xi = sup.primitive_root_of_unity(n).unwrap();
            let a = sup.add(xi, sup.pow(xi, p));
            assert_eq!(sup.pow(a, p), a);
            let a_sub = emb.trace(xi).unwrap();
            assert_eq!(emb.embed(a_sub), a);
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let sub = make_field(3, 1).unwrap();
        let sup = make_field(3, 2).unwrap();
        let emb = FieldEmbedding::new(sub.clone(), sup.clone()).unwrap();
        for a in sub.elements() {
            for b in sub.elements() {
                assert_eq!(emb.embed(sub.add(a, b)), sup.add(emb.embed(a), emb.embed(b)));
                assert_eq!(emb.embed(sub.mul(a, b)), sup.mul(emb.embed(a), emb.embed(b)));
            }
        }
        let g4 = make_field(2, 2).unwrap();
        let g16 = make_field(2, 4).unwrap();
        let g8 = make_field(2, 3).unwrap();
        assert!(FieldEmbedding::new(g4.clone(), g16).is_ok());
        assert!(FieldEmbedding::new(g4, g8).is_err());
    }

    #[test]
    fn frobenius_has_order_e_exhaustively() {
        for (p, e) in [(2u64, 1u32), (2, 4), (3, 3), (5, 2), (2, 14), (7, 2)] {
            let f = make_field(p, e).unwrap();
            let mut nontrivial_below_e = vec![false; e as usize];
            for x in f.elements() {
                let mut y = x;
                for k in 1..=e {
                    y = f.frobenius(y);
                    if k < e && y != x {
                        nontrivial_below_e[k as usize] = true;
                    }
                }
                assert_eq!(y, x);
            }
            for k in 1..e as usize {
                assert!(nontrivial_below_e[k], "frobenius^{k} trivial on GF({p}^{e})");
            }
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(31), Some((31, 1)));
        assert_eq!(prime_power(1), None);
    }
}
