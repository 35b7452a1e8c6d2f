//! GL2(q) as an explicit finite group.
//!
//! All `(q^2 - 1)(q^2 - q)` elements are enumerated once, sorted by their
//! packed code, and scanned by brute force. At `q <= 31` this stays below a
//! million elements, which is small enough for exact scans.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{make_field, prime_power, Fe, FieldEmbedding, FiniteField};

pub const DEFAULT_Q_BOUND: u64 = 13;
pub const HARD_Q_BOUND: u64 = 31;

/// An invertible 2x2 matrix `[[a, b], [c, d]]`, entries row-major.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement(pub [Fe; 4]);

/// GL2(q) with its element cache.
pub struct Gl2 {
    q: u64,
    field: Arc<FiniteField>,
    elements: Vec<GroupElement>,
    index: Vec<u32>,
}

const NONE: u32 = u32::MAX;

/// Builds GL2(q) for `q` up to [`DEFAULT_Q_BOUND`].
pub fn build_gl2(q: u64) -> Result<Gl2> {
    Gl2::new(q, DEFAULT_Q_BOUND)
}

/// Validates that `q` is an odd prime power, returning `(p, f)` with `q = p^f`.
pub fn check_q(q: u64, bound: u64) -> Result<(u64, u32)> {
    if q.is_multiple_of(2) {
        return Err(Error::InvalidQ { q, reason: "q must be an odd prime power" });
    }
    let pf = prime_power(q).ok_or(Error::InvalidQ { q, reason: "q must be a prime power" })?;
    if q > bound.min(HARD_Q_BOUND) {
        return Err(Error::Bound(format!("q = {q} exceeds the configured bound {}", bound.min(HARD_Q_BOUND))));
    }
    Ok(pf)
}

impl Gl2 {
    pub fn new(q: u64, bound: u64) -> Result<Gl2> {
        let (p, f) = check_q(q, bound)?;
        let field = make_field(p, f)?;
        let n = q as usize;
        let mut elements = Vec::with_capacity((n * n - 1) * (n * n - n));
        let mut index = vec![NONE; n * n * n * n];
        for code in 0..n * n * n * n {
            let m = GroupElement([
                Fe((code % n) as u32),
                Fe((code / n % n) as u32),
                Fe((code / (n * n) % n) as u32),
                Fe((code / (n * n * n)) as u32),
            ]);
            if !det(&field, &m).is_zero() {
                index[code] = elements.len() as u32;
                elements.push(m);
            }
        }
        Ok(Gl2 { q, field, elements, index })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> GroupElement {
        self.elements[i]
    }

    pub fn code(&self, g: &GroupElement) -> usize {
        let n = self.q as usize;
        let [a, b, c, d] = g.0;
        a.0 as usize + n * (b.0 as usize + n * (c.0 as usize + n * d.0 as usize))
    }

    pub fn index_of(&self, g: &GroupElement) -> Option<usize> {
        let i = self.index[self.code(g)];
        (i != NONE).then_some(i as usize)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement([Fe::ONE, Fe::ZERO, Fe::ZERO, Fe::ONE])
    }

    pub fn scalar(&self, s: Fe) -> GroupElement {
        GroupElement([s, Fe::ZERO, Fe::ZERO, s])
    }

    pub fn from_ints(&self, entries: [i64; 4]) -> GroupElement {
        GroupElement(entries.map(|v| self.field.from_int(v)))
    }

    #[inline]
    pub fn mul(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let [a, b, c, d] = x.0;
        let [e, g, h, k] = y.0;
        GroupElement([
            f.add(f.mul(a, e), f.mul(b, h)),
            f.add(f.mul(a, g), f.mul(b, k)),
            f.add(f.mul(c, e), f.mul(d, h)),
            f.add(f.mul(c, g), f.mul(d, k)),
        ])
    }

    pub fn inv(&self, x: &GroupElement) -> GroupElement {
        let f = &*self.field;
        let [a, b, c, d] = x.0;
        let di = f.inv(det(f, x)).expect("invertible");
        GroupElement([f.mul(di, d), f.mul(di, f.neg(b)), f.mul(di, f.neg(c)), f.mul(di, a)])
    }

    pub fn pow(&self, x: &GroupElement, k: u64) -> GroupElement {
        let mut out = self.identity();
        let mut base = *x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                out = self.mul(&out, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        out
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conj(&self, g: &GroupElement, g_inv: &GroupElement, x: &GroupElement) -> GroupElement {
        self.mul(&self.mul(g, x), g_inv)
    }

    pub fn element_order(&self, x: &GroupElement) -> u64 {
        let id = self.identity();
        let mut y = *x;
        let mut k = 1;
        while y != id {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }

    pub fn det(&self, x: &GroupElement) -> Fe {
        det(&self.field, x)
    }

    pub fn is_central(&self, x: &GroupElement) -> bool {
        let [a, b, c, d] = x.0;
        b.is_zero() && c.is_zero() && a == d
    }

    /// A generating set: `diag(e, 1)`, the unipotent `[[1,1],[0,1]]` and the swap.
    pub fn generators(&self) -> Vec<GroupElement> {
        let e = self.field.generator();
        vec![
            GroupElement([e, Fe::ZERO, Fe::ZERO, Fe::ONE]),
            GroupElement([Fe::ONE, Fe::ONE, Fe::ZERO, Fe::ONE]),
            GroupElement([Fe::ZERO, Fe::ONE, Fe::ONE, Fe::ZERO]),
        ]
    }

    /// Smallest subgroup containing `gens`.
    pub fn subgroup_closure(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        let limit = self.order();
        let id = self.identity();
        let mut seen: HashSet<GroupElement> = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.mul(&x, g);
                if seen.insert(y) {
                    if seen.len() > limit {
                        return Err(Error::Internal("closure left the group".into()));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut codes: Vec<usize> = seen.iter().map(|g| self.code(g)).collect();
        codes.sort_unstable();
        Ok(Subgroup { gens: gens.to_vec(), codes })
    }

    /// Orbit partition of G under conjugation.
    pub fn conjugacy_classes(&self) -> ConjClassTable {
        let gens: Vec<(GroupElement, GroupElement)> =
            self.generators().into_iter().map(|g| (g, self.inv(&g))).collect();
        let mut class_of = vec![NONE; self.order()];
        let mut classes = Vec::new();
        for start in 0..self.order() {
            if class_of[start] != NONE {
                continue;
            }
            let id = classes.len() as u32;
            class_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let x = self.elements[members[head]];
                head += 1;
                for (g, gi) in &gens {
                    let y = self.index_of(&self.conj(g, gi, &x)).expect("closed");
                    if class_of[y] == NONE {
                        class_of[y] = id;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass { representative: start, members });
        }
        ConjClassTable { classes, class_of }
    }

    /// Representatives `g` with `g Q g^-1 <= R`, one per induced map on `Q`.
    pub fn transporter_maps(&self, q_sub: &Subgroup, r_sub: &Subgroup) -> Vec<GroupElement> {
        let gens = q_sub.generators();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut reps = Vec::new();
        for g in &self.elements {
            let gi = self.inv(g);
            let images: Option<Vec<usize>> = gens
                .iter()
                .map(|h| {
                    let c = self.code(&self.conj(g, &gi, h));
                    r_sub.contains_code(c).then_some(c)
                })
                .collect();
            if let Some(images) = images {
                if seen.insert(images) {
                    reps.push(*g);
                }
            }
        }
        reps
    }

    /// Sylow 2-subgroup generated by explicit matrices, with the defining relations checked.
    pub fn sylow2(&self) -> Result<Sylow> {
        let q = self.q;
        let f = &*self.field;
        let two_part = two_part(self.order() as u64);
        let fail = |what: &str| Error::Internal(format!("Sylow relation check failed at q = {q}: {what}"));
        let sylow = if q % 4 == 3 {
            // 2^(m-2) exactly divides q + 1
            let m = two_adic(q + 1) + 2;
            let big = make_field(f.characteristic() as u64, 2 * f.degree())?;
            let emb = FieldEmbedding::new(self.field.clone(), big.clone())?;
            let xi = big.primitive_root_of_unity(1 << (m - 1))?;
            let a = emb.trace(xi)?;
            let x = GroupElement([Fe::ZERO, Fe::ONE, Fe::ONE, a]);
            let t = GroupElement([Fe::ONE, a, Fe::ZERO, f.neg(Fe::ONE)]);
            let id = self.identity();
            if self.pow(&x, 1 << (m - 1)) != id || self.pow(&x, 1 << (m - 2)) == id {
                return Err(fail("x must have order 2^(m-1)"));
            }
            if self.mul(&t, &t) != id || t == id {
                return Err(fail("t must be an involution"));
            }
            if self.mul(&self.mul(&t, &x), &t) != self.pow(&x, (1 << (m - 2)) - 1) {
                return Err(fail("txt = x^(2^(m-2) - 1)"));
            }
            let group = self.subgroup_closure(&[x, t])?;
            Sylow { kind: SylowKind::Semidihedral, m, x, y: None, t, trace_parameter: Some(a), root: xi.0, group }
        } else {
            // 2^m exactly divides q - 1
            let m = two_adic(q - 1);
            let eta = f.primitive_root_of_unity(1 << m)?;
            let x = GroupElement([eta, Fe::ZERO, Fe::ZERO, Fe::ONE]);
            let y = GroupElement([Fe::ONE, Fe::ZERO, Fe::ZERO, eta]);
            let t = GroupElement([Fe::ZERO, Fe::ONE, Fe::ONE, Fe::ZERO]);
            if self.mul(&x, &y) != self.mul(&y, &x) {
                return Err(fail("xy = yx"));
            }
            if self.mul(&self.mul(&t, &x), &t) != y {
                return Err(fail("txt = y"));
            }
            let group = self.subgroup_closure(&[x, y, t])?;
            Sylow { kind: SylowKind::Wreath, m, x, y: Some(y), t, trace_parameter: None, root: eta.0, group }
        };
        if sylow.group.order() as u64 != two_part {
            return Err(fail("order differs from the 2-part of |G|"));
        }
        Ok(sylow)
    }
}

fn det(f: &FiniteField, x: &GroupElement) -> Fe {
    let [a, b, c, d] = x.0;
    f.sub(f.mul(a, d), f.mul(b, c))
}

/// Exponent of 2 in `n`.
pub fn two_adic(n: u64) -> u32 {
    n.trailing_zeros()
}

pub fn two_part(n: u64) -> u64 {
    1 << n.trailing_zeros()
}

/// A subgroup of GL2(q): generators plus the sorted codes of all elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    gens: Vec<GroupElement>,
    codes: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.codes.len()
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.gens
    }

    pub fn codes(&self) -> &[usize] {
        &self.codes
    }

    pub fn contains_code(&self, code: usize) -> bool {
        self.codes.binary_search(&code).is_ok()
    }

    pub fn contains(&self, g: &Gl2, x: &GroupElement) -> bool {
        self.contains_code(g.code(x))
    }

    pub fn elements(&self, g: &Gl2) -> Vec<GroupElement> {
        self.codes.iter().map(|&c| g.elements[g.index[c] as usize]).collect()
    }

    /// Generator matrices as row-major entry lists, for reports.
    pub fn generator_entries(&self) -> Vec<[u32; 4]> {
        self.gens.iter().map(|g| g.0.map(|e| e.0)).collect()
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowKind {
    /// `q = 3 mod 4`: semidihedral of order `2^m`.
    Semidihedral,
    /// `q = 1 mod 4`: `C_{2^m} wr C_2` of order `2^(2m+1)`.
    Wreath,
}

/// A Sylow 2-subgroup with its named generators.
#[derive(Clone, Debug)]
pub struct Sylow {
    pub kind: SylowKind,
    pub m: u32,
    pub x: GroupElement,
    pub y: Option<GroupElement>,
    pub t: GroupElement,
    /// `a = xi + xi^q` in the semidihedral case.
    pub trace_parameter: Option<Fe>,
    /// Packed value of the chosen root of unity (in `F_{q^2}` or `F_q`).
    pub root: u32,
    pub group: Subgroup,
}

#[derive(Clone, Debug)]
pub struct ConjClass {
    pub representative: usize,
    pub members: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// Conjugacy classes of a group, with the class index of every element.
#[derive(Clone, Debug)]
pub struct ConjClassTable {
    pub classes: Vec<ConjClass>,
    pub class_of: Vec<u32>,
}

impl ConjClassTable {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(ConjClass::size).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_force_order(q: u64) -> usize {
        let (p, e) = prime_power(q).unwrap();
        let f = make_field(p, e).unwrap();
        let mut count = 0;
        for a in f.elements() {
            for b in f.elements() {
                for c in f.elements() {
                    for d in f.elements() {
                        if !f.sub(f.mul(a, d), f.mul(b, c)).is_zero() {
                            count += 1;
                        }
                    }
                }
            }
        }
        count
    }

    #[test]
    fn orders_match_enumeration() {
        for q in [3u64, 5, 9] {
            let g = build_gl2(q).unwrap();
            assert_eq!(g.order(), brute_force_order(q));
            assert_eq!(g.order() as u64, (q * q - 1) * (q * q - q));
        }
        assert_eq!(build_gl2(3).unwrap().order(), 48);
        assert_eq!(build_gl2(5).unwrap().order(), 480);
    }

    #[test]
    fn rejects_invalid_q() {
        assert!(matches!(build_gl2(4), Err(Error::InvalidQ { .. })));
        assert!(matches!(build_gl2(15), Err(Error::InvalidQ { .. })));
        assert!(matches!(build_gl2(17), Err(Error::Bound(_))));
        assert!(Gl2::new(17, 31).is_ok());
        assert!(matches!(Gl2::new(37, 41), Err(Error::Bound(_))));
    }

    #[test]
    fn generators_generate() {
        for q in [3u64, 5, 7] {
            let g = build_gl2(q).unwrap();
            let all = g.subgroup_closure(&g.generators()).unwrap();
            assert_eq!(all.order(), g.order());
        }
    }

    #[test]
    fn sylow_orders() {
        let expect = [(3u64, 16usize, 4u32), (5, 32, 2), (7, 32, 5), (9, 128, 3), (11, 16, 4), (13, 32, 2)];
        for (q, order, m) in expect {
            let g = build_gl2(q).unwrap();
            let s = g.sylow2().unwrap();
            assert_eq!(s.group.order(), order, "q = {q}");
            assert_eq!(s.m, m, "q = {q}");
        }
        let g7 = build_gl2(7).unwrap();
        let s = g7.sylow2().unwrap();
        let txt = g7.mul(&g7.mul(&s.t, &s.x), &s.t);
        assert_eq!(txt, g7.pow(&s.x, 7));
    }

    #[test]
    fn closures() {
        let g = build_gl2(3).unwrap();
        assert_eq!(g.subgroup_closure(&[g.identity()]).unwrap().order(), 1);
        let s = g.sylow2().unwrap();
        let x_sub = g.subgroup_closure(&[s.x]).unwrap();
        assert_eq!(x_sub.order(), 8);
        let x2 = g.pow(&s.x, 2);
        let tx = g.mul(&s.t, &s.x);
        let quat = g.subgroup_closure(&[x2, tx]).unwrap();
        assert_eq!(quat.order(), 8);
        let involutions = quat.elements(&g).iter().filter(|e| g.element_order(e) == 2).count();
        assert_eq!(involutions, 1);
    }

    fn brute_force_class_count(g: &Gl2) -> usize {
        let mut seen = vec![false; g.order()];
        let mut count = 0;
        for i in 0..g.order() {
            if seen[i] {
                continue;
            }
            count += 1;
            let x = g.element(i);
            for h in g.elements() {
                let hi = g.inv(h);
                seen[g.index_of(&g.conj(h, &hi, &x)).unwrap()] = true;
            }
        }
        count
    }

    #[test]
    fn conjugacy_class_counts() {
        let g3 = build_gl2(3).unwrap();
        let t3 = g3.conjugacy_classes();
        assert_eq!(t3.len(), 8);
        assert_eq!(t3.len(), brute_force_class_count(&g3));
        assert_eq!(t3.sizes().iter().sum::<usize>(), 48);
        let id = g3.index_of(&g3.identity()).unwrap();
        assert_eq!(t3.classes[t3.class_of[id] as usize].size(), 1);
        let g5 = build_gl2(5).unwrap();
        let t5 = g5.conjugacy_classes();
        assert_eq!(t5.len(), 24);
        assert_eq!(t5.len(), brute_force_class_count(&g5));
    }

    #[test]
    fn transporter_counts() {
        let g = build_gl2(3).unwrap();
        let s = g.sylow2().unwrap();
        let p = &s.group;
        // Aut_F(P) = Inn(P): |P / Z(P)| = 8
        assert_eq!(g.transporter_maps(p, p).len(), 8);
        let quat = g.subgroup_closure(&[g.pow(&s.x, 2), g.mul(&s.t, &s.x)]).unwrap();
        assert_eq!(g.transporter_maps(&quat, &quat).len(), 24);
        let triv = g.subgroup_closure(&[]).unwrap();
        assert_eq!(g.transporter_maps(&triv, &triv).len(), 1);
    }
}
