//! Finite groups given by a multiplication table.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{internal, Error, Result};

/// A group on `0..n` with an explicit Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmallGroup {
    n: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
}

/// Largest order for which associativity is checked exhaustively.
const ASSOCIATIVITY_CHECK_LIMIT: usize = 128;

impl SmallGroup {
    /// Builds a group from `table[a * n + b] = a * b`, checking the axioms.
    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        if n == 0 || table.len() != n * n || table.iter().any(|&x| x as usize >= n) {
            return Err(Error::InvalidArgument("malformed multiplication table".into()));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] as usize == a && table[a * n + e] as usize == a))
            .ok_or_else(|| Error::Internal("table has no identity".into()))?;
        let mut inverse = vec![0u32; n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] as usize == identity)
                .ok_or_else(|| Error::Internal("table lacks inverses".into()))?;
            if table[b * n + a] as usize != identity {
                return internal("left and right inverses differ");
            }
            inverse[a] = b as u32;
        }
        let g = SmallGroup { n, table, identity, inverse };
        if n <= ASSOCIATIVITY_CHECK_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    let ab = g.mul(a, b);
                    for c in 0..n {
                        if g.mul(ab, c) != g.mul(a, g.mul(b, c)) {
                            return internal("table is not associative");
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Group given by a closed set of items under a binary operation.
    pub fn from_closed_set<T: Ord + Clone>(items: &[T], op: impl Fn(&T, &T) -> T) -> Result<Self> {
        let index: BTreeMap<&T, u32> = items.iter().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let n = items.len();
        let mut table = Vec::with_capacity(n * n);
        for a in items {
            for b in items {
                let c = op(a, b);
                table.push(*index.get(&c).ok_or_else(|| Error::Internal("set not closed".into()))?);
            }
        }
        Self::from_table(n, table)
    }

    /// Cyclic group of order `n`, handy for tests.
    pub fn cyclic(n: usize) -> Self {
        let table = (0..n * n).map(|i| ((i / n + i % n) % n) as u32).collect();
        SmallGroup::from_table(n, table).expect("cyclic group")
    }

    /// Symmetric group on three letters.
    pub fn symmetric3() -> Self {
        let perms: Vec<[u8; 3]> = vec![[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        SmallGroup::from_closed_set(&perms, |a, b| [a[b[0] as usize], a[b[1] as usize], a[b[2] as usize]]).expect("S3")
    }

    pub fn direct_product(&self, other: &SmallGroup) -> SmallGroup {
        let (n, m) = (self.n, other.n);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let x = self.mul(a / m, b / m);
                let y = other.mul(a % m, b % m);
                table.push((x * m + y) as u32);
            }
        }
        SmallGroup::from_table(n * m, table).expect("direct product")
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.n).filter(|&a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a))).collect()
    }

    pub fn exponent(&self) -> usize {
        (0..self.n).map(|a| self.element_order(a)).fold(1, lcm)
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        let mut n = self.n;
        while n.is_multiple_of(p) {
            n /= p;
        }
        n == 1
    }

    /// Isomorphism type, as far as the coarse invariants identify it.
    pub fn structure(&self) -> StructureType {
        let n = self.n;
        if n == 1 {
            return StructureType::Trivial;
        }
        let orders: Vec<usize> = (0..n).map(|a| self.element_order(a)).collect();
        let max_order = *orders.iter().max().unwrap_or(&1);
        if max_order == n {
            return StructureType::Cyclic(n);
        }
        if self.is_abelian() {
            let inv = abelian_invariants(n, &orders);
            if inv == [2, 2] {
                return StructureType::Klein;
            }
            return StructureType::Abelian(inv);
        }
        if n == 6 {
            return StructureType::Symmetric3;
        }
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        if self.is_p_group(2) && max_order == n / 2 {
            if involutions == n / 2 + 1 {
                return StructureType::Dihedral(n);
            }
            if involutions == 1 {
                return StructureType::Quaternion(n);
            }
            if n >= 16 && involutions == n / 4 + 1 {
                return StructureType::Semidihedral(n);
            }
        }
        StructureType::Other { order: n, center: self.center().len(), exponent: self.exponent() }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Invariants `[n_1, n_2, ...]` (prime powers, sorted) of an abelian group from its order statistics.
fn abelian_invariants(n: usize, orders: &[usize]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if !rest.is_multiple_of(p) {
            p += 1;
            continue;
        }
        let mut k_max = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            k_max += 1;
        }
        // log_p #{x : x^(p^k) = 1} = sum_i min(k, a_i)
        let count_log = |k: u32| {
            let pk = p.pow(k);
            let c = orders.iter().filter(|&&o| pk % o == 0 && o.is_power_of_p(p)).count();
            let mut l = 0;
            let mut c = c;
            while c > 1 {
                c /= p;
                l += 1;
            }
            l
        };
        let mut prev = 0;
        let mut ge = Vec::new(); // ge[k-1] = #{i : a_i >= k}
        for k in 1..=k_max {
            let cur = count_log(k);
            ge.push(cur - prev);
            prev = cur;
        }
        for k in 1..=k_max as usize {
            let exactly = ge[k - 1] - ge.get(k).copied().unwrap_or(0);
            for _ in 0..exactly {
                out.push(p.pow(k as u32));
            }
        }
    }
    out.sort_unstable();
    out
}

trait PowerOf {
    fn is_power_of_p(self, p: usize) -> bool;
}

impl PowerOf for usize {
    fn is_power_of_p(self, p: usize) -> bool {
        let mut x = self;
        while x.is_multiple_of(p) {
            x /= p;
        }
        x == 1
    }
}

/// Coarse isomorphism type of a small group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "data", rename_all = "snake_case")]
pub enum StructureType {
    Trivial,
    Cyclic(usize),
    Klein,
    Abelian(Vec<usize>),
    Dihedral(usize),
    Quaternion(usize),
    Semidihedral(usize),
    Symmetric3,
    Other { order: usize, center: usize, exponent: usize },
}

impl fmt::Display for StructureType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StructureType::Trivial => write!(f, "1"),
            StructureType::Cyclic(n) => write!(f, "C{n}"),
            StructureType::Klein => write!(f, "C2xC2"),
            StructureType::Abelian(inv) => {
                let parts: Vec<String> = inv.iter().map(|n| format!("C{n}")).collect();
                write!(f, "{}", parts.join("x"))
            }
            StructureType::Dihedral(n) => write!(f, "D{n}"),
            StructureType::Quaternion(n) => write!(f, "Q{n}"),
            StructureType::Semidihedral(n) => write!(f, "SD{n}"),
            StructureType::Symmetric3 => write!(f, "S3"),
            StructureType::Other { order, center, exponent } => {
                write!(f, "nonabelian({order}; |Z|={center}, exp {exponent})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_groups() {
        let s3 = SmallGroup::symmetric3();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(s3.structure(), StructureType::Symmetric3);
        assert_eq!(SmallGroup::cyclic(8).structure(), StructureType::Cyclic(8));
        assert_eq!(SmallGroup::cyclic(1).structure(), StructureType::Trivial);
        let klein = SmallGroup::cyclic(2).direct_product(&SmallGroup::cyclic(2));
        assert_eq!(klein.structure(), StructureType::Klein);
        let c4c2 = SmallGroup::cyclic(4).direct_product(&SmallGroup::cyclic(2));
        assert_eq!(c4c2.structure(), StructureType::Abelian(vec![2, 4]));
        let c4c4 = SmallGroup::cyclic(4).direct_product(&SmallGroup::cyclic(4));
        assert_eq!(c4c4.structure(), StructureType::Abelian(vec![4, 4]));
        let c6 = SmallGroup::cyclic(2).direct_product(&SmallGroup::cyclic(3));
        assert_eq!(c6.structure(), StructureType::Cyclic(6));
    }

    #[test]
    fn rejects_non_groups() {
        // a 2x2 table with no inverse for 1
        assert!(SmallGroup::from_table(2, vec![0, 1, 1, 1]).is_err());
        assert!(SmallGroup::from_table(2, vec![0, 1]).is_err());
    }
}
