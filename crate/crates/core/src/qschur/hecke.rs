//! Iwahori-Hecke algebras of small symmetric groups and their permutation modules.

use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;
use serde::Serialize;

use crate::algkit::Algebra;
use crate::error::{internal, Error, Result};
use crate::ffield::{Fe, FiniteField};
use crate::linalg::{kernel_of_images, unit_vector, Matrix, Subspace};

pub const MAX_HECKE_N: usize = 4;

/// A permutation of `0..n` as its image list; products compose right to left.
pub type Perm = Vec<u8>;

fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&i| a[i as usize]).collect()
}

fn length(w: &[u8]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

fn transposition(n: usize, i: usize) -> Perm {
    let mut p: Perm = (0..n as u8).collect();
    p.swap(i, i + 1);
    p
}

/// `H_{k,v}(Σ_n)` with basis `T_w`.
#[derive(Clone, Debug)]
pub struct HeckeAlgebra {
    n: usize,
    v: Fe,
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    algebra: Algebra,
}

impl HeckeAlgebra {
    /// Builds the algebra from the right-multiplication rule by simple transpositions.
    pub fn new(n: usize, v: Fe, field: Arc<FiniteField>) -> Result<Self> {
        if n == 0 || n > MAX_HECKE_N {
            return Err(Error::Bound(format!("Hecke algebras are limited to 1 <= n <= {MAX_HECKE_N}")));
        }
        if v.is_zero() {
            return Err(Error::InvalidArgument("the Hecke parameter must be nonzero".into()));
        }
        let mut perms: Vec<Perm> = (0..n as u8).permutations(n).collect();
        perms.sort_by_key(|p| (length(p), p.clone()));
        let index: HashMap<Perm, usize> = perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let d = perms.len();
        let mut h = HeckeAlgebra {
            n,
            v,
            perms,
            index,
            algebra: Algebra::from_table(field.clone(), 1, vec![vec![(0, Fe::ONE)]], vec![Fe::ONE])?,
        };
        let mut table = Vec::with_capacity(d * d);
        for x in 0..d {
            for y in 0..d {
                let first = h.product_along(x, &h.reduced_word(y, false));
                let second = h.product_along(x, &h.reduced_word(y, true));
                if first != second {
                    return internal("Hecke product depends on the reduced word");
                }
                table.push(
                    first.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, &c)| (k as u32, c)).collect(),
                );
            }
        }
        h.algebra = Algebra::from_table(field, d, table, unit_vector(d, 0))?;
        h.algebra.check_associative::<rand_chacha::ChaCha8Rng>(None)?;
        Ok(h)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parameter(&self) -> Fe {
        self.v
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn index_of(&self, w: &[u8]) -> usize {
        self.index[w]
    }

    /// Indices of the simple transpositions `(i, i+1)`.
    pub fn simple_reflections(&self) -> Vec<usize> {
        (0..self.n - 1).map(|i| self.index[&transposition(self.n, i)]).collect()
    }

    /// A reduced word for `w` (indices `i` of `s_i`), peeling off the smallest or largest right descent.
    fn reduced_word(&self, w: usize, largest: bool) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.perms[w].clone();
        while length(&cur) > 0 {
            let descents = (0..self.n - 1).filter(|&i| cur[i] > cur[i + 1]);
            let i = if largest { descents.max() } else { descents.min() }.expect("nonidentity has a descent");
            cur = compose(&cur, &transposition(self.n, i));
            word.push(i);
        }
        word.reverse();
        word
    }

    /// `T_w T_{s_i}` for an element `x` given in the `T` basis.
    fn times_simple(&self, x: &[Fe], i: usize) -> Vec<Fe> {
        let f = self.algebra.field();
        let s = transposition(self.n, i);
        let mut out = vec![Fe::ZERO; x.len()];
        let v_minus_one = f.sub(self.v, Fe::ONE);
        for (w, &c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let ws = self.index[&compose(&self.perms[w], &s)];
            if length(&self.perms[ws]) > length(&self.perms[w]) {
                out[ws] = f.add(out[ws], c);
            } else {
                out[ws] = f.add(out[ws], f.mul(c, self.v));
                out[w] = f.add(out[w], f.mul(c, v_minus_one));
            }
        }
        out
    }

    fn product_along(&self, x: usize, word: &[usize]) -> Vec<Fe> {
        let mut cur = unit_vector(self.perms.len(), x);
        for &i in word {
            cur = self.times_simple(&cur, i);
        }
        cur
    }

    /// `m_μ`, the sum of `T_w` over the Young subgroup of `μ`.
    pub fn m_mu(&self, mu: &Composition) -> Result<Vec<Fe>> {
        if mu.size() != self.n {
            return Err(Error::InvalidArgument(format!("composition {:?} does not sum to {}", mu.parts, self.n)));
        }
        let mut block = Vec::with_capacity(self.n);
        for (b, &part) in mu.parts.iter().enumerate() {
            block.extend(std::iter::repeat_n(b, part));
        }
        let f = self.algebra.field();
        let mut out = vec![Fe::ZERO; self.perms.len()];
        for (k, p) in self.perms.iter().enumerate() {
            if (0..self.n).all(|i| block[p[i] as usize] == block[i]) {
                out[k] = f.add(out[k], Fe::ONE);
            }
        }
        Ok(out)
    }

    /// `M^μ = m_μ H` as a right module.
    pub fn m_mu_module(&self, mu: &Composition) -> Result<RightModule> {
        let m = self.m_mu(mu)?;
        let alg = &self.algebra;
        let f = alg.field();
        let span = Subspace::from_vectors(f, alg.dim(), (0..alg.dim()).map(|w| alg.mul(&m, &alg.basis_vector(w))));
        RightModule::inside_regular(self, &span)
    }
}

/// A composition of `n`, zero parts allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Composition {
    pub parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition { parts }
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Largest index of a nonzero part (one-based), 0 for the empty composition.
    pub fn height(&self) -> usize {
        self.parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1)
    }

    /// All compositions of `n` with height at most `d`, as `d`-tuples, in lexicographic order.
    pub fn all(d: usize, n: usize) -> Vec<Composition> {
        if d == 0 {
            return if n == 0 { vec![Composition::new(Vec::new())] } else { Vec::new() };
        }
        let mut out = Vec::new();
        for first in (0..=n).rev() {
            for rest in Composition::all(d - 1, n - first) {
                let mut parts = vec![first];
                parts.extend(rest.parts);
                out.push(Composition::new(parts));
            }
        }
        out
    }
}

/// A right `H`-module: `action[w]` is the matrix of `x -> x T_w` on coordinate columns.
#[derive(Clone, Debug)]
pub struct RightModule {
    dim: usize,
    action: Vec<Matrix>,
    simple: Vec<usize>,
}

impl RightModule {
    /// A right ideal of `H`, given as a subspace of the regular module.
    pub fn inside_regular(h: &HeckeAlgebra, span: &Subspace) -> Result<Self> {
        let alg = h.algebra();
        let f = alg.field();
        let action = (0..alg.dim())
            .map(|w| {
                let t = alg.basis_vector(w);
                let cols: Vec<Vec<Fe>> = span
                    .basis()
                    .iter()
                    .map(|x| span.coords(f, &alg.mul(x, &t)).ok_or_else(|| Error::Internal("not a right ideal".into())))
                    .collect::<Result<_>>()?;
                Ok(Matrix::from_columns(span.dim(), &cols))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RightModule { dim: span.dim(), action, simple: h.simple_reflections() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// Direct sum of modules over the same algebra.
    pub fn direct_sum(parts: &[RightModule]) -> Result<RightModule> {
        let first = parts.first().ok_or_else(|| Error::InvalidArgument("empty direct sum".into()))?;
        let dim: usize = parts.iter().map(|m| m.dim).sum();
        let action = (0..first.action.len())
            .map(|w| {
                let mut m = Matrix::zeros(dim, dim);
                let mut off = 0;
                for p in parts {
                    let a = &p.action[w];
                    for r in 0..p.dim {
                        for c in 0..p.dim {
                            m.set(off + r, off + c, a.get(r, c));
                        }
                    }
                    off += p.dim;
                }
                m
            })
            .collect();
        Ok(RightModule { dim, action, simple: first.simple.clone() })
    }

    /// `End_H(M)`: matrices commuting with the action of every simple reflection.
    pub fn endomorphisms(&self, field: &FiniteField) -> Result<Vec<Matrix>> {
        let d = self.dim;
        let images: Vec<Vec<Fe>> = (0..d * d)
            .map(|idx| {
                let mut e = Matrix::zeros(d, d);
                e.set(idx / d, idx % d, Fe::ONE);
                self.simple
                    .iter()
                    .flat_map(|&s| {
                        let a = &self.action[s];
                        let lhs = e.mul(field, a);
                        let rhs = a.mul(field, &e);
                        lhs.add(field, &rhs.scale(field, field.neg(Fe::ONE))).into_flat()
                    })
                    .collect()
            })
            .collect();
        let kernel = kernel_of_images(field, &images);
        let mut out = Vec::with_capacity(kernel.len());
        for comb in kernel {
            let x = Matrix::from_flat(d, d, comb);
            if self.action.iter().any(|a| x.mul(field, a) != a.mul(field, &x)) {
                return internal("endomorphism fails to commute with the full basis");
            }
            out.push(x);
        }
        Ok(out)
    }
}
