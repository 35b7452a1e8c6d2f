use serde::Serialize;

use super::algebra::Algebra;
use super::idempotents::SemisimpleStructure;
use crate::error::{internal, Error, Result};
use crate::ffield::{Fe, FiniteField};
use crate::linalg::{Matrix, Subspace};
use std::sync::Arc;

/// A finite-dimensional left module, given by the action of each algebra basis element.
#[derive(Clone, Debug)]
pub struct AlgebraModule {
    field: Arc<FiniteField>,
    dim: usize,
    action: Vec<Matrix>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CompositionFactor {
    /// Index of the Wedderburn factor whose simple module this is.
    pub simple: usize,
    pub dim: usize,
}

impl AlgebraModule {
    pub fn new(field: Arc<FiniteField>, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.iter().any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(Error::InvalidArgument("action matrices have the wrong size".into()));
        }
        Ok(AlgebraModule { field, dim, action })
    }

    /// `A` acting on itself by left multiplication.
    pub fn regular(alg: &Algebra) -> Self {
        let action = (0..alg.dim()).map(|i| alg.left_matrix(&alg.basis_vector(i))).collect();
        AlgebraModule { field: alg.field().clone(), dim: alg.dim(), action }
    }

    /// The natural module of an algebra realized by matrices.
    pub fn natural(alg: &Algebra) -> Result<Self> {
        let rep = alg.rep().ok_or_else(|| Error::InvalidArgument("algebra has no matrix realization".into()))?;
        Ok(AlgebraModule { field: alg.field().clone(), dim: rep.size(), action: rep.matrices().to_vec() })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    /// The matrix by which an algebra element acts.
    pub fn act(&self, x: &[Fe]) -> Matrix {
        let f = &*self.field;
        let mut out = Matrix::zeros(self.dim, self.dim);
        for (m, &c) in self.action.iter().zip(x) {
            if !c.is_zero() {
                out = out.add(f, &m.scale(f, c));
            }
        }
        out
    }

    /// Whether the action is unital and multiplicative on all basis pairs.
    pub fn check(&self, alg: &Algebra) -> Result<()> {
        let f = &*self.field;
        if self.action.len() != alg.dim() {
            return Err(Error::InvalidArgument("one action matrix per basis element expected".into()));
        }
        if self.act(alg.one()) != Matrix::identity(self.dim) {
            return internal("unit does not act as the identity");
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if self.action[i].mul(f, &self.action[j]) != self.act(&alg.mul_basis(i, j)) {
                    return internal("action is not multiplicative");
                }
            }
        }
        Ok(())
    }

    pub fn is_submodule(&self, u: &Subspace) -> bool {
        let f = &*self.field;
        u.basis().iter().all(|v| self.action.iter().all(|m| u.contains(f, &m.apply(f, v))))
    }

    pub fn submodule(&self, u: &Subspace) -> Result<AlgebraModule> {
        let f = &*self.field;
        if !self.is_submodule(u) {
            return Err(Error::InvalidArgument("subspace is not invariant".into()));
        }
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> =
                    u.basis().iter().map(|v| u.coords(f, &m.apply(f, v)).expect("invariant")).collect();
                Matrix::from_columns(u.dim(), &cols)
            })
            .collect();
        Ok(AlgebraModule { field: self.field.clone(), dim: u.dim(), action })
    }

    /// `M / U`, with the unit vectors on the free columns of `U` as basis.
    pub fn quotient(&self, u: &Subspace) -> Result<AlgebraModule> {
        let f = &*self.field;
        if !self.is_submodule(u) {
            return Err(Error::InvalidArgument("subspace is not invariant".into()));
        }
        let free = u.free_columns();
        let action = self
            .action
            .iter()
            .map(|m| {
                let cols: Vec<Vec<Fe>> = free
                    .iter()
                    .map(|&c| {
                        let r = u.reduce(f, &m.column(c));
                        free.iter().map(|&k| r[k]).collect()
                    })
                    .collect();
                Matrix::from_columns(free.len(), &cols)
            })
            .collect();
        Ok(AlgebraModule { field: self.field.clone(), dim: free.len(), action })
    }

    /// `JM` for the radical `J`.
    pub fn radical(&self, j: &Subspace) -> Subspace {
        let f = &*self.field;
        let mut s = Subspace::new(self.dim);
        for x in j.basis() {
            let m = self.act(x);
            for c in 0..self.dim {
                s.insert(f, m.column(c));
            }
        }
        s
    }

    /// `{v : Jv = 0}`.
    pub fn socle(&self, j: &Subspace) -> Subspace {
        let f = &*self.field;
        if j.dim() == 0 {
            return Subspace::whole(self.dim);
        }
        let rows: Vec<Vec<Fe>> = j
            .basis()
            .iter()
            .flat_map(|x| {
                let m = self.act(x);
                (0..self.dim).map(move |r| m.row(r).to_vec())
            })
            .collect();
        Subspace::from_vectors(f, self.dim, Matrix::from_rows(&rows).nullspace(f))
    }

    /// Multiplicity of each simple module in a module annihilated by `J`.
    fn semisimple_multiplicities(&self, s: &SemisimpleStructure) -> Result<Vec<usize>> {
        let f = &*self.field;
        let mut out = Vec::with_capacity(s.factors.len());
        let mut total = 0;
        for w in &s.factors {
            let r = self.act(&w.central_idempotent).rank(f);
            let simple_dim = w.size * w.center_dim;
            if !r.is_multiple_of(simple_dim) {
                return internal("isotypic component dimension is not a multiple of the simple dimension");
            }
            out.push(r / simple_dim);
            total += r;
        }
        if total != self.dim {
            return internal("isotypic components do not fill the module");
        }
        Ok(out)
    }

    /// Composition factors read off the socle series, listed from the top layer down.
    /// Within a layer factors appear in Wedderburn order.
    pub fn composition_factors(&self, s: &SemisimpleStructure) -> Result<Vec<CompositionFactor>> {
        let mut layers = Vec::new();
        let mut current = self.clone();
        while current.dim > 0 {
            let soc = current.socle(&s.radical);
            if soc.dim() == 0 {
                return internal("nonzero module with zero socle");
            }
            let layer = current.submodule(&soc)?;
            layers.push(layer.semisimple_multiplicities(s)?);
            current = current.quotient(&soc)?;
        }
        let mut out = Vec::new();
        for mult in layers.iter().rev() {
            for (i, &m) in mult.iter().enumerate() {
                let dim = s.factors[i].size * s.factors[i].center_dim;
                out.extend(std::iter::repeat_n(CompositionFactor { simple: i, dim }, m));
            }
        }
        Ok(out)
    }

    /// Multiplicities of the simple modules in `M / JM`.
    pub fn top(&self, s: &SemisimpleStructure) -> Result<Vec<usize>> {
        let rad = self.radical(&s.radical);
        self.quotient(&rad)?.semisimple_multiplicities(s)
    }

    /// Whether `M` is projective: compares `dim M` with the dimension of the projective
    /// cover of its top. `basic` are primitive idempotents, one per Wedderburn factor.
    pub fn is_projective(&self, alg: &Algebra, s: &SemisimpleStructure, basic: &[Vec<Fe>]) -> Result<bool> {
        if basic.len() != s.factors.len() {
            return Err(Error::InvalidArgument("one primitive idempotent per simple module expected".into()));
        }
        let top = self.top(s)?;
        let cover: usize = top.iter().zip(basic).map(|(&m, e)| m * alg.right_matrix(e).rank(alg.field())).sum();
        Ok(cover == self.dim)
    }
}
