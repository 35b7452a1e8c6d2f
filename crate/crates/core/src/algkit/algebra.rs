use std::sync::Arc;

use rand::Rng;

use crate::error::{internal, Error, Result};
use crate::ffield::{Fe, FieldEmbedding, FiniteField};
use crate::linalg::{axpy, is_zero, kernel_of_images, unit_vector, Matrix, Subspace};
use crate::smallgroup::SmallGroup;

/// Largest dimension for which a table of structure constants is materialized.
pub const MAX_TABLE_DIM: usize = 400;

/// Structure constants: entry `i * d + j` lists the nonzero coordinates of `b_i b_j`.
pub type Table = Vec<Vec<(u32, Fe)>>;

/// Basis matrices of a matrix algebra in reduced echelon form: basis element `i`
/// has a 1 at flat position `pivots[i]`, where every other basis element vanishes.
#[derive(Clone, Debug)]
pub struct MatrixRep {
    n: usize,
    mats: Vec<Matrix>,
    pivots: Vec<usize>,
}

impl MatrixRep {
    pub fn size(&self) -> usize {
        self.n
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }
}

/// A finite-dimensional associative unital algebra over a finite field.
#[derive(Clone, Debug)]
pub struct Algebra {
    field: Arc<FiniteField>,
    dim: usize,
    one: Vec<Fe>,
    table: Option<Arc<Table>>,
    rep: Option<Arc<MatrixRep>>,
    generators: Option<Vec<Vec<Fe>>>,
}

/// Multiplication on coordinate vectors, possibly modulo an ideal.
pub trait Ring {
    fn field(&self) -> &Arc<FiniteField>;
    fn dim(&self) -> usize;
    fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe>;
}

impl Ring for Algebra {
    fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        Algebra::mul(self, x, y)
    }
}

/// An algebra modulo a two-sided ideal, on reduced representatives.
pub struct ModIdeal<'a> {
    pub alg: &'a Algebra,
    pub ideal: &'a Subspace,
}

impl Ring for ModIdeal<'_> {
    fn field(&self) -> &Arc<FiniteField> {
        &self.alg.field
    }

    fn dim(&self) -> usize {
        self.alg.dim
    }

    fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        self.ideal.reduce(&self.alg.field, &self.alg.mul(x, y))
    }
}

fn nnz(x: &[Fe]) -> usize {
    x.iter().filter(|c| !c.is_zero()).count()
}

impl Algebra {
    /// Algebra with explicit structure constants; checks the unit and associativity.
    pub fn from_table(field: Arc<FiniteField>, dim: usize, table: Table, one: Vec<Fe>) -> Result<Self> {
        if table.len() != dim * dim || one.len() != dim {
            return Err(Error::InvalidArgument("structure constant table has the wrong shape".into()));
        }
        if dim > MAX_TABLE_DIM {
            return Err(Error::Bound(format!("algebra of dimension {dim} exceeds {MAX_TABLE_DIM}")));
        }
        let alg = Algebra { field, dim, one, table: Some(Arc::new(table)), rep: None, generators: None };
        alg.check_unit()?;
        Ok(alg)
    }

    /// Algebra whose basis products are basis elements or zero (`None`).
    pub fn from_monomial(field: Arc<FiniteField>, dim: usize, products: &[Option<u32>], one: Vec<Fe>) -> Result<Self> {
        let table = products.iter().map(|p| p.map(|k| vec![(k, Fe::ONE)]).unwrap_or_default()).collect();
        Self::from_table(field, dim, table, one)
    }

    /// Group algebra with the group elements as basis.
    pub fn from_group(group: &SmallGroup, field: Arc<FiniteField>) -> Result<Self> {
        let n = group.order();
        let products: Vec<Option<u32>> = (0..n * n).map(|i| Some(group.mul(i / n, i % n) as u32)).collect();
        Self::from_monomial(field, n, &products, unit_vector(n, group.identity()))
    }

    /// Subalgebra of `M_n(k)` generated by `gens` (with the identity), spanned by spinning.
    pub fn generated_by_matrices(field: Arc<FiniteField>, n: usize, gens: &[Matrix]) -> Result<Self> {
        let f = &*field;
        let mut span = Subspace::new(n * n);
        let mut found = vec![Matrix::identity(n)];
        span.insert(f, Matrix::identity(n).into_flat());
        let mut head = 0;
        while head < found.len() {
            let x = found[head].clone();
            head += 1;
            for g in gens {
                let y = x.mul(f, g);
                if span.insert(f, y.as_slice().to_vec()) {
                    found.push(y);
                }
            }
        }
        let mut alg = Self::from_matrix_span(field.clone(), n, &span)?;
        alg.generators = Some(gens.iter().map(|g| alg.coords_of_matrix(g).expect("generator in span")).collect());
        Ok(alg)
    }

    /// Matrix algebra on a span already known to be closed under products and to contain 1.
    pub fn from_matrix_span(field: Arc<FiniteField>, n: usize, span: &Subspace) -> Result<Self> {
        let mats: Vec<Matrix> = span.basis().iter().map(|v| Matrix::from_flat(n, n, v.clone())).collect();
        let rep = MatrixRep { n, mats, pivots: span.pivots().to_vec() };
        let dim = rep.mats.len();
        let mut alg =
            Algebra { field, dim, one: vec![Fe::ZERO; dim], table: None, rep: Some(Arc::new(rep)), generators: None };
        alg.one = alg
            .coords_of_matrix(&Matrix::identity(n))
            .ok_or_else(|| Error::InvalidArgument("matrix span does not contain the identity".into()))?;
        Ok(alg)
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn one(&self) -> &[Fe] {
        &self.one
    }

    pub fn zero(&self) -> Vec<Fe> {
        vec![Fe::ZERO; self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Fe> {
        unit_vector(self.dim, i)
    }

    pub fn rep(&self) -> Option<&MatrixRep> {
        self.rep.as_deref()
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    /// A generating set, if one is known (otherwise the basis generates).
    pub fn generators(&self) -> Option<&[Vec<Fe>]> {
        self.generators.as_deref()
    }

    pub fn with_generators(mut self, gens: Vec<Vec<Fe>>) -> Self {
        self.generators = Some(gens);
        self
    }

    /// Elements whose commutators and products determine everything: generators or the basis.
    pub fn generating_set(&self) -> Vec<Vec<Fe>> {
        match &self.generators {
            Some(g) => g.clone(),
            None => (0..self.dim).map(|i| self.basis_vector(i)).collect(),
        }
    }

    pub fn to_matrix(&self, x: &[Fe]) -> Option<Matrix> {
        let rep = self.rep.as_ref()?;
        let f = &*self.field;
        let mut flat = vec![Fe::ZERO; rep.n * rep.n];
        for (i, &c) in x.iter().enumerate() {
            if !c.is_zero() {
                axpy(f, &mut flat, c, rep.mats[i].as_slice());
            }
        }
        Some(Matrix::from_flat(rep.n, rep.n, flat))
    }

    /// Coordinates of a matrix lying in the span of the realization.
    pub fn coords_of_matrix(&self, m: &Matrix) -> Option<Vec<Fe>> {
        let rep = self.rep.as_ref()?;
        let c: Vec<Fe> = rep.pivots.iter().map(|&p| m.as_slice()[p]).collect();
        let back = self.to_matrix(&c)?;
        (back == *m).then_some(c)
    }

    fn read_coords(&self, m: &Matrix) -> Vec<Fe> {
        let rep = self.rep.as_ref().expect("matrix realization");
        rep.pivots.iter().map(|&p| m.as_slice()[p]).collect()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Vec<Fe> {
        if let Some(t) = &self.table {
            let mut out = self.zero();
            for &(k, c) in &t[i * self.dim + j] {
                out[k as usize] = c;
            }
            return out;
        }
        let rep = self.rep.as_ref().expect("table or matrix realization");
        self.read_coords(&rep.mats[i].mul(&self.field, &rep.mats[j]))
    }

    pub fn mul(&self, x: &[Fe], y: &[Fe]) -> Vec<Fe> {
        let f = &*self.field;
        let use_rep = match (&self.table, &self.rep) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(_), Some(_)) => nnz(x) * nnz(y) > 4 * self.dim,
        };
        if use_rep {
            let (a, b) = (self.to_matrix(x).expect("rep"), self.to_matrix(y).expect("rep"));
            return self.read_coords(&a.mul(f, &b));
        }
        let t = self.table.as_ref().expect("table");
        let d = self.dim;
        let mut out = vec![Fe::ZERO; d];
        for (i, &xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let c = f.mul(xi, yj);
                for &(k, ck) in &t[i * d + j] {
                    out[k as usize] = f.mul_add(out[k as usize], c, ck);
                }
            }
        }
        out
    }

    pub fn pow(&self, x: &[Fe], mut k: u64) -> Vec<Fe> {
        let mut base = x.to_vec();
        let mut acc = self.one.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_idempotent(&self, e: &[Fe]) -> bool {
        self.mul(e, e) == e
    }

    /// Matrix of `y -> x y` (column `j` is `x b_j`).
    pub fn left_matrix(&self, x: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|j| self.mul(x, &self.basis_vector(j))).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// Matrix of `y -> y x`.
    pub fn right_matrix(&self, x: &[Fe]) -> Matrix {
        let cols: Vec<Vec<Fe>> = (0..self.dim).map(|j| self.mul(&self.basis_vector(j), x)).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// A faithful representation: the matrix realization if it is unital, else the left regular one.
    pub fn faithful_rep(&self) -> (usize, Vec<Matrix>) {
        if let Some(rep) = &self.rep {
            return (rep.n, rep.mats.clone());
        }
        let mats = (0..self.dim).map(|i| self.left_matrix(&self.basis_vector(i))).collect();
        (self.dim, mats)
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Vec<Fe> {
        random_vector(&self.field, self.dim, rng)
    }

    fn check_unit(&self) -> Result<()> {
        for i in 0..self.dim {
            let b = self.basis_vector(i);
            if self.mul(&self.one, &b) != b || self.mul(&b, &self.one) != b {
                return internal("unit element does not act as identity");
            }
        }
        Ok(())
    }

    /// Associativity over all basis triples (or a random sample of `samples` triples).
    pub fn check_associative<R: Rng>(&self, samples: Option<(usize, &mut R)>) -> Result<()> {
        let d = self.dim;
        let check = |i: usize, j: usize, k: usize| {
            let ij = self.mul_basis(i, j);
            let jk = self.mul_basis(j, k);
            self.mul(&ij, &self.basis_vector(k)) == self.mul(&self.basis_vector(i), &jk)
        };
        let ok = match samples {
            None => (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| check(i, j, k)))),
            Some((n, rng)) => (0..n).all(|_| check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))),
        };
        if d == 0 || ok {
            Ok(())
        } else {
            internal("structure constants are not associative")
        }
    }

    /// Span of all products `u v` with `u` in `a`, `v` in `b`.
    pub fn product_space(&self, a: &[Vec<Fe>], b: &[Vec<Fe>]) -> Subspace {
        let f = &*self.field;
        let mut s = Subspace::new(self.dim);
        for u in a {
            for v in b {
                s.insert(f, self.mul(u, v));
            }
        }
        s
    }

    /// `e A e'` as a subspace.
    pub fn peirce(&self, e: &[Fe], e2: &[Fe]) -> Subspace {
        let f = &*self.field;
        Subspace::from_vectors(f, self.dim, (0..self.dim).map(|i| self.mul(&self.mul(e, &self.basis_vector(i)), e2)))
    }

    /// `e X e'` for a subspace `X`.
    pub fn peirce_of(&self, e: &[Fe], x: &Subspace, e2: &[Fe]) -> Subspace {
        let f = &*self.field;
        Subspace::from_vectors(f, self.dim, x.basis().iter().map(|v| self.mul(&self.mul(e, v), e2)))
    }

    /// Whether a subspace is a two-sided ideal.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let f = &*self.field;
        let gens = self.generating_set();
        s.basis().iter().all(|v| gens.iter().all(|g| s.contains(f, &self.mul(g, v)) && s.contains(f, &self.mul(v, g))))
    }

    /// Whether `s^k = 0` for some `k <= dim`.
    pub fn is_nilpotent_ideal(&self, s: &Subspace) -> bool {
        let mut power = s.clone();
        for _ in 0..=self.dim {
            if power.dim() == 0 {
                return true;
            }
            power = self.product_space(power.basis(), s.basis());
        }
        false
    }

    /// Center, by refining against the generating set.
    pub fn center(&self) -> Subspace {
        let f = &*self.field;
        let mut current: Vec<Vec<Fe>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        for g in self.generating_set() {
            let images: Vec<Vec<Fe>> = current
                .iter()
                .map(|z| {
                    let mut c = self.mul(&g, z);
                    axpy(f, &mut c, f.neg(Fe::ONE), &self.mul(z, &g));
                    c
                })
                .collect();
            current = combine(f, self.dim, &current, &kernel_of_images(f, &images));
        }
        Subspace::from_vectors(f, self.dim, current)
    }

    /// `{x : [x, g] in I for all generators g}`, the preimage of the center of `A / I`.
    pub fn center_mod(&self, ideal: &Subspace) -> Subspace {
        let f = &*self.field;
        let mut current: Vec<Vec<Fe>> = (0..self.dim).map(|i| self.basis_vector(i)).collect();
        for g in self.generating_set() {
            let images: Vec<Vec<Fe>> = current
                .iter()
                .map(|z| {
                    let mut c = self.mul(&g, z);
                    axpy(f, &mut c, f.neg(Fe::ONE), &self.mul(z, &g));
                    ideal.reduce(f, &c)
                })
                .collect();
            current = combine(f, self.dim, &current, &kernel_of_images(f, &images));
        }
        let mut s = Subspace::from_vectors(f, self.dim, current);
        for v in ideal.basis() {
            s.insert(f, v.clone());
        }
        s
    }

    /// The corner `e A e` with unit `e`, and the embedding of its basis into `A`.
    pub fn corner(&self, e: &[Fe]) -> Result<(Algebra, Vec<Vec<Fe>>)> {
        if is_zero(e) || !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let space = self.peirce(e, e);
        self.subalgebra(&space, e)
    }

    /// The subalgebra on a closed subspace `s` with unit `u`.
    pub fn subalgebra(&self, s: &Subspace, u: &[Fe]) -> Result<(Algebra, Vec<Vec<Fe>>)> {
        let f = &*self.field;
        let basis = s.basis().to_vec();
        let m = basis.len();
        if m > MAX_TABLE_DIM {
            return Err(Error::Bound(format!("subalgebra of dimension {m} exceeds {MAX_TABLE_DIM}")));
        }
        let mut table = Vec::with_capacity(m * m);
        for x in &basis {
            for y in &basis {
                let c = s.coords(f, &self.mul(x, y)).ok_or_else(|| Error::Internal("subspace is not closed".into()))?;
                table.push(c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, &v)| (k as u32, v)).collect());
            }
        }
        let one = s.coords(f, u).ok_or_else(|| Error::Internal("unit outside the subalgebra".into()))?;
        let alg = Algebra::from_table(self.field.clone(), m, table, one)?;
        Ok((alg, basis))
    }

    /// `A / I` for a two-sided ideal `I`, with the complement columns used as basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        let f = &*self.field;
        let free = ideal.free_columns();
        let m = free.len();
        if m > MAX_TABLE_DIM {
            return Err(Error::Bound(format!("quotient of dimension {m} exceeds {MAX_TABLE_DIM}")));
        }
        let project = |v: &[Fe]| -> Vec<Fe> {
            let r = ideal.reduce(f, v);
            free.iter().map(|&c| r[c]).collect()
        };
        let mut table = Vec::with_capacity(m * m);
        for &a in &free {
            for &b in &free {
                let c = project(&self.mul_basis(a, b));
                table.push(c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, &v)| (k as u32, v)).collect());
            }
        }
        let one = project(&self.one);
        let gens = self.generators.as_ref().map(|g| g.iter().map(|x| project(x)).collect());
        let mut alg = Algebra::from_table(self.field.clone(), m, table, one)?;
        alg.generators = gens;
        Ok(Quotient { algebra: alg, ideal: ideal.clone(), free })
    }

    /// The same algebra with scalars extended along `emb` (whose source is this field).
    pub fn extend_scalars(&self, emb: &FieldEmbedding) -> Result<Algebra> {
        if **emb.sub() != *self.field {
            return Err(Error::IncompatibleFields { sub: self.field.order() as u64, sup: emb.sup().order() as u64 });
        }
        let lift = |v: &[Fe]| v.iter().map(|&c| emb.embed(c)).collect::<Vec<Fe>>();
        let table = self
            .table
            .as_ref()
            .map(|t| Arc::new(t.iter().map(|row| row.iter().map(|&(k, c)| (k, emb.embed(c))).collect()).collect()));
        let rep = self.rep.as_ref().map(|r| {
            Arc::new(MatrixRep {
                n: r.n,
                mats: r.mats.iter().map(|m| Matrix::from_flat(r.n, r.n, lift(m.as_slice()))).collect(),
                pivots: r.pivots.clone(),
            })
        });
        Ok(Algebra {
            field: emb.sup().clone(),
            dim: self.dim,
            one: lift(&self.one),
            table,
            rep,
            generators: self.generators.as_ref().map(|g| g.iter().map(|x| lift(x)).collect()),
        })
    }
}

/// `A / I` with its projection and lift.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: Algebra,
    pub ideal: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    pub fn project(&self, v: &[Fe]) -> Vec<Fe> {
        let r = self.ideal.reduce(self.algebra.field(), v);
        self.free.iter().map(|&c| r[c]).collect()
    }

    /// The representative supported on the complement columns.
    pub fn lift(&self, v: &[Fe]) -> Vec<Fe> {
        let mut out = vec![Fe::ZERO; self.ideal.ambient()];
        for (&c, &x) in self.free.iter().zip(v) {
            out[c] = x;
        }
        out
    }
}

/// `Σ_r comb[r] * vectors[r]` for every combination in `combs`.
pub(crate) fn combine(f: &FiniteField, dim: usize, vectors: &[Vec<Fe>], combs: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    combs
        .iter()
        .map(|comb| {
            let mut v = vec![Fe::ZERO; dim];
            for (x, &c) in vectors.iter().zip(comb) {
                if !c.is_zero() {
                    axpy(f, &mut v, c, x);
                }
            }
            v
        })
        .collect()
}

pub fn random_vector<R: Rng>(f: &FiniteField, dim: usize, rng: &mut R) -> Vec<Fe> {
    (0..dim).map(|_| Fe(rng.gen_range(0..f.order()))).collect()
}
