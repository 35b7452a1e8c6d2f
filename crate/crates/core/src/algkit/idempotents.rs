//! Idempotents: commutative splitting, lifting, Wedderburn factors and blocks.
//!
//! In a commutative algebra `C` over `k = GF(q)`, the Frobenius `x -> x^q` is
//! `k`-linear and its fixed space is spanned by the primitive idempotents.
//! Those are read off as eigenvectors of multiplication by one generic element
//! of the fixed space, computed over a large extension of `k` so that the
//! eigenvalues are distinct with high probability.

use std::sync::Arc;

use rand::Rng;
use serde::Serialize;

use super::algebra::{combine, random_vector, Algebra, ModIdeal, Ring};
use super::radical::radical;
use crate::error::{internal, Error, Result};
use crate::ffield::{make_field, Fe, FieldEmbedding, FiniteField, MAX_FIELD_ORDER};
use crate::linalg::{axpy, is_zero, kernel_of_images, Subspace};

const SPLIT_ATTEMPTS: usize = 16;
const REFINE_ATTEMPTS: usize = 200;

/// Largest field containing `k` within the supported field size.
fn splitting_extension(k: &Arc<FiniteField>) -> Result<FieldEmbedding> {
    let p = k.characteristic() as u64;
    let e = k.degree();
    let mut m = 1;
    while (p as f64).powi(((m + 1) * e) as i32) <= MAX_FIELD_ORDER as f64 {
        m += 1;
    }
    let big = if m == 1 { k.clone() } else { make_field(p, m * e)? };
    FieldEmbedding::new(k.clone(), big)
}

/// Primitive idempotents of a commutative unital algebra given by its own table.
pub fn split_commutative<R: Rng>(t: &Algebra, rng: &mut R) -> Result<Vec<Vec<Fe>>> {
    let f = &**t.field();
    let c = t.dim();
    let q = f.order() as u64;
    let images: Vec<Vec<Fe>> = (0..c)
        .map(|s| {
            let b = t.basis_vector(s);
            let mut img = t.pow(&b, q);
            axpy(f, &mut img, f.neg(Fe::ONE), &b);
            img
        })
        .collect();
    let basis: Vec<Vec<Fe>> = (0..c).map(|s| t.basis_vector(s)).collect();
    let fixed = Subspace::from_vectors(f, c, combine(f, c, &basis, &kernel_of_images(f, &images)));
    let r = fixed.dim();
    if r == 0 {
        return internal("fixed space of the Frobenius is trivial");
    }
    if r == 1 {
        return Ok(vec![t.one().to_vec()]);
    }
    let emb = splitting_extension(t.field())?;
    let big = &**emb.sup();
    let tk = t.extend_scalars(&emb)?;
    let lift = |v: &[Fe]| v.iter().map(|&x| emb.embed(x)).collect::<Vec<Fe>>();
    let fixed_k: Vec<Vec<Fe>> = fixed.basis().iter().map(|v| lift(v)).collect();
    let pivots = fixed.pivots();
    let in_fixed = |v: &[Fe]| pivots.iter().map(|&p| v[p]).collect::<Vec<Fe>>();
    let v0 = in_fixed(&lift(t.one()));

    for _ in 0..SPLIT_ATTEMPTS {
        let lambda = random_vector(big, r, rng);
        let mut gen = vec![Fe::ZERO; c];
        for (v, &l) in fixed_k.iter().zip(&lambda) {
            axpy(big, &mut gen, l, v);
        }
        let cols: Vec<Vec<Fe>> = fixed_k.iter().map(|v| in_fixed(&tk.mul(&gen, v))).collect();
        let apply = |x: &[Fe]| {
            let mut out = vec![Fe::ZERO; r];
            for (col, &xi) in cols.iter().zip(x) {
                axpy(big, &mut out, xi, col);
            }
            out
        };
        // Krylov sequence of the unit; full length iff the eigenvalues are distinct
        let mut krylov = vec![v0.clone()];
        let mut span = Subspace::from_vectors(big, r, [v0.clone()]);
        loop {
            let next = apply(krylov.last().expect("nonempty"));
            krylov.push(next.clone());
            if !span.insert(big, next) {
                break;
            }
        }
        if krylov.len() != r + 1 {
            continue;
        }
        let rel = kernel_of_images(big, &krylov);
        let Some(rel) = rel.first() else { continue };
        let lead = big.inv(rel[r]).expect("minimal polynomial is monic up to scale");
        let poly: Vec<Fe> = rel.iter().map(|&x| big.mul(x, lead)).collect();
        let roots: Vec<Fe> = big.elements().filter(|&x| eval(big, &poly, x).is_zero()).collect();
        if roots.len() != r {
            continue;
        }
        let mut atoms = Vec::with_capacity(r);
        for (i, &ci) in roots.iter().enumerate() {
            // Lagrange basis polynomial for c_i
            let mut l = vec![Fe::ONE];
            let mut denom = Fe::ONE;
            for (j, &cj) in roots.iter().enumerate() {
                if i != j {
                    l = mul_linear(big, &l, cj);
                    denom = big.mul(denom, big.sub(ci, cj));
                }
            }
            let scale = big.inv(denom).expect("distinct roots");
            let mut coords = vec![Fe::ZERO; r];
            for (coef, v) in l.iter().zip(&krylov) {
                axpy(big, &mut coords, big.mul(*coef, scale), v);
            }
            let mut atom = vec![Fe::ZERO; c];
            for (v, &x) in fixed.basis().iter().zip(&coords) {
                let x = emb.restrict(x).ok_or_else(|| Error::Internal("idempotent not defined over k".into()))?;
                axpy(f, &mut atom, x, v);
            }
            atoms.push(atom);
        }
        let mut total = vec![Fe::ZERO; c];
        for a in &atoms {
            if !t.is_idempotent(a) {
                return internal("commutative splitting produced a non-idempotent");
            }
            axpy(f, &mut total, Fe::ONE, a);
        }
        if total != t.one() {
            return internal("commutative idempotents do not sum to 1");
        }
        return Ok(atoms);
    }
    internal("commutative splitting did not separate eigenvalues")
}

fn eval(f: &FiniteField, poly: &[Fe], x: Fe) -> Fe {
    poly.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `l(x) * (x - c)`, coefficients lowest first.
fn mul_linear(f: &FiniteField, l: &[Fe], c: Fe) -> Vec<Fe> {
    let mut out = vec![Fe::ZERO; l.len() + 1];
    for (i, &a) in l.iter().enumerate() {
        out[i + 1] = f.add(out[i + 1], a);
        out[i] = f.sub(out[i], f.mul(a, c));
    }
    out
}

/// Primitive idempotents of the commutative subalgebra on `space` (with unit `unit`) of a ring.
pub fn commutative_idempotents<R: Rng>(
    ring: &dyn Ring,
    space: &Subspace,
    unit: &[Fe],
    rng: &mut R,
) -> Result<Vec<Vec<Fe>>> {
    let f = ring.field();
    let basis = space.basis();
    let m = basis.len();
    let mut table = Vec::with_capacity(m * m);
    for x in basis {
        for y in basis {
            let c = space
                .coords(f, &ring.mul(x, y))
                .ok_or_else(|| Error::Internal("commutative subspace is not closed".into()))?;
            table.push(c.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(k, &v)| (k as u32, v)).collect());
        }
    }
    let one = space.coords(f, unit).ok_or_else(|| Error::Internal("unit outside subalgebra".into()))?;
    let t = Algebra::from_table(f.clone(), m, table, one)?;
    let atoms = split_commutative(&t, rng)?;
    Ok(atoms.iter().map(|a| combine(f, ring.dim(), basis, std::slice::from_ref(a)).remove(0)).collect())
}

/// Lift an idempotent modulo a nilpotent ideal by `e -> 3e^2 - 2e^3`.
pub fn lift_idempotent(alg: &Algebra, x: &[Fe]) -> Result<Vec<Fe>> {
    let f = &**alg.field();
    let (three, two) = (f.from_int(3), f.from_int(2));
    let mut e = x.to_vec();
    for _ in 0..=2 * (alg.dim() + 2).ilog2() + 8 {
        let e2 = alg.mul(&e, &e);
        if e2 == e {
            return Ok(e);
        }
        let e3 = alg.mul(&e2, &e);
        let mut next: Vec<Fe> = e2.iter().map(|&a| f.mul(three, a)).collect();
        axpy(f, &mut next, f.neg(two), &e3);
        e = next;
    }
    internal("idempotent lifting did not converge")
}

/// One simple factor `M_n(K)` of `A / J`, with `[K : k]` the center dimension.
#[derive(Clone, Debug, Serialize)]
pub struct WedderburnFactor {
    pub size: usize,
    pub center_dim: usize,
    /// Central idempotent of `A / J`, as a reduced representative in `A`.
    #[serde(skip)]
    pub central_idempotent: Vec<Fe>,
}

/// Radical and Wedderburn factors of an algebra.
#[derive(Clone, Debug)]
pub struct SemisimpleStructure {
    pub radical: Subspace,
    pub factors: Vec<WedderburnFactor>,
}

impl SemisimpleStructure {
    pub fn is_split(&self) -> bool {
        self.factors.iter().all(|w| w.center_dim == 1)
    }

    /// `Σ n_i^2 [K_i : k]`, the dimension of `A / J`.
    pub fn semisimple_dim(&self) -> usize {
        self.factors.iter().map(|w| w.size * w.size * w.center_dim).sum()
    }
}

fn rank_of(f: &FiniteField, dim: usize, vectors: impl IntoIterator<Item = Vec<Fe>>) -> usize {
    Subspace::from_vectors(f, dim, vectors).dim()
}

/// Wedderburn decomposition of `A / J`, without requiring that `k` splits it.
pub fn wedderburn<R: Rng>(alg: &Algebra, rng: &mut R) -> Result<SemisimpleStructure> {
    let f = alg.field().clone();
    let d = alg.dim();
    let j = radical(alg)?;
    let quot = ModIdeal { alg, ideal: &j };
    let center = alg.center_mod(&j);
    let reduced = Subspace::from_vectors(&f, d, center.basis().iter().map(|v| j.reduce(&f, v)));
    let unit = j.reduce(&f, alg.one());
    let mut atoms = commutative_idempotents(&quot, &reduced, &unit, rng)?;
    atoms.sort();
    let mut factors = Vec::with_capacity(atoms.len());
    for eps in atoms {
        let block_dim = rank_of(&f, d, (0..d).map(|i| quot.mul(&eps, &alg.basis_vector(i))));
        let center_dim = rank_of(&f, d, reduced.basis().iter().map(|z| quot.mul(&eps, z)));
        let n2 = block_dim / center_dim;
        let size = (n2 as f64).sqrt().round() as usize;
        if size * size * center_dim != block_dim {
            return internal("simple factor dimension is not a square");
        }
        factors.push(WedderburnFactor { size, center_dim, central_idempotent: eps });
    }
    if factors.iter().map(|w| w.size * w.size * w.center_dim).sum::<usize>() != d - j.dim() {
        return internal("Wedderburn factors do not fill A/J");
    }
    Ok(SemisimpleStructure { radical: j, factors })
}

/// Like [`wedderburn`], but fails with [`Error::SplittingFailure`] unless every factor is split.
pub fn semisimple_structure<R: Rng>(alg: &Algebra, rng: &mut R) -> Result<SemisimpleStructure> {
    let s = wedderburn(alg, rng)?;
    if let Some(w) = s.factors.iter().find(|w| w.center_dim > 1) {
        return Err(Error::SplittingFailure { center_dim: w.center_dim });
    }
    Ok(s)
}

/// A block of an algebra: a primitive idempotent of its center.
#[derive(Clone, Debug)]
pub struct Block {
    pub idempotent: Vec<Fe>,
    pub dim: usize,
    pub defect_zero: bool,
}

/// Blocks of `A`, with the defect-zero flag `b J = 0`.
pub fn lift_blocks<R: Rng>(alg: &Algebra, radical: &Subspace, rng: &mut R) -> Result<Vec<Block>> {
    let f = alg.field();
    let d = alg.dim();
    let center = alg.center();
    let mut atoms = commutative_idempotents(alg, &center, alg.one(), rng)?;
    atoms.sort();
    let blocks = atoms
        .into_iter()
        .map(|b| {
            let dim = rank_of(f, d, (0..d).map(|i| alg.mul(&b, &alg.basis_vector(i))));
            let defect_zero = radical.basis().iter().all(|x| is_zero(&alg.mul(&b, x)));
            Block { idempotent: b, dim, defect_zero }
        })
        .collect();
    Ok(blocks)
}

/// Sum of the defect-zero block idempotents (zero if there are none).
pub fn defect_zero_idempotent(alg: &Algebra, blocks: &[Block]) -> Vec<Fe> {
    let f = alg.field();
    let mut e = alg.zero();
    for b in blocks.iter().filter(|b| b.defect_zero) {
        axpy(f, &mut e, Fe::ONE, &b.idempotent);
    }
    e
}

/// `dim eAe - dim eJe`, which is 1 exactly for primitive idempotents over a splitting field.
fn local_defect(alg: &Algebra, j: &Subspace, e: &[Fe]) -> usize {
    alg.peirce(e, e).dim() - alg.peirce_of(e, j, e).dim()
}

/// Orthogonal primitive idempotents of `A`, one for each Wedderburn factor.
pub fn basic_idempotents<R: Rng>(alg: &Algebra, s: &SemisimpleStructure, rng: &mut R) -> Result<Vec<Vec<Fe>>> {
    let f = alg.field().clone();
    let j = &s.radical;
    let mut rest = alg.one().to_vec();
    let mut out = Vec::with_capacity(s.factors.len());
    for w in &s.factors {
        let x = alg.mul(&alg.mul(&rest, &w.central_idempotent), &rest);
        let mut e = lift_idempotent(alg, &x)?;
        let mut tries = 0;
        while local_defect(alg, j, &e) > 1 {
            tries += 1;
            if tries > REFINE_ATTEMPTS {
                return internal("could not split an idempotent into primitive pieces");
            }
            let corner = alg.peirce(&e, &e);
            let mut y = vec![Fe::ZERO; alg.dim()];
            for v in corner.basis() {
                let c = Fe(rng.gen_range(0..f.order()));
                axpy(&f, &mut y, c, v);
            }
            let mut span = Subspace::from_vectors(&f, alg.dim(), [e.clone()]);
            let mut power = e.clone();
            loop {
                power = alg.mul(&power, &y);
                if !span.insert(&f, power.clone()) {
                    break;
                }
            }
            let atoms = commutative_idempotents(alg, &span, &e, rng)?;
            if atoms.len() < 2 {
                continue;
            }
            e = atoms.into_iter().min_by_key(|a| local_defect(alg, j, a)).expect("at least two atoms");
        }
        axpy(&f, &mut rest, f.neg(Fe::ONE), &e);
        out.push(e);
    }
    Ok(out)
}
