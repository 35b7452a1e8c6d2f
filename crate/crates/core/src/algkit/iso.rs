//! Isomorphism search between small basic algebras.
//!
//! Both algebras are generated by their primitive idempotents and arrow
//! representatives. A homomorphism is fixed by a vertex bijection and the images
//! of the arrows, so the search enumerates those and checks each candidate on all
//! products of basis elements.

use itertools::Itertools;
use rand::Rng;

use super::algebra::Algebra;
use super::basic::radical_powers;
use super::idempotents::{basic_idempotents, semisimple_structure};
use crate::error::{internal, Error, Result};
use crate::ffield::Fe;
use crate::linalg::{Matrix, Subspace};

pub const MAX_ISO_DIM: usize = 8;
const MAX_CANDIDATES: u64 = 1 << 20;

/// An algebra isomorphism `A -> B`; column `i` is the image of basis element `i` of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub matrix: Matrix,
}

struct Generators {
    idems: Vec<Vec<Fe>>,
    /// Arrow representatives with their endpoints `(from, to, element)`.
    arrows: Vec<(usize, usize, Vec<Fe>)>,
    /// Peirce pieces `e_j J e_i` indexed by `(i, j)`.
    rad_pieces: Vec<Vec<Subspace>>,
    cartan: Vec<Vec<usize>>,
    layers: Vec<usize>,
}

fn generators<R: Rng>(alg: &Algebra, rng: &mut R) -> Result<Option<Generators>> {
    let f = alg.field();
    let s = semisimple_structure(alg, rng)?;
    if s.factors.iter().any(|w| w.size != 1) {
        return Ok(None);
    }
    let idems = basic_idempotents(alg, &s, rng)?;
    let j = &s.radical;
    let powers = radical_powers(alg, j);
    let zero = Subspace::new(alg.dim());
    let j2 = powers.get(1).unwrap_or(&zero);
    let n = idems.len();
    let mut arrows = Vec::new();
    let mut rad_pieces = vec![Vec::with_capacity(n); n];
    let mut cartan = vec![vec![0; n]; n];
    for i in 0..n {
        for k in 0..n {
            cartan[i][k] = alg.peirce(&idems[k], &idems[i]).dim();
            let top = alg.peirce_of(&idems[k], j, &idems[i]);
            let mut low = alg.peirce_of(&idems[k], j2, &idems[i]);
            for v in top.basis() {
                if low.insert(f, v.clone()) {
                    arrows.push((i, k, v.clone()));
                }
            }
            rad_pieces[i].push(top);
        }
    }
    Ok(Some(Generators { idems, arrows, rad_pieces, cartan, layers: powers.iter().map(Subspace::dim).collect() }))
}

/// Words in the generators spanning the algebra: `None` is an idempotent, otherwise
/// `(arrow, word)` means the arrow times an earlier word.
fn word_basis(alg: &Algebra, g: &Generators) -> Result<Vec<(usize, Option<(usize, usize)>)>> {
    let f = alg.field();
    let mut span = Subspace::new(alg.dim());
    let mut words = Vec::new();
    let mut values: Vec<Vec<Fe>> = Vec::new();
    for (i, e) in g.idems.iter().enumerate() {
        if span.insert(f, e.clone()) {
            words.push((i, None));
            values.push(e.clone());
        }
    }
    let mut frontier = 0;
    while frontier < values.len() {
        for (a, (_, _, x)) in g.arrows.iter().enumerate() {
            let v = alg.mul(x, &values[frontier]);
            if span.insert(f, v.clone()) {
                words.push((0, Some((a, frontier))));
                values.push(v);
            }
        }
        frontier += 1;
    }
    if span.dim() != alg.dim() {
        return internal("idempotents and arrows do not generate the algebra");
    }
    Ok(words)
}

fn evaluate(
    b: &Algebra,
    words: &[(usize, Option<(usize, usize)>)],
    idems: &[Vec<Fe>],
    arrows: &[Vec<Fe>],
) -> Vec<Vec<Fe>> {
    let mut out: Vec<Vec<Fe>> = Vec::with_capacity(words.len());
    for &(i, w) in words {
        let v = match w {
            None => idems[i].clone(),
            Some((a, prev)) => b.mul(&arrows[a], &out[prev]),
        };
        out.push(v);
    }
    out
}

/// Every index tuple below `bounds`, in lexicographic order (one empty tuple if `bounds` is empty).
fn odometer(bounds: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut next = (!bounds.contains(&0)).then(|| vec![0; bounds.len()]);
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut succ = cur.clone();
        for pos in (0..bounds.len()).rev() {
            succ[pos] += 1;
            if succ[pos] < bounds[pos] {
                next = Some(succ);
                break;
            }
            succ[pos] = 0;
        }
        Some(cur)
    })
}

fn all_elements(f: &crate::ffield::FiniteField, s: &Subspace) -> Vec<Vec<Fe>> {
    let q = f.order() as usize;
    odometer(&vec![q; s.dim()])
        .map(|coeffs| {
            let mut v = vec![Fe::ZERO; s.ambient()];
            for (row, c) in s.basis().iter().zip(coeffs) {
                crate::linalg::axpy(f, &mut v, Fe(c as u32), row);
            }
            v
        })
        .collect()
}

/// Searches for an isomorphism between two basic algebras of dimension at most [`MAX_ISO_DIM`].
/// Returns `Ok(None)` when none exists or when either algebra is not basic.
pub fn iso_search<R: Rng>(a: &Algebra, b: &Algebra, rng: &mut R) -> Result<Option<IsoWitness>> {
    if a.field() != b.field() {
        return Err(Error::IncompatibleFields { sub: a.field().order() as u64, sup: b.field().order() as u64 });
    }
    let d = a.dim();
    if d > MAX_ISO_DIM || b.dim() > MAX_ISO_DIM {
        return Err(Error::Bound(format!("isomorphism search is limited to dimension {MAX_ISO_DIM}")));
    }
    if d != b.dim() {
        return Ok(None);
    }
    let (Some(ga), Some(gb)) = (generators(a, rng)?, generators(b, rng)?) else {
        return Ok(None);
    };
    let n = ga.idems.len();
    if n != gb.idems.len() || ga.layers != gb.layers || ga.arrows.len() != gb.arrows.len() {
        return Ok(None);
    }
    let f = a.field();
    let words = word_basis(a, &ga)?;
    let word_values = evaluate(a, &words, &ga.idems, &ga.arrows.iter().map(|x| x.2.clone()).collect::<Vec<_>>());
    let w_inv = Matrix::from_columns(d, &word_values)
        .inverse(f)
        .ok_or_else(|| Error::Internal("word basis is singular".into()))?;

    for perm in (0..n).permutations(n) {
        let compatible = (0..n).all(|i| (0..n).all(|k| ga.cartan[i][k] == gb.cartan[perm[i]][perm[k]]));
        if !compatible {
            continue;
        }
        let idems: Vec<Vec<Fe>> = perm.iter().map(|&p| gb.idems[p].clone()).collect();
        let candidates: Vec<Vec<Vec<Fe>>> =
            ga.arrows.iter().map(|&(i, k, _)| all_elements(f, &gb.rad_pieces[perm[i]][perm[k]])).collect();
        let total = candidates.iter().try_fold(1u64, |acc, c| acc.checked_mul(c.len() as u64));
        if total.is_none_or(|t| t > MAX_CANDIDATES) {
            return Err(Error::Bound("too many candidate arrow images".into()));
        }
        let bounds: Vec<usize> = candidates.iter().map(Vec::len).collect();
        for choice in odometer(&bounds) {
            let arrows: Vec<Vec<Fe>> = choice.iter().zip(&candidates).map(|(&c, cs)| cs[c].clone()).collect();
            let images = evaluate(b, &words, &idems, &arrows);
            let phi_w = Matrix::from_columns(d, &images);
            if phi_w.rank(f) != d {
                continue;
            }
            let phi = phi_w.mul(f, &w_inv);
            if is_homomorphism(a, b, &phi) {
                return Ok(Some(IsoWitness { matrix: phi }));
            }
        }
    }
    Ok(None)
}

/// Whether a linear map (as a matrix in the standard bases) is a unital algebra homomorphism.
pub fn is_homomorphism(a: &Algebra, b: &Algebra, phi: &Matrix) -> bool {
    let f = a.field();
    if phi.apply(f, a.one()) != b.one() {
        return false;
    }
    let cols: Vec<Vec<Fe>> = (0..a.dim()).map(|i| phi.column(i)).collect();
    (0..a.dim()).all(|i| (0..a.dim()).all(|j| phi.apply(f, &a.mul_basis(i, j)) == b.mul(&cols[i], &cols[j])))
}
