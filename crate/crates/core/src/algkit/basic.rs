use rand::Rng;
use serde::Serialize;

use super::algebra::{Algebra, Quotient};
use super::idempotents::{basic_idempotents, semisimple_structure, SemisimpleStructure};
use super::radical::radical;
use crate::error::{internal, Result};
use crate::ffield::Fe;
use crate::linalg::{kernel_of_images, Subspace};

pub const CARTAN_CONVENTION: &str =
    "c[i][j] = dim e_j B e_i; projectives P_i = B e_i (left modules); arrow i -> j counts dim e_j (J/J^2) e_i";

/// A vertex of the quiver: a simple module of the original algebra.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Vertex {
    pub simple_dim: usize,
    pub projective_dim: usize,
}

/// A length-two path `i -> j -> k` and whether its composite vanishes modulo `J^3`.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Composite {
    pub path: [usize; 3],
    pub vanishes: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct QuiverData {
    pub vertices: Vec<Vertex>,
    /// `arrows[i][j]`: number of arrows `i -> j`.
    pub arrows: Vec<Vec<usize>>,
    pub cartan: Vec<Vec<usize>>,
    pub composites: Vec<Composite>,
    /// Dimensions of `J, J^2, ...` down to zero, for the basic algebra.
    pub radical_layers: Vec<usize>,
    pub convention: &'static str,
}

impl QuiverData {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.iter().flatten().sum()
    }

    pub fn has_loops(&self) -> bool {
        (0..self.vertices.len()).any(|i| self.arrows[i][i] > 0)
    }

    /// The same data with vertices renumbered: new vertex `v` is old vertex `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> QuiverData {
        let n = perm.len();
        let inv: Vec<usize> = {
            let mut inv = vec![0; n];
            for (new, &old) in perm.iter().enumerate() {
                inv[old] = new;
            }
            inv
        };
        QuiverData {
            vertices: perm.iter().map(|&o| self.vertices[o].clone()).collect(),
            arrows: (0..n).map(|i| (0..n).map(|j| self.arrows[perm[i]][perm[j]]).collect()).collect(),
            cartan: (0..n).map(|i| (0..n).map(|j| self.cartan[perm[i]][perm[j]]).collect()).collect(),
            composites: self
                .composites
                .iter()
                .map(|c| Composite { path: c.path.map(|v| inv[v]), vanishes: c.vanishes })
                .collect(),
            radical_layers: self.radical_layers.clone(),
            convention: self.convention,
        }
    }
}

/// `B = fAf` for a basic idempotent `f`, with its quiver.
#[derive(Clone, Debug)]
pub struct BasicPresentation {
    pub algebra: Algebra,
    /// Primitive idempotents of `B`, in `B`-coordinates, ordered like the Wedderburn factors of `A`.
    pub idempotents: Vec<Vec<Fe>>,
    /// The same idempotents in `A`-coordinates.
    pub parent_idempotents: Vec<Vec<Fe>>,
    /// Basis of `B` in `A`-coordinates.
    pub embedding: Vec<Vec<Fe>>,
    pub structure: SemisimpleStructure,
    pub radical: Subspace,
    pub quiver: QuiverData,
}

pub fn basic_presentation<R: Rng>(alg: &Algebra, rng: &mut R) -> Result<BasicPresentation> {
    let s = semisimple_structure(alg, rng)?;
    let idems = basic_idempotents(alg, &s, rng)?;
    let f = alg.field().clone();
    let mut total = alg.zero();
    for e in &idems {
        crate::linalg::axpy(&f, &mut total, Fe::ONE, e);
    }
    let (b, embedding) = alg.corner(&total)?;
    let space = alg.peirce(&total, &total);
    let local: Vec<Vec<Fe>> = idems
        .iter()
        .map(|e| space.coords(&f, e).ok_or_else(|| crate::error::Error::Internal("idempotent outside corner".into())))
        .collect::<Result<_>>()?;
    let jb = radical(&b)?;
    let mut quiver = quiver_of(&b, &local, &jb)?;
    for (v, w) in quiver.vertices.iter_mut().zip(&s.factors) {
        v.simple_dim = w.size;
    }
    Ok(BasicPresentation {
        algebra: b,
        idempotents: local,
        parent_idempotents: idems,
        embedding,
        structure: s,
        radical: jb,
        quiver,
    })
}

/// Powers `J, J^2, ...` until zero.
pub fn radical_powers(alg: &Algebra, j: &Subspace) -> Vec<Subspace> {
    let mut out = vec![j.clone()];
    while out.last().expect("nonempty").dim() > 0 && out.len() <= alg.dim() + 1 {
        let next = alg.product_space(out.last().expect("nonempty").basis(), j.basis());
        out.push(next);
    }
    out
}

/// Quiver, Cartan matrix and length-two composites of an algebra with a complete set of
/// orthogonal primitive idempotents.
pub fn quiver_of(b: &Algebra, idems: &[Vec<Fe>], j: &Subspace) -> Result<QuiverData> {
    let f = b.field();
    let n = idems.len();
    let powers = radical_powers(b, j);
    let zero = Subspace::new(b.dim());
    let j2 = powers.get(1).unwrap_or(&zero);
    let j3 = powers.get(2).unwrap_or(&zero);
    let mut arrows = vec![vec![0; n]; n];
    let mut cartan = vec![vec![0; n]; n];
    let mut reps: Vec<Vec<Vec<Vec<Fe>>>> = vec![vec![Vec::new(); n]; n];
    for i in 0..n {
        for jj in 0..n {
            cartan[i][jj] = b.peirce(&idems[jj], &idems[i]).dim();
            let top = b.peirce_of(&idems[jj], j, &idems[i]);
            let low = b.peirce_of(&idems[jj], j2, &idems[i]);
            arrows[i][jj] = top.dim() - low.dim();
            let mut s = low.clone();
            for v in top.basis() {
                if s.insert(f, v.clone()) {
                    reps[i][jj].push(v.clone());
                }
            }
        }
    }
    let mut composites = Vec::new();
    for i in 0..n {
        for mid in 0..n {
            for k in 0..n {
                if reps[i][mid].is_empty() || reps[mid][k].is_empty() {
                    continue;
                }
                let vanishes = reps[i][mid].iter().all(|a| reps[mid][k].iter().all(|c| j3.contains(f, &b.mul(c, a))));
                composites.push(Composite { path: [i, mid, k], vanishes });
            }
        }
    }
    let vertices =
        (0..n).map(|i| Vertex { simple_dim: 1, projective_dim: (0..n).map(|jj| cartan[i][jj]).sum() }).collect();
    let quiver = QuiverData {
        vertices,
        arrows,
        cartan,
        composites,
        radical_layers: powers.iter().map(Subspace::dim).collect(),
        convention: CARTAN_CONVENTION,
    };
    let total: usize = quiver.vertices.iter().map(|v| v.projective_dim).sum();
    if total != b.dim() {
        return internal("projective dimensions do not add up to the algebra dimension");
    }
    Ok(quiver)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

/// Left socle `{a : J a = 0}` or right socle `{a : a J = 0}`.
pub fn socle(alg: &Algebra, j: &Subspace, side: Side) -> Subspace {
    let f = alg.field();
    let d = alg.dim();
    let images: Vec<Vec<Fe>> = (0..d)
        .map(|i| {
            let a = alg.basis_vector(i);
            j.basis()
                .iter()
                .flat_map(|x| match side {
                    Side::Left => alg.mul(x, &a),
                    Side::Right => alg.mul(&a, x),
                })
                .collect()
        })
        .collect();
    if j.dim() == 0 {
        return Subspace::whole(d);
    }
    Subspace::from_vectors(f, d, kernel_of_images(f, &images))
}

/// The quotient by a one-sided socle, after checking that the socle is a two-sided ideal.
pub fn socle_quotient(alg: &Algebra, j: &Subspace, side: Side) -> Result<(Subspace, Quotient)> {
    let soc = socle(alg, j, side);
    if !alg.is_ideal(&soc) {
        return internal("socle is not a two-sided ideal");
    }
    let q = alg.quotient(&soc)?;
    Ok((soc, q))
}
