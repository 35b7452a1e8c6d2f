//! Jacobson radical of a matrix algebra in characteristic `p`.
//!
//! For `A <= M_n(F_p)` and `x` in `A`, lift `x` to an integer matrix with
//! entries in `0..p` and let `g_i(x)` be `Tr(x^(p^i)) / p^i mod p`. Starting
//! from `I_{-1} = A`, the subspaces
//! `I_i = { a in I_{i-1} : g_i(ab) = 0 for all b in A }` are ideals on which
//! `g_{i+1}` is linear, and `I_l = J(A)` for `l = floor(log_p n)`. Algebras over
//! `GF(p^e)` are first written over `F_p` by expanding scalars into `e x e`
//! blocks, unless the realization is already defined over `F_p`.

use rayon::prelude::*;

use super::algebra::Algebra;
use crate::error::{internal, Result};
use crate::ffield::{make_field, Fe, FiniteField};
use crate::linalg::{kernel_of_images, Matrix, Subspace};

/// Square integer matrix mod `modulus`.
#[derive(Clone)]
struct IntMatrix {
    n: usize,
    data: Vec<u64>,
}

impl IntMatrix {
    fn mul(&self, rhs: &IntMatrix, modulus: u64) -> IntMatrix {
        let n = self.n;
        let mut out = vec![0u64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out[i * n..(i + 1) * n];
                for (d, &b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
            for d in &mut out[i * n..(i + 1) * n] {
                *d %= modulus;
            }
        }
        IntMatrix { n, data: out }
    }

    fn trace(&self, modulus: u64) -> u64 {
        (0..self.n).map(|i| self.data[i * self.n + i]).sum::<u64>() % modulus
    }
}

/// Basis matrices over `F_p` (entries `0..p`) spanning `A` as an `F_p`-space,
/// and how `F_p`-coordinates map back to `k`-coordinates.
struct PrimeForm {
    n: usize,
    mats: Vec<Vec<u32>>,
    /// `F_p` basis element `r` is `alpha^(r % e)` times basis element `r / e`.
    e: usize,
}

fn prime_form(field: &FiniteField, n: usize, mats: &[Matrix]) -> PrimeForm {
    let p = field.characteristic();
    let over_prime = mats.iter().all(|m| m.as_slice().iter().all(|c| c.0 < p));
    if over_prime {
        return PrimeForm { n, mats: mats.iter().map(|m| m.as_slice().iter().map(|c| c.0).collect()).collect(), e: 1 };
    }
    let e = field.degree() as usize;
    // multiplication by c on k = F_p^e in the power basis, as an e x e matrix over F_p
    let block = |c: Fe| -> Vec<u32> {
        let mut b = vec![0u32; e * e];
        let mut basis_elt = Fe::ONE;
        let alpha = field.generator();
        for col in 0..e {
            let d = field.digits(field.mul(c, basis_elt));
            for (row, &v) in d.iter().enumerate() {
                b[row * e + col] = v;
            }
            basis_elt = field.mul(basis_elt, alpha);
        }
        b
    };
    let ne = n * e;
    let mut out = Vec::with_capacity(mats.len() * e);
    let mut scalar = Vec::with_capacity(e);
    let alpha = field.generator();
    let mut a = Fe::ONE;
    for _ in 0..e {
        scalar.push(a);
        a = field.mul(a, alpha);
    }
    for m in mats {
        for &s in &scalar {
            let mut big = vec![0u32; ne * ne];
            for i in 0..n {
                for j in 0..n {
                    let c = field.mul(s, m.get(i, j));
                    if c.is_zero() {
                        continue;
                    }
                    let b = block(c);
                    for r in 0..e {
                        for t in 0..e {
                            big[(i * e + r) * ne + j * e + t] = b[r * e + t];
                        }
                    }
                }
            }
            out.push(big);
        }
    }
    PrimeForm { n: ne, mats: out, e }
}

/// `J(A)` as a subspace of `A`, with its defining properties checked.
pub fn radical(alg: &Algebra) -> Result<Subspace> {
    let f = alg.field();
    let d = alg.dim();
    if d == 0 {
        return Ok(Subspace::new(0));
    }
    let (n, mats) = alg.faithful_rep();
    let form = prime_form(f, n, &mats);
    let fp = make_field(f.characteristic() as u64, 1)?;
    let coords = ronyai(&fp, &form)?;

    // back to k-coordinates: F_p basis element r is alpha^(r % e) b_(r / e)
    let alpha = f.generator();
    let powers: Vec<Fe> = (0..form.e)
        .scan(Fe::ONE, |acc, _| {
            let cur = *acc;
            *acc = f.mul(*acc, alpha);
            Some(cur)
        })
        .collect();
    let mut j = Subspace::new(d);
    for c in coords {
        let mut v = vec![Fe::ZERO; d];
        for (r, x) in c.iter().enumerate() {
            if !x.is_zero() {
                let term = f.mul(f.from_int(x.0 as i64), powers[r % form.e]);
                v[r / form.e] = f.add(v[r / form.e], term);
            }
        }
        j.insert(f, v);
    }
    if !alg.is_ideal(&j) {
        return internal("computed radical is not an ideal");
    }
    if !alg.is_nilpotent_ideal(&j) {
        return internal("computed radical is not nilpotent");
    }
    Ok(j)
}

fn ronyai(fp: &FiniteField, form: &PrimeForm) -> Result<Vec<Vec<Fe>>> {
    let p = fp.characteristic() as u64;
    let n = form.n;
    let dim = form.mats.len();
    let basis: Vec<IntMatrix> =
        form.mats.iter().map(|m| IntMatrix { n, data: m.iter().map(|&x| x as u64).collect() }).collect();
    let mut l = 0u32;
    while p.pow(l + 1) <= n as u64 {
        l += 1;
    }
    // current ideal: coordinate vectors over F_p with their matrices
    let mut ideal: Vec<(Vec<Fe>, IntMatrix)> = (0..dim)
        .map(|r| {
            let mut c = vec![Fe::ZERO; dim];
            c[r] = Fe::ONE;
            (c, basis[r].clone())
        })
        .collect();
    for i in 0..=l {
        let pi = p.pow(i);
        let modulus = pi * p;
        let rows: Result<Vec<Vec<Fe>>> = ideal
            .par_iter()
            .map(|(_, a)| {
                basis
                    .iter()
                    .map(|b| {
                        let mut x = a.mul(b, p);
                        // x^(p^i) by i-fold p-th powers
                        for _ in 0..i {
                            let mut acc = x.clone();
                            for _ in 1..p {
                                acc = acc.mul(&x, modulus);
                            }
                            x = acc;
                        }
                        let t = x.trace(modulus);
                        if t % pi != 0 {
                            return internal("trace of p-power not divisible as expected");
                        }
                        Ok(Fe((t / pi) as u32))
                    })
                    .collect()
            })
            .collect();
        let rows = rows?;
        let kernel = kernel_of_images(fp, &rows);
        let next: Vec<(Vec<Fe>, IntMatrix)> = kernel
            .iter()
            .map(|comb| {
                let mut c = vec![Fe::ZERO; dim];
                let mut m = vec![0u64; n * n];
                for ((coords, mat), &lambda) in ideal.iter().zip(comb) {
                    if lambda.is_zero() {
                        continue;
                    }
                    for (dst, &src) in c.iter_mut().zip(coords) {
                        *dst = fp.mul_add(*dst, lambda, src);
                    }
                    for (dst, &src) in m.iter_mut().zip(&mat.data) {
                        *dst = (*dst + lambda.0 as u64 * src) % p;
                    }
                }
                (c, IntMatrix { n, data: m })
            })
            .collect();
        ideal = next;
        if ideal.is_empty() {
            break;
        }
    }
    Ok(ideal.into_iter().map(|(c, _)| c).collect())
}
