use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::ffield::{make_field, Fe, FiniteField};
use crate::linalg::{unit_vector, Matrix};
use crate::smallgroup::SmallGroup;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(7)
}

/// `k[x] / x^n` with basis `1, x, ..., x^(n-1)`.
fn truncated(f: &std::sync::Arc<FiniteField>, n: usize) -> Algebra {
    let products: Vec<Option<u32>> =
        (0..n * n).map(|i| (i / n + i % n < n).then_some((i / n + i % n) as u32)).collect();
    Algebra::from_monomial(f.clone(), n, &products, unit_vector(n, 0)).unwrap()
}

fn mat(n: usize, entries: &[u32]) -> Matrix {
    Matrix::from_flat(n, n, entries.iter().map(|&x| Fe(x)).collect())
}

/// Every element of the algebra, by brute force over coefficient vectors.
fn elements(alg: &Algebra) -> Vec<Vec<Fe>> {
    let q = alg.field().order();
    let mut out = vec![alg.zero()];
    for i in 0..alg.dim() {
        let mut next = Vec::with_capacity(out.len() * q as usize);
        for v in &out {
            for c in 0..q {
                let mut w = v.clone();
                w[i] = Fe(c);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

fn is_nilpotent(alg: &Algebra, x: &[Fe]) -> bool {
    alg.pow(x, alg.dim() as u64 + 1).iter().all(|c| c.is_zero())
}

/// `J = { x : a x is nilpotent for every a }`, by exhausting the algebra.
fn brute_radical_dim(alg: &Algebra) -> usize {
    let all = elements(alg);
    let count = all.iter().filter(|x| all.iter().all(|a| is_nilpotent(alg, &alg.mul(a, x)))).count();
    let q = alg.field().order() as usize;
    let mut dim = 0;
    while q.pow(dim as u32) < count {
        dim += 1;
    }
    assert_eq!(q.pow(dim as u32), count, "radical is not a subspace");
    dim
}

#[test]
fn group_algebra_of_s3() {
    let f = make_field(2, 1).unwrap();
    let a = Algebra::from_group(&SmallGroup::symmetric3(), f).unwrap();
    let mut r = rng();
    let s = semisimple_structure(&a, &mut r).unwrap();
    assert_eq!(s.radical.dim(), 1);
    let mut sizes: Vec<usize> = s.factors.iter().map(|w| w.size).collect();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2]);
    let blocks = lift_blocks(&a, &s.radical, &mut r).unwrap();
    let mut dims: Vec<(usize, bool)> = blocks.iter().map(|b| (b.dim, b.defect_zero)).collect();
    dims.sort();
    assert_eq!(dims, vec![(2, false), (4, true)]);
    let e = defect_zero_idempotent(&a, &blocks);
    let (corner, _) = a.corner(&e).unwrap();
    assert_eq!(corner.dim(), 4);
    let cs = semisimple_structure(&corner, &mut r).unwrap();
    assert_eq!(cs.radical.dim(), 0);
    assert_eq!(cs.factors.len(), 1);
    assert_eq!(cs.factors[0].size, 2);
}

#[test]
fn basic_algebra_of_s3_is_kc2_times_k() {
    let f = make_field(2, 1).unwrap();
    let a = Algebra::from_group(&SmallGroup::symmetric3(), f.clone()).unwrap();
    let mut r = rng();
    let bp = basic_presentation(&a, &mut r).unwrap();
    assert_eq!(bp.algebra.dim(), 3);
    assert_eq!(bp.quiver.num_arrows(), 1);
    assert!(bp.quiver.has_loops());
    let target = {
        let c2 = Algebra::from_group(&SmallGroup::cyclic(2), f.clone()).unwrap();
        product(&c2, &truncated(&f, 1))
    };
    assert!(iso_search(&bp.algebra, &target, &mut r).unwrap().is_some());
}

/// Direct product of two table algebras.
fn product(a: &Algebra, b: &Algebra) -> Algebra {
    let (da, db) = (a.dim(), b.dim());
    let d = da + db;
    let mut table = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let entry: Vec<(u32, Fe)> = if i < da && j < da {
                a.mul_basis(i, j)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, &c)| (k as u32, c))
                    .collect()
            } else if i >= da && j >= da {
                b.mul_basis(i - da, j - da)
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, &c)| ((k + da) as u32, c))
                    .collect()
            } else {
                Vec::new()
            };
            table.push(entry);
        }
    }
    let mut one = a.one().to_vec();
    one.extend_from_slice(b.one());
    Algebra::from_table(a.field().clone(), d, table, one).unwrap()
}

#[test]
fn small_radicals() {
    let f = make_field(2, 1).unwrap();
    let c2 = Algebra::from_group(&SmallGroup::cyclic(2), f.clone()).unwrap();
    assert_eq!(radical(&c2).unwrap().dim(), 1);
    let e12 = mat(2, &[0, 1, 0, 0]);
    let e21 = mat(2, &[0, 0, 1, 0]);
    let m2 = Algebra::generated_by_matrices(f.clone(), 2, &[e12.clone(), e21]).unwrap();
    assert_eq!(m2.dim(), 4);
    assert_eq!(radical(&m2).unwrap().dim(), 0);
    let t2 = Algebra::generated_by_matrices(f.clone(), 2, &[e12, mat(2, &[1, 0, 0, 0])]).unwrap();
    assert_eq!(t2.dim(), 3);
    assert_eq!(radical(&t2).unwrap().dim(), 1);
    for n in 1..5 {
        assert_eq!(radical(&truncated(&f, n)).unwrap().dim(), n - 1);
    }
}

#[test]
fn radical_over_gf4_uses_scalar_expansion() {
    let f = make_field(2, 2).unwrap();
    // w is a root of x^2 + x + 1, so diag(1, w) generates the diagonal algebra
    let w = f.generator().0;
    let d = mat(2, &[1, 0, 0, w]);
    let n = mat(2, &[0, w, 0, 0]);
    let alg = Algebra::generated_by_matrices(f.clone(), 2, &[d, n]).unwrap();
    assert_eq!(alg.dim(), 3);
    assert_eq!(radical(&alg).unwrap().dim(), brute_radical_dim(&alg));
    assert_eq!(radical(&alg).unwrap().dim(), 1);
}

#[test]
fn natural_module_of_triangular_algebra() {
    let f = make_field(2, 1).unwrap();
    let t2 = Algebra::generated_by_matrices(f.clone(), 2, &[mat(2, &[0, 1, 0, 0]), mat(2, &[1, 0, 0, 0])]).unwrap();
    let mut r = rng();
    let s = semisimple_structure(&t2, &mut r).unwrap();
    let basic = basic_idempotents(&t2, &s, &mut r).unwrap();
    let m = AlgebraModule::natural(&t2).unwrap();
    m.check(&t2).unwrap();
    let factors = m.composition_factors(&s).unwrap();
    assert_eq!(factors.len(), 2);
    assert_ne!(factors[0].simple, factors[1].simple);
    assert!(m.is_projective(&t2, &s, &basic).unwrap());
    let top = m.quotient(&m.radical(&s.radical)).unwrap();
    assert_eq!(top.dim(), 1);
    assert!(!top.is_projective(&t2, &s, &basic).unwrap());
    let reg = AlgebraModule::regular(&t2);
    reg.check(&t2).unwrap();
    assert!(reg.is_projective(&t2, &s, &basic).unwrap());
}

#[test]
fn iso_search_separates_local_algebras() {
    let f = make_field(2, 1).unwrap();
    let mut r = rng();
    let c2 = Algebra::from_group(&SmallGroup::cyclic(2), f.clone()).unwrap();
    let w = iso_search(&c2, &truncated(&f, 2), &mut r).unwrap().expect("kC2 is k[x]/x^2");
    assert!(is_homomorphism(&c2, &truncated(&f, 2), &w.matrix));
    let klein = Algebra::from_group(&SmallGroup::cyclic(2).direct_product(&SmallGroup::cyclic(2)), f.clone()).unwrap();
    let c4 = Algebra::from_group(&SmallGroup::cyclic(4), f.clone()).unwrap();
    assert!(iso_search(&c4, &truncated(&f, 4), &mut r).unwrap().is_some());
    assert!(iso_search(&klein, &c4, &mut r).unwrap().is_none());
    assert!(iso_search(&klein, &truncated(&f, 3), &mut r).unwrap().is_none());
}

#[test]
fn socles_of_truncated_polynomials() {
    let f = make_field(2, 1).unwrap();
    let a = truncated(&f, 3);
    let j = radical(&a).unwrap();
    for side in [Side::Left, Side::Right] {
        let (soc, q) = socle_quotient(&a, &j, side).unwrap();
        assert_eq!(soc.dim(), 1);
        assert!(soc.contains(&f, &unit_vector(3, 2)));
        assert_eq!(q.algebra.dim(), 2);
    }
}

#[test]
fn lifting_idempotents_mod_radical() {
    let f = make_field(2, 1).unwrap();
    let t2 = Algebra::generated_by_matrices(f.clone(), 2, &[mat(2, &[0, 1, 0, 0]), mat(2, &[1, 0, 0, 0])]).unwrap();
    // E11 + E12 is already idempotent; E11 + E12 + nilpotent noise stays idempotent mod J
    let x = t2.coords_of_matrix(&mat(2, &[1, 1, 0, 0])).unwrap();
    let e = lift_idempotent(&t2, &x).unwrap();
    assert!(t2.is_idempotent(&e));
}

fn arb_gens(q: u32, n: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    // upper-triangular-heavy generators so that radicals are often nonzero
    prop::collection::vec(
        prop::collection::vec((0..q, any::<bool>()), n * n).prop_map(move |v| {
            v.into_iter().enumerate().map(|(idx, (c, keep))| if idx / n > idx % n && !keep { 0 } else { c }).collect()
        }),
        1..3,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn radical_matches_brute_force_gf2(gens in arb_gens(2, 3)) {
        let f = make_field(2, 1).unwrap();
        let mats: Vec<Matrix> = gens.iter().map(|g| mat(3, g)).collect();
        let alg = Algebra::generated_by_matrices(f.clone(), 3, &mats).unwrap();
        prop_assume!(alg.dim() <= 6);
        prop_assert_eq!(radical(&alg).unwrap().dim(), brute_radical_dim(&alg));
    }

    #[test]
    fn radical_matches_brute_force_gf4(gens in arb_gens(4, 2)) {
        let f = make_field(2, 2).unwrap();
        let mats: Vec<Matrix> = gens.iter().map(|g| mat(2, g)).collect();
        let alg = Algebra::generated_by_matrices(f.clone(), 2, &mats).unwrap();
        prop_assume!(alg.dim() <= 3);
        prop_assert_eq!(radical(&alg).unwrap().dim(), brute_radical_dim(&alg));
    }

    #[test]
    fn basic_idempotents_are_orthogonal_and_primitive(gens in arb_gens(2, 3), seed in any::<u64>()) {
        let f = make_field(2, 1).unwrap();
        let mats: Vec<Matrix> = gens.iter().map(|g| mat(3, g)).collect();
        let alg = Algebra::generated_by_matrices(f.clone(), 3, &mats).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = wedderburn(&alg, &mut r).unwrap();
        prop_assume!(s.is_split());
        let idems = basic_idempotents(&alg, &s, &mut r).unwrap();
        for (i, e) in idems.iter().enumerate() {
            prop_assert!(alg.is_idempotent(e));
            let local = alg.peirce(e, e).dim() - alg.peirce_of(e, &s.radical, e).dim();
            prop_assert_eq!(local, 1);
            for (k, g) in idems.iter().enumerate() {
                if i != k {
                    prop_assert!(alg.mul(e, g).iter().all(|c| c.is_zero()));
                }
            }
        }
    }

    #[test]
    fn wedderburn_factors_fill_semisimple_quotient(gens in arb_gens(2, 3), seed in any::<u64>()) {
        let f = make_field(2, 1).unwrap();
        let mats: Vec<Matrix> = gens.iter().map(|g| mat(3, g)).collect();
        let alg = Algebra::generated_by_matrices(f, 3, &mats).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let s = wedderburn(&alg, &mut r).unwrap();
        prop_assert_eq!(s.semisimple_dim() + s.radical.dim(), alg.dim());
    }
}
