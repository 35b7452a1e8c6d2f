use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algkit::{iso_search, Algebra};
use crate::ffield::make_field;
use crate::matgrp::build_gl2;
use crate::smallgroup::SmallGroup;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn hecke_rank_two_quadratic_relation() {
    let f = make_field(5, 1).unwrap();
    for v in 1..5 {
        let h = HeckeAlgebra::new(2, Fe(v), f.clone()).unwrap();
        let s = h.simple_reflections()[0];
        let a = h.algebra();
        let ts = a.basis_vector(s);
        let mut expected = a.zero();
        expected[0] = Fe(v);
        expected[s] = f.sub(Fe(v), Fe::ONE);
        assert_eq!(a.mul(&ts, &ts), expected);
    }
}

#[test]
fn hecke_at_one_is_the_group_algebra() {
    let f = make_field(2, 1).unwrap();
    for n in 1..=4 {
        let h = HeckeAlgebra::new(n, Fe::ONE, f.clone()).unwrap();
        let a = h.algebra();
        for (x, px) in h.perms().iter().enumerate() {
            for (y, py) in h.perms().iter().enumerate() {
                let xy: Vec<u8> = py.iter().map(|&i| px[i as usize]).collect();
                assert_eq!(a.mul_basis(x, y), crate::linalg::unit_vector(a.dim(), h.index_of(&xy)));
            }
        }
    }
}

#[test]
fn hecke_generic_parameter_is_associative() {
    let f = make_field(7, 1).unwrap();
    let h = HeckeAlgebra::new(3, Fe(3), f).unwrap();
    assert_eq!(h.algebra().dim(), 6);
    h.algebra().check_associative::<ChaCha8Rng>(None).unwrap();
}

#[test]
fn hecke_rejects_zero_parameter() {
    let f = make_field(3, 1).unwrap();
    assert!(HeckeAlgebra::new(2, Fe::ZERO, f).is_err());
}

#[test]
fn permutation_module_dimensions() {
    let f2 = make_field(2, 1).unwrap();
    let h = HeckeAlgebra::new(2, Fe::ONE, f2).unwrap();
    assert_eq!(h.m_mu_module(&Composition::new(vec![1, 1])).unwrap().dim(), 2);
    assert_eq!(h.m_mu_module(&Composition::new(vec![2, 0])).unwrap().dim(), 1);
    let f7 = make_field(7, 1).unwrap();
    let h3 = HeckeAlgebra::new(3, Fe(3), f7).unwrap();
    assert_eq!(h3.m_mu_module(&Composition::new(vec![2, 1])).unwrap().dim(), 3);
    assert_eq!(h3.m_mu_module(&Composition::new(vec![1, 1, 1])).unwrap().dim(), 6);
}

#[test]
fn compositions_include_zero_parts() {
    let all = Composition::all(2, 2);
    assert_eq!(all.iter().map(|c| c.parts.clone()).collect::<Vec<_>>(), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    // stars and bars: C(n + d - 1, d - 1)
    assert_eq!(Composition::all(3, 4).len(), 15);
    assert_eq!(Composition::new(vec![1, 0, 0]).height(), 1);
    assert_eq!(Composition::new(vec![0, 2, 0]).height(), 2);
}

#[test]
fn endomorphisms_of_the_regular_module() {
    let f = make_field(2, 1).unwrap();
    let b = schur_def_with(2, &[Composition::new(vec![1, 1])], Fe::ONE, f.clone(), &mut rng(1)).unwrap();
    let kc2 = Algebra::from_group(&SmallGroup::cyclic(2), f).unwrap();
    assert_eq!(b.algebra.dim(), 2);
    assert!(iso_search(&b.algebra, &kc2, &mut rng(2)).unwrap().is_some());
}

#[test]
fn hecke_route_has_expected_basic_algebra() {
    let f = make_field(2, 1).unwrap();
    let b = schur_def(2, 2, Fe::ONE, f.clone(), &mut rng(3)).unwrap();
    // classical S(2,2): C(n + d^2 - 1, n) = 10
    assert_eq!(b.algebra.dim(), 10);
    let check = check_expected_schur(&b);
    assert!(check.passed(), "{:?}", check.failures().collect::<Vec<_>>());

    let without_duplicate =
        schur_def_with(2, &[Composition::new(vec![2, 0]), Composition::new(vec![1, 1])], Fe::ONE, f, &mut rng(4))
            .unwrap();
    assert!(iso_search(&b.basic.algebra, &without_duplicate.basic.algebra, &mut rng(5)).unwrap().is_some());
}

#[test]
fn projective_line_labels() {
    let g = build_gl2(5).unwrap();
    let line = ProjectiveLine::new(g.field().clone());
    assert_eq!(line.len(), 6);
    for (i, p) in line.points().iter().enumerate() {
        assert_eq!(line.index(p[0], p[1]), i);
    }
    // the swap exchanges [1:0] and [0:1] and inverts the rest
    let w = crate::matgrp::GroupElement([Fe::ZERO, Fe::ONE, Fe::ONE, Fe::ZERO]);
    let perm = line.permutation(&w);
    assert_eq!(&perm[..2], &[1, 0]);
    assert_eq!(perm[5], 5);
}

#[test]
fn image_route_q3() {
    let g = build_gl2(3).unwrap();
    let f = make_field(2, 1).unwrap();
    let b = schur_image(&g, f.clone(), &mut rng(6)).unwrap();
    assert_eq!(b.algebra.dim(), 10);
    let img = b.image.as_ref().unwrap();
    assert_eq!(img.v_composition, vec![1, 2, 1]);
    // PGL2(3) is S4 acting faithfully on 4 points
    assert_eq!(img.distinct_permutations, 24);
    let check = check_expected_schur(&b);
    assert!(check.passed(), "{:?}", check.failures().collect::<Vec<_>>());

    let hecke = schur_def(2, 2, Fe::ONE, f, &mut rng(7)).unwrap();
    assert!(iso_search(&b.basic.algebra, &hecke.basic.algebra, &mut rng(8)).unwrap().is_some());
}

#[test]
fn image_route_q5_w_is_projective() {
    let g = build_gl2(5).unwrap();
    let b = schur_image(&g, make_field(2, 1).unwrap(), &mut rng(9)).unwrap();
    let img = b.image.as_ref().unwrap();
    assert_eq!(img.w_composition, vec![4, 1]);
    assert!(img.w_projective);
    assert_eq!(b.algebra.dim(), 26);
}

#[test]
fn principal_block_q3() {
    let g = build_gl2(3).unwrap();
    let f = make_field(2, 1).unwrap();
    let center = class_sum_center(&g, f.clone()).unwrap();
    // classes of GL2(3) by brute-force conjugation orbits
    let mut seen = vec![false; g.order()];
    let mut count = 0;
    for x in 0..g.order() {
        if seen[x] {
            continue;
        }
        count += 1;
        for y in g.elements() {
            let c = g.conj(y, &g.inv(y), &g.element(x));
            seen[g.index_of(&c).unwrap()] = true;
        }
    }
    assert_eq!(count, 8);
    assert_eq!(center.algebra.dim(), 8);
    center.algebra.check_associative::<ChaCha8Rng>(None).unwrap();
    let b = principal_block(&g, f, &mut rng(10)).unwrap();
    assert_eq!(b.augmentation, 1);
    assert!(b.sum_is_one && b.orthogonal && b.acts_as_identity);
}
