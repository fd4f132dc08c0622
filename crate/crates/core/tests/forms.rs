mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use proptest::prelude::*;
use rand::Rng;

use realcurves::forms::intmat::{self, Mat};
use realcurves::forms::quadratic::{find_isometry, has_lagrangian};
use realcurves::forms::{
    brown_properties_check, quadratic_extensions, van_der_blij_check, BilinearSpace2, Generator, IntegralLattice,
    LatticeInvolution, Parity, QuadraticSpace,
};

#[test]
fn generator_table() {
    assert_eq!(QuadraticSpace::a_plus().brown().unwrap(), 1);
    assert_eq!(QuadraticSpace::a_minus().brown().unwrap(), 7);
    assert_eq!(QuadraticSpace::u2().brown().unwrap(), 0);
    assert_eq!(QuadraticSpace::v2().brown().unwrap(), 4);
    assert_eq!(QuadraticSpace::from_word("U V").unwrap().brown().unwrap(), 4);
    assert_eq!(QuadraticSpace::from_word("V V").unwrap().brown().unwrap(), 0);
    assert_eq!(QuadraticSpace::zero().brown().unwrap(), 0);
}

#[test]
fn every_small_form_matches_gauss_oracle() {
    for d in 1..=3usize {
        let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
        for mask in 0u64..1 << pairs.len() {
            let mut rows = vec![0u64; d];
            for (t, &(i, j)) in pairs.iter().enumerate() {
                if mask >> t & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            let b = BilinearSpace2::new(rows).unwrap();
            for f in quadratic_extensions(&b) {
                if f.is_nondegenerate() {
                    assert_eq!(f.brown().unwrap(), common::brown_oracle(&f));
                    assert_eq!(f.brown_by_decomposition().unwrap(), common::brown_oracle(&f));
                }
            }
        }
    }
}

#[test]
fn normal_words_match_gauss_oracle() {
    let mut r = common::rng(1);
    for d in 1..=10usize {
        for _ in 0..40 {
            let f = common::nondegenerate_form(&mut r, d);
            let p = common::gl2(&mut r, d);
            let g = f.restrict(&p);
            let br = common::brown_oracle(&g);
            assert_eq!(g.brown().unwrap(), br);
            assert_eq!(g.brown_by_decomposition().unwrap(), br);
            assert_eq!(f.brown().unwrap(), br);
            let c = g.classify().unwrap();
            assert_eq!(c.rank, d);
            assert_eq!(QuadraticSpace::from_generators(&c.word).brown().unwrap(), br);
        }
    }
}

#[test]
fn extensions_cover_all_refinements() {
    let b = BilinearSpace2::u2();
    let ext = quadratic_extensions(&b);
    assert_eq!(ext.len(), 4);
    let browns: Vec<u8> = ext.iter().map(|f| f.brown().unwrap()).collect();
    // three copies of U and one of V
    assert_eq!(browns.iter().filter(|&&x| x == 0).count(), 3);
    assert_eq!(browns.iter().filter(|&&x| x == 4).count(), 1);
    let a = quadratic_extensions(&BilinearSpace2::a2());
    let mut values: Vec<u8> = a.iter().map(|f| f.brown().unwrap()).collect();
    values.sort();
    assert_eq!(values, vec![1, 7]);
}

#[test]
fn classification_is_complete_in_small_dimension() {
    let mut r = common::rng(2);
    for d in 1..=5usize {
        for _ in 0..30 {
            let f = common::nondegenerate_form(&mut r, d);
            let g = common::nondegenerate_form(&mut r, d);
            let cf = f.classify().unwrap();
            let cg = g.classify().unwrap();
            let normal = QuadraticSpace::from_generators(&cf.word);
            assert!(find_isometry(&f, &normal).is_some(), "{:?}", cf.word);
            let same = cf.word == cg.word;
            assert_eq!(find_isometry(&f, &g).is_some(), same);
        }
    }
}

#[test]
fn parity_follows_values() {
    let f = QuadraticSpace::from_word("A+ U").unwrap();
    let c = f.classify().unwrap();
    assert_eq!(c.parity, Parity::Odd);
    assert_eq!(c.word, vec![Generator::APlus, Generator::APlus, Generator::AMinus]);
}

#[test]
fn descent_preserves_brown() {
    let mut r = common::rng(3);
    let mut done = 0;
    while done < 300 {
        let d = r.gen_range(2..=9);
        let f = common::nondegenerate_form(&mut r, d);
        let s: u64 = r.gen_range(1..1u64 << d);
        if f.value(s) != 0 {
            continue;
        }
        let g = f.isotropic_descent(&[s]).unwrap();
        assert_eq!(g.dim(), d - 2);
        assert_eq!(g.brown().unwrap(), f.brown().unwrap());
        done += 1;
    }
    assert!(QuadraticSpace::a_plus().isotropic_descent(&[1]).is_err());
}

#[test]
fn null_cobordant_forms_have_zero_brown() {
    let mut r = common::rng(4);
    for _ in 0..200 {
        let d = 2 * r.gen_range(1..=4);
        let f = common::nondegenerate_form(&mut r, d);
        if has_lagrangian(&f) {
            assert_eq!(f.brown().unwrap(), 0);
        }
    }
    assert!(has_lagrangian(&QuadraticSpace::u2()));
    assert!(!has_lagrangian(&QuadraticSpace::v2()));
    assert!(has_lagrangian(&QuadraticSpace::from_word("A+ A-").unwrap()));
}

#[test]
fn property_verdicts_hold() {
    let mut r = common::rng(6);
    for _ in 0..100 {
        let d = r.gen_range(1..=8);
        let f = common::form(&mut r, d);
        if !f.is_informative() {
            continue;
        }
        for v in brown_properties_check(&f).unwrap() {
            assert!(!v.failed(), "{} on {:?}", v.rule_id, f);
        }
    }
}

proptest! {
    #[test]
    fn brown_is_additive(seed in any::<u64>(), d1 in 1usize..7, d2 in 1usize..7) {
        let mut r = common::rng(seed);
        let a = common::nondegenerate_form(&mut r, d1);
        let b = common::nondegenerate_form(&mut r, d2);
        let s = a.direct_sum(&b);
        prop_assert_eq!(s.brown().unwrap(), (a.brown().unwrap() + b.brown().unwrap()) % 8);
    }

    #[test]
    fn brown_ignores_basis(seed in any::<u64>(), d in 1usize..9) {
        let mut r = common::rng(seed);
        let f = common::nondegenerate_form(&mut r, d);
        let p = common::gl2(&mut r, d);
        prop_assert_eq!(f.restrict(&p).brown().unwrap(), f.brown().unwrap());
    }
}

#[test]
fn standard_lattices() {
    let e8 = IntegralLattice::e8();
    let inv = e8.invariants().unwrap();
    assert_eq!((inv.signature, inv.determinant.clone(), inv.even), (8, BigInt::one(), true));
    assert_eq!(e8.discriminant().unwrap().order(), BigInt::one());
    let d4 = IntegralLattice::d4();
    assert_eq!(d4.invariants().unwrap().signature, 4);
    assert_eq!(d4.discriminant().unwrap().form().unwrap().brown().unwrap(), 4);
    assert_eq!(IntegralLattice::u().invariants().unwrap().signature, 0);
    assert_eq!(IntegralLattice::diag(&[2]).discriminant().unwrap().form().unwrap().brown().unwrap(), 1);
    assert_eq!(IntegralLattice::diag(&[-2]).discriminant().unwrap().form().unwrap().brown().unwrap(), 7);
    for l in [e8, d4, IntegralLattice::u(), IntegralLattice::diag(&[2]), IntegralLattice::diag(&[-2, -2])] {
        for v in van_der_blij_check(&l).unwrap() {
            assert!(v.passed(), "{} on {:?}", v.rule_id, l);
        }
    }
}

#[test]
fn van_der_blij_on_random_lattices() {
    let mut r = common::rng(7);
    for _ in 0..200 {
        let l = common::even_lattice(&mut r);
        let sigma = l.signature().unwrap();
        let order = common::two_power(&l.determinant());
        assert_eq!(common::milgram_sum(&l), common::milgram_rhs(order, sigma));
        let br = l.discriminant().unwrap().form().unwrap().brown().unwrap() as i64;
        assert_eq!(br, sigma.rem_euclid(8));
        let v = van_der_blij_check(&l).unwrap();
        assert!(v.iter().all(|v| !v.failed()));
    }
}

#[test]
fn overlattice_glues_an_isotropic_vector() {
    let l = IntegralLattice::diag(&[2; 8]);
    assert!(l.overlattice(&[1, 0, 0, 0, 0, 0, 0, 0]).is_err());
    let m = l.overlattice(&[1; 8]).unwrap();
    assert!(m.is_even());
    assert_eq!(m.determinant(), BigInt::from(64));
    let f = m.discriminant().unwrap();
    assert_eq!(f.form().unwrap().dim(), 6);
    assert_eq!(f.form().unwrap().brown().unwrap(), 0);
    assert!(van_der_blij_check(&m).unwrap().iter().all(|v| !v.failed()));
    let e7 = IntegralLattice::from_rows(
        &IntegralLattice::e8().gram_i64().unwrap()[1..].iter().map(|r| r[1..].to_vec()).collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(e7.discriminant().unwrap().form().unwrap().brown().unwrap(), 7);
}

#[test]
fn eigenlattices_have_equal_discriminants() {
    let mut r = common::rng(8);
    for _ in 0..200 {
        let (l, c) = common::involution(&mut r);
        let n = l.rank();
        let inv = LatticeInvolution::new(l, c).unwrap();
        let e = inv.eigenlattices().unwrap();
        assert_eq!(e.plus.rank() + e.minus.rank(), n);
        let dp = e.plus.determinant().abs();
        let dm = e.minus.determinant().abs();
        // index of L+ + L- in L
        let joined: Mat =
            (0..n).map(|i| e.plus_basis[i].iter().chain(e.minus_basis[i].iter()).cloned().collect()).collect();
        let index = intmat::determinant(&joined).abs();
        assert_eq!(dp, dm);
        assert_eq!(dp, index);
        assert_eq!(BigInt::from(1u64 << e.dim_j), index);
    }
}

#[test]
fn involution_must_preserve_the_form() {
    let l = IntegralLattice::diag(&[1, -1]);
    let swap = intmat::from_i64(&[vec![0, 1], vec![1, 0]]);
    assert!(LatticeInvolution::new(l, swap).is_err());
}
