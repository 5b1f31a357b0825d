use proptest::prelude::*;

use weil_jacobi::forms::RForm;
use weil_jacobi::poly::Poly;
use weil_jacobi::rational::{frac, q};
use weil_jacobi::smooth::prolong;
use weil_jacobi::weil::{identity, mat_mul, nil_matrix_invert, AElement, Algebra, WeilAlgebra};

fn algebras() -> Vec<Algebra> {
    vec![WeilAlgebra::dual_numbers(), WeilAlgebra::univariate(4), WeilAlgebra::jets(2, 2)]
}

fn pick(k: usize) -> Algebra {
    algebras().swap_remove(k % 3)
}

fn element(alg: &Algebra, raw: &[(i64, i64)]) -> AElement {
    let coords = (0..alg.dim()).map(|i| {
        let (n, d) = raw[i % raw.len()];
        frac(n, d)
    });
    AElement::new(alg, coords.collect()).unwrap()
}

fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=9)
}

fn poly(n: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, n), coeff()), 0..5).prop_map(move |terms| {
        let terms = terms.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= 3).map(|(e, (a, b))| (e, frac(a, b)));
        Poly::from_terms(n, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn commutative_ring_laws(k in 0usize..3, a in prop::collection::vec(coeff(), 6), b in prop::collection::vec(coeff(), 6), c in prop::collection::vec(coeff(), 6)) {
        let alg = pick(k);
        let (a, b, c) = (element(&alg, &a), element(&alg, &b), element(&alg, &c));
        prop_assert_eq!(a.try_mul(&b).unwrap(), b.try_mul(&a).unwrap());
        prop_assert_eq!(a.try_mul(&b).unwrap().try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        prop_assert_eq!(
            a.try_mul(&b.try_add(&c).unwrap()).unwrap(),
            a.try_mul(&b).unwrap().try_add(&a.try_mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(a.try_mul(&AElement::one(&alg)).unwrap(), a.clone());
    }

    #[test]
    fn units_invert_and_the_ideal_is_nilpotent(k in 0usize..3, raw in prop::collection::vec(coeff(), 6)) {
        let alg = pick(k);
        let a = element(&alg, &raw);
        let nil = a.nilpotent_part();
        prop_assert!(nil.pow(alg.height() as u32 + 1).is_zero());
        if a.augmentation() != q(0) {
            prop_assert!(a.try_mul(&a.invert().unwrap()).unwrap().is_one());
        } else {
            prop_assert!(a.invert().is_err());
        }
    }

    #[test]
    fn matrix_inverse_round_trips(k in 0usize..3, raw in prop::collection::vec(prop::collection::vec(coeff(), 6), 4)) {
        let alg = pick(k);
        let mut m: Vec<Vec<AElement>> = raw.chunks(2).map(|row| row.iter().map(|r| element(&alg, r)).collect()).collect();
        // Shift the diagonal so the augmentation matrix is diagonally dominant.
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].try_add(&AElement::from_rational(&alg, q(20))).unwrap();
        }
        let inv = nil_matrix_invert(&m).unwrap();
        prop_assert_eq!(mat_mul(&m, &inv).unwrap(), identity(&alg, 2));
    }

    #[test]
    fn prolongation_is_a_ring_map(k in 0usize..3, f in poly(2), g in poly(2)) {
        let alg = pick(k);
        prop_assert_eq!(prolong(&(&f * &g), &alg), prolong(&f, &alg).try_mul(&prolong(&g, &alg)).unwrap());
        prop_assert_eq!(prolong(&(&f - &g), &alg), prolong(&f, &alg).try_sub(&prolong(&g, &alg)).unwrap());
    }

    #[test]
    fn exterior_derivative_squares_to_zero(f in poly(3), a in poly(3), b in poly(3), c in poly(3)) {
        let zero = Poly::zero(3);
        let fun = RForm::function(f);
        prop_assert!(fun.d().unwrap().d().unwrap().is_zero());
        let one = RForm::from_entries(1, &zero, [(vec![0], a), (vec![1], b), (vec![2], c)]).unwrap();
        prop_assert!(one.d().unwrap().d().unwrap().is_zero());
        let alpha = RForm::dx(&zero, 0);
        // d_alpha squares to d(alpha) ^ . , which vanishes for closed alpha.
        prop_assert!(one.d_alpha(&alpha).unwrap().d_alpha(&alpha).unwrap().is_zero());
    }
}
