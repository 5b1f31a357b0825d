use super::*;
use crate::error::Error;
use crate::forms::RForm;
use crate::ops::DiffOp;
use crate::poly::Poly;
use crate::rational::q;
use crate::sampling::Samples;
use crate::smooth::{prolong, APoly};
use crate::weil::{AElement, WeilAlgebra};

fn x(n: usize, j: usize) -> Poly {
    Poly::var(n, j)
}

fn c(n: usize, v: i64) -> Poly {
    Poly::constant(n, q(v))
}

fn one_form(n: usize, coeffs: Vec<Poly>) -> RForm {
    RForm::from_entries(1, &Poly::zero(n), coeffs.into_iter().enumerate().map(|(j, p)| (vec![j], p))).unwrap()
}

fn two_form(n: usize, entries: Vec<((usize, usize), Poly)>) -> RForm {
    RForm::from_entries(2, &Poly::zero(n), entries.into_iter().map(|((i, j), p)| (vec![i, j], p))).unwrap()
}

fn standard(alpha: Vec<Poly>) -> LcsData {
    let alg = WeilAlgebra::univariate(3);
    LcsData::new(&alg, one_form(2, alpha), two_form(2, vec![((0, 1), c(2, 1))])).unwrap()
}

fn field(lcs: &LcsData, comps: Vec<Poly>) -> DiffOp {
    DiffOp::prolong_field(&comps, lcs.algebra()).unwrap()
}

#[test]
fn hamiltonian_of_coordinate() {
    let lcs = standard(vec![c(2, 0), c(2, 0)]);
    let xa = prolong(&x(2, 0), lcs.algebra());
    assert_eq!(lcs.hamiltonian(&xa).unwrap(), field(&lcs, vec![c(2, 0), c(2, -1)]));
    let ya = prolong(&x(2, 1), lcs.algebra());
    assert_eq!(lcs.hamiltonian(&ya).unwrap(), field(&lcs, vec![c(2, 1), c(2, 0)]));
}

#[test]
fn hamiltonian_with_conformal_factor() {
    let lcs = standard(vec![c(2, 1), c(2, 0)]);
    let one = APoly::one(lcs.algebra(), 2);
    assert_eq!(lcs.hamiltonian(&one).unwrap(), field(&lcs, vec![c(2, 0), c(2, -1)]));
    let ya = prolong(&x(2, 1), lcs.algebra());
    assert_eq!(lcs.hamiltonian(&ya).unwrap(), field(&lcs, vec![c(2, 1), -&x(2, 1)]));
}

#[test]
fn canonical_brackets() {
    let lcs = standard(vec![c(2, 0), c(2, 0)]);
    let br = lcs_bracket(&lcs);
    let alg = lcs.algebra();
    let (xa, ya) = (prolong(&x(2, 0), alg), prolong(&x(2, 1), alg));
    assert_eq!(br.bracket(&xa, &ya).unwrap(), APoly::real_constant(alg, 2, q(-1)));
    assert!(br.bracket(&xa, &xa).unwrap().is_zero());

    let lcs = standard(vec![c(2, 1), c(2, 0)]);
    let br = lcs_bracket(&lcs);
    let one = APoly::one(alg, 2);
    assert_eq!(br.bracket(&ya, &one).unwrap(), one);
    assert_eq!(br.rho_formula(&ya, &one).unwrap(), one);
}

#[test]
fn base_presentation_of_lcs_pair() {
    // omega = dx^dy, alpha = dx: X_f = (d_y f, -d_x f - f), so E = (0, -1)
    // and Lambda^12 = {x, y} - x E_2 + y E_1 = -1.
    let lcs = standard(vec![c(2, 1), c(2, 0)]);
    let data = lcs.jacobi_data().unwrap();
    assert_eq!(data.reeb(), &[c(2, 0), c(2, -1)]);
    assert_eq!(data.lambda()[0][1], c(2, -1));
    assert_eq!(data.lambda()[1][0], c(2, 1));
}

#[test]
fn prolonged_bracket_examples() {
    let alg = WeilAlgebra::dual_numbers();
    let zero = JacobiData::new(vec![vec![Poly::zero(2); 2]; 2], vec![Poly::zero(2); 2]).unwrap();
    let br = prolong_jacobi(&zero, &alg);
    let (xa, ya) = (prolong(&x(2, 0), &alg), prolong(&x(2, 1), &alg));
    assert!(br.bracket(&xa, &ya).unwrap().is_zero());

    let poisson = JacobiData::new(vec![vec![c(2, 0), c(2, 1)], vec![c(2, -1), c(2, 0)]], vec![Poly::zero(2); 2]).unwrap();
    let br = prolong_jacobi(&poisson, &alg);
    assert_eq!(br.bracket(&xa, &ya).unwrap(), APoly::one(&alg, 2));
    assert_eq!(br.bracket(&ya, &xa).unwrap(), APoly::real_constant(&alg, 2, q(-1)));

    let bad = JacobiData::new(vec![vec![c(2, 0), c(2, 1)], vec![c(2, 1), c(2, 0)]], vec![Poly::zero(2); 2]);
    assert_eq!(bad.unwrap_err(), Error::NotAntisymmetric { i: 0, j: 1 });
}

#[test]
fn degenerate_and_odd_forms_rejected() {
    let alg = WeilAlgebra::dual_numbers();
    let zero2 = two_form(2, vec![]);
    assert!(matches!(LcsData::new(&alg, one_form(2, vec![c(2, 0), c(2, 0)]), zero2), Err(Error::DegenerateForm { .. })));
    let odd = RForm::zero(2, &Poly::zero(3));
    assert_eq!(LcsData::new(&alg, one_form(3, vec![c(3, 0); 3]), odd).unwrap_err(), Error::OddDimension(3));
}

#[test]
fn non_constant_form_goes_pointwise() {
    let alg = WeilAlgebra::univariate(3);
    let omega = two_form(2, vec![((0, 1), &c(2, 1) + &x(2, 0))]);
    let lcs = LcsData::new(&alg, one_form(2, vec![c(2, 0), c(2, 0)]), omega).unwrap();
    assert!(!lcs.is_symbolic());
    let f = prolong(&x(2, 0), &alg);
    assert_eq!(lcs.hamiltonian(&f).unwrap_err(), Error::NeedsPointwise);
    let eps = AElement::basis(&alg, 1).unwrap();
    let xi = crate::smooth::NearPoint::new(&alg, vec![eps.clone(), AElement::zero(&alg)]).unwrap();
    let at = lcs.hamiltonian_at(&f, &xi).unwrap();
    // i_X ((1 + x) dx^dy) = dx  gives  X = (0, -(1 + x)^-1).
    let expected = -(&AElement::one(&alg) + &eps).invert().unwrap();
    assert_eq!(at, vec![AElement::zero(&alg), expected]);
    let bad = crate::smooth::NearPoint::new(&alg, vec![AElement::from_rational(&alg, q(-1)), AElement::zero(&alg)]).unwrap();
    assert!(matches!(lcs.hamiltonian_at(&f, &bad), Err(Error::DegenerateForm { .. })));
    let report = check_pointwise(&lcs, &Samples::new(3, 8).unwrap()).unwrap();
    assert!(report.all_passed(), "{report}");
}

#[test]
fn compatibility_enforced_in_dimension_four() {
    let alg = WeilAlgebra::dual_numbers();
    let omega = two_form(4, vec![((0, 1), c(4, 1)), ((2, 3), c(4, 1)), ((0, 2), x(4, 1))]);
    let alpha = one_form(4, vec![c(4, 0); 4]);
    assert!(matches!(LcsData::new(&alg, alpha.clone(), omega.clone()), Err(Error::LcsCompatibility { .. })));
    assert!(LcsData::new_unchecked(&alg, alpha, omega).unwrap().is_symbolic());
}

#[test]
fn axioms_hold_for_all_constructions() {
    let samples = Samples::new(11, 5).unwrap();
    let lcs = standard(vec![c(2, 1), c(2, 0)]);
    let report = check_jacobi_axioms(&lcs_bracket(&lcs), &samples).unwrap();
    assert!(report.all_passed(), "{report}");
    let report = check_jacobi_axioms(&prolong_jacobi(&lcs.jacobi_data().unwrap(), lcs.algebra()), &samples).unwrap();
    assert!(report.all_passed(), "{report}");
    let generic = LrjStructure::new(lcs.omega_a().clone(), Anchor::Conformal(lcs.alpha_a().clone())).unwrap();
    assert!(generic.is_closed().unwrap());
    let report = check_jacobi_axioms(&generic, &samples).unwrap();
    assert!(report.all_passed(), "{report}");
    assert!(check_lcs_identities(&lcs, &samples).unwrap().all_passed());
    assert!(check_prolongation_coincidence(&lcs, &samples).unwrap().all_passed());
}

#[test]
fn plain_anchor_is_poisson() {
    let lcs = standard(vec![c(2, 0), c(2, 0)]);
    let generic = LrjStructure::new(lcs.omega_a().clone(), Anchor::Tilde).unwrap();
    let one = APoly::one(lcs.algebra(), 2);
    let phi = &prolong(&(&x(2, 0) * &x(2, 1)), lcs.algebra()) + &one;
    assert!(generic.bracket(&phi, &one).unwrap().is_zero());
}

#[test]
fn non_closed_conformal_form_breaks_jacobi_identity() {
    let lcs = standard(vec![x(2, 1), c(2, 0)]);
    assert!(!lcs.alpha_is_closed().unwrap());
    let report = check_jacobi_axioms(&lcs_bracket(&lcs), &Samples::new(5, 10).unwrap()).unwrap();
    let jacobi = report.find("lcs.jacobi-identity").unwrap();
    assert!(!jacobi.passed());
    assert!(jacobi.counterexample.as_ref().unwrap().sample_seed.is_some());
}
