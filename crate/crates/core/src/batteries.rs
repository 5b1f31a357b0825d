//! Randomized identity batteries for prolongation, near-point operators and
//! the operator bracket.

use crate::error::Result;
use crate::ops::{bracket, check_lie_rinehart, DiffOp};
use crate::poly::Poly;
use crate::report::{named, IdentityCheck, Report};
use crate::sampling::Samples;
use crate::smooth::{prolong, taylor_eval, APoly};
use crate::weil::Algebra;

pub const FUNCTION_SUITE: &str = "prop1";
pub const LIE_RINEHART_SUITE: &str = "lie-rinehart";

/// Prolongation as a ring homomorphism, the Taylor oracle, the origin map,
/// commutation with partials, and the first-order law for operators.
/// `fixed` operators are checked alongside random ones.
pub fn check_function_laws(alg: &Algebra, n: usize, fixed: &[(String, DiffOp)], samples: &Samples) -> Result<Report> {
    let mut report = Report::default();

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "prolong-product");
    for (seed, mut s) in samples.draws("prolong-product") {
        let (f, g) = (s.poly(n), s.poly(n));
        let lhs = prolong(&(&f * &g), alg);
        let rhs = prolong(&f, alg).try_mul(&prolong(&g, alg))?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("g", &g)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "prolong-sum");
    for (seed, mut s) in samples.draws("prolong-sum") {
        let (f, g) = (s.poly(n), s.poly(n));
        let lhs = prolong(&(&f + &g), alg);
        let rhs = prolong(&f, alg).try_add(&prolong(&g, alg))?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("g", &g)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "prolong-unit");
    c.record_eq(&prolong(&Poly::one(n), alg), &APoly::one(alg, n), None, Vec::new);
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "taylor-oracle");
    for (seed, mut s) in samples.draws("taylor-oracle") {
        let f = s.poly(n);
        let xi = s.near_point(alg, n);
        let lhs = prolong(&f, alg).eval(&xi)?;
        let rhs = taylor_eval(&f, &xi)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("xi", &xi)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "origin-covering");
    for (seed, mut s) in samples.draws("origin-covering") {
        let f = s.poly(n);
        let xi = s.near_point(alg, n);
        let lhs = prolong(&f, alg).eval(&xi)?.augmentation();
        let rhs = f.eval(&xi.origin())?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("xi", &xi)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "partial-commutes");
    for (seed, mut s) in samples.draws("partial-commutes") {
        let f = s.poly(n);
        let j = s.index(n);
        let lhs = prolong(&f, alg).partial(j)?;
        let rhs = prolong(&f.partial(j)?, alg);
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("j", &(j + 1))]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "first-order-law");
    for (seed, mut s) in samples.draws("first-order-law") {
        let (f, g) = (s.poly(n), s.poly(n));
        let random = s.diffop(alg, n);
        for (name, x) in std::iter::once(("X", &random)).chain(fixed.iter().map(|(k, v)| (k.as_str(), v))) {
            let (fa, ga) = (prolong(&f, alg), prolong(&g, alg));
            let lhs = x.apply(&(&f * &g))?;
            let rhs = x
                .apply(&f)?
                .try_mul(&ga)?
                .try_add(&fa.try_mul(&x.apply(&g)?)?)?
                .try_sub(&fa.try_mul(&ga)?.try_mul(&x.apply(&Poly::one(n))?)?)?;
            c.record_eq(&lhs, &rhs, Some(seed), || vec![named(name, x), named("f", &f), named("g", &g)]);
        }
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "tilde-extension");
    for (seed, mut s) in samples.draws("tilde-extension") {
        let f = s.poly(n);
        let x = s.diffop(alg, n);
        let lhs = x.tilde_apply(&prolong(&f, alg))?;
        let rhs = x.apply(&f)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("X", &x), named("f", &f)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "tilde-a-linearity");
    for (seed, mut s) in samples.draws("tilde-a-linearity") {
        let (phi, psi) = (s.apoly(alg, n), s.apoly(alg, n));
        let a = s.element(alg);
        let x = s.diffop(alg, n);
        let lhs = x.tilde_apply(&phi.a_scale(&a)?.try_add(&psi)?)?;
        let rhs = x.tilde_apply(&phi)?.a_scale(&a)?.try_add(&x.tilde_apply(&psi)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || {
            vec![named("X", &x), named("phi", &phi), named("psi", &psi), named("a", &a)]
        });
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "tilde-module");
    for (seed, mut s) in samples.draws("tilde-module") {
        let (phi, psi) = (s.apoly(alg, n), s.apoly(alg, n));
        let x = s.diffop(alg, n);
        let lhs = x.module_action(&phi)?.tilde_apply(&psi)?;
        let rhs = phi.try_mul(&x.tilde_apply(&psi)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("X", &x), named("phi", &phi), named("psi", &psi)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(FUNCTION_SUITE, "operator-extensionality");
    for (seed, mut s) in samples.draws("operator-extensionality") {
        let x = s.diffop(alg, n);
        let rebuilt = DiffOp::from_action(alg, n, |f| x.apply(f))?;
        c.record_eq(&rebuilt, &x, Some(seed), || vec![named("X", &x)]);
    }
    report.push(c);
    Ok(report)
}

fn absorb(total: &mut IdentityCheck, part: &IdentityCheck, seed: u64) {
    total.record(part.passed(), |sample| {
        let mut cx = part.counterexample.clone().expect("failed check carries a counterexample");
        cx.sample = sample;
        cx.sample_seed = Some(seed);
        cx
    });
}

/// Lie algebra laws of the operator bracket, its action, and the
/// Lie-Rinehart compatibilities.
pub fn check_operator_bracket(alg: &Algebra, n: usize, samples: &Samples) -> Result<Report> {
    let mut report = Report::default();

    let mut c = IdentityCheck::new(LIE_RINEHART_SUITE, "antisymmetry");
    for (seed, mut s) in samples.draws("antisymmetry") {
        let (x, y) = (s.diffop(alg, n), s.diffop(alg, n));
        let lhs = bracket(&x, &y)?;
        let rhs = bracket(&y, &x)?.neg();
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("X", &x), named("Y", &y)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(LIE_RINEHART_SUITE, "a-bilinearity");
    for (seed, mut s) in samples.draws("a-bilinearity") {
        let (x, y, z) = (s.diffop(alg, n), s.diffop(alg, n), s.diffop(alg, n));
        let a = s.element(alg);
        let lhs = bracket(&x, &y.a_scale(&a)?.try_add(&z)?)?;
        let rhs = bracket(&x, &y)?.a_scale(&a)?.try_add(&bracket(&x, &z)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("X", &x), named("Y", &y), named("Z", &z), named("a", &a)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(LIE_RINEHART_SUITE, "jacobi-identity");
    for (seed, mut s) in samples.draws("jacobi-identity") {
        let (x, y, z) = (s.diffop(alg, n), s.diffop(alg, n), s.diffop(alg, n));
        let lhs = bracket(&x, &bracket(&y, &z)?)?
            .try_add(&bracket(&y, &bracket(&z, &x)?)?)?
            .try_add(&bracket(&z, &bracket(&x, &y)?)?)?;
        c.record_eq(&lhs, &DiffOp::zero(alg, n), Some(seed), || vec![named("X", &x), named("Y", &y), named("Z", &z)]);
    }
    report.push(c);

    let mut c = IdentityCheck::new(LIE_RINEHART_SUITE, "bracket-action");
    for (seed, mut s) in samples.draws("bracket-action") {
        let (x, y) = (s.diffop(alg, n), s.diffop(alg, n));
        let f = s.poly(n);
        let lhs = bracket(&x, &y)?.apply(&f)?;
        let rhs = x.tilde_apply(&y.apply(&f)?)?.try_sub(&y.tilde_apply(&x.apply(&f)?)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("X", &x), named("Y", &y), named("f", &f)]);
    }
    report.push(c);

    let mut anchor = IdentityCheck::new(LIE_RINEHART_SUITE, "anchor-expansion");
    let mut naturality = IdentityCheck::new(LIE_RINEHART_SUITE, "tilde-naturality");
    for (seed, mut s) in samples.draws("lie-rinehart") {
        let (x, y) = (s.diffop(alg, n), s.diffop(alg, n));
        let phi = s.apoly(alg, n);
        let fs = [s.poly(n), s.poly(n)];
        let psis = [s.apoly(alg, n), s.apoly(alg, n)];
        let parts = check_lie_rinehart(&x, &y, &phi, &fs, &psis)?;
        absorb(&mut anchor, &parts[0], seed);
        absorb(&mut naturality, &parts[1], seed);
    }
    report.push(anchor);
    report.push(naturality);
    Ok(report)
}
