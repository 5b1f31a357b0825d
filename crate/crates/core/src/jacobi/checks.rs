use crate::error::{Error, Result};
use crate::forms::AForm;
use crate::ops::{bracket, DiffOp};
use crate::report::{named, IdentityCheck, Report};
use crate::sampling::{Samples, Sampler};
use crate::smooth::{prolong, APoly, NearPoint};
use crate::weil::AElement;

use super::lcs::{two_form_at, LcsBracket, LcsData};
use super::lrj::{Anchor, LrjStructure};
use super::prolonged::{JacobiData, ProlongedBracket};
use super::ABracket;

pub const AXIOM_SUITE: &str = "jacobi-axioms";
pub const PROLONGATION_SUITE: &str = "prolongation";

fn check(suite: &str, tag: &str, name: &str) -> IdentityCheck {
    IdentityCheck::new(suite, &format!("{tag}.{name}"))
}

/// Antisymmetry, A-bilinearity, the Jacobi identity and the first-order law
/// `{phi, psi1 psi2} = {phi, psi1} psi2 + psi1 {phi, psi2} - psi1 psi2 {phi, 1}`.
pub fn check_jacobi_axioms(br: &dyn ABracket, samples: &Samples) -> Result<Report> {
    let alg = br.algebra().clone();
    let n = br.n_vars();
    let tag = br.kind().tag();
    let mut report = Report::default();

    let mut c = check(AXIOM_SUITE, tag, "antisymmetry");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (phi, psi) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let lhs = br.bracket(&phi, &psi)?;
        let rhs = -br.bracket(&psi, &phi)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("phi", &phi), named("psi", &psi)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "a-bilinearity");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let phi = s.apoly(&alg, n);
        let (psi1, psi2) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let a = s.element(&alg);
        let lhs = br.bracket(&phi, &psi1.a_scale(&a)?.try_add(&psi2)?)?;
        let rhs = br.bracket(&phi, &psi1)?.a_scale(&a)?.try_add(&br.bracket(&phi, &psi2)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || {
            vec![named("phi", &phi), named("psi1", &psi1), named("psi2", &psi2), named("a", &a)]
        });
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "jacobi-identity");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (phi, psi, chi) = (s.apoly(&alg, n), s.apoly(&alg, n), s.apoly(&alg, n));
        let lhs = br
            .bracket(&phi, &br.bracket(&psi, &chi)?)?
            .try_add(&br.bracket(&psi, &br.bracket(&chi, &phi)?)?)?
            .try_add(&br.bracket(&chi, &br.bracket(&phi, &psi)?)?)?;
        let rhs = APoly::zero(&alg, n);
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("phi", &phi), named("psi", &psi), named("chi", &chi)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "first-order-law");
    let one = APoly::one(&alg, n);
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let phi = s.apoly(&alg, n);
        let (psi1, psi2) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let product = psi1.try_mul(&psi2)?;
        let lhs = br.bracket(&phi, &product)?;
        let rhs = br
            .bracket(&phi, &psi1)?
            .try_mul(&psi2)?
            .try_add(&psi1.try_mul(&br.bracket(&phi, &psi2)?)?)?
            .try_sub(&product.try_mul(&br.bracket(&phi, &one)?)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("phi", &phi), named("psi1", &psi1), named("psi2", &psi2)]);
    }
    report.push(c);
    Ok(report)
}

/// Identities of the lcs bracket transported from the generic construction:
/// residual exactness, the representation formula, the bracket morphism
/// `[X_phi, X_psi] = X_{phi, psi}`, `theta_(X_phi) omega^A = 0`, the
/// `[theta, i]` commutator, and agreement with the generic engine.
pub fn check_lcs_identities(lcs: &LcsData, samples: &Samples) -> Result<Report> {
    let alg = lcs.algebra().clone();
    let n = lcs.n();
    let br = LcsBracket::new(lcs.clone());
    let tag = "lcs";
    let mut report = Report::default();

    let mut c = check(AXIOM_SUITE, tag, "hamiltonian-residual");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let f = s.apoly(&alg, n);
        let x = lcs.hamiltonian(&f)?;
        let lhs = lcs.omega_a().interior(&x)?;
        let rhs = lcs.lichnerowicz(&f)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("X_F", &x)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "representation-formula");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let lhs = br.bracket(&f, &g)?;
        let rhs = br.rho_formula(&f, &g)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "hamiltonian-morphism");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let lhs = bracket(&lcs.hamiltonian(&f)?, &lcs.hamiltonian(&g)?)?;
        let rhs = lcs.hamiltonian(&br.bracket(&f, &g)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "lie-derivative-omega");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let f = s.apoly(&alg, n);
        let lhs = lcs.omega_a().lie_derivative(&lcs.hamiltonian(&f)?, lcs.alpha_a())?;
        let rhs = AForm::zero(2, &APoly::zero(&alg, n));
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "lie-interior-commutator");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let (x, y) = (lcs.hamiltonian(&f)?, lcs.hamiltonian(&g)?);
        let omega = lcs.omega_a();
        let alpha = lcs.alpha_a();
        let lhs = omega
            .interior(&y)?
            .lie_derivative(&x, alpha)?
            .try_sub(&omega.lie_derivative(&x, alpha)?.interior(&y)?)?;
        let rhs = omega.interior(&bracket(&x, &y)?)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g)]);
    }
    report.push(c);

    let generic = LrjStructure::new(lcs.omega_a().clone(), Anchor::Conformal(lcs.alpha_a().clone()))?;
    let mut c = check(AXIOM_SUITE, tag, "generic-agreement");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let lhs = br.bracket(&f, &g)?;
        let rhs = generic.bracket(&f, &g)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g)]);
    }
    report.push(c);
    Ok(report)
}

/// Compares the lcs bracket with the prolongation of the base structure:
/// Hamiltonian functoriality, `{f^A, g^A} = {f, g}^A`, and agreement with the
/// prolonged `(Lambda, E)` bracket read off from `(alpha, omega)`.
pub fn check_prolongation_coincidence(lcs: &LcsData, samples: &Samples) -> Result<Report> {
    let alg = lcs.algebra().clone();
    let n = lcs.n();
    let br = LcsBracket::new(lcs.clone());
    let data = lcs.jacobi_data()?;
    let prolonged = ProlongedBracket::new(data.clone(), &alg);
    let tag = "lcs";
    let mut report = Report::default();

    let mut c = check(PROLONGATION_SUITE, tag, "hamiltonian-functoriality");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let f = s.poly(n);
        let lhs = lcs.hamiltonian(&prolong(&f, &alg))?;
        let rhs = DiffOp::prolong_field(&lcs.base_hamiltonian(&f)?, &alg)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f)]);
    }
    report.push(c);

    let mut c = check(PROLONGATION_SUITE, tag, "bracket-coincidence");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.poly(n), s.poly(n));
        let lhs = br.bracket(&prolong(&f, &alg), &prolong(&g, &alg))?;
        let rhs = prolong(&lcs.base_bracket(&f, &g)?, &alg);
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("g", &g)]);
    }
    report.push(c);

    let mut c = check(PROLONGATION_SUITE, tag, "base-presentation");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.poly(n), s.poly(n));
        let lhs = data.bracket(&f, &g)?;
        let rhs = lcs.base_bracket(&f, &g)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("g", &g)]);
    }
    report.push(c);

    let mut c = check(PROLONGATION_SUITE, tag, "prolonged-agreement");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (prolong(&s.poly(n), &alg), prolong(&s.poly(n), &alg));
        let lhs = prolonged.bracket(&f, &g)?;
        let rhs = br.bracket(&f, &g)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f^A", &f), named("g^A", &g)]);
    }
    report.push(c);

    let mut c = check(PROLONGATION_SUITE, tag, "prolonged-agreement-general");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let lhs = prolonged.bracket(&f, &g)?;
        let rhs = br.bracket(&f, &g)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g)]);
    }
    report.push(c);
    Ok(report)
}

/// `{f^A, g^A}_A = {f, g}^A` for the prolonged bracket of `(Lambda, E)`.
pub fn check_prolonged_homomorphism(br: &ProlongedBracket, samples: &Samples) -> Result<Report> {
    let alg = br.algebra().clone();
    let data: &JacobiData = br.data();
    let n = data.n();
    let mut c = check(PROLONGATION_SUITE, "prolonged", "bracket-coincidence");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.poly(n), s.poly(n));
        let lhs = br.bracket(&prolong(&f, &alg), &prolong(&g, &alg))?;
        let rhs = prolong(&data.bracket(&f, &g)?, &alg);
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("f", &f), named("g", &g)]);
    }
    Ok(Report { checks: vec![c] })
}

/// Draws a near point whose origin is a non-degenerate point of `omega`.
fn admissible_point(lcs: &LcsData, s: &mut Sampler) -> Result<NearPoint> {
    let probe = APoly::one(lcs.algebra(), lcs.n());
    let mut last = None;
    for _ in 0..32 {
        let xi = s.near_point(lcs.algebra(), lcs.n());
        match lcs.hamiltonian_at(&probe, &xi) {
            Ok(_) => return Ok(xi),
            Err(e @ Error::DegenerateForm { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

fn tilde_at(components: &[AElement], g: &APoly, xi: &NearPoint) -> Result<AElement> {
    let mut acc = AElement::zero(xi.algebra());
    for (j, xj) in components.iter().enumerate() {
        acc = &acc + &(xj * &g.partial(j)?.eval(xi)?);
    }
    Ok(acc)
}

/// The battery for lcs pairs whose 2-form has no polynomial inverse: every
/// identity is evaluated at random near points. Identities that need the
/// bracket as a function are reported as skipped.
pub fn check_pointwise(lcs: &LcsData, samples: &Samples) -> Result<Report> {
    let alg = lcs.algebra().clone();
    let n = lcs.n();
    let tag = "lcs-pointwise";
    let mut report = Report::default();

    let mut c = check(AXIOM_SUITE, tag, "hamiltonian-residual");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let f = s.apoly(&alg, n);
        let xi = admissible_point(lcs, &mut s)?;
        let x = lcs.hamiltonian_at(&f, &xi)?;
        let eta = lcs.lichnerowicz(&f)?;
        for j in 0..n {
            let mut lhs = AElement::zero(&alg);
            for (i, xi_comp) in x.iter().enumerate() {
                let w = lcs.omega_a().coefficient(&[i, j]).eval(&xi)?;
                lhs = &lhs + &(xi_comp * &w);
            }
            let rhs = eta.coefficient(&[j]).eval(&xi)?;
            c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("xi", &xi), named("j", &(j + 1))]);
        }
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "antisymmetry");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let xi = admissible_point(lcs, &mut s)?;
        let lhs = lcs.bracket_at(&f, &g, &xi)?;
        let rhs = -lcs.bracket_at(&g, &f, &xi)?;
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g), named("xi", &xi)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "a-bilinearity");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let f = s.apoly(&alg, n);
        let (g1, g2) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let a = s.element(&alg);
        let xi = admissible_point(lcs, &mut s)?;
        let lhs = lcs.bracket_at(&f, &g1.a_scale(&a)?.try_add(&g2)?, &xi)?;
        let rhs = &(&a * &lcs.bracket_at(&f, &g1, &xi)?) + &lcs.bracket_at(&f, &g2, &xi)?;
        c.record_eq(&lhs, &rhs, Some(seed), || {
            vec![named("F", &f), named("G1", &g1), named("G2", &g2), named("a", &a), named("xi", &xi)]
        });
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "representation-formula");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let (f, g) = (s.apoly(&alg, n), s.apoly(&alg, n));
        let xi = admissible_point(lcs, &mut s)?;
        let x = lcs.hamiltonian_at(&f, &xi)?;
        let lhs = lcs.bracket_at(&f, &g, &xi)?;
        let mut alpha_x = AElement::zero(&alg);
        for (j, xj) in x.iter().enumerate() {
            alpha_x = &alpha_x + &(xj * &lcs.alpha_a().coefficient(&[j]).eval(&xi)?);
        }
        let rhs = &tilde_at(&x, &g, &xi)? + &(&g.eval(&xi)? * &alpha_x);
        c.record_eq(&lhs, &rhs, Some(seed), || vec![named("F", &f), named("G", &g), named("xi", &xi)]);
    }
    report.push(c);

    let mut c = check(AXIOM_SUITE, tag, "alternating");
    for (seed, mut s) in samples.draws(&c.identity.clone()) {
        let f = s.apoly(&alg, n);
        let xi = admissible_point(lcs, &mut s)?;
        let x = lcs.hamiltonian_at(&f, &xi)?;
        let lhs = two_form_at(lcs.omega_a(), &x, &x, &xi)?;
        c.record_eq(&lhs, &AElement::zero(&alg), Some(seed), || vec![named("F", &f), named("xi", &xi)]);
    }
    report.push(c);

    report.push(IdentityCheck::skipped(
        AXIOM_SUITE,
        &format!("{tag}.jacobi-identity"),
        "needs a polynomial inverse of omega",
    ));
    Ok(report)
}
