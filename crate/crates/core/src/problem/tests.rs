use super::*;
use crate::rational::{frac, q};
use crate::report::Status;

const LCS: &str = "\
# plane with conformal factor
algebra = truncated{ generators = [eps], relations = [eps^3] }
dim = 2
poly f = 3/2*x1^2*x2 - x1
apoly F = eps*x1^2 + (1 - eps)*x2
apoly G = f + eps
diffop X = diffop{ Z = [x2, -x1], mu = eps }
structure = lcs{
    alpha = form1{ (1): 1 },
    omega = form2{ (1,2): 1 },
}
checks = [jacobi-axioms, prolongation]
seed = 7
samples = 12
";

#[test]
fn parses_full_problem() {
    let p = Problem::parse(LCS).unwrap();
    assert_eq!(p.algebra.dim(), 3);
    assert_eq!(p.dim, 2);
    assert_eq!(p.polys[0].1.to_string(), "3/2*x1^2*x2 - x1");
    assert_eq!(p.apolys[0].1.to_string(), "eps*x1^2 + (1 - eps)*x2");
    assert_eq!(p.apolys[1].1, p.apoly_expr("3/2*x1^2*x2 - x1 + eps").unwrap());
    assert_eq!(p.diffops[0].1.multiplier().to_string(), "eps");
    assert_eq!(p.checks, vec![Suite::JacobiAxioms, Suite::Prolongation]);
    assert_eq!((p.seed, p.samples), (Some(7), Some(12)));
    match p.structure.as_ref().unwrap() {
        StructureSection::Lcs { alpha, omega } => {
            assert_eq!(alpha.coefficient(&[0]), Poly::one(2));
            assert_eq!(omega.coefficient(&[1, 0]), -&Poly::one(2));
        }
        other => panic!("{other:?}"),
    }
    assert!(p.validate().all_passed());
}

#[test]
fn trailing_comma_and_reversed_form_index() {
    let src = "algebra = truncated{ generators = [d], relations = [d^2] }\ndim = 2\nstructure = lcs{ omega = form2{ (2,1): 2 } }\n";
    let p = Problem::parse(src).unwrap();
    match p.structure.unwrap() {
        StructureSection::Lcs { omega, .. } => assert_eq!(omega.coefficient(&[0, 1]), Poly::constant(2, q(-2))),
        other => panic!("{other:?}"),
    }
}

#[test]
fn base_poly_detection() {
    let p = Problem::parse(LCS).unwrap();
    assert_eq!(p.base_poly_expr("f*x2").unwrap().to_string(), "3/2*x1^2*x2^2 - x1*x2");
    assert!(p.base_poly_expr("eps*x1").is_none());
    assert!(p.base_poly_expr("F").is_none());
}

#[test]
fn table_algebra_with_implied_unit() {
    let src = "algebra = table{ dim = 3, labels = [1, e, e2], constants = [(1,1,2): 1] }\ndim = 1\napoly p = e*x1 + 1/2*e2\n";
    let p = Problem::parse(src).unwrap();
    assert!(p.algebra_is_local());
    assert_eq!(p.algebra.height(), 2);
    assert_eq!(p.apolys[0].1.to_string(), "e*x1 + 1/2*e2");
    assert_eq!(*p.algebra.constant(0, 2, 2), q(1));
}

#[test]
fn idempotent_table_fails_validation() {
    let src = "algebra = table{ labels = [1, e], constants = [(1,1,1): 1] }\ndim = 1\n";
    let p = Problem::parse(src).unwrap();
    let report = p.validate();
    assert!(!report.all_passed());
    let cx = report.find("algebra-local").unwrap().counterexample.as_ref().unwrap();
    assert!(cx.lhs.contains("non-nilpotent non-unit part"), "{}", cx.lhs);
}

#[test]
fn zero_denominator_is_a_parse_error() {
    let err = Problem::parse("algebra = truncated{ generators = [eps], relations = [eps^2] }\ndim = 1\npoly f = 3/0\n").unwrap_err();
    assert!(matches!(err, Error::Parse { line: 3, column: 10, .. }), "{err}");
}

#[test]
fn semantic_errors_name_the_entity() {
    let head = "algebra = truncated{ generators = [eps], relations = [eps^2] }\ndim = 2\n";
    let cases = [
        ("poly f = x3\n", "poly f"),
        ("poly f = eps*x1\n", "algebra element"),
        ("apoly F = y\n", "unknown name `y`"),
        ("diffop X = diffop{ Z = [1] }\n", "Z has 1 components"),
        ("structure = lcs{ omega = form2{ (1,3): 1 } }\n", "form indices"),
        ("structure = jacobi{ Lambda = [[0, 1]] }\n", "Lambda needs 2 rows"),
        ("checks = [everything]\n", "unknown suite"),
        ("poly eps = 1\n", "clashes"),
        ("dim = 3\n", "given twice"),
        ("frobnicate = 1\n", "unknown statement"),
    ];
    for (tail, needle) in cases {
        let err = Problem::parse(&format!("{head}{tail}")).unwrap_err();
        assert!(matches!(err, Error::Semantic(_)), "{tail}: {err:?}");
        assert!(err.to_string().contains(needle), "{tail}: {err}");
    }
    assert!(Problem::parse("dim = 2\n").unwrap_err().to_string().contains("missing `algebra"));
}

#[test]
fn jacobi_structure_and_antisymmetry_report() {
    let head = "algebra = truncated{ generators = [eps], relations = [eps^2] }\ndim = 2\n";
    let ok = Problem::parse(&format!("{head}structure = jacobi{{ Lambda = [[0, x1], [-x1, 0]], E = [1/2, 0] }}\n")).unwrap();
    match ok.structure.as_ref().unwrap() {
        StructureSection::Jacobi { lambda, e } => {
            assert_eq!(lambda[0][1], Poly::var(2, 0));
            assert_eq!(e[0], Poly::constant(2, frac(1, 2)));
        }
        other => panic!("{other:?}"),
    }
    assert!(ok.validate().all_passed());
    let bad = Problem::parse(&format!("{head}structure = jacobi{{ Lambda = [[0, 1], [1, 0]] }}\n")).unwrap();
    let report = bad.validate();
    assert_eq!(report.find("lambda-antisymmetric").unwrap().status, Status::Fail);
}

#[test]
fn incompatible_lcs_pair_is_reported() {
    let src = "algebra = truncated{ generators = [eps], relations = [eps^2] }\ndim = 4\n\
               structure = lcs{ omega = form2{ (1,2): 1, (3,4): 1, (1,3): x2 } }\n";
    let p = Problem::parse(src).unwrap();
    let report = p.validate();
    let compat = report.find("lcs-compatibility").unwrap();
    assert_eq!(compat.status, Status::Fail);
    assert!(p.omega_determinant().unwrap().is_constant());
}
