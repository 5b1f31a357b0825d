//! Problem files: a line-oriented description of an algebra, a base
//! dimension, named functions and operators, and a Jacobi-type structure.
//!
//! ```text
//! # comment
//! algebra = truncated{ generators = [eps], relations = [eps^3] }
//! dim = 2
//! poly f = 3/2*x1^2*x2 - x1
//! apoly F = eps*x1^2 + (1 - eps)*x2
//! diffop X = diffop{ Z = [x2, -x1], mu = eps }
//! structure = lcs{ alpha = form1{ (1): 1 }, omega = form2{ (1,2): 1 } }
//! checks = [prop1, lie-rinehart, jacobi-axioms, prolongation]
//! seed = 7
//! samples = 100
//! ```

mod syntax;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::forms::RForm;
use crate::jacobi::{JacobiData, LcsData};
use crate::ops::DiffOp;
use crate::poly::Poly;
use crate::rational::Q;
use crate::report::{named, Counterexample, IdentityCheck, Report};
use crate::ring::{determinant, Ring};
use crate::smooth::{prolong, APoly};
use crate::weil::{AElement, Algebra, WeilAlgebra};

pub use syntax::{parse_expr, parse_statements, Expr, Pos, Statement, Value};

pub const STRUCTURE_SUITE: &str = "structure";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Prop1,
    LieRinehart,
    JacobiAxioms,
    Prolongation,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Prop1, Suite::LieRinehart, Suite::JacobiAxioms, Suite::Prolongation];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Prop1 => "prop1",
            Suite::LieRinehart => "lie-rinehart",
            Suite::JacobiAxioms => "jacobi-axioms",
            Suite::Prolongation => "prolongation",
        }
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}` (expected prop1, lie-rinehart, jacobi-axioms or prolongation)"))
    }
}

impl serde::Serialize for Suite {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StructureSection {
    Lcs { alpha: RForm, omega: RForm },
    Jacobi { lambda: Vec<Vec<Poly>>, e: Vec<Poly> },
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub algebra: Algebra,
    pub dim: usize,
    pub polys: Vec<(String, Poly)>,
    pub apolys: Vec<(String, APoly)>,
    pub diffops: Vec<(String, DiffOp)>,
    pub structure: Option<StructureSection>,
    pub checks: Vec<Suite>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
}

fn semantic(entity: &str, pos: Pos, message: impl fmt::Display) -> Error {
    Error::Semantic(format!("{entity} (line {}, column {}): {message}", pos.line, pos.column))
}

fn is_variable(name: &str, n: usize) -> Option<usize> {
    let k: usize = name.strip_prefix('x')?.parse().ok()?;
    (1..=n).contains(&k).then(|| k - 1)
}

fn looks_like_variable(name: &str) -> bool {
    name.strip_prefix('x').is_some_and(|r| !r.is_empty() && r.bytes().all(|b| b.is_ascii_digit()))
}

enum Named {
    Poly(Poly),
    APoly(APoly),
    Operator,
}

/// Name resolution for expressions.
struct Scope<'a> {
    alg: &'a Algebra,
    n: usize,
    names: &'a HashMap<String, Named>,
}

fn eval<R: Ring>(e: &Expr, num: &dyn Fn(&Q) -> R, name: &dyn Fn(&str, Pos) -> Result<R>) -> Result<R> {
    Ok(match e {
        Expr::Num(q) => num(q),
        Expr::Name(s, p) => name(s, *p)?,
        Expr::Add(a, b) => eval(a, num, name)?.plus(&eval(b, num, name)?),
        Expr::Sub(a, b) => eval(a, num, name)?.plus(&eval(b, num, name)?.negated()),
        Expr::Mul(a, b) => eval(a, num, name)?.times(&eval(b, num, name)?),
        Expr::Neg(a) => eval(a, num, name)?.negated(),
        Expr::Pow(a, k) => {
            let base = eval(a, num, name)?;
            let mut acc = base.one_like();
            for _ in 0..*k {
                acc = acc.times(&base);
            }
            acc
        }
    })
}

impl Scope<'_> {
    fn algebra_element(&self, name: &str) -> Option<AElement> {
        let i = self.alg.label_index(name)?;
        (i != 0 || name != "1").then(|| AElement::basis(self.alg, i).expect("index from label"))
    }

    fn poly(&self, e: &Expr, entity: &str) -> Result<Poly> {
        let n = self.n;
        eval(e, &|q| Poly::constant(n, q.clone()), &|s, p| {
            if let Some(j) = is_variable(s, n) {
                return Ok(Poly::var(n, j));
            }
            match self.names.get(s) {
                Some(Named::Poly(f)) => return Ok(f.clone()),
                Some(Named::APoly(_)) => return Err(semantic(entity, p, format!("`{s}` is A-valued; a real polynomial is expected"))),
                Some(Named::Operator) => return Err(semantic(entity, p, format!("`{s}` is an operator, not a function"))),
                None => {}
            }
            if self.algebra_element(s).is_some() {
                return Err(semantic(entity, p, format!("`{s}` is an algebra element; a real polynomial is expected")));
            }
            Err(unknown(entity, s, p, n))
        })
    }

    fn apoly(&self, e: &Expr, entity: &str) -> Result<APoly> {
        let (alg, n) = (self.alg, self.n);
        eval(e, &|q| APoly::real_constant(alg, n, q.clone()), &|s, p| {
            if let Some(j) = is_variable(s, n) {
                return Ok(APoly::coordinate(alg, n, j));
            }
            match self.names.get(s) {
                Some(Named::Poly(f)) => return Ok(prolong(f, alg)),
                Some(Named::APoly(f)) => return Ok(f.clone()),
                Some(Named::Operator) => return Err(semantic(entity, p, format!("`{s}` is an operator, not a function"))),
                None => {}
            }
            if let Some(a) = self.algebra_element(s) {
                return Ok(APoly::constant(n, a));
            }
            Err(unknown(entity, s, p, n))
        })
    }
}

fn unknown(entity: &str, s: &str, p: Pos, n: usize) -> Error {
    if looks_like_variable(s) {
        semantic(entity, p, format!("variable `{s}` is out of range for dim = {n}"))
    } else {
        semantic(entity, p, format!("unknown name `{s}`"))
    }
}

fn expect_expr<'v>(v: &'v Value, entity: &str) -> Result<&'v Expr> {
    match v {
        Value::Expr(e, _) => Ok(e),
        other => Err(semantic(entity, other.pos(), "expected an expression")),
    }
}

fn expect_list<'v>(v: &'v Value, entity: &str) -> Result<&'v [Value]> {
    match v {
        Value::List(items, _) => Ok(items),
        other => Err(semantic(entity, other.pos(), "expected a list `[...]`")),
    }
}

fn expect_natural(v: &Value, entity: &str) -> Result<u64> {
    if let Value::Expr(Expr::Num(q), _) = v {
        if q.is_integer() && *q >= Q::zero() {
            if let Ok(k) = u64::try_from(q.numer()) {
                return Ok(k);
            }
        }
    }
    Err(semantic(entity, v.pos(), "expected a non-negative integer"))
}

/// Fields of a `name{ key = value }` block, rejecting unknown or repeated keys.
fn block_fields<'v>(
    v: &'v Value,
    entity: &str,
    expected_name: &[&str],
    allowed: &[&str],
) -> Result<(String, BTreeMap<String, &'v Value>, Pos)> {
    let Value::Block { name, fields, entries, pos } = v else {
        return Err(semantic(entity, v.pos(), format!("expected {}{{ ... }}", expected_name.join("{ ... } or "))));
    };
    if !expected_name.contains(&name.as_str()) {
        return Err(semantic(entity, *pos, format!("expected {}, found `{name}`", expected_name.join(" or "))));
    }
    if let Some((_, _, p)) = entries.first() {
        return Err(semantic(entity, *p, format!("`{name}` takes `key = value` fields, not index entries")));
    }
    let mut out = BTreeMap::new();
    for (key, value, p) in fields {
        if !allowed.contains(&key.as_str()) {
            return Err(semantic(entity, *p, format!("unknown field `{key}` in `{name}` (allowed: {})", allowed.join(", "))));
        }
        if out.insert(key.clone(), value).is_some() {
            return Err(semantic(entity, *p, format!("field `{key}` given twice")));
        }
    }
    Ok((name.clone(), out, *pos))
}

fn build_algebra(v: &Value) -> Result<Algebra> {
    let entity = "algebra";
    let (kind, fields, pos) =
        block_fields(v, entity, &["truncated", "table"], &["generators", "relations", "degree_cap", "dim", "labels", "constants"])?;
    if kind == "truncated" {
        if let Some(bad) = ["dim", "labels", "constants"].iter().find(|k| fields.contains_key(**k)) {
            return Err(semantic(entity, pos, format!("`{bad}` belongs to table{{...}}")));
        }
        let gens_v = fields.get("generators").ok_or_else(|| semantic(entity, pos, "missing `generators`"))?;
        let mut gens = Vec::new();
        for g in expect_list(gens_v, entity)? {
            match g {
                Value::Expr(Expr::Name(s, p), _) => {
                    if looks_like_variable(s) {
                        return Err(semantic(entity, *p, format!("generator `{s}` clashes with coordinate names")));
                    }
                    gens.push(s.clone());
                }
                other => return Err(semantic(entity, other.pos(), "generators must be names")),
            }
        }
        let mut relations = Vec::new();
        if let Some(rels) = fields.get("relations") {
            for r in expect_list(rels, entity)? {
                relations.push(monomial_exponents(expect_expr(r, entity)?, &gens, r.pos())?);
            }
        }
        let cap = match fields.get("degree_cap") {
            Some(v) => Some(u32::try_from(expect_natural(v, entity)?).map_err(|_| semantic(entity, v.pos(), "degree cap too large"))?),
            None => None,
        };
        let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
        return WeilAlgebra::truncated(&refs, &relations, cap)
            .map_err(|e| semantic(entity, pos, format!("invalid truncated presentation: {e}")));
    }

    if let Some(bad) = ["generators", "relations", "degree_cap"].iter().find(|k| fields.contains_key(**k)) {
        return Err(semantic(entity, pos, format!("`{bad}` belongs to truncated{{...}}")));
    }
    let labels_v = fields.get("labels").ok_or_else(|| semantic(entity, pos, "missing `labels`"))?;
    let mut labels = Vec::new();
    for l in expect_list(labels_v, entity)? {
        match l {
            Value::Expr(Expr::Name(s, p), _) => {
                if looks_like_variable(s) {
                    return Err(semantic(entity, *p, format!("label `{s}` clashes with coordinate names")));
                }
                labels.push(s.clone());
            }
            Value::Expr(Expr::Num(q), _) if q.is_one() => labels.push("1".into()),
            other => return Err(semantic(entity, other.pos(), "labels must be names (or 1 for the unit)")),
        }
    }
    let d = labels.len();
    if let Some(dv) = fields.get("dim") {
        let given = expect_natural(dv, entity)?;
        if given != d as u64 {
            return Err(semantic(entity, dv.pos(), format!("dim = {given} but {d} labels were given")));
        }
    }
    let mut table: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
    let mut explicit_unit_rows = vec![false; d];
    if let Some(cv) = fields.get("constants") {
        for item in expect_list(cv, entity)? {
            let Value::Entry(idx, value, p) = item else {
                return Err(semantic(entity, item.pos(), "constants are entries `(i,j,k): value`"));
            };
            if idx.len() != 3 || idx.iter().any(|&i| i as usize >= d) {
                return Err(semantic(entity, *p, format!("constant index must be (i,j,k) with entries below {d}")));
            }
            let (i, j, k) = (idx[0] as usize, idx[1] as usize, idx[2] as usize);
            let Value::Expr(Expr::Num(c), _) = value.as_ref() else {
                return Err(semantic(entity, value.pos(), "structure constants must be rational numbers"));
            };
            if table.insert((i, j, k), c.clone()).is_some() {
                return Err(semantic(entity, *p, format!("constant ({i},{j},{k}) given twice")));
            }
            if i == 0 {
                explicit_unit_rows[j] = true;
            }
            if j == 0 {
                explicit_unit_rows[i] = true;
            }
        }
    }
    let mut constants = vec![Q::zero(); d * d * d];
    for (&(i, j, k), c) in &table {
        constants[(i * d + j) * d + k] = c.clone();
        if !table.keys().any(|&(a, b, _)| a == j && b == i) {
            constants[(j * d + i) * d + k] = c.clone();
        }
    }
    for (i, explicit) in explicit_unit_rows.iter().enumerate() {
        if !explicit {
            constants[i * d + i] = Q::one();
            constants[(i * d) * d + i] = Q::one();
        }
    }
    let alg = WeilAlgebra::from_table_unchecked(labels, constants).map_err(|e| semantic(entity, pos, e))?;
    Ok(std::sync::Arc::new(alg))
}

fn monomial_exponents(e: &Expr, gens: &[String], pos: Pos) -> Result<Vec<u32>> {
    let bad = || semantic("algebra", pos, "relations must be monomials in the generators, e.g. eps^3 or a*b");
    Ok(match e {
        Expr::Name(s, _) => {
            let i = gens.iter().position(|g| g == s).ok_or_else(|| semantic("algebra", pos, format!("unknown generator `{s}`")))?;
            let mut v = vec![0; gens.len()];
            v[i] = 1;
            v
        }
        Expr::Mul(a, b) => {
            let (a, b) = (monomial_exponents(a, gens, pos)?, monomial_exponents(b, gens, pos)?);
            a.iter().zip(&b).map(|(x, y)| x + y).collect()
        }
        Expr::Pow(a, k) => monomial_exponents(a, gens, pos)?.iter().map(|x| x * k).collect(),
        _ => return Err(bad()),
    })
}

impl Problem {
    pub fn from_path(path: &Path) -> Result<Problem> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Semantic(format!("cannot read {}: {e}", path.display())))?;
        Problem::parse(&src)
    }

    pub fn parse(src: &str) -> Result<Problem> {
        let statements = parse_statements(src)?;
        let mut seen: HashMap<&str, Pos> = HashMap::new();
        for st in &statements {
            if st.name.is_none() {
                if let Some(first) = seen.insert(st.keyword.as_str(), st.pos) {
                    return Err(semantic(
                        &st.keyword,
                        st.pos,
                        format!("given twice (first at line {})", first.line),
                    ));
                }
            }
        }
        let find = |k: &str| statements.iter().find(|s| s.name.is_none() && s.keyword == k);

        let alg_st = find("algebra").ok_or_else(|| Error::Semantic("missing `algebra = ...`".into()))?;
        let algebra = build_algebra(&alg_st.value)?;
        let dim_st = find("dim").ok_or_else(|| Error::Semantic("missing `dim = ...`".into()))?;
        let dim = expect_natural(&dim_st.value, "dim")? as usize;
        if dim == 0 {
            return Err(semantic("dim", dim_st.pos, "dimension must be positive"));
        }

        let mut problem = Problem {
            algebra,
            dim,
            polys: Vec::new(),
            apolys: Vec::new(),
            diffops: Vec::new(),
            structure: None,
            checks: Vec::new(),
            seed: None,
            samples: None,
        };
        let mut names: HashMap<String, Named> = HashMap::new();
        for st in &statements {
            match (st.keyword.as_str(), &st.name) {
                ("algebra" | "dim", None) => {}
                (kind @ ("poly" | "apoly" | "diffop"), Some(name)) => {
                    let entity = format!("{kind} {name}");
                    if looks_like_variable(name) || problem.algebra.label_index(name).is_some() {
                        return Err(semantic(&entity, st.pos, format!("`{name}` clashes with a coordinate or algebra label")));
                    }
                    if names.contains_key(name) {
                        return Err(semantic(&entity, st.pos, "name defined twice"));
                    }
                    let scope = Scope { alg: &problem.algebra, n: dim, names: &names };
                    let value = match kind {
                        "poly" => {
                            let f = scope.poly(expect_expr(&st.value, &entity)?, &entity)?;
                            problem.polys.push((name.clone(), f.clone()));
                            Named::Poly(f)
                        }
                        "apoly" => {
                            let f = scope.apoly(expect_expr(&st.value, &entity)?, &entity)?;
                            problem.apolys.push((name.clone(), f.clone()));
                            Named::APoly(f)
                        }
                        _ => {
                            let x = build_diffop(&scope, &st.value, &entity)?;
                            problem.diffops.push((name.clone(), x));
                            Named::Operator
                        }
                    };
                    names.insert(name.clone(), value);
                }
                ("structure", None) => {
                    let scope = Scope { alg: &problem.algebra, n: dim, names: &names };
                    problem.structure = Some(build_structure(&scope, &st.value)?);
                }
                ("checks", None) => {
                    for item in expect_list(&st.value, "checks")? {
                        let name = match item {
                            Value::Expr(e, _) => e.as_dashed_name(),
                            _ => None,
                        }
                        .ok_or_else(|| semantic("checks", item.pos(), "expected a suite name"))?;
                        let suite = name.parse::<Suite>().map_err(|m| semantic("checks", item.pos(), m))?;
                        if !problem.checks.contains(&suite) {
                            problem.checks.push(suite);
                        }
                    }
                }
                ("seed", None) => problem.seed = Some(expect_natural(&st.value, "seed")?),
                ("samples", None) => problem.samples = Some(expect_natural(&st.value, "samples")? as usize),
                (other, _) => {
                    return Err(semantic(
                        other,
                        st.pos,
                        "unknown statement (expected algebra, dim, poly, apoly, diffop, structure, checks, seed or samples)",
                    ))
                }
            }
        }
        Ok(problem)
    }

    /// Evaluates an A-valued expression with the problem's names in scope.
    pub fn apoly_expr(&self, src: &str) -> Result<APoly> {
        let names = self.names();
        let scope = Scope { alg: &self.algebra, n: self.dim, names: &names };
        scope.apoly(&parse_expr(src)?, &format!("expression `{src}`"))
    }

    /// The real polynomial `f` when `phi = f^A` syntactically (a named `poly`
    /// or an expression without algebra elements).
    pub fn base_poly_expr(&self, src: &str) -> Option<Poly> {
        let names = self.names();
        let scope = Scope { alg: &self.algebra, n: self.dim, names: &names };
        scope.poly(&parse_expr(src).ok()?, "expression").ok()
    }

    fn names(&self) -> HashMap<String, Named> {
        let mut names = HashMap::new();
        for (k, v) in &self.polys {
            names.insert(k.clone(), Named::Poly(v.clone()));
        }
        for (k, v) in &self.apolys {
            names.insert(k.clone(), Named::APoly(v.clone()));
        }
        for (k, _) in &self.diffops {
            names.insert(k.clone(), Named::Operator);
        }
        names
    }

    /// Structural checks: locality of the algebra and the invariants of the
    /// structure section.
    pub fn validate(&self) -> Report {
        let mut report = Report::default();
        let mut local = IdentityCheck::new(STRUCTURE_SUITE, "algebra-local");
        let verdict = self.algebra.validate_local();
        record_result(&mut local, verdict.as_ref().map(|_| ()).map_err(Clone::clone), || vec![named("algebra", &self.algebra)]);
        report.push(local);

        match &self.structure {
            None => {}
            Some(StructureSection::Lcs { alpha, omega }) => {
                let mut shape = IdentityCheck::new(STRUCTURE_SUITE, "lcs-nondegenerate");
                let built = LcsData::new_unchecked(&self.algebra, alpha.clone(), omega.clone());
                record_result(&mut shape, built.as_ref().map(|_| ()).map_err(Clone::clone), || vec![named("omega", omega)]);
                if let Ok(lcs) = &built {
                    if !lcs.is_symbolic() {
                        shape.note = Some("omega has no polynomial inverse; solves are pointwise".into());
                    }
                }
                report.push(shape);
                if let Ok(lcs) = built {
                    let mut compat = IdentityCheck::new(STRUCTURE_SUITE, "lcs-compatibility");
                    match lcs.compatibility_defect() {
                        Ok(defect) => {
                            let zero = RForm::zero(3, &Poly::zero(self.dim));
                            compat.record_eq(&defect, &zero, None, || vec![named("alpha", alpha), named("omega", omega)]);
                        }
                        Err(e) => record_result(&mut compat, Err(e), Vec::new),
                    }
                    report.push(compat);
                    let closed = lcs.alpha_is_closed().unwrap_or(false);
                    let mut advisory = IdentityCheck::new(STRUCTURE_SUITE, "alpha-closed");
                    if closed {
                        advisory.record(true, |_| unreachable!());
                    } else {
                        advisory = IdentityCheck::skipped(
                            STRUCTURE_SUITE,
                            "alpha-closed",
                            "advisory: d(alpha) != 0, the Jacobi identity is expected to fail",
                        );
                    }
                    report.push(advisory);
                }
            }
            Some(StructureSection::Jacobi { lambda, e }) => {
                let mut anti = IdentityCheck::new(STRUCTURE_SUITE, "lambda-antisymmetric");
                let built = JacobiData::new(lambda.clone(), e.clone());
                record_result(&mut anti, built.map(|_| ()), || {
                    lambda.iter().enumerate().flat_map(|(i, row)| {
                        row.iter().enumerate().map(move |(j, p)| named(&format!("Lambda[{}][{}]", i + 1, j + 1), p))
                    }).collect()
                });
                report.push(anti);
            }
        }
        report
    }

    /// Whether the algebra passed validation (suites are skipped otherwise).
    pub fn algebra_is_local(&self) -> bool {
        self.algebra.validate_local().is_ok()
    }

    /// Determinant of the 2-form's coefficient matrix, when the structure is lcs.
    pub fn omega_determinant(&self) -> Option<Poly> {
        match &self.structure {
            Some(StructureSection::Lcs { omega, .. }) => {
                let n = omega.n();
                let w: Vec<Vec<Poly>> = (0..n).map(|i| (0..n).map(|j| omega.coefficient(&[i, j])).collect()).collect();
                determinant(&w)
            }
            _ => None,
        }
    }
}

fn record_result(check: &mut IdentityCheck, result: Result<()>, inputs: impl FnOnce() -> Vec<crate::report::NamedValue>) {
    let ok = result.is_ok();
    check.record(ok, |sample| Counterexample {
        sample,
        sample_seed: None,
        inputs: inputs(),
        lhs: result.err().map(|e| e.to_string()).unwrap_or_default(),
        rhs: "valid".into(),
    });
}

fn build_diffop(scope: &Scope<'_>, v: &Value, entity: &str) -> Result<DiffOp> {
    let (_, fields, pos) = block_fields(v, entity, &["diffop"], &["Z", "mu"])?;
    let z = fields.get("Z").ok_or_else(|| semantic(entity, pos, "missing `Z = [...]`"))?;
    let items = expect_list(z, entity)?;
    if items.len() != scope.n {
        return Err(semantic(entity, z.pos(), format!("Z has {} components but dim = {}", items.len(), scope.n)));
    }
    let components = items.iter().map(|c| scope.apoly(expect_expr(c, entity)?, entity)).collect::<Result<Vec<_>>>()?;
    let multiplier = match fields.get("mu") {
        Some(m) => scope.apoly(expect_expr(m, entity)?, entity)?,
        None => APoly::zero(scope.alg, scope.n),
    };
    DiffOp::new(components, multiplier)
}

fn build_form(scope: &Scope<'_>, v: &Value, degree: usize, entity: &str) -> Result<RForm> {
    let want = format!("form{degree}");
    let Value::Block { name, fields, entries, pos } = v else {
        return Err(semantic(entity, v.pos(), format!("expected {want}{{ ... }}")));
    };
    if *name != want {
        return Err(semantic(entity, *pos, format!("expected {want}{{ ... }}, found `{name}`")));
    }
    if let Some((_, _, p)) = fields.first() {
        return Err(semantic(entity, *p, "form entries are written `(i,j): coefficient`"));
    }
    let mut out = RForm::zero(degree, &Poly::zero(scope.n));
    let mut seen = Vec::new();
    for (idx, value, p) in entries {
        if idx.len() != degree {
            return Err(semantic(entity, *p, format!("{want} entries need {degree} indices")));
        }
        if idx.iter().any(|&i| i == 0 || i as usize > scope.n) {
            return Err(semantic(entity, *p, format!("form indices run from 1 to {}", scope.n)));
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(semantic(entity, *p, "repeated index in a form entry"));
        }
        if seen.contains(&sorted) {
            return Err(semantic(entity, *p, "entry given twice"));
        }
        seen.push(sorted);
        let c = scope.poly(expect_expr(value, entity)?, entity)?;
        let zero_based: Vec<usize> = idx.iter().map(|&i| i as usize - 1).collect();
        let term = RForm::from_entries(degree, &Poly::zero(scope.n), [(zero_based, c)])?;
        out = out.try_add(&term)?;
    }
    Ok(out)
}

fn build_structure(scope: &Scope<'_>, v: &Value) -> Result<StructureSection> {
    let entity = "structure";
    let (kind, fields, pos) = block_fields(v, entity, &["lcs", "jacobi"], &["alpha", "omega", "Lambda", "E"])?;
    let n = scope.n;
    if kind == "lcs" {
        if fields.contains_key("Lambda") || fields.contains_key("E") {
            return Err(semantic(entity, pos, "`Lambda` and `E` belong to jacobi{...}"));
        }
        let omega_v = fields.get("omega").ok_or_else(|| semantic(entity, pos, "missing `omega`"))?;
        let omega = build_form(scope, omega_v, 2, "structure omega")?;
        let alpha = match fields.get("alpha") {
            Some(a) => build_form(scope, a, 1, "structure alpha")?,
            None => RForm::zero(1, &Poly::zero(n)),
        };
        return Ok(StructureSection::Lcs { alpha, omega });
    }
    if fields.contains_key("alpha") || fields.contains_key("omega") {
        return Err(semantic(entity, pos, "`alpha` and `omega` belong to lcs{...}"));
    }
    let lambda_v = fields.get("Lambda").ok_or_else(|| semantic(entity, pos, "missing `Lambda`"))?;
    let rows = expect_list(lambda_v, "structure Lambda")?;
    if rows.len() != n {
        return Err(semantic(entity, lambda_v.pos(), format!("Lambda needs {n} rows")));
    }
    let mut lambda = Vec::new();
    for row in rows {
        let cells = expect_list(row, "structure Lambda")?;
        if cells.len() != n {
            return Err(semantic(entity, row.pos(), format!("each row of Lambda needs {n} entries")));
        }
        lambda.push(
            cells
                .iter()
                .map(|c| scope.poly(expect_expr(c, "structure Lambda")?, "structure Lambda"))
                .collect::<Result<Vec<_>>>()?,
        );
    }
    let e = match fields.get("E") {
        Some(ev) => {
            let cells = expect_list(ev, "structure E")?;
            if cells.len() != n {
                return Err(semantic(entity, ev.pos(), format!("E needs {n} components")));
            }
            cells.iter().map(|c| scope.poly(expect_expr(c, "structure E")?, "structure E")).collect::<Result<Vec<_>>>()?
        }
        None => vec![Poly::zero(n); n],
    };
    Ok(StructureSection::Jacobi { lambda, e })
}

#[cfg(test)]
mod tests;
