use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::linalg;
use crate::error::{Error, Result};
use crate::rational::Q;

/// Shared handle to an immutable Weil algebra.
pub type Algebra = Arc<WeilAlgebra>;

/// How an algebra was presented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Presentation {
    /// Monomial quotient `R[generators] / (relations) + m^(degree_cap + 1)`.
    Truncated {
        generators: Vec<String>,
        relations: Vec<Vec<u32>>,
        degree_cap: Option<u32>,
        /// Exponent vector of each basis monomial.
        exponents: Vec<Vec<u32>>,
    },
    Table,
}

/// Result of [`WeilAlgebra::validate_local`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCertificate {
    pub height: usize,
    /// `filtration[k]` is a basis (coordinate vectors) of `V_k`, with
    /// `V_k + m^(k+1) = m^k`.
    pub filtration: Vec<Vec<Vec<Q>>>,
}

/// A finite-dimensional local commutative unital algebra over the rationals,
/// given by a basis whose element 0 is the unit and whose remaining elements
/// span the maximal ideal.
#[derive(Debug, Clone)]
pub struct WeilAlgebra {
    dim: usize,
    labels: Vec<String>,
    /// Dense `dim^3` array, `c[(i * dim + j) * dim + k]`.
    constants: Vec<Q>,
    /// Sparse view of `constants`, one list per `(i, j)`.
    products: Vec<Vec<(usize, Q)>>,
    height: usize,
    filtration: Vec<Vec<Vec<Q>>>,
    presentation: Presentation,
}

impl PartialEq for WeilAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.labels == other.labels && self.constants == other.constants
    }
}

impl Eq for WeilAlgebra {}

pub fn same_algebra(a: &Algebra, b: &Algebra) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

fn unit_vector(dim: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); dim];
    v[i] = Q::one();
    v
}

fn monomial_label(generators: &[String], exps: &[u32]) -> String {
    let parts: Vec<String> = generators
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(g, &e)| if e == 1 { g.clone() } else { format!("{g}^{e}") })
        .collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn divides(small: &[u32], big: &[u32]) -> bool {
    small.iter().zip(big).all(|(s, b)| s <= b)
}

/// All exponent vectors in `k` variables of total degree `d`, in lexicographically
/// decreasing order (`x^2, xy, y^2`).
fn monomials_of_degree(k: usize, d: u32) -> Vec<Vec<u32>> {
    if k == 0 {
        return if d == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(k - 1, d - first) {
            let mut e = vec![first];
            e.append(&mut rest);
            out.push(e);
        }
    }
    out
}

impl WeilAlgebra {
    /// Monomial quotient of the polynomial ring in `generators` by the ideal
    /// spanned by `relations` (exponent vectors), with every monomial of
    /// degree above `degree_cap` also set to zero.
    pub fn truncated(generators: &[&str], relations: &[Vec<u32>], degree_cap: Option<u32>) -> Result<Algebra> {
        let k = generators.len();
        for rel in relations {
            if rel.len() != k {
                return Err(Error::DimensionMismatch { expected: k, found: rel.len() });
            }
            if rel.iter().all(|&e| e == 0) {
                return Err(Error::IdealNotProper);
            }
        }
        if degree_cap.is_none() {
            for (g, name) in generators.iter().enumerate() {
                let has_pure_power = relations
                    .iter()
                    .any(|r| r[g] > 0 && r.iter().enumerate().all(|(i, &e)| i == g || e == 0));
                if !has_pure_power {
                    return Err(Error::InfiniteDimensional { generator: name.to_string() });
                }
            }
        }
        let in_ideal = |m: &[u32]| {
            let deg: u32 = m.iter().sum();
            degree_cap.is_some_and(|cap| deg > cap) || relations.iter().any(|r| divides(r, m))
        };

        let mut exponents: Vec<Vec<u32>> = Vec::new();
        let mut d = 0;
        loop {
            let normal: Vec<Vec<u32>> = monomials_of_degree(k, d).into_iter().filter(|m| !in_ideal(m)).collect();
            if normal.is_empty() {
                break;
            }
            exponents.extend(normal);
            d += 1;
        }
        let dim = exponents.len();
        let gens: Vec<String> = generators.iter().map(|s| s.to_string()).collect();
        let labels = exponents.iter().map(|e| monomial_label(&gens, e)).collect();

        let mut constants = vec![Q::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let prod: Vec<u32> = exponents[i].iter().zip(&exponents[j]).map(|(a, b)| a + b).collect();
                if let Some(kk) = exponents.iter().position(|e| *e == prod) {
                    constants[(i * dim + j) * dim + kk] = Q::one();
                }
            }
        }

        let height = d.saturating_sub(1) as usize;
        let filtration = (0..=height)
            .map(|level| {
                exponents
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.iter().sum::<u32>() as usize == level)
                    .map(|(i, _)| unit_vector(dim, i))
                    .collect()
            })
            .collect();

        let presentation = Presentation::Truncated {
            generators: gens,
            relations: relations.to_vec(),
            degree_cap,
            exponents,
        };
        Ok(Arc::new(Self::assemble(labels, constants, height, filtration, presentation)))
    }

    /// `R[eps] / (eps^nilpotency)`.
    pub fn univariate(nilpotency: u32) -> Algebra {
        Self::truncated(&["eps"], &[vec![nilpotency.max(1)]], None).expect("univariate truncation is finite")
    }

    pub fn dual_numbers() -> Algebra {
        Self::univariate(2)
    }

    /// The real numbers as the trivial Weil algebra.
    pub fn reals() -> Algebra {
        Self::univariate(1)
    }

    /// `R[e1..ek] / m^(order + 1)`: the algebra of `order`-jets in `k` variables.
    pub fn jets(k: usize, order: u32) -> Algebra {
        let names: Vec<String> = if k == 1 { vec!["eps".into()] } else { (1..=k).map(|i| format!("e{i}")).collect() };
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        Self::truncated(&refs, &[], Some(order)).expect("jet algebras are finite")
    }

    /// Algebra from a raw dense structure-constant table, validated for locality.
    pub fn from_table(labels: Vec<String>, constants: Vec<Q>) -> Result<Algebra> {
        let alg = Self::from_table_unchecked(labels, constants)?;
        let cert = alg.validate_local()?;
        Ok(Arc::new(Self { height: cert.height, filtration: cert.filtration, ..alg }))
    }

    /// Builds an algebra without checking the local-algebra axioms. Height and
    /// filtration are best-effort. Intended for mutation testing.
    pub fn from_table_unchecked(labels: Vec<String>, constants: Vec<Q>) -> Result<WeilAlgebra> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::MalformedTable("algebra must have positive dimension".into()));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::MalformedTable(format!(
                "expected {} structure constants, found {}",
                dim * dim * dim,
                constants.len()
            )));
        }
        let probe = Self::assemble(labels.clone(), constants.clone(), dim, vec![], Presentation::Table);
        let (height, filtration) = match probe.ideal_powers() {
            Some(powers) => {
                let h = powers.len();
                (h, filtration_from_powers(dim, &powers))
            }
            None => (dim, vec![vec![unit_vector(dim, 0)]]),
        };
        Ok(Self::assemble(labels, constants, height, filtration, Presentation::Table))
    }

    fn assemble(
        labels: Vec<String>,
        constants: Vec<Q>,
        height: usize,
        filtration: Vec<Vec<Vec<Q>>>,
        presentation: Presentation,
    ) -> WeilAlgebra {
        let dim = labels.len();
        let products = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = &constants[ij * dim + k];
                        (!c.is_zero()).then(|| (k, c.clone()))
                    })
                    .collect()
            })
            .collect();
        WeilAlgebra { dim, labels, constants, products, height, filtration, presentation }
    }

    /// Copy of this algebra as a raw table with basis elements `1..` permuted:
    /// new basis element `i` is old basis element `perm[i]`. `perm[0]` must be 0.
    pub fn permuted(&self, perm: &[usize]) -> Result<Algebra> {
        let dim = self.dim;
        let mut seen = vec![false; dim];
        if perm.len() != dim || perm.first() != Some(&0) {
            return Err(Error::MalformedTable("permutation must fix the unit".into()));
        }
        for &p in perm {
            if p >= dim || std::mem::replace(&mut seen[p], true) {
                return Err(Error::MalformedTable("not a permutation".into()));
            }
        }
        let mut inverse = vec![0; dim];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let mut constants = vec![Q::zero(); dim * dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    constants[(i * dim + j) * dim + k] = self.constant(perm[i], perm[j], perm[k]).clone();
                }
            }
        }
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        Self::from_table(labels, constants)
    }

    /// Unchecked copy with one structure constant replaced.
    pub fn with_constant(&self, i: usize, j: usize, k: usize, value: Q) -> WeilAlgebra {
        let mut constants = self.constants.clone();
        constants[(i * self.dim + j) * self.dim + k] = value;
        let mut out = Self::assemble(
            self.labels.clone(),
            constants,
            self.height,
            self.filtration.clone(),
            Presentation::Table,
        );
        if let Some(powers) = out.ideal_powers() {
            out.height = powers.len();
            out.filtration = filtration_from_powers(self.dim, &powers);
        } else {
            out.height = self.dim;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn filtration(&self) -> &[Vec<Vec<Q>>] {
        &self.filtration
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Q {
        &self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn constants(&self) -> &[Q] {
        &self.constants
    }

    /// Product of two coordinate vectors.
    pub fn mul_coords(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let dim = self.dim;
        let mut out = vec![Q::zero(); dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let list = &self.products[i * dim + j];
                if list.is_empty() {
                    continue;
                }
                let ab = ai * bj;
                for (k, c) in list {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    fn basis_product(&self, i: usize, j: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (k, c) in &self.products[i * self.dim + j] {
            out[*k] = c.clone();
        }
        out
    }

    /// Bases of `m, m^2, ..., m^h` (each in reduced echelon form), or `None`
    /// when the powers of `m = span(a_1..)` do not reach zero.
    fn ideal_powers(&self) -> Option<Vec<Vec<Vec<Q>>>> {
        let dim = self.dim;
        let mut powers = Vec::new();
        let mut current: Vec<Vec<Q>> = (1..dim).map(|i| unit_vector(dim, i)).collect();
        for _ in 0..=dim {
            if current.is_empty() {
                return Some(powers);
            }
            let next: Vec<Vec<Q>> = current
                .iter()
                .flat_map(|u| (1..dim).map(move |j| (u, j)))
                .map(|(u, j)| self.mul_coords(u, &unit_vector(dim, j)))
                .collect();
            powers.push(current);
            current = linalg::row_basis(&next);
        }
        None
    }

    /// Checks commutativity, associativity, the unit law and that the span of
    /// `a_1..a_(dim-1)` is a nilpotent ideal. Returns the height and a
    /// filtration `A = V_0 + ... + V_h`.
    pub fn validate_local(&self) -> Result<LocalCertificate> {
        let dim = self.dim;
        for i in 0..dim {
            let e = unit_vector(dim, i);
            if self.basis_product(0, i) != e || self.basis_product(i, 0) != e {
                return Err(Error::UnitLaw { i });
            }
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if self.basis_product(i, j) != self.basis_product(j, i) {
                    return Err(Error::NotCommutative { i, j });
                }
            }
        }
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.basis_product(i, j);
                for k in 0..dim {
                    let left = self.mul_coords(&ij, &unit_vector(dim, k));
                    let right = self.mul_coords(&unit_vector(dim, i), &self.basis_product(j, k));
                    if left != right {
                        return Err(Error::NotAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 1..dim {
            for j in 1..dim {
                if !self.constant(i, j, 0).is_zero() {
                    return Err(Error::NotIdeal { i, j });
                }
            }
        }
        match self.ideal_powers() {
            Some(powers) => {
                let height = powers.len();
                Ok(LocalCertificate { height, filtration: filtration_from_powers(dim, &powers) })
            }
            None => {
                let index = (1..dim)
                    .find(|&i| {
                        let mut p = unit_vector(dim, i);
                        for _ in 0..dim {
                            p = self.mul_coords(&p, &unit_vector(dim, i));
                        }
                        p.iter().any(|c| !c.is_zero())
                    })
                    .unwrap_or(1);
                Err(Error::NotNilpotent { index })
            }
        }
    }
}

/// Greedy complements `V_k` of `m^(k+1)` inside `m^k`, with `V_0 = R 1`.
fn filtration_from_powers(dim: usize, powers: &[Vec<Vec<Q>>]) -> Vec<Vec<Vec<Q>>> {
    let mut levels = vec![vec![unit_vector(dim, 0)]];
    for (k, level) in powers.iter().enumerate() {
        let mut span: Vec<Vec<Q>> = powers.get(k + 1).cloned().unwrap_or_default();
        let mut chosen = Vec::new();
        for v in level {
            let mut trial = span.clone();
            trial.push(v.clone());
            if linalg::rank(&trial) > span.len() {
                span = linalg::row_basis(&trial);
                chosen.push(v.clone());
            }
        }
        levels.push(chosen);
    }
    levels
}

impl fmt::Display for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.presentation {
            Presentation::Truncated { generators, relations, degree_cap, .. } => {
                let rels: Vec<String> = relations.iter().map(|r| monomial_label(generators, r)).collect();
                write!(f, "R[{}]/({}", generators.join(","), rels.join(", "))?;
                if let Some(cap) = degree_cap {
                    if !rels.is_empty() {
                        write!(f, ", ")?;
                    }
                    write!(f, "m^{}", cap + 1)?;
                }
                write!(f, ")")
            }
            Presentation::Table => write!(f, "table algebra <{}>", self.labels.join(", ")),
        }
    }
}
