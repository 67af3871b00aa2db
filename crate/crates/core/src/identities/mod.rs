//! Multilinear graded polynomials in the free graded algebra, their
//! evaluation on the Grassmann algebra, and the degree transport maps.

mod dsl;
mod eval;
mod generators;
mod transport;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exterior::Scalar;
use crate::grading::DegreeGroup;

pub use dsl::parse_poly;
pub use eval::{
    find_witness, substitute, verify_identity, Assignment, HoldsOnTruncation, Mode, MonomialEvaluator, Refutation,
    Verdict, VerifyConfig, WitnessEntry,
};
pub use generators::{generators_for, Family};
pub use transport::{assign_degrees, phi_scale, pi_project, psi_embed};

/// A variable `x_id` of a fixed degree. `x1:2` and `x1:3` are different
/// variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GradedVariable {
    pub id: u32,
    pub degree: i64,
}

impl GradedVariable {
    pub fn new(id: u32, degree: i64) -> Self {
        GradedVariable { id, degree }
    }

    /// `x1:3`, or `x1:1bar` for a `Z2` degree.
    pub fn label(self, group: DegreeGroup) -> String {
        match group {
            DegreeGroup::Z => format!("x{}:{}", self.id, self.degree),
            DegreeGroup::Z2 => format!("x{}:{}bar", self.id, self.degree),
        }
    }
}

impl fmt::Display for GradedVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x{}:{}", self.id, self.degree)
    }
}

/// One monomial of a multilinear polynomial: the variables in the order
/// `order` (positions into the polynomial's variable list).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coefficient: Scalar,
    pub order: Vec<usize>,
}

/// A nonzero multilinear element of the free `Z`- or `Z2`-graded algebra.
///
/// Variables are kept sorted by `(id, degree)`; every term is a permutation
/// of them, terms are sorted by their variable word, and coefficients are
/// nonzero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    group: DegreeGroup,
    variables: Vec<GradedVariable>,
    terms: Vec<Term>,
}

/// Noncommutative polynomial under construction: word -> coefficient.
#[derive(Debug, Clone, Default)]
pub(crate) struct Words(BTreeMap<Vec<GradedVariable>, Scalar>);

impl Words {
    pub(crate) fn scalar(c: Scalar) -> Self {
        let mut w = Words::default();
        w.push(Vec::new(), c);
        w
    }

    pub(crate) fn variable(v: GradedVariable) -> Self {
        let mut w = Words::default();
        w.push(vec![v], Scalar::one());
        w
    }

    fn push(&mut self, word: Vec<GradedVariable>, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.0.entry(word).or_insert_with(Scalar::zero);
        *slot += c;
    }

    pub(crate) fn add(&self, other: &Words) -> Words {
        let mut out = self.clone();
        for (w, c) in &other.0 {
            out.push(w.clone(), c.clone());
        }
        out
    }

    pub(crate) fn neg(&self) -> Words {
        Words(self.0.iter().map(|(w, c)| (w.clone(), -c)).collect())
    }

    pub(crate) fn mul(&self, other: &Words) -> Words {
        let mut out = Words::default();
        for (a, ca) in &self.0 {
            for (b, cb) in &other.0 {
                let mut word = a.clone();
                word.extend_from_slice(b);
                out.push(word, ca * cb);
            }
        }
        out
    }

    pub(crate) fn commutator(&self, other: &Words) -> Words {
        self.mul(other).add(&other.mul(self).neg())
    }

    pub(crate) fn anticommutator(&self, other: &Words) -> Words {
        self.mul(other).add(&other.mul(self))
    }

    pub(crate) fn into_polynomial(self, group: DegreeGroup) -> Result<GradedPolynomial> {
        GradedPolynomial::from_words(group, self.0)
    }
}

impl GradedPolynomial {
    /// Collects `(coefficient, word)` pairs into a canonical polynomial,
    /// checking multilinearity.
    pub fn from_words<I>(group: DegreeGroup, words: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<GradedVariable>, Scalar)>,
    {
        let mut merged: BTreeMap<Vec<GradedVariable>, Scalar> = BTreeMap::new();
        for (word, c) in words {
            let word: Vec<GradedVariable> = word
                .into_iter()
                .map(|v| {
                    if v.degree.abs() > i32::MAX as i64 {
                        Err(Error::DegreeOverflow(v.degree as i128))
                    } else {
                        Ok(GradedVariable::new(v.id, group.normalize(v.degree)))
                    }
                })
                .collect::<Result<_>>()?;
            *merged.entry(word).or_insert_with(Scalar::zero) += c;
        }
        merged.retain(|_, c| !c.is_zero());
        let Some(first) = merged.keys().next() else {
            return Err(Error::ZeroPolynomial);
        };
        let mut variables = first.clone();
        variables.sort();
        if variables.is_empty() {
            return Err(Error::NotMultilinear("constant term without variables".into()));
        }
        let mut terms = Vec::with_capacity(merged.len());
        for (word, coefficient) in merged {
            let mut sorted = word.clone();
            sorted.sort();
            if let Some(pair) = sorted.windows(2).find(|p| p[0] == p[1]) {
                return Err(Error::NotMultilinear(format!(
                    "variable {} repeated in a term",
                    pair[0].label(group)
                )));
            }
            if sorted != variables {
                return Err(Error::NotMultilinear(format!(
                    "terms use different variables ({} vs {})",
                    list(&sorted, group),
                    list(&variables, group)
                )));
            }
            let order = word.iter().map(|v| variables.binary_search(v).unwrap()).collect();
            terms.push(Term { coefficient, order });
        }
        Ok(GradedPolynomial { group, variables, terms })
    }

    pub fn variable(group: DegreeGroup, v: GradedVariable) -> Result<Self> {
        Words::variable(v).into_polynomial(group)
    }

    /// Left-normed commutator `[x1, ..., xk]`, `k >= 2`.
    pub fn commutator(group: DegreeGroup, vars: &[GradedVariable]) -> Result<Self> {
        if vars.len() < 2 {
            return Err(Error::InvalidArgument("a commutator needs at least two variables".into()));
        }
        let mut acc = Words::variable(vars[0]);
        for v in &vars[1..] {
            acc = acc.commutator(&Words::variable(*v));
        }
        acc.into_polynomial(group)
    }

    /// `x1 x2 + x2 x1`.
    pub fn anticommutator(group: DegreeGroup, a: GradedVariable, b: GradedVariable) -> Result<Self> {
        Words::variable(a).anticommutator(&Words::variable(b)).into_polynomial(group)
    }

    pub fn group(&self) -> DegreeGroup {
        self.group
    }

    pub fn variables(&self) -> &[GradedVariable] {
        &self.variables
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Terms as `(word, coefficient)`.
    pub fn words(&self) -> impl Iterator<Item = (Vec<GradedVariable>, &Scalar)> + '_ {
        self.terms
            .iter()
            .map(|t| (t.order.iter().map(|&i| self.variables[i]).collect(), &t.coefficient))
    }

    /// Same terms with every variable sent through `map`.
    pub(crate) fn relabel(&self, group: DegreeGroup, map: impl Fn(GradedVariable) -> GradedVariable) -> Result<Self> {
        GradedPolynomial::from_words(
            group,
            self.words().map(|(w, c)| (w.into_iter().map(&map).collect(), c.clone())),
        )
    }
}

fn list(vars: &[GradedVariable], group: DegreeGroup) -> String {
    vars.iter().map(|v| v.label(group)).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, term) in self.terms.iter().enumerate() {
            let magnitude = term.coefficient.abs();
            match (k, term.coefficient.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if !magnitude.is_one() {
                write!(f, "{magnitude}*")?;
            }
            for (j, &i) in term.order.iter().enumerate() {
                if j > 0 {
                    f.write_str("*")?;
                }
                f.write_str(&self.variables[i].label(self.group))?;
            }
        }
        Ok(())
    }
}

impl Serialize for GradedPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A random multilinear `Z`-graded polynomial in `x1..xk` with
/// `k` drawn from `vars`, degrees from `degrees` and integer coefficients
/// from `coefficients` (each permutation of the variables gets one draw;
/// all-zero draws are repeated).
pub fn random_multilinear<R: Rng + ?Sized>(
    rng: &mut R,
    vars: std::ops::RangeInclusive<usize>,
    degrees: std::ops::RangeInclusive<i64>,
    coefficients: std::ops::RangeInclusive<i64>,
) -> GradedPolynomial {
    let k = rng.random_range(vars);
    let variables: Vec<GradedVariable> = (1..=k as u32)
        .map(|id| GradedVariable::new(id, rng.random_range(degrees.clone())))
        .collect();
    let orders = permutations(k);
    loop {
        let words = orders.iter().map(|order| {
            let c = rng.random_range(coefficients.clone());
            (order.iter().map(|&i| variables[i]).collect(), Scalar::from_integer(c.into()))
        });
        if let Ok(poly) = GradedPolynomial::from_words(DegreeGroup::Z, words.collect::<Vec<_>>()) {
            return poly;
        }
    }
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // Next permutation in lexicographic order.
        let Some(i) = (1..k).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
    }
}
