//! Exact arithmetic in the Grassmann algebra `E(N)` over the rationals.
//!
//! A [`Monomial`] is a square-free product `e_{i_1} ... e_{i_k}` with
//! `i_1 < ... < i_k`, stored as a bit set (bit `i - 1` stands for `e_i`).
//! A [`GrassmannElement`] is a finite rational combination of monomials,
//! kept in canonical form: no zero coefficients, terms ordered by length and
//! then lexicographically by index sequence.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, ParseError, Result};
use crate::text::Cursor;

/// Exact rational coefficient.
pub type Scalar = BigRational;

/// Highest generator index a monomial can hold.
pub const MAX_GENERATORS: u32 = 128;

/// A canonical basis element of the Grassmann algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    /// The empty product.
    pub const ONE: Monomial = Monomial(0);

    pub fn generator(index: u32) -> Result<Self> {
        if index == 0 || index > MAX_GENERATORS {
            return Err(Error::GeneratorOutOfRange(index as u64));
        }
        Ok(Monomial(1u128 << (index - 1)))
    }

    /// Builds a monomial from a strictly increasing index sequence.
    pub fn from_indices<I: IntoIterator<Item = u32>>(indices: I) -> Result<Self> {
        let mut bits = 0u128;
        let mut last = 0u32;
        for index in indices {
            if index <= last {
                return Err(Error::InvalidArgument(format!(
                    "monomial indices must be strictly increasing, got {index} after {last}"
                )));
            }
            bits |= Monomial::generator(index)?.0;
            last = index;
        }
        Ok(Monomial(bits))
    }

    pub const fn from_bits(bits: u128) -> Self {
        Monomial(bits)
    }

    pub const fn bits(self) -> u128 {
        self.0
    }

    /// Number of generators, `|w|`.
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// No generators; the same monomial as [`Monomial::ONE`].
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn is_one(self) -> bool {
        self.0 == 0
    }

    pub const fn contains(self, index: u32) -> bool {
        index >= 1 && index <= MAX_GENERATORS && self.0 & (1u128 << (index - 1)) != 0
    }

    pub const fn is_disjoint(self, other: Monomial) -> bool {
        self.0 & other.0 == 0
    }

    /// Largest generator index, 0 for the unit.
    pub const fn max_index(self) -> u32 {
        128 - self.0.leading_zeros()
    }

    pub fn indices(self) -> Indices {
        Indices(self.0)
    }
}

/// Iterator over the generator indices of a monomial, ascending.
#[derive(Clone)]
pub struct Indices(u128);

impl Iterator for Indices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let bit = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(bit + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Indices {}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // The lowest index where the two differ belongs to `self`.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Monomial {
    type Err = Error;

    /// Parses `1` or `e1*e3*e7` with strictly increasing indices.
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        if cur.peek() == Some(b'1') {
            cur.bump();
            if !cur.at_end() {
                return Err(cur.error("trailing input after '1'").into());
            }
            return Ok(Monomial::ONE);
        }
        let mut indices = Vec::new();
        loop {
            let at = cur.pos();
            if !cur.eat(b'e') {
                return Err(cur.error("expected a generator like 'e3'").into());
            }
            let index = cur.unsigned()?;
            if index == 0 || index > MAX_GENERATORS as u64 {
                return Err(ParseError::new(at, format!("generator index {index} out of range")).into());
            }
            if indices.last().is_some_and(|&last| last >= index as u32) {
                return Err(ParseError::new(at, "monomial indices must be strictly increasing").into());
            }
            indices.push(index as u32);
            if cur.at_end() {
                break;
            }
            cur.expect(b'*')?;
        }
        Monomial::from_indices(indices)
    }
}

/// Product of two basis monomials: `(sign, product)`.
///
/// The sign is 0 when the supports meet (`e_i e_i = 0`); otherwise it is
/// `(-1)^inv` with `inv` the number of pairs `i in a`, `j in b`, `i > j`.
pub fn mul_monomials(a: Monomial, b: Monomial) -> (i8, Monomial) {
    if !a.is_disjoint(b) {
        return (0, Monomial::ONE);
    }
    let sign = if inversion_parity(a.0, b.0) == 0 { 1 } else { -1 };
    (sign, Monomial(a.0 | b.0))
}

fn inversion_parity(a: u128, b: u128) -> u32 {
    let mut parity = 0;
    let mut rest = b;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        rest &= rest - 1;
        let above = a.checked_shr(bit + 1).unwrap_or(0);
        parity ^= above.count_ones() & 1;
    }
    parity
}

/// An element of `E(N)` with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GrassmannElement {
    terms: BTreeMap<Monomial, Scalar>,
}

impl GrassmannElement {
    pub fn zero() -> Self {
        GrassmannElement::default()
    }

    pub fn one() -> Self {
        GrassmannElement::from(Monomial::ONE)
    }

    pub fn generator(index: u32) -> Result<Self> {
        Ok(GrassmannElement::from(Monomial::generator(index)?))
    }

    pub fn term(coefficient: Scalar, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(monomial, coefficient);
        }
        GrassmannElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: Monomial) -> Scalar {
        self.terms.get(&monomial).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Largest generator index occurring in any term.
    pub fn max_index(&self) -> u32 {
        self.terms.keys().map(|m| m.max_index()).max().unwrap_or(0)
    }

    fn accumulate(&mut self, monomial: Monomial, coefficient: Scalar) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(monomial) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coefficient);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coefficient;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return GrassmannElement::zero();
        }
        GrassmannElement {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    /// `xy - yx`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// `xy + yx`.
    pub fn anticommutator(&self, other: &Self) -> Self {
        &(self * other) + &(other * self)
    }

    /// Left-normed commutator `[[x1, x2], ..., xk]`; needs at least two arguments.
    pub fn long_commutator(args: &[GrassmannElement]) -> Result<Self> {
        if args.len() < 2 {
            return Err(Error::InvalidArgument(format!(
                "a commutator needs at least two arguments, got {}",
                args.len()
            )));
        }
        let mut acc = args[0].commutator(&args[1]);
        for x in &args[2..] {
            acc = acc.commutator(x);
        }
        Ok(acc)
    }

    /// True iff `[x, e_i] = 0` for every `i <= generators`.
    pub fn is_central(&self, generators: u32) -> bool {
        (1..=generators.min(MAX_GENERATORS)).all(|i| {
            let e = GrassmannElement::from(Monomial(1u128 << (i - 1)));
            self.commutator(&e).is_zero()
        })
    }
}

impl From<Monomial> for GrassmannElement {
    fn from(m: Monomial) -> Self {
        GrassmannElement::term(Scalar::one(), m)
    }
}

impl Add for &GrassmannElement {
    type Output = GrassmannElement;

    fn add(self, rhs: &GrassmannElement) -> GrassmannElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, c.clone());
        }
        out
    }
}

impl Sub for &GrassmannElement {
    type Output = GrassmannElement;

    fn sub(self, rhs: &GrassmannElement) -> GrassmannElement {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.accumulate(*m, -c);
        }
        out
    }
}

impl Neg for &GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        GrassmannElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &GrassmannElement {
    type Output = GrassmannElement;

    fn mul(self, rhs: &GrassmannElement) -> GrassmannElement {
        let mut out = GrassmannElement::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                match mul_monomials(*a, *b) {
                    (0, _) => {}
                    (1, p) => out.accumulate(p, ca * cb),
                    (_, p) => out.accumulate(p, -(ca * cb)),
                }
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for GrassmannElement {
            type Output = GrassmannElement;
            fn $method(self, rhs: GrassmannElement) -> GrassmannElement {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for GrassmannElement {
    type Output = GrassmannElement;

    fn neg(self) -> GrassmannElement {
        -&self
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            match (k, c.is_negative()) {
                (0, false) => {}
                (0, true) => f.write_str("-")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GrassmannElement({self})")
    }
}

impl FromStr for GrassmannElement {
    type Err = Error;

    /// Parses sums of products of rationals and generators, e.g.
    /// `3/2*e1*e2 - e3` or `e3*e1` (which is `-e1*e3`).
    fn from_str(s: &str) -> Result<Self> {
        let mut cur = Cursor::new(s);
        let mut total = GrassmannElement::zero();
        let mut negative = if cur.eat(b'-') {
            true
        } else {
            cur.eat(b'+');
            false
        };
        loop {
            let term = parse_product(&mut cur)?;
            total = if negative { &total - &term } else { &total + &term };
            if cur.eat(b'+') {
                negative = false;
            } else if cur.eat(b'-') {
                negative = true;
            } else if cur.at_end() {
                return Ok(total);
            } else {
                return Err(cur.error("expected '+', '-' or '*'").into());
            }
        }
    }
}

fn parse_product(cur: &mut Cursor<'_>) -> Result<GrassmannElement> {
    let mut acc = GrassmannElement::one();
    loop {
        let factor = match cur.peek() {
            Some(b'e') => {
                let at = cur.pos();
                cur.bump();
                let index = cur.unsigned()?;
                if index == 0 || index > MAX_GENERATORS as u64 {
                    return Err(ParseError::new(at, format!("generator index {index} out of range")).into());
                }
                GrassmannElement::generator(index as u32)?
            }
            Some(b'0'..=b'9') => GrassmannElement::term(cur.rational()?, Monomial::ONE),
            _ => return Err(cur.error("expected a number or a generator").into()),
        };
        acc = &acc * &factor;
        if !cur.eat(b'*') {
            return Ok(acc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(indices: &[u32]) -> Monomial {
        Monomial::from_indices(indices.iter().copied()).unwrap()
    }

    fn el(s: &str) -> GrassmannElement {
        s.parse().unwrap()
    }

    #[test]
    fn monomial_products() {
        assert_eq!(mul_monomials(mono(&[1]), mono(&[2])), (1, mono(&[1, 2])));
        assert_eq!(mul_monomials(mono(&[2]), mono(&[1])), (-1, mono(&[1, 2])));
        assert_eq!(mul_monomials(mono(&[1]), mono(&[1])), (0, Monomial::ONE));
        assert_eq!(mul_monomials(mono(&[1, 3]), mono(&[2])), (-1, mono(&[1, 2, 3])));
        assert_eq!(mul_monomials(mono(&[128]), mono(&[1])), (-1, mono(&[1, 128])));
    }

    #[test]
    fn element_products() {
        let x = el("3/2*e1*e2 - e3");
        assert_eq!(&GrassmannElement::one() * &x, x);
        assert_eq!(&el("e1 + e2") * &el("e1"), el("-e1*e2"));
        let (a, b, c) = (el("e1*e2"), el("e3*e4"), el("e5*e6"));
        let left = &(&a * &b) * &c;
        let right = &a * &(&b * &c);
        assert_eq!(left, right);
        assert_eq!(left, el("e1*e2*e3*e4*e5*e6"));
    }

    #[test]
    fn commutators() {
        assert!(el("e1*e2").commutator(&el("e3")).is_zero());
        assert_eq!(el("e1").commutator(&el("e2")), el("2*e1*e2"));
        let triple = GrassmannElement::long_commutator(&[el("e1"), el("e2"), el("e3")]).unwrap();
        assert!(triple.is_zero());
        assert!(GrassmannElement::long_commutator(&[el("e1")]).is_err());
    }

    #[test]
    fn anticommutators() {
        assert!(el("e1").anticommutator(&el("e2")).is_zero());
        assert!(el("e1").anticommutator(&el("e1*e2*e3")).is_zero());
        assert_eq!(GrassmannElement::one().anticommutator(&el("e1")), el("2*e1"));
    }

    #[test]
    fn centrality() {
        assert!(el("e1*e2").is_central(8));
        assert!(!el("e1").is_central(8));
        assert!(!el("e1*e2*e3 + 1").is_central(8));
        // e1e2e3 commutes with e1..e3 but not with e4.
        assert!(el("e1*e2*e3").is_central(3));
        assert!(!el("e1*e2*e3").is_central(4));
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(el("3/2*e1*e2 - e3").to_string(), "-e3 + 3/2*e1*e2");
        assert_eq!(el("e3*e1").to_string(), "-e1*e3");
        assert_eq!(el("e1*e1").to_string(), "0");
        assert_eq!(el("2 + e1 - 2").to_string(), "e1");
        assert_eq!(el("-1/2").to_string(), "-1/2");
        assert_eq!("e1*e3*e7".parse::<Monomial>().unwrap(), mono(&[1, 3, 7]));
        assert!("e3*e1".parse::<Monomial>().is_err());
        assert!("e0".parse::<GrassmannElement>().is_err());
        assert!("e129".parse::<GrassmannElement>().is_err());
        let err = "e1 + * e2".parse::<GrassmannElement>().unwrap_err();
        assert!(matches!(err, Error::Parse(ParseError { position: 5, .. })), "{err:?}");
        assert!("1/0".parse::<GrassmannElement>().is_err());
    }

    #[test]
    fn canonical_form() {
        let x = el("3/2*e1*e2 - e3 + 7");
        assert!((&x + &(-&x)).is_zero());
        assert!((&x - &x).terms().next().is_none());
    }

    #[test]
    fn monomial_order_is_length_then_lex() {
        let mut ms = vec![mono(&[2, 3]), mono(&[1]), Monomial::ONE, mono(&[1, 4]), mono(&[3])];
        ms.sort();
        assert_eq!(
            ms,
            vec![Monomial::ONE, mono(&[1]), mono(&[3]), mono(&[1, 4]), mono(&[2, 3])]
        );
    }

    const N: u32 = 8;

    fn arb_monomial() -> impl Strategy<Value = Monomial> {
        (0u128..(1 << N)).prop_map(Monomial::from_bits)
    }

    fn arb_element() -> impl Strategy<Value = GrassmannElement> {
        prop::collection::vec((arb_monomial(), -3i64..=3, 1i64..=3), 0..=5).prop_map(|terms| {
            terms.into_iter().fold(GrassmannElement::zero(), |acc, (m, p, q)| {
                &acc + &GrassmannElement::term(Scalar::new(p.into(), q.into()), m)
            })
        })
    }

    /// Sign of a product by counting inversions of the concatenated index word.
    fn brute_sign(a: Monomial, b: Monomial) -> i8 {
        let word: Vec<u32> = a.indices().chain(b.indices()).collect();
        let mut inversions = 0;
        for i in 0..word.len() {
            for j in i + 1..word.len() {
                if word[i] == word[j] {
                    return 0;
                }
                if word[i] > word[j] {
                    inversions += 1;
                }
            }
        }
        if inversions % 2 == 0 { 1 } else { -1 }
    }

    proptest! {
        #[test]
        fn sign_matches_bubble_sort(a in arb_monomial(), b in arb_monomial()) {
            prop_assert_eq!(mul_monomials(a, b).0, brute_sign(a, b));
        }

        #[test]
        fn graded_commutativity(a in arb_monomial(), b in arb_monomial()) {
            let b = Monomial::from_bits(b.bits() & !a.bits());
            let ab = &GrassmannElement::from(a) * &GrassmannElement::from(b);
            let ba = &GrassmannElement::from(b) * &GrassmannElement::from(a);
            let sign = if (a.len() * b.len()).is_multiple_of(2) { 1 } else { -1 };
            prop_assert_eq!(ab, ba.scale(&Scalar::from_integer(sign.into())));
        }

        #[test]
        fn parity_of_square_and_centre(a in arb_monomial()) {
            let x = GrassmannElement::from(a);
            if a.len() % 2 == 1 {
                prop_assert!((&x * &x).is_zero());
            } else {
                for bits in 0u128..(1 << N) {
                    let y = GrassmannElement::from(Monomial::from_bits(bits));
                    prop_assert!(x.commutator(&y).is_zero());
                }
            }
        }

        #[test]
        fn ring_axioms(x in arb_element(), y in arb_element(), z in arb_element()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
        }

        #[test]
        fn display_round_trips(x in arb_element()) {
            let back: GrassmannElement = x.to_string().parse().unwrap();
            prop_assert_eq!(back, x);
        }
    }
}
