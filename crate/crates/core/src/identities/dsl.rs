//! Text syntax for graded polynomials.
//!
//! ```text
//! sum     := ['+'|'-'] product (('+'|'-') product)*
//! product := factor ('*' factor)*
//! factor  := rational | variable | '(' sum ')'
//!          | '[' sum (',' sum)+ ']'     left-normed commutator
//!          | '{' sum ',' sum '}'        anticommutator
//! variable := 'x' id ':' ['-'] degree ['bar']
//! ```
//!
//! A trailing `bar` marks a `Z2` degree; one polynomial cannot mix both.

use std::str::FromStr;

use crate::error::{Error, ParseError, Result};
use crate::grading::DegreeGroup;
use crate::text::Cursor;

use super::{GradedPolynomial, GradedVariable, Words};

struct Parser<'a> {
    cur: Cursor<'a>,
    group: Option<DegreeGroup>,
}

impl<'a> Parser<'a> {
    fn sum(&mut self) -> Result<Words> {
        let mut negate = false;
        if self.cur.eat(b'-') {
            negate = true;
        } else {
            self.cur.eat(b'+');
        }
        let first = self.product()?;
        let mut acc = if negate { first.neg() } else { first };
        loop {
            if self.cur.eat(b'+') {
                acc = acc.add(&self.product()?);
            } else if self.cur.eat(b'-') {
                acc = acc.add(&self.product()?.neg());
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Words> {
        let mut acc = self.factor()?;
        while self.cur.eat(b'*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Words> {
        match self.cur.peek() {
            Some(b'0'..=b'9') => Ok(Words::scalar(self.cur.rational()?)),
            Some(b'x') => {
                self.cur.bump();
                Ok(Words::variable(self.variable()?))
            }
            Some(b'(') => {
                self.cur.bump();
                let inner = self.sum()?;
                self.cur.expect(b')')?;
                Ok(inner)
            }
            Some(b'[') => {
                self.cur.bump();
                let mut acc = self.sum()?;
                let mut arity = 1;
                while self.cur.eat(b',') {
                    acc = acc.commutator(&self.sum()?);
                    arity += 1;
                }
                if arity < 2 {
                    return Err(self.cur.error("a commutator needs at least two entries").into());
                }
                self.cur.expect(b']')?;
                Ok(acc)
            }
            Some(b'{') => {
                self.cur.bump();
                let a = self.sum()?;
                self.cur.expect(b',')?;
                let b = self.sum()?;
                self.cur.expect(b'}')?;
                Ok(a.anticommutator(&b))
            }
            Some(c) => Err(self.cur.error(format!("unexpected '{}'", c as char)).into()),
            None => Err(self.cur.error("unexpected end of input").into()),
        }
    }

    /// Everything after the leading `x`.
    fn variable(&mut self) -> Result<GradedVariable> {
        let start = self.cur.pos();
        let id = self.cur.unsigned()?;
        if id == 0 || id > u32::MAX as u64 {
            return Err(ParseError::new(start, "variable ids run from 1 to 2^32 - 1").into());
        }
        if self.cur.peek_raw() != Some(b':') {
            return Err(self.cur.error("expected ':' and a degree after the variable id").into());
        }
        self.cur.bump();
        let negative = self.cur.peek_raw() == Some(b'-');
        if negative {
            self.cur.bump();
        }
        let digits_at = self.cur.pos();
        let digits = self.cur.digits()?;
        let magnitude: i128 = digits.parse().unwrap_or(i128::MAX);
        let degree = if negative { -magnitude } else { magnitude };
        if degree.abs() > i32::MAX as i128 {
            return Err(Error::DegreeOverflow(degree));
        }
        let group = if self.cur.eat_str("bar") {
            DegreeGroup::Z2
        } else {
            DegreeGroup::Z
        };
        match self.group {
            None => self.group = Some(group),
            Some(g) if g != group => {
                return Err(ParseError::new(digits_at, "mixes Z and Z2 degrees").into());
            }
            Some(_) => {}
        }
        Ok(GradedVariable::new(id as u32, degree as i64))
    }
}

/// Parses the polynomial syntax described in this module.
pub fn parse_poly(text: &str) -> Result<GradedPolynomial> {
    let mut parser = Parser {
        cur: Cursor::new(text),
        group: None,
    };
    let words = parser.sum()?;
    if !parser.cur.at_end() {
        let c = parser.cur.peek().unwrap();
        return Err(parser.cur.error(format!("unexpected '{}'", c as char)).into());
    }
    words.into_polynomial(parser.group.unwrap_or(DegreeGroup::Z))
}

impl FromStr for GradedPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::Scalar;

    fn parse(s: &str) -> GradedPolynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn brackets() {
        assert_eq!(parse("[x1:0, x2:1]").to_string(), "x1:0*x2:1 - x2:1*x1:0");
        assert_eq!(parse("{x1:1, x2:1}").to_string(), "x1:1*x2:1 + x2:1*x1:1");
    }

    #[test]
    fn triple_commutator_matches_hand_expansion() {
        // [[a,b],c] = abc - bac - cab + cba
        let f = parse("[x1:1, x2:1, x3:1]");
        let hand = parse("x1:1*x2:1*x3:1 - x2:1*x1:1*x3:1 - x3:1*x1:1*x2:1 + x3:1*x2:1*x1:1");
        assert_eq!(f, hand);
        assert_eq!(f.terms().len(), 4);
        assert!(f.terms().iter().all(|t| t.coefficient.numer().magnitude() == &1u32.into()));
    }

    #[test]
    fn rationals_and_parentheses() {
        let f = parse("3/2*(x1:0*x2:0 - x2:0*x1:0) + 1/2*x2:0*x1:0");
        let words: Vec<_> = f.words().collect();
        assert_eq!(words.len(), 2);
        assert_eq!(words[0].1, &Scalar::new(3.into(), 2.into()));
        assert_eq!(words[1].1, &Scalar::new((-1).into(), 1.into()));
    }

    #[test]
    fn z2_degrees() {
        let f = parse("[x1:0bar, x2:1bar]");
        assert_eq!(f.group(), DegreeGroup::Z2);
        assert_eq!(f.to_string(), "x1:0bar*x2:1bar - x2:1bar*x1:0bar");
        // Degrees are reduced.
        assert_eq!(parse("x1:3bar").variables()[0].degree, 1);
    }

    #[test]
    fn same_id_different_degree_are_distinct() {
        let f = parse("x1:2*x1:3");
        assert_eq!(f.variables().len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_poly("x1:0*x1:0"), Err(Error::NotMultilinear(_))));
        assert!(matches!(parse_poly("x1:0 + x2:0"), Err(Error::NotMultilinear(_))));
        assert!(matches!(parse_poly("x1:99999999999"), Err(Error::DegreeOverflow(_))));
        assert!(matches!(parse_poly("[x1:0, x1:0]"), Err(Error::ZeroPolynomial)));
        assert!(matches!(parse_poly("3"), Err(Error::NotMultilinear(_))));
        match parse_poly("x1:0 * y2:0") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 7),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("x1:0bar*x2:1"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("[x1:0]"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("x0:1"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("x1:1)"), Err(Error::Parse(_))));
        assert!(matches!(parse_poly("x1 :1"), Err(Error::Parse(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in ["[x1:-4, x2:5]", "{x1:1, x2:1} - 2/3*x2:1*x1:1", "[x1:1bar, x2:0bar, x3:1bar]"] {
            let f = parse(s);
            assert_eq!(parse(&f.to_string()), f);
        }
    }
}
