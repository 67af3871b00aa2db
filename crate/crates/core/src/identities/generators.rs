//! Finite instances of the generating sets of the graded identities.

use std::ops::RangeInclusive;

use crate::error::Result;
use crate::grading::DegreeGroup;

use super::{GradedPolynomial, GradedVariable};

/// A variety or grading whose identities have a known generating set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `[x1, x2, x3]` for all degrees.
    V1,
    /// `[x1, x2]` if a degree is even, `x1 x2 + x2 x1` if both are odd.
    V2,
    /// `V2` plus `x` for negative degrees.
    Ecan,
    /// `V1` plus `x` for negative degrees.
    Einf,
    /// `V1` plus `x` for degrees outside `0..=k`.
    Ekstar(u32),
}

/// The generators of `family` with every degree in `window` and at most
/// `var_count_max` variables, in a fixed order (single variables first,
/// then by degree tuple).
pub fn generators_for(family: Family, window: RangeInclusive<i64>, var_count_max: usize) -> Result<Vec<GradedPolynomial>> {
    let z = DegreeGroup::Z;
    let x = GradedVariable::new;
    let mut out = Vec::new();
    let monomial = |d: i64| match family {
        Family::V1 | Family::V2 => false,
        Family::Ecan | Family::Einf => d < 0,
        Family::Ekstar(k) => d < 0 || d > k as i64,
    };
    if var_count_max >= 1 {
        for d in window.clone().filter(|&d| monomial(d)) {
            out.push(GradedPolynomial::variable(z, x(1, d))?);
        }
    }
    match family {
        Family::V2 | Family::Ecan if var_count_max >= 2 => {
            for a in window.clone() {
                for b in window.clone() {
                    let (u, v) = (x(1, a), x(2, b));
                    if a % 2 != 0 && b % 2 != 0 {
                        out.push(GradedPolynomial::anticommutator(z, u, v)?);
                    } else {
                        out.push(GradedPolynomial::commutator(z, &[u, v])?);
                    }
                }
            }
        }
        Family::V1 | Family::Einf | Family::Ekstar(_) if var_count_max >= 3 => {
            for a in window.clone() {
                for b in window.clone() {
                    for c in window.clone() {
                        out.push(GradedPolynomial::commutator(z, &[x(1, a), x(2, b), x(3, c)])?);
                    }
                }
            }
        }
        _ => {}
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(generators_for(Family::V1, -3..=3, 3).unwrap().len(), 343);
        assert_eq!(generators_for(Family::V2, -3..=3, 3).unwrap().len(), 49);
        assert_eq!(generators_for(Family::Ecan, -3..=3, 3).unwrap().len(), 49 + 3);
        assert_eq!(generators_for(Family::Einf, -3..=3, 3).unwrap().len(), 343 + 3);
        assert_eq!(generators_for(Family::Ekstar(2), -3..=3, 3).unwrap().len(), 343 + 4);
        assert_eq!(generators_for(Family::V1, -3..=3, 2).unwrap().len(), 0);
    }

    #[test]
    fn v2_shapes() {
        let gens = generators_for(Family::V2, 1..=2, 2).unwrap();
        let shown: Vec<String> = gens.iter().map(ToString::to_string).collect();
        assert_eq!(
            shown,
            [
                "x1:1*x2:1 + x2:1*x1:1",
                "x1:1*x2:2 - x2:2*x1:1",
                "x1:2*x2:1 - x2:1*x1:2",
                "x1:2*x2:2 - x2:2*x1:2",
            ]
        );
    }
}
