//! Degree transport between gradings: reduction mod 2, rescaling,
//! re-tagging and degree assignment.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::grading::DegreeGroup;

use super::{GradedPolynomial, GradedVariable};

fn require_z(f: &GradedPolynomial) -> Result<()> {
    if f.group() != DegreeGroup::Z {
        return Err(Error::GroupMismatch {
            poly: f.group().to_string(),
            spec: DegreeGroup::Z.to_string(),
        });
    }
    Ok(())
}

/// Reduces every degree mod 2.
///
/// Two variables sharing an id whose degrees have the same parity would
/// collapse into one; the later of them (in variable order) gets a fresh id
/// above every id in use, so the result stays multilinear.
pub fn pi_project(f: &GradedPolynomial) -> Result<GradedPolynomial> {
    require_z(f)?;
    let mut next_id = f.variables().iter().map(|v| v.id).max().unwrap_or(0);
    let mut taken: BTreeSet<GradedVariable> = BTreeSet::new();
    let mut image: BTreeMap<GradedVariable, GradedVariable> = BTreeMap::new();
    for &v in f.variables() {
        let mut target = GradedVariable::new(v.id, v.degree.rem_euclid(2));
        if taken.contains(&target) {
            next_id = next_id
                .checked_add(1)
                .ok_or_else(|| Error::InvalidArgument("ran out of variable ids".into()))?;
            target.id = next_id;
        }
        taken.insert(target);
        image.insert(v, target);
    }
    f.relabel(DegreeGroup::Z2, |v| image[&v])
}

/// Multiplies every degree by `d`.
pub fn phi_scale(f: &GradedPolynomial, d: i64) -> Result<GradedPolynomial> {
    require_z(f)?;
    if d == 0 {
        return Err(Error::InvalidArgument("scale factor must be nonzero".into()));
    }
    for v in f.variables() {
        let scaled = v.degree as i128 * d as i128;
        if scaled.abs() > i32::MAX as i128 {
            return Err(Error::DegreeOverflow(scaled));
        }
    }
    f.relabel(DegreeGroup::Z, |v| GradedVariable::new(v.id, v.degree * d))
}

/// Reads a polynomial graded by `dZ` as a `Z`-graded one with the same
/// numeric degrees. Fails if some degree is not a multiple of `d`.
pub fn psi_embed(f: &GradedPolynomial, d: i64) -> Result<GradedPolynomial> {
    require_z(f)?;
    if d == 0 {
        return Err(Error::InvalidArgument("d must be nonzero".into()));
    }
    if let Some(v) = f.variables().iter().find(|v| v.degree % d != 0) {
        return Err(Error::InvalidArgument(format!(
            "degree {} of {} is not a multiple of {d}",
            v.degree,
            v.label(DegreeGroup::Z)
        )));
    }
    Ok(f.clone())
}

/// Turns an ordinary multilinear polynomial in `x1..xl` (all of degree 0)
/// into a graded one: `x_i` gets degree `profile[i-1]`, and variables of
/// equal degree are renumbered `1, 2, ...` in order of `i`.
pub fn assign_degrees(f: &GradedPolynomial, profile: &[i64]) -> Result<GradedPolynomial> {
    require_z(f)?;
    let l = f.variables().len();
    let expected: Vec<GradedVariable> = (1..=l as u32).map(|id| GradedVariable::new(id, 0)).collect();
    if f.variables() != expected.as_slice() {
        return Err(Error::InvalidArgument(
            "expected an ordinary polynomial in x1:0, ..., xl:0".into(),
        ));
    }
    if profile.len() != l {
        return Err(Error::InvalidArgument(format!(
            "profile has {} degrees for {l} variables",
            profile.len()
        )));
    }
    if let Some(&d) = profile.iter().find(|d| d.abs() > i32::MAX as i64) {
        return Err(Error::DegreeOverflow(d as i128));
    }
    let mut seen: BTreeMap<i64, u32> = BTreeMap::new();
    let image: Vec<GradedVariable> = profile
        .iter()
        .map(|&d| {
            let count = seen.entry(d).or_insert(0);
            *count += 1;
            GradedVariable::new(*count, d)
        })
        .collect();
    f.relabel(DegreeGroup::Z, |v| image[v.id as usize - 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::dsl::parse_poly;

    fn p(s: &str) -> GradedPolynomial {
        parse_poly(s).unwrap()
    }

    #[test]
    fn projection() {
        assert_eq!(pi_project(&p("[x1:-4, x2:5]")).unwrap(), p("[x1:0bar, x2:1bar]"));
        assert_eq!(pi_project(&p("x1:8*x2:8")).unwrap(), p("x1:0bar*x2:0bar"));
        assert_eq!(pi_project(&p("[x1:0, x2:0]")).unwrap(), p("[x1:0bar, x2:0bar]"));
        // x1:2 and x1:4 would merge; the second is renamed.
        assert_eq!(pi_project(&p("[x1:2, x1:4]")).unwrap(), p("[x1:0bar, x2:0bar]"));
        assert!(matches!(pi_project(&p("x1:1bar")), Err(Error::GroupMismatch { .. })));
    }

    #[test]
    fn scaling() {
        let f = p("[x1:-1, x2:1]");
        assert_eq!(phi_scale(&f, 1).unwrap(), f);
        assert_eq!(phi_scale(&f, 2).unwrap(), p("[x1:-2, x2:2]"));
        assert!(phi_scale(&f, 0).is_err());
        assert!(matches!(phi_scale(&p("x1:2000000000"), 2), Err(Error::DegreeOverflow(_))));
    }

    #[test]
    fn embedding() {
        let f = p("[x1:-4, x2:6]");
        assert_eq!(psi_embed(&f, 2).unwrap(), f);
        assert!(psi_embed(&p("x1:3"), 2).is_err());
    }

    #[test]
    fn degree_assignment() {
        let f = p("[x1:0, x2:0, x3:0]");
        let g = assign_degrees(&f, &[2, -1, 2]).unwrap();
        assert_eq!(g, p("[x1:2, x1:-1, x2:2]"));
        assert!(assign_degrees(&f, &[1, 2]).is_err());
        assert!(assign_degrees(&p("[x1:1, x2:0]"), &[1, 2]).is_err());
    }
}
