//! Support lattices and minimal nonnegative Bezout coefficients for 2-induced
//! gradings `E_{(m,n)}^{(u,v)}`.

use std::fmt;

use num_integer::Integer;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grading::Capacity;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(value: u64) -> Parity {
        if value.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn matches(self, value: u64) -> bool {
        Parity::of(value) == self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotLatticeReason {
    NonnegOnly,
    NonposOnly,
    BoundedBelow,
    BoundedAbove,
}

impl fmt::Display for NotLatticeReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NotLatticeReason::NonnegOnly => "nonneg-only",
            NotLatticeReason::NonposOnly => "nonpos-only",
            NotLatticeReason::BoundedBelow => "bounded-below",
            NotLatticeReason::BoundedAbove => "bounded-above",
        })
    }
}

/// Shape of the support of a 2-induced grading.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Lattice {
    FullZ,
    /// `dZ` with `d > 1`.
    Multiples(u64),
    NotLattice(NotLatticeReason),
}

impl Lattice {
    fn multiples(d: u64) -> Lattice {
        if d == 1 {
            Lattice::FullZ
        } else {
            Lattice::Multiples(d)
        }
    }
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lattice::FullZ => f.write_str("Z"),
            Lattice::Multiples(d) => write!(f, "{d}Z"),
            Lattice::NotLattice(reason) => reason.fmt(f),
        }
    }
}

impl Serialize for Lattice {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SupportReport {
    /// `gcd(|m|, |n|)`.
    pub d: u64,
    pub lattice: Lattice,
}

impl SupportReport {
    pub fn is_full(&self) -> bool {
        self.lattice == Lattice::FullZ
    }
}

/// Describes `Sup(E_{(m,n)}^{(u,v)})`. The pair is taken as a set of two
/// classes, so `(3, -2)` is read as `(-2, 3)` with the capacities swapped.
pub fn support_lattice(m: i64, n: i64, u: Capacity, v: Capacity) -> Result<SupportReport> {
    if m == n {
        return Err(Error::EqualDegrees(m));
    }
    let ((m, u), (n, v)) = if m < n { ((m, u), (n, v)) } else { ((n, v), (m, u)) };
    let d = m.unsigned_abs().gcd(&n.unsigned_abs());
    let lattice = if m >= 0 {
        Lattice::NotLattice(NotLatticeReason::NonnegOnly)
    } else if n <= 0 {
        Lattice::NotLattice(NotLatticeReason::NonposOnly)
    } else if !u.is_infinite() {
        // Everything is at least m*u.
        Lattice::NotLattice(NotLatticeReason::BoundedBelow)
    } else if !v.is_infinite() {
        Lattice::NotLattice(NotLatticeReason::BoundedAbove)
    } else {
        Lattice::multiples(d)
    };
    Ok(SupportReport { d, lattice })
}

/// Exhaustive search for `r*m + s*n = k` with `0 <= r, s <= bound`; the
/// solution with the smallest `r` is returned.
pub fn representable(k: i64, m: i64, n: i64, bound: u64) -> Option<(u64, u64)> {
    (0..=bound).find_map(|r| {
        let rest = k as i128 - r as i128 * m as i128;
        if n == 0 {
            return (rest == 0).then_some((r, 0));
        }
        if rest % n as i128 != 0 {
            return None;
        }
        let s = rest / n as i128;
        (0..=bound as i128).contains(&s).then_some((r, s as u64))
    })
}

/// Parity class of the minimal sums `alpha + beta` and `alpha' + beta'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GradingType {
    /// Both sums even.
    One,
    /// `alpha + beta` even, `alpha' + beta'` odd.
    Two,
    /// `alpha + beta` odd, `alpha' + beta'` even.
    Three,
    /// Both sums odd.
    Four,
}

impl GradingType {
    pub fn from_sums(sum_plus: u64, sum_minus: u64) -> GradingType {
        match (sum_plus.is_multiple_of(2), sum_minus.is_multiple_of(2)) {
            (true, true) => GradingType::One,
            (true, false) => GradingType::Two,
            (false, true) => GradingType::Three,
            (false, false) => GradingType::Four,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            GradingType::One => 1,
            GradingType::Two => 2,
            GradingType::Three => 3,
            GradingType::Four => 4,
        }
    }
}

impl fmt::Display for GradingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

impl Serialize for GradingType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.number())
    }
}

/// Minimal nonnegative solutions of `alpha*m + beta*n = 1` and
/// `alpha'*m + beta'*n = -1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BezoutData {
    pub alpha: u64,
    pub beta: u64,
    pub alpha_prime: u64,
    pub beta_prime: u64,
    pub sum_plus: u64,
    pub sum_minus: u64,
    #[serde(rename = "type")]
    pub grading_type: GradingType,
}

fn check_coprime_signs(m: i64, n: i64) -> Result<()> {
    if !(m < 0 && 0 < n) {
        return Err(Error::SignPrecondition { m, n });
    }
    let gcd = m.unsigned_abs().gcd(&n.unsigned_abs());
    if gcd != 1 {
        return Err(Error::NotCoprime { m, n, gcd });
    }
    Ok(())
}

/// Requires `m < 0 < n` and `gcd(m, n) = 1`.
///
/// All nonnegative solutions of `a*m + b*n = c` lie on one ray
/// `(a0 + n*t, b0 + |m|*t)`, along which `a + b` strictly increases, so the
/// minimal-sum solution is the first point of the ray with both coordinates
/// nonnegative.
pub fn min_bezout(m: i64, n: i64) -> Result<BezoutData> {
    check_coprime_signs(m, n)?;
    let (m, n) = (m as i128, n as i128);
    let egcd = m.extended_gcd(&n);
    // egcd.gcd is +-1; normalize so that x*m + y*n = 1.
    let (x, y) = (egcd.x * egcd.gcd, egcd.y * egcd.gcd);
    debug_assert_eq!(x * m + y * n, 1);
    let step = (n, -m);
    let (alpha, beta) = least_nonnegative((x, y), step);
    let (alpha_prime, beta_prime) = least_nonnegative((-x, -y), step);
    let sum_plus = alpha + beta;
    let sum_minus = alpha_prime + beta_prime;
    Ok(BezoutData {
        alpha,
        beta,
        alpha_prime,
        beta_prime,
        sum_plus,
        sum_minus,
        grading_type: GradingType::from_sums(sum_plus, sum_minus),
    })
}

fn least_nonnegative(base: (i128, i128), step: (i128, i128)) -> (u64, u64) {
    let t = Integer::div_ceil(&-base.0, &step.0).max(Integer::div_ceil(&-base.1, &step.1));
    let a = base.0 + step.0 * t;
    let b = base.1 + step.1 * t;
    (a as u64, b as u64)
}

pub fn grading_type(m: i64, n: i64) -> Result<GradingType> {
    Ok(min_bezout(m, n)?.grading_type)
}

/// The two varieties of Z-graded algebras generated by full-support
/// 2-induced gradings: `V1` is cut out by all triple commutators, `V2` by
/// `[x1, x2]` (some degree even) and `x1 x2 + x2 x1` (both degrees odd).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Variety {
    V1,
    V2,
}

impl fmt::Display for Variety {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variety::V1 => "V1",
            Variety::V2 => "V2",
        })
    }
}

/// `V2` iff `m` and `n` are both odd. Requires `m < 0 < n`, `gcd = 1`.
pub fn variety_of(m: i64, n: i64) -> Result<Variety> {
    check_coprime_signs(m, n)?;
    Ok(if m % 2 != 0 && n % 2 != 0 {
        Variety::V2
    } else {
        Variety::V1
    })
}

/// Smallest `l + k` with `l*m + k*n = r`, `l + k` of the given parity and
/// `l, k <= bound`; ties go to the smaller `l`. A monomial with `l`
/// generators of degree `m` and `k` of degree `n` then has degree `r`.
pub fn length_profile(r: i64, m: i64, n: i64, parity: Parity, bound: u64) -> Option<(u64, u64)> {
    (0..=2 * bound).filter(|&total| parity.matches(total)).find_map(|total| {
        (total.saturating_sub(bound)..=total.min(bound)).find_map(|l| {
            let k = total - l;
            (l as i128 * m as i128 + k as i128 * n as i128 == r as i128).then_some((l, k))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const INF: Capacity = Capacity::Infinite;

    /// Brute force over a box, for comparison with the extended-Euclid route.
    fn brute_min(m: i64, n: i64, target: i64) -> (u64, u64) {
        let mut best: Option<(u64, u64)> = None;
        for a in 0..=60u64 {
            for b in 0..=60u64 {
                if a as i64 * m + b as i64 * n == target && best.is_none_or(|(x, y)| a + b < x + y) {
                    best = Some((a, b));
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn support_examples() {
        assert_eq!(support_lattice(-2, 3, INF, INF).unwrap().lattice, Lattice::FullZ);
        assert_eq!(support_lattice(-100, 147, INF, INF).unwrap().lattice, Lattice::FullZ);
        let r = support_lattice(-4, 6, INF, INF).unwrap();
        assert_eq!((r.d, r.lattice), (2, Lattice::Multiples(2)));
        assert_eq!(
            support_lattice(2, 3, INF, INF).unwrap().lattice,
            Lattice::NotLattice(NotLatticeReason::NonnegOnly)
        );
        assert_eq!(
            support_lattice(-3, -1, INF, INF).unwrap().lattice,
            Lattice::NotLattice(NotLatticeReason::NonposOnly)
        );
        assert_eq!(
            support_lattice(-2, 3, Capacity::Finite(5), INF).unwrap().lattice,
            Lattice::NotLattice(NotLatticeReason::BoundedBelow)
        );
        assert_eq!(
            support_lattice(-2, 3, INF, Capacity::Finite(5)).unwrap().lattice,
            Lattice::NotLattice(NotLatticeReason::BoundedAbove)
        );
        assert_eq!(support_lattice(3, -2, INF, INF).unwrap().lattice, Lattice::FullZ);
        assert_eq!(
            support_lattice(0, 4, INF, INF).unwrap(),
            SupportReport { d: 4, lattice: Lattice::NotLattice(NotLatticeReason::NonnegOnly) }
        );
        assert!(matches!(support_lattice(3, 3, INF, INF), Err(Error::EqualDegrees(3))));
    }

    #[test]
    fn representability() {
        assert_eq!(representable(1, -2, 3, 10), Some((1, 1)));
        assert_eq!(representable(0, -7, 5, 3), Some((0, 0)));
        assert_eq!(representable(1, -4, 6, 400), None);
        assert_eq!(representable(-1, 2, 3, 50), None);
        assert_eq!(representable(5, 0, 5, 3), Some((0, 1)));
    }

    #[test]
    fn support_agrees_with_enumeration() {
        for m in -12..=-1i64 {
            for n in 1..=12i64 {
                let report = support_lattice(m, n, INF, INF).unwrap();
                for k in -40..=40i64 {
                    let hit = representable(k, m, n, 400).is_some();
                    assert_eq!(hit, k % report.d as i64 == 0, "({m},{n}) k={k}");
                }
            }
        }
    }

    #[test]
    fn bezout_examples() {
        let b = min_bezout(-2, 3).unwrap();
        assert_eq!((b.alpha, b.beta, b.alpha_prime, b.beta_prime), (1, 1, 2, 1));
        assert_eq!(b.grading_type, GradingType::Two);
        let b = min_bezout(-1, 5).unwrap();
        assert_eq!((b.sum_plus, b.sum_minus), (5, 1));
        assert_eq!(b.grading_type, GradingType::Four);
        assert_eq!(grading_type(-2, 1).unwrap(), GradingType::Three);
        assert!(matches!(min_bezout(-4, 6), Err(Error::NotCoprime { gcd: 2, .. })));
        assert!(matches!(min_bezout(2, 3), Err(Error::SignPrecondition { .. })));
    }

    #[test]
    fn bezout_is_minimal() {
        for m in -15..=-1i64 {
            for n in 1..=15i64 {
                if m.unsigned_abs().gcd(&n.unsigned_abs()) != 1 {
                    continue;
                }
                let b = min_bezout(m, n).unwrap();
                assert_eq!(b.alpha as i64 * m + b.beta as i64 * n, 1);
                assert_eq!(b.alpha_prime as i64 * m + b.beta_prime as i64 * n, -1);
                assert_eq!((b.alpha, b.beta), brute_min(m, n, 1), "({m},{n})");
                assert_eq!((b.alpha_prime, b.beta_prime), brute_min(m, n, -1), "({m},{n})");
                // The two minimal solutions add up to the ray step.
                assert_eq!(b.sum_plus + b.sum_minus, (n - m) as u64);
                assert_ne!(b.grading_type, GradingType::One);
                if m % 2 != 0 && n % 2 != 0 {
                    assert_eq!(b.grading_type, GradingType::Four);
                }
            }
        }
    }

    #[test]
    fn remark_families() {
        for n in 1..=11i64 {
            let expected = if n % 2 == 1 { GradingType::Four } else { GradingType::Two };
            assert_eq!(grading_type(-1, n).unwrap(), expected, "(-1,{n})");
        }
        for m in -11..=-1i64 {
            let expected = if m % 2 != 0 { GradingType::Four } else { GradingType::Three };
            assert_eq!(grading_type(m, 1).unwrap(), expected, "({m},1)");
        }
    }

    #[test]
    fn varieties() {
        assert_eq!(variety_of(-1, 1).unwrap(), Variety::V2);
        assert_eq!(variety_of(-1, 2).unwrap(), Variety::V1);
        assert_eq!(variety_of(-3, 5).unwrap(), Variety::V2);
        assert!(variety_of(-3, 6).is_err());
    }

    #[test]
    fn length_profiles() {
        assert_eq!(length_profile(0, -2, 3, Parity::Odd, 20), Some((3, 2)));
        assert_eq!(length_profile(1, -2, 3, Parity::Even, 20), Some((1, 1)));
        assert_eq!(length_profile(0, -2, 3, Parity::Even, 20), Some((0, 0)));
        assert_eq!(length_profile(2, -2, 3, Parity::Odd, 20), Some((5, 4)));
        assert_eq!(length_profile(2, -2, 3, Parity::Odd, 4), None);
        // Both degrees odd: parity of the length is forced by the degree.
        assert_eq!(length_profile(2, -1, 1, Parity::Odd, 30), None);
    }
}
