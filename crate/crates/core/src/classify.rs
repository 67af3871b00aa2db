//! Classification of 2-induced gradings: support, Bezout type, variety,
//! PI-equivalence, isomorphism and centrality.

use std::collections::BTreeSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::{Capacity, DegreeGroup, GradingSpec};
use crate::identities::{pi_project, verify_identity, GradedPolynomial, Verdict, VerifyConfig};
use crate::numbers::{min_bezout, support_lattice, variety_of, BezoutData, GradingType, Parity, SupportReport, Variety};

/// Bounds for the finite centrality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CentralityConfig {
    /// Even degrees `h` with `|h| <= window` are checked.
    pub window: i64,
    /// Pairwise disjoint even-length monomials required per degree.
    pub count: usize,
    pub generators: u32,
    pub max_len: usize,
}

impl Default for CentralityConfig {
    fn default() -> Self {
        CentralityConfig {
            window: 6,
            count: 3,
            generators: 30,
            max_len: 10,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum NotCentralReason {
    NoFullSupport,
    /// Fewer than `count` disjoint even-length monomials of this degree.
    #[serde(rename_all = "camelCase")]
    MissingFamily { degree: i64, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "camelCase")]
pub enum CentralStatus {
    Central(CentralityConfig),
    #[serde(rename_all = "camelCase")]
    NotCentral { reason: NotCentralReason, config: CentralityConfig },
}

impl CentralStatus {
    pub fn is_central(&self) -> bool {
        matches!(self, CentralStatus::Central(_))
    }
}

/// Checks, for every even `h` with `|h| <= window`, that degree `h` has
/// `count` pairwise disjoint even-length monomials within the bounds.
pub fn is_central_grading(spec: &GradingSpec, cfg: &CentralityConfig) -> Result<CentralStatus> {
    if spec.group() != DegreeGroup::Z {
        return Err(Error::GroupMismatch {
            poly: DegreeGroup::Z.to_string(),
            spec: spec.group().to_string(),
        });
    }
    if cfg.window < 0 || cfg.count == 0 || cfg.generators == 0 {
        return Err(Error::InvalidArgument("centrality bounds must be positive".into()));
    }
    let not_central = |reason| CentralStatus::NotCentral { reason, config: *cfg };
    if !spec.is_full_support() {
        return Ok(not_central(NotCentralReason::NoFullSupport));
    }
    let half = cfg.window / 2;
    for h in (-half..=half).map(|k| 2 * k) {
        let family = spec.disjoint_family(h, Some(Parity::Even), cfg.count, cfg.generators, cfg.max_len);
        if family.len() < cfg.count {
            return Ok(not_central(NotCentralReason::MissingFamily {
                degree: h,
                found: family.len(),
            }));
        }
    }
    Ok(CentralStatus::Central(*cfg))
}

/// Everything known about `E_{(m,n)}^{(u,v)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassificationReport {
    pub m: i64,
    pub n: i64,
    pub u: Capacity,
    pub v: Capacity,
    pub support: SupportReport,
    pub full_support: bool,
    pub bezout: Option<BezoutData>,
    #[serde(rename = "type")]
    pub grading_type: Option<GradingType>,
    pub variety: Option<Variety>,
    /// `2ind:-1,1` for `V2`, `2ind:-1,2` for `V1`.
    pub pi_representative: Option<String>,
    pub central: CentralStatus,
}

pub fn classification_report(m: i64, n: i64, u: Capacity, v: Capacity, cfg: &CentralityConfig) -> Result<ClassificationReport> {
    let support = support_lattice(m, n, u, v)?;
    let full_support = support.is_full();
    let (lo, hi) = (m.min(n), m.max(n));
    let (bezout, variety) = if full_support {
        (Some(min_bezout(lo, hi)?), Some(variety_of(lo, hi)?))
    } else {
        (None, None)
    };
    let pi_representative = variety.map(|v| match v {
        Variety::V1 => "2ind:-1,2".to_string(),
        Variety::V2 => "2ind:-1,1".to_string(),
    });
    let central = is_central_grading(&GradingSpec::two_induced(m, n, u, v)?, cfg)?;
    Ok(ClassificationReport {
        m,
        n,
        u,
        v,
        support,
        full_support,
        grading_type: bezout.map(|b| b.grading_type),
        bezout,
        variety,
        pi_representative,
        central,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum IsoDecision {
    Isomorphic,
    NotIsomorphic,
    /// Outside the gradings the test covers.
    Undecided,
}

/// Z-isomorphism for gradings whose classes are all infinite, decided by
/// equality of the degree sets. Anything else is undecided.
pub fn are_z_isomorphic(left: &GradingSpec, right: &GradingSpec) -> IsoDecision {
    match (left.infinite_degrees(), right.infinite_degrees()) {
        (Some(a), Some(b)) => match are_g_isomorphic_r_induced(&a, &b) {
            Ok(true) => IsoDecision::Isomorphic,
            Ok(false) => IsoDecision::NotIsomorphic,
            Err(_) => IsoDecision::Undecided,
        },
        _ => IsoDecision::Undecided,
    }
}

/// r-induced gradings with all capacities infinite are isomorphic iff they
/// use the same set of degrees. Each list must be free of repeats.
pub fn are_g_isomorphic_r_induced(left: &[i64], right: &[i64]) -> Result<bool> {
    let set = |degrees: &[i64]| -> Result<BTreeSet<i64>> {
        let set: BTreeSet<i64> = degrees.iter().copied().collect();
        if set.len() != degrees.len() {
            return Err(Error::InvalidArgument(format!("repeated degree in {degrees:?}")));
        }
        if set.is_empty() {
            return Err(Error::InvalidArgument("empty degree list".into()));
        }
        Ok(set)
    };
    Ok(set(left)? == set(right)?)
}

/// Full-support 2-induced gradings are PI-equivalent iff they generate the
/// same variety.
pub fn are_pi_equivalent(left: &ClassificationReport, right: &ClassificationReport) -> Result<bool> {
    match (left.variety, right.variety) {
        (Some(a), Some(b)) if left.full_support && right.full_support => Ok(a == b),
        _ => Err(Error::NotFullSupport),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MainTheoremConfig {
    pub verify: VerifyConfig,
    pub centrality: CentralityConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MainTheoremCheck {
    pub z_verdict: Verdict,
    pub z2_verdict: Verdict,
    pub agrees: bool,
}

/// Compares the verdict for `f` on a central grading with the verdict for
/// its mod-2 projection on the induced Z2-grading.
pub fn check_main_theorem(f: &GradedPolynomial, spec: &GradingSpec, cfg: &MainTheoremConfig) -> Result<MainTheoremCheck> {
    if let CentralStatus::NotCentral { reason, .. } = is_central_grading(spec, &cfg.centrality)? {
        return Err(Error::NotCentral(format!("{}: {}", spec.name(), describe(&reason))));
    }
    let z_verdict = verify_identity(f, spec, &cfg.verify)?;
    let z2_verdict = verify_identity(&pi_project(f)?, &spec.induced_z2()?, &cfg.verify)?;
    Ok(MainTheoremCheck {
        agrees: z_verdict.holds() == z2_verdict.holds(),
        z_verdict,
        z2_verdict,
    })
}

fn describe(reason: &NotCentralReason) -> String {
    match reason {
        NotCentralReason::NoFullSupport => "support is not all of Z".into(),
        NotCentralReason::MissingFamily { degree, found } => {
            format!("only {found} disjoint even-length monomials of degree {degree}")
        }
    }
}

/// One cell of a scan over `(m, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanRow {
    pub m: i64,
    pub n: i64,
    pub gcd: u64,
    pub full_support: bool,
    #[serde(rename = "type")]
    pub grading_type: Option<GradingType>,
    pub variety: Option<Variety>,
}

/// Support, type and variety of `E_{(m,n)}^{(inf,inf)}` over a grid with
/// `m < 0 < n`, row-major in `m`.
pub fn scan(ms: std::ops::RangeInclusive<i64>, ns: std::ops::RangeInclusive<i64>) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for m in ms {
        for n in ns.clone() {
            if !(m < 0 && 0 < n) {
                return Err(Error::SignPrecondition { m, n });
            }
            let gcd = m.unsigned_abs().gcd(&n.unsigned_abs());
            let full = gcd == 1;
            rows.push(ScanRow {
                m,
                n,
                gcd,
                full_support: full,
                grading_type: if full { Some(min_bezout(m, n)?.grading_type) } else { None },
                variety: if full { Some(variety_of(m, n)?) } else { None },
            });
        }
    }
    Ok(rows)
}
