//! Z-gradings on the Grassmann algebra: exact arithmetic in `E(N)`,
//! 2-induced and related gradings, their supports and Bezout types, graded
//! polynomial identities checked by substitution, and the resulting
//! classification up to PI-equivalence and graded isomorphism.

pub mod classify;
pub mod error;
pub mod exterior;
pub mod grading;
pub mod identities;
pub mod numbers;
mod text;

pub use classify::{
    are_g_isomorphic_r_induced, are_pi_equivalent, are_z_isomorphic, check_main_theorem, classification_report,
    is_central_grading, scan, CentralStatus, CentralityConfig, ClassificationReport, IsoDecision, MainTheoremCheck,
    MainTheoremConfig, NotCentralReason, ScanRow,
};
pub use error::{Error, ParseError, Result};
pub use exterior::{mul_monomials, GrassmannElement, Monomial, Scalar, MAX_GENERATORS};
pub use grading::{Capacity, DegreeClass, DegreeGroup, GradingSpec, Homogeneity, SplitRule, SupportKind};
pub use identities::{
    find_witness, generators_for, parse_poly, pi_project, substitute, verify_identity, Family, GradedPolynomial,
    GradedVariable, Mode, Verdict, VerifyConfig,
};
pub use numbers::{
    grading_type, length_profile, min_bezout, representable, support_lattice, variety_of, BezoutData, GradingType,
    Lattice, NotLatticeReason, Parity, SupportReport, Variety,
};
