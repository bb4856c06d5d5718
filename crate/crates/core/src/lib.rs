//! Exact checks of the localization constraints on fixed-point data of
//! symplectic circle actions, and bounded exhaustive search over such data.
//!
//! - [`kernel`]: rationals, Laurent polynomials in `t`, elementary symmetric
//!   polynomials.
//! - [`model`]: weight multisets, fixed points and validated data sets.
//! - [`localization`]: Chern-class restrictions and localized integrals.
//! - [`constraints`]: the necessary conditions and the combined report.
//! - [`multiset_lemma`]: the `{a+b, −a, −b}` multiset classification.
//! - [`search`]: enumeration, its brute-force oracle, known examples and
//!   theorem probes.

pub mod constraints;
pub mod kernel;
pub mod localization;
pub mod model;
pub mod multiset_lemma;
pub mod report;
pub mod search;

pub use constraints::{run_all, run_selected};
pub use kernel::{LaurentPoly, Rational};
pub use localization::{abbv_integral, ChernExpr, ChernMonomial};
pub use model::{FixedPoint, FixedPointData, WeightMultiset};
pub use report::{ConstraintId, ConstraintReport, Verdict};
