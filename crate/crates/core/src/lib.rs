//! Exact symbolic engine for real-analytic CR-generic submanifolds
//! `M^{2n+c} ⊂ ℂ^{n+c}` of dimension at most 5, given in graphed form
//! `v_j = phi_j(z, zb, u)`.
//!
//! The pipeline: parse and validate the graphing functions ([`manifold`]),
//! build the intrinsic `T^{1,0}M` frame by Cramer's rule ([`geometry`]),
//! take iterated Lie brackets and their exact generic ranks, compute Levi
//! and Freeman data ([`levi`]), and decide the class ([`classify`]).
//! Every quantity is an exact rational function over ℚ(i); there is no
//! floating point anywhere.

pub mod arith;
pub mod classify;
pub mod error;
pub mod expr;
pub mod gcd;
pub mod geometry;
pub mod levi;
pub mod linalg;
pub mod manifold;
pub mod parser;
pub mod poly;
pub mod report;

pub use arith::{ArithOp, GaussianRational};
pub use classify::{classify, lie_hull_rank, ClassificationReport, HullResult, Verdict};
pub use error::{CrError, Result};
pub use expr::RationalExpr;
pub use manifold::{load_manifold, validate_manifold, ManifoldFile, ManifoldSpec, PointAssignment, ValidatedSpec};
pub use parser::parse_expr;
pub use poly::{Dims, MultiPoly, VarId, VarKind};
