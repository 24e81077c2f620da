//! Exact certificate engine for wall-crossing arguments on polarized K3
//! surfaces.
//!
//! Everything here works with numerical invariants only: Mukai vectors in
//! `Z + NS(X) + Z`, the two-dimensional model of the `H`-slice of stability
//! space, and the inequalities that certify slope stability of restricted
//! Lazarsfeld-Mukai bundles and of the syzygy bundle `M_L`. All arithmetic
//! is exact; no floating point value ever decides a check.

pub mod brill_noether;
pub mod certificate;
pub mod error;
pub mod exact;
pub mod ml_stability;
pub mod mukai;
pub mod render;
pub mod restriction;
pub mod stabspace;

pub use certificate::{Certificate, CheckEntry, Relation, Verdict};
pub use error::{Error, Result};
pub use exact::{Int, Rat};
pub use mukai::{MukaiVector, NsClass, SurfaceData};
pub use stabspace::{Point2, Segment2, SegmentEnd, StabilityParam};
