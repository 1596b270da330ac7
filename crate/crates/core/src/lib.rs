//! Exact cyclic sieving checks for independent sets of cycle powers and the
//! whisker, gear, helm and book constructions built from them.
//!
//! The pieces, bottom up:
//!
//! - [`qpoly`]: integer Laurent polynomials in `q`, Gaussian binomials and
//!   exact evaluation at primitive roots of unity.
//! - [`graphs`]: simple graphs and the family constructors.
//! - [`actions`]: permutations, cyclic group actions and fixed-set counting.
//! - [`indep`]: enumeration of independent `k`-sets and the `ssum` statistic.
//! - [`csp`]: candidate polynomials and the verifier.
//! - [`family`]: a name-indexed registry tying the above together.
//!
//! ```
//! use indsieve_core::{csp, FamilySpec};
//!
//! let inst = FamilySpec::CyclePower { n: 12, r: 2 }.instance(3).unwrap();
//! let report = csp::verify(&inst);
//! assert!(report.pass);
//! assert_eq!(report.row(3).unwrap().fixed_count, 4);
//! ```

mod bigint_serde;
mod error;

pub mod actions;
pub mod csp;
pub mod family;
pub mod graphs;
pub mod indep;
pub mod qpoly;

pub use actions::{CyclicAction, Permutation};
pub use csp::{verify, CspInstance, CspReport, CspRow};
pub use error::{Error, Result};
pub use family::{FamilySpec, TableRow};
pub use graphs::{FamilyTag, Graph, InducedSubgraph, Quotient, VertexSet};
pub use indep::{IndepFamily, StatParams};
pub use qpoly::{IntLaurentPoly, RootOfUnity};
