//! Exact decision procedure for common priors ("ur-priors") of credence
//! functions defined on overlapping finite outcome sets.
//!
//! Given agents, each with a probability mass function on its own awareness
//! set, the crate decides whether a single probability measure conditions
//! down to every agent's credence function. When one exists it is
//! constructed; when none exists an obstruction is returned: a pair of
//! agents that disagree on their overlap, an overlap only one side considers
//! possible, or a cycle of agents along which overlap-mass ratios do not
//! multiply to 1.
//!
//! The topology behind the procedure lives in [`complex`] and
//! [`cohomology`]: agents whose joint overlap has positive mass for each of
//! them span a simplex of the *overlap complex*, and pairwise compatibility
//! is enough to guarantee an ur-prior exactly when that complex has vanishing
//! first cohomology. [`witness`] turns any complex with a one-dimensional
//! hole into a pairwise compatible system without an ur-prior, and
//! [`oracle`] is an independent brute-force check of the whole pipeline.
//!
//! All arithmetic is exact; see [`numerics`].
//!
//! ```
//! use urprior::{compat::decide_urprior, fixtures};
//!
//! let system = fixtures::metal_triangle();
//! let result = decide_urprior(&system).unwrap();
//! assert!(result.exists());
//! let gold = system.space().id("gold").unwrap();
//! assert_eq!(result.measure.unwrap().get(gold).to_string(), "1/27");
//! ```

pub mod cli;
pub mod cohomology;
pub mod compat;
pub mod complex;
pub mod credence;
pub mod fixtures;
pub mod numerics;
pub mod oracle;
pub mod witness;

pub use cohomology::{cohomology_dim, noncoboundary_cocycle, Cochain};
pub use compat::{
    decide_urprior, pairwise_compatibility, verify_urprior, Certificate, Measure, UrPriorResult, Verdict,
};
pub use complex::{build_overlap_complex, SimplicialComplex};
pub use credence::{AgentSystem, RawSystem};
pub use numerics::{Matrix, Rational};
pub use oracle::feasibility_oracle;
pub use witness::generate_counterexample;
