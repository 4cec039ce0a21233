//! Exact arithmetic for Kepler sets of second-order linear recurrences over
//! the p-adic numbers.
//!
//! Given a recurrence a_{n+1} = r·a_n + s·a_{n−1} (s ≠ 0) over Q_p with p an
//! odd prime, the *Kepler set* is the topological closure of the consecutive
//! ratios {a_{n+1}/a_n} inside P^1(Q_p). This crate computes that closure in
//! closed form — as a finite union of balls, complements of balls, finite
//! sets, or all of Q_p — using only exact arithmetic: arbitrary-precision
//! rationals, integer valuations, and truncated p-adic digits whose precision
//! is tracked and escalated explicitly. There is no floating point anywhere.
//!
//! Module map:
//!
//! * [`padic`] — valuations, contexts, truncated p-adic numbers, Hensel
//!   square roots, p-adic log/exp, multiplicative orders.
//! * [`quad`] — quadratic extensions Q_p(√d): classification (split /
//!   unramified / ramified), exact elements x + y√d, norms, π-adic
//!   valuations, orders modulo π.
//! * [`region`] — points, ultrametric balls, canonical regions of P^1(Q_p),
//!   Möbius transformations and exact images of regions.
//! * [`monothetic`] — closures of cyclic subgroups {λ^n} in the unit groups
//!   U ⊂ Q_p^* and U^0(√d) (norm ±1 units).
//! * [`kepler`] — the recurrence front end: spectral data, case dispatch,
//!   Kepler-set computation, ratio sequences, and brute-force verification.
//! * [`lucas`] — Lucas sequences: ranks of appearance, Wall–Sun–Sun tests,
//!   full-field criteria, two-row unions, and the prime census.
//! * [`oracle`] — enumeration oracles used by the verification layer and the
//!   test suites (residue models of P^1(Q_p) at finite depth).

pub mod arith;
pub mod error;
pub mod kepler;
pub mod lucas;
pub mod monothetic;
pub mod oracle;
pub mod padic;
pub mod quad;
pub mod region;

pub use error::{Error, Result};
pub use padic::{PadicApprox, PadicContext, Rational, Val};
pub use quad::{ExtClass, ExtensionDescriptor, QuadElement};
pub use region::{Ball, MoebiusMap, Point, Region, Term};
