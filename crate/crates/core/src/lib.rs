//! Two-machine scheduling over explicit scenario sets.
//!
//! A scenario is a subset of the jobs that must all run in one realized
//! situation; the job-to-machine assignment is fixed before the scenario is
//! revealed. The library evaluates and optimizes two objectives over a given
//! scenario list: the maximum makespan across scenarios and the sum of
//! makespans across scenarios.
//!
//! Modules:
//! - [`instance`]: the data model, objective evaluation, and the instance
//!   file format;
//! - [`oracle`]: exact ground-truth solvers and exact random-assignment
//!   expectations;
//! - [`pairs`]: the `O(|S| log |S|)` exact max-makespan solver for
//!   two-job scenarios;
//! - [`reductions`]: transformations to weighted not-all-equal SAT, weighted
//!   max-cut, and vector scheduling, plus instance gadgets built from graph
//!   and set-splitting inputs;
//! - [`solvers`]: randomized and derandomized balancing, exact and
//!   local-search back ends for the reductions;
//! - [`generate`]: seeded instance generators for benchmarking.

pub mod error;
pub mod generate;
pub mod instance;
pub mod oracle;
pub mod pairs;
pub mod reductions;
pub mod solvers;

pub use error::{Error, Result};
pub use instance::{parse_instance, serialize_instance, Assignment, Instance, LoadPair, Machine, Objective};
pub use oracle::Optimum;

/// Exact rational arithmetic used by reductions and expectation analysis.
/// Numerators stay far below `i128` range at the enumeration caps.
pub type Rational = num_rational::Ratio<i128>;

/// Formats a rational as `num/den` (always with the denominator, reduced,
/// denominator positive) so serialized weights round-trip exactly.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the `num/den` form produced by [`format_rational`].
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (num, den) = s.split_once('/')?;
    let num: i128 = num.parse().ok()?;
    let den: i128 = den.parse().ok()?;
    if den == 0 {
        return None;
    }
    Some(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for r in [
            Rational::new(-4, 7),
            Rational::new(0, 1),
            Rational::new(6, 4),
            Rational::from_integer(12),
        ] {
            assert_eq!(parse_rational(&format_rational(&r)), Some(r));
        }
        assert_eq!(format_rational(&Rational::new(6, 4)), "3/2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("3").is_none());
    }
}
