//! Exact maximization of `sum |F_i|` (and `|A| + c|B|`) over non-empty
//! cross-intersecting tuples.
//!
//! The prefix engine searches L-initial tuples only, which loses nothing by
//! Hilton's compression. The full-space engine enumerates every tuple at tiny
//! scale and serves as an independent oracle for that reduction.

mod extremal;
mod frontier;
mod full;
mod prefix;

use serde::Serialize;

pub use extremal::{enumerate_extremal, ExtremalCase};
pub use frontier::{
    frontier_table, last_member_shortcut_counterexample, FrontierTable, FRONTIER_MAX_N,
};
pub use full::{
    full_space_max, full_space_supported, CLASS_MAX_N, CLASS_MAX_TUPLES, FULL_MAX_N,
    FULL_MAX_N_MULTI, FULL_MAX_UNIVERSE,
};
pub use prefix::{
    max_sum_l_initial, max_sum_l_initial_with_floors, max_sum_thm16, max_weighted_pair,
    PREFIX_MAX_N,
};

use crate::bounds::BoundResult;
use crate::canon::CanonicalKey;
use crate::combinat::{tuple_is_cross_intersecting, Family};
use crate::count::BigCount;
use crate::error::Result;
use crate::profile::Profile;

/// Witness tuples kept per certificate.
pub const WITNESS_CAP: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Engine {
    /// L-initial tuples only.
    Prefix,
    /// Every tuple of families.
    Full,
}

/// The quantity being maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Objective {
    /// `sum |F_i|`.
    Sum,
    /// `|A| + c|B|` with `C(n-tau,l-tau) <= |B| <= C(n-1,l-1)`.
    Weighted { c: BigCount, tau: usize },
}

/// Result of an exact search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub profile: Profile,
    pub engine: Engine,
    pub objective: Objective,
    pub optimum: BigCount,
    /// Distinct size vectors of optimal tuples, ascending.
    pub optimal_size_vectors: Vec<Vec<u64>>,
    /// Number of optimal tuples found (for the prefix engine, one per vector).
    pub optimal_tuple_count: u64,
    /// At most [`WITNESS_CAP`] optimal tuples.
    pub witnesses: Vec<Vec<Family>>,
    /// Canonical keys of all optimal tuples, ascending; only meaningful when
    /// `classes_complete`.
    pub extremal_classes: Vec<CanonicalKey>,
    pub classes_complete: bool,
    /// Closed-form bound for the same problem, when its hypothesis holds.
    pub bound: Option<BoundResult>,
    /// `bound.value == optimum`.
    pub bound_agreement: Option<bool>,
    /// Whether the optima match the equality characterization; `None` when
    /// not checked.
    pub characterization: Option<bool>,
}

impl Certificate {
    fn weights(&self) -> Vec<BigCount> {
        match self.objective {
            Objective::Sum => vec![BigCount::ONE; self.profile.r()],
            Objective::Weighted { c, .. } => vec![BigCount::ONE, c],
        }
    }

    fn attach_bound(&mut self, bound: Option<BoundResult>) {
        self.bound_agreement = bound.as_ref().map(|b| b.value == self.optimum);
        self.bound = bound;
    }

    /// Checks the witness invariants: every family non-empty, the tuple
    /// pairwise cross-intersecting, sizes listed in `optimal_size_vectors`
    /// and objective value equal to `optimum`.
    pub fn witnesses_valid(&self) -> Result<bool> {
        let w = self.weights();
        for t in &self.witnesses {
            if t.len() != self.profile.r() || t.iter().any(Family::is_empty) {
                return Ok(false);
            }
            if !tuple_is_cross_intersecting(t)? {
                return Ok(false);
            }
            let sizes: Vec<u64> = t.iter().map(|f| f.len() as u64).collect();
            if self.optimal_size_vectors.binary_search(&sizes).is_err() {
                return Ok(false);
            }
            let value = BigCount::try_sum(
                sizes
                    .iter()
                    .zip(&w)
                    .map(|(&m, &c)| c.checked_mul(BigCount::from(m))),
            )?;
            if value != self.optimum {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
