//! Exact combinatorics for non-empty cross-intersecting families of
//! k-subsets of `[n]`: lex-order machinery, star and cover constructions,
//! closed-form sum bounds, exact searches that certify them, and the
//! bipartite graph behind the slack argument for mixed uniformities.
//!
//! Sets are bitmasks with element `i` at bit `i - 1`; counts are checked
//! 128-bit integers ([`BigCount`]).

pub mod auxgraph;
pub mod bounds;
pub mod canon;
pub mod combinat;
pub mod constructions;
pub mod count;
pub mod error;
pub mod profile;
pub mod search;

pub use bounds::{BoundResult, Branch, Theorem};
pub use combinat::{Family, KSet};
pub use count::BigCount;
pub use error::{Error, Result};
pub use profile::Profile;
pub use search::Certificate;
