//! Exact chain statistics on 01-fillings of moon polyominoes.
//!
//! The crate enumerates fillings with at most one 1 per row and prescribed
//! row/column sums, counts northeast and southeast chains, evaluates the
//! four mixed statistics attached to a row or column bipartition, encodes
//! fillings as gap-composition sequences, and implements the statistic-
//! transporting bijections that prove the mixed statistics equidistributed
//! with `(se, ne)`. Distributions are carried exactly as bivariate
//! polynomials with big-integer coefficients, and closed-form products of
//! (p,q)-Gaussian coefficients are available for cross-checking.
//!
//! The classical specializations are included: words on a multiset with
//! inversions and co-inversions, and perfect matchings with crossings and
//! nestings through the Ferrers-diagram encoding.

pub mod bijections;
pub mod encoding;
pub mod error;
pub mod filling;
pub mod fixtures;
pub mod io;
pub mod matchings;
pub mod poly;
pub mod shape;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use filling::{ColSubset, Filling, RowSubset, StatKind};
pub use poly::BivarPoly;
pub use shape::{MoonPolyomino, Rectangle, RowInterval};
