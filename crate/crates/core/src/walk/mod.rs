//! Half-line coined walks in the minimal (Verblunsky) representation.
//!
//! Site `j` carries the pair `(psi(j;R), psi(j;L))`, ordered as the coin
//! basis `|0>` (arriving from the right) and `|1>` (arriving from the left,
//! or the self-loop at the origin).

mod arc;
mod coin;
mod evolution;
mod truncated;
mod verblunsky;

pub use arc::{Arc, ArcState, Direction};
pub use coin::{coin_at, coin_eigen, Coin, CoinEigenData};
pub use evolution::{
    apply_coin, apply_flip_flop, evolve, step, step_moving, Evolution, DEFAULT_SITE_CAP,
};
pub(crate) use evolution::amplitude;
pub use truncated::{truncated_matrix, TruncatedOperator};
pub use verblunsky::{Flavor, VerblunskySeq, ASSUMPTION_TOL};
