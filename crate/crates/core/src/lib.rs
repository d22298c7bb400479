//! Welded string links: Milnor invariants, local moves and normal forms.
//!
//! The crate computes welded Milnor invariants of welded string links from
//! Gauss-code diagram data, realizes generator links and normal forms via
//! w-tree surgery, rewrites diagrams by 2n-moves, V^n-moves and crossing
//! virtualization, and decides the equivalence relations those invariants
//! classify.
//!
//! Diagrams are immutable values and every operation is a pure function,
//! so everything here is safe to share across threads.

pub mod classify;
pub mod freegroup;
pub mod gausscode;
pub mod magnus;
pub mod milnor;
pub mod moves;
pub mod rng;
pub mod wtree;

pub use gausscode::{CodeError, GaussCode, MoveError, MoveSite, Passage, ReidemeisterMove, Role};
pub use magnus::{magnus_expand, SeriesError, TruncSeries};
pub use milnor::{invariant_table, milnor, wirtinger, InvariantTable, WirtingerData};
pub use wtree::{RootedTree, WArrow};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values_are_shareable_across_threads() {
        fn check<T: Send + Sync>() {}
        check::<GaussCode>();
        check::<TruncSeries>();
        check::<InvariantTable>();
        check::<WirtingerData>();
        check::<freegroup::Word>();
        check::<RootedTree>();
    }
}
