//! Free products: reduction of triples to minimal form, the lexicographic
//! circular order, and orders built from an action on finitely many cosets.

mod coset;
mod lex;
mod reduce;

pub use coset::{coset_intertwine, CosetOrder};
pub use lex::LexOrder;
pub use reduce::{
    applicable_moves, apply_move, reduce_triple, reduce_triple_with, Move, Rule, Step,
    TripleReductionTrace,
};
