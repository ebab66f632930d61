//! Compositional derivation of DRS meaning representations from dependency
//! trees, with clause-based scoring.

mod canon;
pub mod clauses;
pub mod compose;
pub mod conllu;
pub mod drs;
pub mod evaluate;
pub mod lambda;
pub mod lexicon;
pub mod runner;
pub mod semtypes;
