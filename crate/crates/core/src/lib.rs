//! Palindromic automorphisms of right-angled Artin groups.
//!
//! The crate covers the word problem and normal forms of the Artin group
//! `A_G` of a finite simplicial graph `G`, the automorphism generators and
//! the palindromic predicates, the abelianisation maps to `GL(n, Z)` and
//! `GL(n, Z/2)` with the level-2 presentation machinery, and factorization
//! of palindromic automorphisms into the standard finite generating sets.

pub mod aut;
pub mod error;
pub mod factor;
pub mod graph;
pub mod matrix;
pub mod sample;
pub mod verify;
pub mod word;

pub use aut::{Automorphism, GeneratorSymbol, Predicates};
pub use error::{Error, Result};
pub use factor::{FactorizationResult, TorelliBudget};
pub use graph::{ClassKind, DominationData, Neighborhood, SimplicialGraph, VertexSet};
pub use matrix::{IntegerMatrix, MatrixSymbol, Mod2Matrix};
pub use word::{BasicForm, Centralizer, CliquePalindromicForm, GroupWord, Letter};
