//! The algebras `Aff^m(S_ℓ)`, their group model and right modules.

pub mod element;
pub mod fixtures;
pub mod module;
pub mod presentation;

pub use element::{multiply, word_to_element, AffElement};
pub use fixtures::{evaluation_module, one_dim, tensor_with_blocks, unipotent, FixtureSpec};
pub use module::{glue_modules, restrict_to_loop, verify_module, AffModule, RelationCheck};
pub use presentation::{generators, AffPresentation, Generator, Letter, Relation, RelationFamily, Word};
