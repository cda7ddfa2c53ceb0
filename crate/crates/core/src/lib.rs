//! Finite tournaments: acyclic and monomorphic decomposition, the six
//! obstruction families, profile census and the counting formulas they obey.

pub mod canon;
pub mod decomp;
pub mod embed;
pub mod error;
pub mod families;
pub mod formulas;
pub mod io;
pub mod profile;
pub mod tournament;
pub mod verify;

pub use canon::{canonical_form, canonical_labeling, is_isomorphic, CanonicalCode};
pub use decomp::{acyclic_components, separated, Decomposition, SeparationKind, SeparationWitness};
pub use embed::{automorphism_count, embeds, find_embedding};
pub use error::{Error, Result};
pub use families::{checked_family, family, schmerl_trotter, witness, FamilyKind, StKind};
pub use tournament::{lex_sum, skew_product, ChainSpec, Orientation, Tournament};
