pub mod character;
pub mod extension;
pub mod finite;
pub mod kirr;

pub use character::{dixon_table, induce_brute, inner_product, CharacterTable, ClassFunction};
pub use finite::{ConjugacyClasses, FiniteGroup, Subgroup};
pub use kirr::{k_irreducible_characters, KIrreducibles};
pub use extension::{ExtensionGroup, LGroup, LKind};
