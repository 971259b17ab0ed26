//! Nominal semantics for classical first-order logic.
//!
//! Atoms and permutations, syntax with capture-avoiding substitution, a
//! checkable sequent calculus, substitution algebras, nominal Boolean
//! algebras, and the lifting of finite Tarski models into nominal models.

pub mod algebra;
pub mod gen;
pub mod interp;
pub mod lattice;
pub mod lifted;
pub mod nominal;
pub mod ordinary;
pub mod sequent;
pub mod syntax;

pub use nominal::{fresh_atom, Atom, AtomSet, NominalSet, Perm};
pub use ordinary::{ModelError, OrdinaryModel, Valuation};
pub use sequent::{check_derivation, Derivation, Sequent};
pub use syntax::{Formula, Signature, SyntaxError, Term};
