//! Exact-arithmetic cohomology of SL2(Z) acting on finite-level modules.
//!
//! Layers, bottom up: `ring`/`matrix`/`linalg` give canonical linear algebra
//! over Q and Z/p^e; `group`/`module`/`expr` build the coefficient modules
//! and the expression language naming them; `cohomology` computes the
//! cohomology groups, the compactly supported variants, the six-term
//! sequence and the duality pairing; `induction` and `abelian` cover the
//! parabolic induction identities and the additive-group shadow checks;
//! `oracle` holds the closed-form expected values the tests pin results to.

pub mod ring;
pub mod matrix;
pub mod linalg;
pub mod group;
pub mod module;
pub mod expr;
pub mod cohomology;
pub mod oracle;
pub mod induction;
pub mod abelian;
pub mod battery;
