//! The polynomial deformations A_Λ(n) of C(2n+1,2) and their
//! specializations A_λ(n): normal-form arithmetic, the isomorphisms with
//! C(2n+1,2) and C(2n) ⊗ A_Λ, the first-order cocycle, representations and
//! structure probes.

pub mod cocycle;
pub mod iso;
pub mod ore;
pub mod probe;
pub mod verma;

pub use ore::{ore_product, specialize, OreAlgebra, OreElement, OreMonomial};
