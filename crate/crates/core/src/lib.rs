pub mod adic;
pub mod arith;
pub mod completion;
pub mod filterlab;
pub mod gamma;
pub mod perfectoid;
pub mod ring;
pub mod spa;
pub mod suite;
pub mod valuation;
