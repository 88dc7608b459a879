pub mod eicat;
pub mod exactla;
pub mod instances;
pub mod json;
pub mod nakayama;
pub mod random;
pub mod repmod;
pub mod resolve;
pub mod suite;

pub use eicat::{FiniteEICategory, Mor, Obj};
pub use exactla::Rational;
pub use repmod::{CatModule, ChainComplex, ModuleHom, Side};
