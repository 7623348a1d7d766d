pub mod boolalg;
pub mod contract;
pub mod syntax;

pub use boolalg::{Algebra, AlgebraError, Backend, Element};
pub use contract::{Contract, ContractOp};
pub mod oracle;
pub mod report;
pub mod quantify;
pub mod abstraction;
pub mod structures;
pub mod actions;
pub mod laws;
pub mod dsl;
