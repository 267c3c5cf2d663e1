pub mod arith;
pub mod cyclotomic;
pub mod error;
pub mod fp;
pub mod group;
pub mod linalg;
pub mod modules;
pub mod units;
pub mod chartable;
pub mod rationality;
pub mod catalog;
pub mod describe;
pub mod cache;
pub mod harness;

pub use catalog::FrobeniusInstance;
pub use chartable::{character_table, CharacterTable, TableConfig};
pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::{Element, GroupHandle};
pub use modules::FpModule;
pub use rationality::{classify, RationalityReport};
pub use units::UnitClassSet;
