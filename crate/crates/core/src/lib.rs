pub mod catalog;
pub mod completion;
pub mod dsl;
pub mod error;
pub mod par;
pub mod poly;
pub mod report;
pub mod representatives;
pub mod ring;
pub mod split;
pub mod suites;

pub use error::{AlgebraError, Result};
pub use par::Exec;
pub use ring::{Elem, ElemSet, Ideal, RingMorphism, RingTable, Subring};
