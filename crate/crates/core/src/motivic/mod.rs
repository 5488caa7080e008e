//! Exact arithmetic in the localized Grothendieck ring generated by the Lefschetz class.

mod class;
mod cyclotomic;
mod laurent;

pub use class::{MotivicClass, PoincareFunction};
pub use cyclotomic::cyclotomic;
pub use laurent::LaurentPoly;
