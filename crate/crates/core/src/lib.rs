//! Exact computation of Chow polynomials of graded bounded posets, together
//! with the EL-labeling machinery and real-rootedness certificates used to
//! study them.

pub mod bitset;
pub mod chow;
pub mod error;
pub mod families;
pub mod flag;
pub mod incidence;
pub mod io;
pub mod labeling;
pub mod poly;
pub mod poset;
pub mod supersolvable;

pub use error::{Error, Result};
pub use poly::IntPoly;
pub use poset::{build_poset, GradedPoset, Interval, WhitneyProfile};
