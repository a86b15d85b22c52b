//! Prime-power coefficients of type C multiple Dirichlet series built from
//! symplectic Gelfand-Tsetlin patterns and Gauss sums.

pub mod characters;
pub mod coefficient;
pub mod error;
pub mod gauss;
pub mod laurent;
pub mod pattern;
pub mod root_system;
pub mod stable;
pub mod tableau;

pub use coefficient::{h_table, pattern_G, HTable};
pub use error::{Error, Result};
pub use gauss::{gauss_eval, ArithContext, GaussValue};
pub use pattern::{EntryClass, GTPattern, PatternData, Position};
pub use root_system::{LambdaTwist, Root, RootLength, RootSystemC, WeylElement};
pub use laurent::LaurentPoly;
