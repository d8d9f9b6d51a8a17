//! Mixed trigonometric-polynomial expressions and their rewriting.

mod expr;
mod laurent;
mod parse;
mod phased;
pub mod trig;

pub use expr::{MtpExpr, TermKey};
pub use laurent::{default_base, to_laurent, to_laurent_with_base, LaurentPoly};
pub use parse::parse;
pub use phased::{PhasedTrigExpr, Trig};
pub use trig::{
    circle_reduce, multiple_angle, normalize_frequency, positive_content, reduce,
    tan_half_substitute, to_trivariate, TanHalf, TY,
};
