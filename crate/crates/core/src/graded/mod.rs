//! Z2 x Z2-graded polynomial ring with exact Gaussian-rational coefficients.

pub mod coeff;
pub mod degree;
pub mod expr;
pub mod generator;
pub mod json;
pub mod latex;
pub mod monomial;
pub mod parse;

pub use coeff::Coeff;
pub use degree::{parity, Degree};
pub use expr::{DegreeInfo, Dimension, Expr};
pub use generator::{Field, FuncJet, FuncKind, Gen, Jet, Param, ParamKind, Space, TrigArg};
pub use monomial::{Exp, Monomial};
pub use parse::{parse_expr, parse_gen, ParseError};
