pub mod gamma;
pub mod operator;
pub mod oracle;

pub use gamma::{GammaFunction, GammaSet, Rational};
pub use operator::{Algebra, AlgebraError, Operator};
