pub mod affine;
pub mod bgg;
pub mod character;
pub mod cli;
pub mod demazure;
pub mod error;
pub mod int;
pub mod kernel;
pub mod macdonald;
pub mod qseries;
pub mod weyl;

pub use affine::{AffineType, Root};
pub use character::{CharElem, MonomialExpansion};
pub use kernel::KernelSet;
pub use macdonald::MacdonaldBasis;
pub use error::{Error, Result};
pub use int::Int;
pub use qseries::QSeries;
pub use weyl::{AffineWeight, FiniteWeight};
