//! Exact lattice and sphere-packing constructions.
//!
//! Gram matrices are held over `Q(√2)` so that both integral lattices and
//! irrational families such as the mean-centered cuboidal lattice stay exact.
//! Float types can be used with the generic matrix and reduction routines.

pub mod catalog;
pub mod codes;
pub mod constructions;
pub mod coordination;
pub mod enumerate;
pub mod error;
pub mod intmat;
pub mod io;
pub mod isometry;
pub mod lattice;
pub mod matrix;
pub mod packing;
pub mod qseries;
pub mod reduce;
pub mod scalar;
pub mod shadow;
pub mod theta;

pub use enumerate::EnumOptions;
pub use error::{Error, Result};
pub use lattice::Lattice;
pub use matrix::Matrix;
pub use qseries::QSeries;
pub use scalar::{FieldElement, QSqrt2, Rational};

/// Exact scalar used for Gram matrices and bases.
pub type Scalar = QSqrt2;
pub type ScalarMatrix = Matrix<QSqrt2>;
pub type RationalMatrix = Matrix<Rational>;
pub type FloatMatrix = Matrix<f64>;
