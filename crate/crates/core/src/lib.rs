//! Generation, conjugacy and counting for direct sums of matrix algebras over
//! finite fields, the integers and the rationals.

pub mod census;
pub mod conjugacy;
pub mod construct;
pub mod domain;
pub mod eigen;
pub mod error;
pub mod field;
pub mod generation;
pub mod intlat;
pub mod linalg;
pub mod matrix;
pub mod primes;
pub mod tuplefile;
pub mod zverify;

pub use domain::{build_ext_field, CoeffDomain, Elem};
pub use error::{Error, Result};
pub use field::FiniteField;
pub use generation::{DirectSumShape, GenReport, MatTuple, SumElem};
pub use intlat::IntLattice;
pub use matrix::Mat;
