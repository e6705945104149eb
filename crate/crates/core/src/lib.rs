//! Exact symbolic calculus for graded supercommutative algebras and the
//! bracket structures of graded contact geometry.

pub mod algebra;
pub mod brackets;
pub mod charts;
pub mod cohomology;
pub mod contact;
pub mod courant;
pub mod error;
pub mod forms;
pub mod jacobi;
pub mod linalg;
pub mod sampling;
pub mod scalar;

pub use algebra::{parse_poly, Grade, Monomial, ParityGrade, SuperPoly, WeightGrade};
pub use brackets::{Bracket, CanonicalBracket, PoissonTensor};
pub use charts::{Chart, Generator};
pub use contact::{check_contact, Legendre, OneForm, TwoForm};
pub use error::{Error, Result};
pub use jacobi::{check_jacobi, jacobi_bracket, poissonize, JacobiTriple};
pub use scalar::Scalar;

pub type Rational = num_rational::BigRational;
pub type Poly = SuperPoly<Rational>;
pub type Poly64 = SuperPoly<f64>;
