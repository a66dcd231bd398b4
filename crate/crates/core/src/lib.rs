//! Macaulay inverse systems over exact fields: contraction, annihilators,
//! Hilbert functions, admissible families of divided power polynomials and the
//! reconstruction of Gorenstein ideals from them.

pub mod admissible;
pub mod contract;
pub mod duality;
pub mod error;
pub mod family_file;
pub mod gorenstein;
pub mod groebner;
pub mod ideal;
pub mod linalg;
pub mod monomial;
pub mod parse;
pub mod poly;
pub mod ring;
pub mod scalar;

pub use admissible::{AdmissibleFamily, CheckReport, ConditionTwoMode, MultiIndex, Violation};
pub use contract::{contract, contract_monomial, pairing};
pub use error::{Error, Result};
pub use family_file::{parse_family, write_family};
pub use gorenstein::GorensteinReport;
pub use groebner::{GroebnerBasis, HilbertData};
pub use ideal::Ideal;
pub use linalg::{DegreeWindow, SubspaceBasis};
pub use monomial::Exponents;
pub use parse::{format_list, format_poly, parse_list, parse_poly};
pub use poly::{shift_mul, DPPolynomial, Divided, Ordinary, Poly, Polynomial, Side};
pub use ring::{Mode, Ring, RingContext};
pub use scalar::{Field, Scalar};
