//! Exact algebra of k-labeled quantum graphs: graph parameters, connection
//! matrices, and the synthesis of contractors and connectors.
//!
//! The core types are generic over a [`Scalar`]; the aliases below fix the
//! exact rational instantiation (suffix `Q`) and the `f64` one (suffix `F`).

pub mod acceptance;
pub mod connalg;
pub mod error;
pub mod graphs;
pub mod linalg;
pub mod oracles;
pub mod params;
pub mod quantum;
pub mod scalar;
pub mod synth;

pub use error::{Error, Result};
pub use graphs::LabeledGraph;
pub use scalar::{Rational, Scalar};

pub type MatrixQ = linalg::Matrix<Rational>;
pub type QuantumGraphQ = quantum::QuantumGraph<Rational>;
pub type WeightedGraphQ = params::WeightedGraph<Rational>;
pub type ParameterQ = params::Parameter<Rational>;
pub type StepFunctionQ = params::StepFunction<Rational>;
pub type ConnectionMatrixQ = connalg::ConnectionMatrix<Rational>;
pub type ContractorQ = synth::Contractor<Rational>;

pub type MatrixF = linalg::Matrix<f64>;
pub type QuantumGraphF = quantum::QuantumGraph<f64>;
pub type WeightedGraphF = params::WeightedGraph<f64>;
pub type ParameterF = params::Parameter<f64>;
