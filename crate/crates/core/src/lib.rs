//! Quantum fidelity kernels for binary classification.
//!
//! The crate covers the whole path from a numeric CSV to classification
//! metrics:
//!
//! - [`sim`]: dense state-vector simulator, 3-CNOT synthesis of the
//!   `N(α, β, γ) = exp[i(αXX + βYY + γZZ)]` gate, shot sampling and a Pauli
//!   trajectory noise model.
//! - [`maps`]: Z, ZZ and the convolution/pooling map (CPMap) that reuses
//!   partitioned qubits to encode roughly `2n` features on `n` qubits, plus
//!   resource reports.
//! - [`kernel`]: exact, shot-sampled and noisy fidelity Gram matrices.
//! - [`ml`]: standardization, PCA, SMO-trained SVM on precomputed kernels,
//!   MCC and friends, paired t-tests.
//! - [`data`]: CSV loading, stratified splits, synthetic Gaussian tasks and
//!   the experiment config schema.
//! - [`report`]: the pipelines behind the `quernel` binary.

pub mod data;
pub mod error;
pub mod kernel;
pub mod maps;
pub mod ml;
pub mod report;
pub mod sim;

pub use error::{Error, Result};
