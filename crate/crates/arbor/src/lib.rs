//! Random recursive trees and vertex arrival-order estimation.
//!
//! The crate generates uniform-attachment and preferential-attachment
//! recursive trees, scrambles their labels, and tries to recover each
//! vertex's arrival time from the shape alone. Ordering procedures include
//! Jordan centrality (the centroid-based default), the oracle-assisted
//! descendant ordering, degree ordering, spectral seriation on the tree
//! Laplacian, reverse DMC leaf peeling, and a random baseline. Quality is
//! measured by the weighted displacement risk `R_alpha`, with exact
//! small-tree oracles and minimax bound curves for calibration.
//!
//! Everything randomized takes an explicit seeded stream, so simulations
//! reproduce bit for bit, serial or parallel.

pub mod centrality;
pub mod estimators;
pub mod experiment;
pub mod oracle;
pub mod risk;
pub mod rng;
pub mod spectral;
mod svg;
pub mod tree;
pub mod treegen;

pub use centrality::{CentroidReport, Direction, ScoreVector};
pub use estimators::{Estimator, Ordering};
pub use experiment::{ExperimentConfig, SimulationOutput};
pub use risk::{RateFit, RiskSample, RiskSummary};
pub use rng::RngState;
pub use tree::{GroundTruth, LabeledTree, Model, RecursiveTree, TreeError};
