pub mod cli;
pub mod code;
pub mod corrector;
pub mod error;
pub mod experiment;
pub mod field;
pub mod geometry;
pub mod graph;
pub mod linalg;
pub mod planner;
pub mod recon;
pub mod rng;
pub mod score;
pub mod tanner;
pub mod tree;
