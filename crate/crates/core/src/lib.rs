pub mod cli;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod finite_rank;
pub mod fractions;
pub mod matrix;
pub mod operator;
pub mod poly;
pub mod random;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod sequence;
pub mod series;
pub mod suites;
pub mod symbol;
