pub mod admissibility;
pub mod catalog;
pub mod hodge;
pub mod period;
pub mod poly;
pub mod seed;
pub mod verifier;
pub mod totally_real;
pub mod dirichlet;
