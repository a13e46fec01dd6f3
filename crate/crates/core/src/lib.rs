pub mod cli;
pub mod linalg;
pub mod localalg;
pub mod poly;
pub mod polytope;
pub mod toric;
