//! Exact Grassmann algebra, N=2 superconformal maps on super-Riemann
//! spheres and the N=2 Neveu-Schwarz algebra.

pub mod campaign;
pub mod exec;
pub mod gaussian;
pub mod grassmann;
pub mod linalg;
pub mod matrix;
pub mod ns;
pub mod random;
pub mod scalar_poly;
pub mod superfield;
pub mod serial;
pub mod spheres;
pub mod superconformal;
pub mod text;
