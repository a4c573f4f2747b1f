//! Composition factors and weight filtrations of local cohomology modules of
//! Schubert varieties in Grassmannians.
//!
//! The combinatorial route enumerates admissible augmented Dyck patterns in a
//! Young diagram; the verification route assembles the weight-graded pieces of
//! the Cousin complex as sparse sign matrices and recomputes cohomology by
//! exact integer rank. The two agree on every instance, and `cousin::verify`
//! style checks are exposed both as library calls and through the `cousin`
//! CLI.

pub mod cousin;
pub mod det;
pub mod dyck;
mod exec;
pub mod linalg;
pub mod verma;
pub mod young;
