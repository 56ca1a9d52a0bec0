//! Exact and numerical invariants of polynomial map germs (R^n, 0) -> (R^p, 0).

pub mod doublepoint;
pub mod linalg;
pub mod linkknot;
pub mod localalgebra;
pub mod lojestimate;
pub mod parse;
pub mod polycore;
pub mod regularity;
pub mod report;
