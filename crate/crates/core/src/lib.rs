mod bits;
pub mod closure;
pub mod comparability;
pub mod graph;
pub mod reductions;
pub mod rng;
pub mod zoo;
pub mod harness;
pub mod io;
