pub mod auxiliary;
pub mod cli;
pub mod games;
pub mod graph;
pub mod instance_gen;
pub mod io;
pub mod rational;
pub mod solvers;
pub mod stabilizer;
pub mod walks;

pub use instance_gen::fixtures;
