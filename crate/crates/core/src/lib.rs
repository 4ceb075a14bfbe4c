pub mod builders;
pub mod cli;
pub mod error;
pub mod instance;
pub mod io;
pub mod metrics;
pub mod mobius;
pub mod random;
pub mod rational;
pub mod sequences;
pub mod transversal;
