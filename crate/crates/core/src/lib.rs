pub mod lattice;
pub mod partition;
pub mod matroid;
pub mod cli;
pub mod format;
pub mod ideal;
pub mod realize;
pub mod suite;
