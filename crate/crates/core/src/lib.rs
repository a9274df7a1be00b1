pub mod axb;
pub mod cert;
pub mod cli;
pub mod envelope;
pub mod folding;
pub mod invariants;
pub mod rootsys;
pub mod sample;
pub mod scalar;
pub mod toda;
pub mod todadiff;
