pub mod abelian;
pub mod charclasses;
pub mod classify;
pub mod cli;
pub mod exact;
pub mod notation;
pub mod spectra;
pub mod tftlab;
