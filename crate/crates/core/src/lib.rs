//! Exact-arithmetic toolkit for convolution recurrences, Riordan arrays,
//! Hankel transforms, Somos-4 sequences and elliptic-curve point sequences.

pub mod rational;
pub mod series;
pub mod matrix;
pub mod riordan;
pub mod hankel;
pub mod report;
pub mod somos;
pub mod elliptic;
pub mod orthopoly;
pub mod recurrences;
pub mod conjectures;
pub mod oeis;
pub mod repro;
