//! Exact verification toolkit for generic Hecke algebras of complex
//! reflection groups: Laurent-polynomial coefficients, braid-word rewriting,
//! vector enumeration of regular representations, explicit witness modules
//! for 0-Hecke quotients, and Demazure operators for `G4`.

pub mod coeff;
pub mod demazure;
pub mod enumerate;
pub mod freealg;
pub mod presentations;
pub mod rewrite;
pub mod witness;
