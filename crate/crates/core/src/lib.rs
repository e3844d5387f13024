//! Hamilton cycles with few colours in properly edge-coloured complete
//! graphs.
//!
//! Pick `d = ceil(log^3 n)` colour classes of a proper `(n-1)`-colouring of
//! `K_n` at random; their union is, with high probability, a pseudo-random
//! `d`-regular graph, and pseudo-random graphs of that quality are
//! Hamiltonian. A Hamilton cycle found there uses at most `d` colours.
//! Odd `n` is handled by adding a vertex joined in each vertex's missing
//! colour and dropping it again at the end, at the cost of one colour.
//!
//! The crate provides each step ([`colouring`], [`sampler`], [`spectral`],
//! [`hamilton`]) and a seeded experiment harness ([`experiment`]) that runs
//! them end to end and measures what happens at finite `n`.

pub mod colouring;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod hamilton;
pub mod rng;
pub mod sampler;
pub mod spectral;

pub use colouring::{
    circle_colouring, cyclic_colouring_odd, extend_odd_to_even, parse_colouring,
    serialize_colouring, validate_proper, xor_colouring, ProperColouring, ValidationReport,
};
pub use error::{Error, Result};
pub use experiment::{run_batch, run_trial, Family, TrialConfig, TrialRecord};
pub use graph::Graph;
pub use hamilton::{HamiltonCycle, RotationOutcome};
pub use sampler::{ColourSample, SampleEntry, SampledGraph};
pub use spectral::{LogBase, SpectralCertificate};
