//! Baire category over `X^ω` for finite `X`, made executable.
//!
//! Closed sets are safety automata ([`safety`]), points are ultimately
//! periodic words ([`words`]). A set is meager iff it sits inside an
//! increasing union of closed nowhere dense sets; against such a union,
//! [`engine::build_defeating_challenge`] produces a challenge `f` that no
//! member hits infinitely often. Conversely, [`engine::baire_witness`] builds
//! a point of any set with interior that hits a given challenge at every
//! scheduled index. [`tailsum`] carries the binary tail-sum consequences with
//! exact rational arithmetic.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod engine;
pub mod safety;
pub mod tailsum;
pub mod words;

pub use engine::EngineError;
pub use safety::{AutomatonError, NwdCertificate, SafetyAutomaton};
pub use words::{
    hit_set, Alphabet, ChallengeSchedule, FiniteWord, HitSet, PeriodicHit, PeriodicTail, Symbol,
    UpWord, WordError,
};
