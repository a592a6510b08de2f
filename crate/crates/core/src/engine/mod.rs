//! Executable forms of the category arguments: defeating challenges built
//! from meager presentations, Baire witnesses built against constraint sets,
//! the evader construction, the padded-repetition set over the naturals, and
//! a challenger/responder harness that ties them together.

mod baire;
mod evader;
mod game;
mod meager;
mod remark2;

use alloc::vec::Vec;

use thiserror::Error;

use crate::safety::AutomatonError;
use crate::words::{Alphabet, Symbol, WordError};

pub use baire::{baire_witness, dense_extension, BaireWitness, ConstraintSet};
pub use evader::challenge_from_evader;
pub use game::{
    run_star_game, BaireResponder, Challenger, DefeatingChallenger, EvaderChallenger,
    FixedChallenger, FixedResponder, GameContext, HitOutcome, Responder, Transcript,
};
pub use meager::{
    build_defeating_challenge, defeat_certificate, normalize_presentation, verify_defeat,
    AvoidanceRecord, DefeatRecord, DefeatReport, MeagerPresentation,
};
pub use remark2::{
    remark2_contains, remark2_membership, remark2_responder, PsiFunction, Remark2Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Automaton(#[from] AutomatonError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("a presentation needs at least one layer")]
    EmptyPresentation,
    #[error("cumulative layer {layer} is not nowhere dense: cylinder {witness:?} lies inside it")]
    NotNowhereDense { layer: usize, witness: Vec<Symbol> },
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    #[error("pad symbol {0} is not in the alphabet")]
    PadOutOfAlphabet(Symbol),
    #[error("no scheduled index beyond {0} is usable")]
    NoChallengeBeyond(usize),
    #[error("schedule has no index at or beyond {needed_from}")]
    ScheduleTooSparse { needed_from: usize },
    #[error("interior witness {0:?} does not lead to a full state")]
    InvalidWitness(Vec<Symbol>),
    #[error("constraint set has empty interior")]
    NoInterior,
    #[error("constructed witness left the constraint set")]
    ConstraintViolation,
    #[error("this construction needs a schedule with finitely many entries")]
    InfiniteSchedule,
    #[error("challenges at {first} and {second} force different symbols at position {position}")]
    OverlappingChallenges {
        position: u64,
        first: usize,
        second: usize,
    },
    #[error("no block layout places the challenge symbol at position {position}")]
    UnreachablePosition { position: u64 },
    #[error("opener {opener} has no padding length")]
    UndefinedPsi { opener: Symbol },
    #[error("block for opener {opener} is too long to materialize")]
    BlockTooLong { opener: Symbol },
}

fn same_alphabet(expected: Alphabet, found: Alphabet) -> Result<(), EngineError> {
    if expected != found {
        return Err(EngineError::AlphabetMismatch { expected, found });
    }
    Ok(())
}
