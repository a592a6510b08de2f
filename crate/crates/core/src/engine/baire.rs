use alloc::vec::Vec;

use super::{same_alphabet, EngineError};
use crate::safety::{NwdCertificate, SafetyAutomaton};
use crate::words::{hit_set, Alphabet, ChallengeSchedule, FiniteWord, HitSet, Symbol, UpWord};

/// A closed set together with a word whose cylinder lies inside it.
///
/// Any set containing a cylinder is non-meager, which is all the witness
/// construction needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstraintSet {
    automaton: SafetyAutomaton,
    witness: Vec<Symbol>,
}

impl ConstraintSet {
    /// Checks that the run on `witness` stays live and ends in a full state.
    pub fn new(automaton: SafetyAutomaton, witness: Vec<Symbol>) -> Result<Self, EngineError> {
        automaton.alphabet().check(&witness)?;
        let automaton = automaton.prune();
        let valid = automaton
            .run_live(&witness)
            .is_some_and(|q| automaton.full_states().contains(&q));
        if !valid {
            return Err(EngineError::InvalidWitness(witness));
        }
        Ok(ConstraintSet { automaton, witness })
    }

    /// Uses the shortest-lex interior witness of the automaton.
    pub fn from_interior(automaton: SafetyAutomaton) -> Result<Self, EngineError> {
        match automaton.is_nowhere_dense() {
            NwdCertificate::HasInterior { witness } => Self::new(automaton, witness),
            NwdCertificate::NowhereDense => Err(EngineError::NoInterior),
        }
    }

    pub fn full(alphabet: Alphabet) -> Result<Self, EngineError> {
        Self::new(SafetyAutomaton::full(alphabet)?, Vec::new())
    }

    pub fn automaton(&self) -> &SafetyAutomaton {
        &self.automaton
    }

    pub fn witness(&self) -> &[Symbol] {
        &self.witness
    }

    pub fn alphabet(&self) -> Alphabet {
        self.automaton.alphabet()
    }
}

fn pad_and_append(word: &mut Vec<Symbol>, at: usize, challenge: &[Symbol], pad: Symbol) {
    debug_assert!(word.len() <= at);
    word.resize(at, pad);
    word.extend_from_slice(challenge);
}

/// Extends `w` so that every continuation hits `f` at some `i > k`.
///
/// Picks the least `i ∈ J` with `i > k` and `i >= |w|`, pads with `pad` up to
/// position `i` and appends `f(i)`. Returns the extension and `i`.
pub fn dense_extension(
    w: &FiniteWord,
    k: usize,
    f: &ChallengeSchedule,
    pad: Symbol,
) -> Result<(FiniteWord, usize), EngineError> {
    same_alphabet(f.alphabet(), w.alphabet())?;
    if !f.alphabet().contains(pad) {
        return Err(EngineError::PadOutOfAlphabet(pad));
    }
    let i = f
        .next_index((k + 1).max(w.len()))
        .ok_or(EngineError::NoChallengeBeyond(k))?;
    let mut out = w.symbols().to_vec();
    pad_and_append(&mut out, i, f.get(i).unwrap_or_default(), pad);
    Ok((FiniteWord::new(w.alphabet(), out)?, i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaireWitness {
    pub word: UpWord,
    pub hits: HitSet,
    /// Indices handled explicitly, in increasing order.
    pub consumed: Vec<usize>,
    /// For periodic schedules: the last consumed index recurs every `stride` positions.
    pub stride: Option<usize>,
}

/// Builds a member of `C` that hits `f` at every consumed index.
///
/// Starting from the interior witness, dense extensions are applied in
/// increasing index order. A finite schedule ends with `pad^ω`. A periodic
/// schedule switches, at its first usable tail index `t`, to a repeating block
/// of length `stride` (a multiple of the tail period) that starts with `f(t)`;
/// the block then recurs at `t + m·stride` for all `m`.
pub fn baire_witness(
    f: &ChallengeSchedule,
    c: &ConstraintSet,
    pad: Symbol,
) -> Result<BaireWitness, EngineError> {
    same_alphabet(c.alphabet(), f.alphabet())?;
    if !f.alphabet().contains(pad) {
        return Err(EngineError::PadOutOfAlphabet(pad));
    }
    let mut word = c.witness().to_vec();
    let mut consumed: Vec<usize> = Vec::new();
    let mut periodic = None;
    let mut lower = 0;
    while let Some(i) = f.next_index(lower.max(word.len())) {
        if let Some(t) = f.tail().filter(|t| i >= t.start) {
            let longest = f.max_word_len();
            let stride = if longest <= t.period {
                t.period
            } else {
                t.period * (longest + 1).div_ceil(t.period)
            };
            let mut block = f.get(i).unwrap_or_default().to_vec();
            block.resize(stride, pad);
            word.resize(i, pad);
            consumed.push(i);
            periodic = Some((block, stride));
            break;
        }
        pad_and_append(&mut word, i, f.get(i).unwrap_or_default(), pad);
        consumed.push(i);
        lower = i + 1;
    }
    let Some(&last) = consumed.last() else {
        return Err(EngineError::ScheduleTooSparse {
            needed_from: c.witness().len(),
        });
    };
    let (period, stride) = match periodic {
        Some((block, stride)) => (block, Some(stride)),
        None => (alloc::vec![pad], None),
    };
    let word = UpWord::new(f.alphabet(), word, period)?;
    if !c.automaton().contains(&word) {
        return Err(EngineError::ConstraintViolation);
    }
    let horizon = last + 3 * stride.unwrap_or(0);
    let hits = hit_set(&word, f, horizon);
    Ok(BaireWitness {
        word,
        hits,
        consumed,
        stride,
    })
}
