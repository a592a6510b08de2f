use alloc::vec::Vec;

use super::{same_alphabet, EngineError};
use crate::safety::{NwdCertificate, SafetyAutomaton};
use crate::words::{hit_set, Alphabet, ChallengeSchedule, HitSet, PeriodicTail, Symbol, UpWord};

/// Increasing closed nowhere dense sets `Y_0 ⊆ Y_1 ⊆ ...`, where
/// `Y_i = layers[min(i, len - 1)]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MeagerPresentation {
    layers: Vec<SafetyAutomaton>,
}

impl MeagerPresentation {
    pub fn layers(&self) -> &[SafetyAutomaton] {
        &self.layers
    }

    /// `Y_i`.
    pub fn layer(&self, i: usize) -> &SafetyAutomaton {
        &self.layers[i.min(self.layers.len() - 1)]
    }

    /// The union of all layers.
    pub fn top(&self) -> &SafetyAutomaton {
        self.layers.last().expect("presentations are non-empty")
    }

    pub fn alphabet(&self) -> Alphabet {
        self.top().alphabet()
    }
}

/// Replaces layer `j` by the union of layers `0..=j` and checks that every
/// cumulative layer is nowhere dense.
pub fn normalize_presentation(
    layers: Vec<SafetyAutomaton>,
) -> Result<MeagerPresentation, EngineError> {
    let mut iter = layers.into_iter();
    let first = iter.next().ok_or(EngineError::EmptyPresentation)?;
    let mut cumulative = alloc::vec![first.prune()];
    for layer in iter {
        let next = cumulative.last().unwrap().union(&layer)?;
        cumulative.push(next);
    }
    for (layer, automaton) in cumulative.iter().enumerate() {
        if let NwdCertificate::HasInterior { witness } = automaton.is_nowhere_dense() {
            return Err(EngineError::NotNowhereDense { layer, witness });
        }
    }
    Ok(MeagerPresentation { layers: cumulative })
}

/// Builds `f(i) = avoiding_word(Π_i(Y_i))` for `0 <= i <= horizon`.
///
/// Any word whose shift at `i` extends `f(i)` then lies outside `Y_i`. Past
/// the last layer `Π_{i+1}(Y_i) = Π₁(Π_i(Y_i))`; once that sequence of
/// automata repeats exactly, `f` repeats with it and the schedule is closed
/// with a periodic tail. The lookahead may go one step beyond `horizon`.
pub fn build_defeating_challenge(
    p: &MeagerPresentation,
    horizon: usize,
) -> Result<ChallengeSchedule, EngineError> {
    let top = p.layers().len() - 1;
    let mut entries: Vec<(usize, Vec<Symbol>)> = Vec::new();
    // Π_j(Y_top) for j = top, top+1, ... as far as computed
    let mut orbit: Vec<SafetyAutomaton> = Vec::new();
    let mut tail = None;
    for i in 0..=horizon + 1 {
        let shifted = if i <= top {
            p.layer(i).shift_image_n(i)
        } else {
            orbit.last().unwrap().shift_image()
        };
        if i >= top {
            if let Some(k) = orbit.iter().position(|s| *s == shifted) {
                tail = Some(PeriodicTail {
                    start: top + k,
                    period: orbit.len() - k,
                });
                break;
            }
        }
        if i > horizon {
            break;
        }
        entries.push((i, shifted.avoiding_word()?.into_symbols()));
        if i >= top {
            orbit.push(shifted);
        }
    }
    Ok(ChallengeSchedule::new(p.alphabet(), entries, tail)?)
}

/// Independent check of a defeating schedule: for each `i <= horizon` in its
/// domain, the cylinder of `f(i)` is disjoint from `Π_i(Y_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceRecord {
    pub index: usize,
    pub layer: usize,
    pub word: Vec<Symbol>,
    pub disjoint: bool,
}

pub fn defeat_certificate(
    p: &MeagerPresentation,
    f: &ChallengeSchedule,
    horizon: usize,
) -> Result<Vec<AvoidanceRecord>, EngineError> {
    same_alphabet(p.alphabet(), f.alphabet())?;
    let top = p.layers().len() - 1;
    f.indices_upto(horizon)
        .map(|i| {
            let word = f.get(i).unwrap_or_default().to_vec();
            let cylinder = SafetyAutomaton::cylinder(&word, p.alphabet())?;
            let shifted = p.layer(i).shift_image_n(i);
            Ok(AvoidanceRecord {
                index: i,
                layer: i.min(top),
                disjoint: cylinder.intersection(&shifted)?.is_empty(),
                word,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefeatRecord {
    pub index: usize,
    pub challenge: Vec<Symbol>,
    /// `w ∉ Y_index`; must hold for every hit.
    pub outside_layer: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefeatReport {
    pub hits: HitSet,
    pub records: Vec<DefeatRecord>,
    /// Whether `w` lies in the union of the layers.
    pub in_union: bool,
    pub pass: bool,
}

/// Checks that every hit of `w` against `f` happens outside the matching layer,
/// and that members of the union hit only finitely often.
pub fn verify_defeat(
    p: &MeagerPresentation,
    f: &ChallengeSchedule,
    w: &UpWord,
    horizon: usize,
) -> Result<DefeatReport, EngineError> {
    same_alphabet(p.alphabet(), f.alphabet())?;
    same_alphabet(p.alphabet(), w.alphabet())?;
    let hits = hit_set(w, f, horizon);
    let records: Vec<DefeatRecord> = hits
        .indices
        .iter()
        .map(|&i| DefeatRecord {
            index: i,
            challenge: f.get(i).unwrap_or_default().to_vec(),
            outside_layer: !p.layer(i).contains(w),
        })
        .collect();
    let in_union = p.top().contains(w);
    let pass = records.iter().all(|r| r.outside_layer) && !(in_union && hits.is_infinite());
    Ok(DefeatReport {
        hits,
        records,
        in_union,
        pass,
    })
}
