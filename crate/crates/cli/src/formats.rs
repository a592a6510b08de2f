//! JSON file formats. Every loader also accepts the object printed by the
//! command that produces it, so outputs can be piped into later commands.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use baire_core::engine::{ConstraintSet, MeagerPresentation};
use baire_core::tailsum::{format_rational, parse_rational, OpenSet1D, Rational};
use baire_core::{
    Alphabet, ChallengeSchedule, HitSet, PeriodicHit, PeriodicTail, SafetyAutomaton, Symbol, UpWord,
};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Named {
    Naturals,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum AlphabetDto {
    Size(u32),
    Named(Named),
}

impl Default for AlphabetDto {
    fn default() -> Self {
        AlphabetDto::Size(2)
    }
}

impl AlphabetDto {
    pub fn to_core(self) -> Result<Alphabet> {
        Ok(match self {
            AlphabetDto::Size(k) => Alphabet::finite(k)?,
            AlphabetDto::Named(Named::Naturals) => Alphabet::Naturals,
        })
    }

    pub fn from_core(a: Alphabet) -> Self {
        match a {
            Alphabet::Finite(k) => AlphabetDto::Size(k),
            Alphabet::Naturals => AlphabetDto::Named(Named::Naturals),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordDto {
    #[serde(default)]
    pub alphabet: AlphabetDto,
    pub prefix: Vec<Symbol>,
    pub period: Vec<Symbol>,
}

impl WordDto {
    pub fn to_core(&self) -> Result<UpWord> {
        Ok(UpWord::new(
            self.alphabet.to_core()?,
            self.prefix.clone(),
            self.period.clone(),
        )?)
    }

    pub fn from_core(w: &UpWord) -> Self {
        WordDto {
            alphabet: AlphabetDto::from_core(w.alphabet()),
            prefix: w.prefix().to_vec(),
            period: w.period().to_vec(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TailDto {
    pub start: usize,
    pub period: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EntryDto {
    pub index: usize,
    pub word: Vec<Symbol>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScheduleDto {
    #[serde(default)]
    pub alphabet: AlphabetDto,
    pub entries: Vec<EntryDto>,
    #[serde(default)]
    pub tail: Option<TailDto>,
}

impl ScheduleDto {
    pub fn to_core(&self) -> Result<ChallengeSchedule> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push((e.index, e.word.clone()));
        }
        let tail = self.tail.as_ref().map(|t| PeriodicTail {
            start: t.start,
            period: t.period,
        });
        Ok(ChallengeSchedule::new(
            self.alphabet.to_core()?,
            entries,
            tail,
        )?)
    }

    pub fn from_core(f: &ChallengeSchedule) -> Self {
        ScheduleDto {
            alphabet: AlphabetDto::from_core(f.alphabet()),
            entries: f
                .entries()
                .map(|(index, word)| EntryDto {
                    index,
                    word: word.to_vec(),
                })
                .collect(),
            tail: f.tail().map(|t| TailDto {
                start: t.start,
                period: t.period,
            }),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AutomatonDto {
    #[serde(default)]
    pub alphabet: AlphabetDto,
    /// Redundant with `delta.len()`; checked when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub states: Option<usize>,
    pub initial: usize,
    pub live: Vec<usize>,
    pub delta: Vec<Vec<usize>>,
}

impl AutomatonDto {
    pub fn to_core(&self) -> Result<SafetyAutomaton> {
        if let Some(n) = self.states {
            if n != self.delta.len() {
                bail!("\"states\" is {n} but delta has {} rows", self.delta.len());
            }
        }
        Ok(SafetyAutomaton::new(
            self.alphabet.to_core()?,
            self.initial,
            self.delta.clone(),
            &self.live,
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PresentationDto {
    pub layers: Vec<AutomatonDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConstraintDto {
    pub automaton: AutomatonDto,
    #[serde(default)]
    pub witness: Option<Vec<Symbol>>,
}

impl ConstraintDto {
    pub fn to_core(&self) -> Result<ConstraintSet> {
        let automaton = self.automaton.to_core()?;
        Ok(match &self.witness {
            Some(w) => ConstraintSet::new(automaton, w.clone())?,
            None => ConstraintSet::from_interior(automaton)?,
        })
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OpenSetDto {
    pub epsilon: String,
    pub intervals: Vec<[String; 2]>,
}

fn rational(s: &str) -> Result<Rational> {
    parse_rational(s).ok_or_else(|| anyhow!("not a rational: {s:?}"))
}

impl OpenSetDto {
    pub fn to_core(&self) -> Result<OpenSet1D> {
        let intervals = self
            .intervals
            .iter()
            .map(|[lo, hi]| Ok((rational(lo)?, rational(hi)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OpenSet1D::new(rational(&self.epsilon)?, intervals)?)
    }
}

pub fn interval_dto(iv: &(Rational, Rational)) -> [String; 2] {
    [format_rational(&iv.0), format_rational(&iv.1)]
}

#[derive(Debug, Clone, Serialize)]
pub struct PeriodicHitDto {
    pub start: usize,
    pub stride: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct HitSetDto {
    pub horizon: usize,
    pub indices: Vec<usize>,
    pub periodic: Option<PeriodicHitDto>,
}

impl HitSetDto {
    pub fn from_core(h: &HitSet) -> Self {
        HitSetDto {
            horizon: h.horizon,
            indices: h.indices.clone(),
            periodic: h
                .certificate
                .map(|PeriodicHit { start, stride }| PeriodicHitDto { start, stride }),
        }
    }
}

/// Either the bare object or one wrapped under `key` by a producing command.
#[derive(Deserialize)]
#[serde(untagged)]
enum Wrapped<T> {
    Word { word: T },
    Schedule { schedule: T },
    Bare(T),
}

impl<T> Wrapped<T> {
    fn into_inner(self) -> T {
        match self {
            Wrapped::Word { word } | Wrapped::Schedule { schedule: word } | Wrapped::Bare(word) => {
                word
            }
        }
    }
}

fn read<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {what} file {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {what} file {}", path.display()))
}

pub fn load_word(path: &Path) -> Result<UpWord> {
    read::<Wrapped<WordDto>>(path, "word")?
        .into_inner()
        .to_core()
}

pub fn load_schedule(path: &Path) -> Result<ChallengeSchedule> {
    read::<Wrapped<ScheduleDto>>(path, "schedule")?
        .into_inner()
        .to_core()
}

pub fn load_automaton(path: &Path) -> Result<SafetyAutomaton> {
    read::<AutomatonDto>(path, "automaton")?.to_core()
}

pub fn load_presentation(path: &Path) -> Result<MeagerPresentation> {
    let dto: PresentationDto = read(path, "presentation")?;
    let layers = dto
        .layers
        .iter()
        .enumerate()
        .map(|(i, l)| l.to_core().with_context(|| format!("layer {i}")))
        .collect::<Result<Vec<_>>>()?;
    Ok(baire_core::engine::normalize_presentation(layers)?)
}

pub fn load_constraint(path: &Path) -> Result<ConstraintSet> {
    read::<ConstraintDto>(path, "constraint")?.to_core()
}

pub fn load_open_set(path: &Path) -> Result<OpenSet1D> {
    read::<OpenSetDto>(path, "open set")?.to_core()
}
