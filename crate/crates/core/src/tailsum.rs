//! Exact tail sums `t_n = Σ_{k≥n} g(k)/2^k` of binary ultimately periodic
//! words, open sets of `(0, ε)` with rational endpoints, and the synthesis of
//! challenges whose hits force tail sums into such a set.
//!
//! If `w` has length `ℓ` and a word's shift at `i` extends `w`, then
//! `t_i ∈ 2^{1-i}·[val(w), val(w) + 2^{-ℓ}]` where `val(w) = Σ w[j]·2^{-j-1}`.
//! That closed dyadic window is what the certificates record.

use alloc::boxed::Box;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::engine::{baire_witness, BaireWitness, ConstraintSet, EngineError};
use crate::words::{Alphabet, ChallengeSchedule, PeriodicTail, Symbol, UpWord};

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TailsumError {
    #[error("tail sums need a binary word")]
    NotBinary,
    #[error("epsilon must be positive")]
    NonPositiveEpsilon,
    #[error("interval {index} is not a non-empty subinterval of [0, epsilon]")]
    BadInterval { index: usize },
    #[error("intervals {index} and {next} overlap or are out of order", next = index + 1)]
    UnsortedIntervals { index: usize },
    #[error("the open set does not adhere to 0")]
    NotZeroAdherent,
    #[error("the index set is empty")]
    EmptyIndexSet,
    #[error("no window of length at most the depth budget fits at index {index}")]
    NoWindow {
        index: usize,
        /// First window of maximal length lying above the left end of an interval.
        near_miss: Option<Box<(Rational, Rational)>>,
    },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

pub fn pow2(e: i64) -> Rational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

fn check_binary(g: &UpWord) -> Result<(), TailsumError> {
    if g.alphabet() != Alphabet::BINARY {
        return Err(TailsumError::NotBinary);
    }
    Ok(())
}

/// `Σ_j v[j]·2^{-j-1}`.
pub fn binary_value(v: &[Symbol]) -> Rational {
    let mut acc = BigInt::zero();
    for &bit in v {
        acc = (acc << 1u32) + BigInt::from(bit);
    }
    Rational::new(acc, BigInt::one() << v.len())
}

/// `t_n`, exactly: a finite sum up to the start of the periodic part, then the
/// geometric series `2^{1-m}·val(v)/(1 - 2^{-|v|})` for the period `v` read
/// from position `m`.
pub fn tail_sum(g: &UpWord, n: usize) -> Result<Rational, TailsumError> {
    check_binary(g)?;
    let pre = g.prefix().len();
    let per = g.period().len();
    let m = n.max(pre);
    let mut sum = Rational::zero();
    for k in n..m {
        if g.word_at(k) == 1 {
            sum += pow2(-(k as i64));
        }
    }
    let rotated: Vec<Symbol> = (0..per).map(|j| g.word_at(m + j)).collect();
    let series = binary_value(&rotated) / (Rational::one() - pow2(-(per as i64)));
    sum += pow2(1 - m as i64) * series;
    Ok(sum)
}

/// A finite union of disjoint open intervals inside `(0, ε)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenSet1D {
    epsilon: Rational,
    intervals: Vec<(Rational, Rational)>,
}

impl OpenSet1D {
    /// Intervals must be sorted, pairwise disjoint, with `0 <= lo < hi <= ε`.
    pub fn new(
        epsilon: Rational,
        intervals: Vec<(Rational, Rational)>,
    ) -> Result<Self, TailsumError> {
        if !epsilon.is_positive() {
            return Err(TailsumError::NonPositiveEpsilon);
        }
        for (index, (lo, hi)) in intervals.iter().enumerate() {
            if lo.is_negative() || lo >= hi || *hi > epsilon {
                return Err(TailsumError::BadInterval { index });
            }
        }
        for (index, pair) in intervals.windows(2).enumerate() {
            if pair[0].1 > pair[1].0 {
                return Err(TailsumError::UnsortedIntervals { index });
            }
        }
        Ok(OpenSet1D { epsilon, intervals })
    }

    pub fn epsilon(&self) -> &Rational {
        &self.epsilon
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    /// Decidable stand-in for `0 ∈ closure(U)`: some interval starts at 0.
    pub fn zero_adherent(&self) -> bool {
        self.intervals.first().is_some_and(|(lo, _)| lo.is_zero())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.intervals.iter().any(|(lo, hi)| lo < x && x < hi)
    }

    /// Index of the interval strictly containing the closed interval `[a, b]`.
    pub fn interval_containing(&self, a: &Rational, b: &Rational) -> Option<usize> {
        self.intervals.iter().position(|(lo, hi)| lo < a && b < hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TailHits {
    pub hits: Vec<usize>,
    pub infinitely_often: bool,
}

/// Indices `n <= horizon` with `t_n ∈ U`, and whether that happens infinitely often.
///
/// Past the prefix, `t_{n+p} = 2^{-p}·t_n` (`p` the period length), so each
/// residue class is a ray shrinking geometrically to 0. Such a ray enters an
/// interval bounded away from 0 finitely often, and an interval `(0, hi)`
/// infinitely often iff it is non-zero.
pub fn hits_in_u(g: &UpWord, u: &OpenSet1D, horizon: usize) -> Result<TailHits, TailsumError> {
    check_binary(g)?;
    let hits = (0..=horizon)
        .map(|n| tail_sum(g, n).map(|t| (n, t)))
        .filter_map(|r| match r {
            Ok((n, t)) => u.contains(&t).then_some(Ok(n)),
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let infinitely_often = u.zero_adherent() && g.period().contains(&1);
    Ok(TailHits {
        hits,
        infinitely_often,
    })
}

/// The closed window `2^{1-i}·[val(w), val(w) + 2^{-|w|}]` of tail sums at `i`
/// for words extending `w` there.
pub fn window(index: usize, word: &[Symbol]) -> (Rational, Rational) {
    let scale = pow2(1 - index as i64);
    let lo = binary_value(word) * &scale;
    let hi = &lo + scale * pow2(-(word.len() as i64));
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowRecord {
    pub index: usize,
    pub word: Vec<Symbol>,
    pub window: (Rational, Rational),
    pub interval: (Rational, Rational),
}

impl WindowRecord {
    /// The window matches `(index, word)` exactly and lies strictly inside an
    /// interval of `u` equal to `interval`.
    pub fn validate(&self, u: &OpenSet1D) -> bool {
        let (lo, hi) = &self.interval;
        window(self.index, &self.word) == self.window
            && u.intervals().contains(&self.interval)
            && *lo < self.window.0
            && self.window.1 < *hi
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCertificate {
    pub records: Vec<WindowRecord>,
}

impl WindowCertificate {
    pub fn validate(&self, u: &OpenSet1D) -> bool {
        self.records.iter().all(|r| r.validate(u))
    }
}

/// Which indices to schedule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexSpec {
    List(Vec<usize>),
    Periodic { start: usize, period: usize },
}

fn bits(k: &BigInt, len: usize) -> Vec<Symbol> {
    (0..len)
        .rev()
        .map(|j| if k.bit(j as u64) { 1 } else { 0 })
        .collect()
}

/// Shortest, then lexicographically least, word of length `<= depth` whose
/// window at `index` fits strictly inside one of the allowed intervals.
///
/// At length `ℓ` the windows are `[k/s, (k+1)/s]` with `s = 2^{ℓ+index-1}`,
/// in lexicographic order of `k`; the admissible `k` for `(lo, hi)` form the
/// range `floor(lo·s) + 1 ..= ceil(hi·s) - 2`.
fn find_window(
    u: &OpenSet1D,
    index: usize,
    depth: usize,
    allowed: impl Fn(&(Rational, Rational)) -> bool,
) -> Result<(Vec<Symbol>, usize), TailsumError> {
    let mut near_miss = None;
    for len in 0..=depth {
        let s = pow2(len as i64 + index as i64 - 1);
        let count = BigInt::one() << len;
        let mut best: Option<(BigInt, usize)> = None;
        for (which, iv) in u
            .intervals()
            .iter()
            .enumerate()
            .filter(|(_, iv)| allowed(iv))
        {
            let k_min: BigInt = (&iv.0 * &s).floor().to_integer() + 1;
            let k_max: BigInt = (&iv.1 * &s).ceil().to_integer() - 2;
            if len == depth && near_miss.is_none() && k_min < count {
                let k = Rational::from_integer(k_min.clone());
                near_miss = Some(Box::new((&k / &s, (k + Rational::one()) / &s)));
            }
            let k_max = k_max.min(&count - 1);
            if k_min <= k_max && best.as_ref().is_none_or(|(b, _)| k_min < *b) {
                best = Some((k_min, which));
            }
        }
        if let Some((k, which)) = best {
            return Ok((bits(&k, len), which));
        }
    }
    Err(TailsumError::NoWindow { index, near_miss })
}

fn record(u: &OpenSet1D, index: usize, word: &[Symbol]) -> WindowRecord {
    let window = window(index, word);
    let which = u
        .interval_containing(&window.0, &window.1)
        .expect("window was chosen inside an interval");
    WindowRecord {
        index,
        word: word.to_vec(),
        window,
        interval: u.intervals()[which].clone(),
    }
}

/// Number of tail instances recorded in a periodic certificate.
const PERIODIC_RECORDS: usize = 3;

/// Schedules, for each index of `spec`, a word whose window fits inside `U`.
///
/// For a periodic spec the word must fit inside an interval starting at 0:
/// the same word then fits at every later index of the same class, since its
/// window only shrinks towards 0.
pub fn challenge_from_open_set(
    u: &OpenSet1D,
    spec: &IndexSpec,
    depth: usize,
) -> Result<(ChallengeSchedule, WindowCertificate), TailsumError> {
    if !u.zero_adherent() {
        return Err(TailsumError::NotZeroAdherent);
    }
    match spec {
        IndexSpec::List(indices) => {
            if indices.is_empty() {
                return Err(TailsumError::EmptyIndexSet);
            }
            let mut entries = Vec::new();
            let mut records = Vec::new();
            for &i in indices {
                let (word, _) = find_window(u, i, depth, |_| true)?;
                records.push(record(u, i, &word));
                entries.push((i, word));
            }
            let schedule = ChallengeSchedule::new(Alphabet::BINARY, entries, None)
                .map_err(EngineError::from)?;
            Ok((schedule, WindowCertificate { records }))
        }
        &IndexSpec::Periodic { start, period } => {
            let (word, _) = find_window(u, start, depth, |(lo, _)| lo.is_zero())?;
            let records = (0..PERIODIC_RECORDS)
                .map(|m| record(u, start + m * period, &word))
                .collect();
            let schedule = ChallengeSchedule::new(
                Alphabet::BINARY,
                [(start, word)],
                Some(PeriodicTail { start, period }),
            )
            .map_err(EngineError::from)?;
            Ok((schedule, WindowCertificate { records }))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryDemo {
    pub schedule: ChallengeSchedule,
    pub certificate: WindowCertificate,
    pub witness: BaireWitness,
    pub tail_hits: TailHits,
    /// The word has infinitely many ones.
    pub infinitely_many_ones: bool,
}

/// Synthesizes a zero-one sequence with infinitely many ones whose tail sums
/// enter `U` infinitely often.
///
/// A function on `(0, ε)` bounded away from 0 on `U` therefore cannot tend to
/// 0 along the tail sums of every such sequence. Every scheduled window
/// contains a 1 (its left end is positive), so padding with 0 keeps infinitely
/// many ones.
pub fn corollary_demo(
    u: &OpenSet1D,
    start: usize,
    period: usize,
    depth: usize,
    horizon: usize,
) -> Result<CorollaryDemo, TailsumError> {
    let (schedule, certificate) =
        challenge_from_open_set(u, &IndexSpec::Periodic { start, period }, depth)?;
    let witness = baire_witness(&schedule, &ConstraintSet::full(Alphabet::BINARY)?, 0)?;
    let tail_hits = hits_in_u(&witness.word, u, horizon)?;
    let infinitely_many_ones = witness.word.period().contains(&1);
    Ok(CorollaryDemo {
        schedule,
        certificate,
        witness,
        tail_hits,
        infinitely_many_ones,
    })
}

/// Parses `p/q` or `p`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

/// Formats as `p/q`, always with a denominator.
pub fn format_rational(r: &Rational) -> alloc::string::String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}
