//! Alphabets, finite words, ultimately periodic ω-words and challenge schedules.
//!
//! An ω-word is always held in canonical form: the period is primitive and
//! the prefix is as short as possible. Two [`UpWord`]s are therefore equal as
//! values exactly when they denote the same infinite sequence.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use thiserror::Error;

/// A letter. Finite alphabets use `0..k`; the naturals alphabet allows any value.
pub type Symbol = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Alphabet {
    /// `{0, 1, ..., k-1}` with `k >= 1`.
    Finite(u32),
    /// All non-negative integers representable as [`Symbol`].
    Naturals,
}

impl Alphabet {
    pub const BINARY: Alphabet = Alphabet::Finite(2);

    pub fn finite(size: u32) -> Result<Self, WordError> {
        if size == 0 {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(Alphabet::Finite(size))
    }

    pub fn contains(&self, symbol: Symbol) -> bool {
        match *self {
            Alphabet::Finite(k) => symbol < Symbol::from(k),
            Alphabet::Naturals => true,
        }
    }

    /// Number of letters, `None` for the naturals.
    pub fn size(&self) -> Option<usize> {
        match *self {
            Alphabet::Finite(k) => Some(k as usize),
            Alphabet::Naturals => None,
        }
    }

    pub fn check(&self, symbols: &[Symbol]) -> Result<(), WordError> {
        match symbols.iter().position(|&s| !self.contains(s)) {
            None => Ok(()),
            Some(at) => Err(WordError::SymbolOutOfRange {
                symbol: symbols[at],
                position: at,
                alphabet: *self,
            }),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alphabet::Finite(k) => write!(f, "{{0..{}}}", k - 1),
            Alphabet::Naturals => f.write_str("naturals"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("alphabet must have at least one symbol")]
    EmptyAlphabet,
    #[error("symbol {symbol} at position {position} is not in alphabet {alphabet}")]
    SymbolOutOfRange {
        symbol: Symbol,
        position: usize,
        alphabet: Alphabet,
    },
    #[error("period of an ω-word must be non-empty")]
    EmptyPeriod,
    #[error("alphabet mismatch: expected {expected}, found {found}")]
    AlphabetMismatch { expected: Alphabet, found: Alphabet },
    #[error("schedule tail period must be at least 1")]
    ZeroTailPeriod,
    #[error("schedule entry {index} lies beyond the explicit tail block ending at {block_end}")]
    EntryBeyondTailBlock { index: usize, block_end: usize },
    #[error("schedule tail starting at {start} has no entry in its block")]
    EmptyTailBlock { start: usize },
    #[error("duplicate schedule entry at index {0}")]
    DuplicateEntry(usize),
}

/// An element of `X^n` for some `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteWord {
    alphabet: Alphabet,
    symbols: Vec<Symbol>,
}

impl FiniteWord {
    pub fn new(alphabet: Alphabet, symbols: Vec<Symbol>) -> Result<Self, WordError> {
        alphabet.check(&symbols)?;
        Ok(FiniteWord { alphabet, symbols })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        FiniteWord {
            alphabet,
            symbols: Vec::new(),
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.symbols
    }

    pub(crate) fn from_trusted(alphabet: Alphabet, symbols: Vec<Symbol>) -> Self {
        FiniteWord { alphabet, symbols }
    }
}

/// An ultimately periodic ω-word `prefix · period^ω`, always canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpWord {
    alphabet: Alphabet,
    prefix: Vec<Symbol>,
    period: Vec<Symbol>,
}

impl UpWord {
    /// Builds the canonical word denoted by `prefix · period^ω`.
    pub fn new(
        alphabet: Alphabet,
        prefix: Vec<Symbol>,
        period: Vec<Symbol>,
    ) -> Result<Self, WordError> {
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        alphabet.check(&prefix)?;
        alphabet.check(&period)?;
        let (prefix, period) = canonicalize(&prefix, &period);
        Ok(UpWord {
            alphabet,
            prefix,
            period,
        })
    }

    /// The constant word `s^ω`.
    pub fn constant(alphabet: Alphabet, symbol: Symbol) -> Result<Self, WordError> {
        Self::new(alphabet, Vec::new(), alloc::vec![symbol])
    }

    pub(crate) fn from_trusted(
        alphabet: Alphabet,
        prefix: Vec<Symbol>,
        period: Vec<Symbol>,
    ) -> Self {
        debug_assert!(!period.is_empty());
        let (prefix, period) = canonicalize(&prefix, &period);
        UpWord {
            alphabet,
            prefix,
            period,
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn prefix(&self) -> &[Symbol] {
        &self.prefix
    }

    pub fn period(&self) -> &[Symbol] {
        &self.period
    }

    /// Returns the already-canonical word. Present for symmetry with [`canonicalize`].
    pub fn canonicalize(&self) -> UpWord {
        self.clone()
    }

    pub fn word_at(&self, n: usize) -> Symbol {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }

    /// The word `n ↦ self[i + n]`.
    pub fn shift(&self, i: usize) -> UpWord {
        let (prefix, period) = if i <= self.prefix.len() {
            (self.prefix[i..].to_vec(), self.period.clone())
        } else {
            let r = (i - self.prefix.len()) % self.period.len();
            let mut rotated = self.period[r..].to_vec();
            rotated.extend_from_slice(&self.period[..r]);
            (Vec::new(), rotated)
        };
        UpWord::from_trusted(self.alphabet, prefix, period)
    }

    /// Prepends a finite word.
    pub fn prepend(&self, head: &[Symbol]) -> Result<UpWord, WordError> {
        self.alphabet.check(head)?;
        let mut prefix = head.to_vec();
        prefix.extend_from_slice(&self.prefix);
        Ok(UpWord::from_trusted(
            self.alphabet,
            prefix,
            self.period.clone(),
        ))
    }

    /// True iff the shift of `self` at `i` begins with `u`. The empty word is always extended.
    pub fn extends(&self, i: usize, u: &[Symbol]) -> bool {
        u.iter().enumerate().all(|(m, &s)| self.word_at(i + m) == s)
    }

    /// The first `n` symbols.
    pub fn take(&self, n: usize) -> Vec<Symbol> {
        (0..n).map(|k| self.word_at(k)).collect()
    }
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, s: &[Symbol]| -> fmt::Result {
            for (k, x) in s.iter().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        f.write_str("[")?;
        join(f, &self.prefix)?;
        f.write_str("](")?;
        join(f, &self.period)?;
        f.write_str(")^ω")
    }
}

/// Canonical presentation of `prefix · period^ω`: primitive period, shortest prefix.
///
/// `period` must be non-empty.
pub fn canonicalize(prefix: &[Symbol], period: &[Symbol]) -> (Vec<Symbol>, Vec<Symbol>) {
    assert!(!period.is_empty(), "period must be non-empty");
    let mut period = primitive_root(period).to_vec();
    let mut prefix = prefix.to_vec();
    // u·a·(v·a)^ω = u·(a·v)^ω
    while let Some(&last) = prefix.last() {
        if last != *period.last().unwrap() {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    (prefix, period)
}

fn primitive_root(word: &[Symbol]) -> &[Symbol] {
    let n = word.len();
    for d in 1..n {
        if n.is_multiple_of(d) && (d..n).all(|k| word[k] == word[k - d]) {
            return &word[..d];
        }
    }
    word
}

/// Eventual periodicity of a schedule's domain: beyond `start`, `f(i + period) = f(i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodicTail {
    pub start: usize,
    pub period: usize,
}

/// A finitely presented challenge `f: J → ⋃ₙ Xⁿ`.
///
/// Entries below `tail.start` are listed individually. Entries in
/// `[tail.start, tail.start + tail.period)` form the repeating block; no entry
/// may lie at or beyond the end of that block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChallengeSchedule {
    alphabet: Alphabet,
    entries: BTreeMap<usize, Vec<Symbol>>,
    tail: Option<PeriodicTail>,
}

impl ChallengeSchedule {
    pub fn new(
        alphabet: Alphabet,
        entries: impl IntoIterator<Item = (usize, Vec<Symbol>)>,
        tail: Option<PeriodicTail>,
    ) -> Result<Self, WordError> {
        let mut map = BTreeMap::new();
        for (i, word) in entries {
            alphabet.check(&word)?;
            if map.insert(i, word).is_some() {
                return Err(WordError::DuplicateEntry(i));
            }
        }
        if let Some(t) = tail {
            if t.period == 0 {
                return Err(WordError::ZeroTailPeriod);
            }
            let block_end = t.start + t.period;
            if let Some((&i, _)) = map.range(block_end..).next() {
                return Err(WordError::EntryBeyondTailBlock {
                    index: i,
                    block_end,
                });
            }
            if map.range(t.start..block_end).next().is_none() {
                return Err(WordError::EmptyTailBlock { start: t.start });
            }
        }
        Ok(ChallengeSchedule {
            alphabet,
            entries: map,
            tail,
        })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn tail(&self) -> Option<PeriodicTail> {
        self.tail
    }

    /// Explicitly listed entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, &[Symbol])> + '_ {
        self.entries.iter().map(|(&i, w)| (i, w.as_slice()))
    }

    pub fn is_finite(&self) -> bool {
        self.tail.is_none()
    }

    /// `f(i)`, or `None` when `i ∉ J`.
    pub fn get(&self, i: usize) -> Option<&[Symbol]> {
        let key = match self.tail {
            Some(t) if i >= t.start => t.start + (i - t.start) % t.period,
            _ => i,
        };
        self.entries.get(&key).map(Vec::as_slice)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.get(i).is_some()
    }

    /// Least `i ∈ J` with `i >= from`.
    pub fn next_index(&self, from: usize) -> Option<usize> {
        let explicit_end = self.tail.map_or(usize::MAX, |t| t.start);
        if from < explicit_end {
            if let Some((&k, _)) = self.entries.range(from..explicit_end).next() {
                return Some(k);
            }
        }
        let t = self.tail?;
        let from = from.max(t.start);
        let base = from - (from - t.start) % t.period;
        let block_end = t.start + t.period;
        let offset = from - base;
        if let Some((&k, _)) = self.entries.range(t.start + offset..block_end).next() {
            return Some(base + (k - t.start));
        }
        let (&k, _) = self.entries.range(t.start..block_end).next()?;
        Some(base + t.period + (k - t.start))
    }

    /// Members of `J ∩ [0, horizon]` in increasing order.
    pub fn indices_upto(&self, horizon: usize) -> impl Iterator<Item = usize> + '_ {
        let mut cursor = Some(0usize);
        core::iter::from_fn(move || {
            let from = cursor?;
            let i = self.next_index(from).filter(|&i| i <= horizon)?;
            cursor = i.checked_add(1);
            Some(i)
        })
    }

    /// Largest word length over the whole domain.
    pub fn max_word_len(&self) -> usize {
        self.entries.values().map(Vec::len).max().unwrap_or(0)
    }
}

/// Evidence that a word hits a schedule at infinitely many indices:
/// every `start + m·stride` is a hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PeriodicHit {
    pub start: usize,
    pub stride: usize,
}

/// The indices `i` at which a word's shift extends `f(i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HitSet {
    pub horizon: usize,
    pub indices: Vec<usize>,
    pub certificate: Option<PeriodicHit>,
}

impl HitSet {
    /// Whether the hit set is infinite. Exact whenever the schedule is
    /// periodic; finite schedules always have finitely many hits.
    pub fn is_infinite(&self) -> bool {
        self.certificate.is_some()
    }
}

/// Computes `{i ∈ J ∩ [0, horizon] : w[i..] extends f(i)}` and, for periodic
/// schedules, decides whether infinitely many hits occur.
///
/// Beyond `max(|prefix(w)|, tail.start)` both `w` and `f` repeat with period
/// `L = lcm(|period(w)|, tail.period)`, so the hits there are periodic with
/// stride `L` and one window of length `L` determines them.
pub fn hit_set(w: &UpWord, f: &ChallengeSchedule, horizon: usize) -> HitSet {
    let hits = |i: usize| f.get(i).is_some_and(|u| w.extends(i, u));
    let indices = f.indices_upto(horizon).filter(|&i| hits(i)).collect();
    let certificate = f.tail().and_then(|t| {
        let stride = w.period().len().lcm(&t.period);
        let from = w.prefix().len().max(t.start);
        (from..from + stride)
            .find(|&i| hits(i))
            .map(|start| PeriodicHit { start, stride })
    });
    HitSet {
        horizon,
        indices,
        certificate,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const B: Alphabet = Alphabet::BINARY;

    fn up(prefix: &[Symbol], period: &[Symbol]) -> UpWord {
        UpWord::new(Alphabet::Finite(5), prefix.to_vec(), period.to_vec()).unwrap()
    }

    #[test]
    fn word_at_examples() {
        assert_eq!(up(&[], &[0]).word_at(7), 0);
        assert_eq!(up(&[1], &[0, 1]).word_at(2), 1);
        assert_eq!(up(&[4, 0, 3], &[0, 0]).word_at(5), 0);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(canonicalize(&[0], &[0]), (vec![], vec![0]));
        assert_eq!(canonicalize(&[], &[0, 1, 0, 1]), (vec![], vec![0, 1]));
        assert_eq!(canonicalize(&[1, 0], &[1, 0]), (vec![], vec![1, 0]));
        assert_eq!(canonicalize(&[1, 1, 0], &[1, 0]), (vec![1], vec![1, 0]));
        assert_eq!(canonicalize(&[2], &[0, 1, 0, 1]), (vec![2], vec![0, 1]));
    }

    #[test]
    fn shift_examples() {
        let w = up(&[], &[1, 0]);
        assert_eq!(w.shift(1), up(&[], &[0, 1]));
        assert_eq!(w.shift(1).period(), &[0, 1]);
        assert_eq!(up(&[1, 1], &[0]).shift(2), up(&[], &[0]));
        assert_eq!(w.shift(0), w);
    }

    #[test]
    fn extends_examples() {
        let w = up(&[], &[0, 1]);
        assert!(w.extends(0, &[0, 1]));
        assert!(!w.extends(1, &[0, 1]));
        assert!(w.extends(17, &[]));
    }

    fn every_index(word: Vec<Symbol>) -> ChallengeSchedule {
        ChallengeSchedule::new(
            B,
            [(0, word)],
            Some(PeriodicTail {
                start: 0,
                period: 1,
            }),
        )
        .unwrap()
    }

    #[test]
    fn hit_set_examples() {
        let w = UpWord::new(B, vec![], vec![0, 1]).unwrap();
        let hs = hit_set(&w, &every_index(vec![0, 1]), 5);
        assert_eq!(hs.indices, vec![0, 2, 4]);
        assert_eq!(
            hs.certificate,
            Some(PeriodicHit {
                start: 0,
                stride: 2
            })
        );

        let ones = UpWord::constant(B, 1).unwrap();
        let hs = hit_set(&ones, &every_index(vec![1]), 3);
        assert_eq!(hs.indices, vec![0, 1, 2, 3]);
        assert_eq!(
            hs.certificate,
            Some(PeriodicHit {
                start: 0,
                stride: 1
            })
        );

        let zeros = UpWord::constant(B, 0).unwrap();
        let hs = hit_set(&zeros, &every_index(vec![1]), 10);
        assert!(hs.indices.is_empty());
        assert_eq!(hs.certificate, None);
    }

    #[test]
    fn hit_set_finite_schedule_has_no_certificate() {
        let f = ChallengeSchedule::new(B, [(0, vec![1]), (3, vec![1, 1])], None).unwrap();
        let hs = hit_set(&UpWord::constant(B, 1).unwrap(), &f, 10);
        assert_eq!(hs.indices, vec![0, 3]);
        assert!(!hs.is_infinite());
    }

    #[test]
    fn schedule_domain_with_sparse_tail() {
        // block [5, 9) holds entries 6 and 8
        let f = ChallengeSchedule::new(
            B,
            [(1, vec![0]), (4, vec![1]), (6, vec![0]), (8, vec![1, 1])],
            Some(PeriodicTail {
                start: 5,
                period: 4,
            }),
        )
        .unwrap();
        let dom: Vec<_> = f.indices_upto(20).collect();
        assert_eq!(dom, vec![1, 4, 6, 8, 10, 12, 14, 16, 18, 20]);
        assert_eq!(f.get(12), Some(&[1, 1][..]));
        assert_eq!(f.get(14), Some(&[0][..]));
        assert_eq!(f.get(13), None);
        assert_eq!(f.next_index(2), Some(4));
        assert_eq!(f.next_index(5), Some(6));
        assert_eq!(f.next_index(9), Some(10));
        assert_eq!(f.next_index(13), Some(14));
    }

    #[test]
    fn schedule_validation() {
        let tail = Some(PeriodicTail {
            start: 2,
            period: 2,
        });
        assert_eq!(
            ChallengeSchedule::new(B, [(4, vec![0])], tail),
            Err(WordError::EntryBeyondTailBlock {
                index: 4,
                block_end: 4
            })
        );
        assert_eq!(
            ChallengeSchedule::new(B, [(0, vec![0])], tail),
            Err(WordError::EmptyTailBlock { start: 2 })
        );
        assert!(matches!(
            ChallengeSchedule::new(B, [(0, vec![2])], None),
            Err(WordError::SymbolOutOfRange { symbol: 2, .. })
        ));
        assert!(matches!(
            UpWord::new(B, vec![], vec![]),
            Err(WordError::EmptyPeriod)
        ));
    }

    #[test]
    fn naturals_accept_large_symbols() {
        let w = UpWord::constant(Alphabet::Naturals, 1 << 40).unwrap();
        assert_eq!(w.word_at(3), 1 << 40);
        assert!(Alphabet::finite(0).is_err());
    }
}
