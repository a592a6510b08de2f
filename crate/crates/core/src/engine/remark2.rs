//! The padded-repetition set over the naturals: words made of blocks
//! `a, (ψ(a) arbitrary symbols), a`. It is closed and nowhere dense, yet it
//! answers every finite challenge schedule, which shows the finiteness of the
//! alphabet cannot be dropped from the meager-set argument.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{same_alphabet, EngineError};
use crate::words::{Alphabet, ChallengeSchedule, Symbol, UpWord};

/// Longest prefix or period the responder will materialize.
const MAX_MATERIALIZED: u64 = 1 << 20;

/// Padding length `ψ(a)` for a block opened by `a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsiFunction {
    Identity,
    Double,
    /// Finite table; symbols not listed cannot open a block.
    Table(BTreeMap<Symbol, u64>),
}

impl PsiFunction {
    pub fn apply(&self, a: Symbol) -> Option<u64> {
        match self {
            PsiFunction::Identity => Some(a),
            PsiFunction::Double => a.checked_mul(2),
            PsiFunction::Table(t) => t.get(&a).copied(),
        }
    }

    /// Openers with `lo <= ψ(a) <= hi`, by increasing `ψ(a)`, smallest opener per value.
    fn openers_in(&self, lo: u64, hi: u64) -> Vec<Symbol> {
        if lo > hi {
            return Vec::new();
        }
        match self {
            PsiFunction::Identity => (lo..=hi).collect(),
            PsiFunction::Double => (lo.div_ceil(2)..=hi / 2).collect(),
            PsiFunction::Table(t) => {
                let mut by_len: BTreeMap<u64, Symbol> = BTreeMap::new();
                for (&a, &len) in t {
                    if (lo..=hi).contains(&len) {
                        by_len.entry(len).or_insert(a);
                    }
                }
                by_len.into_values().collect()
            }
        }
    }

    /// Opener of the all-padding block that ends every responder word.
    fn terminal_opener(&self) -> Option<Symbol> {
        match self {
            PsiFunction::Identity | PsiFunction::Double => Some(0),
            PsiFunction::Table(t) => t.keys().next().copied(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Remark2Verdict {
    /// The prefix is a chain of blocks, possibly ending inside an open block.
    Consistent,
    /// The block starting here cannot be completed.
    Inconsistent { block_start: usize },
}

/// Whether a finite prefix can be continued to a member of the set.
pub fn remark2_membership(prefix: &[Symbol], psi: &PsiFunction) -> Remark2Verdict {
    let mut b = 0usize;
    while b < prefix.len() {
        let a = prefix[b];
        let Some(len) = psi.apply(a) else {
            return Remark2Verdict::Inconsistent { block_start: b };
        };
        let close = (b as u64).saturating_add(len).saturating_add(1);
        if close >= prefix.len() as u64 {
            break;
        }
        let close = close as usize;
        if prefix[close] != a {
            return Remark2Verdict::Inconsistent { block_start: b };
        }
        b = close + 1;
    }
    Remark2Verdict::Consistent
}

/// Exact membership of an ultimately periodic word.
///
/// Block starts are forced, and once a block starts inside the periodic part
/// its offset in the period determines all later blocks.
pub fn remark2_contains(w: &UpWord, psi: &PsiFunction) -> bool {
    let pre = w.prefix().len() as u64;
    let per = w.period().len() as u64;
    let at = |pos: u64| {
        if pos < pre {
            w.prefix()[pos as usize]
        } else {
            w.period()[((pos - pre) % per) as usize]
        }
    };
    let mut seen = vec![false; per as usize];
    let mut b: u64 = 0;
    loop {
        if b >= pre {
            let phase = ((b - pre) % per) as usize;
            if seen[phase] {
                return true;
            }
            seen[phase] = true;
        }
        let a = at(b);
        let Some(close) = psi
            .apply(a)
            .and_then(|len| b.checked_add(len))
            .and_then(|c| c.checked_add(1))
        else {
            return false;
        };
        if at(close) != a {
            return false;
        }
        b = close + 1;
    }
}

struct Planner<'a> {
    psi: &'a PsiFunction,
    pins: BTreeMap<u64, Symbol>,
    chosen: BTreeMap<u64, Symbol>,
    failed: BTreeSet<u64>,
}

impl Planner<'_> {
    /// Finds openers for the blocks from `b` on so that every pinned
    /// position past `b` gets its symbol.
    fn solve(&mut self, b: u64) -> bool {
        let Some((&next_pin, _)) = self.pins.range(b..).next() else {
            return true;
        };
        if self.chosen.contains_key(&b) {
            return true;
        }
        if self.failed.contains(&b) {
            return false;
        }
        let candidates = if next_pin == b {
            vec![self.pins[&b]]
        } else {
            // prefer blocks whose fillers swallow the next pin
            let gap = next_pin - b;
            let last_pin = *self.pins.keys().next_back().unwrap();
            let mut c = self.psi.openers_in(gap, last_pin - b + 1);
            c.extend(self.psi.openers_in(0, gap - 1));
            c
        };
        for a in candidates {
            let Some(close) = self.psi.apply(a).and_then(|len| b.checked_add(len + 1)) else {
                continue;
            };
            if self.pins.get(&close).is_some_and(|&s| s != a) {
                continue;
            }
            if self.solve(close + 1) {
                self.chosen.insert(b, a);
                return true;
            }
        }
        self.failed.insert(b);
        false
    }
}

fn push_block(
    out: &mut Vec<Symbol>,
    opener: Symbol,
    len: u64,
    pins: &BTreeMap<u64, Symbol>,
) -> Result<(), EngineError> {
    let start = out.len() as u64;
    if start + len + 2 > MAX_MATERIALIZED {
        return Err(EngineError::BlockTooLong { opener });
    }
    out.push(opener);
    for pos in start + 1..=start + len {
        out.push(pins.get(&pos).copied().unwrap_or(0));
    }
    out.push(opener);
    Ok(())
}

/// Builds a member of the set that hits every entry of a finite schedule.
///
/// Challenge words pin symbols at absolute positions. Blocks are laid out
/// left to right; at a free block start the opener is chosen so that its
/// padding covers the next pinned position where possible, falling back to
/// shorter blocks. A pinned block start forces the opener. After the last
/// pin, blocks of the smallest opener repeat forever.
pub fn remark2_responder(f: &ChallengeSchedule, psi: &PsiFunction) -> Result<UpWord, EngineError> {
    if !f.is_finite() {
        return Err(EngineError::InfiniteSchedule);
    }
    same_alphabet(Alphabet::Naturals, f.alphabet())?;
    let mut pins: BTreeMap<u64, Symbol> = BTreeMap::new();
    let mut owner: BTreeMap<u64, usize> = BTreeMap::new();
    for (i, u) in f.entries() {
        for (m, &s) in u.iter().enumerate() {
            let pos = (i + m) as u64;
            match pins.get(&pos) {
                Some(&prev) if prev != s => {
                    return Err(EngineError::OverlappingChallenges {
                        position: pos,
                        first: owner[&pos],
                        second: i,
                    })
                }
                Some(_) => {}
                None => {
                    pins.insert(pos, s);
                    owner.insert(pos, i);
                }
            }
        }
    }
    let mut planner = Planner {
        psi,
        pins,
        chosen: BTreeMap::new(),
        failed: BTreeSet::new(),
    };
    if !planner.solve(0) {
        let position = *planner.pins.keys().next().unwrap();
        return Err(EngineError::UnreachablePosition { position });
    }

    let mut prefix = Vec::new();
    let mut b = 0u64;
    while let Some(&a) = planner.chosen.get(&b) {
        let len = psi
            .apply(a)
            .ok_or(EngineError::UndefinedPsi { opener: a })?;
        push_block(&mut prefix, a, len, &planner.pins)?;
        b = prefix.len() as u64;
    }
    let z = psi
        .terminal_opener()
        .ok_or(EngineError::UndefinedPsi { opener: 0 })?;
    let z_len = psi
        .apply(z)
        .ok_or(EngineError::UndefinedPsi { opener: z })?;
    let mut period = Vec::new();
    push_block(&mut period, z, z_len, &BTreeMap::new())?;
    Ok(UpWord::new(Alphabet::Naturals, prefix, period)?)
}
