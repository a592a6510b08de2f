#![allow(dead_code)]

use baire_core::{Alphabet, ChallengeSchedule, PeriodicTail, SafetyAutomaton, Symbol, UpWord};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random total automaton, pruned. Live states are drawn with probability `live_p`.
pub fn random_automaton(
    rng: &mut ChaCha8Rng,
    k: u32,
    max_states: usize,
    live_p: f64,
) -> SafetyAutomaton {
    let n = rng.gen_range(1..=max_states);
    let delta: Vec<Vec<usize>> = (0..n)
        .map(|_| (0..k).map(|_| rng.gen_range(0..n)).collect())
        .collect();
    let live: Vec<usize> = (0..n).filter(|_| rng.gen_bool(live_p)).collect();
    SafetyAutomaton::new(Alphabet::Finite(k), 0, delta, &live)
        .unwrap()
        .prune()
}

pub fn random_word(rng: &mut ChaCha8Rng, k: u32, max_prefix: usize, max_period: usize) -> UpWord {
    let pre = rng.gen_range(0..=max_prefix);
    let per = rng.gen_range(1..=max_period);
    let prefix = (0..pre).map(|_| rng.gen_range(0..k) as Symbol).collect();
    let period = (0..per).map(|_| rng.gen_range(0..k) as Symbol).collect();
    UpWord::new(Alphabet::Finite(k), prefix, period).unwrap()
}

pub fn random_finite(rng: &mut ChaCha8Rng, k: u32, max_len: usize) -> Vec<Symbol> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..k) as Symbol).collect()
}

/// Random schedule; periodic with probability 1/2.
pub fn random_schedule(rng: &mut ChaCha8Rng, k: u32, max_len: usize) -> ChallengeSchedule {
    let alphabet = Alphabet::Finite(k);
    if rng.gen_bool(0.5) {
        let start = rng.gen_range(0..6);
        let period = rng.gen_range(1..5);
        let mut entries: Vec<(usize, Vec<Symbol>)> = Vec::new();
        for i in 0..start {
            if rng.gen_bool(0.4) {
                entries.push((i, random_finite(rng, k, max_len)));
            }
        }
        let first = rng.gen_range(start..start + period);
        entries.push((first, random_finite(rng, k, max_len)));
        for i in first + 1..start + period {
            if rng.gen_bool(0.5) {
                entries.push((i, random_finite(rng, k, max_len)));
            }
        }
        ChallengeSchedule::new(alphabet, entries, Some(PeriodicTail { start, period })).unwrap()
    } else {
        let count = rng.gen_range(1..5);
        let mut indices: Vec<usize> = (0..count).map(|_| rng.gen_range(0..20)).collect();
        indices.sort_unstable();
        indices.dedup();
        let entries = indices
            .into_iter()
            .map(|i| (i, random_finite(rng, k, max_len)));
        ChallengeSchedule::new(alphabet, entries, None).unwrap()
    }
}

/// All canonical binary (or `k`-ary) words with `|prefix| + |period| <= total`.
pub fn all_words(k: u32, total: usize) -> Vec<UpWord> {
    let mut out = Vec::new();
    for len in 1..=total {
        for code in 0..(k as usize).pow(len as u32) {
            let mut digits = Vec::with_capacity(len);
            let mut c = code;
            for _ in 0..len {
                digits.push((c % k as usize) as Symbol);
                c /= k as usize;
            }
            for split in 0..len {
                let w = UpWord::new(
                    Alphabet::Finite(k),
                    digits[..split].to_vec(),
                    digits[split..].to_vec(),
                )
                .unwrap();
                out.push(w);
            }
        }
    }
    out.sort_by(|a, b| (a.prefix(), a.period()).cmp(&(b.prefix(), b.period())));
    out.dedup();
    out
}

/// All words over `{0..k-1}` of length exactly `len`.
pub fn words_of_len(k: u32, len: usize) -> impl Iterator<Item = Vec<Symbol>> {
    let count = (k as usize).pow(len as u32);
    (0..count).map(move |mut c| {
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = (c % k as usize) as Symbol;
            c /= k as usize;
        }
        w
    })
}
