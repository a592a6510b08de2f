use alloc::vec;

use crate::words::{ChallengeSchedule, PeriodicTail, UpWord};

/// The one-letter challenge `f(i) = [g(i)]`.
///
/// A word hits `f` at `i` exactly when it agrees with `g` at `i`, so a set
/// whose members are all eventually different from `g` cannot hit `f`
/// infinitely often.
pub fn challenge_from_evader(g: &UpWord) -> ChallengeSchedule {
    let start = g.prefix().len();
    let period = g.period().len();
    let entries = (0..start + period).map(|i| (i, vec![g.word_at(i)]));
    ChallengeSchedule::new(g.alphabet(), entries, Some(PeriodicTail { start, period }))
        .expect("entries cover exactly one tail block")
}
