//! Closed subsets of `X^ω` presented by deterministic safety automata.
//!
//! An ω-word belongs to the denoted set iff every state on its run,
//! including the initial one, is live. Every construction here returns a
//! pruned automaton: each live state has at least one infinite live run.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::words::{Alphabet, FiniteWord, Symbol, UpWord, WordError};

pub type State = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error("safety automata need a finite alphabet, got {0}")]
    InfiniteAlphabet(Alphabet),
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("initial state {initial} out of range for {states} states")]
    InitialOutOfRange { initial: State, states: usize },
    #[error("transition row {state} has {found} entries, expected {expected}")]
    RowLength {
        state: State,
        found: usize,
        expected: usize,
    },
    #[error("transition {state} --{symbol}--> {target} leaves the state range")]
    TargetOutOfRange {
        state: State,
        symbol: Symbol,
        target: State,
    },
    #[error("live state {0} out of range")]
    LiveOutOfRange(State),
    #[error("alphabet mismatch: {0} vs {1}")]
    AlphabetMismatch(Alphabet, Alphabet),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("the set has non-empty interior (witness {witness:?}); no avoiding word exists")]
    HasInterior { witness: Vec<Symbol> },
}

/// Deterministic, total automaton over `{0..k-1}` with a live-state set.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SafetyAutomaton {
    symbols: usize,
    initial: State,
    delta: Vec<Vec<State>>,
    live: Vec<bool>,
}

/// Verdict of the nowhere-density decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NwdCertificate {
    NowhereDense,
    /// The cylinder of `witness` lies inside the set.
    HasInterior {
        witness: Vec<Symbol>,
    },
}

impl NwdCertificate {
    pub fn is_nowhere_dense(&self) -> bool {
        matches!(self, NwdCertificate::NowhereDense)
    }
}

impl SafetyAutomaton {
    /// Validates totality and ranges. `live` lists the live states.
    pub fn new(
        alphabet: Alphabet,
        initial: State,
        delta: Vec<Vec<State>>,
        live: &[State],
    ) -> Result<Self, AutomatonError> {
        let symbols = alphabet
            .size()
            .ok_or(AutomatonError::InfiniteAlphabet(alphabet))?;
        let states = delta.len();
        if states == 0 {
            return Err(AutomatonError::NoStates);
        }
        if initial >= states {
            return Err(AutomatonError::InitialOutOfRange { initial, states });
        }
        for (state, row) in delta.iter().enumerate() {
            if row.len() != symbols {
                return Err(AutomatonError::RowLength {
                    state,
                    found: row.len(),
                    expected: symbols,
                });
            }
            if let Some((symbol, &target)) = row.iter().enumerate().find(|(_, &t)| t >= states) {
                return Err(AutomatonError::TargetOutOfRange {
                    state,
                    symbol: symbol as Symbol,
                    target,
                });
            }
        }
        let mut live_mask = vec![false; states];
        for &q in live {
            *live_mask
                .get_mut(q)
                .ok_or(AutomatonError::LiveOutOfRange(q))? = true;
        }
        Ok(SafetyAutomaton {
            symbols,
            initial,
            delta,
            live: live_mask,
        })
    }

    /// The whole space `X^ω`.
    pub fn full(alphabet: Alphabet) -> Result<Self, AutomatonError> {
        let k = alphabet
            .size()
            .ok_or(AutomatonError::InfiniteAlphabet(alphabet))?;
        Self::new(alphabet, 0, vec![vec![0; k]], &[0])
    }

    /// The empty set.
    pub fn empty(alphabet: Alphabet) -> Result<Self, AutomatonError> {
        let k = alphabet
            .size()
            .ok_or(AutomatonError::InfiniteAlphabet(alphabet))?;
        Self::new(alphabet, 0, vec![vec![0; k]], &[])
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::Finite(self.symbols as u32)
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> State {
        self.initial
    }

    pub fn is_live(&self, q: State) -> bool {
        self.live[q]
    }

    pub fn live_states(&self) -> impl Iterator<Item = State> + '_ {
        self.live
            .iter()
            .enumerate()
            .filter_map(|(q, &l)| l.then_some(q))
    }

    pub fn step(&self, q: State, symbol: Symbol) -> State {
        self.delta[q][symbol as usize]
    }

    pub fn transitions(&self) -> &[Vec<State>] {
        &self.delta
    }

    fn check_same_alphabet(&self, other: &Self) -> Result<(), AutomatonError> {
        if self.symbols != other.symbols {
            return Err(AutomatonError::AlphabetMismatch(
                self.alphabet(),
                other.alphabet(),
            ));
        }
        Ok(())
    }

    /// State reached after `word` if the run stays live throughout.
    pub fn run_live(&self, word: &[Symbol]) -> Option<State> {
        let mut q = self.initial;
        if !self.live[q] {
            return None;
        }
        for &a in word {
            q = self.step(q, a);
            if !self.live[q] {
                return None;
            }
        }
        Some(q)
    }

    /// Marks dead every live state without an infinite live run.
    pub fn prune(&self) -> SafetyAutomaton {
        let mut keep = self.live.clone();
        loop {
            let mut changed = false;
            for q in 0..self.delta.len() {
                if keep[q] && !self.delta[q].iter().any(|&t| keep[t]) {
                    keep[q] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        SafetyAutomaton {
            live: keep,
            ..self.clone()
        }
    }

    /// Membership of an ultimately periodic word.
    ///
    /// After the prefix, the pair (state, position in period) determines the
    /// future, so at most `states · |period|` further steps are needed.
    pub fn contains(&self, w: &UpWord) -> bool {
        if w.alphabet().size() != Some(self.symbols) {
            return false;
        }
        let Some(mut q) = self.run_live(w.prefix()) else {
            return false;
        };
        let period = w.period();
        let mut seen = vec![false; self.delta.len() * period.len()];
        let mut pos = 0;
        loop {
            let key = q * period.len() + pos;
            if seen[key] {
                return true;
            }
            seen[key] = true;
            q = self.step(q, period[pos]);
            if !self.live[q] {
                return false;
            }
            pos = (pos + 1) % period.len();
        }
    }

    pub fn is_empty(&self) -> bool {
        !self.prune().live[self.initial]
    }

    /// Greatest fixpoint of live states all of whose successors stay inside:
    /// exactly the states whose residual language is all of `X^ω`.
    pub fn full_states(&self) -> Vec<State> {
        let mut full = self.live.clone();
        loop {
            let mut changed = false;
            for q in 0..self.delta.len() {
                if full[q] && !self.delta[q].iter().all(|&t| full[t]) {
                    full[q] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        full.iter()
            .enumerate()
            .filter_map(|(q, &f)| f.then_some(q))
            .collect()
    }

    /// Shortest, then lexicographically least, word leading from the initial
    /// state to a state satisfying `target`, moving only through states
    /// accepted by `through`.
    fn shortest_word_to(
        &self,
        through: impl Fn(State) -> bool,
        target: impl Fn(State) -> bool,
    ) -> Option<Vec<Symbol>> {
        let n = self.delta.len();
        let mut parent: Vec<Option<(State, Symbol)>> = vec![None; n];
        let mut seen = vec![false; n];
        let path = |parent: &[Option<(State, Symbol)>], mut q: State| {
            let mut word = Vec::new();
            while let Some((p, a)) = parent[q] {
                word.push(a);
                q = p;
            }
            word.reverse();
            word
        };
        if target(self.initial) {
            return Some(Vec::new());
        }
        if !through(self.initial) {
            return None;
        }
        seen[self.initial] = true;
        let mut queue = VecDeque::from([self.initial]);
        while let Some(q) = queue.pop_front() {
            for (a, &t) in self.delta[q].iter().enumerate() {
                if seen[t] {
                    continue;
                }
                seen[t] = true;
                parent[t] = Some((q, a as Symbol));
                if target(t) {
                    return Some(path(&parent, t));
                }
                if through(t) {
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Decides whether the (closed) denoted set is nowhere dense.
    ///
    /// A closed set has interior iff some cylinder fits inside it, iff a full
    /// state is reachable through live states. The witness is the
    /// shortest-lex word reaching one.
    pub fn is_nowhere_dense(&self) -> NwdCertificate {
        let pruned = self.prune();
        let mut full = vec![false; pruned.delta.len()];
        for q in pruned.full_states() {
            full[q] = true;
        }
        match pruned.shortest_word_to(|q| pruned.live[q], |q| full[q]) {
            Some(witness) => NwdCertificate::HasInterior { witness },
            None => NwdCertificate::NowhereDense,
        }
    }

    /// Shortest-lex word whose cylinder misses the denoted set.
    ///
    /// Only meaningful for nowhere dense (or empty) sets; otherwise fails with
    /// [`AutomatonError::HasInterior`].
    pub fn avoiding_word(&self) -> Result<FiniteWord, AutomatonError> {
        let pruned = self.prune();
        if let NwdCertificate::HasInterior { witness } = pruned.is_nowhere_dense() {
            return Err(AutomatonError::HasInterior { witness });
        }
        let word = pruned
            .shortest_word_to(|q| pruned.live[q], |q| !pruned.live[q])
            .expect("a nowhere dense set always has a dead state within reach");
        Ok(FiniteWord::from_trusted(self.alphabet(), word))
    }

    /// Set `{a : a extends u}`, with `|u| + 2` states.
    pub fn cylinder(u: &[Symbol], alphabet: Alphabet) -> Result<Self, AutomatonError> {
        let k = alphabet
            .size()
            .ok_or(AutomatonError::InfiniteAlphabet(alphabet))?;
        alphabet.check(u)?;
        let accept = u.len();
        let dead = u.len() + 1;
        let mut delta = Vec::with_capacity(u.len() + 2);
        for &a in u {
            let next = delta.len() + 1;
            delta.push(
                (0..k)
                    .map(|b| if b as Symbol == a { next } else { dead })
                    .collect(),
            );
        }
        delta.push(vec![accept; k]);
        delta.push(vec![dead; k]);
        let live: Vec<State> = (0..=accept).collect();
        Self::new(alphabet, 0, delta, &live)
    }

    /// `C_A ∩ C_B`.
    pub fn intersection(&self, other: &Self) -> Result<Self, AutomatonError> {
        self.check_same_alphabet(other)?;
        Ok(self.product(other, |a, b| a && b))
    }

    /// `C_A ∪ C_B`.
    pub fn union(&self, other: &Self) -> Result<Self, AutomatonError> {
        self.check_same_alphabet(other)?;
        Ok(self.product(other, |a, b| a || b))
    }

    /// Product over pairs in which a component that has died is dropped for
    /// good. All rejected pairs collapse into one sink.
    fn product(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> SafetyAutomaton {
        type Pair = (Option<State>, Option<State>);
        let start = |m: &Self| m.live[m.initial].then_some(m.initial);
        let advance =
            |m: &Self, q: Option<State>, a: usize| q.map(|q| m.delta[q][a]).filter(|&t| m.live[t]);
        let accepted = |p: &Pair| keep(p.0.is_some(), p.1.is_some());

        let builder = SubsetBuilder::new(self.symbols);
        let init: Pair = (start(self), start(other));
        if !accepted(&init) {
            return builder.finish_empty();
        }
        builder.explore(init, |p| {
            (0..self.symbols)
                .map(|a| {
                    let next = (advance(self, p.0, a), advance(other, p.1, a));
                    accepted(&next).then_some(next)
                })
                .collect()
        })
    }

    /// `Π₁(C) = {a[1..] : a ∈ C}`.
    ///
    /// Determinized by a subset construction over live states of `C`; by
    /// König's lemma a word survives every finite stage iff some one-letter
    /// prepending of it lies in `C`.
    pub fn shift_image(&self) -> SafetyAutomaton {
        let builder = SubsetBuilder::new(self.symbols);
        if !self.live[self.initial] {
            return builder.finish_empty();
        }
        let first = self.successor_set(&[self.initial], None);
        if first.is_empty() {
            return builder.finish_empty();
        }
        builder.explore(first, |set| {
            (0..self.symbols)
                .map(|a| {
                    let next = self.successor_set(set, Some(a));
                    (!next.is_empty()).then_some(next)
                })
                .collect()
        })
    }

    /// Live successors of `set`, on `symbol` or on any symbol.
    fn successor_set(&self, set: &[State], symbol: Option<usize>) -> Vec<State> {
        let mut out: Vec<State> = set
            .iter()
            .flat_map(|&q| match symbol {
                Some(a) => self.delta[q][a..=a].to_vec(),
                None => self.delta[q].clone(),
            })
            .filter(|&t| self.live[t])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `Π_i(C)`, the `i`-fold shift image.
    pub fn shift_image_n(&self, i: usize) -> SafetyAutomaton {
        let mut current = self.clone();
        for _ in 0..i {
            current = current.shift_image();
        }
        current
    }
}

/// Breadth-first determinization with a single dead sink.
///
/// Discovered states are numbered in BFS order with symbols explored in
/// increasing order, so equal inputs always give structurally equal outputs.
struct SubsetBuilder<K> {
    symbols: usize,
    index: BTreeMap<K, State>,
    order: Vec<K>,
}

impl<K: Ord + Clone> SubsetBuilder<K> {
    fn new(symbols: usize) -> Self {
        SubsetBuilder {
            symbols,
            index: BTreeMap::new(),
            order: Vec::new(),
        }
    }

    fn finish_empty(self) -> SafetyAutomaton {
        SafetyAutomaton {
            symbols: self.symbols,
            initial: 0,
            delta: vec![vec![0; self.symbols]],
            live: vec![false],
        }
    }

    /// `succ` returns, per symbol, the accepted successor key or `None` for the sink.
    fn explore(mut self, init: K, succ: impl Fn(&K) -> Vec<Option<K>>) -> SafetyAutomaton {
        self.index.insert(init.clone(), 0);
        self.order.push(init);
        let mut rows: Vec<Vec<Option<State>>> = Vec::new();
        let mut next = 0;
        while next < self.order.len() {
            let key = self.order[next].clone();
            let row = succ(&key)
                .into_iter()
                .map(|t| {
                    t.map(|t| {
                        let fresh = self.order.len();
                        *self.index.entry(t.clone()).or_insert_with(|| {
                            self.order.push(t);
                            fresh
                        })
                    })
                })
                .collect();
            rows.push(row);
            next += 1;
        }
        let sink = self.order.len();
        let mut delta: Vec<Vec<State>> = rows
            .into_iter()
            .map(|row| row.into_iter().map(|t| t.unwrap_or(sink)).collect())
            .collect();
        delta.push(vec![sink; self.symbols]);
        let mut live = vec![true; sink + 1];
        live[sink] = false;
        SafetyAutomaton {
            symbols: self.symbols,
            initial: 0,
            delta,
            live,
        }
        .prune()
    }
}
