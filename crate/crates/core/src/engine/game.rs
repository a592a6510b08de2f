use super::{
    baire_witness, build_defeating_challenge, challenge_from_evader, verify_defeat, ConstraintSet,
    DefeatReport, EngineError, MeagerPresentation,
};
use crate::words::{hit_set, ChallengeSchedule, HitSet, PeriodicHit, Symbol, UpWord};

/// Produces the challenge `f`.
pub trait Challenger {
    fn challenge(&self) -> Result<ChallengeSchedule, EngineError>;
}

/// Answers a challenge with a point of `X^ω`.
pub trait Responder {
    fn respond(&self, f: &ChallengeSchedule) -> Result<UpWord, EngineError>;
}

impl<F> Challenger for F
where
    F: Fn() -> Result<ChallengeSchedule, EngineError>,
{
    fn challenge(&self) -> Result<ChallengeSchedule, EngineError> {
        self()
    }
}

impl<F> Responder for F
where
    F: Fn(&ChallengeSchedule) -> Result<UpWord, EngineError>,
{
    fn respond(&self, f: &ChallengeSchedule) -> Result<UpWord, EngineError> {
        self(f)
    }
}

pub struct FixedChallenger(pub ChallengeSchedule);

impl Challenger for FixedChallenger {
    fn challenge(&self) -> Result<ChallengeSchedule, EngineError> {
        Ok(self.0.clone())
    }
}

pub struct DefeatingChallenger<'a> {
    pub presentation: &'a MeagerPresentation,
    pub horizon: usize,
}

impl Challenger for DefeatingChallenger<'_> {
    fn challenge(&self) -> Result<ChallengeSchedule, EngineError> {
        build_defeating_challenge(self.presentation, self.horizon)
    }
}

pub struct EvaderChallenger(pub UpWord);

impl Challenger for EvaderChallenger {
    fn challenge(&self) -> Result<ChallengeSchedule, EngineError> {
        Ok(challenge_from_evader(&self.0))
    }
}

pub struct FixedResponder(pub UpWord);

impl Responder for FixedResponder {
    fn respond(&self, _: &ChallengeSchedule) -> Result<UpWord, EngineError> {
        Ok(self.0.clone())
    }
}

pub struct BaireResponder<'a> {
    pub constraint: &'a ConstraintSet,
    pub pad: Symbol,
}

impl Responder for BaireResponder<'_> {
    fn respond(&self, f: &ChallengeSchedule) -> Result<UpWord, EngineError> {
        Ok(baire_witness(f, self.constraint, self.pad)?.word)
    }
}

/// The set the responder is supposed to answer from.
#[derive(Debug, Clone, Copy)]
pub enum GameContext<'a> {
    Free,
    Meager(&'a MeagerPresentation),
    Constraint(&'a ConstraintSet),
}

/// How "infinitely many hits" was settled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HitOutcome {
    /// Symbolic certificate: infinitely many hits.
    Infinite(PeriodicHit),
    /// Finite schedule, every index hit. The best a finite challenge allows.
    AllScheduledWithinHorizon,
    Finite,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub schedule: ChallengeSchedule,
    pub response: UpWord,
    pub hits: HitSet,
    pub outcome: HitOutcome,
    /// Membership of the response in the context set, if there is one.
    pub in_context: Option<bool>,
    pub defeat: Option<DefeatReport>,
    pub responder_wins: bool,
}

/// One round: challenge, response, and the verdicts.
pub fn run_star_game(
    challenger: &dyn Challenger,
    responder: &dyn Responder,
    context: GameContext<'_>,
    horizon: usize,
) -> Result<Transcript, EngineError> {
    let schedule = challenger.challenge()?;
    let response = responder.respond(&schedule)?;
    let hits = hit_set(&response, &schedule, horizon);
    let outcome = match hits.certificate {
        Some(c) => HitOutcome::Infinite(c),
        None if schedule.is_finite()
            && schedule.indices_upto(horizon).next().is_some()
            && schedule
                .indices_upto(horizon)
                .eq(hits.indices.iter().copied()) =>
        {
            HitOutcome::AllScheduledWithinHorizon
        }
        None => HitOutcome::Finite,
    };
    let (in_context, defeat) = match context {
        GameContext::Free => (None, None),
        GameContext::Constraint(c) => (Some(c.automaton().contains(&response)), None),
        GameContext::Meager(p) => {
            let report = verify_defeat(p, &schedule, &response, horizon)?;
            (Some(report.in_union), Some(report))
        }
    };
    let responder_wins = outcome != HitOutcome::Finite && in_context != Some(false);
    Ok(Transcript {
        schedule,
        response,
        hits,
        outcome,
        in_context,
        defeat,
        responder_wins,
    })
}
