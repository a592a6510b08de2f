use std::path::Path;

use anyhow::Result;
use baire_core::engine::{
    baire_witness, build_defeating_challenge, defeat_certificate, remark2_contains,
    remark2_responder, verify_defeat, PsiFunction,
};
use baire_core::tailsum::{corollary_demo, format_rational, hits_in_u, tail_sum, WindowRecord};
use baire_core::{hit_set, NwdCertificate, Symbol};
use serde::Serialize;

use crate::formats::{
    interval_dto, load_automaton, load_constraint, load_open_set, load_presentation, load_schedule,
    load_word, HitSetDto, ScheduleDto, WordDto,
};

/// A rendered result and whether its verdict passed.
pub struct Outcome {
    pub json: String,
    pub pass: bool,
}

impl Outcome {
    fn new<T: Serialize>(value: &T, pass: bool) -> Result<Self> {
        let mut json = serde_json::to_string_pretty(value)?;
        json.push('\n');
        Ok(Outcome { json, pass })
    }
}

#[derive(Serialize)]
struct NwdOut {
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Symbol>>,
}

pub fn nwd(automaton: &Path) -> Result<Outcome> {
    let a = load_automaton(automaton)?;
    match a.is_nowhere_dense() {
        NwdCertificate::NowhereDense => Outcome::new(
            &NwdOut {
                verdict: "nowhere_dense",
                witness: None,
            },
            true,
        ),
        NwdCertificate::HasInterior { witness } => Outcome::new(
            &NwdOut {
                verdict: "has_interior",
                witness: Some(witness),
            },
            false,
        ),
    }
}

#[derive(Serialize)]
struct AvoidanceOut {
    index: usize,
    layer: usize,
    word: Vec<Symbol>,
    disjoint: bool,
}

#[derive(Serialize)]
struct DefeatOut {
    layers: usize,
    horizon: usize,
    schedule: ScheduleDto,
    certificate: Vec<AvoidanceOut>,
    pass: bool,
}

pub fn defeat(presentation: &Path, horizon: usize) -> Result<Outcome> {
    let p = load_presentation(presentation)?;
    let f = build_defeating_challenge(&p, horizon)?;
    let certificate: Vec<AvoidanceOut> = defeat_certificate(&p, &f, horizon)?
        .into_iter()
        .map(|r| AvoidanceOut {
            index: r.index,
            layer: r.layer,
            word: r.word,
            disjoint: r.disjoint,
        })
        .collect();
    let pass = certificate.iter().all(|r| r.disjoint);
    Outcome::new(
        &DefeatOut {
            layers: p.layers().len(),
            horizon,
            schedule: ScheduleDto::from_core(&f),
            certificate,
            pass,
        },
        pass,
    )
}

#[derive(Serialize)]
struct WitnessOut {
    word: WordDto,
    consumed: Vec<usize>,
    stride: Option<usize>,
    hits: HitSetDto,
    in_constraint: bool,
}

pub fn witness(schedule: &Path, constraint: &Path, pad: Symbol) -> Result<Outcome> {
    let f = load_schedule(schedule)?;
    let c = load_constraint(constraint)?;
    let out = baire_witness(&f, &c, pad)?;
    let in_constraint = c.automaton().contains(&out.word);
    let hit_all = out.consumed.iter().all(|i| out.hits.indices.contains(i));
    Outcome::new(
        &WitnessOut {
            word: WordDto::from_core(&out.word),
            consumed: out.consumed,
            stride: out.stride,
            hits: HitSetDto::from_core(&out.hits),
            in_constraint,
        },
        in_constraint && hit_all,
    )
}

#[derive(Serialize)]
struct RecordOut {
    index: usize,
    challenge: Vec<Symbol>,
    outside_layer: bool,
}

#[derive(Serialize)]
struct VerifyOut {
    hits: HitSetDto,
    records: Vec<RecordOut>,
    in_union: bool,
    pass: bool,
}

pub fn verify(
    presentation: &Path,
    schedule: &Path,
    word: &Path,
    horizon: usize,
) -> Result<Outcome> {
    let p = load_presentation(presentation)?;
    let f = load_schedule(schedule)?;
    let w = load_word(word)?;
    let report = verify_defeat(&p, &f, &w, horizon)?;
    Outcome::new(
        &VerifyOut {
            hits: HitSetDto::from_core(&report.hits),
            records: report
                .records
                .into_iter()
                .map(|r| RecordOut {
                    index: r.index,
                    challenge: r.challenge,
                    outside_layer: r.outside_layer,
                })
                .collect(),
            in_union: report.in_union,
            pass: report.pass,
        },
        report.pass,
    )
}

#[derive(Serialize)]
struct TailValue {
    n: usize,
    t: String,
    in_u: bool,
}

#[derive(Serialize)]
struct TailsumOut {
    values: Vec<TailValue>,
    hits: Vec<usize>,
    infinitely_often: bool,
}

pub fn tailsum(word: &Path, open_set: &Path, horizon: usize) -> Result<Outcome> {
    let g = load_word(word)?;
    let u = load_open_set(open_set)?;
    let out = hits_in_u(&g, &u, horizon)?;
    let values = (0..=horizon)
        .map(|n| {
            let t = tail_sum(&g, n)?;
            Ok(TailValue {
                n,
                in_u: u.contains(&t),
                t: format_rational(&t),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Outcome::new(
        &TailsumOut {
            values,
            hits: out.hits,
            infinitely_often: out.infinitely_often,
        },
        out.infinitely_often,
    )
}

#[derive(Serialize)]
struct WindowOut {
    index: usize,
    word: Vec<Symbol>,
    window: [String; 2],
    interval: [String; 2],
    valid: bool,
}

impl WindowOut {
    fn new(r: &WindowRecord, valid: bool) -> Self {
        WindowOut {
            index: r.index,
            word: r.word.clone(),
            window: interval_dto(&r.window),
            interval: interval_dto(&r.interval),
            valid,
        }
    }
}

#[derive(Serialize)]
struct TailHitsOut {
    horizon: usize,
    hits: Vec<usize>,
    infinitely_often: bool,
}

#[derive(Serialize)]
struct CorollaryOut {
    schedule: ScheduleDto,
    certificate: Vec<WindowOut>,
    word: WordDto,
    hits: HitSetDto,
    tail_hits: TailHitsOut,
    infinitely_many_ones: bool,
    pass: bool,
}

pub fn corollary(
    open_set: &Path,
    start: usize,
    period: usize,
    depth: usize,
    horizon: usize,
) -> Result<Outcome> {
    let u = load_open_set(open_set)?;
    let demo = corollary_demo(&u, start, period, depth, horizon)?;
    let certificate: Vec<WindowOut> = demo
        .certificate
        .records
        .iter()
        .map(|r| WindowOut::new(r, r.validate(&u)))
        .collect();
    let pass = certificate.iter().all(|r| r.valid)
        && demo.tail_hits.infinitely_often
        && demo.infinitely_many_ones;
    Outcome::new(
        &CorollaryOut {
            schedule: ScheduleDto::from_core(&demo.schedule),
            certificate,
            word: WordDto::from_core(&demo.witness.word),
            hits: HitSetDto::from_core(&demo.witness.hits),
            tail_hits: TailHitsOut {
                horizon,
                hits: demo.tail_hits.hits,
                infinitely_often: demo.tail_hits.infinitely_often,
            },
            infinitely_many_ones: demo.infinitely_many_ones,
            pass,
        },
        pass,
    )
}

#[derive(Serialize)]
struct Remark2Out {
    word: WordDto,
    consistent: bool,
    hits: Vec<usize>,
    all_hit: bool,
}

pub fn remark2(schedule: &Path, psi: &PsiFunction) -> Result<Outcome> {
    let f = load_schedule(schedule)?;
    let w = remark2_responder(&f, psi)?;
    let consistent = remark2_contains(&w, psi);
    let last = f.entries().map(|(i, _)| i).max().unwrap_or(0);
    let hits = hit_set(&w, &f, last).indices;
    let all_hit = f.entries().all(|(i, _)| hits.contains(&i));
    Outcome::new(
        &Remark2Out {
            word: WordDto::from_core(&w),
            consistent,
            hits,
            all_hit,
        },
        consistent && all_hit,
    )
}
