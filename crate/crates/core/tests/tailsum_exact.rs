use baire_core::engine::{baire_witness, ConstraintSet};
use baire_core::tailsum::{
    challenge_from_open_set, corollary_demo, hits_in_u, pow2, tail_sum, window, IndexSpec,
    OpenSet1D, Rational, TailsumError,
};
use baire_core::{Alphabet, Symbol, UpWord};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

mod common;

const B: Alphabet = Alphabet::BINARY;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

fn bin(prefix: &[Symbol], period: &[Symbol]) -> UpWord {
    UpWord::new(B, prefix.to_vec(), period.to_vec()).unwrap()
}

/// `Σ_{k=n}^{n+len-1} g(k)/2^k`; the true value exceeds it by at most `2^{1-n-len}`.
fn truncated(g: &UpWord, n: usize, len: usize) -> Rational {
    (n..n + len)
        .filter(|&k| g.word_at(k) == 1)
        .map(|k| pow2(-(k as i64)))
        .fold(Rational::zero(), |a, b| a + b)
}

fn random_open_set(rng: &mut ChaCha8Rng, zero: bool) -> OpenSet1D {
    let d = 1 << rng.gen_range(1..5);
    let mut cuts: Vec<i64> = (0..4).map(|_| rng.gen_range(1..=d)).collect();
    if zero {
        cuts.push(0);
    }
    cuts.sort_unstable();
    cuts.dedup();
    let intervals: Vec<(Rational, Rational)> = cuts
        .chunks(2)
        .filter(|c| c.len() == 2)
        .map(|c| (q(c[0], d * 3), q(c[1], d * 3)))
        .collect();
    OpenSet1D::new(Rational::one(), intervals).unwrap()
}

#[test]
fn recurrence_holds_exactly() {
    let mut rng = common::rng(1);
    for _ in 0..100 {
        let g = common::random_word(&mut rng, 2, 8, 8);
        for n in 0..=64 {
            let bit = if g.word_at(n) == 1 {
                pow2(-(n as i64))
            } else {
                Rational::zero()
            };
            assert_eq!(tail_sum(&g, n).unwrap(), bit + tail_sum(&g, n + 1).unwrap());
        }
    }
}

#[test]
fn closed_form_against_truncated_sums() {
    let mut rng = common::rng(2);
    for _ in 0..100 {
        let g = common::random_word(&mut rng, 2, 6, 6);
        for n in [0, 1, 5, 17] {
            let t = tail_sum(&g, n).unwrap();
            let low = truncated(&g, n, 200);
            assert!(low <= t && t <= low + pow2(1 - n as i64 - 200));
        }
    }
}

#[test]
fn bounds_and_the_all_ones_case() {
    let mut rng = common::rng(3);
    for _ in 0..100 {
        let g = common::random_word(&mut rng, 2, 6, 6);
        for n in 0..20 {
            let t = tail_sum(&g, n).unwrap();
            let top = pow2(1 - n as i64);
            assert!(t >= Rational::zero() && t <= top);
            let all_ones = g.shift(n) == UpWord::constant(B, 1).unwrap();
            assert_eq!(t == top, all_ones);
        }
    }
    let ones = UpWord::constant(B, 1).unwrap();
    for n in 0..40 {
        assert_eq!(tail_sum(&ones, n).unwrap(), pow2(1 - n as i64));
    }
    let alt = bin(&[], &[1, 0]);
    assert_eq!(tail_sum(&alt, 0).unwrap(), q(4, 3));
    assert_eq!(tail_sum(&alt, 1).unwrap(), q(1, 3));
    assert_eq!(tail_sum(&alt, 2).unwrap(), q(1, 3));
}

#[test]
fn periodic_part_scales_geometrically() {
    let mut rng = common::rng(4);
    for _ in 0..100 {
        let g = common::random_word(&mut rng, 2, 5, 5);
        let p = g.period().len();
        for n in g.prefix().len()..g.prefix().len() + 12 {
            assert_eq!(
                tail_sum(&g, n + p).unwrap(),
                pow2(-(p as i64)) * tail_sum(&g, n).unwrap()
            );
        }
    }
}

#[test]
fn certified_windows_capture_every_extension() {
    let mut rng = common::rng(5);
    let mut checked = 0;
    while checked < 100 {
        let u = random_open_set(&mut rng, true);
        let i = rng.gen_range(0..8);
        let Ok((f, cert)) = challenge_from_open_set(&u, &IndexSpec::List(vec![i]), 12) else {
            continue;
        };
        assert!(cert.validate(&u));
        let rec = &cert.records[0];
        let w = f.get(i).unwrap();
        for _ in 0..20 {
            let mut prefix: Vec<Symbol> = (0..i).map(|_| rng.gen_range(0..2) as Symbol).collect();
            prefix.extend_from_slice(w);
            prefix.extend((0..32).map(|_| rng.gen_range(0..2) as Symbol));
            let period: Vec<Symbol> = (0..rng.gen_range(1..5))
                .map(|_| rng.gen_range(0..2))
                .collect();
            let g = UpWord::new(B, prefix, period).unwrap();
            let t = tail_sum(&g, i).unwrap();
            assert!(rec.window.0 <= t && t <= rec.window.1);
            assert!(rec.interval.0 < t && t < rec.interval.1);
        }
        checked += 1;
    }
}

#[test]
fn window_search_matches_enumeration() {
    let mut rng = common::rng(6);
    for _ in 0..200 {
        let u = random_open_set(&mut rng, true);
        let i = rng.gen_range(0..6);
        let depth = 7;
        let expected = (0..=depth).find_map(|len| {
            common::words_of_len(2, len).find(|w| {
                let (lo, hi) = window(i, w);
                u.intervals().iter().any(|(a, b)| *a < lo && hi < *b)
            })
        });
        match challenge_from_open_set(&u, &IndexSpec::List(vec![i]), depth) {
            Ok((f, _)) => assert_eq!(Some(f.get(i).unwrap().to_vec()), expected),
            Err(TailsumError::NoWindow { index, .. }) => {
                assert_eq!(index, i);
                assert_eq!(expected, None);
            }
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn infinitely_often_agrees_with_enumeration() {
    let mut rng = common::rng(7);
    for _ in 0..300 {
        let g = common::random_word(&mut rng, 2, 5, 5);
        let zero = rng.gen_bool(0.5);
        let u = random_open_set(&mut rng, zero);
        let out = hits_in_u(&g, &u, 128).unwrap();
        let late = out.hits.iter().any(|&n| n > 64);
        assert_eq!(out.infinitely_often, late, "{g} {u:?}");
        let brute: Vec<usize> = (0..=128)
            .filter(|&n| u.contains(&tail_sum(&g, n).unwrap()))
            .collect();
        assert_eq!(out.hits, brute);
    }
}

#[test]
fn witness_of_a_synthesized_schedule_lands_in_u() {
    let u = OpenSet1D::new(q(1, 2), vec![(Rational::zero(), q(1, 2))]).unwrap();
    let (f, cert) = challenge_from_open_set(&u, &IndexSpec::List(vec![1, 4, 9]), 8).unwrap();
    assert!(cert.validate(&u));
    let out = baire_witness(&f, &ConstraintSet::full(B).unwrap(), 0).unwrap();
    let hits = hits_in_u(&out.word, &u, 12).unwrap().hits;
    for i in out.consumed {
        assert!(hits.contains(&i));
    }
}

#[test]
fn corollary_with_small_epsilon() {
    let u = OpenSet1D::new(pow2(-5), vec![(Rational::zero(), pow2(-5))]).unwrap();
    let demo = corollary_demo(&u, 8, 3, 16, 64).unwrap();
    assert!(demo.certificate.validate(&u));
    assert!(demo.tail_hits.infinitely_often);
    assert!(demo.infinitely_many_ones);
    for r in &demo.certificate.records {
        assert!(r.window.1 < pow2(-5));
    }
}
