use std::collections::HashSet;

use planecode::codes::{code_of_plane, is_dual_word, CodeError, DualVerdict, GfpMatrix, DEFAULT_ENUM_BUDGET};
use planecode::{CodeWord, Field, LinearCode, Plane};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pg(p: u32, h: u32) -> Plane {
    Plane::pg2(&Field::new(p, h, None).unwrap()).unwrap()
}

fn binom(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn dimension_formula() {
    let cases = [
        (2, 1, 4),
        (3, 1, 7),
        (2, 2, 10),
        (5, 1, 16),
        (7, 1, 29),
        (2, 3, 28),
        (3, 2, 37),
        (2, 4, 82),
        (5, 2, 226),
    ];
    for (p, h, expected) in cases {
        let code = code_of_plane(&pg(p, h), p, false).unwrap();
        let formula = binom(p as u64 + 1, 2).pow(h) + 1;
        assert_eq!(formula, expected);
        assert_eq!(code.dimension() as u64, expected, "p={p} h={h}");
        assert_eq!(code.dual().dimension() + code.dimension(), code.length());
    }
}

// Span of all line vectors, closed by brute force.
fn span(plane: &Plane, p: u32) -> HashSet<Vec<u8>> {
    let n = plane.num_points();
    let mut set: HashSet<Vec<u8>> = HashSet::from([vec![0u8; n]]);
    for l in 0..plane.num_lines() {
        let mut next = set.clone();
        for v in &set {
            let mut w = v.clone();
            for _ in 1..p {
                for &x in plane.points_on(l) {
                    w[x as usize] = ((w[x as usize] as u32 + 1) % p) as u8;
                }
                next.insert(w.clone());
            }
        }
        set = next;
    }
    set
}

#[test]
fn rank_matches_brute_force_span() {
    for (p, h) in [(2, 1), (3, 1), (2, 2)] {
        let plane = pg(p, h);
        let s = span(&plane, p);
        let code = code_of_plane(&plane, p, false).unwrap();
        assert_eq!(s.len() as u64, (p as u64).pow(code.dimension() as u32));
        for v in &s {
            let w = CodeWord::from_values(p, v.clone()).unwrap();
            assert!(code.contains(&w).unwrap());
        }
    }
}

#[test]
fn primal_minimum_weight_is_the_lines() {
    for (p, h) in [(2, 1), (3, 1), (2, 2)] {
        let plane = pg(p, h);
        let code = code_of_plane(&plane, p, false).unwrap();
        let mw = code.enumerate_min_weight(DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(mw.weight, plane.order() + 1);
        let mut expected: Vec<CodeWord> = (0..plane.num_lines())
            .flat_map(|l| {
                let line = CodeWord::line(p, &plane, l).unwrap();
                (1..p).map(move |s| line.scale(s))
            })
            .collect();
        expected.sort_by(|a, b| a.values().cmp(b.values()));
        assert_eq!(mw.words, expected);
    }
}

// Minimum weight over every message, encoded one by one.
fn brute_min_weight(code: &LinearCode) -> (usize, usize) {
    let k = code.dimension();
    let p = code.p() as u64;
    let mut best = (usize::MAX, 0);
    for n in 1..p.pow(k as u32) {
        let msg: Vec<u8> = (0..k).map(|i| (n / p.pow(i as u32) % p) as u8).collect();
        let w = code.encode(&msg).unwrap().weight();
        if w < best.0 {
            best = (w, 1);
        } else if w == best.0 {
            best.1 += 1;
        }
    }
    best
}

#[test]
fn dual_minimum_weights() {
    for (p, h, words, weight) in [(2, 1, 8, 4), (2, 2, 2048, 6), (3, 1, 729, 6)] {
        let plane = pg(p, h);
        let dual = code_of_plane(&plane, p, false).unwrap().dual();
        assert_eq!((p as usize).pow(dual.dimension() as u32), words);
        let mw = dual.enumerate_min_weight(DEFAULT_ENUM_BUDGET).unwrap();
        assert_eq!(mw.weight, weight, "q={}", plane.order());
        assert_eq!((mw.weight, mw.words.len()), brute_min_weight(&dual));
        for w in &mw.words {
            assert!(is_dual_word(w, &plane).unwrap().is_dual());
        }
    }
}

#[test]
fn enumeration_respects_the_budget() {
    let dual = code_of_plane(&pg(3, 2), 3, false).unwrap().dual();
    assert_eq!(
        dual.enumerate_min_weight(DEFAULT_ENUM_BUDGET),
        Err(CodeError::BudgetExceeded { k: 54, p: 3 })
    );
}

#[test]
fn dual_is_orthogonal_to_every_line() {
    for (p, h) in [(2, 2), (3, 1), (5, 1), (2, 3), (3, 2)] {
        let plane = pg(p, h);
        let code = code_of_plane(&plane, p, false).unwrap();
        let dual = code.dual();
        let g = dual.generator();
        for r in 0..g.rows() {
            let w = CodeWord::from_values(p, g.row(r).to_vec()).unwrap();
            assert_eq!(is_dual_word(&w, &plane).unwrap(), DualVerdict::Dual);
            assert!(dual.contains(&w).unwrap());
        }
        for l in 0..plane.num_lines() {
            let line = CodeWord::line(p, &plane, l).unwrap();
            assert!(code.contains(&line).unwrap());
        }
    }
}

#[test]
fn prime_mismatch_needs_the_override() {
    let plane = pg(2, 2);
    assert_eq!(code_of_plane(&plane, 3, false).unwrap_err(), CodeError::PrimeMismatch { order: 4, p: 3 });
    // over a foreign prime the incidence matrix is invertible
    let c = code_of_plane(&plane, 3, true).unwrap();
    assert_eq!(c.dimension(), 21);
}

#[test]
fn rref_rank_of_small_matrices() {
    let m = GfpMatrix::from_rows(5, 3, &[vec![1, 2, 3], vec![0, 1, 1], vec![1, 3, 4]]).unwrap();
    // third row = first + second
    assert_eq!(m.rank(), 2);
}

fn dual_words(p: u32, h: u32, count: usize, seed: u64) -> (Plane, Vec<CodeWord>) {
    let plane = pg(p, h);
    let dual = code_of_plane(&plane, p, false).unwrap().dual();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let words = (0..count).map(|_| dual.random_word(&mut rng)).collect();
    (plane, words)
}

#[test]
fn mu_identities_on_random_dual_words() {
    for (p, h) in [(3, 1), (5, 1), (7, 1), (3, 2)] {
        let (plane, words) = dual_words(p, h, 200, 7);
        for w in words {
            let pw = p as u64 * w.weight() as u64;
            assert_eq!(w.mu() + w.neg().mu(), pw);
            for l in 0..plane.num_lines() {
                assert_eq!(w.mu_on(plane.points_on(l)) % p as u64, 0);
            }
            assert_eq!(w.mu() % p as u64, 0);
            let zero_lines = (0..plane.num_lines()).filter(|&l| {
                plane.points_on(l).iter().filter(|&&x| w.value(x as usize) != 0).count() == 1
            });
            assert_eq!(zero_lines.count(), 0, "a dual word has no tangents");
        }
    }
}

fn small_word(p: u32, len: usize) -> impl Strategy<Value = CodeWord> {
    proptest::collection::vec(0..p as u8, len).prop_map(move |v| CodeWord::from_values(p, v).unwrap())
}

proptest! {
    #[test]
    fn word_arithmetic_laws(a in small_word(7, 30), b in small_word(7, 30), s in 1u32..7) {
        prop_assert_eq!(a.add(&b).unwrap().diff(&b).unwrap(), a.clone());
        prop_assert_eq!(a.add(&a.neg()).unwrap().weight(), 0);
        prop_assert_eq!(a.scale(s).weight(), a.weight());
        prop_assert!(a.scale(s).same_up_to_scalar(&a));
        prop_assert_eq!(a.mu() + a.neg().mu(), 7 * a.weight() as u64);
        let classes = a.colour_classes();
        prop_assert_eq!(classes.iter().skip(1).map(Vec::len).sum::<usize>(), a.weight());
        let n = a.normalized();
        if !a.is_zero() {
            prop_assert_eq!(n.value(n.support()[0]), 1);
        }
    }

    #[test]
    fn membership_is_linear(seed in 0u64..1000) {
        let plane = pg(5, 1);
        let dual = code_of_plane(&plane, 5, false).unwrap().dual();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = dual.random_word(&mut rng);
        let b = dual.random_word(&mut rng);
        let c = a.scale(3).add(&b).unwrap();
        prop_assert!(dual.contains(&c).unwrap());
        prop_assert!(is_dual_word(&c, &plane).unwrap().is_dual());
    }
}
