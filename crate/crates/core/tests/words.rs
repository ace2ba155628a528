use planecode::analyze::{
    analyze, extract_antipodal, extract_baer, AnalyzeError, CheckStatus, Classification, ColourGraph, Extraction,
};
use planecode::codes::{code_of_plane, is_dual_word};
use planecode::construct::{baer_diff, disjoint_image, line_diff, subplane_diff, ConstructError};
use planecode::geometry::{baer_subfield_subplane, subplane_from_points};
use planecode::{CodeWord, Field, Plane, SubplaneResult};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pg(p: u32, h: u32) -> Plane {
    Plane::pg2(&Field::new(p, h, None).unwrap()).unwrap()
}

fn bagchi(q: usize, p: usize) -> usize {
    // 2(q + 1 - q/p), with q/p an integer here
    2 * (q + 1 - q / p)
}

fn moved_subplane(plane: &Plane, b: &SubplaneResult, seed: u64) -> SubplaneResult {
    let field = plane.field().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let m = [[0u32; 3]; 3].map(|r| r.map(|_| field.element(rand::Rng::random_range(&mut rng, 0..field.order())).unwrap()));
        if let Ok(c) = planecode::geometry::Collineation::new(field, m) {
            let pts: Vec<usize> = b.points.iter().map(|&x| c.apply_point(plane, x).unwrap()).collect();
            return subplane_from_points(plane, &pts).unwrap();
        }
    }
}

#[test]
fn baer_diff_weights_and_colours() {
    for p in [2u32, 3, 5, 7] {
        let plane = pg(p, 2);
        let b = baer_subfield_subplane(&plane).unwrap();
        let (w, secant) = baer_diff(&plane, p, &b, None).unwrap();
        let pu = p as usize;
        assert_eq!(secant, b.lines[0]);
        assert_eq!(w.weight(), 2 * pu * pu - pu, "p={p}");
        assert!(is_dual_word(&w, &plane).unwrap().is_dual());
        assert!(w.weight() >= bagchi(pu * pu, pu));
        let classes = w.colour_classes();
        if p == 2 {
            assert_eq!(classes[1].len(), 6);
        } else {
            assert_eq!(classes[1].len(), pu * pu);
            assert_eq!(classes[pu - 1].len(), pu * pu - pu);
        }
    }
}

#[test]
fn baer_round_trip() {
    for (p, secants, images) in [(3u32, usize::MAX, 4u64), (5, 6, 2), (7, 3, 1)] {
        let plane = pg(p, 2);
        let base = baer_subfield_subplane(&plane).unwrap();
        let mut subs = vec![base.clone()];
        subs.extend((0..images).map(|s| moved_subplane(&plane, &base, s)));
        for b in &subs {
            for &l in b.lines.iter().take(secants) {
                let (w, _) = baer_diff(&plane, p, b, Some(l)).unwrap();
                for scale in [1, p - 1] {
                    let e = extract_baer(&w.scale(scale), &plane).unwrap();
                    assert_eq!(&e.subplane, b);
                    assert_eq!(e.secant, l);
                }
            }
        }
    }
}

#[test]
fn analyzer_on_baer_words() {
    for p in [3u32, 5, 7] {
        let plane = pg(p, 2);
        let b = baer_subfield_subplane(&plane).unwrap();
        let (w, _) = baer_diff(&plane, p, &b, None).unwrap();
        let a = analyze(&w, &plane, false).unwrap();
        assert_eq!(a.classification, Classification::Baer);
        assert_eq!(a.epsilon, Some(p as i64 - 2));
        assert_eq!(a.failures().count(), 0, "{:?}", a.failures().collect::<Vec<_>>());
        assert_eq!(a.tangents, 0);
        let gap = a.class_size(1).abs_diff(a.class_size(p as u8 - 1));
        assert_eq!(gap, p as usize);
        assert!(matches!(a.extraction, Some(Extraction::Baer(_))));
        if p >= 5 {
            assert_eq!(a.check("2secants").unwrap().status, CheckStatus::Pass);
            assert_eq!(a.check("0ofp").unwrap().status, CheckStatus::Pass);
        }
        assert_eq!(a.check("nrsecants").unwrap().status, CheckStatus::Pass);
    }
}

#[test]
fn line_diff_words() {
    for (p, h) in [(2, 2), (3, 2), (5, 2), (7, 1)] {
        let plane = pg(p, h);
        let w = line_diff(&plane, p, 0, 1).unwrap();
        assert_eq!(w.weight(), 2 * plane.order());
        let a = analyze(&w, &plane, false).unwrap();
        assert_eq!(a.failures().count(), 0);
        assert!(!a.in_band);
        assert!(matches!(extract_baer(&w, &plane), Err(AnalyzeError::StructureMismatch { .. })));
        assert!(matches!(extract_antipodal(&w, &plane), Err(AnalyzeError::StructureMismatch { .. })));
    }
    assert_eq!(line_diff(&pg(3, 1), 3, 2, 2), Err(ConstructError::SameLine));
}

#[test]
fn random_dual_words_pass_every_applicable_check() {
    for (p, h) in [(2, 2), (3, 2), (5, 1), (7, 1)] {
        let plane = pg(p, h);
        let dual = code_of_plane(&plane, p, false).unwrap().dual();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let w = dual.random_word(&mut rng);
            let a = analyze(&w, &plane, false).unwrap();
            assert_eq!(a.failures().count(), 0, "{:?}", a.failures().collect::<Vec<_>>());
            if !w.is_zero() {
                assert!(w.weight() >= bagchi(plane.order(), p as usize));
            }
            assert_eq!(a.colours.iter().map(|c| c.1).sum::<usize>(), a.weight);
        }
    }
}

#[test]
fn low_weight_dual_words_pass_every_applicable_check() {
    // sums of two or three line differences stay close to the interesting band
    let plane = pg(3, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let mut w = CodeWord::zero(3, plane.num_points()).unwrap();
        for _ in 0..rand::Rng::random_range(&mut rng, 1..4) {
            let l = rand::Rng::random_range(&mut rng, 0..plane.num_lines());
            let m = (l + rand::Rng::random_range(&mut rng, 1..plane.num_lines())) % plane.num_lines();
            let s = rand::Rng::random_range(&mut rng, 1..3);
            w = w.add(&line_diff(&plane, 3, l, m).unwrap().scale(s)).unwrap();
        }
        let a = analyze(&w, &plane, false).unwrap();
        assert_eq!(a.failures().count(), 0, "{:?}", a.failures().collect::<Vec<_>>());
    }
}

#[test]
fn canonical_scaling_uses_colour_one() {
    let plane = pg(5, 2);
    let b = baer_subfield_subplane(&plane).unwrap();
    let (w, _) = baer_diff(&plane, 5, &b, None).unwrap();
    let canon: Vec<CodeWord> = (1..5).map(|s| analyze(&w.scale(s), &plane, false).unwrap().canonical).collect();
    assert!(canon.windows(2).all(|c| c[0] == c[1]));
    assert!(canon[0].values().contains(&1));
}

// The path 1, p-1, 2, p-2, ... ending in a loop at (p+1)/2.
fn path_edges(p: u32) -> Vec<(u32, u32)> {
    let mut seq = Vec::new();
    let (mut lo, mut hi) = (1, p - 1);
    while lo <= hi {
        seq.push(lo);
        if lo != hi {
            seq.push(hi);
        }
        lo += 1;
        hi -= 1;
    }
    let mut edges: Vec<(u32, u32)> = seq.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]))).collect();
    let last = *seq.last().unwrap();
    edges.push((last, last));
    edges.sort_unstable();
    edges
}

#[test]
fn colour_graph_is_a_path_with_one_loop() {
    for p in (3u32..=31).filter(|&p| planecode::field::is_prime(p)) {
        let mut edges = Vec::new();
        for a in 1..p {
            for b in a..p {
                if ColourGraph::adjacent(p, a, b) {
                    edges.push((a, b));
                }
            }
        }
        assert_eq!(edges, path_edges(p), "p={p}");
        let g = ColourGraph::full(p);
        assert_eq!(g.components.len(), 1);
        assert_eq!(g.loops(), vec![(p + 1) / 2]);
        let leaves: Vec<u32> = (1..p).filter(|&a| ColourGraph::full_degree(p, a) == 1).collect();
        assert_eq!(leaves, vec![1]);
    }
}

#[test]
fn disjoint_baer_subplanes() {
    let plane = pg(3, 2);
    let b = baer_subfield_subplane(&plane).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let c = disjoint_image(&plane, &b.points, &mut rng, 1000).unwrap();
    let pts: Vec<usize> = b.points.iter().map(|&x| c.apply_point(&plane, x).unwrap()).collect();
    let other = subplane_from_points(&plane, &pts).unwrap();
    assert!(b.is_disjoint(&other));
    let (w, verdict) = subplane_diff(&plane, 3, &b, &other).unwrap();
    assert_eq!(w.weight(), 26);
    assert_eq!(verdict, is_dual_word(&w, &plane).unwrap());
    println!("two disjoint Baer subplanes of PG(2,9): dual = {}", verdict.is_dual());
}

#[test]
fn non_dual_words_never_extract() {
    let plane = pg(3, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // random words with antipodal-sized classes
    for _ in 0..100 {
        let mut idx: Vec<usize> = (0..plane.num_points()).collect();
        for i in (1..idx.len()).rev() {
            idx.swap(i, rand::Rng::random_range(&mut rng, 0..=i));
        }
        let pairs: Vec<(usize, u8)> = idx[..8].iter().map(|&x| (x, 1)).chain(idx[8..16].iter().map(|&x| (x, 2))).collect();
        let w = CodeWord::from_pairs(3, plane.num_points(), pairs).unwrap();
        if is_dual_word(&w, &plane).unwrap().is_dual() {
            continue;
        }
        assert!(matches!(
            extract_antipodal(&w, &plane),
            Err(AnalyzeError::StructureMismatch { step: "precondition", .. })
        ));
        let a = analyze(&w, &plane, true).unwrap();
        assert!(!a.dual);
        assert!(a.extraction.is_none());
        assert!(a.checks.iter().all(|c| c.status == CheckStatus::NotApplicable));
    }
}
