use planecode::antipodal::{
    antipodal_from_pg24, cyclic_antipodal, fano_complement, find_good_triangle, find_isomorphism,
    good_triangles, is_good_triangle, mobius_kantor_in, mobius_kantor_roots, validate_antipodal, AntipodalAxiom,
    AntipodalError, PartialLinearSpace,
};
use planecode::geometry::subplane_search;
use planecode::{Field, Plane};

// Antipodes recomputed from scratch: the unique point sharing no line.
fn brute_perp_points(pls: &PartialLinearSpace) -> Vec<usize> {
    let n = pls.num_points();
    (0..n)
        .map(|a| {
            let far: Vec<usize> = (0..n)
                .filter(|&b| b != a && !pls.lines().iter().any(|l| l.contains(&(a as u32)) && l.contains(&(b as u32))))
                .collect();
            assert_eq!(far.len(), 1);
            far[0]
        })
        .collect()
}

fn brute_perp_lines(pls: &PartialLinearSpace) -> Vec<usize> {
    let lines = pls.lines();
    (0..lines.len())
        .map(|l| {
            let far: Vec<usize> = (0..lines.len())
                .filter(|&m| m != l && lines[m].iter().all(|x| !lines[l].contains(x)))
                .collect();
            assert_eq!(far.len(), 1);
            far[0]
        })
        .collect()
}

fn check_model(pls: &PartialLinearSpace, s: usize) {
    let ap = validate_antipodal(pls).unwrap();
    let total = s * s + s + 2;
    assert_eq!(ap.order(), s);
    assert_eq!((pls.num_points(), pls.num_lines()), (total, total));
    assert!(pls.lines().iter().all(|l| l.len() == s + 1));
    assert!((0..total).all(|p| pls.lines_through(p).len() == s + 1));
    let pp = brute_perp_points(pls);
    let lp = brute_perp_lines(pls);
    for p in 0..total {
        assert_eq!(ap.perp_point(p), pp[p]);
        assert_eq!(pp[pp[p]], p);
    }
    for l in 0..total {
        assert_eq!(ap.perp_line(l), lp[l]);
        assert_eq!(lp[lp[l]], l);
        for &p in pls.line(l) {
            assert!(pls.incident(pp[p as usize], lp[l]), "perp collinearity at {p}, {l}");
        }
    }
}

#[test]
fn cyclic_models() {
    let a2 = cyclic_antipodal(2).unwrap();
    check_model(&a2, 2);
    assert_eq!(a2.line(0), &[0, 1, 3]);
    let a3 = cyclic_antipodal(3).unwrap();
    check_model(&a3, 3);
    assert_eq!(a3.line(0), &[0, 1, 4, 6]);
}

#[test]
fn pg24_complement_model() {
    let m = antipodal_from_pg24();
    check_model(&m, 3);
    let (pm, lm) = find_isomorphism(&m, &cyclic_antipodal(3).unwrap()).unwrap();
    let target = cyclic_antipodal(3).unwrap();
    for (l, row) in m.lines().iter().enumerate() {
        let mut img: Vec<u32> = row.iter().map(|&x| pm[x as usize] as u32).collect();
        img.sort_unstable();
        assert_eq!(target.line(lm[l]), img.as_slice());
    }
}

#[test]
fn every_fano_complement_in_pg24_is_the_same_model() {
    let plane = Plane::pg2(&Field::new(2, 2, None).unwrap()).unwrap();
    let fanos = subplane_search(&plane, 2, usize::MAX, u64::MAX).unwrap().subplanes;
    let cyc = cyclic_antipodal(3).unwrap();
    for f in fanos.iter().step_by(12) {
        let (pls, points, _) = fano_complement(&plane, f).unwrap();
        assert_eq!(points.len(), 14);
        check_model(&pls, 3);
        assert!(find_isomorphism(&pls, &cyc).is_some());
    }
}

#[test]
fn mobius_kantor_over_fields_with_roots() {
    for (p, h) in [(3, 1), (7, 1), (2, 2), (13, 1), (3, 2), (2, 4)] {
        let field = Field::new(p, h, None).unwrap();
        let plane = Plane::pg2(&field).unwrap();
        let roots = mobius_kantor_roots(&field);
        assert!(!roots.is_empty(), "q={}", field.order());
        for w in roots {
            let (pls, idx, lines) = mobius_kantor_in(&plane, w).unwrap();
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), 8);
            assert_eq!(lines.len(), 8);
            check_model(&pls, 2);
        }
    }
    for (p, h) in [(5, 1), (2, 3), (11, 1)] {
        assert!(mobius_kantor_roots(&Field::new(p, h, None).unwrap()).is_empty());
    }
}

#[test]
fn broken_structures_name_the_axiom() {
    let mut lines = cyclic_antipodal(2).unwrap().rows();
    lines.pop();
    let pls = PartialLinearSpace::new(8, &lines).unwrap();
    assert!(matches!(
        validate_antipodal(&pls),
        Err(AntipodalError::NotAntipodal { axiom: AntipodalAxiom::LineCount, .. })
    ));
    // two lines sharing two points
    assert!(matches!(
        PartialLinearSpace::new(4, &[vec![0, 1, 2], vec![0, 1, 3]]),
        Err(AntipodalError::NotPartialLinearSpace(_))
    ));
}

#[test]
fn good_triangles_order_three() {
    let ap = validate_antipodal(&cyclic_antipodal(3).unwrap()).unwrap();
    let first = find_good_triangle(&ap).unwrap();
    let all: Vec<[usize; 3]> = good_triangles(&ap).collect();
    assert_eq!(all[0], first);
    // brute force: sides are structure lines, antipodes avoid every side
    let pls = ap.pls();
    let n = pls.num_points();
    let mut brute = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let sides = [pls.line_of(a, b), pls.line_of(a, c), pls.line_of(b, c)];
                let Some(sides) = sides.iter().copied().collect::<Option<Vec<_>>>() else {
                    continue;
                };
                if sides[0] == sides[1] {
                    continue;
                }
                if [a, b, c].iter().all(|&v| sides.iter().all(|&l| !pls.incident(ap.perp_point(v), l))) {
                    brute.push([a, b, c]);
                }
            }
        }
    }
    assert_eq!(all, brute);
    assert!(all.iter().all(|&t| is_good_triangle(&ap, t)));
}
