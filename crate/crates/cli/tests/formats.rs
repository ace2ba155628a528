use planecode::antipodal::{antipodal_from_pg24, cyclic_antipodal};
use planecode::codes::{is_dual_word, CodeWord};
use planecode::{Field, Plane};
use planecode_cli::formats::{read_plane, read_pls, read_word, write_plane, write_pls, write_word, FormatError, WordJson};
use proptest::prelude::*;

const ORDERS: [(u32, u32); 7] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)];

fn word_strategy() -> impl Strategy<Value = CodeWord> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..120).prop_flat_map(|(p, n)| {
        prop::collection::vec(0..p as u8, n).prop_map(move |v| {
            let pairs: Vec<(usize, u8)> = v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect();
            CodeWord::from_pairs(p, n, pairs).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn word_text_round_trip(w in word_strategy()) {
        prop_assert_eq!(read_word(&write_word(&w)).unwrap(), w);
    }

    #[test]
    fn word_json_round_trip(w in word_strategy()) {
        let j = serde_json::to_string(&WordJson::from(&w)).unwrap();
        let back: WordJson = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back.to_word().unwrap(), w);
    }

    #[test]
    fn plane_round_trip(i in 0..ORDERS.len()) {
        let (p, h) = ORDERS[i];
        let plane = Plane::pg2(&Field::new(p, h, None).unwrap()).unwrap();
        let back = read_plane(&write_plane(&plane), "t").unwrap();
        prop_assert_eq!(back.rows(), plane.rows());
    }
}

#[test]
fn pls_round_trip() {
    for pls in [cyclic_antipodal(2).unwrap(), cyclic_antipodal(3).unwrap(), antipodal_from_pg24()] {
        assert_eq!(read_pls(&write_pls(&pls)).unwrap(), pls);
    }
}

#[test]
fn ingested_plane_keeps_codes() {
    let plane = Plane::pg2(&Field::new(2, 2, None).unwrap()).unwrap();
    let back = read_plane(&write_plane(&plane), "t").unwrap();
    assert!(!back.is_generated());
    let w = CodeWord::line(2, &back, 0).unwrap().diff(&CodeWord::line(2, &back, 1).unwrap()).unwrap();
    assert!(is_dual_word(&w, &back).unwrap().is_dual());
}

#[test]
fn corrupted_plane_is_rejected() {
    let plane = Plane::pg2(&Field::prime(3).unwrap()).unwrap();
    let text = write_plane(&plane);
    // swap one point on one line for another
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    lines[1] = lines[1].replacen(char::is_numeric, "9", 1);
    let bad = lines.join("\n");
    assert!(read_plane(&bad, "bad").is_err());
    assert!(matches!(read_plane("plane n=3 points=13\n", "x"), Err(FormatError::Syntax { .. })));
}

#[test]
fn malformed_words() {
    for bad in [
        "word p=3 len=5\n1:1\n1:2\n",
        "word p=3 len=5\n2:1\n1:2\n",
        "word p=3 len=5\n7:1\n",
        "word p=3 len=5\n1:3\n",
        "word p=3 len=5\n1:0\n",
        "word p=4 len=5\n",
        "wurd p=3 len=5\n",
    ] {
        assert!(read_word(bad).is_err(), "{bad:?} accepted");
    }
}
