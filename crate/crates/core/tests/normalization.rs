//! Frame normalization must not change existence. The unnormalized search
//! is the slow part of the test suite (several minutes for order 9).

use planecode::antipodal::cyclic_antipodal;
use planecode::search::{embed_search, verify_embedding, SearchOptions, SearchStatus};
use planecode::{Field, Plane};

#[test]
fn normalized_and_unnormalized_searches_agree_up_to_order_nine() {
    for s in [2, 3] {
        let pls = cyclic_antipodal(s).unwrap();
        for (p, h) in [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
            let plane = Plane::pg2(&Field::new(p, h, None).unwrap()).unwrap();
            let fixed = embed_search(&pls, &plane, SearchOptions::default());
            let free = embed_search(&pls, &plane, SearchOptions { normalize: false, ..SearchOptions::default() });
            let q = plane.order();
            assert_ne!(free.status, SearchStatus::BudgetExceeded, "s={s} q={q}");
            assert_eq!(fixed.status, free.status, "s={s} q={q}");
            assert!(free.seed.is_none());
            for e in fixed.embeddings.iter().chain(&free.embeddings) {
                verify_embedding(&pls, &plane, e).unwrap();
            }
            println!("s={s} q={q}: {} ({} unnormalized nodes)", free.status.as_str(), free.stats.nodes);
        }
    }
}
