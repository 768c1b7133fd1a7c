mod common;

use csgdeck_core::cells::cell_contains;

#[test]
fn rpp_models_match_interval_brute_force() {
    let mut checked = 0usize;
    for seed in 0..50 {
        let m = common::random_rpp_model(1000 + seed);
        for c in &m.cells {
            for p in common::lattice(21) {
                let Some(expected) = common::rpp_brute_force(&m, &c.region, p) else {
                    continue;
                };
                assert_eq!(
                    cell_contains(&m, c.id, p).unwrap(),
                    expected,
                    "seed {seed} cell {} at {p:?}",
                    c.id
                );
                checked += 1;
            }
        }
    }
    assert!(checked > 50 * 4 * 9000, "{checked}");
}
