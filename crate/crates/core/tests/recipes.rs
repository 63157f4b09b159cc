use waring4_core::atlas::{atlas_instance, CONFIGURATIONS};
use waring4_core::decompose::verify_decomposition;

fn run(m: usize, d: usize, seeds: u64) -> Vec<String> {
    let mut bad = Vec::new();
    for (tag, s) in CONFIGURATIONS {
        if *s > m {
            continue;
        }
        for seed in 0..seeds {
            match atlas_instance(tag, m, d, seed) {
                Ok(e) => {
                    if let (Some(f), Some(w)) = (&e.form, &e.witness) {
                        let rep = verify_decomposition(f, w);
                        if !(rep.member && rep.irredundant) {
                            bad.push(format!("{tag} m={m} d={d} seed={seed}: witness not irredundant"));
                        }
                        if Some(w.total_size()) != e.classification.verdict.rank() {
                            bad.push(format!("{tag} m={m} d={d} seed={seed}: size {} against {:?}", w.total_size(), e.classification.verdict));
                        }
                    }
                }
                Err(err) => bad.push(format!("{tag} m={m} d={d} seed={seed}: {err}")),
            }
        }
    }
    bad
}

#[test]
fn every_recipe_in_the_plane_and_space() {
    let mut bad = Vec::new();
    for (m, d) in [(2, 3), (2, 4), (2, 6), (3, 3), (3, 4), (3, 5)] {
        bad.extend(run(m, d, 2));
    }
    assert!(bad.is_empty(), "{}", bad.join("\n"));
}
