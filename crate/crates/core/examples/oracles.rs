//! Runs the brute-force oracles and compares them with the engine.

use std::time::Instant;

use dsfaces::enumeration::{ds_fvectors, oracle_box, oracle_powerset, EnumOptions, ParityClass};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    for m in 2..=max {
        let t = Instant::now();
        let o = oracle_box(m).expect("box oracle");
        let e_match = ds_fvectors(m, ParityClass::Matching, &EnumOptions::default()).expect("engine");
        let e_opp = ds_fvectors(m, ParityClass::Opposite, &EnumOptions::default()).expect("engine");
        let agree = o.matching == e_match.points.expect("points").to_vecs()
            && o.opposite == e_opp.points.expect("points").to_vecs();
        let ps = if m <= 4 {
            let p = oracle_powerset(m).expect("powerset oracle");
            format!("powerset agrees: {}", p.matching == o.matching && p.opposite == o.opposite)
        } else {
            String::new()
        };
        println!(
            "m={m} box classes ({}, {}) scanned {} engine agrees: {agree} {ps} {:.2?}",
            o.matching.len(),
            o.opposite.len(),
            o.scanned,
            t.elapsed()
        );
    }
}
