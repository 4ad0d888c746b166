//! Prints the Table-4 counts for `2 <= m <= MAX` (default 10) with timings.

use std::time::Instant;

use dsfaces::enumeration::{reference_table4, table4_row};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(10);
    let workers: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(1);
    for m in 2..=max {
        let t = Instant::now();
        let row = table4_row(m, workers).expect("enumeration");
        let flag = match reference_table4(m) {
            Some(r) if r == row => "ok",
            Some(_) => "MISMATCH",
            None => "-",
        };
        println!(
            "{m:>3} {:>10} {:>10} {:>10}  {flag}  {:.2?}",
            row.col1,
            row.col2,
            row.col3,
            t.elapsed()
        );
    }
}
