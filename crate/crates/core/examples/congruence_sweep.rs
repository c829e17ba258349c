//! Constants along `n = from..=to` for a fixed pair, as CSV on stdout.
//!
//!     cargo run --release --example congruence_sweep -- 1 2 96 104

use kronlab::report::{rows_to_csv, sweep};

fn main() -> kronlab::Result<()> {
    let nums: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (a, b, from, to) = match nums.as_slice() {
        [a, b, from, to] => (*a, *b, *from, *to),
        _ => (1, 2, 96, 104),
    };
    let rows: Vec<_> = sweep(a, b, from, to, 0)?
        .into_iter()
        .map(|e| e.row)
        .collect();
    print!("{}", rows_to_csv(&rows));
    Ok(())
}
