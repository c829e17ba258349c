//! Grid lower bound for the angular constant of any finite set.
//!
//!     cargo run --release --example grid_lower_bound -- 24 1 2 7

use kronlab::alpha_grid_lower_bound;

fn main() -> kronlab::Result<()> {
    let nums: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (d, set) = match nums.split_first() {
        Some((d, rest)) if !rest.is_empty() => (*d, rest.to_vec()),
        _ => (24, vec![1, 2, 7]),
    };
    let e = alpha_grid_lower_bound(&set, d)?;
    let argmax: Vec<String> = e.argmax.iter().map(ToString::to_string).collect();
    println!(
        "alpha({set:?}) >= {}  at ({})  over {} targets with denominator {d}",
        e.value,
        argmax.join(", "),
        e.targets_evaluated
    );
    Ok(())
}
