//! Brute-force binary constant of any finite set, compared with the closed
//! form when the set is a triple.
//!
//!     cargo run --release --example binary_constant -- 1 2 100

use kronlab::oracle::DEFAULT_BINARY_CAP;
use kronlab::{beta_exact, beta_formula, Triple};

fn main() -> kronlab::Result<()> {
    let mut set: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    if set.is_empty() {
        set = vec![1, 2, 100];
    }
    let e = beta_exact(&set, DEFAULT_BINARY_CAP)?;
    let argmax: Vec<String> = e.argmax.iter().map(ToString::to_string).collect();
    println!(
        "beta({set:?}) = {}  at ({})  after {} targets",
        e.value,
        argmax.join(", "),
        e.targets_evaluated
    );
    if let [a, b, n] = set[..] {
        if let Ok(t) = Triple::new(a, b, n) {
            let f = beta_formula(&t);
            println!(
                "closed form {} ({:?})  agrees {}",
                f.value,
                f.regime,
                f.value == e.value
            );
        }
    }
    Ok(())
}
