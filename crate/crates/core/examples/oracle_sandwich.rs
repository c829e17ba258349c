//! Pins the angular constant of `{a, b, n}` from both sides: the oracle at
//! the witness gives a lower bound, greedy certificates on random targets
//! stay below it.
//!
//!     cargo run --release --example oracle_sandwich -- 2 3 304 500

use kronlab::report::random_targets;
use kronlab::{
    alpha_formula, alpha_witness, greedy_en_certificate, mu_exact, SpectrumProblem, Triple,
    TripleProblem,
};

fn main() -> kronlab::Result<()> {
    let nums: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let (t, samples) = match nums.as_slice() {
        [a, b, n, s] => (Triple::new(*a, *b, *n)?, *s as usize),
        [a, b, n] => (Triple::new(*a, *b, *n)?, 500),
        _ => (Triple::new(2, 3, 304)?, 500),
    };
    let alpha = alpha_formula(&t).value;
    let w = alpha_witness(&t);
    let lower = mu_exact(&SpectrumProblem::new(
        t.spectrum().to_vec(),
        w.targets.to_vec(),
    )?)
    .value;
    println!("{t}: alpha formula {alpha}, oracle at witness {lower}");

    let mut worst = kronlab::Rational::zero();
    let mut failures = 0;
    for targets in random_targets(1, samples, 60) {
        let p = TripleProblem::new(t, targets);
        match greedy_en_certificate(&p) {
            Ok(c) if c.cost <= alpha => worst = worst.max(c.cost),
            _ => failures += 1,
        }
    }
    println!("greedy: worst certified cost {worst} over {samples} targets, {failures} above alpha");
    println!(
        "sandwich {}",
        if lower == alpha && failures == 0 {
            "holds"
        } else {
            "fails"
        }
    );
    Ok(())
}
