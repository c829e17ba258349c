//! Residues, the two constants, and the extremal witness for `{a, b, n}`.
//!
//!     cargo run --example closed_forms -- 1 2 100

use kronlab::closed_form::{binary_mu, regime_conditions, BinaryTarget};
use kronlab::{alpha_formula, alpha_witness, beta_formula, congruence_data, ln_value, Triple};

fn main() -> kronlab::Result<()> {
    let nums: Vec<i64> = std::env::args()
        .skip(1)
        .filter_map(|s| s.parse().ok())
        .collect();
    let t = match nums.as_slice() {
        [a, b, n] => Triple::new(*a, *b, *n)?,
        _ => Triple::new(1, 2, 100)?,
    };
    let c = congruence_data(&t);
    println!(
        "{t}: r = {}  T = {}  R = {}  S = {}",
        c.r, c.t_inv, c.big_r, c.s
    );

    let alpha = alpha_formula(&t);
    println!(
        "alpha = {} ({:?}, {:?})",
        alpha.value, alpha.case, alpha.regime
    );
    println!("beta  = {}", beta_formula(&t).value);
    println!("L_n   = {}", ln_value(&t));
    for t3 in [BinaryTarget::Zero, BinaryTarget::Half] {
        let row = binary_mu(&t, t3);
        println!(
            "binary t3 = {:<3} -> {}  [{}]",
            t3.value().to_string(),
            row.value,
            row.case
        );
    }

    let w = alpha_witness(&t);
    println!(
        "witness ({}, {}, {})  raw t3 = {}  expected cost {}",
        w.targets[0], w.targets[1], w.targets[2], w.raw_t3, w.expected
    );
    println!("regime conditions: {:?}", regime_conditions(&t));
    Ok(())
}
