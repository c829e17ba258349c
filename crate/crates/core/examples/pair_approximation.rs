//! Best and second-best balanced approximates for a pair `{a, b}`.
//!
//!     cargo run --example pair_approximation -- 2 5 1/3 0

use kronlab::{best_pair_approx, mu_pair, second_best_approx, PairProblem, Rational};

fn main() -> kronlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b, t1, t2) = match args.as_slice() {
        [a, b, t1, t2] => (
            a.parse().map_err(|_| kronlab::Error::Parse(a.clone()))?,
            b.parse().map_err(|_| kronlab::Error::Parse(b.clone()))?,
            t1.parse()?,
            t2.parse()?,
        ),
        _ => (2, 5, Rational::new(1, 3), Rational::zero()),
    };
    let p = PairProblem::new(a, b, t1, t2)?;
    let best = best_pair_approx(&p);
    let second = second_best_approx(&p, &best);

    println!("pair {{{a}, {b}}}, targets ({}, {})", p.t1(), p.t2());
    println!("mu        {}", mu_pair(&p));
    for (label, ba) in [("best", &best), ("second", &second)] {
        println!(
            "{label:<9} x = {}  k = ({}, {})  lambda = {}  sign {:?}",
            ba.x, ba.k1, ba.k2, ba.lambda, ba.sign
        );
    }
    println!(
        "lambda + lambda' = {} = 1/{}",
        &best.lambda + &second.lambda,
        a + b
    );
    Ok(())
}
