//! A certified upper bound for `{a, b, n}` at given targets, checked
//! against the exact oracle.
//!
//!     cargo run --example greedy_certificate -- 1 2 100 0 1/2 1/3

use kronlab::{greedy_en_certificate, mu_exact, Error, Rational, SpectrumProblem, TripleProblem};

fn main() -> kronlab::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (a, b, n, targets) = match args.as_slice() {
        [a, b, n, t1, t2, t3] => (
            a.parse().map_err(|_| Error::Parse(a.clone()))?,
            b.parse().map_err(|_| Error::Parse(b.clone()))?,
            n.parse().map_err(|_| Error::Parse(n.clone()))?,
            [t1.parse()?, t2.parse()?, t3.parse()?],
        ),
        _ => (
            1,
            2,
            100,
            [Rational::zero(), Rational::half(), Rational::new(1, 3)],
        ),
    };
    let p = TripleProblem::from_parts(a, b, n, targets.clone())?;
    let cert = match greedy_en_certificate(&p) {
        Ok(c) => c,
        Err(Error::NotInAsymptoticRegime { best_effort, .. }) => {
            println!("n is too small for the E_n construction; using the plain greedy bound");
            *best_effort
        }
        Err(e) => return Err(e),
    };
    let oracle = mu_exact(&SpectrumProblem::new(vec![a, b, n], targets.to_vec())?);

    println!(
        "certificate x* = {}  k = {:?}",
        cert.x_star,
        cert.k.iter().map(|k| k.to_string()).collect::<Vec<_>>()
    );
    println!(
        "            cost {}  via {:?}  negated {}",
        cert.cost, cert.method, cert.negated
    );
    println!("re-evaluates     {}", cert.verify(&p));
    println!("oracle           {} at x = {}", oracle.value, oracle.x_star);
    assert!(cert.cost >= oracle.value);
    Ok(())
}
