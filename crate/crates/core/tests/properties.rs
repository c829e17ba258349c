mod common;

use common::{big, coprime_pair, q, rational, spectrum_with_targets};
use kronlab::closed_form::{alpha_formula, in_asymptotic_regime};
use kronlab::report::{parse_csv, parse_json, rows_to_csv, rows_to_json, SweepRow, Verification};
use kronlab::{
    best_pair_approx, greedy_bound, greedy_en_certificate, mu_exact, mu_pair, second_best_approx,
    toggle_reduce, PairProblem, Rational, SpectrumProblem, Triple, TripleProblem,
};
use proptest::prelude::*;

fn mu(s: &[i64], t: Vec<Rational>) -> Rational {
    mu_exact(&SpectrumProblem::new(s.to_vec(), t).unwrap()).value
}

fn pair_problem() -> impl Strategy<Value = PairProblem> {
    (coprime_pair(12), rational(40, 3), rational(40, 3))
        .prop_map(|((a, b), t1, t2)| PairProblem::new(a, b, t1, t2).unwrap())
}

fn triple_problem() -> impl Strategy<Value = TripleProblem> {
    (
        coprime_pair(6),
        0i64..200,
        rational(30, 1),
        rational(30, 1),
        rational(30, 1),
    )
        .prop_map(|((a, b), extra, t1, t2, t3)| {
            TripleProblem::from_parts(a, b, b + 1 + extra, [t1, t2, t3]).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn translation_invariance((s, t) in spectrum_with_targets(4, 20), c in rational(24, 1)) {
        let shifted: Vec<Rational> = s.iter().zip(&t).map(|(&n, tj)| tj + n * &c).collect();
        prop_assert_eq!(mu(&s, t), mu(&s, shifted));
    }

    #[test]
    fn integer_shifts_of_targets((s, t) in spectrum_with_targets(4, 20), k in -3i64..=3) {
        let shifted: Vec<Rational> = t.iter().enumerate().map(|(j, tj)| tj + (k + j as i64)).collect();
        prop_assert_eq!(mu(&s, t), mu(&s, shifted));
    }

    #[test]
    fn negation_invariance((s, t) in spectrum_with_targets(4, 20)) {
        let neg: Vec<Rational> = t.iter().map(|x| -x).collect();
        prop_assert_eq!(mu(&s, t), mu(&s, neg));
    }

    #[test]
    fn toggling_keeps_cost(
        (s, t) in common::spectrum(5, 20).prop_flat_map(|s| {
            let d = s.len();
            (Just(s), proptest::collection::vec(prop_oneof![Just(q("0")), Just(q("1/2"))], d))
        })
    ) {
        let toggled = toggle_reduce(&s, &t).unwrap();
        prop_assert_eq!(mu(&s, t), mu(&s, toggled));
    }

    #[test]
    fn pair_closed_form_matches_oracle(p in pair_problem()) {
        let exact = mu(&[p.a(), p.b()], vec![p.t1().clone(), p.t2().clone()]);
        prop_assert_eq!(mu_pair(&p), exact);
    }

    #[test]
    fn pair_complement_law(p in pair_problem()) {
        let best = best_pair_approx(&p);
        let second = second_best_approx(&p, &best);
        prop_assert!(best.is_balanced(&p));
        prop_assert!(second.is_balanced(&p));
        prop_assert_eq!(&best.lambda + &second.lambda, Rational::new(1, p.a() + p.b()));
        prop_assert_eq!(best.lambda.clone(), mu_pair(&p));
    }

    #[test]
    fn balanced_solutions_are_unique_mod_one(p in pair_problem(), s in -50i64..=50) {
        let best = best_pair_approx(&p);
        let moved = p.balanced_at(&best.k1 + big(p.a() * s), &best.k2 + big(p.b() * s));
        prop_assert_eq!(&moved.x - &best.x, Rational::from(s));
        prop_assert_eq!(moved.residual_a(&p), best.residual_a(&p));
        // any other pair of integers with the same signed residual is such a shift
        let (a, b) = (p.a(), p.b());
        for dj1 in -2 * a..=2 * a {
            for dj2 in -2 * b..=2 * b {
                let other = p.balanced_at(&best.k1 + big(dj1), &best.k2 + big(dj2));
                if other.residual_a(&p) == best.residual_a(&p) {
                    let shift = &other.x - &best.x;
                    prop_assert!(shift.is_integer());
                    let s = shift.floor();
                    prop_assert_eq!((big(dj1), big(dj2)), (&s * a, &s * b));
                }
            }
        }
    }

    #[test]
    fn certificates_dominate_the_oracle(p in triple_problem()) {
        let exact = mu(&p.triple().spectrum(), p.targets().to_vec());
        let plain = greedy_bound(&p);
        prop_assert!(plain.verify(&p));
        prop_assert!(plain.cost >= exact);
        match greedy_en_certificate(&p) {
            Ok(c) => {
                prop_assert!(c.verify(&p));
                prop_assert!(c.cost >= exact);
                prop_assert!(c.cost <= alpha_formula(p.triple()).value);
            }
            Err(kronlab::Error::NotInAsymptoticRegime { best_effort, .. }) => {
                prop_assert!(!in_asymptotic_regime(p.triple()));
                prop_assert!(best_effort.verify(&p));
            }
            Err(e) => prop_assert!(false, "unexpected error {}", e),
        }
    }

    #[test]
    fn rational_text_round_trip(r in rational(1000, 1000)) {
        prop_assert_eq!(r.to_fraction_string().parse::<Rational>().unwrap(), r.clone());
        prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }

    #[test]
    fn terminating_decimals_parse_exactly(int in -10_000i64..10_000, frac in 0u32..10_000) {
        let text = format!("{}{}.{:04}", if int < 0 { "-" } else { "" }, int.abs(), frac);
        let expected = Rational::from(int.abs()) + Rational::new(frac as i64, 10_000);
        let expected = if int < 0 { -expected } else { expected };
        prop_assert_eq!(text.parse::<Rational>().unwrap(), expected);
    }

    #[test]
    fn report_round_trips(
        rows in proptest::collection::vec((1i64..50, rational(500, 1), rational(500, 1), rational(500, 1), 0usize..3), 1..6)
    ) {
        let statuses = [Verification::OracleExact, Verification::WitnessSandwich, Verification::UnverifiedSmallN];
        let rows: Vec<SweepRow> = rows
            .into_iter()
            .map(|(n, alpha, beta, ln, v)| SweepRow {
                a: 1,
                b: 2,
                n: n + 2,
                r: n % 3,
                big_r: n % 3,
                s: n % 6,
                gap: beta < alpha,
                alpha,
                beta,
                ln,
                verified: statuses[v],
                runtime_ms: 0,
            })
            .collect();
        prop_assert_eq!(&parse_csv(&rows_to_csv(&rows)).unwrap(), &rows);
        prop_assert_eq!(&parse_json(&rows_to_json(&rows, 5)).unwrap(), &rows);
    }
}

#[test]
fn union_span_when_r_equals_a() {
    use kronlab::closed_form::{congruence_data, ln_value};
    use kronlab::greedy::z_windows;
    for (a, b) in [(1, 2), (1, 3), (2, 3), (2, 5), (3, 4)] {
        let m = a + b;
        let n0 = 60 * b;
        let n = (n0..n0 + m)
            .find(|&n| congruence_data(&Triple::new(a, b, n).unwrap()).big_r == a)
            .unwrap();
        let t = Triple::new(a, b, n).unwrap();
        let ln = ln_value(&t);
        // the canonical binary pair puts lambda = 1/(2(a+b)) in the union branch
        let (t1, t2) = kronlab::closed_form::canonical_binary_pair(b);
        let p = TripleProblem::new(t, [t1, t2, q("0")]);
        let best = best_pair_approx(&p.pair());
        assert_eq!(best.sign, kronlab::pair::Sign::Plus);
        let second = second_best_approx(&p.pair(), &best);
        let (near, _) = z_windows(&best, &ln, &p).unwrap();
        let (_, far) = z_windows(&second, &ln, &p).unwrap();
        let v =
            Rational::new(1, n) + Rational::new(b * (a * b + n), m * n * (a * b + a * n + b * n));
        // the span [z1, z4 + s/n] for the integer s that makes it overlap
        let raw = &far.hi - &near.lo;
        let s = ((&v - &raw) * n).floor();
        assert_eq!(&raw + Rational::new(s, n), v, "(a, b, n) = ({a}, {b}, {n})");
        assert!(v <= near.width() + far.width());
    }
}
