//! Closed-form constants for three-element sets `{a, b, n}`.
//!
//! Everything here is keyed on a handful of residues of `n`: `r = n mod (a+b)`,
//! `R = r*T mod (a+b)` where `T` inverts `a` modulo `a+b`, and
//! `S = (g+h)*(n mod 2(a+b)) mod 2(a+b)` for the parity-dependent Bezout pair
//! `(g, h)`. The formulas describe the large-`n` behaviour; each result
//! carries a [`Regime`] flag saying whether the sufficient size conditions
//! used by the constructions hold for the triple.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::{bezout_coprime, gcd, Rational};
use crate::error::{Error, Result};

/// A triple `a < b < n` of positive integers with `gcd(a, b) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Triple {
    pub a: i64,
    pub b: i64,
    pub n: i64,
}

impl Triple {
    pub fn new(a: i64, b: i64, n: i64) -> Result<Self> {
        if a <= 0 || a >= b || b >= n {
            return Err(Error::InvalidInput(format!(
                "need 0 < a < b < n, got ({a}, {b}, {n})"
            )));
        }
        if gcd(a, b) != 1 {
            return Err(Error::NotCoprime { a, b });
        }
        Ok(Triple { a, b, n })
    }

    pub fn spectrum(&self) -> [i64; 3] {
        [self.a, self.b, self.n]
    }

    /// `1 / (2(a+b))`, the constant of the pair `{a, b}`.
    pub fn pair_constant(&self) -> Rational {
        Rational::new(1, 2 * (self.a + self.b))
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}, {}}}", self.a, self.b, self.n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParityCase {
    BOdd,
    BEven,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CongruenceData {
    /// `n mod (a+b)`
    pub r: i64,
    /// inverse of `a` modulo `a+b`
    #[serde(rename = "T")]
    pub t_inv: i64,
    /// `r*T mod (a+b)`; selects the alpha case
    #[serde(rename = "R")]
    pub big_r: i64,
    /// `n mod 2(a+b)`
    pub r2: i64,
    /// `(g+h)*r2 mod 2(a+b)`; selects the binary table row
    #[serde(rename = "S")]
    pub s: i64,
    pub g: i64,
    pub h: i64,
    pub parity_case: ParityCase,
}

/// Parity-specific pair with `a*g - b*h = 1`: `g` even when `b` is odd,
/// `h` even when `b` is even.
pub fn binary_bezout(a: i64, b: i64) -> Result<(i64, i64, ParityCase)> {
    if b.is_odd() {
        let (big_g, big_h) = bezout_coprime(2 * a, b)?;
        Ok((2 * big_g, big_h, ParityCase::BOdd))
    } else {
        let (big_g, big_h) = bezout_coprime(a, 2 * b)?;
        Ok((big_g, 2 * big_h, ParityCase::BEven))
    }
}

pub fn congruence_data(t: &Triple) -> CongruenceData {
    let (a, b, n) = (t.a, t.b, t.n);
    let m = a + b;
    let (t_inv, _) = bezout_coprime(a, m).expect("gcd(a, a+b) = gcd(a, b) = 1");
    let r = n.rem_euclid(m);
    let big_r = (r * t_inv).rem_euclid(m);
    let (g, h, parity_case) = binary_bezout(a, b).expect("gcd(2a, b) or gcd(a, 2b) is 1");
    let r2 = n.rem_euclid(2 * m);
    let s = ((g + h) as i128 * r2 as i128).rem_euclid(2 * m as i128) as i64;
    CongruenceData {
        r,
        t_inv,
        big_r,
        r2,
        s,
        g,
        h,
        parity_case,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// The size conditions of [`regime_conditions`] all hold.
    Asymptotic,
    UnverifiedSmallN,
}

/// A formula value with the row of the case table that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormulaValue<C> {
    pub value: Rational,
    pub case: C,
    pub regime: Regime,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlphaCase {
    /// `0 <= R < a`
    BelowA,
    /// `R = a`, i.e. `n = a^2 mod (a+b)`
    EqualA,
    /// `a < R <= 2a`
    UpToTwoA,
    /// `R > 2a`
    AboveTwoA,
}

impl AlphaCase {
    pub fn of(t: &Triple, big_r: i64) -> AlphaCase {
        if big_r < t.a {
            AlphaCase::BelowA
        } else if big_r == t.a {
            AlphaCase::EqualA
        } else if big_r <= 2 * t.a {
            AlphaCase::UpToTwoA
        } else {
            AlphaCase::AboveTwoA
        }
    }
}

fn regime_of(t: &Triple) -> Regime {
    if in_asymptotic_regime(t) {
        Regime::Asymptotic
    } else {
        Regime::UnverifiedSmallN
    }
}

fn alpha_value(t: &Triple, big_r: i64) -> (Rational, AlphaCase) {
    let (a, b, n) = (t.a, t.b, t.n);
    let case = AlphaCase::of(t, big_r);
    let value = match case {
        AlphaCase::BelowA => Rational::new(n + a * a + a * b - a * big_r, 2 * (a + b) * (a + n)),
        AlphaCase::EqualA => ln_value(t),
        AlphaCase::UpToTwoA => Rational::new(n + b * big_r, 2 * (a + b) * (b + n)),
        AlphaCase::AboveTwoA => {
            Rational::new(n + 2 * a * a + 2 * a * b - a * big_r, 2 * (a + b) * (a + n))
        }
    };
    (value, case)
}

/// The angular constant of `{a, b, n}` for large `n`, by the four-case
/// formula in `R`.
pub fn alpha_formula(t: &Triple) -> FormulaValue<AlphaCase> {
    let (value, case) = alpha_value(t, congruence_data(t).big_r);
    FormulaValue {
        value,
        case,
        regime: regime_of(t),
    }
}

/// `(n + ab) / (2(an + bn + ab))`.
pub fn ln_value(t: &Triple) -> Rational {
    let (a, b, n) = (t.a, t.b, t.n);
    Rational::new(n + a * b, 2 * (a * n + b * n + a * b))
}

/// The bound reached from a pair cost `lambda`:
/// `(n(a+b)*lambda + ab) / (2ab + an + bn)`.
pub fn pair_lift_bound(t: &Triple, lambda: &Rational) -> Rational {
    let (a, b, n) = (t.a, t.b, t.n);
    (n * (a + b) * lambda + a * b) / (2 * a * b + a * n + b * n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BinaryTarget {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1/2")]
    Half,
}

impl BinaryTarget {
    pub fn value(self) -> Rational {
        match self {
            BinaryTarget::Zero => Rational::zero(),
            BinaryTarget::Half => Rational::half(),
        }
    }
}

/// Row of the binary case tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinaryRow {
    /// `t3 = 0`, `S in {0, 1, 2a+2b-1}`
    ZeroPair,
    /// `t3 = 0`, `2 <= S <= 2a`
    ZeroLow,
    /// `t3 = 0`, `2a < S <= 2a+2b-2`
    ZeroHigh,
    /// `t3 = 1/2`, `S in {a+b-1, a+b, a+b+1}`
    HalfPair,
    /// `t3 = 1/2`, `0 <= S < a+b-1`
    HalfLow,
    /// `t3 = 1/2`, `a+b+1 < S <= 3a+b`
    HalfMid,
    /// `t3 = 1/2`, `3a+b < S < 2a+2b`
    HalfHigh,
}

impl BinaryRow {
    pub fn describe(self) -> &'static str {
        match self {
            BinaryRow::ZeroPair => "t3=0, S in {0, 1, 2a+2b-1}",
            BinaryRow::ZeroLow => "t3=0, 2 <= S <= 2a",
            BinaryRow::ZeroHigh => "t3=0, 2a < S <= 2a+2b-2",
            BinaryRow::HalfPair => "t3=1/2, S in {a+b-1, a+b, a+b+1}",
            BinaryRow::HalfLow => "t3=1/2, 0 <= S < a+b-1",
            BinaryRow::HalfMid => "t3=1/2, a+b+1 < S <= 3a+b",
            BinaryRow::HalfHigh => "t3=1/2, 3a+b < S < 2a+2b",
        }
    }
}

impl fmt::Display for BinaryRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.describe())
    }
}

/// `(1/2, 0)` when `b` is odd, `(0, 1/2)` when `b` is even.
pub fn canonical_binary_pair(b: i64) -> (Rational, Rational) {
    if b.is_odd() {
        (Rational::half(), Rational::zero())
    } else {
        (Rational::zero(), Rational::half())
    }
}

/// Cost of the canonical binary target `(t1, t2, t3)` from the case tables.
pub fn binary_mu(t: &Triple, t3: BinaryTarget) -> FormulaValue<BinaryRow> {
    let (a, b, n) = (t.a, t.b, t.n);
    let s = congruence_data(t).s;
    let m = a + b;
    let pair = t.pair_constant();
    let over_a = |num: i64| Rational::new(num, 2 * m * (a + n));
    let over_b = |num: i64| Rational::new(num, 2 * m * (b + n));
    let (value, case) = match t3 {
        BinaryTarget::Zero => {
            if s == 0 || s == 1 || s == 2 * m - 1 {
                (pair, BinaryRow::ZeroPair)
            } else if s <= 2 * a {
                (over_b(n + b * s), BinaryRow::ZeroLow)
            } else {
                (
                    over_a(n + 2 * a * a + 2 * a * b - a * s),
                    BinaryRow::ZeroHigh,
                )
            }
        }
        BinaryTarget::Half => {
            if (m - 1..=m + 1).contains(&s) {
                (pair, BinaryRow::HalfPair)
            } else if s < m - 1 {
                (over_a(n + a * a + a * b - a * s), BinaryRow::HalfLow)
            } else if s <= 3 * a + b {
                (over_b(n - a * b - b * b + b * s), BinaryRow::HalfMid)
            } else {
                (
                    over_a(n + 3 * a * a + 3 * a * b - a * s),
                    BinaryRow::HalfHigh,
                )
            }
        }
    };
    FormulaValue {
        value,
        case,
        regime: regime_of(t),
    }
}

/// The binary constant: equal to [`alpha_formula`] unless `R = a`, where it
/// is `(n + ab) / (2(a+b)(a+n))`.
pub fn beta_formula(t: &Triple) -> FormulaValue<AlphaCase> {
    let (a, b, n) = (t.a, t.b, t.n);
    let alpha = alpha_formula(t);
    if alpha.case == AlphaCase::EqualA {
        FormulaValue {
            value: Rational::new(n + a * b, 2 * (a + b) * (a + n)),
            ..alpha
        }
    } else {
        alpha
    }
}

/// Flips `t_j` to `1/2 - t_j` at odd frequencies; the cost is unchanged.
pub fn toggle_reduce(spectrum: &[i64], targets: &[Rational]) -> Result<Vec<Rational>> {
    if spectrum.len() != targets.len() {
        return Err(Error::InvalidInput(format!(
            "{} frequencies but {} targets",
            spectrum.len(),
            targets.len()
        )));
    }
    let half = Rational::half();
    spectrum
        .iter()
        .zip(targets)
        .map(|(&n, t)| {
            if !t.is_zero() && *t != half {
                return Err(Error::InvalidInput(format!("target {t} is not 0 or 1/2")));
            }
            Ok(if n.is_odd() { &half - t } else { t.clone() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessKind {
    /// The extremal target for `R = a`, built from the lower-bound window.
    WindowEndpoint,
    /// Canonical binary target with the larger table value.
    Binary(BinaryTarget),
}

/// A target whose cost equals [`alpha_formula`] for large `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Targets with `t3` reduced into `[0, 1)`.
    pub targets: [Rational; 3],
    /// `t3` before reduction.
    pub raw_t3: Rational,
    pub expected: Rational,
    pub kind: WitnessKind,
}

pub fn alpha_witness(t: &Triple) -> Witness {
    let (a, b, n) = (t.a, t.b, t.n);
    let alpha = alpha_formula(t);
    if alpha.case == AlphaCase::EqualA {
        let ln = ln_value(t);
        let t2 = Rational::new(a + b, a) * (Rational::new(1, a + b) - &ln);
        let raw_t3 = Rational::new((a + n) * (n + a * b), 2 * a * (a * n + b * n + a * b));
        Witness {
            targets: [Rational::zero(), t2, raw_t3.fract()],
            raw_t3,
            expected: ln,
            kind: WitnessKind::WindowEndpoint,
        }
    } else {
        let (t1, t2) = canonical_binary_pair(b);
        let zero = binary_mu(t, BinaryTarget::Zero);
        let half = binary_mu(t, BinaryTarget::Half);
        let (t3, expected) = if half.value > zero.value {
            (BinaryTarget::Half, half.value)
        } else {
            (BinaryTarget::Zero, zero.value)
        };
        Witness {
            targets: [t1, t2, t3.value()],
            raw_t3: t3.value(),
            expected,
            kind: WitnessKind::Binary(t3),
        }
    }
}

/// The size conditions the constructions rely on, evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RegimeReport {
    /// `(3b - a)/(2n) <= L_n`: the small-pair-cost shortcut stays below `L_n`.
    pub small_lambda_below_ln: bool,
    /// `1/(a+b) - L_n > (b - a)/(2n)`: the window construction applies to the
    /// second-best point.
    pub second_best_window_ok: bool,
    /// `E_n < 1/(a+b)`.
    pub below_pair_gap: bool,
    /// The binary window sits strictly between the zeros of the `a` and `b`
    /// residuals of the canonical binary point.
    pub binary_window_inside: bool,
}

impl RegimeReport {
    pub fn holds(&self) -> bool {
        self.small_lambda_below_ln
            && self.second_best_window_ok
            && self.below_pair_gap
            && self.binary_window_inside
    }
}

pub fn regime_conditions(t: &Triple) -> RegimeReport {
    let (a, b, n) = (t.a, t.b, t.n);
    let ln = ln_value(t);
    let (en, _) = alpha_value(t, congruence_data(t).big_r);
    let gap = Rational::new(1, a + b);
    let small = Rational::new(3 * b - a, 2 * n);
    let slack = Rational::new(b - a, 2 * n);
    // binary point: lambda = 1/(2(a+b)), E = (n + 2ab) / (2(an + bn + 2ab))
    let binary_bound = Rational::new(n + 2 * a * b, 2 * (a * n + b * n + 2 * a * b));
    let binary_window_inside = binary_bound <= Rational::new(n, 2 * a * (b + n))
        && binary_bound <= Rational::new(n, 2 * b * (a + n))
        && t.pair_constant() > slack;
    RegimeReport {
        small_lambda_below_ln: small <= ln,
        second_best_window_ok: &gap - &ln > slack,
        below_pair_gap: en < gap,
        binary_window_inside,
    }
}

pub fn in_asymptotic_regime(t: &Triple) -> bool {
    regime_conditions(t).holds()
}

/// `C(a, b)` with `0 <= alpha_formula - 1/(2(a+b)) <= C/n` for every `n`.
///
/// The four cases differ from `1/(2(a+b))` by
/// `a(a+b-1-R) / (2(a+b)(a+n))`, `ab(a+b-1) / (2(a+b)(an+bn+ab))`,
/// `b(R-1) / (2(a+b)(b+n))` and `a(2a+2b-1-R) / (2(a+b)(a+n))`; bounding
/// `R` in each range and the denominators below by `n` gives the maximum.
pub fn asymptotic_constant(a: i64, b: i64) -> Rational {
    let m = a + b;
    let candidates = [
        Rational::from(a * (m - 1)),
        Rational::new(a * b * (m - 1), m),
        Rational::from(b * (2 * a - 1)),
        Rational::from(a * (2 * b - 2)),
    ];
    let top = candidates.into_iter().max().expect("non-empty");
    top / (2 * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn tri(a: i64, b: i64, n: i64) -> Triple {
        Triple::new(a, b, n).unwrap()
    }

    #[test]
    fn triple_validation() {
        assert!(Triple::new(2, 4, 9).is_err());
        assert!(Triple::new(2, 2, 9).is_err());
        assert!(Triple::new(1, 5, 5).is_err());
        assert!(Triple::new(0, 5, 7).is_err());
    }

    #[test]
    fn congruence_examples() {
        let c = congruence_data(&tri(1, 2, 100));
        assert_eq!((c.r, c.t_inv, c.big_r, c.r2), (1, 1, 1, 4));
        assert_eq!((c.g, c.h, c.s), (1, 0, 4));
        assert_eq!(c.parity_case, ParityCase::BEven);

        let c = congruence_data(&tri(1, 2, 99));
        assert_eq!((c.r, c.big_r), (0, 0));

        let c = congruence_data(&tri(2, 3, 300));
        assert_eq!((c.t_inv, c.r, c.big_r), (3, 0, 0));
        assert_eq!((c.g, c.h, c.r2, c.s), (2, 1, 0, 0));
        assert_eq!(c.parity_case, ParityCase::BOdd);
    }

    #[test]
    fn congruence_invariants() {
        for (a, b) in [(1, 2), (2, 3), (3, 4), (3, 8), (5, 7), (4, 9)] {
            for n in b + 1..b + 80 {
                let t = tri(a, b, n);
                let c = congruence_data(&t);
                let m = a + b;
                assert_eq!((a * c.t_inv).rem_euclid(m), 1);
                assert_eq!(n.rem_euclid(m), c.r);
                assert_eq!(c.big_r, (c.r * c.t_inv).rem_euclid(m));
                assert_eq!(n.rem_euclid(2 * m), c.r2);
                assert_eq!(a * c.g - b * c.h, 1);
                match c.parity_case {
                    ParityCase::BOdd => assert!(c.g % 2 == 0 && c.h % 2 != 0),
                    ParityCase::BEven => assert!(c.h % 2 == 0 && c.g % 2 != 0),
                }
                assert_eq!(c.big_r == a, (n - a * a).rem_euclid(m) == 0);
            }
        }
    }

    #[test]
    fn alpha_examples() {
        let v = alpha_formula(&tri(1, 2, 100));
        assert_eq!(v.value, q("51/302"));
        assert_eq!(v.case, AlphaCase::EqualA);
        assert_eq!(alpha_formula(&tri(1, 2, 99)).value, q("17/100"));
        assert_eq!(alpha_formula(&tri(2, 3, 300)).value, q("31/302"));
    }

    #[test]
    fn ln_examples() {
        assert_eq!(ln_value(&tri(1, 2, 100)), q("51/302"));
        assert_eq!(ln_value(&tri(2, 3, 300)), q("51/502"));
        // n -> infinity: L_n - 1/6 = 4/(6(3n+2))
        let t = tri(1, 2, 1_000_000);
        assert_eq!(&ln_value(&t) - &q("1/6"), Rational::new(4, 6 * 3_000_002));
    }

    #[test]
    fn binary_examples() {
        let t = tri(1, 2, 100);
        let zero = binary_mu(&t, BinaryTarget::Zero);
        assert_eq!(zero.value, q("17/101"));
        assert_eq!(zero.case, BinaryRow::ZeroHigh);
        let half = binary_mu(&t, BinaryTarget::Half);
        assert_eq!(half.value, q("1/6"));
        assert_eq!(half.case, BinaryRow::HalfPair);

        let half = binary_mu(&tri(2, 3, 300), BinaryTarget::Half);
        assert_eq!(half.value, q("31/302"));
        assert_eq!(half.case, BinaryRow::HalfLow);
    }

    #[test]
    fn beta_examples() {
        let t = tri(1, 2, 100);
        assert_eq!(beta_formula(&t).value, q("17/101"));
        assert!(beta_formula(&t).value < alpha_formula(&t).value);
        assert_eq!(beta_formula(&tri(1, 2, 99)).value, q("17/100"));
        assert_eq!(beta_formula(&tri(2, 3, 300)).value, q("31/302"));
    }

    #[test]
    fn toggle_examples() {
        let h = Rational::half;
        let z = Rational::zero;
        assert_eq!(toggle_reduce(&[1, 2], &[h(), z()]).unwrap(), vec![z(), z()]);
        assert_eq!(toggle_reduce(&[1, 2], &[z(), h()]).unwrap(), vec![h(), h()]);
        assert_eq!(
            toggle_reduce(&[2, 3, 300], &[h(), h(), z()]).unwrap(),
            vec![h(), z(), z()]
        );
        assert!(toggle_reduce(&[1, 2], &[q("1/3"), z()]).is_err());
        assert!(toggle_reduce(&[1, 2], &[z()]).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = alpha_witness(&tri(1, 2, 100));
        assert_eq!(w.targets, [q("0"), q("149/302"), q("17/302")]);
        assert_eq!(w.raw_t3, q("5151/302"));
        assert_eq!(w.expected, q("51/302"));

        let w = alpha_witness(&tri(2, 3, 300));
        assert_eq!(w.targets, [q("1/2"), q("0"), q("1/2")]);
        assert_eq!(w.expected, q("31/302"));

        let w = alpha_witness(&tri(1, 2, 99));
        assert_eq!(&w.targets[..2], &[q("0"), q("1/2")]);
        assert_eq!(w.expected, q("17/100"));
    }

    #[test]
    fn formula_relations() {
        for (a, b) in [
            (1, 2),
            (1, 3),
            (2, 3),
            (2, 5),
            (3, 4),
            (3, 5),
            (4, 5),
            (3, 10),
        ] {
            for n in 20 * b..20 * b + 4 * (a + b) {
                let t = tri(a, b, n);
                let alpha = alpha_formula(&t);
                let beta = beta_formula(&t);
                let ln = ln_value(&t);
                assert!(ln <= alpha.value, "L_n <= E_n at {t}");
                assert!(ln > t.pair_constant());
                assert_eq!(beta.value < alpha.value, alpha.case == AlphaCase::EqualA);
                assert_eq!(beta.value == alpha.value, alpha.case != AlphaCase::EqualA);
                assert_eq!(ln == alpha.value, alpha.case == AlphaCase::EqualA);
                let zero = binary_mu(&t, BinaryTarget::Zero).value;
                let half = binary_mu(&t, BinaryTarget::Half).value;
                assert_eq!(
                    beta.value,
                    zero.max(half),
                    "beta is the larger table row at {t}"
                );
                let excess = &alpha.value - &t.pair_constant();
                assert!(!excess.is_negative());
                assert!(excess <= asymptotic_constant(a, b) / n);
            }
        }
    }

    #[test]
    fn regime_predicate_grows_true() {
        assert!(!in_asymptotic_regime(&tri(1, 2, 3)));
        assert!(in_asymptotic_regime(&tri(1, 2, 100)));
        assert!(in_asymptotic_regime(&tri(4, 5, 300)));
        assert_eq!(
            alpha_formula(&tri(1, 2, 4)).regime,
            Regime::UnverifiedSmallN
        );
    }
}
