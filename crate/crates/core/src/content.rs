//! Content statistics of shifted diagrams.
//!
//! For a cell of content `c` put `ĉ = c(c+1)/2`. The power sums of the `ĉ`
//! over a shifted diagram are themselves elements of Γ, called `hat p_k`
//! here. They are built from the telescoping identity
//! `p_{2m+1}(λ) = Σ_□ ((c+1)^{2m+1} - c^{2m+1})` by rewriting each summand
//! as a polynomial in `c(c+1)` and solving the resulting triangular system.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::gamma::{GammaElement, TermRecord};
use crate::partitions::{binomial, corners, shifted_cells, Cell, OrdinaryPartition, StrictPartition};
use crate::plancherel::Observable;
use crate::poly::UniPoly;
use crate::rational::{self, pow2, ratio, Rational};
use crate::series::Series;

/// `ĉ = c(c+1)/2`.
pub fn c_hat(cell: &Cell) -> Rational {
    let c = cell.content();
    Rational::new(BigInt::from(c * (c + 1)), BigInt::from(2))
}

/// A polynomial with `R(X) = R(-X-1)`, hence a polynomial in `Y = X(X+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvenPolynomial(UniPoly);

impl EvenPolynomial {
    pub fn new(poly: UniPoly) -> Result<Self> {
        let reflected = poly.compose(&UniPoly::from_ints(&[-1, -1]));
        if reflected != poly {
            return Err(Error::NotEven);
        }
        Ok(Self(poly))
    }

    pub fn poly(&self) -> &UniPoly {
        &self.0
    }
}

/// The polynomial `R̃` with `R̃(X(X+1)) = R(X)`.
///
/// Expanding in `x = X + 1/2` leaves only even powers, and `x² = Y + 1/4`.
pub fn rewrite_xy(r: &EvenPolynomial) -> UniPoly {
    let centred = r.0.compose(&UniPoly::linear(ratio(-1, 2)));
    let x_squared = UniPoly::linear(ratio(1, 4));
    let mut out = UniPoly::zero();
    for (i, c) in centred.coeffs().iter().enumerate() {
        if i % 2 == 1 {
            debug_assert!(c.is_zero(), "odd power survived in an even polynomial");
            continue;
        }
        out = &out + &x_squared.pow(i as u32 / 2).scale(c);
    }
    out
}

/// `(X+1)^{2m+1} - X^{2m+1}` rewritten in `Y`; entry `r` is the coefficient
/// of `Y^r`.
pub fn telescoping_coefficients(m: u32) -> Vec<Rational> {
    static TABLE: LazyLock<Memo<u32, Vec<Rational>>> = LazyLock::new(Memo::new);
    TABLE.get_or_compute(&m, || {
        let e = 2 * m + 1;
        let r = &UniPoly::from_ints(&[1, 1]).pow(e) - &UniPoly::x().pow(e);
        let even = EvenPolynomial::new(r).expect("telescoping difference is even");
        rewrite_xy(&even).coeffs().to_vec()
    })
}

static CONTENT_POWER: LazyLock<Memo<u32, GammaElement>> = LazyLock::new(Memo::new);

/// `λ ↦ Σ_□ (c(c+1))^r` as an element of Γ.
fn content_power_sum(r: u32) -> GammaElement {
    CONTENT_POWER.get_or_compute(&r, || {
        let a = telescoping_coefficients(r);
        let mut out = GammaElement::p_single(2 * r + 1).expect("odd index");
        for (j, c) in a.iter().enumerate().take(r as usize) {
            out.add_scaled(&-c, &content_power_sum(j as u32));
        }
        out.scale(&a[r as usize].recip())
    })
}

/// `hat p_k = Σ_□ ĉ^k`, with `hat p_0 = p_1`.
pub fn hat_p(k: u32) -> GammaElement {
    content_power_sum(k).scale(&pow2(-(k as i64)))
}

/// A symmetric function in its ordinary power-sum expansion. Even parts are
/// allowed, so this also serves as the extended evaluator for averages of
/// functions outside Γ.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<TermRecord>", try_from = "Vec<TermRecord>")]
pub struct OrdinaryPSumExpr {
    terms: BTreeMap<OrdinaryPartition, Rational>,
}

impl OrdinaryPSumExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::p(OrdinaryPartition::empty())
    }

    pub fn p(rho: OrdinaryPartition) -> Self {
        let mut out = Self::zero();
        out.add_term(rho, Rational::one());
        out
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OrdinaryPartition, Rational)>) -> Self {
        let mut out = Self::zero();
        for (rho, c) in terms {
            out.add_term(rho, c);
        }
        out
    }

    pub fn add_term(&mut self, rho: OrdinaryPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(rho.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&rho);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OrdinaryPartition, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates with `p_k` replaced by `power_sum(k)`.
    pub fn evaluate_with(&self, mut power_sum: impl FnMut(u32) -> Rational) -> Rational {
        let mut cache: BTreeMap<u32, Rational> = BTreeMap::new();
        let mut acc = Rational::zero();
        for (rho, c) in &self.terms {
            let mut term = c.clone();
            for &k in rho.parts() {
                term *= cache.entry(k).or_insert_with(|| power_sum(k)).clone();
            }
            acc += term;
        }
        acc
    }

    /// Evaluation at the variables `λ_1, …, λ_ℓ`.
    pub fn evaluate_at_parts(&self, lambda: &StrictPartition) -> Rational {
        self.evaluate_with(|k| {
            lambda
                .parts()
                .iter()
                .map(|&x| Rational::from_integer(BigInt::from(x).pow(k)))
                .sum()
        })
    }

    /// The same element in Γ, when every part is odd.
    pub fn try_into_gamma(&self) -> Result<GammaElement> {
        let mut out = GammaElement::zero();
        for (rho, c) in &self.terms {
            out.add_term(rho.to_odd()?, c.clone());
        }
        Ok(out)
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms
            .iter()
            .rev()
            .map(|(rho, c)| TermRecord {
                partition: rho.to_string(),
                coeff: rational::render(c),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self> {
        let mut out = Self::zero();
        for record in records {
            let rho: OrdinaryPartition = record.partition.parse()?;
            if out.terms.contains_key(&rho) {
                return Err(Error::Malformed(format!(
                    "partition `{}` appears twice",
                    record.partition
                )));
            }
            out.add_term(rho, rational::parse(&record.coeff)?);
        }
        Ok(out)
    }
}

impl From<GammaElement> for OrdinaryPSumExpr {
    fn from(value: GammaElement) -> Self {
        Self::from_terms(value.terms().map(|(rho, c)| (rho.clone().into(), c.clone())))
    }
}

impl From<OrdinaryPSumExpr> for Vec<TermRecord> {
    fn from(value: OrdinaryPSumExpr) -> Self {
        value.to_records()
    }
}

impl TryFrom<Vec<TermRecord>> for OrdinaryPSumExpr {
    type Error = Error;

    fn try_from(records: Vec<TermRecord>) -> Result<Self> {
        Self::from_records(&records)
    }
}

impl fmt::Display for OrdinaryPSumExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (rho, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if rho.is_empty() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "p[{rho}]")?;
            } else {
                write!(f, "{magnitude}*p[{rho}]")?;
            }
        }
        Ok(())
    }
}

impl Observable for OrdinaryPSumExpr {
    fn observe(&self, lambda: &StrictPartition) -> Rational {
        self.evaluate_at_parts(lambda)
    }
}

/// `F̂`: each `p_k` replaced by `hat p_k`.
pub fn hat_f(f: &OrdinaryPSumExpr) -> GammaElement {
    let mut out = GammaElement::zero();
    for (rho, c) in f.terms() {
        let product = rho
            .parts()
            .iter()
            .fold(GammaElement::one(), |acc, &k| &acc * &hat_p(k));
        out.add_scaled(c, &product);
    }
    out
}

/// `F` specialised at the values `ĉ_□`, `□ ∈ S(λ)`.
pub fn hat_f_eval_direct(f: &OrdinaryPSumExpr, lambda: &StrictPartition) -> Rational {
    let values: Vec<Rational> = shifted_cells(lambda).iter().map(c_hat).collect();
    f.evaluate_with(|k| values.iter().map(|v| rational::pow(v, k)).sum())
}

fn check_positive(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    Ok(())
}

/// `Σ_{inner} (c(c+1))^k - Σ_{outer} (c(c+1))^k` over the corners of `λ`.
pub fn psi_direct(k: u32, lambda: &StrictPartition) -> Result<Rational> {
    check_positive(k)?;
    let weight = |cell: &Cell| {
        let c = cell.content();
        Rational::from_integer(BigInt::from(c * (c + 1)).pow(k))
    };
    let corners = corners(lambda);
    let inner: Rational = corners.inner.iter().map(weight).sum();
    let outer: Rational = corners.outer.iter().map(weight).sum();
    Ok(inner - outer)
}

/// `ψ_k = 2 Σ_{odd s ≤ k} C(k, s) p_{2k-s}`.
pub fn psi(k: u32) -> Result<GammaElement> {
    check_positive(k)?;
    let mut out = GammaElement::zero();
    for s in (1..=k).step_by(2) {
        let c = Rational::from_integer(binomial(k, s) * 2);
        out.add_scaled(&c, &GammaElement::p_single(2 * k - s)?);
    }
    Ok(out)
}

/// Compares `Π_i (1 - λ_i(λ_i-1)u) / (1 - λ_i(λ_i+1)u)` with
/// `exp(Σ_k ψ_k(λ) u^k / k)` up to `u^order`.
pub fn phi_series_check(lambda: &StrictPartition, order: usize) -> bool {
    let mut product = Series::one(order);
    for &part in lambda.parts() {
        let x = i64::from(part);
        let numer = Series::from_poly(&UniPoly::from_ints(&[1, -x * (x - 1)]), order);
        let denom = Series::from_poly(&UniPoly::from_ints(&[1, -x * (x + 1)]), order);
        let factor = &numer * &denom.inverse().expect("constant term is 1");
        product = &product * &factor;
    }
    let mut exponent = vec![Rational::zero()];
    for k in 1..=order {
        let value = psi_direct(k as u32, lambda).expect("k is positive");
        exponent.push(value / Rational::from_integer(k.into()));
    }
    let rhs = Series::from_coeffs(exponent, order)
        .exp()
        .expect("zero constant term");
    product == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::power_sums;
    use crate::partitions::{enumerate_ordinary, enumerate_strict, OddPartition};
    use crate::rational::int;
    use proptest::prelude::*;

    fn sp(text: &str) -> StrictPartition {
        text.parse().unwrap()
    }

    fn p(text: &str) -> GammaElement {
        GammaElement::p(text.parse::<OddPartition>().unwrap())
    }

    fn psum(text: &str) -> OrdinaryPSumExpr {
        OrdinaryPSumExpr::p(text.parse().unwrap())
    }

    #[test]
    fn c_hat_examples() {
        assert_eq!(c_hat(&Cell::new(1, 1)), int(0));
        assert_eq!(c_hat(&Cell::new(1, 3)), int(3));
        assert_eq!(c_hat(&Cell::new(2, 5)), int(6));
    }

    #[test]
    fn rewrite_examples() {
        let y = EvenPolynomial::new(UniPoly::from_ints(&[0, 1, 1])).unwrap();
        assert_eq!(rewrite_xy(&y), UniPoly::x());
        let r = EvenPolynomial::new(UniPoly::from_ints(&[1, 3, 3])).unwrap();
        assert_eq!(rewrite_xy(&r), UniPoly::from_ints(&[1, 3]));
        let one = EvenPolynomial::new(UniPoly::from_ints(&[1])).unwrap();
        assert_eq!(rewrite_xy(&one), UniPoly::from_ints(&[1]));
        assert!(matches!(EvenPolynomial::new(UniPoly::x()), Err(Error::NotEven)));
    }

    #[test]
    fn rewrite_inverts_substitution() {
        let y = UniPoly::from_ints(&[0, 1, 1]);
        for coeffs in [[2, -1, 0, 5], [0, 0, 0, 1], [7, 3, -2, 0]] {
            let tilde = UniPoly::from_ints(&coeffs);
            let r = EvenPolynomial::new(tilde.compose(&y)).unwrap();
            assert_eq!(rewrite_xy(&r), tilde);
        }
        for m in 0..6 {
            let a = telescoping_coefficients(m);
            assert_eq!(a.len(), m as usize + 1);
            assert_eq!(a[m as usize], int(2 * m as i64 + 1));
        }
    }

    #[test]
    fn hat_p_examples() {
        let sixth = ratio(1, 6);
        assert_eq!(hat_p(1), &p("3").scale(&sixth) - &p("1").scale(&sixth));
        let expected = GammaElement::from_terms([
            ("5".parse().unwrap(), ratio(1, 20)),
            ("3".parse().unwrap(), ratio(-1, 12)),
            ("1".parse().unwrap(), ratio(1, 30)),
        ]);
        assert_eq!(hat_p(2), expected);
        assert_eq!(hat_p(0), p("1"));
    }

    #[test]
    fn hat_p_sums_content_powers() {
        for k in 0..=6 {
            let f = hat_p(k);
            for n in 0..=10 {
                for lambda in enumerate_strict(n) {
                    let direct: Rational = shifted_cells(&lambda)
                        .iter()
                        .map(|cell| rational::pow(&c_hat(cell), k))
                        .sum();
                    assert_eq!(f.evaluate(&lambda), direct, "k = {k}, {lambda}");
                }
            }
        }
    }

    #[test]
    fn telescoping_identity() {
        for m in 0..=4u32 {
            let e = 2 * m + 1;
            for n in 0..=10 {
                for lambda in enumerate_strict(n) {
                    let direct: BigInt = shifted_cells(&lambda)
                        .iter()
                        .map(|cell| {
                            let c: BigInt = BigInt::from(cell.content());
                            (&c + 1u32).pow(e) - c.pow(e)
                        })
                        .sum();
                    assert_eq!(power_sums(lambda.parts(), e)[e as usize], direct);
                }
            }
        }
    }

    #[test]
    fn hat_f_examples() {
        assert_eq!(hat_f(&psum("2")), hat_p(2));
        assert_eq!(hat_f(&psum("1,1")), hat_p(1).pow(2));
        assert_eq!(hat_f(&OrdinaryPSumExpr::one()), GammaElement::one());
        assert_eq!(hat_f_eval_direct(&psum("1"), &sp("3")), int(4));
        assert_eq!(hat_f_eval_direct(&psum("2"), &sp("2,1")), int(1));
        assert_eq!(hat_f_eval_direct(&psum("1,1"), &sp("3")), int(16));
    }

    #[test]
    fn ordinary_expressions() {
        let f = OrdinaryPSumExpr::from_terms([
            ("2".parse().unwrap(), int(1)),
            ("1,1".parse().unwrap(), ratio(-1, 2)),
        ]);
        assert_eq!(f.evaluate_at_parts(&sp("3")), int(9) - ratio(9, 2));
        assert_eq!(f.to_string(), "p[2] - 1/2*p[1,1]");
        assert!(matches!(f.try_into_gamma(), Err(Error::NotSupersymmetric(2))));
        let g: OrdinaryPSumExpr = (&p("3") + &p("1")).into();
        assert_eq!(g.try_into_gamma().unwrap(), &p("3") + &p("1"));
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"[{"partition":"2","coeff":"1"},{"partition":"1,1","coeff":"-1/2"}]"#);
        assert_eq!(serde_json::from_str::<OrdinaryPSumExpr>(&json).unwrap(), f);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi(1).unwrap(), p("1").scale(&int(2)));
        assert_eq!(psi(2).unwrap(), p("3").scale(&int(4)));
        assert_eq!(psi(3).unwrap(), &p("5").scale(&int(6)) + &p("3").scale(&int(2)));
        assert_eq!(psi(4).unwrap(), &p("7").scale(&int(8)) + &p("5").scale(&int(8)));
        assert!(psi(0).is_err());
        for k in 1..=4 {
            assert_eq!(psi_direct(k, &sp("")).unwrap(), int(0));
        }
        assert_eq!(psi_direct(2, &sp("2,1")).unwrap(), int(36));
        assert_eq!(psi(2).unwrap().evaluate(&sp("2,1")), int(36));
    }

    #[test]
    fn psi_corner_sums_match_expansion() {
        for k in 1..=5 {
            let f = psi(k).unwrap();
            for n in 0..=10 {
                for lambda in enumerate_strict(n) {
                    assert_eq!(psi_direct(k, &lambda).unwrap(), f.evaluate(&lambda));
                }
            }
        }
    }

    #[test]
    fn series_identity() {
        assert!(phi_series_check(&sp(""), 5));
        assert!(phi_series_check(&sp("2,1"), 6));
        assert!(phi_series_check(&sp("5,4,2"), 8));
        for n in 0..=8 {
            for lambda in enumerate_strict(n) {
                assert!(phi_series_check(&lambda, 8), "{lambda}");
            }
        }
    }

    fn small_psum() -> impl Strategy<Value = OrdinaryPSumExpr> {
        let basis: Vec<OrdinaryPartition> = (0..=4).flat_map(enumerate_ordinary).collect();
        prop::collection::vec((0..basis.len(), -5i64..=5, 1i64..=4), 1..5).prop_map(move |terms| {
            OrdinaryPSumExpr::from_terms(
                terms.into_iter().map(|(i, a, b)| (basis[i].clone(), ratio(a, b))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn hat_f_specialises(f in small_psum(), idx in 0usize..20) {
            let lambdas: Vec<StrictPartition> = (0..=9).flat_map(enumerate_strict).collect();
            let lambda = &lambdas[idx * lambdas.len() / 20];
            prop_assert_eq!(hat_f(&f).evaluate(lambda), hat_f_eval_direct(&f, lambda));
        }
    }
}
