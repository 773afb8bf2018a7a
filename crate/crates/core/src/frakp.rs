//! The basis `𝔭_ρ = Ψ(p_ρ) = Σ_λ X^λ_ρ P*_λ` and basis changes with `p_ρ`.
//!
//! `𝔭_ρ` has top-degree term `p_ρ`, so any element can be expanded in this
//! basis by peeling off top-degree components. Expansions live in
//! [`FrakExpansion`], which has the same shape as a [`GammaElement`] but is a
//! different type so the two bases cannot be mixed by accident.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::LazyLock;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::factorial::{expand_P_in_Pstar, p_star};
use crate::gamma::{GammaElement, TermRecord};
use crate::partitions::{falling_int, g, z, OddPartition, StrictPartition};
use crate::rational::{self, pow2, Rational};
use crate::schurq::{character, character_table, expand_p_in_P};

/// `Σ a_ρ 𝔭_ρ`, sparse, with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<TermRecord>", try_from = "Vec<TermRecord>")]
pub struct FrakExpansion {
    coeffs: BTreeMap<OddPartition, Rational>,
}

impl FrakExpansion {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The single basis vector `𝔭_ρ`.
    pub fn basis(rho: OddPartition) -> Self {
        let mut out = Self::zero();
        out.add_term(rho, Rational::one());
        out
    }

    pub fn add_term(&mut self, rho: OddPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(rho.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&rho);
        }
    }

    pub fn add_scaled(&mut self, c: &Rational, other: &FrakExpansion) {
        for (rho, a) in &other.coeffs {
            self.add_term(rho.clone(), c * a);
        }
    }

    pub fn coeff(&self, rho: &OddPartition) -> Rational {
        self.coeffs.get(rho).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OddPartition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.coeffs
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
            let rho: OddPartition = record.partition.parse()?;
            if out.coeffs.contains_key(&rho) {
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

impl From<FrakExpansion> for Vec<TermRecord> {
    fn from(value: FrakExpansion) -> Self {
        value.to_records()
    }
}

impl TryFrom<Vec<TermRecord>> for FrakExpansion {
    type Error = Error;

    fn try_from(records: Vec<TermRecord>) -> Result<Self> {
        FrakExpansion::from_records(&records)
    }
}

impl fmt::Display for FrakExpansion {
    /// `fp[5] + 10*fp[3,1] + 35/3*fp[3] + …`, highest degree first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (rho, c)) in self.coeffs.iter().rev().enumerate() {
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
                write!(f, "fp[{rho}]")?;
            } else {
                write!(f, "{magnitude}*fp[{rho}]")?;
            }
        }
        Ok(())
    }
}

/// `(ρ̃, m_1(ρ))`.
pub fn tilde(rho: &OddPartition) -> (OddPartition, usize) {
    rho.strip_ones()
}

static FRAK: LazyLock<Memo<OddPartition, GammaElement>> = LazyLock::new(Memo::new);

/// `𝔭_ρ = Σ_{λ ⊢ |ρ|} X^λ_ρ P*_λ` in the `p` basis.
pub fn frak_p(rho: &OddPartition) -> GammaElement {
    FRAK.get_or_compute(rho, || {
        let mut out = GammaElement::zero();
        for (lambda, x) in expand_p_in_P(rho) {
            out.add_scaled(&x, &p_star(&lambda));
        }
        out
    })
}

/// `𝔭_ρ(λ) = |λ|^↓|ρ| X^λ_{ρ̃ ∪ 1^{|λ|-|ρ̃|}} / g^λ`, and 0 when `|ρ̃| > |λ|`.
pub fn frak_p_eval(rho: &OddPartition, lambda: &StrictPartition) -> Rational {
    let (rho_tilde, _) = tilde(rho);
    let n = lambda.size();
    if rho_tilde.size() > n {
        return Rational::zero();
    }
    let falling = falling_int(n as i64, rho.size());
    if falling.is_zero() {
        return Rational::zero();
    }
    let class = rho_tilde.union(&OddPartition::ones((n - rho_tilde.size()) as usize));
    let x = character(lambda, &class).expect("sizes agree by construction");
    x * Rational::new(falling, g(lambda))
}

/// Expansion of `p_ρ` in the `𝔭` basis by the three-step route
/// `p → P → P* → 𝔭`:
///
/// 1. `p_ρ = Σ_λ X^λ_ρ P_λ`;
/// 2. each `P_λ` through the Stirling system into `P*_μ`;
/// 3. `P*_μ = Σ_{σ ⊢ |μ|} 2^{ℓ(σ)-ℓ(μ)} z_σ^{-1} X^μ_σ 𝔭_σ`.
pub fn expand_p_in_frak(rho: &OddPartition) -> FrakExpansion {
    let mut pstar_coeffs: BTreeMap<StrictPartition, Rational> = BTreeMap::new();
    for (lambda, x) in expand_p_in_P(rho) {
        for (mu, c) in expand_P_in_Pstar(&lambda) {
            *pstar_coeffs.entry(mu).or_insert_with(Rational::zero) +=
                &x * Rational::from_integer(c);
        }
    }
    let mut out = FrakExpansion::zero();
    for (mu, a) in pstar_coeffs {
        if a.is_zero() {
            continue;
        }
        out.add_scaled(&a, &pstar_in_frak(&mu));
    }
    out
}

/// `P*_μ` in the `𝔭` basis.
pub fn pstar_in_frak(mu: &StrictPartition) -> FrakExpansion {
    let table = character_table(mu.size());
    let mut out = FrakExpansion::zero();
    for sigma in table.columns() {
        let x = table.get(mu, sigma).expect("column of the table");
        let c = pow2(sigma.len() as i64 - mu.len() as i64) / Rational::from_integer(z(sigma));
        out.add_term(sigma.clone(), c * x);
    }
    out
}

/// Expansion of an arbitrary element, using `𝔭_ρ = p_ρ + (lower degree)`.
pub fn expand_gamma_in_frak(f: &GammaElement) -> FrakExpansion {
    let mut remaining = f.clone();
    let mut out = FrakExpansion::zero();
    while !remaining.is_zero() {
        let top = remaining.top_component();
        for (rho, c) in top.terms() {
            out.add_term(rho.clone(), c.clone());
            remaining.add_scaled(&-c, &frak_p(rho));
        }
    }
    out
}

/// `Σ a_ρ 𝔭_ρ` back in the `p` basis.
pub fn assemble(e: &FrakExpansion) -> GammaElement {
    let mut out = GammaElement::zero();
    for (rho, c) in e.terms() {
        out.add_scaled(c, &frak_p(rho));
    }
    out
}

/// `deg₁(𝔭_ρ) = |ρ| + m_1(ρ)`.
pub fn deg1_of(rho: &OddPartition) -> u32 {
    rho.size() + rho.multiplicity(1) as u32
}

/// `max (|ρ| + m_1(ρ))` over the support.
pub fn deg1(e: &FrakExpansion) -> Result<u32> {
    e.terms().map(|(rho, _)| deg1_of(rho)).max().ok_or(Error::ZeroElement)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::{enumerate_odd, enumerate_strict, falling};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn op(text: &str) -> OddPartition {
        text.parse().unwrap()
    }

    fn sp(text: &str) -> StrictPartition {
        text.parse().unwrap()
    }

    fn p(text: &str) -> GammaElement {
        GammaElement::p(op(text))
    }

    fn frak(terms: &[(&str, Rational)]) -> FrakExpansion {
        let mut out = FrakExpansion::zero();
        for (rho, c) in terms {
            out.add_term(op(rho), c.clone());
        }
        out
    }

    #[test]
    fn tilde_examples() {
        assert_eq!(tilde(&op("5,5,3,1,1")), (op("5,5,3"), 2));
        assert_eq!(tilde(&op("1,1,1")), (op(""), 3));
        assert_eq!(tilde(&op("3")), (op("3"), 0));
    }

    #[test]
    fn frak_p_examples() {
        assert_eq!(frak_p(&op("1")), p("1"));
        assert_eq!(frak_p(&op("1,1")), &p("1,1") - &p("1"));
        let expected = &(&p("3") - &p("1,1").scale(&int(3))) + &p("1").scale(&int(2));
        assert_eq!(frak_p(&op("3")), expected);
        assert_eq!(frak_p(&op("")), GammaElement::one());
    }

    #[test]
    fn frak_p_eval_examples() {
        for k in 0..=5 {
            for n in 0..=7 {
                for lambda in enumerate_strict(n) {
                    let expected = falling(&int(n as i64), k);
                    assert_eq!(frak_p_eval(&OddPartition::ones(k as usize), &lambda), expected);
                }
            }
        }
        assert_eq!(frak_p_eval(&op("5"), &sp("3")), int(0));
        assert_eq!(frak_p_eval(&op("3"), &sp("2,1")), int(-12));
        assert_eq!(frak_p(&op("3")).evaluate(&sp("2,1")), int(-12));
    }

    #[test]
    fn example_expansions() {
        let cases: Vec<(&str, FrakExpansion)> = vec![
            ("1", frak(&[("1", int(1))])),
            ("1,1", frak(&[("1,1", int(1)), ("1", int(1))])),
            ("3", frak(&[("3", int(1)), ("1,1", int(3)), ("1", int(1))])),
            ("1,1,1", frak(&[("1,1,1", int(1)), ("1,1", int(3)), ("1", int(1))])),
            (
                "3,1",
                frak(&[
                    ("3,1", int(1)),
                    ("3", int(3)),
                    ("1,1,1", int(3)),
                    ("1,1", int(7)),
                    ("1", int(1)),
                ]),
            ),
            (
                "1,1,1,1",
                frak(&[("1,1,1,1", int(1)), ("1,1,1", int(6)), ("1,1", int(7)), ("1", int(1))]),
            ),
            (
                "5",
                frak(&[
                    ("5", int(1)),
                    ("3,1", int(10)),
                    ("3", ratio(35, 3)),
                    ("1,1,1", ratio(40, 3)),
                    ("1,1", int(15)),
                    ("1", int(1)),
                ]),
            ),
            (
                "3,1,1",
                frak(&[
                    ("3,1,1", int(1)),
                    ("3,1", int(7)),
                    ("1,1,1,1", int(3)),
                    ("3", int(9)),
                    ("1,1,1", int(16)),
                    ("1,1", int(15)),
                    ("1", int(1)),
                ]),
            ),
            (
                "1,1,1,1,1",
                frak(&[
                    ("1,1,1,1,1", int(1)),
                    ("1,1,1,1", int(10)),
                    ("1,1,1", int(25)),
                    ("1,1", int(15)),
                    ("1", int(1)),
                ]),
            ),
        ];
        for (rho, expected) in cases {
            assert_eq!(expand_p_in_frak(&op(rho)), expected, "p[{rho}]");
            assert_eq!(expand_gamma_in_frak(&p(rho)), expected, "p[{rho}] by peeling");
        }
    }

    #[test]
    fn three_step_route_reassembles() {
        for k in 0..=7 {
            for rho in enumerate_odd(k) {
                assert_eq!(assemble(&expand_p_in_frak(&rho)), GammaElement::p(rho.clone()), "{rho}");
            }
        }
    }

    #[test]
    fn frak_p_is_psi_of_p() {
        for k in 0..=6 {
            for rho in enumerate_odd(k) {
                let via_psi = crate::factorial::psi_iso(&GammaElement::p(rho.clone()));
                assert_eq!(frak_p(&rho), via_psi);
                let top = frak_p(&rho).top_component();
                assert_eq!(top, GammaElement::p(rho.clone()));
            }
        }
    }

    #[test]
    fn closed_form_matches_assembly() {
        for k in 0..=6 {
            for rho in enumerate_odd(k) {
                let f = frak_p(&rho);
                let (rho_tilde, m1) = tilde(&rho);
                for n in 0..=8 {
                    for lambda in enumerate_strict(n) {
                        let closed = frak_p_eval(&rho, &lambda);
                        assert_eq!(f.evaluate(&lambda), closed, "{rho} at {lambda}");
                        let factor = falling(&int(n as i64 - rho_tilde.size() as i64), m1 as u32);
                        assert_eq!(closed, factor * frak_p_eval(&rho_tilde, &lambda));
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_expansion_examples() {
        assert_eq!(expand_gamma_in_frak(&p("1,1")), frak(&[("1,1", int(1)), ("1", int(1))]));
        assert_eq!(expand_gamma_in_frak(&GammaElement::one()), frak(&[("", int(1))]));
        assert!(expand_gamma_in_frak(&GammaElement::zero()).is_zero());
    }

    #[test]
    fn deg1_examples() {
        assert_eq!(deg1(&FrakExpansion::basis(op("1,1"))).unwrap(), 4);
        assert_eq!(deg1(&FrakExpansion::basis(op("3"))).unwrap(), 3);
        assert_eq!(deg1(&expand_p_in_frak(&op("3"))).unwrap(), 4);
        assert_eq!(deg1(&FrakExpansion::zero()), Err(Error::ZeroElement));
    }

    #[test]
    fn display_and_records() {
        let e = expand_p_in_frak(&op("5"));
        assert_eq!(
            e.to_string(),
            "fp[5] + 10*fp[3,1] + 35/3*fp[3] + 40/3*fp[1,1,1] + 15*fp[1,1] + fp[1]"
        );
        assert_eq!(FrakExpansion::from_records(&e.to_records()).unwrap(), e);
    }

    fn arb_element(max_degree: u32) -> impl Strategy<Value = GammaElement> {
        let basis: Vec<OddPartition> = (0..=max_degree).flat_map(enumerate_odd).collect();
        let n = basis.len();
        prop::collection::vec((0..n, -6i64..=6, 1i64..=4), 0..6).prop_map(move |raw| {
            GammaElement::from_terms(
                raw.into_iter()
                    .map(|(i, num, den)| (basis[i].clone(), ratio(num, den))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn expansion_round_trips(f in arb_element(7)) {
            prop_assert_eq!(assemble(&expand_gamma_in_frak(&f)), f);
        }
    }
}
