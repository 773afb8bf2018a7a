//! The algebra Γ generated by the odd power sums `p_1, p_3, p_5, …`.
//!
//! An element is a finite sparse association from odd partitions `ρ` to
//! rational coefficients of `p_ρ = p_{ρ_1} p_{ρ_2} ⋯`. Zero coefficients are
//! never stored, so structural equality is mathematical equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{z, OddPartition, StrictPartition};
use crate::rational::{self, pow2, Rational};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<TermRecord>", try_from = "Vec<TermRecord>")]
pub struct GammaElement {
    terms: BTreeMap<OddPartition, Rational>,
}

/// Wire form of a single term: `{"partition": "3,1,1", "coeff": "-2/3"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub partition: String,
    pub coeff: String,
}

impl GammaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(OddPartition::empty(), c)
    }

    /// `c · p_ρ`.
    pub fn term(rho: OddPartition, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(rho, c);
        }
        Self { terms }
    }

    /// The basis element `p_ρ`.
    pub fn p(rho: OddPartition) -> Self {
        Self::term(rho, Rational::one())
    }

    /// The power sum `p_r` for odd `r`.
    pub fn p_single(r: u32) -> Result<Self> {
        Ok(Self::p(OddPartition::single(r)?))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (OddPartition, Rational)>) -> Self {
        let mut out = Self::zero();
        for (rho, c) in terms {
            out.add_term(rho, c);
        }
        out
    }

    pub fn add_term(&mut self, rho: OddPartition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(rho) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Adds `c · other` in place.
    pub fn add_scaled(&mut self, c: &Rational, other: &GammaElement) {
        if c.is_zero() {
            return;
        }
        for (rho, a) in &other.terms {
            self.add_term(rho.clone(), c * a);
        }
    }

    /// Terms in increasing order (by degree, then lexicographically).
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&OddPartition, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, rho: &OddPartition) -> Rational {
        self.terms.get(rho).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Maximal `|ρ|` over the support; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(OddPartition::size).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut sizes = self.terms.keys().map(OddPartition::size);
        match sizes.next() {
            None => true,
            Some(first) => sizes.all(|s| s == first),
        }
    }

    /// Degree-`d` homogeneous component.
    pub fn homogeneous(&self, d: u32) -> GammaElement {
        GammaElement {
            terms: self
                .terms
                .iter()
                .filter(|(rho, _)| rho.size() == d)
                .map(|(rho, c)| (rho.clone(), c.clone()))
                .collect(),
        }
    }

    /// Highest-degree homogeneous component (zero for zero).
    pub fn top_component(&self) -> GammaElement {
        match self.degree() {
            Some(d) => self.homogeneous(d),
            None => GammaElement::zero(),
        }
    }

    pub fn scale(&self, c: &Rational) -> GammaElement {
        if c.is_zero() {
            return GammaElement::zero();
        }
        GammaElement {
            terms: self
                .terms
                .iter()
                .map(|(rho, a)| (rho.clone(), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> GammaElement {
        let mut acc = GammaElement::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `⟨f, g⟩` with `⟨p_ρ, p_σ⟩ = 2^{-ℓ(ρ)} z_ρ δ_{ρσ}`.
    pub fn scalar_product(&self, other: &GammaElement) -> Rational {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Rational::zero();
        for (rho, a) in &small.terms {
            if let Some(b) = large.terms.get(rho) {
                acc += a * b * basis_norm(rho);
            }
        }
        acc
    }

    /// `f(λ_1, …, λ_ℓ, 0, 0, …)`.
    pub fn evaluate(&self, lambda: &StrictPartition) -> Rational {
        let max_part = self
            .terms
            .keys()
            .filter_map(|rho| rho.parts().first().copied())
            .max()
            .unwrap_or(0);
        let sums = power_sums(lambda.parts(), max_part);
        let mut acc = Rational::zero();
        for (rho, c) in &self.terms {
            let product: BigInt = rho.parts().iter().map(|&r| &sums[r as usize]).product();
            acc += c * Rational::from_integer(product);
        }
        acc
    }

    /// The formal derivative `∂/∂p_1`: `p_ρ ↦ m_1(ρ) p_{ρ ∖ (1)}`.
    pub fn d_dp1(&self) -> GammaElement {
        let mut out = GammaElement::zero();
        for (rho, c) in &self.terms {
            let m1 = rho.multiplicity(1);
            if let Some(reduced) = rho.remove_one() {
                out.add_term(reduced, c * Rational::from_integer(BigInt::from(m1)));
            }
        }
        out
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
        let mut out = GammaElement::zero();
        for record in records {
            let rho: OddPartition = record.partition.parse()?;
            let c = rational::parse(&record.coeff)?;
            if out.terms.contains_key(&rho) {
                return Err(Error::Malformed(format!(
                    "partition `{}` appears twice",
                    record.partition
                )));
            }
            out.add_term(rho, c);
        }
        Ok(out)
    }
}

/// `⟨p_ρ, p_ρ⟩ = 2^{-ℓ(ρ)} z_ρ`.
pub fn basis_norm(rho: &OddPartition) -> Rational {
    pow2(-(rho.len() as i64)) * Rational::from_integer(z(rho))
}

/// `[p_0, p_1(x), …, p_max(x)]` with `p_0` unused (set to the number of parts).
pub fn power_sums(values: &[u32], max_power: u32) -> Vec<BigInt> {
    let mut sums = vec![BigInt::zero(); max_power as usize + 1];
    sums[0] = BigInt::from(values.len());
    for &v in values {
        let mut power = BigInt::one();
        for slot in sums.iter_mut().skip(1) {
            power *= v;
            *slot += &power;
        }
    }
    sums
}

impl From<GammaElement> for Vec<TermRecord> {
    fn from(value: GammaElement) -> Self {
        value.to_records()
    }
}

impl TryFrom<Vec<TermRecord>> for GammaElement {
    type Error = Error;

    fn try_from(records: Vec<TermRecord>) -> Result<Self> {
        GammaElement::from_records(&records)
    }
}

impl fmt::Display for GammaElement {
    /// Renders highest degree first, e.g. `2/3*p[3] + 4/3*p[1,1,1]`, in a
    /// form the command-line expression parser accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (rho, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            if idx == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
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

impl AddAssign<&GammaElement> for GammaElement {
    fn add_assign(&mut self, rhs: &GammaElement) {
        for (rho, c) in &rhs.terms {
            self.add_term(rho.clone(), c.clone());
        }
    }
}

impl SubAssign<&GammaElement> for GammaElement {
    fn sub_assign(&mut self, rhs: &GammaElement) {
        for (rho, c) in &rhs.terms {
            self.add_term(rho.clone(), -c);
        }
    }
}

impl Add for &GammaElement {
    type Output = GammaElement;

    fn add(self, rhs: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for GammaElement {
    type Output = GammaElement;

    fn add(mut self, rhs: GammaElement) -> GammaElement {
        self += &rhs;
        self
    }
}

impl Sub for &GammaElement {
    type Output = GammaElement;

    fn sub(self, rhs: &GammaElement) -> GammaElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for GammaElement {
    type Output = GammaElement;

    fn sub(mut self, rhs: GammaElement) -> GammaElement {
        self -= &rhs;
        self
    }
}

impl Neg for &GammaElement {
    type Output = GammaElement;

    fn neg(self) -> GammaElement {
        GammaElement {
            terms: self
                .terms
                .iter()
                .map(|(rho, c)| (rho.clone(), -c))
                .collect(),
        }
    }
}

impl Neg for GammaElement {
    type Output = GammaElement;

    fn neg(self) -> GammaElement {
        -&self
    }
}

impl Mul for &GammaElement {
    type Output = GammaElement;

    fn mul(self, rhs: &GammaElement) -> GammaElement {
        let mut out = GammaElement::zero();
        for (a_rho, a) in &self.terms {
            for (b_rho, b) in &rhs.terms {
                out.add_term(a_rho.union(b_rho), a * b);
            }
        }
        out
    }
}

impl Mul for GammaElement {
    type Output = GammaElement;

    fn mul(self, rhs: GammaElement) -> GammaElement {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::enumerate_odd;
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

    #[test]
    fn ring_examples() {
        assert_eq!(&p("3") * &p("3,1"), p("3,3,1"));
        assert!((&p("1") + &p("1").scale(&int(-1))).is_zero());
        assert_eq!(&p("1") * &p("1"), p("1,1"));
        assert_eq!(&GammaElement::one() * &p("5,3"), p("5,3"));
    }

    #[test]
    fn scalar_product_examples() {
        assert_eq!(p("3").scalar_product(&p("3")), ratio(3, 2));
        assert_eq!(p("3").scalar_product(&p("1,1,1")), int(0));
        assert_eq!(p("3,1,1").scalar_product(&p("3,1,1")), ratio(3, 4));
        assert_eq!(GammaElement::one().scalar_product(&GammaElement::one()), int(1));
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(p("3").evaluate(&sp("2,1")), int(9));
        for lambda in ["", "1", "4,2,1", "7,3"] {
            let l = sp(lambda);
            assert_eq!(p("1").evaluate(&l), int(l.size() as i64));
        }
        let hat1 = &p("3").scale(&ratio(1, 6)) - &p("1").scale(&ratio(1, 6));
        assert_eq!(hat1.evaluate(&sp("3")), int(4));
        assert_eq!(GammaElement::one().evaluate(&sp("")), int(1));
        assert_eq!(p("1").evaluate(&sp("")), int(0));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!((&p("1,1") * &p("3")).d_dp1(), p("3,1").scale(&int(2)));
        assert!(p("3").d_dp1().is_zero());
        let lhs = (&p("1") * &p("1")).scalar_product(&p("1,1"));
        let rhs = p("1").scalar_product(&p("1,1").d_dp1()) * ratio(1, 2);
        assert_eq!(lhs, ratio(1, 2));
        assert_eq!(rhs, ratio(1, 2));
    }

    #[test]
    fn p1_adjointness_on_basis_terms() {
        let basis: Vec<OddPartition> = (0..=9).flat_map(enumerate_odd).collect();
        for rho in &basis {
            let f = GammaElement::p(rho.clone());
            let p1f = &p("1") * &f;
            for sigma in &basis {
                let g = GammaElement::p(sigma.clone());
                let lhs = p1f.scalar_product(&g);
                let rhs = f.scalar_product(&g.d_dp1()) * ratio(1, 2);
                assert_eq!(lhs, rhs, "{rho} / {sigma}");
            }
        }
    }

    #[test]
    fn display_and_records() {
        let f = &p("3").scale(&ratio(2, 3)) - &p("1,1,1").scale(&ratio(4, 3));
        let f = &f + &GammaElement::constant(int(-2));
        assert_eq!(f.to_string(), "2/3*p[3] - 4/3*p[1,1,1] - 2");
        let records = f.to_records();
        assert_eq!(records[0].partition, "3");
        assert_eq!(records[2].partition, "");
        assert_eq!(GammaElement::from_records(&records).unwrap(), f);
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"[{"partition":"3","coeff":"2/3"},{"partition":"1,1,1","coeff":"-4/3"},{"partition":"","coeff":"-2"}]"#
        );
        assert_eq!(serde_json::from_str::<GammaElement>(&json).unwrap(), f);
        assert_eq!(GammaElement::zero().to_string(), "0");
        assert_eq!((-p("5")).to_string(), "-p[5]");
    }

    #[test]
    fn records_reject_bad_input() {
        let bad = [TermRecord { partition: "2".into(), coeff: "1".into() }];
        assert!(GammaElement::from_records(&bad).is_err());
        let bad = [TermRecord { partition: "3".into(), coeff: "x".into() }];
        assert!(GammaElement::from_records(&bad).is_err());
        let dup = [
            TermRecord { partition: "3".into(), coeff: "1".into() },
            TermRecord { partition: "3".into(), coeff: "1".into() },
        ];
        assert!(GammaElement::from_records(&dup).is_err());
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

    fn arb_strict(max_size: u32) -> impl Strategy<Value = StrictPartition> {
        let all: Vec<StrictPartition> =
            (0..=max_size).flat_map(crate::partitions::enumerate_strict).collect();
        let n = all.len();
        (0..n).prop_map(move |i| all[i].clone())
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_morphism(f in arb_element(5), g in arb_element(5), lambda in arb_strict(8)) {
            let product = &f * &g;
            prop_assert_eq!(product.evaluate(&lambda), f.evaluate(&lambda) * g.evaluate(&lambda));
            let sum = &f + &g;
            prop_assert_eq!(sum.evaluate(&lambda), f.evaluate(&lambda) + g.evaluate(&lambda));
        }

        #[test]
        fn multiplication_commutes_and_associates(f in arb_element(4), g in arb_element(4), h in arb_element(3)) {
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        }

        #[test]
        fn records_round_trip(f in arb_element(7)) {
            prop_assert_eq!(GammaElement::from_records(&f.to_records()).unwrap(), f);
        }
    }
}
