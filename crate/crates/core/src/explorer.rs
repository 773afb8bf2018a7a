//! Experiments around the `𝔭` basis: structure constants, the `deg₁`
//! filtration conjecture, and averages of the even power sum `p_2`.

use std::fmt::Display;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::content::OrdinaryPSumExpr;
use crate::frakp::{deg1_of, expand_gamma_in_frak, frak_p};
use crate::partitions::{enumerate_odd, OddPartition};
use crate::plancherel::average_bruteforce;
use crate::poly::UniPoly;
use crate::rational::Rational;

fn as_text<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_str(value)
}

/// One nonzero coefficient `f^ρ_{στ}` of `𝔭_σ 𝔭_τ = Σ_ρ f^ρ_{στ} 𝔭_ρ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct StructureConstantRecord {
    #[serde(serialize_with = "as_text")]
    pub sigma: OddPartition,
    #[serde(serialize_with = "as_text")]
    pub tau: OddPartition,
    #[serde(serialize_with = "as_text")]
    pub rho: OddPartition,
    #[serde(serialize_with = "as_text")]
    pub value: Rational,
    pub deg1_lhs: u32,
    pub deg1_rhs: u32,
}

impl StructureConstantRecord {
    /// `deg1_rhs - deg1_lhs`; negative means the conjectured bound fails.
    pub fn slack(&self) -> i64 {
        i64::from(self.deg1_rhs) - i64::from(self.deg1_lhs)
    }
}

/// Records for every nonzero structure constant, highest `ρ` first.
pub fn structure_constants(sigma: &OddPartition, tau: &OddPartition) -> Vec<StructureConstantRecord> {
    let product = &frak_p(sigma) * &frak_p(tau);
    let deg1_rhs = deg1_of(sigma) + deg1_of(tau);
    expand_gamma_in_frak(&product)
        .terms()
        .rev()
        .map(|(rho, c)| StructureConstantRecord {
            sigma: sigma.clone(),
            tau: tau.clone(),
            rho: rho.clone(),
            value: c.clone(),
            deg1_lhs: deg1_of(rho),
            deg1_rhs,
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Deg1ScanReport {
    pub max_total: u32,
    pub pairs_scanned: usize,
    pub records_checked: usize,
    pub min_slack: Option<i64>,
    pub max_slack: Option<i64>,
    pub violations: Vec<StructureConstantRecord>,
}

impl Deg1ScanReport {
    pub fn counterexample_found(&self) -> bool {
        !self.violations.is_empty()
    }
}

/// Checks `deg₁(𝔭_ρ) ≤ deg₁(𝔭_σ) + deg₁(𝔭_τ)` for every nonzero `f^ρ_{στ}`,
/// over unordered pairs of nonempty `σ, τ` with `|σ| + |τ| ≤ max_total`.
pub fn deg1_conjecture_scan(max_total: u32) -> Deg1ScanReport {
    let odd: Vec<OddPartition> = (1..max_total).flat_map(enumerate_odd).collect();
    let mut pairs = Vec::new();
    for (i, sigma) in odd.iter().enumerate() {
        for tau in &odd[i..] {
            if sigma.size() + tau.size() <= max_total {
                pairs.push((sigma, tau));
            }
        }
    }
    let per_pair: Vec<Vec<StructureConstantRecord>> = pairs
        .par_iter()
        .map(|(sigma, tau)| structure_constants(sigma, tau))
        .collect();
    let records_checked = per_pair.iter().map(Vec::len).sum();
    let slacks = per_pair.iter().flatten().map(StructureConstantRecord::slack);
    let min_slack = slacks.clone().min();
    let max_slack = slacks.max();
    let mut violations: Vec<StructureConstantRecord> = per_pair
        .into_iter()
        .flatten()
        .filter(|r| r.slack() < 0)
        .collect();
    violations.sort();
    Deg1ScanReport {
        max_total,
        pairs_scanned: pairs.len(),
        records_checked,
        min_slack,
        max_slack,
        violations,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Report {
    /// `(n, 𝔼_n[p_2])` for `n = 0..=max_n`.
    pub values: Vec<(u32, Rational)>,
    /// The quadratic through `n = 1, 2, 3`, when those values are available.
    pub fit: Option<UniPoly>,
    /// `𝔼_n[p_2] - fit(n)` for `n ≥ 4`.
    pub residuals: Vec<(u32, Rational)>,
}

impl P2Report {
    /// Whether some residual at `n ∈ {4, 5, 6}` is nonzero, so that no
    /// quadratic matches all values for `1 ≤ n ≤ 6`.
    pub fn quadratic_fails_by_six(&self) -> bool {
        self.residuals
            .iter()
            .any(|(n, r)| (4..=6).contains(n) && !num_traits::Zero::is_zero(r))
    }
}

/// Exact `𝔼_n[p_2]` with `p_2(λ) = Σ λ_i²`, and how far the values stray from
/// the quadratic through the first three.
pub fn p2_experiment(max_n: u32) -> P2Report {
    let p2 = OrdinaryPSumExpr::p("2".parse().expect("literal partition"));
    let values: Vec<(u32, Rational)> = (0..=max_n).map(|n| (n, average_bruteforce(&p2, n))).collect();
    let as_point = |(n, v): &(u32, Rational)| (Rational::from_integer((*n).into()), v.clone());
    let fit = (max_n >= 3).then(|| UniPoly::interpolate(&values[1..=3].iter().map(as_point).collect::<Vec<_>>()));
    let residuals = match &fit {
        Some(poly) => values[4.min(values.len())..]
            .iter()
            .map(|(n, v)| (*n, v - poly.eval(&Rational::from_integer((*n).into()))))
            .collect(),
        None => Vec::new(),
    };
    P2Report { values, fit, residuals }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frakp::FrakExpansion;
    use crate::partitions::enumerate_odd;
    use crate::plancherel::product_average_check;
    use crate::rational::{int, ratio};

    fn op(text: &str) -> OddPartition {
        text.parse().unwrap()
    }

    #[test]
    fn structure_constant_examples() {
        let one = structure_constants(&op("1"), &op("1"));
        assert_eq!(one[0].rho, op("1,1"));
        assert_eq!(one[0].value, int(1));

        let three = structure_constants(&op("3"), &op("3"));
        let cubed = three.iter().find(|r| r.rho == op("1,1,1")).unwrap();
        assert_eq!(cubed.value, int(12));

        for tau in ["", "1", "3,1", "5"] {
            let records = structure_constants(&op(""), &op(tau));
            assert_eq!(records.len(), 1);
            assert_eq!(records[0].rho, op(tau));
            assert_eq!(records[0].value, int(1));
        }
    }

    #[test]
    fn records_reassemble_product() {
        let records = structure_constants(&op("3"), &op("1,1"));
        let mut expansion = FrakExpansion::zero();
        for r in &records {
            assert_eq!(r.deg1_lhs, deg1_of(&r.rho));
            assert_eq!(r.deg1_rhs, 3 + 4);
            expansion.add_term(r.rho.clone(), r.value.clone());
        }
        assert_eq!(
            crate::frakp::assemble(&expansion),
            &frak_p(&op("3")) * &frak_p(&op("1,1"))
        );
    }

    #[test]
    fn all_ones_coefficients_match_product_averages() {
        let free: Vec<OddPartition> = (1..=5)
            .flat_map(enumerate_odd)
            .filter(|r| r.multiplicity(1) == 0)
            .collect();
        for sigma in &free {
            for tau in &free {
                let avg = product_average_check(sigma, tau).unwrap();
                for r in structure_constants(sigma, tau) {
                    if r.rho.is_all_ones() {
                        assert_eq!(avg.coeff(r.rho.size()), r.value);
                        assert_eq!(sigma, tau);
                    }
                }
            }
        }
    }

    #[test]
    fn small_scans() {
        let two = deg1_conjecture_scan(2);
        assert_eq!(two.pairs_scanned, 1);
        assert!(!two.counterexample_found());
        let six = deg1_conjecture_scan(6);
        assert!(!six.counterexample_found());
        assert!(six.min_slack.unwrap() >= 0);
        assert!(six.pairs_scanned > two.pairs_scanned);
    }

    #[test]
    fn p2_values() {
        let report = p2_experiment(6);
        let expected = [int(0), int(1), int(4), ratio(23, 3), int(12), int(17), ratio(1016, 45)];
        let got: Vec<Rational> = report.values.iter().map(|(_, v)| v.clone()).collect();
        assert_eq!(got, expected);
        assert_eq!(
            report.residuals,
            vec![(4, int(0)), (5, int(0)), (6, ratio(-4, 45))]
        );
        assert!(report.quadratic_fails_by_six());
        assert!(p2_experiment(2).fit.is_none());
    }
}
