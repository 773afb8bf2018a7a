//! Factorial Schur P*-functions.
//!
//! `P*_μ` is obtained by inverting the unitriangular system
//! `P_λ = Σ_j T(λ_1, j_1) ⋯ T(λ_l, j_l) P*_(j_1, …, j_l)`, where `T` are
//! Stirling numbers of the second kind and an index sequence with repeated
//! entries contributes nothing. The diagonal coefficient is
//! `T(λ_1, λ_1) ⋯ = 1`, and every other index normalises to a strict
//! partition of smaller size, so the system is solved in increasing degree.
//!
//! The closed form `P*_μ(λ) = |λ|^↓|μ| g^{λ/μ} / g^λ` is provided separately
//! and serves as an independent check of the expansion.

use std::collections::BTreeMap;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::Memo;
use crate::gamma::GammaElement;
use crate::partitions::{falling_int, g, g_skew, stirling2_table, StrictPartition};
use crate::rational::Rational;
use crate::schurq::{expand_in_P, p_fn};

/// An index sequence `(j_1, …, j_l)` brought to a strict partition, with the
/// sign of the sorting permutation. Repeated entries give `partition = None`
/// and `sign = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIndex {
    pub partition: Option<StrictPartition>,
    pub sign: i8,
}

pub fn normalize_index(indices: &[u32]) -> SignedIndex {
    let mut inversions = 0usize;
    for (a, &x) in indices.iter().enumerate() {
        for &y in &indices[a + 1..] {
            if x == y {
                return SignedIndex {
                    partition: None,
                    sign: 0,
                };
            }
            if x < y {
                inversions += 1;
            }
        }
    }
    let mut sorted = indices.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let partition = StrictPartition::new(sorted).ok();
    let sign = if partition.is_none() {
        0
    } else if inversions % 2 == 0 {
        1
    } else {
        -1
    };
    SignedIndex { partition, sign }
}

static P_TO_PSTAR: LazyLock<Memo<StrictPartition, BTreeMap<StrictPartition, BigInt>>> =
    LazyLock::new(Memo::new);
static PSTAR: LazyLock<Memo<StrictPartition, GammaElement>> = LazyLock::new(Memo::new);

/// Coefficients of `P_λ = Σ_μ c_μ P*_μ`, collected from all index sequences
/// `j_i ∈ 1..=λ_i`.
#[allow(non_snake_case)]
pub fn expand_P_in_Pstar(lambda: &StrictPartition) -> BTreeMap<StrictPartition, BigInt> {
    P_TO_PSTAR.get_or_compute(lambda, || {
        let rows: Vec<Vec<BigInt>> = lambda.parts().iter().map(|&p| stirling2_table(p)).collect();
        let mut out: BTreeMap<StrictPartition, BigInt> = BTreeMap::new();
        let mut index = vec![1u32; lambda.len()];
        loop {
            let normalized = normalize_index(&index);
            if let Some(mu) = normalized.partition {
                let weight: BigInt = index
                    .iter()
                    .zip(&rows)
                    .map(|(&j, row)| &row[j as usize])
                    .product();
                *out.entry(mu).or_insert_with(BigInt::zero) += weight * normalized.sign;
            }
            // odometer over j_i ∈ 1..=λ_i
            let mut pos = 0;
            loop {
                if pos == index.len() {
                    out.retain(|_, c| !c.is_zero());
                    return out;
                }
                if index[pos] < lambda.parts()[pos] {
                    index[pos] += 1;
                    break;
                }
                index[pos] = 1;
                pos += 1;
            }
        }
    })
}

/// The factorial Schur function `P*_μ` in the `p_ρ` basis.
pub fn p_star(mu: &StrictPartition) -> GammaElement {
    if mu.is_empty() {
        return GammaElement::one();
    }
    PSTAR.get_or_compute(mu, || {
        let mut out = p_fn(mu);
        for (nu, c) in expand_P_in_Pstar(mu) {
            if &nu == mu {
                debug_assert!(c.is_one());
                continue;
            }
            out.add_scaled(&-Rational::from_integer(c), &p_star(&nu));
        }
        out
    })
}

/// `P*_μ(λ) = |λ|^↓|μ| g^{λ/μ} / g^λ`.
pub fn p_star_eval(mu: &StrictPartition, lambda: &StrictPartition) -> Rational {
    let skew = g_skew(lambda, mu);
    if skew.is_zero() {
        return Rational::zero();
    }
    let falling = falling_int(lambda.size() as i64, mu.size());
    Rational::new(falling * skew, g(lambda))
}

/// The linear map `Ψ` with `Ψ(P_λ) = P*_λ`.
pub fn psi_iso(f: &GammaElement) -> GammaElement {
    let mut out = GammaElement::zero();
    for (lambda, c) in expand_in_P(f) {
        out.add_scaled(&c, &p_star(&lambda));
    }
    out
}

/// `Ψ^{-1}`, by repeatedly peeling off the top-degree component: if `h` is
/// the top component of `f`, then `Ψ(h)` agrees with `f` in top degree.
pub fn psi_iso_inverse(f: &GammaElement) -> GammaElement {
    let mut remaining = f.clone();
    let mut out = GammaElement::zero();
    while !remaining.is_zero() {
        let top = remaining.top_component();
        remaining -= &psi_iso(&top);
        out += &top;
    }
    out
}
