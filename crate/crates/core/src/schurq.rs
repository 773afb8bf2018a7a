//! Schur P- and Q-functions in the power-sum basis, and the spin character
//! values `X^λ_ρ = ⟨p_ρ, Q_λ⟩`.
//!
//! `Q_λ` is assembled from three ingredients:
//!
//! 1. one-row functions `Q_(k) = Σ_{ρ ⊢ k odd} 2^{ℓ(ρ)} z_ρ^{-1} p_ρ`;
//! 2. two-row functions
//!    `Q_(r,s) = Q_(r) Q_(s) + 2 Σ_{i=1}^{s} (-1)^i Q_(r+i) Q_(s-i)`;
//! 3. for three or more rows, the Pfaffian of the matrix `[Q_(λ_i, λ_j)]`
//!    (a zero part is appended when the length is odd), expanded along the
//!    first row.
//!
//! Character values are then read off as coefficients:
//! `[p_ρ] Q_λ = 2^{ℓ(ρ)} z_ρ^{-1} X^λ_ρ`.

use std::collections::BTreeMap;
use std::sync::{Arc, LazyLock};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::gamma::GammaElement;
use crate::partitions::{enumerate_odd, enumerate_strict, z, OddPartition, StrictPartition};
use crate::rational::{pow2, Rational};

static ONE_ROW: LazyLock<Memo<u32, GammaElement>> = LazyLock::new(Memo::new);
static TWO_ROW: LazyLock<Memo<(u32, u32), GammaElement>> = LazyLock::new(Memo::new);
static Q_CACHE: LazyLock<Memo<StrictPartition, GammaElement>> = LazyLock::new(Memo::new);
static TABLES: LazyLock<Memo<u32, Arc<CharacterTable>>> = LazyLock::new(Memo::new);

/// `Q_(k)`; `Q_(0) = 1`.
pub fn q_onerow(k: u32) -> GammaElement {
    ONE_ROW.get_or_compute(&k, || {
        GammaElement::from_terms(enumerate_odd(k).into_iter().map(|rho| {
            let c = pow2(rho.len() as i64) / Rational::from_integer(z(&rho));
            (rho, c)
        }))
    })
}

/// `Q_(r,s)` for `r > s ≥ 0`.
fn q_tworow(r: u32, s: u32) -> GammaElement {
    debug_assert!(r > s);
    if s == 0 {
        return q_onerow(r);
    }
    TWO_ROW.get_or_compute(&(r, s), || {
        let mut out = &q_onerow(r) * &q_onerow(s);
        for i in 1..=s {
            let sign = if i % 2 == 0 { 2 } else { -2 };
            let product = &q_onerow(r + i) * &q_onerow(s - i);
            out.add_scaled(&Rational::from_integer(BigInt::from(sign)), &product);
        }
        out
    })
}

/// Schur `Q_λ` in the `p_ρ` basis. Homogeneous of degree `|λ|`.
pub fn q(lambda: &StrictPartition) -> GammaElement {
    match lambda.parts() {
        [] => GammaElement::one(),
        [k] => q_onerow(*k),
        [r, s] => q_tworow(*r, *s),
        _ => Q_CACHE.get_or_compute(lambda, || q_pfaffian(lambda.parts())),
    }
}

fn q_pfaffian(parts: &[u32]) -> GammaElement {
    let mut padded = parts.to_vec();
    if padded.len() % 2 == 1 {
        padded.push(0);
    }
    let first = padded[0];
    let mut out = GammaElement::zero();
    for j in 1..padded.len() {
        let minor: Vec<u32> = padded
            .iter()
            .enumerate()
            .filter(|&(idx, &p)| idx != 0 && idx != j && p != 0)
            .map(|(_, &p)| p)
            .collect();
        let minor = StrictPartition::new(minor).expect("sub-sequence of a strict partition");
        let entry = q_tworow(first, padded[j]);
        // 0-based column j is 1-based column j + 1, so the sign is (-1)^{j+1}.
        let sign = if j % 2 == 1 { 1 } else { -1 };
        let product = &entry * &q(&minor);
        out.add_scaled(&Rational::from_integer(BigInt::from(sign)), &product);
    }
    out
}

/// Schur `P_λ = 2^{-ℓ(λ)} Q_λ`.
pub fn p_fn(lambda: &StrictPartition) -> GammaElement {
    q(lambda).scale(&pow2(-(lambda.len() as i64)))
}

/// All values `X^λ_ρ` with `|λ| = |ρ| = k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    k: u32,
    rows: Vec<StrictPartition>,
    columns: Vec<OddPartition>,
    values: BTreeMap<(StrictPartition, OddPartition), Rational>,
}

impl CharacterTable {
    fn build(k: u32) -> Self {
        let rows = enumerate_strict(k);
        let columns = enumerate_odd(k);
        let mut values = BTreeMap::new();
        for lambda in &rows {
            let ql = q(lambda);
            for rho in &columns {
                let scale = Rational::from_integer(z(rho)) * pow2(-(rho.len() as i64));
                values.insert((lambda.clone(), rho.clone()), ql.coeff(rho) * scale);
            }
        }
        Self {
            k,
            rows,
            columns,
            values,
        }
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Strict partitions of `k` in enumeration order.
    pub fn rows(&self) -> &[StrictPartition] {
        &self.rows
    }

    /// Odd partitions of `k` in enumeration order.
    pub fn columns(&self) -> &[OddPartition] {
        &self.columns
    }

    pub fn get(&self, lambda: &StrictPartition, rho: &OddPartition) -> Option<&Rational> {
        self.values.get(&(lambda.clone(), rho.clone()))
    }

    /// Row-major CSV with a header row of class labels.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lambda");
        for rho in &self.columns {
            out.push_str(&format!(",\"{rho}\""));
        }
        out.push('\n');
        for lambda in &self.rows {
            out.push_str(&format!("\"{lambda}\""));
            for rho in &self.columns {
                out.push(',');
                out.push_str(&self.values[&(lambda.clone(), rho.clone())].to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// The (memoised) character table of degree `k`.
pub fn character_table(k: u32) -> Arc<CharacterTable> {
    TABLES.get_or_compute(&k, || Arc::new(CharacterTable::build(k)))
}

/// `X^λ_ρ`; requires `|λ| = |ρ|`.
pub fn character(lambda: &StrictPartition, rho: &OddPartition) -> Result<Rational> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch {
            expected: lambda.size(),
            found: rho.size(),
        });
    }
    let table = character_table(lambda.size());
    Ok(table
        .get(lambda, rho)
        .cloned()
        .unwrap_or_else(Rational::zero))
}

/// `X^λ_ρ` computed as the scalar product `⟨p_ρ, Q_λ⟩`; the slow route.
pub fn character_by_scalar_product(lambda: &StrictPartition, rho: &OddPartition) -> Rational {
    GammaElement::p(rho.clone()).scalar_product(&q(lambda))
}

/// Coefficients of `p_ρ = Σ_λ X^λ_ρ P_λ`.
#[allow(non_snake_case)]
pub fn expand_p_in_P(rho: &OddPartition) -> BTreeMap<StrictPartition, Rational> {
    let table = character_table(rho.size());
    table
        .rows()
        .iter()
        .filter_map(|lambda| {
            let x = table.get(lambda, rho)?.clone();
            (!x.is_zero()).then(|| (lambda.clone(), x))
        })
        .collect()
}

/// Coefficients of `f` in the `P_λ` basis: `f = Σ_λ ⟨f, Q_λ⟩ P_λ`.
#[allow(non_snake_case)]
pub fn expand_in_P(f: &GammaElement) -> BTreeMap<StrictPartition, Rational> {
    let mut degrees: Vec<u32> = f.terms().map(|(rho, _)| rho.size()).collect();
    degrees.sort_unstable();
    degrees.dedup();
    let mut out = BTreeMap::new();
    for d in degrees {
        let component = f.homogeneous(d);
        for lambda in enumerate_strict(d) {
            let c = component.scalar_product(&q(&lambda));
            if !c.is_zero() {
                out.insert(lambda, c);
            }
        }
    }
    out
}
