//! Shifted Plancherel measures and averages under them.
//!
//! Brute-force averages sum over all strict partitions of the right size.
//! Symbolic averages expand in the `𝔭` basis, where the averages are known in
//! closed form, and come out as polynomials in `n` in the falling-factorial
//! basis `n^↓j`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frakp::{expand_gamma_in_frak, frak_p, frak_p_eval, tilde};
use crate::gamma::GammaElement;
use crate::partitions::{
    binomial, enumerate_strict, factorial, falling, g, g_skew, stirling1_signed_table,
    stirling2_table, OddPartition, StrictPartition,
};
use crate::poly::UniPoly;
use crate::rational::{pow2, Rational};

/// `Σ_j c_j n^↓j`, stored sparsely with no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PolynomialInN {
    falling: BTreeMap<u32, Rational>,
}

fn big(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

impl PolynomialInN {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(0, c)
    }

    /// `c · n^↓k`.
    pub fn term(k: u32, c: Rational) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    /// `n^↓k`.
    pub fn falling_power(k: u32) -> Self {
        Self::term(k, Rational::one())
    }

    pub fn from_falling(coeffs: impl IntoIterator<Item = (u32, Rational)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in coeffs {
            out.add_term(k, c);
        }
        out
    }

    /// `(n + c)^↓k = Σ_j C(k, j) c^↓(k-j) n^↓j`.
    pub fn shifted_falling(c: &Rational, k: u32) -> Self {
        Self::from_falling(
            (0..=k).map(|j| (j, big(binomial(k, j)) * falling(c, k - j))),
        )
    }

    pub fn add_term(&mut self, k: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.falling.entry(k).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.falling.remove(&k);
        }
    }

    /// `(k, c_k)` in increasing `k`.
    pub fn falling_coeffs(&self) -> impl DoubleEndedIterator<Item = (u32, &Rational)> {
        self.falling.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, k: u32) -> Rational {
        self.falling.get(&k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.falling.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.falling.keys().next_back().copied()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_falling(self.falling.iter().map(|(&k, a)| (k, a * c)))
    }

    pub fn eval(&self, n: &Rational) -> Rational {
        self.falling.iter().map(|(&k, c)| c * falling(n, k)).sum()
    }

    pub fn eval_int(&self, n: u32) -> Rational {
        self.eval(&Rational::from_integer(n.into()))
    }

    /// Coefficients in powers of `n`, via signed Stirling numbers of the first kind.
    pub fn to_monomial(&self) -> UniPoly {
        let mut out = UniPoly::zero();
        for (&k, c) in &self.falling {
            let s = stirling1_signed_table(k);
            let row = UniPoly::new(s.into_iter().map(big).collect());
            out = &out + &row.scale(c);
        }
        out
    }

    /// Inverse of [`to_monomial`](Self::to_monomial), via Stirling numbers of the second kind.
    pub fn from_monomial(p: &UniPoly) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            for (j, t) in stirling2_table(i as u32).into_iter().enumerate() {
                out.add_term(j as u32, c * big(t));
            }
        }
        out
    }

    /// Coefficients `b_j` of `Σ b_j C(n, j)`, i.e. `b_j = j! c_j`.
    pub fn to_binomial(&self) -> BTreeMap<u32, Rational> {
        self.falling
            .iter()
            .map(|(&k, c)| (k, c * big(factorial(k))))
            .collect()
    }

    pub fn from_binomial(coeffs: &BTreeMap<u32, Rational>) -> Self {
        Self::from_falling(
            coeffs
                .iter()
                .map(|(&k, b)| (k, b / big(factorial(k)))),
        )
    }

    /// Binomial-basis rendering: `6*C(n,4) + 8*C(n,3) + C(n,2)`.
    pub fn render_binomial(&self) -> String {
        let coeffs = self.to_binomial();
        render_sparse(coeffs.iter().rev(), |k| format!("C(n,{k})"))
    }

    /// Falling-factorial rendering with a caller-chosen name for `n^↓k`.
    pub fn render_falling(&self, basis: impl Fn(u32) -> String) -> String {
        render_sparse(self.falling.iter().rev(), basis)
    }

    /// Monomial rendering: `3*n^2 - 2*n`.
    pub fn render_monomial(&self) -> String {
        self.to_monomial().render("n")
    }
}

fn render_sparse<'a>(
    terms: impl Iterator<Item = (&'a u32, &'a Rational)>,
    basis: impl Fn(u32) -> String,
) -> String {
    let mut out = String::new();
    for (&k, c) in terms {
        let magnitude = c.abs();
        match (out.is_empty(), c.is_negative()) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if k == 0 {
            out.push_str(&magnitude.to_string());
        } else if magnitude.is_one() {
            out.push_str(&basis(k));
        } else {
            out.push_str(&format!("{magnitude}*{}", basis(k)));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for PolynomialInN {
    /// Falling-factorial rendering, highest first: `3*n^(2) + n^(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_falling(|k| format!("n^({k})")))
    }
}

impl Add for &PolynomialInN {
    type Output = PolynomialInN;

    fn add(self, rhs: &PolynomialInN) -> PolynomialInN {
        let mut out = self.clone();
        for (&k, c) in &rhs.falling {
            out.add_term(k, c.clone());
        }
        out
    }
}

impl Sub for &PolynomialInN {
    type Output = PolynomialInN;

    fn sub(self, rhs: &PolynomialInN) -> PolynomialInN {
        self + &-rhs
    }
}

impl Neg for &PolynomialInN {
    type Output = PolynomialInN;

    fn neg(self) -> PolynomialInN {
        self.scale(&-Rational::one())
    }
}

impl Mul for &PolynomialInN {
    type Output = PolynomialInN;

    /// `n^↓a n^↓b = Σ_k C(a,k) C(b,k) k! n^↓(a+b-k)`.
    fn mul(self, rhs: &PolynomialInN) -> PolynomialInN {
        let mut out = PolynomialInN::zero();
        for (&a, x) in &self.falling {
            for (&b, y) in &rhs.falling {
                let xy = x * y;
                for k in 0..=a.min(b) {
                    let w = binomial(a, k) * binomial(b, k) * factorial(k);
                    out.add_term(a + b - k, &xy * big(w));
                }
            }
        }
        out
    }
}

/// A function on strict partitions that can be averaged.
pub trait Observable {
    fn observe(&self, lambda: &StrictPartition) -> Rational;
}

impl Observable for GammaElement {
    fn observe(&self, lambda: &StrictPartition) -> Rational {
        self.evaluate(lambda)
    }
}

/// `ℙ_n(λ) = 2^{n-ℓ(λ)} (g^λ)² / n!`.
pub fn prob(n: u32, lambda: &StrictPartition) -> Result<Rational> {
    if lambda.size() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            found: lambda.size(),
        });
    }
    let gl = g(lambda);
    Ok(pow2(n as i64 - lambda.len() as i64) * Rational::new(&gl * &gl, factorial(n)))
}

/// `ℙ_{μ,n}(λ) = m!/(n+m)! · 2^{n-ℓ(λ)+ℓ(μ)} · (g^λ / g^μ) · g^{λ/μ}` with `m = |μ|`.
pub fn prob_mu(mu: &StrictPartition, n: u32, lambda: &StrictPartition) -> Result<Rational> {
    let m = mu.size();
    if lambda.size() != n + m {
        return Err(Error::SizeMismatch {
            expected: n + m,
            found: lambda.size(),
        });
    }
    let skew = g_skew(lambda, mu);
    if skew.is_zero() {
        return Ok(Rational::zero());
    }
    let e = n as i64 - lambda.len() as i64 + mu.len() as i64;
    let numer = factorial(m) * g(lambda) * skew;
    let denom = factorial(n + m) * g(mu);
    Ok(pow2(e) * Rational::new(numer, denom))
}

/// `𝔼_n[f]` by summing over all strict partitions of `n`.
pub fn average_bruteforce<F: Observable + Sync + ?Sized>(f: &F, n: u32) -> Rational {
    enumerate_strict(n)
        .par_iter()
        .map(|lambda| prob(n, lambda).expect("enumerated with size n") * f.observe(lambda))
        .reduce(Rational::zero, |a, b| a + b)
}

/// `𝔼_{μ,n}[f]` by summing over strict partitions of `n + |μ|` containing `μ`.
pub fn average_mu_bruteforce<F: Observable + Sync + ?Sized>(
    f: &F,
    mu: &StrictPartition,
    n: u32,
) -> Rational {
    enumerate_strict(n + mu.size())
        .par_iter()
        .filter(|lambda| mu.is_contained_in(lambda))
        .map(|lambda| prob_mu(mu, n, lambda).expect("sizes agree") * f.observe(lambda))
        .reduce(Rational::zero, |a, b| a + b)
}

/// `𝔼_n[f] = Σ_r a_{(1^r)} n^↓r` where `f = Σ a_ρ 𝔭_ρ`.
pub fn average_symbolic(f: &GammaElement) -> PolynomialInN {
    let mut out = PolynomialInN::zero();
    for (rho, c) in expand_gamma_in_frak(f).terms() {
        if rho.is_all_ones() {
            out.add_term(rho.size(), c.clone());
        }
    }
    out
}

/// `𝔼_{μ,n}[f]`, using `𝔼_{μ,n}[𝔭_ρ] = (n + |μ| - |ρ̃|)^↓m_1(ρ) · 𝔭_ρ̃(μ)`.
pub fn average_mu_symbolic(f: &GammaElement, mu: &StrictPartition) -> PolynomialInN {
    let mut out = PolynomialInN::zero();
    for (rho, c) in expand_gamma_in_frak(f).terms() {
        let (rho_tilde, m1) = tilde(rho);
        let value = frak_p_eval(&rho_tilde, mu);
        if value.is_zero() {
            continue;
        }
        let shift = Rational::from_integer(BigInt::from(mu.size()) - rho_tilde.size());
        let factor = PolynomialInN::shifted_falling(&shift, m1 as u32);
        out = &out + &factor.scale(&(c * value));
    }
    out
}

/// `𝔼_n[𝔭_ρ 𝔭_σ]` for `ρ, σ` without parts equal to 1.
pub fn product_average_check(rho: &OddPartition, sigma: &OddPartition) -> Result<PolynomialInN> {
    for x in [rho, sigma] {
        if x.multiplicity(1) != 0 {
            return Err(Error::Precondition(format!("{x} has parts equal to 1")));
        }
    }
    Ok(average_symbolic(&(&frak_p(rho) * &frak_p(sigma))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frakp::{deg1, deg1_of};
    use crate::partitions::{enumerate_odd, z};
    use crate::rational::{int, ratio};
    use proptest::prelude::*;

    fn sp(text: &str) -> StrictPartition {
        text.parse().unwrap()
    }

    fn op(text: &str) -> OddPartition {
        text.parse().unwrap()
    }

    fn p(text: &str) -> GammaElement {
        GammaElement::p(op(text))
    }

    fn falling_poly(coeffs: &[(u32, Rational)]) -> PolynomialInN {
        PolynomialInN::from_falling(coeffs.iter().cloned())
    }

    #[test]
    fn prob_examples() {
        assert_eq!(prob(5, &sp("4,1")).unwrap(), ratio(72, 120));
        assert_eq!(prob(5, &sp("3,2")).unwrap(), ratio(32, 120));
        assert_eq!(prob(5, &sp("5")).unwrap(), ratio(16, 120));
        assert_eq!(prob(0, &sp("")).unwrap(), int(1));
        assert!(matches!(prob(4, &sp("3,2")), Err(Error::SizeMismatch { .. })));
    }

    #[test]
    fn measures_are_normalized() {
        for n in 0..=10 {
            let total: Rational = enumerate_strict(n).iter().map(|l| prob(n, l).unwrap()).sum();
            assert_eq!(total, int(1), "n = {n}");
        }
        for m in 0..=5 {
            for mu in enumerate_strict(m) {
                for n in 0..=5 {
                    let total: Rational = enumerate_strict(n + m)
                        .iter()
                        .map(|l| prob_mu(&mu, n, l).unwrap())
                        .sum();
                    assert_eq!(total, int(1), "mu = {mu}, n = {n}");
                }
            }
        }
    }

    #[test]
    fn prob_mu_examples() {
        for n in 0..=6 {
            for lambda in enumerate_strict(n) {
                assert_eq!(prob_mu(&sp(""), n, &lambda).unwrap(), prob(n, &lambda).unwrap());
            }
        }
        assert_eq!(prob_mu(&sp("3,1"), 0, &sp("3,1")).unwrap(), int(1));
        assert_eq!(prob_mu(&sp("2,1"), 1, &sp("4")).unwrap(), int(0));
        assert_eq!(prob_mu(&sp("2,1"), 1, &sp("3,1")).unwrap(), int(1));
        assert!(prob_mu(&sp("2,1"), 1, &sp("4,1")).is_err());
    }

    #[test]
    fn falling_basis_conversions() {
        let f = falling_poly(&[(2, int(3)), (1, int(1))]);
        // 3n(n-1) + n = 3n^2 - 2n
        assert_eq!(f.to_monomial(), UniPoly::from_ints(&[0, -2, 3]));
        assert_eq!(PolynomialInN::from_monomial(&f.to_monomial()), f);
        assert_eq!(PolynomialInN::from_binomial(&f.to_binomial()), f);
        assert_eq!(f.to_string(), "3*n^(2) + n^(1)");
        assert_eq!(f.render_binomial(), "6*C(n,2) + C(n,1)");
        assert_eq!(f.render_monomial(), "3*n^2 - 2*n");
        assert_eq!(PolynomialInN::zero().to_string(), "0");
        for n in 0..8 {
            assert_eq!(f.eval_int(n), int(3 * (n as i64).pow(2) - 2 * n as i64));
        }
    }

    #[test]
    fn falling_products_and_shifts() {
        let a = falling_poly(&[(3, ratio(1, 2)), (1, int(-2))]);
        let b = falling_poly(&[(2, int(5)), (0, int(1))]);
        let prod = &a * &b;
        for n in 0..10 {
            let x = int(n);
            assert_eq!(prod.eval(&x), a.eval(&x) * b.eval(&x));
        }
        for c in [-3i64, 0, 2] {
            for k in 0..5 {
                let shifted = PolynomialInN::shifted_falling(&int(c), k);
                for n in 0..8 {
                    assert_eq!(shifted.eval_int(n), falling(&int(n as i64 + c), k));
                }
            }
        }
    }

    #[test]
    fn average_examples() {
        assert_eq!(average_bruteforce(&p("3"), 3), int(21));
        for n in 0..6 {
            assert_eq!(average_bruteforce(&GammaElement::one(), n), int(1));
        }
        assert_eq!(average_symbolic(&p("3")), falling_poly(&[(2, int(3)), (1, int(1))]));
        assert_eq!(
            average_symbolic(&p("5")),
            falling_poly(&[(3, ratio(40, 3)), (2, int(15)), (1, int(1))])
        );
        assert_eq!(
            average_symbolic(&(&p("3") * &p("3"))),
            falling_poly(&[(4, int(9)), (3, int(54)), (2, int(31)), (1, int(1))])
        );
    }

    #[test]
    fn symbolic_matches_bruteforce() {
        let mut fs = vec![p("3"), p("5"), &p("3") * &p("3")];
        for k in 0..=5 {
            for rho in enumerate_odd(k) {
                fs.push(frak_p(&rho));
            }
        }
        for f in &fs {
            let poly = average_symbolic(f);
            for n in 0..=9 {
                assert_eq!(poly.eval_int(n), average_bruteforce(f, n), "{f} at n = {n}");
            }
        }
    }

    #[test]
    fn mu_symbolic_matches_bruteforce() {
        let fs = [p("3"), p("5"), &p("3") * &p("3"), frak_p(&op("3,1")), p("1,1")];
        for m in 0..=4 {
            for mu in enumerate_strict(m) {
                for f in &fs {
                    let poly = average_mu_symbolic(f, &mu);
                    for n in 0..=6 {
                        assert_eq!(poly.eval_int(n), average_mu_bruteforce(f, &mu, n), "{f}, {mu}, {n}");
                    }
                }
            }
        }
        let f = &p("3,3") + &p("5");
        assert_eq!(average_mu_symbolic(&f, &sp("")), average_symbolic(&f));
        assert_eq!(
            average_mu_symbolic(&frak_p(&op("3")), &sp("2,1")),
            PolynomialInN::constant(int(-12))
        );
    }

    #[test]
    fn frak_averages_are_constant() {
        let rhos: Vec<OddPartition> = (0..=7)
            .flat_map(enumerate_odd)
            .filter(|r| r.multiplicity(1) == 0)
            .collect();
        for m in 0..=5 {
            for mu in enumerate_strict(m) {
                for rho in &rhos {
                    let f = frak_p(rho);
                    let expected = frak_p_eval(rho, &mu);
                    for n in 0..=4 {
                        assert_eq!(average_mu_bruteforce(&f, &mu, n), expected, "{rho} {mu} {n}");
                    }
                }
            }
        }
    }

    #[test]
    fn product_average_examples() {
        let closed = |rho: &OddPartition| {
            PolynomialInN::term(
                rho.size(),
                pow2(rho.size() as i64 - rho.len() as i64) * big(z(rho)),
            )
        };
        assert_eq!(
            product_average_check(&op("3"), &op("3")).unwrap(),
            PolynomialInN::term(3, int(12))
        );
        assert_eq!(product_average_check(&op("3"), &op("5")).unwrap(), PolynomialInN::zero());
        assert_eq!(product_average_check(&op(""), &op("")).unwrap(), PolynomialInN::constant(int(1)));
        assert!(product_average_check(&op("3,1"), &op("3")).is_err());
        for rho in ["", "3", "5", "3,3"] {
            for sigma in ["", "3", "5", "3,3"] {
                let got = product_average_check(&op(rho), &op(sigma)).unwrap();
                let expected = if rho == sigma { closed(&op(rho)) } else { PolynomialInN::zero() };
                assert_eq!(got, expected, "{rho} x {sigma}");
            }
        }
    }

    fn small_gamma() -> impl Strategy<Value = GammaElement> {
        let basis: Vec<OddPartition> = (0..=7).flat_map(enumerate_odd).collect();
        prop::collection::vec((0..basis.len(), -4i64..=4, 1i64..=3), 1..5).prop_map(move |terms| {
            GammaElement::from_terms(
                terms.into_iter().map(|(i, a, b)| (basis[i].clone(), ratio(a, b))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn average_degree_is_at_most_half_deg1(f in small_gamma()) {
            let expansion = expand_gamma_in_frak(&f);
            if let Ok(bound) = deg1(&expansion) {
                let avg = average_symbolic(&f);
                if let Some(d) = avg.degree() {
                    prop_assert!(2 * d <= bound);
                }
                prop_assert!(expansion.terms().all(|(rho, _)| deg1_of(rho) <= bound));
            }
        }
    }
}
