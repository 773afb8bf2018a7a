//! A table of identity checks run against the library, each computed two ways
//! where possible. Backs `spinplan verify`.

use num_traits::Zero;
use serde::Serialize;

use crate::content::{hat_p, phi_series_check, psi, psi_direct};
use crate::explorer::{deg1_conjecture_scan, p2_experiment};
use crate::frakp::{expand_p_in_frak, frak_p, frak_p_eval, FrakExpansion};
use crate::gamma::GammaElement;
use crate::partitions::{enumerate_odd, enumerate_strict, g, OddPartition, StrictPartition};
use crate::plancherel::{
    average_bruteforce, average_mu_bruteforce, average_mu_symbolic, average_symbolic, prob,
    product_average_check, PolynomialInN,
};
use crate::rational::{int, ratio, Rational};
use crate::schurq::{character_table, q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const MISPRINT_NOTE: &str = "paper §1.4 display: suspected misprint, §5.2 confirmed";

fn op(text: &str) -> OddPartition {
    text.parse().expect("literal odd partition")
}

fn sp(text: &str) -> StrictPartition {
    text.parse().expect("literal strict partition")
}

fn p(text: &str) -> GammaElement {
    GammaElement::p(op(text))
}

fn falling(terms: &[(u32, Rational)]) -> PolynomialInN {
    PolynomialInN::from_falling(terms.iter().cloned())
}

fn check(id: &'static str, passed: bool, detail: impl Into<String>) -> Check {
    Check {
        id,
        passed,
        detail: detail.into(),
    }
}

fn measure() -> Check {
    let normalized = (0..=10).all(|n| {
        enumerate_strict(n)
            .iter()
            .map(|l| prob(n, l).expect("size n"))
            .sum::<Rational>()
            == int(1)
    });
    let values = [("5", 16), ("4,1", 72), ("3,2", 32)]
        .iter()
        .all(|(l, v)| prob(5, &sp(l)).ok() == Some(ratio(*v, 120)));
    check(
        "measure-normalization",
        normalized && values,
        "sums to 1 for n <= 10; P_5 = 16/120, 72/120, 32/120",
    )
}

fn characters() -> Check {
    let mut ok = true;
    for k in 0..=9 {
        let table = character_table(k);
        for lambda in table.rows() {
            for mu in table.rows() {
                let inner = q(lambda).scalar_product(&q(mu));
                let expected = if lambda == mu {
                    crate::rational::pow2(lambda.len() as i64)
                } else {
                    Rational::zero()
                };
                ok &= inner == expected;
            }
            ok &= table.get(lambda, &OddPartition::ones(k as usize))
                == Some(&Rational::from_integer(g(lambda)));
        }
        if k > 0 {
            let row = sp(&k.to_string());
            ok &= table.columns().iter().all(|c| table.get(&row, c) == Some(&int(1)));
        }
    }
    check(
        "character-table",
        ok,
        "Q orthogonality, X at 1^n equals g, one-row characters equal 1, degrees <= 9",
    )
}

fn plancherel_averages() -> Check {
    let hat1 = hat_p(1);
    let cases = [
        (p("3"), falling(&[(2, int(3)), (1, int(1))])),
        (p("5"), falling(&[(3, ratio(40, 3)), (2, int(15)), (1, int(1))])),
        (
            &p("3") * &p("3"),
            falling(&[(4, int(9)), (3, int(54)), (2, int(31)), (1, int(1))]),
        ),
        (hat1.clone(), falling(&[(2, ratio(1, 2))])),
        (hat_p(2), falling(&[(3, ratio(2, 3)), (2, ratio(1, 2))])),
        (
            hat1.pow(2),
            PolynomialInN::from_binomial(&[(4, int(6)), (3, int(8)), (2, int(1))].into_iter().collect()),
        ),
    ];
    let mut ok = true;
    for (f, expected) in &cases {
        let symbolic = average_symbolic(f);
        ok &= &symbolic == expected;
        ok &= (0..=9).all(|n| symbolic.eval_int(n) == average_bruteforce(f, n));
    }
    check(
        "plancherel-polynomiality",
        ok,
        "closed forms for p3, p5, p3^2, hat p1, hat p2, hat p1^2 match brute force for n <= 9",
    )
}

fn golden_expansions() -> Check {
    let table: [(&str, &[(&str, Rational)]); 9] = [
        ("1", &[("1", int(1))]),
        ("1,1", &[("1,1", int(1)), ("1", int(1))]),
        ("3", &[("3", int(1)), ("1,1", int(3)), ("1", int(1))]),
        ("1,1,1", &[("1,1,1", int(1)), ("1,1", int(3)), ("1", int(1))]),
        (
            "3,1",
            &[("3,1", int(1)), ("3", int(3)), ("1,1,1", int(3)), ("1,1", int(7)), ("1", int(1))],
        ),
        (
            "1,1,1,1",
            &[("1,1,1,1", int(1)), ("1,1,1", int(6)), ("1,1", int(7)), ("1", int(1))],
        ),
        (
            "5",
            &[
                ("5", int(1)),
                ("3,1", int(10)),
                ("3", ratio(35, 3)),
                ("1,1,1", ratio(40, 3)),
                ("1,1", int(15)),
                ("1", int(1)),
            ],
        ),
        (
            "3,1,1",
            &[
                ("3,1,1", int(1)),
                ("3,1", int(7)),
                ("1,1,1,1", int(3)),
                ("3", int(9)),
                ("1,1,1", int(16)),
                ("1,1", int(15)),
                ("1", int(1)),
            ],
        ),
        (
            "1,1,1,1,1",
            &[
                ("1,1,1,1,1", int(1)),
                ("1,1,1,1", int(10)),
                ("1,1,1", int(25)),
                ("1,1", int(15)),
                ("1", int(1)),
            ],
        ),
    ];
    let ok = table.iter().all(|(rho, terms)| {
        let mut expected = FrakExpansion::zero();
        for (sigma, c) in terms.iter() {
            expected.add_term(op(sigma), c.clone());
        }
        expand_p_in_frak(&op(rho)) == expected
    });
    check("frak-expansions", ok, "p_rho in the frak basis for |rho| <= 5")
}

fn m1_free(max: u32) -> Vec<OddPartition> {
    (0..=max)
        .flat_map(enumerate_odd)
        .filter(|r| r.multiplicity(1) == 0)
        .collect()
}

fn deformed_averages() -> Check {
    let mut ok = true;
    for m in 0..=5 {
        for mu in enumerate_strict(m) {
            for rho in m1_free(7) {
                let f = frak_p(&rho);
                let expected = frak_p_eval(&rho, &mu);
                ok &= (0..=7).all(|n| average_mu_bruteforce(&f, &mu, n) == expected);
            }
        }
    }
    check(
        "deformed-frak-averages",
        ok,
        "E_{mu,n}[fp_rho] = fp_rho(mu) for |mu| <= 5, |rho| <= 7, n <= 7",
    )
}

fn product_averages() -> Check {
    let free = m1_free(7);
    let mut ok = true;
    for rho in &free {
        for sigma in &free {
            let Ok(symbolic) = product_average_check(rho, sigma) else {
                return check("frak-product-averages", false, "precondition rejected");
            };
            let expected = if rho == sigma {
                let c = crate::rational::pow2(rho.size() as i64 - rho.len() as i64)
                    * Rational::from_integer(crate::partitions::z(rho));
                PolynomialInN::term(rho.size(), c)
            } else {
                PolynomialInN::zero()
            };
            ok &= symbolic == expected;
            let f = &frak_p(rho) * &frak_p(sigma);
            ok &= (0..=9).all(|n| average_bruteforce(&f, n) == expected.eval_int(n));
        }
    }
    check(
        "frak-product-averages",
        ok,
        "E_n[fp_rho fp_sigma] diagonal in rho, sigma for |rho|, |sigma| <= 7, n <= 9",
    )
}

fn content_identity() -> Check {
    let hat1 = hat_p(1);
    let mut ok = true;
    for m in 0..=5 {
        for mu in enumerate_strict(m) {
            let f = &hat1 - &GammaElement::constant(hat1.evaluate(&mu));
            let expected = |n: u32| {
                let n = int(n as i64);
                &n * (&n - int(1)) / int(2) + &n * int(m as i64)
            };
            let symbolic = average_mu_symbolic(&f, &mu);
            ok &= (0..=7).all(|n| {
                average_mu_bruteforce(&f, &mu, n) == expected(n) && symbolic.eval_int(n) == expected(n)
            });
        }
    }
    check(
        "content-shift-average",
        ok,
        "E_{mu,n}[hat p1 - hat p1(mu)] = n(n-1)/2 + n|mu| for |mu| <= 5, n <= 7",
    )
}

fn corner_sums() -> Check {
    let expected = [
        p("1").scale(&int(2)),
        p("3").scale(&int(4)),
        &p("5").scale(&int(6)) + &p("3").scale(&int(2)),
        &p("7").scale(&int(8)) + &p("5").scale(&int(8)),
    ];
    let mut ok = expected
        .iter()
        .enumerate()
        .all(|(i, e)| psi(i as u32 + 1).as_ref() == Ok(e));
    for k in 1..=5 {
        let f = psi(k).expect("k >= 1");
        for n in 0..=10 {
            for lambda in enumerate_strict(n) {
                ok &= psi_direct(k, &lambda).as_ref() == Ok(&f.evaluate(&lambda));
            }
        }
    }
    let samples: Vec<StrictPartition> = (0..=8).flat_map(enumerate_strict).take(20).collect();
    ok &= samples.iter().all(|l| phi_series_check(l, 8));
    check(
        "corner-sums",
        ok,
        "psi_1..psi_4 expansions, corner sums for k <= 5, |lambda| <= 10, product formula to order 8",
    )
}

fn even_power_sum() -> Check {
    let report = p2_experiment(6);
    let expected = [int(1), int(4), ratio(23, 3), int(12), int(17), ratio(1016, 45)];
    let values_ok = report.values[1..]
        .iter()
        .map(|(_, v)| v)
        .eq(expected.iter());
    let residuals: Vec<String> = report
        .residuals
        .iter()
        .map(|(n, r)| format!("{n}: {r}"))
        .collect();
    check(
        "even-power-sum-average",
        values_ok && report.quadratic_fails_by_six(),
        format!("E_n[p2] for n = 1..6; quadratic residuals {}", residuals.join(", ")),
    )
}

fn discrepancy() -> Check {
    let square = hat_p(1).pow(2);
    let at2 = average_bruteforce(&square, 2);
    let at3 = average_bruteforce(&square, 3);
    // The competing falling-factorial form gives -5/3 and -5/2 here.
    let display = falling(&[(4, ratio(1, 12)), (3, ratio(1, 3)), (2, ratio(-2, 3)), (1, ratio(-1, 6))]);
    let passed = at2 == int(1) && at3 == int(11) && display.eval_int(2) == ratio(-5, 3)
        && display.eval_int(3) == ratio(-5, 2);
    check("hat-p1-squared-discrepancy", passed, MISPRINT_NOTE)
}

fn conjecture() -> Check {
    let report = deg1_conjecture_scan(8);
    check(
        "deg1-scan",
        !report.counterexample_found(),
        format!(
            "{} pairs scanned, {} violations",
            report.pairs_scanned,
            report.violations.len()
        ),
    )
}

/// Every check, in a fixed order.
pub fn run_all() -> Vec<Check> {
    vec![
        measure(),
        characters(),
        plancherel_averages(),
        golden_expansions(),
        deformed_averages(),
        product_averages(),
        content_identity(),
        corner_sums(),
        even_power_sum(),
        discrepancy(),
        conjecture(),
    ]
}
