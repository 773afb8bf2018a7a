//! Strict, odd and ordinary partitions, shifted Young diagrams and the
//! counting functions built on them.
//!
//! Partitions render as comma-separated parts (`"5,4,2"`). The empty
//! partition renders as the empty string; on input both `""` and `"0"` are
//! accepted for it.
//!
//! All three partition types order first by size and then lexicographically
//! by parts. Enumeration functions return partitions in decreasing
//! lexicographic order.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cache::Memo;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn parse_parts(text: &str) -> Result<Vec<u32>> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" || trimmed == "()" || trimmed == "∅" {
        return Ok(Vec::new());
    }
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(trimmed);
    inner
        .split(',')
        .map(|piece| {
            let piece = piece.trim();
            match piece.parse::<u32>() {
                Ok(0) => Err(Error::InvalidPartition {
                    input: text.to_string(),
                    reason: "parts must be positive".into(),
                }),
                Ok(v) => Ok(v),
                Err(_) => Err(Error::InvalidPartition {
                    input: text.to_string(),
                    reason: format!("`{piece}` is not a positive integer"),
                }),
            }
        })
        .collect()
}

fn invalid(parts: &[u32], reason: impl Into<String>) -> Error {
    Error::InvalidPartition {
        input: join(parts),
        reason: reason.into(),
    }
}

fn join(parts: &[u32]) -> String {
    parts
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

macro_rules! partition_common {
    ($name:ident) => {
        impl $name {
            pub fn empty() -> Self {
                Self(Vec::new())
            }

            pub fn parts(&self) -> &[u32] {
                &self.0
            }

            pub fn size(&self) -> u32 {
                self.0.iter().sum()
            }

            /// Number of parts, `ℓ`.
            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            /// Multiplicity of `r` as a part.
            pub fn multiplicity(&self, r: u32) -> usize {
                self.0.iter().filter(|&&p| p == r).count()
            }

            pub fn into_parts(self) -> Vec<u32> {
                self.0
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                self.size()
                    .cmp(&other.size())
                    .then_with(|| self.0.cmp(&other.0))
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&join(&self.0))
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                Self::new(parse_parts(s)?)
            }
        }

        impl TryFrom<Vec<u32>> for $name {
            type Error = Error;

            fn try_from(parts: Vec<u32>) -> Result<Self> {
                Self::new(parts)
            }
        }
    };
}

/// A partition with pairwise distinct parts, stored in decreasing order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct StrictPartition(Vec<u32>);

/// A partition all of whose parts are odd, stored weakly decreasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OddPartition(Vec<u32>);

/// An arbitrary partition, used to index ordinary power-sum expansions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OrdinaryPartition(Vec<u32>);

partition_common!(StrictPartition);
partition_common!(OddPartition);
partition_common!(OrdinaryPartition);

impl StrictPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(&parts, "parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(invalid(&parts, "parts must be strictly decreasing"));
        }
        Ok(Self(parts))
    }

    /// Part `i` (1-based), with `λ_i = 0` past the end.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// `S(self) ⊆ S(other)`.
    pub fn is_contained_in(&self, other: &StrictPartition) -> bool {
        self.len() <= other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Removes the last box of row `row` (1-based) if the result is strict.
    pub fn remove_box(&self, row: usize) -> Option<StrictPartition> {
        if row == 0 || row > self.len() {
            return None;
        }
        let new_part = self.part(row) - 1;
        if row < self.len() && new_part <= self.part(row + 1) {
            return None;
        }
        let mut parts = self.0.clone();
        if new_part == 0 {
            parts.pop();
        } else {
            parts[row - 1] = new_part;
        }
        Some(StrictPartition(parts))
    }

    /// Adds a box at the end of row `row` (1-based; `len() + 1` opens a new
    /// row) if the result is strict.
    pub fn add_box(&self, row: usize) -> Option<StrictPartition> {
        if row == 0 || row > self.len() + 1 {
            return None;
        }
        let new_part = self.part(row) + 1;
        if row > 1 && new_part >= self.part(row - 1) {
            return None;
        }
        let mut parts = self.0.clone();
        if row == parts.len() + 1 {
            parts.push(1);
        } else {
            parts[row - 1] = new_part;
        }
        Some(StrictPartition(parts))
    }

    /// The cell `(row, λ_row + row - 1)` ending row `row`.
    fn last_cell(&self, row: usize) -> Cell {
        Cell::new(row as u32, self.part(row) + row as u32 - 1)
    }
}

impl OddPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(&parts, "parts must be positive"));
        }
        if let Some(even) = parts.iter().find(|&&p| p % 2 == 0) {
            return Err(invalid(&parts, format!("{even} is not odd")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(&parts, "parts must be weakly decreasing"));
        }
        Ok(Self(parts))
    }

    /// Sorts the parts before validating.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// `(1^k)`.
    pub fn ones(k: usize) -> Self {
        Self(vec![1; k])
    }

    pub fn single(r: u32) -> Result<Self> {
        Self::new(vec![r])
    }

    /// Multiset union.
    pub fn union(&self, other: &OddPartition) -> OddPartition {
        let mut parts = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&x), Some(&&y)) => {
                    if x >= y {
                        parts.push(x);
                        a.next();
                    } else {
                        parts.push(y);
                        b.next();
                    }
                }
                (Some(&&x), None) => {
                    parts.push(x);
                    a.next();
                }
                (None, Some(&&y)) => {
                    parts.push(y);
                    b.next();
                }
                (None, None) => break,
            }
        }
        OddPartition(parts)
    }

    /// Removes one part equal to 1, if any.
    pub fn remove_one(&self) -> Option<OddPartition> {
        if self.0.last() == Some(&1) {
            let mut parts = self.0.clone();
            parts.pop();
            Some(OddPartition(parts))
        } else {
            None
        }
    }

    /// `ρ̃`: the parts different from 1, together with `m₁(ρ)`.
    pub fn strip_ones(&self) -> (OddPartition, usize) {
        let kept: Vec<u32> = self.0.iter().copied().filter(|&p| p != 1).collect();
        let ones = self.len() - kept.len();
        (OddPartition(kept), ones)
    }

    pub fn is_all_ones(&self) -> bool {
        self.0.iter().all(|&p| p == 1)
    }
}

impl OrdinaryPartition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid(&parts, "parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(&parts, "parts must be weakly decreasing"));
        }
        Ok(Self(parts))
    }

    pub fn from_unsorted(mut parts: Vec<u32>) -> Result<Self> {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self::new(parts)
    }

    /// The same parts as an odd partition, if every part is odd.
    pub fn to_odd(&self) -> Result<OddPartition> {
        match self.0.iter().find(|&&p| p % 2 == 0) {
            Some(&even) => Err(Error::NotSupersymmetric(even)),
            None => Ok(OddPartition(self.0.clone())),
        }
    }
}

impl From<OddPartition> for OrdinaryPartition {
    fn from(value: OddPartition) -> Self {
        OrdinaryPartition(value.0)
    }
}

/// A box `(i, j)` of a shifted diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: u32,
    pub col: u32,
}

impl Cell {
    pub fn new(row: u32, col: u32) -> Self {
        Self { row, col }
    }

    /// `c = j - i`.
    pub fn content(&self) -> i64 {
        self.col as i64 - self.row as i64
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

fn enumerate_bounded(
    remaining: u32,
    max_part: u32,
    step: u32,
    allowed: &dyn Fn(u32) -> bool,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if remaining == 0 {
        out.push(prefix.clone());
        return;
    }
    let mut part = max_part.min(remaining);
    while part >= 1 {
        if allowed(part) {
            prefix.push(part);
            let next_max = if step == 0 { part } else { part.saturating_sub(step) };
            if next_max > 0 || remaining == part {
                enumerate_bounded(remaining - part, next_max, step, allowed, prefix, out);
            }
            prefix.pop();
        }
        part -= 1;
    }
}

/// All strict partitions of `n`, in decreasing lexicographic order.
pub fn enumerate_strict(n: u32) -> Vec<StrictPartition> {
    let mut out = Vec::new();
    enumerate_bounded(n, n, 1, &|_| true, &mut Vec::new(), &mut out);
    out.into_iter().map(StrictPartition).collect()
}

/// All odd partitions of `n`, in decreasing lexicographic order.
pub fn enumerate_odd(n: u32) -> Vec<OddPartition> {
    let mut out = Vec::new();
    enumerate_bounded(n, n, 0, &|p| p % 2 == 1, &mut Vec::new(), &mut out);
    out.into_iter().map(OddPartition).collect()
}

/// All partitions of `n`, in decreasing lexicographic order.
pub fn enumerate_ordinary(n: u32) -> Vec<OrdinaryPartition> {
    let mut out = Vec::new();
    enumerate_bounded(n, n, 0, &|_| true, &mut Vec::new(), &mut out);
    out.into_iter().map(OrdinaryPartition).collect()
}

/// Cells of the shifted diagram, row by row.
pub fn shifted_cells(lambda: &StrictPartition) -> Vec<Cell> {
    let mut cells = Vec::with_capacity(lambda.size() as usize);
    for (idx, &part) in lambda.parts().iter().enumerate() {
        let i = idx as u32 + 1;
        for j in i..i + part {
            cells.push(Cell::new(i, j));
        }
    }
    cells
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corners {
    /// Cells whose addition keeps the shape strict.
    pub inner: Vec<Cell>,
    /// Cells whose removal keeps the shape strict.
    pub outer: Vec<Cell>,
}

pub fn corners(lambda: &StrictPartition) -> Corners {
    let inner = (1..=lambda.len() + 1)
        .filter_map(|row| lambda.add_box(row).map(|bigger| bigger.last_cell(row)))
        .collect();
    let outer = (1..=lambda.len())
        .filter(|&row| lambda.remove_box(row).is_some())
        .map(|row| lambda.last_cell(row))
        .collect();
    Corners { inner, outer }
}

static SKEW_TABLEAUX: LazyLock<Memo<(StrictPartition, StrictPartition), BigInt>> =
    LazyLock::new(Memo::new);

/// Number of standard shifted tableaux of shape `S(λ)`.
pub fn g(lambda: &StrictPartition) -> BigInt {
    g_skew(lambda, &StrictPartition::empty())
}

/// Number of standard shifted tableaux of skew shape `S(λ/μ)`; zero unless
/// `S(μ) ⊆ S(λ)`.
pub fn g_skew(lambda: &StrictPartition, mu: &StrictPartition) -> BigInt {
    if !mu.is_contained_in(lambda) {
        return BigInt::zero();
    }
    if lambda == mu {
        return BigInt::one();
    }
    let key = (lambda.clone(), mu.clone());
    SKEW_TABLEAUX.get_or_compute(&key, || {
        (1..=lambda.len())
            .filter_map(|row| lambda.remove_box(row))
            .map(|smaller| g_skew(&smaller, mu))
            .sum()
    })
}

/// `z_ρ = ∏ r^{m_r} m_r!`.
pub fn z(rho: &OddPartition) -> BigInt {
    let mut acc = BigInt::one();
    let parts = rho.parts();
    let mut i = 0;
    while i < parts.len() {
        let r = parts[i];
        let mut m = 0u32;
        while i < parts.len() && parts[i] == r {
            m += 1;
            i += 1;
            acc *= r;
            acc *= m;
        }
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `x^↓k = x(x-1)⋯(x-k+1)`, with `x^↓0 = 1`.
pub fn falling(x: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc *= &term;
        term -= Rational::one();
    }
    acc
}

pub fn falling_int(x: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k as i64 {
        acc *= x - i;
    }
    acc
}

/// Stirling numbers of the second kind, `x^k = Σ_j T(k, j) x^↓j`.
pub fn stirling2(k: u32, j: u32) -> Result<BigInt> {
    if j == 0 || j > k {
        return Err(Error::StirlingRange { k, j });
    }
    Ok(stirling2_table(k)[j as usize].clone())
}

/// Row `k` of the second-kind triangle, indexed `0..=k` (entry 0 is `[k = 0]`).
pub fn stirling2_table(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=k as usize {
        let mut next = vec![BigInt::zero(); n + 1];
        for (j, slot) in next.iter_mut().enumerate().skip(1) {
            let stay = if j < n { &row[j] * j } else { BigInt::zero() };
            *slot = stay + &row[j - 1];
        }
        row = next;
    }
    row
}

/// Signed Stirling numbers of the first kind, `x^↓k = Σ_i s(k, i) x^i`,
/// indexed `0..=k`.
pub fn stirling1_signed_table(k: u32) -> Vec<BigInt> {
    let mut row = vec![BigInt::one()];
    for n in 1..=k as usize {
        let mut next = vec![BigInt::zero(); n + 1];
        for (i, slot) in next.iter_mut().enumerate() {
            let shifted = if i >= 1 { row[i - 1].clone() } else { BigInt::zero() };
            let kept = if i < n { &row[i] * (n as i64 - 1) } else { BigInt::zero() };
            *slot = shifted - kept;
        }
        row = next;
    }
    row
}
