//! Closed-form polynomials and island counts on the line and on the circle.
//!
//! `B(n, m)` sums the number of maximal runs over all `m`-subsets of
//! `{1..n}`; `D(n, m)` does the same with runs taken cyclically. Each is
//! available through several interchangeable [`CountMode`]s, looked up by
//! name.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Binomial coefficient for any integer top and `k >= 0`, zero for `k < 0`.
/// In particular `binom(-1, 0) = 1`.
pub fn binom(top: i64, k: i64) -> BigInt {
    if k < 0 {
        return BigInt::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(top - i);
        den *= BigInt::from(i + 1);
    }
    num / den
}

/// Maximal runs of `members` inside `1..=n` taken linearly.
pub fn islands_on_line(members: &[usize], n: usize) -> usize {
    let mut inside = vec![false; n + 2];
    for &a in members {
        inside[a] = true;
    }
    (1..=n).filter(|&i| inside[i] && !inside[i - 1]).count()
}

/// Maximal runs of `members` inside `1..=n` taken cyclically. The full circle
/// is a single island.
pub fn islands_on_circle(members: &[usize], n: usize) -> usize {
    let mut inside = vec![false; n + 1];
    for &a in members {
        inside[a] = true;
    }
    if n > 0 && (1..=n).all(|i| inside[i]) {
        return 1;
    }
    (1..=n)
        .filter(|&i| inside[i] && !inside[if i == 1 { n } else { i - 1 }])
        .count()
}

fn subsets_sum(n: usize, m: usize, count: impl Fn(&[usize], usize) -> usize) -> BigInt {
    if m > n || n >= 64 {
        return BigInt::zero();
    }
    let mut total = 0u128;
    let mut members = Vec::with_capacity(m);
    for mask in 0u64..1 << n {
        if mask.count_ones() as usize != m {
            continue;
        }
        members.clear();
        members.extend((0..n).filter(|i| mask >> i & 1 == 1).map(|i| i + 1));
        total += count(&members, n) as u128;
    }
    BigInt::from(total)
}

/// One way of computing `B(n, m)` or `D(n, m)`.
pub trait CountMode: Send + Sync {
    fn name(&self) -> &'static str;
    fn count(&self, n: usize, m: usize) -> Result<BigInt>;
}

fn check_line_range(n: usize, m: usize) -> Result<()> {
    if m == 0 || m > n {
        return Err(Error::Range(format!("need 1 <= m <= n, got n={n}, m={m}")));
    }
    Ok(())
}

fn check_circle_range(n: usize, m: usize, allow_full: bool) -> Result<()> {
    if m == 0 || m > n || (m == n && !allow_full) {
        let bound = if allow_full { "<=" } else { "<" };
        return Err(Error::Range(format!("need 1 <= m {bound} n, got n={n}, m={m}")));
    }
    Ok(())
}

const BRUTE_MAX: usize = 24;

fn check_brute(n: usize) -> Result<()> {
    if n > BRUTE_MAX {
        return Err(Error::Range(format!("brute force is limited to n <= {BRUTE_MAX}")));
    }
    Ok(())
}

pub struct LineBrute;
pub struct LineClosed;
pub struct LineRecurrence;

impl CountMode for LineBrute {
    fn name(&self) -> &'static str {
        "brute"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_line_range(n, m)?;
        check_brute(n)?;
        Ok(subsets_sum(n, m, islands_on_line))
    }
}

/// `(n - m + 1) C(n - 1, m - 1)`
pub fn b_closed(n: i64, m: i64) -> BigInt {
    if m < 1 || m > n {
        return BigInt::zero();
    }
    BigInt::from(n - m + 1) * binom(n - 1, m - 1)
}

impl CountMode for LineClosed {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_line_range(n, m)?;
        Ok(b_closed(n as i64, m as i64))
    }
}

/// `B(n, m) = B(n-1, m) + B(n-1, m-1) + C(n-2, m-1)`, with `B = 0` outside
/// `1 <= m <= n`.
pub fn b_recurrence(n: usize, m: usize) -> BigInt {
    // table[i][j] = B(i, j)
    let mut table = vec![vec![BigInt::zero(); m + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=m.min(i) {
            table[i][j] = &table[i - 1][j] + &table[i - 1][j - 1] + binom(i as i64 - 2, j as i64 - 1);
        }
    }
    table[n][m].clone()
}

impl CountMode for LineRecurrence {
    fn name(&self) -> &'static str {
        "recurrence"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_line_range(n, m)?;
        Ok(b_recurrence(n, m))
    }
}

pub struct CircleBrute;
pub struct CircleViaLine;
pub struct CircleClosed;
pub struct CircleAlternating;
pub struct CircleRecurrence;

impl CountMode for CircleBrute {
    fn name(&self) -> &'static str {
        "brute"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_circle_range(n, m, true)?;
        check_brute(n)?;
        Ok(subsets_sum(n, m, islands_on_circle))
    }
}

impl CountMode for CircleViaLine {
    fn name(&self) -> &'static str {
        "via_B"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_circle_range(n, m, false)?;
        let (n, m) = (n as i64, m as i64);
        Ok(b_closed(n, m) - binom(n - 2, m - 2))
    }
}

impl CountMode for CircleClosed {
    fn name(&self) -> &'static str {
        "closed"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_circle_range(n, m, false)?;
        let (n, m) = (n as i64, m as i64);
        Ok(BigInt::from(n) * binom(n - 2, m - 1))
    }
}

impl CountMode for CircleAlternating {
    fn name(&self) -> &'static str {
        "alternating"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_circle_range(n, m, false)?;
        let (n, m) = (n as i64, m as i64);
        let mut total = BigInt::zero();
        for j in 0..m {
            let term = BigInt::from(m - j) * binom(n, m - j);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        Ok(total)
    }
}

/// `D(n, m) = B(n-1, m) + m + Σ_{j=1}^{m-1} j (B(n-2-j, m-j) + C(n-2-j, m-j))`,
/// summing over the length of the run through the last element.
pub fn d_recurrence(n: usize, m: usize) -> BigInt {
    let (ni, mi) = (n as i64, m as i64);
    let mut total = b_closed(ni - 1, mi) + BigInt::from(m);
    for j in 1..mi {
        total += BigInt::from(j) * (b_closed(ni - 2 - j, mi - j) + binom(ni - 2 - j, mi - j));
    }
    total
}

impl CountMode for CircleRecurrence {
    fn name(&self) -> &'static str {
        "recurrence"
    }
    fn count(&self, n: usize, m: usize) -> Result<BigInt> {
        check_circle_range(n, m, false)?;
        Ok(d_recurrence(n, m))
    }
}

/// Count modes registered by name.
pub struct ModeRegistry {
    modes: Vec<Box<dyn CountMode>>,
    by_name: HashMap<&'static str, usize>,
}

impl ModeRegistry {
    pub fn new() -> Self {
        ModeRegistry {
            modes: Vec::new(),
            by_name: HashMap::new(),
        }
    }

    pub fn register(&mut self, mode: Box<dyn CountMode>) {
        self.by_name.insert(mode.name(), self.modes.len());
        self.modes.push(mode);
    }

    pub fn get(&self, name: &str) -> Result<&dyn CountMode> {
        self.by_name
            .get(name)
            .map(|&i| self.modes[i].as_ref())
            .ok_or_else(|| Error::Unknown {
                what: "mode",
                name: name.to_string(),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.modes.iter().map(|m| m.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn CountMode> {
        self.modes.iter().map(|m| m.as_ref())
    }
}

impl Default for ModeRegistry {
    fn default() -> Self {
        Self::new()
    }
}

pub fn line_modes() -> ModeRegistry {
    let mut r = ModeRegistry::new();
    r.register(Box::new(LineBrute));
    r.register(Box::new(LineClosed));
    r.register(Box::new(LineRecurrence));
    r
}

pub fn circle_modes() -> ModeRegistry {
    let mut r = ModeRegistry::new();
    r.register(Box::new(CircleBrute));
    r.register(Box::new(CircleViaLine));
    r.register(Box::new(CircleClosed));
    r.register(Box::new(CircleAlternating));
    r.register(Box::new(CircleRecurrence));
    r
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedKind {
    /// Any tree on `n >= 2` vertices (and the point for `n = 1`).
    Tree(usize),
    /// Cycle on `n >= 3` vertices; `separating` when its complement has two
    /// components.
    Cycle { n: usize, separating: bool },
    /// `n` isolated vertices.
    Discrete(usize),
    /// One vertex carrying loops whose complement has `r` components, plus a
    /// pendant edge.
    AppendedBouquet(usize),
}

pub fn closed_beta(kind: ClosedKind) -> Result<IntPoly> {
    let pow = IntPoly::one_plus_x_pow;
    let big = |k: usize| BigInt::from(k);
    match kind {
        ClosedKind::Tree(0) | ClosedKind::Discrete(0) => {
            Err(Error::Range("need at least one vertex".into()))
        }
        ClosedKind::Tree(1) => Ok(IntPoly::one()),
        ClosedKind::Tree(n) => Ok(pow(n - 2).scale(&big(n - 1)) + pow(n - 1)),
        ClosedKind::Cycle { n, .. } if n < 3 => Err(Error::Range("cycles need n >= 3".into())),
        ClosedKind::Cycle { n, separating } => {
            let top = if separating { 2 } else { 1 };
            Ok(pow(n - 2).scale(&big(n)) + IntPoly::monomial(top, n - 1))
        }
        ClosedKind::Discrete(n) => Ok(pow(n - 1).scale(&big(n))),
        ClosedKind::AppendedBouquet(0) => Err(Error::Range("need r >= 1".into())),
        ClosedKind::AppendedBouquet(r) => Ok(IntPoly::new(vec![big(r + 1), big(r)])),
    }
}
