//! Exact rational accuracy parameters.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest accepted denominator. Keeps scaled capacities inside 128 bits.
pub const MAX_DENOMINATOR: u64 = 1 << 40;

/// A non-negative rational `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::BadEpsilon("zero denominator".into()));
        }
        let g = gcd(num, den).max(1);
        let (num, den) = (num / g, den / g);
        if den > MAX_DENOMINATOR {
            return Err(Error::BadEpsilon(format!("denominator {den} exceeds 2^40")));
        }
        Ok(Epsilon { num, den })
    }

    pub const fn zero() -> Self {
        Epsilon { num: 0, den: 1 }
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn is_zero(self) -> bool {
        self.num == 0
    }

    /// True for 0 < eps < 1.
    pub fn in_open_unit_interval(self) -> bool {
        self.num > 0 && self.num < self.den
    }

    pub fn halved(self) -> Result<Self> {
        if self.num.is_multiple_of(2) {
            return Epsilon::new(self.num / 2, self.den);
        }
        Epsilon::new(self.num, self.den.checked_mul(2).ok_or(Error::Overflow)?)
    }

    pub fn as_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Whether `value <= (1 + eps) * opt`, in exact arithmetic.
    pub fn within(self, value: u128, opt: u128) -> bool {
        let lhs = value.checked_mul(self.den as u128);
        let rhs = opt.checked_mul((self.den + self.num) as u128);
        match (lhs, rhs) {
            (Some(l), Some(r)) => l <= r,
            _ => (value as f64) <= (1.0 + self.as_f64()) * opt as f64,
        }
    }

    pub(crate) fn require_unit(self) -> Result<()> {
        if self.in_open_unit_interval() {
            Ok(())
        } else {
            Err(Error::BadEpsilon(format!("{self} is not in (0, 1)")))
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts `p/q`, a plain integer, or a decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadEpsilon(s.to_string());
        if let Some((p, q)) = s.split_once('/') {
            let p: u64 = p.trim().parse().map_err(|_| bad())?;
            let q: u64 = q.trim().parse().map_err(|_| bad())?;
            return Epsilon::new(p, q);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(bad());
        }
        let all_digits = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int) || !all_digits(frac) || frac.len() > 12 {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_v: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_v))
            .ok_or_else(bad)?;
        Epsilon::new(num, den)
    }
}
