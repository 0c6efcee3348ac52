use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Exact nonnegative rational edge cost.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(BigRational);

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("negative cost")]
    Negative,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed cost literal `{0}`")]
    Malformed(String),
}

impl Cost {
    pub fn zero() -> Self {
        Cost(BigRational::zero())
    }

    pub fn one() -> Self {
        Cost(BigRational::one())
    }

    pub fn from_int(v: u64) -> Self {
        Cost(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn new(numer: i64, denom: i64) -> Result<Self, CostError> {
        Self::from_ratio(BigRational::new_raw(numer.into(), denom.into()))
    }

    /// Validates and normalizes an arbitrary rational.
    pub fn from_ratio(r: BigRational) -> Result<Self, CostError> {
        if r.denom().is_zero() {
            return Err(CostError::ZeroDenominator);
        }
        let r = BigRational::new(r.numer().clone(), r.denom().clone());
        if r.is_negative() {
            return Err(CostError::Negative);
        }
        Ok(Cost(r))
    }

    pub fn ratio(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn halve(&self) -> Self {
        Cost(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }

    /// `self - other`, or `None` when the result would be negative.
    pub fn checked_sub(&self, other: &Cost) -> Option<Cost> {
        if other.0 > self.0 {
            None
        } else {
            Some(Cost(&self.0 - &other.0))
        }
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, other: &Cost) -> Option<BigRational> {
        if other.is_zero() {
            None
        } else {
            Some(&self.0 / &other.0)
        }
    }

    /// Parses `3`, `2.1`, `.5` or `21/10`. A leading minus is reported as [`CostError::Negative`].
    pub fn parse(text: &str) -> Result<Self, CostError> {
        let malformed = || CostError::Malformed(text.to_string());
        let body = match text.strip_prefix('-') {
            Some(rest) => {
                let c = Self::parse(rest)?;
                return if c.is_zero() { Ok(c) } else { Err(CostError::Negative) };
            }
            None => text.strip_prefix('+').unwrap_or(text),
        };
        if body.is_empty() {
            return Err(malformed());
        }
        if let Some((p, q)) = body.split_once('/') {
            let p = parse_digits(p).ok_or_else(malformed)?;
            let q = parse_digits(q).ok_or_else(malformed)?;
            if q.is_zero() {
                return Err(CostError::ZeroDenominator);
            }
            return Ok(Cost(BigRational::new(p, q)));
        }
        let (int_part, frac_part) = match body.split_once('.') {
            Some((i, f)) => (i, f),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(malformed());
        }
        let int_v = if int_part.is_empty() {
            BigInt::zero()
        } else {
            parse_digits(int_part).ok_or_else(malformed)?
        };
        if frac_part.is_empty() {
            if body.ends_with('.') {
                return Err(malformed());
            }
            return Ok(Cost(BigRational::from_integer(int_v)));
        }
        let frac_v = parse_digits(frac_part).ok_or_else(malformed)?;
        let scale = num_traits::pow(BigInt::from(10), frac_part.len());
        Ok(Cost(BigRational::new(int_v * &scale + frac_v, scale)))
    }
}

fn parse_digits(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::parse_bytes(s.as_bytes(), 10)
}

fn power_of_ten_exponent(d: &BigInt) -> Option<usize> {
    let ten = BigInt::from(10);
    let mut d = d.clone();
    let mut k = 0;
    while !d.is_one() {
        let (q, r) = d.div_rem(&ten);
        if !r.is_zero() {
            return None;
        }
        d = q;
        k += 1;
    }
    Some(k)
}

impl Default for Cost {
    fn default() -> Self {
        Cost::zero()
    }
}

impl fmt::Display for Cost {
    /// Decimal when the reduced denominator is a power of ten, `p/q` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (self.0.numer(), self.0.denom());
        match power_of_ten_exponent(d) {
            Some(0) => write!(f, "{n}"),
            Some(k) => {
                let (q, r) = n.div_rem(d);
                let digits = r.to_string();
                write!(f, "{q}.{}{digits}", "0".repeat(k - digits.len()))
            }
            None => write!(f, "{n}/{d}"),
        }
    }
}

impl FromStr for Cost {
    type Err = CostError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Cost::parse(s)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a Cost> for &'a Cost {
    type Output = Cost;
    fn add(self, rhs: &'a Cost) -> Cost {
        Cost(&self.0 + &rhs.0)
    }
}

impl AddAssign<&Cost> for Cost {
    fn add_assign(&mut self, rhs: &Cost) {
        self.0 += &rhs.0;
    }
}

impl Mul for &Cost {
    type Output = Cost;
    fn mul(self, rhs: &Cost) -> Cost {
        Cost(&self.0 * &rhs.0)
    }
}

impl Div<u64> for &Cost {
    type Output = Cost;
    fn div(self, rhs: u64) -> Cost {
        assert!(rhs != 0, "division by zero");
        Cost(&self.0 / BigRational::from_integer(BigInt::from(rhs)))
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        iter.fold(Cost::zero(), |mut a, b| {
            a += b;
            a
        })
    }
}

/// Maps a family of costs onto integer units by their common denominator.
///
/// Every cost of the family becomes an exact `u64`; sums of units stay exact as
/// long as they do not overflow, which callers check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostScale {
    lcm: BigInt,
}

impl CostScale {
    pub fn for_costs<'a>(costs: impl IntoIterator<Item = &'a Cost>) -> Self {
        let lcm = costs
            .into_iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        CostScale { lcm }
    }

    pub fn units(&self, c: &Cost) -> Option<u64> {
        (c.numer() * (&self.lcm / c.denom())).to_u64()
    }

    pub fn cost(&self, units: u64) -> Cost {
        Cost(BigRational::new(BigInt::from(units), self.lcm.clone()))
    }
}
