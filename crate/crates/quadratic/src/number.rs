use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::QuadError;

/// The field `Q(sqrt d)` for a square-free `d > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, QuadError> {
        if d < 2 || !is_square_free(d) {
            return Err(QuadError::NotSquareFree(d));
        }
        Ok(Self { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn zero(&self) -> QuadNumber {
        QuadNumber::from_rational(BigRational::zero(), self.d)
    }

    pub fn one(&self) -> QuadNumber {
        QuadNumber::from_rational(BigRational::one(), self.d)
    }

    pub fn sqrt_d(&self) -> QuadNumber {
        QuadNumber::new(BigRational::zero(), BigRational::one(), self.d)
    }

    pub fn int(&self, p: i64) -> QuadNumber {
        QuadNumber::from_rational(BigRational::from_integer(p.into()), self.d)
    }

    /// `p + q*sqrt(d)` from small integer ratios `pn/pd + (qn/qd) sqrt(d)`.
    pub fn ratio(&self, pn: i64, pd: i64, qn: i64, qd: i64) -> QuadNumber {
        QuadNumber::new(
            BigRational::new(pn.into(), pd.into()),
            BigRational::new(qn.into(), qd.into()),
            self.d,
        )
    }

    pub fn parse(&self, s: &str) -> Result<QuadNumber, QuadError> {
        QuadNumber::parse(s, self.d)
    }
}

fn is_square_free(d: i64) -> bool {
    let mut k = 2i64;
    while k * k <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// An exact element `p + q*sqrt(d)` of a real quadratic field.
///
/// Arithmetic operators panic when the operands carry different radicands;
/// callers that mix fields should go through [`QuadNumber::try_add`] and
/// friends.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    p: BigRational,
    q: BigRational,
    d: i64,
}

impl QuadNumber {
    pub fn new(p: BigRational, q: BigRational, d: i64) -> Self {
        Self { p, q, d }
    }

    pub fn from_rational(p: BigRational, d: i64) -> Self {
        Self {
            p,
            q: BigRational::zero(),
            d,
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.p
    }

    pub fn sqrt_part(&self) -> &BigRational {
        &self.q
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Field norm `p^2 - d q^2`.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p - &self.q * &self.q * BigRational::from_integer(self.d.into())
    }

    /// Galois conjugate `p - q*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.p.clone(), -self.q.clone(), self.d)
    }

    pub fn inv(&self) -> Result<Self, QuadError> {
        if self.is_zero() {
            return Err(QuadError::DivisionByZero);
        }
        // The norm of a nonzero element is nonzero because sqrt(d) is irrational.
        let n = self.norm();
        Ok(Self::new(&self.p / &n, -(&self.q / &n), self.d))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, QuadError> {
        self.check_field(rhs)?;
        Ok(self * &rhs.inv()?)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, QuadError> {
        self.check_field(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, QuadError> {
        self.check_field(rhs)?;
        Ok(self * rhs)
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Self::new(&self.p * r, &self.q * r, self.d)
    }

    fn check_field(&self, rhs: &Self) -> Result<(), QuadError> {
        if self.d != rhs.d {
            return Err(QuadError::RadicandMismatch(self.d, rhs.d));
        }
        Ok(())
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let sp = rational_sign(&self.p);
        let sq = rational_sign(&self.q);
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // Opposite signs: the larger of p^2 and d q^2 wins. They cannot be
        // equal since d is not a square.
        let p2 = &self.p * &self.p;
        let dq2 = &self.q * &self.q * BigRational::from_integer(self.d.into());
        if p2 > dq2 {
            sp
        } else {
            sq
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let p = self.p.to_f64().unwrap_or(f64::NAN);
        let q = self.q.to_f64().unwrap_or(f64::NAN);
        p + q * (self.d as f64).sqrt()
    }

    /// Parses `"a"`, `"a/b"`, `"sqrt(d)"`, `"c/e*sqrt(d)"` and sums such as
    /// `"a/b+c/e*sqrt(d)"` or `"a/b-c/e*sqrt(d)"`.
    pub fn parse(s: &str, d: i64) -> Result<Self, QuadError> {
        let err = || QuadError::Parse(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(err());
        }
        let Some(pos) = t.find("sqrt(") else {
            return Ok(Self::from_rational(parse_rational(&t)?, d));
        };
        let close = t[pos..].find(')').map(|i| i + pos).ok_or_else(err)?;
        if close != t.len() - 1 {
            return Err(err());
        }
        let radicand: i64 = t[pos + 5..close].parse().map_err(|_| err())?;
        if radicand != d {
            return Err(QuadError::RadicandMismatch(d, radicand));
        }
        // Split the prefix "p(+|-)coef*" into rational part and coefficient.
        let prefix = &t[..pos];
        let coef_str = prefix.strip_suffix('*').unwrap_or(prefix);
        let split = coef_str
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !coef_str[..i].ends_with('/'))
            .map(|(i, _)| i)
            .last();
        let (p_str, q_str) = match split {
            Some(i) => (&coef_str[..i], &coef_str[i..]),
            None => ("", coef_str),
        };
        let p = if p_str.is_empty() {
            BigRational::zero()
        } else {
            parse_rational(p_str)?
        };
        let q = match q_str {
            "" | "+" => BigRational::one(),
            "-" => -BigRational::one(),
            other => parse_rational(other.strip_prefix('+').unwrap_or(other))?,
        };
        Ok(Self::new(p, q, d))
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Parses an exact rational `"a"` or `"a/b"`. Decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, QuadError> {
    let err = || QuadError::Parse(s.to_string());
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let n: BigInt = num.trim().parse().map_err(|_| err())?;
    let d: BigInt = den.trim().parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(QuadError::DivisionByZero);
    }
    Ok(BigRational::new(n, d))
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            return write!(f, "{}", fmt_rational(&self.p));
        }
        let q_abs = self.q.abs();
        let coef = if q_abs.is_one() {
            String::new()
        } else {
            format!("{}*", fmt_rational(&q_abs))
        };
        let radical = format!("{coef}sqrt({})", self.d);
        match (self.p.is_zero(), self.q.is_negative()) {
            (true, false) => write!(f, "{radical}"),
            (true, true) => write!(f, "-{radical}"),
            (false, false) => write!(f, "{}+{radical}", fmt_rational(&self.p)),
            (false, true) => write!(f, "{}-{radical}", fmt_rational(&self.p)),
        }
    }
}

impl PartialOrd for QuadNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.d != other.d {
            return None;
        }
        Some((self - other).signum().cmp(&0))
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber::new(-self.p.clone(), -self.q.clone(), self.d)
    }
}

impl Neg for QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        -&self
    }
}

impl Add for &QuadNumber {
    type Output = QuadNumber;
    fn add(self, rhs: &QuadNumber) -> QuadNumber {
        assert_eq!(self.d, rhs.d, "mixed radicands");
        QuadNumber::new(&self.p + &rhs.p, &self.q + &rhs.q, self.d)
    }
}

impl Sub for &QuadNumber {
    type Output = QuadNumber;
    fn sub(self, rhs: &QuadNumber) -> QuadNumber {
        assert_eq!(self.d, rhs.d, "mixed radicands");
        QuadNumber::new(&self.p - &rhs.p, &self.q - &rhs.q, self.d)
    }
}

impl Mul for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, rhs: &QuadNumber) -> QuadNumber {
        assert_eq!(self.d, rhs.d, "mixed radicands");
        let d = BigRational::from_integer(self.d.into());
        QuadNumber::new(
            &self.p * &rhs.p + &self.q * &rhs.q * d,
            &self.p * &rhs.q + &self.q * &rhs.p,
            self.d,
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: QuadNumber) -> QuadNumber {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&QuadNumber> for QuadNumber {
            type Output = QuadNumber;
            fn $method(self, rhs: &QuadNumber) -> QuadNumber {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q2() -> QuadField {
        QuadField::new(2).unwrap()
    }

    #[test]
    fn rejects_non_square_free() {
        assert_eq!(QuadField::new(4), Err(QuadError::NotSquareFree(4)));
        assert_eq!(QuadField::new(1), Err(QuadError::NotSquareFree(1)));
        assert!(QuadField::new(6).is_ok());
    }

    #[test]
    fn sqrt_squared_is_d() {
        let f = q2();
        assert_eq!(&f.sqrt_d() * &f.sqrt_d(), f.int(2));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        let f = q2();
        let x = f.ratio(1, 1, 1, 1);
        // 1/(1+sqrt2) = sqrt2 - 1
        assert_eq!(x.inv().unwrap(), f.ratio(-1, 1, 1, 1));
        assert_eq!(f.zero().inv(), Err(QuadError::DivisionByZero));
    }

    #[test]
    fn exact_sign_near_zero() {
        let f = q2();
        // 577 - 408 sqrt2 is a tiny positive number
        let x = f.ratio(577, 1, -408, 1);
        assert_eq!(x.signum(), 1);
        let y = f.ratio(-577, 1, 408, 1);
        assert_eq!(y.signum(), -1);
        assert_eq!(f.zero().signum(), 0);
        let bound = QuadNumber::from_rational(BigRational::new(9.into(), 10000.into()), 2);
        assert!(x < bound);
    }

    #[test]
    fn display_and_parse_round_trip() {
        let f = q2();
        for s in ["0", "3", "-1/2", "sqrt(2)", "-sqrt(2)", "1/3+2/5*sqrt(2)", "-7-3*sqrt(2)"] {
            let x = f.parse(s).unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert!(f.parse("0.5").is_err());
        assert_eq!(f.parse("sqrt(3)"), Err(QuadError::RadicandMismatch(2, 3)));
        assert_eq!(f.parse("-1/2+sqrt(2)").unwrap(), f.ratio(-1, 2, 1, 1));
        assert_eq!(f.parse("1/2*sqrt(2)").unwrap(), f.ratio(0, 1, 1, 2));
    }

    #[test]
    fn float_view() {
        let f = q2();
        assert!((f.ratio(1, 1, 1, 1).to_f64() - (1.0 + 2f64.sqrt())).abs() < 1e-15);
    }
}
