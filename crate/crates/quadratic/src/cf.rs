//! Continued fractions of quadratic irrationals.
//!
//! A real quadratic irrational is kept in the reduced form `(P + sqrt D) / Q`
//! with integers `P`, `Q`, `D` and `Q | D - P^2`; one expansion step is then
//! pure integer arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::number::{common_denominator, QuadNumber};
use crate::QuadError;

/// Iterator over the partial quotients `a_0, a_1, ...` of a quadratic irrational.
#[derive(Debug, Clone)]
pub struct PartialQuotients {
    p: BigInt,
    q: BigInt,
    d: BigInt,
    isqrt_d: BigInt,
}

pub fn partial_quotients(x: &QuadNumber) -> Result<PartialQuotients, QuadError> {
    if x.is_rational() {
        return Err(QuadError::Rational);
    }
    let den = common_denominator([x.rational_part(), x.sqrt_part()]);
    let a = (x.rational_part() * BigInt::from(den.clone())).to_integer();
    let b = (x.sqrt_part() * BigInt::from(den.clone())).to_integer();
    let d = &b * &b * BigInt::from(x.d());
    let (mut p, mut q) = if b.is_positive() { (a, den) } else { (-a, -den) };
    let mut d = d;
    if !(&d - &p * &p).is_multiple_of(&q) {
        let qa = q.abs();
        p *= &qa;
        d *= &q * &q;
        q *= &qa;
    }
    let isqrt_d = d.sqrt();
    Ok(PartialQuotients { p, q, d, isqrt_d })
}

impl Iterator for PartialQuotients {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let a = if self.q.is_positive() {
            (&self.p + &self.isqrt_d).div_floor(&self.q)
        } else {
            (&self.p + &self.isqrt_d + BigInt::one()).div_floor(&self.q)
        };
        let p_next = &a * &self.q - &self.p;
        let q_next = (&self.d - &p_next * &p_next) / &self.q;
        debug_assert!(!q_next.is_zero());
        self.p = p_next;
        self.q = q_next;
        Some(a)
    }
}

/// A convergent `p / q` of a continued fraction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub p: BigInt,
    pub q: BigInt,
}

#[derive(Debug, Clone)]
pub struct Convergents {
    quotients: PartialQuotients,
    prev: (BigInt, BigInt),
    prev2: (BigInt, BigInt),
}

pub fn convergents(x: &QuadNumber) -> Result<Convergents, QuadError> {
    Ok(Convergents {
        quotients: partial_quotients(x)?,
        prev: (BigInt::one(), BigInt::zero()),
        prev2: (BigInt::zero(), BigInt::one()),
    })
}

impl Iterator for Convergents {
    type Item = Convergent;

    fn next(&mut self) -> Option<Convergent> {
        let a = self.quotients.next()?;
        let p = &a * &self.prev.0 + &self.prev2.0;
        let q = &a * &self.prev.1 + &self.prev2.1;
        self.prev2 = std::mem::replace(&mut self.prev, (p.clone(), q.clone()));
        Some(Convergent { p, q })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::QuadField;

    fn small(v: impl Iterator<Item = BigInt>, n: usize) -> Vec<i64> {
        v.take(n).map(|b| i64::try_from(b).unwrap()).collect()
    }

    #[test]
    fn sqrt2_quotients() {
        let f = QuadField::new(2).unwrap();
        let pq = partial_quotients(&f.sqrt_d()).unwrap();
        assert_eq!(small(pq, 6), vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn sqrt2_convergents_follow_pell_recurrence() {
        let f = QuadField::new(2).unwrap();
        let cs: Vec<_> = convergents(&f.sqrt_d()).unwrap().take(8).collect();
        let (mut p, mut q) = (1i64, 1i64);
        for c in &cs {
            assert_eq!((c.p.clone(), c.q.clone()), (BigInt::from(p), BigInt::from(q)));
            (p, q) = (p + 2 * q, p + q);
        }
        assert_eq!(cs[7], Convergent { p: 577.into(), q: 408.into() });
    }

    #[test]
    fn sqrt7_period() {
        let f = QuadField::new(7).unwrap();
        let pq = partial_quotients(&f.sqrt_d()).unwrap();
        assert_eq!(small(pq, 9), vec![2, 1, 1, 1, 4, 1, 1, 1, 4]);
    }

    #[test]
    fn golden_ratio_and_negative_values() {
        let f = QuadField::new(5).unwrap();
        let phi = f.ratio(1, 2, 1, 2);
        assert_eq!(small(partial_quotients(&phi).unwrap(), 5), vec![1, 1, 1, 1, 1]);
        // -sqrt2 = [-2; 1, 1, 2, 2, ...]
        let g = QuadField::new(2).unwrap();
        let neg = -g.sqrt_d();
        assert_eq!(small(partial_quotients(&neg).unwrap(), 5), vec![-2, 1, 1, 2, 2]);
        // (1 - sqrt2)/3 ~ -0.138
        let x = g.ratio(1, 3, -1, 3);
        let first = partial_quotients(&x).unwrap().next().unwrap();
        assert_eq!(first, BigInt::from(-1));
    }

    #[test]
    fn rational_input_is_rejected() {
        let f = QuadField::new(2).unwrap();
        assert!(matches!(partial_quotients(&f.int(3)), Err(QuadError::Rational)));
    }
}
