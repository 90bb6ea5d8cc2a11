//! Period groups of twisted algebroids `TM x R` over products of 2-spheres.
//!
//! With every sphere factor normalised to one unit of area, the period group
//! of `Omega = sum_i lambda_i omega_i` is the subgroup of `R` generated by the
//! coefficients `lambda_i`. Such a group is discrete exactly when its Q-rank
//! is at most one, and discreteness of the period group is what separates
//! integrable from non-integrable algebroids in this family.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cf::convergents;
use crate::lattice::solve_integer_combination;
use crate::number::{common_denominator, QuadField, QuadNumber};
use crate::QuadError;

/// `TM x R` over `(S^2)^k` twisted by `Omega = sum lambda_i omega_i`, where
/// `omega_i` is the unit-area form of the i-th factor.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedSpec {
    field: QuadField,
    lambdas: Vec<QuadNumber>,
}

impl TwistedSpec {
    pub fn new(field: QuadField, lambdas: Vec<QuadNumber>) -> Result<Self, QuadError> {
        if lambdas.is_empty() {
            return Err(QuadError::NoFactors);
        }
        if let Some(bad) = lambdas.iter().find(|l| l.d() != field.d()) {
            return Err(QuadError::RadicandMismatch(field.d(), bad.d()));
        }
        Ok(Self { field, lambdas })
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn factors(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[QuadNumber] {
        &self.lambdas
    }

    /// `sum_i wrap_i lambda_i`, the period of the sphere class with the given
    /// wrapping numbers.
    pub fn period_of(&self, wrap: &[i64]) -> Result<QuadNumber, QuadError> {
        if wrap.len() != self.lambdas.len() {
            return Err(QuadError::WrapLength {
                expected: self.lambdas.len(),
                got: wrap.len(),
            });
        }
        Ok(self
            .lambdas
            .iter()
            .zip(wrap)
            .fold(self.field.zero(), |acc, (l, &k)| {
                acc + l.scale(&BigRational::from_integer(k.into()))
            }))
    }
}

/// A finitely generated subgroup of `R` with generators in `Q(sqrt d)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PeriodGroup {
    field: QuadField,
    generators: Vec<QuadNumber>,
}

impl PeriodGroup {
    /// Zero generators are dropped.
    pub fn new(field: QuadField, generators: Vec<QuadNumber>) -> Result<Self, QuadError> {
        if let Some(bad) = generators.iter().find(|g| g.d() != field.d()) {
            return Err(QuadError::RadicandMismatch(field.d(), bad.d()));
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Self { field, generators })
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn generators(&self) -> &[QuadNumber] {
        &self.generators
    }

    /// Dimension of the Q-span of the generators inside `Q(sqrt d) = Q^2`.
    pub fn rank(&self) -> usize {
        match is_discrete(self) {
            Discreteness::Discrete { generator } if generator.is_zero() => 0,
            Discreteness::Discrete { .. } => 1,
            Discreteness::Dense { .. } => 2,
        }
    }

    /// Exact membership test; returns integer coefficients expressing `x` in
    /// the generators when `x` belongs to the group.
    pub fn membership(&self, x: &QuadNumber) -> Result<Option<Vec<BigInt>>, QuadError> {
        if x.d() != self.field.d() {
            return Err(QuadError::RadicandMismatch(self.field.d(), x.d()));
        }
        let den = common_denominator(
            self.generators
                .iter()
                .chain(std::iter::once(x))
                .flat_map(|g| [g.rational_part(), g.sqrt_part()]),
        );
        let scale = |r: &BigRational| (r * BigRational::from_integer(den.clone())).to_integer();
        let rows = vec![
            self.generators.iter().map(|g| scale(g.rational_part())).collect(),
            self.generators.iter().map(|g| scale(g.sqrt_part())).collect(),
        ];
        let target = [scale(x.rational_part()), scale(x.sqrt_part())];
        Ok(solve_integer_combination(&rows, &target))
    }
}

/// Generators are the twisting coefficients: `pi_2` of a sphere product is
/// generated by the factors, each of unit area.
pub fn period_group(spec: &TwistedSpec) -> PeriodGroup {
    PeriodGroup::new(spec.field, spec.lambdas.clone()).expect("spec radicands already checked")
}

#[derive(Debug, Clone, PartialEq)]
pub enum Discreteness {
    /// Q-rank at most one; the group is cyclic, generated by the positive
    /// `generator` (zero for the trivial group).
    Discrete { generator: QuadNumber },
    /// Q-rank two; `first` and `second` are Q-independent elements of the group.
    Dense { first: QuadNumber, second: QuadNumber },
}

impl Discreteness {
    pub fn is_discrete(&self) -> bool {
        matches!(self, Discreteness::Discrete { .. })
    }
}

fn det(a: &QuadNumber, b: &QuadNumber) -> BigRational {
    a.rational_part() * b.sqrt_part() - a.sqrt_part() * b.rational_part()
}

pub fn is_discrete(pg: &PeriodGroup) -> Discreteness {
    let Some(v) = pg.generators.iter().find(|g| !g.is_zero()) else {
        return Discreteness::Discrete {
            generator: pg.field.zero(),
        };
    };
    if let Some(w) = pg.generators.iter().find(|g| !det(v, g).is_zero()) {
        return Discreteness::Dense {
            first: v.clone(),
            second: w.clone(),
        };
    }
    // Every generator is a rational multiple r_i of v; the group is gcd(r_i) v.
    let ratios: Vec<BigRational> = pg
        .generators
        .iter()
        .map(|g| {
            if v.rational_part().is_zero() {
                g.sqrt_part() / v.sqrt_part()
            } else {
                g.rational_part() / v.rational_part()
            }
        })
        .collect();
    let den = common_denominator(&ratios);
    let num_gcd = ratios
        .iter()
        .map(|r| (r * BigRational::from_integer(den.clone())).to_integer())
        .fold(BigInt::zero(), |acc, n| acc.gcd(&n));
    let generator = v.scale(&BigRational::new(num_gcd, den)).abs();
    Discreteness::Discrete { generator }
}

/// One element `p*first - q*second` of a dense period group, built from a
/// convergent `p/q` of `second/first`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub p: BigInt,
    pub q: BigInt,
    pub element: QuadNumber,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Integrable {
        generator: QuadNumber,
    },
    NonIntegrable {
        first: QuadNumber,
        second: QuadNumber,
        /// Nonzero group elements with strictly decreasing absolute value.
        witnesses: Vec<Witness>,
    },
}

impl Verdict {
    pub fn is_integrable(&self) -> bool {
        matches!(self, Verdict::Integrable { .. })
    }
}

/// Integrable iff the period group is discrete. A non-integrable verdict
/// carries `witness_count` group elements shrinking towards zero, taken from
/// the convergents (index 1 onwards) of the ratio of two independent periods.
pub fn integrability_verdict(spec: &TwistedSpec, witness_count: usize) -> Verdict {
    match is_discrete(&period_group(spec)) {
        Discreteness::Discrete { generator } => Verdict::Integrable { generator },
        Discreteness::Dense { first, second } => {
            let ratio = second.checked_div(&first).expect("first generator is nonzero");
            let witnesses = convergents(&ratio)
                .expect("independent generators have an irrational ratio")
                .skip(1)
                .take(witness_count)
                .map(|c| {
                    let element = first.scale(&BigRational::from_integer(c.p.clone()))
                        - second.scale(&BigRational::from_integer(c.q.clone()));
                    Witness {
                        p: c.p,
                        q: c.q,
                        element,
                    }
                })
                .collect();
            Verdict::NonIntegrable {
                first,
                second,
                witnesses,
            }
        }
    }
}

/// Exact data of a twisted `A_0`-path: its base endpoints (as labels) and
/// `int_0^1 u dt` in units of the sphere area.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistedPathData {
    pub source: String,
    pub target: String,
    pub u_integral: QuadNumber,
}

/// `p0 ~ p1` through a connecting base sphere of class `wrap`: same base
/// endpoints and `int (u0 - u1) = sum wrap_i lambda_i`, decided exactly.
pub fn equivalence_twisted(
    spec: &TwistedSpec,
    p0: &TwistedPathData,
    p1: &TwistedPathData,
    wrap: &[i64],
) -> Result<bool, QuadError> {
    let period = spec.period_of(wrap)?;
    let diff = p0.u_integral.try_add(&-&p1.u_integral)?;
    Ok(p0.source == p1.source && p0.target == p1.target && diff == period)
}

impl TwistedSpec {
    /// Searches all sphere classes at once: returns a wrap vector realising
    /// `int (u0 - u1)` when the difference lies in the period group.
    pub fn connecting_class(
        &self,
        p0: &TwistedPathData,
        p1: &TwistedPathData,
    ) -> Result<Option<Vec<BigInt>>, QuadError> {
        if p0.source != p1.source || p0.target != p1.target {
            return Ok(None);
        }
        let diff = p0.u_integral.try_add(&-&p1.u_integral)?;
        let group = PeriodGroup {
            field: self.field,
            generators: self.lambdas.clone(),
        };
        group.membership(&diff)
    }
}

impl Witness {
    pub fn magnitude(&self) -> QuadNumber {
        self.element.abs()
    }

    /// `p^2 - d q^2`.
    pub fn pell_value(&self, d: i64) -> BigInt {
        &self.p * &self.p - BigInt::from(d) * &self.q * &self.q
    }
}
