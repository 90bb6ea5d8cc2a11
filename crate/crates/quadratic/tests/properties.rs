use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use quadratic_field::{
    convergents, is_discrete, PeriodGroup, QuadField, QuadNumber,
};

fn rational() -> impl Strategy<Value = BigRational> {
    (-50i64..=50, 1i64..=12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn quad(d: i64) -> impl Strategy<Value = QuadNumber> {
    (rational(), rational()).prop_map(move |(p, q)| QuadNumber::new(p, q, d))
}

fn nonzero_quad(d: i64) -> impl Strategy<Value = QuadNumber> {
    quad(d).prop_filter("nonzero", |x| !x.is_zero())
}

proptest! {
    #[test]
    fn multiplication_is_associative(x in quad(2), y in quad(2), z in quad(2)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn distributive_and_commutative(x in quad(3), y in quad(3), z in quad(3)) {
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
    }

    #[test]
    fn inverse_is_exact(x in nonzero_quad(2)) {
        let f = QuadField::new(2).unwrap();
        prop_assert_eq!(&x * &x.inv().unwrap(), f.one());
    }

    #[test]
    fn sign_matches_float(x in quad(5)) {
        let v = x.to_f64();
        if v.abs() > 1e-9 {
            prop_assert_eq!(x.signum(), if v > 0.0 { 1 } else { -1 });
        }
    }

    #[test]
    fn display_parses_back(x in quad(2)) {
        prop_assert_eq!(QuadNumber::parse(&x.to_string(), 2).unwrap(), x);
    }

    #[test]
    fn discreteness_invariances(
        gens in prop::collection::vec(nonzero_quad(2), 1..5),
        scale in rational().prop_filter("nonzero", |r| *r != BigRational::from_integer(0.into())),
        coeffs in prop::collection::vec(-3i64..=3, 5),
        rot in 0usize..5,
    ) {
        let f = QuadField::new(2).unwrap();
        let verdict = is_discrete(&PeriodGroup::new(f, gens.clone()).unwrap()).is_discrete();

        let mut permuted = gens.clone();
        let len = permuted.len();
        permuted.rotate_left(rot % len);
        prop_assert_eq!(is_discrete(&PeriodGroup::new(f, permuted).unwrap()).is_discrete(), verdict);

        let scaled: Vec<_> = gens.iter().map(|g| g.scale(&scale)).collect();
        prop_assert_eq!(is_discrete(&PeriodGroup::new(f, scaled).unwrap()).is_discrete(), verdict);

        let combo = gens.iter().zip(&coeffs).fold(f.zero(), |acc, (g, &c)| {
            acc + g.scale(&BigRational::from_integer(c.into()))
        });
        let mut extended = gens.clone();
        extended.push(combo);
        prop_assert_eq!(is_discrete(&PeriodGroup::new(f, extended).unwrap()).is_discrete(), verdict);
    }

    #[test]
    fn membership_recovers_combinations(
        coeffs in prop::collection::vec(-6i64..=6, 3),
    ) {
        let f = QuadField::new(2).unwrap();
        let gens = vec![f.ratio(1, 2, 0, 1), f.ratio(0, 1, 1, 3), f.ratio(1, 1, 1, 1)];
        let pg = PeriodGroup::new(f, gens.clone()).unwrap();
        let x = gens.iter().zip(&coeffs).fold(f.zero(), |acc, (g, &c)| {
            acc + g.scale(&BigRational::from_integer(c.into()))
        });
        let n = pg.membership(&x).unwrap().expect("combination is a member");
        let back = gens.iter().zip(&n).fold(f.zero(), |acc, (g, c)| {
            acc + g.scale(&BigRational::from_integer(c.clone()))
        });
        prop_assert_eq!(back, x);
    }
}

#[test]
fn pell_identity_for_sqrt2_convergents() {
    let f = QuadField::new(2).unwrap();
    for (k, c) in convergents(&f.sqrt_d()).unwrap().take(30).enumerate() {
        let pell = &c.p * &c.p - BigInt::from(2) * &c.q * &c.q;
        let expected = if k % 2 == 0 { -1 } else { 1 };
        assert_eq!(pell, BigInt::from(expected), "convergent {k}");
    }
}

#[test]
fn half_is_not_a_period_of_one_and_sqrt2() {
    let f = QuadField::new(2).unwrap();
    let pg = PeriodGroup::new(f, vec![f.one(), f.sqrt_d()]).unwrap();
    let half = f.ratio(1, 2, 0, 1);
    assert_eq!(pg.membership(&half).unwrap(), None);
    // brute-force window agrees
    for a in -3..=3 {
        for b in -3..=3 {
            let p = &f.int(a) + &f.sqrt_d().scale(&BigRational::from_integer(b.into()));
            assert_ne!(p, half);
        }
    }
}
