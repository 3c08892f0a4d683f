//! Coefficient fields for the polynomial rings in the catalog.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Base field of a univariate polynomial ring: the rationals or a prime field.
///
/// Coefficients are carried as [`BigRational`] in both cases; over `F_p` they
/// are always integers in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseField {
    Rationals,
    Prime(u64),
}

impl BaseField {
    pub fn characteristic(&self) -> u64 {
        match self {
            BaseField::Rationals => 0,
            BaseField::Prime(p) => *p,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BaseField::Prime(_))
    }

    /// Maps an arbitrary rational into the field's canonical representative.
    ///
    /// Over `F_p` the denominator must be prime to `p`.
    pub fn reduce(&self, c: BigRational) -> BigRational {
        match self {
            BaseField::Rationals => c,
            BaseField::Prime(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                assert!(!den.is_zero(), "denominator divisible by the characteristic");
                let inv = mod_inverse(&den, &p);
                BigRational::from_integer((num * inv).mod_floor(&p))
            }
        }
    }

    pub fn from_int(&self, n: i64) -> BigRational {
        self.reduce(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigRational) -> BigRational {
        self.reduce(-a.clone())
    }

    pub fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        match self {
            BaseField::Rationals => a.recip(),
            BaseField::Prime(p) => {
                let p = BigInt::from(*p);
                BigRational::from_integer(mod_inverse(a.numer(), &p))
            }
        }
    }

    /// All field elements, for finite fields only.
    pub fn elements(&self) -> Option<Vec<BigRational>> {
        match self {
            BaseField::Rationals => None,
            BaseField::Prime(p) => Some(
                (0..*p)
                    .map(|c| BigRational::from_integer(BigInt::from(c)))
                    .collect(),
            ),
        }
    }
}

impl fmt::Display for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseField::Rationals => write!(f, "Q"),
            BaseField::Prime(p) => write!(f, "F{p}"),
        }
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let g = a.mod_floor(m).extended_gcd(m);
    assert!(g.gcd.is_one(), "element not invertible modulo {m}");
    g.x.mod_floor(m)
}

/// Trial-division primality for the small characteristics and moduli we accept.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_inverse() {
        let f = BaseField::Prime(7);
        for a in 1..7 {
            let x = f.from_int(a);
            assert_eq!(f.mul(&x, &f.inv(&x)), f.from_int(1));
        }
    }

    #[test]
    fn reduce_negative_and_fraction() {
        let f = BaseField::Prime(5);
        assert_eq!(f.from_int(-1), f.from_int(4));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(f.mul(&f.reduce(half), &f.from_int(2)), f.from_int(1));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
