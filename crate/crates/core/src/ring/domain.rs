//! Euclidean domains covering the catalog: the integers and `k[x]`.
//!
//! Every catalog ring is either one of these PIDs or a quotient of one, so
//! matrix algorithms (Smith form, kernels) are written once against
//! [`EuclideanDomain`] and quotient rings are handled by lifting.

use std::cmp::Ordering;
use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::field::BaseField;
use super::poly::Poly;
use super::Repr;
use crate::error::{Error, Result};

/// Degree bound for exhaustive irreducible search over prime fields.
pub const MAX_FACTOR_DEGREE: usize = 12;

pub trait EuclideanDomain: Clone + Debug + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Display + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// `(q, r)` with `a = q*b + r` and `r` strictly smaller than `b`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Compares Euclidean sizes; zero is smallest.
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// Canonical associate (positive / monic) and the unit `u` with `a = u * canonical`.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn unit_inverse(&self, u: &Self::Elem) -> Self::Elem;

    fn wrap(&self, e: Self::Elem) -> Repr;
    fn unwrap(&self, r: &Repr) -> Option<Self::Elem>;

    /// Complete list of residues modulo a nonzero `m`, when finite.
    fn residues(&self, m: &Self::Elem) -> Option<Vec<Self::Elem>>;

    /// Cardinality of `D/(p)` for an irreducible `p`, when finite.
    fn residue_field_size(&self, p: &Self::Elem) -> Option<u64>;

    /// Factorization of a nonzero element into normalized irreducibles.
    fn factor(&self, a: &Self::Elem) -> Result<Vec<(Self::Elem, u32)>>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn rem(&self, a: &Self::Elem, m: &Self::Elem) -> Self::Elem {
        if self.is_zero(m) {
            a.clone()
        } else {
            self.div_rem(a, m).1
        }
    }

    fn divides(&self, d: &Self::Elem, a: &Self::Elem) -> bool {
        if self.is_zero(d) {
            return self.is_zero(a);
        }
        self.is_zero(&self.div_rem(a, d).1)
    }

    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    fn gcd(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !self.is_zero(&y) {
            let r = self.div_rem(&x, &y).1;
            x = y;
            y = r;
        }
        self.normalize(&x).0
    }

    /// Extended gcd: `(g, s, t)` with `s*a + t*b = g`, `g` normalized.
    fn xgcd(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !self.is_zero(&r1) {
            let (q, r2) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let (g, u) = self.normalize(&r0);
        let ui = self.unit_inverse(&u);
        (g, self.mul(&s0, &ui), self.mul(&t0, &ui))
    }

    /// Multiplicity of the irreducible `p` in nonzero `a`.
    fn valuation(&self, p: &Self::Elem, a: &Self::Elem) -> u32 {
        let mut v = 0;
        let mut x = a.clone();
        while !self.is_zero(&x) && self.divides(p, &x) {
            x = self.div_rem(&x, p).0;
            v += 1;
        }
        v
    }

    /// Factors `a` using only the given irreducibles; the cofactor must be a unit.
    fn factor_with_hints(
        &self,
        a: &Self::Elem,
        hints: &[Self::Elem],
    ) -> Result<Vec<(Self::Elem, u32)>> {
        if self.is_zero(a) {
            return Err(Error::FactorZero);
        }
        let mut rest = a.clone();
        let mut out = Vec::new();
        let mut seen: Vec<Self::Elem> = Vec::new();
        for h in hints {
            let h = self.normalize(h).0;
            if seen.contains(&h) {
                continue;
            }
            seen.push(h.clone());
            let v = self.valuation(&h, &rest);
            if v > 0 {
                rest = self.div_rem(&rest, &self.pow(&h, v)).0;
                out.push((h, v));
            }
        }
        if !self.is_unit(&rest) {
            return Err(Error::Unfactorable(format!("{a}")));
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl EuclideanDomain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        // floor division against |b| keeps 0 <= r < |b|
        let (q, r) = a.div_mod_floor(&b.abs());
        if b.is_negative() {
            (-q, r)
        } else {
            (q, r)
        }
    }
    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.sign() == Sign::Minus {
            (-a, BigInt::from(-1))
        } else {
            (a.clone(), BigInt::one())
        }
    }
    fn unit_inverse(&self, u: &BigInt) -> BigInt {
        u.clone()
    }
    fn wrap(&self, e: BigInt) -> Repr {
        Repr::Int(e)
    }
    fn unwrap(&self, r: &Repr) -> Option<BigInt> {
        match r {
            Repr::Int(n) => Some(n.clone()),
            Repr::Poly(_) => None,
        }
    }
    fn residues(&self, m: &BigInt) -> Option<Vec<BigInt>> {
        let m = m.abs().to_u64()?;
        if m == 0 || m > 1 << 20 {
            return None;
        }
        Some((0..m).map(BigInt::from).collect())
    }
    fn residue_field_size(&self, p: &BigInt) -> Option<u64> {
        p.abs().to_u64()
    }
    fn factor(&self, a: &BigInt) -> Result<Vec<(BigInt, u32)>> {
        if a.is_zero() {
            return Err(Error::FactorZero);
        }
        let mut n = a.abs();
        let mut out = Vec::new();
        let mut d = BigInt::from(2);
        while &d * &d <= n {
            let mut e = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            if e > 0 {
                out.push((d.clone(), e));
            }
            d += 1;
        }
        if n > BigInt::one() {
            out.push((n, 1));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Polynomials {
    pub field: BaseField,
}

impl Polynomials {
    pub fn new(field: BaseField) -> Self {
        Polynomials { field }
    }

    /// Irreducibility test: trial division over prime fields, rational-root
    /// test up to degree 3 over the rationals.
    pub fn is_irreducible(&self, p: &Poly) -> Result<bool> {
        let Some(deg) = p.degree() else {
            return Ok(false);
        };
        if deg == 0 {
            return Ok(false);
        }
        if deg == 1 {
            return Ok(true);
        }
        match self.field {
            BaseField::Prime(_) => Ok(self.factor(p)?.len() == 1 && self.factor(p)?[0].1 == 1),
            BaseField::Rationals => {
                if deg <= 3 {
                    Ok(!has_rational_root(p))
                } else {
                    Err(Error::Unfactorable(format!(
                        "{p}: irreducibility over Q is only decided up to degree 3"
                    )))
                }
            }
        }
    }
}

impl EuclideanDomain for Polynomials {
    type Elem = Poly;

    fn zero(&self) -> Poly {
        Poly::zero()
    }
    fn one(&self) -> Poly {
        Poly::one()
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a.add(b, &self.field)
    }
    fn neg(&self, a: &Poly) -> Poly {
        a.neg(&self.field)
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a.mul(b, &self.field)
    }
    fn is_zero(&self, a: &Poly) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &Poly) -> bool {
        a.degree() == Some(0)
    }
    fn div_rem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        a.div_rem(b, &self.field)
    }
    fn size_cmp(&self, a: &Poly, b: &Poly) -> Ordering {
        match (a.degree(), b.degree()) {
            (None, None) => Ordering::Equal,
            (None, _) => Ordering::Less,
            (_, None) => Ordering::Greater,
            (Some(x), Some(y)) => x.cmp(&y),
        }
    }
    fn normalize(&self, a: &Poly) -> (Poly, Poly) {
        if a.is_zero() {
            return (Poly::zero(), Poly::one());
        }
        let (m, lc) = a.monic(&self.field);
        (m, Poly::constant(lc))
    }
    fn unit_inverse(&self, u: &Poly) -> Poly {
        Poly::constant(self.field.inv(u.leading().expect("unit is nonzero")))
    }
    fn wrap(&self, e: Poly) -> Repr {
        Repr::Poly(e)
    }
    fn unwrap(&self, r: &Repr) -> Option<Poly> {
        match r {
            Repr::Poly(p) => Some(p.clone()),
            Repr::Int(_) => None,
        }
    }
    fn residues(&self, m: &Poly) -> Option<Vec<Poly>> {
        let deg = m.degree()?;
        let q = self.field.characteristic();
        if q == 0 || (q as f64).powi(deg as i32) > (1u64 << 20) as f64 {
            return None;
        }
        Some(Poly::all_below_degree(&self.field, deg))
    }
    fn residue_field_size(&self, p: &Poly) -> Option<u64> {
        let q = self.field.characteristic();
        if q == 0 {
            return None;
        }
        q.checked_pow(p.degree()? as u32)
    }
    fn factor(&self, a: &Poly) -> Result<Vec<(Poly, u32)>> {
        if a.is_zero() {
            return Err(Error::FactorZero);
        }
        let (mut rest, _) = a.monic(&self.field);
        let deg = rest.degree().unwrap();
        match self.field {
            BaseField::Rationals => {
                if deg == 0 {
                    return Ok(Vec::new());
                }
                if deg == 1 {
                    return Ok(vec![(rest, 1)]);
                }
                Err(Error::Unfactorable(format!(
                    "{a}: factorization over Q requires a supplied factorization"
                )))
            }
            BaseField::Prime(_) => {
                if deg > MAX_FACTOR_DEGREE {
                    return Err(Error::Unfactorable(format!(
                        "{a}: degree exceeds the search bound {MAX_FACTOR_DEGREE}"
                    )));
                }
                let mut out = Vec::new();
                let mut d = 1;
                // smallest-degree monic divisor of the cofactor is always irreducible
                while 2 * d <= rest.degree().unwrap_or(0) {
                    for cand in Poly::monics_of_degree(&self.field, d) {
                        let v = self.valuation(&cand, &rest);
                        if v > 0 {
                            rest = self.div_rem(&rest, &self.pow(&cand, v)).0;
                            out.push((cand, v));
                        }
                    }
                    d += 1;
                }
                if rest.degree().unwrap_or(0) > 0 {
                    out.push((rest, 1));
                }
                out.sort();
                Ok(out)
            }
        }
    }
}

/// Rational-root test for a polynomial over the rationals.
pub fn has_rational_root(p: &Poly) -> bool {
    let q = BaseField::Rationals;
    if p.coeffs().first().is_some_and(|c| c.is_zero()) {
        return true;
    }
    // clear denominators
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let a0 = ints.first().unwrap().abs();
    let an = ints.last().unwrap().abs();
    let divisors = |n: &BigInt| -> Vec<BigInt> {
        let n = n.to_u64().expect("coefficient too large for rational-root test");
        (1..=n).filter(|d| n.is_multiple_of(*d)).map(BigInt::from).collect()
    };
    for num in divisors(&a0) {
        for den in divisors(&an) {
            for s in [1, -1] {
                let r = BigRational::new(&num * s, den.clone());
                if p.eval(&r, &q).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}
