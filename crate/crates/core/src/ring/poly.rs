//! Dense univariate polynomials in `x` over a [`BaseField`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::BaseField;

/// Coefficients from the constant term upward; no trailing zeros.
///
/// Arithmetic takes the base field explicitly so that the value itself stays
/// field-agnostic (and cheap to hash and order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Poly::from_coeffs(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from integer coefficients, reduced into `field`.
    pub fn from_ints(field: &BaseField, coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn reduce(&self, field: &BaseField) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|c| field.reduce(c.clone())).collect())
    }

    pub fn add(&self, other: &Poly, field: &BaseField) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).unwrap_or(&zero);
                    let b = other.coeffs.get(i).unwrap_or(&zero);
                    field.add(a, b)
                })
                .collect(),
        )
    }

    pub fn neg(&self, field: &BaseField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| field.neg(c)).collect())
    }

    pub fn sub(&self, other: &Poly, field: &BaseField) -> Poly {
        self.add(&other.neg(field), field)
    }

    pub fn mul(&self, other: &Poly, field: &BaseField) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(&out[i + j], &field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational, field: &BaseField) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| field.mul(a, c)).collect())
    }

    pub fn pow(&self, mut e: u32, field: &BaseField) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, field);
            }
            base = base.mul(&base, field);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly, field: &BaseField) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = field.inv(divisor.leading().unwrap());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let shift = rem.len() - 1 - dd;
            let c = field.mul(rem.last().unwrap(), &lead_inv);
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = field.sub(&rem[shift + i], &field.mul(&c, d));
            }
            quot[shift] = c;
            while rem.last().is_some_and(|x| x.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// The monic associate together with the leading coefficient it was divided by.
    pub fn monic(&self, field: &BaseField) -> (Poly, BigRational) {
        match self.leading() {
            None => (Poly::zero(), BigRational::one()),
            Some(lc) => {
                let lc = lc.clone();
                (self.scale(&field.inv(&lc), field), lc)
            }
        }
    }

    pub fn eval(&self, at: &BigRational, field: &BaseField) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| field.add(&field.mul(&acc, at), c))
    }

    /// All monic polynomials of exactly the given degree over a finite field.
    pub fn monics_of_degree(field: &BaseField, degree: usize) -> Vec<Poly> {
        let elems = field.elements().expect("enumeration requires a finite field");
        let mut out = vec![Vec::<BigRational>::new()];
        for _ in 0..degree {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    elems.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|mut v| {
                v.push(BigRational::one());
                Poly::from_coeffs(v)
            })
            .collect()
    }

    /// All polynomials of degree below `bound` (including zero), finite fields only.
    pub fn all_below_degree(field: &BaseField, bound: usize) -> Vec<Poly> {
        let elems = field.elements().expect("enumeration requires a finite field");
        let mut out = vec![Vec::<BigRational>::new()];
        for _ in 0..bound {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    elems.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push(c.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(Poly::from_coeffs).collect()
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { "-" } else { "+" })?;
            }
            first = false;
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                write!(f, "{}", fmt_coeff(&mag))?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{}{var}", fmt_coeff(&mag))?;
            }
        }
        Ok(())
    }
}

/// Parses a polynomial in `x` such as `x^3+2x-1`, `3*x^2 - x`, or `(1/2)x+1`.
pub fn parse_poly(text: &str, field: &BaseField) -> Result<Poly, String> {
    let s: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err("empty polynomial".into());
    }
    let mut pos = 0;
    let mut acc = Poly::zero();
    while pos < s.len() {
        let mut sign = BigRational::one();
        if s[pos] == '+' || s[pos] == '-' {
            if s[pos] == '-' {
                sign = -sign;
            }
            pos += 1;
        } else if pos != 0 {
            return Err(format!("expected '+' or '-' at offset {pos}"));
        }
        let mut coeff: Option<BigRational> = None;
        if pos < s.len() && s[pos] == '(' {
            let close = s[pos..]
                .iter()
                .position(|&c| c == ')')
                .ok_or("unbalanced parenthesis in coefficient")?
                + pos;
            coeff = Some(parse_rational(&s[pos + 1..close].iter().collect::<String>())?);
            pos = close + 1;
        } else {
            let start = pos;
            while pos < s.len() && (s[pos].is_ascii_digit() || s[pos] == '/') {
                pos += 1;
            }
            if pos > start {
                coeff = Some(parse_rational(&s[start..pos].iter().collect::<String>())?);
            }
        }
        if pos < s.len() && s[pos] == '*' {
            pos += 1;
        }
        let mut exponent = 0usize;
        if pos < s.len() && s[pos] == 'x' {
            pos += 1;
            exponent = 1;
            if pos < s.len() && s[pos] == '^' {
                pos += 1;
                let start = pos;
                while pos < s.len() && s[pos].is_ascii_digit() {
                    pos += 1;
                }
                exponent = s[start..pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| format!("bad exponent at offset {start}"))?;
            }
        } else if coeff.is_none() {
            return Err(format!("unexpected character at offset {pos} in '{text}'"));
        }
        let c = sign * coeff.unwrap_or_else(BigRational::one);
        let mut term = vec![BigRational::zero(); exponent + 1];
        term[exponent] = c;
        acc = acc.add(&Poly::from_coeffs(term).reduce(field), field);
    }
    Ok(acc)
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let bad = || format!("bad coefficient '{s}'");
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}
