//! The ring catalog: `Z`, `k[x]` and their proper quotients.
//!
//! All of these are Gorenstein with Krull dimension at most one, so the
//! injective dimension of the ring over itself equals `krull_dim`.

pub mod domain;
pub mod field;
pub mod poly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use domain::{EuclideanDomain, Integers, Polynomials};
pub use field::BaseField;
pub use poly::Poly;

use crate::error::{Error, Result};

/// Raw value in the covering PID (`Z` or `k[x]`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Repr {
    Int(BigInt),
    Poly(Poly),
}

impl fmt::Display for Repr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Repr::Int(n) => write!(f, "{n}"),
            Repr::Poly(p) => write!(f, "{p}"),
        }
    }
}

impl From<i64> for Repr {
    fn from(n: i64) -> Self {
        Repr::Int(BigInt::from(n))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Polynomials(BaseField),
    IntegerQuotient(BigInt),
    PolynomialQuotient(BaseField, Poly),
}

/// The PID a catalog ring is (or is a quotient of).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Covering {
    Integers,
    Poly(BaseField),
}

/// Runs `$body` with `$d` bound to the covering Euclidean domain of `$ring`.
#[macro_export]
macro_rules! with_domain {
    ($ring:expr, |$d:ident| $body:expr) => {
        match $ring.covering() {
            $crate::ring::Covering::Integers => {
                let $d = $crate::ring::Integers;
                $body
            }
            $crate::ring::Covering::Poly(field) => {
                let $d = $crate::ring::Polynomials::new(field);
                $body
            }
        }
    };
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingSpec {
    kind: RingKind,
    krull_dim: u32,
    factored_modulus: Vec<(Repr, u32)>,
}

pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn integers() -> Ring {
        Arc::new(RingSpec {
            kind: RingKind::Integers,
            krull_dim: 1,
            factored_modulus: Vec::new(),
        })
    }

    pub fn polynomials(field: BaseField) -> Result<Ring> {
        if let BaseField::Prime(p) = field {
            if !field::is_prime_u64(p) {
                return Err(Error::RingDescriptor(format!("F{p}[x]"), format!("{p} is not prime")));
            }
        }
        Ok(Arc::new(RingSpec {
            kind: RingKind::Polynomials(field),
            krull_dim: 1,
            factored_modulus: Vec::new(),
        }))
    }

    pub fn integer_quotient(m: i64) -> Result<Ring> {
        Self::integer_quotient_big(BigInt::from(m))
    }

    pub fn integer_quotient_big(m: BigInt) -> Result<Ring> {
        if m < BigInt::from(2) {
            return Err(Error::RingDescriptor(format!("Z/{m}"), "modulus must be at least 2".into()));
        }
        let factored = Integers
            .factor(&m)?
            .into_iter()
            .map(|(p, e)| (Repr::Int(p), e))
            .collect();
        Ok(Arc::new(RingSpec {
            kind: RingKind::IntegerQuotient(m),
            krull_dim: 0,
            factored_modulus: factored,
        }))
    }

    /// `k[x]/(f)`; over the rationals `supplied` must carry the factorization.
    pub fn polynomial_quotient(
        field: BaseField,
        modulus: Poly,
        supplied: Option<Vec<(Poly, u32)>>,
    ) -> Result<Ring> {
        let desc = || format!("{field}[x]/({modulus})");
        if let BaseField::Prime(p) = field {
            if !field::is_prime_u64(p) {
                return Err(Error::RingDescriptor(desc(), format!("{p} is not prime")));
            }
        }
        let d = Polynomials::new(field);
        let modulus = modulus.reduce(&field);
        if modulus.degree().unwrap_or(0) < 1 {
            return Err(Error::RingDescriptor(desc(), "modulus must have degree at least 1".into()));
        }
        let (modulus, _) = modulus.monic(&field);
        let factored = match supplied {
            Some(fs) => {
                let mut out: Vec<(Poly, u32)> = Vec::new();
                for (f, e) in fs {
                    let (f, _) = f.reduce(&field).monic(&field);
                    if e == 0 || f.degree().unwrap_or(0) == 0 {
                        return Err(Error::BadFactorization(modulus.to_string()));
                    }
                    // decidable cases are checked; higher-degree rational factors are trusted
                    if let Ok(false) = d.is_irreducible(&f) { return Err(Error::BadFactorization(modulus.to_string())) }
                    if out.iter().any(|(g, _)| *g == f) {
                        return Err(Error::BadFactorization(modulus.to_string()));
                    }
                    out.push((f, e));
                }
                let product = out
                    .iter()
                    .fold(Poly::one(), |acc, (f, e)| d.mul(&acc, &d.pow(f, *e)));
                if product != modulus {
                    return Err(Error::BadFactorization(modulus.to_string()));
                }
                out.sort();
                out
            }
            None => d.factor(&modulus)?,
        };
        Ok(Arc::new(RingSpec {
            kind: RingKind::PolynomialQuotient(field, modulus),
            krull_dim: 0,
            factored_modulus: factored.into_iter().map(|(p, e)| (Repr::Poly(p), e)).collect(),
        }))
    }

    pub fn kind(&self) -> &RingKind {
        &self.kind
    }

    pub fn krull_dim(&self) -> u32 {
        self.krull_dim
    }

    pub fn factored_modulus(&self) -> &[(Repr, u32)] {
        &self.factored_modulus
    }

    pub fn is_domain(&self) -> bool {
        self.krull_dim == 1
    }

    pub fn is_artinian(&self) -> bool {
        self.krull_dim == 0
    }

    pub fn covering(&self) -> Covering {
        match &self.kind {
            RingKind::Integers | RingKind::IntegerQuotient(_) => Covering::Integers,
            RingKind::Polynomials(f) | RingKind::PolynomialQuotient(f, _) => Covering::Poly(*f),
        }
    }

    pub fn modulus(&self) -> Option<Repr> {
        match &self.kind {
            RingKind::IntegerQuotient(m) => Some(Repr::Int(m.clone())),
            RingKind::PolynomialQuotient(_, f) => Some(Repr::Poly(f.clone())),
            _ => None,
        }
    }

    /// Reduces a covering-PID value into this ring's canonical residue.
    pub fn reduce(&self, value: &Repr) -> Result<Repr> {
        with_domain!(self, |d| {
            let v = d.unwrap(value).ok_or_else(|| {
                Error::ElementSyntax(value.to_string(), format!("not an element of {self}"))
            })?;
            let v = match self.modulus() {
                Some(m) => d.rem(&v, &d.unwrap(&m).unwrap()),
                None => v,
            };
            Ok(d.wrap(v))
        })
    }

    /// Canonical height-0 or height-1 prime generated by `generator`.
    pub fn prime(&self, generator: &Repr) -> Result<PrimeSpec> {
        let not_prime = || Error::NotAPrime(generator.to_string(), self.to_string());
        with_domain!(self, |d| {
            let g = d.unwrap(generator).ok_or_else(not_prime)?;
            if d.is_zero(&g) {
                return if self.is_domain() { Ok(PrimeSpec::zero()) } else { Err(not_prime()) };
            }
            let (g, _) = d.normalize(&g);
            let repr = d.wrap(g.clone());
            if self.is_artinian() {
                if self.factored_modulus.iter().any(|(p, _)| *p == repr) {
                    Ok(PrimeSpec::generated(repr, 0))
                } else {
                    Err(not_prime())
                }
            } else {
                let irreducible = match self.covering() {
                    Covering::Integers => {
                        let f = d.factor(&g)?;
                        f.len() == 1 && f[0].1 == 1
                    }
                    Covering::Poly(field) => match generator {
                        Repr::Poly(p) => Polynomials::new(field).is_irreducible(&p.reduce(&field))?,
                        Repr::Int(_) => false,
                    },
                };
                if irreducible {
                    Ok(PrimeSpec::generated(repr, 1))
                } else {
                    Err(not_prime())
                }
            }
        })
    }

    pub fn prime_int(&self, p: i64) -> Result<PrimeSpec> {
        match self.covering() {
            Covering::Integers => self.prime(&Repr::from(p)),
            Covering::Poly(f) => self.prime(&Repr::Poly(Poly::from_ints(&f, &[p]))),
        }
    }

    pub fn zero_ideal(&self) -> Result<PrimeSpec> {
        if self.is_domain() {
            Ok(PrimeSpec::zero())
        } else {
            Err(Error::NotAPrime("0".into(), self.to_string()))
        }
    }

    /// Checks that `p` is a prime of this ring (generator kind, height, membership).
    pub fn validate_prime(&self, p: &PrimeSpec) -> Result<()> {
        match p.generator() {
            None if self.is_domain() && p.height() == 0 => Ok(()),
            None => Err(Error::NotAPrime(p.to_string(), self.to_string())),
            Some(g) if self.is_artinian() => {
                if p.height() == 0 && self.factored_modulus.iter().any(|(q, _)| q == g) {
                    Ok(())
                } else {
                    Err(Error::NotAPrime(p.to_string(), self.to_string()))
                }
            }
            Some(g) => {
                let canonical = self.prime(g)?;
                if canonical == *p {
                    Ok(())
                } else {
                    Err(Error::NotAPrime(p.to_string(), self.to_string()))
                }
            }
        }
    }

    /// Multiplicity of a generated prime in the modulus (quotient rings only).
    pub fn multiplicity(&self, p: &PrimeSpec) -> Option<u32> {
        let g = p.generator()?;
        self.factored_modulus
            .iter()
            .find(|(q, _)| q == g)
            .map(|(_, e)| *e)
    }

    /// The height-0 primes of an Artinian ring, in order.
    pub fn minimal_primes(&self) -> Vec<PrimeSpec> {
        if self.is_domain() {
            vec![PrimeSpec::zero()]
        } else {
            self.factored_modulus
                .iter()
                .map(|(p, _)| PrimeSpec::generated(p.clone(), 0))
                .collect()
        }
    }

    /// Primes of height `k`; height-1 primes of a domain come from `support_hint`.
    pub fn primes_of_height(&self, k: u32, support_hint: &[PrimeSpec]) -> Result<Vec<PrimeSpec>> {
        if k > self.krull_dim {
            return Err(Error::HeightOutOfRange(k, self.krull_dim));
        }
        if k == 0 {
            return Ok(self.minimal_primes());
        }
        let mut out: Vec<PrimeSpec> = support_hint
            .iter()
            .filter(|p| p.height() == k)
            .cloned()
            .collect();
        for p in &out {
            self.validate_prime(p)?;
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    pub fn element(self: &Arc<Self>, value: Repr) -> Result<RingElement> {
        let value = self.reduce(&value)?;
        Ok(RingElement { ring: Arc::clone(self), value })
    }

    pub fn element_int(self: &Arc<Self>, n: i64) -> Result<RingElement> {
        match self.covering() {
            Covering::Integers => self.element(Repr::from(n)),
            Covering::Poly(f) => self.element(Repr::Poly(Poly::from_ints(&f, &[n]))),
        }
    }

    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<RingElement> {
        self.element(self.parse_repr(text)?)
    }

    /// Parses an integer or polynomial literal into the covering PID.
    pub fn parse_repr(&self, text: &str) -> Result<Repr> {
        let text = text.trim();
        match self.covering() {
            Covering::Integers => text
                .parse::<BigInt>()
                .map(Repr::Int)
                .map_err(|_| Error::ElementSyntax(text.into(), "expected an integer".into())),
            Covering::Poly(f) => poly::parse_poly(text, &f)
                .map(Repr::Poly)
                .map_err(|e| Error::ElementSyntax(text.into(), e)),
        }
    }

    pub fn is_unit(&self, value: &Repr) -> bool {
        with_domain!(self, |d| {
            let Some(v) = d.unwrap(value) else { return false };
            match self.modulus() {
                None => d.is_unit(&v),
                Some(m) => d.is_unit(&d.gcd(&v, &d.unwrap(&m).unwrap())),
            }
        })
    }

    /// Whether the generated prime `p` divides `value` (for zero ideal: value is zero).
    pub fn prime_divides(&self, p: &PrimeSpec, value: &Repr) -> bool {
        with_domain!(self, |d| {
            let Some(v) = d.unwrap(value) else { return false };
            match p.generator().and_then(|g| d.unwrap(g)) {
                None => d.is_zero(&v),
                Some(g) => d.divides(&g, &v),
            }
        })
    }

    fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Polynomials(k) => write!(f, "{k}[x]"),
            RingKind::IntegerQuotient(m) => write!(f, "Z/{m}"),
            RingKind::PolynomialQuotient(k, m) => {
                write!(f, "{k}[x]/({m}")?;
                if *k == BaseField::Rationals {
                    let parts: Vec<String> = self
                        .factored_modulus
                        .iter()
                        .map(|(p, e)| if *e == 1 { format!("({p})") } else { format!("({p})^{e}") })
                        .collect();
                    write!(f, "; {}", parts.join("*"))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A prime ideal: the zero ideal of a domain or `(g)` for a normalized irreducible `g`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSpec {
    generator: Option<Repr>,
    height: u32,
}

impl PrimeSpec {
    pub fn zero() -> Self {
        PrimeSpec { generator: None, height: 0 }
    }

    pub(crate) fn generated(generator: Repr, height: u32) -> Self {
        PrimeSpec { generator: Some(generator), height }
    }

    pub fn generator(&self) -> Option<&Repr> {
        self.generator.as_ref()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generator.is_none()
    }

    pub fn height(&self) -> u32 {
        self.height
    }
}

impl fmt::Display for PrimeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generator {
            None => write!(f, "(0)"),
            Some(g) => write!(f, "({g})"),
        }
    }
}

/// An element of a catalog ring, stored as its reduced residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    value: Repr,
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Repr {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Repr::Int(n) => n.is_zero(),
            Repr::Poly(p) => p.is_zero(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

pub fn height(p: &PrimeSpec) -> u32 {
    p.height()
}

/// Multiplication by `r` is injective on `R`.
pub fn is_regular(ring: &RingSpec, r: &RingElement) -> Result<bool> {
    ring.check_same(r.ring())?;
    if ring.is_domain() {
        Ok(!r.is_zero())
    } else {
        Ok(ring.is_unit(r.value()))
    }
}

/// Factorization of a nonzero element: `r = unit * prod p^e`.
pub fn factor(ring: &Ring, r: &RingElement) -> Result<(RingElement, Vec<(PrimeSpec, u32)>)> {
    ring.check_same(r.ring())?;
    if r.is_zero() {
        return Err(Error::FactorZero);
    }
    with_domain!(ring, |d| {
        let v = d.unwrap(r.value()).unwrap();
        match ring.modulus() {
            None => {
                let fs = d.factor(&v)?;
                let product = fs.iter().fold(d.one(), |acc, (p, e)| d.mul(&acc, &d.pow(p, *e)));
                let unit = d.div_rem(&v, &product).0;
                let primes = fs
                    .into_iter()
                    .map(|(p, e)| (PrimeSpec::generated(d.wrap(p), 1), e))
                    .collect();
                Ok((ring.element(d.wrap(unit))?, primes))
            }
            Some(m) => {
                let m = d.unwrap(&m).unwrap();
                // per local factor p^E: v = p^a * w with w a unit there (w = 1 if v vanishes)
                let mut locals = Vec::new();
                for (p, big_e) in &ring.factored_modulus {
                    let p = d.unwrap(p).unwrap();
                    let pe = d.pow(&p, *big_e);
                    let local = d.rem(&v, &pe);
                    let (a, w) = if d.is_zero(&local) {
                        (*big_e, d.one())
                    } else {
                        let a = d.valuation(&p, &local);
                        (a, d.div_rem(&local, &d.pow(&p, a)).0)
                    };
                    locals.push((p, pe, a, w));
                }
                let primes: Vec<(PrimeSpec, u32)> = locals
                    .iter()
                    .filter(|l| l.2 > 0)
                    .map(|(p, _, a, _)| (PrimeSpec::generated(d.wrap(p.clone()), 0), *a))
                    .collect();
                // the unit is w divided by the other primes' powers, locally; glue by CRT
                let mut unit = d.zero();
                let mut modulus_so_far = d.one();
                for (j, (_, pe, _, w)) in locals.iter().enumerate() {
                    let others = locals
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != j)
                        .fold(d.one(), |acc, (_, (q, _, b, _))| d.mul(&acc, &d.pow(q, *b)));
                    let (_, inv, _) = d.xgcd(&others, pe);
                    let w = d.rem(&d.mul(w, &inv), pe);
                    let (_, s, t) = d.xgcd(&modulus_so_far, pe);
                    unit = d.add(
                        &d.mul(&d.mul(&unit, &t), pe),
                        &d.mul(&d.mul(&w, &s), &modulus_so_far),
                    );
                    modulus_so_far = d.mul(&modulus_so_far, pe);
                    unit = d.rem(&unit, &modulus_so_far);
                }
                debug_assert!(d.is_unit(&d.gcd(&unit, &m)));
                Ok((ring.element(d.wrap(unit))?, primes))
            }
        }
    })
}

/// Parses a ring descriptor: `Z`, `Z/m`, `Q[x]`, `Fp[x]`, `Fp[x]/(f)`, `Q[x]/(f; factors)`.
pub fn parse_ring(text: &str) -> Result<Ring> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::RingDescriptor(text.trim().to_string(), why.to_string());
    if t == "Z" {
        return Ok(RingSpec::integers());
    }
    if let Some(m) = t.strip_prefix("Z/") {
        let m: BigInt = m.parse().map_err(|_| bad("modulus must be an integer"))?;
        return RingSpec::integer_quotient_big(m);
    }
    let (field, rest) = if let Some(rest) = t.strip_prefix("Q[x]") {
        (BaseField::Rationals, rest)
    } else if let Some(after_f) = t.strip_prefix('F') {
        let end = after_f.find("[x]").ok_or_else(|| bad("expected F<p>[x]"))?;
        let p: u64 = after_f[..end].parse().map_err(|_| bad("bad characteristic"))?;
        if !field::is_prime_u64(p) {
            return Err(bad("characteristic must be prime"));
        }
        (BaseField::Prime(p), &after_f[end + 3..])
    } else {
        return Err(bad("unknown ring"));
    };
    if rest.is_empty() {
        return RingSpec::polynomials(field);
    }
    let inner = rest
        .strip_prefix("/(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| bad("expected /(<poly>) after the polynomial ring"))?;
    let (poly_text, factored) = match inner.split_once(';') {
        Some((p, f)) => (p, Some(f)),
        None => (inner, None),
    };
    let modulus = poly::parse_poly(poly_text, &field).map_err(|e| bad(&e))?;
    let supplied = factored
        .map(|f| parse_factored(f, &field).map_err(|e| bad(&e)))
        .transpose()?;
    if field == BaseField::Rationals && supplied.is_none() && modulus.degree().unwrap_or(0) > 1 {
        return Err(bad("a rational modulus of degree above 1 needs a supplied factorization"));
    }
    RingSpec::polynomial_quotient(field, modulus, supplied)
}

/// Parses `(x-1)^2*(x+1)` style factor lists.
fn parse_factored(text: &str, field: &BaseField) -> std::result::Result<Vec<(Poly, u32)>, String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let chars: Vec<char> = text.chars().collect();
    let mut pieces = Vec::new();
    for (i, c) in chars.iter().enumerate() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            '*' if depth == 0 => {
                pieces.push(chars[start..i].iter().collect::<String>());
                start = i + 1;
            }
            _ => {}
        }
    }
    pieces.push(chars[start..].iter().collect::<String>());
    for piece in pieces {
        if let Some(body) = piece.strip_prefix('(') {
            let close = body.rfind(')').ok_or("unbalanced factor")?;
            let p = poly::parse_poly(&body[..close], field)?;
            let tail = &body[close + 1..];
            let e = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or("expected ^ after factor")?
                    .parse()
                    .map_err(|_| "bad factor exponent")?
            };
            out.push((p, e));
        } else {
            out.push((poly::parse_poly(&piece, field)?, 1));
        }
    }
    Ok(out)
}

impl RingSpec {
    /// A fixed height-1 prime usable as a refutation witness (`2` or `x`).
    pub fn some_height_one_prime(&self) -> Option<PrimeSpec> {
        if !self.is_domain() {
            return None;
        }
        let g = match self.covering() {
            Covering::Integers => Repr::from(2),
            Covering::Poly(_) => Repr::Poly(Poly::x()),
        };
        Some(PrimeSpec::generated(g, 1))
    }

    /// Height-1 primes in canonical order, for enumeration (smallest first).
    pub fn small_height_one_primes(&self, count: usize) -> Vec<PrimeSpec> {
        if !self.is_domain() {
            return Vec::new();
        }
        let mut out = Vec::new();
        match self.covering() {
            Covering::Integers => {
                let mut n = 2u64;
                while out.len() < count {
                    if field::is_prime_u64(n) {
                        out.push(PrimeSpec::generated(Repr::Int(BigInt::from(n)), 1));
                    }
                    n += 1;
                }
            }
            Covering::Poly(f) => {
                let d = Polynomials::new(f);
                match f {
                    BaseField::Prime(_) => {
                        let mut deg = 1;
                        while out.len() < count {
                            for m in Poly::monics_of_degree(&f, deg) {
                                if out.len() < count && d.is_irreducible(&m).unwrap_or(false) {
                                    out.push(PrimeSpec::generated(Repr::Poly(m), 1));
                                }
                            }
                            deg += 1;
                        }
                    }
                    BaseField::Rationals => {
                        let mut c = 0i64;
                        while out.len() < count {
                            out.push(PrimeSpec::generated(Repr::Poly(Poly::from_ints(&f, &[c, 1])), 1));
                            c = if c <= 0 { -c + 1 } else { -c };
                        }
                        out.sort();
                    }
                }
            }
        }
        out
    }
}

impl Repr {
    pub fn is_negative_int(&self) -> bool {
        matches!(self, Repr::Int(n) if n.is_negative())
    }

    pub fn one_like(&self) -> Repr {
        match self {
            Repr::Int(_) => Repr::Int(BigInt::one()),
            Repr::Poly(_) => Repr::Poly(Poly::one()),
        }
    }
}
