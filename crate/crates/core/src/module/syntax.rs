//! Textual atom syntax: `R`, `Q`/`K`, `C(p,e)`, `Z/n`, `Pr(p)`, `Omega1`,
//! `^k` multiplicities and `(+)` direct sums.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::{Atom, TameModule};
use crate::error::{Error, Result};
use crate::ring::{Covering, Integers, EuclideanDomain, Repr, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomLit {
    Zero,
    Free,
    /// `Q` or `K`; the letter is kept for faithful rendering.
    Fraction(char),
    Cyclic { generator: String, exponent: u32 },
    Prufer { generator: String },
    /// `Z/n`, the cyclic module `R/(n)` over integer rings.
    Quotient(BigInt),
    Omni,
}

impl fmt::Display for AtomLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomLit::Zero => write!(f, "0"),
            AtomLit::Free => write!(f, "R"),
            AtomLit::Fraction(c) => write!(f, "{c}"),
            AtomLit::Cyclic { generator, exponent } => write!(f, "C({generator},{exponent})"),
            AtomLit::Prufer { generator } => write!(f, "Pr({generator})"),
            AtomLit::Quotient(n) => write!(f, "Z/{n}"),
            AtomLit::Omni => write!(f, "Omega1"),
        }
    }
}

/// Unevaluated module expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MExpr {
    Atom(AtomLit),
    Name(String),
    Power(Box<MExpr>, u64),
    Sum(Vec<MExpr>),
}

impl fmt::Display for MExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MExpr::Atom(a) => write!(f, "{a}"),
            MExpr::Name(n) => write!(f, "{n}"),
            MExpr::Power(e, k) => write!(f, "{e}^{k}"),
            MExpr::Sum(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" (+) "))
            }
        }
    }
}

const RESERVED: &[&str] = &["R", "Q", "K", "Omega1", "C", "Pr", "Z"];

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&s)
}

/// Character cursor with column tracking, shared with the command parser.
#[derive(Clone, Debug)]
pub struct Cursor<'a> {
    chars: Vec<char>,
    pub pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    pub fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, _src: src }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos + 1, msg: msg.into() }
    }

    pub fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    pub fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub fn starts_with(&self, s: &str) -> bool {
        let n = s.chars().count();
        self.pos + n <= self.chars.len() && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars())
    }

    pub fn eat(&mut self, s: &str) -> bool {
        if self.starts_with(s) {
            self.pos += s.chars().count();
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected '{s}'")))
        }
    }

    /// Next whitespace-delimited word (does not consume trailing space).
    pub fn word(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && !self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub fn identifier(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.error("expected a nonnegative integer"));
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    /// Raw text up to (not including) one of `stops` at parenthesis depth zero.
    pub fn raw_until(&mut self, stops: &[char]) -> Result<String> {
        let start = self.pos;
        let mut depth = 0i32;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if depth == 0 && stops.contains(&c) {
                let s: String = self.chars[start..self.pos].iter().collect();
                return Ok(s.trim().to_string());
            }
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.error(format!("unterminated literal, expected one of {stops:?}")))
    }

    pub fn rest(&mut self) -> String {
        let s: String = self.chars[self.pos..].iter().collect();
        self.pos = self.chars.len();
        s.trim().to_string()
    }
}

/// Parses one module expression starting at the cursor.
pub fn parse_mexpr(cur: &mut Cursor<'_>) -> Result<MExpr> {
    let mut terms = vec![parse_term(cur)?];
    loop {
        let save = cur.pos;
        cur.skip_ws();
        if cur.eat("(+)") {
            cur.skip_ws();
            terms.push(parse_term(cur)?);
        } else {
            cur.pos = save;
            break;
        }
    }
    Ok(if terms.len() == 1 { terms.pop().unwrap() } else { MExpr::Sum(terms) })
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<MExpr> {
    cur.skip_ws();
    let prim = parse_primary(cur)?;
    if cur.eat("^") {
        let k = cur.unsigned()?;
        Ok(MExpr::Power(Box::new(prim), k))
    } else {
        Ok(prim)
    }
}

fn parse_primary(cur: &mut Cursor<'_>) -> Result<MExpr> {
    if cur.eat("C(") {
        let generator = cur.raw_until(&[','])?;
        cur.expect(",")?;
        cur.skip_ws();
        let exponent = cur.unsigned()? as u32;
        cur.skip_ws();
        cur.expect(")")?;
        return Ok(MExpr::Atom(AtomLit::Cyclic { generator, exponent }));
    }
    if cur.eat("Pr(") {
        let generator = cur.raw_until(&[')'])?;
        cur.expect(")")?;
        return Ok(MExpr::Atom(AtomLit::Prufer { generator }));
    }
    if cur.eat("Z/") {
        let n = cur.unsigned()?;
        return Ok(MExpr::Atom(AtomLit::Quotient(BigInt::from(n))));
    }
    if cur.peek() == Some('0') {
        cur.pos += 1;
        return Ok(MExpr::Atom(AtomLit::Zero));
    }
    let start = cur.pos;
    let Some(word) = cur.identifier() else {
        return Err(cur.error("expected a module atom or name"));
    };
    match word.as_str() {
        "R" => Ok(MExpr::Atom(AtomLit::Free)),
        "Q" => Ok(MExpr::Atom(AtomLit::Fraction('Q'))),
        "K" => Ok(MExpr::Atom(AtomLit::Fraction('K'))),
        "Omega1" => Ok(MExpr::Atom(AtomLit::Omni)),
        w if is_identifier(w) => Ok(MExpr::Name(word)),
        _ => {
            cur.pos = start;
            Err(cur.error(format!("'{word}' is not an atom or a name")))
        }
    }
}

/// Parses a complete module expression (no trailing input).
pub fn parse_mexpr_str(text: &str) -> Result<MExpr> {
    let mut cur = Cursor::new(text);
    let e = parse_mexpr(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Resolves an atom literal over `ring`.
pub fn evaluate_atom(ring: &Ring, lit: &AtomLit) -> Result<TameModule> {
    let prime_of = |g: &str| -> Result<_> {
        let repr = ring.parse_repr(g)?;
        ring.prime(&repr)
    };
    match lit {
        AtomLit::Zero => Ok(TameModule::zero(ring)),
        AtomLit::Free => TameModule::atom(ring, Atom::Free),
        AtomLit::Fraction(_) => TameModule::atom(ring, Atom::FractionField),
        AtomLit::Omni => TameModule::atom(ring, Atom::OmniPrufer),
        AtomLit::Cyclic { generator, exponent } => {
            TameModule::atom(ring, Atom::Cyclic(prime_of(generator)?, *exponent))
        }
        AtomLit::Prufer { generator } => TameModule::atom(ring, Atom::Prufer(prime_of(generator)?)),
        AtomLit::Quotient(n) => {
            if ring.covering() != Covering::Integers {
                return Err(Error::IllegalAtom(
                    lit.to_string(),
                    ring.to_string(),
                    "Z/n needs an integer ring; use C(p,e)".into(),
                ));
            }
            // R/(n): over Z/m this is Z/gcd(n, m)
            let n = match ring.modulus() {
                Some(Repr::Int(m)) => Integers.gcd(n, &m),
                _ => n.abs(),
            };
            if n.is_zero() {
                return TameModule::atom(ring, Atom::Free);
            }
            let mut out = TameModule::zero(ring);
            for (p, e) in Integers.factor(&n)? {
                let atom = Atom::Cyclic(ring.prime(&Repr::Int(p))?, e);
                out = out.sum_unchecked(&TameModule::atom(ring, atom)?);
            }
            Ok(out)
        }
    }
}

/// Evaluates an expression, resolving names through `env`.
pub fn evaluate(
    ring: &Ring,
    expr: &MExpr,
    env: &dyn Fn(&str) -> Option<TameModule>,
) -> Result<TameModule> {
    match expr {
        MExpr::Atom(a) => evaluate_atom(ring, a),
        MExpr::Name(n) => {
            let m = env(n).ok_or_else(|| Error::UndefinedName(n.clone()))?;
            super::same_ring(ring, m.ring())?;
            Ok(m)
        }
        MExpr::Power(e, k) => Ok(evaluate(ring, e, env)?.power(*k)),
        MExpr::Sum(parts) => {
            let mut acc = TameModule::zero(ring);
            for p in parts {
                acc = acc.direct_sum(&evaluate(ring, p, env)?)?;
            }
            Ok(acc)
        }
    }
}

/// Parses and evaluates a closed expression (no names).
pub fn parse_module(ring: &Ring, text: &str) -> Result<TameModule> {
    evaluate(ring, &parse_mexpr_str(text)?, &|_| None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::parse_ring;

    #[test]
    fn parse_examples() {
        let e = parse_mexpr_str("Q^2 (+) Pr(2)").unwrap();
        assert_eq!(
            e,
            MExpr::Sum(vec![
                MExpr::Power(Box::new(MExpr::Atom(AtomLit::Fraction('Q'))), 2),
                MExpr::Atom(AtomLit::Prufer { generator: "2".into() }),
            ])
        );
        assert_eq!(e.to_string(), "Q^2 (+) Pr(2)");
        assert!(matches!(parse_mexpr_str("Pr(2"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_mexpr_str("Q (+)"), Err(Error::Syntax { .. })));
        assert!(parse_mexpr_str("C(x^2+x+1, 3)").is_ok());
    }

    #[test]
    fn evaluate_examples() {
        let z = parse_ring("Z").unwrap();
        assert_eq!(parse_module(&z, "Pr(3) (+) Q (+) Pr(3)").unwrap().to_string(), "Q (+) Pr(3)^2");
        assert_eq!(parse_module(&z, "Z/12").unwrap().to_string(), "C(2,2) (+) C(3,1)");
        assert_eq!(parse_module(&z, "0").unwrap().to_string(), "0");
        let z12 = parse_ring("Z/12").unwrap();
        assert_eq!(parse_module(&z12, "Z/8").unwrap().to_string(), "C(2,2)");
        assert_eq!(parse_module(&z12, "R").unwrap().to_string(), "C(2,2) (+) C(3,1)");
        assert!(parse_module(&z12, "Q").is_err());
        let f2 = parse_ring("F2[x]").unwrap();
        assert_eq!(parse_module(&f2, "Pr(x^2+x+1) (+) K").unwrap().to_string(), "K (+) Pr(x^2+x+1)");
        assert!(parse_module(&f2, "Z/4").is_err());
        assert!(matches!(parse_module(&z, "G"), Err(Error::UndefinedName(_))));
    }
}
