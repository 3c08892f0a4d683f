//! Finite presentations and their classification back into atoms.

use std::collections::BTreeMap;

use super::matrix::{smith_normal_form, Matrix};
use crate::error::{Error, Result};
use crate::module::{Atom, TameModule};
use crate::ring::{EuclideanDomain, Repr, Ring};

/// `R^generators / (row space of relations)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: Ring,
    generators: usize,
    relations: Vec<Vec<Repr>>,
    /// Irreducibles usable when the ring cannot factor on its own (`Q[x]`).
    hints: Vec<Repr>,
}

impl Presentation {
    pub fn new(ring: &Ring, generators: usize, relations: Vec<Vec<Repr>>) -> Result<Self> {
        let mut reduced = Vec::with_capacity(relations.len());
        for row in relations {
            if row.len() != generators {
                return Err(Error::Precondition(format!(
                    "relation of length {} for {generators} generators",
                    row.len()
                )));
            }
            reduced.push(row.iter().map(|x| ring.reduce(x)).collect::<Result<Vec<_>>>()?);
        }
        Ok(Presentation { ring: ring.clone(), generators, relations: reduced, hints: Vec::new() })
    }

    /// `R/(d)`.
    pub fn cyclic(ring: &Ring, d: Repr) -> Result<Self> {
        Presentation::new(ring, 1, vec![vec![d]])
    }

    /// Presentation of a finitely generated tame module (free and cyclic atoms only).
    pub fn from_module(m: &TameModule) -> Result<Self> {
        let ring = m.ring();
        let atoms = m.instances();
        let n = atoms.len();
        let zero = ring.reduce(&Repr::from(0).cast_like(ring))?;
        let mut relations = Vec::new();
        let mut hints = Vec::new();
        for (i, a) in atoms.iter().enumerate() {
            match a {
                Atom::Free => {}
                Atom::Cyclic(p, e) => {
                    let g = p.generator().expect("cyclic atoms have generated primes");
                    hints.push(g.clone());
                    let pe = crate::with_domain!(ring, |d| d.wrap(d.pow(&d.unwrap(g).unwrap(), *e)));
                    let mut row = vec![zero.clone(); n];
                    row[i] = pe;
                    relations.push(row);
                }
                other => {
                    return Err(Error::OracleUnsupported(format!(
                        "{} is not finitely generated",
                        other.render(ring)
                    )))
                }
            }
        }
        let mut p = Presentation::new(ring, n, relations)?;
        p.hints = hints;
        Ok(p)
    }

    pub fn with_hints(mut self, hints: Vec<Repr>) -> Self {
        self.hints = hints;
        self
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &[Vec<Repr>] {
        &self.relations
    }

    pub fn hints(&self) -> &[Repr] {
        &self.hints
    }

    /// Relation matrix over the covering PID, with `m * I` appended over `D/(m)`.
    pub(crate) fn lifted<D: EuclideanDomain>(&self, d: &D) -> Matrix<D::Elem> {
        let rows: Vec<Vec<D::Elem>> = self
            .relations
            .iter()
            .map(|r| r.iter().map(|x| d.unwrap(x).expect("reduced entry")).collect())
            .collect();
        let base = Matrix::from_rows(self.generators, rows);
        match modulus_of(d, &self.ring) {
            Some(m) => base.stack(&scaled_identity(d, self.generators, &m)),
            None => base,
        }
    }

    /// Normal form of the presented module.
    pub fn classify(&self) -> Result<TameModule> {
        crate::with_domain!(self.ring, |d| {
            let a = self.lifted(&d);
            let s = smith_normal_form(&d, &a);
            let mut factors = s.invariant_factors();
            factors.truncate(s.rank);
            factors.extend(std::iter::repeat_n(d.zero(), self.generators - s.rank));
            classify_factors(&d, &self.ring, &factors, &self.hints)
        })
    }
}

impl Repr {
    /// The value `self` (an integer constant) in the covering PID of `ring`.
    pub(crate) fn cast_like(&self, ring: &Ring) -> Repr {
        match (self, ring.covering()) {
            (Repr::Int(n), crate::ring::Covering::Poly(f)) => {
                let c = num_rational::BigRational::from_integer(n.clone());
                Repr::Poly(crate::ring::Poly::constant(c).reduce(&f))
            }
            _ => self.clone(),
        }
    }
}

pub(crate) fn modulus_of<D: EuclideanDomain>(d: &D, ring: &Ring) -> Option<D::Elem> {
    ring.modulus().map(|m| d.unwrap(&m).expect("modulus in covering domain"))
}

pub(crate) fn scaled_identity<D: EuclideanDomain>(d: &D, n: usize, c: &D::Elem) -> Matrix<D::Elem> {
    let mut m = Matrix::zeros(d, n, n);
    for i in 0..n {
        m.set(i, i, c.clone());
    }
    m
}

/// Factors `a` into canonical irreducibles of the covering PID.
pub(crate) fn factor_in<D: EuclideanDomain>(
    d: &D,
    ring: &Ring,
    a: &D::Elem,
    hints: &[Repr],
) -> Result<Vec<(D::Elem, u32)>> {
    let modulus_primes: Vec<D::Elem> =
        ring.factored_modulus().iter().filter_map(|(p, _)| d.unwrap(p)).collect();
    if ring.is_artinian() {
        return d.factor_with_hints(a, &modulus_primes);
    }
    match d.factor(a) {
        Ok(f) => Ok(f),
        Err(Error::Unfactorable(_)) => {
            let hs: Vec<D::Elem> = hints.iter().filter_map(|h| d.unwrap(h)).collect();
            d.factor_with_hints(a, &hs)
        }
        Err(e) => Err(e),
    }
}

/// Turns invariant factors over the covering PID into a tame module of `ring`.
pub(crate) fn classify_factors<D: EuclideanDomain>(
    d: &D,
    ring: &Ring,
    factors: &[D::Elem],
    hints: &[Repr],
) -> Result<TameModule> {
    let mut counts: BTreeMap<Atom, u64> = BTreeMap::new();
    for f in factors {
        if d.is_zero(f) {
            if ring.is_artinian() {
                return Err(Error::OutsideTameClass("free summand over the covering ring".into()));
            }
            *counts.entry(Atom::Free).or_default() += 1;
            continue;
        }
        if d.is_unit(f) {
            continue;
        }
        let parts = factor_in(d, ring, f, hints)
            .map_err(|e| Error::OutsideTameClass(format!("invariant factor {f}: {e}")))?;
        for (p, e) in parts {
            let prime = ring.prime(&d.wrap(p))?;
            if let Some(top) = ring.multiplicity(&prime) {
                if e > top {
                    return Err(Error::OutsideTameClass(format!(
                        "exponent {e} exceeds {top} at {prime}"
                    )));
                }
            }
            *counts.entry(Atom::Cyclic(prime, e)).or_default() += 1;
        }
    }
    TameModule::from_counts(ring, counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::syntax::parse_module;
    use crate::ring::parse_ring;

    #[test]
    fn presentation_round_trip() {
        for (r, m) in [("Z", "R (+) C(2,3) (+) C(3,1)^2"), ("F2[x]", "C(x,2) (+) C(x^2+x+1,1)"), ("Z/12", "C(2,1) (+) C(3,1)")] {
            let ring = parse_ring(r).unwrap();
            let module = parse_module(&ring, m).unwrap();
            let p = Presentation::from_module(&module).unwrap();
            assert_eq!(p.classify().unwrap(), module, "{r}: {m}");
        }
    }

    #[test]
    fn combined_relations() {
        let z = parse_ring("Z").unwrap();
        // Z^2 / <(2,4), (6,6)>: SNF diag(2,6) -> C(2,1) + C(2,1) + C(3,1)
        let p = Presentation::new(&z, 2, vec![vec![2.into(), 4.into()], vec![6.into(), 6.into()]]).unwrap();
        assert_eq!(p.classify().unwrap(), parse_module(&z, "C(2,1)^2 (+) C(3,1)").unwrap());
    }

    #[test]
    fn free_over_quotient_is_expanded() {
        let r = parse_ring("Z/12").unwrap();
        let p = Presentation::new(&r, 1, vec![]).unwrap();
        assert_eq!(p.classify().unwrap(), parse_module(&r, "C(2,2) (+) C(3,1)").unwrap());
    }

    #[test]
    fn rejects_non_fg_atoms() {
        let z = parse_ring("Z").unwrap();
        let m = parse_module(&z, "Pr(2)").unwrap();
        assert!(Presentation::from_module(&m).is_err());
    }
}
