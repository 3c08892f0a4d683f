//! Tame modules: finite direct sums of catalog atoms in a unique normal form.
//!
//! Over the catalog rings two tame modules are isomorphic exactly when their
//! atom multisets agree, so the sorted multiset doubles as the isomorphism
//! invariant.

pub mod morphism;
pub mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Covering, PrimeSpec, Ring, RingSpec};

/// Indecomposable building block of a tame module.
///
/// Variant order is the normal-form order: free, fraction field, cyclic
/// (by prime then exponent), Prüfer (by prime), then the wildcard.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// One copy of `R`.
    Free,
    /// The field of fractions `K = E(R/(0))` of a domain.
    FractionField,
    /// `R/P^e` for a generated prime `P`.
    Cyclic(PrimeSpec, u32),
    /// `E(R/P)` for a height-1 prime of a domain.
    Prufer(PrimeSpec),
    /// `⊕ E(R/P)` over every height-1 prime of a domain (`K/R`).
    OmniPrufer,
}

impl Atom {
    /// The prime an atom is concentrated at, if there is exactly one.
    pub fn prime(&self) -> Option<&PrimeSpec> {
        match self {
            Atom::Cyclic(p, _) | Atom::Prufer(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, Atom::Cyclic(..))
    }

    /// Whether the atom is injective over `ring`.
    pub fn is_injective(&self, ring: &RingSpec) -> bool {
        match self {
            Atom::FractionField | Atom::Prufer(_) | Atom::OmniPrufer => true,
            Atom::Cyclic(p, e) => ring.is_artinian() && ring.multiplicity(p) == Some(*e),
            Atom::Free => false,
        }
    }

    pub fn render(&self, ring: &RingSpec) -> String {
        match self {
            Atom::Free => "R".into(),
            Atom::FractionField => fraction_symbol(ring).into(),
            Atom::Cyclic(p, e) => format!("C({},{e})", gen_text(p)),
            Atom::Prufer(p) => format!("Pr({})", gen_text(p)),
            Atom::OmniPrufer => "Omega1".into(),
        }
    }
}

fn gen_text(p: &PrimeSpec) -> String {
    p.generator().map(|g| g.to_string()).unwrap_or_else(|| "0".into())
}

/// `Q` over the integers, `K` over polynomial rings.
pub fn fraction_symbol(ring: &RingSpec) -> &'static str {
    match ring.covering() {
        Covering::Integers => "Q",
        Covering::Poly(_) => "K",
    }
}

/// Checks an atom against the ring and expands it into normal-form atoms.
///
/// Over Artinian rings `R` itself is not an atom of the normal form: it is
/// replaced by its local factors `⊕ R/P^E`.
pub fn validate_atom(ring: &Ring, atom: &Atom) -> Result<Vec<Atom>> {
    let illegal = |why: &str| Error::IllegalAtom(atom.render(ring), ring.to_string(), why.into());
    match atom {
        Atom::Free => {
            if ring.is_artinian() {
                Ok(ring
                    .minimal_primes()
                    .into_iter()
                    .map(|p| {
                        let e = ring.multiplicity(&p).expect("factored prime");
                        Atom::Cyclic(p, e)
                    })
                    .collect())
            } else {
                Ok(vec![Atom::Free])
            }
        }
        Atom::FractionField | Atom::OmniPrufer => {
            if ring.is_domain() {
                Ok(vec![atom.clone()])
            } else {
                Err(illegal("only defined over domains"))
            }
        }
        Atom::Prufer(p) => {
            if !ring.is_domain() {
                return Err(illegal("only defined over domains"));
            }
            ring.validate_prime(p)?;
            if p.is_zero_ideal() {
                return Err(illegal("Prüfer atoms need a height-one prime"));
            }
            Ok(vec![atom.clone()])
        }
        Atom::Cyclic(p, e) => {
            ring.validate_prime(p)?;
            if p.is_zero_ideal() {
                return Err(illegal("cyclic atoms need a nonzero prime"));
            }
            if *e == 0 {
                return Err(illegal("exponent must be positive"));
            }
            if let Some(big_e) = ring.multiplicity(p) {
                if *e > big_e {
                    return Err(illegal(&format!(
                        "exponent {e} exceeds the multiplicity {big_e} of {p} in the modulus"
                    )));
                }
            }
            Ok(vec![atom.clone()])
        }
    }
}

/// A finite direct sum of atoms over one ring, in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TameModule {
    ring: Ring,
    atoms: BTreeMap<Atom, u64>,
}

impl TameModule {
    pub fn zero(ring: &Ring) -> Self {
        TameModule { ring: Ring::clone(ring), atoms: BTreeMap::new() }
    }

    /// A single atom with multiplicity one.
    pub fn atom(ring: &Ring, atom: Atom) -> Result<Self> {
        normalize(ring, &[atom])
    }

    pub fn from_counts(ring: &Ring, counts: impl IntoIterator<Item = (Atom, u64)>) -> Result<Self> {
        let mut m = TameModule::zero(ring);
        for (a, k) in counts {
            if k == 0 {
                continue;
            }
            for b in validate_atom(ring, &a)? {
                *m.atoms.entry(b).or_insert(0) += k;
            }
        }
        Ok(m)
    }

    /// Builds from atoms already known to be valid normal-form atoms.
    pub(crate) fn from_trusted(ring: &Ring, counts: impl IntoIterator<Item = (Atom, u64)>) -> Self {
        let mut m = TameModule::zero(ring);
        for (a, k) in counts {
            if k > 0 {
                *m.atoms.entry(a).or_insert(0) += k;
            }
        }
        m
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&Atom, u64)> {
        self.atoms.iter().map(|(a, k)| (a, *k))
    }

    pub fn multiplicity(&self, atom: &Atom) -> u64 {
        self.atoms.get(atom).copied().unwrap_or(0)
    }

    /// Total number of atom instances.
    pub fn rank(&self) -> u64 {
        self.atoms.values().sum()
    }

    /// Atom instances in normal-form order, one entry per copy.
    pub fn instances(&self) -> Vec<Atom> {
        self.atoms
            .iter()
            .flat_map(|(a, k)| std::iter::repeat_n(a.clone(), *k as usize))
            .collect()
    }

    pub fn check_same_ring(&self, other: &TameModule) -> Result<()> {
        same_ring(&self.ring, &other.ring)
    }

    pub fn direct_sum(&self, other: &TameModule) -> Result<TameModule> {
        self.check_same_ring(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &TameModule) -> TameModule {
        let mut out = self.clone();
        for (a, k) in &other.atoms {
            *out.atoms.entry(a.clone()).or_insert(0) += k;
        }
        out
    }

    pub fn power(&self, k: u64) -> TameModule {
        TameModule::from_trusted(&self.ring, self.atoms.iter().map(|(a, m)| (a.clone(), m * k)))
    }

    /// Keeps the atoms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Atom) -> bool) -> TameModule {
        TameModule::from_trusted(
            &self.ring,
            self.atoms.iter().filter(|(a, _)| keep(a)).map(|(a, k)| (a.clone(), *k)),
        )
    }

    /// Removes a summand given as a sub-multiset; `None` if it is not one.
    pub fn complement(&self, summand: &TameModule) -> Option<TameModule> {
        let mut out = self.atoms.clone();
        for (a, k) in &summand.atoms {
            let have = out.get_mut(a)?;
            if *have < *k {
                return None;
            }
            *have -= k;
            if *have == 0 {
                out.remove(a);
            }
        }
        Some(TameModule { ring: Ring::clone(&self.ring), atoms: out })
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for TameModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .atoms
            .iter()
            .map(|(a, k)| {
                let s = a.render(&self.ring);
                if *k == 1 { s } else { format!("{s}^{k}") }
            })
            .collect();
        write!(f, "{}", parts.join(" (+) "))
    }
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> Result<()> {
    if Ring::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.to_string(), b.to_string()))
    }
}

/// Sorts and merges a raw atom list into normal form.
pub fn normalize(ring: &Ring, raw: &[Atom]) -> Result<TameModule> {
    TameModule::from_counts(ring, raw.iter().map(|a| (a.clone(), 1)))
}

pub fn is_isomorphic(m: &TameModule, n: &TameModule) -> Result<bool> {
    m.check_same_ring(n)?;
    Ok(m.atoms == n.atoms)
}

/// The `P`-power torsion submodule `Γ_P(M)`.
pub fn gamma(p: &PrimeSpec, m: &TameModule) -> Result<TameModule> {
    m.ring.validate_prime(p)?;
    if p.is_zero_ideal() {
        return Ok(m.clone());
    }
    let mut out = BTreeMap::new();
    for (a, k) in &m.atoms {
        match a {
            Atom::Cyclic(q, _) | Atom::Prufer(q) if q == p => {
                *out.entry(a.clone()).or_insert(0) += k;
            }
            Atom::OmniPrufer => {
                *out.entry(Atom::Prufer(p.clone())).or_insert(0) += k;
            }
            _ => {}
        }
    }
    Ok(TameModule { ring: Ring::clone(&m.ring), atoms: out })
}

/// Property `t(P)`: elements outside `P` act invertibly and every element is
/// killed by a power of `P`.
pub fn has_property_t(m: &TameModule, p: &PrimeSpec) -> Result<bool> {
    m.ring.validate_prime(p)?;
    Ok(m.atoms.keys().all(|a| atom_has_property_t(a, p)))
}

pub(crate) fn atom_has_property_t(a: &Atom, p: &PrimeSpec) -> bool {
    match a {
        Atom::FractionField => p.is_zero_ideal(),
        Atom::Cyclic(q, _) | Atom::Prufer(q) => q == p,
        Atom::Free | Atom::OmniPrufer => false,
    }
}

/// Finite support: primes of the cyclic and Prüfer atoms, plus `(0)` when a
/// free or fraction-field atom occurs. The wildcard contributes no listed prime.
pub fn support(m: &TameModule) -> BTreeSet<PrimeSpec> {
    let mut out = BTreeSet::new();
    for a in m.atoms.keys() {
        match a {
            Atom::Free | Atom::FractionField => {
                out.insert(PrimeSpec::zero());
            }
            Atom::Cyclic(p, _) | Atom::Prufer(p) => {
                out.insert(p.clone());
            }
            Atom::OmniPrufer => {}
        }
    }
    out
}
