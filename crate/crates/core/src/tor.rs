//! Closed-form tensor products, Tor, injective hulls and cosyzygies.
//!
//! Prüfer and fraction-field atoms are not finitely presented, so nothing here
//! builds resolutions. Each operation is a table over pairs of atoms extended
//! bilinearly; [`crate::oracle`] checks the tables against explicit
//! resolutions and direct limits.

use std::fmt;

use crate::error::{Error, Result};
use crate::module::{Atom, TameModule};
use crate::ring::{Ring, RingSpec};

/// Rows of the atom table that the oracle can witness independently.
///
/// Used for fault injection: a [`TorTable`] built with a fault answers the
/// named row incorrectly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableRow {
    /// `R ⊗ X = X`.
    FreeTensor,
    /// `Tor_k(R, X) = 0` for `k >= 1`.
    FreeTor,
    /// `K ⊗ C(p,e) = 0`.
    FractionCyclicTensor,
    /// `Tor_k(K, C(p,e)) = 0` for `k >= 1`.
    FractionCyclicTor,
    /// `C(p,e) ⊗ C(p,f) = C(p, min(e,f))` over a domain.
    CyclicTensor,
    /// `C(p,e) ⊗ C(q,f) = 0` for `p != q` over a domain.
    CrossPrimeTensor,
    /// `Tor_1(C(p,e), C(p,f)) = C(p, min(e,f))` over a domain.
    CyclicTor1,
    /// `Tor_1(C(p,e), C(q,f)) = 0` for `p != q` over a domain.
    CrossPrimeTor1,
    /// `Tor_k = 0` for `k >= 2` over a domain.
    HighTorVanishing,
    /// `Pr(p) ⊗ C(q,f) = 0`.
    PruferCyclicTensor,
    /// `Tor_1(Pr(p), C(q,f)) = C(p,f)` if `p = q`, else 0.
    PruferCyclicTor1,
    /// `C(p,e) ⊗ C(p,f) = C(p, min(e,f))` over an Artinian ring.
    ArtinianTensor,
    /// `Tor_k(C(p,e), C(p,f)) = C(p, min(e, f, E-e, E-f))` for `k >= 1`.
    ArtinianTor,
    /// Cross-prime products vanish over an Artinian ring.
    ArtinianCrossPrime,
}

impl TableRow {
    pub const ALL: [TableRow; 14] = [
        TableRow::FreeTensor,
        TableRow::FreeTor,
        TableRow::FractionCyclicTensor,
        TableRow::FractionCyclicTor,
        TableRow::CyclicTensor,
        TableRow::CrossPrimeTensor,
        TableRow::CyclicTor1,
        TableRow::CrossPrimeTor1,
        TableRow::HighTorVanishing,
        TableRow::PruferCyclicTensor,
        TableRow::PruferCyclicTor1,
        TableRow::ArtinianTensor,
        TableRow::ArtinianTor,
        TableRow::ArtinianCrossPrime,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            TableRow::FreeTensor => "free-tensor",
            TableRow::FreeTor => "free-tor",
            TableRow::FractionCyclicTensor => "fraction-cyclic-tensor",
            TableRow::FractionCyclicTor => "fraction-cyclic-tor",
            TableRow::CyclicTensor => "cyclic-tensor",
            TableRow::CrossPrimeTensor => "cross-prime-tensor",
            TableRow::CyclicTor1 => "cyclic-tor1",
            TableRow::CrossPrimeTor1 => "cross-prime-tor1",
            TableRow::HighTorVanishing => "high-tor-vanishing",
            TableRow::PruferCyclicTensor => "prufer-cyclic-tensor",
            TableRow::PruferCyclicTor1 => "prufer-cyclic-tor1",
            TableRow::ArtinianTensor => "artinian-tensor",
            TableRow::ArtinianTor => "artinian-tor",
            TableRow::ArtinianCrossPrime => "artinian-cross-prime",
        }
    }

    pub fn from_name(s: &str) -> Option<TableRow> {
        TableRow::ALL.into_iter().find(|r| r.name() == s)
    }
}

impl fmt::Display for TableRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The closed-form Tor table, optionally with one deliberately wrong row.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TorTable {
    fault: Option<TableRow>,
}

impl TorTable {
    pub const fn exact() -> Self {
        TorTable { fault: None }
    }

    pub const fn with_fault(row: TableRow) -> Self {
        TorTable { fault: Some(row) }
    }

    pub fn fault(&self) -> Option<TableRow> {
        self.fault
    }

    pub fn tensor(&self, m: &TameModule, n: &TameModule) -> Result<TameModule> {
        self.tor(0, m, n)
    }

    pub fn tor(&self, k: u32, m: &TameModule, n: &TameModule) -> Result<TameModule> {
        m.check_same_ring(n)?;
        let ring = m.ring();
        let mut counts: Vec<(Atom, u64)> = Vec::new();
        for (a, ka) in m.atoms() {
            for (b, kb) in n.atoms() {
                let (row, mut out) = atom_tor(ring, k, a, b);
                if row.is_some() && row == self.fault {
                    out = corrupt(a, out);
                }
                counts.extend(out.into_iter().map(|x| (x, ka * kb)));
            }
        }
        Ok(TameModule::from_trusted(ring, counts))
    }
}

/// Zero becomes the left atom, anything else becomes zero.
fn corrupt(a: &Atom, out: Vec<Atom>) -> Vec<Atom> {
    if out.is_empty() {
        vec![a.clone()]
    } else {
        Vec::new()
    }
}

/// `Tor_k(a, b)` for two atoms, with the witnessable table row it used.
fn atom_tor(ring: &RingSpec, k: u32, a: &Atom, b: &Atom) -> (Option<TableRow>, Vec<Atom>) {
    use Atom::*;
    // the table is symmetric; put the smaller atom first
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    if ring.is_artinian() {
        let (Cyclic(p, e), Cyclic(q, f)) = (a, b) else {
            unreachable!("Artinian normal forms contain only cyclic atoms")
        };
        if p != q {
            return (Some(TableRow::ArtinianCrossPrime), vec![]);
        }
        if k == 0 {
            return (Some(TableRow::ArtinianTensor), vec![Cyclic(p.clone(), *e.min(f))]);
        }
        let big_e = ring.multiplicity(p).expect("prime of the modulus");
        let x = (*e).min(*f).min(big_e - e).min(big_e - f);
        let out = if x == 0 { vec![] } else { vec![Cyclic(p.clone(), x)] };
        return (Some(TableRow::ArtinianTor), out);
    }
    if k >= 2 {
        return (Some(TableRow::HighTorVanishing), vec![]);
    }
    if k == 0 {
        match (a, b) {
            (Free, x) => (Some(TableRow::FreeTensor), vec![x.clone()]),
            (FractionField, FractionField) => (None, vec![FractionField]),
            (FractionField, Cyclic(..)) => (Some(TableRow::FractionCyclicTensor), vec![]),
            (FractionField, _) => (None, vec![]),
            (Cyclic(p, e), Cyclic(q, f)) => {
                if p == q {
                    (Some(TableRow::CyclicTensor), vec![Cyclic(p.clone(), *e.min(f))])
                } else {
                    (Some(TableRow::CrossPrimeTensor), vec![])
                }
            }
            (Cyclic(..), Prufer(_)) => (Some(TableRow::PruferCyclicTensor), vec![]),
            // divisible ⊗ torsion and divisible ⊗ divisible torsion vanish
            _ => (None, vec![]),
        }
    } else {
        match (a, b) {
            (Free, _) => (Some(TableRow::FreeTor), vec![]),
            (FractionField, Cyclic(..)) => (Some(TableRow::FractionCyclicTor), vec![]),
            (FractionField, _) => (None, vec![]),
            (Cyclic(p, e), Cyclic(q, f)) => {
                if p == q {
                    (Some(TableRow::CyclicTor1), vec![Cyclic(p.clone(), *e.min(f))])
                } else {
                    (Some(TableRow::CrossPrimeTor1), vec![])
                }
            }
            (Cyclic(p, e), Prufer(q)) => {
                let out = if p == q { vec![Cyclic(p.clone(), *e)] } else { vec![] };
                (Some(TableRow::PruferCyclicTor1), out)
            }
            (Cyclic(p, e), OmniPrufer) => (None, vec![Cyclic(p.clone(), *e)]),
            (Prufer(p), Prufer(q)) => (None, if p == q { vec![Prufer(p.clone())] } else { vec![] }),
            (Prufer(p), OmniPrufer) => (None, vec![Prufer(p.clone())]),
            (OmniPrufer, OmniPrufer) => (None, vec![OmniPrufer]),
            _ => unreachable!("pair is sorted"),
        }
    }
}

pub fn tensor(m: &TameModule, n: &TameModule) -> Result<TameModule> {
    TorTable::exact().tensor(m, n)
}

pub fn tor(k: u32, m: &TameModule, n: &TameModule) -> Result<TameModule> {
    TorTable::exact().tor(k, m, n)
}

/// Injective hull, atomwise.
pub fn injective_hull(m: &TameModule) -> TameModule {
    let ring = m.ring();
    let counts = m.atoms().map(|(a, k)| {
        let hull = match a {
            Atom::Free | Atom::FractionField => Atom::FractionField,
            Atom::Cyclic(p, _) if ring.is_domain() => Atom::Prufer(p.clone()),
            Atom::Cyclic(p, _) => Atom::Cyclic(p.clone(), ring.multiplicity(p).expect("prime of the modulus")),
            Atom::Prufer(p) => Atom::Prufer(p.clone()),
            Atom::OmniPrufer => Atom::OmniPrufer,
        };
        (hull, k)
    });
    TameModule::from_trusted(ring, counts)
}

/// First cosyzygy `E(M)/M`, atomwise.
pub fn cosyzygy(m: &TameModule) -> TameModule {
    let ring = m.ring();
    let counts = m.atoms().filter_map(|(a, k)| {
        let q = match a {
            Atom::Free => Some(Atom::OmniPrufer),
            Atom::Cyclic(p, _) if ring.is_domain() => Some(Atom::Prufer(p.clone())),
            Atom::Cyclic(p, e) => {
                let big_e = ring.multiplicity(p).expect("prime of the modulus");
                (big_e > *e).then(|| Atom::Cyclic(p.clone(), big_e - e))
            }
            Atom::FractionField | Atom::Prufer(_) | Atom::OmniPrufer => None,
        };
        q.map(|q| (q, k))
    });
    TameModule::from_trusted(ring, counts)
}

pub fn is_injective(m: &TameModule) -> bool {
    m.atoms().all(|(a, _)| a.is_injective(m.ring()))
}

/// Minimal injective resolution `0 -> R -> E^0 -> ... -> E^n -> 0` of the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InjectiveResolution {
    ring: Ring,
    terms: Vec<TameModule>,
}

impl InjectiveResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[TameModule] {
        &self.terms
    }

    pub fn term(&self, k: usize) -> Option<&TameModule> {
        self.terms.get(k)
    }
}

pub fn min_inj_res_of_ring(ring: &Ring) -> InjectiveResolution {
    let terms = if ring.is_domain() {
        vec![
            TameModule::from_trusted(ring, [(Atom::FractionField, 1)]),
            TameModule::from_trusted(ring, [(Atom::OmniPrufer, 1)]),
        ]
    } else {
        let free = TameModule::atom(ring, Atom::Free).expect("free atom is always valid");
        vec![free]
    };
    InjectiveResolution { ring: Ring::clone(ring), terms }
}

/// Largest `k` with `Tor_k(E, M) != 0` for some probe `M` (0 if none).
pub fn flat_dim_probe(e: &TameModule, probes: &[TameModule]) -> Result<u32> {
    let ring = e.ring();
    let mut atoms = e.atoms();
    let single = match (atoms.next(), atoms.next()) {
        (Some((a, _)), None) => a.is_injective(ring) && !matches!(a, Atom::OmniPrufer),
        _ => false,
    };
    if !single {
        return Err(Error::NotSinglePrimeInjective(e.to_string()));
    }
    if probes.is_empty() {
        return Err(Error::EmptyProbes);
    }
    let mut best = 0;
    for m in probes {
        for k in 0..=ring.krull_dim() + 1 {
            if !tor(k, e, m)?.is_zero() {
                best = best.max(k);
            }
        }
    }
    Ok(best)
}

/// Whether every homomorphism `a -> b` is zero.
pub fn hom_is_zero(ring: &Ring, a: &Atom, b: &Atom) -> Result<bool> {
    use Atom::*;
    crate::module::validate_atom(ring, a)?;
    crate::module::validate_atom(ring, b)?;
    let zero = match (a, b) {
        (Free, _) => false,
        (FractionField, FractionField | Prufer(_) | OmniPrufer) => false,
        (FractionField, _) => true,
        (Cyclic(p, _), Cyclic(q, _) | Prufer(q)) => p != q,
        (Cyclic(_, _), OmniPrufer) => false,
        (Cyclic(_, _), _) => true,
        (Prufer(p), Prufer(q)) => p != q,
        (Prufer(_), OmniPrufer) => false,
        (Prufer(_), _) => true,
        (OmniPrufer, Prufer(_) | OmniPrufer) => false,
        (OmniPrufer, _) => true,
    };
    Ok(zero)
}
