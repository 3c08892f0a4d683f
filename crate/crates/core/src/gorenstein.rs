//! Gorenstein injectivity with certificates, the torsion filtration of a
//! Gorenstein injective module, and checks of the statements built on them.
//!
//! Over the one-dimensional catalog rings (PIDs) a tame module is Gorenstein
//! injective exactly when it is divisible, i.e. injective. Over the Artinian
//! catalog rings (self-injective) every module is Gorenstein injective.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::module::morphism::{Block, MorphismSpec};
use crate::module::{gamma, support, Atom, TameModule};
use crate::ring::{is_regular, PrimeSpec, Ring, RingElement};
use crate::tor::{hom_is_zero, is_injective, min_inj_res_of_ring, tensor, tor};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The ring has Krull dimension 0, where every module qualifies.
    DimensionZero,
    /// An injective module mapping onto the subject (here the subject itself).
    InjectiveCover(TameModule),
    /// A regular element whose action on the subject is not onto.
    NonDivisible(RingElement),
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::DimensionZero => write!(f, "n = 0"),
            Witness::InjectiveCover(e) => write!(f, "E0 = {e} ->> G (identity)"),
            Witness::NonDivisible(r) => write!(f, "r = {r}: r*G != G"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GICertificate {
    pub verdict: bool,
    pub witness: Witness,
}

impl GICertificate {
    /// Re-checks the witness against `m` without trusting the verdict.
    pub fn verify(&self, m: &TameModule) -> bool {
        match (&self.witness, self.verdict) {
            (Witness::DimensionZero, true) => m.ring().is_artinian(),
            (Witness::InjectiveCover(e), true) => is_injective(e) && e == m,
            (Witness::NonDivisible(r), false) => {
                matches!(is_regular(m.ring(), r), Ok(true)) && matches!(divisibility_check(m, r), Ok(false))
            }
            _ => false,
        }
    }
}

impl fmt::Display for GICertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.verdict, self.witness)
    }
}

pub fn is_gorenstein_injective(m: &TameModule) -> GICertificate {
    let ring = m.ring();
    if ring.is_artinian() {
        return GICertificate { verdict: true, witness: Witness::DimensionZero };
    }
    for (a, _) in m.atoms() {
        let r = match a {
            Atom::Cyclic(p, _) => p.generator().cloned(),
            Atom::Free => ring.some_height_one_prime().and_then(|p| p.generator().cloned()),
            _ => continue,
        };
        let r = r.expect("domains have a nonzero prime");
        let r = ring.element(r).expect("prime generators are ring elements");
        return GICertificate { verdict: false, witness: Witness::NonDivisible(r) };
    }
    GICertificate { verdict: true, witness: Witness::InjectiveCover(m.clone()) }
}

/// Whether multiplication by the regular element `r` maps `m` onto itself.
pub fn divisibility_check(m: &TameModule, r: &RingElement) -> Result<bool> {
    let ring = m.ring();
    if !is_regular(ring, r)? {
        return Err(Error::NotRegular(r.to_string(), ring.to_string()));
    }
    if ring.is_artinian() {
        // regular elements of an Artinian ring are units
        return Ok(true);
    }
    Ok(m.atoms().all(|(a, _)| match a {
        Atom::Free => ring.is_unit(r.value()),
        Atom::Cyclic(p, _) => !ring.prime_divides(p, r.value()),
        Atom::FractionField | Atom::Prufer(_) | Atom::OmniPrufer => true,
    }))
}

fn require_gi(m: &TameModule, operation: &str) -> Result<()> {
    if is_gorenstein_injective(m).verdict {
        Ok(())
    } else {
        Err(Error::NotGorensteinInjective(m.to_string(), operation.to_string()))
    }
}

fn require_injective(e: &TameModule) -> Result<()> {
    if is_injective(e) {
        Ok(())
    } else {
        Err(Error::NotInjective(e.to_string()))
    }
}

/// `E(R/P)`: the fraction field, a Prüfer module, or the local factor `C(p,E)`.
pub fn residue_hull(ring: &Ring, p: &PrimeSpec) -> Result<TameModule> {
    ring.validate_prime(p)?;
    let atom = match p.generator() {
        None => Atom::FractionField,
        Some(_) if ring.is_domain() => Atom::Prufer(p.clone()),
        Some(_) => Atom::Cyclic(p.clone(), ring.multiplicity(p).expect("prime of the modulus")),
    };
    TameModule::atom(ring, atom)
}

/// One step `G_k / G_{k+1}` of the filtration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layer {
    pub k: u32,
    /// `G_k`.
    pub submodule: TameModule,
    /// `G_k / G_{k+1}`.
    pub quotient: TameModule,
    /// `Γ_P(G / G_{k+1})` for the listed primes `P` of height `k`.
    pub summands: BTreeMap<PrimeSpec, TameModule>,
    /// Copies of `Omega1` in the quotient. Each one also contributes a `Pr(P)`
    /// to every listed summand, and covers the unlisted primes of height `k`.
    pub omni: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    subject: TameModule,
    layers: Vec<Layer>,
}

impl Filtration {
    pub fn subject(&self) -> &TameModule {
        &self.subject
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn layer(&self, k: u32) -> Option<&Layer> {
        self.layers.get(k as usize)
    }

    /// `G_k`, with `G_{n+1} = 0`.
    pub fn submodule(&self, k: u32) -> TameModule {
        self.layer(k)
            .map(|l| l.submodule.clone())
            .unwrap_or_else(|| TameModule::zero(self.subject.ring()))
    }

    /// `⊕_k ⊕_P` summands with the wildcard parts folded back into `Omega1`.
    pub fn reconstruct(&self) -> TameModule {
        let ring = self.subject.ring();
        let mut total = TameModule::zero(ring);
        for layer in &self.layers {
            for (p, s) in &layer.summands {
                let mut s = s.clone();
                if layer.omni > 0 {
                    let shared = TameModule::from_trusted(ring, [(Atom::Prufer(p.clone()), layer.omni)]);
                    s = s.complement(&shared).expect("listed summands contain the wildcard part");
                }
                total = total.sum_unchecked(&s);
            }
            total = total.sum_unchecked(&TameModule::from_trusted(ring, [(Atom::OmniPrufer, layer.omni)]));
        }
        total
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for layer in &self.layers {
            write!(f, "G_{} = {}; G_{}/G_{} = {}", layer.k, layer.submodule, layer.k, layer.k + 1, layer.quotient)?;
            for (p, s) in &layer.summands {
                write!(f, "; {p}: {s}")?;
            }
            if layer.omni > 0 {
                write!(f, "; unlisted primes: Omega1^{}", layer.omni)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Height of the prime an atom lives over: the layer it belongs to.
pub fn atom_layer(ring: &Ring, a: &Atom) -> u32 {
    match a {
        Atom::Free | Atom::FractionField => 0,
        Atom::OmniPrufer => 1,
        Atom::Cyclic(p, _) | Atom::Prufer(p) => {
            if ring.is_artinian() {
                0
            } else {
                p.height()
            }
        }
    }
}

/// The filtration `0 = G_{n+1} ⊆ G_n ⊆ ... ⊆ G_0 = G`, computed from the top:
/// the `k`-th quotient is `⊕_{P of height k} Γ_P(G / G_{k+1})`.
pub fn filtration(g: &TameModule) -> Result<Filtration> {
    require_gi(g, "thm3.1")?;
    let ring = g.ring();
    let n = ring.krull_dim();
    let mut layers = Vec::new();
    let mut below = TameModule::zero(ring); // G_{k+1}
    for k in (0..=n).rev() {
        let rest = g.complement(&below).expect("G_{k+1} is a summand of G");
        let listed = ring.primes_of_height(k, &support(&rest).into_iter().collect::<Vec<_>>())?;
        let mut summands = BTreeMap::new();
        let mut quotient = TameModule::zero(ring);
        for p in listed {
            let s = gamma(&p, &rest)?;
            if !s.is_zero() {
                quotient = quotient.sum_unchecked(&s);
                summands.insert(p, s);
            }
        }
        // Γ_P(Omega1) = Pr(P) at every height-1 prime, listed or not
        let omni = if k == 1 && ring.is_domain() { rest.multiplicity(&Atom::OmniPrufer) } else { 0 };
        if omni > 0 {
            let listed_share: Vec<(Atom, u64)> =
                summands.keys().map(|p| (Atom::Prufer(p.clone()), omni)).collect();
            quotient = quotient
                .complement(&TameModule::from_trusted(ring, listed_share))
                .expect("wildcard share is present")
                .sum_unchecked(&TameModule::from_trusted(ring, [(Atom::OmniPrufer, omni)]));
        }
        let submodule = below.sum_unchecked(&quotient);
        layers.push(Layer { k, submodule: submodule.clone(), quotient, summands, omni });
        below = submodule;
    }
    layers.reverse();
    debug_assert_eq!(layers[0].submodule, *g);
    Ok(Filtration { subject: g.clone(), layers })
}

/// Each quotient `G_k/G_{k+1}` against `Tor_k(E^k, G)` for the minimal
/// injective resolution `E^*` of the ring.
pub fn layer_iso_check(g: &TameModule) -> Result<bool> {
    let f = filtration(g)?;
    let res = min_inj_res_of_ring(g.ring());
    for layer in f.layers() {
        let e = res.term(layer.k as usize).expect("resolution has n+1 terms");
        if tor(layer.k, e, g)? != layer.quotient {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `E(R/P) ⊗ G = 0` for `ht(P) >= 1` and Gorenstein injective `G`.
pub fn check_lemma_2_1(p: &PrimeSpec, g: &TameModule) -> Result<bool> {
    g.ring().validate_prime(p)?;
    if p.height() < 1 {
        return Err(Error::Precondition(format!("{p} has height 0")));
    }
    require_gi(g, "lemma2.1")?;
    Ok(tensor(&residue_hull(g.ring(), p)?, g)?.is_zero())
}

/// `Tor_k(E(R/P), G) = 0` unless `ht(P) = k`.
pub fn check_prop_2_2(p: &PrimeSpec, g: &TameModule, k: u32) -> Result<bool> {
    require_gi(g, "prop2.2")?;
    let e = residue_hull(g.ring(), p)?;
    Ok(p.height() == k || tor(k, &e, g)?.is_zero())
}

/// `Tor_k(E, -)` is additive on `0 -> G_1 -> G -> G/G_1 -> 0`.
pub fn check_cor_2_3(g: &TameModule, e: &TameModule, k: u32) -> Result<bool> {
    g.check_same_ring(e)?;
    require_injective(e)?;
    require_gi(g, "cor2.3")?;
    let g1 = filtration(g)?.submodule(1);
    let top = g.complement(&g1).expect("G_1 is a summand of G");
    let middle = tor(k, e, g)?;
    let ends = tor(k, e, &g1)?.sum_unchecked(&tor(k, e, &top)?);
    Ok(middle == ends)
}

/// `Tor_k(E, G)` is Gorenstein injective.
pub fn check_prop_2_4(e: &TameModule, g: &TameModule, k: u32) -> Result<bool> {
    g.check_same_ring(e)?;
    require_injective(e)?;
    require_gi(g, "prop2.4")?;
    Ok(is_gorenstein_injective(&tor(k, e, g)?).verdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorClosure {
    pub product: TameModule,
    pub gi: bool,
    /// `G ⊗ H ≅ G/G_1 ⊗ H/H_1`.
    pub reduces_to_top: bool,
}

impl TensorClosure {
    pub fn holds(&self) -> bool {
        self.gi && self.reduces_to_top
    }
}

/// `G ⊗ H` for Gorenstein injective `G`, `H`, with the reduction to the top layers.
pub fn check_thm_4_1(g: &TameModule, h: &TameModule) -> Result<TensorClosure> {
    g.check_same_ring(h)?;
    require_gi(g, "thm4.1")?;
    require_gi(h, "thm4.1")?;
    let product = tensor(g, h)?;
    let gi = is_gorenstein_injective(&product).verdict;
    let top = |m: &TameModule| -> Result<TameModule> {
        let m1 = filtration(m)?.submodule(1);
        Ok(m.complement(&m1).expect("G_1 is a summand"))
    };
    let reduces_to_top = tensor(&top(g)?, &top(h)?)? == product;
    Ok(TensorClosure { product, gi, reduces_to_top })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorExperiment {
    pub value: TameModule,
    pub gi: bool,
}

/// `Tor_k(G, H)` for `k >= 1` and its Gorenstein injectivity. Not a theorem:
/// callers report the outcome without asserting it.
pub fn tor_gi_experiment(k: u32, g: &TameModule, h: &TameModule) -> Result<TorExperiment> {
    g.check_same_ring(h)?;
    if k == 0 {
        return Err(Error::Precondition("the experiment is for k >= 1".into()));
    }
    require_gi(g, "rmk4.2")?;
    require_gi(h, "rmk4.2")?;
    let value = tor(k, g, h)?;
    let gi = is_gorenstein_injective(&value).verdict;
    Ok(TorExperiment { value, gi })
}

/// Whether a morphism carries each `G_k` into `H_k`, and each prime summand
/// of `G_k/G_{k+1}` into the summand of `H_k/H_{k+1}` at the same prime.
pub fn functoriality_check(f: &MorphismSpec) -> Result<bool> {
    let (g, h) = (f.source(), f.target());
    require_gi(g, "thm3.1")?;
    require_gi(h, "thm3.1")?;
    let ring = g.ring();
    let src = g.instances();
    let tgt = h.instances();
    for (i, row) in f.blocks().iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            let (a, b) = (&src[i], &tgt[j]);
            if block.is_zero() || block.acts_as_zero(ring, a) {
                continue;
            }
            if hom_is_zero(ring, a, b)? {
                return Ok(false);
            }
            let (la, lb) = (atom_layer(ring, a), atom_layer(ring, b));
            if lb < la {
                return Ok(false);
            }
            if la == lb && !same_prime_summand(a, b) {
                return Ok(false);
            }
            debug_assert!(matches!(block, Block::Chain(_)));
        }
    }
    Ok(true)
}

/// Prime tags agree, with `Omega1` matching any height-1 prime.
fn same_prime_summand(a: &Atom, b: &Atom) -> bool {
    match (a, b) {
        (Atom::OmniPrufer, _) | (_, Atom::OmniPrufer) => true,
        _ => a.prime() == b.prime(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::morphism::Generator;
    use crate::module::syntax::parse_module;
    use crate::ring::{parse_ring, Repr};

    fn m(r: &Ring, s: &str) -> TameModule {
        parse_module(r, s).unwrap()
    }

    #[test]
    fn certificates() {
        let z = parse_ring("Z").unwrap();
        let c = is_gorenstein_injective(&m(&z, "Q (+) Pr(2)"));
        assert!(c.verdict);
        assert!(c.verify(&m(&z, "Q (+) Pr(2)")));
        let c = is_gorenstein_injective(&m(&z, "C(2,3)"));
        assert!(!c.verdict);
        assert_eq!(c.witness.to_string(), "r = 2: r*G != G");
        assert!(c.verify(&m(&z, "C(2,3)")));
        let z12 = parse_ring("Z/12").unwrap();
        let c = is_gorenstein_injective(&m(&z12, "C(2,1)"));
        assert_eq!(c.witness, Witness::DimensionZero);
        assert!(c.verify(&m(&z12, "C(2,1)")));
        let free = is_gorenstein_injective(&m(&z, "R"));
        assert!(!free.verdict && free.verify(&m(&z, "R")));
    }

    #[test]
    fn divisibility() {
        let z = parse_ring("Z").unwrap();
        let two = z.element_int(2).unwrap();
        assert!(divisibility_check(&m(&z, "Pr(2)"), &two).unwrap());
        assert!(!divisibility_check(&m(&z, "C(2,1)"), &two).unwrap());
        assert!(divisibility_check(&m(&z, "Q"), &z.element_int(7).unwrap()).unwrap());
        assert!(divisibility_check(&m(&z, "Q"), &z.element_int(0).unwrap()).is_err());
        let z12 = parse_ring("Z/12").unwrap();
        assert!(divisibility_check(&m(&z12, "C(2,1)"), &z12.element_int(2).unwrap()).is_err());
    }

    #[test]
    fn filtration_over_integers() {
        let z = parse_ring("Z").unwrap();
        let g = m(&z, "Q^2 (+) Pr(2) (+) Pr(3)");
        let f = filtration(&g).unwrap();
        assert_eq!(f.submodule(1), m(&z, "Pr(2) (+) Pr(3)"));
        let l1 = f.layer(1).unwrap();
        assert_eq!(l1.summands[&z.prime_int(2).unwrap()], m(&z, "Pr(2)"));
        assert_eq!(l1.summands[&z.prime_int(3).unwrap()], m(&z, "Pr(3)"));
        let l0 = f.layer(0).unwrap();
        assert_eq!(l0.quotient, m(&z, "Q^2"));
        assert_eq!(l0.summands[&PrimeSpec::zero()], m(&z, "Q^2"));
        assert_eq!(f.reconstruct(), g);
        assert_eq!(filtration(&g).unwrap(), f);

        let q = filtration(&m(&z, "Q")).unwrap();
        assert!(q.submodule(1).is_zero());
        assert_eq!(q.layer(0).unwrap().summands.len(), 1);
    }

    #[test]
    fn filtration_with_wildcard() {
        let z = parse_ring("Z").unwrap();
        let g = m(&z, "Omega1 (+) Pr(5)^2 (+) Q");
        let f = filtration(&g).unwrap();
        let l1 = f.layer(1).unwrap();
        assert_eq!(l1.omni, 1);
        assert_eq!(l1.summands[&z.prime_int(5).unwrap()], m(&z, "Pr(5)^3"));
        assert_eq!(l1.quotient, m(&z, "Omega1 (+) Pr(5)^2"));
        assert_eq!(f.reconstruct(), g);
        assert!(layer_iso_check(&g).unwrap());
    }

    #[test]
    fn filtration_artinian() {
        let z12 = parse_ring("Z/12").unwrap();
        let f = filtration(&m(&z12, "C(2,1) (+) C(3,1)")).unwrap();
        assert_eq!(f.layers().len(), 1);
        let l = f.layer(0).unwrap();
        assert_eq!(l.summands[&z12.prime_int(2).unwrap()], m(&z12, "C(2,1)"));
        assert_eq!(l.summands[&z12.prime_int(3).unwrap()], m(&z12, "C(3,1)"));
    }

    #[test]
    fn filtration_rejects_non_gi() {
        let z = parse_ring("Z").unwrap();
        assert!(matches!(filtration(&m(&z, "C(2,1)")), Err(Error::NotGorensteinInjective(..))));
    }

    #[test]
    fn layer_isomorphisms() {
        let z = parse_ring("Z").unwrap();
        assert!(layer_iso_check(&m(&z, "Q^2 (+) Pr(2)")).unwrap());
        assert!(layer_iso_check(&TameModule::zero(&z)).unwrap());
        let z12 = parse_ring("Z/12").unwrap();
        assert!(layer_iso_check(&m(&z12, "C(2,1)")).unwrap());
    }

    #[test]
    fn lemma_and_propositions() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        assert!(check_lemma_2_1(&two, &m(&z, "Q (+) Pr(2)")).unwrap());
        assert!(check_lemma_2_1(&two, &m(&z, "Pr(3)")).unwrap());
        assert!(check_lemma_2_1(&two, &m(&z, "C(2,1)")).is_err());

        assert!(check_prop_2_2(&two, &m(&z, "Pr(2) (+) Q"), 0).unwrap());
        assert!(check_prop_2_2(&PrimeSpec::zero(), &m(&z, "Pr(2) (+) Q"), 1).unwrap());
        assert!(check_prop_2_2(&two, &m(&z, "Pr(2)"), 1).unwrap());

        assert!(check_cor_2_3(&m(&z, "Q (+) Pr(2)"), &m(&z, "Pr(2)"), 1).unwrap());
        assert!(check_cor_2_3(&m(&z, "Q"), &m(&z, "Omega1"), 1).unwrap());
        assert!(check_cor_2_3(&m(&z, "Pr(2) (+) Pr(3)"), &m(&z, "Omega1"), 1).unwrap());
        assert!(check_cor_2_3(&m(&z, "Q"), &m(&z, "C(2,1)"), 0).is_err());

        assert!(check_prop_2_4(&m(&z, "Pr(2)"), &m(&z, "Pr(2)"), 1).unwrap());
        assert!(check_prop_2_4(&m(&z, "Q"), &m(&z, "Q^2"), 0).unwrap());
        let z12 = parse_ring("Z/12").unwrap();
        assert!(check_prop_2_4(&m(&z12, "C(2,2)"), &m(&z12, "C(2,1) (+) C(3,1)"), 3).unwrap());
    }

    #[test]
    fn tensor_closure_examples() {
        let z = parse_ring("Z").unwrap();
        let g = m(&z, "Q (+) Pr(2)");
        let t = check_thm_4_1(&g, &g).unwrap();
        assert_eq!(t.product, m(&z, "Q"));
        assert!(t.holds());
        let t = check_thm_4_1(&m(&z, "Pr(2)"), &m(&z, "Pr(3)")).unwrap();
        assert!(t.product.is_zero() && t.holds());
        let z12 = parse_ring("Z/12").unwrap();
        let t = check_thm_4_1(&m(&z12, "C(2,1)"), &m(&z12, "C(3,1)")).unwrap();
        assert!(t.product.is_zero() && t.holds());
    }

    #[test]
    fn experiment_examples() {
        let z = parse_ring("Z").unwrap();
        let e = tor_gi_experiment(1, &m(&z, "Pr(2)"), &m(&z, "Pr(2)")).unwrap();
        assert_eq!(e.value, m(&z, "Pr(2)"));
        assert!(e.gi);
        let e = tor_gi_experiment(1, &m(&z, "Q"), &m(&z, "Pr(2)")).unwrap();
        assert!(e.value.is_zero() && e.gi);
        let z4 = parse_ring("Z/4").unwrap();
        let e = tor_gi_experiment(2, &m(&z4, "C(2,1)"), &m(&z4, "C(2,1)")).unwrap();
        assert_eq!(e.value, m(&z4, "C(2,1)"));
        assert!(e.gi);
        assert!(tor_gi_experiment(0, &m(&z, "Q"), &m(&z, "Q")).is_err());
    }

    #[test]
    fn functoriality_examples() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        let f = MorphismSpec::new(
            m(&z, "Q (+) Pr(2)"),
            m(&z, "Pr(2)"),
            vec![
                vec![Block::single(Generator::FractionToPrufer { prime: two })],
                vec![Block::single(Generator::Identity)],
            ],
        )
        .unwrap();
        assert!(functoriality_check(&f).unwrap());
        let g = m(&z, "Q^2 (+) Pr(3) (+) Omega1");
        let s = MorphismSpec::scalar(&g, Repr::from(6)).unwrap();
        assert!(functoriality_check(&s).unwrap());
    }
}
