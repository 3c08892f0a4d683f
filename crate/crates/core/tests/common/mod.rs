#![allow(dead_code)]

use std::sync::OnceLock;

use proptest::prelude::*;

use gorinj::{parse_ring, Atom, PrimeSpec, Ring, TameModule};

pub const CASES: u32 = 10_000;

pub struct Fixture {
    pub ring: Ring,
    pub primes: Vec<PrimeSpec>,
    pub pool: Vec<Atom>,
}

const DESCRIPTORS: &[(&str, &[&str])] = &[
    ("Z", &["2", "3", "5"]),
    ("Q[x]", &["x", "x+1", "x^2+1"]),
    ("F2[x]", &["x", "x+1", "x^2+x+1"]),
    ("F3[x]", &["x", "x^2+1"]),
    ("Z/12", &[]),
    ("Z/360", &[]),
    ("Z/8", &[]),
    ("F2[x]/(x^3)", &[]),
    ("F3[x]/(x^3+x^2)", &[]),
];

pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        DESCRIPTORS
            .iter()
            .map(|(desc, gens)| {
                let ring = parse_ring(desc).unwrap();
                let primes: Vec<PrimeSpec> = if ring.is_artinian() {
                    ring.minimal_primes()
                } else {
                    gens.iter().map(|g| ring.prime(&ring.parse_repr(g).unwrap()).unwrap()).collect()
                };
                let mut pool = vec![Atom::Free];
                if ring.is_domain() {
                    pool.push(Atom::FractionField);
                    pool.push(Atom::OmniPrufer);
                }
                for p in &primes {
                    let top = ring.multiplicity(p).unwrap_or(3);
                    pool.extend((1..=top).map(|e| Atom::Cyclic(p.clone(), e)));
                    if ring.is_domain() {
                        pool.push(Atom::Prufer(p.clone()));
                    }
                }
                Fixture { ring, primes, pool }
            })
            .collect()
    })
}

/// Raw atom choices: indices into a fixture's pool, with multiplicities.
pub type Choice = Vec<(usize, u64)>;

pub fn choice() -> impl Strategy<Value = Choice> {
    prop::collection::vec((0usize..64, 1u64..3), 0..5)
}

pub fn fixture_index() -> impl Strategy<Value = usize> {
    0..DESCRIPTORS.len()
}

pub fn build(f: &Fixture, c: &Choice) -> TameModule {
    TameModule::from_counts(&f.ring, c.iter().map(|(i, k)| (f.pool[i % f.pool.len()].clone(), *k))).unwrap()
}

/// Choices restricted to atoms with `keep`.
pub fn build_filtered(f: &Fixture, c: &Choice, keep: impl Fn(&Atom) -> bool) -> TameModule {
    let pool: Vec<&Atom> = f.pool.iter().filter(|a| keep(a)).collect();
    if pool.is_empty() {
        return TameModule::zero(&f.ring);
    }
    TameModule::from_counts(&f.ring, c.iter().map(|(i, k)| (pool[i % pool.len()].clone(), *k))).unwrap()
}

/// Gorenstein injective atoms: `Q`, Prüfer and `Omega1` over domains, anything otherwise.
pub fn gi_atom(f: &Fixture) -> impl Fn(&Atom) -> bool + '_ {
    move |a| f.ring.is_artinian() || matches!(a, Atom::FractionField | Atom::Prufer(_) | Atom::OmniPrufer)
}

/// A prime of the fixture, or `(0)` for domains.
pub fn pick_prime(f: &Fixture, i: usize) -> PrimeSpec {
    let mut ps = f.primes.clone();
    if f.ring.is_domain() {
        ps.push(PrimeSpec::zero());
    }
    ps[i % ps.len()].clone()
}

pub fn config() -> ProptestConfig {
    ProptestConfig { cases: CASES, failure_persistence: None, ..ProptestConfig::default() }
}

/// Two distinct primes of the fixture (counting `(0)` for domains), if it has two.
pub fn prime_pair(f: &Fixture, i: usize, j: usize) -> Option<(PrimeSpec, PrimeSpec)> {
    let p = pick_prime(f, i);
    let mut ps = f.primes.clone();
    if f.ring.is_domain() {
        ps.push(PrimeSpec::zero());
    }
    ps.retain(|q| *q != p);
    (!ps.is_empty()).then(|| {
        let q = ps[j % ps.len()].clone();
        (p, q)
    })
}
