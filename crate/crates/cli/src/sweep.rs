//! Grid enumeration and the verifier battery run by `sweep`.

use std::time::Instant;

use rayon::prelude::*;

use gorinj::gorenstein::{
    check_cor_2_3, check_lemma_2_1, check_prop_2_2, check_prop_2_4, check_thm_4_1, filtration,
    functoriality_check, is_gorenstein_injective, layer_iso_check, residue_hull, tor_gi_experiment,
};
use gorinj::module::morphism::{Block, Generator, MorphismSpec};
use gorinj::module::{has_property_t, support};
use gorinj::oracle::{oracle_compare, OracleGrid};
use gorinj::ring::Repr;
use gorinj::tor::{tor, TorTable};
use gorinj::{Atom, PrimeSpec, Result, Ring, TameModule};

use crate::command::SweepBounds;
use crate::report::{CaseRecord, Provenance, EXPERIMENT_OPERATION};

/// Morphisms generated per ring for the functoriality suite.
pub const MORPHISMS_PER_RING: usize = 60;

/// Runs `body`, timing it; errors become failing cases.
pub fn timed_case(
    operation: &str,
    inputs: Vec<String>,
    body: impl FnOnce() -> Result<(String, bool)>,
) -> CaseRecord {
    let start = Instant::now();
    let (output, verdict) = match body() {
        Ok(r) => r,
        Err(e) => (format!("error: {e}"), false),
    };
    CaseRecord::new(operation, inputs, output, verdict).with_elapsed(start.elapsed().as_secs_f64())
}

/// Resolves prime literals; an empty list means the minimal primes of an
/// Artinian ring, or the two smallest height-1 primes of a domain.
pub fn resolve_primes(ring: &Ring, literals: &[String]) -> Result<Vec<PrimeSpec>> {
    if literals.is_empty() {
        return Ok(if ring.is_artinian() { ring.minimal_primes() } else { ring.small_height_one_primes(2) });
    }
    let mut out = Vec::new();
    for s in literals {
        let p = ring.prime(&ring.parse_repr(s)?)?;
        if !out.contains(&p) {
            out.push(p);
        }
    }
    Ok(out)
}

/// Gorenstein injective tame modules within the bounds.
///
/// Over a domain: all sums of `Q` and `Pr(p)` with total multiplicity at most
/// `max_atoms`. Over an Artinian ring: at most `max_atoms` cyclic summands per
/// prime, i.e. at most `max_atoms` invariant factors, exponents capped by
/// `max_exp` and the multiplicity of the prime.
pub fn gi_grid(ring: &Ring, primes: &[PrimeSpec], max_exp: u32, max_atoms: u32) -> Vec<TameModule> {
    if ring.is_domain() {
        let mut basis = vec![Atom::FractionField];
        basis.extend(primes.iter().map(|p| Atom::Prufer(p.clone())));
        let mut out = Vec::new();
        multisets(&basis, max_atoms as usize, &mut Vec::new(), 0, &mut out);
        out.into_iter()
            .map(|atoms| TameModule::from_counts(ring, atoms.into_iter().map(|a| (a, 1))).expect("valid atoms"))
            .collect()
    } else {
        let mut per_prime: Vec<Vec<Vec<Atom>>> = Vec::new();
        for p in primes {
            let top = ring.multiplicity(p).unwrap_or(0).min(max_exp);
            let basis: Vec<Atom> = (1..=top).map(|e| Atom::Cyclic(p.clone(), e)).collect();
            let mut choices = Vec::new();
            multisets(&basis, max_atoms as usize, &mut Vec::new(), 0, &mut choices);
            per_prime.push(choices);
        }
        let mut out = vec![Vec::new()];
        for choices in per_prime {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<Atom>| {
                    choices.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.extend(c.iter().cloned());
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|atoms| TameModule::from_counts(ring, atoms.into_iter().map(|a| (a, 1))).expect("valid atoms"))
            .collect()
    }
}

fn multisets<T: Clone>(basis: &[T], room: usize, current: &mut Vec<T>, from: usize, out: &mut Vec<Vec<T>>) {
    out.push(current.clone());
    if room == 0 {
        return;
    }
    for i in from..basis.len() {
        current.push(basis[i].clone());
        multisets(basis, room - 1, current, i, out);
        current.pop();
    }
}

/// Injective test modules: `E(R/P)` for the grid primes (and `(0)`), plus `Omega1`.
pub fn injective_probes(ring: &Ring, primes: &[PrimeSpec]) -> Vec<TameModule> {
    let mut out = Vec::new();
    if ring.is_domain() {
        out.push(residue_hull(ring, &PrimeSpec::zero()).expect("zero ideal"));
    }
    for p in primes {
        out.push(residue_hull(ring, p).expect("validated prime"));
    }
    if ring.is_domain() {
        out.push(TameModule::atom(ring, Atom::OmniPrufer).expect("domain atom"));
    }
    out
}

/// A height-1 prime outside `m`'s support, if the ring has any.
pub fn prime_outside(ring: &Ring, m: &TameModule) -> Option<PrimeSpec> {
    let supp = support(m);
    ring.small_height_one_primes(supp.len() + 1).into_iter().find(|p| !supp.contains(p))
}

/// Every property the filtration is expected to have, as one verdict.
pub fn filtration_case(g: &TameModule) -> Result<(String, bool)> {
    let f = filtration(g)?;
    let mut ok = f.reconstruct() == *g && filtration(g)? == f && layer_iso_check(g)?;
    for layer in f.layers() {
        ok &= is_gorenstein_injective(&layer.quotient).verdict;
        for (p, s) in &layer.summands {
            ok &= has_property_t(s, p)?;
        }
    }
    Ok((render_filtration_inline(&f), ok))
}

fn render_filtration_inline(f: &gorinj::gorenstein::Filtration) -> String {
    let mut parts = Vec::new();
    for layer in f.layers().iter().rev() {
        let mut s: Vec<String> = layer.summands.iter().map(|(p, m)| format!("{p}->{m}")).collect();
        if layer.omni > 0 {
            s.push(format!("*->Omega1^{}", layer.omni));
        }
        parts.push(format!("k={}: {}", layer.k, if s.is_empty() { "0".to_string() } else { s.join(", ") }));
    }
    parts.join("; ")
}

/// Canonical blocks from atom `a` to atom `b` (besides zero).
fn canonical_blocks(a: &Atom, b: &Atom, scalar: &Repr) -> Vec<Block> {
    let mut out = Vec::new();
    if a == b {
        out.push(Block::single(Generator::Identity));
        out.push(Block::single(Generator::Scalar(scalar.clone())));
    }
    match (a, b) {
        (Atom::FractionField, Atom::Prufer(p)) => {
            out.push(Block::single(Generator::FractionToPrufer { prime: p.clone() }));
        }
        (Atom::Cyclic(p, e), Atom::Cyclic(q, f)) if p == q && e != f => {
            let g = if e < f {
                Generator::CyclicInclusion { prime: p.clone(), from: *e, to: *f }
            } else {
                Generator::CyclicProjection { prime: p.clone(), from: *e, to: *f }
            };
            out.push(Block::single(g));
        }
        _ => {}
    }
    out
}

/// Deterministically generated canonical morphisms between grid modules.
pub fn generate_morphisms(ring: &Ring, grid: &[TameModule], count: usize) -> Vec<MorphismSpec> {
    let nonzero: Vec<&TameModule> = grid.iter().filter(|m| !m.is_zero()).collect();
    let scalars: Vec<Repr> = match ring.covering() {
        gorinj::ring::Covering::Integers => vec![Repr::from(2), Repr::from(3), Repr::from(5), Repr::from(7)],
        gorinj::ring::Covering::Poly(_) => {
            vec![ring.parse_repr("x").unwrap(), ring.parse_repr("x+1").unwrap(), ring.parse_repr("1").unwrap()]
        }
    };
    let mut out = Vec::new();
    let mut seed: u64 = 0x9e37_79b9;
    let mut next = || {
        seed ^= seed << 13;
        seed ^= seed >> 7;
        seed ^= seed << 17;
        seed
    };
    let n = nonzero.len();
    if n == 0 {
        return out;
    }
    let mut attempts = 0;
    while out.len() < count && attempts < count * 50 {
        attempts += 1;
        let g = nonzero[(next() % n as u64) as usize];
        let h = nonzero[(next() % n as u64) as usize];
        let scalar = &scalars[(next() % scalars.len() as u64) as usize];
        if attempts % 5 == 0 {
            if let Ok(f) = MorphismSpec::scalar(g, ring.reduce(scalar).unwrap()) {
                out.push(f);
            }
            continue;
        }
        let src = g.instances();
        let tgt = h.instances();
        let blocks: Vec<Vec<Block>> = src
            .iter()
            .map(|a| {
                tgt.iter()
                    .map(|b| {
                        let mut c = canonical_blocks(a, b, &ring.reduce(scalar).unwrap());
                        let pick = (next() % (c.len() as u64 + 1)) as usize;
                        if pick == c.len() {
                            Block::Zero
                        } else {
                            c.swap_remove(pick)
                        }
                    })
                    .collect()
            })
            .collect();
        if blocks.iter().flatten().all(Block::is_zero) {
            continue;
        }
        if let Ok(f) = MorphismSpec::new(g.clone(), h.clone(), blocks) {
            out.push(f);
        }
    }
    out
}

fn render_morphism(f: &MorphismSpec) -> String {
    let rows: Vec<String> = f
        .blocks()
        .iter()
        .map(|row| {
            let cells: Vec<String> = row
                .iter()
                .map(|b| match b {
                    Block::Zero => "0".to_string(),
                    Block::Chain(gs) => gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("."),
                })
                .collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    rows.join(" ")
}

/// `Tor_k(E(R/P), E(R/Q))` against the expected table, for `k <= n+1`.
pub fn injective_table_cases(ring: &Ring, primes: &[PrimeSpec]) -> Vec<CaseRecord> {
    let mut ps: Vec<PrimeSpec> = Vec::new();
    if ring.is_domain() {
        ps.push(PrimeSpec::zero());
    }
    ps.extend(primes.iter().cloned());
    let mut out = Vec::new();
    for p in &ps {
        for q in &ps {
            for k in 0..=ring.krull_dim() + 1 {
                let inputs = vec![format!("k={k}"), p.to_string(), q.to_string()];
                out.push(timed_case("tor-of-injectives", inputs, || {
                    let ep = residue_hull(ring, p)?;
                    let eq = residue_hull(ring, q)?;
                    let got = tor(k, &ep, &eq)?;
                    let want = if p == q && k == p.height() { ep.clone() } else { TameModule::zero(ring) };
                    Ok((got.to_string(), got == want))
                }));
            }
        }
    }
    out
}

/// The whole battery over the grid described by `bounds`.
pub fn run_sweep(ring: &Ring, bounds: &SweepBounds, table: &TorTable) -> Result<Vec<CaseRecord>> {
    let primes = resolve_primes(ring, &bounds.primes)?;
    let grid = gi_grid(ring, &primes, bounds.max_exp, bounds.max_atoms);
    let probes = injective_probes(ring, &primes);
    let kmax = bounds.tor_max;

    let mut cases = injective_table_cases(ring, &primes);

    let per_module: Vec<CaseRecord> = grid
        .par_iter()
        .flat_map_iter(|g| module_cases(ring, g, &probes, kmax))
        .collect();
    cases.extend(per_module);

    let pairs: Vec<(&TameModule, &TameModule)> =
        grid.iter().flat_map(|g| grid.iter().map(move |h| (g, h))).collect();
    let per_pair: Vec<CaseRecord> = pairs
        .par_iter()
        .flat_map_iter(|(g, h)| {
            let inputs = vec![g.to_string(), h.to_string()];
            let mut v = vec![timed_case("thm4.1", inputs.clone(), || {
                let t = check_thm_4_1(g, h)?;
                Ok((format!("{}; gi = {}; reduces = {}", t.product, t.gi, t.reduces_to_top), t.holds()))
            })];
            for k in 1..=2 {
                let mut inputs = inputs.clone();
                inputs.insert(0, format!("k={k}"));
                let mut c = timed_case(EXPERIMENT_OPERATION, inputs, || {
                    let e = tor_gi_experiment(k, g, h)?;
                    Ok((format!("{}; gi = {}", e.value, e.gi), true))
                });
                // the experiment only reports; a crash is the one thing that fails it
                c.verdict = !c.output.starts_with("error:");
                v.push(c);
            }
            v
        })
        .collect();
    cases.extend(per_pair);

    for f in generate_morphisms(ring, &grid, MORPHISMS_PER_RING) {
        let inputs = vec![f.source().to_string(), f.target().to_string(), render_morphism(&f)];
        cases.push(timed_case("thm3.1 functoriality", inputs, || {
            let ok = functoriality_check(&f)?;
            Ok((ok.to_string(), ok))
        }));
    }

    let mut oracle_grid = OracleGrid::new(ring, primes.clone(), bounds.max_exp, kmax);
    if ring.is_artinian() {
        oracle_grid.max_k = kmax.max(4);
    }
    let start = Instant::now();
    let report = oracle_compare(&oracle_grid, table)?;
    let per_case = start.elapsed().as_secs_f64() / report.cases.len().max(1) as f64;
    for c in &report.cases {
        let show = |r: &std::result::Result<TameModule, String>| match r {
            Ok(m) => m.to_string(),
            Err(e) => format!("error: {e}"),
        };
        let mut inputs = vec![format!("k={}", c.k), c.left.to_string(), c.right.to_string()];
        if let Some(s) = c.stabilized_at {
            inputs.push(format!("stable from stage {s}"));
        }
        let mut rec = CaseRecord::new(
            format!("oracle {}", c.route),
            inputs,
            format!("table {} / oracle {}", show(&c.closed_form), show(&c.oracle)),
            c.agree,
        )
        .with_provenance(Provenance::Both)
        .with_elapsed(per_case);
        rec.mismatch = !c.agree;
        cases.push(rec);
    }

    cases.sort_by(|a, b| a.key().cmp(&b.key()));
    Ok(cases)
}

/// Per-module battery: certificate, filtration, and the single-module checks.
pub fn module_cases(ring: &Ring, g: &TameModule, probes: &[TameModule], kmax: u32) -> Vec<CaseRecord> {
    let gs = g.to_string();
    let mut out = Vec::new();
    out.push(timed_case("is_gi", vec![gs.clone()], || {
        let c = is_gorenstein_injective(g);
        Ok((c.to_string(), c.verdict && c.verify(g)))
    }));
    out.push(timed_case("thm3.1 filtration", vec![gs.clone()], || filtration_case(g)));

    let mut primes: Vec<PrimeSpec> = support(g).into_iter().collect();
    if ring.is_domain() {
        if let Some(p) = prime_outside(ring, g) {
            primes.push(p);
        }
        if !primes.contains(&PrimeSpec::zero()) {
            primes.push(PrimeSpec::zero());
        }
    } else {
        for p in ring.minimal_primes() {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    for p in &primes {
        if p.height() >= 1 {
            out.push(timed_case("lemma2.1", vec![p.to_string(), gs.clone()], || {
                let ok = check_lemma_2_1(p, g)?;
                Ok((ok.to_string(), ok))
            }));
        }
        for k in 0..=kmax {
            out.push(timed_case("prop2.2", vec![p.to_string(), gs.clone(), format!("k={k}")], || {
                let ok = check_prop_2_2(p, g, k)?;
                Ok((ok.to_string(), ok))
            }));
        }
    }
    for e in probes {
        for k in 0..=kmax {
            let inputs = vec![gs.clone(), e.to_string(), format!("k={k}")];
            out.push(timed_case("cor2.3", inputs, || {
                let ok = check_cor_2_3(g, e, k)?;
                Ok((ok.to_string(), ok))
            }));
            let inputs = vec![e.to_string(), gs.clone(), format!("k={k}")];
            out.push(timed_case("prop2.4", inputs, || {
                let ok = check_prop_2_4(e, g, k)?;
                Ok((format!("{}; gi = {ok}", tor(k, e, g)?), ok))
            }));
        }
    }
    out
}
