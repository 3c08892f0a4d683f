//! Exhaustive comparison of the closed-form table against the oracles.

use std::fmt;

use rayon::prelude::*;

use super::colimit::{fraction_tor_oracle, prufer_tor_oracle};
use super::presentation::Presentation;
use super::resolution::fg_tor_oracle;
use crate::error::Result;
use crate::module::{Atom, TameModule};
use crate::ring::{PrimeSpec, Ring};
use crate::tor::TorTable;

/// Enumeration bounds for [`oracle_compare`].
#[derive(Clone, Debug)]
pub struct OracleGrid {
    pub ring: Ring,
    /// Primes whose cyclic modules are enumerated.
    pub primes: Vec<PrimeSpec>,
    /// Largest exponent (capped by the multiplicity over Artinian rings).
    pub max_exp: u32,
    pub max_k: u32,
    pub include_free: bool,
    pub include_prufer: bool,
    pub include_fraction: bool,
}

impl OracleGrid {
    /// Every route enabled; primes default to the minimal primes over Artinian rings.
    pub fn new(ring: &Ring, primes: Vec<PrimeSpec>, max_exp: u32, max_k: u32) -> Self {
        let primes = if primes.is_empty() && ring.is_artinian() { ring.minimal_primes() } else { primes };
        OracleGrid {
            ring: ring.clone(),
            primes,
            max_exp,
            max_k,
            include_free: true,
            include_prufer: ring.is_domain(),
            include_fraction: ring.is_domain(),
        }
    }

    /// A grid with nothing in it.
    pub fn empty(ring: &Ring) -> Self {
        OracleGrid {
            ring: ring.clone(),
            primes: Vec::new(),
            max_exp: 0,
            max_k: 0,
            include_free: false,
            include_prufer: false,
            include_fraction: false,
        }
    }

    fn cyclics(&self) -> Vec<Atom> {
        let mut out = Vec::new();
        for p in &self.primes {
            let cap = self.ring.multiplicity(p).unwrap_or(self.max_exp).min(self.max_exp);
            out.extend((1..=cap).map(|e| Atom::Cyclic(p.clone(), e)));
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OracleRoute {
    Resolution,
    PruferLimit,
    FractionLimit,
}

impl fmt::Display for OracleRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleRoute::Resolution => "resolution",
            OracleRoute::PruferLimit => "prufer-limit",
            OracleRoute::FractionLimit => "fraction-limit",
        })
    }
}

#[derive(Clone, Debug)]
pub struct OracleCase {
    pub route: OracleRoute,
    pub k: u32,
    pub left: TameModule,
    pub right: TameModule,
    pub closed_form: std::result::Result<TameModule, String>,
    pub oracle: std::result::Result<TameModule, String>,
    pub stabilized_at: Option<u32>,
    pub agree: bool,
}

impl OracleCase {
    pub fn describe(&self) -> String {
        format!("Tor_{}({}, {}) [{}]", self.k, self.left, self.right, self.route)
    }
}

impl fmt::Display for OracleCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |r: &std::result::Result<TameModule, String>| match r {
            Ok(m) => m.to_string(),
            Err(e) => format!("error: {e}"),
        };
        write!(f, "{}: table {} / oracle {}", self.describe(), show(&self.closed_form), show(&self.oracle))?;
        if let Some(s) = self.stabilized_at {
            write!(f, " (stable from stage {s})")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
pub struct OracleReport {
    pub cases: Vec<OracleCase>,
}

impl OracleReport {
    pub fn mismatches(&self) -> Vec<&OracleCase> {
        self.cases.iter().filter(|c| !c.agree).collect()
    }

    pub fn is_clean(&self) -> bool {
        self.cases.iter().all(|c| c.agree)
    }
}

struct Job {
    route: OracleRoute,
    k: u32,
    left: Atom,
    right: Atom,
}

/// Compares `table` against the oracles on every case of `grid`.
pub fn oracle_compare(grid: &OracleGrid, table: &TorTable) -> Result<OracleReport> {
    for p in &grid.primes {
        grid.ring.validate_prime(p)?;
    }
    let cyclics = grid.cyclics();
    let mut fg = cyclics.clone();
    if grid.include_free {
        fg.insert(0, Atom::Free);
    }
    let mut jobs = Vec::new();
    for k in 0..=grid.max_k {
        for a in &fg {
            for b in &fg {
                jobs.push(Job { route: OracleRoute::Resolution, k, left: a.clone(), right: b.clone() });
            }
        }
        if grid.include_prufer {
            for p in &grid.primes {
                for m in &cyclics {
                    let pr = Atom::Prufer(p.clone());
                    jobs.push(Job { route: OracleRoute::PruferLimit, k, left: pr.clone(), right: m.clone() });
                    jobs.push(Job { route: OracleRoute::PruferLimit, k, left: m.clone(), right: pr });
                }
            }
        }
        if grid.include_fraction {
            for m in &cyclics {
                let f = Atom::FractionField;
                jobs.push(Job { route: OracleRoute::FractionLimit, k, left: f.clone(), right: m.clone() });
                jobs.push(Job { route: OracleRoute::FractionLimit, k, left: m.clone(), right: f });
            }
        }
    }
    let cases = jobs
        .par_iter()
        .map(|job| run_job(&grid.ring, table, job))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleReport { cases })
}

fn run_job(ring: &Ring, table: &TorTable, job: &Job) -> Result<OracleCase> {
    let left = TameModule::atom(ring, job.left.clone())?;
    let right = TameModule::atom(ring, job.right.clone())?;
    let closed_form = table.tor(job.k, &left, &right).map_err(|e| e.to_string());
    let mut stabilized_at = None;
    let mut late = false;
    let oracle = match job.route {
        OracleRoute::Resolution => {
            let a = Presentation::from_module(&left)?;
            let b = Presentation::from_module(&right)?;
            fg_tor_oracle(job.k, &a, &b).map_err(|e| e.to_string())
        }
        OracleRoute::PruferLimit | OracleRoute::FractionLimit => {
            let (limit_atom, finite) = if job.left.is_cyclic() {
                (&job.right, &left)
            } else {
                (&job.left, &right)
            };
            let m = Presentation::from_module(finite)?;
            let r = match limit_atom {
                Atom::Prufer(p) => prufer_tor_oracle(job.k, p, &m),
                _ => fraction_tor_oracle(job.k, &m),
            };
            r.map(|r| {
                stabilized_at = Some(r.stabilized_at);
                late = r.stabilized_at > r.bound;
                r.module
            })
            .map_err(|e| e.to_string())
        }
    };
    let agree = !late && matches!((&closed_form, &oracle), (Ok(a), Ok(b)) if a == b);
    Ok(OracleCase { route: job.route, k: job.k, left, right, closed_form, oracle, stabilized_at, agree })
}
