//! Tor against non-finitely-generated atoms as direct limits of finite stages.
//!
//! `Pr(p)` is the union of `D/(p^e)` along multiplication by `p`, and the
//! fraction field is the union of `D` along multiplication by a cofinal
//! sequence. Tor commutes with direct limits, so against a finite module `M`
//! each stage is a finite group listed element by element. The limit is read
//! off inside a stage far enough out that the images have stopped growing and
//! the kernels have stopped shrinking; both are checked, not assumed.

use std::collections::{BTreeMap, HashSet};

use super::matrix::smith_normal_form;
use super::presentation::{factor_in, Presentation};
use crate::error::{Error, Result};
use crate::module::{Atom, TameModule};
use crate::ring::{EuclideanDomain, PrimeSpec, Repr, Ring};

/// Extra stages past the nominal bound that are searched before giving up.
pub const SAFETY_MARGIN: u32 = 4;

/// Upper bound on the window needed for the fraction-field tower to kill `M`.
pub const MAX_FRACTION_WINDOW: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitResult {
    pub module: TameModule,
    /// First stage whose image in the limit is already everything.
    pub stabilized_at: u32,
    /// Nominal bound the stabilization index is expected to respect.
    pub bound: u32,
}

/// Finite stage: per component, its modulus and the admissible residues.
struct Stage<E> {
    moduli: Vec<E>,
    values: Vec<Vec<E>>,
}

impl<E: Clone> Stage<E> {
    fn elements(&self) -> Vec<Vec<E>> {
        let mut out: Vec<Vec<E>> = vec![Vec::new()];
        for vals in &self.values {
            let mut next = Vec::with_capacity(out.len() * vals.len());
            for prefix in &out {
                for v in vals {
                    let mut x = prefix.clone();
                    x.push(v.clone());
                    next.push(x);
                }
            }
            out = next;
        }
        out
    }
}

/// Invariant factors of `M` over the covering domain (units dropped, zeros kept).
fn decompose<D: EuclideanDomain>(d: &D, m: &Presentation) -> Vec<D::Elem> {
    let a = m.lifted(d);
    let s = smith_normal_form(d, &a);
    let mut f = s.invariant_factors();
    f.truncate(s.rank);
    f.retain(|x| !d.is_unit(x));
    f.extend(std::iter::repeat_n(d.zero(), m.generators() - s.rank));
    f
}

fn residues_or_err<D: EuclideanDomain>(d: &D, m: &D::Elem) -> Result<Vec<D::Elem>> {
    d.residues(m)
        .ok_or_else(|| Error::OracleUnsupported(format!("residues modulo {m} are not enumerable")))
}

/// `Tor_k(Pr(p), M)` for finitely presented `M` over `Z` or `F_q[x]`.
pub fn prufer_tor_oracle(k: u32, p: &PrimeSpec, m: &Presentation) -> Result<LimitResult> {
    let ring = m.ring().clone();
    if !ring.is_domain() {
        return Err(Error::Precondition("direct-limit oracle needs a domain".into()));
    }
    ring.validate_prime(p)?;
    let g = p
        .generator()
        .ok_or_else(|| Error::Precondition("Prüfer atoms need a nonzero prime".into()))?;
    crate::with_domain!(ring, |d| {
        let pi = d.unwrap(g).unwrap();
        let factors = decompose(&d, m);
        let top = factors.iter().filter(|f| !d.is_zero(f)).map(|f| d.valuation(&pi, f)).max().unwrap_or(0);
        let bound = top + 2;
        // stages far enough out for Tor_0's multiplication-by-p maps to die
        let lag = bound + SAFETY_MARGIN;
        if k == 0 && factors.iter().any(|f| d.is_zero(f)) {
            return Err(Error::OracleUnsupported(
                "free summand: the tensor product with Pr(p) is not finite".into(),
            ));
        }
        let stage = |e: u32| -> Result<Stage<_>> {
            let pe = d.pow(&pi, e);
            let mut st = Stage { moduli: Vec::new(), values: Vec::new() };
            if k >= 2 {
                return Ok(st);
            }
            for f in &factors {
                let gcd = d.gcd(f, &pe);
                if k == 1 {
                    // M[p^e] inside D/(f): multiples of f / gcd(f, p^e)
                    let step = if d.is_zero(f) { d.zero() } else { d.div_rem(f, &gcd).0 };
                    let mut vals: Vec<_> = residues_or_err(&d, &gcd)?
                        .iter()
                        .map(|r| d.rem(&d.mul(&step, r), f))
                        .collect();
                    vals.sort();
                    vals.dedup();
                    st.moduli.push(f.clone());
                    st.values.push(vals);
                } else {
                    st.values.push(residues_or_err(&d, &gcd)?);
                    st.moduli.push(gcd);
                }
            }
            Ok(st)
        };
        let step = |e: u32, x: &[_]| -> Vec<_> {
            if k == 1 {
                x.to_vec()
            } else {
                let next = d.pow(&pi, e + 1);
                factors
                    .iter()
                    .zip(x)
                    .map(|(f, v)| d.rem(&d.mul(&pi, v), &d.gcd(f, &next)))
                    .collect()
            }
        };
        let hints = vec![g.clone()];
        run_limit(&d, &ring, stage, step, bound + SAFETY_MARGIN, lag, bound, &hints)
    })
}

/// `Tor_k(K, M)` for finite `M` over `Z` or `F_q[x]`.
///
/// Over `Z` the tower is `Z -> Z -> ...` along `1, 2, 3, ...`; over `F_q[x]`
/// the `j`-th map multiplies by every monic polynomial of degree at most `j`.
pub fn fraction_tor_oracle(k: u32, m: &Presentation) -> Result<LimitResult> {
    let ring = m.ring().clone();
    if !ring.is_domain() {
        return Err(Error::Precondition("direct-limit oracle needs a domain".into()));
    }
    crate::with_domain!(ring, |d| {
        let factors = decompose(&d, m);
        if factors.iter().any(|f| d.is_zero(f)) {
            return Err(Error::OracleUnsupported("free summand: the limit is not finite".into()));
        }
        let multiplier = |j: u32, modulus: &_| -> Result<_> { tower_multiplier(&d, &ring, j, modulus) };
        // smallest window whose product kills every component
        let mut window = 0;
        let mut acc: Vec<_> = factors.iter().map(|_| d.one()).collect();
        while acc.iter().zip(&factors).any(|(a, f)| !d.is_zero(&d.rem(a, f))) {
            window += 1;
            if window > MAX_FRACTION_WINDOW {
                return Err(Error::NoStabilization(MAX_FRACTION_WINDOW));
            }
            for (a, f) in acc.iter_mut().zip(&factors) {
                *a = d.rem(&d.mul(a, &multiplier(window, f)?), f);
            }
        }
        let mut tables = Vec::new();
        let last = 1 + SAFETY_MARGIN + 2 + window;
        for f in &factors {
            let row = (1..=last).map(|j| multiplier(j, f)).collect::<Result<Vec<_>>>()?;
            tables.push(row);
        }
        let stage = |_e: u32| -> Result<Stage<_>> {
            let mut st = Stage { moduli: Vec::new(), values: Vec::new() };
            if k == 0 {
                for f in &factors {
                    st.values.push(residues_or_err(&d, f)?);
                    st.moduli.push(f.clone());
                }
            }
            Ok(st)
        };
        let step = |e: u32, x: &[_]| -> Vec<_> {
            factors
                .iter()
                .zip(x)
                .zip(&tables)
                .map(|((f, v), t)| d.rem(&d.mul(&t[e as usize - 1], v), f))
                .collect()
        };
        run_limit(&d, &ring, stage, step, 1 + SAFETY_MARGIN, window, 1, m.hints())
    })
}

/// The `j`-th transition multiplier of the fraction-field tower, reduced mod `modulus`.
fn tower_multiplier<D: EuclideanDomain>(d: &D, ring: &Ring, j: u32, modulus: &D::Elem) -> Result<D::Elem> {
    match ring.covering() {
        crate::ring::Covering::Integers => {
            let c = d.unwrap(&Repr::from(i64::from(j) + 1)).unwrap();
            Ok(d.rem(&c, modulus))
        }
        crate::ring::Covering::Poly(field) => {
            if !field.is_finite() {
                return Err(Error::OracleUnsupported("fraction tower over an infinite field".into()));
            }
            let mut acc = d.one();
            for deg in 1..=j as usize {
                for mon in crate::ring::Poly::monics_of_degree(&field, deg) {
                    let mon = d.unwrap(&Repr::Poly(mon)).unwrap();
                    acc = d.rem(&d.mul(&acc, &mon), modulus);
                }
            }
            Ok(acc)
        }
    }
}

/// Evaluates a direct system on stages `1..=search + 2 + lag`.
///
/// The limit is the image of stage `s` in the last stage, for the least
/// `s <= search` such that the images of stages `s`, `s+1`, `s+2` coincide and
/// the image of stage `s` is the same one stage earlier.
#[allow(clippy::too_many_arguments)]
fn run_limit<D, S, T>(
    d: &D,
    ring: &Ring,
    stage: S,
    step: T,
    search: u32,
    lag: u32,
    bound: u32,
    hints: &[Repr],
) -> Result<LimitResult>
where
    D: EuclideanDomain,
    S: Fn(u32) -> Result<Stage<D::Elem>>,
    T: Fn(u32, &[D::Elem]) -> Vec<D::Elem>,
{
    let last = search + 2 + lag;
    let push = |from: u32, to: u32, set: HashSet<Vec<D::Elem>>| -> HashSet<Vec<D::Elem>> {
        (from..to).fold(set, |s, e| s.iter().map(|x| step(e, x)).collect())
    };
    let image_at = |e: u32, to: u32| -> Result<HashSet<Vec<D::Elem>>> {
        let set: HashSet<_> = stage(e)?.elements().into_iter().collect();
        Ok(push(e, to, set))
    };
    let mut images = Vec::new();
    for e in 1..=search + 2 {
        images.push(image_at(e, last)?);
    }
    for s in 1..=search {
        let i = (s - 1) as usize;
        let n = images[i].len();
        if images[i + 1].len() != n || images[i + 2].len() != n {
            continue;
        }
        if image_at(s, last - 1)?.len() != n {
            continue;
        }
        let moduli = stage(last)?.moduli;
        let module = classify_finite(d, ring, &moduli, &images[i], hints)?;
        return Ok(LimitResult { module, stabilized_at: s, bound });
    }
    Err(Error::NoStabilization(search))
}

/// Classifies a finite subgroup of `⊕ D/(m_i)` by counting `π^j`-torsion.
fn classify_finite<D: EuclideanDomain>(
    d: &D,
    ring: &Ring,
    moduli: &[D::Elem],
    group: &HashSet<Vec<D::Elem>>,
    hints: &[Repr],
) -> Result<TameModule> {
    let mut primes: Vec<D::Elem> = Vec::new();
    for m in moduli {
        if d.is_zero(m) || d.is_unit(m) {
            continue;
        }
        for (p, _) in factor_in(d, ring, m, hints)? {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    let mut counts: BTreeMap<Atom, u64> = BTreeMap::new();
    let mut accounted: u128 = 1;
    for p in &primes {
        let q = d
            .residue_field_size(p)
            .ok_or_else(|| Error::OracleUnsupported(format!("infinite residue field at {p}")))?;
        let killed = |j: u32| {
            let pj = d.pow(p, j);
            group
                .iter()
                .filter(|x| x.iter().zip(moduli).all(|(v, m)| d.is_zero(&d.rem(&d.mul(&pj, v), m))))
                .count() as u128
        };
        // ranks[j] = log_q |G[p^j]|
        let mut ranks = vec![0u32];
        loop {
            let j = ranks.len() as u32;
            let r = log_exact(killed(j), q).ok_or_else(|| {
                Error::OutsideTameClass(format!("torsion count at {p} is not a power of {q}"))
            })?;
            if r == *ranks.last().unwrap() {
                break;
            }
            ranks.push(r);
        }
        let prime = ring.prime(&d.wrap(p.clone()))?;
        let at_least: Vec<u32> = ranks.windows(2).map(|w| w[1] - w[0]).collect();
        for (j, &n) in at_least.iter().enumerate() {
            let exactly = n - at_least.get(j + 1).copied().unwrap_or(0);
            if exactly > 0 {
                counts.insert(Atom::Cyclic(prime.clone(), j as u32 + 1), u64::from(exactly));
            }
        }
        accounted *= u128::from(q).pow(*ranks.last().unwrap());
    }
    if accounted != group.len() as u128 {
        return Err(Error::OutsideTameClass(format!(
            "limit of order {} is not the sum of its primary parts",
            group.len()
        )));
    }
    TameModule::from_counts(ring, counts)
}

fn log_exact(mut n: u128, q: u64) -> Option<u32> {
    let q = u128::from(q);
    let mut e = 0;
    while n > 1 {
        if !n.is_multiple_of(q) {
            return None;
        }
        n /= q;
        e += 1;
    }
    (n == 1).then_some(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::syntax::parse_module;
    use crate::ring::parse_ring;

    fn zmod(z: &Ring, n: i64) -> Presentation {
        Presentation::cyclic(z, Repr::from(n)).unwrap()
    }

    #[test]
    fn prufer_tor1_of_eight() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        let r = prufer_tor_oracle(1, &two, &zmod(&z, 8)).unwrap();
        assert_eq!(r.module, parse_module(&z, "C(2,3)").unwrap());
        assert!(r.stabilized_at <= r.bound);
    }

    #[test]
    fn prufer_tensor_dies() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        assert!(prufer_tor_oracle(0, &two, &zmod(&z, 8)).unwrap().module.is_zero());
    }

    #[test]
    fn prufer_coprime() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        assert!(prufer_tor_oracle(1, &two, &zmod(&z, 3)).unwrap().module.is_zero());
    }

    #[test]
    fn prufer_mixed_module() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        let m = Presentation::from_module(&parse_module(&z, "C(2,1) (+) C(2,3) (+) C(3,2)").unwrap()).unwrap();
        let r = prufer_tor_oracle(1, &two, &m).unwrap();
        assert_eq!(r.module, parse_module(&z, "C(2,1) (+) C(2,3)").unwrap());
        assert!(prufer_tor_oracle(2, &two, &m).unwrap().module.is_zero());
    }

    #[test]
    fn prufer_over_f2x() {
        let r = parse_ring("F2[x]").unwrap();
        let p = r.prime(&r.parse_repr("x^2+x+1").unwrap()).unwrap();
        let m = Presentation::from_module(&parse_module(&r, "C(x^2+x+1,2)").unwrap()).unwrap();
        assert_eq!(prufer_tor_oracle(1, &p, &m).unwrap().module, parse_module(&r, "C(x^2+x+1,2)").unwrap());
    }

    #[test]
    fn prufer_free_tensor_is_unsupported() {
        let z = parse_ring("Z").unwrap();
        let two = z.prime_int(2).unwrap();
        let free = Presentation::new(&z, 1, vec![]).unwrap();
        assert!(prufer_tor_oracle(0, &two, &free).is_err());
        assert!(prufer_tor_oracle(1, &two, &free).unwrap().module.is_zero());
    }

    #[test]
    fn fraction_field_kills_torsion() {
        let z = parse_ring("Z").unwrap();
        let m = Presentation::from_module(&parse_module(&z, "C(5,4) (+) C(2,1)").unwrap()).unwrap();
        for k in 0..=2 {
            assert!(fraction_tor_oracle(k, &m).unwrap().module.is_zero());
        }
        let f2 = parse_ring("F2[x]").unwrap();
        let m = Presentation::from_module(&parse_module(&f2, "C(x^2+x+1,3)").unwrap()).unwrap();
        assert!(fraction_tor_oracle(0, &m).unwrap().module.is_zero());
    }

    #[test]
    fn exact_logs() {
        assert_eq!(log_exact(1, 2), Some(0));
        assert_eq!(log_exact(8, 2), Some(3));
        assert_eq!(log_exact(12, 2), None);
    }
}
