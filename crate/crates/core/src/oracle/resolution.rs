//! Tor of finitely presented modules from explicit free resolutions.
//!
//! Everything is computed over the covering PID. A module over `D/(m)` is a
//! `D`-module killed by `m`, and a free `D/(m)`-module of rank `n` is
//! `D^n / m D^n`, so the resolution and the tensored complex are carried as
//! (generators, relations) pairs over `D`.

use super::matrix::{left_kernel, smith_normal_form, Matrix};
use super::presentation::{classify_factors, modulus_of, scaled_identity, Presentation};
use crate::error::{Error, Result};
use crate::module::{same_ring, TameModule};
use crate::ring::EuclideanDomain;

/// Resolution stages computed per requested degree beyond `k` itself.
pub const STAGE_SLACK: u32 = 1;

/// `Tor_k(A, B)` computed from a free resolution of `A` tensored with `B`.
pub fn fg_tor_oracle(k: u32, a: &Presentation, b: &Presentation) -> Result<TameModule> {
    fg_tor_oracle_with_budget(k, a, b, k + 1 + STAGE_SLACK)
}

/// As [`fg_tor_oracle`] with an explicit bound on the number of resolution maps.
pub fn fg_tor_oracle_with_budget(
    k: u32,
    a: &Presentation,
    b: &Presentation,
    budget: u32,
) -> Result<TameModule> {
    same_ring(a.ring(), b.ring())?;
    if budget < k + 1 {
        return Err(Error::StageBudget { k, budget });
    }
    let ring = a.ring();
    let mut hints = a.hints().to_vec();
    hints.extend_from_slice(b.hints());
    crate::with_domain!(ring, |d| {
        let m = modulus_of(&d, ring);
        let maps = resolution(&d, a, m.as_ref(), k + 1);
        let factors = tensor_homology(&d, &maps, a.generators(), &b.lifted(&d), b.generators(), k as usize);
        classify_factors(&d, ring, &factors, &hints)
    })
}

/// Maps `phi_1, ..., phi_count` of a free resolution `... -> F_1 -> F_0 -> A`.
///
/// `phi_j` has one row per basis element of `F_j` (row-vector convention).
fn resolution<D: EuclideanDomain>(
    d: &D,
    a: &Presentation,
    m: Option<&D::Elem>,
    count: u32,
) -> Vec<Matrix<D::Elem>> {
    let rows: Vec<Vec<D::Elem>> = a
        .relations()
        .iter()
        .map(|r| r.iter().map(|x| d.unwrap(x).unwrap()).collect())
        .collect();
    let mut maps = vec![Matrix::from_rows(a.generators(), rows)];
    while maps.len() < count as usize {
        let prev = maps.last().unwrap();
        let n = prev.rows();
        let next = match m {
            // x with x*prev in m*D^cols, up to m*D^n
            Some(m) => {
                let stacked = prev.stack(&scaled_identity(d, prev.cols(), m));
                left_kernel(d, &stacked).left_columns(n)
            }
            None => left_kernel(d, prev),
        };
        maps.push(next);
    }
    maps
}

/// Invariant factors of `H_k(F_* ⊗ B)`, free part as zeros.
fn tensor_homology<D: EuclideanDomain>(
    d: &D,
    maps: &[Matrix<D::Elem>],
    g0: usize,
    b_rels: &Matrix<D::Elem>,
    gb: usize,
    k: usize,
) -> Vec<D::Elem> {
    // rank of F_j
    let rank = |j: usize| if j == 0 { g0 } else { maps[j - 1].rows() };
    let id_b = Matrix::identity(d, gb);
    // relations of F_j ⊗ B inside D^(rank_j * gb)
    let rels = |j: usize| Matrix::identity(d, rank(j)).kron(d, b_rels);
    let n = rank(k) * gb;

    let cycles = if k == 0 {
        Matrix::identity(d, n)
    } else {
        let boundary = maps[k - 1].kron(d, &id_b);
        left_kernel(d, &boundary.stack(&rels(k - 1))).left_columns(n)
    };
    let boundaries = maps[k].kron(d, &id_b).stack(&rels(k));
    subquotient(d, &cycles, &boundaries)
}

/// Invariant factors of `span(gens) / span(sub)` where `span(sub) ⊆ span(gens)`.
fn subquotient<D: EuclideanDomain>(d: &D, gens: &Matrix<D::Elem>, sub: &Matrix<D::Elem>) -> Vec<D::Elem> {
    let g = gens.rows();
    if g == 0 {
        return Vec::new();
    }
    // c with c*gens in span(sub); gens rows may be dependent, so this also
    // records syzygies among the generators.
    let rel = left_kernel(d, &gens.stack(sub)).left_columns(g);
    let s = smith_normal_form(d, &rel);
    let mut factors = s.invariant_factors();
    factors.truncate(s.rank);
    factors.extend(std::iter::repeat_n(d.zero(), g - s.rank));
    factors
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::syntax::parse_module;
    use crate::ring::{parse_ring, Repr};

    fn cyc(ring: &crate::Ring, n: i64) -> Presentation {
        Presentation::cyclic(ring, Repr::from(n)).unwrap()
    }

    #[test]
    fn tor1_of_four_and_six() {
        let z = parse_ring("Z").unwrap();
        let t = fg_tor_oracle(1, &cyc(&z, 4), &cyc(&z, 6)).unwrap();
        assert_eq!(t, parse_module(&z, "C(2,1)").unwrap());
    }

    #[test]
    fn coprime_tensor() {
        let z = parse_ring("Z").unwrap();
        assert!(fg_tor_oracle(0, &cyc(&z, 2), &cyc(&z, 3)).unwrap().is_zero());
    }

    #[test]
    fn periodic_over_z4() {
        let r = parse_ring("Z/4").unwrap();
        for k in 1..=4 {
            let t = fg_tor_oracle(k, &cyc(&r, 2), &cyc(&r, 2)).unwrap();
            assert_eq!(t, parse_module(&r, "C(2,1)").unwrap(), "k={k}");
        }
        assert_eq!(fg_tor_oracle(0, &cyc(&r, 2), &cyc(&r, 2)).unwrap(), parse_module(&r, "C(2,1)").unwrap());
    }

    #[test]
    fn tensor_with_free() {
        let z = parse_ring("Z").unwrap();
        let free = Presentation::new(&z, 2, vec![]).unwrap();
        assert_eq!(fg_tor_oracle(0, &free, &cyc(&z, 9)).unwrap(), parse_module(&z, "C(3,2)^2").unwrap());
        assert!(fg_tor_oracle(1, &free, &cyc(&z, 9)).unwrap().is_zero());
        assert_eq!(fg_tor_oracle(0, &free, &free).unwrap(), parse_module(&z, "R^4").unwrap());
    }

    #[test]
    fn dependent_relations_over_z() {
        let z = parse_ring("Z").unwrap();
        let a = Presentation::new(&z, 1, vec![vec![4.into()], vec![6.into()]]).unwrap();
        // A = Z/2, so Tor_1(A, Z/2) = Z/2 and Tor_2 = 0
        assert_eq!(fg_tor_oracle(1, &a, &cyc(&z, 2)).unwrap(), parse_module(&z, "C(2,1)").unwrap());
        assert!(fg_tor_oracle(2, &a, &cyc(&z, 2)).unwrap().is_zero());
    }

    #[test]
    fn polynomial_quotient() {
        let r = parse_ring("F2[x]/(x^3)").unwrap();
        let a = Presentation::from_module(&parse_module(&r, "C(x,1)").unwrap()).unwrap();
        let b = Presentation::from_module(&parse_module(&r, "C(x,2)").unwrap()).unwrap();
        assert_eq!(fg_tor_oracle(0, &a, &b).unwrap(), parse_module(&r, "C(x,1)").unwrap());
        assert_eq!(fg_tor_oracle(1, &a, &b).unwrap(), parse_module(&r, "C(x,1)").unwrap());
        // min(1, 2, 3-1, 3-2) = 1
        assert_eq!(fg_tor_oracle(3, &a, &b).unwrap(), parse_module(&r, "C(x,1)").unwrap());
    }

    #[test]
    fn budget_too_small() {
        let z = parse_ring("Z").unwrap();
        let r = fg_tor_oracle_with_budget(3, &cyc(&z, 2), &cyc(&z, 2), 2);
        assert!(matches!(r, Err(Error::StageBudget { .. })));
    }
}
