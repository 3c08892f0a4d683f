//! Block morphisms between tame modules built from canonical generator maps.

use std::fmt;

use super::{Atom, TameModule};
use crate::error::{Error, Result};
use crate::ring::{EuclideanDomain, PrimeSpec, Repr, RingSpec};
use crate::tor::hom_is_zero;
use crate::with_domain;

/// A canonical map between two atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Identity,
    /// Multiplication by a ring element.
    Scalar(Repr),
    /// `C(p,e) -> C(p,f)` for `e <= f`, multiplication by `p^(f-e)`.
    CyclicInclusion { prime: PrimeSpec, from: u32, to: u32 },
    /// `C(p,f) -> C(p,e)` for `e <= f`.
    CyclicProjection { prime: PrimeSpec, from: u32, to: u32 },
    /// `C(p,e) -> Pr(p)`.
    CyclicToPrufer { prime: PrimeSpec, exponent: u32 },
    /// `R -> C(p,e)`.
    FreeToCyclic { prime: PrimeSpec, exponent: u32 },
    /// `R -> K`.
    FreeToFraction,
    /// `K -> K/R -> Pr(p)`.
    FractionToPrufer { prime: PrimeSpec },
}

impl Generator {
    /// Codomain atom when `self` accepts `input` as its domain.
    pub fn apply(&self, input: &Atom) -> Option<Atom> {
        use Generator::*;
        match (self, input) {
            (Identity | Scalar(_), a) => Some(a.clone()),
            (CyclicInclusion { prime, from, to }, Atom::Cyclic(p, e)) if p == prime && e == from && from <= to => {
                Some(Atom::Cyclic(p.clone(), *to))
            }
            (CyclicProjection { prime, from, to }, Atom::Cyclic(p, e)) if p == prime && e == from && to <= from => {
                Some(Atom::Cyclic(p.clone(), *to))
            }
            (CyclicToPrufer { prime, exponent }, Atom::Cyclic(p, e)) if p == prime && e == exponent => {
                Some(Atom::Prufer(p.clone()))
            }
            (FreeToCyclic { prime, exponent }, Atom::Free) => Some(Atom::Cyclic(prime.clone(), *exponent)),
            (FreeToFraction, Atom::Free) => Some(Atom::FractionField),
            (FractionToPrufer { prime }, Atom::FractionField) => Some(Atom::Prufer(prime.clone())),
            _ => None,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Generator::*;
        match self {
            Identity => write!(f, "id"),
            Scalar(r) => write!(f, "*{r}"),
            CyclicInclusion { prime, from, to } => write!(f, "inc{prime}[{from}->{to}]"),
            CyclicProjection { prime, from, to } => write!(f, "proj{prime}[{from}->{to}]"),
            CyclicToPrufer { prime, exponent } => write!(f, "C{prime}^{exponent}->Pr"),
            FreeToCyclic { prime, exponent } => write!(f, "R->C{prime}^{exponent}"),
            FreeToFraction => write!(f, "R->K"),
            FractionToPrufer { prime } => write!(f, "K->Pr{prime}"),
        }
    }
}

/// One matrix entry: zero or a composite of generators applied left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Block {
    Zero,
    Chain(Vec<Generator>),
}

impl Block {
    pub fn single(g: Generator) -> Self {
        Block::Chain(vec![g])
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Block::Zero)
    }

    /// Codomain reached from `input`, or `None` if the chain does not compose.
    pub fn codomain(&self, input: &Atom) -> Option<Atom> {
        match self {
            Block::Zero => None,
            Block::Chain(gens) => gens.iter().try_fold(input.clone(), |a, g| g.apply(&a)),
        }
    }

    /// Whether the block is the zero map on `input` (as opposed to merely declared nonzero).
    ///
    /// Scalar factors are tracked exactly: a scalar divisible by `p^e` kills `C(p,e)`.
    pub fn acts_as_zero(&self, ring: &RingSpec, input: &Atom) -> bool {
        let Block::Chain(gens) = self else { return true };
        let mut current = input.clone();
        for g in gens {
            if let (Generator::Scalar(r), Atom::Cyclic(p, e)) = (g, &current) {
                let kills = with_domain!(ring, |d| {
                    match (d.unwrap(r), p.generator().and_then(|g| d.unwrap(g))) {
                        (Some(r), Some(p)) => d.divides(&d.pow(&p, *e), &r),
                        _ => false,
                    }
                });
                if kills {
                    return true;
                }
            }
            if let Generator::Scalar(r) = g {
                let zero = with_domain!(ring, |d| d.unwrap(r).is_some_and(|r| d.is_zero(&r)));
                if zero {
                    return true;
                }
            }
            match g.apply(&current) {
                Some(next) => current = next,
                None => return true,
            }
        }
        false
    }
}

/// A map `source -> target` given blockwise on atom instances.
///
/// `blocks[i][j]` is the component from the `i`-th instance of the source to
/// the `j`-th instance of the target, instances in normal-form order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    source: TameModule,
    target: TameModule,
    blocks: Vec<Vec<Block>>,
}

impl MorphismSpec {
    pub fn new(source: TameModule, target: TameModule, blocks: Vec<Vec<Block>>) -> Result<Self> {
        source.check_same_ring(&target)?;
        let src = source.instances();
        let tgt = target.instances();
        if blocks.len() != src.len() || blocks.iter().any(|row| row.len() != tgt.len()) {
            return Err(Error::InvalidMorphism(format!(
                "block matrix must be {}x{}",
                src.len(),
                tgt.len()
            )));
        }
        let ring = source.ring();
        for (i, row) in blocks.iter().enumerate() {
            for (j, block) in row.iter().enumerate() {
                if block.is_zero() {
                    continue;
                }
                let a = &src[i];
                let b = &tgt[j];
                let reached = block.codomain(a).ok_or_else(|| {
                    Error::InvalidMorphism(format!(
                        "block ({i},{j}) does not compose from {}",
                        a.render(ring)
                    ))
                })?;
                if reached != *b {
                    return Err(Error::InvalidMorphism(format!(
                        "block ({i},{j}) lands in {} instead of {}",
                        reached.render(ring),
                        b.render(ring)
                    )));
                }
                if hom_is_zero(ring, a, b)? {
                    return Err(Error::InvalidMorphism(format!(
                        "nonzero block declared from {} to {}, where every map is zero",
                        a.render(ring),
                        b.render(ring)
                    )));
                }
                if let Block::Chain(gens) = block {
                    for g in gens {
                        if let Generator::Scalar(r) = g {
                            ring.reduce(r)?;
                        }
                    }
                }
            }
        }
        Ok(MorphismSpec { source, target, blocks })
    }

    pub fn identity(m: &TameModule) -> Self {
        Self::scalar_with(m, Generator::Identity)
    }

    /// Multiplication by `r` on every atom.
    pub fn scalar(m: &TameModule, r: Repr) -> Result<Self> {
        m.ring().reduce(&r)?;
        Ok(Self::scalar_with(m, Generator::Scalar(r)))
    }

    fn scalar_with(m: &TameModule, g: Generator) -> Self {
        let n = m.instances().len();
        let blocks = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Block::single(g.clone()) } else { Block::Zero })
                    .collect()
            })
            .collect();
        MorphismSpec { source: m.clone(), target: m.clone(), blocks }
    }

    pub fn source(&self) -> &TameModule {
        &self.source
    }

    pub fn target(&self) -> &TameModule {
        &self.target
    }

    pub fn blocks(&self) -> &[Vec<Block>] {
        &self.blocks
    }
}
