//! Cohomology of compact flag manifolds: Hodge numbers via minimal coset
//! representatives, homogeneous line bundles via the dotted Weyl action, and
//! the Weyl dimension formula in exact arithmetic.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rootsys::{build_root_system, DynkinDiagram, RootSystem, Weight};

/// A compact flag manifold: the diagram of the acting semisimple group plus
/// the crossed nodes defining the parabolic isotropy.
#[derive(Debug, Clone)]
pub struct FlagDescriptor {
    system: Arc<RootSystem>,
    crossed: BTreeSet<usize>,
}

impl FlagDescriptor {
    pub fn new(diagram: DynkinDiagram, crossed: BTreeSet<usize>) -> Result<Self> {
        if let Some(&bad) = crossed.iter().find(|&&i| i >= diagram.rank()) {
            return Err(Error::InvalidDiagram(format!(
                "crossed node index {bad} out of range for rank {}",
                diagram.rank()
            )));
        }
        let system = build_root_system(&diagram)?;
        Ok(FlagDescriptor { system, crossed })
    }

    /// The one-point flag manifold.
    pub fn point() -> Self {
        FlagDescriptor {
            system: build_root_system(&DynkinDiagram::empty()).expect("empty diagram"),
            crossed: BTreeSet::new(),
        }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn diagram(&self) -> &DynkinDiagram {
        self.system.diagram()
    }

    pub fn crossed(&self) -> &BTreeSet<usize> {
        &self.crossed
    }

    pub fn uncrossed(&self) -> BTreeSet<usize> {
        (0..self.system.rank())
            .filter(|i| !self.crossed.contains(i))
            .collect()
    }

    /// Complex dimension: positive roots outside the Levi of the parabolic.
    pub fn dimension(&self) -> usize {
        self.system.positive_roots().len() - self.system.levi_positive_count(&self.uncrossed())
    }

    /// Characteristic weight: 1 on crossed nodes, 0 on uncrossed nodes. Its
    /// Weyl orbit is in bijection with the cosets of the parabolic Weyl
    /// subgroup.
    fn characteristic_weight(&self) -> Weight {
        Weight::new(
            (0..self.system.rank())
                .map(|i| i64::from(self.crossed.contains(&i)))
                .collect(),
        )
    }
}

impl fmt::Display for FlagDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.diagram().nodes();
        let crossed: Vec<&str> = self.crossed.iter().map(|&i| names[i].as_str()).collect();
        write!(
            f,
            "{} crossed {{{}}}",
            self.diagram().type_name(),
            crossed.join(", ")
        )
    }
}

/// Counts of minimal-length coset representatives for the Weyl group of the
/// descriptor's diagram modulo the Weyl subgroup of the uncrossed nodes,
/// indexed by length. Computed by orbit enumeration of the characteristic
/// weight, with lengths read off as inversion counts.
pub fn minimal_coset_lengths(flag: &FlagDescriptor) -> Vec<u64> {
    let system = flag.system();
    let dim = flag.dimension();
    let mut counts = vec![0u64; dim + 1];
    let coroots: Vec<Vec<i64>> = system
        .positive_roots()
        .iter()
        .map(|r| system.coroot_coords(r).expect("positive root has a coroot"))
        .collect();
    let inversions = |w: &Weight| -> usize {
        coroots
            .iter()
            .filter(|c| {
                let pairing: i64 = w.coords().iter().zip(c.iter()).map(|(a, b)| a * b).sum();
                pairing < 0
            })
            .count()
    };

    let start = flag.characteristic_weight();
    let mut seen: BTreeSet<Weight> = [start.clone()].into_iter().collect();
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        counts[inversions(&w)] += 1;
        for i in 0..system.rank() {
            let next = system.reflect_simple_weight(i, &w);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    counts
}

/// Hodge number `h^{p,q}` of the flag manifold: zero off the diagonal, the
/// number of length-`p` minimal coset representatives on it.
pub fn hodge_number(flag: &FlagDescriptor, p: usize, q: usize) -> u64 {
    if p != q {
        return 0;
    }
    minimal_coset_lengths(flag).get(p).copied().unwrap_or(0)
}

/// Dimension of the irreducible representation with dominant highest weight,
/// by the Weyl dimension formula in exact rational arithmetic; the result is
/// asserted integral.
pub fn weyl_dimension(system: &RootSystem, highest: &Weight) -> Result<u64> {
    if !highest.is_dominant() {
        return Err(Error::NotDominant(highest.coords().to_vec()));
    }
    let rho = Weight::rho(system.rank());
    let shifted = highest.plus(&rho);
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for alpha in system.positive_roots() {
        let coroot = system.coroot_coords(alpha)?;
        let pair = |w: &Weight| -> i64 {
            w.coords()
                .iter()
                .zip(coroot.iter())
                .map(|(a, b)| a * b)
                .sum()
        };
        num *= BigInt::from(pair(&shifted));
        den *= BigInt::from(pair(&rho));
    }
    if den.is_zero() || (&num % &den) != BigInt::zero() {
        return Err(Error::Internal(
            "Weyl dimension formula produced a non-integral value".into(),
        ));
    }
    let dim = num / den;
    if dim.is_negative() || dim.is_zero() {
        return Err(Error::Internal(
            "Weyl dimension formula produced a non-positive value".into(),
        ));
    }
    dim.to_u64()
        .ok_or_else(|| Error::Overflow("representation dimension exceeds u64".into()))
}

/// Nonzero cohomology of a homogeneous line bundle, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbwEntry {
    pub dimension: u64,
    pub highest_weight: Weight,
}

/// Cohomology of a homogeneous line bundle on a flag manifold: zero in every
/// degree, or an irreducible in exactly one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BbwResult {
    pub by_degree: BTreeMap<usize, BbwEntry>,
}

impl BbwResult {
    pub fn zero() -> Self {
        BbwResult {
            by_degree: BTreeMap::new(),
        }
    }

    pub fn dimension_at(&self, q: usize) -> u64 {
        self.by_degree.get(&q).map_or(0, |e| e.dimension)
    }

    pub fn nonzero_degree(&self) -> Option<usize> {
        self.by_degree.keys().next().copied()
    }
}

/// Cohomology of the homogeneous bundle of weight `lambda` (in the
/// descriptor's fundamental-weight coordinates) by the dotted Weyl action:
/// zero everywhere if `lambda + rho` is singular, otherwise concentrated in
/// the degree given by the transporting length.
pub fn bbw_line_bundle(flag: &FlagDescriptor, lambda: &Weight) -> Result<BbwResult> {
    let system = flag.system();
    if lambda.coords().len() != system.rank() {
        return Err(Error::InvalidInput(vec![format!(
            "bundle weight has {} coordinates but the fiber has rank {}",
            lambda.coords().len(),
            system.rank()
        )]));
    }
    if let Some(&i) = flag
        .uncrossed()
        .iter()
        .find(|&&i| lambda.coords()[i] < 0)
    {
        return Err(Error::InvalidInput(vec![format!(
            "bundle weight is not dominant for the fiber Levi: coordinate on \
             uncrossed node `{}` is negative",
            flag.diagram().nodes()[i]
        )]));
    }
    let shifted = lambda.plus(&Weight::rho(system.rank()));
    let info = system.to_dominant(&shifted);
    if info.singular {
        return Ok(BbwResult::zero());
    }
    let highest = info.dominant.minus(&Weight::rho(system.rank()));
    let dimension = weyl_dimension(system, &highest)?;
    let mut by_degree = BTreeMap::new();
    by_degree.insert(
        info.length,
        BbwEntry {
            dimension,
            highest_weight: highest,
        },
    );
    Ok(BbwResult { by_degree })
}
