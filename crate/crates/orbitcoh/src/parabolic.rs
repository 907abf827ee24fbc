//! Parabolic subalgebras as crossed diagrams, minimal-orbit classification,
//! and the Levi-foliation reduction to a totally real base with a compact
//! complex fiber.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::bbw::FlagDescriptor;
use crate::error::{Error, Result};
use crate::realform::RootInvolution;
use crate::rootsys::{RootSystem, RootVec};

/// A standard parabolic subalgebra: the fixed Borel plus the negative root
/// spaces supported on the uncrossed nodes.
#[derive(Debug, Clone)]
pub struct CrossedDiagram {
    system: Arc<RootSystem>,
    crossed: BTreeSet<usize>,
}

impl CrossedDiagram {
    pub fn new(system: Arc<RootSystem>, crossed: BTreeSet<usize>) -> Result<Self> {
        if let Some(&bad) = crossed.iter().find(|&&i| i >= system.rank()) {
            return Err(Error::InvalidDiagram(format!(
                "crossed node index {bad} out of range for rank {}",
                system.rank()
            )));
        }
        Ok(CrossedDiagram { system, crossed })
    }

    pub fn from_names(system: Arc<RootSystem>, names: &[String]) -> Result<Self> {
        let mut crossed = BTreeSet::new();
        let mut errors = Vec::new();
        for name in names {
            match system.diagram().node_index(name) {
                Some(i) => {
                    crossed.insert(i);
                }
                None => errors.push(format!("unknown crossed node `{name}`")),
            }
        }
        if !errors.is_empty() {
            return Err(Error::InvalidInput(errors));
        }
        CrossedDiagram::new(system, crossed)
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    pub fn crossed(&self) -> &BTreeSet<usize> {
        &self.crossed
    }

    pub fn uncrossed(&self) -> BTreeSet<usize> {
        (0..self.system.rank())
            .filter(|i| !self.crossed.contains(i))
            .collect()
    }

    pub fn crossed_names(&self) -> Vec<String> {
        self.crossed
            .iter()
            .map(|&i| self.system.diagram().nodes()[i].clone())
            .collect()
    }
}

impl fmt::Display for CrossedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} crossed {{{}}}",
            self.system.diagram().type_name(),
            self.crossed_names().join(", ")
        )
    }
}

/// The set of roots whose root spaces lie in a parabolic subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParabolicRootSet {
    roots: BTreeSet<RootVec>,
}

impl ParabolicRootSet {
    pub fn roots(&self) -> &BTreeSet<RootVec> {
        &self.roots
    }

    pub fn contains(&self, v: &RootVec) -> bool {
        self.roots.contains(v)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// First pair (in lexicographic order) whose sum is a root outside the
    /// set, if closure under root addition fails.
    pub fn closure_witness(&self, system: &RootSystem) -> Option<(RootVec, RootVec)> {
        let list: Vec<&RootVec> = self.roots.iter().collect();
        for (i, a) in list.iter().enumerate() {
            for b in &list[i..] {
                let sum = a.plus(b);
                if system.is_root(&sum) && !self.roots.contains(&sum) {
                    return Some(((*a).clone(), (*b).clone()));
                }
            }
        }
        None
    }

    pub fn union(&self, other: &ParabolicRootSet) -> ParabolicRootSet {
        ParabolicRootSet {
            roots: self.roots.union(&other.roots).cloned().collect(),
        }
    }
}

/// All positive roots plus the negative roots supported on uncrossed nodes.
pub fn root_set_of(q: &CrossedDiagram) -> ParabolicRootSet {
    let system = q.system();
    let uncrossed = q.uncrossed();
    let mut roots: BTreeSet<RootVec> = system.positive_roots().iter().cloned().collect();
    for r in system.positive_roots() {
        if r.support().all(|i| uncrossed.contains(&i)) {
            roots.insert(r.negated());
        }
    }
    ParabolicRootSet { roots }
}

/// Image of a parabolic root set under a validated involution; the image is
/// asserted closed under root addition (failure signals an invalid map).
pub fn conjugate_root_set(
    set: &ParabolicRootSet,
    sigma: &RootInvolution,
    system: &RootSystem,
) -> Result<ParabolicRootSet> {
    let mut roots = BTreeSet::new();
    for r in &set.roots {
        let image = sigma.apply(r);
        if !system.is_root(&image) {
            return Err(Error::Internal(format!(
                "conjugate of root {} is not a root; the involution is invalid",
                system.root_name(r)
            )));
        }
        roots.insert(image);
    }
    let out = ParabolicRootSet { roots };
    if let Some((a, b)) = out.closure_witness(system) {
        return Err(Error::Internal(format!(
            "conjugate root set is not closed under addition ({} + {}); the \
             involution is invalid",
            system.root_name(&a),
            system.root_name(&b)
        )));
    }
    Ok(out)
}

/// How a minimal orbit sits inside its flag manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitKind {
    TotallyReal,
    LeviFlat,
    Generic,
}

impl fmt::Display for OrbitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            OrbitKind::TotallyReal => "totally_real",
            OrbitKind::LeviFlat => "levi_flat",
            OrbitKind::Generic => "generic",
        };
        write!(f, "{name}")
    }
}

/// Classification outcome; generic orbits carry the first closure-violating
/// root pair as a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitClassification {
    pub kind: OrbitKind,
    pub witness: Option<(RootVec, RootVec)>,
}

/// Classifies the minimal orbit: totally real when the conjugate parabolic
/// root set equals the original, Levi-flat when their union is closed under
/// root addition, generic otherwise.
pub fn classify_orbit(q: &CrossedDiagram, sigma: &RootInvolution) -> Result<OrbitClassification> {
    let system = q.system();
    let r_q = root_set_of(q);
    let r_conj = conjugate_root_set(&r_q, sigma, system)?;
    if r_q == r_conj {
        return Ok(OrbitClassification {
            kind: OrbitKind::TotallyReal,
            witness: None,
        });
    }
    let union = r_q.union(&r_conj);
    match union.closure_witness(system) {
        None => Ok(OrbitClassification {
            kind: OrbitKind::LeviFlat,
            witness: None,
        }),
        Some(pair) => Ok(OrbitClassification {
            kind: OrbitKind::Generic,
            witness: Some(pair),
        }),
    }
}

/// The Levi-foliation reduction: the enlarged parabolic, the dimension of the
/// totally real base, and the compact complex fiber flag manifold.
#[derive(Debug, Clone)]
pub struct FibrationData {
    q_prime: CrossedDiagram,
    base_dim: usize,
    fiber: FlagDescriptor,
    fiber_dim: usize,
}

impl FibrationData {
    pub fn q_prime(&self) -> &CrossedDiagram {
        &self.q_prime
    }

    /// Complex dimension of the Stein base (equals the real dimension of the
    /// totally real base orbit).
    pub fn base_dim(&self) -> usize {
        self.base_dim
    }

    pub fn fiber(&self) -> &FlagDescriptor {
        &self.fiber
    }

    pub fn fiber_dim(&self) -> usize {
        self.fiber_dim
    }
}

/// Computes the reduction for totally real or Levi-flat orbits; generic
/// orbits are rejected with their closure witness.
pub fn fundamental_reduction(
    q: &CrossedDiagram,
    sigma: &RootInvolution,
) -> Result<FibrationData> {
    let system = q.system();
    let classification = classify_orbit(q, sigma)?;
    if let OrbitKind::Generic = classification.kind {
        let (a, b) = classification.witness.expect("generic carries a witness");
        return Err(Error::GenericOrbit {
            a: a.coords().to_vec(),
            b: b.coords().to_vec(),
        });
    }

    let r_q = root_set_of(q);
    let r_conj = conjugate_root_set(&r_q, sigma, system)?;
    let union = r_q.union(&r_conj);

    // Crossed nodes of the enlarged parabolic: simple roots whose negative is
    // missing from the union.
    let crossed_prime: BTreeSet<usize> = (0..system.rank())
        .filter(|&i| {
            let mut v = vec![0i64; system.rank()];
            v[i] = -1;
            !union.contains(&RootVec::new(v))
        })
        .collect();
    let q_prime = CrossedDiagram::new(Arc::clone(system), crossed_prime)?;

    // The union must be exactly the root set of a standard parabolic.
    if root_set_of(&q_prime) != union {
        return Err(Error::Internal(
            "union of the parabolic root set with its conjugate is not a \
             standard parabolic root set"
                .into(),
        ));
    }
    // The enlarged parabolic must be stable under the involution (this is the
    // totally real condition for the base).
    let conj_union = conjugate_root_set(&union, sigma, system)?;
    if conj_union != union {
        return Err(Error::Internal(
            "enlarged parabolic is not stable under the involution".into(),
        ));
    }
    if classification.kind == OrbitKind::TotallyReal && q_prime.crossed() != q.crossed() {
        return Err(Error::Internal(
            "totally real orbit must have an unchanged parabolic".into(),
        ));
    }

    let base_dim =
        system.positive_roots().len() - system.levi_positive_count(&q_prime.uncrossed());

    // Fiber: components of the Levi diagram of the enlarged parabolic that
    // contain at least one node crossed in the original parabolic; components
    // without one contribute single-point factors and are dropped, so the
    // descriptor is empty exactly in the totally real case.
    let (levi_diagram, levi_nodes) = system.diagram().induced(&q_prime.uncrossed())?;
    let mut kept: BTreeSet<usize> = BTreeSet::new();
    for comp in levi_diagram.components() {
        if comp.nodes.iter().any(|&i| q.crossed.contains(&levi_nodes[i])) {
            kept.extend(comp.nodes.iter().map(|&i| levi_nodes[i]));
        }
    }
    let (fiber_diagram, fiber_nodes) = system.diagram().induced(&kept)?;
    let fiber_crossed: BTreeSet<usize> = (0..fiber_diagram.rank())
        .filter(|&i| q.crossed.contains(&fiber_nodes[i]))
        .collect();
    let fiber = FlagDescriptor::new(fiber_diagram, fiber_crossed)?;

    let fiber_dim = fiber.dimension();
    // Exhaustive cross-check: the fiber dimension is the number of roots the
    // enlargement added.
    if fiber_dim != union.len() - r_q.len() {
        return Err(Error::Internal(format!(
            "fiber dimension {} does not match the added root count {}",
            fiber_dim,
            union.len() - r_q.len()
        )));
    }

    Ok(FibrationData {
        q_prime,
        base_dim,
        fiber,
        fiber_dim,
    })
}

/// One warning per connected diagram component without a crossed node: the
/// parabolic then contains that whole simple factor and the action on the
/// orbit is not effective.
pub fn effectiveness_check(q: &CrossedDiagram) -> Vec<String> {
    let diagram = q.system().diagram();
    diagram
        .components()
        .iter()
        .filter(|comp| comp.nodes.iter().all(|i| !q.crossed.contains(i)))
        .map(|comp| {
            let names: Vec<&str> = {
                let mut sorted = comp.nodes.clone();
                sorted.sort_unstable();
                sorted
                    .iter()
                    .map(|&i| diagram.nodes()[i].as_str())
                    .collect()
            };
            format!(
                "component [{}] (type {}) has no crossed node; the parabolic \
                 contains this simple factor and the action is not effective",
                names.join(", "),
                comp.type_name()
            )
        })
        .collect()
}
