//! Exact root-system combinatorics: positive roots, reflections, the dominant
//! chamber, Weyl group orders.
//!
//! Roots are integer vectors in simple-root coordinates, weights are integer
//! vectors in fundamental-weight coordinates; the Cartan matrix converts
//! between the two. Everything is exact integer (or rational) arithmetic.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_rational::Rational64;
use num_traits::Zero;

use super::diagram::{Component, DynkinDiagram};
use crate::error::{Error, Result};

/// A vector in the root lattice, in simple-root coordinates. Ordering is
/// lexicographic on the coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RootVec(Vec<i64>);

impl RootVec {
    pub fn new(coords: Vec<i64>) -> Self {
        RootVec(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn negated(&self) -> RootVec {
        RootVec(self.0.iter().map(|c| -c).collect())
    }

    pub fn plus(&self, other: &RootVec) -> RootVec {
        RootVec(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&c| c >= 0) && self.0.iter().any(|&c| c > 0)
    }

    /// Indices of the simple roots appearing with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, _)| i)
    }

    fn simple(rank: usize, i: usize) -> Self {
        let mut v = vec![0; rank];
        v[i] = 1;
        RootVec(v)
    }
}

/// A vector in the weight lattice, in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight(Vec<i64>);

impl Weight {
    pub fn new(coords: Vec<i64>) -> Self {
        Weight(coords)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    /// Half the sum of positive roots: the all-ones vector in
    /// fundamental-weight coordinates.
    pub fn rho(rank: usize) -> Self {
        Weight(vec![1; rank])
    }

    pub fn plus(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn minus(&self, other: &Weight) -> Weight {
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }
}

/// A word in the simple reflections, listed in application order: the first
/// entry acts first.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeylWord {
    pub word: Vec<usize>,
}

impl WeylWord {
    /// Applies the word to a vector in simple-root coordinates.
    pub fn apply_to_root(&self, system: &RootSystem, v: &RootVec) -> RootVec {
        let mut v = v.clone();
        for &i in &self.word {
            v = system.reflect_simple_root(i, &v);
        }
        v
    }

    /// Applies the word to a vector in fundamental-weight coordinates.
    pub fn apply_to_weight(&self, system: &RootSystem, w: &Weight) -> Weight {
        let mut w = w.clone();
        for &i in &self.word {
            w = system.reflect_simple_weight(i, &w);
        }
        w
    }

    /// Length of the group element: the number of positive roots sent to
    /// negative roots, counted by direct action on the root set.
    pub fn length_by_inversions(&self, system: &RootSystem) -> usize {
        system
            .positive_roots()
            .iter()
            .filter(|r| !self.apply_to_root(system, r).is_positive())
            .count()
    }
}

/// Result of transporting a weight to the dominant chamber.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantInfo {
    /// The dominant-chamber representative.
    pub dominant: Weight,
    /// Length of the minimal transporting element.
    pub length: usize,
    /// True iff some pairing with a coroot vanishes (the Weyl orbit touches a
    /// wall).
    pub singular: bool,
    /// The transporting word, first reflection first.
    pub word: WeylWord,
}

/// The finite root system of a Dynkin diagram, with exact integer Cartan data.
#[derive(Debug)]
pub struct RootSystem {
    diagram: DynkinDiagram,
    rank: usize,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    cartan: Vec<Vec<i64>>,
    /// Positive roots, sorted by (height, lexicographic).
    positive: Vec<RootVec>,
    /// All roots, positive and negative.
    all: BTreeSet<RootVec>,
    /// Invariant symmetric form `form[i][j] = (alpha_i, alpha_j)`, normalized
    /// so short roots in each component have squared length 2.
    form: Vec<Vec<i64>>,
    /// `d[i] = (alpha_i, alpha_i) / 2`.
    half_lengths: Vec<i64>,
}

/// Builds the full root system of a finite-type diagram: positive-root set by
/// root strings, symmetrized form, classification-backed sanity counts.
#[allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra
pub fn build_root_system(diagram: &DynkinDiagram) -> Result<Arc<RootSystem>> {
    let rank = diagram.rank();
    let cartan = diagram.cartan_matrix();
    let half_lengths = symmetrize(diagram, &cartan)?;
    let mut form = vec![vec![0i64; rank]; rank];
    for (i, row) in form.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = half_lengths[j] * cartan[i][j];
            if *cell != half_lengths[i] * cartan[j][i] {
                return Err(Error::Internal(
                    "symmetrization of the Cartan matrix failed".into(),
                ));
            }
        }
    }

    // Close the simple roots under root strings, level by level in height.
    let mut positive: Vec<RootVec> = (0..rank).map(|i| RootVec::simple(rank, i)).collect();
    let mut known: BTreeSet<RootVec> = positive.iter().cloned().collect();
    let mut frontier = positive.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for beta in &frontier {
            for i in 0..rank {
                let alpha = RootVec::simple(rank, i);
                if *beta == alpha {
                    continue;
                }
                // Walk down the alpha_i-string through beta.
                let mut down = beta.clone();
                let mut p = 0i64;
                loop {
                    let candidate = RootVec(
                        down.0
                            .iter()
                            .enumerate()
                            .map(|(j, &c)| if j == i { c - 1 } else { c })
                            .collect(),
                    );
                    if known.contains(&candidate) {
                        p += 1;
                        down = candidate;
                    } else {
                        break;
                    }
                }
                let pairing: i64 = (0..rank).map(|j| beta.0[j] * cartan[j][i]).sum();
                if p - pairing >= 1 {
                    let up = RootVec(
                        beta.0
                            .iter()
                            .enumerate()
                            .map(|(j, &c)| if j == i { c + 1 } else { c })
                            .collect(),
                    );
                    if known.insert(up.clone()) {
                        next.push(up);
                    }
                }
            }
        }
        positive.extend(next.iter().cloned());
        frontier = next;
    }
    positive.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));

    let expected: usize = diagram
        .components()
        .iter()
        .map(Component::positive_root_count)
        .sum();
    if positive.len() != expected {
        return Err(Error::Internal(format!(
            "positive root count {} does not match the classical count {}",
            positive.len(),
            expected
        )));
    }

    let mut all: BTreeSet<RootVec> = positive.iter().cloned().collect();
    all.extend(positive.iter().map(RootVec::negated));

    Ok(Arc::new(RootSystem {
        diagram: diagram.clone(),
        rank,
        cartan,
        positive,
        all,
        form,
        half_lengths,
    }))
}

/// Finds `d_i = (alpha_i, alpha_i)/2` with `d_i a_ji = d_j a_ij`, normalized
/// so the minimum over each component is 1.
fn symmetrize(diagram: &DynkinDiagram, cartan: &[Vec<i64>]) -> Result<Vec<i64>> {
    let rank = diagram.rank();
    let mut d = vec![Rational64::zero(); rank];
    for comp in diagram.components() {
        let mut stack = vec![comp.nodes[0]];
        d[comp.nodes[0]] = Rational64::from_integer(1);
        while let Some(i) = stack.pop() {
            for &j in &comp.nodes {
                if cartan[i][j] != 0 && i != j && d[j].is_zero() {
                    // d_j = d_i * a_ji / a_ij
                    d[j] = d[i] * Rational64::new(cartan[j][i], cartan[i][j]);
                    stack.push(j);
                }
            }
        }
        let min = comp
            .nodes
            .iter()
            .map(|&i| d[i])
            .min()
            .expect("nonempty component");
        for &i in &comp.nodes {
            d[i] /= min;
        }
    }
    d.into_iter()
        .map(|r| {
            if r.is_integer() {
                Ok(r.to_integer())
            } else {
                Err(Error::Internal(
                    "non-integral root length normalization".into(),
                ))
            }
        })
        .collect()
}

impl RootSystem {
    pub fn diagram(&self) -> &DynkinDiagram {
        &self.diagram
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn symmetric_form(&self) -> &[Vec<i64>] {
        &self.form
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive
    }

    pub fn is_root(&self, v: &RootVec) -> bool {
        self.all.contains(v)
    }

    pub fn all_roots(&self) -> impl Iterator<Item = &RootVec> {
        self.all.iter()
    }

    /// Bilinear form of two root-lattice vectors, twice the usual value to
    /// stay integral: returns `2 (u, v)` is not needed; the normalized form is
    /// already integral, so this is exact.
    pub fn form_value(&self, u: &RootVec, v: &RootVec) -> i64 {
        let mut acc = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += u.0[i] * self.form[i][j] * v.0[j];
            }
        }
        acc
    }

    /// `<v, alpha^vee> = 2 (v, alpha) / (alpha, alpha)` for a root `alpha` and
    /// a root-lattice vector `v`; exact and integral.
    pub fn pairing_with_coroot(&self, v: &RootVec, alpha: &RootVec) -> Result<i64> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.0.clone()));
        }
        let num = 2 * self.form_value(v, alpha);
        let den = self.form_value(alpha, alpha);
        if num % den != 0 {
            return Err(Error::Internal(
                "non-integral coroot pairing on the root lattice".into(),
            ));
        }
        Ok(num / den)
    }

    /// The coroot `alpha^vee` in simple-coroot coordinates; integral for every
    /// root.
    pub fn coroot_coords(&self, alpha: &RootVec) -> Result<Vec<i64>> {
        if !self.is_root(alpha) {
            return Err(Error::NotARoot(alpha.0.clone()));
        }
        let d_alpha = self.form_value(alpha, alpha) / 2;
        (0..self.rank)
            .map(|j| {
                let num = alpha.0[j] * self.half_lengths[j];
                if num % d_alpha != 0 {
                    Err(Error::Internal("non-integral coroot coordinate".into()))
                } else {
                    Ok(num / d_alpha)
                }
            })
            .collect()
    }

    /// `<w, alpha^vee>` for a weight-lattice vector `w`.
    pub fn weight_pairing_with_coroot(&self, w: &Weight, alpha: &RootVec) -> Result<i64> {
        let coroot = self.coroot_coords(alpha)?;
        Ok(w.0.iter().zip(&coroot).map(|(a, b)| a * b).sum())
    }

    /// Reflection `s_alpha(v) = v - <v, alpha^vee> alpha` for a root `alpha`
    /// and a root-lattice vector `v`.
    pub fn reflect(&self, alpha: &RootVec, v: &RootVec) -> Result<RootVec> {
        let pairing = self.pairing_with_coroot(v, alpha)?;
        Ok(RootVec(
            v.0.iter()
                .zip(&alpha.0)
                .map(|(c, a)| c - pairing * a)
                .collect(),
        ))
    }

    /// Simple reflection on root coordinates.
    pub fn reflect_simple_root(&self, i: usize, v: &RootVec) -> RootVec {
        let pairing: i64 = (0..self.rank).map(|j| v.0[j] * self.cartan[j][i]).sum();
        let mut out = v.0.clone();
        out[i] -= pairing;
        RootVec(out)
    }

    /// Simple reflection on fundamental-weight coordinates.
    pub fn reflect_simple_weight(&self, i: usize, w: &Weight) -> Weight {
        let c = w.0[i];
        let mut out = w.0.clone();
        for (j, o) in out.iter_mut().enumerate() {
            *o -= c * self.cartan[i][j];
        }
        Weight(out)
    }

    /// Transports a weight into the dominant chamber, reflecting on the
    /// smallest negative coordinate first; deterministic.
    pub fn to_dominant(&self, w: &Weight) -> DominantInfo {
        let mut v = w.clone();
        let mut word = Vec::new();
        while let Some(i) = v.0.iter().position(|&c| c < 0) {
            v = self.reflect_simple_weight(i, &v);
            word.push(i);
        }
        let singular = v.0.contains(&0);
        DominantInfo {
            length: word.len(),
            singular,
            word: WeylWord { word },
            dominant: v,
        }
    }

    /// Product of the classical per-component Weyl group orders.
    pub fn weyl_group_order(&self) -> u64 {
        self.diagram
            .components()
            .iter()
            .map(Component::weyl_order)
            .product()
    }

    /// Number of positive roots supported entirely on the given node subset
    /// (the positive roots of the corresponding standard Levi factor).
    pub fn levi_positive_count(&self, nodes: &BTreeSet<usize>) -> usize {
        self.positive
            .iter()
            .filter(|r| r.support().all(|i| nodes.contains(&i)))
            .count()
    }

    /// Renders a root as a signed combination of node names, e.g. `a1+a2`.
    pub fn root_name(&self, v: &RootVec) -> String {
        let mut out = String::new();
        for (i, &c) in v.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let name = &self.diagram.nodes()[i];
            let mag = c.abs();
            if c > 0 && !out.is_empty() {
                out.push('+');
            } else if c < 0 {
                out.push('-');
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(name);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root system of {} ({} positive roots)",
            self.diagram,
            self.positive.len()
        )
    }
}
