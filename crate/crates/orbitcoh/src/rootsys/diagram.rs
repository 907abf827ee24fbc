//! Dynkin diagrams of finite type and their classification.
//!
//! A diagram is a list of named nodes plus bonds. Bonds of multiplicity 2 or 3
//! carry an arrow; we record the arrow by naming the *short*-root endpoint.
//! Every connected component must match one of the finite families A-G; affine
//! and indefinite diagrams are rejected with a diagnostic naming the offending
//! component.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Maximum total rank accepted anywhere in the engine.
pub const MAX_RANK: usize = 8;

/// A bond between two nodes, given by indices into the node list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinEdge {
    pub a: usize,
    pub b: usize,
    /// Bond multiplicity, 1 to 3.
    pub multiplicity: u8,
    /// For multiplicity > 1, the endpoint carrying the short root (the arrow
    /// target). `None` exactly when the multiplicity is 1.
    pub short: Option<usize>,
}

/// The nine finite families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SimpleKind {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A classified connected component: family, rank, and the component's nodes
/// in a canonical chain-like order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: SimpleKind,
    pub rank: usize,
    /// Node indices in canonical order (chain order for A/B/C/F/G; for D and E
    /// the long arm first, then the branch tail).
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn type_name(&self) -> String {
        format!("{:?}{}", self.kind, self.rank)
    }

    pub fn weyl_order(&self) -> u64 {
        let n = self.rank as u64;
        let factorial = |k: u64| (1..=k).product::<u64>();
        match self.kind {
            SimpleKind::A => factorial(n + 1),
            SimpleKind::B | SimpleKind::C => (1u64 << n) * factorial(n),
            SimpleKind::D => (1u64 << (n - 1)) * factorial(n),
            SimpleKind::E => match self.rank {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            SimpleKind::F => 1_152,
            SimpleKind::G => 12,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.kind {
            SimpleKind::A => n * (n + 1) / 2,
            SimpleKind::B | SimpleKind::C => n * n,
            SimpleKind::D => n * (n - 1),
            SimpleKind::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            SimpleKind::F => 24,
            SimpleKind::G => 6,
        }
    }
}

/// A Dynkin diagram with named nodes. Valid instances are always of finite
/// type; validation happens at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinDiagram {
    nodes: Vec<String>,
    edges: Vec<DynkinEdge>,
    components: Vec<Component>,
}

impl DynkinDiagram {
    /// Builds and validates a diagram from named nodes and edges.
    pub fn new(nodes: Vec<String>, edges: Vec<DynkinEdge>) -> Result<Self> {
        if nodes.len() > MAX_RANK {
            return Err(Error::InvalidDiagram(format!(
                "rank {} exceeds the supported maximum {}",
                nodes.len(),
                MAX_RANK
            )));
        }
        let mut seen = BTreeSet::new();
        for name in &nodes {
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidDiagram(format!(
                    "duplicate node identifier `{name}`"
                )));
            }
        }
        let mut pair_seen = BTreeSet::new();
        for e in &edges {
            if e.a >= nodes.len() || e.b >= nodes.len() {
                return Err(Error::InvalidDiagram("edge endpoint out of range".into()));
            }
            if e.a == e.b {
                return Err(Error::InvalidDiagram(format!(
                    "self-loop at node `{}`",
                    nodes[e.a]
                )));
            }
            if !pair_seen.insert((e.a.min(e.b), e.a.max(e.b))) {
                return Err(Error::InvalidDiagram(format!(
                    "repeated edge between `{}` and `{}`",
                    nodes[e.a], nodes[e.b]
                )));
            }
            match e.multiplicity {
                1 => {
                    if e.short.is_some() {
                        return Err(Error::InvalidDiagram(format!(
                            "single bond `{}`-`{}` must not carry an arrow",
                            nodes[e.a], nodes[e.b]
                        )));
                    }
                }
                2 | 3 => match e.short {
                    Some(s) if s == e.a || s == e.b => {}
                    _ => {
                        return Err(Error::InvalidDiagram(format!(
                            "bond `{}`-`{}` of multiplicity {} must name one \
                             endpoint as short",
                            nodes[e.a], nodes[e.b], e.multiplicity
                        )))
                    }
                },
                m => {
                    return Err(Error::InvalidDiagram(format!(
                        "bond multiplicity {m} out of range 1-3"
                    )))
                }
            }
        }
        let components = classify(&nodes, &edges)?;
        Ok(DynkinDiagram {
            nodes,
            edges,
            components,
        })
    }

    /// Parses a type string such as `"A3"`, `"G2"` or a product `"A1xA1"`.
    /// Nodes are named `a1`, `a2`, ... consecutively across factors.
    pub fn of_type(spec: &str) -> Result<Self> {
        let mut nodes = Vec::new();
        let mut edges = Vec::new();
        for part in spec.split(['x', 'X']) {
            let part = part.trim();
            let (family, rank) = parse_type_token(part)?;
            let offset = nodes.len();
            let n = rank;
            if nodes.len() + n > MAX_RANK {
                return Err(Error::InvalidDiagram(format!(
                    "total rank of `{spec}` exceeds the supported maximum {MAX_RANK}"
                )));
            }
            for i in 0..n {
                nodes.push(format!("a{}", offset + i + 1));
            }
            let chain = |edges: &mut Vec<DynkinEdge>, upto: usize| {
                for i in 0..upto {
                    edges.push(DynkinEdge {
                        a: offset + i,
                        b: offset + i + 1,
                        multiplicity: 1,
                        short: None,
                    });
                }
            };
            match family {
                SimpleKind::A => chain(&mut edges, n - 1),
                SimpleKind::B => {
                    chain(&mut edges, n.saturating_sub(2));
                    edges.push(DynkinEdge {
                        a: offset + n - 2,
                        b: offset + n - 1,
                        multiplicity: 2,
                        short: Some(offset + n - 1),
                    });
                }
                SimpleKind::C => {
                    chain(&mut edges, n.saturating_sub(2));
                    edges.push(DynkinEdge {
                        a: offset + n - 2,
                        b: offset + n - 1,
                        multiplicity: 2,
                        short: Some(offset + n - 2),
                    });
                }
                SimpleKind::D => {
                    chain(&mut edges, n - 2);
                    edges.push(DynkinEdge {
                        a: offset + n - 3,
                        b: offset + n - 1,
                        multiplicity: 1,
                        short: None,
                    });
                }
                SimpleKind::E => {
                    // Chain a1-a3-a4-...-an with a2 attached to a4.
                    edges.push(DynkinEdge {
                        a: offset,
                        b: offset + 2,
                        multiplicity: 1,
                        short: None,
                    });
                    for i in 2..n - 1 {
                        edges.push(DynkinEdge {
                            a: offset + i,
                            b: offset + i + 1,
                            multiplicity: 1,
                            short: None,
                        });
                    }
                    edges.push(DynkinEdge {
                        a: offset + 1,
                        b: offset + 3,
                        multiplicity: 1,
                        short: None,
                    });
                }
                SimpleKind::F => {
                    edges.push(DynkinEdge {
                        a: offset,
                        b: offset + 1,
                        multiplicity: 1,
                        short: None,
                    });
                    edges.push(DynkinEdge {
                        a: offset + 1,
                        b: offset + 2,
                        multiplicity: 2,
                        short: Some(offset + 2),
                    });
                    edges.push(DynkinEdge {
                        a: offset + 2,
                        b: offset + 3,
                        multiplicity: 1,
                        short: None,
                    });
                }
                SimpleKind::G => {
                    edges.push(DynkinEdge {
                        a: offset,
                        b: offset + 1,
                        multiplicity: 3,
                        short: Some(offset),
                    });
                }
            }
        }
        DynkinDiagram::new(nodes, edges)
    }

    /// The empty diagram (rank 0); the flag manifold of its trivial group is a
    /// point.
    pub fn empty() -> Self {
        DynkinDiagram {
            nodes: Vec::new(),
            edges: Vec::new(),
            components: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[DynkinEdge] {
        &self.edges
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    /// `"A3"`, `"A1 x A1"`, `"point"` for the empty diagram.
    pub fn type_name(&self) -> String {
        if self.components.is_empty() {
            return "point".into();
        }
        self.components
            .iter()
            .map(Component::type_name)
            .collect::<Vec<_>>()
            .join(" x ")
    }

    /// Cartan matrix `a[i][j] = <alpha_i, alpha_j^vee>`: 2 on the diagonal;
    /// for a bond with long endpoint `l` and short endpoint `s` of
    /// multiplicity `m`, `a[l][s] = -m` and `a[s][l] = -1`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut a = vec![vec![0i64; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        for e in &self.edges {
            match e.multiplicity {
                1 => {
                    a[e.a][e.b] = -1;
                    a[e.b][e.a] = -1;
                }
                m => {
                    let s = e.short.expect("validated at construction");
                    let l = if s == e.a { e.b } else { e.a };
                    a[l][s] = -(m as i64);
                    a[s][l] = -1;
                }
            }
        }
        a
    }

    /// The subdiagram induced on `keep` (indices into this diagram's nodes),
    /// retaining node names. Returns the new diagram and, for each kept node,
    /// its index in the original diagram.
    pub fn induced(&self, keep: &BTreeSet<usize>) -> Result<(DynkinDiagram, Vec<usize>)> {
        let kept: Vec<usize> = keep.iter().copied().collect();
        let nodes = kept.iter().map(|&i| self.nodes[i].clone()).collect();
        let pos = |i: usize| kept.iter().position(|&k| k == i);
        let mut edges = Vec::new();
        for e in &self.edges {
            if let (Some(a), Some(b)) = (pos(e.a), pos(e.b)) {
                edges.push(DynkinEdge {
                    a,
                    b,
                    multiplicity: e.multiplicity,
                    short: e.short.map(|s| pos(s).expect("short endpoint kept")),
                });
            }
        }
        Ok((DynkinDiagram::new(nodes, edges)?, kept))
    }
}

impl fmt::Display for DynkinDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} on [{}]", self.type_name(), self.nodes.join(", "))
    }
}

fn parse_type_token(tok: &str) -> Result<(SimpleKind, usize)> {
    let mut chars = tok.chars();
    let fam = chars.next().ok_or_else(|| {
        Error::InvalidDiagram("empty type token in diagram specification".into())
    })?;
    let rank: usize = chars
        .as_str()
        .parse()
        .map_err(|_| Error::InvalidDiagram(format!("cannot parse rank in type token `{tok}`")))?;
    let bad = |msg: &str| Err(Error::InvalidDiagram(format!("`{tok}`: {msg}")));
    let kind = match fam.to_ascii_uppercase() {
        'A' => SimpleKind::A,
        'B' => SimpleKind::B,
        'C' => SimpleKind::C,
        'D' => SimpleKind::D,
        'E' => SimpleKind::E,
        'F' => SimpleKind::F,
        'G' => SimpleKind::G,
        _ => return bad("unknown family (expected one of A-G)"),
    };
    let ok = match kind {
        SimpleKind::A => rank >= 1,
        SimpleKind::B | SimpleKind::C => rank >= 2,
        SimpleKind::D => rank >= 4,
        SimpleKind::E => (6..=8).contains(&rank),
        SimpleKind::F => rank == 4,
        SimpleKind::G => rank == 2,
    };
    if !ok {
        return bad("rank out of range for this family");
    }
    Ok((kind, rank))
}

/// Classifies every connected component or reports the first non-finite one.
fn classify(nodes: &[String], edges: &[DynkinEdge]) -> Result<Vec<Component>> {
    let n = nodes.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for e in edges {
        adj[e.a].push(e.b);
        adj[e.b].push(e.a);
    }
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut queue = VecDeque::from([start]);
        seen[start] = true;
        while let Some(v) = queue.pop_front() {
            comp.push(v);
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(classify_component(nodes, edges, &adj, comp)?);
    }
    Ok(components)
}

fn classify_component(
    nodes: &[String],
    edges: &[DynkinEdge],
    adj: &[Vec<usize>],
    comp: Vec<usize>,
) -> Result<Component> {
    let name_list = || {
        comp.iter()
            .map(|&i| nodes[i].as_str())
            .collect::<Vec<_>>()
            .join(", ")
    };
    let reject = |reason: &str| {
        Err(Error::NotFiniteType {
            component: name_list(),
            reason: reason.into(),
        })
    };
    let n = comp.len();
    if n == 1 {
        return Ok(Component {
            kind: SimpleKind::A,
            rank: 1,
            nodes: comp,
        });
    }
    let in_comp = |i: usize| comp.contains(&i);
    let comp_edges: Vec<&DynkinEdge> = edges.iter().filter(|e| in_comp(e.a)).collect();
    if comp_edges.len() != n - 1 {
        return reject("contains a cycle");
    }
    let triples: Vec<&&DynkinEdge> = comp_edges.iter().filter(|e| e.multiplicity == 3).collect();
    let doubles: Vec<&&DynkinEdge> = comp_edges.iter().filter(|e| e.multiplicity == 2).collect();
    if !triples.is_empty() {
        if n == 2 && triples.len() == 1 && doubles.is_empty() {
            let e = triples[0];
            let s = e.short.unwrap();
            let l = if s == e.a { e.b } else { e.a };
            // Canonical order: short root first.
            return Ok(Component {
                kind: SimpleKind::G,
                rank: 2,
                nodes: vec![s, l],
            });
        }
        return reject("a triple bond only occurs in G2");
    }
    let degree = |i: usize| adj[i].len();
    let branch_nodes: Vec<usize> = comp.iter().copied().filter(|&i| degree(i) >= 3).collect();
    if doubles.len() > 1 {
        return reject("more than one double bond");
    }
    if let [e] = doubles.as_slice() {
        if !branch_nodes.is_empty() {
            return reject("a double bond cannot coexist with a branch node");
        }
        // Chain containing one double bond. Order the chain from one end.
        let chain = order_chain(&comp, adj);
        let s = e.short.unwrap();
        let l = if s == e.a { e.b } else { e.a };
        let pos = |i: usize| chain.iter().position(|&c| c == i).unwrap();
        let (ps, pl) = (pos(s), pos(l));
        if n == 2 {
            // B2 = C2; canonical order puts the long root first.
            return Ok(Component {
                kind: SimpleKind::B,
                rank: 2,
                nodes: vec![l, s],
            });
        }
        let terminal = |p: usize| p == 0 || p == n - 1;
        if terminal(ps) && !terminal(pl) {
            // Short root at an end of the chain: B_n.
            let mut chain = chain;
            if ps == 0 {
                chain.reverse();
            }
            return Ok(Component {
                kind: SimpleKind::B,
                rank: n,
                nodes: chain,
            });
        }
        if terminal(pl) && !terminal(ps) {
            // Long root at an end of the chain: C_n.
            let mut chain = chain;
            if pl == 0 {
                chain.reverse();
            }
            return Ok(Component {
                kind: SimpleKind::C,
                rank: n,
                nodes: chain,
            });
        }
        if !terminal(ps) && !terminal(pl) {
            // Interior double bond: only F4 (exactly in the middle of a 4-chain).
            if n == 4 && ((ps == 2 && pl == 1) || (ps == 1 && pl == 2)) {
                let mut chain = chain;
                if ps == 1 {
                    chain.reverse();
                }
                return Ok(Component {
                    kind: SimpleKind::F,
                    rank: 4,
                    nodes: chain,
                });
            }
            return reject("interior double bond only occurs in F4");
        }
        return reject("double bond in an invalid chain position");
    }
    // Simply laced.
    if branch_nodes.len() > 1 {
        return reject("more than one branch node");
    }
    if comp.iter().any(|&i| degree(i) > 3) {
        return reject("a node of degree 4 or more");
    }
    if branch_nodes.is_empty() {
        return Ok(Component {
            kind: SimpleKind::A,
            rank: n,
            nodes: order_chain(&comp, adj),
        });
    }
    let branch = branch_nodes[0];
    // Walk the three arms away from the branch node.
    let mut arms: Vec<Vec<usize>> = adj[branch]
        .iter()
        .map(|&first| {
            let mut arm = vec![first];
            let mut prev = branch;
            let mut cur = first;
            while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                prev = cur;
                cur = next;
                arm.push(cur);
            }
            arm
        })
        .collect();
    arms.sort_by_key(|arm| (arm.len(), *arm.first().unwrap()));
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    match lens.as_slice() {
        [1, 1, k] => {
            // D_{k+3}: long arm from its far end, branch, then the two tips.
            let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
            order.push(branch);
            order.push(arms[0][0]);
            order.push(arms[1][0]);
            Ok(Component {
                kind: SimpleKind::D,
                rank: k + 3,
                nodes: order,
            })
        }
        [1, 2, k] if (2..=4).contains(k) => {
            // E_{k+4}: long arm, branch, middle arm outward, then the spur.
            let mut order: Vec<usize> = arms[2].iter().rev().copied().collect();
            order.push(branch);
            order.extend(arms[1].iter().copied());
            order.push(arms[0][0]);
            Ok(Component {
                kind: SimpleKind::E,
                rank: k + 4,
                nodes: order,
            })
        }
        _ => reject("branch arms do not match any of D or E6-E8"),
    }
}

/// Orders a path graph from one end; ties broken by smallest node index.
fn order_chain(comp: &[usize], adj: &[Vec<usize>]) -> Vec<usize> {
    let start = comp
        .iter()
        .copied()
        .filter(|&i| adj[i].len() == 1)
        .min()
        .expect("chain has an end");
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
        prev = cur;
        cur = next;
        order.push(cur);
    }
    order
}
