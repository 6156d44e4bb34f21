//! Networks `(g, π)`: an undirected edge-weighted graph whose nodes carry
//! non-negative masses, plus geodesic distances and structural edits.
//!
//! Edge weights are read as direct distances, so a larger weight means a
//! weaker tie. A weight of zero is a real edge of length zero, which is not
//! the same thing as a missing edge.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap, HashSet};

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Node record of the JSON network description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNode {
    pub id: String,
    pub mass: f64,
}

/// Edge record of the JSON network description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub u: String,
    pub v: String,
    pub w: f64,
}

/// Unvalidated network as it appears on disk:
/// `{"nodes":[{"id":"a","mass":0.5}],"edges":[{"u":"a","v":"b","w":1.0}]}`.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNetwork {
    pub nodes: Vec<RawNode>,
    pub edges: Vec<RawEdge>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidateOptions {
    /// Accept disconnected graphs. Nodes in different components are then
    /// placed at the largest finite geodesic distance found in the graph.
    pub allow_disconnected_longest_path: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: f64,
}

/// A validated network. Node order is the input order and is used for every
/// matrix and report derived from it.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    ids: Vec<String>,
    masses: Vec<f64>,
    edges: Vec<Edge>,
    index: HashMap<String, usize>,
    options: ValidateOptions,
}

/// Validate a parsed description into a [`Network`].
pub fn validate_network(raw: &RawNetwork, options: ValidateOptions) -> Result<Network> {
    let mut index = HashMap::with_capacity(raw.nodes.len());
    for (i, node) in raw.nodes.iter().enumerate() {
        if index.insert(node.id.clone(), i).is_some() {
            return Err(Error::DuplicateNode(node.id.clone()));
        }
    }
    let lookup = |id: &str| {
        index
            .get(id)
            .copied()
            .ok_or_else(|| Error::UnknownNode(id.to_string()))
    };
    let mut edges = Vec::with_capacity(raw.edges.len());
    for e in &raw.edges {
        edges.push((lookup(&e.u)?, lookup(&e.v)?, e.w));
    }
    Network::new(
        raw.nodes.iter().map(|n| (n.id.clone(), n.mass)).collect(),
        edges,
        options,
    )
}

impl Network {
    /// Build a network from `(id, mass)` records and index-based edges,
    /// enforcing every network invariant.
    pub fn new(
        nodes: Vec<(String, f64)>,
        edges: Vec<(usize, usize, f64)>,
        options: ValidateOptions,
    ) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let mut ids = Vec::with_capacity(nodes.len());
        let mut masses = Vec::with_capacity(nodes.len());
        let mut index = HashMap::with_capacity(nodes.len());
        for (i, (id, mass)) in nodes.into_iter().enumerate() {
            if !(mass >= 0.0 && mass.is_finite()) {
                return Err(Error::NegativeMass { id, mass });
            }
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::DuplicateNode(id));
            }
            ids.push(id);
            masses.push(mass);
        }
        let n = ids.len();
        let mut seen = HashSet::with_capacity(edges.len());
        let mut checked = Vec::with_capacity(edges.len());
        for (u, v, weight) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownNode(format!("#{}", u.max(v))));
            }
            if u == v {
                return Err(Error::SelfLoop(ids[u].clone()));
            }
            if !(weight >= 0.0 && weight.is_finite()) {
                return Err(Error::NegativeWeight {
                    u: ids[u].clone(),
                    v: ids[v].clone(),
                    weight,
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(ids[u].clone(), ids[v].clone()));
            }
            checked.push(Edge { u, v, weight });
        }
        let net = Network {
            ids,
            masses,
            edges: checked,
            index,
            options,
        };
        let components = net.component_count();
        if components > 1 && !options.allow_disconnected_longest_path {
            return Err(Error::Disconnected { components });
        }
        Ok(net)
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn options(&self) -> ValidateOptions {
        self.options
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn mass_of(&self, id: &str) -> Option<f64> {
        self.index_of(id).map(|i| self.masses[i])
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Number of nodes with strictly positive mass.
    pub fn support_size(&self) -> usize {
        self.masses.iter().filter(|&&m| m > 0.0).count()
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        self.edges
            .iter()
            .find(|e| (e.u == u && e.v == v) || (e.u == v && e.v == u))
            .map(|e| e.weight)
    }

    /// Same graph, new masses (in node order).
    pub fn with_masses(&self, masses: Vec<f64>) -> Result<Self> {
        if masses.len() != self.len() {
            return Err(Error::DimensionMismatch);
        }
        if let Some((i, &mass)) = masses
            .iter()
            .enumerate()
            .find(|(_, m)| !(**m >= 0.0 && m.is_finite()))
        {
            return Err(Error::NegativeMass {
                id: self.ids[i].clone(),
                mass,
            });
        }
        Ok(Network {
            masses,
            ..self.clone()
        })
    }

    pub fn to_raw(&self) -> RawNetwork {
        RawNetwork {
            nodes: self
                .ids
                .iter()
                .zip(&self.masses)
                .map(|(id, &mass)| RawNode {
                    id: id.clone(),
                    mass,
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge {
                    u: self.ids[e.u].clone(),
                    v: self.ids[e.v].clone(),
                    w: e.weight,
                })
                .collect(),
        }
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    fn adjacency(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.len()];
        for e in &self.edges {
            adj[e.u].push((e.v, e.weight));
            adj[e.v].push((e.u, e.weight));
        }
        adj
    }

    fn component_count(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &(v, _) in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        stack.push(v);
                    }
                }
            }
        }
        count
    }
}

/// All-pairs geodesic distances, row-major in network node order.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceMatrix {
    order: Vec<String>,
    d: Vec<f64>,
    diameter: f64,
    diameter_pair: Option<(usize, usize)>,
}

impl DistanceMatrix {
    /// Wrap a precomputed symmetric matrix. Used for prescribed distances
    /// and by tests; [`geodesic_distances`] is the usual constructor.
    pub fn from_rows(order: Vec<String>, rows: &[Vec<f64>]) -> Result<Self> {
        let n = order.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch);
        }
        let d: Vec<f64> = rows.iter().flatten().copied().collect();
        Ok(Self::with_diameter(order, d))
    }

    fn with_diameter(order: Vec<String>, d: Vec<f64>) -> Self {
        let n = order.len();
        let mut diameter = 0.0;
        let mut diameter_pair = if n >= 2 { Some((0, 1)) } else { None };
        for i in 0..n {
            for j in (i + 1)..n {
                if d[i * n + j] > diameter {
                    diameter = d[i * n + j];
                    diameter_pair = Some((i, j));
                }
            }
        }
        DistanceMatrix {
            order,
            d,
            diameter,
            diameter_pair,
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[String] {
        &self.order
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.d[i * self.order.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.order.len();
        &self.d[i * n..(i + 1) * n]
    }

    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// First attaining pair in node order; `None` for a single node.
    pub fn diameter_pair(&self) -> Option<(usize, usize)> {
        self.diameter_pair
    }

    /// Whether this matrix was computed for `net` (same ids, same order).
    pub fn matches(&self, net: &Network) -> bool {
        self.order.as_slice() == net.ids()
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut header = vec![String::new()];
        header.extend(self.order.iter().cloned());
        w.write_record(&header).expect("in-memory write");
        for (i, id) in self.order.iter().enumerate() {
            let mut rec = vec![id.clone()];
            rec.extend(self.row(i).iter().map(|x| x.to_string()));
            w.write_record(&rec).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf8 csv")
    }
}

impl Serialize for DistanceMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.order.len();
        let rows: Vec<&[f64]> = (0..n).map(|i| self.row(i)).collect();
        let pair = self
            .diameter_pair
            .map(|(i, j)| [self.order[i].as_str(), self.order[j].as_str()]);
        let mut s = serializer.serialize_struct("DistanceMatrix", 4)?;
        s.serialize_field("order", &self.order)?;
        s.serialize_field("d", &rows)?;
        s.serialize_field("diameter", &self.diameter)?;
        s.serialize_field("diameter_pair", &pair)?;
        s.end()
    }
}

#[derive(Clone, Copy, PartialEq)]
struct HeapItem {
    dist: f64,
    node: usize,
}

impl Eq for HeapItem {}

impl Ord for HeapItem {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.node.cmp(&self.node))
    }
}

impl PartialOrd for HeapItem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(adj: &[Vec<(usize, f64)>], source: usize) -> Vec<f64> {
    let mut dist = vec![f64::INFINITY; adj.len()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0.0;
    heap.push(HeapItem {
        dist: 0.0,
        node: source,
    });
    while let Some(HeapItem { dist: d, node: u }) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(v, w) in &adj[u] {
            let nd = d + w;
            if nd < dist[v] {
                dist[v] = nd;
                heap.push(HeapItem { dist: nd, node: v });
            }
        }
    }
    dist
}

/// All-pairs shortest-path distances (Dijkstra from every node).
///
/// The matrix is symmetrized with `min(d(i→j), d(j→i))` so that the result
/// does not depend on the direction in which path lengths were accumulated.
pub fn geodesic_distances(net: &Network) -> DistanceMatrix {
    let n = net.len();
    let adj = net.adjacency();
    let mut d = Vec::with_capacity(n * n);
    for s in 0..n {
        d.extend(dijkstra(&adj, s));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let m = d[i * n + j].min(d[j * n + i]);
            d[i * n + j] = m;
            d[j * n + i] = m;
        }
    }
    if d.iter().any(|x| x.is_infinite()) {
        let fill = d
            .iter()
            .copied()
            .filter(|x| x.is_finite())
            .fold(0.0, f64::max);
        for x in d.iter_mut().filter(|x| x.is_infinite()) {
            *x = fill;
        }
    }
    DistanceMatrix::with_diameter(net.ids().to_vec(), d)
}

/// Largest geodesic distance and the first node pair (in node order) that
/// attains it. A single node has no pair and diameter 0.
pub fn diameter(net: &Network) -> (Option<(usize, usize)>, f64) {
    let dm = geodesic_distances(net);
    (dm.diameter_pair(), dm.diameter())
}

/// Mean geodesic distance over ordered pairs of distinct nodes.
pub fn average_path_length(net: &Network) -> Result<f64> {
    let n = net.len();
    if n < 2 {
        return Err(Error::SingleNode);
    }
    let dm = geodesic_distances(net);
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                total += dm.get(i, j);
            }
        }
    }
    Ok(total / (n * (n - 1)) as f64)
}

pub fn delete_edge(net: &Network, u: &str, v: &str) -> Result<Network> {
    let (Some(a), Some(b)) = (net.index_of(u), net.index_of(v)) else {
        return Err(Error::NoSuchEdge(u.to_string(), v.to_string()));
    };
    let pos = net
        .edges
        .iter()
        .position(|e| (e.u == a && e.v == b) || (e.u == b && e.v == a))
        .ok_or_else(|| Error::NoSuchEdge(u.to_string(), v.to_string()))?;
    let mut out = net.clone();
    out.edges.remove(pos);
    if !net.options.allow_disconnected_longest_path && !out.is_connected() {
        return Err(Error::WouldDisconnect(format!("edge {u}-{v}")));
    }
    Ok(out)
}

pub fn delete_node(net: &Network, u: &str) -> Result<Network> {
    let gone = net
        .index_of(u)
        .ok_or_else(|| Error::NoSuchNode(u.to_string()))?;
    if net.len() == 1 {
        return Err(Error::EmptyNodeSet);
    }
    let remap = |i: usize| if i > gone { i - 1 } else { i };
    let nodes = net
        .ids
        .iter()
        .zip(&net.masses)
        .enumerate()
        .filter(|(i, _)| *i != gone)
        .map(|(_, (id, &m))| (id.clone(), m))
        .collect();
    let edges = net
        .edges
        .iter()
        .filter(|e| e.u != gone && e.v != gone)
        .map(|e| (remap(e.u), remap(e.v), e.weight))
        .collect();
    Network::new(nodes, edges, net.options).map_err(|e| match e {
        Error::Disconnected { .. } => Error::WouldDisconnect(format!("node {u}")),
        other => other,
    })
}

/// Multiply every mass by `lambda > 0`.
pub fn scale_masses(net: &Network, lambda: f64) -> Result<Network> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::NonpositiveLambda(lambda));
    }
    let mut out = net.clone();
    for m in &mut out.masses {
        *m *= lambda;
    }
    Ok(out)
}
