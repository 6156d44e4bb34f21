#![allow(dead_code)]

use std::collections::HashSet;

use netpolar::{Network, ValidateOptions};
use proptest::prelude::*;
use rand::Rng;

/// Connected network on `n` nodes: a random spanning tree plus extra edges.
/// With `integer_weights` every weight is in `1..=5`, which keeps all path
/// sums exact.
pub fn random_network(rng: &mut impl Rng, n: usize, integer_weights: bool) -> Network {
    let weight = |rng: &mut dyn rand::RngCore| -> f64 {
        if integer_weights {
            rng.random_range(1..=5) as f64
        } else {
            rng.random_range(0.1..5.0)
        }
    };
    let mut edges = Vec::new();
    let mut present = HashSet::new();
    for v in 1..n {
        let u = rng.random_range(0..v);
        edges.push((u, v, weight(rng)));
        present.insert((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if !present.contains(&(u, v)) && rng.random_bool(0.3) {
                edges.push((u, v, weight(rng)));
            }
        }
    }
    let nodes = (0..n)
        .map(|i| {
            let m = if rng.random_bool(0.15) {
                0.0
            } else {
                rng.random_range(0.05..10.0)
            };
            (format!("v{i}"), m)
        })
        .collect();
    Network::new(nodes, edges, ValidateOptions::default()).unwrap()
}

/// Proptest strategy for small connected networks.
pub fn arb_network(max_nodes: usize) -> impl Strategy<Value = Network> {
    (2..=max_nodes).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            prop::collection::vec(prop_oneof![1 => Just(0.0), 6 => 0.01f64..10.0], n),
            prop::collection::vec(0usize..1_000_000, n - 1),
            prop::collection::vec(prop::option::weighted(0.35, 0.05f64..5.0), pairs),
            prop::collection::vec(0.05f64..5.0, n - 1),
        )
            .prop_map(move |(masses, parents, extra, tree_w)| {
                let mut edges = Vec::new();
                let mut tree = HashSet::new();
                for v in 1..n {
                    let u = parents[v - 1] % v;
                    tree.insert((u, v));
                    edges.push((u, v, tree_w[v - 1]));
                }
                let mut k = 0;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if let Some(w) = extra[k] {
                            if !tree.contains(&(u, v)) {
                                edges.push((u, v, w));
                            }
                        }
                        k += 1;
                    }
                }
                let nodes = masses
                    .iter()
                    .enumerate()
                    .map(|(i, &m)| (format!("v{i}"), m))
                    .collect();
                Network::new(nodes, edges, ValidateOptions::default()).unwrap()
            })
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn connected(n: usize, adj: &[u8]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if adj[u * n + v] > 0 && !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Every connected graph on 2..=`max_nodes` nodes with edge weights in
/// `{1, 2}`, one representative per isomorphism class.
pub fn small_graph_corpus(max_nodes: usize) -> Vec<Network> {
    let mut out = Vec::new();
    for n in 2..=max_nodes {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let perms = permutations(n);
        let mut seen: HashSet<Vec<u8>> = HashSet::new();
        let total = 3usize.pow(pairs.len() as u32);
        let mut adj = vec![0u8; n * n];
        for code in 0..total {
            let mut c = code;
            for &(u, v) in &pairs {
                let w = (c % 3) as u8;
                c /= 3;
                adj[u * n + v] = w;
                adj[v * n + u] = w;
            }
            if !connected(n, &adj) {
                continue;
            }
            let canon = perms
                .iter()
                .map(|p| pairs.iter().map(|&(u, v)| adj[p[u] * n + p[v]]).collect::<Vec<u8>>())
                .min()
                .unwrap();
            if !seen.insert(canon) {
                continue;
            }
            let edges = pairs
                .iter()
                .filter(|&&(u, v)| adj[u * n + v] > 0)
                .map(|&(u, v)| (u, v, adj[u * n + v] as f64))
                .collect();
            let nodes = (0..n).map(|i| (format!("v{i}"), 1.0)).collect();
            out.push(Network::new(nodes, edges, ValidateOptions::default()).unwrap());
        }
    }
    out
}
