//! Directed unweighted follower graph induced on a chosen node set.

use std::collections::{BTreeSet, HashMap};

use crate::ingest::{AccountId, FollowEdge};

use super::NetgraphError;

/// Immutable directed graph. Edge p -> q means p follows q. Node order is
/// ascending account id; adjacency lists are sorted; no self-loops or
/// parallel edges survive construction.
#[derive(Debug, Clone)]
pub struct FollowGraph {
    nodes: Vec<AccountId>,
    index: HashMap<AccountId, usize>,
    out_adj: Vec<Vec<usize>>,
    in_adj: Vec<Vec<usize>>,
    edge_count: usize,
    dropped_edges: usize,
}

/// Build the graph induced on `node_filter`: edges with either endpoint
/// outside the filter are dropped and counted, never silently lost.
pub fn build_graph(
    edges: &[FollowEdge],
    node_filter: &BTreeSet<AccountId>,
) -> Result<FollowGraph, NetgraphError> {
    if node_filter.is_empty() {
        return Err(NetgraphError::EmptyFilter);
    }
    let nodes: Vec<AccountId> = node_filter.iter().cloned().collect();
    let index: HashMap<AccountId, usize> = nodes
        .iter()
        .enumerate()
        .map(|(i, id)| (id.clone(), i))
        .collect();
    let mut out_adj = vec![Vec::new(); nodes.len()];
    let mut in_adj = vec![Vec::new(); nodes.len()];
    let mut dropped = 0usize;
    for e in edges {
        match (index.get(&e.follower_id), index.get(&e.followee_id)) {
            (Some(&p), Some(&q)) if p != q => {
                out_adj[p].push(q);
                in_adj[q].push(p);
            }
            _ => dropped += 1,
        }
    }
    for list in out_adj.iter_mut().chain(in_adj.iter_mut()) {
        list.sort_unstable();
        list.dedup();
    }
    let edge_count = out_adj.iter().map(|l| l.len()).sum();
    Ok(FollowGraph {
        edge_count,
        dropped_edges: dropped,
        nodes,
        index,
        out_adj,
        in_adj,
    })
}

impl FollowGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges whose endpoint fell outside the node filter.
    pub fn dropped_edges(&self) -> usize {
        self.dropped_edges
    }

    pub fn nodes(&self) -> &[AccountId] {
        &self.nodes
    }

    pub fn node_id(&self, index: usize) -> &AccountId {
        &self.nodes[index]
    }

    pub fn index_of(&self, id: &AccountId) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Accounts this node follows.
    pub fn out_neighbors(&self, index: usize) -> &[usize] {
        &self.out_adj[index]
    }

    /// Accounts following this node.
    pub fn in_neighbors(&self, index: usize) -> &[usize] {
        &self.in_adj[index]
    }

    pub fn out_degree(&self, index: usize) -> usize {
        self.out_adj[index].len()
    }

    pub fn in_degree(&self, index: usize) -> usize {
        self.in_adj[index].len()
    }

    /// Directed edges as (follower index, followee index), in node order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out_adj
            .iter()
            .enumerate()
            .flat_map(|(p, qs)| qs.iter().map(move |&q| (p, q)))
    }
}

/// Induced subgraph of the k highest-scoring nodes with per-node score
/// annotations, exportable for plotting. Ties on score break by ascending
/// account id.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub nodes: Vec<(AccountId, f64)>,
    pub edges: Vec<(AccountId, AccountId)>,
}

pub fn top_k_subgraph(
    g: &FollowGraph,
    scores: &[f64],
    k: usize,
) -> Result<Subgraph, NetgraphError> {
    if scores.len() != g.node_count() {
        return Err(NetgraphError::LengthMismatch {
            expected: g.node_count(),
            got: scores.len(),
        });
    }
    if k == 0 || k > g.node_count() {
        return Err(NetgraphError::InvalidK {
            k,
            nodes: g.node_count(),
        });
    }
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .total_cmp(&scores[a])
            .then_with(|| g.node_id(a).cmp(g.node_id(b)))
    });
    order.truncate(k);
    let selected: BTreeSet<usize> = order.iter().copied().collect();
    let nodes: Vec<(AccountId, f64)> = order
        .iter()
        .map(|&i| (g.node_id(i).clone(), scores[i]))
        .collect();
    let mut edges = Vec::new();
    for &p in &order {
        for &q in g.out_neighbors(p) {
            if selected.contains(&q) {
                edges.push((g.node_id(p).clone(), g.node_id(q).clone()));
            }
        }
    }
    Ok(Subgraph { nodes, edges })
}
