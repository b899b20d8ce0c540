//! Edmonds-Karp maximum flow on small graphs with exact integer capacities.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
struct Edge {
    to: usize,
    cap: i128,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    edges: Vec<Edge>,
    adjacency: Vec<Vec<usize>>,
}

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        FlowNetwork {
            edges: Vec::new(),
            adjacency: vec![Vec::new(); nodes],
        }
    }

    /// Adds an arc and returns its index; flows on it can be read back with
    /// [`FlowNetwork::flow_on`].
    pub fn add_edge(&mut self, from: usize, to: usize, cap: i128) -> usize {
        let id = self.edges.len();
        self.edges.push(Edge { to, cap });
        self.adjacency[from].push(id);
        self.edges.push(Edge { to: from, cap: 0 });
        self.adjacency[to].push(id + 1);
        id
    }

    pub fn flow_on(&self, edge: usize) -> i128 {
        self.edges[edge + 1].cap
    }

    pub fn max_flow(&mut self, source: usize, sink: usize) -> i128 {
        let mut total = 0;
        loop {
            let mut parent: Vec<Option<usize>> = vec![None; self.adjacency.len()];
            let mut queue = VecDeque::from([source]);
            let mut seen = vec![false; self.adjacency.len()];
            seen[source] = true;
            while let Some(node) = queue.pop_front() {
                if node == sink {
                    break;
                }
                for &e in &self.adjacency[node] {
                    let to = self.edges[e].to;
                    if !seen[to] && self.edges[e].cap > 0 {
                        seen[to] = true;
                        parent[to] = Some(e);
                        queue.push_back(to);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck = i128::MAX;
            let mut node = sink;
            while let Some(e) = parent[node] {
                bottleneck = bottleneck.min(self.edges[e].cap);
                node = self.edges[e ^ 1].to;
            }
            let mut node = sink;
            while let Some(e) = parent[node] {
                self.edges[e].cap -= bottleneck;
                self.edges[e ^ 1].cap += bottleneck;
                node = self.edges[e ^ 1].to;
            }
            total += bottleneck;
        }
    }
}
