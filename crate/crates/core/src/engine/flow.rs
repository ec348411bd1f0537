//! Capacitated bipartite matching with forced edges, forced saturation and a
//! lexicographic (size, weight) objective.
//!
//! The problem becomes a flow network `s -> left -> right -> t`. Forced edges
//! and saturation requirements are lower bounds on arcs, removed with the
//! usual super-source/super-sink circulation. After a feasible flow is found
//! the remaining capacity is augmented to a maximum flow, then negative
//! residual cycles are cancelled, which leaves a maximum flow of minimum cost
//! (= maximum weight). Flow value never changes during cancellation, so
//! cardinality strictly dominates weight without any big-M scaling.

use alloc::vec;
use alloc::vec::Vec;
use alloc::collections::VecDeque;

use super::shortest::{shortest_paths_or_negative_cycle, DirectedGraph, Sssp};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedEdge {
    pub left: usize,
    pub right: usize,
    pub weight: i64,
}

/// Left nodes have unit supply; right node `r` accepts at most `right_capacity[r]`.
#[derive(Debug, Clone, Default)]
pub struct BipartiteProblem {
    pub num_left: usize,
    pub right_capacity: Vec<u32>,
    pub edges: Vec<WeightedEdge>,
    /// Indices into `edges` that must be in every solution.
    pub fixed: Vec<usize>,
    /// Right nodes whose degree must equal their capacity.
    pub saturated_right: Vec<usize>,
    /// Left nodes that must be matched.
    pub required_left: Vec<usize>,
}

impl BipartiteProblem {
    pub fn new(num_left: usize, right_capacity: Vec<u32>) -> Self {
        BipartiteProblem {
            num_left,
            right_capacity,
            ..Default::default()
        }
    }

    pub fn add_edge(&mut self, left: usize, right: usize, weight: i64) -> usize {
        assert!(left < self.num_left && right < self.right_capacity.len());
        self.edges.push(WeightedEdge {
            left,
            right,
            weight,
        });
        self.edges.len() - 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteSolution {
    /// Indices into the problem's edge list, ascending.
    pub edges: Vec<usize>,
    pub size: usize,
    pub weight: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasibility {
    /// Two forced edges share a left node, or overfill a right node.
    FixedEdgesConflict { edge: usize },
    UnsaturableRight { right: usize },
    UnmatchableLeft { left: usize },
}

const DISABLED: usize = usize::MAX;

struct Network {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl Network {
    fn new(n: usize) -> Self {
        Network {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let id = self.to.len();
        self.adj[u].push(id);
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[v].push(id + 1);
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        id
    }

    fn from(&self, arc: usize) -> usize {
        self.to[arc ^ 1]
    }

    fn disable(&mut self, arc: usize) {
        self.cap[arc] = 0;
        self.cap[arc ^ 1] = 0;
    }

    /// Edmonds-Karp. Scans arcs in insertion order.
    fn max_flow(&mut self, s: usize, t: usize) -> i64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut via = vec![DISABLED; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &a in &self.adj[u] {
                    let v = self.to[a];
                    if self.cap[a] > 0 && !seen[v] {
                        seen[v] = true;
                        via[v] = a;
                        if v == t {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = i64::MAX;
            let mut v = t;
            while v != s {
                push = push.min(self.cap[via[v]]);
                v = self.from(via[v]);
            }
            let mut v = t;
            while v != s {
                self.cap[via[v]] -= push;
                self.cap[via[v] ^ 1] += push;
                v = self.from(via[v]);
            }
            total += push;
        }
    }

    /// Pushes flow around negative residual cycles until none is left.
    fn cancel_negative_cycles(&mut self) {
        loop {
            let n = self.adj.len();
            let mut graph = DirectedGraph::new(n);
            let mut residual_arc = Vec::new();
            for a in 0..self.to.len() {
                if self.cap[a] > 0 {
                    graph.add_arc(self.from(a), self.to[a], self.cost[a]);
                    residual_arc.push(a);
                }
            }
            let sources: Vec<usize> = (0..n).collect();
            let Sssp::NegativeCycle(cycle) = shortest_paths_or_negative_cycle(&graph, &sources)
            else {
                return;
            };
            let push = cycle
                .iter()
                .map(|&i| self.cap[residual_arc[i]])
                .min()
                .expect("cycle is non-empty");
            for &i in &cycle {
                let a = residual_arc[i];
                self.cap[a] -= push;
                self.cap[a ^ 1] += push;
            }
        }
    }
}

/// Maximum-cardinality matching satisfying the forced edges, required left
/// nodes and saturation requirements, of maximum total weight among those.
pub fn max_size_max_weight_matching(
    p: &BipartiteProblem,
) -> Result<BipartiteSolution, Infeasibility> {
    let nl = p.num_left;
    let nr = p.right_capacity.len();

    let mut left_fixed = vec![0u32; nl];
    let mut right_fixed = vec![0u32; nr];
    let mut is_fixed = vec![false; p.edges.len()];
    for &e in &p.fixed {
        let edge = p.edges[e];
        if is_fixed[e] {
            continue;
        }
        is_fixed[e] = true;
        left_fixed[edge.left] += 1;
        right_fixed[edge.right] += 1;
        if left_fixed[edge.left] > 1 || right_fixed[edge.right] > p.right_capacity[edge.right] {
            return Err(Infeasibility::FixedEdgesConflict { edge: e });
        }
    }
    let mut saturated = vec![false; nr];
    for &r in &p.saturated_right {
        saturated[r] = true;
    }
    let mut required = vec![false; nl];
    for &l in &p.required_left {
        required[l] = true;
    }

    let s = 0;
    let t = 1;
    let left = |i: usize| 2 + i;
    let right = |j: usize| 2 + nl + j;
    let super_s = 2 + nl + nr;
    let super_t = super_s + 1;
    let mut net = Network::new(super_t + 1);
    let mut excess = vec![0i64; super_t + 1];
    let mut lower = |net: &mut Network, u: usize, v: usize, lb: i64, cap: i64, cost: i64| {
        excess[u] -= lb;
        excess[v] += lb;
        net.add(u, v, cap - lb, cost)
    };

    for i in 0..nl {
        let lb = i64::from(required[i] || left_fixed[i] > 0);
        lower(&mut net, s, left(i), lb, 1, 0);
    }
    let mut edge_arc = Vec::with_capacity(p.edges.len());
    for (e, edge) in p.edges.iter().enumerate() {
        let lb = i64::from(is_fixed[e]);
        edge_arc.push(lower(
            &mut net,
            left(edge.left),
            right(edge.right),
            lb,
            1,
            -edge.weight,
        ));
    }
    for j in 0..nr {
        let q = i64::from(p.right_capacity[j]);
        let lb = if saturated[j] { q } else { 0 };
        lower(&mut net, right(j), t, lb, q, 0);
    }
    let back = net.add(t, s, nl as i64 + 1, 0);

    let mut demand = 0;
    let mut super_arcs = Vec::new();
    let mut deficit_arc = vec![None; super_t + 1];
    for v in 0..super_s {
        if excess[v] > 0 {
            super_arcs.push(net.add(super_s, v, excess[v], 0));
            deficit_arc[v] = super_arcs.last().copied();
            demand += excess[v];
        } else if excess[v] < 0 {
            super_arcs.push(net.add(v, super_t, -excess[v], 0));
            deficit_arc[v] = super_arcs.last().copied();
        }
    }
    if net.max_flow(super_s, super_t) < demand {
        for j in 0..nr {
            if let Some(a) = deficit_arc[right(j)] {
                if net.cap[a] > 0 {
                    return Err(Infeasibility::UnsaturableRight { right: j });
                }
            }
        }
        for i in 0..nl {
            if let Some(a) = deficit_arc[left(i)] {
                if net.cap[a] > 0 {
                    return Err(Infeasibility::UnmatchableLeft { left: i });
                }
            }
        }
        // Only the s/t balance arcs failed: the forced left side overflows the right side.
        let culprit = (0..nr).find(|&j| saturated[j]);
        return Err(match culprit {
            Some(right) => Infeasibility::UnsaturableRight { right },
            None => Infeasibility::UnmatchableLeft {
                left: (0..nl).find(|&i| required[i] || left_fixed[i] > 0).unwrap_or(0),
            },
        });
    }
    for a in super_arcs {
        net.disable(a);
    }
    net.disable(back);

    net.max_flow(s, t);
    if p.edges.iter().any(|e| e.weight != 0) {
        net.cancel_negative_cycles();
    }

    let mut chosen = Vec::new();
    let mut weight = 0;
    for (e, &a) in edge_arc.iter().enumerate() {
        let flow = net.cap[a ^ 1] + i64::from(is_fixed[e]);
        if flow > 0 {
            chosen.push(e);
            weight += p.edges[e].weight;
        }
    }
    Ok(BipartiteSolution {
        size: chosen.len(),
        edges: chosen,
        weight,
    })
}
