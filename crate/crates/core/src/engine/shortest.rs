//! Bellman-Ford with negative-cycle witnesses.

use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub weight: i64,
}

/// Directed multigraph with integer arc weights. Self-loops are not allowed.
#[derive(Debug, Clone, Default)]
pub struct DirectedGraph {
    num_nodes: usize,
    arcs: Vec<Arc>,
}

impl DirectedGraph {
    pub fn new(num_nodes: usize) -> Self {
        DirectedGraph {
            num_nodes,
            arcs: Vec::new(),
        }
    }

    /// Adds an arc and returns its index.
    pub fn add_arc(&mut self, from: usize, to: usize, weight: i64) -> usize {
        assert!(from < self.num_nodes && to < self.num_nodes, "arc endpoint out of range");
        assert_ne!(from, to, "self-loops are not allowed");
        self.arcs.push(Arc { from, to, weight });
        self.arcs.len() - 1
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc(&self, i: usize) -> Arc {
        self.arcs[i]
    }

    pub fn weight_of(&self, arcs: &[usize]) -> i64 {
        arcs.iter().map(|&i| self.arcs[i].weight).sum()
    }
}

/// Shortest distances from a source set, with a predecessor arc per node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathTree {
    pub dist: Vec<Option<i64>>,
    pub pred: Vec<Option<usize>>,
}

impl PathTree {
    /// Arcs of a minimum-weight path from the source set to `v`, in order.
    pub fn path_to(&self, graph: &DirectedGraph, v: usize) -> Option<Vec<usize>> {
        self.dist[v]?;
        let mut arcs = Vec::new();
        let mut cur = v;
        while let Some(a) = self.pred[cur] {
            arcs.push(a);
            cur = graph.arc(a).from;
            if arcs.len() > graph.num_nodes() {
                // unreachable without a negative cycle
                return None;
            }
        }
        arcs.reverse();
        Some(arcs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sssp {
    Paths(PathTree),
    /// Arc indices of a directed cycle with negative total weight, in cycle order.
    NegativeCycle(Vec<usize>),
}

/// Bellman-Ford from every node of `sources` at distance 0.
///
/// Reports a negative cycle if one is reachable from the sources. Passing all
/// nodes as sources detects a negative cycle anywhere in the graph.
pub fn shortest_paths_or_negative_cycle(graph: &DirectedGraph, sources: &[usize]) -> Sssp {
    let n = graph.num_nodes();
    let mut dist: Vec<Option<i64>> = vec![None; n];
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for &s in sources {
        dist[s] = Some(0);
    }

    let mut last_relaxed = None;
    for _round in 0..n.max(1) {
        last_relaxed = None;
        for (i, arc) in graph.arcs.iter().enumerate() {
            let Some(du) = dist[arc.from] else { continue };
            let cand = du + arc.weight;
            if dist[arc.to].is_none_or(|dv| cand < dv) {
                dist[arc.to] = Some(cand);
                pred[arc.to] = Some(i);
                last_relaxed = Some(arc.to);
            }
        }
        if last_relaxed.is_none() {
            break;
        }
    }

    let Some(mut v) = last_relaxed else {
        return Sssp::Paths(PathTree { dist, pred });
    };
    // Still relaxing after n rounds: walking back n predecessors lands on the cycle.
    for _ in 0..n {
        v = graph.arc(pred[v].expect("relaxed node has a predecessor")).from;
    }
    let start = v;
    let mut cycle = Vec::new();
    loop {
        let a = pred[v].expect("cycle node has a predecessor");
        cycle.push(a);
        v = graph.arc(a).from;
        if v == start {
            break;
        }
    }
    cycle.reverse();
    debug_assert!(graph.weight_of(&cycle) < 0);
    Sssp::NegativeCycle(cycle)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_cycle(g: &DirectedGraph, cycle: &[usize]) -> bool {
        cycle
            .iter()
            .zip(cycle.iter().cycle().skip(1))
            .all(|(&a, &b)| g.arc(a).to == g.arc(b).from)
    }

    #[test]
    fn two_node_negative_cycle() {
        let mut g = DirectedGraph::new(2);
        g.add_arc(0, 1, 1);
        g.add_arc(1, 0, -2);
        match shortest_paths_or_negative_cycle(&g, &[0]) {
            Sssp::NegativeCycle(c) => {
                assert_eq!(g.weight_of(&c), -1);
                assert!(is_cycle(&g, &c));
            }
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn dag_path() {
        let mut g = DirectedGraph::new(3);
        g.add_arc(0, 1, -1);
        g.add_arc(1, 2, -1);
        let Sssp::Paths(tree) = shortest_paths_or_negative_cycle(&g, &[0]) else {
            panic!("no cycle expected");
        };
        assert_eq!(tree.dist[2], Some(-2));
        assert_eq!(tree.path_to(&g, 2).unwrap(), vec![0, 1]);
    }

    #[test]
    fn zero_cycle_is_not_negative() {
        let mut g = DirectedGraph::new(3);
        g.add_arc(0, 1, 1);
        g.add_arc(1, 0, -1);
        g.add_arc(1, 2, 5);
        let Sssp::Paths(tree) = shortest_paths_or_negative_cycle(&g, &[0]) else {
            panic!("zero-weight cycle reported as negative");
        };
        assert_eq!(tree.dist, vec![Some(0), Some(1), Some(6)]);
    }

    #[test]
    fn unreachable_cycle_is_ignored_unless_sourced() {
        let mut g = DirectedGraph::new(3);
        g.add_arc(1, 2, -1);
        g.add_arc(2, 1, -1);
        assert!(matches!(shortest_paths_or_negative_cycle(&g, &[0]), Sssp::Paths(_)));
        assert!(matches!(
            shortest_paths_or_negative_cycle(&g, &[0, 1, 2]),
            Sssp::NegativeCycle(_)
        ));
    }
}
