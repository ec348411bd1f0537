//! Polynomial popularity check for capacitated applicants and unit houses.
//!
//! Every applicant is split into one copy per unit of capacity. Matched
//! houses go to copies in preference order; the remaining copies are
//! exposed. A matching arc runs copy to house with weight 0; for each
//! unmatched acceptable pair there is one arc house to copy per copy, weighted
//! by that copy's single-edge vote. `M` is popular iff there is neither a
//! negative cycle nor a negative alternating path.

use alloc::format;
use alloc::vec::Vec;

use crate::engine::{shortest_paths_or_negative_cycle, DirectedGraph, Sssp};
use crate::error::{Error, Result};
use crate::model::{ApplicantId, Edge, HouseId, Instance, Matching, PopularityNotion};
use crate::votes::total_vote;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuxNode {
    /// Copy `index` (0-based) of an applicant.
    Copy { applicant: ApplicantId, index: u32 },
    House(HouseId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxArc {
    pub from: AuxNode,
    pub to: AuxNode,
    pub weight: i64,
    pub matching: bool,
}

#[derive(Debug, Clone)]
pub struct AuxiliaryGraph {
    nodes: Vec<AuxNode>,
    matched_house_of_copy: Vec<Option<HouseId>>,
    copy_owner: Vec<ApplicantId>,
    house_matched: Vec<bool>,
    graph: DirectedGraph,
    matching_arc: Vec<bool>,
}

impl AuxiliaryGraph {
    pub fn build(inst: &Instance, m: &Matching) -> Result<Self> {
        inst.require_unit_houses()?;
        inst.check_matching(m)?;
        let held = m.by_applicant(inst.num_applicants());

        let mut nodes = Vec::new();
        let mut matched_house_of_copy = Vec::new();
        let mut copy_owner = Vec::new();
        let mut first_copy = Vec::with_capacity(inst.num_applicants());
        for a in inst.applicants() {
            first_copy.push(nodes.len());
            let mut mine = held[a.0].clone();
            mine.sort_by_key(|&h| inst.rank(a, h));
            for k in 0..inst.applicant_capacity(a) {
                nodes.push(AuxNode::Copy { applicant: a, index: k });
                matched_house_of_copy.push(mine.get(k as usize).copied());
                copy_owner.push(a);
            }
        }
        let num_copies = nodes.len();
        let house_node: Vec<usize> = inst.houses().map(|h| num_copies + h.0).collect();
        nodes.extend(inst.houses().map(AuxNode::House));

        let mut graph = DirectedGraph::new(nodes.len());
        let mut matching_arc = Vec::new();
        for a in inst.applicants() {
            for k in 0..inst.applicant_capacity(a) as usize {
                let c = first_copy[a.0] + k;
                if let Some(h) = matched_house_of_copy[c] {
                    graph.add_arc(c, house_node[h.0], 0);
                    matching_arc.push(true);
                }
            }
        }
        for a in inst.applicants() {
            for &h in inst.prefs(a) {
                if held[a.0].contains(&h) {
                    continue;
                }
                for k in 0..inst.applicant_capacity(a) as usize {
                    let c = first_copy[a.0] + k;
                    let w = match matched_house_of_copy[c] {
                        Some(cur) if inst.prefers(a, cur, h) => 1,
                        _ => -1,
                    };
                    graph.add_arc(house_node[h.0], c, w);
                    matching_arc.push(false);
                }
            }
        }
        let loads = m.house_loads(inst.num_houses());
        Ok(AuxiliaryGraph {
            nodes,
            matched_house_of_copy,
            copy_owner,
            house_matched: loads.iter().map(|&l| l > 0).collect(),
            graph,
            matching_arc,
        })
    }

    pub fn nodes(&self) -> &[AuxNode] {
        &self.nodes
    }

    pub fn num_copies(&self) -> usize {
        self.copy_owner.len()
    }

    /// The house held by a copy, if any.
    pub fn matched_house(&self, copy: usize) -> Option<HouseId> {
        self.matched_house_of_copy[copy]
    }

    pub fn arcs(&self) -> impl Iterator<Item = AuxArc> + '_ {
        self.graph.arcs().iter().zip(&self.matching_arc).map(|(arc, &matching)| AuxArc {
            from: self.nodes[arc.from],
            to: self.nodes[arc.to],
            weight: arc.weight,
            matching,
        })
    }

    fn is_copy(&self, v: usize) -> bool {
        v < self.num_copies()
    }

    fn aux_arc(&self, i: usize) -> AuxArc {
        let arc = self.graph.arc(i);
        AuxArc {
            from: self.nodes[arc.from],
            to: self.nodes[arc.to],
            weight: arc.weight,
            matching: self.matching_arc[i],
        }
    }

    /// `M` with the matching arcs of `arcs` removed and the others added.
    fn induced(&self, m: &Matching, arcs: &[usize]) -> Matching {
        let mut edges: Vec<Edge> = m.edges().to_vec();
        for &i in arcs {
            let arc = self.graph.arc(i);
            if self.matching_arc[i] {
                let e = Edge::new(self.copy_owner[arc.from], self.house_of(arc.to));
                edges.retain(|&x| x != e);
            } else {
                edges.push(Edge::new(self.copy_owner[arc.to], self.house_of(arc.from)));
            }
        }
        edges.into_iter().collect()
    }

    fn house_of(&self, v: usize) -> HouseId {
        match self.nodes[v] {
            AuxNode::House(h) => h,
            AuxNode::Copy { .. } => unreachable!("node is a copy"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    Cycle,
    Path,
}

/// A negative alternating cycle or path and the matching it induces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominationWitness {
    pub kind: WitnessKind,
    pub arcs: Vec<AuxArc>,
    pub score: i64,
    pub induced: Matching,
    /// Total vote of `M` against `induced`.
    pub vote: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PathScoring {
    /// Start bonus +1 when the path begins by giving up a matched house.
    #[default]
    Corrected,
    /// +1 per copy endpoint on a matching arc, -1 per copy endpoint on a
    /// non-matching arc. Diagnostic only: it can reject popular matchings.
    LiteralMod,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PopularityCheck {
    pub popular: bool,
    pub witness: Option<DominationWitness>,
}

pub fn verify_popular_poly(inst: &Instance, m: &Matching) -> Result<PopularityCheck> {
    verify_popular_poly_with(inst, m, PathScoring::Corrected)
}

pub fn verify_popular_poly_with(inst: &Instance, m: &Matching, scoring: PathScoring) -> Result<PopularityCheck> {
    let aux = AuxiliaryGraph::build(inst, m)?;
    let n = aux.nodes.len();
    let all: Vec<usize> = (0..n).collect();

    if let Sssp::NegativeCycle(cycle) = shortest_paths_or_negative_cycle(&aux.graph, &all) {
        let score = aux.graph.weight_of(&cycle);
        return finish(inst, m, &aux, WitnessKind::Cycle, cycle, score, scoring).map(PopularityCheck::from);
    }

    let feasible_start = |v: usize| {
        if aux.is_copy(v) {
            aux.matched_house_of_copy[v].is_some()
        } else {
            !aux.house_matched[v - aux.num_copies()]
        }
    };
    let feasible_end = |v: usize| {
        if aux.is_copy(v) {
            aux.matched_house_of_copy[v].is_none()
        } else {
            aux.house_matched[v - aux.num_copies()]
        }
    };

    let mut best: Option<(i64, Vec<usize>)> = None;
    for s in (0..n).filter(|&s| feasible_start(s)) {
        let tree = match shortest_paths_or_negative_cycle(&aux.graph, &[s]) {
            Sssp::Paths(tree) => tree,
            Sssp::NegativeCycle(_) => return Err(Error::Inconsistency("negative cycle missed by global scan".into())),
        };
        for e in (0..n).filter(|&e| e != s && feasible_end(e)) {
            if tree.dist[e].is_none() {
                continue;
            }
            // Both ends on one applicant: the path closes into a cycle, which
            // the cycle scan has already covered with the proper pairing.
            if aux.is_copy(s) && aux.is_copy(e) && aux.copy_owner[s] == aux.copy_owner[e] {
                continue;
            }
            let path = tree.path_to(&aux.graph, e).expect("reachable node has a path");
            if path.is_empty() {
                continue;
            }
            let score = path_score(&aux, s, e, &path, scoring);
            if score < 0 && best.as_ref().is_none_or(|(b, _)| score < *b) {
                best = Some((score, path));
            }
        }
    }

    match best {
        None => Ok(PopularityCheck {
            popular: true,
            witness: None,
        }),
        Some((score, path)) => {
            finish(inst, m, &aux, WitnessKind::Path, path, score, scoring).map(PopularityCheck::from)
        }
    }
}

impl From<DominationWitness> for PopularityCheck {
    fn from(w: DominationWitness) -> Self {
        PopularityCheck {
            popular: false,
            witness: Some(w),
        }
    }
}

fn path_score(aux: &AuxiliaryGraph, s: usize, e: usize, path: &[usize], scoring: PathScoring) -> i64 {
    let w = aux.graph.weight_of(path);
    match scoring {
        PathScoring::Corrected => w + i64::from(aux.is_copy(s)),
        PathScoring::LiteralMod => {
            let mut modifier = 0;
            for (v, arc) in [(s, path[0]), (e, path[path.len() - 1])] {
                if aux.is_copy(v) {
                    modifier += if aux.matching_arc[arc] { 1 } else { -1 };
                }
            }
            w + modifier
        }
    }
}

fn finish(
    inst: &Instance,
    m: &Matching,
    aux: &AuxiliaryGraph,
    kind: WitnessKind,
    arcs: Vec<usize>,
    score: i64,
    scoring: PathScoring,
) -> Result<DominationWitness> {
    let induced = aux.induced(m, &arcs);
    inst.check_matching(&induced)
        .map_err(|e| Error::Inconsistency(format!("witness induces an infeasible matching: {e}")))?;
    let vote = total_vote(inst, m, &induced, PopularityNotion::Traditional).total;
    if scoring == PathScoring::Corrected && vote >= 0 {
        return Err(Error::Inconsistency(format!(
            "witness with score {score} does not dominate (total vote {vote})"
        )));
    }
    Ok(DominationWitness {
        kind,
        arcs: arcs.iter().map(|&i| aux.aux_arc(i)).collect(),
        score,
        induced,
        vote,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::votes::is_popular_brute_force;

    fn m(inst: &Instance, pairs: &[(&str, &str)]) -> Matching {
        pairs
            .iter()
            .map(|(a, h)| Edge::new(inst.applicant_by_id(a).unwrap(), inst.house_by_id(h).unwrap()))
            .collect()
    }

    #[test]
    fn copies_and_arcs() {
        let inst = Instance::builder()
            .applicant("a", 2, ["h1", "h2"])
            .house("h1", 1)
            .house("h2", 1)
            .build()
            .unwrap();
        let aux = AuxiliaryGraph::build(&inst, &m(&inst, &[("a", "h1")])).unwrap();
        assert_eq!(aux.num_copies(), 2);
        assert_eq!(aux.matched_house(0), Some(HouseId(0)));
        assert_eq!(aux.matched_house(1), None);
        let arcs: Vec<AuxArc> = aux.arcs().collect();
        assert_eq!(arcs.len(), 3);
        let c = |index| AuxNode::Copy { applicant: ApplicantId(0), index };
        assert_eq!((arcs[0].from, arcs[0].to, arcs[0].weight), (c(0), AuxNode::House(HouseId(0)), 0));
        assert_eq!((arcs[1].from, arcs[1].to, arcs[1].weight), (AuxNode::House(HouseId(1)), c(0), 1));
        assert_eq!((arcs[2].from, arcs[2].to, arcs[2].weight), (AuxNode::House(HouseId(1)), c(1), -1));

        let aux = AuxiliaryGraph::build(&inst, &Matching::empty()).unwrap();
        assert!(aux.arcs().all(|a| !a.matching && a.weight == -1));
    }

    #[test]
    fn upgrade_arc_weight_is_negative() {
        let inst = Instance::builder()
            .applicant("a", 1, ["h1", "h2"])
            .house("h1", 1)
            .house("h2", 1)
            .build()
            .unwrap();
        let aux = AuxiliaryGraph::build(&inst, &m(&inst, &[("a", "h2")])).unwrap();
        let arc = aux.arcs().find(|a| a.from == AuxNode::House(HouseId(0))).unwrap();
        assert_eq!(arc.weight, -1);
    }

    #[test]
    fn rejects_capacitated_houses() {
        let inst = Instance::builder().applicant("a", 1, ["h"]).house("h", 2).build().unwrap();
        assert!(matches!(
            verify_popular_poly(&inst, &Matching::empty()),
            Err(Error::UnsupportedRegime(_))
        ));
    }

    #[test]
    fn single_pair() {
        let inst = Instance::builder().applicant("a", 1, ["h"]).house("h", 1).build().unwrap();
        assert!(verify_popular_poly(&inst, &m(&inst, &[("a", "h")])).unwrap().popular);
        let r = verify_popular_poly(&inst, &Matching::empty()).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.kind, WitnessKind::Path);
        assert_eq!(w.arcs.len(), 1);
        assert_eq!(w.score, -1);
        assert_eq!(w.induced, m(&inst, &[("a", "h")]));
    }

    #[test]
    fn exposed_rival_is_not_a_threat_under_corrected_scoring() {
        let inst = Instance::builder()
            .applicant("a", 1, ["h"])
            .applicant("b", 1, ["h"])
            .house("h", 1)
            .build()
            .unwrap();
        let mm = m(&inst, &[("a", "h")]);
        assert!(verify_popular_poly(&inst, &mm).unwrap().popular);
        assert!(is_popular_brute_force(&inst, &mm, PopularityNotion::Traditional, 100).unwrap().holds);
        let literal = verify_popular_poly_with(&inst, &mm, PathScoring::LiteralMod).unwrap();
        assert!(!literal.popular);
        assert_eq!(literal.witness.unwrap().score, -1);
    }

    #[test]
    fn same_applicant_endpoints_are_not_a_path() {
        let inst = Instance::builder()
            .applicant("a", 2, ["h1", "h5"])
            .applicant("b", 1, ["h1", "h5"])
            .house("h1", 1)
            .house("h5", 1)
            .build()
            .unwrap();
        let mm = m(&inst, &[("a", "h1"), ("b", "h5")]);
        let bf = is_popular_brute_force(&inst, &mm, PopularityNotion::Traditional, 100).unwrap();
        assert_eq!(verify_popular_poly(&inst, &mm).unwrap().popular, bf.holds);
    }
}
