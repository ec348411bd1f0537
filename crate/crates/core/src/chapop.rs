//! Popular matchings in capacitated house allocation (unit applicants).
//!
//! `f(a)` is the best acceptable house of `a`; its admirers are the
//! applicants whose first choice it is. Houses of capacity zero take no part.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{max_size_max_weight_matching, BipartiteProblem};
use crate::error::{Error, Result};
use crate::model::{ApplicantId, Edge, HouseId, Instance, Matching};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    pub first: Vec<Option<HouseId>>,
    pub second: Vec<Option<HouseId>>,
    pub admirers: Vec<Vec<ApplicantId>>,
    /// `|admirers(h)| >= q(h)`.
    pub saturable: Vec<bool>,
    /// `|admirers(h)| <= q(h)`.
    pub sub_admired: Vec<bool>,
}

impl ReducedGraph {
    pub fn build(inst: &Instance) -> Result<Self> {
        inst.require_unit_applicants()?;
        let cap = |h: HouseId| inst.house_capacity(h) as usize;
        let first: Vec<Option<HouseId>> = inst
            .applicants()
            .map(|a| inst.prefs(a).iter().copied().find(|&h| cap(h) > 0))
            .collect();
        let mut admirers = vec![Vec::new(); inst.num_houses()];
        for a in inst.applicants() {
            if let Some(h) = first[a.0] {
                admirers[h.0].push(a);
            }
        }
        let second = inst
            .applicants()
            .map(|a| {
                let f = first[a.0]?;
                if admirers[f.0].len() <= cap(f) {
                    Some(f)
                } else {
                    inst.prefs(a)
                        .iter()
                        .copied()
                        .find(|&h| admirers[h.0].len() < cap(h))
                }
            })
            .collect();
        let live = |h: HouseId| cap(h) > 0;
        let saturable = inst.houses().map(|h| live(h) && admirers[h.0].len() >= cap(h)).collect();
        let sub_admired = inst.houses().map(|h| live(h) && admirers[h.0].len() <= cap(h)).collect();
        let g = ReducedGraph {
            first,
            second,
            admirers,
            saturable,
            sub_admired,
        };
        debug_assert!(g.edges().all(|e| {
            g.admirers[e.house.0].len() <= cap(e.house) || g.first[e.applicant.0] == Some(e.house)
        }));
        Ok(g)
    }

    /// Distinct edges of the reduced graph, in applicant order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.first.iter().zip(&self.second).enumerate().flat_map(|(a, (&f, &s))| {
            let a = ApplicantId(a);
            let extra = s.filter(|&s| Some(s) != f);
            f.into_iter().chain(extra).map(move |h| Edge::new(a, h))
        })
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.first[e.applicant.0] == Some(e.house) || self.second[e.applicant.0] == Some(e.house)
    }

    fn problem(&self, inst: &Instance) -> BipartiteProblem {
        let mut p = BipartiteProblem::new(inst.num_applicants(), inst.house_capacities().to_vec());
        for e in self.edges() {
            let admirer = self.first[e.applicant.0] == Some(e.house);
            let w = i64::from(admirer && self.saturable[e.house.0]);
            let idx = p.add_edge(e.applicant.0, e.house.0, w);
            if admirer && self.sub_admired[e.house.0] {
                p.fixed.push(idx);
            }
        }
        p.saturated_right = inst.houses().filter(|h| self.saturable[h.0]).map(|h| h.0).collect();
        p
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChaVerdict {
    pub popular: bool,
    /// First violated condition, 1 to 4.
    pub failed_condition: Option<u8>,
}

pub fn is_popular_cha(inst: &Instance, m: &Matching) -> Result<ChaVerdict> {
    let g = ReducedGraph::build(inst)?;
    inst.check_matching(m)?;
    let failed = first_failed_condition(inst, &g, m);
    Ok(ChaVerdict {
        popular: failed.is_none(),
        failed_condition: failed,
    })
}

fn first_failed_condition(inst: &Instance, g: &ReducedGraph, m: &Matching) -> Option<u8> {
    if !m.edges().iter().all(|&e| g.contains(e)) {
        return Some(1);
    }
    let assigned = m.assignment(inst.num_applicants());
    if inst.applicants().any(|a| g.second[a.0].is_some() && assigned[a.0].is_none()) {
        return Some(2);
    }
    let loads = m.house_loads(inst.num_houses());
    let saturated_by_admirers = |h: HouseId| {
        loads[h.0] == inst.house_capacity(h) && m.applicants_of(h).all(|a| g.first[a.0] == Some(h))
    };
    if inst.houses().any(|h| g.saturable[h.0] && !saturated_by_admirers(h)) {
        return Some(3);
    }
    let holds_admirers = |h: HouseId| g.admirers[h.0].iter().all(|&a| assigned[a.0] == Some(h));
    if inst.houses().any(|h| g.sub_admired[h.0] && !holds_admirers(h)) {
        return Some(4);
    }
    None
}

fn to_matching(p: &BipartiteProblem, edges: &[usize]) -> Matching {
    edges
        .iter()
        .map(|&i| Edge::new(ApplicantId(p.edges[i].left), HouseId(p.edges[i].right)))
        .collect()
}

/// A popular matching, or `None` when the instance admits none.
///
/// Every applicant with a second choice is required to be matched inside the
/// flow problem itself, so the four conditions become exactly the constraint
/// set of one solve.
pub fn find_popular_cha(inst: &Instance) -> Result<Option<Matching>> {
    let g = ReducedGraph::build(inst)?;
    let mut p = g.problem(inst);
    p.required_left = inst.applicants().filter(|a| g.second[a.0].is_some()).map(|a| a.0).collect();
    let Ok(sol) = max_size_max_weight_matching(&p) else {
        return Ok(None);
    };
    let m = to_matching(&p, &sol.edges);
    if let Some(c) = first_failed_condition(inst, &g, &m) {
        return Err(Error::Inconsistency(alloc::format!(
            "constructed matching violates condition {c}"
        )));
    }
    Ok(Some(m))
}

/// A popular matching that matches every applicant, if one exists.
pub fn exists_perfect_popular(inst: &Instance) -> Result<Option<Matching>> {
    let g = ReducedGraph::build(inst)?;
    let mut p = BipartiteProblem::new(inst.num_applicants(), inst.house_capacities().to_vec());
    for e in g.edges() {
        p.add_edge(e.applicant.0, e.house.0, 0);
    }
    p.saturated_right = inst.houses().filter(|h| g.saturable[h.0]).map(|h| h.0).collect();
    let Ok(sol) = max_size_max_weight_matching(&p) else {
        return Ok(None);
    };
    if sol.size != inst.num_applicants() {
        return Ok(None);
    }
    let m = to_matching(&p, &sol.edges);
    if first_failed_condition(inst, &g, &m).is_some() || !inst.is_perfect(&m)? {
        return Err(Error::Inconsistency("perfect matching in the reduced graph is not popular".into()));
    }
    Ok(Some(m))
}

/// Largest matching of the reduced graph that saturates every saturable
/// house with admirers and keeps every sub-admired house's admirers home.
pub fn max_conditioned_matching(inst: &Instance) -> Result<Matching> {
    let g = ReducedGraph::build(inst)?;
    let p = g.problem(inst);
    let sol = max_size_max_weight_matching(&p)
        .map_err(|e| Error::Inconsistency(alloc::format!("conditioned matching infeasible: {e:?}")))?;
    Ok(to_matching(&p, &sol.edges))
}

pub fn max_conditioned_matching_size(inst: &Instance) -> Result<usize> {
    max_conditioned_matching(inst).map(|m| m.len())
}
