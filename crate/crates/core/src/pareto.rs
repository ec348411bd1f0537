//! Pareto-optimal maximum matchings for unit-capacity applicants.

use alloc::vec;
use alloc::vec::Vec;

use crate::engine::{max_size_max_weight_matching, BipartiteProblem};
use crate::error::{Error, Result};
use crate::model::{ApplicantId, Edge, HouseId, Instance, Matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankedEdge {
    pub applicant: ApplicantId,
    pub house: HouseId,
    /// 1-based position in the applicant's list.
    pub rank: u32,
}

pub fn ranked_edges(inst: &Instance) -> impl Iterator<Item = RankedEdge> + '_ {
    inst.applicants().flat_map(move |a| {
        inst.prefs(a).iter().enumerate().map(move |(i, &h)| RankedEdge {
            applicant: a,
            house: h,
            rank: i as u32 + 1,
        })
    })
}

fn solve(inst: &Instance, weight: impl Fn(&RankedEdge) -> i64) -> Result<Matching> {
    let mut p = BipartiteProblem::new(inst.num_applicants(), inst.house_capacities().to_vec());
    let edges: Vec<RankedEdge> = ranked_edges(inst).collect();
    for e in &edges {
        p.add_edge(e.applicant.0, e.house.0, weight(e));
    }
    let sol = max_size_max_weight_matching(&p)
        .map_err(|e| Error::Inconsistency(alloc::format!("unconstrained matching reported {e:?}")))?;
    Ok(sol
        .edges
        .iter()
        .map(|&i| Edge::new(edges[i].applicant, edges[i].house))
        .collect())
}

/// A maximum matching of least total rank. Such a matching is Pareto-optimal.
pub fn find_pareto_max(inst: &Instance) -> Result<Matching> {
    inst.require_unit_applicants()?;
    solve(inst, |e| -i64::from(e.rank))
}

/// Size of a maximum matching under the current house capacities.
pub fn max_matching_size(inst: &Instance) -> Result<usize> {
    inst.require_unit_applicants()?;
    Ok(solve(inst, |_| 0)?.len())
}

pub fn rank_sum(inst: &Instance, m: &Matching) -> u64 {
    m.edges()
        .iter()
        .map(|e| u64::from(inst.rank(e.applicant, e.house).unwrap_or(0)))
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoCheck {
    pub optimal: bool,
    /// A matching that Pareto-dominates the input, when one exists.
    pub improvement: Option<Matching>,
}

/// Polynomial Pareto check.
///
/// Houses form a digraph with an arc `h -> g` whenever some occupant of `h`
/// prefers `g`. `M` can be improved iff an unmatched applicant accepts an
/// undersubscribed house, an occupant prefers an undersubscribed house, or
/// the digraph has a cycle.
pub fn is_pareto_optimal(inst: &Instance, m: &Matching) -> Result<ParetoCheck> {
    inst.require_unit_applicants()?;
    inst.check_matching(m)?;
    let n = inst.num_applicants();
    let assigned = m.assignment(n);
    let loads = m.house_loads(inst.num_houses());
    let free = |h: HouseId| loads[h.0] < inst.house_capacity(h);

    let better = |a: ApplicantId| -> &[HouseId] {
        let prefs = inst.prefs(a);
        match assigned[a.0] {
            None => prefs,
            Some(cur) => &prefs[..prefs.iter().position(|&h| h == cur).unwrap()],
        }
    };

    for a in inst.applicants() {
        if let Some(&g) = better(a).iter().find(|&&g| free(g)) {
            let mut edges: Vec<Edge> = m.edges().iter().copied().filter(|e| e.applicant != a).collect();
            edges.push(Edge::new(a, g));
            return certified(inst, m, edges.into_iter().collect());
        }
    }

    // out[h] = (g, mover) arcs in applicant order.
    let mut out: Vec<Vec<(HouseId, ApplicantId)>> = vec![Vec::new(); inst.num_houses()];
    for a in inst.applicants() {
        if let Some(h) = assigned[a.0] {
            for &g in better(a) {
                if inst.house_capacity(g) > 0 {
                    out[h.0].push((g, a));
                }
            }
        }
    }
    if let Some(cycle) = find_cycle(&out) {
        let movers: Vec<(ApplicantId, HouseId)> = cycle;
        let mut edges: Vec<Edge> = m
            .edges()
            .iter()
            .copied()
            .filter(|e| movers.iter().all(|&(a, _)| a != e.applicant))
            .collect();
        edges.extend(movers.iter().map(|&(a, g)| Edge::new(a, g)));
        return certified(inst, m, edges.into_iter().collect());
    }
    Ok(ParetoCheck {
        optimal: true,
        improvement: None,
    })
}

fn certified(inst: &Instance, m: &Matching, better: Matching) -> Result<ParetoCheck> {
    inst.check_matching(&better)
        .map_err(|e| Error::Inconsistency(alloc::format!("Pareto improvement is infeasible: {e}")))?;
    let n = inst.num_applicants();
    if !crate::votes::pareto_dominates(inst, &better.assignment(n), &m.assignment(n)) {
        return Err(Error::Inconsistency("Pareto improvement does not dominate".into()));
    }
    Ok(ParetoCheck {
        optimal: false,
        improvement: Some(better),
    })
}

/// A directed cycle as (mover, destination) pairs.
fn find_cycle(out: &[Vec<(HouseId, ApplicantId)>]) -> Option<Vec<(ApplicantId, HouseId)>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Open,
        Done,
    }
    let n = out.len();
    let mut mark = vec![Mark::New; n];
    // (node, next arc index, arc used to enter)
    let mut stack: Vec<(usize, usize, Option<ApplicantId>)> = Vec::new();
    for root in 0..n {
        if mark[root] != Mark::New {
            continue;
        }
        stack.push((root, 0, None));
        mark[root] = Mark::Open;
        while let Some(&mut (v, ref mut next, _)) = stack.last_mut() {
            if *next == out[v].len() {
                mark[v] = Mark::Done;
                stack.pop();
                continue;
            }
            let (g, mover) = out[v][*next];
            *next += 1;
            match mark[g.0] {
                Mark::New => {
                    mark[g.0] = Mark::Open;
                    stack.push((g.0, 0, Some(mover)));
                }
                Mark::Open => {
                    let start = stack.iter().position(|&(u, _, _)| u == g.0).unwrap();
                    let mut cycle = Vec::new();
                    for w in start..stack.len() - 1 {
                        let entering = stack[w + 1].2.unwrap();
                        cycle.push((entering, HouseId(stack[w + 1].0)));
                    }
                    cycle.push((mover, g));
                    return Some(cycle);
                }
                Mark::Done => {}
            }
        }
    }
    None
}
