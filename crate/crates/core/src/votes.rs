//! Vote semantics and the brute-force oracles that everything else is
//! checked against.
//!
//! All votes are taken from the point of view of the first matching: a
//! positive vote means the applicant prefers `M` to `M'`, so `M'` dominates
//! `M` iff the total is negative.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::engine::{max_size_max_weight_matching, BipartiteProblem};
use crate::error::{Error, Result};
use crate::model::{visit_matchings, ApplicantId, Edge, HouseId, Instance, Matching, PopularityNotion};

/// Smaller side size from which the worst pairing is found by an assignment
/// solve instead of enumerating injections.
pub const PAIRING_ENUMERATION_THRESHOLD: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairingSolver {
    /// Enumeration below [`PAIRING_ENUMERATION_THRESHOLD`], assignment above.
    Auto,
    Enumerate,
    Assignment,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteOutcome {
    pub per_applicant: Vec<i64>,
    pub total: i64,
}

/// Result of a brute-force property check. `witness` is the canonically
/// first matching that breaks the property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Matching>,
}

fn difference(x: &[HouseId], y: &[HouseId]) -> Vec<HouseId> {
    x.iter().copied().filter(|h| !y.contains(h)).collect()
}

fn sign(inst: &Instance, a: ApplicantId, lost: HouseId, gained: HouseId) -> i64 {
    if inst.prefers(a, lost, gained) {
        1
    } else {
        -1
    }
}

/// `vote_a(S, T, N)` for an explicit pairing `N` of `S \ T` with `T \ S`.
pub fn pairing_vote(
    inst: &Instance,
    a: ApplicantId,
    s: &[HouseId],
    t: &[HouseId],
    pairing: &[(HouseId, HouseId)],
) -> Result<i64> {
    let lost = difference(s, t);
    let gained = difference(t, s);
    if pairing.len() != lost.len().min(gained.len()) {
        return Err(Error::validation(
            "pairing",
            format!(
                "has {} pairs, expected min(|S\\T|, |T\\S|) = {}",
                pairing.len(),
                lost.len().min(gained.len())
            ),
        ));
    }
    let mut used_lost = Vec::new();
    let mut used_gained = Vec::new();
    let mut value = 0;
    for &(x, y) in pairing {
        if !lost.contains(&x) || !gained.contains(&y) || used_lost.contains(&x) || used_gained.contains(&y) {
            return Err(Error::validation(
                "pairing",
                format!("pair ({}, {}) is not a feasible pairing element", inst.house_id(x), inst.house_id(y)),
            ));
        }
        used_lost.push(x);
        used_gained.push(y);
        value += sign(inst, a, x, y);
    }
    Ok(value + lost.len() as i64 - gained.len() as i64)
}

/// Traditional vote of `a` for `S = M(a)` against `T = M'(a)`: the worst
/// value over all feasible pairings.
pub fn vote_traditional(inst: &Instance, a: ApplicantId, s: &[HouseId], t: &[HouseId]) -> i64 {
    vote_traditional_with(inst, a, s, t, PairingSolver::Auto)
}

pub fn vote_traditional_with(
    inst: &Instance,
    a: ApplicantId,
    s: &[HouseId],
    t: &[HouseId],
    solver: PairingSolver,
) -> i64 {
    let lost = difference(s, t);
    let gained = difference(t, s);
    let base = lost.len() as i64 - gained.len() as i64;
    let k = lost.len().min(gained.len());
    if k == 0 {
        return base;
    }
    let enumerate = match solver {
        PairingSolver::Auto => k < PAIRING_ENUMERATION_THRESHOLD,
        PairingSolver::Enumerate => true,
        PairingSolver::Assignment => false,
    };
    let worst = if enumerate {
        worst_pairing_by_enumeration(inst, a, &lost, &gained)
    } else {
        worst_pairing_by_assignment(inst, a, &lost, &gained)
    };
    base + worst
}

/// Minimum of `sum sign(x, y)` over injections of the smaller side into the larger.
fn worst_pairing_by_enumeration(inst: &Instance, a: ApplicantId, lost: &[HouseId], gained: &[HouseId]) -> i64 {
    let lost_smaller = lost.len() <= gained.len();
    let (small, large) = if lost_smaller { (lost, gained) } else { (gained, lost) };
    let score = |i: usize, j: usize| {
        if lost_smaller {
            sign(inst, a, small[i], large[j])
        } else {
            sign(inst, a, large[j], small[i])
        }
    };
    fn go(i: usize, used: &mut Vec<bool>, small: usize, score: &dyn Fn(usize, usize) -> i64) -> i64 {
        if i == small {
            return 0;
        }
        let mut best = i64::MAX;
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                best = best.min(score(i, j) + go(i + 1, used, small, score));
                used[j] = false;
            }
        }
        best
    }
    go(0, &mut vec![false; large.len()], small.len(), &score)
}

fn worst_pairing_by_assignment(inst: &Instance, a: ApplicantId, lost: &[HouseId], gained: &[HouseId]) -> i64 {
    let lost_smaller = lost.len() <= gained.len();
    let (small, large) = if lost_smaller { (lost, gained) } else { (gained, lost) };
    let mut p = BipartiteProblem::new(small.len(), vec![1; large.len()]);
    for (i, &x) in small.iter().enumerate() {
        for (j, &y) in large.iter().enumerate() {
            let s = if lost_smaller { sign(inst, a, x, y) } else { sign(inst, a, y, x) };
            p.add_edge(i, j, -s);
        }
    }
    let sol = max_size_max_weight_matching(&p).expect("complete bipartite pairing graph is feasible");
    debug_assert_eq!(sol.size, small.len());
    -sol.weight
}

/// Lexicographic vote: the best house of `S xor T` decides.
pub fn vote_lex(inst: &Instance, a: ApplicantId, s: &[HouseId], t: &[HouseId]) -> i64 {
    let best = s
        .iter()
        .filter(|h| !t.contains(h))
        .chain(t.iter().filter(|h| !s.contains(h)))
        .min_by_key(|&&h| inst.rank(a, h));
    match best {
        None => 0,
        Some(h) if s.contains(h) => 1,
        Some(_) => -1,
    }
}

pub fn applicant_vote(
    inst: &Instance,
    a: ApplicantId,
    s: &[HouseId],
    t: &[HouseId],
    notion: PopularityNotion,
) -> i64 {
    match notion {
        PopularityNotion::Traditional => vote_traditional(inst, a, s, t),
        PopularityNotion::Lexicographic => vote_lex(inst, a, s, t),
    }
}

/// Per-applicant and total vote of `m` against `m2`.
pub fn total_vote(inst: &Instance, m: &Matching, m2: &Matching, notion: PopularityNotion) -> VoteOutcome {
    let n = inst.num_applicants();
    let s = m.by_applicant(n);
    let t = m2.by_applicant(n);
    let per_applicant: Vec<i64> = inst
        .applicants()
        .map(|a| applicant_vote(inst, a, &s[a.0], &t[a.0], notion))
        .collect();
    VoteOutcome {
        total: per_applicant.iter().sum(),
        per_applicant,
    }
}

fn group_by_applicant(edges: &[Edge], out: &mut [Vec<HouseId>]) {
    for v in out.iter_mut() {
        v.clear();
    }
    for e in edges {
        out[e.applicant.0].push(e.house);
    }
}

/// `M` is popular iff no feasible `M'` has a negative total vote against it.
/// Enumerates all matchings (at most `limit`).
pub fn is_popular_brute_force(
    inst: &Instance,
    m: &Matching,
    notion: PopularityNotion,
    limit: u64,
) -> Result<Verdict> {
    inst.check_matching(m)?;
    let n = inst.num_applicants();
    let s = m.by_applicant(n);
    let mut t = vec![Vec::new(); n];
    let mut witness = None;
    visit_matchings(inst, limit, |edges| {
        group_by_applicant(edges, &mut t);
        let total: i64 = inst
            .applicants()
            .map(|a| applicant_vote(inst, a, &s[a.0], &t[a.0], notion))
            .sum();
        if total < 0 {
            witness = Some(Matching::from_sorted(edges.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
    })
}

/// `M2` Pareto-dominates `M`: nobody is worse off and someone is better off.
/// Unit applicant capacities only.
pub fn pareto_dominates(inst: &Instance, m2: &[Option<HouseId>], m: &[Option<HouseId>]) -> bool {
    let mut strict = false;
    for a in inst.applicants() {
        match (m2[a.0], m[a.0]) {
            (x, y) if x == y => {}
            (Some(_), None) => strict = true,
            (None, Some(_)) => return false,
            (Some(x), Some(y)) => {
                if inst.prefers(a, x, y) {
                    strict = true;
                } else {
                    return false;
                }
            }
            (None, None) => unreachable!(),
        }
    }
    strict
}

/// No feasible matching Pareto-dominates `M`. Unit applicant capacities only.
pub fn is_pareto_optimal_brute_force(inst: &Instance, m: &Matching, limit: u64) -> Result<Verdict> {
    inst.require_unit_applicants()?;
    inst.check_matching(m)?;
    let n = inst.num_applicants();
    let base = m.assignment(n);
    let mut other = vec![None; n];
    let mut witness = None;
    visit_matchings(inst, limit, |edges| {
        other.iter_mut().for_each(|x| *x = None);
        for e in edges {
            other[e.applicant.0] = Some(e.house);
        }
        if pareto_dominates(inst, &other, &base) {
            witness = Some(Matching::from_sorted(edges.to_vec()));
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(Verdict {
        holds: witness.is_none(),
        witness,
    })
}

/// A matching minimizing the total vote of `M` against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Challenger {
    pub total_vote: i64,
    pub matching: Matching,
}

impl Challenger {
    /// `M` is popular iff its strongest challenger does not win.
    pub fn is_popular(&self) -> bool {
        self.total_vote >= 0
    }
}

#[derive(Clone)]
struct Layer {
    value: i64,
    parent: Vec<u8>,
    option: usize,
}

/// Exact minimum of `vote(M, M')` over all feasible `M'`.
///
/// Dynamic program over applicants in declaration order. The state is the
/// load of every house that a later applicant still finds acceptable, so it
/// explores the same space as [`is_popular_brute_force`] while sharing
/// identical suffixes. Fails with [`Error::TooLargeForEnumeration`] when a
/// layer holds more than `state_limit` states.
pub fn strongest_challenger(
    inst: &Instance,
    m: &Matching,
    notion: PopularityNotion,
    state_limit: u64,
) -> Result<Challenger> {
    inst.check_matching(m)?;
    let n = inst.num_applicants();
    let nh = inst.num_houses();
    let current = m.by_applicant(n);
    if inst.house_capacities().iter().any(|&q| q > u32::from(u8::MAX)) {
        return Err(Error::UnsupportedRegime("house capacities above 255 in challenger search"));
    }

    let mut last_use = vec![None; nh];
    for a in inst.applicants() {
        for &h in inst.prefs(a) {
            last_use[h.0] = Some(a.0);
        }
    }

    // All subsets of usable acceptable houses with at most q(a) elements.
    let options: Vec<Vec<Vec<HouseId>>> = inst
        .applicants()
        .map(|a| {
            let usable: Vec<HouseId> = inst
                .prefs(a)
                .iter()
                .copied()
                .filter(|&h| inst.house_capacity(h) > 0)
                .collect();
            let mut out = Vec::new();
            subsets_up_to(&usable, inst.applicant_capacity(a) as usize, &mut Vec::new(), 0, &mut out);
            out
        })
        .collect();

    let mut layers: Vec<BTreeMap<Vec<u8>, Layer>> = Vec::with_capacity(n + 1);
    let mut first = BTreeMap::new();
    first.insert(
        vec![0u8; nh],
        Layer {
            value: 0,
            parent: Vec::new(),
            option: 0,
        },
    );
    layers.push(first);

    for a in inst.applicants() {
        let mut next: BTreeMap<Vec<u8>, Layer> = BTreeMap::new();
        let votes: Vec<i64> = options[a.0]
            .iter()
            .map(|t| applicant_vote(inst, a, &current[a.0], t, notion))
            .collect();
        for (state, entry) in &layers[a.0] {
            'opt: for (oi, option) in options[a.0].iter().enumerate() {
                let mut succ = state.clone();
                for &h in option {
                    if u32::from(succ[h.0]) >= inst.house_capacity(h) {
                        continue 'opt;
                    }
                    succ[h.0] += 1;
                }
                for h in 0..nh {
                    if last_use[h].is_none_or(|last| last <= a.0) {
                        succ[h] = 0;
                    }
                }
                let value = entry.value + votes[oi];
                match next.get_mut(&succ) {
                    Some(existing) if existing.value <= value => {}
                    Some(existing) => {
                        *existing = Layer {
                            value,
                            parent: state.clone(),
                            option: oi,
                        }
                    }
                    None => {
                        next.insert(
                            succ,
                            Layer {
                                value,
                                parent: state.clone(),
                                option: oi,
                            },
                        );
                    }
                }
            }
        }
        if next.len() as u64 > state_limit {
            return Err(Error::TooLargeForEnumeration { limit: state_limit });
        }
        layers.push(next);
    }

    let (mut key, last) = layers[n]
        .iter()
        .next()
        .map(|(k, v)| (k.clone(), v.clone()))
        .ok_or_else(|| Error::Inconsistency("challenger search lost every state".into()))?;
    let best = last.value;
    let mut edges = Vec::new();
    for a in (0..n).rev() {
        let entry = &layers[a + 1][&key];
        for &h in &options[a][entry.option] {
            edges.push(Edge::new(ApplicantId(a), h));
        }
        key = entry.parent.clone();
    }
    let matching: Matching = edges.into_iter().collect();
    debug_assert_eq!(total_vote(inst, m, &matching, notion).total, best);
    Ok(Challenger {
        total_vote: best,
        matching,
    })
}

fn subsets_up_to(items: &[HouseId], k: usize, cur: &mut Vec<HouseId>, from: usize, out: &mut Vec<Vec<HouseId>>) {
    out.push(cur.clone());
    if cur.len() == k {
        return;
    }
    for i in from..items.len() {
        cur.push(items[i]);
        subsets_up_to(items, k, cur, i + 1, out);
        cur.pop();
    }
}
