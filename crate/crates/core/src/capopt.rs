//! Capacity-modification optimizers.
//!
//! The polynomial solvers cover MinSum with increases only (popular and
//! Pareto targets) and MinMax for the Pareto target. Everything else is an
//! exhaustive search over change vectors in canonical order: cost first, then
//! lexicographic by house declaration order, where each entry runs through
//! `0, -1, 1, -2, 2, ...`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::chapop::{exists_perfect_popular, is_popular_cha, max_conditioned_matching, ReducedGraph};
use crate::error::{Error, Result};
use crate::model::{CapacityChange, Edge, Instance, Matching};
use crate::pareto::{find_pareto_max, is_pareto_optimal, max_matching_size};

pub const DEFAULT_CANDIDATE_CEILING: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    PolyOptimal,
    ExhaustiveOptimal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimizationResult {
    pub change: CapacityChange,
    pub matching: Matching,
    pub cost: u64,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    L1,
    LInf,
}

impl Norm {
    pub fn of(self, change: &CapacityChange) -> u64 {
        match self {
            Norm::L1 => change.l1(),
            Norm::LInf => change.linf(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    PopularPerfect,
    ParetoPerfect,
}

pub type Probe<'a> = dyn Fn(&CapacityChange) -> Option<Matching> + Sync + 'a;

/// Evaluates a batch of candidates and reports the first hit in batch order.
pub trait BatchStrategy {
    fn first_hit(&self, batch: &[CapacityChange], probe: &Probe<'_>) -> Option<(usize, Matching)>;

    fn batch_size(&self) -> usize {
        1024
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Sequential;

impl BatchStrategy for Sequential {
    fn first_hit(&self, batch: &[CapacityChange], probe: &Probe<'_>) -> Option<(usize, Matching)> {
        batch.iter().enumerate().find_map(|(i, c)| probe(c).map(|m| (i, m)))
    }
}

#[derive(Clone, Copy)]
pub struct ExactSearch<'s> {
    pub ceiling: u128,
    pub strategy: &'s dyn BatchStrategy,
}

impl Default for ExactSearch<'static> {
    fn default() -> Self {
        ExactSearch {
            ceiling: DEFAULT_CANDIDATE_CEILING,
            strategy: &Sequential,
        }
    }
}

/// Checks that `result` is feasible, perfect and meets `target` under the
/// changed capacities, and that its cost is the stated norm.
pub fn certify(inst: &Instance, result: &OptimizationResult, target: Target, norm: Norm) -> Result<()> {
    let changed = inst.with_capacity_change(&result.change)?;
    changed.check_matching(&result.matching)?;
    if !changed.is_perfect(&result.matching)? {
        return Err(Error::Inconsistency("optimizer output is not perfect".into()));
    }
    let ok = match target {
        Target::PopularPerfect => is_popular_cha(&changed, &result.matching)?.popular,
        Target::ParetoPerfect => is_pareto_optimal(&changed, &result.matching)?.optimal,
    };
    if !ok {
        return Err(Error::Inconsistency(format!("optimizer output fails the {target:?} check")));
    }
    if norm.of(&result.change) != result.cost {
        return Err(Error::Inconsistency("optimizer cost differs from the change norm".into()));
    }
    Ok(())
}

fn certified(
    inst: &Instance,
    result: OptimizationResult,
    target: Target,
    norm: Norm,
) -> Result<OptimizationResult> {
    certify(inst, &result, target, norm)?;
    Ok(result)
}

/// Increase-only MinSum for a perfect popular matching.
///
/// Keep a maximum conditioned matching and send every applicant it leaves
/// out to their first choice, raising that capacity by one each time.
pub fn min_sum_pop_perfect_increase(inst: &Instance) -> Result<OptimizationResult> {
    let g = ReducedGraph::build(inst)?;
    let base = max_conditioned_matching(inst)?;
    let assigned = base.assignment(inst.num_applicants());
    let mut change = CapacityChange::zero(inst.num_houses());
    let mut edges: Vec<Edge> = base.edges().to_vec();
    for a in inst.applicants() {
        if assigned[a.0].is_some() {
            continue;
        }
        let f = g.first[a.0].ok_or_else(|| {
            Error::Infeasible(format!("applicant {} has no usable house", inst.applicant_id(a)))
        })?;
        change.add(f, 1);
        edges.push(Edge::new(a, f));
    }
    let cost = change.l1();
    certified(
        inst,
        OptimizationResult {
            change,
            matching: edges.into_iter().collect(),
            cost,
            certificate: Certificate::PolyOptimal,
        },
        Target::PopularPerfect,
        Norm::L1,
    )
}

fn check_unit_applicants(inst: &Instance) -> Result<()> {
    ReducedGraph::build(inst).map(|_| ())
}

fn popular_probe(inst: &Instance) -> impl Fn(&CapacityChange) -> Option<Matching> + Sync + '_ {
    move |c| {
        let changed = inst.with_capacity_change(c).ok()?;
        exists_perfect_popular(&changed).ok().flatten()
    }
}

fn pareto_probe(inst: &Instance) -> impl Fn(&CapacityChange) -> Option<Matching> + Sync + '_ {
    move |c| {
        let changed = inst.with_capacity_change(c).ok()?;
        let m = find_pareto_max(&changed).ok()?;
        (m.len() == inst.num_applicants()).then_some(m)
    }
}

/// Exhaustive MinSum for a perfect popular matching with `|r|_1 <= budget`.
pub fn min_sum_pop_perfect_exact(
    inst: &Instance,
    budget: u64,
    allow_decrease: bool,
    search: ExactSearch<'_>,
) -> Result<Option<OptimizationResult>> {
    check_unit_applicants(inst)?;
    let found = exhaustive_min_sum(inst, budget, allow_decrease, search, &popular_probe(inst))?;
    found
        .map(|r| certified(inst, r, Target::PopularPerfect, Norm::L1))
        .transpose()
}

/// Exhaustive MinMax for a perfect popular matching with `|r|_inf <= k_bound`.
pub fn min_max_pop_perfect_exact(
    inst: &Instance,
    k_bound: u64,
    allow_decrease: bool,
    search: ExactSearch<'_>,
) -> Result<Option<OptimizationResult>> {
    check_unit_applicants(inst)?;
    let found = exhaustive_min_max(inst, k_bound, allow_decrease, search, &popular_probe(inst))?;
    found
        .map(|r| certified(inst, r, Target::PopularPerfect, Norm::LInf))
        .transpose()
}

/// Exhaustive MinMax for a perfect Pareto-optimal matching. Used to check
/// the polynomial [`min_max_pareto_perfect`].
pub fn min_max_pareto_perfect_exact(
    inst: &Instance,
    k_bound: u64,
    allow_decrease: bool,
    search: ExactSearch<'_>,
) -> Result<Option<OptimizationResult>> {
    check_unit_applicants(inst)?;
    let found = exhaustive_min_max(inst, k_bound, allow_decrease, search, &pareto_probe(inst))?;
    found
        .map(|r| certified(inst, r, Target::ParetoPerfect, Norm::LInf))
        .transpose()
}

fn no_usable_list(inst: &Instance) -> Result<()> {
    match inst.applicants().find(|&a| inst.prefs(a).is_empty()) {
        Some(a) => Err(Error::Infeasible(format!(
            "applicant {} accepts no house",
            inst.applicant_id(a)
        ))),
        None => Ok(()),
    }
}

/// MinSum for a perfect Pareto-optimal matching: raise the first choice of
/// every applicant a maximum matching leaves out.
pub fn min_sum_pareto_perfect(inst: &Instance) -> Result<OptimizationResult> {
    inst.require_unit_applicants()?;
    no_usable_list(inst)?;
    let base = find_pareto_max(inst)?;
    let assigned = base.assignment(inst.num_applicants());
    let mut change = CapacityChange::zero(inst.num_houses());
    for a in inst.applicants().filter(|a| assigned[a.0].is_none()) {
        change.add(inst.prefs(a)[0], 1);
    }
    let matching = find_pareto_max(&inst.with_capacity_change(&change)?)?;
    let cost = change.l1();
    certified(
        inst,
        OptimizationResult {
            change,
            matching,
            cost,
            certificate: Certificate::PolyOptimal,
        },
        Target::ParetoPerfect,
        Norm::L1,
    )
}

/// MinMax for a perfect Pareto-optimal matching: the least uniform raise
/// that admits a perfect matching, trimmed to what the matching uses.
pub fn min_max_pareto_perfect(inst: &Instance) -> Result<OptimizationResult> {
    inst.require_unit_applicants()?;
    no_usable_list(inst)?;
    let n = inst.num_applicants();
    let raised = |k: u32| {
        let caps = inst.house_capacities().iter().map(|&q| q + k).collect();
        inst.with_house_capacities(caps)
    };
    let (mut lo, mut hi) = (0u32, n as u32);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if max_matching_size(&raised(mid)?)? == n {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let matching = find_pareto_max(&raised(lo)?)?;
    if matching.len() != n {
        return Err(Error::Infeasible("no perfect matching at any uniform raise".into()));
    }
    let loads = matching.house_loads(inst.num_houses());
    let delta = inst
        .houses()
        .map(|h| i64::from(loads[h.0].saturating_sub(inst.house_capacity(h))))
        .collect();
    let change = CapacityChange::from_deltas(delta);
    let cost = change.linf();
    certified(
        inst,
        OptimizationResult {
            change,
            matching,
            cost,
            certificate: Certificate::PolyOptimal,
        },
        Target::ParetoPerfect,
        Norm::LInf,
    )
}

/// Values of `[lo, hi]` by magnitude, decreases first.
fn entry_order(lo: i64, hi: i64) -> impl Iterator<Item = i64> {
    let top = (-lo).max(hi);
    (0..=top)
        .flat_map(|m| [-m, m].into_iter().take(if m == 0 { 1 } else { 2 }))
        .filter(move |&d| lo <= d && d <= hi)
}

struct Batcher<'a, 's> {
    search: ExactSearch<'s>,
    probe: &'a Probe<'a>,
    batch: Vec<CapacityChange>,
    found: Option<(CapacityChange, Matching)>,
}

impl Batcher<'_, '_> {
    fn push(&mut self, delta: &[i64]) -> ControlFlow<()> {
        self.batch.push(CapacityChange::from_deltas(delta.to_vec()));
        if self.batch.len() >= self.search.strategy.batch_size() {
            self.flush()
        } else {
            ControlFlow::Continue(())
        }
    }

    fn flush(&mut self) -> ControlFlow<()> {
        let hit = self.search.strategy.first_hit(&self.batch, self.probe);
        match hit {
            Some((i, m)) => {
                self.found = Some((self.batch.swap_remove(i), m));
                self.batch.clear();
                ControlFlow::Break(())
            }
            None => {
                self.batch.clear();
                ControlFlow::Continue(())
            }
        }
    }
}

fn guard(candidates: u128, ceiling: u128) -> Result<()> {
    if candidates > ceiling {
        Err(Error::TooLargeForExactSearch { candidates, ceiling })
    } else {
        Ok(())
    }
}

fn lower_bound(q: u32, reach: u64, allow_decrease: bool) -> i64 {
    if allow_decrease {
        -(i64::from(q).min(reach as i64))
    } else {
        0
    }
}

/// Number of integer vectors with `lo[i] <= d[i] <= hi` and `sum |d[i]| = c`, for every `c <= budget`.
fn count_by_l1(lo: &[i64], hi: i64, budget: u64) -> Vec<u128> {
    let b = budget as usize;
    let mut ways = vec![0u128; b + 1];
    ways[0] = 1;
    for &l in lo {
        let mut next = vec![0u128; b + 1];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for d in l..=hi {
                let t = s + d.unsigned_abs() as usize;
                if t <= b {
                    next[t] = next[t].saturating_add(w);
                }
            }
        }
        ways = next;
    }
    ways
}

/// Canonical search over `|r|_1 = 0, 1, ..., budget`.
pub fn exhaustive_min_sum(
    inst: &Instance,
    budget: u64,
    allow_decrease: bool,
    search: ExactSearch<'_>,
    probe: &Probe<'_>,
) -> Result<Option<OptimizationResult>> {
    let lo: Vec<i64> = inst
        .house_capacities()
        .iter()
        .map(|&q| lower_bound(q, budget, allow_decrease))
        .collect();
    let hi = budget as i64;
    let total = count_by_l1(&lo, hi, budget).iter().fold(0u128, |a, &w| a.saturating_add(w));
    guard(total, search.ceiling)?;

    let mut batcher = Batcher {
        search,
        probe,
        batch: Vec::new(),
        found: None,
    };
    let mut delta = vec![0i64; lo.len()];
    for cost in 0..=budget {
        let flow = sphere(&lo, hi, 0, cost as i64, &mut delta, &mut batcher);
        if flow.is_continue() {
            let _ = batcher.flush();
        }
        if let Some((change, matching)) = batcher.found.take() {
            return Ok(Some(OptimizationResult {
                change,
                matching,
                cost,
                certificate: Certificate::ExhaustiveOptimal,
            }));
        }
    }
    Ok(None)
}

fn sphere(lo: &[i64], hi: i64, i: usize, left: i64, delta: &mut [i64], out: &mut Batcher) -> ControlFlow<()> {
    if i == lo.len() {
        return if left == 0 { out.push(delta) } else { ControlFlow::Continue(()) };
    }
    let reach: i64 = lo[i + 1..].iter().map(|&l| (-l).max(hi)).sum();
    for d in entry_order(lo[i], hi) {
        let rest = left - d.abs();
        if rest < 0 || rest > reach {
            continue;
        }
        delta[i] = d;
        sphere(lo, hi, i + 1, rest, delta, out)?;
    }
    delta[i] = 0;
    ControlFlow::Continue(())
}

/// Canonical search over `|r|_inf = 0, 1, ..., k_bound`.
pub fn exhaustive_min_max(
    inst: &Instance,
    k_bound: u64,
    allow_decrease: bool,
    search: ExactSearch<'_>,
    probe: &Probe<'_>,
) -> Result<Option<OptimizationResult>> {
    let caps = inst.house_capacities();
    let box_size = |k: u64| -> u128 {
        caps.iter()
            .map(|&q| (k as i64 - lower_bound(q, k, allow_decrease) + 1) as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    };
    let mut total = 0u128;
    for k in 0..=k_bound {
        let layer = if k == 0 { 1 } else { box_size(k).saturating_sub(box_size(k - 1)) };
        total = total.saturating_add(layer);
    }
    guard(total, search.ceiling)?;

    let mut batcher = Batcher {
        search,
        probe,
        batch: Vec::new(),
        found: None,
    };
    for k in 0..=k_bound {
        let lo: Vec<i64> = caps.iter().map(|&q| lower_bound(q, k, allow_decrease)).collect();
        let mut delta = vec![0i64; lo.len()];
        let flow = cube_shell(&lo, k as i64, 0, false, &mut delta, &mut batcher);
        if flow.is_continue() {
            let _ = batcher.flush();
        }
        if let Some((change, matching)) = batcher.found.take() {
            return Ok(Some(OptimizationResult {
                change,
                matching,
                cost: k,
                certificate: Certificate::ExhaustiveOptimal,
            }));
        }
    }
    Ok(None)
}

/// Vectors in the box `[lo, k]` whose largest magnitude is exactly `k`.
fn cube_shell(lo: &[i64], k: i64, i: usize, hit: bool, delta: &mut [i64], out: &mut Batcher) -> ControlFlow<()> {
    if i == lo.len() {
        return if hit || k == 0 { out.push(delta) } else { ControlFlow::Continue(()) };
    }
    for d in entry_order(lo[i], k) {
        let now = hit || d.abs() == k;
        if !now && k > 0 && i + 1 == lo.len() {
            continue;
        }
        delta[i] = d;
        cube_shell(lo, k, i + 1, now, delta, out)?;
    }
    delta[i] = 0;
    ControlFlow::Continue(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::tests::example_42;

    fn crowd(n: usize) -> Instance {
        let mut b = Instance::builder();
        b.add_house("h1", 1);
        for i in 1..=n {
            b.add_applicant(alloc::format!("a{i}"), 1, ["h1"]);
        }
        b.build().unwrap()
    }

    #[test]
    fn increase_only_examples() {
        let one = Instance::builder().applicant("a", 1, ["h"]).house("h", 1).build().unwrap();
        assert_eq!(min_sum_pop_perfect_increase(&one).unwrap().cost, 0);
        assert_eq!(min_sum_pop_perfect_increase(&example_42()).unwrap().cost, 2);
        let r = min_sum_pop_perfect_increase(&crowd(2)).unwrap();
        assert_eq!(r.cost, 1);
        assert_eq!(r.change.deltas(), &[1]);
        assert_eq!(r.matching.len(), 2);
    }

    #[test]
    fn exact_min_sum_on_example() {
        let inst = example_42();
        let r = min_sum_pop_perfect_exact(&inst, 2, true, ExactSearch::default()).unwrap().unwrap();
        assert_eq!(r.cost, 1);
        assert_eq!(r.change.deltas(), &[0, -1, 0]);
        let r = min_sum_pop_perfect_exact(&inst, 2, false, ExactSearch::default()).unwrap().unwrap();
        assert_eq!(r.cost, 2);
        assert!(min_sum_pop_perfect_exact(&inst, 1, false, ExactSearch::default()).unwrap().is_none());
    }

    #[test]
    fn guard_trips() {
        let inst = example_42();
        let tight = ExactSearch {
            ceiling: 3,
            strategy: &Sequential,
        };
        assert!(matches!(
            min_sum_pop_perfect_exact(&inst, 2, true, tight),
            Err(Error::TooLargeForExactSearch { .. })
        ));
    }

    #[test]
    fn min_max_examples() {
        let one = Instance::builder().applicant("a", 1, ["h"]).house("h", 1).build().unwrap();
        assert_eq!(min_max_pop_perfect_exact(&one, 2, false, ExactSearch::default()).unwrap().unwrap().cost, 0);
        let r = min_max_pop_perfect_exact(&crowd(3), 3, false, ExactSearch::default()).unwrap().unwrap();
        assert_eq!(r.cost, 2);
    }

    #[test]
    fn pareto_examples() {
        let one = Instance::builder().applicant("a", 1, ["h"]).house("h", 1).build().unwrap();
        assert_eq!(min_sum_pareto_perfect(&one).unwrap().cost, 0);
        assert_eq!(min_sum_pareto_perfect(&crowd(2)).unwrap().cost, 1);
        assert_eq!(min_sum_pareto_perfect(&example_42()).unwrap().cost, 0);
        assert_eq!(min_max_pareto_perfect(&one).unwrap().cost, 0);
        let r = min_max_pareto_perfect(&crowd(3)).unwrap();
        assert_eq!((r.cost, r.change.deltas()), (2, &[2i64][..]));
        let pair = Instance::builder()
            .applicant("a1", 1, ["h1", "h2"])
            .applicant("a2", 1, ["h1", "h2"])
            .house("h1", 1)
            .house("h2", 1)
            .build()
            .unwrap();
        assert_eq!(min_max_pareto_perfect(&pair).unwrap().cost, 0);
    }

    #[test]
    fn shell_enumeration_is_canonical_and_complete() {
        let lo = [-1i64, 0, -1];
        struct Collect;
        impl BatchStrategy for Collect {
            fn first_hit(&self, _: &[CapacityChange], _: &Probe<'_>) -> Option<(usize, Matching)> {
                None
            }
        }
        let probe = |_: &CapacityChange| None;
        let strategy = Collect;
        let mut b = Batcher {
            search: ExactSearch {
                ceiling: 100,
                strategy: &strategy,
            },
            probe: &probe,
            batch: Vec::new(),
            found: None,
        };
        let mut delta = [0i64; 3];
        let _ = cube_shell(&lo, 1, 0, false, &mut delta, &mut b);
        let got: Vec<Vec<i64>> = b.batch.iter().map(|c| c.deltas().to_vec()).collect();
        let mut expected = Vec::new();
        for x in [0, -1, 1] {
            for y in [0, 1] {
                for z in [0i64, -1, 1] {
                    if [x, y, z].iter().any(|d: &i64| d.abs() == 1) {
                        expected.push(vec![x, y, z]);
                    }
                }
            }
        }
        assert_eq!(got, expected);

        let mut b2 = Batcher {
            search: ExactSearch {
                ceiling: 100,
                strategy: &strategy,
            },
            probe: &probe,
            batch: Vec::new(),
            found: None,
        };
        let _ = sphere(&lo, 2, 0, 2, &mut delta, &mut b2);
        let got: Vec<Vec<i64>> = b2.batch.iter().map(|c| c.deltas().to_vec()).collect();
        let mut expected = Vec::new();
        for x in [0i64, -1, 1, 2] {
            for y in [0i64, 1, 2] {
                for z in [0i64, -1, 1, 2] {
                    if x.abs() + y.abs() + z.abs() == 2 {
                        expected.push(vec![x, y, z]);
                    }
                }
            }
        }
        assert_eq!(got, expected);
        assert_eq!(count_by_l1(&lo, 2, 2)[2], expected.len() as u128);
    }
}
