//! Market instances, matchings and capacity-change vectors.
//!
//! Applicants and houses are addressed by dense indices assigned in
//! declaration order. Every deterministic ordering in the crate (enumeration,
//! tie-breaks, canonical witnesses) uses these indices, never the string ids.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ApplicantId(pub usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HouseId(pub usize);

/// An acceptability edge. Ordered by applicant index, then house index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub applicant: ApplicantId,
    pub house: HouseId,
}

impl Edge {
    pub fn new(applicant: ApplicantId, house: HouseId) -> Self {
        Edge { applicant, house }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PopularityNotion {
    /// Worst-case feasible pairing vote, values in `[-q, q]`.
    Traditional,
    /// Best element of the symmetric difference decides, values in `{-1, 0, 1}`.
    Lexicographic,
}

/// The parts of an instance that never change under capacity modification.
#[derive(Debug)]
struct Market {
    applicant_ids: Vec<String>,
    house_ids: Vec<String>,
    applicant_index: BTreeMap<String, ApplicantId>,
    house_index: BTreeMap<String, HouseId>,
    prefs: Vec<Vec<HouseId>>,
    /// `rank[a][h]` is the 1-based position of `h` in `prefs[a]`, 0 if unacceptable.
    rank: Vec<Vec<u32>>,
    applicant_capacity: Vec<u32>,
}

/// A many-to-one market: applicants with strict preference lists and
/// capacities, houses with capacities.
///
/// Cloning is cheap; the preference structure is shared.
#[derive(Debug, Clone)]
pub struct Instance {
    market: Arc<Market>,
    house_capacity: Vec<u32>,
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.house_capacity == other.house_capacity
            && (Arc::ptr_eq(&self.market, &other.market)
                || (self.market.applicant_ids == other.market.applicant_ids
                    && self.market.house_ids == other.market.house_ids
                    && self.market.prefs == other.market.prefs
                    && self.market.applicant_capacity == other.market.applicant_capacity))
    }
}

impl Eq for Instance {}

#[derive(Debug, Default, Clone)]
pub struct InstanceBuilder {
    applicants: Vec<(String, u32, Vec<String>)>,
    houses: Vec<(String, u32)>,
}

impl InstanceBuilder {
    pub fn applicant<S: AsRef<str>>(
        mut self,
        id: impl Into<String>,
        capacity: u32,
        prefs: impl IntoIterator<Item = S>,
    ) -> Self {
        self.add_applicant(id, capacity, prefs);
        self
    }

    pub fn house(mut self, id: impl Into<String>, capacity: u32) -> Self {
        self.add_house(id, capacity);
        self
    }

    pub fn add_applicant<S: AsRef<str>>(
        &mut self,
        id: impl Into<String>,
        capacity: u32,
        prefs: impl IntoIterator<Item = S>,
    ) -> &mut Self {
        let prefs = prefs.into_iter().map(|p| p.as_ref().to_string()).collect();
        self.applicants.push((id.into(), capacity, prefs));
        self
    }

    pub fn add_house(&mut self, id: impl Into<String>, capacity: u32) -> &mut Self {
        self.houses.push((id.into(), capacity));
        self
    }

    pub fn build(self) -> Result<Instance> {
        let mut house_index = BTreeMap::new();
        let mut house_ids = Vec::with_capacity(self.houses.len());
        let mut house_capacity = Vec::with_capacity(self.houses.len());
        for (i, (id, cap)) in self.houses.into_iter().enumerate() {
            if cap == 0 {
                return Err(Error::validation(
                    format!("house {id}"),
                    "capacity must be at least 1",
                ));
            }
            if house_index.insert(id.clone(), HouseId(i)).is_some() {
                return Err(Error::validation(format!("house {id}"), "duplicate house id"));
            }
            house_ids.push(id);
            house_capacity.push(cap);
        }

        let m = house_ids.len();
        let mut applicant_index = BTreeMap::new();
        let mut applicant_ids = Vec::with_capacity(self.applicants.len());
        let mut applicant_capacity = Vec::with_capacity(self.applicants.len());
        let mut prefs = Vec::with_capacity(self.applicants.len());
        let mut rank = Vec::with_capacity(self.applicants.len());
        for (i, (id, cap, list)) in self.applicants.into_iter().enumerate() {
            if cap == 0 {
                return Err(Error::validation(
                    format!("applicant {id}"),
                    "capacity must be at least 1",
                ));
            }
            if applicant_index.insert(id.clone(), ApplicantId(i)).is_some() {
                return Err(Error::validation(
                    format!("applicant {id}"),
                    "duplicate applicant id",
                ));
            }
            let mut row = vec![0u32; m];
            let mut resolved = Vec::with_capacity(list.len());
            for (pos, name) in list.iter().enumerate() {
                let h = *house_index.get(name).ok_or_else(|| {
                    Error::validation(
                        format!("applicant {id}"),
                        format!("preference list names unknown house {name}"),
                    )
                })?;
                if row[h.0] != 0 {
                    return Err(Error::validation(
                        format!("applicant {id}"),
                        format!("duplicate house {name} in preference list"),
                    ));
                }
                row[h.0] = pos as u32 + 1;
                resolved.push(h);
            }
            applicant_ids.push(id);
            applicant_capacity.push(cap);
            prefs.push(resolved);
            rank.push(row);
        }

        Ok(Instance {
            market: Arc::new(Market {
                applicant_ids,
                house_ids,
                applicant_index,
                house_index,
                prefs,
                rank,
                applicant_capacity,
            }),
            house_capacity,
        })
    }
}

impl Instance {
    pub fn builder() -> InstanceBuilder {
        InstanceBuilder::default()
    }

    pub fn num_applicants(&self) -> usize {
        self.market.applicant_ids.len()
    }

    pub fn num_houses(&self) -> usize {
        self.market.house_ids.len()
    }

    pub fn applicants(&self) -> impl Iterator<Item = ApplicantId> + Clone {
        (0..self.num_applicants()).map(ApplicantId)
    }

    pub fn houses(&self) -> impl Iterator<Item = HouseId> + Clone {
        (0..self.num_houses()).map(HouseId)
    }

    pub fn applicant_id(&self, a: ApplicantId) -> &str {
        &self.market.applicant_ids[a.0]
    }

    pub fn house_id(&self, h: HouseId) -> &str {
        &self.market.house_ids[h.0]
    }

    pub fn applicant_by_id(&self, id: &str) -> Option<ApplicantId> {
        self.market.applicant_index.get(id).copied()
    }

    pub fn house_by_id(&self, id: &str) -> Option<HouseId> {
        self.market.house_index.get(id).copied()
    }

    /// Preference list of `a`, best first.
    pub fn prefs(&self, a: ApplicantId) -> &[HouseId] {
        &self.market.prefs[a.0]
    }

    /// 1-based rank of `h` for `a`, `None` if unacceptable.
    pub fn rank(&self, a: ApplicantId, h: HouseId) -> Option<u32> {
        match self.market.rank[a.0][h.0] {
            0 => None,
            r => Some(r),
        }
    }

    pub fn is_acceptable(&self, a: ApplicantId, h: HouseId) -> bool {
        self.market.rank[a.0][h.0] != 0
    }

    /// `true` iff `a` strictly prefers `x` to `y`. Both must be acceptable.
    pub fn prefers(&self, a: ApplicantId, x: HouseId, y: HouseId) -> bool {
        let row = &self.market.rank[a.0];
        row[x.0] < row[y.0]
    }

    pub fn applicant_capacity(&self, a: ApplicantId) -> u32 {
        self.market.applicant_capacity[a.0]
    }

    pub fn house_capacity(&self, h: HouseId) -> u32 {
        self.house_capacity[h.0]
    }

    pub fn house_capacities(&self) -> &[u32] {
        &self.house_capacity
    }

    pub fn applicant_capacities(&self) -> &[u32] {
        &self.market.applicant_capacity
    }

    /// All applicants have capacity one.
    pub fn applicants_unit(&self) -> bool {
        self.market.applicant_capacity.iter().all(|&q| q == 1)
    }

    /// All houses have capacity one.
    pub fn houses_unit(&self) -> bool {
        self.house_capacity.iter().all(|&q| q == 1)
    }

    pub(crate) fn require_unit_applicants(&self) -> Result<()> {
        if self.applicants_unit() {
            Ok(())
        } else {
            Err(Error::UnsupportedRegime("requires unit applicant capacities"))
        }
    }

    pub(crate) fn require_unit_houses(&self) -> Result<()> {
        if self.houses_unit() {
            Ok(())
        } else {
            Err(Error::UnsupportedRegime("requires unit house capacities"))
        }
    }

    /// Same market with different house capacities. Zero is allowed and
    /// removes the house from play.
    pub fn with_house_capacities(&self, capacities: Vec<u32>) -> Result<Instance> {
        if capacities.len() != self.num_houses() {
            return Err(Error::validation(
                "capacity vector",
                format!("expected {} entries, got {}", self.num_houses(), capacities.len()),
            ));
        }
        Ok(Instance {
            market: Arc::clone(&self.market),
            house_capacity: capacities,
        })
    }

    /// Applies `q + r`. Fails if some capacity would become negative.
    pub fn with_capacity_change(&self, change: &CapacityChange) -> Result<Instance> {
        Ok(Instance {
            market: Arc::clone(&self.market),
            house_capacity: change.apply(&self.house_capacity)?,
        })
    }

    /// Acceptability edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.applicants().flat_map(move |a| {
            let row = &self.market.rank[a.0];
            row.iter()
                .enumerate()
                .filter(|(_, &r)| r != 0)
                .map(move |(h, _)| Edge::new(a, HouseId(h)))
        })
    }

    /// Checks all feasibility invariants of `m` against this instance.
    pub fn check_matching(&self, m: &Matching) -> Result<()> {
        let mut applicant_load = vec![0u32; self.num_applicants()];
        let mut house_load = vec![0u32; self.num_houses()];
        for e in m.edges() {
            if e.applicant.0 >= self.num_applicants() || e.house.0 >= self.num_houses() {
                return Err(Error::InfeasibleMatching(format!("edge {e:?} out of range")));
            }
            if !self.is_acceptable(e.applicant, e.house) {
                return Err(Error::InfeasibleMatching(format!(
                    "{} does not accept {}",
                    self.applicant_id(e.applicant),
                    self.house_id(e.house)
                )));
            }
            applicant_load[e.applicant.0] += 1;
            house_load[e.house.0] += 1;
        }
        for a in self.applicants() {
            if applicant_load[a.0] > self.applicant_capacity(a) {
                return Err(Error::InfeasibleMatching(format!(
                    "applicant {} exceeds capacity {}",
                    self.applicant_id(a),
                    self.applicant_capacity(a)
                )));
            }
        }
        for h in self.houses() {
            if house_load[h.0] > self.house_capacity(h) {
                return Err(Error::InfeasibleMatching(format!(
                    "house {} exceeds capacity {}",
                    self.house_id(h),
                    self.house_capacity(h)
                )));
            }
        }
        Ok(())
    }

    /// Every applicant saturated. Errors if `m` is infeasible.
    pub fn is_perfect(&self, m: &Matching) -> Result<bool> {
        self.check_matching(m)?;
        let loads = m.applicant_loads(self.num_applicants());
        Ok(self
            .applicants()
            .all(|a| loads[a.0] == self.applicant_capacity(a)))
    }
}

/// A set of acceptability edges, kept sorted and duplicate-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn empty() -> Self {
        Matching { edges: Vec::new() }
    }

    /// Rejects duplicate edges. Feasibility against an instance is checked
    /// separately by [`Instance::check_matching`].
    pub fn from_edges(mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InfeasibleMatching(format!("duplicate edge {:?}", w[0])));
        }
        Ok(Matching { edges })
    }

    pub(crate) fn from_sorted(edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        Matching { edges }
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Houses held by `a`, in house index order.
    pub fn houses_of(&self, a: ApplicantId) -> impl Iterator<Item = HouseId> + '_ {
        let lo = self.edges.partition_point(|e| e.applicant < a);
        self.edges[lo..]
            .iter()
            .take_while(move |e| e.applicant == a)
            .map(|e| e.house)
    }

    pub fn applicants_of(&self, h: HouseId) -> impl Iterator<Item = ApplicantId> + '_ {
        self.edges.iter().filter(move |e| e.house == h).map(|e| e.applicant)
    }

    pub fn applicant_loads(&self, num_applicants: usize) -> Vec<u32> {
        let mut loads = vec![0u32; num_applicants];
        for e in &self.edges {
            loads[e.applicant.0] += 1;
        }
        loads
    }

    pub fn house_loads(&self, num_houses: usize) -> Vec<u32> {
        let mut loads = vec![0u32; num_houses];
        for e in &self.edges {
            loads[e.house.0] += 1;
        }
        loads
    }

    /// `M(a)` for every applicant, each list in house index order.
    pub fn by_applicant(&self, num_applicants: usize) -> Vec<Vec<HouseId>> {
        let mut out = vec![Vec::new(); num_applicants];
        for e in &self.edges {
            out[e.applicant.0].push(e.house);
        }
        out
    }

    /// For unit-capacity applicants: the single house of each applicant.
    pub fn assignment(&self, num_applicants: usize) -> Vec<Option<HouseId>> {
        let mut out = vec![None; num_applicants];
        for e in &self.edges {
            out[e.applicant.0] = Some(e.house);
        }
        out
    }
}

impl FromIterator<Edge> for Matching {
    fn from_iter<I: IntoIterator<Item = Edge>>(iter: I) -> Self {
        let mut edges: Vec<Edge> = iter.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        Matching { edges }
    }
}

/// Per-house integer change `r` applied as `q + r`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CapacityChange {
    delta: Vec<i64>,
}

impl CapacityChange {
    pub fn zero(num_houses: usize) -> Self {
        CapacityChange {
            delta: vec![0; num_houses],
        }
    }

    pub fn from_deltas(delta: Vec<i64>) -> Self {
        CapacityChange { delta }
    }

    pub fn deltas(&self) -> &[i64] {
        &self.delta
    }

    pub fn get(&self, h: HouseId) -> i64 {
        self.delta[h.0]
    }

    pub fn set(&mut self, h: HouseId, value: i64) {
        self.delta[h.0] = value;
    }

    pub fn add(&mut self, h: HouseId, by: i64) {
        self.delta[h.0] += by;
    }

    pub fn l1(&self) -> u64 {
        self.delta.iter().map(|d| d.unsigned_abs()).sum()
    }

    pub fn linf(&self) -> u64 {
        self.delta.iter().map(|d| d.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_increase(&self) -> bool {
        self.delta.iter().all(|&d| d >= 0)
    }

    /// Non-zero entries in house order.
    pub fn nonzero(&self) -> impl Iterator<Item = (HouseId, i64)> + '_ {
        self.delta
            .iter()
            .enumerate()
            .filter(|(_, &d)| d != 0)
            .map(|(h, &d)| (HouseId(h), d))
    }

    pub fn apply(&self, capacities: &[u32]) -> Result<Vec<u32>> {
        if capacities.len() != self.delta.len() {
            return Err(Error::validation(
                "capacity change",
                format!("expected {} entries, got {}", capacities.len(), self.delta.len()),
            ));
        }
        capacities
            .iter()
            .zip(&self.delta)
            .enumerate()
            .map(|(h, (&q, &d))| {
                let v = i64::from(q) + d;
                u32::try_from(v).map_err(|_| {
                    Error::validation(
                        format!("capacity change for house #{h}"),
                        format!("capacity {q} {d:+} is negative or too large"),
                    )
                })
            })
            .collect()
    }
}

/// Calls `visit` with every feasible matching of `inst`, as a sorted edge
/// slice, in lexicographic order of the sorted edge lists (the empty matching
/// first).
///
/// Fails with [`Error::TooLargeForEnumeration`] as soon as more than `limit`
/// matchings would be produced. Returns the number visited.
pub fn visit_matchings<F>(inst: &Instance, limit: u64, mut visit: F) -> Result<u64>
where
    F: FnMut(&[Edge]) -> ControlFlow<()>,
{
    let edges: Vec<Edge> = inst.edges().collect();
    let mut walker = Walker {
        inst,
        edges: &edges,
        applicant_load: vec![0; inst.num_applicants()],
        house_load: vec![0; inst.num_houses()],
        stack: Vec::new(),
        count: 0,
        limit,
    };
    match walker.walk(0, &mut visit) {
        Ok(_) => Ok(walker.count),
        Err(e) => Err(e),
    }
}

struct Walker<'a> {
    inst: &'a Instance,
    edges: &'a [Edge],
    applicant_load: Vec<u32>,
    house_load: Vec<u32>,
    stack: Vec<Edge>,
    count: u64,
    limit: u64,
}

impl Walker<'_> {
    fn walk<F>(&mut self, from: usize, visit: &mut F) -> Result<ControlFlow<()>>
    where
        F: FnMut(&[Edge]) -> ControlFlow<()>,
    {
        self.count += 1;
        if self.count > self.limit {
            return Err(Error::TooLargeForEnumeration { limit: self.limit });
        }
        if visit(&self.stack).is_break() {
            return Ok(ControlFlow::Break(()));
        }
        for i in from..self.edges.len() {
            let e = self.edges[i];
            if self.applicant_load[e.applicant.0] >= self.inst.applicant_capacity(e.applicant)
                || self.house_load[e.house.0] >= self.inst.house_capacity(e.house)
            {
                continue;
            }
            self.applicant_load[e.applicant.0] += 1;
            self.house_load[e.house.0] += 1;
            self.stack.push(e);
            let flow = self.walk(i + 1, visit)?;
            self.stack.pop();
            self.applicant_load[e.applicant.0] -= 1;
            self.house_load[e.house.0] -= 1;
            if flow.is_break() {
                return Ok(flow);
            }
        }
        Ok(ControlFlow::Continue(()))
    }
}

/// Every feasible matching, in canonical order.
pub fn enumerate_matchings(inst: &Instance, limit: u64) -> Result<Vec<Matching>> {
    let mut out = Vec::new();
    visit_matchings(inst, limit, |edges| {
        out.push(Matching::from_sorted(edges.to_vec()));
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    fn one_by_one() -> Instance {
        Instance::builder()
            .applicant("a1", 1, ["h1"])
            .house("h1", 1)
            .build()
            .unwrap()
    }

    /// The capacity-modification example with n = 2.
    pub(crate) fn example_42() -> Instance {
        let mut b = Instance::builder();
        b.add_house("h1", 1).add_house("h2", 2).add_house("h3", 3);
        for i in 1..=4 {
            b.add_applicant(format!("a{i}"), 1, ["h1", "h2", "h3"]);
        }
        b.add_applicant("b", 1, ["h2", "h1"]);
        b.build().unwrap()
    }

    fn edge(inst: &Instance, a: &str, h: &str) -> Edge {
        Edge::new(inst.applicant_by_id(a).unwrap(), inst.house_by_id(h).unwrap())
    }

    #[test]
    fn minimal_instance_is_valid() {
        let inst = one_by_one();
        assert_eq!(inst.num_applicants(), 1);
        assert_eq!(inst.prefs(ApplicantId(0)), &[HouseId(0)]);
    }

    #[test]
    fn duplicate_preference_is_rejected() {
        let err = Instance::builder()
            .applicant("a1", 1, ["h1", "h1"])
            .house("h1", 1)
            .build()
            .unwrap_err();
        match err {
            Error::Validation { entity, reason } => {
                assert_eq!(entity, "applicant a1");
                assert!(reason.contains("duplicate"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn zero_capacity_and_unknown_house_are_rejected() {
        assert!(Instance::builder().house("h", 0).build().is_err());
        assert!(Instance::builder()
            .applicant("a", 0, ["h"])
            .house("h", 1)
            .build()
            .is_err());
        let err = Instance::builder()
            .applicant("a", 1, ["g"])
            .house("h", 1)
            .build()
            .unwrap_err();
        assert!(matches!(err, Error::Validation { ref entity, .. } if entity == "applicant a"));
    }

    #[test]
    fn example_instance_shape() {
        let inst = example_42();
        assert_eq!(inst.num_applicants(), 5);
        assert_eq!(inst.num_houses(), 3);
        let b = inst.applicant_by_id("b").unwrap();
        assert!(inst.prefers(b, HouseId(1), HouseId(0)));
        assert_eq!(inst.rank(b, HouseId(2)), None);
    }

    #[test]
    fn perfectness() {
        let inst = one_by_one();
        let m: Matching = [Edge::new(ApplicantId(0), HouseId(0))].into_iter().collect();
        assert!(inst.is_perfect(&m).unwrap());

        let inst2 = Instance::builder()
            .applicant("a1", 2, ["h1", "h2"])
            .house("h1", 1)
            .house("h2", 1)
            .build()
            .unwrap();
        assert!(!inst2.is_perfect(&m).unwrap());

        let ex = example_42();
        let m: Matching = [
            edge(&ex, "a1", "h1"),
            edge(&ex, "b", "h2"),
            edge(&ex, "a2", "h3"),
            edge(&ex, "a3", "h3"),
            edge(&ex, "a4", "h3"),
        ]
        .into_iter()
        .collect();
        assert!(ex.is_perfect(&m).unwrap());
    }

    #[test]
    fn infeasible_matching_is_a_contract_error() {
        let inst = one_by_one();
        let m: Matching = [Edge::new(ApplicantId(0), HouseId(0))].into_iter().collect();
        let zero = inst.with_house_capacities(vec![0]).unwrap();
        assert!(matches!(zero.is_perfect(&m), Err(Error::InfeasibleMatching(_))));
    }

    #[test]
    fn duplicate_edges_rejected() {
        let e = Edge::new(ApplicantId(0), HouseId(0));
        assert!(Matching::from_edges(vec![e, e]).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_matchings(&one_by_one(), 10).unwrap().len(), 2);

        let two_houses = Instance::builder()
            .applicant("a1", 2, ["h1", "h2"])
            .house("h1", 1)
            .house("h2", 1)
            .build()
            .unwrap();
        let all = enumerate_matchings(&two_houses, 10).unwrap();
        assert_eq!(all.len(), 4);
        // canonical order: {}, {h1}, {h1,h2}, {h2}
        assert_eq!(all[0].len(), 0);
        assert_eq!(all[2].len(), 2);
        assert_eq!(all[3].edges(), &[Edge::new(ApplicantId(0), HouseId(1))]);

        let shared = Instance::builder()
            .applicant("a1", 1, ["h1"])
            .applicant("a2", 1, ["h1"])
            .house("h1", 1)
            .build()
            .unwrap();
        assert_eq!(enumerate_matchings(&shared, 10).unwrap().len(), 3);
    }

    #[test]
    fn enumeration_limit() {
        let inst = Instance::builder()
            .applicant("a1", 2, ["h1", "h2"])
            .house("h1", 1)
            .house("h2", 1)
            .build()
            .unwrap();
        let err = enumerate_matchings(&inst, 3).unwrap_err();
        assert!(err.to_string().contains("instance too large for enumeration"));
        assert_eq!(enumerate_matchings(&inst, 4).unwrap().len(), 4);
    }

    #[test]
    fn capacity_change_norms_and_application() {
        let inst = example_42();
        let change = CapacityChange::from_deltas(vec![0, -1, 2]);
        assert_eq!(change.l1(), 3);
        assert_eq!(change.linf(), 2);
        let changed = inst.with_capacity_change(&change).unwrap();
        assert_eq!(changed.house_capacities(), &[1, 1, 5]);
        let bad = CapacityChange::from_deltas(vec![-2, 0, 0]);
        assert!(inst.with_capacity_change(&bad).is_err());
        let to_zero = CapacityChange::from_deltas(vec![-1, 0, 0]);
        assert_eq!(inst.with_capacity_change(&to_zero).unwrap().house_capacity(HouseId(0)), 0);
    }
}
