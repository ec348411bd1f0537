//! 3DM and Set Cover gadgets, brute-force oracles for the source problems,
//! and validators that compare both sides of each construction.
//!
//! Elements are 1-based. In a 3DM instance with `n` per coordinate, `a_i` is
//! element `i`, `b_i` is `n + i` and `c_i` is `2n + i`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::capopt::{min_max_pop_perfect_exact, min_sum_pop_perfect_exact, ExactSearch};
use crate::chapop::is_popular_cha;
use crate::error::{Error, Result};
use crate::model::{visit_matchings, CapacityChange, Edge, Instance, InstanceBuilder, Matching, PopularityNotion};
use crate::popverify::verify_popular_poly;
use crate::votes::{is_popular_brute_force, strongest_challenger};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeDm {
    pub n_hat: u32,
    pub triples: Vec<[u32; 3]>,
    pub strict: bool,
}

impl ThreeDm {
    pub fn new(n_hat: u32, triples: Vec<[u32; 3]>, strict: bool) -> Result<Self> {
        if n_hat == 0 {
            return Err(Error::validation("3dm", "nHat must be positive"));
        }
        for (j, t) in triples.iter().enumerate() {
            if t.iter().any(|&x| x == 0 || x > n_hat) {
                return Err(Error::validation(format!("triple {}", j + 1), format!("index outside 1..={n_hat}")));
            }
        }
        if strict {
            if triples.len() != 3 * n_hat as usize {
                return Err(Error::validation("3dm", format!("strict mode needs {} triples", 3 * n_hat)));
            }
            let t = ThreeDm {
                n_hat,
                triples: triples.clone(),
                strict,
            };
            let mut count = vec![0u32; 3 * n_hat as usize + 1];
            for j in 0..t.triples.len() {
                for e in t.elements(j) {
                    count[e as usize] += 1;
                }
            }
            if let Some(e) = (1..count.len()).find(|&e| count[e] != 3) {
                return Err(Error::validation(
                    format!("element {e}"),
                    format!("occurs in {} triples, strict mode needs exactly 3", count[e]),
                ));
            }
        }
        Ok(ThreeDm { n_hat, triples, strict })
    }

    pub fn num_elements(&self) -> u32 {
        3 * self.n_hat
    }

    /// Element numbers of triple `j`, ascending.
    pub fn elements(&self, j: usize) -> [u32; 3] {
        let [a, b, c] = self.triples[j];
        [a, self.n_hat + b, 2 * self.n_hat + c]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetCover {
    pub n_elements: u32,
    pub sets: Vec<Vec<u32>>,
    pub k: u32,
}

impl SetCover {
    pub fn new(n_elements: u32, sets: Vec<Vec<u32>>, k: u32) -> Result<Self> {
        let mut covered = vec![false; n_elements as usize + 1];
        let mut clean = Vec::with_capacity(sets.len());
        for (j, s) in sets.into_iter().enumerate() {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::validation(format!("set {}", j + 1), "is empty"));
            }
            if let Some(&e) = s.iter().find(|&&e| e == 0 || e > n_elements) {
                return Err(Error::validation(format!("set {}", j + 1), format!("element {e} outside 1..={n_elements}")));
            }
            for &e in &s {
                covered[e as usize] = true;
            }
            clean.push(s);
        }
        if let Some(e) = (1..=n_elements as usize).find(|&e| !covered[e]) {
            return Err(Error::validation(format!("element {e}"), "is covered by no set"));
        }
        Ok(SetCover {
            n_elements,
            sets: clean,
            k,
        })
    }
}

/// Canonically first set of `n_hat` triple indices that partitions all elements.
pub fn oracle_exact_cover(t: &ThreeDm) -> Option<Vec<usize>> {
    fn go(t: &ThreeDm, from: usize, used: &mut [bool], chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == t.n_hat as usize {
            return true;
        }
        for j in from..t.triples.len() {
            let es = t.elements(j);
            if es.iter().any(|&e| used[e as usize]) {
                continue;
            }
            es.iter().for_each(|&e| used[e as usize] = true);
            chosen.push(j);
            if go(t, j + 1, used, chosen) {
                return true;
            }
            chosen.pop();
            es.iter().for_each(|&e| used[e as usize] = false);
        }
        false
    }
    let mut used = vec![false; t.num_elements() as usize + 1];
    let mut chosen = Vec::new();
    go(t, 0, &mut used, &mut chosen).then_some(chosen)
}

/// Minimum cover by increasing size, canonically first within a size.
pub fn oracle_set_cover(s: &SetCover, limit: u64) -> Result<(usize, Vec<usize>)> {
    let m = s.sets.len();
    if m >= 64 || (1u128 << m) > u128::from(limit) {
        return Err(Error::TooLargeForEnumeration { limit });
    }
    let full: u64 = (1..=s.n_elements).fold(0, |acc, e| acc | (1 << e));
    let masks: Vec<u64> = s.sets.iter().map(|set| set.iter().fold(0, |acc, &e| acc | (1 << e))).collect();
    fn go(masks: &[u64], full: u64, size: usize, from: usize, acc: u64, chosen: &mut Vec<usize>) -> bool {
        if chosen.len() == size {
            return acc == full;
        }
        for j in from..masks.len() {
            chosen.push(j);
            if go(masks, full, size, j + 1, acc | masks[j], chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if s.n_elements >= 63 {
        return Err(Error::UnsupportedRegime("set cover oracle handles at most 62 elements"));
    }
    for size in 0..=m {
        let mut chosen = Vec::new();
        if go(&masks, full, size, 0, 0, &mut chosen) {
            return Ok((size, chosen));
        }
    }
    Err(Error::Inconsistency("validated set cover instance has no cover".into()))
}

/// Every strict instance with the given `n_hat`, as sorted multisets of triples.
pub fn strict_instances(n_hat: u32) -> Vec<ThreeDm> {
    let n = n_hat;
    let mut all = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            for c in 1..=n {
                all.push([a, b, c]);
            }
        }
    }
    let mut out = Vec::new();
    let size = 3 * n as usize;
    let mut counts = vec![0u32; 3 * n as usize + 1];
    fn go(
        all: &[[u32; 3]],
        n: u32,
        size: usize,
        from: usize,
        cur: &mut Vec<[u32; 3]>,
        counts: &mut [u32],
        out: &mut Vec<ThreeDm>,
    ) {
        if cur.len() == size {
            if counts[1..].iter().all(|&c| c == 3) {
                out.push(ThreeDm {
                    n_hat: n,
                    triples: cur.clone(),
                    strict: true,
                });
            }
            return;
        }
        for i in from..all.len() {
            let [a, b, c] = all[i];
            let es = [a, n + b, 2 * n + c];
            if es.iter().any(|&e| counts[e as usize] == 3) {
                continue;
            }
            es.iter().for_each(|&e| counts[e as usize] += 1);
            cur.push(all[i]);
            go(all, n, size, i, cur, counts, out);
            cur.pop();
            es.iter().for_each(|&e| counts[e as usize] -= 1);
        }
    }
    go(&all, n, size, 0, &mut Vec::new(), &mut counts, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Construction {
    PmcapTraditional,
    PmcapLex,
    MinSumDecrease,
    MinMaxDecrease1,
    MinMaxIncrease2,
    SetCoverMinMax,
}

impl Construction {
    pub const ALL: [Construction; 6] = [
        Construction::PmcapTraditional,
        Construction::PmcapLex,
        Construction::MinSumDecrease,
        Construction::MinMaxDecrease1,
        Construction::MinMaxIncrease2,
        Construction::SetCoverMinMax,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Construction::PmcapTraditional => "pmcap-trad",
            Construction::PmcapLex => "pmcap-lex",
            Construction::MinSumDecrease => "minsum-dec",
            Construction::MinMaxDecrease1 => "minmax-dec1",
            Construction::MinMaxIncrease2 => "minmax-inc2",
            Construction::SetCoverMinMax => "setcover-minmax",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// A generated target instance. `target` is the budget (MinSum), the
/// threshold `k` (MinMax), or absent for the existence constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub construction: Construction,
    pub instance: Instance,
    pub target: Option<u64>,
}

/// Capacity change and matching that the gadget prescribes for a yes-instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub change: CapacityChange,
    pub matching: Matching,
}

fn finish(b: InstanceBuilder) -> Instance {
    b.build().expect("generated instance is valid")
}

pub fn reduce_3dm_to_pmcap_traditional(t: &ThreeDm) -> Instance {
    let n = t.n_hat;
    let mut b = Instance::builder();
    for (kind, _) in [("a", 0), ("b", 1), ("c", 2)] {
        for i in 1..=n {
            b.add_house(format!("{kind}{i}"), 1);
        }
    }
    for (j, &[a, bb, c]) in t.triples.iter().enumerate() {
        b.add_applicant(format!("s{}", j + 1), 3, [format!("c{c}"), format!("b{bb}"), format!("a{a}")]);
    }
    finish(b)
}

pub fn reduce_3dm_to_pmcap_lex(t: &ThreeDm) -> Instance {
    let n = t.n_hat;
    let mut b = Instance::builder();
    for kind in ["a", "b", "c"] {
        for i in 1..=n {
            b.add_house(format!("{kind}{i}"), 1);
        }
    }
    for j in 1..=t.triples.len() {
        for l in 1..=3 {
            b.add_house(format!("h{j}_{l}"), 1);
        }
    }
    for (j, &[a, bb, c]) in t.triples.iter().enumerate() {
        let j = j + 1;
        let element = [format!("a{a}"), format!("b{bb}"), format!("c{c}")];
        for l in 1..=3usize {
            let next = l % 3 + 1;
            b.add_applicant(
                format!("s{j}_{l}"),
                2,
                [format!("h{j}_{l}"), element[l - 1].clone(), format!("h{j}_{next}")],
            );
        }
    }
    finish(b)
}

/// Returns the instance and the budget `2 n_hat`.
pub fn reduce_3dm_to_min_sum_decrease(t: &ThreeDm) -> (Instance, u64) {
    let mut b = Instance::builder();
    for i in 1..=t.num_elements() {
        b.add_house(format!("e{i}"), 1);
    }
    for j in 1..=t.triples.len() {
        b.add_house(format!("t{j}"), 3)
            .add_house(format!("p{j}"), 2)
            .add_house(format!("q{j}"), 1)
            .add_house(format!("x{j}"), 1);
    }
    for j in 0..t.triples.len() {
        let es = t.elements(j);
        let j = j + 1;
        for (l, e) in es.iter().enumerate() {
            b.add_applicant(format!("s{j}_{}", l + 1), 1, [format!("e{e}"), format!("p{j}"), format!("t{j}")]);
        }
        b.add_applicant(format!("a{j}"), 1, [format!("q{j}"), format!("p{j}"), format!("x{j}")]);
        b.add_applicant(format!("p{j}'"), 1, [format!("p{j}")]);
        b.add_applicant(format!("q{j}'"), 1, [format!("q{j}")]);
    }
    (finish(b), 2 * u64::from(t.n_hat))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MinMaxVariant {
    DecreaseK1,
    IncreaseK2,
}

/// Returns the instance and the threshold `k` (1 or 2).
///
/// With `IncreaseK2` and `n_hat = 1` the collector starts at capacity 0.
pub fn reduce_3dm_to_min_max(t: &ThreeDm, variant: MinMaxVariant) -> (Instance, u64) {
    let n = t.n_hat;
    let dec = variant == MinMaxVariant::DecreaseK1;
    let mut b = Instance::builder();
    for i in 1..=t.num_elements() {
        b.add_house(format!("e{i}"), 1);
    }
    for j in 1..=t.triples.len() {
        b.add_house(format!("t{j}"), 4)
            .add_house(format!("p{j}"), if dec { 2 } else { 1 })
            .add_house(format!("q{j}"), 1);
    }
    let x_cap = if dec { 2 * n - 1 } else { 2 * n - 2 };
    b.add_house("x", x_cap.max(1));
    let dummies = if dec { 1 } else { 2 };
    for i in 1..=t.num_elements() {
        for l in 1..=dummies {
            let id = if dec { format!("e{i}'") } else { format!("e{i}_{l}") };
            b.add_applicant(id, 1, [format!("e{i}")]);
        }
    }
    for j in 0..t.triples.len() {
        let [e1, e2, e3] = t.elements(j);
        let j = j + 1;
        for (l, e) in [e1, e2, e3, e3].iter().enumerate() {
            b.add_applicant(format!("s{j}_{}", l + 1), 1, [format!("e{e}"), format!("p{j}"), format!("t{j}")]);
        }
        b.add_applicant(format!("a{j}"), 1, [format!("q{j}"), format!("p{j}"), "x".into()]);
        for l in 1..=if dec { 2 } else { 3 } {
            b.add_applicant(format!("q{j}_{l}"), 1, [format!("q{j}")]);
        }
        b.add_applicant(format!("p{j}'"), 1, [format!("p{j}")]);
    }
    let inst = finish(b);
    let inst = if x_cap == 0 {
        let mut caps = inst.house_capacities().to_vec();
        let x = inst.house_by_id("x").unwrap();
        caps[x.0] = 0;
        inst.with_house_capacities(caps).expect("capacity vector has the right length")
    } else {
        inst
    };
    (inst, if dec { 1 } else { 2 })
}

/// `N` defaults to `n^2 m`.
pub fn reduce_set_cover_to_min_max(s: &SetCover, n_scale: Option<u32>) -> Instance {
    let m = s.sets.len() as u32;
    let big_n = n_scale.unwrap_or(s.n_elements * s.n_elements * m);
    let mut b = Instance::builder();
    for (j, set) in s.sets.iter().enumerate() {
        let j = j + 1;
        for l in 1..=set.len() {
            b.add_house(format!("s{j}_{l}"), 1);
        }
        b.add_house(format!("w{j}"), big_n);
    }
    b.add_house("f", 1);
    for l in 1..=big_n {
        b.add_house(format!("x{l}"), 1);
    }
    for i in 1..=s.n_elements {
        let mut prefs = vec![String::from("f")];
        for (j, set) in s.sets.iter().enumerate() {
            if let Some(l) = set.iter().position(|&e| e == i) {
                prefs.push(format!("s{}_{}", j + 1, l + 1));
            }
        }
        b.add_applicant(format!("e{i}"), 1, prefs);
    }
    b.add_applicant("f'", 1, ["f"]);
    for (j, set) in s.sets.iter().enumerate() {
        let j = j + 1;
        for l in 1..=set.len() {
            b.add_applicant(format!("t{j}_{l}"), 1, [format!("s{j}_{l}")]);
        }
        for l in 1..=big_n {
            let mut prefs = vec![format!("x{l}")];
            prefs.extend((1..=set.len()).map(|p| format!("s{j}_{p}")));
            prefs.push(format!("w{j}"));
            b.add_applicant(format!("a{j}_{l}"), 1, prefs);
        }
    }
    for l in 1..=big_n {
        b.add_applicant(format!("y{l}"), 1, [format!("x{l}")]);
    }
    finish(b)
}

pub fn reduce_3dm(t: &ThreeDm, construction: Construction) -> Result<Reduction> {
    let (instance, target) = match construction {
        Construction::PmcapTraditional => (reduce_3dm_to_pmcap_traditional(t), None),
        Construction::PmcapLex => (reduce_3dm_to_pmcap_lex(t), None),
        Construction::MinSumDecrease => {
            let (i, b) = reduce_3dm_to_min_sum_decrease(t);
            (i, Some(b))
        }
        Construction::MinMaxDecrease1 => {
            let (i, k) = reduce_3dm_to_min_max(t, MinMaxVariant::DecreaseK1);
            (i, Some(k))
        }
        Construction::MinMaxIncrease2 => {
            let (i, k) = reduce_3dm_to_min_max(t, MinMaxVariant::IncreaseK2);
            (i, Some(k))
        }
        Construction::SetCoverMinMax => {
            return Err(Error::UnsupportedRegime("setcover-minmax takes a Set Cover instance"))
        }
    };
    Ok(Reduction {
        construction,
        instance,
        target,
    })
}

pub fn reduce_set_cover(s: &SetCover, n_scale: Option<u32>) -> Reduction {
    Reduction {
        construction: Construction::SetCoverMinMax,
        instance: reduce_set_cover_to_min_max(s, n_scale),
        target: Some(u64::from(s.k)),
    }
}

struct Prescribe<'a> {
    inst: &'a Instance,
    edges: Vec<Edge>,
    change: CapacityChange,
}

impl<'a> Prescribe<'a> {
    fn new(inst: &'a Instance) -> Self {
        Prescribe {
            inst,
            edges: Vec::new(),
            change: CapacityChange::zero(inst.num_houses()),
        }
    }

    fn edge(&mut self, a: &str, h: &str) {
        let inst = self.inst;
        self.edges.push(Edge::new(
            inst.applicant_by_id(a).unwrap_or_else(|| panic!("no applicant {a}")),
            inst.house_by_id(h).unwrap_or_else(|| panic!("no house {h}")),
        ));
    }

    fn raise(&mut self, h: &str, by: i64) {
        let h = self.inst.house_by_id(h).unwrap_or_else(|| panic!("no house {h}"));
        self.change.set(h, by);
    }

    fn done(self) -> Result<Witness> {
        let matching = Matching::from_edges(self.edges)?;
        Ok(Witness {
            change: self.change,
            matching,
        })
    }
}

/// The forward-direction witness for an exact cover `cover` (triple indices).
pub fn forward_witness_3dm(t: &ThreeDm, r: &Reduction, cover: &[usize]) -> Result<Witness> {
    let inst = &r.instance;
    let mut p = Prescribe::new(inst);
    let chosen = |j: usize| cover.contains(&j);
    match r.construction {
        Construction::PmcapTraditional => {
            for &j in cover {
                let [a, b, c] = t.triples[j];
                for h in [format!("a{a}"), format!("b{b}"), format!("c{c}")] {
                    p.edge(&format!("s{}", j + 1), &h);
                }
            }
        }
        Construction::PmcapLex => {
            for (j, &[a, b, c]) in t.triples.iter().enumerate() {
                let element = [format!("a{a}"), format!("b{b}"), format!("c{c}")];
                for l in 1..=3 {
                    let s = format!("s{}_{l}", j + 1);
                    p.edge(&s, &format!("h{}_{l}", j + 1));
                    if chosen(j) {
                        p.edge(&s, &element[l - 1]);
                    }
                }
            }
        }
        Construction::MinSumDecrease => {
            for j in 0..t.triples.len() {
                let es = t.elements(j);
                let k = j + 1;
                for (l, e) in es.iter().enumerate() {
                    let s = format!("s{k}_{}", l + 1);
                    p.edge(&s, &if chosen(j) { format!("e{e}") } else { format!("t{k}") });
                }
                if chosen(j) {
                    p.edge(&format!("a{k}"), &format!("p{k}"));
                } else {
                    p.edge(&format!("a{k}"), &format!("x{k}"));
                    p.raise(&format!("p{k}"), -1);
                }
                p.edge(&format!("p{k}'"), &format!("p{k}"));
                p.edge(&format!("q{k}'"), &format!("q{k}"));
            }
        }
        Construction::MinMaxDecrease1 | Construction::MinMaxIncrease2 => {
            let dec = r.construction == Construction::MinMaxDecrease1;
            let step = if dec { 1 } else { 2 };
            for i in 1..=t.num_elements() {
                p.raise(&format!("e{i}"), step);
                if dec {
                    p.edge(&format!("e{i}'"), &format!("e{i}"));
                } else {
                    p.edge(&format!("e{i}_1"), &format!("e{i}"));
                    p.edge(&format!("e{i}_2"), &format!("e{i}"));
                }
            }
            p.raise("x", step);
            for j in 0..t.triples.len() {
                let [e1, e2, e3] = t.elements(j);
                let k = j + 1;
                p.raise(&format!("q{k}"), step);
                let p_delta = match (chosen(j), dec) {
                    (true, _) => step,
                    (false, true) => -1,
                    (false, false) => 0,
                };
                p.raise(&format!("p{k}"), p_delta);
                for (l, e) in [e1, e2, e3].iter().enumerate() {
                    let s = format!("s{k}_{}", l + 1);
                    p.edge(&s, &if chosen(j) { format!("e{e}") } else { format!("t{k}") });
                }
                if chosen(j) {
                    p.edge(&format!("s{k}_4"), &format!("p{k}"));
                    p.edge(&format!("a{k}"), &format!("p{k}"));
                } else {
                    p.edge(&format!("s{k}_4"), &format!("t{k}"));
                    p.edge(&format!("a{k}"), "x");
                }
                for l in 1..=if dec { 2 } else { 3 } {
                    p.edge(&format!("q{k}_{l}"), &format!("q{k}"));
                }
                p.edge(&format!("p{k}'"), &format!("p{k}"));
            }
        }
        Construction::SetCoverMinMax => {
            return Err(Error::UnsupportedRegime("setcover-minmax takes a Set Cover instance"))
        }
    }
    p.done()
}

/// Forward witness for a set cover `cover` (set indices).
pub fn forward_witness_set_cover(s: &SetCover, r: &Reduction, cover: &[usize]) -> Result<Witness> {
    let inst = &r.instance;
    let mut p = Prescribe::new(inst);
    let k = cover.len() as i64;
    let big_n = inst.houses().filter(|&h| inst.house_id(h).starts_with('x')).count();
    for &j in cover {
        for l in 1..=s.sets[j].len() {
            p.raise(&format!("s{}_{l}", j + 1), 1);
        }
    }
    for l in 1..=big_n {
        p.raise(&format!("x{l}"), k);
        p.edge(&format!("y{l}"), &format!("x{l}"));
    }
    p.edge("f'", "f");
    for (j, set) in s.sets.iter().enumerate() {
        for l in 1..=set.len() {
            p.edge(&format!("t{}_{l}", j + 1), &format!("s{}_{l}", j + 1));
        }
        for l in 1..=big_n {
            let a = format!("a{}_{l}", j + 1);
            if cover.contains(&j) {
                p.edge(&a, &format!("x{l}"));
            } else {
                p.edge(&a, &format!("w{}", j + 1));
            }
        }
    }
    for i in 1..=s.n_elements {
        let best = (0..s.sets.len())
            .filter(|j| cover.contains(j))
            .find_map(|j| s.sets[j].iter().position(|&e| e == i).map(|l| (j, l)))
            .ok_or_else(|| Error::Inconsistency(format!("element {i} is not covered")))?;
        p.edge(&format!("e{i}"), &format!("s{}_{}", best.0 + 1, best.1 + 1));
    }
    p.done()
}

/// Checks a capacity witness: feasible, perfect and popular under `q + r`.
pub fn capacity_witness_holds(inst: &Instance, w: &Witness) -> Result<bool> {
    let changed = inst.with_capacity_change(&w.change)?;
    if changed.check_matching(&w.matching).is_err() || !changed.is_perfect(&w.matching)? {
        return Ok(false);
    }
    Ok(is_popular_cha(&changed, &w.matching)?.popular)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionReport {
    pub construction: Construction,
    pub source_answer: bool,
    /// `None` when the target side is too large to decide by search.
    pub target_answer: Option<bool>,
    pub agree: Option<bool>,
    /// Whether the prescribed witness passed its checker (when a cover exists).
    pub forward_ok: Option<bool>,
}

/// Limits for the target-side searches in [`validate_3dm_reduction`].
#[derive(Clone, Copy)]
pub struct ValidationLimits<'s> {
    pub matchings: u64,
    pub challenger_states: u64,
    pub search: ExactSearch<'s>,
}

impl Default for ValidationLimits<'static> {
    fn default() -> Self {
        ValidationLimits {
            matchings: 10_000_000,
            challenger_states: 1_000_000,
            search: ExactSearch::default(),
        }
    }
}

/// Popular-matching existence by listing every matching and running the
/// polynomial verifier on each (houses are unit here).
pub fn exists_popular_by_enumeration(inst: &Instance, limit: u64) -> Result<Option<Matching>> {
    let mut found = None;
    let mut failure = None;
    visit_matchings(inst, limit, |edges| {
        let m: Matching = edges.iter().copied().collect();
        match verify_popular_poly(inst, &m) {
            Ok(check) if check.popular => {
                found = Some(m);
                core::ops::ControlFlow::Break(())
            }
            Ok(_) => core::ops::ControlFlow::Continue(()),
            Err(e) => {
                failure = Some(e);
                core::ops::ControlFlow::Break(())
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(found),
    }
}

pub fn validate_3dm_reduction(
    t: &ThreeDm,
    construction: Construction,
    limits: ValidationLimits<'_>,
) -> Result<ReductionReport> {
    let r = reduce_3dm(t, construction)?;
    let cover = oracle_exact_cover(t);
    let inst = &r.instance;

    let forward_ok = match &cover {
        None => None,
        Some(c) => {
            let w = forward_witness_3dm(t, &r, c)?;
            Some(match construction {
                Construction::PmcapTraditional => {
                    w.change.nonzero().next().is_none()
                        && is_popular_brute_force(inst, &w.matching, PopularityNotion::Traditional, limits.matchings)?
                            .holds
                }
                Construction::PmcapLex => {
                    inst.check_matching(&w.matching).is_ok()
                        && strongest_challenger(inst, &w.matching, PopularityNotion::Lexicographic, limits.challenger_states)?
                            .is_popular()
                }
                Construction::MinSumDecrease => {
                    w.change.l1() <= r.target.unwrap_or(0) && capacity_witness_holds(inst, &w)?
                }
                _ => w.change.linf() <= r.target.unwrap_or(0) && capacity_witness_holds(inst, &w)?,
            })
        }
    };

    let target_answer = match construction {
        Construction::PmcapTraditional => Some(exists_popular_by_enumeration(inst, limits.matchings)?.is_some()),
        Construction::PmcapLex => None,
        Construction::MinSumDecrease => {
            Some(min_sum_pop_perfect_exact(inst, r.target.unwrap_or(0), true, limits.search)?.is_some())
        }
        Construction::MinMaxDecrease1 => {
            Some(min_max_pop_perfect_exact(inst, r.target.unwrap_or(0), true, limits.search)?.is_some())
        }
        Construction::MinMaxIncrease2 => {
            Some(min_max_pop_perfect_exact(inst, r.target.unwrap_or(0), false, limits.search)?.is_some())
        }
        Construction::SetCoverMinMax => unreachable!("rejected by reduce_3dm"),
    };
    let source_answer = cover.is_some();
    Ok(ReductionReport {
        construction,
        source_answer,
        target_answer,
        agree: target_answer.map(|a| a == source_answer),
        forward_ok,
    })
}

/// Set Cover side: the prescribed vector for a minimum cover must give a
/// perfect popular matching with `|r|_inf` equal to the cover size.
pub fn validate_set_cover_reduction(s: &SetCover, n_scale: Option<u32>, limit: u64) -> Result<ReductionReport> {
    let r = reduce_set_cover(s, n_scale);
    let (opt, cover) = oracle_set_cover(s, limit)?;
    let w = forward_witness_set_cover(s, &r, &cover)?;
    let ok = w.change.linf() == opt as u64 && capacity_witness_holds(&r.instance, &w)?;
    Ok(ReductionReport {
        construction: Construction::SetCoverMinMax,
        source_answer: opt as u32 <= s.k,
        target_answer: None,
        agree: None,
        forward_ok: Some(ok),
    })
}

/// Occurrence count of every element, for diagnostics.
pub fn element_occurrences(t: &ThreeDm) -> BTreeMap<u32, u32> {
    let mut out = BTreeMap::new();
    for j in 0..t.triples.len() {
        for e in t.elements(j) {
            *out.entry(e).or_insert(0) += 1;
        }
    }
    out
}
