//! JSON documents: instances, matchings, capacity changes, 3DM and Set Cover.
//!
//! Writers emit keys in schema order and arrays in declaration order, so a
//! parse/serialize round trip is byte-exact on canonical documents.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use popmatch_core::reductions::{SetCover, ThreeDm};
use popmatch_core::{CapacityChange, Edge, Instance, Matching};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    File {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error in {what} at line {line}, column {column}: {message}")]
    Parse {
        what: &'static str,
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] popmatch_core::Error),
}

pub type Result<T, E = IoError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApplicantDoc {
    pub id: String,
    pub capacity: u32,
    pub prefs: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HouseDoc {
    pub id: String,
    pub capacity: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDoc {
    pub applicants: Vec<ApplicantDoc>,
    pub houses: Vec<HouseDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingDoc {
    pub edges: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChangeDoc {
    pub delta: BTreeMap<String, i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct ThreeDmDoc {
    pub n_hat: u32,
    pub triples: Vec<[u32; 3]>,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "camelCase")]
pub struct SetCoverDoc {
    pub n_elements: u32,
    pub sets: Vec<Vec<u32>>,
    pub k: u32,
}

fn parse_json<'a, T: Deserialize<'a>>(what: &'static str, text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| IoError::Parse {
        what,
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("documents always serialize")
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.to_owned(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| IoError::File {
        path: path.to_owned(),
        source,
    })
}

impl InstanceDoc {
    pub fn of(inst: &Instance) -> Self {
        InstanceDoc {
            applicants: inst
                .applicants()
                .map(|a| ApplicantDoc {
                    id: inst.applicant_id(a).to_owned(),
                    capacity: inst.applicant_capacity(a),
                    prefs: inst.prefs(a).iter().map(|&h| inst.house_id(h).to_owned()).collect(),
                })
                .collect(),
            houses: inst
                .houses()
                .map(|h| HouseDoc {
                    id: inst.house_id(h).to_owned(),
                    capacity: inst.house_capacity(h),
                })
                .collect(),
        }
    }

    pub fn to_instance(&self) -> Result<Instance> {
        let mut b = Instance::builder();
        for h in &self.houses {
            b.add_house(h.id.clone(), h.capacity);
        }
        for a in &self.applicants {
            b.add_applicant(a.id.clone(), a.capacity, &a.prefs);
        }
        Ok(b.build()?)
    }
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    parse_json::<InstanceDoc>("instance", text)?.to_instance()
}

pub fn serialize_instance(inst: &Instance) -> String {
    to_json(&InstanceDoc::of(inst))
}

/// Edges sorted by (applicant, house) declaration index.
pub fn matching_doc(inst: &Instance, m: &Matching) -> MatchingDoc {
    MatchingDoc {
        edges: m
            .edges()
            .iter()
            .map(|e| (inst.applicant_id(e.applicant).to_owned(), inst.house_id(e.house).to_owned()))
            .collect(),
    }
}

pub fn matching_from_doc(inst: &Instance, doc: &MatchingDoc) -> Result<Matching> {
    let mut edges = Vec::with_capacity(doc.edges.len());
    for (a, h) in &doc.edges {
        let applicant = inst
            .applicant_by_id(a)
            .ok_or_else(|| popmatch_core::Error::Validation {
                entity: format!("matching edge ({a}, {h})"),
                reason: format!("unknown applicant {a}"),
            })?;
        let house = inst.house_by_id(h).ok_or_else(|| popmatch_core::Error::Validation {
            entity: format!("matching edge ({a}, {h})"),
            reason: format!("unknown house {h}"),
        })?;
        edges.push(Edge::new(applicant, house));
    }
    let m = Matching::from_edges(edges)?;
    inst.check_matching(&m)?;
    Ok(m)
}

pub fn parse_matching(inst: &Instance, text: &str) -> Result<Matching> {
    matching_from_doc(inst, &parse_json("matching", text)?)
}

pub fn serialize_matching(inst: &Instance, m: &Matching) -> String {
    to_json(&matching_doc(inst, m))
}

/// Nonzero entries of a change, keyed by house id in declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaMap(pub Vec<(String, i64)>);

impl DeltaMap {
    pub fn of(inst: &Instance, change: &CapacityChange) -> Self {
        DeltaMap(change.nonzero().map(|(h, d)| (inst.house_id(h).to_owned(), d)).collect())
    }
}

impl Serialize for DeltaMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct ChangeOut<'a> {
    delta: &'a DeltaMap,
}

pub fn change_from_map(inst: &Instance, delta: &BTreeMap<String, i64>) -> Result<CapacityChange> {
    let mut change = CapacityChange::zero(inst.num_houses());
    for (id, &d) in delta {
        let h = inst.house_by_id(id).ok_or_else(|| popmatch_core::Error::Validation {
            entity: format!("capacity change entry {id}"),
            reason: "unknown house".into(),
        })?;
        change.set(h, d);
    }
    change.apply(inst.house_capacities())?;
    Ok(change)
}

pub fn parse_change(inst: &Instance, text: &str) -> Result<CapacityChange> {
    change_from_map(inst, &parse_json::<ChangeDoc>("capacity change", text)?.delta)
}

pub fn serialize_change(inst: &Instance, change: &CapacityChange) -> String {
    to_json(&ChangeOut {
        delta: &DeltaMap::of(inst, change),
    })
}

pub fn parse_three_dm(text: &str) -> Result<ThreeDm> {
    let doc: ThreeDmDoc = parse_json("3dm", text)?;
    Ok(ThreeDm::new(doc.n_hat, doc.triples, doc.strict)?)
}

pub fn serialize_three_dm(t: &ThreeDm) -> String {
    to_json(&ThreeDmDoc {
        n_hat: t.n_hat,
        triples: t.triples.clone(),
        strict: t.strict,
    })
}

pub fn parse_set_cover(text: &str) -> Result<SetCover> {
    let doc: SetCoverDoc = parse_json("set cover", text)?;
    Ok(SetCover::new(doc.n_elements, doc.sets, doc.k)?)
}

pub fn serialize_set_cover(s: &SetCover) -> String {
    to_json(&SetCoverDoc {
        n_elements: s.n_elements,
        sets: s.sets.clone(),
        k: s.k,
    })
}
