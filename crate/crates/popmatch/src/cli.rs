//! Command-line surface. [`run`] is the whole program minus process exit,
//! so tests drive it with an argv vector.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use popmatch_core::capopt::{
    self, BatchStrategy, Certificate, ExactSearch, Norm, OptimizationResult, Sequential, Target,
    DEFAULT_CANDIDATE_CEILING,
};
use popmatch_core::popverify::{verify_popular_poly_with, PathScoring, WitnessKind};
use popmatch_core::reductions::{self, Construction};
use popmatch_core::votes::{
    is_pareto_optimal_brute_force, is_popular_brute_force, pareto_dominates, strongest_challenger, total_vote,
};
use popmatch_core::{chapop, model, pareto, Error, Instance, Matching, PopularityNotion};
use serde::Serialize;

use crate::io::{self, DeltaMap, IoError, MatchingDoc};
use crate::parallel::Pooled;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    Infeasible,
    Unsupported,
    TooLarge,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Infeasible => 2,
            Status::Unsupported => 3,
            Status::TooLarge => 4,
            Status::Error => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub status: Status,
    /// One JSON document, printed on stdout.
    pub payload: String,
    /// Human-readable text for stderr (usage errors, failure reasons).
    pub message: Option<String>,
}

#[derive(Parser, Debug)]
#[command(name = "popmatch", version, about = "Popular, Pareto-optimal and perfect matchings with capacities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Run {
    /// Enumeration / state limit for brute-force steps.
    #[arg(long, default_value_t = 1_000_000)]
    limit: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Accepted for reproducible harnesses; no command draws random numbers.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Notion {
    Traditional,
    Lex,
}

impl From<Notion> for PopularityNotion {
    fn from(n: Notion) -> Self {
        match n {
            Notion::Traditional => PopularityNotion::Traditional,
            Notion::Lex => PopularityNotion::Lexicographic,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ConstructionArg {
    PmcapTrad,
    PmcapLex,
    MinsumDec,
    MinmaxDec1,
    MinmaxInc2,
    SetcoverMinmax,
}

impl From<ConstructionArg> for Construction {
    fn from(c: ConstructionArg) -> Self {
        match c {
            ConstructionArg::PmcapTrad => Construction::PmcapTraditional,
            ConstructionArg::PmcapLex => Construction::PmcapLex,
            ConstructionArg::MinsumDec => Construction::MinSumDecrease,
            ConstructionArg::MinmaxDec1 => Construction::MinMaxDecrease1,
            ConstructionArg::MinmaxInc2 => Construction::MinMaxIncrease2,
            ConstructionArg::SetcoverMinmax => Construction::SetCoverMinMax,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is the matching popular?
    VerifyPopular {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long, value_enum, default_value = "traditional")]
        notion: Notion,
        #[arg(long)]
        force_bruteforce: bool,
        /// Diagnostic path scoring; can reject popular matchings.
        #[arg(long)]
        paper_literal_mod: bool,
        #[command(flatten)]
        run: Run,
    },
    /// Is the matching Pareto optimal? (unit applicant capacities)
    VerifyPareto {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        force_bruteforce: bool,
        #[command(flatten)]
        run: Run,
    },
    FindPopular {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long, value_enum, default_value = "traditional")]
        notion: Notion,
        #[arg(long)]
        force_bruteforce: bool,
        #[command(flatten)]
        run: Run,
    },
    ExistsPerfectPopular {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    FindPareto {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    MinsumPopPerfect {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allow_decrease: bool,
        #[arg(long)]
        exact: bool,
        /// Largest L1 cost searched (default: number of applicants).
        #[arg(long)]
        budget: Option<u64>,
        #[command(flatten)]
        run: Run,
    },
    MinmaxPopPerfect {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        allow_decrease: bool,
        /// Largest L-infinity cost searched (default: number of applicants).
        #[arg(long)]
        kbound: Option<u64>,
        #[command(flatten)]
        run: Run,
    },
    MinsumParetoPerfect {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    MinmaxParetoPerfect {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    /// Build a target instance from a 3DM or Set Cover file.
    Reduce {
        #[arg(long, value_enum)]
        construction: ConstructionArg,
        #[arg(long = "in")]
        input: PathBuf,
        /// Instance file to write; printed on stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overrides N in the Set Cover construction.
        #[arg(long)]
        n_scale: Option<u32>,
        #[command(flatten)]
        run: Run,
    },
    #[command(name = "oracle-3dm")]
    Oracle3dm {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    OracleSetcover {
        #[arg(long = "in")]
        input: PathBuf,
        #[command(flatten)]
        run: Run,
    },
    Enumerate {
        #[arg(long)]
        instance: PathBuf,
        #[command(flatten)]
        run: Run,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Io(#[from] IoError),
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Threads(String),
}

impl Failure {
    fn status(&self) -> Status {
        let core = match self {
            Failure::Io(IoError::Model(e)) | Failure::Core(e) => e,
            _ => return Status::Error,
        };
        match core {
            Error::Infeasible(_) => Status::Infeasible,
            Error::UnsupportedRegime(_) => Status::Unsupported,
            Error::TooLargeForEnumeration { .. } | Error::TooLargeForExactSearch { .. } => Status::TooLarge,
            _ => Status::Error,
        }
    }
}

type Outcome = Result<(Status, String), Failure>;

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("payloads always serialize")
}

fn load_instance(path: &Path) -> Result<Instance, IoError> {
    io::parse_instance(&io::read_text(path)?)
}

/// Every matching printed by a command passes through here.
fn checked_doc(inst: &Instance, m: &Matching) -> Result<MatchingDoc, Error> {
    inst.check_matching(m)?;
    Ok(io::matching_doc(inst, m))
}

fn inconsistent(what: &str) -> Failure {
    Failure::Core(Error::Inconsistency(what.into()))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct PopularityOut {
    popular: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed_condition: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessOut>,
}

#[derive(Serialize)]
struct WitnessOut {
    #[serde(skip_serializing_if = "Option::is_none")]
    kind: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<i64>,
    matching: MatchingDoc,
    vote: i64,
}

/// Recomputes the vote of `m` against `w` and requires it to be negative
/// unless `diagnostic` is set.
fn witness_out(
    inst: &Instance,
    m: &Matching,
    w: &Matching,
    notion: PopularityNotion,
    diagnostic: bool,
) -> Result<WitnessOut, Failure> {
    let matching = checked_doc(inst, w)?;
    let vote = total_vote(inst, m, w, notion).total;
    if vote >= 0 && !diagnostic {
        return Err(inconsistent("non-popularity witness does not dominate"));
    }
    Ok(WitnessOut {
        kind: None,
        score: None,
        matching,
        vote,
    })
}

fn verify_popular(
    inst: &Instance,
    m: &Matching,
    notion: PopularityNotion,
    force: bool,
    literal: bool,
    limit: u64,
) -> Outcome {
    let out = if !force && notion == PopularityNotion::Traditional && inst.houses_unit() {
        info!("polynomial verifier (unit house capacities)");
        let scoring = if literal { PathScoring::LiteralMod } else { PathScoring::Corrected };
        let check = verify_popular_poly_with(inst, m, scoring)?;
        let witness = match check.witness {
            None => None,
            Some(w) => {
                let mut out = witness_out(inst, m, &w.induced, notion, literal)?;
                out.kind = Some(match w.kind {
                    WitnessKind::Cycle => "cycle",
                    WitnessKind::Path => "path",
                });
                out.score = Some(w.score);
                Some(out)
            }
        };
        PopularityOut {
            popular: check.popular,
            failed_condition: None,
            witness,
        }
    } else if !force && inst.applicants_unit() {
        info!("characterization check (unit applicant capacities)");
        let verdict = chapop::is_popular_cha(inst, m)?;
        let witness = if verdict.popular {
            None
        } else {
            match strongest_challenger(inst, m, notion, limit) {
                Ok(c) if c.is_popular() => return Err(inconsistent("characterization and challenger search disagree")),
                Ok(c) => Some(witness_out(inst, m, &c.matching, notion, false)?),
                Err(Error::TooLargeForEnumeration { .. }) => {
                    info!("challenger search over the limit; reporting the failed condition only");
                    None
                }
                Err(e) => return Err(e.into()),
            }
        };
        PopularityOut {
            popular: verdict.popular,
            failed_condition: verdict.failed_condition,
            witness,
        }
    } else {
        info!("brute-force enumeration (limit {limit})");
        let verdict = is_popular_brute_force(inst, m, notion, limit)?;
        let witness = match &verdict.witness {
            Some(w) => Some(witness_out(inst, m, w, notion, false)?),
            None => None,
        };
        PopularityOut {
            popular: verdict.holds,
            failed_condition: None,
            witness,
        }
    };
    Ok((Status::Ok, json(&out)))
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ParetoOut {
    pareto_optimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    improvement: Option<MatchingDoc>,
}

fn verify_pareto(inst: &Instance, m: &Matching, force: bool, limit: u64) -> Outcome {
    let (optimal, improvement) = if force {
        let v = is_pareto_optimal_brute_force(inst, m, limit)?;
        (v.holds, v.witness)
    } else {
        let v = pareto::is_pareto_optimal(inst, m)?;
        (v.optimal, v.improvement)
    };
    let improvement = match improvement {
        None => None,
        Some(w) => {
            let doc = checked_doc(inst, &w)?;
            let n = inst.num_applicants();
            if !pareto_dominates(inst, &w.assignment(n), &m.assignment(n)) {
                return Err(inconsistent("reported improvement does not Pareto-dominate"));
            }
            Some(doc)
        }
    };
    Ok((
        Status::Ok,
        json(&ParetoOut {
            pareto_optimal: optimal,
            improvement,
        }),
    ))
}

#[derive(Serialize)]
struct FoundOut {
    matching: Option<MatchingDoc>,
}

fn is_popular_any(inst: &Instance, m: &Matching, notion: PopularityNotion, limit: u64) -> Result<bool, Error> {
    if notion == PopularityNotion::Traditional && inst.houses_unit() {
        Ok(popmatch_core::popverify::verify_popular_poly(inst, m)?.popular)
    } else if inst.applicants_unit() {
        Ok(chapop::is_popular_cha(inst, m)?.popular)
    } else {
        Ok(is_popular_brute_force(inst, m, notion, limit)?.holds)
    }
}

fn find_popular(inst: &Instance, notion: PopularityNotion, force: bool, limit: u64) -> Outcome {
    let found = if !force && inst.applicants_unit() {
        info!("characterization construction");
        chapop::find_popular_cha(inst)?
    } else {
        info!("enumerating matchings (limit {limit})");
        let mut found = None;
        let mut failure = None;
        model::visit_matchings(inst, limit, |edges| {
            let m: Matching = edges.iter().copied().collect();
            let popular = if force {
                is_popular_brute_force(inst, &m, notion, limit).map(|v| v.holds)
            } else {
                is_popular_any(inst, &m, notion, limit)
            };
            match popular {
                Ok(true) => {
                    found = Some(m);
                    std::ops::ControlFlow::Break(())
                }
                Ok(false) => std::ops::ControlFlow::Continue(()),
                Err(e) => {
                    failure = Some(e);
                    std::ops::ControlFlow::Break(())
                }
            }
        })?;
        if let Some(e) = failure {
            return Err(e.into());
        }
        found
    };
    match found {
        None => Ok((Status::Infeasible, json(&FoundOut { matching: None }))),
        Some(m) => {
            if !is_popular_any(inst, &m, notion, limit)? {
                return Err(inconsistent("constructed matching fails the popularity check"));
            }
            Ok((
                Status::Ok,
                json(&FoundOut {
                    matching: Some(checked_doc(inst, &m)?),
                }),
            ))
        }
    }
}

#[derive(Serialize)]
struct ExistsOut {
    exists: bool,
    matching: Option<MatchingDoc>,
}

fn exists_perfect_popular(inst: &Instance) -> Outcome {
    let found = chapop::exists_perfect_popular(inst)?;
    let matching = match &found {
        None => None,
        Some(m) => {
            if !inst.is_perfect(m)? || !chapop::is_popular_cha(inst, m)?.popular {
                return Err(inconsistent("perfect popular matching fails re-validation"));
            }
            Some(checked_doc(inst, m)?)
        }
    };
    Ok((
        Status::Ok,
        json(&ExistsOut {
            exists: found.is_some(),
            matching,
        }),
    ))
}

#[derive(Serialize)]
struct ParetoMaxOut {
    matching: MatchingDoc,
    size: usize,
    #[serde(rename = "rankSum")]
    rank_sum: u64,
}

fn find_pareto(inst: &Instance) -> Outcome {
    let m = pareto::find_pareto_max(inst)?;
    if !pareto::is_pareto_optimal(inst, &m)?.optimal || m.len() != pareto::max_matching_size(inst)? {
        return Err(inconsistent("constructed matching is not a Pareto-optimal maximum matching"));
    }
    Ok((
        Status::Ok,
        json(&ParetoMaxOut {
            matching: checked_doc(inst, &m)?,
            size: m.len(),
            rank_sum: pareto::rank_sum(inst, &m),
        }),
    ))
}

#[derive(Serialize)]
struct OptimizationOut {
    cost: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    change: Option<DeltaMap>,
    #[serde(skip_serializing_if = "Option::is_none")]
    matching: Option<MatchingDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<&'static str>,
}

fn optimization(inst: &Instance, found: Option<OptimizationResult>, target: Target, norm: Norm) -> Outcome {
    let Some(r) = found else {
        return Ok((
            Status::Infeasible,
            json(&OptimizationOut {
                cost: None,
                change: None,
                matching: None,
                certificate: None,
            }),
        ));
    };
    capopt::certify(inst, &r, target, norm)?;
    let changed = inst.with_capacity_change(&r.change)?;
    let out = OptimizationOut {
        cost: Some(r.cost),
        change: Some(DeltaMap::of(inst, &r.change)),
        matching: Some(checked_doc(&changed, &r.matching)?),
        certificate: Some(match r.certificate {
            Certificate::PolyOptimal => "poly-optimal",
            Certificate::ExhaustiveOptimal => "exhaustive-optimal",
        }),
    };
    Ok((Status::Ok, json(&out)))
}

#[derive(Serialize)]
struct ReduceOut {
    construction: &'static str,
    applicants: usize,
    houses: usize,
    target: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    instance: Option<io::InstanceDoc>,
}

fn reduce(construction: Construction, input: &Path, out: Option<&Path>, n_scale: Option<u32>) -> Outcome {
    let text = io::read_text(input)?;
    let r = if construction == Construction::SetCoverMinMax {
        reductions::reduce_set_cover(&io::parse_set_cover(&text)?, n_scale)
    } else {
        reductions::reduce_3dm(&io::parse_three_dm(&text)?, construction)?
    };
    if r.instance.house_capacities().contains(&0) {
        return Err(Error::UnsupportedRegime("construction has a capacity-0 house, which instance files cannot hold").into());
    }
    let serialized = io::serialize_instance(&r.instance);
    if io::parse_instance(&serialized)? != r.instance {
        return Err(inconsistent("generated instance does not survive a round trip"));
    }
    let instance = match out {
        Some(path) => {
            io::write_text(path, &serialized)?;
            None
        }
        None => Some(io::InstanceDoc::of(&r.instance)),
    };
    Ok((
        Status::Ok,
        json(&ReduceOut {
            construction: construction.name(),
            applicants: r.instance.num_applicants(),
            houses: r.instance.num_houses(),
            target: r.target,
            instance,
        }),
    ))
}

#[derive(Serialize)]
struct CoverOut {
    cover: Option<Vec<usize>>,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct SetCoverOut {
    size: usize,
    cover: Vec<usize>,
    within_k: bool,
}

#[derive(Serialize)]
struct EnumerateOut {
    count: u64,
    matchings: Vec<MatchingDoc>,
}

fn enumerate(inst: &Instance, limit: u64) -> Outcome {
    let mut matchings = Vec::new();
    let count = model::visit_matchings(inst, limit, |edges| {
        let m = Matching::from_edges(edges.to_vec()).expect("enumerated edges are distinct");
        matchings.push(m);
        std::ops::ControlFlow::Continue(())
    })?;
    let docs = matchings.iter().map(|m| checked_doc(inst, m)).collect::<Result<Vec<_>, _>>()?;
    Ok((Status::Ok, json(&EnumerateOut { count, matchings: docs })))
}

fn strategy(run: &Run) -> Result<Box<dyn BatchStrategy + Sync>, Failure> {
    if run.workers <= 1 {
        return Ok(Box::new(Sequential));
    }
    Pooled::new(run.workers)
        .map(|p| Box::new(p) as Box<dyn BatchStrategy + Sync>)
        .map_err(|e| Failure::Threads(e.to_string()))
}

impl Command {
    fn run_args(&self) -> &Run {
        match self {
            Command::VerifyPopular { run, .. }
            | Command::VerifyPareto { run, .. }
            | Command::FindPopular { run, .. }
            | Command::ExistsPerfectPopular { run, .. }
            | Command::FindPareto { run, .. }
            | Command::MinsumPopPerfect { run, .. }
            | Command::MinmaxPopPerfect { run, .. }
            | Command::MinsumParetoPerfect { run, .. }
            | Command::MinmaxParetoPerfect { run, .. }
            | Command::Reduce { run, .. }
            | Command::Oracle3dm { run, .. }
            | Command::OracleSetcover { run, .. }
            | Command::Enumerate { run, .. } => run,
        }
    }
}

fn dispatch(command: Command) -> Outcome {
    let run = command.run_args();
    info!("workers {}, seed {}, limit {}", run.workers, run.seed, run.limit);
    match command {
        Command::VerifyPopular {
            instance,
            matching,
            notion,
            force_bruteforce,
            paper_literal_mod,
            run,
        } => {
            let inst = load_instance(&instance)?;
            let m = io::parse_matching(&inst, &io::read_text(&matching)?)?;
            verify_popular(&inst, &m, notion.into(), force_bruteforce, paper_literal_mod, run.limit)
        }
        Command::VerifyPareto {
            instance,
            matching,
            force_bruteforce,
            run,
        } => {
            let inst = load_instance(&instance)?;
            let m = io::parse_matching(&inst, &io::read_text(&matching)?)?;
            verify_pareto(&inst, &m, force_bruteforce, run.limit)
        }
        Command::FindPopular {
            instance,
            notion,
            force_bruteforce,
            run,
        } => find_popular(&load_instance(&instance)?, notion.into(), force_bruteforce, run.limit),
        Command::ExistsPerfectPopular { instance, .. } => exists_perfect_popular(&load_instance(&instance)?),
        Command::FindPareto { instance, .. } => find_pareto(&load_instance(&instance)?),
        Command::MinsumPopPerfect {
            instance,
            allow_decrease,
            exact,
            budget,
            run,
        } => {
            let inst = load_instance(&instance)?;
            let found = if exact || allow_decrease || budget.is_some() {
                let strategy = strategy(&run)?;
                let search = ExactSearch {
                    ceiling: DEFAULT_CANDIDATE_CEILING,
                    strategy: &*strategy,
                };
                let budget = budget.unwrap_or(inst.num_applicants() as u64);
                info!("exhaustive MinSum search, budget {budget}, decreases {allow_decrease}");
                capopt::min_sum_pop_perfect_exact(&inst, budget, allow_decrease, search)?
            } else {
                Some(capopt::min_sum_pop_perfect_increase(&inst)?)
            };
            optimization(&inst, found, Target::PopularPerfect, Norm::L1)
        }
        Command::MinmaxPopPerfect {
            instance,
            allow_decrease,
            kbound,
            run,
        } => {
            let inst = load_instance(&instance)?;
            let strategy = strategy(&run)?;
            let search = ExactSearch {
                ceiling: DEFAULT_CANDIDATE_CEILING,
                strategy: &*strategy,
            };
            let k = kbound.unwrap_or(inst.num_applicants() as u64);
            let found = capopt::min_max_pop_perfect_exact(&inst, k, allow_decrease, search)?;
            optimization(&inst, found, Target::PopularPerfect, Norm::LInf)
        }
        Command::MinsumParetoPerfect { instance, .. } => {
            let inst = load_instance(&instance)?;
            let r = capopt::min_sum_pareto_perfect(&inst)?;
            optimization(&inst, Some(r), Target::ParetoPerfect, Norm::L1)
        }
        Command::MinmaxParetoPerfect { instance, .. } => {
            let inst = load_instance(&instance)?;
            let r = capopt::min_max_pareto_perfect(&inst)?;
            optimization(&inst, Some(r), Target::ParetoPerfect, Norm::LInf)
        }
        Command::Reduce {
            construction,
            input,
            out,
            n_scale,
            ..
        } => reduce(construction.into(), &input, out.as_deref(), n_scale),
        Command::Oracle3dm { input, .. } => {
            let t = io::parse_three_dm(&io::read_text(&input)?)?;
            let cover = reductions::oracle_exact_cover(&t).map(|c| c.into_iter().map(|j| j + 1).collect());
            Ok((Status::Ok, json(&CoverOut { cover })))
        }
        Command::OracleSetcover { input, run } => {
            let s = io::parse_set_cover(&io::read_text(&input)?)?;
            let (size, cover) = reductions::oracle_set_cover(&s, run.limit)?;
            let out = SetCoverOut {
                size,
                cover: cover.into_iter().map(|j| j + 1).collect(),
                within_k: size as u64 <= u64::from(s.k),
            };
            Ok((Status::Ok, json(&out)))
        }
        Command::Enumerate { instance, run } => enumerate(&load_instance(&instance)?, run.limit),
    }
}

#[derive(Serialize)]
struct ErrorOut<'a> {
    status: Status,
    message: &'a str,
}

/// Parses `argv` (program name first) and executes the command.
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CommandResult {
                    status: Status::Ok,
                    payload: String::new(),
                    message: Some(text),
                },
                _ => CommandResult {
                    status: Status::Error,
                    payload: json(&ErrorOut {
                        status: Status::Error,
                        message: "usage error",
                    }),
                    message: Some(text),
                },
            };
        }
    };
    match dispatch(cli.command) {
        Ok((status, payload)) => CommandResult {
            status,
            payload,
            message: None,
        },
        Err(e) => {
            let status = e.status();
            let message = e.to_string();
            CommandResult {
                status,
                payload: json(&ErrorOut {
                    status,
                    message: &message,
                }),
                message: Some(message),
            }
        }
    }
}
