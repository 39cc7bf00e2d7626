//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid input, 2 a check failed, 3 a resource
//! limit was hit, 4 a presentation could not be decided within the coset
//! limit.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use hypertope::cgroup::{CGroupCandidate, Witness};
use hypertope::classify::{
    enumerate_rank_n_minus_1, enumerate_rank_n_minus_2, family_instances, structural_screen, ClassifyOptions, Family,
};
use hypertope::geometry::{build_geometry_with_limit, certify_with, CertifyOptions, DEFAULT_CHAMBER_LIMIT, DEFAULT_COSET_LIMIT};
use hypertope::perm::parse_generators;
use hypertope::presentations::{
    certify_presentation, relators_rank_n_minus_1, relators_rank_n_minus_2, Presentation, PresentationCertificate, Word,
    DEFAULT_MAX_COSETS,
};
use hypertope::repgraph::{build_rep_graph, canonical_form, coxeter_diagram, enumerate_trees, fracture_graph, LabeledTree};
use hypertope::{Error, PermGroup, Permutation};

const EXIT_INPUT: u8 = 1;
const EXIT_FAILED: u8 = 2;
const EXIT_LIMIT: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "hypertope", version, about = "C-groups, hypertopes and presentations for symmetric groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rank {
    #[value(name = "n-1")]
    NMinus1,
    #[value(name = "n-2")]
    NMinus2,
}

#[derive(clap::Args, Clone)]
struct Limits {
    /// Largest number of chambers or flags visited by a geometry check.
    #[arg(long)]
    chamber_limit: Option<u128>,
    /// Largest coset space built (or coset table rows for `present`).
    #[arg(long)]
    coset_limit: Option<u128>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate and verify C-groups of rank n-1 (trees) or n-2 (families).
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: Rank,
        #[arg(long, requires = "rank")]
        family: Option<Family>,
        #[arg(long)]
        jobs: Option<usize>,
        #[command(flatten)]
        limits: Limits,
        /// Write JSON lines here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the intersection property and certify the coset geometry.
    Verify {
        /// Generator file: one permutation per line in cycle notation.
        file: PathBuf,
        /// Degree, if larger than the largest point in the file plus one.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify presentations by coset enumeration.
    Present {
        /// Generator file of a tree of transpositions or of a family instance.
        file: Option<PathBuf>,
        #[arg(long, required_unless_present = "file")]
        n: Option<usize>,
        #[arg(long, required_unless_present = "file")]
        rank: Option<Rank>,
        #[arg(long)]
        family: Option<Family>,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the structural shape conditions on a representation graph.
    Screen {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a graph in DOT format.
    ExportDot {
        file: PathBuf,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value = "graph")]
        what: DotKind,
        #[command(flatten)]
        limits: Limits,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum DotKind {
    /// Permutation representation graph.
    Graph,
    /// Representation graph with the edges outside the fracture graph dashed.
    Fracture,
    Diagram,
    /// Incidence graph of the coset geometry (rank at most 4).
    Geometry,
}

/// A failure carrying its exit code.
struct Exit(u8, String);

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::ChamberOverflow(_) | Error::IndexOverflow(..) | Error::CosetLimitExceeded(_) => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Exit(code, e.to_string())
    }
}

type CliResult = std::result::Result<u8, Exit>;

fn emit(out: &Option<PathBuf>, text: &str) -> std::result::Result<(), Exit> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| Exit(EXIT_INPUT, e.to_string()))
        }
    }
}

fn read_generators(file: &PathBuf, n: Option<usize>) -> std::result::Result<Vec<Permutation>, Exit> {
    let text = fs::read_to_string(file).map_err(|e| Exit(EXIT_INPUT, format!("{}: {e}", file.display())))?;
    Ok(parse_generators(&text, n)?)
}

fn certify_options(limits: &Limits) -> CertifyOptions {
    CertifyOptions {
        coset_limit: limits.coset_limit.unwrap_or(DEFAULT_COSET_LIMIT),
        chamber_limit: limits.chamber_limit.unwrap_or(DEFAULT_CHAMBER_LIMIT),
        ..CertifyOptions::default()
    }
}

fn enumerate(n: usize, rank: Rank, family: Option<Family>, jobs: Option<usize>, limits: &Limits, out: &Option<PathBuf>) -> CliResult {
    if rank == Rank::NMinus1 && family.is_some() {
        return Err(Exit(EXIT_INPUT, "--family applies to --rank n-2 only".into()));
    }
    if jobs == Some(0) {
        return Err(Exit(EXIT_INPUT, "--jobs must be positive".into()));
    }
    let opts = ClassifyOptions { jobs, family, certify: Some(certify_options(limits)), ..ClassifyOptions::default() };
    let res = match rank {
        Rank::NMinus1 => enumerate_rank_n_minus_1(n, &opts)?,
        Rank::NMinus2 => enumerate_rank_n_minus_2(n, &opts)?,
    };
    emit(out, &res.to_jsonl())?;
    let mut summary = format!("n={n} rank={}: {} instances from {} candidates", res.rank, res.count(), res.candidates);
    if rank == Rank::NMinus2 {
        let per: Vec<String> = Family::ALL.iter().map(|&f| format!("{f} {}", res.count_family(f))).collect();
        summary += &format!(" ({}; total mod 3 = {})", per.join(", "), res.count() % 3);
    }
    let ok = res.all_verified();
    eprintln!("{summary}; {}", if ok { "all verified" } else { "VERIFICATION FAILED" });
    Ok(if ok { 0 } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct VerifyReport {
    degree: usize,
    rank: usize,
    order: u128,
    symmetric: bool,
    c_group: bool,
    witness: Option<Witness>,
    transitive_parabolics: Vec<usize>,
    hypertope: Option<hypertope::geometry::HypertopeReport>,
}

fn verify(file: &PathBuf, n: Option<usize>, limits: &Limits, out: &Option<PathBuf>) -> CliResult {
    let gens = read_generators(file, n)?;
    let degree = gens[0].degree();
    let order = PermGroup::new(degree, &gens)?.order();
    let cand = CGroupCandidate::new(gens.clone())?;
    let report = cand.is_c_group_full()?;
    let transitive_parabolics: Vec<usize> = (0..gens.len())
        .filter(|&i| cand.parabolic(&[i]).is_transitive())
        .collect();
    let hypertope = if report.is_c_group { Some(certify_with(&gens, &certify_options(limits))?) } else { None };
    let ok = report.is_c_group && hypertope.as_ref().is_some_and(|h| h.is_regular_hypertope());
    let rec = VerifyReport {
        degree,
        rank: gens.len(),
        order,
        symmetric: order == (1..=degree as u128).product::<u128>(),
        c_group: report.is_c_group,
        witness: report.witness.clone(),
        transitive_parabolics,
        hypertope,
    };
    emit(out, &(serde_json::to_string(&rec).expect("serializable") + "\n"))?;
    Ok(if ok { 0 } else { EXIT_FAILED })
}

#[derive(Serialize)]
struct PresentRecord {
    n: usize,
    family: Option<Family>,
    tree: Vec<(usize, usize)>,
    attach: Option<usize>,
    relators: usize,
    rejected: Vec<Word>,
    supplement: Vec<Word>,
    #[serde(flatten)]
    certificate: PresentationCertificate,
    certified: bool,
}

struct PresentJob {
    n: usize,
    family: Option<Family>,
    tree: Vec<(usize, usize)>,
    attach: Option<usize>,
    gens: Vec<Permutation>,
    presentation: Presentation,
    rejected: Vec<Word>,
    supplement: Vec<Word>,
}

fn tree_job(t: &LabeledTree) -> PresentJob {
    PresentJob {
        n: t.vertex_count(),
        family: None,
        tree: t.graph().edges().iter().map(|e| (e.a, e.b)).collect(),
        attach: None,
        gens: t.transpositions(),
        presentation: relators_rank_n_minus_1(t),
        rejected: Vec::new(),
        supplement: Vec::new(),
    }
}

fn family_jobs(n: usize, only: Option<Family>) -> std::result::Result<Vec<PresentJob>, Exit> {
    let mut jobs = Vec::new();
    for inst in family_instances(n)? {
        if only.is_some_and(|f| f != inst.family) {
            continue;
        }
        let fp = relators_rank_n_minus_2(&inst)?;
        jobs.push(PresentJob {
            n,
            family: Some(inst.family),
            tree: inst.tail.edges().to_vec(),
            attach: Some(inst.attach),
            presentation: fp.completed(),
            gens: inst.gens,
            rejected: fp.rejected,
            supplement: fp.supplement,
        });
    }
    Ok(jobs)
}

/// A tree of transpositions gets the rank `n-1` presentation; otherwise the
/// file must match a family instance up to renaming.
fn job_from_file(gens: Vec<Permutation>) -> std::result::Result<PresentJob, Exit> {
    let graph = build_rep_graph(&gens)?;
    if gens.iter().all(|g| g.cycles().is_transposition()) && graph.is_tree() {
        let mut job = tree_job(&LabeledTree::from_graph(graph)?);
        job.gens = gens;
        return Ok(job);
    }
    let n = gens[0].degree();
    let canon = canonical_form(&graph, true);
    if (9..=12).contains(&n) {
        for job in family_jobs(n, None)? {
            if canonical_form(&build_rep_graph(&job.gens)?, true) == canon {
                return Ok(job);
            }
        }
    }
    Err(Exit(EXIT_INPUT, "no known presentation: not a tree of transpositions or a family instance".into()))
}

fn present(
    file: &Option<PathBuf>,
    n: Option<usize>,
    rank: Option<Rank>,
    family: Option<Family>,
    limits: &Limits,
    out: &Option<PathBuf>,
) -> CliResult {
    let jobs = match (file, rank) {
        (Some(f), _) => vec![job_from_file(read_generators(f, n)?)?],
        (None, Some(Rank::NMinus1)) => {
            let n = n.expect("required by clap");
            if !(3..=9).contains(&n) {
                return Err(Error::OutOfRange { what: "n", n, lo: 3, hi: 9 }.into());
            }
            enumerate_trees(n).iter().map(|t| tree_job(&t.labeled())).collect()
        }
        (None, Some(Rank::NMinus2)) => {
            let n = n.expect("required by clap");
            if !(9..=10).contains(&n) {
                return Err(Error::OutOfRange { what: "n", n, lo: 9, hi: 10 }.into());
            }
            family_jobs(n, family)?
        }
        (None, None) => unreachable!("clap requires a file or --rank"),
    };
    let max_cosets = limits.coset_limit.map_or(DEFAULT_MAX_COSETS, |c| c.min(usize::MAX as u128) as usize);
    let mut lines = String::new();
    let mut code = 0;
    for job in jobs {
        let certificate = certify_presentation(&job.gens, &job.presentation, max_cosets)?;
        let certified = certificate.certified();
        if !certified {
            let inconclusive = certificate.relations_hold && certificate.presented_order.is_none();
            code = code.max(if inconclusive { EXIT_INCONCLUSIVE } else { EXIT_FAILED });
        }
        let rec = PresentRecord {
            n: job.n,
            family: job.family,
            tree: job.tree,
            attach: job.attach,
            relators: job.presentation.relators().len(),
            rejected: job.rejected,
            supplement: job.supplement,
            certificate,
            certified,
        };
        lines += &(serde_json::to_string(&rec).expect("serializable") + "\n");
    }
    emit(out, &lines)?;
    Ok(code)
}

fn screen(file: &PathBuf, n: Option<usize>, out: &Option<PathBuf>) -> CliResult {
    let gens = read_generators(file, n)?;
    let d = structural_screen(&gens)?;
    let rec = json!({ "passes": d.passes(), "conditions": d });
    emit(out, &(rec.to_string() + "\n"))?;
    Ok(if d.passes() { 0 } else { EXIT_FAILED })
}

fn export_dot(file: &PathBuf, n: Option<usize>, what: DotKind, limits: &Limits, out: &Option<PathBuf>) -> CliResult {
    let gens = read_generators(file, n)?;
    let dot = match what {
        DotKind::Graph => build_rep_graph(&gens)?.to_dot(),
        DotKind::Fracture => fracture_graph(&gens)?.to_dot(),
        DotKind::Diagram => coxeter_diagram(&gens)?.to_dot(),
        DotKind::Geometry => {
            if gens.len() > 4 {
                return Err(Exit(EXIT_INPUT, format!("geometry export needs rank at most 4, got {}", gens.len())));
            }
            let cand = CGroupCandidate::new(gens.clone())?;
            let parabolics: Vec<PermGroup> = (0..gens.len()).map(|i| cand.parabolic(&[i])).collect();
            let limit = limits.coset_limit.unwrap_or(DEFAULT_COSET_LIMIT);
            build_geometry_with_limit(&cand.group(), &parabolics, limit)?.to_dot()
        }
    };
    emit(out, &dot)?;
    Ok(0)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Enumerate { n, rank, family, jobs, limits, out } => enumerate(n, rank, family, jobs, &limits, &out),
        Command::Verify { file, n, limits, out } => verify(&file, n, &limits, &out),
        Command::Present { file, n, rank, family, limits, out } => present(&file, n, rank, family, &limits, &out),
        Command::Screen { file, n, out } => screen(&file, n, &out),
        Command::ExportDot { file, n, what, limits, out } => export_dot(&file, n, what, &limits, &out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Exit(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
