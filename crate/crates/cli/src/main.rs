use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use conductors::blocks::Block;
use conductors::gendec::gendec_all;
use conductors::isometry::{
    check_conductor_preservation, check_isometry, check_l0_preservation, check_perfection,
    search_perfect_isometries, BlockSide, Certificate, IsometryCandidate, DEFAULT_BOUND,
};
use conductors::tables::{char_conductor, ClassFunction};
use conductors::verify::{
    check_restriction_props, check_restriction_props_for, verify_group_prime, GroupPrimeSummary, Status,
    SuiteConfig, VerificationReport,
};
use conductors::{load_dataset, Corpus, Error, GroupDataset};

mod render;

use render::{Format, Output};

#[derive(Parser, Debug)]
#[command(
    name = "conductors",
    version,
    about = "Conductors of characters, generalised decomposition numbers and perfect isometries"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Opts {
    /// Corpus directory containing manifest.json
    #[arg(long, global = true, default_value = "data")]
    corpus: PathBuf,

    /// Restrict to one group
    #[arg(long, global = true)]
    group: Option<String>,

    /// Restrict to one prime
    #[arg(long, global = true)]
    prime: Option<u64>,

    /// Machine-readable JSON output
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// CSV summary output
    #[arg(long, global = true)]
    csv: bool,

    /// Seed for random virtual characters
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest block size for exhaustive isometry search
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: usize,

    /// Worker threads (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Load and cross-check datasets
    Validate {
        /// Dataset files to check instead of the corpus
        files: Vec<PathBuf>,
    },
    /// c(χ) and c(χ)_p for every irreducible character
    Conductors,
    /// Dump the generalised decomposition matrix
    Gendec,
    /// p-blocks with defects and members
    Blocks,
    /// Run the theorem suite
    Verify {
        /// Every group and prime in the corpus
        #[arg(long)]
        all: bool,
        /// Random virtual characters per block
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Enumerate perfect isometries between two blocks
    IsometrySearch(PairArgs),
    /// Check an isometry certificate
    IsometryCheck {
        /// Certificate JSON file
        #[arg(long)]
        cert: PathBuf,
    },
    /// Restriction properties for flagged subgroups
    RestrictCheck {
        /// Only this subgroup
        #[arg(long)]
        subgroup: Option<String>,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    /// Source block id
    #[arg(long, default_value_t = 0)]
    block: usize,
    /// Target group, either a corpus group or a subgroup of --group
    #[arg(long)]
    target: String,
    /// Target block id
    #[arg(long, default_value_t = 0)]
    target_block: usize,
}

enum Failure {
    Usage(String),
    Data(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_data_error() {
            Failure::Data(e)
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(Error::Io {
            path: PathBuf::from("<stdout>"),
            source: e,
        })
    }
}

type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    if let Some(n) = cli.opts.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be positive");
            return ExitCode::from(3);
        }
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().ok();
    }
    let stdout = io::stdout();
    let mut out = Output::new(stdout.lock(), Format::from_flags(cli.opts.json, cli.opts.csv));
    let result = run(&cli, &mut out).and_then(|ok| {
        out.flush()?;
        Ok(ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("usage: conductors [--corpus DIR] [--group NAME] [--prime P] <COMMAND>; see --help");
            ExitCode::from(3)
        }
        Err(Failure::Data(e)) => {
            eprintln!("data error: {e}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every requested check passed.
fn run<W: Write>(cli: &Cli, out: &mut Output<W>) -> CliResult<bool> {
    let o = &cli.opts;
    match &cli.command {
        Command::Validate { files } if !files.is_empty() => validate_files(files, out),
        Command::Validate { .. } => validate_corpus(o, out),
        Command::Conductors => conductors(o, out),
        Command::Gendec => gendec(o, out),
        Command::Blocks => blocks(o, out),
        Command::Verify { all, samples } => verify(o, *all, *samples, out),
        Command::IsometrySearch(pair) => isometry_search(o, pair, out),
        Command::IsometryCheck { cert } => isometry_check(o, cert, out),
        Command::RestrictCheck { subgroup } => restrict_check(o, subgroup.as_deref(), out),
    }
}

fn open_corpus(o: &Opts) -> CliResult<Corpus> {
    Ok(Corpus::open(&o.corpus)?)
}

fn require_group(o: &Opts) -> CliResult<&str> {
    o.group
        .as_deref()
        .ok_or_else(|| Failure::Usage("this command needs --group".into()))
}

fn load_group(corpus: &Corpus, name: &str) -> CliResult<GroupDataset> {
    let entry = corpus
        .entry(name)
        .ok_or_else(|| Failure::Usage(format!("group {name} is not in the corpus")))?;
    Ok(corpus.load(entry)?)
}

/// Groups selected by --group (or all), with primes filtered by --prime.
fn selection(o: &Opts, corpus: &Corpus) -> CliResult<Vec<(GroupDataset, Vec<u64>)>> {
    let groups = match &o.group {
        Some(g) => vec![load_group(corpus, g)?],
        None => corpus.load_all()?,
    };
    let mut sel = Vec::new();
    for ds in groups {
        let primes: Vec<u64> = ds
            .primes
            .keys()
            .copied()
            .filter(|p| o.prime.is_none_or(|q| q == *p))
            .collect();
        if primes.is_empty() && o.group.is_some() {
            return Err(Failure::Usage(format!(
                "{} has no data at p={}",
                ds.name(),
                o.prime.unwrap_or(0)
            )));
        }
        sel.push((ds, primes));
    }
    Ok(sel)
}

fn check_prime(ds: &GroupDataset, p: u64) -> CliResult<()> {
    if ds.primes.contains_key(&p) {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{} has no data at p={p}", ds.name())))
    }
}

#[derive(Serialize)]
struct ValidateRow {
    group: String,
    order: u64,
    classes: usize,
    primes: Vec<u64>,
    subgroups: Vec<String>,
}

fn validate_row(ds: &GroupDataset) -> ValidateRow {
    ValidateRow {
        group: ds.name().to_string(),
        order: ds.table.group_order(),
        classes: ds.table.num_classes(),
        primes: ds.primes.keys().copied().collect(),
        subgroups: ds.subgroups.iter().map(|s| s.name.clone()).collect(),
    }
}

fn emit_validate<W: Write>(rows: &[ValidateRow], out: &mut Output<W>) -> CliResult<bool> {
    out.table(
        &["group", "order", "classes", "primes", "subgroups"],
        rows.iter()
            .map(|r| {
                vec![
                    r.group.clone(),
                    r.order.to_string(),
                    r.classes.to_string(),
                    render::join(&r.primes),
                    r.subgroups.join(" "),
                ]
            })
            .collect(),
        rows,
    )?;
    Ok(true)
}

fn validate_files<W: Write>(files: &[PathBuf], out: &mut Output<W>) -> CliResult<bool> {
    let mut rows = Vec::new();
    for f in files {
        let ds = load_dataset(f).map_err(|e| match e {
            Error::Schema { path, msg } => Error::Schema {
                path: format!("{}:{path}", f.display()),
                msg,
            },
            other => other,
        })?;
        rows.push(validate_row(&ds));
    }
    emit_validate(&rows, out)
}

fn validate_corpus<W: Write>(o: &Opts, out: &mut Output<W>) -> CliResult<bool> {
    let corpus = open_corpus(o)?;
    let rows: Vec<ValidateRow> = selection(o, &corpus)?
        .iter()
        .map(|(ds, _)| validate_row(ds))
        .collect();
    emit_validate(&rows, out)
}

#[derive(Serialize)]
struct ConductorRow {
    group: String,
    character: usize,
    degree: u64,
    conductor: u64,
    prime: u64,
    conductor_p: u64,
}

fn conductors<W: Write>(o: &Opts, out: &mut Output<W>) -> CliResult<bool> {
    let corpus = open_corpus(o)?;
    let ds = load_group(&corpus, require_group(o)?)?;
    let primes: Vec<u64> = match o.prime {
        Some(p) => {
            check_prime(&ds, p)?;
            vec![p]
        }
        None => ds.primes.keys().copied().collect(),
    };
    let t = &ds.table;
    let mut rows = Vec::new();
    for &p in &primes {
        for i in 0..t.num_classes() {
            let chi = ClassFunction::irreducible(t, i);
            rows.push(ConductorRow {
                group: ds.name().to_string(),
                character: i,
                degree: t.degree(i),
                conductor: char_conductor(&chi, None),
                prime: p,
                conductor_p: char_conductor(&chi, Some(p)),
            });
        }
    }
    out.table(
        &["group", "chi", "degree", "c(chi)", "p", "c(chi)_p"],
        rows.iter()
            .map(|r| {
                vec![
                    r.group.clone(),
                    r.character.to_string(),
                    r.degree.to_string(),
                    r.conductor.to_string(),
                    r.prime.to_string(),
                    r.conductor_p.to_string(),
                ]
            })
            .collect(),
        &rows,
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct GendecOut {
    group: String,
    prime: u64,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
}

fn gendec<W: Write>(o: &Opts, out: &mut Output<W>) -> CliResult<bool> {
    let corpus = open_corpus(o)?;
    let ds = load_group(&corpus, require_group(o)?)?;
    let p = o
        .prime
        .ok_or_else(|| Failure::Usage("gendec needs --prime".into()))?;
    check_prime(&ds, p)?;
    let gm = gendec_all(&ds, p)?;
    let columns: Vec<String> = (0..gm.num_columns())
        .map(|c| {
            let (u, phi) = gm.column(c);
            format!("{}/{phi}", ds.table.class(u).name)
        })
        .collect();
    let rows: Vec<Vec<String>> = gm
        .entries
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    let mut header = vec!["chi".to_string()];
    header.extend(columns.iter().cloned());
    let text_rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| std::iter::once(i.to_string()).chain(r.iter().cloned()).collect())
        .collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let doc = GendecOut {
        group: ds.name().to_string(),
        prime: p,
        columns,
        rows,
    };
    out.table(&header_refs, text_rows, &doc)?;
    Ok(true)
}

#[derive(Serialize)]
struct BlockRow<'a> {
    group: String,
    prime: u64,
    #[serde(flatten)]
    block: &'a Block,
}

fn blocks<W: Write>(o: &Opts, out: &mut Output<W>) -> CliResult<bool> {
    let corpus = open_corpus(o)?;
    let sel = selection(o, &corpus)?;
    let mut rows = Vec::new();
    for (ds, primes) in &sel {
        for &p in primes {
            for b in &ds.prime(p)?.blocks {
                rows.push(BlockRow {
                    group: ds.name().to_string(),
                    prime: p,
                    block: b,
                });
            }
        }
    }
    out.table(
        &["group", "p", "block", "defect", "irr", "ibr"],
        rows.iter()
            .map(|r| {
                vec![
                    r.group.clone(),
                    r.prime.to_string(),
                    r.block.id.to_string(),
                    r.block.defect.to_string(),
                    render::join(&r.block.irr),
                    render::join(&r.block.ibr),
                ]
            })
            .collect(),
        &rows,
    )?;
    Ok(true)
}

fn verify<W: Write>(o: &Opts, all: bool, samples: usize, out: &mut Output<W>) -> CliResult<bool> {
    if !all && o.group.is_none() {
        return Err(Failure::Usage("verify needs --all or --group".into()));
    }
    let corpus = open_corpus(o)?;
    let sel = selection(o, &corpus)?;
    let cfg = SuiteConfig {
        seed: o.seed,
        samples,
    };
    let tasks: Vec<(&GroupDataset, u64)> = sel
        .iter()
        .flat_map(|(ds, primes)| primes.iter().map(move |&p| (ds, p)))
        .collect();
    let summaries: Vec<GroupPrimeSummary> = tasks
        .par_iter()
        .map(|(ds, p)| verify_group_prime(ds, *p, cfg))
        .collect::<Result<_, _>>()?;
    let pass = summaries.iter().all(|s| s.pass);
    out.summaries(&summaries)?;
    Ok(pass)
}

/// A corpus group, or failing that a subgroup table carried by some dataset.
fn resolve_side(
    corpus: &Corpus,
    owner: Option<&GroupDataset>,
    name: &str,
    p: u64,
    block: usize,
) -> CliResult<BlockSide> {
    if corpus.entry(name).is_some() {
        let ds = load_group(corpus, name)?;
        check_prime(&ds, p)?;
        return Ok(BlockSide::from_dataset(&ds, p, block)?);
    }
    let owners = match owner {
        Some(ds) => vec![ds.clone()],
        None => corpus.load_all()?,
    };
    for ds in &owners {
        for s in &ds.subgroups {
            if (s.name == name || s.embedding.subgroup_table.group_name() == name)
                && s.primes.contains_key(&p)
            {
                return Ok(BlockSide::from_subgroup(ds, &s.name, p, block)?);
            }
        }
    }
    Err(Failure::Usage(format!("no block data for {name} at p={p}")))
}

#[derive(Serialize)]
struct CandidateOut {
    certificate: Certificate,
    perfect: bool,
    conductor_preserved: bool,
    l0_preserved: bool,
}

fn describe(a: &BlockSide, b: &BlockSide, cand: &IsometryCandidate) -> CliResult<CandidateOut> {
    let rep = check_perfection(a, b, cand)?;
    let (cp, _) = check_conductor_preservation(a, b, cand)?;
    let l0 = check_l0_preservation(a, b, cand)?;
    let certificate = cand
        .to_certificate()
        .ok_or_else(|| Failure::Usage("candidate is not a signed bijection".into()))?;
    Ok(CandidateOut {
        certificate,
        perfect: rep.perfect() && check_isometry(cand)?,
        conductor_preserved: cp,
        l0_preserved: l0,
    })
}

fn emit_candidates<W: Write>(found: &[CandidateOut], out: &mut Output<W>) -> CliResult<()> {
    out.table(
        &[
            "source",
            "target",
            "permutation",
            "signs",
            "perfect",
            "conductors",
            "l0",
        ],
        found
            .iter()
            .map(|c| {
                let s = &c.certificate;
                vec![
                    format!("{}:{}:{}", s.source.group, s.source.prime, s.source.block),
                    format!("{}:{}:{}", s.target.group, s.target.prime, s.target.block),
                    render::join(&s.permutation),
                    render::join(&s.signs),
                    c.perfect.to_string(),
                    c.conductor_preserved.to_string(),
                    c.l0_preserved.to_string(),
                ]
            })
            .collect(),
        found,
    )?;
    Ok(())
}

fn isometry_search<W: Write>(o: &Opts, pair: &PairArgs, out: &mut Output<W>) -> CliResult<bool> {
    let corpus = open_corpus(o)?;
    let ds = load_group(&corpus, require_group(o)?)?;
    let p = o
        .prime
        .ok_or_else(|| Failure::Usage("isometry-search needs --prime".into()))?;
    check_prime(&ds, p)?;
    let a = BlockSide::from_dataset(&ds, p, pair.block)?;
    let b = resolve_side(&corpus, Some(&ds), &pair.target, p, pair.target_block)?;
    let found: Vec<CandidateOut> = search_perfect_isometries(&a, &b, o.bound)?
        .iter()
        .map(|c| describe(&a, &b, c))
        .collect::<CliResult<_>>()?;
    emit_candidates(&found, out)?;
    Ok(!found.is_empty()
        && found
            .iter()
            .all(|c| c.perfect && c.conductor_preserved && c.l0_preserved))
}

fn isometry_check<W: Write>(o: &Opts, cert: &Path, out: &mut Output<W>) -> CliResult<bool> {
    let text = std::fs::read_to_string(cert).map_err(|source| Error::Io {
        path: cert.to_path_buf(),
        source,
    })?;
    let de = &mut serde_json::Deserializer::from_str(&text);
    let c: Certificate = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: format!("{}:{}", cert.display(), e.path()),
        msg: e.inner().to_string(),
    })?;
    let cand = IsometryCandidate::from_certificate(&c)?;
    let corpus = open_corpus(o)?;
    let a = resolve_side(&corpus, None, &c.source.group, c.source.prime, c.source.block)?;
    let b = resolve_side(&corpus, None, &c.target.group, c.target.prime, c.target.block)?;
    if a.size() != b.size() || a.size() != cand.matrix.len() {
        return Err(Failure::Usage(
            "certificate size does not match the blocks".into(),
        ));
    }
    let d = describe(&a, &b, &cand)?;
    let ok = d.perfect && d.conductor_preserved && d.l0_preserved;
    emit_candidates(std::slice::from_ref(&d), out)?;
    Ok(ok)
}

fn restrict_check<W: Write>(o: &Opts, subgroup: Option<&str>, out: &mut Output<W>) -> CliResult<bool> {
    let corpus = open_corpus(o)?;
    let sel = selection(o, &corpus)?;
    let mut reports: Vec<VerificationReport> = Vec::new();
    for (ds, primes) in &sel {
        for &p in primes {
            let gm = gendec_all(ds, p)?;
            match subgroup {
                Some(name) => {
                    let sub = ds
                        .subgroup(name)
                        .ok_or_else(|| Failure::Usage(format!("{} has no subgroup {name}", ds.name())))?;
                    reports.push(check_restriction_props_for(ds, &gm, sub)?);
                }
                None => reports.extend(check_restriction_props(ds, &gm)?),
            }
        }
    }
    let pass = reports
        .iter()
        .all(|r| r.pass || r.status == Status::NotApplicable);
    out.reports(&reports)?;
    Ok(pass)
}
