//! Command definitions and implementations behind the `fcd` binary.
//!
//! Primary output (CSV, attribution lines, verdicts, trees) goes to
//! `--output` or stdout and is byte-identical for identical inputs and
//! flags, regardless of thread count. Reports, warnings, and `--timing`
//! lines go to stderr.

use std::collections::BTreeMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

use crate::classify::{attribute, verify, TrainingDoc, VerificationProblem};
use crate::cluster::cluster;
use crate::corpus::{CorpusIndex, DocumentRecord};
use crate::dictionary::{extract_dictionary, Dictionary, DICTIONARY_MAGIC, RECOMMENDED_MIN_TOKENS};
use crate::error::{Error, Result};
use crate::matrix::{fcd_matrix, load_corpus_dictionaries, load_corpus_texts, ncd_matrix, Measure};
use crate::normalize::{LanguageRule, TokenSequence};

/// Dictionary-based text similarity: build dictionaries, compare documents,
/// attribute authorship, verify authors, cluster corpora.
#[derive(Debug, Parser)]
#[command(name = "fcd", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Extract and save one dictionary per manifest document.
    Build(BuildArgs),
    /// Compute the full pairwise distance matrix as CSV.
    Matrix(MatrixArgs),
    /// Attribute query texts to the author of the nearest training document.
    Attribute(AttributeArgs),
    /// Decide same-author or different-author for verification problems.
    Verify(VerifyArgs),
    /// Cluster a distance matrix CSV into a tree.
    Cluster(ClusterArgs),
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    /// Corpus manifest (TSV: path, doc id, author, language).
    pub manifest: PathBuf,
    /// Normalization rule, overriding the manifest default.
    #[arg(long)]
    pub rule: Option<LanguageRule>,
    /// Rebuild dictionaries even when they are up to date.
    #[arg(long)]
    pub force: bool,
    /// Continue past per-document failures; exit nonzero at the end.
    #[arg(long)]
    pub keep_going: bool,
    /// Worker thread count (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print per-phase wall-clock timings to stderr.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct MatrixArgs {
    /// Corpus manifest (TSV: path, doc id, author, language).
    pub manifest: PathBuf,
    /// Distance measure.
    #[arg(long, default_value = "fcd")]
    pub measure: Measure,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker thread count (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print per-phase wall-clock timings to stderr.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct AttributeArgs {
    /// Training corpus manifest; every document needs an author label.
    pub manifest: PathBuf,
    /// Query text files.
    #[arg(required = true)]
    pub queries: Vec<PathBuf>,
    /// Normalization rule for queries; must match the training dictionaries.
    #[arg(long)]
    pub rule: Option<LanguageRule>,
    /// Also list every training document by ascending distance.
    #[arg(long)]
    pub ranking: bool,
    /// Write results here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker thread count (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print per-phase wall-clock timings to stderr.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Corpus manifest with language labels.
    pub manifest: PathBuf,
    /// Verification problems (TSV: problem id, language, unknown id,
    /// comma-separated known ids).
    pub problems: PathBuf,
    /// Ground-truth answers (TSV: problem id, same|different); enables the
    /// aggregate accuracy line.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    /// Write verdicts here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Worker thread count (default: all cores).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Print per-phase wall-clock timings to stderr.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Distance matrix CSV, as produced by `fcd matrix`.
    pub matrix: PathBuf,
    /// Output tree format.
    #[arg(long, default_value = "newick")]
    pub format: TreeFormat,
    /// Write the tree here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Print per-phase wall-clock timings to stderr.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeFormat {
    Newick,
    Dot,
}

impl std::str::FromStr for TreeFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "newick" => Ok(TreeFormat::Newick),
            "dot" => Ok(TreeFormat::Dot),
            other => Err(Error::Config(format!(
                "unknown tree format {other:?}; expected newick or dot"
            ))),
        }
    }
}

/// What a command did, printed to stderr after the primary output.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    pub documents: usize,
    pub tokens: usize,
    pub entries: usize,
    pub warnings: Vec<String>,
    pub phases: Vec<(&'static str, Duration)>,
}

impl RunReport {
    fn new(command: &'static str) -> Self {
        RunReport {
            command,
            documents: 0,
            tokens: 0,
            entries: 0,
            warnings: Vec::new(),
            phases: Vec::new(),
        }
    }

    /// Writes warnings, the summary line, and (optionally) timings to stderr.
    pub fn emit(&self, timing: bool) {
        for warning in &self.warnings {
            eprintln!("warning: {warning}");
        }
        let mut summary = format!("fcd {}: {} documents", self.command, self.documents);
        if self.tokens > 0 {
            summary.push_str(&format!(", {} tokens", self.tokens));
        }
        if self.entries > 0 {
            summary.push_str(&format!(", {} entries", self.entries));
        }
        eprintln!("{summary}");
        if timing {
            for (name, elapsed) in &self.phases {
                eprintln!("timing: {name} {:.3}s", elapsed.as_secs_f64());
            }
        }
    }
}

/// Dispatches a parsed command line. Errors map to exit codes via
/// [`Error::exit_code`].
pub fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Build(args) => {
            init_threads(args.threads)?;
            cmd_build(args)?.emit(args.timing);
        }
        Command::Matrix(args) => {
            init_threads(args.threads)?;
            cmd_matrix(args)?.emit(args.timing);
        }
        Command::Attribute(args) => {
            init_threads(args.threads)?;
            cmd_attribute(args)?.emit(args.timing);
        }
        Command::Verify(args) => {
            init_threads(args.threads)?;
            cmd_verify(args)?.emit(args.timing);
        }
        Command::Cluster(args) => {
            cmd_cluster(args)?.emit(args.timing);
        }
    }
    Ok(())
}

fn init_threads(threads: Option<usize>) -> Result<()> {
    let Some(n) = threads else { return Ok(()) };
    if n == 0 {
        return Err(Error::Config("--threads must be at least 1".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(format!("could not configure {n} worker threads: {e}")))
}

fn write_output(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => std::fs::write(path, content).map_err(|e| Error::io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}

fn read_text_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    String::from_utf8(bytes).map_err(|_| Error::Encoding {
        path: path.to_path_buf(),
    })
}

fn short_document_warning(doc_id: &str, tokens: usize) -> Option<String> {
    (tokens < RECOMMENDED_MIN_TOKENS).then(|| {
        format!(
            "{doc_id}: dictionary built from {tokens} tokens; at least \
             {RECOMMENDED_MIN_TOKENS} is recommended for stable distances"
        )
    })
}

enum BuildOutcome {
    Written { tokens: usize, entries: usize },
    Skipped { tokens: usize, entries: usize },
}

/// Extracts and saves one dictionary per manifest document. Untouched
/// documents with a current dictionary are skipped unless `--force`.
pub fn cmd_build(args: &BuildArgs) -> Result<RunReport> {
    let start = Instant::now();
    let corpus = CorpusIndex::from_manifest(&args.manifest)?;
    let rule = args.rule.unwrap_or_else(|| corpus.rule());
    let mut report = RunReport::new("build");

    let outcomes: Vec<Result<BuildOutcome>> = corpus
        .documents()
        .par_iter()
        .map(|doc| {
            if !args.force {
                if let Some((tokens, entries)) = up_to_date(doc, rule) {
                    return Ok(BuildOutcome::Skipped { tokens, entries });
                }
            }
            let raw = read_text_file(doc.text_path())?;
            let seq = TokenSequence::from_text(doc.doc_id(), &raw, rule);
            let dictionary = extract_dictionary(&seq);
            dictionary.save(doc.dictionary_path())?;
            Ok(BuildOutcome::Written {
                tokens: seq.len(),
                entries: dictionary.len(),
            })
        })
        .collect();

    let mut first_error: Option<Error> = None;
    for (doc, outcome) in corpus.documents().iter().zip(outcomes) {
        match outcome {
            Ok(BuildOutcome::Written { tokens, entries }) => {
                eprintln!(
                    "{}: wrote {} ({tokens} tokens, {entries} entries)",
                    doc.doc_id(),
                    doc.dictionary_path().display()
                );
                report.documents += 1;
                report.tokens += tokens;
                report.entries += entries;
                report
                    .warnings
                    .extend(short_document_warning(doc.doc_id(), tokens));
            }
            Ok(BuildOutcome::Skipped { tokens, entries }) => {
                eprintln!("{}: skipped (up to date)", doc.doc_id());
                report.documents += 1;
                report.tokens += tokens;
                report.entries += entries;
                report
                    .warnings
                    .extend(short_document_warning(doc.doc_id(), tokens));
            }
            Err(error) => {
                if !args.keep_going {
                    return Err(error);
                }
                eprintln!("error: {}: {error}", doc.doc_id());
                first_error.get_or_insert(error);
            }
        }
    }
    report.phases.push(("build", start.elapsed()));
    match first_error {
        Some(error) => Err(error),
        None => Ok(report),
    }
}

/// A dictionary is current when it is at least as new as its text and its
/// header matches the document id and the requested rule. Any unreadable or
/// unexpected header means "rebuild", never an error.
fn up_to_date(doc: &DocumentRecord, rule: LanguageRule) -> Option<(usize, usize)> {
    let text_modified = std::fs::metadata(doc.text_path()).ok()?.modified().ok()?;
    let dict_modified = std::fs::metadata(doc.dictionary_path())
        .ok()?
        .modified()
        .ok()?;
    if dict_modified < text_modified {
        return None;
    }
    let file = std::fs::File::open(doc.dictionary_path()).ok()?;
    let mut lines = std::io::BufReader::new(file).lines();
    if lines.next()?.ok()? != DICTIONARY_MAGIC {
        return None;
    }
    let header = lines.next()?.ok()?;
    let mut tokens = None;
    let mut entries = None;
    let mut matches = 0;
    for field in header.split('\t') {
        match field.split_once('=')? {
            ("source", v) if v == doc.doc_id() => matches += 1,
            ("rule", v) if v == rule.as_str() => matches += 1,
            ("tokens", v) => tokens = v.parse().ok(),
            ("entries", v) => entries = v.parse().ok(),
            _ => return None,
        }
    }
    (matches == 2).then_some(())?;
    Some((tokens?, entries?))
}

fn require_dictionaries(corpus: &CorpusIndex, manifest: &Path) -> Result<()> {
    for doc in corpus.documents() {
        if !doc.dictionary_path().exists() {
            return Err(Error::Config(format!(
                "no dictionary for {} (expected {}); run `fcd build {}` first",
                doc.doc_id(),
                doc.dictionary_path().display(),
                manifest.display()
            )));
        }
    }
    Ok(())
}

/// Computes the full pairwise distance matrix and writes it as CSV.
pub fn cmd_matrix(args: &MatrixArgs) -> Result<RunReport> {
    let corpus = CorpusIndex::from_manifest(&args.manifest)?;
    let labels: Vec<String> = corpus
        .documents()
        .iter()
        .map(|d| d.doc_id().to_string())
        .collect();
    let mut report = RunReport::new("matrix");
    report.documents = corpus.len();

    let load_start = Instant::now();
    let matrix = match args.measure {
        Measure::Fcd => {
            require_dictionaries(&corpus, &args.manifest)?;
            let dictionaries = load_corpus_dictionaries(&corpus)?;
            report.phases.push(("extraction", load_start.elapsed()));
            report.entries = dictionaries.iter().map(Dictionary::len).sum();
            report.tokens = dictionaries.iter().map(Dictionary::token_count).sum();
            let build_start = Instant::now();
            let matrix = fcd_matrix(labels, &dictionaries)?;
            report.phases.push(("matrix", build_start.elapsed()));
            matrix
        }
        Measure::Ncd => {
            let texts = load_corpus_texts(&corpus)?;
            report.phases.push(("extraction", load_start.elapsed()));
            let build_start = Instant::now();
            let matrix = ncd_matrix(labels, &texts)?;
            report.phases.push(("matrix", build_start.elapsed()));
            matrix
        }
    };
    write_output(args.output.as_deref(), &matrix.to_csv())?;
    Ok(report)
}

/// Attributes each query file to the author of its nearest training
/// document, one line per query.
pub fn cmd_attribute(args: &AttributeArgs) -> Result<RunReport> {
    let start = Instant::now();
    let corpus = CorpusIndex::from_manifest(&args.manifest)?;
    if let Some(doc) = corpus.documents().iter().find(|d| d.author().is_none()) {
        return Err(Error::Config(format!(
            "training document {} has no author label",
            doc.doc_id()
        )));
    }
    require_dictionaries(&corpus, &args.manifest)?;
    let dictionaries = load_corpus_dictionaries(&corpus)?;

    // Queries must be normalized exactly like the training side, so the rule
    // comes from the stored dictionaries and --rule may only confirm it.
    let trained_rule = dictionaries[0].rule();
    if let Some(doc_ix) = dictionaries.iter().position(|d| d.rule() != trained_rule) {
        return Err(Error::Config(format!(
            "training dictionaries disagree on the normalization rule: {} uses {}, {} uses {}",
            corpus.documents()[0].doc_id(),
            trained_rule,
            corpus.documents()[doc_ix].doc_id(),
            dictionaries[doc_ix].rule()
        )));
    }
    if let Some(rule) = args.rule {
        if rule != trained_rule {
            return Err(Error::Config(format!(
                "--rule {rule} conflicts with the training dictionaries, which were built with \
                 rule {trained_rule}; rebuild them or drop the flag"
            )));
        }
    }

    let training: Vec<TrainingDoc> = corpus
        .documents()
        .iter()
        .zip(dictionaries)
        .map(|(doc, dictionary)| TrainingDoc {
            doc_id: doc.doc_id().to_string(),
            author: doc.author().expect("checked above").to_string(),
            dictionary,
        })
        .collect();

    let mut report = RunReport::new("attribute");
    report.documents = training.len();
    let mut out = String::new();
    for query_path in &args.queries {
        let raw = read_text_file(query_path)?;
        let query_id = query_path.display().to_string();
        let seq = TokenSequence::from_text(query_id.clone(), &raw, trained_rule);
        report
            .warnings
            .extend(short_document_warning(&query_id, seq.len()));
        let query = extract_dictionary(&seq);
        let result = attribute(&query_id, &query, &training)?;
        out.push_str(&format!(
            "{query_id}\t{}\t{}\t{:.6}\n",
            result.predicted_author, result.nearest_doc, result.distance
        ));
        if args.ranking {
            for (doc_id, distance) in &result.ranking {
                out.push_str(&format!("  {doc_id}\t{distance:.6}\n"));
            }
        }
    }
    write_output(args.output.as_deref(), &out)?;
    report.phases.push(("attribute", start.elapsed()));
    Ok(report)
}

#[derive(Debug)]
struct ProblemLine {
    problem_id: String,
    language: String,
    unknown: String,
    known: Vec<String>,
}

fn parse_problems(path: &Path) -> Result<Vec<ProblemLine>> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let malformed = |line: usize, reason: String| Error::Malformed {
        path: path.to_path_buf(),
        what: "problem record",
        line,
        reason,
    };
    let mut problems: Vec<ProblemLine> = Vec::new();
    for (ix, line) in raw.lines().enumerate() {
        let line_no = ix + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let problem_id = fields[0].trim();
        if problem_id.is_empty() {
            return Err(malformed(line_no, "empty problem id".to_string()));
        }
        let reject = |reason: String| malformed(line_no, format!("problem {problem_id}: {reason}"));
        if fields.len() != 4 {
            return Err(reject(format!(
                "expected 4 tab-separated fields (problem id, language, unknown id, known ids), \
                 found {}",
                fields.len()
            )));
        }
        if problems.iter().any(|p| p.problem_id == problem_id) {
            return Err(reject("duplicate problem id".to_string()));
        }
        let language = fields[1].trim();
        let unknown = fields[2].trim();
        if language.is_empty() {
            return Err(reject("empty language field".to_string()));
        }
        if unknown.is_empty() {
            return Err(reject("empty unknown document field".to_string()));
        }
        let known: Vec<String> = fields[3]
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::to_string)
            .collect();
        if known.is_empty() {
            return Err(reject("no known documents listed".to_string()));
        }
        problems.push(ProblemLine {
            problem_id: problem_id.to_string(),
            language: language.to_string(),
            unknown: unknown.to_string(),
            known,
        });
    }
    if problems.is_empty() {
        return Err(Error::Malformed {
            path: path.to_path_buf(),
            what: "problem file",
            line: raw.lines().count(),
            reason: "no problem records".to_string(),
        });
    }
    Ok(problems)
}

fn parse_truth(path: &Path) -> Result<BTreeMap<String, bool>> {
    let raw = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut truth = BTreeMap::new();
    for (ix, line) in raw.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let malformed = |reason: String| Error::Malformed {
            path: path.to_path_buf(),
            what: "truth record",
            line: ix + 1,
            reason,
        };
        let (problem_id, answer) = trimmed.split_once('\t').ok_or_else(|| {
            malformed("expected problem id and answer separated by a tab".to_string())
        })?;
        let same = match answer.trim().to_ascii_lowercase().as_str() {
            "same" | "yes" | "y" => true,
            "different" | "no" | "n" => false,
            other => {
                return Err(malformed(format!(
                    "unrecognized answer {other:?}; expected same or different"
                )))
            }
        };
        if truth.insert(problem_id.trim().to_string(), same).is_some() {
            return Err(malformed(format!(
                "duplicate truth entry for {problem_id:?}"
            )));
        }
    }
    Ok(truth)
}

/// Decides each verification problem; with `--truth`, also prints aggregate
/// accuracy to stderr.
pub fn cmd_verify(args: &VerifyArgs) -> Result<RunReport> {
    let start = Instant::now();
    let corpus = CorpusIndex::from_manifest(&args.manifest)?;
    let problems = parse_problems(&args.problems)?;
    let truth = args.truth.as_deref().map(parse_truth).transpose()?;
    require_dictionaries(&corpus, &args.manifest)?;
    let dictionaries: BTreeMap<String, Dictionary> = corpus
        .documents()
        .iter()
        .map(|d| d.doc_id().to_string())
        .zip(load_corpus_dictionaries(&corpus)?)
        .collect();

    if let Some(truth) = &truth {
        if let Some(id) = truth
            .keys()
            .find(|id| problems.iter().all(|p| &p.problem_id != *id))
        {
            return Err(Error::Config(format!(
                "truth file answers unknown problem {id:?}"
            )));
        }
    }

    let mut report = RunReport::new("verify");
    report.documents = corpus.len();
    let mut out = String::new();
    let mut correct = 0usize;
    let mut graded = 0usize;
    for problem in &problems {
        let in_problem = |id: &str| Error::Config(format!("problem {}: {id}", problem.problem_id));
        // The pool is every same-language corpus document except the unknown
        // one, in manifest order.
        let pool: Vec<String> = corpus
            .documents()
            .iter()
            .filter(|d| d.language() == Some(problem.language.as_str()))
            .filter(|d| d.doc_id() != problem.unknown)
            .map(|d| d.doc_id().to_string())
            .collect();
        if pool.is_empty() {
            return Err(in_problem(&format!(
                "no corpus documents carry language {:?}",
                problem.language
            )));
        }
        let instance = VerificationProblem {
            unknown: problem.unknown.clone(),
            known_set: problem.known.clone(),
            language_pool: pool,
        };
        let result = verify(&instance, &dictionaries).map_err(|e| match e {
            Error::Config(reason) => in_problem(&reason),
            Error::Precondition(reason) => {
                Error::Precondition(format!("problem {}: {reason}", problem.problem_id))
            }
            other => other,
        })?;
        out.push_str(&format!(
            "{}\t{}\t{:.6}\t{:.6}\n",
            problem.problem_id, result.verdict, result.known_mean, result.pool_mean
        ));
        if let Some(truth) = &truth {
            if let Some(&expected_same) = truth.get(&problem.problem_id) {
                graded += 1;
                if expected_same == (result.verdict == crate::classify::Verdict::SameAuthor) {
                    correct += 1;
                }
            }
        }
    }
    write_output(args.output.as_deref(), &out)?;
    if truth.is_some() && graded > 0 {
        eprintln!(
            "accuracy: {correct}/{graded} = {:.3}",
            correct as f64 / graded as f64
        );
    }
    report.phases.push(("verify", start.elapsed()));
    Ok(report)
}

/// Symmetrizes a matrix CSV, clusters it, and writes the tree.
pub fn cmd_cluster(args: &ClusterArgs) -> Result<RunReport> {
    let start = Instant::now();
    let raw = read_text_file(&args.matrix)?;
    let matrix = crate::matrix::DistanceMatrix::from_csv(&raw, &args.matrix)?;
    let symmetrized = matrix.symmetrize();
    let tree = cluster(&symmetrized)?;
    let note = "asymmetric entries merged as max(d(i,j), d(j,i)) before average-linkage clustering";
    let out = match args.format {
        TreeFormat::Newick => format!("[{note}]\n{}\n", tree.to_newick()),
        TreeFormat::Dot => {
            let dot = tree.to_dot();
            format!("// {note}\n{dot}")
        }
    };
    write_output(args.output.as_deref(), &out)?;
    let mut report = RunReport::new("cluster");
    report.documents = matrix.len();
    report.phases.push(("cluster", start.elapsed()));
    Ok(report)
}
