//! `gait`: extract a gait-cycle database, learn classifiers, classify a
//! probe and evaluate methods.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use mocap_gait::classifier::Classifier;
use mocap_gait::evaluation::{evaluate_methods, write_metadata, write_report, EvaluationInput, SetupConfig, SetupKind};
use mocap_gait::features::{parse_method_list, GaitSample, Method};
use mocap_gait::mocap::{normalize_root, parse_amc, parse_asf, subject_from_file_name, write_amc, MotionSequence, Skeleton};
use mocap_gait::segmentation::{extract_gait_cycles, read_database, write_database};

#[derive(Parser, Debug)]
#[command(name = "gait", version, about = "Gait recognition from ASF/AMC motion capture")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cut gait cycles out of a directory of AMC recordings.
    Extract(ExtractArgs),
    /// Learn one classifier per method on a database.
    Learn(LearnArgs),
    /// Rank the gallery identities for a probe cycle.
    Classify(ClassifyArgs),
    /// Run the evaluation protocol and write the CSV report.
    Evaluate(EvaluateArgs),
}

#[derive(Args, Debug)]
struct ExtractArgs {
    /// Skeleton used for every recording.
    #[arg(long)]
    skeleton: PathBuf,
    /// Exemplary gait cycle (AMC).
    #[arg(long)]
    exemplar: PathBuf,
    /// Directory searched recursively for AMC files.
    #[arg(long)]
    input_dir: PathBuf,
    /// Output database directory.
    #[arg(long)]
    db_dir: PathBuf,
    #[arg(long, default_value_t = 302.0)]
    distance_threshold: f64,
}

#[derive(Args, Debug)]
struct LearnArgs {
    #[arg(long)]
    db_dir: PathBuf,
    /// Overrides the database's own skeleton.
    #[arg(long)]
    skeleton: Option<PathBuf>,
    /// Directory for the classifier files (`<method>.json`).
    #[arg(long)]
    output: PathBuf,
    /// Comma-separated method ids or `all`.
    #[arg(long, default_value = "all")]
    methods: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct ClassifyArgs {
    #[arg(long)]
    classifier: PathBuf,
    /// Probe gait cycle (AMC).
    #[arg(long)]
    probe: PathBuf,
    /// Gallery database directory.
    #[arg(long)]
    gallery: PathBuf,
    /// Write the ranking here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    #[arg(long)]
    db_dir: PathBuf,
    /// Overrides the database's own skeleton.
    #[arg(long)]
    skeleton: Option<PathBuf>,
    #[arg(long, default_value = "all")]
    methods: String,
    /// `homogeneous:<C>` or `heterogeneous:<CL>,<CE>`.
    #[arg(long, default_value = "homogeneous:3")]
    setup: SetupKind,
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Report path; standard output when absent. A JSON sidecar is written
    /// next to it.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Threshold shown in the report when the database has no manifest.
    #[arg(long)]
    distance_threshold: Option<f64>,
}

fn read_skeleton(path: &Path) -> Result<Skeleton> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_asf(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_motion(path: &Path, skeleton: &Skeleton) -> Result<MotionSequence> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    Ok(parse_amc(&text, skeleton)
        .with_context(|| format!("parsing {}", path.display()))?
        .with_source(subject_from_file_name(&name), name))
}

fn amc_files(dir: &Path) -> Result<Vec<PathBuf>> {
    if !dir.is_dir() {
        bail!("{} is not a directory", dir.display());
    }
    let mut out = Vec::new();
    for entry in walkdir::WalkDir::new(dir).sort_by_file_name() {
        let entry = entry.with_context(|| format!("listing {}", dir.display()))?;
        let is_amc = entry
            .path()
            .extension()
            .is_some_and(|e| e.eq_ignore_ascii_case("amc"));
        if entry.file_type().is_file() && is_amc {
            out.push(entry.into_path());
        }
    }
    Ok(out)
}

fn load_samples(db_dir: &Path, skeleton: Option<&Path>) -> Result<(Arc<Skeleton>, Vec<GaitSample>, f64)> {
    let over = skeleton.map(read_skeleton).transpose()?;
    let (skel, db) =
        read_database(db_dir, over.as_ref()).with_context(|| format!("loading database {}", db_dir.display()))?;
    let skel = Arc::new(skel);
    let samples = db
        .samples
        .iter()
        .map(|c| {
            GaitSample::from_motion(&c.motion, skel.clone())
                .with_context(|| format!("cycle {} of {}", c.start + 1, c.source_file))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((skel, samples, db.threshold))
}

fn extract(a: &ExtractArgs) -> Result<()> {
    if a.distance_threshold.is_nan() || a.distance_threshold < 0.0 {
        bail!("--distance-threshold must be non-negative");
    }
    let skeleton = read_skeleton(&a.skeleton)?;
    let exemplar = normalize_root(&read_motion(&a.exemplar, &skeleton)?);
    let files = amc_files(&a.input_dir)?;
    if files.is_empty() {
        eprintln!("warning: no AMC files under {}", a.input_dir.display());
    }
    let normalized_dir = a.db_dir.join("normalized");
    fs::create_dir_all(&normalized_dir).with_context(|| format!("creating {}", normalized_dir.display()))?;
    let mut motions = Vec::with_capacity(files.len());
    for f in &files {
        let m = normalize_root(&read_motion(f, &skeleton)?);
        let out = normalized_dir.join(&m.source_file);
        fs::write(&out, write_amc(&m)).with_context(|| format!("writing {}", out.display()))?;
        motions.push(m);
    }
    let db = extract_gait_cycles(&motions, &exemplar, a.distance_threshold);
    write_database(&db, &skeleton, &a.db_dir).with_context(|| format!("writing {}", a.db_dir.display()))?;
    println!("subjects: {}", db.subjects.len());
    println!("samples: {}", db.len());
    Ok(())
}

fn learn(a: &LearnArgs) -> Result<()> {
    let methods = parse_method_list(&a.methods)?;
    let (skel, samples, _) = load_samples(&a.db_dir, a.skeleton.as_deref())?;
    fs::create_dir_all(&a.output).with_context(|| format!("creating {}", a.output.display()))?;
    for m in methods {
        let c = Classifier::learn(m, &samples, skel.clone(), a.seed).with_context(|| format!("learning {m}"))?;
        let path = a.output.join(format!("{}.json", m.id()));
        fs::write(&path, c.to_json()).with_context(|| format!("writing {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn classify(a: &ClassifyArgs) -> Result<()> {
    let text = fs::read_to_string(&a.classifier).with_context(|| format!("reading {}", a.classifier.display()))?;
    let c = Classifier::from_json(&text).with_context(|| format!("loading {}", a.classifier.display()))?;
    let (_, db) = read_database(&a.gallery, Some(&c.skeleton))
        .with_context(|| format!("loading gallery {}", a.gallery.display()))?;
    let gallery = db
        .samples
        .iter()
        .map(|g| GaitSample::from_motion(&g.motion, c.skeleton.clone()))
        .collect::<Result<Vec<_>, _>>()?;
    let probe = GaitSample::from_motion(&read_motion(&a.probe, &c.skeleton)?, c.skeleton.clone())
        .with_context(|| format!("probe {}", a.probe.display()))?;
    let ranking = c.rank(&probe, &gallery)?;
    let mut out = String::from("rank,identity,distance\n");
    for (i, r) in ranking.iter().enumerate() {
        let d = if r.distance.is_nan() { String::new() } else { r.distance.to_string() };
        out.push_str(&format!("{},{},{}\n", i + 1, r.label, d));
    }
    emit(a.output.as_deref(), &out)
}

fn evaluate(a: &EvaluateArgs) -> Result<()> {
    let methods: Vec<Method> = parse_method_list(&a.methods)?;
    let (_, samples, db_threshold) = load_samples(&a.db_dir, a.skeleton.as_deref())?;
    let threshold = if db_threshold.is_nan() {
        a.distance_threshold.unwrap_or(f64::NAN)
    } else {
        db_threshold
    };
    let mut cfg = SetupConfig::new(a.setup, a.seed).with_repetitions(a.repetitions);
    cfg.fineness = 30;
    let input = EvaluationInput {
        samples: &samples,
        threshold,
    };
    let reports = evaluate_methods(&input, &methods, &cfg)?;
    emit(a.output.as_deref(), &write_report(&reports))?;
    if let Some(path) = &a.output {
        let meta = sidecar(path);
        fs::write(&meta, write_metadata(&cfg, &methods, threshold))
            .with_context(|| format!("writing {}", meta.display()))?;
    }
    Ok(())
}

/// `report.csv` → `report.csv.json`
fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Extract(a) => extract(a),
        Command::Learn(a) => learn(a),
        Command::Classify(a) => classify(a),
        Command::Evaluate(a) => evaluate(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
