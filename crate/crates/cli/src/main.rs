use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use reducts_core::canonical::{
    build_clean_skeleton, classify_behavior, orbit_compare, orbit_partition, verify_orbit_order,
    OrderedPoset, SkeletonOptions,
};
use reducts_core::format::{parse_structure, poset_to_json, structure_to_json, to_dot};
use reducts_core::generic::{generate_generic, GenerateConfig, GenericCertificate, Language, Structure};
use reducts_core::reducts::{
    classify_triple, relation_table, ClassOrDegenerate, RelationKind, TripleClass, TripleType,
};
use reducts_core::transforms::{rotate, turn, RotationPartition, TurnSpec};
use reducts_core::verify::{run_all, VerifyConfig};

#[derive(Parser)]
#[command(name = "reducts", version, about = "Generic posets, turns, rotations and reduct checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum LanguageArg {
    Plain,
    Upset,
    Ordered,
}

impl From<LanguageArg> for Language {
    fn from(l: LanguageArg) -> Self {
        match l {
            LanguageArg::Plain => Language::Plain,
            LanguageArg::Upset => Language::Upset,
            LanguageArg::Ordered => Language::Ordered,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum RelationArg {
    Bot,
    Cyc,
    Pari,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a certified generic approximation.
    Gen {
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "plain")]
        language: LanguageArg,
        /// Saturation rounds (default depends on depth and language).
        #[arg(long)]
        rounds: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write the extension certificate here.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Turn a poset by an up-set.
    Turn {
        #[arg(long)]
        poset: PathBuf,
        /// Up-set members; defaults to the up-set stored in the file.
        #[arg(long, value_delimiter = ',')]
        upset: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also compare with the rotation by (∅, complement, up-set).
        #[arg(long)]
        check: bool,
    },
    /// Rotate a poset by an ideal X, middle Y and filter Z.
    Rotate {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long = "X", alias = "x", value_delimiter = ',', num_args = 0..)]
        x: Vec<usize>,
        #[arg(long = "Y", alias = "y", value_delimiter = ',', num_args = 0..)]
        y: Vec<usize>,
        #[arg(long = "Z", alias = "z", value_delimiter = ',', num_args = 0..)]
        z: Vec<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Classify a triple as pari, cyc or cyc'.
    Classify {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        triple: Vec<usize>,
    },
    /// List the extension of ⊥, cyc or pari.
    Relation {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_enum)]
        kind: RelationArg,
    },
    /// Orbit blocks over constants and their comparisons.
    Orbits {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        consts: Vec<usize>,
        /// Fail when the orbit order has violations.
        #[arg(long)]
        check: bool,
    },
    /// Classify the behavior of a map between ordered posets.
    Behavior {
        #[arg(long)]
        src: PathBuf,
        #[arg(long)]
        dst: PathBuf,
        /// JSON array of images, one per source element.
        #[arg(long)]
        map: PathBuf,
    },
    /// Build and check a ≺-clean skeleton.
    Skeleton {
        #[arg(long)]
        ordered: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        consts: Vec<usize>,
        /// Depth of the extension certificate for the skeleton (0 skips it).
        #[arg(long, default_value_t = 1)]
        certify_depth: usize,
        /// Certificate written by `gen`; certification bases are then drawn
        /// from its core only.
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Run every verification suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = VerifyConfig::MAX_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        /// Write the JSON report here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Hasse diagram as DOT.
    ExportDot {
        #[arg(long)]
        poset: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn read_structure(path: &Path) -> Result<Structure> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_structure(&text).with_context(|| format!("in {}", path.display()))
}

fn read_ordered(path: &Path) -> Result<OrderedPoset> {
    let s = read_structure(path)?;
    let order = s.order.ok_or_else(|| anyhow!("{} has no \"prec\" order", path.display()))?;
    Ok(OrderedPoset::new(s.poset, order)?)
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            // A closed pipe downstream is not an error.
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn print_json(value: &serde_json::Value) {
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(value).expect("serializable"));
}

/// `Ok(false)` means a check ran and failed.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Gen { depth, seed, language, rounds, output, certificate } => {
            let mut config = GenerateConfig::new(depth, seed, language.into());
            if let Some(r) = rounds {
                config.rounds = r;
            }
            let g = generate_generic(&config)?;
            emit(output.as_deref(), &(structure_to_json(&g.structure) + "\n"))?;
            if let Some(path) = certificate {
                let text = serde_json::to_string_pretty(&g.certificate)?;
                fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            eprintln!(
                "{} elements, certified core of {}, {} deficiencies",
                g.structure.len(),
                g.certificate.core.len(),
                g.certificate.deficiencies.len()
            );
            Ok(g.certificate.is_complete())
        }
        Command::Turn { poset, upset, output, check } => {
            let s = read_structure(&poset)?;
            let spec = match upset {
                Some(members) => TurnSpec::new(&s.poset, &members)?,
                None => {
                    let f = s.upset.ok_or_else(|| anyhow!("no --upset given and the file stores none"))?;
                    TurnSpec::from_bits(&s.poset, f)?
                }
            };
            let q = turn(&s.poset, &spec)?;
            emit(output.as_deref(), &(poset_to_json(&q) + "\n"))?;
            if check {
                let rotated = rotate(&s.poset, &RotationPartition::for_turn(&spec))?;
                let ok = rotated == q;
                eprintln!("turn equals rotation by (∅, complement, up-set): {ok}");
                return Ok(ok);
            }
            Ok(true)
        }
        Command::Rotate { poset, x, y, z, output } => {
            let s = read_structure(&poset)?;
            let q = rotate(&s.poset, &RotationPartition::new(x, y, z))?;
            emit(output.as_deref(), &(poset_to_json(&q) + "\n"))?;
            Ok(true)
        }
        Command::Classify { poset, triple } => {
            let s = read_structure(&poset)?;
            let [a, b, c] = triple[..] else {
                bail!("--triple takes exactly three elements, got {}", triple.len());
            };
            let class = classify_triple(&s.poset, (a, b, c))?;
            let ty = (a != b && b != c && a != c).then(|| TripleType::of(&s.poset, a, b, c).to_string());
            let class = match class {
                ClassOrDegenerate::Class(TripleClass::Pari) => "pari",
                ClassOrDegenerate::Class(TripleClass::Cyc) => "cyc",
                ClassOrDegenerate::Class(TripleClass::CycPrime) => "cyc'",
                ClassOrDegenerate::Degenerate => "degenerate",
            };
            print_json(&json!({ "triple": [a, b, c], "type": ty, "class": class }));
            Ok(true)
        }
        Command::Relation { poset, kind } => {
            let s = read_structure(&poset)?;
            let kind = match kind {
                RelationArg::Bot => RelationKind::Bot,
                RelationArg::Cyc => RelationKind::Cyc,
                RelationArg::Pari => RelationKind::Pari,
            };
            print_json(&json!(relation_table(&s.poset, kind)));
            Ok(true)
        }
        Command::Orbits { poset, consts, check } => {
            let s = read_structure(&poset)?;
            let blocks = orbit_partition(&s.poset, &consts)?;
            let mut comparisons = Vec::new();
            for x in blocks.keys() {
                for y in blocks.keys().filter(|y| *y > x) {
                    let rel = orbit_compare(&s.poset, &consts, x, y)?;
                    comparisons.push(json!({ "x": x.to_string(), "y": y.to_string(), "compare": rel }));
                }
            }
            let report = verify_orbit_order(&s.poset, &consts, None)?;
            let blocks: serde_json::Map<String, serde_json::Value> =
                blocks.iter().map(|(l, m)| (l.to_string(), json!(m))).collect();
            print_json(&json!({
                "blocks": blocks,
                "comparisons": comparisons,
                "violations": report.violations,
            }));
            Ok(!check || report.passed())
        }
        Command::Behavior { src, dst, map } => {
            let src = read_ordered(&src)?;
            let dst = read_ordered(&dst)?;
            let text = fs::read_to_string(&map).with_context(|| format!("reading {}", map.display()))?;
            let f: Vec<usize> = serde_json::from_str(&text).with_context(|| format!("in {}", map.display()))?;
            let b = classify_behavior(&src, &dst, &f)?;
            print_json(&json!({ "behavior": b.name(), "detail": b }));
            Ok(true)
        }
        Command::Skeleton { ordered, consts, certify_depth, certificate } => {
            let op = read_ordered(&ordered)?;
            let certify_core = match certificate {
                Some(path) => {
                    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                    let cert: GenericCertificate =
                        serde_json::from_str(&text).with_context(|| format!("in {}", path.display()))?;
                    Some(cert.core)
                }
                None => None,
            };
            let options = SkeletonOptions { certify_depth, certify_core, ..SkeletonOptions::default() };
            let report = build_clean_skeleton(&op, &consts, &options)?;
            print_json(&json!({
                "passed": report.passed(),
                "members": report.members,
                "slices": report.slices,
                "clean": report.clean,
                "deficiencies": report.certificate.as_ref().map(|c| &c.deficiencies),
            }));
            Ok(report.passed())
        }
        Command::Verify { seed, depth, samples, output } => {
            let config = VerifyConfig { samples, ..VerifyConfig::new(seed, depth) };
            let report = run_all(&config).map_err(|e| anyhow!(e))?;
            for s in &report.suites {
                let status = if s.passed() { "PASS" } else { "FAIL" };
                println!("{status} {:<32} {:>7} cases {:>4} failures", s.name, s.cases, s.failures.len());
                if let Some(f) = s.failures.first() {
                    println!("     first: {}: expected {}, observed {}", f.case, f.expected, f.observed);
                }
            }
            let passed = report.passed();
            println!("{}", if passed { "all suites passed" } else { "verification failed" });
            if let Some(path) = output {
                let text = serde_json::to_string_pretty(&report)?;
                fs::write(&path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(passed)
        }
        Command::ExportDot { poset, output } => {
            let s = read_structure(&poset)?;
            emit(output.as_deref(), &to_dot(&s.poset))?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
