//! `antimatch`: induce, verify, represent and fuzz antimatroids from the
//! command line.
//!
//! Results go to standard output as one JSON document, progress to standard
//! error. Exit status is 0 when everything checks out, 1 when a property
//! fails, 2 when the input or the limits are at fault.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use antimatch_core::antimatroid::random_antimatroid;
use antimatch_core::induced::{check_theorem, enumerate_codomain};
use antimatch_core::io::{
    parse_family, parse_stable, parse_weighted, write_counterexample, FamilyFile, ReportFile,
    StableFile, WeightedFile,
};
use antimatch_core::representation::{represent, verify_roundtrip};
use antimatch_core::{
    random_stable, random_weighted, InducedFamilyReport, InstanceShape, LeftSet,
    RepresentationKind, Sweep, WeightFormula, WeightedInstance, DEFAULT_ORACLE_LIMIT,
    DEFAULT_SWEEP_LIMIT,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "antimatch",
    version,
    about = "Antimatroids induced by bipartite matchings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest edge count handed to exhaustive matching enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,
    /// Largest |U| swept over all 2^|U| subsets.
    #[arg(long, global = true, default_value_t = DEFAULT_SWEEP_LIMIT)]
    sweep_limit: usize,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the family induced by an instance and check the antimatroid axioms.
    Induce {
        input: PathBuf,
        #[arg(long)]
        kind: Kind,
    },
    /// Check a family against the antimatroid axioms.
    VerifyFamily { input: PathBuf },
    /// Build an instance whose induced family is the given antimatroid.
    Represent {
        input: PathBuf,
        #[arg(long)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Formula::Corrected)]
        formula: Formula,
    },
    /// Represent an antimatroid and compare the induced family with it.
    Roundtrip {
        input: PathBuf,
        #[arg(long)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Formula::Corrected)]
        formula: Formula,
    },
    /// Check many random instances, or roundtrip many random antimatroids.
    Fuzz {
        #[arg(long)]
        kind: Kind,
        #[arg(long, value_enum, default_value_t = Target::Induce)]
        target: Target,
        #[arg(long, value_enum, default_value_t = Formula::Corrected)]
        formula: Formula,
        /// Number of random cases.
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Largest side (instances) or ground set (families).
        #[arg(long, default_value_t = 6)]
        max_size: usize,
        /// Where failing cases are written.
        #[arg(long, default_value = "counterexamples")]
        counterexamples: PathBuf,
    },
    /// Compare the weighted solver with exhaustive search on every subset of U.
    OracleCheck { input: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Stable,
    Weighted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Formula {
    Literal,
    Corrected,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// Random instances; the induced family must be an antimatroid.
    Induce,
    /// Random antimatroids; the representation must roundtrip.
    Roundtrip,
}

impl Kind {
    fn representation(self, formula: Formula) -> RepresentationKind {
        match (self, formula) {
            (Kind::Stable, _) => RepresentationKind::Stable,
            (Kind::Weighted, Formula::Literal) => {
                RepresentationKind::Weighted(WeightFormula::Literal)
            }
            (Kind::Weighted, Formula::Corrected) => {
                RepresentationKind::Weighted(WeightFormula::Corrected)
            }
        }
    }

    fn name(self) -> &'static str {
        match self {
            Kind::Stable => "stable",
            Kind::Weighted => "weighted",
        }
    }
}

/// A finished run: the document to print and whether every check held.
struct Outcome {
    doc: Value,
    ok: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> antimatch_core::Result<T>) -> Result<T> {
    parse(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn sweep(n: usize, limit: usize) -> Sweep {
    if n <= limit {
        Sweep::Full { limit }
    } else {
        Sweep::Matched
    }
}

fn report_json(report: &InducedFamilyReport) -> Value {
    let verdict = check_theorem(report);
    let mut doc = serde_json::to_value(ReportFile::from_report(report)).expect("serializable");
    doc["antimatroid"] = json!(verdict.is_ok());
    doc["violation"] = match &verdict {
        Ok(()) => Value::Null,
        Err(cx) => json!({ "message": cx.violation.to_string(), "witness": cx.violation }),
    };
    doc
}

fn induce(path: &Path, kind: Kind, common: &Common) -> Result<Outcome> {
    let report = match kind {
        Kind::Stable => {
            let inst = load(path, parse_stable)?;
            enumerate_codomain(
                &inst,
                Sweep::Full {
                    limit: common.sweep_limit,
                },
            )?
        }
        Kind::Weighted => {
            let inst = load(path, parse_weighted)?;
            enumerate_codomain(
                &inst,
                Sweep::Full {
                    limit: common.sweep_limit,
                },
            )?
        }
    };
    let doc = report_json(&report);
    let ok = doc["antimatroid"] == json!(true);
    Ok(Outcome { doc, ok })
}

fn verify_family(path: &Path) -> Result<Outcome> {
    let f = load(path, parse_family)?;
    let verdict = f.check_antimatroid();
    let doc = json!({
        "family": FamilyFile::from_family(&f),
        "contains_empty": f.contains(0),
        "accessible": f.is_accessible(),
        "union_closed": f.is_union_closed(),
        "antimatroid": verdict.is_ok(),
        "violation": match &verdict {
            Ok(()) => Value::Null,
            Err(v) => json!({ "message": v.to_string(), "witness": v }),
        },
    });
    Ok(Outcome {
        doc,
        ok: verdict.is_ok(),
    })
}

fn represent_family(path: &Path, kind: RepresentationKind) -> Result<Outcome> {
    let f = load(path, parse_family)?;
    let deco = f.build_decoration(None)?;
    let bundle = represent(&f, &deco, kind)?;
    Ok(Outcome {
        doc: bundle.instance.to_json(),
        ok: true,
    })
}

fn roundtrip(path: &Path, kind: RepresentationKind, common: &Common) -> Result<Outcome> {
    let f = load(path, parse_family)?;
    let report = verify_roundtrip(&f, kind, common.sweep_limit)?;
    let ok = report.equal && report.prefix_failures.is_empty();
    Ok(Outcome {
        doc: serde_json::to_value(&report).expect("serializable"),
        ok,
    })
}

fn oracle_mismatches(inst: &WeightedInstance, common: &Common) -> Result<(u64, u64, Vec<Value>)> {
    let g = inst.graph();
    let n = g.left().len();
    if n > common.sweep_limit || n >= 64 {
        bail!(
            "{n} left vertices exceed the sweep limit {}",
            common.sweep_limit
        );
    }
    let (mut compared, mut skipped, mut mismatches) = (0, 0, Vec::new());
    for mask in 0..(1u64 << n) {
        let subset = LeftSet::from_mask(mask);
        if g.restrict_left(&subset).edge_count() > common.oracle_limit {
            skipped += 1;
            continue;
        }
        let solver = inst.max_weight_matching(&subset)?;
        let oracle = inst.oracle_max_weight(&subset, common.oracle_limit)?;
        compared += 1;
        if solver != oracle {
            mismatches.push(json!({
                "subset": g.left_names(&subset),
                "solver": solver.pairs(g),
                "oracle": oracle.pairs(g),
            }));
        }
    }
    Ok((compared, skipped, mismatches))
}

fn oracle_check(path: &Path, common: &Common) -> Result<Outcome> {
    let inst = load(path, parse_weighted)?;
    let (compared, skipped, mismatches) = oracle_mismatches(&inst, common)?;
    let ok = mismatches.is_empty();
    Ok(Outcome {
        doc: json!({
            "subsets": compared + skipped,
            "compared": compared,
            "skipped_over_limit": skipped,
            "agree": ok,
            "mismatches": mismatches,
        }),
        ok,
    })
}

struct FuzzPlan {
    kind: Kind,
    target: Target,
    formula: Formula,
    count: u64,
    max_size: usize,
    dir: PathBuf,
}

/// One random case: its replayable input and, if it fails, why.
fn fuzz_case(plan: &FuzzPlan, seed: u64, common: &Common) -> Result<(Value, Option<Value>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match plan.target {
        Target::Induce => {
            let shape = InstanceShape::sample(plan.max_size.max(1), &mut rng);
            let case_seed = rng.gen();
            let (input, report, oracle) = match plan.kind {
                Kind::Stable => {
                    let inst = random_stable(&shape, case_seed);
                    let report = enumerate_codomain(&inst, sweep(shape.left, common.sweep_limit))?;
                    (
                        serde_json::to_value(StableFile::from_instance(&inst))?,
                        report,
                        Vec::new(),
                    )
                }
                Kind::Weighted => {
                    let inst = random_weighted(&shape, case_seed);
                    let report = enumerate_codomain(&inst, sweep(shape.left, common.sweep_limit))?;
                    let (_, _, mismatches) = oracle_mismatches(&inst, common)?;
                    (
                        serde_json::to_value(WeightedFile::from_instance(&inst))?,
                        report,
                        mismatches,
                    )
                }
            };
            let failure = match check_theorem(&report) {
                Err(cx) => {
                    Some(json!({ "message": cx.violation.to_string(), "witness": cx.violation }))
                }
                Ok(()) if !oracle.is_empty() => {
                    Some(json!({ "message": "solver and oracle disagree", "mismatches": oracle }))
                }
                Ok(()) => None,
            };
            Ok((input, failure))
        }
        Target::Roundtrip => {
            let size = rng.gen_range(0..=plan.max_size.min(6));
            let f = random_antimatroid(size, rng.gen());
            let report = verify_roundtrip(
                &f,
                plan.kind.representation(plan.formula),
                common.sweep_limit,
            )?;
            let input = serde_json::to_value(FamilyFile::from_family(&f))?;
            let failure = (!report.equal || !report.prefix_failures.is_empty())
                .then(|| serde_json::to_value(&report).expect("serializable"));
            Ok((input, failure))
        }
    }
}

fn fuzz(plan: &FuzzPlan, common: &Common) -> Result<Outcome> {
    let mut files = Vec::new();
    for i in 0..plan.count {
        let seed = common.seed.wrapping_add(i);
        let (input, failure) = fuzz_case(plan, seed, common)?;
        if let Some(why) = failure {
            let target = match plan.target {
                Target::Induce => "induce",
                Target::Roundtrip => "roundtrip",
            };
            let name = format!("{target}-{}-{seed}", plan.kind.name());
            let path = write_counterexample(&plan.dir, &name, &input)?;
            eprintln!(
                "case {seed}: {}",
                why["message"].as_str().unwrap_or("roundtrip mismatch")
            );
            files.push(json!({ "seed": seed, "file": path.display().to_string(), "failure": why }));
        }
        if (i + 1) % 100 == 0 || i + 1 == plan.count {
            eprintln!(
                "fuzz: {}/{} cases, {} failing",
                i + 1,
                plan.count,
                files.len()
            );
        }
    }
    let ok = files.is_empty();
    Ok(Outcome {
        doc: json!({
            "kind": plan.kind.name(),
            "seed": common.seed,
            "cases": plan.count,
            "counterexamples": files.len(),
            "failures": files,
        }),
        ok,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    match &cli.command {
        Command::Induce { input, kind } => induce(input, *kind, common),
        Command::VerifyFamily { input } => verify_family(input),
        Command::Represent {
            input,
            kind,
            formula,
        } => represent_family(input, kind.representation(*formula)),
        Command::Roundtrip {
            input,
            kind,
            formula,
        } => roundtrip(input, kind.representation(*formula), common),
        Command::Fuzz {
            kind,
            target,
            formula,
            count,
            max_size,
            counterexamples,
        } => fuzz(
            &FuzzPlan {
                kind: *kind,
                target: *target,
                formula: *formula,
                count: *count,
                max_size: *max_size,
                dir: counterexamples.clone(),
            },
            common,
        ),
        Command::OracleCheck { input } => oracle_check(input, common),
    }
}

fn emit(doc: &Value, out: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli).and_then(|o| emit(&o.doc, cli.common.out.as_deref()).map(|()| o.ok)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
