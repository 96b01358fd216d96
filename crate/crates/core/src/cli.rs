//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when a check ran and found violations (the
//! report is still written), 2 when the input could not be read or the
//! invocation is malformed.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::command::{
    c_command_matrix, cu_command_matrix, government_pairs, theorem_suite, GovernorPolicy, NodeScope,
};
use crate::features::{
    build_feature_matrix, compare_feature_vs_ultrametric, determinant, pauli_assembly, rank, FeatureTable, Sign,
};
use crate::fixtures;
use crate::generate::{random_suite, AritySpec};
use crate::hierarchy::HierarchyDocument;
use crate::lexdist::{check_nested_pattern, complexity, min_distance_matrix, DEFAULT_CATEGORY_ORDER};
use crate::matrix::{Cell, DistanceMatrix, LabeledMatrix};
use crate::tree::{assign_heights, parse_tree_file, NumberedTree, PhraseTree};
use crate::ultrametric::{all_triangles, check_all, leaf_matrix_labeled, xbar_template, LeafLabels};
use crate::verify::{complexity_suite, equilateral_suite, ultrametric_suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATIONS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "ultratree", version, about = "Ultrametric distance analysis of phrase trees")]
pub struct Cli {
    /// Output format. CSV is available for matrix outputs only.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LabelMode {
    Category,
    Word,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Theorem,
    Equilateral,
    Ultrametric,
    Complexity,
}

#[derive(Debug, Args)]
pub struct MatrixSource {
    /// Tree file (one bracketed tree per line).
    pub trees: Option<PathBuf>,
    /// JSON matrix document `{"labels": [...], "rows": [[...]]}`.
    #[arg(long, conflicts_with = "trees")]
    pub matrix: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leaf distance matrix of every tree, or the X-bar template.
    Matrix {
        #[arg(required_unless_present = "xbar")]
        trees: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = LabelMode::Category)]
        labels: LabelMode,
        /// Emit the Spec / X / YP template instead.
        #[arg(long)]
        xbar: bool,
        #[arg(long = "i", default_value_t = 0)]
        i: u64,
    },
    /// Metric and ultrametric axiom check.
    Check(MatrixSource),
    /// Classify every leaf triple.
    Triangles(MatrixSource),
    /// Dominance matrix over all nodes.
    Dominance { trees: PathBuf },
    /// C-command matrix.
    Ccommand {
        trees: PathBuf,
        #[arg(long, default_value_t = NodeScope::AllNodes)]
        scope: NodeScope,
    },
    /// Cu-command matrix.
    Cucommand {
        trees: PathBuf,
        #[arg(long, default_value_t = NodeScope::AllNodes)]
        scope: NodeScope,
    },
    /// Compare c-command with cu-command on every tree.
    Theorem {
        trees: PathBuf,
        #[arg(long, default_value_t = NodeScope::Leaves)]
        scope: NodeScope,
    },
    /// Government pairs under a governor policy.
    Govern {
        trees: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = ["V".to_string(), "P".to_string()])]
        governors: Vec<String>,
    },
    /// Minimum category distances over a corpus, optionally checking the
    /// nested row pattern along `--order`.
    Mindist {
        trees: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_CATEGORY_ORDER.map(String::from))]
        categories: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<String>>,
        #[arg(long = "i", requires = "order")]
        i: Option<u64>,
    },
    /// Root height of every tree against a bound.
    Complexity {
        trees: PathBuf,
        #[arg(long, default_value_t = crate::lexdist::DEFAULT_COMPLEXITY_BOUND)]
        bound: u32,
    },
    /// Feature matrix, its determinant and Pauli form, and its comparison with
    /// the category distance matrix of a corpus.
    Features {
        #[arg(long, default_value_t = -1, allow_negative_numbers = true)]
        f_ap: i64,
        /// Corpus for the category matrix; the shipped corpus by default.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Accessibility-hierarchy and partial-order checks from a JSON document.
    Hierarchy { document: PathBuf },
    /// Seeded randomized property suite.
    Randtest {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        trees: usize,
        #[arg(long, default_value_t = 10)]
        max_leaves: usize,
        #[arg(long, default_value = "mixed:4")]
        arity: String,
        #[arg(long, value_enum, default_value_t = Suite::Theorem)]
        suite: Suite,
        #[arg(long, default_value_t = NodeScope::Leaves)]
        scope: NodeScope,
        /// Write failing trees here when the suite finds any.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
    },
}

/// Library operations and the command that exposes each.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("parse_tree", "matrix"),
    ("assign_heights", "complexity"),
    ("lca", "matrix"),
    ("dominates", "dominance"),
    ("dominance_matrix", "dominance"),
    ("leaf_matrix", "matrix"),
    ("check_metric", "check"),
    ("check_ultrametric", "check"),
    ("classify_triangle", "triangles"),
    ("all_triangles", "triangles"),
    ("xbar_template", "matrix"),
    ("same_height_distance", "cucommand"),
    ("c_command", "ccommand"),
    ("cu_domain", "cucommand"),
    ("cu_command_matrix", "cucommand"),
    ("theorem_check", "theorem"),
    ("governs", "govern"),
    ("random_tree", "randtest"),
    ("tree_category_minima", "mindist"),
    ("min_distance_matrix", "mindist"),
    ("check_nested_pattern", "mindist"),
    ("complexity", "complexity"),
    ("build_feature_matrix", "features"),
    ("determinant", "features"),
    ("pauli_assembly", "features"),
    ("feature_distance", "features"),
    ("compare_feature_vs_ultrametric", "features"),
    ("check_strategy", "hierarchy"),
    ("check_language", "hierarchy"),
    ("check_downset", "hierarchy"),
];

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}: file not found")]
    FileNotFound(PathBuf),
    #[error("{0}: {1}")]
    Io(PathBuf, String),
    #[error("{path}: line {line}: {message}")]
    Parse { path: PathBuf, line: usize, message: String },
    #[error("{0}")]
    BadConfig(String),
    #[error(transparent)]
    Analysis(#[from] crate::Error),
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, mut stdout)) => {
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| match e.kind() {
        std::io::ErrorKind::NotFound => CliError::FileNotFound(path.to_path_buf()),
        _ => CliError::Io(path.to_path_buf(), e.to_string()),
    })
}

fn read_trees(path: &Path) -> Result<Vec<NumberedTree>, CliError> {
    parse_tree_file(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: e.line,
        message: e.source.to_string(),
    })
}

fn read_matrix(path: &Path) -> Result<DistanceMatrix, CliError> {
    DistanceMatrix::from_json_str(&read(path)?).map_err(|e| CliError::Parse {
        path: path.to_path_buf(),
        line: 0,
        message: e.to_string(),
    })
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize")
}

fn matrices<T: Cell>(format: Format, ms: &[LabeledMatrix<T>]) -> String {
    match format {
        Format::Json => json_text(&Value::Array(ms.iter().map(LabeledMatrix::to_json).collect())),
        Format::Csv => ms.iter().map(LabeledMatrix::to_csv).collect::<Vec<_>>().join("\n"),
    }
}

fn json_only(format: Format, what: &str) -> Result<(), CliError> {
    match format {
        Format::Json => Ok(()),
        Format::Csv => Err(CliError::BadConfig(format!("`{what}` output is JSON only"))),
    }
}

fn trees_of(numbered: &[NumberedTree]) -> Vec<PhraseTree> {
    numbered.iter().map(|t| t.tree.clone()).collect()
}

fn status(violations: bool) -> i32 {
    if violations {
        EXIT_VIOLATIONS
    } else {
        EXIT_OK
    }
}

fn execute(cli: &Cli) -> Result<(i32, String), CliError> {
    let fmt = cli.format;
    match &cli.command {
        Command::Matrix { xbar: true, i, .. } => Ok((EXIT_OK, matrices(fmt, &[xbar_template(*i)]))),
        Command::Matrix { trees, labels, .. } => {
            let path = trees.as_deref().ok_or_else(|| CliError::BadConfig("tree file required".into()))?;
            let mode = match labels {
                LabelMode::Category => LeafLabels::Category,
                LabelMode::Word => LeafLabels::Word,
            };
            let ms = read_trees(path)?
                .iter()
                .map(|t| leaf_matrix_labeled(&t.tree, &assign_heights(&t.tree), mode))
                .collect::<crate::Result<Vec<_>>>()?;
            Ok((EXIT_OK, matrices(fmt, &ms)))
        }
        Command::Check(src) => {
            json_only(fmt, "check")?;
            match (&src.trees, &src.matrix) {
                (_, Some(m)) => {
                    let m = read_matrix(m)?;
                    let r = check_all(&m);
                    Ok((status(!r.is_clean()), json_text(&r.to_json(&m))))
                }
                (Some(path), None) => {
                    let mut dirty = false;
                    let mut out = Vec::new();
                    for t in read_trees(path)? {
                        let m = leaf_matrix_labeled(&t.tree, &assign_heights(&t.tree), LeafLabels::Category)?;
                        let r = check_all(&m);
                        dirty |= !r.is_clean();
                        out.push(json!({"line": t.line, "violations": r.to_json(&m)}));
                    }
                    Ok((status(dirty), json_text(&Value::Array(out))))
                }
                (None, None) => Err(CliError::BadConfig("give a tree file or --matrix".into())),
            }
        }
        Command::Triangles(src) => {
            json_only(fmt, "triangles")?;
            let ms: Vec<(usize, DistanceMatrix)> = match (&src.trees, &src.matrix) {
                (_, Some(m)) => vec![(0, read_matrix(m)?)],
                (Some(path), None) => read_trees(path)?
                    .iter()
                    .map(|t| Ok((t.line, leaf_matrix_labeled(&t.tree, &assign_heights(&t.tree), LeafLabels::Category)?)))
                    .collect::<Result<_, CliError>>()?,
                (None, None) => return Err(CliError::BadConfig("give a tree file or --matrix".into())),
            };
            let mut out = Vec::new();
            for (line, m) in ms {
                let tri = if m.size() < 3 { vec![] } else { all_triangles(&m)? };
                out.push(json!({"line": line, "triangles": tri}));
            }
            Ok((EXIT_OK, json_text(&Value::Array(out))))
        }
        Command::Dominance { trees } => {
            let ms: Vec<_> = read_trees(trees)?.iter().map(|t| t.tree.dominance_matrix()).collect();
            Ok((EXIT_OK, matrices(fmt, &ms)))
        }
        Command::Ccommand { trees, scope } => {
            let ms = read_trees(trees)?
                .iter()
                .map(|t| c_command_matrix(&t.tree, &assign_heights(&t.tree), *scope))
                .collect::<crate::Result<Vec<_>>>()?;
            Ok((EXIT_OK, matrices(fmt, &ms)))
        }
        Command::Cucommand { trees, scope } => {
            let ms: Vec<_> = read_trees(trees)?
                .iter()
                .map(|t| cu_command_matrix(&t.tree, &assign_heights(&t.tree), *scope))
                .collect();
            Ok((EXIT_OK, matrices(fmt, &ms)))
        }
        Command::Theorem { trees, scope } => {
            json_only(fmt, "theorem")?;
            let ts = trees_of(&read_trees(trees)?);
            let s = theorem_suite(&ts, *scope);
            Ok((status(!s.holds()), json_text(&serde_json::to_value(&s).expect("serializes"))))
        }
        Command::Govern { trees, governors } => {
            json_only(fmt, "govern")?;
            let policy = GovernorPolicy::new(governors.iter().filter(|g| !g.is_empty()).cloned());
            let mut out = Vec::new();
            for t in read_trees(trees)? {
                let h = assign_heights(&t.tree);
                let pairs: Vec<Value> = government_pairs(&t.tree, &h, &policy)?
                    .into_iter()
                    .map(|(a, b)| {
                        json!({
                            "governor": a, "governor_label": t.tree.nodes()[a.0].label,
                            "governed": b, "governed_label": t.tree.nodes()[b.0].label,
                        })
                    })
                    .collect();
                out.push(json!({"line": t.line, "pairs": pairs}));
            }
            Ok((EXIT_OK, json_text(&Value::Array(out))))
        }
        Command::Mindist { trees, categories, order, i } => {
            let corpus = trees_of(&read_trees(trees)?);
            let m = min_distance_matrix(&corpus, categories)?;
            let Some(order) = order else {
                return Ok((EXIT_OK, match fmt {
                    Format::Json => json_text(&m.to_json()),
                    Format::Csv => m.to_csv(),
                }));
            };
            let i = i.ok_or_else(|| CliError::BadConfig("--order needs --i".into()))?;
            let holds = check_nested_pattern(&m, order, i)?;
            let text = match fmt {
                Format::Json => json_text(&json!({
                    "matrix": m.to_json(),
                    "nested_pattern": {"order": order, "i": i, "holds": holds},
                })),
                Format::Csv => m.to_csv(),
            };
            Ok((status(!holds), text))
        }
        Command::Complexity { trees, bound } => {
            json_only(fmt, "complexity")?;
            let corpus = trees_of(&read_trees(trees)?);
            Ok((EXIT_OK, json_text(&serde_json::to_value(complexity(&corpus, *bound)).expect("serializes"))))
        }
        Command::Features { f_ap, corpus } => {
            let sign = Sign::from_value(*f_ap).ok_or_else(|| CliError::BadConfig("--f-ap must be 1 or -1".into()))?;
            let table = FeatureTable::default();
            let f = build_feature_matrix(&table, sign)?;
            if fmt == Format::Csv {
                return Ok((EXIT_OK, f.to_csv()));
            }
            let corpus = match corpus {
                Some(p) => trees_of(&read_trees(p)?),
                None => fixtures::category_corpus(),
            };
            let u = min_distance_matrix(&corpus, &DEFAULT_CATEGORY_ORDER)?;
            let cmp = compare_feature_vs_ultrametric(&table, &u)?;
            let p = pauli_assembly();
            let positive = f.rows().iter().flatten().filter(|&&x| x > 0).count();
            let out = json!({
                "matrix": f.to_json(),
                "determinant": determinant(&f),
                "rank": rank(&f),
                "positive_entries": positive,
                "negative_entries": f.size() * f.size() - positive,
                "pauli_imaginary_zero": p.iter().flatten().all(|z| z.im == 0),
                "pauli_matches": (0..4).all(|r| (0..4).all(|s| p[r][s].re == f.get(r, s) && p[r][s].im == 0)),
                "comparison": cmp,
            });
            Ok((EXIT_OK, json_text(&out)))
        }
        Command::Hierarchy { document } => {
            json_only(fmt, "hierarchy")?;
            let doc: HierarchyDocument = serde_json::from_str(&read(document)?).map_err(|e| CliError::Parse {
                path: document.clone(),
                line: e.line(),
                message: e.to_string(),
            })?;
            let v = doc.check()?;
            Ok((status(!v.is_empty()), json_text(&serde_json::to_value(&v).expect("serializes"))))
        }
        Command::Randtest { seed, trees, max_leaves, arity, suite, scope, counterexamples } => {
            json_only(fmt, "randtest")?;
            let arity: AritySpec = arity.parse()?;
            let batch = random_suite(*seed, *trees, *max_leaves, arity)?;
            let (passed, report, failures) = match suite {
                Suite::Theorem => {
                    let s = theorem_suite(&batch, *scope);
                    let v = serde_json::to_value(&s).expect("serializes");
                    (s.holds(), v.clone(), v["disagreements"].clone())
                }
                Suite::Equilateral | Suite::Ultrametric | Suite::Complexity => {
                    let s = match suite {
                        Suite::Equilateral => equilateral_suite(&batch),
                        Suite::Ultrametric => ultrametric_suite(&batch),
                        _ => complexity_suite(&batch),
                    };
                    let v = serde_json::to_value(&s).expect("serializes");
                    (s.passed(), v.clone(), v["counterexamples"].clone())
                }
            };
            if let (false, Some(path)) = (passed, counterexamples) {
                fs::write(path, json_text(&failures)).map_err(|e| CliError::Io(path.clone(), e.to_string()))?;
            }
            Ok((status(!passed), json_text(&report)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_command_in_the_table_exists() {
        let names: Vec<String> = <Cli as clap::CommandFactory>::command()
            .get_subcommands()
            .map(|c| c.get_name().to_string())
            .collect();
        for (op, cmd) in OPERATIONS {
            assert!(names.iter().any(|n| n == cmd), "{op} -> {cmd}");
        }
        assert_eq!(names.len(), 13);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["ultratree", "bogus"]).code, EXIT_INPUT);
        assert_eq!(run(["ultratree", "randtest"]).code, EXIT_INPUT);
        let missing = run(["ultratree", "matrix", "/definitely/not/here.trees"]);
        assert_eq!(missing.code, EXIT_INPUT);
        assert!(missing.stderr.contains("file not found"));
        assert_eq!(run(["ultratree", "--help"]).code, EXIT_OK);
    }

    #[test]
    fn xbar_from_cli() {
        let out = run(["ultratree", "matrix", "--xbar", "--i", "1"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v[0]["rows"], json!([[0, 3, 3], [3, 0, 2], [3, 2, 0]]));
    }
}
