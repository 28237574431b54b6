//! The `mtspec` command line: argument parsing, dispatch and output
//! documents. [`run`] never exits the process, so it is directly testable.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::classify::{ClassifyError, TheoryParams};
use crate::exact::Unit;
use crate::notation::Style;
use crate::spectra::{
    homotopy_group, standard_constraints, CertifiedTable, Node, SpectraError, SpectrumId, MAX_COHOMOLOGY_DEGREE,
};
use crate::tftlab::{
    euler_theory_value, invertible_4d_monomial, invertible_4d_value, vf_invariant, Catalog, FormalSum, FrobeniusData,
    SurfaceBordism, TftError,
};

/// Environment variable naming the certified data: a table file, or a
/// directory holding `cohomology_table.txt` and optionally `manifolds.txt`.
pub const DATA_ENV: &str = "MTSPEC_DATA";
pub const TABLE_FILE: &str = "cohomology_table.txt";
pub const CATALOG_FILE: &str = "manifolds.txt";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "mtspec",
    version,
    about = "Cohomology tables, invertible field theories and bordism invariants"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Plain ASCII instead of Unicode math.
    #[arg(long, global = true)]
    ascii: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum TableKind {
    Cohomology,
    Homotopy,
    Hz,
    /// The whole certified table in its canonical file form.
    Data,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Theory {
    Euler,
    Frobenius,
    #[value(name = "four_d")]
    FourD,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a row of a stored table.
    Table {
        kind: TableKind,
        #[arg(long)]
        d: Option<u8>,
        #[arg(long, default_value_t = 0)]
        cover: u8,
    },
    /// Check exactness of the long exact sequence for the connected cover.
    Les {
        #[arg(long)]
        d: u8,
    },
    /// Re-derive a cover row from the long exact sequence.
    Derive {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        k: u32,
        /// Drop the side conditions and list every candidate.
        #[arg(long)]
        unconstrained: bool,
    },
    /// The group of invertible (d; n) theories.
    Classify {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        n: u8,
    },
    /// Restrict theory parameters to a lower level of locality.
    Restrict {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        from: u8,
        #[arg(long)]
        to: u8,
        /// Comma-separated nonzero rationals or roots of unity (`zeta6^5`).
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
    /// The theories that restrict trivially.
    Kernel {
        #[arg(long)]
        d: u8,
        #[arg(long)]
        from: u8,
        #[arg(long)]
        to: u8,
    },
    /// Evaluate an invertible theory on a closed manifold.
    Eval {
        theory: Theory,
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l1: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        l2: Option<String>,
        /// A catalog name or an expression such as `CP2 # CP2 + S4`.
        #[arg(long)]
        manifold: Option<String>,
        /// For `euler`: evaluate on a bordism with these Euler characteristics.
        #[arg(
            long,
            allow_hyphen_values = true,
            requires = "chi_source",
            conflicts_with = "manifold"
        )]
        chi_total: Option<i64>,
        #[arg(long, allow_hyphen_values = true, requires = "chi_total")]
        chi_source: Option<i64>,
    },
    /// Vector-field bordism invariant of an integer combination of manifolds.
    Bordism {
        #[arg(long)]
        d: u8,
        #[arg(long, allow_hyphen_values = true)]
        sum: String,
    },
    /// Mapping-class-group extension classes and the index-two question.
    GilmerMasbaum,
}

/// Structured output of one subcommand.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDocument {
    pub command: String,
    pub inputs: BTreeMap<String, Value>,
    pub result: Value,
    /// Certified data records the result was read from.
    pub references: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::Spectra(s) => s.into(),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<SpectraError> for Failure {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::OutOfTable(_) | SpectraError::Unsupported(_) => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

impl From<TftError> for Failure {
    fn from(e: TftError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Data {
    table: CertifiedTable,
    catalog: Catalog,
    references: Vec<String>,
}

fn load_data(path: Option<&Path>) -> Result<Data, Failure> {
    let Some(path) = path else {
        return Ok(Data {
            table: CertifiedTable::builtin().clone(),
            catalog: Catalog::builtin().clone(),
            references: Vec::new(),
        });
    };
    let (table_path, catalog_path) = if path.is_dir() {
        let c = path.join(CATALOG_FILE);
        (path.join(TABLE_FILE), c.exists().then_some(c))
    } else {
        (path.to_path_buf(), None)
    };
    let table = CertifiedTable::load(&table_path).map_err(|e| Failure::Usage(format!("{DATA_ENV}: {e}")))?;
    let mut references = vec![table_path.display().to_string()];
    let catalog = match catalog_path {
        Some(p) => {
            references.push(p.display().to_string());
            Catalog::load(&p).map_err(|e| Failure::Usage(format!("{DATA_ENV}: {e}")))?
        }
        None => Catalog::builtin().clone(),
    };
    Ok(Data {
        table,
        catalog,
        references,
    })
}

struct Reply {
    command: &'static str,
    inputs: BTreeMap<String, Value>,
    text: String,
    result: Value,
    references: Vec<String>,
}

fn inputs<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

fn parse_unit(s: &str, what: &str) -> Result<Unit, Failure> {
    s.parse()
        .map_err(|e| Failure::Usage(format!("{what}: cannot read `{s}` as a nonzero number ({e})")))
}

fn required<'a>(x: &'a Option<String>, flag: &str) -> Result<&'a str, Failure> {
    x.as_deref().ok_or_else(|| Failure::Usage(format!("missing --{flag}")))
}

fn cmd_table(data: &Data, kind: TableKind, d: Option<u8>, cover: u8, style: Style) -> Result<Reply, Failure> {
    let mut text = String::new();
    let result;
    let mut references = Vec::new();
    match kind {
        TableKind::Cohomology => {
            let d = d.ok_or_else(|| Failure::Usage("table cohomology needs --d".into()))?;
            let s = SpectrumId::new(d, cover)?;
            let resolved = crate::spectra::resolve_cover(s)?;
            text.push_str(&format!("{}\n", Node::Spectrum(s).graded_label(style)));
            if resolved != s {
                let eq = if style == Style::Unicode { "≃" } else { "~" };
                text.push_str(&format!("{eq} {}\n", resolved.render(style)));
            }
            let mut rows = Vec::new();
            for k in 0..=MAX_COHOMOLOGY_DEGREE {
                let e = data.table.cohomology(s, k)?;
                text.push_str(&format!("k={k}: {}\n", e.render(style)));
                rows.push(json!({ "k": k, "group": to_value(&e) }));
            }
            if resolved.cover == 0 {
                references.push("Thom isomorphism".to_string());
            } else {
                references.push(format!("group {}", Node::Spectrum(resolved).token()));
            }
            result = json!({ "spectrum": resolved.render(Style::Ascii), "rows": rows });
        }
        TableKind::Homotopy => {
            let ds: Vec<u8> = match d {
                Some(d) => vec![d],
                None => (1..=4).collect(),
            };
            let mut rows = Vec::new();
            for d in ds {
                let groups = (0..=u32::from(d))
                    .map(|k| homotopy_group(d, k))
                    .collect::<Result<Vec<_>, _>>()?;
                let cells: Vec<_> = groups.iter().map(|g| g.render(style)).collect();
                let label = SpectrumId::new(d, 0)?.render(style);
                text.push_str(&format!("π_k({label}), k=0..{d}: {}\n", cells.join(", ")));
                rows.push(json!({ "d": d, "groups": to_value(&groups) }));
            }
            result = json!({ "rows": rows });
        }
        TableKind::Hz => {
            let entries = (0..=MAX_COHOMOLOGY_DEGREE + 1)
                .map(|k| data.table.hz_entry(k))
                .collect::<Result<Vec<_>, _>>()?;
            let cells: Vec<_> = entries.iter().map(|e| e.group.render(style)).collect();
            text.push_str(&format!(
                "{}, k=0..{}\n",
                Node::Hz.graded_label(style),
                MAX_COHOMOLOGY_DEGREE + 1
            ));
            text.push_str(&cells.join(","));
            text.push('\n');
            for (k, e) in entries.iter().enumerate() {
                if !e.is_zero() {
                    text.push_str(&format!("k={k}: {}\n", e.render(style)));
                }
            }
            references.push("hz".to_string());
            result = json!({ "rows": to_value(&entries) });
        }
        TableKind::Data => {
            text = data.table.render();
            result = Value::String(text.clone());
        }
    }
    Ok(Reply {
        command: "table",
        inputs: inputs([
            ("kind", to_value(&format!("{kind:?}").to_lowercase())),
            ("d", to_value(&d)),
            ("cover", to_value(&cover)),
        ]),
        text,
        result,
        references,
    })
}

fn parse_params(s: &str) -> Result<TheoryParams, Failure> {
    let coords = s
        .split(',')
        .map(|p| parse_unit(p, "--params"))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TheoryParams::new(coords))
}

fn map_reference(d: u8, from: u8, to: u8) -> Vec<String> {
    let cover = |n: u8| d.saturating_sub(n);
    if cover(from) == 0 && cover(to) >= 1 && d >= 2 {
        vec![format!("map E{d} P{d} {d}")]
    } else {
        Vec::new()
    }
}

fn dispatch(cli: &Cli, data: &Data) -> Result<Reply, Failure> {
    let style = if cli.ascii { Style::Ascii } else { Style::Unicode };
    match &cli.command {
        Command::Table { kind, d, cover } => cmd_table(data, *kind, *d, *cover, style),
        Command::Les { d } => {
            let report = data.table.verify_les(*d)?;
            if !report.all_exact {
                return Err(Failure::Internal(format!(
                    "long exact sequence fails:\n{}",
                    report.render()
                )));
            }
            Ok(Reply {
                command: "les",
                inputs: inputs([("d", to_value(d))]),
                text: report.render(),
                result: to_value(&report),
                references: vec!["map".into(), "hz".into()],
            })
        }
        Command::Derive { d, k, unconstrained } => {
            let constraints = if *unconstrained {
                Vec::new()
            } else {
                standard_constraints(*d)?
            };
            let r = data.table.derive_cover_cohomology(*d, *k, &constraints)?;
            let candidates: Vec<_> = r.candidates.iter().map(|g| g.render(style)).collect();
            let mut text = String::new();
            for c in &constraints {
                text.push_str(&format!("constraint: {}\n", c.describe()));
            }
            text.push_str(&format!("candidates: {}\n", candidates.join(", ")));
            if let Some(g) = &r.group {
                text.push_str(&format!(
                    "{} = {}\n",
                    Node::Spectrum(SpectrumId::connected_cover(*d)).cohomology_label(*k, style),
                    g.render(style)
                ));
            } else {
                text.push_str("ambiguous\n");
            }
            Ok(Reply {
                command: "derive",
                inputs: inputs([
                    ("d", to_value(d)),
                    ("k", to_value(k)),
                    ("unconstrained", to_value(unconstrained)),
                ]),
                text,
                result: to_value(&r),
                references: vec![format!("group P{d} {k}")],
            })
        }
        Command::Classify { d, n } => {
            let g = data.table.classify(*d, *n)?;
            Ok(Reply {
                command: "classify",
                inputs: inputs([("d", to_value(d)), ("n", to_value(n))]),
                text: format!("{}\n", g.render(style)),
                result: to_value(&g),
                references: Vec::new(),
            })
        }
        Command::Restrict { d, from, to, params } => {
            let p = parse_params(params)?;
            let t = data.table.restrict_theory(*d, *from, *to, &p)?;
            Ok(Reply {
                command: "restrict",
                inputs: inputs([
                    ("d", to_value(d)),
                    ("from", to_value(from)),
                    ("to", to_value(to)),
                    ("params", to_value(&p)),
                ]),
                text: format!("{}\n", t.render(style)),
                result: to_value(&t),
                references: map_reference(*d, *from, *to),
            })
        }
        Command::Kernel { d, from, to } => {
            let k = data.table.restriction_kernel(*d, *from, *to)?;
            let mut text = format!("{}\n", k.render(style));
            if let Some(els) = &k.elements {
                if els.len() > 1 {
                    let shown: Vec<_> = els.iter().map(|e| format!("({})", e.render(style))).collect();
                    text.push_str(&format!("elements: {}\n", shown.join(", ")));
                }
            }
            Ok(Reply {
                command: "kernel",
                inputs: inputs([("d", to_value(d)), ("from", to_value(from)), ("to", to_value(to))]),
                text,
                result: to_value(&k),
                references: map_reference(*d, *from, *to),
            })
        }
        Command::Eval {
            theory,
            lambda,
            mu,
            l1,
            l2,
            manifold,
            chi_total,
            chi_source,
        } => {
            let manifold = manifold
                .as_deref()
                .map(|m| data.catalog.parse_expression(m))
                .transpose()?;
            let mut input = inputs([("manifold", to_value(&manifold))]);
            let (value, extra) = match theory {
                Theory::Euler => {
                    let l = parse_unit(required(lambda, "lambda")?, "--lambda")?;
                    let b = match (chi_total, chi_source, &manifold) {
                        (Some(t), Some(s), _) => SurfaceBordism {
                            chi_total: *t,
                            chi_source: *s,
                        },
                        (_, _, Some(m)) => SurfaceBordism::closed(m)?,
                        _ => {
                            return Err(Failure::Usage(
                                "euler needs --manifold or --chi-total/--chi-source".into(),
                            ))
                        }
                    };
                    input.insert("lambda".into(), to_value(&l));
                    input.insert("bordism".into(), to_value(&b));
                    (euler_theory_value(&l, b), None)
                }
                Theory::Frobenius => {
                    let m = parse_unit(required(mu, "mu")?, "--mu")?;
                    let surface = manifold
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("frobenius needs --manifold".into()))?;
                    input.insert("mu".into(), to_value(&m));
                    (FrobeniusData::new(m).surface_value(surface)?, None)
                }
                Theory::FourD => {
                    let a = parse_unit(required(l1, "l1")?, "--l1")?;
                    let b = parse_unit(required(l2, "l2")?, "--l2")?;
                    let w = manifold
                        .as_ref()
                        .ok_or_else(|| Failure::Usage("four_d needs --manifold".into()))?;
                    input.insert("l1".into(), to_value(&a));
                    input.insert("l2".into(), to_value(&b));
                    (invertible_4d_value(&a, &b, w)?, Some(invertible_4d_monomial(w)?))
                }
            };
            input.insert("theory".into(), to_value(&format!("{theory:?}")));
            let mut text = String::new();
            if let Some(mono) = &extra {
                text.push_str(&format!("{}\n", mono.render(style)));
            }
            text.push_str(&format!("{}\n", value.render(style)));
            Ok(Reply {
                command: "eval",
                inputs: input,
                text,
                result: json!({ "value": to_value(&value), "monomial": to_value(&extra) }),
                references: Vec::new(),
            })
        }
        Command::Bordism { d, sum } => {
            let s = FormalSum::parse(sum, &data.catalog)?;
            let inv = vf_invariant(*d, &s)?;
            let split = crate::spectra::vf_splitting(*d)?;
            let text = format!(
                "{}\ninvariant: {}\nnullbordant: {}\n",
                split.render(style),
                inv.render(),
                inv.is_zero()
            );
            Ok(Reply {
                command: "bordism",
                inputs: inputs([("d", to_value(d)), ("sum", to_value(&s))]),
                text,
                result: json!({ "invariant": to_value(&inv), "nullbordant": inv.is_zero(), "splitting": to_value(&split) }),
                references: Vec::new(),
            })
        }
        Command::GilmerMasbaum => {
            let r = data.table.gilmer_masbaum_report()?;
            Ok(Reply {
                command: "gilmer-masbaum",
                inputs: BTreeMap::new(),
                text: r.render(style),
                result: to_value(&r),
                references: vec!["map E3 P3 4".into(), "map P4 P3 4".into()],
            })
        }
    }
}

/// Runs the command line with the data location taken from `MTSPEC_DATA`.
pub fn run<I, T>(args: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let data = std::env::var_os(DATA_ENV).map(PathBuf::from);
    run_with_data(args, data.as_deref())
}

pub fn run_with_data<I, T>(args: I, data: Option<&Path>) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return CliOutput { code, stdout, stderr };
        }
    };
    let reply = load_data(data).and_then(|d| {
        let mut r = dispatch(&cli, &d)?;
        r.references.extend(d.references.iter().cloned());
        Ok(r)
    });
    match reply {
        Ok(r) => {
            let stdout = match cli.format {
                Format::Text => r.text,
                Format::Json => {
                    let doc = OutputDocument {
                        command: r.command.to_string(),
                        inputs: r.inputs,
                        result: r.result,
                        references: r.references,
                    };
                    let mut s = serde_json::to_string_pretty(&doc).expect("documents serialize");
                    s.push('\n');
                    s
                }
            };
            CliOutput {
                code: EXIT_OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Usage(m)) => CliOutput {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {m}\n"),
        },
        Err(Failure::Internal(m)) => CliOutput {
            code: EXIT_INTERNAL,
            stdout: String::new(),
            stderr: format!("internal error: {m}\n"),
        },
    }
}
