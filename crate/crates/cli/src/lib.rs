//! Command-line front end for `ramond-core`.
//!
//! [`run`] takes an argument vector and returns the exit status with the
//! rendered output, so the binary and the tests share one code path.
//! Exit status is 0 on success, 1 on a mathematical error (a hypothesis
//! violation, an out-of-domain generator, an exceeded weight budget, ...)
//! and 2 on a usage error, including malformed expressions.

pub mod modspec;
pub mod parse;
pub mod render;

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ramond_core::base::{a_phi_submodule_witness, phi_validate, validate_module, UClosure, WhittakerData};
use ramond_core::induced::{
    effective_level, reduce_to_base, run_summary, simplicity_certificate, singular_vectors, CertificateOptions,
    InducedModule,
};
use ramond_core::pbw::super_commutator;
use ramond_core::rational::{parse_rational, to_fraction_string, to_short_string, Q};
use ramond_core::{Error, Result};

pub use modspec::ModuleSpec;
pub use parse::{parse_expression, parse_vector};
pub use render::Format;

fn rational_arg(s: &str) -> std::result::Result<Q, String> {
    parse_rational(s).map_err(|_| format!("`{s}` is not a rational of the form p or p/q"))
}

#[derive(Debug, Parser)]
#[command(name = "ramond", version, about = "Exact computations in the Ramond algebra and its induced modules")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for randomized trials.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Largest weight a vector of an induced module may reach.
    #[arg(long, default_value_t = 8, global = true)]
    pub max_weight: u64,
    /// Module strings, one per line, used by commands taking `--module`.
    #[arg(long, global = true)]
    pub spec_file: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Normal-order an expression.
    Nf {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Super-commutator of two homogeneous expressions.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
    /// Act with an expression on a vector of an induced module.
    Act {
        #[arg(long)]
        module: Option<String>,
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Drive a vector of an induced module down to the inducing module.
    Reduce {
        #[arg(long)]
        module: Option<String>,
        #[arg(allow_hyphen_values = true)]
        vector: String,
        /// Defaults to the effective level of the inducing module.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Singular vectors of a Verma module at one level.
    VermaSingular {
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        lambda: Q,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: Q,
        #[arg(long)]
        level: u32,
    },
    /// Simplicity check for the Whittaker module of order t.
    WhittakerCheck {
        #[arg(long)]
        t: u32,
        /// `L<k>=<q>` entries separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long, value_parser = rational_arg, allow_hyphen_values = true)]
        c: Q,
        #[arg(long, default_value_t = 3)]
        max_level: u32,
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Weight-space dimensions of an induced module.
    Dims {
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_level: u32,
    },
    /// Check the module axioms of an inducing module on small generators.
    Validate {
        #[arg(long)]
        module: Option<String>,
        #[arg(long, default_value_t = 4)]
        index_bound: i64,
        #[arg(long, default_value_t = 8)]
        basis_count: usize,
    },
}

/// A command result in both renderings.
struct Out {
    text: String,
    json: Value,
}

impl Out {
    fn render(self, format: Format) -> String {
        match format {
            Format::Text => self.text,
            Format::Json => self.json.to_string(),
        }
    }
}

fn nf(expr: &str) -> Result<Out> {
    let e = parse_expression(expr)?;
    Ok(Out {
        text: e.to_string(),
        json: render::element_json(&e),
    })
}

fn bracket(left: &str, right: &str) -> Result<Out> {
    let e = super_commutator(&parse_expression(left)?, &parse_expression(right)?)?;
    Ok(Out {
        text: e.to_string(),
        json: render::element_json(&e),
    })
}

fn act(m: &InducedModule, expr: &str, vector: &str) -> Result<Out> {
    let u = parse_expression(expr)?;
    let v = parse_vector(vector, m)?;
    let w = m.act(&u, &v)?;
    Ok(Out {
        text: m.display_vector(&w),
        json: render::vector_json(m, &w),
    })
}

fn reduce(m: &InducedModule, vector: &str, t: Option<u32>) -> Result<Out> {
    let v = parse_vector(vector, m)?;
    let t = match t {
        Some(t) => t,
        None => effective_level(m.base().as_ref(), 8)?,
    };
    let r = reduce_to_base(m, &v, t)?;
    Ok(Out {
        text: render::reduction_text(m, &r),
        json: render::reduction_json(m, &r),
    })
}

fn verma_singular(lambda: &Q, c: &Q, level: u32, max_weight: u64) -> Result<Out> {
    let vectors = singular_vectors(lambda, c, level)?;
    let m = InducedModule::verma(lambda, c, max_weight.max(level as u64))?;
    let mut lines = vec![format!(
        "M(lambda={}, c={}) level {level}: {} singular vector{}",
        to_short_string(lambda),
        to_short_string(c),
        vectors.len(),
        if vectors.len() == 1 { "" } else { "s" }
    )];
    lines.extend(vectors.iter().map(|v| m.display_vector(v)));
    Ok(Out {
        text: lines.join("\n"),
        json: json!({
            "lambda": to_fraction_string(lambda),
            "c": to_fraction_string(c),
            "level": level,
            "vectors": vectors.iter().map(|v| render::vector_json(&m, v)).collect::<Vec<_>>(),
        }),
    })
}

fn whittaker_check(d: &WhittakerData, opts: &CertificateOptions, max_weight: u64) -> Result<Out> {
    phi_validate(d)?;
    let mut lines = vec![format!("whittaker {d}")];
    let mut js = json!({ "data": d.to_string() });
    let verdict = match a_phi_submodule_witness(d)? {
        UClosure::Closed { eigenvalues } => {
            let eig: Vec<String> = eigenvalues
                .iter()
                .map(|(g, s)| format!("{g} u = {} u", to_short_string(s)))
                .collect();
            lines.push(format!("A_phi: Cu is a submodule ({})", eig.join(", ")));
            js["aPhi"] = json!({ "closed": true, "eigenvalues": eig });
            js["certified"] = json!(false);
            "not simple: submodule spanned by u".to_string()
        }
        UClosure::NotClosed { generator, image } => {
            lines.push(format!("A_phi: Cu is not a submodule ({generator} u = {image})"));
            js["aPhi"] = json!({ "closed": false, "generator": generator.to_string(), "image": image });
            let m = InducedModule::whittaker(d, max_weight.max(opts.max_level as u64))?;
            let report = simplicity_certificate(&m, opts)?;
            let l = &report.vanishing;
            lines.push(format!("effective t: {} (L_{} {})", l.t, l.t, l.injectivity));
            let summary = run_summary(&report);
            let counts: Vec<String> = summary.iter().map(|(k, n)| format!("{k} {n}")).collect();
            if !counts.is_empty() {
                lines.push(format!("reductions: {}", counts.join(", ")));
            }
            js["effectiveT"] = json!(l.t);
            js["injectivity"] = json!(l.injectivity.to_string());
            js["runs"] = json!(summary);
            js["certified"] = json!(report.certified());
            report.verdict.to_string()
        }
    };
    lines.push(format!("verdict: {verdict}"));
    js["verdict"] = json!(verdict);
    Ok(Out {
        text: lines.join("\n"),
        json: js,
    })
}

fn dims(m: &InducedModule, max_level: u32) -> Result<Out> {
    let dims = (0..=max_level)
        .map(|n| m.level_dimension(n))
        .collect::<Result<Vec<_>>>()?;
    let lines: Vec<String> = dims.iter().enumerate().map(|(n, d)| format!("level {n}: {d}")).collect();
    Ok(Out {
        text: lines.join("\n"),
        json: json!({ "module": m.label(), "dims": dims }),
    })
}

fn validate(m: &InducedModule, index_bound: i64, basis_count: usize) -> Result<Out> {
    let report = validate_module(m.base().as_ref(), index_bound, basis_count);
    let mut lines = vec![format!(
        "{}: {} checks, {} violations",
        report.module,
        report.checked,
        report.violations.len()
    )];
    lines.extend(report.violations.iter().map(|v| v.to_string()));
    Ok(Out {
        text: lines.join("\n"),
        json: json!({
            "module": report.module,
            "checked": report.checked,
            "passed": report.passed(),
            "violations": report.violations.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        }),
    })
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. } => 2,
        _ => 1,
    }
}

/// Module strings from `--module` or, failing that, from `--spec-file`.
fn module_strings(module: &Option<String>, spec_file: &Option<PathBuf>) -> std::result::Result<Vec<String>, String> {
    if let Some(m) = module {
        return Ok(vec![m.clone()]);
    }
    let Some(path) = spec_file else {
        return Err("error: this command needs --module or --spec-file".into());
    };
    let text = std::fs::read_to_string(path).map_err(|e| format!("error: cannot read {}: {e}", path.display()))?;
    let lines: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect();
    if lines.is_empty() {
        return Err(format!("error: {} holds no module strings", path.display()));
    }
    Ok(lines)
}

fn run_modules(cli: &Cli, module: &Option<String>, f: impl Fn(&InducedModule) -> Result<Out>) -> (i32, String) {
    let specs = match module_strings(module, &cli.spec_file) {
        Ok(s) => s,
        Err(msg) => return (2, msg),
    };
    let one = |s: &str| -> Result<Out> { f(&ModuleSpec::parse(s)?.induced(cli.max_weight)?) };
    if specs.len() == 1 && module.is_some() {
        return finish(one(&specs[0]), cli.format);
    }
    let mut code = 0;
    let mut texts = Vec::new();
    let mut items = Vec::new();
    for s in &specs {
        match one(s) {
            Ok(out) => {
                texts.push(format!("# {s}\n{}", out.text));
                items.push(json!({ "module": s, "result": out.json }));
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                texts.push(format!("# {s}\n{}", render::error(&e, Format::Text)));
                items.push(json!({ "module": s, "result": render::error_json(&e) }));
            }
        }
    }
    let out = match cli.format {
        Format::Text => texts.join("\n"),
        Format::Json => Value::Array(items).to_string(),
    };
    (code, out)
}

fn finish(result: Result<Out>, format: Format) -> (i32, String) {
    match result {
        Ok(out) => (0, out.render(format)),
        Err(e) => (exit_code(&e), render::error(&e, format)),
    }
}

/// Parses `argv` (program name first) and runs the command.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string().trim_end().to_string());
        }
    };
    let format = cli.format;
    match &cli.command {
        Command::Nf { expr } => finish(nf(expr), format),
        Command::Bracket { left, right } => finish(bracket(left, right), format),
        Command::Act { module, expr, vector } => run_modules(&cli, module, |m| act(m, expr, vector)),
        Command::Reduce { module, vector, t } => run_modules(&cli, module, |m| reduce(m, vector, *t)),
        Command::VermaSingular { lambda, c, level } => {
            finish(verma_singular(lambda, c, *level, cli.max_weight), format)
        }
        Command::WhittakerCheck {
            t,
            phi,
            c,
            max_level,
            trials,
        } => {
            let result = modspec::parse_phi(phi).and_then(|values| {
                let d = WhittakerData::new(*t, c.clone(), values);
                let opts = CertificateOptions {
                    max_level: *max_level,
                    trials: *trials,
                    seed: cli.seed,
                    ..CertificateOptions::default()
                };
                whittaker_check(&d, &opts, cli.max_weight)
            });
            finish(result, format)
        }
        Command::Dims { module, max_level } => run_modules(&cli, module, |m| dims(m, *max_level)),
        Command::Validate {
            module,
            index_bound,
            basis_count,
        } => run_modules(&cli, module, |m| validate(m, *index_bound, *basis_count)),
    }
}
