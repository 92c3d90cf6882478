//! Argument parsing and the verbs. Exit codes: 0 when the property holds,
//! 1 when it does not, 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use fomember_core::catalog::{check_membership, parse_variety, CatalogError, MembershipWitness};
use fomember_core::ea::{brute_force_ea, is_in_ea_with, EdgeOrder};
use fomember_core::gen::{
    dfa_transition_semigroup, graham_semigroup, random_transformation_semigroup, UndirectedGraph,
    DEFAULT_SIZE_CAP,
};
use fomember_core::logic::{Evaluator, FoError};
use fomember_core::omega::{find_counterexample, parse_identity, OmegaError};
use fomember_core::{parse_formula, Assignment, OmegaIdentity, PartialGroupoid, Semigroup};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::formats::{self, FormatError, TableFormat};
use crate::json;

pub const MEMBER: i32 = 0;
pub const NOT_MEMBER: i32 = 1;
pub const USAGE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Formula(#[from] FoError),
    #[error(transparent)]
    Identity(#[from] OmegaError),
    #[error("{0}")]
    Usage(String),
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
}

#[derive(Parser, Debug)]
#[command(name = "fomember", version, about = "Decide membership of finite semigroups in FO-definable classes")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct TableInput {
    /// Table file (.mt text or .mtb packed).
    table: PathBuf,
    /// Override the format implied by the extension.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args, Debug)]
struct TableOutput {
    /// Write the table here instead of printing it.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    output_format: Option<FormatArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Text,
    Packed,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => TableFormat::Text,
            FormatArg::Packed => TableFormat::Packed,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EaMethod {
    Cycles,
    BruteForce,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ForestOrder {
    Lexicographic,
    Reversed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a table is a semigroup.
    Validate(TableInput),
    /// Summary and egg-box diagram of the J-classes.
    Info(TableInput),
    /// Membership in a variety expression such as A, D(A) or K@D(A).
    Classify {
        #[arg(long, required = true)]
        variety: Vec<String>,
        #[command(flatten)]
        input: TableInput,
    },
    /// Check omega-identities, given inline or in a file.
    CheckIdentity {
        /// `[IDENTITY] TABLE`; the identity may come from --file instead.
        #[arg(value_name = "ARGS", num_args = 1..=2, required = true)]
        args: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Evaluate a first-order formula.
    Eval {
        /// `[FORMULA] TABLE`; the formula may come from --file instead.
        #[arg(value_name = "ARGS", num_args = 1..=2, required = true)]
        args: Vec<String>,
        #[arg(long)]
        file: Option<PathBuf>,
        /// Value of a free variable, as name=element.
        #[arg(long = "assign", value_parser = parse_binding)]
        assign: Vec<(String, usize)>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
    /// Decide EA with a per-J-class trace.
    Ea {
        #[arg(long, value_enum, default_value = "cycles")]
        method: EaMethod,
        #[arg(long, value_enum, default_value = "lexicographic")]
        order: ForestOrder,
        #[command(flatten)]
        input: TableInput,
    },
    /// Build the Rees matrix semigroup of a graph, from a file or at random.
    GenGraham {
        #[arg(long, conflicts_with_all = ["vertices", "p", "seed"])]
        graph: Option<PathBuf>,
        #[arg(long, required_unless_present = "graph")]
        vertices: Option<usize>,
        #[arg(long, default_value_t = 0.3)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also write the graph that was used.
        #[arg(long)]
        save_graph: Option<PathBuf>,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Closure of random self-maps of a k-point set.
    GenRandom {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        generators: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Transition semigroup of a DFA file.
    FromDfa {
        dfa: PathBuf,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
        #[command(flatten)]
        output: TableOutput,
    },
    /// Classify every .mt and .mtb file of a directory.
    CorpusRun {
        dir: PathBuf,
        #[arg(long, required = true)]
        variety: Vec<String>,
    },
}

fn parse_binding(s: &str) -> Result<(String, usize), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=element, got '{s}'"))?;
    let value = value.trim().parse().map_err(|_| format!("'{value}' is not an element"))?;
    Ok((name.trim().to_string(), value))
}

struct Ctx<'a> {
    json: bool,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: &Value, text: &str) -> Result<(), CliError> {
        if self.json {
            writeln!(self.out, "{value}")?;
        } else {
            self.out.write_all(text.as_bytes())?;
        }
        Ok(())
    }
}

fn verdict(holds: bool) -> i32 {
    if holds {
        MEMBER
    } else {
        NOT_MEMBER
    }
}

fn load(input: &TableInput) -> Result<PartialGroupoid, CliError> {
    Ok(formats::read_table(&input.table, input.format.map(Into::into))?)
}

fn require_semigroup(g: PartialGroupoid) -> Result<Semigroup, CliError> {
    match g.semigroup_violation() {
        Some(v) => Err(CliError::Usage(format!("not a semigroup: {v}"))),
        None => Ok(Semigroup::new(g).expect("checked")),
    }
}

/// Parses `args` (including the program name) and runs the verb.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { MEMBER };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut ctx = Ctx { json: cli.json, out };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            USAGE
        }
    }
}

fn dispatch(command: Command, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    match command {
        Command::Validate(input) => validate(&input, ctx),
        Command::Info(input) => info(&input, ctx),
        Command::Classify { variety, input } => classify(&variety, &input, ctx),
        Command::CheckIdentity { args, file, format } => {
            let (src, input) = source_and_table(args, file, format, "identity")?;
            check_identity(src, &input, ctx)
        }
        Command::Eval { args, file, assign, format } => {
            let (src, input) = source_and_table(args, file, format, "formula")?;
            eval(src, assign, &input, ctx)
        }
        Command::Ea { method, order, input } => ea(method, order, &input, ctx),
        Command::GenGraham { graph, vertices, p, seed, save_graph, output } => {
            gen_graham(graph, vertices, p, seed, save_graph, &output, ctx)
        }
        Command::GenRandom { points, generators, seed, cap, output } => {
            let t = random_transformation_semigroup(points, generators, seed, cap)
                .map_err(FormatError::from)?;
            let summary = json!({ "points": points, "generators": generators, "seed": seed });
            emit_table(&t.groupoid, summary, &output, ctx)
        }
        Command::FromDfa { dfa, cap, output } => {
            let d = formats::read_dfa(&dfa)?;
            let s = dfa_transition_semigroup(&d, cap).map_err(FormatError::from)?;
            let letters: serde_json::Map<String, Value> =
                s.letters.iter().map(|(c, e)| (c.to_string(), json!(e))).collect();
            emit_table(&s.semigroup.groupoid, json!({ "letters": letters }), &output, ctx)
        }
        Command::CorpusRun { dir, variety } => corpus_run(&dir, &variety, ctx),
    }
}

fn validate(input: &TableInput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let g = load(input)?;
    let violation = g.semigroup_violation();
    let value = json!({
        "order": g.order(),
        "total": g.is_total(),
        "semigroup": violation.is_none(),
        "violation": violation.map(|v| v.to_string()),
    });
    let text = match violation {
        None => format!("semigroup of order {}\n", g.order()),
        Some(v) => format!("not a semigroup: {v}\n"),
    };
    ctx.emit(&value, &text)?;
    Ok(verdict(violation.is_none()))
}

fn info(input: &TableInput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let g = load(input)?;
    let idempotents = g.idempotents();
    let mut value = json!({
        "order": g.order(),
        "total": g.is_total(),
        "associative": g.is_associative(),
        "idempotents": idempotents,
    });
    let mut text = format!(
        "order {}, {}, {}\nidempotents: {}\n",
        g.order(),
        if g.is_total() { "total" } else { "partial" },
        if g.is_associative() { "associative" } else { "not associative" },
        idempotents.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "),
    );
    if let Ok(s) = Semigroup::new(g) {
        let boxes = json::egg_box(&s);
        value["j_classes"] = boxes.iter().map(|b| b.to_json()).collect();
        for b in &boxes {
            let members: Vec<String> = b.elements.iter().map(ToString::to_string).collect();
            text.push_str(&format!(
                "\nJ-class {{{}}}{}\n",
                members.join(", "),
                if b.regular { " regular" } else { "" }
            ));
            text.push_str(&b.render(&s));
        }
    }
    ctx.emit(&value, &text)?;
    Ok(MEMBER)
}

fn classify(varieties: &[String], input: &TableInput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let g = load(input)?;
    let mut all = true;
    for expr in varieties {
        let spec = parse_variety(expr)?;
        let m = check_membership(&g, &spec)?;
        all &= m.member;
        let text = match &m.witness {
            None if m.member => format!("{}: member\n", spec.name),
            None => format!("{}: not a member\n", spec.name),
            Some(w) => format!("{}: not a member; {}\n", spec.name, witness_text(w)),
        };
        ctx.emit(&json::membership(&spec.name, &m), &text)?;
    }
    Ok(verdict(all))
}

/// Where the identity or formula came from.
enum Source {
    Inline(String),
    File(PathBuf),
}

/// Splits `[EXPR] TABLE` positionals, with `--file` standing in for `EXPR`.
fn source_and_table(
    mut args: Vec<String>,
    file: Option<PathBuf>,
    format: Option<FormatArg>,
    what: &str,
) -> Result<(Source, TableInput), CliError> {
    let table = PathBuf::from(args.pop().expect("clap requires one"));
    let src = match (args.pop(), file) {
        (Some(_), Some(_)) => return Err(CliError::Usage(format!("give the {what} inline or with --file, not both"))),
        (Some(inline), None) => Source::Inline(inline),
        (None, Some(path)) => Source::File(path),
        (None, None) => return Err(CliError::Usage(format!("missing {what}"))),
    };
    Ok((src, TableInput { table, format }))
}

/// Long derived sentences are cut down for text output.
fn witness_text(w: &MembershipWitness) -> String {
    const LIMIT: usize = 160;
    match w {
        MembershipWitness::Sentence(s) if s.conjunct.to_string().chars().count() > LIMIT => {
            let head: String = s.conjunct.to_string().chars().take(LIMIT).collect();
            let at: Vec<String> = s.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let mut out = format!("fails: {head} ...");
            if !at.is_empty() {
                out.push_str(&format!(" at {}", at.join(", ")));
            }
            out
        }
        _ => w.to_string(),
    }
}

fn check_identity(src: Source, input: &TableInput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let ids: Vec<OmegaIdentity> = match src {
        Source::Inline(src) => vec![parse_identity(&src)?],
        Source::File(path) => formats::read_identities(&path)?,
    };
    let s = require_semigroup(load(input)?)?;
    let mut all = true;
    for id in &ids {
        let failure = find_counterexample(&s, id);
        all &= failure.is_none();
        let value = json!({
            "identity": id.to_string(),
            "holds": failure.is_none(),
            "counterexample": failure.as_ref().map(json::assignment),
        });
        let text = match &failure {
            None => format!("{id}: holds\n"),
            Some(a) => {
                let at: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
                format!("{id}: fails at {}\n", at.join(", "))
            }
        };
        ctx.emit(&value, &text)?;
    }
    Ok(verdict(all))
}

fn eval(src: Source, assign: Vec<(String, usize)>, input: &TableInput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let src = match src {
        Source::Inline(src) => src,
        Source::File(path) => fs::read_to_string(&path)
            .map_err(|source| FormatError::Io { path: path.display().to_string(), source })?,
    };
    let f = parse_formula(src.trim())?;
    let g = load(input)?;
    let a: Assignment = assign.into_iter().collect();
    let mut ev = Evaluator::new(&g);
    let holds = ev.evaluate(&f, &a)?;
    let probes = ev.probes();
    let witness = if !holds && f.is_sentence() { ev.counterexample(&f)? } else { None };
    let value = json!({
        "formula": f.to_string(),
        "holds": holds,
        "probes": probes,
        "witness": witness.as_ref().map(|w| json!({
            "conjunct": w.conjunct.to_string(),
            "assignment": json::assignment(&w.assignment),
        })),
    });
    let mut text = format!("{}\n", if holds { "true" } else { "false" });
    if let Some(w) = &witness {
        let at: Vec<String> = w.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
        text.push_str(&format!("fails: {}", w.conjunct));
        if !at.is_empty() {
            text.push_str(&format!(" at {}", at.join(", ")));
        }
        text.push('\n');
    }
    ctx.emit(&value, &text)?;
    Ok(verdict(holds))
}

fn ea(method: EaMethod, order: ForestOrder, input: &TableInput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let s = require_semigroup(load(input)?)?;
    match method {
        EaMethod::BruteForce => {
            let r = brute_force_ea(&s);
            let text = match r.witness {
                None => format!("in EA: <E> has {} elements and is aperiodic\n", r.generated),
                Some((x, y)) => format!("not in EA: {x} H {y} in <E> ({} elements)\n", r.generated),
            };
            ctx.emit(&json::brute_force(&r), &text)?;
            Ok(verdict(r.member))
        }
        EaMethod::Cycles => {
            let order = match order {
                ForestOrder::Lexicographic => EdgeOrder::Lexicographic,
                ForestOrder::Reversed => EdgeOrder::Reversed,
            };
            let report = is_in_ea_with(&s, &order);
            // one JSON record per regular J-class, then the verdict
            for c in &report.classes {
                let text = format!(
                    "J-class of {}: |A|={} |B|={} |G|={} edges={} bridges={} {}\n",
                    c.class_min_id,
                    c.a_size,
                    c.b_size,
                    c.g_size,
                    c.edges,
                    c.bridges,
                    if c.verdict { "ok".to_string() } else { c.describe() }
                );
                ctx.emit(&json::j_class(c), &text)?;
            }
            let text = format!("{}\n", if report.member { "in EA" } else { "not in EA" });
            ctx.emit(&json!({ "member": report.member }), &text)?;
            Ok(verdict(report.member))
        }
    }
}

fn emit_table(g: &PartialGroupoid, mut summary: Value, output: &TableOutput, ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    summary["order"] = json!(g.order());
    match &output.output {
        Some(path) => {
            formats::write_table(path, g, output.output_format.map(Into::into))?;
            summary["output"] = json!(path.display().to_string());
            let text = format!("wrote table of order {} to {}\n", g.order(), path.display());
            ctx.emit(&summary, &text)?;
        }
        None => {
            if matches!(output.output_format, Some(FormatArg::Packed)) {
                return Err(CliError::Usage("packed output needs --output".into()));
            }
            summary["table"] = json::table(g)["table"].clone();
            ctx.emit(&summary, &formats::to_text(g))?;
        }
    }
    Ok(MEMBER)
}

fn gen_graham(
    graph: Option<PathBuf>,
    vertices: Option<usize>,
    p: f64,
    seed: u64,
    save_graph: Option<PathBuf>,
    output: &TableOutput,
    ctx: &mut Ctx<'_>,
) -> Result<i32, CliError> {
    let graph = match (graph, vertices) {
        (Some(path), _) => formats::read_graph(&path)?,
        (None, Some(v)) => {
            UndirectedGraph::random(v, p, &mut ChaCha8Rng::seed_from_u64(seed)).map_err(FormatError::from)?
        }
        (None, None) => unreachable!("clap requires one"),
    };
    if let Some(path) = save_graph {
        write_file(&path, formats::graph_to_text(&graph).as_bytes())?;
    }
    let g = graham_semigroup(&graph);
    let summary = json!({
        "vertices": graph.vertex_count(),
        "s": graph.s(),
        "t": graph.t(),
        "edges": graph.edges().map(|(x, y)| vec![x, y]).collect::<Vec<_>>(),
        "s_reaches_t": graph.s_reaches_t(),
    });
    emit_table(&g.groupoid, summary, output, ctx)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes)
        .map_err(|source| FormatError::Io { path: path.display().to_string(), source }.into())
}

fn corpus_run(dir: &Path, varieties: &[String], ctx: &mut Ctx<'_>) -> Result<i32, CliError> {
    let specs = varieties.iter().map(|v| parse_variety(v)).collect::<Result<Vec<_>, _>>()?;
    let entries = fs::read_dir(dir)
        .map_err(|source| FormatError::Io { path: dir.display().to_string(), source })?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("mt" | "mtb")))
        .collect();
    files.sort();
    let mut failed = false;
    for path in files {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let result = formats::read_table(&path, None).map_err(CliError::from).and_then(|g| {
            let verdicts = specs
                .iter()
                .map(|spec| Ok((spec.name.clone(), check_membership(&g, spec)?.member)))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok((g.order(), verdicts))
        });
        match result {
            Ok((order, verdicts)) => {
                let map: serde_json::Map<String, Value> =
                    verdicts.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                let cells: Vec<String> =
                    verdicts.iter().map(|(k, v)| format!("{k}={}", if *v { "yes" } else { "no" })).collect();
                let text = format!("{name}\t{order}\t{}\n", cells.join(" "));
                ctx.emit(&json!({ "file": name, "order": order, "members": map }), &text)?;
            }
            Err(e) => {
                failed = true;
                ctx.emit(&json!({ "file": name, "error": e.to_string() }), &format!("{name}\terror: {e}\n"))?;
            }
        }
    }
    Ok(if failed { USAGE } else { MEMBER })
}
