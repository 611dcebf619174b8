use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use hecke_star::crystal::CrystalGraph;
use hecke_star::grothendieck::{beta_schur_expand, grothendieck_poly, schur_coeffs_via_crystal, BetaSchurSeries};
use hecke_star::insertion::{hecke_insert, hecke_insert_traced, star_insert, star_insert_traced};
use hecke_star::local_crystal_n3::N3Crystal;
use hecke_star::residue::{res, res_inv, res_inv_shaped};
use hecke_star::uncrowding::uncrowd;
use hecke_star::verification::{check, Report, Suite};
use hecke_star::{
    factorization, star_crystal, svt_crystal, DecreasingFactorization, HeckeBiword, HeckeElement, HeckeWord,
    SetValuedTableau, SkewShape,
};

#[derive(Parser)]
#[command(name = "hecke-star", version, about = "Crystals on 0-Hecke factorizations and set-valued tableaux")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the decreasing factorizations of an element.
    Enumerate(EnumerateArgs),
    /// Hecke or ⋆-insertion of a biword or factorization.
    Insert(InsertArgs),
    /// Residue of a set-valued tableau, or its inverse.
    Residue(ResidueArgs),
    /// Uncrowd a set-valued tableau into (P, Q).
    Uncrowd(UncrowdArgs),
    /// The crystal component of a seed.
    Graph(GraphArgs),
    /// β-graded Schur expansion of a stable Grothendieck polynomial.
    Expand(ExpandArgs),
    /// Run an exhaustive check.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct Element {
    /// A Hecke word, e.g. 12132 or "1 2 13 2".
    #[arg(long, conflicts_with = "perm", required_unless_present = "perm")]
    word: Option<String>,
    /// A permutation in one-line notation, e.g. 2143.
    #[arg(long)]
    perm: Option<String>,
    /// Number of strands; inferred when omitted.
    #[arg(long)]
    n: Option<usize>,
}

impl Element {
    fn resolve(&self) -> Result<HeckeElement, CliError> {
        if let Some(w) = &self.word {
            return Ok(HeckeWord::parse(w, self.n)?.eval());
        }
        let s = self.perm.as_deref().unwrap_or_default().trim();
        let perm: Vec<usize> = if s.contains(|c: char| c.is_whitespace() || c == ',') {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse().map_err(|_| CliError::usage(format!("bad permutation entry {t:?}"))))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| CliError::usage(format!("bad permutation entry {c:?}"))))
                .collect::<Result<_, _>>()?
        };
        let mut e = HeckeElement::from_perm(perm)?;
        if let Some(n) = self.n {
            if n < e.n() {
                return Err(CliError::usage(format!("permutation needs at least {} strands", e.n())));
            }
            let mut p = e.perm();
            p.extend(p.len() + 1..=n);
            e = HeckeElement::from_perm(p)?;
        }
        Ok(e)
    }
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    element: Element,
    /// Number of factors.
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 0)]
    max_excess: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct InsertArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    /// Include the bumping path of every step.
    #[arg(long)]
    trace: bool,
    /// Number of strands; inferred when omitted.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct ResidueArgs {
    /// Factorization in, tableau out.
    #[arg(long)]
    invert: bool,
    /// Target shape λ/μ for --invert, e.g. 2,2/1.
    #[arg(long, requires = "invert")]
    shape: Option<String>,
    /// Number of factors; defaults to the largest entry.
    #[arg(long, conflicts_with = "invert")]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct UncrowdArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct GraphArgs {
    /// A factorization for star and n3, tableau JSON for svt. Read from input when omitted.
    #[arg(long)]
    seed: Option<String>,
    #[arg(long, value_enum, default_value_t = CrystalKind::Star)]
    crystal: CrystalKind,
    /// Largest entry for svt; defaults to the largest entry of the seed.
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Dot)]
    format: Format,
}

#[derive(Args)]
struct ExpandArgs {
    #[command(flatten)]
    element: Element,
    #[arg(long)]
    vars: usize,
    #[arg(long, default_value_t = 0)]
    max_beta: usize,
    #[arg(long, value_enum, default_value_t = Method::Enumerate)]
    method: Method,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// A suite name, or "all".
    #[arg(long)]
    theorem: String,
    /// Larger bounds.
    #[arg(long)]
    deep: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Hecke,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum CrystalKind {
    Star,
    Svt,
    N3,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Enumerate,
    Crystal,
    Both,
}

enum CliError {
    Usage(String),
    Internal(String),
    /// Already reported; exit nonzero without another message.
    Failed,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl From<hecke_star::Error> for CliError {
    fn from(e: hecke_star::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_io() {
            CliError::Internal(e.to_string())
        } else {
            CliError::Usage(format!("invalid JSON: {e}"))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Enumerate(a) => enumerate(a),
        Command::Insert(a) => insert(a),
        Command::Residue(a) => residue(a),
        Command::Uncrowd(a) => uncrowd_cmd(a),
        Command::Graph(a) => graph(a),
        Command::Expand(a) => expand(a),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(out) => {
            print!("{out}");
            if !out.is_empty() && !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Failed) => ExitCode::from(1),
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, CliError> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(s)
        }
    }
}

fn unsupported(format: Format, cmd: &str) -> CliError {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    CliError::usage(format!("{cmd} does not support --format {name}"))
}

fn pretty(v: &impl Serialize) -> Result<String, CliError> {
    serde_json::to_string_pretty(v).map_err(|e| CliError::Internal(e.to_string()))
}

/// Text `(21)(3)`, or JSON `{"n": .., "factors": ..}`.
fn parse_factorization(s: &str, n: Option<usize>) -> Result<DecreasingFactorization, CliError> {
    let s = s.trim();
    if s.starts_with('{') {
        let f: DecreasingFactorization = serde_json::from_str(s)?;
        return Ok(match n {
            Some(n) => f.with_n(n)?,
            None => f,
        });
    }
    Ok(DecreasingFactorization::parse(s, n)?)
}

fn enumerate(a: EnumerateArgs) -> Result<String, CliError> {
    let w = a.element.resolve()?;
    let all = factorization::enumerate(&w, a.m, a.max_excess);
    match a.format {
        Format::Text => Ok(all.iter().map(|f| format!("{f}\n")).collect()),
        Format::Json => pretty(&all),
        Format::Csv => {
            let mut s = String::from("factorization,weight,excess\n");
            for f in &all {
                let wt: Vec<String> = f.weight().iter().map(|k| k.to_string()).collect();
                s.push_str(&format!("{f},{},{}\n", wt.join(" "), f.excess()));
            }
            Ok(s)
        }
        Format::Dot => Err(unsupported(a.format, "enumerate")),
    }
}

fn insert(a: InsertArgs) -> Result<String, CliError> {
    let text = read_input(&a.input)?;
    let t = text.trim();
    let biword = if t.starts_with('(') || t.starts_with('{') {
        parse_factorization(t, a.n)?.to_biword()
    } else {
        HeckeBiword::parse(t, a.n)?
    };
    let (p, q, trace, qtext) = match a.algo {
        Algo::Hecke => {
            let r = if a.trace { hecke_insert_traced(&biword) } else { hecke_insert(&biword) };
            (r.p, serde_json::to_value(&r.q)?, r.trace, r.q.to_string())
        }
        Algo::Star => {
            let r = if a.trace { star_insert_traced(&biword)? } else { star_insert(&biword)? };
            (r.p, serde_json::to_value(&r.q)?, r.trace, r.q.to_string())
        }
    };
    match a.format {
        Format::Json => {
            let mut v = json!({ "P": p, "Q": q });
            if let Some(trace) = trace {
                v["trace"] = serde_json::to_value(trace)?;
            }
            pretty(&v)
        }
        Format::Text => {
            let mut s = format!("P:\n{p}\nQ:\n{qtext}\n");
            if let Some(trace) = trace {
                for (k, path) in trace.iter().enumerate() {
                    let cells: Vec<String> = path.iter().map(|(r, c)| format!("({r},{c})")).collect();
                    s.push_str(&format!("step {}: {}\n", k + 1, cells.join(" ")));
                }
            }
            Ok(s)
        }
        _ => Err(unsupported(a.format, "insert")),
    }
}

fn residue(a: ResidueArgs) -> Result<String, CliError> {
    let text = read_input(&a.input)?;
    if a.invert {
        let f = parse_factorization(&text, a.n)?;
        let t = match &a.shape {
            Some(shape) => res_inv_shaped(&f, &SkewShape::parse(shape)?)?,
            None => res_inv(&f)?,
        };
        return match a.format.unwrap_or(Format::Json) {
            Format::Json => pretty(&t),
            Format::Text => Ok(format!("{t}\n")),
            other => Err(unsupported(other, "residue --invert")),
        };
    }
    let t: SetValuedTableau = serde_json::from_str(&text)?;
    let m = a.m.unwrap_or(t.max_entry() as usize);
    let f = res(&t, m)?;
    let f = match a.n {
        Some(n) => f.with_n(n)?,
        None => f,
    };
    match a.format.unwrap_or(Format::Text) {
        Format::Text => Ok(format!("{f}\n")),
        Format::Json => pretty(&f),
        other => Err(unsupported(other, "residue")),
    }
}

fn uncrowd_cmd(a: UncrowdArgs) -> Result<String, CliError> {
    let t: SetValuedTableau = serde_json::from_str(&read_input(&a.input)?)?;
    let u = uncrowd(&t)?;
    match a.format {
        Format::Json => pretty(&json!({ "P": u.p, "Q": u.q })),
        Format::Text => Ok(format!("P:\n{}\nQ:\n{}\n", u.p, u.q)),
        _ => Err(unsupported(a.format, "uncrowd")),
    }
}

fn graph(a: GraphArgs) -> Result<String, CliError> {
    let seed = match &a.seed {
        Some(s) => s.clone(),
        None => read_input(&a.input)?,
    };
    match a.crystal {
        CrystalKind::Star => {
            let f = parse_factorization(&seed, a.n)?;
            render_graph(&star_crystal::crystal_graph(&f)?, a.format)
        }
        CrystalKind::N3 => {
            let f = parse_factorization(&seed, Some(a.n.unwrap_or(3)))?;
            if f.n() != 3 {
                return Err(CliError::usage("the n3 crystal lives on three strands"));
            }
            let g = CrystalGraph::component(&N3Crystal { m: f.m() }, &f);
            render_graph(&g, a.format)
        }
        CrystalKind::Svt => {
            let t: SetValuedTableau = serde_json::from_str(&seed)?;
            let m = a.m.unwrap_or(t.max_entry() as usize);
            if (t.max_entry() as usize) > m {
                return Err(CliError::usage(format!("seed has entries above m = {m}")));
            }
            render_graph(&svt_crystal::crystal_graph(&t, m), a.format)
        }
    }
}

fn render_graph<N>(g: &CrystalGraph<N>, format: Format) -> Result<String, CliError>
where
    N: std::fmt::Display + Serialize,
{
    match format {
        Format::Dot => Ok(g.to_dot(|x| x.to_string())),
        Format::Json => {
            let edges: Vec<Value> = g.edges().iter().map(|&(a, b, i)| json!({ "from": a, "to": b, "i": i })).collect();
            pretty(&json!({ "rank": g.rank(), "nodes": g.nodes(), "weights": g.weights(), "edges": edges }))
        }
        Format::Text => {
            let mut s = String::new();
            for (k, x) in g.nodes().iter().enumerate() {
                let label = x.to_string().replace('\n', " / ");
                s.push_str(&format!("{k}: {label}\n"));
            }
            for &(a, b, i) in g.edges() {
                s.push_str(&format!("{a} -{i}-> {b}\n"));
            }
            Ok(s)
        }
        Format::Csv => Err(unsupported(format, "graph")),
    }
}

fn expand(a: ExpandArgs) -> Result<String, CliError> {
    let w = a.element.resolve()?;
    let series = match a.method {
        Method::Enumerate => beta_schur_expand(&grothendieck_poly(&w, a.vars, a.max_beta), a.max_beta)?,
        Method::Crystal => schur_coeffs_via_crystal(&w, a.vars, a.max_beta)?,
        Method::Both => {
            let s = beta_schur_expand(&grothendieck_poly(&w, a.vars, a.max_beta), a.max_beta)?;
            let c = schur_coeffs_via_crystal(&w, a.vars, a.max_beta)?;
            if s != c {
                return Err(CliError::Internal(format!("pipelines disagree:\n  enumeration {s}\n  crystal     {c}")));
            }
            s
        }
    };
    render_series(&series, a.format)
}

fn render_series(s: &BetaSchurSeries, format: Format) -> Result<String, CliError> {
    let parts = |mu: &hecke_star::Partition| mu.parts().iter().map(|p| p.to_string()).collect::<Vec<_>>();
    match format {
        Format::Text => {
            let mut out = format!("{:>4}  {:<12} {:>12}\n", "beta", "partition", "coefficient");
            for (d, mu, c) in s.entries() {
                out.push_str(&format!("{d:>4}  {:<12} {c:>12}\n", parts(&mu).join(",")));
            }
            out.push_str(&format!("# {s}\n"));
            Ok(out)
        }
        Format::Csv => {
            let mut out = String::from("beta,partition,coefficient\n");
            for (d, mu, c) in s.entries() {
                out.push_str(&format!("{d},{},{c}\n", parts(&mu).join(" ")));
            }
            Ok(out)
        }
        Format::Json => {
            let terms: Vec<Value> = s
                .entries()
                .into_iter()
                .map(|(d, mu, c)| json!({ "beta": d, "partition": mu.parts(), "coefficient": c }))
                .collect();
            pretty(&json!({ "vars": s.vars, "max_beta": s.max_beta, "terms": terms }))
        }
        Format::Dot => Err(unsupported(format, "expand")),
    }
}

fn verify(a: VerifyArgs) -> Result<String, CliError> {
    let suites: Vec<Suite> = if a.theorem == "all" {
        Suite::ALL.to_vec()
    } else {
        vec![a.theorem.parse().map_err(|_| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::usage(format!("unknown suite {:?}; expected all or one of: {}", a.theorem, names.join(", ")))
        })?]
    };
    let reports: Vec<Report> = suites
        .into_iter()
        .map(|s| check(s, &if a.deep { s.deep_bounds() } else { s.default_bounds() }))
        .collect();
    let out = if a.json {
        let mut s = pretty(&reports)?;
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        for r in &reports {
            s.push_str(&format!("{r}\n"));
            for w in &r.witnesses {
                s.push_str(&format!("  witness: {w}\n"));
            }
        }
        s
    };
    if reports.iter().all(Report::passed) {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Failed)
    }
}
