use std::fmt::Write as _;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use zz_core::bijection::KekuleBijection;
use zz_core::catalog::catalog_sequences;
use zz_core::extensions::{extension_records, word_string};
use zz_core::oracle::{run_oracle, DEFAULT_MAX_VERTICES};
use zz_core::order_poly::{closed_form, zz_polynomial, DEFAULT_SUBSET_GUARD};
use zz_core::poset::{build_poset, natural_labeling};
use zz_core::strip::{interface_profile, parse_shapes, parse_strip};
use zz_core::{ClosedForm, Dib, Error, Shape, StripSpec};

#[derive(Parser)]
#[command(name = "zz", version, about = "ZZ polynomials of regular benzenoid strips")]
struct Cli {
    #[command(subcommand)]
    mode: Option<Mode>,

    #[command(flatten)]
    opts: Options,

    /// Same as the `extensions` subcommand
    #[arg(long, global = true)]
    list_extensions: bool,
    /// Same as the `kekule` subcommand
    #[arg(long, global = true)]
    list_kekule: bool,
    /// Same as the `clar` subcommand
    #[arg(long, global = true)]
    list_clar: bool,
    /// Same as the `oracle` subcommand
    #[arg(long, global = true)]
    oracle: bool,
}

#[derive(Args)]
struct Options {
    /// Fragment shapes, e.g. WWRNN
    #[arg(long, global = true)]
    shapes: Option<String>,
    /// Strip length n
    #[arg(long, global = true)]
    length: Option<usize>,
    /// Inclusive range of lengths, e.g. 1..8
    #[arg(long = "n-range", global = true, value_parser = parse_range)]
    n_range: Option<(usize, usize)>,
    /// Read the strip from a file holding JSON or text such as `WRN 2` or `M 2 2`
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Maximum number of tiers for `catalog`
    #[arg(long, global = true)]
    tiers: Option<usize>,
    /// Vertex limit for the brute-force oracle
    #[arg(long = "max-vertices", global = true, default_value_t = DEFAULT_MAX_VERTICES)]
    max_vertices: usize,
    /// Keep mirror images in `catalog`
    #[arg(long = "no-dedup", global = true)]
    no_dedup: bool,
    /// Largest poset for which all subsets are enumerated
    #[arg(long = "guard-p", global = true, env = "ZZ_GUARD_P", default_value_t = DEFAULT_SUBSET_GUARD)]
    guard_p: usize,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    /// Interface sizes and orders, validity
    Profile,
    /// DIB poset: elements, labels and cover relations
    Poset,
    /// Linear extensions with descents and fixed labels
    Extensions,
    /// ZZ polynomial
    Zz,
    /// ZZ polynomial with n left symbolic
    ClosedForm,
    /// Every Kekulé structure as (A, mu) and its double interface bonds
    Kekule,
    /// Every Clar cover
    Clar,
    /// Compare the poset engine with brute force on the explicit graph
    Oracle,
    /// Closed forms of all Kekuléan strips up to --tiers tiers
    Catalog,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Format {
    Text,
    Json,
    Latex,
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once("..").ok_or("expected A..B")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: usize = b.trim().trim_start_matches('=').parse().map_err(|e| format!("{e}"))?;
    if a == 0 || a > b {
        return Err(format!("empty or invalid range {a}..{b}"));
    }
    Ok((a, b))
}

enum Failure {
    Usage(String),
    Guard(String),
    Mismatch(String),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::GuardExceeded { .. } => Failure::Guard(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

type Run = Result<(), Failure>;

struct Ctx<'a> {
    opts: &'a Options,
    out: BufWriter<io::StdoutLock<'static>>,
}

impl Ctx<'_> {
    /// Shapes and optional length from --input or --shapes.
    fn source(&self) -> Result<(Vec<Shape>, Option<usize>), Failure> {
        if let Some(path) = &self.opts.input {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            let spec = if text.trim_start().starts_with('{') {
                StripSpec::from_json(&text)?
            } else {
                parse_strip(text.trim())?
            };
            return Ok((spec.shapes, Some(spec.n)));
        }
        match &self.opts.shapes {
            Some(letters) => Ok((parse_shapes(letters)?, None)),
            None => Err(Failure::Usage("--shapes or --input is required".into())),
        }
    }

    fn lengths(&self, from_file: Option<usize>) -> Result<Vec<usize>, Failure> {
        if let Some((a, b)) = self.opts.n_range {
            return Ok((a..=b).collect());
        }
        match self.opts.length.or(from_file) {
            Some(n) => Ok(vec![n]),
            None => Err(Failure::Usage("--length or --n-range is required".into())),
        }
    }

    /// Every requested strip, validated.
    fn strips(&self) -> Result<Vec<StripSpec>, Failure> {
        let (shapes, n) = self.source()?;
        self.lengths(n)?
            .into_iter()
            .map(|n| {
                let spec = StripSpec::new(shapes.clone(), n)?;
                let report = spec.validate();
                if !report.is_valid() {
                    return Err(Failure::Usage(format!("invalid strip {spec}: {report}")));
                }
                Ok(spec)
            })
            .collect()
    }

    fn multiple(&self) -> bool {
        self.opts.n_range.is_some_and(|(a, b)| a < b)
    }

    fn line(&mut self, s: impl AsRef<str>) -> Run {
        writeln!(self.out, "{}", s.as_ref())?;
        Ok(())
    }
}

fn warn_if_non_kekulean(spec: &StripSpec) -> bool {
    match spec.validate().kekulean_error() {
        Some(e) => {
            eprintln!("warning: {e}");
            true
        }
        None => false,
    }
}

fn check_subset_guard(ctx: &Ctx, p: usize) -> Run {
    let limit = ctx.opts.guard_p.min(63);
    if p > limit {
        return Err(Error::GuardExceeded { what: "subset enumeration", limit, actual: p }.into());
    }
    Ok(())
}

fn dib_list(dibs: &[Dib]) -> String {
    dibs.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" ")
}

fn profile(ctx: &mut Ctx) -> Run {
    let (shapes, n) = ctx.source()?;
    for n in ctx.lengths(n)? {
        let spec = StripSpec::new(shapes.clone(), n)?;
        let prof = interface_profile(&spec);
        let report = spec.validate();
        match ctx.opts.format {
            Format::Json => {
                let v = json!({
                    "shapes": spec.shapes,
                    "n": n,
                    "sizes": prof.sizes,
                    "orders": prof.orders,
                    "valid": report.is_valid(),
                    "kekulean": report.is_kekulean,
                    "report": report.to_string(),
                });
                ctx.line(v.to_string())?;
            }
            Format::Text => {
                ctx.line(format!("strip {spec} (m={})", spec.tiers()))?;
                for k in 1..=spec.tiers() {
                    ctx.line(format!("i_{k}  size {}  ord {}", prof.size(k), prof.order(k)))?;
                }
                let kek = match report.kekulean_error() {
                    None => "Kekuléan".to_string(),
                    Some(e) => e.to_string(),
                };
                ctx.line(format!("{report}; {kek}"))?;
            }
            Format::Latex => {
                ctx.line("\\begin{tabular}{rrr}")?;
                ctx.line("$k$ & $|i_k|$ & $\\mathrm{ord}(i_k)$ \\\\")?;
                for k in 1..=spec.tiers() {
                    ctx.line(format!("{k} & {} & {} \\\\", prof.size(k), prof.order(k)))?;
                }
                ctx.line("\\end{tabular}")?;
            }
        }
    }
    Ok(())
}

fn poset(ctx: &mut Ctx) -> Run {
    for spec in ctx.strips()? {
        let poset = build_poset(&spec)?;
        let lab = natural_labeling(&poset);
        let els = poset.elements();
        match ctx.opts.format {
            Format::Json => ctx.line(poset.to_json())?,
            Format::Text => {
                ctx.line(format!("{} elements, {} covers", poset.len(), poset.covers().len()))?;
                let labels: Vec<String> =
                    (1..=poset.len()).map(|l| format!("{}={l}", els[lab.element(l)])).collect();
                ctx.line(format!("labels: {}", labels.join(" ")))?;
                for &(a, b) in poset.covers() {
                    ctx.line(format!("{} < {}", els[a], els[b]))?;
                }
            }
            Format::Latex => {
                for &(a, b) in poset.covers() {
                    let (x, y) = (els[a], els[b]);
                    ctx.line(format!("s_{{{},{}}} \\lessdot s_{{{},{}}}", x.k, x.j, y.k, y.j))?;
                }
            }
        }
    }
    Ok(())
}

fn extensions(ctx: &mut Ctx) -> Run {
    for spec in ctx.strips()? {
        let poset = build_poset(&spec)?;
        let lab = natural_labeling(&poset);
        for rec in extension_records(&poset, &lab) {
            match ctx.opts.format {
                Format::Json => ctx.line(serde_json::to_string(&rec).expect("record serializes"))?,
                Format::Text => ctx.line(rec.to_string())?,
                Format::Latex => ctx.line(format!(
                    "{} & {} & {} \\\\",
                    word_string(&rec.word),
                    rec.des,
                    rec.fix
                ))?,
            }
        }
    }
    Ok(())
}

fn zz(ctx: &mut Ctx) -> Run {
    let multiple = ctx.multiple();
    for spec in ctx.strips()? {
        warn_if_non_kekulean(&spec);
        let zz = zz_polynomial(&spec)?;
        match ctx.opts.format {
            Format::Json => {
                let cf = closed_form(&spec).ok();
                let v = json!({"strip": spec, "zz": zz, "closed_form": cf});
                ctx.line(v.to_string())?;
            }
            Format::Text if multiple => ctx.line(format!("n={}: {zz}", spec.n))?,
            Format::Text => ctx.line(zz.to_string())?,
            Format::Latex => ctx.line(zz.to_latex())?,
        }
    }
    Ok(())
}

/// Smallest length for which the shapes form a valid strip.
fn symbolic_strip(shapes: &[Shape]) -> Result<StripSpec, Failure> {
    for n in 1..=shapes.len() + 2 {
        let spec = StripSpec::new(shapes.to_vec(), n)?;
        if spec.validate().is_valid() {
            return Ok(spec);
        }
    }
    let spec = StripSpec::new(shapes.to_vec(), shapes.len() + 2)?;
    Err(Failure::Usage(format!("invalid strip {}: {}", spec.letters(), spec.validate())))
}

fn emit_closed_form(ctx: &mut Ctx, cf: Option<&ClosedForm>) -> Run {
    match (ctx.opts.format, cf) {
        (Format::Json, cf) => ctx.line(json!({ "closed_form": cf }).to_string()),
        (_, None) => ctx.line("0"),
        (Format::Text, Some(cf)) => ctx.line(cf.to_text()),
        (Format::Latex, Some(cf)) => ctx.line(cf.to_latex()),
    }
}

fn closed_form_mode(ctx: &mut Ctx) -> Run {
    let (shapes, file_n) = ctx.source()?;
    let spec = match ctx.opts.length.or(file_n) {
        Some(n) => {
            let spec = StripSpec::new(shapes, n)?;
            let report = spec.validate();
            if !report.is_valid() {
                return Err(Failure::Usage(format!("invalid strip {spec}: {report}")));
            }
            spec
        }
        None => symbolic_strip(&shapes)?,
    };
    if warn_if_non_kekulean(&spec) {
        return emit_closed_form(ctx, None);
    }
    let cf = closed_form(&spec)?;
    emit_closed_form(ctx, Some(&cf))
}

fn structures(ctx: &mut Ctx, with_rings: bool) -> Run {
    for spec in ctx.strips()? {
        if warn_if_non_kekulean(&spec) {
            continue;
        }
        let bij = KekuleBijection::new(&spec)?;
        check_subset_guard(ctx, bij.poset().len())?;
        let format = ctx.opts.format;
        let mut result = Ok(());
        let mut emit = |om: &zz_core::OrderMap, ka: &zz_core::KekuleAssignment, rings: Option<&[Dib]>| {
            if result.is_err() {
                return;
            }
            let line = match format {
                Format::Json => {
                    let mut v = json!({"A": om.members, "mu": om.mu, "pos": ka.bonds()});
                    if let Some(r) = rings {
                        v["aromatic"] = json!(r);
                    }
                    v.to_string()
                }
                _ => {
                    let mu: Vec<String> = om.mu.iter().map(|v| v.to_string()).collect();
                    let bonds: Vec<String> = ka.bonds().iter().map(|(k, p)| format!("e{k},{p}")).collect();
                    let mut s = format!(
                        "A={{{}}} mu=({}) K_I={{{}}}",
                        dib_list(&om.members),
                        mu.join(","),
                        bonds.join(" ")
                    );
                    if let Some(r) = rings {
                        let _ = write!(s, " aromatic={{{}}}", dib_list(r));
                    }
                    s
                }
            };
            result = ctx.line(line);
        };
        if with_rings {
            bij.for_each_clar_cover(|r| emit(&r.map, &r.base, Some(&r.aromatic)));
        } else {
            bij.for_each_kekule(|om, ka| emit(om, ka, None));
        }
        result?;
    }
    Ok(())
}

fn oracle(ctx: &mut Ctx) -> Run {
    let mut mismatches = Vec::new();
    for spec in ctx.strips()? {
        let report = run_oracle(&spec, ctx.opts.max_vertices)?;
        let diff = report.diff();
        match ctx.opts.format {
            Format::Json => {
                let mut v = serde_json::to_value(&report).expect("report serializes");
                v["agree"] = json!(report.agree());
                ctx.line(v.to_string())?;
            }
            _ => {
                ctx.line(format!("strip {spec}"))?;
                ctx.line(format!("poset     {}", report.poset))?;
                ctx.line(format!("covers    {}", report.covers))?;
                ctx.line(format!("sextets   {}", report.matchings))?;
                ctx.line(format!(
                    "{} perfect matchings, {} Clar covers",
                    report.matching_count, report.cover_count
                ))?;
                ctx.line("DIFF")?;
                if diff.is_empty() {
                    ctx.line("  none")?;
                }
                for (k, (a, b, c)) in &diff {
                    ctx.line(format!("  x^{k}: poset {a}, covers {b}, sextets {c}"))?;
                }
            }
        }
        if !report.agree() {
            mismatches.push(spec.to_string());
        }
    }
    if mismatches.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("oracle disagrees on {}", mismatches.join(", "))))
    }
}

fn catalog(ctx: &mut Ctx) -> Run {
    let tiers = ctx
        .opts
        .tiers
        .ok_or_else(|| Failure::Usage("catalog needs --tiers".into()))?;
    let entries: Vec<(StripSpec, ClosedForm)> = catalog_sequences(tiers, !ctx.opts.no_dedup)
        .par_iter()
        .map(|shapes| {
            let spec = symbolic_strip(shapes)?;
            let cf = closed_form(&spec)?;
            Ok((spec, cf))
        })
        .collect::<Result<_, Failure>>()?;
    let width = entries.iter().map(|(s, _)| s.shapes.len()).max().unwrap_or(0);
    for (spec, cf) in &entries {
        let line = match ctx.opts.format {
            Format::Json => json!({"shapes": spec.shapes, "closed_form": cf}).to_string(),
            Format::Text => format!("{:<width$}  {cf}", spec.letters()),
            Format::Latex => format!("{} & ${}$ \\\\", spec.letters(), cf.to_latex()),
        };
        ctx.line(line)?;
    }
    Ok(())
}

fn select_mode(cli: &Cli) -> Result<Mode, Failure> {
    let aliases = [
        (cli.list_extensions, Mode::Extensions),
        (cli.list_kekule, Mode::Kekule),
        (cli.list_clar, Mode::Clar),
        (cli.oracle, Mode::Oracle),
    ];
    let mut chosen: Vec<Mode> = aliases.iter().filter(|(on, _)| *on).map(|&(_, m)| m).collect();
    chosen.extend(cli.mode);
    chosen.dedup();
    match chosen.as_slice() {
        [m] => Ok(*m),
        [] => Err(Failure::Usage(Cli::command().render_help().to_string())),
        _ => Err(Failure::Usage("choose exactly one mode".into())),
    }
}

fn run(cli: &Cli) -> Run {
    let mode = select_mode(cli)?;
    let mut ctx = Ctx { opts: &cli.opts, out: BufWriter::new(io::stdout().lock()) };
    match mode {
        Mode::Profile => profile(&mut ctx)?,
        Mode::Poset => poset(&mut ctx)?,
        Mode::Extensions => extensions(&mut ctx)?,
        Mode::Zz => zz(&mut ctx)?,
        Mode::ClosedForm => closed_form_mode(&mut ctx)?,
        Mode::Kekule => structures(&mut ctx, false)?,
        Mode::Clar => structures(&mut ctx, true)?,
        Mode::Oracle => {
            let outcome = oracle(&mut ctx);
            ctx.out.flush()?;
            outcome?
        }
        Mode::Catalog => catalog(&mut ctx)?,
    }
    ctx.out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
