use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use tscodes::codes::{dual, BzOptions, DistanceOptions, HtCaps, SphereVerdict, DEFAULT_THRESHOLD_K};
use tscodes::families::{self, Family, FamilyId};
use tscodes::pipeline::{self, construct, summarize, DistanceMode, VerifyOptions};
use tscodes::predict::{crosscheck, predict};
use tscodes::{BinaryPoly, CosetTable, Error, FieldSpec, PolyTable};

/// Bumped whenever a report field changes meaning.
const SCHEMA: &str = "tscodes.report/1";

#[derive(Parser, Debug)]
#[command(name = "tscodes", version, about = "Binary cyclic codes from trace sequences over GF(2^m)")]
struct Cli {
    /// Extension degree, or a range such as 5..9, 5-9 or 5,7,9.
    #[arg(long, global = true)]
    m: Option<String>,
    /// Family id (f1..f8, F1_intro, F0); repeat or comma-separate for several.
    #[arg(long, global = true, value_delimiter = ',')]
    family: Vec<String>,
    /// Primitive polynomial overriding the bundled one, e.g. x^7+x^3+1.
    #[arg(long, global = true)]
    poly: Option<String>,
    /// Text file of `m=7 poly=...` lines overriding the bundled table.
    #[arg(long, global = true)]
    poly_config: Option<std::path::PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Codeword budget for the information-window search.
    #[arg(long, global = true, default_value_t = 2_000_000_000)]
    budget: u64,
    /// Lee-Brickell iterations for distance upper bounds.
    #[arg(long, global = true, default_value_t = 2_000)]
    isd_iterations: u64,
    /// Largest k (or n - k) enumerated directly.
    #[arg(long, global = true, default_value_t = DEFAULT_THRESHOLD_K)]
    threshold_k: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum DistanceArg {
    Exact,
    Bounds,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// 2-cyclotomic cosets modulo 2^m - 1.
    Cosets,
    /// Catalog entries valid at m, with permutation status.
    Families,
    /// One period of s_t and its minimal polynomial by both routes.
    Sequence,
    /// Closed-form generator and span against the computed ones.
    Predict,
    /// Code parameters, distance and bounds.
    Code {
        #[arg(long, value_enum, default_value_t = DistanceArg::Exact)]
        distance: DistanceArg,
        /// Also report the dual code.
        #[arg(long)]
        dual: bool,
    },
    /// Full cross-check for every (family, m); exit status 1 on any mismatch.
    Verify {
        #[arg(long, value_enum, default_value_t = DistanceArg::Exact)]
        distance: DistanceArg,
    },
    /// Recompute the published optimality table (m <= 8) side by side.
    Table2,
}

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema: &'static str,
    command: &'a str,
    results: Vec<T>,
}

struct Ctx {
    polys: PolyTable,
    override_poly: Option<BinaryPoly>,
    format: Format,
    verify: VerifyOptions,
}

impl Ctx {
    fn field(&self, m: u32) -> Result<FieldSpec> {
        match &self.override_poly {
            Some(p) => Ok(FieldSpec::new(m, p)?),
            None => Ok(self.polys.field(m)?),
        }
    }
}

fn parse_m_range(s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    let range = |a: &str, b: &str| -> Result<Vec<u32>> {
        let (a, b): (u32, u32) = (a.trim().parse()?, b.trim().parse()?);
        if a > b {
            bail!("empty m range {a}..{b}");
        }
        Ok((a..=b).collect())
    };
    if let Some((a, b)) = s.split_once("..") {
        return range(a, b.trim_start_matches('='));
    }
    if let Some((a, b)) = s.split_once('-') {
        return range(a, b);
    }
    s.split(',').map(|x| Ok(x.trim().parse::<u32>()?)).collect()
}

fn families_arg(cli: &Cli) -> Result<Vec<FamilyId>> {
    cli.family.iter().map(|f| Ok(f.parse::<FamilyId>()?)).collect()
}

fn one<T: Copy>(xs: &[T], what: &str) -> Result<T> {
    match xs {
        [x] => Ok(*x),
        [] => bail!("--{what} is required"),
        _ => bail!("--{what} takes a single value for this command"),
    }
}

type CsvRow<'a, T> = &'a dyn Fn(&T) -> Vec<String>;

fn emit<T: Serialize>(ctx: &Ctx, out: &mut dyn Write, command: &str, results: Vec<T>, pretty: impl Fn(&T) -> String, csv_row: Option<CsvRow<T>>, csv_header: &[&str]) -> Result<()> {
    match ctx.format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &Envelope { schema: SCHEMA, command, results })?;
            writeln!(out)?;
        }
        Format::Pretty => {
            for r in &results {
                writeln!(out, "{}", pretty(r))?;
            }
        }
        Format::Csv => {
            let Some(row) = csv_row else { bail!("`{command}` has no CSV form; use --format json") };
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(csv_header)?;
            for r in &results {
                w.write_record(row(r))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct CosetLine {
    m: u32,
    leader: u32,
    size: u32,
    members: Vec<u32>,
}

fn cmd_cosets(ctx: &Ctx, out: &mut dyn Write, ms: &[u32]) -> Result<()> {
    let mut lines = Vec::new();
    for &m in ms {
        let c = CosetTable::new(m)?;
        for &l in c.leaders() {
            lines.push(CosetLine { m, leader: l, size: c.size(l), members: c.members(l) });
        }
    }
    emit(
        ctx,
        out,
        "cosets",
        lines,
        |l| format!("m={} C_{:<5} size {:>2}  {:?}", l.m, l.leader, l.size, l.members),
        Some(&|l: &CosetLine| {
            let members = l.members.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
            vec![l.m.to_string(), l.leader.to_string(), l.size.to_string(), members]
        }),
        &["m", "leader", "size", "members"],
    )
}

#[derive(Serialize)]
struct FamilyLine {
    family: FamilyId,
    m: u32,
    formula: &'static str,
    exponents: Vec<u64>,
    validity: families::Validity,
    permutation_claim: Option<bool>,
    is_permutation: Option<bool>,
}

fn cmd_families(ctx: &Ctx, out: &mut dyn Write, ms: &[u32], ids: &[FamilyId]) -> Result<()> {
    let ids: Vec<FamilyId> = if ids.is_empty() { families::ALL.to_vec() } else { ids.to_vec() };
    let mut lines = Vec::new();
    for &m in ms {
        let field = ctx.field(m)?;
        for &id in &ids {
            let validity = id.validity(m);
            let is_permutation = if validity.usable() && m <= 16 { Some(Family::new(id, &field)?.is_permutation()) } else { None };
            lines.push(FamilyLine {
                family: id,
                m,
                formula: id.formula(),
                exponents: id.exponents(m),
                validity,
                permutation_claim: id.permutation_claim(m).expected(),
                is_permutation,
            });
        }
    }
    let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_else(|| "-".into());
    emit(
        ctx,
        out,
        "families",
        lines,
        |l| {
            format!(
                "{:<8} m={:<2} {:<12} perm claimed {:<5} observed {:<5} exps {:?}",
                l.family.name(),
                l.m,
                match &l.validity {
                    families::Validity::Valid => "valid",
                    families::Validity::Extrapolated(_) => "extrapolated",
                    families::Validity::Invalid(_) => "invalid",
                },
                opt(l.permutation_claim),
                opt(l.is_permutation),
                l.exponents
            )
        },
        Some(&|l: &FamilyLine| {
            vec![
                l.family.name().into(),
                l.m.to_string(),
                l.validity.usable().to_string(),
                opt(l.permutation_claim),
                opt(l.is_permutation),
                l.formula.into(),
            ]
        }),
        &["family", "m", "usable", "permutation_claim", "is_permutation", "formula"],
    )
}

#[derive(Serialize)]
struct SequenceLine {
    family: FamilyId,
    m: u32,
    bits: String,
    least_period: usize,
    span_dft: usize,
    span_bm: usize,
    routes_agree: bool,
    minimal_poly: String,
    minimal_poly_hex: String,
    index_set_leaders: Vec<u32>,
}

fn cmd_sequence(ctx: &Ctx, out: &mut dyn Write, id: FamilyId, m: u32) -> Result<()> {
    let c = construct(id, &ctx.field(m)?)?;
    let line = SequenceLine {
        family: id,
        m,
        bits: c.sequence.to_bit_string(),
        least_period: c.sequence.least_period(),
        span_dft: c.dft.linear_span,
        span_bm: c.bm.linear_span,
        routes_agree: c.dft.minimal_poly == c.bm.minimal_poly,
        minimal_poly: c.dft.minimal_poly.to_string(),
        minimal_poly_hex: c.dft.minimal_poly.to_hex(),
        index_set_leaders: c.dft.leaders(&c.cosets),
    };
    emit(
        ctx,
        out,
        "sequence",
        vec![line],
        |l| {
            format!(
                "{}/m={}\ns = {}\nL_s = {} (Fourier) / {} (BM)\ng_s = {}\nI_s leaders {:?}",
                l.family.name(),
                l.m,
                l.bits,
                l.span_dft,
                l.span_bm,
                l.minimal_poly,
                l.index_set_leaders
            )
        },
        None,
        &[],
    )
}

#[derive(Serialize)]
struct PredictLine {
    prediction: tscodes::Prediction,
    crosscheck: tscodes::CrossCheck,
    passed: bool,
}

fn cmd_predict(ctx: &Ctx, out: &mut dyn Write, id: FamilyId, m: u32) -> Result<bool> {
    let field = ctx.field(m)?;
    let c = construct(id, &field)?;
    let p = predict(id, &field, &c.cosets)?;
    let x = crosscheck(&p, &c.dft, &field, &c.cosets)?;
    let passed = x.passed();
    emit(
        ctx,
        out,
        "predict",
        vec![PredictLine { prediction: p, crosscheck: x, passed }],
        |l| {
            let p = &l.prediction;
            format!(
                "{}\nleaders {:?}\nL_s predicted {} (formula {}), dim {}, d in [{}, {}]{}\n{}",
                p.source,
                p.leader_set,
                p.predicted_span,
                p.formula_span.map(|f| f.to_string()).unwrap_or_else(|| "-".into()),
                p.predicted_dim,
                p.distance.0,
                p.distance.1,
                if p.extrapolated { " (extrapolated m)" } else { "" },
                l.crosscheck.summary()
            )
        },
        None,
        &[],
    )?;
    Ok(passed)
}

#[derive(Serialize)]
struct CodeLine {
    family: FamilyId,
    m: u32,
    #[serde(flatten)]
    code: pipeline::CodeSummary,
    optimal: bool,
    dual: Option<pipeline::CodeSummary>,
}

fn code_csv(l: &CodeLine) -> Vec<String> {
    let b = &l.code.bounds;
    vec![
        l.family.name().into(),
        l.m.to_string(),
        l.code.n.to_string(),
        l.code.k.to_string(),
        l.code.distance.lo().to_string(),
        l.code.distance.hi().to_string(),
        b.bch.to_string(),
        b.hartmann_tzeng.to_string(),
        b.singleton_upper.to_string(),
        b.sphere_packing.to_string(),
        l.code.generator_hex.clone(),
    ]
}

const CODE_HEADER: [&str; 11] = ["family", "m", "n", "k", "d_lo", "d_hi", "bch", "ht", "singleton", "sphere_packing", "generator_hex"];

fn pretty_code(family: FamilyId, m: u32, s: &pipeline::CodeSummary, tag: &str) -> String {
    format!(
        "{}/m={} {tag}[{},{},{}]  g = {}\n  bounds: BCH {}, HT {}, Singleton {}, sphere packing {}{}",
        family.name(),
        m,
        s.n,
        s.k,
        s.distance,
        s.generator_pretty,
        s.bounds.bch,
        s.bounds.hartmann_tzeng,
        s.bounds.singleton_upper,
        s.bounds.sphere_packing,
        s.method.map(|m| format!(", distance by {m}")).unwrap_or_default()
    )
}

fn cmd_code(ctx: &Ctx, out: &mut dyn Write, ids: &[FamilyId], ms: &[u32], mode: DistanceMode, with_dual: bool) -> Result<()> {
    let opts = VerifyOptions { mode, ..ctx.verify.clone() };
    let mut lines = Vec::new();
    for &id in ids {
        for &m in ms {
            let field = ctx.field(m)?;
            let c = construct(id, &field)?;
            let code = summarize(&c.code, &c.cosets, &opts)?;
            let dual = if with_dual { Some(summarize(&dual(&c.code), &c.cosets, &opts)?) } else { None };
            let optimal = code.bounds.sphere_packing == SphereVerdict::Optimal;
            lines.push(CodeLine { family: id, m, code, optimal, dual });
        }
    }
    emit(
        ctx,
        out,
        "code",
        lines,
        |l| {
            let mut s = pretty_code(l.family, l.m, &l.code, "");
            if let Some(d) = &l.dual {
                s.push('\n');
                s.push_str(&pretty_code(l.family, l.m, d, "dual "));
            }
            s
        },
        Some(&code_csv),
        &CODE_HEADER,
    )
}

fn cmd_verify(ctx: &Ctx, out: &mut dyn Write, ids: &[FamilyId], ms: &[u32], mode: DistanceMode) -> Result<bool> {
    let ids: Vec<FamilyId> = if ids.is_empty() { families::ALL.iter().copied().filter(|&f| f != FamilyId::F0).collect() } else { ids.to_vec() };
    let opts = VerifyOptions { mode, ..ctx.verify.clone() };
    let mut reports = Vec::new();
    for &id in &ids {
        for &m in ms {
            if let families::Validity::Invalid(why) = id.validity(m) {
                eprintln!("skipping {id}/m={m}: {why}");
                continue;
            }
            match pipeline::verify(id, &ctx.field(m)?, &opts) {
                Ok(r) => reports.push(r),
                Err(Error::Unsupported(why)) => eprintln!("skipping {id}/m={m}: {why}"),
                Err(e) => return Err(e).with_context(|| format!("{id}/m={m}")),
            }
        }
    }
    let all = reports.iter().all(|r| r.passed);
    emit(
        ctx,
        out,
        "verify",
        reports,
        |r| {
            let mut s = format!(
                "{} {}/m={}  [{},{},{}]{}",
                if r.passed { "PASS" } else { "FAIL" },
                r.family.name(),
                r.m,
                r.code.n,
                r.code.k,
                r.code.distance,
                r.dual.as_ref().map(|d| format!(" / dual [{},{},{}]", d.n, d.k, d.distance)).unwrap_or_default()
            );
            for c in r.checks.iter().filter(|c| !c.passed) {
                s.push_str(&format!("\n    {}: {}", c.name, c.detail));
            }
            s
        },
        Some(&|r: &pipeline::VerifyReport| {
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            vec![
                r.family.name().into(),
                r.m.to_string(),
                r.passed.to_string(),
                r.code.n.to_string(),
                r.code.k.to_string(),
                r.code.distance.to_string(),
                r.dual.as_ref().map(|d| d.distance.to_string()).unwrap_or_default(),
                r.span_dft.to_string(),
                r.prediction.claimed_span().to_string(),
                failed.join(" "),
            ]
        }),
        &["family", "m", "passed", "n", "k", "d", "dual_d", "span", "claimed_span", "failed_checks"],
    )?;
    Ok(all)
}

fn cmd_table2(ctx: &Ctx, out: &mut dyn Write) -> Result<bool> {
    let mut lines = Vec::new();
    for row in tscodes::expected::table().iter().filter(|r| r.tabulated && r.m <= 8) {
        lines.push(pipeline::table2_line(row, &ctx.verify)?);
    }
    let all = lines.iter().all(|l| l.agrees);
    emit(
        ctx,
        out,
        "table2",
        lines,
        |l| {
            format!(
                "{} {}/m={}: published {} / {}  computed {} / {}  ({} / {})",
                if l.agrees { "ok  " } else { "DIFF" },
                l.family.name(),
                l.m,
                l.published,
                l.published_dual,
                l.computed,
                l.computed_dual,
                l.code_opt,
                l.dual_opt
            )
        },
        Some(&|l: &pipeline::Table2Line| {
            vec![
                l.row.to_string(),
                l.family.name().into(),
                l.m.to_string(),
                l.published.clone(),
                l.computed.clone(),
                l.published_dual.clone(),
                l.computed_dual.clone(),
                l.code_opt.clone(),
                l.dual_opt.clone(),
                l.sphere_packing.clone(),
                l.agrees.to_string(),
            ]
        }),
        &["row", "family", "m", "published", "computed", "published_dual", "computed_dual", "code_opt", "dual_opt", "sphere_packing", "agrees"],
    )?;
    Ok(all)
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global()?;
    }
    let polys = match &cli.poly_config {
        Some(path) => PolyTable::parse_config(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?,
        None => PolyTable::bundled(),
    };
    let override_poly = cli.poly.as_deref().map(str::parse::<BinaryPoly>).transpose()?;
    let verify = VerifyOptions {
        mode: DistanceMode::Exact,
        distance: DistanceOptions {
            threshold_k: cli.threshold_k,
            bz: BzOptions { budget: cli.budget, isd_iterations: cli.isd_iterations, ..Default::default() },
        },
        ht_caps: HtCaps::default(),
        with_dual: true,
    };
    let ctx = Ctx { polys, override_poly, format: cli.format, verify };
    let ids = families_arg(&cli)?;
    let ms = cli.m.as_deref().map(parse_m_range).transpose()?;
    let need_m = || ms.clone().context("--m is required");
    let mode = |d: DistanceArg| if d == DistanceArg::Exact { DistanceMode::Exact } else { DistanceMode::Bounds };

    match cli.command {
        Command::Cosets => cmd_cosets(&ctx, out, &need_m()?).map(|_| true),
        Command::Families => cmd_families(&ctx, out, &need_m()?, &ids).map(|_| true),
        Command::Sequence => cmd_sequence(&ctx, out, one(&ids, "family")?, one(&need_m()?, "m")?).map(|_| true),
        Command::Predict => cmd_predict(&ctx, out, one(&ids, "family")?, one(&need_m()?, "m")?),
        Command::Code { distance, dual } => {
            if ids.is_empty() {
                bail!("--family is required");
            }
            cmd_code(&ctx, out, &ids, &need_m()?, mode(distance), dual).map(|_| true)
        }
        Command::Verify { distance } => cmd_verify(&ctx, out, &ids, &need_m()?, mode(distance)),
        Command::Table2 => cmd_table2(&ctx, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli, &mut std::io::stdout().lock()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_ranges() {
        assert_eq!(parse_m_range("5").unwrap(), vec![5]);
        assert_eq!(parse_m_range("5..7").unwrap(), vec![5, 6, 7]);
        assert_eq!(parse_m_range("5..=7").unwrap(), vec![5, 6, 7]);
        assert_eq!(parse_m_range("4-6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_m_range("5,7,9").unwrap(), vec![5, 7, 9]);
        assert!(parse_m_range("9..5").is_err());
        assert!(parse_m_range("x").is_err());
    }

    fn invoke(args: &[&str]) -> (bool, String) {
        let cli = Cli::try_parse_from(std::iter::once("tscodes").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        let ok = run(cli, &mut buf).unwrap();
        (ok, String::from_utf8(buf).unwrap())
    }

    #[test]
    fn code_json_has_the_report_keys() {
        let (_, out) = invoke(&["code", "--family", "f4", "--m", "7", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        let r = &v["results"][0];
        for key in ["family", "m", "n", "k", "generator_hex", "generator_pretty", "defining_set_leaders", "distance", "bounds", "optimal"] {
            assert!(!r[key].is_null(), "missing {key}");
        }
        for key in ["bch", "ht", "ht_witness", "sphere_packing"] {
            assert!(!r["bounds"][key].is_null(), "missing bounds.{key}");
        }
        assert_eq!(r["family"], "f4");
        assert_eq!((r["n"].as_u64(), r["k"].as_u64()), (Some(127), Some(105)));
        assert_eq!(r["distance"]["kind"], "exact");
        assert_eq!(r["distance"]["lo"], 6);
    }

    #[test]
    fn reports_are_byte_identical_across_runs() {
        let args = ["verify", "--family", "f6,f7", "--m", "4-6", "--format", "json"];
        let (ok1, a) = invoke(&args);
        let (ok2, b) = invoke(&args);
        assert_eq!(a, b);
        assert_eq!(ok1, ok2);
    }

    #[test]
    fn verify_exit_status_follows_the_checks() {
        let (ok, out) = invoke(&["verify", "--family", "f7", "--m", "4"]);
        assert!(ok, "{out}");
        assert!(out.starts_with("PASS f7/m=4  [15,11,3] / dual [15,4,8]"), "{out}");
        // Invalid pairs are skipped, not failed.
        let (ok, out) = invoke(&["verify", "--family", "f3", "--m", "4,5", "--format", "csv"]);
        assert!(ok);
        assert_eq!(out.lines().count(), 2, "{out}");
        // The m = 6 closed form for f8 overstates the span.
        let (ok, _) = invoke(&["verify", "--family", "f8", "--m", "6"]);
        assert!(!ok);
    }

    #[test]
    fn poly_override_changes_the_field() {
        let (_, a) = invoke(&["code", "--family", "f3", "--m", "5", "--format", "csv"]);
        let (_, b) = invoke(&["code", "--family", "f3", "--m", "5", "--poly", "x^5+x^3+1", "--format", "csv"]);
        assert_ne!(a, b);
        let cli = Cli::try_parse_from(["tscodes", "code", "--family", "f3", "--m", "5", "--poly", "x^5+x^4+1+x^2"]).unwrap();
        assert!(run(cli, &mut Vec::new()).is_err());
    }

    #[test]
    fn cosets_csv() {
        let (_, out) = invoke(&["cosets", "--m", "4", "--format", "csv"]);
        assert_eq!(out.lines().nth(4), Some("4,5,2,5 10"));
    }

    #[test]
    fn single_value_flags_are_enforced() {
        let cli = Cli::try_parse_from(["tscodes", "sequence", "--family", "f3,f4", "--m", "5"]).unwrap();
        assert!(run(cli, &mut Vec::new()).is_err());
        let cli = Cli::try_parse_from(["tscodes", "predict", "--family", "f3"]).unwrap();
        assert!(run(cli, &mut Vec::new()).is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
