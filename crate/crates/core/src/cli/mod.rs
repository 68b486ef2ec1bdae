//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and writes a text or
//! JSON report. Exit codes: 0 on success, 1 when a verdict or count differs
//! from what was expected (or a computation fails), 2 on usage and input
//! errors.

pub mod verify;

use std::collections::HashMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::counting::{bkk_bound, count_report, system_count_with_budget, torus_count_with_budget};
use crate::fixtures::{self, Fixture, FixtureData};
use crate::groebner::DEFAULT_BUDGET;
use crate::khovanskii::{
    decoupled_check_with, is_khovanskii_with, subduct_with_limit, BlockFamily, CertifyOptions, FamilyJson,
    Verdict,
};
use crate::polyring::{parse_rational, Rational};
use crate::polytope::{mv_with_multiplicity, LatticePolytope, PolytopeJson};
use crate::resonator::{HBConfig, PhysicalParams};
use crate::toric::{fiber_product_generators, toric_ideal_with_budget, Factor, MonomialMap};
use crate::{Error, MonomialOrder, PolySystem, Polynomial};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "semimixed",
    version,
    about = "Exact root counts for semimixed polynomial systems"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Monomial order: lex, deglex or degrevlex.
    #[arg(long, global = true, default_value = "deglex")]
    pub order: String,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Reduction-step budget for Gröbner computations.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,
    /// Emit text (the default).
    #[arg(long, global = true)]
    pub text: bool,
    /// Use a named fixture as input (see `fixtures`).
    #[arg(long, global = true)]
    pub fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a harmonic-balance system.
    HbGen(HbGenArgs),
    /// Certify a family and count the solutions of a generic member.
    #[command(alias = "count")]
    CountGeneric(FamilyArgs),
    /// Mixed volume of the Newton polytopes of a system.
    BkkBound(FileArg),
    /// Run the Khovanskii basis check on a family.
    KhovanskiiCheck(CheckArgs),
    /// Toric ideal of a monomial map.
    ToricIdeal(FileArg),
    /// Mixed volume of a list of lattice polytopes.
    MixedVolume(FileArg),
    /// Subduct a polynomial by the scaled generators of a family.
    Subduct(SubductArgs),
    /// Generators of a fiber product of monomial maps.
    FiberProduct(FiberArgs),
    /// Recompute the reference claims and print a pass/fail table.
    VerifyPaper(VerifyArgs),
    /// List the fixture registry.
    Fixtures,
}

#[derive(Args, Debug)]
pub struct FileArg {
    /// Input JSON file.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FamilyArgs {
    /// Family JSON file.
    #[arg(long, alias = "file")]
    pub family: Option<PathBuf>,
    /// Polynomial system JSON file, counted directly instead of a family.
    #[arg(long, conflicts_with = "family")]
    pub system: Option<PathBuf>,
    /// Comma-separated equation counts per block, overriding the file.
    #[arg(long, value_delimiter = ',')]
    pub blocks: Option<Vec<usize>>,
    /// Decoupling partition of a single block, e.g. `0,1,2;0,3,4`.
    #[arg(long)]
    pub partition: Option<String>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Verdict that counts as success.
    #[arg(long, value_parser = ["certified", "refuted"])]
    pub expect: Option<String>,
    /// Record every subduction trace, not only failures.
    #[arg(long)]
    pub full: bool,
}

#[derive(Args, Debug)]
pub struct SubductArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Polynomial over the labels and variables of the family.
    #[arg(long)]
    pub poly: String,
    #[arg(long, default_value_t = 100_000)]
    pub max_steps: u64,
}

#[derive(Args, Debug)]
pub struct FiberArgs {
    /// Monomial map JSON files, one per factor, each with one homogenizing row.
    #[arg(long = "file", required = true, num_args = 1..)]
    pub files: Vec<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Run a single claim, e.g. `thm5.1`.
    #[arg(long)]
    pub only: Option<String>,
    /// Restrict the size parameter of the selected claims.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct HbGenArgs {
    /// Configuration JSON file; flags are ignored when given.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Number of resonators N.
    #[arg(long = "N", visible_alias = "resonators", default_value_t = 1)]
    pub resonators: usize,
    /// Half-degree n of the nonlinearity.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Number of harmonics M.
    #[arg(long = "M", visible_alias = "harmonics", default_value_t = 1)]
    pub harmonics: usize,
    /// Physical parameters as `w0=.. w=.. lam=.. gam=.. alpha=a1,a2,..`.
    #[arg(long, num_args = 1.., value_name = "KEY=VALUE")]
    pub physical: Vec<String>,
}

/// Polytopes for `mixed-volume`: a bare list, or an object with optional
/// multiplicities.
#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PolytopesInput {
    List(Vec<PolytopeJson>),
    Object {
        polytopes: Vec<PolytopeJson>,
        #[serde(default)]
        multiplicities: Vec<usize>,
    },
}

/// Failure while running a command.
#[derive(Debug)]
enum Fail {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::Json(_) | Error::Parse(_) => Fail::Usage(e.to_string()),
            other => Fail::Compute(other),
        }
    }
}

type CmdResult = Result<i32, Fail>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(Fail::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Fail::Compute(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_MISMATCH
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> CmdResult {
    let g = &cli.global;
    let order = MonomialOrder::from_name(&g.order).map_err(|e| Fail::Usage(e.to_string()))?;
    let fixture = match &g.fixture {
        Some(name) => Some(fixtures::get(name).ok_or_else(|| {
            Fail::Usage(format!(
                "unknown fixture `{name}`; available: {}",
                fixtures::names().join(", ")
            ))
        })?),
        None => None,
    };
    let ctx = Ctx {
        g,
        order,
        fixture,
        out,
    };
    match &cli.command {
        Command::HbGen(a) => hb_gen(ctx, a),
        Command::CountGeneric(a) => count_generic(ctx, a),
        Command::BkkBound(a) => bkk(ctx, a),
        Command::KhovanskiiCheck(a) => khovanskii_check(ctx, a),
        Command::ToricIdeal(a) => toric(ctx, a),
        Command::MixedVolume(a) => mixed_volume(ctx, a),
        Command::Subduct(a) => subduct_cmd(ctx, a),
        Command::FiberProduct(a) => fiber(ctx, a),
        Command::VerifyPaper(a) => verify_paper(ctx, a),
        Command::Fixtures => list_fixtures(ctx),
    }
}

struct Ctx<'a> {
    g: &'a GlobalOpts,
    order: MonomialOrder,
    fixture: Option<Fixture>,
    out: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit(&mut self, value: serde_json::Value, text: &str) -> Result<(), Fail> {
        let res = if self.g.json {
            writeln!(
                self.out,
                "{}",
                serde_json::to_string_pretty(&value).expect("json")
            )
        } else if text.is_empty() || text.ends_with('\n') {
            write!(self.out, "{text}")
        } else {
            writeln!(self.out, "{text}")
        };
        res.map_err(|e| Fail::Usage(e.to_string()))
    }

    fn fixture_data(&self) -> Result<Option<FixtureData>, Fail> {
        match &self.fixture {
            Some(f) => Ok(Some(f.data()?)),
            None => Ok(None),
        }
    }

    fn expected(&self, quantity: &str) -> Option<String> {
        self.fixture
            .as_ref()
            .and_then(|f| f.expected(quantity))
            .map(str::to_string)
    }
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, Fail> {
    let text =
        fs::read_to_string(path).map_err(|e| Fail::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Fail::Usage(format!("{}: {e}", path.display())))
}

fn need_input(what: &str) -> Fail {
    Fail::Usage(format!("no input: pass --fixture <name> or --file <{what}.json>"))
}

fn parse_partition(text: &str) -> Result<Vec<Vec<usize>>, Fail> {
    text.split(';')
        .map(|part| {
            part.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Fail::Usage(format!("bad partition index `{x}`")))
                })
                .collect()
        })
        .collect()
}

fn load_family(
    ctx: &Ctx<'_>,
    a: &FamilyArgs,
) -> Result<(BlockFamily, Option<Vec<Vec<usize>>>, String), Fail> {
    let (mut fam, mut partition, label) = match (&a.family, ctx.fixture_data()?) {
        (Some(path), _) => {
            let j: FamilyJson = read_json(path)?;
            (BlockFamily::from_json(&j)?, None, path.display().to_string())
        }
        (None, Some(FixtureData::Family { family, partition })) => (
            family,
            partition,
            ctx.fixture
                .as_ref()
                .map(|f| f.name.to_string())
                .unwrap_or_default(),
        ),
        (None, Some(_)) => return Err(Fail::Usage("fixture is not a block family".into())),
        (None, None) => return Err(need_input("family")),
    };
    if let Some(sizes) = &a.blocks {
        fam = fam.with_sizes(sizes.clone())?;
    }
    if let Some(p) = &a.partition {
        partition = Some(parse_partition(p)?);
    }
    Ok((fam, partition, label))
}

fn load_system(ctx: &Ctx<'_>, file: &Option<PathBuf>) -> Result<PolySystem, Fail> {
    match (file, ctx.fixture_data()?) {
        (Some(path), _) => Ok(PolySystem::from_json(&read_json(path)?)?),
        (None, Some(FixtureData::System(s))) => Ok(s),
        (None, Some(FixtureData::Family { family, .. })) => {
            Ok(crate::counting::generic_system(&family, ctx.g.seed)?)
        }
        (None, Some(_)) => Err(Fail::Usage("fixture is not a system or family".into())),
        (None, None) => Err(need_input("system")),
    }
}

/// Exit code for a computed value against an optional expectation.
fn verdict_code(expected: Option<&str>, computed: &str) -> i32 {
    match expected {
        Some(e) if !e.eq_ignore_ascii_case(computed) => EXIT_MISMATCH,
        _ => EXIT_OK,
    }
}

fn hb_gen(mut ctx: Ctx<'_>, a: &HbGenArgs) -> CmdResult {
    let cfg = match &a.config {
        Some(p) => read_json::<HBConfig>(p)?,
        None => {
            let mut c = HBConfig::coupled(a.resonators, a.n, ctx.g.seed);
            c.harmonics = a.harmonics;
            if !a.physical.is_empty() {
                c = c.with_physical(parse_physical(&a.physical)?);
            }
            c
        }
    };
    let (sys, coeffs) = cfg.generate()?;
    let text = format!("# seed {}\n{sys}", cfg.seed);
    let value = json!({
        "schema": 1,
        "seed": cfg.seed,
        "config": cfg,
        "system": sys.to_json(),
        "coefficients": coeffs,
    });
    ctx.emit(value, &text)?;
    Ok(EXIT_OK)
}

fn parse_physical(items: &[String]) -> Result<PhysicalParams, Fail> {
    let mut kv = HashMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Fail::Usage(format!("expected KEY=VALUE, got `{item}`")))?;
        kv.insert(k.trim(), v.trim());
    }
    let get = |k: &str| -> Result<Rational, Fail> {
        let v = kv
            .get(k)
            .ok_or_else(|| Fail::Usage(format!("--physical is missing `{k}`")))?;
        parse_rational(v).map_err(|e| Fail::Usage(e.to_string()))
    };
    let list = |k: &str| -> Result<Option<Vec<Rational>>, Fail> {
        kv.get(k)
            .map(|v| {
                v.split(',')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| parse_rational(t.trim()).map_err(|e| Fail::Usage(e.to_string())))
                    .collect()
            })
            .transpose()
    };
    if let Some(k) = kv
        .keys()
        .find(|k| !["w0", "w", "ws", "lam", "gam", "alpha"].contains(k))
    {
        return Err(Fail::Usage(format!("unknown physical parameter `{k}`")));
    }
    Ok(PhysicalParams {
        omega0: get("w0")?,
        omega: get("w")?,
        omegas: list("ws")?,
        lambda: get("lam")?,
        gamma: get("gam")?,
        alphas: list("alpha")?.unwrap_or_default(),
    })
}

fn count_generic(mut ctx: Ctx<'_>, a: &FamilyArgs) -> CmdResult {
    let direct = match (&a.system, &a.family, ctx.fixture_data()?) {
        (Some(path), _, _) => Some((
            PolySystem::from_json(&read_json(path)?)?,
            path.display().to_string(),
        )),
        (None, None, Some(FixtureData::System(s))) => Some((
            s,
            ctx.fixture
                .as_ref()
                .map(|f| f.name.to_string())
                .unwrap_or_default(),
        )),
        _ => None,
    };
    if let Some((sys, label)) = direct {
        return count_system(ctx, &sys, &label);
    }
    let (fam, partition, label) = load_family(&ctx, a)?;
    let report = count_report(&fam, &ctx.order, ctx.g.seed, partition.as_deref(), &label)?;
    let code = verdict_code(
        ctx.expected("generic_count").as_deref(),
        &report.generic_count.to_string(),
    );
    let value = serde_json::to_value(&report).expect("json");
    ctx.emit(value, &report.to_string())?;
    Ok(code)
}

fn count_system(mut ctx: Ctx<'_>, sys: &PolySystem, label: &str) -> CmdResult {
    let budget = ctx.g.budget;
    let bkk = bkk_bound(sys)?;
    let count = system_count_with_budget(sys, budget)?;
    let torus = torus_count_with_budget(sys, budget)?;
    let code = verdict_code(ctx.expected("system_count").as_deref(), &count.to_string());
    let text = format!(
        "system:            {label}\nseed:              {}\nbkk bound:         {bkk}\nsystem count:      {count} (with multiplicity)\ntorus count:       {torus}\n",
        ctx.g.seed
    );
    let value = json!({
        "schema": 1,
        "seed": ctx.g.seed,
        "system": label,
        "bkk_bound": bkk,
        "system_count": count,
        "torus_count": torus,
    });
    ctx.emit(value, &text)?;
    Ok(code)
}

fn bkk(mut ctx: Ctx<'_>, a: &FileArg) -> CmdResult {
    let sys = load_system(&ctx, &a.file)?;
    let b = bkk_bound(&sys)?;
    let code = verdict_code(ctx.expected("bkk_bound").as_deref(), &b.to_string());
    ctx.emit(
        json!({"schema": 1, "seed": ctx.g.seed, "bkk_bound": b}),
        &format!("{b}\n"),
    )?;
    Ok(code)
}

fn khovanskii_check(mut ctx: Ctx<'_>, a: &CheckArgs) -> CmdResult {
    let (fam, partition, _) = load_family(&ctx, &a.family)?;
    let opts = CertifyOptions {
        full_diagnostics: a.full,
        budget: ctx.g.budget,
        ..CertifyOptions::default()
    };
    let cert = match &partition {
        Some(p) => decoupled_check_with(&fam, p, &ctx.order, &opts)?,
        None => is_khovanskii_with(&fam, &ctx.order, &opts)?,
    };
    let expected = a
        .expect
        .clone()
        .or_else(|| ctx.expected("verdict"))
        .unwrap_or_else(|| Verdict::Certified.to_string());
    let code = verdict_code(Some(&expected), &cert.verdict.to_string());
    let value = serde_json::to_value(&cert).expect("json");
    ctx.emit(value, &cert.to_string())?;
    Ok(code)
}

fn toric(mut ctx: Ctx<'_>, a: &FileArg) -> CmdResult {
    let (map, listed) = match (&a.file, ctx.fixture_data()?) {
        (Some(path), _) => (read_json::<MonomialMap>(path)?, None),
        (None, Some(FixtureData::Map { map, generators })) => (map, Some(generators)),
        (None, Some(_)) => return Err(Fail::Usage("fixture is not a monomial map".into())),
        (None, None) => return Err(need_input("map")),
    };
    let gb = toric_ideal_with_budget(&map, &ctx.order, ctx.g.budget)?;
    let mut code = EXIT_OK;
    let mut matches = None;
    if let Some(gens) = listed {
        let listed = crate::groebner::Ideal::new(&map.target_ring(), gens)?;
        let eq = crate::groebner::ideals_equal(&gb.to_ideal(), &listed, &MonomialOrder::degrevlex())?;
        if !eq {
            code = EXIT_MISMATCH;
        }
        matches = Some(eq);
    }
    let mut text = gb.to_string();
    if let Some(eq) = matches {
        text.push_str(&format!("# equals listed generators: {eq}\n"));
    }
    let value = json!({
        "schema": 1,
        "order": ctx.order,
        "basis": gb.to_json(),
        "matches_listed": matches,
    });
    ctx.emit(value, &text)?;
    Ok(code)
}

fn mixed_volume(mut ctx: Ctx<'_>, a: &FileArg) -> CmdResult {
    let (polys, ks) = match (&a.file, ctx.fixture_data()?) {
        (Some(path), _) => {
            let (list, ks) = match read_json::<PolytopesInput>(path)? {
                PolytopesInput::List(l) => (l, Vec::new()),
                PolytopesInput::Object {
                    polytopes,
                    multiplicities,
                } => (polytopes, multiplicities),
            };
            let ps = list
                .iter()
                .map(LatticePolytope::from_json)
                .collect::<crate::Result<Vec<_>>>()?;
            (ps, ks)
        }
        (
            None,
            Some(FixtureData::Polytopes {
                polytopes,
                multiplicities,
            }),
        ) => (polytopes, multiplicities),
        (None, Some(_)) => return Err(Fail::Usage("fixture is not a polytope list".into())),
        (None, None) => return Err(need_input("polytopes")),
    };
    let ks = if ks.is_empty() { vec![1; polys.len()] } else { ks };
    let mv = mv_with_multiplicity(&polys, &ks)?;
    let code = verdict_code(ctx.expected("mixed_volume").as_deref(), &mv.to_string());
    ctx.emit(
        json!({"schema": 1, "multiplicities": ks, "mixed_volume": mv.to_string()}),
        &format!("{mv}\n"),
    )?;
    Ok(code)
}

fn subduct_cmd(mut ctx: Ctx<'_>, a: &SubductArgs) -> CmdResult {
    let (fam, _, _) = load_family(&ctx, &a.family)?;
    let g = fam.scaled(&ctx.order)?;
    let f = Polynomial::parse(g.ring(), &a.poly)?;
    let s = subduct_with_limit(&f, &g, a.max_steps)?;
    let mut text = String::new();
    for (i, st) in s.steps.iter().enumerate() {
        text.push_str(&format!(
            "step {}: leading {:?} = {} * prod g^{:?}\n",
            i + 1,
            st.leading,
            st.coefficient,
            st.alpha
        ));
    }
    text.push_str(&format!("remainder: {}\n", s.remainder));
    let value = json!({
        "schema": 1,
        "order": ctx.order,
        "steps": s.steps,
        "remainder": s.remainder.to_json(),
        "truncated": s.truncated,
    });
    ctx.emit(value, &text)?;
    Ok(if s.truncated { EXIT_MISMATCH } else { EXIT_OK })
}

fn fiber(mut ctx: Ctx<'_>, a: &FiberArgs) -> CmdResult {
    let maps: Vec<MonomialMap> = a.files.iter().map(|p| read_json(p)).collect::<Result<_, _>>()?;
    let mut ideals = Vec::new();
    let mut homs = Vec::new();
    for m in &maps {
        if m.homogenizing.len() != 1 {
            return Err(Fail::Usage(
                "each factor needs exactly one homogenizing row".into(),
            ));
        }
        let h = m.homogenizing[0];
        let col = (0..m.ntarget())
            .find(|&j| (0..m.nsource()).all(|i| m.exponent_matrix[i][j] == i64::from(i == h)))
            .ok_or_else(|| Fail::Usage("a factor has no pure homogenizing column".into()))?;
        ideals.push(toric_ideal_with_budget(m, &ctx.order, ctx.g.budget)?.to_ideal());
        homs.push(m.target_vars[col].clone());
    }
    let factors: Vec<Factor<'_>> = ideals
        .iter()
        .zip(&homs)
        .map(|(ideal, h)| Factor {
            ideal,
            homogenizing: h,
        })
        .collect();
    let joined = fiber_product_generators(&factors)?;
    let gens: Vec<_> = joined.generators().iter().map(Polynomial::to_json).collect();
    let value = json!({"schema": 1, "vars": joined.ring().vars(), "generators": gens});
    ctx.emit(value, &joined.to_string())?;
    Ok(EXIT_OK)
}

fn verify_paper(mut ctx: Ctx<'_>, a: &VerifyArgs) -> CmdResult {
    if let Some(id) = &a.only {
        if !verify::CLAIMS.iter().any(|(c, _)| c == id) {
            let ids: Vec<&str> = verify::CLAIMS.iter().map(|(c, _)| *c).collect();
            return Err(Fail::Usage(format!(
                "unknown claim `{id}`; available: {}",
                ids.join(", ")
            )));
        }
    }
    let opts = verify::VerifyOptions {
        n: a.n,
        seed: ctx.g.seed,
        budget: ctx.g.budget,
    };
    let rows = verify::run_all(a.only.as_deref(), &opts);
    let ok = rows.iter().all(|r| r.passed);
    let value = json!({"schema": 1, "seed": ctx.g.seed, "rows": rows, "passed": ok});
    ctx.emit(value, &verify::render_table(&rows))?;
    Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
}

fn list_fixtures(mut ctx: Ctx<'_>) -> CmdResult {
    let reg = fixtures::registry();
    let mut text = String::new();
    for f in &reg {
        let exp: Vec<String> = f
            .expected
            .iter()
            .map(|e| format!("{}={}", e.quantity, e.value))
            .collect();
        text.push_str(&format!("{:<18} {}  [{}]\n", f.name, f.summary, exp.join(", ")));
    }
    let value = json!(reg
        .iter()
        .map(|f| json!({"name": f.name, "summary": f.summary, "expected": f.expected}))
        .collect::<Vec<_>>());
    ctx.emit(value, &text)?;
    Ok(EXIT_OK)
}
