//! Command surface of the `zerodiv` binary. [`run_command`] parses argv and
//! returns the exit code with the rendered report, so tests can drive it
//! without spawning processes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use zerodiv::expr::{parse_group_element, parse_group_spec, parse_ring_expr};
use zerodiv::fox::{annihilation_pipeline, fox_power_rule_check, fundamental_identity_check, FreeWord};
use zerodiv::groups::{is_antinormal_bounded, AntinormalVerdict};
use zerodiv::zdlab::{
    annihilator_left, annihilator_right, construct_lemma3, construct_theorem1, construct_theorem2_finite,
    construct_theorem2_freeproduct, coset_report, default_unit_catalog, primitive_pair_check, trivial_pair_check,
    Check, Construction, PrimitiveVerdict, Provenance, Search, Side, TrivialityVerdict, UnitCatalogEntry,
    ZeroDivisorPair,
};
use zerodiv::{CyclicSubgroup, FiniteTable, GroupElement, GroupSpec, Order, RingElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zerodiv", version, about = "Exact zero-divisor experiments in integral group rings")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Leave elapsed_ms out of the report.
    #[arg(long, global = true)]
    no_timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a known zero-divisor pair and check its identities.
    #[command(subcommand)]
    Verify(Verify),
    /// Evaluate a ring expression.
    Eval {
        #[arg(long)]
        group: String,
        #[arg(long)]
        expr: String,
    },
    /// Multiply two ring expressions.
    Mul {
        #[arg(long)]
        group: String,
        a: String,
        b: String,
    },
    /// Search for a certificate that (A, B) is a trivial pair.
    TrivialCheck(PairArgs),
    /// Search for a unit U making (A U^-1, U B) trivial.
    PrimitiveCheck {
        #[command(flatten)]
        pair: PairArgs,
        /// Trivial units ±g with |g| up to this length enter the catalog.
        #[arg(long, default_value_t = 1)]
        unit_bound: usize,
        /// Extra unit, tried first; requires --unit-inv.
        #[arg(long, requires = "unit_inv")]
        unit: Option<String>,
        #[arg(long, requires = "unit")]
        unit_inv: Option<String>,
    },
    /// Find a nonzero annihilator in the group ring of a finite table.
    Annihilate {
        #[arg(long)]
        table: String,
        #[arg(long)]
        expr: String,
        /// right: X*B = 0 for the given X; left: Y*X = 0.
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// Partition a finite set of elements by cosets of <h>.
    CosetReport {
        #[arg(long)]
        group: String,
        /// Comma-separated element expressions.
        #[arg(long)]
        set: String,
        #[arg(long)]
        h: String,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Test whether <h> is antinormal against conjugators up to a length.
    Antinormal {
        #[arg(long)]
        group: String,
        #[arg(long)]
        h: String,
        #[arg(long)]
        bound: usize,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// The pair in Z[Nil2(n)].
    Theorem1 {
        #[arg(long)]
        n: u64,
    },
    /// The unit-twisted pair in Z[C_q * C_r].
    Lemma3 {
        #[arg(long)]
        q: u64,
        /// A number or inf.
        #[arg(long)]
        r: String,
    },
    /// The pair 2 - h1 - h2 in a finite group, or the free-product case with --q/--r.
    Theorem2 {
        #[arg(long, conflicts_with_all = ["q", "r"], requires_all = ["h1", "h2"])]
        table: Option<String>,
        #[arg(long)]
        h1: Option<String>,
        #[arg(long)]
        h2: Option<String>,
        #[arg(long, requires = "r")]
        q: Option<String>,
        #[arg(long, requires = "q")]
        r: Option<String>,
    },
    /// Fox calculus identities for w^n, and the annihilation pipeline into Nil2(n).
    Fox {
        /// Word in a1..am.
        #[arg(long, default_value = "a1*a2*a1^-1*a2^-1")]
        word: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 2)]
        rank: u32,
    },
}

#[derive(Args, Debug)]
struct PairArgs {
    #[arg(long)]
    group: String,
    #[arg(long = "A")]
    a: String,
    #[arg(long = "B")]
    b: String,
    /// Conjugator length bound for infinite groups.
    #[arg(long)]
    bound: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SideArg {
    Left,
    Right,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Left => Side::Left,
            SideArg::Right => Side::Right,
        }
    }
}

#[derive(Serialize, Debug)]
struct CheckOut {
    name: String,
    passed: bool,
}

#[derive(Serialize, Debug)]
pub struct Report {
    command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    group: Option<String>,
    inputs: BTreeMap<String, String>,
    checks: Vec<CheckOut>,
    verdict: String,
    summary: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<BTreeMap<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u64>,
    #[serde(skip)]
    code: i32,
}

impl Report {
    fn new(command: &str, group: Option<&GroupSpec>) -> Self {
        Report {
            command: command.to_string(),
            group: group.map(ToString::to_string),
            inputs: BTreeMap::new(),
            checks: Vec::new(),
            verdict: String::new(),
            summary: String::new(),
            details: BTreeMap::new(),
            witness: None,
            elapsed_ms: None,
            code: EXIT_OK,
        }
    }

    fn input(mut self, k: &str, v: impl ToString) -> Self {
        self.inputs.insert(k.to_string(), v.to_string());
        self
    }

    fn detail(&mut self, k: &str, v: impl Into<Value>) {
        self.details.insert(k.to_string(), v.into());
    }

    fn witness(&mut self, k: &str, v: impl Into<Value>) {
        self.witness.get_or_insert_with(BTreeMap::new).insert(k.to_string(), v.into());
    }

    fn checks(&mut self, checks: &[Check]) {
        self.checks.extend(checks.iter().map(|c| CheckOut { name: c.name.clone(), passed: c.passed }));
    }

    /// Sets the verdict from the checks: all pass gives exit 0.
    fn settle(&mut self, summary: String) {
        let ok = self.checks.iter().all(|c| c.passed);
        self.verdict = if ok { "verified" } else { "failed" }.into();
        self.code = if ok { EXIT_OK } else { EXIT_NEGATIVE };
        self.summary = summary;
    }

    fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(g) = &self.group {
            let _ = writeln!(out, "group: {g}");
        }
        for (k, v) in &self.inputs {
            let _ = writeln!(out, "input {k}: {v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "  [{}] {}", if c.passed { "ok" } else { "FAIL" }, c.name);
        }
        for (k, v) in &self.details {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        if let Some(w) = &self.witness {
            for (k, v) in w {
                let _ = writeln!(out, "witness {k}: {}", plain(v));
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if !self.summary.is_empty() {
            let _ = writeln!(out, "{}", self.summary);
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Outcome = Result<Report, Failure>;

/// Runs the CLI on `argv` (including the program name) and returns the exit
/// code together with everything that would be printed.
pub fn run_command<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.render().to_string());
        }
    };
    let start = Instant::now();
    match dispatch(&cli.command) {
        Ok(mut report) => {
            if !cli.no_timing {
                report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = if cli.json {
                let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                s.push('\n');
                s
            } else {
                report.render_text()
            };
            (report.code, text)
        }
        Err(Failure(msg)) => {
            if cli.json {
                let s = serde_json::to_string_pretty(&json!({ "verdict": "error", "error": msg })).expect("serializes");
                (EXIT_USAGE, s + "\n")
            } else {
                (EXIT_USAGE, format!("error: {msg}\n"))
            }
        }
    }
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Verify(v) => verify(v),
        Command::Eval { group, expr } => {
            let spec = parse_group_spec(group)?;
            let p = parse_ring_expr(expr, &spec)?;
            let mut r = Report::new("eval", Some(&spec)).input("expr", expr);
            r.verdict = "ok".into();
            r.summary = p.to_string();
            r.detail("result", p.to_string());
            Ok(r)
        }
        Command::Mul { group, a, b } => {
            let spec = parse_group_spec(group)?;
            let x = parse_ring_expr(a, &spec)?;
            let y = parse_ring_expr(b, &spec)?;
            let p = x.checked_mul(&y)?;
            let mut r = Report::new("mul", Some(&spec)).input("A", a).input("B", b);
            r.verdict = "ok".into();
            r.summary = p.to_string();
            r.detail("result", p.to_string());
            Ok(r)
        }
        Command::TrivialCheck(args) => trivial_check(args),
        Command::PrimitiveCheck { pair, unit_bound, unit, unit_inv } => {
            primitive_check(pair, *unit_bound, unit.as_deref().zip(unit_inv.as_deref()))
        }
        Command::Annihilate { table, expr, side } => annihilate(table, expr, *side),
        Command::CosetReport { group, set, h, side } => cosets(group, set, h, *side),
        Command::Antinormal { group, h, bound } => antinormal(group, h, *bound),
    }
}

fn parse_order(s: &str) -> Result<Order, Failure> {
    if s.trim() == "inf" {
        return Ok(Order::Infinite);
    }
    s.trim()
        .parse()
        .map(Order::Finite)
        .map_err(|_| Failure(format!("expected a number or inf, got {s:?}")))
}

fn load_table(path: &str) -> Result<GroupSpec, Failure> {
    Ok(GroupSpec::table(FiniteTable::from_file(path)?))
}

fn support_string(spec: &GroupSpec, p: &RingElement) -> String {
    let names: Vec<String> = p.support().iter().map(|g| spec.format_element(g)).collect();
    format!("{{{}}}", names.join(", "))
}

fn pair_details(r: &mut Report, c: &Construction) {
    let spec = c.pair.a().spec();
    r.detail("A", c.pair.a().to_string());
    r.detail("B", c.pair.b().to_string());
    r.detail("supp A", support_string(spec, c.pair.a()));
    r.detail("|supp A|", c.pair.a().len());
    r.detail("|supp B|", c.pair.b().len());
    if let Some(u) = &c.unit {
        r.detail("U", u.u().to_string());
        r.detail("U^-1", u.u_inv().to_string());
    }
}

fn verify(v: &Verify) -> Outcome {
    match v {
        Verify::Theorem1 { n } => {
            let c = construct_theorem1(*n)?;
            let mut r = Report::new("verify theorem1", Some(c.pair.a().spec())).input("n", n);
            r.checks(&c.checks);
            pair_details(&mut r, &c);
            r.settle(format!("AB = 0, |supp A| = {}", c.pair.a().len()));
            Ok(r)
        }
        Verify::Lemma3 { q, r: r_arg } => {
            let order = parse_order(r_arg)?;
            let c = construct_lemma3(*q, order)?;
            let mut r = Report::new("verify lemma3", Some(c.pair.a().spec())).input("q", q).input("r", order);
            r.checks(&c.checks);
            pair_details(&mut r, &c);
            let spec = c.pair.a().spec();
            r.settle(format!("AB = 0, supp A = {}", support_string(spec, c.pair.a())));
            Ok(r)
        }
        Verify::Theorem2 { table, h1, h2, q, r: r_arg } => match (table, q, r_arg) {
            (Some(path), _, _) => {
                let spec = load_table(path)?;
                let (h1, h2) = (h1.as_deref().unwrap_or_default(), h2.as_deref().unwrap_or_default());
                let g1 = parse_group_element(h1, &spec)?;
                let g2 = parse_group_element(h2, &spec)?;
                let c = construct_theorem2_finite(&spec, &g1, &g2)?;
                let mut r = Report::new("verify theorem2", Some(&spec)).input("h1", h1).input("h2", h2);
                r.checks(&c.checks);
                pair_details(&mut r, &c);
                r.settle(format!("AB = 0 with A = {}", c.pair.a()));
                Ok(r)
            }
            (None, Some(q), Some(rr)) => {
                let (red, c) = construct_theorem2_freeproduct(parse_order(q)?, parse_order(rr)?)?;
                let mut r = Report::new("verify theorem2", Some(&red.ambient)).input("q", q).input("r", rr);
                r.checks(&c.checks);
                pair_details(&mut r, &c);
                r.detail("standard subgroup", red.standard.to_string());
                let images: Vec<String> = red.images.iter().map(|g| red.ambient.format_element(g)).collect();
                r.detail("images of a, b", images.join(", "));
                r.detail("factors swapped", red.swapped);
                r.settle(format!("AB = 0 in Z[{}]", red.ambient));
                Ok(r)
            }
            _ => Err(Failure("verify theorem2 needs --table with --h1/--h2, or --q with --r".into())),
        },
        Verify::Fox { word, n, rank } => {
            let spec = GroupSpec::free(*rank)?;
            let w = FreeWord::new(&spec, parse_group_element(word, &spec)?)?;
            let w_n = w.pow(*n as i64);
            let mut checks = vec![Check::new(
                format!("fundamental identity for w^{n}"),
                fundamental_identity_check(&w_n)?,
            )];
            for i in 0..*rank as usize {
                checks.push(Check::new(
                    format!("power rule d(w^{n})/db{} = (1 + w + .. + w^{}) dw/db{}", i + 1, n - 1, i + 1),
                    fox_power_rule_check(&w, *n, i)?,
                ));
            }
            let mut r = Report::new("verify fox", Some(&spec)).input("word", word).input("n", n);
            if *rank == 2 {
                let target = GroupSpec::nil2(*n)?;
                let pipe = annihilation_pipeline(&w_n, *n, &target, &target.generators())?;
                checks.push(Check::new(format!("theta(w^{n}) = 1 in nil2:{n}"), pipe.relator_maps_to_one));
                checks.push(Check::new(
                    format!("theta(b2) has order {n}"),
                    pipe.second_image_order == Order::Finite(*n),
                ));
                checks.push(Check::new("theta(dw/db1 (b1 - 1) sum b2^j) = 0", pipe.product.is_zero()));
                r.detail("theta(dw/db1)", pipe.left_factor.to_string());
                r.detail("theta((b1 - 1) sum b2^j)", pipe.right_factor.to_string());
            }
            r.checks(&checks);
            r.settle(format!("{} of {} checks hold", checks.iter().filter(|c| c.passed).count(), checks.len()));
            Ok(r)
        }
    }
}

fn parse_pair(args: &PairArgs) -> Result<(GroupSpec, ZeroDivisorPair), Failure> {
    let spec = parse_group_spec(&args.group)?;
    let a = parse_ring_expr(&args.a, &spec)?;
    let b = parse_ring_expr(&args.b, &spec)?;
    let pair = ZeroDivisorPair::new(a, b, Provenance::User)?;
    Ok((spec, pair))
}

fn search_of(bound: Option<usize>) -> Search {
    bound.map_or(Search::Exhaustive, Search::Bounded)
}

fn certificate_witness(r: &mut Report, spec: &GroupSpec, cert: &zerodiv::zdlab::TrivialityCertificate) {
    r.witness("h", spec.format_element(&cert.h));
    r.witness("order", cert.order);
    r.witness("orientation", cert.orientation.to_string());
    r.witness("X", cert.x.to_string());
    r.witness("Y", cert.y.to_string());
}

fn trivial_check(args: &PairArgs) -> Outcome {
    let (spec, pair) = parse_pair(args)?;
    let mut r = Report::new("trivial-check", Some(&spec)).input("A", &args.a).input("B", &args.b);
    if let Some(b) = args.bound {
        r = r.input("bound", b);
    }
    match trivial_pair_check(&pair, search_of(args.bound))? {
        TrivialityVerdict::Trivial(cert) => {
            r.checks.push(CheckOut { name: "certificate reproduces A and B".into(), passed: cert.reproduces(&pair)? });
            certificate_witness(&mut r, &spec, &cert);
            r.verdict = "trivial".into();
            r.summary = format!("trivial via h = {}", spec.format_element(&cert.h));
            r.code = EXIT_OK;
        }
        TrivialityVerdict::NoneFound(space) => {
            r.detail("search space", space.description.clone());
            r.detail("candidates", space.candidates);
            r.detail("orientations tried", space.orientations_tried);
            r.detail("pruned by augmentation", space.pruned_by_augmentation);
            r.verdict = "none-found".into();
            r.summary = format!("no certificate among {} candidates", space.candidates);
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

fn primitive_check(args: &PairArgs, unit_bound: usize, extra: Option<(&str, &str)>) -> Outcome {
    let (spec, pair) = parse_pair(args)?;
    let mut catalog = Vec::new();
    if let Some((u, u_inv)) = extra {
        catalog.push(UnitCatalogEntry::new(parse_ring_expr(u, &spec)?, parse_ring_expr(u_inv, &spec)?)?);
    }
    catalog.extend(default_unit_catalog(&spec, unit_bound)?);
    let mut r = Report::new("primitive-check", Some(&spec))
        .input("A", &args.a)
        .input("B", &args.b)
        .input("unit-bound", unit_bound);
    if let Some(b) = args.bound {
        r = r.input("bound", b);
    }
    r.detail("catalog size", catalog.len());
    match primitive_pair_check(&pair, &catalog, search_of(args.bound))? {
        PrimitiveVerdict::Primitive { unit, x, y, certificate } => {
            r.witness("U", unit.u().to_string());
            r.witness("U^-1", unit.u_inv().to_string());
            r.witness("A U^-1", x.to_string());
            r.witness("U B", y.to_string());
            certificate_witness(&mut r, &spec, &certificate);
            r.verdict = "primitive".into();
            r.summary = format!("primitive via U = {}", unit.u());
            r.code = EXIT_OK;
        }
        PrimitiveVerdict::NotShown { units_tried } => {
            r.verdict = "not-shown".into();
            r.summary = format!("no trivializing unit among {units_tried} catalog entries");
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

fn annihilate(table: &str, expr: &str, side: SideArg) -> Outcome {
    let spec = load_table(table)?;
    let x = parse_ring_expr(expr, &spec)?;
    let found = match side {
        SideArg::Right => annihilator_right(&x)?,
        SideArg::Left => annihilator_left(&x)?,
    };
    let mut r = Report::new("annihilate", Some(&spec)).input("expr", expr).input("side", Side::from(side));
    match found {
        Some(b) => {
            let product = match side {
                SideArg::Right => x.checked_mul(&b)?,
                SideArg::Left => b.checked_mul(&x)?,
            };
            r.checks.push(CheckOut { name: "product is zero".into(), passed: product.is_zero() });
            r.witness("annihilator", b.to_string());
            r.verdict = "found".into();
            r.summary = format!("annihilator {b}");
            r.code = EXIT_OK;
        }
        None => {
            r.verdict = "none".into();
            r.summary = format!("{x} is not a {side:?} zero divisor").to_lowercase();
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}

fn parse_element_list(s: &str, spec: &GroupSpec) -> Result<Vec<GroupElement>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_group_element(t.trim(), spec).map_err(Failure::from))
        .collect()
}

fn cosets(group: &str, set: &str, h: &str, side: SideArg) -> Outcome {
    let spec = parse_group_spec(group)?;
    let elements = parse_element_list(set, &spec)?;
    let k = CyclicSubgroup::new(&spec, parse_group_element(h, &spec)?)?;
    let rep = coset_report(&elements, &k, side.into())?;
    let mut r = Report::new("coset-report", Some(&spec))
        .input("set", set)
        .input("h", h)
        .input("side", Side::from(side));
    let classes: Vec<Value> = rep
        .classes
        .iter()
        .map(|c| Value::from(c.iter().map(|g| spec.format_element(g)).collect::<Vec<_>>()))
        .collect();
    r.detail("order of h", k.order().to_string());
    r.detail("classes", classes);
    r.detail("class sizes", rep.class_sizes());
    r.checks.push(CheckOut { name: "every class has at least 2 elements".into(), passed: rep.all_classes_ge_2 });
    r.verdict = if rep.all_classes_ge_2 { "all-classes-ge-2" } else { "singleton-class" }.into();
    r.summary = format!("{} classes of sizes {:?}", rep.classes.len(), rep.class_sizes());
    r.code = if rep.all_classes_ge_2 { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(r)
}

fn antinormal(group: &str, h: &str, bound: usize) -> Outcome {
    let spec = parse_group_spec(group)?;
    let k = CyclicSubgroup::new(&spec, parse_group_element(h, &spec)?)?;
    let mut r = Report::new("antinormal", Some(&spec)).input("h", h).input("bound", bound);
    match is_antinormal_bounded(&k, bound)? {
        AntinormalVerdict::NoViolationWithinBound { conjugators_checked } => {
            r.detail("conjugators checked", conjugators_checked);
            r.verdict = "no-violation-within-bound".into();
            r.summary = format!("<{h}> passed against {conjugators_checked} conjugators");
            r.code = EXIT_OK;
        }
        AntinormalVerdict::Violation { conjugator, element, image } => {
            r.witness("g", spec.format_element(&conjugator));
            r.witness("k", spec.format_element(&element));
            r.witness("g k g^-1", spec.format_element(&image));
            r.verdict = "violation".into();
            r.summary = format!(
                "g = {} lies outside <{h}> but conjugates {} to {}",
                spec.format_element(&conjugator),
                spec.format_element(&element),
                spec.format_element(&image)
            );
            r.code = EXIT_NEGATIVE;
        }
    }
    Ok(r)
}
