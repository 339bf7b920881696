mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use snevily::certificate::{lemma4_certificate, snevily_certificate, theorem1_certificate, theorem2_certificate, verify_certificate, Certificate};
use snevily::characters::{character_table, dual_group, parse_character_list};
use snevily::field::{FieldCtx, FieldElem, FieldSpec};
use snevily::group::{format_element_list, GroupElement, GroupSpec};
use snevily::linalg::determinant;
use snevily::snevily::{
    cauchy_binet_check_with_budget, char2_identity_check_with_budget, reduce_mod_char, snevily_polynomial_with_bound, verify_theorem1_witness,
};
use snevily::sweep::{run_sweep, Execution, Suite, SweepConfig};
use snevily::Error;

use output::{Format, Report};

#[derive(Parser)]
#[command(name = "snevily", version, about = "Exact checks and witnesses for character bases and distinct-sum permutations of finite abelian groups")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Shorthand for --format json
    #[arg(long, global = true)]
    json: bool,

    /// Largest k for enumerations over all permutations of k elements
    #[arg(long, global = true, default_value_t = snevily::snevily::DEFAULT_MAX_K)]
    max_perm_k: usize,

    /// Largest number of k-subsets an exhaustive check may visit
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_subsets: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group commands
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Field commands
    Field {
        #[command(subcommand)]
        command: FieldCommand,
    },
    /// Character table and whether it is nonsingular
    Chartable(GroupField),
    /// Characters with both character matrices on A and B nonsingular
    Theorem1 {
        #[command(flatten)]
        gf: GroupField,
        #[command(flatten)]
        sets: Sets,
    },
    /// Elements with both character matrices of X and Psi nonsingular
    Theorem2 {
        #[command(flatten)]
        gf: GroupField,
        /// Characters as dual coordinates, e.g. "(0);(1)"
        #[arg(long)]
        chars_x: String,
        #[arg(long)]
        chars_psi: String,
    },
    /// The permutation whose multiset of sums no other permutation attains
    Lemma4 {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        sets: Sets,
    },
    /// A permutation with pairwise distinct sums, or none
    Snevily {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        sets: Sets,
    },
    /// Det(t_{a_i + b_j}) as signed multiset coefficients
    Poly {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        sets: Sets,
        /// Reduce coefficients modulo this prime
        #[arg(long = "mod")]
        modulus: Option<u64>,
    },
    /// Check an identity on random functions, or re-check a witness
    Verify {
        #[command(subcommand)]
        command: VerifyCommand,
    },
    /// Run a property sweep
    Sweep(SweepArgs),
}

#[derive(Subcommand)]
enum GroupCommand {
    /// Order, exponent and element enumeration
    Info {
        #[arg(long)]
        group: String,
    },
}

#[derive(Subcommand)]
enum FieldCommand {
    /// Modulus, zeta, degree and order of the field for a group
    Build(GroupField),
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Det L against its expansion over k-subsets of characters
    CauchyBinet(IdentityArgs),
    /// The characteristic-2 expansion over k-subsets and permutations
    Char2(IdentityArgs),
    /// Re-check a JSON witness from a file, or stdin with "-"
    Witness {
        file: PathBuf,
    },
}

#[derive(Args)]
struct GroupField {
    /// Cyclic factor orders, e.g. "2,3,9"
    #[arg(long)]
    group: String,
    /// "gf:p" or "cyc"
    #[arg(long, default_value = "cyc")]
    field: String,
}

#[derive(Args)]
struct Sets {
    /// Elements separated by ";", e.g. "(0);(1)"
    #[arg(long)]
    set_a: String,
    #[arg(long)]
    set_b: String,
}

#[derive(Args)]
struct IdentityArgs {
    #[command(flatten)]
    gf: GroupField,
    /// Fixed sets; random sets of size --k are drawn per trial when omitted
    #[arg(long, requires = "set_b")]
    set_a: Option<String>,
    #[arg(long, requires = "set_a")]
    set_b: Option<String>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 20)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    suite: String,
    /// Largest group order, exhaustive and random parts
    #[arg(long)]
    max_m: Option<u64>,
    /// Largest set size, exhaustive and random parts
    #[arg(long)]
    max_k: Option<usize>,
    /// Number of random instances
    #[arg(long)]
    random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run on one thread
    #[arg(long)]
    sequential: bool,
}

enum Failure {
    /// A checked property does not hold; the report still goes to stdout.
    Violation(Report),
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type Outcome = Result<Report, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json { Format::Json } else { cli.format };
    match run(&cli) {
        Ok(report) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(report)) => {
            print!("{}", report.render(format));
            eprintln!("property violation");
            ExitCode::from(1)
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Group { command: GroupCommand::Info { group } } => group_info(group),
        Command::Field { command: FieldCommand::Build(gf) } => field_build(gf),
        Command::Chartable(gf) => chartable(gf),
        Command::Theorem1 { gf, sets } => theorem1(gf, sets),
        Command::Theorem2 { gf, chars_x, chars_psi } => theorem2(gf, chars_x, chars_psi),
        Command::Lemma4 { group, sets } => lemma4(group, sets, cli.max_perm_k),
        Command::Snevily { group, sets } => snevily_cmd(group, sets),
        Command::Poly { group, sets, modulus } => poly(group, sets, *modulus, cli.max_perm_k),
        Command::Verify { command } => match command {
            VerifyCommand::CauchyBinet(args) => identity(args, false, cli.max_subsets),
            VerifyCommand::Char2(args) => identity(args, true, cli.max_subsets),
            VerifyCommand::Witness { file } => witness(file),
        },
        Command::Sweep(args) => sweep(args),
    }
}

fn context(gf: &GroupField) -> Result<(GroupSpec, FieldCtx), Error> {
    let spec: GroupSpec = gf.group.parse()?;
    let field: FieldSpec = gf.field.parse()?;
    let ctx = FieldCtx::for_group(&spec, field)?;
    Ok((spec, ctx))
}

fn sets(spec: &GroupSpec, s: &Sets) -> Result<(Vec<GroupElement>, Vec<GroupElement>), Error> {
    Ok((spec.parse_element_list(&s.set_a)?, spec.parse_element_list(&s.set_b)?))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

/// Certificate fields, flattened into the report.
fn certificate_report(cert: &Certificate) -> Report {
    let Value::Object(map) = to_value(cert) else { unreachable!("certificates are objects") };
    map.into_iter().fold(Report::new(), |r, (k, v)| r.field(&k, v))
}

fn group_info(group: &str) -> Outcome {
    let spec: GroupSpec = group.parse()?;
    let elems = spec.enumerate();
    let listing = elems.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ");
    let rows = elems.iter().enumerate().map(|(i, g)| vec![Value::from(i), Value::from(g.to_string())]).collect();
    Ok(Report::new()
        .field("group", spec.to_string())
        .field("order", spec.order())
        .field("exponent", spec.exponent())
        .field("rank", spec.rank())
        .table("elements", &["index", "element"], rows)
        .text(format!("order {}, exponent {}\nelements {listing}\n", spec.order(), spec.exponent())))
}

fn field_build(gf: &GroupField) -> Outcome {
    let (_, ctx) = context(gf)?;
    let Value::Object(map) = to_value(&ctx.describe()) else { unreachable!("descriptions are objects") };
    Ok(map.into_iter().fold(Report::new(), |r, (k, v)| r.field(&k, v)))
}

fn chartable(gf: &GroupField) -> Outcome {
    let (spec, ctx) = context(gf)?;
    let table = character_table(&ctx, &spec)?;
    let det = determinant(&ctx, &table)?;
    let elems = spec.enumerate();
    let mut header: Vec<String> = vec!["character".into()];
    header.extend(elems.iter().map(|g| g.to_string()));
    let rows: Vec<Vec<String>> = dual_group(&spec)
        .iter()
        .enumerate()
        .map(|(u, chi)| std::iter::once(chi.to_string()).chain((0..elems.len()).map(|g| ctx.format(table.get(u, g)))).collect())
        .collect();
    let cells = rows.iter().map(|r| r.iter().map(|c| Value::from(c.as_str())).collect()).collect();
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let nonsingular = !ctx.is_zero(&det);
    let mut text = String::new();
    text.push_str(&header.join("\t"));
    text.push('\n');
    for r in &rows {
        text.push_str(&r.join("\t"));
        text.push('\n');
    }
    text.push_str(&format!("determinant {}\nnonsingular {nonsingular}\n", ctx.format(&det)));
    let report = Report::new()
        .field("group", spec.to_string())
        .field("field", ctx.spec().to_string())
        .field("determinant", ctx.format(&det))
        .field("nonsingular", nonsingular)
        .table("rows", &header_refs, cells)
        .text(text);
    if nonsingular {
        Ok(report)
    } else {
        Err(Failure::Violation(report))
    }
}

fn theorem1(gf: &GroupField, s: &Sets) -> Outcome {
    let (spec, ctx) = context(gf)?;
    let (a, b) = sets(&spec, s)?;
    match theorem1_certificate(&ctx, &spec, &a, &b)? {
        Some(w) => {
            let chars = w.characters.iter().map(|c| snevily::characters::Character::new(&spec, c.clone())).collect::<Result<Vec<_>, _>>()?;
            let verified = verify_theorem1_witness(&ctx, &spec, &a, &b, &chars)?;
            let text = format!("characters {}\ndetA {}\ndetB {}\nverified {verified}\n", format_element_list(&chars), w.det_a, w.det_b);
            let report = certificate_report(&Certificate::Theorem1(w)).field("verified", verified).text(text);
            if verified {
                Ok(report)
            } else {
                Err(Failure::Violation(report))
            }
        }
        None => Err(Failure::Violation(infeasible(&spec, &ctx, &format!("A={} B={}", s.set_a, s.set_b)))),
    }
}

fn infeasible(spec: &GroupSpec, ctx: &FieldCtx, instance: &str) -> Report {
    Report::new()
        .field("group", spec.to_string())
        .field("field", ctx.spec().to_string())
        .field("instance", instance)
        .field("feasible", false)
}

fn theorem2(gf: &GroupField, chars_x: &str, chars_psi: &str) -> Outcome {
    let (spec, ctx) = context(gf)?;
    let x = parse_character_list(&spec, chars_x)?;
    let psi = parse_character_list(&spec, chars_psi)?;
    match theorem2_certificate(&ctx, &spec, &x, &psi)? {
        Some(w) => {
            let elems: Vec<GroupElement> = w.elements.iter().map(|c| spec.element(c.clone())).collect::<Result<_, _>>()?;
            let text = format!("elements {}\ndetX {}\ndetPsi {}\n", format_element_list(&elems), w.det_x, w.det_psi);
            Ok(certificate_report(&Certificate::Theorem2(w)).text(text))
        }
        None => Err(Failure::Violation(infeasible(&spec, &ctx, &format!("X={chars_x} Psi={chars_psi}")))),
    }
}

fn lemma4(group: &str, s: &Sets, max_k: usize) -> Outcome {
    let spec: GroupSpec = group.parse()?;
    let (a, b) = sets(&spec, s)?;
    if a.len() > max_k {
        return Err(Error::BudgetExceeded { what: "k (permutations of k elements)", needed: a.len() as u128, limit: max_k as u128 }.into());
    }
    let w = lemma4_certificate(&spec, &a, &b)?;
    let unique = w.attaining == 1;
    let text = format!(
        "permutation {}\nsignature {}\nattaining {}\nunique {unique}\n",
        w.permutation,
        to_value(&w.signature),
        w.attaining
    );
    let report = certificate_report(&Certificate::Lemma4(w)).field("unique", unique).text(text);
    if unique {
        Ok(report)
    } else {
        Err(Failure::Violation(report))
    }
}

fn snevily_cmd(group: &str, s: &Sets) -> Outcome {
    let spec: GroupSpec = group.parse()?;
    let (a, b) = sets(&spec, s)?;
    let w = snevily_certificate(&spec, &a, &b)?;
    let text = match &w.permutation {
        Some(p) => format!("{p}\n"),
        None => "none\n".to_string(),
    };
    let found = w.permutation.is_some();
    let report = certificate_report(&Certificate::Snevily(w)).text(text);
    if !found && spec.order() % 2 == 1 {
        return Err(Failure::Violation(report));
    }
    Ok(report)
}

fn poly(group: &str, s: &Sets, modulus: Option<u64>, max_k: usize) -> Outcome {
    let spec: GroupSpec = group.parse()?;
    let (a, b) = sets(&spec, s)?;
    let mut p = snevily_polynomial_with_bound(&spec, &a, &b, max_k)?;
    if let Some(c) = modulus {
        p = reduce_mod_char(&p, c)?;
    }
    Ok(p.terms().iter().fold(Report::new(), |r, (sig, c)| r.field(&sig.to_string(), *c)))
}

fn identity(args: &IdentityArgs, char2: bool, max_subsets: u128) -> Outcome {
    let (spec, ctx) = context(&args.gf)?;
    let fixed = match (&args.set_a, &args.set_b) {
        (Some(a), Some(b)) => Some((spec.parse_element_list(a)?, spec.parse_element_list(b)?)),
        _ => None,
    };
    if fixed.is_none() && args.k > spec.size() {
        return Err(Error::SizeMismatch(format!("k = {} exceeds the group order {}", args.k, spec.size())).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let (mut passed, mut failed) = (0u64, 0u64);
    let mut counterexample = None;
    for _ in 0..args.trials {
        let (a, b) = match &fixed {
            Some(ab) => ab.clone(),
            None => {
                let pick = |rng: &mut ChaCha8Rng| -> Vec<GroupElement> { sample(rng, spec.size(), args.k).into_iter().map(|i| spec.element_at(i)).collect() };
                let a = pick(&mut rng);
                (a, pick(&mut rng))
            }
        };
        let phi: Vec<FieldElem> = (0..spec.size()).map(|_| ctx.random(&mut rng)).collect();
        let ok = if char2 {
            char2_identity_check_with_budget(&ctx, &spec, &a, &b, &phi, max_subsets)?
        } else {
            cauchy_binet_check_with_budget(&ctx, &spec, &a, &b, &phi, max_subsets)?
        };
        if ok {
            passed += 1;
        } else {
            failed += 1;
            counterexample.get_or_insert_with(|| {
                format!("A={} B={} phi={}", format_element_list(&a), format_element_list(&b), phi.iter().map(|x| ctx.format(x)).collect::<Vec<_>>().join(" "))
            });
        }
    }
    let mut report = Report::new()
        .field("identity", if char2 { "char2" } else { "cauchy-binet" })
        .field("group", spec.to_string())
        .field("field", ctx.spec().to_string())
        .field("seed", args.seed)
        .field("passed", passed)
        .field("failed", failed);
    if let Some(c) = counterexample {
        report = report.field("counterexample", c);
        return Err(Failure::Violation(report));
    }
    Ok(report)
}

fn witness(file: &PathBuf) -> Outcome {
    let mut text = String::new();
    if file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map_err(|e| Error::Parse(format!("reading stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(file).map_err(|e| Error::Parse(format!("reading {}: {e}", file.display())))?;
    }
    let cert: Certificate = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("witness json: {e}")))?;
    let kind = match &cert {
        Certificate::Theorem1(_) => "theorem1",
        Certificate::Theorem2(_) => "theorem2",
        Certificate::Lemma4(_) => "lemma4",
        Certificate::Snevily(_) => "snevily",
    };
    let verdict = verify_certificate(&cert)?;
    let report = Report::new().field("kind", kind).field("valid", verdict.valid).field("reason", verdict.reason.clone());
    if verdict.valid {
        Ok(report)
    } else {
        Err(Failure::Violation(report))
    }
}

fn sweep(args: &SweepArgs) -> Outcome {
    let suite: Suite = args.suite.parse()?;
    let mut cfg = SweepConfig::new(suite);
    if let Some(m) = args.max_m {
        if cfg.max_m > 0 {
            cfg.max_m = m;
        }
        if cfg.random_max_m > 0 {
            cfg.random_max_m = m;
        }
    }
    if let Some(k) = args.max_k {
        if cfg.max_k > 0 {
            cfg.max_k = k;
        }
        if cfg.random_max_k > 0 {
            cfg.random_max_k = k;
        }
    }
    if let Some(r) = args.random {
        cfg.random = r;
    }
    cfg.seed = args.seed;
    cfg.execution = if args.sequential { Execution::Sequential } else { Execution::Parallel };
    let report = run_sweep(&cfg)?;
    for ce in &report.counterexamples {
        eprintln!("counterexample: {ce}");
    }
    let rows = report.checks.iter().map(|c| vec![Value::from(c.name.clone()), Value::from(c.instances), Value::from(c.violations)]).collect();
    let out = Report::new()
        .field("config", to_value(&report.config))
        .field("instances", report.instances)
        .field("violations", report.violations)
        .field("digest", report.digest.clone())
        .field("counterexamples", to_value(&report.counterexamples))
        .table("checks", &["name", "instances", "violations"], rows);
    if report.passed() {
        Ok(out)
    } else {
        Err(Failure::Violation(out))
    }
}
