use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use chw_core::cat::{
    classify_arrow, connecting_isos, find_universal, validate_category, yoneda_check, FinCategory,
    Universal,
};
use chw_core::gen::Gen;
use chw_core::monad::{
    builtin, cartesian, check_linear_exponential, check_set_comonad, check_set_monad,
    cokleisli_products_sets, cokleisli_sets, exponential_counts, kleisli_roundtrip_sets,
    kleisli_sets, Builtin, LinExp, MonadError, DEFAULT_CAP,
};
use chw_core::proof::{
    check_proof, parse_proof, parse_sequent, print_proof, search_cutfree_in, ProofError, System,
};
use chw_core::rewrite::{
    decide_conversion_with_fuel, normalize, normalize_trace, RewriteError, DEFAULT_FUEL,
};
use chw_core::semantics::{eval_finset, translate_linear_proof, translate_stlc};
use chw_core::syntax::{
    judgement_to_string, parse_judgement, parse_open_term, parse_term, parse_type, term_to_string,
    type_to_string, Notation,
};
use chw_core::typing::{infer_derivation, typecheck_linear, typecheck_stlc};

#[derive(Parser)]
#[command(
    name = "chw",
    about = "Typed lambda calculi, linear logic proofs and finite category checks"
)]
struct Cli {
    /// Emit `{verdict, witness?, stats}` as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print with Unicode symbols instead of ASCII.
    #[arg(long, global = true)]
    unicode: bool,
    /// Seed for anything randomised.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

/// Inputs are file paths if such a file exists, `-` for stdin, and
/// literal text otherwise.
#[derive(Args)]
struct Input {
    input: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse and reprint a type, term, judgement, sequent or proof.
    Parse {
        #[arg(long, value_enum, default_value_t = Kind::Auto)]
        kind: Kind,
        #[command(flatten)]
        input: Input,
    },
    /// Check a judgement `ctx |- t : T` and print its derivation.
    Typecheck {
        #[arg(long, value_enum, default_value_t = TypeSystem::Stlc)]
        system: TypeSystem,
        #[command(flatten)]
        input: Input,
    },
    /// Principal type of `ctx |- t`.
    Infer {
        #[command(flatten)]
        input: Input,
    },
    /// β-normal form in normal order.
    Normalize {
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        input: Input,
    },
    /// Decide `ctx |- t == u : T` up to β and η.
    Eq {
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Interpret a judgement (ccc, finset) or a linear proof (rel).
    Translate {
        #[arg(long, value_enum, default_value_t = Backend::Ccc)]
        backend: Backend,
        /// Size of every base type or atom.
        #[arg(long, default_value_t = 2)]
        base_size: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Bounded cut-free proof search.
    Prove {
        #[arg(long, value_enum, default_value_t = ProofSystem::Linear)]
        system: ProofSystem,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Check a proof tree given as an s-expression.
    Checkproof {
        #[arg(long, value_enum)]
        system: Option<ProofSystem>,
        #[command(flatten)]
        input: Input,
    },
    /// Seeded random well-typed judgements, one per line.
    Sample {
        #[arg(long, default_value_t = 5)]
        count: usize,
        #[arg(long, default_value_t = 4)]
        depth: usize,
    },
    /// Finite categories in the JSON format.
    #[command(subcommand)]
    Cat(CatCmd),
    /// Built-in monads and comonads on finite sets.
    #[command(subcommand)]
    Monad(MonadCmd),
}

#[derive(Subcommand)]
enum CatCmd {
    /// Validate the category axioms.
    Check {
        #[command(flatten)]
        input: Input,
    },
    /// All witnesses of a universal construction.
    Find {
        #[arg(long, value_enum)]
        kind: UniversalKind,
        #[command(flatten)]
        input: Input,
        /// Object ids (product, coproduct) or arrow ids (equalizer, pullback).
        args: Vec<String>,
    },
    /// Monic, epic, iso and split flags of an arrow.
    Classify {
        #[command(flatten)]
        input: Input,
        arrow: String,
    },
    /// Enumerate natural transformations `C(A, -) ⇒ C(B, -)`.
    Yoneda {
        #[command(flatten)]
        input: Input,
        a: String,
        b: String,
    },
}

#[derive(Args)]
struct Instance {
    /// identity, exceptions, state, list or product.
    #[arg(long)]
    instance: String,
    /// Comma-separated `key=value` pairs: the instance parameter
    /// (E, xi, len, S or n) and `max`, the largest base set.
    #[arg(long, default_value = "")]
    sizes: String,
}

#[derive(Subcommand)]
enum MonadCmd {
    /// Functor, naturality, unit and associativity laws.
    Check(Instance),
    /// Build and validate the Kleisli (or co-Kleisli) category.
    Kleisli(Instance),
    /// Kleisli adjunction gives back the monad; for a comonad, co-Kleisli
    /// products and terminal object.
    Roundtrip(Instance),
    /// Identity comonad with the cartesian structure of a category.
    Linexp {
        /// chain, divisors, finset or terminal, or a category file.
        #[arg(long)]
        instance: String,
        #[arg(long, default_value = "")]
        sizes: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Auto,
    Type,
    Term,
    Judgement,
    Sequent,
    Proof,
}

#[derive(Clone, Copy, ValueEnum)]
enum TypeSystem {
    Stlc,
    Linear,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Ccc,
    Finset,
    Rel,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProofSystem {
    Nd,
    Gentzen,
    Linear,
}

impl From<ProofSystem> for System {
    fn from(s: ProofSystem) -> System {
        match s {
            ProofSystem::Nd => System::Nd,
            ProofSystem::Gentzen => System::Gentzen,
            ProofSystem::Linear => System::Linear,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum UniversalKind {
    Initial,
    Terminal,
    Product,
    Coproduct,
    Equalizer,
    Pullback,
}

/// Outcome of a command: `ok` decides exit 0 or 1.
struct Report {
    ok: bool,
    text: String,
    witness: Option<Value>,
    stats: Value,
}

impl Report {
    fn new(ok: bool, text: impl Into<String>) -> Report {
        Report {
            ok,
            text: text.into(),
            witness: None,
            stats: json!({}),
        }
    }

    fn witness(mut self, w: Value) -> Report {
        self.witness = Some(w);
        self
    }

    fn stats(mut self, s: Value) -> Report {
        self.stats = s;
        self
    }
}

/// Usage, IO and parse errors.
#[derive(Debug)]
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Fatal {
        Fatal(e.to_string())
    }
}

type Out = Result<Report, Fatal>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let notation = if cli.unicode {
        Notation::Unicode
    } else {
        Notation::Ascii
    };
    let result = run(&cli, notation);
    match result {
        Ok(r) => {
            if cli.json {
                let mut v =
                    json!({ "verdict": if r.ok { "ok" } else { "fail" }, "stats": r.stats });
                if let Some(w) = r.witness {
                    v["witness"] = w;
                }
                println!("{v}");
            } else {
                let text = fix_arrows(&r.text, notation);
                print!("{text}");
                if !text.ends_with('\n') {
                    println!();
                }
            }
            ExitCode::from(if r.ok { 0 } else { 1 })
        }
        Err(Fatal(msg)) => {
            if cli.json {
                println!(
                    "{}",
                    json!({ "verdict": "error", "stats": {}, "witness": msg })
                );
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(2)
        }
    }
}

/// Tables render maplets as `↦`; ASCII output spells them `|->`.
fn fix_arrows(s: &str, n: Notation) -> String {
    match n {
        Notation::Unicode => s.to_string(),
        Notation::Ascii => s.replace('↦', "|->").replace('•', "*"),
    }
}

fn read_input(src: &str) -> Result<String, Fatal> {
    if src == "-" {
        return Ok(std::io::read_to_string(std::io::stdin())?);
    }
    if Path::new(src).is_file() {
        return Ok(std::fs::read_to_string(src)?);
    }
    Ok(src.to_string())
}

fn run(cli: &Cli, n: Notation) -> Out {
    match &cli.cmd {
        Cmd::Parse { kind, input } => parse_cmd(*kind, &read_input(&input.input)?, n),
        Cmd::Typecheck { system, input } => typecheck_cmd(*system, &read_input(&input.input)?, n),
        Cmd::Infer { input } => infer_cmd(&read_input(&input.input)?, n),
        Cmd::Normalize { fuel, trace, input } => {
            normalize_cmd(&read_input(&input.input)?, *fuel, *trace, n)
        }
        Cmd::Eq { fuel, input } => eq_cmd(&read_input(&input.input)?, *fuel),
        Cmd::Translate {
            backend,
            base_size,
            input,
        } => translate_cmd(*backend, *base_size, &read_input(&input.input)?, n),
        Cmd::Prove {
            system,
            depth,
            input,
        } => prove_cmd(*system, *depth, &read_input(&input.input)?, n),
        Cmd::Checkproof { system, input } => checkproof_cmd(*system, &read_input(&input.input)?),
        Cmd::Sample { count, depth } => {
            let mut g = Gen::new(cli.seed);
            let mut text = String::new();
            for _ in 0..*count {
                let ctx = g.context(1, 1);
                let (t, ty) = g.typed_term(&ctx, *depth);
                text.push_str(&judgement_to_string(&ctx, &t, &ty, n));
                text.push('\n');
            }
            Ok(Report::new(true, text).stats(json!({ "seed": cli.seed })))
        }
        Cmd::Cat(c) => cat_cmd(c),
        Cmd::Monad(m) => monad_cmd(m),
    }
}

fn parse_cmd(kind: Kind, src: &str, n: Notation) -> Out {
    let text = match kind {
        Kind::Type => type_to_string(&parse_type(src)?, n),
        Kind::Term => term_to_string(&parse_term(src)?, n),
        Kind::Judgement => {
            let j = parse_judgement(src)?;
            judgement_to_string(&j.context, &j.term, &j.ty, n)
        }
        Kind::Sequent => parse_sequent(src)?.display(n),
        Kind::Proof => print_proof(&parse_proof(src)?),
        Kind::Auto => {
            if src.trim_start().starts_with('(') && parse_proof(src).is_ok() {
                print_proof(&parse_proof(src)?)
            } else if let Ok(j) = parse_judgement(src) {
                judgement_to_string(&j.context, &j.term, &j.ty, n)
            } else if let Ok(t) = parse_term(src) {
                term_to_string(&t, n)
            } else if let Ok(t) = parse_type(src) {
                type_to_string(&t, n)
            } else {
                parse_sequent(src)?.display(n)
            }
        }
    };
    Ok(Report::new(true, text))
}

fn typecheck_cmd(system: TypeSystem, src: &str, n: Notation) -> Out {
    let j = parse_judgement(src)?;
    let got = match system {
        TypeSystem::Stlc => typecheck_stlc(&j.context, &j.term, &j.ty),
        TypeSystem::Linear => typecheck_linear(&j.context, &j.term, &j.ty),
    };
    Ok(match got {
        Ok(d) => Report::new(true, d.render(n)).stats(json!({ "derivation_size": d.size() })),
        Err(e) => Report::new(false, format!("ill-typed: {e}")).witness(json!(e.to_string())),
    })
}

fn infer_cmd(src: &str, n: Notation) -> Out {
    let (ctx, t) = parse_open_term(src)?;
    Ok(match infer_derivation(&ctx, &t) {
        Ok(d) => {
            let ty = d.ty.canonical_vars();
            Report::new(true, format!("{}\n{}", type_to_string(&ty, n), d.render(n)))
                .witness(json!(type_to_string(&ty, Notation::Ascii)))
        }
        Err(e) => Report::new(false, format!("untypable: {e}")).witness(json!(e.to_string())),
    })
}

fn normalize_cmd(src: &str, fuel: usize, trace: bool, n: Notation) -> Out {
    let (_, t) = parse_open_term(src)?;
    let fuel_out =
        |e: RewriteError| Report::new(false, e.to_string()).stats(json!({ "fuel": fuel }));
    if trace {
        return Ok(match normalize_trace(&t, fuel) {
            Ok((nf, steps)) => {
                let mut text: String = steps.iter().map(|s| s.render(n) + "\n").collect();
                text.push_str(&term_to_string(&nf, n));
                Report::new(true, text)
                    .witness(json!(term_to_string(&nf, Notation::Ascii)))
                    .stats(json!({ "steps": steps.len() }))
            }
            Err(e) => fuel_out(e),
        });
    }
    Ok(match normalize(&t, fuel) {
        Ok(nf) => Report::new(true, term_to_string(&nf, n))
            .witness(json!(term_to_string(&nf, Notation::Ascii))),
        Err(e) => fuel_out(e),
    })
}

/// `ctx |- t == u : T`.
fn eq_cmd(src: &str, fuel: usize) -> Out {
    let (left, right) = src
        .split_once("==")
        .ok_or_else(|| Fatal("expected `ctx |- t == u : T`".into()))?;
    let (ctx, t) = parse_open_term(left)?;
    let j = parse_judgement(right)?;
    if !j.context.is_empty() {
        return Err(Fatal("the context goes before the first term".into()));
    }
    Ok(
        match decide_conversion_with_fuel(&ctx, &t, &j.term, &j.ty, fuel) {
            Ok(true) => Report::new(true, "convertible"),
            Ok(false) => Report::new(false, "not convertible"),
            Err(e) => Report::new(false, e.to_string()).witness(json!(e.to_string())),
        },
    )
}

fn translate_cmd(backend: Backend, k: usize, src: &str, n: Notation) -> Out {
    if let Backend::Rel = backend {
        let p = parse_proof(src)?;
        let mut sizes = BTreeMap::new();
        for f in p.sequent.hyps.iter().chain([&p.sequent.concl]) {
            for a in f.to_type().base_names() {
                sizes.insert(a, k);
            }
        }
        let r = translate_linear_proof(&p, &sizes)?;
        return Ok(Report::new(true, r.render()).stats(json!({ "dom": r.dom, "cod": r.cod })));
    }
    let j = parse_judgement(src)?;
    let d = match typecheck_stlc(&j.context, &j.term, &j.ty) {
        Ok(d) => d,
        Err(e) => return Ok(Report::new(false, format!("ill-typed: {e}"))),
    };
    let m = translate_stlc(&d)?;
    Ok(match backend {
        Backend::Ccc => Report::new(true, m.display(n)),
        _ => {
            let mut sizes = BTreeMap::new();
            for ty in j.context.iter().map(|(_, t)| t).chain([&j.ty]) {
                for b in ty.base_names() {
                    sizes.insert(b, k);
                }
            }
            let table = eval_finset(&m, &sizes)?;
            Report::new(true, table.render(&sizes)).stats(json!({ "entries": table.table.len() }))
        }
    })
}

fn prove_cmd(system: ProofSystem, depth: usize, src: &str, n: Notation) -> Out {
    let s = parse_sequent(src)?;
    Ok(match search_cutfree_in(&s, system.into(), depth)? {
        Some(p) => {
            let text = print_proof(&p);
            Report::new(true, text.clone())
                .witness(json!(text))
                .stats(json!({ "height": p.height() }))
        }
        None => Report::new(
            false,
            format!("no cut-free proof of {} within depth {depth}", s.display(n)),
        ),
    })
}

fn checkproof_cmd(system: Option<ProofSystem>, src: &str) -> Out {
    let p = parse_proof(src)?;
    let systems: Vec<System> = match system {
        Some(s) => vec![s.into()],
        None => vec![System::Nd, System::Gentzen, System::Linear],
    };
    let mut first = None;
    for s in &systems {
        match check_proof(&p, *s) {
            Ok(()) => {
                return Ok(
                    Report::new(true, format!("valid {s} proof")).witness(json!(s.to_string()))
                )
            }
            Err(e @ ProofError::Malformed(_)) => return Err(e.into()),
            Err(e) => {
                first.get_or_insert(e);
            }
        }
    }
    let e = first.expect("at least one system");
    Ok(Report::new(false, e.to_string()).witness(json!(e.to_string())))
}

fn load_category(src: &str) -> Result<FinCategory, Fatal> {
    Ok(FinCategory::from_json(&read_input(src)?)?)
}

fn object(c: &FinCategory, id: &str) -> Result<usize, Fatal> {
    c.object_index(id)
        .ok_or_else(|| Fatal(format!("no object `{id}`")))
}

fn arrow(c: &FinCategory, id: &str) -> Result<usize, Fatal> {
    c.arrow_index(id)
        .ok_or_else(|| Fatal(format!("no arrow `{id}`")))
}

fn cat_cmd(cmd: &CatCmd) -> Out {
    match cmd {
        CatCmd::Check { input } => {
            let c = load_category(&input.input)?;
            let stats = json!({ "objects": c.n_objects(), "arrows": c.n_arrows() });
            Ok(match validate_category(&c) {
                Ok(()) => Report::new(true, "category axioms hold"),
                Err(v) => Report::new(false, v.to_string()).witness(json!(v.at)),
            }
            .stats(stats))
        }
        CatCmd::Find { kind, input, args } => {
            let c = load_category(&input.input)?;
            let two = |f: fn(&FinCategory, &str) -> Result<usize, Fatal>| -> Result<(usize, usize), Fatal> {
                match args.as_slice() {
                    [x, y] => Ok((f(&c, x)?, f(&c, y)?)),
                    _ => Err(Fatal("expected two ids".into())),
                }
            };
            let u = match kind {
                UniversalKind::Initial => Universal::Initial,
                UniversalKind::Terminal => Universal::Terminal,
                UniversalKind::Product => two(object).map(|(a, b)| Universal::Product(a, b))?,
                UniversalKind::Coproduct => two(object).map(|(a, b)| Universal::Coproduct(a, b))?,
                UniversalKind::Equalizer => two(arrow).map(|(f, g)| Universal::Equalizer(f, g))?,
                UniversalKind::Pullback => two(arrow).map(|(f, g)| Universal::Pullback(f, g))?,
            };
            let ws = find_universal(&c, u);
            let mut text = String::new();
            let mut shown = Vec::new();
            for w in &ws {
                let legs: Vec<&str> = w.arrows.iter().map(|&f| c.arrow_id(f)).collect();
                text.push_str(&format!("{}  [{}]\n", c.objects()[w.apex], legs.join(", ")));
                shown.push(json!({ "apex": c.objects()[w.apex], "arrows": legs }));
            }
            let isos = ws
                .windows(2)
                .all(|p| connecting_isos(&c, u, &p[0], &p[1]).len() == 1);
            if ws.is_empty() {
                text.push_str("none\n");
            }
            Ok(Report::new(!ws.is_empty(), text)
                .witness(json!(shown))
                .stats(json!({ "witnesses": ws.len(), "unique_isos": isos })))
        }
        CatCmd::Classify { input, arrow: id } => {
            let c = load_category(&input.input)?;
            let k = classify_arrow(&c, arrow(&c, id)?);
            let text = format!(
                "monic: {}\nepic: {}\niso: {}\nsplit monic: {}\nsplit epic: {}\n",
                k.monic, k.epic, k.iso, k.split_monic, k.split_epic
            );
            Ok(Report::new(true, text).witness(serde_json::to_value(k)?))
        }
        CatCmd::Yoneda { input, a, b } => {
            let c = load_category(&input.input)?;
            let (a, b) = (object(&c, a)?, object(&c, b)?);
            let r = yoneda_check(&c, a, b);
            let ok = r.transformations == r.hom_size && r.representable;
            let text = format!(
                "transformations: {}\nhom size: {}\nrepresentable: {}\n",
                r.transformations, r.hom_size, r.representable
            );
            Ok(Report::new(ok, text).stats(json!({
                "transformations": r.transformations,
                "hom_size": r.hom_size,
            })))
        }
    }
}

/// `key=value,…` into a map; unknown keys are kept for the caller to reject.
fn parse_sizes(s: &str) -> Result<BTreeMap<String, usize>, Fatal> {
    let mut out = BTreeMap::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Fatal(format!("expected key=value, got `{part}`")))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| Fatal(format!("`{v}` is not a size")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn instance(inst: &Instance) -> Result<(Builtin, usize), Fatal> {
    let mut sizes = parse_sizes(&inst.sizes)?;
    let max = sizes.remove("max").unwrap_or(2);
    let key = match inst.instance.as_str() {
        "exceptions" => "E",
        "state" => "xi",
        "list" => "len",
        "product" => "S",
        _ => "n",
    };
    let size = sizes.remove(key).or_else(|| sizes.remove("n")).unwrap_or(2);
    if let Some(k) = sizes.keys().next() {
        return Err(Fatal(format!(
            "unknown size `{k}` for instance `{}`",
            inst.instance
        )));
    }
    Ok((builtin(&inst.instance, size)?, max))
}

fn verdict(name: impl std::fmt::Display, what: &str, r: Result<usize, MonadError>) -> Out {
    match r {
        Ok(n) => Ok(
            Report::new(true, format!("{name}: {what} hold ({n} instances)"))
                .stats(json!({ "instances": n })),
        ),
        Err(MonadError::Law(v)) => {
            Ok(Report::new(false, format!("{name}: {v}"))
                .witness(json!({ "law": v.law, "at": v.at })))
        }
        Err(e) => Err(e.into()),
    }
}

fn monad_cmd(cmd: &MonadCmd) -> Out {
    match cmd {
        MonadCmd::Check(inst) => {
            let (b, max) = instance(inst)?;
            match b {
                Builtin::Monad(m) => verdict(
                    m.name(),
                    "monad laws",
                    check_set_monad(m.as_ref(), max, DEFAULT_CAP).map(|c| c.instances),
                ),
                Builtin::Comonad(q) => verdict(
                    q.name(),
                    "comonad laws",
                    check_set_comonad(q.as_ref(), max, DEFAULT_CAP).map(|c| c.instances),
                ),
            }
        }
        MonadCmd::Kleisli(inst) => {
            let (b, max) = instance(inst)?;
            let sizes: Vec<usize> = (0..=max).collect();
            let (name, built) = match &b {
                Builtin::Monad(m) => (m.name(), kleisli_sets(m.as_ref(), &sizes, DEFAULT_CAP)),
                Builtin::Comonad(q) => (q.name(), cokleisli_sets(q.as_ref(), &sizes, DEFAULT_CAP)),
            };
            let built = match built {
                Ok(k) => k,
                Err(MonadError::Law(v)) => return verdict(name, "", Err(MonadError::Law(v))),
                Err(e) => return Err(e.into()),
            };
            let c = &built.cat;
            let mut text = String::new();
            for a in 0..c.n_objects() {
                for b in 0..c.n_objects() {
                    text.push_str(&format!(
                        "{} -> {}: {}\n",
                        c.objects()[a],
                        c.objects()[b],
                        c.hom(a, b).len()
                    ));
                }
            }
            Ok(match validate_category(c) {
                Ok(()) => Report::new(true, text),
                Err(v) => {
                    Report::new(false, v.to_string()).witness(json!({ "law": v.law, "at": v.at }))
                }
            }
            .stats(json!({ "objects": c.n_objects(), "arrows": c.n_arrows() })))
        }
        MonadCmd::Roundtrip(inst) => {
            let (b, max) = instance(inst)?;
            match b {
                Builtin::Monad(m) => verdict(
                    m.name(),
                    "Kleisli roundtrip equations",
                    kleisli_roundtrip_sets(m.as_ref(), max, DEFAULT_CAP).map(|c| c.instances),
                ),
                Builtin::Comonad(q) => verdict(
                    q.name(),
                    "co-Kleisli products",
                    cokleisli_products_sets(q.as_ref(), max, false, DEFAULT_CAP)
                        .map(|c| c.instances),
                ),
            }
        }
        MonadCmd::Linexp { instance, sizes } => {
            let sizes = parse_sizes(sizes)?;
            let n = sizes.get("n").copied().unwrap_or(4);
            let c = match instance.as_str() {
                "chain" => chw_core::cat::chain(n),
                "divisors" => chw_core::cat::divisors(n as u64),
                "finset" => chw_core::cat::finset(n).cat,
                "terminal" => chw_core::cat::terminal(),
                path => load_category(path)?,
            };
            validate_category(&c).map_err(|v| Fatal(format!("not a category: {v}")))?;
            let Some(mon) = cartesian(&c) else {
                return Ok(Report::new(false, "no terminal object or binary products"));
            };
            let lx = LinExp::identity_cartesian(&c, &mon);
            let checked =
                check_linear_exponential(&c, &mon, &lx).and_then(|()| exponential_counts(&c, &mon));
            Ok(match checked {
                Ok(counts) => Report::new(true, "linear exponential comonad diagrams hold")
                    .stats(json!({ "objects": c.n_objects(), "hom_counts": counts.len() })),
                Err(v) => {
                    Report::new(false, v.to_string()).witness(json!({ "law": v.law, "at": v.at }))
                }
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_parse() {
        let s = parse_sizes("E=1, max=2").unwrap();
        assert_eq!(s["E"], 1);
        assert_eq!(s["max"], 2);
        assert!(parse_sizes("E").is_err());
    }

    #[test]
    fn cli_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
