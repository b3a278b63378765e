//! `pomcka`: decide equality of rational pomset languages, with or without
//! the exchange law, and synthesize Boolean combinations and ideal closures.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use pomcka_core::boolean::{boolean_term, decide_equiv, Equivalence, SetOp};
use pomcka_core::ideal::IdealEngine;
use pomcka_core::oracle::{brute_idsp_slice, brute_slice, MAX_ENUM_VERTICES};
use pomcka_core::term::{member, slice, SLICE_CAP};
use pomcka_core::{Alphabet, Budget, Error, SpPomset, Term};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "pomcka", version, about = "Equivalence and ideal closure for rational pomset languages")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Print one JSON object instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Override a resource limit, as KEY=VALUE (repeatable).
    #[arg(long = "budget", value_name = "KEY=VALUE", global = true)]
    budget: Vec<String>,
    /// Re-check the result against the brute-force semantics on small pomsets.
    #[arg(long, global = true)]
    oracle_check: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Language equality.
    Eq { t1: String, t2: String },
    /// Equality modulo the exchange law (terms without `^`).
    Ideq { t1: String, t2: String },
    /// A term for the difference of two languages.
    Diff { t1: String, t2: String },
    /// A term for the intersection of two languages.
    Meet { t1: String, t2: String },
    /// Membership of a pomset in a language.
    Member {
        #[arg(short = 't', long = "term")]
        term: String,
        #[arg(short = 'p', long = "pomset")]
        pomset: String,
    },
    /// Members with at most N vertices.
    Enum {
        #[arg(short = 'n', default_value_t = 3)]
        n: usize,
        term: String,
    },
    /// A term for the series-parallel ideal closure.
    Closure { term: String },
}

#[derive(Serialize, Default)]
struct Verdict {
    command: &'static str,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    term: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    members: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_check: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    elapsed: f64,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Core(Error),
    Oracle(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Usage(m) => write!(f, "{m}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Oracle(m) => write!(f, "oracle check failed: {m}"),
        }
    }
}

type Out = Result<Verdict, Failure>;

struct Ctx {
    al: Alphabet,
    budget: Budget,
    oracle: bool,
}

impl Ctx {
    fn parse(&mut self, text: &str) -> Result<Term, Failure> {
        Ok(self.al.parse_term(text)?)
    }

    fn bw(&mut self, text: &str) -> Result<Term, Failure> {
        let t = self.parse(text)?;
        if !t.is_bw_rational() {
            return Err(Failure::Usage(format!(
                "`{text}` uses parallel iteration `^`; exchange-law reasoning is only available for terms without it"
            )));
        }
        Ok(t)
    }

    fn n(&self) -> usize {
        self.budget.oracle_size.min(MAX_ENUM_VERTICES)
    }

    fn verdict(&self, command: &'static str, eq: Equivalence) -> Verdict {
        match eq {
            Equivalence::Equal => Verdict { command, status: "equal", ..Default::default() },
            Equivalence::NotEqual(w) => {
                Verdict { command, status: "not_equal", witness: Some(self.al.render_pomset(&w)), ..Default::default() }
            }
        }
    }
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), Failure> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Oracle(what()))
    }
}

fn run(cmd: &Cmd, ctx: &mut Ctx) -> Out {
    let mut v = match cmd {
        Cmd::Eq { t1, t2 } => {
            let (a, b) = (ctx.parse(t1)?, ctx.parse(t2)?);
            let eq = decide_equiv(&a, &b, &ctx.budget)?;
            if ctx.oracle {
                let n = ctx.n();
                match &eq {
                    Equivalence::Equal => check(brute_slice(&a, n)? == brute_slice(&b, n)?, || {
                        format!("slices up to size {n} differ")
                    })?,
                    Equivalence::NotEqual(w) => {
                        check(member(w, &a) != member(w, &b), || "witness is not in exactly one language".into())?
                    }
                }
            }
            ctx.verdict("eq", eq)
        }
        Cmd::Ideq { t1, t2 } => {
            let (a, b) = (ctx.bw(t1)?, ctx.bw(t2)?);
            let budget = ctx.budget;
            let mut engine = IdealEngine::new(&budget);
            let eq = engine.decide_ex_equiv(&a, &b)?;
            if ctx.oracle {
                let n = ctx.n();
                match &eq {
                    Equivalence::Equal => check(brute_idsp_slice(&a, n)? == brute_idsp_slice(&b, n)?, || {
                        format!("closure slices up to size {n} differ")
                    })?,
                    Equivalence::NotEqual(w) if w.size() <= MAX_ENUM_VERTICES => {
                        let k = w.size();
                        let (ia, ib) = (brute_idsp_slice(&a, k)?, brute_idsp_slice(&b, k)?);
                        check(ia.contains(w) != ib.contains(w), || "witness is not in exactly one closure".into())?
                    }
                    Equivalence::NotEqual(_) => {}
                }
            }
            ctx.verdict("ideq", eq)
        }
        Cmd::Diff { t1, t2 } | Cmd::Meet { t1, t2 } => {
            let (a, b) = (ctx.parse(t1)?, ctx.parse(t2)?);
            let diff = matches!(cmd, Cmd::Diff { .. });
            let op = if diff { SetOp::Difference } else { SetOp::Intersection };
            let t = boolean_term(op, &a, &b, &ctx.budget)?;
            if ctx.oracle {
                let n = ctx.n();
                let (sa, sb) = (brute_slice(&a, n)?, brute_slice(&b, n)?);
                let want: BTreeSet<SpPomset> =
                    if diff { sa.difference(&sb).cloned().collect() } else { sa.intersection(&sb).cloned().collect() };
                check(slice(&t, n)? == want, || format!("result slice up to size {n} is wrong"))?;
            }
            let command = if diff { "diff" } else { "meet" };
            Verdict { command, status: "ok", term: Some(ctx.al.render_term(&t)), ..Default::default() }
        }
        Cmd::Member { term, pomset } => {
            let t = ctx.parse(term)?;
            let p = ctx.al.parse_pomset(pomset)?;
            let r = member(&p, &t);
            if ctx.oracle && p.size() <= MAX_ENUM_VERTICES {
                check(brute_slice(&t, p.size())?.contains(&p) == r, || "membership disagrees".into())?;
            }
            Verdict { command: "member", status: "ok", result: Some(r), ..Default::default() }
        }
        Cmd::Enum { n, term } => {
            if *n > SLICE_CAP {
                return Err(Failure::Usage(format!("-n must be at most {SLICE_CAP}")));
            }
            let t = ctx.parse(term)?;
            let s = slice(&t, *n)?;
            if ctx.oracle && *n <= MAX_ENUM_VERTICES {
                check(brute_slice(&t, *n)? == s, || "slice disagrees with the brute-force semantics".into())?;
            }
            let mut ps: Vec<SpPomset> = s.into_iter().collect();
            ps.sort_by(|a, b| (a.size(), a).cmp(&(b.size(), b)));
            let members = ps.iter().map(|p| ctx.al.render_pomset(p)).collect();
            Verdict { command: "enum", status: "ok", members: Some(members), ..Default::default() }
        }
        Cmd::Closure { term } => {
            let t = ctx.bw(term)?;
            let budget = ctx.budget;
            let c = IdealEngine::new(&budget).idsp_closure_term(&t)?;
            if ctx.oracle {
                let n = ctx.n();
                check(slice(&c, n)? == brute_idsp_slice(&t, n)?, || {
                    format!("closure slice up to size {n} is wrong")
                })?;
            }
            Verdict { command: "closure", status: "ok", term: Some(ctx.al.render_term(&c)), ..Default::default() }
        }
    };
    if ctx.oracle {
        v.oracle_check = Some("passed");
    }
    Ok(v)
}

fn command_name(cmd: &Cmd) -> &'static str {
    match cmd {
        Cmd::Eq { .. } => "eq",
        Cmd::Ideq { .. } => "ideq",
        Cmd::Diff { .. } => "diff",
        Cmd::Meet { .. } => "meet",
        Cmd::Member { .. } => "member",
        Cmd::Enum { .. } => "enum",
        Cmd::Closure { .. } => "closure",
    }
}

fn parse_budget(items: &[String]) -> Result<Budget, Failure> {
    let mut b = Budget::default();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--budget expects KEY=VALUE, got `{item}`")))?;
        let v: usize = v.trim().parse().map_err(|_| Failure::Usage(format!("--budget value `{v}` is not a number")))?;
        if !b.set(k.trim(), v) {
            return Err(Failure::Usage(format!(
                "unknown budget key `{k}` (known: {})",
                Budget::KEYS.join(", ")
            )));
        }
    }
    Ok(b)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = parse_budget(&cli.opts.budget).and_then(|budget| {
        let mut ctx = Ctx { al: Alphabet::new(), budget, oracle: cli.opts.oracle_check };
        run(&cli.cmd, &mut ctx)
    });
    let elapsed_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (mut v, code) = match outcome {
        Ok(v) => {
            let code = match (v.status, v.result) {
                ("not_equal", _) | (_, Some(false)) => 1,
                _ => 0,
            };
            (v, code)
        }
        Err(e) => {
            let v = Verdict {
                command: command_name(&cli.cmd),
                status: "error",
                oracle_check: matches!(e, Failure::Oracle(_)).then_some("failed"),
                error: Some(e.to_string()),
                ..Default::default()
            };
            (v, 2)
        }
    };
    v.elapsed = elapsed_ms;
    if cli.opts.json {
        println!("{}", serde_json::to_string(&v).expect("verdicts serialize"));
    } else if let Some(e) = &v.error {
        eprintln!("error: {e}");
    } else {
        match (&v.term, v.result, &v.members) {
            (Some(t), _, _) => println!("{t}"),
            (_, Some(r), _) => println!("{r}"),
            (_, _, Some(ms)) => ms.iter().for_each(|m| println!("{m}")),
            _ => {
                println!("{}", v.status);
                if let Some(w) = &v.witness {
                    println!("witness: {w}");
                }
            }
        }
    }
    ExitCode::from(code)
}
