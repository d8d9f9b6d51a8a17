use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use mtp_core::arith::Rational;
use mtp_core::bound::{decide_bound, BoundKind, BoundOptions};
use mtp_core::factor::factorize;
use mtp_core::mtp::{parse, MtpExpr};
use mtp_core::sign::{decide_on_bounded, decide_on_halfline, SignKind, SignOptions, SignVerdict};
use mtp_core::trace::Trace;
use mtp_core::Error;

#[derive(Parser)]
#[command(
    name = "mtp",
    version,
    about = "Decide sign, root bounds and factorizations of mixed trigonometric-polynomials"
)]
struct Cli {
    #[command(subcommand)]
    task: Task,
}

#[derive(Subcommand)]
enum Task {
    /// Decide the sign of EXPR on (0,+inf) or on (0,T).
    Sign {
        expr: String,
        /// Decide on (0,T) instead of the positive half-line.
        #[arg(long, value_name = "T", value_parser = parse_rational)]
        upto: Option<Rational>,
        #[command(flatten)]
        common: Common,
    },
    /// Decide whether the positive roots of EXPR are bounded.
    Bound {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
    /// Square-free factorization of EXPR into real factors.
    Factor {
        expr: String,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Include every exact intermediate.
    #[arg(long)]
    trace: bool,
    /// Width of the root isolation intervals.
    #[arg(long, value_name = "Q", default_value = "1/10", value_parser = parse_rational)]
    isolation_width: Rational,
    /// Largest odd Taylor degree for the arctan bounds.
    #[arg(long, value_name = "N", default_value_t = 63, value_parser = parse_taylor_degree)]
    max_taylor_degree: u32,
    /// Largest bisection depth of (0,1) for the arctan bounds.
    #[arg(long, value_name = "N", default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
    max_bisection_depth: u32,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let q: Rational = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a rational number"))?;
    if q <= Rational::from_integer(0.into()) {
        return Err(format!("`{s}` is not positive"));
    }
    Ok(q)
}

fn parse_taylor_degree(s: &str) -> Result<u32, String> {
    let n: u32 = s
        .parse()
        .map_err(|_| format!("`{s}` is not a natural number"))?;
    if n < 3 || n % 2 == 0 {
        return Err(format!("Taylor degree must be odd and at least 3, got {n}"));
    }
    Ok(n)
}

fn exact(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

struct Report {
    task: &'static str,
    input: String,
    verdict: String,
    summary: String,
    interval: Option<String>,
    fields: Map<String, Value>,
    trace: Trace,
    inconclusive: bool,
}

impl Report {
    fn emit(&self, common: &Common) {
        match common.format {
            Format::Text => {
                println!("{}", self.summary);
                if common.trace {
                    println!("trace:");
                    for s in self.trace.steps() {
                        println!("  {}: {}", s.step, s.detail);
                    }
                }
            }
            Format::Json => {
                let mut obj = Map::new();
                obj.insert("task".into(), json!(self.task));
                obj.insert("input".into(), json!(self.input));
                obj.insert("verdict".into(), json!(self.verdict));
                obj.insert(
                    "interval".into(),
                    self.interval.as_ref().map_or(Value::Null, |i| json!(i)),
                );
                obj.extend(self.fields.clone());
                if common.trace {
                    let steps: Vec<Value> = self
                        .trace
                        .steps()
                        .iter()
                        .map(|s| json!({"step": s.step, "detail": s.detail}))
                        .collect();
                    obj.insert("trace".into(), Value::Array(steps));
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable report")
                );
            }
        }
    }
}

fn sign_name(v: &SignVerdict) -> &'static str {
    if v.inconclusive {
        return "inconclusive";
    }
    match v.kind {
        SignKind::Positive => "positive",
        SignKind::NonNegative => "nonnegative",
        SignKind::Negative => "negative",
        SignKind::NonPositive => "nonpositive",
        SignKind::NoConstantSign => "no_constant_sign",
        SignKind::IdenticallyZero => "identically_zero",
    }
}

fn factor_list(items: impl Iterator<Item = (String, u32)>) -> Value {
    Value::Array(
        items
            .map(|(e, k)| json!({"expr": e, "exponent": k}))
            .collect(),
    )
}

fn run_sign(
    e: &MtpExpr,
    input: &str,
    upto: Option<&Rational>,
    opts: &SignOptions,
) -> Result<Report, Error> {
    let v = match upto {
        Some(t) => decide_on_bounded(e, t, opts)?,
        None => decide_on_halfline(e, opts)?,
    };
    let mut fields = Map::new();
    if let Some(c) = &v.constant {
        fields.insert("constant".into(), json!(exact(c)));
        fields.insert(
            "factors".into(),
            factor_list(
                v.factors
                    .iter()
                    .map(|f| (f.expr.to_string(), f.multiplicity)),
            ),
        );
    }
    Ok(Report {
        task: "sign",
        input: input.into(),
        verdict: sign_name(&v).into(),
        summary: v.to_string(),
        interval: Some(v.interval.to_string()),
        fields,
        inconclusive: v.inconclusive,
        trace: v.trace,
    })
}

fn run_bound(e: &MtpExpr, input: &str, opts: &BoundOptions) -> Result<Report, Error> {
    let v = decide_bound(e, opts)?;
    let mut fields = Map::new();
    let (verdict, summary) = match &v.kind {
        BoundKind::Bounded(b) => {
            fields.insert("bound".into(), json!(exact(b)));
            ("bounded", format!("positive roots bounded by {b}"))
        }
        BoundKind::Unbounded => ("unbounded", "positive roots unbounded".into()),
        BoundKind::IdenticallyZero => ("identically_zero", "F(x) = 0 identically".into()),
    };
    Ok(Report {
        task: "bound",
        input: input.into(),
        verdict: verdict.into(),
        summary,
        interval: Some("(0,+inf)".into()),
        fields,
        trace: v.trace,
        inconclusive: false,
    })
}

fn run_factor(e: &MtpExpr, input: &str) -> Result<Report, Error> {
    let fac = match factorize(e) {
        Ok(f) => f,
        Err(Error::IdenticallyZero) => {
            let mut trace = Trace::new();
            trace.push("input", "identically zero");
            return Ok(Report {
                task: "factor",
                input: input.into(),
                verdict: "identically_zero".into(),
                summary: "F(x) = 0 identically".into(),
                interval: None,
                fields: Map::new(),
                trace,
                inconclusive: false,
            });
        }
        Err(err) => return Err(err),
    };
    let mut trace = Trace::new();
    trace.push("laurent image", &fac.image);
    trace.push("leading coefficient", &fac.leading);
    for (i, f) in fac.factors.iter().enumerate() {
        trace.push(
            format!("f{}", i + 1),
            format!(
                "{} (multiplicity {}, C = {}, degree {})",
                f.phased, f.multiplicity, f.unit, f.degree
            ),
        );
        trace.push(format!("g{}", i + 1), &f.expr);
    }
    trace.push("C0", &fac.constant);
    trace.push("phased form", fac.phased_string());
    let mut fields = Map::new();
    fields.insert("constant".into(), json!(exact(&fac.constant)));
    fields.insert(
        "factors".into(),
        factor_list(
            fac.factors
                .iter()
                .map(|f| (f.expr.to_string(), f.multiplicity)),
        ),
    );
    fields.insert("squarefree".into(), json!(fac.is_squarefree()));
    Ok(Report {
        task: "factor",
        input: input.into(),
        verdict: if fac.is_squarefree() {
            "squarefree"
        } else {
            "repeated_factors"
        }
        .into(),
        summary: format!("F(x) = {fac}"),
        interval: None,
        fields,
        trace,
        inconclusive: false,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (text, common) = match &cli.task {
        Task::Sign { expr, common, .. }
        | Task::Bound { expr, common }
        | Task::Factor { expr, common } => (expr.as_str(), common),
    };
    let e = match parse(text) {
        Ok(e) => e,
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::Parse { position, .. } = err {
                eprintln!("  {text}");
                eprintln!("  {}^", " ".repeat(position));
            }
            return ExitCode::from(2);
        }
    };
    let bound = BoundOptions {
        width: common.isolation_width.clone(),
        ..Default::default()
    };
    let mut opts = SignOptions {
        bound: bound.clone(),
        ..Default::default()
    };
    opts.arctan.max_degree = common.max_taylor_degree;
    opts.arctan.max_depth = common.max_bisection_depth;
    let report = match &cli.task {
        Task::Sign { upto, .. } => run_sign(&e, text, upto.as_ref(), &opts),
        Task::Bound { .. } => run_bound(&e, text, &bound),
        Task::Factor { .. } => run_factor(&e, text),
    };
    match report {
        Ok(r) => {
            r.emit(common);
            if r.inconclusive {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
