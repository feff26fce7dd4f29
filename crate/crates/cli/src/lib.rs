//! Front end for `cyclofact`: argument parsing, dispatch, and the text/JSON
//! emitters. `cmd_dispatch` is the whole program minus process exit.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use cyclo_core::explicit::{verify_factorization_with, VerifyOptions};
use cyclo_core::*;
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const BAD_Q: &str = "q must be an odd prime power coprime to 10";

/// A field order given as `p` or `p^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QSpec {
    pub p: u64,
    pub m: u32,
}

impl QSpec {
    pub fn q(self) -> u64 {
        self.p.pow(self.m)
    }

    pub fn context(self) -> Result<FieldContext, FieldError> {
        FieldContext::new(self.p, self.m, None)
    }
}

impl FromStr for QSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || BAD_Q.to_string();
        let (p, m) = match s.split_once('^') {
            Some((p, m)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let m: u32 = m.trim().parse().map_err(|_| bad())?;
                if !arith::is_prime(p) || m == 0 {
                    return Err(bad());
                }
                (p, m)
            }
            None => {
                let q: u64 = s.trim().parse().map_err(|_| bad())?;
                arith::prime_power(q).ok_or_else(bad)?
            }
        };
        if p == 2 || p.checked_pow(m).is_none() {
            return Err(bad());
        }
        Ok(QSpec { p, m })
    }
}

impl std::fmt::Display for QSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.m == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.m)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "cyclofact", version, about = "Explicit factorization of cyclotomic polynomials Q_{2^n r} over F_q")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for the randomized oracle.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Skip the order check in --verify for factors above this degree.
    #[arg(long, global = true)]
    pub order_limit: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor Q_{2^n r} with the closed-form engine (r = 5) or the lift (other r).
    Factor {
        #[arg(long)]
        q: QSpec,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 5)]
        r: u64,
        /// Check product, irreducibility, count, degree and order.
        #[arg(long)]
        verify: bool,
    },
    /// Sparse irreducible polynomials of order 2^n·5.
    Irreducible {
        #[arg(long)]
        q: QSpec,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "auto")]
        family: Family,
        /// Print the reciprocals instead.
        #[arg(long)]
        reciprocal: bool,
    },
    /// Factor an arbitrary polynomial with the generic oracle.
    Oracle {
        #[arg(long)]
        q: QSpec,
        /// Comma-separated ascending coefficients (canonical encodings).
        #[arg(long)]
        poly: String,
    },
    /// Factor Q_{2^n r} for any odd r ≥ 3 by lifting from Q_{2^L r}.
    Lift {
        #[arg(long)]
        q: QSpec,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        verify: bool,
    },
    /// Time the explicit engine against the oracle for n = 4..=n_max.
    Bench {
        #[arg(long)]
        q: QSpec,
        #[arg(long)]
        n_max: u32,
    },
}

/// A failed command: exit code plus a message for the error stream.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

fn usage(msg: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE, message: msg.to_string() }
}

fn field_for_r5(q: QSpec) -> Result<FieldContext, Failure> {
    if q.p == 5 {
        return Err(usage(BAD_Q));
    }
    q.context().map_err(usage)
}

fn explicit_failure(e: ExplicitError) -> Failure {
    match e {
        ExplicitError::WitnessUnsolvable(_) | ExplicitError::LiftConditions(_) => {
            Failure { code: EXIT_VERIFY, message: e.to_string() }
        }
        _ => usage(e),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum JsonQ {
    Int(u64),
    Power(String),
}

fn json_q(q: QSpec) -> JsonQ {
    if q.m == 1 {
        JsonQ::Int(q.p)
    } else {
        JsonQ::Power(q.to_string())
    }
}

#[derive(Serialize)]
struct FactorJson {
    q: JsonQ,
    n: u32,
    r: u64,
    modulus: Option<Vec<u64>>,
    degree: u64,
    order: u64,
    factors: Vec<Vec<u64>>,
}

fn tuple(values: &[u64]) -> String {
    let parts: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Serialize a factorization; byte-stable for fixed input.
pub fn emit(q: QSpec, ef: &ExplicitFactorization, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "q={q} n={} r={} count={} degree={}\n",
                ef.n,
                ef.r,
                ef.factors.len(),
                ef.meta.degree
            );
            for f in &ef.factors {
                out.push_str(&tuple(&f.values()));
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let body = FactorJson {
                q: json_q(q),
                n: ef.n,
                r: ef.r,
                modulus: ef.ctx.modulus().map(<[u64]>::to_vec),
                degree: ef.meta.degree,
                order: ef.meta.order,
                factors: ef.factors.iter().map(Poly::values).collect(),
            };
            serde_json::to_string(&body).expect("plain data serializes") + "\n"
        }
    }
}

#[derive(Serialize)]
struct SparseJson {
    q: JsonQ,
    n: u32,
    family: String,
    reciprocal: bool,
    degree: usize,
    polynomials: Vec<Vec<u64>>,
    weights: Vec<usize>,
}

fn emit_sparse(q: QSpec, n: u32, family: Family, reciprocal: bool, polys: &[Poly], format: Format) -> String {
    let degree = polys.first().map_or(0, Poly::degree);
    match format {
        Format::Text => {
            let mut out = format!("q={q} n={n} family={family} count={} degree={degree}\n", polys.len());
            for f in polys {
                out.push_str(&format!("{} weight={}\n", tuple(&f.values()), f.weight()));
            }
            out
        }
        Format::Json => {
            let body = SparseJson {
                q: json_q(q),
                n,
                family: family.id().to_string(),
                reciprocal,
                degree,
                polynomials: polys.iter().map(Poly::values).collect(),
                weights: polys.iter().map(Poly::weight).collect(),
            };
            serde_json::to_string(&body).expect("plain data serializes") + "\n"
        }
    }
}

#[derive(Serialize)]
struct OracleFactorJson {
    coefficients: Vec<u64>,
    multiplicity: u32,
}

#[derive(Serialize)]
struct OracleJson {
    q: JsonQ,
    degree: usize,
    unit: u64,
    factors: Vec<OracleFactorJson>,
}

fn emit_oracle(q: QSpec, f: &Poly, rep: &FactorizationReport, format: Format) -> String {
    match format {
        Format::Text => {
            let mut out = format!(
                "q={q} degree={} unit={} count={}\n",
                f.degree(),
                rep.unit,
                rep.factors.len()
            );
            for (g, e) in &rep.factors {
                out.push_str(&tuple(&g.values()));
                if *e > 1 {
                    out.push_str(&format!("^{e}"));
                }
                out.push('\n');
            }
            out
        }
        Format::Json => {
            let body = OracleJson {
                q: json_q(q),
                degree: f.degree(),
                unit: rep.unit.value(),
                factors: rep
                    .factors
                    .iter()
                    .map(|(g, e)| OracleFactorJson { coefficients: g.values(), multiplicity: *e })
                    .collect(),
            };
            serde_json::to_string(&body).expect("plain data serializes") + "\n"
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BenchRow {
    pub n: u32,
    pub degree: usize,
    pub explicit_ms: f64,
    pub oracle_ms: f64,
    pub ratio: f64,
    /// Set equality with the oracle, checked for n ≤ 7.
    pub equal: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BenchTable {
    pub q: u64,
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

impl BenchTable {
    pub fn to_text(&self) -> String {
        let mut out = format!("q={} seed={} reps=3\n", self.q, self.seed);
        out.push_str(&format!(
            "{:>3} {:>6} {:>12} {:>12} {:>9} {:>6}\n",
            "n", "degree", "explicit_ms", "oracle_ms", "ratio", "equal"
        ));
        for r in &self.rows {
            let eq = match r.equal {
                Some(true) => "yes",
                Some(false) => "NO",
                None => "-",
            };
            out.push_str(&format!(
                "{:>3} {:>6} {:>12.3} {:>12.3} {:>9.1} {:>6}\n",
                r.n, r.degree, r.explicit_ms, r.oracle_ms, r.ratio, eq
            ));
        }
        out
    }
}

const BENCH_REPS: usize = 3;
const BENCH_EQUALITY_MAX_N: u32 = 7;

fn median_ms<T>(mut run: impl FnMut() -> T) -> (f64, T) {
    let mut times = Vec::with_capacity(BENCH_REPS);
    let mut last = None;
    for _ in 0..BENCH_REPS {
        let t = Instant::now();
        let v = run();
        times.push(t.elapsed().as_secs_f64() * 1e3);
        last = Some(v);
    }
    times.sort_by(f64::total_cmp);
    (times[BENCH_REPS / 2], last.expect("at least one run"))
}

/// Explicit engine vs oracle on Q_{2ⁿ·5} for 4 ≤ n ≤ n_max, median of three.
pub fn bench_run(ctx: &FieldContext, n_max: u32, seed: u64) -> Result<BenchTable, ExplicitError> {
    let mut rows = Vec::new();
    for n in 4..=n_max {
        let (explicit_ms, ef) = median_ms(|| factor_explicit(ctx, n));
        let ef = ef?;
        let target = cyclotomic(ctx, 5 << n)?;
        let (oracle_ms, rep) = median_ms(|| factorize(&target, seed));
        let rep = rep?;
        let equal = (n <= BENCH_EQUALITY_MAX_N).then(|| {
            let mut got = rep.distinct();
            got.sort();
            got == ef.factors
        });
        rows.push(BenchRow {
            n,
            degree: target.degree(),
            explicit_ms,
            oracle_ms,
            ratio: oracle_ms / explicit_ms.max(1e-6),
            equal,
        });
    }
    Ok(BenchTable { q: ctx.q(), seed, rows })
}

fn parse_poly(ctx: &FieldContext, text: &str) -> Result<Poly, Failure> {
    let values = text
        .split(',')
        .map(|t| t.trim().parse::<u64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| usage("--poly takes comma-separated nonnegative integers"))?;
    let f = Poly::from_values(ctx, &values).map_err(|e| usage(format!("--poly: {e}")))?;
    if f.degree() == 0 {
        return Err(usage("--poly must have positive degree"));
    }
    Ok(f)
}

fn check(ef: &ExplicitFactorization, limit: Option<usize>, err: &mut dyn Write) -> Result<(), Failure> {
    let opts = VerifyOptions { order_degree_limit: limit.or(VerifyOptions::default().order_degree_limit) };
    let rep = verify_factorization_with(ef, opts);
    if rep.passed() {
        let order = if rep.order.is_some() { "order ok" } else { "order skipped" };
        let _ = writeln!(err, "verified: product, irreducibility, count, degree ok; {order}");
        Ok(())
    } else {
        Err(Failure { code: EXIT_VERIFY, message: format!("verification failed: {}", rep.details.join("; ")) })
    }
}

/// Run one parsed command, writing results to `out`.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    let text = match &cfg.command {
        Command::Factor { q, n, r, verify } => {
            let ctx = field_for_r5(*q)?;
            let ef = if *r == 5 {
                factor_explicit(&ctx, *n)
            } else {
                lift_general(&ctx, *r, *n, cfg.seed)
            }
            .map_err(explicit_failure)?;
            let text = emit(*q, &ef, cfg.format);
            if *verify {
                out.write_all(text.as_bytes()).map_err(usage)?;
                check(&ef, cfg.order_limit, err)?;
                return Ok(());
            }
            text
        }
        Command::Lift { q, r, n, verify } => {
            let ctx = q.context().map_err(usage)?;
            let ef = lift_general(&ctx, *r, *n, cfg.seed).map_err(explicit_failure)?;
            let text = emit(*q, &ef, cfg.format);
            if *verify {
                out.write_all(text.as_bytes()).map_err(usage)?;
                check(&ef, cfg.order_limit, err)?;
                return Ok(());
            }
            text
        }
        Command::Irreducible { q, n, family, reciprocal: recip } => {
            let ctx = field_for_r5(*q)?;
            let fam = if *family == Family::Auto { Family::for_field(&ctx) } else { *family };
            let mut polys = generate_sparse(&ctx, *n, fam).map_err(usage)?;
            if *recip {
                polys = polys.iter().map(|f| reciprocal(f).expect("f(0) ≠ 0")).collect();
            }
            emit_sparse(*q, *n, fam, *recip, &polys, cfg.format)
        }
        Command::Oracle { q, poly } => {
            let ctx = q.context().map_err(usage)?;
            let f = parse_poly(&ctx, poly)?;
            let rep = factorize(&f, cfg.seed).map_err(usage)?;
            emit_oracle(*q, &f, &rep, cfg.format)
        }
        Command::Bench { q, n_max } => {
            if *n_max < 4 {
                return Err(usage("--n-max must be at least 4"));
            }
            let ctx = field_for_r5(*q)?;
            let table = bench_run(&ctx, *n_max, cfg.seed).map_err(explicit_failure)?;
            let text = match cfg.format {
                Format::Text => table.to_text(),
                Format::Json => serde_json::to_string(&table).expect("plain data serializes") + "\n",
            };
            if table.rows.iter().any(|r| r.equal == Some(false)) {
                out.write_all(text.as_bytes()).map_err(usage)?;
                return Err(Failure { code: EXIT_VERIFY, message: "oracle disagrees with the explicit factors".into() });
            }
            text
        }
    };
    out.write_all(text.as_bytes()).map_err(usage)?;
    Ok(())
}

/// Parse `argv` (including the program name), run, and return the exit code.
pub fn cmd_dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(argv) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(rendered.as_bytes());
            } else {
                let _ = out.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match run(&cfg, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
