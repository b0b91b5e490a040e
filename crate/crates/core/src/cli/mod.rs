//! Command-line front end. Every command prints one JSON document.

pub mod batch;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::arith::{check_prime, parse_bipoly, parse_factored, Order};
use crate::curves::{canonicalize, curve_eq, is_good, Goodness, DEFAULT_CURVE_PREC};
use crate::error::Error;
use crate::hecke::{Basis, Direction, HeckeAlgebra, OracleConfig, TransitionPath};
use crate::lattice::{cotype_counts, hall_number, iwasawa_count, smith_cartan, LatMat, DEFAULT_ENUMERATION_CAP};
use crate::ralgebra::{alpha, collection_leq, iota, IotaMode, RElement, RMonomial};
use crate::rootdatum::{parse_coweight, Coweight, RootDatum};
use crate::selftest::{self, Suite};
use crate::symbols::{flag_composite, parshin_sum};
use crate::{grass, lattice};

pub use batch::{fixed_pair, reciprocity_batch, PairShape, DEFAULT_SEED, GENERATOR};

pub const THREADS_ENV: &str = "HECKEFORGE_THREADS";

#[derive(Parser, Debug)]
#[command(name = "heckeforge", version, about = "Hecke algebra, lattice and tame symbol computations")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Global {
    /// Residue characteristic.
    #[arg(long, global = true)]
    pub p: Option<u64>,
    /// Group, e.g. GL3, PGL2, B2, G2.
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Comma-separated coweight.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub coweight: Option<String>,
    /// Series precision.
    #[arg(long, global = true)]
    pub prec: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Largest pole window for Iwasawa counts.
    #[arg(long = "window-cap", global = true)]
    pub window_cap: Option<u32>,
    /// Compact single-line JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Flag composites and the Parshin sum of a pair.
    Symbol {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Include the per-flag values.
        #[arg(long)]
        flags: bool,
    },
    /// Seeded random reciprocity batch.
    Reciprocity,
    #[command(subcommand)]
    Curve(CurveCmd),
    #[command(subcommand)]
    Grass(GrassCmd),
    #[command(subcommand)]
    Hecke(HeckeCmd),
    #[command(subcommand)]
    Lattice(LatticeCmd),
    #[command(subcommand)]
    Ralg(RalgCmd),
    /// Runs every acceptance criterion.
    Selftest {
        #[arg(long, default_value = "quick")]
        suite: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CurveCmd {
    Good {
        #[arg(long)]
        f: String,
    },
    Canon {
        #[arg(long)]
        f: String,
    },
    Eq {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GrassCmd {
    Dim,
    Count,
    Closure,
    Support {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum HeckeCmd {
    /// Product of two basis elements.
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value = "T")]
        basis: String,
    },
    Transition {
        #[arg(long, default_value = "A->T")]
        direction: String,
        /// satake or lusztig; defaults by group.
        #[arg(long)]
        path: Option<String>,
    },
    /// Leading T-terms of a basis element.
    Leading {
        #[arg(long, default_value = "A")]
        basis: String,
    },
    /// Satake image of the characteristic function.
    Satake,
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    /// Cartan invariant of a matrix given as nested coefficient lists.
    Smith {
        #[arg(long)]
        matrix: String,
    },
    Hall {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long)]
        q: u32,
    },
    /// Index-`q^k` sublattices of `O^n` grouped by cotype.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: u32,
    },
    /// Unipotent coset count for `--coweight` (lambda) and `--mu`.
    Iwasawa {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand, Debug)]
pub enum RalgCmd {
    /// Product of two monomials written `curve : coweight ; ...`.
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
    Iota {
        #[arg(long, allow_hyphen_values = true)]
        gen: String,
        #[arg(long, default_value = "exact")]
        mode: String,
    },
    Order {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return Outcome { code, stdout, stderr };
        }
    };
    let compact = cli.global.json;
    let result = init_threads().and_then(|_| resolve(cli.global.clone())).and_then(|s| dispatch(&s, cli.command));
    match result {
        Ok((value, ok)) => {
            let text = if compact { serde_json::to_string(&value) } else { serde_json::to_string_pretty(&value) };
            Outcome { code: if ok { 0 } else { 1 }, stdout: text.expect("json") + "\n", stderr: String::new() }
        }
        Err(Failure::Usage(m)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {m}\n") },
        Err(Failure::Domain(e)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn init_threads() -> CliResult<()> {
    let Ok(v) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| usage(format!("{THREADS_ENV} must be a positive integer")))?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Flags merged over the config file.
#[derive(Clone, Debug, Default)]
pub struct Settings {
    p: Option<u64>,
    group: Option<String>,
    coweight: Option<String>,
    prec: Option<usize>,
    seed: Option<u64>,
    trials: Option<usize>,
    window_cap: Option<u32>,
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> CliResult<T> {
    v.parse().map_err(|_| usage(format!("invalid value {v:?} for {key}")))
}

/// Reads `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> std::result::Result<BTreeMap<String, String>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
        out.insert(k.trim().replace('_', "-"), v.trim().trim_matches('"').to_string());
    }
    Ok(out)
}

fn resolve(g: Global) -> CliResult<Settings> {
    let mut s = Settings::default();
    if let Some(path) = &g.config {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
        for (k, v) in parse_config(&text).map_err(usage)? {
            match k.as_str() {
                "p" => s.p = Some(parse_num(&k, &v)?),
                "group" => s.group = Some(v),
                "coweight" => s.coweight = Some(v),
                "prec" => s.prec = Some(parse_num(&k, &v)?),
                "seed" => s.seed = Some(parse_num(&k, &v)?),
                "trials" => s.trials = Some(parse_num(&k, &v)?),
                "window-cap" => s.window_cap = Some(parse_num(&k, &v)?),
                _ => return Err(usage(format!("unknown config key {k:?}"))),
            }
        }
    }
    s.p = g.p.or(s.p);
    s.group = g.group.or(s.group);
    s.coweight = g.coweight.or(s.coweight);
    s.prec = g.prec.or(s.prec);
    s.seed = g.seed.or(s.seed);
    s.trials = g.trials.or(s.trials);
    s.window_cap = g.window_cap.or(s.window_cap);
    Ok(s)
}

impl Settings {
    fn p(&self) -> CliResult<u32> {
        let p = self.p.ok_or_else(|| usage("--p is required"))?;
        Ok(check_prime(p)?)
    }

    fn p_or(&self, default: u64) -> CliResult<u32> {
        Ok(check_prime(self.p.unwrap_or(default))?)
    }

    fn datum(&self) -> CliResult<RootDatum> {
        Ok(RootDatum::parse(self.group.as_deref().ok_or_else(|| usage("--group is required"))?)?)
    }

    fn coweight(&self) -> CliResult<Coweight> {
        coweight_arg(self.coweight.as_deref().ok_or_else(|| usage("--coweight is required"))?)
    }

    fn prec(&self) -> usize {
        self.prec.unwrap_or(DEFAULT_CURVE_PREC)
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn algebra(&self) -> CliResult<HeckeAlgebra> {
        let oracle = OracleConfig { window_cap: self.window_cap.unwrap_or(lattice::DEFAULT_WINDOW_CAP), ..Default::default() };
        Ok(HeckeAlgebra::new(self.datum()?).with_oracle(oracle))
    }
}

fn coweight_arg(s: &str) -> CliResult<Coweight> {
    Ok(parse_coweight(s)?)
}

fn parsed<T: std::str::FromStr<Err = Error>>(s: &str) -> CliResult<T> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

/// `curve : coweight ; curve : coweight ...`
fn parse_generators(d: &RootDatum, text: &str, p: u32, prec: usize) -> CliResult<RElement> {
    let mut e = RElement::one(d.spec());
    for part in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        let (curve, cw) = part.rsplit_once(':').ok_or_else(|| usage(format!("expected curve : coweight, got {part:?}")))?;
        let c = canonicalize(&parse_bipoly(curve, p)?, prec)?;
        e = e.mul(&alpha(d, &c, &coweight_arg(cw.trim())?)?)?;
    }
    Ok(e)
}

fn single_monomial(e: &RElement) -> CliResult<RMonomial> {
    match e.terms().keys().collect::<Vec<_>>().as_slice() {
        [m] => Ok((*m).clone()),
        _ => Err(usage("expected a single monomial")),
    }
}

fn dispatch(s: &Settings, cmd: Command) -> CliResult<(Value, bool)> {
    let out = match cmd {
        Command::Symbol { f, g, flags } => {
            let p = s.p()?;
            let (f, g) = (parse_factored(&f, p)?, parse_factored(&g, p)?);
            let report = parshin_sum(&f, &g)?;
            let mut v = json!({
                "XT": flag_composite(&f, &g, Order::XT)?,
                "TX": flag_composite(&f, &g, Order::TX)?,
                "parshin_total": report.total,
            });
            if flags {
                v["flags"] = to_value(&report.flags);
            }
            v
        }
        Command::Reciprocity => {
            let trials = s.trials.unwrap_or(200);
            if trials == 0 {
                return Err(usage("--trials must be at least 1"));
            }
            let r = reciprocity_batch(s.p_or(5)?, trials, PairShape::default(), s.seed())?;
            let ok = r.parshin.failures == 0 && r.lemma_exten.failures == 0;
            return Ok((to_value(&r), ok));
        }
        Command::Curve(c) => curve(s, c)?,
        Command::Grass(c) => {
            let d = s.datum()?;
            let lam = s.coweight()?;
            match c {
                GrassCmd::Dim => json!({ "dim": grass::orbit_dim(&d, &lam)? }),
                GrassCmd::Count => json!({ "poly": grass::orbit_count(&d, &lam)?.coeffs() }),
                GrassCmd::Closure => json!({ "poly": grass::closure_count(&d, &lam)?.coeffs() }),
                GrassCmd::Support { mu } => to_value(&grass::convolution_support(&d, &lam, &coweight_arg(&mu)?)?),
            }
        }
        Command::Hecke(c) => hecke(s, c)?,
        Command::Lattice(c) => lattice_cmd(s, c)?,
        Command::Ralg(c) => ralg(s, c)?,
        Command::Selftest { suite } => {
            let r = selftest::run(parsed::<Suite>(&suite)?, s.seed());
            return Ok((to_value(&r), r.passed));
        }
    };
    Ok((out, true))
}

fn curve(s: &Settings, c: CurveCmd) -> CliResult<Value> {
    let p = s.p()?;
    let n = s.prec();
    Ok(match c {
        CurveCmd::Good { f } => {
            let g = is_good(&parse_bipoly(&f, p)?);
            json!({ "good": g == Goodness::Good, "diagnosis": g.to_string() })
        }
        CurveCmd::Canon { f } => {
            let c = canonicalize(&parse_bipoly(&f, p)?, n)?;
            json!({ "good": true, "s": c.coeffs(), "prec": c.prec() })
        }
        CurveCmd::Eq { f, g } => {
            let a = canonicalize(&parse_bipoly(&f, p)?, n)?;
            let b = canonicalize(&parse_bipoly(&g, p)?, n)?;
            json!({ "equal": curve_eq(&a, &b, n)?, "prec": n })
        }
    })
}

fn hecke(s: &Settings, c: HeckeCmd) -> CliResult<Value> {
    let h = s.algebra()?;
    Ok(match c {
        HeckeCmd::Mul { left, right, basis } => {
            let b: Basis = parsed(&basis)?;
            let x = h.basis_element(b, &coweight_arg(&left)?)?;
            let y = h.basis_element(b, &coweight_arg(&right)?)?;
            to_value(&h.mul(&x, &y)?)
        }
        HeckeCmd::Transition { direction, path } => {
            let dir: Direction = parsed(&direction)?;
            let path = match path {
                Some(p) => parsed::<TransitionPath>(&p)?,
                None => h.path(),
            };
            to_value(&h.transition_via(&s.coweight()?, dir, path)?)
        }
        HeckeCmd::Leading { basis } => {
            let e = h.basis_element(parsed(&basis)?, &s.coweight()?)?;
            to_value(&h.leading_term(&h.to_basis(&e, Basis::T)?)?)
        }
        HeckeCmd::Satake => to_value(&h.satake_of_char(&s.coweight()?)?),
    })
}

fn lattice_cmd(s: &Settings, c: LatticeCmd) -> CliResult<Value> {
    let cap = DEFAULT_ENUMERATION_CAP;
    Ok(match c {
        LatticeCmd::Smith { matrix } => {
            let entries: Vec<Vec<Vec<i64>>> =
                serde_json::from_str(&matrix).map_err(|e| usage(format!("--matrix is not a nested coefficient list: {e}")))?;
            let degree = entries.iter().flatten().map(Vec::len).max().unwrap_or(0);
            let prec = s.prec.map(|n| n as i64).unwrap_or(lattice::working_precision((degree * entries.len().max(1)) as i64));
            let m = LatMat::from_coeff_lists(s.p()?, &entries, prec)?;
            json!({ "cartan": smith_cartan(&m)? })
        }
        LatticeCmd::Hall { lambda, mu, nu, q } => {
            let n = hall_number(&coweight_arg(&lambda)?, &coweight_arg(&mu)?, &coweight_arg(&nu)?, q, cap)?;
            json!({ "q": q, "count": n })
        }
        LatticeCmd::Count { n, q, k } => {
            let counts = cotype_counts(n, q, k, cap)?;
            let total: u64 = counts.values().sum();
            let rows: Vec<Value> = counts.iter().map(|(c, k)| json!({ "cotype": c, "count": k })).collect();
            json!({ "n": n, "q": q, "k": k, "cotypes": rows, "total": total })
        }
        LatticeCmd::Iwasawa { mu, q } => {
            let lam = s.coweight()?;
            let w = s.window_cap.unwrap_or(lattice::DEFAULT_WINDOW_CAP);
            to_value(&iwasawa_count(&lam, &coweight_arg(&mu)?, q, w, cap)?)
        }
    })
}

fn ralg(s: &Settings, c: RalgCmd) -> CliResult<Value> {
    let d = s.datum()?;
    let p = s.p()?;
    let n = s.prec();
    Ok(match c {
        RalgCmd::Mul { left, right } => {
            let e = parse_generators(&d, &left, p, n)?.mul(&parse_generators(&d, &right, p, n)?)?;
            to_value(&e)
        }
        RalgCmd::Iota { gen, mode } => {
            let h = HeckeAlgebra::new(d.clone());
            to_value(&iota(&h, &parse_generators(&d, &gen, p, n)?, parsed::<IotaMode>(&mode)?)?)
        }
        RalgCmd::Order { left, right } => {
            let a = single_monomial(&parse_generators(&d, &left, p, n)?)?;
            let b = single_monomial(&parse_generators(&d, &right, p, n)?)?;
            json!({ "leq": collection_leq(&d, &a, &b), "geq": collection_leq(&d, &b, &a) })
        }
    })
}
