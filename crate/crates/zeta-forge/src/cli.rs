//! Command-line front end: `table`, `verify` and `zeta`.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::Rng;
use rayon::prelude::*;

use crate::bounds::{
    charfn_bound, improvement_table, noniid_binomial_normal_rhs, normal_rhs, prod_cos_margin, taylor_charfn_bound,
    verify_main, verify_third_abs_moment, BoundReport, EpsMode, TableRow, EPSILON_SLOPE,
};
use crate::error::{Error, Result};
use crate::fmt::sig12;
use crate::laws::{binomial_half_standardized, convolve, two_point_law, DiscreteLaw, MAX_ATOMS};
use crate::osculation::{default_window, dominance_report, oscul_coeffs, recentered_abs3_bound, DOMINANCE_GRID};
use crate::random::{random_law, random_standardized, stream, HarnessRng};
use crate::reduction::{extreme_point_decompose, extremal_three_point_search, Constraint};
use crate::zeta::{check_moments, epsilon_n, zeta_discrete, zeta_vs_normal_estimate, LawArg};

pub const THREADS_ENV: &str = "ZETA_FORGE_THREADS";

/// Largest n in the epsilon suite.
pub const EPSILON_MAX_N: u64 = 50;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "zeta-forge", version, about = "Zolotarev distances and Berry-Esseen type bounds")]
pub struct Cli {
    /// Absolute tolerance for margins and quadrature.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Write CSV here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Improvement table and worked examples as CSV.
    Table,
    /// Run verification suites and emit bound reports as CSV.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        trials: u64,
    },
    /// ζ_s between two laws.
    Zeta {
        #[arg(long = "law-a")]
        law_a: String,
        #[arg(long = "law-b")]
        law_b: String,
        #[arg(long, default_value_t = 3)]
        s: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Main,
    Normal,
    Epsilon,
    Charfn,
    Osculation,
    Reduction,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] =
        [Suite::Main, Suite::Normal, Suite::Epsilon, Suite::Charfn, Suite::Osculation, Suite::Reduction];
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub tolerance: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub threads: Option<usize>,
}

impl RunConfig {
    pub fn from_cli(cli: Cli) -> Result<RunConfig> {
        if !(cli.tol > 0.0 && cli.tol.is_finite()) {
            return Err(Error::BadInput(format!("--tol must be positive, got {}", cli.tol)));
        }
        Ok(RunConfig { command: cli.command, tolerance: cli.tol, seed: cli.seed, out: cli.out, threads: threads_from_env()? })
    }
}

fn threads_from_env() -> Result<Option<usize>> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(Some(n)),
            _ => Err(Error::BadInput(format!("{THREADS_ENV}={v}"))),
        },
    }
}

/// Runs `f` inside a pool capped at `threads` workers.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::BadInput(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = String::from(TableRow::CSV_HEADER);
    s.push('\n');
    for r in rows {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

pub fn reports_csv(reports: &[BoundReport]) -> String {
    let mut s = String::from(BoundReport::CSV_HEADER);
    s.push('\n');
    for r in reports {
        s.push_str(&r.csv_row());
        s.push('\n');
    }
    s
}

pub fn cmd_table() -> Result<String> {
    Ok(table_csv(&improvement_table()?))
}

fn trials_par<F>(trials: u64, f: F) -> Result<Vec<BoundReport>>
where
    F: Fn(u64) -> Result<Vec<BoundReport>> + Sync + Send,
{
    let nested: Vec<Result<Vec<BoundReport>>> = (0..trials).into_par_iter().map(f).collect();
    let mut out = Vec::new();
    for r in nested {
        out.extend(r?);
    }
    Ok(out)
}

fn random_laws(rng: &mut HarnessRng, max_laws: usize, max_atoms: usize) -> Result<Vec<DiscreteLaw>> {
    let n = rng.gen_range(1..=max_laws);
    (0..n).map(|_| random_law(rng, 3, max_atoms)).collect()
}

/// Random non-i.i.d. instances of the main bound and the third-moment corollary.
pub fn suite_main(trials: u64, seed: u64, tol: f64) -> Result<Vec<BoundReport>> {
    trials_par(trials, |i| {
        let mut rng = stream(seed, i);
        let laws = random_laws(&mut rng, 4, 6)?;
        Ok(vec![verify_main(&laws, tol)?, verify_third_abs_moment(&laws, tol)?])
    })
}

/// ζ₃ against the normal law for i.i.d. sums and Rademacher averages.
pub fn suite_normal(trials: u64, seed: u64, tol: f64) -> Result<Vec<BoundReport>> {
    trials_par(trials, |i| {
        let mut rng = stream(seed, 1 << 32 | i);
        let law = random_standardized(&mut rng, 3, 5)?;
        let n = rng.gen_range(1..=3usize);
        let rho = law.rho()?;
        let sum = law.convolve_power(n)?.standardize()?;
        let lhs = zeta_vs_normal_estimate(&sum, 3, 1e-11)?.value;
        let rhs = normal_rhs(rho, n as u64, EpsMode::Exact)?;
        let iid = BoundReport::new("normal_iid", vec![1.0; n], vec![rho; n], lhs, rhs, tol);

        let k = rng.gen_range(1..=5usize);
        let mut sigmas: Vec<f64> = (0..k).map(|_| rng.gen_range(0.2..2.0)).collect();
        sigmas.sort_by(|a, b| b.total_cmp(a));
        let parts: Vec<DiscreteLaw> = sigmas.iter().map(|&s| DiscreteLaw::rademacher().scale(s)).collect();
        let avg = convolve(&parts, MAX_ATOMS)?.standardize()?;
        let lhs = zeta_vs_normal_estimate(&avg, 3, 1e-11)?.value;
        let rhs = noniid_binomial_normal_rhs(&sigmas)?;
        let tight = BoundReport::new("rademacher_normal", sigmas.clone(), vec![1.0; k], lhs, rhs.tight, tol);
        let loose = BoundReport::new("rademacher_normal_loose", sigmas, vec![1.0; k], rhs.tight, rhs.loose, tol);
        Ok(vec![iid, tight, loose])
    })
}

/// ε_n between its two lines, and the upper line below 0.1352/n.
pub fn suite_epsilon(tol: f64) -> Result<Vec<BoundReport>> {
    let rows: Vec<Result<Vec<BoundReport>>> = (1..=EPSILON_MAX_N)
        .into_par_iter()
        .map(|n| {
            let e = epsilon_n(n, 1e-11)?;
            let nn = n as usize;
            let one = |name: &str, lhs, rhs| BoundReport::new(name, vec![], vec![], lhs, rhs, tol).with_n(nn);
            Ok(vec![
                one("epsilon_lower", e.lower_line, e.value),
                one("epsilon_upper", e.value, e.upper_line),
                one("epsilon_slope", e.upper_line, EPSILON_SLOPE / n as f64),
            ])
        })
        .collect();
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

/// Characteristic-function inequalities on random inputs.
pub fn suite_charfn(trials: u64, seed: u64, tol: f64) -> Result<Vec<BoundReport>> {
    trials_par(trials, |i| {
        let mut rng = stream(seed, 2 << 32 | i);
        let laws = random_laws(&mut rng, 4, 6)?;
        let t = rng.gen_range(-3.0..3.0);
        let c = charfn_bound(t, &laws)?;
        let sig: Vec<f64> = laws.iter().map(|l| l.sd()).collect();
        let rhos: Vec<f64> = laws.iter().map(|l| l.rho()).collect::<Result<_>>()?;
        let rho = rng.gen_range(1.0..4.0);
        let t2 = rng.gen_range(-3.0..3.0);
        let p = two_point_law(rho)?;
        let tb = taylor_charfn_bound(rho, t2, Some(&p))?;
        let ts: Vec<f64> = (0..5).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let pc = prod_cos_margin(&ts);
        Ok(vec![
            BoundReport::new("charfn", sig, rhos, c.lhs_abs, c.rhs, tol),
            BoundReport::new("charfn_taylor", vec![1.0], vec![rho], tb.lhs_abs.unwrap_or(0.0), tb.rhs, tol),
            BoundReport::new("prod_cos_upper", vec![], vec![], pc.value, pc.upper, tol).with_n(5),
            BoundReport::new("prod_cos_lower", vec![], vec![], pc.lower, pc.value, tol).with_n(5),
        ])
    })
}

/// Interpolation residuals, dominance and the recentered moment bound.
pub fn suite_osculation(trials: u64, seed: u64, tol: f64) -> Result<Vec<BoundReport>> {
    trials_par(trials, |i| {
        let mut rng = stream(seed, 3 << 32 | i);
        let r = rng.gen_range(0.1..3.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
        let v = rng.gen_range(0.0..4.0);
        let u = v + rng.gen_range(0.05..4.0);
        let c = oscul_coeffs(r, u, v)?;
        let scale = 1.0 + r.abs().max(u).powi(3);
        let (lo, hi) = default_window(&c);
        let dom = dominance_report(&c, lo, hi, DOMINANCE_GRID);
        let law = random_law(&mut rng, 3, 6)?;
        let rb = recentered_abs3_bound(&law, r, u, v)?;
        let name = match c.branch {
            crate::osculation::Branch::VLeAbsR => "oscul_interp_v_le_r",
            crate::osculation::Branch::VGtAbsR => "oscul_interp_v_gt_r",
        };
        Ok(vec![
            BoundReport::new(name, vec![], vec![], c.interpolation_residual(), 1e-9 * scale, tol).with_n(1),
            BoundReport::new("oscul_dominance", vec![], vec![], 0.0, dom.min_margin, 1e-10).with_n(1),
            BoundReport::new("recentered_abs3", vec![law.sd()], vec![law.rho()?], rb.lhs, rb.rhs, 1e-10).with_n(1),
        ])
    })
}

fn x1(v: f64) -> f64 {
    v
}
fn x2(v: f64) -> f64 {
    v * v
}
fn x3abs(v: f64) -> f64 {
    v.abs().powi(3)
}

/// Moment-constrained decompositions, plus the three-point search when
/// `search_density` is positive.
pub fn suite_reduction(trials: u64, seed: u64, search_density: usize) -> Result<Vec<BoundReport>> {
    let all: [Constraint; 3] = [&x1, &x2, &x3abs];
    let mut out = trials_par(trials, |i| {
        let mut rng = stream(seed, 4 << 32 | i);
        let law = random_law(&mut rng, 4, 9)?;
        let k = rng.gen_range(1..=3usize);
        let cons = &all[..k];
        let d = extreme_point_decompose(&law, cons)?;
        let n = law.len();
        let max_atoms = d.parts.iter().map(DiscreteLaw::len).max().unwrap_or(0);
        Ok(vec![
            BoundReport::new("decomp_reconstruct", vec![], vec![], d.reconstruction_error(&law), 1e-10, 0.0).with_n(n),
            BoundReport::new("decomp_constraints", vec![], vec![], d.constraint_error(&law, cons), 1e-9, 0.0).with_n(n),
            BoundReport::new("decomp_support", vec![], vec![], max_atoms as f64, (k + 1) as f64, 0.0).with_n(n),
        ])
    })?;
    if search_density > 0 {
        for rho in [1.1, 1.5, 2.0, 3.0] {
            let s = extremal_three_point_search(rho, search_density)?;
            out.push(BoundReport::new("three_point_sup", vec![1.0], vec![rho], s.sup_value, s.bound, 1e-6));
            out.push(BoundReport::new("three_point_corner", vec![1.0], vec![rho], s.corner_value, s.bound, 1e-6));
        }
    }
    Ok(out)
}

/// Grid density of the three-point search inside `verify`.
pub const VERIFY_SEARCH_DENSITY: usize = 200;

pub fn run_suite(suite: Suite, trials: u64, seed: u64, tol: f64) -> Result<Vec<BoundReport>> {
    if trials == 0 {
        return Err(Error::BadInput("--trials must be at least 1".into()));
    }
    match suite {
        Suite::Main => suite_main(trials, seed, tol),
        Suite::Normal => suite_normal(trials, seed, tol),
        Suite::Epsilon => suite_epsilon(tol),
        Suite::Charfn => suite_charfn(trials, seed, tol),
        Suite::Osculation => suite_osculation(trials, seed, tol),
        Suite::Reduction => suite_reduction(trials, seed, VERIFY_SEARCH_DENSITY),
        Suite::All => {
            let mut out = Vec::new();
            for s in Suite::EACH {
                out.extend(run_suite(s, trials, seed, tol)?);
            }
            Ok(out)
        }
    }
}

pub struct VerifyOutcome {
    pub csv: String,
    pub first_failure: Option<BoundReport>,
}

pub fn cmd_verify(suite: Suite, trials: u64, seed: u64, tol: f64) -> Result<VerifyOutcome> {
    let reports = run_suite(suite, trials, seed, tol)?;
    Ok(VerifyOutcome { csv: reports_csv(&reports), first_failure: reports.iter().find(|r| !r.passed()).cloned() })
}

#[derive(Clone, Debug)]
pub enum LawSpec {
    Discrete(DiscreteLaw),
    Normal,
}

fn parse_num<T: std::str::FromStr>(what: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::BadInput(format!("bad {what} '{v}'")))
}

/// Built-in names (rademacher, binomial:n, tworho:ρ, bernoulli:p, normal) or a JSON law file.
pub fn parse_law(spec: &str) -> Result<LawSpec> {
    let (head, arg) = spec.split_once(':').unwrap_or((spec, ""));
    Ok(match head {
        "rademacher" => LawSpec::Discrete(DiscreteLaw::rademacher()),
        "normal" => LawSpec::Normal,
        "binomial" => LawSpec::Discrete(binomial_half_standardized(parse_num("binomial n", arg)?)?),
        "tworho" => LawSpec::Discrete(two_point_law(parse_num("rho", arg)?)?),
        "bernoulli" => LawSpec::Discrete(DiscreteLaw::bernoulli(parse_num("p", arg)?)?),
        _ => {
            let path = Path::new(spec);
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{spec}: {e}")))?;
            LawSpec::Discrete(DiscreteLaw::from_json(&text)?)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZetaOutcome {
    Finite { value: f64, error: f64 },
    Infinite { moment: usize },
}

impl ZetaOutcome {
    pub fn render(&self, s: usize) -> String {
        match self {
            ZetaOutcome::Finite { value, error } => format!("zeta_{s} = {} +/- {}", sig12(*value), sig12(*error)),
            ZetaOutcome::Infinite { moment } => format!("zeta_{s} = infinite (moment {moment})"),
        }
    }
}

pub fn cmd_zeta(a: &LawSpec, b: &LawSpec, s: usize, tol: f64) -> Result<ZetaOutcome> {
    if !(1..=4).contains(&s) {
        return Err(Error::BadOrder(s));
    }
    fn arg(l: &LawSpec) -> LawArg<'_> {
        match l {
            LawSpec::Discrete(d) => LawArg::Discrete(d),
            LawSpec::Normal => LawArg::Normal,
        }
    }
    if let Err(Error::MomentMismatch { index, .. }) = check_moments(arg(a), arg(b), s - 1) {
        return Ok(ZetaOutcome::Infinite { moment: index });
    }
    match (a, b) {
        (LawSpec::Discrete(p), LawSpec::Discrete(q)) => Ok(ZetaOutcome::Finite { value: zeta_discrete(p, q, s)?, error: 0.0 }),
        (LawSpec::Normal, LawSpec::Normal) => Ok(ZetaOutcome::Finite { value: 0.0, error: 0.0 }),
        (LawSpec::Discrete(p), LawSpec::Normal) | (LawSpec::Normal, LawSpec::Discrete(p)) => {
            let e = zeta_vs_normal_estimate(p, s, tol)?;
            Ok(ZetaOutcome::Finite { value: e.value, error: e.error })
        }
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut so = std::io::stdout().lock();
            so.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))
        }
    }
}

/// Executes a parsed configuration and returns the process exit code.
pub fn execute(cfg: &RunConfig) -> i32 {
    let res = with_threads(cfg.threads, || -> Result<i32> {
        match &cfg.command {
            Command::Table => {
                emit(&cfg.out, &cmd_table()?)?;
                Ok(EXIT_OK)
            }
            Command::Verify { suite, trials } => {
                let outcome = cmd_verify(*suite, *trials, cfg.seed, cfg.tolerance)?;
                emit(&cfg.out, &outcome.csv)?;
                match outcome.first_failure {
                    None => Ok(EXIT_OK),
                    Some(r) => {
                        eprintln!("verification failed: {}", r.csv_row());
                        Ok(EXIT_FAIL)
                    }
                }
            }
            Command::Zeta { law_a, law_b, s } => {
                let a = parse_law(law_a)?;
                let b = parse_law(law_b)?;
                let z = cmd_zeta(&a, &b, *s, cfg.tolerance)?;
                emit(&cfg.out, &format!("{}\n", z.render(*s)))?;
                Ok(match z {
                    ZetaOutcome::Finite { .. } => EXIT_OK,
                    ZetaOutcome::Infinite { .. } => EXIT_INPUT,
                })
            }
        }
    });
    match res.and_then(|r| r) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

/// Parses `args` and runs; argument errors exit with code 2.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => execute(&cfg),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_builtins() {
        assert!(matches!(parse_law("normal").unwrap(), LawSpec::Normal));
        let LawSpec::Discrete(b) = parse_law("binomial:4").unwrap() else { panic!() };
        assert!(b.is_standardized(1e-12));
        assert!(parse_law("bernoulli:x").is_err());
        assert!(matches!(parse_law("/no/such/file.json"), Err(Error::Io(_))));
    }

    #[test]
    fn zeta_builtin_examples() {
        let rad = parse_law("rademacher").unwrap();
        let z3 = cmd_zeta(&rad, &LawSpec::Normal, 3, 1e-10).unwrap();
        let ZetaOutcome::Finite { value, .. } = z3 else { panic!() };
        assert!((value - (4.0 / (2.0 * std::f64::consts::PI).sqrt() - 1.0) / 6.0).abs() < 1e-9);
        let z4 = cmd_zeta(&rad, &LawSpec::Normal, 4, 1e-10).unwrap();
        let ZetaOutcome::Finite { value, .. } = z4 else { panic!() };
        assert!((value - 1.0 / 12.0).abs() < 1e-8);
        let b = parse_law("bernoulli:0.3").unwrap();
        assert_eq!(cmd_zeta(&rad, &b, 3, 1e-10).unwrap(), ZetaOutcome::Infinite { moment: 1 });
        assert_eq!(cmd_zeta(&rad, &b, 3, 1e-10).unwrap().render(3), "zeta_3 = infinite (moment 1)");
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(run_suite(Suite::All, 0, 1, 1e-9), Err(Error::BadInput(_))));
        assert_eq!(run(["zeta-forge", "verify", "--suite", "all", "--trials", "0"]), EXIT_INPUT);
        assert_eq!(run(["zeta-forge", "frobnicate"]), EXIT_INPUT);
    }
}
