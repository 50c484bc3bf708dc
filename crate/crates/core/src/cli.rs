//! Command-line driver. [`run`] returns the exit code and the text to print
//! so the whole interface is testable in-process.

use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{RatFun, Rational};
use crate::linalg;
use crate::oracle::{self, Comparison};
use crate::rootsys::{format_root, parse_root, RootSystem};
use crate::shapelem::{choice_for, routes, theta_m, ShapovalovElement};
use crate::verma::{gram_determinant, symbolic_gram, Context, Monomial, Pbw, UEAElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "shapovalov", version, about = "Exact Shapovalov elements and their verification")]
pub struct Cli {
    /// Worker threads for verification batches.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Positive roots, ρ and the Gram matrix of the simple roots.
    Roots { algebra: String },
    /// Diagram of the negative Borel subalgebra, or of one root interval.
    Hasse {
        algebra: String,
        /// Simple root and upper root, both in simple-root coordinates.
        #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"])]
        interval: Option<Vec<String>>,
        #[arg(long)]
        dot: bool,
    },
    /// PBW expansion of θ_{β,m}.
    Theta {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Symbolic extremality on the hyperplane plus oracle sampling.
    Verify {
        #[command(flatten)]
        target: Target,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Perturbs one coefficient before checking.
        #[arg(long, hide = true)]
        corrupt: bool,
    },
    /// Gram matrix and kernel at a numeric λ.
    Gram {
        algebra: String,
        /// `μ` in simple-root coordinates; the weight space is `λ - μ`.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// `λ` in fundamental coordinates, e.g. `1/3,-4/3`; omitted for the
        /// symbolic determinant.
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambda: Option<String>,
    },
    /// Compares specialized θ_{β,m} with the brute-force singular space at λ.
    OracleCompare {
        #[command(flatten)]
        target: Target,
        #[arg(long = "lambda", allow_hyphen_values = true)]
        lambda: String,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Target {
    pub algebra: String,
    #[arg(long)]
    pub beta: String,
    #[arg(short = 'm', default_value_t = 1)]
    pub m: u32,
    /// One-based index of the admissible simple root.
    #[arg(long)]
    pub alpha: Option<usize>,
}

/// Serialized θ. Monomials are lists of `[root coordinates, exponent]`
/// from left to right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaJson {
    pub algebra: String,
    pub beta: Vec<i32>,
    pub m: u32,
    pub alpha: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub monomial: Vec<(Vec<i32>, u8)>,
    pub num: String,
    pub den: String,
}

impl ThetaJson {
    pub fn from_theta(t: &ShapovalovElement) -> Self {
        let rs = t.root_system();
        let prefix = t.element.context().prefix();
        let terms = t
            .element
            .terms()
            .iter()
            .map(|(mon, c)| TermJson {
                monomial: mon.factors().into_iter().map(|(k, e)| (rs.root(k).to_vec(), e)).collect(),
                num: c.num().to_string_with(prefix),
                den: c.den().to_string_with(prefix),
            })
            .collect();
        ThetaJson { algebra: rs.algebra().to_string(), beta: rs.root(t.beta).to_vec(), m: t.m, alpha: t.choice.alpha + 1, terms }
    }

    /// Rebuilds the element in the `λ` context.
    pub fn to_element(&self) -> Result<UEAElement> {
        let rs = RootSystem::parse(&self.algebra)?;
        let pbw = Pbw::for_algebra(rs.algebra());
        let r = rs.rank();
        let mut terms = Vec::new();
        for t in &self.terms {
            let mut exps = vec![0u8; rs.num_positive()];
            for (coords, e) in &t.monomial {
                exps[rs.require_root(coords)?] = *e;
            }
            terms.push((Monomial::from_exponents(&rs, &exps), RatFun::parse(&t.num, &t.den, "l", r)?));
        }
        Ok(UEAElement::from_terms(pbw, Context::lambda(r), terms))
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }
}

fn parse_point(s: &str) -> Result<Vec<Rational>> {
    s.split(',')
        .map(|p| p.trim().parse::<Rational>().map_err(|e| Error::Parse(format!("bad rational {p:?}: {e}"))))
        .collect()
}

fn build_theta(t: &Target) -> Result<ShapovalovElement> {
    let rs = RootSystem::parse(&t.algebra)?;
    let beta = rs.require_root(&parse_root(&t.beta)?)?;
    if t.m == 0 {
        return Err(Error::Argument("m must be at least 1".into()));
    }
    let alpha = match t.alpha {
        Some(0) => return Err(Error::Argument("α indices start at 1".into())),
        Some(a) => Some(a - 1),
        None => None,
    };
    let pbw = Pbw::for_algebra(rs.algebra());
    theta_m(&pbw, &choice_for(pbw.root_system(), beta, alpha)?, t.m)
}

fn header(t: &ShapovalovElement) -> String {
    let rs = t.root_system();
    format!(
        "# {} beta=({}) m={} alpha={} construction={} terms={}\n",
        rs.algebra(),
        format_root(rs.root(t.beta)),
        t.m,
        t.choice.alpha + 1,
        t.construction.as_str(),
        t.element.len()
    )
}

fn cmd_roots(algebra: &str) -> Result<String> {
    let rs = RootSystem::parse(algebra)?;
    let mut s = format!("{} rank {} positive roots {}\n", rs.algebra(), rs.rank(), rs.num_positive());
    for g in 0..rs.num_positive() {
        s.push_str(&format!("  {:>2} ({}) height {} (γ,γ)/2 = {}\n", g + 1, format_root(rs.root(g)), rs.height(g), rs.half_norm(g)));
    }
    let rho: Vec<String> = rs.rho().coords().iter().map(|c| c.to_string()).collect();
    s.push_str(&format!("rho ({}) in simple roots\n", rho.join(", ")));
    s.push_str("gram\n");
    for row in rs.gram() {
        let row: Vec<String> = row.iter().map(|c| format!("{c:>4}")).collect();
        s.push_str(&format!("  {}\n", row.join(" ")));
    }
    Ok(s)
}

fn cmd_hasse(algebra: &str, interval: Option<&[String]>, dot: bool) -> Result<String> {
    let rs = RootSystem::parse(algebra)?;
    let d = match interval {
        None => rs.hasse_b_minus(),
        Some([a, b]) => {
            let a = rs.require_root(&parse_root(a)?)?;
            if !rs.is_simple(a) {
                return Err(Error::Argument(format!("({}) is not a simple root", format_root(rs.root(a)))));
            }
            rs.hasse_interval(a, &parse_root(b)?)?
        }
        Some(_) => return Err(Error::Argument("--interval takes two roots".into())),
    };
    Ok(if dot { d.render_dot(&rs) } else { d.render_text(&rs) })
}

fn cmd_theta(t: &Target, json: bool) -> Result<String> {
    let theta = build_theta(t)?;
    if json {
        return Ok(ThetaJson::from_theta(&theta).render());
    }
    let mut s = header(&theta);
    if theta.m == 1 && !theta.root_system().is_simple(theta.beta) {
        s.push_str(&format!("# routes={}\n", routes(theta.element.pbw(), &theta.choice)?.len()));
    }
    s.push_str(&theta.element.render());
    Ok(s)
}

fn cmd_verify(t: &Target, samples: usize, seed: u64, json: bool, corrupt: bool) -> Result<(i32, String)> {
    let mut theta = build_theta(t)?;
    if corrupt {
        theta = oracle::corrupt(&theta);
    }
    let symbolic = oracle::verify_extremal_symbolic(&theta)?;
    let sampled = oracle::oracle_equivalence(&theta, samples, seed)?;
    let ok = symbolic.passed() && sampled.passed(samples);
    let out = if json {
        #[derive(Serialize)]
        struct Both<'a> {
            symbolic: &'a oracle::ExtremalReport,
            oracle: &'a oracle::EquivalenceReport,
        }
        serde_json::to_string_pretty(&Both { symbolic: &symbolic, oracle: &sampled }).expect("plain data serializes") + "\n"
    } else {
        let mut s = symbolic.render_text();
        s.push_str(&sampled.render_text(samples));
        s.push_str(if ok { "PASS\n" } else { "FAIL\n" });
        s
    };
    Ok((if ok { EXIT_OK } else { EXIT_FAIL }, out))
}

fn cmd_gram(algebra: &str, mu: &str, lambda: Option<&str>) -> Result<String> {
    let rs = RootSystem::parse(algebra)?;
    let pbw = Pbw::for_algebra(rs.algebra());
    let mu = parse_root(mu)?;
    if mu.len() != rs.rank() {
        return Err(Error::Dimension { expected: rs.rank(), found: mu.len() });
    }
    let mut s = String::new();
    let Some(lambda) = lambda else {
        let (basis, m) = symbolic_gram(&pbw, &mu);
        s.push_str(&format!("basis {}\n", basis.len()));
        for b in &basis {
            s.push_str(&format!("  {}\n", b.render(&rs)));
        }
        s.push_str(&format!("det {}\n", gram_determinant(&m, rs.rank()).to_string_with("l")));
        return Ok(s);
    };
    let point = parse_point(lambda)?;
    let g = oracle::gram_kernel(&pbw, &point, &mu)?;
    s.push_str(&format!("basis {}\n", g.monomials.len()));
    for b in &g.monomials {
        s.push_str(&format!("  {}\n", b.render(&rs)));
    }
    s.push_str("matrix\n");
    for row in &g.matrix {
        let row: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        s.push_str(&format!("  [{}]\n", row.join(", ")));
    }
    s.push_str(&format!("det {}\n", linalg::determinant(&g.matrix)));
    s.push_str(&format!("kernel {}\n", g.kernel.len()));
    for v in &g.kernel {
        for line in v.render().lines() {
            s.push_str(&format!("  {line}\n"));
        }
        s.push_str("  --\n");
    }
    Ok(s)
}

fn cmd_oracle_compare(t: &Target, lambda: &str) -> Result<(i32, String)> {
    let theta = build_theta(t)?;
    let point = parse_point(lambda)?;
    let pbw: &Arc<Pbw> = theta.element.pbw();
    let mu: Vec<i32> = theta.root_system().root(theta.beta).iter().map(|c| c * theta.m as i32).collect();
    let singular = oracle::bruteforce_singular(pbw, &point, &mu)?;
    let mut s = header(&theta);
    s.push_str(&format!("singular dimension {}\n", singular.dim()));
    let specialized = theta.element.specialize(&Context::point(&point))?;
    let code = match singular.basis.as_slice() {
        [v] if !specialized.is_zero() => match oracle::compare_up_to_scalar(&specialized, v)? {
            Comparison::Scalar(c) => {
                s.push_str(&format!("scalar {c}\n"));
                EXIT_OK
            }
            Comparison::Mismatch { monomial, left, right } => {
                s.push_str(&format!("mismatch at {monomial}: {left} vs {right}\n"));
                EXIT_FAIL
            }
        },
        _ => {
            s.push_str("no unique singular direction to compare\n");
            EXIT_FAIL
        }
    };
    Ok((code, s))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::IdenticallySingular { .. } | Error::RaisingBracket { .. } | Error::InexactDivision | Error::DivisionByZero => {
            EXIT_INTERNAL
        }
        Error::Verification(_) => EXIT_FAIL,
        _ => EXIT_USAGE,
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
    /// Diagnostics go to stderr; reports, including FAIL reports, to stdout.
    pub diagnostic: bool,
}

impl Outcome {
    fn report((code, text): (i32, String)) -> Self {
        Outcome { code, text, diagnostic: false }
    }
}

/// Executes a parsed invocation.
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Roots { algebra } => cmd_roots(algebra).map(|s| (EXIT_OK, s)),
        Command::Hasse { algebra, interval, dot } => cmd_hasse(algebra, interval.as_deref(), *dot).map(|s| (EXIT_OK, s)),
        Command::Theta { target, json } => cmd_theta(target, *json).map(|s| (EXIT_OK, s)),
        Command::Verify { target, samples, seed, json, corrupt } => cmd_verify(target, *samples, *seed, *json, *corrupt),
        Command::Gram { algebra, mu, lambda } => cmd_gram(algebra, mu, lambda.as_deref()).map(|s| (EXIT_OK, s)),
        Command::OracleCompare { target, lambda } => cmd_oracle_compare(target, lambda),
    };
    match result {
        Ok(r) => Outcome::report(r),
        Err(e) => {
            let code = exit_code(&e);
            let kind = if code == EXIT_INTERNAL { "internal error" } else { "error" };
            Outcome { code, text: format!("{kind}: {e}\n"), diagnostic: true }
        }
    }
}

/// Parses `args` (program name first) and executes. Usage errors exit 1;
/// help and version exit 0.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Outcome { code, text: e.render().to_string(), diagnostic: e.use_stderr() };
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    execute(&cli)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &str) -> (i32, String) {
        let o = run(std::iter::once("shapovalov").chain(args.split_whitespace()));
        (o.code, o.text)
    }

    #[test]
    fn roots_listing() {
        let (c, s) = call("roots G2");
        assert_eq!(c, 0);
        assert!(s.starts_with("G2 rank 2 positive roots 6\n"));
        assert!(call("roots A1").1.contains("positive roots 1\n"));
        assert!(call("roots D4").1.contains("positive roots 12\n"));
        assert_eq!(call("roots X9").0, EXIT_USAGE);
        assert_eq!(call("roots").0, EXIT_USAGE);
    }

    #[test]
    fn hasse_views() {
        let (_, s) = call("hasse G2");
        assert!(s.starts_with("nodes 8\n"));
        assert!(s.contains("edges 7\n"));
        let (c, s) = call("hasse A2 --interval 1,0 1,1");
        assert_eq!(c, 0);
        assert!(s.starts_with("nodes 2\n") && s.contains("edges 1\n"), "{s}");
        assert!(s.contains("f[1,1] -> f[1,0] [e2]"));
        assert!(call("hasse A1").1.starts_with("nodes 2\n"));
        assert_eq!(call("hasse A2 --interval 0,1 1,0").0, EXIT_USAGE);
        assert_eq!(call("hasse A2 --interval 1,1 1,1").0, EXIT_USAGE);
        assert!(call("hasse B2 --dot").1.starts_with("digraph"));
    }

    #[test]
    fn theta_output() {
        let (c, s) = call("theta A2 --beta 1,1 -m 1");
        assert_eq!(c, 0);
        assert!(s.contains("terms=2\n") && s.contains("routes=2\n"), "{s}");
        let (_, s) = call("theta A2 --beta 1,0 -m 3");
        assert!(s.contains("terms=1\n") && s.ends_with("(1) * f[1,0]^3\n"), "{s}");
        let (_, s) = call("theta A3 --beta 1,1,1 -m 1 --alpha 2");
        assert!(s.contains("routes=5\n"), "{s}");
        assert_eq!(call("theta A2 --beta 2,1").0, EXIT_USAGE);
        assert_eq!(call("theta A2 --beta 1,1 -m 0").0, EXIT_USAGE);
        assert_eq!(call("theta A2 --beta 1,1 --alpha 3").0, EXIT_USAGE);
    }

    #[test]
    fn json_round_trip() {
        for args in ["theta A2 --beta 1,1 -m 2 --json", "theta G2 --beta 2,3 -m 2 --json", "theta B2 --beta 1,1 -m 2 --alpha 1 --json"] {
            let (c, s) = call(args);
            assert_eq!(c, 0);
            let parsed: ThetaJson = serde_json::from_str(&s).unwrap();
            assert_eq!(parsed.render(), s);
            let rebuilt = parsed.to_element().unwrap();
            let t = build_theta(&Target { algebra: parsed.algebra.clone(), beta: format_root(&parsed.beta), m: parsed.m, alpha: Some(parsed.alpha) }).unwrap();
            assert_eq!(rebuilt, t.element);
            assert_eq!(call(args).1, s);
        }
    }

    #[test]
    fn verify_codes() {
        assert_eq!(call("verify A2 --beta 1,1 -m 1").0, EXIT_OK);
        assert_eq!(call("verify A2 --beta 1,1 -m 1 --corrupt").0, EXIT_FAIL);
        let (c, s) = call("verify B2 --beta 1,2 -m 2 --json");
        assert_eq!(c, 0, "{s}");
        assert!(s.contains("\"status\": \"PASS\""));
    }

    #[test]
    fn gram_and_compare() {
        let (c, s) = call("gram A2 --mu 1,1 --lambda 0,5");
        assert_eq!(c, 0);
        assert!(s.contains("det 0\nkernel 1\n"), "{s}");
        let (_, s) = call("gram A2 --mu 1,1");
        assert!(s.contains("basis 2\n") && s.contains("det "));
        assert_eq!(call("gram A2 --mu 1,1 --lambda 1/x,2").0, EXIT_USAGE);
        let (c, s) = call("oracle-compare A2 --beta 1,1 -m 1 --lambda 1/3,-4/3");
        assert_eq!(c, 0, "{s}");
        assert!(s.contains("singular dimension 1\nscalar "));
        assert_eq!(call("oracle-compare A2 --beta 1,1 -m 1 --lambda 1/3,2/5").0, EXIT_FAIL);
    }
}
