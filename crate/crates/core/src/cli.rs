//! Command-line front end.
//!
//! Exit codes: 0 monomial found or command succeeded, 1 no monomial, 2 usage
//! or input error, 3 budget exceeded.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::bench::{run_bench, write_csv, BenchConfig};
use crate::error::Error;
use crate::gen::{generate, Family, GenSpec};
use crate::oracle::{oracle_count, oracle_find};
use crate::poly::{classify, witness_monomial, FactoredPolynomial, Witness};
use crate::reduce::{
    find_kpath, mlm_to_3monomial, normalize_3sat_traced, sat3_to_poly, threeterm_to_product, KpathConfig,
};
use crate::solve::{select_algorithm, solve, Algorithm, SolveConfig};
use crate::textio::{
    parse_dimacs, parse_graph, parse_polynomial, render_monomial, render_polynomial, render_witness_terms,
};

pub const EXIT_FOUND: i32 = 0;
pub const EXIT_NONE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "multimono",
    version,
    about = "Multilinear and c-monomial testing for products of sums"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Exponent bound: look for monomials with every exponent below c.
    #[arg(long = "c", global = true, default_value_t = 2, value_name = "INT")]
    c: u32,
    #[arg(long, global = true, value_enum, default_value_t = AlgoArg::Auto)]
    algo: AlgoArg,
    /// Generator seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Step cap for enumerating algorithms (oracle products, clique nodes,
    /// hybrid small-factor products, k-path walks).
    #[arg(long, global = true, value_name = "STEPS")]
    budget: Option<u64>,
    /// Structured (JSON) output.
    #[arg(long, global = true)]
    json: bool,
    /// Split the polynomial before this clause index, overriding any ';'.
    #[arg(long, global = true, value_name = "IDX")]
    split: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Auto,
    Matcher,
    Purger,
    Scc,
    Hybrid,
    Clique,
    Oracle,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Auto => Algorithm::Auto,
            AlgoArg::Matcher => Algorithm::Matcher,
            AlgoArg::Purger => Algorithm::Purger,
            AlgoArg::Scc => Algorithm::Scc,
            AlgoArg::Hybrid => Algorithm::Hybrid,
            AlgoArg::Clique => Algorithm::Clique,
            AlgoArg::Oracle => Algorithm::Oracle,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    Pisigma,
    TwoTerm,
    ThreeTerm,
    Product,
    Cnf3,
    Graph,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Pisigma => Family::PiSigma,
            FamilyArg::TwoTerm => Family::TwoTerm,
            FamilyArg::ThreeTerm => Family::ThreeTerm,
            FamilyArg::Product => Family::Product,
            FamilyArg::Cnf3 => Family::Cnf3,
            FamilyArg::Graph => Family::Graph,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a polynomial and print its canonical form.
    Parse(Input),
    /// Print the shape parameters of a polynomial.
    Classify(Input),
    /// Decide whether a polynomial has a c-monomial.
    Test(Input),
    /// Decide by brute-force expansion.
    Oracle {
        #[command(flatten)]
        input: Input,
        /// Count every c-monomial product instead of stopping at the first.
        #[arg(long)]
        count: bool,
    },
    /// Apply a reduction.
    #[command(subcommand)]
    Reduce(Reduction),
    /// Generate a random instance.
    Gen(GenArgs),
    /// Time algorithms over generated instances; writes CSV.
    Bench(BenchArgs),
}

#[derive(Args, Debug)]
struct Input {
    /// Input file; standard input when absent or "-".
    path: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Reduction {
    /// DIMACS 3-CNF to a polynomial with a multilinear monomial iff satisfiable.
    Sat3(Input),
    /// Three-term clauses to a split two-term times ΠΣ product.
    Product(Input),
    /// Multilinear testing to 3-monomial testing.
    Cmono(Input),
    /// Simple path on k vertices in an edge-list graph, via the walk polynomial.
    Kpath {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 2)]
    s: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    #[arg(long, default_value_t = 6)]
    n: usize,
    /// Front clauses of a product instance.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Edge probability for graphs.
    #[arg(long, default_value_t = 0.3)]
    density: f64,
    /// Clause widths uniform in 1..=s instead of exactly s.
    #[arg(long)]
    ragged: bool,
}

#[derive(Args, Debug)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::Pisigma)]
    family: FamilyArg,
    /// Clause counts to sweep.
    #[arg(long, value_delimiter = ',', default_values_t = [1000usize, 10000, 100000])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 5)]
    s: usize,
    #[arg(long, default_value_t = 2)]
    t: usize,
    /// Variable count; defaults to each clause count.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long)]
    ragged: bool,
    /// Algorithms to run on every instance.
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [AlgoArg::Auto])]
    algos: Vec<AlgoArg>,
    /// Instances per size, seeded from --seed upwards.
    #[arg(long, default_value_t = 1)]
    instances: u64,
    /// Output CSV path; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure of a command, carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_budget_exceeded() {
                EXIT_BUDGET
            } else {
                EXIT_USAGE
            },
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        // A closed downstream pipe is not an error worth reporting.
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure {
                code: EXIT_FOUND,
                message: String::new(),
            };
        }
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }
}

impl From<crate::textio::ParseError> for Failure {
    fn from(e: crate::textio::ParseError) -> Self {
        Error::from(e).into()
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the CLI with the process's standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        args,
        &mut io::stdin().lock(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    )
}

/// Runs the CLI against the given streams and returns the exit code.
pub fn run_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_FOUND };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(&cli, stdin, stdout) {
        Ok(code) => code,
        Err(f) => {
            if !f.message.is_empty() {
                let _ = writeln!(stderr, "error: {}", f.message);
            }
            f.code
        }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> io::Result<String> {
    let mut text = String::new();
    match &input.path {
        Some(p) if p.as_os_str() != "-" => {
            File::open(p)
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", p.display())))?
                .read_to_string(&mut text)?;
        }
        _ => {
            stdin.read_to_string(&mut text)?;
        }
    }
    Ok(text)
}

fn read_polynomial(input: &Input, global: &GlobalArgs, stdin: &mut dyn Read) -> Result<FactoredPolynomial, Failure> {
    let poly = parse_polynomial(&read_input(input, stdin)?)?;
    Ok(match global.split {
        Some(k) => poly.with_split(Some(k))?,
        None => poly,
    })
}

fn solve_config(global: &GlobalArgs) -> Result<SolveConfig, Failure> {
    let config = SolveConfig {
        c: global.c,
        algorithm: global.algo.into(),
        ..SolveConfig::default()
    };
    Ok(match global.budget {
        Some(b) => config.with_budget(b)?,
        None => config,
    })
}

fn print_json(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(value).expect("json values serialize")
    )
}

/// One-based term positions, as printed.
fn one_based(w: &Witness) -> Vec<usize> {
    w.choices.iter().map(|c| c + 1).collect()
}

fn report(
    out: &mut dyn Write,
    global: &GlobalArgs,
    poly: &FactoredPolynomial,
    algorithm: &str,
    witness: Option<&Witness>,
    elapsed_ns: u128,
) -> CmdResult {
    let monomial = witness.map(|w| witness_monomial(poly, w)).transpose()?;
    let monomial_text = monomial.as_ref().map(|m| render_monomial(poly.vars(), m));
    let terms = witness.map(|w| render_witness_terms(poly, w));
    if global.json {
        print_json(
            out,
            &json!({
                "answer": if witness.is_some() { "found" } else { "none" },
                "algorithm": algorithm,
                "c": global.c,
                "witness": witness.map(one_based),
                "terms": terms,
                "monomial": monomial_text,
                "time_ns": elapsed_ns as u64,
            }),
        )?;
    } else {
        match witness {
            Some(w) => {
                writeln!(out, "answer: found")?;
                writeln!(out, "algorithm: {algorithm}")?;
                let positions: Vec<String> = one_based(w).iter().map(usize::to_string).collect();
                writeln!(out, "witness: {}", positions.join(" "))?;
                writeln!(out, "terms: {}", terms.unwrap_or_default())?;
                writeln!(out, "monomial: {}", monomial_text.unwrap_or_default())?;
            }
            None => {
                writeln!(out, "answer: none")?;
                writeln!(out, "algorithm: {algorithm}")?;
            }
        }
        writeln!(out, "time: {:.3} ms", elapsed_ns as f64 / 1e6)?;
    }
    Ok(if witness.is_some() { EXIT_FOUND } else { EXIT_NONE })
}

fn dispatch(cli: &Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let global = &cli.global;
    match &cli.command {
        Command::Parse(input) => {
            let poly = read_polynomial(input, global, stdin)?;
            let text = render_polynomial(&poly);
            if global.json {
                print_json(
                    out,
                    &json!({
                        "polynomial": text,
                        "clauses": poly.num_clauses(),
                        "variables": poly.vars().names(),
                        "split": poly.split(),
                    }),
                )?;
            } else {
                writeln!(out, "{text}")?;
            }
            Ok(EXIT_FOUND)
        }
        Command::Classify(input) => {
            let poly = read_polynomial(input, global, stdin)?;
            let shape = classify(&poly);
            let suggested = select_algorithm(&poly, global.c);
            if global.json {
                let mut value = serde_json::to_value(&shape).expect("shape serializes");
                value["algorithm"] = json!(suggested.name());
                print_json(out, &value)?;
            } else {
                writeln!(out, "m: {}", shape.m)?;
                writeln!(out, "s: {}", shape.s)?;
                writeln!(out, "t: {}", shape.t)?;
                writeln!(out, "n: {}", shape.n)?;
                writeln!(out, "pi_sigma: {}", shape.is_pi_sigma)?;
                writeln!(out, "two_term: {}", shape.is_two_term)?;
                if let Some(v) = shape.uniform_term_vars {
                    writeln!(out, "max_term_vars: {v}")?;
                }
                if let Some(factors) = &shape.factors {
                    let (f, b) = &**factors;
                    writeln!(out, "front: m={} s={} t={} n={}", f.m, f.s, f.t, f.n)?;
                    writeln!(out, "back: m={} s={} t={} n={}", b.m, b.s, b.t, b.n)?;
                }
                writeln!(out, "algorithm: {suggested}")?;
            }
            Ok(EXIT_FOUND)
        }
        Command::Test(input) => {
            let poly = read_polynomial(input, global, stdin)?;
            let config = solve_config(global)?;
            let start = Instant::now();
            let solution = solve(&poly, &config)?;
            let elapsed = start.elapsed().as_nanos();
            report(
                out,
                global,
                &poly,
                solution.algorithm.name(),
                solution.witness.as_ref(),
                elapsed,
            )
        }
        Command::Oracle { input, count } => {
            let poly = read_polynomial(input, global, stdin)?;
            let budget = solve_config(global)?.oracle;
            let start = Instant::now();
            if *count {
                let n = oracle_count(&poly, global.c, budget)?;
                if global.json {
                    print_json(out, &json!({ "count": n, "c": global.c }))?;
                } else {
                    writeln!(out, "count: {n}")?;
                }
                return Ok(if n > 0 { EXIT_FOUND } else { EXIT_NONE });
            }
            let witness = oracle_find(&poly, global.c, budget)?;
            let elapsed = start.elapsed().as_nanos();
            report(out, global, &poly, "oracle", witness.as_ref(), elapsed)
        }
        Command::Reduce(reduction) => reduce(reduction, global, stdin, out),
        Command::Gen(args) => {
            let spec = GenSpec {
                family: args.family.into(),
                m: args.m,
                s: args.s,
                t: args.t,
                n: args.n,
                k: args.k,
                density: args.density,
                ragged: args.ragged,
                seed: global.seed,
            };
            out.write_all(generate(&spec)?.as_bytes())?;
            Ok(EXIT_FOUND)
        }
        Command::Bench(args) => {
            let config = BenchConfig {
                family: args.family.into(),
                sizes: args.sizes.clone(),
                s: args.s,
                t: args.t,
                n: args.n,
                k: args.k,
                ragged: args.ragged,
                algorithms: args.algos.iter().map(|&a| a.into()).collect(),
                seeds: (0..args.instances).map(|i| global.seed.wrapping_add(i)).collect(),
                solve: solve_config(global)?,
            };
            let rows = run_bench(&config)?;
            let written = match &args.out {
                Some(path) => write_csv(&rows, File::create(path)?),
                None => write_csv(&rows, &mut *out),
            };
            written.map_err(|e| Failure {
                code: EXIT_USAGE,
                message: e.to_string(),
            })?;
            Ok(EXIT_FOUND)
        }
    }
}

fn reduce(reduction: &Reduction, global: &GlobalArgs, stdin: &mut dyn Read, out: &mut dyn Write) -> CmdResult {
    let emit = |out: &mut dyn Write, poly: &FactoredPolynomial| -> io::Result<()> {
        let text = render_polynomial(poly);
        if global.json {
            print_json(out, &json!({ "polynomial": text }))
        } else {
            writeln!(out, "{text}")
        }
    };
    match reduction {
        Reduction::Sat3(input) => {
            let formula = parse_dimacs(&read_input(input, stdin)?)?;
            let normalized = normalize_3sat_traced(&formula);
            let (poly, _) = sat3_to_poly(&normalized.formula)?;
            let text = render_polynomial(&poly);
            if global.json {
                print_json(
                    out,
                    &json!({
                        "polynomial": text,
                        "normalized_vars": normalized.formula.num_vars,
                        "normalized_clauses": normalized.formula.clauses,
                    }),
                )?;
            } else {
                writeln!(out, "{text}")?;
            }
            Ok(EXIT_FOUND)
        }
        Reduction::Product(input) => {
            let poly = read_polynomial(input, global, stdin)?;
            emit(out, &threeterm_to_product(&poly)?)?;
            Ok(EXIT_FOUND)
        }
        Reduction::Cmono(input) => {
            let poly = read_polynomial(input, global, stdin)?;
            emit(out, &mlm_to_3monomial(&poly)?)?;
            Ok(EXIT_FOUND)
        }
        Reduction::Kpath { input, k } => {
            let graph = parse_graph(&read_input(input, stdin)?)?;
            let config = match global.budget {
                Some(0) => return Err(Error::invalid_argument("budget must be positive").into()),
                Some(b) => KpathConfig { max_walks: b },
                None => KpathConfig::default(),
            };
            let path = find_kpath(&graph, *k, global.c, &config)?;
            if global.json {
                print_json(
                    out,
                    &json!({ "answer": if path.is_some() { "found" } else { "none" }, "k": k, "path": path }),
                )?;
            } else if let Some(p) = &path {
                let p: Vec<String> = p.iter().map(u32::to_string).collect();
                writeln!(out, "answer: found")?;
                writeln!(out, "path: {}", p.join(" "))?;
            } else {
                writeln!(out, "answer: none")?;
            }
            Ok(if path.is_some() { EXIT_FOUND } else { EXIT_NONE })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str], input: &str) -> (i32, String, String) {
        let mut stdin = input.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("multimono").chain(args.iter().copied());
        let code = run_with(argv, &mut stdin, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn test_found_and_none() {
        let (code, out, _) = run_str(&["test", "--c", "2"], "(x1+x2)(x1+x2)");
        assert_eq!(code, 0);
        assert!(out.contains("witness: 1 2"), "{out}");
        assert!(out.contains("monomial: x1*x2"));
        let (code, out, _) = run_str(&["test"], "(x1)(x1)");
        assert_eq!(code, 1);
        assert!(out.contains("answer: none"));
    }

    #[test]
    fn usage_and_input_errors() {
        assert_eq!(run_str(&[], "").0, 2);
        assert_eq!(run_str(&["test", "--algo", "fast"], "(x)").0, 2);
        let (code, _, err) = run_str(&["test"], "(x1 +");
        assert_eq!(code, 2);
        assert!(err.starts_with("error:"), "{err}");
        assert_eq!(run_str(&["test", "/nonexistent/file"], "").0, 2);
        assert_eq!(run_str(&["--help"], "").0, 0);
    }

    #[test]
    fn budget_exit_code() {
        let poly = "(a+b+c)".repeat(8);
        assert_eq!(run_str(&["oracle", "--budget", "3"], &poly).0, 3);
        assert_eq!(run_str(&["oracle"], &poly).0, 1);
    }

    #[test]
    fn json_output() {
        let (code, out, _) = run_str(
            &["test", "--json"],
            "(y11+y21*y22+y31)(y11*y12+y21+y41)(y12+y22+y31)(y42+y51)",
        );
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["answer"], "found");
        assert_eq!(v["algorithm"], "clique");
        assert!(v["monomial"].is_string());
        assert!(v["time_ns"].is_u64());
        assert_eq!(v["witness"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn split_override_and_classify() {
        let (code, out, _) = run_str(&["parse", "--split", "1"], "(a*b+c+d)(a+b)");
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "(a*b+c+d) ; (a+b)");
        let (_, out, _) = run_str(&["classify", "--split", "1"], "(a*b+c+d)(a+b)");
        assert!(out.contains("algorithm: hybrid"), "{out}");
        assert_eq!(run_str(&["parse", "--split", "5"], "(a)").0, 2);
    }

    #[test]
    fn reductions() {
        let dimacs = "p cnf 5 4\n1 -2 3 0\n-1 2 4 0\n1 2 -3 0\n4 5 0\n";
        let (code, out, _) = run_str(&["reduce", "sat3"], dimacs);
        assert_eq!(code, 0);
        assert_eq!(out, "(y11+y21*y22+y31)(y11*y12+y21+y41)(y12+y22+y31)(y42+y51)\n");
        let (_, out, _) = run_str(&["reduce", "product"], "(x1+x2+x3)");
        assert_eq!(out.trim(), "(x1*u1+v1)(x2*u1+w1)(x3*u1+z1) ; (v1+w1+z1)");
        let (_, out, _) = run_str(&["reduce", "cmono"], "(x1+x2+x3)");
        assert_eq!(out.trim(), "(x1^2*u1^2+v1)(x2^2*u1^2+v1)(x3^2*u1^2+v1)");
        let (code, out, _) = run_str(&["reduce", "kpath", "--k", "3"], "1 2\n2 3\n");
        assert_eq!(code, 0);
        assert!(out.contains("path: 1 2 3"));
        assert_eq!(run_str(&["reduce", "kpath", "--k", "4"], "1 2\n2 3\n").0, 1);
    }

    #[test]
    fn gen_is_deterministic() {
        let args = [
            "gen", "--family", "pisigma", "--m", "3", "--s", "2", "--n", "4", "--seed", "7",
        ];
        let (code, a, _) = run_str(&args, "");
        assert_eq!(code, 0);
        assert_eq!(a, run_str(&args, "").1);
        assert!(parse_polynomial(&a).is_ok());
    }

    #[test]
    fn bench_csv() {
        let (code, out, _) = run_str(
            &["bench", "--sizes", "5,3", "--s", "2", "--algos", "matcher,oracle"],
            "",
        );
        assert_eq!(code, 0);
        let lines: Vec<_> = out.lines().collect();
        assert_eq!(lines[0], "instance_id,m,s,t,n,algorithm,answer,wall_time_ns");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("pisigma-m3-seed0,3,"));
    }
}
