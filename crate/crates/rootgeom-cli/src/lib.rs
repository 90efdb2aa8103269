//! Command implementations behind the `rootgeom` binary.
//!
//! Exit status: 0 on success, 1 when a verification fails (for example the
//! sweep flags the wrong set of types), 2 on usage errors.

pub mod json;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_traits::{Signed, ToPrimitive};

use rootgeom::catalog::RootSystem;
use rootgeom::counterexample::{
    chamber_index, find_subsystem, find_violation, CounterexampleError, EqualRankPair,
};
use rootgeom::stability::{
    adjoint_weights, an_diophantine, angle_classify, check_stability, hypothesis_a, induced_gram,
    orthogonal_factor_decomposition, theorem6_sweep, FactorList, StabilityReport, SweepOutcome,
};
use rootgeom::{QVec, Rational, SimpleType};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "rootgeom",
    about = "Exact root-system geometry: weight-lattice shells, stability sweeps, counterexamples",
    version
)]
pub struct Cli {
    /// Add approximate decimal renderings next to exact fractions.
    #[arg(long, global = true)]
    pub approx: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that shell stability fails exactly for A7, A8, B4, D8.
    VerifyTheorem6 {
        /// Largest rank swept in the A-D families.
        #[arg(long, default_value_t = 10)]
        max_rank: u32,
        /// Write all reports as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Shell-stability report for a single type.
    Stability {
        /// Simple type, e.g. A7 or E8.
        simple_type: String,
    },
    /// Solve (n-k) + k(n-k) = 2(n+1) over 0 <= k <= n <= n-max.
    Diophantine {
        #[arg(long, default_value_t = 100)]
        n_max: u64,
    },
    /// Equal-rank pair: subsystem, violating reflection, chamber index.
    Counterexample {
        /// One of: a7-e7, a8-e8, d8-e8, b4-f4, a2-g2.
        pair: String,
    },
    /// Chamber indices for the four pairs and the a2-g2 control.
    ChamberTable,
    /// Evaluate the factor-type predicate on a comma list of types.
    HypothesisA {
        /// Comma-separated types, e.g. A4,A6,A6.
        factors: String,
    },
    /// Count lattice vectors and roots of one squared length.
    Shells {
        /// Simple type, e.g. E8.
        simple_type: String,
        /// Exact squared length, e.g. 2 or 1/2.
        norm: String,
    },
    /// The A1 x A1 inside G2 worked example.
    G2Example,
}

pub fn execute(cli: Cli) -> u8 {
    let approx = cli.approx;
    let result = match cli.command {
        Command::VerifyTheorem6 { max_rank, json } => cmd_verify_theorem6(max_rank, json),
        Command::Stability { simple_type } => cmd_stability(&simple_type, approx),
        Command::Diophantine { n_max } => cmd_diophantine(n_max),
        Command::Counterexample { pair } => cmd_counterexample(&pair),
        Command::ChamberTable => cmd_chamber_table(),
        Command::HypothesisA { factors } => cmd_hypothesis_a(&factors),
        Command::Shells { simple_type, norm } => cmd_shells(&simple_type, &norm, approx),
        Command::G2Example => cmd_g2_example(approx),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            EXIT_VERIFICATION_FAILED
        }
    }
}

enum CliError {
    /// Malformed or out-of-envelope arguments: exit 2.
    Usage(String),
    /// The computation itself failed: exit 1. On a correct build this is
    /// unreachable except through a failing verification.
    Failed(String),
}

impl From<rootgeom::stability::StabilityError> for CliError {
    fn from(e: rootgeom::stability::StabilityError) -> Self {
        use rootgeom::stability::StabilityError::{RankLimitExceeded, SweepRankTooSmall};
        match e {
            // The user asked for something outside the supported envelope.
            RankLimitExceeded { .. } | SweepRankTooSmall(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}

impl From<rootgeom::catalog::CatalogError> for CliError {
    fn from(e: rootgeom::catalog::CatalogError) -> Self {
        CliError::Failed(e.to_string())
    }
}

impl From<CounterexampleError> for CliError {
    fn from(e: CounterexampleError) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn parse_type(s: &str) -> Result<SimpleType, CliError> {
    SimpleType::from_str(s).map_err(|_| {
        CliError::Usage(format!(
            "cannot parse '{s}' as a simple type; expected a family letter and rank \
             (A n>=1, B n>=2, C n>=3, D n>=4, E 6..8, F4, G2), e.g. A7 or E8"
        ))
    })
}

/// Renders an exact rational, optionally with a decimal approximation.
fn fmt_rat(r: &Rational, approx: bool) -> String {
    if approx && !r.is_integer() {
        let value = r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN);
        format!("{r} (~{value:.4})")
    } else {
        r.to_string()
    }
}

fn write_json_file(path: &PathBuf, value: &serde_json::Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Failed(format!("cannot serialize JSON: {e}")))?;
    std::fs::write(path, text + "\n")
        .map_err(|e| CliError::Failed(format!("cannot write {}: {e}", path.display())))
}

fn cmd_verify_theorem6(max_rank: u32, json: Option<PathBuf>) -> Result<u8, CliError> {
    let sweep = theorem6_sweep(max_rank)?;
    println!("shell-stability sweep, A-D families to rank {max_rank} plus E6 E7 E8 F4 G2");
    println!();
    println!("{:<6}{:<22}shells (norm: lattice/roots)", "type", "verdict");
    for (t, report) in &sweep.reports {
        let shells: Vec<String> = report
            .shells
            .iter()
            .map(|s| format!("{}: {}/{}", s.norm, s.lattice_count, s.root_count))
            .collect();
        let mut line = format!(
            "{:<6}{:<22}{}",
            t.to_string(),
            report.verdict.to_string(),
            shells.join("  ")
        );
        if !report.witnesses.is_empty() {
            write!(line, "  [{} witnesses]", report.witnesses.len()).unwrap();
        }
        println!("{line}");
    }
    println!();
    let names = |ts: &[SimpleType]| {
        ts.iter()
            .map(SimpleType::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("flagged:  {}", names(&sweep.flagged()));
    println!("expected: {}", names(&SweepOutcome::expected_flagged()));
    if let Some(path) = &json {
        write_json_file(path, &json::sweep_json(&sweep))?;
        println!("reports written to {}", path.display());
    }
    if sweep.pattern_holds() {
        println!("verdict pattern: PASS");
        Ok(EXIT_OK)
    } else {
        println!("verdict pattern: FAIL");
        Ok(EXIT_VERIFICATION_FAILED)
    }
}

fn print_report(report: &StabilityReport, approx: bool) {
    println!("type:    {}", report.simple_type);
    println!("verdict: {}", report.verdict);
    println!("shells of the full weight lattice:");
    for s in &report.shells {
        let marker = if report.determining_norms.contains(&s.norm) {
            " (determining)"
        } else {
            ""
        };
        println!(
            "  norm {}: {} lattice vectors, {} roots{marker}",
            fmt_rat(&s.norm, approx),
            s.lattice_count,
            s.root_count
        );
    }
    if let Some(solutions) = &report.diophantine {
        if solutions.is_empty() {
            println!("root-length equation: no solutions at this rank");
        } else {
            let rendered: Vec<String> = solutions
                .iter()
                .map(|(k, n)| format!("(k={k}, n={n})"))
                .collect();
            println!("root-length equation solutions: {}", rendered.join(" "));
        }
    }
    if report.witnesses.is_empty() {
        println!("witnesses: none");
    } else {
        println!(
            "witnesses ({} non-root shell vectors):",
            report.witnesses.len()
        );
        for w in report.witnesses.iter().take(16) {
            println!("  {w}");
        }
        if report.witnesses.len() > 16 {
            println!("  ... and {} more", report.witnesses.len() - 16);
        }
    }
}

fn cmd_stability(type_str: &str, approx: bool) -> Result<u8, CliError> {
    let t = parse_type(type_str)?;
    let report = check_stability(t)?;
    print_report(&report, approx);
    Ok(EXIT_OK)
}

fn cmd_diophantine(n_max: u64) -> Result<u8, CliError> {
    let solutions = an_diophantine(n_max);
    println!("solutions of (n-k) + k(n-k) = 2(n+1) with 0 <= k <= n <= {n_max}:");
    if solutions.is_empty() {
        println!("  none");
    }
    for (k, n) in &solutions {
        println!("  k={k}  n={n}");
    }
    let mut ranks: Vec<u64> = solutions.iter().map(|&(_, n)| n).collect();
    ranks.dedup();
    let rendered: Vec<String> = ranks.iter().map(u64::to_string).collect();
    println!("solvable ranks: {{{}}}", rendered.join(", "));
    Ok(EXIT_OK)
}

/// The five equal-rank pairs the driver knows how to build.
pub fn parse_pair(s: &str) -> Option<(SimpleType, SimpleType)> {
    let pairs = [
        ("a7-e7", "A7", "E7"),
        ("a8-e8", "A8", "E8"),
        ("d8-e8", "D8", "E8"),
        ("b4-f4", "B4", "F4"),
        ("a2-g2", "A2", "G2"),
    ];
    pairs
        .iter()
        .find(|(name, _, _)| *name == s.to_ascii_lowercase())
        .map(|(_, sub, sup)| (sub.parse().unwrap(), sup.parse().unwrap()))
}

fn build_pair(sub: SimpleType, sup: SimpleType) -> Result<EqualRankPair, CliError> {
    let sup_sys = RootSystem::build(sup)?;
    Ok(find_subsystem(&sup_sys, sub)?)
}

fn cmd_counterexample(pair_str: &str) -> Result<u8, CliError> {
    let Some((sub, sup)) = parse_pair(pair_str) else {
        return Err(CliError::Usage(format!(
            "unknown pair '{pair_str}'; expected one of a7-e7, a8-e8, d8-e8, b4-f4, a2-g2"
        )));
    };
    let pair = build_pair(sub, sup)?;
    println!("equal-rank pair: {sub} inside {sup}");
    println!(
        "subsystem: {} of {} ambient roots",
        pair.sub_roots.len(),
        pair.sup_system.roots().len()
    );
    println!("subsystem simple roots:");
    for r in &pair.sub_simple_roots {
        println!("  {r}");
    }
    let record = chamber_index(&pair)?;
    let control = sub.to_string() == "A2";
    match find_violation(&pair) {
        Ok(cert) => {
            cert.validate(&pair).map_err(CliError::from)?;
            println!("violating reflection found:");
            println!(
                "  alpha      = {}  (root of {sup}, not of {sub})",
                cert.alpha
            );
            println!("  r          = {}  (root of {sub})", cert.root);
            println!(
                "  s_alpha(r) = {}  (root of {sup}, NOT a root of {sub})",
                cert.image
            );
            print_index_line(&record);
            if control {
                eprintln!(
                    "error: the control pair admits a violation; this contradicts stability of A2"
                );
                return Ok(EXIT_VERIFICATION_FAILED);
            }
            Ok(EXIT_OK)
        }
        Err(CounterexampleError::NoViolation { .. }) if control => {
            println!("no violating reflection exists: every reflection of G2 preserves");
            println!("root lengths, and the A2 subsystem is exactly the long-root shell.");
            print_index_line(&record);
            println!("index equals the diagram bound: no contradiction for this pair.");
            Ok(EXIT_OK)
        }
        Err(e) => Err(CliError::Failed(format!(
            "expected a violating reflection for {sub} in {sup}: {e}"
        ))),
    }
}

fn print_index_line(record: &rootgeom::counterexample::ChamberIndexRecord) {
    println!(
        "chamber index: |W({})| / |W({})| = {} / {} = {}  vs diagram bound {}",
        record.sup, record.sub, record.weyl_sup, record.weyl_sub, record.index, record.dynkin_bound
    );
}

fn cmd_chamber_table() -> Result<u8, CliError> {
    println!(
        "{:<8}{:<8}{:>12}{:>12}{:>8}{:>8}  contradiction",
        "sub", "sup", "|W'|", "|W|", "index", "bound"
    );
    let mut ok = true;
    for (name, expect_exceeds) in [
        ("a7-e7", true),
        ("a8-e8", true),
        ("d8-e8", true),
        ("b4-f4", true),
        ("a2-g2", false),
    ] {
        let (sub, sup) = parse_pair(name).unwrap();
        let pair = build_pair(sub, sup)?;
        let record = chamber_index(&pair)?;
        let exceeds = record.exceeds_bound();
        println!(
            "{:<8}{:<8}{:>12}{:>12}{:>8}{:>8}  {}",
            sub.to_string(),
            sup.to_string(),
            record.weyl_sup,
            record.weyl_sub,
            record.index,
            record.dynkin_bound,
            if exceeds { "yes" } else { "no" }
        );
        ok &= exceeds == expect_exceeds;
    }
    if ok {
        Ok(EXIT_OK)
    } else {
        eprintln!("error: chamber indices do not match the expected pattern");
        Ok(EXIT_VERIFICATION_FAILED)
    }
}

fn cmd_hypothesis_a(factors_str: &str) -> Result<u8, CliError> {
    let factors: Vec<SimpleType> = factors_str
        .split(',')
        .map(|s| parse_type(s.trim()))
        .collect::<Result<_, _>>()?;
    let list = FactorList::from(factors);
    let rendered: Vec<String> = list.factors.iter().map(SimpleType::to_string).collect();
    let verdict = hypothesis_a(&list);
    println!(
        "factors [{}]: hypothesis {}satisfied",
        rendered.join(", "),
        if verdict { "" } else { "NOT " }
    );
    Ok(EXIT_OK)
}

fn cmd_shells(type_str: &str, norm_str: &str, approx: bool) -> Result<u8, CliError> {
    let t = parse_type(type_str)?;
    let norm = Rational::from_str(norm_str).map_err(|_| {
        CliError::Usage(format!(
            "cannot parse '{norm_str}' as an exact rational norm, e.g. 2 or 3/2"
        ))
    })?;
    if !norm.is_positive() {
        return Err(CliError::Usage(format!(
            "shell norm must be positive, got {norm}"
        )));
    }
    let sys = RootSystem::build(t)?;
    let shell = sys
        .weight_lattice()
        .vectors_of_norm(&norm)
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let roots = sys.roots_of_norm(&norm);
    println!(
        "{t}, squared length {}: {} vectors, {} roots",
        fmt_rat(&norm, approx),
        shell.len(),
        roots
    );
    Ok(EXIT_OK)
}

fn cmd_g2_example(approx: bool) -> Result<u8, CliError> {
    let g2 = RootSystem::build("G2".parse().unwrap())?;
    let gram = g2.gram();
    // R1 = {±short}, R2 = {±long} with the long root orthogonal to the short
    // one: an A1 x A1 subsystem of the G2 configuration.
    let short = g2.simple_roots()[0].clone();
    let long = g2
        .roots()
        .iter()
        .find(|r| {
            gram.norm(r).unwrap() == rootgeom::rat(6)
                && gram.inner(r, &short).unwrap() == rootgeom::rat(0)
                && r.coords()[0].is_positive()
        })
        .cloned()
        .expect("G2 contains a long root orthogonal to each short root");
    println!("A1 x A1 inside the G2 configuration");
    println!(
        "  e1 = {short}   squared length {}",
        fmt_rat(&gram.norm(&short).unwrap(), approx)
    );
    println!(
        "  e2 = {long}   squared length {}",
        fmt_rat(&gram.norm(&long).unwrap(), approx)
    );
    println!("  squared-length ratio 3, i.e. |e2| = sqrt(3) |e1|");
    let sub_roots = vec![short.clone(), -&short, long.clone(), -&long];
    let components = orthogonal_factor_decomposition(&sub_roots, gram)?;
    println!(
        "  orthogonal decomposition: {} components of sizes {:?}",
        components.len(),
        components.iter().map(Vec::len).collect::<Vec<_>>()
    );
    println!();
    println!("angles between R = {{±e1, ±e2}} and the twelve G2 roots:");
    let mut all_multiples_of_30 = true;
    for r in [&short, &long] {
        let mut line = format!("  {r}:");
        for s in g2.roots() {
            let angle = angle_classify(r, s, gram)?;
            all_multiples_of_30 &= angle % 30 == 0;
            write!(line, " {angle:>3}").unwrap();
        }
        println!("{line}");
    }
    println!("all angles are multiples of 30 degrees: {all_multiples_of_30}");
    // The configuration of adjoint weights recovers the metric up to scale.
    let induced = induced_gram(&adjoint_weights(&g2)?)?;
    let scale = induced.entry(0, 0) / gram.entry(0, 0);
    println!();
    println!(
        "form induced by the adjoint weights = catalog form x {}",
        fmt_rat(&scale, approx)
    );
    let proportional =
        (0..2).all(|i| (0..2).all(|j| &(gram.entry(i, j) * &scale) == induced.entry(i, j)));
    println!("proportionality holds exactly: {proportional}");
    if all_multiples_of_30 && proportional {
        Ok(EXIT_OK)
    } else {
        Ok(EXIT_VERIFICATION_FAILED)
    }
}

/// Convenience used by tests: angle table for the example pair.
pub fn g2_example_angles() -> Vec<u32> {
    let g2 = RootSystem::build("G2".parse().unwrap()).unwrap();
    let gram = g2.gram();
    let short = g2.simple_roots()[0].clone();
    let long = g2
        .roots()
        .iter()
        .find(|r| {
            gram.norm(r).unwrap() == rootgeom::rat(6)
                && gram.inner(r, &short).unwrap() == rootgeom::rat(0)
        })
        .cloned()
        .unwrap();
    let mut out = Vec::new();
    for r in [&short, &long, &-&short, &-&long] {
        for s in g2.roots() {
            out.push(angle_classify(r, s, gram).unwrap());
        }
    }
    out
}

/// Convenience used by tests: the example pair's root vectors.
pub fn g2_example_subsystem() -> (QVec, QVec) {
    let g2 = RootSystem::build("G2".parse().unwrap()).unwrap();
    let gram = g2.gram();
    let short = g2.simple_roots()[0].clone();
    let long = g2
        .roots()
        .iter()
        .find(|r| {
            gram.norm(r).unwrap() == rootgeom::rat(6)
                && gram.inner(r, &short).unwrap() == rootgeom::rat(0)
                && r.coords()[0].is_positive()
        })
        .cloned()
        .unwrap();
    (short, long)
}
