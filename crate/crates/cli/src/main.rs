//! `ltlearn`: learn, check and transform LTL formulas over finite words.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ltlearn::enumerative::learn_exact;
use ltlearn::f_and::{learn_f_and_fattern, learn_f_and_napprox, shortest_separating_word};
use ltlearn::formula::{format_formula, parse_formula, Formula, Fragment};
use ltlearn::fx::{disjunction_expansions, remove_f, trivial_separator, trivial_separator_size};
use ltlearn::reductions::{
    hittingset_to_sample, parse_sets, random_hittingset, random_setcover, setcover_to_sample,
    solve_hittingset_bruteforce, solve_setcover_bruteforce, HittingSetInstance, Metadata,
    SetCoverInstance,
};
use ltlearn::semantics::{check_separates, satisfies};
use ltlearn::trace::{format_sample, parse_sample, Alphabet, ParseError, Sample};
use ltlearn::x_and::{greedy_learn_x_and, pattern_to_formula};

#[derive(Parser)]
#[command(
    name = "ltlearn",
    version,
    about = "Learn LTL formulas over finite words from examples"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Learn a separating formula for a sample.
    Learn(LearnArgs),
    /// Evaluate a formula on every word of a sample.
    Check(CheckArgs),
    /// Minimal separator size by exhaustive enumeration.
    Oracle(OracleArgs),
    /// Generate a sample from a set cover or hitting set instance.
    Gen(GenArgs),
    /// Apply a syntactic map to a formula.
    Transform(TransformArgs),
    /// Run the learners on random reduction instances and print CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// Size-ordered enumeration, minimal result.
    Exact,
    /// Greedy cover over positions (x-and).
    Greedy,
    /// Shortest subword fattern for one positive or one negative word (f-and).
    Dp,
    /// One fattern per negative word, conjoined (f-and).
    Napprox,
    /// Disjunction of the positive words spelled out with X (f-x-and-or).
    Trivial,
}

#[derive(Args)]
struct LearnArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, default_value = "full")]
    fragment: Fragment,
    /// Defaults to greedy for x-and, napprox for f-and, trivial for f-x-and-or, else exact.
    #[arg(long)]
    algo: Option<Algo>,
    /// Size cap for exact search.
    #[arg(long)]
    max_size: Option<usize>,
    /// Let the dp search words with equal adjacent letters; prints the word only.
    #[arg(long)]
    allow_repeats: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long)]
    formula: String,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, short)]
    input: PathBuf,
    #[arg(long, default_value = "full")]
    fragment: Fragment,
    #[arg(long)]
    max_size: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    SetCover,
    HittingSet,
}

impl Problem {
    fn name(self) -> &'static str {
        match self {
            Problem::SetCover => "set-cover",
            Problem::HittingSet => "hitting-set",
        }
    }
}

#[derive(Args)]
struct GenArgs {
    problem: Problem,
    /// Instance file: one set per line as comma-separated integers.
    #[arg(long, conflicts_with = "random", required_unless_present = "random")]
    sets: Option<PathBuf>,
    /// Random instance `n,l,p` or `n,l,p,seed`; `n` counts elements (set cover) or
    /// collections (hitting set) and `l` counts sets or ground elements.
    #[arg(long)]
    random: Option<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sample file to write; metadata goes to the same path plus `.meta`.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TransformOp {
    Dual,
    ExpandOr,
    RemoveF,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long)]
    op: TransformOp,
    #[arg(long)]
    formula: String,
    /// Comma-separated alphabet; defaults to the one of `--input`, else a,b,c.
    #[arg(long)]
    alphabet: Option<String>,
    #[arg(long, short)]
    input: Option<PathBuf>,
}

#[derive(Args)]
struct BenchArgs {
    problem: Problem,
    /// Elements of the universe (set cover) or number of collections (hitting set).
    #[arg(long, default_value_t = 4)]
    n: usize,
    /// Number of sets (set cover) or ground set size (hitting set).
    #[arg(long, default_value_t = 4)]
    l: usize,
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 10)]
    count: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also run exact search capped at the certified optimum.
    #[arg(long)]
    exact: bool,
    /// Write 0 in the millis column so output is reproducible.
    #[arg(long)]
    no_timing: bool,
}

enum Failure {
    /// Bad input: exit 2.
    Input(String),
    /// A well-formed question without a separator: exit 1.
    NoSeparator(String),
}

type Outcome = Result<String, Failure>;

fn input(msg: impl std::fmt::Display) -> Failure {
    Failure::Input(msg.to_string())
}

fn no_separator() -> Failure {
    Failure::NoSeparator("no separating formula".into())
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn load_sample(path: &Path) -> Result<Sample, Failure> {
    parse_sample(&read(path)?).map_err(|e| match e {
        ParseError::Contradiction { .. } => {
            eprintln!("{}: {e}", path.display());
            no_separator()
        }
        other => input(format!("{}: {other}", path.display())),
    })
}

/// Default exact-search cap: the size of a separator guaranteed to exist, if one does.
fn default_cap(sample: &Sample, fragment: Fragment) -> usize {
    let l = sample.max_len();
    match fragment {
        Fragment::XAnd | Fragment::XOr => 3 * l - 2,
        Fragment::FAnd => 3 * sample.negatives().len() * l,
        Fragment::GOr => 3 * sample.positives().len() * l,
        _ => {
            let (side, other) = match fragment {
                Fragment::GXAndOr | Fragment::FullDual => (sample.negatives(), sample.positives()),
                _ => (sample.positives(), sample.negatives()),
            };
            let len = side[0].len();
            if side.iter().chain(other).all(|w| w.len() == len) {
                let distinct: std::collections::BTreeSet<_> = side.iter().collect();
                trivial_separator_size(distinct.len(), len)
            } else {
                3 * l - 2
            }
        }
    }
}

fn report(formula: &Formula, sample: &Sample) -> String {
    format!(
        "{}\nsize: {}\n",
        format_formula(formula, sample.alphabet()),
        formula.size()
    )
}

fn require(fragment: Fragment, allowed: &[Fragment], algo: &str) -> Result<(), Failure> {
    if allowed.contains(&fragment) {
        Ok(())
    } else {
        Err(input(format!(
            "--algo {algo} does not apply to fragment {fragment}"
        )))
    }
}

fn learn(args: LearnArgs) -> Outcome {
    let sample = load_sample(&args.input)?;
    let fragment = args.fragment;
    let algo = args.algo.unwrap_or(match fragment {
        Fragment::XAnd => Algo::Greedy,
        Fragment::FAnd => Algo::Napprox,
        Fragment::FXAndOr => Algo::Trivial,
        _ => Algo::Exact,
    });
    let found = match algo {
        Algo::Exact => {
            let cap = args
                .max_size
                .unwrap_or_else(|| default_cap(&sample, fragment));
            learn_exact(&sample, fragment, cap)
        }
        Algo::Greedy => {
            require(fragment, &[Fragment::XAnd], "greedy")?;
            greedy_learn_x_and(&sample)
                .map(|p| pattern_to_formula(&p).expect("learner never returns unsat"))
        }
        Algo::Dp if args.allow_repeats => {
            require(fragment, &[Fragment::FAnd], "dp")?;
            return match shortest_separating_word(&sample, false) {
                Some(w) => Ok(format!(
                    "word: {}\nlength: {}\n",
                    w.tokenized(sample.alphabet()),
                    w.len()
                )),
                None => Err(Failure::NoSeparator("no separating word".into())),
            };
        }
        Algo::Dp => {
            require(fragment, &[Fragment::FAnd], "dp")?;
            learn_f_and_fattern(&sample).map_err(input)?
        }
        Algo::Napprox => {
            require(fragment, &[Fragment::FAnd], "napprox")?;
            learn_f_and_napprox(&sample)
        }
        Algo::Trivial => {
            require(fragment, &[Fragment::FXAndOr, Fragment::Full], "trivial")?;
            trivial_separator(&sample).map_err(input)?
        }
    };
    match found {
        Some(f) => Ok(report(&f, &sample)),
        None => Err(no_separator()),
    }
}

fn check(args: CheckArgs) -> Outcome {
    let text = read(&args.input)?;
    let sample =
        parse_sample(&text).map_err(|e| input(format!("{}: {e}", args.input.display())))?;
    let alphabet = sample.alphabet();
    let formula = parse_formula(&args.formula, alphabet).map_err(input)?;
    let mut out = String::new();
    for (label, words) in [('+', sample.positives()), ('-', sample.negatives())] {
        for w in words {
            let verdict = if satisfies(w, &formula) {
                "sat"
            } else {
                "unsat"
            };
            writeln!(out, "{label} {}: {verdict}", w.display(alphabet)).unwrap();
        }
    }
    writeln!(out, "separates: {}", check_separates(&sample, &formula)).unwrap();
    Ok(out)
}

fn oracle(args: OracleArgs) -> Outcome {
    let sample = load_sample(&args.input)?;
    let cap = args
        .max_size
        .unwrap_or_else(|| default_cap(&sample, args.fragment));
    match learn_exact(&sample, args.fragment, cap) {
        Some(f) => Ok(report(&f, &sample)),
        None => Err(Failure::NoSeparator(format!("none up to {cap}"))),
    }
}

fn parse_random(text: &str, default_seed: u64) -> Result<(usize, usize, f64, u64), Failure> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || {
        input(format!(
            "--random expects n,l,p or n,l,p,seed, got `{text}`"
        ))
    };
    if parts.len() != 3 && parts.len() != 4 {
        return Err(bad());
    }
    let n = parts[0].parse().map_err(|_| bad())?;
    let l = parts[1].parse().map_err(|_| bad())?;
    let p: f64 = parts[2].parse().map_err(|_| bad())?;
    if !(0.0..=1.0).contains(&p) {
        return Err(bad());
    }
    let seed = match parts.get(3) {
        Some(s) => s.parse().map_err(|_| bad())?,
        None => default_seed,
    };
    Ok((n, l, p, seed))
}

struct Generated {
    sample: Sample,
    meta: Metadata,
}

fn generate_setcover(
    inst: &SetCoverInstance,
    seed: Option<u64>,
    p: Option<f64>,
) -> Result<Generated, Failure> {
    let k = solve_setcover_bruteforce(inst).map_err(input)?;
    let l = inst.sets.len();
    let mut extra = vec![
        ("universe".to_string(), inst.universe.to_string()),
        ("sets".to_string(), l.to_string()),
    ];
    if let Some(p) = p {
        extra.push(("p".into(), p.to_string()));
    }
    if let Some(k) = k {
        extra.push(("separator_size".into(), (l + 2 * k + 1).to_string()));
    }
    Ok(Generated {
        sample: setcover_to_sample(inst),
        meta: Metadata {
            kind: "set-cover".into(),
            optimum: k,
            seed,
            extra,
        },
    })
}

fn generate_hittingset(
    inst: &HittingSetInstance,
    seed: Option<u64>,
    p: Option<f64>,
) -> Result<Generated, Failure> {
    let k = solve_hittingset_bruteforce(inst).map_err(input)?;
    let sample = hittingset_to_sample(inst).map_err(input)?;
    let mut extra = vec![
        ("ground".to_string(), inst.ground.to_string()),
        (
            "collections".to_string(),
            inst.collections.len().to_string(),
        ),
    ];
    if let Some(p) = p {
        extra.push(("p".into(), p.to_string()));
    }
    if let Some(k) = k {
        extra.push(("separator_size".into(), (3 * k - 1).to_string()));
    }
    Ok(Generated {
        sample,
        meta: Metadata {
            kind: "hitting-set".into(),
            optimum: k,
            seed,
            extra,
        },
    })
}

fn gen(args: GenArgs) -> Outcome {
    let generated = match (&args.sets, &args.random) {
        (Some(path), _) => {
            let file =
                parse_sets(&read(path)?).map_err(|e| input(format!("{}: {e}", path.display())))?;
            match args.problem {
                Problem::SetCover => {
                    generate_setcover(&file.into_setcover().map_err(input)?, None, None)?
                }
                Problem::HittingSet => {
                    generate_hittingset(&file.into_hittingset().map_err(input)?, None, None)?
                }
            }
        }
        (None, Some(text)) => {
            let (n, l, p, seed) = parse_random(text, args.seed)?;
            match args.problem {
                Problem::SetCover => {
                    let inst = random_setcover(n, l, p, seed);
                    let inst = SetCoverInstance::new(inst.universe, inst.sets).map_err(input)?;
                    generate_setcover(&inst, Some(seed), Some(p))?
                }
                Problem::HittingSet => {
                    let inst = random_hittingset(n, l, p, seed);
                    let inst =
                        HittingSetInstance::new(inst.ground, inst.collections).map_err(input)?;
                    generate_hittingset(&inst, Some(seed), Some(p))?
                }
            }
        }
        (None, None) => return Err(input("give --sets FILE or --random n,l,p")),
    };
    let text = format_sample(&generated.sample);
    match args.out {
        None => Ok(text),
        Some(path) => {
            let meta_path = PathBuf::from(format!("{}.meta", path.display()));
            fs::write(&path, text).map_err(|e| input(format!("{}: {e}", path.display())))?;
            fs::write(&meta_path, generated.meta.to_string())
                .map_err(|e| input(format!("{}: {e}", meta_path.display())))?;
            Ok(format!(
                "wrote {} and {}\n",
                path.display(),
                meta_path.display()
            ))
        }
    }
}

fn transform(args: TransformArgs) -> Outcome {
    let alphabet = match (&args.alphabet, &args.input) {
        (Some(tokens), _) => Alphabet::new(tokens.split(',').map(str::trim)).map_err(input)?,
        (None, Some(path)) => load_sample(path)?.alphabet().clone(),
        (None, None) => Alphabet::letters(3),
    };
    let formula = parse_formula(&args.formula, &alphabet).map_err(input)?;
    let show = |f: &Formula| format!("{}\n", format_formula(f, &alphabet));
    match args.op {
        TransformOp::Dual => Ok(show(&formula.dual())),
        TransformOp::RemoveF => Ok(show(&remove_f(&formula).map_err(input)?)),
        TransformOp::ExpandOr => Ok(disjunction_expansions(&formula)
            .map_err(input)?
            .map(|f| show(&f))
            .collect()),
    }
}

fn bench(args: BenchArgs) -> Outcome {
    let mut out = String::from("instance,algorithm,separating,size,optimum,ratio,millis\n");
    let mut done = 0;
    let attempts = args.count.saturating_mul(1000);
    for seed in (args.seed..).take(attempts as usize) {
        if done == args.count {
            break;
        }
        let generated = match args.problem {
            Problem::SetCover => {
                let inst = random_setcover(args.n, args.l, args.p, seed);
                if !inst.has_cover() {
                    continue;
                }
                generate_setcover(&inst, Some(seed), None)?
            }
            Problem::HittingSet => {
                let inst = random_hittingset(args.n, args.l, args.p, seed);
                if !inst.has_hitting_set() {
                    continue;
                }
                generate_hittingset(&inst, Some(seed), None)?
            }
        };
        done += 1;
        let Some(optimum) = generated
            .meta
            .extra
            .iter()
            .find(|(k, _)| k == "separator_size")
            .map(|(_, v)| v.parse::<usize>().expect("written as an integer"))
        else {
            continue;
        };
        let sample = &generated.sample;
        let name = format!("{}-{seed}", args.problem.name());
        let mut runs: Vec<(&str, Box<dyn Fn() -> Option<Formula>>)> = match args.problem {
            Problem::SetCover => vec![(
                "greedy",
                Box::new(|| {
                    greedy_learn_x_and(sample).map(|p| pattern_to_formula(&p).expect("satisfiable"))
                }),
            )],
            Problem::HittingSet => vec![
                (
                    "dp",
                    Box::new(|| learn_f_and_fattern(sample).ok().flatten()),
                ),
                ("napprox", Box::new(|| learn_f_and_napprox(sample))),
            ],
        };
        if args.exact {
            let fragment = match args.problem {
                Problem::SetCover => Fragment::XAnd,
                Problem::HittingSet => Fragment::FAnd,
            };
            runs.push((
                "exact",
                Box::new(move || learn_exact(sample, fragment, optimum)),
            ));
        }
        for (algo, run) in runs {
            let start = Instant::now();
            let found = run();
            let millis = if args.no_timing {
                0
            } else {
                start.elapsed().as_millis()
            };
            let (separating, size) = match &found {
                Some(f) => (check_separates(sample, f), f.size()),
                None => (false, 0),
            };
            let ratio = size as f64 / optimum as f64;
            writeln!(
                out,
                "{name},{algo},{separating},{size},{optimum},{ratio:.3},{millis}"
            )
            .unwrap();
        }
    }
    if done < args.count {
        eprintln!(
            "only {done} of {} random instances were solvable",
            args.count
        );
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Learn(a) => learn(a),
        Command::Check(a) => check(a),
        Command::Oracle(a) => oracle(a),
        Command::Gen(a) => gen(a),
        Command::Transform(a) => transform(a),
        Command::Bench(a) => bench(a),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::NoSeparator(msg)) => {
            println!("{msg}");
            eprintln!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
