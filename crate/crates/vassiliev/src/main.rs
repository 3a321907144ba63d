use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use vassiliev::braid::{close, is_knot_closure, permutation_of, BraidWord, Orientation};
use vassiliev::error::{Error, Result};
use vassiliev::invariants::{conway, jones, Evaluator, InvariantId};
use vassiliev::moves::{bh_word, MoveSpec, SignConvention};
use vassiliev::verify::{
    check_general, check_symbolic, check_theorem, check_x_independence, run_sweep, write_report,
    SweepConfig,
};

#[derive(Parser)]
#[command(name = "vassiliev", version, about = "Braid move calculus and finite type invariant checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvArg {
    Additive,
    Multiplicative,
}

impl From<ConvArg> for SignConvention {
    fn from(c: ConvArg) -> Self {
        match c {
            ConvArg::Additive => SignConvention::Additive,
            ConvArg::Multiplicative => SignConvention::Multiplicative,
        }
    }
}

#[derive(Args)]
struct SpecArgs {
    /// Move order k
    #[arg(long)]
    k: usize,
    /// Comma-separated d vector, entries +2 or -2 (k+1 of them)
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    /// Orientation bits, one character per strand
    #[arg(long)]
    o: String,
    #[arg(long, value_enum, default_value = "additive")]
    conv: ConvArg,
}

impl SpecArgs {
    fn spec(&self) -> Result<MoveSpec> {
        MoveSpec::new(self.k, parse_d(&self.d)?, Orientation::parse(&self.o)?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the move word BH_d^o(k)
    Bh(SpecArgs),
    /// Expand a product of double crossings in the singular calculus
    Expand {
        #[arg(long)]
        word: String,
        #[arg(long)]
        o: String,
        /// Drop terms with more than this many double points
        #[arg(long)]
        max_sing: Option<usize>,
        #[arg(long, value_enum, default_value = "additive")]
        conv: ConvArg,
        #[arg(long)]
        json: bool,
    },
    /// Compare the expansion of BH against the closed-form sum
    Symbolic(SpecArgs),
    /// Evaluate both sides of the difference formula on a (T, x) pair
    Check {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        t: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        inv: String,
        /// Use fused singular letters on the right-hand side
        #[arg(long)]
        singular_rhs: bool,
        /// Check that the right-hand side is unchanged for these extra x
        /// words (comma-free: repeat the flag)
        #[arg(long = "also-x")]
        also_x: Vec<String>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Evaluate the block formula on n side-by-side moves
    General {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Per-block d vectors, slash-separated: 2,2/-2,2
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Global orientation bits on n(k+2) strands
        #[arg(long)]
        o: String,
        #[arg(long)]
        t: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        inv: String,
        #[arg(long, value_enum, default_value = "additive")]
        conv: ConvArg,
        /// Use the block formula's literal unflipped reversed word
        #[arg(long)]
        literal_w: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the randomized verification sweep
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an invariant or polynomial of one closure
    Invariant {
        #[arg(long)]
        word: String,
        #[arg(long)]
        o: String,
        /// jones | conway | c2 | c4 | j2 | j3 | j4
        #[arg(long)]
        which: String,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

fn parse_d(text: &str) -> Result<Vec<i8>> {
    text.split(',')
        .map(|v| v.trim().parse::<i8>().map_err(|_| Error::Config(format!("bad d entry `{}`", v))))
        .collect()
}

fn parse_word(text: &str, o: &Orientation) -> Result<BraidWord> {
    BraidWord::parse(text, o.len(), o.clone())
}

fn evaluator(cache: &Option<PathBuf>) -> Result<Evaluator> {
    match cache {
        Some(path) => Evaluator::with_cache_file(path),
        None => Ok(Evaluator::new()),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(ok) => {
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(2)
        }
    }
}

fn dispatch(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Bh(args) => {
            let spec = args.spec()?;
            let word = bh_word(&spec);
            println!("{}", word.render());
            Ok(true)
        }
        Command::Expand { word, o, max_sing, conv, json } => {
            let o = Orientation::parse(&o)?;
            let w = parse_word(&word, &o)?;
            let sum = vassiliev::algebra::expand_word(&w, conv.into(), max_sing)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&sum.to_json())?);
            } else {
                println!("{}", sum);
            }
            Ok(true)
        }
        Command::Symbolic(args) => {
            let spec = args.spec()?;
            let report = check_symbolic(&spec, args.conv.into())?;
            println!("expansion:   {}", report.expanded);
            println!("closed form: {}", report.closed_form);
            println!("{}", if report.equal { "EQUAL" } else { "DIFFER" });
            Ok(report.equal)
        }
        Command::Check { spec, t, x, inv, singular_rhs, also_x, cache } => {
            let mspec = spec.spec()?;
            let id: InvariantId = inv.parse()?;
            let o = mspec.o.clone();
            let t = parse_word(&t, &o)?;
            let x = parse_word(&x, &o)?;
            let ev = evaluator(&cache)?;
            let report =
                check_theorem(&ev, &mspec, &t, &x, id, spec.conv.into(), singular_rhs)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            let mut ok = report.equal;
            if !also_x.is_empty() {
                let mut xs = vec![x.clone()];
                for extra in &also_x {
                    xs.push(parse_word(extra, &o)?);
                }
                let xrep = check_x_independence(&ev, &mspec, &t, &xs, id, spec.conv.into())?;
                println!("{}", serde_json::to_string_pretty(&xrep)?);
                ok = ok && xrep.independent;
            }
            Ok(ok)
        }
        Command::General { n, k, d, o, t, x, inv, conv, literal_w, cache } => {
            let o = Orientation::parse(&o)?;
            let blocks: Vec<&str> = d.split('/').collect();
            if blocks.len() != n {
                return Err(Error::Config(format!("{} blocks of d for n = {}", blocks.len(), n)));
            }
            let mut specs = Vec::with_capacity(n);
            for (j, b) in blocks.iter().enumerate() {
                let block_o = o.restrict(j * (k + 2) + 1, k + 2);
                specs.push(MoveSpec::new(k, parse_d(b)?, block_o)?);
            }
            let id: InvariantId = inv.parse()?;
            let t = parse_word(&t, &o)?;
            let x = parse_word(&x, &o)?;
            let ev = evaluator(&cache)?;
            let report =
                check_general(&ev, &specs, &o, &t, &x, id, conv.into(), literal_w)?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.equal)
        }
        Command::Sweep { config, seed, out } => {
            let mut cfg = match config {
                Some(path) => SweepConfig::parse(&std::fs::read_to_string(path)?)?,
                None => SweepConfig::default(),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let report = run_sweep(&cfg)?;
            for w in &report.warnings {
                eprintln!("warning: {}", w);
            }
            if let Some(dir) = out {
                write_report(&report, &dir)?;
            }
            print!("{}", report.summary_csv());
            if let Some(conv) = &report.convention {
                println!("selected sign convention: {}", conv);
            }
            for f in &report.failures {
                eprintln!("FAIL [{}]: {}", f.family, f.detail);
                eprintln!("  repro: {}", f.repro);
            }
            println!("{}", if report.all_passed() { "SWEEP PASS" } else { "SWEEP FAIL" });
            Ok(report.all_passed())
        }
        Command::Invariant { word, o, which, cache } => {
            let o = Orientation::parse(&o)?;
            let w = parse_word(&word, &o)?;
            match which.as_str() {
                "jones" => {
                    let v = jones(&w)?;
                    println!("{}", v);
                }
                "conway" => {
                    let c = conway(&w)?;
                    println!("{}", c.display("z"));
                }
                "components" => {
                    println!("{}", close(&w)?.components);
                }
                "permutation" => {
                    println!("{}", permutation_of(&w)?);
                }
                "knot" => {
                    println!("{}", is_knot_closure(&w)?);
                }
                _ => {
                    let id: InvariantId = which.parse()?;
                    let ev = evaluator(&cache)?;
                    println!("{}", ev.evaluate(id, &w)?);
                }
            }
            Ok(true)
        }
    }
}
