use std::io::{self, Read};
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use recon_core::enumerate::FULL_SCAN_MAX;
use recon_core::{
    extend_f1, find_special_sets, generate_class_member, graph6, reconstruct_from_deck,
    verify_lemma1, verify_lemma2, verify_theorem_shard, Deck, Error, Graph, LabeledMateTrial,
    Shard,
};

const DOMAIN_NEGATIVE: u8 = 1;
const USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "recon",
    version,
    about = "Deck reconstruction for graphs with special vertex sets"
)]
struct Cli {
    /// Stable, machine-readable output.
    #[arg(long, global = true)]
    porcelain: bool,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Maximum number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every special set of a graph.
    Check {
        /// graph6 string, file holding one, or "-" for stdin
        input: String,
    },
    /// Print the deck of a graph, one graph6 card per line.
    Deck { input: String },
    /// Rebuild a graph from a deck file.
    Reconstruct {
        /// deck file or "-" for stdin
        input: String,
    },
    /// Exhaustively check uniqueness of reconstruction for all class members on n vertices.
    Verify {
        n: usize,
        /// Only scan slice i of t of the labeled space.
        #[arg(long)]
        shard: Option<Shard>,
    },
    /// Run the randomized labeled-mate checks on a class member.
    Lemmas {
        input: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Sample class members.
    Generate {
        n: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

/// Exit code and message for a failed invocation.
struct Failure(u8, String);

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure(USAGE, msg.into())
    }
    fn negative(msg: impl Into<String>) -> Self {
        Failure(DOMAIN_NEGATIVE, msg.into())
    }
}

type Outcome = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    }
    let outcome = match &cli.command {
        Command::Check { input } => check(&cli, input),
        Command::Deck { input } => deck(input),
        Command::Reconstruct { input } => reconstruct(&cli, input),
        Command::Verify { n, shard } => verify(*n, *shard),
        Command::Lemmas { input, trials } => lemmas(&cli, input, *trials),
        Command::Generate { n, count } => generate(&cli, *n, *count),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn read_input(input: &str) -> Result<String, Failure> {
    if input == "-" {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        return Ok(s);
    }
    let path = Path::new(input);
    if path.is_file() {
        return std::fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("reading {input}: {e}")));
    }
    Ok(input.to_string())
}

fn read_graph(input: &str) -> Result<Graph, Failure> {
    let text = read_input(input)?;
    let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("");
    graph6::decode_str(line.trim_end_matches('\r')).map_err(|e| Failure::usage(e.to_string()))
}

fn check(cli: &Cli, input: &str) -> Outcome {
    let g = read_graph(input)?;
    let sets = find_special_sets(&g);
    if sets.is_empty() {
        println!(
            "{}",
            if cli.porcelain {
                "not-member"
            } else {
                "not a class member"
            }
        );
        return Ok(DOMAIN_NEGATIVE);
    }
    if !cli.porcelain {
        println!("class member with {} witness(es)", sets.len());
    }
    for s in sets {
        println!("{s}");
    }
    Ok(0)
}

fn deck(input: &str) -> Outcome {
    let g = read_graph(input)?;
    let d = Deck::of(&g).map_err(|e| Failure::usage(e.to_string()))?;
    print!("{}", d.to_text());
    Ok(0)
}

fn reconstruct(cli: &Cli, input: &str) -> Outcome {
    let text = read_input(input)?;
    let d = Deck::parse(&text).map_err(|e| match e {
        Error::Parse { .. } => Failure::usage(e.to_string()),
        other => Failure::negative(other.to_string()),
    })?;
    let report = reconstruct_from_deck(&d).map_err(|e| Failure::negative(e.to_string()))?;
    if cli.porcelain {
        println!("candidates_tried\t{}", report.candidates_tried);
        println!("survivors\t{}", report.survivors.len());
        println!("unique\t{}", report.unique);
        for s in &report.survivors {
            println!("survivor\t{s}");
        }
    } else {
        println!("candidates_tried: {}", report.candidates_tried);
        println!("survivors: {}", report.survivors.len());
        println!("unique: {}", report.unique);
        for s in &report.survivors {
            println!("survivor: {s}");
        }
    }
    Ok(if report.unique { 0 } else { DOMAIN_NEGATIVE })
}

fn verify(n: usize, shard: Option<Shard>) -> Outcome {
    if !(3..=FULL_SCAN_MAX).contains(&n) {
        return Err(Failure::usage(format!(
            "n must lie in 3..={FULL_SCAN_MAX}, got {n}"
        )));
    }
    let summary = verify_theorem_shard(n, shard).map_err(|e| Failure::usage(e.to_string()))?;
    print!("{}", summary.render());
    Ok(if summary.counterexamples.is_empty() {
        0
    } else {
        DOMAIN_NEGATIVE
    })
}

#[derive(Default)]
struct Tally {
    checks: usize,
    failures: usize,
}

impl Tally {
    fn record(&mut self, ok: bool) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
        }
    }

    fn line(&self, name: &str, porcelain: bool) -> String {
        let verdict = if self.failures == 0 { "pass" } else { "fail" };
        if porcelain {
            format!("{name}\t{verdict}\t{}\t{}", self.checks, self.failures)
        } else {
            format!(
                "{name}: {verdict} ({} checks, {} failures)",
                self.checks, self.failures
            )
        }
    }
}

fn lemmas(cli: &Cli, input: &str, trials: usize) -> Outcome {
    let g = read_graph(input)?;
    let sets = find_special_sets(&g);
    if sets.is_empty() {
        return Err(Failure::negative("not in class"));
    }
    if trials == 0 {
        eprintln!("warning: 0 trials requested, nothing is checked");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
    let (mut lemma1, mut lemma2, mut extension) =
        (Tally::default(), Tally::default(), Tally::default());
    for _ in 0..trials {
        let trial = LabeledMateTrial::random(g.clone(), &mut rng)
            .map_err(|e| Failure::negative(e.to_string()))?;
        for s in &sets {
            lemma1.record(verify_lemma1(&trial, s) == Ok(true));
            lemma2.record(verify_lemma2(&trial, s) == Ok(true));
            extension.record(
                extend_f1(&trial, s).is_ok_and(|f| f.is_isomorphism(&trial.g, &trial.gprime)),
            );
        }
    }
    for (name, t) in [
        ("lemma1", &lemma1),
        ("lemma2", &lemma2),
        ("extension", &extension),
    ] {
        println!("{}", t.line(name, cli.porcelain));
    }
    let failed = lemma1.failures + lemma2.failures + extension.failures;
    Ok(if failed == 0 { 0 } else { DOMAIN_NEGATIVE })
}

fn generate(cli: &Cli, n: usize, count: usize) -> Outcome {
    let mut produced = 0;
    for i in 0..count as u64 {
        match generate_class_member(n, cli.seed.wrapping_add(i)) {
            Ok(Some(g)) => {
                println!("{}", graph6::encode_string(&g));
                produced += 1;
            }
            Ok(None) => {}
            Err(e) => return Err(Failure::usage(e.to_string())),
        }
    }
    if produced == 0 && count > 0 {
        return Err(Failure::negative(format!(
            "no class member found on {n} vertices"
        )));
    }
    Ok(0)
}
