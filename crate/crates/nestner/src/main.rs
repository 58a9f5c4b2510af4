use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nestner::bench::{run_bench, write_csv, BenchConfig};
use nestner::core::corpus::max_recall;
use nestner::core::oracle::enumerate_analyses;
use nestner::core::{
    count_analyses, log_partition, marginals, nll_loss, viterbi_decode, Algorithm, LabelSet,
    SearchSpace, WeightTable,
};
use nestner::{corpus::read_corpus, files, output, Error};
use serde_json::json;

/// Chart parsers for nested named-entity mentions.
#[derive(Parser)]
#[command(name = "nestner", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Highest-scoring analysis as JSON.
    Decode(WeightArgs),
    /// Log partition function.
    Logz(WeightArgs),
    /// Posterior probability of every mention.
    Marginals(WeightArgs),
    /// Negative log-likelihood of a gold analysis.
    Loss {
        #[command(flatten)]
        weights: WeightArgs,
        /// Gold file: {"mentions": [{"type", "start", "end"}]}.
        #[arg(long)]
        gold: PathBuf,
    },
    /// Number of analyses in an algorithm's search space.
    Count {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        labels: usize,
        #[arg(long, default_value = "quadratic", value_parser = parse_algorithm)]
        algorithm: Algorithm,
    },
    /// Maximum recall of gold mentions within a search space.
    Coverage {
        /// Line-delimited corpus.
        #[arg(long)]
        corpus: PathBuf,
        /// non-nested, nested or restricted; all three when omitted.
        #[arg(long, value_parser = parse_space)]
        space: Option<SearchSpace>,
    },
    /// Decoding time per sentence length, as CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(long, default_value_t = 7)]
        labels: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Repeat or comma-separate; all algorithms when omitted.
        #[arg(long, value_delimiter = ',', value_parser = parse_algorithm)]
        algorithm: Vec<Algorithm>,
    },
    /// Every analysis of a small search space, one per line.
    Enumerate {
        #[arg(long)]
        length: usize,
        #[arg(long)]
        labels: usize,
        #[arg(long, value_parser = parse_space)]
        space: SearchSpace,
    },
    /// Derivation of the best analysis, one step per line.
    Trace(WeightArgs),
}

#[derive(Args)]
struct WeightArgs {
    /// Weight file: {"n", "labels", "default", "entries": [{"type", "start", "end", "weight"}]}.
    #[arg(long)]
    weights: PathBuf,
    /// Sentence length when the weight file has no "n".
    #[arg(long)]
    length: Option<usize>,
    #[arg(long, default_value = "quadratic", value_parser = parse_algorithm)]
    algorithm: Algorithm,
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_space(s: &str) -> Result<SearchSpace, String> {
    SearchSpace::from_name(s).ok_or_else(|| format!("unknown space `{s}` (expected non-nested, nested or restricted)"))
}

fn read_text(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))
}

fn load(args: &WeightArgs) -> Result<WeightTable, Error> {
    files::read_weights(&read_text(&args.weights)?, args.length)
}

fn print_json(value: serde_json::Value) -> String {
    value.to_string()
}

fn run(command: Command) -> Result<String, Error> {
    Ok(match command {
        Command::Decode(args) => {
            let w = load(&args)?;
            let d = viterbi_decode(args.algorithm, &w);
            print_json(output::decoded(w.labels(), d.score, &d.analysis))
        }
        Command::Logz(args) => {
            let w = load(&args)?;
            print_json(json!({"log_partition": output::number(log_partition(args.algorithm, &w))}))
        }
        Command::Marginals(args) => {
            let w = load(&args)?;
            print_json(output::marginals(w.labels(), &marginals(args.algorithm, &w)))
        }
        Command::Loss { weights, gold } => {
            let w = load(&weights)?;
            let gold = files::read_gold(&read_text(&gold)?, &w)?;
            print_json(json!({"loss": output::number(nll_loss(weights.algorithm, &w, &gold)?)}))
        }
        Command::Count { length, labels, algorithm } => count_analyses(algorithm, length, labels)?.to_string(),
        Command::Coverage { corpus, space } => {
            let file = fs::File::open(&corpus).map_err(|e| Error::Invalid(format!("{}: {e}", corpus.display())))?;
            let records = read_corpus(BufReader::new(file))?;
            let spaces = space.map_or(SearchSpace::ALL.to_vec(), |s| vec![s]);
            let lines: Result<Vec<String>, Error> = spaces
                .into_iter()
                .map(|s| Ok(print_json(output::coverage(&max_recall(&records, s)?))))
                .collect();
            lines?.join("\n")
        }
        Command::Bench { lengths, reps, labels, seed, algorithm } => {
            let algorithms = if algorithm.is_empty() { Algorithm::ALL.to_vec() } else { algorithm };
            let config = BenchConfig::new(lengths, reps, labels, seed, algorithms)?;
            let mut csv = Vec::new();
            write_csv(&run_bench(&config), &mut csv)?;
            String::from_utf8(csv).expect("csv is ascii").trim_end().to_owned()
        }
        Command::Enumerate { length, labels, space } => {
            let names = LabelSet::synthetic(labels);
            enumerate_analyses(space, length, labels)?
                .iter()
                .map(|a| print_json(output::mentions(&names, a)))
                .collect::<Vec<_>>()
                .join("\n")
        }
        Command::Trace(args) => {
            let w = load(&args)?;
            let d = viterbi_decode(args.algorithm, &w);
            d.trace.render(w.labels()).trim_end().to_owned()
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            if writeln!(io::stdout().lock(), "{text}").is_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
