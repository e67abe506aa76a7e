mod format;
mod parse;

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use artin::bench::{run_bench, BenchOp};
use artin::oracle::Oracle;
use artin::rewrite::{cyclically_reduce, equal_elements, normal_form, reduce};
use artin::solver::conjugacy;

use format::format_word;
use parse::{parse_group_file, parse_word, NameTable};

/// Word and conjugacy problems in Artin groups of extra-large type.
#[derive(Parser)]
#[command(name = "artin", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a word to a geodesic representative.
    Reduce { group_file: String, word: String },
    /// Canonical shortlex geodesic representative.
    NormalForm { group_file: String, word: String },
    /// Decide whether two words represent the same element.
    Equal {
        group_file: String,
        left: String,
        right: String,
    },
    /// Conjugate until the element is cyclically reduced; prints the
    /// reduced word and the conjugator.
    CyclicReduce { group_file: String, word: String },
    /// Decide conjugacy; on success prints a verified witness f with
    /// f^-1 u f = v.
    Conjugate {
        group_file: String,
        left: String,
        right: String,
    },
    /// Brute-force equality check from the presentation (test/debug).
    OracleEqual {
        group_file: String,
        left: String,
        right: String,
    },
    /// Brute-force bounded conjugacy search (test/debug).
    OracleConjugate {
        group_file: String,
        left: String,
        right: String,
        /// Maximum witness length to try.
        #[arg(long, default_value_t = 4)]
        bound: usize,
    },
    /// Mean wall time per operation over random instances.
    Bench {
        group_file: String,
        /// Comma-separated word lengths.
        #[arg(long, value_delimiter = ',')]
        lengths: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated operations: conjugate, reduce, normal-form.
        #[arg(long, value_delimiter = ',', default_value = "conjugate")]
        ops: Vec<String>,
    },
}

fn load_group(path: &str) -> Result<(artin::GroupContext, NameTable), String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", path, e))?;
    parse_group_file(&text)
}

fn run() -> Result<u8, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Reduce { group_file, word } => {
            let (ctx, names) = load_group(&group_file)?;
            let w = parse_word(&word, &names)?;
            println!("{}", format_word(&reduce(&w, &ctx), &names));
            Ok(0)
        }
        Command::NormalForm { group_file, word } => {
            let (ctx, names) = load_group(&group_file)?;
            let w = parse_word(&word, &names)?;
            println!("{}", format_word(&normal_form(&w, &ctx), &names));
            Ok(0)
        }
        Command::Equal {
            group_file,
            left,
            right,
        } => {
            let (ctx, names) = load_group(&group_file)?;
            let u = parse_word(&left, &names)?;
            let v = parse_word(&right, &names)?;
            if equal_elements(&u, &v, &ctx) {
                println!("equal");
                Ok(0)
            } else {
                println!("not-equal");
                Ok(1)
            }
        }
        Command::CyclicReduce { group_file, word } => {
            let (ctx, names) = load_group(&group_file)?;
            let w = parse_word(&word, &names)?;
            let (r, f) = cyclically_reduce(&w, &ctx);
            println!("{}", format_word(&r, &names));
            println!("{}", format_word(&f, &names));
            Ok(0)
        }
        Command::Conjugate {
            group_file,
            left,
            right,
        } => {
            let (ctx, names) = load_group(&group_file)?;
            let u = parse_word(&left, &names)?;
            let v = parse_word(&right, &names)?;
            let out = conjugacy(&u, &v, &ctx);
            if out.conjugate {
                let f = out.witness.expect("positive verdicts carry witnesses");
                if !equal_elements(&f.invert().concat(&u).concat(&f), &v, &ctx) {
                    return Err("internal error: witness failed verification".into());
                }
                println!("conjugate: yes");
                println!("witness: {}", format_word(&f, &names));
                Ok(0)
            } else {
                println!("conjugate: no");
                Ok(1)
            }
        }
        Command::OracleEqual {
            group_file,
            left,
            right,
        } => {
            let (ctx, names) = load_group(&group_file)?;
            let u = parse_word(&left, &names)?;
            let v = parse_word(&right, &names)?;
            let oracle = Oracle::new(&ctx);
            match oracle.equal(&u, &v).map_err(|e| e.to_string())? {
                true => {
                    println!("equal");
                    Ok(0)
                }
                false => {
                    println!("not-equal");
                    Ok(1)
                }
            }
        }
        Command::OracleConjugate {
            group_file,
            left,
            right,
            bound,
        } => {
            let (ctx, names) = load_group(&group_file)?;
            let u = parse_word(&left, &names)?;
            let v = parse_word(&right, &names)?;
            let oracle = Oracle::new(&ctx);
            match oracle.conjugate(&u, &v, bound).map_err(|e| e.to_string())? {
                Some(f) => {
                    println!("conjugate: yes");
                    println!("witness: {}", format_word(&f, &names));
                    Ok(0)
                }
                None => {
                    println!("conjugate: no (no witness within bound {})", bound);
                    Ok(1)
                }
            }
        }
        Command::Bench {
            group_file,
            lengths,
            samples,
            seed,
            ops,
        } => {
            let (ctx, _) = load_group(&group_file)?;
            if lengths.is_empty() {
                return Err("--lengths requires at least one length".into());
            }
            let ops: Vec<BenchOp> = ops
                .iter()
                .map(|s| BenchOp::parse(s).ok_or_else(|| format!("unknown operation '{}'", s)))
                .collect::<Result<_, _>>()?;
            let rows = run_bench(&ctx, &lengths, samples, seed, &ops);
            println!("{:<22} {:>8} {:>9} {:>14}", "operation", "length", "samples", "mean-us");
            for row in rows {
                println!(
                    "{:<22} {:>8} {:>9} {:>14.2}",
                    row.operation, row.length, row.samples, row.mean_micros
                );
            }
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
