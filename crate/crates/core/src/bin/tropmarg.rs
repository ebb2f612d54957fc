use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use tropical_marginal::marginal::{
    sample_additive_marginal, sample_five_factor_marginal, sample_left_marginal, sample_right_marginal,
    sample_sandwich_marginal, verify_marginal, WordTemplate,
};
use tropical_marginal::protocols::{
    attack_transcript, run_protocol, FamilyKind, GenSpec, Protocol, ProtocolParams, ProtocolTranscript, SamplerParams,
};
use tropical_marginal::wire::{self, Encoding, ErrorRecord, SetFile};
use tropical_marginal::{selftest, Error, SemiringKind};

/// Marginal sets over tropical matrices and key exchange built on them.
#[derive(Parser)]
#[command(name = "tropmarg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate random public protocol parameters.
    GenParams {
        #[arg(long, default_value = "min-plus")]
        semiring: SemiringKind,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Entry range as LO..HI.
        #[arg(long, default_value = "-50..50", value_parser = parse_range, allow_hyphen_values = true)]
        range: (i64, i64),
        /// poly, circulant, upper-t, lower-s, jones or ldp.
        #[arg(long, default_value = "poly")]
        family: FamilyKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        blocks: usize,
        /// Polynomial degree for the poly family.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 3)]
        count: usize,
        #[arg(long, default_value_t = 100)]
        l: i64,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        l1: i64,
        #[arg(long, default_value_t = 10, allow_hyphen_values = true)]
        l2: i64,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Sample a marginal set for a word over the first block's public data.
    GenMarginal {
        /// right, left, sandwich, five-factor or additive.
        #[arg(long)]
        word: String,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        count: Option<usize>,
        /// Defaults to the seed in the parameter file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value = "auto")]
        encoding: Encoding,
        #[arg(long, short)]
        out: Option<PathBuf>,
        /// Also write the word template here.
        #[arg(long)]
        word_out: Option<PathBuf>,
    },
    /// Check every tuple of a set against a word; exit 1 if any fails.
    VerifyMarginal {
        #[arg(long)]
        set: PathBuf,
        #[arg(long)]
        word: PathBuf,
    },
    /// Run a protocol; exit 1 if the keys differ.
    RunProtocol {
        protocol: Protocol,
        #[arg(long)]
        params: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Number of blocks for multiblock runs.
        #[arg(long)]
        blocks: Option<usize>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decomposition attack on a transcript.
    Attack {
        #[arg(long)]
        transcript: PathBuf,
        #[arg(long, default_value_t = 3)]
        degree: u32,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Run the golden-vector checks.
    Selftest,
}

fn parse_range(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once("..").ok_or("expected LO..HI")?;
    let lo = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}..{hi}"));
    }
    Ok((lo, hi))
}

/// A command's result: success, or a failed check (exit 1).
enum Outcome {
    Ok,
    Failed,
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(value: &T, out: Option<&Path>) -> Result<(), Error> {
    let text = wire::to_text(value)?;
    match out {
        Some(path) => wire::write_atomic(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn gen_marginal(
    word: &str,
    params: &ProtocolParams,
    count: usize,
    seed: u64,
) -> Result<(WordTemplate, Vec<Vec<tropical_marginal::Matrix>>), Error> {
    params.validate()?;
    let block = &params.blocks[0];
    let s = params.sampler;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = &block.w;
    let set = match word {
        "right" => sample_right_marginal(w, count, s.l, &mut rng)?,
        "left" => sample_left_marginal(w, count, s.l, &mut rng)?,
        "sandwich" => sample_sandwich_marginal(w, count, s.l1, s.l2, &mut rng)?,
        "additive" => sample_additive_marginal(w, count, s.l, &mut rng)?,
        "five-factor" => {
            let p = block.h.sample(&mut rng)?;
            let q = block.r.sample(&mut rng)?;
            sample_five_factor_marginal(&p, w, &q, count, s.l1, s.l2, &mut rng)?
        }
        other => return Err(Error::Template(format!("unknown word {other:?}"))),
    };
    Ok((set.template().clone(), set.into_tuples()))
}

fn execute(cmd: Command) -> Result<Outcome, Error> {
    match cmd {
        Command::GenParams {
            semiring,
            dim,
            range,
            family,
            seed,
            blocks,
            degree,
            count,
            l,
            l1,
            l2,
            out,
        } => {
            let spec = GenSpec {
                semiring,
                dim,
                range,
                family,
                blocks,
                degree,
                sampler: SamplerParams { count, l, l1, l2 },
                seed,
            };
            emit(&ProtocolParams::generate(&spec)?, out.as_deref())?;
            Ok(Outcome::Ok)
        }
        Command::GenMarginal {
            word,
            input,
            count,
            seed,
            encoding,
            out,
            word_out,
        } => {
            let params: ProtocolParams = wire::from_text(&read(&input)?)?;
            let count = count.unwrap_or(params.sampler.count);
            let (template, tuples) = gen_marginal(&word, &params, count, seed.unwrap_or(params.seed))?;
            if let Some(path) = word_out {
                emit(&template, Some(&path))?;
            }
            emit(&SetFile::encode(&tuples, encoding)?, out.as_deref())?;
            Ok(Outcome::Ok)
        }
        Command::VerifyMarginal { set, word } => {
            let file: SetFile = wire::from_text(&read(&set)?)?;
            let template: WordTemplate = wire::from_text(&read(&word)?)?;
            let mut failed = 0;
            let tuples = file.tuples()?;
            for (i, t) in tuples.iter().enumerate() {
                if !verify_marginal(&template, t)? {
                    eprintln!("tuple {i} is not marginal");
                    failed += 1;
                }
            }
            println!("{} of {} tuples verified", tuples.len() - failed, tuples.len());
            Ok(if failed == 0 { Outcome::Ok } else { Outcome::Failed })
        }
        Command::RunProtocol {
            protocol,
            params,
            seed,
            blocks,
            out,
        } => {
            let mut params: ProtocolParams = wire::from_text(&read(&params)?)?;
            if let Some(seed) = seed {
                params.seed = seed;
            }
            if let Some(n) = blocks {
                if n == 0 || n > params.blocks.len() {
                    return Err(Error::Protocol(format!(
                        "--blocks {n} but the parameters define {}",
                        params.blocks.len()
                    )));
                }
                params.blocks.truncate(n);
                if let Some(f) = params.fixture.as_mut() {
                    for party in [&mut f.alice, &mut f.bob] {
                        party.p.truncate(n);
                        party.q.truncate(n);
                    }
                }
            }
            let t = run_protocol(protocol, &params)?;
            emit(&t, out.as_deref())?;
            if !t.agreed {
                eprintln!("keys differ");
            }
            Ok(if t.agreed { Outcome::Ok } else { Outcome::Failed })
        }
        Command::Attack {
            transcript,
            degree,
            out,
        } => {
            let t: ProtocolTranscript = wire::from_text(&read(&transcript)?)?;
            emit(&attack_transcript(&t, degree)?, out.as_deref())?;
            Ok(Outcome::Ok)
        }
        Command::Selftest => {
            let checks = selftest::run();
            for c in &checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                match &c.error {
                    Some(e) => println!("{mark} {}: {e}", c.name),
                    None => println!("{mark} {}", c.name),
                }
            }
            Ok(if checks.iter().all(|c| c.passed) {
                Outcome::Ok
            } else {
                Outcome::Failed
            })
        }
    }
}

fn classify(e: &Error) -> (&'static str, u8) {
    match e {
        Error::SamplerExhausted { .. } | Error::Infeasible => ("sampler-exhausted", 3),
        Error::NotMarginal => ("not-marginal", 1),
        Error::Io(_) => ("io", 2),
        _ => ("malformed-input", 2),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(1),
        Err(e) => {
            let (kind, code) = classify(&e);
            if let Ok(text) = wire::to_text(&ErrorRecord::new(kind, &e)) {
                eprint!("{text}");
            }
            ExitCode::from(code)
        }
    }
}
