//! Command-line surface: parse inputs, dispatch computations, emit tables
//! and JSON. One command per process; exit code 0 on success, 1 on input
//! errors, 2 when a check or strict certificate fails.

use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::apps::{braid_certificate, colored_khr, mirror_duality_report, tkh, unlink_certificate};
use crate::diagram::SliceWord;
use crate::homology::{homology, Coeff};
use crate::selftest::{run_all, SelftestOptions};
use crate::spectral::{cube_report, winding_report};
use crate::tqft::{assemble, Mode};

#[derive(Parser)]
#[command(
    name = "akh",
    about = "Exact annular Khovanov homology and derived invariants",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Cap worker parallelism (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Annular Khovanov homology of a diagram
    Akh(ComputeArgs),
    /// Plain Khovanov homology of a diagram
    Kh(ComputeArgs),
    /// Tangle Khovanov homology: the top winding summand over Q
    Tkh(InputArgs),
    /// Decide whether a tangle closure is a braid closure
    BraidCheck(CertArgs),
    /// Certify a diagram as an unlink in the annulus
    UnlinkCheck(UnlinkArgs),
    /// Reduced colored Khovanov homology of a 1-1 tangle by cabling
    Colored(ColoredArgs),
    /// Spectral sequence pages of a filtered complex
    Ss(SsArgs),
    /// Compare a diagram with its mirror image
    Mirror(InputArgs),
    /// Run the embedded acceptance criteria
    Selftest(SelftestArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Diagram file in the slice-word format
    file: Option<PathBuf>,
    /// Inline braid closure, e.g. "3: 1 -2"
    #[arg(long, value_name = "SPEC")]
    braid: Option<String>,
    /// Emit JSON instead of a human table
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Coefficients: Z, Q, F2, or Fp:<p>
    #[arg(long, default_value = "Z")]
    coeff: String,
    /// Override the differential: annular or plain
    #[arg(long, value_name = "MODE")]
    mode: Option<String>,
    /// Dump the assembled complex instead of computing homology
    #[arg(long)]
    dump: bool,
}

#[derive(Args)]
struct CertArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Exit with status 2 when the certificate fails
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct UnlinkArgs {
    #[command(flatten)]
    cert: CertArgs,
    /// Number of link components the diagram is claimed to have
    #[arg(long)]
    components: usize,
}

#[derive(Args)]
struct ColoredArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Cabling multiplicity
    #[arg(long, default_value_t = 1)]
    cables: usize,
}

#[derive(Args)]
struct SsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Which filtration to run: winding or cube
    #[arg(long, default_value = "winding")]
    filtration: String,
}

#[derive(Args)]
struct SelftestArgs {
    /// Directory of extra .knot diagrams to audit
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Test hook: corrupt the edge signs so the d^2 audit fires
    #[arg(long, hide = true)]
    corrupt_signs: bool,
}

/// Entry point used by both the binary and the CLI tests.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if let Some(n) = cli.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            1
        }
    }
}

fn load_word(input: &InputArgs) -> Result<SliceWord, String> {
    match (&input.file, &input.braid) {
        (Some(_), Some(_)) => Err("give either a file or --braid, not both".into()),
        (None, None) => Err("no input: give a diagram file or --braid".into()),
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            SliceWord::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
        }
        (None, Some(spec)) => parse_braid_spec(spec),
    }
}

fn parse_braid_spec(spec: &str) -> Result<SliceWord, String> {
    let (head, tail) = spec
        .split_once(':')
        .ok_or_else(|| format!("braid spec `{spec}` needs the form \"<n>: <ints>\""))?;
    let strands: usize = head
        .trim()
        .parse()
        .map_err(|_| format!("bad strand count `{}`", head.trim()))?;
    let word: Vec<i64> = tail
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| format!("bad generator `{t}`")))
        .collect::<Result<_, _>>()?;
    SliceWord::from_braid(strands, &word).map_err(|e| e.to_string())
}

fn parse_coeff(s: &str) -> Result<Coeff, String> {
    Coeff::parse(s).ok_or_else(|| format!("bad coefficients `{s}` (use Z, Q, F2, or Fp:<p>)"))
}

fn dispatch(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Akh(args) => compute(args, Mode::Annular),
        Command::Kh(args) => compute(args, Mode::Plain),
        Command::Tkh(input) => {
            let w = load_word(&input)?;
            let t = tkh(&w).map_err(|e| e.to_string())?;
            if input.json {
                println!("{}", t.to_json());
            } else {
                print!("{t}");
            }
            Ok(0)
        }
        Command::BraidCheck(args) => {
            let w = load_word(&args.input)?;
            let v = braid_certificate(&w).map_err(|e| e.to_string())?;
            if args.input.json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
            Ok(if !v.passed && args.strict { 2 } else { 0 })
        }
        Command::UnlinkCheck(args) => {
            let w = load_word(&args.cert.input)?;
            let v = unlink_certificate(&w, args.components).map_err(|e| e.to_string())?;
            if args.cert.input.json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
            Ok(if !v.passed && args.cert.strict { 2 } else { 0 })
        }
        Command::Colored(args) => {
            let w = load_word(&args.input)?;
            let t = colored_khr(&w, args.cables).map_err(|e| e.to_string())?;
            if args.input.json {
                println!("{}", t.to_json());
            } else {
                print!("{t}");
            }
            Ok(0)
        }
        Command::Ss(args) => {
            let w = load_word(&args.input)?;
            let report = match args.filtration.as_str() {
                "winding" => winding_report(&w),
                "cube" => cube_report(&w),
                other => return Err(format!("unknown filtration `{other}`")),
            }
            .map_err(|e| e.to_string())?;
            if args.input.json {
                println!("{}", report.to_json());
            } else {
                print!("{report}");
            }
            Ok(0)
        }
        Command::Mirror(input) => {
            let w = load_word(&input)?;
            let r = mirror_duality_report(&w).map_err(|e| e.to_string())?;
            if input.json {
                let mismatches: Vec<serde_json::Value> = r
                    .mismatches
                    .iter()
                    .map(|&(h, q, k, a, b)| {
                        serde_json::json!({"h": h, "q": q, "k": k, "dim": a, "mirror_dim": b})
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({"symmetric": r.symmetric, "mismatches": mismatches})
                );
            } else if r.symmetric {
                println!("mirror duality holds: dim(h,q,k) = dim_mirror(-h,-q,-k)");
            } else {
                println!("mirror duality FAILS at {} gradings", r.mismatches.len());
            }
            Ok(0)
        }
        Command::Selftest(args) => {
            let opts = SelftestOptions { corpus_dir: args.corpus, corrupt_signs: args.corrupt_signs };
            let outcomes = run_all(&opts).map_err(|e| e.to_string())?;
            let mut all_ok = true;
            for o in &outcomes {
                let tag = if o.passed { "PASS" } else { "FAIL" };
                all_ok &= o.passed;
                println!("{tag} criterion {:>2}: {} — {}", o.id, o.name, o.detail);
            }
            Ok(if all_ok { 0 } else { 2 })
        }
    }
}

fn compute(args: ComputeArgs, default_mode: Mode) -> Result<i32, String> {
    let mode = match args.mode.as_deref() {
        None => default_mode,
        Some("annular") => Mode::Annular,
        Some("plain") => Mode::Plain,
        Some(other) => return Err(format!("unknown mode `{other}`")),
    };
    let coeff = parse_coeff(&args.coeff)?;
    let w = load_word(&args.input)?;
    let cx = assemble(&w, mode).map_err(|e| e.to_string())?;
    if args.dump {
        print!("{}", cx.debug_dump());
        return Ok(0);
    }
    let g = homology(&cx, coeff);
    if args.input.json {
        println!("{}", g.to_json());
    } else {
        print!("{g}");
    }
    Ok(0)
}
