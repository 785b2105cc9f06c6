use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use letterplace::check::{betas_to_poly, run_check, CheckOptions, Engine};
use letterplace::generators::{colp_generators, lp_generators, multiplicity};
use letterplace::multidegree::Multidegree;
use letterplace::oracle::multigraded_oracle;
use letterplace::strand::multigraded_fast;
use letterplace::{BettiTable, Convention, Error, FieldSpec, HPoly, Poset};

#[derive(Parser)]
#[command(
    name = "lpbetti",
    version,
    about = "Betti numbers of letterplace ideals L(n, P)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Graded Betti table of L(n, P).
    Betti {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "auto")]
        engine: EngineChoice,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_enum, default_value_t = ConventionArg::Ideal)]
        convention: ConventionArg,
        /// Print the nonzero multigraded Betti numbers instead.
        #[arg(long)]
        multigraded: bool,
    },
    /// Nonzero multigraded Betti numbers as `i | R_1;...;R_n | beta`.
    Multibetti {
        #[command(flatten)]
        input: Input,
        /// `oracle` or `strand`; `auto` picks strand.
        #[arg(long, default_value = "auto")]
        engine: EngineChoice,
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
    },
    /// Minimal generators of L(n, P), or of the co-letterplace ideal L(P, n).
    Gens {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        co: bool,
    },
    /// Cross-check engines and structural predictions.
    Check {
        #[command(flatten)]
        input: Input,
        /// Comma-separated engines to compare.
        #[arg(long, value_delimiter = ',', default_value = "oracle,strand,tree")]
        engine: Vec<String>,
        /// Characteristic to check over; repeatable.
        #[arg(long = "char")]
        characteristic: Vec<u64>,
        /// Comma-separated characteristics, added to `--char`.
        #[arg(long, value_delimiter = ',')]
        chars: Vec<u64>,
        /// Only the structural classifier.
        #[arg(long)]
        structural: bool,
    },
    /// Invariants of P and L(n, P).
    Info {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Args)]
struct Input {
    /// Poset file.
    file: PathBuf,
    #[arg(short = 'n', default_value_t = 2)]
    n: usize,
}

#[derive(Clone, Copy)]
enum EngineChoice {
    Auto,
    Fixed(Engine),
}

impl std::str::FromStr for EngineChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            Ok(EngineChoice::Auto)
        } else {
            s.parse().map(EngineChoice::Fixed)
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Ideal,
    Quotient,
}

impl From<ConventionArg> for Convention {
    fn from(c: ConventionArg) -> Self {
        match c {
            ConventionArg::Ideal => Convention::Ideal,
            ConventionArg::Quotient => Convention::Quotient,
        }
    }
}

enum Failure {
    Input(String),
    Guard(String),
    Check,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_guard() {
            Failure::Guard(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

fn read_poset(path: &Path) -> Result<Poset, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Poset::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n == 0 {
        return Err(Error::InvalidN { min: 1, got: 0 }.into());
    }
    Ok(())
}

fn multigraded_lines(
    n: usize,
    p: &Poset,
    engine: Engine,
    field: FieldSpec,
) -> Result<String, Failure> {
    let values: Vec<(Multidegree, HPoly)> = match engine {
        Engine::Oracle => multigraded_oracle(n, p, field, true)?
            .into_iter()
            .map(|(r, b)| {
                let poly = betas_to_poly(&r, &b);
                (r, poly)
            })
            .collect(),
        Engine::Strand => multigraded_fast(n, p, field)?,
        Engine::Tree => {
            return Err(Failure::Input(
                "the tree engine computes graded tables only".into(),
            ));
        }
    };
    let mut out = String::new();
    for (r, poly) in values {
        let size = r.total_degree() as i32;
        let shown = r.format(p);
        let mut terms: Vec<(i32, u64)> = poly.terms().map(|(d, c)| (size - d, c)).collect();
        terms.sort();
        for (i, c) in terms {
            out.push_str(&format!("{i} | {shown} | {c}\n"));
        }
    }
    Ok(out)
}

fn render(t: &BettiTable, format: Format, convention: Convention) -> String {
    let t = t.with_convention(convention);
    match format {
        Format::Text => t.render_text(),
        Format::Csv => t.render_csv(),
        Format::Json => format!("{}\n", t.to_json()),
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Betti {
            input,
            engine,
            characteristic,
            format,
            convention,
            multigraded,
        } => {
            check_n(input.n)?;
            let p = read_poset(&input.file)?;
            let field = FieldSpec::new(characteristic)?;
            if multigraded {
                let engine = match engine {
                    EngineChoice::Fixed(Engine::Oracle) => Engine::Oracle,
                    _ => Engine::Strand,
                };
                return multigraded_lines(input.n, &p, engine, field);
            }
            let engine = match engine {
                EngineChoice::Auto => Engine::auto(&p),
                EngineChoice::Fixed(e) => e,
            };
            let t = engine.table(input.n, &p, field)?;
            Ok(render(&t, format, convention.into()))
        }
        Command::Multibetti {
            input,
            engine,
            characteristic,
        } => {
            check_n(input.n)?;
            let p = read_poset(&input.file)?;
            let field = FieldSpec::new(characteristic)?;
            let engine = match engine {
                EngineChoice::Auto => Engine::Strand,
                EngineChoice::Fixed(e) => e,
            };
            multigraded_lines(input.n, &p, engine, field)
        }
        Command::Gens { input, co } => {
            check_n(input.n)?;
            let p = read_poset(&input.file)?;
            let gens = if co {
                colp_generators(&p, input.n)?
            } else {
                lp_generators(input.n, &p)?
            };
            let mut out = String::new();
            for g in gens {
                out.push_str(&if co {
                    g.format_coletterplace(&p)
                } else {
                    g.format_letterplace(&p)
                });
                out.push('\n');
            }
            Ok(out)
        }
        Command::Check {
            input,
            engine,
            characteristic,
            chars,
            structural,
        } => {
            check_n(input.n)?;
            let p = read_poset(&input.file)?;
            let engines = engine
                .iter()
                .map(|s| s.trim().parse::<Engine>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(Failure::Input)?;
            let mut fields = Vec::new();
            for c in characteristic.into_iter().chain(chars) {
                let f = FieldSpec::new(c)?;
                if !fields.contains(&f) {
                    fields.push(f);
                }
            }
            if fields.is_empty() {
                fields.push(FieldSpec::RATIONALS);
            }
            let report = run_check(
                input.n,
                &p,
                &CheckOptions {
                    engines,
                    fields,
                    structural_only: structural,
                },
            );
            print!("{report}");
            if report.passed() {
                Ok(String::new())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Info { input } => {
            check_n(input.n)?;
            let p = read_poset(&input.file)?;
            let n = input.n;
            let c = p.width();
            let m = multiplicity(n, &p);
            let sizes: std::collections::BTreeSet<usize> =
                p.maximal_antichains()?.iter().map(|a| a.len()).collect();
            let level = n == 1 || sizes.len() == 1;
            let mut out = String::new();
            out.push_str(&format!("elements: {}\n", p.len()));
            out.push_str(&format!("width: {c}\n"));
            out.push_str(&format!(
                "rooted forest: {}\n",
                if p.is_rooted_forest() { "yes" } else { "no" }
            ));
            out.push_str(&format!("codimension: {}\n", p.len()));
            out.push_str(&format!(
                "projective dimension: {}\n",
                p.len().saturating_sub(1)
            ));
            out.push_str(&format!("regularity: {}\n", c * (n - 1) + 1));
            out.push_str(&format!(
                "multiplicity: {} (bounds {} ..= {})\n",
                m.value, m.lower, m.upper
            ));
            out.push_str(&format!("level: {}\n", if level { "yes" } else { "no" }));
            out.push_str(&format!(
                "generators: {}\n",
                Poset::chain(n).count_isotone_maps(&p)
            ));
            Ok(out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // A closed pipe is not an error worth reporting.
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Guard(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("hint: LP_MAX_VERTICES raises the vertex guards at your own risk");
            ExitCode::from(3)
        }
    }
}
