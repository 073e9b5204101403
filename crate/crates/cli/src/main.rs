use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;
use skeleton_ideals::formulas;
use skeleton_ideals::standard::write_standard;
use skeleton_ideals::verify::{self, Report};
use skeleton_ideals::{
    count_standard, i_n_r_a, j_h, lambda_ideal, parking_ideal, skeleton_ideal, IntegerMatrix,
    LambdaSeq, MonomialIdeal, Multigraph,
};

/// Skeleton ideals, standard monomial counts and signless Laplacian
/// determinants.
#[derive(Parser, Debug)]
#[command(name = "skel", version)]
struct Cli {
    /// Seed for randomized instances.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format (reports default to json, everything else to text).
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Graph in text or JSON form; `-` reads stdin.
    #[arg(long, global = true)]
    graph_file: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a multigraph.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Print the minimal generators of an ideal.
    Ideal(IdealSource),
    /// Count standard monomials of an ideal.
    Dim {
        #[command(flatten)]
        source: IdealSource,
        /// Also list the standard monomials, one exponent vector per line.
        #[arg(long)]
        enumerate: bool,
    },
    /// Determinant of a graph matrix or of a matrix file.
    Det {
        #[arg(long, value_enum, default_value = "qtilde")]
        matrix: MatrixKind,
        /// Square matrix as JSON rows or whitespace-separated rows.
        #[arg(long, conflicts_with = "matrix")]
        matrix_file: Option<PathBuf>,
        /// Print the characteristic polynomial as well.
        #[arg(long)]
        charpoly: bool,
        /// Print the positive semidefiniteness verdict as well.
        #[arg(long)]
        psd: bool,
    },
    /// Evaluate closed forms.
    Formulas {
        #[command(subcommand)]
        which: FormulaCmd,
    },
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Subcommand, Debug)]
enum GenFamily {
    /// K_{n+1}^{a,b}.
    Complete {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
    /// K_{n+1} without the root edges of the last r vertices.
    Gnr {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        r: usize,
    },
    Path {
        #[arg(long)]
        n: usize,
    },
    Cycle {
        #[arg(long)]
        n: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        max_mult: u64,
    },
    /// K_{n+1}^{a,b} with a random sub-multiset of root edges deleted.
    RootDeletion {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        a: u64,
        #[arg(long, default_value_t = 1)]
        b: u64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct IdealSource {
    /// k-skeleton ideal of the graph in --graph-file.
    #[arg(long)]
    skeleton: Option<usize>,
    /// Parking ideal of the graph in --graph-file.
    #[arg(long)]
    parking: bool,
    /// Lambda-parking ideal, e.g. `3,2,2`.
    #[arg(long, value_delimiter = ',')]
    lambda: Option<Vec<u64>>,
    /// I_{n,r}^<a> given as `n,r,a`.
    #[arg(long, value_delimiter = ',')]
    inra: Option<Vec<u64>>,
    /// J_H for the matrix in this file.
    #[arg(long)]
    jh_file: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MatrixKind {
    Laplacian,
    Signless,
    Ltilde,
    Qtilde,
}

#[derive(Subcommand, Debug)]
enum FormulaCmd {
    /// n! det of the Steck matrix.
    Steck {
        #[arg(long, value_delimiter = ',', required = true)]
        lambda: Vec<u64>,
    },
    /// x^{l-1} (x + l).
    Theta {
        #[arg(long)]
        l: u64,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
    },
    /// Parking and one-skeleton counts of K_{n+1}^{a,b}.
    Kab {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Signless determinant of G_{n,r}, expanded and factored.
    Gnr {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
    },
    /// Alternating theta sum for I_{n,r}^<a>.
    Lemma2 {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        a: u64,
    },
    /// Both sides of the alternating binomial identity.
    Remark {
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    MatrixTree,
    Rc,
    Ineq,
    Mt,
    Lemma1,
    Decomp,
    Steck,
    Remark,
    Props,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: SuiteName,
    /// Largest number of non-root vertices (or matrix order).
    #[arg(long = "n", default_value_t = 5)]
    n_max: usize,
    #[arg(long, default_value_t = 3)]
    a_max: u64,
    #[arg(long, default_value_t = 3)]
    b_max: u64,
    #[arg(long, default_value_t = 3)]
    mult_max: u64,
    #[arg(long, default_value_t = 6)]
    entry_max: u64,
    /// Random instances per suite (suite-specific default).
    #[arg(long)]
    trials: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        return io::read_to_string(io::stdin()).context("reading stdin");
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_graph(cli: &Cli) -> Result<Multigraph> {
    let Some(path) = &cli.graph_file else {
        bail!("this command needs --graph-file");
    };
    Multigraph::parse(&read_input(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<IntegerMatrix> {
    let text = read_input(path)?;
    if text.trim_start().starts_with('[') {
        return serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()));
    }
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<BigInt>().with_context(|| {
                        format!("{}: line {}: bad entry {t:?}", path.display(), i + 1)
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntegerMatrix::from_rows(rows)?)
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    }
}

fn text_mode(cli: &Cli) -> bool {
    cli.format.is_none_or(|f| f != Format::Json)
}

fn build_ideal(cli: &Cli, src: &IdealSource) -> Result<MonomialIdeal> {
    Ok(if let Some(k) = src.skeleton {
        skeleton_ideal(&load_graph(cli)?, k)?
    } else if src.parking {
        parking_ideal(&load_graph(cli)?)?
    } else if let Some(lambda) = &src.lambda {
        lambda_ideal(lambda)?
    } else if let Some(v) = &src.inra {
        let [n, r, a] = v[..] else {
            bail!("--inra takes n,r,a");
        };
        i_n_r_a(n as usize, r as usize, a)?
    } else if let Some(path) = &src.jh_file {
        j_h(&load_matrix(path)?)?
    } else {
        bail!("no ideal selected");
    })
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Gen { family } => {
            let g = generate(family, cli.seed)?;
            let text = if text_mode(cli) {
                g.to_text()
            } else {
                serde_json::to_string(&g)? + "\n"
            };
            emit(cli, &text)?;
        }
        Command::Ideal(src) => {
            let ideal = build_ideal(cli, src)?;
            let text = if text_mode(cli) {
                ideal.to_text()
            } else {
                ideal.to_json().to_string() + "\n"
            };
            emit(cli, &text)?;
        }
        Command::Dim { source, enumerate } => {
            let ideal = build_ideal(cli, source)?;
            let count = count_standard(&ideal)?;
            if *enumerate {
                match &cli.out {
                    Some(path) => {
                        let file = io::BufWriter::new(
                            fs::File::create(path)
                                .with_context(|| format!("creating {}", path.display()))?,
                        );
                        write_standard(&ideal, file)?;
                        println!("{count}");
                    }
                    None => {
                        write_standard(&ideal, io::stdout().lock())?;
                    }
                }
            } else if text_mode(cli) {
                emit(cli, &format!("{count}\n"))?;
            } else {
                emit(
                    cli,
                    &format!(
                        "{}\n",
                        json!({ "dim": count.to_string(), "ideal": ideal.to_json() })
                    ),
                )?;
            }
        }
        Command::Det {
            matrix,
            matrix_file,
            charpoly,
            psd,
        } => {
            let m = match matrix_file {
                Some(path) => load_matrix(path)?,
                None => {
                    let l = load_graph(cli)?.laplacians::<BigInt>();
                    match matrix {
                        MatrixKind::Laplacian => l.laplacian,
                        MatrixKind::Signless => l.signless,
                        MatrixKind::Ltilde => l.truncated_laplacian,
                        MatrixKind::Qtilde => l.truncated_signless,
                    }
                }
            };
            let det = m.det();
            let cp = charpoly.then(|| m.char_poly());
            let verdict = if *psd { Some(m.is_psd()?) } else { None };
            let text = if text_mode(cli) {
                let mut s = format!("{det}\n");
                if let Some(cp) = &cp {
                    s += &format!("charpoly {cp}\n");
                }
                if let Some(v) = verdict {
                    s += &format!("psd {v}\n");
                }
                s
            } else {
                let coeffs = cp.map(|c| {
                    c.coefficients()
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                });
                format!(
                    "{}\n",
                    json!({ "det": det.to_string(), "charpoly": coeffs, "psd": verdict })
                )
            };
            emit(cli, &text)?;
        }
        Command::Formulas { which } => emit(cli, &formula(which, text_mode(cli))?)?,
        Command::Verify(args) => {
            let report = run_suite(args, cli.seed)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            emit(cli, &text)?;
            if cli.out.is_some() || cli.format != Some(Format::Text) {
                eprintln!(
                    "suite {}: {} trials, {} failed, {} skipped",
                    report.suite,
                    report.summary.total,
                    report.summary.failed,
                    report.summary.skipped
                );
            }
            for t in report.failures() {
                eprintln!(
                    "FAILED #{}: {} {} {} {}",
                    t.id,
                    t.dim,
                    t.relation.symbol(),
                    t.det,
                    t.instance
                );
            }
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn generate(family: &GenFamily, seed: u64) -> Result<Multigraph> {
    Ok(match *family {
        GenFamily::Complete { n, a, b } => Multigraph::complete(n, a, b)?,
        GenFamily::Gnr { n, r } => Multigraph::g_n_r(n, r)?,
        GenFamily::Path { n } => Multigraph::path(n)?,
        GenFamily::Cycle { n } => Multigraph::cycle(n)?,
        GenFamily::Random { n, max_mult } => Multigraph::random(n, max_mult, seed)?,
        GenFamily::RootDeletion { n, a, b } => Multigraph::random_root_deletion(n, a, b, seed)?,
    })
}

fn formula(which: &FormulaCmd, text: bool) -> Result<String> {
    let pairs: Vec<(&str, String)> = match *which {
        FormulaCmd::Steck { ref lambda } => {
            let seq = LambdaSeq::new(lambda.clone())?;
            vec![("count", formulas::steck_count(&seq)?.to_string())]
        }
        FormulaCmd::Theta { l, x } => vec![("theta", formulas::theta(l, x)?.to_string())],
        FormulaCmd::Kab { n, a, b } => {
            if n < 1 || a < 1 || b < 1 {
                bail!("need n, a, b >= 1");
            }
            vec![
                ("parking", formulas::dim_parking_kab(n, a, b).to_string()),
                ("skeleton1", formulas::dim_skel1_kab(n, a, b).to_string()),
            ]
        }
        FormulaCmd::Gnr { n, r } => vec![
            ("det", formulas::det_q_gnr(n, r)?.to_string()),
            (
                "factored",
                formulas::det_q_gnr_factored(n, r)?
                    .map_or_else(|| "indeterminate".into(), |v| v.to_string()),
            ),
        ],
        FormulaCmd::Lemma2 { n, r, a } => vec![("sum", formulas::lemma2_sum(n, r, a)?.to_string())],
        FormulaCmd::Remark { n, a } => {
            let (l, r) = formulas::remark_sides(n, a)?;
            vec![
                ("lhs", l.to_string()),
                ("rhs", r.to_string()),
                ("holds", (l == r).to_string()),
            ]
        }
    };
    Ok(if text {
        pairs.iter().map(|(k, v)| format!("{k} {v}\n")).collect()
    } else {
        let map: serde_json::Map<_, _> = pairs
            .into_iter()
            .map(|(k, v)| (k.to_string(), v.into()))
            .collect();
        format!("{}\n", serde_json::Value::Object(map))
    })
}

fn run_suite(a: &VerifyArgs, seed: u64) -> Result<Report> {
    let t = |default: usize| a.trials.unwrap_or(default);
    Ok(match a.suite {
        SuiteName::MatrixTree => verify::suite_matrix_tree_seeded(a.n_max, t(40), seed)?,
        SuiteName::Rc => verify::suite_rc(a.n_max, a.a_max, a.b_max, t(100), seed)?,
        SuiteName::Ineq => verify::suite_ineq(a.n_max, a.mult_max, t(200), seed)?,
        SuiteName::Mt => verify::suite_mt(a.n_max, a.entry_max, t(100), seed)?,
        SuiteName::Lemma1 => verify::suite_lemma1(a.n_max, 5)?,
        SuiteName::Decomp => verify::suite_decomp(t(50), seed)?,
        SuiteName::Steck => verify::suite_steck(a.n_max.min(4), 4, a.n_max, 3)?,
        SuiteName::Remark => verify::suite_remark(a.n_max, 5, 8)?,
        SuiteName::Props => verify::suite_props(a.n_max, t(30), seed)?,
        SuiteName::All => {
            let names = [
                SuiteName::MatrixTree,
                SuiteName::Rc,
                SuiteName::Ineq,
                SuiteName::Mt,
                SuiteName::Lemma1,
                SuiteName::Decomp,
                SuiteName::Steck,
                SuiteName::Remark,
                SuiteName::Props,
            ];
            let parts = names
                .into_iter()
                .map(|suite| {
                    run_suite(
                        &VerifyArgs {
                            suite,
                            trials: a.trials,
                            ..*a
                        },
                        seed,
                    )
                })
                .collect::<Result<Vec<_>>>()?;
            let params = json!({ "n_max": a.n_max, "a_max": a.a_max, "b_max": a.b_max, "mult_max": a.mult_max,
                                 "entry_max": a.entry_max, "trials": a.trials });
            Report::combine("all", params, seed, parts)
        }
    })
}
