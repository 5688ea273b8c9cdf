//! `narayana`: counting, enumeration, conversion and verification for the
//! generalized Narayana numbers and their nine combinatorial families.
//!
//! Exit status: 0 on success, 1 when a verification suite reports a
//! failure, 2 on usage errors and on input that fails to parse or convert.

mod grid;

use std::io::{self, BufRead, BufWriter, Write};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use narayana::family::Family;
use narayana::numbers::{catalan, lagrange_narayana, narayana, narayana_row, series_narayana};
use narayana::verify::{verify_bijections, verify_counts, verify_identities, Sweep, CELL_LIMIT};
use narayana::{CountValue, DEFAULT_GUARD};

#[derive(Parser)]
#[command(
    name = "narayana",
    version,
    about = "Generalized Narayana numbers and their families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// N_d(n,k), or the whole row n when --k is omitted.
    Count {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// Triangles of N_d(n,k) or rows of C_d(n).
    Table {
        #[arg(long, value_enum, default_value_t = TableKind::Narayana)]
        kind: TableKind,
        /// Comma-separated arities; defaults to 2,3 for narayana and 2..6 for catalan.
        #[arg(long, value_delimiter = ',')]
        d: Vec<usize>,
        #[arg(long, default_value_t = 7)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Lists a family, one object per line. --n and --k are the family's
    /// own parameters; all --k values are concatenated when it is omitted.
    Enumerate {
        #[arg(long, value_parser = parse_family)]
        family: Family,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, value_enum, default_value_t = ObjectFormat::Text)]
        format: ObjectFormat,
        /// Refuse cells with more members than this.
        #[arg(long, default_value_t = DEFAULT_GUARD)]
        limit: usize,
    },
    /// Reads objects from stdin, one per line, and maps them along the
    /// bijection graph.
    Convert {
        #[arg(long, value_parser = parse_family)]
        from: Family,
        #[arg(long, value_parser = parse_family)]
        to: Family,
        #[arg(long)]
        d: usize,
        #[arg(long, value_enum, default_value_t = ObjectFormat::Text)]
        format: ObjectFormat,
        /// Print the route to stderr.
        #[arg(long)]
        verbose: bool,
    },
    /// Runs the exhaustive suites; exit status 1 on any failure.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 5)]
        d_max: usize,
        #[arg(long, default_value_t = 10)]
        n_max: usize,
        #[arg(long, default_value_t = CELL_LIMIT)]
        cell_limit: usize,
        /// Print every cell as a JSON line before the summary.
        #[arg(long)]
        jsonl: bool,
    },
    /// b-file lines "index value" for C_d(n), or N_d(n,k) read by rows.
    Bfile {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = TableKind::Catalan)]
        kind: TableKind,
        /// Index of the first line.
        #[arg(long, default_value_t = 0)]
        offset: i64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Formula,
    Series,
    Lagrange,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Narayana,
    Catalan,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Text,
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectFormat {
    Text,
    Jsonl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Counts,
    Bijections,
    Identities,
    All,
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let status = run(cli.command, &mut out).and_then(|s| {
        out.flush()?;
        Ok(s)
    });
    match status {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain()
        .filter_map(|c| c.downcast_ref::<io::Error>())
        .any(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn run(command: Command, out: &mut impl Write) -> Result<ExitCode> {
    match command {
        Command::Count { d, n, k, method } => {
            let row = match k {
                Some(k) if k > n => bail!("--k {k} exceeds --n {n}"),
                Some(k) => vec![count(d, n, k, method)?],
                None => (0..=n)
                    .map(|k| count(d, n, k, method))
                    .collect::<Result<_>>()?,
            };
            writeln!(out, "{}", join(&row))?;
        }
        Command::Table {
            kind,
            d,
            n_max,
            format,
        } => {
            let ds = match (d.is_empty(), kind) {
                (false, _) => d,
                (true, TableKind::Narayana) => vec![2, 3],
                (true, TableKind::Catalan) => (2..=6).collect(),
            };
            let text = match (kind, format) {
                (TableKind::Narayana, TableFormat::Text) => grid::narayana_text(&ds, n_max)?,
                (TableKind::Narayana, TableFormat::Csv) => grid::narayana_csv(&ds, n_max)?,
                (TableKind::Narayana, TableFormat::Json) => grid::narayana_json(&ds, n_max)?,
                (TableKind::Catalan, TableFormat::Text) => grid::catalan_text(&ds, n_max)?,
                (TableKind::Catalan, TableFormat::Csv) => grid::catalan_csv(&ds, n_max)?,
                (TableKind::Catalan, TableFormat::Json) => grid::catalan_json(&ds, n_max)?,
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Enumerate {
            family,
            d,
            n,
            k,
            format,
            limit,
        } => {
            let ks: Vec<usize> = match k {
                Some(k) => vec![k],
                None => (0..=n + 1).collect(),
            };
            for k in ks {
                for obj in family.enumerate(d, n, k, limit)? {
                    match format {
                        ObjectFormat::Text => writeln!(out, "{obj}")?,
                        ObjectFormat::Jsonl => writeln!(out, "{}", obj.to_json())?,
                    }
                }
            }
        }
        Command::Convert {
            from,
            to,
            d,
            format,
            verbose,
        } => {
            if verbose {
                let route = from.route(to);
                let shown = if route.is_empty() {
                    "identity".to_string()
                } else {
                    route.join(" ")
                };
                eprintln!("route {from} -> {to}: {shown}");
            }
            for (i, line) in io::stdin().lock().lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let obj = match format {
                    ObjectFormat::Text => from.parse(&line, d),
                    ObjectFormat::Jsonl => serde_json::from_str(&line)
                        .map_err(|e| narayana::Error::Malformed(e.to_string()))
                        .and_then(|v| from.from_json(&v, d)),
                }
                .with_context(|| format!("line {}: {line:?}", i + 1))?;
                let (image, _) = obj
                    .convert(to, d)
                    .with_context(|| format!("line {}", i + 1))?;
                match format {
                    ObjectFormat::Text => writeln!(out, "{image}")?,
                    ObjectFormat::Jsonl => writeln!(out, "{}", image.to_json())?,
                }
            }
        }
        Command::Verify {
            suite,
            d_max,
            n_max,
            cell_limit,
            jsonl,
        } => {
            if d_max < 2 {
                bail!("--d-max must be at least 2");
            }
            let sweep = Sweep {
                ds: (2..=d_max).collect(),
                n_max,
                cell_limit,
            };
            let report = match suite {
                Suite::Counts => verify_counts(&sweep, &Family::ALL),
                Suite::Bijections => verify_bijections(&sweep),
                Suite::Identities => verify_identities(d_max, n_max),
                Suite::All => verify_counts(&sweep, &Family::ALL)
                    .merge(verify_bijections(&sweep))
                    .merge(verify_identities(d_max, n_max)),
            };
            if jsonl {
                out.write_all(report.to_jsonl().as_bytes())?;
            }
            out.write_all(report.summary_table().as_bytes())?;
            if !report.is_green() {
                out.flush()?;
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bfile {
            d,
            n_max,
            kind,
            offset,
        } => {
            let values: Vec<CountValue> = match kind {
                TableKind::Catalan => (0..=n_max)
                    .map(|n| catalan(d, n))
                    .collect::<Result<_, _>>()?,
                TableKind::Narayana => (0..=n_max)
                    .map(|n| narayana_row(d, n))
                    .collect::<Result<Vec<_>, _>>()?
                    .concat(),
            };
            for (i, v) in values.iter().enumerate() {
                writeln!(out, "{} {v}", offset + i as i64)?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn count(d: usize, n: usize, k: usize, method: Method) -> Result<CountValue> {
    Ok(match method {
        Method::Formula => narayana(d, n, k)?,
        Method::Series => series_narayana(d, n)?.get(n, k),
        Method::Lagrange => lagrange_narayana(d, n, k)?,
    })
}

fn join(values: &[CountValue]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
