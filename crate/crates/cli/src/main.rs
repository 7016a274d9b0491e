use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Mutex;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sicset_core::certify::{
    certify_sic_with, emit_inequality, parse_vector_file, write_vector_file, CertifyOptions, Mode,
    ProjectorSet, SicCertificate, SicStatus,
};
use sicset_core::coloring::{chromatic_number, fractional_chromatic_number};
use sicset_core::enumeration::{
    enumerate_square_free_connected, EnumerationOptions, MAX_ENUMERATION_VERTICES,
};
use sicset_core::exact::{GaussianRational, Pq};
use sicset_core::graph::{encode_graph6, parse_graph6, Graph};
use sicset_core::realize::{find_realization, Field, RealizationStatus, RealizeOptions};

#[derive(Parser)]
#[command(
    name = "sicset",
    version,
    about = "State-independent contextuality sets and square-free graphs"
)]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    workers: Option<u32>,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List square-free connected graphs up to isomorphism.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        /// Only list graphs with chromatic number greater than this.
        #[arg(long)]
        chi_gt: Option<usize>,
    },
    /// Exact properties of one graph given in graph6.
    Graph { query: Query, graph6: String },
    /// Decide whether a vector file is a SIC set.
    Certify(CertifyArgs),
    /// Print the inequality of a SIC set.
    Inequality(CertifyArgs),
    /// Search for an orthogonal representation of a graph.
    Realize {
        graph6: String,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "real")]
        field: FieldArg,
        #[arg(long, default_value_t = 50)]
        restarts: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        #[arg(long, default_value_t = 1e-6)]
        delta: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Query {
    Chi,
    Chif,
    SquareFree,
    Connected,
    Cone,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Args)]
struct CertifyArgs {
    file: PathBuf,
    /// Read entries as exact rationals.
    #[arg(long, conflicts_with = "numeric")]
    exact: bool,
    /// Read entries as floating-point numbers.
    #[arg(long)]
    numeric: bool,
    /// Orthogonality tolerance for numeric vectors.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, default_value_t = 500)]
    max_rounds: usize,
}

enum Failure {
    Usage(String),
    Internal(String),
}

type Outcome = Result<u8, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn internal<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Internal(e.to_string())
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write + Send>, Failure> {
    match path {
        Some(p) => {
            let f = fs::File::create(p).map_err(|e| usage(format!("{}: {e}", p.display())))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        None => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

fn parse_graph(s: &str) -> Result<Graph, Failure> {
    parse_graph6(s.trim()).map_err(usage)
}

fn enumerate(max_n: usize, chi_gt: Option<usize>, output: Option<&Path>) -> Outcome {
    if max_n == 0 || max_n > MAX_ENUMERATION_VERTICES {
        return Err(usage(format!(
            "--max-n must be in 1..={MAX_ENUMERATION_VERTICES}"
        )));
    }
    let listed = Mutex::new(Vec::new());
    let report = enumerate_square_free_connected(
        EnumerationOptions {
            n_max: max_n,
            chi_gt,
        },
        |g| {
            if chi_gt.is_none() {
                let s = encode_graph6(g).expect("small graph");
                listed.lock().expect("poisoned").push((g.n(), s));
            }
        },
    )
    .map_err(internal)?;
    let mut lines = match chi_gt {
        None => listed.into_inner().expect("poisoned"),
        Some(_) => report
            .filtered
            .iter()
            .map(|s| (parse_graph6(s).map(|g| g.n()).unwrap_or(0), s.clone()))
            .collect(),
    };
    lines.sort();
    let mut out = open_output(output)?;
    for (_, s) in &lines {
        writeln!(out, "{s}").map_err(internal)?;
    }
    out.flush().map_err(internal)?;
    // the summary goes to stdout even when the list went to a file
    let mut table: Box<dyn Write> = if output.is_some() {
        Box::new(io::stdout())
    } else {
        out
    };
    for (k, c) in report.counts.iter().enumerate() {
        writeln!(table, "{} {c}", k + 1).map_err(internal)?;
    }
    writeln!(table, "total {}", report.total).map_err(internal)?;
    if let Some(d) = chi_gt {
        writeln!(table, "chi>{d} {}", report.filtered.len()).map_err(internal)?;
    }
    table.flush().map_err(internal)?;
    Ok(0)
}

fn graph_query(query: Query, g6: &str, output: Option<&Path>) -> Outcome {
    let g = parse_graph(g6)?;
    let answer = match query {
        Query::Chi => chromatic_number(&g).chi.to_string(),
        Query::Chif => Pq(&fractional_chromatic_number(&g).map_err(internal)?.value).to_string(),
        Query::SquareFree => g.is_square_free().to_string(),
        Query::Connected => g.is_connected().to_string(),
        Query::Cone => encode_graph6(&g.cone().map_err(usage)?).map_err(usage)?,
    };
    let mut out = open_output(output)?;
    writeln!(out, "{answer}").map_err(internal)?;
    out.flush().map_err(internal)?;
    Ok(0)
}

fn load_vectors(args: &CertifyArgs) -> Result<ProjectorSet, Failure> {
    let text = fs::read_to_string(&args.file)
        .map_err(|e| usage(format!("{}: {e}", args.file.display())))?;
    let mode = if args.exact {
        Some(Mode::Exact)
    } else if args.numeric {
        Some(Mode::Numeric)
    } else {
        None
    };
    parse_vector_file(&text, mode).map_err(|e| usage(format!("{}: {e}", args.file.display())))
}

fn run_certify(args: &CertifyArgs) -> Result<(ProjectorSet, SicCertificate), Failure> {
    if !(args.tol > 0.0) {
        return Err(usage("--tol must be positive"));
    }
    let s = load_vectors(args)?;
    let opts = CertifyOptions {
        max_rounds: args.max_rounds,
        tol: args.tol,
        ..CertifyOptions::default()
    };
    let cert = certify_sic_with(&s, &opts).map_err(usage)?;
    Ok((s, cert))
}

fn status_code(status: SicStatus) -> u8 {
    match status {
        SicStatus::Sic => 0,
        SicStatus::NotSic => 3,
        SicStatus::Undecided => 4,
    }
}

/// `e4` for a multiple of the fourth basis vector, otherwise the entries.
fn describe_state(x: &[GaussianRational]) -> String {
    let nonzero: Vec<usize> = (0..x.len())
        .filter(|&k| x[k] != GaussianRational::default())
        .collect();
    if let [k] = nonzero[..] {
        format!("e{}", k + 1)
    } else {
        let parts: Vec<String> = x
            .iter()
            .map(|z| sicset_core::exact::PqComplex(z).to_string())
            .collect();
        format!("({})", parts.join(", "))
    }
}

fn certify(args: &CertifyArgs, output: Option<&Path>) -> Outcome {
    let (s, cert) = run_certify(args)?;
    let mut out = open_output(output)?;
    write!(out, "{}", cert.to_text()).map_err(internal)?;
    if let Some(obs) = &cert.obstruction {
        writeln!(out, "state = {}", describe_state(&obs.state)).map_err(internal)?;
    }
    if cert.status == SicStatus::Sic {
        let ineq = emit_inequality(&s, &cert).map_err(internal)?;
        writeln!(out, "inequality {ineq}").map_err(internal)?;
    }
    out.flush().map_err(internal)?;
    Ok(status_code(cert.status))
}

fn inequality(args: &CertifyArgs, output: Option<&Path>) -> Outcome {
    let (s, cert) = run_certify(args)?;
    if cert.status != SicStatus::Sic {
        eprintln!("status {}: no inequality", cert.status);
        return Ok(status_code(cert.status));
    }
    let ineq = emit_inequality(&s, &cert).map_err(internal)?;
    let mut out = open_output(output)?;
    writeln!(out, "{ineq}").map_err(internal)?;
    out.flush().map_err(internal)?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn realize(
    g6: &str,
    dim: usize,
    field: FieldArg,
    restarts: usize,
    tol: f64,
    delta: f64,
    seed: u64,
    output: Option<&Path>,
) -> Outcome {
    let g = parse_graph(g6)?;
    let field = match field {
        FieldArg::Real => Field::Real,
        FieldArg::Complex => Field::Complex,
    };
    let opts = RealizeOptions {
        d: dim,
        field,
        restarts,
        tol,
        delta,
        seed,
        ..RealizeOptions::new(dim, field)
    };
    let res = find_realization(&g, &opts).map_err(usage)?;
    let mut out = open_output(output)?;
    writeln!(out, "# status {}", res.status).map_err(internal)?;
    writeln!(out, "# residual {:e}", res.residual).map_err(internal)?;
    writeln!(
        out,
        "# min_pairwise_distinctness {:e}",
        res.min_pairwise_distinctness
    )
    .map_err(internal)?;
    writeln!(out, "# restart {}", res.restart).map_err(internal)?;
    if res.status == RealizationStatus::Found {
        let set = ProjectorSet::numeric(dim, res.vectors.clone()).map_err(internal)?;
        write!(out, "{}", write_vector_file(&set)).map_err(internal)?;
    }
    out.flush().map_err(internal)?;
    Ok(match res.status {
        RealizationStatus::Found => 0,
        RealizationStatus::Degenerate => 3,
        RealizationStatus::Failed => 4,
    })
}

fn run(cli: Cli) -> Outcome {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w as usize)
            .build_global()
            .map_err(internal)?;
    }
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Enumerate { max_n, chi_gt } => enumerate(*max_n, *chi_gt, output),
        Command::Graph { query, graph6 } => graph_query(*query, graph6, output),
        Command::Certify(args) => certify(args, output),
        Command::Inequality(args) => inequality(args, output),
        Command::Realize {
            graph6,
            dim,
            field,
            restarts,
            tol,
            delta,
            seed,
        } => realize(graph6, *dim, *field, *restarts, *tol, *delta, *seed, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(1)
        }
    }
}
