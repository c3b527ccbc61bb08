use std::path::PathBuf;
use std::process;

use clap::{Args, Parser, Subcommand, ValueEnum};

use resnet_core::analysis::{
    conjecture_scan, default_vertex_budget, diameter_delta_scan, resistance_diameter,
    resistance_diameter_spectral, ScanConfig, ScanMode,
};
use resnet_core::closed_forms::{
    block_tower_decomposition, hypercube_diameter, kmn_resistance, ladder_endpoint_resistance,
    ladder_gap, Side,
};
use resnet_core::exact::resistance_exact;
use resnet_core::format::{rational_string, render_network};
use resnet_core::reduction::{
    apex_arm_bound_holds, fan_chain_reduce, inverse_power, reduce_greedy, GreedyOptions, Terminals,
};
use resnet_core::spectra::resistance_spectral;
use resnet_core::Error;

mod source;

use source::{Source, BUILDER_HELP};

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io(String),
    Usage(String),
    Incomplete(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(Error::Syntax { .. } | Error::DuplicateVertex { .. }) => 2,
            CliError::Core(Error::Disconnected) => 3,
            CliError::Core(Error::Singular { .. }) => 4,
            CliError::Core(Error::NotApplicable(_)) | CliError::Incomplete(_) => 5,
            CliError::Core(Error::BudgetExceeded { .. }) => 6,
            CliError::Usage(_) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e @ Error::BudgetExceeded { .. }) => format!(
                "{e}; raise it with --vertex-budget or RESNET_VERTEX_BUDGET, or use --mode spectral"
            ),
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) | CliError::Usage(m) | CliError::Incomplete(m) => m.clone(),
        }
    }
}

const EXIT_CODES: &str = "\
exit codes: 0 ok, 1 other error, 2 parse or usage error, 3 disconnected network,
4 singular gadget system, 5 no rewrite applies, 6 vertex budget exceeded";

#[derive(Debug, Parser)]
#[command(name = "resnet", version, about = "Effective resistance on resistor networks", after_help = EXIT_CODES)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct NetworkArgs {
    /// Edge-list file (`u v r [gadget]` per line, `vertex ID LABEL` declarations)
    #[arg(long, conflicts_with = "builder")]
    graph: Option<PathBuf>,
    /// Named builder followed by its integer arguments
    #[arg(long, num_args = 1.., value_name = "NAME ARGS", allow_hyphen_values = false)]
    builder: Option<Vec<String>>,
    /// Largest network solved exactly (default 4096 or RESNET_VERTEX_BUDGET)
    #[arg(long)]
    vertex_budget: Option<usize>,
}

impl NetworkArgs {
    fn load(&self, mode: Mode) -> Result<Source, CliError> {
        let budget = match mode {
            Mode::Exact => self.vertex_budget.unwrap_or_else(default_vertex_budget),
            Mode::Spectral => usize::MAX,
        };
        let source = Source::load(self.graph.as_deref(), self.builder.as_deref(), budget)?;
        let n = source.network().vertex_count();
        if mode == Mode::Exact && n > budget {
            return Err(Error::BudgetExceeded {
                vertices: n,
                budget,
            }
            .into());
        }
        Ok(source)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Effective resistance between two vertices (ids or labels)
    #[command(after_help = BUILDER_HELP)]
    Resistance {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// Greedy terminal-preserving reduction with a replayable trace
    #[command(after_help = BUILDER_HELP)]
    Reduce {
        #[command(flatten)]
        network: NetworkArgs,
        /// Comma-separated terminal ids or labels
        #[arg(long, value_delimiter = ',', required = true)]
        terminals: Vec<String>,
        /// Embed terminal resistance tables after every step
        #[arg(long)]
        certify: bool,
        /// Also apply delta-wye steps, chasing triangles as in the fan pipeline
        #[arg(long)]
        fan: bool,
        /// Write the JSON trace here
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
    },
    /// Endpoint resistances on P_n x Q_k for n = 2..=max-n.
    ///
    /// Output has one baseline row (n = 2, no diff) plus one row per n >= 3
    /// with diff = R_n - R_(n-1), i.e. max-n - 1 rows in total.
    Scan {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        max_n: usize,
        /// Hypercube vertices i,j; the pair is (a1,b_i), (an,b_j). Default: 0 and its antipode
        #[arg(long, value_name = "I,J", value_parser = parse_pair)]
        pair: Option<(usize, usize)>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Worker threads
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        vertex_budget: Option<usize>,
    },
    /// Resistance diameter and every pair attaining it
    #[command(after_help = BUILDER_HELP)]
    Diameter {
        #[command(flatten)]
        network: NetworkArgs,
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
    },
    /// D_r(G_n) - D_r(G_(n-1)) on block towers P_n x C4
    DeltaScan {
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Evaluate a closed-form expression
    ClosedForm {
        #[command(subcommand)]
        form: ClosedForm,
    },
    /// Reduce the fan on P_(n+1) with apex edges 1/m to a chain
    FanChain {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        certify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print a builder network in the edge-list format
    #[command(after_help = BUILDER_HELP)]
    Build {
        #[arg(num_args = 1.., required = true, value_name = "NAME ARGS")]
        builder: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    X,
    Y,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::X => Side::X,
            SideArg::Y => Side::Y,
        }
    }
}

#[derive(Debug, Subcommand)]
enum ClosedForm {
    /// R[(a1,c1),(an,c2)] on the ladder P_n x K2
    Ladder { n: usize },
    /// R[(a1,c1),(an,c2)] - R[(a1,c1),(an,c1)] on the ladder
    LadderGap { n: usize },
    /// Exact resistance diameter of the hypercube Q_k
    HypercubeDiameter { k: usize },
    /// Resistance in K_{m,n} between vertices on the given sides
    Kmn {
        m: usize,
        n: usize,
        #[arg(value_enum)]
        side_u: SideArg,
        #[arg(value_enum)]
        side_v: SideArg,
    },
    /// Both sides of the block tower decomposition through ladder and fan
    Decomposition { n: usize },
}

fn parse_pair(text: &str) -> Result<(usize, usize), String> {
    let (i, j) = text
        .split_once(',')
        .ok_or_else(|| format!("expected I,J, got `{text}`"))?;
    let parse = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("`{t}` is not a vertex index"))
    };
    Ok((parse(i)?, parse(j)?))
}

/// `x` with 15 significant digits.
fn significant(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i32;
    if !(-5..15).contains(&magnitude) {
        return format!("{x:.14e}");
    }
    let decimals = (14 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

fn with_jobs<T>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, CliError>
where
    T: Send,
{
    match jobs {
        None => Ok(f()),
        Some(j) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build()
                .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

fn write_file(path: &PathBuf, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn json_string(value: &serde_json::Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values serialise") + "\n"
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Resistance {
            network,
            u,
            v,
            mode,
        } => {
            let source = network.load(mode)?;
            let net = source.network();
            let (u, v) = (net.resolve(&u)?, net.resolve(&v)?);
            match mode {
                Mode::Exact => println!("{}", rational_string(&resistance_exact(net, u, v)?)),
                Mode::Spectral => {
                    if !net.is_connected() {
                        return Err(Error::Disconnected.into());
                    }
                    println!(
                        "{}",
                        significant(resistance_spectral(&source.spectrum()?, u, v)?)
                    );
                }
            }
        }
        Command::Reduce {
            network,
            terminals,
            certify,
            fan,
            out,
            format,
        } => {
            let source = network.load(Mode::Exact)?;
            let net = source.network();
            let names: Vec<&str> = terminals.iter().map(String::as_str).collect();
            let terminals = Terminals::from_labels(net, &names)?;
            let outcome = reduce_greedy(
                net,
                &terminals,
                GreedyOptions {
                    delta_y: fan,
                    certify,
                },
            )?;
            let trace = &outcome.trace;
            if let Some(path) = &out {
                write_file(path, &json_string(&trace.to_json()))?;
            }
            match format {
                Format::Json => print!("{}", json_string(&trace.to_json())),
                _ => {
                    print!("{}", trace.to_text());
                    print!("{}", render_network(&trace.final_network));
                }
            }
            if !outcome.complete {
                return Err(CliError::Incomplete(format!(
                    "no rewrite applies; {} vertices remain for {} terminals",
                    trace.final_network.vertex_count(),
                    terminals.labels().len()
                )));
            }
        }
        Command::Scan {
            k,
            max_n,
            pair,
            format,
            mode,
            jobs,
            vertex_budget,
        } => {
            let mut config = ScanConfig::new(k, max_n);
            if let Some(p) = pair {
                config.pair = p;
            }
            if let Some(b) = vertex_budget {
                config.vertex_budget = b;
            }
            config.mode = match mode {
                Mode::Exact => ScanMode::Exact,
                Mode::Spectral => ScanMode::Spectral,
            };
            let report = with_jobs(jobs, || conjecture_scan(&config))??;
            match format {
                Format::Json => print!("{}", json_string(&report.to_json())),
                _ => print!("{}", report.to_csv()),
            }
            eprintln!("{}", report.summary());
        }
        Command::Diameter {
            network,
            format,
            mode,
        } => {
            let source = network.load(mode)?;
            let report = match mode {
                Mode::Exact => resistance_diameter(source.network())?,
                Mode::Spectral => resistance_diameter_spectral(source.network())?,
            };
            match format {
                Format::Plain => print!("{}", report.to_text()),
                Format::Csv => print!("{}", report.to_csv()),
                Format::Json => print!("{}", json_string(&report.to_json())),
            }
        }
        Command::DeltaScan {
            max_n,
            format,
            jobs,
        } => {
            let rows = with_jobs(jobs, || diameter_delta_scan(max_n))??;
            let opt = |r: &Option<resnet_core::Rational>| r.as_ref().map(rational_string);
            match format {
                Format::Json => {
                    let rows: Vec<_> = rows
                        .iter()
                        .map(|r| {
                            serde_json::json!({
                                "n": r.n,
                                "D_r": rational_string(&r.diameter),
                                "pairs": r.pair_count,
                                "delta": opt(&r.delta),
                                "endpoint_delta": opt(&r.endpoint_delta),
                                "delta_matches_endpoint": r.delta_matches_endpoint(),
                            })
                        })
                        .collect();
                    print!("{}", json_string(&serde_json::Value::Array(rows)));
                }
                _ => {
                    println!("n,D_r,pairs,delta,delta_float,matches_endpoint");
                    for r in &rows {
                        let float = r
                            .delta
                            .as_ref()
                            .map(|d| format!("{:.17e}", resnet_core::network::to_f64(d)))
                            .unwrap_or_default();
                        println!(
                            "{},{},{},{},{},{}",
                            r.n,
                            rational_string(&r.diameter),
                            r.pair_count,
                            opt(&r.delta).unwrap_or_default(),
                            float,
                            r.delta_matches_endpoint()
                        );
                    }
                }
            }
        }
        Command::ClosedForm { form } => match form {
            ClosedForm::Ladder { n } => println!("{}", significant(ladder_endpoint_resistance(n)?)),
            ClosedForm::LadderGap { n } => println!("{}", significant(ladder_gap(n)?)),
            ClosedForm::HypercubeDiameter { k } => {
                println!("{}", rational_string(&hypercube_diameter(k)?))
            }
            ClosedForm::Kmn {
                m,
                n,
                side_u,
                side_v,
            } => {
                println!(
                    "{}",
                    rational_string(&kmn_resistance(m, n, side_u.into(), side_v.into())?)
                )
            }
            ClosedForm::Decomposition { n } => {
                let r = block_tower_decomposition(n)?;
                println!("left {}", rational_string(&r.left));
                println!("right_exact {}", rational_string(&r.right_exact));
                println!("right_closed_form {}", significant(r.right_closed_form));
                println!("residual_exact {}", rational_string(&r.residual_exact));
                println!("residual_float {:e}", r.residual_float);
            }
        },
        Command::FanChain { n, m, certify, out } => {
            let chain = fan_chain_reduce(n, m, certify)?;
            if let Some(path) = &out {
                write_file(path, &json_string(&chain.trace.to_json()))?;
            }
            let links: Vec<String> = chain.chain.iter().map(rational_string).collect();
            println!("chain {}", links.join(" "));
            for (i, arm) in chain.apex_arms.iter().enumerate() {
                println!("apex_arm c{} {}", i + 1, rational_string(arm));
            }
            println!("endpoint {}", rational_string(&chain.endpoint_resistance()));
            println!("apex {}", rational_string(&chain.apex_resistance()));
            println!(
                "bound r[c{},b] < 1/{}^{} = {}: {}",
                n - 1,
                m,
                n,
                rational_string(&inverse_power(m, n)),
                apex_arm_bound_holds(&chain)
            );
            if let Some(ok) = chain.trace.certificates_consistent() {
                println!(
                    "certificates {}",
                    if ok { "consistent" } else { "MISMATCH" }
                );
            }
        }
        Command::Build { builder } => {
            let b = source::Builder::parse(&builder)?;
            print!("{}", render_network(&b.build()?));
        }
    }
    Ok(())
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("resnet: {}", e.message());
        process::exit(e.exit_code());
    }
}
