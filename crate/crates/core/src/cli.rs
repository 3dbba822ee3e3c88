//! Command-line front end. `main.rs` only forwards to [`run`].
//!
//! Exit codes: 0 on success (and every verdict passing), 1 when a verdict
//! fails, 2 on usage or input errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::estimate::{
    estimate_vertex_cover, format_sig, verify, write_csv, Check, Experiment, ReportRow,
    DEFAULT_SLACK_SIGMAS,
};
use crate::generators::GeneratorSpec;
use crate::netmodel::{
    parse_network, write_network, EdgeId, Network, NetworkFile, Orientation, VertexId,
};
use crate::resistance::{effective_resistance, SplitSpec};
use crate::tours::{build_walk, WalkConstruction};
use crate::walker::{RefinedKind, TimingModel};

#[derive(Debug, Parser)]
#[command(
    name = "edgecover",
    version,
    about = "Random-walk cover and commute times on weighted multigraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// Network file in the `edge u v length [fwd|bwd]` format.
    #[arg(long, global = true, value_name = "FILE", conflicts_with = "gen")]
    network: Option<PathBuf>,
    /// Generated network, e.g. `path:1,1,1`, `loop:2`, `tree:6`, `random:n=5,m=8,seed=4`.
    #[arg(long, global = true, value_name = "SPEC")]
    gen: Option<String>,
    #[arg(long, global = true)]
    trials: Option<u64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, default_value_t = ModelArg::L2)]
    model: ModelArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Allowed deviation in standard errors.
    #[arg(long, global = true, default_value_t = DEFAULT_SLACK_SIGMAS)]
    slack: f64,
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModelArg {
    L2,
    Brownian,
}

impl From<ModelArg> for TimingModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::L2 => TimingModel::LSquared,
            ModelArg::Brownian => TimingModel::BrownianMean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Either,
    Forward,
    Backward,
    Both,
    All,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoverMode {
    Edge,
    Arc,
    Directed,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum EpochModeArg {
    Directed,
    Arc,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WalkArg {
    Dfs,
    Euler,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckArg {
    Commute,
    Either,
    Forward,
    Backward,
    Both,
    Cre,
    CreBound,
    CraBound,
    DcraBound,
    EpochsDirected,
    EpochsArc,
}

#[derive(Debug, Args)]
struct OrientArgs {
    /// Random orientation seed, used when the network file carries none.
    #[arg(long)]
    orient_seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Effective resistance between two vertices.
    Resist {
        #[arg(long, num_args = 2, value_names = ["U", "V"], required = true)]
        pair: Vec<String>,
    },
    /// Simulated commute time against 2mR.
    Commute {
        #[arg(long, num_args = 2, value_names = ["X", "Y"], required = true)]
        pair: Vec<String>,
    },
    /// Simulated refined commutes across a split against their formulas.
    Refined {
        #[arg(long, num_args = 2, value_names = ["X", "Y"], required = true)]
        pair: Vec<String>,
        /// Edge ids forming side A.
        #[arg(long, value_delimiter = ',', required = true)]
        a_edges: Vec<usize>,
        #[arg(long, value_enum, default_value_t = KindArg::All)]
        kind: KindArg,
    },
    /// Simulated cover-and-return time against its bound.
    Cover {
        #[arg(long, value_enum, default_value_t = CoverMode::Edge)]
        mode: CoverMode,
        #[arg(long, default_value = "0")]
        root: String,
        #[command(flatten)]
        orient: OrientArgs,
    },
    /// Final epoch of the double-cover pacing process.
    Epochs {
        #[arg(long, value_enum, default_value_t = EpochModeArg::Directed)]
        mode: EpochModeArg,
        #[arg(long, value_enum, default_value_t = WalkArg::Dfs)]
        walk: WalkArg,
        #[arg(long, default_value = "0")]
        root: String,
        #[command(flatten)]
        orient: OrientArgs,
    },
    /// Simulated vertex cover time.
    Vcover {
        #[arg(long, default_value = "0")]
        root: String,
        /// Also require the walk to return to the root.
        #[arg(long = "return")]
        with_return: bool,
    },
    /// Run one or more checks; exits 1 if any fails.
    Verify {
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        check: Vec<CheckArg>,
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        pair: Option<Vec<String>>,
        #[arg(long, value_delimiter = ',')]
        a_edges: Option<Vec<usize>>,
        #[arg(long, default_value = "0")]
        root: String,
        #[command(flatten)]
        orient: OrientArgs,
    },
    /// Emit a generated network in the text format.
    Gen { spec: Option<String> },
}

enum Failure {
    Usage(String),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

struct Loaded {
    file: NetworkFile,
}

impl Loaded {
    fn net(&self) -> &Network {
        &self.file.network
    }

    fn vertex(&self, label: &str) -> Result<VertexId, Failure> {
        self.file
            .vertex(label)
            .ok_or_else(|| Failure::Input(format!("unknown vertex `{label}`")))
    }

    fn orientation(&self, args: &OrientArgs) -> Orientation {
        if let Some(o) = &self.file.orientation {
            return o.clone();
        }
        match args.orient_seed {
            Some(s) => Orientation::random(self.net(), &mut ChaCha8Rng::seed_from_u64(s)),
            None => Orientation::all_forward(self.net()),
        }
    }
}

fn load(common: &Common) -> Result<Loaded, Failure> {
    match (&common.network, &common.gen) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let file = parse_network(&text)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(Loaded { file })
        }
        (None, Some(spec)) => {
            let net = spec.parse::<GeneratorSpec>()?.build()?;
            let labels = (0..net.vertex_count()).map(|i| i.to_string()).collect();
            Ok(Loaded {
                file: NetworkFile {
                    network: net,
                    labels,
                    orientation: None,
                },
            })
        }
        (None, None) => Err(Failure::Usage(
            "one of --network or --gen is required".into(),
        )),
        (Some(_), Some(_)) => Err(Failure::Usage("--network and --gen are exclusive".into())),
    }
}

fn experiment(common: &Common) -> Result<Experiment, Failure> {
    let trials = common
        .trials
        .ok_or_else(|| Failure::Usage("--trials is required for this command".into()))?;
    let seed = common
        .seed
        .ok_or_else(|| Failure::Usage("--seed is required for this command".into()))?;
    let mut exp = Experiment::new(trials, seed);
    if let Some(w) = common.workers {
        exp = exp.with_workers(w);
    }
    Ok(exp)
}

fn kinds(k: KindArg) -> Vec<RefinedKind> {
    match k {
        KindArg::Either => vec![RefinedKind::Either],
        KindArg::Forward => vec![RefinedKind::Forward],
        KindArg::Backward => vec![RefinedKind::Backward],
        KindArg::Both => vec![RefinedKind::Both],
        KindArg::All => RefinedKind::ALL.to_vec(),
    }
}

fn split<'n>(
    loaded: &'n Loaded,
    pair: &[String],
    a_edges: &[usize],
) -> Result<SplitSpec<'n>, Failure> {
    let (x, y) = (loaded.vertex(&pair[0])?, loaded.vertex(&pair[1])?);
    let ids: Vec<EdgeId> = a_edges.iter().copied().map(EdgeId).collect();
    Ok(SplitSpec::new(loaded.net(), &ids, x, y)?)
}

fn render(rows: &[ReportRow], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut buf = Vec::new();
            write_csv(rows, &mut buf).expect("writing to memory");
            String::from_utf8(buf).expect("utf-8")
        }
        Format::Text => rows
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

/// Output text and whether every verdict passed.
fn execute(cli: &Cli) -> Result<(String, bool), Failure> {
    let common = &cli.common;
    let model: TimingModel = common.model.into();

    if let Command::Gen { spec } = &cli.command {
        let spec = spec
            .as_ref()
            .or(common.gen.as_ref())
            .ok_or_else(|| Failure::Usage("gen needs a generator spec".into()))?;
        let net = spec.parse::<GeneratorSpec>()?.build()?;
        return Ok((write_network(&net, None), true));
    }

    let loaded = load(common)?;
    let net = loaded.net();
    let rows: Vec<ReportRow> = match &cli.command {
        Command::Gen { .. } => unreachable!(),
        Command::Resist { pair } => {
            let (x, y) = (loaded.vertex(&pair[0])?, loaded.vertex(&pair[1])?);
            let r = format_sig(effective_resistance(net, x, y)?, 6);
            let text = match common.format {
                Format::Csv => format!("x,y,resistance\n{},{},{r}\n", pair[0], pair[1]),
                Format::Text => format!("{r}\n"),
            };
            return Ok((text, true));
        }
        Command::Commute { pair } => {
            let (x, y) = (loaded.vertex(&pair[0])?, loaded.vertex(&pair[1])?);
            let v = verify(
                net,
                &Check::Commute { x, y },
                model,
                &experiment(common)?,
                common.slack,
            )?;
            vec![v.into()]
        }
        Command::Refined {
            pair,
            a_edges,
            kind,
        } => {
            let spec = split(&loaded, pair, a_edges)?;
            let exp = experiment(common)?;
            kinds(*kind)
                .into_iter()
                .map(|kind| {
                    let check = Check::Refined {
                        kind,
                        spec: spec.clone(),
                    };
                    verify(net, &check, model, &exp, common.slack).map(ReportRow::from)
                })
                .collect::<Result<_, _>>()?
        }
        Command::Cover { mode, root, orient } => {
            let root = loaded.vertex(root)?;
            let check = match mode {
                CoverMode::Edge => Check::EdgeCoverBound { root },
                CoverMode::Arc => Check::ArcCoverBound { root },
                CoverMode::Directed => Check::DirectedCoverBound {
                    root,
                    orientation: loaded.orientation(orient),
                },
            };
            vec![verify(net, &check, model, &experiment(common)?, common.slack)?.into()]
        }
        Command::Epochs {
            mode,
            walk,
            root,
            orient,
        } => {
            let root = loaded.vertex(root)?;
            let how = match walk {
                WalkArg::Dfs => WalkConstruction::DepthFirst,
                WalkArg::Euler => WalkConstruction::Euler,
            };
            let walk = build_walk(net, root, how)?;
            let check = match mode {
                EpochModeArg::Directed => Check::DirectedEpochs {
                    walk,
                    orientation: loaded.orientation(orient),
                },
                EpochModeArg::Arc => Check::ArcEpochs { walk },
            };
            vec![verify(net, &check, model, &experiment(common)?, common.slack)?.into()]
        }
        Command::Vcover { root, with_return } => {
            let root = loaded.vertex(root)?;
            vec![
                estimate_vertex_cover(net, root, *with_return, model, &experiment(common)?)?.into(),
            ]
        }
        Command::Verify {
            check,
            pair,
            a_edges,
            root,
            orient,
        } => {
            let root = loaded.vertex(root)?;
            let exp = experiment(common)?;
            let mut rows = Vec::new();
            for &c in check {
                let needs_pair = || {
                    pair.as_ref()
                        .ok_or_else(|| Failure::Usage(format!("check {c:?} needs --pair")))
                };
                let refined = |kind| -> Result<Check<'_>, Failure> {
                    let a = a_edges
                        .as_ref()
                        .ok_or_else(|| Failure::Usage(format!("check {c:?} needs --a-edges")))?;
                    Ok(Check::Refined {
                        kind,
                        spec: split(&loaded, needs_pair()?, a)?,
                    })
                };
                let chk = match c {
                    CheckArg::Commute => {
                        let p = needs_pair()?;
                        Check::Commute {
                            x: loaded.vertex(&p[0])?,
                            y: loaded.vertex(&p[1])?,
                        }
                    }
                    CheckArg::Either => refined(RefinedKind::Either)?,
                    CheckArg::Forward => refined(RefinedKind::Forward)?,
                    CheckArg::Backward => refined(RefinedKind::Backward)?,
                    CheckArg::Both => refined(RefinedKind::Both)?,
                    CheckArg::Cre => Check::EdgeCoverExact { root },
                    CheckArg::CreBound => Check::EdgeCoverBound { root },
                    CheckArg::CraBound => Check::ArcCoverBound { root },
                    CheckArg::DcraBound => Check::DirectedCoverBound {
                        root,
                        orientation: loaded.orientation(orient),
                    },
                    CheckArg::EpochsDirected => Check::DirectedEpochs {
                        walk: build_walk(net, root, WalkConstruction::DepthFirst)?,
                        orientation: loaded.orientation(orient),
                    },
                    CheckArg::EpochsArc => Check::ArcEpochs {
                        walk: build_walk(net, root, WalkConstruction::DepthFirst)?,
                    },
                };
                rows.push(verify(net, &chk, model, &exp, common.slack)?.into());
            }
            rows
        }
    };
    let all_pass = rows
        .iter()
        .all(|r| r.target.is_none_or(|(_, _, pass)| pass));
    Ok((render(&rows, common.format), all_pass))
}

/// Parses `args` (program name first), runs the command, and writes the
/// report to `--out` or `stdout`. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 2;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(&cli) {
        Ok((text, pass)) => {
            let written = match &cli.common.out {
                Some(path) => fs::write(path, &text),
                None => stdout.write_all(text.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                return 2;
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(stderr, "usage error: {m}");
            2
        }
        Err(Failure::Input(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
    }
}
