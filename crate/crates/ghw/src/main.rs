use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use ghw::config::CAP_ENV;
use ghw::{build_graph_parallel, edge_list, enumerate_parallel, write_census, write_dot, Config, RunError};
use ghw_core::constructions::{Embedding, ReductionChoice};
use ghw_core::literal::{format_group, parse_group, parse_representation};
use ghw_core::{
    are_isomorphic, betti_vector, canonical_key, didicosm_witness, embed_up_exist, embed_up_mono, gamma_group,
    klein_group, list_reductions, out_order, realize_representation, reduce, semidirect_minus_id, Census,
    EnumerationOptions, GhwPresentation,
};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "ghw", version, about = "Exact computations with generalized Hantzsche-Wendt groups")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Largest dimension accepted.
    #[arg(long, global = true, env = CAP_ENV)]
    cap: Option<usize>,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Time budget for one enumeration, in seconds.
    #[arg(long, global = true, default_value_t = 1800.0)]
    budget: f64,
    /// Allow enumeration above dimension 5.
    #[arg(long, global = true)]
    extended: bool,
    /// No progress or timing output.
    #[arg(long, global = true)]
    deterministic: bool,
}

#[derive(Args)]
struct GroupArg {
    /// Group literal such as "dim=3; gens=+--:HH0,-+-:0HH"; read from stdin
    /// when omitted.
    #[arg(long)]
    group: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Write the census of one dimension as JSON Lines.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Counts per dimension.
    Table {
        #[arg(long, default_value_t = 5)]
        max_dim: usize,
    },
    /// Rational Betti numbers.
    Betti(GroupArg),
    /// Build the graph of groups and subgroups.
    Graph {
        #[arg(long, default_value_t = 4)]
        max_dim: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Subgroups of one lower dimension.
    Reduce {
        #[command(flatten)]
        group: GroupArg,
        /// Only the kernel of this translation coordinate (1-based).
        #[arg(long)]
        coordinate: Option<usize>,
    },
    /// Torsion-free group with a given diagonal holonomy representation.
    Realize {
        /// Representation literal such as "dim=3; gens=+--,-+-".
        #[arg(long)]
        rep: Option<String>,
    },
    /// A group of one higher dimension containing the input.
    EmbedExist(GroupArg),
    /// The monomorphism Gamma_n -> Gamma_{n+1}.
    EmbedMono {
        #[arg(long)]
        dim: usize,
    },
    /// Semidirect product with Z acting by -Id.
    Semidirect(GroupArg),
    /// A didicosm subgroup of a group with trivial center.
    DidicosmWitness(GroupArg),
    /// Order of the outer automorphism group.
    OutOrder(GroupArg),
    /// Whether two groups are isomorphic.
    Isomorphic {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// The group K_n.
    Klein {
        #[arg(long)]
        dim: usize,
    },
    /// The group Gamma_n.
    Gamma {
        #[arg(long)]
        dim: usize,
    },
}

fn read_stdin() -> anyhow::Result<String> {
    let mut text = String::new();
    io::stdin().read_to_string(&mut text)?;
    Ok(text)
}

fn presentation(text: &str) -> anyhow::Result<GhwPresentation> {
    Ok(GhwPresentation::try_from(parse_group(text)?)?)
}

impl GroupArg {
    fn load(&self) -> anyhow::Result<GhwPresentation> {
        match &self.group {
            Some(text) => presentation(text),
            None => presentation(&read_stdin()?),
        }
    }
}

fn literal(p: &GhwPresentation) -> String {
    format_group(&p.to_group())
}

fn coords(mask: u64) -> Vec<usize> {
    ghw_core::bits::bit_indices(mask).map(|i| i + 1).collect()
}

fn choice_json(c: &ReductionChoice) -> Value {
    json!({ "functional": coords(c.functional), "coordinate": c.coordinate + 1 })
}

fn embedding_json(e: &Embedding) -> Value {
    json!({
        "group": literal(&e.presentation),
        "canonical_key": canonical_key(&e.presentation).to_hex(),
        "round_trip": choice_json(&e.round_trip),
    })
}

fn config(global: &Global) -> anyhow::Result<Config> {
    let mut config = Config::default();
    if let Some(cap) = global.cap {
        config.cap = cap;
    }
    config.workers = global.workers;
    if !(global.budget > 0.0 && global.budget.is_finite()) {
        bail!("--budget must be a positive number of seconds");
    }
    config.budget = Duration::from_secs_f64(global.budget);
    config.extended = global.extended;
    config.deterministic = global.deterministic;
    config.validate()?;
    Ok(config)
}

fn census(n: usize, config: &Config) -> anyhow::Result<Census> {
    if n > EnumerationOptions::DEFAULT_MODE_LIMIT && !config.extended && n <= config.cap {
        bail!("dimension {n} needs --extended (long-running mode)");
    }
    let started = Instant::now();
    let quiet = config.deterministic || n <= 5;
    let report = move |done: usize, total: usize| {
        if !quiet && (done.is_multiple_of(16) || done == total) {
            eprintln!("dimension {n}: {done}/{total} work units");
        }
    };
    let census = enumerate_parallel(n, config, &report)?;
    if !config.deterministic {
        eprintln!("dimension {n}: {} classes in {:.2?}", census.len(), started.elapsed());
    }
    Ok(census)
}

#[derive(Serialize)]
struct TableRow {
    dim: usize,
    beta1_zero: usize,
    beta1_one: usize,
    total: usize,
    orientable: usize,
    non_orientable: usize,
    holonomy_representations: usize,
}

fn print(value: &Value) -> io::Result<()> {
    writeln!(io::stdout().lock(), "{value}")
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let config = config(&cli.global)?;
    match cli.command {
        Command::Enumerate { dim, out } => {
            let census = census(dim, &config)?;
            match out {
                Some(path) => {
                    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                    let mut w = BufWriter::new(file);
                    write_census(&census, &mut w)?;
                    w.flush()?;
                }
                None => write_census(&census, io::stdout().lock())?,
            }
        }
        Command::Table { max_dim } => {
            for n in 2..=max_dim {
                let r = census(n, &config)?.row();
                let row = TableRow {
                    dim: r.dim,
                    beta1_zero: r.beta1_zero,
                    beta1_one: r.beta1_one,
                    total: r.total,
                    orientable: r.orientable,
                    non_orientable: r.non_orientable,
                    holonomy_representations: r.holonomy_representations,
                };
                writeln!(io::stdout().lock(), "{}", serde_json::to_string(&row)?)?;
            }
        }
        Command::Betti(g) => print(&json!(betti_vector(&g.load()?).as_slice()))?,
        Command::Graph { max_dim, dot, json: json_path } => {
            if max_dim < 2 {
                bail!("--max-dim must be at least 2");
            }
            let censuses = (2..=max_dim).map(|n| census(n, &config)).collect::<Result<Vec<_>, _>>()?;
            let graph = build_graph_parallel(&censuses, &config)?;
            if let Some(path) = dot {
                write_dot(&graph, File::create(&path).with_context(|| format!("creating {}", path.display()))?)?;
            }
            if let Some(path) = json_path {
                let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
                serde_json::to_writer_pretty(BufWriter::new(file), &edge_list(&graph))?;
            }
            print(&json!({
                "vertices": graph.vertex_count(),
                "edges": graph.edge_count(),
                "connected": graph.is_connected(),
                "tree": graph.is_tree(),
            }))?;
        }
        Command::Reduce { group, coordinate } => {
            let p = group.load()?;
            match coordinate {
                Some(i) => {
                    if i == 0 {
                        bail!("coordinates are 1-based");
                    }
                    let choice = ReductionChoice::kernel_of_coordinate(&p, i - 1)?;
                    let q = reduce(&p, &choice)?;
                    print(&json!({
                        "choice": choice_json(&choice),
                        "group": literal(&q),
                        "canonical_key": canonical_key(&q).to_hex(),
                    }))?;
                }
                None => {
                    for r in list_reductions(&p)? {
                        print(&json!({
                            "choice": choice_json(&r.choice),
                            "normal": r.normal,
                            "group": literal(&r.result),
                            "canonical_key": r.key.to_hex(),
                        }))?;
                    }
                }
            }
        }
        Command::Realize { rep } => {
            let text = match rep {
                Some(t) => t,
                None => read_stdin()?,
            };
            let group = realize_representation(&parse_representation(&text)?)?;
            print(&json!({ "group": format_group(&group) }))?;
        }
        Command::EmbedExist(g) => print(&embedding_json(&embed_up_exist(&g.load()?)?))?,
        Command::EmbedMono { dim } => {
            let m = embed_up_mono(&gamma_group(dim)?)?;
            let w = &m.witness;
            print(&json!({
                "source_dim": m.source_dim,
                "images": m.images.iter().map(|g| json!({"flips": coords(g.sign.0), "halves": coords(g.translation.0)})).collect::<Vec<_>>(),
                "verified": m.verified,
                "non_normal": {
                    "conjugator_half_units": w.conjugator.half_units,
                    "conjugate_flips": coords(w.conjugate.flips),
                    "conjugate_half_units": w.conjugate.half_units,
                    "outside_image": w.outside_image,
                },
            }))?;
        }
        Command::Semidirect(g) => print(&embedding_json(&semidirect_minus_id(&g.load()?)?))?,
        Command::DidicosmWitness(g) => {
            let w = didicosm_witness(&g.load()?)?;
            print(&json!({
                "first": {"flips": coords(w.first.sign.0), "halves": coords(w.first.translation.0)},
                "second": {"flips": coords(w.second.sign.0), "halves": coords(w.second.translation.0)},
                "fixed_coordinate": w.fixed_coordinate + 1,
                "half_coordinate": w.half_coordinate + 1,
                "lattice": w.lattice,
                "lattice_rank": w.lattice_rank,
                "beta1": w.beta1,
            }))?;
        }
        Command::OutOrder(g) => {
            let r = out_order(&g.load()?)?;
            print(&json!({
                "h1_order": r.h1_order,
                "perm_stabilizer_order": r.perm_stabilizer_order,
                "n_alpha_quotient_order": 2 * r.perm_stabilizer_order,
                "out_order": r.out_order,
                "bound": r.bound,
                "within_bound": r.within_bound(),
            }))?;
        }
        Command::Isomorphic { left, right } => {
            print(&json!(are_isomorphic(&presentation(&left)?, &presentation(&right)?)?))?;
        }
        Command::Klein { dim } => print(&json!({ "group": literal(&klein_group(dim)?) }))?,
        Command::Gamma { dim } => print(&json!({ "group": literal(&gamma_group(dim)?) }))?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if matches!(e.downcast_ref::<RunError>(), Some(RunError::BudgetExhausted { .. })) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
