mod input;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use umod_core::apps;
use umod_core::oracle::Oracle;
use umod_core::{
    build_umodular_tree, check_crossing_family, ensure_self_complemented, fast_umodular_tree, gen,
    is_umodular_prime, mu, seidel_switch, strong_umodules, Error, HomogeneousRelation, LaminarTree,
    StandardRelation, Tournament,
};

use input::{parse_input, InputDocument, ParseError, Structure};

#[derive(Parser)]
#[command(name = "umod", version, about = "Umodular decomposition of graphs, tournaments and relations")]
struct Cli {
    /// Output format. `dot` is available for the tree commands only.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the parallel pair loops (defaults to all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Partition into the maximal umodules avoiding a set.
    Mu {
        /// Comma-separated element ids.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        input: Option<PathBuf>,
    },
    /// Inclusion tree of the strong umodules.
    StrongTree { input: Option<PathBuf> },
    /// Unrooted umodular decomposition tree in canonical form.
    UmodTree {
        /// Build through the Seidel switch (local congruence at most 2).
        #[arg(long, conflicts_with = "generic")]
        fast: bool,
        /// Build from strong bipartitions; works for any self-complemented input.
        #[arg(long)]
        generic: bool,
        input: Option<PathBuf>,
    },
    /// Seidel switch at a pivot, written as a relation on the other elements.
    Seidel {
        #[arg(long)]
        pivot: usize,
        input: Option<PathBuf>,
    },
    /// Structural report: local congruence, four elements, primality, crossing.
    Check { input: Option<PathBuf> },
    /// Algorithms for totally decomposable tournaments.
    Tournament {
        #[command(subcommand)]
        action: TournamentAction,
    },
    /// Time the main operations on random inputs; prints CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_values_t = vec![50, 100, 200])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the strong umodule computation above this size.
        #[arg(long, default_value_t = 200)]
        strong_limit: usize,
    },
}

#[derive(Subcommand)]
enum TournamentAction {
    /// Diamond-freeness, local transitivity and the tree test.
    Recognize { input: Option<PathBuf> },
    /// Circular order starting at vertex 0.
    Order { input: Option<PathBuf> },
    /// Isomorphism with another totally decomposable tournament.
    Iso { other: PathBuf, input: Option<PathBuf> },
    /// Minimum feedback vertex set.
    Fvs { input: Option<PathBuf> },
    /// Twin and antitwin extension sequence.
    Extend { input: Option<PathBuf> },
}

enum Failure {
    Io { source: String, message: String },
    Parse { source: String, error: ParseError },
    Usage(String),
    Precondition(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Precondition(_) => 3,
            _ => 2,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Io { source, message } => json!({"error": "io", "source": source, "message": message}),
            Failure::Parse { source, error } => json!({
                "error": "parse",
                "source": source,
                "line": error.line,
                "column": error.column,
                "message": error.message,
            }),
            Failure::Usage(message) => json!({"error": "usage", "message": message}),
            Failure::Precondition(e) => json!({"error": error_kind(e), "message": e.to_string()}),
        }
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidStructure(_) => "invalid_structure",
        Error::ElementOutOfRange { .. } => "element_out_of_range",
        Error::NotReflectless { .. } => "not_reflectless",
        Error::OracleBound { .. } => "oracle_bound",
        Error::TrivialCut => "trivial_cut",
        Error::NotAPart => "not_a_part",
        Error::LocalCongruence { .. } => "local_congruence",
        Error::NotSelfComplemented => "not_self_complemented",
        Error::NotTotallyDecomposable => "not_totally_decomposable",
        Error::TooSmall { .. } => "too_small",
    }
}

type Outcome = Result<String, Failure>;

fn load(path: Option<&Path>) -> Result<InputDocument, Failure> {
    let (source, text) = match path {
        None => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Io { source: "-".into(), message: e.to_string() })?;
            ("-".to_string(), text)
        }
        Some(p) => {
            let source = p.display().to_string();
            let text = std::fs::read_to_string(p)
                .map_err(|e| Failure::Io { source: source.clone(), message: e.to_string() })?;
            (source, text)
        }
    };
    parse_input(&text, &source).map_err(|error| Failure::Parse { source, error })
}

fn load_tournament(path: Option<&Path>) -> Result<Tournament, Failure> {
    let doc = load(path)?;
    match doc.structure {
        Structure::Tournament(t) => Ok(t),
        _ => {
            Err(Error::InvalidStructure(format!("expected a tournament, got a {}", doc.kind.as_str())).into())
        }
    }
}

fn no_dot(format: Format) -> Result<(), Failure> {
    if format == Format::Dot {
        return Err(Failure::Usage("dot output is only available for strong-tree and umod-tree".into()));
    }
    Ok(())
}

fn ids_text(ids: &[usize]) -> String {
    ids.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn json_string(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn run_mu(format: Format, set: &[usize], path: Option<&Path>) -> Outcome {
    no_dot(format)?;
    let h = load(path)?.relation();
    let p = mu(&h, set)?.canonical();
    Ok(match format {
        Format::Text => p.parts().iter().map(|part| ids_text(part) + "\n").collect(),
        _ => json_string(&json!(p.parts())),
    })
}

fn laminar_root(t: &LaminarTree) -> usize {
    (0..t.len()).find(|&v| t.parent(v).is_none()).unwrap_or(0)
}

fn run_strong_tree(format: Format, path: Option<&Path>) -> Outcome {
    let t = strong_umodules(&load(path)?.relation());
    let root = laminar_root(&t);
    Ok(match format {
        Format::Json => {
            let nodes: Vec<Value> = (0..t.len())
                .map(|v| json!({"id": v, "set": t.set(v), "parent": t.parent(v), "children": t.children(v)}))
                .collect();
            json_string(&json!({"n": t.ground_size(), "root": root, "nodes": nodes}))
        }
        Format::Text => {
            let mut out = String::new();
            let mut stack = vec![(root, 0)];
            while let Some((v, depth)) = stack.pop() {
                out.push_str(&format!("{}{{{}}}\n", "  ".repeat(depth), ids_text(t.set(v))));
                stack.extend(t.children(v).iter().rev().map(|&c| (c, depth + 1)));
            }
            out
        }
        Format::Dot => {
            let mut out = String::from("digraph strong {\n");
            for v in 0..t.len() {
                let shape = if t.set(v).len() == 1 { "plaintext" } else { "box" };
                out.push_str(&format!("  s{v} [shape={shape}, label=\"{}\"];\n", ids_text(t.set(v))));
            }
            for v in 0..t.len() {
                for &c in t.children(v) {
                    out.push_str(&format!("  s{v} -> s{c};\n"));
                }
            }
            out.push_str("}\n");
            out
        }
    })
}

fn run_umod_tree(format: Format, fast: bool, generic: bool, path: Option<&Path>) -> Outcome {
    let h = load(path)?.relation();
    let use_fast = fast || (!generic && h.local_congruence() <= 2);
    let tree = if use_fast { fast_umodular_tree(&h)? } else { build_umodular_tree(&h)? };
    let canon = tree.canonical();
    Ok(match format {
        Format::Json => json_string(&serde_json::to_value(&canon).expect("tree serializes")),
        Format::Dot => canon.to_dot(),
        Format::Text => canon
            .nodes
            .iter()
            .filter(|node| node.kind != "leaf")
            .map(|node| format!("{} {}: {}\n", node.id, node.kind, ids_text(&node.neighbors)))
            .collect(),
    })
}

fn relation_rows(h: &HomogeneousRelation) -> Vec<Vec<Option<u32>>> {
    let n = h.len();
    (0..n).map(|x| (0..n).map(|y| (x != y).then(|| h.class(x, y))).collect()).collect()
}

fn run_seidel(format: Format, pivot: usize, path: Option<&Path>) -> Outcome {
    no_dot(format)?;
    let sw = seidel_switch(&load(path)?.relation(), pivot)?;
    let rows = relation_rows(&sw.relation);
    Ok(match format {
        Format::Text => {
            let mut out =
                format!("# pivot {}\n# kept {}\nrelation {}\n", sw.pivot, ids_text(&sw.kept), rows.len());
            for row in rows {
                let cells: Vec<String> =
                    row.iter().map(|c| c.map_or_else(|| "-".to_string(), |c| c.to_string())).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
            out
        }
        _ => json_string(&json!({"pivot": sw.pivot, "kept": sw.kept, "classes": rows})),
    })
}

fn run_check(format: Format, path: Option<&Path>) -> Outcome {
    no_dot(format)?;
    let doc = load(path)?;
    let h = doc.relation();
    let oracle = Oracle::from_env();
    let crossing = oracle.umodules(&h).ok().map(|family| {
        let family: Vec<Vec<usize>> = family.into_iter().filter(|u| !u.is_empty()).collect();
        check_crossing_family(&family, h.len())
    });
    let strong = strong_umodules(&h);
    let report = json!({
        "kind": doc.kind.as_str(),
        "source": doc.source,
        "n": h.len(),
        "local_congruence": h.local_congruence(),
        "four_elements": h.satisfies_four_elements(),
        "four_elements_violation": h.four_elements_violation(),
        "self_complemented": ensure_self_complemented(&h).is_ok(),
        "prime": is_umodular_prime(&h),
        "strong_umodules": strong.nontrivial().count(),
        "crossing_family": crossing,
    });
    Ok(match format {
        Format::Text => report
            .as_object()
            .expect("report is an object")
            .iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect(),
        _ => json_string(&report),
    })
}

fn run_tournament(format: Format, action: &TournamentAction) -> Outcome {
    no_dot(format)?;
    let text = |v: &Value| match v {
        Value::Array(items) if items.iter().all(Value::is_u64) => {
            items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ") + "\n"
        }
        other => format!("{other}\n"),
    };
    let value = match action {
        TournamentAction::Recognize { input } => {
            let t = load_tournament(input.as_deref())?;
            let [diamond_free, locally_transitive, no_prime] = apps::decomposability_checks(&t);
            json!({
                "diamond_free": diamond_free,
                "locally_transitive": locally_transitive,
                "no_proper_prime": no_prime,
                "totally_decomposable": diamond_free && locally_transitive && no_prime,
                "diamond": apps::diamond_witness(&t),
            })
        }
        TournamentAction::Order { input } => {
            let t = load_tournament(input.as_deref())?;
            json!(apps::circular_order(&t)?.as_slice())
        }
        TournamentAction::Iso { other, input } => {
            let t = load_tournament(input.as_deref())?;
            let u = load_tournament(Some(other))?;
            json!(apps::isomorphic_decomposable(&t, &u)?)
        }
        TournamentAction::Fvs { input } => {
            let t = load_tournament(input.as_deref())?;
            json!(apps::feedback_vertex_set(&t)?)
        }
        TournamentAction::Extend { input } => {
            let t = load_tournament(input.as_deref())?;
            let seq = apps::extension_sequence(&t).ok_or(Error::NotTotallyDecomposable)?;
            serde_json::to_value(seq).expect("sequence serializes")
        }
    };
    Ok(match format {
        Format::Text => text(&value),
        _ => json_string(&value),
    })
}

fn run_bench(sizes: &[usize], seed: u64, strong_limit: usize) -> Outcome {
    let mut rng = gen::rng(seed);
    let mut out = String::from("kind,n,op,seconds\n");
    let mut row = |kind: &str, n: usize, op: &str, f: &mut dyn FnMut()| {
        let start = Instant::now();
        f();
        out.push_str(&format!("{kind},{n},{op},{:.6}\n", start.elapsed().as_secs_f64()));
    };
    for &n in sizes {
        if n == 0 {
            return Err(Failure::Usage("sizes must be positive".into()));
        }
        let inputs = [
            ("graph", gen::graph(&mut rng, n, 0.5).standard_relation()),
            ("tournament", gen::tournament(&mut rng, n).standard_relation()),
        ];
        for (kind, h) in &inputs {
            row(kind, n, "mu", &mut || drop(mu(h, &[0])));
            row(kind, n, "umod-tree-fast", &mut || drop(fast_umodular_tree(h)));
            row(kind, n, "umod-tree-generic", &mut || drop(build_umodular_tree(h)));
            if n <= strong_limit {
                row(kind, n, "strong-tree", &mut || drop(strong_umodules(h)));
            }
        }
    }
    Ok(out)
}

fn run(cli: &Cli) -> Outcome {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let f = cli.format;
    match &cli.command {
        Command::Mu { set, input } => run_mu(f, set, input.as_deref()),
        Command::StrongTree { input } => run_strong_tree(f, input.as_deref()),
        Command::UmodTree { fast, generic, input } => run_umod_tree(f, *fast, *generic, input.as_deref()),
        Command::Seidel { pivot, input } => run_seidel(f, *pivot, input.as_deref()),
        Command::Check { input } => run_check(f, input.as_deref()),
        Command::Tournament { action } => run_tournament(f, action),
        Command::Bench { sizes, seed, strong_limit } => run_bench(sizes, *seed, *strong_limit),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(mut out) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", json_string(&failure.to_json()));
            ExitCode::from(failure.exit_code())
        }
    }
}
