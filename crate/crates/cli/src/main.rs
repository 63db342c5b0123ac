//! Command-line front end for the lobster constructions.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use antimagic::generator::{random_lobster, LegProfile};
use antimagic::io::{
    emit_dot, emit_labeling, marked_path_document, parse_labeling, parse_tree, NamedTree,
};
use antimagic::lobster::{construct_lobster, orient_lobster};
use antimagic::oracle::{
    brute_force_antimagic_orientation, enumerate_lobsters, Budget, SearchOutcome,
    ENUMERATION_MAX_VERTICES, EXHAUSTIVE_MAX_EDGES,
};
use antimagic::taxonomy::{classify, decompose, find_spine, TreeClass};
use antimagic::verify::{verify_antimagic, verify_band_structure};
use antimagic::{Error, Tree};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_UNSUPPORTED: u8 = 3;

const FIGURE1_MARKED: [&[usize]; 4] = [
    &[3, 4, 7, 9, 10, 11],
    &[4, 5, 7, 8, 11],
    &[3, 5, 6, 7, 10],
    &[4, 5, 6, 7, 10],
];

#[derive(Parser)]
#[command(name = "antimagic", version, about = "Antimagic orientations of lobsters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the tree family and its spine decomposition.
    Classify { file: PathBuf },
    /// Print an antimagic orientation of a path, caterpillar or lobster.
    Orient {
        file: PathBuf,
        /// Emit a JSON labeling document.
        #[arg(long, conflicts_with = "dot")]
        json: bool,
        /// Emit DOT.
        #[arg(long)]
        dot: bool,
        /// Check the result and exit 1 if it is not antimagic.
        #[arg(long)]
        verify: bool,
    },
    /// Check a JSON labeling document; exit 0 iff it is antimagic.
    Verify { file: PathBuf },
    /// Construct and verify seeded random lobsters.
    Fuzz {
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Largest spine length; each instance draws its own from 2 up to this.
        #[arg(long, default_value_t = 20)]
        spine: usize,
        #[arg(long, env = "ANTIMAGIC_SEED", default_value_t = 0)]
        seed: u64,
    },
    /// Construct and verify every lobster up to a vertex count.
    Enumerate {
        #[arg(long)]
        max_n: usize,
        /// Also search each tree exhaustively for a witness.
        #[arg(long)]
        oracle: bool,
    },
    /// Built-in examples.
    Demo {
        #[arg(value_enum)]
        which: Demo,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Demo {
    Figure1,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotLobster(_) => EXIT_UNSUPPORTED,
            Error::Internal(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_tree(path: &Path) -> Result<NamedTree, Failure> {
    Ok(parse_tree(&read(path)?)?)
}

fn names_of(t: &NamedTree, vs: &[usize]) -> String {
    let parts: Vec<&str> = vs.iter().map(|&v| t.names[v].as_str()).collect();
    format!("[{}]", parts.join(", "))
}

fn classify_cmd(file: &Path) -> CmdResult {
    let t = load_tree(file)?;
    let class = classify(&t.tree);
    println!("class: {class}");
    println!("vertices: {}", t.tree.vertex_count());
    let spine = find_spine(&t.tree);
    println!("spine: {}", names_of(&t, &spine));
    if matches!(class, TreeClass::Caterpillar | TreeClass::Lobster) {
        let d = decompose(&t.tree, &spine)?;
        println!("spine edges: {}", d.p());
        println!("U: {}", names_of(&t, &d.u_vertices()));
        println!("X: {}", names_of(&t, &d.x));
        println!("X1: {}", names_of(&t, &d.x1));
        println!("Y: {}", names_of(&t, &d.y));
    }
    if class == TreeClass::Other {
        return Ok(ExitCode::from(EXIT_UNSUPPORTED));
    }
    Ok(ExitCode::SUCCESS)
}

fn orient_cmd(file: &Path, json: bool, dot: bool, verify: bool) -> CmdResult {
    let t = load_tree(file)?;
    let d = orient_lobster(&t.tree)?;
    let report = verify_antimagic(&d);
    let bands = band_verdict(&t.tree);
    if json {
        let mut doc = emit_labeling(&d, &t.names, &report)?;
        if let Some(ok) = bands {
            doc = doc.with_verdict("band_structure", ok);
        }
        print!("{}", doc.to_json());
    } else if dot {
        print!("{}", emit_dot(&d, &t.names)?);
    } else {
        for a in d.arcs() {
            println!("{} -> {} {}", t.names[a.tail], t.names[a.head], a.label);
        }
    }
    if verify {
        let ok = report.is_antimagic() && bands != Some(false);
        eprintln!("antimagic: {}", report.is_antimagic());
        if let Some(b) = bands {
            eprintln!("band structure: {b}");
        }
        if !ok {
            return Ok(ExitCode::from(EXIT_VERIFY));
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Band check for trees built by the lobster construction, `None` otherwise.
fn band_verdict(tree: &Tree) -> Option<bool> {
    if !matches!(classify(tree), TreeClass::Caterpillar | TreeClass::Lobster) {
        return None;
    }
    let c = construct_lobster(tree).ok()?;
    Some(verify_band_structure(&c.labeling, &c.decomposition, &c.plan).passes())
}

fn verify_cmd(file: &Path) -> CmdResult {
    let (d, names, doc) = parse_labeling(&read(file)?)?;
    let report = verify_antimagic(&d);
    println!("well formed: {}", report.well_formed);
    println!("bijective: {}", report.bijective);
    for &(u, v) in &report.collisions {
        println!("collision: {} and {} both sum to {}", names[u], names[v], report.sums[u]);
    }
    if report.well_formed {
        let stale: Vec<&String> = names
            .iter()
            .enumerate()
            .filter(|(v, n)| doc.vertex_sums.get(*n).is_some_and(|&s| s != report.sums[*v]))
            .map(|(_, n)| n)
            .collect();
        for n in stale {
            println!("recorded sum of {n} is wrong");
        }
    }
    println!("antimagic: {}", report.is_antimagic());
    Ok(if report.is_antimagic() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

#[derive(Serialize)]
struct Instance {
    seed: u64,
    spine: usize,
    edges: usize,
    ok: bool,
    detail: String,
}

fn check_tree(tree: &Tree) -> (bool, String) {
    match orient_lobster(tree) {
        Err(e) => (false, e.to_string()),
        Ok(d) => {
            let r = verify_antimagic(&d);
            if !r.is_antimagic() {
                return (false, format!("{} collisions", r.collisions.len()));
            }
            match band_verdict(tree) {
                Some(false) => (false, "band structure violated".into()),
                _ => (true, String::new()),
            }
        }
    }
}

fn fuzz_cmd(count: usize, spine: usize, seed: u64) -> CmdResult {
    if spine < 2 {
        return Err(Error::Domain("--spine must be at least 2".into()).into());
    }
    let results: Vec<Instance> = (0..count as u64)
        .into_par_iter()
        .map(|i| {
            let s = seed.wrapping_add(i);
            let p = 2 + (s % (spine as u64 - 1)) as usize;
            match random_lobster(p, LegProfile::default(), s) {
                Err(e) => Instance {
                    seed: s,
                    spine: p,
                    edges: 0,
                    ok: false,
                    detail: e.to_string(),
                },
                Ok(t) => {
                    let (ok, detail) = check_tree(&t);
                    Instance {
                        seed: s,
                        spine: p,
                        edges: t.edge_count(),
                        ok,
                        detail,
                    }
                }
            }
        })
        .collect();
    let failures: Vec<&Instance> = results.iter().filter(|r| !r.ok).collect();
    for f in &failures {
        println!("FAIL seed={} spine={} edges={}: {}", f.seed, f.spine, f.edges, f.detail);
    }
    let max_edges = results.iter().map(|r| r.edges).max().unwrap_or(0);
    println!(
        "{} instances, {} failures, largest m = {max_edges}",
        results.len(),
        failures.len()
    );
    Ok(if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

fn enumerate_cmd(max_n: usize, oracle: bool) -> CmdResult {
    if max_n == 0 || max_n > ENUMERATION_MAX_VERTICES {
        return Err(Error::Domain(format!(
            "--max-n must be in 1..={ENUMERATION_MAX_VERTICES}"
        ))
        .into());
    }
    let mut failed = 0;
    for n in 1..=max_n {
        let lobsters = enumerate_lobsters(n)?;
        let rows: Vec<(bool, String, Option<bool>)> = lobsters
            .par_iter()
            .map(|t| {
                let (ok, detail) = check_tree(t);
                let witness = (oracle && t.edge_count() <= EXHAUSTIVE_MAX_EDGES).then(|| {
                    matches!(
                        brute_force_antimagic_orientation(t, Budget::Exhaustive),
                        Ok(SearchOutcome::Found(_))
                    )
                });
                (ok, detail, witness)
            })
            .collect();
        let bad = rows.iter().filter(|r| !r.0 || r.2 == Some(false)).count();
        for (t, (ok, detail, witness)) in lobsters.iter().zip(&rows) {
            if !ok || *witness == Some(false) {
                println!("FAIL {:?}: {detail} oracle={witness:?}", t.edges());
            }
        }
        let oracle_note = if oracle { ", oracle checked" } else { "" };
        println!("n={n}: {} lobsters, {bad} failures{oracle_note}", lobsters.len());
        failed += bad;
    }
    Ok(if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VERIFY)
    })
}

#[derive(Serialize)]
struct Panel {
    m: usize,
    marked: Vec<usize>,
    labeling: antimagic::io::LabelingDocument,
}

fn demo_cmd(which: Demo) -> CmdResult {
    match which {
        Demo::Figure1 => {
            let mut panels = Vec::new();
            for h in FIGURE1_MARKED {
                panels.push(Panel {
                    m: 13,
                    marked: h.to_vec(),
                    labeling: marked_path_document(13, h)?,
                });
            }
            let ok = panels
                .iter()
                .all(|p| p.labeling.verdicts.values().all(|&v| v));
            println!(
                "{}",
                serde_json::to_string_pretty(&panels).expect("panels serialise")
            );
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            })
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    match cli.command {
        Command::Classify { file } => classify_cmd(&file),
        Command::Orient {
            file,
            json,
            dot,
            verify,
        } => orient_cmd(&file, json, dot, verify),
        Command::Verify { file } => verify_cmd(&file),
        Command::Fuzz { count, spine, seed } => fuzz_cmd(count, spine, seed),
        Command::Enumerate { max_n, oracle } => enumerate_cmd(max_n, oracle),
        Command::Demo { which } => demo_cmd(which),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

