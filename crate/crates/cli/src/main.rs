mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use drd_core::enumeration::{self, Population};
use drd_core::families::{self, BicyclicShape};
use drd_core::io::{parse_edge_list, write_edge_list};
use drd_core::resistance::invariants;
use drd_core::transforms::{CycleSelector, TransformOp};
use drd_core::verify::{self, LemmaConfig};
use drd_core::{BicyclicClass, Graph};

use output::{Cell, Format, Output};

/// Exact resistance-distance invariants of graphs and extremal checks for
/// bicyclic graphs.
#[derive(Parser, Debug)]
#[command(name = "drd", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Add a decimal rendering with this many digits next to every exact value.
    #[arg(long, global = true)]
    decimal: Option<usize>,
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants of a graph given as an edge-list file.
    Compute { file: PathBuf },
    /// Build a family member and compare it with its closed form.
    Family {
        #[arg(long = "type", value_enum, ignore_case = true)]
        kind: FamilyKind,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// JSON shape description (type B).
        #[arg(long)]
        shape: Option<PathBuf>,
        /// Also write the built graph as an edge list.
        #[arg(long)]
        edges_out: Option<PathBuf>,
    },
    /// Apply a graph surgery and compare degree resistance distance.
    Transform {
        file: PathBuf,
        #[arg(long, value_enum)]
        op: OpKind,
        #[arg(long)]
        v: Option<usize>,
        #[arg(long)]
        u: Option<usize>,
        #[arg(long)]
        w: Option<usize>,
        /// Edge to delete, as `a,b`.
        #[arg(long, value_parser = parse_edge)]
        remove: Option<(usize, usize)>,
        /// Edge to insert, as `a,b`.
        #[arg(long, value_parser = parse_edge)]
        add: Option<(usize, usize)>,
        /// Joining-path edge `keep,gone` to contract.
        #[arg(long, value_parser = parse_edge)]
        edge: Option<(usize, usize)>,
        /// A vertex on the cycle to shrink.
        #[arg(long)]
        cycle: Option<usize>,
        #[arg(long)]
        edges_out: Option<PathBuf>,
    },
    /// Run a verification suite; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Vertex count for the extremal suite (default: 5, 6 and 7).
        #[arg(long)]
        n: Option<usize>,
        /// Configurations per surgery campaign.
        #[arg(long)]
        instances: Option<usize>,
    },
    /// Exhaustive extremal search over all bicyclic graphs on n vertices.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = PopulationArg::TwoCycle)]
        population: PopulationArg,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Permit n = 9.
        #[arg(long)]
        large: bool,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FamilyKind {
    S,
    P,
    B,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OpKind {
    Sigma,
    Pi,
    Relocate,
    Rewire,
    Contract,
    Shrink,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    Lemmas,
    Theorems,
    ClosedForms,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum PopulationArg {
    TwoCycle,
    All,
}

impl From<PopulationArg> for Population {
    fn from(p: PopulationArg) -> Self {
        match p {
            PopulationArg::TwoCycle => Population::TwoCyclesOnly,
            PopulationArg::All => Population::AllBicyclic,
        }
    }
}

fn parse_edge(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once([',', '-'])
        .ok_or_else(|| format!("expected an edge `a,b`, got {s:?}"))?;
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("bad vertex index {x:?}"))
    };
    Ok((num(a)?, num(b)?))
}

/// Input or usage problem; reported with exit code 2.
#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

/// Whether every assertion of the run held.
type RunResult = Result<bool, InputError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output {
        format: cli.format,
        path: cli.out.clone(),
        decimal: cli.decimal,
    };
    match run(&cli, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(msg)) => {
            eprintln!("drd: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, out: &Output) -> RunResult {
    match &cli.command {
        Command::Compute { file } => compute(file, out),
        Command::Family {
            kind,
            n,
            p,
            q,
            m,
            shape,
            edges_out,
        } => family(
            *kind,
            (*n, *p, *q, *m),
            shape.as_deref(),
            edges_out.as_deref(),
            out,
        ),
        Command::Transform {
            file,
            op,
            v,
            u,
            w,
            remove,
            add,
            edge,
            cycle,
            edges_out,
        } => {
            let need = |x: Option<usize>, flag: &str| {
                x.ok_or_else(|| InputError(format!("--op requires --{flag}")))
            };
            let need_edge = |x: Option<(usize, usize)>, flag: &str| {
                x.ok_or_else(|| InputError(format!("--op requires --{flag}")))
            };
            let op = match op {
                OpKind::Sigma => TransformOp::Sigma { v: need(*v, "v")? },
                OpKind::Pi => TransformOp::Pi { v: need(*v, "v")? },
                OpKind::Relocate => TransformOp::Relocate {
                    u: need(*u, "u")?,
                    w: need(*w, "w")?,
                },
                OpKind::Rewire => TransformOp::Rewire {
                    remove: need_edge(*remove, "remove")?,
                    add: need_edge(*add, "add")?,
                },
                OpKind::Contract => TransformOp::Contract {
                    edge: need_edge(*edge, "edge")?,
                },
                OpKind::Shrink => TransformOp::Shrink {
                    cycle: CycleSelector::Containing(need(*cycle, "cycle")?),
                },
            };
            transform(file, op, edges_out.as_deref(), out)
        }
        Command::Verify {
            suite,
            n,
            instances,
        } => match suite {
            Suite::Lemmas => verify_lemmas(cli.seed, *instances, out),
            Suite::Theorems => verify_theorems(*n, out),
            Suite::ClosedForms => verify_closed_forms(out),
        },
        Command::Enumerate {
            n,
            population,
            jobs,
            large,
        } => enumerate(*n, (*population).into(), *jobs, *large, out),
    }
}

fn read_graph(path: &Path) -> Result<Graph, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn class_label(class: BicyclicClass) -> String {
    match class {
        BicyclicClass::NotBicyclic => "not-bicyclic".to_string(),
        BicyclicClass::Theta => "theta".to_string(),
        BicyclicClass::TwoCycles { p, q, path_len } => format!("two-cycles({p},{q},{path_len})"),
    }
}

fn compute(file: &Path, out: &Output) -> RunResult {
    let g = read_graph(file)?;
    let inv = invariants(&g)?;
    let class = class_label(g.classify_bicyclic());
    match out.format {
        Format::Json => {
            let per_vertex: Vec<Value> = inv
                .per_vertex
                .iter()
                .enumerate()
                .map(|(v, s)| json!({ "vertex": v, "kf": s.kf, "dv": s.dv }))
                .collect();
            out.json(&json!({
                "n": g.n(),
                "m": g.m(),
                "class": class,
                "wiener": inv.wiener,
                "kirchhoff": inv.kirchhoff,
                "degree_distance": inv.degree_distance,
                "degree_resistance": inv.degree_resistance,
                "per_vertex": per_vertex,
            }))?;
        }
        Format::Csv => out.csv(
            &[
                "n",
                "m",
                "class",
                "wiener",
                "kirchhoff",
                "degree_distance",
                "degree_resistance",
            ],
            &[vec![
                Cell::from(g.n()),
                Cell::from(g.m()),
                Cell::Text(class),
                Cell::Exact(inv.wiener),
                Cell::Exact(inv.kirchhoff),
                Cell::Exact(inv.degree_distance),
                Cell::Exact(inv.degree_resistance),
            ]],
        )?,
    }
    Ok(true)
}

type Params = (Option<usize>, Option<usize>, Option<usize>, Option<usize>);

fn family(
    kind: FamilyKind,
    params: Params,
    shape: Option<&Path>,
    edges_out: Option<&Path>,
    out: &Output,
) -> RunResult {
    let (n, p, q, m) = params;
    let missing = |flag: &str| InputError(format!("--type {kind:?} requires --{flag}"));
    let (g, n, p, q, m, forms) = match kind {
        FamilyKind::S | FamilyKind::P => {
            let (n, p, q) = (
                n.ok_or_else(|| missing("n"))?,
                p.ok_or_else(|| missing("p"))?,
                q.ok_or_else(|| missing("q"))?,
            );
            let path = (n + 1).saturating_sub(p + q);
            let implied = if matches!(kind, FamilyKind::S) {
                0
            } else {
                path
            };
            if let Some(m) = m.filter(|&m| m != implied) {
                return Err(InputError(format!("--m {m} conflicts with the family, which has a joining path of length {implied}")));
            }
            let g = match kind {
                FamilyKind::S => families::make_s(n, p, q)?,
                _ => families::make_p(n, p, q)?,
            };
            (g, n, p, q, implied, Some(kind))
        }
        FamilyKind::B => {
            let shape: BicyclicShape = match shape {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
                    serde_json::from_str(&text)
                        .map_err(|e| InputError(format!("{}: {e}", path.display())))?
                }
                None => BicyclicShape {
                    p: p.ok_or_else(|| missing("p or --shape"))?,
                    q: q.ok_or_else(|| missing("q or --shape"))?,
                    m: m.ok_or_else(|| missing("m or --shape"))?,
                    attachments: vec![],
                },
            };
            let g = families::make_b(&shape)?;
            if let Some(n) = n.filter(|&n| n != g.n()) {
                return Err(InputError(format!(
                    "--n {n} conflicts with the shape, which has {} vertices",
                    g.n()
                )));
            }
            (g.clone(), g.n(), shape.p, shape.q, shape.m, None)
        }
    };
    let dr = invariants(&g)?.degree_resistance;
    let mut report = json!({
        "type": format!("{kind:?}"),
        "n": n, "p": p, "q": q, "m": m,
        "graph": g,
        "class": class_label(g.classify_bicyclic()),
        "degree_resistance": dr,
    });
    let mut ok = true;
    let mut closed = None;
    match forms {
        Some(FamilyKind::S) => {
            let form = families::closed_form_s(n, p, q)?;
            ok &= form == dr;
            report["closed_form"] = json!(form);
            closed = Some(form);
        }
        Some(FamilyKind::P) => {
            let form = families::closed_form_p(n, p, q)?;
            ok &= form.raw == dr;
            report["closed_form"] = json!(form.raw);
            report["printed_substituted"] = json!(form.printed_substituted);
            report["printed_substituted_matches"] = json!(form.printed_substituted == dr);
            closed = Some(form.raw);
        }
        _ => {}
    }
    if closed.is_some() {
        report["closed_form_matches"] = json!(ok);
    }
    if p == 3 && q == 3 && n >= 5 {
        let extreme = match forms {
            Some(FamilyKind::S) => Some(families::closed_form_s33(n)?),
            Some(FamilyKind::P) => Some(families::closed_form_p33(n)?),
            _ => None,
        };
        if let Some(e) = extreme {
            ok &= e == dr;
            report["extremal_closed_form"] = json!(e);
        }
    }
    if let Some(path) = edges_out {
        fs::write(path, write_edge_list(&g))
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
    }
    match out.format {
        Format::Json => out.json(&report)?,
        Format::Csv => out.csv(
            &[
                "type",
                "n",
                "p",
                "q",
                "m",
                "degree_resistance",
                "closed_form",
                "closed_form_matches",
            ],
            &[vec![
                Cell::Text(format!("{kind:?}")),
                Cell::from(n),
                Cell::from(p),
                Cell::from(q),
                Cell::from(m),
                Cell::Exact(dr),
                closed.map_or(Cell::Text(String::new()), Cell::Exact),
                Cell::Text(ok.to_string()),
            ]],
        )?,
    }
    Ok(ok)
}

fn transform(file: &Path, op: TransformOp, edges_out: Option<&Path>, out: &Output) -> RunResult {
    let g = read_graph(file)?;
    let outcome = op.outcome(&g)?;
    if let Some(path) = edges_out {
        fs::write(path, write_edge_list(&outcome.after))
            .map_err(|e| InputError(format!("cannot write {}: {e}", path.display())))?;
    }
    match out.format {
        Format::Json => {
            let mut v = serde_json::to_value(&outcome)?;
            v["op"] = json!(op.name());
            out.json(&v)?;
        }
        Format::Csv => out.csv(
            &["op", "dr_before", "dr_after", "direction"],
            &[vec![
                Cell::Text(op.name().to_string()),
                Cell::Exact(outcome.dr_before.clone()),
                Cell::Exact(outcome.dr_after.clone()),
                Cell::Text(format!("{:?}", outcome.direction).to_lowercase()),
            ]],
        )?,
    }
    Ok(true)
}

fn suite_rows(suites: &[verify::SuiteReport]) -> Vec<Vec<Cell>> {
    suites
        .iter()
        .map(|s| {
            vec![
                Cell::Text(s.name.clone()),
                Cell::Text(s.informational.to_string()),
                Cell::from(s.checked),
                Cell::from(s.strict),
                Cell::from(s.equal),
                Cell::Text(s.passed.to_string()),
            ]
        })
        .collect()
}

const SUITE_HEADER: [&str; 6] = [
    "suite",
    "informational",
    "checked",
    "strict",
    "equal",
    "passed",
];

fn verify_lemmas(seed: u64, instances: Option<usize>, out: &Output) -> RunResult {
    let mut config = LemmaConfig::default();
    if let Some(k) = instances {
        config.instances = k;
    }
    let report = verify::verify_lemmas(&config, seed);
    match out.format {
        Format::Json => {
            out.json(&json!({ "seed": seed, "passed": report.passed(), "suites": report.suites }))?
        }
        Format::Csv => out.csv(&SUITE_HEADER, &suite_rows(&report.suites))?,
    }
    Ok(report.passed())
}

fn verify_closed_forms(out: &Output) -> RunResult {
    let report = verify::verify_closed_forms(30);
    match out.format {
        Format::Json => out.json(&json!({
            "passed": report.passed(),
            "suites": report.suites,
            "printed_mismatch": report.printed_mismatch,
        }))?,
        Format::Csv => out.csv(&SUITE_HEADER, &suite_rows(&report.suites))?,
    }
    Ok(report.passed())
}

fn verify_theorems(n: Option<usize>, out: &Output) -> RunResult {
    let sizes: Vec<usize> = match n {
        Some(n) => vec![n],
        None => vec![5, 6, 7],
    };
    let mut runs = Vec::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for n in sizes {
        eprintln!("drd: enumerating two-cycle bicyclic graphs on {n} vertices");
        let survey = enumeration::survey(n, Population::TwoCyclesOnly, 1, false)?;
        let global = enumeration::extremal_report(&survey);
        ok &= global.passed();
        rows.push(vec![
            Cell::from(n),
            Cell::Text("global".into()),
            Cell::Text("3".into()),
            Cell::Text("3".into()),
            Cell::Exact(global.min_value.clone()),
            Cell::Exact(global.max_value.clone()),
            Cell::Text(global.passed().to_string()),
        ]);
        let mut within = Vec::new();
        for (p, q) in enumeration::feasible_classes(n) {
            let r = enumeration::within_class_report(&survey, p, q)?;
            ok &= r.passed();
            rows.push(vec![
                Cell::from(n),
                Cell::Text("class".into()),
                Cell::from(p),
                Cell::from(q),
                Cell::Exact(r.min_value.clone()),
                Cell::Exact(r.max_value.clone()),
                Cell::Text(r.passed().to_string()),
            ]);
            within.push(r);
        }
        runs.push(json!({ "n": n, "extremal": global, "extremal_passed": global.passed(), "within_class": within }));
    }
    match out.format {
        Format::Json => out.json(&json!({ "passed": ok, "runs": runs }))?,
        Format::Csv => out.csv(&["n", "scope", "p", "q", "min", "max", "passed"], &rows)?,
    }
    Ok(ok)
}

fn enumerate(
    n: usize,
    population: Population,
    jobs: usize,
    large: bool,
    out: &Output,
) -> RunResult {
    eprintln!(
        "drd: enumerating {} bicyclic graphs on {n} vertices with {jobs} worker(s)",
        population.label()
    );
    let report = enumeration::extremal_search(n, population, jobs, large)?;
    eprintln!(
        "drd: {} labeled graphs in {} isomorphism classes",
        report.count_labeled, report.count_iso_classes
    );
    let mut v = serde_json::to_value(&report)?;
    v["passed"] = json!(report.passed());
    match out.format {
        Format::Json => out.json(&v)?,
        Format::Csv => out.csv(
            &[
                "n",
                "population",
                "count",
                "min",
                "max",
                "agrees_min",
                "agrees_max",
            ],
            &[vec![
                Cell::from(n),
                Cell::Text(population.label().to_string()),
                Cell::from(report.count_labeled as usize),
                Cell::Exact(report.min_value.clone()),
                Cell::Exact(report.max_value.clone()),
                Cell::Text(report.agrees_min.to_string()),
                Cell::Text(report.agrees_max.to_string()),
            ]],
        )?,
    }
    // theta-type graphs sit outside the extremal claims; that search only reports
    Ok(population == Population::AllBicyclic || report.passed())
}
