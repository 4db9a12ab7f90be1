use std::fmt::Write as _;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use quiver_rpp::arquiver::ArQuiver;
use quiver_rpp::bijection::{RppBijection, TraceStep};
use quiver_rpp::dynamics::{admissible_labeling, check_periodicity, trajectory};
use quiver_rpp::dynkin::{DynkinDiagram, Family};
use quiver_rpp::genfun::verify_identity;
use quiver_rpp::jordan::JordanEngine;
use quiver_rpp::poset::{Bound, MinusculePoset, Rpp};
use quiver_rpp::quiver::{Quiver, RepClass};
use quiver_rpp::typea::{hg_extract, hg_insert, pak_map, Grid, GridLayout, RectShape};
use quiver_rpp::verify;

#[derive(Parser)]
#[command(
    name = "qrpp",
    version,
    about = "Reverse plane partitions from Dynkin quiver representations"
)]
struct Cli {
    /// Emit structured JSON instead of human-readable text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

/// A quiver and a minuscule vertex.
#[derive(Args)]
struct Target {
    /// Oriented quiver, e.g. `A5:1<2<3<4<5` or `D4:2>1,3>2,4>2`; a bare diagram is oriented descending.
    #[arg(long)]
    quiver: String,
    /// Minuscule vertex, 1-based.
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots, Coxeter number and minuscule vertices of a diagram.
    Roots {
        /// Diagram such as `A4`, `D5`, `E6`, `E7`.
        diagram: String,
    },
    /// Knit the Auslander-Reiten quiver.
    ArQuiver {
        #[arg(long)]
        quiver: String,
        /// Print only a `source target` edge list.
        #[arg(long)]
        edges: bool,
    },
    /// The minuscule poset of a quiver at a vertex.
    Poset(Target),
    /// Map a representation to its reverse plane partition.
    ToRpp {
        #[command(flatten)]
        target: Target,
        /// Representation as `dimvec:multiplicity,...`.
        #[arg(long)]
        rep: String,
        /// Print the filling after every step.
        #[arg(long)]
        trace: bool,
    },
    /// Map a reverse plane partition back to a representation.
    FromRpp {
        #[command(flatten)]
        target: Target,
        /// Filling as `name:value,...`, optionally prefixed by `bound=N;`.
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        rpp: Option<String>,
        /// Type A only: row-major grid such as `0 2 3/2 2 3/6 8 10`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Jordan data of a generic nilpotent endomorphism.
    Jordan {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        rep: String,
        /// Compare the derived filling with the bijection.
        #[arg(long)]
        check_bijection: bool,
    },
    /// Hillman-Grassl: extract rim hooks from a grid, or insert them into one.
    Hg {
        #[arg(long, conflicts_with_all = ["rep", "shape"], required_unless_present = "rep")]
        grid: Option<String>,
        /// Rim hooks as dimension vectors with multiplicities.
        #[arg(long, requires = "shape")]
        rep: Option<String>,
        /// Rectangle as `ROWSxCOLS`.
        #[arg(long)]
        shape: Option<String>,
    },
    /// Pak's map from rim hooks to a grid.
    Pak {
        #[arg(long)]
        rep: String,
        /// Rectangle as `ROWSxCOLS`.
        #[arg(long)]
        shape: String,
    },
    /// Iterate promotion on a bounded filling.
    Promotion {
        #[command(flatten)]
        target: Target,
        /// Upper bound on every entry.
        #[arg(long)]
        bound: u64,
        /// Starting filling; random when omitted.
        #[arg(long)]
        rpp: Option<String>,
        /// Number of steps; defaults to the Coxeter number.
        #[arg(long)]
        steps: Option<usize>,
        /// Also test periodicity on random fillings.
        #[arg(long)]
        check_period: bool,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
    /// Compare the product formula with counts of fillings.
    VerifyGenfun {
        /// `QUIVER,M`, e.g. `A3,2`.
        #[arg(long)]
        poset: String,
        #[arg(long)]
        bound: usize,
        /// Skip direct enumeration.
        #[arg(long)]
        no_enumerate: bool,
        /// Also count images of the bijection.
        #[arg(long)]
        bijection: bool,
    },
    /// Run the acceptance criteria.
    VerifyAll {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<u8>,
    },
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("invalid value for --{flag}: {msg}")]
    Usage { flag: &'static str, msg: String },
    #[error(transparent)]
    Data(#[from] quiver_rpp::Error),
}

type Res<T> = Result<T, Failure>;

/// What a command produced, in both output modes.
struct Report {
    text: String,
    json: Value,
    ok: bool,
}

impl Report {
    fn new(text: String, json: Value) -> Report {
        Report {
            text,
            json,
            ok: true,
        }
    }
}

fn flag<T>(flag: &'static str, s: &str) -> Res<T>
where
    T: FromStr,
    T::Err: std::fmt::Display,
{
    s.parse().map_err(|e: T::Err| Failure::Usage {
        flag,
        msg: e.to_string(),
    })
}

fn big(v: &BigInt) -> Value {
    i64::try_from(v)
        .map(Value::from)
        .unwrap_or_else(|_| Value::String(v.to_string()))
}

fn rep_json(rep: &RepClass) -> Value {
    let count = |c: &num_bigint::BigUint| {
        u64::try_from(c)
            .map(Value::from)
            .unwrap_or_else(|_| Value::String(c.to_string()))
    };
    Value::Object(
        rep.0
            .iter()
            .map(|(dv, c)| (dv.to_string(), count(c)))
            .collect(),
    )
}

fn rep_text(rep: &RepClass) -> String {
    if rep.is_zero() {
        "0".into()
    } else {
        rep.to_string()
    }
}

fn rpp_json(rpp: &Rpp, mp: &MinusculePoset) -> Value {
    let values: Map<String, Value> = rpp
        .values
        .iter()
        .enumerate()
        .map(|(x, v)| (mp.poset.name(x).to_string(), big(v)))
        .collect();
    json!({ "bound": rpp.bound.to_string(), "values": values, "weight": big(&rpp.weight()) })
}

fn aligned(grid: &Grid) -> String {
    let width = grid
        .data
        .iter()
        .map(|v| v.to_string().len())
        .max()
        .unwrap_or(1);
    let mut s = String::new();
    for r in 0..grid.rows {
        let row: Vec<String> = (0..grid.cols)
            .map(|c| format!("{:>width$}", grid.get(r, c).to_string()))
            .collect();
        let _ = writeln!(s, "  {}", row.join(" "));
    }
    s
}

fn parse_shape(s: &str) -> Res<RectShape> {
    let bad = || Failure::Usage {
        flag: "shape",
        msg: format!("expected ROWSxCOLS, got {s:?}"),
    };
    let (r, c) = s.split_once(['x', 'X']).ok_or_else(bad)?;
    let (r, c) = (
        r.trim().parse().map_err(|_| bad())?,
        c.trim().parse().map_err(|_| bad())?,
    );
    Ok(RectShape::new(r, c)?)
}

struct Setup {
    quiver: Quiver,
    bij: RppBijection,
    layout: Option<GridLayout>,
}

impl Setup {
    fn new(quiver: &str, m: usize) -> Res<Setup> {
        let quiver: Quiver = flag("quiver", quiver)?;
        if m == 0 || m > quiver.num_vertices() {
            return Err(Failure::Usage {
                flag: "m",
                msg: format!("vertex {m} out of range 1..={}", quiver.num_vertices()),
            });
        }
        let ar = ArQuiver::knit(&quiver)?;
        let bij = RppBijection::new(&ar, m - 1)?;
        let layout = match quiver.diagram().family() {
            Family::A => Some(GridLayout::new(bij.poset(), quiver.num_vertices())?),
            _ => None,
        };
        Ok(Setup {
            quiver,
            bij,
            layout,
        })
    }

    fn from_target(t: &Target) -> Res<Setup> {
        Setup::new(&t.quiver, t.m)
    }

    fn mp(&self) -> &MinusculePoset {
        self.bij.poset()
    }

    fn describe(&self, rpp: &Rpp, text: &mut String, json: &mut Value) {
        let _ = writeln!(text, "rpp {}", rpp.to_text(&self.mp().poset));
        let _ = writeln!(text, "weight {}", rpp.weight());
        json["rpp"] = rpp_json(rpp, self.mp());
        if let Some(layout) = &self.layout {
            let grid = layout.to_grid(rpp);
            let _ = writeln!(text, "grid {grid}");
            text.push_str(&aligned(&grid));
            json["grid"] = json!(grid.to_string());
        }
    }
}

fn roots(diagram: &str) -> Res<Report> {
    let d: DynkinDiagram = flag("diagram", diagram)?;
    let roots = d.positive_roots();
    let minuscule: Vec<usize> = d.minuscule_vertices().iter().map(|v| v + 1).collect();
    let mut text = format!(
        "diagram {d}\nrank {}\ncoxeter number {}\n",
        d.rank(),
        d.coxeter_number()
    );
    let mv: Vec<String> = minuscule.iter().map(|v| v.to_string()).collect();
    let _ = writeln!(text, "minuscule vertices {}", mv.join(" "));
    let _ = writeln!(text, "positive roots {}", roots.len());
    for r in &roots {
        let _ = writeln!(text, "  {r}");
    }
    let json = json!({
        "diagram": d.to_string(),
        "rank": d.rank(),
        "coxeter_number": d.coxeter_number(),
        "minuscule_vertices": minuscule,
        "positive_roots": roots.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    });
    Ok(Report::new(text, json))
}

fn ar_quiver(quiver: &str, edges: bool) -> Res<Report> {
    let q: Quiver = flag("quiver", quiver)?;
    let ar = ArQuiver::knit(&q)?;
    let text = if edges { ar.edge_list() } else { ar.to_text() };
    let nodes: Vec<Value> = ar
        .nodes()
        .iter()
        .map(|nd| json!({ "id": nd.id, "dims": nd.dims.to_string(), "orbit": nd.orbit + 1, "slice": nd.slice }))
        .collect();
    let tau: Vec<[usize; 2]> = (0..ar.len())
        .filter_map(|id| ar.tau(id).map(|t| [id, t]))
        .collect();
    let json =
        json!({ "quiver": q.to_string(), "nodes": nodes, "arrows": ar.arrows(), "tau": tau });
    Ok(Report::new(text, json))
}

fn poset(t: &Target) -> Res<Report> {
    let s = Setup::from_target(t)?;
    let mp = s.mp();
    let p = &mp.poset;
    let mut text = format!("quiver {} m {}\nelements {}\n", s.quiver, t.m, p.len());
    for (x, info) in mp.info.iter().enumerate() {
        let _ = writeln!(
            text,
            "  {} dim={} orbit={} pos={}",
            p.name(x),
            info.dim,
            info.orbit + 1,
            info.orbit_pos
        );
    }
    text.push_str("covers\n");
    for (lo, up) in p.covers() {
        let _ = writeln!(text, "  {} < {}", p.name(lo), p.name(up));
    }
    let mut json = json!({
        "quiver": s.quiver.to_string(),
        "m": t.m,
        "elements": mp.info.iter().enumerate().map(|(x, info)| json!({
            "name": p.name(x), "dim": info.dim, "orbit": info.orbit + 1, "orbit_pos": info.orbit_pos,
        })).collect::<Vec<_>>(),
        "covers": p.covers().iter().map(|&(a, b)| [p.name(a), p.name(b)]).collect::<Vec<_>>(),
    });
    if let Some(layout) = &s.layout {
        text.push_str("layout\n");
        let g = layout.shape;
        let rows: Vec<Vec<&str>> = (0..g.rows)
            .map(|r| {
                (0..g.cols)
                    .map(|c| p.name(layout.element_at(r, c)))
                    .collect()
            })
            .collect();
        for row in &rows {
            let _ = writeln!(text, "  {}", row.join(" "));
        }
        json["layout"] = json!(rows);
    }
    Ok(Report::new(text, json))
}

fn trace_json(step: &TraceStep, mp: &MinusculePoset, ar: &ArQuiver) -> Value {
    let filled: Map<String, Value> = step
        .values
        .iter()
        .enumerate()
        .filter_map(|(x, v)| v.as_ref().map(|v| (mp.poset.name(x).to_string(), big(v))))
        .collect();
    json!({
        "node": ar.node(step.node).dims.to_string(),
        "in_poset": step.element.is_some(),
        "toggled": step.toggled.iter().map(|&y| mp.poset.name(y)).collect::<Vec<_>>(),
        "values": filled,
    })
}

fn to_rpp(t: &Target, rep: &str, trace: bool, seed: u64) -> Res<Report> {
    let s = Setup::from_target(t)?;
    let rep: RepClass = flag("rep", rep)?;
    let (rpp, steps) = if trace {
        s.bij.trace(&rep, seed)?
    } else {
        (s.bij.to_rpp(&rep, seed)?, Vec::new())
    };
    let mut text = String::new();
    let mut json = json!({ "quiver": s.quiver.to_string(), "m": t.m, "rep": rep_json(&rep) });
    if trace {
        let mp = s.mp();
        let mut steps_json = Vec::new();
        for (k, step) in steps.iter().enumerate() {
            let filled: Vec<String> = step
                .values
                .iter()
                .enumerate()
                .filter_map(|(x, v)| v.as_ref().map(|v| format!("{}:{v}", mp.poset.name(x))))
                .collect();
            let toggled: Vec<&str> = step.toggled.iter().map(|&y| mp.poset.name(y)).collect();
            let _ = writeln!(
                text,
                "step {k} {}{} toggled [{}] {}",
                s.bij.ar().node(step.node).dims,
                if step.element.is_some() { "*" } else { "" },
                toggled.join(" "),
                if filled.is_empty() {
                    "-".to_string()
                } else {
                    filled.join(",")
                }
            );
            steps_json.push(trace_json(step, mp, s.bij.ar()));
        }
        json["trace"] = Value::Array(steps_json);
    }
    s.describe(&rpp, &mut text, &mut json);
    Ok(Report::new(text, json))
}

fn from_rpp(t: &Target, rpp: Option<&str>, grid: Option<&str>, seed: u64) -> Res<Report> {
    let s = Setup::from_target(t)?;
    let rpp = match (rpp, grid) {
        (Some(text), _) => Rpp::parse(&s.mp().poset, text).map_err(|e| Failure::Usage {
            flag: "rpp",
            msg: e.to_string(),
        })?,
        (None, Some(g)) => {
            let layout = s.layout.as_ref().ok_or_else(|| Failure::Usage {
                flag: "grid",
                msg: "grids are only defined in type A".into(),
            })?;
            let grid: Grid = flag("grid", g)?;
            layout.to_rpp(&grid, Bound::Unbounded)?
        }
        (None, None) => unreachable!("clap requires one of --rpp and --grid"),
    };
    let rep = s.bij.from_rpp(&rpp, seed)?;
    let text = format!("rep {}\n", rep_text(&rep));
    let json = json!({ "quiver": s.quiver.to_string(), "m": t.m, "rep": rep_json(&rep) });
    Ok(Report::new(text, json))
}

fn jordan(t: &Target, rep: &str, check: bool, seed: u64) -> Res<Report> {
    let s = Setup::from_target(t)?;
    let rep: RepClass = flag("rep", rep)?;
    let engine = JordanEngine::new(s.bij.ar(), t.m - 1, seed)?;
    let jd = engine.gen_jf(&rep, seed)?;
    let rpp = engine.jordan_to_rpp(&jd)?;
    let mut text = format!("jordan {jd}\n");
    let mut json = json!({ "quiver": s.quiver.to_string(), "m": t.m, "jordan": jd.0 });
    s.describe(&rpp, &mut text, &mut json);
    let mut ok = true;
    if check {
        let direct = s.bij.to_rpp(&rep, seed)?;
        ok = direct == rpp;
        let _ = writeln!(text, "bijection {}", if ok { "agrees" } else { "MISMATCH" });
        if !ok {
            let _ = writeln!(text, "bijection rpp {}", direct.to_text(&s.mp().poset));
        }
        json["bijection_agrees"] = json!(ok);
    }
    Ok(Report { text, json, ok })
}

fn grid_report(label: &str, grid: &Grid) -> Report {
    let text = format!("{label} {grid}\n{}", aligned(grid));
    Report::new(text, json!({ label: grid.to_string() }))
}

fn hg(grid: Option<&str>, rep: Option<&str>, shape: Option<&str>) -> Res<Report> {
    if let Some(g) = grid {
        let grid: Grid = flag("grid", g)?;
        let hooks = hg_extract(&grid)?;
        let text = format!("hooks {}\n", rep_text(&hooks));
        return Ok(Report::new(text, json!({ "hooks": rep_json(&hooks) })));
    }
    let rep: RepClass = flag("rep", rep.unwrap_or_default())?;
    let shape = parse_shape(shape.unwrap_or_default())?;
    Ok(grid_report("grid", &hg_insert(&rep, shape)?))
}

fn pak(rep: &str, shape: &str) -> Res<Report> {
    let rep: RepClass = flag("rep", rep)?;
    Ok(grid_report("grid", &pak_map(&rep, parse_shape(shape)?)?))
}

struct PromotionArgs<'a> {
    bound: u64,
    rpp: Option<&'a str>,
    steps: Option<usize>,
    check_period: bool,
    trials: usize,
}

fn promotion(t: &Target, a: PromotionArgs, seed: u64) -> Res<Report> {
    let s = Setup::from_target(t)?;
    let mp = s.mp();
    let bound = Bound::finite(a.bound);
    let start = match a.rpp {
        Some(text) => {
            let mut rpp = Rpp::parse(&mp.poset, text).map_err(|e| Failure::Usage {
                flag: "rpp",
                msg: e.to_string(),
            })?;
            rpp.bound = bound;
            rpp.validate(&mp.poset).map_err(|e| Failure::Usage {
                flag: "rpp",
                msg: e.to_string(),
            })?;
            rpp
        }
        None => Rpp::random(
            &mp.poset,
            a.bound,
            bound,
            &mut ChaCha8Rng::seed_from_u64(seed),
        ),
    };
    let h = s.quiver.diagram().coxeter_number();
    let labeling = admissible_labeling(&s.quiver);
    let path = trajectory(&start, mp, &labeling, a.steps.unwrap_or(h))?;
    let order: Vec<String> = labeling.iter().map(|v| (v + 1).to_string()).collect();
    let mut text = format!("coxeter number {h}\nlabeling {}\n", order.join(" "));
    for (k, rpp) in path.iter().enumerate() {
        let _ = writeln!(text, "{k} {}", rpp.to_text(&mp.poset));
    }
    let period = path.iter().skip(1).position(|r| *r == start).map(|p| p + 1);
    if let Some(p) = period {
        let _ = writeln!(text, "returns to start after {p} steps");
    }
    let mut json = json!({
        "quiver": s.quiver.to_string(),
        "m": t.m,
        "coxeter_number": h,
        "labeling": labeling.iter().map(|v| v + 1).collect::<Vec<_>>(),
        "trajectory": path.iter().map(|r| rpp_json(r, mp)).collect::<Vec<_>>(),
        "period": period,
    });
    let mut ok = true;
    if a.check_period {
        let report = check_periodicity(mp, &s.quiver, a.bound, a.trials, seed)?;
        ok = report.passed;
        let _ = writeln!(
            text,
            "periodicity {}: {} of {} trials fail after {} steps",
            if ok { "PASS" } else { "FAIL" },
            report.failures,
            report.trials,
            report.h
        );
        json["periodicity"] = json!({
            "passed": report.passed,
            "trials": report.trials,
            "failures": report.failures,
            "min_period": report.min_period,
        });
    }
    Ok(Report { text, json, ok })
}

fn join(coeffs: &[num_bigint::BigUint]) -> String {
    coeffs
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn verify_genfun(poset: &str, bound: usize, enumerate: bool, bijection: bool) -> Res<Report> {
    let (quiver, m) = poset.rsplit_once(',').ok_or_else(|| Failure::Usage {
        flag: "poset",
        msg: format!("expected QUIVER,M, got {poset:?}"),
    })?;
    let m: usize = flag("poset", m.trim())?;
    let s = Setup::new(quiver, m)?;
    let report = verify_identity(&s.bij, bound, enumerate, bijection)?;
    let mut text = format!("product {}\n", join(&report.product));
    let mut json = json!({
        "quiver": s.quiver.to_string(),
        "m": m,
        "bound": bound,
        "product": report.product.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "passed": report.passed,
    });
    for (label, counts) in [
        ("enumeration", &report.enumeration),
        ("bijection", &report.bijection),
    ] {
        if let Some(c) = counts {
            let _ = writeln!(text, "{label} {}", join(c));
            json[label] = json!(c.iter().map(|c| c.to_string()).collect::<Vec<_>>());
        }
    }
    text.push_str(if report.passed { "PASS\n" } else { "FAIL\n" });
    Ok(Report {
        text,
        json,
        ok: report.passed,
    })
}

fn verify_all(only: &[u8], seed: u64) -> Report {
    let ids: Vec<u8> = if only.is_empty() {
        verify::CRITERIA.iter().map(|&(id, _)| id).collect()
    } else {
        only.to_vec()
    };
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut passed = 0;
    for &id in &ids {
        let outcome = verify::run(id, seed);
        let _ = writeln!(text, "{outcome}");
        passed += outcome.passed as usize;
        rows.push(json!({
            "id": outcome.id,
            "name": outcome.name,
            "passed": outcome.passed,
            "detail": outcome.detail,
            "seconds": outcome.elapsed.as_secs_f64(),
        }));
    }
    let _ = writeln!(text, "{passed}/{} passed", ids.len());
    Report {
        text,
        json: json!({ "criteria": rows, "passed": passed, "total": ids.len() }),
        ok: passed == ids.len(),
    }
}

fn dispatch(command: &Command, seed: u64) -> Res<Report> {
    match command {
        Command::Roots { diagram } => roots(diagram),
        Command::ArQuiver { quiver, edges } => ar_quiver(quiver, *edges),
        Command::Poset(t) => poset(t),
        Command::ToRpp { target, rep, trace } => to_rpp(target, rep, *trace, seed),
        Command::FromRpp { target, rpp, grid } => {
            from_rpp(target, rpp.as_deref(), grid.as_deref(), seed)
        }
        Command::Jordan {
            target,
            rep,
            check_bijection,
        } => jordan(target, rep, *check_bijection, seed),
        Command::Hg { grid, rep, shape } => hg(grid.as_deref(), rep.as_deref(), shape.as_deref()),
        Command::Pak { rep, shape } => pak(rep, shape),
        Command::Promotion {
            target,
            bound,
            rpp,
            steps,
            check_period,
            trials,
        } => promotion(
            target,
            PromotionArgs {
                bound: *bound,
                rpp: rpp.as_deref(),
                steps: *steps,
                check_period: *check_period,
                trials: *trials,
            },
            seed,
        ),
        Command::VerifyGenfun {
            poset,
            bound,
            no_enumerate,
            bijection,
        } => verify_genfun(poset, *bound, !no_enumerate, *bijection),
        Command::VerifyAll { only } => Ok(verify_all(only, seed)),
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Roots { .. } => "roots",
        Command::ArQuiver { .. } => "ar-quiver",
        Command::Poset(_) => "poset",
        Command::ToRpp { .. } => "to-rpp",
        Command::FromRpp { .. } => "from-rpp",
        Command::Jordan { .. } => "jordan",
        Command::Hg { .. } => "hg",
        Command::Pak { .. } => "pak",
        Command::Promotion { .. } => "promotion",
        Command::VerifyGenfun { .. } => "verify-genfun",
        Command::VerifyAll { .. } => "verify-all",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = command_name(&cli.command);
    match dispatch(&cli.command, cli.seed) {
        Ok(report) => {
            if cli.json {
                let mut out = json!({ "command": name, "seed": cli.seed });
                if let (Value::Object(out), Value::Object(body)) = (&mut out, report.json) {
                    out.extend(body);
                }
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serializable")
                );
            } else {
                println!("# qrpp {name} seed={}", cli.seed);
                print!("{}", report.text);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
