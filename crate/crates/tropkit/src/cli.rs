//! Command-line surface: JSON/SVG emission and the embedded reproduction
//! report. Exit codes: 0 success, 1 precondition violation, 2 parse error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Deserialize;

use crate::curve::{tropical_curve, PlaneCurve};
use crate::error::{parse_err, Result, TropError};
use crate::fan::{
    adjunction_bound, fan_degree, fan_link, local_intersection, trivalent_approximable, FanCurve,
    FanPlane,
};
use crate::floor::{count_curves, enumerate_floor_diagrams};
use crate::graph::{
    curve_cohomology, elementary_modification, GraphPoint, MetricGraph,
};
use crate::intersect::stable_intersection;
use crate::json;
use crate::laurent::LaurentQ;
use crate::matroid::matroid_fan;
use crate::patchwork::{patchwork, twists_from_signs, SignDistribution, TwistSet};
use crate::poly2::{parse_poly1, parse_poly2};
use crate::rat::parse_rat;
use crate::semiring::dequantized_add;
use crate::svg;

#[derive(Parser)]
#[command(name = "tropkit", version, about = "Exact tropical plane-curve toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Roots (with orders) of a univariate tropical polynomial, e.g. "0 + x^2".
    Roots { poly: String },
    /// Factor a univariate tropical polynomial into linear pieces.
    Factor { poly: String },
    /// Dequantized sum "x +_t y" with its two-sided bound.
    Dequant {
        x: f64,
        y: f64,
        /// Quantization base t > 1.
        t: f64,
        /// Tolerance for the bound check.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Tropical plane curve of a bivariate polynomial, e.g. "0 + x + y".
    Curve {
        poly: String,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Dual subdivision of the Newton polygon.
    Subdivision { poly: String },
    /// Stable intersection of two plane curves.
    Intersect {
        poly1: String,
        poly2: String,
        /// Allow non-transverse input by perturbing one curve symbolically.
        #[arg(long)]
        perturb: bool,
    },
    /// Patchwork a non-singular curve from a twist set or a sign distribution.
    Patchwork {
        poly: String,
        /// Comma-separated bounded-edge indices to twist, e.g. "0,2".
        #[arg(long)]
        twists: Option<String>,
        /// JSON file with a sign distribution: [{"point":[i,j],"sign":1}, ...].
        #[arg(long, conflicts_with = "twists")]
        signs: Option<PathBuf>,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Floor diagrams and the curve counts they compute.
    Floor {
        #[command(subcommand)]
        cmd: FloorCmd,
    },
    /// Fan curves in a fan plane: degree, intersection numbers, adjunction.
    Fan {
        #[command(subcommand)]
        cmd: FanCmd,
    },
    /// Matroid fans: balancing and link of the origin.
    Matroid {
        #[command(subcommand)]
        cmd: MatroidCmd,
    },
    /// Metric graphs: genus, cohomology, elementary modification.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Recompute the embedded golden table; exits 0 iff everything matches.
    Reproduce {
        /// Report to reproduce (only "paper" is available).
        target: String,
    },
}

#[derive(Subcommand)]
enum FloorCmd {
    /// Quantum count G_{d,g} as a Laurent polynomial in q.
    Invariant { degree: usize, genus: i64 },
    /// Complex, real and quantum counts with per-diagram detail.
    Counts { degree: usize, genus: i64 },
    /// List the floor diagrams of the given degree and genus.
    Diagrams { degree: usize, genus: i64 },
}

#[derive(Subcommand)]
enum FanCmd {
    /// Degree of a fan curve (JSON file).
    Degree { curve: PathBuf },
    /// Local intersection number at the origin of two fan curves.
    Intersect {
        /// Ambient fan plane dimension n.
        #[arg(long)]
        plane: usize,
        curve1: PathBuf,
        curve2: PathBuf,
    },
    /// Left-hand side of the adjunction inequality.
    Adjunction {
        #[arg(long)]
        plane: usize,
        curve: PathBuf,
    },
    /// Whether the curve passes the trivalent approximability criterion.
    Approximable {
        #[arg(long)]
        plane: usize,
        curve: PathBuf,
    },
}

#[derive(Subcommand)]
enum MatroidCmd {
    /// Build the matroid fan, check balancing, optionally emit its link.
    Fan {
        matroid: PathBuf,
        /// Also report the link graph of the origin (degrees, girth).
        #[arg(long)]
        link: bool,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// First Betti number of a connected metric graph.
    Genus { file: PathBuf },
    /// Tropical Dolbeault cohomology dimensions h^{p,q}.
    Cohomology { file: PathBuf },
    /// Elementary modification: graft an infinite leaf at a point.
    Modify {
        file: PathBuf,
        /// Graft at this vertex.
        #[arg(long, conflicts_with = "edge")]
        vertex: Option<usize>,
        /// Graft on this edge (requires --at).
        #[arg(long, requires = "at")]
        edge: Option<usize>,
        /// Distance "p/q" from the edge's first endpoint.
        #[arg(long)]
        at: Option<String>,
    },
}

fn read_to_string(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| parse_err(format!("cannot read {}: {e}", path.display())))
}

fn read_json<T: for<'a> Deserialize<'a>>(path: &Path) -> Result<T> {
    let text = read_to_string(path)?;
    serde_json::from_str(&text)
        .map_err(|e| parse_err(format!("invalid JSON in {}: {e}", path.display())))
}

fn load_fan_curve(path: &Path) -> Result<FanCurve> {
    let j: json::FanCurveJson = read_json(path)?;
    json::fan_curve_from_json(&j)
}

fn load_graph(path: &Path) -> Result<MetricGraph> {
    let j: json::GraphJson = read_json(path)?;
    json::graph_from_json(&j)
}

fn write_svg(path: &Path, content: &str) -> Result<()> {
    std::fs::write(path, content)
        .map_err(|e| parse_err(format!("cannot write {}: {e}", path.display())))
}

fn print_line(s: impl std::fmt::Display) {
    // Tolerate a closed pipe (e.g. piping into `head`).
    use std::io::Write;
    let _ = writeln!(std::io::stdout(), "{s}");
}

fn print_json(v: &serde_json::Value) {
    print_line(serde_json::to_string_pretty(v).expect("serializable"));
}

#[derive(Deserialize)]
struct SignEntryJson {
    point: (i64, i64),
    sign: i8,
}

fn load_curve(poly: &str) -> Result<PlaneCurve> {
    tropical_curve(&parse_poly2(poly)?)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.cmd {
        Cmd::Roots { poly } => {
            let p = parse_poly1(&poly)?;
            print_json(&serde_json::to_value(json::roots_json(&p.roots())).expect("serializable"));
        }
        Cmd::Factor { poly } => {
            let p = parse_poly1(&poly)?;
            print_json(&json::factorization_json(&p.factor()));
        }
        Cmd::Dequant { x, y, t, tol } => {
            let sum = dequantized_add(x, y, t)?;
            let lower = x.max(y);
            let upper = lower + 2f64.ln() / t.ln();
            print_json(&serde_json::json!({
                "sum": sum,
                "lower_bound": lower,
                "upper_bound": upper,
                "within_bounds": sum >= lower - tol && sum <= upper + tol,
            }));
        }
        Cmd::Curve { poly, svg: svg_path } => {
            let c = load_curve(&poly)?;
            if let Some(path) = svg_path {
                write_svg(&path, &svg::curve_svg(&c))?;
            }
            let mut out = json::curve_json(&c);
            if c.is_nodal() {
                let profile = c.nodal_profile()?;
                let mults = c.curve_multiplicities()?;
                out["nodal"] = serde_json::json!({
                    "delta": profile.delta,
                    "genus": profile.genus,
                    "complex_multiplicity": mults.complex,
                    "real_multiplicity": mults.real,
                    "quantum_multiplicity": json::laurent_json(&mults.quantum),
                });
            }
            print_json(&out);
        }
        Cmd::Subdivision { poly } => {
            let c = load_curve(&poly)?;
            print_json(&json::subdivision_json(&c.subdivision));
        }
        Cmd::Intersect { poly1, poly2, perturb } => {
            let c1 = load_curve(&poly1)?;
            let c2 = load_curve(&poly2)?;
            print_json(&json::intersection_json(&stable_intersection(&c1, &c2, perturb)?));
        }
        Cmd::Patchwork { poly, twists, signs, svg: svg_path } => {
            let c = load_curve(&poly)?;
            let twist_set = if let Some(path) = signs {
                let entries: Vec<SignEntryJson> = read_json(&path)?;
                let dist = SignDistribution(
                    entries.into_iter().map(|e| (e.point, e.sign)).collect(),
                );
                twists_from_signs(&c, &dist)?
            } else if let Some(list) = twists {
                let mut set = std::collections::BTreeSet::new();
                for part in list.split(',').filter(|s| !s.is_empty()) {
                    set.insert(
                        part.trim()
                            .parse::<usize>()
                            .map_err(|_| parse_err(format!("bad edge index {part:?}")))?,
                    );
                }
                TwistSet(set)
            } else {
                TwistSet::empty()
            };
            let result = patchwork(&c, &twist_set)?;
            if let Some(path) = svg_path {
                write_svg(&path, &svg::patchwork_svg(&c, &result))?;
            }
            let mut out = json::patchwork_json(&result);
            out["twists"] =
                serde_json::to_value(twist_set.0.iter().collect::<Vec<_>>()).expect("serializable");
            print_json(&out);
        }
        Cmd::Floor { cmd } => match cmd {
            FloorCmd::Invariant { degree, genus } => {
                print_line(count_curves(degree, genus)?.quantum);
            }
            FloorCmd::Counts { degree, genus } => {
                let c = count_curves(degree, genus)?;
                print_json(&serde_json::json!({
                    "degree": c.degree,
                    "genus": c.genus,
                    "diagrams": c.diagrams,
                    "markings": c.per_diagram.iter().map(|(nu, _)| *nu as u64).collect::<Vec<_>>(),
                    "complex": c.complex,
                    "real": c.real,
                    "quantum": json::laurent_json(&c.quantum),
                }));
            }
            FloorCmd::Diagrams { degree, genus } => {
                let ds = enumerate_floor_diagrams(degree, genus)?;
                print_json(&serde_json::json!(ds
                    .iter()
                    .map(|d| serde_json::json!({
                        "edges": d.edges,
                        "legs": d.legs,
                        "markings": d.markings() as u64,
                    }))
                    .collect::<Vec<_>>()));
            }
        },
        Cmd::Fan { cmd } => match cmd {
            FanCmd::Degree { curve } => {
                print_line(fan_degree(&load_fan_curve(&curve)?)?);
            }
            FanCmd::Intersect { plane, curve1, curve2 } => {
                let p = FanPlane::new(plane)?;
                print_line(local_intersection(
                    &p,
                    &load_fan_curve(&curve1)?,
                    &load_fan_curve(&curve2)?,
                )?);
            }
            FanCmd::Adjunction { plane, curve } => {
                print_line(adjunction_bound(&FanPlane::new(plane)?, &load_fan_curve(&curve)?)?);
            }
            FanCmd::Approximable { plane, curve } => {
                print_line(trivalent_approximable(
                    &FanPlane::new(plane)?,
                    &load_fan_curve(&curve)?,
                )?);
            }
        },
        Cmd::Matroid { cmd } => match cmd {
            MatroidCmd::Fan { matroid, link } => {
                let j: json::MatroidJson = read_json(&matroid)?;
                let m = json::matroid_from_json(&j)?;
                let fan = matroid_fan(&m)?;
                let balanced = crate::fan::verify_balancing(&fan)?;
                let mut out = serde_json::json!({
                    "dim": fan.cones.iter().map(|c| c.generators.len()).max().unwrap_or(0),
                    "rays": fan.rays().len(),
                    "top_cones": fan.cones.iter()
                        .filter(|c| c.generators.len() == m.rank.saturating_sub(1))
                        .count(),
                    "balanced": balanced,
                });
                if link {
                    let l = fan_link(&fan)?;
                    out["link"] = serde_json::json!({
                        "vertices": l.degrees().len(),
                        "edges": l.edges.len(),
                        "degrees": l.degrees(),
                        "girth": l.girth(),
                    });
                }
                print_json(&out);
            }
        },
        Cmd::Graph { cmd } => match cmd {
            GraphCmd::Genus { file } => {
                print_line(load_graph(&file)?.genus()?);
            }
            GraphCmd::Cohomology { file } => {
                let c = curve_cohomology(&load_graph(&file)?)?;
                print_json(&serde_json::json!({
                    "h00": c.h00, "h01": c.h01, "h10": c.h10, "h11": c.h11,
                }));
            }
            GraphCmd::Modify { file, vertex, edge, at } => {
                let g = load_graph(&file)?;
                let point = match (vertex, edge) {
                    (Some(v), None) => GraphPoint::Vertex(v),
                    (None, Some(e)) => GraphPoint::OnEdge {
                        edge: e,
                        at: parse_rat(at.as_deref().expect("clap enforces --at"))?,
                    },
                    _ => return Err(parse_err("specify exactly one of --vertex or --edge")),
                };
                let modified = elementary_modification(&g, &point)?;
                print_json(
                    &serde_json::to_value(json::graph_to_json(&modified)).expect("serializable"),
                );
            }
        },
        Cmd::Reproduce { target } => {
            if target != "paper" {
                return Err(parse_err(format!("unknown reproduction target {target:?}")));
            }
            return reproduce_paper();
        }
    }
    Ok(0)
}

fn laur(terms: &[(i64, i64)]) -> LaurentQ {
    terms
        .iter()
        .fold(LaurentQ::zero(), |acc, &(de, c)| acc.add(&LaurentQ::monomial(de, c)))
}

fn reproduce_paper() -> Result<i32> {
    let mut all_ok = true;
    let mut check = |name: &str, got: String, want: String| {
        let ok = got == want;
        all_ok &= ok;
        if ok {
            print_line(format!("PASS {name} = {got}"));
        } else {
            print_line(format!("FAIL {name}: got {got}, expected {want}"));
        }
    };

    // Quantum curve counts G_{d,g} and their specializations.
    let goldens: [(usize, i64, LaurentQ, i64, i64); 4] = [
        (3, 0, laur(&[(-2, 1), (0, 10), (2, 1)]), 12, 8),
        (4, 2, laur(&[(-2, 3), (0, 21), (2, 3)]), 27, 15),
        (4, 1, laur(&[(-4, 3), (-2, 33), (0, 153), (2, 33), (4, 3)]), 225, 93),
        (
            4,
            0,
            laur(&[(-6, 1), (-4, 13), (-2, 94), (0, 404), (2, 94), (4, 13), (6, 1)]),
            620,
            240,
        ),
    ];
    for (d, g, want_q, want_c, want_r) in goldens {
        let c = count_curves(d, g)?;
        check(&format!("quantum[{d},{g}]"), c.quantum.to_string(), want_q.to_string());
        check(&format!("complex[{d},{g}]"), c.complex.to_string(), want_c.to_string());
        check(&format!("real[{d},{g}]"), c.real.to_string(), want_r.to_string());
    }

    // Per-diagram marking counts, as sorted multisets.
    let marking_goldens: [(usize, i64, &[u64]); 6] = [
        (3, 0, &[1, 3, 5]),
        (3, 1, &[1]),
        (4, 3, &[1]),
        (4, 2, &[1, 2, 3, 5, 7]),
        (4, 1, &[1, 2, 4, 6, 6, 7, 9, 15, 21, 21, 26]),
        (4, 0, &[1, 3, 6, 8, 15, 15, 15, 18, 35, 40, 45, 102]),
    ];
    for (d, g, want) in marking_goldens {
        let c = count_curves(d, g)?;
        let mut marks: Vec<u64> = c.per_diagram.iter().map(|(nu, _)| *nu as u64).collect();
        marks.sort_unstable();
        check(&format!("markings[{d},{g}]"), format!("{marks:?}"), format!("{:?}", want));
    }

    // Intersection numbers of fan curves at the origin of the fan plane.
    let p = FanPlane::new(3)?;
    let l = FanCurve::new(3, vec![(vec![1, 1, 0], 1), (vec![-1, -1, 0], 1)])?;
    let c = FanCurve::new(
        3,
        vec![(vec![-2, -3, 0], 1), (vec![0, 1, 1], 1), (vec![2, 2, -1], 1)],
    )?;
    check("line.self_intersection", local_intersection(&p, &l, &l)?.to_string(), "-1".into());
    check("cubic.self_intersection", local_intersection(&p, &c, &c)?.to_string(), "-4".into());
    check("cubic.line_intersection", local_intersection(&p, &c, &l)?.to_string(), "-1".into());
    check("cubic.degree", fan_degree(&c)?.to_string(), "3".into());
    check("cubic.adjunction", adjunction_bound(&p, &c)?.to_string(), "-2".into());
    check(
        "cubic.approximable",
        trivalent_approximable(&p, &c)?.to_string(),
        "false".into(),
    );
    check("line.approximable", trivalent_approximable(&p, &l)?.to_string(), "true".into());

    // Cohomology diamonds of model curves.
    let inf = crate::graph::EdgeLen::Infinite;
    let affine_line = MetricGraph::new(
        vec![false, true, true],
        vec![
            crate::graph::GraphEdge { a: 0, b: Some(1), len: inf.clone() },
            crate::graph::GraphEdge { a: 0, b: Some(2), len: inf.clone() },
            crate::graph::GraphEdge { a: 0, b: None, len: inf.clone() },
        ],
    )?;
    let punctured = MetricGraph::new(
        vec![false],
        vec![
            crate::graph::GraphEdge { a: 0, b: None, len: inf.clone() },
            crate::graph::GraphEdge { a: 0, b: None, len: inf.clone() },
            crate::graph::GraphEdge { a: 0, b: None, len: inf },
        ],
    )?;
    let theta = MetricGraph::new(
        vec![false, false],
        vec![
            crate::graph::GraphEdge { a: 0, b: Some(1), len: crate::graph::EdgeLen::Finite(crate::rat::rat(1)) },
            crate::graph::GraphEdge { a: 0, b: Some(1), len: crate::graph::EdgeLen::Finite(crate::rat::rat(2)) },
            crate::graph::GraphEdge { a: 0, b: Some(1), len: crate::graph::EdgeLen::Finite(crate::rat::rat(3)) },
        ],
    )?;
    let diamond = |g: &MetricGraph| -> Result<String> {
        let c = curve_cohomology(g)?;
        Ok(format!("({},{},{},{})", c.h00, c.h01, c.h10, c.h11))
    };
    check("cohomology.line", diamond(&affine_line)?, "(1,0,0,0)".into());
    check("cohomology.punctured_line", diamond(&punctured)?, "(1,0,2,0)".into());
    check("cohomology.theta", diamond(&theta)?, "(1,2,2,1)".into());

    Ok(if all_ok { 0 } else { 1 })
}

fn init_threads() {
    if let Ok(v) = std::env::var("TROPKIT_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                // Ignore the error if a global pool already exists.
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

pub fn cli_main() -> ExitCode {
    let cli = Cli::parse();
    init_threads();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            let (kind, code) = match &e {
                TropError::Parse(_) => ("parse", 2u8),
                TropError::Precondition(_) => ("precondition", 1u8),
            };
            eprintln!(
                "{}",
                serde_json::json!({ "error": { "kind": kind, "message": e.to_string() } })
            );
            ExitCode::from(code)
        }
    }
}
