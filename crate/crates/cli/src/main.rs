use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use galeproj::complexes::Complex;
use galeproj::gale::DEFAULT_FACE_CARD_CAP;
use galeproj::io::{read_json, PolytopeFile, SetupFile, VectorConfigFile};
use galeproj::obstructions::{nonembeddable, ChiMode};
use galeproj::pipeline::{
    main_theorem_bound, obstruction_pipeline, pigeonhole_lower_bound, planar_bound_check, random_experiment,
    two_triangle_example, PipelineReport,
};
use galeproj::polytopes::{hull_vertices, minkowski_sum_vertices, trivial_upper_bound, tuple_sum};
use galeproj::projections::{oracle_survival, vertex_survival_census};
use galeproj::{Error, Rat, Scalar, VPolytope};
use itertools::Itertools;
use serde_json::json;

#[derive(Parser)]
#[command(name = "galeproj", version, about = "Exact vertex counts of Minkowski sums and polytope projections")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexOp {
    /// complement complex
    Cc,
    /// minimal non-faces
    Nf,
    /// deleted join
    Djn,
}

#[derive(Subcommand)]
enum Command {
    /// Coloring obstruction for d-fold products of d-simplices projected to R^d.
    Obstruction {
        #[arg(long)]
        d: usize,
    },
    /// The two-triangle construction in R^4 projected to the plane.
    Example {
        #[arg(long, default_value = "1/4")]
        epsilon: String,
    },
    /// Vertices of the Minkowski sum of the given polytopes.
    Minksum {
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
    },
    /// The main vertex bound and the counting behind it.
    Bound {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        f0: Vec<usize>,
    },
    /// Random Minkowski sums checked against the bounds.
    Experiment {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        f0: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Complement complex, minimal non-faces or deleted join of a complex.
    Complex {
        #[arg(value_enum)]
        op: ComplexOp,
        #[arg(long)]
        input: PathBuf,
    },
    /// Coloring bound against embedding a complex into the d-sphere.
    Embed {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        sphere: i64,
        /// Skip the exact coloring and use a greedy upper bound.
        #[arg(long)]
        greedy: bool,
    },
    /// Vertex survival of a projection, dual-face census against the oracle.
    Census {
        #[arg(long)]
        input: PathBuf,
    },
    /// Faces of the polytope with the given Gale transform.
    Gale {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 3)]
        max_card: usize,
        #[arg(long, default_value_t = DEFAULT_FACE_CARD_CAP)]
        face_cap: usize,
    },
}

enum Output {
    Report(PipelineReport),
    Value(serde_json::Value),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Output::Report(rep)) => {
            match cli.format {
                Format::Json => println!("{}", rep.to_json()),
                Format::Text => print!("{}", rep.to_text()),
            }
            if rep.all_passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Ok(Output::Value(v)) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
                Format::Text => println!("{v}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cmd: Command) -> Result<Output> {
    Ok(match cmd {
        Command::Obstruction { d } => Output::Report(obstruction_pipeline(d)?),
        Command::Example { epsilon } => {
            let eps = Rat::parse(&epsilon).ok_or_else(|| anyhow!("not a rational: {epsilon}"))?;
            Output::Report(two_triangle_example(&eps)?)
        }
        Command::Minksum { input } => Output::Report(minksum(&input)?),
        Command::Bound { d, r, f0 } => Output::Report(bound(d, r, &f0)?),
        Command::Experiment { d, r, f0, trials, seed } => Output::Report(random_experiment(d, r, &f0, trials, seed)?),
        Command::Complex { op, input } => {
            let k: Complex = read_json(&input)?;
            Output::Value(match op {
                ComplexOp::Cc => serde_json::to_value(k.complement_complex())?,
                ComplexOp::Nf => serde_json::to_value(k.minimal_nonfaces())?,
                ComplexOp::Djn => {
                    let dj = k.deleted_join();
                    json!({ "dim": dj.dim(), "complex": dj })
                }
            })
        }
        Command::Embed { input, sphere, greedy } => Output::Report(embed(&input, sphere, greedy)?),
        Command::Census { input } => Output::Report(census(&input)?),
        Command::Gale { input, max_card, face_cap } => Output::Report(gale(&input, max_card, face_cap)?),
    })
}

fn minksum(paths: &[PathBuf]) -> Result<PipelineReport> {
    let polys: Vec<VPolytope> = paths
        .iter()
        .map(|p| {
            let f: PolytopeFile<Rat> = read_json(p)?;
            f.to_vpolytope().map(|v| v.vertices_only()).with_context(|| p.display().to_string())
        })
        .collect::<Result<_>>()?;
    let d = polys[0].dim();
    if let Some(p) = polys.iter().find(|p| p.dim() != d) {
        bail!(Error::WrongDimension { expected: d, found: p.dim() });
    }
    let f0s: Vec<usize> = polys.iter().map(VPolytope::len).collect();
    let sums = minkowski_sum_vertices(&polys)?;
    let all: Vec<_> = f0s
        .iter()
        .map(|&f| 0..f)
        .multi_cartesian_product()
        .map(|c| tuple_sum(&c, &polys))
        .collect();
    let hull = hull_vertices(&all).len();
    let mut rep = PipelineReport::new("minkowski-sum");
    rep.input("d", d);
    rep.input("f0s", &f0s);
    rep.quantity("f0_sum", sums.len());
    rep.quantity(
        "vertices",
        sums.iter().map(|(_, v)| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
    );
    rep.quantity("choices", sums.iter().map(|(c, _)| c.iter().map(|i| i + 1).collect::<Vec<_>>()).collect::<Vec<_>>());
    rep.check(
        "hull-agreement",
        "normal-cone enumeration and the hull of all tuple sums give the same count",
        sums.len() == hull,
        format!("{} vs {hull}", sums.len()),
    );
    let trivial = trivial_upper_bound(&f0s);
    rep.check(
        "trivial-bound",
        "the sum has at most the product of the vertex counts",
        Rat::from_int(sums.len() as i64) <= Rat::from_integer(trivial.clone().into()),
        format!("{} <= {trivial}", sums.len()),
    );
    let full_dim = polys.iter().all(|p| p.affine_dim() == d);
    if full_dim && polys.len() >= d && d >= 1 {
        let bound = main_theorem_bound(d, polys.len(), &f0s)?;
        rep.check(
            "main-bound",
            "with r >= d full-dimensional summands the sum stays below (1 - (d+1)^-r) times the trivial bound",
            Rat::from_int(sums.len() as i64) <= bound,
            format!("{} <= {bound}", sums.len()),
        );
    }
    if d == 2 && polys.len() == 2 {
        let planar = planar_bound_check(&polys[0], &polys[1])?;
        rep.claims.extend(planar.claims.into_iter().filter(|c| c.name == "planar-bound"));
    }
    Ok(rep)
}

fn bound(d: usize, r: usize, f0s: &[usize]) -> Result<PipelineReport> {
    let main = main_theorem_bound(d, r, f0s)?;
    let ph = pigeonhole_lower_bound(d, r, f0s)?;
    let trivial = trivial_upper_bound(f0s);
    let mut rep = PipelineReport::new("bound");
    rep.input("d", d);
    rep.input("r", r);
    rep.input("f0s", f0s);
    rep.quantity("trivial_bound", trivial.to_string());
    rep.quantity("main_theorem_bound", main.to_string());
    rep.quantity("failing_tuples_lower", ph.bound.to_string());
    rep.quantity("simplex_tuples", ph.tuples.to_string());
    rep.quantity("tuples_per_sum", ph.per_sum.to_string());
    rep.check(
        "pigeonhole-identity",
        "the tuple count divided by the tuples per sum equals prod f0_i / (d+1)",
        ph.ratio == ph.bound,
        format!("{} = {}", ph.ratio, ph.bound),
    );
    let trivial_q = Rat::from_integer(trivial.into());
    rep.check(
        "bound-consistent",
        "the main bound lies strictly below the trivial bound",
        main < trivial_q,
        format!("{main} < {trivial_q}"),
    );
    Ok(rep)
}

fn embed(path: &PathBuf, sphere: i64, greedy: bool) -> Result<PipelineReport> {
    let k: Complex = read_json(path)?;
    let mut rep = PipelineReport::new("embed");
    rep.input("vertices", k.num_vertices());
    rep.input("facets", k.facets().len());
    rep.input("sphere", sphere);
    let verdict = match nonembeddable(&k, sphere, if greedy { ChiMode::GreedyUpper } else { ChiMode::Exact }) {
        Err(Error::TooLargeForExact { vertices, cap }) => {
            rep.note(format!("a Kneser component has {vertices} > {cap} vertices; using a greedy coloring"));
            nonembeddable(&k, sphere, ChiMode::GreedyUpper)?
        }
        v => v?,
    };
    rep.quantity("verdict", &verdict);
    if verdict.chi_is_exact {
        rep.check(
            "interval-consistent",
            "the coloring lower bound does not exceed the deleted-join dimension",
            verdict.interval_consistent,
            format!("{} <= {}", verdict.sarkaria_lower, verdict.djn_dim_upper),
        );
    }
    Ok(rep)
}

fn census(path: &PathBuf) -> Result<PipelineReport> {
    let f: SetupFile<Rat> = read_json(path)?;
    let s = f.to_setup()?;
    let census = vertex_survival_census(&s)?;
    let oracle = oracle_survival(&s)?;
    let mut rep = PipelineReport::new("census");
    rep.input("n", s.polytope().dim());
    rep.input("d", s.proj().nrows());
    rep.quantity("survival", &census);
    rep.check(
        "census-oracle",
        "the dual-face census agrees vertex by vertex with the image/fiber oracle",
        census == oracle,
        format!("{} of {} survive", census.surviving, census.total),
    );
    Ok(rep)
}

fn gale(path: &PathBuf, max_card: usize, face_cap: usize) -> Result<PipelineReport> {
    let f: VectorConfigFile<Rat> = read_json(path)?;
    let g = f.to_config()?;
    let mut rep = PipelineReport::new("gale");
    rep.input("vectors", g.len());
    rep.input("dim", g.dim());
    let is_gale = g.is_gale_transform()?;
    rep.quantity("general_position", g.general_position());
    rep.check("gale-transform", "every single deletion positively spans", is_gale, "");
    if !is_gale {
        return Ok(rep);
    }
    let mut counts = Vec::new();
    for k in 1..=max_card.min(g.len()) {
        let faces = g.gale_faces_of_card_capped(k, face_cap)?;
        counts.push(faces.len());
        rep.quantity(
            &format!("faces_{k}"),
            faces.iter().map(|f| f.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>(),
        );
    }
    rep.quantity("face_counts", &counts);
    Ok(rep)
}
