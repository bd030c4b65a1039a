//! `packinglab` command line.

use crate::catalog::{self, CatalogEntry};
use crate::convert;
use crate::coxeter::{self, ClusterOptions, DEFAULT_MAX_ORDER};
use crate::error::{Error, Result};
use crate::exactnum::QNum;
use crate::geometry::{bend_matrix, InversiveVector, SquareConfigBasis};
use crate::groupwords::{double, Configuration};
use crate::integrality::{self, DEFAULT_GROWTH_STEPS};
use crate::lobachevsky::{self, Method};
use crate::matrix::QMatrix;
use crate::orbit::{self, Limits, PackingOrbit};
use crate::polygraph::{self, GlueKind, PlanarPolyhedron};
use crate::render::{self, LabelMode, RenderOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::ffi::OsString;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "packinglab", version, about = "Exact tools for crystallographic sphere packings")]
struct Cli {
    /// Worker threads (results do not depend on this)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct ConfigArg {
    /// `builtin:ID` or a configuration file
    #[arg(long)]
    config: String,
}

#[derive(Args, Debug, Clone)]
struct OrbitArgs {
    #[command(flatten)]
    config: ConfigArg,
    /// Comma-separated cluster labels (defaults to the first known cluster)
    #[arg(long)]
    cluster: Option<String>,
    #[arg(long, default_value_t = 6)]
    max_generation: u32,
    #[arg(long, default_value = "10000")]
    max_bend: String,
    /// Drop the generation limit
    #[arg(long)]
    unbounded_generations: bool,
    #[arg(long, value_enum, default_value_t = OrbitFormat::Tsv)]
    format: OrbitFormat,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum OrbitFormat {
    Tsv,
    Json,
    Stats,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum LobMethod {
    Series,
    Asymptotic,
    Quadrature,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Labels {
    None,
    Bends,
    Labels,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    Face,
    Vertex,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Check norms, stored Gram matrix and known clusters
    Validate {
        #[command(flatten)]
        config: ConfigArg,
        /// Also sample this many points for the empty-interior check
        #[arg(long, requires = "seed")]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Print the Gram matrix
    Gram {
        #[command(flatten)]
        config: ConfigArg,
    },
    /// Coxeter diagram in DOT
    Diagram {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
        max_order: u32,
        /// Draw unclassifiable entries as dotted edges instead of failing
        #[arg(long)]
        lenient: bool,
    },
    /// Enumerate clusters
    Clusters {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        allow_orthogonal: bool,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Generate a packing
    Pack(OrbitArgs),
    /// Generate a superpacking
    Super(OrbitArgs),
    /// Integrality certificate from a square basis
    CheckIntegrality {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        cluster: Option<String>,
        /// `builtin:ID` or file holding the square basis
        #[arg(long)]
        basis: String,
        /// Also sample this many mirror words for the bounded-rational check
        #[arg(long, requires = "seed")]
        words: Option<usize>,
        #[arg(long, default_value_t = 5)]
        word_len: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Nonintegrality certificate from an irrational linear relation
    ProveNonintegral {
        #[command(flatten)]
        config: ConfigArg,
        /// Cluster used to supplement rows from a depth-2 orbit when needed
        #[arg(long)]
        cluster: Option<String>,
    },
    /// Denominator growth of powers of a matrix word
    GrowthProbe {
        /// JSON list of matrices
        #[arg(long)]
        matrices: PathBuf,
        /// Comma-separated 1-based matrix indices
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = DEFAULT_GROWTH_STEPS)]
        k: u32,
    },
    /// Double a configuration about one row
    Double {
        #[command(flatten)]
        config: ConfigArg,
        #[arg(long)]
        node: String,
        #[arg(long)]
        no_parity: bool,
    },
    /// Glue two polyhedra
    Glue {
        /// Fixture name or polyhedron file
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, value_enum)]
        kind: Kind,
        /// Face index or vertex label on A
        #[arg(long)]
        at_a: String,
        #[arg(long)]
        at_b: String,
        /// Use a structural matching when no equivalence exists
        #[arg(long)]
        force: bool,
    },
    /// Convert a root file to inversive coordinates
    Convert {
        #[arg(long)]
        roots: PathBuf,
    },
    /// Draw a planar packing as SVG
    Render {
        /// Orbit file written by `pack`
        #[arg(long = "in", conflicts_with = "config")]
        input: Option<PathBuf>,
        #[arg(long)]
        config: Option<String>,
        #[arg(long)]
        cluster: Option<String>,
        #[arg(long, value_enum, default_value_t = Labels::None)]
        labels: Labels,
        /// `xmin,ymin,xmax,ymax`
        #[arg(long)]
        viewport: Option<String>,
        #[arg(long)]
        max_circles: Option<usize>,
    },
    /// Evaluate the Lobachevsky function
    Lob {
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = LobMethod::Series)]
        method: LobMethod,
    },
    /// List bundled entries or print one
    Catalog {
        id: Option<String>,
    },
}

fn entry(c: &ConfigArg) -> Result<CatalogEntry> {
    catalog::resolve(&c.config)
}

fn cluster_of(e: &CatalogEntry, spec: &Option<String>) -> Result<Vec<usize>> {
    match spec {
        Some(s) => {
            let labels: Vec<&str> = s.split(',').map(|x| x.trim()).filter(|x| !x.is_empty()).collect();
            e.config.indices_of(&labels)
        }
        None => e
            .cluster_indices()?
            .into_iter()
            .next()
            .ok_or_else(|| Error::InvalidConfig(format!("{} has no known cluster; pass --cluster", e.id))),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn label_set(config: &Configuration, s: &[usize]) -> String {
    let ls: Vec<&str> = s.iter().map(|&i| config.labels()[i].as_str()).collect();
    format!("{{{}}}", ls.join(","))
}

fn orbit_for(a: &OrbitArgs, superpacking: bool) -> Result<(CatalogEntry, Vec<usize>, PackingOrbit)> {
    let e = entry(&a.config)?;
    let cl = cluster_of(&e, &a.cluster)?;
    let (c, co) = orbit::split(&e.config, &cl)?;
    let limits = Limits {
        max_generation: if a.unbounded_generations { None } else { Some(a.max_generation) },
        max_bend: Some(QNum::parse(&a.max_bend)?),
        max_circles: None,
    };
    let o = if superpacking {
        orbit::generate_superpacking(&c, &co, &limits)?
    } else {
        orbit::generate_packing(&c, &co, &limits)?
    };
    Ok((e, cl, o))
}

fn orbit_output(a: &OrbitArgs, o: &PackingOrbit) -> String {
    match a.format {
        OrbitFormat::Tsv => o.to_lines(),
        OrbitFormat::Json => json(o),
        OrbitFormat::Stats => json(&orbit::orbit_stats(o)),
    }
}

fn load_poly(s: &str) -> Result<PlanarPolyhedron> {
    if let Some(p) = polygraph::fixture(s) {
        return Ok(p);
    }
    let text = std::fs::read_to_string(s).map_err(|e| Error::Io(format!("{}: {}", s, e)))?;
    PlanarPolyhedron::from_json(&text)
}

fn locate(p: &PlanarPolyhedron, at: &str, kind: Kind) -> Result<usize> {
    match kind {
        Kind::Face => at
            .parse::<usize>()
            .ok()
            .filter(|&i| i < p.faces().len())
            .ok_or_else(|| Error::Index(format!("face {} of {}", at, p.name))),
        Kind::Vertex => p.vertex(at).ok_or_else(|| Error::NotFound(format!("vertex {} of {}", at, p.name))),
    }
}

fn parse_viewport(s: &str) -> Result<render::Viewport> {
    let v: Vec<QNum> = s.split(',').map(|t| QNum::parse(t.trim())).collect::<Result<_>>()?;
    if v.len() != 4 {
        return Err(Error::InvalidConfig("viewport needs four numbers".into()));
    }
    Ok((v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
}

/// Rows for the nonintegrality test: the configuration, topped up with orbit
/// circles of the cluster until there are at least `n + 4` independent-enough rows.
fn nonintegral_rows(e: &CatalogEntry, cluster: &Option<String>) -> Result<Vec<InversiveVector>> {
    let mut rows = e.config.rows().to_vec();
    let need = e.config.dim() + 4;
    let full_rank = |rows: &[InversiveVector]| -> Result<bool> {
        Ok(crate::geometry::rows_matrix(rows)?.rank() == e.config.dim() + 2)
    };
    if rows.len() > e.config.dim() + 2 && full_rank(&rows)? {
        return Ok(rows);
    }
    let cl = cluster_of(e, cluster)?;
    let (c, co) = orbit::split(&e.config, &cl)?;
    let o = orbit::generate_packing(&c, &co, &Limits::generations(2))?;
    for v in o.vectors() {
        if rows.len() >= need && full_rank(&rows)? {
            break;
        }
        if !rows.contains(v) {
            rows.push(v.clone());
        }
    }
    Ok(rows)
}

fn execute(cli: &Cli) -> Result<(String, i32)> {
    let ok = |s: String| Ok((s, 0));
    match &cli.cmd {
        Cmd::Validate { config, samples, seed } => {
            let e = entry(config)?;
            let rep = catalog::validate(&e);
            let mut code = if rep.ok() { 0 } else { 1 };
            let mut out = serde_json::json!({ "validation": rep });
            if let (Some(n), Some(seed)) = (samples, seed) {
                let r = orbit::verify_empty_interior(&e.config, *n, *seed, catalog::sample_box(&e.id))?;
                if !r.empty {
                    code = 1;
                }
                out["empty_interior"] = serde_json::to_value(&r)?;
            }
            Ok((json(&out), code))
        }
        Cmd::Gram { config } => ok(entry(config)?.config.gram().to_string()),
        Cmd::Diagram { config, max_order, lenient } => {
            let e = entry(config)?;
            let g = e.config.gram();
            let d = if *lenient {
                coxeter::diagram_lenient(&g, *max_order)?
            } else {
                coxeter::diagram(&g, *max_order)?
            };
            ok(coxeter::export_dot(&d, Some(e.config.labels())))
        }
        Cmd::Clusters { config, allow_orthogonal, max_size } => {
            let e = entry(config)?;
            let opts = ClusterOptions { exclude_orthogonal_within_cluster: !allow_orthogonal, max_size: *max_size };
            let cs = coxeter::enumerate_clusters(&e.config.gram(), opts)?;
            let mut s = String::new();
            for c in cs {
                s.push_str(&label_set(&e.config, &c));
                s.push('\n');
            }
            ok(s)
        }
        Cmd::Pack(a) => {
            let (_, _, o) = orbit_for(a, false)?;
            ok(orbit_output(a, &o))
        }
        Cmd::Super(a) => {
            let (_, _, o) = orbit_for(a, true)?;
            ok(orbit_output(a, &o))
        }
        Cmd::CheckIntegrality { config, cluster, basis, words, word_len, seed } => {
            let e = entry(config)?;
            let cl = cluster_of(&e, cluster)?;
            let (c, co) = orbit::split(&e.config, &cl)?;
            let b = SquareConfigBasis::new(catalog::resolve(basis)?.config.rows().to_vec())?;
            let cert = integrality::prove_integral(&b, &c, &co)?;
            let mut out = serde_json::to_value(&cert)?;
            if let (Some(n), Some(seed)) = (words, seed) {
                let r = integrality::check_bounded_rational(&b, &co, *n, *word_len, *seed)?;
                out["bounded_rational"] = serde_json::to_value(&r)?;
            }
            ok(json(&out))
        }
        Cmd::ProveNonintegral { config, cluster } => {
            let e = entry(config)?;
            let rows = nonintegral_rows(&e, cluster)?;
            ok(integrality::prove_nonintegral(&rows)?.to_json() + "\n")
        }
        Cmd::GrowthProbe { matrices, word, k } => {
            let text = std::fs::read_to_string(matrices)
                .map_err(|e| Error::Io(format!("{}: {}", matrices.display(), e)))?;
            let ms: Vec<QMatrix> = serde_json::from_str(&text)?;
            let w = word
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse { pos: 0, msg: format!("bad index {}", t) }))
                .collect::<Result<Vec<_>>>()?;
            ok(integrality::denominator_growth_probe(&ms, &w, *k)?.to_json() + "\n")
        }
        Cmd::Double { config, node, no_parity } => {
            let e = entry(config)?;
            let j = e.config.index_of(node).ok_or_else(|| Error::NotFound(format!("label {}", node)))?;
            let d = double(&e.config, j, !no_parity)?;
            let out = CatalogEntry {
                id: d.config.name.clone(),
                gram: Some(d.config.gram()),
                config: d.config,
                clusters: Vec::new(),
                source: format!("{} doubled about {}", e.id, node),
            };
            ok(catalog::save(&out))
        }
        Cmd::Glue { a, b, kind, at_a, at_b, force } => {
            let (pa, pb) = (load_poly(a)?, load_poly(b)?);
            let (ia, ib) = (locate(&pa, at_a, *kind)?, locate(&pb, at_b, *kind)?);
            let found = match kind {
                Kind::Face => polygraph::face_equivalent(&pa, ia, &pb, ib)?,
                Kind::Vertex => polygraph::vertex_equivalent(&pa, ia, &pb, ib)?,
            };
            let equivalent = found.is_some();
            let matching = match (found, force) {
                (Some(m), _) => m,
                (None, true) => match kind {
                    Kind::Face => {
                        let f = &pb.faces()[ib];
                        (0..f.len()).map(|i| f[(f.len() - i) % f.len()]).collect()
                    }
                    Kind::Vertex => {
                        let u = pb.rotation(ib)?.0;
                        (0..u.len()).map(|i| u[(u.len() - i) % u.len()]).collect()
                    }
                },
                (None, false) => {
                    return Err(Error::InvalidMatching("no equivalent matching; pass --force for a structural one".into()))
                }
            };
            let (glued, gk) = match kind {
                Kind::Face => (polygraph::glue_face(&pa, ia, &pb, ib, &matching)?, GlueKind::Face),
                Kind::Vertex => (polygraph::glue_vertex(&pa, ia, &pb, ib, &matching)?, GlueKind::Vertex),
            };
            let n = matching.len();
            let out = serde_json::json!({
                "equivalent": equivalent,
                "counts": glued.counts(),
                "expected": polygraph::count_after_glue(gk, pa.counts(), pb.counts(), n),
                "face_types": glued.face_types(),
                "three_connected": glued.is_three_connected(),
                "polyhedron": serde_json::from_str::<serde_json::Value>(&glued.to_json())?,
            });
            ok(json(&out))
        }
        Cmd::Convert { roots } => {
            let text = std::fs::read_to_string(roots).map_err(|e| Error::Io(format!("{}: {}", roots.display(), e)))?;
            ok(json(&convert::convert_file(&text)?))
        }
        Cmd::Render { input, config, cluster, labels, viewport, max_circles } => {
            let items = match (input, config) {
                (Some(p), _) => {
                    let text = std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {}", p.display(), e)))?;
                    render::items_from_orbit(&PackingOrbit::from_lines(&text)?, &[])
                }
                (None, Some(c)) => {
                    let e = catalog::resolve(c)?;
                    let cl = match cluster {
                        Some(_) => cluster_of(&e, cluster)?,
                        None => Vec::new(),
                    };
                    render::items_from_config(&e.config, &cl)
                }
                (None, None) => return Err(Error::InvalidConfig("render needs --in or --config".into())),
            };
            let opts = RenderOptions {
                viewport: viewport.as_deref().map(parse_viewport).transpose()?,
                labels: match labels {
                    Labels::None => LabelMode::None,
                    Labels::Bends => LabelMode::Bends,
                    Labels::Labels => LabelMode::Labels,
                },
                max_circles: *max_circles,
                ..Default::default()
            };
            ok(render::render_svg(&items, &opts)?)
        }
        Cmd::Lob { theta, tol, method } => {
            if !(*tol > 0.0) {
                return Err(Error::InvalidConfig("tolerance must be positive".into()));
            }
            let m = match method {
                LobMethod::Series => Method::Series,
                LobMethod::Asymptotic => Method::Asymptotic,
                LobMethod::Quadrature => Method::Quadrature,
            };
            let mut out = serde_json::json!({
                "theta": theta,
                "method": m,
                "value": lobachevsky::evaluate(m, *theta, *tol),
            });
            if let Method::Asymptotic = m {
                let a = lobachevsky::lobachevsky_asymptotic(*theta, 12);
                out["within_regime"] = a.within_regime.into();
            }
            ok(json(&out))
        }
        Cmd::Catalog { id } => match id {
            None => ok(catalog::list_builtin().join("\n") + "\n"),
            Some(id) => ok(catalog::save(&catalog::get_builtin(id)?)),
        },
    }
}

/// Bend matrices of every mirror in the cocluster, for callers that want them.
pub fn cocluster_bend_matrices(basis: &SquareConfigBasis, cocluster: &[InversiveVector]) -> Result<Vec<QMatrix>> {
    cocluster.iter().map(|m| bend_matrix(basis, m)).collect()
}

fn report(e: &Error) {
    let v = serde_json::json!({ "error": e.kind(), "message": e.to_string() });
    eprintln!("{}", v);
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            report(&Error::InvalidConfig(e.to_string()));
            return 1;
        }
    };
    match pool.install(|| execute(&cli)) {
        Ok((text, code)) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &text).map_err(|e| Error::Io(format!("{}: {}", p.display(), e))),
                None => {
                    print!("{}", text);
                    Ok(())
                }
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    report(&e);
                    1
                }
            }
        }
        Err(e) => {
            report(&e);
            1
        }
    }
}
