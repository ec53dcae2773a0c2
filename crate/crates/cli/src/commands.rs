//! Command-line surface. Exit codes: 0 yes/found/valid, 1 no/refuted/rejected,
//! 2 unknown or budget exhausted, 3 usage, input or parse errors.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use zipper_core::certify::{
    find_collapse_to_point_with, find_construction_with, find_edge_zipping_with,
    find_shelling_with, find_zipping_with, is_collapsible_poset, Limits, Search, ShellGoal,
    ZipGoal,
};
use zipper_core::cylinders::{hocolim_reconstruct, mc, mc_star, quotient};
use zipper_core::homology::{homology, homology_mod2, is_connected, is_z_acyclic};
use zipper_core::ops::{
    barycentric, barycentric_handles, canonical, cojoin, cone, dual_cone, handles, join, prejoin,
    product, FacetComplex,
};
use zipper_core::recognize::*;
use zipper_core::{MonotoneMap, Poset};

use crate::certificate::{
    canonical_poset, load_subject, translate, verify, Certificate, Payload, ZipTarget,
};
use crate::error::CliError;
use crate::fixtures;
use crate::text::{parse_facets, parse_map, write_facets, write_poset, Subject};

#[derive(Debug, Parser)]
#[command(
    name = "zipper",
    version,
    about = "Constructible posets, zippings and their certificates"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output style for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    /// Write the produced file (poset, complex or certificate) here instead of stdout.
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
    /// Node budget shared by all search workers.
    #[arg(long, global = true, default_value_t = 5_000_000)]
    pub budget: u64,
    /// Worker threads for searches.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a fixture.
    Make {
        #[command(subcommand)]
        fixture: Fixture,
    },
    /// Run a recognizer on a poset or facet file.
    Check {
        recognizer: Recognizer,
        file: PathBuf,
    },
    /// Search for a certificate.
    Search {
        kind: SearchKind,
        file: PathBuf,
        /// zipping: singleton | dual-cone | <poset file>; edge-zipping: <facet file> (default: a point);
        /// shelling: cone | empty; collapse: point.
        #[arg(long)]
        goal: Option<String>,
    },
    /// Replay a certificate, optionally against a subject file.
    Verify {
        certificate: PathBuf,
        subject: Option<PathBuf>,
    },
    /// Turn a certificate into a derived one: edge zipping or construction into zipping, collapse into a simplicial collapse.
    Translate { certificate: PathBuf },
    /// Integral and mod 2 homology of the order complex.
    Homology { file: PathBuf },
    /// Apply a construction. Binary operations take two files; mc, mc-star and
    /// hocolim-reconstruct take source, target and a map file.
    Op {
        op: OpKind,
        inputs: Vec<PathBuf>,
        /// Comma-separated element labels, for `quotient`.
        #[arg(long)]
        elements: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum Fixture {
    /// Face poset of the simplex on `n` vertices
    Simplex { n: usize },
    /// Its boundary: all proper faces
    BoundarySimplex { n: usize },
    /// Face poset of the `n`-cube, empty face excluded
    Cube { n: usize },
    /// Triangle times an edge
    Prism,
    /// Boundary of the octahedron, as facets
    Octahedron,
    /// Eight-vertex dunce hat, as facets
    DunceHat,
    /// Mirroring of the complex in a facet file
    Mirror { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Recognizer {
    Simplicial,
    Cubical,
    Cubosimplicial,
    Simple,
    Flag,
    Nonsingular,
    Pure,
    CellComplex,
    SemiCellComplex,
    Sphere,
    Ball,
    PseudoManifold,
    Manifold,
    Acyclic,
    Connected,
    ConditionallyComplete,
    Atomic,
    Collapsible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SearchKind {
    Constructibility,
    Zipping,
    EdgeZipping,
    Shelling,
    Collapse,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OpKind {
    Dual,
    Cone,
    DualCone,
    Join,
    Cojoin,
    Product,
    Prejoin,
    Barycentric,
    Canonical,
    Handles,
    BarycentricHandles,
    Mc,
    McStar,
    Quotient,
    HocolimReconstruct,
}

/// What a command produced: the exit code, a report, and possibly a file.
#[derive(Debug)]
pub struct Output {
    pub code: u8,
    pub report: serde_json::Value,
    pub artifact: Option<String>,
}

impl Output {
    fn new(code: u8, report: serde_json::Value) -> Self {
        Output {
            code,
            report,
            artifact: None,
        }
    }

    fn with_artifact(mut self, a: String) -> Self {
        self.artifact = Some(a);
        self
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_subject(path: &Path) -> Result<Subject, CliError> {
    load_subject(&read(path)?)
}

fn read_poset(path: &Path) -> Result<Poset, CliError> {
    Ok(read_subject(path)?.poset())
}

fn read_complex(path: &Path) -> Result<FacetComplex, CliError> {
    match read_subject(path)? {
        Subject::Facets(k) => Ok(k),
        Subject::Poset(_) => Err(CliError::Usage(format!(
            "{}: expected a facet file",
            path.display()
        ))),
    }
}

fn verdict_output(name: &str, v: &Verdict) -> Output {
    let code = match v {
        Verdict::Yes(_) => 0,
        Verdict::No(_) => 1,
        Verdict::Unknown(_) => 2,
    };
    Output::new(
        code,
        json!({ "check": name, "verdict": v, "summary": v.to_string() }),
    )
}

fn recognizer(r: Recognizer, p: &Poset, limits: &Limits) -> Verdict {
    match r {
        Recognizer::Simplicial => is_simplicial(p),
        Recognizer::Cubical => is_cubical(p),
        Recognizer::Cubosimplicial => is_cubosimplicial(p),
        Recognizer::Simple => is_simple(p),
        Recognizer::Flag => is_flag(p),
        Recognizer::Nonsingular => is_nonsingular(p),
        Recognizer::Pure => is_pure(p),
        Recognizer::CellComplex => is_cell_complex_with(p, limits),
        Recognizer::SemiCellComplex => is_semi_cell_complex(p),
        Recognizer::Sphere => is_sphere_with(p, limits),
        Recognizer::Ball => is_ball_with(p, limits),
        Recognizer::PseudoManifold => is_pseudo_manifold_with(p, limits),
        Recognizer::Manifold => is_manifold_with(p, &p.boundary(), limits),
        Recognizer::Acyclic => {
            Verdict::from_bool(is_z_acyclic(p), || Witness::Homology(homology(p)))
        }
        Recognizer::Connected => Verdict::from_bool(is_connected(p), || {
            Witness::Note(format!("{} components", component_count(p)))
        }),
        Recognizer::ConditionallyComplete => match incompleteness_witness(p) {
            None => Verdict::yes(),
            Some((a, b)) => Verdict::No(Witness::Elements(vec![
                p.label(a).into(),
                p.label(b).into(),
            ])),
        },
        Recognizer::Atomic => match p.non_atomic_witness() {
            None => Verdict::yes(),
            Some(x) => Verdict::no_at(p.label(x)),
        },
        Recognizer::Collapsible => is_collapsible_poset(p),
    }
}

fn search_output<T>(
    kind: &str,
    r: Search<T>,
    make: impl FnOnce(T) -> Result<Certificate, CliError>,
) -> Result<Output, CliError> {
    Ok(match r {
        Search::Found(t) => {
            let cert = make(t)?;
            Output::new(
                0,
                json!({ "search": kind, "result": "found", "digest": cert.digest }),
            )
            .with_artifact(cert.to_json())
        }
        Search::Refuted => Output::new(
            1,
            json!({ "search": kind, "result": "refuted", "note": "exhaustive search found no certificate" }),
        ),
        Search::Exhausted(n) => Output::new(
            2,
            json!({ "search": kind, "result": "budget_exhausted", "nodes": n }),
        ),
    })
}

fn search(
    kind: SearchKind,
    file: &Path,
    goal: Option<&str>,
    limits: &Limits,
) -> Result<Output, CliError> {
    let subject = read_subject(file)?;
    let bad_goal = |g: &str| CliError::Usage(format!("unknown goal `{g}` for {kind:?} search"));
    match kind {
        SearchKind::Constructibility => {
            if let Some(g) = goal {
                return Err(bad_goal(g));
            }
            let p = canonical_poset(&subject.poset());
            let poset = Subject::Poset(p.clone());
            search_output(
                "constructibility",
                find_construction_with(&p, limits),
                |t| Ok(Certificate::new(&poset, Payload::Construction(t))),
            )
        }
        SearchKind::Zipping => {
            let p = canonical_poset(&subject.poset());
            let (zg, target) = match goal.unwrap_or("singleton") {
                "singleton" => (ZipGoal::Singleton, ZipTarget::Singleton),
                "dual-cone" => (ZipGoal::DualCone, ZipTarget::DualCone),
                path => {
                    let t = read_poset(Path::new(path))?;
                    (
                        ZipGoal::Isomorphic(t.clone()),
                        ZipTarget::Isomorphic(write_poset(&t, None)),
                    )
                }
            };
            let poset = Subject::Poset(p.clone());
            search_output("zipping", find_zipping_with(&p, &zg, limits), |steps| {
                Ok(Certificate::new(&poset, Payload::Zipping { target, steps }))
            })
        }
        SearchKind::EdgeZipping => {
            let Subject::Facets(k) = &subject else {
                return Err(CliError::Usage("edge zipping needs a facet file".into()));
            };
            let target = match goal {
                None => parse_facets("facets: a")?,
                Some(path) => read_complex(Path::new(path))?,
            };
            let text = write_facets(&target, None);
            search_output(
                "edge_zipping",
                find_edge_zipping_with(k, &target, limits),
                |steps| {
                    Ok(Certificate::new(
                        &subject,
                        Payload::EdgeZipping {
                            target: text,
                            steps,
                        },
                    ))
                },
            )
        }
        SearchKind::Shelling => {
            let g = match goal.unwrap_or("cone") {
                "cone" => ShellGoal::Cone,
                "empty" => ShellGoal::Empty,
                g => return Err(bad_goal(g)),
            };
            let p = canonical_poset(&subject.poset());
            let poset = Subject::Poset(p.clone());
            search_output("shelling", find_shelling_with(&p, g, limits), |seq| {
                Ok(Certificate::new(&poset, Payload::Shelling(seq)))
            })
        }
        SearchKind::Collapse => {
            if let Some(g) = goal.filter(|g| *g != "point") {
                return Err(bad_goal(g));
            }
            let p = canonical_poset(&subject.poset());
            let poset = Subject::Poset(p.clone());
            search_output("collapse", find_collapse_to_point_with(&p, limits), |seq| {
                Ok(Certificate::new(&poset, Payload::Collapse(seq)))
            })
        }
    }
}

fn poset_artifact(p: &Poset, what: &str) -> Output {
    Output::new(0, json!({ "op": what, "elements": p.len() })).with_artifact(write_poset(p, None))
}

fn map_inputs(inputs: &[PathBuf]) -> Result<MonotoneMap, CliError> {
    let [src, tgt, map] = inputs else {
        return Err(CliError::Usage(
            "expected source, target and map files".into(),
        ));
    };
    let (s, t) = (read_poset(src)?, read_poset(tgt)?);
    Ok(parse_map(&read(map)?, s, t)?)
}

fn op(kind: OpKind, inputs: &[PathBuf], elements: Option<&str>) -> Result<Output, CliError> {
    let name = format!("{kind:?}");
    let one = || -> Result<Poset, CliError> {
        match inputs {
            [a] => read_poset(a),
            _ => Err(CliError::Usage(format!("{name} takes one input file"))),
        }
    };
    let two = || -> Result<(Poset, Poset), CliError> {
        match inputs {
            [a, b] => Ok((read_poset(a)?, read_poset(b)?)),
            _ => Err(CliError::Usage(format!("{name} takes two input files"))),
        }
    };
    let cylinder = |pre: zipper_core::Preposet| -> Output {
        match pre.to_poset() {
            Ok(p) => poset_artifact(&p, &name),
            Err(e) => Output::new(
                1,
                json!({ "op": name, "result": "not a poset", "note": e.to_string() }),
            ),
        }
    };
    Ok(match kind {
        OpKind::Dual => poset_artifact(&one()?.dual(), &name),
        OpKind::Cone => poset_artifact(&cone(&one()?), &name),
        OpKind::DualCone => poset_artifact(&dual_cone(&one()?), &name),
        OpKind::Barycentric => poset_artifact(&barycentric(&one()?), &name),
        OpKind::Canonical => poset_artifact(&canonical(&one()?), &name),
        OpKind::Handles => poset_artifact(&handles(&one()?), &name),
        OpKind::BarycentricHandles => poset_artifact(&barycentric_handles(&one()?), &name),
        OpKind::Join => {
            let (p, q) = two()?;
            poset_artifact(&join(&p, &q), &name)
        }
        OpKind::Cojoin => {
            let (p, q) = two()?;
            poset_artifact(&cojoin(&p, &q), &name)
        }
        OpKind::Product => {
            let (p, q) = two()?;
            poset_artifact(&product(&p, &q), &name)
        }
        OpKind::Prejoin => {
            let (p, q) = two()?;
            poset_artifact(&prejoin(&p, &q), &name)
        }
        OpKind::Quotient => {
            let p = one()?;
            let labels: Vec<&str> = elements
                .ok_or_else(|| CliError::Usage("quotient needs --elements".into()))?
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            let m = p.mask_of(&labels)?;
            poset_artifact(&quotient(&p, &m)?, &name)
        }
        OpKind::Mc => cylinder(mc(&map_inputs(inputs)?)?),
        OpKind::McStar => cylinder(mc_star(&map_inputs(inputs)?)?),
        OpKind::HocolimReconstruct => {
            let (h, _) = hocolim_reconstruct(&map_inputs(inputs)?)?;
            poset_artifact(&h, &name)
        }
    })
}

fn make(f: &Fixture) -> Result<Output, CliError> {
    let (name, subject) = match f {
        Fixture::Simplex { n } => (format!("simplex {n}"), fixtures::simplex_fixture(*n)),
        Fixture::BoundarySimplex { n } => (
            format!("boundary-simplex {n}"),
            fixtures::boundary_simplex_fixture(*n),
        ),
        Fixture::Cube { n } => (format!("cube {n}"), fixtures::cube_fixture(*n)),
        Fixture::Prism => ("prism".into(), fixtures::prism_fixture()),
        Fixture::Octahedron => ("octahedron".into(), Subject::Facets(fixtures::octahedron())),
        Fixture::DunceHat => ("dunce-hat".into(), Subject::Facets(fixtures::dunce_hat())),
        Fixture::Mirror { file } => (
            "mirror".into(),
            fixtures::mirror_fixture(&read_complex(file)?),
        ),
    };
    let text = match &subject {
        Subject::Poset(p) => write_poset(p, Some(&name)),
        Subject::Facets(k) => write_facets(k, Some(&name)),
    };
    Ok(Output::new(0, json!({ "fixture": name })).with_artifact(text))
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    let limits = Limits {
        budget: cli.budget,
        jobs: cli.jobs,
    };
    match &cli.command {
        Command::Make { fixture } => make(fixture),
        Command::Check {
            recognizer: r,
            file,
        } => {
            let p = read_poset(file)?;
            let v = recognizer(*r, &p, &limits);
            Ok(verdict_output(&format!("{r:?}"), &v))
        }
        Command::Search { kind, file, goal } => search(*kind, file, goal.as_deref(), &limits),
        Command::Verify {
            certificate,
            subject,
        } => {
            let cert = Certificate::from_json(&read(certificate)?)?;
            let ext = subject.as_deref().map(read_subject).transpose()?;
            verify(&cert, ext.as_ref())?;
            Ok(Output::new(
                0,
                json!({ "verify": cert.body.kind(), "result": "valid" }),
            ))
        }
        Command::Translate { certificate } => {
            let cert = Certificate::from_json(&read(certificate)?)?;
            let out = translate(&cert)?;
            Ok(Output::new(
                0,
                json!({ "translate": cert.body.kind(), "into": out.body.kind() }),
            )
            .with_artifact(out.to_json()))
        }
        Command::Homology { file } => {
            let p = read_poset(file)?;
            let h = homology(&p);
            let report = json!({
                "betti": h.betti,
                "reduced_betti": h.reduced_betti(),
                "torsion": h.torsion,
                "euler": h.euler,
                "mod2_betti": homology_mod2(&p),
                "acyclic": h.is_acyclic(),
            });
            Ok(Output::new(0, report))
        }
        Command::Op {
            op: k,
            inputs,
            elements,
        } => op(*k, inputs, elements.as_deref()),
    }
}

/// Human-readable form of a report.
pub fn render_text(report: &serde_json::Value) -> String {
    match report.as_object() {
        Some(map) => map
            .iter()
            .filter(|(k, _)| k.as_str() != "verdict")
            .map(|(k, v)| match v {
                serde_json::Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        None => report.to_string(),
    }
}
