use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use deltop::algebra::AbelianGroup;
use deltop::catalog::{catalog, catalog_ids, load_complex};
use deltop::complex::{CellularPair, SimplicialComplex};
use deltop::deleted::{deleted_pair, deleted_product, DeletedProduct};
use deltop::embed::{connectivity_report, embed_verdict, lemma1_vanishing_check};
use deltop::equivariant::{
    gysin_sequence, quotient_cover, splitting_check, twisted_cohomology, twisted_relative_cohomology, verify_exactness,
    FreeInvolutionComplex, LocalSystem, QuotientCover, QuotientPair,
};
use deltop::homology::{homology_all, CochainComplex, Coefficients, GradedGroups};
use deltop::report::Report;
use deltop::{Error, Result};

/// Deleted products above this many cells need `--heavy`.
const HEAVY_CELLS: usize = 20_000;

#[derive(Parser, Debug)]
#[command(name = "deltop", version, about = "Deleted products, twisted cohomology and embedding obstructions")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Allow computations on large deleted products.
    #[arg(long, global = true)]
    heavy: bool,
    /// Abort after this many seconds.
    #[arg(long, value_name = "SECONDS", global = true)]
    time_budget: Option<f64>,
    /// Include wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Which double cover to use.
#[derive(Args, Debug)]
struct CoverArgs {
    /// Vertex involution as `a=b,c=d,...`; defaults to the one shipped with a
    /// catalog entry.
    #[arg(long)]
    involution: Option<String>,
    /// Use the deleted product with its swap even if an involution is known.
    #[arg(long, conflicts_with = "involution")]
    deleted: bool,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// `Z`, `Z-`, `Zm:<m>`, `Zm:<m>-`, `ZxZ:swap(+)`, `ZxZ:swap(-)`.
    #[arg(long, default_value = "Z")]
    coeff: String,
    /// Sign applied to the coefficient involution.
    #[arg(long, default_value = "+", value_parser = ["+", "-"])]
    phi: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral homology of a complex or of a pair.
    Homology {
        input: String,
        /// Subcomplex for relative homology.
        #[arg(long)]
        sub: Option<String>,
    },
    /// Cohomology with constant coefficients.
    Cohomology {
        input: String,
        /// `Z`, `Z<m>` or `Zm:<m>`.
        #[arg(long, default_value = "Z")]
        coeff: String,
        /// Compute the cohomology of the deleted product instead.
        #[arg(long)]
        deleted: bool,
    },
    /// The deleted product as a cell-incidence document.
    DeletedProduct { input: String },
    /// Orbit complex of a free involution.
    Quotient {
        input: String,
        #[command(flatten)]
        cover: CoverArgs,
    },
    /// Cohomology of the quotient with twisted coefficients.
    Twisted {
        input: String,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// Subcomplex `M` of the input; gives `H^*(Ñ', M̃'; G_φ)`.
        #[arg(long, conflicts_with_all = ["involution", "deleted"])]
        sub: Option<String>,
    },
    /// The Gysin-type long exact sequence of the double cover, checked node by node.
    Gysin {
        input: String,
        #[command(flatten)]
        cover: CoverArgs,
        #[command(flatten)]
        system: SystemArgs,
        /// Last degree of the sequence.
        #[arg(long)]
        p_max: Option<usize>,
    },
    /// Decide whether an equivariant map to S^{m-1} exists or is obstructed.
    EmbedCheck {
        input: String,
        #[arg(long)]
        m: usize,
    },
    /// Relative vanishing `H^i(Ñ, M̃) = 0` for `i >= dim N + l`.
    Lemma1 {
        n: String,
        m: String,
        #[arg(long, default_value_t = 0)]
        l: usize,
    },
    /// Relative homology of a complex modulo its boundary.
    Connectivity { input: String },
    /// List catalog entries or describe one.
    Catalog {
        id: Option<String>,
        /// Print the facet list of the entry instead of a report.
        #[arg(long, requires = "id")]
        export: bool,
    },
}

fn group_strings(g: &GradedGroups) -> Value {
    json!(g
        .groups
        .iter()
        .map(|(p, x)| json!({"degree": p, "group": x.to_string()}))
        .collect::<Vec<_>>())
}

fn degree_list(groups: &[AbelianGroup]) -> Value {
    group_strings(&GradedGroups::new(groups.to_vec()))
}

fn parse_involution(pairs: &str) -> Result<BTreeMap<String, String>> {
    pairs.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (a, b) = pair
                .split_once('=')
                .ok_or_else(|| Error::InvalidArgument(format!("involution pair `{pair}` is not of the form a=b")))?;
            Ok((a.trim().to_string(), b.trim().to_string()))
        })
        .collect()
}

fn local_system(s: &SystemArgs) -> Result<LocalSystem> {
    let l: LocalSystem = s.coeff.parse()?;
    Ok(if s.phi == "-" { l.negated() } else { l })
}

struct Session {
    heavy: bool,
    inputs: BTreeMap<String, String>,
}

impl Session {
    fn input(&mut self, key: &str, value: impl ToString) {
        self.inputs.insert(key.into(), value.to_string());
    }

    fn load(&mut self, key: &str, source: &str) -> Result<(SimplicialComplex, Option<BTreeMap<String, String>>)> {
        self.input(key, source);
        load_complex(source)
    }

    fn deleted(&self, k: &SimplicialComplex) -> Result<DeletedProduct> {
        let d = deleted_product(k);
        let cells = d.cw().total_cells();
        if cells > HEAVY_CELLS && !self.heavy {
            return Err(Error::InvalidArgument(format!(
                "the deleted product has {cells} cells; pass --heavy to run this computation"
            )));
        }
        Ok(d)
    }

    fn cover(&mut self, source: &str, args: &CoverArgs) -> Result<QuotientCover> {
        let (k, shipped) = self.load("input", source)?;
        let map = match (&args.involution, args.deleted) {
            (Some(pairs), _) => Some(parse_involution(pairs)?),
            (None, false) => shipped,
            (None, true) => None,
        };
        let free = match map {
            Some(map) => {
                let listed = map.iter().map(|(a, b)| format!("{a}={b}")).collect::<Vec<_>>().join(",");
                self.input("cover", format!("vertex involution {listed}"));
                FreeInvolutionComplex::from_vertex_involution(&k, &map)?
            }
            None => {
                self.input("cover", "deleted product with the swap");
                let d = self.deleted(&k)?;
                if d.is_empty() {
                    return Err(Error::EmptyDeletedProduct);
                }
                FreeInvolutionComplex::from_deleted_product(&d)?
            }
        };
        quotient_cover(&free)
    }
}

fn run(cmd: &Command, s: &mut Session) -> Result<(String, Value, Option<String>)> {
    let mut extra_text = None;
    let (name, result) = match cmd {
        Command::Homology { input, sub } => {
            let (k, _) = s.load("input", input)?;
            let groups = match sub {
                Some(sub) => {
                    let (m, _) = s.load("sub", sub)?;
                    let pair = CellularPair::new(std::sync::Arc::new(k.to_cw()), m.embedding_into(&k)?)?;
                    homology_all(&pair.relative_chain())?
                }
                None => homology_all(k.to_cw().chain())?,
            };
            ("homology", json!({"f_vector": k.f_vector(), "groups": group_strings(&groups)}))
        }
        Command::Cohomology { input, coeff, deleted } => {
            let (k, _) = s.load("input", input)?;
            let c: Coefficients = coeff.parse()?;
            s.input("coeff", c);
            s.input("space", if *deleted { "deleted product" } else { "complex" });
            let groups = if *deleted {
                let d = s.deleted(&k)?;
                CochainComplex::of_chain(d.cw().chain(), c)?.cohomology_all()?
            } else {
                CochainComplex::of_chain(k.to_cw().chain(), c)?.cohomology_all()?
            };
            ("cohomology", json!({"groups": group_strings(&groups)}))
        }
        Command::DeletedProduct { input } => {
            let (k, _) = s.load("input", input)?;
            let d = s.deleted(&k)?;
            let doc = d.cw().incidence_document();
            extra_text = Some(doc.clone());
            (
                "deleted-product",
                json!({
                    "f_vector": d.cw().f_vector(),
                    "euler_characteristic": d.cw().euler_characteristic(),
                    "cells": doc.lines().collect::<Vec<_>>(),
                }),
            )
        }
        Command::Quotient { input, cover } => {
            let q = s.cover(input, cover)?;
            let (x, xq) = (q.cover().cw(), q.quotient());
            let homology = homology_all(xq.chain())?;
            (
                "quotient",
                json!({
                    "cover_f_vector": x.f_vector(),
                    "quotient_f_vector": xq.f_vector(),
                    "cover_euler_characteristic": x.euler_characteristic(),
                    "quotient_euler_characteristic": xq.euler_characteristic(),
                    "euler_halves": x.euler_characteristic() == 2 * xq.euler_characteristic(),
                    "quotient_homology": group_strings(&homology),
                }),
            )
        }
        Command::Twisted { input, cover, system, sub } => {
            let l = local_system(system)?;
            s.input("system", &l);
            let groups: Vec<AbelianGroup> = match sub {
                Some(sub) => {
                    let (n, _) = s.load("input", input)?;
                    let (m, _) = s.load("sub", sub)?;
                    s.input("cover", "deleted product with the swap");
                    s.deleted(&n)?;
                    let pair = QuotientPair::from_deleted_pair(&deleted_pair(&n, &m)?)?;
                    let len = pair.cover.len();
                    (0..len).map(|p| twisted_relative_cohomology(&pair, &l, p)).collect::<Result<_>>()?
                }
                None => {
                    let q = s.cover(input, cover)?;
                    (0..q.len()).map(|p| twisted_cohomology(&q, &l, p)).collect::<Result<_>>()?
                }
            };
            ("twisted", json!({"groups": degree_list(&groups)}))
        }
        Command::Gysin { input, cover, system, p_max } => {
            let l = local_system(system)?;
            s.input("system", &l);
            if let Some(p) = p_max {
                s.input("p_max", p);
            }
            let q = s.cover(input, cover)?;
            let segments = gysin_sequence(&q, &l, *p_max)?;
            let report = verify_exactness(&segments)?;
            let table: Vec<Value> = segments
                .iter()
                .map(|g| {
                    json!({
                        "degree": g.degree,
                        "previous_plus": g.previous_plus.to_string(),
                        "minus": g.minus.to_string(),
                        "cover": g.cover.to_string(),
                        "plus": g.plus.to_string(),
                    })
                })
                .collect();
            let nodes: Vec<Value> = report
                .nodes
                .iter()
                .map(|n| {
                    json!({
                        "node": n.label,
                        "degree": n.degree,
                        "verdict": if n.pass { "PASS" } else { "FAIL" },
                        "witness": n.witness.as_ref().map(|w| w.iter().map(ToString::to_string).collect::<Vec<_>>()),
                    })
                })
                .collect();
            let splitting = if l.two_invertible() {
                let cmp = splitting_check(&q, &l, *p_max)?;
                json!({
                    "holds": cmp.iter().all(|c| c.equal),
                    "degrees": cmp.iter().map(|c| json!({"degree": c.degree, "cover": c.left.to_string(), "sum": c.right.to_string()})).collect::<Vec<_>>(),
                })
            } else {
                Value::Null
            };
            (
                "gysin",
                json!({
                    "table": table,
                    "exactness": if report.pass { "PASS" } else { "FAIL" },
                    "nodes": nodes,
                    "splitting": splitting,
                }),
            )
        }
        Command::EmbedCheck { input, m } => {
            let (k, _) = s.load("input", input)?;
            s.input("m", m);
            s.deleted(&k)?;
            let v = embed_verdict(&k, *m)?;
            (
                "embed-check",
                json!({
                    "verdict": v.verdict,
                    "m": v.m,
                    "index": v.index,
                    "groups": group_strings(&v.groups),
                    "note": v.note,
                }),
            )
        }
        Command::Lemma1 { n, m, l } => {
            let (big, _) = s.load("n", n)?;
            let (small, _) = s.load("m", m)?;
            s.input("l", l);
            s.deleted(&big)?;
            let r = lemma1_vanishing_check(&big, &small, *l)?;
            (
                "lemma1",
                json!({
                    "dim": r.n,
                    "threshold": r.threshold,
                    "verdict": if r.pass { "PASS" } else { "FAIL" },
                    "groups": group_strings(&r.groups),
                }),
            )
        }
        Command::Connectivity { input } => {
            let (k, _) = s.load("input", input)?;
            let r = connectivity_report(&k)?;
            (
                "connectivity",
                json!({"closed": r.closed, "d_max": r.d_max, "groups": group_strings(&r.groups)}),
            )
        }
        Command::Catalog { id: None, .. } => {
            let entries: Vec<Value> = catalog_ids()
                .iter()
                .map(|id| catalog(id).map(|e| json!({"id": e.id, "description": e.description})))
                .collect::<Result<_>>()?;
            ("catalog", json!({"entries": entries}))
        }
        Command::Catalog { id: Some(id), .. } => {
            s.input("id", id);
            let e = catalog(id)?;
            let homology = homology_all(e.complex.to_cw().chain())?;
            (
                "catalog",
                json!({
                    "id": e.id,
                    "description": e.description,
                    "provenance": e.provenance,
                    "f_vector": e.complex.f_vector(),
                    "homology": group_strings(&homology),
                    "involution": e.involution,
                }),
            )
        }
    };
    Ok((name.to_string(), result, extra_text))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded => 3,
        Error::CatalogValidation { .. } => 4,
        _ => 2,
    }
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(v) = std::env::var("DELTOP_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("DELTOP_THREADS must be a positive integer, got `{v}`"))?;
    if n == 0 {
        return Err("DELTOP_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if let Some(secs) = cli.global.time_budget {
        if !(secs > 0.0 && secs.is_finite()) {
            eprintln!("error: --time-budget must be a positive number of seconds");
            return ExitCode::from(2);
        }
        deltop::budget::set_deadline(Some(Duration::from_secs_f64(secs)));
    }
    let mut session = Session {
        heavy: cli.global.heavy,
        inputs: BTreeMap::new(),
    };
    if let Command::Catalog { id: Some(id), export: true } = &cli.command {
        return match catalog(id) {
            Ok(e) => {
                print!("{}", e.complex.serialize());
                ExitCode::SUCCESS
            }
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(exit_code(&e))
            }
        };
    }
    let start = Instant::now();
    let (name, result, extra_text) = match run(&cli.command, &mut session) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut report = Report::new(&name, session.inputs, result);
    if cli.global.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    match (cli.global.format, extra_text) {
        (Format::Json, _) => println!("{}", report.to_json()),
        (Format::Text, Some(doc)) => {
            // The document is the payload; drop the copy embedded in the report.
            if let Value::Object(map) = &mut report.result {
                map.remove("cells");
            }
            print!("{}", report.to_text());
            print!("{doc}");
        }
        (Format::Text, None) => print!("{}", report.to_text()),
    }
    ExitCode::SUCCESS
}
