//! Command-line workbench for exact silting computations over truncated
//! quiver algebras: build algebras and central quotients, inspect
//! complexes, compute homotopy Hom dimensions and order relations, reduce
//! and lift across central extensions, explore mutation graphs, and run
//! the verification suites.

mod format;
mod verify;

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use siltlab_core::complexes::{decompose, minimize};
use siltlab_core::homspaces::{hom_complex, relation, Relation};
use siltlab_core::lifting::{lift_full, lift_module, FdModule, LiftOutcome, ModuleLiftOutcome};
use siltlab_core::linalg::Matrix;
use siltlab_core::reduction::{reduce, QuotientTower};
use siltlab_core::silting::{
    certify_silting, explore, mutate_node, poset_compare, Certification, ExploreOptions,
    GraphNode,
};

use format::{
    complex_to_file, elem_to_terms, graph_from_file, graph_to_dot, graph_to_file, load_algebra,
    load_complex, load_complex_spec, parse_scalar, parse_side, write_json, AlgebraSpecFile,
    FORMAT_VERSION,
};

/// Default seed for every randomized procedure (isomorphism sampling,
/// idempotent splitting); override with --seed for different runs.
const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Parser)]
#[command(
    name = "siltlab",
    about = "Exact silting computations over truncated quiver algebras",
    version
)]
struct Cli {
    /// Seed for all randomized procedures (deterministic output per seed).
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or quotient algebras from presentation files.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Validate, minimize or decompose complexes of projectives.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Hom-complex dimensions between two complexes.
    Hom { l: PathBuf, m: PathBuf },
    /// Decide one of the order relations geq | teq | perp.
    Relation {
        l: PathBuf,
        m: PathBuf,
        #[arg(long)]
        which: String,
    },
    /// Reduce a complex to a lower central level.
    Reduce {
        complex: PathBuf,
        /// Interpret the complex at this level of its algebra's tower
        /// (default: the full algebra).
        #[arg(long)]
        from_level: Option<usize>,
        #[arg(long)]
        to_level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One irreducible silting mutation of a certified complex.
    Mutate {
        complex: PathBuf,
        #[arg(long)]
        summand: usize,
        #[arg(long, default_value = "right")]
        side: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Breadth-first mutation-graph exploration from the stalk complex.
    Explore {
        algebra: PathBuf,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Central level to explore at (default: the full algebra).
        #[arg(long)]
        level: Option<usize>,
        /// Comma-separated mutation sides.
        #[arg(long, default_value = "right,left")]
        sides: String,
        /// Worker threads for the mutation frontier.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Lift a complex from level 1 of its algebra's tower.
    Lift {
        complex: PathBuf,
        #[arg(long)]
        target_level: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a module over the level-1 algebra through its projective
    /// resolution (truncated at --depth).
    LiftModule {
        module: PathBuf,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        target_level: usize,
    },
    /// Match two mutation graphs through central reduction.
    ComparePosets { from: PathBuf, to: PathBuf },
    /// Endomorphism-ring freeness test for a pretilting complex.
    EndoFree { complex: PathBuf },
    /// Run a named verification suite.
    Verify { suite: String },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    /// Build an algebra and report its dimensions and invariants.
    Build { file: PathBuf },
    /// Report a central-power quotient Λ/t^nΛ.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        level: usize,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Validate d² = 0, block membership and minimality.
    Check { file: PathBuf },
    /// Minimal model via Gaussian cancellation.
    Minimize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Indecomposable summands.
    Decompose { file: PathBuf },
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e:#}");
        std::process::exit(1);
    }
}

fn tower_of(algebra: Arc<siltlab_core::Algebra>) -> Result<QuotientTower> {
    Ok(QuotientTower::new(algebra)?)
}

fn algebra_report(a: &siltlab_core::Algebra) {
    println!("field: {}", a.field);
    println!("vertices: {}", a.vertex_count());
    println!("dimension: {}", a.dim());
    println!("radical basis size: {}", a.radical_basis.len());
    for ((src, tgt), block) in &a.block_bases {
        if !block.is_empty() {
            println!(
                "block e_{}·Λ·e_{}: dim {}",
                a.quiver.vertices[*tgt], a.quiver.vertices[*src], block.len()
            );
        }
    }
    if a.has_t() {
        println!("t present, nilpotency {}", a.t_nilpotency());
        println!(
            "t-freeness verdict: {}",
            if a.t_freeness_verified { "verified free over k[t]/(t^m)" } else { "NOT verified" }
        );
    } else {
        println!("t absent");
    }
    println!(
        "note: the nilpotency bound is the caller's responsibility; the \
         reported algebra is kQ/(relations + J^N) for the given N and says \
         nothing about larger truncations"
    );
}

fn run(cli: Cli) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Algebra(cmd) => match cmd {
            AlgebraCmd::Build { file } => {
                let a = load_algebra(&file)?;
                algebra_report(&a);
            }
            AlgebraCmd::Quotient { file, level } => {
                let a = load_algebra(&file)?;
                let tower = tower_of(a)?;
                if level < 1 || level > tower.top_level {
                    bail!("level {level} out of range 1..={}", tower.top_level);
                }
                let q = tower.level(level);
                algebra_report(&q);
            }
        },
        Command::Complex(cmd) => match cmd {
            ComplexCmd::Check { file } => {
                let (_, c) = load_complex(&file)?;
                let report = c.validate()?;
                println!("valid: d² = 0 and all entries lie in their blocks");
                println!("minimal: {}", report.minimal);
            }
            ComplexCmd::Minimize { file, out } => {
                let (_, c) = load_complex(&file)?;
                let res = minimize(&c)?;
                println!("minimal model: {}", res.complex);
                if let Some(path) = out {
                    let cf = complex_to_file(&res.complex, &file_ref_of(&file));
                    write_json(&path, &cf)?;
                    println!("written to {}", path.display());
                }
            }
            ComplexCmd::Decompose { file } => {
                let (_, c) = load_complex(&file)?;
                guard_prime_splitting(&c)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let parts = decompose(&c, &mut rng)?;
                println!("{} indecomposable summands:", parts.len());
                for (i, p) in parts.iter().enumerate() {
                    println!("  [{i}] {p}");
                }
            }
        },
        Command::Hom { l, m } => {
            let (_, lc) = load_complex(&l)?;
            let (_, mc) = load_complex(&m)?;
            let k = hom_complex(&lc, &mc)?;
            match (k.min_degree(), k.max_degree()) {
                (Some(lo), Some(hi)) => {
                    for i in lo..=hi {
                        println!("Hom(L, M[{i}]) = {}", k.cohomology_dim(i));
                    }
                }
                _ => println!("Hom complex is zero"),
            }
        }
        Command::Relation { l, m, which } => {
            let (_, lc) = load_complex(&l)?;
            let (_, mc) = load_complex(&m)?;
            let rel = match which.as_str() {
                "geq" => Relation::Geq,
                "teq" => Relation::Teq,
                "perp" => Relation::Perp,
                other => bail!("unknown relation {other:?} (expected geq | teq | perp)"),
            };
            let holds = relation(&lc, &mc, rel)?;
            // The H-dimension table over the support window.
            let k = hom_complex(&minimize(&lc)?.complex, &minimize(&mc)?.complex)?;
            if let (Some(lo), Some(hi)) = (k.min_degree(), k.max_degree()) {
                for i in lo..=hi {
                    println!("H^{i} = {}", k.cohomology_dim(i));
                }
            }
            println!("{which}: {holds}");
            if !holds {
                std::process::exit(1);
            }
        }
        Command::Reduce { complex, from_level, to_level, out } => {
            let (algebra, spec) = load_complex_spec(&complex)?;
            let tower = tower_of(algebra)?;
            let from = from_level.unwrap_or(tower.top_level);
            let c = format::complex_from_file(&tower.level(from), &spec)?;
            let ctx = tower.context(from, to_level)?;
            let reduced = reduce(&ctx, &c)?;
            println!("reduced to level {to_level}: {reduced}");
            if let Some(path) = out {
                let cf = complex_to_file(&reduced, &file_ref_of(&complex));
                write_json(&path, &cf)?;
                println!("written to {}", path.display());
            }
        }
        Command::Mutate { complex, summand, side, out } => {
            let (_, c) = load_complex(&complex)?;
            guard_prime_splitting(&c)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match certify_silting(&c, None, &mut rng)? {
                Certification::Certified(cert) => {
                    println!("certificate tier: {}", cert.tier());
                }
                Certification::Rejected(reason) => {
                    bail!("complex is not certified silting: {reason}");
                }
            }
            let node = GraphNode::from_complex(c, vec![], &mut rng)?;
            let result = mutate_node(&node, summand, parse_side(&side)?, &mut rng)?;
            println!("mutation: {}", result.complex);
            if let Some(path) = out {
                let cf = complex_to_file(&result.complex, &file_ref_of(&complex));
                write_json(&path, &cf)?;
                println!("written to {}", path.display());
            }
        }
        Command::Explore { algebra, depth, level, sides, jobs, out, dot } => {
            let text = std::fs::read_to_string(&algebra)
                .with_context(|| format!("reading {}", algebra.display()))?;
            let spec: AlgebraSpecFile = serde_json::from_str(&text)?;
            let full = format::parse_algebra_spec(&spec)?;
            let (target, stored_level) = match level {
                None => (full.clone(), 0usize),
                Some(n) => {
                    let tower = tower_of(full.clone())?;
                    (tower.level(n), n)
                }
            };
            if let siltlab_core::FieldSpec::Prime(p) = target.field {
                if (p as usize) <= 4 * target.dim() {
                    bail!(
                        "exploration needs idempotent splitting; the prime field p = {p} is \
                         too small for trace-form radicals here — use a larger prime"
                    );
                }
            }
            let side_list = sides
                .split(',')
                .map(|s| parse_side(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            let opts =
                ExploreOptions { depth, sides: side_list, seed, jobs, verify_inverses: true };
            let g = explore(target, &opts)?;
            println!("{} nodes, {} edges", g.nodes.len(), g.edges.len());
            for (i, n) in g.nodes.iter().enumerate() {
                println!("  node {i}: {} [{}]", n.complex, g.certificate(i).tier());
            }
            if let Some(path) = out {
                write_json(&path, &graph_to_file(&g, &spec, stored_level))?;
                println!("graph written to {}", path.display());
            }
            if let Some(path) = dot {
                std::fs::write(&path, graph_to_dot(&g))?;
                println!("DOT written to {}", path.display());
            }
        }
        Command::Lift { complex, target_level, out } => {
            let (algebra, spec) = load_complex_spec(&complex)?;
            let tower = tower_of(algebra)?;
            let c = format::complex_from_file(&tower.level(1), &spec)?;
            let report = lift_full(&c, &tower, target_level)?;
            let mut doc = serde_json::Map::new();
            doc.insert("format_version".into(), FORMAT_VERSION.into());
            doc.insert(
                "steps".into(),
                serde_json::to_value(
                    report
                        .steps
                        .iter()
                        .map(|s| {
                            serde_json::json!({
                                "from_level": s.from_level,
                                "to_level": s.to_level,
                                "defect_was_zero": s.defect_was_zero,
                                "corrections": s.corrections,
                            })
                        })
                        .collect::<Vec<_>>(),
                )?,
            );
            match &report.outcome {
                LiftOutcome::Lifted(l) => {
                    println!("lifted to level {target_level}: {l}");
                    doc.insert("outcome".into(), "lifted".into());
                    let cf = complex_to_file(l, &file_ref_of(&complex));
                    doc.insert("complex".into(), serde_json::to_value(&cf)?);
                }
                LiftOutcome::Obstructed(o) => {
                    println!(
                        "obstructed: nonzero class in H² (dim {}), homotopy system certified \
                         unsolvable",
                        o.h2_dim
                    );
                    doc.insert("outcome".into(), "obstructed".into());
                    doc.insert("h2_dim".into(), o.h2_dim.into());
                    doc.insert("unsolvable_certified".into(), o.unsolvable_certified.into());
                    let base = complex_to_file(&o.base, &file_ref_of(&complex));
                    doc.insert("base_complex".into(), serde_json::to_value(&base)?);
                    let mut cocycle = serde_json::Map::new();
                    for (deg, m) in &o.cocycle {
                        let mut rows = Vec::new();
                        for r in 0..m.rows() {
                            let mut row = Vec::new();
                            for s in 0..m.cols() {
                                row.push(elem_to_terms(&o.base.algebra, m.at(r, s)));
                            }
                            rows.push(row);
                        }
                        cocycle.insert(deg.to_string(), serde_json::to_value(rows)?);
                    }
                    doc.insert("cocycle".into(), cocycle.into());
                }
            }
            if let Some(path) = out {
                write_json(&path, &serde_json::Value::Object(doc))?;
                println!("report written to {}", path.display());
            }
        }
        Command::LiftModule { module, depth, target_level } => {
            let (tower, n_module) = load_module(&module)?;
            let report = lift_module(&n_module, depth, &tower, target_level)?;
            match report.outcome {
                ModuleLiftOutcome::Lifted { dim, .. } => {
                    println!("lifted module of dimension {dim}");
                    println!(
                        "Tor_i(M, Λ₁) verified zero for 1 ≤ i ≤ {}; nothing is claimed beyond \
                         the truncation depth {}",
                        report.tor_vanishing_verified, report.truncation_depth
                    );
                }
                ModuleLiftOutcome::Obstructed(o) => {
                    println!("obstructed: class in H² of dimension {}", o.h2_dim);
                    std::process::exit(1);
                }
            }
        }
        Command::ComparePosets { from, to } => {
            let g1_file: format::GraphFile =
                serde_json::from_str(&std::fs::read_to_string(&from)?)?;
            let g2_file: format::GraphFile =
                serde_json::from_str(&std::fs::read_to_string(&to)?)?;
            let (a1, g1) = graph_from_file(&g1_file)?;
            let (_a2, g2) = graph_from_file(&g2_file)?;
            let tower = tower_of(a1)?;
            let from_level = if g1_file.level == 0 { tower.top_level } else { g1_file.level };
            let to_level = if g2_file.level == 0 {
                g2.algebra.t_nilpotency()
            } else {
                g2_file.level
            };
            let ctx = tower.context(from_level, to_level)?;
            let report = poset_compare(&g1, &g2, &ctx)?;
            println!("node matching: {:?}", report.node_map);
            println!("unmatched target nodes: {:?}", report.unmatched_right);
            println!("edges preserved: {}", report.edges_preserved);
            println!("order preserved and reflected: {}", report.order_preserved_and_reflected);
            if report.complete() {
                println!("complete poset isomorphism on the explored slices");
            } else {
                bail!("poset comparison incomplete");
            }
        }
        Command::EndoFree { complex } => {
            let (algebra, spec) = load_complex_spec(&complex)?;
            let tower = tower_of(algebra)?;
            let c = format::complex_from_file(&tower.level(tower.top_level), &spec)?;
            let ctx = tower.context(tower.top_level, 1)?;
            let free = siltlab_core::reduction::endo_free_test(&ctx, &c)?;
            println!(
                "endomorphism ring free over the base: {free} (Hom vanishing and Jordan rank \
                 test agree)"
            );
        }
        Command::Verify { suite } => {
            let run = verify::run_suite(&suite, seed)?;
            println!("suite {suite}: {} passed, {} failed", run.passed, run.failed);
            if run.failed > 0 {
                std::process::exit(1);
            }
        }
    }
    Ok(())
}

fn file_ref_of(path: &PathBuf) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default()
}

/// Module file: grading by vertex names plus one action matrix per arrow.
#[derive(serde::Deserialize)]
struct ModuleSpecFile {
    format_version: u32,
    algebra: String,
    /// Level of the tower the module lives at (must be 1 for lifting).
    #[serde(default = "default_level_one")]
    level: usize,
    grading: Vec<String>,
    actions: std::collections::BTreeMap<String, Vec<Vec<String>>>,
}

fn default_level_one() -> usize {
    1
}

fn load_module(path: &PathBuf) -> Result<(QuotientTower, FdModule)> {
    let text = std::fs::read_to_string(path)?;
    let file: ModuleSpecFile = serde_json::from_str(&text)?;
    if file.format_version != FORMAT_VERSION {
        bail!("unsupported format_version {}", file.format_version);
    }
    if file.level != 1 {
        bail!("module lifting starts at level 1");
    }
    let algebra_path = path
        .parent()
        .map(|d| d.join(&file.algebra))
        .unwrap_or_else(|| file.algebra.clone().into());
    let full = load_algebra(&algebra_path)?;
    let tower = QuotientTower::new(full)?;
    let base = tower.level(1);
    let grading = file
        .grading
        .iter()
        .map(|name| {
            base.quiver
                .vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| anyhow!("unknown vertex {name:?}"))
        })
        .collect::<Result<Vec<_>>>()?;
    let dim = grading.len();
    let mut actions = Vec::new();
    for arrow in &base.quiver.arrows {
        let rows = file
            .actions
            .get(&arrow.name)
            .ok_or_else(|| anyhow!("missing action for arrow {}", arrow.name))?;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            bail!("action for arrow {} is not {dim}×{dim}", arrow.name);
        }
        let mut m = Matrix::zero(base.field, dim, dim);
        for (i, row) in rows.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                m.set(i, j, parse_scalar(base.field, entry)?);
            }
        }
        actions.push(m);
    }
    let module = FdModule::new(base, grading, actions)?;
    Ok((tower, module))
}

/// Decompose-dependent commands refuse small prime fields where the
/// trace-form radical is unavailable.
fn guard_prime_splitting(c: &siltlab_core::ProjComplex) -> Result<()> {
    if let siltlab_core::FieldSpec::Prime(p) = c.algebra.field {
        let bound = 4 * c.algebra.dim() * c.total_summands().max(1);
        if (p as usize) <= bound {
            bail!(
                "decomposition over F_{p} may need a trace-form radical beyond its \
                 characteristic; use a prime larger than {bound}"
            );
        }
    }
    Ok(())
}
