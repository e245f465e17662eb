//! Command-line driver: catalog generation, lifting reports, theorem
//! verification and DOT export.
//!
//! Exit codes: 0 on success, 1 when verification fails, 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use xmodkit_core::catalog::{self, Catalog};
use xmodkit_core::equivalence::eta;
use xmodkit_core::groupoid::{action_groupoid, to_dot, Groupoid};
use xmodkit_core::lifting::{
    action_from_lifting, enumerate_liftings, find_lifting_isomorphism, Lifting,
};
use xmodkit_core::serial::XModJson;
use xmodkit_core::verify::{run_verify, Scope};
use xmodkit_core::xmod::{classify_xmod_transitivity, CrossedModule};

#[derive(Parser)]
#[command(
    name = "xmodkit",
    version,
    about = "Finite crossed modules, group-groupoids and lifting enumeration"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the group/crossed-module/lifting catalog and write it as JSON
    Catalog(CatalogArgs),
    /// Report the liftings of one crossed module
    Liftings(LiftingsArgs),
    /// Run the theorem suites over a catalog
    Verify(VerifyArgs),
    /// Export a groupoid or group-groupoid as a DOT graph
    ExportDot(ExportDotArgs),
}

#[derive(Args)]
struct CatalogArgs {
    /// Largest group order to include (soft cap 16, hard cap 24 via --cap)
    #[arg(long, default_value_t = 8)]
    max_order: usize,
    /// Raise the soft cap, up to the hard cap of 24
    #[arg(long, default_value_t = catalog::DEFAULT_MAX_ORDER)]
    cap: usize,
    /// Output path for the catalog JSON
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct LiftingsArgs {
    /// Catalog id (e.g. xm00042) or a path to a crossed-module JSON file
    #[arg(long)]
    xmod: String,
    /// Catalog file, required when --xmod names a catalog id
    #[arg(long)]
    catalog: Option<PathBuf>,
    /// Emit the table as JSON instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Catalog file to verify
    #[arg(long)]
    catalog: PathBuf,
    /// Restrict to one module's suites
    #[arg(long, default_value = "all")]
    scope: String,
}

#[derive(Args)]
struct ExportDotArgs {
    /// Object reference: eta:<xmod-id>, action:<xmod-id>/<lifting-index>,
    /// discrete:<group-label> or one-object:<group-label>
    #[arg(long = "ref")]
    reference: String,
    /// Output path for the DOT text
    #[arg(long)]
    out: PathBuf,
    /// Keep identity morphisms in the drawing
    #[arg(long)]
    include_identities: bool,
    /// Catalog file, required for catalog-backed references
    #[arg(long)]
    catalog: Option<PathBuf>,
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("XMODKIT_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n.max(1))
                .build_global()
                .ok();
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Catalog(args) => cmd_catalog(args),
        Command::Liftings(args) => cmd_liftings(args),
        Command::Verify(args) => cmd_verify(args),
        Command::ExportDot(args) => cmd_export_dot(args),
    };
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn cmd_catalog(args: CatalogArgs) -> Result<ExitCode> {
    if args.cap > catalog::HARD_CAP {
        bail!("cap {} exceeds the hard cap {}", args.cap, catalog::HARD_CAP);
    }
    if args.max_order > args.cap {
        bail!("max order {} exceeds the cap {}", args.max_order, args.cap);
    }
    let cat = catalog::generate_catalog(args.max_order)?;
    cat.save(&args.out)
        .with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {}: {} groups, {} crossed modules, {} liftings",
        args.out.display(),
        cat.groups.len(),
        cat.xmods.len(),
        cat.liftings.len()
    );
    Ok(ExitCode::SUCCESS)
}

fn load_xmod(reference: &str, catalog_path: &Option<PathBuf>) -> Result<Arc<CrossedModule>> {
    if reference.starts_with("xm") && !reference.contains(['/', '.']) {
        let path = catalog_path
            .as_ref()
            .ok_or_else(|| anyhow!("--catalog is required for catalog id {reference}"))?;
        let cat = Catalog::load(path).with_context(|| format!("loading {}", path.display()))?;
        Ok(cat.xmod(reference)?.xmod.clone())
    } else {
        let text =
            std::fs::read_to_string(reference).with_context(|| format!("reading {reference}"))?;
        let json: XModJson = serde_json::from_str(&text)?;
        Ok(Arc::new(json.to_xmod()?))
    }
}

fn lifting_rows(
    liftings: &[Lifting],
) -> Vec<(usize, Vec<usize>, usize, Option<usize>, String, usize)> {
    liftings
        .iter()
        .enumerate()
        .map(|(i, l)| {
            let class = liftings[..=i]
                .iter()
                .position(|r| find_lifting_isomorphism(r, l).is_some())
                .unwrap_or(i);
            (
                i,
                l.kernel().elements().to_vec(),
                l.x_group().order(),
                l.degree(),
                classify_xmod_transitivity(&l.as_xmod()).to_string(),
                class,
            )
        })
        .collect()
}

fn cmd_liftings(args: LiftingsArgs) -> Result<ExitCode> {
    let xm = load_xmod(&args.xmod, &args.catalog)?;
    let liftings = enumerate_liftings(&xm);
    let rows = lifting_rows(&liftings);
    if args.json {
        let items: Vec<serde_json::Value> = rows
            .iter()
            .map(|(i, kernel, x_order, degree, flags, class)| {
                serde_json::json!({
                    "index": i,
                    "kernel": kernel,
                    "x_order": x_order,
                    "degree": degree,
                    "flags": flags,
                    "iso_class": class,
                })
            })
            .collect();
        println!("{}", serde_json::to_string_pretty(&items)?);
    } else {
        println!(
            "liftings of ({}, {}, alpha): {} total",
            xm.a().label(),
            xm.b().label(),
            rows.len()
        );
        println!(
            "{:<4} {:<16} {:<5} {:<7} {:<40} class",
            "idx", "kernel", "|X|", "degree", "flags"
        );
        for (i, kernel, x_order, degree, flags, class) in &rows {
            let degree = degree.map_or("-".to_string(), |d| d.to_string());
            println!(
                "{i:<4} {:<16} {x_order:<5} {degree:<7} {flags:<40} {class}",
                format!("{kernel:?}")
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let scope: Scope = args.scope.parse().map_err(|e: String| anyhow!(e))?;
    let (cat, failures) = catalog::load_report(&args.catalog)
        .with_context(|| format!("loading {}", args.catalog.display()))?;
    if !failures.is_empty() {
        println!("catalog revalidation: FAIL ({} entries)", failures.len());
        for f in failures.iter().take(10) {
            println!("    witness: {f}");
        }
        return Ok(ExitCode::from(1));
    }
    let cat = cat.expect("no failures implies a catalog");
    println!(
        "catalog revalidation: PASS ({} groups, {} crossed modules, {} liftings)",
        cat.groups.len(),
        cat.xmods.len(),
        cat.liftings.len()
    );
    let report = run_verify(&cat, scope);
    print!("{}", report.render());
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn resolve_groupoid(reference: &str, catalog_path: &Option<PathBuf>) -> Result<Groupoid> {
    let need_catalog = || -> Result<Catalog> {
        let path = catalog_path
            .as_ref()
            .ok_or_else(|| anyhow!("--catalog is required for reference {reference}"))?;
        Catalog::load(path).with_context(|| format!("loading {}", path.display()))
    };
    if let Some(id) = reference.strip_prefix("eta:") {
        let xm = load_xmod(id, catalog_path)?;
        Ok(eta(&xm).groupoid().clone())
    } else if let Some(rest) = reference.strip_prefix("action:") {
        let (id, index) = rest
            .split_once('/')
            .ok_or_else(|| anyhow!("expected action:<xmod-id>/<lifting-index>"))?;
        let index: usize = index.parse().context("lifting index")?;
        let xm = load_xmod(id, catalog_path)?;
        let liftings = enumerate_liftings(&xm);
        let l = liftings.get(index).ok_or_else(|| {
            anyhow!("lifting index {index} out of range ({} liftings)", liftings.len())
        })?;
        let act = action_from_lifting(l);
        let (total, _) = action_groupoid(act.underlying())?;
        Ok(total)
    } else if let Some(label) = reference.strip_prefix("discrete:") {
        let cat = need_catalog()?;
        Ok(Groupoid::discrete(cat.group(label)?.order()))
    } else if let Some(label) = reference.strip_prefix("one-object:") {
        let cat = need_catalog()?;
        Ok(Groupoid::one_object(cat.group(label)?))
    } else {
        bail!("unknown reference {reference}; expected eta:, action:, discrete: or one-object:")
    }
}

fn cmd_export_dot(args: ExportDotArgs) -> Result<ExitCode> {
    let groupoid = resolve_groupoid(&args.reference, &args.catalog)?;
    let dot = to_dot(&groupoid, &args.reference, args.include_identities);
    std::fs::write(&args.out, dot).with_context(|| format!("writing {}", args.out.display()))?;
    println!(
        "wrote {}: {} objects, {} morphisms",
        args.out.display(),
        groupoid.n_objects(),
        groupoid.n_morphisms()
    );
    Ok(ExitCode::SUCCESS)
}
