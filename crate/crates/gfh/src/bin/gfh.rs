//! Command-line front end: JSON in, JSON out, deterministic.
//!
//! Exit codes: 0 success, 2 invalid input, 3 cell budget exceeded,
//! 4 window or shear-constraint violation, 5 nonzero rotation number.

use clap::{Args, Parser, Subcommand};
use gfh::cubegrid::{write_field_binary, write_field_json, DEFAULT_CELL_BUDGET};
use gfh::error::{GfhError, Result};
use gfh::genfam::{
    detect_spectrum, gfh, seidel_decomposition, verify_lambda_lemmas, FillingDescriptorNumeric,
    GFDescriptor, GridPlan, SeidelPlan, ShearSpec, StabSign, Window,
};
use gfh::homlin::{GradedRanks, Ring};
use gfh::legfront::{front_report, FrontDiagram};
use gfh::manifest::ManifestBuilder;
use gfh::obstruct::{
    duality_audit, fillability_obstruction, nmin_lower_bound, GFHProfile,
};
use gfh::spectop::{
    named_surrogate, pi_s_lookup, suspension_obstruction, SphereWedge, SuspensionVerdict,
};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "gfh",
    version,
    about = "Generating-family homology of Legendrians: numeric sublevel pairs, front-diagram algebra, fillability obstructions, and spectrum surrogates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numeric homology of a descriptor's difference function.
    #[command(name = "gfh-numeric")]
    GfhNumeric(GfhNumericArgs),
    /// Front-diagram pipeline: invariants, algebra, augmentations, homology.
    #[command(name = "gfh-front")]
    GfhFront(GfhFrontArgs),
    /// Numeric decomposition of a filling's sheared difference function.
    #[command(name = "verify-seidel")]
    VerifySeidel(VerifySeidelArgs),
    /// Decision procedures on a homology profile (or a front's profile).
    Obstruct(ObstructArgs),
    /// Spectrum surrogate queries: homology, stable stems, suspension test.
    Spectrum(SpectrumArgs),
}

#[derive(Args)]
struct GfhNumericArgs {
    /// Descriptor JSON file.
    descriptor: PathBuf,
    /// Samples per fiber axis of the difference grid.
    #[arg(long = "grid", default_value_t = 201)]
    grid: usize,
    /// Samples per base axis (when the base has positive dimension).
    #[arg(long = "base-grid", default_value_t = 21)]
    base_grid: usize,
    /// Lower threshold override.
    #[arg(long)]
    eps: Option<f64>,
    /// Upper threshold override.
    #[arg(long)]
    omega: Option<f64>,
    /// Apply this many quadratic stabilizations (alternating signs).
    #[arg(long, default_value_t = 0)]
    stabilize: usize,
    #[arg(long, default_value = "z2")]
    ring: Ring,
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
    /// Write the sampled difference field (.bin or .json by extension).
    #[arg(long)]
    dump_field: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GfhFrontArgs {
    /// Front JSON file.
    front: PathBuf,
    /// List augmentation assignments explicitly.
    #[arg(long)]
    list_aug: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifySeidelArgs {
    /// Filling descriptor JSON file.
    filling: PathBuf,
    #[arg(long)]
    u: Option<f64>,
    #[arg(long)]
    mu: Option<f64>,
    /// Upper threshold for the sheared pair.
    #[arg(long = "Omega")]
    omega_upper: Option<f64>,
    #[arg(long)]
    tminus: Option<f64>,
    /// Slope-check level; defaults to the midpoint of its legal interval.
    #[arg(long)]
    sigma: Option<f64>,
    /// Samples per fiber axis.
    #[arg(long = "grid", default_value_t = 161)]
    grid: usize,
    /// Samples along the cone coordinate.
    #[arg(long = "t-grid", default_value_t = 121)]
    t_grid: usize,
    #[arg(long, default_value = "z2")]
    ring: Ring,
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
    /// Write a CSV sweep of the translation functions.
    #[arg(long)]
    lambda_csv: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ObstructArgs {
    /// Profile JSON or front JSON file.
    input: PathBuf,
    /// Switch indices for the display-only construction upper bound.
    #[arg(long, value_delimiter = ',')]
    switch_indices: Vec<i64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SpectrumArgs {
    /// Expression, e.g. "S1+S1+S2 pi 3", "desusp 1 CP2 obstruct",
    /// "S2 homology", "T2 homology z2".
    expression: Vec<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::GfhNumeric(args) => cmd_gfh_numeric(args),
        Command::GfhFront(args) => cmd_gfh_front(args),
        Command::VerifySeidel(args) => cmd_verify_seidel(args),
        Command::Obstruct(args) => cmd_obstruct(args),
        Command::Spectrum(args) => cmd_spectrum(args),
    };
    match outcome {
        Ok(()) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn emit(value: &Value, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    match out {
        Some(path) => fs::write(path, text + "\n")?,
        None => println!("{text}"),
    }
    Ok(())
}

fn cmd_gfh_numeric(args: GfhNumericArgs) -> Result<()> {
    let bytes = fs::read(&args.descriptor)?;
    let doc: Value = serde_json::from_slice(&bytes)?;
    let mut descriptor = GFDescriptor::from_json(&doc)?;
    for i in 0..args.stabilize {
        descriptor =
            descriptor.stabilize(if i % 2 == 0 { StabSign::Plus } else { StabSign::Minus });
    }
    let window = match (args.eps, args.omega) {
        (Some(e), Some(o)) => Some(Window::explicit(e, o)?),
        (None, None) => None,
        _ => {
            return Err(GfhError::WindowViolation(
                "--eps and --omega must be supplied together".into(),
            ))
        }
    };
    let mut plan = GridPlan::fiber(args.grid);
    plan.base_samples = args.base_grid;
    let manifest = ManifestBuilder::new("gfh-numeric")
        .input_bytes(&args.descriptor.display().to_string(), &bytes)
        .parameters(json!({
            "grid": args.grid,
            "baseGrid": args.base_grid,
            "stabilize": args.stabilize,
            "ring": args.ring,
            "budget": args.budget,
            "window": window.map(|w| json!({"eps": w.eps, "omega": w.omega})),
        }));
    let outcome = gfh(&descriptor, &plan, window, args.ring, args.budget)?;
    for w in &outcome.warnings {
        eprintln!("warning: {w}");
    }
    if let Some(path) = &args.dump_field {
        let base = gfh::genfam::base_axes_for(&descriptor, &plan);
        let fiber = gfh::genfam::fiber_axes_for(&descriptor, &plan, &outcome.window);
        let field = descriptor.difference().sample(&base, &fiber)?;
        let file = fs::File::create(path)?;
        match path.extension().and_then(|s| s.to_str()) {
            Some("json") => write_field_json(&field, file)?,
            _ => write_field_binary(&field, file)?,
        }
    }
    let doc = json!({
        "gfh": outcome.ranks,
        "pairHomology": outcome.pair_ranks,
        "fiberDim": outcome.fiber_dim,
        "window": {"eps": outcome.window.eps, "omega": outcome.window.omega},
        "spectrum": outcome.spectrum,
        "grid": outcome.grid,
        "ring": outcome.ring,
        "manifest": manifest.finish(),
    });
    emit(&doc, args.out.as_ref())
}

fn cmd_gfh_front(args: GfhFrontArgs) -> Result<()> {
    let bytes = fs::read(&args.front)?;
    let doc: Value = serde_json::from_slice(&bytes)?;
    let front = FrontDiagram::from_json(&doc)?;
    let manifest = ManifestBuilder::new("gfh-front")
        .input_bytes(&args.front.display().to_string(), &bytes)
        .parameters(json!({"listAug": args.list_aug}));
    let report = front_report(&front)?;
    let mut doc = json!({
        "tb": report.tb,
        "rot": report.rot,
        "generators": report.generators,
        "augmentationCount": report.augmentations.len(),
        "augmentations": report.augmentations,
        "manifest": manifest.finish(),
    });
    if args.list_aug {
        let assignments: Vec<Value> = report
            .augmentations
            .iter()
            .map(|a| {
                Value::Object(
                    a.assignment
                        .iter()
                        .map(|(name, bit)| (name.clone(), json!(*bit as u8)))
                        .collect(),
                )
            })
            .collect();
        doc["assignments"] = Value::Array(assignments);
    }
    emit(&doc, args.out.as_ref())
}

fn cmd_verify_seidel(args: VerifySeidelArgs) -> Result<()> {
    let bytes = fs::read(&args.filling)?;
    let doc: Value = serde_json::from_slice(&bytes)?;
    let filling = FillingDescriptorNumeric::from_json(&doc)?;

    // Shear parameters: taken from the file when present, overridable.
    let mut spec = match doc.get("shear") {
        Some(s) => ShearSpec::from_json(s)?,
        None => ShearSpec::new(0.0, 0.0, 0.0, filling.t_minus()),
    };
    if let Some(u) = args.u {
        spec.u = u;
    }
    if let Some(mu) = args.mu {
        spec.mu = mu;
    }
    if let Some(omega) = args.omega_upper {
        spec.omega_upper = omega;
    }
    if let Some(t) = args.tminus {
        spec.t_minus = t;
    }

    let plan = SeidelPlan::new(args.t_grid, args.grid);
    let det_plan = GridPlan {
        base_samples: 2,
        fiber_samples: plan.fiber_samples,
        detection_samples: plan.detection_samples,
        margin: plan.margin,
    };
    let crits = detect_spectrum(filling.base(), &det_plan)?;
    let (lmin, lmax) = crits.spectrum_bounds().ok_or_else(|| {
        GfhError::WindowViolation("filling has an empty positive length spectrum".into())
    })?;
    spec.validate(lmin, lmax)?;
    let sigma = args.sigma.unwrap_or_else(|| 0.5 * ((spec.u * spec.u - 1.0) + lmin));
    let lambda_report = verify_lambda_lemmas(&spec, lmin, lmax, sigma, 10_000)?;
    if let Some(path) = &args.lambda_csv {
        let mut csv = String::from("t,lambda_Omega,lambda_neg_mu,lambda_sigma\n");
        let t_max = lambda_report.t_max;
        for i in 0..=1000 {
            let t = 0.5 * spec.t_minus + (t_max - 0.5 * spec.t_minus) * i as f64 / 1000.0;
            csv.push_str(&format!(
                "{t},{},{},{}\n",
                spec.lambda(spec.omega_upper, t),
                spec.lambda(-spec.mu, t),
                spec.lambda(sigma, t)
            ));
        }
        fs::write(path, csv)?;
    }

    let manifest = ManifestBuilder::new("verify-seidel")
        .input_bytes(&args.filling.display().to_string(), &bytes)
        .parameters(json!({
            "u": spec.u, "mu": spec.mu, "Omega": spec.omega_upper, "tMinus": spec.t_minus,
            "sigma": sigma, "grid": args.grid, "tGrid": args.t_grid,
            "ring": args.ring, "budget": args.budget,
        }));
    let outcome = seidel_decomposition(&filling, &spec, &plan, args.ring, args.budget)?;
    let doc = json!({
        "W": outcome.w,
        "A": outcome.a,
        "B": outcome.b,
        "C": outcome.c,
        "verdict": if outcome.matches { "MATCH" } else { "MISMATCH" },
        "lambdaChecks": lambda_report,
        "spectrum": {"lmin": outcome.lmin, "lmax": outcome.lmax},
        "tRange": [outcome.w_cut, outcome.v_cut],
        "fiberDim": outcome.fiber_dim,
        "manifest": manifest.finish(),
    });
    emit(&doc, args.out.as_ref())
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct ProfileJson {
    ranks: BTreeMap<String, GradedRanks>,
    legendrian_dim: i64,
    connected: bool,
}

fn cmd_obstruct(args: ObstructArgs) -> Result<()> {
    let bytes = fs::read(&args.input)?;
    let doc: Value = serde_json::from_slice(&bytes)?;
    let manifest = ManifestBuilder::new("obstruct")
        .input_bytes(&args.input.display().to_string(), &bytes)
        .parameters(json!({"switchIndices": args.switch_indices}));

    // A front file (has "events") yields a profile through its augmentations;
    // otherwise the file is a profile itself.
    let profile = if doc.get("events").is_some() {
        let front = FrontDiagram::from_json(&doc)?;
        let report = front_report(&front)?;
        if report.augmentations.is_empty() {
            return Err(GfhError::InvalidInput(
                "front admits no augmentations; no homology profile exists".into(),
            ));
        }
        let mut combined = GradedRanks::new();
        for aug in &report.augmentations {
            for (k, v) in aug.gfh.iter() {
                if combined.get(*k).is_trivial() {
                    combined.insert(*k, v.clone());
                }
            }
        }
        GFHProfile::single(Ring::Z2, combined, 1, true)
    } else {
        let parsed: ProfileJson = serde_json::from_value(doc)?;
        let mut ranks = BTreeMap::new();
        for (k, v) in parsed.ranks {
            ranks.insert(k.parse::<Ring>()?, v);
        }
        GFHProfile::new(ranks, parsed.legendrian_dim, parsed.connected)?
    };

    let nmin = nmin_lower_bound(&profile);
    let fillability = fillability_obstruction(&profile);
    let duality =
        profile.ranks.get(&Ring::Z2).map(|_| duality_audit(&profile)).transpose()?;
    let mut doc = json!({
        "nmin": nmin,
        "fillability": fillability,
        "duality": duality.as_ref().map(|d| if d.pass { "pass" } else { "fail" }),
        "dualityReport": duality,
        "profile": profile,
        "manifest": manifest.finish(),
    });
    if !args.switch_indices.is_empty() {
        // Display-only: the classical construction bound from supplied switch
        // indices; never computed from a ruling here.
        let max = args.switch_indices.iter().copied().max().unwrap_or(0);
        doc["nminUpperFromSwitches"] = json!(2 + max);
    }
    emit(&doc, args.out.as_ref())
}

fn cmd_spectrum(args: SpectrumArgs) -> Result<()> {
    let tokens: Vec<String> = args
        .expression
        .iter()
        .flat_map(|s| s.split_whitespace().map(str::to_string))
        .collect();
    if tokens.is_empty() {
        return Err(GfhError::InvalidInput("empty spectrum expression".into()));
    }
    let mut idx = 0usize;
    let mut shift = 0i64;
    while idx < tokens.len() && (tokens[idx] == "desusp" || tokens[idx] == "shift") {
        let sign = if tokens[idx] == "desusp" { -1 } else { 1 };
        idx += 1;
        let n: i64 = tokens.get(idx).and_then(|t| t.parse().ok()).ok_or_else(|| {
            GfhError::InvalidInput("expected an integer after desusp/shift".into())
        })?;
        shift += sign * n;
        idx += 1;
    }
    let name = tokens
        .get(idx)
        .ok_or_else(|| GfhError::InvalidInput("expected a complex name".into()))?
        .clone();
    idx += 1;
    let op = tokens.get(idx).cloned().unwrap_or_else(|| "homology".into());
    idx += 1;

    let surrogate = named_surrogate(&name)?.shifted(shift);
    let manifest =
        ManifestBuilder::new("spectrum").parameters(json!({"expression": tokens.join(" ")}));
    let result = match op.as_str() {
        "homology" => {
            let ring: Ring = tokens.get(idx).map(|t| t.parse()).transpose()?.unwrap_or(Ring::Z);
            let h = surrogate.spec_homology(ring)?;
            // Compact form: plain rank when torsion-free.
            let mut obj = serde_json::Map::new();
            for (k, v) in h.iter() {
                let val = if v.torsion.is_empty() {
                    json!(v.free)
                } else {
                    json!({"free": v.free, "torsion": v.torsion})
                };
                obj.insert(k.to_string(), val);
            }
            Value::Object(obj)
        }
        "pi" => {
            let k: i64 = tokens
                .get(idx)
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| GfhError::InvalidInput("pi needs an integer degree".into()))?;
            let wedge = SphereWedge::parse(&name)?;
            let shifted = SphereWedge::new(wedge.dims, wedge.shift + shift);
            json!(pi_s_lookup(&shifted, k)?)
        }
        "obstruct" => {
            let report = suspension_obstruction(&surrogate)?;
            let verdict = match &report.verdict {
                SuspensionVerdict::Possible => "possible".to_string(),
                SuspensionVerdict::Obstructed { reason } => match reason {
                    gfh::spectop::ObstructionReason::HomologyDegree { degree } => {
                        format!("obstructed: homology in degree {degree}")
                    }
                    gfh::spectop::ObstructionReason::SqInstability { sq, .. } => {
                        format!("obstructed: Sq{sq} instability")
                    }
                },
                SuspensionVerdict::Inconclusive { why } => format!("inconclusive: {why}"),
            };
            json!({"verdict": verdict, "homologyLevelOk": report.homology_level_ok})
        }
        other => {
            return Err(GfhError::InvalidInput(format!(
                "unknown spectrum operation {other:?}; use homology, pi, or obstruct"
            )))
        }
    };
    let doc = json!({"result": result, "manifest": manifest.finish()});
    emit(&doc, args.out.as_ref())
}
