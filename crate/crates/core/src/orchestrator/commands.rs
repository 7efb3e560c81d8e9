use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::report::{versions, Quantity, RunOutput, RunReport, Status};
use super::{ExperimentConfig, RenderSource};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::QuotientGroup;
use crate::kernel::{
    delta_kernel, divergence_check, fmt_log, induced_bowen_root, induced_loops, kernel_counts, kernel_pressure,
    DeltaKernelParams, InducedSystem,
};
use crate::ladder::Verdict;
use crate::render::{attractor_points, auto_layout, box_counting, dyadic_scales, render_image, CloudSource};
use crate::skew::{amenability_report, check_asymptotic_symmetry};
use crate::symbolic::{bowen_root, gibbs_band, gibbs_measure, pressure, spectral_data, LinearGdmsSpec, TransferMatrix};
use crate::walks::{isoperimetric_scan, srw_spectral_radius};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    DeltaFull,
    DeltaKernel,
    Amenability,
    PressureCurve,
    SymmetryCheck,
    Walks,
    Render,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::DeltaFull,
        Command::DeltaKernel,
        Command::Amenability,
        Command::PressureCurve,
        Command::SymmetryCheck,
        Command::Walks,
        Command::Render,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::DeltaFull => "delta-full",
            Command::DeltaKernel => "delta-kernel",
            Command::Amenability => "amenability",
            Command::PressureCurve => "pressure-curve",
            Command::SymmetryCheck => "symmetry-check",
            Command::Walks => "walks",
            Command::Render => "render",
        }
    }
}

struct Payload {
    results: Value,
    files: Vec<(String, Vec<u8>)>,
    status: Status,
}

impl Payload {
    fn ok(results: Value) -> Self {
        Payload { results, files: Vec::new(), status: Status::Ok }
    }

    fn file(mut self, name: &str, bytes: impl Into<Vec<u8>>) -> Self {
        self.files.push((name.to_string(), bytes.into()));
        self
    }
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

/// Runs one command; errors abort, a failed cross-check yields an `INCONSISTENT` report.
pub fn run(command: Command, config: &ExperimentConfig) -> Result<RunOutput> {
    let start = Instant::now();
    config.validate()?;
    let caps = config.effective_caps();
    let spec = config.spec()?;
    let payload = match command {
        Command::DeltaFull => delta_full(config, &spec)?,
        Command::PressureCurve => pressure_curve_cmd(config, &spec)?,
        Command::DeltaKernel => delta_kernel_cmd(config, &spec, &caps)?,
        Command::Amenability => amenability_cmd(config, &spec, &caps)?,
        Command::SymmetryCheck => symmetry_cmd(config, &spec, &caps)?,
        Command::Walks => walks_cmd(config, &caps)?,
        Command::Render => render_cmd(config, &spec, &caps)?,
    };
    let report = RunReport {
        command: command.name().to_string(),
        status: payload.status,
        config: config.clone(),
        caps,
        results: payload.results,
        outputs: payload.files.iter().map(|f| f.0.clone()).collect(),
        versions: versions(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    };
    Ok(RunOutput { report, files: payload.files })
}

fn closed_form_delta(spec: &LinearGdmsSpec) -> Option<f64> {
    let c = spec.ratios()[0];
    spec.ratios()
        .iter()
        .all(|&x| x == c)
        .then(|| (2.0 * spec.rank() as f64 - 1.0).ln() / -c.ln())
}

fn pressure_csv(spec: &LinearGdmsSpec, config: &ExperimentConfig) -> Result<(String, Vec<(f64, f64)>)> {
    let p = &config.pressure;
    let grid: Vec<f64> =
        (0..p.steps).map(|k| p.s_min + (p.s_max - p.s_min) * k as f64 / (p.steps - 1) as f64).collect();
    let rows: Vec<(f64, crate::symbolic::SpectralData)> = grid
        .par_iter()
        .map(|&s| Ok((s, spectral_data(&TransferMatrix::new(spec, s))?)))
        .collect::<Result<_>>()?;
    let mut csv = String::from("s,pressure,rho,iterations,residual\n");
    let mut curve = Vec::with_capacity(rows.len());
    for (s, sd) in &rows {
        csv.push_str(&format!("{s:.6},{:.15e},{:.15e},{},{:.3e}\n", sd.rho.ln(), sd.rho, sd.iterations, sd.residual));
        curve.push((*s, sd.rho.ln()));
    }
    Ok((csv, curve))
}

fn delta_full(config: &ExperimentConfig, spec: &LinearGdmsSpec) -> Result<Payload> {
    let root = bowen_root(spec)?;
    let (csv, _) = pressure_csv(spec, config)?;
    let results = json!({
        "delta": Quantity::numerical(root.s, 1e-12),
        "closed_form": closed_form_delta(spec).map(Quantity::exact),
        "pressure_at_root": root.pressure,
        "bisection_steps": root.bisection_steps,
        "newton_steps": root.newton_steps,
    });
    Ok(Payload::ok(results).file("pressure_curve.csv", csv))
}

fn pressure_curve_cmd(config: &ExperimentConfig, spec: &LinearGdmsSpec) -> Result<Payload> {
    let (csv, curve) = pressure_csv(spec, config)?;
    let decreasing = curve.windows(2).all(|w| w[1].1 < w[0].1);
    let convex = curve.windows(3).all(|w| w[1].1 <= 0.5 * (w[0].1 + w[2].1) + 1e-12);
    let root = bowen_root(spec)?;
    let gibbs = gibbs_measure(spec, root.s)?;
    let band = gibbs_band(&gibbs, spec.rank(), config.pressure.gibbs_max_len);
    let mut band_csv = String::from("n,min_ratio,max_ratio,width\n");
    for (n, (lo, hi)) in band.iter().enumerate() {
        band_csv.push_str(&format!("{},{lo:.15e},{hi:.15e},{:.15e}\n", n + 1, hi / lo));
    }
    let widths: Vec<f64> = band.iter().map(|(lo, hi)| hi / lo).collect();
    let results = json!({
        "points": curve.len(),
        "strictly_decreasing": decreasing,
        "convex": convex,
        "delta": Quantity::numerical(root.s, 1e-12),
        "pressure_at_zero": Quantity::numerical(pressure(spec, 0.0)?, 1e-12),
        "gibbs": {
            "s": root.s,
            "stationary": gibbs.pi,
            "band_width_by_length": widths,
        },
    });
    Ok(Payload::ok(results).file("pressure_curve.csv", csv).file("gibbs_band.csv", band_csv))
}

fn induced_ladder(spec: &LinearGdmsSpec, group: &QuotientGroup, cutoffs: &[usize], caps: &Caps) -> Result<(Value, Option<InducedSystem>)> {
    let mut rows = Vec::new();
    let mut last = None;
    for &l in cutoffs {
        let sys = induced_loops(spec, group, l, caps)?;
        let root = match induced_bowen_root(&sys, spec) {
            Ok(r) => json!(Quantity::numerical(r.s, 1e-12)),
            Err(Error::InvalidInput(msg)) => json!({ "error": msg }),
            Err(e) => return Err(e),
        };
        rows.push(json!({ "l_max": l, "loops": sys.loops.len(), "root": root }));
        last = Some(sys);
    }
    Ok((Value::Array(rows), last))
}

fn delta_kernel_cmd(config: &ExperimentConfig, spec: &LinearGdmsSpec, caps: &Caps) -> Result<Payload> {
    let group = config.quotient_group("delta-kernel")?;
    let params = DeltaKernelParams { n_max: config.kernel.n_max, tol: config.kernel.tol };
    let dk = delta_kernel(spec, &group, &params, caps)?;
    let div = divergence_check(spec, &group, config.kernel.divergence_n_max, caps)?;
    let table = kernel_counts(spec, &group, dk.delta_full, config.kernel.n_max, caps)?;
    let kp = match kernel_pressure(&table) {
        Ok(k) => to_value(&k),
        Err(Error::InvalidInput(msg)) => json!({ "error": msg }),
        Err(e) => return Err(e),
    };
    let (induced, last) = induced_ladder(spec, &group, &config.kernel.induced_l_max, caps)?;
    let delta_n = if dk.method == "exact" {
        Quantity::exact(dk.estimate)
    } else {
        Quantity::estimate(dk.estimate, dk.bracket)
    };
    let results = json!({
        "delta_full": Quantity::numerical(dk.delta_full, 1e-12),
        "delta_kernel": delta_n,
        "ratio": dk.ratio,
        "half_bound_strict": dk.bracket.0 > dk.delta_full / 2.0,
        "details": dk,
        "kernel_pressure_at_delta_full": kp,
        "divergence": {
            "s": div.s,
            "period": div.period,
            "nondecreasing_tail": div.nondecreasing_tail,
            "min_log_term_tail": div.min_log_term_tail,
            "exact_counts": div.exact_counts,
        },
        "induced": induced,
    });
    let mut div_csv = String::from("n,log_term,log_partial_sum\n");
    for (n, (t, p)) in div.log_terms.iter().zip(&div.log_partial_sums).enumerate() {
        div_csv.push_str(&format!("{},{},{}\n", n + 1, fmt_log(*t), fmt_log(*p)));
    }
    let mut payload =
        Payload::ok(results).file("kernel_counts.csv", table.to_csv()).file("divergence.csv", div_csv);
    if let Some(sys) = last {
        payload = payload.file("induced_loops.json", serde_json::to_string_pretty(&sys)? + "\n");
    }
    Ok(payload)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CrossCheck {
    Agree,
    /// at least one side is inconclusive
    Undecided,
    Inconsistent,
}

/// Combines the skew-operator and random-walk verdicts.
pub fn cross_check(skew: Verdict, walk: Verdict) -> CrossCheck {
    match (skew, walk) {
        (a, b) if a == b && a != Verdict::Inconclusive => CrossCheck::Agree,
        (Verdict::Inconclusive, _) | (_, Verdict::Inconclusive) => CrossCheck::Undecided,
        _ => CrossCheck::Inconsistent,
    }
}

fn amenability_cmd(config: &ExperimentConfig, spec: &LinearGdmsSpec, caps: &Caps) -> Result<Payload> {
    let group = config.quotient_group("amenability")?;
    if !spec.is_symmetric() {
        return Err(Error::Config("dichotomy requires symmetric GDMS (gdms.ratios must satisfy c(g) = c(g^-1))".into()));
    }
    let a = &config.amenability;
    let skew = amenability_report(spec, &group, &a.radii, a.kernel_n_max, caps)?;
    let walk = srw_spectral_radius(&group, &a.walk_radii, caps)?;
    let check = cross_check(skew.verdict, walk.verdict);
    let mut skew_csv = String::from("R,rho_R,iterations,residual\n");
    for (r, s) in skew.radii.iter().zip(&skew.solves) {
        skew_csv.push_str(&format!("{r},{:.15e},{},{:.3e}\n", s.rho, s.iterations, s.residual));
    }
    let results = json!({
        "cross_check": check,
        "skew": skew,
        "walk": walk,
        "plateau_rule": "non-amenable requires |limit(last window) - limit(previous window)| < plateau_tol; limits extrapolate rho_inf - A/(R+c)^2 from three radii",
    });
    let mut payload = Payload::ok(results).file("skew_ladder.csv", skew_csv).file("walk_ladder.csv", walk.to_csv());
    if check == CrossCheck::Inconsistent {
        payload.status = Status::Inconsistent;
    }
    Ok(payload)
}

fn symmetry_cmd(config: &ExperimentConfig, spec: &LinearGdmsSpec, caps: &Caps) -> Result<Payload> {
    let group = config.quotient_group("symmetry-check")?;
    let p = &config.symmetry;
    let s = match p.s {
        Some(s) => s,
        None => bowen_root(spec)?.s,
    };
    let rep = check_asymptotic_symmetry(spec, &group, s, p.n_max, p.radius, caps)?;
    let mut csv = String::from("n,max_relative_asymmetry,min_ratio,max_ratio,elements\n");
    for r in &rep.rows {
        csv.push_str(&format!(
            "{},{:.6e},{:.15e},{:.15e},{}\n",
            r.n, r.max_relative_asymmetry, r.min_ratio, r.max_ratio, r.elements_compared
        ));
    }
    Ok(Payload::ok(to_value(&rep)).file("symmetry.csv", csv))
}

fn walks_cmd(config: &ExperimentConfig, caps: &Caps) -> Result<Payload> {
    let group = config.quotient_group("walks")?;
    let ladder = srw_spectral_radius(&group, &config.walks.radii, caps)?;
    let iso = isoperimetric_scan(&group, config.walks.iso_radius, caps)?;
    let results = json!({ "srw": ladder, "isoperimetric": iso });
    Ok(Payload::ok(results)
        .file("walk_ladder.csv", ladder.to_csv())
        .file("isoperimetric.json", serde_json::to_string_pretty(&iso)? + "\n"))
}

fn render_cmd(config: &ExperimentConfig, spec: &LinearGdmsSpec, caps: &Caps) -> Result<Payload> {
    let r = &config.render;
    let real = auto_layout(spec, r.dim)?;
    let delta_full = bowen_root(spec)?.s;
    let (cloud, reference) = match r.source {
        RenderSource::Full => (attractor_points(&real, r.depth, CloudSource::Full, caps)?, json!({"delta_full": delta_full})),
        RenderSource::Induced => {
            let group = config.quotient_group("render with source = induced")?;
            let sys = induced_loops(spec, &group, r.l_max, caps)?;
            let root = induced_bowen_root(&sys, spec)?;
            let cloud = attractor_points(&real, r.depth, CloudSource::Induced(&sys), caps)?;
            (cloud, json!({"delta_full": delta_full, "induced_root": Quantity::numerical(root.s, 1e-12), "loops": sys.loops.len()}))
        }
    };
    let scales = dyadic_scales(r.coarsest_scale, r.scale_count);
    let bc = box_counting(&cloud, &scales)?;
    let image = render_image(&real, &cloud, r.resolution);
    let results = json!({
        "dim": r.dim,
        "points": cloud.len(),
        "min_osc_gap": real.min_gap,
        "box_counting": bc,
        "slope": Quantity::estimate(bc.slope, (bc.slope - bc.residual, bc.slope + bc.residual)),
        "reference": reference,
        "image": { "width": image.width, "height": image.height, "lit_pixels": image.lit_count() },
    });
    let mut payload = Payload::ok(results).file("attractor.pgm", image.to_pgm());
    if r.write_points {
        payload = payload.file("points.csv", cloud.to_csv());
    }
    Ok(payload)
}
