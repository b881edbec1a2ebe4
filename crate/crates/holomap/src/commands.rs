use circuit_emitter::{emit_program, squeezing_params, EmitOptions, Target};
use gaussian_engine::{central_charge, entropy_bits, ground_covariance, purity, thermal_covariance, CovarianceState};
use holography::{
    fit_curvature, massive_asymptotics, massless_asymptotics, mutual_information_asymptotic, same_scale_distance,
    single_site_entropy_closed_form, spatial_fit_window, temporal_fit_window, temporal_series, Asymptotic,
    BulkCorrelator, BulkPoint, Field, TemporalMode,
};
use lattice_model::{boundary_coupling, boundary_spectrum, wavelet_transform_matrix, LatticeSpec, OverlapMode};
use overlap_solver::OverlapTables;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::f64::consts::PI;

use crate::cli::{Command, CorrelationKind, TargetArg};
use crate::config::{Format, PolicyArg, RunConfig};
use crate::error::CliError;
use crate::table::{real, Cell, Table};
use crate::verify;

/// One output file; `stdout` marks what is printed when no directory is given.
pub struct Artifact {
    pub name: String,
    pub body: String,
    pub stdout: bool,
}

pub struct Outcome {
    pub artifacts: Vec<Artifact>,
    pub failed: bool,
}

impl Outcome {
    fn single(name: &str, body: String) -> Self {
        Self { artifacts: vec![Artifact { name: name.to_string(), body, stdout: true }], failed: false }
    }

    fn table(stem: &str, table: &Table, format: Format) -> Result<Self, CliError> {
        Ok(Self::single(&format!("{stem}.{}", format.extension()), table.render(format)?))
    }
}

/// Boundary ground state, or thermal state when β is set.
pub fn boundary_state(cfg: &RunConfig, spec: &LatticeSpec, fallback: PolicyArg) -> Result<CovarianceState, CliError> {
    let k = boundary_coupling(spec)?;
    let policy = cfg.zero_mode(spec, fallback)?;
    Ok(match cfg.beta {
        Some(b) => thermal_covariance(&k, b, policy)?,
        None => ground_covariance(&k, policy)?,
    })
}

fn scale_arg(r: Option<usize>, spec: &LatticeSpec) -> Result<usize, CliError> {
    let r = r.unwrap_or(spec.scales() / 2);
    if r >= spec.scales() {
        return Err(CliError::Validation(format!("scale r={r} must be below n={}", spec.scales())));
    }
    Ok(r)
}

fn separation_limit(j_max: Option<usize>, spec: &LatticeSpec, r: usize) -> Result<usize, CliError> {
    let block = spec.block_len(r);
    match j_max {
        Some(j) if j >= block => Err(CliError::Validation(format!("j_max={j} must be below {block} at scale {r}"))),
        Some(j) => Ok(j),
        None => Ok(spatial_fit_window(spec.family().k(), spec.ring(), r).1.min(block - 1)),
    }
}

fn overlap_mode(sampled: bool) -> OverlapMode {
    if sampled {
        OverlapMode::Sampled
    } else {
        OverlapMode::Exact
    }
}

pub fn run(command: &Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.spec()?;
    match command {
        Command::Overlaps => overlaps(cfg, &spec),
        Command::Spectrum => spectrum(cfg, &spec),
        Command::Transform { dump, threshold } => transform(cfg, &spec, *dump, *threshold),
        Command::Correlations { kind, r, j_max, sampled, points, site } => match kind {
            CorrelationKind::Bulk => bulk_correlations(cfg, &spec, *r, *j_max, *sampled),
            CorrelationKind::Boundary => boundary_correlations(cfg, &spec),
            CorrelationKind::Temporal => temporal_correlations(cfg, &spec, *r, *site, *points),
        },
        Command::MutualInfo { r, j_max, cross, sampled } => mutual_info(cfg, &spec, *r, *j_max, *cross, *sampled),
        Command::Entropy { bulk, ell_max } => entropy(cfg, &spec, *bulk, *ell_max),
        Command::CentralCharge { l1, l2 } => {
            let state = boundary_state(cfg, &spec, PolicyArg::Regularized)?;
            let c = central_charge(&state, *l1, *l2)?;
            let mut t = Table::new(&["l1", "l2", "central_charge"]);
            t.push(vec![(*l1).into(), (*l2).into(), c.into()]);
            Outcome::table("central_charge", &t, cfg.format)
        }
        Command::CurvatureFit { r } => curvature(cfg, &spec, *r),
        Command::Circuit { target, givens, strict } => {
            let target = match target {
                TargetArg::Boundary => Target::Boundary,
                TargetArg::Bulk => Target::Bulk,
            };
            let allow_deflated = !*strict && cfg.policy != Some(PolicyArg::None);
            let program = emit_program(&spec, target, cfg.beta, EmitOptions { givens: *givens, allow_deflated })?;
            Ok(Outcome::single("circuit.json", program.to_json()? + "\n"))
        }
        Command::Verify { simulate } => {
            let (table, failed) = verify::run(cfg, &spec, simulate.as_deref())?;
            let mut out = Outcome::table("verify", &table, cfg.format)?;
            out.failed = failed;
            Ok(out)
        }
    }
}

fn overlaps(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Outcome, CliError> {
    let tables = OverlapTables::compute(spec.family(), spec.ring(), spec.scales())?;
    let mut t = Table::new(&["block", "lev", "j", "a", "b", "value"]);
    for (m, &v) in tables.dss_row().iter().enumerate() {
        t.push(vec!["ss".into(), 0.into(), 0.into(), 0.into(), m.into(), v.into()]);
    }
    let push_block = |t: &mut Table, name: &str, lev: usize, j: usize, d: &nalgebra::DMatrix<f64>| {
        for a in 0..d.nrows() {
            for b in 0..d.ncols() {
                if d[(a, b)] != 0.0 {
                    t.push(vec![name.into(), lev.into(), j.into(), a.into(), b.into(), d[(a, b)].into()]);
                }
            }
        }
    };
    for lev in 0..spec.scales() {
        push_block(&mut t, "sw", lev, 0, tables.dsw(lev));
    }
    for lev in 0..spec.scales() {
        for j in 0..=lev {
            push_block(&mut t, "ww", lev, j, tables.dww(lev, j));
        }
    }
    Outcome::table("overlaps", &t, cfg.format)
}

fn spectrum(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Outcome, CliError> {
    let d = boundary_spectrum(spec)?;
    let squeezing = squeezing_params(spec)?;
    let mut alpha = vec![None; d.len()];
    for &(j, a) in &squeezing.alpha {
        alpha[j] = Some(a);
    }
    let v = d.len() as f64;
    let mut t = Table::new(&["j", "k", "d", "alpha"]);
    for (j, &dj) in d.iter().enumerate() {
        t.push(vec![j.into(), (2.0 * PI * j as f64 / v).into(), dj.into(), alpha[j].into()]);
    }
    Outcome::table("spectrum", &t, cfg.format)
}

fn transform(cfg: &RunConfig, spec: &LatticeSpec, dump: bool, threshold: f64) -> Result<Outcome, CliError> {
    if !(threshold >= 0.0) {
        return Err(CliError::Validation(format!("threshold must be non-negative, got {threshold}")));
    }
    let w = wavelet_transform_matrix(spec)?;
    let v = w.nrows();
    if !dump {
        let small = w.iter().filter(|x| x.abs() < threshold).count();
        let mut t = Table::new(&["modes", "entries", "negligible", "threshold", "sparsity"]);
        t.push(vec![v.into(), w.len().into(), small.into(), threshold.into(), (small as f64 / w.len() as f64).into()]);
        return Outcome::table("transform_summary", &t, cfg.format);
    }
    match cfg.format {
        Format::Csv => {
            let header: Vec<String> = std::iter::once("row".to_string()).chain((0..v).map(|c| format!("c{c}"))).collect();
            let mut t = Table::new(&header);
            for i in 0..v {
                t.push(std::iter::once(Cell::from(i)).chain(w.row(i).iter().map(|&x| Cell::from(x))).collect());
            }
            Outcome::table("transform", &t, Format::Csv)
        }
        Format::Json => {
            let entries: Vec<Value> = (0..v)
                .flat_map(|i| (0..v).map(move |j| (i, j)))
                .filter(|&(i, j)| w[(i, j)] != 0.0)
                .map(|(i, j)| json!([i, j, real_number(w[(i, j)])]))
                .collect();
            let doc = json!({ "rows": v, "cols": v, "entries": entries });
            Ok(Outcome::single("transform.json", serde_json::to_string(&doc)? + "\n"))
        }
    }
}

fn real_number(x: f64) -> Value {
    real(x).parse::<serde_json::Number>().map(Value::Number).unwrap_or(Value::Null)
}

fn bulk_correlations(
    cfg: &RunConfig,
    spec: &LatticeSpec,
    r: Option<usize>,
    j_max: Option<usize>,
    sampled: bool,
) -> Result<Outcome, CliError> {
    let r = scale_arg(r, spec)?;
    let j_max = separation_limit(j_max, spec, r)?;
    let state = boundary_state(cfg, spec, PolicyArg::Deflated)?;
    let bc = BulkCorrelator::with_level(&state, overlap_mode(sampled), cfg.resolution)?;
    let js: Vec<usize> = (0..=j_max).collect();
    let phi = bc.same_scale(Field::Phi, r, &js)?;
    let pi = bc.same_scale(Field::Pi, r, &js)?;
    let (family, n) = (spec.family(), spec.scales());
    let far = |j: usize| j > family.support_end();
    let prediction = |j: usize, field: Field| -> Result<Option<f64>, CliError> {
        if cfg.beta.is_some() {
            return Ok(None);
        }
        if spec.mass() > 0.0 {
            return Ok(if far(j) { Some(massive_asymptotics(family, n, r, j, spec.mass(), field)?) } else { None });
        }
        let which = match (j, field, far(j)) {
            (0, Field::Phi, _) => Asymptotic::SelfPhi,
            (0, Field::Pi, _) => Asymptotic::SelfPi,
            (_, Field::Phi, true) => Asymptotic::PhiPhi,
            (_, Field::Pi, true) => Asymptotic::PiPi,
            _ => return Ok(None),
        };
        Ok(Some(massless_asymptotics(family, n, r, j, which)?))
    };
    let mut t = Table::new(&["r", "j", "phi", "pi", "phi_asymptotic", "pi_asymptotic"]);
    for (i, &j) in js.iter().enumerate() {
        t.push(vec![
            r.into(),
            j.into(),
            phi[i].into(),
            pi[i].into(),
            prediction(j, Field::Phi)?.into(),
            prediction(j, Field::Pi)?.into(),
        ]);
    }
    Outcome::table("correlations_bulk", &t, cfg.format)
}

fn boundary_correlations(cfg: &RunConfig, spec: &LatticeSpec) -> Result<Outcome, CliError> {
    let state = boundary_state(cfg, spec, PolicyArg::Regularized)?;
    let mut t = Table::new(&["delta", "phi", "pi"]);
    for delta in 0..=spec.modes() / 2 {
        t.push(vec![delta.into(), state.phi_entry(0, delta).into(), state.pi_entry(0, delta).into()]);
    }
    Outcome::table("correlations_boundary", &t, cfg.format)
}

fn temporal_correlations(
    cfg: &RunConfig,
    spec: &LatticeSpec,
    r: Option<usize>,
    site: usize,
    points: usize,
) -> Result<Outcome, CliError> {
    let r = scale_arg(r, spec)?;
    if points < 2 {
        return Err(CliError::Validation("need at least 2 temporal points".into()));
    }
    let (lo, hi) = temporal_fit_window(spec.family().k(), spec.ring(), spec.scales(), r);
    if lo >= hi {
        return Err(CliError::Validation(format!("empty temporal window ({lo}, {hi}] at r={r}")));
    }
    let taus: Vec<f64> = (1..=points).map(|i| lo * (hi / lo).powf(i as f64 / points as f64)).collect();
    let exact = temporal_series(spec, r, site, &taus, TemporalMode::Exact)?;
    let asym = if spec.mass() == 0.0 {
        temporal_series(spec, r, site, &taus, TemporalMode::Asymptotic)?.into_iter().map(Some).collect()
    } else {
        vec![None; taus.len()]
    };
    let mut t = Table::new(&["r", "j", "tau", "exact", "asymptotic"]);
    for i in 0..taus.len() {
        t.push(vec![r.into(), site.into(), taus[i].into(), exact[i].into(), asym[i].into()]);
    }
    Outcome::table("correlations_temporal", &t, cfg.format)
}

fn mutual_info(
    cfg: &RunConfig,
    spec: &LatticeSpec,
    r: Option<usize>,
    j_max: Option<usize>,
    cross: bool,
    sampled: bool,
) -> Result<Outcome, CliError> {
    let r = scale_arg(r, spec)?;
    let state = boundary_state(cfg, spec, PolicyArg::Deflated)?;
    let bc = BulkCorrelator::with_level(&state, overlap_mode(sampled), cfg.resolution)?;
    if cross {
        let others: Vec<usize> = (0..spec.scales()).filter(|&q| q != r).collect();
        let values = others
            .par_iter()
            .map(|&q| bc.mutual_information(&BulkPoint::new(r, 0), &BulkPoint::new(q, 0)))
            .collect::<Result<Vec<f64>, _>>()?;
        let mut t = Table::new(&["r", "r_prime", "mutual_information"]);
        for (&q, &i) in others.iter().zip(&values) {
            t.push(vec![r.into(), q.into(), i.into()]);
        }
        return Outcome::table("mutual_info_cross", &t, cfg.format);
    }
    let j_max = separation_limit(j_max, spec, r)?;
    let js: Vec<usize> = (1..=j_max).collect();
    let mi = bc.same_scale_mutual_information(r, &js)?;
    let massless_ground = spec.mass() == 0.0 && cfg.beta.is_none();
    let mut t = Table::new(&["r", "j", "mutual_information", "asymptotic"]);
    for (&j, &i) in js.iter().zip(&mi) {
        let asym = if massless_ground && j > spec.family().support_end() {
            Some(mutual_information_asymptotic(spec.family(), j)?)
        } else {
            None
        };
        t.push(vec![r.into(), j.into(), i.into(), asym.into()]);
    }
    Outcome::table("mutual_info", &t, cfg.format)
}

fn entropy(cfg: &RunConfig, spec: &LatticeSpec, bulk: bool, ell_max: usize) -> Result<Outcome, CliError> {
    if bulk {
        let state = boundary_state(cfg, spec, PolicyArg::Deflated)?;
        let bc = BulkCorrelator::with_level(&state, OverlapMode::Exact, cfg.resolution)?;
        let closed = (spec.mass() == 0.0 && cfg.beta.is_none()).then(|| single_site_entropy_closed_form(spec.family()));
        let mut t = Table::new(&["r", "entropy_bits", "deep_bulk_closed_form"]);
        for r in 0..spec.scales() {
            t.push(vec![r.into(), bc.entropy(&BulkPoint::new(r, 0))?.into(), closed.into()]);
        }
        return Outcome::table("entropy_bulk", &t, cfg.format);
    }
    if ell_max == 0 || ell_max >= spec.modes() {
        return Err(CliError::Validation(format!("ell_max must be in 1..{}", spec.modes())));
    }
    let state = boundary_state(cfg, spec, PolicyArg::Regularized)?;
    let rows = (1..=ell_max)
        .into_par_iter()
        .map(|ell| {
            let g = state.reduced_flat(&(0..ell).collect::<Vec<_>>())?;
            Ok((ell, entropy_bits(&g)?, purity(&g)?))
        })
        .collect::<Result<Vec<_>, gaussian_engine::GaussianError>>()?;
    let mut t = Table::new(&["ell", "entropy_bits", "purity"]);
    for (ell, s, p) in rows {
        t.push(vec![ell.into(), s.into(), p.into()]);
    }
    Outcome::table("entropy", &t, cfg.format)
}

fn curvature(cfg: &RunConfig, spec: &LatticeSpec, r: Option<usize>) -> Result<Outcome, CliError> {
    let r = scale_arg(r, spec)?;
    let k = spec.family().k();
    let state = boundary_state(cfg, spec, PolicyArg::Deflated)?;
    let bc = BulkCorrelator::with_level(&state, OverlapMode::Exact, cfg.resolution)?;
    let (lo, hi) = spatial_fit_window(k, spec.ring(), r);
    let hi = hi.min(spec.block_len(r) - 1);
    let js: Vec<usize> = (lo + 1..=hi).collect();
    let mi = bc.same_scale_mutual_information(r, &js)?;
    let s0 = bc.entropy(&BulkPoint::new(r, 0))?;
    let samples: Vec<(f64, f64)> = js.iter().zip(&mi).map(|(&j, &i)| (j as f64, i)).collect();
    let fit = fit_curvature(&samples, s0, k)?;
    let record = json!({
        "k": k,
        "l": spec.ring(),
        "n": spec.scales(),
        "r": r,
        "window": [lo, hi],
        "fit": {
            "radius": real_number(fit.radius),
            "xi_theta": real_number(fit.xi_theta),
            "xi_tau": real_number(fit.xi_tau),
            "s0": real_number(fit.s0),
            "slope": real_number(fit.slope),
            "intercept": real_number(fit.intercept),
            "residual": real_number(fit.residual),
        },
    });
    let mut t = Table::new(&["j", "mutual_information", "fitted", "geodesic_distance"]);
    for &(j, i) in &samples {
        let fitted = (fit.intercept + fit.slope * j.ln()).exp();
        t.push(vec![(j as usize).into(), i.into(), fitted.into(), same_scale_distance(j, fit.radius).into()]);
    }
    let samples_name = format!("curvature_samples.{}", cfg.format.extension());
    Ok(Outcome {
        artifacts: vec![
            Artifact {
                name: "curvature_fit.json".into(),
                body: serde_json::to_string_pretty(&record)? + "\n",
                stdout: cfg.format == Format::Json,
            },
            Artifact { name: samples_name, body: t.render(cfg.format)?, stdout: cfg.format == Format::Csv },
        ],
        failed: false,
    })
}
