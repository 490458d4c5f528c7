//! Subcommand implementations. Each returns an [`Outcome`]; `main` prints
//! the report and writes the table and manifest.

use std::path::Path;

use anyhow::{anyhow, bail, Result};
use hardyscope_core::analytic::{classify_with, transition, AnalyticMap};
use hardyscope_core::config::Thresholds;
use hardyscope_core::constructions::{
    arc_domain_spec, calibrate_arc_constant, class_d_constants_with, class_d_grid,
    search_arc_widths_with,
};
use hardyscope_core::geometry::{class_d_check_with, is_simply_connected};
use hardyscope_core::numbers::{
    bloch_check, consistency_report, fit_exponent_with, hardy_eks_with, inclusion_bergman,
    inclusion_hardy_in_bergman, number_report, ExponentEstimate, NumberValue, Structure,
};
use hardyscope_core::walker::{psi_profile, psi_profile_from_base};
use hardyscope_core::{DomainSpec, Error, WalkConfig};

use crate::manifest::{Outcome, Table};
use crate::spec_io::{load_spec, spec_hash, spec_to_string};
use crate::{MethodArg, ProfileArg, WalkArgs};

fn walk_config(spec: &DomainSpec, args: &WalkArgs, th: &Thresholds) -> WalkConfig {
    let mut cfg = WalkConfig::from_defaults(spec, &th.walk);
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(n) = args.samples {
        cfg.n_samples = n;
    }
    if let Some(e) = args.eps {
        cfg.eps_boundary = e;
    }
    cfg
}

fn default_radii(spec: &DomainSpec) -> Vec<f64> {
    let s = spec.scale_hint().max(1e-9);
    (2..=9).map(|k| s * 2f64.powi(k)).collect()
}

fn fmt_exponent(e: &ExponentEstimate) -> String {
    if e.infinite {
        "+inf".into()
    } else {
        format!("{:.4}", e.exponent)
    }
}

fn structure_of(spec: &DomainSpec, th: &Thresholds) -> Structure {
    if is_simply_connected(spec) {
        return Structure::SimplyConnected;
    }
    let rep = class_d_check_with(spec, &class_d_grid(spec), &th.geometry);
    if rep.omega_is_plane {
        Structure::BoundedComplement
    } else if rep.is_class_d {
        Structure::ClassD
    } else {
        Structure::Other
    }
}

fn bloch_defaults(spec: &DomainSpec, search: Option<f64>, step: Option<f64>) -> (f64, f64) {
    let s = spec.scale_hint().max(1e-9);
    (search.unwrap_or(32.0 * s), step.unwrap_or(s / 16.0))
}

pub fn estimate_hardy(
    path: &Path,
    method: MethodArg,
    radii: Option<Vec<f64>>,
    alphas: &[f64],
    walk: &WalkArgs,
    th: &Thresholds,
) -> Result<Outcome> {
    let spec = load_spec(path)?;
    let cfg = walk_config(&spec, walk, th);
    let radii = radii.unwrap_or_else(|| default_radii(&spec));
    let mut out = Outcome {
        spec_hash: Some(spec_hash(&spec)?),
        cfg: Some(cfg.clone()),
        table: Table::new(&["method", "exponent", "infinite", "spread", "dropped"]),
        ..Outcome::default()
    };
    let mut estimates = Vec::new();
    if matches!(method, MethodArg::Eks | MethodArg::Both) {
        estimates.push(("eks", hardy_eks_with(&spec, &cfg, &radii, &th.fit)?));
    }
    if matches!(method, MethodArg::Green | MethodArg::Both) {
        let e = if spec.complement_is_polar() {
            hardy_eks_with(&spec, &cfg, &radii, &th.fit)?
        } else {
            fit_exponent_with(&psi_profile_from_base(&spec, &radii, &cfg)?, &th.fit)?
        };
        estimates.push(("green", e));
    }
    for (name, e) in &estimates {
        out.report.push(format!("h_{name} = {}", fmt_exponent(e)));
        out.table.push([
            name.to_string(),
            e.exponent.to_string(),
            e.infinite.to_string(),
            e.spread().to_string(),
            e.dropped.len().to_string(),
        ]);
    }
    if let [(_, a), (_, b)] = estimates.as_slice() {
        out.report
            .push(format!("gap = {:.4}", (a.exponent - b.exponent).abs()));
    }
    let (search, step) = bloch_defaults(&spec, None, None);
    let bloch = bloch_check(&spec, search, step)?;
    let structure = structure_of(&spec, th);
    let mut iter = estimates.into_iter().map(|(_, e)| e);
    let h = iter.next().ok_or_else(|| anyhow!("no method selected"))?;
    let report = number_report(
        h,
        iter.next(),
        bloch.is_bloch,
        structure,
        alphas,
        th.consistency.tol,
    );
    out.report
        .push(format!("structure = {:?}", report.structure));
    out.report.push(format!("Bloch: {}", report.is_bloch));
    out.report.push(format!("b = {}", report.b_reported));
    for (a, v) in &report.b_alpha_reported {
        out.report.push(format!("b_{a} = {v}"));
    }
    for v in &report.inequality_violations {
        out.report
            .push(format!("violation: {} ({} > {})", v.relation, v.lhs, v.rhs));
    }
    out.violation = !report.inequality_violations.is_empty();
    Ok(out)
}

pub fn estimate_green_profile(
    path: &Path,
    radii: Option<Vec<f64>>,
    estimator: ProfileArg,
    walk: &WalkArgs,
    th: &Thresholds,
) -> Result<Outcome> {
    let spec = load_spec(path)?;
    let cfg = walk_config(&spec, walk, th);
    let radii = radii.unwrap_or_else(|| default_radii(&spec));
    let profile = match estimator {
        ProfileArg::Base => psi_profile_from_base(&spec, &radii, &cfg)?,
        ProfileArg::Angular => psi_profile(&spec, &radii, &cfg)?,
    };
    let mut out = Outcome {
        spec_hash: Some(spec_hash(&spec)?),
        cfg: Some(cfg),
        table: Table::new(&["radius", "psi", "stderr", "n_used", "n_escaped"]),
        ..Outcome::default()
    };
    for e in &profile.entries {
        out.table.push([
            e.radius.to_string(),
            e.estimate.mean.to_string(),
            e.estimate.stderr.to_string(),
            e.estimate.n_used.to_string(),
            e.estimate.n_escaped.to_string(),
        ]);
        out.report.push(format!(
            "psi({}) = {:.6} ± {:.6}",
            e.radius, e.estimate.mean, e.estimate.stderr
        ));
    }
    Ok(out)
}

pub fn bloch(path: &Path, search: Option<f64>, step: Option<f64>) -> Result<Outcome> {
    let spec = load_spec(path)?;
    let (search, step) = bloch_defaults(&spec, search, step);
    let rep = bloch_check(&spec, search, step)?;
    let mut out = Outcome {
        spec_hash: Some(spec_hash(&spec)?),
        table: Table::new(&["is_bloch", "inscribed_radius", "d1", "d2", "d3", "d4"]),
        ..Outcome::default()
    };
    let mut row = vec![rep.is_bloch.to_string(), rep.inscribed_radius.to_string()];
    row.extend(rep.doublings.iter().map(|d| d.to_string()));
    out.table.push(row);
    out.report.push(if rep.is_bloch {
        "Bloch: true; b=+inf".into()
    } else {
        "Bloch: false; b not determined by this test".into()
    });
    out.report
        .push(format!("inscribed radius = {:.4}", rep.inscribed_radius));
    Ok(out)
}

pub fn class_d(path: &Path, walk: &WalkArgs, th: &Thresholds) -> Result<Outcome> {
    let spec = load_spec(path)?;
    let cfg = walk_config(&spec, walk, th);
    let mut out = Outcome {
        spec_hash: Some(spec_hash(&spec)?),
        cfg: Some(cfg.clone()),
        table: Table::new(&["x", "y", "omega", "stderr", "ok"]),
        ..Outcome::default()
    };
    let k = match class_d_constants_with(
        &spec,
        &class_d_grid(&spec),
        &cfg,
        &th.geometry,
        &th.construction,
    ) {
        Ok(k) => k,
        Err(Error::NotClassD(reason)) => {
            out.report.push(format!("class D: false ({reason})"));
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    out.report.push("class D: true".into());
    out.report
        .push(format!("R = {}; rho = {}; sigma = {}", k.r, k.rho, k.sigma));
    out.report.push(format!(
        "reference measure at rho = {:.5} ± {:.5}",
        k.reference.mean, k.reference.stderr
    ));
    for s in &k.spot_checks {
        out.table.push([
            s.point.re.to_string(),
            s.point.im.to_string(),
            s.omega.mean.to_string(),
            s.omega.stderr.to_string(),
            s.ok.to_string(),
        ]);
    }
    out.report.push(format!(
        "spot check: {}",
        if k.spot_ok { "pass" } else { "FAIL" }
    ));
    out.violation = !k.spot_ok;
    Ok(out)
}

pub fn build_arc_domain(
    a: Option<f64>,
    rings: usize,
    walk: &WalkArgs,
    th: &Thresholds,
) -> Result<Outcome> {
    let slit = DomainSpec::slit_plane(-1.0)?;
    let cfg = walk_config(&slit, walk, th);
    let a = match a {
        Some(a) => a,
        None => calibrate_arc_constant(&cfg)?.mean,
    };
    let mut out = Outcome {
        cfg: Some(cfg.clone()),
        table: Table::new(&["radius", "omega", "stderr", "target", "satisfied"]),
        ..Outcome::default()
    };
    out.report.push(format!("A = {a}"));
    let (params, certs) = match search_arc_widths_with(a, rings, &cfg, &th.construction) {
        Ok(r) => r,
        Err(e @ Error::StageFailure { .. }) => {
            out.report.push(format!("stage failure: {e}"));
            out.violation = true;
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    for c in &certs {
        out.table.push([
            c.radius.to_string(),
            c.omega.mean.to_string(),
            c.omega.stderr.to_string(),
            c.target.to_string(),
            c.satisfied.to_string(),
        ]);
        out.report.push(format!(
            "r = {}: omega = {:.5} ± {:.5}, target {:.5}, {}",
            c.radius,
            c.omega.mean,
            c.omega.stderr,
            c.target,
            if c.satisfied { "ok" } else { "FAIL" }
        ));
    }
    let spec = arc_domain_spec(&params)?;
    out.spec_hash = Some(spec_hash(&spec)?);
    out.files
        .push(("arc_domain.dom".into(), spec_to_string(&spec)?));
    out.report.push(format!("widths = {:?}", params.alphas));
    out.violation = certs.iter().any(|c| !c.satisfied);
    Ok(out)
}

pub fn classify_map(
    label: Option<&str>,
    list: bool,
    p: Option<f64>,
    alpha: Option<f64>,
    bracket: Option<Vec<f64>>,
    iterations: u32,
    th: &Thresholds,
) -> Result<Outcome> {
    let mut out = Outcome::default();
    if list {
        out.table = Table::new(&["label", "known_h", "conformal"]);
        for m in AnalyticMap::catalog() {
            let h = m.known_h().map_or(String::new(), |h| h.to_string());
            out.report.push(format!("{}  h = {h}", m.label()));
            out.table.push([m.label(), h, m.is_conformal().to_string()]);
        }
        return Ok(out);
    }
    let label = label.ok_or_else(|| anyhow!("--map is required"))?;
    let map =
        AnalyticMap::by_label(label).ok_or_else(|| anyhow!("unknown map {label:?}; see --list"))?;
    let alpha_s = alpha.map_or(String::new(), |a| a.to_string());
    out.table = Table::new(&["label", "p", "alpha", "verdict", "ladder"]);
    if let Some(b) = bracket {
        let t = transition(&map, alpha, (b[0], b[1]), iterations, &th.quadrature)?;
        for (p, v) in &t.probes {
            out.table.push([
                label.to_string(),
                p.to_string(),
                alpha_s.clone(),
                format!("{v:?}"),
                String::new(),
            ]);
        }
        out.report.push(format!(
            "transition in [{}, {}]{}",
            t.p_low,
            t.p_high,
            if t.open_above {
                " (no divergent p found)"
            } else {
                ""
            }
        ));
        return Ok(out);
    }
    let p = p.ok_or_else(|| anyhow!("--p is required"))?;
    let c = classify_with(&map, p, alpha, &th.quadrature)?;
    let ladder = c
        .ladder
        .iter()
        .map(|(_, v)| v.to_string())
        .collect::<Vec<_>>()
        .join(";");
    out.table.push([
        label.to_string(),
        p.to_string(),
        alpha_s,
        format!("{:?}", c.verdict),
        ladder,
    ]);
    out.report.push(format!("{:?}", c.verdict));
    Ok(out)
}

pub fn check_inclusion(bergman: Option<Vec<f64>>, hardy: Option<Vec<f64>>) -> Result<Outcome> {
    let mut out = Outcome {
        table: Table::new(&["relation", "holds"]),
        ..Outcome::default()
    };
    let mut any = false;
    if let Some(v) = bergman {
        let holds = inclusion_bergman(v[0], v[1], v[2], v[3])?;
        out.table.push([
            format!("A^{}_{} in A^{}_{}", v[0], v[1], v[2], v[3]),
            holds.to_string(),
        ]);
        out.report.push(holds.to_string());
        any = true;
    }
    if let Some(v) = hardy {
        let holds = inclusion_hardy_in_bergman(v[0], v[1], v[2])?;
        out.table.push([
            format!("H^{} in A^{}_{}", v[0], v[1], v[2]),
            holds.to_string(),
        ]);
        out.report.push(holds.to_string());
        any = true;
    }
    if !any {
        bail!("give --bergman P ALPHA Q BETA or --hardy Q P ALPHA");
    }
    Ok(out)
}

fn parse_number(s: &str) -> Result<NumberValue> {
    let t = s.trim();
    if matches!(t, "inf" | "+inf" | "infinity") {
        return Ok(NumberValue::Infinite);
    }
    if let Some(rest) = t.strip_prefix(">=") {
        return Ok(NumberValue::AtLeast(rest.trim().parse()?));
    }
    let x: f64 = t
        .parse()
        .map_err(|_| anyhow!("cannot parse number {s:?}"))?;
    Ok(NumberValue::Finite(x))
}

pub fn consistency(h: &str, b: &str, b_alpha: &[String], tol: f64) -> Result<Outcome> {
    let h = parse_number(h)?;
    let b = parse_number(b)?;
    let mut pairs = Vec::new();
    for item in b_alpha {
        let (a, v) = item
            .split_once(':')
            .ok_or_else(|| anyhow!("--b-alpha expects alpha:value, got {item:?}"))?;
        pairs.push((a.trim().parse::<f64>()?, parse_number(v)?));
    }
    let violations = consistency_report(h, b, &pairs, tol);
    let mut out = Outcome {
        table: Table::new(&["relation", "lhs", "rhs"]),
        ..Outcome::default()
    };
    for v in &violations {
        out.table
            .push([v.relation.clone(), v.lhs.to_string(), v.rhs.to_string()]);
        out.report
            .push(format!("violation: {} ({} > {})", v.relation, v.lhs, v.rhs));
    }
    out.report
        .push(format!("{} violation(s)", violations.len()));
    out.violation = !violations.is_empty();
    Ok(out)
}
