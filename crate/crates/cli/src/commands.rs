use clap::Args;
use serde_json::json;

use cpb_core::bridge::{compare_spectra, contrast_pipeline};
use cpb_core::condensate::{
    cone_scan, overlap_asymptotic, overlap_exact, single_particle_overlap, CondensateConfig,
};
use cpb_core::effective::{charge_dispersion_sweep, effective_spectrum, EffectiveParams};
use cpb_core::two_mode::{two_mode_spectrum, TwoModeParams};
use cpb_core::{Error, Result};

use crate::emit::{Cell, Document, Table};

#[derive(Debug, Args)]
pub struct TwoModeArgs {
    /// Charging energy E_C
    #[arg(long)]
    pub ec: f64,
    /// Bias between the two modes
    #[arg(long = "u")]
    pub u: f64,
    /// Tunneling amplitude
    #[arg(long)]
    pub lambda: f64,
    /// Total number of pairs
    #[arg(long)]
    pub n: u64,
    /// Background occupation of mode 1
    #[arg(long)]
    pub nbar1: f64,
}

impl TwoModeArgs {
    fn params(&self) -> TwoModeParams {
        TwoModeParams {
            e_c: self.ec,
            u: self.u,
            lambda: self.lambda,
            n_total: self.n,
            n_bar1: self.nbar1,
        }
    }
}

#[derive(Debug, Args)]
pub struct TwoModeSpectrumArgs {
    #[command(flatten)]
    pub model: TwoModeArgs,
    /// Number of levels reported
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct EffectiveArgs {
    /// Charging energy E_C
    #[arg(long)]
    pub ec: f64,
    /// Josephson energy E_J
    #[arg(long)]
    pub ej: f64,
    /// Charge cutoff; chosen automatically when absent
    #[arg(long)]
    pub n_max: Option<usize>,
}

impl EffectiveArgs {
    fn params(&self, n_g: f64) -> EffectiveParams {
        let p = EffectiveParams::new(self.ec, self.ej, n_g);
        match self.n_max {
            Some(n) => p.with_n_max(n),
            None => p,
        }
    }
}

#[derive(Debug, Args)]
pub struct EffectiveSpectrumArgs {
    #[command(flatten)]
    pub model: EffectiveArgs,
    /// Gate charge n_g
    #[arg(long)]
    pub ng: f64,
    /// Number of levels reported
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub model: EffectiveArgs,
    /// First gate charge of the grid
    #[arg(long)]
    pub ng_start: f64,
    /// Last gate charge of the grid
    #[arg(long)]
    pub ng_stop: f64,
    /// Number of grid points, endpoints included
    #[arg(long)]
    pub ng_steps: usize,
    /// Number of levels reported
    #[arg(long, default_value_t = 2)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct OverlapArgs {
    /// Total number of pairs
    #[arg(long)]
    pub n: u64,
    /// Pairs on the island
    #[arg(long)]
    pub n1: f64,
    /// Charge difference between the two states
    #[arg(long)]
    pub delta_n: f64,
}

#[derive(Debug, Args)]
pub struct ConeScanArgs {
    /// Total number of pairs
    #[arg(long)]
    pub n: u64,
    /// Pairs on the island
    #[arg(long)]
    pub n1: f64,
    /// Explicit grid of charge differences
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["delta_start", "delta_stop", "delta_steps"])]
    pub delta_n: Option<Vec<f64>>,
    /// First point of an evenly spaced grid
    #[arg(long, requires_all = ["delta_stop", "delta_steps"])]
    pub delta_start: Option<f64>,
    /// Last point of the grid
    #[arg(long, requires_all = ["delta_start", "delta_steps"])]
    pub delta_stop: Option<f64>,
    /// Number of grid points, endpoints included
    #[arg(long, requires_all = ["delta_start", "delta_stop"])]
    pub delta_steps: Option<usize>,
    /// Overlap levels whose first crossing is reported
    #[arg(long, value_delimiter = ',')]
    pub thresholds: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: TwoModeArgs,
    /// Number of gaps reported
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    pub model: TwoModeArgs,
    /// Island pair count used for the condensate overlap
    #[arg(long)]
    pub n1: f64,
}

/// `steps` evenly spaced points from `start` to `stop` inclusive.
fn linspace(start: f64, stop: f64, steps: usize) -> Result<Vec<f64>> {
    if steps == 0 {
        return Err(Error::InvalidParams("grid needs at least one point".into()));
    }
    if !(start.is_finite() && stop.is_finite()) {
        return Err(Error::InvalidParams("grid ends must be finite".into()));
    }
    if steps == 1 {
        return Ok(vec![start]);
    }
    let h = (stop - start) / (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| if i == steps - 1 { stop } else { start + i as f64 * h })
        .collect())
}

fn level_table(energies: &[f64]) -> Document {
    let mut t = Table::new(["level", "energy"]);
    for (i, &e) in energies.iter().enumerate() {
        t.push(vec![i.into(), e.into()]);
    }
    Document {
        json: t.rows_json(),
        csv: t,
    }
}

pub fn two_mode_spectrum_cmd(a: &TwoModeSpectrumArgs) -> Result<Document> {
    let p = a.model.params();
    p.validate()?;
    if p.background_exceeds_total() {
        eprintln!("warning: nbar1 = {} exceeds n = {}", p.n_bar1, p.n_total);
    }
    let s = two_mode_spectrum(&p, a.levels)?;
    Ok(level_table(&s.eigenvalues))
}

pub fn effective_spectrum_cmd(a: &EffectiveSpectrumArgs) -> Result<Document> {
    let (_, s) = effective_spectrum(&a.model.params(a.ng), a.levels)?;
    Ok(level_table(&s.eigenvalues))
}

pub fn sweep_cmd(a: &SweepArgs) -> Result<Document> {
    let grid = linspace(a.ng_start, a.ng_stop, a.ng_steps)?;
    let rows = charge_dispersion_sweep(&a.model.params(a.ng_start), &grid, a.levels)?;
    let columns = std::iter::once("ng".to_string()).chain((0..a.levels).map(|i| format!("e{i}")));
    let mut t = Table::new(columns);
    for r in rows {
        t.push(std::iter::once(r.n_g).chain(r.energies).map(Cell::from).collect());
    }
    Ok(Document {
        json: t.rows_json(),
        csv: t,
    })
}

pub fn overlap_cmd(a: &OverlapArgs) -> Result<Document> {
    let cfg = CondensateConfig::new(a.n, a.n1, a.delta_n)?;
    let exact = overlap_exact(&cfg);
    let asym = overlap_asymptotic(&cfg);
    let mut t = Table::new([
        "n",
        "n1",
        "delta_n",
        "single_particle",
        "exact",
        "log_exact",
        "asymptotic",
        "linearized",
    ]);
    t.push(vec![
        a.n.into(),
        a.n1.into(),
        a.delta_n.into(),
        single_particle_overlap(&cfg).into(),
        exact.overlap.into(),
        exact.log_overlap.into(),
        asym.overlap.into(),
        asym.linearized.into(),
    ]);
    Ok(Document {
        json: t.record_json(),
        csv: t,
    })
}

pub fn cone_scan_cmd(a: &ConeScanArgs) -> Result<Document> {
    let grid = match (&a.delta_n, a.delta_start, a.delta_stop, a.delta_steps) {
        (Some(list), ..) => list.clone(),
        (None, Some(start), Some(stop), Some(steps)) => linspace(start, stop, steps)?,
        _ => {
            return Err(Error::InvalidParams(
                "give --delta-n or all of --delta-start, --delta-stop, --delta-steps".into(),
            ))
        }
    };
    let scan = cone_scan(a.n, a.n1, &grid, &a.thresholds)?;
    let mut t = Table::new(["delta_n", "overlap_exact", "overlap_asymptotic"]);
    for r in &scan.rows {
        t.push(vec![r.delta_n.into(), r.overlap_exact.into(), r.overlap_asymptotic.into()]);
    }
    for c in &scan.crossings {
        let at = c.delta_n.map_or("none".to_string(), |d| format!("{d:?}"));
        t.comments.push(format!("threshold={:?} first_delta_n_below={at}", c.threshold));
    }
    let json = json!({
        "rows": t.rows_json(),
        "crossings": scan.crossings,
    });
    Ok(Document { csv: t, json })
}

pub fn compare_cmd(a: &CompareArgs) -> Result<Document> {
    let rows = compare_spectra(&a.model.params(), a.levels)?;
    let mut t = Table::new(["level", "gap_two_mode", "gap_effective", "rel_discrepancy"]);
    for r in rows {
        t.push(vec![
            r.level.into(),
            r.gap_two_mode.into(),
            r.gap_effective.into(),
            r.rel_discrepancy.into(),
        ]);
    }
    Ok(Document {
        json: t.rows_json(),
        csv: t,
    })
}

pub fn pipeline_cmd(a: &PipelineArgs) -> Result<Document> {
    let r = contrast_pipeline(&a.model.params(), a.n1)?;
    let mut pairs: Vec<(String, Cell)> = vec![("e_j".into(), r.e_j.into()), ("n_g".into(), r.n_g.into())];
    if let Some(v) = r.validity {
        pairs.push(("validity_n_scale".into(), v.n_scale.into()));
        pairs.push(("validity_ratio".into(), v.ratio.into()));
    }
    pairs.extend([
        ("e0".into(), r.e0.into()),
        ("e1".into(), r.e1.into()),
        ("effective_overlap".into(), r.effective_overlap.into()),
        ("delta_n".into(), r.delta_n.into()),
        ("n_total".into(), r.n_total.into()),
        ("n1_for_overlap".into(), r.n1_for_overlap.into()),
        ("condensate_overlap_exact".into(), r.condensate_overlap_exact.into()),
        ("condensate_log_overlap_exact".into(), r.condensate_log_overlap_exact.into()),
        ("condensate_overlap_asymptotic".into(), r.condensate_overlap_asymptotic.into()),
    ]);
    for g in &r.gap_table {
        pairs.push((format!("gap_two_mode_{}", g.level), g.gap_two_mode.into()));
        pairs.push((format!("gap_effective_{}", g.level), g.gap_effective.into()));
        pairs.push((format!("rel_discrepancy_{}", g.level), g.rel_discrepancy.into()));
    }
    let mut t = Table::new(["key", "value"]);
    for (k, v) in pairs {
        t.push(vec![Cell::Text(k), v]);
    }
    let json = serde_json::to_value(&r).expect("report serializes");
    Ok(Document { csv: t, json })
}
