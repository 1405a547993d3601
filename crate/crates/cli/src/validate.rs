//! Closed forms against dense diagonalization, one row per check.

use rayon::prelude::*;

use xxchain::oracle::ORACLE_CAP;
use xxchain::*;

use crate::commands::Report;
use crate::config::RunConfig;
use crate::emit::{Cell, Table};
use crate::error::Result;

const DEFAULT_FIELDS: [f64; 5] = [-1.5, -0.3, 0.0, 0.45, 1.2];
const DEFAULT_TEMPERATURES: [f64; 4] = [0.0, 0.1, 0.5, 2.0];

struct Check {
    name: &'static str,
    b: f64,
    t: Option<f64>,
    error: f64,
    tolerance: f64,
}

impl Check {
    fn passed(&self) -> bool {
        self.error <= self.tolerance
    }

    fn row(&self, n: usize) -> Vec<Cell> {
        vec![
            self.name.to_string().into(),
            n.into(),
            self.b.into(),
            self.t.into(),
            self.error.into(),
            self.tolerance.into(),
            self.passed().into(),
        ]
    }
}

pub fn run(cfg: &RunConfig) -> Result<Report> {
    let n = cfg.require_n()?;
    if n > ORACLE_CAP {
        return Err(XxError::Size {
            what: "validation oracle",
            n,
            cap: ORACLE_CAP,
        }
        .into());
    }
    let mut fields = cfg.b.map_or(DEFAULT_FIELDS.to_vec(), |a| a.points());
    let crossings = crossing_fields(n, cfg.j).fields_b;
    if cfg.b.is_none() {
        fields.extend(&crossings);
    }
    let temperatures = cfg.t.map_or(DEFAULT_TEMPERATURES.to_vec(), |a| a.points());
    let basis = if n <= cfg.dense_cap {
        Some(SectorBasis::new(n, cfg.dense_cap)?)
    } else {
        None
    };

    let per_field: Vec<Vec<Check>> = fields
        .par_iter()
        .map(|&b| field_checks(cfg, n, b, &temperatures, basis.as_ref()))
        .collect::<Result<_>>()?;
    let mut checks: Vec<Check> = per_field.into_iter().flatten().collect();
    for (i, &b) in crossings.iter().enumerate() {
        checks.push(crossing_check(cfg, n, i + 1, b)?);
    }

    let mut table = Table::new(&["check", "n", "b", "t", "error", "tolerance", "pass"]);
    table.extend(checks.iter().map(|c| c.row(n)));
    let failures = checks.iter().filter(|c| !c.passed()).count();
    let mut notes: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed())
        .map(|c| {
            format!(
                "FAIL {} at B = {}, T = {:?}: {:e} > {:e}",
                c.name, c.b, c.t, c.error, c.tolerance
            )
        })
        .collect();
    notes.push(format!("validate: {} checks, {failures} failures", checks.len()));
    Ok(Report {
        table: Some(table),
        notes,
        failures,
    })
}

fn field_checks(
    cfg: &RunConfig,
    n: usize,
    b: f64,
    temperatures: &[f64],
    basis: Option<&SectorBasis>,
) -> Result<Vec<Check>> {
    let params = ChainParams::new(n, cfg.j, b)?;
    let scale = 1.0 + b.abs() + cfg.j;
    let h = build_hamiltonian(&params)?;
    let eig = diagonalize(&h)?;
    let levels: Vec<EnergyLevel> = enumerate_levels(&params)?.collect();
    let mut out = Vec::new();

    let mut closed: Vec<f64> = levels.iter().map(|l| l.energy).collect();
    closed.sort_by(f64::total_cmp);
    let spectrum_error = closed
        .iter()
        .zip(eig.values.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(Check {
        name: "eigenvalues",
        b,
        t: None,
        error: spectrum_error,
        tolerance: 1e-9 * scale * n as f64,
    });

    // H φ = ε φ and |φ| = 1 for every closed-form eigenvector
    let mut vector_error: f64 = 0.0;
    for level in &levels {
        let v = build_eigenstate(n, &level.occupation)?.to_dense();
        let residual = (h.apply(&v) - &v * level.energy).amax();
        vector_error = vector_error.max(residual).max((v.norm() - 1.0).abs());
    }
    out.push(Check {
        name: "eigenvectors",
        b,
        t: None,
        error: vector_error,
        tolerance: 1e-9 * scale * n as f64,
    });

    for &t in temperatures {
        let beta = beta_from_temperature(t)?;
        if let Some(basis) = basis {
            let analytic = purity_analytic(&params, beta)?;
            let dense = purity_dense(&basis.density_matrix(&boltzmann_weights(&params, beta)?)?);
            out.push(Check {
                name: "purity",
                b,
                t: Some(t),
                error: (analytic - dense).abs(),
                tolerance: 1e-10,
            });
        }
        if beta.is_finite() {
            // log-sum-exp over the dense eigenvalues
            let e0 = eig.values[0];
            let sum: f64 = eig.values.iter().map(|e| (-beta * (e - e0)).exp()).sum();
            let dense = sum.ln() - beta * e0;
            let closed = log_partition_function(&params, beta)?;
            out.push(Check {
                name: "partition_function",
                b,
                t: Some(t),
                error: (dense - closed).abs() / (1.0 + dense.abs()),
                tolerance: 1e-10,
            });
        }
    }
    Ok(out)
}

/// At `B_k` the sector `k-1` and `k` ground energies coincide and equal the dense minimum.
fn crossing_check(cfg: &RunConfig, n: usize, k: usize, b: f64) -> Result<Check> {
    let params = ChainParams::new(n, cfg.j, b)?;
    let lower = ground_energy(&params, k - 1)?;
    let upper = ground_energy(&params, k)?;
    let dense_min = diagonalize(&build_hamiltonian(&params)?)?.values[0];
    Ok(Check {
        name: "crossing_degeneracy",
        b,
        t: None,
        error: (lower - upper).abs().max((lower - dense_min).abs()),
        tolerance: 1e-9 * (1.0 + b.abs() + cfg.j) * n as f64,
    })
}
