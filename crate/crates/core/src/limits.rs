//! Thermodynamic-limit quantities and finite-size convergence.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Result, XxError};
use crate::spectrum::{ground_energy, ground_sector, ChainParams};

/// Fields this close to `±1` use the saturated branch.
const EDGE_TOL: f64 = 1e-12;

/// Ground-state energy per spin of the infinite chain at `J = 1`:
/// `(2/π)[B(arccos B − π/2) − sqrt(1 − B²)]` inside `|B| < 1`, `−|B|` outside.
pub fn thermo_energy_density(b: f64) -> f64 {
    if b.abs() >= 1.0 - EDGE_TOL {
        return -b.abs();
    }
    2.0 / PI * (b * (b.acos() - FRAC_PI_2) - (1.0 - b * b).sqrt())
}

/// `ε_g / N` of the finite chain, from the sector holding the ground state.
pub fn finite_size_energy_density(params: &ChainParams) -> f64 {
    let k = ground_sector(params).lower();
    // k ≤ n always
    ground_energy(params, k).expect("sector in range") / params.n as f64
}

/// `B_ω = cos(πω)`: the crossing field reached by `k/(N+1) → ω`.
pub fn crossing_density(omega: f64) -> Result<f64> {
    if !(omega > 0.0 && omega < 1.0) {
        return Err(XxError::invalid(format!("omega must lie in (0, 1), got {omega}")));
    }
    Ok((PI * omega).cos())
}

/// One finite-size point compared with the infinite-chain curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub b: f64,
    pub energy_density: f64,
    pub limit_value: f64,
    pub deviation: f64,
}

/// Energy density at `b` for each chain length in `sizes` (`J = 1`).
pub fn convergence_report(b: f64, sizes: &[usize]) -> Result<Vec<ConvergenceRow>> {
    let limit_value = thermo_energy_density(b);
    sizes
        .iter()
        .map(|&n| {
            let params = ChainParams::unit(n, b)?;
            let energy_density = finite_size_energy_density(&params);
            Ok(ConvergenceRow {
                n,
                b,
                energy_density,
                limit_value,
                deviation: (energy_density - limit_value).abs(),
            })
        })
        .collect()
}
