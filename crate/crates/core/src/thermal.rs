//! Gibbs states of the chain.
//!
//! Weights are indexed by the sector-ordered label `l` of
//! [`crate::states::SectorIndex`]. Inverse temperature `β = +∞` is accepted
//! everywhere and means the equal mixture over the ground space.

use nalgebra::DMatrix;

use crate::combinatorics::masks_with_popcount;
use crate::error::{Result, XxError};
use crate::spectrum::{
    check_beta, enumerate_levels_with_cap, log_partition_function, mode_energies, zero_modes, ChainParams,
    OccupationState, ENUMERATION_CAP,
};
use crate::states::{build_eigenstate_with_cap, ground_state, label_to_sector_index, occupation_to_label, SectorIndex};

/// Default largest chain whose `2^N × 2^N` density matrix is materialized.
pub const DENSE_CAP: usize = 10;

/// Upper bound any dense-cap override may reach.
pub const MAX_DENSE_CAP: usize = 12;

/// `β = 1/T` with `k_B = 1`; `T = 0` maps to `β = +∞`.
pub fn beta_from_temperature(t: f64) -> Result<f64> {
    if t.is_nan() || t < 0.0 {
        return Err(XxError::invalid(format!("temperature must be >= 0, got {t}")));
    }
    Ok(if t == 0.0 { f64::INFINITY } else { 1.0 / t })
}

/// Boltzmann weights `p_l = exp(-β ε_l) / Z` over all `2^N` levels.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalEnsemble {
    pub n: usize,
    pub beta: f64,
    /// `p_l` at index `l - 1`.
    pub probabilities: Vec<f64>,
    pub log_z: f64,
}

impl ThermalEnsemble {
    /// `p_l` for one-based label `l`.
    pub fn p(&self, l: usize) -> Option<f64> {
        l.checked_sub(1).and_then(|i| self.probabilities.get(i).copied())
    }

    /// `q_r^m`, the same weight addressed by sector and rank.
    pub fn q(&self, r: usize, m: usize) -> Option<f64> {
        crate::states::sector_index_to_label(r, m, self.n)
            .ok()
            .and_then(|l| self.p(l))
    }

    /// Total weight of each magnetization sector `m = 0..=N`.
    pub fn sector_marginals(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.n + 1];
        let mut l = 0;
        for (m, slot) in out.iter_mut().enumerate() {
            let size = crate::combinatorics::binomial(self.n, m);
            *slot = self.probabilities[l..l + size].iter().sum();
            l += size;
        }
        out
    }

    /// `Σ_l p_l²`.
    pub fn purity(&self) -> f64 {
        self.probabilities.iter().map(|p| p * p).sum()
    }
}

pub fn boltzmann_weights(params: &ChainParams, beta: f64) -> Result<ThermalEnsemble> {
    check_beta(beta)?;
    let n = params.n;
    if n > ENUMERATION_CAP {
        return Err(XxError::Size {
            what: "Boltzmann weights",
            n,
            cap: ENUMERATION_CAP,
        });
    }
    let log_z = log_partition_function(params, beta)?;
    let mut probabilities = vec![0.0; 1 << n];

    if beta.is_infinite() {
        let spectrum = mode_energies(params);
        let zeros = zero_modes(params, &spectrum);
        let mut forced = 0u64;
        let mut free = Vec::new();
        for (i, (&lambda, &zero)) in spectrum.lambdas.iter().zip(&zeros).enumerate() {
            if zero {
                free.push(i);
            } else if lambda < 0.0 {
                forced |= 1 << i;
            }
        }
        let weight = 0.5f64.powi(free.len() as i32);
        for choice in 0..1u64 << free.len() {
            let mut mask = forced;
            for (bit, &mode) in free.iter().enumerate() {
                if choice >> bit & 1 == 1 {
                    mask |= 1 << mode;
                }
            }
            let idx = occupation_to_label(&OccupationState::from_mask(n, mask)?)?;
            probabilities[idx.l - 1] = weight;
        }
    } else {
        for level in enumerate_levels_with_cap(params, ENUMERATION_CAP)? {
            let idx = occupation_to_label(&level.occupation)?;
            probabilities[idx.l - 1] = (-beta * level.energy - log_z).exp();
        }
    }
    Ok(ThermalEnsemble {
        n,
        beta,
        probabilities,
        log_z,
    })
}

/// `q_r^m` in label order.
pub fn subspace_weights(params: &ChainParams, beta: f64) -> Result<Vec<(SectorIndex, f64)>> {
    let ensemble = boltzmann_weights(params, beta)?;
    ensemble
        .probabilities
        .iter()
        .enumerate()
        .map(|(i, &q)| Ok((label_to_sector_index(i + 1, params.n)?, q)))
        .collect()
}

/// Closed-form `Tr ρ² = Π_k [1 - 1/(1 + cosh βΛ_k)]`.
///
/// At `β = ∞` each vanishing mode contributes `1/2` and every other mode `1`.
pub fn purity_analytic(params: &ChainParams, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let spectrum = mode_energies(params);
    if beta.is_infinite() {
        let zeros = zero_modes(params, &spectrum).into_iter().filter(|&z| z).count();
        return Ok(0.5f64.powi(zeros as i32));
    }
    Ok(spectrum
        .lambdas
        .iter()
        .map(|&l| 1.0 - 1.0 / (1.0 + (beta * l).cosh()))
        .product())
}

/// Dense real density matrix on the spin product basis.
///
/// Every state built here has real amplitudes, so the matrix is real
/// symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n: usize,
    matrix: DMatrix<f64>,
}

impl DensityMatrix {
    pub fn new(n: usize, matrix: DMatrix<f64>) -> Result<Self> {
        if n > MAX_DENSE_CAP {
            return Err(XxError::Size {
                what: "density matrix",
                n,
                cap: MAX_DENSE_CAP,
            });
        }
        let dim = 1usize << n;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(XxError::invalid(format!(
                "{n} spins need a {dim}x{dim} matrix, got {}x{}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(DensityMatrix { n, matrix })
    }

    /// `|ψ⟩⟨ψ|` for a normalized state vector of length `2^n`.
    pub fn pure(n: usize, psi: &nalgebra::DVector<f64>) -> Result<Self> {
        Self::new(n, psi * psi.transpose())
    }

    /// `I / 2^N`.
    pub fn maximally_mixed(n: usize) -> Result<Self> {
        let dim = 1usize << n.min(MAX_DENSE_CAP + 1);
        Self::new(n, DMatrix::identity(dim, dim) / dim as f64)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Largest `|ρ_ij - ρ_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        (&self.matrix - self.matrix.transpose()).amax()
    }
}

fn check_dense_cap(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if cap > MAX_DENSE_CAP {
        return Err(XxError::invalid(format!(
            "dense cap {cap} above hard limit {MAX_DENSE_CAP}"
        )));
    }
    if n > cap {
        return Err(XxError::Size { what, n, cap });
    }
    Ok(())
}

/// `ρ_T = Σ_l p_l |φ_l⟩⟨φ_l|`, assembled one magnetization block at a time.
pub fn thermal_density_matrix(params: &ChainParams, beta: f64) -> Result<DensityMatrix> {
    thermal_density_matrix_with_cap(params, beta, DENSE_CAP)
}

pub fn thermal_density_matrix_with_cap(params: &ChainParams, beta: f64, cap: usize) -> Result<DensityMatrix> {
    SectorBasis::new(params.n, cap)?.density_matrix(&boltzmann_weights(params, beta)?)
}

/// Closed-form eigenvectors of every magnetization block.
///
/// They depend on `N` alone, so one basis serves a whole `(B, T)` sweep.
#[derive(Debug, Clone)]
pub struct SectorBasis {
    n: usize,
    blocks: Vec<SectorBlock>,
}

#[derive(Debug, Clone)]
struct SectorBlock {
    /// Spin basis index of each row.
    indices: Vec<usize>,
    /// Label of the eigenvector in each column.
    labels: Vec<usize>,
    vectors: DMatrix<f64>,
}

impl SectorBasis {
    pub fn new(n: usize, cap: usize) -> Result<Self> {
        check_dense_cap(n, cap, "sector basis")?;
        let mut blocks = Vec::with_capacity(n + 1);
        for m in 0..=n {
            let occupations: Vec<u64> = masks_with_popcount(n, m).collect();
            let size = occupations.len();
            let mut vectors = DMatrix::<f64>::zeros(size, size);
            let mut labels = Vec::with_capacity(size);
            let mut indices = Vec::new();
            for (col, &mask) in occupations.iter().enumerate() {
                let occ = OccupationState::from_mask(n, mask)?;
                let v = build_eigenstate_with_cap(n, &occ, cap)?;
                if col == 0 {
                    indices = v.basis_indices().collect();
                }
                vectors.column_mut(col).copy_from_slice(v.amplitudes());
                labels.push(occupation_to_label(&occ)?.l);
            }
            blocks.push(SectorBlock {
                indices,
                labels,
                vectors,
            });
        }
        Ok(Self { n, blocks })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `ρ = Σ_l p_l |φ_l⟩⟨φ_l|`, one block `V diag(p) Vᵀ` per sector.
    pub fn density_matrix(&self, ensemble: &ThermalEnsemble) -> Result<DensityMatrix> {
        if ensemble.n != self.n {
            return Err(XxError::invalid(format!(
                "ensemble has N = {}, basis has N = {}",
                ensemble.n, self.n
            )));
        }
        let dim = 1usize << self.n;
        let mut rho = DMatrix::<f64>::zeros(dim, dim);
        for block in &self.blocks {
            let weights = nalgebra::DVector::from_iterator(
                block.labels.len(),
                block.labels.iter().map(|&l| ensemble.p(l).unwrap_or(0.0)),
            );
            let mut scaled = block.vectors.clone();
            for (mut col, w) in scaled.column_iter_mut().zip(weights.iter()) {
                col *= *w;
            }
            let sub = scaled * block.vectors.transpose();
            for (a, &ia) in block.indices.iter().enumerate() {
                for (b, &ib) in block.indices.iter().enumerate() {
                    rho[(ia, ib)] = sub[(a, b)];
                }
            }
        }
        // exact symmetry
        let rho = (&rho + rho.transpose()) * 0.5;
        DensityMatrix::new(self.n, rho)
    }
}

/// `Tr ρ²` by direct contraction.
pub fn purity_dense(rho: &DensityMatrix) -> f64 {
    let m = rho.matrix();
    let dim = m.nrows();
    let mut acc = 0.0;
    for i in 0..dim {
        for j in 0..dim {
            acc += m[(i, j)] * m[(j, i)];
        }
    }
    acc
}

/// Equal mixture of the sector-`k` and sector-`k+1` ground states, the
/// zero-temperature state at the field where those two sectors cross.
pub fn crossing_mixture(n: usize, k: usize) -> Result<DensityMatrix> {
    crossing_mixture_with_cap(n, k, DENSE_CAP)
}

pub fn crossing_mixture_with_cap(n: usize, k: usize, cap: usize) -> Result<DensityMatrix> {
    if n == 0 || k >= n {
        return Err(XxError::invalid(format!("crossing {k} out of range 0..{n}")));
    }
    check_dense_cap(n, cap, "crossing mixture")?;
    let lo = ground_state(n, k)?.to_dense();
    let hi = ground_state(n, k + 1)?.to_dense();
    let rho = (&lo * lo.transpose() + &hi * hi.transpose()) * 0.5;
    DensityMatrix::new(n, rho)
}
