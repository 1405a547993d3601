//! Eigenstates in the spin basis.
//!
//! Filling modes `p_1 < ... < p_m` gives a state inside the sector with `m`
//! flipped spins whose amplitude on flipped positions `l_1 < ... < l_m` is the
//! Slater determinant `det[S_{l_b}^{p_a}]` of sine coefficients. Rows are
//! modes ascending and columns positions ascending; that fixes the global
//! sign of every vector.

use std::f64::consts::PI;

use nalgebra::DVector;

use crate::combinatorics::{binomial, colex_rank, colex_unrank, lex_rank, positions_mask, LexCombinations};
use crate::error::{Result, XxError};
use crate::spectrum::OccupationState;

/// Largest chain for which full spin-basis vectors are built.
pub const EIGENSTATE_CAP: usize = 12;

/// `S_l^k = sqrt(2/(N+1)) sin(πkl/(N+1))`.
pub fn sine_coefficient(n: usize, k: usize, l: usize) -> Result<f64> {
    if !(1..=n).contains(&k) || !(1..=n).contains(&l) {
        return Err(XxError::invalid(format!("mode {k} / site {l} outside 1..={n}")));
    }
    Ok(sine_unchecked(n, k, l))
}

fn sine_unchecked(n: usize, k: usize, l: usize) -> f64 {
    let np1 = (n + 1) as f64;
    (2.0 / np1).sqrt() * (PI * (k * l) as f64 / np1).sin()
}

/// Slater amplitude for ascending `modes` on ascending flipped `positions`.
pub fn slater_amplitude(n: usize, modes: &[usize], positions: &[usize]) -> Result<f64> {
    for (name, tuple) in [("modes", modes), ("positions", positions)] {
        if tuple.windows(2).any(|w| w[0] >= w[1]) {
            return Err(XxError::invalid(format!("{name} {tuple:?} not strictly ascending")));
        }
    }
    slater_determinant(n, modes, positions)
}

/// Same determinant without the ordering requirement: permuting modes or
/// positions permutes rows or columns, and repeated entries give zero.
pub fn slater_determinant(n: usize, modes: &[usize], positions: &[usize]) -> Result<f64> {
    if modes.len() != positions.len() {
        return Err(XxError::invalid(format!(
            "{} modes against {} positions",
            modes.len(),
            positions.len()
        )));
    }
    if let Some(bad) = modes.iter().chain(positions).find(|&&x| !(1..=n).contains(&x)) {
        return Err(XxError::invalid(format!("index {bad} outside 1..={n}")));
    }
    let m = modes.len();
    let mut a = Vec::with_capacity(m * m);
    for &k in modes {
        for &l in positions {
            a.push(sine_unchecked(n, k, l));
        }
    }
    Ok(determinant(&mut a, m))
}

/// Determinant of a row-major `m × m` matrix by Gaussian elimination with
/// partial pivoting. Destroys `a`.
pub(crate) fn determinant(a: &mut [f64], m: usize) -> f64 {
    let mut det = 1.0;
    for col in 0..m {
        let pivot = (col..m)
            .max_by(|&x, &y| a[x * m + col].abs().total_cmp(&a[y * m + col].abs()))
            .unwrap();
        let pv = a[pivot * m + col];
        if pv == 0.0 {
            return 0.0;
        }
        if pivot != col {
            for c in 0..m {
                a.swap(col * m + c, pivot * m + c);
            }
            det = -det;
        }
        det *= pv;
        for r in col + 1..m {
            let f = a[r * m + col] / pv;
            if f != 0.0 {
                for c in col + 1..m {
                    a[r * m + c] -= f * a[col * m + c];
                }
            }
        }
    }
    det
}

/// Sector-`m` state as real amplitudes over flipped-position tuples.
///
/// Amplitudes are stored in lexicographic order of the ascending tuples
/// `(l_1 < ... < l_m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinBasisVector {
    n: usize,
    m: usize,
    amplitudes: Vec<f64>,
}

impl SpinBasisVector {
    pub fn new(n: usize, m: usize, amplitudes: Vec<f64>) -> Result<Self> {
        if m > n {
            return Err(XxError::invalid(format!("sector {m} out of range 0..={n}")));
        }
        let expected = binomial(n, m);
        if amplitudes.len() != expected {
            return Err(XxError::invalid(format!(
                "sector ({n}, {m}) needs {expected} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        Ok(SpinBasisVector { n, m, amplitudes })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    /// `(positions, amplitude)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        LexCombinations::new(self.n, self.m).zip(self.amplitudes.iter().copied())
    }

    /// Amplitude on one ascending position tuple.
    pub fn amplitude(&self, positions: &[usize]) -> Option<f64> {
        if positions.len() != self.m
            || positions.windows(2).any(|w| w[0] >= w[1])
            || positions.iter().any(|l| !(1..=self.n).contains(l))
        {
            return None;
        }
        Some(self.amplitudes[lex_rank(self.n, positions)])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a * a).sum()
    }

    /// Overlap `⟨self|other⟩`; vectors from different sectors are orthogonal.
    pub fn dot(&self, other: &SpinBasisVector) -> f64 {
        if self.n != other.n || self.m != other.m {
            return 0.0;
        }
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a * b).sum()
    }

    /// Full-basis indices (bit `l - 1` set for each flipped site `l`) in
    /// storage order.
    pub fn basis_indices(&self) -> impl Iterator<Item = usize> + '_ {
        LexCombinations::new(self.n, self.m).map(|t| positions_mask(&t) as usize)
    }

    /// Embed into the `2^N` spin product basis.
    pub fn to_dense(&self) -> DVector<f64> {
        let mut v = DVector::zeros(1 << self.n);
        for (idx, a) in self.basis_indices().zip(&self.amplitudes) {
            v[idx] = *a;
        }
        v
    }
}

/// Spin-basis vector of the eigenstate with occupation `occ`.
pub fn build_eigenstate(n: usize, occ: &OccupationState) -> Result<SpinBasisVector> {
    build_eigenstate_with_cap(n, occ, EIGENSTATE_CAP)
}

pub fn build_eigenstate_with_cap(n: usize, occ: &OccupationState, cap: usize) -> Result<SpinBasisVector> {
    if n > cap {
        return Err(XxError::Size {
            what: "spin-basis eigenstate",
            n,
            cap,
        });
    }
    if occ.n() != n {
        return Err(XxError::invalid(format!(
            "occupation has {} modes, chain has {n}",
            occ.n()
        )));
    }
    let modes = occ.occupied_modes();
    let m = modes.len();
    // rows of the sine table restricted to the occupied modes
    let table: Vec<Vec<f64>> = modes
        .iter()
        .map(|&k| (1..=n).map(|l| sine_unchecked(n, k, l)).collect())
        .collect();
    let mut scratch = vec![0.0; m * m];
    let amplitudes = LexCombinations::new(n, m)
        .map(|positions| {
            for (a, row) in table.iter().enumerate() {
                for (b, &l) in positions.iter().enumerate() {
                    scratch[a * m + b] = row[l - 1];
                }
            }
            determinant(&mut scratch, m)
        })
        .collect();
    Ok(SpinBasisVector { n, m, amplitudes })
}

/// Lowest state of sector `k`: modes `1..=k` filled.
pub fn ground_state(n: usize, k: usize) -> Result<SpinBasisVector> {
    let occ = OccupationState::lowest(n, k)?;
    build_eigenstate(n, &occ)
}

/// Position of a level in the sector-ordered labelling.
///
/// `l = r + Σ_{s<m} C(N, s)`, one-based. Inside a sector, `r` follows the
/// occupation masks read as binary integers, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SectorIndex {
    pub r: usize,
    pub m: usize,
    pub l: usize,
}

const MAX_LABEL_N: usize = 63;

fn check_label_n(n: usize) -> Result<()> {
    if n > MAX_LABEL_N {
        return Err(XxError::invalid(format!(
            "labels defined for N <= {MAX_LABEL_N}, got {n}"
        )));
    }
    Ok(())
}

fn sector_offset(n: usize, m: usize) -> usize {
    (0..m).map(|s| binomial(n, s)).sum()
}

pub fn sector_index_to_label(r: usize, m: usize, n: usize) -> Result<usize> {
    check_label_n(n)?;
    if m > n || r == 0 || r > binomial(n, m) {
        return Err(XxError::invalid(format!("(r={r}, m={m}) invalid for N={n}")));
    }
    Ok(r + sector_offset(n, m))
}

pub fn label_to_sector_index(l: usize, n: usize) -> Result<SectorIndex> {
    check_label_n(n)?;
    if l == 0 || l > 1usize << n {
        return Err(XxError::invalid(format!("label {l} outside 1..=2^{n}")));
    }
    let mut rest = l;
    for m in 0..=n {
        let size = binomial(n, m);
        if rest <= size {
            return Ok(SectorIndex { r: rest, m, l });
        }
        rest -= size;
    }
    unreachable!("labels sum to 2^N")
}

pub fn occupation_to_label(occ: &OccupationState) -> Result<SectorIndex> {
    let n = occ.n();
    check_label_n(n)?;
    let m = occ.m();
    let r = colex_rank(occ.mask()) + 1;
    Ok(SectorIndex {
        r,
        m,
        l: r + sector_offset(n, m),
    })
}

pub fn label_to_occupation(l: usize, n: usize) -> Result<OccupationState> {
    let idx = label_to_sector_index(l, n)?;
    let mask =
        colex_unrank(n, idx.m, idx.r - 1).ok_or_else(|| XxError::invalid(format!("label {l} has no occupation")))?;
    OccupationState::from_mask(n, mask)
}
