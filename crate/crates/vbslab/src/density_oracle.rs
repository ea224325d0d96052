//! Brute-force reduced density matrices, spectra and entropies.
//!
//! Everything here works from an explicit state vector and is the reference
//! the closed forms are checked against.

use nalgebra::{ComplexField, SymmetricEigen};
use num_complex::Complex;

use crate::error::{Result, VbsError};
use crate::exact_algebra::HalfInt;
use crate::limits::{product_dim, Limits, CORRELATOR_BLOCK_CAP};
use crate::vbs_constructor::{ChainSpec, StateVector};
use crate::{real, CMatrix, Real};

/// Default threshold below which an eigenvalue counts as zero.
pub const ZERO_THRESHOLD: f64 = 1e-10;
/// Relative tolerance for grouping eigenvalues into degenerate levels.
pub const DEGENERACY_RTOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct DensityMatrix<T: Real> {
    /// Retained sites, ascending, as positions in the parent state.
    pub sites: Vec<usize>,
    pub local_dims: Vec<usize>,
    pub matrix: CMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    /// Frobenius norm of `ρ - ρ†`.
    pub fn hermiticity_defect(&self) -> T {
        (&self.matrix - self.matrix.adjoint()).norm()
    }

    pub fn frobenius_distance(&self, other: &DensityMatrix<T>) -> T {
        (&self.matrix - &other.matrix).norm()
    }
}

/// Sorted, deduplicated site set that is neither empty nor everything.
fn proper_subset(keep: &[usize], n: usize) -> Result<Vec<usize>> {
    let mut keep = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.is_empty() {
        return Err(VbsError::Domain("nothing to keep".into()));
    }
    if keep.len() >= n {
        return Err(VbsError::Domain("cannot trace out an empty environment".into()));
    }
    if let Some(&bad) = keep.iter().find(|&&s| s >= n) {
        return Err(VbsError::Domain(format!("site {bad} out of range")));
    }
    Ok(keep)
}

/// `ψ` reshaped as a `dim(keep) × dim(rest)` matrix.
fn bipartite_matrix<T: Real>(state: &StateVector<T>, keep: &[usize]) -> CMatrix<T> {
    let dims = &state.local_dims;
    let n = dims.len();
    let in_keep: Vec<bool> = (0..n).map(|s| keep.binary_search(&s).is_ok()).collect();
    let kd: usize = keep.iter().map(|&s| dims[s]).product();
    let ed = state.dim() / kd;
    let mut psi = CMatrix::<T>::zeros(kd, ed);
    let mut digits = vec![0usize; n];
    for amp in state.amplitudes.iter() {
        let (mut k, mut e) = (0, 0);
        for s in 0..n {
            if in_keep[s] {
                k = k * dims[s] + digits[s];
            } else {
                e = e * dims[s] + digits[s];
            }
        }
        psi[(k, e)] = *amp;
        // advance the mixed-radix counter, last site fastest
        for s in (0..n).rev() {
            digits[s] += 1;
            if digits[s] < dims[s] {
                break;
            }
            digits[s] = 0;
        }
    }
    psi
}

/// `Tr_env |ψ><ψ| / <ψ|ψ>` on the sites in `keep`.
pub fn partial_trace<T: Real>(state: &StateVector<T>, keep: &[usize]) -> Result<DensityMatrix<T>> {
    let keep = proper_subset(keep, state.site_count())?;
    let norm = state.norm_squared();
    if norm == T::zero() {
        return Err(VbsError::Domain("zero state has no density matrix".into()));
    }
    let psi = bipartite_matrix(state, &keep);
    let matrix = (&psi * psi.adjoint()).unscale(norm);
    Ok(DensityMatrix {
        local_dims: keep.iter().map(|&s| state.local_dims[s]).collect(),
        sites: keep,
        matrix,
    })
}

/// One eigenvalue level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Level<T> {
    pub value: T,
    pub degeneracy: usize,
}

/// Eigenvalues grouped into levels, largest first. Values under the zero
/// threshold are collected into a final level with value exactly zero.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum<T> {
    pub levels: Vec<Level<T>>,
    /// Number of eigenvalues above the zero threshold.
    pub support_dim: usize,
}

impl<T: Real> Spectrum<T> {
    /// Build from raw eigenvalues.
    pub fn from_eigenvalues(values: impl IntoIterator<Item = T>, zero_threshold: f64) -> Self {
        let mut values: Vec<T> = values.into_iter().collect();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        let cut = real::<T>(zero_threshold);
        let rtol = real::<T>(DEGENERACY_RTOL);
        let mut levels: Vec<(T, T, usize)> = Vec::new(); // (first, sum, count)
        let mut zeros = 0;
        for v in values {
            if v < cut {
                zeros += 1;
                continue;
            }
            match levels.last_mut() {
                Some((first, sum, count)) if (*first - v).abs() <= rtol * first.abs() => {
                    *sum += v;
                    *count += 1;
                }
                _ => levels.push((v, v, 1)),
            }
        }
        let support_dim = levels.iter().map(|l| l.2).sum();
        let mut levels: Vec<Level<T>> = levels
            .into_iter()
            .map(|(_, sum, count)| Level {
                value: sum / real::<T>(count as f64),
                degeneracy: count,
            })
            .collect();
        if zeros > 0 {
            levels.push(Level {
                value: T::zero(),
                degeneracy: zeros,
            });
        }
        Spectrum { levels, support_dim }
    }

    /// Nonzero levels only.
    pub fn nonzero(&self) -> impl Iterator<Item = &Level<T>> {
        self.levels.iter().filter(|l| l.value != T::zero())
    }

    /// Nonzero eigenvalues with multiplicity, largest first.
    pub fn nonzero_values(&self) -> Vec<T> {
        self.nonzero()
            .flat_map(|l| std::iter::repeat_n(l.value, l.degeneracy))
            .collect()
    }

    pub fn weighted_sum(&self) -> T {
        self.levels
            .iter()
            .fold(T::zero(), |acc, l| acc + l.value * real::<T>(l.degeneracy as f64))
    }

    pub fn entropies(&self, alphas: &[f64]) -> Result<EntropyReport> {
        let levels: Vec<(f64, usize)> = self.nonzero().map(|l| (crate::to_f64(l.value), l.degeneracy)).collect();
        entropies_from_levels(&levels, alphas)
    }
}

/// Hermitian eigensolve of `ρ`.
pub fn diagonalize<T: Real>(rho: &DensityMatrix<T>, zero_threshold: Option<f64>) -> Spectrum<T> {
    let sym = (&rho.matrix + rho.matrix.adjoint()) * Complex::from(real::<T>(0.5));
    let eig = SymmetricEigen::new(sym).eigenvalues;
    Spectrum::from_eigenvalues(eig.iter().copied(), zero_threshold.unwrap_or(ZERO_THRESHOLD))
}

/// Nonzero spectrum of `ρ_keep` computed on whichever side of the cut is
/// smaller; both reduced matrices share their nonzero eigenvalues. Zero
/// levels are not reported since the smaller side cannot see them all.
pub fn schmidt_spectrum<T: Real>(
    state: &StateVector<T>,
    keep: &[usize],
    zero_threshold: Option<f64>,
) -> Result<Spectrum<T>> {
    let keep = proper_subset(keep, state.site_count())?;
    let kd = product_dim(keep.iter().map(|&s| state.local_dims[s]));
    let ed = state.dim() as u128 / kd;
    let side: Vec<usize> = if kd <= ed {
        keep
    } else {
        (0..state.site_count())
            .filter(|s| keep.binary_search(s).is_err())
            .collect()
    };
    let rho = partial_trace(state, &side)?;
    let mut spec = diagonalize(&rho, zero_threshold);
    spec.levels.retain(|l| l.value != T::zero());
    Ok(spec)
}

/// Entanglement entropies in nats.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyReport {
    pub von_neumann: f64,
    /// `(α, S_R(α))` in the order requested.
    pub renyi: Vec<(f64, f64)>,
}

/// Entropies from `(eigenvalue, multiplicity)` pairs; zero eigenvalues are
/// skipped, `α = 1` gives the von Neumann value.
pub fn entropies_from_levels(levels: &[(f64, usize)], alphas: &[f64]) -> Result<EntropyReport> {
    if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(VbsError::Domain(format!("Rényi order must be positive, got {a}")));
    }
    let nonzero = levels.iter().filter(|(v, _)| *v > 0.0);
    let von_neumann = -nonzero.clone().map(|&(v, d)| d as f64 * v * v.ln()).sum::<f64>();
    let renyi = alphas
        .iter()
        .map(|&a| {
            if a == 1.0 {
                (a, von_neumann)
            } else {
                let s: f64 = nonzero.clone().map(|&(v, d)| d as f64 * v.powf(a)).sum();
                (a, s.ln() / (1.0 - a))
            }
        })
        .collect();
    Ok(EntropyReport { von_neumann, renyi })
}

pub fn entropies<T: Real>(spectrum: &Spectrum<T>, alphas: &[f64]) -> Result<EntropyReport> {
    spectrum.entropies(alphas)
}

/// `<ψ| ⊗_j |row_j><col_j| |ψ>` for single-site matrix units on distinct sites.
pub fn correlator<T: Real>(state: &StateVector<T>, factors: &[(usize, usize, usize)]) -> Result<Complex<T>> {
    let dims = &state.local_dims;
    let strides: Vec<usize> = (0..dims.len()).map(|s| dims[s + 1..].iter().product()).collect();
    for &(site, row, col) in factors {
        if site >= dims.len() || row >= dims[site] || col >= dims[site] {
            return Err(VbsError::Domain(format!("bad factor ({site}, {row}, {col})")));
        }
    }
    let mut acc = Complex::from(T::zero());
    'basis: for (i, amp) in state.amplitudes.iter().enumerate() {
        let mut j = i;
        for &(site, row, col) in factors {
            let digit = (i / strides[site]) % dims[site];
            if digit != col {
                continue 'basis;
            }
            j = j - col * strides[site] + row * strides[site];
        }
        acc += state.amplitudes[j].conjugate() * amp;
    }
    Ok(acc)
}

/// `ρ_B = Σ_{a,b} (⊗ A_{a_j b_j}) <G| ⊗ Ā_{a_j b_j} |G>` with `A_{ab} = |a><b|`
/// and `Ā_{ab} = A_{ba}`: every entry comes from one multi-point correlator.
pub fn density_from_correlators<T: Real>(state: &StateVector<T>, block: &[usize]) -> Result<DensityMatrix<T>> {
    let block = proper_subset(block, state.site_count())?;
    let local_dims: Vec<usize> = block.iter().map(|&s| state.local_dims[s]).collect();
    let kd = product_dim(local_dims.iter().copied());
    if kd > CORRELATOR_BLOCK_CAP {
        return Err(VbsError::ResourceCap {
            what: "correlator reconstruction block".into(),
            needed: kd,
            cap: CORRELATOR_BLOCK_CAP,
        });
    }
    let kd = kd as usize;
    let norm = state.norm_squared();
    let digits = |mut x: usize| {
        let mut out = vec![0usize; local_dims.len()];
        for (d, n) in out.iter_mut().zip(&local_dims).rev() {
            *d = x % n;
            x /= n;
        }
        out
    };
    let mut matrix = CMatrix::<T>::zeros(kd, kd);
    for a in 0..kd {
        let da = digits(a);
        for b in 0..kd {
            let db = digits(b);
            // Ā_{ab} = |b><a| on each block site
            let factors: Vec<(usize, usize, usize)> = block
                .iter()
                .zip(da.iter().zip(&db))
                .map(|(&s, (&x, &y))| (s, y, x))
                .collect();
            matrix[(a, b)] = correlator(state, &factors)?.unscale(norm);
        }
    }
    Ok(DensityMatrix {
        sites: block,
        local_dims,
        matrix,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvarianceReport {
    pub holds: bool,
    pub max_distance: f64,
    /// `(N, first bulk site)` of every block compared.
    pub cases: Vec<(usize, usize)>,
}

/// Compares the block density matrix of `L` consecutive bulk sites over
/// homogeneous spin-`S` chains with `N` bulk sites for each `N` in `n_list`
/// and each starting bulk site (1-based) in `positions`, or all of them.
pub fn invariance_suite(
    spin: HalfInt,
    n_list: &[usize],
    l: usize,
    positions: Option<&[usize]>,
    limits: &Limits,
) -> Result<InvarianceReport> {
    if l == 0 {
        return Err(VbsError::Domain("block length must be positive".into()));
    }
    let mut reference: Option<DensityMatrix<f64>> = None;
    let mut max_distance = 0.0f64;
    let mut cases = Vec::new();
    for &n in n_list {
        if n < l {
            return Err(VbsError::Domain(format!(
                "chain of {n} bulk sites cannot hold a block of {l}"
            )));
        }
        let state = ChainSpec::homogeneous(spin, n)?.vbs_state::<f64>(limits)?;
        let starts: Vec<usize> = match positions {
            Some(p) => p.iter().copied().filter(|&k| k >= 1 && k + l - 1 <= n).collect(),
            None => (1..=n - l + 1).collect(),
        };
        for k in starts {
            let rho = partial_trace(&state, &(k..k + l).collect::<Vec<_>>())?;
            match &reference {
                None => reference = Some(rho),
                Some(r) => max_distance = max_distance.max(r.frobenius_distance(&rho)),
            }
            cases.push((n, k));
        }
    }
    Ok(InvarianceReport {
        holds: max_distance < 1e-9,
        max_distance,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::CVector;

    fn c(x: f64) -> Complex<f64> {
        Complex::from(x)
    }

    fn epr() -> StateVector<f64> {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(vec![2, 2], CVector::from_vec(vec![c(0.0), c(r), c(-r), c(0.0)])).unwrap()
    }

    #[test]
    fn epr_pair_is_maximally_mixed() {
        let rho = partial_trace(&epr(), &[0]).unwrap();
        assert!((&rho.matrix - CMatrix::<f64>::identity(2, 2) * c(0.5)).norm() < 1e-15);
        let s = diagonalize(&rho, None);
        let e = s.entropies(&[2.0]).unwrap();
        assert!((e.von_neumann - 2f64.ln()).abs() < 1e-14);
        assert!((e.renyi[0].1 - 2f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn product_state_is_pure() {
        let st = StateVector::<f64>::product(vec![3, 2, 4], &[1, 0, 3]).unwrap();
        for k in 0..3 {
            let s = diagonalize(&partial_trace(&st, &[k]).unwrap(), None);
            assert_eq!(s.support_dim, 1);
            assert!((s.levels[0].value - 1.0).abs() < 1e-15);
            assert_eq!(s.entropies(&[]).unwrap().von_neumann, 0.0);
        }
    }

    #[test]
    fn uniform_spectrum_entropies() {
        let s = Spectrum::from_eigenvalues(vec![0.25; 4], ZERO_THRESHOLD);
        assert_eq!(
            s.levels,
            vec![Level {
                value: 0.25,
                degeneracy: 4
            }]
        );
        let e = s.entropies(&[0.5, 1.0, 2.0, 7.0]).unwrap();
        for (_, v) in e.renyi {
            assert!((v - 4f64.ln()).abs() < 1e-14);
        }
        assert!(s.entropies(&[0.0]).is_err());
        assert!(s.entropies(&[-1.0]).is_err());
    }

    #[test]
    fn zero_levels_are_separated() {
        let s = Spectrum::from_eigenvalues(
            vec![1.0 / 3.0, 2.0 / 9.0, 2.0 / 9.0 + 1e-12, 2.0 / 9.0, 1e-14, -1e-13],
            ZERO_THRESHOLD,
        );
        assert_eq!(s.support_dim, 4);
        assert_eq!(s.levels.len(), 3);
        assert_eq!(s.levels[1].degeneracy, 3);
        assert_eq!(
            s.levels[2],
            Level {
                value: 0.0,
                degeneracy: 2
            }
        );
        assert!((s.weighted_sum() - 1.0).abs() < 1e-11);
    }

    #[test]
    fn correlators_rebuild_a_qubit() {
        let st = epr();
        let a = partial_trace(&st, &[1]).unwrap();
        let b = density_from_correlators(&st, &[1]).unwrap();
        assert!(a.frobenius_distance(&b) < 1e-14);
        assert!(density_from_correlators(&st, &[]).is_err());
        assert!(partial_trace(&st, &[0, 1]).is_err());
    }
}
