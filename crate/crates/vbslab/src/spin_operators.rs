//! Dense spin matrices, bond projectors and AKLT-type Hamiltonians.

use nalgebra::SymmetricEigen;
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Result, VbsError};
use crate::exact_algebra::HalfInt;
use crate::limits::{product_dim, Limits};
use crate::{real, CMatrix, Real};

/// `Sx, Sy, Sz` for one spin in the `m = S, ..., -S` basis.
#[derive(Clone, Debug)]
pub struct SpinMatrixSet<T: Real> {
    pub spin: HalfInt,
    pub sx: CMatrix<T>,
    pub sy: CMatrix<T>,
    pub sz: CMatrix<T>,
}

impl<T: Real> SpinMatrixSet<T> {
    pub fn casimir(&self) -> CMatrix<T> {
        &self.sx * &self.sx + &self.sy * &self.sy + &self.sz * &self.sz
    }

    pub fn raising(&self) -> CMatrix<T> {
        &self.sx + &self.sy * Complex::i()
    }

    pub fn lowering(&self) -> CMatrix<T> {
        &self.sx - &self.sy * Complex::i()
    }
}

pub fn spin_matrices<T: Real>(spin: HalfInt) -> Result<SpinMatrixSet<T>> {
    if spin.twice() < 1 {
        return Err(VbsError::Domain(format!("spin must be at least 1/2, got {spin}")));
    }
    let d = spin.multiplet_dim();
    let s = spin.to_f64();
    let mut sp = CMatrix::<T>::zeros(d, d);
    let mut sz = CMatrix::<T>::zeros(d, d);
    for i in 0..d {
        let m = s - i as f64;
        sz[(i, i)] = Complex::from(real::<T>(m));
        if i > 0 {
            // S+ |m> = sqrt((S-m)(S+m+1)) |m+1>, and m+1 sits one row up
            sp[(i - 1, i)] = Complex::from(real::<T>(((s - m) * (s + m + 1.0)).sqrt()));
        }
    }
    let sm = sp.adjoint();
    let half = Complex::from(real::<T>(0.5));
    let sx = (&sp + &sm) * half;
    let sy = (&sp - &sm) * (half * -Complex::<T>::i());
    Ok(SpinMatrixSet { spin, sx, sy, sz })
}

/// `S_k · S_l` on the two-site space, site `k` as the leading factor.
pub fn spin_dot<T: Real>(sk: HalfInt, sl: HalfInt) -> Result<CMatrix<T>> {
    let a = spin_matrices::<T>(sk)?;
    let b = spin_matrices::<T>(sl)?;
    Ok(a.sx.kronecker(&b.sx) + a.sy.kronecker(&b.sy) + a.sz.kronecker(&b.sz))
}

/// Projector onto total spin `J` of two spins.
#[derive(Clone, Debug)]
pub struct BondProjector<T: Real> {
    pub sk: HalfInt,
    pub sl: HalfInt,
    pub j: HalfInt,
    pub matrix: CMatrix<T>,
}

/// Product formula `Π_{j≠J} ((S_k+S_l)² - j(j+1)) / (J(J+1) - j(j+1))`.
pub fn bond_projector<T: Real>(sk: HalfInt, sl: HalfInt, j: HalfInt) -> Result<BondProjector<T>> {
    if !HalfInt::triangle(sk, sl, j) {
        return Err(VbsError::Domain(format!(
            "bond spin {j} not reachable from {sk} and {sl}"
        )));
    }
    let dot = spin_dot::<T>(sk, sl)?;
    let dim = dot.nrows();
    let id = CMatrix::<T>::identity(dim, dim);
    let total_sq =
        &id * Complex::from(real::<T>(casimir_f64(sk) + casimir_f64(sl))) + &dot * Complex::from(real::<T>(2.0));
    let mut matrix = id.clone();
    let jj = casimir_f64(j);
    let mut other = (sk - sl).abs();
    while other <= sk + sl {
        if other != j {
            let c = casimir_f64(other);
            let factor = (&total_sq - &id * Complex::from(real::<T>(c))) * Complex::from(real::<T>(1.0 / (jj - c)));
            matrix = &matrix * factor;
        }
        other = other + HalfInt::ONE;
    }
    Ok(BondProjector { sk, sl, j, matrix })
}

fn casimir_f64(s: HalfInt) -> f64 {
    let v = s.to_f64();
    v * (v + 1.0)
}

/// One bond of a Hamiltonian: `Σ_J C_J π_J(a, b)` over the forbidden bond spins.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bond {
    pub a: usize,
    pub b: usize,
    /// Number of valence bonds on this edge; fixes the forbidden bond spins.
    pub multiplicity: u32,
    /// Positive coefficients `C_J`, one per forbidden `J` in ascending order.
    /// `None` means all ones.
    pub coefficients: Option<Vec<f64>>,
}

impl Bond {
    pub fn new(a: usize, b: usize, multiplicity: u32) -> Self {
        Bond {
            a,
            b,
            multiplicity,
            coefficients: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianSpec {
    pub sites: Vec<HalfInt>,
    pub bonds: Vec<Bond>,
}

impl HamiltonianSpec {
    /// Open chain with bonds `(i, i+1)` of the given multiplicities.
    pub fn chain(sites: Vec<HalfInt>, multiplicities: &[u32]) -> Result<Self> {
        if multiplicities.len() + 1 != sites.len() {
            return Err(VbsError::Domain(format!(
                "{} sites need {} multiplicities, got {}",
                sites.len(),
                sites.len().saturating_sub(1),
                multiplicities.len()
            )));
        }
        let bonds = multiplicities
            .iter()
            .enumerate()
            .map(|(i, &m)| Bond::new(i, i + 1, m))
            .collect();
        let spec = HamiltonianSpec { sites, bonds };
        spec.validate()?;
        Ok(spec)
    }

    /// Bond spins penalized on `bond`: `S_a+S_b-M+1, ..., S_a+S_b`.
    pub fn forbidden(&self, bond: &Bond) -> Vec<HalfInt> {
        let top = self.sites[bond.a] + self.sites[bond.b];
        (0..bond.multiplicity as i64)
            .rev()
            .map(|k| top - HalfInt::from_int(k))
            .collect()
    }

    pub fn local_dims(&self) -> Vec<usize> {
        self.sites.iter().map(|s| s.multiplet_dim()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for (i, s) in self.sites.iter().enumerate() {
            if s.twice() < 1 {
                return Err(VbsError::Domain(format!("site {i} has spin {s}; need at least 1/2")));
            }
        }
        for bond in &self.bonds {
            let n = self.sites.len();
            if bond.a == bond.b || bond.a >= n || bond.b >= n {
                return Err(VbsError::Domain(format!(
                    "bond ({}, {}) invalid for {n} sites",
                    bond.a, bond.b
                )));
            }
            let (sa, sb) = (self.sites[bond.a], self.sites[bond.b]);
            if bond.multiplicity == 0 || i64::from(bond.multiplicity) > sa.twice().min(sb.twice()) {
                return Err(VbsError::Domain(format!(
                    "multiplicity {} impossible between spins {sa} and {sb}",
                    bond.multiplicity
                )));
            }
            if let Some(c) = &bond.coefficients {
                if c.len() != bond.multiplicity as usize || c.iter().any(|&x| x.is_nan() || x <= 0.0) {
                    return Err(VbsError::Domain(format!(
                        "bond ({}, {}) needs {} positive coefficients",
                        bond.a, bond.b, bond.multiplicity
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Add `op` (acting on sites `a` then `b`) into `target`, identity elsewhere.
fn add_two_site<T: Real>(target: &mut CMatrix<T>, op: &CMatrix<T>, dims: &[usize], a: usize, b: usize) {
    let stride = |site: usize| dims[site + 1..].iter().product::<usize>();
    let (sa, sb) = (stride(a), stride(b));
    let (da, db) = (dims[a], dims[b]);
    for col in 0..target.ncols() {
        let ia = (col / sa) % da;
        let ib = (col / sb) % db;
        let base = col - ia * sa - ib * sb;
        let src = ia * db + ib;
        for ja in 0..da {
            for jb in 0..db {
                let v = op[(ja * db + jb, src)];
                if v != Complex::from(T::zero()) {
                    target[(base + ja * sa + jb * sb, col)] += v;
                }
            }
        }
    }
}

fn bond_operator<T: Real>(spec: &HamiltonianSpec, bond: &Bond) -> Result<CMatrix<T>> {
    let (sa, sb) = (spec.sites[bond.a], spec.sites[bond.b]);
    let d = sa.multiplet_dim() * sb.multiplet_dim();
    let mut op = CMatrix::<T>::zeros(d, d);
    for (k, j) in spec.forbidden(bond).into_iter().enumerate() {
        let c = bond.coefficients.as_ref().map_or(1.0, |c| c[k]);
        op += bond_projector::<T>(sa, sb, j)?.matrix * Complex::from(real::<T>(c));
    }
    Ok(op)
}

pub fn assemble_hamiltonian<T: Real>(spec: &HamiltonianSpec) -> Result<CMatrix<T>> {
    assemble_hamiltonian_with(spec, &Limits::from_env()?)
}

pub fn assemble_hamiltonian_with<T: Real>(spec: &HamiltonianSpec, limits: &Limits) -> Result<CMatrix<T>> {
    spec.validate()?;
    let dims = spec.local_dims();
    let total = product_dim(dims.iter().copied());
    limits.check_dim("Hamiltonian", total)?;
    let mut h = CMatrix::<T>::zeros(total as usize, total as usize);
    for bond in &spec.bonds {
        let op = bond_operator::<T>(spec, bond)?;
        add_two_site(&mut h, &op, &dims, bond.a, bond.b);
    }
    Ok(h)
}

/// Hamiltonian of a block: only bonds with both ends inside, acting on the
/// block sites in ascending order.
#[derive(Clone, Debug)]
pub struct BlockHamiltonian<T: Real> {
    pub sites: Vec<usize>,
    pub local_dims: Vec<usize>,
    pub internal_bonds: usize,
    pub matrix: CMatrix<T>,
}

pub fn block_hamiltonian<T: Real>(spec: &HamiltonianSpec, block_sites: &[usize]) -> Result<BlockHamiltonian<T>> {
    block_hamiltonian_with(spec, block_sites, &Limits::from_env()?)
}

pub fn block_hamiltonian_with<T: Real>(
    spec: &HamiltonianSpec,
    block_sites: &[usize],
    limits: &Limits,
) -> Result<BlockHamiltonian<T>> {
    let mut sites = block_sites.to_vec();
    sites.sort_unstable();
    sites.dedup();
    if sites.is_empty() {
        return Err(VbsError::Domain("empty block".into()));
    }
    if let Some(&bad) = sites.iter().find(|&&s| s >= spec.sites.len()) {
        return Err(VbsError::Domain(format!("block site {bad} out of range")));
    }
    let position = |s: usize| sites.iter().position(|&x| x == s);
    let bonds: Vec<Bond> = spec
        .bonds
        .iter()
        .filter_map(|b| {
            let (a, c) = (position(b.a)?, position(b.b)?);
            Some(Bond { a, b: c, ..b.clone() })
        })
        .collect();
    let sub = HamiltonianSpec {
        sites: sites.iter().map(|&s| spec.sites[s]).collect(),
        bonds,
    };
    let matrix = assemble_hamiltonian_with(&sub, limits)?;
    Ok(BlockHamiltonian {
        local_dims: sub.local_dims(),
        internal_bonds: sub.bonds.len(),
        sites,
        matrix,
    })
}

/// Default relative tolerance for [`kernel_dimension`].
pub const KERNEL_TOL: f64 = 1e-8;

/// Number of eigenvalues with `|λ| < tol · max|λ|`; every eigenvalue counts
/// for the zero matrix.
pub fn kernel_dimension<T: Real>(h: &CMatrix<T>, tol: Option<f64>) -> usize {
    let eig = SymmetricEigen::new(h.clone()).eigenvalues;
    let scale = eig.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if scale == T::zero() {
        return eig.len();
    }
    let cut = scale * real::<T>(tol.unwrap_or(KERNEL_TOL));
    eig.iter().filter(|v| v.abs() < cut).count()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn close(a: &CMatrix<f64>, b: &CMatrix<f64>, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn spin_one_half_is_pauli_over_two() {
        let s = spin_matrices::<f64>(h(1)).unwrap();
        let c = |re: f64, im: f64| Complex::new(re, im);
        let sx = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0.5, 0.), c(0.5, 0.), c(0., 0.)]);
        let sy = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -0.5), c(0., 0.5), c(0., 0.)]);
        let sz = CMatrix::from_row_slice(2, 2, &[c(0.5, 0.), c(0., 0.), c(0., 0.), c(-0.5, 0.)]);
        assert!(close(&s.sx, &sx, 1e-15));
        assert!(close(&s.sy, &sy, 1e-15));
        assert!(close(&s.sz, &sz, 1e-15));
    }

    #[test]
    fn spin_one_sz_and_three_halves_casimir() {
        let s1 = spin_matrices::<f64>(h(2)).unwrap();
        for (i, m) in [1.0, 0.0, -1.0].into_iter().enumerate() {
            assert_eq!(s1.sz[(i, i)].re, m);
        }
        let s32 = spin_matrices::<f64>(h(3)).unwrap();
        let id = CMatrix::<f64>::identity(4, 4) * Complex::from(15.0 / 4.0);
        assert!(close(&s32.casimir(), &id, 1e-12));
        assert!(spin_matrices::<f64>(h(0)).is_err());
    }

    #[test]
    fn spin_one_bond_two_matches_quadratic() {
        let x = spin_dot::<f64>(h(2), h(2)).unwrap();
        let id = CMatrix::<f64>::identity(9, 9);
        let expected = &x * &x * Complex::from(1.0 / 6.0) + &x * Complex::from(0.5) + id * Complex::from(1.0 / 3.0);
        let p = bond_projector::<f64>(h(2), h(2), h(4)).unwrap();
        assert!(close(&p.matrix, &expected, 1e-12));
    }

    #[test]
    fn singlet_projector_trace_one() {
        let p = bond_projector::<f64>(h(1), h(1), h(0)).unwrap();
        assert!((p.matrix.trace().re - 1.0).abs() < 1e-14);
        assert!(bond_projector::<f64>(h(1), h(1), h(4)).is_err());
    }

    #[test]
    fn one_and_three_halves_complete() {
        let d = 3 * 4;
        let mut sum = CMatrix::<f64>::zeros(d, d);
        for j in [1, 3, 5] {
            sum += bond_projector::<f64>(h(2), h(3), h(j)).unwrap().matrix;
        }
        assert!(close(&sum, &CMatrix::identity(d, d), 1e-12));
    }

    #[test]
    fn single_bond_hamiltonian_is_projector() {
        let spec = HamiltonianSpec::chain(vec![h(2), h(2)], &[1]).unwrap();
        let m = assemble_hamiltonian_with::<f64>(&spec, &Limits::default()).unwrap();
        assert!(close(&(&m * &m), &m, 1e-12));
        assert!(close(
            &m,
            &bond_projector::<f64>(h(2), h(2), h(4)).unwrap().matrix,
            1e-12
        ));
    }

    #[test]
    fn spin_one_bulk_term_matches_dot_polynomial() {
        let x = spin_dot::<f64>(h(2), h(2)).unwrap();
        let id = CMatrix::<f64>::identity(9, 9);
        let expected = (&x + &x * &x * Complex::from(1.0 / 3.0) + id * Complex::from(2.0 / 3.0)) * Complex::from(0.5);
        let spec = HamiltonianSpec::chain(vec![h(2), h(2)], &[1]).unwrap();
        let m = assemble_hamiltonian_with::<f64>(&spec, &Limits::default()).unwrap();
        assert!(close(&m, &expected, 1e-12));
    }

    #[test]
    fn boundary_projector_spin_one_half_spin_one() {
        // the bond spin 3/2 between a spin-1/2 and a spin-1: (2/3)(1 + S0·S1)
        let x = spin_dot::<f64>(h(1), h(2)).unwrap();
        let expected = (CMatrix::<f64>::identity(6, 6) + x) * Complex::from(2.0 / 3.0);
        let p = bond_projector::<f64>(h(1), h(2), h(3)).unwrap();
        assert!(close(&p.matrix, &expected, 1e-12));
    }

    #[test]
    fn block_kernels() {
        let lim = Limits::default();
        let spin1 = HamiltonianSpec::chain(vec![h(1), h(2), h(2), h(2), h(1)], &[1, 1, 1, 1]).unwrap();
        let single = block_hamiltonian_with::<f64>(&spin1, &[2], &lim).unwrap();
        assert_eq!(single.internal_bonds, 0);
        assert_eq!(kernel_dimension(&single.matrix, None), 3);
        let two = block_hamiltonian_with::<f64>(&spin1, &[1, 2], &lim).unwrap();
        assert_eq!(kernel_dimension(&two.matrix, None), 4);
        let three = block_hamiltonian_with::<f64>(&spin1, &[1, 2, 3], &lim).unwrap();
        assert_eq!(kernel_dimension(&three.matrix, None), 4);
        assert!(block_hamiltonian_with::<f64>(&spin1, &[], &lim).is_err());

        let spin2 = HamiltonianSpec::chain(vec![h(2), h(4), h(4), h(2)], &[2, 2, 2]).unwrap();
        let b = block_hamiltonian_with::<f64>(&spin2, &[1, 2], &lim).unwrap();
        assert_eq!(kernel_dimension(&b.matrix, None), 9);
        assert_eq!(kernel_dimension(&CMatrix::<f64>::zeros(9, 9), None), 9);
    }

    #[test]
    fn cap_is_enforced() {
        let spec = HamiltonianSpec::chain(vec![h(2); 4], &[1, 1, 1]).unwrap();
        let err = assemble_hamiltonian_with::<f64>(&spec, &Limits::default().with_dim_cap(80)).unwrap_err();
        assert!(matches!(err, VbsError::ResourceCap { needed: 81, .. }));
    }

    #[test]
    fn bad_specs_rejected() {
        assert!(HamiltonianSpec::chain(vec![h(1), h(1)], &[2]).is_err());
        assert!(HamiltonianSpec::chain(vec![h(2), h(2)], &[]).is_err());
        let mut spec = HamiltonianSpec::chain(vec![h(2), h(2)], &[1]).unwrap();
        spec.bonds[0].coefficients = Some(vec![-1.0]);
        assert!(spec.validate().is_err());
    }
}
