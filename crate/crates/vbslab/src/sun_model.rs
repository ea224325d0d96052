//! SU(n) VBS chains through the two end spins.
//!
//! Pair states `|l,m> = (X^l Z^m ⊗ I)|0,0>` with `|0,0> = n^{-1/2} Σ_j |j, j>`
//! are indexed row-major as `l·n + m`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use crate::density_oracle::{entropies_from_levels, EntropyReport};
use crate::error::{Result, VbsError};
use crate::exact_algebra::SignedSqrtRational;
use crate::{real, CMatrix, CVector, Real};

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(VbsError::Domain(format!("SU(n) needs n >= 2, got {n}")));
    }
    Ok(())
}

fn check_l(l: usize) -> Result<u32> {
    if l == 0 {
        return Err(VbsError::Domain("block length must be at least 1".into()));
    }
    u32::try_from(l).map_err(|_| VbsError::Domain("block length too large".into()))
}

/// `X^l Z^m` on `C^n`.
#[derive(Clone, Debug)]
pub struct GenPauli<T: Real> {
    pub n: usize,
    pub l: usize,
    pub m: usize,
    pub matrix: CMatrix<T>,
}

/// Shift `X|j> = |j+1 mod n>`.
pub fn shift<T: Real>(n: usize) -> CMatrix<T> {
    let mut x = CMatrix::<T>::zeros(n, n);
    for j in 0..n {
        x[((j + 1) % n, j)] = Complex::from(T::one());
    }
    x
}

/// Clock `Z|j> = ω^j |j>`, `ω = e^{2πi/n}`.
pub fn clock<T: Real>(n: usize) -> CMatrix<T> {
    let mut z = CMatrix::<T>::zeros(n, n);
    for j in 0..n {
        z[(j, j)] = root_of_unity(n, j as i64);
    }
    z
}

/// `ω^k`, reduced mod n before the trig call.
pub fn root_of_unity<T: Real>(n: usize, k: i64) -> Complex<T> {
    let k = k.rem_euclid(n as i64) as f64;
    let angle = 2.0 * std::f64::consts::PI * k / n as f64;
    Complex::new(real::<T>(angle.cos()), real::<T>(angle.sin()))
}

/// `U_{l,m} = X^l Z^m`, indices taken mod n.
pub fn gen_pauli<T: Real>(n: usize, l: i64, m: i64) -> Result<GenPauli<T>> {
    check_n(n)?;
    let (l, m) = (l.rem_euclid(n as i64) as usize, m.rem_euclid(n as i64) as usize);
    let mut matrix = CMatrix::<T>::zeros(n, n);
    // X^l Z^m |j> = ω^{mj} |j + l>
    for j in 0..n {
        matrix[((j + l) % n, j)] = root_of_unity(n, (m * j) as i64);
    }
    Ok(GenPauli { n, l, m, matrix })
}

/// `|0,0>` on `C^n ⊗ C^n`.
pub fn max_entangled<T: Real>(n: usize) -> CVector<T> {
    let mut v = CVector::<T>::zeros(n * n);
    let w = Complex::from(real::<T>(1.0 / (n as f64).sqrt()));
    for j in 0..n {
        v[j * n + j] = w;
    }
    v
}

/// `|l,m> = (U_{l,m} ⊗ I)|0,0>`.
pub fn pair_state<T: Real>(n: usize, l: i64, m: i64) -> Result<CVector<T>> {
    let u = gen_pauli::<T>(n, l, m)?.matrix;
    Ok(u.kronecker(&CMatrix::<T>::identity(n, n)) * max_entangled::<T>(n))
}

/// `n² × n²` integer matrix with ones off the diagonal and zeros on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferMatrix {
    pub n: usize,
    pub matrix: DMatrix<i64>,
}

impl TransferMatrix {
    pub fn new(n: usize) -> Result<Self> {
        check_n(n)?;
        let d = n * n;
        let matrix = DMatrix::from_fn(d, d, |i, j| i64::from(i != j));
        Ok(TransferMatrix { n, matrix })
    }

    /// `T v` in exact integers.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.matrix.nrows())
            .map(|i| {
                v.iter()
                    .enumerate()
                    .filter(|&(j, _)| self.matrix[(i, j)] != 0)
                    .map(|(j, x)| x * self.matrix[(i, j)])
                    .sum()
            })
            .collect()
    }
}

/// Exact spectrum of the two-end-spin density matrix: one eigenvalue
/// `lambda_00` and `n² - 1` copies of `lambda_other`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SunSpectrum {
    pub n: usize,
    pub l: usize,
    pub lambda_00: BigRational,
    pub lambda_other: BigRational,
    /// `(-1/(n²-1))^L`.
    pub p: BigRational,
}

impl SunSpectrum {
    pub fn other_multiplicity(&self) -> usize {
        self.n * self.n - 1
    }

    /// `λ_00 + (n²-1) λ_other`.
    pub fn trace(&self) -> BigRational {
        &self.lambda_00 + &self.lambda_other * BigInt::from(self.other_multiplicity())
    }

    /// Eigenvalue of pair state `(l, m)`.
    pub fn lambda(&self, l: i64, m: i64) -> &BigRational {
        let n = self.n as i64;
        if l.rem_euclid(n) == 0 && m.rem_euclid(n) == 0 {
            &self.lambda_00
        } else {
            &self.lambda_other
        }
    }

    pub fn levels_f64(&self) -> Vec<(f64, usize)> {
        vec![
            (self.lambda_00.to_f64().unwrap_or(f64::NAN), 1),
            (
                self.lambda_other.to_f64().unwrap_or(f64::NAN),
                self.other_multiplicity(),
            ),
        ]
    }

    pub fn entropies(&self, alphas: &[f64]) -> Result<EntropyReport> {
        entropies_from_levels(&self.levels_f64(), alphas)
    }

    /// Degenerate-state normalization `C_{p,q} = 1/sqrt((n²-1)^L λ_{-p,-q}(L))`.
    /// Errors when that eigenvalue vanishes, since the state is then null.
    pub fn norm_factor(&self, p: i64, q: i64) -> Result<SignedSqrtRational> {
        let lam = self.lambda(-p, -q);
        if lam.is_zero() {
            return Err(VbsError::Domain(format!(
                "eigenvalue for ({p}, {q}) vanishes at L = {}; no such state",
                self.l
            )));
        }
        let scale: BigRational = Pow::pow(
            BigRational::from_integer(BigInt::from(self.other_multiplicity())),
            self.l as u32,
        );
        Ok(SignedSqrtRational::sqrt_of((scale * lam).recip()))
    }
}

fn p_of(n: usize, l: u32) -> BigRational {
    Pow::pow(BigRational::new(BigInt::from(-1), BigInt::from(n * n - 1)), l)
}

/// `(n²-1)^{-L} T^L e_(0,0)` by exact iteration.
pub fn transfer_spectrum(n: usize, l: usize) -> Result<SunSpectrum> {
    let len = check_l(l)?;
    let t = TransferMatrix::new(n)?;
    let mut v = vec![BigInt::zero(); n * n];
    v[0] = BigInt::one();
    for _ in 0..l {
        v = t.apply(&v);
    }
    let scale = Pow::pow(BigInt::from(n * n - 1), len);
    if v[1..].iter().any(|x| *x != v[1]) {
        return Err(VbsError::Domain("transfer vector is not two-valued".into()));
    }
    Ok(SunSpectrum {
        n,
        l,
        lambda_00: BigRational::new(v[0].clone(), scale.clone()),
        lambda_other: BigRational::new(v[1].clone(), scale),
        p: p_of(n, len),
    })
}

/// `λ_00 = (1 + (n²-1)p)/n²`, `λ_other = (1 - p)/n²`.
pub fn sun_closed_form(n: usize, l: usize) -> Result<SunSpectrum> {
    check_n(n)?;
    let len = check_l(l)?;
    let p = p_of(n, len);
    let nn = BigRational::from_integer(BigInt::from(n * n));
    let one = BigRational::one();
    Ok(SunSpectrum {
        n,
        l,
        lambda_00: (&one + &p * BigInt::from(n * n - 1)) / &nn,
        lambda_other: (&one - &p) / &nn,
        p,
    })
}

pub fn sun_entropies(n: usize, l: usize, alphas: &[f64]) -> Result<EntropyReport> {
    sun_closed_form(n, l)?.entropies(alphas)
}

/// Two-end-spin density matrix `Σ_{(l,m)} λ_{l,m} |l,m><l,m|` on `C^n ⊗ C^n`.
pub fn edge_density_matrix<T: Real>(spec: &SunSpectrum) -> Result<CMatrix<T>> {
    let n = spec.n;
    let mut rho = CMatrix::<T>::zeros(n * n, n * n);
    for l in 0..n as i64 {
        for m in 0..n as i64 {
            let v = pair_state::<T>(n, l, m)?;
            let w = real::<T>(spec.lambda(l, m).to_f64().unwrap_or(f64::NAN));
            rho += (&v * v.adjoint()) * Complex::from(w);
        }
    }
    Ok(rho)
}

/// `(n²-1)^{-L} Σ (U ⊗ I)|0,0><0,0|(U ⊗ I)†` over all words
/// `U = U_1 ... U_L` avoiding `(0,0)`. Cost grows as `(n²-1)^L`.
pub fn edge_density_direct<T: Real>(n: usize, l: usize) -> Result<CMatrix<T>> {
    check_n(n)?;
    let len = check_l(l)?;
    let letters: Vec<CMatrix<T>> = (0..n as i64)
        .flat_map(|a| (0..n as i64).map(move |b| (a, b)))
        .filter(|&ab| ab != (0, 0))
        .map(|(a, b)| gen_pauli::<T>(n, a, b).map(|g| g.matrix))
        .collect::<Result<_>>()?;
    let id = CMatrix::<T>::identity(n, n);
    let psi = max_entangled::<T>(n);
    let mut rho = CMatrix::<T>::zeros(n * n, n * n);
    let k = letters.len();
    let mut word = vec![0usize; l];
    loop {
        let u = word.iter().fold(id.clone(), |acc, &i| acc * &letters[i]);
        let v = u.kronecker(&id) * &psi;
        rho += &v * v.adjoint();
        // next word
        let mut pos = 0;
        loop {
            if pos == l {
                let scale = real::<T>((k as f64).powi(len as i32));
                return Ok(rho.unscale(scale));
            }
            word[pos] += 1;
            if word[pos] < k {
                break;
            }
            word[pos] = 0;
            pos += 1;
        }
    }
}

/// Largest deviation between the two sides of the entanglement swap
/// `|0,0>_{0 1̄} |0,0>_{1 2̄} = (1/n) Σ_{l,m} |l,m>_{0 2̄} |l,-m>_{1̄ 1}`,
/// both built in the site order `(0, 1̄, 1, 2̄)`.
pub fn swap_identity_residual(n: usize) -> Result<f64> {
    check_n(n)?;
    let psi = max_entangled::<f64>(n);
    let lhs = psi.kronecker(&psi);
    let mut rhs = CVector::<f64>::zeros(n.pow(4));
    for l in 0..n as i64 {
        for m in 0..n as i64 {
            let outer = pair_state::<f64>(n, l, m)?; // sites (0, 2̄)
            let inner = pair_state::<f64>(n, l, -m)?; // sites (1̄, 1)
            for a in 0..n {
                for d in 0..n {
                    for b in 0..n {
                        for c in 0..n {
                            let idx = ((a * n + b) * n + c) * n + d;
                            rhs[idx] += outer[a * n + d] * inner[b * n + c];
                        }
                    }
                }
            }
        }
    }
    rhs.unscale_mut(n as f64);
    Ok((lhs - rhs).camax())
}
