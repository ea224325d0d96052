//! Closed-form block spectra for SU(2) chains.
//!
//! Every eigenvalue is an exact rational. Floats appear only in entropies.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::density_oracle::{entropies_from_levels, EntropyReport};
use crate::error::{Result, VbsError};
use crate::exact_algebra::{factorial, lambda_coeff, threej_000, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Spin1,
    ThreejSum,
    Recurrence,
    Inhom,
    Limit,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Spin1 => "spin1",
            Method::ThreejSum => "threej_sum",
            Method::Recurrence => "recurrence",
            Method::Inhom => "inhom",
            Method::Limit => "limit",
        }
    }
}

/// One eigenvalue `Λ(J)` with multiplicity `2J+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumEntry {
    pub j: HalfInt,
    pub lambda: BigRational,
    pub degeneracy: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormSpectrum {
    pub method: Method,
    /// Ascending in `J`.
    pub entries: Vec<SpectrumEntry>,
}

impl ClosedFormSpectrum {
    fn from_lambdas(method: Method, items: impl IntoIterator<Item = (HalfInt, BigRational)>) -> Self {
        let entries = items
            .into_iter()
            .map(|(j, lambda)| SpectrumEntry {
                j,
                lambda,
                degeneracy: j.multiplet_dim(),
            })
            .collect();
        ClosedFormSpectrum { method, entries }
    }

    /// `Σ (2J+1) Λ(J)`.
    pub fn trace(&self) -> BigRational {
        self.entries
            .iter()
            .map(|e| &e.lambda * BigInt::from(e.degeneracy))
            .sum()
    }

    pub fn lambda(&self, j: HalfInt) -> Option<&BigRational> {
        self.entries.iter().find(|e| e.j == j).map(|e| &e.lambda)
    }

    /// Same `J` labels and identical exact eigenvalues.
    pub fn same_values(&self, other: &ClosedFormSpectrum) -> bool {
        self.entries.len() == other.entries.len()
            && self
                .entries
                .iter()
                .zip(&other.entries)
                .all(|(a, b)| a.j == b.j && a.lambda == b.lambda && a.degeneracy == b.degeneracy)
    }

    /// `(value, multiplicity)` pairs as floats.
    pub fn levels_f64(&self) -> Vec<(f64, usize)> {
        self.entries
            .iter()
            .map(|e| (e.lambda.to_f64().unwrap_or(f64::NAN), e.degeneracy))
            .collect()
    }

    /// Nonzero eigenvalues with multiplicity, largest first.
    pub fn nonzero_values_f64(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .levels_f64()
            .into_iter()
            .filter(|(x, _)| *x != 0.0)
            .flat_map(|(x, d)| std::iter::repeat_n(x, d))
            .collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    /// Number of nonzero eigenvalues counted with multiplicity.
    pub fn support_dim(&self) -> usize {
        self.entries
            .iter()
            .filter(|e| !e.lambda.is_zero())
            .map(|e| e.degeneracy)
            .sum()
    }

    pub fn entropies(&self, alphas: &[f64]) -> Result<EntropyReport> {
        entropies_from_levels(&self.levels_f64(), alphas)
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `(-1/3)^L`.
fn minus_third_pow(l: u32) -> BigRational {
    Pow::pow(q(-1, 3), l)
}

fn require_block(l: usize, min: usize) -> Result<u32> {
    if l < min {
        return Err(VbsError::Domain(format!(
            "block length must be at least {min}, got {l}"
        )));
    }
    u32::try_from(l).map_err(|_| VbsError::Domain("block length too large".into()))
}

fn integer_spin(spin: HalfInt) -> Result<u32> {
    spin.as_int()
        .filter(|&s| s >= 1)
        .and_then(|s| u32::try_from(s).ok())
        .ok_or_else(|| VbsError::Domain(format!("homogeneous chains need integer S >= 1, got {spin}")))
}

/// Spin-1 block: `Λ_0 = (1 + 3p)/4`, `Λ_1 = (1 - p)/4` with `p = (-1/3)^L`.
pub fn spin1_spectrum(l: usize) -> Result<ClosedFormSpectrum> {
    let p = minus_third_pow(require_block(l, 1)?);
    let quarter = q(1, 4);
    Ok(ClosedFormSpectrum::from_lambdas(
        Method::Spin1,
        [
            (HalfInt::ZERO, (int(1) + &p * BigInt::from(3)) * &quarter),
            (HalfInt::ONE, (int(1) - &p) * &quarter),
        ],
    ))
}

/// `(A_L, B_L)` from `A_{n+1} = 3 B_n`, `B_{n+1} = A_n + 2 B_n`, `A_0 = 1`,
/// `B_0 = 0`. Dividing by `3^L` gives the two spin-1 eigenvalues.
pub fn spin1_iteration(l: usize) -> (BigInt, BigInt) {
    let (mut a, mut b) = (BigInt::one(), BigInt::zero());
    for _ in 0..l {
        let next_b = &a + &b * 2;
        a = b * 3;
        b = next_b;
    }
    (a, b)
}

/// Spin-1 entropies evaluated directly from the two closed-form eigenvalues.
pub fn spin1_entropies(l: usize, alphas: &[f64]) -> Result<EntropyReport> {
    require_block(l, 1)?;
    if let Some(a) = alphas.iter().find(|a| !(a.is_finite() && **a > 0.0)) {
        return Err(VbsError::Domain(format!("Rényi order must be positive, got {a}")));
    }
    let p = (-1.0f64 / 3.0).powi(l as i32);
    let (u, v) = (1.0 + 3.0 * p, 1.0 - p);
    let xlnx = |x: f64| if x == 0.0 { 0.0 } else { x * x.ln() };
    let von_neumann = 4f64.ln() - 0.25 * xlnx(u) - 0.75 * xlnx(v);
    let renyi = alphas
        .iter()
        .map(|&a| {
            if a == 1.0 {
                (a, von_neumann)
            } else {
                let s = (u / 4.0).powf(a) + 3.0 * (v / 4.0).powf(a);
                (a, s.ln() / (1.0 - a))
            }
        })
        .collect();
    Ok(EntropyReport { von_neumann, renyi })
}

fn threej_sq(a: u32, b: u32, c: u32) -> BigRational {
    threej_000(a, b, c).square().clone()
}

fn lambda(l: u32, m: u32) -> BigRational {
    lambda_coeff(l.into(), m.into()).expect("caller keeps l <= M")
}

fn fact(k: u32) -> BigInt {
    factorial(k.into())
}

/// Spin-`S` block eigenvalues from the triple sum over Legendre orders with
/// squared zero-projection 3j symbols.
pub fn spin_s_spectrum_sum(spin: HalfInt, l: usize) -> Result<ClosedFormSpectrum> {
    let s = integer_spin(spin)?;
    let len = require_block(l, 2)?;
    let items = (0..=s).map(|j| {
        let pref = BigRational::new(
            fact(2 * j + 1) * fact(s) * fact(s),
            fact(s + j + 1) * fact(s - j + 1) * fact(j + 1) * fact(j + 1),
        );
        let mut sum = BigRational::zero();
        for l1 in 0..=s {
            let bulk = Pow::pow(lambda(l1, s), len - 1) * int(2 * l1 + 1);
            for ll in 0..=s - j {
                let end = lambda(ll, s - j) * int(2 * ll + 1);
                for k in 0..=j {
                    let w = threej_sq(l1, ll, k);
                    if w.is_zero() {
                        continue;
                    }
                    let mid = lambda(k, j);
                    sum += &bulk * &end * &mid * &mid * int(2 * k + 1) * w;
                }
            }
        }
        (HalfInt::from_int(j.into()), pref * sum)
    });
    Ok(ClosedFormSpectrum::from_lambdas(
        Method::ThreejSum,
        items.collect::<Vec<_>>(),
    ))
}

/// Polynomials `I_l(x)`, `l = 0..=S`, evaluated at `x_J = J(J+1)/2 - (S/2)(S/2+1)`
/// for `J = 0..=S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrencePolynomialState {
    pub spin: HalfInt,
    pub points: Vec<BigRational>,
    /// `values[l][J]`.
    pub values: Vec<Vec<BigRational>>,
}

pub fn recurrence_polynomials(spin: HalfInt) -> Result<RecurrencePolynomialState> {
    let s = integer_spin(spin)?;
    let sr = int(s);
    let half_s = &sr / int(2);
    let points: Vec<BigRational> = (0..=s)
        .map(|j| int(j * (j + 1)) / int(2) - &half_s * (&half_s + int(1)))
        .collect();
    let denom1 = Pow::pow(&half_s + int(1), 2u32);
    let mut values = vec![
        vec![BigRational::one(); points.len()],
        points.iter().map(|x| x / &denom1).collect::<Vec<_>>(),
    ];
    for l in 1..s {
        let lr = int(l);
        let head = int(2 * l + 1) / Pow::pow(int(s + l + 2), 2u32);
        let tail = &lr / int(l + 1) * Pow::pow(int(s) - &lr + int(1), 2u32) / Pow::pow(int(s + l + 2), 2u32);
        let (cur, prev) = (&values[l as usize], &values[l as usize - 1]);
        let next = points
            .iter()
            .zip(cur.iter().zip(prev))
            .map(|(x, (c, p))| &head * (x * int(4) / int(l + 1) + &lr) * c - &tail * p)
            .collect();
        values.push(next);
    }
    values.truncate(s as usize + 1);
    Ok(RecurrencePolynomialState { spin, points, values })
}

/// `Λ(J) = (S+1)^{-2} Σ_l (2l+1) λ(l,S)^{L-1} I_l(x_J)`.
pub fn spin_s_spectrum_recurrence(spin: HalfInt, l: usize) -> Result<ClosedFormSpectrum> {
    let s = integer_spin(spin)?;
    let len = require_block(l, 2)?;
    let poly = recurrence_polynomials(spin)?;
    let weights: Vec<BigRational> = (0..=s)
        .map(|k| Pow::pow(lambda(k, s), len - 1) * int(2 * k + 1))
        .collect();
    let norm = Pow::pow(int(s + 1), 2u32);
    let items: Vec<(HalfInt, BigRational)> = (0..=s as usize)
        .map(|j| {
            let sum: BigRational = weights.iter().zip(&poly.values).map(|(w, row)| w * &row[j]).sum();
            (HalfInt::from_int(j as i64), sum / &norm)
        })
        .collect();
    Ok(ClosedFormSpectrum::from_lambdas(Method::Recurrence, items))
}

/// Block eigenvalues for arbitrary bond multiplicities `M_01, ..., M_{L,L+1}`.
pub fn inhom_spectrum(block_multiplicities: &[u32]) -> Result<ClosedFormSpectrum> {
    let ms = block_multiplicities;
    if ms.len() < 3 {
        return Err(VbsError::Domain(
            "need M_01, at least one interior multiplicity, and M_{L,L+1}".into(),
        ));
    }
    if ms.contains(&0) {
        return Err(VbsError::Domain("multiplicities must be positive".into()));
    }
    let (first, last) = (ms[0], ms[ms.len() - 1]);
    let interior = &ms[1..ms.len() - 1];
    let m_min = *interior.iter().min().expect("nonempty");
    // twice J_+ and twice J_-
    let tj_plus = i64::from(first + last);
    let tj_minus = i64::from(first) - i64::from(last);
    let mut items = Vec::new();
    let mut tj = tj_minus.abs();
    while tj <= tj_plus {
        // all four are integers since J - J_- is
        let jp_m = ((tj_plus - tj) / 2) as u32; // J_+ - J
        let jm_p = ((tj_minus + tj) / 2) as u32; // J_- + J
        let mj_p = ((tj - tj_minus) / 2) as u32; // -J_- + J
        let two_j = tj as u32;
        let j_lt = jm_p.min(mj_p);
        let pref = BigRational::new(
            fact(two_j + 1) * fact(first) * fact(last),
            fact(((tj_plus + tj) / 2) as u32 + 1) * fact(jm_p + 1) * fact(jp_m + 1) * fact(mj_p + 1),
        );
        let mut sum = BigRational::zero();
        for k in 0..=m_min {
            let bulk = interior.iter().fold(int(2 * k + 1), |acc, &m| acc * lambda(k, m));
            for la in 0..=jp_m {
                let end = lambda(la, jp_m) * int(2 * la + 1);
                for lb in 0..=j_lt {
                    let w = threej_sq(k, la, lb);
                    if w.is_zero() {
                        continue;
                    }
                    sum += &bulk * &end * lambda(lb, jm_p) * lambda(lb, mj_p) * int(2 * lb + 1) * w;
                }
            }
        }
        items.push((HalfInt::from_twice(tj), pref * sum));
        tj += 2;
    }
    Ok(ClosedFormSpectrum::from_lambdas(Method::Inhom, items))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LimitKind {
    Spin1,
    SpinS(u32),
    /// Multiplicities of the two cut bonds.
    Inhom(u32, u32),
}

/// Infinite-block spectrum: every nonzero eigenvalue equals `1/D` where `D`
/// is the ground-space dimension, so both entropies are `ln D`.
pub fn large_block_limit(kind: LimitKind, alphas: &[f64]) -> Result<(ClosedFormSpectrum, EntropyReport)> {
    let (left, right) = match kind {
        LimitKind::Spin1 => (1, 1),
        LimitKind::SpinS(s) => (s, s),
        LimitKind::Inhom(a, b) => (a, b),
    };
    if left == 0 || right == 0 {
        return Err(VbsError::Domain("limit parameters must be positive".into()));
    }
    let value = BigRational::new(BigInt::one(), BigInt::from((left + 1) * (right + 1)));
    let lo = i64::from(left.abs_diff(right));
    let hi = i64::from(left + right);
    let items = (lo..=hi).step_by(2).map(|tj| (HalfInt::from_twice(tj), value.clone()));
    let spec = ClosedFormSpectrum::from_lambdas(Method::Limit, items.collect::<Vec<_>>());
    let report = spec.entropies(alphas)?;
    Ok((spec, report))
}

/// `<VBS|VBS> = [(2S+1)!/(S+1)]^N S!(S+1)!` for `N` spin-`S` bulk sites
/// between spin-`S/2` ends.
pub fn vbs_norm_homogeneous(spin: HalfInt, n_bulk: usize) -> Result<BigRational> {
    let s = integer_spin(spin)?;
    let n = require_block(n_bulk, 1)?;
    let site = BigRational::new(fact(2 * s + 1), BigInt::from(s + 1));
    Ok(Pow::pow(site, n) * int(fact(s) * fact(s + 1)))
}

/// `<VBS|VBS> = Π_j (2S_j+1)! / Π_j (M_{j,j+1}+1)` over the whole chain,
/// ends included.
pub fn vbs_norm_inhomogeneous(spins: &[HalfInt], multiplicities: &[u32]) -> Result<BigRational> {
    if multiplicities.len() + 1 != spins.len() {
        return Err(VbsError::Domain("need one multiplicity per adjacent pair".into()));
    }
    let num = spins
        .iter()
        .fold(BigInt::one(), |acc, s| acc * factorial((s.twice() + 1) as u64));
    let den = multiplicities
        .iter()
        .fold(BigInt::one(), |acc, &m| acc * BigInt::from(m + 1));
    Ok(BigRational::new(num, den))
}

/// Norm of a spin-1 degenerate block state built from Schwinger bosons:
/// `(3^L + 3(-1)^L)/2` for `J = 0`, `(3^L - (-1)^L)/2` for `J = 1`.
pub fn degenerate_norm_spin1(l: usize, j: HalfInt) -> Result<BigRational> {
    let len = require_block(l, 1)?;
    let three = Pow::pow(int(3), len);
    let sign = if len % 2 == 0 { int(1) } else { int(-1) };
    match j.as_int() {
        Some(0) => Ok((three + sign * int(3)) / int(2)),
        Some(1) => Ok((three - sign) / int(2)),
        _ => Err(VbsError::Domain(format!("spin-1 blocks have J = 0 or 1, got {j}"))),
    }
}

/// Norm of a spin-1 degenerate block state built from maximally entangled
/// pairs: `(3^L + 3(-1)^L)/4` for the singlet label, `(3^L - (-1)^L)/4`
/// for the three triplet labels.
pub fn degenerate_norm_spin1_mes(l: usize, alpha: usize) -> Result<BigRational> {
    if alpha > 3 {
        return Err(VbsError::Domain(format!("pair label must be 0..=3, got {alpha}")));
    }
    let j = if alpha == 0 { HalfInt::ZERO } else { HalfInt::ONE };
    Ok(degenerate_norm_spin1(l, j)? / int(2))
}

/// `Λ(J) = [(S+1)/(2S+1)!]^L (S!S!/(S+1)) <VBS_L(J,M)|VBS_L(J,M)>`, solved
/// for the norm.
pub fn degenerate_norm_from_lambda(spin: HalfInt, l: usize, lambda_j: &BigRational) -> Result<BigRational> {
    let s = integer_spin(spin)?;
    let len = require_block(l, 1)?;
    let site = BigRational::new(BigInt::from(s + 1), fact(2 * s + 1));
    let factor = Pow::pow(site, len) * BigRational::new(fact(s) * fact(s), BigInt::from(s + 1));
    Ok(lambda_j / factor)
}

/// Inhomogeneous counterpart:
/// `Λ(J) = Π_{interior}(M+1) M_01! M_{L,L+1}! / Π_{block}(2S_j+1)! · <norm>`.
pub fn degenerate_norm_from_lambda_inhom(block_multiplicities: &[u32], lambda_j: &BigRational) -> Result<BigRational> {
    let ms = block_multiplicities;
    if ms.len() < 2 {
        return Err(VbsError::Domain("need at least two multiplicities".into()));
    }
    let interior = ms[1..ms.len() - 1]
        .iter()
        .fold(BigInt::one(), |acc, &m| acc * BigInt::from(m + 1));
    let sites = ms.windows(2).fold(BigInt::one(), |acc, w| acc * fact(w[0] + w[1] + 1));
    let factor = BigRational::new(interior * fact(ms[0]) * fact(ms[ms.len() - 1]), sites);
    Ok(lambda_j / factor)
}

/// Largest `|Λ(J) - Λ_∞|` over the entries of a homogeneous spectrum.
pub fn deviation_from_limit(spec: &ClosedFormSpectrum, limit: &BigRational) -> BigRational {
    spec.entries
        .iter()
        .map(|e| (&e.lambda - limit).abs())
        .max()
        .unwrap_or_else(BigRational::zero)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn values(spec: &ClosedFormSpectrum) -> Vec<BigRational> {
        spec.entries.iter().map(|e| e.lambda.clone()).collect()
    }

    #[test]
    fn spin1_small_blocks() {
        assert_eq!(values(&spin1_spectrum(1).unwrap()), vec![q(0, 1), q(1, 3)]);
        assert_eq!(values(&spin1_spectrum(2).unwrap()), vec![q(1, 3), q(2, 9)]);
        assert_eq!(spin1_spectrum(2).unwrap().entries[1].degeneracy, 3);
        assert!(spin1_spectrum(0).is_err());
    }

    #[test]
    fn spin1_iteration_matches() {
        for l in 1..15 {
            let (a, b) = spin1_iteration(l);
            let p = Pow::pow(int(3), l as u32);
            let spec = spin1_spectrum(l).unwrap();
            assert_eq!(int(a) / &p, spec.entries[0].lambda);
            assert_eq!(int(b) / &p, spec.entries[1].lambda);
        }
    }

    #[test]
    fn spin2_two_sites() {
        let spec = spin_s_spectrum_sum(h(4), 2).unwrap();
        assert_eq!(values(&spec), vec![q(1, 5), q(3, 20), q(7, 100)]);
        assert_eq!(spec.trace(), int(1));
        assert_eq!(spin_s_spectrum_recurrence(h(4), 2).unwrap().entries, spec.entries);
    }

    #[test]
    fn recurrence_initial_polynomials() {
        let st = recurrence_polynomials(h(6)).unwrap();
        assert!(st.values[0].iter().all(|v| v.is_one()));
        let d = Pow::pow(q(5, 2), 2u32);
        for (x, v) in st.points.iter().zip(&st.values[1]) {
            assert_eq!(*v, x / &d);
        }
        assert_eq!(st.values.len(), 4);
    }

    #[test]
    fn routes_reject_bad_input() {
        assert!(spin_s_spectrum_sum(h(4), 1).is_err());
        assert!(spin_s_spectrum_recurrence(h(3), 3).is_err());
        assert!(inhom_spectrum(&[1, 1]).is_err());
        assert!(inhom_spectrum(&[1, 0, 1]).is_err());
    }

    #[test]
    fn inhom_trace_and_specialization() {
        let spec = inhom_spectrum(&[1, 2, 1]).unwrap();
        assert_eq!(spec.trace(), int(1));
        assert_eq!(spec.entries.len(), 2);
        let hom = spin_s_spectrum_sum(h(4), 3).unwrap();
        assert_eq!(inhom_spectrum(&[2, 2, 2, 2]).unwrap().entries, hom.entries);
        let odd = inhom_spectrum(&[3, 1, 2, 2]).unwrap();
        assert_eq!(odd.trace(), int(1));
        assert_eq!(odd.entries[0].j, h(1));
    }

    #[test]
    fn limits() {
        let (s, e) = large_block_limit(LimitKind::Spin1, &[2.0]).unwrap();
        assert_eq!(s.entries[0].lambda, q(1, 4));
        assert!((e.von_neumann - 4f64.ln()).abs() < 1e-14);
        let (s, e) = large_block_limit(LimitKind::SpinS(3), &[0.5]).unwrap();
        assert_eq!(s.entries[0].lambda, q(1, 16));
        assert_eq!(s.trace(), int(1));
        assert!((e.renyi[0].1 - 2.0 * 4f64.ln()).abs() < 1e-13);
        let (s, e) = large_block_limit(LimitKind::Inhom(1, 2), &[]).unwrap();
        assert_eq!(s.entries[0].lambda, q(1, 6));
        assert_eq!(s.support_dim(), 6);
        assert!((e.von_neumann - 6f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn norm_formulas() {
        assert_eq!(vbs_norm_homogeneous(h(2), 1).unwrap(), int(6));
        assert_eq!(vbs_norm_homogeneous(h(2), 3).unwrap(), int(54));
        let spins = [h(1), h(3), h(4), h(3), h(1)];
        assert_eq!(vbs_norm_inhomogeneous(&spins, &[1, 2, 2, 1]).unwrap(), q(276480, 36));
        assert_eq!(degenerate_norm_spin1(2, h(0)).unwrap(), int(6));
        assert_eq!(degenerate_norm_spin1(2, h(2)).unwrap(), int(4));
        assert_eq!(degenerate_norm_spin1_mes(1, 0).unwrap(), int(0));
        assert_eq!(degenerate_norm_spin1_mes(2, 3).unwrap(), int(2));
        let spec = spin1_spectrum(5).unwrap();
        for e in &spec.entries {
            assert_eq!(
                degenerate_norm_from_lambda(h(2), 5, &e.lambda).unwrap(),
                degenerate_norm_spin1(5, e.j).unwrap()
            );
            assert_eq!(
                degenerate_norm_from_lambda_inhom(&[1, 1, 1, 1, 1, 1], &e.lambda).unwrap(),
                degenerate_norm_spin1(5, e.j).unwrap()
            );
        }
    }

    #[test]
    fn closed_entropies_match_spectrum() {
        for l in 1..=20 {
            let a = spin1_entropies(l, &[0.5, 2.0]).unwrap();
            let b = spin1_spectrum(l).unwrap().entropies(&[0.5, 2.0]).unwrap();
            assert!((a.von_neumann - b.von_neumann).abs() < 1e-12);
            for (x, y) in a.renyi.iter().zip(&b.renyi) {
                assert!((x.1 - y.1).abs() < 1e-12);
            }
        }
    }
}
