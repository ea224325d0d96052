//! VBS ground states and degenerate block states as dense vectors.
//!
//! The main route expands `Π_edges (a†_k b†_l - b†_k a†_l)^M` over Schwinger
//! bosons (`a†` raises `m`, `b†` lowers it) with `k < l`. A site holding
//! `a†^p b†^q |vac>` with `p + q = 2S` is the spin state `|S, m = (p-q)/2>`
//! scaled by `sqrt(p! q!)`. Spin-1 chains can also be built from
//! maximally entangled spin-1/2 pairs, which serves as an independent check.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Result, VbsError};
use crate::exact_algebra::{factorial, CgTable, HalfInt, SignedSqrtRational};
use crate::graph_model::{Edge, GraphSpec};
use crate::limits::{product_dim, Limits};
use crate::{real, CVector, Real};

/// Boson occupations `(p, q)` of one site.
pub type Occupation = (u32, u32);

/// Polynomial in the site bosons acting on the vacuum, keyed by occupations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BosonMonomialMap {
    spins: Vec<HalfInt>,
    terms: BTreeMap<Vec<Occupation>, BigInt>,
}

impl BosonMonomialMap {
    pub fn spins(&self) -> &[HalfInt] {
        &self.spins
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Occupation>, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n.into()) / (factorial(k.into()) * factorial((n - k).into()))
}

/// Expand valence bonds on `n` sites without checking the occupations
/// against any spin assignment.
fn expand_edges(n: usize, edges: &[Edge], limits: &Limits) -> Result<BTreeMap<Vec<Occupation>, BigInt>> {
    let bound = edges
        .iter()
        .fold(1u128, |acc, e| acc.saturating_mul(u128::from(e.m) + 1));
    limits.check_monomials(bound)?;
    let mut terms = BTreeMap::from([(vec![(0u32, 0u32); n], BigInt::one())]);
    for e in edges {
        let (k, l) = (e.u.min(e.v), e.u.max(e.v));
        let coeffs: Vec<BigInt> = (0..=e.m)
            .map(|r| {
                let c = binomial(e.m, r);
                if r % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
            .collect();
        let mut next = BTreeMap::new();
        for (key, value) in &terms {
            for (r, c) in coeffs.iter().enumerate() {
                let r = r as u32;
                let mut key = key.clone();
                key[k].0 += e.m - r;
                key[k].1 += r;
                key[l].0 += r;
                key[l].1 += e.m - r;
                let slot = next.entry(key).or_insert_with(BigInt::zero);
                *slot += value * c;
            }
        }
        next.retain(|_, v: &mut BigInt| !v.is_zero());
        terms = next;
    }
    Ok(terms)
}

/// Multinomial expansion of the valence-bond product of a graph. Every
/// vertex must be saturated: its bond multiplicities sum to `2S`.
pub fn expand_valence_bonds(g: &GraphSpec) -> Result<BosonMonomialMap> {
    expand_valence_bonds_with(g, &Limits::from_env()?)
}

pub fn expand_valence_bonds_with(g: &GraphSpec, limits: &Limits) -> Result<BosonMonomialMap> {
    let report = crate::graph_model::check_uniqueness(g);
    if let Some(v) = report.violations.first() {
        return Err(VbsError::ModelCondition(format!(
            "vertex {} has 2S = {} but its bonds carry {} boson pairs",
            v.vertex, v.twice_spin, v.bond_sum
        )));
    }
    let terms = expand_edges(g.vertex_count(), g.edges(), limits)?;
    Ok(BosonMonomialMap {
        spins: g.spins().to_vec(),
        terms,
    })
}

/// Dense state over a product of local spin spaces.
///
/// `exact` holds, when present, the exact value of every nonzero amplitude as
/// `(index, sign * sqrt(rational))`, sorted by index; absent indices are zero.
#[derive(Clone, Debug)]
pub struct StateVector<T: Real> {
    pub local_dims: Vec<usize>,
    pub amplitudes: CVector<T>,
    pub exact: Option<Vec<(usize, SignedSqrtRational)>>,
}

impl<T: Real> StateVector<T> {
    pub fn new(local_dims: Vec<usize>, amplitudes: CVector<T>) -> Result<Self> {
        let dim = product_dim(local_dims.iter().copied());
        if dim != amplitudes.len() as u128 {
            return Err(VbsError::Domain(format!(
                "{} amplitudes for a space of dimension {dim}",
                amplitudes.len()
            )));
        }
        Ok(StateVector {
            local_dims,
            amplitudes,
            exact: None,
        })
    }

    /// Product state `⊗ |i_k>` from local basis indices.
    pub fn product(local_dims: Vec<usize>, indices: &[usize]) -> Result<Self> {
        if indices.len() != local_dims.len() || indices.iter().zip(&local_dims).any(|(i, d)| i >= d) {
            return Err(VbsError::Domain("product state index out of range".into()));
        }
        let dim = local_dims.iter().product();
        let mut amplitudes = CVector::<T>::zeros(dim);
        amplitudes[flat_index(&local_dims, indices)] = Complex::from(T::one());
        Self::new(local_dims, amplitudes)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn site_count(&self) -> usize {
        self.local_dims.len()
    }

    pub fn norm_squared(&self) -> T {
        self.amplitudes.norm_squared()
    }

    pub fn exact_norm_squared(&self) -> Option<BigRational> {
        self.exact
            .as_ref()
            .map(|e| e.iter().map(|(_, a)| a.square().clone()).sum())
    }

    /// Unit-norm copy. Exact amplitudes are dropped since the norm is
    /// generally irrational.
    pub fn normalized(&self) -> Self {
        let n = self.norm_squared().sqrt();
        StateVector {
            local_dims: self.local_dims.clone(),
            amplitudes: self.amplitudes.unscale(n),
            exact: None,
        }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector<T>) -> Complex<T> {
        self.amplitudes.dotc(&other.amplitudes)
    }

    /// `|<a|b>| / (|a| |b|)`.
    pub fn overlap_modulus(&self, other: &StateVector<T>) -> T {
        nalgebra::ComplexField::modulus(self.inner(other)) / (self.norm_squared() * other.norm_squared()).sqrt()
    }
}

/// Row-major flat index, first site most significant.
pub fn flat_index(dims: &[usize], digits: &[usize]) -> usize {
    digits.iter().zip(dims).fold(0, |acc, (d, n)| acc * n + d)
}

fn occupation_weight(key: &[Occupation]) -> BigInt {
    key.iter()
        .map(|&(p, q)| factorial(p.into()) * factorial(q.into()))
        .fold(BigInt::one(), |acc, x| acc * x)
}

fn surd_map_to_state<T: Real>(
    spins: &[HalfInt],
    terms: &BTreeMap<Vec<Occupation>, SignedSqrtRational>,
    limits: &Limits,
) -> Result<StateVector<T>> {
    let local_dims: Vec<usize> = spins.iter().map(|s| s.multiplet_dim()).collect();
    let dim = product_dim(local_dims.iter().copied());
    limits.check_dim("state vector", dim)?;
    let mut amplitudes = CVector::<T>::zeros(dim as usize);
    let mut exact = Vec::with_capacity(terms.len());
    for (key, coeff) in terms {
        let mut digits = Vec::with_capacity(key.len());
        for (site, (&(p, q), s)) in key.iter().zip(spins).enumerate() {
            if i64::from(p + q) != s.twice() {
                return Err(VbsError::Domain(format!(
                    "site {site}: occupation {p}+{q} does not match spin {s}"
                )));
            }
            // m = (p - q)/2, basis index S - m = q
            digits.push(q as usize);
        }
        let idx = flat_index(&local_dims, &digits);
        let amp = coeff * &SignedSqrtRational::sqrt_of(BigRational::from_integer(occupation_weight(key)));
        amplitudes[idx] = Complex::from(real::<T>(amp.to_f64()));
        exact.push((idx, amp));
    }
    exact.sort_by_key(|(i, _)| *i);
    Ok(StateVector {
        local_dims,
        amplitudes,
        exact: Some(exact),
    })
}

/// Amplitude of `⊗|S_l, m_l>` is `coefficient · Π sqrt((S+m)!(S-m)!)`.
pub fn monomials_to_state<T: Real>(map: &BosonMonomialMap) -> Result<StateVector<T>> {
    monomials_to_state_with(map, &Limits::from_env()?)
}

pub fn monomials_to_state_with<T: Real>(map: &BosonMonomialMap, limits: &Limits) -> Result<StateVector<T>> {
    let terms = map
        .terms
        .iter()
        .map(|(k, v)| {
            (
                k.clone(),
                SignedSqrtRational::from_rational(&BigRational::from_integer(v.clone())),
            )
        })
        .collect();
    surd_map_to_state(&map.spins, &terms, limits)
}

/// Spin values along an open chain with the bond multiplicities between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub spins: Vec<HalfInt>,
    pub multiplicities: Vec<u32>,
}

impl ChainSpec {
    /// `n_bulk` spin-`S` sites between two spin-`S/2` ends, `S` bonds per edge.
    pub fn homogeneous(spin: HalfInt, n_bulk: usize) -> Result<Self> {
        let s = spin
            .as_int()
            .filter(|&s| s >= 1)
            .ok_or_else(|| VbsError::Domain(format!("homogeneous chains need integer S >= 1, got {spin}")))?;
        if n_bulk == 0 {
            return Err(VbsError::Domain("chain needs at least one bulk site".into()));
        }
        let end = HalfInt::from_twice(s);
        let mut spins = vec![end];
        spins.extend(std::iter::repeat_n(spin, n_bulk));
        spins.push(end);
        Ok(ChainSpec {
            spins,
            multiplicities: vec![s as u32; n_bulk + 1],
        })
    }

    /// Chain whose multiplicities are fixed by the spins.
    pub fn from_spins(spins: Vec<HalfInt>) -> Result<Self> {
        let multiplicities = solve_multiplicities(&spins)?;
        Ok(ChainSpec { spins, multiplicities })
    }

    pub fn graph(&self) -> Result<GraphSpec> {
        GraphSpec::chain(self.spins.clone(), &self.multiplicities)
    }

    pub fn bulk_len(&self) -> usize {
        self.spins.len() - 2
    }

    /// Unnormalized VBS state with exact amplitudes.
    pub fn vbs_state<T: Real>(&self, limits: &Limits) -> Result<StateVector<T>> {
        let map = expand_valence_bonds_with(&self.graph()?, limits)?;
        monomials_to_state_with(&map, limits)
    }
}

/// `M_{j,j+1} = 2 Σ_{l ≤ j} (-1)^{j-l} S_l`, validated against every site.
pub fn solve_multiplicities(spins: &[HalfInt]) -> Result<Vec<u32>> {
    if spins.len() < 2 {
        return Err(VbsError::Domain("need at least two spins".into()));
    }
    let alternating: i64 = spins
        .iter()
        .enumerate()
        .map(|(j, s)| if j % 2 == 0 { s.twice() } else { -s.twice() })
        .sum();
    if alternating != 0 {
        return Err(VbsError::ModelCondition(format!(
            "alternating spin sum is {}, not 0; no multiplicities exist",
            HalfInt::from_twice(alternating)
        )));
    }
    let mut out = Vec::with_capacity(spins.len() - 1);
    let mut running = 0i64;
    for s in &spins[..spins.len() - 1] {
        running = s.twice() - running;
        if running < 1 {
            return Err(VbsError::ModelCondition(format!(
                "multiplicities {:?} then {running}: every bond needs at least one valence bond",
                out
            )));
        }
        out.push(running as u32);
    }
    let mut prev = 0i64;
    for (j, s) in spins.iter().enumerate() {
        let next = out.get(j).map_or(0, |&m| i64::from(m));
        if s.twice() != prev + next {
            return Err(VbsError::ModelCondition(format!("site {j} is not saturated")));
        }
        prev = next;
    }
    Ok(out)
}

type Mat2<T> = [Complex<T>; 4];

fn mat2_mul<T: Real>(x: &Mat2<T>, y: &Mat2<T>) -> Mat2<T> {
    [
        x[0] * y[0] + x[1] * y[2],
        x[0] * y[1] + x[1] * y[3],
        x[2] * y[0] + x[3] * y[2],
        x[2] * y[1] + x[3] * y[3],
    ]
}

/// Pauli matrices, the spin-1 transfer matrices and the pair singlet, all
/// 2x2 and row-major over (up, down).
struct MesTables<T: Real> {
    /// `A^m = Σ_α <m|α> σ_α` for `m = 1, 0, -1`.
    transfer: [Mat2<T>; 3],
    /// `|0> = -(|ud> - |du>)/sqrt2` as `[first, second]`.
    singlet: Mat2<T>,
}

fn pauli<T: Real>() -> [Mat2<T>; 4] {
    let c = |re: f64, im: f64| Complex::new(real::<T>(re), real::<T>(im));
    let z = c(0.0, 0.0);
    [
        [c(1.0, 0.0), z, z, c(1.0, 0.0)],
        [z, c(1.0, 0.0), c(1.0, 0.0), z],
        [z, c(0.0, -1.0), c(0.0, 1.0), z],
        [c(1.0, 0.0), z, z, c(-1.0, 0.0)],
    ]
}

impl<T: Real> MesTables<T> {
    fn new() -> Self {
        let c = |re: f64, im: f64| Complex::new(real::<T>(re), real::<T>(im));
        let z = c(0.0, 0.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let sigma = pauli::<T>();
        // symmetric pair states |1>, |2>, |3> in the spin-1 basis m = 1, 0, -1
        let alpha = [
            [c(r, 0.0), z, c(-r, 0.0)],
            [c(0.0, -r), z, c(0.0, -r)],
            [z, c(-1.0, 0.0), z],
        ];
        let mut transfer = [[z; 4]; 3];
        for (m, t) in transfer.iter_mut().enumerate() {
            for k in 0..3 {
                for e in 0..4 {
                    t[e] += alpha[k][m] * sigma[k + 1][e];
                }
            }
        }
        MesTables {
            transfer,
            singlet: [z, c(-r, 0.0), c(r, 0.0), z],
        }
    }
}

/// Spin-1 chain of `n_bulk` sites between two spin-1/2 ends, assembled from
/// maximally entangled pairs and projected on the symmetric subspace.
/// The result is normalized.
pub fn build_vbs_spin1_mes<T: Real>(n_bulk: usize) -> Result<StateVector<T>> {
    build_vbs_spin1_mes_with(n_bulk, &Limits::from_env()?)
}

pub fn build_vbs_spin1_mes_with<T: Real>(n_bulk: usize, limits: &Limits) -> Result<StateVector<T>> {
    if n_bulk == 0 {
        return Err(VbsError::Domain("need at least one bulk site".into()));
    }
    let mut local_dims = vec![2];
    local_dims.extend(std::iter::repeat_n(3, n_bulk));
    local_dims.push(2);
    let dim = product_dim(local_dims.iter().copied());
    limits.check_dim("state vector", dim)?;

    let MesTables { transfer: a, singlet } = MesTables::new();
    let (z, one) = (Complex::from(T::zero()), Complex::from(T::one()));
    let norm = real::<T>(3f64.powf(-(n_bulk as f64) / 2.0));
    let mut amplitudes = CVector::<T>::zeros(dim as usize);
    let bulk_dim = 3usize.pow(n_bulk as u32);
    for bulk in 0..bulk_dim {
        // digits of `bulk` are m-indices of sites 1..N, site 1 most significant
        let mut product = [one, z, z, one];
        let mut rest = bulk;
        let mut digits = vec![0usize; n_bulk];
        for d in digits.iter_mut().rev() {
            *d = rest % 3;
            rest /= 3;
        }
        // σ_{α_N} ... σ_{α_1}: site 1 acts first
        for &d in &digits {
            product = mat2_mul(&a[d], &product);
        }
        for first in 0..2 {
            for last in 0..2 {
                // (I ⊗ P)|0>: component [first, last] = Σ_b P[last, b] |0>[first, b]
                let v = product[last * 2] * singlet[first * 2] + product[last * 2 + 1] * singlet[first * 2 + 1];
                let idx = (first * bulk_dim + bulk) * 2 + last;
                amplitudes[idx] = v * norm;
            }
        }
    }
    StateVector::new(local_dims, amplitudes)
}

/// Spin-1 degenerate block state of `l` sites built from maximally
/// entangled pairs. `alpha = 0` is the singlet label, `1..=3` the three
/// Pauli labels. Unnormalized.
pub fn build_degenerate_vbs_spin1_mes<T: Real>(l: usize, alpha: usize) -> Result<StateVector<T>> {
    build_degenerate_vbs_spin1_mes_with(l, alpha, &Limits::from_env()?)
}

pub fn build_degenerate_vbs_spin1_mes_with<T: Real>(l: usize, alpha: usize, limits: &Limits) -> Result<StateVector<T>> {
    if l == 0 || alpha > 3 {
        return Err(VbsError::Domain(format!(
            "need a block of at least one site and a label in 0..=3, got L = {l}, label {alpha}"
        )));
    }
    let local_dims = vec![3; l];
    let dim = product_dim(local_dims.iter().copied());
    limits.check_dim("state vector", dim)?;
    let MesTables { transfer: a, singlet } = MesTables::new();
    let outer = pauli::<T>()[alpha];
    let (z, one) = (Complex::from(T::zero()), Complex::from(T::one()));
    let r = Complex::from(real::<T>(std::f64::consts::FRAC_1_SQRT_2));
    let inner_dim = 3usize.pow(l as u32 - 1);
    let mut amplitudes = CVector::<T>::zeros(dim as usize);
    let mut digits = vec![0usize; l - 1];
    for head in 0..inner_dim {
        let mut rest = head;
        for d in digits.iter_mut().rev() {
            *d = rest % 3;
            rest /= 3;
        }
        let mut product = [one, z, z, one];
        for &d in &digits {
            product = mat2_mul(&a[d], &product);
        }
        // (σ_α ⊗ P)|0> as a 2x2 array: σ_α · |0> · P^T
        let pt = [product[0], product[2], product[1], product[3]];
        let w = mat2_mul(&mat2_mul(&outer, &singlet), &pt);
        // last site: project on the triplet m = 1, 0, -1
        let last = [w[0], (w[1] + w[2]) * r, w[3]];
        for (m, v) in last.into_iter().enumerate() {
            amplitudes[head * 3 + m] = v;
        }
    }
    StateVector::new(local_dims, amplitudes)
}

/// Degenerate block VBS state `Ψ†_{JM} |VBS_L>`.
///
/// `block_multiplicities` is `M_{01}, M_{12}, ..., M_{L,L+1}`: the two outer
/// entries are the bonds cut from the environment, the inner ones are bonds
/// inside the block. Block site `j` carries spin `(M_{j-1,j} + M_{j,j+1})/2`.
/// The cut bonds are replaced by spin-`M_{01}/2` and spin-`M_{L,L+1}/2`
/// boson insertions at the two ends, coupled to total spin `(J, M)`.
pub fn build_degenerate_vbs<T: Real>(block_multiplicities: &[u32], j: HalfInt, m: HalfInt) -> Result<StateVector<T>> {
    build_degenerate_vbs_with(block_multiplicities, j, m, &Limits::from_env()?)
}

pub fn build_degenerate_vbs_with<T: Real>(
    block_multiplicities: &[u32],
    j: HalfInt,
    m: HalfInt,
    limits: &Limits,
) -> Result<StateVector<T>> {
    if block_multiplicities.len() < 2 || block_multiplicities.contains(&0) {
        return Err(VbsError::Domain(
            "need at least two positive block multiplicities".into(),
        ));
    }
    let l = block_multiplicities.len() - 1;
    let left = HalfInt::from_twice(block_multiplicities[0].into());
    let right = HalfInt::from_twice(block_multiplicities[l].into());
    let allowed = degenerate_labels(block_multiplicities)?;
    if !allowed.iter().any(|&(jj, mm)| jj == j && mm == m) {
        return Err(VbsError::Domain(format!(
            "(J, M) = ({j}, {m}) outside the range allowed by end spins {left} and {right}"
        )));
    }
    let spins: Vec<HalfInt> = block_multiplicities
        .windows(2)
        .map(|w| HalfInt::from_twice(i64::from(w[0] + w[1])))
        .collect();
    let edges: Vec<Edge> = (0..l - 1)
        .map(|i| Edge {
            u: i,
            v: i + 1,
            m: block_multiplicities[i + 1],
        })
        .collect();
    let block = expand_edges(l, &edges, limits)?;
    let table = CgTable::new(left, right, j);
    let mut terms: BTreeMap<Vec<Occupation>, SignedSqrtRational> = BTreeMap::new();
    for m1 in left.projections() {
        let m2 = m - m1;
        if m2.abs() > right {
            continue;
        }
        let cg = table.get(m1, m2);
        if cg.is_zero() {
            continue;
        }
        let (p1, q1) = (((left + m1).twice() / 2) as u32, ((left - m1).twice() / 2) as u32);
        let (p2, q2) = (((right + m2).twice() / 2) as u32, ((right - m2).twice() / 2) as u32);
        let norm = factorial(p1.into()) * factorial(q1.into()) * factorial(p2.into()) * factorial(q2.into());
        let weight = &cg * &SignedSqrtRational::sqrt_of(BigRational::new(BigInt::one(), norm));
        for (key, c) in &block {
            let mut key = key.clone();
            key[0].0 += p1;
            key[0].1 += q1;
            key[l - 1].0 += p2;
            key[l - 1].1 += q2;
            let term = weight.scale(&BigRational::from_integer(c.clone()));
            let slot = terms.entry(key).or_insert_with(SignedSqrtRational::zero);
            *slot = slot
                .checked_add(&term)
                .ok_or_else(|| VbsError::Domain("boundary insertion produced incommensurable surds".into()))?;
        }
    }
    terms.retain(|_, v| !v.is_zero());
    surd_map_to_state(&spins, &terms, limits)
}

/// All `(J, M)` labels of degenerate block states, `J` ascending and `M`
/// descending: `|J_-| <= J <= J_+` with `J_± = (M_{01} ± M_{L,L+1})/2`.
pub fn degenerate_labels(block_multiplicities: &[u32]) -> Result<Vec<(HalfInt, HalfInt)>> {
    let (Some(&first), Some(&last)) = (block_multiplicities.first(), block_multiplicities.last()) else {
        return Err(VbsError::Domain("empty multiplicity list".into()));
    };
    let plus = i64::from(first + last);
    let minus = (i64::from(first) - i64::from(last)).abs();
    let mut out = Vec::new();
    let mut tj = minus;
    while tj <= plus {
        let jj = HalfInt::from_twice(tj);
        out.extend(jj.projections().map(|mm| (jj, mm)));
        tj += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn limits() -> Limits {
        Limits::default()
    }

    #[test]
    fn single_edge_expansions() {
        let g = GraphSpec::chain(vec![h(1), h(1)], &[1]).unwrap();
        let map = expand_valence_bonds(&g).unwrap();
        let coeffs: Vec<i64> = map.terms().values().map(|c| c.try_into().unwrap()).collect();
        assert_eq!(map.len(), 2);
        assert_eq!(coeffs.iter().map(|c| c.abs()).sum::<i64>(), 2);
        assert_eq!(coeffs.iter().sum::<i64>(), 0);

        let g = GraphSpec::chain(vec![h(2), h(2)], &[2]).unwrap();
        let map = expand_valence_bonds(&g).unwrap();
        let key = |a: (u32, u32), b: (u32, u32)| vec![a, b];
        assert_eq!(map.terms()[&key((2, 0), (0, 2))], BigInt::from(1));
        assert_eq!(map.terms()[&key((1, 1), (1, 1))], BigInt::from(-2));
        assert_eq!(map.terms()[&key((0, 2), (2, 0))], BigInt::from(1));
    }

    #[test]
    fn singlet_amplitudes() {
        let g = GraphSpec::chain(vec![h(1), h(1)], &[1]).unwrap();
        let st = monomials_to_state::<f64>(&expand_valence_bonds(&g).unwrap()).unwrap();
        // (|ud> - |du>)
        let re: Vec<f64> = st.amplitudes.iter().map(|c| c.re).collect();
        assert_eq!(re, vec![0.0, 1.0, -1.0, 0.0]);
    }

    #[test]
    fn spin1_chain_one_bulk_site() {
        let chain = ChainSpec::homogeneous(h(2), 1).unwrap();
        let map = expand_valence_bonds(&chain.graph().unwrap()).unwrap();
        assert_eq!(map.len(), 4);
        let st = chain.vbs_state::<f64>(&limits()).unwrap();
        assert_eq!(st.exact_norm_squared().unwrap(), q(6, 1));
        assert!((st.norm_squared() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn inhomogeneous_norm() {
        let spins = vec![h(1), h(3), h(4), h(3), h(1)];
        let chain = ChainSpec::from_spins(spins).unwrap();
        assert_eq!(chain.multiplicities, vec![1, 2, 2, 1]);
        let st = chain.vbs_state::<f64>(&limits()).unwrap();
        // Π (2S+1)! / Π (M+1)
        let expected = q(2 * 24 * 120 * 24 * 2, 2 * 3 * 3 * 2);
        assert_eq!(st.exact_norm_squared().unwrap(), expected);
    }

    #[test]
    fn multiplicity_solver() {
        assert_eq!(solve_multiplicities(&[h(1), h(2), h(2), h(1)]).unwrap(), vec![1, 1, 1]);
        assert_eq!(solve_multiplicities(&[h(2), h(4), h(2)]).unwrap(), vec![2, 2]);
        assert!(matches!(
            solve_multiplicities(&[h(1), h(2), h(2)]),
            Err(VbsError::ModelCondition(_))
        ));
        // alternating sum zero but a bond would need zero valence bonds
        assert!(solve_multiplicities(&[h(1), h(1), h(1), h(1)]).is_err());
        assert!(solve_multiplicities(&[h(1)]).is_err());
    }

    #[test]
    fn unsaturated_graph_is_rejected() {
        let g = GraphSpec::chain(vec![h(2), h(2), h(2)], &[1, 1]).unwrap();
        assert!(matches!(expand_valence_bonds(&g), Err(VbsError::ModelCondition(_))));
    }

    #[test]
    fn mes_route_matches_bosons() {
        for n in 1..=4 {
            let a = build_vbs_spin1_mes::<f64>(n).unwrap();
            let b = ChainSpec::homogeneous(h(2), n)
                .unwrap()
                .vbs_state::<f64>(&limits())
                .unwrap();
            assert!((a.norm_squared() - 1.0).abs() < 1e-12);
            assert!((a.overlap_modulus(&b) - 1.0).abs() < 1e-12, "N = {n}");
        }
    }

    #[test]
    fn degenerate_spin1_norms() {
        let zero = build_degenerate_vbs::<f64>(&[1, 1, 1], h(0), h(0)).unwrap();
        assert_eq!(zero.exact_norm_squared().unwrap(), q(6, 1));
        for m in [2, 0, -2] {
            let one = build_degenerate_vbs::<f64>(&[1, 1, 1], h(2), h(m)).unwrap();
            assert_eq!(one.exact_norm_squared().unwrap(), q(4, 1));
            assert!(one.inner(&zero).norm() < 1e-12);
        }
        assert!(build_degenerate_vbs::<f64>(&[1, 1, 1], h(4), h(0)).is_err());
    }

    #[test]
    fn degenerate_spin1_mes_norms() {
        for l in 1..=4 {
            let states: Vec<_> = (0..4)
                .map(|a| build_degenerate_vbs_spin1_mes::<f64>(l, a).unwrap())
                .collect();
            let p = 3f64.powi(l as i32);
            let s = if l % 2 == 0 { 1.0 } else { -1.0 };
            assert!((states[0].norm_squared() - (p + 3.0 * s) / 4.0).abs() < 1e-10);
            for (a, x) in states.iter().enumerate() {
                if a > 0 {
                    assert!((x.norm_squared() - (p - s) / 4.0).abs() < 1e-10);
                }
                for y in &states[a + 1..] {
                    assert!(x.inner(y).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn degenerate_label_ranges() {
        assert_eq!(degenerate_labels(&[1, 1, 1]).unwrap().len(), 4);
        let labels = degenerate_labels(&[3, 3, 2]).unwrap();
        assert_eq!(labels.len(), 4 * 3);
        assert_eq!(labels[0], (h(1), h(1)));
    }
}
