use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{HalfInt, SignedSqrtRational, SurdSum};
use crate::error::VbsError;

/// `k!` as a big integer.
pub fn factorial(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * i)
}

fn fact_ratio(num: &[u64], den: &[u64]) -> BigRational {
    let n = num.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    let d = den.iter().fold(BigInt::one(), |acc, &k| acc * factorial(k));
    BigRational::new(n, d)
}

/// Wigner 3j symbol with all three projections zero.
///
/// Nonzero only when `l1 + l2 + l3 = 2g` is even and the triangle rule holds.
pub fn threej_000(l1: u32, l2: u32, l3: u32) -> SignedSqrtRational {
    let (a, b, c) = (u64::from(l1), u64::from(l2), u64::from(l3));
    let sum = a + b + c;
    if sum % 2 == 1 || a > b + c || b > a + c || c > a + b {
        return SignedSqrtRational::zero();
    }
    let g = sum / 2;
    let root = fact_ratio(&[2 * g - 2 * a, 2 * g - 2 * b, 2 * g - 2 * c], &[2 * g + 1]);
    let outer = fact_ratio(&[g], &[g - a, g - b, g - c]);
    let sign = if g % 2 == 0 { 1 } else { -1 };
    SignedSqrtRational::new(sign, root * &outer * &outer)
}

/// `(j - m)(j + m + 1)`, the square of the raising-operator matrix element.
fn raise_sq(j: HalfInt, m: HalfInt) -> BigRational {
    let (j, m) = (j.twice(), m.twice());
    BigRational::new(BigInt::from((j - m) * (j + m + 2)), BigInt::from(4))
}

/// `(j + m)(j - m + 1)`, the square of the lowering-operator matrix element.
fn lower_sq(j: HalfInt, m: HalfInt) -> BigRational {
    let (j, m) = (j.twice(), m.twice());
    BigRational::new(BigInt::from((j + m) * (j - m + 2)), BigInt::from(4))
}

/// All Clebsch-Gordan coefficients `<j1 m1; j2 m2 | J M>` for one coupling
/// `(j1, j2) -> J`, generated by the ladder recursion.
///
/// The highest state `|J, J>` is fixed by `J+ |J, J> = 0` and the
/// Condon-Shortley choice `<j1 j1; j2 J-j1 | J J> > 0`; lower states follow
/// from repeated application of `J-`.
#[derive(Clone, Debug)]
pub struct CgTable {
    j1: HalfInt,
    j2: HalfInt,
    j: HalfInt,
    coeffs: HashMap<(i64, i64), SignedSqrtRational>,
}

impl CgTable {
    pub fn new(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Self {
        let mut coeffs = HashMap::new();
        if HalfInt::triangle(j1, j2, j) {
            let top = Self::highest_weight(j1, j2, j);
            let mut current = top;
            let mut m = j;
            loop {
                for (m1, c) in &current {
                    coeffs.insert((m.twice(), m1.twice()), c.clone());
                }
                if m == -j {
                    break;
                }
                current = Self::lower(j1, j2, j, m, &current);
                m = m - HalfInt::ONE;
            }
        }
        CgTable { j1, j2, j, coeffs }
    }

    fn highest_weight(j1: HalfInt, j2: HalfInt, j: HalfInt) -> Vec<(HalfInt, SignedSqrtRational)> {
        let mut out = vec![(j1, SignedSqrtRational::one())];
        let mut mu = j1;
        loop {
            let next = mu - HalfInt::ONE;
            if next < -j1 || j - next > j2 {
                break;
            }
            let prev = &out.last().expect("nonempty").1;
            let ratio = SignedSqrtRational::new(-1, raise_sq(j2, j - mu) / raise_sq(j1, next));
            out.push((next, prev * &ratio));
            mu = next;
        }
        let norm: BigRational = out.iter().map(|(_, c)| c.square().clone()).sum();
        let inv = SignedSqrtRational::sqrt_of(norm.recip());
        out.into_iter().map(|(m1, c)| (m1, &c * &inv)).collect()
    }

    fn lower(
        j1: HalfInt,
        j2: HalfInt,
        j: HalfInt,
        m: HalfInt,
        current: &[(HalfInt, SignedSqrtRational)],
    ) -> Vec<(HalfInt, SignedSqrtRational)> {
        let lookup: HashMap<i64, &SignedSqrtRational> = current.iter().map(|(m1, c)| (m1.twice(), c)).collect();
        let inv = SignedSqrtRational::sqrt_of(lower_sq(j, m).recip());
        let target = m - HalfInt::ONE;
        let mut out = Vec::new();
        for m1 in j1.projections() {
            let m2 = target - m1;
            if m2.abs() > j2 {
                continue;
            }
            let mut acc = SignedSqrtRational::zero();
            if let Some(c) = lookup.get(&(m1 + HalfInt::ONE).twice()) {
                let a = SignedSqrtRational::sqrt_of(lower_sq(j1, m1 + HalfInt::ONE));
                acc = *c * &a;
            }
            if let Some(c) = lookup.get(&m1.twice()) {
                let a = SignedSqrtRational::sqrt_of(lower_sq(j2, m2 + HalfInt::ONE));
                acc = acc
                    .checked_add(&(*c * &a))
                    .expect("ladder terms of one coupling share a radicand class");
            }
            let value = &acc * &inv;
            if !value.is_zero() {
                out.push((m1, value));
            }
        }
        out
    }

    pub fn get(&self, m1: HalfInt, m2: HalfInt) -> SignedSqrtRational {
        if m1.abs() > self.j1 || m2.abs() > self.j2 {
            return SignedSqrtRational::zero();
        }
        let m = m1 + m2;
        self.coeffs
            .get(&(m.twice(), m1.twice()))
            .cloned()
            .unwrap_or_else(SignedSqrtRational::zero)
    }

    pub fn total(&self) -> HalfInt {
        self.j
    }
}

/// `<j1 m1; j2 m2 | J M>`. Zero outside the selection rules.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> SignedSqrtRational {
    if m1 + m2 != m || m.abs() > j || !(j1 + m1).is_integer() || !(j2 + m2).is_integer() {
        return SignedSqrtRational::zero();
    }
    CgTable::new(j1, j2, j).get(m1, m2)
}

/// General 3j symbol from the matching Clebsch-Gordan coefficient.
pub fn threej(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j3: HalfInt, m3: HalfInt) -> SignedSqrtRational {
    threej_from_table(&CgTable::new(j1, j2, j3), m1, m2, m3)
}

fn threej_from_table(table: &CgTable, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> SignedSqrtRational {
    if (m1 + m2 + m3) != HalfInt::ZERO {
        return SignedSqrtRational::zero();
    }
    let cg = table.get(m1, m2);
    if cg.is_zero() {
        return cg;
    }
    let phase = (table.j1 - table.j2 - m3).twice() / 2;
    let sign = if phase.rem_euclid(2) == 0 { 1 } else { -1 };
    let weight = BigRational::new(BigInt::one(), BigInt::from(table.j.twice() + 1));
    &cg * &SignedSqrtRational::new(sign, weight)
}

/// Exact check of `sum_{m1,m2} (2l+1) (l1 l2 l; m1 m2 m)(l1 l2 l'; m1 m2 m') = δ_{ll'} δ_{mm'}`
/// for every `l, l'` allowed by the triangle rule and not above `lmax`.
pub fn threej_orthogonality_check(l1: u32, l2: u32, lmax: u32) -> bool {
    let (j1, j2) = (HalfInt::from_int(l1.into()), HalfInt::from_int(l2.into()));
    let ls: Vec<HalfInt> = (l1.abs_diff(l2)..=(l1 + l2).min(lmax))
        .map(|l| HalfInt::from_int(l.into()))
        .collect();
    let tables: Vec<CgTable> = ls.iter().map(|&l| CgTable::new(j1, j2, l)).collect();
    for (a, ta) in ls.iter().zip(&tables) {
        for (b, tb) in ls.iter().zip(&tables) {
            for m in a.projections() {
                for mp in b.projections() {
                    let mut sum = SurdSum::new();
                    for m1 in j1.projections() {
                        for m2 in j2.projections() {
                            let x = threej_from_table(ta, m1, m2, m);
                            let y = threej_from_table(tb, m1, m2, mp);
                            sum.add(&(&x * &y));
                        }
                    }
                    let weight = BigRational::from_integer(BigInt::from(a.twice() + 1));
                    let expected = if a == b && m == mp {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    };
                    match sum.to_rational() {
                        Some(v) if &v * &weight == expected => {}
                        _ => return false,
                    }
                }
            }
        }
    }
    true
}

/// Legendre-expansion coefficient `(-1)^l M!(M+1)! / ((M-l)!(M+l+1)!)`.
pub fn lambda_coeff(l: i64, m: i64) -> Result<BigRational, VbsError> {
    if l < 0 || l > m {
        return Err(VbsError::Domain(format!(
            "lambda coefficient needs 0 <= l <= M, got l={l}, M={m}"
        )));
    }
    let (l, m) = (l as u64, m as u64);
    let mag = fact_ratio(&[m, m + 1], &[m - l, m + l + 1]);
    Ok(if l % 2 == 0 { mag } else { -mag })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }
    fn h(t: i64) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(factorial(20), BigInt::from(2432902008176640000u64));
    }

    #[test]
    fn threej_zero_projection_values() {
        assert_eq!(threej_000(0, 0, 0), SignedSqrtRational::one());
        assert!(threej_000(1, 1, 1).is_zero());
        assert_eq!(threej_000(1, 1, 0), SignedSqrtRational::new(-1, q(1, 3)));
        assert!(threej_000(1, 1, 4).is_zero());
    }

    #[test]
    fn cg_examples() {
        let cg = clebsch_gordan(h(1), h(1), h(1), h(-1), h(2), h(0));
        assert_eq!(cg, SignedSqrtRational::new(1, q(1, 2)));
        assert!(clebsch_gordan(h(1), h(1), h(1), h(1), h(0), h(0)).is_zero());
        assert_eq!(
            clebsch_gordan(h(1), h(1), h(1), h(1), h(2), h(2)),
            SignedSqrtRational::one()
        );
        // singlet: <1/2 -1/2; 1/2 1/2 | 0 0> = -1/sqrt2
        assert_eq!(
            clebsch_gordan(h(1), h(-1), h(1), h(1), h(0), h(0)),
            SignedSqrtRational::new(-1, q(1, 2))
        );
    }

    #[test]
    fn orthogonality_examples() {
        assert!(threej_orthogonality_check(1, 1, 2));
        assert!(threej_orthogonality_check(0, 0, 0));
        assert!(threej_orthogonality_check(2, 2, 4));
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda_coeff(0, 4).unwrap(), q(1, 1));
        assert_eq!(lambda_coeff(1, 1).unwrap(), q(-1, 3));
        assert_eq!(lambda_coeff(2, 3).unwrap(), q(1, 5));
        assert!(lambda_coeff(3, 2).is_err());
        assert!(lambda_coeff(-1, 2).is_err());
    }
}
