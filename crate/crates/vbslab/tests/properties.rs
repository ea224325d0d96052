use nalgebra::DMatrix;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use vbslab::analytic_spectra::{inhom_spectrum, spin_s_spectrum_sum};
use vbslab::density_oracle::{diagonalize, entropies_from_levels, partial_trace};
use vbslab::exact_algebra::{lambda_coeff, parse_rational, rational_string, threej, HalfInt, SignedSqrtRational};
use vbslab::spin_operators::{bond_projector, spin_dot};
use vbslab::sun_model::{sun_closed_form, transfer_spectrum};
use vbslab::{CVector64, StateVector64};

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn parity_sign(twice_sum: i64) -> i8 {
    if (twice_sum / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn scaled(x: &SignedSqrtRational, sign: i8) -> SignedSqrtRational {
    if sign < 0 {
        -x.clone()
    } else {
        x.clone()
    }
}

/// Three spins obeying the triangle rule with one admissible projection set.
fn coupling() -> impl Strategy<Value = [(HalfInt, HalfInt); 3]> {
    (0i64..=4, 0i64..=4)
        .prop_flat_map(|(a, b)| {
            let lo = (a - b).abs();
            (
                (lo..=a + b).prop_filter("parity", move |c| (a + b + c) % 2 == 0),
                Just(a),
                Just(b),
            )
        })
        .prop_flat_map(|(c, a, b)| (Just((a, b, c)), 0..=a, 0..=b))
        .prop_map(|((a, b, c), i, k)| {
            let m1 = a - 2 * i;
            let m2 = b - 2 * k;
            let m3 = -(m1 + m2);
            [(h(a), h(m1)), (h(b), h(m2)), (h(c), h(m3))]
        })
}

fn tj(x: &[(HalfInt, HalfInt); 3], order: [usize; 3]) -> SignedSqrtRational {
    let [p, q, r] = order.map(|i| x[i]);
    threej(p.0, p.1, q.0, q.1, r.0, r.1)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn threej_permutation_symmetry(x in coupling()) {
        let base = tj(&x, [0, 1, 2]);
        let sum = x[0].0.twice() + x[1].0.twice() + x[2].0.twice();
        prop_assert_eq!(&tj(&x, [1, 2, 0]), &base);
        prop_assert_eq!(&tj(&x, [2, 0, 1]), &base);
        let odd = parity_sign(sum);
        prop_assert_eq!(tj(&x, [1, 0, 2]), scaled(&base, odd));
        prop_assert_eq!(tj(&x, [0, 2, 1]), scaled(&base, odd));
        let flipped = threej(x[0].0, -x[0].1, x[1].0, -x[1].1, x[2].0, -x[2].1);
        prop_assert_eq!(flipped, scaled(&base, odd));
    }

    #[test]
    fn lambda_sign_and_size(m in 0i64..30, frac in 0.0f64..=1.0) {
        let l = ((m as f64) * frac).floor() as i64;
        let v = lambda_coeff(l, m).unwrap();
        prop_assert!(v.abs() <= BigRational::one());
        prop_assert_eq!(v.is_negative(), l % 2 == 1);
        prop_assert!(lambda_coeff(0, m).unwrap().is_one());
    }

    #[test]
    fn halfint_round_trip(t in -200i64..200) {
        let x = h(t);
        prop_assert_eq!(x.to_string().parse::<HalfInt>().unwrap(), x);
    }

    #[test]
    fn rational_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = BigRational::new(n.into(), d.into());
        prop_assert_eq!(parse_rational(&rational_string(&r)).unwrap(), r);
    }

    #[test]
    fn spin_s_traces(s in 1i64..=5, l in 2usize..=14) {
        let spec = spin_s_spectrum_sum(h(2 * s), l).unwrap();
        prop_assert!(spec.trace().is_one());
        prop_assert!(spec.entries.iter().all(|e| !e.lambda.is_negative()));
    }

    #[test]
    fn inhom_traces(ms in prop::collection::vec(1u32..=4, 3..=7)) {
        let spec = inhom_spectrum(&ms).unwrap();
        prop_assert!(spec.trace().is_one());
        prop_assert!(spec.entries.iter().all(|e| !e.lambda.is_negative()));
        let support: usize = spec.entries.iter().map(|e| e.degeneracy).sum();
        prop_assert_eq!(support as u32, (ms[0] + 1) * (ms[ms.len() - 1] + 1));
    }

    #[test]
    fn sun_routes_agree(n in 2usize..=7, l in 1usize..=40) {
        let t = transfer_spectrum(n, l).unwrap();
        prop_assert_eq!(&t, &sun_closed_form(n, l).unwrap());
        prop_assert!(t.trace().is_one());
        prop_assert!(!t.lambda_other.is_negative() && !t.lambda_00.is_negative());
        prop_assert_eq!(t.lambda_00.is_zero(), l == 1);
    }

    #[test]
    fn random_state_density_matrices(
        dims in prop::collection::vec(2usize..=3, 2..=4),
        seed in prop::collection::vec(-1.0f64..1.0, 162),
        cut in 1usize..=3,
    ) {
        let dim: usize = dims.iter().product();
        let amps = CVector64::from_iterator(dim, (0..dim).map(|i| Complex::new(seed[2 * i], seed[2 * i + 1])));
        prop_assume!(amps.norm() > 1e-3);
        let st = StateVector64::new(dims.clone(), amps).unwrap();
        let keep: Vec<usize> = (0..cut.min(dims.len() - 1)).collect();
        let rho = partial_trace(&st, &keep).unwrap();
        prop_assert!((rho.trace().re - 1.0).abs() < 1e-12);
        prop_assert!(rho.hermiticity_defect() < 1e-12);
        let spec = diagonalize(&rho, None);
        prop_assert!((spec.weighted_sum() - 1.0).abs() < 1e-12);
        prop_assert!(spec.levels.iter().all(|l| l.value >= 0.0));
    }

    #[test]
    fn renyi_is_nonincreasing_in_order(raw in prop::collection::vec(0.01f64..1.0, 1..8)) {
        let total: f64 = raw.iter().sum();
        let levels: Vec<(f64, usize)> = raw.iter().map(|x| (x / total, 1)).collect();
        let alphas = [0.25, 0.5, 0.999, 1.0, 1.001, 2.0, 5.0];
        let e = entropies_from_levels(&levels, &alphas).unwrap();
        for w in e.renyi.windows(2) {
            prop_assert!(w[1].1 <= w[0].1 + 1e-9);
        }
        prop_assert!(e.von_neumann <= (levels.len() as f64).ln() + 1e-12);
    }
}

/// Bond projectors are idempotent, mutually orthogonal, sum to the
/// identity, and rebuild `S_a·S_b` from their total-spin eigenvalues.
#[test]
fn bond_projectors_resolve_identity() {
    for a in 1..=4 {
        for b in 1..=4 {
            let (sa, sb) = (h(a), h(b));
            let d = sa.multiplet_dim() * sb.multiplet_dim();
            let mut total = DMatrix::<Complex<f64>>::zeros(d, d);
            let mut projectors = Vec::new();
            let mut c = (a - b).abs();
            while c <= a + b {
                let p = bond_projector::<f64>(sa, sb, h(c)).unwrap().matrix;
                assert!((&p * &p - &p).norm() < 1e-9);
                total += &p;
                projectors.push((h(c), p));
                c += 2;
            }
            assert!((total - DMatrix::identity(d, d)).norm() < 1e-9);
            for (i, (_, p)) in projectors.iter().enumerate() {
                for (_, q) in &projectors[i + 1..] {
                    assert!((p * q).norm() < 1e-9);
                }
            }
            // S_a·S_b = Σ_J [J(J+1) - Sa(Sa+1) - Sb(Sb+1)]/2 · P_J
            let dot = spin_dot::<f64>(sa, sb).unwrap();
            let mut rebuilt = DMatrix::<Complex<f64>>::zeros(d, d);
            for (j, p) in &projectors {
                let w = (j.to_f64() * (j.to_f64() + 1.0)
                    - sa.to_f64() * (sa.to_f64() + 1.0)
                    - sb.to_f64() * (sb.to_f64() + 1.0))
                    / 2.0;
                rebuilt += p * Complex::from(w);
            }
            assert!((dot - rebuilt).norm() < 1e-9);
        }
    }
}
