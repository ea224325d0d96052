//! Independent reference computations and frozen values.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use vbslab::analytic_spectra::{inhom_spectrum, spin_s_spectrum_recurrence, spin_s_spectrum_sum};
use vbslab::density_oracle::{diagonalize, partial_trace};
use vbslab::exact_algebra::{clebsch_gordan, factorial, parse_rational, threej, threej_000, HalfInt};
use vbslab::graph_model::{katsura_degeneracy, BlockCut, Edge, GraphSpec};
use vbslab::spin_operators::{assemble_hamiltonian, block_hamiltonian, kernel_dimension};
use vbslab::vbs_constructor::{expand_valence_bonds, monomials_to_state, ChainSpec};
use vbslab::Limits;

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

fn values(spec: &vbslab::analytic_spectra::ClosedFormSpectrum) -> Vec<BigRational> {
    spec.entries.iter().map(|e| e.lambda.clone()).collect()
}

fn rats(items: &[&str]) -> Vec<BigRational> {
    items.iter().map(|s| parse_rational(s).unwrap()).collect()
}

fn fact_half(twice: i64) -> BigInt {
    assert!(twice >= 0 && twice % 2 == 0);
    factorial((twice / 2) as u64)
}

/// Racah's closed form, returned as (sign, square).
fn racah_cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, j: HalfInt, m: HalfInt) -> (i32, BigRational) {
    let (a, b, c) = (j1.twice(), j2.twice(), j.twice());
    let (x, y, z) = (m1.twice(), m2.twice(), m.twice());
    if x + y != z || (a + b + c) % 2 != 0 || c > a + b || c < (a - b).abs() || z.abs() > c {
        return (0, BigRational::zero());
    }
    let delta = BigRational::new(
        fact_half(a + b - c) * fact_half(a - b + c) * fact_half(-a + b + c),
        fact_half(a + b + c + 2),
    );
    let root = delta
        * BigRational::from_integer(
            BigInt::from(c + 1)
                * fact_half(c + z)
                * fact_half(c - z)
                * fact_half(a - x)
                * fact_half(a + x)
                * fact_half(b - y)
                * fact_half(b + y),
        );
    let mut sum = BigRational::zero();
    for k in 0.. {
        let tk = 2 * k;
        let args = [
            tk,
            a + b - c - tk,
            a - x - tk,
            b + y - tk,
            c - b + x + tk,
            c - a - y + tk,
        ];
        if args[1] < 0 || args[2] < 0 || args[3] < 0 {
            break;
        }
        if args.iter().any(|&t| t < 0) {
            continue;
        }
        let den = args.iter().fold(BigInt::one(), |acc, &t| acc * fact_half(t));
        let term = BigRational::new(BigInt::one(), den);
        sum += if k % 2 == 0 { term } else { -term };
    }
    if sum.is_zero() {
        return (0, BigRational::zero());
    }
    let sign = if sum.is_positive() { 1 } else { -1 };
    (sign, root * &sum * &sum)
}

#[test]
fn ladder_cg_matches_racah_formula() {
    let mut checked = 0;
    for a in 0..=5 {
        for b in 0..=5 {
            let (j1, j2) = (h(a), h(b));
            let mut c = (a - b).abs();
            while c <= a + b {
                let j = h(c);
                for m1 in j1.projections() {
                    for m2 in j2.projections() {
                        let m = m1 + m2;
                        if m.abs() > j {
                            continue;
                        }
                        let ours = clebsch_gordan(j1, m1, j2, m2, j, m);
                        let (sign, sq) = racah_cg(j1, m1, j2, m2, j, m);
                        assert_eq!(i32::from(ours.sign()), sign, "{j1} {m1} {j2} {m2} | {j} {m}");
                        assert_eq!(ours.square(), &sq);
                        checked += 1;
                    }
                }
                c += 2;
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn zero_projection_3j_matches_general_3j() {
    for a in 0..=5u32 {
        for b in 0..=5u32 {
            for c in 0..=10u32 {
                let general = threej(
                    HalfInt::from_int(a.into()),
                    HalfInt::ZERO,
                    HalfInt::from_int(b.into()),
                    HalfInt::ZERO,
                    HalfInt::from_int(c.into()),
                    HalfInt::ZERO,
                );
                assert_eq!(threej_000(a, b, c), general, "({a} {b} {c})");
            }
        }
    }
}

#[test]
fn frozen_spin_s_spectra() {
    let cases: [(i64, usize, &[&str]); 5] = [
        (4, 2, &["1/5", "3/20", "7/100"]),
        (4, 3, &["7/100", "9/100", "33/250"]),
        (6, 2, &["1/7", "4/35", "12/175", "6/245"]),
        (6, 3, &["6/245", "204/6125", "324/6125", "3743/42875"]),
        (8, 2, &["1/9", "5/54", "55/882", "55/1764", "143/15876"]),
    ];
    for (s, l, expected) in cases {
        assert_eq!(
            values(&spin_s_spectrum_sum(h(s), l).unwrap()),
            rats(expected),
            "2S={s} L={l}"
        );
        assert_eq!(values(&spin_s_spectrum_recurrence(h(s), l).unwrap()), rats(expected));
    }
}

#[test]
fn frozen_inhomogeneous_spectra() {
    let cases: [(&[u32], &[&str]); 4] = [
        (&[1, 2, 1], &["3/8", "5/24"]),
        (&[1, 2, 2, 1], &["3/16", "13/48"]),
        (&[3, 1, 2, 2], &["1/16", "3/40", "23/240"]),
        (&[2, 3, 1], &["4/15", "7/60"]),
    ];
    for (m, expected) in cases {
        assert_eq!(values(&inhom_spectrum(m).unwrap()), rats(expected), "{m:?}");
    }
}

#[test]
fn half_integer_block_spectrum_matches_oracle() {
    // block multiplicities (3,1,2,2) sit inside the chain 3/2, 2, 3/2, 2, 1
    let spins = vec![h(3), h(4), h(3), h(4), h(2)];
    let chain = ChainSpec::from_spins(spins).unwrap();
    assert_eq!(chain.multiplicities, vec![3, 1, 2, 2]);
    let state = chain.vbs_state::<f64>(&Limits::default()).unwrap();
    let oracle = diagonalize(&partial_trace(&state, &[1, 2, 3]).unwrap(), None);
    let ours: Vec<f64> = inhom_spectrum(&[3, 1, 2, 2]).unwrap().nonzero_values_f64();
    let theirs = oracle.nonzero_values();
    assert_eq!(ours.len(), theirs.len());
    for (a, b) in ours.iter().zip(&theirs) {
        assert!((a - b).abs() < 1e-10);
    }
}

/// The VBS state spans the kernel of the full Hamiltonian.
#[test]
fn vbs_state_is_the_unique_ground_state() {
    let graphs = vec![
        ChainSpec::homogeneous(h(2), 3).unwrap().graph().unwrap(),
        ChainSpec::homogeneous(h(4), 2).unwrap().graph().unwrap(),
        ChainSpec::from_spins(vec![h(1), h(3), h(4), h(3), h(1)])
            .unwrap()
            .graph()
            .unwrap(),
        GraphSpec::basic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(),
        GraphSpec::basic(4, &[(0, 1), (0, 2), (0, 3)]).unwrap(),
    ];
    for g in graphs {
        let spec = g.hamiltonian_spec().unwrap();
        let ham = assemble_hamiltonian::<f64>(&spec).unwrap();
        assert_eq!(kernel_dimension(&ham, None), 1);
        let st = monomials_to_state::<f64>(&expand_valence_bonds(&g).unwrap()).unwrap();
        let residual = (&ham * &st.amplitudes).norm() / st.norm_squared().sqrt();
        assert!(residual < 1e-10);
    }
}

/// Ground-space dimension of block Hamiltonians equals the Katsura count.
#[test]
fn block_kernels_match_katsura() {
    let e = |u, v, m| Edge { u, v, m };
    let cases: Vec<(GraphSpec, Vec<usize>)> = vec![
        (ChainSpec::homogeneous(h(2), 4).unwrap().graph().unwrap(), vec![1, 2, 3]),
        (ChainSpec::homogeneous(h(4), 3).unwrap().graph().unwrap(), vec![1, 2]),
        (
            ChainSpec::from_spins(vec![h(1), h(3), h(4), h(3), h(1)])
                .unwrap()
                .graph()
                .unwrap(),
            vec![1, 2, 3],
        ),
        (GraphSpec::basic(3, &[(0, 1), (1, 2), (2, 0)]).unwrap(), vec![0, 1]),
        (
            GraphSpec::basic(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap(),
            vec![0, 1, 2],
        ),
        (
            GraphSpec::new(
                vec![h(3), h(3), h(2), h(2)],
                vec![e(0, 1, 2), e(0, 2, 1), e(1, 3, 1), e(2, 3, 1)],
            )
            .unwrap(),
            vec![0, 1],
        ),
    ];
    for (g, block) in cases {
        let spec = g.hamiltonian_spec().unwrap();
        let hb = block_hamiltonian::<f64>(&spec, &block).unwrap();
        let cut = BlockCut::new(&g, &block).unwrap();
        let deg = katsura_degeneracy(&g, &cut);
        assert_eq!(
            BigInt::from(kernel_dimension(&hb.matrix, None)),
            BigInt::from(deg),
            "{block:?}"
        );
    }
}
