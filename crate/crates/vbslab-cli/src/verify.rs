//! Desk-scale cross-check suite behind the `verify` command.

use num_bigint::BigInt;
use num_traits::One;

use vbslab::analytic_spectra::{
    degenerate_norm_spin1_mes, inhom_spectrum, spin1_entropies, spin1_spectrum, spin_s_spectrum_recurrence,
    spin_s_spectrum_sum, vbs_norm_homogeneous, ClosedFormSpectrum,
};
use vbslab::density_oracle::{density_from_correlators, invariance_suite, partial_trace, schmidt_spectrum};
use vbslab::graph_model::{katsura_degeneracy, BlockCut};
use vbslab::spin_operators::{block_hamiltonian_with, kernel_dimension};
use vbslab::sun_model::{sun_closed_form, transfer_spectrum};
use vbslab::vbs_constructor::{build_degenerate_vbs_spin1_mes_with, ChainSpec};
use vbslab::{HalfInt, Limits, VbsError};

use crate::report::Check;

type Outcome = Result<(bool, String), VbsError>;
type Named<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn h(t: i64) -> HalfInt {
    HalfInt::from_twice(t)
}

/// Max gap between sorted nonzero spectra, `inf` when the supports differ.
fn gap(closed: &ClosedFormSpectrum, oracle: &[f64]) -> f64 {
    let ours = closed.nonzero_values_f64();
    if ours.len() != oracle.len() {
        return f64::INFINITY;
    }
    ours.iter().zip(oracle).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
}

fn homogeneous_oracle(spin: HalfInt, l: usize, limits: &Limits) -> Result<Vec<f64>, VbsError> {
    let chain = ChainSpec::homogeneous(spin, l + 2)?;
    let state = chain.vbs_state::<f64>(limits)?;
    let block: Vec<usize> = (2..2 + l).collect();
    Ok(schmidt_spectrum(&state, &block, None)?.nonzero_values())
}

fn spin1_oracle(limits: &Limits) -> Outcome {
    let mut worst = 0.0f64;
    for l in 1..=4 {
        worst = worst.max(gap(&spin1_spectrum(l)?, &homogeneous_oracle(h(2), l, limits)?));
    }
    Ok((worst < 1e-10, format!("max deviation {worst:.3e} for L = 1..4")))
}

fn spin1_entropy_formulas() -> Outcome {
    let alphas = [0.5, 2.0, 3.0];
    let mut worst = 0.0f64;
    for l in 1..=20 {
        let a = spin1_entropies(l, &alphas)?;
        let b = spin1_spectrum(l)?.entropies(&alphas)?;
        worst = worst.max((a.von_neumann - b.von_neumann).abs());
        for (x, y) in a.renyi.iter().zip(&b.renyi) {
            worst = worst.max((x.1 - y.1).abs());
        }
    }
    Ok((worst < 1e-12, format!("max deviation {worst:.3e} for L = 1..20")))
}

fn sum_vs_recurrence() -> Outcome {
    for s in 1..=3 {
        for l in 2..=8 {
            let a = spin_s_spectrum_sum(h(2 * s), l)?;
            let b = spin_s_spectrum_recurrence(h(2 * s), l)?;
            if !a.same_values(&b) || !a.trace().is_one() {
                return Ok((false, format!("mismatch at S = {s}, L = {l}")));
            }
        }
    }
    Ok((true, "exact agreement for S <= 3, L <= 8".into()))
}

fn spin2_oracle(limits: &Limits) -> Outcome {
    let g = gap(&spin_s_spectrum_sum(h(4), 2)?, &homogeneous_oracle(h(4), 2, limits)?);
    Ok((g < 1e-10, format!("max deviation {g:.3e} at S = 2, L = 2")))
}

fn inhom_reduces_to_homogeneous() -> Outcome {
    for s in 1..=2u32 {
        for l in 2..=6 {
            let a = inhom_spectrum(&vec![s; l + 1])?;
            let b = spin_s_spectrum_sum(h(2 * i64::from(s)), l)?;
            if !a.same_values(&b) {
                return Ok((false, format!("mismatch at S = {s}, L = {l}")));
            }
        }
    }
    Ok((true, "equal M reproduce the homogeneous spectrum".into()))
}

fn inhom_oracle(limits: &Limits) -> Outcome {
    let chain = ChainSpec::from_spins(vec![h(1), h(3), h(3), h(1)])?;
    let state = chain.vbs_state::<f64>(limits)?;
    let oracle = schmidt_spectrum(&state, &[1, 2], None)?.nonzero_values();
    let g = gap(&inhom_spectrum(&[1, 2, 1])?, &oracle);
    Ok((g < 1e-10, format!("max deviation {g:.3e} for multiplicities (1,2,1)")))
}

fn sun_routes() -> Outcome {
    for n in 2..=5 {
        for l in 1..=20 {
            let t = transfer_spectrum(n, l)?;
            if t != sun_closed_form(n, l)? || !t.trace().is_one() {
                return Ok((false, format!("mismatch at n = {n}, L = {l}")));
            }
            if n == 2 {
                let s1 = spin1_spectrum(l)?;
                let j0 = s1.lambda(h(0)).cloned().unwrap_or_default();
                let j1 = s1.lambda(h(2)).cloned().unwrap_or_default();
                if j0 != t.lambda_00 || j1 != t.lambda_other {
                    return Ok((false, format!("n = 2 differs from spin-1 at L = {l}")));
                }
            }
        }
    }
    Ok((
        true,
        "transfer = closed form for n <= 5, L <= 20; n = 2 is spin-1".into(),
    ))
}

fn katsura_vs_kernel(limits: &Limits) -> Outcome {
    let chain = ChainSpec::homogeneous(h(2), 3)?;
    let g = chain.graph()?;
    let spec = g.hamiltonian_spec()?;
    for block in [vec![1], vec![1, 2], vec![2, 3], vec![1, 2, 3]] {
        let hb = block_hamiltonian_with::<f64>(&spec, &block, limits)?;
        let k = kernel_dimension(&hb.matrix, None);
        let d = katsura_degeneracy(&g, &BlockCut::new(&g, &block)?);
        if BigInt::from(k) != BigInt::from(d.clone()) {
            return Ok((false, format!("block {block:?}: kernel {k}, count {d}")));
        }
    }
    Ok((true, "kernel dimension = boundary count on spin-1 blocks".into()))
}

fn invariance(limits: &Limits) -> Outcome {
    let r = invariance_suite(h(2), &[3, 4, 5], 2, None, limits)?;
    Ok((
        r.holds,
        format!("max distance {:.3e} over {} blocks", r.max_distance, r.cases.len()),
    ))
}

fn norms(limits: &Limits) -> Outcome {
    for s in 1..=2 {
        for n in 1..=3 {
            let state = ChainSpec::homogeneous(h(2 * s), n)?.vbs_state::<f64>(limits)?;
            let want = vbs_norm_homogeneous(h(2 * s), n)?;
            if state.exact_norm_squared() != Some(want) {
                return Ok((false, format!("norm mismatch at S = {s}, N = {n}")));
            }
        }
    }
    Ok((true, "exact norms for S <= 2, N <= 3".into()))
}

fn correlators(limits: &Limits) -> Outcome {
    let state = ChainSpec::homogeneous(h(2), 3)?.vbs_state::<f64>(limits)?;
    let a = partial_trace(&state, &[1, 2])?;
    let b = density_from_correlators(&state, &[1, 2])?;
    let d = a.frobenius_distance(&b);
    Ok((d < 1e-10, format!("Frobenius distance {d:.3e}")))
}

fn degenerate_states(limits: &Limits) -> Outcome {
    for l in 2..=4 {
        let states = (0..4)
            .map(|a| build_degenerate_vbs_spin1_mes_with::<f64>(l, a, limits))
            .collect::<Result<Vec<_>, _>>()?;
        for (a, x) in states.iter().enumerate() {
            let want = degenerate_norm_spin1_mes(l, a)?;
            let norm = x.norm_squared();
            if (norm - crate::report::exact_f64(&want)).abs() > 1e-9 * norm.max(1.0) {
                return Ok((false, format!("norm of state {a} at L = {l}")));
            }
            for y in &states[a + 1..] {
                let o = x.inner(y).norm();
                if o > 1e-10 {
                    return Ok((false, format!("overlap {o:.3e} at L = {l}")));
                }
            }
        }
    }
    Ok((true, "orthogonal with the expected norms for L = 2..4".into()))
}

pub fn run_checks(limits: &Limits) -> Vec<Check> {
    let suite: Vec<Named<'_>> = vec![
        ("spin1_closed_vs_oracle", Box::new(|| spin1_oracle(limits))),
        ("spin1_entropy_formulas", Box::new(spin1_entropy_formulas)),
        ("sum_vs_recurrence", Box::new(sum_vs_recurrence)),
        ("spin2_closed_vs_oracle", Box::new(|| spin2_oracle(limits))),
        ("inhom_equal_multiplicities", Box::new(inhom_reduces_to_homogeneous)),
        ("inhom_closed_vs_oracle", Box::new(|| inhom_oracle(limits))),
        ("sun_transfer_vs_closed", Box::new(sun_routes)),
        ("block_kernel_vs_count", Box::new(|| katsura_vs_kernel(limits))),
        ("position_independence", Box::new(|| invariance(limits))),
        ("vbs_norms", Box::new(|| norms(limits))),
        ("correlator_reconstruction", Box::new(|| correlators(limits))),
        ("degenerate_states", Box::new(|| degenerate_states(limits))),
    ];
    suite
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
            Check {
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}
