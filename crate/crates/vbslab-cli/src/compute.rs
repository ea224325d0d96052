//! Command dispatch: turns a [`RunConfig`] into a [`Report`].

use num_rational::BigRational;
use num_traits::Zero;

use vbslab::analytic_spectra::{
    inhom_spectrum, large_block_limit, spin1_spectrum, spin_s_spectrum_recurrence, spin_s_spectrum_sum,
    ClosedFormSpectrum, LimitKind,
};
use vbslab::density_oracle::{diagonalize, entropies_from_levels, schmidt_spectrum, DensityMatrix};
use vbslab::graph_model::{check_uniqueness, hilbert_dimensions, BlockCut, GraphFile, GraphSpec};
use vbslab::limits::product_dim;
use vbslab::spin_operators::{block_hamiltonian_with, kernel_dimension};
use vbslab::sun_model::{edge_density_direct, sun_closed_form, transfer_spectrum, SunSpectrum};
use vbslab::vbs_constructor::{expand_valence_bonds_with, monomials_to_state_with, ChainSpec};
use vbslab::{HalfInt, Limits, Spectrum64, StateVector64, VbsError};

use crate::config::{Command, MethodArg, Model, RunConfig};
use crate::report::{
    exact_f64, exact_text, Comparison, CrossCheck, CutEdge, Deficit, Degeneracy, Entropies, Level, Limit, ModelEcho,
    Report, Route, Skipped, F17,
};
use crate::CliError;

#[derive(Clone, Debug)]
struct Lv {
    label: Option<String>,
    twice_j: Option<i64>,
    exact: Option<BigRational>,
    value: f64,
    degeneracy: usize,
}

#[derive(Clone, Debug)]
struct RouteData {
    method: &'static str,
    levels: Vec<Lv>,
}

impl RouteData {
    fn closed(method: &'static str, spec: &ClosedFormSpectrum) -> Self {
        let levels = spec
            .entries
            .iter()
            .map(|e| Lv {
                label: Some(e.j.to_string()),
                twice_j: Some(e.j.twice()),
                value: exact_f64(&e.lambda),
                exact: Some(e.lambda.clone()),
                degeneracy: e.degeneracy,
            })
            .collect();
        RouteData { method, levels }
    }

    /// With `as_spin` the two classes are labelled `J = 0` and `J = 1`,
    /// which is what they are for `n = 2`.
    fn sun(method: &'static str, spec: &SunSpectrum, as_spin: bool) -> Self {
        let lv = |label: &str, twice_j: i64, x: &BigRational, degeneracy| Lv {
            label: Some(label.to_string()),
            twice_j: as_spin.then_some(twice_j),
            exact: Some(x.clone()),
            value: exact_f64(x),
            degeneracy,
        };
        let (a, b) = if as_spin { ("0", "1") } else { ("(0,0)", "(l,m)!=(0,0)") };
        RouteData {
            method,
            levels: vec![
                lv(a, 0, &spec.lambda_00, 1),
                lv(b, 2, &spec.lambda_other, spec.other_multiplicity()),
            ],
        }
    }

    fn oracle(spec: &Spectrum64) -> Self {
        let levels = spec
            .levels
            .iter()
            .filter(|l| l.value != 0.0)
            .map(|l| Lv {
                label: None,
                twice_j: None,
                exact: None,
                value: l.value,
                degeneracy: l.degeneracy,
            })
            .collect();
        RouteData {
            method: "oracle",
            levels,
        }
    }

    fn is_exact(&self) -> bool {
        self.levels.iter().all(|l| l.exact.is_some())
    }

    fn nonzero_sorted(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .levels
            .iter()
            .filter(|l| l.value != 0.0)
            .flat_map(|l| std::iter::repeat_n(l.value, l.degeneracy))
            .collect();
        v.sort_by(|a, b| b.total_cmp(a));
        v
    }

    fn exact_sorted(&self) -> Option<Vec<BigRational>> {
        let mut v = Vec::new();
        for l in &self.levels {
            let x = l.exact.as_ref()?;
            if !x.is_zero() {
                v.extend(std::iter::repeat_n(x.clone(), l.degeneracy));
            }
        }
        v.sort();
        Some(v)
    }

    fn von_neumann(&self) -> f64 {
        entropies_from_levels(&self.float_levels(), &[])
            .map(|e| e.von_neumann)
            .unwrap_or(f64::NAN)
    }

    fn float_levels(&self) -> Vec<(f64, usize)> {
        self.levels.iter().map(|l| (l.value, l.degeneracy)).collect()
    }

    fn render(&self, alphas: &[f64]) -> Result<Route, CliError> {
        let exact = self.is_exact();
        let trace_exact = exact.then(|| {
            let t: BigRational = self
                .levels
                .iter()
                .map(|l| l.exact.clone().unwrap_or_default() * BigRational::from_integer(l.degeneracy.into()))
                .sum();
            exact_text(&t)
        });
        let trace_float = self.levels.iter().map(|l| l.value * l.degeneracy as f64).sum();
        let report = entropies_from_levels(&self.float_levels(), alphas)?;
        Ok(Route {
            method: self.method.to_string(),
            exact,
            levels: self
                .levels
                .iter()
                .map(|l| Level {
                    label: l.label.clone(),
                    twice_j: l.twice_j,
                    lambda_exact: l.exact.as_ref().map(exact_text),
                    lambda_float: F17(l.value),
                    degeneracy: l.degeneracy,
                })
                .collect(),
            trace_exact,
            trace_float: F17(trace_float),
            support_dim: self
                .levels
                .iter()
                .filter(|l| l.value != 0.0)
                .map(|l| l.degeneracy)
                .sum(),
            entropies: Entropies::from(&report),
        })
    }
}

/// A fully specified way of getting one spectrum.
#[derive(Clone, Debug)]
enum Plan {
    Spin1(usize),
    Sum(HalfInt, usize),
    Recurrence(HalfInt, usize),
    Inhom(Vec<u32>),
    SunClosed(usize, usize, bool),
    SunTransfer(usize, usize, bool),
    SunOracle(usize, usize),
    Oracle(Source, Vec<usize>),
}

/// Where an oracle state comes from.
#[derive(Clone, Debug)]
enum Source {
    Chain(ChainSpec),
    Graph(GraphSpec),
}

impl Source {
    fn graph(&self) -> Result<GraphSpec, VbsError> {
        match self {
            Source::Chain(c) => c.graph(),
            Source::Graph(g) => Ok(g.clone()),
        }
    }

    fn state(&self, limits: &Limits) -> Result<StateVector64, VbsError> {
        let g = self.graph()?;
        let map = expand_valence_bonds_with(&g, limits)?;
        monomials_to_state_with(&map, limits)
    }
}

impl Plan {
    fn method(&self) -> &'static str {
        match self {
            Plan::Spin1(_) | Plan::Inhom(_) | Plan::SunClosed(..) => "closed",
            Plan::Sum(..) => "sum",
            Plan::Recurrence(..) => "recurrence",
            Plan::SunTransfer(..) => "transfer",
            Plan::SunOracle(..) | Plan::Oracle(..) => "oracle",
        }
    }

    fn run(&self, limits: &Limits) -> Result<RouteData, VbsError> {
        let m = self.method();
        Ok(match self {
            Plan::Spin1(l) => RouteData::closed(m, &spin1_spectrum(*l)?),
            Plan::Sum(s, l) => RouteData::closed(m, &spin_s_spectrum_sum(*s, *l)?),
            Plan::Recurrence(s, l) => RouteData::closed(m, &spin_s_spectrum_recurrence(*s, *l)?),
            Plan::Inhom(ms) => RouteData::closed(m, &inhom_spectrum(ms)?),
            Plan::SunClosed(n, l, as_spin) => RouteData::sun(m, &sun_closed_form(*n, *l)?, *as_spin),
            Plan::SunTransfer(n, l, as_spin) => RouteData::sun(m, &transfer_spectrum(*n, *l)?, *as_spin),
            Plan::SunOracle(n, l) => {
                // the literal sum visits (n²-1)^L words
                let words = product_dim(std::iter::repeat_n((n * n).saturating_sub(1), *l));
                limits.check_dim("SU(n) word enumeration", words)?;
                let matrix = edge_density_direct::<f64>(*n, *l)?;
                let rho = DensityMatrix {
                    sites: vec![0, 1],
                    local_dims: vec![*n, *n],
                    matrix,
                };
                RouteData::oracle(&diagonalize(&rho, None))
            }
            Plan::Oracle(src, block) => {
                let state = src.state(limits)?;
                RouteData::oracle(&schmidt_spectrum(&state, block, None)?)
            }
        })
    }
}

/// Resolved model with everything needed to plan routes.
#[derive(Clone, Debug)]
enum Resolved {
    Homogeneous {
        spin: HalfInt,
        l: usize,
        chain: ChainSpec,
        block: Vec<usize>,
    },
    Inhom {
        mults: Vec<u32>,
        chain: ChainSpec,
        block: Vec<usize>,
    },
    Chain {
        chain: ChainSpec,
        block: Vec<usize>,
        block_mults: Option<Vec<u32>>,
    },
    Sun {
        n: usize,
        l: usize,
    },
    Graph {
        graph: GraphSpec,
        block: Vec<usize>,
    },
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

/// Spins `M_0/2, (M_0+M_1)/2, ..., M_L/2` of the shortest chain whose
/// interior sites form a block with the given bond multiplicities.
fn chain_for_block(mults: &[u32]) -> Result<(ChainSpec, Vec<usize>), CliError> {
    if mults.len() < 2 {
        return Err(invalid("need at least two bond multiplicities"));
    }
    let end = |m: u32| HalfInt::from_twice(i64::from(m));
    let mut spins = vec![end(mults[0])];
    spins.extend(mults.windows(2).map(|w| end(w[0] + w[1])));
    spins.push(end(mults[mults.len() - 1]));
    let block = (1..mults.len()).collect();
    Ok((
        ChainSpec {
            spins,
            multiplicities: mults.to_vec(),
        },
        block,
    ))
}

/// Bond multiplicities seen by a contiguous interior block of a chain.
fn interior_block_mults(chain: &ChainSpec, block: &[usize]) -> Option<Vec<u32>> {
    let (&a, &b) = (block.first()?, block.last()?);
    let contiguous = block.windows(2).all(|w| w[1] == w[0] + 1);
    (contiguous && a >= 1 && b + 2 <= chain.spins.len()).then(|| chain.multiplicities[a - 1..=b].to_vec())
}

fn model_name(m: Model) -> &'static str {
    match m {
        Model::Spin1 => "spin1",
        Model::SpinS => "spin-s",
        Model::Inhom => "inhom",
        Model::Chain => "chain",
        Model::Sun => "sun",
        Model::Graph => "graph",
    }
}

fn resolve(cfg: &RunConfig) -> Result<(Resolved, ModelEcho), CliError> {
    let model = cfg.resolved_model();
    let mut echo = ModelEcho {
        kind: model_name(model).to_string(),
        ..Default::default()
    };
    let resolved = match model {
        Model::Spin1 | Model::SpinS => {
            let spin = match model {
                Model::Spin1 => HalfInt::from_twice(2),
                _ => cfg
                    .spin
                    .ok_or_else(|| invalid("--S is required for the spin-s model"))?,
            };
            if model == Model::Spin1 && cfg.spin.is_some_and(|s| s != spin) {
                return Err(invalid("--S conflicts with --model spin1"));
            }
            let l = cfg.require_l()?;
            if l == 0 {
                return Err(invalid("--L must be positive"));
            }
            let n_bulk = cfg.n_bulk.unwrap_or(l + 2);
            if n_bulk < l {
                return Err(invalid(format!("--N {n_bulk} is shorter than the block length {l}")));
            }
            let chain = ChainSpec::homogeneous(spin, n_bulk)?;
            let start = 1 + (n_bulk - l) / 2;
            let block = (start..start + l).collect();
            echo.spin = Some(spin.to_string());
            echo.l = Some(l);
            echo.n_bulk = Some(n_bulk);
            Resolved::Homogeneous { spin, l, chain, block }
        }
        Model::Inhom => {
            let mults = cfg
                .mults
                .clone()
                .ok_or_else(|| invalid("--mults is required for the inhom model"))?;
            let (chain, block) = chain_for_block(&mults)?;
            echo.multiplicities = Some(mults.clone());
            echo.l = Some(mults.len() - 1);
            Resolved::Inhom { mults, chain, block }
        }
        Model::Chain => {
            let spins = cfg
                .spins
                .clone()
                .ok_or_else(|| invalid("--spins is required for the chain model"))?;
            let chain = ChainSpec::from_spins(spins)?;
            let block = cfg
                .block
                .clone()
                .ok_or_else(|| invalid("--block is required for the chain model"))?;
            let block_mults = interior_block_mults(&chain, &block);
            echo.spins = Some(chain.spins.iter().map(HalfInt::to_string).collect());
            echo.multiplicities = Some(chain.multiplicities.clone());
            echo.block = Some(block.clone());
            Resolved::Chain {
                chain,
                block,
                block_mults,
            }
        }
        Model::Sun => {
            let (n, l) = (cfg.require_n()?, cfg.require_l()?);
            echo.n = Some(n);
            echo.l = Some(l);
            Resolved::Sun { n, l }
        }
        Model::Graph => {
            let path = cfg
                .graph
                .as_ref()
                .ok_or_else(|| invalid("--graph is required for the graph model"))?;
            let text =
                std::fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
            let (graph, file_block) = GraphFile::from_json(&text)?.resolve()?;
            let block = cfg.block.clone().unwrap_or(file_block);
            if block.is_empty() {
                return Err(invalid("graph model needs a block (in the file or via --block)"));
            }
            echo.block = Some(block.clone());
            Resolved::Graph { graph, block }
        }
    };
    if let Resolved::Homogeneous { block, .. } | Resolved::Inhom { block, .. } = &resolved {
        echo.block = Some(block.clone());
    }
    Ok((resolved, echo))
}

impl Resolved {
    /// Every route this model supports, in a fixed order.
    fn plans(&self) -> Vec<Plan> {
        match self {
            Resolved::Homogeneous { spin, l, chain, block } => {
                let mut v = Vec::new();
                if spin.twice() == 2 {
                    v.push(Plan::Spin1(*l));
                }
                v.push(Plan::Sum(*spin, *l));
                v.push(Plan::Recurrence(*spin, *l));
                if spin.twice() == 2 {
                    v.push(Plan::SunTransfer(2, *l, true));
                }
                v.push(Plan::Oracle(Source::Chain(chain.clone()), block.clone()));
                v
            }
            Resolved::Inhom { mults, chain, block } => vec![
                Plan::Inhom(mults.clone()),
                Plan::Oracle(Source::Chain(chain.clone()), block.clone()),
            ],
            Resolved::Chain {
                chain,
                block,
                block_mults,
            } => {
                let mut v = Vec::new();
                if let Some(m) = block_mults {
                    v.push(Plan::Inhom(m.clone()));
                }
                v.push(Plan::Oracle(Source::Chain(chain.clone()), block.clone()));
                v
            }
            Resolved::Sun { n, l } => vec![
                Plan::SunClosed(*n, *l, false),
                Plan::SunTransfer(*n, *l, false),
                Plan::SunOracle(*n, *l),
            ],
            Resolved::Graph { graph, block } => vec![Plan::Oracle(Source::Graph(graph.clone()), block.clone())],
        }
    }

    fn default_method(&self) -> MethodArg {
        match self {
            Resolved::Homogeneous { spin, .. } if spin.twice() != 2 => MethodArg::Sum,
            Resolved::Chain { .. } | Resolved::Graph { .. } => MethodArg::Oracle,
            _ => MethodArg::Closed,
        }
    }

    fn limit_kind(&self) -> Option<LimitKind> {
        match self {
            Resolved::Homogeneous { spin, .. } if spin.twice() == 2 => Some(LimitKind::Spin1),
            Resolved::Homogeneous { spin, .. } => Some(LimitKind::SpinS(spin.as_int()?.try_into().ok()?)),
            Resolved::Inhom { mults, .. } => Some(LimitKind::Inhom(mults[0], *mults.last()?)),
            Resolved::Chain {
                block_mults: Some(m), ..
            } => Some(LimitKind::Inhom(m[0], *m.last()?)),
            _ => None,
        }
    }

    fn graph_and_block(&self) -> Result<(GraphSpec, Vec<usize>), CliError> {
        match self {
            Resolved::Homogeneous { chain, block, .. }
            | Resolved::Inhom { chain, block, .. }
            | Resolved::Chain { chain, block, .. } => Ok((chain.graph()?, block.clone())),
            Resolved::Graph { graph, block } => Ok((graph.clone(), block.clone())),
            Resolved::Sun { .. } => Err(invalid("the degeneracy command needs an SU(2) chain or graph")),
        }
    }
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Sum => "sum",
        MethodArg::Recurrence => "recurrence",
        MethodArg::Closed => "closed",
        MethodArg::Transfer => "transfer",
        MethodArg::Oracle => "oracle",
        MethodArg::All => "all",
    }
}

/// Picks the routes for a spectrum-like command.
fn select(resolved: &Resolved, method: MethodArg, command: Command) -> Result<Vec<Plan>, CliError> {
    let all = resolved.plans();
    if method == MethodArg::All {
        return Ok(all);
    }
    let want = method_name(method);
    // a lone "closed" request on spin-S falls back to the triple sum
    let pick = |name: &str| all.iter().find(|p| p.method() == name).cloned();
    let first = pick(want)
        .or_else(|| (method == MethodArg::Closed).then(|| pick("sum")).flatten())
        .ok_or_else(|| invalid(format!("method {want} is not available for this model")))?;
    let mut chosen = vec![first];
    if command == Command::Oracle {
        // oracle runs always compare against a closed form when there is one
        if let Some(p) = all.iter().find(|p| p.method() != "oracle") {
            chosen.push(p.clone());
        }
    }
    Ok(chosen)
}

fn run_plans(plans: &[Plan], all: bool, limits: &Limits) -> Result<(Vec<RouteData>, Vec<Skipped>), CliError> {
    let mut done = Vec::new();
    let mut skipped = Vec::new();
    for p in plans {
        match p.run(limits) {
            Ok(r) => done.push(r),
            Err(VbsError::Domain(reason)) if all => skipped.push(Skipped {
                method: p.method().to_string(),
                reason,
            }),
            Err(e) => return Err(e.into()),
        }
    }
    Ok((done, skipped))
}

fn cross_check(routes: &[RouteData]) -> Option<CrossCheck> {
    let (reference, rest) = routes.split_first()?;
    if rest.is_empty() {
        return None;
    }
    let ref_values = reference.nonzero_sorted();
    let ref_exact = reference.exact_sorted();
    let comparisons: Vec<Comparison> = rest
        .iter()
        .map(|r| {
            let values = r.nonzero_sorted();
            let dev = if values.len() == ref_values.len() {
                values
                    .iter()
                    .zip(&ref_values)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max)
            } else {
                f64::INFINITY
            };
            Comparison {
                reference: reference.method.to_string(),
                method: r.method.to_string(),
                exact_equal: match (&ref_exact, r.exact_sorted()) {
                    (Some(a), Some(b)) => Some(*a == b),
                    _ => None,
                },
                max_deviation: F17(dev),
            }
        })
        .collect();
    let max = comparisons.iter().map(|c| c.max_deviation.0).fold(0.0, f64::max);
    Some(CrossCheck {
        comparisons,
        max_deviation: F17(max),
    })
}

fn limit_section(resolved: &Resolved, routes: &[RouteData]) -> Result<Option<Limit>, CliError> {
    let (d, lambda) = if let Resolved::Sun { n, .. } = resolved {
        let d = n * n;
        (d, BigRational::new(1.into(), d.into()))
    } else if let Some(kind) = resolved.limit_kind() {
        let (spec, _) = large_block_limit(kind, &[])?;
        let lambda = spec.entries[0].lambda.clone();
        (spec.support_dim(), lambda)
    } else {
        return Ok(None);
    };
    let ln_d = (d as f64).ln();
    Ok(Some(Limit {
        support_dim: d,
        lambda_exact: exact_text(&lambda),
        entropy: F17(ln_d),
        deficits: routes
            .iter()
            .map(|r| Deficit {
                method: r.method.to_string(),
                von_neumann_deficit: F17(ln_d - r.von_neumann()),
            })
            .collect(),
    }))
}

fn degeneracy_section(resolved: &Resolved, method: MethodArg, limits: &Limits) -> Result<Degeneracy, CliError> {
    let (g, block) = resolved.graph_and_block()?;
    let cut = BlockCut::new(&g, &block)?;
    let counts = hilbert_dimensions(&g, &cut);
    let uniq = check_uniqueness(&g);
    let brute = matches!(method, MethodArg::Oracle | MethodArg::All);
    let (kernel, support) = if brute {
        let hb = block_hamiltonian_with::<f64>(&g.hamiltonian_spec()?, &block, limits)?;
        let support = if cut.is_proper(&g) && uniq.holds {
            let state = Source::Graph(g.clone()).state(limits)?;
            Some(schmidt_spectrum(&state, &block, None)?.support_dim)
        } else {
            None
        };
        (Some(kernel_dimension(&hb.matrix, None)), support)
    } else {
        (None, None)
    };
    Ok(Degeneracy {
        vertex_count: g.vertex_count(),
        block: cut.block.clone(),
        boundary: cut.boundary.clone(),
        cut_edges: cut
            .cut_edges
            .iter()
            .map(|&k| {
                let e = g.edges()[k];
                CutEdge { u: e.u, v: e.v, m: e.m }
            })
            .collect(),
        katsura_degeneracy: counts.deg.to_string(),
        hilbert_dim: counts.dim.to_string(),
        bound_ok: counts.bound_ok,
        unique_ground_state: uniq.holds,
        violations: uniq
            .violations
            .iter()
            .map(|v| format!("vertex {}: 2S = {}, bonds carry {}", v.vertex, v.twice_spin, v.bond_sum))
            .collect(),
        kernel_dimension: kernel,
        support_dim: support,
    })
}

pub fn run(cfg: &RunConfig, limits: &Limits) -> Result<Report, CliError> {
    let name = format!("{:?}", cfg.command).to_lowercase();
    let mut report = Report::new(&name);
    if cfg.command == Command::Verify {
        report.checks = crate::verify::run_checks(limits);
        return Ok(report);
    }
    if cfg.command == Command::Sun && cfg.model.is_some_and(|m| m != Model::Sun) {
        return Err(invalid("the sun command only takes --model sun"));
    }
    let (resolved, echo) = resolve(cfg)?;
    report.model = Some(echo);
    if cfg.command == Command::Degeneracy {
        let method = cfg.method.unwrap_or(MethodArg::Closed);
        if !matches!(method, MethodArg::Closed | MethodArg::Oracle | MethodArg::All) {
            return Err(invalid("degeneracy takes --method closed, oracle or all"));
        }
        report.degeneracy = Some(degeneracy_section(&resolved, method, limits)?);
        return Ok(report);
    }
    let method = match cfg.command {
        Command::Oracle => {
            if cfg.method.is_some_and(|m| m != MethodArg::Oracle) {
                return Err(invalid("the oracle command always uses --method oracle"));
            }
            MethodArg::Oracle
        }
        _ => cfg.method.unwrap_or_else(|| resolved.default_method()),
    };
    let plans = select(&resolved, method, cfg.command)?;
    let (routes, skipped) = run_plans(&plans, method == MethodArg::All, limits)?;
    report.routes = routes.iter().map(|r| r.render(&cfg.alphas)).collect::<Result<_, _>>()?;
    report.skipped = skipped;
    report.cross_check = cross_check(&routes);
    if cfg.command == Command::Entropy {
        report.limit = limit_section(&resolved, &routes)?;
    }
    if cfg.command == Command::Oracle && !matches!(resolved, Resolved::Sun { .. }) {
        report.degeneracy = Some(degeneracy_section(&resolved, MethodArg::Closed, limits)?);
    }
    Ok(report)
}
