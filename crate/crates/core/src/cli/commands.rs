use std::path::Path;

use sha2::{Digest, Sha256};

use super::input::{load_operator, load_state, read_bytes, LoadedState};
use super::report::{Cell, Report, Table, Value};
use super::{Cli, CliError, Command, CriterionKind, EvolveMode, GlobalArgs, RepKind};
use crate::dynamics::{
    bloch_point, chordal_distance, project_to_chart, riccati_evolve, schrodinger_evolve, HamiltonianSpec,
};
use crate::error::Error;
use crate::gns::gns_construct_with_tol;
use crate::pullback::{
    devicente_check_with, distance_to_separable, local_product_rep, max_entanglement_pure_with, mixed_tensor,
    pure_pullback, separability_pure_with, su_basis, BlockNorms, CoefficientMatrix,
    CriterionTolerances, RealMatrix, SeparabilityReport,
};
use crate::states::{projector, BipartiteDims, DensityState, DensityTolerances};

pub(super) fn execute(cli: &Cli) -> Result<Report, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Tensors { state, rep, n } => tensors(g, state, *rep, *n),
        Command::Separability { state, dims, criterion } => separability(g, state, *dims, *criterion),
        Command::WernerScan { from, to, steps, out } => scan(g, *from, *to, *steps, out.as_deref()),
        Command::Evolve {
            hamiltonian,
            state,
            t_max,
            step,
            mode,
            samples,
            hbar,
            out,
        } => evolve(
            g,
            hamiltonian,
            state,
            EvolveParams {
                t_max: *t_max,
                step: *step,
                mode: *mode,
                samples: *samples,
                hbar: *hbar,
            },
            out.as_deref(),
        ),
        Command::Gns { state } => gns(g, state),
    }
}

fn tolerances(g: &GlobalArgs) -> Vec<(String, f64)> {
    [
        ("zero_block", g.tol),
        ("boundary", g.boundary_tol),
        ("hermiticity", g.herm_tol),
        ("psd", g.psd_tol),
        ("trace", g.trace_tol),
        ("schmidt_rank", g.schmidt_tol),
        ("gns_rank", g.gns_tol),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn density_tolerances(g: &GlobalArgs) -> DensityTolerances<f64> {
    DensityTolerances {
        hermiticity: g.herm_tol,
        psd: g.psd_tol,
        trace: g.trace_tol,
    }
}

fn criterion_tolerances(g: &GlobalArgs) -> CriterionTolerances<f64> {
    CriterionTolerances {
        zero_block: g.tol,
        boundary: g.boundary_tol,
        schmidt_rank: g.schmidt_tol,
    }
}

fn digest(parts: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for p in parts {
        h.update((p.len() as u64).to_le_bytes());
        h.update(p);
    }
    hex::encode(h.finalize())
}

fn matrix_value(m: &RealMatrix<f64>) -> Value {
    Value::Matrix((0..m.rows()).map(|i| m.row(i).to_vec()).collect())
}

fn put_norms(r: &mut Report, prefix: &str, n: &BlockNorms<f64>) {
    r.float(&format!("{prefix}.a"), n.a);
    r.float(&format!("{prefix}.b"), n.b);
    r.float(&format!("{prefix}.ab"), n.ab);
}

fn state_kind(s: &LoadedState) -> &'static str {
    match s {
        LoadedState::Pure(..) => "pure",
        LoadedState::Density(..) => "density",
    }
}

fn tensors(g: &GlobalArgs, path: &Path, rep_kind: RepKind, n: Option<usize>) -> Result<Report, CliError> {
    let bytes = read_bytes(path)?;
    let state = load_state(&bytes, path, density_tolerances(g))?;
    let dim = state.dim();
    let (rep, n) = match rep_kind {
        RepKind::Su => {
            let n = n.unwrap_or(dim);
            if n != dim {
                return Err(CliError::validation(format!("su({n}) does not act on dimension {dim}")));
            }
            (su_basis::<f64>(n)?, n)
        }
        RepKind::LocalProduct => {
            let n = match (n, state.dims()) {
                (Some(n), _) => n,
                (None, Some(d)) if d.is_square() => d.n_a(),
                (None, Some(d)) => {
                    return Err(Error::Inapplicable(format!(
                        "local-product representation needs a square split, file has {}x{}",
                        d.n_a(),
                        d.n_b()
                    ))
                    .into())
                }
                (None, None) => BipartiteDims::infer_square(dim)
                    .ok_or_else(|| CliError::validation(format!("dimension {dim} is not a square")))?
                    .n_a(),
            };
            if n * n != dim {
                return Err(CliError::validation(format!("su({n}) x su({n}) does not act on dimension {dim}")));
            }
            (local_product_rep::<f64>(n)?, n)
        }
    };
    let coeffs: CoefficientMatrix<f64> = match &state {
        LoadedState::Pure(psi, _) => pure_pullback(psi, &rep)?,
        LoadedState::Density(rho, _) => mixed_tensor(rho, &rep)?,
    };
    let mut r = Report::new("tensors", digest(&[&bytes]), tolerances(g));
    r.text("state_kind", state_kind(&state));
    r.text(
        "representation",
        match rep_kind {
            RepKind::Su => "su",
            RepKind::LocalProduct => "local-product",
        },
    );
    r.int("n", n);
    r.int("generators", rep.len());
    r.text("labels", rep.labels().join(" "));
    r.put("sym", matrix_value(&coeffs.sym));
    r.put("antisym", matrix_value(&coeffs.antisym));
    if coeffs.partition.is_some() {
        let sym = coeffs.sym_blocks()?;
        r.put("sym.ab_block", matrix_value(&sym.ab));
        put_norms(&mut r, "sym_norm", &sym.norms());
        put_norms(&mut r, "antisym_norm", &coeffs.antisym_blocks()?.norms());
    }
    Ok(r)
}

fn resolve_dims(flag: Option<(usize, usize)>, state: &LoadedState) -> Result<BipartiteDims, CliError> {
    let dims = match (flag, state.dims()) {
        (Some((a, b)), _) => BipartiteDims::new(a, b)?,
        (None, Some(d)) => d,
        (None, None) => BipartiteDims::infer_square(state.dim()).ok_or_else(|| {
            CliError::validation(format!(
                "cannot infer a bipartition of dimension {}; pass --dims",
                state.dim()
            ))
        })?,
    };
    if dims.total() != state.dim() {
        return Err(CliError::validation(format!(
            "dims {}x{} do not match dimension {}",
            dims.n_a(),
            dims.n_b(),
            state.dim()
        )));
    }
    Ok(dims)
}

fn put_verdict(r: &mut Report, prefix: &str, s: &SeparabilityReport<f64>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    r.text(&key("criterion"), &s.criterion);
    r.text(&key("verdict"), s.verdict.as_str());
    r.float(&key("statistic"), s.statistic);
    r.float(&key("bound"), s.bound);
    put_norms(r, &key("block_norm"), &s.blocks);
    if let Some(sd) = &s.schmidt {
        r.int(&key("schmidt_rank"), sd.rank);
        r.put(&key("schmidt_coefficients"), Value::Floats(sd.coefficients.clone()));
    }
    if let Some(agrees) = s.schmidt_agrees {
        r.put(&key("schmidt_agrees"), Value::Bool(agrees));
    }
}

fn separability(
    g: &GlobalArgs,
    path: &Path,
    dims_flag: Option<(usize, usize)>,
    criterion: CriterionKind,
) -> Result<Report, CliError> {
    let bytes = read_bytes(path)?;
    let state = load_state(&bytes, path, density_tolerances(g))?;
    let dims = resolve_dims(dims_flag, &state)?;
    let tols = criterion_tolerances(g);
    let mut r = Report::new("separability", digest(&[&bytes]), tolerances(g));
    r.text("state_kind", state_kind(&state));
    r.text("dims", format!("{}x{}", dims.n_a(), dims.n_b()));
    let pure_only = |what: &str| Error::Inapplicable(format!("{what} applies to pure states only"));
    match (criterion, &state) {
        (CriterionKind::Auto, LoadedState::Pure(psi, _)) => {
            put_verdict(&mut r, "", &separability_pure_with(psi, dims, tols)?);
            if dims.is_square() {
                put_verdict(&mut r, "max_entanglement", &max_entanglement_pure_with(psi, dims, tols)?);
            }
            let d = distance_to_separable(psi, dims)?;
            r.float("distance.g_ab_sq", d.g_ab_sq);
            r.float("distance.r_sq", d.r_sq);
            match d.ratio {
                Some(x) => r.float("distance.ratio", x),
                None => r.text("distance.ratio", "undefined"),
            }
        }
        (CriterionKind::PureBlock, LoadedState::Pure(psi, _)) => {
            put_verdict(&mut r, "", &separability_pure_with(psi, dims, tols)?)
        }
        (CriterionKind::MaxEntanglement, LoadedState::Pure(psi, _)) => {
            put_verdict(&mut r, "", &max_entanglement_pure_with(psi, dims, tols)?)
        }
        (CriterionKind::PureBlock, LoadedState::Density(..)) => return Err(pure_only("pure-block").into()),
        (CriterionKind::MaxEntanglement, LoadedState::Density(..)) => {
            return Err(pure_only("max-entanglement").into())
        }
        (CriterionKind::Auto | CriterionKind::KyFan, LoadedState::Density(rho, _)) => {
            put_verdict(&mut r, "", &devicente_check_with(rho, dims, tols)?)
        }
        (CriterionKind::KyFan, LoadedState::Pure(psi, _)) => {
            put_verdict(&mut r, "", &devicente_check_with(&projector(psi), dims, tols)?)
        }
    }
    Ok(r)
}

/// `steps` points from `from` to `to`, both included.
pub(crate) fn scan_grid(from: f64, to: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![from],
        _ => (0..steps)
            .map(|k| {
                if k + 1 == steps {
                    to
                } else {
                    from + (to - from) * k as f64 / (steps - 1) as f64
                }
            })
            .collect(),
    }
}

fn write_csv(path: &Path, table: &Table) -> Result<(), CliError> {
    std::fs::write(path, table.to_csv())
        .map_err(|e| CliError::validation(format!("cannot write {}: {e}", path.display())))
}

fn scan(g: &GlobalArgs, from: f64, to: f64, steps: usize, out: Option<&Path>) -> Result<Report, CliError> {
    if steps == 0 {
        return Err(CliError::usage("--steps must be at least 1"));
    }
    if !(0.0..=1.0).contains(&from) || !(0.0..=1.0).contains(&to) || from > to {
        return Err(CliError::usage(format!("need 0 <= from <= to <= 1, got from {from}, to {to}")));
    }
    if steps == 1 && from != to {
        return Err(CliError::usage("a single step needs --from equal to --to"));
    }
    let grid = scan_grid(from, to, steps);
    let dims = BipartiteDims::square(2)?;
    let tols = criterion_tolerances(g);
    let mut table = Table::new(&["x", "statistic", "bound", "verdict"]);
    let mut last_separable = None;
    let mut first_entangled = None;
    for &x in &grid {
        let row = devicente_check_with(&crate::states::werner(x)?, dims, tols)?;
        match row.verdict {
            crate::pullback::Verdict::Separable => last_separable = Some(x),
            _ if first_entangled.is_none() => first_entangled = Some(x),
            _ => {}
        }
        table.push(vec![
            Cell::Float(x),
            Cell::Float(row.statistic),
            Cell::Float(row.bound),
            Cell::Text(row.verdict.as_str().into()),
        ]);
    }
    let canonical = format!(
        "werner-scan\nfrom={}\nto={}\nsteps={steps}\n",
        super::fmt_float(from),
        super::fmt_float(to)
    );
    let mut r = Report::new("werner-scan", digest(&[canonical.as_bytes()]), tolerances(g));
    r.int("points", grid.len());
    match last_separable {
        Some(x) => r.float("last_separable_x", x),
        None => r.text("last_separable_x", "none"),
    }
    match first_entangled {
        Some(x) => r.float("first_entangled_x", x),
        None => r.text("first_entangled_x", "none"),
    }
    if let Some(p) = out {
        write_csv(p, &table)?;
    }
    r.put("table", Value::Table(table));
    Ok(r)
}

struct EvolveParams {
    t_max: f64,
    step: f64,
    mode: EvolveMode,
    samples: usize,
    hbar: f64,
}

fn evolve(
    g: &GlobalArgs,
    h_path: &Path,
    s_path: &Path,
    p: EvolveParams,
    out: Option<&Path>,
) -> Result<Report, CliError> {
    if p.t_max < 0.0 {
        return Err(CliError::usage(format!("--t-max must be nonnegative, got {}", p.t_max)));
    }
    if p.step <= 0.0 {
        return Err(CliError::usage(format!("--step must be positive, got {}", p.step)));
    }
    if p.hbar <= 0.0 {
        return Err(CliError::usage(format!("--hbar must be positive, got {}", p.hbar)));
    }
    if p.samples == 0 {
        return Err(CliError::usage("--samples must be at least 1"));
    }
    let h_bytes = read_bytes(h_path)?;
    let s_bytes = read_bytes(s_path)?;
    let h = load_operator(&h_bytes, h_path, g.herm_tol)?;
    let psi0 = match load_state(&s_bytes, s_path, density_tolerances(g))? {
        LoadedState::Pure(psi, _) => psi,
        LoadedState::Density(..) => {
            return Err(CliError::validation("evolve needs a pure initial state"));
        }
    };
    let spec = HamiltonianSpec::with_hbar(h, p.hbar)?;
    let times: Vec<f64> = if p.t_max == 0.0 {
        vec![0.0]
    } else {
        (0..=p.samples).map(|k| p.t_max * k as f64 / p.samples as f64).collect()
    };
    let n = psi0.dim();
    let qubit = n == 2;
    let exact = schrodinger_evolve(&spec, &psi0, &times)?;
    let flow = match p.mode {
        EvolveMode::Schrodinger => None,
        _ => Some(riccati_evolve(&spec, project_to_chart(&psi0)?, &times, p.step)?),
    };

    let mut header: Vec<String> = vec!["t".into()];
    if p.mode != EvolveMode::Riccati {
        for k in 0..n {
            header.push(format!("re{k}"));
            header.push(format!("im{k}"));
        }
        if qubit {
            header.extend(["bx", "by", "bz"].map(String::from));
        }
    }
    if flow.is_some() {
        header.extend(["chart", "value_re", "value_im", "riccati_bx", "riccati_by", "riccati_bz"].map(String::from));
    }
    if p.mode == EvolveMode::Both {
        header.push("deviation".into());
    }
    let mut table = Table {
        header,
        rows: Vec::new(),
    };
    let norm0 = psi0.norm();
    let e0 = psi0.expectation(spec.h())?;
    let mut norm_drift = 0.0f64;
    let mut energy_drift = 0.0f64;
    let mut max_dev = 0.0f64;
    let mut switches = 0usize;
    for (k, &t) in times.iter().enumerate() {
        let psi = &exact.points()[k];
        norm_drift = norm_drift.max((psi.norm() - norm0).abs());
        energy_drift = energy_drift.max((psi.expectation(spec.h())? - e0).abs());
        let mut row = vec![Cell::Float(t)];
        let exact_bloch = if qubit { Some(bloch_point(psi)?) } else { None };
        if p.mode != EvolveMode::Riccati {
            for z in psi.amplitudes() {
                row.push(Cell::Float(z.re));
                row.push(Cell::Float(z.im));
            }
            if let Some(b) = exact_bloch {
                row.extend(b.map(Cell::Float));
            }
        }
        if let Some(flow) = &flow {
            let pt = flow.points()[k];
            if k > 0 && flow.points()[k - 1].chart != pt.chart {
                switches += 1;
            }
            row.push(Cell::Text(pt.chart.as_str().into()));
            row.push(Cell::Float(pt.value.re));
            row.push(Cell::Float(pt.value.im));
            let b = pt.bloch();
            row.extend(b.map(Cell::Float));
            if p.mode == EvolveMode::Both {
                let d = chordal_distance(&exact_bloch.expect("qubit"), &b);
                max_dev = max_dev.max(d);
                row.push(Cell::Float(d));
            }
        }
        table.push(row);
    }
    let mut r = Report::new("evolve", digest(&[&h_bytes, &s_bytes]), tolerances(g));
    r.text(
        "mode",
        match p.mode {
            EvolveMode::Schrodinger => "schrodinger",
            EvolveMode::Riccati => "riccati",
            EvolveMode::Both => "both",
        },
    );
    r.int("dimension", n);
    r.float("t_max", p.t_max);
    r.float("step", p.step);
    r.float("hbar", p.hbar);
    r.int("rows", times.len());
    r.float("max_norm_drift", norm_drift);
    r.float("max_energy_drift", energy_drift);
    if flow.is_some() {
        r.int("chart_changes_between_rows", switches);
    }
    if p.mode == EvolveMode::Both {
        r.float("max_deviation", max_dev);
    }
    if let Some(path) = out {
        write_csv(path, &table)?;
    }
    r.put("table", Value::Table(table));
    Ok(r)
}

fn gns(g: &GlobalArgs, path: &Path) -> Result<Report, CliError> {
    let bytes = read_bytes(path)?;
    let state = load_state(&bytes, path, density_tolerances(g))?;
    let rho: DensityState<f64> = match state {
        LoadedState::Pure(psi, _) => projector(&psi),
        LoadedState::Density(rho, _) => rho,
    };
    let result = gns_construct_with_tol(&rho, g.gns_tol)?;
    let mut r = Report::new("gns", digest(&[&bytes]), tolerances(g));
    r.int("n", rho.dim());
    r.int("state_rank", rho.rank(g.psd_tol)?);
    r.int("hilbert_dim", result.hilbert_dim);
    r.int("ideal_dim", result.ideal_dim);
    r.int("orbit_dim", result.orbit_dim);
    let spec = &result.gram_spectrum;
    r.float("gram_min_eigenvalue", spec[0]);
    r.float("gram_max_eigenvalue", spec[spec.len() - 1]);
    match result.min_positive_eigenvalue {
        Some(x) => r.float("gram_min_positive_eigenvalue", x),
        None => r.text("gram_min_positive_eigenvalue", "none"),
    }
    r.put("gram_spectrum", Value::Floats(spec.clone()));
    let basis: Vec<String> = result.quotient_basis.iter().map(|(i, j)| format!("E({i},{j})")).collect();
    r.text("quotient_basis", basis.join(" "));
    Ok(r)
}
