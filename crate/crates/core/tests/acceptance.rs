//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails.
//!
//! Set `GEOQM_BLESS=1` to rewrite the golden files under `tests/golden`.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use geoqm::dynamics::{
    consistency_check, cross_ratio_of, project_to_chart, riccati_evolve, Chart, HamiltonianSpec, RiccatiChart,
};
use geoqm::geometry::{ray_cstar_product, ray_poisson, ray_symmetric, star_product, OperatorPair};
use geoqm::gns::gns_construct;
use geoqm::numkernel::{ky_fan_norm, pauli, ComplexMatrix, HermitianOperator, Subsystem};
use geoqm::pullback::{
    block_decompose, devicente_check, distance_to_separable, local_product_rep, max_entanglement_pure,
    mixed_tensor, pure_pullback, separability_pure, Verdict, DISTANCE_RATIO,
};
use geoqm::random;
use geoqm::states::{
    amplitude_matrix, bell_phi_plus, projector, reduced, werner, BipartiteDims, DensityState, PureState,
};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

struct Criterion {
    id: usize,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_state(r: &mut ChaCha8Rng, n: usize) -> PureState<f64> {
    PureState::new(random::gaussian_vector(r, n)).unwrap()
}

fn werner_expected(x: f64) -> [[f64; 6]; 6] {
    let mut m = [[0.0; 6]; 6];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for (k, s) in [1.0, -1.0, 1.0].into_iter().enumerate() {
        m[k][k + 3] = s * x;
        m[k + 3][k] = s * x;
    }
    m
}

fn ac1_werner_matrix() -> Outcome {
    let rep = local_product_rep::<f64>(2).map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for x in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let t = mixed_tensor(&werner(x).unwrap(), &rep).unwrap();
        let expected = werner_expected(x);
        for (i, row) in expected.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                worst = worst.max((t.sym.get(i, j) - e).abs());
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max entry error {worst:e}"))?;
    Ok(format!("max entry error {worst:.1e}"))
}

fn ac2_ky_fan() -> Outcome {
    let rep = local_product_rep::<f64>(2).unwrap();
    let dims = BipartiteDims::square(2).unwrap();
    let mut worst = 0.0f64;
    for k in 0..=100 {
        let x = k as f64 / 100.0;
        let rho = werner(x).unwrap();
        let ab = block_decompose(&mixed_tensor(&rho, &rep).unwrap()).unwrap().ab;
        worst = worst.max((ky_fan_norm(&ab.to_complex()) - 3.0 * x).abs());
        let verdict = devicente_check(&rho, dims).unwrap().verdict;
        let expected = if x <= 1.0 / 3.0 { Verdict::Separable } else { Verdict::Entangled };
        ensure(verdict == expected, || format!("x = {x}: {verdict}"))?;
    }
    ensure(worst <= 1e-12, || format!("Ky Fan error {worst:e}"))?;
    let at = |x: f64| devicente_check(&werner(x).unwrap(), dims).unwrap().verdict;
    ensure(at(1.0 / 3.0) == Verdict::Separable, || "x = 1/3 not separable".into())?;
    ensure(at(1.0 / 3.0 + 1e-9) == Verdict::Entangled, || "x = 1/3 + 1e-9 not entangled".into())?;
    Ok(format!("Ky Fan error {worst:.1e}, flip at 1/3"))
}

/// Largest 2x2 minor of the amplitude matrix, zero iff the state is a product.
fn max_minor(m: &ComplexMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..m.rows() {
        for k in i + 1..m.rows() {
            for j in 0..m.cols() {
                for l in j + 1..m.cols() {
                    worst = worst.max((m[(i, j)] * m[(k, l)] - m[(i, l)] * m[(k, j)]).norm());
                }
            }
        }
    }
    worst
}

fn ac3_separability() -> Outcome {
    let mut r = rng(3);
    let mut checked = 0;
    for (n, count) in [(2usize, 200usize), (3, 100)] {
        let dims = BipartiteDims::square(n).unwrap();
        for k in 0..count {
            let psi = if k % 2 == 0 {
                random_state(&mut r, n).tensor(&random_state(&mut r, n))
            } else {
                random_state(&mut r, n * n)
            }
            .normalized();
            let oracle_product = max_minor(&amplitude_matrix(&psi, dims).unwrap()) < 1e-9;
            let report = separability_pure(&psi, dims).unwrap();
            let verdict_product = report.verdict == Verdict::Separable;
            ensure(verdict_product == oracle_product, || format!("N = {n}, case {k}: {}", report.verdict))?;
            ensure(report.schmidt_agrees == Some(true), || format!("N = {n}, case {k}: Schmidt disagrees"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked}/{checked} agree"))
}

fn local_unitary(r: &mut ChaCha8Rng) -> ComplexMatrix<f64> {
    random::haar_unitary::<f64, _>(r, 2).kron(&ComplexMatrix::identity(2))
}

fn ac4_max_entanglement() -> Outcome {
    let mut r = rng(4);
    let rep = local_product_rep::<f64>(2).unwrap();
    let dims = BipartiteDims::square(2).unwrap();
    let phi = bell_phi_plus::<f64>();
    let mut worst_max = pure_pullback(&phi, &rep).unwrap().antisym.frobenius_norm();
    for _ in 0..20 {
        let psi = phi.evolved_by(&local_unitary(&mut r)).unwrap();
        worst_max = worst_max.max(pure_pullback(&psi, &rep).unwrap().antisym.frobenius_norm());
        let v = max_entanglement_pure(&psi, dims).unwrap().verdict;
        ensure(v == Verdict::MaximallyEntangled, || format!("rotated Bell state: {v}"))?;
    }
    ensure(worst_max <= 1e-10, || format!("maximal states: ‖antisym‖ = {worst_max:e}"))?;
    let mut least = f64::INFINITY;
    for _ in 0..20 {
        let theta = r.random_range(0.1..0.6);
        let schmidt_form = PureState::from_real(&[f64::cos(theta), 0.0, 0.0, f64::sin(theta)]).unwrap();
        let u = random::haar_unitary::<f64, _>(&mut r, 2).kron(&random::haar_unitary(&mut r, 2));
        let psi = schmidt_form.evolved_by(&u).unwrap();
        least = least.min(pure_pullback(&psi, &rep).unwrap().antisym.frobenius_norm());
        let v = max_entanglement_pure(&psi, dims).unwrap().verdict;
        ensure(v == Verdict::NotMaximallyEntangled, || format!("non-maximal state: {v}"))?;
    }
    ensure(least > 1e-3, || format!("non-maximal states: min ‖antisym‖ = {least:e}"))?;
    Ok(format!("maximal ≤ {worst_max:.1e}, non-maximal ≥ {least:.1e}"))
}

/// `Σ_{j,k≥1} |Tr(R σ_j⊗σ_k)|² / Tr(R†R)` with `Tr(R†R)` from the full product
/// Pauli expansion `R = ¼ Σ_{j,k} Tr(R σ_j⊗σ_k) σ_j⊗σ_k`.
fn pauli_expansion_ratio(psi: &PureState<f64>) -> f64 {
    let dims = BipartiteDims::square(2).unwrap();
    let rho = projector(psi);
    let ra = reduced(&rho, dims, Subsystem::A).unwrap();
    let rb = reduced(&rho, dims, Subsystem::B).unwrap();
    let r = rho.matrix() - &ra.matrix().kron(rb.matrix());
    let mut full = 0.0;
    let mut correlations = 0.0;
    for j in 0..4 {
        for k in 0..4 {
            let coeff = r.trace_of_product(&pauli::<f64>(j).kron(&pauli(k))).unwrap().norm_sqr();
            full += coeff / 4.0;
            if j > 0 && k > 0 {
                correlations += coeff;
            }
        }
    }
    correlations / full
}

fn ac5_distance() -> Outcome {
    let mut r = rng(5);
    let dims = BipartiteDims::square(2).unwrap();
    let mut ratios = Vec::new();
    let mut oracle_gap = 0.0f64;
    while ratios.len() < 100 {
        let psi = random_state(&mut r, 4);
        let d = distance_to_separable(&psi, dims).unwrap();
        let Some(ratio) = d.ratio else { continue };
        oracle_gap = oracle_gap.max((ratio - pauli_expansion_ratio(&psi)).abs() / ratio);
        ratios.push(ratio);
    }
    let lo = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let spread = (hi - lo) / lo;
    ensure(spread < 1e-8, || format!("relative spread {spread:e}"))?;
    ensure(oracle_gap < 1e-8, || format!("oracle mismatch {oracle_gap:e}"))?;
    ensure((lo - DISTANCE_RATIO).abs() < 1e-8, || format!("constant {lo} differs from {DISTANCE_RATIO}"))?;
    Ok(format!("ratio {lo:.12}, spread {spread:.1e}"))
}

fn expectation(m: &ComplexMatrix<f64>, psi: &PureState<f64>) -> Complex64 {
    let v = psi.amplitudes();
    let mv = m.apply(v).unwrap();
    let num: Complex64 = v.iter().zip(&mv).map(|(a, b)| a.conj() * b).sum();
    num / psi.norm_sqr()
}

fn ac6_brackets() -> Outcome {
    let mut r = rng(6);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let n = 2 + k % 4;
        let a = random::hermitian::<f64, _>(&mut r, n);
        let b = random::hermitian::<f64, _>(&mut r, n);
        let psi = PureState::new(random::gaussian_vector(&mut r, n)).unwrap();
        let (am, bm) = (a.matrix(), b.matrix());
        let ab = am * bm;
        let ba = bm * am;
        let i_comm = (&ab - &ba).scale(c(0.0, 1.0));
        let anti = (&ab + &ba).scale_real(0.5);
        let poisson_oracle = expectation(&i_comm, &psi).re;
        let sym_oracle = expectation(&anti, &psi).re - expectation(am, &psi).re * expectation(bm, &psi).re;
        worst = worst.max((ray_poisson(&a, &b, &psi).unwrap() - poisson_oracle).abs());
        worst = worst.max((ray_symmetric(&a, &b, &psi).unwrap() - sym_oracle).abs());
        let one = HermitianOperator::identity(n);
        worst = worst.max(ray_poisson(&a, &one, &psi).unwrap().abs());
        worst = worst.max(ray_symmetric(&a, &one, &psi).unwrap().abs());
    }
    ensure(worst <= 1e-10, || format!("max error {worst:e}"))?;
    Ok(format!("max error {worst:.1e}"))
}

fn ac7_ray_invariance() -> Outcome {
    let mut r = rng(7);
    let rep = local_product_rep::<f64>(2).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..10 {
        let n = 4;
        let a = random::hermitian::<f64, _>(&mut r, n);
        let b = random::hermitian::<f64, _>(&mut r, n);
        let psi = random_state(&mut r, n);
        let base = (
            psi.expectation(&a).unwrap(),
            ray_poisson(&a, &b, &psi).unwrap(),
            ray_symmetric(&a, &b, &psi).unwrap(),
            ray_cstar_product(&a, &b, &psi).unwrap(),
            pure_pullback(&psi, &rep).unwrap(),
        );
        for _ in 0..20 {
            let lambda = random::nonzero_scalar::<f64, _>(&mut r);
            let phi = psi.scaled(lambda).unwrap();
            worst = worst.max((phi.expectation(&a).unwrap() - base.0).abs());
            worst = worst.max((ray_poisson(&a, &b, &phi).unwrap() - base.1).abs());
            worst = worst.max((ray_symmetric(&a, &b, &phi).unwrap() - base.2).abs());
            worst = worst.max((ray_cstar_product(&a, &b, &phi).unwrap() - base.3).norm());
            let t = pure_pullback(&phi, &rep).unwrap();
            worst = worst.max(t.sym.max_abs_diff(&base.4.sym));
            worst = worst.max(t.antisym.max_abs_diff(&base.4.antisym));
        }
    }
    ensure(worst <= 1e-10, || format!("max change {worst:e}"))?;
    Ok(format!("max change {worst:.1e}"))
}

fn random_pair(r: &mut ChaCha8Rng, n: usize) -> OperatorPair<f64> {
    OperatorPair::from_matrix(&random::gaussian_matrix(r, n, n)).unwrap()
}

fn ac8_star_product() -> Outcome {
    let mut r = rng(8);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let n = 2 + k % 4;
        let (f, g, h) = (random_pair(&mut r, n), random_pair(&mut r, n), random_pair(&mut r, n));
        let left = star_product(&star_product(&f, &g).unwrap(), &h).unwrap().to_matrix();
        let right = star_product(&f, &star_product(&g, &h).unwrap()).unwrap().to_matrix();
        worst = worst.max(left.max_abs_diff(&right) / (1.0 + left.max_abs()));
        let conj_of_product = star_product(&f, &g).unwrap().conj().to_matrix();
        let product_of_conj = star_product(&g.conj(), &f.conj()).unwrap().to_matrix();
        worst = worst.max(conj_of_product.max_abs_diff(&product_of_conj) / (1.0 + conj_of_product.max_abs()));
    }
    ensure(worst <= 1e-12, || format!("max relative error {worst:e}"))?;
    Ok(format!("max relative error {worst:.1e}"))
}

fn grid(t_max: f64, n: usize) -> Vec<f64> {
    (0..=n).map(|k| t_max * k as f64 / n as f64).collect()
}

fn ac9_dynamics() -> Outcome {
    let mut r = rng(9);
    let times = grid(10.0, 200);
    let mut worst = 0.0f64;
    let mut crossing = 0;
    for _ in 0..20 {
        let spec = HamiltonianSpec::new(random::hermitian::<f64, _>(&mut r, 2));
        let psi0 = random_state(&mut r, 2);
        worst = worst.max(consistency_check(&spec, &psi0, &times, 1e-3).unwrap());
        let flow = riccati_evolve(&spec, project_to_chart(&psi0).unwrap(), &times, 1e-3).unwrap();
        if flow.points().iter().any(|p| p.chart != flow.points()[0].chart) {
            crossing += 1;
        }
    }
    ensure(worst <= 1e-6, || format!("chordal deviation {worst:e}"))?;
    ensure(crossing > 0, || "no trajectory crossed a chart boundary".into())?;

    // step halving on a segment that stays in chart xi
    let h = HermitianOperator::new(ComplexMatrix::from_rows(&[
        vec![c(0.7, 0.0), c(0.3, -0.2)],
        vec![c(0.3, 0.2), c(-0.4, 0.0)],
    ]))
    .unwrap();
    let spec = HamiltonianSpec::new(h);
    let psi0 = RiccatiChart::xi(c(0.3, 0.1)).unwrap().to_state();
    let segment = grid(2.0, 4);
    let flow = riccati_evolve(&spec, project_to_chart(&psi0).unwrap(), &segment, 0.1).unwrap();
    ensure(flow.points().iter().all(|p| p.chart == Chart::Xi), || "halving segment switched charts".into())?;
    let coarse = consistency_check(&spec, &psi0, &segment, 0.1).unwrap();
    let fine = consistency_check(&spec, &psi0, &segment, 0.05).unwrap();
    let ratio = coarse / fine;
    ensure((8.0..=32.0).contains(&ratio), || format!("halving ratio {ratio}"))?;

    // cross-ratio of four solutions
    let spec = HamiltonianSpec::new(random::hermitian::<f64, _>(&mut r, 2));
    let starts = [c(0.2, 0.1), c(-0.5, 0.4), c(1.5, -0.3), c(0.1, -0.9)].map(|z| RiccatiChart::xi(z).unwrap());
    let flows: Vec<_> = starts.iter().map(|&s| riccati_evolve(&spec, s, &times, 1e-3).unwrap()).collect();
    let initial = cross_ratio_of(&starts);
    let mut cr_drift = 0.0f64;
    for k in 0..times.len() {
        let pts = [0, 1, 2, 3].map(|i| flows[i].points()[k]);
        cr_drift = cr_drift.max((cross_ratio_of(&pts) - initial).norm());
    }
    ensure(cr_drift <= 1e-6, || format!("cross-ratio drift {cr_drift:e}"))?;
    Ok(format!(
        "deviation {worst:.1e} ({crossing}/20 cross), halving ratio {ratio:.2}, cross-ratio drift {cr_drift:.1e}"
    ))
}

fn ac10_gns() -> Outcome {
    let mut r = rng(10);
    let mut cases = 0;
    for n in 1..=4 {
        for rank in 1..=n {
            for _ in 0..3 {
                let rho = DensityState::new(random::density_matrix::<f64, _>(&mut r, n, rank)).unwrap();
                let oracle_rank = rho.rank(1e-9).unwrap();
                let g = gns_construct(&rho).unwrap();
                ensure(g.hilbert_dim == n * oracle_rank, || {
                    format!("N = {n}, rank {oracle_rank}: hilbert_dim {}", g.hilbert_dim)
                })?;
                ensure(g.ideal_dim + g.hilbert_dim == n * n, || "dimensions do not add up".into())?;
                ensure(g.gram_spectrum[0] >= -1e-10, || format!("gram eigenvalue {}", g.gram_spectrum[0]))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} states"))
}

fn manifest() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cli_stdout(args: &[&str]) -> Result<String, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["geoqm"];
    full.extend_from_slice(args);
    let code = geoqm::cli::run(full, &mut out, &mut err);
    if code != 0 {
        return Err(format!("{args:?} exited {code}: {}", String::from_utf8_lossy(&err)));
    }
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn check_golden(name: &str, actual: &str) -> Result<(), String> {
    let path = manifest().join("tests/golden").join(name);
    if std::env::var_os("GEOQM_BLESS").is_some() {
        std::fs::write(&path, actual).map_err(|e| e.to_string())?;
    }
    let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    ensure(expected == actual, || format!("{name} differs from golden"))
}

fn parse_csv(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>), String> {
    ensure(!text.contains('\r'), || "CR in CSV".into())?;
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty CSV")?.split(',').map(String::from).collect::<Vec<_>>();
    let rows = lines.map(|l| l.split(',').map(String::from).collect::<Vec<_>>()).collect::<Vec<_>>();
    ensure(rows.iter().all(|r| r.len() == header.len()), || "ragged CSV".into())?;
    Ok((header, rows))
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
}

fn ac11_cli_determinism() -> Outcome {
    let data = manifest().join("tests/data");
    let werner_file = data.join("werner_0.5.json");
    let werner_file = werner_file.to_str().unwrap();

    let scan = cli_stdout(&["werner-scan", "--from", "0", "--to", "1", "--steps", "11", "--format", "csv"])?;
    let again = cli_stdout(&["werner-scan", "--from", "0", "--to", "1", "--steps", "11", "--format", "csv"])?;
    ensure(scan == again, || "werner-scan output not reproducible".into())?;
    check_golden("werner_scan.csv", &scan)?;
    let (header, rows) = parse_csv(&scan)?;
    ensure(header == ["x", "statistic", "bound", "verdict"], || format!("header {header:?}"))?;
    for (k, row) in rows.iter().enumerate() {
        let x: f64 = row[0].parse().map_err(|e| format!("{e}"))?;
        let stat: f64 = row[1].parse().map_err(|e| format!("{e}"))?;
        ensure(rel_close(x, k as f64 / 10.0, 1e-14), || format!("row {k}: x = {x}"))?;
        ensure((stat - 3.0 * x).abs() <= 1e-14 * (1.0 + 3.0 * x), || format!("row {k}: statistic {stat}"))?;
        let expected = if k <= 3 { "separable" } else { "entangled" };
        ensure(row[3] == expected, || format!("row {k}: verdict {}", row[3]))?;
    }

    let report = cli_stdout(&["tensors", werner_file])?;
    ensure(report == cli_stdout(&["tensors", werner_file])?, || "tensors report not reproducible".into())?;
    check_golden("werner_matrix_report.txt", &report)?;
    let csv_report = cli_stdout(&["tensors", werner_file, "--format", "csv"])?;
    let (_, kv) = parse_csv(&csv_report)?;
    let expected = werner_expected(0.5);
    let mut matrix_entries = 0;
    for row in &kv {
        if let Some(idx) = row[0].strip_prefix("sym[") {
            let (i, rest) = idx.split_once("][").ok_or("bad key")?;
            let j = rest.trim_end_matches(']');
            let (i, j): (usize, usize) = (i.parse().unwrap(), j.parse().unwrap());
            let v: f64 = row[1].parse().map_err(|e| format!("{e}"))?;
            ensure((v - expected[i][j]).abs() <= 1e-14, || format!("sym[{i}][{j}] = {v}"))?;
            matrix_entries += 1;
        }
    }
    ensure(matrix_entries == 36, || format!("{matrix_entries} sym entries"))?;

    // evolve CSV round trip against the library values
    let h_file = data.join("sigma_z.json");
    let s_file = data.join("qubit_generic.json");
    let evolve = cli_stdout(&[
        "evolve",
        h_file.to_str().unwrap(),
        s_file.to_str().unwrap(),
        "--t-max",
        "2",
        "--samples",
        "8",
        "--format",
        "csv",
    ])?;
    let (header, rows) = parse_csv(&evolve)?;
    let spec = HamiltonianSpec::new(HermitianOperator::new(pauli(3)).unwrap());
    let psi0 = PureState::new(vec![c(0.6, 0.0), c(0.0, 0.8)]).unwrap();
    let times = grid(2.0, 8);
    let exact = geoqm::dynamics::schrodinger_evolve(&spec, &psi0, &times).unwrap();
    let col = |name: &str| header.iter().position(|h| h == name).ok_or(format!("missing column {name}"));
    let (c_re0, c_im1) = (col("re0")?, col("im1")?);
    for (k, row) in rows.iter().enumerate() {
        let z = exact.points()[k].amplitudes();
        let re0: f64 = row[c_re0].parse().map_err(|e| format!("{e}"))?;
        let im1: f64 = row[c_im1].parse().map_err(|e| format!("{e}"))?;
        ensure(rel_close(re0, z[0].re, 1e-14) || (re0 - z[0].re).abs() < 1e-16, || format!("row {k}: re0"))?;
        ensure(rel_close(im1, z[1].im, 1e-14) || (im1 - z[1].im).abs() < 1e-16, || format!("row {k}: im1"))?;
    }
    Ok(format!("goldens match, {} CSV rows round-trip", 11 + 36 + rows.len()))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "Werner coefficient matrix", budget: Duration::from_secs(1), run: ac1_werner_matrix },
        Criterion { id: 2, name: "Ky Fan statistic and threshold", budget: Duration::from_secs(1), run: ac2_ky_fan },
        Criterion { id: 3, name: "separability iff block vanishing", budget: Duration::from_secs(10), run: ac3_separability },
        Criterion { id: 4, name: "maximal entanglement iff antisym = 0", budget: Duration::from_secs(5), run: ac4_max_entanglement },
        Criterion { id: 5, name: "distance proportionality", budget: Duration::from_secs(5), run: ac5_distance },
        Criterion { id: 6, name: "bracket identities", budget: Duration::from_secs(5), run: ac6_brackets },
        Criterion { id: 7, name: "ray invariance", budget: Duration::from_secs(5), run: ac7_ray_invariance },
        Criterion { id: 8, name: "star product algebra", budget: Duration::from_secs(2), run: ac8_star_product },
        Criterion { id: 9, name: "dynamics consistency", budget: Duration::from_secs(30), run: ac9_dynamics },
        Criterion { id: 10, name: "GNS dimensions", budget: Duration::from_secs(2), run: ac10_gns },
        Criterion { id: 11, name: "CLI determinism", budget: Duration::from_secs(5), run: ac11_cli_determinism },
    ];
    let mut failures = 0;
    for cr in &criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(cr.run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= cr.budget {
                Ok(detail)
            } else {
                Err(format!("{detail}; took {elapsed:?}, budget {:?}", cr.budget))
            }
        });
        match outcome {
            Ok(detail) => println!("PASS AC-{:02} {} ({:.3}s): {detail}", cr.id, cr.name, elapsed.as_secs_f64()),
            Err(detail) => {
                failures += 1;
                println!("FAIL AC-{:02} {} ({:.3}s): {detail}", cr.id, cr.name, elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
