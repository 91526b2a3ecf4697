//! Acceptance suite. Each test prints one PASS/FAIL line, written straight
//! to stdout so it shows up without `--nocapture`, and then asserts.

use std::io::Write;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use monogamy_core::measures::{
    concurrence_2q, concurrence_assist_2q, log2_1p, negativity, FOUR_LN_2,
};
use monogamy_core::monogamy::{
    check_lemma2_negativity, check_thm1_lcren_mixed, check_thm1_lcrenoa_poly, check_thm1_logneg,
    check_thm2, find_threshold_violation, InequalityReport, LemmaMode, Thm2Which, Verdict,
};
use monogamy_core::qlinalg::{DensityMatrix, Dims, PureState};
use monogamy_core::roof::{nonconvexity_witness, roof_estimate, RoofGoal, RoofOptions};
use monogamy_core::states::{
    from_real_amplitudes, sample_ginibre_mixed, sample_haar_pure, QuantumState, RandomStream,
};
use monogamy_lab::campaign::RunOverrides;
use monogamy_lab::scan::lemma1_scan;
use monogamy_lab::{run_campaign_with, CampaignConfig};

fn line(name: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "acceptance {name:<34} {verdict}  {detail}");
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e <= limit, format!("{:.2}s/{}s", e.as_secs_f64(), limit.as_secs()))
}

fn haar(dims: &[usize], count: usize, seed: u64) -> Vec<PureState> {
    let dims = Dims::new(dims.to_vec()).unwrap();
    (0..count as u64)
        .into_par_iter()
        .map(|i| sample_haar_pure(&dims, &RandomStream::new(seed, i)).unwrap())
        .collect()
}

#[derive(Default)]
struct Tally {
    total: usize,
    verified: usize,
    inconclusive: usize,
    violated: usize,
    min_residual: f64,
}

impl Tally {
    fn of(reports: &[InequalityReport]) -> Self {
        let count = |v| reports.iter().filter(|r| r.verdict == v).count();
        Tally {
            total: reports.len(),
            verified: count(Verdict::Verified),
            inconclusive: count(Verdict::Inconclusive),
            violated: count(Verdict::Violated),
            min_residual: reports.iter().map(|r| r.residual).fold(f64::INFINITY, f64::min),
        }
    }

    fn describe(&self) -> String {
        format!(
            "n={} verified={} inconclusive={} violated={} min_residual={:.3e}",
            self.total, self.verified, self.inconclusive, self.violated, self.min_residual
        )
    }
}

#[test]
fn lemma_grid_nonnegative() {
    let t = Instant::now();
    let mono = lemma1_scan(0.002, &[FOUR_LN_2, 3.0, 4.0], LemmaMode::Mono).unwrap();
    let poly = lemma1_scan(0.002, &[0.0, 0.5, 1.0, 1.5, 2.0], LemmaMode::Poly).unwrap();
    let worst = mono
        .minima
        .iter()
        .chain(&poly.minima)
        .map(|m| m.residual)
        .fold(f64::INFINITY, f64::min);
    let (fast, time) = within(t, Duration::from_secs(30));
    let pass = worst >= -1e-12 && fast;
    let points = mono.minima[0].points;
    line("lemma grid, 8 exponents", pass, format!("min_residual={worst:.3e} points/exponent={points} {time}"));
    assert!(pass);
}

#[test]
fn below_threshold_exponent_fails() {
    let t = Instant::now();
    let found = find_threshold_violation(2.0, 0.002).unwrap();
    let (fast, time) = within(t, Duration::from_secs(10));
    let residual = found.map_or(0.0, |m| m.residual);
    let pass = residual < -1e-3 && fast;
    let at = found.map_or(String::new(), |m| format!(" at ({:.3}, {:.3})", m.x, m.y));
    line("below-threshold falsification", pass, format!("min_residual={residual:.4e}{at} {time}"));
    assert!(pass);
}

#[test]
fn log_negativity_monogamy_multiqubit() {
    let t = Instant::now();
    let mut states = haar(&[2, 2, 2], 1000, 301);
    states.extend(haar(&[2, 2, 2, 2], 200, 302));
    let reports: Vec<InequalityReport> = states
        .par_iter()
        .flat_map_iter(|psi| [FOUR_LN_2, 3.0, 4.0].map(|a| check_thm1_logneg(psi, a).unwrap()))
        .collect();
    let tally = Tally::of(&reports);
    let (fast, time) = within(t, Duration::from_secs(120));
    let pass = tally.violated == 0 && tally.min_residual >= -1e-9 && fast;
    line("log-negativity monogamy, qubits", pass, format!("{} {time}", tally.describe()));
    assert!(pass);
}

#[test]
fn lcrenoa_polygamy_multiqubit() {
    let t = Instant::now();
    let mut states = haar(&[2, 2, 2], 1000, 301);
    states.extend(haar(&[2, 2, 2, 2], 200, 302));
    let reports: Vec<InequalityReport> = states
        .par_iter()
        .flat_map_iter(|psi| [0.5, 1.0, 2.0].map(|b| check_thm1_lcrenoa_poly(psi, b).unwrap()))
        .collect();
    let tally = Tally::of(&reports);
    let (fast, time) = within(t, Duration::from_secs(120));
    let pass = tally.violated == 0 && fast;
    line("LCRENoA polygamy, qubits", pass, format!("{} {time}", tally.describe()));
    assert!(pass);
}

#[test]
fn lcren_monogamy_mixed_qubits() {
    let t = Instant::now();
    let dims = Dims::qubits(3).unwrap();
    let reports: Vec<InequalityReport> = (0..200u64)
        .into_par_iter()
        .map(|i| {
            let stream = RandomStream::new(305, i);
            let rho = sample_ginibre_mixed(&dims, 2, &stream).unwrap();
            let opts = RoofOptions::default().with_rng(stream.fork(0));
            check_thm1_lcren_mixed(&rho, FOUR_LN_2, &opts).unwrap()
        })
        .collect();
    let tally = Tally::of(&reports);
    let (fast, time) = within(t, Duration::from_secs(600));
    let pass = tally.violated == 0 && fast;
    let frac = tally.inconclusive as f64 / tally.total as f64;
    line(
        "LCREN monogamy, mixed qubits",
        pass,
        format!("{} inconclusive_fraction={frac:.3} {time}", tally.describe()),
    );
    assert!(pass);
}

#[test]
fn tripartite_monogamy() {
    let t = Instant::now();
    let mut states = haar(&[2, 2, 3], 300, 306);
    states.extend(haar(&[2, 2, 4], 300, 307));
    let per_state: Vec<(InequalityReport, InequalityReport, InequalityReport)> = states
        .par_iter()
        .enumerate()
        .map(|(i, phi)| {
            let state = QuantumState::Pure(phi.clone());
            let opts = RoofOptions::default().with_rng(RandomStream::new(308, i as u64));
            (
                check_thm2(&state, Thm2Which::LogNegativity, FOUR_LN_2, &opts).unwrap(),
                check_thm2(&state, Thm2Which::Lcren, FOUR_LN_2, &opts).unwrap(),
                check_lemma2_negativity(phi).unwrap(),
            )
        })
        .collect();
    let (a, rest): (Vec<_>, Vec<_>) = per_state.into_iter().map(|(a, b, c)| (a, (b, c))).unzip();
    let (b, c): (Vec<_>, Vec<_>) = rest.into_iter().unzip();
    let (ta, tb, tc) = (Tally::of(&a), Tally::of(&b), Tally::of(&c));
    let (fast, time) = within(t, Duration::from_secs(600));
    let pass = ta.violated == 0 && tb.violated == 0 && tc.min_residual >= -1e-9 && fast;
    line(
        "tripartite log-neg and LCREN",
        pass,
        format!(
            "logneg[{}] lcren[{}] squared-negativity min_residual={:.3e} {time}",
            ta.describe(),
            tb.describe(),
            tc.min_residual
        ),
    );
    assert!(pass);
}

fn two_qubit_suite(count: u64, seed: u64) -> Vec<DensityMatrix> {
    let dims = Dims::qubits(2).unwrap();
    (0..count)
        .into_par_iter()
        .map(|i| sample_ginibre_mixed(&dims, 1 + (i % 4) as usize, &RandomStream::new(seed, i)).unwrap())
        .collect()
}

#[test]
fn optimizer_matches_two_qubit_closed_forms() {
    let t = Instant::now();
    let states = two_qubit_suite(100, 309);
    let gaps: Vec<(f64, f64)> = states
        .par_iter()
        .enumerate()
        .map(|(i, rho)| {
            let opts = RoofOptions::default().with_rng(RandomStream::new(310, i as u64));
            let lo = roof_estimate(rho, &[0], &opts, RoofGoal::Minimize).unwrap().value;
            let hi = roof_estimate(rho, &[0], &opts, RoofGoal::Maximize).unwrap().value;
            (lo - concurrence_2q(rho).unwrap(), concurrence_assist_2q(rho).unwrap() - hi)
        })
        .collect();
    let ok = |g: f64| (-1e-9..=5e-3).contains(&g);
    let worst_lo = gaps.iter().map(|g| g.0).fold(f64::NEG_INFINITY, f64::max);
    let worst_hi = gaps.iter().map(|g| g.1).fold(f64::NEG_INFINITY, f64::max);
    let all_ok = gaps.iter().all(|&(a, b)| ok(a) && ok(b));
    let (fast, time) = within(t, Duration::from_secs(300));
    let pass = all_ok && fast;
    line(
        "optimizer vs closed forms",
        pass,
        format!("max CREN excess={worst_lo:.3e} max CRENoA shortfall={worst_hi:.3e} {time}"),
    );
    assert!(pass);
}

#[test]
fn two_qubit_ordering_chain() {
    let mut states = two_qubit_suite(1000, 311);
    let dims = Dims::qubits(2).unwrap();
    states.extend((0..200).map(|i| sample_haar_pure(&dims, &RandomStream::new(312, i)).unwrap().projector()));
    let singlet = from_real_amplitudes(&[0.0, 1.0, -1.0, 0.0], &[2, 2]).unwrap().projector();
    states.extend((0..=20).map(|k| singlet.with_white_noise(k as f64 / 20.0).unwrap()));
    let worst = states
        .par_iter()
        .map(|rho| {
            let n = negativity(rho, &[0]).unwrap();
            let c = concurrence_2q(rho).unwrap();
            let ca = concurrence_assist_2q(rho).unwrap();
            [c - n, ca - c, log2_1p(c) - log2_1p(n), log2_1p(ca) - log2_1p(c)]
                .into_iter()
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let pass = worst >= -1e-9;
    line("two-qubit ordering chain", pass, format!("n={} min_gap={worst:.3e}", states.len()));
    assert!(pass);
}

#[test]
fn lcren_nonconvexity_witness() {
    let t = Instant::now();
    let cert = nonconvexity_witness(&RandomStream::new(2024, 0)).unwrap();
    let (fast, time) = within(t, Duration::from_secs(1));
    let pass = cert.is_valid() && cert.margin > 1e-6 && fast;
    line(
        "LCREN non-convexity witness",
        pass,
        format!("margin={:.4e} attempts={} {time}", cert.margin, cert.attempts),
    );
    assert!(pass);
}

#[test]
fn bell_pair_saturates_tripartite_bound() {
    let mut amps = vec![0.0; 12];
    // Bell on AB, |0⟩ on the qutrit C.
    amps[0] = 1.0;
    amps[9] = 1.0;
    let phi = from_real_amplitudes(&amps, &[2, 2, 3]).unwrap();
    let r = check_thm2(&QuantumState::Pure(phi), Thm2Which::LogNegativity, FOUR_LN_2, &RoofOptions::default())
        .unwrap();
    let pass = r.residual.abs() <= 1e-9;
    line("Bell x |0> saturation", pass, format!("residual={:.3e}", r.residual));
    assert!(pass);
}

#[test]
fn campaign_reruns_are_byte_identical() {
    let cfg = CampaignConfig::from_json_str(
        r#"{
          "seed": 99,
          "format": "csv",
          "roof_options": {"restarts": 4},
          "suites": [
            {"inequality_id": "thm1_logneg", "exponents": ["4ln2", 3],
             "state": {"family": "haar_pure", "dims": [2, 2, 2, 2]}, "sample_count": 30},
            {"inequality_id": "thm1_lcren_mixed", "exponents": ["4ln2"],
             "state": {"family": "ginibre_mixed", "dims": [2, 2, 2], "params": {"rank": 2}}, "sample_count": 10},
            {"inequality_id": "thm2_lcren", "exponents": ["4ln2"],
             "state": {"family": "haar_pure", "dims": [2, 2, 3]}, "sample_count": 10}
          ]
        }"#,
    )
    .unwrap();
    let tmp = tempfile::tempdir().unwrap();
    let run = |name: &str, jobs: usize| {
        let dir = tmp.path().join(name);
        let overrides = RunOverrides {
            jobs: Some(jobs),
            output_dir: Some(dir.clone()),
            ..RunOverrides::default()
        };
        run_campaign_with(&cfg, &overrides).unwrap();
        std::fs::read(dir.join("reports.csv")).unwrap()
    };
    let a = run("a", 1);
    let b = run("b", 4);
    let pass = a == b && !a.is_empty();
    line("campaign determinism", pass, format!("bytes={} identical={}", a.len(), a == b));
    assert!(pass);
}
