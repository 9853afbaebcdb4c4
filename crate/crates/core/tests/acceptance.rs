//! Acceptance suite: one line per criterion, non-zero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use common::{max_diff, random_alpha, random_bt, random_hamiltonian, rng};
use squeezelab::bogoliubov::invert_bt;
use squeezelab::linalg::max_abs;
use squeezelab::oracle::{
    apply_generator_exp, build_hamiltonian, ground_state, numeric_moments, operator_state, QuadraticForm, StateVector,
    TruncatedFockSpace,
};
use squeezelab::reference::{self, align_diagonal_phase, reference_hamiltonian};
use squeezelab::squeezeop::{compose_so, is_standard_two_mode, one_mode_reduce};
use squeezelab::states::{covariance, fock_amplitudes, mean_photon, photon_variance, wavefn_coherent};
use squeezelab::{
    bloch_messiah, cx, diagonalize, disentangle, mixed_boson_frame, BtMatrix, CMat, CVec, Cx, DiagonalizationResult,
    StateDescriptor, StateKind,
};

const GOLDEN: f64 = 1e-10;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict { passed, detail: detail.into() }
}

fn closed_form(s: &StateDescriptor<f64>, cutoff: usize) -> StateVector<f64> {
    StateVector::new(CVec::<f64>::from_vec(fock_amplitudes(s, cutoff).unwrap()))
}

fn frequencies() -> Verdict {
    let d = diagonalize(&reference_hamiltonian()).unwrap();
    let err = max_diff(&d.omega, &reference::omega());
    verdict(err <= GOLDEN, format!("omega {:?}, error {err:.1e}", d.omega))
}

fn normal_ordered_operator() -> Verdict {
    let bt = align_diagonal_phase(&diagonalize(&reference_hamiltonian()).unwrap().bt).unwrap();
    let so = disentangle(&bt).unwrap();
    let rho = max_abs(&(&so.rho - reference::rho()));
    let tau = max_abs(&(&so.tau - reference::tau()));
    let norm = (so.norm_magnitude - reference::norm_magnitude()).abs();
    let worst = rho.max(tau).max(norm);
    verdict(worst <= GOLDEN, format!("rho {rho:.1e}, tau {tau:.1e}, norm {norm:.1e}"))
}

fn decomposition() -> Verdict {
    let f = bloch_messiah(&diagonalize(&reference_hamiltonian()).unwrap().bt);
    let cosh = max_diff(&f.cosh_r(), &reference::cosh_r());
    let r = max_diff(&f.r_vals, &reference::r_vals());
    verdict(cosh.max(r) <= GOLDEN, format!("r {:?}, cosh error {cosh:.1e}, r error {r:.1e}", f.r_vals))
}

fn oracle_ground_state() -> Verdict {
    let start = Instant::now();
    let h = reference_hamiltonian();
    let space = TruncatedFockSpace::new(2, 30).unwrap();
    let (ground, energy) = ground_state(&build_hamiltonian(&h, &space).unwrap());
    let svs = closed_form(&StateDescriptor::svs(diagonalize(&h).unwrap().bt), 30);
    let overlap = svs.overlap(&ground);
    let elapsed = start.elapsed().as_secs_f64();
    let energy_err = (energy - 42.0).abs();
    verdict(
        energy_err <= 1e-6 && overlap >= 0.9999 && elapsed <= 30.0,
        format!("energy {energy:.9} (error {energy_err:.2e}, tol 1e-6), overlap {overlap:.9}, {elapsed:.1} s"),
    )
}

fn moment_equivalence() -> Verdict {
    let s = StateDescriptor::svs(diagonalize(&reference_hamiltonian()).unwrap().bt);
    let space = TruncatedFockSpace::new(2, 70).unwrap();
    let numeric = numeric_moments(&operator_state(&s, &space).unwrap(), &space);
    let mean = mean_photon(&s);
    let golden = max_diff(&mean, &[14.0 / 15.0, 0.4]);
    let dm = max_diff(&numeric.mean_n, &mean);
    let dv = max_diff(&numeric.var_n, &photon_variance(&s));
    let dc = numeric.cov.max_abs_diff(&covariance(&s));
    verdict(
        golden <= GOLDEN && dm.max(dv).max(dc) <= 1e-6,
        format!("mean {mean:?}, oracle differences: mean {dm:.1e}, variance {dv:.1e}, covariance {dc:.1e}"),
    )
}

fn symplectic_identities() -> Verdict {
    let mut g = rng(6);
    let (mut sym, mut rec, mut trace) = (0.0f64, 0.0f64, f64::NEG_INFINITY);
    for k in 0..200 {
        let h = random_hamiltonian(&mut g, 1 + k % 3);
        let d = diagonalize(&h).unwrap();
        sym = sym.max(d.bt.check_symplectic().max());
        rec = rec.max(d.reconstruction_residual(&h));
        let tr_xi: f64 = (0..h.n_modes).map(|i| h.xi[(i, i)].re).sum();
        trace = trace.max(d.omega.iter().sum::<f64>() - tr_xi);
    }
    verdict(
        sym <= 1e-10 && rec <= 1e-9 && trace <= 1e-10,
        format!("200 Hamiltonians: block identities {sym:.1e}, reconstruction {rec:.1e}, max(Tr Ω − Tr ξ) {trace:.2e}"),
    )
}

/// `diag(M^{-†} Hm M^{-1})`, the frequencies implied by a transformation.
fn implied_omega(bt: &BtMatrix<f64>, hm: &CMat<f64>) -> Vec<f64> {
    let inv = invert_bt(bt).full();
    let d = inv.adjoint() * hm * inv;
    (0..bt.n_modes()).map(|i| d[(i, i)].re).collect()
}

fn phase_freedom() -> Verdict {
    let mut g = rng(7);
    let mut worst = 0.0f64;
    for k in 0..100 {
        let n = 1 + k % 3;
        let h = random_hamiltonian(&mut g, n);
        let d = diagonalize(&h).unwrap();
        let phi: Vec<f64> = (0..n).map(|_| rand::Rng::random_range(&mut g, -3.2..3.2)).collect();
        let p = d.bt.apply_phase(&phi).unwrap();
        let (a, b) = (disentangle(&d.bt).unwrap(), disentangle(&p).unwrap());
        let photons = |bt: &BtMatrix<f64>| -> Vec<f64> {
            let vv = bt.v.adjoint() * &bt.v;
            (0..n).map(|i| vv[(i, i)].re).collect()
        };
        let cov_a = covariance(&StateDescriptor::svs(d.bt.clone()));
        let cov_b = covariance(&StateDescriptor::svs(p.clone()));
        let scale = max_abs(&h.block_matrix()).max(1.0);
        let moved = DiagonalizationResult { bt: p.clone(), ..d.clone() };
        worst = worst
            .max(max_abs(&(&a.rho - &b.rho)))
            .max(max_diff(&photons(&d.bt), &photons(&p)))
            .max(cov_a.max_abs_diff(&cov_b))
            .max(max_diff(&implied_omega(&p, &h.block_matrix()), &d.omega) / scale)
            .max(moved.reconstruction_residual(&h))
            .max((a.norm_magnitude - b.norm_magnitude).abs());
    }
    verdict(worst <= GOLDEN, format!("100 phase vectors: largest change {worst:.1e}"))
}

/// `⟨β|m⟩` for every `m` below the cutoff.
fn coherent_bra(beta: &CVec<f64>, cutoff: usize) -> Vec<Cx<f64>> {
    fock_amplitudes(&StateDescriptor::coherent(beta.clone()), cutoff).unwrap().iter().map(|z| z.conj()).collect()
}

fn state_properties() -> Verdict {
    let mut g = rng(8);
    let kinds = [StateKind::Svs, StateKind::Scs, StateKind::Sfs, StateKind::Scfs];
    let excitations: [&[usize]; 6] = [&[1], &[3], &[1, 0], &[1, 2], &[0, 3], &[2, 1]];
    let (mut norm, mut coh, mut bound, mut mus) = (0.0f64, 0.0f64, f64::INFINITY, 0.0f64);
    let mut cases = 0;
    for kind in kinds {
        for (k, ex) in excitations.iter().enumerate() {
            let n_modes = ex.len();
            let bt = random_bt(&mut g, n_modes, 0.3, 1.0);
            let alpha = if kind.is_displaced() { random_alpha(&mut g, n_modes, 0.5) } else { CVec::zeros(n_modes) };
            let n = if kind.is_excited() { ex.to_vec() } else { vec![0; n_modes] };
            let s = StateDescriptor::new(kind, bt.clone(), alpha, n).unwrap();
            let amps = fock_amplitudes(&s, 40).unwrap();
            norm = norm.max((1.0 - amps.iter().map(|z| z.norm_sqr()).sum::<f64>()).abs());

            let beta = random_alpha(&mut g, n_modes, 0.4 + 0.1 * k as f64);
            let direct = wavefn_coherent(&s, &beta).unwrap();
            let summed: Cx<f64> = coherent_bra(&beta, 40).iter().zip(&amps).map(|(b, a)| b * a).sum();
            coh = coh.max((direct - summed).norm());

            bound = bound.min(covariance(&s).uncertainty_products().into_iter().fold(f64::INFINITY, f64::min));
            let f = bloch_messiah(&bt);
            mus = mus.max(mixed_boson_frame(&bt).minimum_uncertainty_residual(&f.r_vals));
            cases += 1;
        }
    }
    verdict(
        norm <= 1e-6 && coh <= 1e-7 && bound >= 1.0 / 16.0 - 1e-12 && mus <= 1e-10,
        format!(
            "{cases} states: norm deficit {norm:.1e}, coherent vs Fock sum {coh:.1e}, min ΔX²ΔY² {bound:.6}, rotated-frame product {mus:.1e}"
        ),
    )
}

fn composition() -> Verdict {
    let mut g = rng(9);
    let mut worst = 0.0f64;
    for k in 0..20 {
        let n = 1 + k % 2;
        let (m1, m2) = (random_bt(&mut g, n, 0.12, 0.5), random_bt(&mut g, n, 0.12, 0.5));
        let space = TruncatedFockSpace::new(n, 12).unwrap();
        let g1 = QuadraticForm::squeeze_generator(&m1).unwrap().to_operator(&space);
        let g2 = QuadraticForm::squeeze_generator(&m2).unwrap().to_operator(&space);
        let v = apply_generator_exp(&g1, &apply_generator_exp(&g2, &space.vacuum()).unwrap()).unwrap();
        let closed = closed_form(&StateDescriptor::svs(compose_so(&m1, &m2).unwrap()), 12);
        worst = worst.max(1.0 - v.overlap(&closed));
    }
    verdict(worst <= 1e-7, format!("20 pairs at cutoff 12: largest 1 − overlap {worst:.1e}"))
}

fn reductions() -> Verdict {
    let mut g = rng(10);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let bt = random_bt(&mut g, 1, 1.5, 3.0);
        let zeta = one_mode_reduce(&bt).unwrap();
        let rho = disentangle(&bt).unwrap().rho[(0, 0)];
        let r = zeta.norm();
        let expect = if r == 0.0 { cx(0.0, 0.0) } else { zeta / r * cx(0.5 * r.tanh(), 0.0) };
        worst = worst.max((rho - expect).norm());
    }
    let standard = is_standard_two_mode(&diagonalize(&reference_hamiltonian()).unwrap().bt).unwrap().standard;
    verdict(
        worst <= GOLDEN && !standard,
        format!("50 one-mode transformations: ρ vs ζ {worst:.1e}; reference is textbook two-mode form: {standard}"),
    )
}

fn excited_fluctuations() -> Verdict {
    let mut g = rng(11);
    let space = TruncatedFockSpace::new(2, 40).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..2 {
        let bt = random_bt(&mut g, 2, 0.3, 1.0);
        let alpha = random_alpha(&mut g, 2, 0.4);
        for n in [[1, 0], [1, 1], [2, 0]] {
            for s in [
                StateDescriptor::sfs(bt.clone(), n.to_vec()).unwrap(),
                StateDescriptor::scfs(bt.clone(), alpha.clone(), n.to_vec()).unwrap(),
            ] {
                let numeric = numeric_moments(&operator_state(&s, &space).unwrap(), &space);
                worst = worst.max(max_diff(&numeric.var_n, &photon_variance(&s)));
            }
        }
    }
    verdict(worst <= 1e-6, format!("12 excited states: largest ΔN² difference from oracle {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("reference frequencies", frequencies),
        ("normal-ordered squeeze operator", normal_ordered_operator),
        ("three-factor decomposition", decomposition),
        ("oracle ground state at cutoff 30", oracle_ground_state),
        ("squeezed-vacuum moments against oracle", moment_equivalence),
        ("symplectic identities", symplectic_identities),
        ("phase-freedom invariance", phase_freedom),
        ("state normalization and uncertainty", state_properties),
        ("composition of squeeze operators", composition),
        ("one- and two-mode reductions", reductions),
        ("excited-state number fluctuations", excited_fluctuations),
    ];
    let mut failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let v = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            verdict(false, format!("panicked: {}", msg.unwrap_or_default()))
        });
        if !v.passed {
            failures += 1;
        }
        println!("criterion {:>2} {} {title}: {}", i + 1, if v.passed { "PASS" } else { "FAIL" }, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
