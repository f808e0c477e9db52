//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line.
//!
//! Run a subset with `cargo test -p krylovlab --test acceptance -- 4 8`.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::OnceLock;
use std::time::Instant;

use faer::Mat;
use krylovlab::chaos::{
    disorder_map, ensemble_r_statistics, ramp_fit, ramp_window, reference_distribution,
    reference_r_tilde_density, sample_r_tilde, sff, DisorderSpec, DisorderTarget, Ensemble,
    SffKind,
};
use krylovlab::fits::{saturation_value, sweep_alpha, SweepProbe, SweepSettings};
use krylovlab::krylov::{
    evolve_wavefunction, frobenius_inner, krylov_dim_bound, lanczos, liouvillian_apply,
    moments_from_b, LanczosOptions, OperatorVector, Reorthogonalization, StoreBasis,
    TimeGrid,
};
use krylovlab::pipeline::{
    lanczos_in_sector, sector_hamiltonian, sector_operator, sector_spectrum, SectorMatrix,
    SeedSpec,
};
use krylovlab::{build_sector_basis, seed_operator, Csr, Error, ModelSpec, SectorSpec, SeedKind};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

type Res<T> = krylovlab::Result<T>;

struct Report {
    ok: bool,
    notes: Vec<String>,
}

impl Report {
    fn new() -> Self {
        Report {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, note: String) {
        if !cond {
            self.ok = false;
            self.notes.push(format!("FAILED {note}"));
        } else {
            self.notes.push(note);
        }
    }

    fn info(&mut self, note: String) {
        self.notes.push(note);
    }
}

fn within(x: f64, target: f64, tol: f64) -> bool {
    (x - target).abs() <= tol
}

fn within_rel(x: f64, target: f64, rel: f64) -> bool {
    (x - target).abs() <= rel * target
}

fn mean_r(spec: &ModelSpec, sector: &SectorSpec, target: DisorderTarget, n: usize, sigma: f64) -> Res<f64> {
    let disorder = DisorderSpec {
        n_samples: n,
        sigma,
        mu: 0.0,
        master_seed: 20240607,
        target,
    };
    Ok(ensemble_r_statistics(spec, &disorder, sector)?.mean_r_tilde)
}

fn c1(r: &mut Report) -> Res<()> {
    let spec = ModelSpec::local_tfim(13, -1.05, 0.5);
    let m = mean_r(&spec, &SectorSpec::parity(1), DisorderTarget::LongitudinalField, 100, 1e-4)?;
    r.check(within(m, 0.534, 0.015), format!("chaotic TFIM L=13 P=+1 mean r~ = {m:.5} (0.534 +- 0.015)"));
    Ok(())
}

fn c2(r: &mut Report) -> Res<()> {
    let spec = ModelSpec::local_tfim(13, 1.0, 0.0);
    let m = mean_r(&spec, &SectorSpec::parity(1), DisorderTarget::LongitudinalField, 100, 1e-4)?;
    r.check(within(m, 0.387, 0.015), format!("integrable TFIM L=13 P=+1 mean r~ = {m:.5} (0.387 +- 0.015)"));
    Ok(())
}

fn c3(r: &mut Report) -> Res<()> {
    let sector = SectorSpec::parity_z(1, 1);
    let run = |gamma: f64| {
        mean_r(
            &ModelSpec::non_local_tfim(13, 1.0, 0.0, gamma),
            &sector,
            DisorderTarget::NonLocalCoupling,
            100,
            1e-4,
        )
    };
    let m05 = run(0.5)?;
    r.check(within(m05, 0.538, 0.02), format!("gamma=0.5 mean r~ = {m05:.5} (0.538 +- 0.02)"));
    let sweep: Vec<(f64, f64)> = [0.05, 0.15, 0.3]
        .into_iter()
        .map(|g| run(g).map(|m| (g, m)))
        .collect::<Res<_>>()?;
    let text: Vec<String> = sweep.iter().map(|(g, m)| format!("{g}:{m:.4}")).collect();
    r.info(format!("sweep {}", text.join(" ")));
    let (m_small, m_03) = (sweep[0].1, sweep[2].1);
    r.check(m_03 > 0.50, format!("gamma=0.3 mean r~ = {m_03:.4} > 0.50"));
    r.check(m_small < m_03, format!("gamma=0.05 mean r~ {m_small:.4} < gamma=0.3 value"));
    Ok(())
}

struct ChainRun {
    b: Vec<f64>,
    sector_dim: usize,
    saturation: f64,
    norm_error: f64,
}

fn l7_chain(spec: &ModelSpec) -> Res<ChainRun> {
    let sector = SectorSpec::parity(1);
    let basis = build_sector_basis(&sector, 7)?;
    let opts = LanczosOptions {
        store_basis: StoreBasis::Never,
        ..LanczosOptions::default()
    };
    let res = lanczos_in_sector(spec, &sector, SeedSpec { kind: SeedKind::SingleSz, site: 4 }, &opts)?;
    let curve = evolve_wavefunction(&res.b, &TimeGrid::default().values()?)?;
    Ok(ChainRun {
        sector_dim: basis.dim(),
        saturation: saturation_value(&curve, 0.1)?.mean,
        norm_error: curve.normalization_error(),
        b: res.b,
    })
}

static CHAOTIC_L7: OnceLock<Result<ChainRun, String>> = OnceLock::new();

fn chaotic_l7() -> Res<&'static ChainRun> {
    CHAOTIC_L7
        .get_or_init(|| l7_chain(&ModelSpec::local_tfim(7, -1.05, 0.5)).map_err(|e| e.to_string()))
        .as_ref()
        .map_err(|e| Error::InvalidArgument(e.clone()))
}

fn c4(r: &mut Report) -> Res<()> {
    let li = l7_chain(&ModelSpec::local_tfim(7, 1.0, 0.0))?;
    let ni = l7_chain(&ModelSpec::non_local_tfim(7, 1.0, 0.0, 0.5))?;
    let nc = l7_chain(&ModelSpec::non_local_tfim(7, -1.05, 0.5, 0.5))?;
    let lc = chaotic_l7()?;
    let bound = krylov_dim_bound(lc.sector_dim);
    for (name, run) in [("LI", &li), ("NI", &ni), ("NC", &nc), ("LC", lc)] {
        r.info(format!("{name}: K={} sat={:.1}", run.b.len() + 1, run.saturation));
        r.check(run.b.len() < bound, format!("{name} K <= D^2-D+1 = {bound}"));
    }
    let (s_li, s_ni, s_nc, s_lc) = (li.saturation, ni.saturation, nc.saturation, lc.saturation);
    r.check(s_li < s_ni && s_ni < s_nc, "ordering LI < NI < NC".into());
    r.check(within_rel(s_nc, s_lc, 0.2), "NC ~ LC within 20%".into());
    r.check(within_rel(s_li, 500.0, 0.3), format!("local integrable {s_li:.1} in 500 +- 30%"));
    r.check(within_rel(s_ni, 1500.0, 0.2), format!("non-local integrable {s_ni:.1} in 1500 +- 20%"));
    r.check(within_rel(s_lc, 2000.0, 0.2), format!("local chaotic {s_lc:.1} in 2000 +- 20%"));
    r.check(within_rel(s_nc, 2000.0, 0.2), format!("non-local chaotic {s_nc:.1} in 2000 +- 20%"));
    Ok(())
}

const ALPHAS: [f64; 6] = [0.1, 0.5, 1.0, 1.5, 2.0, 2.5];

fn growth_rates(base: &ModelSpec, settings: &SweepSettings) -> Res<Vec<f64>> {
    sweep_alpha(base, &ALPHAS, SweepProbe::GrowthRate, settings)?
        .into_iter()
        .map(|p| p.outcome.map(|row| row.value))
        .collect()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn growth_settings(
    sector: SectorSpec,
    seed: SeedSpec,
    reorth: Reorthogonalization,
    n_range: [usize; 2],
) -> SweepSettings {
    SweepSettings {
        sector,
        seed,
        lanczos: LanczosOptions {
            max_iter: Some(40),
            reorthogonalization: reorth,
            store_basis: StoreBasis::Never,
            ..LanczosOptions::default()
        },
        n_range,
        time_grid: TimeGrid::default(),
        window_fraction: 0.1,
        disorder: None,
    }
}

fn fmt_list(v: &[f64]) -> String {
    v.iter().map(|x| format!("{x:.4}")).collect::<Vec<_>>().join(",")
}

fn c5(r: &mut Report) -> Res<()> {
    let settings = growth_settings(
        SectorSpec::parity(1),
        SeedSpec { kind: SeedKind::SingleSz, site: 7 },
        Reorthogonalization::Local,
        [2, 25],
    );
    for (name, g, h) in [("integrable", 1.0, 0.0), ("chaotic", -1.05, 0.5)] {
        let deltas = growth_rates(&ModelSpec::mixed_field_tfim(13, g, h, 1.0), &settings)?;
        r.check(strictly_decreasing(&deltas), format!("{name} delta(alpha) = [{}] decreasing", fmt_list(&deltas)));
    }
    Ok(())
}

fn c6(r: &mut Report) -> Res<()> {
    let spec = ModelSpec::non_local_tfim(11, 1.0, 0.0, 0.5);
    let sector = SectorSpec::parity_z(1, 1);
    let disorder = DisorderSpec {
        n_samples: 5000,
        sigma: 0.01,
        mu: 0.0,
        master_seed: 7,
        target: DisorderTarget::NonLocalCoupling,
    };
    let spectra = disorder_map(&spec, &disorder, &sector, |_, s| Ok(s.eigenvalues))?;
    let reference = sector_spectrum(&spec, &build_sector_basis(&sector, 11)?)?;
    let d = reference.len();
    let times = common::log_times(1e-2, 1e5, 1000);
    let curve = sff(&spectra, &reference, 0.0, &times, SffKind::Annealed)?;
    let late = curve.late_time_average(2.0)?;
    let pred = curve.plateau_prediction;
    r.info(format!("D={d} plateau prediction {pred:.6e}"));
    r.check(within_rel(pred, 1.0 / d as f64, 1e-12), "Z(2b)/Z(b)^2 = 1/D at beta=0".into());
    r.check(within_rel(late, pred, 0.1), format!("late-time average {late:.6e} within 10%"));
    match ramp_window(&curve) {
        Some(w) => {
            let fit = ramp_fit(&curve, w)?;
            r.check(
                fit.slope > 0.0,
                format!("ramp [{:.3}, {:.3}] slope {:.3e} > 0", w[0], w[1], fit.slope),
            );
        }
        None => r.check(false, "no dip-to-plateau window found".into()),
    }
    Ok(())
}

fn dense(m: &SectorMatrix) -> Mat<Complex64> {
    match m {
        SectorMatrix::Real(m) => m.to_complex().to_dense(),
        SectorMatrix::Complex(m) => m.to_dense(),
    }
}

fn c7(r: &mut Report) -> Res<()> {
    let cases = [
        (3, SeedSpec { kind: SeedKind::SingleSz, site: 2 }),
        (4, SeedSpec { kind: SeedKind::ParitySymmetricSz, site: 2 }),
    ];
    let times = common::log_times(1e-2, 1e2, 20);
    for (l, seed) in cases {
        let spec = ModelSpec::local_tfim(l, -1.05, 0.5);
        let basis = build_sector_basis(&SectorSpec::parity(1), l)?;
        let h = sector_hamiltonian(&spec, &basis)?;
        let o = sector_operator(&seed_operator(seed.kind, seed.site, l)?, &basis)?;
        let (SectorMatrix::Real(hr), SectorMatrix::Real(or)) = (&h, &o) else {
            return Err(Error::InvalidArgument("expected a real sector".into()));
        };
        let opts = LanczosOptions {
            store_basis: StoreBasis::Always,
            ..LanczosOptions::default()
        };
        let res = lanczos(hr, &OperatorVector::from_csr(or), &opts)?;
        let krylov = res.basis.as_ref().expect("basis stored");
        let curve = evolve_wavefunction(&res.b, &times)?;
        let d = basis.dim();
        let hd = dense(&h);
        let o0 = {
            let v = OperatorVector::from_csr(or);
            v.scaled(1.0 / v.norm()).to_complex().to_mat()
        };
        let mut amp_err = 0.0f64;
        let mut ck_err = 0.0f64;
        for (ti, &t) in times.iter().enumerate() {
            let ih = Mat::from_fn(d, d, |i, j| hd[(i, j)] * Complex64::new(0.0, t));
            let u = common::expm(&ih);
            let u_dag = Mat::from_fn(d, d, |i, j| u[(j, i)].conj());
            let ot = &(&u * &o0) * &u_dag;
            let ot = OperatorVector::from_mat(&ot);
            let phi = curve.amplitudes_at(ti);
            let mut ck = 0.0;
            for (n, on) in krylov.iter().enumerate() {
                let overlap = frobenius_inner(&on.to_complex(), &ot)?;
                // (O_n|O(t)) = i^n phi_n
                let oracle = overlap * Complex64::new(0.0, -1.0).powu(n as u32);
                amp_err = amp_err.max((oracle - phi[n]).norm());
                ck += n as f64 * oracle.norm_sqr();
            }
            ck_err = ck_err.max((ck - curve.c_k[ti]).abs());
        }
        r.check(amp_err <= 1e-8, format!("L={l} K={} max amplitude error {amp_err:.2e}", res.krylov_dim));
        r.check(ck_err <= 1e-8, format!("L={l} max C_K error {ck_err:.2e}"));
    }
    Ok(())
}

fn small_random_hamiltonian(d: usize, seed: u64) -> (Csr<f64>, OperatorVector<f64>) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut h = Mat::<f64>::zeros(d, d);
    let mut o = Mat::<f64>::zeros(d, d);
    for i in 0..d {
        for j in i..d {
            let a: f64 = rng.random_range(-1.0..1.0);
            let b: f64 = rng.random_range(-1.0..1.0);
            h[(i, j)] = a;
            h[(j, i)] = a;
            o[(i, j)] = b;
            o[(j, i)] = b;
        }
    }
    (Csr::from_dense(&h), OperatorVector::from_mat(&o))
}

fn c8(r: &mut Report) -> Res<()> {
    // orthonormality and three-term recurrence on a stored basis
    let spec = ModelSpec::local_tfim(5, -1.05, 0.5);
    let basis = build_sector_basis(&SectorSpec::parity(1), 5)?;
    let SectorMatrix::Real(h) = sector_hamiltonian(&spec, &basis)? else {
        return Err(Error::InvalidArgument("expected a real sector".into()));
    };
    let SectorMatrix::Real(o) = sector_operator(&seed_operator(SeedKind::SingleSz, 3, 5)?, &basis)? else {
        return Err(Error::InvalidArgument("expected a real seed".into()));
    };
    let opts = LanczosOptions {
        store_basis: StoreBasis::Always,
        ..LanczosOptions::default()
    };
    let res = lanczos(&h, &OperatorVector::from_csr(&o), &opts)?;
    let q = res.basis.as_ref().expect("basis stored");
    let k = q.len();
    let mut ortho = 0.0f64;
    for i in 0..k {
        for j in i..k {
            let g = frobenius_inner(&q[i], &q[j])?;
            ortho = ortho.max((g - if i == j { 1.0 } else { 0.0 }).abs());
        }
    }
    r.check(ortho <= 1e-10, format!("L=5 K={k} orthonormality {ortho:.2e}"));
    let mut three = 0.0f64;
    for n in 0..k {
        let mut a = liouvillian_apply(&h, &q[n])?;
        if n > 0 {
            a = a.sub(&q[n - 1].scaled(res.b[n - 1]))?;
        }
        if n + 1 < k {
            a = a.sub(&q[n + 1].scaled(res.b[n]))?;
        }
        three = three.max(a.norm());
    }
    r.check(three <= 1e-8, format!("three-term residual {three:.2e}"));
    r.check(k <= krylov_dim_bound(basis.dim()), format!("L=5 K={k} <= D^2-D+1"));

    // closed chains on random matrices saturate the bound and reproduce moments
    for (d, seed) in [(3, 1u64), (5, 2), (6, 3)] {
        let (h, o) = small_random_hamiltonian(d, seed);
        let res = lanczos(&h, &o, &LanczosOptions::default())?;
        r.check(
            res.krylov_dim <= krylov_dim_bound(d),
            format!("random D={d} K={} <= {}", res.krylov_dim, krylov_dim_bound(d)),
        );
        let on = o.scaled(1.0 / o.norm());
        let mut worst = 0.0f64;
        let mut lk = on.clone();
        for order in 1..=8 {
            lk = liouvillian_apply(&h, &lk)?;
            let direct = frobenius_inner(&on, &lk)?;
            let from_b = moments_from_b(&res.b, order, res.extent())?;
            worst = worst.max((direct - from_b).abs() / direct.abs().max(1.0));
        }
        r.check(worst <= 1e-8, format!("random D={d} moments to order 8, rel err {worst:.2e}"));
    }

    // normalization at large K
    let lc = chaotic_l7()?;
    r.check(
        lc.norm_error <= 1e-6,
        format!("K={} normalization error {:.2e}", lc.b.len() + 1, lc.norm_error),
    );

    // reference distributions
    let mut q_err = 0.0f64;
    for kind in Ensemble::ALL {
        let p = |x: f64| reference_distribution(kind, x).unwrap();
        // split [0, inf) at 1 and map the tail with r = 1/u
        let total = common::integrate(p, 0.0, 1.0, 4000)
            + common::integrate(|u| p(1.0 / u) / (u * u), 0.0, 1.0, 4000);
        let pt = |x: f64| reference_r_tilde_density(kind, x).unwrap();
        let tilde = common::integrate(pt, 0.0, 1.0, 4000);
        let mean = common::integrate(|x| x * pt(x), 0.0, 1.0, 4000);
        q_err = q_err
            .max((total - 1.0).abs())
            .max((tilde - 1.0).abs())
            .max((mean - kind.mean_r_tilde()).abs());
    }
    r.check(q_err <= 1e-8, format!("quadrature normalizations and means, max err {q_err:.2e}"));

    let mut rng = ChaCha20Rng::seed_from_u64(11);
    let samples = sample_r_tilde(Ensemble::Goe, 5000, &mut rng);
    let m = samples.iter().sum::<f64>() / samples.len() as f64;
    let exact = 4.0 - 2.0 * 3f64.sqrt();
    r.check(within(m, exact, 0.01), format!("GOE sampled mean {m:.4} vs {exact:.4}"));
    Ok(())
}

fn c9(r: &mut Report) -> Res<()> {
    // At L = 10 the coefficients stop growing near n = 15, so the fit stays
    // inside the growth regime.
    let n_range = [2, 15];
    let seed_10 = SeedSpec { kind: SeedKind::ParitySymmetricSz, site: 5 };
    let settings = growth_settings(
        SectorSpec::parity_magnetization(1, -1.0),
        seed_10,
        Reorthogonalization::Full,
        n_range,
    );
    let d0 = growth_rates(&ModelSpec::mixed_field_xxz(10, 1.0, 1.0, 1.1, 0.0), &settings)?;
    r.check(strictly_decreasing(&d0), format!("L=10 P=+1 M=-1 eps_d=0 delta = [{}] decreasing", fmt_list(&d0)));

    // an even chain has no central site, so the defect breaks parity
    let defect_10 = ModelSpec::mixed_field_xxz(10, 1.0, 1.0, 1.1, 0.5);
    let off_center = lanczos_in_sector(&defect_10, &settings.sector, seed_10, &settings.lanczos);
    r.check(
        matches!(off_center, Err(Error::SymmetryViolation { .. })),
        "L=10 eps_d=0.5 rejected in the P=+1 sector".into(),
    );
    let m_only = SectorSpec {
        parity: None,
        z_reflection: None,
        magnetization: Some(-1.0),
    };
    let settings = growth_settings(m_only, seed_10, Reorthogonalization::Full, n_range);
    let d10 = growth_rates(&defect_10, &settings)?;
    r.check(strictly_decreasing(&d10), format!("L=10 M=-1 eps_d=0.5 delta = [{}] decreasing", fmt_list(&d10)));

    let settings = growth_settings(
        SectorSpec::parity_magnetization(1, -0.5),
        SeedSpec { kind: SeedKind::SingleSz, site: 6 },
        Reorthogonalization::Full,
        n_range,
    );
    let base = ModelSpec::mixed_field_xxz(11, 1.0, 1.0, 1.1, 0.5);
    r.check(base.defect_site() == 6, "L=11 defect on the central site 6".into());
    let d11 = growth_rates(&base, &settings)?;
    r.check(strictly_decreasing(&d11), format!("L=11 P=+1 M=-1/2 eps_d=0.5 delta = [{}] decreasing", fmt_list(&d11)));
    Ok(())
}

fn panic_text(e: Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_else(|| "panic".into())
}

fn main() {
    let filter: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let criteria: [(usize, &str, fn(&mut Report) -> Res<()>); 9] = [
        (1, "r-statistics, chaotic local TFIM", c1),
        (2, "r-statistics, integrable local TFIM", c2),
        (3, "r-statistics, non-local TFIM", c3),
        (4, "complexity saturation ordering, L=7", c4),
        (5, "growth-rate monotonicity, mixed TFIM", c5),
        (6, "SFF plateau and ramp", c6),
        (7, "matrix-exponential oracle", c7),
        (8, "invariant suite", c8),
        (9, "growth-rate monotonicity, mixed XXZ", c9),
    ];
    let mut failed = 0;
    for (id, name, f) in criteria {
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let mut report = Report::new();
        match catch_unwind(AssertUnwindSafe(|| f(&mut report))) {
            Ok(Ok(())) => {}
            Ok(Err(e)) => report.check(false, format!("error: {e}")),
            Err(p) => report.check(false, format!("panic: {}", panic_text(p))),
        }
        let verdict = if report.ok { "PASS" } else { "FAIL" };
        if !report.ok {
            failed += 1;
        }
        println!(
            "criterion {id} ({name}): {verdict} [{:.0} s] {}",
            start.elapsed().as_secs_f64(),
            report.notes.join("; ")
        );
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
