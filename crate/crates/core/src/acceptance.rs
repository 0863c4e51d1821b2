//! The acceptance suite: thirteen numbered end-to-end checks with pinned
//! tolerances, each exercising closed forms against independent numerical
//! routes (finite-difference residuals, direct evolution, shooting,
//! quadrature oracles). `run_all` evaluates every criterion and reports one
//! pass/fail line per criterion; the CLI (`curveflow verify acceptance`) and
//! the `acceptance` test target both drive it.

use crate::catalog::verify::{convergence_order, linspace, slope_residual};
use crate::catalog::{
    angenent_oval_diagnostics, eval_diffusivity, grim_reaper, grim_reaper_slope,
    periodic_decay_amplitude, AnisoSeparable, DVSlopeFamily, DiffusivityModel, DvIndex, Family,
    PeriodicDecay,
};
use crate::error::Result;
use crate::evolve::{
    detect_extinction, evolve_closed, evolve_graph, measure_wave_speed, Bc,
    ClosedCurveFlowProblem, GraphFlowProblem, Scheme, Snapshots,
};
use crate::exec;
use crate::geometry::{GraphPatch, PlaneCurve};
use crate::reductions::{
    groove_depth_coefficient, solve_groove, solve_homothetic_profile, GrooveProblem,
};
use crate::specfun::{
    elliptic_f, erfc, jacobi_sn_cn_dn, quad_singular, EllipticArgs, Tolerance,
};
use crate::transforms::{reciprocal_diffusivity, reciprocal_map, reconstruct_graph, rotate_diffusivity, DerivedDiffusivity};

use std::f64::consts::{FRAC_PI_2, PI, SQRT_2};
use std::fmt::Write as _;

/// Outcome of one acceptance criterion.
#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

const NAMES: [&str; 13] = [
    "residual suite: every catalog family, h = 1e-3, order 2.0 +/- 0.5",
    "oval: curvature ratio identity and small-time eccentricity",
    "closed flow drives a 2:1 ellipse round (ratios > 0.99, monotone)",
    "grim reaper speed from graph evolution within 1%",
    "circle extinction at t = 0.5 with area slope -2 pi",
    "periodic decay: early amplitude slope -K, late sinusoidal decay",
    "transform algebra: reciprocal/rotation invariance, involution",
    "reciprocal map of the grim reaper is a reflection (spread < 1e-6)",
    "groove: erfc profile, sublinear depth, sqrt(t) self-similarity",
    "homothetic shooting: circle/ellipse profiles, nonexistence, case-i",
    "special functions: sn/F round trip, quadrature and AGM oracles",
    "anisotropic separable: residual, markers, symmetry evolution",
    "DVCos physicality: B -> 2 at large slope, B - 1 ~ u^4 near 0",
];

/// Run one criterion by id (1-13).
pub fn run_criterion(id: u8) -> CriterionOutcome {
    let name = NAMES[(id - 1) as usize];
    let result = match id {
        1 => criterion_residual_suite(),
        2 => criterion_oval_identities(),
        3 => criterion_gage_hamilton(),
        4 => criterion_reaper_speed(),
        5 => criterion_circle_extinction(),
        6 => criterion_periodic_amplitude(),
        7 => criterion_transform_algebra(),
        8 => criterion_reciprocal_reflection(),
        9 => criterion_groove(),
        10 => criterion_homothetic(),
        11 => criterion_special_functions(),
        12 => criterion_aniso_separable(),
        13 => criterion_dvcos_physicality(),
        _ => unreachable!("criterion ids are 1-13"),
    };
    match result {
        Ok((passed, detail)) => CriterionOutcome {
            id,
            name,
            passed,
            detail,
        },
        Err(e) => CriterionOutcome {
            id,
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

/// Run the whole suite (criteria execute independently, in parallel when
/// the `parallel` feature is enabled).
pub fn run_all() -> Vec<CriterionOutcome> {
    let ids: Vec<u8> = (1..=13).collect();
    let mut out = exec::map(&ids, |&id| run_criterion(id));
    out.sort_by_key(|o| o.id);
    out
}

/// Render the pass/fail table.
pub fn render_table(outcomes: &[CriterionOutcome]) -> String {
    let mut s = String::new();
    for o in outcomes {
        let _ = writeln!(
            s,
            "[{}] criterion {:2}: {} - {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        );
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    let _ = writeln!(s, "{passed}/{} criteria passed", outcomes.len());
    s
}

// --- criterion 1 -----------------------------------------------------------

fn criterion_residual_suite() -> Result<(bool, String)> {
    let h = 1e-3;
    let cases: Vec<(&str, Family, Vec<f64>, Vec<f64>)> = vec![
        (
            "grim-reaper",
            Family::GrimReaper { c: 1.0 },
            linspace(-1.2, 1.2, 41),
            vec![0.0, 0.1],
        ),
        (
            "circle",
            Family::ShrinkingCircle { t0: 0.0 },
            linspace(-0.6, 0.6, 41),
            vec![-0.5],
        ),
        (
            "oval",
            Family::AngenentOval,
            linspace(-0.9, 0.9, 41),
            vec![-1.0],
        ),
        (
            "periodic",
            Family::Periodic(PeriodicDecay::new(1, 2.0, 0.0, true)?),
            linspace(0.1, 1.9, 41),
            vec![-0.1, 0.3],
        ),
        (
            "dv-slope k=1",
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K1, 1.0, 0.0, 0.0)?),
            linspace(-1.15, 1.15, 41),
            vec![0.2],
        ),
        (
            "dv-slope k=2",
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K2, 1.0, 0.0, 0.0)?),
            linspace(-1.1, 1.1, 41),
            vec![-1.0],
        ),
        (
            "dv-slope k=3",
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K3, 1.0, 0.0, 0.0)?),
            linspace(0.3, 1.8, 41),
            vec![0.0],
        ),
        (
            "dv-slope k=5",
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K5, 1.0, 0.0, 0.0)?),
            linspace(-1.4, 1.4, 41),
            vec![-1.0],
        ),
        (
            "dv-slope k=6",
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K6, 1.0, 0.0, 0.0)?),
            linspace(-0.8, 0.8, 41),
            vec![-1.0],
        ),
        (
            "dv-slope k=7",
            Family::DvSlope(DVSlopeFamily::new(DvIndex::K7, 1.0, 0.0, 0.0)?),
            linspace(-1.5, 1.5, 41),
            vec![0.0],
        ),
        (
            "beta-ellipse",
            Family::EllipticHomothetic { beta: 2.0, t0: 0.0 },
            linspace(-0.6, 0.6, 41),
            vec![-0.5],
        ),
        (
            "aniso-separable",
            Family::AnisoSeparable(AnisoSeparable::new(1.0, 0.0, 1.0, 1.0)?),
            linspace(-1.4, 0.3, 12),
            vec![-2.0],
        ),
    ];
    let mut ok = true;
    let mut detail = String::new();
    for (label, family, xs, ts) in &cases {
        let (r1, r2, order) = convergence_order(family, xs, ts, h)?;
        let pass = r1 < 1e-5 && (1.5..=2.5).contains(&order);
        ok &= pass;
        let _ = write!(
            detail,
            "{label}: r={r1:.2e} order={order:.2}{}; ",
            if pass { "" } else { " [FAIL]" }
        );
        let _ = r2;
    }
    Ok((ok, detail))
}

// --- criterion 2 -----------------------------------------------------------

fn criterion_oval_identities() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = String::new();
    for t in [-5.0, -2.0, -1.0, -0.1] {
        let d = angenent_oval_diagnostics(t)?;
        let dev = (d.kappa_max / d.kappa_min - (-t).exp()).abs();
        ok &= dev <= 1e-12;
        let _ = write!(detail, "t={t}: |ratio-e^-t|={dev:.1e}; ");
    }
    let d = angenent_oval_diagnostics(-1e-4)?;
    let lead = (2.0 * 1e-4f64 / 3.0).sqrt();
    let ratio = d.eccentricity / lead;
    ok &= (0.99..=1.01).contains(&ratio);
    let _ = write!(detail, "ecc ratio at |t|=1e-4: {ratio:.5}");
    Ok((ok, detail))
}

// --- criterion 3 -----------------------------------------------------------

fn criterion_gage_hamilton() -> Result<(bool, String)> {
    let start = std::time::Instant::now();
    let ellipse = PlaneCurve::ellipse(2.0, 1.0, 256, 0.0)?;
    let mut p = ClosedCurveFlowProblem::new(ellipse, 1.0, None)?;
    p.area_floor = 1e-3;
    p.snapshot_interval = 0.05;
    let res = evolve_closed(&p)?;
    let elapsed = start.elapsed().as_secs_f64();
    let mut in_ratios = Vec::new();
    let mut k_ratios = Vec::new();
    for d in res.diagnostics.iter().flatten() {
        in_ratios.push(d.inradius / d.circumradius);
        k_ratios.push(d.kappa_min / d.kappa_max);
    }
    let monotone = |v: &[f64]| v.windows(2).all(|w| w[1] >= w[0] - 2e-3);
    let final_in = *in_ratios.last().unwrap_or(&0.0);
    let final_k = *k_ratios.last().unwrap_or(&0.0);
    // the 10 s budget describes optimised builds; debug builds get headroom
    let budget = if cfg!(debug_assertions) { 300.0 } else { 10.0 };
    let ok = final_in > 0.99
        && final_k > 0.99
        && monotone(&in_ratios)
        && monotone(&k_ratios)
        && elapsed < budget;
    Ok((
        ok,
        format!(
            "inradius/circumradius {:.4} -> {final_in:.4}, kmin/kmax {:.4} -> {final_k:.4}, monotone {}/{}, {elapsed:.2}s",
            in_ratios.first().unwrap_or(&f64::NAN),
            k_ratios.first().unwrap_or(&f64::NAN),
            monotone(&in_ratios),
            monotone(&k_ratios),
        ),
    ))
}

// --- criterion 4 -----------------------------------------------------------

fn criterion_reaper_speed() -> Result<(bool, String)> {
    let c = 1.0;
    let xs = linspace(-1.45, 1.45, 301);
    let ys: Result<Vec<f64>> = xs.iter().map(|&x| grim_reaper(c, x, 0.0)).collect();
    let initial = GraphPatch::new(xs.clone(), ys?, 0.0)?;
    let g_left = grim_reaper_slope(c, xs[0], 0.0)?;
    let g_right = grim_reaper_slope(c, xs[xs.len() - 1], 0.0)?;
    let p = GraphFlowProblem::new(
        DiffusivityModel::Isotropic,
        initial,
        Bc::Neumann(g_left),
        Bc::Neumann(g_right),
        1e-4,
        0.2,
        Scheme::SemiImplicit,
        11,
    )?;
    let res = evolve_graph(&p)?;
    let fit = measure_wave_speed(&res)?;
    let ok = (fit.speed - c).abs() <= 0.01 * c;
    Ok((
        ok,
        format!("measured speed {:.5} (target {c} +/- 1%)", fit.speed),
    ))
}

// --- criterion 5 -----------------------------------------------------------

fn criterion_circle_extinction() -> Result<(bool, String)> {
    let circle = PlaneCurve::ellipse(1.0, 1.0, 256, 0.0)?;
    let mut p = ClosedCurveFlowProblem::new(circle, 1.0, None)?;
    p.area_floor = 1e-3;
    p.snapshot_interval = 0.02;
    let res = evolve_closed(&p)?;
    let fit = detect_extinction(&res)?;
    let slope_target = -2.0 * PI;
    let ok = (fit.time - 0.5).abs() <= 0.005
        && (fit.area_slope - slope_target).abs() <= 0.02 * slope_target.abs();
    Ok((
        ok,
        format!(
            "extinction {:.5} (0.5 +/- 1%), area slope {:.5} (-2pi +/- 2%)",
            fit.time, fit.area_slope
        ),
    ))
}

// --- criterion 6 -----------------------------------------------------------

fn criterion_periodic_amplitude() -> Result<(bool, String)> {
    let p = PeriodicDecay::new(5, 1.0, 0.0, true)?;
    let k = p.k();
    // least-squares amplitude slope over the early window
    let taus = linspace(-0.09, -0.05, 9);
    let amps: Vec<f64> = taus
        .iter()
        .map(|&tau| periodic_decay_amplitude(&p, tau).exact)
        .collect();
    let n = taus.len() as f64;
    let sx: f64 = taus.iter().sum();
    let sy: f64 = amps.iter().sum();
    let sxx: f64 = taus.iter().map(|x| x * x).sum();
    let sxy: f64 = taus.iter().zip(&amps).map(|(x, y)| x * y).sum();
    let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let early_ok = (slope + k).abs() <= 0.02 * k;
    // late regime at K^2 (tau - tau0) = 3
    let tau_late = 3.0 / (k * k);
    let rep = periodic_decay_amplitude(&p, tau_late);
    let late_ok = (rep.exact - rep.late_approx).abs() <= 0.02 * rep.late_approx;
    Ok((
        early_ok && late_ok,
        format!(
            "early slope {slope:.4} (target {:.4} +/- 2%), late exact {:.6e} vs approx {:.6e}",
            -k, rep.exact, rep.late_approx
        ),
    ))
}

// --- criterion 7 -----------------------------------------------------------

fn criterion_transform_algebra() -> Result<(bool, String)> {
    // step 0.4 grid on [-10, 10] avoids 0 and the rotation poles of the
    // three angles
    let grid: Vec<f64> = (-25..=25)
        .map(|i| i as f64 * 0.4)
        .filter(|&u| u != 0.0)
        .collect();
    let mut worst_recip = 0.0f64;
    let recip = reciprocal_diffusivity(DiffusivityModel::Isotropic);
    for &u in &grid {
        let direct = eval_diffusivity(&DiffusivityModel::Isotropic, u)?.0;
        worst_recip = worst_recip.max((recip.eval(u)? - direct).abs());
    }
    let mut worst_rot = 0.0f64;
    for alpha in [PI / 6.0, PI / 4.0, 1.0] {
        let rot = rotate_diffusivity(DiffusivityModel::Isotropic, alpha);
        for &u in &grid {
            let direct = 1.0 / (1.0 + u * u);
            worst_rot = worst_rot.max((rot.eval(u)? - direct).abs());
        }
    }
    let mut worst_invol = 0.0f64;
    for model in [
        DiffusivityModel::Isotropic,
        DiffusivityModel::BetaScaled { beta: 2.0 },
        DiffusivityModel::Constant { d: 0.7 },
    ] {
        let twice = DerivedDiffusivity::new(model).reciprocal().reciprocal();
        for &u in &grid {
            let direct = eval_diffusivity(&model, u)?.0;
            worst_invol = worst_invol.max((twice.eval(u)? - direct).abs() / direct);
        }
    }
    let ok = worst_recip <= 1e-12 && worst_rot <= 1e-12 && worst_invol <= 1e-12;
    Ok((
        ok,
        format!(
            "max |reciprocal-iso| {worst_recip:.1e}, max |rot-iso| {worst_rot:.1e}, involution {worst_invol:.1e}"
        ),
    ))
}

// --- criterion 8 -----------------------------------------------------------

fn criterion_reciprocal_reflection() -> Result<(bool, String)> {
    let n = 4001;
    let xs = linspace(0.1, 1.4, n);
    let us: Result<Vec<f64>> = xs.iter().map(|&x| grim_reaper_slope(1.0, x, 0.0)).collect();
    let patch = GraphPatch::new(xs.clone(), us?, 0.0)?;
    let image = reciprocal_map(&patch, None)?;
    let graph = reconstruct_graph(&image)?;
    let devs: Vec<f64> = graph.ys.iter().zip(&xs).map(|(&yp, &x)| yp - x).collect();
    let mean = devs.iter().sum::<f64>() / devs.len() as f64;
    let spread = devs.iter().map(|d| (d - mean).abs()).fold(0.0, f64::max);
    Ok((spread < 1e-6, format!("reflection spread {spread:.2e}")))
}

// --- criterion 9 -----------------------------------------------------------

fn criterion_groove() -> Result<(bool, String)> {
    // (a) constant-D profile equals m erfc(rho/2) to 1e-8 on [0, 6]
    let tol = Tolerance {
        abs_tol: 1e-7,
        rel_tol: 1e-10,
        max_iterations: 10_000,
    };
    let p = GrooveProblem::new(DiffusivityModel::Constant { d: 1.0 }, 1.0, 8.5, tol)?;
    let prof = solve_groove(&p)?;
    let mut worst = 0.0f64;
    for (r, f) in prof.rho.iter().zip(&prof.f) {
        if *r > 6.0 {
            break;
        }
        worst = worst.max((f - erfc(0.5 * r)).abs());
    }
    let erfc_ok = worst < 1e-8;
    // (b) isotropic depth coefficient sublinear over m in {1, 5, 25}
    let coef = |m: f64| -> Result<f64> {
        let p = GrooveProblem::new(DiffusivityModel::Isotropic, m, 8.5, tol)?;
        groove_depth_coefficient(&solve_groove(&p)?)
    };
    let (c1, c5, c25) = (coef(1.0)?, coef(5.0)?, coef(25.0)?);
    let sublinear = c5 / c1 < 5.0 && c25 / c1 < 25.0 && c5 > c1 && c25 > c5;
    // (c) evolve the groove graph from t = 1 to t = 4 and compare with the
    // sqrt(t)-rescaled profile
    let p = GrooveProblem::new(DiffusivityModel::Isotropic, 1.0, 8.5, tol)?;
    let prof = solve_groove(&p)?;
    let total = groove_depth_coefficient(&prof)?;
    let cum = crate::specfun::cumulative_integral(&prof.rho, &prof.f)?;
    let y_of_rho = |rho: f64| -> f64 {
        // y(x, 1)/sqrt(1) = -(total - cumulative(rho)), clamped far field
        if rho >= *prof.rho.last().unwrap() {
            return 0.0;
        }
        let j = prof
            .rho
            .binary_search_by(|v| v.total_cmp(&rho))
            .unwrap_or_else(|j| j.saturating_sub(1));
        let fr = (rho - prof.rho[j]) / (prof.rho[j + 1] - prof.rho[j]);
        let c = cum[j] + fr * (cum[j + 1] - cum[j]);
        -(total - c)
    };
    let nx = 1201;
    let xs = linspace(0.0, 12.0, nx);
    let ys: Vec<f64> = xs.iter().map(|&x| y_of_rho(x)).collect();
    let initial = GraphPatch::new(xs.clone(), ys, 1.0)?;
    let flow = GraphFlowProblem::new(
        DiffusivityModel::Isotropic,
        initial,
        Bc::Neumann(1.0),
        Bc::Dirichlet(0.0),
        1e-3,
        4.0,
        Scheme::SemiImplicit,
        4,
    )?;
    let res = evolve_graph(&flow)?;
    let Snapshots::Graphs(snaps) = &res.snapshots else {
        unreachable!()
    };
    let last = snaps.last().unwrap();
    let mut worst_ss = 0.0f64;
    let mut scale = 0.0f64;
    for (x, y) in last.xs.iter().zip(&last.ys) {
        if *x > 10.0 {
            break;
        }
        let target = 2.0 * y_of_rho(x / 2.0);
        worst_ss = worst_ss.max((y - target).abs());
        scale = scale.max(target.abs());
    }
    let ss_ok = worst_ss <= 0.01 * scale;
    Ok((
        erfc_ok && sublinear && ss_ok,
        format!(
            "erfc dev {worst:.2e}; depth coeffs {c1:.4}/{c5:.4}/{c25:.4}; self-similar dev {:.3}%",
            100.0 * worst_ss / scale
        ),
    ))
}

// --- criterion 10 ----------------------------------------------------------

fn criterion_homothetic() -> Result<(bool, String)> {
    let tol = Tolerance::default();
    let iso = solve_homothetic_profile(&DiffusivityModel::Isotropic, &tol)?;
    let mut worst_iso = 0.0f64;
    for i in 0..=130 {
        let r = 0.01 * i as f64;
        let exact = r / (2.0 - r * r).sqrt();
        worst_iso = worst_iso.max((iso.profile.value_at(r)? - exact).abs());
    }
    let iso_ok = worst_iso <= 1e-6 && (iso.rho0 - SQRT_2).abs() <= 1e-4;
    let beta = 2.0;
    let bet = solve_homothetic_profile(&DiffusivityModel::BetaScaled { beta }, &tol)?;
    let mut worst_beta = 0.0f64;
    for i in 0..=130 {
        let r = 0.01 * i as f64;
        let exact = r / (beta * (2.0 - r * r).sqrt());
        worst_beta = worst_beta.max((bet.profile.value_at(r)? - exact).abs());
    }
    let beta_ok = worst_beta <= 1e-6;
    let constant_rejected = matches!(
        solve_homothetic_profile(&DiffusivityModel::Constant { d: 1.0 }, &tol),
        Err(crate::error::Error::NoBlowUp { .. })
    );
    let relation_ok = iso.relation_residual <= 0.05 && bet.relation_residual <= 0.05;
    Ok((
        iso_ok && beta_ok && constant_rejected && relation_ok,
        format!(
            "iso dev {worst_iso:.1e}, rho0 {:.6}; beta dev {worst_beta:.1e}; constant rejected {constant_rejected}; relation residuals {:.3}/{:.3}",
            iso.rho0, iso.relation_residual, bet.relation_residual
        ),
    ))
}

// --- criterion 11 ----------------------------------------------------------

fn criterion_special_functions() -> Result<(bool, String)> {
    // sn/F round trip
    let mut worst_rt = 0.0f64;
    for m in [0.0, 0.25, 0.5] {
        for i in 0..=60 {
            let phi = -FRAC_PI_2 + 0.01 + (PI - 0.02) * i as f64 / 60.0;
            let u = elliptic_f(EllipticArgs {
                amplitude: phi,
                parameter: m,
            })?;
            let (sn, _, _) = jacobi_sn_cn_dn(u, m)?;
            worst_rt = worst_rt.max((sn - phi.sin()).abs());
        }
    }
    // quadrature against the Beta-identity oracle
    // (1/2) B(1/4, 1/2) = 2.6220575542921192
    let tol = Tolerance::default().with_abs(1e-12);
    let lem = quad_singular(|s: f64| 1.0 / s.cos().sqrt(), 0.0, FRAC_PI_2, &tol)?;
    let quad_dev = (lem - 2.622_057_554_3).abs();
    // complete elliptic integral against the AGM oracle
    let (mut a, mut b) = (1.0f64, 0.5f64.sqrt());
    for _ in 0..40 {
        let (an, bn) = (0.5 * (a + b), (a * b).sqrt());
        if (an - bn).abs() < 1e-17 {
            break;
        }
        a = an;
        b = bn;
    }
    let k_agm = PI / (2.0 * a);
    let k_val = elliptic_f(EllipticArgs {
        amplitude: FRAC_PI_2,
        parameter: 0.5,
    })?;
    let agm_dev = (k_val - k_agm).abs();
    let lit_dev = (k_val - 1.854_074_677_3).abs();
    let ok = worst_rt < 1e-12 && quad_dev <= 1e-8 && agm_dev <= 1e-9 && lit_dev <= 1e-9;
    Ok((
        ok,
        format!(
            "round trip {worst_rt:.1e}; quad dev {quad_dev:.1e}; AGM dev {agm_dev:.1e}"
        ),
    ))
}

// --- criterion 12 ----------------------------------------------------------

fn criterion_aniso_separable() -> Result<(bool, String)> {
    let s = AnisoSeparable::new(1.0, 0.0, 1.0, 1.0)?;
    let model = s.model();
    // slope-field residual at h = 1e-3
    let scan = slope_residual(
        |x, t| s.slope(x, t),
        move |u| eval_diffusivity(&model, u).map(|(d, _)| d),
        &linspace(-1.4, 0.3, 12),
        &[-2.0],
        1e-3,
    )?;
    let residual_ok = scan.max_abs < 1e-5;
    // markers at t = 0
    let m0 = s.markers(0.0)?;
    let markers_ok = m0.x_u.abs() <= 1e-12 && (m0.x_l + 2.622_057_6).abs() <= 1e-6;
    // symmetry at t = -8, asymmetry at t = -2 (d = 0.5)
    let d = 0.5;
    let m8 = s.markers(-8.0)?;
    let late = (s.curve_y(m8.x_l + d, -8.0, -8.0)? - s.curve_y(m8.x_l - d, -8.0, -8.0)?).abs();
    let m2 = s.markers(-2.0)?;
    let early = (s.curve_y(m2.x_l + d, -2.0, -2.0)? - s.curve_y(m2.x_l - d, -2.0, -2.0)?).abs();
    let symmetry_ok = late < 1e-3 && early > 5e-3;
    Ok((
        residual_ok && markers_ok && symmetry_ok,
        format!(
            "residual {:.2e}; x_u(0) {:.1e}, x_l(0) {:.9}; |dy| t=-8: {late:.2e}, t=-2: {early:.2e}",
            scan.max_abs, m0.x_u, m0.x_l
        ),
    ))
}

// --- criterion 13 ----------------------------------------------------------

fn criterion_dvcos_physicality() -> Result<(bool, String)> {
    let model = DiffusivityModel::DVCos {
        a: SQRT_2,
        d0: 1.0,
    };
    let (_, b_large) = eval_diffusivity(&model, 1e3)?;
    let large_ok = (b_large - 2.0).abs() <= 0.01 * 2.0;
    // B - 1 ~ u^4 near zero: log-log fit over [1e-3, 1e-1]
    let npts = 9;
    let mut lx = Vec::with_capacity(npts);
    let mut ly = Vec::with_capacity(npts);
    for i in 0..npts {
        let u = 1e-3 * 100f64.powf(i as f64 / (npts - 1) as f64);
        let (_, b) = eval_diffusivity(&model, u)?;
        lx.push(u.ln());
        ly.push((b - 1.0).ln());
    }
    let n = lx.len() as f64;
    let sx: f64 = lx.iter().sum();
    let sy: f64 = ly.iter().sum();
    let sxx: f64 = lx.iter().map(|x| x * x).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| x * y).sum();
    let exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    let small_ok = exponent >= 3.8;
    Ok((
        large_ok && small_ok,
        format!("B(1e3) = {b_large:.5} (2 +/- 1%); fit exponent {exponent:.3} (>= 3.8)"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_named_and_runnable() {
        // smoke-run the two cheapest criteria here; the full suite runs in
        // the dedicated acceptance test target
        let o = run_criterion(2);
        assert!(o.passed, "{}", o.detail);
        let o = run_criterion(7);
        assert!(o.passed, "{}", o.detail);
    }
}
