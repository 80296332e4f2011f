use std::f64::consts::PI;

use complex_susy::painleve::{
    asymptotic_decay, g_first_order, g_higher_order, piv_params, piv_residual, reconstruct_extremal, Scheme,
};
use complex_susy::susy::Chain;
use complex_susy::{Complex64, Error, Frequency, Grid, SeedSpec};
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sixth() -> Frequency {
    Frequency::new(PI / 6.0).unwrap()
}

fn figure_energies() -> [Complex64; 3] {
    [c(0.01, 1.0), c(1.0, 1.0), c(2.0, 1.0)]
}

fn general(eps: Complex64, k: usize) -> Chain {
    Chain::new(SeedSpec::general(eps, c(0.8, 0.5)).unwrap(), sixth(), k).unwrap()
}

/// The default window with the pole of -1/y at the origin cut out.
fn off_origin() -> Grid {
    Grid::full_line().filtered(|x| x.abs() >= 0.5).unwrap()
}

#[test]
fn rational_solution() {
    let f = sixth();
    let ch = Chain::new(SeedSpec::general(-0.5 * f.omega(), c(0.0, 0.0)).unwrap(), f, 1).unwrap();
    let cand = g_first_order(&ch, 1, &off_origin()).unwrap();
    assert!((cand.a() - c(-2.0, 0.0)).norm() < 1e-14);
    assert!((cand.b() - c(-2.0, 0.0)).norm() < 1e-14);
    let s = f.sqrt_omega();
    for &x in off_origin().points() {
        let g = cand.g(x).unwrap();
        assert!((g + 1.0 / (s * x)).norm() < 1e-10, "x = {x}");
    }
    let rep = piv_residual(&cand, &off_origin(), Scheme::Analytic).unwrap();
    assert!(rep.max_residual < 1e-12, "{:e}", rep.max_residual);
    assert!((asymptotic_decay(&cand, 10.0).unwrap() - 0.1).abs() < 1e-12);
    // The origin itself is a pole of g.
    assert!(matches!(g_first_order(&ch, 1, &Grid::full_line()), Err(Error::ZeroCrossing { .. })));
}

#[test]
fn ground_energy_seed_without_deformation_gives_no_second_solution() {
    let f = sixth();
    let ch = Chain::new(SeedSpec::ams(c(0.0, 0.0), &f).unwrap(), f, 1).unwrap();
    assert!(matches!(g_first_order(&ch, 2, &Grid::full_line()), Err(Error::DegenerateSolution)));
    assert!(matches!(g_first_order(&ch, 3, &Grid::full_line()), Err(Error::DegenerateTriple { index: 3 })));
}

#[test]
fn first_order_figure_candidates_certify() {
    let grid = Grid::full_line();
    for eps in figure_energies() {
        let cand = g_first_order(&general(eps, 1), 2, &grid).unwrap();
        let an = piv_residual(&cand, &grid, Scheme::Analytic).unwrap();
        let fd = piv_residual(&cand, &grid, Scheme::FiniteDifference).unwrap();
        assert!(an.passes() && fd.passes(), "eps = {eps}: {:e} {:e}", an.max_residual, fd.max_residual);
        assert!(an.excluded.iter().all(|&x| cand.g(x).unwrap().norm() < 1e-3));
        // Both schemes agree within the difference scheme's floor.
        assert!((an.max_residual - fd.max_residual).abs() < 100.0 * fd.max_residual.max(1e-8));
    }
}

#[test]
fn second_order_figure_candidates_certify() {
    let grid = Grid::full_line();
    for eps in figure_energies() {
        let cand = g_higher_order(&general(eps, 2), &grid).unwrap();
        assert_eq!(cand.role(), 2);
        let an = piv_residual(&cand, &grid, Scheme::Analytic).unwrap();
        let fd = piv_residual(&cand, &grid, Scheme::FiniteDifference).unwrap();
        assert!(an.passes() && fd.passes(), "eps = {eps}: {:e} {:e}", an.max_residual, fd.max_residual);
    }
}

#[test]
fn higher_order_g_reduces_to_the_created_state_form() {
    // g_2 is built on W(u_1) / W(u_1, u_2) = u_1 / W, the state created at eps_2.
    let grid = Grid::full_line();
    let ch = general(c(1.0, 1.0), 2);
    let cand = g_higher_order(&ch, &grid).unwrap();
    let s = ch.freq().sqrt_omega();
    for x in [-3.0, 0.2, 2.7] {
        let u1 = complex_susy::seed_jet(ch.base(), ch.freq(), x).unwrap();
        let w = complex_susy::susy::wronskian_jet(&ch, x).unwrap();
        let expect = -s * x - (u1.du / u1.u - w.dw / w.w) / s;
        assert!((cand.g(x).unwrap() - expect).norm() < 1e-10 * expect.norm().max(1.0));
    }
}

#[test]
fn reconstruction_of_the_generating_state() {
    let grid = Grid::full_line();
    let first = g_first_order(&general(c(2.0, 1.0), 1), 2, &grid).unwrap();
    let second = g_higher_order(&general(c(2.0, 1.0), 2), &grid).unwrap();
    for x in [-7.0, -2.2, 0.0, 1.3, 6.5] {
        assert!(reconstruct_extremal(&first, x).unwrap().norm() < 1e-12);
        assert!(reconstruct_extremal(&second, x).unwrap().norm() < 1e-6);
    }
    let bent = first.clone().with_g_scale(c(1.01, 0.0));
    assert!(reconstruct_extremal(&bent, 3.0).unwrap().norm() > 1e-3);
}

#[test]
fn negative_controls_are_caught() {
    let grid = Grid::full_line();
    let cands = [
        g_first_order(&general(c(2.0, 1.0), 1), 2, &grid).unwrap(),
        g_higher_order(&general(c(1.0, 1.0), 2), &grid).unwrap(),
    ];
    for cand in cands {
        let shifted_b = cand.clone().with_b(cand.b() + 1.0);
        assert!(piv_residual(&shifted_b, &grid, Scheme::Analytic).unwrap().max_residual > 1e-2);
        let scaled = cand.clone().with_g_scale(c(1.01, 0.0));
        assert!(piv_residual(&scaled, &grid, Scheme::Analytic).unwrap().max_residual > 1e-2);
    }
}

#[test]
fn decay_is_monotone_for_the_parametric_figure() {
    let cand = g_first_order(&general(c(2.0, 1.0), 1), 2, &Grid::full_line()).unwrap();
    let d: Vec<f64> = [6.0, 8.0, 10.0].iter().map(|&r| asymptotic_decay(&cand, r).unwrap()).collect();
    assert!(d[0] >= d[1] && d[1] >= d[2], "{d:?}");
}

#[test]
fn decay_follows_the_growing_seed_tail() {
    // For large |x| the growing seed behaves like x^(-1/2 - eps/omega) e^{omega x^2/2},
    // so g ~ -(1/2 + eps/omega) / (sqrt(omega) x).
    let f = sixth();
    let eps = c(2.0, 1.0);
    let cand = g_first_order(&general(eps, 1), 2, &Grid::full_line()).unwrap();
    let p = 0.5 + eps / f.omega();
    for x in [12.0, -12.0] {
        let lead = -p / (f.sqrt_omega() * x);
        assert!((cand.g(x).unwrap() - lead).norm() < 0.05 * lead.norm(), "x = {x}");
    }
}

#[test]
fn harmonic_limit_gives_real_solutions() {
    let f = Frequency::new(0.0).unwrap();
    let grid = Grid::full_line();
    for (eps, nu) in [(0.2, 0.3), (-0.4, -0.6), (0.45, 0.9)] {
        let spec = SeedSpec::general(c(eps, 0.0), c(nu, 0.0)).unwrap();
        let first = g_first_order(&Chain::new(spec, f, 1).unwrap(), 2, &grid).unwrap();
        let second = g_higher_order(&Chain::new(spec, f, 2).unwrap(), &grid).unwrap();
        for &x in grid.points().iter().step_by(10) {
            assert!(first.g(x).unwrap().im.abs() < 1e-10);
            assert!(second.g(x).unwrap().im.abs() < 1e-10);
        }
        assert!(asymptotic_decay(&second, 8.0).unwrap() < asymptotic_decay(&second, 2.0).unwrap());
    }
}

proptest! {
    #[test]
    fn params_ignore_the_order_of_the_other_two(
        e in prop::array::uniform3((-3.0f64..3.0, -3.0f64..3.0)),
        role in 1usize..=3,
    ) {
        let e = e.map(|(a, b)| c(a, b));
        let (a, b) = piv_params(e, role).unwrap();
        let mut swapped = e;
        let others: Vec<usize> = (0..3).filter(|&i| i != role - 1).collect();
        swapped.swap(others[0], others[1]);
        let (a2, b2) = piv_params(swapped, role).unwrap();
        prop_assert!((a - a2).norm() < 1e-14 && (b - b2).norm() < 1e-14);
    }
}
