use std::f64::consts::PI;

use complex_susy::grid::{Grid, FD_STEP};
use complex_susy::pha::{self, extremal_triple, number_operator_roots};
use complex_susy::susy::{self, Chain};
use complex_susy::{Complex64, Direction, Error, Frequency, SeedSpec};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn sixth() -> Frequency {
    Frequency::new(PI / 6.0).unwrap()
}

fn even_chain() -> Chain {
    let f = sixth();
    Chain::new(SeedSpec::bound_even(1, &f), f, 1).unwrap()
}

fn ams_pair() -> Chain {
    let f = sixth();
    Chain::new(SeedSpec::ams(c(0.9, 0.4), &f).unwrap(), f, 2).unwrap()
}

fn window() -> Grid {
    Grid::linspace(-6.0, 6.0, 241).unwrap()
}

#[test]
fn raising_is_proportional_to_the_next_state() {
    let cases = [(even_chain(), vec![0, 3, 4]), (ams_pair(), vec![0, 1, 2, 3])];
    for (ch, ns) in cases {
        for n in ns {
            let s = pha::ladder_proportionality_spread(&ch, Direction::Raise, n, &window()).unwrap();
            assert!(s < 1e-6, "k = {} n = {n}: {s:e}", ch.order());
        }
    }
}

#[test]
fn lowering_is_proportional_to_the_previous_state() {
    let s = pha::ladder_proportionality_spread(&ams_pair(), Direction::Lower, 3, &window()).unwrap();
    assert!(s < 1e-6);
    let s = pha::ladder_proportionality_spread(&even_chain(), Direction::Lower, 4, &window()).unwrap();
    assert!(s < 1e-6);
}

#[test]
fn ground_state_is_the_ladder_bottom() {
    assert!(matches!(
        pha::apply_natural_ladder(&even_chain(), Direction::Lower, 0, 0.5),
        Err(Error::LadderEdge { n: 0 })
    ));
}

#[test]
fn commutation_residuals() {
    let g = Grid::full_line();
    let r = pha::commutation_residual(&even_chain(), Direction::Raise, 3, &g).unwrap();
    assert!(r < 1e-5, "{r:e}");
    let r = pha::commutation_residual(&ams_pair(), Direction::Raise, 2, &g).unwrap();
    assert!(r < 1e-5, "{r:e}");
    let r = pha::commutation_residual(&ams_pair(), Direction::Lower, 2, &g).unwrap();
    assert!(r < 1e-5, "{r:e}");
}

#[test]
fn harmonic_ams_partner_is_a_pure_shift() {
    let f = Frequency::new(0.0).unwrap();
    let ch = Chain::new(SeedSpec::ams(c(0.0, 0.0), &f).unwrap(), f, 1).unwrap();
    for n in 0..4 {
        let r = pha::commutation_residual(&ch, Direction::Raise, n, &Grid::full_line()).unwrap();
        assert!(r < 1e-8, "n = {n}: {r:e}");
    }
}

#[test]
fn rescaled_residual_agrees_to_rounding() {
    for (ch, n) in [(even_chain(), 3), (ams_pair(), 2)] {
        let rep = pha::commutation_report(&ch, Direction::Raise, n, &Grid::full_line(), FD_STEP).unwrap();
        assert!((rep.residual - rep.rescaled).abs() < 1e-13, "{rep:?}");
    }
}

#[test]
fn extremal_states_are_eigenstates_at_their_energies() {
    let f = sixth();
    let chains = [
        Chain::new(SeedSpec::general(c(2.0, 1.0), c(0.8, 0.5)).unwrap(), f, 1).unwrap(),
        Chain::new(SeedSpec::general(c(1.0, 1.0), c(0.8, 0.5)).unwrap(), f, 2).unwrap(),
    ];
    // Entry 3 grows like e^{omega x^2/2} and, for k = 2, is a 3x3 Wronskian
    // ratio carrying ~1e-12 rounding. Stay inside |x| <= 4 and take the best
    // of a few steps, since the difference error only adds to the residual.
    let inner = Grid::linspace(-4.0, 4.0, 161).unwrap();
    for ch in chains {
        let t = extremal_triple(&ch);
        for i in 1..=3 {
            let entry = t.entry(i).unwrap();
            let e = entry.energy() * f.omega();
            let r = [FD_STEP, 2e-3, 4e-3]
                .iter()
                .map(|&h| susy::hamiltonian_residual(&ch, |x| entry.state().value(x), e, &inner, h).unwrap())
                .fold(f64::INFINITY, f64::min);
            assert!(r < 1e-6, "k = {} entry {i}: {r:e}", ch.order());
        }
    }
}

#[test]
fn extremal_energies_of_a_general_first_order_chain() {
    let f = sixth();
    let eps = c(2.0, 1.0);
    let ch = Chain::new(SeedSpec::general(eps, c(0.8, 0.5)).unwrap(), f, 1).unwrap();
    let e = extremal_triple(&ch).energies();
    let scaled = eps * Complex64::from_polar(1.0, -PI / 6.0);
    let expect = [c(0.5, 0.0), scaled, scaled + 1.0];
    for (a, b) in e.iter().zip(expect) {
        assert!((a - b).norm() < 1e-14);
    }
}

#[test]
fn number_operator_roots_are_a_set() {
    let f = Frequency::new(0.0).unwrap();
    let ch = Chain::new(SeedSpec::general(c(-0.5, 0.0), c(0.0, 0.0)).unwrap(), f, 1).unwrap();
    let mut roots: Vec<f64> = number_operator_roots(&ch).iter().map(|r| r.re).collect();
    roots.sort_by(f64::total_cmp);
    assert_eq!(roots, vec![-0.5, 0.5, 0.5]);
    let t = extremal_triple(&ch);
    assert_eq!(number_operator_roots(&ch), t.energies().to_vec());
    assert!(t.is_degenerate());
}
