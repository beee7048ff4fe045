//! Randomized invariants over arbitrary (not just seeded-uniform) inputs.

use num_complex::Complex64;
use proptest::prelude::*;
use zakweyl::grid::phase;
use zakweyl::heisenberg::{cocycle, pairing, GroupElement, PhasePoint};
use zakweyl::io;
use zakweyl::weyl::{symbol, weyl, PhaseFunction};
use zakweyl::{zak, GridSpec, OperatorMatrix, Signal};

fn grid() -> GridSpec {
    GridSpec::new(8, 4, 2).unwrap()
}

fn steps() -> impl Strategy<Value = i64> {
    -64i64..64
}

fn unit_scalar() -> impl Strategy<Value = Complex64> {
    (0.0..std::f64::consts::TAU).prop_map(|t| Complex64::from_polar(1.0, t))
}

fn element() -> impl Strategy<Value = GroupElement> {
    (steps(), steps(), unit_scalar())
        .prop_map(|(x, y, z)| GroupElement::new(PhasePoint::new(grid(), x, y), z).unwrap())
}

fn signal() -> impl Strategy<Value = Signal> {
    prop::collection::vec((-100.0f64..100.0, -100.0f64..100.0), 32).prop_map(|pairs| {
        let values = pairs
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        Signal::from_values(grid(), values).unwrap()
    })
}

proptest! {
    #[test]
    fn group_law_is_associative(g in element(), h in element(), k in element()) {
        let left = g.compose(&h).unwrap().compose(&k).unwrap();
        let right = g.compose(&h.compose(&k).unwrap()).unwrap();
        prop_assert!(left.approx_eq(&right, 1e-12));
    }

    #[test]
    fn inverses_cancel(g in element()) {
        let e = g.compose(&g.inverse()).unwrap();
        prop_assert!(e.approx_eq(&GroupElement::identity(grid()), 1e-12));
    }

    #[test]
    fn canonical_representatives_share_the_matrix(g in element()) {
        prop_assert_eq!(g.matrix().max_abs_diff(&g.canonical().matrix()), 0.0);
    }

    #[test]
    fn pairing_is_a_bicharacter(
        wx in steps(), wy in steps(), vx in steps(), vy in steps(), ux in steps(), uy in steps()
    ) {
        let w = PhasePoint::new(grid(), wx, wy);
        let v = PhasePoint::new(grid(), vx, vy);
        let u = PhasePoint::new(grid(), ux, uy);
        let joint = pairing(&w.add(&v).unwrap(), &u).unwrap();
        let split = pairing(&w, &u).unwrap() * pairing(&v, &u).unwrap();
        prop_assert!((joint - split).norm() < 1e-12);
    }

    #[test]
    fn representation_is_projective(
        wx in steps(), wy in steps(), vx in steps(), vy in steps()
    ) {
        let w = PhasePoint::new(grid(), wx, wy);
        let v = PhasePoint::new(grid(), vx, vy);
        let product = w.lift().matrix().matmul(&v.lift().matrix()).unwrap();
        let twisted = w
            .add(&v)
            .unwrap()
            .lift()
            .matrix()
            .scaled(cocycle(&w, &v).unwrap());
        prop_assert!(product.max_abs_diff(&twisted) < 1e-12);
    }

    #[test]
    fn phases_are_exact_on_the_unit_circle(num in -1000i64..1000, den in 1i64..60) {
        let p = phase(num, den);
        prop_assert!((p.norm() - 1.0).abs() < 1e-15);
        prop_assert_eq!(p, phase(num + 2 * den, den));
        prop_assert!((p * phase(-num, den) - Complex64::new(1.0, 0.0)).norm() < 4e-15);
    }

    #[test]
    fn zak_round_trips_arbitrary_signals(s in signal()) {
        let z = zak::forward(&s);
        prop_assert!((z.weighted_norm() - s.norm()).abs() <= 1e-12 * s.norm().max(1.0));
        let back = zak::inverse(&z);
        prop_assert!(back.max_abs_diff(&s) < 1e-10);
    }

    #[test]
    fn sigma_extensions_compose(s in signal(), s1 in steps(), s2 in steps()) {
        let z = zak::forward(&s);
        let one_hop = z.extend_steps(0, s1 + s2);
        let two_hops = z.extend_steps(0, s2).extend_steps(0, s1);
        prop_assert!(one_hop.max_abs_diff(&two_hops) < 1e-12);
    }

    #[test]
    fn representation_commutes_with_composition_on_signals(
        g in element(), h in element(), s in signal()
    ) {
        let joint = g.compose(&h).unwrap().apply(&s).unwrap();
        let nested = g.apply(&h.apply(&s).unwrap()).unwrap();
        prop_assert!(joint.max_abs_diff(&nested) < 1e-10 * s.max_abs().max(1.0));
    }

    #[test]
    fn floats_survive_the_text_format_bitwise(bits in any::<u64>()) {
        let x = f64::from_bits(bits);
        prop_assume!(x.is_finite());
        let back: f64 = io::fmt_f64(x).parse().unwrap();
        prop_assert_eq!(back.to_bits(), x.to_bits());
    }

    #[test]
    fn complex_cells_survive_the_text_format_bitwise(
        re_bits in any::<u64>(), im_bits in any::<u64>()
    ) {
        let z = Complex64::new(f64::from_bits(re_bits), f64::from_bits(im_bits));
        prop_assume!(z.re.is_finite() && z.im.is_finite());
        let back = io::parse_complex_cell(&io::fmt_complex_cell(z), 1).unwrap();
        prop_assert_eq!(back.re.to_bits(), z.re.to_bits());
        prop_assert_eq!(back.im.to_bits(), z.im.to_bits());
    }

    #[test]
    fn grid_validation_accepts_exactly_the_legal_triples(
        m in 0usize..40, l in 0usize..10, a in 0usize..10
    ) {
        let legal = a >= 2 && l >= 2 && m >= 2 * a && m % a == 0;
        prop_assert_eq!(GridSpec::new(m, l, a).is_ok(), legal);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quantization_inverts_the_symbol_for_arbitrary_matrices(
        entries in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1024)
    ) {
        let values: Vec<Complex64> = entries
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let x = OperatorMatrix::from_entries(grid(), values).unwrap();
        let back = weyl(&symbol(&x));
        prop_assert!(back.max_abs_diff(&x) <= 1e-11 * x.max_abs().max(1.0));
    }

    #[test]
    fn symbol_inverts_the_quantization_for_arbitrary_functions(
        entries in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 1024)
    ) {
        let values: Vec<Complex64> = entries
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        let f = PhaseFunction::from_values(grid(), values).unwrap();
        let back = symbol(&weyl(&f));
        prop_assert!(back.max_abs_diff(&f) <= 1e-11 * f.max_abs().max(1.0));
    }
}
