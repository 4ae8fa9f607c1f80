use approx::assert_abs_diff_eq;
use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::bits::{bits_from_mask, format_bits, parse_bits};
use crate::constructions::{
    build_det_mod, build_det_partialmod, build_nobdd_noto_fingerprint, build_quantum_partialmod, counter,
};
use crate::error::Error;
use crate::functions::{FunctionName, FunctionSpec};

fn bits(s: &str) -> Vec<bool> {
    parse_bits(s).unwrap()
}

fn mod_spec(k: usize, n: usize) -> FunctionSpec {
    FunctionSpec::new(FunctionName::Mod, Some(k), n).unwrap()
}

#[test]
fn simulate_examples() {
    let parity = counter(2, 4, [0]).unwrap();
    assert_eq!(parity.simulate(&bits("1111")).unwrap(), 1.0);
    let q = build_quantum_partialmod(0, 2).unwrap();
    assert_abs_diff_eq!(q.simulate(&bits("11")).unwrap(), 1.0, epsilon = 1e-12);
    assert_abs_diff_eq!(q.simulate(&bits("10")).unwrap(), 0.0, epsilon = 1e-12);
    assert!(matches!(
        parity.simulate(&bits("111")),
        Err(Error::LengthMismatch { expected: 4, got: 3 })
    ));
}

#[test]
fn computes_examples() {
    let parity = counter(2, 4, [0]).unwrap();
    assert!(parity
        .computes(&mod_spec(2, 4), AcceptanceMode::Deterministic)
        .unwrap()
        .is_yes());

    let q = build_quantum_partialmod(1, 8).unwrap();
    let f = FunctionSpec::new(FunctionName::PartialMod, Some(1), 8).unwrap();
    assert!(q.computes(&f, AcceptanceMode::Exact).unwrap().is_yes());

    let three = counter(3, 4, [0]).unwrap();
    match three
        .computes(&mod_spec(2, 4), AcceptanceMode::Deterministic)
        .unwrap()
    {
        Verdict::No(cx) => {
            assert_eq!(format_bits(&cx.input), "1100");
            assert_eq!(cx.acceptance, 0.0);
        }
        Verdict::Yes => panic!("mod-3 counter must not compute MOD^2_4"),
    }
}

#[test]
fn computes_rejects_mismatches() {
    let q = build_quantum_partialmod(1, 8).unwrap();
    let f = FunctionSpec::new(FunctionName::PartialMod, Some(1), 6).unwrap();
    assert!(matches!(
        q.computes(&f, AcceptanceMode::Exact),
        Err(Error::ArityMismatch { .. })
    ));
    let nd = build_nobdd_noto_fingerprint(4, 6).unwrap();
    let g = FunctionSpec::new(FunctionName::NotOk, Some(4), 6).unwrap();
    assert!(matches!(
        nd.computes(&g, AcceptanceMode::Exact),
        Err(Error::ModeMismatch { .. })
    ));
    let wide = counter(2, 25, [0]).unwrap();
    let h = FunctionSpec::new(FunctionName::Mod, Some(2), 25).unwrap();
    assert!(matches!(
        wide.computes(&h, AcceptanceMode::Deterministic),
        Err(Error::CapExceeded { .. })
    ));
    assert!(wide
        .computes_by_count_class(&h, AcceptanceMode::Deterministic)
        .unwrap()
        .is_yes());
}

#[test]
fn width_examples() {
    let p = build_det_mod(3, 6).unwrap();
    let w = p.width();
    assert_eq!(w.max, 3);
    assert_eq!(w.per_level, vec![3; 7]);
    assert_eq!(w.reachable.as_deref(), Some(&[1, 2, 3, 3, 3, 3, 3][..]));

    let always = counter(1, 5, [0]).unwrap();
    assert_eq!(always.width().max, 1);
    assert_eq!(always.simulate(&bits("01101")).unwrap(), 1.0);

    let nd = build_nobdd_noto_fingerprint(4, 6).unwrap();
    assert_eq!(nd.width().max_excluding_source(), 5);
    assert_eq!(nd.width().per_level[0], 1);
}

#[test]
fn subset_construction_examples() {
    // width-1 program with an empty relation on 1
    let one = ObddProgram::stable(
        ProgramKind::Nondeterministic,
        VariableOrder::natural(3),
        LevelTransition::new(
            Transition::Relation {
                targets: vec![vec![0]],
                width: 1,
            },
            Transition::Relation {
                targets: vec![vec![]],
                width: 1,
            },
        ),
        0,
        [0],
    )
    .unwrap();
    let det = one.determinize(SUBSET_CAP).unwrap();
    assert!(det.width().max <= 2);
    for mask in 0..8 {
        let x = bits_from_mask(mask, 3);
        assert_eq!(det.simulate(&x).unwrap(), one.simulate(&x).unwrap());
    }

    let nd = build_nobdd_noto_fingerprint(4, 6).unwrap();
    let det = nd.determinize(SUBSET_CAP).unwrap();
    let f = FunctionSpec::new(FunctionName::NotOk, Some(4), 6).unwrap();
    assert!(det.computes(&f, AcceptanceMode::Deterministic).unwrap().is_yes());
    assert!(matches!(nd.determinize(2), Err(Error::CapExceeded { .. })));
}

#[test]
fn stable_chain_examples() {
    let p = build_det_partialmod(1, 8).unwrap();
    let shift = p.stable_symbol_chain(true).unwrap();
    let expected = DMatrix::from_fn(4, 4, |r, c| if r == (c + 1) % 4 { 1.0 } else { 0.0 });
    assert_eq!(shift, expected);
    assert_eq!(p.stable_symbol_chain(false).unwrap(), DMatrix::identity(4, 4));

    let ragged = crate::constructions::build_det_eqs(4, 8).unwrap();
    assert!(matches!(ragged.stable_symbol_chain(true), Err(Error::NotStable)));
}

#[test]
fn lift_and_view_preserve_acceptance() {
    let p = build_det_mod(3, 7).unwrap();
    let lifted = p.lift_to_probabilistic().unwrap();
    let nd = p.as_nondeterministic().unwrap();
    for mask in 0..1 << 7 {
        let x = bits_from_mask(mask, 7);
        let d = p.simulate(&x).unwrap();
        assert_eq!(lifted.simulate(&x).unwrap(), d);
        assert_eq!(nd.simulate(&x).unwrap(), d);
    }
}

// random programs

fn stochastic(rows: usize, cols: usize) -> impl Strategy<Value = DMatrix<f64>> {
    proptest::collection::vec(0.0f64..1.0, rows * cols).prop_map(move |raw| {
        let mut m = DMatrix::from_vec(rows, cols, raw);
        for mut c in m.column_iter_mut() {
            c[0] += 1e-3;
            let s: f64 = c.sum();
            c /= s;
        }
        m
    })
}

fn unitary(w: usize) -> impl Strategy<Value = DMatrix<Complex64>> {
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), w * w).prop_map(move |raw| {
        let a = DMatrix::from_iterator(w, w, raw.into_iter().map(|(re, im)| Complex64::new(re, im)))
            + DMatrix::identity(w, w) * Complex64::new(3.0, 0.0);
        a.qr().q()
    })
}

fn widths(n: usize) -> impl Strategy<Value = Vec<usize>> {
    proptest::collection::vec(1usize..=4, n + 1)
}

fn probabilistic_program() -> impl Strategy<Value = ObddProgram> {
    (1usize..=6)
        .prop_flat_map(widths)
        .prop_flat_map(|w| {
            let levels: Vec<_> = w
                .windows(2)
                .map(|p| (stochastic(p[1], p[0]), stochastic(p[1], p[0])))
                .collect();
            let last = *w.last().unwrap();
            (
                Just(w),
                levels,
                proptest::collection::btree_set(0..last, 0..=last),
            )
        })
        .prop_map(|(w, levels, accept)| {
            let n = w.len() - 1;
            let levels = levels
                .into_iter()
                .map(|(a, b)| LevelTransition::new(Transition::Stochastic(a), Transition::Stochastic(b)))
                .collect();
            ObddProgram::new(
                ProgramKind::Probabilistic,
                VariableOrder::natural(n),
                levels,
                0,
                accept,
                false,
            )
            .unwrap()
        })
}

fn quantum_program() -> impl Strategy<Value = ObddProgram> {
    (1usize..=4, 1usize..=6)
        .prop_flat_map(|(w, n)| {
            let levels = proptest::collection::vec((unitary(w), unitary(w)), n);
            (Just(w), levels, proptest::collection::btree_set(0..w, 0..=w))
        })
        .prop_map(|(_, levels, accept)| {
            let n = levels.len();
            let levels = levels
                .into_iter()
                .map(|(a, b)| LevelTransition::new(Transition::Unitary(a), Transition::Unitary(b)))
                .collect();
            ObddProgram::new(
                ProgramKind::Quantum,
                VariableOrder::natural(n),
                levels,
                0,
                accept,
                false,
            )
            .unwrap()
        })
}

fn relation(rows: usize, cols: usize) -> impl Strategy<Value = Transition> {
    proptest::collection::vec(proptest::collection::btree_set(0..rows, 0..=rows.min(3)), cols).prop_map(
        move |sets| Transition::Relation {
            targets: sets.into_iter().map(|s| s.into_iter().collect()).collect(),
            width: rows,
        },
    )
}

fn nondet_program() -> impl Strategy<Value = ObddProgram> {
    (1usize..=8)
        .prop_flat_map(|n| proptest::collection::vec(1usize..=6, n + 1))
        .prop_flat_map(|mut w| {
            w[0] = 1;
            let levels: Vec<_> = w
                .windows(2)
                .map(|p| (relation(p[1], p[0]), relation(p[1], p[0])))
                .collect();
            let last = *w.last().unwrap();
            let order = Just((0..w.len() - 1).collect::<Vec<_>>()).prop_shuffle();
            (levels, order, proptest::collection::btree_set(0..last, 0..=last))
        })
        .prop_map(|(levels, order, accept)| {
            let levels = levels
                .into_iter()
                .map(|(a, b)| LevelTransition::new(a, b))
                .collect();
            ObddProgram::new(
                ProgramKind::Nondeterministic,
                VariableOrder::new(order).unwrap(),
                levels,
                0,
                accept,
                false,
            )
            .unwrap()
        })
}

fn det_program() -> impl Strategy<Value = ObddProgram> {
    (1usize..=8)
        .prop_flat_map(|n| proptest::collection::vec(1usize..=5, n + 1))
        .prop_flat_map(|w| {
            let map = |rows: usize, cols: usize| {
                proptest::collection::vec(0..rows, cols)
                    .prop_map(move |targets| Transition::Map { targets, width: rows })
            };
            let levels: Vec<_> = w.windows(2).map(|p| (map(p[1], p[0]), map(p[1], p[0]))).collect();
            let last = *w.last().unwrap();
            (
                Just(w[0]),
                levels,
                proptest::collection::btree_set(0..last, 0..=last),
            )
        })
        .prop_flat_map(|(w0, levels, accept)| (0..w0, Just(levels), Just(accept)))
        .prop_map(|(initial, levels, accept)| {
            let n = levels.len();
            let levels = levels
                .into_iter()
                .map(|(a, b)| LevelTransition::new(a, b))
                .collect();
            ObddProgram::new(
                ProgramKind::Deterministic,
                VariableOrder::natural(n),
                levels,
                initial,
                accept,
                false,
            )
            .unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn probabilistic_mass_is_preserved(p in probabilistic_program(), mask in any::<u64>()) {
        let x = bits_from_mask(mask, p.n());
        for v in p.trace(&x).unwrap() {
            prop_assert!(v.is_normalized(), "{}", v.total());
        }
        let a = p.simulate(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn quantum_norm_is_preserved(p in quantum_program(), mask in any::<u64>()) {
        prop_assert!(p.validate().is_ok());
        let x = bits_from_mask(mask, p.n());
        for v in p.trace(&x).unwrap() {
            prop_assert!((v.total() - 1.0).abs() <= 1e-9);
        }
        let a = p.simulate(&x).unwrap();
        prop_assert!((0.0..=1.0).contains(&a));
    }

    #[test]
    fn subset_construction_agrees(p in nondet_program()) {
        let det = p.determinize(SUBSET_CAP).unwrap();
        prop_assert!(det.width().max <= 1 << 6);
        for mask in 0..1u64 << p.n() {
            let x = bits_from_mask(mask, p.n());
            prop_assert_eq!(det.simulate(&x).unwrap(), p.simulate(&x).unwrap());
        }
    }

    #[test]
    fn deterministic_is_a_special_probabilistic(p in det_program()) {
        let lifted = p.lift_to_probabilistic().unwrap();
        for mask in 0..1u64 << p.n() {
            let x = bits_from_mask(mask, p.n());
            let d = p.simulate(&x).unwrap();
            prop_assert!(d == 0.0 || d == 1.0);
            prop_assert_eq!(lifted.simulate(&x).unwrap(), d);
        }
    }
}
