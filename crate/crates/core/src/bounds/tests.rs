use super::*;
use proptest::prelude::*;

/// Exact `[n^{e g} + c n^{e(g-1)} + 2g n^{e(g-1/2)}]^k` for even `e`.
fn exact_weil(n: &Integer, e: u32, g: u32, k: u32) -> Integer {
    assert!(e.is_multiple_of(2));
    let base = n.clone().pow(e * (g - 1));
    let inner = (&base * n.clone().pow(e))
        + (&base * middle_coefficient(g))
        + (&base * n.clone().pow(e / 2)) * (2 * g);
    inner.pow(k)
}

fn log_rel_err(approx: &LogScaledReal, exact: &Integer) -> f64 {
    let exact_ln = LogScaledReal::from_integer(exact);
    let a = approx.ln().unwrap();
    let b = exact_ln.ln().unwrap();
    Float::with_val(256, a - b).abs().to_f64() / b.to_f64().abs()
}

#[test]
fn bu_values() {
    assert_eq!(bu(1, 2).unwrap(), 252);
    assert_eq!(bu(3, 2).unwrap(), 26244);
    assert_eq!(bu(2, 3).unwrap(), 269568);
    assert!(bu(0, 2).is_err());
}

#[test]
fn bu_has_explicit_factors() {
    for g in 2..6u32 {
        let fact = Integer::from(Integer::factorial(g));
        let three = Integer::from(Integer::u_pow_u(3, g));
        for m in 1..30 {
            let b = bu(m, g).unwrap();
            assert!(b.is_divisible(&fact) && b.is_divisible(&three));
        }
    }
}

#[test]
fn l_bound_small_case_matches_exact() {
    let l = l_bound_int(&Integer::from(2), 1, 2).unwrap();
    let exact = exact_weil(&Integer::from(2), 252, 2, 16);
    assert!(exact.to_string().len() < 10_000);
    assert!(log_rel_err(&l, &exact) < 1e-25);
    let log2 = l.log2().unwrap().to_f64();
    assert!((log2 - 8064.0).abs() / 8064.0 < 1e-6);
}

#[test]
fn l_bound_rejects_small_n() {
    assert!(l_bound_int(&Integer::from(1), 1, 2).is_err());
    assert!(l_bound(&LogScaledReal::from_u64(1), 1, 2).is_err());
    assert!(l_bound(&LogScaledReal::zero(), 1, 2).is_err());
}

#[test]
fn l_bound_large_case_leading_term() {
    let n = Integer::from(Integer::u_pow_u(3, 40));
    let l = l_bound_int(&n, 3, 2).unwrap();
    let lead = 16.0 * 26244.0 * 2.0 * 40.0 * 3f64.log10();
    let got = l.log10().unwrap().to_f64();
    assert!(got >= lead * (1.0 - 1e-15));
    assert!((got - lead) / lead < 1e-3);
}

#[test]
fn h_bound_is_l_bound_at_power() {
    let h = h_bound(3, 2, 40).unwrap();
    let l = l_bound_int(&Integer::from(Integer::u_pow_u(3, 40)), 3, 2).unwrap();
    assert!(Float::with_val(128, h.ln().unwrap() - l.ln().unwrap()).abs() < 1e-25 * l.ln().unwrap().to_f64());
    let h1 = h_bound(5, 2, 1).unwrap();
    let l1 = l_bound_int(&Integer::from(5), 5, 2).unwrap();
    assert_eq!(h1, l1);
    assert!(h_bound(1, 2, 1).is_err());
}

#[test]
fn hasse_weil_examples() {
    let v = hasse_weil_card_bound(&Integer::from(5), &Integer::from(1), 2).unwrap();
    let expect = 25.0 + 55.0 + 4.0 * 5f64.powf(1.5);
    assert!((v.to_float(64).to_f64() - expect).abs() < 1e-9);
    let v = hasse_weil_card_bound(&Integer::from(2), &Integer::from(1), 1).unwrap();
    assert!((v.to_float(64).to_f64() - (3.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
}

#[test]
fn hasse_weil_matches_exact_for_even_degree() {
    for (q, d, g) in [(3u64, 2u32, 2u32), (7, 4, 2), (5, 6, 3), (11, 10, 2)] {
        let v = hasse_weil_card_bound(&Integer::from(q), &Integer::from(d), g).unwrap();
        let exact = exact_weil(&Integer::from(q), d, g, 1);
        assert!(log_rel_err(&v, &exact) < 1e-25, "q={q} d={d} g={g}");
    }
}

#[test]
fn order_bound_leading_term() {
    let params = BoundParams::new(2, 40, 3, 1).unwrap();
    let direct = hasse_weil_card_bound(&Integer::from(3), &bu(3, 2).unwrap(), 2).unwrap();
    let n = order_bound(&params).unwrap();
    assert_eq!(n, direct);
    let lead = 26244.0 * 2.0 * 3f64.log10();
    let got = n.log10().unwrap().to_f64();
    assert!(got >= lead && (got - lead) / lead < 1e-3);
}

#[test]
fn degree_bound_values() {
    assert_eq!(degree_bound(&LogScaledReal::one(), 2).unwrap(), LogScaledReal::one());
    let v = degree_bound(&LogScaledReal::from_u64(2), 2).unwrap();
    assert!(log_rel_err(&v, &Integer::from(65536)) < 1e-30);
    assert!(degree_bound(&LogScaledReal::zero(), 2).is_err());
    assert!(degree_bound(&LogScaledReal::from_ln(Float::with_val(64, -1)), 2).is_err());
}

#[test]
fn main_exponent_small_values() {
    let zero = tate_voloch_exponent_main(&Float::new(64), &LogScaledReal::from_u64(10)).unwrap();
    assert_eq!(zero, LogScaledReal::one());
    let e = tate_voloch_exponent_main(&Float::with_val(64, 1), &LogScaledReal::from_u64(10)).unwrap();
    assert!((e.to_float(64).to_f64() - 11.0).abs() < 1e-15);
    assert!(tate_voloch_exponent_main(&Float::with_val(64, -1), &LogScaledReal::one()).is_err());
}

#[test]
fn sharp_exponent_never_exceeds_main() {
    let arak = Float::with_val(128, 0.6035392171627876);
    for f in [1u32, 2, 5, 40] {
        let params = BoundParams::new(2, 40, 3, f).unwrap();
        let sharp = tate_voloch_exponent_sharp(&params, &arak).unwrap();
        let d = Float::with_val(128, &arak * 80u32);
        let main = tate_voloch_exponent_main(&d, &h_bound(3, 2, 40).unwrap()).unwrap();
        assert!(sharp <= main);
    }
    let params = BoundParams::new(2, 40, 3, 1).unwrap();
    assert_eq!(tate_voloch_exponent_sharp(&params, &Float::new(64)).unwrap(), LogScaledReal::one());
}

#[test]
fn sharp_exponent_residue_degree_one() {
    let arak = Float::with_val(128, 0.6035392171627876);
    let params = BoundParams::new(2, 40, 3, 1).unwrap();
    let sharp = tate_voloch_exponent_sharp(&params, &arak).unwrap();
    let l = l_bound_int(&Integer::from(3), 3, 2).unwrap();
    let expect = LogScaledReal::one().add(&l.mul(&LogScaledReal::from_float(&Float::with_val(128, &arak * 80u32))));
    assert!(Float::with_val(128, sharp.ln().unwrap() - expect.ln().unwrap()).abs() < 1e-30);
}

#[test]
fn bound_params_validation() {
    assert!(BoundParams::new(2, 40, 3, 2).is_ok());
    assert!(BoundParams::new(1, 40, 3, 1).is_err());
    assert!(BoundParams::new(2, 0, 3, 1).is_err());
    assert!(BoundParams::new(2, 40, 4, 1).is_err());
    assert!(BoundParams::new(2, 2, 3, 3).is_err());
    assert!(BoundParams::with_q(2, 40, 3, Integer::from(12)).is_err());
    assert_eq!(BoundParams::with_q(2, 40, 3, Integer::from(81)).unwrap().residue_degree(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn l_bound_monotone(n in 2u64..200, m in 1u64..6, g in 2u32..4) {
        let a = l_bound_int(&Integer::from(n), m, g).unwrap();
        prop_assert!(l_bound_int(&Integer::from(n + 1), m, g).unwrap() > a);
        prop_assert!(l_bound_int(&Integer::from(n), m + 1, g).unwrap() > a);
    }

    #[test]
    fn hasse_weil_monotone(q in 2u64..500, d in 1u64..50, g in 1u32..5) {
        let v = hasse_weil_card_bound(&Integer::from(q), &Integer::from(d), g).unwrap();
        prop_assert!(hasse_weil_card_bound(&Integer::from(q + 1), &Integer::from(d), g).unwrap() > v);
        prop_assert!(hasse_weil_card_bound(&Integer::from(q), &Integer::from(d + 1), g).unwrap() > v);
        let lead = LogScaledReal::from_u64(q).powu(d * u64::from(g));
        let slack = Float::with_val(128, lead.ln().unwrap() * 1e-30);
        prop_assert!(*v.ln().unwrap() >= Float::with_val(128, lead.ln().unwrap() - slack));
    }

    #[test]
    fn degree_and_h_monotone(n in 1u64..10_000, deg in 1u32..8, m in 2u64..8) {
        let a = degree_bound(&LogScaledReal::from_u64(n), 2).unwrap();
        prop_assert!(degree_bound(&LogScaledReal::from_u64(n + 1), 2).unwrap() > a);
        prop_assert!(h_bound(m, 2, deg + 1).unwrap() > h_bound(m, 2, deg).unwrap());
    }

    #[test]
    fn exact_path_agreement(n in 2u64..6, g in 2u32..3) {
        // Bu_1 keeps the exact value below ten thousand digits.
        let l = l_bound_int(&Integer::from(n), 1, g).unwrap();
        let exact = exact_weil(&Integer::from(n), 252, g, 4 * g * g);
        prop_assert!(exact.to_string().len() < 10_000);
        prop_assert!(log_rel_err(&l, &exact) < 1e-25);
    }
}

