use keller_core::characters::{enumerate_characters, CharValue};
use keller_core::mpnum::root_of_unity;
use keller_core::recursion::{error_e, residual};
use keller_core::{BigComplex, BigFloat, PrecisionContext};
use num_integer::Integer;
use proptest::prelude::*;

fn close(a: &BigFloat, b: &BigFloat, rel_bits: i64) -> bool {
    let d = a.sub_exact(b);
    match (d.magnitude_bits(), b.magnitude_bits()) {
        (None, _) => true,
        (Some(dm), Some(bm)) => dm <= bm - rel_bits,
        (Some(_), None) => false,
    }
}

fn close_c(a: &BigComplex, b: &BigComplex, ctx: &PrecisionContext, rel_bits: i64) -> bool {
    let scale = b.abs(ctx);
    let d = a.sub(b, ctx).abs(ctx);
    match (d.magnitude_bits(), scale.magnitude_bits()) {
        (None, _) => true,
        (Some(dm), Some(sm)) => dm <= sm - rel_bits,
        (Some(_), None) => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_ln_round_trip(x in 1e-6f64..1e6) {
        let ctx = PrecisionContext::new(256).unwrap();
        let v = BigFloat::from_f64(x).unwrap();
        let back = v.ln(&ctx).unwrap().exp(&ctx).unwrap();
        prop_assert!(close(&back, &v, 240));
    }

    #[test]
    fn ln_exp_round_trip(x in -200f64..200.0) {
        let ctx = PrecisionContext::new(256).unwrap();
        let v = BigFloat::from_f64(x).unwrap();
        let back = v.exp(&ctx).unwrap().ln(&ctx).unwrap();
        // absolute error, since ln(exp x) - x is measured against |x| near zero too
        let d = back.sub_exact(&v);
        prop_assert!(d.magnitude_bits().is_none_or(|m| m <= -230));
    }

    #[test]
    fn roots_of_unity_have_order_m(a in -50i64..50, m in 1u64..40) {
        let ctx = PrecisionContext::new(192).unwrap();
        let z = root_of_unity(a, m, &ctx).unwrap();
        let one = BigFloat::one();
        prop_assert!(close(&z.abs(&ctx), &one, 180));
        let zm = z.pow_int(m, &ctx).unwrap();
        prop_assert!(close_c(&zm, &BigComplex::one(), &ctx, 170));
        // multiplying by a quarter turn is the same as adding m/4 to the angle
        let w = root_of_unity(4 * a + m as i64, 4 * m, &ctx).unwrap();
        prop_assert!(close_c(&z.rotate_quarter(1), &w, &ctx, 180));
    }

    #[test]
    fn characters_are_completely_multiplicative(k in 1u64..120, m in 0i64..500, n in -500i64..500) {
        let group = enumerate_characters(k).unwrap();
        for chi in &group {
            prop_assert_eq!(chi.eval(m * n), chi.eval(m).mul(chi.eval(n)));
            prop_assert_eq!(chi.eval(n), chi.eval(n + k as i64));
        }
    }

    #[test]
    fn column_orthogonality(k in 2u64..60, n in 0u64..60) {
        // sum over chi of chi(n) is phi(k) when n = 1 mod k and zero otherwise
        let ctx = PrecisionContext::new(128).unwrap();
        let group = enumerate_characters(k).unwrap();
        let mut sum = BigComplex::zero();
        for chi in &group {
            sum = sum.add(&chi.eval_u64(n).to_complex(&ctx).unwrap(), &ctx);
        }
        let want = if n % k == 1 { group.len() as u64 } else { 0 };
        let d = sum.sub(&BigComplex::from_real(BigFloat::from_u64(want)), &ctx);
        prop_assert!(d.abs(&ctx).magnitude_bits().is_none_or(|b| b < -100));
        if n.gcd(&k) > 1 {
            prop_assert!(group.iter().all(|c| c.eval_u64(n) == CharValue::Zero));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn conjugate_character_conjugates_the_residual(k in 3u64..14, n in 1usize..6, s in 2u32..40) {
        let group = enumerate_characters(k).unwrap();
        let ctx = PrecisionContext::new(128).unwrap();
        for chi in &group {
            let conj_table: Vec<CharValue> = chi.table().iter().map(|v| v.conj()).collect();
            let bar = group.iter().find(|c| c.table() == conj_table.as_slice()).unwrap();
            let r = residual(n, s, chi).unwrap();
            let rb = residual(n, s, bar).unwrap();
            prop_assert!(close_c(&rb, &r.conj(), &ctx, 120));
            if r.is_zero() {
                continue;
            }
            prop_assert!(close(&error_e(n, s, bar).unwrap(), &error_e(n, s, chi).unwrap(), 80));
        }
    }
}
