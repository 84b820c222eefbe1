mod common;

use common::{brute_sum, euler_product, ring_of, SpecGen};
use hodgebound_core::arith::FieldDesc;
use hodgebound_core::character::{CharacterSpec, RationalFunction, TameSpec, SIGN};
use hodgebound_core::lfunction::{character_sum, l_polynomial, newton_polygon_of_l};

const BUDGET: u128 = 10_000_000;

#[test]
fn histogram_sums_match_enumeration() {
    let mut g = SpecGen::new(11);
    for _ in 0..40 {
        let spec = g.spec();
        for k in 1..=3 {
            if (spec.q() as u128).pow(k as u32) > 800 {
                break;
            }
            assert_eq!(
                character_sum(&spec, k, BUDGET).unwrap(),
                brute_sum(&spec, k),
                "S_{k} of {spec:?}"
            );
        }
    }
}

#[test]
fn exp_of_sums_matches_euler_product() {
    let mut g = SpecGen::new(23);
    let mut checked = 0;
    while checked < 15 {
        let spec = g.spec();
        let Ok(l) = l_polynomial(&spec, 2_000) else { continue };
        let len = l.partial.len();
        let euler = euler_product(&spec, len);
        assert_eq!(euler, l.partial, "{spec:?}");
        checked += 1;
    }
}

fn kloosterman(k: &FieldDesc, c: &hodgebound_core::arith::FieldElement) -> CharacterSpec {
    let wild = RationalFunction::new(vec![c.clone(), k.zero(), k.one()], vec![k.zero(), k.one()]).unwrap();
    CharacterSpec::new(k.clone(), 1, 0, vec![wild], None).unwrap()
}

#[test]
fn kloosterman_l_function_is_one_plus_k_s_plus_q_s2() {
    for k in [
        FieldDesc::prime_field(3).unwrap(),
        FieldDesc::prime_field(5).unwrap(),
        FieldDesc::prime_field(7).unwrap(),
        FieldDesc::random(3, 2, 4).unwrap(),
    ] {
        for c in k.elements().filter(|c| !c.is_zero()) {
            let spec = kloosterman(&k, &c);
            let ring = ring_of(&spec);
            let mut sum = ring.zero();
            for x in k.elements().filter(|x| !x.is_zero()) {
                let y = k.add(&x, &k.div(&c, &x).unwrap());
                sum = ring.add(&sum, &ring.root_of_unity(k.trace(&y) as i64, 0));
            }
            let l = l_polynomial(&spec, BUDGET).unwrap();
            assert_eq!(l.coeffs, vec![ring.one(), sum, ring.from_int(spec.q() as i64)]);
            let np = newton_polygon_of_l(&spec, &l).unwrap();
            assert_eq!(np.slope_multiset().unwrap(), vec![0.into(), 1.into()]);
        }
    }
}

#[test]
fn gauss_sum_l_function_is_linear() {
    for k in [
        FieldDesc::prime_field(3).unwrap(),
        FieldDesc::prime_field(5).unwrap(),
        FieldDesc::random(3, 2, 9).unwrap(),
    ] {
        let t = RationalFunction::new(vec![k.zero(), k.one()], vec![k.one()]).unwrap();
        let q = k.order() as i64;
        for gamma in 1..q as u64 - 1 {
            let tame = TameSpec { f: t.clone(), gamma };
            let spec = CharacterSpec::new(k.clone(), 1, 0, vec![t.clone()], Some(tame)).unwrap();
            let ring = ring_of(&spec);
            let mut g = ring.zero();
            let mut x = k.one();
            for i in 0..q - 1 {
                g = ring.add(&g, &ring.root_of_unity(k.trace(&x) as i64, SIGN * gamma as i64 * i));
                x = k.mul(&x, spec.generator());
            }
            let l = l_polynomial(&spec, BUDGET).unwrap();
            assert_eq!(l.coeffs, vec![ring.one(), g], "Gamma = {gamma}");
        }
    }
}

#[test]
fn galois_conjugation_preserves_newton_polygon() {
    let mut g = SpecGen::new(5);
    let mut checked = 0;
    while checked < 12 {
        let spec = g.spec();
        let Ok(l) = l_polynomial(&spec, 200_000) else { continue };
        let conj = spec.galois_conjugate().unwrap();
        let lc = l_polynomial(&conj, 200_000).unwrap();
        assert_eq!(
            newton_polygon_of_l(&spec, &l).unwrap(),
            newton_polygon_of_l(&conj, &lc).unwrap()
        );
        checked += 1;
    }
}

#[test]
fn artin_schreier_equivalent_coordinates_give_the_same_l_function() {
    let mut g = SpecGen::new(17);
    let mut checked = 0;
    while checked < 10 {
        let spec = g.spec();
        if spec.n() != 1 {
            continue;
        }
        let Ok(l) = l_polynomial(&spec, 200_000) else { continue };
        let k = spec.field();
        let p = spec.p() as usize;
        // a_0 + h^p − h with h = c t^e, written over the denominator of a_0
        let (c, e) = (k.from_index(1 + checked as u128 % (k.order() - 1)), 1 + checked % 2);
        let a = &spec.wild()[0];
        let mut shift = vec![k.zero(); p * e + 1];
        shift[p * e] = k.pow(&c, p as u128);
        shift[e] = k.neg(&c);
        let den = a.den().to_vec();
        let mut num = a.num().to_vec();
        num.resize(num.len().max(shift.len() + den.len()), k.zero());
        for (i, s) in shift.iter().enumerate() {
            for (j, d) in den.iter().enumerate() {
                num[i + j] = k.add(&num[i + j], &k.mul(s, d));
            }
        }
        let moved = RationalFunction::new(num, den).unwrap();
        let other = CharacterSpec::new(k.clone(), 1, 0, vec![moved], spec.tame().cloned()).unwrap();
        let lo = l_polynomial(&other, 200_000).unwrap();
        assert_eq!(l.coeffs, lo.coeffs, "{spec:?}");
        checked += 1;
    }
}
