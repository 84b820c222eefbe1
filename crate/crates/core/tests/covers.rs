use hodgebound_core::arith::{make_extension, FieldDesc};
use hodgebound_core::character::{CharacterSpec, RationalFunction};
use hodgebound_core::lfunction::cover::{
    character_product, corollary_polygon, cover_breaks, cover_point_count, integer_newton_polygon,
    zeta_numerator_from_counts,
};
use hodgebound_core::Rational;
use num_bigint::BigInt;

const BUDGET: u128 = 10_000_000;

fn poly(k: &FieldDesc, c: &[i64]) -> RationalFunction {
    RationalFunction::new(c.iter().map(|&v| k.from_int(v)).collect(), vec![k.one()]).unwrap()
}

/// #{(x, y) : y^3 − y = x^2} over F_{3^k}, plus the single point at ∞.
fn count_genus_one(k: usize) -> u64 {
    let (big, _) = make_extension(&FieldDesc::prime_field(3).unwrap(), k).unwrap();
    let mut n = 1;
    for x in big.elements() {
        let rhs = big.square(&x);
        for y in big.elements() {
            if big.sub(&big.pow(&y, 3), &y) == rhs {
                n += 1;
            }
        }
    }
    n
}

#[test]
fn z3_cover_with_break_two_is_supersingular() {
    let k = FieldDesc::prime_field(3).unwrap();
    let spec = CharacterSpec::new(k.clone(), 1, 0, vec![poly(&k, &[0, 0, 1])], None).unwrap();
    let breaks = cover_breaks(&spec).unwrap();
    let bound = corollary_polygon(&breaks, &[]).unwrap();
    let half = Rational::new(1, 2);
    assert_eq!(bound.slope_multiset().unwrap(), vec![half, half]);

    let n1 = count_genus_one(1);
    let direct: Vec<BigInt> = vec![1.into(), BigInt::from(n1 as i64 - 4), 3.into()];
    assert_eq!(character_product(&spec, BUDGET).unwrap(), direct);
    let np = integer_newton_polygon(&direct, 3, 1).unwrap();
    assert_eq!(np.slope_multiset().unwrap(), vec![half, half]);
    // the numerator also predicts N_2
    let (a1, q) = (n1 as i64 - 4, 3i64);
    let power_sum_2 = a1 * a1 - 2 * q;
    assert_eq!(count_genus_one(2) as i64, 9 + 1 - power_sum_2);
}

/// Points of the Z/9 cover F(y) − y = (x, 0) over F_{3^k}: in W_2 with p = 3,
/// (y0^3, y1^3) − (y0, y1) = (y0^3 − y0, y1^3 − y1 + y0^4(y0^3 − y0)), so
/// each y0 fixes x and y1 solves y1^3 − y1 = −y0^4(y0^3 − y0); one point
/// lies over ∞.
fn count_z9(k: usize) -> u64 {
    let (big, _) = make_extension(&FieldDesc::prime_field(3).unwrap(), k).unwrap();
    let mut n = 1;
    for y0 in big.elements() {
        let as0 = big.sub(&big.pow(&y0, 3), &y0);
        let target = big.neg(&big.mul(&big.pow(&y0, 4), &as0));
        // y^3 − y = c has 3 roots when Tr c = 0 and none otherwise
        if big.trace(&target) == 0 {
            n += 3;
        }
    }
    n
}

#[test]
fn z9_cover_product_matches_zeta_and_bound() {
    let k = FieldDesc::prime_field(3).unwrap();
    let spec = CharacterSpec::new(k.clone(), 2, 0, vec![poly(&k, &[0, 1]), poly(&k, &[0])], None).unwrap();
    let product = character_product(&spec, BUDGET).unwrap();
    let genus = (product.len() - 1) / 2;
    assert_eq!(genus, 6);
    let counts: Vec<u64> = (1..=genus).map(count_z9).collect();
    assert_eq!(zeta_numerator_from_counts(3, genus, &counts).unwrap(), product);
    let library: Vec<u64> = (1..=genus).map(|k| cover_point_count(&spec, k).unwrap()).collect();
    assert_eq!(library, counts);

    let breaks = cover_breaks(&spec).unwrap();
    assert_eq!(breaks.points[0].breaks, vec![1, 3]);
    let bound = corollary_polygon(&breaks, &[]).unwrap();
    let np = integer_newton_polygon(&product, 3, 1).unwrap();
    let report = np.lies_above(&bound);
    assert!(report.holds, "margin {}", report.min_margin);
    assert_eq!(np.endpoint(), bound.endpoint());
}
