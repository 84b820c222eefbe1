use hodgebound_core::arith::FieldDesc;
use hodgebound_core::character::{CharacterSpec, RationalFunction, TameSpec};
use hodgebound_core::dwork::{growth_scan, trace_formula_check, DworkOptions};
use hodgebound_core::Error;

fn rf(k: &FieldDesc, num: &[i64], den: &[i64]) -> RationalFunction {
    let lift = |v: &[i64]| v.iter().map(|&c| k.from_int(c)).collect();
    RationalFunction::new(lift(num), lift(den)).unwrap()
}

fn spec(p: u32, wild: &[(&[i64], &[i64])], tame: Option<(&[i64], u64)>) -> CharacterSpec {
    let k = FieldDesc::prime_field(p).unwrap();
    let w: Vec<_> = wild.iter().map(|(a, b)| rf(&k, a, b)).collect();
    let t = tame.map(|(f, gamma)| TameSpec { f: rf(&k, f, &[1]), gamma });
    CharacterSpec::new(k, w.len(), 0, w, t).unwrap()
}

fn quick() -> DworkOptions {
    DworkOptions {
        size: 30,
        digits: 8,
        s_degree: 3,
        ..DworkOptions::default()
    }
}

#[test]
fn witt_length_two_congruence() {
    let s = spec(3, &[(&[0, 1], &[1]), (&[0, 0, 1], &[1])], None);
    let r = trace_formula_check(&s, &quick()).unwrap();
    assert!(r.congruent && r.np_match, "precision {}", r.precision);
    assert!(r.precision >= 6);
}

#[test]
fn wild_pole_at_zero_with_tame_twist() {
    let s = spec(3, &[(&[1], &[0, 1])], Some((&[0, 1], 1)));
    let r = trace_formula_check(&s, &quick()).unwrap();
    assert!(r.holds());
    let g = growth_scan(&s, &quick()).unwrap();
    assert!(g.holds() && g.entries_checked > 0);
}

#[test]
fn quadratic_over_f5_meets_growth_bounds() {
    let s = spec(5, &[(&[0, 0, 1], &[1])], Some((&[0, 1], 2)));
    let g = growth_scan(&s, &quick()).unwrap();
    assert_eq!((g.swan, g.holds()), (2, true));
}

#[test]
fn wild_at_both_ends_is_unsupported() {
    let s = spec(3, &[(&[1, 0, 2], &[0, 1])], None);
    assert!(matches!(trace_formula_check(&s, &quick()), Err(Error::Unsupported(_))));
}

#[test]
fn larger_fields_are_unsupported() {
    let k = FieldDesc::random(3, 2, 1).unwrap();
    let s = CharacterSpec::new(k.clone(), 1, 0, vec![rf(&k, &[0, 1], &[1])], None).unwrap();
    assert!(matches!(trace_formula_check(&s, &quick()), Err(Error::Unsupported(_))));
}
