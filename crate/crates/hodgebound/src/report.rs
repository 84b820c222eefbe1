//! JSON and TSV renderings of polygons, L-polynomials and reports.

use hodgebound_core::character::{RamificationDatum, Point};
use hodgebound_core::cyclotomic::{CycloInt, CycloRing, PadicRing, PadicValuation};
use hodgebound_core::dwork::{GrowthScan, TraceFormulaReport};
use hodgebound_core::lfunction::{LPolynomial, VerificationReport};
use hodgebound_core::polygon::{DominationReport, RationalPolygon};
use hodgebound_core::Rational;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub fn rational(r: &Rational) -> Value {
    json!([r.numer(), r.denom()])
}

/// `{"vertices": [[xn,xd,yn,yd],…], "slopes": [[n,d,mult],…]}`; a segment
/// of fractional length is written `[n,d,len_num,len_den]`.
pub fn polygon(p: &RationalPolygon) -> Value {
    let vertices: Vec<Value> = p
        .vertices()
        .iter()
        .map(|(x, y)| json!([x.numer(), x.denom(), y.numer(), y.denom()]))
        .collect();
    let slopes: Vec<Value> = p
        .slopes()
        .iter()
        .map(|(s, len)| {
            if len.is_integer() {
                json!([s.numer(), s.denom(), len.numer()])
            } else {
                json!([s.numer(), s.denom(), len.numer(), len.denom()])
            }
        })
        .collect();
    json!({ "vertices": vertices, "slopes": slopes })
}

/// Vertex table with header `x_num x_den y_num y_den`, tab separated.
pub fn polygon_tsv(p: &RationalPolygon) -> String {
    let mut out = String::from("x_num\tx_den\ty_num\ty_den\n");
    for (x, y) in p.vertices() {
        out.push_str(&format!("{}\t{}\t{}\t{}\n", x.numer(), x.denom(), y.numer(), y.denom()));
    }
    out
}

fn big(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

/// Coordinates on the ring's power basis; integers that overflow i64 are
/// written as decimal strings.
pub fn cyclo(z: &CycloInt) -> Value {
    Value::Array(z.coeffs().iter().map(big).collect())
}

pub fn ring(r: &CycloRing) -> Value {
    json!({ "p": r.p(), "n": r.n(), "tame_order": r.tame_order(), "dim": r.phi() })
}

pub fn point(q: &Point) -> Value {
    match q {
        Point::Infinity => json!("inf"),
        Point::Finite(c) => json!(c.coeffs()),
    }
}

pub fn datum(d: &RamificationDatum) -> Value {
    json!({ "point": point(&d.point), "swan": d.swan, "eps": d.eps, "omega": d.omega })
}

pub fn domination(d: &DominationReport) -> Value {
    json!({
        "holds": d.holds,
        "min_margin": rational(&d.min_margin),
        "witness_x": rational(&d.witness_x),
        "compared_to": rational(&d.compared_to),
    })
}

pub fn l_polynomial(l: &LPolynomial) -> Value {
    json!({
        "ring": ring(&l.ring),
        "degree": l.degree,
        "coeffs": l.coeffs.iter().map(cyclo).collect::<Vec<_>>(),
        "removed": l.removed.iter().map(point).collect::<Vec<_>>(),
        "restored": l.restored.iter().map(|(q, f)| json!({
            "point": point(q), "wild": f.wild, "tame": f.tame,
        })).collect::<Vec<_>>(),
        "ramification": l.data.iter().map(datum).collect::<Vec<_>>(),
    })
}

pub fn verification(r: &VerificationReport) -> Value {
    let duality = r.duality.as_ref().map(|d| {
        json!({
            "np_dual": d.np_dual,
            "hp_dual": d.hp_dual,
            "np_inverse": polygon(&d.np_inverse),
            "hp_inverse": polygon(&d.hp_inverse),
        })
    });
    json!({
        "holds": r.all_hold(),
        "np": polygon(&r.np),
        "hp": polygon(&r.hp),
        "theorem": domination(&r.theorem),
        "endpoints_match": r.endpoints_match,
        "slopes_in_unit_interval": r.slopes_in_unit_interval,
        "degree": r.degree,
        "l_degree": r.l_degree,
        "degree_match": r.degree_match,
        "remark_endpoint": r.remark_endpoint,
        "remark_matches": r.remark_matches,
        "omega": rational(&r.omega),
        "omega_integral": r.omega.is_integer(),
        "duality": duality,
    })
}

fn valuation(v: PadicValuation) -> Value {
    match v {
        PadicValuation::Finite(r) => json!({ "exact": rational(&r) }),
        PadicValuation::AtLeast(r) => json!({ "at_least": rational(&r) }),
    }
}

fn padic_coeffs(ring: &PadicRing, cs: &[hodgebound_core::cyclotomic::CycloPadic]) -> Value {
    Value::Array(
        cs.iter()
            .map(|c| json!({ "digits": c.coeffs(), "valuation": valuation(ring.valuation(c)) }))
            .collect(),
    )
}

pub fn trace_formula(r: &TraceFormulaReport) -> Value {
    json!({
        "holds": r.holds(),
        "lhs_coeffs": padic_coeffs(&r.ring, &r.lhs),
        "rhs_coeffs": padic_coeffs(&r.ring, &r.rhs),
        "l_coeffs": padic_coeffs(&r.ring, &r.l_coeffs),
        "modulus": r.ring.modulus_int(),
        "precision_achieved": r.precision,
        "congruent": r.congruent,
        "np_fredholm": polygon(&r.np_fredholm),
        "np_l": polygon(&r.np_l),
        "np_match": r.np_match,
    })
}

pub fn growth(g: &GrowthScan) -> Value {
    json!({
        "holds": g.holds(),
        "swan": g.swan,
        "omega": g.omega,
        "columns": g.columns,
        "entries_checked": g.entries_checked,
        "inconclusive": g.inconclusive,
        "violations": g.violations.iter().map(|v| json!({
            "row": v.row,
            "column": v.column,
            "valuation": rational(&v.valuation),
            "bound": v.bound.as_ref().map(rational),
        })).collect::<Vec<_>>(),
    })
}
