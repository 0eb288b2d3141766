//! Independent oracles: a cofactor-expansion determinant and preimage
//! counts from resultants, all in test-local dense arithmetic.

#[path = "support/preimage.rs"]
mod preimage;

use preimage::{curve_preimage_count, surface_preimage_count};
use ratinv::curveinv::{self, build_sylvester, PlaneCurveParam};
use ratinv::exactpoly::{parse, rings, Polynomial, Rational};
use ratinv::movsurf::{search_candidate, SearchOptions};
use ratinv::polymat::PolyMatrix;
use ratinv::surfinv::{surface_properness, SurfaceParam, Verdict};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<Polynomial>], ring: &ratinv::exactpoly::Ring) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(ring);
    }
    let mut acc = Polynomial::zero(ring);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let sub: Vec<Vec<Polynomial>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let term = &m[0][j] * &cofactor_det(&sub, ring);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

#[test]
fn circle_sylvester_determinant_by_cofactors() {
    let c = |s: &str| parse(s, &rings::curve_param()).unwrap();
    let param = PlaneCurveParam::new(c("2*t"), c("1+t^2"), c("1-t^2"), c("1+t^2")).unwrap();
    let s = build_sylvester(&param);
    let xy = rings::curve_xy();
    let oracle = cofactor_det(&s.to_rows(), &xy);
    assert_eq!(oracle, parse("4*(x^2+y^2-1)", &xy).unwrap());
    assert_eq!(s.det_fraction_free().unwrap(), oracle);
}

#[test]
fn bareiss_agrees_with_cofactors_on_fixed_matrices() {
    let r = rings::x();
    let rows = [
        ["X1 + 2", "X2*X3", "1/3", "0", "X4"],
        ["X2", "X1 - X4", "X3^2", "-1", "0"],
        ["0", "5", "X1*X2 - X3", "X4 - 2/7", "X2"],
        ["X3 + X4", "0", "X1", "X2^2", "-X1"],
        ["1", "X2", "0", "X3", "X4 + X1"],
    ];
    let m: Vec<Vec<Polynomial>> = rows.iter().map(|row| row.iter().map(|s| parse(s, &r).unwrap()).collect()).collect();
    let pm = PolyMatrix::from_rows(&r, m.clone()).unwrap();
    assert_eq!(pm.det_fraction_free().unwrap(), cofactor_det(&m, &r));
    for k in 1..=4 {
        let sub: Vec<Vec<Polynomial>> = m[..k].iter().map(|row| row[..k].to_vec()).collect();
        let sm = PolyMatrix::from_rows(&r, sub.clone()).unwrap();
        assert_eq!(sm.det_fraction_free().unwrap(), cofactor_det(&sub, &r));
    }
}

const CUBIC: [&str; 4] = [
    "t1^2*t2+2*t2^3+t1^2*t3+4*t1*t2*t3+4*t2^2*t3+3*t1*t3^2+2*t2*t3^2+2*t3^3",
    "-t1^3-2*t1*t2^2-2*t1^2*t3-t1*t2*t3+t1*t3^2-2*t2*t3^2+2*t3^3",
    "-t1^3-2*t1^2*t2-3*t1*t2^2-3*t1^2*t3-3*t1*t2*t3+2*t2^2*t3-2*t1*t3^2-2*t2*t3^2",
    "t1^3+t1^2*t2+t2^3+t1^2*t3+t2^2*t3-t1*t3^2-t2*t3^2-t3^3",
];

fn cubic() -> SurfaceParam {
    SurfaceParam::new(CUBIC.map(|s| parse(s, &rings::t()).unwrap())).unwrap()
}

fn squared_cubic() -> SurfaceParam {
    let r = rings::t();
    let sq = ["t1^2", "t2^2", "t3^2"].map(|s| parse(s, &r).unwrap());
    let coords = CUBIC.map(|s| {
        parse(s, &r).unwrap().substitute([("t1", &sq[0]), ("t2", &sq[1]), ("t3", &sq[2])], &r).unwrap()
    });
    SurfaceParam::new(coords).unwrap()
}

#[test]
fn curve_preimage_oracle_separates_circle_from_squared_circle() {
    let t0 = q(3, 7);
    assert_eq!(curve_preimage_count(["2*t", "1+t^2", "1-t^2", "1+t^2"], &t0), 1);
    let squared = ["2*t^2", "1+t^4", "1-t^4", "1+t^4"];
    assert_eq!(curve_preimage_count(squared, &t0), 2);

    let c = |s: &str| parse(s, &rings::curve_param()).unwrap();
    let param = PlaneCurveParam::new(c(squared[0]), c(squared[1]), c(squared[2]), c(squared[3])).unwrap();
    let r = curveinv::curve_properness(&param).unwrap();
    assert!(!r.proper);
    assert!(!r.gcd_of_minors.is_constant());
}

#[test]
fn surface_preimage_oracle_on_cubic() {
    assert_eq!(surface_preimage_count(&cubic(), [q(2, 3), q(-5, 4)], &q(7, 11)), 1);
}

#[test]
fn squared_cubic_has_four_preimages_and_is_not_certified_proper() {
    let param = squared_cubic();
    assert_eq!(surface_preimage_count(&param, [q(2, 3), q(-5, 4)], &q(7, 11)), 4);

    let found = search_candidate(&param, &SearchOptions { m_max: 4, ..Default::default() }).unwrap();
    let report = surface_properness(&found.matrix, &param).unwrap();
    assert!(!report.gcd_of_minors.is_constant());
    assert_ne!(report.verdict, Verdict::Proper);
    assert!(report.gcd_divides_determinant);
    assert!(report.expansion_identity_holds);
}
