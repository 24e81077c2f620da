//! Certificates for slope stability of restrictions `F|_C`, `C in |H|`.
//!
//! For a slope-stable bundle `F = (r, C, s)` the argument moves from
//! `sigma_1` on the vertical line `b_1 = C.H/(2d'r)` (where `F` is stable)
//! to the point `sigma_3 = (b_1 - 1/2, w_3)` where `F` and `F(-H)[1]` share
//! a phase, and checks that no wall can be hit on the way by testing two
//! auxiliary vertical lines `b_4`, `b_5` built from Bezout solutions of
//! `m r - n c = -1`. Every hypothesis becomes one exact ledger line.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::certificate::{Certificate, CheckEntry, Relation, Verdict};
use crate::error::{Error, Result};
use crate::exact::{is_integral, rat_from, Int, Rat};
use crate::mukai::{self, MukaiVector, SurfaceData};
use crate::stabspace::{self, Point2};

pub const RESTRICTION_CONCLUSION: &str = "F|_C slope-stable for all C in |H|";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BezoutSign {
    PositiveN,
    NegativeN,
}

/// The solution `(m, n)` of `m r - n c = -1` with `0 < n < r`
/// (`PositiveN`) or `-r < n < 0` (`NegativeN`).
pub fn bezout_solution(r: &Int, c: &Rat, sign: BezoutSign) -> Result<(Int, Int)> {
    if r < &BigInt::from(2) {
        return Err(Error::Input(format!("Bezout equation needs r >= 2, got {r}")));
    }
    if !is_integral(c) {
        return Err(Error::ConditionStar(format!("c1.H/H^2 = {c} is not an integer")));
    }
    let c = c.to_integer();
    let eg = r.extended_gcd(&c);
    if !eg.gcd.abs().is_one() {
        return Err(Error::Inapplicable(format!(
            "rank {r} and c = {c} are not coprime (gcd {})",
            eg.gcd.abs()
        )));
    }
    // r x + c y = g with g = +-1, so m = -g x, n = g y solves m r - n c = -1.
    let n0 = &eg.gcd * &eg.y;
    let mut n = n0.mod_floor(r);
    if sign == BezoutSign::NegativeN {
        n -= r;
    }
    let m = (&n * &c - BigInt::one()).div_floor(r);
    debug_assert_eq!(&m * r - &n * &c, BigInt::from(-1));
    Ok((m, n))
}

fn rank_at_least(v: &MukaiVector, k: i64) -> Result<()> {
    if v.r < BigInt::from(k) {
        return Err(Error::Input(format!("rank {} is below {k}", v.r)));
    }
    Ok(())
}

/// `d' w_b^2` of the point on the line through `Pr(F)` and `Pr(F(-H))`
/// lying on `y = x/b`.
pub fn segment_w_sq(surface: &SurfaceData, v_f: &MukaiVector, b: &Rat) -> Result<Rat> {
    rank_at_least(v_f, 1)?;
    let d = rat_from(surface.d_prime());
    let r = rat_from(&v_f.r);
    let ch_r = rat_from(&surface.dot_h(&v_f.c1)?) / &r;
    let two = Rat::from_integer(2.into());
    Ok(-(&d * b * b) + b * (-&d + &ch_r) + &ch_r / &two
        - (&ch_r * &ch_r) / (two * &d)
        + rat_from(&v_f.s) / r)
}

/// `(b_3, d' w_3^2) = (b_1 - 1/2, d'/4 - Delta_H / (2 r^2))`.
pub fn critical_sigma3(surface: &SurfaceData, v_f: &MukaiVector) -> Result<(Rat, Rat)> {
    rank_at_least(v_f, 2)?;
    let b1 = stabspace::vertical_line_of(surface, v_f)?;
    let b3 = b1 - BigRational::new(1.into(), 2.into());
    let r = rat_from(&v_f.r);
    let value = rat_from(surface.d_prime()) / Rat::from_integer(4.into())
        - mukai::discriminant(surface, v_f)? / (Rat::from_integer(2.into()) * &r * &r);
    Ok((b3, value))
}

/// `d'/(r(r-1)) - d'/(r^2 (r-1)^2) - Delta_H / (2 r^2)`, the lower bound
/// on `d' w^2` where a wall could cross the lines `b_4` or `b_5`.
pub fn wall_bound(surface: &SurfaceData, v_f: &MukaiVector) -> Result<Rat> {
    rank_at_least(v_f, 2)?;
    let d = rat_from(surface.d_prime());
    let r = rat_from(&v_f.r);
    let rm1 = &r - Rat::one();
    let delta = mukai::discriminant(surface, v_f)?;
    Ok(&d / (&r * &rm1) - &d / (&r * &r * &rm1 * &rm1)
        - delta / (Rat::from_integer(2.into()) * &r * &r))
}

/// Left side of the main inequality: `H^2 + H^2 (r-2)/(r-1)^2 - 2 r^2`.
pub fn main_inequality_lhs(surface: &SurfaceData, r: &Int) -> Result<Rat> {
    if r < &BigInt::from(2) {
        return Err(Error::Input(format!("main inequality needs rank >= 2, got {r}")));
    }
    let h2 = rat_from(&surface.h_squared());
    let r = rat_from(r);
    let rm1 = &r - Rat::one();
    let two = Rat::from_integer(2.into());
    Ok(&h2 + &h2 * (&r - &two) / (&rm1 * &rm1) - two * &r * &r)
}

/// Runs every hypothesis of the restriction theorem as a ledger line.
///
/// Checks (1)-(3) are the theorem's standing hypotheses; the first of them
/// that fails ends the ledger with verdict `Inapplicable`. Checks (4)-(8)
/// are all evaluated and a failure among them gives `Fail`.
pub fn certify_restriction(surface: &SurfaceData, v_f: &MukaiVector) -> Result<Certificate> {
    surface.check(v_f)?;
    let mut cert = Certificate {
        subject: v_f.clone(),
        surface: surface.clone(),
        checks: Vec::new(),
        params: Vec::new(),
        sigma3: None,
        root_bound: None,
        verdict: Verdict::Pass,
        first_failure: None,
        conclusion: None,
    };
    let delta = mukai::discriminant(surface, v_f)?;
    let c = stabspace::reduced_slope(surface, v_f)?;
    let one = Rat::one();

    let rank = CheckEntry::new("(1) rank > 1", rat_from(&v_f.r), Relation::Gt, one.clone());
    if !push_hypothesis(&mut cert, rank) {
        cert.params.push(("delta_H".into(), delta));
        return Ok(cert);
    }
    let star = CheckEntry::new(
        "(2) condition (*): denominator of c = c1.H/H^2",
        rat_from(c.denom()),
        Relation::Eq,
        one.clone(),
    );
    if !push_hypothesis(&mut cert, star) {
        cert.params.push(("delta_H".into(), delta));
        return Ok(cert);
    }
    let g = v_f.r.gcd(&c.to_integer());
    let coprime = CheckEntry::new("(3) gcd(rank, c) = 1", rat_from(&g), Relation::Eq, one.clone());
    if !push_hypothesis(&mut cert, coprime) {
        cert.params.push(("delta_H".into(), delta));
        return Ok(cert);
    }

    let r = rat_from(&v_f.r);
    let b1 = stabspace::vertical_line_of(surface, v_f)?;
    let b2 = &b1 - &one;
    let (b3, w3) = critical_sigma3(surface, v_f)?;
    let bound = wall_bound(surface, v_f)?;
    let (m0, n0) = bezout_solution(&v_f.r, &c, BezoutSign::PositiveN)?;
    let (m1, n1) = bezout_solution(&v_f.r, &c, BezoutSign::NegativeN)?;
    let b4 = BigRational::new(m0.clone(), n0.clone());
    let b5 = BigRational::new(m1.clone(), n1.clone()) - &one;

    let tail = [
        CheckEntry::new(
            "(4) H^2 + H^2(r-2)/(r-1)^2 - 2r^2 > Delta_H",
            main_inequality_lhs(surface, &v_f.r)?,
            Relation::Gt,
            delta.clone(),
        ),
        CheckEntry::new(
            "(5) d'w3^2 = d'/4 - Delta_H/(2r^2) > 1",
            w3.clone(),
            Relation::Gt,
            one.clone(),
        ),
        CheckEntry::new(
            "(6) d'/(r(r-1)) - d'/(r^2(r-1)^2) - Delta_H/(2r^2) > 1",
            bound.clone(),
            Relation::Gt,
            one.clone(),
        ),
        CheckEntry::new(
            "(7) b4 = m0/n0 = b1 - 1/(r n0)",
            b4.clone(),
            Relation::Eq,
            &b1 - (&r * rat_from(&n0)).recip(),
        ),
        CheckEntry::new(
            "(8) b5 = m1/n1 - 1 = b1 - 1 - 1/(r n1)",
            b5.clone(),
            Relation::Eq,
            &b1 - &one - (&r * rat_from(&n1)).recip(),
        ),
    ];
    for check in tail {
        if !check.passed && cert.first_failure.is_none() {
            cert.first_failure = Some(check.name.clone());
            cert.verdict = Verdict::Fail;
        }
        cert.checks.push(check);
    }

    cert.params = vec![
        ("b1".into(), b1),
        ("b2".into(), b2),
        ("b3".into(), b3),
        ("w3_sq_times_dprime".into(), w3),
        ("m0".into(), rat_from(&m0)),
        ("n0".into(), rat_from(&n0)),
        ("b4".into(), b4),
        ("w4_bound".into(), bound.clone()),
        ("m1".into(), rat_from(&m1)),
        ("n1".into(), rat_from(&n1)),
        ("b5".into(), b5),
        ("w5_bound".into(), bound),
        ("delta_H".into(), delta),
    ];
    if cert.verdict == Verdict::Pass {
        cert.conclusion = Some(RESTRICTION_CONCLUSION.into());
    }
    Ok(cert)
}

/// Appends a hypothesis check; on failure marks the certificate inapplicable.
fn push_hypothesis(cert: &mut Certificate, check: CheckEntry) -> bool {
    let ok = check.passed;
    if !ok {
        cert.verdict = Verdict::Inapplicable;
        cert.first_failure = Some(check.name.clone());
    }
    cert.checks.push(check);
    ok
}

/// Slope on the curve of a torsion sheaf `(0, C, s)` supported on a curve
/// in `|H|`: `(g - 1)(2s/(C.H) + 1)`.
pub fn restricted_slope(surface: &SurfaceData, v_torsion: &MukaiVector) -> Result<Rat> {
    if !v_torsion.r.is_zero() {
        return Err(Error::Input(format!(
            "restricted slope needs a rank-zero class, got rank {}",
            v_torsion.r
        )));
    }
    let ch = surface.dot_h(&v_torsion.c1)?;
    if !ch.is_positive() {
        return Err(Error::Input(format!("restricted slope needs c1.H > 0, got {ch}")));
    }
    let g_minus_1 = rat_from(surface.d_prime());
    Ok(g_minus_1 * (BigRational::new(BigInt::from(2) * &v_torsion.s, ch) + Rat::one()))
}

/// Geometric route to `d' w_b^2`: intersect the line through `Pr(F)` and
/// `Pr(F(-H))` with `y = x/b` and read off `1/y - d' b^2`.
pub fn segment_w_sq_by_intersection(
    surface: &SurfaceData,
    v_f: &MukaiVector,
    b: &Rat,
) -> Result<Option<Rat>> {
    let twisted = mukai::twist(surface, v_f, &BigInt::from(-1))?;
    let p = stabspace::project_pr(surface, v_f)?;
    let q = stabspace::project_pr(surface, &twisted)?;
    Ok(stabspace::intersect_with_b_line(&p, &q, b).and_then(|pt: Point2| {
        if pt.y.is_zero() {
            None
        } else {
            Some(pt.y.recip() - rat_from(surface.d_prime()) * b * b)
        }
    }))
}
