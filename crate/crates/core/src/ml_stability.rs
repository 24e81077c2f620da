//! Slope stability of the kernel bundle `M_L` of `H^0(L) (x) O_X -> L`,
//! `L = lH`, read off the projected stability space.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::certificate::{Certificate, CheckEntry, Relation, Sigma3, Verdict};
use crate::error::{Error, Result};
use crate::exact::{rat_from, Int, Rat};
use crate::mukai::{self, MukaiVector, NsClass, SurfaceData};
use crate::stabspace::{self, orientation, Point2, StabilityParam};

pub const ML_CONCLUSION: &str = "M_L is slope-stable";

/// The closed triangle `M L O` with the corners and `O' = (0, 1)` removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleRegion {
    pub m: Point2,
    pub l_pt: Point2,
    pub o_prime: Point2,
    pub o: Point2,
    pub h: Int,
    pub l: i64,
}

fn check_l(l: i64) -> Result<()> {
    if l < 1 {
        return Err(Error::Input(format!("l must be at least 1, got {l}")));
    }
    Ok(())
}

/// `h = l^2 d' + 1`.
pub fn ml_h(surface: &SurfaceData, l: i64) -> Int {
    BigInt::from(l * l) * surface.d_prime() + 1
}

pub fn structure_sheaf_vector(surface: &SurfaceData) -> MukaiVector {
    MukaiVector::new(Int::one(), NsClass::zero(surface.ns_rank()), Int::one())
}

/// `v(L) = (1, lH, h)`.
pub fn line_bundle_vector(surface: &SurfaceData, l: i64) -> Result<MukaiVector> {
    check_l(l)?;
    let c1 = surface.polarization().scale(&BigInt::from(l));
    Ok(MukaiVector::new(Int::one(), c1, ml_h(surface, l)))
}

/// `v(M_L) = (h + 1) v(O_X) - v(L) = (h, -lH, 1)`.
pub fn ml_vector(surface: &SurfaceData, l: i64) -> Result<MukaiVector> {
    check_l(l)?;
    let c1 = surface.polarization().scale(&BigInt::from(-l));
    Ok(MukaiVector::new(ml_h(surface, l), c1, Int::one()))
}

impl TriangleRegion {
    pub fn new(surface: &SurfaceData, l: i64) -> Result<Self> {
        check_l(l)?;
        let h = ml_h(surface, l);
        let hq = rat_from(&h);
        Ok(TriangleRegion {
            m: Point2::new(Rat::from_integer((-l).into()), hq.clone()),
            l_pt: Point2::new(Rat::from_integer(l.into()) / &hq, hq.recip()),
            o_prime: Point2::from_ints(0, 1),
            o: Point2::origin(),
            h,
            l,
        })
    }

    pub fn vertices(&self) -> [&Point2; 3] {
        [&self.m, &self.l_pt, &self.o]
    }

    pub fn contains(&self, p: &Point2) -> bool {
        if [&self.m, &self.l_pt, &self.o_prime, &self.o].contains(&p) {
            return false;
        }
        let sides = [
            orientation(&self.m, &self.l_pt, p),
            orientation(&self.l_pt, &self.o, p),
            orientation(&self.o, &self.m, p),
        ];
        let has_pos = sides.contains(&Ordering::Greater);
        let has_neg = sides.contains(&Ordering::Less);
        !(has_pos && has_neg)
    }
}

pub fn region_membership(surface: &SurfaceData, l: i64, p: &Point2) -> Result<bool> {
    Ok(TriangleRegion::new(surface, l)?.contains(p))
}

/// Bounded check that no root projects into the region; returns the
/// offending roots in enumeration order.
pub fn root_free_check(
    surface: &SurfaceData,
    l: i64,
    root_bound: u32,
) -> Result<(bool, Vec<MukaiVector>)> {
    let region = TriangleRegion::new(surface, l)?;
    let mut offending = Vec::new();
    for delta in stabspace::enumerate_roots(surface, root_bound)? {
        if delta.s.is_zero() {
            continue;
        }
        if region.contains(&stabspace::project_pr(surface, &delta)?) {
            offending.push(delta);
        }
    }
    Ok((offending.is_empty(), offending))
}

/// Spherical with negative discriminant: no wall ends at `Pr(v)`.
pub fn wall_ending_criterion(surface: &SurfaceData, v: &MukaiVector) -> Result<bool> {
    Ok(mukai::self_pairing(surface, v)? == BigInt::from(-2)
        && mukai::discriminant(surface, v)? < Rat::zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PhiOrdering {
    Phi1Less,
    Equal,
    Phi1Greater,
}

impl From<Ordering> for PhiOrdering {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => PhiOrdering::Phi1Less,
            Ordering::Equal => PhiOrdering::Equal,
            Ordering::Greater => PhiOrdering::Phi1Greater,
        }
    }
}

/// `(phi_1, phi_2)` with `phi_1 = (-1 - d'b^2 + d'w^2)/b` and
/// `phi_2 = (-1 - d'(b-l)^2 + d'w^2)/(b - l)`, for `0 < b < l`.
pub fn phi_values(surface: &SurfaceData, l: i64, b: &Rat, w_sq: &Rat) -> Result<(Rat, Rat)> {
    check_l(l)?;
    let lq = Rat::from_integer(l.into());
    if *b <= Rat::zero() || *b >= lq {
        return Err(Error::Input(format!("phi comparison needs 0 < b < {l}, got b = {b}")));
    }
    let d = rat_from(surface.d_prime());
    let dw = &d * w_sq;
    let bl = b - &lq;
    let phi1 = (-Rat::one() - &d * b * b + &dw) / b;
    let phi2 = (-Rat::one() - &d * &bl * &bl + &dw) / &bl;
    Ok((phi1, phi2))
}

pub fn phi_comparator(surface: &SurfaceData, l: i64, b: &Rat, w_sq: &Rat) -> Result<PhiOrdering> {
    let (p1, p2) = phi_values(surface, l, b, w_sq)?;
    Ok(p1.cmp(&p2).into())
}

/// `(h + 1)^2 (y^2 - d' x^2) - y`, evaluated as written; zero would put `p`
/// on the outer ellipse through `M`.
pub fn large_ellipse_value(surface: &SurfaceData, h: &Int, p: &Point2) -> Rat {
    let hp1 = rat_from(h) + Rat::one();
    &hp1 * &hp1 * (&p.y * &p.y - rat_from(surface.d_prime()) * &p.x * &p.x) - &p.y
}

/// The stability condition whose image is the midpoint of `O'L`.
pub fn sigma3(surface: &SurfaceData, l: i64) -> Result<StabilityParam> {
    let region = TriangleRegion::new(surface, l)?;
    let mid = region.o_prime.lerp(&region.l_pt, &BigRational::new(1.into(), 2.into()));
    stabspace::k_inverse(surface, &mid)
}

pub fn certify_ml(surface: &SurfaceData, l: i64, root_bound: u32) -> Result<Certificate> {
    let region = TriangleRegion::new(surface, l)?;
    let v_o = structure_sheaf_vector(surface);
    let v_l = line_bundle_vector(surface, l)?;
    let v_m = ml_vector(surface, l)?;
    let minus_two = Rat::from_integer((-2).into());
    let zero = Rat::zero();
    let mut checks = Vec::new();

    for (name, v) in [("(1a) <v(O_X),v(O_X)> = -2", &v_o), ("(1b) <v(L),v(L)> = -2", &v_l), ("(1c) <v(M_L),v(M_L)> = -2", &v_m)] {
        checks.push(CheckEntry::new(
            name,
            rat_from(&mukai::self_pairing(surface, v)?),
            Relation::Eq,
            minus_two.clone(),
        ));
    }

    let (_, offending) = root_free_check(surface, l, root_bound)?;
    checks.push(CheckEntry::new(
        "(2) roots projecting into S",
        Rat::from_integer(offending.len().into()),
        Relation::Eq,
        zero.clone(),
    ));

    checks.push(CheckEntry::new(
        "(3a) O' on ellipse d'x^2 = y - y^2",
        stabspace::ellipse_value(surface, &region.o_prime),
        Relation::Eq,
        zero.clone(),
    ));
    checks.push(CheckEntry::new(
        "(3b) L on ellipse d'x^2 = y - y^2",
        stabspace::ellipse_value(surface, &region.l_pt),
        Relation::Eq,
        zero.clone(),
    ));

    let s3 = sigma3(surface, l)?;
    let k3 = stabspace::k_map(surface, &s3);
    let on_open_segment = stabspace::collinear(&region.o_prime, &region.l_pt, &k3)
        && k3 != region.o_prime
        && k3 != region.l_pt
        && stabspace::Segment2 {
            a: region.o_prime.clone(),
            b: stabspace::SegmentEnd::Point(region.l_pt.clone()),
        }
        .contains(&k3);
    checks.push(CheckEntry::boolean("(4a) k(sigma3) on open segment O'L", on_open_segment));
    checks.push(CheckEntry::boolean(
        "(4b) sigma3: O_X[1] and L have the same phase",
        stabspace::same_phase(surface, &s3, &mukai::shift(&v_o), &v_l)?,
    ));

    let (p1, p2) = phi_values(surface, l, &s3.b, &s3.w_sq)?;
    checks.push(CheckEntry::new("(5a) phi1 = phi2 at w3", p1, Relation::Eq, p2));
    let half = BigRational::new(1.into(), 2.into());
    let (p1, p2) = phi_values(surface, l, &s3.b, &(&s3.w_sq * &half))?;
    checks.push(CheckEntry::new("(5b) phi1 < phi2 at w^2 = w3^2/2", p1, Relation::Lt, p2));
    let (p1, p2) = phi_values(surface, l, &s3.b, &(&s3.w_sq * Rat::from_integer(2.into())))?;
    checks.push(CheckEntry::new("(5c) phi1 > phi2 at w^2 = 2 w3^2", p1, Relation::Gt, p2));

    let delta_m = mukai::discriminant(surface, &v_m)?;
    checks.push(CheckEntry::new(
        "(6) Delta_H(M_L) < 0, no wall ends at M",
        delta_m.clone(),
        Relation::Lt,
        zero,
    ));

    let first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    let verdict = if first_failure.is_none() { Verdict::Pass } else { Verdict::Fail };
    let params = vec![
        ("h".into(), rat_from(&region.h)),
        ("l".into(), Rat::from_integer(l.into())),
        ("M_x".into(), region.m.x.clone()),
        ("M_y".into(), region.m.y.clone()),
        ("L_x".into(), region.l_pt.x.clone()),
        ("L_y".into(), region.l_pt.y.clone()),
        ("k_sigma3_x".into(), k3.x.clone()),
        ("k_sigma3_y".into(), k3.y.clone()),
        ("delta_H_ML".into(), delta_m),
        ("large_ellipse_at_M".into(), large_ellipse_value(surface, &region.h, &region.m)),
    ];
    Ok(Certificate {
        subject: v_m,
        surface: surface.clone(),
        checks,
        params,
        sigma3: Some(Sigma3::from(&s3)),
        root_bound: Some(root_bound),
        conclusion: (verdict == Verdict::Pass).then(|| ML_CONCLUSION.to_string()),
        verdict,
        first_failure,
    })
}
