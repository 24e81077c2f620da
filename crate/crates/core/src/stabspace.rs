//! The two-dimensional model `U_H(X)` of the `H`-slice of stability space.
//!
//! A stability condition `sigma_(bH, wH)` is stored as `(b, w^2)`; every
//! formula below only ever needs `w^2`, so all predicates stay rational.
//! Points of the model live in the plane region `y > d' x^2`; a class
//! `(r, C, s)` with `s != 0` projects to `Pr = (c/s, r/s)` where
//! `c = C.H / H^2`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{parse_rat, rat_from, rat_str, Int, Rat};
use crate::mukai::{self, MukaiVector, NsClass, SurfaceData};

/// A point of the projection plane; serializes as `["x", "y"]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "[String; 2]", try_from = "[String; 2]")]
pub struct Point2 {
    pub x: Rat,
    pub y: Rat,
}

impl From<Point2> for [String; 2] {
    fn from(p: Point2) -> Self {
        [p.x.to_string(), p.y.to_string()]
    }
}

impl TryFrom<[String; 2]> for Point2 {
    type Error = Error;

    fn try_from(xy: [String; 2]) -> Result<Self> {
        Ok(Point2::new(parse_rat(&xy[0])?, parse_rat(&xy[1])?))
    }
}

impl Point2 {
    pub fn new(x: Rat, y: Rat) -> Self {
        Point2 { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point2::new(
            BigRational::from_integer(x.into()),
            BigRational::from_integer(y.into()),
        )
    }

    pub fn origin() -> Self {
        Point2::new(Rat::zero(), Rat::zero())
    }

    /// `self + t (other - self)`.
    pub fn lerp(&self, other: &Point2, t: &Rat) -> Point2 {
        Point2::new(
            &self.x + t * (&other.x - &self.x),
            &self.y + t * (&other.y - &self.y),
        )
    }
}

/// `(b, w^2)` with `w^2 > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityParam {
    #[serde(with = "rat_str")]
    pub b: Rat,
    #[serde(with = "rat_str")]
    pub w_sq: Rat,
}

impl StabilityParam {
    pub fn new(b: Rat, w_sq: Rat) -> Result<Self> {
        if !w_sq.is_positive() {
            return Err(Error::Input(format!("w^2 must be positive, got {w_sq}")));
        }
        Ok(StabilityParam { b, w_sq })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SegmentEnd {
    Point(Point2),
    #[serde(with = "vertical_infinity")]
    VerticalInfinity,
}

mod vertical_infinity {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str("vertical_infinity")
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<(), D::Error> {
        let s = String::deserialize(d)?;
        if s == "vertical_infinity" {
            Ok(())
        } else {
            Err(serde::de::Error::custom("expected \"vertical_infinity\""))
        }
    }
}

/// A closed segment, or a closed vertical ray upward from `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment2 {
    pub a: Point2,
    pub b: SegmentEnd,
}

impl Segment2 {
    /// Membership with boundary points counted as on the segment.
    pub fn contains(&self, p: &Point2) -> bool {
        match &self.b {
            SegmentEnd::VerticalInfinity => p.x == self.a.x && p.y >= self.a.y,
            SegmentEnd::Point(q) => {
                if orientation(&self.a, q, p) != Ordering::Equal {
                    return false;
                }
                let (xlo, xhi) = minmax(&self.a.x, &q.x);
                let (ylo, yhi) = minmax(&self.a.y, &q.y);
                xlo <= &p.x && &p.x <= xhi && ylo <= &p.y && &p.y <= yhi
            }
        }
    }
}

fn minmax<'a>(a: &'a Rat, b: &'a Rat) -> (&'a Rat, &'a Rat) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Sign of the cross product `(q - p) x (r - p)`.
pub fn orientation(p: &Point2, q: &Point2, r: &Point2) -> Ordering {
    let det = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    det.cmp(&Rat::zero())
}

/// `c = C.H / H^2`.
pub fn reduced_slope(surface: &SurfaceData, v: &MukaiVector) -> Result<Rat> {
    Ok(BigRational::new(surface.dot_h(&v.c1)?, surface.h_squared()))
}

/// `P1(r, C, s) = (r, C.H / H^2, s)`.
pub fn project_p1(surface: &SurfaceData, v: &MukaiVector) -> Result<(Int, Rat, Int)> {
    Ok((v.r.clone(), reduced_slope(surface, v)?, v.s.clone()))
}

/// `Pr = P2 . P1`, i.e. `(c/s, r/s)`.
pub fn project_pr(surface: &SurfaceData, v: &MukaiVector) -> Result<Point2> {
    let c = reduced_slope(surface, v)?;
    if v.s.is_zero() {
        return Err(Error::ProjectionUndefined);
    }
    let s = rat_from(&v.s);
    Ok(Point2::new(c / &s, rat_from(&v.r) / s))
}

/// `k(b, w) = (b, 1) / (d'(b^2 + w^2))`.
pub fn k_map(surface: &SurfaceData, p: &StabilityParam) -> Point2 {
    let denom = rat_from(surface.d_prime()) * (&p.b * &p.b + &p.w_sq);
    Point2::new(&p.b / &denom, denom.recip())
}

/// Inverse of the k-map on the region `y > d' x^2`.
pub fn k_inverse(surface: &SurfaceData, pt: &Point2) -> Result<StabilityParam> {
    if !pt.y.is_positive() {
        return Err(Error::Input(format!("point {pt:?} is not in the upper half plane")));
    }
    let b = &pt.x / &pt.y;
    let w_sq = (&pt.y * rat_from(surface.d_prime())).recip() - &b * &b;
    StabilityParam::new(b, w_sq)
}

/// Central charge `Z_(b,w)(v)`, returned as `(Re Z, Im Z / w)`.
pub fn central_charge(
    surface: &SurfaceData,
    p: &StabilityParam,
    v: &MukaiVector,
) -> Result<(Rat, Rat)> {
    let ch = rat_from(&surface.dot_h(&v.c1)?);
    let d = rat_from(surface.d_prime());
    let r = rat_from(&v.r);
    let re = &p.b * &ch - rat_from(&v.s) - &r * &d * (&p.b * &p.b - &p.w_sq);
    let im_over_w = ch - Rat::from_integer(BigInt::from(2)) * d * &p.b * r;
    Ok((re, im_over_w))
}

/// The `b` at which `Im Z(v)` vanishes: `C.H / (2 d' r)`.
pub fn vertical_line_of(surface: &SurfaceData, v: &MukaiVector) -> Result<Rat> {
    if v.r.is_zero() {
        return Err(Error::RankZero("vertical line of a rank-zero class".into()));
    }
    Ok(BigRational::new(
        surface.dot_h(&v.c1)?,
        BigInt::from(2) * surface.d_prime() * &v.r,
    ))
}

/// All roots `(r, c1, s)` with every coordinate bounded by `bound` in
/// absolute value, in lexicographic order `(r, c1, s)`.
pub fn enumerate_roots(surface: &SurfaceData, bound: u32) -> Result<Vec<MukaiVector>> {
    if bound == 0 {
        return Err(Error::Input("root bound must be at least 1".into()));
    }
    let b = bound as i64;
    let classes = ns_box(surface.ns_rank(), b);
    // c1.c1 depends only on c1; precompute once.
    let squares: Vec<Int> = classes
        .iter()
        .map(|c| surface.intersect(c, c))
        .collect::<Result<_>>()?;
    let per_rank: Vec<Vec<MukaiVector>> = (-b..=b)
        .into_par_iter()
        .map(|r| {
            let mut out = Vec::new();
            let rr = BigInt::from(r);
            for (c, sq) in classes.iter().zip(&squares) {
                for s in -b..=b {
                    // c.c - 2 r s = -2
                    if sq - BigInt::from(2 * r * s) == BigInt::from(-2) {
                        out.push(MukaiVector::new(rr.clone(), c.clone(), BigInt::from(s)));
                    }
                }
            }
            out
        })
        .collect();
    Ok(per_rank.into_iter().flatten().collect())
}

/// Every integer vector of length `rank` with entries in `[-b, b]`, in
/// lexicographic order.
fn ns_box(rank: usize, b: i64) -> Vec<NsClass> {
    let mut out = vec![Vec::<Int>::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-b..=b).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(BigInt::from(x));
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(NsClass::new).collect()
}

/// The hole `I_delta` carved out by a root: the points `k(b, w)` with
/// `Z_(b,w)(delta)` real and non-positive.
///
/// It lies on the line `y = x / b` with `b = C.H / (2 d' r)`, running from
/// `Pr(delta)` to the parabola point `(1/(d' b), 1/(d' b^2))`. When `b = 0`
/// the hole is the vertical ray above `Pr(delta)`.
pub fn hole_segment(surface: &SurfaceData, delta: &MukaiVector) -> Result<Segment2> {
    if !mukai::is_root(surface, delta)? {
        return Err(Error::NoGeometricHole(format!("{delta} is not a root")));
    }
    if delta.r.is_zero() {
        return Err(Error::NoGeometricHole("rank zero".into()));
    }
    if delta.s.is_zero() {
        return Err(Error::NoGeometricHole("s = 0".into()));
    }
    let b = vertical_line_of(surface, delta)?;
    let d = rat_from(surface.d_prime());
    let height = hole_height(surface, delta)?;
    if !height.is_positive() {
        return Err(Error::NoGeometricHole(format!(
            "s/r - (C.H)^2/(4 r^2 d') = {height} is not positive"
        )));
    }
    let a = project_pr(surface, delta)?;
    let end = if b.is_zero() {
        SegmentEnd::VerticalInfinity
    } else {
        let db = &d * &b;
        SegmentEnd::Point(Point2::new(db.recip(), (db * &b).recip()))
    };
    Ok(Segment2 { a, b: end })
}

/// `s/r - (C.H)^2 / (4 r^2 d')`, the largest `d' w^2` on the hole of `delta`.
pub fn hole_height(surface: &SurfaceData, delta: &MukaiVector) -> Result<Rat> {
    if delta.r.is_zero() {
        return Err(Error::RankZero("hole height of a rank-zero class".into()));
    }
    let ch = surface.dot_h(&delta.c1)?;
    let r = &delta.r;
    Ok(BigRational::new(delta.s.clone(), r.clone())
        - BigRational::new(&ch * &ch, BigInt::from(4) * r * r * surface.d_prime()))
}

/// Strict interior of the ellipse `d' x^2 = y - y^2`.
pub fn inside_ellipse(surface: &SurfaceData, p: &Point2) -> bool {
    ellipse_value(surface, p).is_negative()
}

/// `d' x^2 - (y - y^2)`: negative inside, zero on the ellipse.
pub fn ellipse_value(surface: &SurfaceData, p: &Point2) -> Rat {
    rat_from(surface.d_prime()) * &p.x * &p.x - (&p.y - &p.y * &p.y)
}

/// Strictly above the parabola `y = d' x^2`.
pub fn above_parabola(surface: &SurfaceData, p: &Point2) -> bool {
    p.y > rat_from(surface.d_prime()) * &p.x * &p.x
}

pub fn collinear(p1: &Point2, p2: &Point2, p3: &Point2) -> bool {
    orientation(p1, p2, p3) == Ordering::Equal
}

/// Two classes have the same phase at `p` iff `k(p)`, `Pr(v1)` and `Pr(v2)`
/// are collinear.
pub fn same_phase(
    surface: &SurfaceData,
    p: &StabilityParam,
    v1: &MukaiVector,
    v2: &MukaiVector,
) -> Result<bool> {
    let a = project_pr(surface, v1)?;
    let b = project_pr(surface, v2)?;
    Ok(collinear(&k_map(surface, p), &a, &b))
}

/// Whether `k(p)` avoids every hole of a positive-rank root with
/// coordinates bounded by `root_bound`. Points strictly inside the ellipse
/// `d' x^2 = y - y^2` are geometric without any enumeration, since no root
/// projects there.
pub fn is_geometric(surface: &SurfaceData, p: &StabilityParam, root_bound: u32) -> Result<bool> {
    let k = k_map(surface, p);
    if inside_ellipse(surface, &k) {
        return Ok(true);
    }
    Ok(first_hole_containing(surface, &k, root_bound)?.is_none())
}

/// The first positive-rank root (lexicographic) whose hole contains `pt`.
pub fn first_hole_containing(
    surface: &SurfaceData,
    pt: &Point2,
    root_bound: u32,
) -> Result<Option<(MukaiVector, Segment2)>> {
    for delta in enumerate_roots(surface, root_bound)? {
        if !delta.r.is_positive() {
            continue;
        }
        match hole_segment(surface, &delta) {
            Ok(seg) if seg.contains(pt) => return Ok(Some((delta, seg))),
            Ok(_) | Err(Error::NoGeometricHole(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}

/// The line carrying potential walls between `vF` and `vE`, given by its
/// two defining points `(Pr(vF), Pr(vE))`.
pub fn wall_line(
    surface: &SurfaceData,
    v_f: &MukaiVector,
    v_e: &MukaiVector,
) -> Result<(Point2, Point2)> {
    let a = project_pr(surface, v_f)?;
    let b = project_pr(surface, v_e)?;
    if a == b {
        return Err(Error::DegenerateWall);
    }
    Ok((a, b))
}

/// Intersection of the line through `p`, `q` with the line through the origin
/// of direction `(b, 1)`, i.e. `y = x / b` (or `x = 0` when `b = 0`).
pub fn intersect_with_b_line(p: &Point2, q: &Point2, b: &Rat) -> Option<Point2> {
    // p + u (q - p) = t (b, 1)
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    let denom = &dx - b * &dy;
    if denom.is_zero() {
        return None;
    }
    let u = (b * &p.y - &p.x) / denom;
    Some(Point2::new(&p.x + &u * dx, &p.y + u * dy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat, rat_int};

    fn s(d: i64) -> SurfaceData {
        SurfaceData::rank_one(d).unwrap()
    }
    fn v(r: i64, n: i64, s: i64) -> MukaiVector {
        MukaiVector::rank_one(r, n, s)
    }
    fn pt(x: Rat, y: Rat) -> Point2 {
        Point2::new(x, y)
    }
    fn param(b: Rat, w_sq: Rat) -> StabilityParam {
        StabilityParam::new(b, w_sq).unwrap()
    }

    #[test]
    fn p1_examples() {
        assert_eq!(project_p1(&s(10), &v(3, -1, 3)).unwrap(), (int(3), rat_int(-1), int(3)));
        assert_eq!(project_p1(&s(1), &v(1, 0, 1)).unwrap(), (int(1), rat_int(0), int(1)));
        assert_eq!(project_p1(&s(2), &v(3, -1, 1)).unwrap(), (int(3), rat_int(-1), int(1)));
    }

    #[test]
    fn pr_examples() {
        assert_eq!(project_pr(&s(1), &v(2, -1, 1)).unwrap(), pt(rat_int(-1), rat_int(2)));
        assert_eq!(project_pr(&s(1), &v(1, 0, 1)).unwrap(), pt(rat_int(0), rat_int(1)));
        assert_eq!(project_pr(&s(10), &v(3, -4, 53)).unwrap(), pt(rat(-4, 53), rat(3, 53)));
        assert_eq!(project_pr(&s(1), &v(1, 1, 0)), Err(Error::ProjectionUndefined));
    }

    #[test]
    fn k_map_examples() {
        let k = k_map(&s(7), &param(rat_int(0), rat(3, 2)));
        assert_eq!(k, pt(rat_int(0), rat(2, 21)));
        let k = k_map(&s(10), &param(rat(-5, 6), rat(43, 180)));
        assert_eq!(k, pt(rat(-5, 56), rat(3, 28)));
        let p = param(rat_int(1), rat(5, 7));
        let k = k_map(&s(1), &p);
        assert_eq!(&k.y * (&p.b * &p.b + &p.w_sq), rat_int(1));
        assert_eq!(k_inverse(&s(1), &k).unwrap(), p);
    }

    #[test]
    fn w_sq_must_be_positive() {
        assert!(StabilityParam::new(rat_int(0), rat_int(0)).is_err());
        assert!(StabilityParam::new(rat_int(0), rat(-1, 2)).is_err());
    }

    #[test]
    fn central_charge_examples() {
        let w_sq = rat(7, 5);
        let (re, im) = central_charge(&s(1), &param(rat_int(0), w_sq.clone()), &v(1, 0, 1)).unwrap();
        assert_eq!((re, im), (w_sq - rat_int(1), rat_int(0)));
        let (_, im) = central_charge(&s(10), &param(rat(-1, 3), rat_int(1)), &v(3, -1, 3)).unwrap();
        assert_eq!(im, rat_int(0));
        let sky = v(0, 0, 1);
        let (re, im) = central_charge(&s(4), &param(rat(3, 7), rat(1, 9)), &sky).unwrap();
        assert_eq!((re, im), (rat_int(-1), rat_int(0)));
    }

    #[test]
    fn vertical_line_examples() {
        assert_eq!(vertical_line_of(&s(10), &v(3, -1, 3)).unwrap(), rat(-1, 3));
        assert_eq!(vertical_line_of(&s(1), &v(1, 0, 1)).unwrap(), rat_int(0));
        assert_eq!(vertical_line_of(&s(1), &v(2, 1, 1)).unwrap(), rat(1, 2));
        assert!(matches!(vertical_line_of(&s(1), &v(0, 1, 1)), Err(Error::RankZero(_))));
    }

    #[test]
    fn root_enumeration_examples() {
        let roots = enumerate_roots(&s(1), 2).unwrap();
        let expected = vec![
            v(-2, -1, -1),
            v(-2, 1, -1),
            v(-1, -1, -2),
            v(-1, 0, -1),
            v(-1, 1, -2),
            v(1, -1, 2),
            v(1, 0, 1),
            v(1, 1, 2),
            v(2, -1, 1),
            v(2, 1, 1),
        ];
        assert_eq!(roots, expected);
        assert_eq!(enumerate_roots(&s(2), 1).unwrap(), vec![v(-1, 0, -1), v(1, 0, 1)]);
        assert!(enumerate_roots(&s(1), 0).is_err());
    }

    #[test]
    fn hole_examples() {
        let seg = hole_segment(&s(1), &v(1, 1, 2)).unwrap();
        assert_eq!(seg.a, pt(rat(1, 2), rat(1, 2)));
        assert_eq!(seg.b, SegmentEnd::Point(pt(rat_int(1), rat_int(1))));

        let seg = hole_segment(&s(1), &v(1, 0, 1)).unwrap();
        assert_eq!(seg.a, pt(rat_int(0), rat_int(1)));
        assert_eq!(seg.b, SegmentEnd::VerticalInfinity);

        // b = 2/4 = 1/2, Pr = (1, 2), far end (2, 4) on y = x^2.
        let seg = hole_segment(&s(1), &v(2, 1, 1)).unwrap();
        assert_eq!(hole_height(&s(1), &v(2, 1, 1)).unwrap(), rat(1, 4));
        assert_eq!(seg.a, pt(rat_int(1), rat_int(2)));
        assert_eq!(seg.b, SegmentEnd::Point(pt(rat_int(2), rat_int(4))));
    }

    #[test]
    fn hole_failures_are_distinguished() {
        // not a root
        assert!(matches!(hole_segment(&s(1), &v(1, 1, 1)), Err(Error::NoGeometricHole(_))));
        // root of rank zero: (0, C, s) with C^2 = -2 needs a second NS direction
        let g = vec![vec![int(2), int(0)], vec![int(0), int(-2)]];
        let surface = SurfaceData::with_gram(g).unwrap();
        let delta = MukaiVector::new(int(0), NsClass::new(vec![int(0), int(1)]), int(5));
        assert!(mukai::is_root(&surface, &delta).unwrap());
        assert!(matches!(hole_segment(&surface, &delta), Err(Error::NoGeometricHole(_))));
        // root with s = 0: (1, E, 0) with E^2 = -2
        let delta = MukaiVector::new(int(1), NsClass::new(vec![int(0), int(1)]), int(0));
        assert!(matches!(hole_segment(&surface, &delta), Err(Error::NoGeometricHole(_))));
        // root with s/r - d' b^2 <= 0: (1, H + E, 1) has C^2 = 0, C.H = 2, height 1 - 1 = 0
        let delta = MukaiVector::new(int(1), NsClass::new(vec![int(1), int(1)]), int(1));
        assert!(mukai::is_root(&surface, &delta).unwrap());
        assert_eq!(hole_height(&surface, &delta).unwrap(), rat_int(0));
        assert!(matches!(hole_segment(&surface, &delta), Err(Error::NoGeometricHole(_))));
    }

    #[test]
    fn ellipse_examples() {
        assert!(inside_ellipse(&s(1), &pt(rat_int(0), rat(1, 2))));
        assert!(!inside_ellipse(&s(1), &pt(rat_int(0), rat_int(1))));
        assert!(!inside_ellipse(&s(1), &pt(rat(1, 2), rat(1, 2))));
        assert_eq!(ellipse_value(&s(1), &pt(rat(1, 2), rat(1, 2))), rat_int(0));
    }

    #[test]
    fn collinear_examples() {
        let p = |x: i64, y: i64| Point2::from_ints(x, y);
        assert!(collinear(&p(0, 0), &p(1, 1), &p(2, 2)));
        assert!(collinear(
            &pt(rat(-1, 3), rat_int(1)),
            &pt(rat(-4, 53), rat(3, 53)),
            &pt(rat(-5, 56), rat(3, 28))
        ));
        assert!(!collinear(&p(0, 1), &p(1, 0), &p(1, 1)));
    }

    #[test]
    fn same_phase_examples() {
        let surface = s(10);
        let f = v(3, -1, 3);
        let g = v(3, -4, 53);
        assert!(same_phase(&surface, &param(rat(-5, 6), rat(43, 180)), &f, &g).unwrap());
        assert!(same_phase(&surface, &param(rat(2, 9), rat_int(3)), &f, &f).unwrap());
        assert!(!same_phase(&surface, &param(rat(-1, 3), rat_int(1)), &f, &g).unwrap());
        assert_eq!(
            same_phase(&surface, &param(rat_int(0), rat_int(1)), &f, &v(1, 1, 0)),
            Err(Error::ProjectionUndefined)
        );
    }

    #[test]
    fn geometric_examples() {
        let surface = s(1);
        assert!(is_geometric(&surface, &param(rat_int(0), rat_int(2)), 1).unwrap());
        assert!(!is_geometric(&surface, &param(rat_int(0), rat(1, 2)), 1).unwrap());
        // k(1, 1/100) = (100/101, 100/101) lies on the hole (1/2,1/2)-(1,1).
        let p = param(rat_int(1), rat(1, 100));
        assert_eq!(k_map(&surface, &p), pt(rat(100, 101), rat(100, 101)));
        assert!(!is_geometric(&surface, &p, 2).unwrap());
        let (delta, _) = first_hole_containing(&surface, &k_map(&surface, &p), 2)
            .unwrap()
            .unwrap();
        assert_eq!(delta, v(1, 1, 2));
        // Off the hole line: geometric.
        assert!(is_geometric(&surface, &param(rat_int(1), rat_int(3)), 4).unwrap());
    }

    #[test]
    fn wall_line_examples() {
        let (a, b) = wall_line(&s(10), &v(3, -1, 3), &v(1, 0, 1)).unwrap();
        assert_eq!((a.y.clone(), b.y.clone()), (rat_int(1), rat_int(1)));
        assert_eq!(a.x, rat(-1, 3));
        let (a, b) = wall_line(&s(1), &v(2, -1, 1), &v(1, 0, 1)).unwrap();
        assert_eq!((a, b), (Point2::from_ints(-1, 2), Point2::from_ints(0, 1)));
        assert_eq!(wall_line(&s(1), &v(2, -1, 1), &v(2, -1, 1)), Err(Error::DegenerateWall));
        // Distinct vectors with the same projection are degenerate too.
        assert_eq!(wall_line(&s(1), &v(1, 0, 1), &v(2, 0, 2)), Err(Error::DegenerateWall));
    }

    #[test]
    fn segment_membership_counts_boundary() {
        let seg = Segment2 {
            a: pt(rat(1, 2), rat(1, 2)),
            b: SegmentEnd::Point(Point2::from_ints(1, 1)),
        };
        assert!(seg.contains(&pt(rat(1, 2), rat(1, 2))));
        assert!(seg.contains(&Point2::from_ints(1, 1)));
        assert!(seg.contains(&pt(rat(3, 4), rat(3, 4))));
        assert!(!seg.contains(&pt(rat(5, 4), rat(5, 4))));
        assert!(!seg.contains(&pt(rat(3, 4), rat(4, 5))));
        let ray = Segment2 { a: Point2::from_ints(0, 1), b: SegmentEnd::VerticalInfinity };
        assert!(ray.contains(&Point2::from_ints(0, 1)));
        assert!(ray.contains(&Point2::from_ints(0, 100)));
        assert!(!ray.contains(&pt(rat_int(0), rat(1, 2))));
    }

    #[test]
    fn segment_json_form() {
        let seg = hole_segment(&s(1), &v(1, 1, 2)).unwrap();
        let text = serde_json::to_string(&seg).unwrap();
        assert_eq!(text, r#"{"a":["1/2","1/2"],"b":["1","1"]}"#);
        let ray = hole_segment(&s(1), &v(1, 0, 1)).unwrap();
        let text = serde_json::to_string(&ray).unwrap();
        assert_eq!(text, r#"{"a":["0","1"],"b":"vertical_infinity"}"#);
        let back: Segment2 = serde_json::from_str(&text).unwrap();
        assert_eq!(back, ray);
    }

    #[test]
    fn b_line_intersection() {
        let p = Point2::from_ints(0, 1);
        let q = Point2::from_ints(1, 0);
        let x = intersect_with_b_line(&p, &q, &rat_int(1)).unwrap();
        assert_eq!(x, pt(rat(1, 2), rat(1, 2)));
        let x = intersect_with_b_line(&pt(rat_int(-1), rat_int(1)), &pt(rat_int(1), rat_int(1)), &rat_int(0)).unwrap();
        assert_eq!(x, Point2::from_ints(0, 1));
        assert!(intersect_with_b_line(&Point2::from_ints(1, 1), &Point2::from_ints(2, 2), &rat_int(1)).is_none());
    }
}
