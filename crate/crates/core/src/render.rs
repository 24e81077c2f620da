//! Scenes of exact primitives in the projected plane and their SVG form.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{rat_from, rat_str, to_decimal, Int, Rat};
use crate::ml_stability::{self, TriangleRegion};
use crate::mukai::{self, MukaiVector, SurfaceData};
use crate::restriction::{self, BezoutSign};
use crate::stabspace::{self, Point2, SegmentEnd, StabilityParam};

pub const DEFAULT_SAMPLES: usize = 128;
const SVG_WIDTH: u32 = 800;
const DECIMALS: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Viewport {
    #[serde(with = "rat_str")]
    pub x_min: Rat,
    #[serde(with = "rat_str")]
    pub x_max: Rat,
    #[serde(with = "rat_str")]
    pub y_min: Rat,
    #[serde(with = "rat_str")]
    pub y_max: Rat,
}

impl Viewport {
    fn width(&self) -> Rat {
        &self.x_max - &self.x_min
    }

    fn height(&self) -> Rat {
        &self.y_max - &self.y_min
    }

    /// Smallest box around `points` (and the origin), padded by a tenth of
    /// its larger side.
    pub fn around<'a>(points: impl IntoIterator<Item = &'a Point2>) -> Viewport {
        let mut vp = Viewport {
            x_min: Rat::zero(),
            x_max: Rat::zero(),
            y_min: Rat::zero(),
            y_max: Rat::zero(),
        };
        for p in points {
            vp.x_min = vp.x_min.clone().min(p.x.clone());
            vp.x_max = vp.x_max.clone().max(p.x.clone());
            vp.y_min = vp.y_min.clone().min(p.y.clone());
            vp.y_max = vp.y_max.clone().max(p.y.clone());
        }
        let side = vp.width().max(vp.height()).max(Rat::one());
        let pad = side / Rat::from_integer(10.into());
        vp.x_min -= &pad;
        vp.x_max += &pad;
        vp.y_min -= &pad;
        vp.y_max += &pad;
        vp
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Primitive {
    /// Samples of `y = d' x^2`.
    Parabola { points: Vec<Point2> },
    /// Samples of `d' x^2 = y - y^2`, all rational.
    Ellipse { points: Vec<Point2> },
    Segment { a: Point2, b: Point2 },
    /// Vertical ray upwards from `from`.
    Ray { from: Point2 },
    Point { at: Point2 },
    /// Infinite line through two points, clipped to the viewport.
    Line { p: Point2, q: Point2 },
    Polygon { vertices: Vec<Point2> },
    Label { at: Point2, text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layer {
    pub style: String,
    #[serde(flatten)]
    pub primitive: Primitive,
}

impl Layer {
    fn new(style: &str, primitive: Primitive) -> Self {
        Layer { style: style.to_string(), primitive }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scene {
    #[serde(with = "int_str")]
    pub d_prime: Int,
    pub viewport: Viewport,
    pub samples: usize,
    pub layers: Vec<Layer>,
}

mod int_str {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::exact::Int;

    pub fn serialize<S: Serializer>(n: &Int, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Int, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Scene {
    pub fn empty(d_prime: Int) -> Scene {
        Scene {
            d_prime,
            viewport: Viewport::around(std::iter::empty()),
            samples: 0,
            layers: Vec::new(),
        }
    }

    pub fn count_style(&self, style: &str) -> usize {
        self.layers.iter().filter(|l| l.style == style).count()
    }

    pub fn points(&self) -> impl Iterator<Item = &Point2> {
        self.layers.iter().filter_map(|l| match &l.primitive {
            Primitive::Point { at } => Some(at),
            _ => None,
        })
    }

    fn push(&mut self, style: &str, primitive: Primitive) {
        self.layers.push(Layer::new(style, primitive));
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureKind {
    Space,
    Holes,
    Walls,
    TheoremPath,
    MlTriangle,
}

impl std::str::FromStr for FigureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "space" => Ok(FigureKind::Space),
            "holes" => Ok(FigureKind::Holes),
            "walls" => Ok(FigureKind::Walls),
            "theorem_path" | "theorem-path" => Ok(FigureKind::TheoremPath),
            "ml_triangle" | "ml-triangle" => Ok(FigureKind::MlTriangle),
            other => Err(Error::Input(format!("unknown figure kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct FigureParams {
    pub samples: usize,
    pub root_bound: u32,
    pub vector: Option<MukaiVector>,
    pub l: i64,
}

impl Default for FigureParams {
    fn default() -> Self {
        FigureParams { samples: DEFAULT_SAMPLES, root_bound: 20, vector: None, l: 1 }
    }
}

pub fn figure(surface: &SurfaceData, kind: FigureKind, params: &FigureParams) -> Result<Scene> {
    let mut scene = Scene::empty(surface.d_prime().clone());
    scene.samples = params.samples;
    let anchors = match kind {
        FigureKind::Space => space_layers(surface, &mut scene)?,
        FigureKind::Holes => hole_layers(surface, params.root_bound, &mut scene)?,
        FigureKind::Walls => wall_layers(surface, params, &mut scene)?,
        FigureKind::TheoremPath => path_layers(surface, params, &mut scene)?,
        FigureKind::MlTriangle => triangle_layers(surface, params.l, &mut scene)?,
    };
    scene.viewport = Viewport::around(&anchors);
    let mut curves = vec![Layer::new(
        "parabola",
        Primitive::Parabola { points: parabola_samples(surface, &scene.viewport, params.samples) },
    )];
    if matches!(kind, FigureKind::Space | FigureKind::Holes | FigureKind::MlTriangle) {
        curves.push(Layer::new(
            "ellipse",
            Primitive::Ellipse { points: ellipse_samples(surface, params.samples) },
        ));
    }
    curves.append(&mut scene.layers);
    scene.layers = curves;
    Ok(scene)
}

/// `n` equispaced abscissae across the viewport, lifted to `y = d' x^2`.
fn parabola_samples(surface: &SurfaceData, vp: &Viewport, n: usize) -> Vec<Point2> {
    let d = rat_from(surface.d_prime());
    let steps = Rat::from_integer(BigInt::from(n.max(2) - 1));
    (0..n)
        .map(|i| {
            let x = &vp.x_min + vp.width() * Rat::from_integer(i.into()) / &steps;
            let y = &d * &x * &x;
            Point2::new(x, y)
        })
        .collect()
}

/// Rational points `(t, t^2)/(d' + t^2)` cut out by lines `y = t x` through
/// the origin, for `n` slopes symmetric about zero, closed up at `(0, 1)`.
fn ellipse_samples(surface: &SurfaceData, n: usize) -> Vec<Point2> {
    let d = rat_from(surface.d_prime());
    let half = (n.max(4) / 2) as i64;
    let scale = Rat::from_integer(BigInt::from(half)) / Rat::from_integer(8.into());
    let mut pts = Vec::new();
    for i in -half..=half {
        let t = Rat::from_integer(BigInt::from(i)) / &scale;
        let denom = &d + &t * &t;
        pts.push(Point2::new(&t / &denom, &t * &t / &denom));
    }
    // Sort by angle around the centre (0, 1/2) so the polyline follows the curve.
    let centre_y = BigRational::new(1.into(), 2.into());
    let mut right: Vec<Point2> = pts.iter().filter(|p| p.x.is_positive()).cloned().collect();
    let mut left: Vec<Point2> = pts.iter().filter(|p| p.x.is_negative()).cloned().collect();
    right.sort_by(|a, b| a.y.cmp(&b.y));
    left.sort_by(|a, b| b.y.cmp(&a.y));
    let mut out = vec![Point2::origin()];
    out.extend(right);
    out.push(Point2::new(Rat::zero(), Rat::one()));
    out.extend(left);
    out.push(Point2::origin());
    debug_assert!(out.iter().all(|p| stabspace::ellipse_value(surface, p).is_zero()));
    let _ = centre_y;
    out
}

fn sigma_point(surface: &SurfaceData, b: Rat, w_sq: Rat) -> Result<Point2> {
    Ok(stabspace::k_map(surface, &StabilityParam::new(b, w_sq)?))
}

fn space_layers(surface: &SurfaceData, scene: &mut Scene) -> Result<Vec<Point2>> {
    let d = rat_from(surface.d_prime());
    let mut anchors = Vec::new();
    for b in [-1i64, 0, 1] {
        for dw in [1i64, 2, 4] {
            let p = sigma_point(surface, Rat::from_integer(b.into()), Rat::from_integer(dw.into()) / &d)?;
            scene.push("sigma", Primitive::Point { at: p.clone() });
            anchors.push(p);
        }
    }
    let top = Point2::new(Rat::zero(), d.recip());
    scene.push("label", Primitive::Label { at: top.clone(), text: "U".into() });
    anchors.push(top);
    for p in [Point2::new(Rat::one() / &d, Rat::one() / &d), Point2::new(-Rat::one() / &d, Rat::one() / &d)] {
        anchors.push(p);
    }
    Ok(anchors)
}

fn hole_layers(surface: &SurfaceData, bound: u32, scene: &mut Scene) -> Result<Vec<Point2>> {
    let roots = stabspace::enumerate_roots(surface, bound)?;
    let mut anchors = Vec::new();
    for delta in &roots {
        if delta.s.is_zero() {
            continue;
        }
        let p = stabspace::project_pr(surface, delta)?;
        scene.push("root", Primitive::Point { at: p.clone() });
        anchors.push(p);
    }
    for delta in &roots {
        if !delta.r.is_positive() {
            continue;
        }
        match stabspace::hole_segment(surface, delta) {
            Ok(seg) => match seg.b {
                SegmentEnd::Point(b) => scene.push("hole", Primitive::Segment { a: seg.a, b }),
                SegmentEnd::VerticalInfinity => scene.push("hole", Primitive::Ray { from: seg.a }),
            },
            Err(Error::NoGeometricHole(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(anchors)
}

fn wall_layers(surface: &SurfaceData, params: &FigureParams, scene: &mut Scene) -> Result<Vec<Point2>> {
    let v = params
        .vector
        .as_ref()
        .ok_or_else(|| Error::Input("walls figure needs a Mukai vector".into()))?;
    let pf = stabspace::project_pr(surface, v)?;
    scene.push("projection", Primitive::Point { at: pf.clone() });
    let mut anchors = vec![pf.clone()];
    for delta in stabspace::enumerate_roots(surface, params.root_bound)? {
        if delta.s.is_zero() {
            continue;
        }
        let pd = stabspace::project_pr(surface, &delta)?;
        if pd == pf {
            continue;
        }
        scene.push("root", Primitive::Point { at: pd.clone() });
        scene.push("wall", Primitive::Line { p: pf.clone(), q: pd });
    }
    anchors.push(Point2::new(Rat::zero(), Rat::one()));
    Ok(anchors)
}

fn path_layers(surface: &SurfaceData, params: &FigureParams, scene: &mut Scene) -> Result<Vec<Point2>> {
    let v = params
        .vector
        .as_ref()
        .ok_or_else(|| Error::Input("theorem_path figure needs a Mukai vector".into()))?;
    if v.r < BigInt::from(2) {
        return Err(Error::Inapplicable(format!("theorem_path needs rank >= 2, got {}", v.r)));
    }
    let d = rat_from(surface.d_prime());
    let twisted = mukai::twist(surface, v, &BigInt::from(-1))?;
    let pf = stabspace::project_pr(surface, v)?;
    let pt = stabspace::project_pr(surface, &twisted)?;
    let c = stabspace::reduced_slope(surface, v)?;
    let b1 = stabspace::vertical_line_of(surface, v)?;
    let b2 = &b1 - Rat::one();
    let (b3, w3) = restriction::critical_sigma3(surface, v)?;
    if !w3.is_positive() {
        return Err(Error::Inapplicable(format!("d'w3^2 = {w3} is not positive")));
    }
    let bound = restriction::wall_bound(surface, v)?;
    let (m0, n0) = restriction::bezout_solution(&v.r, &c, BezoutSign::PositiveN)?;
    let (m1, n1) = restriction::bezout_solution(&v.r, &c, BezoutSign::NegativeN)?;
    let b4 = BigRational::new(m0, n0);
    let b5 = BigRational::new(m1, n1) - Rat::one();
    let w_aux = if bound.is_positive() { bound } else { Rat::one() };
    let two = Rat::from_integer(2.into());

    let sigmas = [
        ("sigma1", sigma_point(surface, b1, &two / &d)?),
        ("sigma2", sigma_point(surface, b2, &two / &d)?),
        ("sigma3", sigma_point(surface, b3, &w3 / &d)?),
        ("sigma4", sigma_point(surface, b4, &w_aux / &d)?),
        ("sigma5", sigma_point(surface, b5, &w_aux / &d)?),
    ];
    let origin = Point2::origin();
    scene.push("path", Primitive::Segment { a: pf.clone(), b: pt.clone() });
    scene.push("aux-green", Primitive::Segment { a: origin.clone(), b: pf.clone() });
    scene.push("aux-green", Primitive::Segment { a: origin.clone(), b: pt.clone() });
    scene.push("aux-red", Primitive::Segment { a: sigmas[0].1.clone(), b: sigmas[2].1.clone() });
    scene.push("aux-red", Primitive::Segment { a: sigmas[1].1.clone(), b: sigmas[2].1.clone() });
    for (_, p) in &sigmas[3..] {
        scene.push("aux-green", Primitive::Segment { a: origin.clone(), b: p.clone() });
    }
    scene.push("projection", Primitive::Point { at: pf.clone() });
    scene.push("label", Primitive::Label { at: pf.clone(), text: "Pr(F)".into() });
    scene.push("projection", Primitive::Point { at: pt.clone() });
    scene.push("label", Primitive::Label { at: pt.clone(), text: "Pr(F(-H))".into() });
    let mut anchors = vec![pf, pt];
    for (name, p) in sigmas {
        scene.push("sigma", Primitive::Point { at: p.clone() });
        scene.push("label", Primitive::Label { at: p.clone(), text: name.into() });
        anchors.push(p);
    }
    Ok(anchors)
}

fn triangle_layers(surface: &SurfaceData, l: i64, scene: &mut Scene) -> Result<Vec<Point2>> {
    let region = TriangleRegion::new(surface, l)?;
    scene.push(
        "triangle",
        Primitive::Polygon { vertices: region.vertices().into_iter().cloned().collect() },
    );
    scene.push("path", Primitive::Segment { a: region.o_prime.clone(), b: region.l_pt.clone() });
    for (name, p) in [("M", &region.m), ("L", &region.l_pt), ("O'", &region.o_prime), ("O", &region.o)] {
        scene.push("marked", Primitive::Point { at: p.clone() });
        scene.push("label", Primitive::Label { at: p.clone(), text: name.into() });
    }
    let s3 = ml_stability::sigma3(surface, l)?;
    let k3 = stabspace::k_map(surface, &s3);
    scene.push("sigma", Primitive::Point { at: k3.clone() });
    scene.push("label", Primitive::Label { at: k3, text: "sigma3".into() });
    Ok(region.vertices().into_iter().cloned().collect())
}

/// Clips the line through `p`, `q` to the viewport; `None` if it misses.
fn clip_line(vp: &Viewport, p: &Point2, q: &Point2) -> Option<(Point2, Point2)> {
    let dx = &q.x - &p.x;
    let dy = &q.y - &p.y;
    let mut ts: Vec<Rat> = Vec::new();
    if !dx.is_zero() {
        ts.push((&vp.x_min - &p.x) / &dx);
        ts.push((&vp.x_max - &p.x) / &dx);
    }
    if !dy.is_zero() {
        ts.push((&vp.y_min - &p.y) / &dy);
        ts.push((&vp.y_max - &p.y) / &dy);
    }
    let inside = |pt: &Point2| {
        pt.x >= vp.x_min && pt.x <= vp.x_max && pt.y >= vp.y_min && pt.y <= vp.y_max
    };
    let mut hits: Vec<(Rat, Point2)> = ts
        .into_iter()
        .map(|t| {
            let pt = Point2::new(&p.x + &t * &dx, &p.y + &t * &dy);
            (t, pt)
        })
        .filter(|(_, pt)| inside(pt))
        .collect();
    hits.sort_by(|a, b| a.0.cmp(&b.0));
    match (hits.first(), hits.last()) {
        (Some(a), Some(b)) if a.0 != b.0 => Some((a.1.clone(), b.1.clone())),
        _ => None,
    }
}

fn num(q: &Rat) -> String {
    to_decimal(q, DECIMALS)
}

fn xy(p: &Point2) -> (String, String) {
    (num(&p.x), num(&-&p.y))
}

fn points_attr(points: &[Point2]) -> String {
    points
        .iter()
        .map(|p| {
            let (x, y) = xy(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

const STYLE: &str = "path,line,polyline,polygon{fill:none;stroke-width:1.5;vector-effect:non-scaling-stroke}\
.parabola{stroke:#000}.ellipse{stroke:#777;stroke-dasharray:4 3}.hole{stroke:#1f77b4}\
.wall{stroke:#d62728;stroke-width:0.75}.path{stroke:#2ca02c}.aux-green{stroke:#2ca02c;stroke-dasharray:3 3}\
.aux-red{stroke:#d62728;stroke-dasharray:3 3}.triangle{fill:#ffd70055;stroke:#b8860b}\
circle{stroke:none}.root{fill:#1f77b4}.sigma{fill:#2ca02c}.projection{fill:#d62728}.marked{fill:#000}\
text{font-family:sans-serif;font-size:12px}";

/// SVG 1.1 document for `scene`. The y axis is flipped so the projected
/// plane appears with `y` upwards; coordinates are printed with nine
/// fractional digits.
pub fn emit_svg(scene: &Scene) -> Vec<u8> {
    let vp = &scene.viewport;
    let width = vp.width();
    let height = vp.height();
    let px_h = if width.is_zero() {
        Rat::from_integer(SVG_WIDTH.into())
    } else {
        Rat::from_integer(SVG_WIDTH.into()) * &height / &width
    };
    let radius = width.clone().max(height.clone()) / Rat::from_integer(200.into());
    let font = width.clone().max(height.clone()) / Rat::from_integer(50.into());
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"{} {} {} {}\">",
        SVG_WIDTH,
        to_decimal(&px_h, 0),
        num(&vp.x_min),
        num(&-&vp.y_max),
        num(&width),
        num(&height)
    )
    .unwrap();
    writeln!(out, "<!-- d_prime={} samples={} layers={} -->", scene.d_prime, scene.samples, scene.layers.len())
        .unwrap();
    writeln!(out, "<style>{STYLE}</style>").unwrap();
    out.push_str("<g>\n");
    for layer in &scene.layers {
        let class = escape(&layer.style);
        match &layer.primitive {
            Primitive::Parabola { points } | Primitive::Ellipse { points } => {
                writeln!(out, "<polyline class=\"{class}\" points=\"{}\"/>", points_attr(points)).unwrap();
            }
            Primitive::Segment { a, b } => line_element(&mut out, &class, a, b),
            Primitive::Ray { from } => {
                let top = Point2::new(from.x.clone(), vp.y_max.clone().max(from.y.clone()));
                line_element(&mut out, &class, from, &top);
            }
            Primitive::Line { p, q } => {
                if let Some((a, b)) = clip_line(vp, p, q) {
                    line_element(&mut out, &class, &a, &b);
                }
            }
            Primitive::Point { at } => {
                let (x, y) = xy(at);
                writeln!(out, "<circle class=\"{class}\" cx=\"{x}\" cy=\"{y}\" r=\"{}\"/>", num(&radius))
                    .unwrap();
            }
            Primitive::Polygon { vertices } => {
                writeln!(out, "<polygon class=\"{class}\" points=\"{}\"/>", points_attr(vertices)).unwrap();
            }
            Primitive::Label { at, text } => {
                let (x, y) = xy(at);
                writeln!(
                    out,
                    "<text class=\"{class}\" x=\"{x}\" y=\"{y}\" font-size=\"{}\">{}</text>",
                    num(&font),
                    escape(text)
                )
                .unwrap();
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    out.into_bytes()
}

fn line_element(out: &mut String, class: &str, a: &Point2, b: &Point2) {
    let (x1, y1) = xy(a);
    let (x2, y2) = xy(b);
    writeln!(out, "<line class=\"{class}\" x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\"/>").unwrap();
}
