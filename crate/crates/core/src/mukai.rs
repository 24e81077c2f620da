//! Mukai vectors and the Mukai pairing on `N(X) = Z + NS(X) + Z`.
//!
//! A class is stored as `(r, c1, s)` with `s = ch2 + r`. The Neron-Severi
//! part is given in a basis whose first vector is the primitive polarization
//! `H`; in the default rank-one case a class `nH` is the single coordinate
//! `n`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{int_from_json, int_to_json, Int, Rat};

/// Numerical data of a polarized K3 surface `(X, H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceData {
    d_prime: Int,
    gram: Vec<Vec<Int>>,
}

impl SurfaceData {
    /// Picard rank one: `NS(X) = Z H` with `H^2 = 2 d'`.
    pub fn rank_one(d_prime: i64) -> Result<Self> {
        Self::with_gram(vec![vec![BigInt::from(2 * d_prime)]])
    }

    /// A surface from an explicit Gram matrix. The first basis vector is `H`,
    /// so `gram[0][0] = H^2` must be a positive even integer, and the matrix
    /// must be symmetric of signature `(1, rank - 1)`.
    pub fn with_gram(gram: Vec<Vec<Int>>) -> Result<Self> {
        let n = gram.len();
        if n == 0 {
            return Err(Error::Input("empty Gram matrix".into()));
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(Error::Input("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::Input(format!(
                        "Gram matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let h2 = &gram[0][0];
        if !h2.is_positive() || h2.is_odd() {
            return Err(Error::Input(format!(
                "H^2 must be a positive even integer, got {h2}"
            )));
        }
        if n > 1 {
            let (pos, neg, zero) = inertia(&gram);
            if pos != 1 || neg != n - 1 || zero != 0 {
                return Err(Error::Input(format!(
                    "Gram matrix has signature ({pos},{neg}) with {zero} null directions; \
                     Hodge index requires (1,{})",
                    n - 1
                )));
            }
        }
        let d_prime = h2 / 2;
        Ok(SurfaceData { d_prime, gram })
    }

    /// `d' = H^2 / 2`.
    pub fn d_prime(&self) -> &Int {
        &self.d_prime
    }

    pub fn h_squared(&self) -> Int {
        &self.d_prime * 2
    }

    /// Genus of a smooth curve in `|H|`.
    pub fn genus(&self) -> Int {
        &self.d_prime + 1
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn ns_rank(&self) -> usize {
        self.gram.len()
    }

    /// The polarization `H` as an NS class.
    pub fn polarization(&self) -> NsClass {
        let mut coords = vec![Int::zero(); self.ns_rank()];
        coords[0] = BigInt::from(1);
        NsClass { coords }
    }

    pub fn check_class(&self, c: &NsClass) -> Result<()> {
        if c.coords.len() != self.ns_rank() {
            return Err(Error::DimensionMismatch {
                expected: self.ns_rank(),
                got: c.coords.len(),
            });
        }
        Ok(())
    }

    pub fn check(&self, v: &MukaiVector) -> Result<()> {
        self.check_class(&v.c1)
    }

    /// Intersection product on `NS(X)`.
    pub fn intersect(&self, a: &NsClass, b: &NsClass) -> Result<Int> {
        self.check_class(a)?;
        self.check_class(b)?;
        let mut total = Int::zero();
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                total += ai * &self.gram[i][j] * bj;
            }
        }
        Ok(total)
    }

    /// `C.H` for an NS class `C`.
    pub fn dot_h(&self, c: &NsClass) -> Result<Int> {
        self.check_class(c)?;
        Ok(c.coords
            .iter()
            .zip(&self.gram[0])
            .map(|(x, g)| x * g)
            .sum())
    }

    /// Condition (*) for the first Chern class of `v`: `H^2 | c1.H`.
    pub fn satisfies_condition_star(&self, v: &MukaiVector) -> Result<bool> {
        Ok(self.dot_h(&v.c1)?.is_multiple_of(&self.h_squared()))
    }

    /// Validates dimensions and returns non-fatal warnings about `v`.
    pub fn validate(&self, v: &MukaiVector) -> Result<Vec<String>> {
        self.check(v)?;
        let mut warnings = Vec::new();
        if !self.satisfies_condition_star(v)? {
            warnings.push(format!(
                "class {v} violates condition (*): H^2 = {} does not divide c1.H = {}",
                self.h_squared(),
                self.dot_h(&v.c1)?
            ));
        }
        Ok(warnings)
    }
}

impl Serialize for SurfaceData {
    /// `{"d_prime": d', "gram": [[...]]}`.
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let gram: Vec<Vec<serde_json::Value>> = self
            .gram
            .iter()
            .map(|row| row.iter().map(int_to_json).collect())
            .collect();
        serde_json::json!({ "d_prime": int_to_json(&self.d_prime), "gram": gram }).serialize(s)
    }
}

/// Counts (positive, negative, zero) directions of a symmetric integer
/// matrix by exact congruence diagonalization over the rationals.
fn inertia(gram: &[Vec<Int>]) -> (usize, usize, usize) {
    let n = gram.len();
    let mut a: Vec<Vec<Rat>> = gram
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // No nonzero diagonal entry: fold a nonzero off-diagonal pair.
                let pair = active.iter().enumerate().find_map(|(k, &i)| {
                    active[k + 1..]
                        .iter()
                        .find(|&&j| !a[i][j].is_zero())
                        .map(|&j| (i, j))
                });
                let Some((i, j)) = pair else { break };
                // row_i += row_j ; col_i += col_j
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[p][p].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = &a[i][p] / &d;
            if f.is_zero() {
                continue;
            }
            for &j in &active {
                let v = &f * &a[p][j];
                a[i][j] -= v;
            }
        }
        for &i in &active {
            a[i][p] = Rat::zero();
            a[p][i] = Rat::zero();
        }
    }
    (pos, neg, n - pos - neg)
}

/// A class in `NS(X)`, as coordinates in the surface's basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NsClass {
    pub coords: Vec<Int>,
}

impl NsClass {
    pub fn new(coords: Vec<Int>) -> Self {
        NsClass { coords }
    }

    /// `n H` on a rank-one surface.
    pub fn multiple_of_h(n: i64) -> Self {
        NsClass { coords: vec![BigInt::from(n)] }
    }

    pub fn zero(rank: usize) -> Self {
        NsClass { coords: vec![Int::zero(); rank] }
    }

    pub fn scale(&self, k: &Int) -> Self {
        NsClass { coords: self.coords.iter().map(|x| x * k).collect() }
    }

    pub fn add(&self, other: &NsClass) -> Self {
        NsClass {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    fn neg(&self) -> Self {
        NsClass { coords: self.coords.iter().map(|x| -x).collect() }
    }
}

/// Mukai vector `(r, c1, s)` with `s = ch2 + r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MukaiVector {
    pub r: Int,
    pub c1: NsClass,
    pub s: Int,
}

impl MukaiVector {
    pub fn new(r: Int, c1: NsClass, s: Int) -> Self {
        MukaiVector { r, c1, s }
    }

    /// `(r, nH, s)` on a rank-one surface.
    pub fn rank_one(r: i64, n: i64, s: i64) -> Self {
        MukaiVector {
            r: BigInt::from(r),
            c1: NsClass::multiple_of_h(n),
            s: BigInt::from(s),
        }
    }

    /// From rank, first Chern class and `ch2`; the rank is added to `ch2`.
    pub fn from_chern(r: Int, c1: NsClass, ch2: Int) -> Self {
        let s = &ch2 + &r;
        MukaiVector { r, c1, s }
    }

    pub fn ch2(&self) -> Int {
        &self.s - &self.r
    }

    /// `k v` for an integer `k`.
    pub fn scale(&self, k: &Int) -> Self {
        MukaiVector {
            r: &self.r * k,
            c1: self.c1.scale(k),
            s: &self.s * k,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!([
            int_to_json(&self.r),
            self.c1.coords.iter().map(int_to_json).collect::<Vec<_>>(),
            int_to_json(&self.s)
        ])
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = || Error::Input(format!("expected [r, [c...], s], got {v}"));
        let arr = v.as_array().ok_or_else(bad)?;
        if arr.len() != 3 {
            return Err(bad());
        }
        let coords = arr[1]
            .as_array()
            .ok_or_else(bad)?
            .iter()
            .map(int_from_json)
            .collect::<Result<Vec<_>>>()?;
        Ok(MukaiVector {
            r: int_from_json(&arr[0])?,
            c1: NsClass::new(coords),
            s: int_from_json(&arr[2])?,
        })
    }
}

impl fmt::Display for MukaiVector {
    /// `r,c,s` for rank-one NS, `r,[c1,...],s` otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c1.coords.len() == 1 {
            write!(f, "{},{},{}", self.r, self.c1.coords[0], self.s)
        } else {
            let cs: Vec<String> = self.c1.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "{},[{}],{}", self.r, cs.join(","), self.s)
        }
    }
}

impl FromStr for MukaiVector {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let t = text.trim();
        let bad = |why: &str| Error::Input(format!("malformed Mukai vector {t:?}: {why}"));
        let parse = |x: &str| -> Result<Int> {
            x.trim()
                .parse::<BigInt>()
                .map_err(|_| bad(&format!("{:?} is not an integer", x.trim())))
        };
        if let Some(open) = t.find('[') {
            let close = t.rfind(']').ok_or_else(|| bad("unclosed '['"))?;
            if close < open {
                return Err(bad("mismatched brackets"));
            }
            let r = t[..open]
                .trim()
                .strip_suffix(',')
                .ok_or_else(|| bad("expected ',' before '['"))?;
            let s = t[close + 1..]
                .trim()
                .strip_prefix(',')
                .ok_or_else(|| bad("expected ',' after ']'"))?;
            let inner = t[open + 1..close].trim();
            if inner.is_empty() {
                return Err(bad("empty NS coordinates"));
            }
            let coords = inner.split(',').map(parse).collect::<Result<Vec<_>>>()?;
            return Ok(MukaiVector::new(parse(r)?, NsClass::new(coords), parse(s)?));
        }
        let parts: Vec<&str> = t.split(',').collect();
        if parts.len() != 3 {
            return Err(bad("expected three comma-separated integers r,c,s"));
        }
        Ok(MukaiVector::new(
            parse(parts[0])?,
            NsClass::new(vec![parse(parts[1])?]),
            parse(parts[2])?,
        ))
    }
}

impl Serialize for MukaiVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for MukaiVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        MukaiVector::from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Mukai pairing `c1.c1' - r s' - r' s`.
pub fn pairing(surface: &SurfaceData, v: &MukaiVector, w: &MukaiVector) -> Result<Int> {
    let cc = surface.intersect(&v.c1, &w.c1)?;
    Ok(cc - &v.r * &w.s - &w.r * &v.s)
}

/// `chi(v, w) = -<v, w>` (Riemann-Roch).
pub fn euler_characteristic(surface: &SurfaceData, v: &MukaiVector, w: &MukaiVector) -> Result<Int> {
    pairing(surface, v, w).map(|p| -p)
}

/// Mukai vector of the twist by `kH`: `(r, c1 + k r H, s + k c1.H + k^2 r d')`.
pub fn twist(surface: &SurfaceData, v: &MukaiVector, k: &Int) -> Result<MukaiVector> {
    let ch = surface.dot_h(&v.c1)?;
    let h = surface.polarization();
    Ok(MukaiVector {
        r: v.r.clone(),
        c1: v.c1.add(&h.scale(&(k * &v.r))),
        s: &v.s + k * ch + k * k * &v.r * surface.d_prime(),
    })
}

/// Mukai vector of the shift `E[1]`.
pub fn shift(v: &MukaiVector) -> MukaiVector {
    MukaiVector {
        r: -&v.r,
        c1: v.c1.neg(),
        s: -&v.s,
    }
}

/// `Delta_H = (c1.H)^2 / H^2 - 2 r s`.
pub fn discriminant(surface: &SurfaceData, v: &MukaiVector) -> Result<Rat> {
    let ch = surface.dot_h(&v.c1)?;
    Ok(BigRational::new(&ch * &ch, surface.h_squared())
        - BigRational::from_integer(BigInt::from(2) * &v.r * &v.s))
}

pub fn self_pairing(surface: &SurfaceData, v: &MukaiVector) -> Result<Int> {
    pairing(surface, v, v)
}

pub fn is_root(surface: &SurfaceData, v: &MukaiVector) -> Result<bool> {
    Ok(self_pairing(surface, v)? == BigInt::from(-2))
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

    #[test]
    fn pairing_examples() {
        assert_eq!(pairing(&s(1), &v(1, 0, 1), &v(1, 0, 1)).unwrap(), int(-2));
        assert_eq!(pairing(&s(1), &v(0, 1, 0), &v(0, 1, 0)).unwrap(), int(2));
        assert_eq!(pairing(&s(10), &v(3, -1, 3), &v(3, -1, 3)).unwrap(), int(2));
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&s(1), &v(1, 0, 1), &v(1, 0, 1)).unwrap(), int(2));
        assert_eq!(euler_characteristic(&s(1), &v(1, 1, 2), &v(1, 1, 2)).unwrap(), int(2));
        assert_eq!(euler_characteristic(&s(10), &v(3, -1, 3), &v(1, 0, 1)).unwrap(), int(6));
    }

    #[test]
    fn twist_examples() {
        assert_eq!(twist(&s(10), &v(3, -1, 3), &int(-1)).unwrap(), v(3, -4, 53));
        assert_eq!(twist(&s(7), &v(2, -1, 5), &int(0)).unwrap(), v(2, -1, 5));
        assert_eq!(twist(&s(1), &v(1, 0, 1), &int(1)).unwrap(), v(1, 1, 2));
    }

    #[test]
    fn twist_then_shift_matches_displayed_formula() {
        // v(F(-H)[1]) = (-r, -C + rH, -s - d'r + C.H)
        let surface = s(10);
        let f = v(3, -1, 3);
        let got = shift(&twist(&surface, &f, &int(-1)).unwrap());
        assert_eq!(got, v(-3, 1 + 3, -3 - 30 + (-20)));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift(&v(1, 0, 1)), v(-1, 0, -1));
        assert_eq!(shift(&v(3, -1, 3)), v(-3, 1, -3));
        assert_eq!(shift(&shift(&v(2, -1, 1))), v(2, -1, 1));
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&s(10), &v(3, -1, 3)).unwrap(), rat_int(2));
        assert_eq!(discriminant(&s(10), &v(3, -4, 53)).unwrap(), rat_int(2));
        assert_eq!(discriminant(&s(1), &v(1, 0, 1)).unwrap(), rat_int(-2));
        assert_eq!(discriminant(&s(3), &v(2, 1, 1)).unwrap(), rat(36 - 24, 6));
    }

    #[test]
    fn root_examples() {
        assert!(is_root(&s(1), &v(1, 0, 1)).unwrap());
        assert!(is_root(&s(1), &v(2, 1, 1)).unwrap());
        assert!(!is_root(&s(1), &v(1, 1, 1)).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_an_input_error() {
        let surface = s(2);
        let w = MukaiVector::new(int(1), NsClass::new(vec![int(0), int(1)]), int(1));
        let err = pairing(&surface, &v(1, 0, 1), &w).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 1, got: 2 });
        assert!(err.is_input_error());
    }

    #[test]
    fn text_form_round_trip() {
        let a: MukaiVector = "3,-1,3".parse().unwrap();
        assert_eq!(a, v(3, -1, 3));
        assert_eq!(a.to_string(), "3,-1,3");
        let b: MukaiVector = " 2 , [1, -2] , 5 ".parse().unwrap();
        assert_eq!(b.c1.coords, vec![int(1), int(-2)]);
        assert_eq!(b.to_string(), "2,[1,-2],5");
        assert!("3,-1".parse::<MukaiVector>().is_err());
        assert!("3,x,1".parse::<MukaiVector>().is_err());
        assert!("3,[],1".parse::<MukaiVector>().is_err());
        assert!("3,[1,1".parse::<MukaiVector>().is_err());
    }

    #[test]
    fn json_form() {
        let a = v(3, -1, 3);
        assert_eq!(a.to_json().to_string(), "[3,[-1],3]");
        assert_eq!(MukaiVector::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn chern_constructor_adds_rank() {
        let a = MukaiVector::from_chern(int(3), NsClass::multiple_of_h(-1), int(0));
        assert_eq!(a, v(3, -1, 3));
        assert_eq!(a.ch2(), int(0));
    }

    #[test]
    fn surface_validation() {
        assert!(SurfaceData::rank_one(0).is_err());
        assert!(SurfaceData::rank_one(-3).is_err());
        assert_eq!(s(10).genus(), int(11));
        // U(2)-like hyperbolic plane with H^2 = 4: signature (1,1).
        let g = vec![vec![int(4), int(0)], vec![int(0), int(-2)]];
        assert!(SurfaceData::with_gram(g).is_ok());
        // Two positive directions violate Hodge index.
        let g = vec![vec![int(4), int(0)], vec![int(0), int(2)]];
        assert!(SurfaceData::with_gram(g).is_err());
        // Degenerate.
        let g = vec![vec![int(2), int(1)], vec![int(1), int(0)]];
        assert!(SurfaceData::with_gram(g).is_ok());
        let g = vec![vec![int(2), int(2)], vec![int(2), int(2)]];
        assert!(SurfaceData::with_gram(g).is_err());
        let g = vec![vec![int(2), int(1)], vec![int(0), int(-2)]];
        assert!(SurfaceData::with_gram(g).is_err());
        let g = vec![vec![int(3)]];
        assert!(SurfaceData::with_gram(g).is_err());
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let g = vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(-2)],
        ];
        assert_eq!(inertia(&g), (1, 2, 0));
        let g = vec![vec![int(0), int(0)], vec![int(0), int(-1)]];
        assert_eq!(inertia(&g), (0, 1, 1));
    }

    #[test]
    fn condition_star_warning() {
        let g = vec![vec![int(4), int(2)], vec![int(2), int(-2)]];
        let surface = SurfaceData::with_gram(g).unwrap();
        let w = MukaiVector::new(int(2), NsClass::new(vec![int(0), int(1)]), int(1));
        assert!(!surface.satisfies_condition_star(&w).unwrap());
        assert_eq!(surface.validate(&w).unwrap().len(), 1);
        let w = MukaiVector::new(int(2), NsClass::new(vec![int(1), int(0)]), int(1));
        assert!(surface.validate(&w).unwrap().is_empty());
    }
}
