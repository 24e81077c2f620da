//! Numerics of restricted Lazarsfeld-Mukai bundles and Mercat's conjecture.
//!
//! An instance is a curve `C` of genus `g` on a K3 surface with `Pic = ZH`,
//! `H^2 = 2g - 2`, together with a line bundle `A` on `C` of degree `d`
//! with `h^0(A) = h + 1`. The dual LM bundle has Mukai vector
//! `(h + 1, -H, h')` with `h' = h + g - d`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::certificate::{CheckEntry, Relation};
use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_str, Rat};
use crate::mukai::{MukaiVector, NsClass, SurfaceData};

/// Builds `(X, v(F))` for `F = E_{C,A}^dual` on the surface with `d' = g - 1`.
pub fn lm_vector(g: i64, d: i64, h: i64) -> Result<(SurfaceData, MukaiVector)> {
    if g < 2 || h < 1 {
        return Err(Error::Input(format!("lm vector needs g >= 2 and h >= 1, got g={g}, h={h}")));
    }
    let surface = SurfaceData::rank_one(g - 1)?;
    let v = MukaiVector::new(BigInt::from(h + 1), NsClass::multiple_of_h(-1), BigInt::from(h + g - d));
    Ok((surface, v))
}

pub fn brill_noether_rho(h: i64, d: i64, g: i64) -> i64 {
    g - (h + 1) * (g - d + h)
}

pub fn h_prime(g: i64, d: i64, h: i64) -> i64 {
    h + g - d
}

/// `floor((g - 1)/2)`.
pub fn cliff_line(g: i64) -> i64 {
    (g - 1).div_euclid(2)
}

/// Clifford index of the restriction of `E_{C,A}` to a general `C' in |H|`:
/// `mu - (2/n) h^0 + 2` with `n = h + 1`, `deg = 2g - 2`,
/// `h^0 = 2(h+1) + g - 1 - d`. Equals `2d/(h+1) - 2`.
pub fn cliff_restricted(g: i64, d: i64, h: i64) -> Rat {
    let n = rat_int(h + 1);
    let value = rat_int(2 * g - 2) / &n - rat_int(2) * rat_int(2 * (h + 1) + g - 1 - d) / &n
        + rat_int(2);
    debug_assert_eq!(value, rat_int(2 * d) / &n - rat_int(2));
    value
}

/// `1 + h^2 (h+1) d / (h^2 (h+1) + (h-1))`, the left side of the stability bound.
pub fn stability_bound_lhs(d: i64, h: i64) -> Rat {
    let a = h * h * (h + 1);
    rat_int(1) + BigRational::new(BigInt::from(a * d), BigInt::from(a + h - 1))
}

pub fn stability_bound(g: i64, d: i64, h: i64) -> bool {
    stability_bound_lhs(d, h) < rat_int(g)
}

/// The five conditions of the counterexample oracle, in order:
/// `con.1` to `con.4` and the stability bound.
pub fn oracle_conditions(g: i64, d: i64, h: i64) -> Vec<CheckEntry> {
    vec![
        CheckEntry::new(
            "con.1: rho(h,d,g) >= 0",
            rat_int(brill_noether_rho(h, d, g)),
            Relation::Ge,
            rat_int(0),
        ),
        CheckEntry::new("con.2: h+1 >= 2", rat_int(h + 1), Relation::Ge, rat_int(2)),
        CheckEntry::new("con.3: h+1 <= h'", rat_int(h + 1), Relation::Le, rat_int(h_prime(g, d, h))),
        CheckEntry::new(
            "con.4: Cliff(E|C') < Cliff(C')",
            cliff_restricted(g, d, h),
            Relation::Lt,
            rat_int(cliff_line(g)),
        ),
        CheckEntry::new(
            "stability: 1 + h^2(h+1)d/(h^2(h+1)+h-1) < g",
            stability_bound_lhs(d, h),
            Relation::Lt,
            rat_int(g),
        ),
    ]
}

pub fn oracle_counterexample(g: i64, d: i64, h: i64) -> bool {
    brill_noether_rho(h, d, g) >= 0
        && h + 1 >= 2
        && h < h_prime(g, d, h)
        && cliff_restricted(g, d, h) < rat_int(cliff_line(g))
        && stability_bound(g, d, h)
}

/// Closed-form range in which the restricted bundle refutes `M_{h+1}`.
pub fn corollary_range(g: i64, d: i64, h: i64) -> Result<bool> {
    if h < 2 {
        return Err(Error::Inapplicable(format!("closed form needs rank h+1 >= 3, got h={h}")));
    }
    let (g_q, d_q) = (rat_int(g), rat_int(d));
    if h == 2 {
        let upper = BigRational::new(3.into(), 2.into()) * &d_q - rat_int(3);
        let four_thirds = BigRational::new(4.into(), 3.into()) * &d_q;
        if g.is_odd() {
            Ok(g >= 9 && four_thirds - rat_int(3) < g_q && g_q <= upper)
        } else {
            Ok(four_thirds - rat_int(2) <= g_q && g_q <= upper)
        }
    } else {
        let upper = BigRational::new(BigInt::from(h + 1), BigInt::from(h)) * d_q - rat_int(h + 1);
        Ok(d < g && g_q <= upper)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MercatInstance {
    pub h: i64,
    pub d: i64,
    pub g: i64,
    pub rho: i64,
    pub h_prime: i64,
    #[serde(rename = "cliff", with = "rat_str")]
    pub cliff_restricted: Rat,
    pub cliff_line: i64,
    pub oracle_counterexample: bool,
    pub corollary_range: bool,
    pub stability_bound: bool,
}

impl MercatInstance {
    /// Requires `h >= 2` so that the closed form applies.
    pub fn evaluate(g: i64, d: i64, h: i64) -> Result<Self> {
        Ok(MercatInstance {
            h,
            d,
            g,
            rho: brill_noether_rho(h, d, g),
            h_prime: h_prime(g, d, h),
            cliff_restricted: cliff_restricted(g, d, h),
            cliff_line: cliff_line(g),
            oracle_counterexample: oracle_counterexample(g, d, h),
            corollary_range: corollary_range(g, d, h)?,
            stability_bound: stability_bound(g, d, h),
        })
    }

    pub fn agrees(&self) -> bool {
        self.oracle_counterexample == self.corollary_range
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanGrid {
    pub g_min: i64,
    pub g_max: i64,
    pub h_min: i64,
    pub h_max: i64,
    pub d_min: i64,
    pub d_max: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Agreement {
    pub matches: usize,
    /// `[h, d, g]` triples where the oracle and the closed form disagree.
    pub mismatches: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub grid: ScanGrid,
    pub instances: Vec<MercatInstance>,
    pub agreement: Agreement,
}

pub const CSV_HEADER: &str =
    "h,d,g,rho,h_prime,cliff,cliff_line,oracle_counterexample,corollary_range,stability_bound";

impl ScanReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &MercatInstance> {
        self.instances.iter().filter(|i| i.oracle_counterexample)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for i in &self.instances {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                i.h,
                i.d,
                i.g,
                i.rho,
                i.h_prime,
                i.cliff_restricted,
                i.cliff_line,
                i.oracle_counterexample,
                i.corollary_range,
                i.stability_bound
            )
            .expect("writing to a String");
        }
        out
    }
}

/// Every `(h, d, g)` with `2 <= h <= h_max`, `2 <= g <= g_max`,
/// `0 <= d <= g_max`, ordered by `h`, then `g`, then `d`.
pub fn mercat_scan(g_max: i64, h_max: i64) -> Result<ScanReport> {
    if g_max < 2 || h_max < 2 {
        return Err(Error::Input(format!(
            "scan bounds must be at least 2, got g_max={g_max}, h_max={h_max}"
        )));
    }
    let slices: Vec<(i64, i64)> =
        (2..=h_max).flat_map(|h| (2..=g_max).map(move |g| (h, g))).collect();
    let instances: Vec<MercatInstance> = slices
        .par_iter()
        .map(|&(h, g)| (0..=g_max).map(|d| MercatInstance::evaluate(g, d, h)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let mismatches: Vec<[i64; 3]> =
        instances.iter().filter(|i| !i.agrees()).map(|i| [i.h, i.d, i.g]).collect();
    Ok(ScanReport {
        grid: ScanGrid { g_min: 2, g_max, h_min: 2, h_max, d_min: 0, d_max: g_max },
        agreement: Agreement { matches: instances.len() - mismatches.len(), mismatches },
        instances,
    })
}

/// For each `n >= 4` with `n^2 < g`, the smallest degree `d <= g` giving a
/// counterexample to `M_n`, if any.
pub fn sqrt_claim_witnesses(g: i64) -> Vec<(i64, Option<i64>)> {
    (4..)
        .take_while(|n| n * n < g)
        .map(|n| (n, (0..=g).find(|&d| oracle_counterexample(g, d, n - 1))))
        .collect()
}

/// Whether every `M_n` with `4 <= n < sqrt(g)` has a counterexample of
/// genus `g`. Vacuously true for `g <= 16`.
pub fn sqrt_claim_check(g: i64) -> bool {
    sqrt_claim_witnesses(g).iter().all(|(_, d)| d.is_some())
}

/// When `g = n^2` with `n >= 4`, the smallest degree giving a counterexample
/// to `M_n` on the boundary `n = sqrt(g)`. Informational only.
pub fn sqrt_boundary_witness(g: i64) -> Option<(i64, i64)> {
    let n = (4..).take_while(|n| n * n <= g).last()?;
    if n * n != g {
        return None;
    }
    (0..=g).find(|&d| oracle_counterexample(g, d, n - 1)).map(|d| (n, d))
}

/// `d = floor((2g + 8)/3)`, the degree of the rank-3 family.
pub fn rank_three_degree(g: i64) -> i64 {
    (2 * g + 8).div_euclid(3)
}
