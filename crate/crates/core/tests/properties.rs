use k3wall::mukai::{discriminant, pairing, shift, twist};
use k3wall::restriction::segment_w_sq;
use k3wall::stabspace::{above_parabola, central_charge, k_map, same_phase, vertical_line_of};
use k3wall::{MukaiVector, Point2, Rat, StabilityParam, SurfaceData};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn rat() -> impl Strategy<Value = Rat> {
    (-400i64..=400, 1i64..=60).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn pos_rat() -> impl Strategy<Value = Rat> {
    (1i64..=400, 1i64..=60).prop_map(|(n, d)| Rat::new(n.into(), d.into()))
}

fn surface() -> impl Strategy<Value = SurfaceData> {
    (1i64..=12).prop_map(|d| SurfaceData::rank_one(d).unwrap())
}

fn vector() -> impl Strategy<Value = MukaiVector> {
    (-30i64..=30, -30i64..=30, -30i64..=30).prop_map(|(r, c, s)| MukaiVector::rank_one(r, c, s))
}

fn vector_s_nonzero() -> impl Strategy<Value = MukaiVector> {
    vector().prop_filter("s != 0", |v| !v.s.is_zero())
}

fn stability() -> impl Strategy<Value = StabilityParam> {
    (rat(), pos_rat()).prop_map(|(b, w)| StabilityParam::new(b, w).unwrap())
}

/// `(c/s, r/s)` from the raw coordinates; `c` is the `H`-coefficient.
fn pr_by_hand(v: &MukaiVector) -> Point2 {
    let c = Rat::from_integer(v.c1.coords[0].clone());
    let s = Rat::from_integer(v.s.clone());
    Point2::new(c / &s, Rat::from_integer(v.r.clone()) / s)
}

proptest! {
    #![proptest_config(cfg())]

    #[test]
    fn k_map_lands_strictly_above_parabola(s in surface(), p in stability()) {
        let k = k_map(&s, &p);
        prop_assert!(above_parabola(&s, &k));
        prop_assert!(k.y > Rat::zero());
    }

    #[test]
    fn same_phase_is_scale_invariant(
        s in surface(),
        p in stability(),
        v1 in vector_s_nonzero(),
        v2 in vector_s_nonzero(),
        l1 in 1i64..9,
        l2 in 1i64..9,
    ) {
        let base = same_phase(&s, &p, &v1, &v2).unwrap();
        let scaled = same_phase(&s, &p, &v1.scale(&l1.into()), &v2.scale(&l2.into())).unwrap();
        prop_assert_eq!(base, scaled);
    }

    #[test]
    fn same_phase_matches_central_charges(
        s in surface(),
        p in stability(),
        v1 in vector_s_nonzero(),
        v2 in vector_s_nonzero(),
    ) {
        // Z(v1) and Z(v2) real-proportional iff Re1 Im2 - Re2 Im1 = 0 (w cancels).
        let (re1, im1) = central_charge(&s, &p, &v1).unwrap();
        let (re2, im2) = central_charge(&s, &p, &v2).unwrap();
        let proportional = (re1 * &im2 - re2 * &im1).is_zero();
        prop_assert_eq!(same_phase(&s, &p, &v1, &v2).unwrap(), proportional);
    }

    #[test]
    fn segment_w_sq_matches_line_intersection(
        d in 1i64..=12,
        r in 1i64..=8,
        c in -12i64..=12,
        sv in -20i64..=20,
        t_num in 1i64..60,
    ) {
        let surface = SurfaceData::rank_one(d).unwrap();
        let f = MukaiVector::rank_one(r, c, sv);
        let g = twist(&surface, &f, &BigInt::from(-1)).unwrap();
        prop_assume!(!f.s.is_zero() && !g.s.is_zero());
        let b1 = vertical_line_of(&surface, &f).unwrap();
        let b = &b1 - Rat::new(t_num.into(), 60.into());
        let p = pr_by_hand(&f);
        let q = pr_by_hand(&g);
        // Solve p + u (q - p) = t (b, 1).
        let (dx, dy) = (&q.x - &p.x, &q.y - &p.y);
        let denom = &dx - &b * &dy;
        prop_assume!(!denom.is_zero());
        let u = (&b * &p.y - &p.x) / denom;
        let y = &p.y + u * dy;
        prop_assume!(!y.is_zero());
        let oracle = y.recip() - Rat::from_integer(d.into()) * &b * &b;
        prop_assert_eq!(segment_w_sq(&surface, &f, &b).unwrap(), oracle);
    }

    #[test]
    fn discriminant_invariant_under_twist_and_shift(s in surface(), v in vector(), k in -6i64..=6) {
        let delta = discriminant(&s, &v).unwrap();
        prop_assert_eq!(discriminant(&s, &twist(&s, &v, &k.into()).unwrap()).unwrap(), delta.clone());
        prop_assert_eq!(discriminant(&s, &shift(&v)).unwrap(), delta);
    }

    #[test]
    fn twist_is_an_isometry(s in surface(), v in vector(), w in vector(), k in -6i64..=6) {
        let k = BigInt::from(k);
        let tv = twist(&s, &v, &k).unwrap();
        let tw = twist(&s, &w, &k).unwrap();
        prop_assert_eq!(pairing(&s, &tv, &tw).unwrap(), pairing(&s, &v, &w).unwrap());
    }

    #[test]
    fn pairing_symmetric_and_bilinear(s in surface(), u in vector(), v in vector(), w in vector(), a in -5i64..=5) {
        prop_assert_eq!(pairing(&s, &u, &v).unwrap(), pairing(&s, &v, &u).unwrap());
        let a = BigInt::from(a);
        let sum = MukaiVector::new(
            &u.r * &a + &v.r,
            u.c1.scale(&a).add(&v.c1),
            &u.s * &a + &v.s,
        );
        prop_assert_eq!(
            pairing(&s, &sum, &w).unwrap(),
            pairing(&s, &u, &w).unwrap() * &a + pairing(&s, &v, &w).unwrap()
        );
    }
}
