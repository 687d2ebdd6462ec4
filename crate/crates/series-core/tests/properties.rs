//! Randomized laws for the exact kernel: ring axioms, substitution,
//! implicit solving, and division against a regular divisor.

use num::Zero;
use proptest::prelude::*;
use series_core::{
    solve_implicit, weierstrass_divide, Coeff, Dual, GRat, MultiIndex, Poly, Series, SeriesTuple,
    VarSet,
};
use std::sync::Arc;

fn grat() -> impl Strategy<Value = GRat> {
    (-9i64..=9, 1i64..=4, -9i64..=9, 1i64..=4).prop_map(|(a, p, b, q)| GRat {
        re: num::BigRational::new(a.into(), p.into()),
        im: num::BigRational::new(b.into(), q.into()),
    })
}

fn small_rat() -> impl Strategy<Value = GRat> {
    (-4i64..=4, 1i64..=2).prop_map(|(a, p)| GRat {
        re: num::BigRational::new(a.into(), p.into()),
        im: num::BigRational::zero(),
    })
}

/// Random series in `nv` variables at truncation `deg`.
fn series(nv: usize, deg: u32) -> impl Strategy<Value = Series<GRat>> {
    let exp = prop::collection::vec(0u8..=3, nv);
    prop::collection::vec((exp, grat()), 0..8).prop_map(move |terms| {
        let names: Vec<String> = (0..nv).map(|i| format!("x{i}")).collect();
        let vars = VarSet::new(names);
        let mut s = Series::zero(&vars, deg);
        for (e, c) in terms {
            let mi = MultiIndex::from_slice(&e);
            s = s
                .add(&Series::monomial(&vars, deg, mi, c))
                .expect("same universe");
        }
        s
    })
}

/// Random series with zero constant term (valid substitution image).
fn pointed_series(nv: usize, deg: u32) -> impl Strategy<Value = Series<GRat>> {
    series(nv, deg).prop_map(|s| {
        let c = s.const_term();
        s.add_constant(&c.neg())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in series(2, 6), b in series(2, 6), c in series(2, 6)) {
        let ab = a.add(&b).unwrap();
        prop_assert_eq!(ab.add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
        prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b.mul(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().mul(&c).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
        prop_assert!(a.sub(&a).unwrap().is_zero());
        let one = Series::one(a.vars(), a.degree());
        prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
    }

    #[test]
    fn conjugation_is_an_involutive_morphism(a in series(2, 5), b in series(2, 5)) {
        // Partner pairing x0 ↔ x1.
        let perm = [1usize, 0];
        let ca = a.conjugate(&perm, None).unwrap();
        prop_assert_eq!(ca.conjugate(&perm, None).unwrap(), a.clone());
        let prod = a.mul(&b).unwrap().conjugate(&perm, None).unwrap();
        prop_assert_eq!(prod, ca.mul(&b.conjugate(&perm, None).unwrap()).unwrap());
    }

    #[test]
    fn product_rule(a in series(2, 6), b in series(2, 6)) {
        let d = |s: &Series<GRat>, v: usize| s.differentiate(v).unwrap();
        let lhs = d(&a.mul(&b).unwrap(), 0);
        let rhs = d(&a, 0)
            .mul(&b.truncated(5))
            .unwrap()
            .add(&a.truncated(5).mul(&d(&b, 0)).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn substitution_is_a_ring_morphism(
        a in series(2, 5),
        b in series(2, 5),
        g0 in pointed_series(2, 5),
        g1 in pointed_series(2, 5),
    ) {
        let images = vec![g0, g1];
        let lhs = a.mul(&b).unwrap().substitute(&images).unwrap();
        let rhs = a
            .substitute(&images)
            .unwrap()
            .mul(&b.substitute(&images).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        let lhs2 = a.add(&b).unwrap().substitute(&images).unwrap();
        let rhs2 = a
            .substitute(&images)
            .unwrap()
            .add(&b.substitute(&images).unwrap())
            .unwrap();
        prop_assert_eq!(lhs2, rhs2);
    }

    #[test]
    fn unit_inversion_cancels(a in series(2, 6), u in grat()) {
        prop_assume!(!u.is_zero());
        // Force a unit constant term.
        let c = a.const_term();
        let f = a.add_constant(&c.neg()).add_constant(&u);
        let inv = f.invert_unit().unwrap();
        prop_assert_eq!(f.mul(&inv).unwrap(), Series::one(f.vars(), f.degree()));
    }

    #[test]
    fn implicit_solutions_vanish_identically(r in series(2, 6)) {
        // G(x, u) = u − R(x, u) with R stripped of its constant and
        // linear-u terms, so the origin Jacobian is 1.
        let vars = r.vars().clone();
        let d = r.degree();
        let u = Series::var(&vars, d, 1).unwrap();
        let c = r.const_term();
        let lin = r.coeff(&MultiIndex::unit(2, 1));
        let r = r
            .add_constant(&c.neg())
            .sub(&u.scale(&lin))
            .unwrap();
        let g = SeriesTuple::new(vec![u.sub(&r).unwrap()]).unwrap();
        let sol = solve_implicit(&g, 1).unwrap();
        prop_assert!(sol.components[0].const_term().is_zero());
        // Residual check: substitute back.
        let xv = sol.components[0].vars().clone();
        let x = Series::var(&xv, d, 0).unwrap();
        let res = g
            .substitute(&[x, sol.components[0].clone()])
            .unwrap();
        prop_assert!(res.is_zero());
    }

    #[test]
    fn division_reconstructs_and_is_unique(
        q0 in series(2, 8),
        r_raw in series(2, 8),
        mixed in series(2, 8),
        kappa in 1u32..=2,
        j in 1u32..=2,
    ) {
        let vars = q0.vars().clone();
        let d = 8u32;
        let z1 = Series::var(&vars, d, 0).unwrap();
        // Divisor: z1^κ on the axis plus mixed terms of outer degree ≥ 1,
        // kept at degree ≤ 3 so products stay exact below truncation.
        let mut b = Series::one(&vars, d);
        for _ in 0..kappa {
            b = b.mul(&z1).unwrap();
        }
        let mut mixed_part = Series::zero(&vars, d);
        for (e, c) in mixed.terms() {
            if e.get(1) >= 1 && e.degree() <= 3 && e.degree() as u32 >= kappa {
                mixed_part = mixed_part
                    .add(&Series::monomial(&vars, d, e.clone(), c.clone()))
                    .unwrap();
            }
        }
        let b = b.add(&mixed_part).unwrap();
        let k = kappa * j;
        // Quotient degree small enough that q·b^j is exact at D.
        let q0 = q0.truncated(d - 3 * j - 2).polynomial_extended(d);
        // Remainder: z1-degree < K.
        let mut r0 = Series::zero(&vars, d);
        for (e, c) in r_raw.terms() {
            if (e.get(0) as u32) < k {
                r0 = r0.add(&Series::monomial(&vars, d, e.clone(), c.clone())).unwrap();
            }
        }
        let mut p = b.clone();
        for _ in 1..j {
            p = p.mul(&b).unwrap();
        }
        let f = q0.mul(&p).unwrap().add(&r0).unwrap();
        let (q, r) = weierstrass_divide(&f, &b, j, 0).unwrap();
        prop_assert_eq!(&r, &r0, "remainder must be recovered exactly");
        let margin = d - k;
        prop_assert_eq!(q.truncated(margin), q0.truncated(margin), "quotient recovered");
        let recon = q.mul(&p).unwrap().add(&r).unwrap();
        prop_assert_eq!(recon.truncated(margin), f.truncated(margin));
    }

    #[test]
    fn json_round_trip(a in series(3, 5)) {
        let v = series_core::json::series_to_json(&a);
        let back = series_core::json::series_from_json(&v).unwrap();
        prop_assert_eq!(back, a);
        let s1 = series_core::json::to_canonical_string(&v);
        let s2 = series_core::json::to_canonical_string(&series_core::json::series_to_json(
            &series_core::json::series_from_json(&v).unwrap(),
        ));
        prop_assert_eq!(s1, s2);
    }

    #[test]
    fn dual_slopes_match_difference_quotients(
        coeffs in prop::collection::vec((0u8..=3, 0u8..=3, small_rat()), 1..6),
        x0 in small_rat(),
        y0 in small_rat(),
    ) {
        // p(x, y) with rational coefficients; perturb x in slot (0, 1).
        let mut p = Poly::zero();
        for (i, j, c) in coeffs {
            let m = series_core::Mono::power(0, i).mul(&series_core::Mono::power(1, j));
            p = p.add(&Poly { terms: vec![(m, c)] });
        }
        let dx = Dual::perturbed(x0.clone(), 0, 1);
        let dy = Dual::constant(y0.clone());
        let v = p.eval_in(&[dx, dy]);
        // Exact symbolic derivative for comparison.
        let mut dp = Poly::zero();
        for (m, c) in &p.terms {
            let e = m.0.iter().find(|&&(v, _)| v == 0).map_or(0, |&(_, e)| e);
            if e > 0 {
                let reduced = series_core::Mono::power(0, e - 1)
                    .mul(&m.div(&series_core::Mono::power(0, e)).unwrap());
                dp = dp.add(&Poly {
                    terms: vec![(reduced, c.mul(&GRat::from_int(e as i64)))],
                });
            }
        }
        let expect = dp.eval(&[x0.clone(), y0.clone()]);
        prop_assert_eq!(v.slope(0), expect);
        prop_assert_eq!(v.v, p.eval(&[x0, y0]));
    }
}

#[test]
fn var_set_round_trips_names() {
    let vars: Arc<VarSet> = VarSet::new(vec!["z", "w", "chi", "tau"]);
    assert_eq!(vars.index_of("chi"), Some(2));
    assert_eq!(vars.name(3), "tau");
}
