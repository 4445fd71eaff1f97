//! Property tests for the exact-arithmetic substrate: ring axioms, graded
//! multiplicativity, exact division, serialization round-trips, Leibniz,
//! exponential maps and the Dixmier commutation identity.

use cable_core::derivation::{Derivation, LocalizedElement};
use cable_core::poly::{format_text, parse_text, Bigrading, Monomial, Polynomial, VarSet};
use cable_core::rat::{rat_frac, Rat};
use num_traits::One;
use proptest::prelude::*;

fn dim5_vars() -> VarSet {
    VarSet::new(["a", "x", "y", "z", "v"]).unwrap()
}

fn dim5_grading(vars: &VarSet) -> Bigrading {
    Bigrading::new(
        vars,
        &[
            ("a", (1, 0)),
            ("x", (3, 1)),
            ("y", (3, 2)),
            ("z", (3, 3)),
            ("v", (2, 1)),
        ],
    )
    .unwrap()
}

fn dim5_derivation(vars: &VarSet) -> Derivation {
    let p = |s: &str| parse_text(vars, s).unwrap();
    Derivation::new(
        vars,
        &[
            ("z", p("y")),
            ("y", p("x")),
            ("x", p("a^3")),
            ("v", p("a^2")),
        ],
    )
    .unwrap()
}

fn arb_rat() -> impl Strategy<Value = Rat> {
    ((-9i64..=9), (1i64..=4)).prop_map(|(n, d)| rat_frac(n, d))
}

fn arb_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let term = (proptest::collection::vec(0..=max_exp, 5), arb_rat());
    proptest::collection::vec(term, 0..=max_terms).prop_map(|terms| {
        let vars = dim5_vars();
        Polynomial::from_terms(&vars, terms.into_iter().map(|(e, c)| (Monomial::new(e), c)))
            .unwrap()
    })
}

fn arb_nonzero_poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    arb_poly(max_terms, max_exp).prop_filter("non-zero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_axioms(p in arb_poly(4, 2), q in arb_poly(4, 2), r in arb_poly(4, 2)) {
        let pq = p.add(&q).unwrap();
        prop_assert_eq!(&pq, &q.add(&p).unwrap());
        prop_assert_eq!(p.mul(&q).unwrap(), q.mul(&p).unwrap());
        let assoc_l = p.mul(&q).unwrap().mul(&r).unwrap();
        let assoc_r = p.mul(&q.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(assoc_l, assoc_r);
        let dist_l = p.mul(&q.add(&r).unwrap()).unwrap();
        let dist_r = p.mul(&q).unwrap().add(&p.mul(&r).unwrap()).unwrap();
        prop_assert_eq!(dist_l, dist_r);
    }

    #[test]
    fn graded_pieces_multiply(p in arb_nonzero_poly(4, 2), q in arb_nonzero_poly(4, 2)) {
        let vars = dim5_vars();
        let g = dim5_grading(&vars);
        // Take leading homogeneous components: their product is homogeneous
        // of the summed bigrade.
        let pc = p.bigrade_decompose(&g).pop().unwrap();
        let qc = q.bigrade_decompose(&g).pop().unwrap();
        let prod = pc.1.mul(&qc.1).unwrap();
        prop_assert_eq!(prod.bigrade(&g), Some(pc.0 + qc.0));
    }

    #[test]
    fn divide_exact_inverts_multiplication(
        p in arb_poly(4, 2),
        q in arb_nonzero_poly(4, 2),
    ) {
        let prod = p.mul(&q).unwrap();
        prop_assert_eq!(prod.divide_exact(&q).unwrap(), p);
    }

    #[test]
    fn text_round_trip(p in arb_poly(6, 3)) {
        let vars = dim5_vars();
        let s = format_text(&p);
        let back = parse_text(&vars, &s).unwrap();
        prop_assert_eq!(back, p);
    }

    #[test]
    fn derivative_is_linear_and_leibniz(p in arb_poly(4, 2), q in arb_poly(4, 2)) {
        let sum = p.add(&q).unwrap();
        let d_sum = sum.partial_derivative("v").unwrap();
        let d_p = p.partial_derivative("v").unwrap();
        let d_q = q.partial_derivative("v").unwrap();
        prop_assert_eq!(&d_sum, &d_p.add(&d_q).unwrap());
        let prod = p.mul(&q).unwrap();
        let d_prod = prod.partial_derivative("v").unwrap();
        let leibniz = d_p.mul(&q).unwrap().add(&p.mul(&d_q).unwrap()).unwrap();
        prop_assert_eq!(d_prod, leibniz);
    }

    #[test]
    fn derivation_leibniz(p in arb_poly(3, 2), q in arb_poly(3, 2)) {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let lhs = d.apply(&p.mul(&q).unwrap()).unwrap();
        let rhs = d
            .apply(&p)
            .unwrap()
            .mul(&q)
            .unwrap()
            .add(&p.mul(&d.apply(&q).unwrap()).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exp_map_is_a_homomorphism(
        p in arb_poly(2, 1),
        q in arb_poly(2, 1),
        fa in -3i64..=3,
        ff in -2i64..=2,
    ) {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        // f ranges over the kernel subring generated by a and F.
        let a = parse_text(&vars, "a").unwrap();
        let big_f = parse_text(&vars, "2*a^3*y - x^2").unwrap();
        let f = a
            .scale(&rat_frac(fa, 1))
            .add(&big_f.scale(&rat_frac(ff, 1)))
            .unwrap();
        let lhs = d.exp_map(&f, &p.mul(&q).unwrap(), 512).unwrap();
        let rhs = d
            .exp_map(&f, &p, 512)
            .unwrap()
            .mul(&d.exp_map(&f, &q, 512).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        // exp(-f D) inverts exp(f D).
        let back = d
            .exp_map(&f.neg(), &d.exp_map(&f, &p, 512).unwrap(), 512)
            .unwrap();
        prop_assert_eq!(back, p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    /// For commuting E and D with local slice s:
    /// E(pi_s(f)) = pi_s(E f) - pi_s(D f) * E(s / D s).
    #[test]
    fn dixmier_commutation_identity(f in arb_poly(4, 3)) {
        let vars = dim5_vars();
        let d = dim5_derivation(&vars);
        let e = Derivation::partial(&vars, "v").unwrap();
        let v = parse_text(&vars, "v").unwrap();
        let a2 = parse_text(&vars, "a^2").unwrap();

        let lhs = d.dixmier(&v, &f, 512).unwrap().derive(&e).unwrap();
        let pi_ef = d.dixmier(&v, &e.apply(&f).unwrap(), 512).unwrap();
        let pi_df = d.dixmier(&v, &d.apply(&f).unwrap(), 512).unwrap();
        // E(v / Dv) = 1 / a^2.
        let e_slice = LocalizedElement::new(
            Polynomial::constant(&vars, Rat::one()),
            a2,
            1,
        )
        .unwrap();
        let rhs = pi_ef.sub(&pi_df.mul(&e_slice).unwrap()).unwrap();
        prop_assert!(lhs.eq_element(&rhs).unwrap());
    }
}
