//! Property tests for the exact arithmetic layer: field laws hold on
//! random scalars, the inner product is bilinear, canonicalisation kills
//! scaling, and row reduction is idempotent and span-invariant.

use obstructa::exactlin::{inner, rref, RayVector, Scalar};
use proptest::prelude::*;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(rp, rq, ip, iq)| {
        Scalar::from_fraction(rp, rq).add(&Scalar::from_fraction(ip, iq).mul(&Scalar::sqrt2()))
    })
}

fn nonzero_scalar() -> impl Strategy<Value = Scalar> {
    scalar().prop_filter("nonzero", |s| !s.is_zero())
}

fn vector(dim: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec(scalar(), dim)
}

fn ray(dim: usize) -> impl Strategy<Value = RayVector> {
    vector(dim).prop_filter_map("nonzero vector", |coords| RayVector::new(coords).ok())
}

proptest! {
    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&a.neg()), Scalar::zero());
        prop_assert_eq!(a.mul(&Scalar::one()), a.clone());
    }

    #[test]
    fn division_inverts_multiplication(a in scalar(), b in nonzero_scalar()) {
        let q = a.div(&b).unwrap();
        prop_assert_eq!(q.mul(&b), a);
    }

    #[test]
    fn inner_is_bilinear_and_symmetric(
        u in vector(3), v in vector(3), w in vector(3), c in scalar()
    ) {
        // work on raw coordinate lists through ray-free arithmetic: the
        // form is sum of products, evaluated directly
        let dot = |x: &[Scalar], y: &[Scalar]| {
            x.iter().zip(y.iter()).fold(Scalar::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
        };
        let scaled: Vec<Scalar> = v.iter().map(|x| c.mul(x)).collect();
        let summed: Vec<Scalar> = v.iter().zip(w.iter()).map(|(a, b)| a.add(b)).collect();
        prop_assert_eq!(dot(&u, &v), dot(&v, &u));
        prop_assert_eq!(dot(&u, &scaled), c.mul(&dot(&u, &v)));
        prop_assert_eq!(dot(&u, &summed), dot(&u, &v).add(&dot(&u, &w)));
    }

    #[test]
    fn inner_positive_on_nonzero_rays(r in ray(3)) {
        prop_assert!(!inner(&r, &r).unwrap().is_zero());
    }

    #[test]
    fn canonicalisation_absorbs_scaling(r in ray(3), c in nonzero_scalar()) {
        let scaled: Vec<Scalar> = r.coords().iter().map(|x| c.mul(x)).collect();
        prop_assert_eq!(RayVector::new(scaled).unwrap(), r);
    }

    #[test]
    fn rref_idempotent_and_span_invariant(
        a in ray(3), b in ray(3), c in nonzero_scalar()
    ) {
        let s = rref(3, &[a.clone(), b.clone()]).unwrap();
        // rerunning on the echelon rows reproduces the subspace
        let rows: Vec<RayVector> = s
            .rows()
            .iter()
            .map(|r| RayVector::new(r.clone()).unwrap())
            .collect();
        let again = rref(3, &rows).unwrap();
        prop_assert_eq!(&again, &s);
        // permutation and rescaling of the spanning set changes nothing
        let scaled_b = RayVector::new(b.coords().iter().map(|x| c.mul(x)).collect()).unwrap();
        let permuted = rref(3, &[scaled_b, a]).unwrap();
        prop_assert_eq!(&permuted, &s);
    }
}
