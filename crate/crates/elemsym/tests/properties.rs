//! Property tests over ℤ/27[X, Y] and ℤ/27.

use elemsym::ideal::{certify, product_certificate, CertifiedElement, IdealPresentation};
use elemsym::matrix::{is_alternating, is_symplectic, pfaffian, ExactMatrix};
use elemsym::ring::{poly, zmod};
use elemsym::word::check_relation;
use elemsym::{sigma, Letter, Relation, Ring, RingDescriptor, RingElement, Word};
use proptest::prelude::*;

fn ring() -> Ring {
    poly(&zmod(27).unwrap(), &["X", "Y"]).unwrap()
}

fn build(r: &Ring, terms: &[(i64, u32, u32)]) -> RingElement {
    let x = RingElement::var(r, "X").unwrap();
    let y = RingElement::var(r, "Y").unwrap();
    terms.iter().fold(RingElement::zero(r), |acc, &(c, a, b)| {
        acc.add(&RingElement::int(r, c).mul(&x.pow(a)).mul(&y.pow(b)))
    })
}

fn terms() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
    prop::collection::vec((-40i64..40, 0u32..3, 0u32..3), 0..4)
}

fn elem() -> impl Strategy<Value = RingElement> {
    terms().prop_map(|t| build(&ring(), &t))
}

/// Symplectic letters at size 6 with a polynomial parameter.
fn se_letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1usize..=6, 1usize..=6, terms(), any::<bool>()), 0..5).prop_map(|v| {
        v.into_iter()
            .map(|(i, j, t, inv)| {
                let j = if i == j { sigma(i) } else { j };
                let l = Letter::se(i, j, build(&ring(), &t));
                if inv {
                    l.inverse()
                } else {
                    l
                }
            })
            .collect()
    })
}

fn e_letters() -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((1usize..=4, 1usize..=4, terms()), 0..5).prop_map(|v| {
        v.into_iter()
            .map(|(i, j, t)| Letter::e(i, if i == j { i % 4 + 1 } else { j }, build(&ring(), &t)))
            .collect()
    })
}

fn alternating(r: &Ring, n: usize, vals: &[i64]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(r, n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            m.set(i, j, RingElement::int(r, vals[k]));
            m.set(j, i, RingElement::int(r, -vals[k]));
            k += 1;
        }
    }
    m
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in elem(), b in elem(), c in elem()) {
        let r = ring();
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.add(&a.neg()).is_zero());
        prop_assert_eq!(a.mul(&RingElement::one(&r)), a.clone());
        prop_assert_eq!(a.sub(&b), a.add(&b.neg()));
        prop_assert_eq!(a.scale(27), RingElement::zero(&r));
    }

    #[test]
    fn element_json_round_trip(a in elem()) {
        let r = ring();
        let back = RingElement::from_json(&r, &a.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), a.to_json());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn ring_descriptor_json_round_trip(m in 2u64..200) {
        let r = poly(&zmod(m).unwrap(), &["X"]).unwrap();
        let back = RingDescriptor::from_json(&r.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), r.to_json());
    }

    #[test]
    fn symplectic_words_are_homomorphic(u in se_letters(), v in se_letters()) {
        let r = ring();
        let (u, v) = (Word::from_letters(&r, 6, u), Word::from_letters(&r, 6, v));
        let (mu, mv) = (u.evaluate().unwrap(), v.evaluate().unwrap());
        prop_assert_eq!(u.concat(&v).evaluate().unwrap(), mu.mul(&mv));
        prop_assert!(u.concat(&u.inverse()).evaluate().unwrap().is_identity());
        prop_assert!(is_symplectic(&mu).unwrap());
        prop_assert!(mu.det().unwrap().is_one());
    }

    #[test]
    fn linear_words_are_homomorphic(u in e_letters(), v in e_letters()) {
        let r = ring();
        let (u, v) = (Word::from_letters(&r, 4, u), Word::from_letters(&r, 4, v));
        let prod = u.evaluate().unwrap().mul(&v.evaluate().unwrap());
        prop_assert_eq!(u.concat(&v).evaluate().unwrap(), prod.clone());
        prop_assert_eq!(u.concat(&v).inverse().evaluate().unwrap().mul(&prod), ExactMatrix::identity(&r, 4));
        prop_assert!(prod.det().unwrap().is_one());
    }

    #[test]
    fn word_json_round_trip(u in se_letters()) {
        let r = ring();
        let w = Word::from_letters(&r, 6, u);
        let back = Word::from_json(&r, 6, None, &w.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), w.to_json());
        prop_assert_eq!(back.evaluate().unwrap(), w.evaluate().unwrap());
    }

    #[test]
    fn matrix_json_round_trip(u in se_letters()) {
        let r = ring();
        let m = Word::from_letters(&r, 6, u).evaluate().unwrap();
        prop_assert_eq!(ExactMatrix::from_json(&r, &m.to_json()).unwrap(), m);
    }

    #[test]
    fn commutator_relations(a in elem(), b in elem(), i in 1usize..=6, j in 1usize..=6, k in 1usize..=6, l in 1usize..=6) {
        let rels = [
            Relation::Long { i, j, k },
            Relation::Short { i, k },
            Relation::Mixed { i, j },
            Relation::Disjoint { i, j, k, l },
        ];
        for rel in rels {
            // Index choices outside the side conditions are rejected, never miscomputed.
            if let Ok(holds) = check_relation(rel, 6, &a, &b) {
                prop_assert!(holds, "{:?}", rel);
            }
        }
        if i <= 4 && j <= 4 && k <= 4 {
            if let Ok(holds) = check_relation(Relation::Linear { i, j, k }, 4, &a, &b) {
                prop_assert!(holds);
            }
        }
    }

    #[test]
    fn certificates_are_sound(c1 in prop::collection::vec(elem(), 2), c2 in prop::collection::vec(elem(), 2), s in elem()) {
        let r = ring();
        let ideal = IdealPresentation::new(&r, vec![RingElement::int(&r, 3), RingElement::var(&r, "X").unwrap()]).unwrap();
        let a = certify(&ideal, c1).unwrap();
        let b = certify(&ideal, c2).unwrap();
        prop_assert!(a.is_valid());
        let sum = a.add(&b).unwrap();
        prop_assert!(sum.is_valid());
        prop_assert_eq!(&sum.value, &a.value.add(&b.value));
        let scaled = a.scale(&s);
        prop_assert!(scaled.is_valid());
        prop_assert_eq!(&scaled.value, &a.value.mul(&s));
        let p = product_certificate(&a, &b).unwrap();
        prop_assert!(p.is_valid());
        prop_assert_eq!(&p.value, &a.value.mul(&b.value));
        prop_assert_eq!(&p.ideal, &ideal.square());
        let back = CertifiedElement::from_json(&ideal, &a.to_json()).unwrap();
        prop_assert_eq!(back, a.clone());
        let iback = IdealPresentation::from_json(Some(&r), &ideal.to_json()).unwrap();
        prop_assert_eq!(iback, ideal);
    }

    #[test]
    fn tampered_certificate_is_rejected(c in prop::collection::vec(-13i64..13, 2), bump in 1i64..27) {
        let r = zmod(27).unwrap();
        let ideal = IdealPresentation::new(&r, vec![RingElement::int(&r, 3), RingElement::int(&r, 9)]).unwrap();
        let mut a = certify(&ideal, c.iter().map(|&x| RingElement::int(&r, x)).collect()).unwrap();
        a.value = a.value.add(&RingElement::int(&r, bump));
        prop_assert!(!a.is_valid());
        prop_assert!(a.validate().is_err());
    }

    #[test]
    fn pfaffian_squares_to_det(vals in prop::collection::vec(-30i64..30, 15)) {
        let r = zmod(27).unwrap();
        for n in [2usize, 4, 6] {
            let m = alternating(&r, n, &vals);
            prop_assert!(is_alternating(&m));
            let pf = pfaffian(&m).unwrap();
            prop_assert_eq!(pf.mul(&pf), m.det().unwrap());
        }
    }

    #[test]
    fn pfaffian_transforms_by_det(vals in prop::collection::vec(-30i64..30, 6), u in se_letters(), v in e_letters()) {
        // pf(Aᵗ φ A) = det(A) pf(φ) with A elementary (det 1) or symplectic.
        let r = ring();
        let phi = alternating(&r, 4, &vals);
        let a = Word::from_letters(&r, 4, v).evaluate().unwrap();
        prop_assert_eq!(pfaffian(&a.transpose().mul(&phi).mul(&a)).unwrap(), pfaffian(&phi).unwrap());
        let phi6 = alternating(&r, 6, &[vals.clone(), vals.clone(), vals[..3].to_vec()].concat());
        let s = Word::from_letters(&r, 6, u).evaluate().unwrap();
        prop_assert_eq!(pfaffian(&s.transpose().mul(&phi6).mul(&s)).unwrap(), pfaffian(&phi6).unwrap());
    }
}
