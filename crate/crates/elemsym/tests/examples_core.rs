//! Worked examples for rings, certificates, matrices and generator words.

use elemsym::ideal::{certify, product_certificate, IdealPresentation};
use elemsym::matrix::{
    is_alternating, is_symplectic, kernel_decomposition, kernel_reconstruct, pfaffian, standard_symplectic_form,
    tilde, ExactMatrix,
};
use elemsym::ring::{localized, poly, zmod};
use elemsym::word::{
    check_relation, expand_mu, expand_rho, linear_generator, mu_matrix, rho_matrix, symplectic_generator,
    word_in_e1, word_in_esp1,
};
use elemsym::{half, invert_unit, ring_arith, sigma, ArithOp, Error, Letter, Relation, Ring, RingElement, Word};
use serde_json::json;

fn z27() -> Ring {
    zmod(27).unwrap()
}

fn int(r: &Ring, x: i64) -> RingElement {
    RingElement::int(r, x)
}

fn ints(r: &Ring, xs: &[i64]) -> Vec<RingElement> {
    xs.iter().map(|&x| int(r, x)).collect()
}

fn unit(r: &Ring, n: usize, k: usize) -> Vec<RingElement> {
    (0..n).map(|i| int(r, (i + 1 == k) as i64)).collect()
}

#[test]
fn arithmetic() {
    let r = z27();
    assert_eq!(ring_arith(ArithOp::Mul, &int(&r, 5), &int(&r, 11)).unwrap(), int(&r, 1));
    let x = int(&r, 17);
    assert!(ring_arith(ArithOp::Add, &x, &x.neg()).unwrap().is_zero());
    let rx = poly(&r, &["X"]).unwrap();
    let xv = RingElement::var(&rx, "X").unwrap();
    let p = xv.add(&RingElement::one(&rx)).mul(&xv.sub(&RingElement::one(&rx)));
    assert_eq!(p.to_json(), json!([[{}, 26], [{"X": 2}, 1]]));
    let other = zmod(25).unwrap();
    assert_eq!(ring_arith(ArithOp::Add, &x, &int(&other, 1)), Err(Error::DescriptorMismatch));
}

#[test]
fn units_and_halves() {
    let r = z27();
    assert_eq!(invert_unit(&int(&r, 2)).unwrap(), int(&r, 14));
    assert_eq!(invert_unit(&int(&r, 1)).unwrap(), int(&r, 1));
    assert_eq!(invert_unit(&int(&r, 3)), Err(Error::NotAUnit));
    assert_eq!(half(&r).unwrap(), int(&r, 14));
    assert_eq!(half(&zmod(5).unwrap()).unwrap(), int(&zmod(5).unwrap(), 3));
    assert_eq!(half(&zmod(8).unwrap()), Err(Error::TwoNotInvertible));
    for k in [1, 2, 4, 5, 7, 8, 10, 26] {
        assert!(invert_unit(&int(&r, k)).unwrap().mul(&int(&r, k)).is_one());
    }
}

#[test]
fn localization_cross_multiplies() {
    let r = z27();
    let l = localized(&r, &int(&r, 2)).unwrap();
    let a = RingElement::from_json(&l, &json!({"num": 5, "exp": 1})).unwrap();
    let b = RingElement::from_json(&l, &json!({"num": 10, "exp": 2})).unwrap();
    assert_eq!(a, b);
    assert!(a.mul(&int(&l, 2)).sub(&int(&l, 5)).is_zero());
}

#[test]
fn certificates() {
    let r = z27();
    let i3 = IdealPresentation::principal(&int(&r, 3));
    assert_eq!(certify(&i3, ints(&r, &[4])).unwrap().value, int(&r, 12));
    assert!(certify(&i3, ints(&r, &[0])).unwrap().value.is_zero());
    assert_eq!(certify(&i3, ints(&r, &[1, 2])), Err(Error::LengthMismatch { expected: 1, got: 2 }));

    let a = certify(&i3, ints(&r, &[1])).unwrap();
    let b = certify(&i3, ints(&r, &[2])).unwrap();
    let ab = product_certificate(&a, &b).unwrap();
    assert_eq!(ab.value, int(&r, 18));
    assert_eq!(ab.coefficients, ints(&r, &[2]));
    assert_eq!(ab.ideal.generators, ints(&r, &[9]));
    let zero = product_certificate(&certify(&i3, ints(&r, &[0])).unwrap(), &b).unwrap();
    assert!(zero.value.is_zero() && zero.coefficients.iter().all(RingElement::is_zero));

    let rx = poly(&r, &["X"]).unwrap();
    let x = RingElement::var(&rx, "X").unwrap();
    let i3x = IdealPresentation::new(&rx, vec![int(&rx, 3), x.clone()]).unwrap();
    let c = certify(&i3x, ints(&rx, &[1, 2])).unwrap();
    assert_eq!(c.value, int(&rx, 3).add(&x.scale(2)));
    let d = certify(&i3x, ints(&rx, &[1, 0])).unwrap();
    let cd = product_certificate(&c, &d).unwrap();
    assert_eq!(cd.ideal.generators, vec![int(&rx, 9), x.scale(3), x.mul(&x)]);
    assert_eq!(cd.coefficients, ints(&rx, &[1, 2, 0]));
    assert_eq!(product_certificate(&c, &a), Err(Error::IdealMismatch));
}

#[test]
fn substitution() {
    let r = z27();
    let rxy = poly(&r, &["X", "Y"]).unwrap();
    let x = RingElement::var(&rxy, "X").unwrap();
    let y = RingElement::var(&rxy, "Y").unwrap();
    let a = x.mul(&x).add(&int(&rxy, 4));
    assert_eq!(y.pow(4).mul(&a).substitute(&[("Y", int(&rxy, 1))]).unwrap(), a);
    let rx = poly(&r, &["X"]).unwrap();
    let xx = RingElement::var(&rx, "X").unwrap();
    let p = xx.mul(&xx).sub(&int(&rx, 1)).substitute(&[("X", int(&rx, 5))]).unwrap();
    assert_eq!(p, int(&rx, 24));
    assert_eq!(x.add(&y).substitute(&[("Y", x.clone())]).unwrap(), x.scale(2));
    assert!(matches!(x.substitute(&[("Z", x.clone())]), Err(Error::UnknownVariable(_))));
}

#[test]
fn standard_form() {
    let r = z27();
    let psi1 = standard_symplectic_form(&r, 1);
    assert_eq!(psi1, ExactMatrix::from_ints(&r, &[&[0, 1], &[-1, 0]]));
    assert_eq!(standard_symplectic_form(&r, 2), psi1.direct_sum(&psi1));
    let psi3 = standard_symplectic_form(&r, 3);
    assert_eq!(psi3.transpose(), psi3.neg());
    assert!(is_alternating(&psi3));
    assert!(!is_alternating(&ExactMatrix::identity(&r, 4)));
    assert!(pfaffian(&psi3).unwrap().is_one());
}

#[test]
fn symplectic_predicate() {
    let r = z27();
    assert!(is_symplectic(&ExactMatrix::identity(&r, 4)).unwrap());
    assert!(is_symplectic(&symplectic_generator(&r, 2, 1, 2, &int(&r, 7)).unwrap()).unwrap());
    let mut d = ExactMatrix::identity(&r, 4);
    d.set(0, 0, int(&r, 2));
    assert!(!is_symplectic(&d).unwrap());
    let psi = standard_symplectic_form(&r, 2);
    assert_eq!(d.transpose().mul(&psi).mul(&d).get(0, 1), &int(&r, 2));
    assert_eq!(is_symplectic(&ExactMatrix::identity(&r, 3)), Err(Error::OddDimension(3)));
}

#[test]
fn antisymmetrized_matrices_are_alternating() {
    let r = z27();
    let nu = ExactMatrix::from_fn(&r, 4, 4, |i, j| int(&r, (3 * i + 5 * j + i * j) as i64));
    assert!(is_alternating(&nu.sub(&nu.transpose())));
}

#[test]
fn pfaffian_four_by_four() {
    let r = z27();
    let [a12, a13, a14, a23, a24, a34] = [2, 5, 7, 11, 13, 4];
    let m = ExactMatrix::from_ints(
        &r,
        &[&[0, a12, a13, a14], &[-a12, 0, a23, a24], &[-a13, -a23, 0, a34], &[-a14, -a24, -a34, 0]],
    );
    assert_eq!(pfaffian(&m).unwrap(), int(&r, a12 * a34 - a13 * a24 + a14 * a23));
    let eps = Word::from_letters(
        &r,
        4,
        vec![Letter::e(1, 3, int(&r, 4)), Letter::e(4, 2, int(&r, 9)), Letter::e(2, 1, int(&r, 5))],
    )
    .evaluate()
    .unwrap();
    let psi = standard_symplectic_form(&r, 2);
    assert!(pfaffian(&eps.transpose().mul(&psi).mul(&eps)).unwrap().is_one());
    assert_eq!(pfaffian(&ExactMatrix::identity(&r, 2)), Err(Error::NotAlternating));
}

#[test]
fn tilde_row() {
    let r = z27();
    assert_eq!(tilde(&unit(&r, 2, 1)).unwrap(), ExactMatrix::from_ints(&r, &[&[0, 1]]));
    assert_eq!(tilde(&unit(&r, 2, 2)).unwrap(), ExactMatrix::from_ints(&r, &[&[-1, 0]]));
    let v = ints(&r, &[3, 8, 1, 20]);
    assert!(tilde(&v).unwrap().mul(&ExactMatrix::column(&r, &v)).get(0, 0).is_zero());
    assert_eq!(tilde(&ints(&r, &[1, 2, 3])), Err(Error::OddDimension(3)));
}

#[test]
fn kernel_decomposition_examples() {
    let r = z27();
    let e1 = unit(&r, 3, 1);
    let zero = kernel_decomposition(&ints(&r, &[0, 0, 0]), &e1, &e1).unwrap();
    assert!(zero.values().all(RingElement::is_zero));
    let c = ints(&r, &[0, 4, 11]);
    let a = kernel_decomposition(&c, &e1, &e1).unwrap();
    assert_eq!(a[&(1, 2)], int(&r, -4));
    assert_eq!(a[&(1, 3)], int(&r, -11));
    assert!(a[&(2, 3)].is_zero());
    assert_eq!(kernel_reconstruct(&a, &e1), c);

    // u = 2⁻¹ e₁ certifies w; c = (3, -2, 0) is orthogonal to it.
    let w = ints(&r, &[2, 3, 5]);
    let u = ints(&r, &[14, 0, 0]);
    let c = ints(&r, &[3, -2, 0]);
    assert_eq!(kernel_reconstruct(&kernel_decomposition(&c, &w, &u).unwrap(), &w), c);
    assert_eq!(kernel_decomposition(&ints(&r, &[1, 0, 0]), &w, &u), Err(Error::NotInKernel));
    assert!(matches!(kernel_decomposition(&c, &w, &ints(&r, &[1, 0, 0])), Err(Error::CertificateInvalid(_))));
}

#[test]
fn sigma_pairs() {
    assert_eq!(sigma(1), 2);
    assert_eq!(sigma(2), 1);
    for i in 1..12 {
        assert_eq!(sigma(sigma(i)), i);
    }
}

#[test]
fn generator_matrices() {
    let r = z27();
    assert!(linear_generator(&r, 3, 1, 2, &int(&r, 0)).unwrap().is_identity());
    let (a, b) = (int(&r, 5), int(&r, 13));
    let ea = linear_generator(&r, 3, 1, 2, &a).unwrap();
    assert_eq!(ea.mul(&linear_generator(&r, 3, 1, 2, &b).unwrap()), linear_generator(&r, 3, 1, 2, &a.add(&b)).unwrap());
    assert!(ea.mul(&linear_generator(&r, 3, 1, 2, &a.neg()).unwrap()).is_identity());
    assert!(matches!(linear_generator(&r, 3, 2, 2, &a), Err(Error::BadIndices { .. })));

    let rz = poly(&r, &["z"]).unwrap();
    let z = RingElement::var(&rz, "z").unwrap();
    let mut short = ExactMatrix::identity(&rz, 4);
    short.set(0, 1, z.clone());
    assert_eq!(symplectic_generator(&rz, 2, 1, 2, &z).unwrap(), short);
    let mut long = ExactMatrix::identity(&rz, 4);
    long.set(0, 2, z.clone());
    long.set(3, 1, z.neg());
    let se13 = symplectic_generator(&rz, 2, 1, 3, &z).unwrap();
    assert_eq!(se13, long);
    assert!(is_symplectic(&se13).unwrap());
}

#[test]
fn evaluation_and_inversion() {
    let r = z27();
    assert!(Word::new(&r, 4).evaluate().unwrap().is_identity());
    assert!(Word::new(&r, 4).inverse().is_empty());
    let one = Word::from_letters(&r, 3, vec![Letter::e(2, 3, int(&r, 7))]);
    assert_eq!(one.evaluate().unwrap(), linear_generator(&r, 3, 2, 3, &int(&r, 7)).unwrap());
    assert!(one.inverse().evaluate().unwrap().mul(&one.evaluate().unwrap()).is_identity());
    let two = Word::from_letters(&r, 4, vec![Letter::se(1, 3, int(&r, 7)), Letter::se(4, 1, int(&r, 2))]);
    assert!(two.inverse().evaluate().unwrap().mul(&two.evaluate().unwrap()).is_identity());
    assert!(two.concat(&two.inverse()).evaluate().unwrap().is_identity());
}

#[test]
fn membership_predicates() {
    let r = z27();
    let i3 = IdealPresentation::principal(&int(&r, 3));
    let c = certify(&i3, ints(&r, &[1])).unwrap();
    let w = |l: Letter, n: usize| Word::from_letters(&r, n, vec![l]);
    assert!(word_in_e1(&w(Letter::e_cert(1, 2, c.clone()), 3), &i3));
    assert!(!word_in_e1(&w(Letter::e_cert(2, 3, c.clone()), 3), &i3));
    assert!(!word_in_e1(&w(Letter::e(1, 2, int(&r, 3)), 3), &i3));
    assert!(word_in_esp1(&w(Letter::se_cert(1, 2, c.clone()), 4), &i3));
    assert!(!word_in_esp1(&w(Letter::se_cert(3, 4, c), 4), &i3));
    assert!(!word_in_esp1(&w(Letter::se(1, 2, int(&r, 3)), 4), &i3));
}

#[test]
fn rho_mu_expansions() {
    let r = z27();
    let zero = ints(&r, &[0, 0]);
    assert!(expand_rho(&zero, &int(&r, 0)).unwrap().evaluate().unwrap().is_identity());
    assert!(expand_mu(&zero, &int(&r, 0)).unwrap().evaluate().unwrap().is_identity());
    let a = int(&r, 6);
    let single = |w: Word| Word::from_letters(&r, 4, w.letters.into_iter().filter(|l| !l.gen.param().unwrap().is_zero()).collect());
    let rho = single(expand_rho(&zero, &a).unwrap());
    assert_eq!(rho.letters, vec![Letter::se(2, 1, a.neg())]);
    let mu = single(expand_mu(&zero, &a).unwrap());
    assert_eq!(mu.letters, vec![Letter::se(1, 2, a.clone())]);

    let psi2 = standard_symplectic_form(&r, 2);
    let q = ints(&r, &[4, 9, 13, 22]);
    let alpha = int(&r, 5);
    assert_eq!(expand_rho(&q, &alpha).unwrap().evaluate().unwrap(), rho_matrix(&q, &alpha, &psi2).unwrap());
    assert_eq!(expand_mu(&q, &alpha).unwrap().evaluate().unwrap(), mu_matrix(&q, &alpha, &psi2).unwrap());
}

#[test]
fn relation_examples() {
    let r = z27();
    let (a, b) = (int(&r, 4), int(&r, 10));
    assert!(check_relation(Relation::Linear { i: 1, j: 2, k: 3 }, 3, &a, &b).unwrap());
    assert!(check_relation(Relation::Short { i: 1, k: 3 }, 4, &a, &b).unwrap());
    let (l, rhs) = Relation::Short { i: 1, k: 3 }.sides(4, &int(&r, 0), &b).unwrap();
    assert!(l.evaluate().unwrap().is_identity() && rhs.evaluate().unwrap().is_identity());
    assert!(matches!(
        check_relation(Relation::Short { i: 1, k: 2 }, 4, &a, &b),
        Err(Error::SideConditionViolated(_))
    ));
}
