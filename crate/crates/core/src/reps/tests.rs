use super::*;
use crate::knots::{parse_presentation, KnotTable};
use crate::linalg::Tolerance;
use crate::poly::Poly;
use crate::scalar::{FieldElement, FieldSpec};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

fn trefoil() -> KnotPresentation {
    parse_presentation("<S,T | S T S T^-1 S^-1 T^-1>").unwrap()
}

fn zeta12() -> FieldElement {
    let f = FieldSpec::new(Poly::from_ints(&[1, 0, -1, 0, 1]), Complex64::new(0.866, 0.5)).unwrap();
    f.generator()
}

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn trefoil_cocycle_normalization() {
    let p = trefoil();
    let lam = zeta12();
    let alpha = lam.clone() * &lam;
    let tol = Tolerance::default();
    let sc = solve_scalar_cocycles(&p, &alpha, &tol).unwrap();
    assert_eq!((sc.z1, sc.b1, sc.h1), (2, 1, 1));
    let z = normalized_cocycle(&p, &alpha, &tol).unwrap().unwrap();
    assert_eq!(z.value(0)[0], FieldElement::zero());
    assert_eq!(z.value(1)[0], FieldElement::one());
}

#[test]
fn trefoil_burde_derham_matrices() {
    let p = trefoil();
    let lam = zeta12();
    let tol = Tolerance::default();
    let z = normalized_cocycle(&p, &(lam.clone() * &lam), &tol).unwrap().unwrap();
    let rho = burde_derham(&p, &lam, &z, &tol).unwrap();
    let li = lam.inv().unwrap();
    let s = Matrix::from_rows(vec![vec![lam.clone(), FieldElement::zero()], vec![FieldElement::zero(), li.clone()]], 2).unwrap();
    let t = Matrix::from_rows(vec![vec![lam.clone(), li.clone()], vec![FieldElement::zero(), li]], 2).unwrap();
    assert_eq!(rho.image(0), &s);
    assert_eq!(rho.image(1), &t);
    assert_eq!(rho.provenance(), Provenance::BurdeDeRham { abelian: false });
}

#[test]
fn coboundary_gives_abelian_flag() {
    let p = trefoil();
    let lam = zeta12();
    let alpha = lam.clone() * &lam;
    let action = scalar::scalar_action(&p, &alpha).unwrap();
    let x0 = FieldElement::rational(&q(3));
    let z = CocycleVector::coboundary(&action, 2, &[x0]);
    let rho = burde_derham(&p, &lam, &z, &Tolerance::default()).unwrap();
    assert_eq!(rho.provenance(), Provenance::BurdeDeRham { abelian: true });
    let zero = CocycleVector::zero(2, 1);
    let d = burde_derham(&p, &lam, &zero, &Tolerance::default()).unwrap();
    assert!(d.images().iter().all(|m| m[(0, 1)] == FieldElement::zero()));
}

#[test]
fn trivial_and_generic_scalar_modules() {
    let p = KnotTable::bundled().get("4_1").unwrap().presentation().unwrap();
    let tol = Tolerance::default();
    let one = solve_scalar_cocycles(&p, &q(1), &tol).unwrap();
    assert_eq!((one.b1, one.h1), (0, 1));
    let two = solve_scalar_cocycles(&p, &q(2), &tol).unwrap();
    assert_eq!(two.h1, 0);
}

#[test]
fn symmetric_power_examples() {
    let a = q(3);
    let ai = BigRational::new(1.into(), 3.into());
    let d = Matrix::diagonal(&[a.clone(), ai.clone()]);
    let r = sym_power_matrix(&d, 4);
    let want = Matrix::diagonal(&[q(27), q(3), ai.clone(), BigRational::new(1.into(), 27.into())]);
    assert_eq!(r, want);

    let m: Matrix<BigRational> = Matrix::from_i64(&[&[2, 3], &[1, 2]]);
    let r2 = sym_power_matrix(&m, 2);
    let s: Matrix<BigRational> = Matrix::from_i64(&[&[1, 0], &[0, -1]]);
    assert_eq!(r2, &(&s * &m) * &s);
}

#[test]
fn upper_triangular_action_formula() {
    // r_n([[λ, λ^{-1} b], [0, λ^{-1}]]) e_l = λ^{n-2l+1} Σ_j (-b)^j C(l-1, j) e_{l-j}
    let lam = q(2);
    let li = BigRational::new(1.into(), 2.into());
    let b = q(5);
    let m = Matrix::from_rows(vec![vec![lam.clone(), li.clone() * &b], vec![q(0), li]], 2).unwrap();
    let n = 5usize;
    let r = sym_power_matrix(&m, n);
    for l in 1..=n {
        let mut col = vec![q(0); n];
        let scale = crate::scalar::Scalar::pow_i64(&lam, n as i64 - 2 * l as i64 + 1).unwrap();
        let mut binom = q(1);
        for j in 0..l {
            let term = crate::scalar::Scalar::pow_i64(&(-b.clone()), j as i64).unwrap() * &binom * &scale;
            col[l - 1 - j] = term;
            binom = binom * q((l - 1 - j) as i64) / q(j as i64 + 1);
        }
        assert_eq!(r.column(l - 1), col, "column {l}");
    }
}

#[test]
fn adjoint_of_sl2_matches_r3() {
    let m: Matrix<BigRational> = Matrix::from_i64(&[&[2, 3], &[1, 2]]);
    let mi = m.inverse().unwrap();
    let ad = adjoint_matrix(&m, &mi);
    let r3 = sym_power_matrix(&m, 3);
    assert_eq!(ad.trace(), r3.trace());
    assert_eq!(ad.det().unwrap(), q(1));
}

#[test]
fn sl_coordinates_roundtrip() {
    let basis: Vec<Matrix<BigRational>> = sl_basis(4);
    assert_eq!(basis.len(), 15);
    for (k, b) in basis.iter().enumerate() {
        let c = sl_coords(b);
        assert_eq!(c.iter().filter(|x| **x != q(0)).count(), 1, "{}", sl_label(4, k));
        assert_eq!(&sl_from_coords(&c, 4), b);
    }
    assert_eq!(sl_label(3, 0), "E12");
    assert_eq!(sl_label(3, 2), "E21");
    assert_eq!(sl_label(3, 6), "H1");
}

#[test]
fn ladder_map_intertwines() {
    let p = trefoil();
    let lam = zeta12();
    let tol = Tolerance::default();
    let z = normalized_cocycle(&p, &(lam.clone() * &lam), &tol).unwrap().unwrap();
    let rho = burde_derham(&p, &lam, &z, &tol).unwrap();
    for n in 3..=7 {
        for m in rho.images() {
            assert!(ladder_intertwines(m, n), "n = {n}");
        }
    }
    let lower: Matrix<BigRational> = Matrix::from_i64(&[&[1, 0], &[1, 1]]);
    assert!(!ladder_intertwines(&lower, 4));
}

#[test]
fn reducible_witness_is_first_basis_vector() {
    let p = trefoil();
    let lam = zeta12();
    let tol = Tolerance::default();
    let z = normalized_cocycle(&p, &(lam.clone() * &lam), &tol).unwrap().unwrap();
    let rho = burde_derham(&p, &lam, &z, &tol).unwrap();
    let rho4 = symmetric_power(&p, &rho, 4).unwrap();
    let res = irreducibility_test(&rho4, &tol).unwrap();
    assert!(!res.irreducible);
    let w = res.witness.unwrap();
    assert_eq!(w.len(), 1);
    assert!(w[0][1..].iter().all(|x| *x == FieldElement::zero()));
    let diag = diagonal_rep(&p, &lam).unwrap();
    assert!(!irreducibility_test(&diag, &tol).unwrap().irreducible);
}

#[test]
fn clebsch_gordan_identity_small() {
    let m: Matrix<BigRational> = Matrix::from_i64(&[&[2, 3], &[1, 2]]);
    for n in 1..=6 {
        assert!(clebsch_gordan_check(&m, n));
        assert!(clebsch_gordan_check(&Matrix::<BigRational>::identity(2), n));
    }
}
