use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use socover_core::polys::{
    cayley_so, delta_identity_check, determinant_laplace, gram_generators, minor_generators, p_generators,
    reflect, substitute_linear, MatFp, MatrixShape, PolyFp, PrimeField,
};

fn field() -> PrimeField {
    PrimeField::new(32003).unwrap()
}

#[test]
fn cayley_samples_are_special_orthogonal() {
    let f = field();
    for t in 1..=4 {
        for seed in 0..200 {
            let m = cayley_so(t, f, seed);
            assert!(m.is_orthogonal(), "t={t} seed={seed}");
            assert_eq!(m.determinant().unwrap(), 1, "t={t} seed={seed}");
            let r = reflect(&m).unwrap();
            assert!(r.is_orthogonal());
            assert_eq!(r.determinant().unwrap(), f.modulus() - 1);
        }
    }
}

#[test]
fn substitution_preserves_homogeneity() {
    let f = field();
    for (t, n) in [(2, 3), (3, 4), (2, 5)] {
        let shape = MatrixShape::new(t, n).unwrap();
        let m = cayley_so(t, f, 3);
        for g in gram_generators(shape, f).iter().chain(&minor_generators(shape, f)) {
            let s = substitute_linear(g, &m, shape).unwrap();
            assert_eq!(s.homogeneous_degree(), g.homogeneous_degree());
        }
    }
}

#[test]
fn p_generators_factor_through_delta() {
    for t in 1..=3 {
        for n in t..=6 {
            let shape = MatrixShape::new(t, n).unwrap();
            let gens = p_generators(shape, field()).unwrap();
            let expected = (0..t).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64);
            assert_eq!(gens.len() as u64, expected, "t={t} n={n}");
            for g in &gens {
                assert_eq!(g.homogeneous_degree(), Some(2 * t), "t={t} n={n}");
            }
        }
    }
}

#[test]
fn delta_squared_identity() {
    for t in 1..=4 {
        assert!(delta_identity_check(t, field()).unwrap(), "t={t}");
    }
}

#[test]
fn laplace_agrees_with_elimination() {
    let f = field();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..1000 {
        let k = 1 + trial % 5;
        let values: Vec<Vec<u64>> = (0..k).map(|_| (0..k).map(|_| f.random(&mut rng)).collect()).collect();
        let entries: Vec<Vec<PolyFp>> = values
            .iter()
            .map(|row| row.iter().map(|&v| PolyFp::constant(f, 0, v)).collect())
            .collect();
        let rows: Vec<Vec<i64>> = values.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect();
        let det = MatFp::from_rows(f, &rows).determinant().unwrap();
        assert_eq!(determinant_laplace(&entries).coeff(&socover_core::polys::Monomial::one(0)), det);
    }
}

proptest! {
    #[test]
    fn field_inverse(a in 1u64..32003) {
        let f = field();
        prop_assert_eq!(f.mul(a, f.inv(a)), 1);
    }

    #[test]
    fn polynomial_ring_laws(a in prop::collection::vec((0u8..3, 0u8..3, 0u64..32003), 0..5),
                            b in prop::collection::vec((0u8..3, 0u8..3, 0u64..32003), 0..5),
                            x in 0u64..32003, y in 0u64..32003) {
        let f = field();
        let mk = |v: &[(u8, u8, u64)]| PolyFp::from_terms(
            f, 2, v.iter().map(|&(i, j, c)| (socover_core::polys::Monomial::from_exponents(vec![i, j]), c)));
        let (p, q) = (mk(&a), mk(&b));
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!((&p + &q).eval(&[x, y]), f.add(p.eval(&[x, y]), q.eval(&[x, y])));
        prop_assert_eq!((&p * &q).eval(&[x, y]), f.mul(p.eval(&[x, y]), q.eval(&[x, y])));
        prop_assert!((&p - &p).is_zero());
    }
}
