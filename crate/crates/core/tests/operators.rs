use mfrac_core::operators::{spectral_norm, Surd, TruncatedModel};
use mfrac_core::Presentation;
use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn presentations() -> Vec<Presentation> {
    vec![
        Presentation::free(2).unwrap(),
        Presentation::from_names(&["x", "y"], &[("x", "y")]).unwrap(),
        Presentation::from_names(&["x", "y", "z"], &[("x", "z")]).unwrap(),
        Presentation::from_names(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap(),
    ]
}

fn random_vector(rng: &mut ChaCha8Rng, dim: usize) -> Vec<Surd> {
    (0..dim)
        .map(|_| Surd::from_rational(BigRational::new(BigInt::from(rng.gen_range(-5..=5)), BigInt::from(rng.gen_range(1..=4)))))
        .collect()
}

#[test]
fn weighted_adjoint_matches_inner_products_exactly() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in presentations() {
        let m = TruncatedModel::new(&p, 4).unwrap();
        for x in p.generators() {
            for k in 1..=4 {
                let s = m.iso_s(x, k).unwrap();
                let s_adj = m.adjoint_s(x, k).unwrap();
                for _ in 0..5 {
                    let f = random_vector(&mut rng, m.space(k - 1).dim());
                    let g = random_vector(&mut rng, m.space(k).dim());
                    assert_eq!(m.inner(k, &s.apply(&f), &g), m.inner(k - 1, &f, &s_adj.apply(&g)));
                }
            }
        }
    }
}

#[test]
fn isometries_preserve_norms() {
    for p in presentations() {
        let m = TruncatedModel::new(&p, 5).unwrap();
        for x in p.generators() {
            let s = m.iso_s(x, 5).unwrap();
            assert!((m.operator_norm(&s) - 1.0).abs() < 1e-9);
            let one = m.space(4).constant_one();
            assert_eq!(m.inner(5, &s.apply(&one), &s.apply(&one)), m.inner(4, &one, &one));
        }
    }
}

#[test]
fn spectral_norm_agrees_with_dense_svd() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let (rows, cols) = (rng.gen_range(1..12), rng.gen_range(1..12));
        let dense = DMatrix::from_fn(rows, cols, |_, _| if rng.gen_bool(0.4) { rng.gen_range(-3.0..3.0) } else { 0.0 });
        let sparse: Vec<Vec<(usize, f64)>> = (0..cols)
            .map(|j| (0..rows).filter(|&i| dense[(i, j)] != 0.0).map(|i| (i, dense[(i, j)])).collect())
            .collect();
        let want = dense.singular_values().max();
        let got = spectral_norm(&sparse, rows);
        assert!((got - want).abs() <= 1e-7 * want.max(1.0), "{got} vs {want}");
    }
}
