//! The rewriting engine against the seminormal representation.

use hecke_core::seminormal::FullRep;
use hecke_core::{default_binding, Algebra};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn check(m: usize, n: usize, pairs: usize, seed: u64) {
    let b = default_binding(m, n);
    let alg = Algebra::new(&b);
    let rep = FullRep::new(&b).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..pairs {
        let a = alg.basis(rng.gen_range(0..alg.dim() as u32));
        let c = alg.basis(rng.gen_range(0..alg.dim() as u32));
        let prod = alg.mul(&a, &c);
        let lhs = rep.rho(&alg, &prod);
        let ra = rep.rho(&alg, &a);
        let rc = rep.rho(&alg, &c);
        for (l, (x, y)) in lhs.iter().zip(ra.iter().zip(&rc)) {
            assert_eq!(*l, x.mul(y), "rho not multiplicative at ({m},{n})");
        }
    }
}

#[test]
fn homomorphism_2_3() {
    check(2, 3, 120, 1);
}

#[test]
fn homomorphism_3_2() {
    check(3, 2, 120, 2);
}

#[test]
fn homomorphism_1_4() {
    check(1, 4, 60, 3);
}
