//! Fixtures shared by the criterion benches.

use hecke_core::{default_binding, Algebra, Element};

pub fn algebra(m: usize, n: usize) -> Algebra {
    Algebra::new(&default_binding(m, n))
}

/// A dense element: the sum of every basis vector with coefficient index+1.
pub fn dense(alg: &Algebra) -> Element {
    let mut out = alg.zero();
    for i in 0..alg.dim() as u32 {
        out = out.add(&alg.basis(i).scale(&hecke_core::scalars::rat(i as i64 + 1)));
    }
    out
}
