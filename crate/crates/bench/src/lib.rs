//! Benchmark fixtures shared by the criterion targets.

use mfrac_core::Presentation;

/// The 4-cycle commutation graph: `(a, c)` and `(b, d)` do not commute.
pub fn c4() -> Presentation {
    Presentation::from_names(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
        .expect("valid presentation")
}

pub fn free(n: usize) -> Presentation {
    Presentation::free(n).expect("valid presentation")
}
