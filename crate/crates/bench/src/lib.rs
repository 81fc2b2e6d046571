//! Shared inputs for the benchmark suite.

use op7_core::{Fe, Field, Poly};

/// Every `x^7 + a3 x^3 + a1 x` over `field`.
pub fn x7_a3_a1(field: &Field) -> Vec<Poly<'_>> {
    let mut out = Vec::with_capacity(field.order() * field.order());
    for a3 in field.elements() {
        for a1 in field.elements() {
            out.push(Poly::new(field, vec![Fe::ZERO, a1, Fe::ZERO, a3, Fe::ZERO, Fe::ZERO, Fe::ZERO, Fe::ONE]));
        }
    }
    out
}
