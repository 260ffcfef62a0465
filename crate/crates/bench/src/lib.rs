//! Shared fixtures for the kernel benchmarks.

use hyperforge::{make, CatalogKey, Poly, QForm, Structure};

pub fn field(key: CatalogKey) -> Structure {
    make(key).expect("catalog entry")
}

/// Degree 4 dividend and degree 2 monic divisor over `f`, built from its
/// last unit so they are not trivially constant.
pub fn division_pair(f: &Structure) -> (Poly, Poly) {
    let u = f.size() - 1;
    let num = Poly::new(f, vec![u, f.one(), u, f.neg(f.one()), f.one()]);
    let den = Poly::new(f, vec![u, f.zero(), f.one()]);
    (num, den)
}

/// A form of dimension `dim` cycling through the units of `f`.
pub fn cycling_form(f: &Structure, dim: usize) -> QForm {
    let units = f.size() - 1;
    QForm::new((0..dim).map(|i| 1 + i % units).collect())
}
