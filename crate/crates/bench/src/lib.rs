//! Fixtures shared by the benchmarks under `benches/`.

use std::sync::Arc;

use scat_core::contiguity::SimplicialMap;
use scat_core::SimplicialComplex;

pub fn cycle(n: usize) -> Arc<SimplicialComplex> {
    let facets: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    Arc::new(SimplicialComplex::from_facets(&facets).expect("cycle"))
}

/// Boundary of the `n`-simplex.
pub fn sphere(n: usize) -> Arc<SimplicialComplex> {
    let facets: Vec<Vec<usize>> = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
    Arc::new(SimplicialComplex::from_facets(&facets).expect("sphere"))
}

/// Two triangles glued along an edge with a tail: collapses to a point.
pub fn collapsible() -> Arc<SimplicialComplex> {
    Arc::new(SimplicialComplex::from_facets(&[vec![0, 1, 2], vec![1, 2, 3], vec![3, 4], vec![4, 5]]).expect("collapsible"))
}

/// The `k`-fold wrap of `C_{kn}` around `C_n`.
pub fn wrap(k: usize, n: usize) -> SimplicialMap {
    let dom = cycle(k * n);
    let cod = cycle(n);
    SimplicialMap::new(dom, cod, (0..k * n).map(|i| i % n).collect()).expect("wrap is simplicial")
}
