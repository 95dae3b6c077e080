//! Finite simplicial complexes and the PL primitives the rest of the crate
//! builds on: skeleta, stars, links, barycentric subdivision, products and
//! simplicial maps.

mod map;
mod product;
mod simplex;
mod simplicial;
mod subdivision;

pub use map::{MapJson, SimplicialMap};
pub use product::{product_complex, product_complex_ordered, Product};
pub use simplex::{Simplex, Vertex};
pub use simplicial::{
    find_isomorphism, is_face_closed, link, star, ComplexJson, OpenSimplexSet, SimplicialComplex,
};
pub use subdivision::{barycentric_subdivision, join_decompose, Subdivision};
