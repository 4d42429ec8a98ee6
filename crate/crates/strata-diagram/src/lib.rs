//! Newton diagrams of isolated hypersurface singularities.
//!
//! A diagram is built from the support of a representative germ; its compact
//! facets are computed exactly over the rationals.  From the facets one reads
//! the flags of coordinate subspaces, the collection of vector spaces that
//! drives the covariant defining conditions, the lattice points strictly below
//! the diagram, and whether the type is linear.

mod catalog;
mod diagram;
mod error;
mod hull;

pub use catalog::NormalForm;
pub use diagram::{
    build_diagram, face_flag, is_linear_type, monomial_compare, multiplicity_and_determinacy, points_under,
    stable_extension, vector_space_collection, DiagramInput, Facet, FlagSpec, NewtonDiagram, Space,
    VectorSpaceCollection,
};
pub use error::DiagramError;
