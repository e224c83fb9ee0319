//! Newton polygons of differential operators, slope data at 0 and ∞, the
//! Fourier-Laplace polygon map, singularity classification, and indicial
//! polynomials.

mod polygon;
mod singular;

pub use polygon::{fl_polygon_map, polygon, Edge, NewtonPolygon, Slope};
pub use singular::{
    exponents_at, indicial_polynomial, is_e_shape, singularities, EShapeReport, ExponentData,
    FinitePointReport, InfinityReport, Location, PointClass, SingularityReport,
};
