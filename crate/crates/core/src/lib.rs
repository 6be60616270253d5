//! Exact topological invariants of universal centralizers `J_G` of complex
//! semisimple groups, computed from root data.
//!
//! * [`exactla`]: exact integer/rational linear algebra (Smith normal form,
//!   fraction-free rank, compound matrices).
//! * [`rootdata`]: Cartan types, isogeny lattices, Levi centers, invariant
//!   form and orthogonal projections.
//! * [`polycount`]: point counts, E-polynomials and purity predictions.
//! * [`homology`]: the Čech complex computing `H_*(C_G; Q)`.
//! * [`assembly`]: `H_*(J_G; Q)` by attaching `2n`-cells.
//! * [`groupspec`]: the `A3:sc` style group specification grammar.

pub mod assembly;
pub mod error;
pub mod exactla;
pub mod groupspec;
pub mod homology;
pub mod polycount;
pub mod rootdata;

pub use assembly::{intersection_number, jg_homology, AssemblyReport};
pub use error::{Error, Result};
pub use exactla::{compound, rank, snf, IntMatrix, InvariantFactors, RatMatrix, SmithForm};
pub use groupspec::{parse_spec, GroupSpec};
pub use homology::{
    boundary_homology, build_cech_complex, build_center_diagram, total_euler, BettiTable,
    CechComplex, CenterDiagram,
};
pub use polycount::{
    e_polynomial, poincare_from_purity, point_count_poly, QPolynomial, TPolynomial,
};
pub use rootdata::{
    build_datum, cartan_matrix, center_of_levi, center_order, invariant_form, killing_projection,
    weyl_order, CartanType, CenterData, Form, Isogeny, Letter, LeviSet, RootDatum,
};
