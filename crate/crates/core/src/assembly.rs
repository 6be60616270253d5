//! Rational homology of `J_G` from the boundary `C_G` by handle attachment.
//!
//! `J_G` is `C_G × R` with one real `2n`-cell attached per central element
//! `z ∈ Z(G)`. Each attaching sphere meets a generic cotangent fiber in
//! `|W| / |Z(G)|` points, which is nonzero, so the boundary map
//! `Q^{|Z(G)|} -> H_{2n−1}(C_G) = Q` has rank one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::homology::{boundary_homology, BettiTable};
use crate::polycount::poincare_from_purity;
use crate::rootdata::{center_order, weyl_order, RootDatum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssemblyReport {
    /// Betti numbers of `J_G`.
    pub betti: BettiTable,
    /// Betti numbers of the boundary `C_G`.
    pub boundary_betti: BettiTable,
    /// Number of `2n`-cells attached, `|Z(G)|`.
    pub cells_attached: BigInt,
    /// Rank of the attaching map into `H_{2n−1}(C_G)`.
    pub boundary_rank: usize,
    /// `|W| / |Z(G)|`.
    pub intersection_number: BigRational,
    /// Whether `betti` agrees with the purity-predicted Poincaré polynomial.
    pub purity_match: bool,
}

/// `|W| / |Z(G)|`, the intersection number of an attaching sphere with a
/// generic cotangent fiber.
pub fn intersection_number(d: &RootDatum) -> BigRational {
    BigRational::new(weyl_order(d.cartan_type()), center_order(d))
}

pub fn jg_homology(d: &RootDatum) -> Result<AssemblyReport> {
    let n = d.rank();
    let boundary = boundary_homology(d)?;
    if boundary != BettiTable::sphere(2 * n - 1) {
        return Err(Error::BoundaryNotSphere {
            expected_dim: 2 * n - 1,
            betti: boundary.as_slice().to_vec(),
        });
    }
    let cells = center_order(d);
    let cell_count = cells
        .to_usize()
        .expect("center of a semisimple group of rank < 64 is small");
    let certificate = intersection_number(d);
    let boundary_rank = if certificate.is_positive() && boundary.get(2 * n - 1) > 0 {
        1
    } else {
        0
    };

    let mut betti = vec![0usize; 2 * n + 1];
    for (k, b) in boundary.as_slice().iter().enumerate() {
        betti[k] = *b;
    }
    betti[2 * n - 1] -= boundary_rank;
    betti[2 * n] += cell_count - boundary_rank;
    let betti = BettiTable::new(betti);

    let purity_match = match poincare_from_purity(d) {
        Ok(p) => {
            p.coeffs().len() == betti.as_slice().len()
                && p.coeffs()
                    .iter()
                    .zip(betti.as_slice())
                    .all(|(c, &b)| *c == BigInt::from(b))
        }
        Err(_) => false,
    };

    debug_assert!(!certificate.is_zero());
    Ok(AssemblyReport {
        betti,
        boundary_betti: boundary,
        cells_attached: cells,
        boundary_rank,
        intersection_number: certificate,
        purity_match,
    })
}
