//! Rational homology of the boundary manifold `C_G`.
//!
//! The diagram `S ↦ Λ*(X_•(Z(L_S)) ⊗ Q)` over proper subsets `S ⊊ Π`, with
//! maps induced by orthogonal projections, is resolved by the Čech complex of
//! the cover `{U_{Π−{α}}}`: the term in Čech degree `p` is the direct sum over
//! nonempty `A ⊆ Π` with `|A| = p + 1` of the stalk at `S = Π − A`. The stalks
//! carry no internal differential, so the complex splits into one row per
//! exterior degree `w` and the total degree of a class is `w + p`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::{binomial, compound, k_subsets, rank, RatMatrix};
use crate::rootdata::{
    center_of_levi, cocharacter_gram, orthogonal_projection, CenterData, LeviSet, RootDatum,
};

/// Cocharacter spaces of Levi centers for `S ⊊ Π` and the projections
/// between them.
#[derive(Clone, Debug)]
pub struct CenterDiagram {
    n: usize,
    spaces: BTreeMap<LeviSet, CenterData>,
    arrows: BTreeMap<(LeviSet, LeviSet), RatMatrix>,
}

impl CenterDiagram {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn space(&self, s: LeviSet) -> Option<&CenterData> {
        self.spaces.get(&s)
    }

    pub fn spaces(&self) -> impl Iterator<Item = (&LeviSet, &CenterData)> {
        self.spaces.iter()
    }

    /// Projection for `S ⊆ S'`, both proper.
    pub fn arrow(&self, s: LeviSet, s2: LeviSet) -> Option<&RatMatrix> {
        self.arrows.get(&(s, s2))
    }

    pub fn arrows(&self) -> impl Iterator<Item = (&(LeviSet, LeviSet), &RatMatrix)> {
        self.arrows.iter()
    }

    /// Checks identities and functoriality.
    ///
    /// Verifies `arrow(S, S'') = arrow(S + a, S'') · arrow(S, S + a)` for the
    /// smallest `a ∈ S'' − S` on every pair, and both orders on every square
    /// `S ⊂ S + a ⊂ S + a + b`. Any two maximal chains differ by square
    /// swaps, so this implies `arrow(S', S'') · arrow(S, S') = arrow(S, S'')`
    /// for every triple.
    pub fn check_functoriality(&self) -> Result<()> {
        for (&(s, s2), m) in &self.arrows {
            if s == s2 {
                if *m != RatMatrix::identity(self.spaces[&s].dim) {
                    return Err(Error::FunctorialityViolation(s, s, s));
                }
                continue;
            }
            let gap = s2.difference(s).indices();
            let candidates: &[usize] = if gap.len() == 2 { &gap } else { &gap[..1] };
            for &a in candidates {
                let mid = s.with(a);
                let composed = self.arrows[&(mid, s2)].mul(&self.arrows[&(s, mid)]);
                if composed != *m {
                    return Err(Error::FunctorialityViolation(s, mid, s2));
                }
            }
        }
        Ok(())
    }
}

/// Builds the diagram over all proper subsets of `Π`.
pub fn build_center_diagram(d: &RootDatum) -> CenterDiagram {
    let n = d.rank();
    let all = d.all();
    let gram = cocharacter_gram(d);
    let spaces: BTreeMap<LeviSet, CenterData> = all
        .subsets()
        .filter(|&s| s != all)
        .map(|s| (s, center_of_levi(d, s).expect("subset of Π")))
        .collect();
    let mut arrows = BTreeMap::new();
    for (&s2, target) in &spaces {
        for s in s2.subsets() {
            let source = &spaces[&s];
            let m = if s == s2 {
                RatMatrix::identity(source.dim)
            } else {
                orthogonal_projection(&gram, &source.cochar_basis, &target.cochar_basis)
            };
            arrows.insert((s, s2), m);
        }
    }
    CenterDiagram { n, spaces, arrows }
}

/// One block of a Čech term: the stalk `Λ^w` at `S = Π − A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechBlock {
    pub cover: LeviSet,
    pub offset: usize,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CechTerm {
    pub blocks: Vec<CechBlock>,
    pub dim: usize,
}

/// The row of the Čech complex in exterior degree `w`.
#[derive(Clone, Debug)]
pub struct CechRow {
    pub degree: usize,
    /// `terms[p]` for Čech degree `p = 0..n`.
    pub terms: Vec<CechTerm>,
    /// `differentials[p - 1] = d_p : term p -> term p - 1`, for `p = 1..n`.
    pub differentials: Vec<RatMatrix>,
}

impl CechRow {
    /// `d_p` for `p >= 1`; `None` outside the range.
    pub fn differential(&self, p: usize) -> Option<&RatMatrix> {
        p.checked_sub(1).and_then(|i| self.differentials.get(i))
    }

    /// Whether `d_{p-1} d_p = 0` for all `p`.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// `dim H_p` of this row for each Čech degree `p`.
    pub fn homology(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.differentials.iter().map(rank).collect();
        (0..self.terms.len())
            .map(|p| {
                let out = if p >= 1 { ranks[p - 1] } else { 0 };
                let inc = ranks.get(p).copied().unwrap_or(0);
                self.terms[p].dim - out - inc
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct CechComplex {
    pub n: usize,
    /// `rows[w]` for `w = 0..=n`.
    pub rows: Vec<CechRow>,
}

impl CechComplex {
    /// First `(w, p)` with `d_{p-1} d_p != 0`.
    pub fn d_squared_failure(&self) -> Option<(usize, usize)> {
        self.rows.iter().find_map(|row| {
            row.differentials
                .windows(2)
                .position(|w| !w[0].mul(&w[1]).is_zero())
                .map(|i| (row.degree, i + 2))
        })
    }

    /// Sum of all term dimensions.
    pub fn total_dim(&self) -> usize {
        self.rows
            .iter()
            .flat_map(|r| r.terms.iter())
            .map(|t| t.dim)
            .sum()
    }
}

/// 0-based position of `a` in the sorted members of `set`.
fn position_in(set: LeviSet, a: usize) -> usize {
    (set.bits() & ((1u64 << a) - 1)).count_ones() as usize
}

/// Assembles the Čech complex, after checking the diagram is functorial.
pub fn build_cech_complex(diag: &CenterDiagram) -> Result<CechComplex> {
    diag.check_functoriality()?;
    let n = diag.n;
    let all = LeviSet::full(n);

    // covers[p] lists the A with |A| = p + 1, lexicographically
    let covers: Vec<Vec<LeviSet>> = (0..n)
        .map(|p| {
            k_subsets(n, p + 1)
                .into_iter()
                .map(LeviSet::from_indices)
                .collect()
        })
        .collect();

    let rows = (0..=n)
        .map(|w| {
            let terms: Vec<CechTerm> = covers
                .iter()
                .map(|list| {
                    let mut offset = 0;
                    let blocks = list
                        .iter()
                        .map(|&a| {
                            let dim = binomial(a.len(), w);
                            let b = CechBlock {
                                cover: a,
                                offset,
                                dim,
                            };
                            offset += dim;
                            b
                        })
                        .collect();
                    CechTerm {
                        blocks,
                        dim: offset,
                    }
                })
                .collect();

            let differentials = (1..n)
                .map(|p| {
                    let (src, dst) = (&terms[p], &terms[p - 1]);
                    let index: BTreeMap<LeviSet, &CechBlock> =
                        dst.blocks.iter().map(|b| (b.cover, b)).collect();
                    let mut dm = RatMatrix::zeros(dst.dim, src.dim);
                    for blk in &src.blocks {
                        if blk.dim == 0 {
                            continue;
                        }
                        let a_set = blk.cover;
                        for a in a_set.indices() {
                            let face = a_set.without(a);
                            let target = index[&face];
                            if target.dim == 0 {
                                continue;
                            }
                            let s = all.difference(a_set);
                            let arrow = diag.arrow(s, s.with(a)).expect("proper subsets");
                            let block = compound(arrow, w);
                            let negate = position_in(a_set, a) % 2 == 1;
                            for i in 0..block.rows() {
                                for j in 0..block.cols() {
                                    let v = &block[(i, j)];
                                    dm[(target.offset + i, blk.offset + j)] =
                                        if negate { -v } else { v.clone() };
                                }
                            }
                        }
                    }
                    dm
                })
                .collect();

            CechRow {
                degree: w,
                terms,
                differentials,
            }
        })
        .collect();

    Ok(CechComplex { n, rows })
}

/// Graded dimensions of rational homology, `betti[k] = dim H_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    betti: Vec<usize>,
}

impl BettiTable {
    pub fn new(mut betti: Vec<usize>) -> Self {
        while betti.last() == Some(&0) {
            betti.pop();
        }
        BettiTable { betti }
    }

    /// Betti numbers of the sphere `S^dim`.
    pub fn sphere(dim: usize) -> Self {
        let mut b = vec![0; dim + 1];
        b[0] += 1;
        b[dim] += 1;
        BettiTable::new(b)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.betti
    }

    pub fn get(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.betti.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.betti.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

/// Total Betti numbers of the complex, summing row `w` in degree `w + p`.
pub fn cech_betti(c: &CechComplex) -> BettiTable {
    betti_from_rows(c, (0..c.rows.len()).collect::<Vec<_>>())
}

/// As [`cech_betti`], processing rows in the given order.
pub fn betti_from_rows(c: &CechComplex, order: Vec<usize>) -> BettiTable {
    let mut betti = vec![0usize; 2 * c.n + 1];
    for w in order {
        let row = &c.rows[w];
        for (p, h) in row.homology().into_iter().enumerate() {
            betti[w + p] += h;
        }
    }
    BettiTable::new(betti)
}

/// Euler characteristic from raw term dimensions.
pub fn total_euler(c: &CechComplex) -> i64 {
    c.rows
        .iter()
        .flat_map(|row| {
            row.terms.iter().enumerate().map(move |(p, t)| {
                let d = t.dim as i64;
                if (row.degree + p) % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
        })
        .sum()
}

/// First proper `S ⊊ Π` (by size, then labels) with nontrivial `π₀(Z(L_S))`.
pub fn nontrivial_pi0_witness(d: &RootDatum) -> Option<LeviSet> {
    let all = d.all();
    LeviSet::all_subsets(d.rank())
        .into_iter()
        .filter(|&s| s != all)
        .find(|&s| !center_of_levi(d, s).expect("subset of Π").pi0.is_trivial())
}

/// `H_*(C_G; Q)`, refusing data where some proper Levi center is disconnected.
pub fn boundary_homology(d: &RootDatum) -> Result<BettiTable> {
    if let Some(s) = nontrivial_pi0_witness(d) {
        return Err(Error::NontrivialPi0(s));
    }
    let complex = build_cech_complex(&build_center_diagram(d))?;
    Ok(cech_betti(&complex))
}
