//! Root data of semisimple groups: Cartan types, isogeny lattices, centers of
//! standard Levi subgroups, the invariant form and orthogonal projections
//! between Levi-center cocharacter spaces.
//!
//! Conventions:
//!
//! * Simple roots use Bourbaki labels within each simple factor; factors are
//!   concatenated in input order.
//! * The Cartan matrix has `A[i][j] = <alpha_i, alpha_j^vee>`, so row `i` is
//!   `alpha_i` written in fundamental-weight coordinates. For `G2` this gives
//!   `[[2, -1], [-3, 2]]` (alpha_1 short).
//! * A root datum is a character lattice between the root and weight
//!   lattices, given by a basis written in fundamental-weight coordinates.
//!   Cocharacters are written in the dual basis.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::{snf, IntMatrix, InvariantFactors, RatMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Letter {
    pub fn from_char(c: char) -> Option<Letter> {
        Some(match c.to_ascii_uppercase() {
            'A' => Letter::A,
            'B' => Letter::B,
            'C' => Letter::C,
            'D' => Letter::D,
            'E' => Letter::E,
            'F' => Letter::F,
            'G' => Letter::G,
            _ => return None,
        })
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'A',
            Letter::B => 'B',
            Letter::C => 'C',
            Letter::D => 'D',
            Letter::E => 'E',
            Letter::F => 'F',
            Letter::G => 'G',
        }
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            Letter::A => rank >= 1,
            Letter::B => rank >= 2,
            Letter::C => rank >= 3,
            Letter::D => rank >= 4,
            Letter::E => (6..=8).contains(&rank),
            Letter::F => rank == 4,
            Letter::G => rank == 2,
        }
    }
}

/// A product of simple Cartan types, e.g. `A1xA2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    factors: Vec<(Letter, usize)>,
}

impl CartanType {
    pub fn new(factors: Vec<(Letter, usize)>) -> Result<Self> {
        for &(letter, rank) in &factors {
            if !letter.valid_rank(rank) {
                return Err(Error::InvalidRank {
                    letter: letter.as_char(),
                    rank,
                });
            }
        }
        let total: usize = factors.iter().map(|f| f.1).sum();
        if total == 0 {
            return Err(Error::Syntax {
                pos: 0,
                msg: "empty Cartan type".into(),
            });
        }
        if total > 63 {
            return Err(Error::RankTooLarge(total));
        }
        Ok(CartanType { factors })
    }

    pub fn simple(letter: Letter, rank: usize) -> Result<Self> {
        Self::new(vec![(letter, rank)])
    }

    pub fn factors(&self) -> &[(Letter, usize)] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.1).sum()
    }

    /// Index ranges of the simple roots belonging to each factor.
    pub fn factor_ranges(&self) -> Vec<std::ops::Range<usize>> {
        let mut start = 0;
        self.factors
            .iter()
            .map(|&(_, r)| {
                let range = start..start + r;
                start += r;
                range
            })
            .collect()
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (letter, rank)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, "x")?;
            }
            write!(f, "{}{}", letter.as_char(), rank)?;
        }
        Ok(())
    }
}

impl FromStr for CartanType {
    type Err = Error;

    /// Parses `TYPE[xTYPE...]`, case-insensitively, ignoring whitespace.
    fn from_str(s: &str) -> Result<Self> {
        crate::groupspec::parse_cartan_type(s, 0)
    }
}

fn simple_cartan(letter: Letter, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match letter {
        Letter::A | Letter::B | Letter::C | Letter::F => {
            for i in 0..n - 1 {
                link(i, i + 1);
            }
        }
        Letter::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        Letter::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        Letter::G => link(0, 1),
    }
    match letter {
        // alpha_n short
        Letter::B => a[n - 2][n - 1] = -2,
        // alpha_n long
        Letter::C => a[n - 1][n - 2] = -2,
        // alpha_1, alpha_2 long; alpha_3, alpha_4 short
        Letter::F => a[1][2] = -2,
        // alpha_1 short
        Letter::G => a[1][0] = -3,
        _ => {}
    }
    a
}

/// Block-diagonal Cartan matrix of a (possibly non-simple) type.
pub fn cartan_matrix(t: &CartanType) -> IntMatrix {
    let n = t.rank();
    let mut m = IntMatrix::zeros(n, n);
    for (&(letter, r), range) in t.factors.iter().zip(t.factor_ranges()) {
        let block = simple_cartan(letter, r);
        for (i, row) in block.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[(range.start + i, range.start + j)] = BigInt::from(x);
            }
        }
    }
    m
}

/// Order of the Weyl group, from the classical closed forms.
pub fn weyl_order(t: &CartanType) -> BigInt {
    let fact = |n: usize| -> BigInt { (1..=n).map(BigInt::from).product() };
    t.factors
        .iter()
        .map(|&(letter, n)| match letter {
            Letter::A => fact(n + 1),
            Letter::B | Letter::C => (BigInt::one() << n) * fact(n),
            Letter::D => (BigInt::one() << (n - 1)) * fact(n),
            Letter::E => BigInt::from(match n {
                6 => 51_840u64,
                7 => 2_903_040,
                _ => 696_729_600,
            }),
            Letter::F => BigInt::from(1152),
            Letter::G => BigInt::from(12),
        })
        .product()
}

/// Subset of the simple roots, stored as a bitmask (bit `i` is `alpha_{i+1}`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviSet(u64);

impl LeviSet {
    pub const EMPTY: LeviSet = LeviSet(0);

    pub fn from_bits(bits: u64) -> Self {
        LeviSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// All of `Π` for a rank-`n` datum.
    pub fn full(n: usize) -> Self {
        LeviSet(if n >= 64 { u64::MAX } else { (1u64 << n) - 1 })
    }

    /// From 0-based indices. Panics on an index >= 64.
    pub fn from_indices<I: IntoIterator<Item = usize>>(idx: I) -> Self {
        LeviSet(idx.into_iter().fold(0, |acc, i| {
            assert!(i < 64, "simple root index out of range");
            acc | (1 << i)
        }))
    }

    /// From 1-based Bourbaki labels. Returns `None` on a zero label.
    pub fn from_labels(labels: &[usize]) -> Option<Self> {
        if labels.iter().any(|&l| l == 0 || l > 64) {
            return None;
        }
        Some(Self::from_indices(labels.iter().map(|l| l - 1)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LeviSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        LeviSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        LeviSet(self.0 & !(1 << i))
    }

    pub fn union(self, other: LeviSet) -> Self {
        LeviSet(self.0 | other.0)
    }

    pub fn difference(self, other: LeviSet) -> Self {
        LeviSet(self.0 & !other.0)
    }

    /// Members as 0-based indices, ascending.
    pub fn indices(self) -> Vec<usize> {
        (0..64).filter(|&i| self.contains(i)).collect()
    }

    /// Members as 1-based labels, ascending.
    pub fn labels(self) -> Vec<usize> {
        self.indices().into_iter().map(|i| i + 1).collect()
    }

    /// Every subset of `Π` for rank `n`, ordered by size and then
    /// lexicographically by labels.
    pub fn all_subsets(n: usize) -> Vec<LeviSet> {
        let mut v: Vec<LeviSet> = (0..1u64 << n).map(LeviSet).collect();
        v.sort_by_key(|s| (s.len(), s.indices()));
        v
    }

    /// Subsets of `self`.
    pub fn subsets(self) -> impl Iterator<Item = LeviSet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full {
                None
            } else {
                Some(((c | !full).wrapping_add(1)) & full)
            };
            Some(LeviSet(c))
        })
    }
}

impl fmt::Display for LeviSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, l) in self.labels().into_iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for LeviSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// How the character lattice was specified.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Isogeny {
    Adjoint,
    SimplyConnected,
    /// Rows are a basis of the character lattice in fundamental-weight coordinates.
    Lattice(IntMatrix),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    ctype: CartanType,
    isogeny: Isogeny,
    cartan: IntMatrix,
    char_lattice: IntMatrix,
    // row i = alpha_i in the char_lattice basis
    root_coords: IntMatrix,
}

/// Builds a root datum and validates `root lattice ⊆ X ⊆ weight lattice`.
pub fn build_datum(t: &CartanType, isogeny: Isogeny) -> Result<RootDatum> {
    let n = t.rank();
    let cartan = cartan_matrix(t);
    let char_lattice = match &isogeny {
        Isogeny::Adjoint => cartan.clone(),
        Isogeny::SimplyConnected => IntMatrix::identity(n),
        Isogeny::Lattice(m) => {
            if m.rows() != n || m.cols() != n {
                return Err(Error::LatticeShape {
                    expected: n,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
            m.clone()
        }
    };
    let inv = char_lattice
        .to_rat()
        .inverse()
        .ok_or(Error::SingularLattice)?;
    let coords = cartan.to_rat().mul(&inv);
    let mut root_coords = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let c = &coords[(i, j)];
            if !c.is_integer() {
                return Err(Error::LatticeContainment(i + 1));
            }
            root_coords[(i, j)] = c.to_integer();
        }
    }
    Ok(RootDatum {
        ctype: t.clone(),
        isogeny,
        cartan,
        char_lattice,
        root_coords,
    })
}

impl RootDatum {
    pub fn adjoint(t: &CartanType) -> Self {
        build_datum(t, Isogeny::Adjoint).expect("root lattice is always valid")
    }

    pub fn simply_connected(t: &CartanType) -> Self {
        build_datum(t, Isogeny::SimplyConnected).expect("weight lattice is always valid")
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.ctype
    }

    pub fn isogeny(&self) -> &Isogeny {
        &self.isogeny
    }

    pub fn rank(&self) -> usize {
        self.ctype.rank()
    }

    pub fn cartan(&self) -> &IntMatrix {
        &self.cartan
    }

    pub fn char_lattice(&self) -> &IntMatrix {
        &self.char_lattice
    }

    /// Simple roots (rows) written in the character-lattice basis.
    pub fn root_coords(&self) -> &IntMatrix {
        &self.root_coords
    }

    pub fn all(&self) -> LeviSet {
        LeviSet::full(self.rank())
    }

    /// Whether the datum's character lattice is the root lattice, whatever
    /// basis was used to give it.
    pub fn is_adjoint(&self) -> bool {
        self.char_lattice.det().abs() == self.cartan.det().abs()
    }

    pub fn is_simply_connected(&self) -> bool {
        self.char_lattice.det().abs().is_one()
    }

    fn check_range(&self, s: LeviSet) -> Result<()> {
        if s.is_subset(self.all()) {
            Ok(())
        } else {
            Err(Error::LeviOutOfRange {
                set: s,
                rank: self.rank(),
            })
        }
    }
}

/// Component group and cocharacter lattice of the center of a standard Levi.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterData {
    pub levi: LeviSet,
    /// Invariant factors of `π₀(Z(L_S))`.
    pub pi0: InvariantFactors,
    /// Columns: a basis of `X_•(Z(L_S))` in the basis dual to the character lattice.
    pub cochar_basis: IntMatrix,
    pub dim: usize,
}

/// `π₀(Z(L_S))` is the torsion of `X^•(T) / Z·S`; the cocharacters of the
/// center are the integer annihilator of `S`.
pub fn center_of_levi(d: &RootDatum, s: LeviSet) -> Result<CenterData> {
    d.check_range(s)?;
    let pairing = d.root_coords.select_rows(&s.indices());
    let form = snf(&pairing);
    Ok(CenterData {
        levi: s,
        pi0: form.factors,
        dim: form.kernel.cols(),
        cochar_basis: form.kernel,
    })
}

/// `|Z(G)|`, the order of `π₀(Z(L_Π))`.
pub fn center_order(d: &RootDatum) -> BigInt {
    center_of_levi(d, d.all())
        .expect("Π is in range")
        .pi0
        .order()
}

/// Gram matrix of the invariant form on `X_•(T) ⊗ Q` in the coroot basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub gram: IntMatrix,
}

impl Form {
    pub fn is_positive_definite(&self) -> bool {
        let n = self.gram.rows();
        (1..=n).all(|k| {
            let idx: Vec<usize> = (0..k).collect();
            self.gram.submatrix(&idx, &idx).det().is_positive()
        })
    }
}

/// Minimal positive integers `d_i`, per simple factor, with `D·A` symmetric.
pub fn symmetrizer(t: &CartanType) -> Vec<BigInt> {
    let a = cartan_matrix(t);
    let mut out = vec![BigInt::zero(); t.rank()];
    for range in t.factor_ranges() {
        let mut d: Vec<Option<BigRational>> = vec![None; range.len()];
        d[0] = Some(BigRational::one());
        let mut stack = vec![0usize];
        while let Some(i) = stack.pop() {
            for j in 0..range.len() {
                let (gi, gj) = (range.start + i, range.start + j);
                if i == j || a[(gi, gj)].is_zero() || d[j].is_some() {
                    continue;
                }
                let di = d[i].clone().unwrap();
                d[j] = Some(di * BigRational::new(a[(gi, gj)].clone(), a[(gj, gi)].clone()));
                stack.push(j);
            }
        }
        let d: Vec<BigRational> = d
            .into_iter()
            .map(|x| x.expect("Dynkin diagram is connected"))
            .collect();
        let l = d.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = d.iter().map(|x| x.numer() * (&l / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (k, x) in ints.into_iter().enumerate() {
            out[range.start + k] = x / &g;
        }
    }
    out
}

/// The symmetrized Cartan form `D·A` standing in for the Killing form.
pub fn invariant_form(d: &RootDatum) -> Form {
    let sym = symmetrizer(&d.ctype);
    let mut gram = d.cartan.clone();
    for (i, di) in sym.iter().enumerate() {
        for j in 0..gram.cols() {
            gram[(i, j)] *= di;
        }
    }
    Form { gram }
}

/// The invariant form in the cocharacter basis dual to the character lattice.
///
/// The coroot `alpha_j^vee` has dual-basis coordinates given by column `j` of
/// the character-lattice matrix, so the Gram matrix is `L^{-T} (D·A) L^{-1}`.
pub fn cocharacter_gram(d: &RootDatum) -> RatMatrix {
    let linv = d
        .char_lattice
        .to_rat()
        .inverse()
        .expect("validated at construction");
    let g = invariant_form(d).gram.to_rat();
    linv.transpose().mul(&g).mul(&linv)
}

/// Matrix, in the bases `source` and `target` (columns), of the orthogonal
/// projection from `span(source)` onto the subspace `span(target)`:
/// `(Bt^T G Bt)^{-1} Bt^T G Bs`.
pub fn orthogonal_projection(
    gram: &RatMatrix,
    source: &IntMatrix,
    target: &IntMatrix,
) -> RatMatrix {
    let bs = source.to_rat();
    let bt = target.to_rat();
    let btg = bt.transpose().mul(gram);
    let inner = btg.mul(&bt).inverse().expect("invariant form is definite");
    inner.mul(&btg).mul(&bs)
}

/// Orthogonal projection `X_•(Z(L_S)) ⊗ Q -> X_•(Z(L_S')) ⊗ Q` for `S ⊆ S'`.
pub fn killing_projection(d: &RootDatum, s: LeviSet, s2: LeviSet) -> Result<RatMatrix> {
    d.check_range(s)?;
    d.check_range(s2)?;
    if !s.is_subset(s2) {
        return Err(Error::NotSubset {
            small: s,
            large: s2,
        });
    }
    let source = center_of_levi(d, s)?;
    let target = center_of_levi(d, s2)?;
    Ok(orthogonal_projection(
        &cocharacter_gram(d),
        &source.cochar_basis,
        &target.cochar_basis,
    ))
}
