//! Point counts over finite fields, E-polynomials and the Poincaré
//! polynomial predicted by purity.
//!
//! `|J_G(F_q)| = q^n · Σ_{S ⊆ Π} |π₀(Z(L_S))| · (q − 1)^{n − |S|}`, the sum
//! running over all subsets of the simple roots including `Π` itself.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactla::binomial;
use crate::rootdata::{center_of_levi, LeviSet, RootDatum};

/// What the single variable of a [`QPolynomial`] stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    /// Size of the finite field.
    Q,
    /// The product `uv` of the E-polynomial variables.
    Uv,
}

/// Integer polynomial in `q` (or `uv`); `coeffs[k]` multiplies `q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPolynomial {
    coeffs: Vec<BigInt>,
    var: Variable,
}

/// Integer polynomial in `t`; `coeffs[k]` multiplies `t^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TPolynomial {
    coeffs: Vec<BigInt>,
}

fn trim(mut c: Vec<BigInt>) -> Vec<BigInt> {
    while c.last().is_some_and(|x| x.is_zero()) {
        c.pop();
    }
    c
}

fn fmt_descending(f: &mut fmt::Formatter<'_>, coeffs: &[BigInt], var: &str) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, "{}", if neg { " - " } else { " + " })?;
        }
        first = false;
        let a = c.abs();
        match (k, a.is_one()) {
            (0, _) => write!(f, "{a}")?,
            (1, true) => write!(f, "{var}")?,
            (1, false) => write!(f, "{a}{var}")?,
            (_, true) => write!(f, "{var}^{k}")?,
            (_, false) => write!(f, "{a}{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl QPolynomial {
    pub fn new(coeffs: Vec<BigInt>, var: Variable) -> Self {
        QPolynomial {
            coeffs: trim(coeffs),
            var,
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn variable(&self) -> Variable {
        self.var
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }
}

impl fmt::Display for QPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.var {
            Variable::Q => "q",
            Variable::Uv => "(uv)",
        };
        fmt_descending(f, &self.coeffs, var)
    }
}

impl TPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        TPolynomial {
            coeffs: trim(coeffs),
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * t + c)
    }
}

impl fmt::Display for TPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_descending(f, &self.coeffs, "t")
    }
}

/// `|π₀(Z(L_S))|` for every `S ⊆ Π`, in [`LeviSet::all_subsets`] order.
pub fn pi0_orders(d: &RootDatum) -> Vec<(LeviSet, BigInt)> {
    LeviSet::all_subsets(d.rank())
        .into_iter()
        .map(|s| {
            let c = center_of_levi(d, s).expect("subset of Π");
            (s, c.pi0.order())
        })
        .collect()
}

/// The point count `|J_G(F_q)|` as a polynomial in `q`.
pub fn point_count_poly(d: &RootDatum) -> QPolynomial {
    let n = d.rank();
    let mut coeffs = vec![BigInt::zero(); 2 * n + 1];
    for (s, order) in pi0_orders(d) {
        let m = n - s.len();
        // q^n (q - 1)^m = Σ_j C(m, j) (-1)^(m-j) q^(n+j)
        for j in 0..=m {
            let mut term = BigInt::from(binomial(m, j)) * &order;
            if (m - j) % 2 == 1 {
                term = -term;
            }
            coeffs[n + j] += term;
        }
    }
    QPolynomial::new(coeffs, Variable::Q)
}

/// The E-polynomial: the point count with `q` replaced by `uv`.
pub fn e_polynomial(d: &RootDatum) -> QPolynomial {
    QPolynomial::new(point_count_poly(d).coeffs, Variable::Uv)
}

/// `t^{4n} E(−1/t, −1/t)`, the Poincaré polynomial predicted by purity.
///
/// A monomial `c (uv)^k` becomes `c t^{4n − 2k}`. Fails if a term would have a
/// negative exponent or the result has a negative coefficient.
pub fn poincare_from_purity(d: &RootDatum) -> Result<TPolynomial> {
    let n = d.rank();
    let e = e_polynomial(d);
    let top = 4 * n;
    let mut coeffs = vec![BigInt::zero(); top + 1];
    for (k, c) in e.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if 2 * k > top {
            return Err(Error::NonPolynomialResult {
                degree: k,
                bound: 2 * n,
            });
        }
        coeffs[top - 2 * k] += c;
    }
    let p = TPolynomial::new(coeffs);
    if let Some((degree, c)) = p.coeffs().iter().enumerate().find(|(_, c)| c.is_negative()) {
        return Err(Error::NegativeCoefficient {
            degree,
            coeff: c.to_string(),
        });
    }
    Ok(p)
}
