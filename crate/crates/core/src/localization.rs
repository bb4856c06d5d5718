//! Localization of equivariant Chern-class monomials to isolated fixed
//! points.
//!
//! At a fixed point with weights `ξ_1..ξ_n` the `i`-th equivariant Chern class
//! restricts to `σ_i(ξ) t^i` and the equivariant Euler class of the tangent
//! space is `(∏ ξ_j) t^n`. The integral of a class over `M` is then the sum of
//! restriction / Euler class over all fixed points, an element of `Q[t, t⁻¹]`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::kernel::{elementary_symmetric_all, LaurentPoly, Rational};
use crate::model::{FixedPoint, FixedPointData};
use crate::report::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocalizationError {
    #[error("Chern class index {index} out of range 1..={half_dim}")]
    ClassIndexOutOfRange { index: usize, half_dim: usize },
    #[error("cannot parse Chern class expression {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// `c_1^{e_1} ··· c_n^{e_n}`, stored without trailing zero exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChernMonomial {
    exponents: Vec<u32>,
}

impl ChernMonomial {
    /// `exponents[i]` is the power of `c_{i+1}`.
    pub fn new(mut exponents: Vec<u32>) -> Self {
        while exponents.last() == Some(&0) {
            exponents.pop();
        }
        Self { exponents }
    }

    pub fn one() -> Self {
        Self::default()
    }

    /// The single class `c_i`.
    pub fn class(i: usize) -> Self {
        assert!(i >= 1, "Chern classes are indexed from 1");
        let mut e = vec![0; i];
        e[i - 1] = 1;
        Self::new(e)
    }

    pub fn exponent(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.exponents.get(i - 1).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Largest `i` with `e_i > 0` (0 for the unit monomial).
    pub fn max_index(&self) -> usize {
        self.exponents.len()
    }

    /// `Σ i·e_i`; the cohomological degree is twice this.
    pub fn weighted_degree(&self) -> u64 {
        self.exponents
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as u64 + 1) * e as u64)
            .sum()
    }

    pub fn cohomological_degree(&self) -> u64 {
        2 * self.weighted_degree()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.exponents.len().max(other.exponents.len());
        Self::new((1..=len).map(|i| self.exponent(i) + other.exponent(i)).collect())
    }

    /// Every monomial of weighted degree exactly `degree` in `c_1..c_n`,
    /// in lexicographic exponent order.
    pub fn all_of_degree(degree: u64, half_dim: usize) -> Vec<Self> {
        fn rec(idx: usize, remaining: u64, cur: &mut Vec<u32>, out: &mut Vec<ChernMonomial>) {
            if idx == 0 {
                if remaining == 0 {
                    out.push(ChernMonomial::new(cur.clone()));
                }
                return;
            }
            let step = idx as u64;
            for e in 0..=remaining / step {
                cur[idx - 1] = e as u32;
                rec(idx - 1, remaining - e * step, cur, out);
            }
            cur[idx - 1] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![0; half_dim];
        rec(half_dim, degree, &mut cur, &mut out);
        out.sort();
        out
    }

    /// `c1^2*c3`, `c2`, or `1`. Whitespace is ignored and `^1` may be omitted.
    pub fn parse(input: &str) -> Result<Self, LocalizationError> {
        let expr = ChernExpr::parse(input)?;
        match expr.terms.as_slice() {
            [(c, m)] if c.is_one() => Ok(m.clone()),
            _ => Err(LocalizationError::Parse {
                input: input.to_string(),
                reason: "expected a single monomial".into(),
            }),
        }
    }

    fn check_against(&self, half_dim: usize) -> Result<(), LocalizationError> {
        if self.max_index() > half_dim {
            return Err(LocalizationError::ClassIndexOutOfRange { index: self.max_index(), half_dim });
        }
        Ok(())
    }
}

impl fmt::Display for ChernMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "c{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Rational linear combination of Chern monomials, as accepted by the CLI:
/// `c1^2 + 1/2*c2 - 3*c1*c1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernExpr {
    pub terms: Vec<(Rational, ChernMonomial)>,
}

impl ChernExpr {
    pub fn parse(input: &str) -> Result<Self, LocalizationError> {
        let err = |reason: &str| LocalizationError::Parse { input: input.to_string(), reason: reason.to_string() };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        // split at top-level + and -, keeping the sign with the term
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            if (b == b'+' || b == b'-') && i > 0 && !matches!(bytes[i - 1], b'^' | b'*' | b'/' | b'+' | b'-') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut terms = Vec::new();
        for piece in pieces {
            let (negative, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(piece)),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let mut coeff = Rational::one();
            let mut mono = ChernMonomial::one();
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(err("empty factor"));
                }
                if let Some(rest) = factor.strip_prefix('c') {
                    let (index, power) = match rest.split_once('^') {
                        Some((i, p)) => (i, p),
                        None => (rest, "1"),
                    };
                    let index: usize = index.parse().map_err(|_| err("bad class index"))?;
                    let power: u32 = power.parse().map_err(|_| err("bad exponent"))?;
                    if index == 0 {
                        return Err(err("class indices start at 1"));
                    }
                    let mut e = vec![0; index];
                    e[index - 1] = power;
                    mono = mono.mul(&ChernMonomial::new(e));
                } else {
                    coeff *= parse_rational(factor).ok_or_else(|| err("bad coefficient"))?;
                }
            }
            if negative {
                coeff = -coeff;
            }
            terms.push((coeff, mono));
        }
        Ok(Self { terms })
    }

    /// Integral of the combination: the rational combination of monomial
    /// integrals.
    pub fn integrate(&self, data: &FixedPointData) -> Result<LaurentPoly, LocalizationError> {
        let mut total = LaurentPoly::zero();
        for (coeff, mono) in &self.terms {
            total = &total + &abbv_integral(data, mono)?.scale(coeff);
        }
        Ok(total)
    }
}

fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

fn check_index(p: &FixedPoint, i: usize) -> Result<(), LocalizationError> {
    let n = p.weights.len();
    if i == 0 || i > n {
        return Err(LocalizationError::ClassIndexOutOfRange { index: i, half_dim: n });
    }
    Ok(())
}

/// `c_i(M)|_p = σ_i(ξ) t^i`.
pub fn chern_restriction(p: &FixedPoint, i: usize) -> Result<LaurentPoly, LocalizationError> {
    check_index(p, i)?;
    let sigma = elementary_symmetric_all(p.weights.as_slice()).swap_remove(i);
    Ok(LaurentPoly::monomial(Rational::from_integer(sigma), i as i64))
}

/// `e_{S¹}(T_p M) = Λ_p t^n`; never zero.
pub fn euler_class(p: &FixedPoint) -> LaurentPoly {
    LaurentPoly::monomial(Rational::from_integer(p.weight_product()), p.weights.len() as i64)
}

/// `∏ σ_i(ξ_p)^{e_i}`: the integer value of the monomial at `p`.
pub fn monomial_value(p: &FixedPoint, mono: &ChernMonomial) -> BigInt {
    let sigma = elementary_symmetric_all(p.weights.as_slice());
    value_from_sigma(&sigma, mono)
}

pub(crate) fn value_from_sigma(sigma: &[BigInt], mono: &ChernMonomial) -> BigInt {
    let mut v = BigInt::one();
    for (i, &e) in mono.exponents().iter().enumerate() {
        if e > 0 {
            let s = sigma.get(i + 1).cloned().unwrap_or_else(BigInt::zero);
            v *= num_traits::pow(s, e as usize);
        }
    }
    v
}

/// `∫_M c^e = Σ_p (∏ σ_i(ξ_p)^{e_i} / Λ_p) t^{Σ i·e_i − n}`.
pub fn abbv_integral(data: &FixedPointData, mono: &ChernMonomial) -> Result<LaurentPoly, LocalizationError> {
    let n = data.half_dim();
    mono.check_against(n)?;
    let power = mono.weighted_degree() as i64 - n as i64;
    let coeff: Rational = data
        .points()
        .iter()
        .map(|p| Rational::new(monomial_value(p, mono), p.weight_product()))
        .fold(Rational::zero(), |acc, x| acc + x);
    Ok(LaurentPoly::monomial(coeff, power))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VanishingCheck {
    pub verdict: Verdict,
    pub integral: LaurentPoly,
}

/// Integrals of classes of degree below `dim M` must vanish; top degree and
/// above are exempt.
pub fn degree_vanishing_check(
    data: &FixedPointData,
    mono: &ChernMonomial,
) -> Result<VanishingCheck, LocalizationError> {
    let integral = abbv_integral(data, mono)?;
    let verdict = if mono.weighted_degree() >= data.half_dim() as u64 {
        Verdict::NotApplicable
    } else if integral.is_zero() {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    Ok(VanishingCheck { verdict, integral })
}
