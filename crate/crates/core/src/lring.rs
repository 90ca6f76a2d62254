//! Exact arithmetic in `Z[L]` and in the free `Z[L]`-module spanned by
//! `1`, `[X_W]` and `[Y_W]`, taken modulo `([X_W] - [Y_W]) * L^6`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent of `L` in the relation `([X_W] - [Y_W]) * L^6 = 0`.
pub const RELATION_DEGREE: usize = 6;

/// A polynomial in the Lefschetz class `L` with integer coefficients.
///
/// `coeffs[i]` is the coefficient of `L^i`. The highest stored coefficient
/// is never zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(1)
    }

    /// The class `L` itself.
    pub fn l() -> Self {
        Poly::monomial(1, 1)
    }

    pub fn constant<T: Into<BigInt>>(c: T) -> Self {
        Poly::from_coeffs(vec![c.into()])
    }

    /// `c * L^k`.
    pub fn monomial<T: Into<BigInt>>(c: T, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c.into();
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Builds a polynomial from small coefficients, lowest degree first.
    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `L^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Exact value at `L = q` (Horner).
    pub fn eval(&self, q: u64) -> BigInt {
        self.eval_big(&BigInt::from(q))
    }

    pub fn eval_big(&self, q: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * q + c)
    }

    /// Splits `self = low + L^k * high` with `deg(low) < k`.
    pub fn split(&self, k: usize) -> (Poly, Poly) {
        if self.coeffs.len() <= k {
            return (self.clone(), Poly::zero());
        }
        let low = Poly::from_coeffs(self.coeffs[..k].to_vec());
        let high = Poly::from_coeffs(self.coeffs[k..].to_vec());
        (low, high)
    }

    /// Multiplies by `L^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder, provided every leading-coefficient division
    /// along the way is exact over `Z`. Returns `None` otherwise.
    pub fn div_rem(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        let dd = divisor.degree()?;
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = rem.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            if !(&c % lead).is_zero() {
                return None;
            }
            let q = c / lead;
            let shift = top - dd;
            for (i, d) in divisor.coeffs[..dd].iter().enumerate() {
                rem[shift + i] -= &q * d;
            }
            quot[shift] = q;
        }
        Some((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// Division that must leave no remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Result<Poly> {
        match self.div_rem(divisor) {
            Some((q, r)) if r.is_zero() => Ok(q),
            _ => Err(Error::Internal(format!(
                "({self}) is not divisible by ({divisor})"
            ))),
        }
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Self {
        Poly::constant(c)
    }
}

impl fmt::Display for Poly {
    /// Descending powers, e.g. `L^2 - 1` or `-3*L^6 + L`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("L")?,
                (1, false) => write!(f, "{mag}*L")?,
                (_, true) => write!(f, "L^{i}")?,
                (_, false) => write!(f, "{mag}*L^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

fn add_coeffs(a: &[BigInt], b: &[BigInt], sign: i8) -> Poly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_default();
        let y = b.get(i);
        out.push(match (y, sign) {
            (None, _) => x,
            (Some(y), s) if s >= 0 => x + y,
            (Some(y), _) => x - y,
        });
    }
    Poly::from_coeffs(out)
}

fn mul_coeffs(a: &[BigInt], b: &[BigInt]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Poly::zero();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    Poly::from_coeffs(out)
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                $body(&self.coeffs, &rhs.coeffs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| add_coeffs(a, b, 1));
poly_binop!(Sub, sub, |a, b| add_coeffs(a, b, -1));
poly_binop!(Mul, mul, mul_coeffs);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        *self = add_coeffs(&self.coeffs, &rhs.coeffs, 1);
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        *self = add_coeffs(&self.coeffs, &rhs.coeffs, -1);
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -self.clone()
    }
}

/// The two formal generators of the class module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    /// `[X_W]`, the isotropic 2-plane locus in `G(2,7)`.
    XW,
    /// `[Y_W]`, the rank-4 locus in `PW`.
    YW,
}

impl Symbol {
    pub const ALL: [Symbol; 2] = [Symbol::XW, Symbol::YW];

    pub fn label(self) -> &'static str {
        match self {
            Symbol::XW => "[X]",
            Symbol::YW => "[Y]",
        }
    }
}

/// An element `scalar + a*[X_W] + b*[Y_W]` of the free `Z[L]`-module.
///
/// Entries of `sym_coeffs` are never zero; a missing symbol means
/// coefficient zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MotElem {
    scalar: Poly,
    sym_coeffs: BTreeMap<Symbol, Poly>,
}

impl MotElem {
    pub fn zero() -> Self {
        MotElem::default()
    }

    pub fn scalar(p: Poly) -> Self {
        MotElem {
            scalar: p,
            sym_coeffs: BTreeMap::new(),
        }
    }

    /// The generator `[X_W]` or `[Y_W]` with coefficient 1.
    pub fn symbol(s: Symbol) -> Self {
        MotElem::zero().with_symbol(s, Poly::one())
    }

    /// Builds `scalar + Σ coeff * symbol`.
    pub fn new(scalar: Poly, terms: impl IntoIterator<Item = (Symbol, Poly)>) -> Self {
        let mut out = MotElem::scalar(scalar);
        for (s, c) in terms {
            let merged = out.sym_coeff(s) + c;
            out = out.with_symbol(s, merged);
        }
        out
    }

    fn with_symbol(mut self, s: Symbol, c: Poly) -> Self {
        if c.is_zero() {
            self.sym_coeffs.remove(&s);
        } else {
            self.sym_coeffs.insert(s, c);
        }
        self
    }

    /// The `([X_W] - [Y_W]) * L^6` relation generator.
    pub fn relation() -> Self {
        let l6 = Poly::monomial(1, RELATION_DEGREE);
        MotElem::new(Poly::zero(), [(Symbol::XW, l6.clone()), (Symbol::YW, -l6)])
    }

    pub fn scalar_part(&self) -> &Poly {
        &self.scalar
    }

    /// Stored coefficient, or `None` when it is zero.
    pub fn get(&self, s: Symbol) -> Option<&Poly> {
        self.sym_coeffs.get(&s)
    }

    pub fn sym_coeff(&self, s: Symbol) -> Poly {
        self.sym_coeffs.get(&s).cloned().unwrap_or_default()
    }

    pub fn sym_coeffs(&self) -> &BTreeMap<Symbol, Poly> {
        &self.sym_coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() && self.sym_coeffs.is_empty()
    }

    pub fn is_scalar(&self) -> bool {
        self.sym_coeffs.is_empty()
    }

    /// `self + sign * other`, with `sign` either `1` or `-1`.
    pub fn combine(&self, other: &MotElem, sign: i8) -> MotElem {
        let op = |a: &Poly, b: &Poly| if sign >= 0 { a + b } else { a - b };
        let mut out = MotElem::scalar(op(&self.scalar, &other.scalar));
        for s in Symbol::ALL {
            let c = op(&self.sym_coeff(s), &other.sym_coeff(s));
            out = out.with_symbol(s, c);
        }
        out
    }

    /// Multiplies every component by a scalar polynomial.
    pub fn scale(&self, p: &Poly) -> MotElem {
        let mut out = MotElem::scalar(&self.scalar * p);
        for (&s, c) in &self.sym_coeffs {
            out = out.with_symbol(s, c * p);
        }
        out
    }

    /// Module product. At least one side must be a pure scalar.
    pub fn try_mul(&self, other: &MotElem) -> Result<MotElem> {
        if self.is_scalar() {
            Ok(other.scale(&self.scalar))
        } else if other.is_scalar() {
            Ok(self.scale(&other.scalar))
        } else {
            Err(Error::SymbolProduct)
        }
    }

    /// Canonical representative modulo `([X_W] - [Y_W]) * L^6`: the part of
    /// the `[X_W]` coefficient divisible by `L^6` is moved onto `[Y_W]`.
    pub fn normal_form(&self) -> MotElem {
        let (low, high) = self.sym_coeff(Symbol::XW).split(RELATION_DEGREE);
        let yw = self.sym_coeff(Symbol::YW) + high.shift(RELATION_DEGREE);
        MotElem::scalar(self.scalar.clone())
            .with_symbol(Symbol::XW, low)
            .with_symbol(Symbol::YW, yw)
    }

    /// `true` when the element vanishes modulo the relation.
    pub fn is_zero_mod_relation(&self) -> bool {
        self.normal_form().is_zero()
    }
}

impl From<Poly> for MotElem {
    fn from(p: Poly) -> Self {
        MotElem::scalar(p)
    }
}

impl Add<&MotElem> for &MotElem {
    type Output = MotElem;
    fn add(self, rhs: &MotElem) -> MotElem {
        self.combine(rhs, 1)
    }
}

impl Sub<&MotElem> for &MotElem {
    type Output = MotElem;
    fn sub(self, rhs: &MotElem) -> MotElem {
        self.combine(rhs, -1)
    }
}

impl Add for MotElem {
    type Output = MotElem;
    fn add(self, rhs: MotElem) -> MotElem {
        self.combine(&rhs, 1)
    }
}

impl Sub for MotElem {
    type Output = MotElem;
    fn sub(self, rhs: MotElem) -> MotElem {
        self.combine(&rhs, -1)
    }
}

impl Neg for &MotElem {
    type Output = MotElem;
    fn neg(self) -> MotElem {
        MotElem::zero().combine(self, -1)
    }
}

impl Neg for MotElem {
    type Output = MotElem;
    fn neg(self) -> MotElem {
        -&self
    }
}

impl fmt::Display for MotElem {
    /// Scalar first, then `(c)·[X]`, then `(c)·[Y]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !self.scalar.is_zero() {
            parts.push(self.scalar.to_string());
        }
        for (s, c) in &self.sym_coeffs {
            parts.push(format!("({c})·{}", s.label()));
        }
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for MotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MotElem({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_i64s(c)
    }

    #[test]
    fn add_and_mul_examples() {
        assert_eq!(&p(&[1, 1]) + &p(&[0, 0, 1]), p(&[1, 1, 1]));
        assert_eq!(&p(&[-1, 1]) * &p(&[1, 1]), p(&[-1, 0, 1]));
        let p6 = p(&[1; 7]);
        let g27 = &p6 * &p(&[1, 0, 1, 0, 1]);
        assert_eq!(g27.degree(), Some(10));
        assert_eq!(g27, p(&[1, 1, 2, 2, 3, 3, 3, 2, 2, 1, 1]));
    }

    #[test]
    fn canonical_form_drops_leading_zeros() {
        assert_eq!(p(&[1, 2, 0, 0]), p(&[1, 2]));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert_eq!(&p(&[0, 1]) - &p(&[0, 1]), Poly::zero());
    }

    #[test]
    fn eval_examples() {
        assert_eq!(p(&[1; 7]).eval(2), BigInt::from(127));
        assert_eq!(Poly::zero().eval(5), BigInt::zero());
        let g27 = &p(&[1; 7]) * &p(&[1, 0, 1, 0, 1]);
        assert_eq!(g27.eval(2), BigInt::from(2667));
    }

    #[test]
    fn split_examples() {
        let (lo, hi) = p(&[0, 0, 1, 0, 0, 0, 0, 1]).split(6);
        assert_eq!((lo, hi), (p(&[0, 0, 1]), p(&[0, 1])));
        assert_eq!(Poly::monomial(1, 5).split(6), (Poly::monomial(1, 5), Poly::zero()));

        // (L^2-1)(L-1)L^7 splits entirely into the high part.
        let b = &(&p(&[-1, 0, 1]) * &p(&[-1, 1])) * &Poly::monomial(1, 7);
        let (lo, hi) = b.split(6);
        assert!(lo.is_zero());
        assert_eq!(hi, &(&p(&[-1, 0, 1]) * &p(&[-1, 1])) * &Poly::l());
    }

    #[test]
    fn exact_division() {
        let num = &p(&[-1, 0, 0, 1]) * &p(&[2, 5]);
        assert_eq!(num.div_exact(&p(&[-1, 1])).unwrap(), &p(&[1, 1, 1]) * &p(&[2, 5]));
        assert!(p(&[1, 0, 1]).div_exact(&p(&[-1, 1])).is_err());
        assert!(p(&[1, 1]).div_exact(&p(&[0, 2])).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 1]).to_string(), "L^2 - 1");
        assert_eq!(p(&[0, -3, 0, 0, 0, 0, -1]).to_string(), "-L^6 - 3*L");
        assert_eq!(Poly::zero().to_string(), "0");
        let r = MotElem::relation();
        assert_eq!(r.to_string(), "(L^6)·[X] + (-L^6)·[Y]");
    }

    #[test]
    fn combine_examples() {
        let l6 = Poly::monomial(1, 6);
        let scalar = p(&[3, 0, 7]);
        let a = MotElem::new(scalar.clone(), [(Symbol::XW, l6.clone())]);
        let b = MotElem::new(scalar, [(Symbol::YW, l6)]);
        assert_eq!(a.combine(&b, -1), MotElem::relation());
        assert_eq!(a.combine(&MotElem::zero(), 1), a);
        assert!(a.combine(&a, -1).is_zero());
        assert!(a.combine(&a, -1).sym_coeffs().is_empty());
    }

    #[test]
    fn mul_examples() {
        let x_minus_y = &MotElem::symbol(Symbol::XW) - &MotElem::symbol(Symbol::YW);
        let prod = x_minus_y.try_mul(&Poly::monomial(1, 6).into()).unwrap();
        assert_eq!(prod, MotElem::relation());
        assert_eq!(prod.try_mul(&MotElem::scalar(Poly::one())).unwrap(), prod);
        assert_eq!(
            MotElem::symbol(Symbol::XW).try_mul(&MotElem::symbol(Symbol::YW)),
            Err(Error::SymbolProduct)
        );
    }

    #[test]
    fn normal_form_examples() {
        assert!(MotElem::relation().normal_form().is_zero());
        let weaker = &(&p(&[-1, 0, 1]) * &p(&[-1, 1])) * &Poly::monomial(1, 7);
        let x_minus_y = &MotElem::symbol(Symbol::XW) - &MotElem::symbol(Symbol::YW);
        assert!(x_minus_y.scale(&weaker).normal_form().is_zero());
        let low = MotElem::new(Poly::zero(), [(Symbol::XW, Poly::monomial(1, 5))]);
        assert_eq!(low.normal_form(), low);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec(-1000i64..1000, 0..12).prop_map(|c| Poly::from_i64s(&c))
    }

    fn arb_mot() -> impl Strategy<Value = MotElem> {
        (arb_poly(), arb_poly(), arb_poly())
            .prop_map(|(s, x, y)| MotElem::new(s, [(Symbol::XW, x), (Symbol::YW, y)]))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &Poly::one(), a.clone());
            prop_assert_eq!(&a + &Poly::zero(), a.clone());
            prop_assert_eq!(&a - &a, Poly::zero());
        }

        #[test]
        fn split_recombines(a in arb_poly(), k in 0usize..=20) {
            let (lo, hi) = a.split(k);
            prop_assert!(lo.degree().is_none_or(|d| d < k));
            prop_assert_eq!(&lo + &hi.shift(k), a);
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), q in 0u64..=7) {
            prop_assert_eq!((&a * &b).eval(q), a.eval(q) * b.eval(q));
            prop_assert_eq!((&a + &b).eval(q), a.eval(q) + b.eval(q));
        }

        #[test]
        fn normal_form_idempotent_and_coset_constant(x in arb_mot(), t in arb_poly()) {
            let nf = x.normal_form();
            prop_assert_eq!(nf.normal_form(), nf.clone());
            let shifted = &x + &MotElem::relation().scale(&t);
            prop_assert_eq!(shifted.normal_form(), nf);
        }
    }
}
