//! Exact scalars and truncated multivariate Laurent series in the formal
//! deformation parameters.
//!
//! Every coefficient in the engine is a [`GaussianRational`], and every
//! scalar that depends on a deformation parameter is a [`LaurentSeries`].
//! Series are truncated at a fixed total degree in the deformation
//! parameters; the light velocity enters through the separate variable
//! `1/c`, which does not count towards that degree and is the only variable
//! allowed to carry negative exponents.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::SeriesError;

/// Default truncation order in the deformation parameters.
pub const DEFAULT_ORDER: u32 = 4;

/// An exact complex rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    /// `num/den` as a real rational. Panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// `n·i`.
    pub fn imag(n: i64) -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::from_integer(BigInt::from(n)),
        }
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussianRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        GaussianRational {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        GaussianRational::from_int(1)
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::from_int(n)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        &self + &rhs
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        &self - &rhs
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational {
                re: &self.re * &rhs.re,
                im: BigRational::zero(),
            };
        }
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        self.clone().neg()
    }
}

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_str = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{im}i")
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}", im_str(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                let abs = self.im.abs();
                write!(f, "({}{}{})", self.re, sign, im_str(&abs))
            }
        }
    }
}

/// The closed set of formal parameters.
///
/// Inverse mass-like parameters are stored as the expansion variables
/// themselves, so `InvKappa` stands for `1/κ`; `κ` never appears.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FormalParameter {
    #[serde(rename = "theta_kl")]
    ThetaKl,
    #[serde(rename = "theta_0i")]
    Theta0i,
    #[serde(rename = "1/kappa")]
    InvKappa,
    #[serde(rename = "1/kappa_hat")]
    InvKappaHat,
    #[serde(rename = "1/kappa_bar")]
    InvKappaBar,
    #[serde(rename = "xi_kl")]
    XiKl,
    #[serde(rename = "xi_0i")]
    Xi0i,
    #[serde(rename = "1/lambda")]
    InvLambda,
    #[serde(rename = "1/lambda_hat")]
    InvLambdaHat,
    #[serde(rename = "1/lambda_bar")]
    InvLambdaBar,
    #[serde(rename = "1/c")]
    InvC,
}

/// Number of formal parameters.
pub const PARAMETER_COUNT: usize = 11;

impl FormalParameter {
    pub const ALL: [FormalParameter; PARAMETER_COUNT] = [
        FormalParameter::ThetaKl,
        FormalParameter::Theta0i,
        FormalParameter::InvKappa,
        FormalParameter::InvKappaHat,
        FormalParameter::InvKappaBar,
        FormalParameter::XiKl,
        FormalParameter::Xi0i,
        FormalParameter::InvLambda,
        FormalParameter::InvLambdaHat,
        FormalParameter::InvLambdaBar,
        FormalParameter::InvC,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Whether the parameter counts towards the truncation degree.
    pub fn is_deformation(self) -> bool {
        self != FormalParameter::InvC
    }

    pub fn symbol(self) -> &'static str {
        match self {
            FormalParameter::ThetaKl => "θ_kl",
            FormalParameter::Theta0i => "θ_0i",
            FormalParameter::InvKappa => "(1/κ)",
            FormalParameter::InvKappaHat => "(1/κ̂)",
            FormalParameter::InvKappaBar => "(1/κ̄)",
            FormalParameter::XiKl => "ξ_kl",
            FormalParameter::Xi0i => "ξ_0i",
            FormalParameter::InvLambda => "(1/λ)",
            FormalParameter::InvLambdaHat => "(1/λ̂)",
            FormalParameter::InvLambdaBar => "(1/λ̄)",
            FormalParameter::InvC => "(1/c)",
        }
    }
}

impl fmt::Display for FormalParameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Exponent vector over [`FormalParameter::ALL`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([i8; PARAMETER_COUNT]);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// A single parameter to a power. Negative powers are only accepted for `1/c`.
    pub fn power(p: FormalParameter, exp: i8) -> Result<Self, SeriesError> {
        let mut m = Monomial::default();
        m.0[p.index()] = exp;
        m.validate()?;
        Ok(m)
    }

    pub fn from_exponents(exps: [i8; PARAMETER_COUNT]) -> Result<Self, SeriesError> {
        let m = Monomial(exps);
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<(), SeriesError> {
        for p in FormalParameter::ALL {
            if p.is_deformation() && self.0[p.index()] < 0 {
                return Err(SeriesError::NegativeExponent(p));
            }
        }
        Ok(())
    }

    pub fn exponent(&self, p: FormalParameter) -> i8 {
        self.0[p.index()]
    }

    /// Total degree in the deformation parameters.
    pub fn degree(&self) -> u32 {
        FormalParameter::ALL
            .iter()
            .filter(|p| p.is_deformation())
            .map(|p| self.0[p.index()] as u32)
            .sum()
    }

    /// Power of `c` (the negated exponent of `1/c`).
    pub fn c_power(&self) -> i32 {
        -(self.0[FormalParameter::InvC.index()] as i32)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0i8; PARAMETER_COUNT];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = self.0[k] + other.0[k];
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in FormalParameter::ALL {
            let e = self.0[p.index()];
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("·")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A truncated Laurent series in the formal parameters.
///
/// Terms of total deformation degree above `order` are discarded by every
/// operation, and `truncated` records whether that ever happened along the
/// computation that produced the value. Equality compares terms only.
#[derive(Clone, Debug)]
pub struct LaurentSeries {
    terms: BTreeMap<Monomial, GaussianRational>,
    order: u32,
    truncated: bool,
}

impl PartialEq for LaurentSeries {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LaurentSeries {}

impl LaurentSeries {
    pub fn zero(order: u32) -> Self {
        LaurentSeries {
            terms: BTreeMap::new(),
            order,
            truncated: false,
        }
    }

    pub fn one(order: u32) -> Self {
        Self::constant(GaussianRational::one(), order)
    }

    pub fn constant(c: GaussianRational, order: u32) -> Self {
        Self::term(c, Monomial::one(), order)
    }

    /// A single parameter with unit coefficient.
    pub fn param(p: FormalParameter, order: u32) -> Self {
        let mono = Monomial::power(p, 1).expect("positive power is always valid");
        Self::term(GaussianRational::one(), mono, order)
    }

    /// `c · mono`, truncated if `mono` already exceeds `order`.
    pub fn term(c: GaussianRational, mono: Monomial, order: u32) -> Self {
        let mut s = Self::zero(order);
        if mono.degree() > order {
            s.truncated = true;
        } else if !c.is_zero() {
            s.terms.insert(mono, c);
        }
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::one())
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest total deformation degree among the terms (`None` for zero).
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The constant (parameter-free) coefficient.
    pub fn constant_term(&self) -> GaussianRational {
        self.terms
            .get(&Monomial::one())
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    pub fn coefficient(&self, mono: &Monomial) -> GaussianRational {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(GaussianRational::zero)
    }

    fn insert_add(&mut self, mono: Monomial, c: GaussianRational) {
        if mono.degree() > self.order {
            self.truncated = true;
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch(self.order, other.order));
        }
        let mut out = self.clone();
        out.truncated |= other.truncated;
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        Ok(out)
    }

    /// Exact product truncated at the shared order.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.order != other.order {
            return Err(SeriesError::OrderMismatch(self.order, other.order));
        }
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated || other.truncated;
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if da + mb.degree() > self.order {
                    out.truncated = true;
                    continue;
                }
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply every coefficient by an exact scalar.
    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            let mut z = Self::zero(self.order);
            z.truncated = self.truncated;
            return z;
        }
        LaurentSeries {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
            order: self.order,
            truncated: self.truncated,
        }
    }

    /// Multiply by a monomial (used for parameter and `c`-power bookkeeping).
    pub fn mul_monomial(&self, mono: &Monomial) -> Self {
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated;
        for (m, c) in &self.terms {
            out.insert_add(m.mul(mono), c.clone());
        }
        out
    }

    /// Re-truncate at `order` (no-op when `order` is not smaller).
    pub fn truncate(&self, order: u32) -> Self {
        let mut out = Self::zero(order);
        out.truncated = self.truncated;
        for (m, c) in &self.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    /// The `c → ∞` limit: keep the `c⁰` part, drop negative powers of `c`,
    /// and fail on any positive power.
    pub fn limit_c_to_infinity(&self) -> Result<Self, SeriesError> {
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated;
        for (m, c) in &self.terms {
            match m.c_power() {
                p if p > 0 => {
                    return Err(SeriesError::Divergence {
                        term: format!("{} {}", c, m),
                        c_power: p,
                    })
                }
                0 => out.insert_add(*m, c.clone()),
                _ => {}
            }
        }
        Ok(out)
    }

    /// Substitute every parameter by a monomial: `p^e ↦ image(p)^e`.
    pub fn rewrite_params(&self, image: impl Fn(FormalParameter) -> Monomial) -> Self {
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated;
        for (m, c) in &self.terms {
            let mut acc = Monomial::one();
            for p in FormalParameter::ALL {
                let e = m.exponent(p);
                if e == 0 {
                    continue;
                }
                let img = image(p);
                for _ in 0..e.unsigned_abs() {
                    acc = if e > 0 {
                        acc.mul(&img)
                    } else {
                        acc.mul(&invert_monomial(&img))
                    };
                }
            }
            out.insert_add(acc, c.clone());
        }
        out
    }

    /// Set a parameter to zero (drops every term containing it).
    pub fn set_zero(&self, p: FormalParameter) -> Self {
        LaurentSeries {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(p) == 0)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            order: self.order,
            truncated: self.truncated,
        }
    }

    /// Whether any term carries a nonzero power of `p`.
    pub fn depends_on(&self, p: FormalParameter) -> bool {
        self.terms.keys().any(|m| m.exponent(p) != 0)
    }

    /// Multiplicative inverse for series with invertible constant term and no
    /// `c` dependence in the leading part.
    pub fn inverse(&self) -> Option<Self> {
        let c0 = self.constant_term().inv()?;
        // self = c0⁻¹ (1 + x), x has positive degree
        let one = Self::one(self.order);
        let normalized = self.scale(&c0);
        let x = &normalized - &one;
        if x.terms.keys().any(|m| m.degree() == 0) {
            return None;
        }
        let mut result = one.clone();
        let mut power = one;
        for _ in 0..self.order {
            power = &power * &(-&x);
            result = &result + &power;
        }
        result.truncated |= !power.is_zero() || x.truncated;
        Some(result.scale(&c0))
    }
}

fn invert_monomial(m: &Monomial) -> Monomial {
    let mut out = *m;
    for e in out.0.iter_mut() {
        *e = -*e;
    }
    out
}

impl<'a> Add<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.checked_add(rhs).expect("series truncation orders must agree")
    }
}

impl Add for LaurentSeries {
    type Output = LaurentSeries;
    fn add(self, rhs: LaurentSeries) -> LaurentSeries {
        &self + &rhs
    }
}

impl AddAssign<&LaurentSeries> for LaurentSeries {
    fn add_assign(&mut self, rhs: &LaurentSeries) {
        assert_eq!(self.order, rhs.order, "series truncation orders must agree");
        self.truncated |= rhs.truncated;
        for (m, c) in &rhs.terms {
            self.insert_add(*m, c.clone());
        }
    }
}

impl SubAssign<&LaurentSeries> for LaurentSeries {
    fn sub_assign(&mut self, rhs: &LaurentSeries) {
        assert_eq!(self.order, rhs.order, "series truncation orders must agree");
        self.truncated |= rhs.truncated;
        for (m, c) in &rhs.terms {
            self.insert_add(*m, -c);
        }
    }
}

impl<'a> Sub<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: &LaurentSeries) -> LaurentSeries {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentSeries {
    type Output = LaurentSeries;
    fn sub(self, rhs: LaurentSeries) -> LaurentSeries {
        &self - &rhs
    }
}

impl<'a> Mul<&'a LaurentSeries> for &'a LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: &LaurentSeries) -> LaurentSeries {
        self.checked_mul(rhs)
            .expect("series truncation orders must agree")
    }
}

impl Mul for LaurentSeries {
    type Output = LaurentSeries;
    fn mul(self, rhs: LaurentSeries) -> LaurentSeries {
        &self * &rhs
    }
}

impl Neg for &LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        LaurentSeries {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
            order: self.order,
            truncated: self.truncated,
        }
    }
}

impl Neg for LaurentSeries {
    type Output = LaurentSeries;
    fn neg(self) -> LaurentSeries {
        -&self
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m.is_one() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{c}·{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kappa(order: u32) -> LaurentSeries {
        LaurentSeries::param(FormalParameter::InvKappa, order)
    }

    fn c_power(p: i8, order: u32) -> LaurentSeries {
        // (1/c)^{-p} = c^p
        LaurentSeries::term(
            GaussianRational::one(),
            Monomial::power(FormalParameter::InvC, -p).unwrap(),
            order,
        )
    }

    #[test]
    fn difference_of_squares() {
        let one = LaurentSeries::one(2);
        let a = &one + &kappa(2);
        let b = &one - &kappa(2);
        let prod = &a * &b;
        let expected = &one - &(&kappa(2) * &kappa(2));
        assert_eq!(prod, expected);
        assert!(!prod.is_truncated());
    }

    #[test]
    fn annihilator() {
        let theta = LaurentSeries::param(FormalParameter::ThetaKl, 4);
        assert!((&theta * &LaurentSeries::zero(4)).is_zero());
    }

    #[test]
    fn c_exponents_add() {
        let prod = &c_power(1, 4) * &c_power(-1, 4);
        assert_eq!(prod, LaurentSeries::one(4));
    }

    #[test]
    fn mismatched_orders_are_rejected() {
        let err = kappa(2).checked_mul(&kappa(3)).unwrap_err();
        assert!(matches!(err, SeriesError::OrderMismatch(2, 3)));
    }

    #[test]
    fn truncation_sets_flag() {
        let k2 = &kappa(1) * &kappa(1);
        assert!(k2.is_zero());
        assert!(k2.is_truncated());
    }

    #[test]
    fn negative_deformation_exponent_rejected() {
        assert!(Monomial::power(FormalParameter::InvKappa, -1).is_err());
        assert!(Monomial::power(FormalParameter::InvC, -1).is_ok());
    }

    #[test]
    fn limit_keeps_constant_part() {
        let s = &LaurentSeries::constant(GaussianRational::from_int(3), 4)
            + &LaurentSeries::param(FormalParameter::InvC, 4).scale(&GaussianRational::from_int(2));
        assert_eq!(
            s.limit_c_to_infinity().unwrap(),
            LaurentSeries::constant(GaussianRational::from_int(3), 4)
        );
    }

    #[test]
    fn limit_diverges_on_positive_c_power() {
        let s = &c_power(1, 4) * &LaurentSeries::param(FormalParameter::InvLambda, 4);
        let err = s.limit_c_to_infinity().unwrap_err();
        assert!(matches!(err, SeriesError::Divergence { c_power: 1, .. }));
    }

    #[test]
    fn limit_after_exponent_cancellation() {
        // (1/(2λc))·c → 1/(2λ)
        let inv_lambda_c = &LaurentSeries::param(FormalParameter::InvLambda, 4)
            * &LaurentSeries::param(FormalParameter::InvC, 4);
        let s = (&inv_lambda_c * &c_power(1, 4)).scale(&GaussianRational::ratio(1, 2));
        assert_eq!(
            s.limit_c_to_infinity().unwrap(),
            LaurentSeries::param(FormalParameter::InvLambda, 4).scale(&GaussianRational::ratio(1, 2))
        );
    }

    #[test]
    fn c_power_does_not_count_towards_degree() {
        let s = &c_power(-3, 1) * &kappa(1);
        assert!(!s.is_zero());
        assert_eq!(s.min_degree(), Some(1));
    }

    #[test]
    fn inverse_of_one_plus_x() {
        let s = &LaurentSeries::one(4) + &kappa(4);
        let inv = s.inverse().unwrap();
        assert_eq!(&s * &inv, LaurentSeries::one(4));
    }

    #[test]
    fn display_is_canonical() {
        let s = &kappa(4).scale(&GaussianRational::imag(1)) + &LaurentSeries::one(4);
        assert_eq!(s.to_string(), "1 + i·(1/κ)");
        assert_eq!(GaussianRational::new(
            BigRational::new(1.into(), 2.into()),
            BigRational::new((-3).into(), 4.into())
        ).to_string(), "(1/2-3/4i)");
    }

    fn arb_series() -> impl Strategy<Value = LaurentSeries> {
        let params = [
            FormalParameter::ThetaKl,
            FormalParameter::InvKappa,
            FormalParameter::InvC,
        ];
        proptest::collection::vec(
            (0usize..3, 0i8..3, -3i64..4, -2i64..3),
            0..4,
        )
        .prop_map(move |terms| {
            let mut s = LaurentSeries::zero(3);
            for (p, e, re, im) in terms {
                let e = if params[p] == FormalParameter::InvC { e - 1 } else { e };
                let mono = Monomial::power(params[p], e).unwrap();
                let c = GaussianRational::from_int(re) + GaussianRational::imag(im);
                s += &LaurentSeries::term(c, mono, 3);
            }
            s
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_series(), b in arb_series(), c in arb_series()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn truncation_is_idempotent(a in arb_series(), n in 0u32..4) {
            prop_assert_eq!(a.truncate(n).truncate(n), a.truncate(n));
        }

        #[test]
        fn limit_commutes_with_c_free_factor(a in arb_series(), k in 1i64..4) {
            let factor = &LaurentSeries::constant(GaussianRational::from_int(k), 3)
                + &LaurentSeries::param(FormalParameter::ThetaKl, 3);
            // a convergent limit stays convergent and factors through
            if let Ok(limit) = a.limit_c_to_infinity() {
                let lhs = (&a * &factor).limit_c_to_infinity().unwrap();
                prop_assert_eq!(lhs, &limit * &factor);
            }
        }
    }
}
