//! Coordinate representation of the Poincaré algebra and twisted star
//! products on polynomials in `x₀..x₃`.
//!
//! `P_μ ▷ f = i∂_μ f` and `M_μν ▷ f = i(x_μ∂_ν − x_ν∂_μ) f` with
//! `∂_ν x_μ = η_μν`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;

use crate::algebra::{eta, AlgebraKind, GeneratorId, UeaElement};
use crate::error::Error;
use crate::hopf::{build_twist, Deformation, Indices, TwistFactor};
use crate::series::{FormalParameter, GaussianRational, LaurentSeries};

/// Default cap on the number of exponential orders a star product may use.
pub const DEFAULT_STAR_CAP: u32 = 8;

/// Exponents of `x₀, x₁, x₂, x₃`.
pub type CoordMonomial = [u8; 4];

/// A commutative polynomial in the coordinates.
#[derive(Clone, Debug)]
pub struct PolyFunction {
    order: u32,
    terms: BTreeMap<CoordMonomial, LaurentSeries>,
    truncated: bool,
}

impl PartialEq for PolyFunction {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl PolyFunction {
    pub fn zero(order: u32) -> Self {
        PolyFunction {
            order,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn constant(c: LaurentSeries) -> Self {
        Self::monomial([0; 4], c)
    }

    pub fn one(order: u32) -> Self {
        Self::constant(LaurentSeries::one(order))
    }

    /// The coordinate `x_μ`.
    pub fn coordinate(mu: u8, order: u32) -> Self {
        let mut m = [0; 4];
        m[mu as usize] = 1;
        Self::monomial(m, LaurentSeries::one(order))
    }

    pub fn monomial(m: CoordMonomial, c: LaurentSeries) -> Self {
        let mut f = Self::zero(c.order());
        f.add_term(m, c);
        f
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether some contribution was lost to the series truncation.
    pub fn is_truncated(&self) -> bool {
        self.truncated || self.terms.values().any(LaurentSeries::is_truncated)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoordMonomial, &LaurentSeries)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &CoordMonomial) -> LaurentSeries {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(self.order))
    }

    /// Coordinate degree of the highest term.
    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().map(|&e| u32::from(e)).sum())
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: CoordMonomial, c: LaurentSeries) {
        self.truncated |= c.is_truncated();
        if c.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry(m)
            .or_insert_with(|| LaurentSeries::zero(c.order()));
        *slot += &c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale_series(&self, c: &LaurentSeries) -> Self {
        self.map_coefficients(|v| v * c)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coefficients(|v| v.scale(c))
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentSeries) -> LaurentSeries) -> Self {
        let mut out = Self::zero(self.order);
        out.truncated = self.truncated;
        for (m, c) in &self.terms {
            out.add_term(*m, f(c));
        }
        out
    }

    /// Part of degree zero in the deformation parameters.
    pub fn undeformed_part(&self) -> Self {
        self.map_coefficients(|c| LaurentSeries::constant(c.constant_term(), c.order()))
    }

    /// `∂_μ f` with `∂_μ x_μ = η_μμ`.
    pub fn derivative(&self, mu: u8) -> Self {
        let mut out = Self::zero(self.order);
        let sign = GaussianRational::from_int(eta(mu, mu));
        for (m, c) in &self.terms {
            let e = m[mu as usize];
            if e == 0 {
                continue;
            }
            let mut lowered = *m;
            lowered[mu as usize] -= 1;
            out.add_term(lowered, c.scale(&(&sign * &GaussianRational::from_int(i64::from(e)))));
        }
        out
    }

    /// `x_μ f`.
    pub fn times_coordinate(&self, mu: u8) -> Self {
        let mut out = Self::zero(self.order);
        for (m, c) in &self.terms {
            let mut raised = *m;
            raised[mu as usize] += 1;
            out.add_term(raised, c.clone());
        }
        out
    }

    /// Pointwise product.
    pub fn mul_ref(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.order);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let m = [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]];
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    /// Set a deformation parameter to zero.
    pub fn set_zero(&self, p: FormalParameter) -> Self {
        self.map_coefficients(|c| c.set_zero(p))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(self.to_string())
    }
}

impl<'a> Add<&'a PolyFunction> for &'a PolyFunction {
    type Output = PolyFunction;
    fn add(self, rhs: &PolyFunction) -> PolyFunction {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a PolyFunction> for &'a PolyFunction {
    type Output = PolyFunction;
    fn sub(self, rhs: &PolyFunction) -> PolyFunction {
        self + &(-rhs)
    }
}

impl Neg for &PolyFunction {
    type Output = PolyFunction;
    fn neg(self) -> PolyFunction {
        self.map_coefficients(|c| -c)
    }
}

impl<'a> Mul<&'a PolyFunction> for &'a PolyFunction {
    type Output = PolyFunction;
    fn mul(self, rhs: &PolyFunction) -> PolyFunction {
        self.mul_ref(rhs)
    }
}

impl fmt::Display for PolyFunction {
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
            let mono: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(mu, &e)| if e == 1 { format!("x{mu}") } else { format!("x{mu}^{e}") })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{}{}", crate::algebra::fmt_coefficient(c), mono.join("·"))?;
            }
        }
        Ok(())
    }
}

impl Serialize for PolyFunction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Action of a single Poincaré generator.
pub fn act_generator(g: GeneratorId, f: &PolyFunction) -> PolyFunction {
    let i = GaussianRational::i();
    match g {
        GeneratorId::P(mu) => f.derivative(mu).scale(&i),
        GeneratorId::M(mu, nu) => {
            let a = f.derivative(nu).times_coordinate(mu);
            let b = f.derivative(mu).times_coordinate(nu);
            (&a - &b).scale(&i)
        }
        _ => panic!("{g} has no coordinate action"),
    }
}

/// Left action of an enveloping-algebra element: `(ab) ▷ f = a ▷ (b ▷ f)`.
pub fn act(a: &UeaElement, f: &PolyFunction) -> PolyFunction {
    let spec = a.kind().spec();
    assert!(
        matches!(a.kind(), AlgebraKind::Poincare | AlgebraKind::PoincareContractionBasis),
        "coordinate action is defined for the Poincaré algebra"
    );
    let mut out = PolyFunction::zero(f.order());
    for (w, c) in a.terms() {
        let mut g = f.clone();
        for &letter in w.iter().rev() {
            g = act_generator(spec.generator(letter), &g);
            if g.is_zero() {
                break;
            }
        }
        out = &out + &g.scale_series(c);
    }
    out
}

/// `Σ c · f ⊗ g` over pairs of coordinate monomials.
type PolyPair = BTreeMap<(CoordMonomial, CoordMonomial), LaurentSeries>;

fn act_pair(kind: AlgebraKind, exponent: &crate::tensor::TensorElement, t: &PolyPair, order: u32) -> (PolyPair, bool) {
    let spec = kind.spec();
    let mut out: PolyPair = BTreeMap::new();
    let mut truncated = false;
    let word_act = |w: &[u8], m: &CoordMonomial| {
        let mut g = PolyFunction::monomial(*m, LaurentSeries::one(order));
        for &letter in w.iter().rev() {
            g = act_generator(spec.generator(letter), &g);
        }
        g
    };
    for ((ma, mb), c) in t {
        for (legs, e) in exponent.terms() {
            let coef = c * e;
            truncated |= coef.is_truncated();
            if coef.is_zero() {
                continue;
            }
            let fa = word_act(&legs[0], ma);
            if fa.is_zero() {
                continue;
            }
            let fb = word_act(&legs[1], mb);
            for (na, ca) in fa.terms() {
                for (nb, cb) in fb.terms() {
                    let v = &(&coef * ca) * cb;
                    let slot = out
                        .entry((*na, *nb))
                        .or_insert_with(|| LaurentSeries::zero(order));
                    *slot += &v;
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    (out, truncated)
}

/// `f ⋆ g = ω(F⁻¹ ▷ f⊗g)`, expanding `exp(−A)` until an order acts as zero.
/// A result touched by the series truncation reports `is_truncated()`.
pub fn star_product_capped(f: &PolyFunction, g: &PolyFunction, twist: &TwistFactor, cap: u32) -> Result<PolyFunction, Error> {
    let order = f.order();
    let kind = twist.kind();
    let minus_a = -twist.exponent();
    let mut current: PolyPair = BTreeMap::new();
    for (ma, ca) in f.terms() {
        for (mb, cb) in g.terms() {
            let slot = current
                .entry((*ma, *mb))
                .or_insert_with(|| LaurentSeries::zero(order));
            *slot += &(ca * cb);
        }
    }
    let mut total = current.clone();
    let mut truncated = f.is_truncated() || g.is_truncated();
    let mut n: i64 = 0;
    while !current.is_empty() {
        n += 1;
        if n > i64::from(cap) {
            return Err(Error::NonTerminating(cap));
        }
        let (next, lost) = act_pair(kind, &minus_a, &current, order);
        truncated |= lost;
        let inv = GaussianRational::ratio(1, n);
        current = next.into_iter().map(|(k, c)| (k, c.scale(&inv))).collect();
        for (k, c) in &current {
            let slot = total.entry(*k).or_insert_with(|| LaurentSeries::zero(order));
            *slot += c;
        }
    }
    let mut out = PolyFunction::zero(order);
    out.truncated = truncated;
    for ((ma, mb), c) in total {
        let m = [ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2], ma[3] + mb[3]];
        out.add_term(m, c);
    }
    Ok(out)
}

pub fn star_product(f: &PolyFunction, g: &PolyFunction, twist: &TwistFactor) -> Result<PolyFunction, Error> {
    star_product_capped(f, g, twist, DEFAULT_STAR_CAP)
}

/// `[f, g]_⋆ = f⋆g − g⋆f`.
pub fn star_bracket(f: &PolyFunction, g: &PolyFunction, twist: &TwistFactor) -> Result<PolyFunction, Error> {
    Ok(&star_product(f, g, twist)? - &star_product(g, f, twist)?)
}

/// `[x_μ, x_ν]_⋆`.
pub fn star_commutator(mu: u8, nu: u8, twist: &TwistFactor) -> Result<PolyFunction, Error> {
    let order = twist.order();
    star_bracket(
        &PolyFunction::coordinate(mu, order),
        &PolyFunction::coordinate(nu, order),
        twist,
    )
}

/// A 4×4 table of coordinate commutators.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutatorTable {
    pub entries: [[PolyFunction; 4]; 4],
}

impl CommutatorTable {
    pub fn from_fn(mut f: impl FnMut(u8, u8) -> PolyFunction) -> Self {
        CommutatorTable {
            entries: std::array::from_fn(|mu| std::array::from_fn(|nu| f(mu as u8, nu as u8))),
        }
    }

    pub fn try_from_fn(mut f: impl FnMut(u8, u8) -> Result<PolyFunction, Error>) -> Result<Self, Error> {
        let mut err = None;
        let t = Self::from_fn(|mu, nu| match f(mu, nu) {
            Ok(p) => p,
            Err(e) => {
                err.get_or_insert(e);
                PolyFunction::zero(0)
            }
        });
        match err {
            Some(e) => Err(e),
            None => Ok(t),
        }
    }

    pub fn get(&self, mu: u8, nu: u8) -> &PolyFunction {
        &self.entries[mu as usize][nu as usize]
    }

    pub fn set_zero(&self, p: FormalParameter) -> Self {
        Self::from_fn(|mu, nu| self.get(mu, nu).set_zero(p))
    }

    /// Entries `(μ,ν)` where the two tables differ, with both values.
    pub fn diff(&self, other: &Self) -> Vec<(u8, u8, String, String)> {
        let mut out = Vec::new();
        for mu in 0..4 {
            for nu in 0..4 {
                let (a, b) = (self.get(mu, nu), other.get(mu, nu));
                if a != b {
                    out.push((mu, nu, a.to_string(), b.to_string()));
                }
            }
        }
        out
    }

    /// `[x_μ,x_ν] = −[x_ν,x_μ]` for all pairs.
    pub fn is_antisymmetric(&self) -> bool {
        (0..4).all(|mu| (0..4).all(|nu| *self.get(mu, nu) == -self.get(nu, mu)))
    }

    /// Display-math rendering of the independent entries.
    pub fn display_math(&self) -> String {
        let mut lines = Vec::new();
        for mu in 0..4u8 {
            for nu in mu + 1..4 {
                lines.push(format!("[x_{mu}, x_{nu}] = {}", self.get(mu, nu)));
            }
        }
        lines.join("\n")
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for mu in 0..4u8 {
            for nu in 0..4u8 {
                map.insert(format!("[x{mu},x{nu}]"), self.get(mu, nu).to_json());
            }
        }
        serde_json::Value::Object(map)
    }
}

/// All sixteen `[x_μ,x_ν]_⋆` for a twist.
pub fn commutator_table(twist: &TwistFactor) -> Result<CommutatorTable, Error> {
    CommutatorTable::try_from_fn(|mu, nu| star_commutator(mu, nu, twist))
}

/// Derived commutator table of a deformation.
pub fn derive_table(d: Deformation, idx: &Indices, order: u32) -> Result<CommutatorTable, Error> {
    commutator_table(&build_twist(d, idx, order)?)
}

/// `[[a,b]_⋆, c]_⋆ + cyclic`.
pub fn star_jacobiator(a: &PolyFunction, b: &PolyFunction, c: &PolyFunction, twist: &TwistFactor) -> Result<PolyFunction, Error> {
    let t1 = star_bracket(&star_bracket(a, b, twist)?, c, twist)?;
    let t2 = star_bracket(&star_bracket(b, c, twist)?, a, twist)?;
    let t3 = star_bracket(&star_bracket(c, a, twist)?, b, twist)?;
    Ok(&(&t1 + &t2) + &t3)
}

/// `act([a,b], f) − (a ▷ b ▷ f − b ▷ a ▷ f)`.
pub fn representation_defect(a: GeneratorId, b: GeneratorId, f: &PolyFunction) -> PolyFunction {
    let order = f.order();
    let kind = AlgebraKind::Poincare;
    let ga = UeaElement::generator(kind, a, order).expect("Poincaré generator");
    let gb = UeaElement::generator(kind, b, order).expect("Poincaré generator");
    let lhs = act(&ga.commutator(&gb), f);
    let rhs = &act_generator(a, &act_generator(b, f)) - &act_generator(b, &act_generator(a, f));
    &lhs - &rhs
}

/// All coordinate monomials of total degree at most `max_degree`.
pub fn monomials_up_to(max_degree: u8) -> Vec<CoordMonomial> {
    let mut out = Vec::new();
    for a in 0..=max_degree {
        for b in 0..=max_degree - a {
            for c in 0..=max_degree - a - b {
                for d in 0..=max_degree - a - b - c {
                    out.push([a, b, c, d]);
                }
            }
        }
    }
    out
}

impl UeaElement {
    /// `self ▷ f`.
    pub fn act_on(&self, f: &PolyFunction) -> PolyFunction {
        act(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 4;

    fn x(mu: u8) -> PolyFunction {
        PolyFunction::coordinate(mu, N)
    }

    fn i_times(p: FormalParameter, num: i64, den: i64) -> LaurentSeries {
        LaurentSeries::param(p, N).scale(&(&GaussianRational::i() * &GaussianRational::ratio(num, den)))
    }

    #[test]
    fn action_examples() {
        let i = GaussianRational::i();
        assert_eq!(act_generator(GeneratorId::P(1), &x(1)), PolyFunction::constant(LaurentSeries::constant(i.clone(), N)));
        assert_eq!(act_generator(GeneratorId::M(3, 0), &x(0)), x(3).scale(&-&i));
        assert!(act_generator(GeneratorId::M(1, 2), &PolyFunction::one(N)).is_zero());
    }

    #[test]
    fn star_examples() {
        let f = build_twist(Deformation::ThetaKl, &Indices::new(Some(1), Some(2), None), N).unwrap();
        let p = star_product(&x(1), &x(2), &f).unwrap();
        let expected = &x(1).mul_ref(&x(2)) + &PolyFunction::constant(i_times(FormalParameter::ThetaKl, 1, 1));
        assert_eq!(p, expected);
        assert_eq!(star_product(&x(1), &PolyFunction::one(N), &f).unwrap(), x(1));

        let k = build_twist(Deformation::Kappa, &Indices::new(Some(1), None, Some(3)), N).unwrap();
        let p = star_product(&x(0), &x(1), &k).unwrap();
        let expected = &x(0).mul_ref(&x(1)) + &x(3).scale_series(&i_times(FormalParameter::InvKappa, 1, 2));
        assert_eq!(p, expected);
    }

    #[test]
    fn commutator_examples() {
        let f = build_twist(Deformation::ThetaKlKappa, &Indices::kli(1, 2, 3), N).unwrap();
        assert_eq!(
            star_commutator(1, 2, &f).unwrap(),
            PolyFunction::constant(i_times(FormalParameter::ThetaKl, 2, 1))
        );
        assert_eq!(
            star_commutator(3, 1, &f).unwrap(),
            x(0).scale_series(&i_times(FormalParameter::InvKappa, 1, 1))
        );
        let f = build_twist(Deformation::Theta0iKappaHat, &Indices::kli(1, 2, 3), N).unwrap();
        for a in 1..4 {
            for b in 1..4 {
                assert!(star_commutator(a, b, &f).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn cap_is_enforced() {
        let k = build_twist(Deformation::Kappa, &Indices::new(Some(1), None, Some(3)), N).unwrap();
        let f = x(0).mul_ref(&x(1)).mul_ref(&x(1));
        assert!(matches!(star_product_capped(&f, &f, &k, 1), Err(Error::NonTerminating(1))));
    }

    #[test]
    fn representation_is_homomorphism() {
        let spec = AlgebraKind::Poincare.spec();
        for m in monomials_up_to(2) {
            let f = PolyFunction::monomial(m, LaurentSeries::one(N));
            for &a in spec.generators() {
                for &b in spec.generators() {
                    assert!(representation_defect(a, b, &f).is_zero(), "{a} {b} {m:?}");
                }
            }
        }
    }
}
