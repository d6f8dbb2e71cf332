//! Classical r-matrices, the Schouten bracket and the classical Yang–Baxter
//! equation.
//!
//! `[[r,s]]` is the weight-one alternation of
//! `[r₁₂,s₁₃] + [r₁₂,s₂₃] + [r₁₃,s₂₃]`, evaluated with Lie brackets on the
//! coinciding legs.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{AlgebraKind, GeneratorId};
use crate::error::Error;
use crate::hopf::{wedge_terms, CheckOutcome, Deformation, Exactness, Indices};
use crate::series::{GaussianRational, LaurentSeries};

/// A bivector `Σ c · X∧Y` with `X` before `Y` in the PBW order.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    kind: AlgebraKind,
    order: u32,
    terms: BTreeMap<(u8, u8), LaurentSeries>,
}

impl RMatrix {
    pub fn zero(kind: AlgebraKind, order: u32) -> Self {
        RMatrix {
            kind,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// Add `c · X∧Y`, reordering the pair with a sign if needed.
    pub fn add_wedge(&mut self, c: &LaurentSeries, x: GeneratorId, y: GeneratorId) -> Result<(), Error> {
        let spec = self.kind.spec();
        let resolve = |g: GeneratorId| {
            spec.resolve(g)
                .ok_or_else(|| Error::UnknownGenerator(format!("{g} in {:?}", self.kind)))
        };
        let (a, sa) = resolve(x)?;
        let (b, sb) = resolve(y)?;
        if a == b {
            return Ok(());
        }
        let mut sign = i64::from(sa * sb);
        let key = if a < b {
            (a, b)
        } else {
            sign = -sign;
            (b, a)
        };
        let term = c.scale(&GaussianRational::from_int(sign));
        let slot = self
            .terms
            .entry(key)
            .or_insert_with(|| LaurentSeries::zero(self.order));
        *slot += &term;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
        Ok(())
    }

    pub fn from_wedges(kind: AlgebraKind, order: u32, terms: &[(LaurentSeries, GeneratorId, GeneratorId)]) -> Result<Self, Error> {
        let mut r = Self::zero(kind, order);
        for (c, x, y) in terms {
            r.add_wedge(c, *x, *y)?;
        }
        Ok(r)
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// `(c, X, Y)` with `X` before `Y`.
    pub fn terms(&self) -> impl Iterator<Item = (&LaurentSeries, GeneratorId, GeneratorId)> {
        let spec = self.kind.spec();
        self.terms
            .iter()
            .map(move |(&(a, b), c)| (c, spec.generator(a), spec.generator(b)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale_series(&self, s: &LaurentSeries) -> Self {
        let mut out = Self::zero(self.kind, self.order);
        for (k, c) in &self.terms {
            let v = c * s;
            if !v.is_zero() {
                out.terms.insert(*k, v);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            let slot = out
                .terms
                .entry(*k)
                .or_insert_with(|| LaurentSeries::zero(self.order));
            *slot += c;
            if slot.is_zero() {
                out.terms.remove(k);
            }
        }
        out
    }

    /// `Σ c (X⊗Y − Y⊗X)` as position pairs.
    fn tensor_terms(&self) -> Vec<(u8, u8, LaurentSeries)> {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for (&(a, b), c) in &self.terms {
            out.push((a, b, c.clone()));
            out.push((b, a, -c));
        }
        out
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(c, x, y)| format!("{}{x}∧{y}", crate::algebra::fmt_coefficient(c)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The classical r-matrix of one of the eight deformations.
pub fn build_rmatrix(d: Deformation, idx: &Indices, order: u32) -> Result<RMatrix, Error> {
    let terms: Vec<_> = wedge_terms(d, idx, order)?
        .into_iter()
        .map(|t| (t.coefficient, t.left, t.right))
        .collect();
    RMatrix::from_wedges(AlgebraKind::Poincare, order, &terms)
}

/// The non-Abelian control `P₁∧M₁₂`.
pub fn control_rmatrix(order: u32) -> RMatrix {
    RMatrix::from_wedges(
        AlgebraKind::Poincare,
        order,
        &[(LaurentSeries::one(order), GeneratorId::P(1), GeneratorId::M(1, 2))],
    )
    .expect("control generators exist")
}

/// A fully antisymmetric element of `g ∧ g ∧ g`, keyed by strictly
/// increasing position triples.
#[derive(Clone, Debug, PartialEq)]
pub struct TrivectorElement {
    kind: AlgebraKind,
    order: u32,
    terms: BTreeMap<[u8; 3], LaurentSeries>,
}

impl TrivectorElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u8; 3], &LaurentSeries)> {
        self.terms.iter()
    }

    /// Component at an arbitrary triple, with the permutation sign.
    pub fn component(&self, a: u8, b: u8, c: u8) -> LaurentSeries {
        let mut t = [a, b, c];
        let sign = sort3(&mut t);
        match (sign, self.terms.get(&t)) {
            (0, _) | (_, None) => LaurentSeries::zero(self.order),
            (s, Some(v)) => v.scale(&GaussianRational::from_int(s)),
        }
    }

    /// Weight-one alternation of a rank-3 tensor of generators.
    pub fn alternate(kind: AlgebraKind, order: u32, t: &BTreeMap<[u8; 3], LaurentSeries>) -> Self {
        let mut terms: BTreeMap<[u8; 3], LaurentSeries> = BTreeMap::new();
        for (k, c) in t {
            let mut sorted = *k;
            let sign = sort3(&mut sorted);
            if sign == 0 {
                continue;
            }
            let slot = terms
                .entry(sorted)
                .or_insert_with(|| LaurentSeries::zero(order));
            *slot += &c.scale(&GaussianRational::from_int(sign));
        }
        terms.retain(|_, c| !c.is_zero());
        TrivectorElement { kind, order, terms }
    }
}

/// Sort a triple in place, returning the permutation sign (0 on repeats).
fn sort3(t: &mut [u8; 3]) -> i64 {
    let mut sign = 1;
    for (x, y) in [(0, 1), (1, 2), (0, 1)] {
        if t[x] > t[y] {
            t.swap(x, y);
            sign = -sign;
        }
    }
    if t[0] == t[1] || t[1] == t[2] {
        0
    } else {
        sign
    }
}

impl fmt::Display for TrivectorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let spec = self.kind.spec();
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(t, c)| {
                format!(
                    "{}{}∧{}∧{}",
                    crate::algebra::fmt_coefficient(c),
                    spec.generator(t[0]),
                    spec.generator(t[1]),
                    spec.generator(t[2])
                )
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn add_into(acc: &mut BTreeMap<[u8; 3], LaurentSeries>, key: [u8; 3], c: LaurentSeries, order: u32) {
    let slot = acc.entry(key).or_insert_with(|| LaurentSeries::zero(order));
    *slot += &c;
}

/// `[r₁₂,s₁₃] + [r₁₂,s₂₃] + [r₁₃,s₂₃]` before alternation.
pub fn cyb_tensor(r: &RMatrix, s: &RMatrix) -> BTreeMap<[u8; 3], LaurentSeries> {
    assert_eq!(r.kind, s.kind, "r-matrices over different algebras");
    let spec = r.kind.spec();
    let order = r.order;
    let mut acc = BTreeMap::new();
    for (a, b, cr) in r.tensor_terms() {
        for (x, y, cs) in s.tensor_terms() {
            let c = &cr * &cs;
            if c.is_zero() {
                continue;
            }
            for (h, e) in spec.bracket(a, x) {
                add_into(&mut acc, [*h, b, y], c.scale(e), order);
            }
            for (h, e) in spec.bracket(b, x) {
                add_into(&mut acc, [a, *h, y], c.scale(e), order);
            }
            for (h, e) in spec.bracket(b, y) {
                add_into(&mut acc, [a, x, *h], c.scale(e), order);
            }
        }
    }
    acc.retain(|_, c| !c.is_zero());
    acc
}

/// Schouten bracket `[[r,s]]`.
pub fn schouten_bracket(r: &RMatrix, s: &RMatrix) -> TrivectorElement {
    TrivectorElement::alternate(r.kind, r.order, &cyb_tensor(r, s))
}

/// `[[r,r]] = 0`.
pub fn check_cybe(r: &RMatrix) -> CheckOutcome {
    let t = schouten_bracket(r, r);
    CheckOutcome {
        residual: if t.is_zero() { String::new() } else { t.to_string() },
        exactness: Exactness::Exact,
    }
}

/// Pairs of distinct basis generators that commute.
pub fn commuting_pairs(kind: AlgebraKind) -> Vec<(u8, u8)> {
    let spec = kind.spec();
    let n = spec.dim() as u8;
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| spec.commute(a, b))
        .collect()
}

/// Whether every generator in the list commutes with every other.
pub fn mutually_commuting(kind: AlgebraKind, gens: &[u8]) -> bool {
    let spec = kind.spec();
    gens.iter()
        .enumerate()
        .all(|(j, &a)| gens[j + 1..].iter().all(|&b| spec.commute(a, b)))
}

impl RMatrix {
    /// `Σ c X∧Y` from basis positions.
    pub fn from_positions(kind: AlgebraKind, order: u32, terms: &[(GaussianRational, u8, u8)]) -> Self {
        let spec = kind.spec();
        let mut r = Self::zero(kind, order);
        for (c, a, b) in terms {
            r.add_wedge(
                &LaurentSeries::constant(c.clone(), order),
                spec.generator(*a),
                spec.generator(*b),
            )
            .expect("basis position");
        }
        r
    }
}

impl TrivectorElement {
    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            add_into(&mut terms, *k, c.clone(), self.order);
        }
        terms.retain(|_, c| !c.is_zero());
        TrivectorElement {
            kind: self.kind,
            order: self.order,
            terms,
        }
    }

    pub fn scale_series(&self, s: &LaurentSeries) -> Self {
        let mut terms: BTreeMap<[u8; 3], LaurentSeries> =
            self.terms.iter().map(|(k, c)| (*k, c * s)).collect();
        terms.retain(|_, c| !c.is_zero());
        TrivectorElement {
            kind: self.kind,
            order: self.order,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::FormalParameter;

    const N: u32 = 4;

    #[test]
    fn build_examples() {
        let r = build_rmatrix(Deformation::ThetaKl, &Indices::new(Some(1), Some(2), None), N).unwrap();
        assert_eq!(r.to_string(), "θ_kl·P1∧P2");
        let r = build_rmatrix(Deformation::Kappa, &Indices::new(Some(1), None, Some(3)), N).unwrap();
        // P1∧M30 = −P1∧M03
        let expected = RMatrix::from_wedges(
            AlgebraKind::Poincare,
            N,
            &[(
                LaurentSeries::param(FormalParameter::InvKappa, N).scale(&GaussianRational::ratio(-1, 2)),
                GeneratorId::P(1),
                GeneratorId::M(0, 3),
            )],
        )
        .unwrap();
        assert_eq!(r, expected);
        let r = build_rmatrix(Deformation::Theta0iKappaHat, &Indices::kli(1, 2, 3), N).unwrap();
        assert_eq!(r.terms().count(), 2);
    }

    #[test]
    fn cybe_examples() {
        let r = build_rmatrix(Deformation::ThetaKl, &Indices::new(Some(1), Some(2), None), N).unwrap();
        assert!(check_cybe(&r).passed());
        let r = build_rmatrix(Deformation::ThetaKlKappa, &Indices::kli(1, 2, 3), N).unwrap();
        assert!(check_cybe(&r).passed());
        let t = schouten_bracket(&control_rmatrix(N), &control_rmatrix(N));
        assert!(!t.is_zero());
        let spec = AlgebraKind::Poincare.spec();
        let p1 = spec.resolve(GeneratorId::P(1)).unwrap().0;
        let p2 = spec.resolve(GeneratorId::P(2)).unwrap().0;
        let m12 = spec.resolve(GeneratorId::M(1, 2)).unwrap().0;
        let keys: Vec<_> = t.terms().map(|(k, _)| *k).collect();
        assert_eq!(keys, vec![[p1, p2, m12]]);
    }

    #[test]
    fn sort3_signs() {
        let mut t = [3, 1, 2];
        assert_eq!(sort3(&mut t), 1);
        assert_eq!(t, [1, 2, 3]);
        let mut t = [2, 1, 3];
        assert_eq!(sort3(&mut t), -1);
        let mut t = [2, 2, 3];
        assert_eq!(sort3(&mut t), 0);
    }
}
