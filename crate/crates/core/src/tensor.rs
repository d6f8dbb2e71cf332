//! Tensor powers of the enveloping algebra.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::One;
use smallvec::{smallvec, SmallVec};

use crate::algebra::{fmt_coefficient, fmt_word, word_mul, AlgebraKind, UeaElement, Word};
use crate::series::{GaussianRational, LaurentSeries};

/// One PBW word per tensor leg.
pub type Legs = SmallVec<[Word; 3]>;

/// A finite sum `Σ c · w₁ ⊗ … ⊗ w_r` with PBW words in every leg.
#[derive(Clone, Debug)]
pub struct TensorElement {
    kind: AlgebraKind,
    order: u32,
    rank: usize,
    terms: BTreeMap<Legs, LaurentSeries>,
    truncated: bool,
}

impl PartialEq for TensorElement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank && self.terms == other.terms
    }
}

impl TensorElement {
    pub fn zero(kind: AlgebraKind, order: u32, rank: usize) -> Self {
        TensorElement {
            kind,
            order,
            rank,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    /// `1 ⊗ … ⊗ 1`.
    pub fn one(kind: AlgebraKind, order: u32, rank: usize) -> Self {
        let mut t = Self::zero(kind, order, rank);
        t.add_term((0..rank).map(|_| Word::new()).collect(), LaurentSeries::one(order));
        t
    }

    /// Rank-one tensor wrapping an algebra element.
    pub fn from_uea(a: &UeaElement) -> Self {
        let mut t = Self::zero(a.kind(), a.order(), 1);
        t.truncated = a.is_truncated();
        for (w, c) in a.terms() {
            t.add_term(smallvec![w.clone()], c.clone());
        }
        t
    }

    /// Pure tensor `a₁ ⊗ … ⊗ a_r`.
    pub fn pure(legs: &[&UeaElement]) -> Self {
        let mut acc = Self::from_uea(legs[0]);
        for a in &legs[1..] {
            acc = acc.tensor(&Self::from_uea(a));
        }
        acc
    }

    /// `a ∧ b = a⊗b − b⊗a`.
    pub fn wedge(a: &UeaElement, b: &UeaElement) -> Self {
        &Self::pure(&[a, b]) - &Self::pure(&[b, a])
    }

    /// `a ⊥ b = a⊗b + b⊗a`.
    pub fn perp(a: &UeaElement, b: &UeaElement) -> Self {
        &Self::pure(&[a, b]) + &Self::pure(&[b, a])
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated || self.terms.values().any(|c| c.is_truncated())
    }

    pub fn mark_truncated(&mut self) {
        self.truncated = true;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Legs, &LaurentSeries)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, legs: &[&[u8]]) -> LaurentSeries {
        let key: Legs = legs.iter().map(|w| Word::from_slice(w)).collect();
        self.terms
            .get(&key)
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(self.order))
    }

    pub(crate) fn add_term(&mut self, legs: Legs, c: LaurentSeries) {
        debug_assert_eq!(legs.len(), self.rank);
        self.truncated |= c.is_truncated();
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Concatenate legs: `self ⊗ other`.
    pub fn tensor(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind, "tensors over different algebras");
        let mut out = Self::zero(self.kind, self.order, self.rank + other.rank);
        out.truncated = self.truncated || other.truncated;
        for (l1, c1) in &self.terms {
            for (l2, c2) in &other.terms {
                let mut legs = l1.clone();
                legs.extend(l2.iter().cloned());
                out.add_term(legs, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coefficients(|s| s.scale(c))
    }

    pub fn scale_series(&self, c: &LaurentSeries) -> Self {
        self.map_coefficients(|s| s * c)
    }

    pub fn map_coefficients(&self, f: impl Fn(&LaurentSeries) -> LaurentSeries) -> Self {
        let mut out = Self::zero(self.kind, self.order, self.rank);
        out.truncated = self.truncated;
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c));
        }
        out
    }

    pub fn try_map_coefficients<E>(&self, f: impl Fn(&LaurentSeries) -> Result<LaurentSeries, E>) -> Result<Self, E> {
        let mut out = Self::zero(self.kind, self.order, self.rank);
        out.truncated = self.truncated;
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Leg-wise product.
    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind, "tensors over different algebras");
        assert_eq!(self.rank, other.rank, "tensor ranks differ");
        let mut out = Self::zero(self.kind, self.order, self.rank);
        out.truncated = self.truncated || other.truncated;
        for (l1, c1) in &self.terms {
            let d1 = c1.min_degree().unwrap_or(0);
            for (l2, c2) in &other.terms {
                if d1 + c2.min_degree().unwrap_or(0) > self.order {
                    out.truncated = true;
                    continue;
                }
                let c = c1 * c2;
                if c.is_zero() {
                    out.truncated |= c.is_truncated();
                    continue;
                }
                let mut partial: Vec<(Legs, GaussianRational)> =
                    vec![(Legs::new(), GaussianRational::one())];
                for (u, v) in l1.iter().zip(l2.iter()) {
                    let leg = word_mul(self.kind, u, v);
                    let mut next = Vec::with_capacity(partial.len() * leg.len());
                    for (done, e) in &partial {
                        for (w, f) in &leg {
                            let mut legs = done.clone();
                            legs.push(w.clone());
                            next.push((legs, e * f));
                        }
                    }
                    partial = next;
                }
                for (legs, e) in partial {
                    out.add_term(legs, c.scale(&e));
                }
            }
        }
        out
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.mul_ref(other) - &other.mul_ref(self)
    }

    /// Place this tensor's legs at `positions` of a rank-`rank` tensor, with
    /// units elsewhere (`F₁₂`, `F₂₃`, `F₁₃`, …).
    pub fn embed(&self, rank: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.rank);
        let mut out = Self::zero(self.kind, self.order, rank);
        out.truncated = self.truncated;
        for (l, c) in &self.terms {
            let mut legs: Legs = (0..rank).map(|_| Word::new()).collect();
            for (w, &p) in l.iter().zip(positions) {
                legs[p] = w.clone();
            }
            out.add_term(legs, c.clone());
        }
        out
    }

    /// Replace leg `leg` by the tensor `f(word)` of rank `r`, giving rank
    /// `self.rank + r − 1`; `(Δ ⊗ 1) F` is `F.expand_leg(0, Δ)`.
    pub fn expand_leg(&self, leg: usize, f: &mut dyn FnMut(&Word) -> TensorElement) -> Self {
        let mut cache: BTreeMap<Word, TensorElement> = BTreeMap::new();
        let mut out: Option<TensorElement> = None;
        for (l, c) in &self.terms {
            let image = cache.entry(l[leg].clone()).or_insert_with(|| f(&l[leg]));
            let target = out.get_or_insert_with(|| {
                let mut z = Self::zero(self.kind, self.order, self.rank + image.rank - 1);
                z.truncated = self.truncated;
                z
            });
            target.truncated |= image.truncated;
            for (il, ic) in &image.terms {
                let mut legs: Legs = l[..leg].iter().cloned().collect();
                legs.extend(il.iter().cloned());
                legs.extend(l[leg + 1..].iter().cloned());
                target.add_term(legs, c * ic);
            }
        }
        out.unwrap_or_else(|| {
            let r = f(&Word::new()).rank;
            Self::zero(self.kind, self.order, self.rank + r - 1)
        })
    }

    /// Apply a linear map to one leg, keeping the rank.
    pub fn map_leg(&self, leg: usize, f: &dyn Fn(&Word) -> UeaElement) -> Self {
        self.expand_leg(leg, &mut |w| TensorElement::from_uea(&f(w)))
    }

    /// Apply the counit to one leg (rank drops by one).
    pub fn counit_leg(&self, leg: usize) -> Self {
        let mut out = Self::zero(self.kind, self.order, self.rank - 1);
        out.truncated = self.truncated;
        for (l, c) in &self.terms {
            if l[leg].is_empty() {
                let mut legs = l.clone();
                legs.remove(leg);
                out.add_term(legs, c.clone());
            }
        }
        out
    }

    /// Multiply all legs together (`m` on rank 2, iterated for higher rank).
    pub fn multiply_legs(&self) -> UeaElement {
        let mut out = UeaElement::zero(self.kind, self.order);
        for (l, c) in &self.terms {
            let mut prod = UeaElement::from_word(self.kind, l[0].clone(), c.clone());
            for w in &l[1..] {
                prod = prod.mul_ref(&UeaElement::from_word(
                    self.kind,
                    w.clone(),
                    LaurentSeries::one(self.order),
                ));
            }
            out = &out + &prod;
        }
        out
    }

    /// Permute legs: leg `j` of the result is leg `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.rank);
        let mut out = Self::zero(self.kind, self.order, self.rank);
        out.truncated = self.truncated;
        for (l, c) in &self.terms {
            out.add_term(perm.iter().map(|&p| l[p].clone()).collect(), c.clone());
        }
        out
    }

    /// The rank-one contents as an algebra element.
    pub fn to_uea(&self) -> UeaElement {
        assert_eq!(self.rank, 1);
        let mut out = UeaElement::zero(self.kind, self.order);
        for (l, c) in &self.terms {
            out.add_term(l[0].clone(), c.clone());
        }
        out
    }

    /// `Σₙ selfⁿ/n!` until a power vanishes. The flag reports whether the
    /// vanishing was genuine rather than an artifact of truncation.
    pub fn exp(&self) -> (Self, bool) {
        let mut sum = Self::one(self.kind, self.order, self.rank);
        let mut power = sum.clone();
        let mut n: i64 = 0;
        loop {
            n += 1;
            power = power.mul_ref(self).scale(&GaussianRational::ratio(1, n));
            if power.is_zero() {
                let exact = !power.is_truncated();
                sum.truncated |= !exact;
                return (sum, exact);
            }
            sum = &sum + &power;
        }
    }

    /// Terms in canonical order, for reports.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl<'a> Add<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        assert_eq!(self.rank, rhs.rank, "tensor ranks differ");
        assert_eq!(self.kind, rhs.kind, "tensors over different algebras");
        let mut out = self.clone();
        out.truncated |= rhs.truncated;
        for (l, c) in &rhs.terms {
            out.add_term(l.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        self + &(-rhs)
    }
}

impl Neg for &TensorElement {
    type Output = TensorElement;
    fn neg(self) -> TensorElement {
        self.map_coefficients(|c| -c)
    }
}

impl<'a> Mul<&'a TensorElement> for &'a TensorElement {
    type Output = TensorElement;
    fn mul(self, rhs: &TensorElement) -> TensorElement {
        self.mul_ref(rhs)
    }
}

impl TensorElement {
    /// One rendered string per term.
    pub fn term_strings(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(l, c)| {
                let legs: Vec<String> = l.iter().map(|w| fmt_word(self.kind, w)).collect();
                format!("{}({})", fmt_coefficient(c), legs.join(" ⊗ "))
            })
            .collect()
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        f.write_str(&self.term_strings().join(" + "))
    }
}
