//! Poincaré and Galilei Lie algebras by structure constants, and their
//! universal enveloping algebras in PBW normal form.
//!
//! Generators of an algebra are addressed by their position in the PBW order
//! of a [`LieAlgebraSpec`]; a PBW word is a non-decreasing sequence of
//! positions. Momenta come first in every basis (`P₀ < … < P₃ < M₀₁ < … < M₂₃`
//! for Poincaré, `Π < K < V` for Galilei).

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::rc::Rc;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::Error;
use crate::series::{GaussianRational, LaurentSeries};

/// Minkowski metric `η = diag(−1, +1, +1, +1)`.
pub const METRIC: [i64; 4] = [-1, 1, 1, 1];

pub fn eta(mu: u8, nu: u8) -> i64 {
    if mu == nu {
        METRIC[mu as usize]
    } else {
        0
    }
}

pub fn delta(a: u8, b: u8) -> i64 {
    i64::from(a == b)
}

/// A named generator. Two-index generators may be written with either index
/// order; [`LieAlgebraSpec::resolve`] maps them onto the stored basis element
/// with a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GeneratorId {
    /// Four-momentum `P_μ`.
    P(u8),
    /// Lorentz generator `M_μν`.
    M(u8, u8),
    /// Galilei momentum `Π_μ` (`Π₀` is the energy).
    Pi(u8),
    /// Galilei rotation `K_ab`.
    K(u8, u8),
    /// Galilei boost `V_a`.
    V(u8),
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorId::P(m) => write!(f, "P{m}"),
            GeneratorId::M(a, b) => write!(f, "M{a}{b}"),
            GeneratorId::Pi(m) => write!(f, "Π{m}"),
            GeneratorId::K(a, b) => write!(f, "K{a}{b}"),
            GeneratorId::V(a) => write!(f, "V{a}"),
        }
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    /// Parses `P1`, `M30`, `Pi0`/`Π0`, `K12`, `V3`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::UnknownGenerator(s.to_string());
        let (head, rest) = if let Some(r) = s.strip_prefix("Pi") {
            ("Pi", r)
        } else if let Some(r) = s.strip_prefix('Π') {
            ("Pi", r)
        } else {
            let mut chars = s.chars();
            let h = chars.next().ok_or_else(bad)?;
            (
                match h {
                    'P' => "P",
                    'M' => "M",
                    'K' => "K",
                    'V' => "V",
                    _ => return Err(bad()),
                },
                chars.as_str(),
            )
        };
        let digits: Vec<u8> = rest
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        match (head, digits.as_slice()) {
            ("P", [m]) if *m < 4 => Ok(GeneratorId::P(*m)),
            ("M", [a, b]) if *a < 4 && *b < 4 && a != b => Ok(GeneratorId::M(*a, *b)),
            ("Pi", [m]) if *m < 4 => Ok(GeneratorId::Pi(*m)),
            ("K", [a, b]) if (1..4).contains(a) && (1..4).contains(b) && a != b => {
                Ok(GeneratorId::K(*a, *b))
            }
            ("V", [a]) if (1..4).contains(a) => Ok(GeneratorId::V(*a)),
            _ => Err(bad()),
        }
    }
}

/// Which presentation of which algebra an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraKind {
    Poincare,
    Galilei,
    /// The Poincaré algebra in the basis `P₀..P₃, M₁₂, M₁₃, M₂₃, M₁₀, M₂₀, M₃₀`,
    /// whose PBW order matches the Galilei one letter for letter.
    PoincareContractionBasis,
}

impl AlgebraKind {
    pub fn spec(self) -> &'static LieAlgebraSpec {
        static POINCARE: OnceLock<LieAlgebraSpec> = OnceLock::new();
        static GALILEI: OnceLock<LieAlgebraSpec> = OnceLock::new();
        static CONTRACTION: OnceLock<LieAlgebraSpec> = OnceLock::new();
        match self {
            AlgebraKind::Poincare => POINCARE.get_or_init(build_poincare),
            AlgebraKind::Galilei => GALILEI.get_or_init(build_galilei),
            AlgebraKind::PoincareContractionBasis => {
                CONTRACTION.get_or_init(build_poincare_contraction_basis)
            }
        }
    }
}

/// Linear combination of basis generators with exact coefficients.
pub type Combination = Vec<(u8, GaussianRational)>;

/// A 10-dimensional Lie algebra given by its structure constants.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraSpec {
    kind: AlgebraKind,
    generators: Vec<GeneratorId>,
    table: Vec<Vec<Combination>>,
}

impl LieAlgebraSpec {
    /// Assemble a spec from a raw bracket on named generators.
    pub fn from_bracket(
        kind: AlgebraKind,
        generators: Vec<GeneratorId>,
        bracket: impl Fn(GeneratorId, GeneratorId) -> Vec<(GeneratorId, GaussianRational)>,
    ) -> Self {
        let mut spec = LieAlgebraSpec {
            kind,
            generators,
            table: Vec::new(),
        };
        let n = spec.generators.len();
        let mut table = vec![vec![Vec::new(); n]; n];
        for (a, row) in table.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                let raw = bracket(spec.generators[a], spec.generators[b]);
                *slot = spec.combine(raw);
            }
        }
        spec.table = table;
        spec
    }

    fn combine(&self, raw: Vec<(GeneratorId, GaussianRational)>) -> Combination {
        let mut acc: BTreeMap<u8, GaussianRational> = BTreeMap::new();
        for (g, c) in raw {
            if let Some((pos, sign)) = self.resolve(g) {
                let c = if sign < 0 { -c } else { c };
                *acc.entry(pos).or_insert_with(GaussianRational::zero) += &c;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn generator(&self, pos: u8) -> GeneratorId {
        self.generators[pos as usize]
    }

    /// Position and sign of a named generator; `None` if it is not in this
    /// algebra or vanishes identically (`M_μμ`).
    pub fn resolve(&self, g: GeneratorId) -> Option<(u8, i8)> {
        if let Some(p) = self.generators.iter().position(|&h| h == g) {
            return Some((p as u8, 1));
        }
        let flipped = match g {
            GeneratorId::M(a, b) if a != b => GeneratorId::M(b, a),
            GeneratorId::K(a, b) if a != b => GeneratorId::K(b, a),
            _ => return None,
        };
        self.generators
            .iter()
            .position(|&h| h == flipped)
            .map(|p| (p as u8, -1))
    }

    /// Structure constants `[g_a, g_b]`.
    pub fn bracket(&self, a: u8, b: u8) -> &[(u8, GaussianRational)] {
        &self.table[a as usize][b as usize]
    }

    /// Bracket of two linear combinations.
    pub fn bracket_combinations(&self, x: &Combination, y: &Combination) -> Combination {
        let mut acc: BTreeMap<u8, GaussianRational> = BTreeMap::new();
        for (a, ca) in x {
            for (b, cb) in y {
                let cab = ca * cb;
                for (h, ch) in self.bracket(*a, *b) {
                    *acc.entry(*h).or_insert_with(GaussianRational::zero) += &(&cab * ch);
                }
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]` for basis generators.
    pub fn jacobiator(&self, x: u8, y: u8, z: u8) -> Combination {
        let unit = |g: u8| vec![(g, GaussianRational::one())];
        let mut acc: BTreeMap<u8, GaussianRational> = BTreeMap::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let inner = self.bracket(b, c).to_vec();
            for (h, ch) in self.bracket_combinations(&unit(a), &inner) {
                *acc.entry(h).or_insert_with(GaussianRational::zero) += &ch;
            }
        }
        acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }

    /// Whether two basis generators commute.
    pub fn commute(&self, a: u8, b: u8) -> bool {
        self.bracket(a, b).is_empty()
    }
}

fn imag(n: i64) -> GaussianRational {
    GaussianRational::imag(n)
}

/// The Lorentz/Poincaré bracket on arbitrary index pairs.
pub fn poincare_bracket(a: GeneratorId, b: GeneratorId) -> Vec<(GeneratorId, GaussianRational)> {
    use GeneratorId::{M, P};
    let mut out = Vec::new();
    let mut push = |g: GeneratorId, c: i64| {
        if c != 0 {
            out.push((g, imag(c)));
        }
    };
    match (a, b) {
        (P(_), P(_)) => {}
        (M(mu, nu), P(rho)) => {
            push(P(mu), eta(nu, rho));
            push(P(nu), -eta(mu, rho));
        }
        (P(_), M(_, _)) => {
            return poincare_bracket(b, a)
                .into_iter()
                .map(|(g, c)| (g, -c))
                .collect()
        }
        (M(mu, nu), M(rho, sigma)) => {
            let mut m = |x: u8, y: u8, c: i64| {
                if x != y {
                    push(M(x, y), c);
                }
            };
            m(nu, rho, eta(mu, sigma));
            m(mu, rho, -eta(nu, sigma));
            m(mu, sigma, eta(nu, rho));
            m(nu, sigma, -eta(mu, rho));
        }
        _ => {}
    }
    out
}

/// The Galilei bracket on arbitrary index pairs.
pub fn galilei_bracket(a: GeneratorId, b: GeneratorId) -> Vec<(GeneratorId, GaussianRational)> {
    use GeneratorId::{Pi, K, V};
    let flip = |v: Vec<(GeneratorId, GaussianRational)>| -> Vec<(GeneratorId, GaussianRational)> {
        v.into_iter().map(|(g, c)| (g, -c)).collect()
    };
    let mut out = Vec::new();
    let mut push = |g: GeneratorId, c: i64| {
        if c != 0 {
            out.push((g, imag(c)));
        }
    };
    match (a, b) {
        (K(a, b), K(c, d)) => {
            let mut k = |x: u8, y: u8, coef: i64| {
                if x != y {
                    push(K(x, y), coef);
                }
            };
            k(b, c, delta(a, d));
            k(a, c, -delta(b, d));
            k(a, d, delta(b, c));
            k(b, d, -delta(a, c));
        }
        (K(a, b), V(c)) => {
            push(V(a), delta(b, c));
            push(V(b), -delta(a, c));
        }
        (K(a, b), Pi(c)) if c > 0 => {
            push(Pi(a), delta(b, c));
            push(Pi(b), -delta(a, c));
        }
        (V(a), Pi(0)) => push(Pi(a), -1),
        (K(_, _), Pi(0)) | (V(_), V(_)) | (V(_), Pi(_)) | (Pi(_), Pi(_)) => {}
        (V(_), K(_, _)) | (Pi(_), K(_, _)) | (Pi(_), V(_)) => return flip(galilei_bracket(b, a)),
        _ => {}
    }
    out
}

/// The ten-generator Poincaré algebra under `η = diag(−,+,+,+)`.
pub fn build_poincare() -> LieAlgebraSpec {
    use GeneratorId::{M, P};
    let gens = vec![
        P(0),
        P(1),
        P(2),
        P(3),
        M(0, 1),
        M(0, 2),
        M(0, 3),
        M(1, 2),
        M(1, 3),
        M(2, 3),
    ];
    LieAlgebraSpec::from_bracket(AlgebraKind::Poincare, gens, poincare_bracket)
}

fn build_poincare_contraction_basis() -> LieAlgebraSpec {
    use GeneratorId::{M, P};
    let gens = vec![
        P(0),
        P(1),
        P(2),
        P(3),
        M(1, 2),
        M(1, 3),
        M(2, 3),
        M(1, 0),
        M(2, 0),
        M(3, 0),
    ];
    LieAlgebraSpec::from_bracket(AlgebraKind::PoincareContractionBasis, gens, poincare_bracket)
}

/// The Galilei algebra on `Π₀, Π_a, K_ab, V_a`.
pub fn build_galilei() -> LieAlgebraSpec {
    use GeneratorId::{Pi, K, V};
    let gens = vec![
        Pi(0),
        Pi(1),
        Pi(2),
        Pi(3),
        K(1, 2),
        K(1, 3),
        K(2, 3),
        V(1),
        V(2),
        V(3),
    ];
    LieAlgebraSpec::from_bracket(AlgebraKind::Galilei, gens, galilei_bracket)
}

/// A PBW word: generator positions in non-decreasing order.
pub type Word = SmallVec<[u8; 8]>;

type Expansion = Rc<Vec<(Word, GaussianRational)>>;

thread_local! {
    static WORD_TIMES_GEN: RefCell<HashMap<(AlgebraKind, Word, u8), Expansion>> =
        RefCell::new(HashMap::new());
}

fn accumulate(acc: &mut BTreeMap<Word, GaussianRational>, w: Word, c: GaussianRational) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
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

/// Normal form of `w · g` for a PBW word `w`.
fn word_times_gen(kind: AlgebraKind, w: &[u8], g: u8) -> Expansion {
    if w.last().is_none_or(|&x| x <= g) {
        let mut out: Word = w.iter().copied().collect();
        out.push(g);
        return Rc::new(vec![(out, GaussianRational::one())]);
    }
    let key = (kind, Word::from_slice(w), g);
    if let Some(hit) = WORD_TIMES_GEN.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let spec = kind.spec();
    let (prefix, x) = (&w[..w.len() - 1], w[w.len() - 1]);
    let mut acc = BTreeMap::new();
    // prefix·x·g = prefix·g·x + prefix·[x, g]
    for (u, c) in word_times_gen(kind, prefix, g).iter() {
        for (v, d) in word_times_gen(kind, u, x).iter() {
            accumulate(&mut acc, v.clone(), c * d);
        }
    }
    for (h, e) in spec.bracket(x, g) {
        for (u, c) in word_times_gen(kind, prefix, *h).iter() {
            accumulate(&mut acc, u.clone(), e * c);
        }
    }
    let result: Expansion = Rc::new(acc.into_iter().collect());
    WORD_TIMES_GEN.with(|c| c.borrow_mut().insert(key, result.clone()));
    result
}

/// Normal form of the product of two PBW words.
pub fn word_mul(kind: AlgebraKind, u: &[u8], v: &[u8]) -> Vec<(Word, GaussianRational)> {
    if v.is_empty() {
        return vec![(Word::from_slice(u), GaussianRational::one())];
    }
    if u.last().is_none_or(|&x| x <= v[0]) {
        let mut w = Word::from_slice(u);
        w.extend_from_slice(v);
        return vec![(w, GaussianRational::one())];
    }
    let mut current: BTreeMap<Word, GaussianRational> = BTreeMap::new();
    current.insert(Word::from_slice(u), GaussianRational::one());
    for &g in v {
        let mut next = BTreeMap::new();
        for (w, c) in &current {
            for (x, d) in word_times_gen(kind, w, g).iter() {
                accumulate(&mut next, x.clone(), c * d);
            }
        }
        current = next;
    }
    current.into_iter().collect()
}

/// Rewrite an arbitrary word into PBW form by adjacent swaps. `pick` chooses
/// which out-of-order adjacent pair to swap next, given the candidate
/// positions; every admissible choice yields the same normal form.
pub fn normalize_by_swaps(
    kind: AlgebraKind,
    word: &[u8],
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> BTreeMap<Word, GaussianRational> {
    let spec = kind.spec();
    let mut pending: Vec<(Word, GaussianRational)> =
        vec![(Word::from_slice(word), GaussianRational::one())];
    let mut done = BTreeMap::new();
    while let Some((w, c)) = pending.pop() {
        let descents: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&j| w[j] > w[j + 1])
            .collect();
        if descents.is_empty() {
            accumulate(&mut done, w, c);
            continue;
        }
        let j = descents[pick(&descents) % descents.len()];
        let (x, y) = (w[j], w[j + 1]);
        let mut swapped = w.clone();
        swapped.swap(j, j + 1);
        pending.push((swapped, c.clone()));
        for (h, e) in spec.bracket(x, y) {
            let mut shorter: Word = w[..j].iter().copied().collect();
            shorter.push(*h);
            shorter.extend_from_slice(&w[j + 2..]);
            pending.push((shorter, &c * e));
        }
    }
    done
}

/// An element of the universal enveloping algebra in PBW normal form, with
/// truncated Laurent series coefficients.
#[derive(Clone, Debug)]
pub struct UeaElement {
    kind: AlgebraKind,
    order: u32,
    terms: BTreeMap<Word, LaurentSeries>,
    truncated: bool,
}

impl PartialEq for UeaElement {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.terms == other.terms
    }
}

impl UeaElement {
    pub fn zero(kind: AlgebraKind, order: u32) -> Self {
        UeaElement {
            kind,
            order,
            terms: BTreeMap::new(),
            truncated: false,
        }
    }

    pub fn one(kind: AlgebraKind, order: u32) -> Self {
        Self::scalar(kind, LaurentSeries::one(order))
    }

    pub fn scalar(kind: AlgebraKind, c: LaurentSeries) -> Self {
        let mut e = Self::zero(kind, c.order());
        e.add_term(Word::new(), c);
        e
    }

    /// A named generator; reversed index pairs come back with a sign.
    pub fn generator(kind: AlgebraKind, g: GeneratorId, order: u32) -> Result<Self, Error> {
        let spec = kind.spec();
        match spec.resolve(g) {
            Some((pos, sign)) => {
                let c = LaurentSeries::constant(GaussianRational::from_int(sign as i64), order);
                let mut e = Self::zero(kind, order);
                e.add_term(Word::from_slice(&[pos]), c);
                Ok(e)
            }
            None => match g {
                GeneratorId::M(a, b) | GeneratorId::K(a, b) if a == b => Ok(Self::zero(kind, order)),
                _ => Err(Error::UnknownGenerator(format!("{g} in {kind:?}"))),
            },
        }
    }

    /// `c · w` for an already ordered word `w`.
    pub fn from_word(kind: AlgebraKind, w: Word, c: LaurentSeries) -> Self {
        debug_assert!(w.windows(2).all(|p| p[0] <= p[1]));
        let mut e = Self::zero(kind, c.order());
        e.add_term(w, c);
        e
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Word::new()).is_some_and(|c| c.is_one())
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated || self.terms.values().any(|c| c.is_truncated())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &LaurentSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, w: Word, c: LaurentSeries) {
        self.truncated |= c.is_truncated();
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
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

    /// Coefficient of a PBW word.
    pub fn coefficient(&self, w: &[u8]) -> LaurentSeries {
        self.terms
            .get(&Word::from_slice(w))
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(self.order))
    }

    pub fn scale_series(&self, c: &LaurentSeries) -> Self {
        let mut out = Self::zero(self.kind, self.order);
        out.truncated = self.truncated;
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v * c);
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = Self::zero(self.kind, self.order);
        out.truncated = self.truncated;
        for (w, v) in &self.terms {
            out.add_term(w.clone(), v.scale(c));
        }
        out
    }

    /// Associative product in PBW form.
    pub fn mul_ref(&self, other: &Self) -> Self {
        assert_eq!(self.kind, other.kind, "elements of different algebras");
        let mut out = Self::zero(self.kind, self.order);
        out.truncated = self.truncated || other.truncated;
        for (u, cu) in &self.terms {
            let du = cu.min_degree().unwrap_or(0);
            for (v, cv) in &other.terms {
                if du + cv.min_degree().unwrap_or(0) > self.order {
                    out.truncated = true;
                    continue;
                }
                let c = cu * cv;
                if c.is_zero() {
                    out.truncated |= c.is_truncated();
                    continue;
                }
                for (w, e) in word_mul(self.kind, u, v) {
                    out.add_term(w, c.scale(&e));
                }
            }
        }
        out
    }

    /// `ab − ba`.
    pub fn commutator(&self, other: &Self) -> Self {
        &self.mul_ref(other) - &other.mul_ref(self)
    }

    /// Counit: the coefficient of the empty word.
    pub fn counit(&self) -> LaurentSeries {
        self.coefficient(&[])
    }

    /// Undeformed antipode `S₀(g₁⋯gₙ) = (−1)ⁿ gₙ⋯g₁`.
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.kind, self.order);
        out.truncated = self.truncated;
        for (w, c) in &self.terms {
            let sign = if w.len() % 2 == 0 { 1 } else { -1 };
            let reversed: Vec<u8> = w.iter().rev().copied().collect();
            let mut prod = Self::one(self.kind, self.order);
            for g in reversed {
                prod = prod.mul_ref(&Self::from_word(
                    self.kind,
                    Word::from_slice(&[g]),
                    LaurentSeries::one(self.order),
                ));
            }
            out = &out + &prod.scale_series(&c.scale(&GaussianRational::from_int(sign)));
        }
        out
    }

    /// The degree-one part as a combination of generators (requires
    /// parameter-free coefficients; other terms are ignored).
    pub fn linear_part(&self) -> BTreeMap<u8, LaurentSeries> {
        self.terms
            .iter()
            .filter(|(w, _)| w.len() == 1)
            .map(|(w, c)| (w[0], c.clone()))
            .collect()
    }

    /// Apply a map to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&LaurentSeries) -> LaurentSeries) -> Self {
        let mut out = Self::zero(self.kind, self.order);
        out.truncated = self.truncated;
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c));
        }
        out
    }

    /// Maximum PBW word length.
    pub fn max_word_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Exact power `selfⁿ`.
    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one(self.kind, self.order);
        for _ in 0..n {
            out = out.mul_ref(self);
        }
        out
    }
}

/// PBW normal form of `c · g₁ g₂ ⋯ gₙ` for a raw word of named generators.
pub fn pbw_normalize(
    kind: AlgebraKind,
    word: &[GeneratorId],
    c: LaurentSeries,
) -> Result<UeaElement, Error> {
    let order = c.order();
    let mut out = UeaElement::scalar(kind, c);
    for g in word {
        out = out.mul_ref(&UeaElement::generator(kind, *g, order)?);
    }
    Ok(out)
}

pub fn uea_mul(a: &UeaElement, b: &UeaElement) -> UeaElement {
    a.mul_ref(b)
}

pub fn uea_commutator(a: &UeaElement, b: &UeaElement) -> UeaElement {
    a.commutator(b)
}

impl<'a> Add<&'a UeaElement> for &'a UeaElement {
    type Output = UeaElement;
    fn add(self, rhs: &UeaElement) -> UeaElement {
        assert_eq!(self.kind, rhs.kind, "elements of different algebras");
        let mut out = self.clone();
        out.truncated |= rhs.truncated;
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a UeaElement> for &'a UeaElement {
    type Output = UeaElement;
    fn sub(self, rhs: &UeaElement) -> UeaElement {
        self + &(-rhs)
    }
}

impl Neg for &UeaElement {
    type Output = UeaElement;
    fn neg(self) -> UeaElement {
        UeaElement {
            kind: self.kind,
            order: self.order,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            truncated: self.truncated,
        }
    }
}

impl<'a> Mul<&'a UeaElement> for &'a UeaElement {
    type Output = UeaElement;
    fn mul(self, rhs: &UeaElement) -> UeaElement {
        self.mul_ref(rhs)
    }
}

pub(crate) fn fmt_word(kind: AlgebraKind, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let spec = kind.spec();
    let mut out = String::new();
    let mut j = 0;
    while j < w.len() {
        let mut run = 1;
        while j + run < w.len() && w[j + run] == w[j] {
            run += 1;
        }
        if !out.is_empty() {
            out.push('·');
        }
        out.push_str(&spec.generator(w[j]).to_string());
        if run > 1 {
            out.push_str(&format!("^{run}"));
        }
        j += run;
    }
    out
}

pub(crate) fn fmt_coefficient(c: &LaurentSeries) -> String {
    if c.is_one() {
        String::new()
    } else if c.len() == 1 {
        format!("{c}·")
    } else {
        format!("[{c}]·")
    }
}

impl fmt::Display for UeaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if w.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "{}{}", fmt_coefficient(c), fmt_word(self.kind, w))?;
            }
        }
        Ok(())
    }
}
