//! Twist factors, twisted coproducts and the Hopf-algebra checks built on
//! them (cocycle, normalization, counit, coassociativity, homomorphism,
//! Sweedler element).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smallvec::smallvec;

use crate::algebra::{AlgebraKind, GeneratorId, UeaElement, Word};
use crate::error::Error;
use crate::series::{FormalParameter, GaussianRational, LaurentSeries};
use crate::tensor::{Legs, TensorElement};

/// The eight twist deformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Deformation {
    #[serde(rename = "theta_kl")]
    ThetaKl,
    #[serde(rename = "theta_0i")]
    Theta0i,
    #[serde(rename = "kappa")]
    Kappa,
    #[serde(rename = "kappa_hat")]
    KappaHat,
    #[serde(rename = "kappa_bar")]
    KappaBar,
    #[serde(rename = "theta_kl+kappa")]
    ThetaKlKappa,
    #[serde(rename = "theta_0i+kappa_hat")]
    Theta0iKappaHat,
    #[serde(rename = "theta_0i+kappa_bar")]
    Theta0iKappaBar,
}

impl Deformation {
    pub const ALL: [Deformation; 8] = [
        Deformation::ThetaKl,
        Deformation::Theta0i,
        Deformation::Kappa,
        Deformation::KappaHat,
        Deformation::KappaBar,
        Deformation::ThetaKlKappa,
        Deformation::Theta0iKappaHat,
        Deformation::Theta0iKappaBar,
    ];

    pub const BASIC: [Deformation; 5] = [
        Deformation::ThetaKl,
        Deformation::Theta0i,
        Deformation::Kappa,
        Deformation::KappaHat,
        Deformation::KappaBar,
    ];

    pub const GENERALIZED: [Deformation; 3] = [
        Deformation::ThetaKlKappa,
        Deformation::Theta0iKappaHat,
        Deformation::Theta0iKappaBar,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Deformation::ThetaKl => "theta_kl",
            Deformation::Theta0i => "theta_0i",
            Deformation::Kappa => "kappa",
            Deformation::KappaHat => "kappa_hat",
            Deformation::KappaBar => "kappa_bar",
            Deformation::ThetaKlKappa => "theta_kl+kappa",
            Deformation::Theta0iKappaHat => "theta_0i+kappa_hat",
            Deformation::Theta0iKappaBar => "theta_0i+kappa_bar",
        }
    }

    /// The basic deformations whose twists multiply to this one.
    pub fn components(self) -> Vec<Deformation> {
        match self {
            Deformation::ThetaKlKappa => vec![Deformation::ThetaKl, Deformation::Kappa],
            Deformation::Theta0iKappaHat => vec![Deformation::Theta0i, Deformation::KappaHat],
            Deformation::Theta0iKappaBar => vec![Deformation::Theta0i, Deformation::KappaBar],
            d => vec![d],
        }
    }

    pub fn is_generalized(self) -> bool {
        Deformation::GENERALIZED.contains(&self)
    }

    /// Which of `k`, `l`, `i` the deformation uses.
    pub fn index_names(self) -> &'static [char] {
        match self {
            Deformation::ThetaKl | Deformation::KappaHat => &['k', 'l'],
            Deformation::Theta0i => &['i'],
            Deformation::Kappa => &['i', 'k'],
            _ => &['k', 'l', 'i'],
        }
    }

    /// The index condition, as printed beside the twist.
    pub fn constraint(self) -> &'static str {
        match self {
            Deformation::ThetaKl => "[k,l - fixed], θ_kl = -θ_lk",
            Deformation::Theta0i => "[i - fixed]",
            Deformation::Kappa => "[i,k - fixed, i != k]",
            Deformation::KappaHat => "[k,l - fixed], M_kl = -M_lk",
            Deformation::KappaBar => "[i,k,l - fixed, i != k,l]",
            Deformation::ThetaKlKappa => "[k,l different than i]",
            Deformation::Theta0iKappaHat | Deformation::Theta0iKappaBar => {
                "[i different than k, l, 0]"
            }
        }
    }

    /// Validate an index assignment, returning the indices with only the
    /// used ones kept.
    pub fn validate(self, idx: &Indices) -> Result<Indices, Error> {
        let fail = |message: String| Error::IndexConstraint {
            deformation: self.id().to_string(),
            constraint: self.constraint(),
            message,
        };
        let mut out = Indices::default();
        for &name in self.index_names() {
            let v = idx
                .get(name)
                .ok_or_else(|| fail(format!("index {name} is required")))?;
            if !(1..=3).contains(&v) {
                return Err(fail(format!("index {name}={v} must be spatial (1..3)")));
            }
            out.set(name, v);
        }
        let distinct = |a: char, b: char| out.get(a) != out.get(b);
        let ok = match self {
            Deformation::Theta0i => true,
            Deformation::ThetaKl | Deformation::KappaHat => distinct('k', 'l'),
            Deformation::Kappa => distinct('i', 'k'),
            _ => distinct('k', 'l') && distinct('i', 'k') && distinct('i', 'l'),
        };
        if !ok {
            return Err(fail(format!("got {out}")));
        }
        Ok(out)
    }

    /// Every admissible index assignment, in lexicographic order.
    pub fn admissible(self) -> Vec<Indices> {
        let mut out = Vec::new();
        for k in 1..=3 {
            for l in 1..=3 {
                for i in 1..=3 {
                    let cand = Indices {
                        k: Some(k),
                        l: Some(l),
                        i: Some(i),
                    };
                    if let Ok(v) = self.validate(&cand) {
                        if !out.contains(&v) {
                            out.push(v);
                        }
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// The deformation parameters this deformation introduces.
    pub fn parameters(self) -> Vec<FormalParameter> {
        self.components()
            .into_iter()
            .map(|d| match d {
                Deformation::ThetaKl => FormalParameter::ThetaKl,
                Deformation::Theta0i => FormalParameter::Theta0i,
                Deformation::Kappa => FormalParameter::InvKappa,
                Deformation::KappaHat => FormalParameter::InvKappaHat,
                _ => FormalParameter::InvKappaBar,
            })
            .collect()
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Deformation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        Deformation::ALL
            .into_iter()
            .find(|d| d.id() == s)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown deformation `{s}` (expected one of {})",
                    Deformation::ALL.map(|d| d.id()).join(", ")
                ))
            })
    }
}

/// The fixed indices `k`, `l`, `i` of a deformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Indices {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub l: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<u8>,
}

impl Indices {
    pub fn new(k: Option<u8>, l: Option<u8>, i: Option<u8>) -> Self {
        Indices { k, l, i }
    }

    pub fn kli(k: u8, l: u8, i: u8) -> Self {
        Indices::new(Some(k), Some(l), Some(i))
    }

    pub fn get(&self, name: char) -> Option<u8> {
        match name {
            'k' => self.k,
            'l' => self.l,
            'i' => self.i,
            _ => None,
        }
    }

    pub fn set(&mut self, name: char, v: u8) {
        match name {
            'k' => self.k = Some(v),
            'l' => self.l = Some(v),
            'i' => self.i = Some(v),
            _ => {}
        }
    }

    /// Unwrap an index the caller has validated.
    /// Keep only the indices `d` uses.
    pub fn restrict(&self, d: Deformation) -> Indices {
        let mut out = Indices::default();
        for &n in d.index_names() {
            if let Some(v) = self.get(n) {
                out.set(n, v);
            }
        }
        out
    }

    pub fn req(&self, name: char) -> u8 {
        self.get(name).unwrap_or_else(|| panic!("index {name} missing"))
    }
}

impl fmt::Display for Indices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = ['k', 'l', 'i']
            .iter()
            .filter_map(|&n| self.get(n).map(|v| format!("{n}={v}")))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Indices {
    type Err = Error;
    /// Parses `k=1,l=2,i=3` (any subset, any order).
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = Indices::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("malformed index `{part}`")))?;
            let name = match name.trim() {
                "k" => 'k',
                "l" => 'l',
                "i" => 'i',
                other => return Err(Error::Config(format!("unknown index name `{other}`"))),
            };
            let v: u8 = value
                .trim()
                .parse()
                .map_err(|_| Error::Config(format!("index value `{value}` is not a number")))?;
            out.set(name, v);
        }
        Ok(out)
    }
}

/// A twist `F = exp(A)`.
#[derive(Clone, Debug)]
pub struct TwistFactor {
    label: String,
    exponent: TensorElement,
    carrier: Vec<GeneratorId>,
    skew: bool,
    carrier_abelian: bool,
}

/// One term `c · X∧Y` of a skew twist exponent or r-matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct WedgeTerm {
    pub coefficient: LaurentSeries,
    pub left: GeneratorId,
    pub right: GeneratorId,
}

/// The wedge terms `Σ c X∧Y` of the classical r-matrix of a deformation;
/// the twist exponent is `i` times this.
pub fn wedge_terms(d: Deformation, idx: &Indices, order: u32) -> Result<Vec<WedgeTerm>, Error> {
    use GeneratorId::{M, P};
    let idx = d.validate(idx)?;
    let half = |p: FormalParameter| {
        LaurentSeries::param(p, order).scale(&GaussianRational::ratio(1, 2))
    };
    let mut out = Vec::new();
    for c in d.components() {
        let term = match c {
            Deformation::ThetaKl => WedgeTerm {
                coefficient: LaurentSeries::param(FormalParameter::ThetaKl, order),
                left: P(idx.req('k')),
                right: P(idx.req('l')),
            },
            Deformation::Theta0i => WedgeTerm {
                coefficient: LaurentSeries::param(FormalParameter::Theta0i, order),
                left: P(0),
                right: P(idx.req('i')),
            },
            Deformation::Kappa => WedgeTerm {
                coefficient: half(FormalParameter::InvKappa),
                left: P(idx.req('k')),
                right: M(idx.req('i'), 0),
            },
            Deformation::KappaHat => WedgeTerm {
                coefficient: half(FormalParameter::InvKappaHat),
                left: P(0),
                right: M(idx.req('k'), idx.req('l')),
            },
            _ => WedgeTerm {
                coefficient: half(FormalParameter::InvKappaBar),
                left: P(idx.req('i')),
                right: M(idx.req('k'), idx.req('l')),
            },
        };
        out.push(term);
    }
    Ok(out)
}

impl TwistFactor {
    /// `F = 1 ⊗ 1`.
    pub fn trivial(kind: AlgebraKind, order: u32) -> Self {
        TwistFactor {
            label: "trivial".to_string(),
            exponent: TensorElement::zero(kind, order, 2),
            carrier: Vec::new(),
            skew: true,
            carrier_abelian: true,
        }
    }

    /// `F = exp(i Σ c X∧Y)`.
    pub fn from_wedges(
        kind: AlgebraKind,
        label: impl Into<String>,
        terms: &[WedgeTerm],
        order: u32,
    ) -> Result<Self, Error> {
        let mut exponent = TensorElement::zero(kind, order, 2);
        let mut carrier = Vec::new();
        for t in terms {
            let x = UeaElement::generator(kind, t.left, order)?;
            let y = UeaElement::generator(kind, t.right, order)?;
            let c = t.coefficient.scale(&GaussianRational::i());
            exponent = &exponent + &TensorElement::wedge(&x, &y).scale_series(&c);
            for g in [t.left, t.right] {
                if !carrier.contains(&g) {
                    carrier.push(g);
                }
            }
        }
        let carrier_abelian = carrier_commutes(kind, &carrier, order)?;
        Ok(TwistFactor {
            label: label.into(),
            exponent,
            carrier,
            skew: true,
            carrier_abelian,
        })
    }

    /// Arbitrary exponent (used for negative controls).
    pub fn from_exponent(
        label: impl Into<String>,
        exponent: TensorElement,
        carrier: Vec<GeneratorId>,
    ) -> Result<Self, Error> {
        assert_eq!(exponent.rank(), 2);
        let skew = exponent.permute(&[1, 0]) == -&exponent;
        let carrier_abelian = carrier_commutes(exponent.kind(), &carrier, exponent.order())?;
        Ok(TwistFactor {
            label: label.into(),
            exponent,
            carrier,
            skew,
            carrier_abelian,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kind(&self) -> AlgebraKind {
        self.exponent.kind()
    }

    pub fn order(&self) -> u32 {
        self.exponent.order()
    }

    pub fn exponent(&self) -> &TensorElement {
        &self.exponent
    }

    pub fn carrier(&self) -> &[GeneratorId] {
        &self.carrier
    }

    pub fn carrier_abelian(&self) -> bool {
        self.carrier_abelian
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    /// `Σ_{n≤N} Aⁿ/n!`.
    pub fn expand(&self) -> TensorElement {
        self.exponent.exp().0
    }

    /// `F⁻¹ = exp(−A)`.
    pub fn inverse(&self) -> TensorElement {
        (-&self.exponent).exp().0
    }

    /// The twist with negated exponent.
    pub fn inverse_twist(&self) -> TwistFactor {
        TwistFactor {
            label: format!("({})^-1", self.label),
            exponent: -&self.exponent,
            ..self.clone()
        }
    }
}

fn carrier_commutes(kind: AlgebraKind, carrier: &[GeneratorId], order: u32) -> Result<bool, Error> {
    let gens: Vec<UeaElement> = carrier
        .iter()
        .map(|g| UeaElement::generator(kind, *g, order))
        .collect::<Result<_, _>>()?;
    Ok(gens
        .iter()
        .enumerate()
        .all(|(a, x)| gens[a + 1..].iter().all(|y| x.commutator(y).is_zero())))
}

/// The twist of one of the eight deformations.
pub fn build_twist(d: Deformation, idx: &Indices, order: u32) -> Result<TwistFactor, Error> {
    let idx = d.validate(idx)?;
    let terms = wedge_terms(d, &idx, order)?;
    TwistFactor::from_wedges(AlgebraKind::Poincare, format!("{d}({idx})"), &terms, order)
}

/// The non-skew control twist `exp(ξ P₁⊗M₁₂)`.
pub fn control_twist(order: u32) -> TwistFactor {
    let kind = AlgebraKind::Poincare;
    let p1 = UeaElement::generator(kind, GeneratorId::P(1), order).expect("P1 exists");
    let m12 = UeaElement::generator(kind, GeneratorId::M(1, 2), order).expect("M12 exists");
    let xi = LaurentSeries::param(FormalParameter::XiKl, order);
    let exponent = TensorElement::pure(&[&p1, &m12]).scale_series(&xi);
    TwistFactor::from_exponent(
        "exp(ξ P1⊗M12)",
        exponent,
        vec![GeneratorId::P(1), GeneratorId::M(1, 2)],
    )
    .expect("control twist is well formed")
}

/// Whether a result holds identically or only through the truncation order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exactness {
    Exact,
    ToOrder(u32),
}

impl Exactness {
    pub fn from_flag(exact: bool, order: u32) -> Self {
        if exact {
            Exactness::Exact
        } else {
            Exactness::ToOrder(order)
        }
    }

    pub fn and(self, other: Exactness) -> Exactness {
        match (self, other) {
            (Exactness::Exact, Exactness::Exact) => Exactness::Exact,
            (Exactness::ToOrder(a), Exactness::ToOrder(b)) => Exactness::ToOrder(a.min(b)),
            (Exactness::ToOrder(a), _) | (_, Exactness::ToOrder(a)) => Exactness::ToOrder(a),
        }
    }
}

impl fmt::Display for Exactness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exactness::Exact => f.write_str("exact"),
            Exactness::ToOrder(n) => write!(f, "order-{n}"),
        }
    }
}

impl Serialize for Exactness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Outcome of one algebraic identity check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    /// Canonical text of the residual, empty when it vanishes.
    pub residual: String,
    pub exactness: Exactness,
}

impl CheckOutcome {
    pub fn from_tensor(t: &TensorElement, exactness: Exactness) -> Self {
        CheckOutcome {
            residual: if t.is_zero() { String::new() } else { t.to_string() },
            exactness,
        }
    }

    pub fn from_uea(u: &UeaElement, exactness: Exactness) -> Self {
        CheckOutcome {
            residual: if u.is_zero() { String::new() } else { u.to_string() },
            exactness,
        }
    }

    pub fn merge(outcomes: impl IntoIterator<Item = (String, CheckOutcome)>) -> CheckOutcome {
        let mut residual = Vec::new();
        let mut exactness = Exactness::Exact;
        for (label, o) in outcomes {
            exactness = exactness.and(o.exactness);
            if !o.residual.is_empty() {
                residual.push(format!("{label}: {}", o.residual));
            }
        }
        CheckOutcome {
            residual: residual.join("; "),
            exactness,
        }
    }

    pub fn passed(&self) -> bool {
        self.residual.is_empty()
    }
}

/// Primitive coproduct `Δ₀(g) = g⊗1 + 1⊗g`.
pub fn classical_coproduct(kind: AlgebraKind, g: GeneratorId, order: u32) -> Result<TensorElement, Error> {
    let one = UeaElement::one(kind, order);
    let x = UeaElement::generator(kind, g, order)?;
    Ok(TensorElement::perp(&x, &one))
}

/// `Δ₀` on a PBW word: the sum over order-preserving splittings.
pub fn classical_coproduct_word(kind: AlgebraKind, w: &[u8], order: u32) -> TensorElement {
    let mut out = TensorElement::zero(kind, order, 2);
    let n = w.len();
    assert!(n < 63);
    for mask in 0u64..(1u64 << n) {
        let mut left = Word::new();
        let mut right = Word::new();
        for (j, &g) in w.iter().enumerate() {
            if mask >> j & 1 == 1 {
                left.push(g);
            } else {
                right.push(g);
            }
        }
        let legs: Legs = smallvec![left, right];
        out.add_term(legs, LaurentSeries::one(order));
    }
    out
}

/// A coproduct on the enveloping algebra, given on generators.
#[derive(Clone, Debug)]
pub struct HopfStructure {
    kind: AlgebraKind,
    order: u32,
    classical: bool,
    coproducts: Vec<TensorElement>,
    exactness: Vec<Exactness>,
}

impl HopfStructure {
    pub fn classical(kind: AlgebraKind, order: u32) -> Self {
        let spec = kind.spec();
        let coproducts = spec
            .generators()
            .iter()
            .map(|g| classical_coproduct(kind, *g, order).expect("basis generator"))
            .collect();
        HopfStructure {
            kind,
            order,
            classical: true,
            coproducts,
            exactness: vec![Exactness::Exact; spec.dim()],
        }
    }

    /// Coproducts given explicitly on every basis generator.
    pub fn from_coproducts(kind: AlgebraKind, order: u32, coproducts: Vec<TensorElement>, exactness: Vec<Exactness>) -> Self {
        assert_eq!(coproducts.len(), kind.spec().dim());
        HopfStructure {
            kind,
            order,
            classical: false,
            coproducts,
            exactness,
        }
    }

    /// `Δ_F = F Δ F⁻¹` on every generator.
    pub fn twisted(&self, f: &TwistFactor) -> Self {
        let n = self.coproducts.len();
        let (coproducts, exactness): (Vec<_>, Vec<_>) =
            (0..n).map(|a| self.twist_generator(f, a as u8)).unzip();
        HopfStructure {
            kind: self.kind,
            order: self.order,
            classical: self.classical && f.exponent().is_zero(),
            coproducts,
            exactness,
        }
    }

    /// `F Δ(g) F⁻¹ = Σ ad_Aⁿ Δ(g) / n!`, exact when an iterate vanishes
    /// without any term having been discarded.
    pub fn twist_generator(&self, f: &TwistFactor, pos: u8) -> (TensorElement, Exactness) {
        let a = f.exponent();
        let base = &self.coproducts[pos as usize];
        let mut sum = base.clone();
        let mut term = base.clone();
        let mut n: i64 = 0;
        loop {
            n += 1;
            term = a.commutator(&term).scale(&GaussianRational::ratio(1, n));
            if term.is_zero() {
                let exact = !term.is_truncated() && self.exactness[pos as usize] == Exactness::Exact;
                return (sum, Exactness::from_flag(exact, self.order));
            }
            sum = &sum + &term;
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coproduct_at(&self, pos: u8) -> &TensorElement {
        &self.coproducts[pos as usize]
    }

    pub fn exactness_at(&self, pos: u8) -> Exactness {
        self.exactness[pos as usize]
    }

    pub fn coproduct(&self, g: GeneratorId) -> Result<TensorElement, Error> {
        let (pos, sign) = self
            .kind
            .spec()
            .resolve(g)
            .ok_or_else(|| Error::UnknownGenerator(format!("{g} in {:?}", self.kind)))?;
        let d = self.coproduct_at(pos);
        Ok(if sign < 0 { -d } else { d.clone() })
    }

    /// `Δ` on a PBW word, extended multiplicatively.
    pub fn coproduct_word(&self, w: &[u8]) -> TensorElement {
        if self.classical {
            return classical_coproduct_word(self.kind, w, self.order);
        }
        let mut out = TensorElement::one(self.kind, self.order, 2);
        for &g in w {
            out = out.mul_ref(self.coproduct_at(g));
        }
        out
    }

    /// `Δ` on an arbitrary element.
    pub fn coproduct_element(&self, a: &UeaElement) -> TensorElement {
        let mut out = TensorElement::zero(self.kind, self.order, 2);
        for (w, c) in a.terms() {
            out = &out + &self.coproduct_word(w).scale_series(c);
        }
        out
    }

    /// Apply `Δ` to one leg of a tensor.
    pub fn apply_to_leg(&self, t: &TensorElement, leg: usize) -> TensorElement {
        t.expand_leg(leg, &mut |w| self.coproduct_word(w))
    }

    /// Counit axiom `(ε⊗1)Δ(g) = g = (1⊗ε)Δ(g)` on every generator.
    pub fn check_counit(&self) -> CheckOutcome {
        let spec = self.kind.spec();
        let mut outcomes = Vec::new();
        for a in 0..spec.dim() as u8 {
            let g = UeaElement::from_word(self.kind, Word::from_slice(&[a]), LaurentSeries::one(self.order));
            let d = self.coproduct_at(a);
            for (leg, label) in [(0, "(ε⊗1)"), (1, "(1⊗ε)")] {
                let residual = &d.counit_leg(leg).to_uea() - &g;
                outcomes.push((
                    format!("{label}Δ({})", spec.generator(a)),
                    CheckOutcome::from_uea(&residual, Exactness::ToOrder(self.order)),
                ));
            }
        }
        CheckOutcome::merge(outcomes)
    }

    /// `(Δ⊗1)Δ(g) − (1⊗Δ)Δ(g)` on every generator.
    pub fn check_coassociativity(&self) -> CheckOutcome {
        let spec = self.kind.spec();
        CheckOutcome::merge((0..spec.dim() as u8).map(|a| {
            let d = self.coproduct_at(a);
            let residual = &self.apply_to_leg(d, 0) - &self.apply_to_leg(d, 1);
            (
                spec.generator(a).to_string(),
                CheckOutcome::from_tensor(&residual, Exactness::ToOrder(self.order)),
            )
        }))
    }

    /// `Δ([a,b]) − [Δ(a), Δ(b)]` on every generator pair.
    pub fn check_homomorphism(&self) -> CheckOutcome {
        let spec = self.kind.spec();
        let n = spec.dim() as u8;
        let mut outcomes = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let mut lhs = TensorElement::zero(self.kind, self.order, 2);
                for (h, c) in spec.bracket(a, b) {
                    lhs = &lhs + &self.coproduct_at(*h).scale(c);
                }
                let rhs = self.coproduct_at(a).commutator(self.coproduct_at(b));
                outcomes.push((
                    format!("[{},{}]", spec.generator(a), spec.generator(b)),
                    CheckOutcome::from_tensor(&(&lhs - &rhs), Exactness::ToOrder(self.order)),
                ));
            }
        }
        CheckOutcome::merge(outcomes)
    }
}

/// `F₁₂·(Δ⊗1)F − F₂₃·(1⊗Δ)F` for a given coproduct `Δ`.
pub fn cocycle_residual(f: &TwistFactor, delta: &HopfStructure) -> TensorElement {
    let big_f = f.expand();
    let f12 = big_f.embed(3, &[0, 1]);
    let f23 = big_f.embed(3, &[1, 2]);
    let left = f12.mul_ref(&delta.apply_to_leg(&big_f, 0));
    let right = f23.mul_ref(&delta.apply_to_leg(&big_f, 1));
    &left - &right
}

/// The cocycle condition with respect to `Δ`.
pub fn check_cocycle(f: &TwistFactor, delta: &HopfStructure) -> CheckOutcome {
    CheckOutcome::from_tensor(&cocycle_residual(f, delta), Exactness::ToOrder(f.order()))
}

/// The admissible (first, second) pairs for the two-step twisting.
pub const SECOND_LEG_PAIRS: [(Deformation, Deformation); 6] = [
    (Deformation::ThetaKl, Deformation::Kappa),
    (Deformation::Kappa, Deformation::ThetaKl),
    (Deformation::Theta0i, Deformation::KappaHat),
    (Deformation::KappaHat, Deformation::Theta0i),
    (Deformation::Theta0i, Deformation::KappaBar),
    (Deformation::KappaBar, Deformation::Theta0i),
];

/// The generalized deformation obtained from a two-step pair.
pub fn pair_total(first: Deformation, second: Deformation) -> Option<Deformation> {
    Deformation::GENERALIZED.into_iter().find(|g| {
        let c = g.components();
        c.contains(&first) && c.contains(&second) && first != second
    })
}

/// Cocycle of the second twist with respect to the coproduct already
/// twisted by the first; `first = None` reduces to the classical cocycle.
pub fn check_second_leg_cocycle(
    first: Option<Deformation>,
    second: Deformation,
    idx: &Indices,
    order: u32,
) -> Result<CheckOutcome, Error> {
    let classical = HopfStructure::classical(AlgebraKind::Poincare, order);
    let base = match first {
        Some(d) => {
            let total = pair_total(d, second).ok_or_else(|| {
                Error::Config(format!("({d}, {second}) is not a two-step twisting pair"))
            })?;
            total.validate(idx)?;
            classical.twisted(&build_twist(d, idx, order)?)
        }
        None => classical,
    };
    let f = build_twist(second, idx, order)?;
    Ok(check_cocycle(&f, &base))
}

/// `(ε⊗1)F − 1` and `(1⊗ε)F − 1`.
pub fn check_normalization(f: &TwistFactor) -> CheckOutcome {
    let big_f = f.expand();
    let one = UeaElement::one(f.kind(), f.order());
    let left = &big_f.counit_leg(0).to_uea() - &one;
    let right = &big_f.counit_leg(1).to_uea() - &one;
    // Only the n = 0 term of the exponential survives when ε kills every
    // leg of the exponent, which makes the statement exact in that case.
    let exponent_killed = f.exponent().counit_leg(0).is_zero() && f.exponent().counit_leg(1).is_zero();
    CheckOutcome::merge([
        ("(ε⊗1)F".to_string(), CheckOutcome::from_uea(&left, Exactness::from_flag(exponent_killed, f.order()))),
        ("(1⊗ε)F".to_string(), CheckOutcome::from_uea(&right, Exactness::from_flag(exponent_killed, f.order()))),
    ])
}

/// `F·F⁻¹ − 1⊗1`.
pub fn check_inverse(f: &TwistFactor) -> CheckOutcome {
    let prod = f.expand().mul_ref(&f.inverse());
    let residual = &prod - &TensorElement::one(f.kind(), f.order(), 2);
    CheckOutcome::from_tensor(&residual, Exactness::ToOrder(f.order()))
}

/// `m∘(1⊗S₀)` on a rank-2 tensor.
pub fn multiply_after_antipode(t: &TensorElement) -> UeaElement {
    t.map_leg(1, &|w| {
        UeaElement::from_word(t.kind(), w.clone(), LaurentSeries::one(t.order())).antipode()
    })
    .multiply_legs()
}

/// Sweedler element `u = m∘(1⊗S₀)F`.
#[derive(Clone, Debug)]
pub struct Sweedler {
    pub u: UeaElement,
    /// With an Abelian carrier `x⊗y ↦ x S₀(y)` is an algebra map on the
    /// carrier's enveloping algebra, so `u = exp(m(1⊗S₀)A)`; if that
    /// exponent vanishes, `u = 1` to all orders.
    pub exactness: Exactness,
}

pub fn sweedler_u(f: &TwistFactor) -> Sweedler {
    let u = multiply_after_antipode(&f.expand());
    let exact = f.carrier_abelian() && multiply_after_antipode(f.exponent()).is_zero() && u.is_one();
    Sweedler {
        u,
        exactness: Exactness::from_flag(exact, f.order()),
    }
}

/// `u⁻¹` by the geometric series in `u − 1`.
pub fn uea_inverse(u: &UeaElement) -> Option<UeaElement> {
    let c0 = u.counit_constant()?;
    let one = UeaElement::one(u.kind(), u.order());
    let normalized = u.scale(&c0);
    let x = &normalized - &one;
    if x.terms().any(|(_, c)| c.min_degree() == Some(0)) {
        return None;
    }
    let mut result = one.clone();
    let mut power = one;
    for _ in 0..u.order() {
        power = power.mul_ref(&(-&x));
        result = &result + &power;
    }
    Some(result.scale(&c0))
}

impl UeaElement {
    fn counit_constant(&self) -> Option<GaussianRational> {
        self.counit().constant_term().inv()
    }
}

/// Twisted antipode `S(a) = u S₀(a) u⁻¹` on a generator.
pub fn twisted_antipode(f: &TwistFactor, g: GeneratorId) -> Result<UeaElement, Error> {
    let s = sweedler_u(f);
    let uinv = uea_inverse(&s.u).ok_or_else(|| Error::Config("Sweedler element is not invertible".into()))?;
    let a = UeaElement::generator(f.kind(), g, f.order())?;
    Ok(s.u.mul_ref(&a.antipode()).mul_ref(&uinv))
}

/// Structure-preserving coefficient check used by several reports.
pub fn is_one_tensor(t: &TensorElement) -> bool {
    t.len() == 1
        && t
            .terms()
            .next()
            .is_some_and(|(l, c)| l.iter().all(|w| w.is_empty()) && c.is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u32 = 4;

    fn g(s: &str) -> UeaElement {
        UeaElement::generator(AlgebraKind::Poincare, s.parse().unwrap(), N).unwrap()
    }

    fn theta12() -> TwistFactor {
        build_twist(Deformation::ThetaKl, &Indices::new(Some(1), Some(2), None), N).unwrap()
    }

    #[test]
    fn classical_examples() {
        let one = UeaElement::one(AlgebraKind::Poincare, N);
        let d = classical_coproduct(AlgebraKind::Poincare, GeneratorId::P(1), N).unwrap();
        assert_eq!(d, &TensorElement::pure(&[&g("P1"), &one]) + &TensorElement::pure(&[&one, &g("P1")]));
        assert_eq!(d.counit_leg(0).to_uea(), g("P1"));
        let m = classical_coproduct(AlgebraKind::Poincare, GeneratorId::M(1, 2), N).unwrap();
        assert_eq!(m, TensorElement::perp(&g("M12"), &one));
    }

    #[test]
    fn build_twist_examples() {
        let f = theta12();
        let expected = TensorElement::wedge(&g("P1"), &g("P2"))
            .scale_series(&LaurentSeries::param(FormalParameter::ThetaKl, N).scale(&GaussianRational::i()));
        assert_eq!(f.exponent(), &expected);
        assert!(f.carrier_abelian());

        let f = build_twist(Deformation::ThetaKlKappa, &Indices::kli(1, 2, 3), N).unwrap();
        let kappa = LaurentSeries::param(FormalParameter::InvKappa, N).scale(&GaussianRational::ratio(1, 2));
        let expected = &TensorElement::wedge(&g("P1"), &g("P2"))
            .scale_series(&LaurentSeries::param(FormalParameter::ThetaKl, N))
            + &TensorElement::wedge(&g("P1"), &g("M30")).scale_series(&kappa);
        assert_eq!(f.exponent(), &expected.scale(&GaussianRational::i()));
        assert!(f.carrier_abelian());

        let err = build_twist(Deformation::Kappa, &Indices::new(Some(1), None, Some(1)), N).unwrap_err();
        assert!(err.to_string().contains("[i,k - fixed, i != k]"), "{err}");
    }

    #[test]
    fn admissible_counts() {
        let counts: Vec<usize> = Deformation::ALL.iter().map(|d| d.admissible().len()).collect();
        assert_eq!(counts, vec![6, 3, 6, 6, 6, 6, 6, 6]);
    }

    #[test]
    fn twist_coproduct_examples() {
        let classical = HopfStructure::classical(AlgebraKind::Poincare, N);
        let f = theta12();
        let spec = AlgebraKind::Poincare.spec();
        let (m12, _) = spec.resolve(GeneratorId::M(1, 2)).unwrap();
        let (d, ex) = classical.twist_generator(&f, m12);
        assert_eq!(d, classical.coproduct_at(m12).clone());
        assert_eq!(ex, Exactness::Exact);

        let (m13, _) = spec.resolve(GeneratorId::M(1, 3)).unwrap();
        let (d, ex) = classical.twist_generator(&f, m13);
        let theta = LaurentSeries::param(FormalParameter::ThetaKl, N);
        let expected = classical.coproduct_at(m13) + &TensorElement::wedge(&g("P2"), &g("P3")).scale_series(&theta);
        assert_eq!(d, expected);
        assert_eq!(ex, Exactness::Exact);

        for mu in 0..4 {
            let (d, ex) = classical.twist_generator(&f, mu);
            assert_eq!(&d, classical.coproduct_at(mu));
            assert_eq!(ex, Exactness::Exact);
        }
    }

    #[test]
    fn cocycle_examples() {
        let classical = HopfStructure::classical(AlgebraKind::Poincare, N);
        assert!(check_cocycle(&TwistFactor::trivial(AlgebraKind::Poincare, N), &classical).passed());
        assert!(check_cocycle(&theta12(), &classical).passed());
        let control = check_cocycle(&control_twist(2), &HopfStructure::classical(AlgebraKind::Poincare, 2));
        assert!(!control.passed());
        let residual = cocycle_residual(&control_twist(2), &HopfStructure::classical(AlgebraKind::Poincare, 2));
        // the residual starts at ξ²
        assert!(residual.terms().all(|(_, c)| c.min_degree() == Some(2)));
    }

    #[test]
    fn second_leg_examples() {
        let o = check_second_leg_cocycle(Some(Deformation::ThetaKl), Deformation::Kappa, &Indices::kli(1, 2, 3), N).unwrap();
        assert!(o.passed(), "{}", o.residual);
        let o = check_second_leg_cocycle(Some(Deformation::KappaHat), Deformation::Theta0i, &Indices::kli(1, 2, 3), N).unwrap();
        assert!(o.passed(), "{}", o.residual);
        let o = check_second_leg_cocycle(None, Deformation::ThetaKl, &Indices::kli(1, 2, 3), N).unwrap();
        assert!(o.passed());
    }

    #[test]
    fn normalization_examples() {
        assert!(check_normalization(&theta12()).passed());
        assert!(check_normalization(&TwistFactor::trivial(AlgebraKind::Poincare, N)).passed());
        let k = build_twist(Deformation::Kappa, &Indices::new(Some(1), None, Some(3)), N).unwrap();
        let o = check_normalization(&k);
        assert!(o.passed());
        assert_eq!(o.exactness, Exactness::Exact);
    }

    #[test]
    fn sweedler_examples() {
        let s = sweedler_u(&theta12());
        assert!(s.u.is_one());
        assert_eq!(s.exactness, Exactness::Exact);
        let k = build_twist(Deformation::Kappa, &Indices::new(Some(1), None, Some(3)), N).unwrap();
        let s = sweedler_u(&k);
        assert!(s.u.is_one());
        assert_eq!(s.exactness, Exactness::Exact);
        for mu in 0..4 {
            assert_eq!(twisted_antipode(&k, GeneratorId::P(mu)).unwrap(), -&g(&format!("P{mu}")));
        }
    }

    #[test]
    fn inverse_twist_multiplies_to_one() {
        let k = build_twist(Deformation::Theta0iKappaBar, &Indices::kli(1, 2, 3), N).unwrap();
        assert!(check_inverse(&k).passed());
    }

    #[test]
    fn indices_parse() {
        let idx: Indices = "k=1, l=2,i=3".parse().unwrap();
        assert_eq!(idx, Indices::kli(1, 2, 3));
        assert!("k=1,x=2".parse::<Indices>().is_err());
        assert_eq!(idx.to_string(), "k=1,l=2,i=3");
    }
}
