//! Expression trees for closed-form coproducts and space-time brackets.

use std::fmt;

use serde::Serialize;

use crate::algebra::{delta, eta, AlgebraKind, GeneratorId, UeaElement};
use crate::error::Error;
use crate::series::{FormalParameter, GaussianRational, LaurentSeries};
use crate::star::PolyFunction;
use crate::tensor::TensorElement;

/// Index symbols appearing in the formulas. `Mu`/`Nu` are the free indices
/// of the generator (`a`, `b` on the Galilei side).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Idx {
    Mu,
    Nu,
    K,
    L,
    I,
    Zero,
}

impl fmt::Display for Idx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Idx::Mu => "μ",
            Idx::Nu => "ν",
            Idx::K => "k",
            Idx::L => "l",
            Idx::I => "i",
            Idx::Zero => "0",
        })
    }
}

/// Concrete values of the index symbols.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Env {
    pub mu: Option<u8>,
    pub nu: Option<u8>,
    pub k: Option<u8>,
    pub l: Option<u8>,
    pub i: Option<u8>,
}

impl Env {
    fn get(&self, idx: Idx) -> Result<u8, Error> {
        let v = match idx {
            Idx::Mu => self.mu,
            Idx::Nu => self.nu,
            Idx::K => self.k,
            Idx::L => self.l,
            Idx::I => self.i,
            Idx::Zero => Some(0),
        };
        v.ok_or_else(|| Error::Config(format!("index {idx} is unbound")))
    }
}

/// The two ψ/χ conventions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PsiChiVariant {
    /// `ψ_k = δ_νk δ_0μ − δ_μk δ_0ν`, `χ_k = δ_νk δ_iμ − δ_μk δ_iν`.
    DeltaForm,
    /// `ψ_λ = η_νλ η_lμ − η_μλ η_lν`, `χ_λ = η_νλ η_kμ − η_μλ η_kν`.
    EtaForm,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Scalar {
    Int(i64),
    Ratio(i64, i64),
    I,
    Param(FormalParameter),
    Eta(Idx, Idx),
    Delta(Idx, Idx),
    Psi(PsiChiVariant, Idx),
    Chi(PsiChiVariant, Idx),
    Mul(Vec<Scalar>),
    Add(Vec<Scalar>),
    Neg(Box<Scalar>),
}

impl Scalar {
    /// ψ or χ evaluated to an integer.
    pub fn psi_chi(psi: bool, variant: PsiChiVariant, lambda: Idx, env: &Env) -> Result<i64, Error> {
        let mu = env.get(Idx::Mu)?;
        let nu = env.get(Idx::Nu)?;
        let lam = env.get(lambda)?;
        Ok(match variant {
            PsiChiVariant::DeltaForm => {
                let other = if psi { 0 } else { env.get(Idx::I)? };
                delta(nu, lam) * delta(other, mu) - delta(mu, lam) * delta(other, nu)
            }
            PsiChiVariant::EtaForm => {
                let other = if psi { env.get(Idx::L)? } else { env.get(Idx::K)? };
                eta(nu, lam) * eta(other, mu) - eta(mu, lam) * eta(other, nu)
            }
        })
    }

    pub fn mentions(&self, p: FormalParameter) -> bool {
        match self {
            Scalar::Param(q) => *q == p,
            Scalar::Mul(v) | Scalar::Add(v) => v.iter().any(|s| s.mentions(p)),
            Scalar::Neg(s) => s.mentions(p),
            _ => false,
        }
    }

    pub fn eval(&self, env: &Env, order: u32) -> Result<LaurentSeries, Error> {
        let k = |n: i64| LaurentSeries::constant(GaussianRational::from_int(n), order);
        Ok(match self {
            Scalar::Int(n) => k(*n),
            Scalar::Ratio(a, b) => LaurentSeries::constant(GaussianRational::ratio(*a, *b), order),
            Scalar::I => LaurentSeries::constant(GaussianRational::i(), order),
            Scalar::Param(p) => LaurentSeries::param(*p, order),
            Scalar::Eta(a, b) => k(eta(env.get(*a)?, env.get(*b)?)),
            Scalar::Delta(a, b) => k(delta(env.get(*a)?, env.get(*b)?)),
            Scalar::Psi(v, l) => k(Self::psi_chi(true, *v, *l, env)?),
            Scalar::Chi(v, l) => k(Self::psi_chi(false, *v, *l, env)?),
            Scalar::Mul(fs) => {
                let mut acc = LaurentSeries::one(order);
                for f in fs {
                    acc = &acc * &f.eval(env, order)?;
                }
                acc
            }
            Scalar::Add(ts) => {
                let mut acc = LaurentSeries::zero(order);
                for t in ts {
                    acc = &acc + &t.eval(env, order)?;
                }
                acc
            }
            Scalar::Neg(s) => -&s.eval(env, order)?,
        })
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(n) => write!(f, "{n}"),
            Scalar::Ratio(a, b) => write!(f, "({a}/{b})"),
            Scalar::I => f.write_str("i"),
            Scalar::Param(p) => f.write_str(p.symbol()),
            Scalar::Eta(a, b) => write!(f, "η_{a}{b}"),
            Scalar::Delta(a, b) => write!(f, "δ_{a}{b}"),
            Scalar::Psi(v, l) => write!(f, "ψ{}_{l}", variant_mark(*v)),
            Scalar::Chi(v, l) => write!(f, "χ{}_{l}", variant_mark(*v)),
            Scalar::Mul(fs) => {
                let parts: Vec<String> = fs.iter().map(|s| s.to_string()).collect();
                f.write_str(&parts.join("·"))
            }
            Scalar::Add(ts) => {
                let parts: Vec<String> = ts.iter().map(|s| s.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            Scalar::Neg(s) => write!(f, "-{s}"),
        }
    }
}

fn variant_mark(v: PsiChiVariant) -> &'static str {
    match v {
        PsiChiVariant::DeltaForm => "",
        PsiChiVariant::EtaForm => "ᵑ",
    }
}

/// A generator with symbolic indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GenPat {
    P(Idx),
    M(Idx, Idx),
    Pi(Idx),
    K(Idx, Idx),
    V(Idx),
}

impl GenPat {
    pub fn eval(&self, env: &Env) -> Result<GeneratorId, Error> {
        Ok(match self {
            GenPat::P(a) => GeneratorId::P(env.get(*a)?),
            GenPat::M(a, b) => GeneratorId::M(env.get(*a)?, env.get(*b)?),
            GenPat::Pi(a) => GeneratorId::Pi(env.get(*a)?),
            GenPat::K(a, b) => GeneratorId::K(env.get(*a)?, env.get(*b)?),
            GenPat::V(a) => GeneratorId::V(env.get(*a)?),
        })
    }

    fn element(&self, kind: AlgebraKind, env: &Env, order: u32) -> Result<UeaElement, Error> {
        UeaElement::generator(kind, self.eval(env)?, order)
    }
}

impl fmt::Display for GenPat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenPat::P(a) => write!(f, "P_{a}"),
            GenPat::M(a, b) => write!(f, "M_{a}{b}"),
            GenPat::Pi(a) => write!(f, "Π_{a}"),
            GenPat::K(a, b) => write!(f, "K_{a}{b}"),
            GenPat::V(a) => write!(f, "V_{a}"),
        }
    }
}

/// Power series of one generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FuncKind {
    Sinh,
    CoshMinusOne,
    Sin,
    CosMinusOne,
}

impl FuncKind {
    /// Taylor coefficient of `xⁿ`.
    pub fn taylor(self, n: u32) -> GaussianRational {
        let fact: i64 = (1..=i64::from(n)).product();
        let odd = n % 2 == 1;
        let sign = if (n / 2).is_multiple_of(2) { 1 } else { -1 };
        match self {
            FuncKind::Sinh if odd => GaussianRational::ratio(1, fact),
            FuncKind::CoshMinusOne if !odd && n > 0 => GaussianRational::ratio(1, fact),
            FuncKind::Sin if odd => GaussianRational::ratio(sign, fact),
            FuncKind::CosMinusOne if !odd && n > 0 => GaussianRational::ratio(sign, fact),
            _ => GaussianRational::from_int(0),
        }
    }

    fn name(self) -> &'static str {
        match self {
            FuncKind::Sinh => "sinh",
            FuncKind::CoshMinusOne => "cosh",
            FuncKind::Sin => "sin",
            FuncKind::CosMinusOne => "cos",
        }
    }

    fn minus_one(self) -> bool {
        matches!(self, FuncKind::CoshMinusOne | FuncKind::CosMinusOne)
    }
}

/// Expand `f(x)` until the powers of `x` are truncated away.
pub fn expand_function(kind: FuncKind, x: &UeaElement) -> UeaElement {
    let mut out = UeaElement::zero(x.kind(), x.order());
    let mut power = UeaElement::one(x.kind(), x.order());
    let mut n = 0;
    loop {
        n += 1;
        power = power.mul_ref(x);
        if power.is_zero() {
            return out;
        }
        out = &out + &power.scale(&kind.taylor(n));
    }
}

/// One tensor leg.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Leg {
    Gen(GenPat),
    One,
    Scale(Scalar, Box<Leg>),
    Sum(Vec<Leg>),
    Prod(Vec<Leg>),
    Comm(Box<Leg>, Box<Leg>),
    Func(FuncKind, Scalar, GenPat),
}

impl Leg {
    pub fn eval(&self, kind: AlgebraKind, env: &Env, order: u32) -> Result<UeaElement, Error> {
        Ok(match self {
            Leg::Gen(g) => g.element(kind, env, order)?,
            Leg::One => UeaElement::one(kind, order),
            Leg::Scale(s, l) => l.eval(kind, env, order)?.scale_series(&s.eval(env, order)?),
            Leg::Sum(ls) => {
                let mut acc = UeaElement::zero(kind, order);
                for l in ls {
                    acc = &acc + &l.eval(kind, env, order)?;
                }
                acc
            }
            Leg::Prod(ls) => {
                let mut acc = UeaElement::one(kind, order);
                for l in ls {
                    acc = acc.mul_ref(&l.eval(kind, env, order)?);
                }
                acc
            }
            Leg::Comm(a, b) => a.eval(kind, env, order)?.commutator(&b.eval(kind, env, order)?),
            Leg::Func(f, c, g) => {
                let x = g.element(kind, env, order)?.scale_series(&c.eval(env, order)?);
                expand_function(*f, &x)
            }
        })
    }
}

impl fmt::Display for Leg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leg::Gen(g) => write!(f, "{g}"),
            Leg::One => f.write_str("1"),
            Leg::Scale(s, l) => write!(f, "{s}·{l}"),
            Leg::Sum(ls) => {
                let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            Leg::Prod(ls) => {
                let parts: Vec<String> = ls.iter().map(|l| l.to_string()).collect();
                f.write_str(&parts.join(" "))
            }
            Leg::Comm(a, b) => write!(f, "[{a}, {b}]"),
            Leg::Func(k, c, g) => {
                if k.minus_one() {
                    write!(f, "({}({c} {g}) - 1)", k.name())
                } else {
                    write!(f, "{}({c} {g})", k.name())
                }
            }
        }
    }
}

/// A rank-2 closed form.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum TensorExpr {
    Delta0(GenPat),
    Wedge(Leg, Leg),
    Perp(Leg, Leg),
    Tensor(Leg, Leg),
    Scale(Scalar, Box<TensorExpr>),
    Sum(Vec<TensorExpr>),
}

impl TensorExpr {
    pub fn eval(&self, kind: AlgebraKind, env: &Env, order: u32) -> Result<TensorElement, Error> {
        Ok(match self {
            TensorExpr::Delta0(g) => {
                let x = g.element(kind, env, order)?;
                TensorElement::perp(&x, &UeaElement::one(kind, order))
            }
            TensorExpr::Wedge(a, b) => TensorElement::wedge(&a.eval(kind, env, order)?, &b.eval(kind, env, order)?),
            TensorExpr::Perp(a, b) => TensorElement::perp(&a.eval(kind, env, order)?, &b.eval(kind, env, order)?),
            TensorExpr::Tensor(a, b) => TensorElement::pure(&[&a.eval(kind, env, order)?, &b.eval(kind, env, order)?]),
            TensorExpr::Scale(s, t) => t.eval(kind, env, order)?.scale_series(&s.eval(env, order)?),
            TensorExpr::Sum(ts) => {
                let mut acc = TensorElement::zero(kind, order, 2);
                for t in ts {
                    acc = &acc + &t.eval(kind, env, order)?;
                }
                acc
            }
        })
    }

    /// The summands of a top-level sum.
    pub fn summands(&self) -> Vec<&TensorExpr> {
        match self {
            TensorExpr::Sum(ts) => ts.iter().collect(),
            t => vec![t],
        }
    }
}

impl fmt::Display for TensorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TensorExpr::Delta0(g) => write!(f, "Δ₀({g})"),
            TensorExpr::Wedge(a, b) => write!(f, "{a} ∧ {b}"),
            TensorExpr::Perp(a, b) => write!(f, "{a} ⊥ {b}"),
            TensorExpr::Tensor(a, b) => write!(f, "{a} ⊗ {b}"),
            TensorExpr::Scale(s, t) => write!(f, "{s}·[{t}]"),
            TensorExpr::Sum(ts) => {
                let parts: Vec<String> = ts.iter().map(|t| t.to_string()).collect();
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

/// Degree-≤1 polynomial: `Σ coefficient · (1 or x_idx)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpaceExpr(pub Vec<(Scalar, Option<Idx>)>);

impl SpaceExpr {
    pub fn eval(&self, env: &Env, order: u32) -> Result<PolyFunction, Error> {
        let mut acc = PolyFunction::zero(order);
        for (s, x) in &self.0 {
            let c = s.eval(env, order)?;
            let term = match x {
                None => PolyFunction::constant(c),
                Some(idx) => PolyFunction::coordinate(env.get(*idx)?, order).scale_series(&c),
            };
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

impl SpaceExpr {
    /// Drop the summands proportional to `p`.
    pub fn without(&self, p: FormalParameter) -> SpaceExpr {
        SpaceExpr(self.0.iter().filter(|(s, _)| !s.mentions(p)).cloned().collect())
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, x)| match x {
                None => s.to_string(),
                Some(i) => format!("{s}·x_{i}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
