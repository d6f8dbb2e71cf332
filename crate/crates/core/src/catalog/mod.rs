//! Closed-form coproducts and space-time brackets, kept as expression trees
//! and evaluated on demand for comparison with engine results.

pub mod expr;
mod entries;

use std::sync::OnceLock;

use serde::Serialize;
use serde_json::json;

use crate::algebra::{AlgebraKind, GeneratorId};
use crate::error::Error;
use crate::hopf::{Deformation, Indices};
use crate::series::FormalParameter;
use crate::star::CommutatorTable;
use crate::tensor::TensorElement;

use expr::{Env, GenPat, Idx, SpaceExpr, TensorExpr};

/// Galilei name of a generalized deformation.
pub fn galilei_id(d: Deformation) -> Option<&'static str> {
    match d {
        Deformation::ThetaKlKappa => Some("xi_kl+lambda"),
        Deformation::Theta0iKappaHat => Some("xi_0i+lambda_hat"),
        Deformation::Theta0iKappaBar => Some("xi_0i+lambda_bar"),
        _ => None,
    }
}

fn family(g: &GenPat) -> &'static str {
    match g {
        GenPat::P(_) => "P",
        GenPat::M(..) => "M",
        GenPat::Pi(Idx::Zero) => "Pi0",
        GenPat::Pi(_) => "Pi",
        GenPat::K(..) => "K",
        GenPat::V(_) => "V",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CatalogEntry {
    pub id: String,
    pub algebra: AlgebraKind,
    pub deformation: Deformation,
    pub generator: GenPat,
    pub formula: TensorExpr,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl CatalogEntry {
    pub fn new(
        algebra: AlgebraKind,
        deformation: Deformation,
        generator: GenPat,
        formula: TensorExpr,
        note: Option<&'static str>,
    ) -> Self {
        let dname = match algebra {
            AlgebraKind::Galilei => galilei_id(deformation).unwrap_or(deformation.id()).to_string(),
            _ => deformation.id().to_string(),
        };
        let prefix = if algebra == AlgebraKind::Galilei { "galilei.coproduct" } else { "coproduct" };
        CatalogEntry {
            id: format!("{prefix}.{dname}.{}", family(&generator)),
            algebra,
            deformation,
            generator,
            formula,
            note,
        }
    }

    /// Free-index binding if `g` fits the pattern.
    pub fn bind(&self, g: GeneratorId) -> Option<(Option<u8>, Option<u8>)> {
        let fix = |idx: Idx, v: u8| match idx {
            Idx::Zero => (v == 0).then_some(None),
            _ => Some(Some(v)),
        };
        match (self.generator, g) {
            (GenPat::P(a), GeneratorId::P(x)) | (GenPat::Pi(a), GeneratorId::Pi(x)) | (GenPat::V(a), GeneratorId::V(x)) => {
                fix(a, x).map(|m| (m, None))
            }
            (GenPat::M(..), GeneratorId::M(x, y)) | (GenPat::K(..), GeneratorId::K(x, y)) => Some((Some(x), Some(y))),
            _ => None,
        }
    }

    pub fn evaluate(&self, g: GeneratorId, idx: &Indices, order: u32) -> Result<TensorElement, Error> {
        let (mu, nu) = self
            .bind(g)
            .ok_or_else(|| Error::MissingCatalogEntry(format!("{g} in {}", self.id)))?;
        let idx = self.deformation.validate(idx)?;
        let env = Env { mu, nu, k: idx.k, l: idx.l, i: idx.i };
        self.formula.eval(self.algebra, &env, order)
    }

    /// Copy with the sign of summand `j` reversed.
    pub fn with_flipped_summand(&self, j: usize) -> CatalogEntry {
        let terms = self
            .formula
            .summands()
            .into_iter()
            .enumerate()
            .map(|(n, t)| {
                if n == j {
                    TensorExpr::Scale(expr::Scalar::Int(-1), Box::new(t.clone()))
                } else {
                    t.clone()
                }
            })
            .collect();
        CatalogEntry { formula: TensorExpr::Sum(terms), ..self.clone() }
    }

    pub fn rendered(&self) -> String {
        format!("Δ({}) = {}", self.generator, self.formula)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SpacetimeEntry {
    pub id: String,
    pub deformation: Deformation,
    /// `[x₀, x_a]` with `a` bound to μ.
    pub time_space: SpaceExpr,
    /// `[x_a, x_b]` with `a, b` bound to μ, ν.
    pub space_space: SpaceExpr,
}

impl SpacetimeEntry {
    pub fn new(deformation: Deformation, time_space: SpaceExpr, space_space: SpaceExpr) -> Self {
        SpacetimeEntry { id: format!("spacetime.{}", deformation.id()), deformation, time_space, space_space }
    }

    pub fn table(&self, idx: &Indices, order: u32) -> Result<CommutatorTable, Error> {
        table_from(&self.time_space, &self.space_space, idx, order)
    }
}

fn table_from(ts: &SpaceExpr, ss: &SpaceExpr, idx: &Indices, order: u32) -> Result<CommutatorTable, Error> {
    CommutatorTable::try_from_fn(|mu, nu| {
        let env = |a: u8, b: Option<u8>| Env { mu: Some(a), nu: b, k: idx.k, l: idx.l, i: idx.i };
        match (mu, nu) {
            _ if mu == nu => Ok(crate::star::PolyFunction::zero(order)),
            (0, a) => ts.eval(&env(a, None), order),
            (a, 0) => Ok(-&ts.eval(&env(a, None), order)?),
            (a, b) => ss.eval(&env(a, Some(b)), order),
        }
    })
}

pub fn coproduct_entries() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(entries::coproducts)
}

pub fn spacetime_entries() -> &'static [SpacetimeEntry] {
    static CELL: OnceLock<Vec<SpacetimeEntry>> = OnceLock::new();
    CELL.get_or_init(entries::spacetimes)
}

pub fn find_coproduct(kind: AlgebraKind, d: Deformation, g: GeneratorId) -> Result<&'static CatalogEntry, Error> {
    coproduct_entries()
        .iter()
        .find(|e| e.algebra == kind && e.deformation == d && e.bind(g).is_some())
        .ok_or_else(|| Error::MissingCatalogEntry(format!("Δ({g}) under {d} in {kind:?}")))
}

pub fn catalog_coproduct(
    kind: AlgebraKind,
    d: Deformation,
    g: GeneratorId,
    idx: &Indices,
    order: u32,
) -> Result<TensorElement, Error> {
    find_coproduct(kind, d, g)?.evaluate(g, idx, order)
}

/// The generalized entry a deformation's table comes from, plus the
/// parameter to switch off for a single-parameter limit.
fn spacetime_source(d: Deformation) -> (Deformation, Option<FormalParameter>) {
    match d {
        Deformation::ThetaKl => (Deformation::ThetaKlKappa, Some(FormalParameter::InvKappa)),
        Deformation::Kappa => (Deformation::ThetaKlKappa, Some(FormalParameter::ThetaKl)),
        Deformation::Theta0i => (Deformation::Theta0iKappaHat, Some(FormalParameter::InvKappaHat)),
        Deformation::KappaHat => (Deformation::Theta0iKappaHat, Some(FormalParameter::Theta0i)),
        Deformation::KappaBar => (Deformation::Theta0iKappaBar, Some(FormalParameter::Theta0i)),
        d => (d, None),
    }
}

/// Printed commutator table; basic deformations use the matching limit of a
/// generalized table.
pub fn catalog_spacetime(d: Deformation, idx: &Indices, order: u32) -> Result<CommutatorTable, Error> {
    let idx = d.validate(idx)?;
    let (src, off) = spacetime_source(d);
    let e = spacetime_entries()
        .iter()
        .find(|e| e.deformation == src)
        .ok_or_else(|| Error::MissingCatalogEntry(format!("space-time of {d}")))?;
    match off {
        None => e.table(&idx, order),
        Some(p) => table_from(&e.time_space.without(p), &e.space_space.without(p), &idx, order),
    }
}

/// Residual `computed − expected`; empty means a match.
#[derive(Clone, Debug)]
pub struct CatalogDiff {
    pub residual: TensorElement,
}

impl CatalogDiff {
    pub fn is_match(&self) -> bool {
        self.residual.is_zero()
    }

    pub fn offending_terms(&self) -> Vec<String> {
        self.residual.term_strings()
    }
}

pub fn compare_to_catalog(
    computed: &TensorElement,
    entry: &CatalogEntry,
    g: GeneratorId,
    idx: &Indices,
    order: u32,
) -> Result<CatalogDiff, Error> {
    let expected = entry.evaluate(g, idx, order)?;
    Ok(CatalogDiff { residual: computed - &expected })
}

/// Every entry as JSON, for audit.
pub fn dump() -> serde_json::Value {
    let coproducts: Vec<_> = coproduct_entries()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "algebra": e.algebra,
                "deformation": galilei_id(e.deformation).filter(|_| e.algebra == AlgebraKind::Galilei).unwrap_or(e.deformation.id()),
                "generator": e.generator.to_string(),
                "formula": e.rendered(),
                "note": e.note,
                "tree": e,
            })
        })
        .collect();
    let spacetimes: Vec<_> = spacetime_entries()
        .iter()
        .map(|e| {
            json!({
                "id": e.id,
                "deformation": e.deformation.id(),
                "[x_0, x_a]": e.time_space.to_string().replace('μ', "a"),
                "[x_a, x_b]": e.space_space.to_string().replace('μ', "a").replace('ν', "b"),
                "tree": e,
            })
        })
        .collect();
    json!({ "coproducts": coproducts, "spacetimes": spacetimes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::UeaElement;
    use crate::series::{GaussianRational, LaurentSeries};

    const N: u32 = 4;

    fn gid(s: &str) -> GeneratorId {
        s.parse().unwrap()
    }

    fn u(kind: AlgebraKind, s: &str) -> UeaElement {
        UeaElement::generator(kind, gid(s), N).unwrap()
    }

    #[test]
    fn theta_p_is_primitive() {
        let idx = Indices::new(Some(1), Some(2), None);
        let t = catalog_coproduct(AlgebraKind::Poincare, Deformation::ThetaKl, gid("P2"), &idx, N).unwrap();
        let p = u(AlgebraKind::Poincare, "P2");
        assert_eq!(t, TensorElement::perp(&p, &UeaElement::one(AlgebraKind::Poincare, N)));
    }

    #[test]
    fn theta_m13() {
        let idx = Indices::new(Some(1), Some(2), None);
        let t = catalog_coproduct(AlgebraKind::Poincare, Deformation::ThetaKl, gid("M13"), &idx, N).unwrap();
        let one = UeaElement::one(AlgebraKind::Poincare, N);
        let th = LaurentSeries::param(FormalParameter::ThetaKl, N);
        let want = &TensorElement::perp(&u(AlgebraKind::Poincare, "M13"), &one)
            + &TensorElement::wedge(&u(AlgebraKind::Poincare, "P2"), &u(AlgebraKind::Poincare, "P3")).scale_series(&th);
        assert_eq!(t, want);
    }

    #[test]
    fn theta_kappa_p0_taylor() {
        let k = AlgebraKind::Poincare;
        let idx = Indices::kli(1, 2, 3);
        let t = catalog_coproduct(k, Deformation::ThetaKlKappa, gid("P0"), &idx, 3).unwrap();
        let h = LaurentSeries::param(FormalParameter::InvKappa, 3).scale(&GaussianRational::ratio(1, 2));
        let p1 = UeaElement::generator(k, gid("P1"), 3).unwrap();
        let p0 = UeaElement::generator(k, gid("P0"), 3).unwrap();
        let p3 = UeaElement::generator(k, gid("P3"), 3).unwrap();
        let x = p1.scale_series(&h);
        let x2 = x.mul_ref(&x);
        let sinh = &x + &x2.mul_ref(&x).scale(&GaussianRational::ratio(1, 6));
        let cosh1 = x2.scale(&GaussianRational::ratio(1, 2));
        let one = UeaElement::one(k, 3);
        let want = &(&TensorElement::perp(&p0, &one) + &TensorElement::wedge(&sinh, &p3))
            + &TensorElement::perp(&cosh1, &p0);
        assert_eq!(t, want);
    }

    #[test]
    fn galilei_pi0() {
        let k = AlgebraKind::Galilei;
        let idx = Indices::kli(1, 2, 3);
        let t = catalog_coproduct(k, Deformation::ThetaKlKappa, gid("Π0"), &idx, N).unwrap();
        let h = LaurentSeries::param(FormalParameter::InvLambda, N).scale(&GaussianRational::ratio(1, 2));
        let want = &TensorElement::perp(&u(k, "Π0"), &UeaElement::one(k, N))
            + &TensorElement::wedge(&u(k, "Π1"), &u(k, "Π3")).scale_series(&h);
        assert_eq!(t, want);
        let v = catalog_coproduct(k, Deformation::ThetaKlKappa, gid("V2"), &idx, N).unwrap();
        assert_eq!(v, TensorElement::perp(&u(k, "V2"), &UeaElement::one(k, N)));
    }

    #[test]
    fn missing_entry() {
        let idx = Indices::new(Some(1), Some(2), None);
        let e = catalog_coproduct(AlgebraKind::Galilei, Deformation::ThetaKl, gid("Π1"), &idx, N);
        assert!(matches!(e, Err(Error::MissingCatalogEntry(_))));
    }

    #[test]
    fn spacetime_examples() {
        let idx = Indices::kli(1, 2, 3);
        let t = catalog_spacetime(Deformation::ThetaKlKappa, &idx, N).unwrap();
        let ik = LaurentSeries::param(FormalParameter::InvKappa, N).scale(&GaussianRational::i());
        let x3 = crate::star::PolyFunction::coordinate(3, N);
        assert_eq!(t.get(0, 1), &x3.scale_series(&ik));
        assert!(t.get(0, 2).is_zero());
        assert!(t.is_antisymmetric());

        let idx = Indices::kli(1, 2, 3);
        let t = catalog_spacetime(Deformation::Theta0iKappaHat, &idx, N).unwrap();
        for a in 1..4 {
            for b in 1..4 {
                assert!(t.get(a, b).is_zero());
            }
        }
        let t = catalog_spacetime(Deformation::Theta0iKappaBar, &idx, N).unwrap();
        let want = crate::star::PolyFunction::constant(
            LaurentSeries::param(FormalParameter::Theta0i, N).scale(&(&GaussianRational::i() * &GaussianRational::from_int(2))),
        );
        assert_eq!(t.get(0, 3), &want);
        assert!(t.get(0, 1).is_zero());
    }

    #[test]
    fn identical_inputs_match() {
        let idx = Indices::kli(1, 2, 3);
        let e = find_coproduct(AlgebraKind::Poincare, Deformation::ThetaKlKappa, gid("M12")).unwrap();
        let t = e.evaluate(gid("M12"), &idx, N).unwrap();
        assert!(compare_to_catalog(&t, e, gid("M12"), &idx, N).unwrap().is_match());
    }

    #[test]
    fn flipped_sign_is_detected() {
        let idx = Indices::new(Some(1), Some(2), None);
        let g = gid("M13");
        let e = find_coproduct(AlgebraKind::Poincare, Deformation::ThetaKl, g).unwrap();
        let t = e.evaluate(g, &idx, N).unwrap();
        let bad = e.with_flipped_summand(2);
        let diff = compare_to_catalog(&t, &bad, g, &idx, N).unwrap();
        assert!(!diff.is_match());
        let terms = diff.offending_terms();
        assert_eq!(terms.len(), 1);
        assert!(terms[0].contains("P2 ⊗ P3"), "{terms:?}");
    }

    #[test]
    fn counit_holds_for_every_entry() {
        for e in coproduct_entries() {
            let d = e.deformation;
            let idx = d.admissible()[0];
            for g in e.algebra.spec().generators().iter().copied() {
                if e.bind(g).is_none() || find_coproduct(e.algebra, d, g).unwrap().id != e.id {
                    continue;
                }
                let t = e.evaluate(g, &idx, N).unwrap();
                let x = UeaElement::generator(e.algebra, g, N).unwrap();
                let left = t.counit_leg(0).to_uea();
                let right = t.counit_leg(1).to_uea();
                assert_eq!(left, x, "{} {g}", e.id);
                assert_eq!(right, x, "{} {g}", e.id);
            }
        }
    }

    #[test]
    fn generalized_entries_reduce_to_basic() {
        let k = AlgebraKind::Poincare;
        let idx = Indices::kli(1, 2, 3);
        let cases = [
            (Deformation::ThetaKlKappa, FormalParameter::ThetaKl, Deformation::Kappa),
            (Deformation::ThetaKlKappa, FormalParameter::InvKappa, Deformation::ThetaKl),
            (Deformation::Theta0iKappaHat, FormalParameter::Theta0i, Deformation::KappaHat),
            (Deformation::Theta0iKappaHat, FormalParameter::InvKappaHat, Deformation::Theta0i),
            (Deformation::Theta0iKappaBar, FormalParameter::Theta0i, Deformation::KappaBar),
            (Deformation::Theta0iKappaBar, FormalParameter::InvKappaBar, Deformation::Theta0i),
        ];
        for (gen, p, basic) in cases {
            let sub = basic.validate(&idx.restrict(basic)).unwrap();
            for g in k.spec().generators().iter().copied() {
                let a = catalog_coproduct(k, gen, g, &idx, N).unwrap().map_coefficients(|c| c.set_zero(p));
                let b = catalog_coproduct(k, basic, g, &sub, N).unwrap();
                assert_eq!(a, b, "{gen} with {p:?} off, {g}");
            }
        }
    }

    #[test]
    fn dump_lists_everything() {
        let v = dump();
        assert_eq!(v["coproducts"].as_array().unwrap().len(), coproduct_entries().len());
        assert_eq!(v["spacetimes"].as_array().unwrap().len(), 3);
        let ids: Vec<&str> = coproduct_entries().iter().map(|e| e.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), ids.len());
    }
}
