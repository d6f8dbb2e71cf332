//! Nonrelativistic contraction of the twisted Poincaré Hopf structures.
//!
//! Poincaré elements are first rewritten in a PBW basis whose generator order
//! matches the Galilei one (P₀…P₃, M₁₂, M₁₃, M₂₃, M₁₀, M₂₀, M₃₀). Letters are
//! then replaced position by position with `P₀ = Π₀/c`, `Pᵢ = Πᵢ`,
//! `M_ij = K_ij`, `M_i0 = c·Vᵢ`, and the parameters are rewritten before
//! taking `c → ∞`.

use std::collections::HashMap;

use crate::algebra::{build_galilei, AlgebraKind, Combination, GeneratorId, LieAlgebraSpec, UeaElement, Word};
use crate::catalog::{compare_to_catalog, find_coproduct, CatalogDiff};
use crate::error::Error;
use crate::hopf::{build_twist, twisted_antipode, Deformation, Exactness, HopfStructure, Indices};
use crate::series::{FormalParameter, GaussianRational, LaurentSeries, Monomial};
use crate::tensor::TensorElement;

/// Generator and parameter substitution.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    scale_kappa: bool,
}

impl Default for ContractionMap {
    fn default() -> Self {
        Self::standard()
    }
}

fn c_pow(p: i8) -> Monomial {
    Monomial::power(FormalParameter::InvC, -p).expect("1/c may carry any exponent")
}

fn p1(p: FormalParameter) -> Monomial {
    Monomial::power(p, 1).expect("positive exponent")
}

impl ContractionMap {
    pub fn standard() -> Self {
        ContractionMap { scale_kappa: true }
    }

    /// Control map with `λ = κ`: no `1/c` attached to `1/κ`.
    pub fn unscaled() -> Self {
        ContractionMap { scale_kappa: false }
    }

    /// Image of a Poincaré parameter.
    pub fn parameter_image(&self, p: FormalParameter) -> Monomial {
        use FormalParameter as F;
        match p {
            F::InvKappa if self.scale_kappa => p1(F::InvLambda).mul(&c_pow(-1)),
            F::InvKappa => p1(F::InvLambda),
            F::InvKappaHat => p1(F::InvLambdaHat).mul(&c_pow(1)),
            F::InvKappaBar => p1(F::InvLambdaBar),
            F::ThetaKl => p1(F::XiKl),
            F::Theta0i => p1(F::Xi0i).mul(&c_pow(1)),
            other => Monomial::power(other, 1).expect("positive exponent"),
        }
    }

    /// Power of `c` produced by one letter at a contraction-basis position.
    fn letter_weight(pos: u8) -> i8 {
        match AlgebraKind::PoincareContractionBasis.spec().generator(pos) {
            GeneratorId::P(0) => -1,
            GeneratorId::M(_, 0) => 1,
            _ => 0,
        }
    }

    /// Power of `c` with `G = c^w · X` for the Galilei generator at `pos`.
    pub fn generator_weight(pos: u8) -> i8 {
        -Self::letter_weight(pos)
    }

    fn substitute_word(&self, w: &Word, c: &LaurentSeries) -> (Word, LaurentSeries) {
        let weight: i8 = w.iter().map(|&p| Self::letter_weight(p)).sum();
        let coef = c.rewrite_params(|p| self.parameter_image(p)).mul_monomial(&c_pow(weight));
        (w.clone(), coef)
    }

    /// Substitute an element already written in the contraction basis.
    fn substitute_rebased(&self, u: &UeaElement) -> UeaElement {
        let mut out = UeaElement::zero(AlgebraKind::Galilei, u.order());
        for (w, c) in u.terms() {
            let (w, c) = self.substitute_word(w, c);
            out = &out + &UeaElement::from_word(AlgebraKind::Galilei, w, c);
        }
        out
    }

    /// Poincaré element to Galilei generators with explicit `c` dependence.
    pub fn substitute_uea(&self, u: &UeaElement) -> UeaElement {
        self.substitute_rebased(&rebase(u, &mut HashMap::new()))
    }

    /// Leg-wise substitution of a Poincaré tensor.
    pub fn substitute_tensor(&self, t: &TensorElement) -> TensorElement {
        let mut cache = HashMap::new();
        let mut out = TensorElement::zero(AlgebraKind::Galilei, t.order(), t.rank());
        for (legs, c) in t.terms() {
            let parts: Vec<UeaElement> = legs
                .iter()
                .map(|w| {
                    let single = UeaElement::from_word(AlgebraKind::Poincare, w.clone(), LaurentSeries::one(t.order()));
                    self.substitute_rebased(&rebase(&single, &mut cache))
                })
                .collect();
            let refs: Vec<&UeaElement> = parts.iter().collect();
            let coef = c.rewrite_params(|p| self.parameter_image(p));
            out = &out + &TensorElement::pure(&refs).scale_series(&coef);
        }
        if t.is_truncated() {
            out.mark_truncated();
        }
        out
    }
}

/// Rewrite a Poincaré element in the contraction basis.
fn rebase(u: &UeaElement, cache: &mut HashMap<Word, UeaElement>) -> UeaElement {
    let target = AlgebraKind::PoincareContractionBasis;
    let src = AlgebraKind::Poincare.spec();
    let mut out = UeaElement::zero(target, u.order());
    for (w, c) in u.terms() {
        let base = cache.entry(w.clone()).or_insert_with(|| {
            let mut acc = UeaElement::one(target, u.order());
            for &p in w.iter() {
                let g = UeaElement::generator(target, src.generator(p), u.order()).expect("same generator set");
                acc = acc.mul_ref(&g);
            }
            acc
        });
        out = &out + &base.scale_series(c);
    }
    out
}

fn limit_tensor(t: &TensorElement, generator: GeneratorId) -> Result<TensorElement, Error> {
    t.try_map_coefficients(|c| c.limit_c_to_infinity())
        .map_err(|source| Error::ContractionDivergence { generator: generator.to_string(), source })
}

fn limit_uea(u: &UeaElement, generator: GeneratorId) -> Result<UeaElement, Error> {
    let mut out = UeaElement::zero(u.kind(), u.order());
    for (w, c) in u.terms() {
        let c = c
            .limit_c_to_infinity()
            .map_err(|source| Error::ContractionDivergence { generator: generator.to_string(), source })?;
        out = &out + &UeaElement::from_word(u.kind(), w.clone(), c);
    }
    Ok(out)
}

/// `c^w` as a series.
fn c_factor(w: i8, order: u32) -> LaurentSeries {
    LaurentSeries::term(GaussianRational::from_int(1), c_pow(w), order)
}

/// Contract the Poincaré brackets; the limit must exist.
pub fn contract_algebra() -> Result<LieAlgebraSpec, Error> {
    let src = AlgebraKind::PoincareContractionBasis.spec();
    let gal = build_galilei();
    let n = src.dim() as u8;
    let mut table: Vec<Vec<Vec<(GeneratorId, GaussianRational)>>> = Vec::new();
    for a in 0..n {
        let mut row = Vec::new();
        for b in 0..n {
            let mut entry = Vec::new();
            for (k, f) in src.bracket(a, b) {
                let w = ContractionMap::generator_weight(a) + ContractionMap::generator_weight(b)
                    - ContractionMap::generator_weight(*k);
                let s = c_factor(w, 0).scale(f);
                let lim = s.limit_c_to_infinity().map_err(|source| Error::ContractionDivergence {
                    generator: format!("[{}, {}]", gal.generator(a), gal.generator(b)),
                    source,
                })?;
                let coef = lim.constant_term();
                if !num_traits::Zero::is_zero(&coef) {
                    entry.push((gal.generator(*k), coef));
                }
            }
            row.push(entry);
        }
        table.push(row);
    }
    let gens = gal.generators().to_vec();
    let pos = |g: GeneratorId| gens.iter().position(|&h| h == g);
    Ok(LieAlgebraSpec::from_bracket(AlgebraKind::Galilei, gens.clone(), |x, y| match (pos(x), pos(y)) {
        (Some(a), Some(b)) => table[a][b].clone(),
        _ => Vec::new(),
    }))
}

/// Bracket entries where two tables disagree.
pub fn algebra_diff(a: &LieAlgebraSpec, b: &LieAlgebraSpec) -> Vec<String> {
    let fmt = |spec: &LieAlgebraSpec, c: &Combination| {
        if c.is_empty() {
            return "0".to_string();
        }
        c.iter().map(|(g, k)| format!("{k}·{}", spec.generator(*g))).collect::<Vec<_>>().join(" + ")
    };
    let mut out = Vec::new();
    for x in 0..a.dim() as u8 {
        for y in 0..a.dim() as u8 {
            if a.bracket(x, y) != b.bracket(x, y) {
                out.push(format!(
                    "[{}, {}]: {} vs {}",
                    a.generator(x),
                    a.generator(y),
                    fmt(a, &a.bracket(x, y).to_vec()),
                    fmt(b, &b.bracket(x, y).to_vec())
                ));
            }
        }
    }
    out
}

/// Contract every coproduct of a Poincaré Hopf structure.
pub fn contract_structure(map: &ContractionMap, h: &HopfStructure) -> Result<HopfStructure, Error> {
    let order = h.order();
    let cb = AlgebraKind::PoincareContractionBasis.spec();
    let gal = AlgebraKind::Galilei.spec();
    let mut coproducts = Vec::new();
    let mut exactness = Vec::new();
    for pos in 0..gal.dim() as u8 {
        let x = cb.generator(pos);
        let delta = h.coproduct(x)?;
        let scaled = map
            .substitute_tensor(&delta)
            .scale_series(&c_factor(ContractionMap::generator_weight(pos), order));
        coproducts.push(limit_tensor(&scaled, gal.generator(pos))?);
        let (src, _) = AlgebraKind::Poincare.spec().resolve(x).expect("known generator");
        exactness.push(h.exactness_at(src));
    }
    Ok(HopfStructure::from_coproducts(AlgebraKind::Galilei, order, coproducts, exactness))
}

/// Outcome of contracting one generalized deformation.
#[derive(Clone, Debug)]
pub struct ContractionResult {
    pub deformation: Deformation,
    pub indices: Indices,
    pub hopf: HopfStructure,
    /// Per Galilei generator, the catalog id and the residual against it.
    pub diffs: Vec<(GeneratorId, String, CatalogDiff)>,
    pub antipodes: Vec<(GeneratorId, UeaElement)>,
    pub exactness: Exactness,
}

impl ContractionResult {
    pub fn matches_catalog(&self) -> bool {
        self.diffs.iter().all(|(_, _, d)| d.is_match())
    }
}

pub fn contract_hopf(d: Deformation, idx: &Indices, order: u32) -> Result<ContractionResult, Error> {
    contract_hopf_with(&ContractionMap::standard(), d, idx, order)
}

pub fn contract_hopf_with(
    map: &ContractionMap,
    d: Deformation,
    idx: &Indices,
    order: u32,
) -> Result<ContractionResult, Error> {
    if !d.is_generalized() {
        return Err(Error::Config(format!("no nonrelativistic counterpart for {d}")));
    }
    let idx = d.validate(idx)?;
    let f = build_twist(d, &idx, order)?;
    let h = HopfStructure::classical(AlgebraKind::Poincare, order).twisted(&f);
    let gal_h = contract_structure(map, &h)?;
    let gal = AlgebraKind::Galilei.spec();
    let cb = AlgebraKind::PoincareContractionBasis.spec();
    let mut diffs = Vec::new();
    let mut antipodes = Vec::new();
    let mut exactness = Exactness::Exact;
    for pos in 0..gal.dim() as u8 {
        let g = gal.generator(pos);
        let entry = find_coproduct(AlgebraKind::Galilei, d, g)?;
        let diff = compare_to_catalog(gal_h.coproduct_at(pos), entry, g, &idx, order)?;
        diffs.push((g, entry.id.clone(), diff));
        exactness = exactness.and(gal_h.exactness_at(pos));
        let s = twisted_antipode(&f, cb.generator(pos))?;
        let s = map
            .substitute_uea(&s)
            .scale_series(&c_factor(ContractionMap::generator_weight(pos), order));
        antipodes.push((g, limit_uea(&s, g)?));
    }
    Ok(ContractionResult { deformation: d, indices: idx, hopf: gal_h, diffs, antipodes, exactness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_galilei;

    const N: u32 = 4;

    fn gid(s: &str) -> GeneratorId {
        s.parse().unwrap()
    }

    #[test]
    fn substitution_examples() {
        let m = ContractionMap::standard();
        let p0 = UeaElement::generator(AlgebraKind::Poincare, gid("P0"), N).unwrap();
        let s = m.substitute_uea(&p0);
        let pi0 = UeaElement::generator(AlgebraKind::Galilei, gid("Π0"), N).unwrap();
        assert_eq!(s, pi0.scale_series(&c_factor(-1, N)));

        let half = GaussianRational::ratio(1, 2);
        let x = UeaElement::generator(AlgebraKind::Poincare, gid("M30"), N)
            .unwrap()
            .scale_series(&LaurentSeries::param(FormalParameter::InvKappa, N).scale(&half));
        let v3 = UeaElement::generator(AlgebraKind::Galilei, gid("V3"), N).unwrap();
        assert_eq!(
            m.substitute_uea(&x),
            v3.scale_series(&LaurentSeries::param(FormalParameter::InvLambda, N).scale(&half))
        );

        let a = UeaElement::generator(AlgebraKind::Poincare, gid("P0"), N).unwrap();
        let b = UeaElement::generator(AlgebraKind::Poincare, gid("P2"), N).unwrap();
        let w = TensorElement::wedge(&a, &b).scale_series(&LaurentSeries::param(FormalParameter::Theta0i, N));
        let ga = UeaElement::generator(AlgebraKind::Galilei, gid("Π0"), N).unwrap();
        let gb = UeaElement::generator(AlgebraKind::Galilei, gid("Π2"), N).unwrap();
        assert_eq!(
            m.substitute_tensor(&w),
            TensorElement::wedge(&ga, &gb).scale_series(&LaurentSeries::param(FormalParameter::Xi0i, N))
        );
    }

    #[test]
    fn contracted_algebra_is_galilei() {
        let c = contract_algebra().unwrap();
        assert!(algebra_diff(&c, &build_galilei()).is_empty());
        assert_eq!(c.generator(9), gid("V3"));
    }

    #[test]
    fn theta_kappa_contraction() {
        let idx = Indices::kli(1, 2, 3);
        let r = contract_hopf(Deformation::ThetaKlKappa, &idx, N).unwrap();
        let (_, id, d) = &r.diffs[0];
        assert_eq!(id, "galilei.coproduct.xi_kl+lambda.Pi0");
        assert!(d.is_match(), "{:?}", d.offending_terms());
        let v = r.diffs.iter().find(|(g, _, _)| *g == gid("V1")).unwrap();
        assert!(v.2.is_match());
        for (g, s) in &r.antipodes {
            let want = -&UeaElement::generator(AlgebraKind::Galilei, *g, N).unwrap();
            assert_eq!(s, &want, "{g}");
        }
    }

    #[test]
    fn unscaled_control_diverges_on_pi0() {
        let idx = Indices::kli(1, 2, 3);
        let e = contract_hopf_with(&ContractionMap::unscaled(), Deformation::ThetaKlKappa, &idx, N).unwrap_err();
        match e {
            Error::ContractionDivergence { generator, source } => {
                assert_eq!(generator, "Π0");
                assert!(matches!(source, crate::error::SeriesError::Divergence { c_power: 1, .. }));
            }
            other => panic!("{other}"),
        }
    }
}
