use super::expr::{FuncKind, GenPat, Idx, Leg, PsiChiVariant, Scalar, SpaceExpr, TensorExpr};
use super::{CatalogEntry, SpacetimeEntry};
use crate::algebra::AlgebraKind;
use crate::hopf::Deformation;
use crate::series::FormalParameter as F;

use FuncKind::{CosMinusOne, CoshMinusOne, Sin, Sinh};
use Idx::{Mu, Nu, Zero, I, K, L};

fn leg(g: GenPat) -> Leg {
    Leg::Gen(g)
}
fn sc(s: Scalar, l: Leg) -> Leg {
    Leg::Scale(s, Box::new(l))
}
fn neg(s: Scalar) -> Scalar {
    Scalar::Neg(Box::new(s))
}
fn mul(v: Vec<Scalar>) -> Scalar {
    Scalar::Mul(v)
}
fn half(p: F) -> Scalar {
    mul(vec![Scalar::Ratio(1, 2), Scalar::Param(p)])
}
fn par(p: F) -> Scalar {
    Scalar::Param(p)
}
fn lsum(v: Vec<Leg>) -> Leg {
    Leg::Sum(v)
}
fn prod(a: Leg, b: Leg) -> Leg {
    Leg::Prod(vec![a, b])
}
fn comm(a: Leg, b: Leg) -> Leg {
    Leg::Comm(Box::new(a), Box::new(b))
}
fn func(k: FuncKind, c: Scalar, g: GenPat) -> Leg {
    Leg::Func(k, c, g)
}
fn ts(s: Scalar, t: TensorExpr) -> TensorExpr {
    TensorExpr::Scale(s, Box::new(t))
}
fn wedge(a: Leg, b: Leg) -> TensorExpr {
    TensorExpr::Wedge(a, b)
}
fn perp(a: Leg, b: Leg) -> TensorExpr {
    TensorExpr::Perp(a, b)
}
fn tens(a: Leg, b: Leg) -> TensorExpr {
    TensorExpr::Tensor(a, b)
}

type Metric = fn(Idx, Idx) -> Scalar;

fn eta_m(a: Idx, b: Idx) -> Scalar {
    Scalar::Eta(a, b)
}
fn delta_m(a: Idx, b: Idx) -> Scalar {
    Scalar::Delta(a, b)
}

/// `g_aμ X_ν − g_aν X_μ`.
fn lin(m: Metric, a: Idx, x: fn(Idx) -> GenPat) -> Leg {
    lsum(vec![sc(m(a, Mu), leg(x(Nu))), sc(neg(m(a, Nu)), leg(x(Mu)))])
}

/// The pure-θ block of the M coproduct for `θ P_a ∧ P_b`.
fn theta_block(p: F, a: Idx, b: Idx, m: Metric, x: fn(Idx) -> GenPat) -> Vec<TensorExpr> {
    vec![
        ts(
            neg(par(p)),
            TensorExpr::Sum(vec![tens(lin(m, a, x), leg(x(b))), tens(leg(x(a)), lin(m, b, x))]),
        ),
        ts(
            par(p),
            TensorExpr::Sum(vec![tens(lin(m, b, x), leg(x(a))), tens(leg(x(b)), lin(m, a, x))]),
        ),
    ]
}

fn psi(l: Idx, v: PsiChiVariant) -> Scalar {
    Scalar::Psi(v, l)
}
fn chi(l: Idx, v: PsiChiVariant) -> Scalar {
    Scalar::Chi(v, l)
}

const P: fn(Idx) -> GenPat = GenPat::P;
const PI: fn(Idx) -> GenPat = GenPat::Pi;

fn mmn() -> Leg {
    leg(GenPat::M(Mu, Nu))
}

fn entry(kind: AlgebraKind, d: Deformation, gen: GenPat, terms: Vec<TensorExpr>) -> CatalogEntry {
    CatalogEntry::new(kind, d, gen, TensorExpr::Sum(terms), None)
}

fn kappa_p() -> Vec<TensorExpr> {
    let sh = func(Sinh, half(F::InvKappa), P(K));
    let ch = func(CoshMinusOne, half(F::InvKappa), P(K));
    vec![
        TensorExpr::Delta0(P(Mu)),
        wedge(sh, lsum(vec![sc(eta_m(I, Mu), leg(P(Zero))), sc(neg(eta_m(Zero, Mu)), leg(P(I)))])),
        perp(ch, lsum(vec![sc(eta_m(I, Mu), leg(P(I))), sc(neg(eta_m(Zero, Mu)), leg(P(Zero)))])),
    ]
}

fn kappa_m() -> Vec<TensorExpr> {
    let mi0 = || leg(GenPat::M(I, Zero));
    let sh = || func(Sinh, half(F::InvKappa), P(K));
    let ch = || func(CoshMinusOne, half(F::InvKappa), P(K));
    let v = PsiChiVariant::DeltaForm;
    vec![
        TensorExpr::Delta0(GenPat::M(Mu, Nu)),
        ts(
            half(F::InvKappa),
            wedge(mi0(), lsum(vec![sc(eta_m(Mu, K), leg(P(Nu))), sc(neg(eta_m(Nu, K)), leg(P(Mu)))])),
        ),
        ts(Scalar::I, wedge(comm(mmn(), mi0()), sh())),
        ts(Scalar::Int(-1), perp(comm(comm(mmn(), mi0()), mi0()), ch())),
        ts(
            half(F::InvKappa),
            perp(prod(mi0(), sh()), lsum(vec![sc(psi(K, v), leg(P(I))), sc(neg(chi(K, v)), leg(P(Zero)))])),
        ),
        ts(
            neg(half(F::InvKappa)),
            wedge(lsum(vec![sc(psi(K, v), leg(P(Zero))), sc(neg(chi(K, v)), leg(P(I)))]), prod(mi0(), ch())),
        ),
    ]
}

/// Rotation-type P coproduct: `arg` is `P₀` for κ̂ and `P_i` for κ̄.
fn rot_p(p: F, arg: Idx, x: fn(Idx) -> GenPat, m: Metric) -> Vec<TensorExpr> {
    let s = func(Sin, half(p), x(arg));
    let c = func(CosMinusOne, half(p), x(arg));
    vec![
        TensorExpr::Delta0(x(Mu)),
        wedge(s, lsum(vec![sc(m(K, Mu), leg(x(L))), sc(neg(m(L, Mu)), leg(x(K)))])),
        perp(c, lsum(vec![sc(m(K, Mu), leg(x(K))), sc(m(L, Mu), leg(x(L)))])),
    ]
}

fn rot_m(p: F, arg: Idx) -> Vec<TensorExpr> {
    let mkl = || leg(GenPat::M(K, L));
    let s = || func(Sin, half(p), P(arg));
    let c = || func(CosMinusOne, half(p), P(arg));
    let v = PsiChiVariant::EtaForm;
    vec![
        TensorExpr::Delta0(GenPat::M(Mu, Nu)),
        ts(
            half(p),
            wedge(mkl(), lsum(vec![sc(eta_m(Mu, arg), leg(P(Nu))), sc(neg(eta_m(Nu, arg)), leg(P(Mu)))])),
        ),
        ts(Scalar::I, wedge(comm(mmn(), mkl()), s())),
        perp(comm(comm(mmn(), mkl()), mkl()), c()),
        ts(
            half(p),
            perp(prod(mkl(), s()), lsum(vec![sc(psi(arg, v), leg(P(K))), sc(neg(chi(arg, v)), leg(P(L)))])),
        ),
        ts(
            half(p),
            wedge(lsum(vec![sc(psi(arg, v), leg(P(L))), sc(chi(arg, v), leg(P(K)))]), prod(mkl(), c())),
        ),
    ]
}

/// Mixed θ·κ corrections of the θ_kl + κ M coproduct.
fn theta_kappa_mixed() -> Vec<TensorExpr> {
    let mi0 = || leg(GenPat::M(I, Zero));
    let sh = || func(Sinh, half(F::InvKappa), P(K));
    let ch = || func(CoshMinusOne, half(F::InvKappa), P(K));
    let c2 = || comm(mmn(), mi0());
    let c3 = || comm(comm(mmn(), mi0()), mi0());
    let th = || par(F::ThetaKl);
    let ith = || mul(vec![Scalar::I, par(F::ThetaKl)]);
    vec![
        ts(th(), perp(comm(c2(), leg(P(K))), prod(sh(), leg(P(L))))),
        ts(neg(th()), perp(comm(c2(), leg(P(L))), prod(sh(), leg(P(K))))),
        ts(ith(), wedge(comm(c3(), leg(P(K))), prod(ch(), leg(P(L))))),
        ts(neg(ith()), wedge(comm(c3(), leg(P(L))), prod(ch(), leg(P(K))))),
    ]
}

/// Mixed θ₀ᵢ corrections shared by the κ̂ and κ̄ generalized M coproducts.
fn theta0i_rot_mixed(p: F, arg: Idx) -> Vec<TensorExpr> {
    let mkl = || leg(GenPat::M(K, L));
    let s = || func(Sin, half(p), P(arg));
    let c = || func(CosMinusOne, half(p), P(arg));
    let c2 = || comm(mmn(), mkl());
    let c3 = || comm(comm(mmn(), mkl()), mkl());
    let th = || par(F::Theta0i);
    let ith = || mul(vec![Scalar::I, par(F::Theta0i)]);
    vec![
        ts(th(), perp(comm(c2(), leg(P(Zero))), prod(s(), leg(P(I))))),
        ts(neg(th()), perp(comm(c2(), leg(P(I))), prod(s(), leg(P(Zero))))),
        ts(neg(ith()), wedge(comm(c3(), leg(P(Zero))), prod(c(), leg(P(I))))),
        ts(ith(), wedge(comm(c3(), leg(P(I))), prod(c(), leg(P(Zero))))),
    ]
}

fn galilei_xi_kl_k() -> Vec<TensorExpr> {
    let kab = leg(GenPat::K(Mu, Nu));
    let mut v = vec![
        TensorExpr::Delta0(GenPat::K(Mu, Nu)),
        ts(
            mul(vec![Scalar::I, half(F::InvLambda)]),
            wedge(comm(kab, leg(GenPat::V(I))), leg(PI(K))),
        ),
        ts(
            half(F::InvLambda),
            wedge(
                leg(GenPat::V(I)),
                lsum(vec![sc(delta_m(Mu, K), leg(PI(Nu))), sc(neg(delta_m(Nu, K)), leg(PI(Mu)))]),
            ),
        ),
    ];
    v.extend(theta_block(F::XiKl, K, L, delta_m, PI));
    v
}

/// ξ₀ᵢ corrections of the Galilei K_ab coproduct, with `s`/`c` the rotation series.
fn galilei_xi0i_k(p: F, arg: Idx) -> Vec<TensorExpr> {
    let kab = || leg(GenPat::K(Mu, Nu));
    let kkl = || leg(GenPat::K(K, L));
    let s = func(Sin, half(p), PI(arg));
    let c = func(CosMinusOne, half(p), PI(arg));
    let xi = || par(F::Xi0i);
    vec![
        ts(
            neg(xi()),
            wedge(
                leg(PI(Zero)),
                lsum(vec![sc(delta_m(I, Mu), leg(PI(Nu))), sc(neg(delta_m(I, Nu)), leg(PI(Mu)))]),
            ),
        ),
        ts(neg(xi()), perp(comm(comm(kab(), kkl()), leg(PI(I))), prod(leg(PI(Zero)), s))),
        ts(
            mul(vec![Scalar::I, xi()]),
            wedge(comm(comm(comm(kab(), kkl()), kkl()), leg(PI(I))), prod(leg(PI(Zero)), c)),
        ),
    ]
}

/// ξ₀ᵢ corrections of the Galilei V_a coproduct.
fn galilei_xi0i_v(p: F, arg: Idx) -> Vec<TensorExpr> {
    let va = || leg(GenPat::V(Mu));
    let kkl = || leg(GenPat::K(K, L));
    let s = func(Sin, half(p), PI(arg));
    let c = func(CosMinusOne, half(p), PI(arg));
    let xi = || par(F::Xi0i);
    vec![
        ts(neg(xi()), wedge(leg(PI(Mu)), leg(PI(I)))),
        ts(
            neg(mul(vec![Scalar::I, xi()])),
            wedge(comm(comm(comm(va(), kkl()), kkl()), leg(PI(Zero))), prod(c, leg(PI(I)))),
        ),
        ts(xi(), perp(comm(comm(va(), kkl()), leg(PI(Zero))), prod(s, leg(PI(I))))),
    ]
}

/// Rotation part of the Galilei K_ab or V_a coproduct.
fn galilei_rot(p: F, arg: Idx, x: GenPat) -> Vec<TensorExpr> {
    let xl = || leg(x);
    let kkl = || leg(GenPat::K(K, L));
    let s = func(Sin, half(p), PI(arg));
    let c = func(CosMinusOne, half(p), PI(arg));
    vec![
        TensorExpr::Delta0(x),
        ts(Scalar::I, wedge(comm(xl(), kkl()), s)),
        perp(comm(comm(xl(), kkl()), kkl()), c),
    ]
}

pub(super) fn coproducts() -> Vec<CatalogEntry> {
    use AlgebraKind::{Galilei, Poincare};
    use Deformation as D;
    let m = GenPat::M(Mu, Nu);
    let mut out = vec![
        entry(Poincare, D::ThetaKl, P(Mu), vec![TensorExpr::Delta0(P(Mu))]),
        entry(Poincare, D::ThetaKl, m, {
            let mut v = vec![TensorExpr::Delta0(m)];
            v.extend(theta_block(F::ThetaKl, K, L, eta_m, P));
            v
        }),
        entry(Poincare, D::Theta0i, P(Mu), vec![TensorExpr::Delta0(P(Mu))]),
        entry(Poincare, D::Theta0i, m, {
            let mut v = vec![TensorExpr::Delta0(m)];
            v.extend(theta_block(F::Theta0i, Zero, I, eta_m, P));
            v
        }),
        entry(Poincare, D::Kappa, P(Mu), kappa_p()),
        entry(Poincare, D::Kappa, m, kappa_m()),
        entry(Poincare, D::KappaHat, P(Mu), rot_p(F::InvKappaHat, Zero, P, eta_m)),
        entry(Poincare, D::KappaHat, m, rot_m(F::InvKappaHat, Zero)),
        entry(Poincare, D::KappaBar, P(Mu), rot_p(F::InvKappaBar, I, P, eta_m)),
        entry(Poincare, D::KappaBar, m, rot_m(F::InvKappaBar, I)),
        entry(Poincare, D::ThetaKlKappa, P(Mu), kappa_p()),
    ];
    let mut theta_kappa_m = kappa_m();
    theta_kappa_m.extend(theta_block(F::ThetaKl, K, L, eta_m, P));
    theta_kappa_m.extend(theta_kappa_mixed());
    out.push(CatalogEntry::new(
        Poincare,
        D::ThetaKlKappa,
        m,
        TensorExpr::Sum(theta_kappa_m),
        Some("the upper-index θ^kl is read as θ_kl"),
    ));
    out.push(entry(Poincare, D::Theta0iKappaHat, P(Mu), rot_p(F::InvKappaHat, Zero, P, eta_m)));
    let mut hat = rot_m(F::InvKappaHat, Zero);
    hat.extend(theta_block(F::Theta0i, Zero, I, eta_m, P));
    hat.extend(theta0i_rot_mixed(F::InvKappaHat, Zero));
    out.push(entry(Poincare, D::Theta0iKappaHat, m, hat));
    out.push(entry(Poincare, D::Theta0iKappaBar, P(Mu), rot_p(F::InvKappaBar, I, P, eta_m)));
    let mut bar = rot_m(F::InvKappaBar, I);
    bar.extend(theta_block(F::Theta0i, Zero, I, eta_m, P));
    bar.extend(theta0i_rot_mixed(F::InvKappaBar, I));
    out.push(entry(Poincare, D::Theta0iKappaBar, m, bar));

    // Galilei side.
    let kab = GenPat::K(Mu, Nu);
    let va = GenPat::V(Mu);
    out.push(entry(
        Galilei,
        D::ThetaKlKappa,
        PI(Zero),
        vec![TensorExpr::Delta0(PI(Zero)), ts(half(F::InvLambda), wedge(leg(PI(K)), leg(PI(I))))],
    ));
    out.push(entry(Galilei, D::ThetaKlKappa, PI(Mu), vec![TensorExpr::Delta0(PI(Mu))]));
    out.push(entry(Galilei, D::ThetaKlKappa, kab, galilei_xi_kl_k()));
    out.push(entry(Galilei, D::ThetaKlKappa, va, vec![TensorExpr::Delta0(va)]));

    out.push(entry(Galilei, D::Theta0iKappaHat, PI(Mu), rot_p(F::InvLambdaHat, Zero, PI, delta_m)));
    let mut k_hat = galilei_rot(F::InvLambdaHat, Zero, kab);
    k_hat.extend(galilei_xi0i_k(F::InvLambdaHat, Zero));
    out.push(entry(Galilei, D::Theta0iKappaHat, kab, k_hat));
    let kkl = || leg(GenPat::K(K, L));
    let s = || func(Sin, half(F::InvLambdaHat), PI(Zero));
    let c = || func(CosMinusOne, half(F::InvLambdaHat), PI(Zero));
    let mut v_hat = galilei_rot(F::InvLambdaHat, Zero, va);
    v_hat.insert(1, ts(half(F::InvLambdaHat), wedge(kkl(), leg(PI(Mu)))));
    v_hat.push(ts(
        half(F::InvLambdaHat),
        perp(
            prod(kkl(), s()),
            lsum(vec![sc(delta_m(K, Mu), leg(PI(L))), sc(neg(delta_m(L, Mu)), leg(PI(K)))]),
        ),
    ));
    v_hat.push(ts(
        neg(half(F::InvLambdaHat)),
        wedge(lsum(vec![sc(delta_m(K, Mu), leg(PI(K))), sc(delta_m(L, Mu), leg(PI(L)))]), prod(kkl(), c())),
    ));
    v_hat.extend(galilei_xi0i_v(F::InvLambdaHat, Zero));
    out.push(entry(Galilei, D::Theta0iKappaHat, va, v_hat));

    out.push(entry(Galilei, D::Theta0iKappaBar, PI(Mu), rot_p(F::InvLambdaBar, I, PI, delta_m)));
    let sb = || func(Sin, half(F::InvLambdaBar), PI(I));
    let cb = || func(CosMinusOne, half(F::InvLambdaBar), PI(I));
    let ev = PsiChiVariant::EtaForm;
    let mut k_bar = galilei_rot(F::InvLambdaBar, I, kab);
    k_bar.insert(
        1,
        ts(
            half(F::InvLambdaBar),
            wedge(kkl(), lsum(vec![sc(delta_m(Mu, I), leg(PI(Nu))), sc(neg(delta_m(Nu, I)), leg(PI(Mu)))])),
        ),
    );
    k_bar.push(ts(
        half(F::InvLambdaBar),
        perp(prod(kkl(), sb()), lsum(vec![sc(psi(I, ev), leg(PI(K))), sc(neg(chi(I, ev)), leg(PI(L)))])),
    ));
    k_bar.push(ts(
        half(F::InvLambdaBar),
        wedge(lsum(vec![sc(psi(I, ev), leg(PI(L))), sc(chi(I, ev), leg(PI(K)))]), prod(kkl(), cb())),
    ));
    k_bar.extend(galilei_xi0i_k(F::InvLambdaBar, I));
    out.push(entry(Galilei, D::Theta0iKappaBar, kab, k_bar));
    let mut v_bar = galilei_rot(F::InvLambdaBar, I, va);
    v_bar.extend(galilei_xi0i_v(F::InvLambdaBar, I));
    out.push(entry(Galilei, D::Theta0iKappaBar, va, v_bar));
    out
}

pub(super) fn spacetimes() -> Vec<SpacetimeEntry> {
    use Deformation as D;
    let i = || Scalar::I;
    let d = Scalar::Delta;
    let dd = |a, b, c, e| mul(vec![d(a, b), d(c, e)]);
    vec![
        SpacetimeEntry::new(
            D::ThetaKlKappa,
            SpaceExpr(vec![(mul(vec![i(), par(F::InvKappa), d(Mu, K)]), Some(I))]),
            SpaceExpr(vec![
                (
                    mul(vec![
                        Scalar::Int(2),
                        i(),
                        par(F::ThetaKl),
                        Scalar::Add(vec![dd(Mu, K, Nu, L), neg(dd(Mu, L, Nu, K))]),
                    ]),
                    None,
                ),
                (
                    mul(vec![i(), par(F::InvKappa), Scalar::Add(vec![dd(I, Mu, K, Nu), neg(dd(K, Mu, I, Nu))])]),
                    Some(Zero),
                ),
            ]),
        ),
        SpacetimeEntry::new(
            D::Theta0iKappaHat,
            SpaceExpr(vec![
                (mul(vec![i(), par(F::InvKappaHat), d(L, Mu)]), Some(K)),
                (neg(mul(vec![i(), par(F::InvKappaHat), d(K, Mu)])), Some(L)),
                (mul(vec![Scalar::Int(2), i(), par(F::Theta0i), d(I, Mu)]), None),
            ]),
            SpaceExpr(vec![]),
        ),
        SpacetimeEntry::new(
            D::Theta0iKappaBar,
            SpaceExpr(vec![(mul(vec![Scalar::Int(2), i(), par(F::Theta0i), d(I, Mu)]), None)]),
            SpaceExpr(vec![
                (mul(vec![i(), par(F::InvKappaBar), dd(I, Nu, K, Mu)]), Some(L)),
                (neg(mul(vec![i(), par(F::InvKappaBar), dd(I, Nu, L, Mu)])), Some(K)),
                (mul(vec![i(), par(F::InvKappaBar), dd(I, Mu, L, Nu)]), Some(K)),
                (neg(mul(vec![i(), par(F::InvKappaBar), dd(I, Mu, K, Nu)])), Some(L)),
            ]),
        ),
    ]
}
