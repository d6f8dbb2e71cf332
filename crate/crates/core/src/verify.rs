//! Batch verification: configuration, case execution and reports.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{build_galilei, AlgebraKind, UeaElement};
use crate::catalog::{catalog_spacetime, compare_to_catalog, find_coproduct};
use crate::contraction::{algebra_diff, contract_algebra, contract_hopf, contract_hopf_with, ContractionMap};
use crate::error::Error;
use crate::hopf::{
    build_twist, check_cocycle, check_normalization, check_second_leg_cocycle, control_twist, cocycle_residual,
    pair_total, sweedler_u, CheckOutcome, Deformation, Exactness, HopfStructure, Indices, SECOND_LEG_PAIRS,
};
use crate::rmatrix::{build_rmatrix, check_cybe, control_rmatrix, schouten_bracket};
use crate::series::{FormalParameter, DEFAULT_ORDER};
use crate::star::{derive_table, star_jacobiator, CommutatorTable, PolyFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Cybe,
    Cocycle,
    Normalization,
    Coproducts,
    Antipode,
    Spacetime,
    Contraction,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::Cybe,
        Check::Cocycle,
        Check::Normalization,
        Check::Coproducts,
        Check::Antipode,
        Check::Spacetime,
        Check::Contraction,
    ];
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        serde_json::from_value(serde_json::Value::String(s.to_string()))
            .map_err(|_| Error::Config(format!("unknown check `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            _ => Err(Error::Config(format!("unknown format `{s}` (json or text)"))),
        }
    }
}

/// Every admissible assignment, or one assignment restricted per deformation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum IndexSelection {
    #[default]
    All,
    Fixed(Indices),
}

impl FromStr for IndexSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "all" {
            Ok(IndexSelection::All)
        } else {
            s.parse().map(IndexSelection::Fixed)
        }
    }
}

impl Serialize for IndexSelection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            IndexSelection::All => s.serialize_str("all"),
            IndexSelection::Fixed(i) => s.serialize_str(&i.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for IndexSelection {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub deformations: Vec<Deformation>,
    pub indices: IndexSelection,
    pub order: u32,
    pub checks: Vec<Check>,
    pub format: OutputFormat,
    /// Record wall times; off by default so reports stay byte-identical.
    pub timings: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            deformations: Deformation::ALL.to_vec(),
            indices: IndexSelection::All,
            order: DEFAULT_ORDER,
            checks: Check::ALL.to_vec(),
            format: OutputFormat::Json,
            timings: false,
        }
    }
}

impl RunConfig {
    pub fn from_json(s: &str) -> Result<Self, Error> {
        serde_json::from_str(s).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    fn has(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }

    /// Validated (deformation, indices) pairs in a fixed order.
    pub fn cases(&self) -> Result<Vec<(Deformation, Indices)>, Error> {
        if self.order == 0 {
            return Err(Error::Config("order must be at least 1".into()));
        }
        let mut ds = self.deformations.clone();
        ds.sort();
        ds.dedup();
        let mut out = Vec::new();
        for d in ds {
            match self.indices {
                IndexSelection::All => out.extend(d.admissible().into_iter().map(|i| (d, i))),
                IndexSelection::Fixed(i) => out.push((d, d.validate(&i.restrict(d))?)),
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Finding,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CaseRecord {
    pub case_id: String,
    pub deformation: String,
    pub indices: String,
    pub check: String,
    pub status: Status,
    pub residual: String,
    pub exactness: String,
    pub provenance: String,
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub finding: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub order: u32,
    pub summary: Summary,
    pub records: Vec<CaseRecord>,
}

impl VerificationReport {
    fn new(order: u32, mut records: Vec<CaseRecord>) -> Self {
        records.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        let count = |s| records.iter().filter(|r| r.status == s).count();
        let summary = Summary { pass: count(Status::Pass), fail: count(Status::Fail), finding: count(Status::Finding) };
        VerificationReport { order, summary, records }
    }

    /// 0 without failures, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.fail > 0)
    }

    pub fn record(&self, case_id: &str) -> Option<&CaseRecord> {
        self.records.iter().find(|r| r.case_id == case_id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            let tag = match r.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Finding => "FIND",
            };
            let _ = write!(s, "{tag} {} [{}] {}", r.case_id, r.provenance, r.exactness);
            if let Some(t) = r.wall_time_ms {
                let _ = write!(s, " {t:.1}ms");
            }
            s.push('\n');
            if !r.residual.is_empty() {
                let _ = writeln!(s, "     {}", r.residual);
            }
        }
        let _ = writeln!(
            s,
            "order {}: {} pass, {} fail, {} finding",
            self.order, self.summary.pass, self.summary.fail, self.summary.finding
        );
        s
    }

    pub fn render(&self, f: OutputFormat) -> String {
        match f {
            OutputFormat::Json => self.to_json(),
            OutputFormat::Text => self.to_text(),
        }
    }
}

struct Recorder {
    timings: bool,
    out: Vec<CaseRecord>,
}

struct Case<'a> {
    id: String,
    deformation: &'a str,
    indices: String,
    check: &'a str,
    provenance: String,
}

impl Recorder {
    fn push(&mut self, c: Case<'_>, status: Status, residual: String, exactness: Exactness, started: Instant) {
        self.out.push(CaseRecord {
            case_id: c.id,
            deformation: c.deformation.to_string(),
            indices: c.indices,
            check: c.check.to_string(),
            status,
            residual,
            exactness: exactness.to_string(),
            provenance: c.provenance,
            wall_time_ms: self.timings.then(|| started.elapsed().as_secs_f64() * 1e3),
        });
    }

    fn outcome(&mut self, c: Case<'_>, o: &CheckOutcome, started: Instant) {
        let status = if o.passed() { Status::Pass } else { Status::Fail };
        self.push(c, status, o.residual.clone(), o.exactness, started);
    }

    fn error(&mut self, c: Case<'_>, e: &Error, started: Instant) {
        self.push(c, Status::Fail, format!("error: {e}"), Exactness::Exact, started);
    }
}

fn table_residual(derived: &CommutatorTable, expected: &CommutatorTable) -> String {
    derived
        .diff(expected)
        .into_iter()
        .filter(|(mu, nu, _, _)| mu < nu)
        .map(|(mu, nu, a, b)| format!("[x{mu},x{nu}]: derived {a}, printed {b}"))
        .collect::<Vec<_>>()
        .join("; ")
}

fn star_algebra_residual(f: &crate::hopf::TwistFactor, t: &CommutatorTable, order: u32) -> Result<String, Error> {
    let mut bad = Vec::new();
    if !t.is_antisymmetric() {
        bad.push("table is not antisymmetric".to_string());
    }
    let x = |m: u8| PolyFunction::coordinate(m, order);
    for a in 0..4 {
        for b in a + 1..4 {
            for c in b + 1..4 {
                let j = star_jacobiator(&x(a), &x(b), &x(c), f)?;
                if !j.is_zero() {
                    bad.push(format!("jacobiator(x{a},x{b},x{c}) = {j}"));
                }
            }
        }
    }
    Ok(bad.join("; "))
}

/// The generalized deformations a basic one is a limit of, with the
/// parameter to switch off.
fn limits_of(d: Deformation) -> Vec<(FormalParameter, Deformation)> {
    use Deformation as D;
    use FormalParameter as F;
    match d {
        D::ThetaKlKappa => vec![(F::ThetaKl, D::Kappa), (F::InvKappa, D::ThetaKl)],
        D::Theta0iKappaHat => vec![(F::Theta0i, D::KappaHat), (F::InvKappaHat, D::Theta0i)],
        D::Theta0iKappaBar => vec![(F::Theta0i, D::KappaBar), (F::InvKappaBar, D::Theta0i)],
        _ => Vec::new(),
    }
}

fn run_case(cfg: &RunConfig, d: Deformation, idx: Indices) -> Vec<CaseRecord> {
    let order = cfg.order;
    let mut rec = Recorder { timings: cfg.timings, out: Vec::new() };
    let dn = d.id();
    let ixs = idx.to_string();
    let case = |check: &'static str, suffix: Option<String>, provenance: String| Case {
        id: match suffix {
            Some(s) => format!("{check}/{dn}/{ixs}/{s}"),
            None => format!("{check}/{dn}/{ixs}"),
        },
        deformation: dn,
        indices: ixs.clone(),
        check,
        provenance,
    };

    if cfg.has(Check::Cybe) {
        let t = Instant::now();
        match build_rmatrix(d, &idx, order) {
            Ok(r) => rec.outcome(case("cybe", None, format!("rmatrix.{dn}")), &check_cybe(&r), t),
            Err(e) => rec.error(case("cybe", None, format!("rmatrix.{dn}")), &e, t),
        }
    }

    let t = Instant::now();
    let f = match build_twist(d, &idx, order) {
        Ok(f) => f,
        Err(e) => {
            rec.error(case("twist", None, format!("twist.{dn}")), &e, t);
            return rec.out;
        }
    };
    let classical = HopfStructure::classical(AlgebraKind::Poincare, order);
    let cocycle = check_cocycle(&f, &classical);

    if cfg.has(Check::Cocycle) {
        rec.outcome(case("cocycle", None, format!("twist.{dn}")), &cocycle, t);
        for (first, second) in SECOND_LEG_PAIRS {
            if pair_total(first, second) != Some(d) {
                continue;
            }
            let t = Instant::now();
            let c = case("cocycle.second_leg", Some(format!("{first}-then-{second}")), format!("twist.{dn}"));
            match check_second_leg_cocycle(Some(first), second, &idx, order) {
                Ok(o) => rec.outcome(c, &o, t),
                Err(e) => rec.error(c, &e, t),
            }
        }
    }

    if cfg.has(Check::Normalization) {
        let t = Instant::now();
        rec.outcome(case("normalization", None, format!("twist.{dn}")), &check_normalization(&f), t);
    }

    if cfg.has(Check::Coproducts) {
        let t = Instant::now();
        let h = classical.twisted(&f);
        let coassoc = h.check_coassociativity();
        rec.outcome(case("hopf.coassociativity", None, format!("coproduct.{dn}")), &coassoc, t);
        let t = Instant::now();
        rec.outcome(case("hopf.counit", None, format!("coproduct.{dn}")), &h.check_counit(), t);
        let t = Instant::now();
        rec.outcome(case("hopf.homomorphism", None, format!("coproduct.{dn}")), &h.check_homomorphism(), t);
        let consistent = coassoc.passed() && cocycle.passed();
        for (pos, g) in AlgebraKind::Poincare.spec().generators().iter().copied().enumerate() {
            let t = Instant::now();
            let entry = match find_coproduct(AlgebraKind::Poincare, d, g) {
                Ok(e) => e,
                Err(e) => {
                    rec.error(case("coproduct", Some(g.to_string()), "none".into()), &e, t);
                    continue;
                }
            };
            let c = case("coproduct", Some(g.to_string()), entry.id.clone());
            match compare_to_catalog(h.coproduct_at(pos as u8), entry, g, &idx, order) {
                Ok(diff) => {
                    let status = match (diff.is_match(), consistent) {
                        (true, _) => Status::Pass,
                        (false, true) => Status::Finding,
                        (false, false) => Status::Fail,
                    };
                    let residual = diff.offending_terms().join(" + ");
                    rec.push(c, status, residual, h.exactness_at(pos as u8), t);
                }
                Err(e) => rec.error(c, &e, t),
            }
        }
    }

    if cfg.has(Check::Antipode) {
        let t = Instant::now();
        let s = sweedler_u(&f);
        let one = UeaElement::one(AlgebraKind::Poincare, order);
        let residual = &s.u - &one;
        let ok = residual.is_zero() && s.exactness == Exactness::Exact;
        let status = if ok { Status::Pass } else { Status::Fail };
        let text = if residual.is_zero() { String::new() } else { residual.to_string() };
        rec.push(case("antipode", None, "antipode.undeformed".into()), status, text, s.exactness, t);
    }

    if cfg.has(Check::Spacetime) {
        let t = Instant::now();
        match spacetime_records(d, &idx, order) {
            Ok(items) => {
                for (check, suffix, prov, status, residual) in items {
                    rec.push(case(check, suffix, prov), status, residual, Exactness::Exact, t);
                }
            }
            Err(e) => rec.error(case("spacetime", None, format!("spacetime.{dn}")), &e, t),
        }
    }

    if cfg.has(Check::Contraction) && d.is_generalized() {
        let t = Instant::now();
        match contract_hopf(d, &idx, order) {
            Ok(r) => {
                let h = &r.hopf;
                let o = CheckOutcome::merge([
                    ("counit".to_string(), h.check_counit()),
                    ("coassociativity".to_string(), h.check_coassociativity()),
                    ("homomorphism".to_string(), h.check_homomorphism()),
                ]);
                let consistent = o.passed();
                rec.outcome(case("contraction.hopf", None, format!("galilei.coproduct.{dn}")), &o, t);
                for (pos, (g, id, diff)) in r.diffs.iter().enumerate() {
                    let status = match (diff.is_match(), consistent) {
                        (true, _) => Status::Pass,
                        (false, true) => Status::Finding,
                        (false, false) => Status::Fail,
                    };
                    rec.push(
                        case("contraction", Some(g.to_string()), id.clone()),
                        status,
                        diff.offending_terms().join(" + "),
                        h.exactness_at(pos as u8),
                        t,
                    );
                }
                let bad: Vec<String> = r
                    .antipodes
                    .iter()
                    .filter(|(g, s)| {
                        let minus = -&UeaElement::generator(AlgebraKind::Galilei, *g, order).expect("Galilei generator");
                        *s != minus
                    })
                    .map(|(g, s)| format!("S({g}) = {s}"))
                    .collect();
                let status = if bad.is_empty() { Status::Pass } else { Status::Fail };
                rec.push(
                    case("contraction.antipode", None, "antipode.undeformed".into()),
                    status,
                    bad.join("; "),
                    r.exactness,
                    t,
                );
            }
            Err(e) => rec.error(case("contraction", None, format!("galilei.coproduct.{dn}")), &e, t),
        }
    }
    rec.out
}

type SpacetimeItem = (&'static str, Option<String>, String, Status, String);

fn spacetime_records(d: Deformation, idx: &Indices, order: u32) -> Result<Vec<SpacetimeItem>, Error> {
    let f = build_twist(d, idx, order)?;
    let derived = derive_table(d, idx, order)?;
    let printed = catalog_spacetime(d, idx, order)?;
    let mut out = Vec::new();
    let residual = table_residual(&derived, &printed);
    let status = if residual.is_empty() { Status::Pass } else { Status::Finding };
    let src = match d {
        Deformation::ThetaKl | Deformation::Kappa => Deformation::ThetaKlKappa,
        Deformation::Theta0i | Deformation::KappaHat => Deformation::Theta0iKappaHat,
        Deformation::KappaBar => Deformation::Theta0iKappaBar,
        g => g,
    };
    out.push(("spacetime", None, format!("spacetime.{}", src.id()), status, residual));
    let alg = star_algebra_residual(&f, &derived, order)?;
    let status = if alg.is_empty() { Status::Pass } else { Status::Fail };
    out.push(("spacetime.star_algebra", None, "star.jacobi".into(), status, alg));
    for (p, basic) in limits_of(d) {
        let lim = derived.set_zero(p);
        let direct = derive_table(basic, &idx.restrict(basic), order)?;
        let residual = table_residual(&lim, &direct);
        let status = if residual.is_empty() { Status::Pass } else { Status::Fail };
        out.push(("spacetime.limit", Some(format!("{p:?}-to-zero")), format!("spacetime.{}", basic.id()), status, residual));
    }
    Ok(out)
}

fn run_controls(cfg: &RunConfig) -> Vec<CaseRecord> {
    let order = cfg.order;
    let mut rec = Recorder { timings: cfg.timings, out: Vec::new() };
    let case = |id: &str, check: &'static str, prov: &str| Case {
        id: id.to_string(),
        deformation: "control",
        indices: String::new(),
        check,
        provenance: prov.to_string(),
    };
    if cfg.has(Check::Cybe) {
        let t = Instant::now();
        let b = schouten_bracket(&control_rmatrix(order), &control_rmatrix(order));
        let status = if b.is_zero() { Status::Fail } else { Status::Pass };
        rec.push(case("cybe/control/P1^M12", "cybe", "control.rmatrix"), status, b.to_string(), Exactness::Exact, t);
    }
    if cfg.has(Check::Cocycle) {
        let t = Instant::now();
        let f = control_twist(order);
        let r = cocycle_residual(&f, &HopfStructure::classical(AlgebraKind::Poincare, order));
        let lowest = r.terms().filter_map(|(_, c)| c.min_degree()).min();
        let status = if order >= 2 && lowest == Some(2) { Status::Pass } else { Status::Fail };
        let text = format!("lowest order {lowest:?}: {r}");
        rec.push(case("cocycle/control/exp(xi P1xM12)", "cocycle", "control.twist"), status, text, Exactness::ToOrder(order), t);
    }
    if cfg.has(Check::Contraction) {
        let t = Instant::now();
        let o = match contract_algebra() {
            Ok(c) => algebra_diff(&c, &build_galilei()).join("; "),
            Err(e) => format!("error: {e}"),
        };
        let status = if o.is_empty() { Status::Pass } else { Status::Fail };
        rec.push(case("contraction/algebra", "contraction", "galilei.algebra"), status, o, Exactness::Exact, t);
        let t = Instant::now();
        let idx = Indices::kli(1, 2, 3);
        let (status, text) =
            match contract_hopf_with(&ContractionMap::unscaled(), Deformation::ThetaKlKappa, &idx, order) {
                Err(Error::ContractionDivergence { generator, source }) if generator == "Π0" => {
                    (Status::Pass, format!("Π0: {source}"))
                }
                Err(e) => (Status::Fail, format!("error: {e}")),
                Ok(_) => (Status::Fail, "limit unexpectedly finite".into()),
            };
        rec.push(case("contraction/control/unscaled", "contraction", "control.contraction"), status, text, Exactness::Exact, t);
    }
    rec.out
}

/// Execute every selected check; records come back sorted by case id.
pub fn run(cfg: &RunConfig) -> Result<VerificationReport, Error> {
    let cases = cfg.cases()?;
    let mut records: Vec<CaseRecord> = cases.par_iter().flat_map(|&(d, i)| run_case(cfg, d, i)).collect();
    records.extend(run_controls(cfg));
    Ok(VerificationReport::new(cfg.order, records))
}

/// Derived and printed tables for each selected case.
pub fn emit_spacetime_tables(cfg: &RunConfig) -> Result<serde_json::Value, Error> {
    let cases = cfg.cases()?;
    let docs: Result<Vec<_>, Error> = cases
        .par_iter()
        .map(|&(d, idx)| {
            let derived = derive_table(d, &idx, cfg.order)?;
            let printed = catalog_spacetime(d, &idx, cfg.order)?;
            let residual = table_residual(&derived, &printed);
            Ok(json!({
                "deformation": d.id(),
                "indices": idx.to_string(),
                "derived": derived.to_json(),
                "printed": printed.to_json(),
                "display": derived.display_math(),
                "matches_catalog": residual.is_empty(),
                "mismatches": residual,
            }))
        })
        .collect();
    Ok(json!({ "order": cfg.order, "tables": docs? }))
}

pub fn spacetime_text(doc: &serde_json::Value) -> String {
    let mut s = String::new();
    for t in doc["tables"].as_array().into_iter().flatten() {
        let _ = writeln!(s, "{} ({})", t["deformation"].as_str().unwrap_or(""), t["indices"].as_str().unwrap_or(""));
        let _ = writeln!(s, "{}", t["display"].as_str().unwrap_or(""));
        if t["matches_catalog"].as_bool() == Some(true) {
            let _ = writeln!(s, "matches printed table\n");
        } else {
            let _ = writeln!(s, "differs from printed table: {}\n", t["mismatches"].as_str().unwrap_or(""));
        }
    }
    s
}

/// Contraction document for one generalized deformation.
pub fn contraction_document(d: Deformation, idx: &Indices, order: u32) -> Result<serde_json::Value, Error> {
    let r = contract_hopf(d, idx, order)?;
    let gal = AlgebraKind::Galilei.spec();
    let coproducts: Vec<_> = (0..gal.dim() as u8)
        .map(|p| {
            let (g, id, diff) = &r.diffs[p as usize];
            json!({
                "generator": g.to_string(),
                "coproduct": r.hopf.coproduct_at(p).to_string(),
                "catalog": id,
                "matches_catalog": diff.is_match(),
                "residual": diff.offending_terms().join(" + "),
            })
        })
        .collect();
    let antipodes: Vec<_> = r
        .antipodes
        .iter()
        .map(|(g, s)| json!({ "generator": g.to_string(), "antipode": s.to_string() }))
        .collect();
    Ok(json!({
        "deformation": d.id(),
        "galilei": crate::catalog::galilei_id(d),
        "indices": r.indices.to_string(),
        "order": order,
        "exactness": r.exactness,
        "coproducts": coproducts,
        "antipodes": antipodes,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_round_trip_and_defaults() {
        let c = RunConfig::from_json(r#"{"deformations":["kappa"],"indices":"k=1,i=2","checks":["cybe"]}"#).unwrap();
        assert_eq!(c.order, 4);
        assert_eq!(c.deformations, vec![Deformation::Kappa]);
        let back = RunConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
        assert!(RunConfig::from_json(r#"{"bogus":1}"#).is_err());
    }

    #[test]
    fn bad_indices_name_the_constraint() {
        let c = RunConfig {
            deformations: vec![Deformation::Kappa],
            indices: "i=1,k=1".parse().unwrap(),
            ..RunConfig::default()
        };
        let e = run(&c).unwrap_err().to_string();
        assert!(e.contains("[i,k - fixed, i != k]"), "{e}");
    }

    #[test]
    fn cybe_only_selection() {
        let c = RunConfig { indices: "k=1,l=2,i=3".parse().unwrap(), checks: vec![Check::Cybe], ..RunConfig::default() };
        let r = run(&c).unwrap();
        let real = r.records.iter().filter(|x| x.deformation != "control").count();
        assert_eq!(real, 8);
        assert_eq!(r.records.len(), 9);
        assert!(r.records.iter().all(|x| x.check == "cybe" && x.status == Status::Pass));
        assert_eq!(r.exit_code(), 0);
    }
}
