//! Verification suites, searches and the per-ring summary behind the CLI.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::catalog::{build_catalog, CatalogEntry, CatalogSpec};
use crate::completion::{complete_local_survey, dichotomy_check};
use crate::dsl::{parse_ring_expr, sdp_pair, DslError, ExprKind, SdpKind};
use crate::error::Result;
use crate::par::Exec;
use crate::poly::{gf_ring, polyring_max_spectrum, table_poly};
use crate::report::{CheckResult, SuiteReport};
use crate::representatives::{
    absiso_probe, check_prop_maximal, check_unit_decomposition, enumerate_subfields, fields_of_representatives,
    gelfand_bijection_check, largest_subfield, local_with_largest, residue_restriction, uniqueness_probe,
    KappaAlgebra,
};
use crate::ring::{ElemSet, RingTable, Subring, SUITE_CAP};
use crate::split::{
    equivalence_roundtrip, extreme_squarezero_check, extreme_unital_check, split_triples, verify_split_diagram,
};

pub const VERIFY_DEFAULT_ORDER: usize = SUITE_CAP;
pub const SEARCH_DEFAULT_ORDER: usize = 81;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuiteError {
    #[error("unknown suite '{0}'")]
    UnknownSuite(String),
    #[error("unknown search target '{0}'")]
    UnknownTarget(String),
    #[error("bad ring expression: {0}")]
    Ring(#[from] DslError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Lemma21,
    Lemma22,
    Thm23,
    Prop24,
    Diagram,
    Roundtrip,
    Dichotomy,
    Extremes,
    Cohen,
    Gelfand,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Lemma21,
        Suite::Lemma22,
        Suite::Thm23,
        Suite::Prop24,
        Suite::Diagram,
        Suite::Roundtrip,
        Suite::Dichotomy,
        Suite::Extremes,
        Suite::Cohen,
        Suite::Gelfand,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lemma21 => "lemma21",
            Suite::Lemma22 => "lemma22",
            Suite::Thm23 => "thm23",
            Suite::Prop24 => "prop24",
            Suite::Diagram => "diagram",
            Suite::Roundtrip => "roundtrip",
            Suite::Dichotomy => "dichotomy",
            Suite::Extremes => "extremes",
            Suite::Cohen => "cohen",
            Suite::Gelfand => "gelfand",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = SuiteError;

    fn from_str(s: &str) -> std::result::Result<Self, SuiteError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchTarget {
    Q31,
    AbsIso,
    Uniqueness,
}

impl SearchTarget {
    pub fn name(self) -> &'static str {
        match self {
            SearchTarget::Q31 => "q31",
            SearchTarget::AbsIso => "absiso",
            SearchTarget::Uniqueness => "uniqueness",
        }
    }
}

impl FromStr for SearchTarget {
    type Err = SuiteError;

    fn from_str(s: &str) -> std::result::Result<Self, SuiteError> {
        [SearchTarget::Q31, SearchTarget::AbsIso, SearchTarget::Uniqueness]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| SuiteError::UnknownTarget(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[derive(Default)]
pub struct RunOptions {
    pub catalog: CatalogSpec,
    /// Ring expressions appended to the catalog.
    pub extra: Vec<String>,
    pub exec: Exec,
}


impl RunOptions {
    pub fn with_max_order(max_order: usize) -> Self {
        RunOptions { catalog: CatalogSpec { max_order, ..CatalogSpec::default() }, ..Default::default() }
    }
}

fn guarded(label: &str, f: impl FnOnce() -> Result<Vec<CheckResult>>) -> Vec<CheckResult> {
    f().unwrap_or_else(|e| vec![CheckResult::new(label, "error", false, Some(e.to_string()))])
}

fn sweep(
    name: &str,
    entries: &[CatalogEntry],
    exec: Exec,
    f: impl Fn(&CatalogEntry) -> Result<Vec<CheckResult>> + Sync + Send,
) -> SuiteReport {
    let results = exec.flat_map(entries, |e| guarded(e.label(), || f(e)));
    SuiteReport::new(name, entries.iter().map(|e| e.label().to_string()).collect(), results)
}

fn km(kappa: &Subring, m: &ElemSet) -> String {
    format!("k={} m={}", kappa.members(), m)
}

fn lemma21(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    let Some((m, kappa)) = local_with_largest(r)? else { return Ok(vec![]) };
    let pass = check_unit_decomposition(r, &kappa)?;
    let w = format!("|U|={} |k*|={} |m|={}", r.units().len(), kappa.len() - 1, m.len());
    Ok(vec![CheckResult::new(e.label(), "units = k* + m", pass, Some(w))])
}

fn lemma22(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    if r.is_zero_ring() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for m in r.maximal_ideals()? {
        for kappa in enumerate_subfields(r, true)? {
            let rep = residue_restriction(r, &kappa, &m)?;
            let w = format!(
                "direct_sum={} restriction_bijective={}",
                rep.intersection_trivial && rep.sum_covers,
                rep.restriction_injective && rep.restriction_surjective
            );
            out.push(CheckResult::new(e.label(), km(&kappa, m.members()), rep.consistent(), Some(w)));
        }
    }
    Ok(out)
}

fn thm23(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    let Some((m, kappa)) = local_with_largest(r)? else { return Ok(vec![]) };
    let rep = residue_restriction(r, &kappa, &m)?;
    Ok(vec![CheckResult::new(e.label(), "largest subfield represents residues", rep.verdict, Some(km(&kappa, m.members())))])
}

fn prop24(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    if r.is_zero_ring() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for m in r.maximal_ideals()? {
        for kappa in fields_of_representatives(r, &m)? {
            let pass = check_prop_maximal(r, &kappa, &m)?;
            out.push(CheckResult::new(e.label(), format!("maximal {}", km(&kappa, m.members())), pass, None));
        }
    }
    Ok(out)
}

fn diagram(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    if r.is_zero_ring() {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for t in split_triples(r)? {
        let rep = verify_split_diagram(&t)?;
        let check = format!("I={} s={:?}", t.ideal().members(), t.section().map());
        let w = if rep.all_pass() {
            format!("{} identities hold", rep.identities.len())
        } else {
            format!("failed: {}", rep.failures().join(", "))
        };
        out.push(CheckResult::new(e.label(), check, rep.all_pass(), Some(w)));
    }
    Ok(out)
}

fn sdp_params(e: &CatalogEntry) -> Option<(u64, u64, SdpKind)> {
    match e.expr.kind {
        ExprKind::Sdp { q, dim, kind } => Some((q, dim, kind)),
        _ => None,
    }
}

fn roundtrip(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let Some((q, dim, kind)) = sdp_params(e) else { return Ok(vec![]) };
    let (k, a) = sdp_pair(q, dim, kind)?;
    let rep = equivalence_roundtrip(&k, &a)?;
    let w = format!("pair={} triple={}", rep.pair_roundtrip, rep.triple_roundtrip);
    Ok(vec![CheckResult::new(e.label(), "pair -> triple -> pair", rep.pass(), Some(w))])
}

fn extremes(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let Some((q, dim, kind)) = sdp_params(e) else { return Ok(vec![]) };
    let (k, a) = sdp_pair(q, dim, kind)?;
    Ok(vec![match kind {
        SdpKind::Unital => {
            let w = extreme_unital_check(&k, &a)?;
            CheckResult::new(e.label(), "(-1,1) not invertible, not local", w.pass(), Some(w.trace.join("; ")))
        }
        SdpKind::Zero => {
            let w = extreme_squarezero_check(&k, &a)?;
            CheckResult::new(e.label(), "(a,k) invertible for k != 0, local", w.pass(), Some(w.trace.join("; ")))
        }
    }])
}

fn dichotomy(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    let mut out = Vec::new();
    for ideal in r.all_ideals()? {
        let d = dichotomy_check(r, &ideal)?;
        let w = format!(
            "N={} idempotent={} nilpotent={} complete={}",
            d.stable_index, d.idempotent, d.nilpotent, d.complete
        );
        out.push(CheckResult::new(e.label(), format!("I={}", d.ideal), d.pass(), Some(w)));
    }
    Ok(out)
}

/// `char A = char A/m` for a local ring.
pub fn is_equicharacteristic(ring: &RingTable) -> Result<Option<bool>> {
    if ring.is_zero_ring() {
        return Ok(None);
    }
    let Some(m) = ring.is_local()? else { return Ok(None) };
    let (residue, _) = ring.quotient(&m)?;
    Ok(Some(ring.characteristic() == residue.characteristic()))
}

fn cohen(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let r = &e.ring;
    if is_equicharacteristic(r)? != Some(true) {
        return Ok(vec![]);
    }
    let m = r.is_local()?.expect("local");
    let reps = fields_of_representatives(r, &m)?;
    let w = reps.first().map(|k| format!("k={}", k.members()));
    Ok(vec![CheckResult::new(e.label(), "field of representatives exists", !reps.is_empty(), w)])
}

/// Expressions `GF(q)[x]/(f)` for every monic `f` of degree `1..=3`.
fn gelfand_texts(spec: &CatalogSpec) -> Vec<String> {
    let mut out = Vec::new();
    for &q in &spec.primes {
        let Ok(field) = gf_ring(q) else { continue };
        for d in 1..=3usize {
            if q.pow(d as u32) > spec.max_order as u64 {
                break;
            }
            for f in table_poly::monic_of_degree(&field, d) {
                out.push(crate::dsl::polyquot_text(q, &f));
            }
        }
    }
    out
}

fn gelfand(e: &CatalogEntry) -> Result<Vec<CheckResult>> {
    let ExprKind::PolyQuot(base, p) = &e.expr.kind else { return Ok(vec![]) };
    let ExprKind::Gf(q) = base.kind else { return Ok(vec![]) };
    let field = gf_ring(q)?;
    let f = p.dense(&field);
    let roots = field.elements().filter(|&x| table_poly::eval(&field, &f, x) == field.zero()).count();
    let r = &e.ring;
    // constants of GF(q)[x]/(f) are the indices 0..q
    let kappa = Subring::from_members(r, (0..q as usize).collect()).expect("constants form a subring");
    let ka = KappaAlgebra::new(r, kappa)?;
    let rep = gelfand_bijection_check(r, &ka)?;
    let w = format!(
        "homs={} rational={} roots={} max={}",
        rep.homs, rep.rational_ideals, roots, rep.maximal_ideals
    );
    Ok(vec![
        CheckResult::new(
            e.label(),
            "homs <-> rational maximal ideals",
            rep.restricted_bijection && rep.homs == rep.rational_ideals,
            Some(w.clone()),
        ),
        CheckResult::new(e.label(), "homs = distinct roots", rep.homs == roots, Some(w)),
    ])
}

fn spectrum_rows(primes: &[u64]) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for &q in primes {
        for dmax in 1..=3 {
            let label = format!("GF({q})[x]");
            let row = match polyring_max_spectrum(q, dmax) {
                Ok(s) => {
                    let n = s.iter().filter(|x| x.residue_order == q).count();
                    CheckResult::new(
                        label,
                        format!("spectrum dmax={dmax}"),
                        n as u64 == q,
                        Some(format!("{n} of {} points rational", s.len())),
                    )
                }
                Err(err) => CheckResult::new(label, format!("spectrum dmax={dmax}"), false, Some(err.to_string())),
            };
            out.push(row);
        }
    }
    out
}

fn polyquot_degree(e: &CatalogEntry) -> Option<u64> {
    match &e.expr.kind {
        ExprKind::PolyQuot(base, p) if matches!(base.kind, ExprKind::Gf(_)) => {
            p.terms.iter().map(|t| t.value().1).max()
        }
        _ => None,
    }
}

/// Runs one verification suite over the catalog described by `opts`.
pub fn run_suite(suite: Suite, opts: &RunOptions) -> std::result::Result<SuiteReport, SuiteError> {
    let entries = build_catalog(&opts.catalog, &opts.extra, opts.exec)?;
    let exec = opts.exec;
    let name = suite.name();
    Ok(match suite {
        Suite::Lemma21 => sweep(name, &entries, exec, lemma21),
        Suite::Lemma22 => sweep(name, &entries, exec, lemma22),
        Suite::Thm23 => sweep(name, &entries, exec, thm23),
        Suite::Prop24 => sweep(name, &entries, exec, prop24),
        Suite::Diagram => sweep(name, &entries, exec, diagram),
        Suite::Roundtrip => sweep(name, &entries, exec, roundtrip),
        Suite::Dichotomy => sweep(name, &entries, exec, dichotomy),
        Suite::Extremes => sweep(name, &entries, exec, extremes),
        Suite::Cohen => sweep(name, &entries, exec, cohen),
        Suite::Gelfand => {
            let mut texts = gelfand_texts(&opts.catalog);
            texts.extend(
                entries
                    .iter()
                    .filter(|e| polyquot_degree(e).is_some_and(|d| d <= 3))
                    .map(|e| e.label().to_string()),
            );
            texts.sort();
            texts.dedup();
            let family: Vec<CatalogEntry> = exec
                .map(&texts, |t| CatalogEntry::from_text(t))
                .into_iter()
                .collect::<std::result::Result<_, _>>()?;
            let report = sweep(name, &family, exec, gelfand);
            let mut results = report.results;
            results.extend(spectrum_rows(&opts.catalog.primes));
            SuiteReport::new(name, report.catalog, results)
        }
    })
}

/// Runs one search; findings are the failing rows.
pub fn run_search(target: SearchTarget, opts: &RunOptions) -> std::result::Result<SuiteReport, SuiteError> {
    let entries = build_catalog(&opts.catalog, &opts.extra, opts.exec)?;
    let exec = opts.exec;
    let name = target.name();
    Ok(match target {
        SearchTarget::Q31 => {
            let rings: Vec<RingTable> = entries.iter().map(|e| e.ring.clone()).collect();
            let catalog = entries.iter().map(|e| e.label().to_string()).collect();
            match complete_local_survey(&rings, exec) {
                Ok(survey) => {
                    let rows = survey
                        .rows
                        .into_iter()
                        .map(|r| {
                            let w = format!(
                                "{} N={} idempotent={} nilpotent={}",
                                r.ideal, r.stable_index, r.idempotent, r.nilpotent
                            );
                            CheckResult::new(r.ring, "complete at m", r.complete, Some(w))
                        })
                        .collect();
                    SuiteReport::new(name, catalog, rows)
                }
                Err(err) => SuiteReport::new(
                    name,
                    catalog,
                    vec![CheckResult::new("catalog", "error", false, Some(err.to_string()))],
                ),
            }
        }
        SearchTarget::AbsIso => sweep(name, &entries, exec, |e| {
            Ok(absiso_probe(&e.ring, false)?
                .into_iter()
                .map(|row| {
                    let w = match (&row.rescued_by, row.gap) {
                        (_, false) => format!("unital={} restriction bijective", row.kappa_contains_one),
                        (Some(k), true) => format!("unital={} gap, rescued by k={k}", row.kappa_contains_one),
                        (None, true) => format!("unital={} gap, not rescued", row.kappa_contains_one),
                    };
                    CheckResult::new(e.label(), format!("k={} m={}", row.kappa, row.maximal_ideal), !row.gap, Some(w))
                })
                .collect())
        }),
        SearchTarget::Uniqueness => sweep(name, &entries, exec, |e| {
            if e.ring.is_zero_ring() || e.ring.is_local()?.is_none() {
                return Ok(vec![]);
            }
            let found = uniqueness_probe(&e.ring)?;
            let w = found.as_ref().map(|f| {
                f.representatives.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(" ")
            });
            Ok(vec![CheckResult::new(e.label(), "unique maximal representative", found.is_none(), w)])
        }),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueVerdict {
    pub maximal_ideal: ElemSet,
    pub kappa: ElemSet,
    pub verdict: bool,
}

/// Summary of one ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingInfo {
    pub label: String,
    pub order: usize,
    pub characteristic: usize,
    pub units: usize,
    pub local: bool,
    pub equicharacteristic: Option<bool>,
    pub maximal_ideal_sizes: Vec<usize>,
    pub subfields: Vec<ElemSet>,
    pub largest_subfield: Option<ElemSet>,
    pub verdicts: Vec<ResidueVerdict>,
}

impl RingInfo {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("info serializes") + "\n"
    }
}

impl fmt::Display for RingInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring           {}", self.label)?;
        writeln!(f, "order          {}", self.order)?;
        writeln!(f, "characteristic {}", self.characteristic)?;
        writeln!(f, "units          {}", self.units)?;
        writeln!(f, "local          {}", self.local)?;
        match self.equicharacteristic {
            Some(b) => writeln!(f, "equichar       {b}")?,
            None => writeln!(f, "equichar       n/a")?,
        }
        writeln!(f, "max ideals     {} (sizes {:?})", self.maximal_ideal_sizes.len(), self.maximal_ideal_sizes)?;
        let subs: Vec<String> = self.subfields.iter().map(|s| s.to_string()).collect();
        writeln!(f, "subfields      {}", if subs.is_empty() { "none".into() } else { subs.join(" ") })?;
        match &self.largest_subfield {
            Some(k) => writeln!(f, "largest        {k}")?,
            None => writeln!(f, "largest        none")?,
        }
        for v in &self.verdicts {
            writeln!(f, "A = k + m      k={} m={} {}", v.kappa, v.maximal_ideal, v.verdict)?;
        }
        Ok(())
    }
}

/// Order, units, locality, maximal ideals, subfields and decompositions.
pub fn info(text: &str) -> std::result::Result<RingInfo, String> {
    let expr = parse_ring_expr(text).map_err(|e| e.to_string())?;
    let ring = crate::dsl::evaluate(&expr).map_err(|e| e.to_string())?;
    ring_info(&ring).map_err(|e| e.to_string())
}

pub fn ring_info(ring: &RingTable) -> Result<RingInfo> {
    let maxes = if ring.is_zero_ring() { Vec::new() } else { ring.maximal_ideals()? };
    let subfields = enumerate_subfields(ring, true)?;
    let mut verdicts = Vec::new();
    for m in &maxes {
        for k in &subfields {
            verdicts.push(ResidueVerdict {
                maximal_ideal: m.members().clone(),
                kappa: k.members().clone(),
                verdict: residue_restriction(ring, k, m)?.verdict,
            });
        }
    }
    Ok(RingInfo {
        label: ring.label().to_string(),
        order: ring.order(),
        characteristic: ring.characteristic(),
        units: ring.units().len(),
        local: maxes.len() == 1,
        equicharacteristic: is_equicharacteristic(ring)?,
        maximal_ideal_sizes: maxes.iter().map(|m| m.len()).collect(),
        subfields: subfields.iter().map(|k| k.members().clone()).collect(),
        largest_subfield: largest_subfield(ring)?.map(|k| k.members().clone()),
        verdicts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(max: usize) -> RunOptions {
        RunOptions::with_max_order(max)
    }

    #[test]
    fn names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert_eq!("bogus".parse::<Suite>(), Err(SuiteError::UnknownSuite("bogus".into())));
        assert!("q31".parse::<SearchTarget>().is_ok());
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let r = run_suite(s, &small(16)).unwrap();
            assert!(r.all_pass(), "{s}: {:?}", r.failures().collect::<Vec<_>>());
            assert!(!r.results.is_empty(), "{s} produced no results");
        }
    }

    #[test]
    fn deterministic_under_parallelism() {
        let mut seq = small(16);
        seq.exec = Exec::Sequential;
        let par = small(16);
        for s in [Suite::Lemma22, Suite::Dichotomy] {
            assert_eq!(run_suite(s, &seq).unwrap().to_json(), run_suite(s, &par).unwrap().to_json());
        }
    }

    #[test]
    fn searches() {
        let r = run_search(SearchTarget::Q31, &small(16)).unwrap();
        assert!(r.all_pass() && !r.results.is_empty());
        assert!(run_search(SearchTarget::AbsIso, &small(0)).unwrap().results.is_empty());
        let u = run_search(SearchTarget::Uniqueness, &small(16)).unwrap();
        assert!(u.all_pass());
        // non-unital subfields of F2 x F2 reach the residue fields abstractly
        let a = run_search(SearchTarget::AbsIso, &small(4)).unwrap();
        assert!(a.failures().any(|r| r.ring == "prod(GF(2),GF(2))"));
    }

    #[test]
    fn extra_rings_are_appended() {
        let mut o = small(1);
        o.extra = vec!["GF(5)[x]/(x^2)".into()];
        let r = run_suite(Suite::Thm23, &o).unwrap();
        assert_eq!(r.catalog, vec!["GF(5)[x]/(x^2)".to_string()]);
        assert_eq!(r.summary.pass, 1);
        o.extra = vec!["Z/".into()];
        assert!(matches!(run_suite(Suite::Thm23, &o), Err(SuiteError::Ring(_))));
    }

    #[test]
    fn info_examples() {
        let z4 = info("Z/4").unwrap();
        assert!(z4.local && z4.subfields.is_empty() && z4.equicharacteristic == Some(false));
        let d = info("GF(2)[x]/(x^2)").unwrap();
        assert!(d.local);
        assert_eq!(d.subfields, vec![ElemSet::from_iter([0, 1])]);
        assert!(d.verdicts.iter().all(|v| v.verdict));
        let p = info("prod(GF(2),GF(2))").unwrap();
        assert_eq!(p.maximal_ideal_sizes, vec![2, 2]);
        assert!(info("GF(6)").is_err());
        assert!(z4.to_string().contains("local          true"));
    }
}
