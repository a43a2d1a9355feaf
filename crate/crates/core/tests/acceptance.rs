//! Runs the thirteen acceptance criteria and prints one line per criterion.
//! Exits nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use residua::catalog::CatalogSpec;
use residua::completion::{inverse_limit, is_complete};
use residua::dsl::{parse_ring_expr, sdp_pair, DslError, SdpKind};
use residua::poly::{gf_ring, poly_quotient_ring, polyring_max_spectrum, table_poly};
use residua::representatives::{algebra_homs, enumerate_subfields, gelfand_bijection_check, KappaAlgebra};
use residua::ring::{find_isomorphism, hom_enumerate};
use residua::split::equivalence_roundtrip;
use residua::suites::{run_search, run_suite, RunOptions, SearchTarget, Suite};
use residua::{RingTable, Subring};

struct Outcome {
    pass: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn opts(max_order: usize) -> RunOptions {
    RunOptions { catalog: CatalogSpec { max_order, primes: vec![2, 3] }, ..Default::default() }
}

/// Suite at `max_order`, with failure count, instance count and elapsed time.
fn suite(s: Suite, max_order: usize) -> (residua::report::SuiteReport, Duration) {
    let t = Instant::now();
    let r = run_suite(s, &opts(max_order)).expect("suite runs");
    (r, t.elapsed())
}

fn summary(r: &residua::report::SuiteReport) -> String {
    let first = r.failures().next().map(|f| format!("; first failure {} / {}", f.ring, f.check)).unwrap_or_default();
    format!("{} checks over {} rings, {} failures{first}", r.results.len(), r.instances(), r.summary.fail)
}

fn c1() -> Outcome {
    let (r, dt) = suite(Suite::Lemma21, 64);
    let char2 = r.results.iter().any(|x| ring_char(&x.ring).is_multiple_of(2));
    let char3 = r.results.iter().any(|x| ring_char(&x.ring).is_multiple_of(3));
    outcome(
        r.all_pass() && r.instances() >= 30 && char2 && char3 && dt < Duration::from_secs(60),
        format!("{}, {:.2?}", summary(&r), dt),
    )
}

fn ring_char(label: &str) -> usize {
    residua::dsl::ring_from_str(label).unwrap().characteristic()
}

fn c2() -> Outcome {
    let (r, _) = suite(Suite::Lemma22, 64);
    outcome(r.all_pass() && !r.results.is_empty(), summary(&r))
}

fn c3() -> Outcome {
    let (r, _) = suite(Suite::Thm23, 64);
    outcome(r.all_pass() && !r.results.is_empty(), summary(&r))
}

fn c4() -> Outcome {
    let (r, _) = suite(Suite::Prop24, 64);
    outcome(r.all_pass() && !r.results.is_empty(), summary(&r))
}

fn c5() -> Outcome {
    let (r, dt) = suite(Suite::Diagram, 32);
    outcome(
        r.all_pass() && !r.results.is_empty() && dt < Duration::from_secs(120),
        format!("{}, {:.2?}", summary(&r), dt),
    )
}

fn c6() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for q in [2, 3] {
        for dim in 1..=2 {
            for kind in [SdpKind::Zero, SdpKind::Unital] {
                let (k, a) = sdp_pair(q, dim, kind).unwrap();
                checked += 1;
                if !equivalence_roundtrip(&k, &a).unwrap().pass() {
                    bad.push(format!("sdp({q},{dim},{})", kind.as_str()));
                }
            }
        }
    }
    let (r, _) = suite(Suite::Roundtrip, 64);
    outcome(
        bad.is_empty() && r.all_pass(),
        format!("{checked} pairs, failures {bad:?}; suite: {}", summary(&r)),
    )
}

fn c7() -> Outcome {
    let (r, _) = suite(Suite::Extremes, 64);
    let unital = r.results.iter().filter(|x| x.ring.contains("unital")).count();
    let zero = r.results.iter().filter(|x| x.ring.contains("zero")).count();
    outcome(r.all_pass() && unital > 0 && zero > 0, format!("{unital} unital, {zero} zero; {}", summary(&r)))
}

fn c8() -> Outcome {
    let (r, _) = suite(Suite::Dichotomy, 32);
    let z8 = RingTable::zmod(8).unwrap();
    let anchor1 = is_complete(&z8, &z8.ideal_generated(&[2]).unwrap()).unwrap();
    let f2 = gf_ring(2).unwrap();
    let sq = RingTable::product(&f2, &f2).unwrap();
    // (1,0) has index 1*2 + 0
    let axis = sq.ideal_generated(&[2]).unwrap();
    let anchor2 = !is_complete(&sq, &axis).unwrap();
    let lim = inverse_limit(&sq, &axis).unwrap();
    let anchor3 = find_isomorphism(&lim.limit, &f2).unwrap().is_some();
    outcome(
        r.all_pass() && anchor1 && anchor2 && anchor3,
        format!(
            "{}; Z/8 at (2) complete={anchor1}; F2xF2 at F2x0 complete={}, limit of order {} iso F2={anchor3}",
            summary(&r),
            !anchor2,
            lim.limit.order()
        ),
    )
}

fn c9() -> Outcome {
    let (r, _) = suite(Suite::Cohen, 64);
    outcome(r.all_pass() && !r.results.is_empty(), summary(&r))
}

fn c10() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    for p in [2u64, 3] {
        let field = gf_ring(p).unwrap();
        for d in 1..=3 {
            for f in table_poly::monic_of_degree(&field, d) {
                let coeffs: Vec<u64> = f.iter().map(|&c| c as u64).collect();
                let ring = poly_quotient_ring(p, &coeffs).unwrap();
                let kappa = Subring::from_members(&ring, (0..p as usize).collect()).unwrap();
                let ka = KappaAlgebra::new(&ring, kappa).unwrap();
                let homs = algebra_homs(&ring, &ka).unwrap().len();
                let g = gelfand_bijection_check(&ring, &ka).unwrap();
                let roots = count_roots_mod_p(p, &coeffs);
                n += 1;
                if !(homs == g.rational_ideals && homs == roots && g.restricted_bijection) {
                    bad.push(ring.label().to_string());
                }
            }
        }
        for dmax in 1..=4 {
            let s = polyring_max_spectrum(p, dmax).unwrap();
            if s.iter().filter(|e| e.residue_order == p).count() as u64 != p {
                bad.push(format!("spectrum GF({p})[x] dmax={dmax}"));
            }
        }
    }
    let (r, _) = suite(Suite::Gelfand, 64);
    outcome(bad.is_empty() && r.all_pass(), format!("{n} quotients, failures {bad:?}; suite: {}", summary(&r)))
}

fn c11() -> Outcome {
    let t = Instant::now();
    let r = run_search(SearchTarget::Q31, &opts(81)).unwrap();
    let dt = t.elapsed();
    let traced = r.results.iter().all(|x| x.witness.is_some());
    outcome(
        r.all_pass() && !r.results.is_empty() && traced && dt < Duration::from_secs(300),
        format!(
            "{} local rings traced over a catalog of {}, {} counterexamples, {:.2?}",
            r.results.len(),
            r.catalog.len(),
            r.summary.fail,
            dt
        ),
    )
}

fn c12() -> Outcome {
    let mut bad = Vec::new();
    let small = rings_upto_16();
    for r in &small {
        let got: Vec<Vec<usize>> = r.maximal_ideals().unwrap().iter().map(|m| m.members().as_slice().to_vec()).collect();
        if got != brute_maximal_ideals(r) {
            bad.push(format!("maximal ideals of {}", r.label()));
        }
        for require_one in [true, false] {
            let got: Vec<Vec<usize>> = enumerate_subfields(r, require_one)
                .unwrap()
                .iter()
                .map(|k| k.members().as_slice().to_vec())
                .collect();
            if got != brute_subfields(r, require_one) {
                bad.push(format!("subfields of {} (require_one={require_one})", r.label()));
            }
        }
    }
    let tiny = rings_upto_8();
    let mut pairs = 0;
    for a in &tiny {
        for b in &tiny {
            for unital in [true, false] {
                pairs += 1;
                let got: Vec<Vec<usize>> = hom_enumerate(a, b, unital).unwrap().iter().map(|h| h.map().to_vec()).collect();
                if got != brute_homs(a, b, unital) {
                    bad.push(format!("homs {} -> {} (unital={unital})", a.label(), b.label()));
                }
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} rings of order <= 16, {pairs} hom scans on order <= 8, disagreements {bad:?}", small.len()),
    )
}

fn c13() -> Outcome {
    let mut bad = Vec::new();
    for text in PARSE_CORPUS {
        match parse_ring_expr(text) {
            Ok(e) => {
                let printed = e.to_string();
                match parse_ring_expr(&printed) {
                    Ok(e2) if e2.same_shape(&e) && e2.to_string() == printed => {}
                    _ => bad.push(text.to_string()),
                }
            }
            Err(_) => bad.push(text.to_string()),
        }
    }
    for text in NEGATIVE_CORPUS {
        match parse_ring_expr(text) {
            Err(DslError::Parse(e)) if e.offset <= text.len() && !e.expected.is_empty() => {}
            _ => bad.push(format!("negative {text:?}")),
        }
    }
    outcome(
        bad.is_empty(),
        format!("{} round-trips, {} rejections, problems {bad:?}", PARSE_CORPUS.len(), NEGATIVE_CORPUS.len()),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 13] = [
        ("unit decomposition over local rings with a largest subfield", c1),
        ("direct sum iff residue restriction bijective", c2),
        ("largest subfield is a field of representatives", c3),
        ("fields of representatives are maximal subfields", c4),
        ("split extension diagram identities, order <= 32", c5),
        ("pair -> triple -> pair round trip", c6),
        ("unital and square-zero extreme cases", c7),
        ("completion dichotomy and anchors, order <= 32", c8),
        ("equicharacteristic local rings have representatives", c9),
        ("algebra homs = rational maximal ideals = roots", c10),
        ("local but not complete search, order <= 81", c11),
        ("brute-force oracle agreement", c12),
        ("parser round trip and positioned errors", c13),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2}: {}  {name} ({}) [{:.2?}]",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            o.detail,
            t.elapsed()
        );
    }
    println!("acceptance: {} of 13 criteria pass", 13 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
