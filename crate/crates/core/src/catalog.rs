//! The standard ring catalog swept by the suites.

use crate::dsl::{evaluate, parse_ring_expr, polyquot_text, DslError, RingExpr};
use crate::par::Exec;
use crate::poly::{gf_ring, table_poly};
use crate::ring::{RingTable, ENUM_CAP};

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub expr: RingExpr,
    pub ring: RingTable,
}

impl CatalogEntry {
    pub fn label(&self) -> &str {
        self.ring.label()
    }

    pub fn from_text(text: &str) -> Result<Self, DslError> {
        let expr = parse_ring_expr(text)?;
        let ring = evaluate(&expr)?;
        Ok(CatalogEntry { expr, ring })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogSpec {
    pub max_order: usize,
    pub primes: Vec<u64>,
}

impl Default for CatalogSpec {
    fn default() -> Self {
        CatalogSpec { max_order: crate::ring::SUITE_CAP, primes: vec![2, 3] }
    }
}

fn powers_upto(p: u64, max: u64) -> impl Iterator<Item = (u32, u64)> {
    (1u32..).map(move |k| (k, p.pow(k))).take_while(move |&(_, v)| v <= max)
}

/// `GF(q)[x]/(f^e)` for monic irreducible `f` of degree `d`, `d*e >= 2`.
fn polyquot_texts(q: u64, max: u64) -> Vec<(String, u64)> {
    let field = gf_ring(q).expect("prime power");
    let mut out = Vec::new();
    for (d, qd) in powers_upto(q, max) {
        let irreducibles: Vec<_> = table_poly::monic_of_degree(&field, d as usize)
            .filter(|f| table_poly::is_irreducible(&field, f))
            .collect();
        for (e, order) in powers_upto(qd, max) {
            if d * e < 2 {
                continue;
            }
            for f in &irreducibles {
                let fe = (1..e).fold(f.clone(), |acc, _| table_poly::mul(&field, &acc, f));
                out.push((polyquot_text(q, &fe), order));
            }
        }
    }
    out
}

/// Expression texts of the standard catalog, in generation order.
///
/// Families: `Z/p^k` (`k >= 2`; `Z/p` is `GF(p)`), `GF(q)`, `GF(q)[x]/(f^e)`,
/// binary products of those, and `sdp(q, d, zero|unital)` for `d <= 2`.
pub fn catalog_texts(spec: &CatalogSpec) -> Vec<String> {
    let max = spec.max_order as u64;
    let mut primes = spec.primes.clone();
    primes.sort_unstable();
    primes.dedup();
    let mut base: Vec<(String, u64)> = Vec::new();
    for &p in &primes {
        for (k, pk) in powers_upto(p, max) {
            if k >= 2 {
                base.push((format!("Z/{pk}"), pk));
            }
        }
        for (_, q) in powers_upto(p, max) {
            base.push((format!("GF({q})"), q));
        }
        for (_, q) in powers_upto(p, max) {
            base.extend(polyquot_texts(q, max));
        }
    }
    let mut out: Vec<String> = base.iter().map(|(t, _)| t.clone()).collect();
    for (i, (a, na)) in base.iter().enumerate() {
        for (b, nb) in &base[i..] {
            if na * nb <= max {
                out.push(format!("prod({a},{b})"));
            }
        }
    }
    for &p in &primes {
        for (_, q) in powers_upto(p, max) {
            for dim in 1..=2u32 {
                if q.pow(dim + 1) <= max {
                    out.push(format!("sdp({q},{dim},zero)"));
                    out.push(format!("sdp({q},{dim},unital)"));
                }
            }
        }
    }
    out
}

/// Builds the standard catalog, then appends `extra` expressions as given.
pub fn build_catalog(spec: &CatalogSpec, extra: &[String], exec: Exec) -> Result<Vec<CatalogEntry>, DslError> {
    let max = spec.max_order.min(ENUM_CAP);
    let spec = CatalogSpec { max_order: max, primes: spec.primes.clone() };
    let mut texts = catalog_texts(&spec);
    texts.extend(extra.iter().cloned());
    let built: Vec<Result<CatalogEntry, DslError>> = exec.map(&texts, |t| CatalogEntry::from_text(t));
    let mut out: Vec<CatalogEntry> = built.into_iter().collect::<Result<_, _>>()?;
    out.sort_by(|a, b| a.label().cmp(b.label()));
    out.dedup_by(|a, b| a.label() == b.label());
    Ok(out)
}
