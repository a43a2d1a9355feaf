//! Brute-force oracles and fixed corpora shared by the integration tests.
#![allow(dead_code)]

use residua::catalog::{build_catalog, CatalogSpec};
use residua::dsl::ring_from_str;
use residua::{Exec, RingTable};

type Mask = u32;

fn members(mask: Mask) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

fn has(mask: Mask, x: usize) -> bool {
    mask >> x & 1 == 1
}

fn add_closed(r: &RingTable, s: Mask) -> bool {
    let m = members(s);
    m.iter().all(|&x| m.iter().all(|&y| has(s, r.add(x, y))))
}

fn mul_closed(r: &RingTable, s: Mask) -> bool {
    let m = members(s);
    m.iter().all(|&x| m.iter().all(|&y| has(s, r.mul(x, y))))
}

/// Every ideal, by scanning all subsets. Orders up to 20 or so.
pub fn brute_ideals(r: &RingTable) -> Vec<Vec<usize>> {
    let n = r.order();
    assert!(n <= 20, "subset oracle is exponential");
    (0..(1 as Mask) << n)
        .filter(|&s| {
            has(s, r.zero())
                && add_closed(r, s)
                && members(s).iter().all(|&x| (0..n).all(|a| has(s, r.mul(a, x))))
        })
        .map(members)
        .collect()
}

/// Proper ideals not strictly inside another proper ideal.
pub fn brute_maximal_ideals(r: &RingTable) -> Vec<Vec<usize>> {
    let n = r.order();
    let proper: Vec<Vec<usize>> = brute_ideals(r).into_iter().filter(|i| i.len() < n).collect();
    let mut out: Vec<Vec<usize>> = proper
        .iter()
        .filter(|i| !proper.iter().any(|j| j.len() > i.len() && i.iter().all(|x| j.contains(x))))
        .cloned()
        .collect();
    out.sort();
    out
}

/// Subsets closed under `+` and `*` that form a field under the ring
/// operations, with the ring's `1` when `require_one`.
pub fn brute_subfields(r: &RingTable, require_one: bool) -> Vec<Vec<usize>> {
    let n = r.order();
    assert!(n <= 20, "subset oracle is exponential");
    let mut out = Vec::new();
    for s in 0..(1 as Mask) << n {
        let m = members(s);
        if m.len() < 2 || !has(s, r.zero()) || (require_one && !has(s, r.one())) {
            continue;
        }
        if !add_closed(r, s) || !mul_closed(r, s) {
            continue;
        }
        let Some(&e) = m.iter().find(|&&e| m.iter().all(|&x| r.mul(e, x) == x)) else { continue };
        if e == r.zero() {
            continue;
        }
        if m.iter().all(|&x| x == r.zero() || m.iter().any(|&y| r.mul(x, y) == e)) {
            out.push(m);
        }
    }
    out.sort();
    out
}

/// Every map `A -> B` that preserves `+` and `*` (and `1` when `unital`),
/// found by walking all `|B|^|A|` functions.
pub fn brute_homs(a: &RingTable, b: &RingTable, unital: bool) -> Vec<Vec<usize>> {
    let (n, m) = (a.order(), b.order());
    let mut f = vec![0usize; n];
    let mut out = Vec::new();
    loop {
        let ok = (!unital || f[a.one()] == b.one())
            && (0..n).all(|x| {
                (0..n).all(|y| f[a.add(x, y)] == b.add(f[x], f[y]) && f[a.mul(x, y)] == b.mul(f[x], f[y]))
            });
        if ok {
            out.push(f.clone());
        }
        let mut i = 0;
        loop {
            if i == n {
                out.sort();
                return out;
            }
            f[i] += 1;
            if f[i] < m {
                break;
            }
            f[i] = 0;
            i += 1;
        }
    }
}

/// Number of distinct roots in `Z/p` of the polynomial with the given
/// coefficients (low degree first), by direct evaluation.
pub fn count_roots_mod_p(p: u64, coeffs: &[u64]) -> usize {
    (0..p)
        .filter(|&x| coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % p) == 0)
        .count()
}

/// Rings of order at most 16: the catalog plus every `Z/n` and a few
/// products of three factors.
pub fn rings_upto_16() -> Vec<RingTable> {
    let mut out: Vec<RingTable> = build_catalog(&CatalogSpec { max_order: 16, primes: vec![2, 3] }, &[], Exec::Parallel)
        .unwrap()
        .into_iter()
        .map(|e| e.ring)
        .collect();
    for n in [2, 3, 5, 6, 7, 10, 11, 12, 13, 14, 15] {
        out.push(RingTable::zmod(n).unwrap());
    }
    for t in ["prod(GF(2),prod(GF(2),GF(2)))", "prod(Z/3,Z/5)", "prod(GF(2),GF(7))", "GF(5)[x]/(x)", "sdp(3,1,unital)"] {
        out.push(ring_from_str(t).unwrap());
    }
    out
}

/// Rings of order at most 8 for the map-scan oracle.
pub fn rings_upto_8() -> Vec<RingTable> {
    [
        "Z/2",
        "Z/3",
        "Z/4",
        "GF(4)",
        "GF(2)[x]/(x^2)",
        "prod(GF(2),GF(2))",
        "Z/5",
        "Z/6",
        "Z/7",
        "Z/8",
        "GF(8)",
        "GF(2)[x]/(x^3)",
        "prod(GF(2),GF(4))",
        "prod(GF(2),Z/4)",
        "sdp(2,2,zero)",
    ]
    .iter()
    .map(|t| ring_from_str(t).unwrap())
    .collect()
}

/// Fifty valid expressions, including non-canonical spacing and terms.
pub const PARSE_CORPUS: [&str; 50] = [
    "Z/2",
    "Z/4",
    "Z/1",
    "Z/ 12",
    " Z / 27 ",
    "GF(2)",
    "GF(3)",
    "GF(4)",
    "GF( 9 )",
    "GF(49)",
    "GF(2)[x]/(x^2)",
    "GF(2)[x]/(x^2+x+1)",
    "GF(2)[x]/(x^3+x+1)",
    "GF(2)[x]/(x+x^3+1)",
    "GF(2)[x]/(1+x^2)",
    "GF(3)[x]/(x^2+1)",
    "GF(3)[x]/(2*x^2+2)",
    "GF(3)[x]/(x^3+2*x+1)",
    "GF(3)[x]/( x ^ 2 + 2 * x + 1 )",
    "GF(4)[x]/(x^2+x+2)",
    "GF(4)[x]/(x^2)",
    "GF(4)[x]/(3*x+1)",
    "GF(5)[x]/(x)",
    "GF(2)[x]/(x^1)",
    "GF(2)[x]/(1*x)",
    "GF(2)[x]/(x+x^2+x)",
    "GF(2)[x]/(x^2+0)",
    "GF(2)[x]/(0+x^4)",
    "GF(3)[x]/(x^2+x^2)",
    "prod(GF(2),GF(2))",
    "prod(Z/4,GF(3))",
    "prod( Z/2 , Z/3 )",
    "prod(GF(2)[x]/(x^2),Z/9)",
    "prod(prod(GF(2),GF(2)),GF(2))",
    "prod(GF(2),prod(Z/4,GF(3)))",
    "prod(sdp(2,1,zero),GF(3))",
    "sdp(2,1,zero)",
    "sdp(2,1,unital)",
    "sdp(3,2,zero)",
    "sdp( 4 , 1 , unital )",
    "sdp(8,1,zero)",
    "prod(GF(3)[x]/(x^2),GF(2)[x]/(x^3))",
    "GF(8)[x]/(x^2+7)",
    "GF(9)[x]/(x+8)",
    "GF(3)[x]/(x^4+x+2)",
    "GF(2)[x]/(x^5+x^2+1)",
    "GF(16)[x]/(15*x^2+1)",
    "prod(Z/8,Z/8)",
    "\tGF(2)\n[x]/(x^2)",
    "prod(sdp(2,2,unital),Z/2)",
];

/// Twenty malformed inputs.
pub const NEGATIVE_CORPUS: [&str; 20] = [
    "",
    "Z/",
    "Z/x",
    "Z",
    "GF(",
    "GF(4",
    "GF4)",
    "gf(2)",
    "prod(Z/2)",
    "prod(Z/2,",
    "prod(Z/2,Z/3",
    "sdp(2,1,one)",
    "sdp(2,1)",
    "GF(2)[x]/()",
    "GF(2)[x]/(x^)",
    "GF(2)[x]/(x+)",
    "GF(2)[x/(x)",
    "GF(2)[y]/(x)",
    "Z/4 Z/4",
    "Z/-3",
];
