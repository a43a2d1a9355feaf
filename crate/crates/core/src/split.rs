//! Split extensions of finite rings.
//!
//! A split triple `(R, I, s)` is a ring, an ideal and a unital section of the
//! projection `p: R -> R/I`. A pair `(K, A)` is a base ring and a commutative,
//! not necessarily unital, `K`-algebra. The semidirect product `A ⋊ K` lives
//! on `A × K` with
//!
//! ```text
//! (a, k)(b, l) = (ab + l·a + k·b, kl),    1 = (0, 1)
//! ```
//!
//! and the two directions `pair_to_triple` / `triple_to_pair` are mutually
//! inverse up to isomorphism, witnessed by `φ(x, u) = x + s(u)` and
//! `ψ(r) = (r - s(p(r)), p(r))`.

use serde::Serialize;

use crate::error::{check_cap, AlgebraError, Result};
use crate::ring::{hom_search, Elem, HomQuery, Ideal, RingMorphism, RingTable, ENUM_CAP};

/// A finite commutative algebra over `base`, possibly without identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonUnitalAlgebra {
    base: RingTable,
    order: usize,
    add: Vec<Elem>,
    mul: Vec<Elem>,
    /// `action[k * order + a] = k·a`.
    action: Vec<Elem>,
    zero: Elem,
    label: String,
}

impl NonUnitalAlgebra {
    /// Validates every algebra axiom over all elements and scalars.
    pub fn from_tables(
        base: &RingTable,
        add: &[Vec<Elem>],
        mul: &[Vec<Elem>],
        action: &[Vec<Elem>],
        zero: Elem,
    ) -> Result<Self> {
        let n = add.len();
        let shape_ok = n >= 1
            && mul.len() == n
            && action.len() == base.order()
            && add.iter().chain(mul).chain(action).all(|r| r.len() == n)
            && add.iter().chain(mul).chain(action).flatten().all(|&v| v < n)
            && zero < n;
        if !shape_ok {
            return Err(AlgebraError::InvalidInput("malformed algebra tables".into()));
        }
        let alg = NonUnitalAlgebra {
            base: base.clone(),
            order: n,
            add: add.iter().flatten().copied().collect(),
            mul: mul.iter().flatten().copied().collect(),
            action: action.iter().flatten().copied().collect(),
            zero,
            label: format!("alg({n})"),
        };
        alg.validate()?;
        Ok(alg)
    }

    /// `base^dim` with the given coordinatewise product (or none).
    fn coordinate(base: &RingTable, dim: usize, unital: bool) -> Result<Self> {
        let q = base.order();
        let n = (q as u128).checked_pow(dim as u32).unwrap_or(u128::MAX);
        check_cap("algebra order", n, ENUM_CAP as u128)?;
        let n = n as usize;
        let digits = |mut m: usize| {
            let mut v = Vec::with_capacity(dim);
            for _ in 0..dim {
                v.push(m % q);
                m /= q;
            }
            v
        };
        let encode = |v: &[Elem]| v.iter().rev().fold(0, |acc, &c| acc * q + c);
        let vecs: Vec<Vec<Elem>> = (0..n).map(digits).collect();
        let zip = |a: Elem, b: Elem, f: &dyn Fn(Elem, Elem) -> Elem| {
            encode(&vecs[a].iter().zip(&vecs[b]).map(|(&x, &y)| f(x, y)).collect::<Vec<_>>())
        };
        let zero = encode(&vec![base.zero(); dim]);
        let mut add = Vec::with_capacity(n * n);
        let mut mul = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                add.push(zip(a, b, &|x, y| base.add(x, y)));
                mul.push(if unital { zip(a, b, &|x, y| base.mul(x, y)) } else { zero });
            }
        }
        let mut action = Vec::with_capacity(q * n);
        for k in base.elements() {
            for v in &vecs {
                action.push(encode(&v.iter().map(|&x| base.mul(k, x)).collect::<Vec<_>>()));
            }
        }
        let kind = if unital { "unital" } else { "zero" };
        Ok(NonUnitalAlgebra {
            base: base.clone(),
            order: n,
            add,
            mul,
            action,
            zero,
            label: format!("{kind}^{dim}/{}", base.label()),
        })
    }

    /// `base^dim` with identically zero multiplication.
    pub fn zero_algebra(base: &RingTable, dim: usize) -> Result<Self> {
        Self::coordinate(base, dim, false)
    }

    /// `base^dim` with coordinatewise multiplication, unit `(1, ..., 1)`.
    pub fn unital_algebra(base: &RingTable, dim: usize) -> Result<Self> {
        Self::coordinate(base, dim, true)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.order;
        let k = &self.base;
        let fail = |axiom, witness: Vec<Elem>| Err(AlgebraError::AxiomViolation { axiom, witness });
        for a in 0..n {
            if self.add(self.zero, a) != a {
                return fail("algebra additive identity", vec![a]);
            }
            if !(0..n).any(|b| self.add(a, b) == self.zero) {
                return fail("algebra additive inverse", vec![a]);
            }
            if self.act(k.one(), a) != a {
                return fail("unital scalar action", vec![a]);
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.add(a, b) != self.add(b, a) {
                    return fail("algebra additive commutativity", vec![a, b]);
                }
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("algebra multiplicative commutativity", vec![a, b]);
                }
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return fail("algebra additive associativity", vec![a, b, c]);
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return fail("algebra multiplicative associativity", vec![a, b, c]);
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return fail("algebra distributivity", vec![a, b, c]);
                    }
                }
                for s in k.elements() {
                    if self.act(s, self.add(a, b)) != self.add(self.act(s, a), self.act(s, b)) {
                        return fail("scalar action additive", vec![s, a, b]);
                    }
                    if self.act(s, self.mul(a, b)) != self.mul(self.act(s, a), b) {
                        return fail("multiplication bilinear", vec![s, a, b]);
                    }
                }
            }
            for s in k.elements() {
                for t in k.elements() {
                    if self.act(k.mul(s, t), a) != self.act(s, self.act(t, a)) {
                        return fail("scalar action associative", vec![s, t, a]);
                    }
                    if self.act(k.add(s, t), a) != self.add(self.act(s, a), self.act(t, a)) {
                        return fail("scalar action distributive", vec![s, t, a]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn base(&self) -> &RingTable {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn act(&self, k: Elem, a: Elem) -> Elem {
        self.action[k * self.order + a]
    }

    pub fn neg(&self, a: Elem) -> Elem {
        (0..self.order)
            .find(|&b| self.add(a, b) == self.zero)
            .expect("validated additive group")
    }

    pub fn has_zero_multiplication(&self) -> bool {
        self.mul.iter().all(|&v| v == self.zero)
    }

    /// A nonzero multiplicative identity, if the algebra has one.
    pub fn unit(&self) -> Option<Elem> {
        (0..self.order)
            .filter(|&e| e != self.zero)
            .find(|&e| (0..self.order).all(|x| self.mul(e, x) == x))
    }
}

/// `A ⋊ K` with `(a, k)` at index `a * |K| + k`. The result is run through
/// full ring-axiom validation.
pub fn semidirect_pair(k: &RingTable, a: &NonUnitalAlgebra) -> Result<RingTable> {
    if a.base() != k {
        return Err(AlgebraError::InvalidInput("algebra is over a different base ring".into()));
    }
    let m = k.order();
    let n = a.order() * m;
    check_cap("semidirect product order", n as u128, crate::ring::TABLE_CAP as u128)?;
    let mut add = vec![vec![0; n]; n];
    let mut mul = vec![vec![0; n]; n];
    for x in 0..n {
        let (xa, xk) = (x / m, x % m);
        for y in 0..n {
            let (ya, yk) = (y / m, y % m);
            add[x][y] = a.add(xa, ya) * m + k.add(xk, yk);
            let first = a.add(a.add(a.mul(xa, ya), a.act(yk, xa)), a.act(xk, ya));
            mul[x][y] = first * m + k.mul(xk, yk);
        }
    }
    let zero = a.zero() * m + k.zero();
    let one = a.zero() * m + k.one();
    Ok(RingTable::from_tables(&add, &mul, zero, one)?.with_label(format!("{} x| {}", a.label(), k.label())))
}

/// A ring, an ideal, the quotient with its projection, and a unital section.
#[derive(Debug, Clone)]
pub struct SplitTriple {
    ring: RingTable,
    ideal: Ideal,
    quotient: RingTable,
    projection: RingMorphism,
    section: RingMorphism,
}

impl SplitTriple {
    /// Checks that `section` is a unital homomorphism `R/I -> R` with
    /// `p ∘ s = 1`.
    pub fn new(ring: RingTable, ideal: Ideal, section: Vec<Elem>) -> Result<Self> {
        let (quotient, projection) = ring
            .quotient(&ideal)
            .map_err(|e| AlgebraError::InvalidTriple(e.to_string()))?;
        let section = RingMorphism::new(&quotient, &ring, section, true)
            .map_err(|e| AlgebraError::InvalidTriple(format!("section: {e}")))?;
        if let Some(u) = quotient.elements().find(|&u| projection.apply(section.apply(u)) != u) {
            return Err(AlgebraError::InvalidTriple(format!("p(s({u})) != {u}")));
        }
        Ok(SplitTriple { ring, ideal, quotient, projection, section })
    }

    pub fn ring(&self) -> &RingTable {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn quotient(&self) -> &RingTable {
        &self.quotient
    }

    pub fn projection(&self) -> &RingMorphism {
        &self.projection
    }

    pub fn section(&self) -> &RingMorphism {
        &self.section
    }
}

/// `(A ⋊ K, A × {0}, k ↦ (0, k))`.
pub fn pair_to_triple(k: &RingTable, a: &NonUnitalAlgebra) -> Result<SplitTriple> {
    let ring = semidirect_pair(k, a)?;
    let m = k.order();
    let ideal = Ideal::new(&ring, (0..a.order()).map(|x| x * m + k.zero()).collect())?;
    let (quotient, p) = ring.quotient(&ideal)?;
    // each coset of (x, j) is determined by j; pick (0, j)
    let mut coset_rep = vec![0; quotient.order()];
    for r in ring.elements() {
        coset_rep[p.apply(r)] = r;
    }
    let section = coset_rep.iter().map(|&r| a.zero() * m + r % m).collect();
    SplitTriple::new(ring, ideal, section)
}

/// `(R/I, I)` with `I` made an `R/I`-algebra through `u·x = s(u)x`.
pub fn triple_to_pair(t: &SplitTriple) -> Result<(RingTable, NonUnitalAlgebra)> {
    let r = &t.ring;
    let members = t.ideal.members();
    let n = members.len();
    let pos = |x: Elem| members.position(x).expect("ideal closed");
    let add: Vec<Vec<Elem>> = members.iter().map(|x| members.iter().map(|y| pos(r.add(x, y))).collect()).collect();
    let mul: Vec<Vec<Elem>> = members.iter().map(|x| members.iter().map(|y| pos(r.mul(x, y))).collect()).collect();
    let action: Vec<Vec<Elem>> = t
        .quotient
        .elements()
        .map(|u| members.iter().map(|x| pos(r.mul(t.section.apply(u), x))).collect())
        .collect();
    let zero = pos(r.zero());
    let alg = NonUnitalAlgebra::from_tables(&t.quotient, &add, &mul, &action, zero)
        .map_err(|e| AlgebraError::InvalidTriple(format!("ideal is not an algebra: {e}")))?
        .with_label(format!("I<{}>", r.label()));
    debug_assert_eq!(alg.order(), n);
    Ok((t.quotient.clone(), alg))
}

/// Every unital `s: R/I -> R` with `p ∘ s = 1`.
pub fn sections_enumerate(ring: &RingTable, ideal: &Ideal) -> Result<Vec<RingMorphism>> {
    let (quotient, p) = ring.quotient(ideal)?;
    let lands_in_coset = |u: Elem, t: Elem| p.apply(t) == u;
    let q = HomQuery { unital: true, allowed: Some(&lands_in_coset), ..Default::default() };
    let homs = hom_search(&quotient, ring, &q)?;
    Ok(homs
        .into_iter()
        .filter(|s| quotient.elements().all(|u| p.apply(s.apply(u)) == u))
        .collect())
}

/// All split triples `(R, I, s)` over every ideal of `ring`.
pub fn split_triples(ring: &RingTable) -> Result<Vec<SplitTriple>> {
    let mut out = Vec::new();
    for ideal in ring.all_ideals()? {
        for s in sections_enumerate(ring, &ideal)? {
            out.push(SplitTriple::new(ring.clone(), ideal.clone(), s.map().to_vec())?);
        }
    }
    Ok(out)
}

/// The comparison maps between `R` and `I ⋊ R/I`.
#[derive(Debug, Clone)]
pub struct PhiPsi {
    pub base: RingTable,
    pub algebra: NonUnitalAlgebra,
    /// `I ⋊ R/I`.
    pub semidirect: RingTable,
    /// `I ⋊ R/I -> R`.
    pub phi: RingMorphism,
    /// `R -> I ⋊ R/I`.
    pub psi: RingMorphism,
}

pub fn build_phi_psi(t: &SplitTriple) -> Result<PhiPsi> {
    let (base, algebra) = triple_to_pair(t)?;
    let semidirect = semidirect_pair(&base, &algebra)?;
    let r = &t.ring;
    let m = base.order();
    let members = t.ideal.members();
    let phi_map = semidirect
        .elements()
        .map(|e| r.add(members.as_slice()[e / m], t.section.apply(e % m)))
        .collect();
    let psi_map = r
        .elements()
        .map(|x| {
            let u = t.projection.apply(x);
            let rest = r.sub(x, t.section.apply(u));
            members.position(rest).expect("r - s(p(r)) lies in I") * m + u
        })
        .collect();
    let phi = RingMorphism::new(&semidirect, r, phi_map, true)
        .map_err(|e| AlgebraError::InvalidTriple(format!("phi: {e}")))?;
    let psi = RingMorphism::new(r, &semidirect, psi_map, true)
        .map_err(|e| AlgebraError::InvalidTriple(format!("psi: {e}")))?;
    Ok(PhiPsi { base, algebra, semidirect, phi, psi })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub checked: usize,
    pub pass: bool,
    pub counterexample: Option<Elem>,
}

impl IdentityCheck {
    fn over(name: &'static str, n: usize, holds: impl Fn(Elem) -> bool) -> Self {
        let counterexample = (0..n).find(|&x| !holds(x));
        IdentityCheck { name, checked: n, pass: counterexample.is_none(), counterexample }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiagramReport {
    pub ring: String,
    pub ideal_size: usize,
    /// The six commuting identities, pointwise.
    pub identities: Vec<IdentityCheck>,
    /// Homomorphism (and, where required, unitality) checks on each map.
    pub morphisms: Vec<IdentityCheck>,
}

impl DiagramReport {
    pub fn all_pass(&self) -> bool {
        self.identities.iter().chain(&self.morphisms).all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        self.identities
            .iter()
            .chain(&self.morphisms)
            .filter(|c| !c.pass)
            .map(|c| c.name)
            .collect()
    }
}

/// Pointwise check of the split-extension diagram
///
/// ```text
/// I --i--> R  --p-->  R/I      φ∘ι₁ = i,  p∘φ = π₂,  ψ∘s = ι₂,
/// |        |φ ↑ψ     |         π₂∘ι₂ = 1, φ∘ψ = 1,   ψ∘φ = 1
/// I -ι₁-> I⋊R/I -π₂-> R/I
/// ```
pub fn verify_split_diagram(t: &SplitTriple) -> Result<DiagramReport> {
    let pp = build_phi_psi(t)?;
    let r = &t.ring;
    let s_ring = &pp.semidirect;
    let m = pp.base.order();
    let members = t.ideal.members().as_slice();
    let n_i = members.len();
    let iota1 = |x: Elem| x * m + pp.base.zero();
    let incl = |x: Elem| members[x];
    let pi2 = |e: Elem| e % m;
    let iota2 = |u: Elem| pp.algebra.zero() * m + u;
    let (phi, psi, p, s) = (&pp.phi, &pp.psi, &t.projection, &t.section);

    let identities = vec![
        IdentityCheck::over("phi.iota1 = i", n_i, |x| phi.apply(iota1(x)) == incl(x)),
        IdentityCheck::over("p.phi = pi2", s_ring.order(), |e| p.apply(phi.apply(e)) == pi2(e)),
        IdentityCheck::over("psi.s = iota2", m, |u| psi.apply(s.apply(u)) == iota2(u)),
        IdentityCheck::over("pi2.iota2 = 1", m, |u| pi2(iota2(u)) == u),
        IdentityCheck::over("phi.psi = 1_R", r.order(), |x| phi.apply(psi.apply(x)) == x),
        IdentityCheck::over("psi.phi = 1", s_ring.order(), |e| psi.apply(phi.apply(e)) == e),
    ];

    let q = &t.quotient;
    let alg = &pp.algebra;
    let hom_from_ring = |name, src: &RingTable, tgt: &RingTable, f: &dyn Fn(Elem) -> Elem, unital: bool| {
        let n = src.order();
        IdentityCheck::over(name, n * n, |ab| {
            let (a, b) = (ab / n, ab % n);
            f(src.add(a, b)) == tgt.add(f(a), f(b))
                && f(src.mul(a, b)) == tgt.mul(f(a), f(b))
                && (!unital || f(src.one()) == tgt.one())
        })
    };
    let hom_from_ideal = |name, tgt: &RingTable, f: &dyn Fn(Elem) -> Elem| {
        IdentityCheck::over(name, n_i * n_i, |ab| {
            let (a, b) = (ab / n_i, ab % n_i);
            f(alg.add(a, b)) == tgt.add(f(a), f(b)) && f(alg.mul(a, b)) == tgt.mul(f(a), f(b))
        })
    };
    let morphisms = vec![
        hom_from_ring("p unital hom", r, q, &|x| p.apply(x), true),
        hom_from_ring("s unital hom", q, r, &|u| s.apply(u), true),
        hom_from_ring("phi unital hom", s_ring, r, &|e| phi.apply(e), true),
        hom_from_ring("psi unital hom", r, s_ring, &|x| psi.apply(x), true),
        hom_from_ring("pi2 unital hom", s_ring, q, &pi2, true),
        hom_from_ring("iota2 unital hom", q, s_ring, &iota2, true),
        hom_from_ideal("i hom", r, &incl),
        hom_from_ideal("iota1 hom", s_ring, &iota1),
    ];
    Ok(DiagramReport {
        ring: r.label().to_string(),
        ideal_size: n_i,
        identities,
        morphisms,
    })
}

/// Searches for a bijection `f: A -> B` with `f(a+b) = f(a)+f(b)`,
/// `f(ab) = f(a)f(b)` and `f(k·a) = σ(k)·f(a)`.
fn algebra_isomorphism(a: &NonUnitalAlgebra, b: &NonUnitalAlgebra, sigma: &RingMorphism) -> Option<Vec<Elem>> {
    if a.order() != b.order() {
        return None;
    }
    let n = a.order();
    let mut img = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn consistent(a: &NonUnitalAlgebra, b: &NonUnitalAlgebra, sigma: &RingMorphism, img: &[Elem], x: Elem) -> bool {
        let set = |v: Elem| img[v] != usize::MAX;
        for y in 0..img.len() {
            if !set(y) {
                continue;
            }
            let s = a.add(x, y);
            if set(s) && img[s] != b.add(img[x], img[y]) {
                return false;
            }
            let p = a.mul(x, y);
            if set(p) && img[p] != b.mul(img[x], img[y]) {
                return false;
            }
        }
        for s in a.base().elements() {
            let sx = a.act(s, x);
            if set(sx) && img[sx] != b.act(sigma.apply(s), img[x]) {
                return false;
            }
            for y in 0..img.len() {
                if set(y) && a.act(s, y) == x && img[x] != b.act(sigma.apply(s), img[y]) {
                    return false;
                }
            }
        }
        true
    }
    fn go(a: &NonUnitalAlgebra, b: &NonUnitalAlgebra, sigma: &RingMorphism, img: &mut Vec<Elem>, used: &mut Vec<bool>, x: Elem) -> bool {
        if x == img.len() {
            return true;
        }
        for t in 0..img.len() {
            if used[t] {
                continue;
            }
            img[x] = t;
            used[t] = true;
            if consistent(a, b, sigma, img, x) && go(a, b, sigma, img, used, x + 1) {
                return true;
            }
            used[t] = false;
            img[x] = usize::MAX;
        }
        false
    }
    go(a, b, sigma, &mut img, &mut used, 0).then_some(img)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    /// `(K, A) -> triple -> (K', A')` gives `K ≅ K'` and a compatible
    /// algebra isomorphism `A ≅ A'`.
    pub pair_roundtrip: bool,
    /// `triple -> pair -> triple'` is isomorphic to the original via `φ`.
    pub triple_roundtrip: bool,
}

impl RoundTripReport {
    pub fn pass(&self) -> bool {
        self.pair_roundtrip && self.triple_roundtrip
    }
}

pub fn equivalence_roundtrip(k: &RingTable, a: &NonUnitalAlgebra) -> Result<RoundTripReport> {
    let t = pair_to_triple(k, a)?;
    let (k2, a2) = triple_to_pair(&t)?;
    let isos = hom_search(k, &k2, &HomQuery { unital: true, injective: true, ..Default::default() })?;
    let pair_roundtrip = k.order() == k2.order()
        && isos.iter().any(|sigma| algebra_isomorphism(a, &a2, sigma).is_some());

    let t2 = pair_to_triple(&k2, &a2)?;
    let pp = build_phi_psi(&t)?;
    // t2.ring and pp.semidirect are the same construction on (R/I, I)
    let same_ring = t2.ring() == &pp.semidirect;
    let phi = &pp.phi;
    let bijective = phi.is_injective() && phi.is_surjective(t.ring.order());
    let ideal_image: crate::ring::ElemSet = t2.ideal().members().iter().map(|x| phi.apply(x)).collect();
    let m = k2.order();
    let section_matches = t2.quotient().elements().all(|u| {
        let s2u = t2.section().apply(u);
        phi.apply(s2u) == t.section.apply(s2u % m)
    });
    let triple_roundtrip = same_ring && bijective && &ideal_image == t.ideal.members() && section_matches;
    Ok(RoundTripReport { pair_roundtrip, triple_roundtrip })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnitalWitness {
    pub ring: String,
    /// Index of `(-e, 1)`.
    pub witness: Elem,
    pub non_invertible: bool,
    /// `(-e, 1)(b, l) = (-l·e, l)` for every `(b, l)`.
    pub formula_holds: bool,
    pub not_local: bool,
    /// Index of the idempotent `(e, 0)`.
    pub idempotent: Elem,
    pub idempotent_count: usize,
    pub trace: Vec<String>,
}

impl UnitalWitness {
    pub fn pass(&self) -> bool {
        self.non_invertible && self.formula_holds && self.not_local && self.idempotent_count >= 4
    }
}

/// For unital `A` with `1_A = e ≠ 0`: `(-e, 1)` has no inverse in `A ⋊ K`,
/// since `(-e, 1)(b, l) = (-b - l·e + b, l) = (-l·e, l)` and reaching
/// `(0, 1)` forces `l = 1` and `e = 0`. The idempotent `(e, 0)` shows the
/// ring is not local.
pub fn extreme_unital_check(k: &RingTable, a: &NonUnitalAlgebra) -> Result<UnitalWitness> {
    let e = a
        .unit()
        .ok_or_else(|| AlgebraError::PreconditionUnmet("algebra has no nonzero identity".into()))?;
    let r = semidirect_pair(k, a)?;
    let m = k.order();
    let at = |x: Elem, u: Elem| x * m + u;
    let neg_e = a.neg(e);
    let w = at(neg_e, k.one());
    let target = r.one();
    let mut formula_holds = true;
    let mut non_invertible = true;
    let mut trace = vec![format!("e = {e}, -e = {neg_e}, witness (-e,1) = #{w}")];
    for l in k.elements() {
        let first = a.neg(a.act(l, e));
        let mut all_match = true;
        for b in 0..a.order() {
            let prod = r.mul(w, at(b, l));
            all_match &= prod == at(first, l);
            non_invertible &= prod != target;
        }
        formula_holds &= all_match;
        trace.push(format!(
            "l = {l}: (-e,1)(b,{l}) = ({first},{l}) for all b [{}]; equals (0,1) iff l = 1 and l.e = 0, but 1.e = e != 0",
            if all_match { "checked" } else { "MISMATCH" }
        ));
    }
    non_invertible &= !r.is_unit(w);
    let idempotent = at(e, k.zero());
    let idem = r.idempotents();
    trace.push(format!(
        "(e,0)^2 = #{} = (e,0); ring has {} idempotents",
        r.mul(idempotent, idempotent),
        idem.all.len()
    ));
    let not_local = r.is_local()?.is_none()
        && r.mul(idempotent, idempotent) == idempotent
        && idempotent != r.zero()
        && idempotent != r.one();
    Ok(UnitalWitness {
        ring: r.label().to_string(),
        witness: w,
        non_invertible,
        formula_holds,
        not_local,
        idempotent,
        idempotent_count: idem.all.len(),
        trace,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SquareZeroReport {
    pub ring: String,
    /// `(a,k)(-k⁻²a, k⁻¹) = (0,1)` for every `a` and every `k ≠ 0`.
    pub inverse_formula: bool,
    /// Units are exactly `{(a, k) : k ≠ 0}`.
    pub units_match: bool,
    /// Local with maximal ideal `A × {0}`.
    pub local_with_expected_ideal: bool,
    pub trace: Vec<String>,
}

impl SquareZeroReport {
    pub fn pass(&self) -> bool {
        self.inverse_formula && self.units_match && self.local_with_expected_ideal
    }
}

pub fn extreme_squarezero_check(k: &RingTable, a: &NonUnitalAlgebra) -> Result<SquareZeroReport> {
    if !k.is_field() {
        return Err(AlgebraError::PreconditionUnmet("base ring is not a field".into()));
    }
    if !a.has_zero_multiplication() {
        return Err(AlgebraError::PreconditionUnmet("algebra multiplication is not zero".into()));
    }
    let r = semidirect_pair(k, a)?;
    let m = k.order();
    let at = |x: Elem, u: Elem| x * m + u;
    let mut inverse_formula = true;
    let mut trace = Vec::new();
    for x in 0..a.order() {
        for u in k.elements().filter(|&u| u != k.zero()) {
            let u_inv = k.inverse(u).expect("field");
            let u_inv2 = k.mul(u_inv, u_inv);
            let y = a.neg(a.act(u_inv2, x));
            let prod = r.mul(at(x, u), at(y, u_inv));
            let ok = prod == r.one();
            inverse_formula &= ok;
            trace.push(format!(
                "({x},{u})^-1 = (-{u_inv2}.{x}, {u_inv}) = ({y},{u_inv}); product #{prod} {}",
                if ok { "= (0,1)" } else { "!= (0,1)" }
            ));
        }
    }
    let expected_units: crate::ring::ElemSet = r.elements().filter(|&e| e % m != k.zero()).collect();
    let units_match = r.units() == expected_units;
    let expected_ideal: crate::ring::ElemSet = (0..a.order()).map(|x| at(x, k.zero())).collect();
    let local_with_expected_ideal = r
        .is_local()?
        .is_some_and(|mi| mi.members() == &expected_ideal);
    Ok(SquareZeroReport {
        ring: r.label().to_string(),
        inverse_formula,
        units_match,
        local_with_expected_ideal,
        trace,
    })
}
