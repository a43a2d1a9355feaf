//! Finite commutative unital rings given by explicit operation tables.
//!
//! Elements are the indices `0..order`. Every table lookup is O(1), which is
//! what makes exhaustive checks over whole catalogs affordable.

mod ideal;
mod morphism;
mod subring;

pub use ideal::{ElemSet, Ideal};
pub use morphism::{find_isomorphism, hom_enumerate, hom_search, HomQuery, RingMorphism};
pub use subring::Subring;

use std::fmt;

use crate::error::{AlgebraError, Result};
use crate::par::Exec;

/// Element index into a [`RingTable`].
pub type Elem = usize;

/// Largest ring order that may be materialized as a table.
pub const TABLE_CAP: usize = 4096;
/// Largest order for ideal, subfield and homomorphism enumeration.
pub const ENUM_CAP: usize = 256;
/// Largest order admitted into the exhaustive verification suites.
pub const SUITE_CAP: usize = 64;

/// A finite commutative ring with identity, stored as dense tables.
#[derive(Clone, PartialEq, Eq)]
pub struct RingTable {
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<Option<u16>>,
    zero: Elem,
    one: Elem,
    label: String,
}

impl fmt::Debug for RingTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingTable")
            .field("label", &self.label)
            .field("order", &self.order)
            .field("zero", &self.zero)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

/// The idempotents of a ring together with the primitive ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Idempotents {
    pub all: Vec<Elem>,
    /// Nonzero idempotents minimal under `e <= f  <=>  ef = e`.
    pub primitive: Vec<Elem>,
}

impl RingTable {
    /// Builds a ring from user-supplied tables, checking every axiom over all
    /// pairs and triples of elements.
    pub fn from_tables(
        add: &[Vec<Elem>],
        mul: &[Vec<Elem>],
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        let n = add.len();
        if n == 0 {
            return Err(AlgebraError::InvalidInput("ring must have at least one element".into()));
        }
        crate::error::check_cap("ring order", n as u128, TABLE_CAP as u128)?;
        if mul.len() != n || add.iter().chain(mul).any(|row| row.len() != n) {
            return Err(AlgebraError::InvalidInput(format!("tables must be {n}x{n}")));
        }
        if zero >= n || one >= n {
            return Err(AlgebraError::InvalidInput("zero/one out of range".into()));
        }
        if let Some(bad) = add.iter().chain(mul).flatten().find(|&&v| v >= n) {
            return Err(AlgebraError::InvalidInput(format!("table entry {bad} out of range")));
        }
        let flat = |t: &[Vec<Elem>]| t.iter().flatten().map(|&v| v as u16).collect::<Vec<_>>();
        let ring = Self::from_flat(format!("ring({n})"), n, flat(add), flat(mul), zero, one)?;
        ring.validate()?;
        Ok(ring)
    }

    /// Trusted constructor for tables produced by a known-correct
    /// construction. Only the additive group is inspected, to fill in
    /// negation; call [`RingTable::validate`] to check the rest.
    pub(crate) fn from_fn(
        label: impl Into<String>,
        n: usize,
        add: impl Fn(Elem, Elem) -> Elem,
        mul: impl Fn(Elem, Elem) -> Elem,
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        crate::error::check_cap("ring order", n as u128, TABLE_CAP as u128)?;
        let mut at = Vec::with_capacity(n * n);
        let mut mt = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                at.push(add(a, b) as u16);
                mt.push(mul(a, b) as u16);
            }
        }
        Self::from_flat(label.into(), n, at, mt, zero, one)
    }

    fn from_flat(
        label: String,
        n: usize,
        add: Vec<u16>,
        mul: Vec<u16>,
        zero: Elem,
        one: Elem,
    ) -> Result<Self> {
        let mut neg = vec![u16::MAX; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] as usize == zero {
                    neg[a] = b as u16;
                    break;
                }
            }
        }
        if let Some(a) = neg.iter().position(|&v| v == u16::MAX) {
            return Err(AlgebraError::AxiomViolation {
                axiom: "additive inverse",
                witness: vec![a],
            });
        }
        let mut inv = vec![None; n];
        for a in 0..n {
            for b in 0..n {
                if mul[a * n + b] as usize == one {
                    inv[a] = Some(b as u16);
                    break;
                }
            }
        }
        Ok(RingTable {
            order: n,
            add,
            mul,
            neg,
            inv,
            zero,
            one,
            label,
        })
    }

    /// Checks every ring axiom, reporting the first failure with a witness.
    pub fn validate(&self) -> Result<()> {
        self.validate_with(Exec::default())
    }

    pub fn validate_with(&self, exec: Exec) -> Result<()> {
        let n = self.order;
        let fail = |axiom, witness: Vec<Elem>| Err(AlgebraError::AxiomViolation { axiom, witness });
        if n > 1 && self.zero == self.one {
            return fail("zero equals one in a nontrivial ring", vec![self.zero]);
        }
        for a in 0..n {
            if self.add(self.zero, a) != a {
                return fail("additive identity", vec![a]);
            }
        }
        for a in 0..n {
            for b in 0..a {
                if self.add(a, b) != self.add(b, a) {
                    return fail("additive commutativity", vec![a, b]);
                }
            }
        }
        for a in 0..n {
            if self.add(a, self.neg(a)) != self.zero {
                return fail("additive inverse", vec![a]);
            }
        }
        for a in 0..n {
            for b in 0..a {
                if self.mul(a, b) != self.mul(b, a) {
                    return fail("multiplicative commutativity", vec![a, b]);
                }
            }
        }
        for a in 0..n {
            if self.mul(self.one, a) != a {
                return fail("multiplicative identity", vec![a]);
            }
        }
        let triple = exec.find_first(n, |a| {
            for b in 0..n {
                for c in 0..n {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Some(("additive associativity", vec![a, b, c]));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Some(("multiplicative associativity", vec![a, b, c]));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Some(("distributivity", vec![a, b, c]));
                    }
                }
            }
            None
        });
        match triple {
            Some((axiom, witness)) => fail(axiom, witness),
            None => Ok(()),
        }
    }

    /// `Z/n` with representatives `0..n`.
    pub fn zmod(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(AlgebraError::InvalidInput("Z/0 is not finite".into()));
        }
        Self::from_fn(
            format!("Z/{n}"),
            n,
            |a, b| (a + b) % n,
            |a, b| (a * b) % n,
            0,
            1 % n,
        )
    }

    /// Componentwise product; `(r, s)` is encoded as `r * |S| + s`.
    pub fn product(r: &RingTable, s: &RingTable) -> Result<Self> {
        let m = s.order;
        let n = r.order * m;
        crate::error::check_cap("product order", n as u128, TABLE_CAP as u128)?;
        Self::from_fn(
            format!("prod({},{})", r.label, s.label),
            n,
            |a, b| r.add(a / m, b / m) * m + s.add(a % m, b % m),
            |a, b| r.mul(a / m, b / m) * m + s.mul(a % m, b % m),
            r.zero * m + s.zero,
            r.one * m + s.one,
        )
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn zero(&self) -> Elem {
        self.zero
    }

    pub fn one(&self) -> Elem {
        self.one
    }

    pub fn is_zero_ring(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.add[a * self.order + b] as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a * self.order + b] as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a] as Elem
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        self.inv[a].map(Elem::from)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inv[a].is_some()
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let mut acc = self.one;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `k`-fold sum `a + ... + a`.
    pub fn times(&self, k: u64, a: Elem) -> Elem {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }

    pub fn additive_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.zero {
            x = self.add(x, a);
            k += 1;
        }
        k
    }

    /// Additive order of one. Always positive for a finite ring.
    pub fn characteristic(&self) -> usize {
        self.additive_order(self.one)
    }

    pub fn is_field(&self) -> bool {
        !self.is_zero_ring() && self.elements().all(|a| a == self.zero || self.is_unit(a))
    }

    /// Units paired with their inverses, in index order.
    pub fn unit_pairs(&self) -> Vec<(Elem, Elem)> {
        self.elements()
            .filter_map(|a| self.inverse(a).map(|b| (a, b)))
            .collect()
    }

    pub fn units(&self) -> ElemSet {
        ElemSet::from_sorted(self.elements().filter(|&a| self.is_unit(a)).collect())
    }

    pub fn idempotents(&self) -> Idempotents {
        let all: Vec<Elem> = self.elements().filter(|&e| self.mul(e, e) == e).collect();
        let primitive = all
            .iter()
            .copied()
            .filter(|&e| e != self.zero)
            .filter(|&e| {
                all.iter()
                    .all(|&f| f == self.zero || f == e || self.mul(f, e) != f)
            })
            .collect();
        Idempotents { all, primitive }
    }

    pub(crate) fn require_nonzero(&self) -> Result<()> {
        if self.is_zero_ring() {
            Err(AlgebraError::ZeroRing)
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_elem(&self, a: Elem) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(AlgebraError::InvalidInput(format!(
                "element {a} out of range for {}",
                self.label
            )))
        }
    }

    /// Sub-table on the members of a subring that is closed under the ring
    /// operations, with `identity` as its one. Returns the table and the
    /// inclusion map into `self`.
    pub fn restrict(&self, members: &ElemSet, identity: Elem, label: impl Into<String>) -> Result<(RingTable, RingMorphism)> {
        let pos = |x: Elem| {
            members
                .position(x)
                .ok_or_else(|| AlgebraError::InvalidInput(format!("subset not closed at {x}")))
        };
        let m = members.as_slice();
        let k = m.len();
        let mut add = vec![vec![0; k]; k];
        let mut mul = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                add[i][j] = pos(self.add(m[i], m[j]))?;
                mul[i][j] = pos(self.mul(m[i], m[j]))?;
            }
        }
        let zero = pos(self.zero)?;
        let one = pos(identity)?;
        let flat = |t: Vec<Vec<Elem>>| t.into_iter().flatten().map(|v| v as u16).collect();
        let table = Self::from_flat(label.into(), k, flat(add), flat(mul), zero, one)?;
        let inclusion = RingMorphism::from_parts(m.to_vec(), identity == self.one);
        Ok((table, inclusion))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zmod_basics() {
        let z1 = RingTable::zmod(1).unwrap();
        assert_eq!(z1.zero(), z1.one());
        assert!(z1.validate().is_ok());
        let z4 = RingTable::zmod(4).unwrap();
        assert_eq!(z4.units().as_slice(), &[1, 3]);
        assert_eq!(RingTable::zmod(8).unwrap().characteristic(), 8);
        assert!(RingTable::zmod(0).is_err());
    }

    #[test]
    fn from_tables_accepts_z2() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(RingTable::from_tables(&add, &mul, 0, 1).is_ok());
    }

    #[test]
    fn from_tables_rejects_missing_identity() {
        let add = vec![vec![0, 1], vec![1, 0]];
        let mul = vec![vec![0, 0], vec![0, 0]];
        let err = RingTable::from_tables(&add, &mul, 0, 1).unwrap_err();
        assert!(matches!(err, AlgebraError::AxiomViolation { axiom: "multiplicative identity", .. }));
    }

    #[test]
    fn from_tables_rejects_klein_four_zero_mul() {
        let add: Vec<Vec<Elem>> = (0..4).map(|a| (0..4).map(|b| a ^ b).collect()).collect();
        let mul = vec![vec![0; 4]; 4];
        let err = RingTable::from_tables(&add, &mul, 0, 1).unwrap_err();
        assert!(matches!(err, AlgebraError::AxiomViolation { axiom: "multiplicative identity", .. }));
    }

    #[test]
    fn from_tables_reports_associativity_witness() {
        // Z/3 addition with a commutative, unital but non-associative product
        let add: Vec<Vec<Elem>> = (0..3).map(|a| (0..3).map(|b| (a + b) % 3).collect()).collect();
        let mut mul: Vec<Vec<Elem>> = (0..3).map(|a| (0..3).map(|b| (a * b) % 3).collect()).collect();
        mul[2][2] = 2;
        let err = RingTable::from_tables(&add, &mul, 0, 1).unwrap_err();
        match err {
            AlgebraError::AxiomViolation { witness, .. } => assert_eq!(witness.len(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn from_tables_shape_errors() {
        assert!(RingTable::from_tables(&[], &[], 0, 0).is_err());
        let add = vec![vec![0, 1], vec![1]];
        let mul = vec![vec![0, 0], vec![0, 1]];
        assert!(matches!(
            RingTable::from_tables(&add, &mul, 0, 1),
            Err(AlgebraError::InvalidInput(_))
        ));
    }

    #[test]
    fn product_idempotents() {
        let f2 = RingTable::zmod(2).unwrap();
        let p = RingTable::product(&f2, &f2).unwrap();
        assert_eq!(p.order(), 4);
        let idem = p.idempotents();
        assert_eq!(idem.all, vec![0, 1, 2, 3]);
        // (0,1) = 1 and (1,0) = 2
        assert_eq!(idem.primitive, vec![1, 2]);
        assert_eq!(p.characteristic(), 2);
    }

    #[test]
    fn product_with_zero_ring_is_isomorphic() {
        let z6 = RingTable::zmod(6).unwrap();
        let p = RingTable::product(&z6, &RingTable::zmod(1).unwrap()).unwrap();
        assert!(find_isomorphism(&p, &z6).unwrap().is_some());
    }

    #[test]
    fn idempotents_of_z4() {
        let z4 = RingTable::zmod(4).unwrap();
        assert_eq!(z4.idempotents().all, vec![0, 1]);
    }

    #[test]
    fn pow_and_times() {
        let z7 = RingTable::zmod(7).unwrap();
        assert_eq!(z7.pow(3, 6), 1);
        assert_eq!(z7.times(5, 3), 1);
        assert_eq!(z7.additive_order(0), 1);
    }
}
