use serde::Serialize;

use super::{Elem, ElemSet, RingTable};
use crate::error::Result;

/// A subset closed under `+`, `-` and `*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subring {
    members: ElemSet,
    contains_one: bool,
}

impl Subring {
    pub fn members(&self) -> &ElemSet {
        &self.members
    }

    pub fn contains_one(&self) -> bool {
        self.contains_one
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The multiplicative identity of the subring, if it has one.
    pub fn identity(&self, ring: &RingTable) -> Option<Elem> {
        self.members
            .iter()
            .find(|&e| self.members.iter().all(|x| ring.mul(e, x) == x))
    }

    /// Whether the subring is a field under the ambient operations (its
    /// identity need not be the ambient one).
    pub fn is_field(&self, ring: &RingTable) -> bool {
        match self.identity(ring) {
            Some(e) if e != ring.zero() => self.members.iter().all(|x| {
                x == ring.zero() || self.members.iter().any(|y| ring.mul(x, y) == e)
            }),
            _ => false,
        }
    }

    /// Checks closure directly, for subsets of unknown origin.
    pub fn from_members(ring: &RingTable, members: ElemSet) -> Option<Self> {
        if !members.contains(ring.zero()) {
            return None;
        }
        for a in members.iter() {
            if !members.contains(ring.neg(a)) {
                return None;
            }
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) || !members.contains(ring.mul(a, b)) {
                    return None;
                }
            }
        }
        let contains_one = members.contains(ring.one());
        Some(Subring { members, contains_one })
    }

    /// Table of the subring itself plus the inclusion map. Fails when the
    /// subring has no identity.
    pub fn to_table(&self, ring: &RingTable, label: impl Into<String>) -> Result<(RingTable, super::RingMorphism)> {
        let e = self.identity(ring).ok_or_else(|| {
            crate::error::AlgebraError::InvalidInput("subring has no identity".into())
        })?;
        ring.restrict(&self.members, e, label)
    }
}

impl RingTable {
    /// Closure of `seed` (plus one when `require_one`) under `+`, `-`, `*`.
    pub fn subring_generated(&self, seed: &[Elem], require_one: bool) -> Result<Subring> {
        for &s in seed {
            self.check_elem(s)?;
        }
        let mut start = vec![self.zero()];
        if require_one {
            start.push(self.one());
        }
        start.extend_from_slice(seed);
        let members = self.ring_closure(&start);
        let contains_one = members.contains(self.one());
        Ok(Subring { members, contains_one })
    }

    fn ring_closure(&self, start: &[Elem]) -> ElemSet {
        let mut seen = vec![false; self.order()];
        let mut list = Vec::new();
        let mut push = |x: Elem, list: &mut Vec<Elem>| {
            if !seen[x] {
                seen[x] = true;
                list.push(x);
            }
        };
        for &s in start {
            push(s, &mut list);
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            push(self.neg(x), &mut list);
            for j in 0..=i {
                let y = list[j];
                push(self.add(x, y), &mut list);
                push(self.mul(x, y), &mut list);
            }
            i += 1;
        }
        list.sort_unstable();
        ElemSet::from_sorted(list)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_subring() {
        let z6 = RingTable::zmod(6).unwrap();
        assert_eq!(z6.subring_generated(&[], true).unwrap().len(), 6);
        let f2 = RingTable::zmod(2).unwrap();
        let p = RingTable::product(&f2, &f2).unwrap();
        let s = p.subring_generated(&[], true).unwrap();
        assert_eq!(s.members().as_slice(), &[0, 3]);
        assert!(s.contains_one());
        assert!(s.is_field(&p));
    }

    #[test]
    fn idempotent_generates_everything_with_one() {
        let f2 = RingTable::zmod(2).unwrap();
        let p = RingTable::product(&f2, &f2).unwrap();
        // (1,0) has index 2
        assert_eq!(p.subring_generated(&[2], true).unwrap().len(), 4);
        let s = p.subring_generated(&[2], false).unwrap();
        assert_eq!(s.members().as_slice(), &[0, 2]);
        assert!(!s.contains_one());
        assert!(s.is_field(&p));
        assert_eq!(s.identity(&p), Some(2));
    }

    #[test]
    fn from_members_checks_closure() {
        let z4 = RingTable::zmod(4).unwrap();
        assert!(Subring::from_members(&z4, ElemSet::from_sorted(vec![0, 2])).is_some());
        assert!(Subring::from_members(&z4, ElemSet::from_sorted(vec![0, 1])).is_none());
    }
}
