use std::collections::BTreeSet;

use serde::Serialize;

use super::{Elem, RingMorphism, RingTable, ENUM_CAP};
use crate::error::{check_cap, AlgebraError, Result};

/// Sorted, duplicate-free set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ElemSet(Vec<Elem>);

impl ElemSet {
    pub fn from_sorted(v: Vec<Elem>) -> Self {
        debug_assert!(v.windows(2).all(|w| w[0] < w[1]));
        ElemSet(v)
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    pub fn position(&self, a: Elem) -> Option<usize> {
        self.0.binary_search(&a).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &ElemSet) -> bool {
        self.len() <= other.len() && self.iter().all(|a| other.contains(a))
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for a in self.iter() {
            m[a] = true;
        }
        m
    }
}

impl std::fmt::Display for ElemSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let set: BTreeSet<Elem> = iter.into_iter().collect();
        ElemSet(set.into_iter().collect())
    }
}

/// An ideal of a particular [`RingTable`]. The ring is not stored; every
/// operation takes it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Ideal {
    members: ElemSet,
}

impl Ideal {
    /// Validates that `members` is an ideal of `ring`.
    pub fn new(ring: &RingTable, members: ElemSet) -> Result<Self> {
        if let Some(&bad) = members.as_slice().last() {
            ring.check_elem(bad)?;
        }
        if !members.contains(ring.zero()) {
            return Err(AlgebraError::InvalidIdeal("missing zero".into()));
        }
        for a in members.iter() {
            if !members.contains(ring.neg(a)) {
                return Err(AlgebraError::InvalidIdeal(format!("no additive inverse for {a}")));
            }
            for b in members.iter() {
                if !members.contains(ring.add(a, b)) {
                    return Err(AlgebraError::InvalidIdeal(format!("{a} + {b} escapes")));
                }
            }
            for r in ring.elements() {
                if !members.contains(ring.mul(r, a)) {
                    return Err(AlgebraError::InvalidIdeal(format!("{r} * {a} escapes")));
                }
            }
        }
        Ok(Ideal { members })
    }

    pub(crate) fn new_unchecked(members: ElemSet) -> Self {
        Ideal { members }
    }

    pub fn zero(ring: &RingTable) -> Self {
        Ideal { members: ElemSet::from_sorted(vec![ring.zero()]) }
    }

    pub fn whole(ring: &RingTable) -> Self {
        Ideal { members: ElemSet::from_sorted(ring.elements().collect()) }
    }

    pub fn members(&self) -> &ElemSet {
        &self.members
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

    /// The ideal without its zero element.
    pub fn nonzero_members(&self, ring: &RingTable) -> Vec<Elem> {
        self.members.iter().filter(|&a| a != ring.zero()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self, ring: &RingTable) -> bool {
        self.members.len() == ring.order()
    }
}

impl RingTable {
    /// Smallest ideal containing `gens`.
    pub fn ideal_generated(&self, gens: &[Elem]) -> Result<Ideal> {
        for &g in gens {
            self.check_elem(g)?;
        }
        // {r * g} is closed under multiplication by R, so its additive
        // closure is already an ideal
        let mut products = vec![false; self.order()];
        for &g in gens {
            for r in self.elements() {
                products[self.mul(r, g)] = true;
            }
        }
        let step: Vec<Elem> = self.elements().filter(|&a| products[a]).collect();
        Ok(Ideal::new_unchecked(self.additive_closure(&[self.zero()], &step)))
    }

    /// Subgroup generated by `start` and `step` under addition.
    fn additive_closure(&self, start: &[Elem], step: &[Elem]) -> ElemSet {
        let mut seen = vec![false; self.order()];
        let mut list = Vec::new();
        for &a in start.iter().chain(step) {
            if !seen[a] {
                seen[a] = true;
                list.push(a);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &g in step.iter().chain(start) {
                let y = self.add(x, g);
                if !seen[y] {
                    seen[y] = true;
                    list.push(y);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        ElemSet::from_sorted(list)
    }

    /// `I + J`.
    pub fn ideal_sum(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let gens: Vec<Elem> = i.members().iter().chain(j.members().iter()).collect();
        Ideal::new_unchecked(self.additive_closure(&[self.zero()], &gens))
    }

    /// `I * J`: the ideal generated by all products `xy`.
    pub fn ideal_product(&self, i: &Ideal, j: &Ideal) -> Ideal {
        let mut prods = vec![false; self.order()];
        for x in i.members().iter() {
            for y in j.members().iter() {
                prods[self.mul(x, y)] = true;
            }
        }
        let gens: Vec<Elem> = self.elements().filter(|&a| prods[a]).collect();
        // products of ideal members already absorb ring multiplication
        Ideal::new_unchecked(self.additive_closure(&[self.zero()], &gens))
    }

    /// `R/I` with each coset represented by its least element index, and
    /// the canonical projection.
    pub fn quotient(&self, ideal: &Ideal) -> Result<(RingTable, RingMorphism)> {
        let ideal = Ideal::new(self, ideal.members().clone())?;
        let n = self.order();
        let mut coset = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if coset[a] == usize::MAX {
                let id = reps.len();
                reps.push(a);
                for i in ideal.members().iter() {
                    coset[self.add(a, i)] = id;
                }
            }
        }
        let label = if ideal.is_zero() {
            self.label().to_string()
        } else {
            format!("({})/I{}", self.label(), ideal.len())
        };
        let q = RingTable::from_fn(
            label,
            reps.len(),
            |c, d| coset[self.add(reps[c], reps[d])],
            |c, d| coset[self.mul(reps[c], reps[d])],
            coset[self.zero()],
            coset[self.one()],
        )?;
        Ok((q, RingMorphism::from_parts(coset, true)))
    }

    /// True when `ideal` is maximal, i.e. the quotient is a field.
    pub fn is_maximal_ideal(&self, ideal: &Ideal) -> Result<bool> {
        Ok(self.quotient(ideal)?.0.is_field())
    }

    /// All maximal ideals, one per local factor `Re` for each primitive
    /// idempotent `e`: the pullback of the non-units of `Re`.
    pub fn maximal_ideals(&self) -> Result<Vec<Ideal>> {
        self.require_nonzero()?;
        let mut out: Vec<Ideal> = self
            .idempotents()
            .primitive
            .into_iter()
            .map(|e| {
                let factor: Vec<Elem> = {
                    let mut seen = vec![false; self.order()];
                    for r in self.elements() {
                        seen[self.mul(r, e)] = true;
                    }
                    self.elements().filter(|&a| seen[a]).collect()
                };
                let unit_in_factor = |x: Elem| factor.iter().any(|&y| self.mul(x, y) == e);
                let members: Vec<Elem> = self
                    .elements()
                    .filter(|&r| !unit_in_factor(self.mul(r, e)))
                    .collect();
                Ideal::new_unchecked(ElemSet::from_sorted(members))
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Whether the non-units form an ideal; if so, that ideal.
    pub fn is_local(&self) -> Result<Option<Ideal>> {
        self.require_nonzero()?;
        let nonunits: Vec<Elem> = self.elements().filter(|&a| !self.is_unit(a)).collect();
        for (i, &a) in nonunits.iter().enumerate() {
            for &b in &nonunits[i..] {
                if self.is_unit(self.add(a, b)) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(Ideal::new_unchecked(ElemSet::from_sorted(nonunits))))
    }

    /// Every ideal, ordered by size then members.
    pub fn all_ideals(&self) -> Result<Vec<Ideal>> {
        check_cap("ideal enumeration", self.order() as u128, ENUM_CAP as u128)?;
        let mut found: BTreeSet<Ideal> = BTreeSet::new();
        let mut queue = vec![Ideal::zero(self)];
        found.insert(Ideal::zero(self));
        while let Some(j) = queue.pop() {
            let mask = j.members().mask(self.order());
            for a in self.elements().filter(|&a| !mask[a]) {
                let bigger = self.ideal_sum(&j, &self.ideal_generated(&[a])?);
                if found.insert(bigger.clone()) {
                    queue.push(bigger);
                }
            }
        }
        let mut out: Vec<Ideal> = found.into_iter().collect();
        out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
        Ok(out)
    }

    /// Intersection of all maximal ideals.
    pub fn jacobson_radical(&self) -> Result<Ideal> {
        let maxes = self.maximal_ideals()?;
        let members = self
            .elements()
            .filter(|&a| maxes.iter().all(|m| m.contains(a)))
            .collect();
        Ok(Ideal::new_unchecked(members))
    }
}
