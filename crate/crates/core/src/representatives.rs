//! Subfields, fields of representatives and the residue map restricted to a
//! subfield.
//!
//! Throughout, "field of representatives" for `(A, m)` means a subfield `k`
//! whose image under the projection `A -> A/m` is all of `A/m`. Subfields
//! contain the ambient one unless explicitly requested otherwise.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{check_cap, AlgebraError, Result};
use crate::ring::{
    find_isomorphism, hom_search, Elem, ElemSet, HomQuery, Ideal, RingMorphism, RingTable,
    Subring, ENUM_CAP,
};

/// A ring together with a designated subfield and its inclusion.
#[derive(Debug, Clone)]
pub struct KappaAlgebra {
    kappa: Subring,
    kappa_table: RingTable,
    embedding: RingMorphism,
}

impl KappaAlgebra {
    pub fn new(ring: &RingTable, kappa: Subring) -> Result<Self> {
        if !kappa.is_field(ring) || !kappa.contains_one() {
            return Err(AlgebraError::InvalidInput(
                "kappa must be a subfield containing the ambient one".into(),
            ));
        }
        let (kappa_table, embedding) = kappa.to_table(ring, format!("kappa<{}>", ring.label()))?;
        debug_assert!(embedding.violation(&kappa_table, ring).is_none());
        Ok(KappaAlgebra { kappa, kappa_table, embedding })
    }

    /// Uses the prime subfield, failing when the prime subring is not a field.
    pub fn over_prime_field(ring: &RingTable) -> Result<Self> {
        Self::new(ring, ring.subring_generated(&[], true)?)
    }

    pub fn kappa(&self) -> &Subring {
        &self.kappa
    }

    pub fn kappa_table(&self) -> &RingTable {
        &self.kappa_table
    }

    /// The inclusion `kappa -> A`.
    pub fn embedding(&self) -> &RingMorphism {
        &self.embedding
    }
}

/// Outcome of restricting `A -> A/m` to a subfield `k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub ring: String,
    pub kappa: ElemSet,
    pub maximal_ideal: ElemSet,
    pub restriction_injective: bool,
    pub restriction_surjective: bool,
    /// `k ∩ m = {0}`.
    pub intersection_trivial: bool,
    /// `k + m = A`.
    pub sum_covers: bool,
    /// Every element is `u + m` in exactly one way.
    pub unique_decomposition: bool,
    /// `A = k ⊕ m`.
    pub verdict: bool,
}

impl DecompositionReport {
    /// The direct-sum verdict agrees with bijectivity of the restriction.
    pub fn consistent(&self) -> bool {
        self.verdict == (self.restriction_injective && self.restriction_surjective)
            && self.verdict == (self.intersection_trivial && self.unique_decomposition && self.sum_covers)
    }
}

/// Every subfield, deduplicated and ordered by member list.
///
/// Each finite field is generated over its prime field by one element, so
/// scanning the subrings generated by single elements is complete.
pub fn enumerate_subfields(ring: &RingTable, require_one: bool) -> Result<Vec<Subring>> {
    check_cap("subfield enumeration", ring.order() as u128, ENUM_CAP as u128)?;
    if ring.is_zero_ring() {
        return Ok(Vec::new());
    }
    let mut found = BTreeMap::new();
    for a in ring.elements() {
        let s = ring.subring_generated(&[a], require_one)?;
        if !found.contains_key(s.members()) && s.is_field(ring) {
            found.insert(s.members().clone(), s);
        }
    }
    Ok(found.into_values().collect())
}

/// The subfield containing every other subfield, if there is one.
pub fn largest_subfield(ring: &RingTable) -> Result<Option<Subring>> {
    let fields = enumerate_subfields(ring, true)?;
    Ok(fields
        .iter()
        .find(|k| fields.iter().all(|other| other.members().is_subset(k.members())))
        .cloned())
}

/// Subfields with no strictly larger subfield.
pub fn maximal_subfields(ring: &RingTable, require_one: bool) -> Result<Vec<Subring>> {
    let fields = enumerate_subfields(ring, require_one)?;
    Ok(fields
        .iter()
        .filter(|k| {
            !fields
                .iter()
                .any(|o| o.len() > k.len() && k.members().is_subset(o.members()))
        })
        .cloned()
        .collect())
}

fn require_subfield(ring: &RingTable, kappa: &Subring) -> Result<()> {
    if kappa.members().as_slice().last().is_some_and(|&x| x >= ring.order()) || !kappa.is_field(ring) {
        return Err(AlgebraError::InvalidInput("kappa is not a subfield".into()));
    }
    Ok(())
}

/// Restricts the projection `A -> A/m` to `kappa` and records injectivity,
/// surjectivity and the additive decomposition `A = kappa + m`.
pub fn residue_restriction(ring: &RingTable, kappa: &Subring, m: &Ideal) -> Result<DecompositionReport> {
    require_subfield(ring, kappa)?;
    let (residue, p) = ring
        .quotient(m)
        .map_err(|e| AlgebraError::InvalidInput(format!("bad maximal ideal: {e}")))?;
    if !residue.is_field() {
        return Err(AlgebraError::InvalidInput("ideal is not maximal".into()));
    }
    let images: ElemSet = kappa.members().iter().map(|u| p.apply(u)).collect();
    let restriction_injective = images.len() == kappa.len();
    let restriction_surjective = images.len() == residue.order();
    let intersection_trivial = kappa.members().iter().all(|u| u == ring.zero() || !m.contains(u));
    let mut ways = vec![0usize; ring.order()];
    for u in kappa.members().iter() {
        for x in m.members().iter() {
            ways[ring.add(u, x)] += 1;
        }
    }
    let sum_covers = ways.iter().all(|&w| w >= 1);
    let unique_decomposition = ways.iter().all(|&w| w <= 1);
    Ok(DecompositionReport {
        ring: ring.label().to_string(),
        kappa: kappa.members().clone(),
        maximal_ideal: m.members().clone(),
        restriction_injective,
        restriction_surjective,
        intersection_trivial,
        sum_covers,
        unique_decomposition,
        verdict: intersection_trivial && sum_covers,
    })
}

/// The maximal ideal and largest subfield of a local ring that has one.
pub fn local_with_largest(ring: &RingTable) -> Result<Option<(Ideal, Subring)>> {
    if ring.is_zero_ring() {
        return Ok(None);
    }
    let m = match ring.is_local()? {
        Some(m) => m,
        None => return Ok(None),
    };
    Ok(largest_subfield(ring)?.map(|k| (m, k)))
}

/// Checks `U(A) = { u + m : u ∈ kappa*, m ∈ m }` for a local ring whose
/// largest subfield is `kappa`. A `false` return is a counterexample.
pub fn check_unit_decomposition(ring: &RingTable, kappa: &Subring) -> Result<bool> {
    let (m, largest) = local_with_largest(ring)?.ok_or_else(|| {
        AlgebraError::PreconditionUnmet("ring is not local or has no largest subfield".into())
    })?;
    if &largest != kappa {
        return Err(AlgebraError::PreconditionUnmet("kappa is not the largest subfield".into()));
    }
    let shifted: ElemSet = kappa
        .members()
        .iter()
        .filter(|&u| u != ring.zero())
        .flat_map(|u| m.members().iter().map(move |x| ring.add(u, x)))
        .collect();
    Ok(shifted == ring.units())
}

/// For a local ring with a largest subfield `kappa`, whether `kappa` maps
/// isomorphically onto the residue field. `None` when the hypotheses fail.
pub fn check_theorem_qfld(ring: &RingTable) -> Result<Option<bool>> {
    match local_with_largest(ring)? {
        Some((m, kappa)) => Ok(Some(residue_restriction(ring, &kappa, &m)?.verdict)),
        None => Ok(None),
    }
}

/// When `A = kappa ⊕ m`, checks that no subfield strictly contains `kappa`.
pub fn check_prop_maximal(ring: &RingTable, kappa: &Subring, m: &Ideal) -> Result<bool> {
    if !residue_restriction(ring, kappa, m)?.verdict {
        return Err(AlgebraError::PreconditionUnmet(
            "projection restricted to kappa is not onto the residue field".into(),
        ));
    }
    let fields = enumerate_subfields(ring, kappa.contains_one())?;
    Ok(!fields
        .iter()
        .any(|o| o.len() > kappa.len() && kappa.members().is_subset(o.members())))
}

/// All subfields `k` with `A = k ⊕ m`, ordered by member list.
pub fn fields_of_representatives(ring: &RingTable, m: &Ideal) -> Result<Vec<Subring>> {
    let mut out = Vec::new();
    for k in enumerate_subfields(ring, true)? {
        if residue_restriction(ring, &k, m)?.verdict {
            out.push(k);
        }
    }
    Ok(out)
}

/// Unital homomorphisms `h: A -> kappa` fixing `kappa` pointwise.
pub fn algebra_homs(ring: &RingTable, ka: &KappaAlgebra) -> Result<Vec<RingMorphism>> {
    let kappa = ka.kappa();
    let fixes = |x: Elem, t: Elem| kappa.members().position(x).is_none_or(|pos| pos == t);
    let q = HomQuery { unital: true, allowed: Some(&fixes), ..Default::default() };
    hom_search(ring, ka.kappa_table(), &q)
}

/// Comparison of `Hom_kappa(A, kappa)` with `Max(A)` via `h -> ker h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GelfandReport {
    pub homs: usize,
    pub maximal_ideals: usize,
    /// Maximal ideals whose residue field is reached by `kappa`.
    pub rational_ideals: usize,
    /// `(hom index, index into Max(A))` for each hom.
    pub correspondence: Vec<(usize, usize)>,
    pub kernels_maximal: bool,
    pub injective: bool,
    /// `h -> ker h` is a bijection onto the rational maximal ideals.
    pub restricted_bijection: bool,
    /// ... and every maximal ideal is rational.
    pub full_bijection: bool,
}

pub fn gelfand_bijection_check(ring: &RingTable, ka: &KappaAlgebra) -> Result<GelfandReport> {
    let homs = algebra_homs(ring, ka)?;
    let maxes = ring.maximal_ideals()?;
    let mut rational = Vec::new();
    for (i, m) in maxes.iter().enumerate() {
        if residue_restriction(ring, ka.kappa(), m)?.restriction_surjective {
            rational.push(i);
        }
    }
    let mut correspondence = Vec::new();
    let mut kernels_maximal = true;
    for (h_idx, h) in homs.iter().enumerate() {
        let ker = h.kernel(ring, ka.kappa_table());
        match maxes.iter().position(|m| *m == ker) {
            Some(i) => correspondence.push((h_idx, i)),
            None => kernels_maximal = false,
        }
    }
    let mut hit: Vec<usize> = correspondence.iter().map(|&(_, i)| i).collect();
    hit.sort_unstable();
    let before = hit.len();
    hit.dedup();
    let injective = hit.len() == before;
    let restricted_bijection = kernels_maximal && injective && hit == rational;
    Ok(GelfandReport {
        homs: homs.len(),
        maximal_ideals: maxes.len(),
        rational_ideals: rational.len(),
        correspondence,
        kernels_maximal,
        injective,
        restricted_bijection,
        full_bijection: restricted_bijection && rational.len() == maxes.len(),
    })
}

/// A pair `(kappa, m)` where `A/m ≅ kappa` abstractly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AbsIsoRow {
    pub ring: String,
    pub kappa: ElemSet,
    pub kappa_contains_one: bool,
    pub maximal_ideal: ElemSet,
    /// The projection restricted to `kappa` is not a bijection even though
    /// the abstract isomorphism exists.
    pub gap: bool,
    /// Some other subfield gives `A = k' ⊕ m`.
    pub rescued_by: Option<ElemSet>,
}

/// Compares the abstract reading of `A/m ≅ kappa` with the reading through
/// the projection, over every subfield and maximal ideal of `ring`.
pub fn absiso_probe(ring: &RingTable, require_one: bool) -> Result<Vec<AbsIsoRow>> {
    if ring.is_zero_ring() {
        return Ok(Vec::new());
    }
    let subfields = enumerate_subfields(ring, require_one)?;
    let mut rows = Vec::new();
    for m in ring.maximal_ideals()? {
        let (residue, _) = ring.quotient(&m)?;
        let reps = fields_of_representatives(ring, &m)?;
        for k in &subfields {
            let Some(e) = k.identity(ring) else { continue };
            let (kt, _) = ring.restrict(k.members(), e, "kappa")?;
            if find_isomorphism(&residue, &kt)?.is_none() {
                continue;
            }
            let gap = !residue_restriction(ring, k, &m)?.verdict;
            rows.push(AbsIsoRow {
                ring: ring.label().to_string(),
                kappa: k.members().clone(),
                kappa_contains_one: k.contains_one(),
                maximal_ideal: m.members().clone(),
                gap,
                rescued_by: if gap { reps.first().map(|r| r.members().clone()) } else { None },
            });
        }
    }
    Ok(rows)
}

pub fn search_absiso_gap(catalog: &[RingTable], require_one: bool) -> Result<Vec<AbsIsoRow>> {
    let mut out = Vec::new();
    for r in catalog {
        out.extend(absiso_probe(r, require_one)?.into_iter().filter(|row| row.gap));
    }
    Ok(out)
}

/// A local ring with two distinct maximal subfields that both split off
/// the maximal ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessFinding {
    pub ring: String,
    pub representatives: Vec<ElemSet>,
}

/// Looks for non-unique fields of representatives among maximal subfields.
pub fn uniqueness_probe(ring: &RingTable) -> Result<Option<UniquenessFinding>> {
    if ring.is_zero_ring() {
        return Ok(None);
    }
    let Some(m) = ring.is_local()? else { return Ok(None) };
    let mut reps = Vec::new();
    for k in maximal_subfields(ring, true)? {
        if residue_restriction(ring, &k, &m)?.verdict {
            reps.push(k.members().clone());
        }
    }
    Ok((reps.len() >= 2).then(|| UniquenessFinding { ring: ring.label().to_string(), representatives: reps }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{gf_ring, poly_quotient_ring};

    fn f2_eps() -> RingTable {
        poly_quotient_ring(2, &[0, 0, 1]).unwrap()
    }

    fn f2_sq() -> RingTable {
        let f2 = gf_ring(2).unwrap();
        RingTable::product(&f2, &f2).unwrap()
    }

    fn members(s: &Subring) -> Vec<Elem> {
        s.members().as_slice().to_vec()
    }

    #[test]
    fn subfield_lists() {
        assert!(enumerate_subfields(&RingTable::zmod(4).unwrap(), true).unwrap().is_empty());
        let l = enumerate_subfields(&f2_eps(), true).unwrap();
        assert_eq!(l.iter().map(members).collect::<Vec<_>>(), vec![vec![0, 1]]);
        let l = enumerate_subfields(&f2_sq(), true).unwrap();
        assert_eq!(l.iter().map(members).collect::<Vec<_>>(), vec![vec![0, 3]]);
        // without the ambient one the two coordinate copies of F2 appear
        assert_eq!(enumerate_subfields(&f2_sq(), false).unwrap().len(), 3);
    }

    #[test]
    fn largest() {
        let f4 = gf_ring(4).unwrap();
        assert_eq!(largest_subfield(&f4).unwrap().unwrap().len(), 4);
        assert_eq!(members(&largest_subfield(&f2_eps()).unwrap().unwrap()), vec![0, 1]);
        assert!(largest_subfield(&RingTable::zmod(4).unwrap()).unwrap().is_none());
    }

    #[test]
    fn restriction_reports() {
        let a = f2_eps();
        let k = a.subring_generated(&[], true).unwrap();
        let m = a.is_local().unwrap().unwrap();
        let r = residue_restriction(&a, &k, &m).unwrap();
        assert!(r.verdict && r.consistent());

        let p = f2_sq();
        let diag = p.subring_generated(&[], true).unwrap();
        let m0 = p.ideal_generated(&[2]).unwrap();
        let r = residue_restriction(&p, &diag, &m0).unwrap();
        assert!(r.verdict && r.consistent());

        let f4 = gf_ring(4).unwrap();
        let prime = f4.subring_generated(&[], true).unwrap();
        let r = residue_restriction(&f4, &prime, &Ideal::zero(&f4)).unwrap();
        assert!(r.restriction_injective && !r.restriction_surjective && !r.verdict);
        assert!(r.consistent());
    }

    #[test]
    fn restriction_rejects_bad_inputs() {
        let a = f2_eps();
        let k = a.subring_generated(&[], true).unwrap();
        assert!(matches!(
            residue_restriction(&a, &k, &Ideal::zero(&a)),
            Err(AlgebraError::InvalidInput(_))
        ));
        let whole = a.subring_generated(&[2], true).unwrap();
        let m = a.is_local().unwrap().unwrap();
        assert!(residue_restriction(&a, &whole, &m).is_err());
    }

    #[test]
    fn unit_decomposition() {
        let a = f2_eps();
        let k = largest_subfield(&a).unwrap().unwrap();
        assert!(check_unit_decomposition(&a, &k).unwrap());
        let f9 = gf_ring(9).unwrap();
        let k = largest_subfield(&f9).unwrap().unwrap();
        assert!(check_unit_decomposition(&f9, &k).unwrap());
        let b = poly_quotient_ring(4, &[0, 0, 1]).unwrap();
        let k = largest_subfield(&b).unwrap().unwrap();
        assert_eq!(k.len(), 4);
        assert!(check_unit_decomposition(&b, &k).unwrap());
        let p = f2_sq();
        let diag = p.subring_generated(&[], true).unwrap();
        assert!(matches!(
            check_unit_decomposition(&p, &diag),
            Err(AlgebraError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn theorem_qfld() {
        assert_eq!(check_theorem_qfld(&f2_eps()).unwrap(), Some(true));
        assert_eq!(check_theorem_qfld(&RingTable::zmod(4).unwrap()).unwrap(), None);
        assert_eq!(check_theorem_qfld(&gf_ring(9).unwrap()).unwrap(), Some(true));
    }

    #[test]
    fn prop_maximal() {
        let p = f2_sq();
        let diag = p.subring_generated(&[], true).unwrap();
        assert!(check_prop_maximal(&p, &diag, &p.ideal_generated(&[2]).unwrap()).unwrap());
        let f4 = gf_ring(4).unwrap();
        let whole = largest_subfield(&f4).unwrap().unwrap();
        assert!(check_prop_maximal(&f4, &whole, &Ideal::zero(&f4)).unwrap());
        let prime = f4.subring_generated(&[], true).unwrap();
        assert!(matches!(
            check_prop_maximal(&f4, &prime, &Ideal::zero(&f4)),
            Err(AlgebraError::PreconditionUnmet(_))
        ));
    }

    #[test]
    fn algebra_hom_counts() {
        let a = poly_quotient_ring(2, &[0, 1, 1]).unwrap();
        let ka = KappaAlgebra::over_prime_field(&a).unwrap();
        assert_eq!(algebra_homs(&a, &ka).unwrap().len(), 2);
        let f4 = gf_ring(4).unwrap();
        let ka = KappaAlgebra::over_prime_field(&f4).unwrap();
        assert!(algebra_homs(&f4, &ka).unwrap().is_empty());
        let f3 = gf_ring(3).unwrap();
        let ka = KappaAlgebra::over_prime_field(&f3).unwrap();
        assert_eq!(algebra_homs(&f3, &ka).unwrap().len(), 1);
    }

    #[test]
    fn gelfand_reports() {
        let a = poly_quotient_ring(2, &[0, 1, 1]).unwrap();
        let g = gelfand_bijection_check(&a, &KappaAlgebra::over_prime_field(&a).unwrap()).unwrap();
        assert_eq!((g.homs, g.maximal_ideals), (2, 2));
        assert!(g.restricted_bijection && g.full_bijection);
        let f4 = gf_ring(4).unwrap();
        let g = gelfand_bijection_check(&f4, &KappaAlgebra::over_prime_field(&f4).unwrap()).unwrap();
        assert_eq!((g.homs, g.maximal_ideals, g.rational_ideals), (0, 1, 0));
        assert!(g.restricted_bijection && !g.full_bijection);
        let f2 = gf_ring(2).unwrap();
        let g = gelfand_bijection_check(&f2, &KappaAlgebra::over_prime_field(&f2).unwrap()).unwrap();
        assert_eq!(g.correspondence, vec![(0, 0)]);
    }

    #[test]
    fn absiso_and_uniqueness() {
        assert!(search_absiso_gap(&[f2_eps()], true).unwrap().is_empty());
        assert!(search_absiso_gap(&[], true).unwrap().is_empty());
        // the prime field of GF(4) is not abstractly isomorphic to GF(4)
        let f4 = gf_ring(4).unwrap();
        let rows = absiso_probe(&f4, true).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].kappa.len(), 4);
        assert!(!rows[0].gap);
        // a coordinate copy of F2 in F2 x F2 is abstractly the residue field
        // but is killed by the projection onto its own factor
        let gaps = search_absiso_gap(&[f2_sq()], false).unwrap();
        assert!(!gaps.is_empty());
        assert!(gaps.iter().all(|g| !g.kappa_contains_one && g.rescued_by.is_some()));
        assert!(uniqueness_probe(&f2_eps()).unwrap().is_none());
    }
}
