//! `I`-adic completion of finite rings, built as an honest inverse limit of
//! the tower `R/I -> R/I^2 -> ...` rather than short-cut to `R/I^N`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::Result;
use crate::par::Exec;
use crate::ring::{Elem, ElemSet, Ideal, RingMorphism, RingTable};

/// `I^n`, with `I^1 = I`.
pub fn ideal_power(ring: &RingTable, ideal: &Ideal, n: usize) -> Result<Ideal> {
    if n == 0 {
        return Err(crate::AlgebraError::InvalidInput("ideal power needs n >= 1".into()));
    }
    let ideal = Ideal::new(ring, ideal.members().clone())?;
    let mut acc = ideal.clone();
    for _ in 1..n {
        acc = ring.ideal_product(&acc, &ideal);
    }
    Ok(acc)
}

/// Least `N` with `I^N = I^(N+1)`.
pub fn stable_index(ring: &RingTable, ideal: &Ideal) -> Result<usize> {
    let ideal = Ideal::new(ring, ideal.members().clone())?;
    let mut cur = ideal.clone();
    let mut n = 1;
    loop {
        let next = ring.ideal_product(&cur, &ideal);
        if next == cur {
            return Ok(n);
        }
        cur = next;
        n += 1;
    }
}

/// The quotients `R/I^1 .. R/I^depth` with their transition maps.
#[derive(Debug, Clone)]
pub struct TowerSystem {
    pub depth: usize,
    pub powers: Vec<Ideal>,
    pub quotients: Vec<RingTable>,
    /// `R -> R/I^n`, index `n - 1`.
    pub natural: Vec<RingMorphism>,
    /// `R/I^(n+1) -> R/I^n`, index `n - 1`.
    pub transitions: Vec<RingMorphism>,
}

impl TowerSystem {
    pub fn new(ring: &RingTable, ideal: &Ideal, depth: usize) -> Result<Self> {
        let mut powers = Vec::with_capacity(depth);
        let mut quotients = Vec::with_capacity(depth);
        let mut natural = Vec::with_capacity(depth);
        for n in 1..=depth {
            let pw = ideal_power(ring, ideal, n)?;
            let (q, p) = ring.quotient(&pw)?;
            powers.push(pw);
            quotients.push(q);
            natural.push(p);
        }
        let mut transitions = Vec::with_capacity(depth.saturating_sub(1));
        for n in 0..depth.saturating_sub(1) {
            // well defined because I^(n+1) ⊆ I^n
            let mut map = vec![usize::MAX; quotients[n + 1].order()];
            for r in ring.elements() {
                map[natural[n + 1].apply(r)] = natural[n].apply(r);
            }
            transitions.push(RingMorphism::new(&quotients[n + 1], &quotients[n], map, true)?);
        }
        Ok(TowerSystem { depth, powers, quotients, natural, transitions })
    }

    /// `q_n ∘ p_(n+1) = p_n` for every level, and every `q_n` is onto.
    pub fn is_coherent(&self, ring: &RingTable) -> bool {
        self.transitions.iter().enumerate().all(|(n, q)| {
            q.is_surjective(self.quotients[n].order())
                && ring
                    .elements()
                    .all(|r| q.apply(self.natural[n + 1].apply(r)) == self.natural[n].apply(r))
        })
    }
}

/// The ring of compatible tuples and the natural map into it.
#[derive(Debug, Clone)]
pub struct InverseLimit {
    pub tower: TowerSystem,
    pub stable_index: usize,
    /// Compatible tuples `(c_1, .., c_depth)`, index order = limit element.
    pub tuples: Vec<Vec<Elem>>,
    pub limit: RingTable,
    pub natural: RingMorphism,
    /// Projection of the limit onto `R/I^N` is an isomorphism.
    pub stabilization_verified: bool,
}

/// Builds `lim R/I^n` through depth `stable_index + 1`.
pub fn inverse_limit(ring: &RingTable, ideal: &Ideal) -> Result<InverseLimit> {
    let n_stable = stable_index(ring, ideal)?;
    let depth = n_stable + 1;
    let tower = TowerSystem::new(ring, ideal, depth)?;

    // fibers of each transition, to extend tuples one level at a time
    let fibers: Vec<Vec<Vec<Elem>>> = tower
        .transitions
        .iter()
        .enumerate()
        .map(|(n, q)| {
            let mut f = vec![Vec::new(); tower.quotients[n].order()];
            for c in tower.quotients[n + 1].elements() {
                f[q.apply(c)].push(c);
            }
            f
        })
        .collect();
    let mut tuples: Vec<Vec<Elem>> = tower.quotients[0].elements().map(|c| vec![c]).collect();
    for fiber in &fibers {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                let last = *t.last().expect("nonempty tuple");
                fiber[last].iter().map(move |&c| {
                    let mut t2 = t.clone();
                    t2.push(c);
                    t2
                })
            })
            .collect();
    }
    let index: HashMap<Vec<Elem>, usize> = tuples.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
    let componentwise = |a: Elem, b: Elem, op: &dyn Fn(&RingTable, Elem, Elem) -> Elem| {
        let t: Vec<Elem> = (0..depth)
            .map(|n| op(&tower.quotients[n], tuples[a][n], tuples[b][n]))
            .collect();
        index[&t]
    };
    let lookup = |f: &dyn Fn(usize) -> Elem| index[&(0..depth).map(f).collect::<Vec<_>>()];
    let zero = lookup(&|n| tower.quotients[n].zero());
    let one = lookup(&|n| tower.quotients[n].one());
    let limit = RingTable::from_fn(
        format!("lim {}", ring.label()),
        tuples.len(),
        |a, b| componentwise(a, b, &|q, x, y| q.add(x, y)),
        |a, b| componentwise(a, b, &|q, x, y| q.mul(x, y)),
        zero,
        one,
    )?;
    let natural_map = ring
        .elements()
        .map(|r| lookup(&|n| tower.natural[n].apply(r)))
        .collect();
    let natural = RingMorphism::new(ring, &limit, natural_map, true)?;

    let to_stable: Vec<Elem> = tuples.iter().map(|t| t[n_stable - 1]).collect();
    let q_n = &tower.quotients[n_stable - 1];
    let proj = RingMorphism::new(&limit, q_n, to_stable, true);
    let stabilization_verified = proj.is_ok_and(|p| p.is_injective() && p.is_surjective(q_n.order()));

    Ok(InverseLimit {
        tower,
        stable_index: n_stable,
        tuples,
        limit,
        natural,
        stabilization_verified,
    })
}

/// Whether `R -> lim R/I^n` is bijective.
pub fn is_complete(ring: &RingTable, ideal: &Ideal) -> Result<bool> {
    let lim = inverse_limit(ring, ideal)?;
    Ok(lim.natural.is_injective() && lim.natural.is_surjective(lim.limit.order()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DichotomyReport {
    pub ring: String,
    pub ideal: ElemSet,
    pub stable_index: usize,
    pub idempotent: bool,
    pub nilpotent: bool,
    pub complete: bool,
    /// `None` for ideals that are neither idempotent nor nilpotent.
    pub assertion: Option<bool>,
}

impl DichotomyReport {
    pub fn pass(&self) -> bool {
        self.assertion != Some(false)
    }
}

/// Idempotent ideals: complete iff `I = 0`. Nilpotent ideals: complete.
pub fn dichotomy_check(ring: &RingTable, ideal: &Ideal) -> Result<DichotomyReport> {
    let lim = inverse_limit(ring, ideal)?;
    let complete = lim.natural.is_injective() && lim.natural.is_surjective(lim.limit.order());
    let idempotent = ring.ideal_product(ideal, ideal) == *ideal;
    let nilpotent = lim.tower.powers[lim.stable_index - 1].is_zero();
    let mut assertion = None;
    if idempotent {
        assertion = Some(complete == ideal.is_zero());
    }
    if nilpotent {
        assertion = Some(assertion.unwrap_or(true) && complete);
    }
    Ok(DichotomyReport {
        ring: ring.label().to_string(),
        ideal: ideal.members().clone(),
        stable_index: lim.stable_index,
        idempotent,
        nilpotent,
        complete,
        assertion,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub ring: String,
    pub ideal: String,
    pub order: usize,
    pub stable_index: usize,
    pub complete: bool,
    pub idempotent: bool,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct SurveyReport {
    pub rows: Vec<SurveyRow>,
    /// Local rings that are not complete for their maximal ideal.
    pub counterexamples: Vec<String>,
}

/// Evaluates completeness at the maximal ideal for every local ring.
pub fn complete_local_survey(catalog: &[RingTable], exec: Exec) -> Result<SurveyReport> {
    let rows: Vec<Result<Option<SurveyRow>>> = exec.map(catalog, |r| {
        if r.is_zero_ring() {
            return Ok(None);
        }
        let Some(m) = r.is_local()? else { return Ok(None) };
        let d = dichotomy_check(r, &m)?;
        Ok(Some(SurveyRow {
            ring: r.label().to_string(),
            ideal: format!("m (size {})", m.len()),
            order: r.order(),
            stable_index: d.stable_index,
            complete: d.complete,
            idempotent: d.idempotent,
            nilpotent: d.nilpotent,
        }))
    });
    let mut report = SurveyReport::default();
    for row in rows {
        if let Some(row) = row? {
            if !row.complete {
                report.counterexamples.push(row.ring.clone());
            }
            report.rows.push(row);
        }
    }
    report.rows.sort_by(|a, b| a.ring.cmp(&b.ring));
    report.counterexamples.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{gf_ring, poly_quotient_ring};
    use crate::ring::find_isomorphism;

    fn z(n: usize) -> RingTable {
        RingTable::zmod(n).unwrap()
    }

    fn f2_sq() -> RingTable {
        let f2 = gf_ring(2).unwrap();
        RingTable::product(&f2, &f2).unwrap()
    }

    #[test]
    fn powers() {
        let z8 = z(8);
        let two = z8.ideal_generated(&[2]).unwrap();
        assert_eq!(ideal_power(&z8, &two, 2).unwrap().members().as_slice(), &[0, 4]);
        assert!(ideal_power(&z8, &two, 3).unwrap().is_zero());
        let p = f2_sq();
        let e = p.ideal_generated(&[2]).unwrap();
        assert_eq!(ideal_power(&p, &e, 5).unwrap(), e);
        let t = poly_quotient_ring(2, &[0, 0, 0, 1]).unwrap();
        let x = t.ideal_generated(&[2]).unwrap();
        assert!(ideal_power(&t, &x, 3).unwrap().is_zero());
        assert!(ideal_power(&t, &x, 0).is_err());
    }

    #[test]
    fn stable_indices() {
        let z8 = z(8);
        assert_eq!(stable_index(&z8, &z8.ideal_generated(&[2]).unwrap()).unwrap(), 3);
        assert_eq!(stable_index(&z8, &Ideal::zero(&z8)).unwrap(), 1);
        let p = f2_sq();
        assert_eq!(stable_index(&p, &p.ideal_generated(&[2]).unwrap()).unwrap(), 1);
    }

    #[test]
    fn limits() {
        let z8 = z(8);
        let lim = inverse_limit(&z8, &z8.ideal_generated(&[2]).unwrap()).unwrap();
        assert_eq!(lim.limit.order(), 8);
        assert!(lim.natural.is_injective());
        assert!(lim.stabilization_verified);
        assert!(lim.tower.is_coherent(&z8));
        assert!(lim.limit.validate().is_ok());

        let p = f2_sq();
        let e = p.ideal_generated(&[2]).unwrap();
        let lim = inverse_limit(&p, &e).unwrap();
        assert!(find_isomorphism(&lim.limit, &gf_ring(2).unwrap()).unwrap().is_some());

        let z6 = z(6);
        let lim = inverse_limit(&z6, &Ideal::zero(&z6)).unwrap();
        assert!(find_isomorphism(&lim.limit, &z6).unwrap().is_some());
    }

    #[test]
    fn completeness() {
        let z8 = z(8);
        assert!(is_complete(&z8, &z8.ideal_generated(&[2]).unwrap()).unwrap());
        let p = f2_sq();
        assert!(!is_complete(&p, &p.ideal_generated(&[2]).unwrap()).unwrap());
        for r in [z(5), z(12), f2_sq()] {
            assert!(is_complete(&r, &Ideal::zero(&r)).unwrap());
            assert!(!is_complete(&r, &Ideal::whole(&r)).unwrap());
        }
    }

    #[test]
    fn dichotomy() {
        let p = f2_sq();
        let d = dichotomy_check(&p, &p.ideal_generated(&[2]).unwrap()).unwrap();
        assert!(d.idempotent && !d.complete && d.pass());
        let z8 = z(8);
        let d = dichotomy_check(&z8, &z8.ideal_generated(&[2]).unwrap()).unwrap();
        assert!(d.nilpotent && d.complete && d.pass());
        let d = dichotomy_check(&z8, &Ideal::zero(&z8)).unwrap();
        assert!(d.idempotent && d.nilpotent && d.complete && d.assertion == Some(true));
        // (2) in Z/12 is neither: its powers stabilize at (4) ≠ 0
        let z12 = z(12);
        let d = dichotomy_check(&z12, &z12.ideal_generated(&[2]).unwrap()).unwrap();
        assert!(!d.idempotent && !d.nilpotent && d.assertion.is_none());
    }

    #[test]
    fn survey() {
        let cat = vec![z(8), f2_sq(), poly_quotient_ring(3, &[0, 0, 1]).unwrap()];
        let s = complete_local_survey(&cat, Exec::Sequential).unwrap();
        assert_eq!(s.rows.len(), 2);
        assert!(s.counterexamples.is_empty());
        assert_eq!(complete_local_survey(&[], Exec::Parallel).unwrap(), SurveyReport::default());
    }
}
