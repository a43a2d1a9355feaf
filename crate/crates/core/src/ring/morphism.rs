use serde::Serialize;

use super::{Elem, ElemSet, Ideal, RingTable, ENUM_CAP};
use crate::error::{check_cap, AlgebraError, Result};

/// An element-index map between two rings. The rings themselves are passed
/// to the methods that need them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RingMorphism {
    map: Vec<Elem>,
    unital: bool,
}

impl RingMorphism {
    /// Validates `map` as a homomorphism `source -> target`.
    pub fn new(source: &RingTable, target: &RingTable, map: Vec<Elem>, unital: bool) -> Result<Self> {
        let m = RingMorphism { map, unital };
        match m.violation(source, target) {
            None => Ok(m),
            Some(why) => Err(AlgebraError::InvalidInput(why)),
        }
    }

    pub(crate) fn from_parts(map: Vec<Elem>, unital: bool) -> Self {
        RingMorphism { map, unital }
    }

    pub fn identity(ring: &RingTable) -> Self {
        RingMorphism { map: ring.elements().collect(), unital: true }
    }

    /// First reason the map fails to be a homomorphism, if any.
    pub fn violation(&self, source: &RingTable, target: &RingTable) -> Option<String> {
        if self.map.len() != source.order() {
            return Some(format!("map has {} entries, source has {}", self.map.len(), source.order()));
        }
        if let Some(&bad) = self.map.iter().find(|&&t| t >= target.order()) {
            return Some(format!("image {bad} outside target"));
        }
        if self.apply(source.zero()) != target.zero() {
            return Some("zero not preserved".into());
        }
        if self.unital && self.apply(source.one()) != target.one() {
            return Some("one not preserved".into());
        }
        for a in source.elements() {
            for b in source.elements() {
                if self.apply(source.add(a, b)) != target.add(self.apply(a), self.apply(b)) {
                    return Some(format!("addition not preserved at ({a}, {b})"));
                }
                if self.apply(source.mul(a, b)) != target.mul(self.apply(a), self.apply(b)) {
                    return Some(format!("multiplication not preserved at ({a}, {b})"));
                }
            }
        }
        None
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn is_unital(&self) -> bool {
        self.unital
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|t| seen.insert(*t))
    }

    pub fn is_surjective(&self, target_order: usize) -> bool {
        self.image().len() == target_order
    }

    pub fn image(&self) -> ElemSet {
        self.map.iter().copied().collect()
    }

    pub fn kernel(&self, source: &RingTable, target: &RingTable) -> Ideal {
        let members = source
            .elements()
            .filter(|&a| self.apply(a) == target.zero())
            .collect();
        Ideal::new_unchecked(members)
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &RingMorphism) -> RingMorphism {
        RingMorphism {
            map: self.map.iter().map(|&a| then.apply(a)).collect(),
            unital: self.unital && then.unital,
        }
    }
}

/// Parameters for [`hom_search`].
#[derive(Clone, Copy, Default)]
pub struct HomQuery<'a> {
    pub unital: bool,
    pub injective: bool,
    /// Stop after this many results.
    pub limit: Option<usize>,
    /// Extra pointwise constraint `(source element, candidate image)`.
    pub allowed: Option<&'a (dyn Fn(Elem, Elem) -> bool + Sync)>,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Zero,
    One,
    Gen,
    Add(Elem, Elem),
    Mul(Elem, Elem),
    Neg(Elem),
}

/// Elements introduced when one more generator is adjoined; the generator
/// (if any) comes first, then everything its closure adds.
struct Stage {
    gen: Option<Elem>,
    elems: Vec<(Elem, Step)>,
}

/// Greedy generating sequence for `ring`, with a derivation for every
/// element in terms of earlier ones.
fn plan(ring: &RingTable, unital: bool) -> Vec<Stage> {
    let n = ring.order();
    let mut seen = vec![false; n];
    let mut list: Vec<Elem> = Vec::with_capacity(n);
    let mut cur: Vec<(Elem, Step)> = Vec::new();
    let mut push = |x: Elem, step: Step, list: &mut Vec<Elem>, cur: &mut Vec<(Elem, Step)>| {
        if !seen[x] {
            seen[x] = true;
            list.push(x);
            cur.push((x, step));
        }
    };
    push(ring.zero(), Step::Zero, &mut list, &mut cur);
    if unital {
        push(ring.one(), Step::One, &mut list, &mut cur);
    }
    let mut stages = Vec::new();
    let mut gen = None;
    let mut i = 0;
    loop {
        while i < list.len() {
            let x = list[i];
            push(ring.neg(x), Step::Neg(x), &mut list, &mut cur);
            for j in 0..=i {
                let y = list[j];
                push(ring.add(x, y), Step::Add(x, y), &mut list, &mut cur);
                push(ring.mul(x, y), Step::Mul(x, y), &mut list, &mut cur);
            }
            i += 1;
        }
        stages.push(Stage { gen, elems: std::mem::take(&mut cur) });
        let mut in_closure = vec![false; n];
        for &x in &list {
            in_closure[x] = true;
        }
        match (0..n).find(|&a| !in_closure[a]) {
            None => break,
            Some(g) => {
                gen = Some(g);
                push(g, Step::Gen, &mut list, &mut cur);
            }
        }
    }
    stages
}

const UNSET: Elem = usize::MAX;

struct Search<'a> {
    src: &'a RingTable,
    tgt: &'a RingTable,
    query: &'a HomQuery<'a>,
    stages: Vec<Stage>,
    tgt_add_order: Vec<usize>,
    src_add_order: Vec<usize>,
    img: Vec<Elem>,
    used: Vec<bool>,
    closure: Vec<Elem>,
    out: Vec<RingMorphism>,
}

impl<'a> Search<'a> {
    fn done(&self) -> bool {
        self.query.limit.is_some_and(|l| self.out.len() >= l)
    }

    fn run(&mut self, k: usize) {
        if self.done() {
            return;
        }
        if k == self.stages.len() {
            let m = RingMorphism::from_parts(self.img.clone(), self.query.unital);
            // every pair was already checked stage by stage; this is the
            // independent full-table confirmation
            if m.violation(self.src, self.tgt).is_none() {
                self.out.push(m);
            }
            return;
        }
        match self.stages[k].gen {
            None => self.try_stage(k, None),
            Some(g) => {
                for t in self.tgt.elements() {
                    if !self.src_add_order[g].is_multiple_of(self.tgt_add_order[t]) {
                        continue;
                    }
                    self.try_stage(k, Some(t));
                    if self.done() {
                        return;
                    }
                }
            }
        }
    }

    fn image_of(&self, step: Step, gen_image: Option<Elem>) -> Elem {
        match step {
            Step::Zero => self.tgt.zero(),
            Step::One => self.tgt.one(),
            Step::Gen => gen_image.expect("generator stage"),
            Step::Add(x, y) => self.tgt.add(self.img[x], self.img[y]),
            Step::Mul(x, y) => self.tgt.mul(self.img[x], self.img[y]),
            Step::Neg(x) => self.tgt.neg(self.img[x]),
        }
    }

    fn try_stage(&mut self, k: usize, gen_image: Option<Elem>) {
        let count = self.stages[k].elems.len();
        let base = self.closure.len();
        let mut ok = true;
        for idx in 0..count {
            let (x, step) = self.stages[k].elems[idx];
            let t = self.image_of(step, gen_image);
            let allowed = self.query.allowed.is_none_or(|f| f(x, t));
            if !allowed || (self.query.injective && self.used[t]) {
                ok = false;
                break;
            }
            self.img[x] = t;
            if self.query.injective {
                self.used[t] = true;
            }
            self.closure.push(x);
        }
        if ok {
            ok = self.consistent(base);
        }
        if ok {
            self.run(k + 1);
        }
        let injective = self.query.injective;
        for x in self.closure.drain(base..) {
            if injective {
                self.used[self.img[x]] = false;
            }
            self.img[x] = UNSET;
        }
    }

    /// Checks `+` and `*` on pairs involving an element introduced at or
    /// after `base` in the closure list.
    fn consistent(&self, base: usize) -> bool {
        let (src, tgt) = (self.src, self.tgt);
        for &b in &self.closure[base..] {
            for &a in &self.closure {
                let s = self.img[src.add(a, b)];
                let p = self.img[src.mul(a, b)];
                if s == UNSET || p == UNSET {
                    return false;
                }
                if s != tgt.add(self.img[a], self.img[b]) || p != tgt.mul(self.img[a], self.img[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Backtracking search for homomorphisms `source -> target`.
pub fn hom_search(source: &RingTable, target: &RingTable, query: &HomQuery<'_>) -> Result<Vec<RingMorphism>> {
    check_cap("homomorphism source order", source.order() as u128, ENUM_CAP as u128)?;
    let stages = plan(source, query.unital);
    let mut s = Search {
        src: source,
        tgt: target,
        query,
        stages,
        tgt_add_order: target.elements().map(|a| target.additive_order(a)).collect(),
        src_add_order: source.elements().map(|a| source.additive_order(a)).collect(),
        img: vec![UNSET; source.order()],
        used: vec![false; target.order()],
        closure: Vec::with_capacity(source.order()),
        out: Vec::new(),
    };
    s.run(0);
    let mut out = s.out;
    out.sort();
    Ok(out)
}

/// All ring homomorphisms `source -> target`, unital if requested.
pub fn hom_enumerate(source: &RingTable, target: &RingTable, unital: bool) -> Result<Vec<RingMorphism>> {
    hom_search(source, target, &HomQuery { unital, ..Default::default() })
}

/// A unital ring isomorphism `a -> b`, if one exists.
pub fn find_isomorphism(a: &RingTable, b: &RingTable) -> Result<Option<RingMorphism>> {
    check_cap("isomorphism source order", a.order() as u128, ENUM_CAP as u128)?;
    if a.order() != b.order()
        || a.characteristic() != b.characteristic()
        || a.units().len() != b.units().len()
        || a.idempotents().all.len() != b.idempotents().all.len()
    {
        return Ok(None);
    }
    let q = HomQuery { unital: true, injective: true, limit: Some(1), allowed: None };
    Ok(hom_search(a, b, &q)?.into_iter().next())
}
