//! Permutation groups small enough to enumerate, and brute-force subgroup queries.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::perm::{Perm, PermError};

pub const DEFAULT_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order exceeds the enumeration cap {0}; supply subgroup data explicitly")]
    CapExceeded(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("no 2-element generating set found within {0} attempts")]
    NotTwoGenerated(usize),
    #[error("conjugation search exhausted after {0} elements")]
    ConjugationBudget(usize),
    #[error("subgroup is not elementary abelian of rank 2")]
    NotRankTwo,
    #[error("unknown generator name {0:?}")]
    UnknownGenerator(String),
    #[error("malformed word {0:?}")]
    BadWord(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// Elements in breadth-first order over generator words, with a spanning tree.
#[derive(Debug)]
pub struct Enumeration {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// For each non-identity element: (index of parent, generator index) with element = parent·gen.
    parent: Vec<(u32, u32)>,
}

impl Enumeration {
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }
    /// Generator indices whose product (left to right) is element i.
    pub fn word(&self, mut i: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while i != 0 {
            let (p, g) = self.parent[i];
            w.push(g as usize);
            i = p as usize;
        }
        w.reverse();
        w
    }
    /// (parent, generator) of element i > 0.
    pub fn parent(&self, i: usize) -> (usize, usize) {
        let (p, g) = self.parent[i];
        (p as usize, g as usize)
    }
}

#[derive(Clone, Debug)]
pub struct FinGroup {
    degree: usize,
    gens: Vec<Perm>,
    cap: usize,
    cache: OnceLock<Result<Arc<Enumeration>, GroupError>>,
}

impl FinGroup {
    /// Group generated by `gens` on `degree` points; identity generators are kept.
    pub fn new(degree: usize, gens: Vec<Perm>) -> FinGroup {
        assert!(gens.iter().all(|g| g.degree() == degree), "generator degree mismatch");
        FinGroup { degree, gens, cap: DEFAULT_CAP, cache: OnceLock::new() }
    }

    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<FinGroup, GroupError> {
        let gens = gens.iter().map(|g| Perm::from_cycles(g, degree)).collect::<Result<_, _>>()?;
        Ok(FinGroup::new(degree, gens))
    }

    pub fn trivial(degree: usize) -> FinGroup {
        FinGroup::new(degree, vec![])
    }

    pub fn with_cap(mut self, cap: usize) -> FinGroup {
        self.cap = cap;
        self.cache = OnceLock::new();
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }
    pub fn ngens(&self) -> usize {
        self.gens.len()
    }
    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    pub fn enumeration(&self) -> Result<&Enumeration, GroupError> {
        self.cache
            .get_or_init(|| self.enumerate_uncached().map(Arc::new))
            .as_ref()
            .map(|a| a.as_ref())
            .map_err(Clone::clone)
    }

    fn enumerate_uncached(&self) -> Result<Enumeration, GroupError> {
        let id = self.identity();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![(0u32, 0u32)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for (gi, g) in self.gens.iter().enumerate() {
                let y = elements[i].mul(g);
                if !index.contains_key(&y) {
                    if elements.len() >= self.cap {
                        return Err(GroupError::CapExceeded(self.cap));
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                    parent.push((i as u32, gi as u32));
                }
            }
        }
        Ok(Enumeration { elements, index, parent })
    }

    pub fn elements(&self) -> Result<&[Perm], GroupError> {
        Ok(&self.enumeration()?.elements)
    }

    pub fn order(&self) -> Result<usize, GroupError> {
        Ok(self.enumeration()?.elements.len())
    }

    pub fn contains(&self, p: &Perm) -> Result<bool, GroupError> {
        Ok(self.enumeration()?.index_of(p).is_some())
    }

    pub fn index_of(&self, p: &Perm) -> Result<Option<usize>, GroupError> {
        Ok(self.enumeration()?.index_of(p))
    }

    /// Generator indices spelling p, if p lies in the group.
    pub fn word_for(&self, p: &Perm) -> Result<Option<Vec<usize>>, GroupError> {
        let e = self.enumeration()?;
        Ok(e.index_of(p).map(|i| e.word(i)))
    }

    pub fn subgroup(&self, gens: Vec<Perm>) -> FinGroup {
        FinGroup::new(self.degree, gens).with_cap(self.cap)
    }

    /// Subgroup generated by a set of elements, with a small generating set chosen greedily.
    pub fn subgroup_from_elements(&self, elems: &[Perm]) -> Result<FinGroup, GroupError> {
        let target: HashSet<&Perm> = elems.iter().collect();
        let mut gens: Vec<Perm> = Vec::new();
        let mut current: HashSet<Perm> = HashSet::from([self.identity()]);
        for x in elems {
            if current.contains(x) {
                continue;
            }
            gens.push(x.clone());
            current = self.subgroup(gens.clone()).elements()?.iter().cloned().collect();
            if current.len() >= target.len() {
                break;
            }
        }
        Ok(self.subgroup(gens))
    }

    pub fn is_subgroup_of(&self, other: &FinGroup) -> Result<bool, GroupError> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_group(&self, other: &FinGroup) -> Result<bool, GroupError> {
        Ok(self.order()? == other.order()? && self.is_subgroup_of(other)?)
    }

    pub fn is_normal_in(&self, ambient: &FinGroup) -> Result<bool, GroupError> {
        for g in ambient.generators() {
            for s in &self.gens {
                if !self.contains(&s.conjugate(g))? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn filter(&self, pred: impl Fn(&Perm) -> bool) -> Result<FinGroup, GroupError> {
        let elems: Vec<Perm> = self.elements()?.iter().filter(|g| pred(g)).cloned().collect();
        self.subgroup_from_elements(&elems)
    }

    /// Elements of self commuting with every generator of s.
    pub fn centralizer(&self, s: &FinGroup) -> Result<FinGroup, GroupError> {
        self.filter(|g| s.gens.iter().all(|x| g.mul(x) == x.mul(g)))
    }

    pub fn normalizer(&self, s: &FinGroup) -> Result<FinGroup, GroupError> {
        s.enumeration()?;
        self.filter(|g| s.gens.iter().all(|x| s.contains(&x.conjugate(g)).unwrap_or(false)))
    }

    pub fn intersection(&self, other: &FinGroup) -> Result<FinGroup, GroupError> {
        other.enumeration()?;
        self.filter(|g| other.contains(g).unwrap_or(false))
    }

    /// A Sylow ℓ-subgroup, grown one step at a time inside normalisers.
    pub fn sylow(&self, l: usize) -> Result<FinGroup, GroupError> {
        let n = self.order()?;
        let mut target = 1;
        let mut m = n;
        while m % l == 0 {
            m /= l;
            target *= l;
        }
        let mut p = self.subgroup(vec![]);
        while p.order()? < target {
            let norm = self.normalizer(&p)?;
            let mut grown = None;
            for x in norm.elements()? {
                if p.contains(x)? {
                    continue;
                }
                if p.contains(&x.pow(l as i64))? {
                    let mut gens = p.gens.clone();
                    gens.push(x.clone());
                    grown = Some(self.subgroup(gens));
                    break;
                }
            }
            p = grown.expect("Sylow theorem guarantees growth");
        }
        Ok(p)
    }

    /// Complements of the normal subgroup q: subgroups K with K ∩ q = 1 and Kq = self.
    pub fn complements(&self, q: &FinGroup) -> Result<Vec<FinGroup>, GroupError> {
        if !q.is_normal_in(self)? {
            return Err(GroupError::NotNormal);
        }
        let n = self.order()?;
        let qn = q.order()?;
        let k = n / qn;
        // elements whose images generate self/q
        let mut reps: Vec<Perm> = Vec::new();
        let mut span = q.order()?;
        for x in self.elements()? {
            if span == n {
                break;
            }
            let mut gens = q.gens.clone();
            gens.extend(reps.iter().cloned());
            let cur = self.subgroup(gens.clone());
            if cur.contains(x)? {
                continue;
            }
            gens.push(x.clone());
            let bigger = self.subgroup(gens).order()?;
            if bigger > span {
                reps.push(x.clone());
                span = bigger;
            }
        }
        let qel = q.elements()?.to_vec();
        let mut found: Vec<FinGroup> = Vec::new();
        let mut seen: HashSet<Vec<Perm>> = HashSet::new();
        let total = qel.len().pow(reps.len() as u32);
        for code in 0..total {
            let mut c = code;
            let gens: Vec<Perm> = reps
                .iter()
                .map(|r| {
                    let t = &qel[c % qel.len()];
                    c /= qel.len();
                    r.mul(t)
                })
                .collect();
            let cand = self.subgroup(gens).with_cap(k);
            let Ok(order) = cand.order() else { continue };
            if order != k {
                continue;
            }
            if cand.elements()?.iter().filter(|x| q.contains(x).unwrap_or(false)).count() != 1 {
                continue;
            }
            let mut key = cand.elements()?.to_vec();
            key.sort();
            if seen.insert(key) {
                found.push(cand.with_cap(self.cap));
            }
        }
        Ok(found)
    }

    /// Same subgroup with exactly two generators.
    pub fn gen_two_el(&self, seed: u64, budget: usize) -> Result<FinGroup, GroupError> {
        match self.gens.len() {
            0 => return Ok(self.subgroup(vec![self.identity(), self.identity()])),
            1 => return Ok(self.subgroup(vec![self.gens[0].clone(), self.identity()])),
            2 => return Ok(self.clone()),
            _ => {}
        }
        let n = self.order()?;
        let elems = self.elements()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let a = elems.choose(&mut rng).unwrap().clone();
            let b = elems.choose(&mut rng).unwrap().clone();
            let cand = self.subgroup(vec![a, b]);
            if cand.order()? == n {
                return Ok(cand);
            }
        }
        Err(GroupError::NotTwoGenerated(budget))
    }

    /// Conjugate subgroup g⁻¹·self·g.
    pub fn conjugate(&self, g: &Perm) -> FinGroup {
        self.subgroup(self.gens.iter().map(|x| x.conjugate(g)).collect())
    }

    /// First conjugate (in the ambient's enumeration order, identity first) satisfying pred.
    pub fn conjugate_until(
        &self,
        ambient: &FinGroup,
        mut pred: impl FnMut(&FinGroup) -> Result<bool, GroupError>,
    ) -> Result<(FinGroup, Perm), GroupError> {
        let elems = ambient.elements()?;
        for g in elems {
            let c = self.conjugate(g);
            if pred(&c)? {
                return Ok((c, g.clone()));
            }
        }
        Err(GroupError::ConjugationBudget(elems.len()))
    }

    /// One representative per self-conjugacy class of order-ℓ subgroups of d.
    pub fn order_l_subgroup_classes(&self, d: &FinGroup, l: usize) -> Result<Vec<FinGroup>, GroupError> {
        let de = d.elements()?;
        let abelian = d.gens.iter().all(|a| d.gens.iter().all(|b| a.mul(b) == b.mul(a)));
        if de.len() != l * l || !abelian || de.iter().any(|x| !x.pow(l as i64).is_identity()) {
            return Err(GroupError::NotRankTwo);
        }
        // each line is keyed by its sorted element list
        let mut lines: Vec<Vec<Perm>> = Vec::new();
        let mut key_of: HashMap<Vec<Perm>, usize> = HashMap::new();
        for x in de.iter().skip(1) {
            let mut key: Vec<Perm> = (0..l as i64).map(|k| x.pow(k)).collect();
            key.sort();
            if !key_of.contains_key(&key) {
                key_of.insert(key.clone(), lines.len());
                lines.push(key);
            }
        }
        let mut class = vec![usize::MAX; lines.len()];
        let mut reps = Vec::new();
        for start in 0..lines.len() {
            if class[start] != usize::MAX {
                continue;
            }
            let c = reps.len();
            class[start] = c;
            let mut queue = VecDeque::from([start]);
            while let Some(i) = queue.pop_front() {
                for g in &self.gens {
                    let mut key: Vec<Perm> = lines[i].iter().map(|x| x.conjugate(g)).collect();
                    key.sort();
                    let j = key_of[&key];
                    if class[j] == usize::MAX {
                        class[j] = c;
                        queue.push_back(j);
                    }
                }
            }
            let gen = lines[start].iter().find(|x| !x.is_identity()).unwrap().clone();
            reps.push(self.subgroup(vec![gen]));
        }
        Ok(reps)
    }

    /// Parses a word such as "a b a^-1" or "a*b^2" in the named generators.
    pub fn eval_word(&self, text: &str, names: &[String]) -> Result<Perm, GroupError> {
        let mut acc = self.identity();
        for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| GroupError::BadWord(text.to_string()))?),
                None => (tok, 1),
            };
            if name == "1" || name == "id" {
                continue;
            }
            let gi = names.iter().position(|n| n == name).ok_or_else(|| GroupError::UnknownGenerator(name.into()))?;
            acc = acc.mul(&self.gens[gi].pow(exp));
        }
        Ok(acc)
    }
}

/// A × B acting on the disjoint union of the point sets.
#[derive(Clone, Debug)]
pub struct ProductEmbedding {
    pub product: FinGroup,
    left_degree: usize,
    right_degree: usize,
}

impl ProductEmbedding {
    pub fn embed_left(&self, a: &Perm) -> Perm {
        a.juxtapose(&Perm::identity(self.right_degree))
    }
    pub fn embed_right(&self, b: &Perm) -> Perm {
        Perm::identity(self.left_degree).juxtapose(b)
    }
    pub fn project_left(&self, x: &Perm) -> Perm {
        x.restrict(0, self.left_degree)
    }
    pub fn project_right(&self, x: &Perm) -> Perm {
        x.restrict(self.left_degree, self.right_degree)
    }
    pub fn pair(&self, a: &Perm, b: &Perm) -> Perm {
        a.juxtapose(b)
    }
}

/// Direct product; generators are the left generators followed by the right ones.
pub fn direct_product(a: &FinGroup, b: &FinGroup) -> ProductEmbedding {
    let (da, db) = (a.degree(), b.degree());
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| g.juxtapose(&Perm::identity(db))).collect();
    gens.extend(b.generators().iter().map(|g| Perm::identity(da).juxtapose(g)));
    ProductEmbedding { product: FinGroup::new(da + db, gens), left_degree: da, right_degree: db }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> FinGroup {
        FinGroup::from_cycles(5, &["(1,2,3)", "(1,2,3,4,5)"]).unwrap()
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(FinGroup::trivial(3).order().unwrap(), 1);
        assert_eq!(a5().order().unwrap(), 60);
        let d10 = FinGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap();
        assert_eq!(d10.order().unwrap(), 10);
        assert_eq!(a5().with_cap(59).order(), Err(GroupError::CapExceeded(59)));
    }

    #[test]
    fn words_spell_elements() {
        let g = a5();
        let e = g.enumeration().unwrap();
        for (i, x) in e.elements.iter().enumerate() {
            let p = e.word(i).iter().fold(g.identity(), |acc, &k| acc.mul(&g.generators()[k]));
            assert_eq!(&p, x);
        }
    }

    #[test]
    fn centralizer_normalizer_sylow_in_a5() {
        let g = a5();
        let c5 = g.subgroup(vec![Perm::from_cycles("(1,2,3,4,5)", 5).unwrap()]);
        assert_eq!(g.normalizer(&c5).unwrap().order().unwrap(), 10);
        let c = g.centralizer(&c5).unwrap();
        assert!(c.same_group(&c5).unwrap());
        assert!(g.centralizer(&FinGroup::trivial(5)).unwrap().same_group(&g).unwrap());
        assert_eq!(g.sylow(5).unwrap().order().unwrap(), 5);
        assert_eq!(g.sylow(2).unwrap().order().unwrap(), 4);
        let c3 = FinGroup::from_cycles(3, &["(1,2,3)"]).unwrap();
        assert_eq!(c3.sylow(2).unwrap().order().unwrap(), 1);
    }

    #[test]
    fn complements_examples() {
        let d10 = FinGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap();
        let c5 = d10.subgroup(vec![Perm::from_cycles("(1,2,3,4,5)", 5).unwrap()]);
        let ks = d10.complements(&c5).unwrap();
        assert_eq!(ks.len(), 5);
        for k in &ks {
            assert_eq!(k.order().unwrap(), 2);
        }
        assert_eq!(c5.complements(&c5).unwrap().len(), 1);
        let c4 = FinGroup::from_cycles(4, &["(1,2,3,4)"]).unwrap();
        let c2 = c4.subgroup(vec![Perm::from_cycles("(1,3)(2,4)", 4).unwrap()]);
        assert!(c4.complements(&c2).unwrap().is_empty());
    }

    #[test]
    fn gen_two_el_preserves_order() {
        let d10 = FinGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)", "(1,2)(3,5)"]).unwrap();
        let two = d10.gen_two_el(1, 100).unwrap();
        assert_eq!(two.ngens(), 2);
        assert_eq!(two.order().unwrap(), 10);
        let c5 = FinGroup::from_cycles(5, &["(1,2,3,4,5)"]).unwrap();
        assert_eq!(c5.gen_two_el(1, 10).unwrap().order().unwrap(), 5);
    }

    #[test]
    fn direct_product_embeddings_commute() {
        let d10 = FinGroup::from_cycles(5, &["(1,2,3,4,5)", "(2,5)(3,4)"]).unwrap();
        let pe = direct_product(&a5(), &d10);
        assert_eq!(pe.product.order().unwrap(), 600);
        for a in a5().generators() {
            for b in d10.generators() {
                let (x, y) = (pe.embed_left(a), pe.embed_right(b));
                assert_eq!(x.mul(&y), y.mul(&x));
                assert_eq!(&pe.project_left(&x), a);
                assert_eq!(&pe.project_right(&y), b);
            }
        }
    }

    #[test]
    fn lines_of_c5_squared() {
        let d = FinGroup::from_cycles(10, &["(1,2,3,4,5)", "(6,7,8,9,10)"]).unwrap();
        assert_eq!(d.order_l_subgroup_classes(&d, 5).unwrap().len(), 6);
        let swap = Perm::from_cycles("(1,6)(2,7)(3,8)(4,9)(5,10)", 10).unwrap();
        let mut gens = d.generators().to_vec();
        gens.push(swap);
        let h = FinGroup::new(10, gens);
        // the swap fixes the diagonal and antidiagonal-type lines and pairs the two axes
        assert_eq!(h.order_l_subgroup_classes(&d, 5).unwrap().len(), 4);
    }

    #[test]
    fn words_parse() {
        let g = a5();
        let names = vec!["a".to_string(), "b".to_string()];
        let x = g.eval_word("a b a^-1", &names).unwrap();
        let a = &g.generators()[0];
        assert_eq!(x, a.mul(&g.generators()[1]).mul(&a.inverse()));
        assert!(g.eval_word("c", &names).is_err());
    }
}
