use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::ring::BaseRing;
use crate::rowfin::{FinVec, RowFiniteMap};
use crate::words::RingWord;

/// Generator bindings over one ring. Evaluated subwords are cached, so
/// repeated subtrees share one memoized map.
pub struct WordEnv {
    ring: BaseRing,
    bindings: BTreeMap<String, RowFiniteMap>,
    cache: Mutex<HashMap<RingWord, RowFiniteMap>>,
}

impl WordEnv {
    pub fn new(ring: &BaseRing) -> Self {
        WordEnv { ring: ring.clone(), bindings: BTreeMap::new(), cache: Mutex::new(HashMap::new()) }
    }

    pub fn from_bindings(ring: &BaseRing, bindings: impl IntoIterator<Item = (String, RowFiniteMap)>) -> Result<Self> {
        let mut env = Self::new(ring);
        for (name, f) in bindings {
            env.bind(name, f)?;
        }
        Ok(env)
    }

    pub fn bind(&mut self, name: impl Into<String>, f: RowFiniteMap) -> Result<()> {
        self.ring.ensure_same(f.ring())?;
        self.bindings.insert(name.into(), f);
        self.cache.get_mut().expect("cache poisoned").clear();
        Ok(())
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn get(&self, name: &str) -> Option<&RowFiniteMap> {
        self.bindings.get(name)
    }

    /// Bound names in sorted order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.bindings.keys().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    fn lookup(&self, name: &str) -> Result<&RowFiniteMap> {
        self.bindings.get(name).ok_or_else(|| Error::UnboundGenerator(name.to_string()))
    }

    /// Lazy map denoted by `w`.
    pub fn eval(&self, w: &RingWord) -> Result<RowFiniteMap> {
        if let Some(f) = self.cache.lock().expect("cache poisoned").get(w) {
            return Ok(f.clone());
        }
        let f = match w {
            RingWord::Gen(n) => self.lookup(n)?.clone(),
            RingWord::Zero => RowFiniteMap::zero(&self.ring),
            RingWord::One => RowFiniteMap::identity(&self.ring),
            RingWord::NegOne => RowFiniteMap::identity(&self.ring).neg(),
            RingWord::Sum(l, r) => self.eval(l)?.add(&self.eval(r)?)?,
            RingWord::Prod(l, r) => self.eval(l)?.compose(&self.eval(r)?)?,
        };
        self.cache.lock().expect("cache poisoned").insert(w.clone(), f.clone());
        Ok(f)
    }

    /// `x·w` by recursion on the tree: `x(p+q) = xp + xq`, `x(pq) = (xp)q`.
    pub fn apply(&self, x: &FinVec, w: &RingWord) -> Result<FinVec> {
        self.ring.ensure_same(x.ring())?;
        Ok(match w {
            RingWord::Gen(n) => x.apply_unchecked(self.lookup(n)?),
            RingWord::Zero => FinVec::zero(&self.ring),
            RingWord::One => x.clone(),
            RingWord::NegOne => x.neg(),
            RingWord::Sum(l, r) => self.apply(x, l)?.add(&self.apply(x, r)?)?,
            RingWord::Prod(l, r) => self.apply(&self.apply(x, l)?, r)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rowfin::Window;

    #[test]
    fn eval_examples() {
        let r = BaseRing::integers();
        let mut env = WordEnv::new(&r);
        env.bind("a", RowFiniteMap::matrix_unit(&r, 1, 2)).unwrap();
        env.bind("b", RowFiniteMap::matrix_unit(&r, 2, 3)).unwrap();
        let w = Window::new(10);
        assert!(env.eval(&RingWord::One).unwrap().equal_on_window(&RowFiniteMap::identity(&r), w));
        let ab = env.eval(&"(a * b)".parse().unwrap()).unwrap();
        assert!(ab.equal_on_window(&RowFiniteMap::matrix_unit(&r, 1, 3), w));
        assert_eq!(env.eval(&RingWord::gen("c")).unwrap_err(), Error::UnboundGenerator("c".into()));
        assert!(env.bind("z", RowFiniteMap::identity(&BaseRing::gf(2).unwrap())).is_err());
    }

    #[test]
    fn vector_recursion_matches_map_evaluation() {
        let r = BaseRing::zmod(6).unwrap();
        let mut env = WordEnv::new(&r);
        env.bind("s", RowFiniteMap::shift(&r)).unwrap();
        env.bind("d", RowFiniteMap::diagonal(&r, "d", |a| BaseRing::zmod(6).unwrap().from_i64(a as i64))).unwrap();
        let w: RingWord = "(((s + d) * (-1 + s)) * (d * (s + 1)))".parse().unwrap();
        let f = env.eval(&w).unwrap();
        for a in 1..=15 {
            let x = FinVec::from_entries(&r, [(a, r.from_i64(5)), (a + 2, r.from_i64(1))]);
            assert_eq!(env.apply(&x, &w).unwrap(), x.apply(&f).unwrap());
        }
    }

    #[test]
    fn repeated_subwords_share_a_map() {
        let r = BaseRing::integers();
        let mut env = WordEnv::new(&r);
        let s = RowFiniteMap::shift(&r);
        env.bind("s", s.clone()).unwrap();
        let sq: RingWord = "(s * s)".parse().unwrap();
        let w = RingWord::sum(sq.clone(), sq.clone());
        env.eval(&w).unwrap().row(1);
        // both summands hit one cached map, which reads row 1 of s once
        assert_eq!(s.evaluated_rows(), 2);
    }
}
