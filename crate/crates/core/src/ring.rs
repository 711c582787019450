//! Exact base rings for matrix entries.
//!
//! A [`BaseRing`] is a cheap, shareable descriptor; elements are plain
//! [`Elem`] payloads and all arithmetic goes through the ring, which keeps
//! payloads canonical (residues in `[0, n)`, matrices as row-major grids of
//! canonical base payloads). [`RingElement`] pairs a payload with its ring for
//! the checked, mismatch-reporting API.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Integers,
    IntegersMod(u64),
    PrimeField(u64),
    SquareMatrix { base: BaseRing, size: usize },
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BaseRing(Arc<RingSpec>);

/// Canonical element payload.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Int(BigInt),
    Residue(u64),
    Matrix(Arc<[Elem]>),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl BaseRing {
    pub fn new(spec: RingSpec) -> Result<Self> {
        match &spec {
            RingSpec::IntegersMod(n) if *n < 2 => return Err(Error::ModulusTooSmall(*n)),
            RingSpec::PrimeField(p) if !is_prime(*p) => return Err(Error::NotPrime(*p)),
            RingSpec::SquareMatrix { size: 0, .. } => return Err(Error::ZeroMatrixSize),
            _ => {}
        }
        Ok(BaseRing(Arc::new(spec)))
    }

    pub fn integers() -> Self {
        BaseRing(Arc::new(RingSpec::Integers))
    }

    pub fn zmod(n: u64) -> Result<Self> {
        Self::new(RingSpec::IntegersMod(n))
    }

    pub fn gf(p: u64) -> Result<Self> {
        Self::new(RingSpec::PrimeField(p))
    }

    pub fn matrices(base: BaseRing, size: usize) -> Result<Self> {
        Self::new(RingSpec::SquareMatrix { base, size })
    }

    /// Parses `Int | Zmod:<n> | GF:<p> | Mat:<k>:<inner>`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let malformed = || Error::MalformedRingSpec(text.to_string());
        if text == "Int" {
            return Ok(Self::integers());
        }
        let (head, rest) = text.split_once(':').ok_or_else(malformed)?;
        match head {
            "Zmod" => Self::zmod(rest.trim().parse().map_err(|_| malformed())?),
            "GF" => Self::gf(rest.trim().parse().map_err(|_| malformed())?),
            "Mat" => {
                let (k, inner) = rest.split_once(':').ok_or_else(malformed)?;
                let k: usize = k.trim().parse().map_err(|_| malformed())?;
                Self::matrices(Self::parse(inner)?, k)
            }
            _ => Err(malformed()),
        }
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0
    }

    pub fn zero(&self) -> Elem {
        match &*self.0 {
            RingSpec::Integers => Elem::Int(BigInt::zero()),
            RingSpec::IntegersMod(_) | RingSpec::PrimeField(_) => Elem::Residue(0),
            RingSpec::SquareMatrix { base, size } => {
                Elem::Matrix(vec![base.zero(); size * size].into())
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    /// Image of an integer under the unique unital map from ℤ.
    pub fn from_i64(&self, v: i64) -> Elem {
        match &*self.0 {
            RingSpec::Integers => Elem::Int(BigInt::from(v)),
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => {
                Elem::Residue(v.rem_euclid(*n as i64) as u64)
            }
            RingSpec::SquareMatrix { base, size } => {
                let mut cells = vec![base.zero(); size * size];
                let d = base.from_i64(v);
                for i in 0..*size {
                    cells[i * size + i] = d.clone();
                }
                Elem::Matrix(cells.into())
            }
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(z) => z.is_zero(),
            Elem::Residue(r) => *r == 0,
            Elem::Matrix(cells) => match &*self.0 {
                RingSpec::SquareMatrix { base, .. } => cells.iter().all(|c| base.is_zero(c)),
                _ => false,
            },
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (RingSpec::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (RingSpec::IntegersMod(n) | RingSpec::PrimeField(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 + *y as u128) % *n as u128) as u64)
            }
            (RingSpec::SquareMatrix { base, .. }, Elem::Matrix(x), Elem::Matrix(y)) => {
                Elem::Matrix(x.iter().zip(y.iter()).map(|(p, q)| base.add(p, q)).collect())
            }
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (&*self.0, a) {
            (RingSpec::Integers, Elem::Int(x)) => Elem::Int(-x),
            (RingSpec::IntegersMod(n) | RingSpec::PrimeField(n), Elem::Residue(x)) => {
                Elem::Residue(if *x == 0 { 0 } else { n - x })
            }
            (RingSpec::SquareMatrix { base, .. }, Elem::Matrix(x)) => {
                Elem::Matrix(x.iter().map(|p| base.neg(p)).collect())
            }
            _ => panic!("payload does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    /// Product `a·b`; for matrix rings the usual row-by-column product.
    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (&*self.0, a, b) {
            (RingSpec::Integers, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (RingSpec::IntegersMod(n) | RingSpec::PrimeField(n), Elem::Residue(x), Elem::Residue(y)) => {
                Elem::Residue(((*x as u128 * *y as u128) % *n as u128) as u64)
            }
            (RingSpec::SquareMatrix { base, size }, Elem::Matrix(x), Elem::Matrix(y)) => {
                let k = *size;
                let mut out = Vec::with_capacity(k * k);
                for i in 0..k {
                    for j in 0..k {
                        let mut acc = base.zero();
                        for l in 0..k {
                            acc = base.add(&acc, &base.mul(&x[i * k + l], &y[l * k + j]));
                        }
                        out.push(acc);
                    }
                }
                Elem::Matrix(out.into())
            }
            _ => panic!("payload does not belong to {self}"),
        }
    }

    /// Whether `a` is a well-formed canonical payload of this ring.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&*self.0, a) {
            (RingSpec::Integers, Elem::Int(_)) => true,
            (RingSpec::IntegersMod(n) | RingSpec::PrimeField(n), Elem::Residue(r)) => r < n,
            (RingSpec::SquareMatrix { base, size }, Elem::Matrix(cells)) => {
                cells.len() == size * size && cells.iter().all(|c| base.contains(c))
            }
            _ => false,
        }
    }

    /// Reduces a payload of the right shape to canonical form.
    pub fn canonicalize(&self, a: &Elem) -> Result<Elem> {
        let bad = || Error::BadElement { ring: self.to_string(), text: format!("{a:?}") };
        match (&*self.0, a) {
            (RingSpec::Integers, Elem::Int(_)) => Ok(a.clone()),
            (RingSpec::IntegersMod(n) | RingSpec::PrimeField(n), Elem::Residue(r)) => {
                Ok(Elem::Residue(r % n))
            }
            (RingSpec::SquareMatrix { base, size }, Elem::Matrix(cells)) if cells.len() == size * size => {
                Ok(Elem::Matrix(
                    cells.iter().map(|c| base.canonicalize(c)).collect::<Result<Vec<_>>>()?.into(),
                ))
            }
            _ => Err(bad()),
        }
    }

    /// Number of elements, `None` for infinite rings (or sizes beyond `u64`).
    pub fn cardinality(&self) -> Option<u64> {
        match &*self.0 {
            RingSpec::Integers => None,
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => Some(*n),
            RingSpec::SquareMatrix { base, size } => {
                base.cardinality()?.checked_pow(u32::try_from(size * size).ok()?)
            }
        }
    }

    /// Enumeration used by [`CountableRingEnum`]: a bijection onto the ring
    /// for finite rings (`None` past the end), an injection from ℕ otherwise.
    pub fn element(&self, index: u64) -> Option<Elem> {
        match &*self.0 {
            RingSpec::Integers => {
                let v = if index % 2 == 1 {
                    BigInt::from(index / 2 + 1)
                } else {
                    -BigInt::from(index / 2)
                };
                Some(Elem::Int(v))
            }
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => {
                (index < *n).then_some(Elem::Residue(index))
            }
            RingSpec::SquareMatrix { base, size } => {
                let cells = size * size;
                let digits: Vec<u64> = match base.cardinality() {
                    Some(q) => {
                        if let Some(total) = self.cardinality() {
                            if index >= total {
                                return None;
                            }
                        }
                        let mut rest = index;
                        let mut d = vec![0u64; cells];
                        for slot in d.iter_mut().rev() {
                            *slot = rest % q;
                            rest /= q;
                        }
                        d
                    }
                    None => unpair_tuple(index, cells),
                };
                let entries = digits.iter().map(|&d| base.element(d)).collect::<Option<Vec<_>>>()?;
                Some(Elem::Matrix(entries.into()))
            }
        }
    }

    /// All elements in enumeration order, for finite rings.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        let n = self.cardinality()?;
        (0..n).map(|i| self.element(i)).collect()
    }

    /// Center computed by enumeration; finite rings only.
    pub fn center(&self) -> Option<Vec<Elem>> {
        let all = self.elements()?;
        Some(
            all.iter()
                .filter(|a| all.iter().all(|b| self.mul(a, b) == self.mul(b, a)))
                .cloned()
                .collect(),
        )
    }

    /// Uniform element for finite rings; integers are drawn from `[-int_bound, int_bound]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, int_bound: i64) -> Elem {
        match &*self.0 {
            RingSpec::Integers => Elem::Int(BigInt::from(rng.gen_range(-int_bound..=int_bound))),
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => Elem::Residue(rng.gen_range(0..*n)),
            RingSpec::SquareMatrix { base, size } => Elem::Matrix(
                (0..size * size).map(|_| base.random(rng, int_bound)).collect::<Vec<_>>().into(),
            ),
        }
    }

    /// Random nonzero element (retries; every shipped ring has one).
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R, int_bound: i64) -> Elem {
        loop {
            let e = self.random(rng, int_bound.max(1));
            if !self.is_zero(&e) {
                return e;
            }
        }
    }

    /// Gate for the simple-ring brute-force checks: fields and full matrix
    /// rings over them.
    pub fn is_simple_hint(&self) -> bool {
        match &*self.0 {
            RingSpec::PrimeField(_) => true,
            RingSpec::SquareMatrix { base, .. } => base.is_simple_hint(),
            _ => false,
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let text = text.trim();
        let bad = || Error::BadElement { ring: self.to_string(), text: text.to_string() };
        match &*self.0 {
            RingSpec::Integers => BigInt::from_str(text).map(Elem::Int).map_err(|_| bad()),
            RingSpec::IntegersMod(n) | RingSpec::PrimeField(n) => {
                let v = BigInt::from_str(text).map_err(|_| bad())?;
                let m = BigInt::from(*n);
                let r = ((v % &m) + &m) % &m;
                Ok(Elem::Residue(r.to_u64().ok_or_else(bad)?))
            }
            RingSpec::SquareMatrix { base, size } => {
                let rows = split_bracketed(text).ok_or_else(bad)?;
                if rows.len() != *size {
                    return Err(bad());
                }
                let mut cells = Vec::with_capacity(size * size);
                for row in rows {
                    let entries = split_bracketed(row).ok_or_else(bad)?;
                    if entries.len() != *size {
                        return Err(bad());
                    }
                    for e in entries {
                        cells.push(base.parse_elem(e)?);
                    }
                }
                Ok(Elem::Matrix(cells.into()))
            }
        }
    }

    /// Canonical text: decimal for integer-like rings, `[[..],[..]]` row-major for matrices.
    pub fn format_elem(&self, a: &Elem) -> String {
        match (&*self.0, a) {
            (_, Elem::Int(x)) => x.to_string(),
            (_, Elem::Residue(r)) => r.to_string(),
            (RingSpec::SquareMatrix { base, size }, Elem::Matrix(cells)) => {
                let rows: Vec<String> = cells
                    .chunks(*size)
                    .map(|row| {
                        let items: Vec<String> = row.iter().map(|c| base.format_elem(c)).collect();
                        format!("[{}]", items.join(","))
                    })
                    .collect();
                format!("[{}]", rows.join(","))
            }
            (_, Elem::Matrix(_)) => format!("{a:?}"),
        }
    }

    pub fn ensure_same(&self, other: &BaseRing) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch { left: self.to_string(), right: other.to_string() })
        }
    }
}

/// Splits `[a,b,[c,d]]` into its top-level comma separated items.
fn split_bracketed(text: &str) -> Option<Vec<&str>> {
    let inner = text.trim().strip_prefix('[')?.strip_suffix(']')?;
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in inner.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                items.push(inner[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
        if depth < 0 {
            return None;
        }
    }
    if depth != 0 {
        return None;
    }
    let last = inner[start..].trim();
    if !last.is_empty() || !items.is_empty() {
        items.push(last);
    }
    Some(items)
}

/// Decodes `index` into `arity` naturals by iterated Cantor unpairing.
fn unpair_tuple(index: u64, arity: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(arity);
    let mut rest = index;
    for _ in 1..arity {
        // w = floor((sqrt(8z+1)-1)/2), t = w(w+1)/2, y = z - t, x = w - y
        let mut w = (((8.0 * rest as f64 + 1.0).sqrt() - 1.0) / 2.0) as u64;
        while w * (w + 1) / 2 > rest {
            w -= 1;
        }
        while (w + 1) * (w + 2) / 2 <= rest {
            w += 1;
        }
        let y = rest - w * (w + 1) / 2;
        out.push(w - y);
        rest = y;
    }
    out.push(rest);
    out
}

impl fmt::Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingSpec::Integers => write!(f, "Int"),
            RingSpec::IntegersMod(n) => write!(f, "Zmod:{n}"),
            RingSpec::PrimeField(p) => write!(f, "GF:{p}"),
            RingSpec::SquareMatrix { base, size } => write!(f, "Mat:{size}:{base}"),
        }
    }
}

impl fmt::Debug for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BaseRing({self})")
    }
}

impl FromStr for BaseRing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// A payload together with its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: BaseRing,
    value: Elem,
}

impl RingElement {
    pub fn new(ring: BaseRing, value: Elem) -> Result<Self> {
        let value = ring.canonicalize(&value)?;
        Ok(RingElement { ring, value })
    }

    pub fn parse(ring: &BaseRing, text: &str) -> Result<Self> {
        Ok(RingElement { value: ring.parse_elem(text)?, ring: ring.clone() })
    }

    pub fn zero(ring: &BaseRing) -> Self {
        RingElement { value: ring.zero(), ring: ring.clone() }
    }

    pub fn one(ring: &BaseRing) -> Self {
        RingElement { value: ring.one(), ring: ring.clone() }
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    pub fn value(&self) -> &Elem {
        &self.value
    }

    pub fn into_value(self) -> Elem {
        self.value
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RingElement { value: self.ring.add(&self.value, &other.value), ring: self.ring.clone() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.ring.ensure_same(&other.ring)?;
        Ok(RingElement { value: self.ring.mul(&self.value, &other.value), ring: self.ring.clone() })
    }

    pub fn neg(&self) -> Self {
        RingElement { value: self.ring.neg(&self.value), ring: self.ring.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_elem(&self.value))
    }
}

/// Enumeration of a countable ring by natural-number index.
#[derive(Clone, Debug)]
pub struct CountableRingEnum {
    ring: BaseRing,
}

impl CountableRingEnum {
    pub fn new(ring: BaseRing) -> Self {
        CountableRingEnum { ring }
    }

    pub fn ring(&self) -> &BaseRing {
        &self.ring
    }

    /// `None` for infinite rings.
    pub fn len(&self) -> Option<u64> {
        self.ring.cardinality()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nth(&self, index: u64) -> Option<Elem> {
        self.ring.element(index)
    }

    pub fn take(&self, count: u64) -> Vec<Elem> {
        (0..count).map_while(|i| self.nth(i)).collect()
    }
}

impl Elem {
    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(x) => Some(x),
            _ => None,
        }
    }

    pub fn is_negative_int(&self) -> bool {
        matches!(self, Elem::Int(x) if x.is_negative())
    }

    pub fn int_one() -> Self {
        Elem::Int(BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::BTreeSet;

    fn mat2gf2() -> BaseRing {
        BaseRing::parse("Mat:2:GF:2").unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(BaseRing::parse("Zmod:6").unwrap().spec(), &RingSpec::IntegersMod(6));
        assert_eq!(BaseRing::parse("GF:4"), Err(Error::NotPrime(4)));
        assert_eq!(BaseRing::parse("Zmod:1"), Err(Error::ModulusTooSmall(1)));
        assert_eq!(BaseRing::parse("Mat:0:GF:2"), Err(Error::ZeroMatrixSize));
        assert!(matches!(BaseRing::parse("Poly:3"), Err(Error::MalformedRingSpec(_))));
        assert!(matches!(BaseRing::parse("Zmod:x"), Err(Error::MalformedRingSpec(_))));
        let m = mat2gf2();
        assert_eq!(m.to_string(), "Mat:2:GF:2");
        // 2^4 matrices, counted by listing them
        let all = m.elements().unwrap();
        assert_eq!(all.len(), 16);
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 16);
    }

    #[test]
    fn op_examples() {
        let z5 = BaseRing::zmod(5).unwrap();
        assert_eq!(z5.add(&Elem::Residue(3), &Elem::Residue(4)), Elem::Residue(2));
        let z6 = BaseRing::zmod(6).unwrap();
        assert_eq!(z6.mul(&Elem::Residue(2), &Elem::Residue(3)), Elem::Residue(0));

        let m = mat2gf2();
        let e12 = m.parse_elem("[[0,1],[0,0]]").unwrap();
        let e21 = m.parse_elem("[[0,0],[1,0]]").unwrap();
        let e11 = m.parse_elem("[[1,0],[0,0]]").unwrap();
        assert_eq!(m.mul(&e12, &e21), e11);
        assert_eq!(m.format_elem(&e12), "[[0,1],[0,0]]");
    }

    #[test]
    fn mismatch_is_reported() {
        let a = RingElement::one(&BaseRing::zmod(5).unwrap());
        let b = RingElement::one(&BaseRing::gf(5).unwrap());
        assert!(matches!(a.add(&b), Err(Error::RingMismatch { .. })));
        assert!(matches!(a.mul(&b), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn residues_parse_canonically() {
        let z5 = BaseRing::zmod(5).unwrap();
        assert_eq!(z5.parse_elem("-1").unwrap(), Elem::Residue(4));
        assert_eq!(z5.parse_elem("13").unwrap(), Elem::Residue(3));
        assert!(z5.parse_elem("x").is_err());
        let int = BaseRing::integers();
        assert_eq!(int.format_elem(&int.parse_elem("-123456789012345678901234").unwrap()), "-123456789012345678901234");
    }

    /// Two-sided ideal generated by `a`, by closure in a finite ring.
    fn ideal_of(ring: &BaseRing, a: &Elem) -> BTreeSet<Elem> {
        let all = ring.elements().unwrap();
        let mut ideal: BTreeSet<Elem> = BTreeSet::new();
        for x in &all {
            for y in &all {
                ideal.insert(ring.mul(&ring.mul(x, a), y));
            }
        }
        loop {
            let items: Vec<Elem> = ideal.iter().cloned().collect();
            let before = ideal.len();
            for p in &items {
                for q in &items {
                    ideal.insert(ring.add(p, q));
                }
            }
            if ideal.len() == before {
                return ideal;
            }
        }
    }

    fn simple_by_enumeration(ring: &BaseRing) -> bool {
        let total = ring.cardinality().unwrap() as usize;
        ring.elements()
            .unwrap()
            .iter()
            .filter(|a| !ring.is_zero(a))
            .all(|a| ideal_of(ring, a).len() == total)
    }

    #[test]
    fn simple_hint_matches_ideal_enumeration() {
        let gf7 = BaseRing::gf(7).unwrap();
        assert!(gf7.is_simple_hint());
        assert!(simple_by_enumeration(&gf7));

        let z6 = BaseRing::zmod(6).unwrap();
        assert!(!z6.is_simple_hint());
        let evens: BTreeSet<Elem> = [0, 2, 4].into_iter().map(Elem::Residue).collect();
        assert_eq!(ideal_of(&z6, &Elem::Residue(2)), evens);

        let m = mat2gf2();
        assert!(m.is_simple_hint());
        assert!(simple_by_enumeration(&m));
        assert!(!BaseRing::integers().is_simple_hint());
    }

    fn check_axioms_exhaustively(ring: &BaseRing) {
        let all = ring.elements().unwrap();
        let zero = ring.zero();
        let one = ring.one();
        for a in &all {
            assert_eq!(ring.add(a, &zero), *a);
            assert_eq!(ring.mul(a, &one), *a);
            assert_eq!(ring.mul(&one, a), *a);
            assert!(ring.is_zero(&ring.add(a, &ring.neg(a))));
            assert!(ring.is_zero(&ring.mul(a, &zero)));
            for b in &all {
                assert_eq!(ring.add(a, b), ring.add(b, a));
                for c in &all {
                    assert_eq!(ring.add(&ring.add(a, b), c), ring.add(a, &ring.add(b, c)));
                    assert_eq!(ring.mul(&ring.mul(a, b), c), ring.mul(a, &ring.mul(b, c)));
                    assert_eq!(ring.mul(a, &ring.add(b, c)), ring.add(&ring.mul(a, b), &ring.mul(a, c)));
                    assert_eq!(ring.mul(&ring.add(a, b), c), ring.add(&ring.mul(a, c), &ring.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn exhaustive_axioms_small_rings() {
        for spec in ["Zmod:2", "Zmod:6", "Zmod:12", "GF:5", "GF:7", "Mat:2:GF:2", "Zmod:36"] {
            check_axioms_exhaustively(&BaseRing::parse(spec).unwrap());
        }
    }

    #[test]
    fn randomized_integer_axioms() {
        let z = BaseRing::integers();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let [a, b, c] = [0; 3].map(|_| z.random(&mut rng, 1_000_000));
            assert_eq!(z.add(&a, &b), z.add(&b, &a));
            assert_eq!(z.mul(&z.mul(&a, &b), &c), z.mul(&a, &z.mul(&b, &c)));
            assert_eq!(z.mul(&a, &z.add(&b, &c)), z.add(&z.mul(&a, &b), &z.mul(&a, &c)));
            assert!(z.is_zero(&z.sub(&a, &a)));
        }
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let z6 = BaseRing::zmod(6).unwrap();
        let once = z6.canonicalize(&Elem::Residue(17)).unwrap();
        assert_eq!(once, Elem::Residue(5));
        assert_eq!(z6.canonicalize(&once).unwrap(), once);
        let m = BaseRing::parse("Mat:2:Zmod:3").unwrap();
        let raw = Elem::Matrix(vec![Elem::Residue(4), Elem::Residue(5), Elem::Residue(0), Elem::Residue(9)].into());
        let c = m.canonicalize(&raw).unwrap();
        assert!(m.contains(&c));
        assert_eq!(m.canonicalize(&c).unwrap(), c);
        assert!(z6.canonicalize(&Elem::int_one()).is_err());
    }

    #[test]
    fn enumeration_lists_each_element_once() {
        for spec in ["Zmod:6", "Mat:2:GF:2", "Mat:2:Zmod:3"] {
            let ring = BaseRing::parse(spec).unwrap();
            let e = CountableRingEnum::new(ring.clone());
            let n = e.len().unwrap();
            let listed: BTreeSet<Elem> = (0..n).map(|i| e.nth(i).unwrap()).collect();
            assert_eq!(listed.len() as u64, n);
            assert!(e.nth(n).is_none());
        }
        // injective on a prefix for infinite rings
        for spec in ["Int", "Mat:2:Int"] {
            let e = CountableRingEnum::new(BaseRing::parse(spec).unwrap());
            assert_eq!(e.len(), None);
            let listed: BTreeSet<Elem> = e.take(500).into_iter().collect();
            assert_eq!(listed.len(), 500);
        }
        let ints = CountableRingEnum::new(BaseRing::integers()).take(5);
        let text: Vec<String> = ints.iter().map(|x| x.as_bigint().unwrap().to_string()).collect();
        assert_eq!(text, ["0", "1", "-1", "2", "-2"]);
    }

    #[test]
    fn center_of_matrix_ring() {
        let m = mat2gf2();
        let center = m.center().unwrap();
        assert_eq!(center, vec![m.zero(), m.one()]);
        assert_eq!(BaseRing::zmod(6).unwrap().center().unwrap().len(), 6);
    }

    #[test]
    fn matrix_text_round_trip() {
        let m = BaseRing::parse("Mat:2:Mat:2:GF:2").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..20 {
            let a = m.random(&mut rng, 0);
            assert_eq!(m.parse_elem(&m.format_elem(&a)).unwrap(), a);
        }
    }
}
