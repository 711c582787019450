//! Exhaustive enumeration of the subrings of `M_n(GF(p))` that contain the
//! diagonal matrices, each compared with `E(ρ)` for
//! `ρ = {(α, β) : e_α S e_β ≠ 0}`.

use std::collections::{BTreeSet, VecDeque};

use crate::constructions::check::Check;
use crate::error::{Error, Result};
use crate::ring::is_prime;

/// Largest matrix ring, counted in elements, that is enumerated.
pub const SIMPLE_FULL_LIMIT: u64 = 1 << 16;

type Mat = Vec<u64>;
type Relation = BTreeSet<(u64, u64)>;

#[derive(Clone, Debug)]
pub struct SimpleFullReport {
    pub n: u64,
    pub p: u64,
    pub count: usize,
    /// One relation per subring, ordered by size then lexicographically.
    pub preorders: Vec<Relation>,
    pub checks: Vec<Check>,
}

/// Row-reduced basis of an `F_p`-subspace of `M_n(F_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Span {
    basis: Vec<Mat>,
}

struct Field {
    n: usize,
    p: u64,
}

impl Field {
    fn inv(&self, a: u64) -> u64 {
        // Fermat
        let (mut base, mut e, mut acc) = (a % self.p, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        acc
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let mut c = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] = (c[i * n + j] + x * b[k * n + j]) % self.p;
                }
            }
        }
        c
    }

    /// Reduces `v` against the basis; zero means `v` lies in the span.
    fn reduce(&self, span: &Span, v: &Mat) -> Mat {
        let mut v = v.clone();
        for b in &span.basis {
            let pivot = b.iter().position(|&x| x != 0).expect("nonzero basis vector");
            let c = v[pivot];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = (*x + self.p - c * y % self.p) % self.p;
                }
            }
        }
        v
    }

    /// Adds `v` keeping the basis fully reduced with unit pivots; false when
    /// `v` was already in the span.
    fn insert(&self, span: &mut Span, v: &Mat) -> bool {
        let mut r = self.reduce(span, v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.inv(r[pivot]);
        r.iter_mut().for_each(|x| *x = *x * inv % self.p);
        for b in span.basis.iter_mut() {
            let c = b[pivot];
            if c != 0 {
                for (x, y) in b.iter_mut().zip(&r) {
                    *x = (*x + self.p - c * y % self.p) % self.p;
                }
            }
        }
        span.basis.push(r);
        span.basis.sort_by_key(|b| b.iter().position(|&x| x != 0));
        true
    }

    /// Smallest subring containing the span.
    fn close(&self, mut span: Span) -> Span {
        loop {
            let mut grew = false;
            let basis = span.basis.clone();
            for a in &basis {
                for b in &basis {
                    grew |= self.insert(&mut span, &self.mul(a, b));
                }
            }
            if !grew {
                return span;
            }
        }
    }

    fn unit(&self, i: usize, j: usize) -> Mat {
        let mut m = vec![0; self.n * self.n];
        m[i * self.n + j] = 1;
        m
    }

    fn all(&self) -> impl Iterator<Item = Mat> + '_ {
        let len = self.n * self.n;
        let total = self.p.pow(len as u32);
        (0..total).map(move |mut code| {
            let mut m = vec![0; len];
            for x in m.iter_mut() {
                *x = code % self.p;
                code /= self.p;
            }
            m
        })
    }
}

fn is_preorder(n: u64, rho: &Relation) -> bool {
    let reflexive = (1..=n).all(|a| rho.contains(&(a, a)));
    let transitive = rho.iter().all(|&(a, b)| rho.iter().filter(|&&(c, _)| c == b).all(|&(_, d)| rho.contains(&(a, d))));
    reflexive && transitive
}

fn fmt_relation(rho: &Relation) -> String {
    let pairs: Vec<String> = rho.iter().map(|(a, b)| format!("({a},{b})")).collect();
    format!("{{{}}}", pairs.join(","))
}

pub fn simple_full_check(n: u64, p: u64) -> Result<SimpleFullReport> {
    if n == 0 {
        return Err(Error::ZeroMatrixSize);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let size = (n * n).try_into().ok().and_then(|e| p.checked_pow(e)).filter(|&s| s <= SIMPLE_FULL_LIMIT);
    if size.is_none() {
        return Err(Error::BoundExceeded(format!("{p}^{} exceeds {SIMPLE_FULL_LIMIT} matrices", n * n)));
    }
    let k = Field { n: n as usize, p };
    let mut diag = Span { basis: Vec::new() };
    for i in 0..k.n {
        k.insert(&mut diag, &k.unit(i, i));
    }
    let start = k.close(diag);
    let mut seen: BTreeSet<Span> = [start.clone()].into();
    let mut queue: VecDeque<Span> = [start].into();
    while let Some(s) = queue.pop_front() {
        let reps: BTreeSet<Mat> = k.all().map(|m| k.reduce(&s, &m)).filter(|m| m.iter().any(|&x| x != 0)).collect();
        for m in reps {
            let mut bigger = s.clone();
            k.insert(&mut bigger, &m);
            let closed = k.close(bigger);
            if seen.insert(closed.clone()) {
                queue.push_back(closed);
            }
        }
    }
    let mut preorders = Vec::new();
    let mut checks = Vec::new();
    for s in &seen {
        let (rho, c) = verify_subring(n, p, &s.basis);
        checks.extend(c);
        preorders.push(rho);
    }
    preorders.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(SimpleFullReport { n, p, count: seen.len(), preorders, checks })
}

/// Checks a claimed diagonal-containing subring given by spanning matrices
/// (row-major, entries in `0..p`): `D ⊆ S`, closure under products,
/// `S = E(ρ)` and `ρ` a preorder. Returns `ρ` with the checks.
pub fn verify_subring(n: u64, p: u64, spanning: &[Vec<u64>]) -> (BTreeSet<(u64, u64)>, Vec<Check>) {
    let k = Field { n: n as usize, p };
    let mut s = Span { basis: Vec::new() };
    for m in spanning {
        k.insert(&mut s, m);
    }
    let in_span = |m: &Mat| k.reduce(&s, m).iter().all(|&x| x == 0);
    // with D ⊆ S, e_α S e_β ≠ 0 exactly when e_αβ ∈ S
    let rho: Relation = (0..k.n)
        .flat_map(|a| (0..k.n).map(move |b| (a, b)))
        .filter(|&(a, b)| s.basis.iter().any(|m| m[a * k.n + b] != 0))
        .map(|(a, b)| (a as u64 + 1, b as u64 + 1))
        .collect();
    let label = fmt_relation(&rho);
    let mut checks = Vec::new();
    let name = format!("{label}: D ⊆ S");
    checks.push(match (0..k.n).find(|&i| !in_span(&k.unit(i, i))) {
        None => Check::pass(name),
        Some(i) => Check::fail(name, format!("e({0},{0})", i + 1), "in S", "missing"),
    });
    let escape = s.basis.iter().flat_map(|a| s.basis.iter().map(move |b| (a, b))).map(|(a, b)| k.mul(a, b)).find(|m| !in_span(m));
    let name = format!("{label}: S closed under products");
    checks.push(match escape {
        None => Check::pass(name),
        Some(m) => Check::fail(name, "basis product", "in S", format!("{m:?}")),
    });
    let name = format!("{label}: S = E(ρ)");
    let units_inside = rho.iter().all(|&(a, b)| in_span(&k.unit(a as usize - 1, b as usize - 1)));
    checks.push(if units_inside && s.basis.len() == rho.len() {
        Check::pass(name)
    } else {
        Check::fail(name, "dimension", rho.len().to_string(), s.basis.len().to_string())
    });
    let name = format!("{label}: ρ is a preorder");
    checks.push(if is_preorder(n, &rho) {
        Check::pass(name)
    } else {
        Check::fail(name, "reflexive and transitive", "yes", "no")
    });
    (rho, checks)
}

/// Span of `D` and `e₁₂ + e₂₁`, not closed under products for `n ≥ 2`;
/// the zero span for `n = 1`.
pub fn unclosed_span(n: u64) -> Vec<Vec<u64>> {
    let k = Field { n: n as usize, p: 2 };
    if n < 2 {
        return vec![vec![0]];
    }
    let mut spanning: Vec<Mat> = (0..k.n).map(|i| k.unit(i, i)).collect();
    let swap = k.unit(0, 1).iter().zip(k.unit(1, 0)).map(|(a, b)| a + b).collect();
    spanning.push(swap);
    spanning
}

/// Preorders on `{1..n}` by brute force over all relations.
pub fn count_preorders(n: u64) -> usize {
    let cells: Vec<(u64, u64)> = (1..=n).flat_map(|a| (1..=n).map(move |b| (a, b))).filter(|(a, b)| a != b).collect();
    (0u64..1 << cells.len())
        .filter(|mask| {
            let mut rho: Relation = (1..=n).map(|a| (a, a)).collect();
            rho.extend(cells.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c));
            is_preorder(n, &rho)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::check::all_passed;

    #[test]
    fn small_counts() {
        let r = simple_full_check(1, 2).unwrap();
        assert_eq!(r.count, 1);
        let r = simple_full_check(2, 2).unwrap();
        assert_eq!(r.count, 4);
        assert!(all_passed(&r.checks));
        let expected: Vec<Relation> = vec![
            [(1, 1), (2, 2)].into(),
            [(1, 1), (1, 2), (2, 2)].into(),
            [(1, 1), (2, 1), (2, 2)].into(),
            [(1, 1), (1, 2), (2, 1), (2, 2)].into(),
        ];
        assert_eq!(r.preorders, expected);
        assert_eq!(simple_full_check(2, 3).unwrap().count, 4);
    }

    #[test]
    fn three_by_three_matches_preorder_count() {
        let r = simple_full_check(3, 2).unwrap();
        assert_eq!(count_preorders(3), 29);
        assert_eq!(r.count, 29);
        assert!(all_passed(&r.checks));
    }

    #[test]
    fn unclosed_span_is_rejected() {
        let (_, checks) = verify_subring(2, 2, &unclosed_span(2));
        assert!(checks.iter().any(|c| c.name.ends_with("S closed under products") && c.failed()));
        let (_, checks) = verify_subring(1, 2, &unclosed_span(1));
        assert!(checks[0].failed());
    }

    #[test]
    fn infeasible_and_bad_inputs() {
        assert!(matches!(simple_full_check(5, 2), Err(Error::BoundExceeded(_))));
        assert!(matches!(simple_full_check(2, 4), Err(Error::NotPrime(4))));
        assert!(matches!(simple_full_check(0, 2), Err(Error::ZeroMatrixSize)));
    }
}
