//! The bijection ℤ × ℕ⁺ → ℕ⁺ used to view the index set as `ℤ × Γ`.

use crate::Index;

/// Folds ℤ onto ℕ⁺ as 0, −1, 1, −2, 2, … ↦ 1, 2, 3, 4, 5, …
pub fn zfold(i: i64) -> u64 {
    if i >= 0 {
        2 * i as u64 + 1
    } else {
        2 * i.unsigned_abs()
    }
}

pub fn zunfold(n: u64) -> i64 {
    assert!(n >= 1, "zunfold is defined on positive integers");
    if n % 2 == 1 {
        ((n - 1) / 2) as i64
    } else {
        -((n / 2) as i64)
    }
}

/// Diagonal pairing ℕ⁺ × ℕ⁺ → ℕ⁺.
pub fn cantor(a: u64, b: u64) -> u64 {
    let d = a + b - 1;
    d * (d - 1) / 2 + b
}

pub fn uncantor(n: u64) -> (u64, u64) {
    assert!(n >= 1, "uncantor is defined on positive integers");
    // largest d with d(d-1)/2 < n
    let mut d = ((2.0 * n as f64).sqrt()) as u64;
    while d > 1 && d * (d - 1) / 2 >= n {
        d -= 1;
    }
    while (d + 1) * d / 2 < n {
        d += 1;
    }
    let b = n - d * (d - 1) / 2;
    (d + 1 - b, b)
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ZPairing;

impl ZPairing {
    pub fn encode(&self, i: i64, gamma: u64) -> Index {
        assert!(gamma >= 1, "Γ = ℕ⁺");
        cantor(zfold(i), gamma)
    }

    pub fn decode(&self, k: Index) -> (i64, u64) {
        let (a, b) = uncantor(k);
        (zunfold(a), b)
    }
}

pub fn z_pairing() -> ZPairing {
    ZPairing
}
