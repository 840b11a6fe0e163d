//! Independent reference implementations shared by the integration tests.
//! Everything here deliberately avoids the library's sieve and counting
//! code paths.

/// Largest prime factor by plain trial division; 1 for n = 1.
pub fn naive_lpf(n: u64) -> u64 {
    let mut best = 1;
    let mut n = n;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            best = d;
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        best = n;
    }
    best
}

/// Fenwick tree over prime-factor values, for offline smooth counting.
pub struct Fenwick {
    tree: Vec<u64>,
}

impl Fenwick {
    pub fn new(size: usize) -> Fenwick {
        Fenwick {
            tree: vec![0; size + 1],
        }
    }

    pub fn add(&mut self, mut idx: usize) {
        idx += 1;
        while idx < self.tree.len() {
            self.tree[idx] += 1;
            idx += idx & idx.wrapping_neg();
        }
    }

    /// Count of added indices ≤ idx.
    pub fn prefix(&self, mut idx: usize) -> u64 {
        idx += 1;
        let mut sum = 0;
        let mut i = idx.min(self.tree.len() - 1);
        while i > 0 {
            sum += self.tree[i];
            i -= i & i.wrapping_neg();
        }
        sum
    }
}

/// Integer square root by search from a float seed.
pub fn naive_isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}
