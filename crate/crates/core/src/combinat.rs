//! Small integer combinatorics: Möbius function, necklace and Witt counts,
//! Lyndon word generation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1);
    let mut n = n;
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| num_integer::gcd(*k, n) == 1).count() as u64
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Number of necklaces of length `n` over `k` letters.
pub fn necklace_count(k: u64, n: u64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    let total: BigInt = divisors(n)
        .into_iter()
        .map(|d| BigInt::from(euler_phi(d)) * BigInt::from(k).pow((n / d) as u32))
        .sum();
    total / BigInt::from(n)
}

/// Witt's formula: dimension of the degree-`n` part of the free Lie algebra on `k` generators.
pub fn witt_dimension(k: u64, n: u64) -> BigInt {
    assert!(n >= 1);
    let total: BigInt = divisors(n)
        .into_iter()
        .map(|d| BigInt::from(mobius(d)) * BigInt::from(k).pow((n / d) as u32))
        .sum();
    total / BigInt::from(n)
}

/// All Lyndon words of length exactly `n` over `k` letters, in lexicographic
/// order (Duval's generation algorithm).
pub fn lyndon_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k == 0 || n == 0 {
        return out;
    }
    let mut w: Vec<u8> = vec![0];
    loop {
        if w.len() == n {
            out.push(w.clone());
        }
        // Extend periodically to length n, then increment the last non-maximal letter.
        let m = w.len();
        while w.len() < n {
            let c = w[w.len() - m];
            w.push(c);
        }
        while let Some(&last) = w.last() {
            if last == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    out
}

/// All words of length `n` over `k` letters in lexicographic order.
pub fn all_words(k: u8, n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * k as usize);
        for w in &out {
            for l in 0..k {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Canonical representatives (least rotations) of all necklaces of length `n`
/// over `k` letters, sorted.
pub fn necklaces(k: u8, n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for d in divisors(n as u64) {
        for l in lyndon_words(k, d as usize) {
            let reps = n / d as usize;
            out.push(l.repeat(reps));
        }
    }
    out.sort();
    out
}

/// Partitions of `n` into at most `max_parts` parts, each part at most `max_part`.
pub fn partitions(n: u32, max_parts: usize) -> Vec<Vec<u32>> {
    fn rec(n: u32, max_part: u32, parts_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=max_part.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, max_parts, &mut Vec::new(), &mut out);
    out
}
