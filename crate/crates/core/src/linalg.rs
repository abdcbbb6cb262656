//! Sparse incremental row reduction over the rationals and over a prime field.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::coef::Q;

pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn inv(&self) -> Self;
}

impl Field for Q {
    fn zero() -> Self {
        <Q as Zero>::zero()
    }
    fn one() -> Self {
        <Q as One>::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// The Mersenne prime `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Fp(pub u64);

impl Fp {
    pub fn from_q(c: &Q) -> Option<Fp> {
        let p = num_bigint::BigInt::from(PRIME);
        let n = c.numer().mod_floor(&p).to_u64()?;
        let d = c.denom().mod_floor(&p).to_u64()?;
        if d == 0 {
            return None;
        }
        Some(Fp(n).mul(&Fp(d).inv()))
    }

    pub fn from_i64(v: i64) -> Fp {
        let m = v.unsigned_abs() % PRIME;
        if v < 0 && m != 0 {
            Fp(PRIME - m)
        } else {
            Fp(m)
        }
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        let s = self.0 + o.0;
        Fp(if s >= PRIME { s - PRIME } else { s })
    }
    fn sub(&self, o: &Self) -> Self {
        Fp(if self.0 >= o.0 { self.0 - o.0 } else { self.0 + PRIME - o.0 })
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % PRIME as u128) as u64)
    }
    fn inv(&self) -> Self {
        assert!(self.0 != 0, "inverse of zero");
        let mut base = *self;
        let mut e = PRIME - 2;
        let mut acc = Fp(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

pub type SparseVec<F> = Vec<(usize, F)>;

/// Row echelon form built one row at a time. Every stored row has its pivot
/// as first entry with coefficient 1 and is free of the pivots stored
/// before it.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: FxHashMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, rows: Vec::new(), pivot_row: FxHashMap::default() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut acc: BTreeMap<usize, F> = BTreeMap::new();
        for (c, x) in v {
            if x.is_zero() {
                continue;
            }
            let e = acc.entry(*c).or_insert_with(F::zero);
            *e = e.add(x);
            if e.is_zero() {
                acc.remove(c);
            }
        }
        let mut cursor = 0usize;
        loop {
            let next = acc.range(cursor..).find(|(c, _)| self.pivot_row.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((col, factor)) = next else { break };
            let row = &self.rows[self.pivot_row[&col]];
            for (c, x) in row {
                let e = acc.entry(*c).or_insert_with(F::zero);
                *e = e.sub(&factor.mul(x));
                if e.is_zero() {
                    acc.remove(c);
                }
            }
            cursor = col + 1;
        }
        acc.into_iter().collect()
    }

    /// Adds a row; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv();
        let r: SparseVec<F> = r.into_iter().map(|(c, x)| (c, x.mul(&inv))).collect();
        self.pivot_row.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        true
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Fully reduced rows (each free of all other pivots).
    pub fn reduced_rows(&self) -> Vec<SparseVec<F>> {
        let mut done: Vec<SparseVec<F>> = vec![Vec::new(); self.rows.len()];
        let mut later = Echelon::<F>::new(self.ncols);
        for i in (0..self.rows.len()).rev() {
            let row = &self.rows[i];
            let pivot = row[0].0;
            let tail: SparseVec<F> = row[1..].to_vec();
            let mut reduced = later.reduce(&tail);
            reduced.insert(0, (pivot, F::one()));
            reduced.sort_by_key(|e| e.0);
            later.pivot_row.insert(pivot, later.rows.len());
            later.rows.push(reduced.clone());
            done[i] = reduced;
        }
        done
    }

    /// Basis of `{x : row·x = 0 for every stored row}`.
    pub fn kernel(&self) -> Vec<SparseVec<F>> {
        let rows = self.reduced_rows();
        let pivots: FxHashMap<usize, usize> = rows.iter().enumerate().map(|(i, r)| (r[0].0, i)).collect();
        let mut by_free: FxHashMap<usize, SparseVec<F>> = FxHashMap::default();
        for r in &rows {
            let p = r[0].0;
            for (c, x) in &r[1..] {
                by_free.entry(*c).or_default().push((p, F::zero().sub(x)));
            }
        }
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if pivots.contains_key(&f) {
                continue;
            }
            let mut v = by_free.remove(&f).unwrap_or_default();
            v.push((f, F::one()));
            v.sort_by_key(|e| e.0);
            out.push(v);
        }
        out
    }
}

pub fn rank<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> usize {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

pub fn kernel<F: Field>(rows: &[SparseVec<F>], ncols: usize) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

/// Solves `Σ_j x_j·columns[j] = rhs`. Returns a particular solution (free
/// variables set to zero) and the nullity, or `None` if inconsistent.
pub fn solve<F: Field>(columns: &[SparseVec<F>], rhs: &SparseVec<F>, nrows: usize) -> Option<(Vec<F>, usize)> {
    let n = columns.len();
    let mut aug: Vec<SparseVec<F>> = columns.to_vec();
    aug.push(rhs.clone());
    let rows = transpose(&aug, nrows);
    let mut ech = Echelon::new(n + 1);
    for r in &rows {
        ech.insert(r);
    }
    let reduced = ech.reduced_rows();
    let mut x = vec![F::zero(); n];
    let mut rank = 0;
    for r in &reduced {
        let p = r[0].0;
        if p == n {
            return None;
        }
        rank += 1;
        if let Some((_, v)) = r.iter().find(|e| e.0 == n) {
            x[p] = v.clone();
        }
    }
    Some((x, n - rank))
}

/// Transposes a list of sparse columns into sparse rows.
pub fn transpose<F: Field>(cols: &[SparseVec<F>], nrows: usize) -> Vec<SparseVec<F>> {
    let mut rows: Vec<SparseVec<F>> = vec![Vec::new(); nrows];
    for (j, col) in cols.iter().enumerate() {
        for (i, x) in col {
            rows[*i].push((j, x.clone()));
        }
    }
    rows
}

pub fn to_mod_p(v: &SparseVec<Q>) -> SparseVec<Fp> {
    v.iter()
        .filter_map(|(c, x)| {
            let y = Fp::from_q(x).expect("denominator divisible by the modulus");
            (!y.is_zero()).then_some((*c, y))
        })
        .collect()
}

/// Clears denominators and divides by the content, giving a primitive integral vector.
pub fn primitive(v: &SparseVec<Q>) -> SparseVec<Q> {
    if v.is_empty() {
        return Vec::new();
    }
    let mut l = num_bigint::BigInt::one();
    for (_, x) in v {
        l = l.lcm(x.denom());
    }
    let ints: Vec<num_bigint::BigInt> = v.iter().map(|(_, x)| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = num_bigint::BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    if v[0].1.is_negative() {
        g = -g;
    }
    v.iter().zip(ints).map(|((c, _), i)| (*c, Q::from_integer(i / &g))).collect()
}

/// String-keyed coordinate interner for assembling sparse vectors.
#[derive(Default, Debug, Clone)]
pub struct Interner<K: std::hash::Hash + Eq + Clone> {
    index: FxHashMap<K, usize>,
    keys: Vec<K>,
}

impl<K: std::hash::Hash + Eq + Clone> Interner<K> {
    pub fn new() -> Self {
        Interner { index: FxHashMap::default(), keys: Vec::new() }
    }

    pub fn id(&mut self, k: &K) -> usize {
        if let Some(&i) = self.index.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.index.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coef::q;

    fn row(v: &[i64]) -> SparseVec<Q> {
        v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(i, x)| (i, q(*x))).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(&rows, 3), 2);
        let k = kernel(&rows, 3);
        assert_eq!(k.len(), 1);
        let x: Vec<Q> = (0..3).map(|i| k[0].iter().find(|e| e.0 == i).map(|e| e.1.clone()).unwrap_or_default()).collect();
        for r in &rows {
            let dot: Q = r.iter().map(|(c, a)| a * &x[*c]).sum();
            assert!(Zero::is_zero(&dot));
        }
    }

    #[test]
    fn modular_rank_matches() {
        let rows = vec![row(&[1, 2, 3, 4]), row(&[2, 0, 1, 5]), row(&[3, 2, 4, 9])];
        let modp: Vec<_> = rows.iter().map(to_mod_p).collect();
        assert_eq!(rank(&rows, 4), 2);
        assert_eq!(rank(&modp, 4), 2);
        assert_eq!(Fp(3).mul(&Fp(3).inv()), Fp(1));
        assert_eq!(Fp::from_i64(-1).add(&Fp(1)), Fp(0));
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![(0, crate::coef::qf(-1, 2)), (3, crate::coef::qf(3, 4))];
        assert_eq!(primitive(&v), vec![(0, q(2)), (3, q(-3))]);
    }
}
