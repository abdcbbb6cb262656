//! Cyclic words (necklaces) and the cyclic quotient of the tensor algebra.

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::coef::{q, Q};
use crate::combinat::necklaces;
use crate::tensor::TensorPoly;

#[derive(Clone, Debug)]
pub struct CyclicPoly {
    alphabet: Alphabet,
    terms: FxHashMap<Word, Q>,
}

impl PartialEq for CyclicPoly {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl Eq for CyclicPoly {}

impl CyclicPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        CyclicPoly { alphabet, terms: FxHashMap::default() }
    }

    /// The class `|w|` of a single word.
    pub fn word(alphabet: Alphabet, letters: &[Letter]) -> Self {
        let mut c = Self::zero(alphabet);
        c.add_word(&Word::from_slice(letters), q(1));
        c
    }

    pub fn empty_word(alphabet: Alphabet) -> Self {
        Self::word(alphabet, &[])
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn coef(&self, w: &Word) -> Q {
        self.terms.get(&w.canonical_rotation()).cloned().unwrap_or_else(Q::zero)
    }

    pub fn sorted_terms(&self) -> Vec<(&Word, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }

    /// Adds `c·|w|` for an arbitrary (not necessarily canonical) word.
    pub fn add_word(&mut self, w: &Word, c: Q) {
        self.add_canonical(w.canonical_rotation(), c);
    }

    /// Adds `c·|w|` for a word already in canonical form.
    pub fn add_canonical(&mut self, w: Word, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add_scaled(&mut self, other: &CyclicPoly, c: &Q) {
        debug_assert_eq!(self.alphabet, other.alphabet);
        for (w, a) in &other.terms {
            self.add_canonical(w.clone(), a * c);
        }
    }

    pub fn add(&self, other: &CyclicPoly) -> CyclicPoly {
        let mut out = self.clone();
        out.add_scaled(other, &q(1));
        out
    }

    pub fn sub(&self, other: &CyclicPoly) -> CyclicPoly {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    pub fn scale(&self, c: &Q) -> CyclicPoly {
        let mut out = Self::zero(self.alphabet);
        out.add_scaled(self, c);
        out
    }

    pub fn homogeneous_part(&self, deg: usize) -> CyclicPoly {
        CyclicPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == deg)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Tensor representative: each canonical word with its coefficient.
    pub fn representative(&self) -> TensorPoly {
        TensorPoly::from_terms(self.alphabet, self.terms.iter().map(|(w, c)| (w.clone(), c.clone())))
    }

    /// Rebuilds from canonical keys, checking canonicity.
    pub fn from_canonical_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, Q)>) -> Self {
        let mut c = Self::zero(alphabet);
        for (w, a) in terms {
            c.add_word(&w, a);
        }
        c
    }
}

/// The cyclic projection `|·| : T(H) → |T(H)|`.
pub fn cyclic_project(t: &TensorPoly) -> CyclicPoly {
    let mut c = CyclicPoly::zero(t.alphabet());
    for (w, a) in t.terms() {
        c.add_word(w, a.clone());
    }
    c
}

/// Canonical necklace basis of the weight-`n` cyclic space.
pub fn cyclic_basis(alphabet: Alphabet, n: usize) -> Vec<Word> {
    necklaces(alphabet.rank() as u8, n).into_iter().map(|w| Word(w.into())).collect()
}

/// The Adams operator `ψ₂ = μ∘Δ` of the shuffle coproduct on one word:
/// `Σ_S w_S · w_{S^c}` over subsets `S` of positions.
pub fn psi2_word(w: &Word) -> FxHashMap<Word, i64> {
    let n = w.len();
    let s = w.letters();
    let mut out: FxHashMap<Word, i64> = FxHashMap::default();
    for mask in 0u32..(1u32 << n) {
        let mut v: smallvec::SmallVec<[Letter; 24]> = smallvec::SmallVec::with_capacity(n);
        for (i, &l) in s.iter().enumerate() {
            if mask & (1 << i) != 0 {
                v.push(l);
            }
        }
        for (i, &l) in s.iter().enumerate() {
            if mask & (1 << i) == 0 {
                v.push(l);
            }
        }
        *out.entry(Word(v)).or_insert(0) += 1;
    }
    out
}

/// `ψ₂` on the tensor algebra.
pub fn psi2_tensor(t: &TensorPoly) -> TensorPoly {
    let mut out = TensorPoly::zero(t.alphabet());
    for (w, c) in t.terms() {
        for (v, k) in psi2_word(w) {
            out.add_term(v, c * q(k));
        }
    }
    out
}

/// `ψ₂` descended to cyclic words. On `|Sym^n L(H)|` it acts by `2^n`.
pub fn psi2_cyclic(c: &CyclicPoly) -> CyclicPoly {
    let mut out = CyclicPoly::zero(c.alphabet());
    for (w, a) in c.terms() {
        for (v, k) in psi2_word(w) {
            out.add_word(&v, a * q(k));
        }
    }
    out
}

/// Component of `c` in `|Sym^n L(H)|`.
///
/// On weight `w` the operator `ψ₂` is diagonalizable with eigenvalues `2^m`,
/// `0 ≤ m ≤ w`, the `2^m`-eigenspace being `|Sym^m L(H)|_w`; the projection is
/// the Lagrange interpolation polynomial `Π_{m≠n} (ψ₂ − 2^m)/(2^n − 2^m)`.
pub fn sym_component_project(c: &CyclicPoly, n: usize) -> CyclicPoly {
    let mut out = CyclicPoly::zero(c.alphabet());
    for w in c.degrees() {
        if n > w {
            continue;
        }
        let mut cur = c.homogeneous_part(w);
        if w == 0 {
            if n == 0 {
                out.add_scaled(&cur, &q(1));
            }
            continue;
        }
        // |Sym^0|_w vanishes for w ≥ 1, so only m = 1..=w occur.
        let target = Q::from_integer(num_bigint::BigInt::from(1u64) << n);
        for m in 1..=w {
            if m == n || cur.is_zero() {
                continue;
            }
            let lam = Q::from_integer(num_bigint::BigInt::from(1u64) << m);
            let mut next = psi2_cyclic(&cur);
            next.add_scaled(&cur, &(-lam.clone()));
            let denom = &target - &lam;
            cur = next.scale(&(Q::from_integer(1.into()) / denom));
        }
        out.add_scaled(&cur, &q(1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::LiePoly;

    #[test]
    fn rotations_share_key() {
        let al = Alphabet::symplectic(1).unwrap();
        let x = CyclicPoly::word(al, &[0, 1]);
        let y = CyclicPoly::word(al, &[1, 0]);
        assert_eq!(x, y);
    }

    #[test]
    fn commutators_project_to_zero() {
        let al = Alphabet::symplectic(2).unwrap();
        let u = LiePoly::letter(al, 0).bracket(&LiePoly::letter(al, 3)).unwrap();
        let v = LiePoly::letter(al, 1);
        assert!(cyclic_project(u.bracket(&v).unwrap().tensor()).is_zero());
    }

    #[test]
    fn basis_count_g1_n4() {
        let al = Alphabet::symplectic(1).unwrap();
        assert_eq!(cyclic_basis(al, 4).len(), 6);
    }

    #[test]
    fn sym_projection_examples() {
        let al = Alphabet::symplectic(1).unwrap();
        let a = CyclicPoly::word(al, &[0]);
        assert_eq!(sym_component_project(&a, 1), a);
        assert!(sym_component_project(&a, 2).is_zero());
        let c = CyclicPoly::word(al, &[0, 1, 1]);
        let total = (0..=3).fold(CyclicPoly::zero(al), |acc, n| acc.add(&sym_component_project(&c, n)));
        assert_eq!(total, c);
    }
}
