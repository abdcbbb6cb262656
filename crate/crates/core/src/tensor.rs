//! Sparse noncommutative polynomials over an alphabet.

use num_traits::{One, Zero};
use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::coef::{q, Q};
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct TensorPoly {
    alphabet: Alphabet,
    terms: FxHashMap<Word, Q>,
}

impl PartialEq for TensorPoly {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl Eq for TensorPoly {}

impl TensorPoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        TensorPoly { alphabet, terms: FxHashMap::default() }
    }

    pub fn one(alphabet: Alphabet) -> Self {
        Self::monomial(alphabet, Word::empty(), q(1))
    }

    pub fn monomial(alphabet: Alphabet, word: Word, coef: Q) -> Self {
        let mut t = Self::zero(alphabet);
        t.add_term(word, coef);
        t
    }

    pub fn word(alphabet: Alphabet, letters: &[Letter]) -> Self {
        Self::monomial(alphabet, Word::from_slice(letters), q(1))
    }

    pub fn letter(alphabet: Alphabet, l: Letter) -> Self {
        Self::monomial(alphabet, Word::letter(l), q(1))
    }

    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = (Word, Q)>) -> Self {
        let mut t = Self::zero(alphabet);
        for (w, c) in terms {
            t.add_term(w, c);
        }
        t
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

    pub fn coef(&self, w: &Word) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> FxHashMap<Word, Q> {
        self.terms
    }

    /// Terms in canonical order (by length, then lexicographically).
    pub fn sorted_terms(&self) -> Vec<(&Word, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| (a.0.len(), a.0).cmp(&(b.0.len(), b.0)));
        v
    }

    pub fn add_term(&mut self, w: Word, c: Q) {
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

    pub fn add_term_ref(&mut self, w: &Word, c: &Q) {
        if c.is_zero() {
            return;
        }
        if let Some(v) = self.terms.get_mut(w) {
            *v += c;
            if v.is_zero() {
                self.terms.remove(w);
            }
        } else {
            self.terms.insert(w.clone(), c.clone());
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Q) {
        debug_assert_eq!(self.alphabet, other.alphabet);
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (w, a) in &other.terms {
            if unit {
                self.add_term_ref(w, a);
            } else {
                self.add_term_ref(w, &(a * c));
            }
        }
    }

    pub fn add(&self, other: &TensorPoly) -> TensorPoly {
        let mut t = self.clone();
        t.add_scaled(other, &q(1));
        t
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut t = self.clone();
        t.add_scaled(other, &q(-1));
        t
    }

    pub fn scale(&self, c: &Q) -> TensorPoly {
        if c.is_zero() {
            return Self::zero(self.alphabet);
        }
        TensorPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn neg(&self) -> TensorPoly {
        self.scale(&q(-1))
    }

    /// Concatenation product.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        debug_assert_eq!(self.alphabet, other.alphabet);
        let mut out = Self::zero(self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    pub fn commutator(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.mul(other);
        out.add_scaled(&other.mul(self), &q(-1));
        out
    }

    pub fn pow(&self, k: usize) -> TensorPoly {
        (0..k).fold(Self::one(self.alphabet), |acc, _| acc.mul(self))
    }

    /// Left multiplication by a single letter.
    pub fn left_letter(&self, l: Letter) -> TensorPoly {
        let lw = Word::letter(l);
        TensorPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (lw.concat(w), c.clone())).collect(),
        }
    }

    pub fn right_letter(&self, l: Letter) -> TensorPoly {
        let lw = Word::letter(l);
        TensorPoly {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|(w, c)| (w.concat(&lw), c.clone())).collect(),
        }
    }

    /// `ad_x(self) = [x, self]` for a single letter `x`.
    pub fn ad_letter(&self, x: Letter) -> TensorPoly {
        let mut out = self.left_letter(x);
        out.add_scaled(&self.right_letter(x), &q(-1));
        out
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self.terms.keys().map(|w| w.len()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// The degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degrees();
        if d.len() == 1 {
            Some(d[0])
        } else {
            None
        }
    }

    pub fn homogeneous_part(&self, deg: usize) -> TensorPoly {
        TensorPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.len() == deg)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> TensorPoly {
        TensorPoly {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Applies the derivation determined by `values[letter]`.
    pub fn apply_derivation(&self, values: &[TensorPoly]) -> TensorPoly {
        let mut out = Self::zero(self.alphabet);
        for (w, c) in &self.terms {
            derivation_on_word(w, c, values, &mut out);
        }
        out
    }

    /// Applies the algebra endomorphism sending each letter to `images[letter]`.
    pub fn substitute(&self, images: &[TensorPoly]) -> TensorPoly {
        let al = images.first().map(|t| t.alphabet).unwrap_or(self.alphabet);
        let mut out = TensorPoly::zero(al);
        for (w, c) in &self.terms {
            let mut acc = TensorPoly::monomial(al, Word::empty(), c.clone());
            for &l in w.letters() {
                acc = acc.mul(&images[l as usize]);
            }
            out.add_scaled(&acc, &q(1));
        }
        out
    }

    /// Left coefficient: the polynomial `u` with `self = Σ_l l·u^{(l)} + const`,
    /// returning `u^{(letter)}`.
    pub fn left_coefficient(&self, letter: Letter) -> TensorPoly {
        let mut out = Self::zero(self.alphabet);
        for (w, c) in &self.terms {
            if w.letters().first() == Some(&letter) {
                out.add_term(Word::from_slice(&w.letters()[1..]), c.clone());
            }
        }
        out
    }

    pub fn right_coefficient(&self, letter: Letter) -> TensorPoly {
        let mut out = Self::zero(self.alphabet);
        for (w, c) in &self.terms {
            if w.letters().last() == Some(&letter) {
                out.add_term(Word::from_slice(&w.letters()[..w.len() - 1]), c.clone());
            }
        }
        out
    }
}

/// Accumulates `c * D(w)` into `out`, with `D` given on letters.
pub(crate) fn derivation_on_word(w: &Word, c: &Q, values: &[TensorPoly], out: &mut TensorPoly) {
    let s = w.letters();
    for k in 0..s.len() {
        let val = &values[s[k] as usize];
        if val.is_zero() {
            continue;
        }
        for (v, a) in &val.terms {
            let mut nw: smallvec::SmallVec<[Letter; 24]> = smallvec::SmallVec::with_capacity(s.len() + v.len());
            nw.extend_from_slice(&s[..k]);
            nw.extend_from_slice(v.letters());
            nw.extend_from_slice(&s[k + 1..]);
            out.add_term(Word(nw), a * c);
        }
    }
}

/// The tensor form of `θ = Σ_j (a_j b_j − b_j a_j)`.
pub fn theta_tensor(alphabet: Alphabet) -> Result<TensorPoly> {
    let g = alphabet.require_symplectic("θ")?;
    let mut t = TensorPoly::zero(alphabet);
    for i in 1..=g {
        let (a, b) = (Alphabet::a(i), Alphabet::b(i));
        t.add_term(Word::from_slice(&[a, b]), q(1));
        t.add_term(Word::from_slice(&[b, a]), q(-1));
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_is_exact() {
        let al = Alphabet::symplectic(1).unwrap();
        let a = TensorPoly::letter(al, 0);
        let b = TensorPoly::letter(al, 1);
        let c = a.commutator(&b);
        assert_eq!(c.len(), 2);
        assert_eq!(c.coef(&Word::from_slice(&[0, 1])), q(1));
        assert!(c.add(&b.commutator(&a)).is_zero());
        assert_eq!(a.add(&b).pow(3).len(), 8);
    }

    #[test]
    fn derivation_is_leibniz() {
        let al = Alphabet::symplectic(1).unwrap();
        let values = vec![TensorPoly::word(al, &[1, 1]), TensorPoly::letter(al, 0)];
        let u = TensorPoly::word(al, &[0, 1]);
        let v = TensorPoly::word(al, &[1, 0, 0]);
        let lhs = u.mul(&v).apply_derivation(&values);
        let rhs = u.apply_derivation(&values).mul(&v).add(&u.mul(&v.apply_derivation(&values)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn left_coefficient_splits() {
        let al = Alphabet::symplectic(1).unwrap();
        let t = TensorPoly::word(al, &[0, 1]).add(&TensorPoly::word(al, &[1, 0]));
        assert_eq!(t.left_coefficient(0), TensorPoly::letter(al, 1));
    }
}
