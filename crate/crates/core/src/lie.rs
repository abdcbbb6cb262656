//! Free Lie algebra elements, stored by their tensor expansion with Lyndon
//! coordinates recovered on demand.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::coef::{q, Q};
use crate::combinat::lyndon_words;
use crate::error::{Error, Result};
use crate::tensor::TensorPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePoly {
    tensor: TensorPoly,
}

/// Splits a Lyndon word of length ≥ 2 as `uv` with `v` its longest proper Lyndon suffix.
pub fn standard_factorization(w: &[Letter]) -> (usize, &[Letter], &[Letter]) {
    debug_assert!(w.len() >= 2);
    for k in 1..w.len() {
        let suffix = Word::from_slice(&w[k..]);
        if suffix.is_lyndon() {
            return (k, &w[..k], &w[k..]);
        }
    }
    unreachable!("a word of length ≥ 2 has a Lyndon suffix")
}

/// Tensor expansion of the standard bracketing of a Lyndon word.
pub fn standard_bracketing(alphabet: Alphabet, w: &[Letter]) -> TensorPoly {
    if w.len() == 1 {
        return TensorPoly::letter(alphabet, w[0]);
    }
    let (_, u, v) = standard_factorization(w);
    standard_bracketing(alphabet, u).commutator(&standard_bracketing(alphabet, v))
}

/// Lyndon basis of the degree-`d` part, each with its tensor expansion.
pub fn lie_basis(alphabet: Alphabet, d: usize) -> Vec<(Word, TensorPoly)> {
    lyndon_words(alphabet.rank() as u8, d)
        .into_iter()
        .map(|w| {
            let t = standard_bracketing(alphabet, &w);
            (Word(w.into()), t)
        })
        .collect()
}

/// Expresses a tensor as a combination of standard bracketings of Lyndon
/// words, or reports that it is not a Lie element.
///
/// The least word in the support of a standard bracketing `P(l)` is `l`
/// itself, so peeling off the least word of the remainder is triangular.
pub fn lyndon_decompose(t: &TensorPoly) -> Result<Vec<(Word, Q)>> {
    let al = t.alphabet();
    let mut rest: BTreeMap<(usize, Word), Q> =
        t.terms().map(|(w, c)| ((w.len(), w.clone()), c.clone())).collect();
    let mut out = Vec::new();
    while let Some(((_, w), c)) = rest.pop_first() {
        if !w.is_lyndon() {
            return Err(Error::NotLie(format!(
                "least remaining word {:?} is not Lyndon",
                w.letters().iter().map(|&l| al.letter_name(l)).collect::<Vec<_>>()
            )));
        }
        let p = standard_bracketing(al, w.letters());
        for (v, a) in p.terms() {
            if v == &w {
                continue;
            }
            let key = (v.len(), v.clone());
            let e = rest.entry(key.clone()).or_insert_with(Q::zero);
            *e -= a * &c;
            if e.is_zero() {
                rest.remove(&key);
            }
        }
        out.push((w, c));
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out)
}

pub fn is_lie(t: &TensorPoly) -> bool {
    lyndon_decompose(t).is_ok()
}

impl LiePoly {
    pub fn zero(alphabet: Alphabet) -> Self {
        LiePoly { tensor: TensorPoly::zero(alphabet) }
    }

    pub fn letter(alphabet: Alphabet, l: Letter) -> Self {
        LiePoly { tensor: TensorPoly::letter(alphabet, l) }
    }

    pub fn from_lyndon(alphabet: Alphabet, coords: &[(Word, Q)]) -> Result<Self> {
        let mut t = TensorPoly::zero(alphabet);
        for (w, c) in coords {
            if !w.is_lyndon() {
                return Err(Error::NotLie(format!("{:?} is not a Lyndon word", w.letters())));
            }
            t.add_scaled(&standard_bracketing(alphabet, w.letters()), c);
        }
        Ok(LiePoly { tensor: t })
    }

    /// Checks that `t` is a Lie element.
    pub fn from_tensor(t: TensorPoly) -> Result<Self> {
        lyndon_decompose(&t)?;
        Ok(LiePoly { tensor: t })
    }

    /// Wraps a tensor already known to be Lie.
    pub fn from_tensor_unchecked(t: TensorPoly) -> Self {
        LiePoly { tensor: t }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.tensor.alphabet()
    }

    pub fn tensor(&self) -> &TensorPoly {
        &self.tensor
    }

    pub fn into_tensor(self) -> TensorPoly {
        self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.tensor.is_zero()
    }

    pub fn lyndon_coords(&self) -> Vec<(Word, Q)> {
        lyndon_decompose(&self.tensor).expect("LiePoly holds a Lie element")
    }

    pub fn bracket(&self, other: &LiePoly) -> Result<LiePoly> {
        self.alphabet().check_same(&other.alphabet())?;
        Ok(LiePoly { tensor: self.tensor.commutator(&other.tensor) })
    }

    pub fn add(&self, other: &LiePoly) -> LiePoly {
        LiePoly { tensor: self.tensor.add(&other.tensor) }
    }

    pub fn sub(&self, other: &LiePoly) -> LiePoly {
        LiePoly { tensor: self.tensor.sub(&other.tensor) }
    }

    pub fn scale(&self, c: &Q) -> LiePoly {
        LiePoly { tensor: self.tensor.scale(c) }
    }
}

pub fn lie_bracket(u: &LiePoly, v: &LiePoly) -> Result<LiePoly> {
    u.bracket(v)
}

/// `(1/k!) Σ_σ u_{σ(1)} ⋯ u_{σ(k)}`, computed over subsets via
/// `S(T) = (1/|T|) Σ_{i∈T} u_i S(T∖i)`.
pub fn pbw_symmetrize(alphabet: Alphabet, factors: &[LiePoly]) -> Result<TensorPoly> {
    for f in factors {
        alphabet.check_same(&f.alphabet())?;
    }
    let k = factors.len();
    if k > 20 {
        return Err(Error::InvalidArgument("too many factors to symmetrize".into()));
    }
    let mut table: Vec<TensorPoly> = Vec::with_capacity(1 << k);
    table.push(TensorPoly::one(alphabet));
    for mask in 1usize..(1 << k) {
        let size = mask.count_ones() as i64;
        let mut acc = TensorPoly::zero(alphabet);
        for (i, f) in factors.iter().enumerate() {
            if mask & (1 << i) != 0 {
                acc.add_scaled(&f.tensor.mul(&table[mask ^ (1 << i)]), &q(1));
            }
        }
        table.push(acc.scale(&crate::coef::qf(1, size)));
    }
    Ok(table.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::witt_dimension;
    use num_bigint::BigInt;

    #[test]
    fn bracket_expansion() {
        let al = Alphabet::symplectic(1).unwrap();
        let a = LiePoly::letter(al, 0);
        let b = LiePoly::letter(al, 1);
        assert!(a.bracket(&a).unwrap().is_zero());
        let ab = a.bracket(&b).unwrap();
        assert_eq!(ab.tensor().coef(&Word::from_slice(&[0, 1])), q(1));
        assert_eq!(ab.tensor().coef(&Word::from_slice(&[1, 0])), q(-1));
        assert_eq!(ab.lyndon_coords(), vec![(Word::from_slice(&[0, 1]), q(1))]);
    }

    #[test]
    fn basis_sizes_follow_witt() {
        let al = Alphabet::symplectic(1).unwrap();
        let dims: Vec<usize> = (1..=6).map(|d| lie_basis(al, d).len()).collect();
        assert_eq!(dims, vec![2, 1, 2, 3, 6, 9]);
        for d in 1..=6 {
            assert_eq!(BigInt::from(dims[d - 1]), witt_dimension(2, d as u64));
        }
    }

    #[test]
    fn non_lie_rejected() {
        let al = Alphabet::symplectic(1).unwrap();
        assert!(!is_lie(&TensorPoly::word(al, &[0, 1])));
        assert!(!is_lie(&TensorPoly::word(al, &[0, 0])));
        assert!(is_lie(&TensorPoly::zero(al)));
    }

    #[test]
    fn symmetrize_small_cases() {
        let al = Alphabet::symplectic(1).unwrap();
        let a = LiePoly::letter(al, 0);
        let b = LiePoly::letter(al, 1);
        assert_eq!(pbw_symmetrize(al, &[a.clone()]).unwrap(), a.tensor().clone());
        let s = pbw_symmetrize(al, &[a.clone(), b.clone()]).unwrap();
        let expect = a.tensor().mul(b.tensor()).add(&b.tensor().mul(a.tensor())).scale(&crate::coef::qf(1, 2));
        assert_eq!(s, expect);
        assert_eq!(pbw_symmetrize(al, &[]).unwrap(), TensorPoly::one(al));
    }
}
