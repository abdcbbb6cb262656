//! The graded Goldman bracket, Turaev cobracket and Kawazumi-Kuno action.

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::alphabet::{pair, Alphabet, Letter, Word};
use crate::coef::{q, qf, Q};
use crate::cyclic::{cyclic_project, CyclicPoly};
use crate::derivation::{dual_tensor, DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::tensor::{theta_tensor, TensorPoly};

/// Element of `|T(H)| ⊗ |T(H)|`, keyed by pairs of canonical cyclic words.
#[derive(Clone, Debug)]
pub struct CyclicPair {
    alphabet: Alphabet,
    terms: FxHashMap<(Word, Word), Q>,
}

impl PartialEq for CyclicPair {
    fn eq(&self, other: &Self) -> bool {
        self.alphabet == other.alphabet && self.terms == other.terms
    }
}

impl Eq for CyclicPair {}

impl CyclicPair {
    pub fn zero(alphabet: Alphabet) -> Self {
        CyclicPair { alphabet, terms: FxHashMap::default() }
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

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Q)> {
        self.terms.iter()
    }

    pub fn sorted_terms(&self) -> Vec<(&(Word, Word), &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| {
            let ka = (a.0 .0.len() + a.0 .1.len(), &a.0 .0, &a.0 .1);
            let kb = (b.0 .0.len() + b.0 .1.len(), &b.0 .0, &b.0 .1);
            ka.cmp(&kb)
        });
        v
    }

    /// Adds `c·|u| ⊗ |v|` for arbitrary representatives.
    pub fn add_words(&mut self, u: &Word, v: &Word, c: Q) {
        self.add_canonical((u.canonical_rotation(), v.canonical_rotation()), c);
    }

    pub fn add_canonical(&mut self, key: (Word, Word), c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(key) {
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

    pub fn add_scaled(&mut self, other: &CyclicPair, c: &Q) {
        for (k, a) in &other.terms {
            self.add_canonical(k.clone(), a * c);
        }
    }

    pub fn sub(&self, other: &CyclicPair) -> CyclicPair {
        let mut out = self.clone();
        out.add_scaled(other, &q(-1));
        out
    }

    /// `u ⊗ v ↦ v ⊗ u`.
    pub fn swap(&self) -> CyclicPair {
        CyclicPair {
            alphabet: self.alphabet,
            terms: self.terms.iter().map(|((u, v), c)| ((v.clone(), u.clone()), c.clone())).collect(),
        }
    }

    /// Drops terms with an empty factor.
    pub fn reduced(&self) -> CyclicPair {
        CyclicPair {
            alphabet: self.alphabet,
            terms: self
                .terms
                .iter()
                .filter(|((u, v), _)| !u.is_empty() && !v.is_empty())
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn from_terms(alphabet: Alphabet, terms: impl IntoIterator<Item = ((Word, Word), Q)>) -> Self {
        let mut p = CyclicPair::zero(alphabet);
        for ((u, v), c) in terms {
            p.add_words(&u, &v, c);
        }
        p
    }
}

fn cyclic_tail(w: &[Letter], j: usize) -> Word {
    // x_{j+1} … x_n x_1 … x_{j−1}
    let mut v = smallvec::SmallVec::with_capacity(w.len().saturating_sub(1));
    v.extend_from_slice(&w[j + 1..]);
    v.extend_from_slice(&w[..j]);
    Word(v)
}

/// `{|x|, |y|} = Σ_{j,k} ⟨x_j, y_k⟩ |x_{j+1}…x_{j−1} y_{k+1}…y_{k−1}|`.
pub fn bracket_words(x: &Word, y: &Word, c: &Q, out: &mut CyclicPoly) {
    let (xs, ys) = (x.letters(), y.letters());
    for (j, &xj) in xs.iter().enumerate() {
        for (k, &yk) in ys.iter().enumerate() {
            let p = pair(xj, yk);
            if p == 0 {
                continue;
            }
            let w = cyclic_tail(xs, j).concat(&cyclic_tail(ys, k));
            out.add_word(&w, c * q(p));
        }
    }
}

pub fn goldman_bracket(x: &CyclicPoly, y: &CyclicPoly) -> Result<CyclicPoly> {
    x.alphabet().check_same(&y.alphabet())?;
    x.alphabet().require_symplectic("the Goldman bracket")?;
    let mut out = CyclicPoly::zero(x.alphabet());
    for (u, a) in x.terms() {
        for (v, b) in y.terms() {
            bracket_words(u, v, &(a * b), &mut out);
        }
    }
    Ok(out)
}

/// Cobracket of one word, valid for any rotation of it.
pub fn cobracket_word(x: &Word, c: &Q, out: &mut CyclicPair) {
    let s = x.letters();
    let n = s.len();
    for j in 0..n {
        for k in j + 1..n {
            let p = pair(s[j], s[k]);
            if p == 0 {
                continue;
            }
            let inner = Word::from_slice(&s[j + 1..k]);
            let mut outer_v = smallvec::SmallVec::with_capacity(n);
            outer_v.extend_from_slice(&s[k + 1..]);
            outer_v.extend_from_slice(&s[..j]);
            let outer = Word(outer_v);
            let coef = c * q(p);
            out.add_words(&inner, &outer, coef.clone());
            out.add_words(&outer, &inner, -coef);
        }
    }
}

pub fn turaev_cobracket(x: &CyclicPoly) -> Result<CyclicPair> {
    x.alphabet().require_symplectic("the Turaev cobracket")?;
    let mut out = CyclicPair::zero(x.alphabet());
    for (w, c) in x.terms() {
        cobracket_word(w, c, &mut out);
    }
    Ok(out)
}

pub fn reduced_cobracket(x: &CyclicPoly) -> Result<CyclicPair> {
    Ok(turaev_cobracket(x)?.reduced())
}

/// Values `κ(x)(y)` on every letter `y`: `Σ_j ⟨x_j, y⟩ x_{j+1}…x_{j−1}`.
pub fn kappa_values(x: &CyclicPoly) -> Result<Vec<TensorPoly>> {
    let al = x.alphabet();
    al.require_symplectic("the Kawazumi-Kuno action")?;
    let mut values = vec![TensorPoly::zero(al); al.rank()];
    for (w, c) in x.terms() {
        let s = w.letters();
        for (j, &xj) in s.iter().enumerate() {
            let (y, p) = crate::alphabet::partner(xj);
            values[y as usize].add_term(cyclic_tail(s, j), c * q(p));
        }
    }
    Ok(values)
}

/// `κ(x)` applied as a derivation to `w`.
pub fn kk_action(x: &CyclicPoly, w: &TensorPoly) -> Result<TensorPoly> {
    x.alphabet().check_same(&w.alphabet())?;
    Ok(w.apply_derivation(&kappa_values(x)?))
}

/// `κ(x)` as a tensor-valued derivation; `x` must be homogeneous of weight ≥ 1.
pub fn kappa(x: &CyclicPoly) -> Result<ThetaDerivation> {
    let degs = x.degrees();
    let n = match degs.as_slice() {
        [] => {
            return Err(Error::InvalidArgument("κ of zero has no degree; pass a homogeneous element".into()))
        }
        [n] => *n,
        _ => return Err(Error::InvalidArgument("κ needs a homogeneous cyclic element".into())),
    };
    if n == 0 {
        return Err(Error::InvalidArgument("the empty cyclic word acts by zero".into()));
    }
    ThetaDerivation::new_unchecked(x.alphabet(), n as i32 - 2, DerKind::Tensor, kappa_values(x)?)
}

/// `|Σ_i (a_i D(b_i) − b_i D(a_i))|`, which equals `n·c` when `D = κ(c)`
/// with `c` of weight `n`.
pub fn kappa_dual(d: &ThetaDerivation) -> Result<CyclicPoly> {
    Ok(cyclic_project(&dual_tensor(d)?))
}

/// Inverse of `κ` on weight `n = m + 2 ≥ 1`; returns an error if `D` is not in
/// the image.
pub fn kappa_inverse(d: &ThetaDerivation) -> Result<CyclicPoly> {
    let n = d.degree() + 2;
    if n < 1 {
        return Err(Error::InvalidArgument("κ is not invertible in weight 0".into()));
    }
    let c = kappa_dual(d)?.scale(&qf(1, n as i64));
    let back = kappa_values(&c)?;
    if back.as_slice() != d.values() {
        return Err(Error::InvalidArgument("derivation is not in the image of κ".into()));
    }
    Ok(c)
}

/// `D` applied to a representative, then projected.
pub fn der_on_cyclic(d: &ThetaDerivation, c: &CyclicPoly) -> Result<CyclicPoly> {
    d.alphabet().check_same(&c.alphabet())?;
    Ok(cyclic_project(&d.apply(&c.representative())))
}

/// `|θ^k|` for the tensor `θ = Σ (a_j b_j − b_j a_j)`.
pub fn theta_power_cyclic(alphabet: Alphabet, k: usize) -> Result<CyclicPoly> {
    Ok(cyclic_project(&theta_tensor(alphabet)?.pow(k)))
}

/// `x·(u ⊗ v) = {x,u} ⊗ v + u ⊗ {x,v}`.
pub fn adjoint_on_pair(x: &CyclicPoly, p: &CyclicPair) -> Result<CyclicPair> {
    let al = x.alphabet();
    let mut out = CyclicPair::zero(al);
    for ((u, v), c) in p.terms() {
        let uu = CyclicPoly::from_canonical_terms(al, [(u.clone(), q(1))]);
        let vv = CyclicPoly::from_canonical_terms(al, [(v.clone(), q(1))]);
        for (w, a) in goldman_bracket(x, &uu)?.terms() {
            out.add_canonical((w.clone(), v.clone()), a * c);
        }
        for (w, a) in goldman_bracket(x, &vv)?.terms() {
            out.add_canonical((u.clone(), w.clone()), a * c);
        }
    }
    Ok(out)
}

/// `{ , } ∘ δ`.
pub fn bracket_of_pair(p: &CyclicPair) -> Result<CyclicPoly> {
    let al = p.alphabet();
    let mut out = CyclicPoly::zero(al);
    for ((u, v), c) in p.terms() {
        bracket_words(u, v, c, &mut out);
    }
    Ok(out)
}

pub type CyclicTriple = FxHashMap<(Word, Word, Word), Q>;

/// `(1 + τ + τ²)(δ ⊗ 1)δ(x)` with `τ(u⊗v⊗w) = w⊗u⊗v`; zero by co-Jacobi.
pub fn cojacobi_residual(x: &CyclicPoly) -> Result<CyclicTriple> {
    let al = x.alphabet();
    let first = turaev_cobracket(x)?;
    let mut out: CyclicTriple = FxHashMap::default();
    let mut add = |k: (Word, Word, Word), c: Q| {
        let e = out.entry(k.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            out.remove(&k);
        }
    };
    for ((u, v), c) in first.terms() {
        let mut du = CyclicPair::zero(al);
        cobracket_word(u, c, &mut du);
        for ((s, t), a) in du.terms() {
            add((s.clone(), t.clone(), v.clone()), a.clone());
            add((v.clone(), s.clone(), t.clone()), a.clone());
            add((t.clone(), v.clone(), s.clone()), a.clone());
        }
    }
    Ok(out)
}

/// `{x,{y,z}} + {y,{z,x}} + {z,{x,y}}`.
pub fn jacobi_residual(x: &CyclicPoly, y: &CyclicPoly, z: &CyclicPoly) -> Result<CyclicPoly> {
    let mut r = goldman_bracket(x, &goldman_bracket(y, z)?)?;
    r.add_scaled(&goldman_bracket(y, &goldman_bracket(z, x)?)?, &q(1));
    r.add_scaled(&goldman_bracket(z, &goldman_bracket(x, y)?)?, &q(1));
    Ok(r)
}

/// `δ{x,y} − (x·δy − y·δx)`.
pub fn compatibility_residual(x: &CyclicPoly, y: &CyclicPoly) -> Result<CyclicPair> {
    let lhs = turaev_cobracket(&goldman_bracket(x, y)?)?;
    let mut rhs = adjoint_on_pair(x, &turaev_cobracket(y)?)?;
    rhs.add_scaled(&adjoint_on_pair(y, &turaev_cobracket(x)?)?, &q(-1));
    Ok(lhs.sub(&rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn al(g: usize) -> Alphabet {
        Alphabet::symplectic(g).unwrap()
    }

    #[test]
    fn bracket_examples() {
        let al = al(2);
        let a1 = CyclicPoly::word(al, &[0]);
        let b1 = CyclicPoly::word(al, &[1]);
        let a2 = CyclicPoly::word(al, &[2]);
        assert_eq!(goldman_bracket(&a1, &b1).unwrap(), CyclicPoly::empty_word(al));
        assert!(goldman_bracket(&a1, &a2).unwrap().is_zero());
        let a1b1 = CyclicPoly::word(al, &[0, 1]);
        assert_eq!(goldman_bracket(&a1b1, &a1).unwrap(), a1.scale(&q(-1)));
    }

    #[test]
    fn cobracket_examples() {
        let al = al(1);
        assert!(turaev_cobracket(&CyclicPoly::word(al, &[0])).unwrap().is_zero());
        assert!(turaev_cobracket(&CyclicPoly::word(al, &[0, 1])).unwrap().is_zero());
    }

    #[test]
    fn kappa_examples() {
        let al = al(1);
        let a = CyclicPoly::word(al, &[0]);
        assert_eq!(kk_action(&a, &TensorPoly::letter(al, 1)).unwrap(), TensorPoly::one(al));
        assert!(kk_action(&a, &TensorPoly::letter(al, 0)).unwrap().is_zero());
        let aa = CyclicPoly::word(al, &[0, 0]);
        assert_eq!(kk_action(&aa, &TensorPoly::letter(al, 1)).unwrap(), TensorPoly::letter(al, 0).scale(&q(2)));
    }

    #[test]
    fn kappa_inverse_round_trip() {
        let al = al(2);
        let c = CyclicPoly::word(al, &[0, 1, 2, 3, 3]).add(&CyclicPoly::word(al, &[0, 0, 1]).scale(&qf(2, 3)));
        let c5 = c.homogeneous_part(5);
        let d = kappa(&c5).unwrap();
        assert!(d.satisfies_theta().unwrap());
        assert_eq!(kappa_inverse(&d).unwrap(), c5);
    }

    #[test]
    fn boundary_model_rejected() {
        let bd = Alphabet::boundary(4, 0).unwrap();
        let x = CyclicPoly::word(bd, &[0]);
        assert!(matches!(goldman_bracket(&x, &x), Err(Error::ModelMismatch(_))));
        assert!(matches!(turaev_cobracket(&x), Err(Error::ModelMismatch(_))));
    }
}
