//! The genus-one derivations `ε_{2n}` and the quadratic Pollack relations.

use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter, Weight};
use crate::coef::{q, Q};
use crate::derivation::{DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::lie::lie_basis;
use crate::linalg::{kernel, transpose, Interner, SparseVec};
use crate::tensor::TensorPoly;

const A: Letter = 0;
const B: Letter = 1;

/// `ad_x^k(y)`.
pub fn ad_power(x: Letter, k: usize, y: &TensorPoly) -> TensorPoly {
    (0..k).fold(y.clone(), |acc, _| acc.ad_letter(x))
}

/// Dimension of the space of pairs `(x, t)` with `x ∈ L_{2n+1}` of the right
/// torus weight and `t ∈ Q`, such that `a ↦ x, b ↦ t·ad_b^{2n}(a)` kills `θ`,
/// together with that space's basis vectors as `(x, t)`.
fn epsilon_system(alphabet: Alphabet, n: usize) -> Result<Vec<(TensorPoly, Q)>> {
    let a = TensorPoly::letter(alphabet, A);
    let db = ad_power(B, 2 * n, &a);
    // D(θ) = [D a, b] + [a, D b] with θ = [a, b].
    let t_col = a.commutator(&db);
    let target: Weight = {
        let mut w = alphabet.letter_weight(A);
        let shift = 2 - 2 * n as i32;
        w[0] += shift;
        w
    };
    let candidates: Vec<TensorPoly> = lie_basis(alphabet, 2 * n + 1)
        .into_iter()
        .filter(|(w, _)| alphabet.word_weight(w) == target)
        .map(|(_, p)| p)
        .collect();
    let b = TensorPoly::letter(alphabet, B);
    let mut idx: Interner<crate::alphabet::Word> = Interner::new();
    let mut cols: Vec<SparseVec<Q>> = Vec::new();
    for p in candidates.iter().map(|p| p.commutator(&b)).chain(std::iter::once(t_col)) {
        let mut col: SparseVec<Q> = p.terms().map(|(w, c)| (idx.id(w), c.clone())).collect();
        col.sort_by_key(|e| e.0);
        cols.push(col);
    }
    let ncols = cols.len();
    let rows = transpose(&cols, idx.len());
    let ker = kernel(&rows, ncols);
    Ok(ker
        .into_iter()
        .map(|v| {
            let mut x = TensorPoly::zero(alphabet);
            let mut t = Q::zero();
            for (i, c) in v {
                if i == candidates.len() {
                    t = c;
                } else {
                    x.add_scaled(&candidates[i], &c);
                }
            }
            (x, t)
        })
        .collect())
}

/// Nullity of the linear system defining `ε_{2n}`; equal to 1 when `ε_{2n}` is unique.
pub fn epsilon_solution_dimension(alphabet: Alphabet, n: usize) -> Result<usize> {
    check_genus1(alphabet)?;
    Ok(epsilon_system(alphabet, n)?.len())
}

fn check_genus1(alphabet: Alphabet) -> Result<()> {
    if alphabet.require_symplectic("ε")? != 1 {
        return Err(Error::InvalidArgument("ε_{2n} is defined in genus 1".into()));
    }
    Ok(())
}

/// The derivation `ε_{2n}`: `b ↦ ad_b^{2n}(a)`, `θ ↦ 0`.
pub fn epsilon(alphabet: Alphabet, n: usize) -> Result<ThetaDerivation> {
    check_genus1(alphabet)?;
    let sols = epsilon_system(alphabet, n)?;
    if sols.len() != 1 || sols[0].1.is_zero() {
        return Err(Error::Invariant(format!(
            "ε_{} system has a {}-dimensional solution space",
            2 * n,
            sols.len()
        )));
    }
    let (x, t) = &sols[0];
    let x = x.scale(&(Q::from_integer(1.into()) / t));
    let db = ad_power(B, 2 * n, &TensorPoly::letter(alphabet, A));
    ThetaDerivation::new_unchecked(alphabet, 2 * n as i32, DerKind::Lie, vec![x, db])
}

/// `Σ c·[ε_{2i}, ε_{2j}]` for terms `(c, 2i, 2j)`.
pub fn epsilon_bracket_combination(alphabet: Alphabet, terms: &[(i64, usize, usize)]) -> Result<ThetaDerivation> {
    let degree = match terms.first() {
        Some((_, i, j)) => (i + j) as i32,
        None => return Err(Error::InvalidArgument("empty combination".into())),
    };
    let mut acc = ThetaDerivation::zero(alphabet, degree, DerKind::Lie);
    for &(c, i, j) in terms {
        if i % 2 != 0 || j % 2 != 0 || (i + j) as i32 != degree {
            return Err(Error::InvalidArgument("ε indices must be even with a common total".into()));
        }
        let br = epsilon(alphabet, i / 2)?.bracket(&epsilon(alphabet, j / 2)?)?;
        acc.add_scaled(&br, &q(c))?;
    }
    Ok(acc)
}

/// Coefficients `(c, 2i, 2j)` of the first two quadratic Pollack relations.
pub fn pollack_relation(which: u8) -> Result<Vec<(i64, usize, usize)>> {
    match which {
        1 => Ok(vec![(1, 4, 10), (-3, 6, 8)]),
        2 => Ok(vec![(2, 4, 14), (-7, 6, 12), (11, 8, 10)]),
        _ => Err(Error::InvalidArgument(format!("Pollack relation {which} is not available; use 1 or 2"))),
    }
}

/// Evaluates a Pollack relation; `true` iff the combination vanishes.
pub fn pollack_check(which: u8) -> Result<(bool, ThetaDerivation)> {
    let al = Alphabet::symplectic(1)?;
    let residual = epsilon_bracket_combination(al, &pollack_relation(which)?)?;
    Ok((residual.is_zero(), residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::is_lie;

    #[test]
    fn epsilon_small() {
        let al = Alphabet::symplectic(1).unwrap();
        let e0 = epsilon(al, 0).unwrap();
        assert!(e0.value(A).is_zero());
        assert_eq!(e0.value(B), &TensorPoly::letter(al, A));
        let e2 = epsilon(al, 1).unwrap();
        let bba = TensorPoly::letter(al, A).ad_letter(B).ad_letter(B);
        assert_eq!(e2.value(B), &bba);
        assert!(e2.satisfies_theta().unwrap());
        assert!(is_lie(e2.value(A)));
    }

    #[test]
    fn relation_one_and_negative_control() {
        assert!(pollack_check(1).unwrap().0);
        let al = Alphabet::symplectic(1).unwrap();
        let bad = epsilon_bracket_combination(al, &[(1, 4, 10), (-2, 6, 8)]).unwrap();
        assert!(!bad.is_zero());
    }
}
