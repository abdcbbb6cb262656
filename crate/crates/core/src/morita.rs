//! The trace on derivations, the embedding `μ` of `Sym^{2n+1}H` and its
//! square.

use num_traits::Zero;
use rustc_hash::FxHashMap;

use crate::alphabet::{pair, Alphabet, Letter};
use crate::coef::{q, qf, Q};
use crate::cyclic::{cyclic_project, CyclicPoly};
use crate::derivation::{dual_tensor, DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::goldman::{kappa, kappa_inverse, turaev_cobracket, CyclicPair};
use crate::linalg::{kernel, primitive, transpose, Interner, SparseVec};
use crate::subspace::theta_der_basis;
use crate::tensor::TensorPoly;

/// Contracts the first factor of `Σ_i (a_i ⊗ D(b_i) − b_i ⊗ D(a_i))` against
/// the first letter of the second and takes the cyclic class of the rest:
/// `Σ_i |∂_{b_i}D(b_i)| + |∂_{a_i}D(a_i)|` with `∂_x` the left coefficient.
///
/// Summing the contraction over every position instead would give zero on all
/// Lie-valued derivations, since that sum acts as a derivation.
pub fn es_trace(d: &ThetaDerivation) -> Result<CyclicPoly> {
    let al = d.alphabet();
    al.require_symplectic("the trace")?;
    if d.degree() < 1 {
        return Err(Error::InvalidArgument("the trace is defined in degree ≥ 1".into()));
    }
    let t = dual_tensor(d)?;
    let mut out = CyclicPoly::zero(al);
    for (w, c) in t.terms() {
        let s = w.letters();
        let p = pair(s[0], s[1]);
        if p != 0 {
            out.add_word(&crate::alphabet::Word::from_slice(&s[2..]), c * q(p));
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut v = p.clone();
            v.insert(i, n - 1);
            out.push(v);
        }
    }
    out
}

/// The cyclic element `Σ_j Σ_σ |a_j·[x_{σ0},[x_{σ1},…,[x_{σ2n}, b_j]…]]|`.
pub fn mu_cyclic(alphabet: Alphabet, monomial: &[Letter]) -> Result<CyclicPoly> {
    let g = alphabet.require_symplectic("μ")?;
    if g < 2 {
        return Err(Error::InvalidArgument("μ needs genus at least 2".into()));
    }
    let k = monomial.len();
    if k < 3 || k % 2 == 0 {
        return Err(Error::InvalidArgument("μ takes a monomial of odd degree 2n+1 ≥ 3".into()));
    }
    if monomial.iter().any(|&l| l as usize >= alphabet.rank()) {
        return Err(Error::UnknownLetter(format!("letter outside genus {g}")));
    }
    let mut acc = TensorPoly::zero(alphabet);
    for sigma in permutations(k) {
        for j in 1..=g {
            let mut t = TensorPoly::letter(alphabet, Alphabet::b(j));
            for &i in sigma.iter().rev() {
                t = t.ad_letter(monomial[i]);
            }
            acc.add_scaled(&t.left_letter(Alphabet::a(j)), &q(1));
        }
    }
    Ok(cyclic_project(&acc))
}

/// `μ_{2n+1}(x_0⋯x_{2n})` as a Lie-valued derivation of degree `2n+1`.
pub fn mu_odd(alphabet: Alphabet, monomial: &[Letter]) -> Result<ThetaDerivation> {
    let c = mu_cyclic(alphabet, monomial)?;
    let d = kappa(&c)?;
    ThetaDerivation::new_unchecked(alphabet, d.degree(), DerKind::Lie, d.values().to_vec())
}

/// Sorted monomials of `Sym^k H`.
pub fn sym_monomials(rank: usize, k: usize) -> Vec<Vec<Letter>> {
    fn rec(start: Letter, rank: Letter, k: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if k == 0 {
            out.push(cur.clone());
            return;
        }
        for l in start..rank {
            cur.push(l);
            rec(l, rank, k - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, rank as Letter, k, &mut Vec::new(), &mut out);
    out
}

/// Degree-0 derivation acting on a monomial of `Sym^k H`.
fn act_on_monomial(d: &ThetaDerivation, m: &[Letter]) -> Vec<(Vec<Letter>, Q)> {
    let mut out: FxHashMap<Vec<Letter>, Q> = FxHashMap::default();
    for i in 0..m.len() {
        for (w, c) in d.value(m[i]).terms() {
            let mut v = m.to_vec();
            v[i] = w.letters()[0];
            v.sort_unstable();
            *out.entry(v).or_insert_with(Q::zero) += c;
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Invariant vectors of `Λ²Sym^{2n+1}H` under the degree-0 θ-derivations,
/// as coefficient maps on pairs `p < q` of monomials.
pub fn invariant_wedges(alphabet: Alphabet, n: usize) -> Result<(Vec<Vec<Letter>>, Vec<Vec<((usize, usize), Q)>>)> {
    let monos = sym_monomials(alphabet.rank(), 2 * n + 1);
    let index: FxHashMap<Vec<Letter>, usize> = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let der0 = theta_der_basis(alphabet, 0, DerKind::Lie)?;
    let ders: Vec<&ThetaDerivation> = der0.basis();
    let actions: Vec<Vec<Vec<(usize, Q)>>> = ders
        .iter()
        .map(|d| {
            monos
                .iter()
                .map(|m| act_on_monomial(d, m).into_iter().map(|(v, c)| (index[&v], c)).collect())
                .collect()
        })
        .collect();
    let mut unknown: Interner<(usize, usize)> = Interner::new();
    for p in 0..monos.len() {
        for r in p + 1..monos.len() {
            unknown.id(&(p, r));
        }
    }
    let mut eq: Interner<(usize, usize, usize)> = Interner::new();
    let mut cols: Vec<SparseVec<Q>> = Vec::with_capacity(unknown.len());
    for u in 0..unknown.len() {
        let (p, r) = *unknown.key(u);
        let mut col: FxHashMap<usize, Q> = FxHashMap::default();
        for (di, act) in actions.iter().enumerate() {
            let mut add = |x: usize, y: usize, c: &Q| {
                if x == y {
                    return;
                }
                let (lo, hi, s) = if x < y { (x, y, q(1)) } else { (y, x, q(-1)) };
                *col.entry(eq.id(&(di, lo, hi))).or_insert_with(Q::zero) += c * s;
            };
            for (x, c) in &act[p] {
                add(*x, r, c);
            }
            for (y, c) in &act[r] {
                add(p, *y, c);
            }
        }
        let mut col: SparseVec<Q> = col.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        col.sort_by_key(|e| e.0);
        cols.push(col);
    }
    let rows = transpose(&cols, eq.len());
    let ker = kernel(&rows, unknown.len());
    let vecs = ker
        .into_iter()
        .map(|v| primitive(&v).into_iter().map(|(i, c)| (*unknown.key(i), c)).collect())
        .collect();
    Ok((monos, vecs))
}

/// `μ²_{2n+1}`: the bracket image of the invariant line in `Λ²Sym^{2n+1}H`.
pub fn mu_squared(alphabet: Alphabet, n: usize) -> Result<ThetaDerivation> {
    let (monos, inv) = invariant_wedges(alphabet, n)?;
    if inv.len() != 1 {
        return Err(Error::Invariant(format!("invariant line has dimension {}", inv.len())));
    }
    let mus: Vec<ThetaDerivation> = monos.iter().map(|m| mu_odd(alphabet, m)).collect::<Result<_>>()?;
    let deg = 2 * (2 * n as i32 + 1);
    // Σ_{p<r} c_pr [μ_p, μ_r] = ½ Σ_p [μ_p, ν_p] with ν_p = Σ_r c_pr μ_r, c antisymmetric.
    let mut partners: Vec<Vec<(usize, Q)>> = vec![Vec::new(); monos.len()];
    for ((p, r), c) in &inv[0] {
        partners[*p].push((*r, c.clone()));
        partners[*r].push((*p, -c.clone()));
    }
    let mut acc = ThetaDerivation::zero(alphabet, deg, DerKind::Lie);
    for (p, ps) in partners.iter().enumerate() {
        if ps.is_empty() {
            continue;
        }
        let mut nu = ThetaDerivation::zero(alphabet, 2 * n as i32 + 1, DerKind::Lie);
        for (r, c) in ps {
            nu.add_scaled(&mus[*r], c)?;
        }
        acc.add_scaled(&mus[p].bracket(&nu)?, &qf(1, 2))?;
    }
    Ok(acc)
}

/// `δ(κ⁻¹(μ²_{2n+1}))`.
pub fn explore_mu2(alphabet: Alphabet, n: usize) -> Result<CyclicPair> {
    let d = mu_squared(alphabet, n)?;
    turaev_cobracket(&kappa_inverse(&d)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_counts() {
        assert_eq!(sym_monomials(4, 3).len(), 20);
    }

    #[test]
    fn mu_is_symmetric_and_theta() {
        let al = Alphabet::symplectic(2).unwrap();
        let d = mu_odd(al, &[0, 0, 0]).unwrap();
        assert!(d.satisfies_theta().unwrap());
        assert_eq!(mu_odd(al, &[0, 1, 2]).unwrap(), mu_odd(al, &[2, 0, 1]).unwrap());
        assert!(crate::lie::is_lie(d.value(1)));
    }
}
