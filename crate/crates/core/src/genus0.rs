//! Special derivations of the genus-zero free Lie algebra, the divergence
//! cocycle, the edge map and the depth filtration on three punctures.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter, Word};
use crate::coef::{q, qf, Q};
use crate::combinat::{binomial, necklaces};
use crate::cyclic::{cyclic_project, CyclicPoly};
use crate::error::{Error, Result};
use crate::lie::{is_lie, lie_basis};
use crate::linalg::{kernel, solve, transpose, Echelon, Interner, SparseVec};
use crate::tensor::TensorPoly;

/// Solves `[x, e] = y` for `x`, choosing the coefficient of `e^d` to be zero.
/// Returns `None` if `y` is not in the image of `ad(−e)`.
pub fn solve_right_bracket(y: &TensorPoly, e: Letter) -> Option<TensorPoly> {
    let al = y.alphabet();
    let mut x = TensorPoly::zero(al);
    // A word e^p m e^q (q ≥ 1, m not starting or ending with e) contributes its
    // coefficient to x(e^{p+i} m e^{q−1−i}) for 0 ≤ i < q.
    for (w, c) in y.terms() {
        let s = w.letters();
        if s.iter().all(|&l| l == e) {
            continue;
        }
        let p = s.iter().take_while(|&&l| l == e).count();
        let qn = s.iter().rev().take_while(|&&l| l == e).count();
        let mid = &s[p..s.len() - qn];
        for i in 0..qn {
            let mut v = smallvec::SmallVec::with_capacity(s.len() - 1);
            v.extend(std::iter::repeat(e).take(p + i));
            v.extend_from_slice(mid);
            v.extend(std::iter::repeat(e).take(qn - 1 - i));
            x.add_term(Word(v), c.clone());
        }
    }
    let check = x.commutator(&TensorPoly::letter(al, e));
    (check == *y).then_some(x)
}

/// Per-puncture integer rotation numbers.
pub type RotationData = BTreeMap<usize, i64>;

/// A derivation `e_j ↦ [u_j, e_j]` of the boundary model, stored by the
/// components `u_j` for the free (non-base) punctures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialDer0 {
    alphabet: Alphabet,
    degree: usize,
    components: Vec<TensorPoly>,
}

impl SpecialDer0 {
    /// `components[l]` is `u` for the puncture of free letter `l`; all of degree `degree`.
    pub fn new(alphabet: Alphabet, degree: usize, components: Vec<TensorPoly>) -> Result<Self> {
        alphabet.require_boundary("special derivations")?;
        if components.len() != alphabet.rank() {
            return Err(Error::InvalidArgument(format!("expected {} components", alphabet.rank())));
        }
        for u in &components {
            alphabet.check_same(&u.alphabet())?;
            if u.terms().any(|(w, _)| w.len() != degree) {
                return Err(Error::InvalidArgument(format!("component not homogeneous of degree {degree}")));
            }
        }
        Ok(SpecialDer0 { alphabet, degree, components })
    }

    pub fn zero(alphabet: Alphabet, degree: usize) -> Self {
        SpecialDer0 { alphabet, degree, components: vec![TensorPoly::zero(alphabet); alphabet.rank()] }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> usize {
        self.alphabet.require_boundary("").map(|(_, b)| b).unwrap_or(0)
    }

    pub fn components(&self) -> &[TensorPoly] {
        &self.components
    }

    /// Component `u_j` for puncture `j`; zero for the base puncture.
    pub fn component(&self, puncture: usize) -> TensorPoly {
        match self.alphabet.letter_of_puncture(puncture) {
            Some(l) => self.components[l as usize].clone(),
            None => TensorPoly::zero(self.alphabet),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|u| u.is_zero())
    }

    /// Values `[u_j, e_j]` on the free letters.
    pub fn values(&self) -> Vec<TensorPoly> {
        self.components
            .iter()
            .enumerate()
            .map(|(l, u)| u.commutator(&TensorPoly::letter(self.alphabet, l as Letter)))
            .collect()
    }

    /// `Σ_j [u_j, e_j]`; the derivation kills the base class iff this vanishes.
    pub fn special_residual(&self) -> TensorPoly {
        let mut r = TensorPoly::zero(self.alphabet);
        for v in self.values() {
            r.add_scaled(&v, &q(1));
        }
        r
    }

    pub fn apply(&self, t: &TensorPoly) -> TensorPoly {
        t.apply_derivation(&self.values())
    }

    /// `[D_u, D_v] = D_w` with `w_j = D_u(v_j) − D_v(u_j) − [u_j, v_j]`.
    pub fn bracket(&self, other: &SpecialDer0) -> Result<SpecialDer0> {
        self.alphabet.check_same(&other.alphabet)?;
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(u, v)| {
                let mut w = self.apply(v);
                w.add_scaled(&other.apply(u), &q(-1));
                w.add_scaled(&u.commutator(v), &q(-1));
                w
            })
            .collect();
        Ok(SpecialDer0 { alphabet: self.alphabet, degree: self.degree + other.degree, components: comps })
    }

    pub fn add_scaled(&mut self, other: &SpecialDer0, c: &Q) -> Result<()> {
        self.alphabet.check_same(&other.alphabet)?;
        if self.degree != other.degree {
            return Err(Error::InvalidArgument("degree mismatch".into()));
        }
        for (a, b) in self.components.iter_mut().zip(&other.components) {
            a.add_scaled(b, c);
        }
        Ok(())
    }

    pub fn scale(&self, c: &Q) -> SpecialDer0 {
        SpecialDer0 {
            alphabet: self.alphabet,
            degree: self.degree,
            components: self.components.iter().map(|u| u.scale(c)).collect(),
        }
    }

    /// Recovers the components from derivation values on the free letters.
    /// Degree-1 components are taken orthogonal to their own letter.
    pub fn from_values(alphabet: Alphabet, values: &[TensorPoly]) -> Result<SpecialDer0> {
        alphabet.require_boundary("special derivations")?;
        let mut degree = None;
        let mut comps = Vec::with_capacity(values.len());
        for (l, v) in values.iter().enumerate() {
            let u = solve_right_bracket(v, l as Letter).ok_or_else(|| {
                Error::InvalidArgument(format!("value on {} is not of the form [u, e]", alphabet.letter_name(l as Letter)))
            })?;
            if let Some(d) = u.homogeneous_degree() {
                degree.get_or_insert(d);
            }
            comps.push(u);
        }
        SpecialDer0::new(alphabet, degree.unwrap_or(0), comps)
    }
}

/// Values of `e_{j,k}: e_t ↦ (δ_{jt} − δ_{kt})[e_j, e_k]` on the free letters.
pub fn ejk_values(alphabet: Alphabet, j: usize, k: usize) -> Result<Vec<TensorPoly>> {
    let (np, _) = alphabet.require_boundary("e_{j,k}")?;
    if j >= np || k >= np {
        return Err(Error::InvalidArgument(format!("puncture index out of range 0..{np}")));
    }
    let mut values = vec![TensorPoly::zero(alphabet); alphabet.rank()];
    if j == k {
        return Ok(values);
    }
    let ej = puncture_class(alphabet, j);
    let ek = puncture_class(alphabet, k);
    let br = ej.commutator(&ek);
    for (l, v) in values.iter_mut().enumerate() {
        let t = alphabet.puncture_of(l as Letter);
        if t == j {
            v.add_scaled(&br, &q(1));
        } else if t == k {
            v.add_scaled(&br, &q(-1));
        }
    }
    Ok(values)
}

/// The class `e_p` as a polynomial in the free letters.
pub fn puncture_class(alphabet: Alphabet, p: usize) -> TensorPoly {
    match alphabet.letter_of_puncture(p) {
        Some(l) => TensorPoly::letter(alphabet, l),
        None => {
            let mut t = TensorPoly::zero(alphabet);
            for l in alphabet.letters() {
                t.add_term(Word::letter(l), q(-1));
            }
            t
        }
    }
}

/// `e_{j,k}` in special form: when the base puncture is `j` or `k` the
/// derivation is corrected by the inner derivation that makes it kill `e_base`.
pub fn ejk_generator(alphabet: Alphabet, j: usize, k: usize) -> Result<SpecialDer0> {
    let (_, base) = alphabet.require_boundary("e_{j,k}")?;
    let mut values = ejk_values(alphabet, j, k)?;
    if j == k {
        return Ok(SpecialDer0::zero(alphabet, 1));
    }
    // D(e_base) = −Σ_free D(e_l); add ad_x with [x, e_base] = −D(e_base).
    if base == j || base == k {
        let other = if base == j { k } else { j };
        let x = puncture_class(alphabet, other);
        let x = if base == j { x } else { x.neg() };
        for (l, v) in values.iter_mut().enumerate() {
            v.add_scaled(&x.commutator(&TensorPoly::letter(alphabet, l as Letter)), &q(1));
        }
    }
    SpecialDer0::from_values(alphabet, &values)
}

/// Bracket of derivations given by values on free letters.
pub fn bracket_values(d1: &[TensorPoly], d2: &[TensorPoly]) -> Vec<TensorPoly> {
    d1.iter()
        .zip(d2)
        .map(|(v1, v2)| {
            let mut r = v2.apply_derivation(d1);
            r.add_scaled(&v1.apply_derivation(d2), &q(-1));
            r
        })
        .collect()
}

/// Whether the derivation is `ad_x` for a Lie element `x`.
pub fn is_inner(alphabet: Alphabet, values: &[TensorPoly]) -> Result<bool> {
    let degs: Vec<usize> = values.iter().filter_map(|v| v.homogeneous_degree()).collect();
    let Some(&d) = degs.first() else { return Ok(true) };
    if degs.iter().any(|&e| e != d) || d < 2 {
        return Ok(false);
    }
    let basis: Vec<TensorPoly> = lie_basis(alphabet, d - 1).into_iter().map(|(_, p)| p).collect();
    let mut idx: Interner<(usize, Word)> = Interner::new();
    let mut cols: Vec<SparseVec<Q>> = Vec::new();
    for p in &basis {
        let mut col: SparseVec<Q> = Vec::new();
        for l in alphabet.letters() {
            for (w, c) in p.commutator(&TensorPoly::letter(alphabet, l)).terms() {
                col.push((idx.id(&(l as usize, w.clone())), c.clone()));
            }
        }
        col.sort_by_key(|e| e.0);
        cols.push(col);
    }
    let mut rhs: SparseVec<Q> = Vec::new();
    for (l, v) in values.iter().enumerate() {
        for (w, c) in v.terms() {
            rhs.push((idx.id(&(l, w.clone())), c.clone()));
        }
    }
    rhs.sort_by_key(|e| e.0);
    Ok(solve(&cols, &rhs, idx.len()).is_some())
}

/// Outcome of checking the three relation families of `e_{j,k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsReport {
    pub sum_relations: usize,
    pub commuting_relations: usize,
    pub triangle_relations: usize,
    pub failures: Vec<String>,
}

impl RelationsReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, in the derivation representation on `n + 1` punctures:
/// `Σ_j e_{j,k}` is inner; `[e_{j,k}, e_{s,t}] = 0` for distinct indices;
/// `[e_{j,l} + e_{l,k}, e_{j,k}] = 0`.
pub fn relations_check(n: usize) -> Result<RelationsReport> {
    if n < 2 {
        return Err(Error::InvalidArgument("relations need n ≥ 2".into()));
    }
    let al = Alphabet::boundary(n + 1, 0)?;
    let np = n + 1;
    let e = |j: usize, k: usize| ejk_values(al, j, k);
    let mut rep = RelationsReport { sum_relations: 0, commuting_relations: 0, triangle_relations: 0, failures: Vec::new() };
    for k in 0..np {
        let mut sum = vec![TensorPoly::zero(al); al.rank()];
        for j in 0..np {
            for (s, v) in sum.iter_mut().zip(e(j, k)?) {
                s.add_scaled(&v, &q(1));
            }
        }
        rep.sum_relations += 1;
        if !is_inner(al, &sum)? {
            rep.failures.push(format!("Σ_j e_(j,{k}) is not inner"));
        }
    }
    for j in 0..np {
        for k in j + 1..np {
            for s in 0..np {
                for t in s + 1..np {
                    if [s, t].iter().any(|x| *x == j || *x == k) {
                        continue;
                    }
                    rep.commuting_relations += 1;
                    if bracket_values(&e(j, k)?, &e(s, t)?).iter().any(|v| !v.is_zero()) {
                        rep.failures.push(format!("[e_({j},{k}), e_({s},{t})] ≠ 0"));
                    }
                }
            }
        }
    }
    for j in 0..np {
        for k in 0..np {
            for l in 0..np {
                if j == k || k == l || j == l {
                    continue;
                }
                let mut lhs = e(j, l)?;
                for (a, b) in lhs.iter_mut().zip(e(l, k)?) {
                    a.add_scaled(&b, &q(1));
                }
                rep.triangle_relations += 1;
                if bracket_values(&lhs, &e(j, k)?).iter().any(|v| !v.is_zero()) {
                    rep.failures.push(format!("[e_({j},{l}) + e_({l},{k}), e_({j},{k})] ≠ 0"));
                }
            }
        }
    }
    Ok(rep)
}

/// `Σ_j |e_j u_j^{(j)}|` over the free punctures, with `u^{(j)}` the left coefficient of `e_j`.
pub fn divergence(d: &SpecialDer0) -> CyclicPoly {
    let al = d.alphabet;
    let mut t = TensorPoly::zero(al);
    for (l, u) in d.components.iter().enumerate() {
        let l = l as Letter;
        t.add_scaled(&u.left_coefficient(l).left_letter(l), &q(1));
    }
    cyclic_project(&t)
}

/// `Σ_j rot(j)·|u_j|`, using the degree-1 part of each component.
pub fn rotation_term(d: &SpecialDer0, rot: &RotationData) -> CyclicPoly {
    let al = d.alphabet;
    let mut out = CyclicPoly::zero(al);
    for (l, u) in d.components.iter().enumerate() {
        let p = al.puncture_of(l as Letter);
        let r = rot.get(&p).copied().unwrap_or(0);
        if r != 0 {
            out.add_scaled(&cyclic_project(&u.homogeneous_part(1)), &q(r));
        }
    }
    out
}

/// The graded edge map `div + r_rot`.
pub fn edge_map(d: &SpecialDer0, rot: &RotationData) -> CyclicPoly {
    divergence(d).add(&rotation_term(d, rot))
}

/// `Σ_j φ(e_j)|u_j|` for `φ` given on punctures.
pub fn edge_phi(d: &SpecialDer0, phi: &RotationData) -> CyclicPoly {
    rotation_term(d, phi)
}

/// `Σ_j (φ(e_j)|u_j| + φ(u_j)|e_j|)/2`, the symmetric-square form of the framing change.
pub fn edge_square(d: &SpecialDer0, phi: &RotationData) -> CyclicPoly {
    let al = d.alphabet;
    let phi_of = |t: &TensorPoly| -> Q {
        t.homogeneous_part(1)
            .terms()
            .map(|(w, c)| c * q(phi.get(&al.puncture_of(w.letters()[0])).copied().unwrap_or(0)))
            .sum()
    };
    let mut out = CyclicPoly::zero(al);
    for (l, u) in d.components.iter().enumerate() {
        let p = al.puncture_of(l as Letter);
        let fe = q(phi.get(&p).copied().unwrap_or(0));
        out.add_scaled(&cyclic_project(&u.homogeneous_part(1)), &(fe * qf(1, 2)));
        out.add_scaled(&CyclicPoly::word(al, &[l as Letter]), &(phi_of(u) * qf(1, 2)));
    }
    out
}

/// Basis of special derivations with Lie components of degree `d`
/// (degree-1 components orthogonal to their own letter).
pub fn sder_basis(alphabet: Alphabet, d: usize) -> Result<Vec<SpecialDer0>> {
    alphabet.require_boundary("special derivations")?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let basis: Vec<(Word, TensorPoly)> = lie_basis(alphabet, d);
    let mut unknowns: Vec<(Letter, &TensorPoly)> = Vec::new();
    for l in alphabet.letters() {
        for (w, p) in &basis {
            if d == 1 && w.letters()[0] == l {
                continue;
            }
            unknowns.push((l, p));
        }
    }
    let mut idx: Interner<Word> = Interner::new();
    let cols: Vec<SparseVec<Q>> = unknowns
        .iter()
        .map(|(l, p)| {
            let r = p.commutator(&TensorPoly::letter(alphabet, *l));
            let mut col: SparseVec<Q> = r.terms().map(|(w, c)| (idx.id(w), c.clone())).collect();
            col.sort_by_key(|e| e.0);
            col
        })
        .collect();
    let rows = transpose(&cols, idx.len());
    let ker = kernel(&rows, unknowns.len());
    Ok(ker
        .into_iter()
        .map(|v| {
            let mut comps = vec![TensorPoly::zero(alphabet); alphabet.rank()];
            for (i, c) in crate::linalg::primitive(&v) {
                let (l, p) = unknowns[i];
                comps[l as usize].add_scaled(p, &c);
            }
            SpecialDer0 { alphabet, degree: d, components: comps }
        })
        .collect())
}

/// `D·c`: the derivation applied to a representative, then projected.
pub fn der0_on_cyclic(d: &SpecialDer0, c: &CyclicPoly) -> CyclicPoly {
    cyclic_project(&d.apply(&c.representative()))
}

/// `div[D1,D2] − (D1·div D2 − D2·div D1)`.
pub fn cocycle_residual(d1: &SpecialDer0, d2: &SpecialDer0) -> Result<CyclicPoly> {
    let lhs = divergence(&d1.bracket(d2)?);
    let mut rhs = der0_on_cyclic(d1, &divergence(d2));
    rhs.add_scaled(&der0_on_cyclic(d2, &divergence(d1)), &q(-1));
    Ok(lhs.sub(&rhs))
}

/// Rank data for the correspondence `D_u ↦ Σ_j |e_j u_j|` in degree `d`:
/// `(dim SDer_d, rank of the images modulo |e_j^{d+1}|, dim of Σ_j |e_j L_d| modulo |e_j^{d+1}|)`.
pub fn sder_correspondence_ranks(alphabet: Alphabet, d: usize) -> Result<(usize, usize, usize)> {
    let basis = sder_basis(alphabet, d)?;
    let mut idx: Interner<Word> = Interner::new();
    let to_vec = |c: &CyclicPoly, idx: &mut Interner<Word>| -> SparseVec<Q> {
        let mut v: SparseVec<Q> = c.terms().map(|(w, a)| (idx.id(w), a.clone())).collect();
        v.sort_by_key(|e| e.0);
        v
    };
    let mut powers = Echelon::<Q>::new(usize::MAX);
    for l in alphabet.letters() {
        let p = CyclicPoly::word(alphabet, &vec![l; d + 1]);
        let v = to_vec(&p, &mut idx);
        powers.insert(&v);
    }
    let base_rank = powers.rank();
    let mut images = powers.clone();
    for dd in &basis {
        let mut t = TensorPoly::zero(alphabet);
        for (l, u) in dd.components.iter().enumerate() {
            t.add_scaled(&u.left_letter(l as Letter), &q(1));
        }
        let v = to_vec(&cyclic_project(&t), &mut idx);
        images.insert(&v);
    }
    let mut target = powers;
    for l in alphabet.letters() {
        for (_, p) in lie_basis(alphabet, d) {
            let v = to_vec(&cyclic_project(&p.left_letter(l)), &mut idx);
            target.insert(&v);
        }
    }
    Ok((basis.len(), images.rank() - base_rank, target.rank() - base_rank))
}

/// Cyclic words of weight `d` on three punctures lying in the symmetric
/// depth filtration `𝒟^k`: in every presentation, each letter has degree ≥ k.
pub fn depth_subspace(alphabet: Alphabet, d: usize, k: usize) -> Result<(Interner<Word>, Echelon<Q>)> {
    let (np, base) = alphabet.require_boundary("the depth filtration")?;
    if np != 3 {
        return Err(Error::Unsupported("the depth filtration is implemented for three punctures".into()));
    }
    let mut idx: Interner<Word> = Interner::new();
    let words: Vec<Word> = necklaces(2, d).into_iter().map(|w| Word(w.into())).collect();
    for w in &words {
        idx.id(w);
    }
    // Free letters have a monomial condition.
    let monomial: Vec<usize> = words
        .iter()
        .enumerate()
        .filter(|(_, w)| w.count(0) >= k && w.count(1) >= k)
        .map(|(i, _)| i)
        .collect();
    // The base letter: necklaces over (e_base, e_x) with e_base-degree ≥ k,
    // expanded in the free letters.
    let images = [puncture_class(alphabet, base), TensorPoly::letter(alphabet, 0)];
    let mut base_vecs: Vec<SparseVec<Q>> = Vec::new();
    for w in &words {
        if w.count(0) < k {
            continue;
        }
        let t = TensorPoly::monomial(alphabet, w.clone(), q(1)).substitute(&images);
        let c = cyclic_project(&t);
        let mut v: SparseVec<Q> = c.terms().map(|(w, a)| (idx.id(w), a.clone())).collect();
        v.sort_by_key(|e| e.0);
        base_vecs.push(v);
    }
    // Intersect span(base_vecs) with the monomial span: combinations whose
    // coordinates outside `monomial` vanish.
    let inside: rustc_hash::FxHashSet<usize> = monomial.iter().copied().collect();
    let mut rows: Vec<SparseVec<Q>> = vec![Vec::new(); idx.len()];
    for (j, v) in base_vecs.iter().enumerate() {
        for (i, c) in v {
            if !inside.contains(i) {
                rows[*i].push((j, c.clone()));
            }
        }
    }
    let ker = kernel(&rows, base_vecs.len());
    let mut ech = Echelon::new(idx.len());
    for kv in ker {
        let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
        for (j, c) in kv {
            for (i, a) in &base_vecs[j] {
                *acc.entry(*i).or_insert_with(Q::zero) += a * &c;
            }
        }
        let v: SparseVec<Q> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        ech.insert(&v);
    }
    Ok((idx, ech))
}

/// Canonical residue of `c` modulo `𝒟^k`.
pub fn depth_reduce(c: &CyclicPoly, k: usize) -> Result<CyclicPoly> {
    let al = c.alphabet();
    let mut out = CyclicPoly::zero(al);
    for d in c.degrees() {
        let (idx, ech) = depth_subspace(al, d, k)?;
        let part = c.homogeneous_part(d);
        let mut v: SparseVec<Q> = part.terms().map(|(w, a)| (idx.get(w).expect("necklace index"), a.clone())).collect();
        v.sort_by_key(|e| e.0);
        for (i, a) in ech.reduce(&v) {
            out.add_canonical(idx.key(i).clone(), a);
        }
    }
    Ok(out)
}

/// Three-puncture alphabet with base puncture 1; puncture 2 plays `∞`.
pub fn polylog_alphabet() -> Alphabet {
    Alphabet::boundary(3, 1).expect("valid alphabet")
}

/// Depth-one representative of `σ_{2m+1}` on the polylog quotient:
/// `u_0 = ad_{e_0}^{2m} e_1`, `u_∞ = ad_{e_∞}^{2m} e_1`, base puncture 1.
pub fn sigma_polylog(m: usize) -> Result<SpecialDer0> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let al = polylog_alphabet();
    let e1 = puncture_class(al, 1);
    let comps: Vec<TensorPoly> = al
        .letters()
        .map(|l| (0..2 * m).fold(e1.clone(), |acc, _| acc.ad_letter(l)))
        .collect();
    SpecialDer0::new(al, 2 * m + 1, comps)
}

/// `−Σ_{k=1}^{2m} (−1)^k C(2m,k) x^k y x^{2m−k}` in free letters `x`, `y`.
pub fn binomial_display(alphabet: Alphabet, x: Letter, y: Letter, m: usize) -> TensorPoly {
    let mut t = TensorPoly::zero(alphabet);
    for k in 1..=2 * m {
        let mut w: Vec<Letter> = vec![x; k];
        w.push(y);
        w.extend(std::iter::repeat(x).take(2 * m - k));
        let sign = if k % 2 == 0 { -1 } else { 1 };
        t.add_term(Word(w.into()), Q::from_integer(binomial(2 * m as u64, k as u64)) * q(sign));
    }
    t
}

/// Result of the polylog divergence identity check.
#[derive(Clone, Debug)]
pub struct AppendixAReport {
    pub m: usize,
    /// `e_a·u_a^{(a)}` equals the displayed binomial sum for `a = 0, ∞`.
    pub binomial_expansion_ok: bool,
    /// `div_1 = |e_0^{2m} e_∞| + |e_∞^{2m} e_0|` exactly.
    pub divergence_ok: bool,
    pub divergence: CyclicPoly,
    pub lhs_reduced: CyclicPoly,
    pub rhs_reduced: CyclicPoly,
    /// `div_1 ≡ −(1/(2m+1))(|e_0^{2m+1}| + |e_1^{2m+1}| + |e_∞^{2m+1}|)` mod `𝒟²`.
    pub identity_ok: bool,
}

impl AppendixAReport {
    pub fn passed(&self) -> bool {
        self.binomial_expansion_ok && self.divergence_ok && self.identity_ok
    }
}

pub fn appendix_a_check(m: usize) -> Result<AppendixAReport> {
    let d = sigma_polylog(m)?;
    let al = d.alphabet();
    let mut binom_ok = true;
    for l in al.letters() {
        let other = 1 - l;
        let lhs = d.components()[l as usize].left_coefficient(l).left_letter(l);
        binom_ok &= lhs == binomial_display(al, l, other, m);
    }
    let div = divergence(&d);
    let middle = CyclicPoly::word(al, &[&vec![0; 2 * m][..], &[1]].concat())
        .add(&CyclicPoly::word(al, &[&vec![1; 2 * m][..], &[0]].concat()));
    let mut rhs = TensorPoly::zero(al);
    for p in 0..3 {
        rhs.add_scaled(&puncture_class(al, p).pow(2 * m + 1), &q(1));
    }
    let rhs = cyclic_project(&rhs).scale(&qf(-1, 2 * m as i64 + 1));
    let lhs_reduced = depth_reduce(&div, 2)?;
    let rhs_reduced = depth_reduce(&rhs, 2)?;
    Ok(AppendixAReport {
        m,
        binomial_expansion_ok: binom_ok,
        divergence_ok: div == middle,
        identity_ok: lhs_reduced == rhs_reduced,
        divergence: div,
        lhs_reduced,
        rhs_reduced,
    })
}

/// Whether every component is a Lie element.
pub fn components_are_lie(d: &SpecialDer0) -> bool {
    d.components.iter().all(is_lie)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ad_solver_inverts() {
        let al = Alphabet::boundary(4, 0).unwrap();
        let x = TensorPoly::letter(al, 1).commutator(&TensorPoly::letter(al, 2)).commutator(&TensorPoly::letter(al, 0));
        let y = x.commutator(&TensorPoly::letter(al, 0));
        assert_eq!(solve_right_bracket(&y, 0).unwrap(), x);
        assert!(solve_right_bracket(&TensorPoly::word(al, &[1, 2]), 0).is_none());
    }

    #[test]
    fn ejk_action() {
        let al = Alphabet::boundary(4, 0).unwrap();
        let v = ejk_values(al, 1, 2).unwrap();
        let e1 = al.letter_of_puncture(1).unwrap();
        let e3 = al.letter_of_puncture(3).unwrap();
        let expect = TensorPoly::letter(al, e1).commutator(&TensorPoly::letter(al, al.letter_of_puncture(2).unwrap()));
        assert_eq!(v[e1 as usize], expect);
        assert!(v[e3 as usize].is_zero());
        let d = ejk_generator(al, 1, 2).unwrap();
        assert!(d.special_residual().is_zero());
    }

    #[test]
    fn depth_reduction_examples() {
        let al = polylog_alphabet();
        let c = CyclicPoly::word(al, &[0, 1]);
        assert_eq!(depth_reduce(&c, 2).unwrap(), c);
    }
}
