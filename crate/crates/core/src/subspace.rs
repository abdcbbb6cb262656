//! Bases of θ-annihilating derivations, spans of derivations, the degree-1
//! Johnson map and the subalgebra it generates.

use std::collections::BTreeMap;

use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::alphabet::{Alphabet, Letter, Weight, Word};
use crate::coef::{q, Q};
use crate::combinat::all_words;
use crate::derivation::{DerKind, ThetaDerivation};
use crate::error::{Error, Result};
use crate::lie::lie_basis;
use crate::linalg::{primitive, transpose, Echelon, Interner, SparseVec};
use crate::tensor::TensorPoly;

/// A finite-dimensional space of torus-homogeneous derivations of one degree
/// and kind, held as a reduced basis per torus weight.
#[derive(Clone, Debug)]
pub struct Subspace {
    alphabet: Alphabet,
    degree: i32,
    kind: DerKind,
    blocks: BTreeMap<Weight, Vec<ThetaDerivation>>,
}

/// Reduced span of derivations sharing one torus shift.
struct BlockSpan {
    coords: Interner<(Letter, Word)>,
    echelon: Echelon<Q>,
    basis: Vec<ThetaDerivation>,
}

impl BlockSpan {
    fn new() -> Self {
        BlockSpan { coords: Interner::new(), echelon: Echelon::new(usize::MAX), basis: Vec::new() }
    }

    fn vector(&mut self, d: &ThetaDerivation) -> SparseVec<Q> {
        let mut v: SparseVec<Q> = d.coordinates().into_iter().map(|(k, c)| (self.coords.id(&k), c)).collect();
        v.sort_by_key(|e| e.0);
        v
    }

    fn insert(&mut self, d: ThetaDerivation) -> bool {
        let v = self.vector(&d);
        if self.echelon.insert(&v) {
            self.basis.push(d);
            true
        } else {
            false
        }
    }

    fn contains(&self, d: &ThetaDerivation) -> bool {
        let mut v: SparseVec<Q> = Vec::new();
        for (k, c) in d.coordinates() {
            match self.coords.get(&k) {
                Some(i) => v.push((i, c)),
                None => return false,
            }
        }
        v.sort_by_key(|e| e.0);
        self.echelon.contains(&v)
    }
}

impl Subspace {
    pub fn empty(alphabet: Alphabet, degree: i32, kind: DerKind) -> Self {
        Subspace { alphabet, degree, kind, blocks: BTreeMap::new() }
    }

    /// Reduces a spanning set to a basis; every vector must be torus-homogeneous.
    pub fn from_spanning(alphabet: Alphabet, degree: i32, kind: DerKind, vectors: Vec<ThetaDerivation>) -> Result<Self> {
        let mut grouped: BTreeMap<Weight, Vec<ThetaDerivation>> = BTreeMap::new();
        for d in vectors {
            if d.alphabet() != alphabet || d.degree() != degree || d.kind() != kind {
                return Err(Error::InvalidArgument("spanning vector of the wrong shape".into()));
            }
            if d.is_zero() {
                continue;
            }
            let w = d
                .torus_shift()
                .ok_or_else(|| Error::InvalidArgument("spanning vector is not torus-homogeneous".into()))?;
            grouped.entry(w).or_default().push(d);
        }
        let blocks: BTreeMap<Weight, Vec<ThetaDerivation>> = grouped
            .into_par_iter()
            .map(|(w, ds)| {
                let mut span = BlockSpan::new();
                for d in ds {
                    span.insert(d);
                }
                (w, span.basis)
            })
            .filter(|(_, b)| !b.is_empty())
            .collect();
        Ok(Subspace { alphabet, degree, kind, blocks })
    }

    pub(crate) fn from_blocks(alphabet: Alphabet, degree: i32, kind: DerKind, blocks: BTreeMap<Weight, Vec<ThetaDerivation>>) -> Self {
        Subspace { alphabet, degree, kind, blocks: blocks.into_iter().filter(|(_, b)| !b.is_empty()).collect() }
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn kind(&self) -> DerKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.blocks.values().map(|b| b.len()).sum()
    }

    pub fn basis(&self) -> Vec<&ThetaDerivation> {
        self.blocks.values().flatten().collect()
    }

    pub fn blocks(&self) -> &BTreeMap<Weight, Vec<ThetaDerivation>> {
        &self.blocks
    }

    /// Dimension of each torus-weight block.
    pub fn weight_multiplicities(&self) -> Vec<(Weight, usize)> {
        self.blocks.iter().map(|(w, b)| (w.clone(), b.len())).collect()
    }

    pub fn contains(&self, d: &ThetaDerivation) -> Result<bool> {
        if d.is_zero() {
            return Ok(true);
        }
        for (w, piece) in d.torus_components() {
            let Some(basis) = self.blocks.get(&w) else { return Ok(false) };
            let mut span = BlockSpan::new();
            for b in basis {
                span.insert(b.clone());
            }
            if !span.contains(&piece) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True if `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        for (w, basis) in &self.blocks {
            let Some(obasis) = other.blocks.get(w) else { return Ok(false) };
            let mut span = BlockSpan::new();
            for b in obasis {
                span.insert(b.clone());
            }
            if basis.iter().any(|d| !span.contains(d)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Candidate values of degree `d` for the solver: Lyndon basis or all words,
/// grouped by torus weight.
fn value_basis(alphabet: Alphabet, d: usize, kind: DerKind) -> FxHashMap<Weight, Vec<TensorPoly>> {
    let mut by_weight: FxHashMap<Weight, Vec<TensorPoly>> = FxHashMap::default();
    match kind {
        DerKind::Lie => {
            for (w, p) in lie_basis(alphabet, d) {
                by_weight.entry(alphabet.word_weight(&w)).or_default().push(p);
            }
        }
        DerKind::Tensor => {
            for w in all_words(alphabet.rank() as u8, d) {
                let w = Word(w.into());
                let wt = alphabet.word_weight(&w);
                by_weight.entry(wt).or_default().push(TensorPoly::monomial(alphabet, w, q(1)));
            }
        }
    }
    by_weight
}

/// Contribution of `x ↦ v` to `D(θ)`: `[v, b_j]` for `x = a_j`, `[a_j, v]` for `x = b_j`.
fn theta_column(x: Letter, v: &TensorPoly) -> TensorPoly {
    if x % 2 == 0 {
        v.commutator(&TensorPoly::letter(v.alphabet(), x + 1))
    } else {
        TensorPoly::letter(v.alphabet(), x - 1).commutator(v)
    }
}

/// Basis of the degree-`m` derivations killing `θ`, solved per torus weight.
pub fn theta_der_basis(alphabet: Alphabet, m: i32, kind: DerKind) -> Result<Subspace> {
    alphabet.require_symplectic("θ-derivations")?;
    let min = if kind == DerKind::Lie { 0 } else { -1 };
    if m < min {
        return Err(Error::InvalidArgument(format!("degree {m} out of range for {} kind", kind.name())));
    }
    let vb = value_basis(alphabet, (m + 1) as usize, kind);
    // Group unknowns (x, v) by the shift λ = wt(v) − wt(x).
    let mut unknowns: BTreeMap<Weight, Vec<(Letter, &TensorPoly)>> = BTreeMap::new();
    for x in alphabet.letters() {
        let wx = alphabet.letter_weight(x);
        for (wv, vs) in &vb {
            let lam: Weight = wv.iter().zip(wx.iter()).map(|(a, b)| a - b).collect();
            let entry = unknowns.entry(lam).or_default();
            for v in vs {
                entry.push((x, v));
            }
        }
    }
    let blocks: Vec<(Weight, Vec<ThetaDerivation>)> = unknowns
        .into_par_iter()
        .map(|(lam, cols)| {
            let mut rows_index: Interner<Word> = Interner::new();
            let mut columns: Vec<SparseVec<Q>> = Vec::with_capacity(cols.len());
            for (x, v) in &cols {
                let r = theta_column(*x, v);
                let mut col: SparseVec<Q> = r.terms().map(|(w, c)| (rows_index.id(w), c.clone())).collect();
                col.sort_by_key(|e| e.0);
                columns.push(col);
            }
            let rows = transpose(&columns, rows_index.len());
            let mut ech = Echelon::new(cols.len());
            for r in &rows {
                ech.insert(r);
            }
            let ders = ech
                .kernel()
                .into_iter()
                .map(|kv| {
                    let kv = primitive(&kv);
                    let mut values = vec![TensorPoly::zero(alphabet); alphabet.rank()];
                    for (i, c) in kv {
                        let (x, v) = cols[i];
                        values[x as usize].add_scaled(v, &c);
                    }
                    ThetaDerivation::new_unchecked(alphabet, m, kind, values).expect("homogeneous by construction")
                })
                .collect();
            (lam, ders)
        })
        .collect();
    Ok(Subspace::from_blocks(alphabet, m, kind, blocks.into_iter().collect()))
}

/// `τ₁(u₁∧u₂∧u₃)`: `v ↦ −(⟨u₁,v⟩[u₂,u₃] + ⟨u₂,v⟩[u₃,u₁] + ⟨u₃,v⟩[u₁,u₂])`.
pub fn tau1(alphabet: Alphabet, u: [Letter; 3]) -> Result<ThetaDerivation> {
    alphabet.require_symplectic("τ₁")?;
    for &l in &u {
        if l as usize >= alphabet.rank() {
            return Err(Error::UnknownLetter(format!("letter index {l}")));
        }
    }
    let br = |x: Letter, y: Letter| TensorPoly::letter(alphabet, x).commutator(&TensorPoly::letter(alphabet, y));
    let terms = [(u[0], br(u[1], u[2])), (u[1], br(u[2], u[0])), (u[2], br(u[0], u[1]))];
    let mut values = vec![TensorPoly::zero(alphabet); alphabet.rank()];
    for (v, val) in values.iter_mut().enumerate() {
        for (ui, b) in &terms {
            let p = crate::alphabet::pair(*ui, v as Letter);
            if p != 0 {
                val.add_scaled(b, &q(-p));
            }
        }
    }
    ThetaDerivation::new_unchecked(alphabet, 1, DerKind::Lie, values)
}

/// All `τ₁(u₁∧u₂∧u₃)` for letter triples `u₁ < u₂ < u₃`.
pub fn tau1_images(alphabet: Alphabet) -> Result<Vec<ThetaDerivation>> {
    let r = alphabet.rank() as Letter;
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                out.push(tau1(alphabet, [i, j, k])?);
            }
        }
    }
    Ok(out)
}

/// The degree-1-generated subalgebra in degrees `1..=m`: `J_1 = span τ₁(Λ³H)`,
/// `J_k = span [J_1, J_{k−1}]`.
pub fn johnson_image_tower(alphabet: Alphabet, m: usize) -> Result<Vec<Subspace>> {
    if m == 0 {
        return Err(Error::InvalidArgument("Johnson image starts in degree 1".into()));
    }
    let j1 = Subspace::from_spanning(alphabet, 1, DerKind::Lie, tau1_images(alphabet)?)?;
    let mut tower = vec![j1];
    for k in 2..=m {
        let prev = &tower[k - 2];
        let gens = tower[0].basis();
        let pairs: Vec<(&ThetaDerivation, &ThetaDerivation)> =
            gens.iter().flat_map(|a| prev.basis().into_iter().map(move |b| (*a, b))).collect();
        let brackets: Vec<ThetaDerivation> =
            pairs.par_iter().map(|(a, b)| a.bracket(b)).collect::<Result<Vec<_>>>()?;
        tower.push(Subspace::from_spanning(alphabet, k as i32, DerKind::Lie, brackets)?);
    }
    Ok(tower)
}

pub fn johnson_image(alphabet: Alphabet, m: usize) -> Result<Subspace> {
    Ok(johnson_image_tower(alphabet, m)?.pop().unwrap())
}
