//! Derivations of the free Lie and tensor algebras, stored by their values on
//! generators.

use num_traits::Zero;

use crate::alphabet::{Alphabet, Letter, Weight, Word};
use crate::coef::{q, Q};
use crate::error::{Error, Result};
use crate::lie::{is_lie, LiePoly};
use crate::tensor::{theta_tensor, TensorPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DerKind {
    Lie,
    Tensor,
}

impl DerKind {
    pub fn name(&self) -> &'static str {
        match self {
            DerKind::Lie => "lie",
            DerKind::Tensor => "tensor",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(DerKind::Lie),
            "tensor" => Ok(DerKind::Tensor),
            other => Err(Error::InvalidArgument(format!("unknown derivation kind `{other}`"))),
        }
    }
}

/// A derivation homogeneous of degree `m`: every generator goes to a
/// polynomial of degree `m + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaDerivation {
    alphabet: Alphabet,
    degree: i32,
    kind: DerKind,
    values: Vec<TensorPoly>,
}

impl ThetaDerivation {
    /// Builds a derivation, checking homogeneity and, for the Lie kind, that
    /// every value is a Lie element.
    pub fn new(alphabet: Alphabet, degree: i32, kind: DerKind, values: Vec<TensorPoly>) -> Result<Self> {
        let d = Self::new_unchecked(alphabet, degree, kind, values)?;
        if kind == DerKind::Lie {
            for (l, v) in d.values.iter().enumerate() {
                if !is_lie(v) {
                    return Err(Error::NotLie(format!("value on {}", alphabet.letter_name(l as Letter))));
                }
            }
        }
        Ok(d)
    }

    /// Builds a derivation checking only shape and homogeneity.
    pub fn new_unchecked(alphabet: Alphabet, degree: i32, kind: DerKind, values: Vec<TensorPoly>) -> Result<Self> {
        let min = if kind == DerKind::Lie { 0 } else { -1 };
        if degree < min {
            return Err(Error::InvalidArgument(format!("degree {degree} below {min} for {} kind", kind.name())));
        }
        if values.len() != alphabet.rank() {
            return Err(Error::InvalidArgument(format!(
                "expected {} generator values, got {}",
                alphabet.rank(),
                values.len()
            )));
        }
        for v in &values {
            alphabet.check_same(&v.alphabet())?;
            if v.terms().any(|(w, _)| w.len() as i32 != degree + 1) {
                return Err(Error::InvalidArgument(format!("value not homogeneous of degree {}", degree + 1)));
            }
        }
        Ok(ThetaDerivation { alphabet, degree, kind, values })
    }

    pub fn zero(alphabet: Alphabet, degree: i32, kind: DerKind) -> Self {
        ThetaDerivation { alphabet, degree, kind, values: vec![TensorPoly::zero(alphabet); alphabet.rank()] }
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

    pub fn values(&self) -> &[TensorPoly] {
        &self.values
    }

    pub fn value(&self, l: Letter) -> &TensorPoly {
        &self.values[l as usize]
    }

    pub fn value_lie(&self, l: Letter) -> LiePoly {
        LiePoly::from_tensor_unchecked(self.values[l as usize].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Reinterprets with another kind; Lie kind requires Lie values.
    pub fn with_kind(&self, kind: DerKind) -> Result<Self> {
        Self::new(self.alphabet, self.degree, kind, self.values.clone())
    }

    /// Evaluates the derivation on a tensor.
    pub fn apply(&self, t: &TensorPoly) -> TensorPoly {
        t.apply_derivation(&self.values)
    }

    /// `D(Σ_j a_j b_j − b_j a_j)`.
    pub fn theta_residual(&self) -> Result<TensorPoly> {
        Ok(self.apply(&theta_tensor(self.alphabet)?))
    }

    pub fn satisfies_theta(&self) -> Result<bool> {
        Ok(self.theta_residual()?.is_zero())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.alphabet.check_same(&other.alphabet)?;
        if self.kind != other.kind {
            return Err(Error::InvalidArgument(format!(
                "kind mismatch: {} vs {}",
                self.kind.name(),
                other.kind.name()
            )));
        }
        Ok(())
    }

    /// `[D1, D2] = D1∘D2 − D2∘D1`, evaluated on generators.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let values = (0..self.alphabet.rank())
            .map(|l| {
                let mut v = self.apply(&other.values[l]);
                v.add_scaled(&other.apply(&self.values[l]), &q(-1));
                v
            })
            .collect();
        Ok(ThetaDerivation { alphabet: self.alphabet, degree: self.degree + other.degree, kind: self.kind, values })
    }

    pub fn add_scaled(&mut self, other: &Self, c: &Q) -> Result<()> {
        self.check_compatible(other)?;
        if self.degree != other.degree && !other.is_zero() {
            return Err(Error::InvalidArgument("degree mismatch in sum".into()));
        }
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            a.add_scaled(b, c);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut d = self.clone();
        d.add_scaled(other, &q(1))?;
        Ok(d)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut d = self.clone();
        d.add_scaled(other, &q(-1))?;
        Ok(d)
    }

    pub fn scale(&self, c: &Q) -> Self {
        ThetaDerivation {
            alphabet: self.alphabet,
            degree: self.degree,
            kind: self.kind,
            values: self.values.iter().map(|v| v.scale(c)).collect(),
        }
    }

    /// Torus weight shift `λ` with `wt D(x) = wt x + λ` for all terms, if one exists.
    pub fn torus_shift(&self) -> Option<Weight> {
        let mut shift: Option<Weight> = None;
        for (l, v) in self.values.iter().enumerate() {
            let base = self.alphabet.letter_weight(l as Letter);
            for (w, _) in v.terms() {
                let mut s = self.alphabet.word_weight(w);
                for (x, y) in s.iter_mut().zip(base.iter()) {
                    *x -= y;
                }
                match &shift {
                    None => shift = Some(s),
                    Some(t) if *t == s => {}
                    Some(_) => return None,
                }
            }
        }
        Some(shift.unwrap_or_else(|| self.alphabet.zero_weight()))
    }

    /// Sparse coordinates keyed by `(generator, word)`, sorted.
    pub fn coordinates(&self) -> Vec<((Letter, Word), Q)> {
        let mut out: Vec<((Letter, Word), Q)> = Vec::new();
        for (l, v) in self.values.iter().enumerate() {
            for (w, c) in v.terms() {
                out.push(((l as Letter, w.clone()), c.clone()));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Splits into torus-homogeneous pieces.
    pub fn torus_components(&self) -> Vec<(Weight, ThetaDerivation)> {
        let mut parts: std::collections::BTreeMap<Weight, ThetaDerivation> = std::collections::BTreeMap::new();
        for (l, v) in self.values.iter().enumerate() {
            let base = self.alphabet.letter_weight(l as Letter);
            for (w, c) in v.terms() {
                let mut s = self.alphabet.word_weight(w);
                for (x, y) in s.iter_mut().zip(base.iter()) {
                    *x -= y;
                }
                let part = parts.entry(s).or_insert_with(|| ThetaDerivation::zero(self.alphabet, self.degree, self.kind));
                part.values[l].add_term(w.clone(), c.clone());
            }
        }
        parts.into_iter().collect()
    }
}

/// `Σ_i (a_i ⊗ D(b_i) − b_i ⊗ D(a_i))`, flattened to words `u·w`.
pub(crate) fn dual_tensor(d: &ThetaDerivation) -> Result<TensorPoly> {
    let g = d.alphabet.require_symplectic("the dual tensor of a derivation")?;
    let mut t = TensorPoly::zero(d.alphabet);
    for i in 1..=g {
        let (a, b) = (Alphabet::a(i), Alphabet::b(i));
        t.add_scaled(&d.value(b).left_letter(a), &q(1));
        t.add_scaled(&d.value(a).left_letter(b), &q(-1));
    }
    Ok(t)
}

/// Sum of `c·D` over a list, all of one degree and kind.
pub fn linear_combination(alphabet: Alphabet, degree: i32, kind: DerKind, terms: &[(Q, &ThetaDerivation)]) -> Result<ThetaDerivation> {
    let mut out = ThetaDerivation::zero(alphabet, degree, kind);
    for (c, d) in terms {
        if c.is_zero() {
            continue;
        }
        out.add_scaled(d, c)?;
    }
    Ok(out)
}
