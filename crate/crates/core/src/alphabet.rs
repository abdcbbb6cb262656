//! Alphabets for the two surface models and words over them.

use std::fmt;

use smallvec::SmallVec;

use crate::coef::{q, Q};
use crate::error::{Error, Result};

/// Surface model carried by an alphabet.
///
/// `Symplectic { genus }` is the once-bounded genus-`g` surface with letters
/// `a1 < b1 < a2 < ... < bg`. `Boundary { punctures, base }` is the sphere
/// with `punctures` boundary classes `e0..e{punctures-1}` summing to zero; the
/// class of the base puncture is eliminated, so stored words only use the
/// remaining free letters in increasing puncture order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    Symplectic { genus: u8 },
    Boundary { punctures: u8, base: u8 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alphabet {
    model: Model,
}

pub type Letter = u8;

/// Torus weight of a word; letter `a_i` contributes `+e_i`, `b_i` contributes `-e_i`.
pub type Weight = SmallVec<[i32; 8]>;

pub const MAX_LETTERS: usize = 16;

impl Alphabet {
    pub fn symplectic(genus: usize) -> Result<Self> {
        if genus == 0 || 2 * genus > MAX_LETTERS {
            return Err(Error::InvalidArgument(format!("genus {genus} out of range 1..=8")));
        }
        Ok(Alphabet { model: Model::Symplectic { genus: genus as u8 } })
    }

    pub fn boundary(punctures: usize, base: usize) -> Result<Self> {
        if punctures < 3 || punctures > MAX_LETTERS + 1 {
            return Err(Error::InvalidArgument(format!(
                "boundary model needs 3..={} punctures, got {punctures}",
                MAX_LETTERS + 1
            )));
        }
        if base >= punctures {
            return Err(Error::InvalidArgument(format!("base puncture {base} out of range")));
        }
        Ok(Alphabet {
            model: Model::Boundary { punctures: punctures as u8, base: base as u8 },
        })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn is_symplectic(&self) -> bool {
        matches!(self.model, Model::Symplectic { .. })
    }

    pub fn genus(&self) -> usize {
        match self.model {
            Model::Symplectic { genus } => genus as usize,
            Model::Boundary { .. } => 0,
        }
    }

    /// Number of free letters.
    pub fn rank(&self) -> usize {
        match self.model {
            Model::Symplectic { genus } => 2 * genus as usize,
            Model::Boundary { punctures, .. } => punctures as usize - 1,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.rank() as Letter
    }

    pub fn require_symplectic(&self, what: &str) -> Result<usize> {
        match self.model {
            Model::Symplectic { genus } => Ok(genus as usize),
            Model::Boundary { .. } => Err(Error::ModelMismatch(format!(
                "{what} is only defined for the symplectic model"
            ))),
        }
    }

    pub fn require_boundary(&self, what: &str) -> Result<(usize, usize)> {
        match self.model {
            Model::Boundary { punctures, base } => Ok((punctures as usize, base as usize)),
            Model::Symplectic { .. } => Err(Error::ModelMismatch(format!(
                "{what} is only defined for the boundary model"
            ))),
        }
    }

    pub fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.describe(), other.describe()))
        }
    }

    pub fn describe(&self) -> String {
        match self.model {
            Model::Symplectic { genus } => format!("symplectic(g={genus})"),
            Model::Boundary { punctures, base } => format!("boundary(n+1={punctures}, base={base})"),
        }
    }

    /// In the symplectic model: `a_i` for even letters, `b_i` for odd ones.
    pub fn a(i: usize) -> Letter {
        (2 * (i - 1)) as Letter
    }

    pub fn b(i: usize) -> Letter {
        (2 * (i - 1) + 1) as Letter
    }

    /// Puncture index carried by a free letter of the boundary model.
    pub fn puncture_of(&self, letter: Letter) -> usize {
        match self.model {
            Model::Boundary { base, .. } => {
                if letter < base {
                    letter as usize
                } else {
                    letter as usize + 1
                }
            }
            Model::Symplectic { .. } => panic!("puncture_of on symplectic alphabet"),
        }
    }

    /// Free letter for a puncture, `None` for the base puncture.
    pub fn letter_of_puncture(&self, p: usize) -> Option<Letter> {
        match self.model {
            Model::Boundary { base, punctures } => {
                let base = base as usize;
                if p == base || p >= punctures as usize {
                    None
                } else if p < base {
                    Some(p as Letter)
                } else {
                    Some((p - 1) as Letter)
                }
            }
            Model::Symplectic { .. } => None,
        }
    }

    pub fn letter_name(&self, letter: Letter) -> String {
        match self.model {
            Model::Symplectic { .. } => {
                let i = letter as usize / 2 + 1;
                if letter % 2 == 0 {
                    format!("a{i}")
                } else {
                    format!("b{i}")
                }
            }
            Model::Boundary { .. } => format!("e{}", self.puncture_of(letter)),
        }
    }

    /// Parses a letter name into a linear combination of free letters.
    /// In the boundary model the base class expands to minus the sum of the
    /// free letters.
    pub fn parse_letter(&self, name: &str) -> Result<Vec<(Letter, Q)>> {
        let bad = || Error::UnknownLetter(name.to_string());
        match self.model {
            Model::Symplectic { genus } => {
                let (kind, idx) = name.split_at(1.min(name.len()));
                let i: usize = idx.parse().map_err(|_| bad())?;
                if i == 0 || i > genus as usize {
                    return Err(bad());
                }
                match kind {
                    "a" => Ok(vec![(Self::a(i), q(1))]),
                    "b" => Ok(vec![(Self::b(i), q(1))]),
                    _ => Err(bad()),
                }
            }
            Model::Boundary { punctures, base } => {
                let idx = name.strip_prefix('e').ok_or_else(bad)?;
                let p: usize = idx.parse().map_err(|_| bad())?;
                if p >= punctures as usize {
                    return Err(bad());
                }
                if p == base as usize {
                    Ok(self.letters().map(|l| (l, q(-1))).collect())
                } else {
                    Ok(vec![(self.letter_of_puncture(p).unwrap(), q(1))])
                }
            }
        }
    }

    /// Intersection pairing on letters of the symplectic model.
    pub fn pairing(&self, x: Letter, y: Letter) -> Result<i64> {
        self.require_symplectic("the intersection pairing")?;
        Ok(pair(x, y))
    }

    /// Torus weight of a single letter (symplectic: `±e_i`; boundary: unit vector per letter).
    pub fn letter_weight(&self, letter: Letter) -> Weight {
        match self.model {
            Model::Symplectic { genus } => {
                let mut w: Weight = SmallVec::from_elem(0, genus as usize);
                let i = letter as usize / 2;
                w[i] = if letter % 2 == 0 { 1 } else { -1 };
                w
            }
            Model::Boundary { .. } => {
                let mut w: Weight = SmallVec::from_elem(0, self.rank());
                w[letter as usize] = 1;
                w
            }
        }
    }

    pub fn zero_weight(&self) -> Weight {
        let n = match self.model {
            Model::Symplectic { genus } => genus as usize,
            Model::Boundary { .. } => self.rank(),
        };
        SmallVec::from_elem(0, n)
    }

    pub fn word_weight(&self, w: &Word) -> Weight {
        let mut out = self.zero_weight();
        for &l in w.letters() {
            match self.model {
                Model::Symplectic { .. } => {
                    let i = l as usize / 2;
                    out[i] += if l % 2 == 0 { 1 } else { -1 };
                }
                Model::Boundary { .. } => out[l as usize] += 1,
            }
        }
        out
    }
}

/// Symplectic pairing on letter indices: `<a_i, b_i> = 1 = -<b_i, a_i>`.
#[inline]
pub fn pair(x: Letter, y: Letter) -> i64 {
    if x / 2 != y / 2 || x == y {
        0
    } else if x % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The letter pairing nontrivially with `x`, with the sign of `<x, partner>`.
#[inline]
pub fn partner(x: Letter) -> (Letter, i64) {
    if x % 2 == 0 {
        (x + 1, 1)
    } else {
        (x - 1, -1)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// A word in letter indices; its length is the tensor degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Word(pub SmallVec<[Letter; 24]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(s: &[Letter]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn letter(l: Letter) -> Self {
        let mut v = SmallVec::new();
        v.push(l);
        Word(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Rotation starting at position `k`.
    pub fn rotated(&self, k: usize) -> Word {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let k = k % n;
        let mut v: SmallVec<[Letter; 24]> = SmallVec::with_capacity(n);
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Word {
        let s = &self.0;
        let n = s.len();
        if n <= 1 {
            return self.clone();
        }
        let mut best = 0;
        for k in 1..n {
            let mut i = 0;
            while i < n {
                let x = s[(k + i) % n];
                let y = s[(best + i) % n];
                if x != y {
                    if x < y {
                        best = k;
                    }
                    break;
                }
                i += 1;
            }
        }
        self.rotated(best)
    }

    /// Strictly smaller than all of its proper rotations.
    pub fn is_lyndon(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return false;
        }
        (1..n).all(|k| {
            let r = self.rotated(k);
            self.0 < r.0
        })
    }

    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn count(&self, l: Letter) -> usize {
        self.0.iter().filter(|&&x| x == l).count()
    }
}

impl From<&[Letter]> for Word {
    fn from(s: &[Letter]) -> Self {
        Word::from_slice(s)
    }
}
