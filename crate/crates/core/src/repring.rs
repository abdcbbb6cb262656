//! Characters of `Sp(2g)`: Weyl characters, decomposition, Adams operations,
//! exterior and symmetric powers, and Möbius inversion of graded Lie
//! algebras from homology Euler characteristics.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use crate::alphabet::Alphabet;
use crate::combinat::{divisors, mobius};
use crate::error::{Error, Result};
use crate::lie::lie_basis;
use crate::subspace::Subspace;

pub type Exponent = Vec<i32>;
pub type Partition = Vec<u32>;

/// A Laurent polynomial in `x_1..x_g` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpCharacter {
    genus: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl SpCharacter {
    pub fn zero(genus: usize) -> Self {
        SpCharacter { genus, terms: BTreeMap::new() }
    }

    pub fn trivial(genus: usize) -> Self {
        Self::monomial(genus, vec![0; genus], BigInt::one())
    }

    pub fn monomial(genus: usize, e: Exponent, c: BigInt) -> Self {
        let mut s = Self::zero(genus);
        s.add_term(e, c);
        s
    }

    /// The defining representation `H`.
    pub fn defining(genus: usize) -> Self {
        let mut s = Self::zero(genus);
        for i in 0..genus {
            for sgn in [1, -1] {
                let mut e = vec![0; genus];
                e[i] = sgn;
                s.add_term(e, BigInt::one());
            }
        }
        s
    }

    /// Builds a character from torus weight multiplicities.
    pub fn from_weights(genus: usize, weights: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        let mut s = Self::zero(genus);
        for (e, c) in weights {
            if e.len() != genus {
                return Err(Error::InvalidArgument(format!("weight {e:?} has wrong length for genus {genus}")));
            }
            s.add_term(e, c);
        }
        Ok(s)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<Exponent, BigInt> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coef(&self, e: &[i32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::InvalidArgument(format!("genus mismatch: {} vs {}", self.genus, other.genus)));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &BigInt) {
        for (e, v) in &other.terms {
            self.add_term(e.clone(), v * c);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = self.clone();
        s.add_scaled(other, &BigInt::one());
        Ok(s)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut s = self.clone();
        s.add_scaled(other, &-BigInt::one());
        Ok(s)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let mut s = Self::zero(self.genus);
        s.add_scaled(self, c);
        s
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut acc: FxHashMap<Exponent, BigInt> = FxHashMap::default();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_default() += c1 * c2;
            }
        }
        Ok(SpCharacter { genus: self.genus, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() })
    }

    /// Exact division of every coefficient by `n`.
    fn div_exact(&self, n: &BigInt) -> Result<Self> {
        let mut s = Self::zero(self.genus);
        for (e, c) in &self.terms {
            let (qt, r) = c.div_rem(n);
            if !r.is_zero() {
                return Err(Error::Invariant(format!("coefficient {c} not divisible by {n}")));
            }
            s.add_term(e.clone(), qt);
        }
        Ok(s)
    }

    /// Evaluation at `x = 1`.
    pub fn dimension(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// `ψ^d`: `x_i ↦ x_i^d`.
    pub fn adams(&self, d: u32) -> Self {
        let mut s = Self::zero(self.genus);
        for (e, c) in &self.terms {
            s.add_term(e.iter().map(|x| x * d as i32).collect(), c.clone());
        }
        s
    }

    /// `Λ^k` by Newton's identities.
    pub fn exterior_power(&self, k: usize) -> Self {
        self.newton(k, true)
    }

    /// `Sym^k` by Newton's identities.
    pub fn symmetric_power(&self, k: usize) -> Self {
        self.newton(k, false)
    }

    fn newton(&self, k: usize, alternating: bool) -> Self {
        let psis: Vec<Self> = (1..=k).map(|i| self.adams(i as u32)).collect();
        let mut e = vec![Self::trivial(self.genus)];
        for n in 1..=k {
            let mut acc = Self::zero(self.genus);
            for i in 1..=n {
                let sign = if alternating && i % 2 == 0 { -1 } else { 1 };
                let prod = psis[i - 1].mul(&e[n - i]).expect("same genus");
                acc.add_scaled(&prod, &BigInt::from(sign));
            }
            e.push(acc.div_exact(&BigInt::from(n)).expect("Newton identities are integral"));
        }
        e.pop().expect("nonempty")
    }

    /// Whether the character is invariant under signed permutations.
    pub fn is_weyl_invariant(&self) -> bool {
        let mut orbits: BTreeMap<Exponent, (usize, BigInt)> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = dominant(e);
            match orbits.get_mut(&d) {
                Some((n, c0)) => {
                    if c0 != c {
                        return false;
                    }
                    *n += 1;
                }
                None => {
                    orbits.insert(d, (1, c.clone()));
                }
            }
        }
        orbits.iter().all(|(d, (n, _))| *n == orbit_size(d))
    }
}

/// The dominant representative `|e|` sorted decreasingly.
fn dominant(e: &[i32]) -> Exponent {
    let mut d: Exponent = e.iter().map(|x| x.abs()).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

fn orbit_size(d: &[i32]) -> usize {
    let g = d.len();
    let mut size: usize = (1..=g).product();
    let mut i = 0;
    while i < g {
        let mut j = i;
        while j < g && d[j] == d[i] {
            j += 1;
        }
        size /= (1..=j - i).product::<usize>();
        i = j;
    }
    size << d.iter().filter(|&&x| x != 0).count()
}

fn check_partition(lambda: &[u32], genus: usize) -> Result<Partition> {
    let mut p: Partition = lambda.iter().copied().filter(|&x| x > 0).collect();
    if p.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidArgument(format!("{lambda:?} is not a partition")));
    }
    if p.len() > genus {
        return Err(Error::InvalidArgument(format!("partition {lambda:?} has more than {genus} parts")));
    }
    p.resize(genus, 0);
    Ok(p)
}

fn positive_roots(g: usize) -> Vec<Exponent> {
    let mut roots = Vec::new();
    for i in 0..g {
        for j in i + 1..g {
            let mut a = vec![0; g];
            a[i] = 1;
            a[j] = -1;
            roots.push(a.clone());
            a[j] = 1;
            roots.push(a);
        }
        let mut a = vec![0; g];
        a[i] = 2;
        roots.push(a);
    }
    roots
}

fn dot(a: &[i32], b: &[i32]) -> i64 {
    a.iter().zip(b).map(|(x, y)| (*x as i64) * (*y as i64)).sum()
}

/// Dominant weights `μ ≤ λ` in the dominance order of type C.
fn dominant_weights_below(lambda: &[i32]) -> Vec<Exponent> {
    fn rec(i: usize, cap: i32, lambda: &[i32], s_lambda: i32, s_mu: i32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        let g = lambda.len();
        if i == g {
            let diff = s_lambda - s_mu;
            if diff >= 0 && diff % 2 == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for v in (0..=cap).rev() {
            let sl = s_lambda + lambda[i];
            let sm = s_mu + v;
            if i + 1 < g && sl < sm {
                continue;
            }
            cur.push(v);
            rec(i + 1, v, lambda, sl, sm, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    let cap = lambda.iter().sum::<i32>();
    rec(0, cap, lambda, 0, 0, &mut Vec::new(), &mut out);
    out
}

/// Dominant weight multiplicities of `V_λ` by Freudenthal's formula.
pub fn dominant_multiplicities(lambda: &[u32], genus: usize) -> Result<BTreeMap<Exponent, BigInt>> {
    let lam: Exponent = check_partition(lambda, genus)?.iter().map(|&x| x as i32).collect();
    let rho: Exponent = (1..=genus as i32).rev().collect();
    let roots = positive_roots(genus);
    let lr: Exponent = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let norm_lr = dot(&lr, &lr);
    let mut weights = dominant_weights_below(&lam);
    // Process from the top: larger weights have larger (μ+ρ)-norm differences last.
    weights.sort_by_key(|w| std::cmp::Reverse(dot(w, &rho)));
    let mut mult: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    for mu in weights {
        if mu == lam {
            mult.insert(mu, BigInt::one());
            continue;
        }
        let mr: Exponent = mu.iter().zip(&rho).map(|(a, b)| a + b).collect();
        let denom = norm_lr - dot(&mr, &mr);
        let mut num = BigInt::zero();
        for a in &roots {
            let mut k = 1;
            loop {
                let w: Exponent = mu.iter().zip(a).map(|(m, x)| m + k * x).collect();
                let d = dominant(&w);
                let Some(m) = mult.get(&d) else { break };
                num += m * BigInt::from(dot(&w, a));
                k += 1;
            }
        }
        let val = BigRational::new(num * 2, BigInt::from(denom));
        if !val.is_integer() || denom <= 0 {
            return Err(Error::Invariant(format!("non-integral multiplicity at {mu:?}")));
        }
        let v = val.to_integer();
        if !v.is_zero() {
            mult.insert(mu, v);
        }
    }
    Ok(mult)
}

/// All signed permutations of a dominant weight.
fn orbit(d: &[i32]) -> Vec<Exponent> {
    let mut perms: Vec<Exponent> = Vec::new();
    let mut sorted = d.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<Exponent> = Vec::new();
    // Distinct permutations by lexicographic successor.
    loop {
        perms.push(sorted.clone());
        let n = sorted.len();
        let Some(i) = (1..n).rev().find(|&i| sorted[i - 1] < sorted[i]) else { break };
        let j = (i..n).rev().find(|&j| sorted[j] > sorted[i - 1]).expect("successor");
        sorted.swap(i - 1, j);
        sorted[i..].reverse();
    }
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u32..(1 << nz.len()) {
            let mut e = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    e[i] = -e[i];
                }
            }
            out.push(e);
        }
    }
    out
}

/// Character of the irreducible module `V_λ`.
pub fn irr_character(lambda: &[u32], genus: usize) -> Result<SpCharacter> {
    let mut s = SpCharacter::zero(genus);
    for (d, m) in dominant_multiplicities(lambda, genus)? {
        for e in orbit(&d) {
            s.add_term(e, m.clone());
        }
    }
    Ok(s)
}

/// Weyl's dimension formula.
pub fn irr_dimension(lambda: &[u32], genus: usize) -> Result<BigInt> {
    let lam: Exponent = check_partition(lambda, genus)?.iter().map(|&x| x as i32).collect();
    let rho: Exponent = (1..=genus as i32).rev().collect();
    let lr: Exponent = lam.iter().zip(&rho).map(|(a, b)| a + b).collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for a in positive_roots(genus) {
        num *= dot(&lr, &a);
        den *= dot(&rho, &a);
    }
    Ok(num / den)
}

/// Virtual module: partition → multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RepElement {
    pub terms: BTreeMap<Partition, BigInt>,
}

impl RepElement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn irreducible(lambda: &[u32]) -> Self {
        let mut r = Self::new();
        r.add(lambda.iter().copied().filter(|&x| x > 0).collect(), BigInt::one());
        r
    }

    pub fn add(&mut self, lambda: Partition, m: BigInt) {
        let e = self.terms.entry(lambda.clone()).or_default();
        *e += m;
        if e.is_zero() {
            self.terms.remove(&lambda);
        }
    }

    pub fn multiplicity(&self, lambda: &[u32]) -> BigInt {
        let key: Partition = lambda.iter().copied().filter(|&x| x > 0).collect();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn character(&self, genus: usize) -> Result<SpCharacter> {
        let mut s = SpCharacter::zero(genus);
        for (l, m) in &self.terms {
            s.add_scaled(&irr_character(l, genus)?, m);
        }
        Ok(s)
    }

    pub fn dimension(&self, genus: usize) -> Result<BigInt> {
        let mut d = BigInt::zero();
        for (l, m) in &self.terms {
            d += irr_dimension(l, genus)? * m;
        }
        Ok(d)
    }
}

/// Unique expansion of a Weyl-invariant character into irreducibles,
/// by repeatedly subtracting the irreducible of the highest remaining weight.
pub fn decompose(chi: &SpCharacter) -> Result<RepElement> {
    if !chi.is_weyl_invariant() {
        return Err(Error::InvalidArgument("character is not Weyl-invariant".into()));
    }
    let g = chi.genus;
    let mut rest = chi.clone();
    let mut out = RepElement::new();
    let rho: Exponent = (1..=g as i32).rev().collect();
    while !rest.is_zero() {
        // A weight maximal for ⟨·, ρ⟩ among dominant weights is maximal in dominance order.
        let top = rest
            .terms
            .iter()
            .filter(|(e, _)| dominant(e) == **e)
            .max_by_key(|(e, _)| (dot(e, &rho), (*e).clone()))
            .map(|(e, c)| (e.clone(), c.clone()))
            .ok_or_else(|| Error::Invariant("no dominant weight left".into()))?;
        let lambda: Partition = top.0.iter().map(|&x| x as u32).filter(|&x| x > 0).collect();
        rest.add_scaled(&irr_character(&lambda, g)?, &-top.1.clone());
        out.add(lambda, top.1);
    }
    Ok(out)
}

/// Character of a subspace of derivations from its torus weight blocks.
pub fn char_of_subspace(s: &Subspace) -> Result<SpCharacter> {
    let g = s.alphabet().require_symplectic("characters")?;
    let chi = SpCharacter::from_weights(
        g,
        s.weight_multiplicities().into_iter().map(|(w, n)| (w.to_vec(), BigInt::from(n))),
    )?;
    if !chi.is_weyl_invariant() {
        return Err(Error::Invariant("subspace character is not Weyl-invariant".into()));
    }
    Ok(chi)
}

/// Character of the degree-`n` part of the free Lie algebra on `H`.
pub fn char_of_free_lie(alphabet: Alphabet, n: usize) -> Result<SpCharacter> {
    let g = alphabet.require_symplectic("characters")?;
    let mut weights: BTreeMap<Exponent, BigInt> = BTreeMap::new();
    for (w, _) in lie_basis(alphabet, n) {
        *weights.entry(alphabet.word_weight(&w).to_vec()).or_default() += 1;
    }
    SpCharacter::from_weights(g, weights)
}

/// Coefficient ring for graded series: integers (dimension mode) or characters.
pub trait SeriesCoef: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn times_int(&self, n: i64) -> Self;
    fn div_int(&self, n: i64) -> Result<Self>;
    fn adams(&self, d: u32) -> Self;
    fn lambda(&self, k: usize) -> Self;
    /// `Some(±1)` if this is `± 1`.
    fn unit_sign(&self) -> Option<i64>;
}

impl SeriesCoef for BigInt {
    fn zero_like(&self) -> Self {
        BigInt::zero()
    }
    fn one_like(&self) -> Self {
        BigInt::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn times_int(&self, n: i64) -> Self {
        self * n
    }
    fn div_int(&self, n: i64) -> Result<Self> {
        let (qt, r) = self.div_rem(&BigInt::from(n));
        if !r.is_zero() {
            return Err(Error::Invariant(format!("{self} not divisible by {n}")));
        }
        Ok(qt)
    }
    fn adams(&self, _d: u32) -> Self {
        self.clone()
    }
    fn lambda(&self, k: usize) -> Self {
        // C(n, k) extended to negative n.
        let mut acc = BigRational::one();
        for i in 0..k {
            acc = acc * BigRational::from_integer(self - i) / BigRational::from_integer(BigInt::from(i + 1));
        }
        acc.to_integer()
    }
    fn unit_sign(&self) -> Option<i64> {
        (self.abs().is_one()).then(|| self.to_i64().expect("±1"))
    }
}

impl SeriesCoef for SpCharacter {
    fn zero_like(&self) -> Self {
        SpCharacter::zero(self.genus)
    }
    fn one_like(&self) -> Self {
        SpCharacter::trivial(self.genus)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o).expect("same genus")
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o).expect("same genus")
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o).expect("same genus")
    }
    fn times_int(&self, n: i64) -> Self {
        self.scale(&BigInt::from(n))
    }
    fn div_int(&self, n: i64) -> Result<Self> {
        self.div_exact(&BigInt::from(n))
    }
    fn adams(&self, d: u32) -> Self {
        SpCharacter::adams(self, d)
    }
    fn lambda(&self, k: usize) -> Self {
        self.exterior_power(k)
    }
    fn unit_sign(&self) -> Option<i64> {
        let zero = vec![0; self.genus];
        if self.terms.len() == 1 {
            let c = self.coef(&zero);
            if c.abs().is_one() {
                return c.to_i64();
            }
        }
        None
    }
}

/// Degrees `1..=n` of the graded Lie algebra `h` with
/// `Σ χ(Gr_n H_•(h)) x^n = Φ`, by `h_n = (1/n) Σ_{d|n} μ(d) ψ^d Ψ_{n/d}` and
/// `Ψ = −xΦ'/Φ`. Entry 0 of the output is zero.
pub fn mobius_invert<C: SeriesCoef>(phi: &[C], n: usize) -> Result<Vec<C>> {
    let Some(phi0) = phi.first() else {
        return Err(Error::InvalidArgument("empty series".into()));
    };
    let sign = phi0.unit_sign().ok_or_else(|| Error::InvalidArgument("Φ₀ is not invertible".into()))?;
    let zero = phi0.zero_like();
    let coef = |i: usize| phi.get(i).cloned().unwrap_or_else(|| zero.clone());
    // Σ_{i=0}^k Φ_i Ψ_{k−i} = −k Φ_k.
    let mut psi: Vec<C> = vec![zero.clone()];
    for k in 1..=n {
        let mut acc = coef(k).times_int(-(k as i64));
        for i in 1..k {
            acc = acc.minus(&coef(i).times(&psi[k - i]));
        }
        psi.push(acc.times_int(sign));
    }
    let mut out = vec![zero.clone()];
    for k in 1..=n {
        let mut acc = zero.clone();
        for d in divisors(k as u64) {
            let mu = mobius(d);
            if mu != 0 {
                acc = acc.plus(&psi[k / d as usize].adams(d as u32).times_int(mu));
            }
        }
        out.push(acc.div_int(k as i64)?);
    }
    Ok(out)
}

/// `Π_{k≥1} λ_{−x^k}(h_k)` truncated at degree `n`: the Euler characteristic
/// series of the Chevalley–Eilenberg complex.
pub fn euler_series<C: SeriesCoef>(h: &[C], one: &C, n: usize) -> Vec<C> {
    let zero = one.zero_like();
    let mut series: Vec<C> = vec![zero.clone(); n + 1];
    series[0] = one.clone();
    for (k, hk) in h.iter().enumerate().skip(1).take(n) {
        let mut factor: Vec<C> = vec![zero.clone(); n + 1];
        factor[0] = one.clone();
        for j in 1..=n / k {
            let l = hk.lambda(j);
            factor[j * k] = if j % 2 == 1 { zero.minus(&l) } else { l };
        }
        let mut next = vec![zero.clone(); n + 1];
        for (i, a) in series.iter().enumerate() {
            for (j, b) in factor.iter().enumerate() {
                if i + j <= n && !(b == &zero) {
                    next[i + j] = next[i + j].plus(&a.times(b));
                }
            }
        }
        series = next;
    }
    series
}

/// `mobius_invert` on representation-ring elements in genus `g`.
pub fn mobius_invert_rep(phi: &[RepElement], genus: usize, n: usize) -> Result<Vec<RepElement>> {
    let chars: Vec<SpCharacter> = phi.iter().map(|r| r.character(genus)).collect::<Result<_>>()?;
    mobius_invert(&chars, n)?.iter().map(decompose).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dimensions() {
        assert_eq!(irr_character(&[1], 3).unwrap(), SpCharacter::defining(3));
        assert_eq!(irr_character(&[1, 1, 1], 3).unwrap().dimension(), BigInt::from(14));
        assert_eq!(irr_dimension(&[2, 2], 2).unwrap(), BigInt::from(14));
        for (l, g) in [(vec![2, 1], 3), (vec![3, 1, 1], 3), (vec![2, 2], 4)] {
            assert_eq!(irr_character(&l, g).unwrap().dimension(), irr_dimension(&l, g).unwrap());
        }
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit(&[1, 0, 0]).len(), orbit_size(&[1, 0, 0]));
        assert_eq!(orbit(&[2, 1, 1]).len(), 24);
    }
}
