//! Framings of a surface with one boundary component: the mod-2 quadratic
//! form, its Arf invariant, and the orbit descriptor.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramingData {
    pub genus: usize,
    /// `rot(a_j)` for `j = 1..g`.
    pub rot_a: Vec<i64>,
    /// `rot(b_j)` for `j = 1..g`.
    pub rot_b: Vec<i64>,
    /// Rotation numbers of sampled non-separating simple closed curves (genus 1).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub scc: Vec<(String, i64)>,
}

impl FramingData {
    pub fn new(rot_a: Vec<i64>, rot_b: Vec<i64>) -> Result<Self> {
        let f = FramingData { genus: rot_a.len(), rot_a, rot_b, scc: Vec::new() };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        if self.genus == 0 {
            return Err(Error::InvalidArgument("genus must be at least 1".into()));
        }
        if self.rot_a.len() != self.genus || self.rot_b.len() != self.genus {
            return Err(Error::InvalidArgument(format!("expected {} rotation numbers for each of a and b", self.genus)));
        }
        Ok(())
    }
}

/// `f(c) = 1 + rot(c) mod 2`.
pub fn quadratic_form(rot: i64) -> u8 {
    (1 + rot).rem_euclid(2) as u8
}

/// `Σ_j f(a_j) f(b_j) mod 2`.
pub fn arf(f: &FramingData) -> Result<u8> {
    f.validate()?;
    let s: u32 = f.rot_a.iter().zip(&f.rot_b).map(|(&a, &b)| (quadratic_form(a) * quadratic_form(b)) as u32).sum();
    Ok((s % 2) as u8)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrbitDescriptor {
    /// Genus ≥ 2: orbits are distinguished by the Arf invariant.
    Arf { arf: u8 },
    /// Genus 1: gcd of the sampled rotation numbers, with the parity check `A ≡ 1 + Arf`.
    Gcd { gcd: u64, arf: u8, parity_consistent: bool },
}

pub fn classify_orbit(f: &FramingData) -> Result<OrbitDescriptor> {
    let a = arf(f)?;
    if f.genus >= 2 {
        return Ok(OrbitDescriptor::Arf { arf: a });
    }
    if f.scc.is_empty() {
        return Err(Error::InsufficientData(
            "genus 1 needs rotation numbers of non-separating simple closed curves".into(),
        ));
    }
    let gcd = f.scc.iter().fold(0u64, |g, (_, r)| g.gcd(&r.unsigned_abs()));
    let parity_consistent = (gcd % 2) as u8 == (1 + a) % 2;
    Ok(OrbitDescriptor::Gcd { gcd, arf: a, parity_consistent })
}
