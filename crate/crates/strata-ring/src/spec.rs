//! Ring layout: generators, truncation caps and packed monomials.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{RingError, RingResult};

/// Largest supported truncation exponent for any generator.
pub const MAX_CAP: u32 = 127;
/// Largest supported number of auxiliary point factors.
pub const MAX_Y: u32 = 6;

/// Which generator plays the role of the hyperplane class of the linear system.
///
/// In the plain basis it is `F`.  In the relative basis `Q_k = (d - k) X + F`
/// classes of singular strata become independent of `d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Basis {
    /// The generator `F`.
    F,
    /// The relative generator `Q_k = (d - k) X + F`.
    Q(i64),
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Basis::F => f.write_str("F"),
            Basis::Q(k) => write!(f, "Q{k}"),
        }
    }
}

impl FromStr for Basis {
    type Err = RingError;
    fn from_str(s: &str) -> RingResult<Self> {
        if s == "F" {
            return Ok(Basis::F);
        }
        s.strip_prefix('Q')
            .and_then(|k| k.parse::<i64>().ok())
            .map(Basis::Q)
            .ok_or_else(|| RingError::Parse(format!("bad basis {s:?}")))
    }
}

impl Serialize for Basis {
    fn serialize<Ser: serde::Serializer>(&self, s: Ser) -> Result<Ser::Ok, Ser::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Basis {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A generator of the ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Var {
    /// The point class `X`.
    X,
    /// The auxiliary point class `Y_i`, 1-based.
    Y(u32),
    /// The hyperplane class `F` (plain basis only).
    F,
    /// The relative class `Q` (relative basis only).
    Q,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X => f.write_str("X"),
            Var::Y(i) => write!(f, "Y{i}"),
            Var::F => f.write_str("F"),
            Var::Q => f.write_str("Q"),
        }
    }
}

impl FromStr for Var {
    type Err = RingError;
    fn from_str(s: &str) -> RingResult<Self> {
        match s {
            "X" => Ok(Var::X),
            "F" => Ok(Var::F),
            "Q" => Ok(Var::Q),
            "Y" => Ok(Var::Y(1)),
            _ => s
                .strip_prefix('Y')
                .and_then(|i| i.parse::<u32>().ok())
                .filter(|&i| i >= 1)
                .map(Var::Y)
                .ok_or_else(|| RingError::UnknownVariable(s.to_string())),
        }
    }
}

/// Shape of a truncated ring `Z[d][X, Y_1..Y_r, L] / (X^{n+1}, Y_i^{n+1}, L^{f_cap+1})`
/// where `L` is `F` or a relative class `Q_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RingSpec {
    /// Ambient dimension.
    pub n: u32,
    /// Number of auxiliary point factors.
    pub num_y: u32,
    /// Effective truncation of the hyperplane generator.
    pub f_cap: u32,
    /// Whether coefficients are polynomials in `d`.
    pub d_symbolic: bool,
    /// Which hyperplane generator is used.
    pub basis: Basis,
}

impl RingSpec {
    /// Validated constructor.
    pub fn new(n: u32, num_y: u32, f_cap: u32, d_symbolic: bool, basis: Basis) -> RingResult<Self> {
        let spec = RingSpec { n, num_y, f_cap, d_symbolic, basis };
        spec.validate()?;
        Ok(spec)
    }

    /// Checks the structural invariants.
    pub fn validate(&self) -> RingResult<()> {
        if self.n < 1 || self.n > MAX_CAP {
            return Err(RingError::InvalidSpec(format!("n = {} must lie in 1..={MAX_CAP}", self.n)));
        }
        if self.f_cap < 1 || self.f_cap > MAX_CAP {
            return Err(RingError::InvalidSpec(format!(
                "f_cap = {} must lie in 1..={MAX_CAP}",
                self.f_cap
            )));
        }
        if self.num_y > MAX_Y {
            return Err(RingError::InvalidSpec(format!("at most {MAX_Y} auxiliary points are supported")));
        }
        Ok(())
    }

    /// The same ring with another basis.
    pub fn with_basis(self, basis: Basis) -> Self {
        RingSpec { basis, ..self }
    }

    /// The same ring with another number of auxiliary points.
    pub fn with_num_y(self, num_y: u32) -> Self {
        RingSpec { num_y, ..self }
    }

    /// The same ring with symbolic or numeric coefficients.
    pub fn with_d_symbolic(self, d_symbolic: bool) -> Self {
        RingSpec { d_symbolic, ..self }
    }

    /// Number of generators (X, the Y's and the hyperplane generator).
    pub fn num_vars(&self) -> usize {
        self.num_y as usize + 2
    }

    /// Slot of the hyperplane generator in exponent tuples.
    pub fn hyper_slot(&self) -> usize {
        self.num_y as usize + 1
    }

    /// The hyperplane generator of this basis.
    pub fn hyper_var(&self) -> Var {
        match self.basis {
            Basis::F => Var::F,
            Basis::Q(_) => Var::Q,
        }
    }

    /// Slot of a generator in exponent tuples.
    pub fn slot(&self, v: Var) -> RingResult<usize> {
        match v {
            Var::X => Ok(0),
            Var::Y(i) if i >= 1 && i <= self.num_y => Ok(i as usize),
            Var::F if self.basis == Basis::F => Ok(self.hyper_slot()),
            Var::Q if matches!(self.basis, Basis::Q(_)) => Ok(self.hyper_slot()),
            _ => Err(RingError::UnknownVariable(format!("{v} in ring with basis {}", self.basis))),
        }
    }

    /// The generator stored in a slot.
    pub fn var_at(&self, slot: usize) -> Var {
        if slot == 0 {
            Var::X
        } else if slot == self.hyper_slot() {
            self.hyper_var()
        } else {
            Var::Y(slot as u32)
        }
    }

    /// Truncation cap of a slot.
    pub fn cap(&self, slot: usize) -> u32 {
        if slot == self.hyper_slot() {
            self.f_cap
        } else {
            self.n
        }
    }

    pub(crate) fn masks(&self) -> MulMasks {
        let mut bias = 0u64;
        let mut point_high = 0u64;
        let mut hyper_high = 0u64;
        for slot in 0..self.num_vars() {
            let shift = Mono::shift(slot);
            bias |= u64::from(MAX_CAP - self.cap(slot)) << shift;
            if slot == self.hyper_slot() {
                hyper_high |= 0x80u64 << shift;
            } else {
                point_high |= 0x80u64 << shift;
            }
        }
        MulMasks { bias, point_high, hyper_high }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, num_y={}, f_cap={}, d_symbolic={}, basis={})",
            self.n, self.num_y, self.f_cap, self.d_symbolic, self.basis
        )
    }
}

pub(crate) struct MulMasks {
    bias: u64,
    point_high: u64,
    hyper_high: u64,
}

/// Result of multiplying two packed monomials inside a truncated ring.
pub(crate) enum MonoProduct {
    Ok(Mono),
    /// A point generator exceeded its cap: the product vanishes.
    Vanishes,
    /// The hyperplane generator exceeded its effective cap.
    HyperOverflow(Mono),
}

impl MulMasks {
    pub(crate) fn mul(&self, a: Mono, b: Mono) -> MonoProduct {
        let m = a.0 + b.0;
        let t = m + self.bias;
        if t & self.point_high != 0 {
            MonoProduct::Vanishes
        } else if t & self.hyper_high != 0 {
            MonoProduct::HyperOverflow(Mono(m))
        } else {
            MonoProduct::Ok(Mono(m))
        }
    }
}

/// A monomial with up to eight exponents (each at most [`MAX_CAP`]) packed
/// into one word; slot 0 occupies the most significant byte so that the
/// integer order equals the lexicographic order of exponent tuples.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(u64);

impl Mono {
    /// The monomial `1`.
    pub const ONE: Mono = Mono(0);

    const fn shift(slot: usize) -> u32 {
        8 * (7 - slot as u32)
    }

    /// Packs an exponent tuple; exponents must not exceed [`MAX_CAP`].
    pub fn from_exps(exps: &[u32]) -> Mono {
        assert!(exps.len() <= 8, "at most eight generators");
        let mut m = 0u64;
        for (slot, &e) in exps.iter().enumerate() {
            assert!(e <= MAX_CAP, "exponent {e} exceeds {MAX_CAP}");
            m |= u64::from(e) << Self::shift(slot);
        }
        Mono(m)
    }

    /// Exponent in a slot.
    pub fn exp(self, slot: usize) -> u32 {
        ((self.0 >> Self::shift(slot)) & 0xff) as u32
    }

    /// A copy with one exponent replaced.
    pub fn with_exp(self, slot: usize, e: u32) -> Mono {
        assert!(e <= MAX_CAP, "exponent {e} exceeds {MAX_CAP}");
        let shift = Self::shift(slot);
        Mono((self.0 & !(0xffu64 << shift)) | (u64::from(e) << shift))
    }

    /// The first `len` exponents.
    pub fn exps(self, len: usize) -> Vec<u32> {
        (0..len).map(|s| self.exp(s)).collect()
    }

    /// Total degree.
    pub fn degree(self) -> u32 {
        (0..8).map(|s| self.exp(s)).sum()
    }

    /// Raw packed value.
    pub fn raw(self) -> u64 {
        self.0
    }
}
