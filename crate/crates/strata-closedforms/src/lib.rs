//! Closed-form classes and degrees of singular strata.
//!
//! The formulas live in `data/formulas.toml` as expressions (see
//! [`strata_ring::expr`]), pinned by a SHA-256 checksum that is verified
//! whenever the table is loaded.  This crate only evaluates them; it never
//! derives a formula.  The one exception is the class of strata whose jet is a
//! product of mutually generic forms, a multinomial sum over compositions that
//! the expression language cannot state; it is implemented in
//! [`reducible_class`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use strata_conditions::degree_of_minimal_class;
use strata_ring::expr::{eval_class, eval_dpoly, eval_number, Env};
use strata_ring::{binomial, Basis, DPolyQ, NumClass, Rational, RingError, RingSpec, Var, MAX_CAP};
use thiserror::Error;

/// The formula table.
pub const FORMULAS: &str = include_str!("../data/formulas.toml");
/// Its pinned SHA-256 checksum (hex).
pub const FORMULAS_SHA256: &str = include_str!("../data/formulas.toml.sha256");

/// Failures of the closed-form library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    /// The formula is not stated for this dimension.
    #[error("{name} is only stated for n >= {n_min} (got n = {n})")]
    OutOfValidity {
        /// Type name.
        name: String,
        /// Requested dimension.
        n: u32,
        /// Smallest valid dimension.
        n_min: u32,
    },
    /// No printed constant `C_{n,r}` for this pair.
    #[error("no known constant C(n={n}, r={r})")]
    UnknownConstant {
        /// Dimension.
        n: u32,
        /// Corank.
        r: u32,
    },
    /// The type has no printed class or degree line.
    #[error("no closed form for {0}")]
    Missing(String),
    /// Invalid parameters.
    #[error("invalid type: {0}")]
    InvalidType(String),
    /// The formula table is damaged.
    #[error("formula table: {0}")]
    Data(String),
    /// Evaluation failed.
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Result alias.
pub type ClosedFormResult<T> = Result<T, ClosedFormError>;

/// One branch `Ω^{r}` of a reducible jet: an irreducible form of order `p`
/// raised to the power `r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Branch {
    /// Power of the branch.
    pub r: u32,
    /// Order of the form.
    pub p: u32,
}

/// A reducible jet `Π Ω_i^{r_i}` with mutually generic branches.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducibleForm {
    /// The branches.
    pub branches: Vec<Branch>,
}

impl ReducibleForm {
    /// Order `p = Σ r_i p_i` of the jet.
    pub fn order(&self) -> u32 {
        self.branches.iter().map(|b| b.r * b.p).sum()
    }

    /// Order of the group permuting interchangeable branches (equal `r` and `p`).
    pub fn automorphisms(&self) -> u64 {
        let mut counts: BTreeMap<Branch, u64> = BTreeMap::new();
        for b in &self.branches {
            *counts.entry(*b).or_insert(0) += 1;
        }
        counts.values().map(|&m| (1..=m).product::<u64>()).product()
    }
}

impl fmt::Display for ReducibleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.branches.iter().map(|b| format!("{}:{}", b.r, b.p)).collect();
        write!(f, "red[{}]", parts.join(","))
    }
}

/// A type with a closed form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TypeId {
    /// Node; the same stratum as [`TypeId::Discriminant`].
    A1,
    /// Ordinary point cut out by `f|_x^{(p)} = 0`.
    Ordinary(u32),
    /// Cusp.
    A2,
    /// Tacnode.
    A3,
    /// `A_4`.
    A4,
    /// `D_4`.
    D4,
    /// `D_5`.
    D5,
    /// `D_6`.
    D6,
    /// `E_6`.
    E6,
    /// `P_8`.
    P8,
    /// `X_9`.
    X9,
    /// `Q_10`.
    Q10,
    /// `S_11`.
    S11,
    /// `U_12`.
    U12,
    /// Quadratic form of corank `r`.
    Corank(u32),
    /// Reducible jet.
    Reducible(ReducibleForm),
    /// Singular hypersurfaces.
    Discriminant,
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeId::Ordinary(p) => write!(f, "ordinary{p}"),
            TypeId::Corank(r) => write!(f, "corank{r}"),
            TypeId::Reducible(form) => write!(f, "{form}"),
            TypeId::Discriminant => f.write_str("discriminant"),
            other => write!(f, "{other:?}"),
        }
    }
}

impl FromStr for TypeId {
    type Err = ClosedFormError;
    fn from_str(s: &str) -> ClosedFormResult<Self> {
        let bad = || ClosedFormError::InvalidType(s.to_string());
        let num = |t: &str| t.parse::<u32>().map_err(|_| bad());
        Ok(match s {
            "A1" => TypeId::A1,
            "A2" => TypeId::A2,
            "A3" => TypeId::A3,
            "A4" => TypeId::A4,
            "D4" => TypeId::D4,
            "D5" => TypeId::D5,
            "D6" => TypeId::D6,
            "E6" => TypeId::E6,
            "P8" => TypeId::P8,
            "X9" => TypeId::X9,
            "Q10" => TypeId::Q10,
            "S11" => TypeId::S11,
            "U12" => TypeId::U12,
            "discriminant" => TypeId::Discriminant,
            _ => {
                if let Some(p) = s.strip_prefix("ordinary") {
                    let p = num(p)?;
                    if p == 0 {
                        return Err(bad());
                    }
                    TypeId::Ordinary(p)
                } else if let Some(r) = s.strip_prefix("corank") {
                    let r = num(r)?;
                    if r == 0 {
                        return Err(bad());
                    }
                    TypeId::Corank(r)
                } else if let Some(body) = s.strip_prefix("red[").and_then(|t| t.strip_suffix(']')) {
                    let branches = body
                        .split(',')
                        .map(|part| {
                            let (r, p) = part.split_once(':').ok_or_else(bad)?;
                            let b = Branch { r: num(r.trim())?, p: num(p.trim())? };
                            if b.r == 0 || b.p == 0 {
                                return Err(bad());
                            }
                            Ok(b)
                        })
                        .collect::<ClosedFormResult<Vec<_>>>()?;
                    TypeId::Reducible(ReducibleForm { branches })
                } else {
                    return Err(bad());
                }
            }
        })
    }
}

#[derive(Debug, Deserialize)]
struct Entry {
    name: String,
    #[serde(default)]
    params: Vec<String>,
    basis: String,
    n_min: u32,
    class: Option<String>,
    corank: Option<u32>,
    degree: Option<String>,
}

#[derive(Debug, Deserialize)]
struct ConstantRow {
    family: String,
    k: String,
    value: String,
}

#[derive(Debug, Deserialize)]
struct Corank {
    basis: String,
    class: String,
    constant: Vec<ConstantRow>,
}

#[derive(Debug, Deserialize)]
struct Lifted {
    name: String,
    points: u32,
    basis: String,
    bounds: Vec<String>,
    class: String,
}

#[derive(Debug, Deserialize)]
struct Table {
    entry: Vec<Entry>,
    corank: Corank,
    lifted: Vec<Lifted>,
}

/// SHA-256 of a text, hex encoded.
pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Checks the formula table against its pinned checksum.
pub fn verify_table() -> ClosedFormResult<()> {
    let found = sha256_hex(FORMULAS);
    if found != FORMULAS_SHA256.trim() {
        return Err(ClosedFormError::Data(format!("checksum mismatch: {found} != {}", FORMULAS_SHA256.trim())));
    }
    Ok(())
}

fn table() -> ClosedFormResult<&'static Table> {
    static TABLE: OnceLock<Result<Table, ClosedFormError>> = OnceLock::new();
    TABLE
        .get_or_init(|| {
            verify_table()?;
            toml::from_str(FORMULAS).map_err(|e| ClosedFormError::Data(e.to_string()))
        })
        .as_ref()
        .map_err(Clone::clone)
}

fn entry(name: &str) -> ClosedFormResult<&'static Entry> {
    table()?
        .entry
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| ClosedFormError::Missing(name.to_string()))
}

fn basis_of(text: &str, env: &Env) -> ClosedFormResult<Basis> {
    let k = eval_number(text, env)?;
    let k = k.to_integer().to_i64().filter(|_| k.is_integer()).ok_or_else(|| ClosedFormError::Data(format!("bad basis {text}")))?;
    Ok(Basis::Q(k))
}

/// The ring of minimal-lifting classes of dimension `n` in basis `Q_k`.
pub fn minimal_ring(n: u32, k: i64) -> ClosedFormResult<RingSpec> {
    Ok(RingSpec::new(n, 0, MAX_CAP, false, Basis::Q(k))?)
}

/// `k` of the relative basis `Q_k` in which the closed form is stated.
pub fn basis_k(t: &TypeId) -> ClosedFormResult<i64> {
    Ok(match t {
        TypeId::Ordinary(p) => i64::from(*p),
        TypeId::A1 | TypeId::Discriminant => 1,
        TypeId::Reducible(form) => i64::from(form.order()),
        _ => 2,
    })
}

fn entry_name(t: &TypeId) -> Option<&'static str> {
    Some(match t {
        TypeId::A1 | TypeId::Discriminant => "A1",
        TypeId::Ordinary(_) => "ordinary",
        TypeId::A2 => "A2",
        TypeId::A3 => "A3",
        TypeId::A4 => "A4",
        TypeId::D4 => "D4",
        TypeId::D5 => "D5",
        TypeId::D6 => "D6",
        TypeId::E6 => "E6",
        TypeId::P8 => "P8",
        TypeId::X9 => "X9",
        TypeId::Q10 => "Q10",
        TypeId::S11 => "S11",
        TypeId::U12 => "U12",
        TypeId::Corank(_) | TypeId::Reducible(_) => return None,
    })
}

fn entry_env(e: &Entry, t: &TypeId, n: u32) -> ClosedFormResult<Env> {
    if n < e.n_min || n == 0 {
        return Err(ClosedFormError::OutOfValidity { name: t.to_string(), n, n_min: e.n_min.max(1) });
    }
    let mut env = Env::with_n(n);
    for p in &e.params {
        match (p.as_str(), t) {
            ("p", TypeId::Ordinary(v)) => env = env.param("p", i64::from(*v)),
            _ => return Err(ClosedFormError::Data(format!("unbound parameter {p} of {}", e.name))),
        }
    }
    Ok(env)
}

/// The class of the minimal lifting `[Σ̃(x)]` in the relative basis.
pub fn closed_form_class(t: &TypeId, n: u32) -> ClosedFormResult<NumClass> {
    let ring = minimal_ring(n, basis_k(t)?)?;
    closed_form_class_in(t, n, ring)
}

/// [`closed_form_class`] in a caller-chosen ring (its basis must be the
/// entry's `Q_k`; points and caps are free).
pub fn closed_form_class_in(t: &TypeId, n: u32, ring: RingSpec) -> ClosedFormResult<NumClass> {
    if ring.n != n {
        return Err(ClosedFormError::InvalidType(format!("ring has n = {} but n = {n} was requested", ring.n)));
    }
    if ring.basis != Basis::Q(basis_k(t)?) {
        return Err(ClosedFormError::InvalidType(format!("{t} is stated in basis Q{}", basis_k(t)?)));
    }
    match t {
        TypeId::Corank(r) => corank_class_in(n, *r, ring),
        TypeId::Reducible(form) => reducible_class_in(form, n, ring),
        _ => {
            let e = entry(entry_name(t).expect("named entry"))?;
            let env = entry_env(e, t, n)?;
            if basis_of(&e.basis, &env)? != ring.basis {
                return Err(ClosedFormError::Data(format!("basis of {} disagrees", e.name)));
            }
            match (&e.class, e.corank) {
                (Some(c), _) => Ok(eval_class(c, &env, ring)?),
                (None, Some(r)) => corank_class_in(n, r, ring),
                (None, None) => Err(ClosedFormError::Missing(format!("class of {t}"))),
            }
        }
    }
}

/// The printed degree line of the stratum, if there is one.
pub fn printed_degree(t: &TypeId, n: u32) -> ClosedFormResult<Option<DPolyQ>> {
    let Some(name) = entry_name(t) else { return Ok(None) };
    let e = entry(name)?;
    let env = entry_env(e, t, n)?;
    match &e.degree {
        Some(text) => Ok(Some(eval_dpoly(text, &env)?)),
        None => Ok(None),
    }
}

/// Degree of the stratum as a polynomial in `d`: the printed degree line when
/// there is one, otherwise the coefficient of `X^n` of the printed class.
pub fn closed_form_degree(t: &TypeId, n: u32) -> ClosedFormResult<DPolyQ> {
    if let Some(p) = printed_degree(t, n)? {
        return Ok(p);
    }
    degree_of_class(&closed_form_class(t, n)?)
}

/// Coefficient of `X^n` of a minimal-lifting class, as a polynomial in `d`.
pub fn degree_of_class(class: &NumClass) -> ClosedFormResult<DPolyQ> {
    degree_of_minimal_class(class).map_err(|e| ClosedFormError::Data(e.to_string()))
}

/// Which printed family a corank constant comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorankConstant {
    /// The family, e.g. `"k=2"` or `"k=n-1"`.
    pub family: String,
    /// The value of `C_{n,r}`.
    pub value: Rational,
}

/// Every printed constant that applies to `(n, r)`, fixed-`k` families first.
pub fn corank_constants(n: u32, r: u32) -> ClosedFormResult<Vec<CorankConstant>> {
    let mut out = Vec::new();
    for c in &table()?.corank.constant {
        let env = Env::with_n(n).param("k", i64::from(r));
        let k = eval_number(&c.k, &env)?;
        if k == Rational::from_integer(r.into()) {
            out.push(CorankConstant { family: c.family.clone(), value: eval_number(&c.value, &env)? });
        }
    }
    Ok(out)
}

/// The constant used by [`corank_class`]: the first applicable printed family.
pub fn corank_constant(n: u32, r: u32) -> ClosedFormResult<CorankConstant> {
    if r == 0 || r > n {
        return Err(ClosedFormError::InvalidType(format!("corank {r} needs 1 <= r <= n = {n}")));
    }
    corank_constants(n, r)?.into_iter().next().ok_or(ClosedFormError::UnknownConstant { n, r })
}

/// The class of the corank-`r` stratum with the first applicable constant.
pub fn corank_class(n: u32, r: u32) -> ClosedFormResult<NumClass> {
    corank_class_in(n, r, minimal_ring(n, 2)?)
}

fn corank_class_in(n: u32, r: u32, ring: RingSpec) -> ClosedFormResult<NumClass> {
    let c = corank_constant(n, r)?;
    corank_class_with(n, r, &c.value, ring)
}

/// The corank formula with an explicit constant.
pub fn corank_class_with(n: u32, r: u32, constant: &Rational, ring: RingSpec) -> ClosedFormResult<NumClass> {
    let data = &table()?.corank;
    let mut env = Env::with_n(n).param("k", i64::from(r));
    env.params.insert("C".into(), constant.clone());
    if basis_of(&data.basis, &env)? != ring.basis {
        return Err(ClosedFormError::InvalidType("the corank formula is stated in basis Q2".into()));
    }
    Ok(eval_class(&data.class, &env, ring)?)
}

/// Class of the stratum of hypersurfaces whose lowest jet is the reducible form.
pub fn reducible_class(form: &ReducibleForm, n: u32) -> ClosedFormResult<NumClass> {
    reducible_class_in(form, n, minimal_ring(n, i64::from(form.order()))?)
}

fn reducible_class_in(form: &ReducibleForm, n: u32, ring: RingSpec) -> ClosedFormResult<NumClass> {
    if form.branches.is_empty() {
        return Err(ClosedFormError::InvalidType("a reducible form needs at least one branch".into()));
    }
    let p = i64::from(form.order());
    let n_ = i64::from(n);
    let k = form.branches.len() as i64;
    let bin = |a: i64, b: i64| -> Rational { binomial::<Rational>(a, b) };
    let int = |r: &Rational| r.to_integer().to_i64().expect("small binomial");
    let m = int(&bin(p + n_, n_));
    // Range and weight of each index i_j.
    let ranges: Vec<(i64, i64)> = form
        .branches
        .iter()
        .map(|b| {
            let pj = i64::from(b.p);
            (int(&bin(pj - 1 + n_, pj - 1)) - 1, int(&bin(pj + n_, n_)) - 1)
        })
        .collect();
    let shift: i64 = k - form.branches.iter().map(|b| int(&bin(i64::from(b.p) - 1 + n_, i64::from(b.p)))).sum::<i64>();
    let weight = |j: usize, ij: i64| -> Rational {
        let b = form.branches[j];
        let pj = i64::from(b.p);
        let r = Rational::from_integer(b.r.into());
        num_traits::pow(r, ij as usize) * bin(int(&bin(pj - 1 + n_, n_)), int(&bin(pj + n_, n_)) - 1 - ij)
    };
    let fact = |v: i64| (1..=v).fold(Rational::one(), |a, i| a * Rational::from_integer(i.into()));
    let mut out = NumClass::zero(ring)?;
    let aut = Rational::from_integer(form.automorphisms().into());
    // Enumerate compositions (i_1, ..., i_k) within the ranges.
    let mut idx: Vec<i64> = ranges.iter().map(|r| r.0).collect();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Ok(out);
    }
    loop {
        let i: i64 = idx.iter().sum();
        let xe = shift + i;
        if i < m && xe >= 0 && xe <= n_ {
            let mut coef = fact(i);
            for (j, &ij) in idx.iter().enumerate() {
                coef = coef / fact(ij) * weight(j, ij);
            }
            if !coef.is_zero() {
                let mut exps = vec![0u32; ring.num_vars()];
                exps[0] = xe as u32;
                exps[ring.hyper_slot()] = (m - 1 - i) as u32;
                let term = NumClass::from_terms(ring, [(exps, coef / &aut)])?;
                out = out.try_add(&term)?;
            }
        }
        // next composition
        let mut j = 0;
        loop {
            if j == idx.len() {
                return Ok(out);
            }
            if idx[j] < ranges[j].1 {
                idx[j] += 1;
                break;
            }
            idx[j] = ranges[j].0;
            j += 1;
        }
    }
}

/// A printed class of a lifted stratum with auxiliary points.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftedClosedForm {
    /// The class in `X, Y_i, Q`.
    pub class: NumClass,
    /// Powers of the auxiliary generators at which the minimal lifting is read off.
    pub bounds: Vec<(Var, u32)>,
}

/// Names of the printed lifted classes.
pub fn lifted_names() -> ClosedFormResult<Vec<String>> {
    Ok(table()?.lifted.iter().map(|l| l.name.clone()).collect())
}

/// The printed lifted class of `name` (`A2`, `A3`, `D4`) in dimension `n`.
pub fn lifted_class(name: &str, n: u32) -> ClosedFormResult<LiftedClosedForm> {
    let l = table()?
        .lifted
        .iter()
        .find(|l| l.name == name)
        .ok_or_else(|| ClosedFormError::Missing(format!("lifted class of {name}")))?;
    if n == 0 {
        return Err(ClosedFormError::OutOfValidity { name: name.to_string(), n, n_min: 1 });
    }
    let env = Env::with_n(n);
    let ring = RingSpec::new(n, l.points, MAX_CAP, false, basis_of(&l.basis, &env)?)?;
    let class = eval_class(&l.class, &env, ring)?;
    let bounds = l
        .bounds
        .iter()
        .enumerate()
        .map(|(j, b)| {
            let v = eval_number(b, &env)?;
            let v = v.to_integer().to_u32().ok_or_else(|| ClosedFormError::Data(format!("bad bound {b}")))?;
            Ok((Var::Y(j as u32 + 1), v))
        })
        .collect::<ClosedFormResult<Vec<_>>>()?;
    Ok(LiftedClosedForm { class, bounds })
}

/// Every named type with a closed form (corank and reducible types excluded).
pub fn named_types() -> Vec<TypeId> {
    vec![
        TypeId::A1,
        TypeId::A2,
        TypeId::A3,
        TypeId::A4,
        TypeId::D4,
        TypeId::D5,
        TypeId::D6,
        TypeId::E6,
        TypeId::P8,
        TypeId::X9,
        TypeId::Q10,
        TypeId::S11,
        TypeId::U12,
    ]
}

/// Smallest dimension a named type's formula is stated for.
pub fn n_min(t: &TypeId) -> ClosedFormResult<u32> {
    match t {
        TypeId::Corank(r) => Ok(*r),
        TypeId::Reducible(_) => Ok(1),
        _ => Ok(entry(entry_name(t).expect("named entry"))?.n_min.max(1)),
    }
}
