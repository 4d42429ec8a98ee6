//! Elements of the truncated cohomology ring.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeff::Coeff;
use crate::dpoly::DPoly;
use crate::error::{RingError, RingResult};
use crate::scalar::{binomial, Scalar};
use crate::spec::{Basis, Mono, MonoProduct, RingSpec, Var};

/// A class: a finite sum of monomials in `X, Y_1..Y_r` and the hyperplane
/// generator, with coefficients of type `C`.  Zero coefficients are never
/// stored, so equality is term-wise.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassPoly<C> {
    spec: RingSpec,
    terms: BTreeMap<Mono, C>,
}

fn check_coeff_kind<C: Coeff>(spec: &RingSpec) -> RingResult<()> {
    spec.validate()?;
    if spec.d_symbolic != C::SYMBOLIC_D {
        return Err(RingError::InvalidSpec(format!(
            "d_symbolic = {} does not match the coefficient type",
            spec.d_symbolic
        )));
    }
    Ok(())
}

impl<C: Coeff> ClassPoly<C> {
    /// The zero class.
    pub fn zero(spec: RingSpec) -> RingResult<Self> {
        check_coeff_kind::<C>(&spec)?;
        Ok(ClassPoly { spec, terms: BTreeMap::new() })
    }

    /// The unit class.
    pub fn one(spec: RingSpec) -> RingResult<Self> {
        Self::constant(spec, C::one())
    }

    /// A constant class.
    pub fn constant(spec: RingSpec, c: C) -> RingResult<Self> {
        let mut out = Self::zero(spec)?;
        if !c.is_zero() {
            out.terms.insert(Mono::ONE, c);
        }
        Ok(out)
    }

    /// A single generator.
    pub fn var(spec: RingSpec, v: Var) -> RingResult<Self> {
        Self::linear(spec, &[(v, C::one())])
    }

    /// A linear form `Σ c_v v`.
    pub fn linear(spec: RingSpec, parts: &[(Var, C)]) -> RingResult<Self> {
        let mut out = Self::zero(spec)?;
        for (v, c) in parts {
            let slot = spec.slot(*v)?;
            let mono = Mono::ONE.with_exp(slot, 1);
            out.add_term(mono, c);
        }
        Ok(out)
    }

    /// A linear form with scalar coefficients given as integers.
    pub fn linear_int(spec: RingSpec, parts: &[(Var, i64)]) -> RingResult<Self> {
        let parts: Vec<(Var, C)> = parts
            .iter()
            .map(|(v, c)| (*v, C::from_scalar(C::Scalar::from_i64(*c))))
            .collect();
        Self::linear(spec, &parts)
    }

    /// Builds a class from explicit terms; every exponent must respect its cap.
    pub fn from_terms<I>(spec: RingSpec, terms: I) -> RingResult<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, C)>,
    {
        let mut out = Self::zero(spec)?;
        for (exps, c) in terms {
            if exps.len() != spec.num_vars() {
                return Err(RingError::InvalidSpec(format!(
                    "exponent tuple of length {} in a ring with {} generators",
                    exps.len(),
                    spec.num_vars()
                )));
            }
            for (slot, &e) in exps.iter().enumerate() {
                if e > spec.cap(slot) {
                    return Err(RingError::ExponentOutOfRange {
                        var: spec.var_at(slot).to_string(),
                        exp: e,
                        cap: spec.cap(slot),
                    });
                }
            }
            out.add_term(Mono::from_exps(&exps), &c);
        }
        Ok(out)
    }

    /// The complete homogeneous polynomial of degree `deg` in the given generators.
    pub fn complete_homogeneous(spec: RingSpec, deg: u32, vars: &[Var]) -> RingResult<Self> {
        let slots: Vec<usize> = vars.iter().map(|v| spec.slot(*v)).collect::<RingResult<_>>()?;
        let mut out = Self::zero(spec)?;
        let mut exps = vec![0u32; spec.num_vars()];
        fn rec<C: Coeff>(
            out: &mut ClassPoly<C>,
            slots: &[usize],
            i: usize,
            rem: u32,
            exps: &mut Vec<u32>,
        ) {
            if i == slots.len() {
                if rem == 0 && exps.iter().enumerate().all(|(s, &e)| e <= out.spec.cap(s)) {
                    out.add_term(Mono::from_exps(exps), &C::one());
                }
                return;
            }
            let slot = slots[i];
            let top = rem.min(out.spec.cap(slot).saturating_sub(exps[slot]));
            for e in 0..=top {
                exps[slot] += e;
                rec(out, slots, i + 1, rem - e, exps);
                exps[slot] -= e;
            }
        }
        rec(&mut out, &slots, 0, deg, &mut exps);
        Ok(out)
    }

    fn add_term(&mut self, mono: Mono, c: &C) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mono) {
            Some(v) => {
                v.add_assign_ref(c);
                if v.is_zero() {
                    self.terms.remove(&mono);
                }
            }
            None => {
                self.terms.insert(mono, c.clone());
            }
        }
    }

    /// The ring this class lives in.
    pub fn spec(&self) -> &RingSpec {
        &self.spec
    }

    /// Whether the class is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether there are no stored terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of exponent tuples.
    pub fn terms(&self) -> impl Iterator<Item = (Mono, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Terms as explicit exponent tuples.
    pub fn term_list(&self) -> Vec<(Vec<u32>, C)> {
        let nv = self.spec.num_vars();
        self.terms.iter().map(|(m, c)| (m.exps(nv), c.clone())).collect()
    }

    /// Coefficient of a monomial given by its exponent tuple.
    pub fn coeff(&self, exps: &[u32]) -> C {
        if exps.iter().any(|&e| e > crate::spec::MAX_CAP) || exps.len() != self.spec.num_vars() {
            return C::zero();
        }
        self.terms.get(&Mono::from_exps(exps)).cloned().unwrap_or_else(C::zero)
    }

    /// Coefficient of a packed monomial.
    pub fn coeff_mono(&self, m: Mono) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    fn same_spec(&self, o: &Self) -> RingResult<()> {
        if self.spec != o.spec {
            return Err(RingError::SpecMismatch { left: self.spec.to_string(), right: o.spec.to_string() });
        }
        Ok(())
    }

    /// Sum.
    pub fn try_add(&self, o: &Self) -> RingResult<Self> {
        self.same_spec(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c);
        }
        Ok(out)
    }

    /// Difference.
    pub fn try_sub(&self, o: &Self) -> RingResult<Self> {
        self.same_spec(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, &c.neg_ref());
        }
        Ok(out)
    }

    /// Product; monomials beyond the point caps vanish, while reaching the
    /// hyperplane cap is an error.
    pub fn try_mul(&self, o: &Self) -> RingResult<Self> {
        self.same_spec(o)?;
        let masks = self.spec.masks();
        let mut acc: HashMap<Mono, C> = HashMap::with_capacity(self.terms.len() + o.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                match masks.mul(*ma, *mb) {
                    MonoProduct::Vanishes => {}
                    MonoProduct::HyperOverflow(m) => {
                        let slot = self.spec.hyper_slot();
                        return Err(RingError::FCapReached {
                            var: self.spec.hyper_var().to_string(),
                            exp: m.exp(slot),
                            cap: self.spec.f_cap,
                        });
                    }
                    MonoProduct::Ok(m) => {
                        let p = ca.mul_ref(cb);
                        match acc.get_mut(&m) {
                            Some(v) => v.add_assign_ref(&p),
                            None => {
                                acc.insert(m, p);
                            }
                        }
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Ok(ClassPoly { spec: self.spec, terms })
    }

    /// Non-negative power.
    pub fn try_pow(&self, e: u32) -> RingResult<Self> {
        let mut result = Self::one(self.spec)?;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, s: &C::Scalar) -> Self {
        if s.is_zero() {
            return ClassPoly { spec: self.spec, terms: BTreeMap::new() };
        }
        let terms = self.terms.iter().map(|(m, c)| (*m, c.scale(s))).collect();
        ClassPoly { spec: self.spec, terms }
    }

    /// Multiplies by a coefficient.
    pub fn scale_coeff(&self, s: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, c.mul_ref(s)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        ClassPoly { spec: self.spec, terms }
    }

    /// Coefficient (as a class in the remaining generators) of the monomial
    /// given by `targets`; the named generators have exponent zero in the result.
    pub fn gysin_extract(&self, targets: &[(Var, u32)]) -> RingResult<Self> {
        let mut fixed = Vec::with_capacity(targets.len());
        for (v, e) in targets {
            let slot = self.spec.slot(*v)?;
            if *e > self.spec.cap(slot) {
                return Err(RingError::ExponentOutOfRange { var: v.to_string(), exp: *e, cap: self.spec.cap(slot) });
            }
            fixed.push((slot, *e));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if fixed.iter().all(|&(s, e)| m.exp(s) == e) {
                let mut mm = *m;
                for &(s, _) in &fixed {
                    mm = mm.with_exp(s, 0);
                }
                terms.insert(mm, c.clone());
            }
        }
        Ok(ClassPoly { spec: self.spec, terms })
    }

    /// Formal partial derivative of the given order.
    pub fn derivative(&self, v: Var, order: u32) -> RingResult<Self> {
        let slot = self.spec.slot(v)?;
        let mut out = ClassPoly { spec: self.spec, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let e = m.exp(slot);
            if e < order {
                continue;
            }
            let falling: i64 = (0..order).map(|t| i64::from(e - t)).product();
            out.add_term(m.with_exp(slot, e - order), &c.scale(&C::Scalar::from_i64(falling)));
        }
        Ok(out)
    }

    /// Largest exponent of a generator among the stored terms (0 for the zero class).
    pub fn max_exp(&self, v: Var) -> RingResult<u32> {
        let slot = self.spec.slot(v)?;
        Ok(self.terms.keys().map(|m| m.exp(slot)).max().unwrap_or(0))
    }

    /// Whether every term has the same total degree; returns it if so.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Permutes the point generators `X, Y_1..Y_r` (slots `0..=num_y`):
    /// the exponent in slot `i` moves to slot `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> RingResult<Self> {
        let points = self.spec.num_y as usize + 1;
        let mut seen = vec![false; points];
        if perm.len() != points || perm.iter().any(|&p| p >= points || std::mem::replace(&mut seen[p], true)) {
            return Err(RingError::InvalidSpec(format!("{perm:?} is not a permutation of {points} point slots")));
        }
        let hs = self.spec.hyper_slot();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mm = Mono::ONE.with_exp(hs, m.exp(hs));
                for (i, &p) in perm.iter().enumerate() {
                    mm = mm.with_exp(p, m.exp(i));
                }
                (mm, c.clone())
            })
            .collect();
        Ok(ClassPoly { spec: self.spec, terms })
    }

    /// Whether the class is invariant under every listed permutation.
    pub fn check_symmetry(&self, group: &[Vec<usize>]) -> bool {
        group.iter().all(|p| self.permute(p).map(|q| &q == self).unwrap_or(false))
    }

    /// Re-expresses the class in another basis, substituting
    /// `L_old = t X + L_new` where `t` is determined by the two bases.
    pub fn rebase(&self, target: Basis) -> RingResult<Self> {
        let t = match (self.spec.basis, target) {
            (a, b) if a == b => return Ok(self.clone()),
            (Basis::Q(k), Basis::Q(j)) => C::from_scalar(C::Scalar::from_i64(j - k)),
            (Basis::Q(k), Basis::F) => C::d_minus(k).ok_or(RingError::NeedsD {
                from: self.spec.basis.to_string(),
                to: target.to_string(),
            })?,
            (Basis::F, Basis::Q(k)) => C::d_minus(k)
                .ok_or(RingError::NeedsD { from: self.spec.basis.to_string(), to: target.to_string() })?
                .neg_ref(),
            (Basis::F, Basis::F) => unreachable!(),
        };
        self.substitute_hyper(&t, target)
    }

    /// Like [`ClassPoly::rebase`] but with `d` fixed to a value, so it also works
    /// for numeric coefficients.
    pub fn rebase_at(&self, target: Basis, d: &C::Scalar) -> RingResult<Self> {
        let shift = |k: i64| C::from_scalar(d.sub_ref(&C::Scalar::from_i64(k)));
        let t = match (self.spec.basis, target) {
            (a, b) if a == b => return Ok(self.clone()),
            (Basis::Q(k), Basis::Q(j)) => C::from_scalar(C::Scalar::from_i64(j - k)),
            (Basis::Q(k), Basis::F) => shift(k),
            (Basis::F, Basis::Q(k)) => shift(k).neg_ref(),
            (Basis::F, Basis::F) => unreachable!(),
        };
        self.substitute_hyper(&t, target)
    }

    fn substitute_hyper(&self, t: &C, target: Basis) -> RingResult<Self> {
        let spec = self.spec.with_basis(target);
        let hs = spec.hyper_slot();
        let n = spec.n;
        let max_l = self.terms.keys().map(|m| m.exp(hs)).max().unwrap_or(0);
        let mut t_pows = vec![C::one()];
        for i in 1..=n.min(max_l) {
            t_pows.push(t_pows[i as usize - 1].mul_ref(t));
        }
        let mut out = ClassPoly { spec, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            let q = m.exp(hs);
            let ex = m.exp(0);
            for i in 0..=q {
                if ex + i > n {
                    break;
                }
                if t.is_zero() && i > 0 {
                    break;
                }
                let b: C::Scalar = binomial(i64::from(q), i64::from(i));
                let coef = c.mul_ref(&t_pows[i as usize]).scale(&b);
                let mm = m.with_exp(0, ex + i).with_exp(hs, q - i);
                out.add_term(mm, &coef);
            }
        }
        Ok(out)
    }

    /// Evaluates `d` in every coefficient, keeping the coefficient type.
    pub fn specialize_d(&self, d: &C::Scalar) -> Self {
        let mut out = ClassPoly { spec: self.spec, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            out.add_term(*m, &C::from_scalar(c.eval_d(d)));
        }
        out
    }

    /// Converts to scalar coefficients; fails if some coefficient depends on `d`.
    pub fn to_numeric(&self) -> RingResult<ClassPoly<C::Scalar>>
    where
        C::Scalar: Coeff<Scalar = C::Scalar>,
    {
        let spec = self.spec.with_d_symbolic(false);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let s = c.as_scalar().ok_or_else(|| RingError::NonConstant(c.to_text()))?;
            terms.insert(*m, s);
        }
        Ok(ClassPoly { spec, terms })
    }

    /// Converts to polynomial-in-`d` coefficients.
    pub fn lift(&self) -> ClassPoly<DPoly<C::Scalar>> {
        let spec = self.spec.with_d_symbolic(true);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let p: DPoly<C::Scalar> = match c.as_scalar() {
                Some(s) => DPoly::constant(s),
                None => DPoly::parse(&c.to_text()).expect("symbolic coefficients print as polynomials in d"),
            };
            terms.insert(*m, p);
        }
        ClassPoly { spec, terms }
    }

    /// Moves the class to a ring with the listed auxiliary points only (in the
    /// given order); the dropped points must not occur in any term.
    pub fn restrict_points(&self, keep: &[u32]) -> RingResult<Self> {
        let spec = self.spec.with_num_y(keep.len() as u32);
        spec.validate()?;
        for m in self.terms.keys() {
            for y in 1..=self.spec.num_y {
                if !keep.contains(&y) && m.exp(y as usize) != 0 {
                    return Err(RingError::InvalidSpec(format!("Y{y} occurs but is being dropped")));
                }
            }
        }
        let old_h = self.spec.hyper_slot();
        let new_h = spec.hyper_slot();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mm = Mono::ONE.with_exp(0, m.exp(0)).with_exp(new_h, m.exp(old_h));
                for (i, &y) in keep.iter().enumerate() {
                    mm = mm.with_exp(i + 1, m.exp(y as usize));
                }
                (mm, c.clone())
            })
            .collect();
        Ok(ClassPoly { spec, terms })
    }

    /// Moves the class into a ring with more auxiliary points (appended at the end).
    pub fn extend_points(&self, num_y: u32) -> RingResult<Self> {
        if num_y < self.spec.num_y {
            return Err(RingError::InvalidSpec("extend_points cannot drop points".into()));
        }
        let keep: Vec<u32> = (1..=self.spec.num_y).collect();
        let spec = self.spec.with_num_y(num_y);
        spec.validate()?;
        let old_h = self.spec.hyper_slot();
        let new_h = spec.hyper_slot();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut mm = Mono::ONE.with_exp(0, m.exp(0)).with_exp(new_h, m.exp(old_h));
                for &y in &keep {
                    mm = mm.with_exp(y as usize, m.exp(y as usize));
                }
                (mm, c.clone())
            })
            .collect();
        Ok(ClassPoly { spec, terms })
    }

    /// Moves the class into a ring with a different hyperplane cap.
    pub fn with_f_cap(&self, f_cap: u32) -> RingResult<Self> {
        let spec = RingSpec { f_cap, ..self.spec };
        spec.validate()?;
        let hs = spec.hyper_slot();
        if let Some(m) = self.terms.keys().find(|m| m.exp(hs) > f_cap) {
            return Err(RingError::ExponentOutOfRange {
                var: spec.hyper_var().to_string(),
                exp: m.exp(hs),
                cap: f_cap,
            });
        }
        Ok(ClassPoly { spec, terms: self.terms.clone() })
    }

    /// Splits the divisor as `u * L + N` with `u` a nonzero scalar and `N` free of `L`.
    fn split_divisor(&self) -> RingResult<(C::Scalar, Self)> {
        let hs = self.spec.hyper_slot();
        let l = Mono::ONE.with_exp(hs, 1);
        let mut u = None;
        let mut rest = ClassPoly { spec: self.spec, terms: BTreeMap::new() };
        for (m, c) in &self.terms {
            if *m == l {
                let s = c.as_scalar().ok_or_else(|| {
                    RingError::BadDivisor(format!("the {} coefficient {} is not constant", self.spec.hyper_var(), c.to_text()))
                })?;
                u = Some(s);
            } else if m.exp(hs) > 0 {
                return Err(RingError::BadDivisor(format!(
                    "the divisor must be affine in {} with constant coefficient",
                    self.spec.hyper_var()
                )));
            } else {
                rest.terms.insert(*m, c.clone());
            }
        }
        match u {
            Some(u) if !u.is_zero() => Ok((u, rest)),
            _ => Err(RingError::BadDivisor(format!("no {} term", self.spec.hyper_var()))),
        }
    }

    /// Division with remainder by `c = u L + N`: returns `(P, R)` with
    /// `self = P c + R` and `R` free of the hyperplane generator.
    pub fn divide_with_remainder(&self, c: &Self) -> RingResult<(Self, Self)> {
        self.same_spec(c)?;
        let (u, n_part) = c.split_divisor()?;
        let u_inv = C::Scalar::one().div_ref(&u);
        let hs = self.spec.hyper_slot();
        let mut rem = self.clone();
        let mut quot = ClassPoly { spec: self.spec, terms: BTreeMap::new() };
        loop {
            let top = rem.terms.keys().map(|m| m.exp(hs)).max().unwrap_or(0);
            if top == 0 {
                break;
            }
            // A = (coefficient of L^top) * L^(top-1) / u
            let mut a = ClassPoly { spec: self.spec, terms: BTreeMap::new() };
            for (m, cf) in &rem.terms {
                if m.exp(hs) == top {
                    a.terms.insert(m.with_exp(hs, top - 1), cf.scale(&u_inv));
                }
            }
            // rem -= A * (u L + N): the L^top part cancels exactly.
            for m in a.terms.keys() {
                rem.terms.remove(&m.with_exp(hs, top));
            }
            let an = a.try_mul(&n_part)?;
            rem = rem.try_sub(&an)?;
            quot = quot.try_add(&a)?;
        }
        Ok((quot, rem))
    }

    /// The unique `P` with `P * c = self`.
    pub fn divide_exact(&self, c: &Self) -> RingResult<Self> {
        let (q, r) = self.divide_with_remainder(c)?;
        if !r.is_zero() {
            return Err(RingError::NotDivisible { terms: r.len() });
        }
        Ok(q)
    }

    /// The part of total degree `deg` (hyperplane generator included).
    pub fn homogeneous_part(&self, deg: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (*m, c.clone())).collect();
        ClassPoly { spec: self.spec, terms }
    }

    /// Drops every term of total degree above `max`.
    pub fn truncate_degree(&self, max: u32) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() <= max).map(|(m, c)| (*m, c.clone())).collect();
        ClassPoly { spec: self.spec, terms }
    }

    /// Whether every coefficient is integral.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integral())
    }

    /// Applies a coefficient map, dropping terms that become zero.
    pub fn map_coeffs<D: Coeff, Fn_: FnMut(&C) -> D>(&self, spec: RingSpec, mut f: Fn_) -> RingResult<ClassPoly<D>> {
        check_coeff_kind::<D>(&spec)?;
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (*m, f(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(ClassPoly { spec, terms })
    }

    /// Human-readable text, highest monomials first.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let nv = self.spec.num_vars();
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mut mono = Vec::new();
            for slot in 0..nv {
                match m.exp(slot) {
                    0 => {}
                    1 => mono.push(self.spec.var_at(slot).to_string()),
                    e => mono.push(format!("{}^{e}", self.spec.var_at(slot))),
                }
            }
            let mono = mono.join("*");
            let text = c.to_text();
            let simple = !text[1..].contains([' ', '+', '-']) && !text.contains('d');
            let (neg, body) = if simple && text.starts_with('-') { (true, &text[1..]) } else { (false, text.as_str()) };
            let coef = if simple { body.to_string() } else { format!("({body})") };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&coef);
            } else if coef == "1" {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{coef}*{mono}"));
            }
        }
        out
    }
}

impl<C: Coeff> fmt::Display for ClassPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<'a, C: Coeff> Add<&'a ClassPoly<C>> for &'a ClassPoly<C> {
    type Output = ClassPoly<C>;
    /// Panics if the ring specs differ.
    fn add(self, o: &ClassPoly<C>) -> ClassPoly<C> {
        self.try_add(o).expect("adding classes of different rings")
    }
}

impl<'a, C: Coeff> Sub<&'a ClassPoly<C>> for &'a ClassPoly<C> {
    type Output = ClassPoly<C>;
    /// Panics if the ring specs differ.
    fn sub(self, o: &ClassPoly<C>) -> ClassPoly<C> {
        self.try_sub(o).expect("subtracting classes of different rings")
    }
}

impl<'a, C: Coeff> Mul<&'a ClassPoly<C>> for &'a ClassPoly<C> {
    type Output = ClassPoly<C>;
    /// Panics if the ring specs differ or the hyperplane cap is reached.
    fn mul(self, o: &ClassPoly<C>) -> ClassPoly<C> {
        self.try_mul(o).expect("multiplying classes")
    }
}

impl<C: Coeff> Neg for &ClassPoly<C> {
    type Output = ClassPoly<C>;
    fn neg(self) -> ClassPoly<C> {
        let terms = self.terms.iter().map(|(m, c)| (*m, c.neg_ref())).collect();
        ClassPoly { spec: self.spec, terms }
    }
}
