//! A small exact expression language for transcribed formulas.
//!
//! Expressions combine integers, named integer parameters (`n`, `r`, loop
//! variables), the hypersurface degree `d` and ring generators (`Q`, `F`, `X`,
//! `Y1`, ...) with `+ - * / ^` and the functions
//!
//! * `binom(a, b)`, `fact(a)`: integer combinatorics;
//! * `sum(i, lo, hi, body)`: `body` summed over `i = lo..=hi` (empty if `hi < lo`);
//! * `h(k, V1, V2, ..)`: complete homogeneous polynomial of degree `k`.
//!
//! Values are exact: rationals, rational functions of `d` (so that formulas
//! such as `(d-1)^(n-3)` can be evaluated for small `n` and simplified), or
//! classes of a ring.  Lowercase `x` and `y` are accepted for `X` and `Y1`.

use std::collections::HashMap;

use num_traits::{One, ToPrimitive, Zero};

use crate::error::{RingError, RingResult};
use crate::scalar::{binomial, Scalar};
use crate::spec::{RingSpec, Var};
use crate::{DPolyQ, NumClass, Rational};

/// Parsed expression tree.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    /// Integer literal.
    Num(Rational),
    /// Parameter, `d` or generator name.
    Ident(String),
    /// Negation.
    Neg(Box<Expr>),
    /// Binary operation.
    Bin(char, Box<Expr>, Box<Expr>),
    /// Function call.
    Call(String, Vec<Expr>),
}

/// The value of an expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    /// A rational number.
    Num(Rational),
    /// A rational function of `d`, numerator over denominator.
    Frac(DPolyQ, DPolyQ),
    /// A class of the evaluation ring.
    Class(NumClass),
}

/// Bindings used during evaluation.
#[derive(Clone, Debug, Default)]
pub struct Env {
    /// Integer (or rational) parameters.
    pub params: HashMap<String, Rational>,
    /// Ring in which generators are interpreted, if any.
    pub ring: Option<RingSpec>,
}

impl Env {
    /// Environment binding `n` only.
    pub fn with_n(n: u32) -> Self {
        let mut e = Env::default();
        e.params.insert("n".into(), Rational::from_i64(i64::from(n)));
        e
    }

    /// Adds a parameter.
    pub fn param(mut self, name: &str, v: i64) -> Self {
        self.params.insert(name.into(), Rational::from_i64(v));
        self
    }

    /// Sets the ring for generators.
    pub fn ring(mut self, ring: RingSpec) -> Self {
        self.ring = Some(ring);
        self
    }
}

fn perr(msg: impl Into<String>) -> RingError {
    RingError::Parse(msg.into())
}

struct Parser<'a> {
    toks: Vec<Tok<'a>>,
    pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok<'a> {
    Num(&'a str),
    Ident(&'a str),
    Sym(char),
}

fn tokenize(s: &str) -> RingResult<Vec<Tok<'_>>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && (bytes[i] as char).is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(&s[start..i]));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Tok::Ident(&s[start..i]));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(perr(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> RingResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(perr(format!("expected {c:?} at token {}", self.pos)))
        }
    }

    fn expr(&mut self) -> RingResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> RingResult<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> RingResult<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> RingResult<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            Ok(Expr::Bin('^', Box::new(base), Box::new(self.unary()?)))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> RingResult<Expr> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                let v: num_bigint::BigInt = s.parse().map_err(|_| perr(format!("bad number {s:?}")))?;
                Ok(Expr::Num(Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = Vec::new();
                    if !self.eat(')') {
                        loop {
                            args.push(self.expr()?);
                            if self.eat(')') {
                                break;
                            }
                            self.expect(',')?;
                        }
                    }
                    Ok(Expr::Call(name.to_string(), args))
                } else {
                    Ok(Expr::Ident(name.to_string()))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            other => Err(perr(format!("unexpected token {other:?}"))),
        }
    }
}

/// Parses an expression.
pub fn parse_expr(text: &str) -> RingResult<Expr> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(format!("trailing input in {text:?}")));
    }
    Ok(e)
}

fn generator(name: &str, ring: &RingSpec) -> Option<Var> {
    let v = match name {
        "x" => Var::X,
        "y" => Var::Y(1),
        "Q" | "F" => ring.hyper_var(),
        other => other.parse::<Var>().ok()?,
    };
    ring.slot(v).ok().map(|_| v)
}

fn int_of(v: &Value, what: &str) -> RingResult<i64> {
    match v {
        Value::Num(r) if r.is_integer() => {
            r.to_integer().to_i64().ok_or_else(|| perr(format!("{what} out of range")))
        }
        _ => Err(perr(format!("{what} must be an integer, got {v:?}"))),
    }
}

fn poly_divmod(a: &DPolyQ, b: &DPolyQ) -> Option<(DPolyQ, DPolyQ)> {
    let db = b.degree()?;
    let lead = b.coeff(db);
    let mut rem: Vec<Rational> = a.coeffs().to_vec();
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while rem.len() > db && !rem.is_empty() {
        let k = rem.len() - 1;
        let c = &rem[k] / &lead;
        if !c.is_zero() {
            for (i, bc) in b.coeffs().iter().enumerate() {
                let t = &c * bc;
                rem[k - db + i] -= t;
            }
            quot[k - db] = c;
        }
        rem.pop();
    }
    Some((DPolyQ::from_coeffs(quot), DPolyQ::from_coeffs(rem)))
}

fn frac_of(v: &Value) -> Option<(DPolyQ, DPolyQ)> {
    match v {
        Value::Num(r) => Some((DPolyQ::constant(r.clone()), DPolyQ::one())),
        Value::Frac(a, b) => Some((a.clone(), b.clone())),
        Value::Class(_) => None,
    }
}

/// Cancels a rational function as far as exact division allows.
fn reduce(num: DPolyQ, den: DPolyQ) -> Value {
    if let Some(c) = den.as_constant() {
        let inv = Rational::one() / c;
        let p = num.scale(&inv);
        return match p.as_constant() {
            Some(k) => Value::Num(k),
            None => Value::Frac(p, DPolyQ::one()),
        };
    }
    if let Some((q, r)) = poly_divmod(&num, &den) {
        if r.is_zero() {
            return reduce(q, DPolyQ::one());
        }
    }
    Value::Frac(num, den)
}

fn class_of(v: Value, ring: Option<RingSpec>) -> RingResult<NumClass> {
    match v {
        Value::Class(c) => Ok(c),
        Value::Num(r) => {
            let ring = ring.ok_or_else(|| perr("no ring for a class expression"))?;
            NumClass::constant(ring, r)
        }
        Value::Frac(..) => Err(perr("cannot mix d with ring generators")),
    }
}

fn binary(op: char, a: Value, b: Value, ring: Option<RingSpec>) -> RingResult<Value> {
    if op == '^' {
        let e = int_of(&b, "exponent")?;
        return match a {
            Value::Num(r) => {
                if e < 0 && r.is_zero() {
                    return Err(perr("zero to a negative power"));
                }
                let p = num_traits::pow(r.clone(), e.unsigned_abs() as usize);
                Ok(Value::Num(if e < 0 { Rational::one() / p } else { p }))
            }
            Value::Frac(n, d) => {
                let k = e.unsigned_abs() as u32;
                let (n, d) = if e < 0 { (d.pow(k), n.pow(k)) } else { (n.pow(k), d.pow(k)) };
                Ok(reduce(n, d))
            }
            Value::Class(c) => {
                let k = u32::try_from(e).map_err(|_| perr("negative power of a class"))?;
                Ok(Value::Class(c.try_pow(k)?))
            }
        };
    }
    if matches!(a, Value::Class(_)) || matches!(b, Value::Class(_)) {
        let ca = class_of(a, ring)?;
        return match op {
            '+' => Ok(Value::Class(ca.try_add(&class_of(b, ring)?)?)),
            '-' => Ok(Value::Class(ca.try_sub(&class_of(b, ring)?)?)),
            '*' => Ok(Value::Class(ca.try_mul(&class_of(b, ring)?)?)),
            '/' => match b {
                Value::Num(r) if !r.is_zero() => Ok(Value::Class(ca.scale(&(Rational::one() / r)))),
                _ => Err(perr("classes can only be divided by nonzero numbers")),
            },
            _ => Err(perr(format!("unknown operator {op}"))),
        };
    }
    if let (Value::Num(x), Value::Num(y)) = (&a, &b) {
        return Ok(Value::Num(match op {
            '+' => x + y,
            '-' => x - y,
            '*' => x * y,
            '/' => {
                if y.is_zero() {
                    return Err(perr("division by zero"));
                }
                x / y
            }
            _ => return Err(perr(format!("unknown operator {op}"))),
        }));
    }
    let (an, ad) = frac_of(&a).expect("not a class");
    let (bn, bd) = frac_of(&b).expect("not a class");
    Ok(match op {
        '+' => reduce(&(&an * &bd) + &(&bn * &ad), &ad * &bd),
        '-' => reduce(&(&an * &bd) - &(&bn * &ad), &ad * &bd),
        '*' => reduce(&an * &bn, &ad * &bd),
        '/' => {
            if bn.is_zero() {
                return Err(perr("division by zero"));
            }
            reduce(&an * &bd, &ad * &bn)
        }
        _ => return Err(perr(format!("unknown operator {op}"))),
    })
}

/// Evaluates an expression.
pub fn eval(e: &Expr, env: &Env) -> RingResult<Value> {
    match e {
        Expr::Num(r) => Ok(Value::Num(r.clone())),
        Expr::Ident(name) => {
            if let Some(v) = env.params.get(name) {
                return Ok(Value::Num(v.clone()));
            }
            if name == "d" {
                return Ok(Value::Frac(DPolyQ::d(), DPolyQ::one()));
            }
            let ring = env.ring.ok_or_else(|| perr(format!("unbound name {name:?}")))?;
            let v = generator(name, &ring).ok_or_else(|| RingError::UnknownVariable(name.clone()))?;
            Ok(Value::Class(NumClass::var(ring, v)?))
        }
        Expr::Neg(a) => binary('-', Value::Num(Rational::zero()), eval(a, env)?, env.ring),
        Expr::Bin(op, a, b) => binary(*op, eval(a, env)?, eval(b, env)?, env.ring),
        Expr::Call(f, args) => call(f, args, env),
    }
}

fn call(f: &str, args: &[Expr], env: &Env) -> RingResult<Value> {
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(perr(format!("{f} takes {k} arguments")))
        }
    };
    match f {
        "binom" => {
            arity(2)?;
            let a = int_of(&eval(&args[0], env)?, "binom argument")?;
            let b = int_of(&eval(&args[1], env)?, "binom argument")?;
            Ok(Value::Num(binomial(a, b)))
        }
        "fact" => {
            arity(1)?;
            let a = int_of(&eval(&args[0], env)?, "fact argument")?;
            if a < 0 {
                return Err(perr("factorial of a negative number"));
            }
            Ok(Value::Num((1..=a).fold(Rational::one(), |acc, i| acc * Rational::from_i64(i))))
        }
        "sum" => {
            arity(4)?;
            let Expr::Ident(var) = &args[0] else {
                return Err(perr("sum needs a variable name"));
            };
            let lo = int_of(&eval(&args[1], env)?, "sum bound")?;
            let hi = int_of(&eval(&args[2], env)?, "sum bound")?;
            let mut inner = env.clone();
            let mut acc = Value::Num(Rational::zero());
            for i in lo..=hi {
                inner.params.insert(var.clone(), Rational::from_i64(i));
                acc = binary('+', acc, eval(&args[3], &inner)?, env.ring)?;
            }
            Ok(acc)
        }
        "h" => {
            if args.is_empty() {
                return Err(perr("h needs a degree"));
            }
            let k = int_of(&eval(&args[0], env)?, "degree")?;
            let ring = env.ring.ok_or_else(|| perr("h needs a ring"))?;
            let vars = args[1..]
                .iter()
                .map(|a| match a {
                    Expr::Ident(name) => generator(name, &ring).ok_or_else(|| RingError::UnknownVariable(name.clone())),
                    _ => Err(perr("h takes generator names")),
                })
                .collect::<RingResult<Vec<_>>>()?;
            if k < 0 {
                return Ok(Value::Class(NumClass::zero(ring)?));
            }
            Ok(Value::Class(NumClass::complete_homogeneous(ring, k as u32, &vars)?))
        }
        other => Err(perr(format!("unknown function {other:?}"))),
    }
}

impl Value {
    /// The value as a polynomial in `d`, failing if it is not one.
    pub fn into_dpoly(self) -> RingResult<DPolyQ> {
        match self {
            Value::Num(r) => Ok(DPolyQ::constant(r)),
            Value::Frac(n, d) => match reduce(n, d) {
                Value::Num(r) => Ok(DPolyQ::constant(r)),
                Value::Frac(p, one) if one == DPolyQ::one() => Ok(p),
                _ => Err(perr("expression is not a polynomial in d")),
            },
            Value::Class(_) => Err(perr("expected a polynomial in d, got a class")),
        }
    }

    /// The value as a class of `ring`.
    pub fn into_class(self, ring: RingSpec) -> RingResult<NumClass> {
        class_of(self, Some(ring))
    }

    /// The value as a rational number.
    pub fn into_rational(self) -> RingResult<Rational> {
        match self {
            Value::Num(r) => Ok(r),
            other => Err(perr(format!("expected a number, got {other:?}"))),
        }
    }
}

/// Parses and evaluates a class expression in `ring`.
pub fn eval_class(text: &str, env: &Env, ring: RingSpec) -> RingResult<NumClass> {
    let mut env = env.clone();
    env.ring = Some(ring);
    eval(&parse_expr(text)?, &env)?.into_class(ring)
}

/// Parses and evaluates a polynomial in `d`.
pub fn eval_dpoly(text: &str, env: &Env) -> RingResult<DPolyQ> {
    eval(&parse_expr(text)?, env)?.into_dpoly()
}

/// Parses and evaluates a number.
pub fn eval_number(text: &str, env: &Env) -> RingResult<Rational> {
    eval(&parse_expr(text)?, env)?.into_rational()
}
