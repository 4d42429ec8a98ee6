//! Degeneration recipes.
//!
//! A recipe states an equation between classes of lifted strata,
//!
//! ```text
//! [source] · divisor = Σ mult_i [rhs_i] + Σ mult_j [residual_j],
//! ```
//!
//! where the source class is unknown.  When the divisor depends on the
//! hyperplane generator the equation determines the source class: it is the
//! quotient of an exact division.  Residual pieces may be left unknown (a
//! cycle class times an undetermined polynomial); they are then fixed by
//! requiring the division to be exact and the quotient to satisfy the
//! consistency conditions.

use serde::{Deserialize, Serialize};
use strata_ring::expr::{eval_class, eval_number, Env};
use strata_ring::{Basis, NumClass, Rational, RingSpec, Var, MAX_CAP};

use num_traits::{One, ToPrimitive, Zero};

use crate::cycles::{CycleKind, CycleOfJump};
use crate::error::{DegenError, DegenResult};
use crate::solve::{monomials, solve_affine, AffineFamily, Constraints, Rule};

/// The class carried by a residual piece.
#[derive(Clone, Debug, PartialEq)]
pub enum ResidualClass {
    /// A known class (the cycle class already included).
    Known(NumClass),
    /// `[cycle] · U` with `U` an unknown homogeneous polynomial in `vars`; its
    /// degree follows from the codimension of the equation.
    Solve {
        /// Generators `U` may depend on.
        vars: Vec<Var>,
    },
}

/// A residual piece of a degeneration.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidualSpec {
    /// The cycle of jump supporting the piece.
    pub cycle: CycleOfJump,
    /// Multiplicity of the piece.
    pub multiplicity: u32,
    /// Its class.
    pub class: ResidualClass,
}

/// A degeneration equation with unknown source class.
#[derive(Clone, Debug, PartialEq)]
pub struct DegenerationRecipe {
    /// Name of the unknown stratum.
    pub source: String,
    /// Class of the degenerating divisor.
    pub divisor: NumClass,
    /// Known strata on the right-hand side with their multiplicities.
    pub rhs: Vec<(String, NumClass, u32)>,
    /// Residual pieces.
    pub residuals: Vec<ResidualSpec>,
    /// Consistency conditions the source class must satisfy.
    pub constraints: Constraints,
}

/// Result of inverting a recipe.
#[derive(Clone, Debug, PartialEq)]
pub struct Inverted {
    /// The source class.
    pub class: NumClass,
    /// The residual classes (solved ones included), cycle class times factor.
    pub residuals: Vec<NumClass>,
    /// Number of unknown coefficients that were solved for.
    pub unknowns: usize,
}

fn check_divisor(divisor: &NumClass) -> DegenResult<()> {
    let spec = divisor.spec();
    let hs = spec.hyper_slot();
    let mut lead = Rational::zero();
    for (m, c) in divisor.terms() {
        match m.exp(hs) {
            0 => {}
            1 if m.degree() == 1 => lead = c.clone(),
            _ => return Err(DegenError::NotInvertible(format!("divisor is not affine in {}", spec.hyper_var()))),
        }
    }
    if lead.is_zero() {
        return Err(DegenError::NotInvertible(format!("divisor has no {} term", spec.hyper_var())));
    }
    Ok(())
}

/// Solves a recipe for its source class.
///
/// With all residuals known this is `divide_exact(Σ mult·rhs + Σ mult·residual,
/// divisor)`.  Unknown residual factors are determined by requiring that the
/// division leaves no remainder and that the quotient satisfies the recipe's
/// consistency conditions; a family of solutions is reported as `NonUnique`.
pub fn invert_division(recipe: &DegenerationRecipe) -> DegenResult<Inverted> {
    check_divisor(&recipe.divisor)?;
    let spec = *recipe.divisor.spec();
    let mut known = NumClass::zero(spec)?;
    for (name, class, mult) in &recipe.rhs {
        if *mult == 0 {
            return Err(DegenError::Recipe(format!("right-hand side {name} has multiplicity 0")));
        }
        if class.spec() != &spec {
            return Err(DegenError::Recipe(format!("right-hand side {name} lives in another ring")));
        }
        known = known.try_add(&class.scale(&Rational::from_integer((*mult).into())))?;
    }
    let degree = known.homogeneous_degree();
    let mut cols = Vec::new();
    let mut owner = Vec::new();
    for (i, r) in recipe.residuals.iter().enumerate() {
        if r.multiplicity == 0 {
            return Err(DegenError::Recipe("residual multiplicity must be at least 1".into()));
        }
        let mult = Rational::from_integer(r.multiplicity.into());
        match &r.class {
            ResidualClass::Known(c) => known = known.try_add(&c.scale(&mult))?,
            ResidualClass::Solve { vars } => {
                let cycle: NumClass = r.cycle.class(spec)?;
                let cyc_deg = cycle.homogeneous_degree().unwrap_or(0);
                let total = degree.ok_or_else(|| DegenError::Recipe("cannot size an unknown residual".into()))?;
                let Some(deg) = total.checked_sub(cyc_deg) else { continue };
                for m in monomials(&spec, vars, deg)? {
                    let mono = NumClass::from_terms(spec, [(m.exps(spec.num_vars()), Rational::one())])?;
                    cols.push(cycle.try_mul(&mono)?.scale(&mult));
                    owner.push(i);
                }
            }
        }
    }
    let (quot, rem) = known.divide_with_remainder(&recipe.divisor)?;
    if cols.is_empty() {
        if !rem.is_zero() {
            return Err(DegenError::NotInvertible(format!("division leaves {} remainder terms", rem.len())));
        }
        recipe.constraints.check(&quot).map_err(|constraint| DegenError::NoSolution { constraint })?;
        let residuals = recipe
            .residuals
            .iter()
            .map(|r| match &r.class {
                ResidualClass::Known(c) => c.clone(),
                ResidualClass::Solve { .. } => NumClass::zero(spec).expect("valid ring"),
            })
            .collect();
        return Ok(Inverted { class: quot, residuals, unknowns: 0 });
    }
    let mut family_cols = Vec::with_capacity(cols.len());
    for c in &cols {
        let (q, r) = c.divide_with_remainder(&recipe.divisor)?;
        family_cols.push(vec![r, q]);
    }
    let family = AffineFamily { base: vec![rem, quot], cols: family_cols };
    let rules = [Rule::Vanish, Rule::Consistent(recipe.constraints.clone())];
    let sol = solve_affine(&family, &rules, 1)?;
    let mut residuals: Vec<NumClass> = recipe
        .residuals
        .iter()
        .map(|r| match &r.class {
            ResidualClass::Known(c) => Ok(c.clone()),
            ResidualClass::Solve { .. } => NumClass::zero(spec),
        })
        .collect::<Result<_, _>>()?;
    for (j, a) in sol.coeffs.iter().enumerate() {
        if !a.is_zero() {
            let i = owner[j];
            let mult = Rational::from_integer(recipe.residuals[i].multiplicity.into());
            residuals[i] = residuals[i].try_add(&cols[j].scale(&(a / mult)))?;
        }
    }
    Ok(Inverted { class: sol.values[1].clone(), residuals, unknowns: sol.unknowns })
}

/// A cycle as written in a recipe file: projection coordinates `I` (empty
/// means all) and points `J` (`"x"`, `"y1"`, ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleRef {
    /// Projection coordinates.
    #[serde(rename = "I", default)]
    pub projection: Vec<u32>,
    /// Points.
    #[serde(rename = "J")]
    pub points: Vec<String>,
}

/// A right-hand side term of a recipe file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhsRef {
    /// Name of the stratum, resolved by the caller.
    #[serde(rename = "type")]
    pub name: String,
    /// Multiplicity.
    pub mult: u32,
    /// Number of auxiliary points of its lifting, when it has more points than
    /// the source; the extra points are integrated out.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<u32>,
}

/// A residual term of a recipe file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualRef {
    /// Supporting cycle.
    pub cycle: CycleRef,
    /// Multiplicity.
    pub mult: u32,
    /// `"solve"` or a class expression.
    pub class: String,
}

/// An exponent bound of a recipe file, e.g. `{"var": "Y1", "max": "n-1"}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRef {
    /// Generator.
    pub var: String,
    /// Largest allowed exponent, an expression in `n`.
    pub max: String,
}

/// A recipe as stored on disk (JSON).  Expressions may use `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecipeFile {
    /// Name of the unknown stratum.
    pub source: String,
    /// Smallest dimension the recipe applies to.
    #[serde(default = "one")]
    pub n_min: u32,
    /// Number of auxiliary points of the source lifting.
    pub points: u32,
    /// Basis of the classes, e.g. `"Q2"`.
    pub basis: String,
    /// Divisor class expression.
    pub divisor: String,
    /// Known strata.
    pub rhs: Vec<RhsRef>,
    /// Residual pieces.
    #[serde(default)]
    pub residuals: Vec<ResidualRef>,
    /// Exponent bounds of the source class.
    #[serde(default)]
    pub bounds: Vec<BoundRef>,
    /// Groups of point generators the source class is symmetric in.
    #[serde(default)]
    pub symmetric: Vec<Vec<String>>,
}

fn one() -> u32 {
    1
}

fn parse_var(name: &str) -> DegenResult<Var> {
    match name {
        "x" | "X" => Ok(Var::X),
        other => {
            let upper = other.replacen('y', "Y", 1);
            upper.parse::<Var>().map_err(|_| DegenError::Recipe(format!("unknown point {name:?}")))
        }
    }
}

fn int_expr(text: &str, env: &Env) -> DegenResult<u32> {
    let v = eval_number(text, env)?;
    if !v.is_integer() {
        return Err(DegenError::Recipe(format!("{text:?} is not an integer")));
    }
    v.to_integer().to_u32().ok_or_else(|| DegenError::Recipe(format!("{text:?} is negative")))
}

impl RecipeFile {
    /// Parses a JSON recipe.
    pub fn from_json(text: &str) -> DegenResult<Self> {
        serde_json::from_str(text).map_err(|e| DegenError::Recipe(e.to_string()))
    }

    /// The ring of the source class in dimension `n`.
    pub fn ring(&self, n: u32) -> DegenResult<RingSpec> {
        let basis: Basis = self.basis.parse()?;
        Ok(RingSpec::new(n, self.points, MAX_CAP, false, basis)?)
    }

    /// Instantiates the recipe in dimension `n`; `resolve(name, points, ring)`
    /// supplies the right-hand side classes: the stratum lifted with `points`
    /// auxiliary points, pushed forward to the points of `ring`.
    pub fn instantiate<R>(&self, n: u32, mut resolve: R) -> DegenResult<DegenerationRecipe>
    where
        R: FnMut(&str, u32, RingSpec) -> DegenResult<NumClass>,
    {
        if n < self.n_min {
            return Err(DegenError::Recipe(format!("recipe for {} needs n >= {}", self.source, self.n_min)));
        }
        let ring = self.ring(n)?;
        let env = Env::with_n(n);
        let divisor = eval_class(&self.divisor, &env, ring)?;
        let mut rhs = Vec::new();
        for r in &self.rhs {
            rhs.push((r.name.clone(), resolve(&r.name, r.points.unwrap_or(self.points), ring)?, r.mult));
        }
        let mut residuals = Vec::new();
        for r in &self.residuals {
            let vars: Vec<Var> = r.cycle.points.iter().map(|p| parse_var(p)).collect::<DegenResult<_>>()?;
            let with_x = vars.contains(&Var::X);
            let points: Vec<u32> = vars.iter().filter_map(|v| if let Var::Y(j) = v { Some(*j) } else { None }).collect();
            let projection = if r.cycle.projection.is_empty() { (0..=n).collect() } else { r.cycle.projection.clone() };
            let codim = (projection.len() as u32 + 1).saturating_sub(vars.len() as u32);
            let cycle = CycleOfJump {
                projection,
                with_x,
                points,
                kind: CycleKind::Dependent,
                codim,
                jump: None,
                grading: 1,
            };
            let class = if r.class == "solve" {
                // The factor may depend on every generator except the second
                // point of a diagonal, which the cycle identifies with the first.
                let mut free = vec![ring.hyper_var(), Var::X];
                free.extend((1..=ring.num_y).map(Var::Y));
                if vars.len() == 2 && codim == n {
                    free.retain(|v| *v != vars[1]);
                }
                ResidualClass::Solve { vars: free }
            } else {
                ResidualClass::Known(eval_class(&r.class, &env, ring)?)
            };
            residuals.push(ResidualSpec { cycle, multiplicity: r.mult, class });
        }
        let max_power = self
            .bounds
            .iter()
            .map(|b| Ok((parse_var(&b.var)?, int_expr(&b.max, &env)?)))
            .collect::<DegenResult<Vec<_>>>()?;
        let symmetric = self
            .symmetric
            .iter()
            .map(|g| g.iter().map(|p| parse_var(p)).collect::<DegenResult<Vec<_>>>())
            .collect::<DegenResult<Vec<_>>>()?;
        Ok(DegenerationRecipe {
            source: self.source.clone(),
            divisor,
            rhs,
            residuals,
            constraints: Constraints { symmetric, max_power },
        })
    }
}
