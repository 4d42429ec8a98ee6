//! Representative normal forms (up to stable equivalence) of named types.

use std::fmt;
use std::str::FromStr;

use crate::diagram::NewtonDiagram;
use crate::error::DiagramError;

/// A named singularity type with a fixed representative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm {
    /// `z_1^{k+1}`.
    A(u32),
    /// `z_1^2 z_2 + z_2^{k-1}`, `k >= 4`.
    D(u32),
    /// `z_1^3 + z_2^4`.
    E6,
    /// `z_1^3 + z_2^3 + z_3^3`.
    P8,
    /// `z_1^4 + z_2^4`.
    X9,
    /// `z_1^3 + z_2^4 + z_2 z_3^2`.
    Q10,
    /// `z_1^4 + z_2^2 z_3 + z_1 z_3^2`.
    S11,
    /// `z_1^3 + z_2^3 + z_3^4`.
    U12,
    /// `z_1^p + z_2^q + z_3^r + z_1 z_2 z_3` with `1/p + 1/q + 1/r < 1`.
    T(u32, u32, u32),
    /// `Σ z_i^m`: an ordinary point of multiplicity `m`.
    Ordinary(u32),
    /// `Σ_{i<=r} z_i^{m+1} + Σ_{i>r} z_i^m`: an ordinary `m`-fold point of corank `r`.
    Corank { r: u32, mult: u32 },
}

impl NormalForm {
    /// Number of variables the core form needs.
    pub fn core_vars(&self) -> usize {
        match self {
            NormalForm::A(_) => 1,
            NormalForm::D(_) | NormalForm::E6 | NormalForm::X9 => 2,
            NormalForm::P8 | NormalForm::Q10 | NormalForm::S11 | NormalForm::U12 | NormalForm::T(..) => 3,
            NormalForm::Ordinary(_) => 1,
            NormalForm::Corank { r, .. } => (*r as usize).max(1),
        }
    }

    /// Support of the representative in `n` variables, completed by `z_i^2`
    /// (or `z_i^m` for ordinary and corank points) on the remaining axes.
    pub fn support(&self, n: usize) -> Result<Vec<Vec<u32>>, DiagramError> {
        if n < self.core_vars() {
            return Err(DiagramError::InvalidSupport(format!("{self} needs at least {} variables", self.core_vars())));
        }
        let mono = |pairs: &[(usize, u32)]| {
            let mut m = vec![0u32; n];
            for &(i, e) in pairs {
                m[i] += e;
            }
            m
        };
        let mut core: Vec<Vec<u32>> = match *self {
            NormalForm::A(k) => {
                if k < 1 {
                    return Err(DiagramError::InvalidSupport("A_k needs k >= 1".into()));
                }
                vec![mono(&[(0, k + 1)])]
            }
            NormalForm::D(k) => {
                if k < 4 {
                    return Err(DiagramError::InvalidSupport("D_k needs k >= 4".into()));
                }
                vec![mono(&[(0, 2), (1, 1)]), mono(&[(1, k - 1)])]
            }
            NormalForm::E6 => vec![mono(&[(0, 3)]), mono(&[(1, 4)])],
            NormalForm::X9 => vec![mono(&[(0, 4)]), mono(&[(1, 4)])],
            NormalForm::P8 => vec![mono(&[(0, 3)]), mono(&[(1, 3)]), mono(&[(2, 3)])],
            NormalForm::Q10 => vec![mono(&[(0, 3)]), mono(&[(1, 4)]), mono(&[(1, 1), (2, 2)])],
            NormalForm::S11 => vec![mono(&[(0, 4)]), mono(&[(1, 2), (2, 1)]), mono(&[(0, 1), (2, 2)])],
            NormalForm::U12 => vec![mono(&[(0, 3)]), mono(&[(1, 3)]), mono(&[(2, 4)])],
            NormalForm::T(p, q, r) => {
                if u64::from(q * r + p * r + p * q) >= u64::from(p * q * r) {
                    return Err(DiagramError::InvalidSupport("T_pqr needs 1/p + 1/q + 1/r < 1".into()));
                }
                vec![mono(&[(0, p)]), mono(&[(1, q)]), mono(&[(2, r)]), mono(&[(0, 1), (1, 1), (2, 1)])]
            }
            NormalForm::Ordinary(m) => {
                if m < 2 {
                    return Err(DiagramError::InvalidSupport("a singular point has multiplicity >= 2".into()));
                }
                return Ok((0..n).map(|i| mono(&[(i, m)])).collect());
            }
            NormalForm::Corank { r, mult } => {
                if mult < 2 || r as usize > n {
                    return Err(DiagramError::InvalidSupport("corank forms need mult >= 2 and r <= n".into()));
                }
                return Ok((0..n).map(|i| mono(&[(i, if i < r as usize { mult + 1 } else { mult })])).collect());
            }
        };
        for i in self.core_vars()..n {
            core.push(mono(&[(i, 2)]));
        }
        Ok(core)
    }

    /// The Newton diagram of the representative in `n` variables (compact
    /// facets only when the representative is not commode, as for `D_k`).
    pub fn diagram(&self, n: usize) -> Result<NewtonDiagram, DiagramError> {
        let support = self.support(n)?;
        Ok(NewtonDiagram::build_lenient(n, &support)?.with_name(self.to_string()))
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::A(k) => write!(f, "A{k}"),
            NormalForm::D(k) => write!(f, "D{k}"),
            NormalForm::E6 => f.write_str("E6"),
            NormalForm::P8 => f.write_str("P8"),
            NormalForm::X9 => f.write_str("X9"),
            NormalForm::Q10 => f.write_str("Q10"),
            NormalForm::S11 => f.write_str("S11"),
            NormalForm::U12 => f.write_str("U12"),
            NormalForm::T(p, q, r) => write!(f, "T{p},{q},{r}"),
            NormalForm::Ordinary(m) => write!(f, "ordinary{m}"),
            NormalForm::Corank { r, mult } => write!(f, "corank{r}m{mult}"),
        }
    }
}

impl FromStr for NormalForm {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        let unknown = || DiagramError::UnknownType(s.to_string());
        let num = |t: &str| t.parse::<u32>().map_err(|_| unknown());
        Ok(match s {
            "E6" => NormalForm::E6,
            "P8" => NormalForm::P8,
            "X9" => NormalForm::X9,
            "Q10" => NormalForm::Q10,
            "S11" => NormalForm::S11,
            "U12" => NormalForm::U12,
            _ => {
                if let Some(rest) = s.strip_prefix("ordinary") {
                    NormalForm::Ordinary(num(rest)?)
                } else if let Some(rest) = s.strip_prefix("corank") {
                    let (r, m) = rest.split_once('m').ok_or_else(unknown)?;
                    NormalForm::Corank { r: num(r)?, mult: num(m)? }
                } else if let Some(rest) = s.strip_prefix('T') {
                    let parts: Vec<&str> = rest.split(',').collect();
                    if parts.len() != 3 {
                        return Err(unknown());
                    }
                    NormalForm::T(num(parts[0])?, num(parts[1])?, num(parts[2])?)
                } else if let Some(rest) = s.strip_prefix('A') {
                    NormalForm::A(num(rest)?)
                } else if let Some(rest) = s.strip_prefix('D') {
                    NormalForm::D(num(rest)?)
                } else {
                    return Err(unknown());
                }
            }
        })
    }
}
