//! Exact computation of the compact facets of the Newton polyhedron.

use strata_ring::{Rational, Scalar};

use num_traits::{One, Signed, Zero};

/// Solves the square system `A a = b` exactly; `None` if singular.
pub(crate) fn solve_square(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = Rational::one().div_ref(&a[col][col]);
        for entry in &mut a[col][col..n] {
            *entry = entry.mul_ref(&inv);
        }
        b[col] = b[col].mul_ref(&inv);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (entry, p) in a[r][col..n].iter_mut().zip(&pivot_row[col..n]) {
                    *entry = entry.sub_ref(&p.mul_ref(&f));
                }
                let t = b[col].mul_ref(&f);
                b[r] = b[r].sub_ref(&t);
            }
        }
    }
    Some(b)
}

/// `a . m`.
pub(crate) fn pairing(a: &[Rational], m: &[u32]) -> Rational {
    a.iter()
        .zip(m)
        .fold(Rational::zero(), |acc, (ai, &mi)| acc.add_ref(&ai.mul_ref(&Rational::from_i64(i64::from(mi)))))
}

fn combinations(len: usize, k: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, len: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..len {
            if len - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, len, k, cur, f);
            cur.pop();
        }
    }
    rec(0, len, k, &mut Vec::with_capacity(k), f);
}

/// Normals `a` (all entries positive) of the compact facets `a . m = 1` of
/// `conv(support) + R^n_+`, each with the support points lying on it.
pub(crate) fn compact_facets(n: usize, support: &[Vec<u32>]) -> Vec<(Vec<Rational>, Vec<Vec<u32>>)> {
    let mut found: Vec<(Vec<Rational>, Vec<Vec<u32>>)> = Vec::new();
    combinations(support.len(), n, &mut |idx| {
        let a: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&i| support[i].iter().map(|&e| Rational::from_i64(i64::from(e))).collect())
            .collect();
        let Some(normal) = solve_square(a, vec![Rational::one(); n]) else { return };
        if normal.iter().any(|c| !c.is_positive()) {
            return;
        }
        if support.iter().any(|m| pairing(&normal, m) < Rational::one()) {
            return;
        }
        if found.iter().any(|(f, _)| f == &normal) {
            return;
        }
        let on: Vec<Vec<u32>> = support.iter().filter(|m| pairing(&normal, m) == Rational::one()).cloned().collect();
        found.push((normal, on));
    });
    found
}
