//! Exact rational scalars and vectors, Gaussian elimination, and
//! Fourier-Motzkin feasibility for mixed equality / weak / strict systems.
//!
//! Every routine here is deterministic: pivoting takes the first nonzero
//! entry in column order, and Fourier-Motzkin eliminates variables in index
//! order with a fixed back-substitution rule. Downstream modules rely on
//! this to produce bit-identical output for identical input.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::{Error, Result};

pub type Int = BigInt;
pub type Rat = BigRational;

/// Shorthand for an integer scalar.
pub fn int(n: i64) -> Int {
    Int::from(n)
}

/// Shorthand for a rational scalar `n/d`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(Int::from(n), Int::from(d))
}

/// Integer vector from machine integers.
pub fn ivec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Rational vector from machine integers.
pub fn qvec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| Rat::from_integer(Int::from(x))).collect()
}

/// Rational vector from an integer vector.
pub fn to_rational(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| Rat::from_integer(x.clone())).collect()
}

/// Exact pairing of an M-side functional with an N-side vector.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "pairing of vectors of unequal length");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Integer pairing.
pub fn dot_int(a: &[Int], b: &[Int]) -> Int {
    assert_eq!(a.len(), b.len(), "pairing of vectors of unequal length");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of an integer functional with a rational vector.
pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len(), "pairing of vectors of unequal length");
    a.iter().zip(b).map(|(x, y)| Rat::from_integer(x.clone()) * y).sum()
}

pub fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn is_zero_ivec(v: &[Int]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Clears denominators: returns `(k*v, k)` where `k` is the least common
/// multiple of the denominators of the entries of `v` (so `k` is the least
/// positive integer making `k*v` integral).
pub fn clear_denominators(v: &[Rat]) -> (Vec<Int>, Int) {
    let mut k = Int::one();
    for x in v {
        k = k.lcm(x.denom());
    }
    let scaled = v
        .iter()
        .map(|x| (x * Rat::from_integer(k.clone())).to_integer())
        .collect();
    (scaled, k)
}

/// The unique primitive integer vector on the ray spanned by `v`.
pub fn primitive(v: &[Rat]) -> Result<Vec<Int>> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let (scaled, _) = clear_denominators(v);
    Ok(divide_by_gcd(&scaled))
}

/// Primitive vector on the ray of an integer vector.
pub fn primitive_int(v: &[Int]) -> Result<Vec<Int>> {
    if is_zero_ivec(v) {
        return Err(Error::ZeroVector);
    }
    Ok(divide_by_gcd(v))
}

fn divide_by_gcd(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    v.iter().map(|x| x / &g).collect()
}

/// Flips signs so the first nonzero entry is positive. Used to canonicalize
/// functionals whose sign carries no meaning (spans, kernels).
pub fn canonical_sign(v: &[Int]) -> Vec<Int> {
    match v.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => v.iter().map(|x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// Result of solving `A x = b` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearSolution {
    Solution {
        particular: Vec<Rat>,
        kernel: Vec<Vec<Rat>>,
    },
    Inconsistent,
}

/// Gaussian elimination with first-nonzero pivoting in column order.
///
/// Returns one exact solution together with a basis of the kernel, or
/// `Inconsistent`. The free variables of the particular solution are zero,
/// which makes the output deterministic.
pub fn solve_linear(rows: &[Vec<Rat>], rhs: &[Rat]) -> Result<LinearSolution> {
    if rows.len() != rhs.len() {
        return Err(Error::DimensionMismatch {
            expected: rows.len(),
            got: rhs.len(),
        });
    }
    let n = rows.first().map_or(0, |r| r.len());
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: r.len(),
            });
        }
    }

    let mut a: Vec<Vec<Rat>> = rows.to_vec();
    let mut b: Vec<Rat> = rhs.to_vec();
    let m = a.len();
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut row = 0usize;

    for col in 0..n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        b.swap(row, p);
        let inv = a[row][col].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        b[row] *= &inv;
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..n {
                    let t = &a[row][c] * &f;
                    a[r][c] -= t;
                }
                let t = &b[row] * &f;
                b[r] -= t;
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }

    for r in row..m {
        if !b[r].is_zero() {
            return Ok(LinearSolution::Inconsistent);
        }
    }

    let mut particular = vec![Rat::zero(); n];
    for (i, &col) in pivot_cols.iter().enumerate() {
        particular[col] = b[i].clone();
    }
    let mut kernel = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut k = vec![Rat::zero(); n];
        k[free] = Rat::one();
        for (i, &col) in pivot_cols.iter().enumerate() {
            k[col] = -a[i][free].clone();
        }
        kernel.push(k);
    }
    Ok(LinearSolution::Solution { particular, kernel })
}

/// Basis of `{ f : f * v = 0 for every v in vecs }`, as primitive integer
/// functionals in canonical sign, sorted.
pub fn kernel_functionals(vecs: &[Vec<Rat>], n: usize) -> Vec<Vec<Int>> {
    let rows: Vec<Vec<Rat>> = vecs.to_vec();
    let rhs = vec![Rat::zero(); rows.len()];
    let sol = if rows.is_empty() {
        LinearSolution::Solution {
            particular: vec![Rat::zero(); n],
            kernel: (0..n)
                .map(|i| {
                    let mut k = vec![Rat::zero(); n];
                    k[i] = Rat::one();
                    k
                })
                .collect(),
        }
    } else {
        solve_linear(&rows, &rhs).expect("homogeneous system is well-formed")
    };
    match sol {
        LinearSolution::Solution { kernel, .. } => {
            let mut out: Vec<Vec<Int>> = kernel
                .iter()
                .map(|k| canonical_sign(&primitive(k).expect("kernel basis vector is nonzero")))
                .collect();
            out.sort();
            out
        }
        LinearSolution::Inconsistent => unreachable!("homogeneous systems are consistent"),
    }
}

/// A system of exact linear constraints: equalities `a*x = b`, weak
/// inequalities `a*x <= b`, and strict inequalities `a*x < b`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinSystem {
    pub num_vars: usize,
    pub equalities: Vec<(Vec<Rat>, Rat)>,
    pub weak: Vec<(Vec<Rat>, Rat)>,
    pub strict: Vec<(Vec<Rat>, Rat)>,
}

impl LinSystem {
    pub fn new(num_vars: usize) -> Self {
        LinSystem {
            num_vars,
            ..Default::default()
        }
    }

    /// Exact substitution check.
    pub fn satisfies(&self, x: &[Rat]) -> bool {
        x.len() == self.num_vars
            && self.equalities.iter().all(|(a, b)| dot(a, x) == *b)
            && self.weak.iter().all(|(a, b)| dot(a, x) <= *b)
            && self.strict.iter().all(|(a, b)| dot(a, x) < *b)
    }

    fn check_lengths(&self) -> Result<()> {
        for (a, _) in self
            .equalities
            .iter()
            .chain(&self.weak)
            .chain(&self.strict)
        {
            if a.len() != self.num_vars {
                return Err(Error::DimensionMismatch {
                    expected: self.num_vars,
                    got: a.len(),
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct IneqRow {
    coeffs: Vec<Rat>,
    rhs: Rat,
    strict: bool,
}

impl IneqRow {
    /// Scale so the first nonzero coefficient (or the right-hand side) has
    /// absolute value one; used only to deduplicate parallel rows.
    fn normalized(&self) -> IneqRow {
        let pivot = self
            .coeffs
            .iter()
            .find(|x| !x.is_zero())
            .cloned()
            .unwrap_or_else(|| self.rhs.clone());
        if pivot.is_zero() {
            return self.clone();
        }
        let f = pivot.abs().recip();
        IneqRow {
            coeffs: self.coeffs.iter().map(|x| x * &f).collect(),
            rhs: &self.rhs * &f,
            strict: self.strict,
        }
    }
}

/// Fourier-Motzkin feasibility with exact arithmetic.
///
/// Equalities are eliminated first by substitution, then variables are
/// eliminated in index order. Back-substitution picks the midpoint of a
/// bounded interval, the bound itself for a weak one-sided bound, the bound
/// plus or minus one for a strict one-sided bound, and zero when the
/// variable is unconstrained. Returns a satisfying point or `None`.
pub fn fm_feasible(sys: &LinSystem) -> Result<Option<Vec<Rat>>> {
    sys.check_lengths()?;
    let n = sys.num_vars;

    let mut ineqs: Vec<IneqRow> = sys
        .weak
        .iter()
        .map(|(a, b)| IneqRow {
            coeffs: a.clone(),
            rhs: b.clone(),
            strict: false,
        })
        .chain(sys.strict.iter().map(|(a, b)| IneqRow {
            coeffs: a.clone(),
            rhs: b.clone(),
            strict: true,
        }))
        .collect();

    // x_j = expr * x + c, recorded in elimination order.
    let mut subs: Vec<(usize, Vec<Rat>, Rat)> = Vec::new();
    let mut eqs: Vec<(Vec<Rat>, Rat)> = sys.equalities.clone();
    let mut eliminated = vec![false; n];

    while let Some((a, b)) = first_pending(&mut eqs) {
        let Some(j) = a.iter().position(|x| !x.is_zero()) else {
            if b.is_zero() {
                continue;
            }
            return Ok(None);
        };
        let inv = a[j].recip();
        let mut expr: Vec<Rat> = a.iter().map(|x| -(x * &inv)).collect();
        expr[j] = Rat::zero();
        let c = &b * &inv;
        for (ra, rb) in eqs.iter_mut() {
            substitute(ra, rb, j, &expr, &c);
        }
        for row in ineqs.iter_mut() {
            substitute(&mut row.coeffs, &mut row.rhs, j, &expr, &c);
        }
        eliminated[j] = true;
        subs.push((j, expr, c));
    }

    // bounds[k] holds the rows that constrain the k-th eliminated variable.
    let mut stages: Vec<(usize, Vec<IneqRow>)> = Vec::new();
    for j in 0..n {
        if eliminated[j] {
            continue;
        }
        let (involving, mut passing): (Vec<IneqRow>, Vec<IneqRow>) =
            ineqs.into_iter().partition(|r| !r.coeffs[j].is_zero());
        let lowers: Vec<&IneqRow> = involving
            .iter()
            .filter(|r| r.coeffs[j].is_negative())
            .collect();
        let uppers: Vec<&IneqRow> = involving
            .iter()
            .filter(|r| r.coeffs[j].is_positive())
            .collect();
        for lo in &lowers {
            for up in &uppers {
                let fl = (-&lo.coeffs[j]).recip();
                let fu = up.coeffs[j].recip();
                let coeffs: Vec<Rat> = (0..n)
                    .map(|i| &lo.coeffs[i] * &fl + &up.coeffs[i] * &fu)
                    .collect();
                let rhs = &lo.rhs * &fl + &up.rhs * &fu;
                passing.push(IneqRow {
                    coeffs,
                    rhs,
                    strict: lo.strict || up.strict,
                });
            }
        }
        let mut seen = BTreeSet::new();
        passing.retain(|r| seen.insert(r.normalized()));
        stages.push((j, involving));
        ineqs = passing;
    }

    // Only constant rows remain.
    for r in &ineqs {
        debug_assert!(r.coeffs.iter().all(Zero::is_zero));
        let ok = if r.strict {
            r.rhs.is_positive()
        } else {
            !r.rhs.is_negative()
        };
        if !ok {
            return Ok(None);
        }
    }

    let mut x = vec![Rat::zero(); n];
    for (j, rows) in stages.iter().rev() {
        let mut lower: Option<(Rat, bool)> = None;
        let mut upper: Option<(Rat, bool)> = None;
        for r in rows {
            let rest: Rat = (0..n)
                .filter(|&i| i != *j)
                .map(|i| &r.coeffs[i] * &x[i])
                .sum();
            let bound = (&r.rhs - rest) / &r.coeffs[*j];
            if r.coeffs[*j].is_positive() {
                tighten_upper(&mut upper, bound, r.strict);
            } else {
                tighten_lower(&mut lower, bound, r.strict);
            }
        }
        x[*j] = match (lower, upper) {
            (Some((lo, ls)), Some((hi, hs))) => {
                if lo == hi {
                    if ls || hs {
                        return Ok(None);
                    }
                    lo
                } else {
                    (lo + hi) / rat(2, 1)
                }
            }
            (Some((lo, strict)), None) => {
                if strict {
                    lo + Rat::one()
                } else {
                    lo
                }
            }
            (None, Some((hi, strict))) => {
                if strict {
                    hi - Rat::one()
                } else {
                    hi
                }
            }
            (None, None) => Rat::zero(),
        };
    }

    for (j, expr, c) in subs.iter().rev() {
        x[*j] = dot(expr, &x) + c;
    }

    debug_assert!(sys.satisfies(&x));
    Ok(Some(x))
}

fn first_pending(eqs: &mut Vec<(Vec<Rat>, Rat)>) -> Option<(Vec<Rat>, Rat)> {
    if eqs.is_empty() {
        None
    } else {
        Some(eqs.remove(0))
    }
}

fn substitute(coeffs: &mut [Rat], rhs: &mut Rat, j: usize, expr: &[Rat], c: &Rat) {
    if coeffs[j].is_zero() {
        return;
    }
    let f = std::mem::replace(&mut coeffs[j], Rat::zero());
    for (i, e) in expr.iter().enumerate() {
        let t = e * &f;
        coeffs[i] += t;
    }
    *rhs -= &f * c;
}

fn tighten_lower(slot: &mut Option<(Rat, bool)>, bound: Rat, strict: bool) {
    match slot {
        Some((b, s)) => {
            if bound > *b {
                *slot = Some((bound, strict));
            } else if bound == *b {
                *s |= strict;
            }
        }
        None => *slot = Some((bound, strict)),
    }
}

fn tighten_upper(slot: &mut Option<(Rat, bool)>, bound: Rat, strict: bool) {
    match slot {
        Some((b, s)) => {
            if bound < *b {
                *slot = Some((bound, strict));
            } else if bound == *b {
                *s |= strict;
            }
        }
        None => *slot = Some((bound, strict)),
    }
}
