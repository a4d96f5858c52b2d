//! Exact multivariate Laurent-polynomial arithmetic.
//!
//! Exponents live in (½ℤ)^μ and are stored in doubled units: the
//! stored integer 2s represents the exponent s. Half-integer gradings
//! and t ↦ t^(1/2) substitutions therefore never leave integer
//! arithmetic. Coefficients are i64; the zero polynomial is the empty
//! term map. The monomial order is lexicographic on stored exponent
//! vectors; it drives exact division, display order, and the sign
//! normalization of rational functions.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Exponent vector in doubled half-units. `Ord` is lexicographic,
/// which is the fixed monomial order of this module.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<i32>);

impl ExponentVector {
    pub fn zeros(nvars: usize) -> Self {
        ExponentVector(vec![0; nvars])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| -a).collect())
    }

    /// Doubles every exponent (t ↦ t², i.e. stored units ×2).
    pub fn double(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| 2 * a).collect())
    }

    /// Halves every exponent (t ↦ t^(1/2)); stored units stay integral
    /// because ½ℤ absorbs the halving of integer exponents.
    pub fn halve(&self) -> Self {
        ExponentVector(self.0.iter().map(|a| a / 2).collect())
    }
}

/// Multivariate Laurent polynomial over ℤ with exponents in (½ℤ)^μ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<ExponentVector, i64>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    pub fn constant(nvars: usize, c: i64) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(ExponentVector::zeros(nvars), c);
        p
    }

    /// Single term c·t^e, where `exps` is in stored half-units.
    pub fn monomial(c: i64, exps: ExponentVector) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// t_var^(half_units/2) as a monomial.
    pub fn var_pow(nvars: usize, var: usize, half_units: i32) -> Self {
        assert!(var < nvars);
        let mut e = ExponentVector::zeros(nvars);
        e.0[var] = half_units;
        Self::monomial(1, e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, i64)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn coeff(&self, exps: &ExponentVector) -> i64 {
        self.terms.get(exps).copied().unwrap_or(0)
    }

    /// Highest term in the monomial order, with its coefficient.
    pub fn leading(&self) -> Option<(&ExponentVector, i64)> {
        self.terms.iter().next_back().map(|(e, &c)| (e, c))
    }

    /// Adds c·t^e in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exps: ExponentVector, c: i64) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mismatched variable count");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mismatched variable count");
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.nvars, other.nvars, "mismatched variable count");
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: i64, exps: &ExponentVector) -> Self {
        if c == 0 {
            return Self::zero(self.nvars);
        }
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, k)| (e.add(exps), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut out = Self::one(self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    /// Substitution t_k ↦ t_k^(−1) for every variable; an involution.
    pub fn invert_vars(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.neg(), c)).collect(),
        }
    }

    /// Substitution t_k ↦ t_k² for every variable.
    pub fn substitute_square(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, &c)| (e.double(), c)).collect(),
        }
    }

    /// Substitution t_k ↦ t_k^(1/2); requires every exponent to be an
    /// integer (even stored units), since quarter-units do not exist.
    pub fn substitute_sqrt(&self) -> Self {
        LaurentPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| {
                    assert!(
                        e.0.iter().all(|h| h % 2 == 0),
                        "t^(1/2) substitution needs integer exponents"
                    );
                    (e.halve(), c)
                })
                .collect(),
        }
    }

    /// Sets variable `var` to −1 and drops it from the context.
    /// Requires integer exponents in that variable.
    pub fn substitute_minus_one(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars - 1);
        for (e, c) in self.terms() {
            let h = e.0[var];
            assert!(h % 2 == 0, "q = -1 substitution needs integer exponents");
            let sign = if (h / 2).rem_euclid(2) == 1 { -1 } else { 1 };
            let mut rest = e.0.clone();
            rest.remove(var);
            out.add_term(ExponentVector(rest), c * sign);
        }
        out
    }

    fn exponent_box(&self) -> Option<(Vec<i32>, Vec<i32>)> {
        if self.is_zero() {
            return None;
        }
        let mut min = vec![i32::MAX; self.nvars];
        let mut max = vec![i32::MIN; self.nvars];
        for (e, _) in self.terms() {
            for k in 0..self.nvars {
                min[k] = min[k].min(e.0[k]);
                max[k] = max[k].max(e.0[k]);
            }
        }
        Some((min, max))
    }

    /// Exact division: returns q with q·d = self, or `NotDivisible`.
    ///
    /// Long division by leading terms under the lexicographic order;
    /// termination is guaranteed because every quotient monomial must
    /// lie in the finite box with per-variable bounds
    /// [min(p)−min(d), max(p)−max(d)], which is exact for Laurent
    /// polynomials over an integral domain.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        assert_eq!(self.nvars, d.nvars, "mismatched variable count");
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Ok(Self::zero(self.nvars));
        }
        let (pmin, pmax) = self.exponent_box().unwrap();
        let (dmin, dmax) = d.exponent_box().unwrap();
        let qmin: Vec<i32> = pmin.iter().zip(&dmin).map(|(p, d)| p - d).collect();
        let qmax: Vec<i32> = pmax.iter().zip(&dmax).map(|(p, d)| p - d).collect();
        if qmin.iter().zip(&qmax).any(|(lo, hi)| lo > hi) {
            return Err(Error::NotDivisible(
                "quotient degree box is empty".to_string(),
            ));
        }
        let (dl_e, dl_c) = d.leading().unwrap();
        let dl_e = dl_e.clone();
        let mut r = self.clone();
        let mut q = Self::zero(self.nvars);
        while !r.is_zero() {
            let (rl_e, rl_c) = r.leading().unwrap();
            let e = rl_e.sub(&dl_e);
            if e.0
                .iter()
                .zip(qmin.iter().zip(&qmax))
                .any(|(x, (lo, hi))| x < lo || x > hi)
            {
                return Err(Error::NotDivisible(
                    "quotient monomial escapes the degree box".to_string(),
                ));
            }
            if rl_c % dl_c != 0 {
                return Err(Error::NotDivisible(
                    "leading coefficient does not divide".to_string(),
                ));
            }
            let c = rl_c / dl_c;
            r = r.sub(&d.mul_monomial(c, &e));
            q.add_term(e, c);
        }
        Ok(q)
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

/// Determinant of a square matrix of Laurent polynomials.
///
/// Cofactor expansion below 4×4; fraction-free Bareiss elimination
/// (with row pivoting and exact interior divisions) from 4×4 up.
pub fn determinant(mat: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = mat.len();
    assert!(n > 0, "determinant of an empty matrix");
    for row in mat {
        assert_eq!(row.len(), n, "matrix is not square");
    }
    let nvars = mat[0][0].nvars();
    if n <= 3 {
        return det_cofactor(
            mat,
            &(0..n).collect::<Vec<_>>(),
            &(0..n).collect::<Vec<_>>(),
            nvars,
        );
    }
    let mut m: Vec<Vec<LaurentPoly>> = mat.to_vec();
    let mut sign = 1i64;
    let mut prev = LaurentPoly::one(nvars);
    for k in 0..n - 1 {
        let pivot = (k..n).find(|&r| !m[r][k].is_zero());
        let Some(pivot) = pivot else {
            return LaurentPoly::zero(nvars);
        };
        if pivot != k {
            m.swap(pivot, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t
                    .divide_exact(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = LaurentPoly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        det.neg()
    } else {
        det
    }
}

fn det_cofactor(
    mat: &[Vec<LaurentPoly>],
    rows: &[usize],
    cols: &[usize],
    nvars: usize,
) -> LaurentPoly {
    let n = rows.len();
    if n == 1 {
        return mat[rows[0]][cols[0]].clone();
    }
    let mut acc = LaurentPoly::zero(nvars);
    let sub_rows = &rows[1..];
    for (idx, &c) in cols.iter().enumerate() {
        let entry = &mat[rows[0]][c];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&cc| cc != c).collect();
        let minor = det_cofactor(mat, sub_rows, &sub_cols, nvars);
        let signed = if idx % 2 == 0 {
            entry.mul(&minor)
        } else {
            entry.mul(&minor).neg()
        };
        acc = acc.add(&signed);
    }
    acc
}

/// Formal quotient of Laurent polynomials. Not reduced to lowest
/// terms; equality is by cross-multiplication, which is decidable and
/// transitive over an integral domain.
#[derive(Debug, Clone)]
pub struct RationalFn {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFn {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars(), "mismatched variable count");
        RationalFn { num, den }
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        let one = LaurentPoly::one(p.nvars());
        RationalFn::new(p, one)
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn neg(&self) -> Self {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalFn::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        RationalFn::new(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> Self {
        RationalFn::new(&self.num * p, self.den.clone())
    }

    pub fn scale(&self, c: i64) -> Self {
        RationalFn {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn invert_vars(&self) -> Self {
        RationalFn::new(self.num.invert_vars(), self.den.invert_vars())
    }

    pub fn substitute_square(&self) -> Self {
        RationalFn::new(self.num.substitute_square(), self.den.substitute_square())
    }

    pub fn substitute_sqrt(&self) -> Self {
        RationalFn::new(self.num.substitute_sqrt(), self.den.substitute_sqrt())
    }

    /// The underlying polynomial, when the quotient is exact.
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        self.num.divide_exact(&self.den).ok()
    }

    /// Display form: reduce to a polynomial when possible, otherwise
    /// shift both parts by a monomial to center the denominator and
    /// give it a positive leading coefficient. The value is unchanged.
    fn display_parts(&self) -> (LaurentPoly, Option<LaurentPoly>) {
        if self.num.is_zero() {
            return (LaurentPoly::zero(self.nvars()), None);
        }
        if let Some(q) = self.as_poly() {
            return (q, None);
        }
        let (dmin, dmax) = self.den.exponent_box().unwrap();
        let shift = ExponentVector(
            dmin.iter()
                .zip(&dmax)
                .map(|(lo, hi)| {
                    if (lo + hi) % 2 == 0 {
                        -(lo + hi) / 2
                    } else {
                        -lo
                    }
                })
                .collect(),
        );
        let mut num = self.num.mul_monomial(1, &shift);
        let mut den = self.den.mul_monomial(1, &shift);
        if den.leading().map(|(_, c)| c < 0).unwrap_or(false) {
            num = num.neg();
            den = den.neg();
        }
        (num, Some(den))
    }
}

impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for RationalFn {}

fn write_exponent(out: &mut String, var: usize, half_units: i32) {
    out.push('t');
    out.push_str(&(var + 1).to_string());
    if half_units == 2 {
        return;
    }
    out.push('^');
    if half_units % 2 == 0 {
        let e = half_units / 2;
        if e < 0 {
            out.push_str(&format!("({e})"));
        } else {
            out.push_str(&e.to_string());
        }
    } else {
        out.push_str(&format!("({half_units}/2)"));
    }
}

fn write_term(out: &mut String, exps: &ExponentVector, coeff: i64, first: bool) {
    let neg = coeff < 0;
    let mag = coeff.unsigned_abs();
    if first {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let mut vars = String::new();
    let mut any = false;
    for (k, &h) in exps.0.iter().enumerate() {
        if h != 0 {
            if any {
                vars.push('*');
            }
            write_exponent(&mut vars, k, h);
            any = true;
        }
    }
    if !any {
        out.push_str(&mag.to_string());
    } else if mag != 1 {
        out.push_str(&mag.to_string());
        out.push('*');
        out.push_str(&vars);
    } else {
        out.push_str(&vars);
    }
}

impl fmt::Display for LaurentPoly {
    /// Canonical text: terms in descending monomial order, exponents
    /// as integers or halves in lowest terms, e.g. `t1^2 - 1 + t1^(-2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            write_term(&mut out, e, *c, i == 0);
        }
        write!(f, "{out}")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.display_parts();
        match den {
            None => write!(f, "{num}"),
            Some(den) => {
                let num_s = num.to_string();
                let den_s = den.to_string();
                let num_wrapped = if num.num_terms() > 1 {
                    format!("({num_s})")
                } else {
                    num_s
                };
                let den_wrapped = if den.num_terms() > 1 {
                    format!("({den_s})")
                } else {
                    den_s
                };
                write!(f, "{num_wrapped}/{den_wrapped}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(h: i32) -> LaurentPoly {
        LaurentPoly::var_pow(1, 0, h)
    }

    #[test]
    fn additive_cancellation() {
        let p = t(2).add(&LaurentPoly::one(1));
        let q = LaurentPoly::constant(1, -1);
        assert_eq!(p.add(&q), t(2));
    }

    #[test]
    fn difference_of_squares() {
        // (t^(1/2) - t^(-1/2)) (t^(1/2) + t^(-1/2)) = t - t^(-1)
        let a = t(1).sub(&t(-1));
        let b = t(1).add(&t(-1));
        assert_eq!(a.mul(&b), t(2).sub(&t(-2)));
    }

    #[test]
    fn absorbing_zero() {
        let p = LaurentPoly::one(1).sub(&t(-2));
        assert!(p.mul(&LaurentPoly::zero(1)).is_zero());
    }

    #[test]
    fn invert_vars_examples() {
        let p = t(2).sub(&t(-2));
        assert_eq!(p.invert_vars(), t(-2).sub(&t(2)));
        assert_eq!(LaurentPoly::one(1).invert_vars(), LaurentPoly::one(1));
        assert_eq!(p.invert_vars().invert_vars(), p);
    }

    #[test]
    fn substitute_square_examples() {
        let p = t(-2).sub(&LaurentPoly::one(1));
        assert_eq!(p.substitute_square(), t(-4).sub(&LaurentPoly::one(1)));
        assert_eq!(t(1).substitute_square(), t(2));
    }

    #[test]
    fn divide_exact_examples() {
        // (t^2 - t^(-2)) / (t - t^(-1)) = t + t^(-1)
        let p = t(4).sub(&t(-4));
        let d = t(2).sub(&t(-2));
        assert_eq!(p.divide_exact(&d).unwrap(), t(2).add(&t(-2)));
        // (t^(-2) - t^(-1)) / (t^(-1) - 1) = t^(-1)
        let p = t(-4).sub(&t(-2));
        let d = t(-2).sub(&LaurentPoly::one(1));
        assert_eq!(p.divide_exact(&d).unwrap(), t(-2));
    }

    #[test]
    fn divide_independent_vars_fails() {
        let t1 = LaurentPoly::var_pow(2, 0, 2);
        let t2 = LaurentPoly::var_pow(2, 1, 2);
        let one = LaurentPoly::one(2);
        let p = t1.sub(&one);
        let d = t2.sub(&one);
        assert!(matches!(p.divide_exact(&d), Err(Error::NotDivisible(_))));
    }

    #[test]
    fn divide_round_trip() {
        let p = t(4).sub(&t(-2)).add(&LaurentPoly::constant(1, 3));
        let d = t(2).add(&t(-4)).sub(&LaurentPoly::constant(1, 2));
        let prod = p.mul(&d);
        assert_eq!(prod.divide_exact(&d).unwrap(), p);
        assert_eq!(prod.divide_exact(&p).unwrap(), d);
    }

    #[test]
    fn determinant_identity() {
        let id: Vec<Vec<LaurentPoly>> = (0..3)
            .map(|i| {
                (0..3)
                    .map(|j| {
                        if i == j {
                            LaurentPoly::one(1)
                        } else {
                            LaurentPoly::zero(1)
                        }
                    })
                    .collect()
            })
            .collect();
        assert_eq!(determinant(&id), LaurentPoly::one(1));
    }

    #[test]
    fn determinant_two_by_two() {
        // det [[t, 1], [1, t^(-1)]] = 0; det [[t, 1], [0, t]] = t^2
        let m = vec![
            vec![t(2), LaurentPoly::one(1)],
            vec![LaurentPoly::one(1), t(-2)],
        ];
        assert!(determinant(&m).is_zero());
        let m = vec![
            vec![t(2), LaurentPoly::one(1)],
            vec![LaurentPoly::zero(1), t(2)],
        ];
        assert_eq!(determinant(&m), t(4));
    }

    #[test]
    fn rational_equality_cross_multiplied() {
        // t / (t - 1) == t^2 / (t^2 - t)
        let a = RationalFn::new(t(2), t(2).sub(&LaurentPoly::one(1)));
        let b = RationalFn::new(t(4), t(4).sub(&t(2)));
        assert_eq!(a, b);
        let c = RationalFn::new(LaurentPoly::one(1), t(2).sub(&LaurentPoly::one(1)));
        assert_ne!(a, c);
    }

    #[test]
    fn rational_product_cancels() {
        // (a/b) * (b/1) == a/1
        let a = t(2).sub(&LaurentPoly::constant(1, 5));
        let b = t(-2).add(&t(2));
        let q = RationalFn::new(a.clone(), b.clone());
        let whole = q.mul(&RationalFn::from_poly(b));
        assert_eq!(whole, RationalFn::from_poly(a));
    }

    #[test]
    fn display_polynomial() {
        let p = t(4).sub(&LaurentPoly::one(1)).add(&t(-4));
        assert_eq!(p.to_string(), "t1^2 - 1 + t1^(-2)");
        assert_eq!(t(1).to_string(), "t1^(1/2)");
        assert_eq!(t(-1).to_string(), "t1^(-1/2)");
        assert_eq!(LaurentPoly::zero(1).to_string(), "0");
        assert_eq!(t(2).scale(-3).to_string(), "-3*t1");
    }

    #[test]
    fn display_rational_normalizes() {
        // -t^(-1) / (t^(-2) - 1) displays as 1/(t1 - t1^(-1))
        let q = RationalFn::new(t(-2).neg(), t(-4).sub(&LaurentPoly::one(1)));
        assert_eq!(q.to_string(), "1/(t1 - t1^(-1))");
    }
}
