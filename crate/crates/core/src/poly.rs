//! Sparse homogeneous forms over the rationals, the apolarity action, catalecticants
//! and Veronese coordinates.
//!
//! Monomials of a fixed degree are ordered graded-lexicographically with
//! `x0 > x1 > ...`; every coordinate vector in the crate uses this basis.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{fmt_scalar, parse_scalar, Scalar};

pub type Exponent = Vec<u32>;

/// Monomials of degree `d` in `n` variables, in basis order.
#[derive(Debug)]
pub struct Basis {
    pub n: usize,
    pub d: usize,
    pub list: Vec<Exponent>,
    index: HashMap<Exponent, usize>,
}

impl Basis {
    pub fn len(&self) -> usize {
        self.list.len()
    }

    pub fn is_empty(&self) -> bool {
        self.list.is_empty()
    }

    pub fn index_of(&self, e: &[u32]) -> usize {
        self.index[e]
    }
}

fn generate(n: usize, d: usize, prefix: &mut Exponent, out: &mut Vec<Exponent>) {
    if n == 1 {
        prefix.push(d as u32);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for e in (0..=d).rev() {
        prefix.push(e as u32);
        generate(n - 1, d - e, prefix, out);
        prefix.pop();
    }
}

/// Cached monomial basis.
pub fn basis(n: usize, d: usize) -> Arc<Basis> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<Basis>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&(n, d)) {
        return b.clone();
    }
    let mut list = Vec::new();
    if n > 0 {
        generate(n, d, &mut Vec::new(), &mut list);
    }
    let index = list.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let b = Arc::new(Basis { n, d, list, index });
    cache.lock().unwrap().insert((n, d), b.clone());
    b
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    r
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Falling factorial a!/(a-b)!.
fn falling(a: u32, b: u32) -> BigInt {
    ((a - b + 1)..=a).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn multinomial(e: &[u32]) -> BigInt {
    let d: u32 = e.iter().sum();
    let mut r = factorial(d);
    for &k in e {
        r /= factorial(k);
    }
    r
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousForm {
    num_vars: usize,
    degree: usize,
    coeffs: BTreeMap<Exponent, Scalar>,
}

impl HomogeneousForm {
    pub fn zero(num_vars: usize, degree: usize) -> Self {
        HomogeneousForm { num_vars, degree, coeffs: BTreeMap::new() }
    }

    pub fn from_terms<I>(num_vars: usize, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut f = Self::zero(num_vars, degree);
        for (e, c) in terms {
            if e.len() != num_vars {
                return Err(Error::Dimension(format!("exponent of length {} in a form with {} variables", e.len(), num_vars)));
            }
            if e.iter().sum::<u32>() as usize != degree {
                return Err(Error::Degree(format!("monomial of weight {} in a degree-{} form", e.iter().sum::<u32>(), degree)));
            }
            f.add_term(e, c);
        }
        Ok(f)
    }

    /// The linear form `sum coeffs[i] * x_i`.
    pub fn linear(coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        let mut f = Self::zero(n, 1);
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[i] = 1;
            f.add_term(e, c.clone());
        }
        f
    }

    pub fn constant(num_vars: usize, c: Scalar) -> Self {
        let mut f = Self::zero(num_vars, 0);
        f.add_term(vec![0; num_vars], c);
        f
    }

    fn add_term(&mut self, e: Exponent, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Scalar {
        self.coeffs.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.coeffs.iter().rev()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn to_vector(&self) -> Vec<Scalar> {
        let b = basis(self.num_vars, self.degree);
        let mut v = vec![Scalar::zero(); b.len()];
        for (e, c) in &self.coeffs {
            v[b.index_of(e)] = c.clone();
        }
        v
    }

    pub fn from_vector(num_vars: usize, degree: usize, v: &[Scalar]) -> Result<Self> {
        let b = basis(num_vars, degree);
        if v.len() != b.len() {
            return Err(Error::Dimension(format!("vector of length {} for {} monomials", v.len(), b.len())));
        }
        let mut f = Self::zero(num_vars, degree);
        for (e, c) in b.list.iter().zip(v) {
            f.add_term(e.clone(), c.clone());
        }
        Ok(f)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars || self.degree != other.degree {
            return Err(Error::Dimension(format!("forms of shape ({}, {}) and ({}, {})", self.num_vars, self.degree, other.num_vars, other.degree)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut f = self.clone();
        for (e, c) in &other.coeffs {
            f.add_term(e.clone(), c.clone());
        }
        Ok(f)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars, self.degree);
        }
        let coeffs = self.coeffs.iter().map(|(e, x)| (e.clone(), x * c)).collect();
        HomogeneousForm { num_vars: self.num_vars, degree: self.degree, coeffs }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.num_vars != other.num_vars {
            return Err(Error::Dimension("product of forms in different rings".into()));
        }
        let mut f = Self::zero(self.num_vars, self.degree + other.degree);
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                f.add_term(e, c1 * c2);
            }
        }
        Ok(f)
    }

    pub fn pow(&self, k: usize) -> Self {
        let mut r = Self::constant(self.num_vars, Scalar::one());
        for _ in 0..k {
            r = r.mul(self).expect("same ring");
        }
        r
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut f = Self::zero(self.num_vars, self.degree.saturating_sub(1));
        for (e, c) in &self.coeffs {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                f.add_term(e2, c * Scalar::from_integer(BigInt::from(e[i])));
            }
        }
        f
    }

    /// Apolarity action: `g(d/dx_0, ..., d/dx_m)` applied to `self`.
    pub fn contract(&self, g: &Self) -> Result<Self> {
        if g.num_vars != self.num_vars {
            return Err(Error::Dimension("contraction across different rings".into()));
        }
        if g.degree > self.degree {
            return Err(Error::Degree(format!("cannot contract a degree-{} form by a degree-{} operator", self.degree, g.degree)));
        }
        let mut f = Self::zero(self.num_vars, self.degree - g.degree);
        for (b, cg) in &g.coeffs {
            for (a, cf) in &self.coeffs {
                if a.iter().zip(b).all(|(x, y)| x >= y) {
                    let mut w = BigInt::one();
                    for (x, y) in a.iter().zip(b) {
                        w *= falling(*x, *y);
                    }
                    let e = a.iter().zip(b).map(|(x, y)| x - y).collect();
                    f.add_term(e, cf * cg * Scalar::from_integer(w));
                }
            }
        }
        Ok(f)
    }

    /// Linear substitution `x_i = sum_j m[i][j] * y_j`; the result lives in
    /// `m[0].len()` variables.
    pub fn substitute(&self, m: &[Vec<Scalar>]) -> Result<Self> {
        if m.len() != self.num_vars {
            return Err(Error::Dimension(format!("substitution with {} rows for {} variables", m.len(), self.num_vars)));
        }
        let k = m.first().map(|r| r.len()).unwrap_or(0);
        let images: Vec<HomogeneousForm> = m.iter().map(|row| Self::linear(row)).collect();
        let mut cache: Vec<Vec<HomogeneousForm>> = images.iter().map(|l| vec![Self::constant(k, Scalar::one()), l.clone()]).collect();
        let mut f = Self::zero(k, self.degree);
        for (e, c) in &self.coeffs {
            let mut t = Self::constant(k, c.clone());
            for (i, &ei) in e.iter().enumerate() {
                while cache[i].len() <= ei as usize {
                    let next = cache[i].last().unwrap().mul(&images[i])?;
                    cache[i].push(next);
                }
                if ei > 0 {
                    t = t.mul(&cache[i][ei as usize])?;
                }
            }
            f = f.add(&t)?;
        }
        Ok(f)
    }

    pub fn evaluate(&self, p: &[Scalar]) -> Scalar {
        let mut s = Scalar::zero();
        for (e, c) in &self.coeffs {
            let mut t = c.clone();
            for (x, &k) in p.iter().zip(e) {
                for _ in 0..k {
                    t *= x;
                }
            }
            s += t;
        }
        s
    }

    /// Text form using variable names `<prefix>0, <prefix>1, ...`.
    pub fn to_string_with(&self, prefix: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms().enumerate() {
            let neg = c < &Scalar::zero();
            let a = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            let constant = e.iter().all(|&x| x == 0);
            if !a.is_one() || constant {
                factors.push(fmt_scalar(&a));
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("{prefix}{i}")),
                    _ => factors.push(format!("{prefix}{i}^{x}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// Parses `c*x0^a0*...*xm^am + ...`. Variables may use the prefix `x` or `y`.
    /// With `num_vars = None` the ring size is the largest index plus one.
    pub fn parse(s: &str, num_vars: Option<usize>) -> Result<Self> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms: Vec<(BTreeMap<usize, u32>, Scalar)> = Vec::new();
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = Scalar::one();
            while i < bytes.len() && (bytes[i] == b'+' || bytes[i] == b'-') {
                if bytes[i] == b'-' {
                    sign = -sign;
                }
                i += 1;
            }
            let start = i;
            while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
                i += 1;
            }
            let body = &text[start..i];
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let (vars, c) = parse_term(body)?;
            terms.push((vars, sign * c));
        }
        let max_var = terms.iter().filter_map(|(v, _)| v.keys().next_back().copied()).max();
        let needed = max_var.map(|m| m + 1).unwrap_or(1);
        let n = match num_vars {
            Some(n) if n < needed => return Err(Error::Parse(format!("variable index {} out of range for {} variables", needed - 1, n))),
            Some(n) => n,
            None => needed,
        };
        let degrees: Vec<u32> = terms.iter().map(|(v, _)| v.values().sum()).collect();
        let d = degrees[0];
        if degrees.iter().any(|&x| x != d) {
            return Err(Error::Parse(format!("inhomogeneous polynomial `{s}` (degrees {:?})", degrees)));
        }
        let mut f = Self::zero(n, d as usize);
        for (vars, c) in terms {
            let mut e = vec![0u32; n];
            for (k, x) in vars {
                e[k] += x;
            }
            f.add_term(e, c);
        }
        Ok(f)
    }
}

fn parse_term(body: &str) -> Result<(BTreeMap<usize, u32>, Scalar)> {
    let mut vars = BTreeMap::new();
    let mut c = Scalar::one();
    for factor in body.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in `{body}`")));
        }
        let first = factor.chars().next().unwrap();
        if first == 'x' || first == 'y' {
            let rest = &factor[1..];
            let (idx, exp) = match rest.split_once('^') {
                Some((a, b)) => (a, b),
                None => (rest, "1"),
            };
            let idx: usize = idx.parse().map_err(|_| Error::Parse(format!("bad variable `{factor}`")))?;
            let exp: u32 = exp.parse().map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
            *vars.entry(idx).or_insert(0) += exp;
        } else {
            c *= parse_scalar(factor)?;
        }
    }
    Ok((vars, c))
}

impl fmt::Display for HomogeneousForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with('x'))
    }
}

/// Coefficient vector of `(p . x)^d`, multinomial weights included.
pub fn veronese(p: &[Scalar], d: usize) -> Vec<Scalar> {
    let b = basis(p.len(), d);
    let powers: Vec<Vec<Scalar>> = p
        .iter()
        .map(|x| {
            let mut v = vec![Scalar::one()];
            for k in 0..d {
                let next = &v[k] * x;
                v.push(next);
            }
            v
        })
        .collect();
    b.list
        .iter()
        .map(|e| {
            let mut t = Scalar::from_integer(multinomial(e));
            for (i, &k) in e.iter().enumerate() {
                if t.is_zero() {
                    break;
                }
                t *= &powers[i][k as usize];
            }
            t
        })
        .collect()
}

/// Matrix of `g -> contract(f, g)` for dual forms `g` of degree `a`.
/// Rows are indexed by monomials of degree `d - a`, columns by monomials of degree `a`.
pub fn catalecticant(f: &HomogeneousForm, a: usize) -> Result<Matrix> {
    let d = f.degree();
    if a > d {
        return Err(Error::Degree(format!("catalecticant index {a} exceeds degree {d}")));
    }
    let n = f.num_vars();
    let rows = basis(n, d - a);
    let cols = basis(n, a);
    let mut m = vec![vec![Scalar::zero(); cols.len()]; rows.len()];
    for (i, g) in rows.list.iter().enumerate() {
        for (j, b) in cols.list.iter().enumerate() {
            let e: Exponent = g.iter().zip(b).map(|(x, y)| x + y).collect();
            let c = f.coeff(&e);
            if c.is_zero() {
                continue;
            }
            let mut w = BigInt::one();
            for (x, y) in e.iter().zip(b) {
                w *= falling(*x, *y);
            }
            m[i][j] = c * Scalar::from_integer(w);
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rank;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn f(s: &str) -> HomogeneousForm {
        HomogeneousForm::parse(s, None).unwrap()
    }

    fn fv(s: &str, n: usize) -> HomogeneousForm {
        HomogeneousForm::parse(s, Some(n)).unwrap()
    }

    #[test]
    fn basis_is_graded_lex() {
        let b = basis(3, 2);
        let expect: Vec<Exponent> = vec![vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]];
        assert_eq!(b.list, expect);
        assert_eq!(basis(4, 3).len(), 20);
        assert_eq!(basis(3, 8).len(), 45);
    }

    #[test]
    fn veronese_pure_power_of_coordinate() {
        let v = veronese(&[q(1), q(0), q(0)], 3);
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 1);
        assert_eq!(v[0], q(1));
    }

    #[test]
    fn veronese_binomial() {
        assert_eq!(veronese(&[q(1), q(1)], 2), vec![q(1), q(2), q(1)]);
    }

    #[test]
    fn veronese_matches_repeated_multiplication() {
        // Oracle: multiply the linear form by itself.
        let l = HomogeneousForm::linear(&[q(1), q(2)]);
        let cube = l.mul(&l).unwrap().mul(&l).unwrap();
        assert_eq!(cube.to_vector(), vec![q(1), q(6), q(12), q(8)]);
        assert_eq!(veronese(&[q(1), q(2)], 3), cube.to_vector());
    }

    #[test]
    fn contract_examples() {
        let x0d = fv("x0^5", 2);
        assert!(x0d.contract(&fv("y1", 2)).unwrap().is_zero());
        assert_eq!(f("x0^2*x1").contract(&fv("y0", 2)).unwrap(), f("2*x0*x1"));
        let g = f("x0^3 + x1^3");
        // Oracle: differentiate once in each variable.
        let twice = g.derivative(0).derivative(1);
        assert!(twice.is_zero());
        assert!(g.contract(&f("y0*y1")).unwrap().is_zero());
        assert!(f("x0").contract(&f("y0^2")).is_err());
    }

    #[test]
    fn catalecticant_examples() {
        for d in 2..7 {
            let l = HomogeneousForm::linear(&[q(2), q(-1), q(3)]).pow(d);
            for a in 1..d {
                assert_eq!(rank(&catalecticant(&l, a).unwrap()), 1);
            }
            let g = fv(&format!("x0^{}*x1", d - 1), 2);
            assert_eq!(rank(&catalecticant(&g, 1).unwrap()), 2);
        }
        let s = f("x0^4 + x1^4 + x2^4");
        let t = HomogeneousForm::linear(&[q(1), q(1), q(1)]).pow(4);
        let sum = s.add(&t).unwrap();
        assert_eq!(rank(&catalecticant(&sum, 2).unwrap()), 4);
    }

    #[test]
    fn parse_and_display() {
        let g = f("3/2*x0*x1^2 - x2^3 + x0^3");
        assert_eq!(g.num_vars(), 3);
        assert_eq!(g.degree(), 3);
        assert_eq!(g.to_string(), "x0^3 + 3/2*x0*x1^2 - x2^3");
        assert_eq!(f(&g.to_string()), g);
        assert_eq!(f(" x0 ^ 2 * x1 "), f("x0^2*x1"));
        assert!(HomogeneousForm::parse("x0^2 + x1", None).is_err());
        assert!(HomogeneousForm::parse("x0^2 +", None).is_err());
        assert_eq!(f("x0*x1 - x1*x0").to_string(), "0");
        assert_eq!(f("-x0 + 2*x1").to_string_with('y'), "-y0 + 2*y1");
        assert!(HomogeneousForm::parse("x3", Some(2)).is_err());
    }

    #[test]
    fn substitution_and_evaluation() {
        let g = f("x0^2 - x1^2");
        // x0 = y0 + y1, x1 = y0 - y1 gives 4*y0*y1.
        let m = vec![vec![q(1), q(1)], vec![q(1), q(-1)]];
        assert_eq!(g.substitute(&m).unwrap(), f("4*x0*x1"));
        assert_eq!(g.evaluate(&[q(3), q(1)]), q(8));
    }

    fn small_form(n: usize, d: usize) -> impl Strategy<Value = HomogeneousForm> {
        let len = basis(n, d).len();
        proptest::collection::vec(-3i64..=3, len).prop_map(move |v| HomogeneousForm::from_vector(n, d, &v.into_iter().map(q).collect::<Vec<_>>()).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn contraction_composes(fm in small_form(3, 5), g1 in small_form(3, 2), g2 in small_form(3, 1)) {
            let lhs = fm.contract(&g1).unwrap().contract(&g2).unwrap();
            let rhs = fm.contract(&g1.mul(&g2).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn catalecticant_rank_symmetric(fm in small_form(3, 4), a in 1usize..4) {
            let r1 = rank(&catalecticant(&fm, a).unwrap());
            let r2 = rank(&catalecticant(&fm, 4 - a).unwrap());
            prop_assert_eq!(r1, r2);
        }

        #[test]
        fn veronese_equivariant(p in proptest::collection::vec(-3i64..=3, 3), m in proptest::collection::vec(-2i64..=2, 9)) {
            // veronese(M p) is the image of veronese(p) under the induced action:
            // (Mp . x)^d = (p . M^T x)^d.
            let p: Vec<Scalar> = p.into_iter().map(q).collect();
            let m: Vec<Vec<Scalar>> = m.chunks(3).map(|r| r.iter().map(|&x| q(x)).collect()).collect();
            let mp: Vec<Scalar> = (0..3).map(|i| (0..3).map(|j| &m[i][j] * &p[j]).sum()).collect();
            let lhs = veronese(&mp, 3);
            let mt: Vec<Vec<Scalar>> = (0..3).map(|i| (0..3).map(|j| m[j][i].clone()).collect()).collect();
            let form = HomogeneousForm::from_vector(3, 3, &veronese(&p, 3)).unwrap();
            let rhs = form.substitute(&mt).unwrap().to_vector();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sums_of_powers_bound_catalecticant(pts in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 3), 1..5)) {
            let d = 4;
            let mut s = HomogeneousForm::zero(3, d);
            for p in &pts {
                let p: Vec<Scalar> = p.iter().map(|&x| q(x)).collect();
                s = s.add(&HomogeneousForm::from_vector(3, d, &veronese(&p, d)).unwrap()).unwrap();
            }
            for a in 1..d {
                prop_assert!(rank(&catalecticant(&s, a).unwrap()) <= pts.len());
            }
        }
    }

    #[test]
    fn general_sums_of_powers_reach_bound() {
        // Four points in general position give catalecticant rank 4 at a = 2.
        let pts = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 2, 3]];
        let d = 5;
        let mut s = HomogeneousForm::zero(3, d);
        for (r, p) in pts.iter().enumerate() {
            let p: Vec<Scalar> = p.iter().map(|&x| q(x)).collect();
            s = s.add(&HomogeneousForm::from_vector(3, d, &veronese(&p, d)).unwrap()).unwrap();
            for a in 2..4 {
                assert_eq!(rank(&catalecticant(&s, a).unwrap()), r + 1);
            }
        }
    }
}
