//! Dense univariate polynomials over the rationals: Euclid, derivatives, Sturm
//! counts and exact rational root extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Scalar>);

impl UPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn lead(&self) -> Scalar {
        self.0.last().cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Scalar::from_integer(BigInt::from(i))).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        UPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.0.get(i).cloned().unwrap_or_else(Scalar::zero);
                    let b = o.0.get(i).cloned().unwrap_or_else(Scalar::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        UPoly::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly(vec![]);
        }
        let mut c = vec![Scalar::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = Scalar::one() / d.lead();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UPoly(vec![]), self.clone());
        }
        let mut qv = vec![Scalar::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if !c.is_zero() {
                for (j, x) in d.0.iter().enumerate() {
                    r[k + j] -= &c * x;
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        (UPoly::new(qv), UPoly::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Scalar::one() / self.lead()))
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// `self / gcd(self, self')`.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0
    }

    /// Primitive integer multiple.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        let mut l = BigInt::one();
        for c in &self.0 {
            l = l.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Scalar::from_integer(l.clone())).to_integer()).collect();
        let mut g = BigInt::zero();
        for x in &ints {
            g = g.gcd(x);
        }
        if g.is_zero() {
            return ints;
        }
        ints.into_iter().map(|x| x / &g).collect()
    }
}

fn sign_changes(values: &[Scalar]) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for v in values {
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(l) = last {
            if l != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

struct Sturm(Vec<UPoly>);

impl Sturm {
    fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).scale(&-Scalar::one());
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        Sturm(seq)
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        let signs: Vec<Scalar> = self
            .0
            .iter()
            .map(|p| {
                let l = p.lead();
                let odd = p.degree().unwrap_or(0) % 2 == 1;
                if !positive && odd {
                    -l
                } else {
                    l
                }
            })
            .collect();
        sign_changes(&signs)
    }
}

/// Distinct rational roots, in increasing order. No integer factoring: roots
/// modulo a prime of good reduction are lifted by Newton iteration past the bound
/// given by numerator and denominator divisibility, then rebuilt by rational
/// reconstruction and checked exactly.
pub fn rational_roots(p: &UPoly) -> Vec<Scalar> {
    let p = p.squarefree_part();
    if p.degree().unwrap_or(0) == 0 {
        return vec![];
    }
    let mut a = p.to_integer_coeffs();
    let mut out = Vec::new();
    if a[0].is_zero() {
        out.push(Scalar::zero());
        a.remove(0);
    }
    let n = a.len() - 1;
    if n == 0 {
        return out;
    }
    if n == 1 {
        out.push(Scalar::new(-a[0].clone(), a[1].clone()));
        out.sort();
        return out;
    }
    let bound = a[0].abs().max(a[n].abs());
    let need: BigInt = &bound * &bound * BigInt::from(2);
    let prime = good_prime(&a);
    let pb = BigInt::from(prime);
    let da: Vec<BigInt> = (1..=n).map(|i| &a[i] * BigInt::from(i)).collect();
    for r0 in (0..prime).filter(|&r| horner_mod(&a, &BigInt::from(r), &pb).is_zero()) {
        let mut m = pb.clone();
        let mut r = BigInt::from(r0);
        while m <= need {
            m = &m * &m;
            let fr = horner_mod(&a, &r, &m);
            let dr = horner_mod(&da, &r, &m);
            let inv = mod_inverse(&dr, &m).expect("simple root modulo a good prime");
            r = (&r - fr * inv).mod_floor(&m);
        }
        if let Some((num, den)) = reconstruct(&r, &m, &bound) {
            if horner_homogeneous(&a, &num, &den).is_zero() {
                out.push(Scalar::new(num, den));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn horner_mod(a: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in a.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

/// `sum a_i x^i y^(n-i)`.
fn horner_homogeneous(a: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    let mut ypow = BigInt::one();
    for c in a.iter().rev() {
        acc = acc * x + c * &ypow;
        ypow *= y;
    }
    acc
}

fn mod_inverse(x: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = x.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// `num / den = r mod m` with `|num|, |den| <= bound`, if one exists.
fn reconstruct(r: &BigInt, m: &BigInt, bound: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > *bound {
        return None;
    }
    let (num, den) = if t1.is_negative() { (-r1, -t1) } else { (r1, t1) };
    Some((num, den))
}

/// Smallest prime not dividing the leading coefficient and keeping `a` squarefree.
fn good_prime(a: &[BigInt]) -> i64 {
    let n = a.len() - 1;
    let mut p = 2i64;
    loop {
        if is_prime(p) {
            let f: Vec<i64> = a.iter().map(|c| small_mod(c, p)).collect();
            if f[n] != 0 {
                let df: Vec<i64> = (1..=n).map(|i| (f[i] * (i as i64 % p)) % p).collect();
                if gcd_degree_mod(f, df, p) == 0 {
                    return p;
                }
            }
        }
        p += 1;
    }
}

fn is_prime(p: i64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

fn small_mod(c: &BigInt, p: i64) -> i64 {
    let r = c.mod_floor(&BigInt::from(p));
    i64::try_from(r).expect("reduced modulo a small prime")
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1i64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn trim_mod(v: &mut Vec<i64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Degree of `gcd(f, g)` over `F_p`; `g = 0` counts as undefined and returns the
/// degree of `f`.
fn gcd_degree_mod(mut f: Vec<i64>, mut g: Vec<i64>, p: i64) -> usize {
    trim_mod(&mut f);
    trim_mod(&mut g);
    while !g.is_empty() {
        let inv = pow_mod(*g.last().unwrap(), p - 2, p);
        while f.len() >= g.len() {
            let c = f.last().unwrap() * inv % p;
            let shift = f.len() - g.len();
            for (i, x) in g.iter().enumerate() {
                f[shift + i] = (f[shift + i] - c * x).rem_euclid(p);
            }
            trim_mod(&mut f);
            if f.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut f, &mut g);
    }
    f.len().saturating_sub(1)
}

/// Number of real roots of a squarefree polynomial.
pub fn count_real_roots(p: &UPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let s = Sturm::new(p);
    s.variations_at_infinity(false) - s.variations_at_infinity(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qf};

    fn p(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn euclid() {
        // (t-1)(t+2) and (t-1)(t-3)
        let a = p(&[-2, 1, 1]);
        let b = p(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
        let (qq, r) = p(&[1, 0, 0, 1]).divrem(&p(&[1, 1]));
        assert_eq!(qq, p(&[1, -1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree() {
        assert!(p(&[-2, 1, 1]).is_squarefree());
        assert!(!p(&[1, 2, 1]).is_squarefree());
        assert!(p(&[5]).is_squarefree());
        assert_eq!(p(&[0, 0, 1, 1]).squarefree_part().monic(), p(&[0, 1, 1]));
    }

    #[test]
    fn rational_roots_examples() {
        // 6t^3 - 5t^2 - 2t + 1 = (t - 1)(2t + 1)(3t - 1)
        assert_eq!(rational_roots(&p(&[1, -2, -5, 6])), vec![qf(-1, 2), qf(1, 3), q(1)]);
        assert!(rational_roots(&p(&[1, 0, 1])).is_empty());
        assert!(rational_roots(&p(&[-2, 0, 1])).is_empty());
        assert_eq!(rational_roots(&p(&[0, -2, 0, 1])), vec![q(0)]);
        assert_eq!(rational_roots(&p(&[-1000, 1])), vec![q(1000)]);
        assert_eq!(count_real_roots(&p(&[-2, 0, 1])), 2);
        assert_eq!(count_real_roots(&p(&[1, 0, 1])), 0);
    }

    #[test]
    fn rational_roots_of_products() {
        let roots = [qf(7, 3), qf(-5, 2), q(0), qf(11, 13), qf(-1, 97)];
        let mut f = p(&[1]);
        for r in &roots {
            f = f.mul(&UPoly::new(vec![-r.clone(), q(1)]));
        }
        let f = f.mul(&p(&[1, 1, 1]));
        let mut expect = roots.to_vec();
        expect.sort();
        assert_eq!(rational_roots(&f), expect);
    }

    proptest::proptest! {
        #[test]
        fn recovers_planted_roots(
            roots in proptest::collection::vec((-60i64..60, 1i64..40), 0..8),
            noise in proptest::collection::vec(-9i64..9, 3),
        ) {
            let mut f = UPoly::new(vec![q(1)]);
            for (a, b) in &roots {
                f = f.mul(&UPoly::new(vec![qf(-*a, *b), q(1)]));
            }
            // x^2 + c x + e with negative discriminant has no rational root.
            let extra = UPoly::new(vec![q(noise[0].abs() + noise[1] * noise[1] + 1), q(2 * noise[1]), q(1)]);
            let f = f.mul(&extra).mul(&UPoly::new(vec![q(1), q(0), q(0), q(noise[2] * 2 + 1)]));
            let mut expect: Vec<Scalar> = roots.iter().map(|(a, b)| qf(*a, *b)).collect();
            let cubic = UPoly::new(vec![q(1), q(0), q(0), q(noise[2] * 2 + 1)]);
            expect.extend(rational_roots_naive(&cubic));
            expect.sort();
            expect.dedup();
            proptest::prop_assert_eq!(rational_roots(&f), expect);
        }
    }

    /// Candidates `+-p/q` from the divisors of the end coefficients.
    fn rational_roots_naive(f: &UPoly) -> Vec<Scalar> {
        let a = f.to_integer_coeffs();
        let divisors = |x: &BigInt| -> Vec<i64> {
            let x = i64::try_from(x.abs()).unwrap();
            (1..=x).filter(|d| x % d == 0).collect()
        };
        let mut out = Vec::new();
        for p in divisors(&a[0]) {
            for d in divisors(a.last().unwrap()) {
                for s in [p, -p] {
                    let r = qf(s, d);
                    if f.eval(&r).is_zero() {
                        out.push(r);
                    }
                }
            }
        }
        out
    }
}
