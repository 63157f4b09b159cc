//! Rational curves `phi: P^1 -> P^m` carrying binary Waring problems.
//!
//! For `phi(s, t) = sum_i s^(e-i) t^i c_i` of degree `e`, the curve `nu_d(phi)`
//! is a rational curve of degree `D = d e`. The map `Psi` from binary forms of
//! degree `D` to forms of degree `d` sends `(s y0 + t y1)^D` to the linear form
//! `phi(s, t)` raised to the power `d`, so the rank of `Psi(g)` on the curve is the
//! binary rank of `g`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{rank, solve_columns};
use crate::poly::{binomial, HomogeneousForm};
use crate::scalar::{from_rats, to_rats, Rat, Scalar};
use crate::sylvester::BinaryForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    coeffs: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CarrierJson {
    pub coefficients: Vec<Vec<Rat>>,
}

impl Carrier {
    pub fn new(coeffs: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = coeffs.first().map(|c| c.len()).ok_or_else(|| Error::Degree("empty carrier".into()))?;
        if coeffs.len() < 2 {
            return Err(Error::Degree("a carrier has degree at least 1".into()));
        }
        if n == 0 || coeffs.iter().any(|c| c.len() != n) {
            return Err(Error::Dimension("carrier coefficients of unequal length".into()));
        }
        Ok(Carrier { coeffs })
    }

    /// The line through `p` and `q`, parametrized as `s p + t q`.
    pub fn line(p: &[Scalar], q: &[Scalar]) -> Result<Self> {
        Self::new(vec![p.to_vec(), q.to_vec()])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs[0].len()
    }

    pub fn coeffs(&self) -> &[Vec<Scalar>] {
        &self.coeffs
    }

    pub fn point_at(&self, s: &Scalar, t: &Scalar) -> Vec<Scalar> {
        let e = self.degree();
        let mut out = vec![Scalar::zero(); self.num_vars()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let mut w = Scalar::one();
            for _ in 0..(e - i) {
                w *= s;
            }
            for _ in 0..i {
                w *= t;
            }
            if w.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(c) {
                *o += &w * x;
            }
        }
        out
    }

    /// Images `Psi(y0^(D-k) y1^k)` for `k = 0..=D`.
    pub fn psi_basis(&self, d: usize) -> Vec<HomogeneousForm> {
        let n = self.num_vars();
        let e = self.degree();
        let lines: Vec<HomogeneousForm> = self.coeffs.iter().map(|c| HomogeneousForm::linear(c)).collect();
        let mut series = vec![HomogeneousForm::constant(n, Scalar::one())];
        for step in 0..d {
            let mut next = vec![HomogeneousForm::zero(n, step + 1); series.len() + e];
            for (k, g) in series.iter().enumerate() {
                if g.is_zero() {
                    continue;
                }
                for (i, l) in lines.iter().enumerate() {
                    let prod = g.mul(l).expect("same variables");
                    next[k + i] = next[k + i].add(&prod).expect("same degree");
                }
            }
            series = next;
        }
        let big = d * e;
        series.into_iter().enumerate().map(|(k, g)| g.scale(&(Scalar::one() / Scalar::from_integer(binomial(big, k))))).collect()
    }

    pub fn psi_columns(&self, d: usize) -> Vec<Vec<Scalar>> {
        self.psi_basis(d).iter().map(|g| g.to_vector()).collect()
    }

    pub fn is_injective(&self, d: usize) -> bool {
        let cols = self.psi_columns(d);
        let m: Vec<Vec<Scalar>> = cols;
        rank(&m) == d * self.degree() + 1
    }

    pub fn pushforward(&self, g: &BinaryForm, d: usize) -> Result<HomogeneousForm> {
        if g.degree() != d * self.degree() {
            return Err(Error::Degree(format!("binary form of degree {} on a carrier of degree {}", g.degree(), d * self.degree())));
        }
        let mut f = HomogeneousForm::zero(self.num_vars(), d);
        for (c, b) in g.coeffs().iter().zip(self.psi_basis(d)) {
            if !c.is_zero() {
                f = f.add(&b.scale(c))?;
            }
        }
        Ok(f)
    }

    /// The binary form `g` with `Psi(g) = f`, if `f` lies in the span of the curve.
    pub fn pullback(&self, f: &HomogeneousForm, d: usize) -> Result<Option<BinaryForm>> {
        if f.degree() != d || f.num_vars() != self.num_vars() {
            return Err(Error::Degree("form does not match the carrier".into()));
        }
        let cols = self.psi_columns(d);
        if rank(&cols) != cols.len() {
            return Err(Error::Verification("carrier map is not injective".into()));
        }
        Ok(solve_columns(&cols, &f.to_vector())?.map(|s| BinaryForm::new(s.particular).expect("nonempty")))
    }

    /// New carrier `x -> x M` with `M` having `num_vars` rows.
    pub fn map_points(&self, m: &[Vec<Scalar>]) -> Result<Self> {
        let out: Vec<Vec<Scalar>> = self
            .coeffs
            .iter()
            .map(|c| {
                let k = m[0].len();
                (0..k).map(|j| c.iter().zip(m).map(|(x, row)| x * &row[j]).sum()).collect()
            })
            .collect();
        Self::new(out)
    }

    pub fn to_json(&self) -> CarrierJson {
        CarrierJson { coefficients: self.coeffs.iter().map(|c| to_rats(c)).collect() }
    }

    pub fn from_json(j: &CarrierJson) -> Result<Self> {
        Self::new(j.coefficients.iter().map(|c| from_rats(c)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::veronese;
    use crate::scalar::q;

    fn v(c: &[i64]) -> Vec<Scalar> {
        c.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn pushforward_of_powers() {
        let conic = Carrier::new(vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        for (s, t) in [(1, 0), (0, 1), (2, -3)] {
            let g = BinaryForm::power_of(&q(s), &q(t), 6);
            let f = conic.pushforward(&g, 3).unwrap();
            let p = conic.point_at(&q(s), &q(t));
            assert_eq!(f.to_vector(), veronese(&p, 3));
        }
        assert!(conic.is_injective(3));
    }

    #[test]
    fn pullback_inverts_pushforward() {
        let line = Carrier::line(&v(&[1, 2, 0, 1]), &v(&[0, 1, -1, 3])).unwrap();
        let g = BinaryForm::from_ints(&[3, -1, 0, 2, 5]);
        let f = line.pushforward(&g, 4).unwrap();
        assert_eq!(line.pullback(&f, 4).unwrap().unwrap(), g);
        let off = HomogeneousForm::parse("x0^4 + x3^4", Some(4)).unwrap();
        assert!(line.pullback(&off, 4).unwrap().is_none());
    }

    #[test]
    fn degenerate_line_is_not_injective() {
        let bad = Carrier::line(&v(&[1, 1]), &v(&[2, 2])).unwrap();
        assert!(!bad.is_injective(3));
    }
}
