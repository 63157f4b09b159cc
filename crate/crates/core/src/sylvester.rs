//! Rank and decomposition of binary forms.
//!
//! A binary form of degree `D` is stored by its coefficients on
//! `x^D, x^(D-1) y, ..., y^D`. Dual forms (apolar operators) use the same layout
//! in `Y0, Y1`; a root `(s:t)` of an operator is the linear form `s x + t y`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{combine, kernel, Matrix};
use crate::point::ProjectivePoint;
use crate::poly::{binomial, HomogeneousForm};
use crate::scalar::Scalar;
use crate::upoly::{rational_roots, UPoly};

const RANDOM_TRIES: usize = 100;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    coeffs: Vec<Scalar>,
}

impl BinaryForm {
    pub fn new(coeffs: Vec<Scalar>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Degree("a binary form needs at least one coefficient".into()));
        }
        Ok(BinaryForm { coeffs })
    }

    pub fn from_ints(c: &[i64]) -> Self {
        BinaryForm { coeffs: c.iter().map(|&x| crate::scalar::q(x)).collect() }
    }

    pub fn from_form(f: &HomogeneousForm) -> Result<Self> {
        if f.num_vars() != 2 {
            return Err(Error::Dimension(format!("expected a binary form, got {} variables", f.num_vars())));
        }
        Ok(BinaryForm { coeffs: f.to_vector() })
    }

    pub fn to_form(&self) -> HomogeneousForm {
        HomogeneousForm::from_vector(2, self.degree(), &self.coeffs).expect("length matches")
    }

    /// `(s x + t y)^D`.
    pub fn power_of(s: &Scalar, t: &Scalar, degree: usize) -> Self {
        BinaryForm { coeffs: crate::poly::veronese(&[s.clone(), t.clone()], degree) }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        let d = self.degree();
        let mut acc = Scalar::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for _ in 0..(d - k) {
                term *= s;
            }
            for _ in 0..k {
                term *= t;
            }
            acc += term;
        }
        acc
    }

    /// `f(1, t)`.
    pub fn dehomogenize(&self) -> UPoly {
        UPoly::new(self.coeffs.clone())
    }

    /// Moments `f_k / binom(D, k)`: for `f = sum c_j (x + t_j y)^D` these are the
    /// power sums `sum c_j t_j^k`.
    pub fn moments(&self) -> Vec<Scalar> {
        let d = self.degree();
        self.coeffs.iter().enumerate().map(|(k, c)| c / Scalar::from_integer(binomial(d, k))).collect()
    }

    /// The substitution `g(x, y) = f(x, y + lambda x)`, which moves the root
    /// `(s:t)` of an operator to `(s + lambda t : t)`.
    pub fn shear(&self, lambda: &Scalar) -> Self {
        let m = vec![vec![Scalar::one(), Scalar::zero()], vec![lambda.clone(), Scalar::one()]];
        BinaryForm::from_form(&self.to_form().substitute(&m).expect("2x2")).expect("binary")
    }

    /// Dual of `shear`: the operator whose roots are the images of the roots of `self`.
    pub fn shear_dual(&self, lambda: &Scalar) -> Self {
        let m = vec![vec![Scalar::one(), -lambda.clone()], vec![Scalar::zero(), Scalar::one()]];
        BinaryForm::from_form(&self.to_form().substitute(&m).expect("2x2")).expect("binary")
    }
}

fn hankel(f: &BinaryForm, r: usize) -> Matrix {
    let mu = f.moments();
    let d = f.degree();
    (0..=(d - r)).map(|i| (0..=r).map(|j| mu[i + j].clone()).collect()).collect()
}

/// Basis of the degree-`r` part of the apolar ideal of `f` (operators `h` with
/// `h(d) f = 0`). Every operator of degree above `D` annihilates `f`.
pub fn apolar_kernel(f: &BinaryForm, r: usize) -> Vec<BinaryForm> {
    if r > f.degree() {
        return (0..=r)
            .map(|j| {
                let mut c = vec![Scalar::zero(); r + 1];
                c[j] = Scalar::one();
                BinaryForm { coeffs: c }
            })
            .collect();
    }
    kernel(&hankel(f, r), r + 1).into_iter().map(|c| BinaryForm { coeffs: c }).collect()
}

/// Apolarity action of an operator on a binary form.
pub fn contract(f: &BinaryForm, h: &BinaryForm) -> Result<BinaryForm> {
    BinaryForm::from_form(&f.to_form().contract(&h.to_form())?)
}

pub fn binary_border_rank(f: &BinaryForm) -> Result<usize> {
    if f.is_zero() {
        return Err(Error::Degree("the zero form has no rank".into()));
    }
    if f.degree() == 0 {
        return Ok(1);
    }
    Ok((1..=f.degree()).find(|&r| !apolar_kernel(f, r).is_empty()).unwrap_or(f.degree()))
}

/// Squarefree as a binary form: distinct roots in the projective line, the root
/// at infinity `(0:1)` included.
pub fn is_squarefree(h: &BinaryForm) -> bool {
    if h.is_zero() {
        return false;
    }
    let u = h.dehomogenize();
    let at_infinity = h.degree() - u.degree().unwrap_or(0);
    at_infinity <= 1 && u.is_squarefree()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryRankCertificate {
    pub rank: usize,
    pub border_rank: usize,
    /// Squarefree apolar operator of degree `rank`.
    pub witness: BinaryForm,
    /// The minimal apolar generator was not squarefree.
    pub tangent_case: bool,
    /// Generator of the apolar ideal in degree `border_rank`.
    pub minimal_generator: BinaryForm,
}

fn find_squarefree<R: Rng>(basis: &[BinaryForm], rng: &mut R) -> Option<BinaryForm> {
    let vectors: Vec<Vec<Scalar>> = basis.iter().map(|b| b.coeffs.clone()).collect();
    if basis.len() == 1 {
        return is_squarefree(&basis[0]).then(|| basis[0].clone());
    }
    for _ in 0..RANDOM_TRIES {
        let c: Vec<Scalar> = (0..basis.len()).map(|_| Scalar::from_integer(BigInt::from(rng.gen_range(-50i64..=50)))).collect();
        let h = BinaryForm { coeffs: combine(&c, &vectors) };
        if is_squarefree(&h) {
            return Some(h);
        }
    }
    // Deterministic sweep over small integer combinations.
    for bound in 1i64..=4 {
        let k = basis.len();
        let width = (2 * bound + 1) as usize;
        let total = width.checked_pow(k as u32)?;
        for idx in 0..total {
            let mut n = idx;
            let c: Vec<Scalar> = (0..k)
                .map(|_| {
                    let v = (n % width) as i64 - bound;
                    n /= width;
                    Scalar::from_integer(BigInt::from(v))
                })
                .collect();
            let h = BinaryForm { coeffs: combine(&c, &vectors) };
            if is_squarefree(&h) {
                return Some(h);
            }
        }
    }
    None
}

/// Sylvester's algorithm with a fixed internal seed.
pub fn binary_rank(f: &BinaryForm) -> Result<BinaryRankCertificate> {
    binary_rank_with_rng(f, &mut ChaCha8Rng::seed_from_u64(0))
}

pub fn binary_rank_with_rng<R: Rng>(f: &BinaryForm, rng: &mut R) -> Result<BinaryRankCertificate> {
    let r0 = binary_border_rank(f)?;
    let d = f.degree();
    let k0 = apolar_kernel(f, r0);
    let g1 = k0[0].clone();
    if let Some(h) = find_squarefree(&k0, rng) {
        return Ok(BinaryRankCertificate { rank: r0, border_rank: r0, witness: h, tangent_case: false, minimal_generator: g1 });
    }
    let r = d + 2 - r0;
    let k = apolar_kernel(f, r);
    let h = find_squarefree(&k, rng).ok_or_else(|| Error::Retries { step: "squarefree apolar search".into(), detail: format!("degree {r}") })?;
    Ok(BinaryRankCertificate { rank: r, border_rank: r0, witness: h, tangent_case: true, minimal_generator: g1 })
}

/// The roots of a squarefree operator as points of the projective line when they
/// are all rational.
pub fn explicit_roots_if_rational(h: &BinaryForm) -> Option<Vec<ProjectivePoint>> {
    if h.is_zero() {
        return None;
    }
    let u = h.dehomogenize();
    let at_infinity = h.degree() - u.degree().unwrap_or(0);
    let finite = rational_roots(&u);
    let mut inner_degree = u.degree().unwrap_or(0);
    if !u.is_squarefree() {
        inner_degree = u.squarefree_part().degree().unwrap_or(0);
    }
    if finite.len() != inner_degree {
        return None;
    }
    let mut pts = Vec::new();
    if at_infinity > 0 {
        pts.push(ProjectivePoint::new(vec![Scalar::zero(), Scalar::one()]).unwrap());
    }
    for t in finite {
        pts.push(ProjectivePoint::new(vec![Scalar::one(), t]).unwrap());
    }
    pts.sort();
    Some(pts)
}

/// A set of points given as the roots of a squarefree binary operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitPointSet {
    pub h: BinaryForm,
}

/// A squarefree apolar operator of degree at most `D` certifies rank at most its degree.
pub fn verify_binary_decomposition(f: &BinaryForm, w: &ImplicitPointSet) -> bool {
    if w.h.degree() > f.degree() || !is_squarefree(&w.h) {
        return false;
    }
    contract(f, &w.h).map(|c| c.is_zero()).unwrap_or(false)
}

/// Coefficients `c_j` of `f = sum c_j l_j^D` over the roots `l_j` of the
/// squarefree operator `h`, tested for vanishing without computing the roots.
/// Returns true when every coefficient is nonzero. Requires `h` apolar to `f`.
pub fn all_root_coefficients_nonzero(f: &BinaryForm, h: &BinaryForm) -> bool {
    // Move a possible root at infinity to a finite place.
    let mut lambda = Scalar::zero();
    let (mut f, mut h) = (f.clone(), h.clone());
    if h.coeffs.last().is_some_and(|c| c.is_zero()) {
        let mut k = 1i64;
        loop {
            lambda = Scalar::from_integer(BigInt::from(k));
            if !h.eval(&-lambda.clone(), &Scalar::one()).is_zero() {
                break;
            }
            k += 1;
        }
        f = f.shear(&lambda);
        h = h.shear_dual(&lambda);
    }
    let _ = lambda;
    let mu = f.moments();
    let a = h.coeffs.clone();
    let r = h.degree();
    // N(s) = sum_i mu_i q_i(s), q_i(s) = sum_{l > i} a_l s^(l-i-1).
    let mut n = vec![Scalar::zero(); r.max(1)];
    for i in 0..r {
        for l in (i + 1)..=r {
            if a[l].is_zero() {
                continue;
            }
            n[l - i - 1] += &mu[i] * &a[l];
        }
    }
    let n = UPoly::new(n);
    if n.is_zero() {
        return false;
    }
    n.gcd(&h.dehomogenize()).degree() == Some(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn bf(s: &str) -> BinaryForm {
        BinaryForm::from_form(&HomogeneousForm::parse(s, Some(2)).unwrap()).unwrap()
    }

    #[test]
    fn border_rank_examples() {
        assert_eq!(binary_border_rank(&bf("x0^6")).unwrap(), 1);
        for d in 3..9 {
            assert_eq!(binary_border_rank(&bf(&format!("x0*x1^{}", d - 1))).unwrap(), 2);
        }
        let generic = BinaryForm::from_ints(&[1, -2, 3, 1, 0, 2, -1]);
        assert_eq!(binary_border_rank(&generic).unwrap(), 4);
        assert!(binary_border_rank(&BinaryForm::from_ints(&[0, 0])).is_err());
    }

    #[test]
    fn rank_examples() {
        let c = binary_rank(&bf("x0^3 + x1^3")).unwrap();
        assert_eq!(c.rank, 2);
        assert!(!c.tangent_case);
        assert_eq!(explicit_roots_if_rational(&c.witness).unwrap().len(), 2);
        // The witness is Y0*Y1 up to scale.
        assert!(c.witness.coeffs()[0].is_zero() && c.witness.coeffs()[2].is_zero());

        let t = binary_rank(&bf("x0*x1^2")).unwrap();
        assert_eq!((t.rank, t.border_rank), (3, 2));
        assert!(t.tangent_case);
        assert_eq!(t.minimal_generator.coeffs()[1..], [q(0), q(0)]);

        for d in 3..9 {
            let r = binary_rank(&bf(&format!("x0*x1^{}", d - 1))).unwrap();
            assert_eq!(r.rank, d);
        }
        let w = binary_rank(&bf("x0^5*x1")).unwrap();
        assert_eq!(w.rank, 6);
    }

    #[test]
    fn explicit_roots_examples() {
        let pts = explicit_roots_if_rational(&bf("x0^2*x1 - x0*x1^2")).unwrap();
        let expect: Vec<ProjectivePoint> = [[0, 1], [1, 0], [1, 1]].iter().map(|p| ProjectivePoint::new(vec![q(p[0]), q(p[1])]).unwrap()).collect();
        let mut expect = expect;
        expect.sort();
        assert_eq!(pts, expect);
        assert!(explicit_roots_if_rational(&bf("x0^2 + x1^2")).is_none());
        assert!(explicit_roots_if_rational(&bf("x0^2 - 2*x1^2")).is_none());
    }

    #[test]
    fn verify_examples() {
        let w = |s: &str| ImplicitPointSet { h: bf(s) };
        assert!(verify_binary_decomposition(&bf("x0^3 + x1^3"), &w("x0*x1")));
        assert!(verify_binary_decomposition(&bf("x0^3"), &w("x0*x1")));
        assert!(!verify_binary_decomposition(&bf("x0*x1^2"), &w("x0^2")));
    }

    #[test]
    fn squarefree_handles_infinity() {
        assert!(is_squarefree(&bf("x0*x1")));
        assert!(!is_squarefree(&bf("x0^2*x1")));
        assert!(!is_squarefree(&bf("x1^2")));
        assert!(is_squarefree(&bf("x0")));
        assert!(is_squarefree(&bf("x1")));
    }

    #[test]
    fn root_coefficients() {
        // f = (x)^3 + 2 (x + y)^3 with h = Y1 (Y1 - Y0)... roots (1:0), (1:1).
        let f = BinaryForm::power_of(&q(1), &q(0), 3);
        let g = BinaryForm::power_of(&q(1), &q(1), 3);
        let sum = BinaryForm::new(f.coeffs().iter().zip(g.coeffs()).map(|(a, b)| a + b * q(2)).collect()).unwrap();
        let h = bf("x0*x1 - x1^2");
        assert!(all_root_coefficients_nonzero(&sum, &h));
        // Add a third root with zero coefficient.
        let h3 = bf("x0^2*x1 - x1^3");
        assert!(!all_root_coefficients_nonzero(&sum, &h3));
        // Root at infinity (0:1) carries a coefficient.
        let inf = BinaryForm::power_of(&q(0), &q(1), 3);
        let s2 = BinaryForm::new(sum.coeffs().iter().zip(inf.coeffs()).map(|(a, b)| a + b * q(5)).collect()).unwrap();
        assert!(all_root_coefficients_nonzero(&s2, &bf("x0^2*x1 - x0*x1^2")));
        assert!(!all_root_coefficients_nonzero(&sum, &bf("x0^2*x1 - x0*x1^2")));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_at_least_border_rank_and_witness_verifies(c in proptest::collection::vec(-2i64..=2, 2..9)) {
            let f = BinaryForm::from_ints(&c);
            prop_assume!(!f.is_zero());
            let cert = binary_rank(&f).unwrap();
            prop_assert!(cert.rank >= cert.border_rank);
            prop_assert_eq!(cert.witness.degree(), cert.rank);
            let w = ImplicitPointSet { h: cert.witness.clone() };
            prop_assert!(verify_binary_decomposition(&f, &w));
            prop_assert!(all_root_coefficients_nonzero(&f, &cert.witness));
        }

        #[test]
        fn pure_powers_have_rank_one(s in -5i64..=5, t in -5i64..=5, d in 1usize..9) {
            prop_assume!(s != 0 || t != 0);
            let f = BinaryForm::power_of(&q(s), &q(t), d);
            prop_assert_eq!(binary_rank(&f).unwrap().rank, 1);
        }

        #[test]
        fn rank_is_gl2_invariant(c in proptest::collection::vec(-2i64..=2, 4..8), m in proptest::collection::vec(-3i64..=3, 4)) {
            let f = BinaryForm::from_ints(&c);
            prop_assume!(!f.is_zero());
            prop_assume!(m[0] * m[3] - m[1] * m[2] != 0);
            let mm = vec![vec![q(m[0]), q(m[1])], vec![q(m[2]), q(m[3])]];
            let g = BinaryForm::from_form(&f.to_form().substitute(&mm).unwrap()).unwrap();
            prop_assert_eq!(binary_rank(&f).unwrap().rank, binary_rank(&g).unwrap().rank);
        }
    }

    #[test]
    fn monomial_ranks() {
        for a in 1..=10usize {
            for b in a..=(10 - a) {
                let f = bf(&format!("x0^{a}*x1^{b}"));
                assert_eq!(binary_rank(&f).unwrap().rank, a.max(b) + 1, "x^{a} y^{b}");
            }
        }
    }
}
