//! Sampling points in the span of a scheme, explicit Waring decompositions and
//! their exact verification.
//!
//! Every recipe writes `F = sum_c Psi_c(g_c) + sum_j a_j l_j^d` over a few carrier
//! curves and explicit points, then runs Sylvester on each `g_c`. The split is
//! unique up to shifts along points shared by carriers; a random shift is drawn
//! and the target rank of every part is checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::linalg::{combine, kernel, rank, solve_columns, LinearSubspace, Matrix};
use crate::poly::{basis, catalecticant, veronese, HomogeneousForm};
use crate::scalar::Scalar;
use crate::schemes::{conic_matrix, conic_pencil, line_profile, scheme_span, Component, Degree4Scheme, SquarePencilComponent};
use crate::stratify::{classify, reduce_ambient, Recipe, ReducedScheme, StratumResult};
use crate::sylvester::{all_root_coefficients_nonzero, binary_rank_with_rng, explicit_roots_if_rational, is_squarefree, BinaryForm};
use crate::upoly::{rational_roots, UPoly};

const RECIPE_ATTEMPTS: usize = 40;

fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// Points `l^d` for the roots of `h`, as the implicit part of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub carrier: Carrier,
    /// Squarefree; its roots `(s:t)` give the points `carrier(s, t)`.
    pub h: BinaryForm,
    /// The binary form decomposed on the carrier.
    pub g: BinaryForm,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    /// Points (as linear forms) with their coefficients.
    pub explicit: Vec<(Vec<Scalar>, Scalar)>,
    pub blocks: Vec<Block>,
}

impl Decomposition {
    pub fn total_size(&self) -> usize {
        self.explicit.len() + self.blocks.iter().map(|b| b.h.degree()).sum::<usize>()
    }

    fn lift(&self, red: &ReducedScheme) -> Result<Decomposition> {
        Ok(Decomposition {
            explicit: self.explicit.iter().map(|(p, c)| (red.lift_point(p), c.clone())).collect(),
            blocks: self
                .blocks
                .iter()
                .map(|b| Ok(Block { carrier: b.carrier.map_points(&red.basis)?, h: b.h.clone(), g: b.g.clone() }))
                .collect::<Result<_>>()?,
        })
    }

    /// Replaces blocks whose operator splits over the rationals by explicit points.
    /// Coefficients of explicit points are recomputed by `verify_decomposition`.
    pub fn refine(&self) -> Decomposition {
        let mut out = Decomposition { explicit: self.explicit.clone(), blocks: vec![] };
        for b in &self.blocks {
            match explicit_roots_if_rational(&b.h) {
                Some(roots) if roots.len() == b.h.degree() => {
                    for r in roots {
                        let c = r.coords();
                        out.explicit.push((b.carrier.point_at(&c[0], &c[1]), Scalar::zero()));
                    }
                }
                _ => out.blocks.push(b.clone()),
            }
        }
        out
    }
}

/// Degree-`D` binary forms annihilated by `h`: the span of the `D`-th powers of its roots.
pub fn apolar_span(h: &BinaryForm, big_d: usize) -> Vec<Vec<Scalar>> {
    let r = h.degree();
    if r > big_d {
        return vec![];
    }
    let m: Matrix = (0..=(big_d - r))
        .map(|i| {
            (0..=big_d)
                .map(|k| if k >= i && k - i <= r { &h.coeffs()[k - i] / Scalar::from_integer(crate::poly::binomial(big_d, k)) } else { Scalar::zero() })
                .collect()
        })
        .collect();
    kernel(&m, big_d + 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub member: bool,
    pub irredundant: bool,
    /// Coefficients of the explicit points, when the form is a member.
    pub coefficients: Vec<Scalar>,
    /// Binary forms carried by the blocks, when the form is a member.
    pub block_forms: Vec<BinaryForm>,
    pub size: usize,
}

/// Exact check that `f` lies in the span of the decomposition's points, and that no
/// point can be dropped.
pub fn verify_decomposition(f: &HomogeneousForm, dec: &Decomposition) -> VerifyReport {
    let d = f.degree();
    let size = dec.total_size();
    let fail = VerifyReport { member: false, irredundant: false, coefficients: vec![], block_forms: vec![], size };
    let mut gens: Vec<Vec<Scalar>> = Vec::new();
    for (p, _) in &dec.explicit {
        if p.len() != f.num_vars() {
            return fail;
        }
        gens.push(veronese(p, d));
    }
    let mut block_bases = Vec::new();
    for b in &dec.blocks {
        let big = d * b.carrier.degree();
        if b.carrier.num_vars() != f.num_vars() || b.h.degree() > big || !is_squarefree(&b.h) {
            return fail;
        }
        let sp = apolar_span(&b.h, big);
        for v in &sp {
            let g = BinaryForm::new(v.clone()).expect("nonempty");
            match b.carrier.pushforward(&g, d) {
                Ok(x) => gens.push(x.to_vector()),
                Err(_) => return fail,
            }
        }
        block_bases.push(sp);
    }
    let target = f.to_vector();
    let sol = match solve_columns(&gens, &target) {
        Ok(Some(s)) => s,
        _ => return fail,
    };
    let x = sol.particular;
    let independent = sol.kernel.is_empty();
    let e = dec.explicit.len();
    let coefficients = x[..e].to_vec();
    let mut offset = e;
    let mut block_forms = Vec::new();
    let mut blocks_ok = true;
    for (b, sp) in dec.blocks.iter().zip(&block_bases) {
        let c = &x[offset..offset + sp.len()];
        offset += sp.len();
        let g = BinaryForm::new(if sp.is_empty() { vec![Scalar::zero()] } else { combine(c, sp) }).expect("nonempty");
        blocks_ok &= !g.is_zero() && all_root_coefficients_nonzero(&g, &b.h);
        block_forms.push(g);
    }
    let irredundant = independent && blocks_ok && coefficients.iter().all(|c| !c.is_zero());
    VerifyReport { member: true, irredundant, coefficients, block_forms, size }
}

/// Rank of the middle catalecticant when it certifies border rank at least 4.
pub fn border_rank_certificate(f: &HomogeneousForm, span_dim: usize) -> Option<usize> {
    let d = f.degree();
    let a = d / 2;
    let rows = basis(f.num_vars(), d - a).len().min(basis(span_dim + 1, d - a).len());
    let cols = basis(span_dim + 1, a).len();
    if rows < 4 || cols < 4 {
        return None;
    }
    Some(rank(&catalecticant(f, a).ok()?))
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub grid: i64,
    pub retries: usize,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { grid: 3, retries: 50 }
    }
}

#[derive(Clone, Debug)]
pub struct SampledPoint {
    pub form: HomogeneousForm,
    /// Coefficients over the span generators, grouped as in `SpanData`.
    pub coefficients: Vec<Scalar>,
    /// Membership of `form` in each maximal proper subscheme span (all false).
    pub proper_memberships: Vec<bool>,
    pub catalecticant_rank: Option<usize>,
    pub attempts: usize,
}

pub fn sample_point(a: &Degree4Scheme, d: usize, seed: u64, cfg: &SampleConfig) -> Result<SampledPoint> {
    let span = scheme_span(a, d)?;
    if !span.proper_complete {
        return Err(Error::Unsupported("sampling needs a Gorenstein scheme".into()));
    }
    let s = a.span_dim();
    let gens = span.flat_generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut grid = cfg.grid.max(1);
    for attempt in 0..cfg.retries {
        if attempt > 0 && attempt % 10 == 0 {
            grid *= 2;
        }
        let c: Vec<Scalar> = gens.iter().map(|_| int(rng.gen_range(-grid..=grid))).collect();
        let v = combine(&c, &gens);
        if v.iter().all(|x| x.is_zero()) {
            continue;
        }
        let memberships: Vec<bool> = span.proper.iter().map(|p| p.contains(&v)).collect();
        if memberships.iter().any(|&m| m) {
            continue;
        }
        let form = HomogeneousForm::from_vector(a.ambient_dim() + 1, d, &v)?;
        let cert = border_rank_certificate(&form, s);
        if cert.is_some_and(|r| r != 4) {
            continue;
        }
        return Ok(SampledPoint { form, coefficients: c, proper_memberships: memberships, catalecticant_rank: cert, attempts: attempt + 1 });
    }
    Err(Error::Retries { step: "sample_point".into(), detail: format!("{} draws without a generic point", cfg.retries) })
}

enum Part {
    Curve { carrier: Carrier, target: usize },
    Point(Vec<Scalar>),
}

fn random_vector<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Vec<Scalar> {
    (0..n).map(|_| int(rng.gen_range(-bound..=bound))).collect()
}

/// Random vector outside the span of `avoid`.
fn random_outside<R: Rng>(rng: &mut R, avoid: &[Vec<Scalar>]) -> Vec<Scalar> {
    let n = avoid[0].len();
    let r = rank(&avoid.to_vec());
    let mut bound = 3;
    loop {
        let v = random_vector(rng, n, bound);
        let mut m = avoid.to_vec();
        m.push(v.clone());
        if rank(&m) > r {
            return v;
        }
        bound += 1;
    }
}

/// Interpolates a polynomial of degree at most `deg` from values at `0..=deg`.
fn interpolate(values: &[Scalar]) -> UPoly {
    let n = values.len();
    let mut acc = UPoly::new(vec![]);
    for (i, yi) in values.iter().enumerate() {
        let mut term = UPoly::new(vec![yi.clone()]);
        for j in 0..n {
            if i != j {
                let denom = int(i as i64 - j as i64);
                term = term.mul(&UPoly::new(vec![int(-(j as i64)) / &denom, Scalar::one() / &denom]));
            }
        }
        acc = acc.add(&term);
    }
    acc
}

fn hankel_det(g: &[Scalar], big_d: usize, r: usize) -> Scalar {
    let mu: Vec<Scalar> = g.iter().enumerate().map(|(k, c)| c / Scalar::from_integer(crate::poly::binomial(big_d, k))).collect();
    let m: Matrix = (0..=r).map(|i| (0..=r).map(|j| mu[i + j].clone()).collect()).collect();
    crate::linalg::determinant(&m)
}

/// Splits `f` over the parts and decomposes every curve part by Sylvester.
/// With `tune = Some(i)`, the shift is chosen so that curve part `i` (a binary
/// quartic) has a singular middle catalecticant.
fn split_and_solve<R: Rng>(f: &HomogeneousForm, parts: &[Part], tune: Option<usize>, rng: &mut R) -> Result<Decomposition> {
    let d = f.degree();
    let mut cols: Vec<Vec<Scalar>> = Vec::new();
    let mut ranges = Vec::new();
    for p in parts {
        let start = cols.len();
        match p {
            Part::Curve { carrier, .. } => cols.extend(carrier.psi_columns(d)),
            Part::Point(q) => cols.push(veronese(q, d)),
        }
        ranges.push(start..cols.len());
    }
    let sol = solve_columns(&cols, &f.to_vector())?.ok_or_else(|| Error::Verification("the form is not in the span of the recipe's carriers".into()))?;
    let mut candidates: Vec<Vec<Scalar>> = Vec::new();
    if let Some(i) = tune {
        if sol.kernel.len() == 1 {
            let k = &sol.kernel[0];
            let big = ranges[i].len() - 1;
            let det_at = |mu: i64| {
                let x: Vec<Scalar> = sol.particular.iter().zip(k).map(|(a, b)| a + b * int(mu)).collect();
                hankel_det(&x[ranges[i].clone()], big, big / 2)
            };
            let values: Vec<Scalar> = (0..=(big / 2 + 1) as i64).map(det_at).collect();
            for mu in rational_roots(&interpolate(&values)) {
                candidates.push(sol.particular.iter().zip(k).map(|(a, b)| a + b * &mu).collect());
            }
        }
    }
    for attempt in 0..RECIPE_ATTEMPTS {
        let x = if let Some(c) = candidates.get(attempt) {
            c.clone()
        } else if tune.is_some() && !candidates.is_empty() {
            break;
        } else {
            let mut x = sol.particular.clone();
            for k in &sol.kernel {
                let c = int(rng.gen_range(-6..=6));
                for (xi, ki) in x.iter_mut().zip(k) {
                    *xi += &c * ki;
                }
            }
            x
        };
        if let Some(dec) = try_parts(parts, &ranges, &x, rng) {
            return Ok(dec);
        }
    }
    Err(Error::Retries { step: "carrier split".into(), detail: "no split reached the target ranks".into() })
}

fn try_parts<R: Rng>(parts: &[Part], ranges: &[std::ops::Range<usize>], x: &[Scalar], rng: &mut R) -> Option<Decomposition> {
    let mut dec = Decomposition::default();
    for (p, r) in parts.iter().zip(ranges) {
        match p {
            Part::Curve { carrier, target } => {
                let g = BinaryForm::new(x[r.clone()].to_vec()).ok()?;
                if g.is_zero() {
                    return None;
                }
                let cert = binary_rank_with_rng(&g, rng).ok()?;
                if cert.rank != *target {
                    return None;
                }
                dec.blocks.push(Block { carrier: carrier.clone(), h: cert.witness, g });
            }
            Part::Point(q) => {
                let c = x[r.start].clone();
                if c.is_zero() {
                    return None;
                }
                dec.explicit.push((q.clone(), c));
            }
        }
    }
    Some(dec)
}

fn jets_of(c: &Component) -> Vec<Vec<Scalar>> {
    match c {
        Component::Jet(j) => j.jets.clone(),
        _ => vec![],
    }
}

/// Bilinear form of a symmetric matrix.
fn bilinear(m: &Matrix, x: &[Scalar], y: &[Scalar]) -> Scalar {
    let mut s = Scalar::zero();
    for i in 0..x.len() {
        for j in 0..y.len() {
            s += &x[i] * &m[i][j] * &y[j];
        }
    }
    s
}

/// Parametrization of the smooth conic `x^T M x = 0` from its point `p`.
fn conic_carrier(m: &Matrix, p: &[Scalar]) -> Result<Carrier> {
    let n = p.len();
    let units: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            let mut e = vec![Scalar::zero(); n];
            e[i] = Scalar::one();
            e
        })
        .collect();
    let mut pick = Vec::new();
    for e in &units {
        let mut mm = vec![p.to_vec()];
        mm.extend(pick.iter().cloned());
        mm.push(e.clone());
        if rank(&mm) == mm.len() {
            pick.push(e.clone());
        }
        if pick.len() == 2 {
            break;
        }
    }
    let (e1, e2) = (&pick[0], &pick[1]);
    let two = int(2);
    let lin = |a: &Scalar, x: &[Scalar], b: &Scalar, y: &[Scalar]| -> Vec<Scalar> { x.iter().zip(y).map(|(u, v)| a * u + b * v).collect() };
    let bp1 = bilinear(m, p, e1);
    let bp2 = bilinear(m, p, e2);
    let c0 = lin(&bilinear(m, e1, e1), p, &(-&two * &bp1), e1);
    let c2 = lin(&bilinear(m, e2, e2), p, &(-&two * &bp2), e2);
    let c1a = lin(&(&two * bilinear(m, e1, e2)), p, &(-&two * &bp1), e2);
    let c1: Vec<Scalar> = c1a.iter().zip(e1).map(|(a, b)| a - &two * &bp2 * b).collect();
    Carrier::new(vec![c0, c1, c2])
}

/// Two distinct rational lines through the support of a square pencil, as
/// local directions `(u, v)`, from a member of the pencil that splits.
fn rational_line_pair(s: &SquarePencilComponent) -> Option<[(Scalar, Scalar); 2]> {
    let member = |l: &Scalar, m: &Scalar| -> BinaryForm { BinaryForm::new((0..3).map(|i| l * &s.q1[i] + m * &s.q2[i]).collect()).unwrap() };
    let split = |q: &BinaryForm| -> Option<[(Scalar, Scalar); 2]> {
        if q.is_zero() || !is_squarefree(q) || q.degree() != 2 {
            return None;
        }
        let roots = explicit_roots_if_rational(q)?;
        if roots.len() != 2 {
            return None;
        }
        let r: Vec<(Scalar, Scalar)> = roots.iter().map(|p| (p.coords()[0].clone(), p.coords()[1].clone())).collect();
        Some([r[0].clone(), r[1].clone()])
    };
    for bound in 1i64..=12 {
        for l in -bound..=bound {
            for m in -bound..=bound {
                if l.abs().max(m.abs()) != bound {
                    continue;
                }
                if let Some(p) = split(&member(&int(l), &int(m))) {
                    return Some(p);
                }
            }
        }
    }
    // Rational point (r : 1 : 0) on w^2 = disc(l, m); lines through it.
    let disc = |l: &Scalar, m: &Scalar| {
        let q = member(l, m);
        let c = q.coeffs();
        &c[1] * &c[1] - int(4) * &c[0] * &c[2]
    };
    let values: Vec<Scalar> = (0..3).map(|t| disc(&int(t), &Scalar::one())).collect();
    let delta = interpolate(&values);
    for r in rational_roots(&delta) {
        // disc(l, 1) = lead (l - r)(l - r2); w = k (l - r) gives k^2 (l - r) = lead (l - r2).
        let lead = delta.lead();
        let r2 = if delta.degree() == Some(2) { -(&delta.coeffs()[1] / &lead) - &r } else { continue };
        for k in 1i64..=20 {
            let k2 = int(k * k);
            if k2 == lead {
                continue;
            }
            // k^2 l - k^2 r = lead l - lead r2.
            let l = (&k2 * &r - &lead * &r2) / (&k2 - &lead);
            if let Some(p) = split(&member(&l, &Scalar::one())) {
                return Some(p);
            }
        }
    }
    None
}

fn component_with_degree(a: &Degree4Scheme, k: usize) -> Option<&Component> {
    a.components().iter().find(|c| c.degree() == k)
}

/// Runs a recipe on an ambient-reduced scheme.
fn run_recipe<R: Rng>(a: &Degree4Scheme, f: &HomogeneousForm, d: usize, recipe: Recipe, rng: &mut R) -> Result<Decomposition> {
    let comps = a.components();
    let err = |why: &str| Error::Unsupported(format!("recipe {recipe}: {why}"));
    match recipe {
        Recipe::R0 => split_and_solve(f, &comps.iter().map(|c| Part::Point(c.support().to_vec())).collect::<Vec<_>>(), None, rng),
        Recipe::R1 => {
            let line = Carrier::line(&[Scalar::one(), Scalar::zero()], &[Scalar::zero(), Scalar::one()])?;
            split_and_solve(f, &[Part::Curve { carrier: line, target: d - 2 }], None, rng)
        }
        Recipe::R2 => {
            let lp = line_profile(a);
            let o = lp.residual.first().ok_or_else(|| err("empty residual"))?.support().to_vec();
            let line = Carrier::line(&lp.witness_line.a, &lp.witness_line.b)?;
            split_and_solve(f, &[Part::Curve { carrier: line, target: d - 1 }, Part::Point(o)], None, rng)
        }
        Recipe::R3 => {
            let c = &comps[0];
            let o = c.support().to_vec();
            let js = jets_of(c);
            let l = Carrier::line(&o, &js[0])?;
            let other = random_outside(rng, &[o.clone(), js[0].clone()]);
            let l2 = Carrier::line(&o, &other)?;
            let tune = (d == 4).then_some(0);
            split_and_solve(f, &[Part::Curve { carrier: l, target: d - 2 }, Part::Curve { carrier: l2, target: d }], tune, rng)
        }
        Recipe::R4 => {
            let lp = line_profile(a);
            let o = lp.residual.first().ok_or_else(|| err("empty residual"))?.support().to_vec();
            let a1 = comps.iter().find(|c| crate::point::proportional(c.support(), &o)).ok_or_else(|| err("no jet at the residual point"))?;
            let a2 = comps.iter().find(|c| !crate::point::proportional(c.support(), &o)).ok_or_else(|| err("missing second jet"))?;
            let r_line = Carrier::line(&o, a2.support())?;
            let dir_d = jets_of(a1)[0].clone();
            let mut other;
            loop {
                other = random_outside(rng, &[o.clone()]);
                let bad = rank(&vec![o.clone(), other.clone(), dir_d.clone()]) < 3 || rank(&vec![o.clone(), other.clone(), a2.support().to_vec()]) < 3;
                if !bad {
                    break;
                }
            }
            let l = Carrier::line(&o, &other)?;
            let tune = (d == 4).then_some(0);
            split_and_solve(f, &[Part::Curve { carrier: r_line, target: d - 2 }, Part::Curve { carrier: l, target: d }], tune, rng)
        }
        Recipe::R5 => {
            let j = component_with_degree(a, 2).ok_or_else(|| err("no 2-jet"))?;
            let t = Carrier::line(j.support(), &jets_of(j)[0])?;
            let mut parts = vec![Part::Curve { carrier: t, target: d }];
            for c in comps.iter().filter(|c| c.is_point()) {
                parts.push(Part::Point(c.support().to_vec()));
            }
            split_and_solve(f, &parts, None, rng)
        }
        Recipe::R6 => {
            let cp = conic_pencil(a)?;
            let (ma, mb) = (conic_matrix(&cp.members[0]), conic_matrix(&cp.members[1]));
            let mut chosen = None;
            for lam in [0i64, 1, -1, 2, -2, 3, -3, 4] {
                let m: Matrix = (0..3).map(|i| (0..3).map(|j| &ma[i][j] * int(lam) + &mb[i][j]).collect()).collect();
                if !crate::linalg::determinant(&m).is_zero() {
                    chosen = Some(m);
                    break;
                }
            }
            if chosen.is_none() && !crate::linalg::determinant(&ma).is_zero() {
                chosen = Some(ma.clone());
            }
            let m = chosen.ok_or_else(|| err("no smooth conic found"))?;
            let carrier = conic_carrier(&m, comps[0].support())?;
            split_and_solve(f, &[Part::Curve { carrier, target: 2 * d - 2 }], None, rng)
        }
        Recipe::R7 => {
            let s = match &comps[0] {
                Component::SquarePencil(s) => s,
                _ => return Err(err("expected a square pencil")),
            };
            let pair = rational_line_pair(s).ok_or_else(|| err("no member of the conic pencil splits into rational lines"))?;
            let mut parts = Vec::new();
            for (u, v) in pair {
                let dir: Vec<Scalar> = s.directions[0].iter().zip(&s.directions[1]).map(|(x, y)| x * &u + y * &v).collect();
                parts.push(Part::Curve { carrier: Carrier::line(&s.support, &dir)?, target: d - 1 });
            }
            split_and_solve(f, &parts, None, rng)
        }
        Recipe::R8 => {
            let parts: Vec<Part> =
                comps.iter().map(|c| Ok(Part::Curve { carrier: Carrier::line(c.support(), &jets_of(c)[0])?, target: d })).collect::<Result<_>>()?;
            split_and_solve(f, &parts, None, rng)
        }
        Recipe::R9 => {
            let c = &comps[0];
            let mut coeffs = vec![c.support().to_vec()];
            coeffs.extend(jets_of(c));
            let curve = Carrier::new(coeffs)?;
            split_and_solve(f, &[Part::Curve { carrier: curve, target: 3 * d - 2 }], None, rng)
        }
        Recipe::R10 => {
            let j = component_with_degree(a, 3).ok_or_else(|| err("no 3-jet"))?;
            let o = component_with_degree(a, 1).ok_or_else(|| err("no simple point"))?;
            let mut coeffs = vec![j.support().to_vec()];
            coeffs.extend(jets_of(j));
            let conic = Carrier::new(coeffs)?;
            split_and_solve(f, &[Part::Curve { carrier: conic, target: 2 * d - 1 }, Part::Point(o.support().to_vec())], None, rng)
        }
        Recipe::R11 => apolar_conic_recipe(f, rng),
    }
}

/// Plane cubics: a smooth apolar conic through a random rational point carries a
/// rank-4 binary sextic.
fn apolar_conic_recipe<R: Rng>(f: &HomogeneousForm, rng: &mut R) -> Result<Decomposition> {
    let k = kernel(&catalecticant(f, 2)?, 6);
    if k.is_empty() {
        return Err(Error::Unsupported("no apolar conics".into()));
    }
    let b = basis(3, 2);
    for _ in 0..RECIPE_ATTEMPTS {
        let q = random_vector(rng, 3, 4);
        if q.iter().all(|x| x.is_zero()) {
            continue;
        }
        let values: Vec<Scalar> = k
            .iter()
            .map(|c| {
                b.list
                    .iter()
                    .zip(c)
                    .map(|(e, x)| {
                        let mut t = x.clone();
                        for (qi, &ei) in q.iter().zip(e) {
                            for _ in 0..ei {
                                t *= qi;
                            }
                        }
                        t
                    })
                    .sum()
            })
            .collect();
        let sub = kernel(&vec![values], k.len());
        if sub.is_empty() {
            continue;
        }
        let w: Vec<Scalar> = (0..sub.len()).map(|_| int(rng.gen_range(-5..=5))).collect();
        let coeff = combine(&w, &sub);
        let conic = combine(&coeff, &k);
        let m = conic_matrix(&conic);
        if crate::linalg::determinant(&m).is_zero() {
            continue;
        }
        let carrier = conic_carrier(&m, &q)?;
        if let Ok(dec) = split_and_solve(f, &[Part::Curve { carrier, target: 4 }], None, rng) {
            return Ok(dec);
        }
    }
    Err(Error::Retries { step: "apolar conic".into(), detail: "no smooth apolar conic gave rank 4".into() })
}

#[derive(Clone, Debug)]
pub struct Decomposed {
    pub classification: StratumResult,
    pub decomposition: Decomposition,
    pub report: VerifyReport,
}

/// Classifies, decomposes with the matching recipe, and verifies the result in the
/// original coordinates.
pub fn decompose(a: &Degree4Scheme, d: usize, f: &HomogeneousForm, seed: u64) -> Result<Decomposed> {
    let red = reduce_ambient(a)?;
    let cls = classify(&red.scheme, d)?;
    let recipe = cls.verdict.recipe().ok_or_else(|| Error::Unsupported(format!("no recipe for verdict {} ({})", cls.verdict.name(), cls.configuration)))?;
    let target = cls.verdict.rank().expect("rank verdicts carry a rank");
    let g = red.reduce_form(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dec = run_recipe(&red.scheme, &g, d, recipe, &mut rng)?.lift(&red)?.refine();
    let report = verify_decomposition(f, &dec);
    if !report.member || !report.irredundant || report.size != target {
        return Err(Error::Verification(format!(
            "recipe {recipe}: member={} irredundant={} size={} target={target}",
            report.member, report.irredundant, report.size
        )));
    }
    let mut dec = dec;
    for (p, c) in dec.explicit.iter_mut().zip(&report.coefficients) {
        p.1 = c.clone();
    }
    for (b, g) in dec.blocks.iter_mut().zip(&report.block_forms) {
        b.g = g.clone();
    }
    Ok(Decomposed { classification: cls, decomposition: dec, report })
}

/// Carriers and fixed points on which a rank search for `a` draws its points.
pub fn search_space(a: &Degree4Scheme) -> Result<(Vec<Carrier>, Vec<Vec<Scalar>>)> {
    let mut carriers = Vec::new();
    let supports = a.supports();
    for (i, p) in supports.iter().enumerate() {
        for q in &supports[i + 1..] {
            carriers.push(Carrier::line(p, q)?);
        }
    }
    for c in a.components() {
        let mut v = vec![c.support().to_vec()];
        v.extend(jets_of(c));
        if v.len() >= 2 {
            carriers.push(Carrier::line(&v[0], &v[1])?);
        }
        if v.len() >= 3 {
            carriers.push(Carrier::new(v[..3].to_vec())?);
        }
        if v.len() == 4 {
            carriers.push(Carrier::new(v.clone())?);
        }
    }
    Ok((carriers, supports))
}

/// Randomised search for a decomposition of size at most `r_max` with points drawn
/// on the given carriers and from the given point list. Returns the smallest size
/// found. Finding nothing is evidence, not proof.
pub fn oracle_rank_upper(f: &HomogeneousForm, carriers: &[Carrier], points: &[Vec<Scalar>], r_max: usize, trials: usize, seed: u64) -> Option<usize> {
    let d = f.degree();
    if f.is_zero() || r_max == 0 {
        return None;
    }
    if d >= 2 && rank(&catalecticant(f, 1).ok()?) == 1 {
        return Some(1);
    }
    if d == 1 {
        return Some(1);
    }
    let target = f.to_vector();
    let len = target.len();
    for k in 2..=r_max {
        let found = (0..trials).into_par_iter().any(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64) << 40) ^ t as u64);
            let mut cols = Vec::with_capacity(k);
            for _ in 0..k {
                let use_point = !points.is_empty() && (carriers.is_empty() || rng.gen_bool(0.25));
                let p = if use_point {
                    points[rng.gen_range(0..points.len())].clone()
                } else {
                    let c = &carriers[rng.gen_range(0..carriers.len())];
                    let (s, u) = (int(rng.gen_range(-4..=4)), int(rng.gen_range(-4..=4)));
                    if s.is_zero() && u.is_zero() {
                        c.point_at(&Scalar::one(), &Scalar::zero())
                    } else {
                        c.point_at(&s, &u)
                    }
                };
                if p.iter().all(|x| x.is_zero()) {
                    return false;
                }
                cols.push(veronese(&p, d));
            }
            if !member_mod_p(&cols, &target) {
                return false;
            }
            LinearSubspace::from_vectors(len, &cols).map(|s| s.contains(&target)).unwrap_or(false)
        });
        if found {
            return Some(k);
        }
    }
    None
}

const PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % PRIME as u128) as u64
}

fn inv_mod(a: u64) -> u64 {
    let (mut acc, mut b, mut e) = (1u64, a, PRIME - 2);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b);
        }
        b = mul_mod(b, b);
        e >>= 1;
    }
    acc
}

fn reduce_mod(x: &Scalar) -> Option<u64> {
    let p = BigInt::from(PRIME);
    let n = u64::try_from(x.numer().mod_floor(&p)).ok()?;
    let d = u64::try_from(x.denom().mod_floor(&p)).ok()?;
    (d != 0).then(|| mul_mod(n, inv_mod(d)))
}

fn rank_mod(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(r, p);
        let inv = inv_mod(rows[r][c]);
        for i in r + 1..rows.len() {
            if rows[i][c] != 0 {
                let f = mul_mod(rows[i][c], inv);
                for j in c..ncols {
                    let t = mul_mod(f, rows[r][j]);
                    rows[i][j] = (rows[i][j] + PRIME - t) % PRIME;
                }
            }
        }
        r += 1;
    }
    r
}

/// Membership of `target` in the span of `cols` modulo a 61-bit prime. A `false`
/// is wrong only when the prime divides a minor, so it serves as a filter before
/// the exact test; unreducible input counts as a possible member.
fn member_mod_p(cols: &[Vec<Scalar>], target: &[Scalar]) -> bool {
    let reduce = |v: &[Scalar]| v.iter().map(reduce_mod).collect::<Option<Vec<u64>>>();
    let Some(mut rows) = cols.iter().map(|c| reduce(c)).collect::<Option<Vec<_>>>() else { return true };
    let Some(t) = reduce(target) else { return true };
    let before = rank_mod(rows.clone());
    rows.push(t);
    rank_mod(rows) == before
}
