//! Degree-4 zero-dimensional schemes given by local data at each support point.
//!
//! A jet of length `k` at `p` is the image of `Spec K[t]/(t^k)` under
//! `t -> p + t v1 + t^2 v2 + t^3 v3`. A square pencil at `p` with directions
//! `w1, w2` is `Spec K[x,y]/(Q1, Q2, (x,y)^3)` under `(x,y) -> p + x w1 + y w2`.
//! A fat point is the first infinitesimal neighbourhood of `p` inside the span
//! of `p` and its directions.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{determinant, kernel, rank, LinearSubspace, Matrix};
use crate::point::proportional;
use crate::poly::{basis, multinomial, HomogeneousForm};
use crate::scalar::{from_rats, to_rats, Rat, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetComponent {
    pub support: Vec<Scalar>,
    pub jets: Vec<Vec<Scalar>>,
}

/// `q = [a, b, c]` stands for `a x^2 + b x y + c y^2` in the local variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarePencilComponent {
    pub support: Vec<Scalar>,
    pub directions: [Vec<Scalar>; 2],
    pub q1: [Scalar; 3],
    pub q2: [Scalar; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPointComponent {
    pub support: Vec<Scalar>,
    pub directions: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    Jet(JetComponent),
    SquarePencil(SquarePencilComponent),
    FatPoint(FatPointComponent),
}

impl Component {
    pub fn support(&self) -> &[Scalar] {
        match self {
            Component::Jet(j) => &j.support,
            Component::SquarePencil(s) => &s.support,
            Component::FatPoint(f) => &f.support,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Component::Jet(j) => j.jets.len() + 1,
            Component::SquarePencil(_) => 4,
            Component::FatPoint(f) => f.directions.len() + 1,
        }
    }

    pub fn is_point(&self) -> bool {
        self.degree() == 1
    }

    /// Every vector in the component data, support first.
    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        let mut v = vec![self.support().to_vec()];
        match self {
            Component::Jet(j) => v.extend(j.jets.iter().cloned()),
            Component::SquarePencil(s) => v.extend(s.directions.iter().cloned()),
            Component::FatPoint(f) => v.extend(f.directions.iter().cloned()),
        }
        v
    }

    fn map_vectors(&self, f: &dyn Fn(&[Scalar]) -> Vec<Scalar>) -> Component {
        match self {
            Component::Jet(j) => Component::Jet(JetComponent { support: f(&j.support), jets: j.jets.iter().map(|v| f(v)).collect() }),
            Component::SquarePencil(s) => Component::SquarePencil(SquarePencilComponent {
                support: f(&s.support),
                directions: [f(&s.directions[0]), f(&s.directions[1])],
                q1: s.q1.clone(),
                q2: s.q2.clone(),
            }),
            Component::FatPoint(fp) => {
                Component::FatPoint(FatPointComponent { support: f(&fp.support), directions: fp.directions.iter().map(|v| f(v)).collect() })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Degree4Scheme {
    ambient_dim: usize,
    components: Vec<Component>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateVerdict {
    Accept,
    RejectNotGorenstein,
    RejectFatPoint,
    RejectPlanarFatPoint,
}

impl Degree4Scheme {
    /// Validates shapes, lengths, distinct supports and total degree 4.
    pub fn new(ambient_dim: usize, components: Vec<Component>) -> Result<Self> {
        let n = ambient_dim + 1;
        if ambient_dim == 0 {
            return Err(Error::Scheme("ambient dimension must be at least 1".into()));
        }
        for c in &components {
            if c.vectors().iter().any(|v| v.len() != n) {
                return Err(Error::Scheme(format!("component vectors must have length {n}")));
            }
            if c.support().iter().all(|x| x.is_zero()) {
                return Err(Error::Scheme("zero support vector".into()));
            }
            match c {
                Component::Jet(j) => {
                    if j.jets.len() > 3 {
                        return Err(Error::Scheme("a jet has length at most 4".into()));
                    }
                    if let Some(v1) = j.jets.first() {
                        if rank(&vec![j.support.clone(), v1.clone()]) < 2 {
                            return Err(Error::Scheme("first jet vector is proportional to the support".into()));
                        }
                    }
                }
                Component::SquarePencil(s) => {
                    let m = vec![s.support.clone(), s.directions[0].clone(), s.directions[1].clone()];
                    if rank(&m) < 3 {
                        return Err(Error::Scheme("square pencil directions must span a plane with the support".into()));
                    }
                    if rank(&vec![s.q1.to_vec(), s.q2.to_vec()]) < 2 {
                        return Err(Error::Scheme("Q1 and Q2 must be linearly independent".into()));
                    }
                }
                Component::FatPoint(f) => {
                    if f.directions.len() < 2 || f.directions.len() > 3 {
                        return Err(Error::Scheme("a fat point needs 2 or 3 directions".into()));
                    }
                    let mut m = vec![f.support.clone()];
                    m.extend(f.directions.iter().cloned());
                    if rank(&m) < m.len() {
                        return Err(Error::Scheme("fat point directions must be independent modulo the support".into()));
                    }
                }
            }
        }
        for (i, a) in components.iter().enumerate() {
            for b in &components[i + 1..] {
                if proportional(a.support(), b.support()) {
                    return Err(Error::Scheme("component supports must be distinct".into()));
                }
            }
        }
        let total: usize = components.iter().map(|c| c.degree()).sum();
        if total != 4 {
            return Err(Error::Scheme(format!("total degree is {total}, expected 4")));
        }
        Ok(Degree4Scheme { ambient_dim, components })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn supports(&self) -> Vec<Vec<Scalar>> {
        self.components.iter().map(|c| c.support().to_vec()).collect()
    }

    pub fn is_reduced(&self) -> bool {
        self.components.iter().all(|c| c.is_point())
    }

    pub fn is_curvilinear(&self) -> bool {
        self.components.iter().all(|c| matches!(c, Component::Jet(_)))
    }

    /// All vectors of the component data; they span the linear span of the scheme.
    pub fn all_vectors(&self) -> Vec<Vec<Scalar>> {
        self.components.iter().flat_map(|c| c.vectors()).collect()
    }

    /// Projective dimension of the linear span.
    pub fn span_dim(&self) -> usize {
        rank(&self.all_vectors()) - 1
    }

    /// Image under `v -> M v`, `M` of size `(m'+1) x (m+1)` and injective on the span.
    pub fn transform(&self, m: &Matrix) -> Result<Self> {
        if m.iter().any(|r| r.len() != self.ambient_dim + 1) || m.len() < 2 {
            return Err(Error::Dimension("transformation has the wrong number of columns".into()));
        }
        let f = |v: &[Scalar]| -> Vec<Scalar> { crate::linalg::mat_vec(m, v) };
        let comps = self.components.iter().map(|c| c.map_vectors(&f)).collect();
        Self::new(m.len() - 1, comps)
    }

    pub fn with_components(&self, components: Vec<Component>) -> Result<Self> {
        Self::new(self.ambient_dim, components)
    }
}

/// Resultant of two binary quadratics `a x^2 + b x y + c y^2`.
pub fn quadratic_resultant(q1: &[Scalar; 3], q2: &[Scalar; 3]) -> Scalar {
    let (a1, b1, c1) = (&q1[0], &q1[1], &q1[2]);
    let (a2, b2, c2) = (&q2[0], &q2[1], &q2[2]);
    let u = a1 * c2 - a2 * c1;
    &u * &u - (a1 * b2 - a2 * b1) * (b1 * c2 - b2 * c1)
}

pub fn is_gorenstein_pencil(s: &SquarePencilComponent) -> bool {
    !quadratic_resultant(&s.q1, &s.q2).is_zero()
}

pub fn gorenstein_gate(a: &Degree4Scheme) -> GateVerdict {
    for c in a.components() {
        match c {
            Component::FatPoint(f) if f.directions.len() == 3 => return GateVerdict::RejectFatPoint,
            Component::FatPoint(_) => return GateVerdict::RejectPlanarFatPoint,
            Component::SquarePencil(s) if !is_gorenstein_pencil(s) => return GateVerdict::RejectNotGorenstein,
            _ => {}
        }
    }
    GateVerdict::Accept
}

/// Coefficients `G_j` of `L(t)^d = sum_j t^j G_j` modulo `t^k`, for `L(t) = sum_i t^i l_i`.
fn truncated_power(lines: &[Vec<Scalar>], d: usize, k: usize) -> Vec<HomogeneousForm> {
    let n = lines[0].len();
    let forms: Vec<HomogeneousForm> = lines.iter().map(|c| HomogeneousForm::linear(c)).collect();
    let mut series = vec![HomogeneousForm::constant(n, Scalar::one())];
    for step in 0..d {
        let mut next = vec![HomogeneousForm::zero(n, step + 1); k.min(series.len() + forms.len() - 1)];
        for (j, g) in series.iter().enumerate() {
            if g.is_zero() {
                continue;
            }
            for (i, l) in forms.iter().enumerate() {
                if j + i < next.len() {
                    next[j + i] = next[j + i].add(&g.mul(l).expect("same variables")).expect("same degree");
                }
            }
        }
        series = next;
    }
    series.resize(k, HomogeneousForm::zero(n, d));
    series
}

/// Second-order functional `(A, B, C)` on `x^2, xy, y^2` vanishing on `Q1, Q2`.
fn dual_quadric(s: &SquarePencilComponent) -> Vec<Scalar> {
    let k = kernel(&vec![s.q1.to_vec(), s.q2.to_vec()], 3);
    k[0].clone()
}

fn component_generators(c: &Component, d: usize) -> Vec<Vec<Scalar>> {
    match c {
        Component::Jet(j) => {
            let mut lines = vec![j.support.clone()];
            lines.extend(j.jets.iter().cloned());
            truncated_power(&lines, d, j.jets.len() + 1).iter().map(|g| g.to_vector()).collect()
        }
        Component::FatPoint(f) => {
            let mut out = vec![crate::poly::veronese(&f.support, d)];
            for w in &f.directions {
                out.push(truncated_power(&[f.support.clone(), w.clone()], d, 2)[1].to_vector());
            }
            out
        }
        Component::SquarePencil(s) => {
            let phi = pencil_expansion(s, d);
            let q = dual_quadric(s);
            let mut second = vec![Scalar::zero(); phi[0].len()];
            for (coef, g) in q.iter().zip([&phi[3], &phi[4], &phi[5]]) {
                for (o, x) in second.iter_mut().zip(g) {
                    *o += coef * x;
                }
            }
            vec![phi[0].clone(), phi[1].clone(), phi[2].clone(), second]
        }
    }
}

/// Coefficients of `1, x, y, x^2, xy, y^2` in `(p + x w1 + y w2)^d`.
fn pencil_expansion(s: &SquarePencilComponent, d: usize) -> Vec<Vec<Scalar>> {
    let p = HomogeneousForm::linear(&s.support);
    let w1 = HomogeneousForm::linear(&s.directions[0]);
    let w2 = HomogeneousForm::linear(&s.directions[1]);
    let n = s.support.len();
    let dd = Scalar::from_integer(d.into());
    let zero = || vec![Scalar::zero(); basis(n, d).len()];
    let p1 = if d >= 1 { p.pow(d - 1) } else { HomogeneousForm::zero(n, 0) };
    let lin = |w: &HomogeneousForm| p1.mul(w).unwrap().scale(&dd).to_vector();
    let mut out = vec![p.pow(d).to_vector(), lin(&w1), lin(&w2)];
    if d >= 2 {
        let p2 = p.pow(d - 2);
        let c2 = Scalar::from_integer((d * (d - 1) / 2).into());
        let c11 = Scalar::from_integer((d * (d - 1)).into());
        out.push(p2.mul(&w1.mul(&w1).unwrap()).unwrap().scale(&c2).to_vector());
        out.push(p2.mul(&w1.mul(&w2).unwrap()).unwrap().scale(&c11).to_vector());
        out.push(p2.mul(&w2.mul(&w2).unwrap()).unwrap().scale(&c2).to_vector());
    } else {
        out.extend([zero(), zero(), zero()]);
    }
    out
}

/// Span of `nu_d` of the scheme together with the spans of its maximal proper
/// subschemes.
#[derive(Clone, Debug)]
pub struct SpanData {
    pub span: LinearSubspace,
    /// Generators, grouped by component.
    pub generators: Vec<Vec<Vec<Scalar>>>,
    /// Spans of the maximal proper subschemes.
    pub proper: Vec<LinearSubspace>,
    /// False when the scheme has infinitely many maximal proper subschemes
    /// (fat points and non-Gorenstein pencils); `proper` is then empty.
    pub proper_complete: bool,
}

impl SpanData {
    pub fn flat_generators(&self) -> Vec<Vec<Scalar>> {
        self.generators.iter().flatten().cloned().collect()
    }
}

/// The unique maximal proper subscheme of a Gorenstein component, or `None` for a
/// simple point.
pub fn truncate_component(c: &Component) -> Option<Component> {
    match c {
        Component::Jet(j) if j.jets.is_empty() => None,
        Component::Jet(j) => Some(Component::Jet(JetComponent { support: j.support.clone(), jets: j.jets[..j.jets.len() - 1].to_vec() })),
        Component::SquarePencil(s) => Some(Component::FatPoint(FatPointComponent { support: s.support.clone(), directions: s.directions.to_vec() })),
        Component::FatPoint(_) => None,
    }
}

pub fn scheme_span(a: &Degree4Scheme, d: usize) -> Result<SpanData> {
    if d < 3 {
        return Err(Error::Degree(format!("degree {d} is below 3")));
    }
    let len = basis(a.ambient_dim() + 1, d).len();
    let generators: Vec<Vec<Vec<Scalar>>> = a.components().iter().map(|c| component_generators(c, d)).collect();
    let flat: Vec<Vec<Scalar>> = generators.iter().flatten().cloned().collect();
    let span = LinearSubspace::from_vectors(len, &flat)?;
    let complete = gorenstein_gate(a) == GateVerdict::Accept;
    let mut proper = Vec::new();
    if complete {
        for (i, c) in a.components().iter().enumerate() {
            let mut vecs = Vec::new();
            for (j, g) in generators.iter().enumerate() {
                if j != i {
                    vecs.extend(g.iter().cloned());
                }
            }
            if let Some(t) = truncate_component(c) {
                vecs.extend(component_generators(&t, d));
            }
            proper.push(LinearSubspace::from_vectors(len, &vecs)?);
        }
    }
    Ok(SpanData { span, generators, proper, proper_complete: complete })
}

/// A line given by two spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Vec<Scalar>,
    pub b: Vec<Scalar>,
}

impl Line {
    pub fn new(a: Vec<Scalar>, b: Vec<Scalar>) -> Option<Self> {
        (rank(&vec![a.clone(), b.clone()]) == 2).then_some(Line { a, b })
    }

    pub fn subspace(&self) -> LinearSubspace {
        LinearSubspace::from_vectors(self.a.len(), &[self.a.clone(), self.b.clone()]).unwrap()
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.subspace().contains(v)
    }
}

/// Degree of the schematic intersection of a component with a line.
pub fn component_line_degree(c: &Component, line: &Line) -> usize {
    let l = line.subspace();
    if !l.contains(c.support()) {
        return 0;
    }
    match c {
        Component::Jet(j) => 1 + j.jets.iter().take_while(|v| l.contains(v)).count(),
        Component::FatPoint(f) => {
            let mut m = vec![f.support.clone()];
            m.extend(f.directions.iter().cloned());
            let plane = LinearSubspace::from_vectors(f.support.len(), &m).unwrap();
            if plane.contains_space(&l) {
                2
            } else {
                1
            }
        }
        Component::SquarePencil(s) => {
            let mut m = vec![s.support.clone()];
            m.extend(s.directions.iter().cloned());
            let plane = LinearSubspace::from_vectors(s.support.len(), &m).unwrap();
            if !plane.contains_space(&l) {
                return 1;
            }
            let (u, v) = local_direction(s, &l);
            let val = |q: &[Scalar; 3]| &q[0] * &u * &u + &q[1] * &u * &v + &q[2] * &v * &v;
            if val(&s.q1).is_zero() && val(&s.q2).is_zero() {
                3
            } else {
                2
            }
        }
    }
}

/// Local coordinates `(u, v)` of the direction of a line through the support of a
/// square pencil, inside its plane.
fn local_direction(s: &SquarePencilComponent, l: &LinearSubspace) -> (Scalar, Scalar) {
    // l = <p, x> with x = alpha p + u w1 + v w2.
    let basis = [s.support.clone(), s.directions[0].clone(), s.directions[1].clone()];
    for x in l.basis() {
        let sol = crate::linalg::solve_columns(&basis, x).unwrap().unwrap().particular;
        if !(sol[1].is_zero() && sol[2].is_zero()) {
            return (sol[1].clone(), sol[2].clone());
        }
    }
    unreachable!("line contains the support and lies in the plane")
}

/// Common root direction of the local quadrics, for a non-Gorenstein pencil.
fn pencil_common_direction(s: &SquarePencilComponent) -> Option<Vec<Scalar>> {
    let (u, v) = pencil_roots(s).into_iter().next()?;
    Some(s.directions[0].iter().zip(&s.directions[1]).map(|(a, b)| a * &u + b * &v).collect())
}

/// Rational common roots `(u:v)` of `Q1` and `Q2`.
fn pencil_roots(s: &SquarePencilComponent) -> Vec<(Scalar, Scalar)> {
    use crate::upoly::{rational_roots, UPoly};
    let val = |q: &[Scalar; 3], u: &Scalar, v: &Scalar| &q[0] * u * u + &q[1] * u * v + &q[2] * v * v;
    let mut out = Vec::new();
    if val(&s.q1, &Scalar::zero(), &Scalar::one()).is_zero() && val(&s.q2, &Scalar::zero(), &Scalar::one()).is_zero() {
        out.push((Scalar::zero(), Scalar::one()));
    }
    // u = 1: c v^2 + b v + a.
    let p1 = UPoly::new(vec![s.q1[0].clone(), s.q1[1].clone(), s.q1[2].clone()]);
    let p2 = UPoly::new(vec![s.q2[0].clone(), s.q2[1].clone(), s.q2[2].clone()]);
    let g = p1.gcd(&p2);
    for r in rational_roots(&g) {
        out.push((Scalar::one(), r));
    }
    out
}

#[derive(Clone, Debug)]
pub struct LineProfile {
    pub max_line_degree: usize,
    pub witness_line: Line,
    /// Components left after removing the intersection with the witness line.
    pub residual: Vec<Component>,
    pub residual_on_line: bool,
}

/// Candidate lines for intersection degree at least 2.
pub fn candidate_lines(a: &Degree4Scheme) -> Vec<Line> {
    let mut out: Vec<Line> = Vec::new();
    let mut push = |l: Option<Line>| {
        if let Some(l) = l {
            if !out.iter().any(|o| o.subspace() == l.subspace()) {
                out.push(l);
            }
        }
    };
    let comps = a.components();
    for (i, c) in comps.iter().enumerate() {
        for e in &comps[i + 1..] {
            push(Line::new(c.support().to_vec(), e.support().to_vec()));
        }
        match c {
            Component::Jet(j) => {
                if let Some(v1) = j.jets.first() {
                    push(Line::new(j.support.clone(), v1.clone()));
                }
            }
            Component::SquarePencil(s) => {
                if let Some(w) = pencil_common_direction(s) {
                    push(Line::new(s.support.clone(), w));
                }
                push(Line::new(s.support.clone(), s.directions[0].clone()));
            }
            Component::FatPoint(f) => {
                for w in &f.directions {
                    push(Line::new(f.support.clone(), w.clone()));
                }
            }
        }
    }
    out
}

pub fn scheme_line_degree(a: &Degree4Scheme, line: &Line) -> usize {
    a.components().iter().map(|c| component_line_degree(c, line)).sum()
}

/// The component left after removing a degree-`j` intersection with a line.
fn residual_component(c: &Component, j: usize) -> Option<Component> {
    let k = c.degree();
    if j == 0 {
        return Some(c.clone());
    }
    if j >= k {
        return None;
    }
    match c {
        Component::Jet(jet) => Some(Component::Jet(JetComponent { support: jet.support.clone(), jets: jet.jets[..k - j - 1].to_vec() })),
        // Pencil or fat point: only the support is left (degree 1 residual) when the
        // line meets it in degree k - 1.
        _ if k - j == 1 => Some(Component::Jet(JetComponent { support: c.support().to_vec(), jets: vec![] })),
        _ => Some(c.clone()),
    }
}

pub fn line_profile(a: &Degree4Scheme) -> LineProfile {
    let lines = candidate_lines(a);
    let mut best: Option<(usize, Line)> = None;
    for l in lines {
        let deg = scheme_line_degree(a, &l);
        if best.as_ref().is_none_or(|(b, _)| deg > *b) {
            best = Some((deg, l));
        }
    }
    let (deg, line) = best.unwrap_or_else(|| {
        let s = a.supports()[0].clone();
        let other = (0..s.len())
            .map(|i| {
                let mut e = vec![Scalar::zero(); s.len()];
                e[i] = Scalar::one();
                e
            })
            .find(|e| !proportional(e, &s))
            .unwrap();
        let l = Line::new(s, other).unwrap();
        (scheme_line_degree(a, &l), l)
    });
    let residual: Vec<Component> = a.components().iter().filter_map(|c| residual_component(c, component_line_degree(c, &line))).collect();
    let residual_on_line = residual.iter().all(|c| line.contains(c.support()));
    LineProfile { max_line_degree: deg, witness_line: line, residual, residual_on_line }
}

/// Conics through a planar scheme.
#[derive(Clone, Debug)]
pub struct ConicPencil {
    pub pencil_dim: usize,
    /// Coefficient vectors, in the degree-2 monomial basis, of a basis of the conics.
    pub members: Vec<Vec<Scalar>>,
    pub generic_member_smooth: bool,
    /// Coefficients of `det(lambda A + mu B)` on `lambda^3, lambda^2 mu, lambda mu^2, mu^3`.
    pub determinant_cubic: Vec<Scalar>,
}

/// Symmetric matrix of a ternary quadric given by its coefficient vector.
pub fn conic_matrix(c: &[Scalar]) -> Matrix {
    let b = basis(3, 2);
    let mut m = vec![vec![Scalar::zero(); 3]; 3];
    for (e, x) in b.list.iter().zip(c) {
        let idx: Vec<usize> = e.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat_n(i, k as usize)).collect();
        if idx[0] == idx[1] {
            m[idx[0]][idx[0]] = x.clone();
        } else {
            let h = x / Scalar::from_integer(2.into());
            m[idx[0]][idx[1]] = h.clone();
            m[idx[1]][idx[0]] = h;
        }
    }
    m
}

/// Quadrics through the scheme, as the kernel of the pairing with the degree-2 span.
pub fn quadrics_through(a: &Degree4Scheme) -> Vec<Vec<Scalar>> {
    let b = basis(a.ambient_dim() + 1, 2);
    let gens: Vec<Vec<Scalar>> = a.components().iter().flat_map(|c| component_generators(c, 2)).collect();
    let weights: Vec<Scalar> = b.list.iter().map(|e| Scalar::one() / Scalar::from_integer(multinomial(e))).collect();
    let m: Matrix = gens.iter().map(|g| g.iter().zip(&weights).map(|(x, w)| x * w).collect()).collect();
    kernel(&m, b.len())
}

pub fn conic_pencil(a: &Degree4Scheme) -> Result<ConicPencil> {
    if a.ambient_dim() != 2 {
        return Err(Error::Dimension("conic pencils need a planar scheme".into()));
    }
    let members = quadrics_through(a);
    if members.len() != 2 {
        return Err(Error::Scheme(format!("expected a pencil of conics, found dimension {}", members.len())));
    }
    let (ma, mb) = (conic_matrix(&members[0]), conic_matrix(&members[1]));
    let det_at = |l: i64, m: i64| {
        let (l, m) = (Scalar::from_integer(l.into()), Scalar::from_integer(m.into()));
        let mm: Matrix = (0..3).map(|i| (0..3).map(|j| &ma[i][j] * &l + &mb[i][j] * &m).collect()).collect();
        determinant(&mm)
    };
    // c0 l^3 + c1 l^2 m + c2 l m^2 + c3 m^3 from four evaluations.
    let (f10, f01, f11, f1m) = (det_at(1, 0), det_at(0, 1), det_at(1, 1), det_at(1, -1));
    let two = Scalar::from_integer(2.into());
    let c0 = f10.clone();
    let c3 = f01.clone();
    let sum = &f11 - &c0 - &c3; // c1 + c2
    let diff = &f1m - &c0 + &c3; // c1 - c2
    let c1 = (&sum + &diff) / &two;
    let c2 = (&sum - &diff) / &two;
    let cubic = vec![c0, c1, c2, c3];
    let smooth = cubic.iter().any(|x| !x.is_zero());
    Ok(ConicPencil { pencil_dim: 2, members, generic_member_smooth: smooth, determinant_cubic: cubic })
}

/// Socle dimension of `K[x,y]/(Q1, Q2, (x,y)^3)` by linear algebra on the quotient.
pub fn pencil_socle_dimension(q1: &[Scalar; 3], q2: &[Scalar; 3]) -> usize {
    // Linear forms l = u x + v y with x l, y l in span(Q1, Q2):
    // x l = u x^2 + v xy, y l = u xy + v y^2.
    let span = vec![q1.to_vec(), q2.to_vec()];
    let r = rank(&span);
    let mut m: Matrix = Vec::new();
    // Condition: both x l and y l are orthogonal to the annihilator of span(Q1, Q2).
    let ann = kernel(&span, 3);
    for a in &ann {
        m.push(vec![a[0].clone(), a[1].clone()]);
        m.push(vec![a[1].clone(), a[2].clone()]);
    }
    let linear_socle = if m.is_empty() { 2 } else { 2 - rank(&m) };
    let quadratic_part = 3 - r;
    quadratic_part + linear_socle
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ComponentJson {
    Jet {
        support: Vec<Rat>,
        #[serde(default)]
        jets: Vec<Vec<Rat>>,
    },
    SquarePencil {
        support: Vec<Rat>,
        directions: Vec<Vec<Rat>>,
        q1: Vec<Rat>,
        q2: Vec<Rat>,
    },
    FatPoint {
        support: Vec<Rat>,
        directions: Vec<Vec<Rat>>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SchemeJson {
    pub ambient_dim: usize,
    pub components: Vec<ComponentJson>,
}

fn three(v: &[Rat], what: &str) -> Result<[Scalar; 3]> {
    let s = from_rats(v);
    <[Scalar; 3]>::try_from(s).map_err(|_| Error::Scheme(format!("{what} needs 3 coefficients")))
}

impl SchemeJson {
    pub fn to_scheme(&self) -> Result<Degree4Scheme> {
        let mut comps = Vec::new();
        for c in &self.components {
            comps.push(match c {
                ComponentJson::Jet { support, jets } => {
                    Component::Jet(JetComponent { support: from_rats(support), jets: jets.iter().map(|v| from_rats(v)).collect() })
                }
                ComponentJson::SquarePencil { support, directions, q1, q2 } => {
                    if directions.len() != 2 {
                        return Err(Error::Scheme("a square pencil needs 2 directions".into()));
                    }
                    Component::SquarePencil(SquarePencilComponent {
                        support: from_rats(support),
                        directions: [from_rats(&directions[0]), from_rats(&directions[1])],
                        q1: three(q1, "q1")?,
                        q2: three(q2, "q2")?,
                    })
                }
                ComponentJson::FatPoint { support, directions } => {
                    Component::FatPoint(FatPointComponent { support: from_rats(support), directions: directions.iter().map(|v| from_rats(v)).collect() })
                }
            });
        }
        Degree4Scheme::new(self.ambient_dim, comps)
    }

    pub fn from_scheme(a: &Degree4Scheme) -> Self {
        let components = a
            .components()
            .iter()
            .map(|c| match c {
                Component::Jet(j) => ComponentJson::Jet { support: to_rats(&j.support), jets: j.jets.iter().map(|v| to_rats(v)).collect() },
                Component::SquarePencil(s) => ComponentJson::SquarePencil {
                    support: to_rats(&s.support),
                    directions: s.directions.iter().map(|v| to_rats(v)).collect(),
                    q1: to_rats(&s.q1),
                    q2: to_rats(&s.q2),
                },
                Component::FatPoint(f) => {
                    ComponentJson::FatPoint { support: to_rats(&f.support), directions: f.directions.iter().map(|v| to_rats(v)).collect() }
                }
            })
            .collect();
        SchemeJson { ambient_dim: a.ambient_dim(), components }
    }
}

pub fn parse_scheme(text: &str) -> Result<Degree4Scheme> {
    let j: SchemeJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    j.to_scheme()
}

pub fn scheme_to_json(a: &Degree4Scheme) -> serde_json::Value {
    serde_json::to_value(SchemeJson::from_scheme(a)).expect("serializable")
}
