//! Classification of points in the span of a degree-4 scheme by symmetric rank.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{LinearSubspace, Matrix};
use crate::poly::HomogeneousForm;
use crate::scalar::Scalar;
use crate::schemes::{conic_pencil, gorenstein_gate, line_profile, Component, Degree4Scheme, GateVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Recipe {
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Rank {
        rank: usize,
        recipe: Recipe,
    },
    InSigma2,
    InSigma3,
    /// Rank 4, the scheme is a set of four points.
    Sigma4Zero,
    Unclassified(String),
}

impl Verdict {
    pub fn rank(&self) -> Option<usize> {
        match self {
            Verdict::Rank { rank, .. } => Some(*rank),
            Verdict::Sigma4Zero => Some(4),
            _ => None,
        }
    }

    pub fn recipe(&self) -> Option<Recipe> {
        match self {
            Verdict::Rank { recipe, .. } => Some(*recipe),
            Verdict::Sigma4Zero => Some(Recipe::R0),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Verdict::Rank { .. } => "rank",
            Verdict::InSigma2 => "in_sigma2",
            Verdict::InSigma3 => "in_sigma3",
            Verdict::Sigma4Zero => "sigma4_zero",
            Verdict::Unclassified(_) => "unclassified",
        }
    }

    pub fn stratum(&self) -> Option<String> {
        self.rank().map(|r| format!("sigma_{{4,{r}}}"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumResult {
    pub verdict: Verdict,
    pub span_dim: usize,
    pub configuration: String,
    pub gate: GateVerdict,
}

/// A scheme rewritten in coordinates of its linear span.
#[derive(Clone, Debug)]
pub struct ReducedScheme {
    pub scheme: Degree4Scheme,
    /// Rows span the linear span in the original coordinates (reduced echelon form).
    pub basis: Matrix,
    pivots: Vec<usize>,
}

impl ReducedScheme {
    pub fn span_dim(&self) -> usize {
        self.basis.len() - 1
    }

    /// Original coordinates of a reduced vector: `x B`.
    pub fn lift_point(&self, x: &[Scalar]) -> Vec<Scalar> {
        let n = self.basis[0].len();
        (0..n).map(|i| x.iter().zip(&self.basis).map(|(c, row)| c * &row[i]).sum()).collect()
    }

    pub fn reduce_point(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.pivots.iter().map(|&p| v[p].clone()).collect()
    }

    /// Form in the original variables: `F(x) = G(B x)`.
    pub fn lift_form(&self, g: &HomogeneousForm) -> Result<HomogeneousForm> {
        g.substitute(&self.basis)
    }

    /// Inverse of `lift_form` on forms coming from the reduced space.
    pub fn reduce_form(&self, f: &HomogeneousForm) -> Result<HomogeneousForm> {
        let n = self.basis[0].len();
        let k = self.basis.len();
        let mut c = vec![vec![Scalar::zero(); k]; n];
        for (j, &p) in self.pivots.iter().enumerate() {
            c[p][j] = Scalar::one();
        }
        let g = f.substitute(&c)?;
        if self.lift_form(&g)? != *f {
            return Err(Error::Dimension("form does not live on the span of the scheme".into()));
        }
        Ok(g)
    }
}

pub fn reduce_ambient(a: &Degree4Scheme) -> Result<ReducedScheme> {
    let n = a.ambient_dim() + 1;
    let span = LinearSubspace::from_vectors(n, &a.all_vectors())?;
    let basis = span.basis().clone();
    let pivots = span.pivots().to_vec();
    let s = basis.len() - 1;
    // v = sum_j v[p_j] B_j for v in the span.
    let m: Matrix = (0..=s)
        .map(|j| {
            let mut row = vec![Scalar::zero(); n];
            row[pivots[j]] = Scalar::one();
            row
        })
        .collect();
    let scheme = a.transform(&m)?;
    Ok(ReducedScheme { scheme, basis, pivots })
}

fn support_count(a: &Degree4Scheme) -> usize {
    a.components().len()
}

fn jet_lengths(a: &Degree4Scheme) -> Vec<usize> {
    let mut v: Vec<usize> = a.components().iter().map(|c| c.degree()).collect();
    v.sort();
    v
}

fn result(verdict: Verdict, s: usize, tag: &str, gate: GateVerdict) -> StratumResult {
    StratumResult { verdict, span_dim: s, configuration: tag.to_string(), gate }
}

/// Classifies a scheme in any ambient space.
pub fn classify_scheme(a: &Degree4Scheme, d: usize) -> Result<StratumResult> {
    classify(&reduce_ambient(a)?.scheme, d)
}

/// Decision tree on an ambient-reduced scheme.
pub fn classify(a: &Degree4Scheme, d: usize) -> Result<StratumResult> {
    if d < 3 {
        return Err(Error::Degree(format!("degree {d} is below 3")));
    }
    let s = a.span_dim();
    if s != a.ambient_dim() {
        return Err(Error::Dimension(format!("scheme spans P^{s} inside P^{}; reduce the ambient space first", a.ambient_dim())));
    }
    let gate = gorenstein_gate(a);
    match gate {
        GateVerdict::RejectFatPoint => return Ok(result(Verdict::InSigma2, s, "III1-fat-point", gate)),
        GateVerdict::RejectPlanarFatPoint => {
            let tag = if s == 3 { "III2.1-planar-fat-point" } else { "II1.2.2-planar-fat-point" };
            return Ok(result(Verdict::InSigma3, s, tag, gate));
        }
        GateVerdict::RejectNotGorenstein => return Ok(result(Verdict::InSigma3, s, "II1.2.1-non-curvilinear", gate)),
        GateVerdict::Accept => {}
    }
    let rank = |r: usize, recipe: Recipe| Verdict::Rank { rank: r, recipe };
    match s {
        1 => {
            let tag = if a.is_reduced() { "I-reduced" } else { "I-collinear" };
            if d < 6 {
                return Ok(result(Verdict::InSigma3, s, tag, gate));
            }
            let v = if a.is_reduced() { Verdict::Sigma4Zero } else { rank(d - 2, Recipe::R1) };
            Ok(result(v, s, tag, gate))
        }
        2 => {
            if a.is_reduced() {
                return Ok(result(Verdict::Sigma4Zero, s, "II-reduced", gate));
            }
            let (tag, v) = planar_case(a, d)?;
            // A cubic on a line with a length-3 subscheme has border rank 2, so
            // every cubic in the span is a limit of sums of three cubes.
            let v = match v {
                Verdict::InSigma3 => v,
                _ if d == 3 && line_profile(a).max_line_degree >= 3 => Verdict::InSigma3,
                _ if d == 3 => rank(4, Recipe::R11),
                _ => v,
            };
            Ok(result(v, s, tag, gate))
        }
        3 => {
            if a.is_reduced() {
                return Ok(result(Verdict::Sigma4Zero, s, "III-reduced", gate));
            }
            let lens = jet_lengths(a);
            let (tag, v) = match (support_count(a), lens.as_slice()) {
                (1, [4]) if a.is_curvilinear() => ("III1-curvilinear-4jet", rank(3 * d - 2, Recipe::R9)),
                (2, [2, 2]) => ("III2.2-skew-jets", rank(2 * d, Recipe::R8)),
                (2, [1, 3]) => ("III2.3-jet3-point", rank(2 * d, Recipe::R10)),
                (3, _) => ("III3-jet-two-points", rank(d + 2, Recipe::R5)),
                _ => ("III-other", Verdict::Unclassified("spatial configuration outside the decision tree".into())),
            };
            Ok(result(v, s, tag, gate))
        }
        _ => Err(Error::Dimension(format!("a degree-4 scheme spans at most P^3, got P^{s}"))),
    }
}

fn planar_case(a: &Degree4Scheme, d: usize) -> Result<(&'static str, Verdict)> {
    let rank = |r: usize, recipe: Recipe| Verdict::Rank { rank: r, recipe };
    let lp = line_profile(a);
    let supports = support_count(a);
    if lp.max_line_degree >= 3 {
        if !lp.residual_on_line {
            return Ok(("II1.1-residual-off-line", rank(d, Recipe::R2)));
        }
        let lens = jet_lengths(a);
        return Ok(match (supports, lens.as_slice()) {
            (1, [4]) if a.is_curvilinear() => ("II1.2.1-curvilinear-4jet", rank(2 * d - 2, Recipe::R3)),
            (1, _) => ("II1.2.1-non-curvilinear", Verdict::InSigma3),
            (2, [2, 2]) => ("II1.2.2-two-jets", rank(2 * d - 2, Recipe::R4)),
            (2, [1, 3]) => ("II1.2.2-point-on-tangent", Verdict::Unclassified("simple point on the tangent line of a non-collinear 3-jet".into())),
            (3, _) => ("II1.2.3-jet-two-points", rank(d + 2, Recipe::R5)),
            _ => ("II1-other", Verdict::Unclassified("line configuration outside the decision tree".into())),
        });
    }
    if supports == 3 {
        return Ok(("II2.1-three-points", rank(d + 2, Recipe::R5)));
    }
    let cp = conic_pencil(a)?;
    if cp.generic_member_smooth {
        return Ok(("II2.1-smooth-conic", rank(2 * d - 2, Recipe::R6)));
    }
    if a.components().iter().any(|c| matches!(c, Component::SquarePencil(_))) {
        return Ok(("II2.2-square-pencil", rank(2 * d - 2, Recipe::R7)));
    }
    Ok(("II2-other", Verdict::Unclassified("every conic through the scheme is singular".into())))
}

/// Ranks of the strata of `sigma_4 \ sigma_3` listed for `(m, d)`, including strata
/// known only from outside the constructive casework.
pub fn rank_table(m: usize, d: usize) -> Result<BTreeSet<usize>> {
    if d <= 2 {
        return Err(Error::Degree(format!("degree {d} is outside the table (d >= 3)")));
    }
    if m == 0 {
        return Err(Error::Dimension("m must be at least 1".into()));
    }
    let v: Vec<usize> = match (m, d) {
        (1, d) if d < 6 => vec![],
        (1, d) => vec![4, d - 2],
        (2, 3) => vec![4],
        (2, 4) => vec![4, 6, 7],
        (2, 5) => vec![4, 5, 7, 8, 9],
        (2, d) => vec![4, d - 2, d, d + 2, 2 * d - 2],
        (_, 3) => vec![4, 5, 6, 7],
        (_, 4) => vec![4, 6, 8, 10],
        (_, 5) => vec![4, 5, 7, 8, 10, 13],
        (_, d) => vec![4, d - 2, d, d + 2, 2 * d - 2, 2 * d, 3 * d - 2],
    };
    Ok(v.into_iter().collect())
}

/// Strata listed in the table that no configuration of the decision tree reaches.
pub fn unrealized_ranks(m: usize, d: usize) -> Vec<usize> {
    match (m, d) {
        (2, 4) => vec![7],
        (2, 5) => vec![9],
        _ => vec![],
    }
}
