//! Random instances of every configuration of the decision tree, for each small
//! `(m, d)`, classified, decomposed and verified.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::decompose::Decomposition;
use crate::decompose::{decompose, sample_point, SampleConfig};
use crate::error::{Error, Result};
use crate::linalg::{rank, Matrix};
use crate::poly::HomogeneousForm;
use crate::scalar::Scalar;
use crate::schemes::{Component, Degree4Scheme, FatPointComponent, JetComponent, SquarePencilComponent};
use crate::stratify::{classify_scheme, rank_table, unrealized_ranks, StratumResult, Verdict};

const GENERATION_ATTEMPTS: usize = 200;

/// `(tag, span dimension)` of every configuration with a generator.
pub const CONFIGURATIONS: &[(&str, usize)] = &[
    ("I-collinear", 1),
    ("I-reduced", 1),
    ("II1.1-residual-off-line", 2),
    ("II1.2.1-curvilinear-4jet", 2),
    ("II1.2.1-non-curvilinear", 2),
    ("II1.2.2-two-jets", 2),
    ("II1.2.2-planar-fat-point", 2),
    ("II1.2.2-point-on-tangent", 2),
    ("II1.2.3-jet-two-points", 2),
    ("II2.1-smooth-conic", 2),
    ("II2.1-three-points", 2),
    ("II2.2-square-pencil", 2),
    ("II-reduced", 2),
    ("III1-curvilinear-4jet", 3),
    ("III1-fat-point", 3),
    ("III2.1-planar-fat-point", 3),
    ("III2.2-skew-jets", 3),
    ("III2.3-jet3-point", 3),
    ("III3-jet-two-points", 3),
    ("III-reduced", 3),
];

fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

fn rv<R: Rng>(rng: &mut R, n: usize) -> Vec<Scalar> {
    (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()
}

fn nonzero<R: Rng>(rng: &mut R) -> Scalar {
    let v = rng.gen_range(1..=3);
    int(if rng.gen_bool(0.5) { v } else { -v })
}

fn lin(a: &Scalar, x: &[Scalar], b: &Scalar, y: &[Scalar]) -> Vec<Scalar> {
    x.iter().zip(y).map(|(u, v)| a * u + b * v).collect()
}

fn jet(p: Vec<Scalar>, jets: Vec<Vec<Scalar>>) -> Component {
    Component::Jet(JetComponent { support: p, jets })
}

fn pt(p: Vec<Scalar>) -> Component {
    jet(p, vec![])
}

/// Vectors of `P^2` with last coordinate zero span the line `L`.
fn on_line<R: Rng>(rng: &mut R) -> Vec<Scalar> {
    let mut v = rv(rng, 3);
    v[2] = int(0);
    v
}

fn off_line<R: Rng>(rng: &mut R) -> Vec<Scalar> {
    let mut v = rv(rng, 3);
    v[2] = nonzero(rng);
    v
}

fn binary_product(a: &[Scalar], b: &[Scalar]) -> [Scalar; 3] {
    [&a[0] * &b[0], &a[0] * &b[1] + &a[1] * &b[0], &a[1] * &b[1]]
}

/// Random data for a configuration, in `P^s`.
fn generate<R: Rng>(tag: &str, rng: &mut R) -> Option<Vec<Component>> {
    let c = match tag {
        "I-collinear" => {
            let shape = *[[4usize, 0, 0], [3, 1, 0], [2, 1, 1], [2, 2, 0]].choose(rng).unwrap();
            shape.iter().filter(|&&k| k > 0).map(|&k| jet(rv(rng, 2), (1..k).map(|_| rv(rng, 2)).collect())).collect()
        }
        "I-reduced" => (0..4).map(|_| pt(rv(rng, 2))).collect(),
        "II1.1-residual-off-line" => {
            if rng.gen_bool(0.5) {
                vec![jet(on_line(rng), vec![on_line(rng), on_line(rng)]), pt(off_line(rng))]
            } else {
                vec![jet(on_line(rng), vec![on_line(rng)]), pt(on_line(rng)), pt(off_line(rng))]
            }
        }
        "II1.2.1-curvilinear-4jet" => vec![jet(on_line(rng), vec![on_line(rng), on_line(rng), off_line(rng)])],
        "II1.2.1-non-curvilinear" | "II2.2-square-pencil" => {
            let (q1, q2) = if tag == "II2.2-square-pencil" {
                let (l1, l2) = (rv(rng, 2), rv(rng, 2));
                let (a, b) = (binary_product(&l1, &l1), binary_product(&l2, &l2));
                // Another basis of the same pencil.
                let m = [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)];
                let comb = |x: i64, y: i64| -> [Scalar; 3] { [0, 1, 2].map(|i| int(x) * &a[i] + int(y) * &b[i]) };
                (comb(m[0], m[1]), comb(m[2], m[3]))
            } else {
                let l = rv(rng, 2);
                (binary_product(&l, &rv(rng, 2)), binary_product(&l, &rv(rng, 2)))
            };
            vec![Component::SquarePencil(SquarePencilComponent { support: rv(rng, 3), directions: [rv(rng, 3), rv(rng, 3)], q1, q2 })]
        }
        "II1.2.2-two-jets" => {
            let (o, p1) = (rv(rng, 3), rv(rng, 3));
            let along_r = lin(&nonzero(rng), &o, &int(rng.gen_range(-3..=3)), &p1);
            vec![jet(o, vec![rv(rng, 3)]), jet(p1, vec![along_r])]
        }
        "II1.2.2-planar-fat-point" => {
            vec![Component::FatPoint(FatPointComponent { support: rv(rng, 3), directions: vec![rv(rng, 3), rv(rng, 3)] }), pt(rv(rng, 3))]
        }
        "II1.2.2-point-on-tangent" => {
            let (p, v1) = (rv(rng, 3), rv(rng, 3));
            let q = lin(&int(rng.gen_range(-3..=3)), &p, &nonzero(rng), &v1);
            vec![jet(p, vec![v1, rv(rng, 3)]), pt(q)]
        }
        "II1.2.3-jet-two-points" => {
            let (o1, o2) = (rv(rng, 3), rv(rng, 3));
            let o = lin(&nonzero(rng), &o1, &nonzero(rng), &o2);
            vec![jet(o, vec![rv(rng, 3)]), pt(o1), pt(o2)]
        }
        "II2.1-smooth-conic" => match rng.gen_range(0..3) {
            0 => vec![jet(rv(rng, 3), vec![rv(rng, 3)]), jet(rv(rng, 3), vec![rv(rng, 3)])],
            1 => vec![jet(rv(rng, 3), vec![rv(rng, 3), rv(rng, 3)]), pt(rv(rng, 3))],
            _ => vec![jet(rv(rng, 3), vec![rv(rng, 3), rv(rng, 3), rv(rng, 3)])],
        },
        "II2.1-three-points" => vec![jet(rv(rng, 3), vec![rv(rng, 3)]), pt(rv(rng, 3)), pt(rv(rng, 3))],
        "II-reduced" => (0..4).map(|_| pt(rv(rng, 3))).collect(),
        "III1-curvilinear-4jet" => vec![jet(rv(rng, 4), vec![rv(rng, 4), rv(rng, 4), rv(rng, 4)])],
        "III1-fat-point" => vec![Component::FatPoint(FatPointComponent { support: rv(rng, 4), directions: vec![rv(rng, 4), rv(rng, 4), rv(rng, 4)] })],
        "III2.1-planar-fat-point" => {
            vec![Component::FatPoint(FatPointComponent { support: rv(rng, 4), directions: vec![rv(rng, 4), rv(rng, 4)] }), pt(rv(rng, 4))]
        }
        "III2.2-skew-jets" => vec![jet(rv(rng, 4), vec![rv(rng, 4)]), jet(rv(rng, 4), vec![rv(rng, 4)])],
        "III2.3-jet3-point" => vec![jet(rv(rng, 4), vec![rv(rng, 4), rv(rng, 4)]), pt(rv(rng, 4))],
        "III3-jet-two-points" => vec![jet(rv(rng, 4), vec![rv(rng, 4)]), pt(rv(rng, 4)), pt(rv(rng, 4))],
        "III-reduced" => (0..4).map(|_| pt(rv(rng, 4))).collect(),
        _ => return None,
    };
    Some(c)
}

/// Random `(m+1) x (s+1)` integer matrix of full column rank.
pub fn random_embedding<R: Rng>(rng: &mut R, m: usize, s: usize) -> Matrix {
    loop {
        let e: Matrix = (0..=m).map(|_| rv(rng, s + 1)).collect();
        if rank(&e) == s + 1 {
            return e;
        }
    }
}

/// A random scheme in `P^m` whose classification carries the given tag.
pub fn random_configuration<R: Rng>(tag: &str, m: usize, d: usize, rng: &mut R) -> Result<(Degree4Scheme, StratumResult)> {
    let s = CONFIGURATIONS.iter().find(|(t, _)| *t == tag).map(|(_, s)| *s).ok_or_else(|| Error::Unsupported(format!("unknown configuration {tag}")))?;
    if s > m {
        return Err(Error::Dimension(format!("{tag} needs m >= {s}")));
    }
    for _ in 0..GENERATION_ATTEMPTS {
        let comps = generate(tag, rng).expect("known tag");
        let Ok(local) = Degree4Scheme::new(s, comps) else { continue };
        if local.span_dim() != s {
            continue;
        }
        let Ok(a) = local.transform(&random_embedding(rng, m, s)) else { continue };
        let Ok(cls) = classify_scheme(&a, d) else { continue };
        if cls.configuration == tag {
            return Ok((a, cls));
        }
    }
    Err(Error::Retries { step: "configuration generator".into(), detail: tag.to_string() })
}

#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub m: usize,
    pub d: usize,
    pub configuration: String,
    pub classification: StratumResult,
    pub scheme: Degree4Scheme,
    pub form: Option<HomogeneousForm>,
    pub witness: Option<Decomposition>,
}

impl AtlasEntry {
    pub fn rank(&self) -> Option<usize> {
        self.witness.as_ref().map(|w| w.total_size())
    }
}

#[derive(Clone, Debug)]
pub struct AtlasCell {
    pub m: usize,
    pub d: usize,
    pub realized: BTreeSet<usize>,
    pub table: BTreeSet<usize>,
    pub unrealized_ranks: Vec<usize>,
    pub unclassified: Vec<String>,
}

impl AtlasCell {
    pub fn within_table(&self) -> bool {
        self.realized.is_subset(&self.table)
    }
}

#[derive(Clone, Debug)]
pub struct Atlas {
    pub entries: Vec<AtlasEntry>,
    pub cells: Vec<AtlasCell>,
}

#[derive(Clone, Debug)]
pub struct AtlasConfig {
    pub m_max: usize,
    pub d_min: usize,
    pub d_max: usize,
    pub per_config: usize,
    pub seed: u64,
}

impl Default for AtlasConfig {
    fn default() -> Self {
        AtlasConfig { m_max: 3, d_min: 3, d_max: 8, per_config: 1, seed: 0 }
    }
}

fn task_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ (index as u64).wrapping_mul(0xD1B5_4A32_D192_ED03)
}

/// Builds one instance: generate, classify, sample, decompose, verify.
pub fn atlas_instance(tag: &str, m: usize, d: usize, seed: u64) -> Result<AtlasEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, cls) = random_configuration(tag, m, d, &mut rng)?;
    let mut entry = AtlasEntry { m, d, configuration: tag.to_string(), classification: cls.clone(), scheme: a.clone(), form: None, witness: None };
    if cls.verdict.recipe().is_some() {
        let sp = sample_point(&a, d, rng.gen(), &SampleConfig::default())?;
        let out = decompose(&a, d, &sp.form, rng.gen()).map_err(|e| instance_error(&a, d, &sp.form, e))?;
        entry.form = Some(sp.form);
        entry.witness = Some(out.decomposition);
    }
    Ok(entry)
}

fn instance_error(a: &Degree4Scheme, d: usize, f: &HomogeneousForm, e: Error) -> Error {
    Error::Verification(format!("{e}; degree {d}; scheme {}; form {}", crate::schemes::scheme_to_json(a), f))
}

pub fn cmd_atlas(cfg: &AtlasConfig) -> Result<Atlas> {
    let mut tasks = Vec::new();
    for m in 1..=cfg.m_max {
        for d in cfg.d_min.max(3)..=cfg.d_max {
            for (tag, s) in CONFIGURATIONS {
                if *s <= m {
                    for _ in 0..cfg.per_config {
                        tasks.push((m, d, *tag));
                    }
                }
            }
        }
    }
    let entries: Vec<AtlasEntry> =
        tasks.par_iter().enumerate().map(|(i, (m, d, tag))| atlas_instance(tag, *m, *d, task_seed(cfg.seed, i))).collect::<Result<_>>()?;
    let mut cells = Vec::new();
    for m in 1..=cfg.m_max {
        for d in cfg.d_min.max(3)..=cfg.d_max {
            let here: Vec<&AtlasEntry> = entries.iter().filter(|e| e.m == m && e.d == d).collect();
            let realized: BTreeSet<usize> = here.iter().filter_map(|e| e.rank()).collect();
            let mut unclassified: Vec<String> =
                here.iter().filter(|e| matches!(e.classification.verdict, Verdict::Unclassified(_))).map(|e| e.configuration.clone()).collect();
            unclassified.dedup();
            cells.push(AtlasCell { m, d, realized, table: rank_table(m, d)?, unrealized_ranks: unrealized_ranks(m, d), unclassified });
        }
    }
    Ok(Atlas { entries, cells })
}
