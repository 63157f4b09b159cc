//! JSON documents written by the command line tool. Rationals are strings.

use serde::{Deserialize, Serialize};

use crate::atlas::{Atlas, AtlasEntry};
use crate::carrier::{Carrier, CarrierJson};
use crate::decompose::{Block, Decomposition, SampledPoint, VerifyReport};
use crate::error::{Error, Result};
use crate::poly::HomogeneousForm;
use crate::scalar::{from_rats, to_rats, Rat};
use crate::schemes::{GateVerdict, SchemeJson};
use crate::stratify::StratumResult;
use crate::sylvester::{explicit_roots_if_rational, BinaryForm, BinaryRankCertificate};

pub const SCHEMA_VERSION: u32 = 1;

pub fn binary_text(g: &BinaryForm) -> String {
    g.to_form().to_string_with('y')
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SylvesterJson {
    pub schema_version: u32,
    pub degree: usize,
    pub border_rank: usize,
    pub rank: usize,
    pub tangent_case: bool,
    pub witness_poly: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational_points: Option<Vec<Vec<Rat>>>,
}

impl SylvesterJson {
    pub fn new(g: &BinaryForm, cert: &BinaryRankCertificate) -> Self {
        let rational_points =
            explicit_roots_if_rational(&cert.witness).filter(|r| r.len() == cert.witness.degree()).map(|r| r.iter().map(|p| to_rats(p.coords())).collect());
        SylvesterJson {
            schema_version: SCHEMA_VERSION,
            degree: g.degree(),
            border_rank: cert.border_rank,
            rank: cert.rank,
            tangent_case: cert.tangent_case,
            witness_poly: binary_text(&cert.witness),
            rational_points,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassifyJson {
    pub schema_version: u32,
    pub degree: usize,
    pub span_dim: usize,
    pub configuration: String,
    pub gate: GateVerdict,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
}

impl ClassifyJson {
    pub fn new(r: &StratumResult, d: usize) -> Self {
        ClassifyJson {
            schema_version: SCHEMA_VERSION,
            degree: d,
            span_dim: r.span_dim,
            configuration: r.configuration.clone(),
            gate: r.gate,
            verdict: r.verdict.name().to_string(),
            rank: r.verdict.rank(),
            stratum: r.verdict.stratum(),
            recipe: r.verdict.recipe().map(|x| x.to_string()),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartJson {
    pub point: Vec<Rat>,
    pub coefficient: Rat,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlockJson {
    pub carrier: CarrierJson,
    /// Binary form whose roots `(s:t)` give the points `carrier(s, t)`.
    pub operator: Vec<Rat>,
    pub binary_form: Vec<Rat>,
    pub size: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub schema_version: u32,
    pub form: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recipe: Option<String>,
    pub parts: Vec<PartJson>,
    pub implicit_blocks: Vec<BlockJson>,
    #[serde(default)]
    pub verified: bool,
}

impl DecompositionJson {
    pub fn new(f: &HomogeneousForm, dec: &Decomposition, recipe: Option<String>, verified: bool) -> Self {
        DecompositionJson {
            schema_version: SCHEMA_VERSION,
            form: f.to_string(),
            rank: dec.total_size(),
            recipe,
            parts: dec.explicit.iter().map(|(p, c)| PartJson { point: to_rats(p), coefficient: Rat(c.clone()) }).collect(),
            implicit_blocks: dec
                .blocks
                .iter()
                .map(|b| BlockJson { carrier: b.carrier.to_json(), operator: to_rats(b.h.coeffs()), binary_form: to_rats(b.g.coeffs()), size: b.h.degree() })
                .collect(),
            verified,
        }
    }

    pub fn to_decomposition(&self) -> Result<Decomposition> {
        let explicit = self.parts.iter().map(|p| (from_rats(&p.point), p.coefficient.0.clone())).collect();
        let blocks = self
            .implicit_blocks
            .iter()
            .map(|b| {
                Ok(Block {
                    carrier: Carrier::from_json(&b.carrier)?,
                    h: BinaryForm::new(from_rats(&b.operator))?,
                    g: BinaryForm::new(from_rats(&b.binary_form))?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Decomposition { explicit, blocks })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("decomposition: {e}")))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyJson {
    pub schema_version: u32,
    pub member: bool,
    pub irredundant: bool,
    pub size: usize,
    pub verified: bool,
}

impl VerifyJson {
    pub fn new(r: &VerifyReport) -> Self {
        VerifyJson { schema_version: SCHEMA_VERSION, member: r.member, irredundant: r.irredundant, size: r.size, verified: r.member && r.irredundant }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleJson {
    pub schema_version: u32,
    pub degree: usize,
    pub form: String,
    pub coefficients: Vec<Rat>,
    pub proper_memberships: Vec<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub catalecticant_rank: Option<usize>,
    pub attempts: usize,
}

impl SampleJson {
    pub fn new(s: &SampledPoint) -> Self {
        SampleJson {
            schema_version: SCHEMA_VERSION,
            degree: s.form.degree(),
            form: s.form.to_string(),
            coefficients: to_rats(&s.coefficients),
            proper_memberships: s.proper_memberships.clone(),
            catalecticant_rank: s.catalecticant_rank,
            attempts: s.attempts,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtlasEntryJson {
    pub m: usize,
    pub d: usize,
    pub configuration: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stratum: Option<String>,
    pub scheme: SchemeJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DecompositionJson>,
}

impl AtlasEntryJson {
    pub fn new(e: &AtlasEntry) -> Self {
        let v = &e.classification.verdict;
        AtlasEntryJson {
            m: e.m,
            d: e.d,
            configuration: e.configuration.clone(),
            verdict: v.name().to_string(),
            rank: e.rank(),
            stratum: v.stratum(),
            scheme: SchemeJson::from_scheme(&e.scheme),
            witness: match (&e.form, &e.witness) {
                (Some(f), Some(w)) => Some(DecompositionJson::new(f, w, v.recipe().map(|r| r.to_string()), true)),
                _ => None,
            },
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtlasCellJson {
    pub m: usize,
    pub d: usize,
    pub realized: Vec<usize>,
    pub table: Vec<usize>,
    pub within_table: bool,
    /// Ranks in the table that no configuration here reaches.
    pub unreachable: Vec<usize>,
    pub unclassified: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtlasJson {
    pub schema_version: u32,
    pub cells: Vec<AtlasCellJson>,
    pub entries: Vec<AtlasEntryJson>,
}

impl AtlasJson {
    pub fn new(a: &Atlas) -> Self {
        AtlasJson {
            schema_version: SCHEMA_VERSION,
            cells: a
                .cells
                .iter()
                .map(|c| AtlasCellJson {
                    m: c.m,
                    d: c.d,
                    realized: c.realized.iter().copied().collect(),
                    table: c.table.iter().copied().collect(),
                    within_table: c.within_table(),
                    unreachable: c.unrealized_ranks.clone(),
                    unclassified: c.unclassified.clone(),
                })
                .collect(),
            entries: a.entries.iter().map(AtlasEntryJson::new).collect(),
        }
    }
}
