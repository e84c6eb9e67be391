//! The JSON value forms accepted and emitted by the command line:
//! groups as {"rank", "torsion"} or {"presentation"}, homs as
//! {"matrix"}, complexes as {"groups", "maps"}, total invariants with a
//! coefficient table, and diagram specifications for the grid solver.
//!
//! Integer entries are bounded to 128 bits on the wire; the internal
//! arithmetic is unbounded.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::ck::CkMatrix;
use crate::coeff::{BocksteinLayer, TotalSixInvariant};
use crate::error::{Error, Result};
use crate::grid::{DiagramSpec, Edge};
use crate::group::FgAbelianGroup;
use crate::hom::GroupHom;
use crate::matrix::Matrix;
use crate::sixcomplex::SixTermComplex;
use crate::{Int, IntMatrix};

fn to_i128(x: &Int) -> Result<i128> {
    x.to_i128().ok_or(Error::JsonRange)
}

pub fn matrix_to_json(m: &IntMatrix) -> Result<Vec<Vec<i128>>> {
    let mut rows = Vec::with_capacity(m.nrows());
    for i in 0..m.nrows() {
        let mut row = Vec::with_capacity(m.ncols());
        for j in 0..m.ncols() {
            row.push(to_i128(&m[(i, j)])?);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Parse with the dimensions dictated by the surrounding groups; an
/// empty list is the unique matrix with zero rows.
pub fn matrix_from_json(rows: &[Vec<i128>], nrows: usize, ncols: usize) -> Result<IntMatrix> {
    if rows.is_empty() {
        if nrows == 0 {
            return Ok(Matrix::zeros(0, ncols));
        }
        return Err(Error::Shape(format!("matrix has 0 rows, expected {nrows}")));
    }
    if rows.len() != nrows {
        return Err(Error::Shape(format!(
            "matrix has {} rows, expected {nrows}",
            rows.len()
        )));
    }
    let mut m = Matrix::zeros(nrows, ncols);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != ncols {
            return Err(Error::Shape(format!(
                "row {i} has {} entries, expected {ncols}",
                row.len()
            )));
        }
        for (j, &v) in row.iter().enumerate() {
            m[(i, j)] = Int::from(v);
        }
    }
    Ok(m)
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum GroupDto {
    Canonical { rank: usize, torsion: Vec<i128> },
    Presentation { presentation: Vec<Vec<i128>> },
}

// hand-rolled: untagged enums buffer through a representation that
// cannot carry i128 entries
impl<'de> Deserialize<'de> for GroupDto {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            rank: Option<usize>,
            torsion: Option<Vec<i128>>,
            presentation: Option<Vec<Vec<i128>>>,
        }
        let raw = Raw::deserialize(deserializer)?;
        match (raw.presentation, raw.rank) {
            (Some(presentation), None) => Ok(GroupDto::Presentation { presentation }),
            (None, Some(rank)) => Ok(GroupDto::Canonical {
                rank,
                torsion: raw.torsion.unwrap_or_default(),
            }),
            _ => Err(serde::de::Error::custom(
                "expected either {\"rank\", \"torsion\"} or {\"presentation\"}",
            )),
        }
    }
}

pub fn group_to_json(g: &FgAbelianGroup) -> Result<GroupDto> {
    let torsion = g
        .invariant_factors()
        .iter()
        .map(to_i128)
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupDto::Canonical {
        rank: g.rank(),
        torsion,
    })
}

pub fn group_from_json(dto: &GroupDto) -> Result<FgAbelianGroup> {
    match dto {
        GroupDto::Canonical { rank, torsion } => {
            if torsion.iter().any(|&d| d <= 0) {
                return Err(Error::Parse("torsion entries must be positive".into()));
            }
            let t: Vec<Int> = torsion.iter().map(|&d| Int::from(d)).collect();
            Ok(FgAbelianGroup::with_torsion(*rank, &t))
        }
        GroupDto::Presentation { presentation } => {
            let nrows = presentation.len();
            let ncols = presentation.first().map_or(0, Vec::len);
            Ok(FgAbelianGroup::from_presentation(matrix_from_json(
                presentation,
                nrows,
                ncols,
            )?))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomDto {
    pub matrix: Vec<Vec<i128>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexDto {
    pub groups: Vec<GroupDto>,
    pub maps: Vec<Vec<Vec<i128>>>,
}

/// Emission rewrites every vertex in its canonical presentation so
/// groups and map matrices stay consistent on the wire.
pub fn complex_to_json(c: &SixTermComplex) -> Result<ComplexDto> {
    let groups = (0..6)
        .map(|p| group_to_json(c.group(p)))
        .collect::<Result<Vec<_>>>()?;
    let maps = (0..6)
        .map(|p| matrix_to_json(&c.map(p).canonical_matrix()))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComplexDto { groups, maps })
}

pub fn complex_from_json(dto: &ComplexDto) -> Result<SixTermComplex> {
    if dto.groups.len() != 6 || dto.maps.len() != 6 {
        return Err(Error::Shape(
            "a six-term complex needs 6 groups and 6 maps".into(),
        ));
    }
    let groups = dto
        .groups
        .iter()
        .map(group_from_json)
        .collect::<Result<Vec<_>>>()?;
    let mut matrices = Vec::with_capacity(6);
    for p in 0..6 {
        matrices.push(matrix_from_json(
            &dto.maps[p],
            groups[(p + 1) % 6].generator_count(),
            groups[p].generator_count(),
        )?);
    }
    SixTermComplex::new(groups, matrices)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LayerDto {
    pub complex: ComplexDto,
    pub rho: Vec<Vec<Vec<i128>>>,
    pub beta: Vec<Vec<Vec<i128>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TotalDto {
    pub integral: ComplexDto,
    pub coefficients: BTreeMap<String, LayerDto>,
}

pub fn total_to_json(inv: &TotalSixInvariant) -> Result<TotalDto> {
    let integral = complex_to_json(inv.integral())?;
    let mut coefficients = BTreeMap::new();
    for n in inv.coefficients() {
        let layer = inv.layer(n).unwrap();
        let rho = (0..6)
            .map(|p| matrix_to_json(&layer.rho[p].canonical_matrix()))
            .collect::<Result<Vec<_>>>()?;
        let beta = (0..6)
            .map(|p| matrix_to_json(&layer.beta[p].canonical_matrix()))
            .collect::<Result<Vec<_>>>()?;
        coefficients.insert(
            n.to_string(),
            LayerDto {
                complex: complex_to_json(&layer.complex)?,
                rho,
                beta,
            },
        );
    }
    Ok(TotalDto {
        integral,
        coefficients,
    })
}

pub fn total_from_json(dto: &TotalDto) -> Result<TotalSixInvariant> {
    let integral = complex_from_json(&dto.integral)?;
    let mut layers = BTreeMap::new();
    for (key, layer_dto) in &dto.coefficients {
        let n: u64 = key
            .parse()
            .map_err(|_| Error::Parse(format!("coefficient key `{key}` is not an integer")))?;
        if n < 2 {
            return Err(Error::Parse(format!("coefficient {n} must be >= 2")));
        }
        let complex = complex_from_json(&layer_dto.complex)?;
        if layer_dto.rho.len() != 6 || layer_dto.beta.len() != 6 {
            return Err(Error::Shape(format!(
                "coefficient {n}: expected 6 rho and 6 beta matrices"
            )));
        }
        let mut rho = Vec::with_capacity(6);
        let mut beta = Vec::with_capacity(6);
        for p in 0..6 {
            let rho_m = matrix_from_json(
                &layer_dto.rho[p],
                complex.group(p).generator_count(),
                integral.group(p).generator_count(),
            )?;
            rho.push(GroupHom::new(
                integral.group(p).clone(),
                complex.group(p).clone(),
                rho_m,
            )?);
            let beta_m = matrix_from_json(
                &layer_dto.beta[p],
                integral.group((p + 3) % 6).generator_count(),
                complex.group(p).generator_count(),
            )?;
            beta.push(GroupHom::new(
                complex.group(p).clone(),
                integral.group((p + 3) % 6).clone(),
                beta_m,
            )?);
        }
        layers.insert(n, BocksteinLayer { complex, rho, beta });
    }
    TotalSixInvariant::new(integral, layers)
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionClassDto {
    pub quotient: GroupDto,
    pub sub: GroupDto,
    pub cocycle: Vec<Vec<i128>>,
}

pub fn extension_class_to_json(class: &crate::homalg::ExtensionClass) -> Result<ExtensionClassDto> {
    Ok(ExtensionClassDto {
        quotient: group_to_json(&class.quotient)?,
        sub: group_to_json(&class.sub)?,
        cocycle: matrix_to_json(class.cocycle.matrix())?,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeDto {
    pub from: String,
    pub to: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<i128>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GridDto {
    pub nodes: BTreeMap<String, GroupDto>,
    pub unknown: String,
    #[serde(default)]
    pub edges: Vec<EdgeDto>,
    #[serde(default)]
    pub exact_paths: Vec<Vec<String>>,
    #[serde(default)]
    pub quotient_of: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_divides: Option<i128>,
}

pub fn grid_from_json(dto: &GridDto) -> Result<DiagramSpec> {
    let mut nodes: BTreeMap<String, Option<FgAbelianGroup>> = BTreeMap::new();
    for (id, g) in &dto.nodes {
        if *id == dto.unknown {
            return Err(Error::InvalidDiagram(format!(
                "unknown node `{id}` must not carry a group value"
            )));
        }
        nodes.insert(id.clone(), Some(group_from_json(g)?));
    }
    nodes.insert(dto.unknown.clone(), None);

    let mut spec = DiagramSpec::new(nodes);
    for e in &dto.edges {
        let matrix = match &e.matrix {
            None => None,
            Some(rows) => {
                let from = spec
                    .nodes
                    .get(&e.from)
                    .and_then(Option::as_ref)
                    .ok_or_else(|| {
                        Error::InvalidDiagram(format!(
                            "edge from `{}` lacks a known source group",
                            e.from
                        ))
                    })?;
                let to = spec
                    .nodes
                    .get(&e.to)
                    .and_then(Option::as_ref)
                    .ok_or_else(|| {
                        Error::InvalidDiagram(format!(
                            "edge to `{}` lacks a known target group",
                            e.to
                        ))
                    })?;
                Some(matrix_from_json(
                    rows,
                    to.generator_count(),
                    from.generator_count(),
                )?)
            }
        };
        spec.edges.push(Edge {
            from: e.from.clone(),
            to: e.to.clone(),
            matrix,
        });
    }
    spec.exact_paths = dto.exact_paths.clone();
    spec.quotient_of = dto.quotient_of.clone();
    spec.exponent_divides = dto.exponent_divides.map(Int::from);
    Ok(spec)
}

/// A matrix for the Cuntz-Krieger analyzer: JSON rows, or plain text
/// with one whitespace-separated row per line.
pub fn parse_ck_matrix(input: &str) -> Result<CkMatrix> {
    let trimmed = input.trim();
    if trimmed.starts_with('[') {
        let rows: Vec<Vec<i128>> = serde_json::from_str(trimmed)?;
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        return CkMatrix::new(matrix_from_json(&rows, nrows, ncols)?);
    }
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for line in trimmed.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<Int>()
                    .map_err(|_| Error::Parse(format!("bad integer `{tok}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::Parse("empty matrix input".into()));
    }
    let ncols = rows[0].len();
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Parse("ragged rows in matrix input".into()));
    }
    CkMatrix::new(Matrix::from_rows(rows))
}
