//! The stored building-block invariants, parameterized by n >= 2: the
//! dimension-drop extension, its mapping cone, the suspended cone, and
//! the three-block direct sum used for endomorphism computations.
//!
//! Integral layers are the displayed six-term sequences; the mod-n
//! layers follow the universal-coefficient recipe with the split choice,
//! with every map the one forced by exactness. All stored maps are
//! exactness-checked on construction in tests.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::coeff::{BocksteinLayer, TotalSixInvariant};
use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::hom::GroupHom;
use crate::matrix::Matrix;
use crate::sixcomplex::SixTermComplex;
use crate::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockKind {
    /// The dimension-drop extension: K-groups (0, 0, Z | Z, Z_n, 0).
    DimensionDrop,
    /// Its mapping cone: K-groups (0, 0, 0 | Z, Z, Z_n).
    MappingCone,
    /// The suspended mapping cone: rotation by three.
    SuspendedMappingCone,
    /// Suspended cone + cone + dimension drop, all for the same n.
    BlockSum,
}

impl fmt::Display for BlockKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BlockKind::DimensionDrop => "e0",
            BlockKind::MappingCone => "e1",
            BlockKind::SuspendedMappingCone => "Se1",
            BlockKind::BlockSum => "Se1+e1+e0",
        };
        write!(f, "{s}")
    }
}

impl FromStr for BlockKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "e0" => Ok(BlockKind::DimensionDrop),
            "e1" => Ok(BlockKind::MappingCone),
            "Se1" => Ok(BlockKind::SuspendedMappingCone),
            "Se1+e1+e0" => Ok(BlockKind::BlockSum),
            other => Err(Error::UnknownCatalogEntry(other.to_string())),
        }
    }
}

#[derive(Clone)]
pub struct CatalogEntry {
    pub kind: BlockKind,
    pub n: u64,
    pub invariant: TotalSixInvariant,
}

pub fn get(kind: BlockKind, n: u64) -> Result<CatalogEntry> {
    if n < 2 {
        return Err(Error::Parse(format!(
            "catalog parameter must be >= 2, got {n}"
        )));
    }
    let invariant = match kind {
        BlockKind::DimensionDrop => dimension_drop(n)?,
        BlockKind::MappingCone => mapping_cone(n)?,
        BlockKind::SuspendedMappingCone => mapping_cone(n)?.suspend(),
        BlockKind::BlockSum => {
            let e0 = dimension_drop(n)?;
            let e1 = mapping_cone(n)?;
            e1.suspend().direct_sum(&e1).direct_sum(&e0)
        }
    };
    Ok(CatalogEntry { kind, n, invariant })
}

fn z() -> FgAbelianGroup {
    FgAbelianGroup::free(1)
}

fn zn(n: u64) -> FgAbelianGroup {
    FgAbelianGroup::cyclic(n as i64)
}

fn t() -> FgAbelianGroup {
    FgAbelianGroup::trivial()
}

/// All catalog groups have at most one generator, so every stored map is
/// a scalar; trivial endpoints give empty matrices.
fn scalar_map(dom: &FgAbelianGroup, cod: &FgAbelianGroup, c: i64) -> GroupHom {
    let m = Matrix::from_fn(cod.generator_count(), dom.generator_count(), |_, _| {
        Int::from(c)
    });
    GroupHom::new(dom.clone(), cod.clone(), m).expect("catalog map is well-defined")
}

fn cyclic_complex(groups: Vec<FgAbelianGroup>, coefs: [i64; 6]) -> Result<SixTermComplex> {
    let maps = (0..6)
        .map(|p| scalar_map(&groups[p], &groups[(p + 1) % 6], coefs[p]))
        .collect();
    SixTermComplex::from_maps(maps)
}

fn bockstein_layer(
    integral: &SixTermComplex,
    mod_complex: SixTermComplex,
    rho_coefs: [i64; 6],
    beta_coefs: [i64; 6],
) -> BocksteinLayer {
    let rho = (0..6)
        .map(|p| scalar_map(integral.group(p), mod_complex.group(p), rho_coefs[p]))
        .collect();
    let beta = (0..6)
        .map(|p| {
            scalar_map(
                mod_complex.group(p),
                integral.group((p + 3) % 6),
                beta_coefs[p],
            )
        })
        .collect();
    BocksteinLayer {
        complex: mod_complex,
        rho,
        beta,
    }
}

/// Invariant of the dimension-drop extension: integral layer
/// (0, 0, Z, Z, Z_n, 0) with the exponential *n and the quotient, mod-n
/// layer (0, Z_n, Z_n, Z_n, Z_n, 0) with the maps forced by exactness.
fn dimension_drop(n: u64) -> Result<TotalSixInvariant> {
    let ni = n as i64;
    let integral =
        cyclic_complex(vec![t(), t(), z(), z(), zn(n), t()], [0, 0, ni, 1, 0, 0])?.mark_exact()?;
    let mod_complex = cyclic_complex(
        vec![t(), zn(n), zn(n), zn(n), zn(n), t()],
        [0, 1, 0, 1, 0, 0],
    )?
    .mark_exact()?;
    let layer = bockstein_layer(
        &integral,
        mod_complex,
        [0, 0, 1, 1, 1, 0],
        [0, 1, 0, 0, 0, 0],
    );
    TotalSixInvariant::new(integral, BTreeMap::from([(n, layer)]))
}

/// Invariant of the mapping cone: integral layer (0, 0, 0, Z, Z, Z_n),
/// mod-n layer (0, 0, Z_n, Z_n, Z_n, Z_n).
fn mapping_cone(n: u64) -> Result<TotalSixInvariant> {
    let ni = n as i64;
    let integral =
        cyclic_complex(vec![t(), t(), t(), z(), z(), zn(n)], [0, 0, 0, ni, 1, 0])?.mark_exact()?;
    let mod_complex = cyclic_complex(
        vec![t(), t(), zn(n), zn(n), zn(n), zn(n)],
        [0, 0, 1, 0, 1, 0],
    )?
    .mark_exact()?;
    let layer = bockstein_layer(
        &integral,
        mod_complex,
        [0, 0, 0, 1, 1, 1],
        [0, 0, 1, 0, 0, 0],
    );
    TotalSixInvariant::new(integral, BTreeMap::from([(n, layer)]))
}
