//! Ext^1 over the integers, enumeration of extension middles by Baer
//! class, and the one-sided split test used on UCT-style sequences.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::hom::{exact_at, GroupHom};
use crate::matrix::Matrix;
use crate::{Int, IntMatrix};

/// Ext^1(A, B) = direct sum of B/dB over the invariant factors d of A.
/// The free part of A contributes nothing; the result is always finite.
pub fn ext1(a: &FgAbelianGroup, b: &FgAbelianGroup) -> FgAbelianGroup {
    let mut torsion = Vec::new();
    for d in a.invariant_factors() {
        for m in b.moduli() {
            if m.is_one() {
                continue;
            }
            let c = if m.is_zero() { d.clone() } else { d.gcd(m) };
            if !c.is_one() {
                torsion.push(c);
            }
        }
    }
    FgAbelianGroup::with_torsion(0, &torsion)
}

/// Pure extensions between finitely generated groups vanish, so the
/// corresponding obstruction group is always zero here. The function
/// exists so that reasoning which consumes this fact has a named source.
pub fn pext_fg_is_zero(_a: &FgAbelianGroup, _b: &FgAbelianGroup) -> bool {
    true
}

/// An extension 0 -> B -> X -> A -> 0 built from a cocycle on the
/// canonical relations of A. The middle is a constructed presentation;
/// cocycle class zero yields X = A + B.
#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub quotient: FgAbelianGroup,
    pub sub: FgAbelianGroup,
    /// Values of the cocycle on the canonical relations of the quotient:
    /// a map from the free group on those relations into the sub.
    pub cocycle: GroupHom,
    pub middle: FgAbelianGroup,
    pub inclusion: GroupHom,
    pub projection: GroupHom,
}

impl ExtensionClass {
    /// Build from cocycle values b_j (presentation coordinates of the
    /// sub), one per invariant factor of the canonicalized quotient.
    pub fn from_cocycle(a: &FgAbelianGroup, b: &FgAbelianGroup, values: &IntMatrix) -> Self {
        let a_can = FgAbelianGroup::with_torsion(a.rank(), a.invariant_factors());
        let t = a_can.invariant_factors().len();
        assert_eq!(values.nrows(), b.generator_count());
        assert_eq!(values.ncols(), t);

        let gb = b.generator_count();
        let ga = a_can.generator_count();
        let kb = b.relations().ncols();
        let rels = Matrix::from_fn(gb + ga, kb + t, |i, j| {
            if i < gb && j < kb {
                b.relations()[(i, j)].clone()
            } else if i < gb {
                -values[(i, j - kb)].clone()
            } else if j >= kb {
                a_can.relations()[(i - gb, j - kb)].clone()
            } else {
                Int::zero()
            }
        });
        let middle = FgAbelianGroup::from_presentation(rels);

        let incl_matrix =
            Matrix::from_fn(
                gb + ga,
                gb,
                |i, j| {
                    if i == j {
                        Int::one()
                    } else {
                        Int::zero()
                    }
                },
            );
        let proj_matrix = Matrix::from_fn(ga, gb + ga, |i, j| {
            if j == i + gb {
                Int::one()
            } else {
                Int::zero()
            }
        });
        let inclusion = GroupHom::new(b.clone(), middle.clone(), incl_matrix)
            .expect("sub relations embed into the middle presentation");
        let projection = GroupHom::new(middle.clone(), a_can.clone(), proj_matrix)
            .expect("middle relations project onto the quotient relations");
        let cocycle =
            GroupHom::new(FgAbelianGroup::free(t), b.clone(), values.clone()).expect("free domain");

        Self {
            quotient: a_can,
            sub: b.clone(),
            cocycle,
            middle,
            inclusion,
            projection,
        }
    }

    /// Machine check of the three-term exactness: inclusion injective,
    /// projection surjective, image of the inclusion equal to the kernel
    /// of the projection.
    pub fn is_exact(&self) -> bool {
        self.inclusion.is_injective()
            && self.projection.is_surjective()
            && exact_at(&self.inclusion, &self.projection)
    }
}

pub const DEFAULT_ENUMERATION_BOUND: u64 = 10_000;

/// One representative extension per middle isomorphism class, sorted by
/// canonical form of the middle. Every Baer class is visited.
pub fn extension_middles(
    a: &FgAbelianGroup,
    b: &FgAbelianGroup,
) -> Result<Vec<(FgAbelianGroup, ExtensionClass)>> {
    extension_middles_bounded(a, b, DEFAULT_ENUMERATION_BOUND)
}

pub fn extension_middles_bounded(
    a: &FgAbelianGroup,
    b: &FgAbelianGroup,
    bound: u64,
) -> Result<Vec<(FgAbelianGroup, ExtensionClass)>> {
    let ext = ext1(a, b);
    let count = ext.order().expect("ext1 of f.g. groups is finite");
    if count > Int::from(bound) {
        return Err(Error::EnumerationBound { count, bound });
    }

    // Per invariant factor d_j of A, the cocycle value ranges over
    // B/d_jB; enumerate via canonical coordinates of B.
    let d_factors: Vec<Int> = a.invariant_factors().to_vec();
    let b_moduli: Vec<Int> = b.moduli().to_vec();
    let mut ranges: Vec<u64> = Vec::new();
    for d in &d_factors {
        for m in &b_moduli {
            let r = if m.is_one() {
                Int::one()
            } else if m.is_zero() {
                d.clone()
            } else {
                d.gcd(m)
            };
            ranges.push(r.to_u64().expect("enumeration range fits in u64"));
        }
    }

    let gb = b.generator_count();
    let t = d_factors.len();
    let mut by_class: BTreeMap<(usize, Vec<Int>), ExtensionClass> = BTreeMap::new();
    let mut counter = vec![0u64; ranges.len()];
    loop {
        // counter -> cocycle matrix in presentation coordinates of B
        let mut values: IntMatrix = Matrix::zeros(gb, t);
        for j in 0..t {
            let canon: Vec<Int> = (0..gb).map(|l| Int::from(counter[j * gb + l])).collect();
            values.set_column(j, &b.canon_inverse().mul_vec(&canon));
        }
        let class = ExtensionClass::from_cocycle(a, b, &values);
        by_class
            .entry(class.middle.canonical_key())
            .or_insert(class);

        let mut i = ranges.len();
        loop {
            if i == 0 {
                let out = by_class
                    .into_iter()
                    .map(|(key, class)| (FgAbelianGroup::with_torsion(key.0, &key.1), class))
                    .collect();
                return Ok(out);
            }
            i -= 1;
            counter[i] += 1;
            if counter[i] < ranges[i].max(1) {
                break;
            }
            counter[i] = 0;
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitVerdict {
    /// The middle is not isomorphic to the direct sum of the ends, so no
    /// short exact sequence with these groups can split.
    Nonsplit,
    /// The middle matches the direct sum; splitness of any particular
    /// sequence is not decided by group data alone.
    SplitPossible,
}

impl std::fmt::Display for SplitVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SplitVerdict::Nonsplit => write!(f, "Nonsplit"),
            SplitVerdict::SplitPossible => write!(f, "SplitPossible"),
        }
    }
}

/// Certified obstruction: a split sequence forces middle = ext + hom.
pub fn split_test(
    ext: &FgAbelianGroup,
    hom: &FgAbelianGroup,
    middle: &FgAbelianGroup,
) -> SplitVerdict {
    if middle.is_isomorphic(&ext.direct_sum(hom)) {
        SplitVerdict::SplitPossible
    } else {
        SplitVerdict::Nonsplit
    }
}
