//! Total invariants: an integral six-term complex together with, per
//! coefficient n, a mod-n six-term complex woven in by Bockstein maps
//! rho (reduction, degree 0) and beta (boundary, degree 3), and the
//! solver for homomorphisms commuting with all of it.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::FgAbelianGroup;
use crate::hom::{hom_group, sublattices_equal, GroupHom, HomBlockSum};
use crate::matrix::Matrix;
use crate::normal_form::{hermite_normal_form, solve};
use crate::sixcomplex::{canonical_subgroup_generators, ComplexHom, SixTermComplex};
use crate::{Int, IntMatrix};

/// One coefficient layer: the mod-n complex plus the Bockstein maps.
/// rho\[p\]: G_p -> G^(n)_p, beta\[p\]: G^(n)_p -> G_{p+3}.
#[derive(Clone)]
pub struct BocksteinLayer {
    pub complex: SixTermComplex,
    pub rho: Vec<GroupHom>,
    pub beta: Vec<GroupHom>,
}

#[derive(Clone)]
pub struct TotalSixInvariant {
    integral: SixTermComplex,
    layers: BTreeMap<u64, BocksteinLayer>,
}

impl TotalSixInvariant {
    /// Shape-checks every layer against the integral complex; the
    /// mathematical conditions are the business of `validate`.
    pub fn new(integral: SixTermComplex, layers: BTreeMap<u64, BocksteinLayer>) -> Result<Self> {
        for (n, layer) in &layers {
            if layer.rho.len() != 6 || layer.beta.len() != 6 {
                return Err(Error::Shape(format!(
                    "coefficient {n}: expected 6 rho and 6 beta maps"
                )));
            }
            for p in 0..6 {
                if layer.rho[p].domain().relations() != integral.group(p).relations()
                    || layer.rho[p].codomain().relations() != layer.complex.group(p).relations()
                {
                    return Err(Error::Shape(format!(
                        "coefficient {n}: rho at position {p} has the wrong endpoints"
                    )));
                }
                if layer.beta[p].domain().relations() != layer.complex.group(p).relations()
                    || layer.beta[p].codomain().relations()
                        != integral.group((p + 3) % 6).relations()
                {
                    return Err(Error::Shape(format!(
                        "coefficient {n}: beta at position {p} has the wrong endpoints"
                    )));
                }
            }
        }
        Ok(Self { integral, layers })
    }

    pub fn integral(&self) -> &SixTermComplex {
        &self.integral
    }

    pub fn coefficients(&self) -> Vec<u64> {
        self.layers.keys().copied().collect()
    }

    pub fn layer(&self, n: u64) -> Option<&BocksteinLayer> {
        self.layers.get(&n)
    }

    /// Every violated condition, with its position and coefficient.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        for p in 0..6 {
            let q = (p + 1) % 6;
            if !self
                .integral
                .map(q)
                .compose(self.integral.map(p))
                .is_zero_hom()
            {
                violations.push(Violation::IntegralChain { position: p });
            }
        }
        if self.integral.is_flagged_exact() {
            let report = self.integral.check_exact();
            for (p, ok) in report.nodes.iter().enumerate() {
                if !ok {
                    violations.push(Violation::IntegralExactness { position: p });
                }
            }
        }

        for (&n, layer) in &self.layers {
            for p in 0..6 {
                let q = (p + 1) % 6;
                if !layer
                    .complex
                    .map(q)
                    .compose(layer.complex.map(p))
                    .is_zero_hom()
                {
                    violations.push(Violation::ModChain {
                        coefficient: n,
                        position: p,
                    });
                }
            }
            if layer.complex.is_flagged_exact() {
                let report = layer.complex.check_exact();
                for (p, ok) in report.nodes.iter().enumerate() {
                    if !ok {
                        violations.push(Violation::ModExactness {
                            coefficient: n,
                            position: p,
                        });
                    }
                }
            }
            for p in 0..6 {
                let p3 = (p + 3) % 6;
                let times_n = GroupHom::scaling(self.integral.group(p), n as i64);
                // at G_p: image of the incoming beta equals the kernel of *n
                if !sublattices_equal(&layer.beta[p3].image_lattice(), &times_n.kernel_lattice()) {
                    violations.push(Violation::Bockstein {
                        coefficient: n,
                        position: p,
                        node: BocksteinNode::KernelOfTimesN,
                    });
                }
                // at G_p: image of *n equals the kernel of rho
                if !sublattices_equal(&times_n.image_lattice(), &layer.rho[p].kernel_lattice()) {
                    violations.push(Violation::Bockstein {
                        coefficient: n,
                        position: p,
                        node: BocksteinNode::KernelOfRho,
                    });
                }
                // at G^(n)_p: image of rho equals the kernel of beta
                if !sublattices_equal(
                    &layer.rho[p].image_lattice(),
                    &layer.beta[p].kernel_lattice(),
                ) {
                    violations.push(Violation::Bockstein {
                        coefficient: n,
                        position: p,
                        node: BocksteinNode::KernelOfBeta,
                    });
                }
                // naturality squares, strictly
                let q = (p + 1) % 6;
                if layer.complex.map(p).compose(&layer.rho[p])
                    != layer.rho[q].compose(self.integral.map(p))
                {
                    violations.push(Violation::RhoNaturality {
                        coefficient: n,
                        position: p,
                    });
                }
                if self.integral.map(p3).compose(&layer.beta[p])
                    != layer.beta[q].compose(layer.complex.map(p))
                {
                    violations.push(Violation::BetaNaturality {
                        coefficient: n,
                        position: p,
                    });
                }
            }
        }
        ValidationReport { violations }
    }

    /// Rotation by three positions on every layer; Bockstein families
    /// rotate along.
    pub fn suspend(&self) -> Self {
        let mut layers = BTreeMap::new();
        for (&n, layer) in &self.layers {
            layers.insert(
                n,
                BocksteinLayer {
                    complex: layer.complex.suspend(),
                    rho: (0..6).map(|p| layer.rho[(p + 3) % 6].clone()).collect(),
                    beta: (0..6).map(|p| layer.beta[(p + 3) % 6].clone()).collect(),
                },
            );
        }
        Self {
            integral: self.integral.suspend(),
            layers,
        }
    }

    /// Blockwise direct sum; layers are kept for coefficients present in
    /// both summands.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let integral = self.integral.direct_sum(&other.integral);
        let mut layers = BTreeMap::new();
        for (&n, a) in &self.layers {
            let Some(b) = other.layers.get(&n) else {
                continue;
            };
            let complex = a.complex.direct_sum(&b.complex);
            let rho = (0..6)
                .map(|p| block_diag_hom(&a.rho[p], &b.rho[p], integral.group(p), complex.group(p)))
                .collect();
            let beta = (0..6)
                .map(|p| {
                    block_diag_hom(
                        &a.beta[p],
                        &b.beta[p],
                        complex.group(p),
                        integral.group((p + 3) % 6),
                    )
                })
                .collect();
            layers.insert(n, BocksteinLayer { complex, rho, beta });
        }
        Self { integral, layers }
    }
}

fn block_diag_hom(
    a: &GroupHom,
    b: &GroupHom,
    domain: &FgAbelianGroup,
    codomain: &FgAbelianGroup,
) -> GroupHom {
    let (ra, ca) = (a.matrix().nrows(), a.matrix().ncols());
    let (rb, cb) = (b.matrix().nrows(), b.matrix().ncols());
    let m = Matrix::from_fn(ra + rb, ca + cb, |i, j| {
        if i < ra && j < ca {
            a.matrix()[(i, j)].clone()
        } else if i >= ra && j >= ca {
            b.matrix()[(i - ra, j - ca)].clone()
        } else {
            Int::zero()
        }
    });
    GroupHom::new(domain.clone(), codomain.clone(), m)
        .expect("block diagonal of well-defined maps is well-defined")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BocksteinNode {
    /// At G_p: ker(*n) should be the image of the incoming beta.
    KernelOfTimesN,
    /// At G_p: ker(rho_p) should be the image of *n.
    KernelOfRho,
    /// At G^(n)_p: ker(beta_p) should be the image of rho_p.
    KernelOfBeta,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IntegralChain {
        position: usize,
    },
    IntegralExactness {
        position: usize,
    },
    ModChain {
        coefficient: u64,
        position: usize,
    },
    ModExactness {
        coefficient: u64,
        position: usize,
    },
    Bockstein {
        coefficient: u64,
        position: usize,
        node: BocksteinNode,
    },
    RhoNaturality {
        coefficient: u64,
        position: usize,
    },
    BetaNaturality {
        coefficient: u64,
        position: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IntegralChain { position } => {
                write!(
                    f,
                    "integral chain condition fails after position {position}"
                )
            }
            Violation::IntegralExactness { position } => {
                write!(
                    f,
                    "integral complex is flagged exact but fails at node {position}"
                )
            }
            Violation::ModChain {
                coefficient,
                position,
            } => write!(
                f,
                "mod-{coefficient} chain condition fails after position {position}"
            ),
            Violation::ModExactness {
                coefficient,
                position,
            } => write!(
                f,
                "mod-{coefficient} complex is flagged exact but fails at node {position}"
            ),
            Violation::Bockstein {
                coefficient,
                position,
                node,
            } => write!(
                f,
                "Bockstein exactness fails for n = {coefficient} at position {position} ({node:?})"
            ),
            Violation::RhoNaturality {
                coefficient,
                position,
            } => write!(
                f,
                "rho square does not commute for n = {coefficient} at position {position}"
            ),
            Violation::BetaNaturality {
                coefficient,
                position,
            } => write!(
                f,
                "beta square does not commute for n = {coefficient} at position {position}"
            ),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "clean");
        }
        for v in &self.violations {
            writeln!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Mod-n layer from the universal-coefficient recipe with the split
/// choice: G^(n)_p = (G_p tensor Z_n) + Tor(G_{p+3}, Z_n), rho the
/// reduction into the first summand, beta the torsion inclusion out of
/// the second.
pub fn with_split_coefficients(
    c: &SixTermComplex,
    coefficients: &[u64],
) -> Result<TotalSixInvariant> {
    let mut layers = BTreeMap::new();
    for &n in coefficients {
        let n_int = Int::from(n);
        // per position: the tensor part presentation and the torsion part
        let mut tensor_groups = Vec::new();
        let mut torsion = Vec::new(); // (group, inclusion into G_{p+3})
        for p in 0..6 {
            let g = c.group(p);
            let rels = g
                .relations()
                .hstack(&Matrix::identity(g.generator_count()).scale(&n_int));
            tensor_groups.push(FgAbelianGroup::from_presentation(rels));
            let times_n = GroupHom::scaling(c.group((p + 3) % 6), n_int.clone());
            torsion.push(times_n.kernel());
        }

        let mut groups = Vec::new();
        for p in 0..6 {
            groups.push(tensor_groups[p].direct_sum(&torsion[p].0));
        }

        let mut matrices = Vec::new();
        for p in 0..6 {
            let q = (p + 1) % 6;
            // tensor block: the integral matrix; torsion block: the map
            // induced by f_{p+3} on n-torsion subgroups
            let tensor_m = c.map(p).matrix().clone();
            let f3 = c.map((p + 3) % 6);
            let dom_basis = torsion[p].1.matrix();
            let images = f3.matrix().mul(dom_basis);
            let tor_m = express_in_kernel_basis(torsion[q].1.matrix(), &images);
            let (rt, ct) = (tensor_m.nrows(), tensor_m.ncols());
            let (rr, cc) = (tor_m.nrows(), tor_m.ncols());
            let block = Matrix::from_fn(rt + rr, ct + cc, |i, j| {
                if i < rt && j < ct {
                    tensor_m[(i, j)].clone()
                } else if i >= rt && j >= ct {
                    tor_m[(i - rt, j - ct)].clone()
                } else {
                    Int::zero()
                }
            });
            matrices.push(block);
        }
        let complex = SixTermComplex::new(groups.clone(), matrices)?;

        let mut rho = Vec::new();
        let mut beta = Vec::new();
        for p in 0..6 {
            let g = c.group(p);
            let rho_m =
                Matrix::from_fn(groups[p].generator_count(), g.generator_count(), |i, j| {
                    if i == j {
                        Int::one()
                    } else {
                        Int::zero()
                    }
                });
            rho.push(GroupHom::new(g.clone(), groups[p].clone(), rho_m)?);
            let tensor_gens = tensor_groups[p].generator_count();
            let incl = torsion[p].1.matrix();
            let beta_m = Matrix::from_fn(
                c.group((p + 3) % 6).generator_count(),
                groups[p].generator_count(),
                |i, j| {
                    if j >= tensor_gens {
                        incl[(i, j - tensor_gens)].clone()
                    } else {
                        Int::zero()
                    }
                },
            );
            beta.push(GroupHom::new(
                groups[p].clone(),
                c.group((p + 3) % 6).clone(),
                beta_m,
            )?);
        }
        layers.insert(n, BocksteinLayer { complex, rho, beta });
    }
    TotalSixInvariant::new(c.clone(), layers)
}

fn express_in_kernel_basis(basis: &IntMatrix, images: &IntMatrix) -> IntMatrix {
    if basis.ncols() == 0 {
        return Matrix::zeros(0, images.ncols());
    }
    let hf = hermite_normal_form(basis);
    let mut cols = Vec::new();
    for j in 0..images.ncols() {
        cols.push(
            hf.express(&images.column(j))
                .expect("torsion maps to torsion"),
        );
    }
    Matrix::from_columns(cols, basis.ncols())
}

/// Mod-n layers for a torsion-free complex: tensor reductions with
/// beta = 0. Rejects complexes with torsion; their mod-n data carries
/// real information and must be supplied, not inferred.
pub fn total_from_free(c: &SixTermComplex, coefficients: &[u64]) -> Result<TotalSixInvariant> {
    for p in 0..6 {
        if !c.group(p).is_free() {
            return Err(Error::TorsionInput { position: p });
        }
    }
    with_split_coefficients(c, coefficients)
}

/// A homomorphism of total invariants: an integral complex morphism plus
/// one mod-n complex morphism per coefficient, commuting with all
/// six-term maps and with every rho and beta square.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaHom {
    pub integral: ComplexHom,
    pub layers: BTreeMap<u64, ComplexHom>,
}

impl LambdaHom {
    pub fn identity(inv: &TotalSixInvariant) -> Self {
        Self {
            integral: ComplexHom::identity(inv.integral()),
            layers: inv
                .layers
                .iter()
                .map(|(&n, l)| (n, ComplexHom::identity(&l.complex)))
                .collect(),
        }
    }

    pub fn zero(source: &TotalSixInvariant, target: &TotalSixInvariant, coeffs: &[u64]) -> Self {
        Self {
            integral: ComplexHom::zero(source.integral(), target.integral()),
            layers: coeffs
                .iter()
                .map(|&n| {
                    (
                        n,
                        ComplexHom::zero(
                            &source.layer(n).unwrap().complex,
                            &target.layer(n).unwrap().complex,
                        ),
                    )
                })
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            integral: self.integral.add(&other.integral),
            layers: self
                .layers
                .iter()
                .map(|(&n, c)| (n, c.add(&other.layers[&n])))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        Self {
            integral: self.integral.scale(c),
            layers: self.layers.iter().map(|(&n, h)| (n, h.scale(c))).collect(),
        }
    }

    /// All six-term squares, rho squares and beta squares commute.
    pub fn commutes(&self, source: &TotalSixInvariant, target: &TotalSixInvariant) -> bool {
        if !self.integral.commutes(source.integral(), target.integral()) {
            return false;
        }
        for (&n, psi) in &self.layers {
            let (Some(sl), Some(tl)) = (source.layer(n), target.layer(n)) else {
                return false;
            };
            if !psi.commutes(&sl.complex, &tl.complex) {
                return false;
            }
            for p in 0..6 {
                let p3 = (p + 3) % 6;
                if psi.components[p].compose(&sl.rho[p])
                    != tl.rho[p].compose(&self.integral.components[p])
                {
                    return false;
                }
                if self.integral.components[p3].compose(&sl.beta[p])
                    != tl.beta[p].compose(&psi.components[p])
                {
                    return false;
                }
            }
        }
        true
    }

    /// Forgetful restriction to the integral complex morphism.
    pub fn restriction_to_integral(&self) -> &ComplexHom {
        &self.integral
    }

    /// Componentwise bijectivity across the integral layer and every
    /// coefficient layer.
    pub fn is_isomorphism(&self) -> bool {
        self.integral.is_isomorphism() && self.layers.values().all(ComplexHom::is_isomorphism)
    }
}

pub fn is_isomorphism_lambda(h: &LambdaHom) -> bool {
    h.is_isomorphism()
}

pub fn restriction_to_integral(h: &LambdaHom) -> ComplexHom {
    h.integral.clone()
}

pub fn suspend_total(inv: &TotalSixInvariant) -> TotalSixInvariant {
    inv.suspend()
}

pub fn direct_sum_total(a: &TotalSixInvariant, b: &TotalSixInvariant) -> TotalSixInvariant {
    a.direct_sum(b)
}

/// Hom of total invariants with explicit basis; the kernel of one
/// assembled linear constraint map over all component hom groups.
pub struct HomLambda {
    pub group: FgAbelianGroup,
    pub basis: Vec<LambdaHom>,
    coefficients: Vec<u64>,
    unknowns: HomBlockSum,
    kernel_lattice: IntMatrix,
    generator_coords: Vec<Vec<Int>>,
}

impl HomLambda {
    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    fn ambient_coords(&self, h: &LambdaHom) -> Vec<Int> {
        let mut matrices: Vec<IntMatrix> = h
            .integral
            .components
            .iter()
            .map(|c| c.matrix().clone())
            .collect();
        for &n in &self.coefficients {
            for c in &h.layers[&n].components {
                matrices.push(c.matrix().clone());
            }
        }
        self.unknowns.coords_of_matrices(&matrices)
    }

    pub fn contains(&self, h: &LambdaHom) -> bool {
        let coords = self.ambient_coords(h);
        let full = self.kernel_lattice.hstack(self.unknowns.group.relations());
        hermite_normal_form(&full).contains(&coords)
    }

    pub fn coords_in_basis(&self, h: &LambdaHom) -> Option<Vec<Int>> {
        let target = self.ambient_coords(h);
        let gens = Matrix::from_columns(self.generator_coords.clone(), self.unknowns.total());
        let system = gens.hstack(self.unknowns.group.relations());
        let sol = solve(&system, &target)?;
        Some(sol[..self.generator_coords.len()].to_vec())
    }

    pub fn element(
        &self,
        source: &TotalSixInvariant,
        target: &TotalSixInvariant,
        coords: &[Int],
    ) -> LambdaHom {
        assert_eq!(coords.len(), self.basis.len());
        let mut acc = LambdaHom::zero(source, target, &self.coefficients);
        for (c, b) in coords.iter().zip(&self.basis) {
            acc = acc.add(&b.scale(c));
        }
        acc
    }

    /// How many initial ambient coordinates belong to the integral
    /// blocks.
    fn integral_width(&self) -> usize {
        self.unknowns.offset(6)
    }
}

pub fn hom_lambda(
    source: &TotalSixInvariant,
    target: &TotalSixInvariant,
    coefficients: &[u64],
) -> Result<HomLambda> {
    for &n in coefficients {
        if source.layer(n).is_none() || target.layer(n).is_none() {
            return Err(Error::MissingCoefficient(n));
        }
    }
    let coeffs: Vec<u64> = coefficients.to_vec();
    let c = source.integral();
    let d = target.integral();

    let mut unknown_blocks = Vec::new();
    for p in 0..6 {
        unknown_blocks.push(hom_group(c.group(p), d.group(p)));
    }
    for &n in &coeffs {
        let (sl, tl) = (source.layer(n).unwrap(), target.layer(n).unwrap());
        for p in 0..6 {
            unknown_blocks.push(hom_group(sl.complex.group(p), tl.complex.group(p)));
        }
    }
    let unknowns = HomBlockSum::new(unknown_blocks);

    let mut row_blocks = Vec::new();
    for p in 0..6 {
        row_blocks.push(hom_group(c.group(p), d.group((p + 1) % 6)));
    }
    for &n in &coeffs {
        let (sl, tl) = (source.layer(n).unwrap(), target.layer(n).unwrap());
        for p in 0..6 {
            row_blocks.push(hom_group(
                sl.complex.group(p),
                tl.complex.group((p + 1) % 6),
            ));
        }
    }
    for &n in &coeffs {
        let tl = target.layer(n).unwrap();
        for p in 0..6 {
            row_blocks.push(hom_group(c.group(p), tl.complex.group(p)));
        }
    }
    for &n in &coeffs {
        let sl = source.layer(n).unwrap();
        for p in 0..6 {
            row_blocks.push(hom_group(sl.complex.group(p), d.group((p + 3) % 6)));
        }
    }
    let squares = HomBlockSum::new(row_blocks);

    let mut t: IntMatrix = Matrix::zeros(squares.total(), unknowns.total());
    let add = |t: &mut IntMatrix,
               row_block: usize,
               col_block: usize,
               sign: i64,
               composer: &dyn Fn(&GroupHom) -> GroupHom| {
        let row_off = squares.offset(row_block);
        for (k, basis_hom) in unknowns.blocks[col_block].basis.iter().enumerate() {
            let comp = composer(basis_hom);
            let coords = squares.blocks[row_block].coords_of(&comp);
            let col = unknowns.offset(col_block) + k;
            for (r, val) in coords.into_iter().enumerate() {
                let cur = t[(row_off + r, col)].clone();
                t[(row_off + r, col)] = cur + Int::from(sign) * val;
            }
        }
    };

    // integral six-term squares
    for p in 0..6 {
        let q = (p + 1) % 6;
        let gmap = d.map(p).clone();
        add(&mut t, p, p, -1, &|b| gmap.compose(b));
        let fmap = c.map(p).clone();
        add(&mut t, p, q, 1, &|b| b.compose(&fmap));
    }
    // mod-n six-term squares
    for (ni, &n) in coeffs.iter().enumerate() {
        let (sl, tl) = (source.layer(n).unwrap(), target.layer(n).unwrap());
        for p in 0..6 {
            let q = (p + 1) % 6;
            let row = 6 + ni * 6 + p;
            let col_p = 6 + ni * 6 + p;
            let col_q = 6 + ni * 6 + q;
            let gmap = tl.complex.map(p).clone();
            add(&mut t, row, col_p, -1, &|b| gmap.compose(b));
            let fmap = sl.complex.map(p).clone();
            add(&mut t, row, col_q, 1, &|b| b.compose(&fmap));
        }
    }
    // rho squares: psi^n_p . rho_p - rho'_p . phi_p
    let rho_rows_base = 6 + coeffs.len() * 6;
    for (ni, &n) in coeffs.iter().enumerate() {
        let (sl, tl) = (source.layer(n).unwrap(), target.layer(n).unwrap());
        for p in 0..6 {
            let row = rho_rows_base + ni * 6 + p;
            let col_mod = 6 + ni * 6 + p;
            let rho_src = sl.rho[p].clone();
            add(&mut t, row, col_mod, 1, &|b| b.compose(&rho_src));
            let rho_tgt = tl.rho[p].clone();
            add(&mut t, row, p, -1, &|b| rho_tgt.compose(b));
        }
    }
    // beta squares: phi_{p+3} . beta_p - beta'_p . psi^n_p
    let beta_rows_base = rho_rows_base + coeffs.len() * 6;
    for (ni, &n) in coeffs.iter().enumerate() {
        let (sl, tl) = (source.layer(n).unwrap(), target.layer(n).unwrap());
        for p in 0..6 {
            let p3 = (p + 3) % 6;
            let row = beta_rows_base + ni * 6 + p;
            let col_mod = 6 + ni * 6 + p;
            let beta_src = sl.beta[p].clone();
            add(&mut t, row, p3, 1, &|b| b.compose(&beta_src));
            let beta_tgt = tl.beta[p].clone();
            add(&mut t, row, col_mod, -1, &|b| beta_tgt.compose(b));
        }
    }

    let constraint = GroupHom::new(unknowns.group.clone(), squares.group.clone(), t)
        .expect("constraint map respects the hom-group relations");
    let (kernel_group, inclusion) = constraint.kernel();
    let (group, generator_coords) =
        canonical_subgroup_generators(&kernel_group, inclusion.matrix());

    let basis: Vec<LambdaHom> = generator_coords
        .iter()
        .map(|coords| {
            let homs = unknowns.homs_from_coords(coords);
            let integral = ComplexHom {
                components: homs[..6].to_vec(),
            };
            let mut layers = BTreeMap::new();
            for (ni, &n) in coeffs.iter().enumerate() {
                layers.insert(
                    n,
                    ComplexHom {
                        components: homs[6 + ni * 6..12 + ni * 6].to_vec(),
                    },
                );
            }
            LambdaHom { integral, layers }
        })
        .collect();
    for b in &basis {
        debug_assert!(
            b.commutes(source, target),
            "solver produced a tuple violating a Bockstein square"
        );
    }

    Ok(HomLambda {
        group,
        basis,
        coefficients: coeffs,
        unknowns,
        kernel_lattice: inclusion.matrix().clone(),
        generator_coords,
    })
}

/// The subgroup of Hom_Lambda whose integral restriction vanishes,
/// using every coefficient shared by the two invariants.
pub fn kernel_of_restriction(
    source: &TotalSixInvariant,
    target: &TotalSixInvariant,
) -> Result<FgAbelianGroup> {
    let coeffs: Vec<u64> = source
        .coefficients()
        .into_iter()
        .filter(|n| target.layer(*n).is_some())
        .collect();
    let hl = hom_lambda(source, target, &coeffs)?;
    let (_, restriction) = restriction_map(&hl);
    Ok(restriction.kernel().0)
}

/// Is the restriction Hom_Lambda -> Hom_Z6 onto the full group of
/// integral solutions?
pub fn restriction_is_surjective(
    source: &TotalSixInvariant,
    target: &TotalSixInvariant,
) -> Result<bool> {
    let coeffs: Vec<u64> = source
        .coefficients()
        .into_iter()
        .filter(|n| target.layer(*n).is_some())
        .collect();
    let hl = hom_lambda(source, target, &coeffs)?;
    let integral_solutions = crate::sixcomplex::hom_z6(source.integral(), target.integral());
    let (ambient, restriction) = restriction_map(&hl);
    let image = restriction.image_lattice();
    let solution_lattice = integral_solutions
        .kernel_lattice_in_ambient()
        .clone()
        .hstack(ambient.relations());
    Ok(sublattices_equal(&image, &solution_lattice))
}

/// The restriction of the Hom_Lambda group onto the integral component
/// coordinates, as a map of presented groups.
fn restriction_map(hl: &HomLambda) -> (FgAbelianGroup, GroupHom) {
    let width = hl.integral_width();
    let ambient = {
        // the integral prefix of the unknown blocks, re-presented
        let rels = hl.unknowns.group.relations();
        // keep relation columns that touch only the first `width` gens
        let mut cols = Vec::new();
        for j in 0..rels.ncols() {
            let col = rels.column(j);
            if col.iter().skip(width).all(Zero::is_zero) {
                cols.push(col[..width].to_vec());
            }
        }
        FgAbelianGroup::from_presentation(Matrix::from_columns(cols, width))
    };
    let matrix = Matrix::from_fn(width, hl.generator_coords.len(), |i, j| {
        hl.generator_coords[j][i].clone()
    });
    let hom = GroupHom::new(hl.group.clone(), ambient.clone(), matrix)
        .expect("integral restriction respects the group relations");
    (ambient, hom)
}
