//! Homomorphisms between presented groups and the group Hom(G, H)
//! itself, with an explicit generating basis and exact coordinate maps
//! in both directions. The coordinate maps are what the six-term and
//! Bockstein constraint solvers assemble their linear systems from.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{FgAbelianGroup, GroupElement};
use crate::matrix::Matrix;
use crate::normal_form::{hermite_normal_form, kernel_basis};
use crate::{Int, IntMatrix};

/// A homomorphism given by a (codomain generators) x (domain generators)
/// integer matrix of generator images.
#[derive(Clone)]
pub struct GroupHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: IntMatrix,
}

impl GroupHom {
    /// Checks shape and well-definedness: the matrix must map the domain
    /// relation lattice into the codomain relation lattice.
    pub fn new(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        matrix: IntMatrix,
    ) -> Result<Self> {
        if matrix.nrows() != codomain.generator_count()
            || matrix.ncols() != domain.generator_count()
        {
            return Err(Error::Shape(format!(
                "hom matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                codomain.generator_count(),
                domain.generator_count()
            )));
        }
        let rels = domain.relations();
        for j in 0..rels.ncols() {
            let image = matrix.mul_vec(&rels.column(j));
            if !codomain.vector_is_zero(&image) {
                return Err(Error::IllDefinedHom(format!(
                    "relation column {j} does not map into the codomain relations"
                )));
            }
        }
        Ok(Self {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn from_i64(
        domain: FgAbelianGroup,
        codomain: FgAbelianGroup,
        rows: &[&[i64]],
    ) -> Result<Self> {
        let m = if rows.is_empty() {
            Matrix::zeros(codomain.generator_count(), domain.generator_count())
        } else {
            IntMatrix::from_i64_rows(rows)
        };
        Self::new(domain, codomain, m)
    }

    pub fn identity(g: &FgAbelianGroup) -> Self {
        Self {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: Matrix::identity(g.generator_count()),
        }
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: Matrix::zeros(codomain.generator_count(), domain.generator_count()),
        }
    }

    /// Multiplication by a fixed integer as a map G -> G.
    pub fn scaling(g: &FgAbelianGroup, c: impl Into<Int>) -> Self {
        let c: Int = c.into();
        Self {
            domain: g.clone(),
            codomain: g.clone(),
            matrix: Matrix::identity(g.generator_count()).scale(&c),
        }
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// self after other: (self ∘ other)(x) = self(other(x)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(
            other.codomain.generator_count(),
            self.domain.generator_count(),
            "composition through mismatched middle group"
        );
        Self {
            domain: other.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.add(&other.matrix),
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.neg(),
        }
    }

    pub fn scale(&self, c: &Int) -> Self {
        Self {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix: self.matrix.scale(c),
        }
    }

    pub fn is_zero_hom(&self) -> bool {
        (0..self.matrix.ncols()).all(|j| self.codomain.vector_is_zero(&self.matrix.column(j)))
    }

    pub fn evaluate(&self, x: &GroupElement) -> GroupElement {
        self.codomain.element(self.matrix.mul_vec(x.coords()))
    }

    /// Basis (as matrix columns) of { x in Z^g : f(x) = 0 in H }, the
    /// preimage of the codomain relation lattice.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let block = self.matrix.hstack(self.codomain.relations());
        let ker = kernel_basis(&block);
        let g = self.domain.generator_count();
        let rows: Vec<usize> = (0..g).collect();
        let cols: Vec<usize> = (0..ker.ncols()).collect();
        let x_part = ker.submatrix(&rows, &cols);
        hermite_normal_form(&x_part).lattice_basis()
    }

    /// Basis of f(Z^g) + relation lattice of H inside Z^h.
    pub fn image_lattice(&self) -> IntMatrix {
        let block = self.matrix.hstack(self.codomain.relations());
        hermite_normal_form(&block).lattice_basis()
    }

    pub fn kernel(&self) -> (FgAbelianGroup, GroupHom) {
        let basis = self.kernel_lattice();
        let hf = hermite_normal_form(&basis);
        // the basis is already echelon, so express() works directly
        let rels_of_domain = self.domain.relations();
        let mut rel_cols = Vec::new();
        for j in 0..rels_of_domain.ncols() {
            let coeffs = hf
                .express(&rels_of_domain.column(j))
                .expect("domain relations lie in every kernel lattice");
            rel_cols.push(coeffs);
        }
        let rels = Matrix::from_columns(rel_cols, basis.ncols());
        let group = FgAbelianGroup::from_presentation(rels);
        let inclusion = GroupHom {
            domain: group.clone(),
            codomain: self.domain.clone(),
            matrix: basis,
        };
        (group, inclusion)
    }

    pub fn image(&self) -> (FgAbelianGroup, GroupHom) {
        let basis = self.image_lattice();
        let hf = hermite_normal_form(&basis);
        let rels_of_codomain = self.codomain.relations();
        let mut rel_cols = Vec::new();
        for j in 0..rels_of_codomain.ncols() {
            let coeffs = hf
                .express(&rels_of_codomain.column(j))
                .expect("codomain relations lie in the image lattice");
            rel_cols.push(coeffs);
        }
        let rels = Matrix::from_columns(rel_cols, basis.ncols());
        let group = FgAbelianGroup::from_presentation(rels);
        let inclusion = GroupHom {
            domain: group.clone(),
            codomain: self.codomain.clone(),
            matrix: basis,
        };
        (group, inclusion)
    }

    pub fn cokernel(&self) -> (FgAbelianGroup, GroupHom) {
        let rels = self.codomain.relations().hstack(&self.matrix);
        let group = FgAbelianGroup::from_presentation(rels);
        let projection = GroupHom {
            domain: self.codomain.clone(),
            codomain: group.clone(),
            matrix: Matrix::identity(self.codomain.generator_count()),
        };
        (group, projection)
    }

    /// Matrix of this map with both sides rewritten in their canonical
    /// presentations (torsion generators in chain order, then free
    /// ones), entries reduced modulo the target orders.
    pub fn canonical_matrix(&self) -> IntMatrix {
        let full = self
            .codomain
            .canon_transform()
            .mul(&self.matrix)
            .mul(self.domain.canon_inverse());
        let live_rows: Vec<usize> = self
            .codomain
            .moduli()
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_one())
            .map(|(i, _)| i)
            .collect();
        let live_cols: Vec<usize> = self
            .domain
            .moduli()
            .iter()
            .enumerate()
            .filter(|(_, m)| !m.is_one())
            .map(|(i, _)| i)
            .collect();
        let mut m = full.submatrix(&live_rows, &live_cols);
        for (r, &row) in live_rows.iter().enumerate() {
            let modulus = &self.codomain.moduli()[row];
            if !modulus.is_zero() {
                for c in 0..m.ncols() {
                    m[(r, c)] = m[(r, c)].mod_floor(modulus);
                }
            }
        }
        m
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().0.is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

impl PartialEq for GroupHom {
    /// Equality modulo the codomain relations, columnwise.
    fn eq(&self, other: &Self) -> bool {
        self.domain.relations() == other.domain.relations()
            && self.codomain.relations() == other.codomain.relations()
            && (0..self.matrix.ncols()).all(|j| {
                let diff: Vec<Int> = self
                    .matrix
                    .column(j)
                    .iter()
                    .zip(other.matrix.column(j))
                    .map(|(a, b)| a - b)
                    .collect();
                self.codomain.vector_is_zero(&diff)
            })
    }
}

impl Eq for GroupHom {}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {} -> {}", self.matrix, self.domain, self.codomain)
    }
}

/// Equality of sublattices of the same Z^n given by generating columns.
pub fn sublattices_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    assert_eq!(a.nrows(), b.nrows());
    let ha = hermite_normal_form(a);
    let hb = hermite_normal_form(b);
    (0..a.ncols()).all(|j| hb.contains(&a.column(j)))
        && (0..b.ncols()).all(|j| ha.contains(&b.column(j)))
}

/// Exactness at the middle of `incoming: A -> B`, `outgoing: B -> C`:
/// image of incoming equals kernel of outgoing, as sublattices.
pub fn exact_at(incoming: &GroupHom, outgoing: &GroupHom) -> bool {
    assert_eq!(
        incoming.codomain().generator_count(),
        outgoing.domain().generator_count(),
        "maps do not meet at a common middle group"
    );
    sublattices_equal(&incoming.image_lattice(), &outgoing.kernel_lattice())
}

/// Output of `kernel_image_cokernel`, each part with its witnessing map.
pub struct KernelImageCokernel {
    pub kernel: (FgAbelianGroup, GroupHom),
    pub image: (FgAbelianGroup, GroupHom),
    pub cokernel: (FgAbelianGroup, GroupHom),
}

pub fn kernel_image_cokernel(f: &GroupHom) -> KernelImageCokernel {
    KernelImageCokernel {
        kernel: f.kernel(),
        image: f.image(),
        cokernel: f.cokernel(),
    }
}

pub fn direct_sum_with_maps(
    a: &FgAbelianGroup,
    b: &FgAbelianGroup,
) -> (FgAbelianGroup, [GroupHom; 2], [GroupHom; 2]) {
    let sum = a.direct_sum(b);
    let (ga, gb) = (a.generator_count(), b.generator_count());
    let inj_a = Matrix::from_fn(
        ga + gb,
        ga,
        |i, j| {
            if i == j {
                Int::one()
            } else {
                Int::zero()
            }
        },
    );
    let inj_b = Matrix::from_fn(ga + gb, gb, |i, j| {
        if i == j + ga {
            Int::one()
        } else {
            Int::zero()
        }
    });
    let proj_a = inj_a.transpose();
    let proj_b = inj_b.transpose();
    let mk = |dom: &FgAbelianGroup, cod: &FgAbelianGroup, m: IntMatrix| GroupHom {
        domain: dom.clone(),
        codomain: cod.clone(),
        matrix: m,
    };
    (
        sum.clone(),
        [mk(a, &sum, inj_a), mk(b, &sum, inj_b)],
        [mk(&sum, a, proj_a), mk(&sum, b, proj_b)],
    )
}

/// One cyclic piece of Hom(G, H): maps the gi-th canonical generator of
/// G to a multiple of `step` times the hj-th canonical generator of H.
#[derive(Clone, Debug)]
struct HomPiece {
    gi: usize,
    hj: usize,
    /// Order of the piece in the hom group; 0 means infinite.
    order: Int,
    step: Int,
}

/// Hom(G, H) as a group with an explicit basis of homomorphisms.
///
/// The presentation generators are in bijection with `basis`; an element
/// with coordinates (c_k) is the homomorphism sum_k c_k * basis[k].
pub struct HomGroup {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    pub group: FgAbelianGroup,
    pub basis: Vec<GroupHom>,
    pieces: Vec<HomPiece>,
}

pub fn hom_group(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> HomGroup {
    let mut pieces = Vec::new();
    for (gi, a) in domain.moduli().iter().enumerate() {
        if a.is_one() {
            continue;
        }
        for (hj, b) in codomain.moduli().iter().enumerate() {
            if b.is_one() {
                continue;
            }
            let piece = if a.is_zero() {
                // free source: anything in the target cyclic factor
                HomPiece {
                    gi,
                    hj,
                    order: b.clone(),
                    step: Int::one(),
                }
            } else if b.is_zero() {
                // torsion cannot map into a free factor
                continue;
            } else {
                let g = a.gcd(b);
                if g.is_one() {
                    continue;
                }
                HomPiece {
                    gi,
                    hj,
                    order: g.clone(),
                    step: b / &g,
                }
            };
            pieces.push(piece);
        }
    }

    let orders: Vec<Int> = pieces.iter().map(|p| p.order.clone()).collect();
    let torsion_cols: Vec<usize> = (0..pieces.len())
        .filter(|&k| !orders[k].is_zero())
        .collect();
    let rels = Matrix::from_fn(pieces.len(), torsion_cols.len(), |i, j| {
        if i == torsion_cols[j] {
            orders[i].clone()
        } else {
            Int::zero()
        }
    });
    let group = FgAbelianGroup::from_presentation(rels);

    let basis: Vec<GroupHom> = pieces
        .iter()
        .map(|p| {
            let u_g = domain.canon_transform();
            let u_h_inv = codomain.canon_inverse();
            let matrix = Matrix::from_fn(
                codomain.generator_count(),
                domain.generator_count(),
                |r, c| u_h_inv[(r, p.hj)].clone() * p.step.clone() * u_g[(p.gi, c)].clone(),
            );
            GroupHom {
                domain: domain.clone(),
                codomain: codomain.clone(),
                matrix,
            }
        })
        .collect();

    HomGroup {
        domain: domain.clone(),
        codomain: codomain.clone(),
        group,
        basis,
        pieces,
    }
}

impl HomGroup {
    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn generator_count(&self) -> usize {
        self.pieces.len()
    }

    /// Coordinates of a (well-defined) homomorphism matrix over the
    /// basis. Equal homomorphisms get equal coordinates.
    pub fn coords_of_matrix(&self, m: &IntMatrix) -> Vec<Int> {
        let f_can = self
            .codomain
            .canon_transform()
            .mul(m)
            .mul(self.domain.canon_inverse());
        self.pieces
            .iter()
            .map(|p| {
                let b = &self.codomain.moduli()[p.hj];
                let entry = f_can[(p.hj, p.gi)].clone();
                if b.is_zero() {
                    entry
                } else {
                    let reduced = entry.mod_floor(b);
                    let (q, r) = reduced.div_rem(&p.step);
                    debug_assert!(r.is_zero(), "hom entry not aligned to the piece step");
                    q.mod_floor(&p.order)
                }
            })
            .collect()
    }

    pub fn coords_of(&self, f: &GroupHom) -> Vec<Int> {
        self.coords_of_matrix(f.matrix())
    }

    pub fn hom_from_coords(&self, coords: &[Int]) -> GroupHom {
        assert_eq!(coords.len(), self.pieces.len());
        let mut canon: IntMatrix = Matrix::zeros(
            self.codomain.generator_count(),
            self.domain.generator_count(),
        );
        for (p, c) in self.pieces.iter().zip(coords) {
            canon[(p.hj, p.gi)] = canon[(p.hj, p.gi)].clone() + p.step.clone() * c.clone();
        }
        let matrix = self
            .codomain
            .canon_inverse()
            .mul(&canon)
            .mul(self.domain.canon_transform());
        GroupHom {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        }
    }

    /// Number of homomorphisms; `None` when infinite.
    pub fn order(&self) -> Option<Int> {
        self.group.order()
    }
}

/// Direct sum of several hom groups with offset bookkeeping: the
/// presentation generators of `group` are the concatenated pieces of the
/// blocks, so coordinates split and concatenate positionally.
pub struct HomBlockSum {
    pub blocks: Vec<HomGroup>,
    offsets: Vec<usize>,
    pub group: FgAbelianGroup,
}

impl HomBlockSum {
    pub fn new(blocks: Vec<HomGroup>) -> Self {
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut total = 0;
        for b in &blocks {
            offsets.push(total);
            total += b.generator_count();
        }
        offsets.push(total);
        let group = blocks
            .iter()
            .fold(FgAbelianGroup::trivial(), |acc, b| acc.direct_sum(&b.group));
        Self {
            blocks,
            offsets,
            group,
        }
    }

    pub fn total(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn offset(&self, block: usize) -> usize {
        self.offsets[block]
    }

    pub fn coords_of_matrices(&self, matrices: &[IntMatrix]) -> Vec<Int> {
        assert_eq!(matrices.len(), self.blocks.len());
        let mut out = Vec::with_capacity(self.total());
        for (b, m) in self.blocks.iter().zip(matrices) {
            out.extend(b.coords_of_matrix(m));
        }
        out
    }

    pub fn split_coords<'a>(&self, coords: &'a [Int]) -> Vec<&'a [Int]> {
        assert_eq!(coords.len(), self.total());
        (0..self.blocks.len())
            .map(|i| &coords[self.offsets[i]..self.offsets[i + 1]])
            .collect()
    }

    pub fn homs_from_coords(&self, coords: &[Int]) -> Vec<GroupHom> {
        self.split_coords(coords)
            .into_iter()
            .zip(&self.blocks)
            .map(|(c, b)| b.hom_from_coords(c))
            .collect()
    }
}
