//! Finitely generated abelian groups presented as Z^g modulo the column
//! lattice of an integer relation matrix.
//!
//! Every group canonicalizes eagerly: construction runs Smith reduction
//! on the relations once and caches the invariant factors together with
//! the unimodular change of coordinates. All comparisons, orders and
//! membership tests go through the canonical coordinates.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::matrix::Matrix;
use crate::normal_form::{smith_normal_form, SmithForm};
use crate::{Int, IntMatrix};

#[derive(Clone)]
pub struct FgAbelianGroup {
    relations: IntMatrix,
    rank: usize,
    factors: Vec<Int>,
    /// SNF diagonal of the relations, padded to one modulus per
    /// generator: 1 = dead coordinate, d > 1 = torsion Z_d, 0 = free.
    moduli: Vec<Int>,
    to_canon: IntMatrix,
    from_canon: IntMatrix,
}

impl FgAbelianGroup {
    pub fn from_presentation(relations: IntMatrix) -> Self {
        let g = relations.nrows();
        let sf: SmithForm<Int> = smith_normal_form(&relations);
        let moduli = sf.diagonal(g);
        let rank = moduli.iter().filter(|m| m.is_zero()).count();
        let factors = moduli
            .iter()
            .filter(|m| !m.is_zero() && !m.is_one())
            .cloned()
            .collect();
        Self {
            relations,
            rank,
            factors,
            moduli,
            to_canon: sf.u,
            from_canon: sf.u_inv,
        }
    }

    pub fn trivial() -> Self {
        Self::from_presentation(Matrix::zeros(0, 0))
    }

    pub fn free(rank: usize) -> Self {
        Self::from_presentation(Matrix::zeros(rank, 0))
    }

    pub fn cyclic(order: impl Into<Int>) -> Self {
        let d: Int = order.into();
        assert!(d.is_positive(), "cyclic order must be positive");
        Self::from_presentation(Matrix::diagonal(&[d], 1, 1))
    }

    /// Z^rank plus one cyclic factor per listed torsion value. Torsion
    /// generators come first, in the given order; factors are
    /// re-canonicalized, so the list need not be a divisibility chain.
    pub fn of(rank: usize, torsion: &[i64]) -> Self {
        Self::with_torsion(
            rank,
            &torsion.iter().map(|&d| Int::from(d)).collect::<Vec<_>>(),
        )
    }

    pub fn with_torsion(rank: usize, torsion: &[Int]) -> Self {
        assert!(torsion.iter().all(Signed::is_positive));
        let g = torsion.len() + rank;
        let rels = Matrix::diagonal(torsion, g, torsion.len());
        Self::from_presentation(rels)
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator_count(&self) -> usize {
        self.relations.nrows()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[Int] {
        &self.factors
    }

    pub fn canonical_key(&self) -> (usize, Vec<Int>) {
        (self.rank, self.factors.clone())
    }

    pub(crate) fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    pub(crate) fn canon_transform(&self) -> &IntMatrix {
        &self.to_canon
    }

    pub(crate) fn canon_inverse(&self) -> &IntMatrix {
        &self.from_canon
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.factors.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn order(&self) -> Option<Int> {
        if self.rank > 0 {
            return None;
        }
        Some(self.factors.iter().fold(Int::one(), |a, d| a * d))
    }

    /// Least N >= 1 with N * G = 0; `None` when no such N exists.
    pub fn exponent(&self) -> Option<Int> {
        if self.rank > 0 {
            return None;
        }
        Some(self.factors.last().cloned().unwrap_or_else(Int::one))
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.rank == other.rank && self.factors == other.factors
    }

    /// The same group over its canonical presentation: one generator per
    /// invariant factor, in chain order, then the free generators.
    pub fn canonicalized(&self) -> Self {
        Self::with_torsion(self.rank, &self.factors)
    }

    /// Reduce a canonical coordinate vector entrywise by the moduli.
    pub(crate) fn reduce_canonical(&self, coords: &mut [Int]) {
        for (c, m) in coords.iter_mut().zip(&self.moduli) {
            if m.is_one() {
                *c = Int::zero();
            } else if !m.is_zero() {
                *c = c.mod_floor(m);
            }
        }
    }

    /// Coordinates of a presentation-space vector in the canonical
    /// decomposition; the result is the unique reduced representative.
    pub fn canonical_coords(&self, v: &[Int]) -> Vec<Int> {
        let mut c = self.to_canon.mul_vec(v);
        self.reduce_canonical(&mut c);
        c
    }

    /// Membership of v in the relation lattice, i.e. v represents 0.
    pub fn vector_is_zero(&self, v: &[Int]) -> bool {
        self.canonical_coords(v).iter().all(Zero::is_zero)
    }

    pub fn element(&self, coords: Vec<Int>) -> GroupElement {
        assert_eq!(coords.len(), self.generator_count(), "coordinate length");
        GroupElement {
            group: self.clone(),
            coords,
        }
    }

    pub fn element_i64(&self, coords: &[i64]) -> GroupElement {
        self.element(coords.iter().map(|&x| Int::from(x)).collect())
    }

    pub fn zero_element(&self) -> GroupElement {
        self.element(vec![Int::zero(); self.generator_count()])
    }

    /// All elements, in canonical coordinate order. `None` when infinite.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        if self.rank > 0 {
            return None;
        }
        let dims: Vec<u64> = self
            .moduli
            .iter()
            .map(|m| m.to_u64().expect("torsion order fits in u64"))
            .collect();
        let mut out = Vec::new();
        let mut counter = vec![0u64; dims.len()];
        loop {
            let canon: Vec<Int> = counter.iter().map(|&c| Int::from(c)).collect();
            out.push(self.element(self.from_canon.mul_vec(&canon)));
            let mut i = dims.len();
            loop {
                if i == 0 {
                    return Some(out);
                }
                i -= 1;
                counter[i] += 1;
                if counter[i] < dims[i].max(1) {
                    break;
                }
                counter[i] = 0;
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (ga, ka) = (self.relations.nrows(), self.relations.ncols());
        let (gb, kb) = (other.relations.nrows(), other.relations.ncols());
        let rels = Matrix::from_fn(ga + gb, ka + kb, |i, j| {
            if i < ga && j < ka {
                self.relations[(i, j)].clone()
            } else if i >= ga && j >= ka {
                other.relations[(i - ga, j - ka)].clone()
            } else {
                Int::zero()
            }
        });
        Self::from_presentation(rels)
    }

    /// Does a surjective homomorphism self -> target exist? Decided by
    /// free ranks and, for each prime power p^k, the counts of invariant
    /// factors divisible by p^k, with surplus free generators allowed to
    /// cover whole cyclic factors of the target.
    pub fn surjects_onto(&self, target: &Self) -> bool {
        if self.rank < target.rank {
            return false;
        }
        let surplus = self.rank - target.rank;
        compare_prime_power_counts(&target.factors, &self.factors, surplus)
    }

    /// Does an injective homomorphism self -> target exist? Free rank
    /// must fit and torsion must embed prime power by prime power.
    pub fn embeds_into(&self, target: &Self) -> bool {
        if self.rank > target.rank {
            return false;
        }
        compare_prime_power_counts(&self.factors, &target.factors, 0)
    }

    pub fn render(&self) -> String {
        if self.is_trivial() {
            return "0".into();
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.factors {
            parts.push(format!("Z_{d}"));
        }
        parts.join(" \u{2295} ")
    }
}

impl fmt::Debug for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// needs_count(p^k in small) <= have_count(p^k in large) + surplus,
/// for every prime power.
fn compare_prime_power_counts(small: &[Int], large: &[Int], surplus: usize) -> bool {
    let mut primes: Vec<Int> = Vec::new();
    for d in small.iter().chain(large) {
        for (p, _) in factorize(d) {
            if !primes.contains(&p) {
                primes.push(p);
            }
        }
    }
    for p in primes {
        let small_vals: Vec<u32> = small.iter().map(|d| valuation(d, &p)).collect();
        let large_vals: Vec<u32> = large.iter().map(|d| valuation(d, &p)).collect();
        let max_k = small_vals.iter().max().copied().unwrap_or(0);
        for k in 1..=max_k {
            let need = small_vals.iter().filter(|&&v| v >= k).count();
            let have = large_vals.iter().filter(|&&v| v >= k).count();
            if need > have + surplus {
                return false;
            }
        }
    }
    true
}

pub(crate) fn factorize(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if n <= Int::one() {
        return out;
    }
    let mut d = Int::from(2);
    while &d * &d <= n {
        if n.is_multiple_of(&d) {
            let mut e = 0;
            while n.is_multiple_of(&d) {
                n /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += 1;
    }
    if n > Int::one() {
        out.push((n, 1));
    }
    out
}

fn valuation(n: &Int, p: &Int) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    if n.is_zero() {
        return 0;
    }
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// An element of a presented group, given by generator coordinates.
#[derive(Clone, Debug)]
pub struct GroupElement {
    group: FgAbelianGroup,
    coords: Vec<Int>,
}

impl GroupElement {
    pub fn group(&self) -> &FgAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.group.vector_is_zero(&self.coords)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.coords.len(), other.coords.len());
        self.group.element(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, c: &Int) -> Self {
        self.group
            .element(self.coords.iter().map(|x| x * c).collect())
    }

    /// Least N >= 1 with N * x = 0; `None` for infinite order.
    pub fn order(&self) -> Option<Int> {
        let canon = self.group.canonical_coords(&self.coords);
        let mut ord = Int::one();
        for (c, m) in canon.iter().zip(self.group.moduli()) {
            if m.is_zero() {
                if !c.is_zero() {
                    return None;
                }
            } else if !m.is_one() {
                let o = m / c.gcd(m);
                ord = ord.lcm(&o);
            }
        }
        Some(ord)
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.group.relations() == other.group.relations()
            && self.group.vector_is_zero(
                &self
                    .coords
                    .iter()
                    .zip(&other.coords)
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            )
    }
}

impl Eq for GroupElement {}
