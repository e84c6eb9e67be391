//! Independent brute-force oracles for the randomized suites. Nothing
//! here touches the lattice machinery under test: groups are element
//! tables, subgroups are bitmasks, and isomorphism is decided by element
//! order statistics (a complete invariant for finite abelian groups).

#![allow(dead_code)]

use std::collections::BTreeSet;

use sixtool::group::FgAbelianGroup;
use sixtool::Int;

/// A finite abelian group as an element-indexed table: element i has
/// mixed-radix digits over the factor list, addition is digitwise.
/// Order must be at most 64 so subgroups fit in a u64 bitmask.
pub struct TupleGroup {
    pub factors: Vec<u64>,
    pub order: u64,
    add_table: Vec<u16>,
    pub element_orders: Vec<u64>,
}

impl TupleGroup {
    pub fn new(factors: &[u64]) -> Self {
        let order: u64 = factors.iter().product::<u64>().max(1);
        assert!(order <= 64, "oracle groups are capped at order 64");
        let n = order as usize;
        let digits = |mut i: u64| -> Vec<u64> {
            let mut d = Vec::with_capacity(factors.len());
            for &f in factors {
                d.push(i % f);
                i /= f;
            }
            d
        };
        let index = |d: &[u64]| -> u64 {
            let mut i = 0u64;
            let mut mult = 1u64;
            for (k, &f) in factors.iter().enumerate() {
                i += d[k] % f * mult;
                mult *= f;
            }
            i
        };
        let mut add_table = vec![0u16; n * n];
        for a in 0..n {
            let da = digits(a as u64);
            for b in 0..n {
                let db = digits(b as u64);
                let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| x + y).collect();
                add_table[a * n + b] = index(&sum) as u16;
            }
        }
        let mut element_orders = vec![1u64; n];
        for e in 1..n {
            let mut k = 1u64;
            let mut cur = e;
            while cur != 0 {
                cur = add_table[cur * n + e] as usize;
                k += 1;
            }
            element_orders[e] = k;
        }
        Self {
            factors: factors.to_vec(),
            order,
            add_table,
            element_orders,
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add_table[a * self.order as usize + b] as usize
    }

    /// Sorted element orders: equal multisets mean isomorphic groups.
    pub fn iso_key(&self) -> Vec<u64> {
        let mut k = self.element_orders.clone();
        k.sort_unstable();
        k
    }

    /// Subgroup generated by the elements of `mask`, as a bitmask.
    pub fn closure(&self, mask: u64) -> u64 {
        let mut span = 1u64; // identity
        let mut m = mask;
        while m != 0 {
            let x = m.trailing_zeros() as usize;
            m &= m - 1;
            span = self.extend_subgroup(span, x);
        }
        span
    }

    /// `s` must be a subgroup mask; returns the subgroup generated by s
    /// and x, built coset by coset.
    pub fn extend_subgroup(&self, s: u64, x: usize) -> u64 {
        if s >> x & 1 == 1 {
            return s;
        }
        let mut total = s;
        let mut kx = x;
        loop {
            let mut coset = 0u64;
            let mut mm = s;
            while mm != 0 {
                let v = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                coset |= 1 << self.add(v, kx);
            }
            total |= coset;
            kx = self.add(kx, x);
            if s >> kx & 1 == 1 {
                break;
            }
        }
        // the union of cosets of s by multiples of x is itself a group
        total
    }

    /// All subgroups, as bitmasks.
    pub fn subgroups(&self) -> Vec<u64> {
        let mut found = BTreeSet::new();
        let mut queue = vec![1u64];
        found.insert(1u64);
        while let Some(s) = queue.pop() {
            for x in 1..self.order as usize {
                if s >> x & 1 == 1 {
                    continue;
                }
                let bigger = self.closure(s | (1 << x));
                if found.insert(bigger) {
                    queue.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Sorted element orders of the subgroup given by `mask`.
    pub fn subgroup_key(&self, mask: u64) -> Vec<u64> {
        let mut k: Vec<u64> = (0..self.order as usize)
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| self.element_orders[i])
            .collect();
        k.sort_unstable();
        k
    }

    /// Sorted element orders of the quotient by the subgroup `mask`.
    pub fn quotient_key(&self, mask: u64) -> Vec<u64> {
        let sub_size = mask.count_ones() as u64;
        let mut coset_orders = Vec::new();
        for x in 0..self.order as usize {
            // order of x + S in G/S: least k with k*x in S
            let mut k = 1u64;
            let mut cur = x;
            while mask >> cur & 1 == 0 {
                cur = self.add(cur, x);
                k += 1;
            }
            coset_orders.push(k);
        }
        coset_orders.sort_unstable();
        // every coset is hit |S| times
        coset_orders
            .into_iter()
            .step_by(sub_size as usize)
            .collect()
    }
}

/// Factor lists of all abelian groups of the given order (one per
/// isomorphism class), as lists of prime powers.
pub fn abelian_groups_of_order(n: u64) -> Vec<Vec<u64>> {
    fn partitions(n: u32) -> Vec<Vec<u32>> {
        fn go(n: u32, max: u32) -> Vec<Vec<u32>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for k in (1..=n.min(max)).rev() {
                for mut rest in go(n - k, k) {
                    rest.insert(0, k);
                    out.push(rest);
                }
            }
            out
        }
        go(n, n)
    }

    let mut rest = n;
    let mut per_prime: Vec<Vec<Vec<u64>>> = Vec::new();
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0u32;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            per_prime.push(
                partitions(e)
                    .into_iter()
                    .map(|lambda| lambda.into_iter().map(|k| p.pow(k)).collect())
                    .collect(),
            );
        }
        p += 1;
    }
    if rest > 1 {
        per_prime.push(vec![vec![rest]]);
    }

    let mut combos: Vec<Vec<u64>> = vec![vec![]];
    for options in per_prime {
        let mut next = Vec::new();
        for base in &combos {
            for opt in &options {
                let mut c = base.clone();
                c.extend_from_slice(opt);
                next.push(c);
            }
        }
        combos = next;
    }
    combos
}

pub fn group_from_factors(factors: &[u64]) -> FgAbelianGroup {
    let torsion: Vec<Int> = factors.iter().map(|&f| Int::from(f)).collect();
    FgAbelianGroup::with_torsion(0, &torsion)
}

/// Number of homomorphisms G -> H by enumerating candidate images per
/// generator: for the diagonal presentation the image of a generator of
/// order d can be any element killed by d, independently.
pub fn count_homs_brute(g: &TupleGroup, h: &TupleGroup) -> u64 {
    let mut count = 1u64;
    for &d in &g.factors {
        let killed = (0..h.order as usize)
            .filter(|&x| d % h.element_orders[x] == 0)
            .count() as u64;
        count *= killed;
    }
    count
}

/// Depth-first search over generator images for a surjection G -> H,
/// pruned by reachability and by the largest subgroup the remaining
/// generators could still produce.
pub fn exists_epi_brute(g: &TupleGroup, h: &TupleGroup) -> bool {
    let candidates: Vec<Vec<usize>> = g
        .factors
        .iter()
        .map(|&d| {
            (0..h.order as usize)
                .filter(|&x| d % h.element_orders[x] == 0)
                .collect()
        })
        .collect();
    let full = if h.order == 64 {
        u64::MAX
    } else {
        (1u64 << h.order) - 1
    };
    let reach_masks: Vec<u64> = (0..=candidates.len())
        .map(|k| {
            let mut m = 0u64;
            for c in &candidates[k.min(candidates.len())..] {
                for &x in c {
                    m |= 1 << x;
                }
            }
            m
        })
        .collect();
    let remaining_capacity: Vec<u64> = {
        let mut v = vec![1u64];
        for &f in g.factors.iter().rev() {
            v.push(v.last().unwrap().saturating_mul(f));
        }
        v.reverse();
        v
    };

    fn dfs(
        h: &TupleGroup,
        candidates: &[Vec<usize>],
        reach: &[u64],
        capacity: &[u64],
        depth: usize,
        span: u64,
        full: u64,
    ) -> bool {
        if span == full {
            return true;
        }
        if depth == candidates.len() {
            return false;
        }
        if (span.count_ones() as u64).saturating_mul(capacity[depth]) < h.order {
            return false;
        }
        if h.closure(span | reach[depth]) != full {
            return false;
        }
        for &x in &candidates[depth] {
            let next = h.extend_subgroup(span, x);
            if dfs(h, candidates, reach, capacity, depth + 1, next, full) {
                return true;
            }
        }
        false
    }
    dfs(
        h,
        &candidates,
        &reach_masks,
        &remaining_capacity,
        0,
        1,
        full,
    )
}

/// Depth-first search over generator images for an injection G -> H:
/// the partial map on the first k generators must already be injective.
pub fn exists_mono_brute(g: &TupleGroup, h: &TupleGroup) -> bool {
    let candidates: Vec<Vec<usize>> = g
        .factors
        .iter()
        .map(|&d| {
            (0..h.order as usize)
                .filter(|&x| d % h.element_orders[x] == 0)
                .collect()
        })
        .collect();
    let prefix_orders: Vec<u64> = {
        let mut v = vec![1u64];
        for &f in &g.factors {
            v.push(v.last().unwrap() * f);
        }
        v
    };

    fn dfs(
        h: &TupleGroup,
        candidates: &[Vec<usize>],
        prefix_orders: &[u64],
        depth: usize,
        span: u64,
    ) -> bool {
        if span.count_ones() as u64 != prefix_orders[depth] {
            return false;
        }
        if depth == candidates.len() {
            return true;
        }
        for &x in &candidates[depth] {
            let next = h.extend_subgroup(span, x);
            if dfs(h, candidates, prefix_orders, depth + 1, next) {
                return true;
            }
        }
        false
    }
    dfs(h, &candidates, &prefix_orders, 0, 1)
}

/// Canonical keys of all groups X of order |A|*|B| containing a
/// subgroup isomorphic to B with quotient isomorphic to A.
pub fn middle_classes_brute(a_factors: &[u64], b_factors: &[u64]) -> BTreeSet<(usize, Vec<Int>)> {
    let a = TupleGroup::new(a_factors);
    let b = TupleGroup::new(b_factors);
    let total = a.order * b.order;
    let a_key = a.iso_key();
    let b_key = b.iso_key();

    let mut out = BTreeSet::new();
    for x_factors in abelian_groups_of_order(total) {
        let x = TupleGroup::new(&x_factors);
        let found = x.subgroups().into_iter().any(|s| {
            s.count_ones() as u64 == b.order
                && x.subgroup_key(s) == b_key
                && x.quotient_key(s) == a_key
        });
        if found {
            out.insert(group_from_factors(&x_factors).canonical_key());
        }
    }
    out
}

/// All automorphisms of a tuple group, as permutations of element
/// indices, found by filtering generator-image assignments.
fn automorphisms(g: &TupleGroup) -> Vec<Vec<usize>> {
    let n = g.order as usize;
    let candidates: Vec<Vec<usize>> = g
        .factors
        .iter()
        .map(|&d| (0..n).filter(|&x| d % g.element_orders[x] == 0).collect())
        .collect();
    let mut out = Vec::new();
    let mut images = vec![0usize; g.factors.len()];

    fn build_map(g: &TupleGroup, images: &[usize]) -> Vec<usize> {
        // element digits -> sum of digit * image of that generator
        let n = g.order as usize;
        let mut map = vec![0usize; n];
        for (e, slot) in map.iter_mut().enumerate() {
            let mut i = e as u64;
            let mut acc = 0usize;
            for (k, &f) in g.factors.iter().enumerate() {
                let digit = i % f;
                i /= f;
                for _ in 0..digit {
                    acc = g.add(acc, images[k]);
                }
            }
            *slot = acc;
        }
        map
    }

    fn rec(
        g: &TupleGroup,
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        depth: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if depth == candidates.len() {
            let map = build_map(g, images);
            let mut seen = vec![false; map.len()];
            if map.iter().all(|&m| !std::mem::replace(&mut seen[m], true)) {
                out.push(map);
            }
            return;
        }
        for &x in &candidates[depth] {
            images[depth] = x;
            rec(g, candidates, images, depth + 1, out);
        }
    }
    rec(g, &candidates, &mut images, 0, &mut out);
    out
}

/// Number of equivalence classes of extensions 0 -> Z_b -> X -> Z_a -> 0
/// across all middles X: pairs (mono, epi) with matching image and
/// kernel, identified by automorphisms of X fixing both ends.
pub fn baer_class_count_cyclic(a: u64, b: u64) -> u64 {
    let za = TupleGroup::new(&[a]);
    let zb = TupleGroup::new(&[b]);
    let mut classes = 0u64;
    for x_factors in abelian_groups_of_order(a * b) {
        let x = TupleGroup::new(&x_factors);
        let autos = automorphisms(&x);

        // monos: images of the generator of Z_b of exact order b
        let monos: Vec<usize> = (0..x.order as usize)
            .filter(|&m| x.element_orders[m] == b)
            .collect();
        // epis: generator images of every element of X in Z_a, read as
        // maps X -> Z_a; a map is a hom iff each generator lands on an
        // element killed by its order
        let epi_maps: Vec<Vec<usize>> = {
            let candidates: Vec<Vec<usize>> = x
                .factors
                .iter()
                .map(|&d| {
                    (0..za.order as usize)
                        .filter(|&t| d % za.element_orders[t] == 0)
                        .collect()
                })
                .collect();
            let mut maps = Vec::new();
            let mut images = vec![0usize; x.factors.len()];
            fn rec(
                x: &TupleGroup,
                za: &TupleGroup,
                candidates: &[Vec<usize>],
                images: &mut Vec<usize>,
                depth: usize,
                maps: &mut Vec<Vec<usize>>,
            ) {
                if depth == candidates.len() {
                    let n = x.order as usize;
                    let mut map = vec![0usize; n];
                    for (e, slot) in map.iter_mut().enumerate() {
                        let mut i = e as u64;
                        let mut acc = 0usize;
                        for (k, &f) in x.factors.iter().enumerate() {
                            let digit = i % f;
                            i /= f;
                            for _ in 0..digit {
                                acc = za.add(acc, images[k]);
                            }
                        }
                        *slot = acc;
                    }
                    // surjective?
                    let mut hit = vec![false; za.order as usize];
                    for &m in &map {
                        hit[m] = true;
                    }
                    if hit.iter().all(|&h| h) {
                        maps.push(map);
                    }
                    return;
                }
                for &t in &candidates[depth] {
                    images[depth] = t;
                    rec(x, za, candidates, images, depth + 1, maps);
                }
            }
            rec(&x, &za, &candidates, &mut images, 0, &mut maps);
            maps
        };

        // valid pairs: kernel of the epi equals the image of the mono
        let mut pairs = BTreeSet::new();
        for &m in &monos {
            let image = x.closure(1 << m);
            for (ei, e) in epi_maps.iter().enumerate() {
                let kernel: u64 = (0..x.order as usize)
                    .filter(|&v| e[v] == 0)
                    .fold(0, |acc, v| acc | 1 << v);
                if kernel == image {
                    pairs.insert((m, ei));
                }
            }
        }

        // orbits under automorphisms fixing both ends: theta acts by
        // m -> theta(m), e -> e o theta^{-1}
        let mut remaining: BTreeSet<(usize, usize)> = pairs.clone();
        while let Some(&(m, ei)) = remaining.iter().next() {
            classes += 1;
            let e = &epi_maps[ei];
            for theta in &autos {
                let mut inv = vec![0usize; theta.len()];
                for (i, &t) in theta.iter().enumerate() {
                    inv[t] = i;
                }
                let m2 = theta[m];
                let e2: Vec<usize> = (0..theta.len()).map(|v| e[inv[v]]).collect();
                if let Some(e2i) = epi_maps.iter().position(|cand| *cand == e2) {
                    remaining.remove(&(m2, e2i));
                }
            }
        }
        let _ = zb;
    }
    classes
}
