//! Acceptance suite: one test per criterion, exact arithmetic, zero
//! tolerance. Run with `cargo test --test acceptance -- --nocapture` to
//! see the per-criterion summary lines.

mod common;

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    abelian_groups_of_order, count_homs_brute, exists_epi_brute, exists_mono_brute,
    group_from_factors, TupleGroup,
};
use sixtool::cases::{cyclic_middle, rank_one_middle};
use sixtool::catalog::{get, BlockKind};
use sixtool::ck::{reference_display, reference_matrix, CkMatrix, HereditarySet};
use sixtool::coeff::{hom_lambda, total_from_free, with_split_coefficients};
use sixtool::grid::solve;
use sixtool::group::FgAbelianGroup;
use sixtool::hom::hom_group;
use sixtool::homalg::{extension_middles, split_test, SplitVerdict};
use sixtool::matrix::Matrix;
use sixtool::normal_form::{
    hermite_normal_form, is_unimodular, smith_normal_form, solve as int_solve,
};
use sixtool::sixcomplex::{ext1_z6, find_complex_isomorphism, hom_z6, SixTermComplex};
use sixtool::{Int, IntMatrix};

fn pass(criterion: u32, description: &str) {
    println!("ACCEPTANCE {criterion}: {description} ... PASS");
}

#[test]
fn criterion_1_six_term_hom_is_cyclic() {
    for n in [2u64, 3, 5] {
        let e0 = get(BlockKind::DimensionDrop, n).unwrap().invariant;
        let se1 = get(BlockKind::SuspendedMappingCone, n).unwrap().invariant;
        let h = hom_z6(e0.integral(), se1.integral());
        assert_eq!(
            h.group.canonical_key(),
            (0, vec![Int::from(n)]),
            "n = {n}: got {}",
            h.group
        );
    }
    pass(1, "hom of six-term invariants is Z_n for n in {2, 3, 5}");
}

#[test]
fn criterion_2_six_term_ext_is_cyclic() {
    for n in [2u64, 3, 5] {
        let e0 = get(BlockKind::DimensionDrop, n).unwrap().invariant;
        let e1 = get(BlockKind::MappingCone, n).unwrap().invariant;
        let e = ext1_z6(e0.integral(), e1.integral());
        assert_eq!(
            e.canonical_key(),
            (0, vec![Int::from(n)]),
            "n = {n}: got {e}"
        );
    }
    pass(
        2,
        "ext over the cyclic quiver ring is Z_n for n in {2, 3, 5}",
    );
}

#[test]
fn criterion_3_cyclic_middle_and_nonsplit_verdict() {
    for n in [2u64, 3, 5] {
        let ni = n as i64;
        let outcome = solve(&cyclic_middle(n)).unwrap();
        let unique = outcome.unique_class().expect("unique middle class");
        assert!(
            unique.group.is_isomorphic(&FgAbelianGroup::cyclic(ni * ni)),
            "n = {n}: middle {}",
            unique.group
        );
        let zn = FgAbelianGroup::cyclic(ni);
        let verdict = split_test(&zn, &zn, &FgAbelianGroup::cyclic(ni * ni));
        assert_eq!(verdict, SplitVerdict::Nonsplit, "n = {n}");
    }
    pass(
        3,
        "grid resolves the cyclic middle to Z_(n^2) and the split test says Nonsplit",
    );
}

#[test]
fn criterion_4_four_by_four_grid() {
    for n in [2u64, 3, 5] {
        let outcome = solve(&rank_one_middle(n)).unwrap();
        let unique = outcome.unique_class().expect("unique middle class");
        assert!(
            unique
                .group
                .is_isomorphic(&FgAbelianGroup::of(1, &[n as i64])),
            "n = {n}: middle {}",
            unique.group
        );
    }
    pass(4, "the 4x4 grid resolves to the unique class Z + Z_n");
}

#[test]
fn criterion_5_hom_lambda_and_no_surjection() {
    for n in [2u64, 3, 5] {
        let ni = n as i64;
        let e1 = get(BlockKind::MappingCone, n).unwrap().invariant;
        let e0 = get(BlockKind::DimensionDrop, n).unwrap().invariant;
        let h = hom_lambda(&e1, &e0, &[n]).unwrap();
        assert!(
            h.group.is_isomorphic(&FgAbelianGroup::of(1, &[ni, ni])),
            "n = {n}: got {}",
            h.group
        );
        let middle = FgAbelianGroup::of(1, &[ni]);
        assert!(!middle.surjects_onto(&h.group), "n = {n}");
    }
    pass(
        5,
        "hom over the Bockstein operations is Z + Z_n + Z_n and no surjection reaches it",
    );
}

#[test]
fn criterion_6_exponent_bound_against_order_n_squared() {
    for n in [2u64, 3, 5] {
        let ni = n as i64;
        let e0 = get(BlockKind::DimensionDrop, n).unwrap().invariant;
        let se1 = get(BlockKind::SuspendedMappingCone, n).unwrap().invariant;
        let h = hom_lambda(&e0, &se1, &[n]).unwrap();
        let exp = h.group.exponent().expect("finite hom group");
        assert!(
            Int::from(n).is_multiple_of(&exp),
            "n = {n}: exponent {exp} does not divide n"
        );
        // while the grid-solved middle has an element of full order n^2
        let outcome = solve(&cyclic_middle(n)).unwrap();
        let middle = &outcome.unique_class().unwrap().group;
        let generator = middle.element_i64(&[1]);
        assert_eq!(generator.order(), Some(Int::from(ni * ni)), "n = {n}");
    }
    pass(
        6,
        "the hom group is killed by n while the middle group has an element of order n^2",
    );
}

#[test]
fn criterion_7_cuntz_krieger_suite() {
    for letter in ['A', 'B', 'C', 'D'] {
        assert!(
            reference_matrix(letter).unwrap().condition_check(),
            "matrix {letter} must satisfy the cycle condition"
        );
    }
    for letter in ['A', 'B'] {
        let m = reference_matrix(letter).unwrap();
        let ideals = m.ideal_lattice();
        assert_eq!(ideals.len(), 1, "matrix {letter}");
        assert_eq!(ideals[0], HereditarySet::new([0, 1, 2]));
        let st = m.six_term(&ideals[0]).unwrap();
        assert!(st.check_exact().is_exact());
        let display = reference_display(letter).unwrap();
        assert!(
            find_complex_isomorphism(&st, &display, 3).is_some(),
            "matrix {letter}: six-term sequence does not match the display"
        );
    }
    pass(
        7,
        "condition, ideal lattice, and six-term displays for the reference matrices",
    );
}

// criterion 8: the property suites guarding the machinery

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    Matrix::from_fn(rows, cols, |_, _| Int::from(rng.gen_range(-bound..=bound)))
}

#[test]
fn criterion_8a_smith_hermite_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..500 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let m = random_matrix(&mut rng, rows, cols, 9);

        let sf = smith_normal_form(&m);
        assert_eq!(sf.u.mul(&m).mul(&sf.v), sf.d);
        assert!(is_unimodular(&sf.u));
        assert!(is_unimodular(&sf.v));
        let diag = sf.diagonal(rows.min(cols));
        for d in &diag {
            assert!(!d.is_negative());
        }
        for w in diag.windows(2) {
            if !w[1].is_zero() {
                assert!(!w[0].is_zero() && w[1].is_multiple_of(&w[0]));
            }
        }

        let hf = hermite_normal_form(&m);
        // mutual membership: original columns in the hermite lattice,
        // hermite basis columns solvable over the original columns
        for j in 0..m.ncols() {
            assert!(hf.contains(&m.column(j)));
        }
        let basis = hf.lattice_basis();
        for j in 0..basis.ncols() {
            assert!(int_solve(&m, &basis.column(j)).is_some());
        }
    }
    pass(
        8,
        "smith/hermite unimodularity and lattice equality on 500 random matrices",
    );
}

#[test]
fn criterion_8b_hom_epi_mono_against_brute_force() {
    let mut groups: Vec<Vec<u64>> = Vec::new();
    for order in 1..=36 {
        groups.extend(abelian_groups_of_order(order));
    }
    assert!(groups.len() > 50);
    let tuples: Vec<TupleGroup> = groups.iter().map(|f| TupleGroup::new(f)).collect();
    let presented: Vec<FgAbelianGroup> = groups.iter().map(|f| group_from_factors(f)).collect();

    for (i, g) in presented.iter().enumerate() {
        for (j, h) in presented.iter().enumerate() {
            let hom = hom_group(g, h);
            assert_eq!(
                hom.group.order().unwrap(),
                Int::from(count_homs_brute(&tuples[i], &tuples[j])),
                "hom count mismatch for {g} -> {h}"
            );
            assert_eq!(
                g.surjects_onto(h),
                exists_epi_brute(&tuples[i], &tuples[j]),
                "epi mismatch for {g} -> {h}"
            );
            assert_eq!(
                g.embeds_into(h),
                exists_mono_brute(&tuples[i], &tuples[j]),
                "mono mismatch for {g} -> {h}"
            );
        }
    }
    // epi both ways is the same as isomorphism for finite groups
    for g in &presented {
        for h in &presented {
            assert_eq!(g.surjects_onto(h) && h.surjects_onto(g), g.is_isomorphic(h));
        }
    }
    pass(
        8,
        "hom counts and epi/mono existence match brute force on all groups of order <= 36",
    );
}

#[test]
fn criterion_8c_extension_middles_against_subgroup_search() {
    // cache per middle type: the set of (subgroup key, quotient key)
    type Profile = BTreeSet<(Vec<u64>, Vec<u64>)>;
    let mut profiles: BTreeMap<Vec<u64>, Profile> = BTreeMap::new();
    let mut profile = |factors: &[u64]| -> Profile {
        if let Some(p) = profiles.get(factors) {
            return p.clone();
        }
        let x = TupleGroup::new(factors);
        let mut set = BTreeSet::new();
        for s in x.subgroups() {
            set.insert((x.subgroup_key(s), x.quotient_key(s)));
        }
        profiles.insert(factors.to_vec(), set.clone());
        set
    };

    for a_order in 1..=64u64 {
        for b_order in 1..=(64 / a_order) {
            for a_factors in abelian_groups_of_order(a_order) {
                for b_factors in abelian_groups_of_order(b_order) {
                    let a = group_from_factors(&a_factors);
                    let b = group_from_factors(&b_factors);
                    let computed: BTreeSet<_> = extension_middles(&a, &b)
                        .unwrap()
                        .into_iter()
                        .map(|(g, class)| {
                            assert!(class.is_exact());
                            g.canonical_key()
                        })
                        .collect();

                    let a_key = TupleGroup::new(&a_factors).iso_key();
                    let b_key = TupleGroup::new(&b_factors).iso_key();
                    let mut brute = BTreeSet::new();
                    for x_factors in abelian_groups_of_order(a_order * b_order) {
                        if profile(&x_factors).contains(&(b_key.clone(), a_key.clone())) {
                            brute.insert(group_from_factors(&x_factors).canonical_key());
                        }
                    }
                    assert_eq!(
                        computed, brute,
                        "middle sets differ for quotient {a}, sub {b}"
                    );
                }
            }
        }
    }
    pass(
        8,
        "extension middles equal the brute-force subgroup search for |A|*|B| <= 64",
    );
}

#[test]
fn criterion_8d_six_term_exactness_on_random_ck_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    let mut produced = 0;
    let mut checked_ideals = 0;
    while produced < 200 {
        let size = rng.gen_range(1..=5);
        // sparse entries in {0, 1, 2}; dense matrices are almost always
        // irreducible and carry no proper hereditary sets at all
        let m = Matrix::from_fn(size, size, |_, _| {
            let roll = rng.gen_range(0..10);
            Int::from(match roll {
                0..=5 => 0i64,
                6..=8 => 1,
                _ => 2,
            })
        });
        let Ok(ck) = CkMatrix::new(m) else {
            continue; // zero row, resample
        };
        produced += 1;

        // the ideal list must agree with the exhaustive subset check
        let ideals = ck.ideal_lattice();
        let mut brute = Vec::new();
        for mask in 1u32..(1 << size) - 1 {
            let set = HereditarySet::new((0..size).filter(|&v| mask >> v & 1 == 1));
            if ck.is_hereditary(&set) {
                brute.push(set);
            }
        }
        brute.sort_by_key(|h| (h.len(), h.vertices().clone()));
        assert_eq!(ideals, brute);

        for h in &ideals {
            let st = ck.six_term(h).expect("exactness gate");
            assert!(st.check_exact().is_exact());
            checked_ideals += 1;
        }
    }
    assert!(checked_ideals > 100, "sample produced too few ideals");
    pass(
        8,
        "six-term exactness holds for every hereditary set of 200 random matrices",
    );
}

#[test]
fn criterion_8e_hom_lambda_additivity_and_torsion_free_collapse() {
    for n in [2u64, 3] {
        let e0 = get(BlockKind::DimensionDrop, n).unwrap().invariant;
        let e1 = get(BlockKind::MappingCone, n).unwrap().invariant;
        let se1 = get(BlockKind::SuspendedMappingCone, n).unwrap().invariant;

        // additivity in both slots
        let sum = e0.direct_sum(&e1);
        let left = hom_lambda(&sum, &se1, &[n]).unwrap().group;
        let split = hom_lambda(&e0, &se1, &[n])
            .unwrap()
            .group
            .direct_sum(&hom_lambda(&e1, &se1, &[n]).unwrap().group);
        assert!(left.is_isomorphic(&split), "first-slot additivity, n = {n}");

        let right = hom_lambda(&se1, &sum, &[n]).unwrap().group;
        let split = hom_lambda(&se1, &e0, &[n])
            .unwrap()
            .group
            .direct_sum(&hom_lambda(&se1, &e1, &[n]).unwrap().group);
        assert!(
            right.is_isomorphic(&split),
            "second-slot additivity, n = {n}"
        );
    }

    // torsion-free collapse: restriction to the integral layer is an
    // isomorphism of hom groups
    let z = FgAbelianGroup::free(1);
    let torsion_free = SixTermComplex::new(
        vec![z.clone(); 6],
        (0..6)
            .map(|p| {
                if p == 1 {
                    IntMatrix::from_i64_rows(&[&[3]])
                } else if p == 4 {
                    IntMatrix::from_i64_rows(&[&[2]])
                } else {
                    Matrix::zeros(1, 1)
                }
            })
            .collect(),
    )
    .unwrap();
    for n in [2u64, 6] {
        let inv = total_from_free(&torsion_free, &[n]).unwrap();
        assert!(inv.validate().is_clean());
        let total = hom_lambda(&inv, &inv, &[n]).unwrap().group;
        let integral = hom_z6(&torsion_free, &torsion_free).group;
        assert!(total.is_isomorphic(&integral), "collapse failed at n = {n}");
        assert!(sixtool::coeff::restriction_is_surjective(&inv, &inv).unwrap());
        assert!(sixtool::coeff::kernel_of_restriction(&inv, &inv)
            .unwrap()
            .is_trivial());
    }
    pass(
        8,
        "hom additivity in both slots and the torsion-free collapse hold",
    );
}

#[test]
fn criterion_8f_suspension_is_an_involution_everywhere() {
    // catalog invariants
    for n in [2u64, 3, 5] {
        for kind in [
            BlockKind::DimensionDrop,
            BlockKind::MappingCone,
            BlockKind::SuspendedMappingCone,
            BlockKind::BlockSum,
        ] {
            let inv = get(kind, n).unwrap().invariant;
            let twice = inv.suspend().suspend();
            for p in 0..6 {
                assert_eq!(
                    twice.integral().group(p).relations(),
                    inv.integral().group(p).relations()
                );
                assert_eq!(
                    twice.integral().map(p).matrix(),
                    inv.integral().map(p).matrix()
                );
            }
        }
    }
    // six-term sequences of the reference matrices
    for letter in ['A', 'B'] {
        let st = reference_matrix(letter)
            .unwrap()
            .six_term(&HereditarySet::new([0, 1, 2]))
            .unwrap();
        let twice = st.suspend().suspend();
        for p in 0..6 {
            assert_eq!(twice.map(p).matrix(), st.map(p).matrix());
        }
    }
    // suspension commutes with direct sums
    let a = get(BlockKind::DimensionDrop, 3).unwrap().invariant;
    let b = get(BlockKind::MappingCone, 3).unwrap().invariant;
    let lhs = a.direct_sum(&b).suspend();
    let rhs = a.suspend().direct_sum(&b.suspend());
    for p in 0..6 {
        assert_eq!(
            lhs.integral().map(p).matrix(),
            rhs.integral().map(p).matrix()
        );
    }
    // and split-coefficient invariants suspend cleanly
    let torsion = SixTermComplex::concentrated(1, FgAbelianGroup::cyclic(4));
    let inv = with_split_coefficients(&torsion, &[2]).unwrap();
    assert!(inv.validate().is_clean());
    assert!(inv.suspend().validate().is_clean());
    pass(
        8,
        "suspension is an involution and commutes with direct sums",
    );
}
