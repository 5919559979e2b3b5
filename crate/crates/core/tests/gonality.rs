mod common;

use chipfire::divisor::{count_effective, enumerate_effective};
use chipfire::families::Family;
use chipfire::gonality::*;
use chipfire::{Divisor, Multigraph};
use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn computed_sequence(g: &Multigraph) -> Vec<usize> {
    let upto = g.genus() as usize + 2;
    (1..=upto).map(|r| gonality(g, r, &SearchOptions::default()).unwrap().value).collect()
}

#[test]
fn riemann_roch_on_random_divisors() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, g) in fixtures() {
        let n = g.num_vertices();
        for _ in 0..40 {
            let d = Divisor::new((0..n).map(|_| rng.gen_range(-2..=3)).collect());
            assert_eq!(rr_residual(&g, &d).unwrap(), 0, "{name} {d:?}");
        }
    }
}

#[test]
fn sequences_obey_the_general_identities() {
    for (name, g) in fixtures() {
        let genus = g.genus() as usize;
        let terms = computed_sequence(&g);
        assert!(terms.windows(2).all(|w| w[0] < w[1]), "{name}: {terms:?}");
        for a in 1..terms.len() {
            for b in 1..=terms.len() - a {
                assert!(terms[a + b - 1] <= terms[a - 1] + terms[b - 1], "{name}: {terms:?} at {a}+{b}");
            }
        }
        if genus >= 2 {
            assert_eq!(terms[genus - 2], 2 * genus - 2, "{name}");
        }
        for k in genus.max(1)..=terms.len() {
            assert_eq!(terms[k - 1], genus + k, "{name}");
        }
        let eta = g.edge_connectivity().unwrap() as usize;
        assert!(terms[0] >= eta.min(g.num_vertices()), "{name}");
        assert_eq!(genus_from_sequence(&terms).unwrap(), genus, "{name}");
        assert_eq!(gonality_sequence(&g, terms.len()).unwrap().terms, terms, "{name}");
    }
}

#[test]
fn table_rows_match_low_genus_fixtures() {
    for (name, g) in fixtures() {
        let genus = g.genus() as usize;
        if genus > 5 {
            continue;
        }
        let terms = computed_sequence(&g);
        let row = expected_sequence(genus, terms[0], None, terms.len()).unwrap();
        assert_eq!(row.terms, terms, "{name}");
        assert!(!row.conditional);
    }
}

#[test]
fn rank_drops_by_at_most_the_removed_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (name, g) in fixtures() {
        let n = g.num_vertices();
        for _ in 0..25 {
            let d = Divisor::new((0..n).map(|_| rng.gen_range(-1..=3)).collect());
            let e = Divisor::new((0..n).map(|_| rng.gen_range(0..=1)).collect());
            let before = rank(&g, &d).unwrap();
            let after = rank(&g, &(&d - &e)).unwrap();
            assert!(after >= (before - e.degree()).max(-1), "{name}: r({d:?}) = {before}, r(D - {e:?}) = {after}");
            assert!(after <= before, "{name}");
        }
    }
}

#[test]
fn rank_matches_definition_on_small_graphs() {
    // rank(D) >= r iff D - E is winnable for every effective E of degree r.
    let brute = |g: &Multigraph, d: &Divisor| -> i64 {
        let n = g.num_vertices();
        let mut r = -1;
        for k in 0..=d.degree().max(0) as usize {
            let ok = enumerate_effective(n, k).all(|e| {
                let bound = g.diameter().unwrap() as i64 * (d - &e).positive_part().degree();
                brute_force_effective(g, &(d - &e), bound).is_some()
            });
            if !ok {
                break;
            }
            r = k as i64;
        }
        r
    };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [
        chipfire::families::cycle(3).unwrap(),
        chipfire::families::banana(3).unwrap(),
        chipfire::families::path(3).unwrap(),
        Multigraph::from_edges(3, &[(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap(),
    ] {
        for _ in 0..30 {
            let d = Divisor::new((0..g.num_vertices()).map(|_| rng.gen_range(-1..=2)).collect());
            assert_eq!(rank(&g, &d).unwrap(), brute(&g, &d), "{g:?} {d:?}");
        }
    }
}

/// Covered family members with at most 7 vertices and multiplicities at most 7.
fn closed_form_families() -> Vec<Family> {
    let mut out = Vec::new();
    for n in 2..=7 {
        out.push(Family::Path(n));
    }
    for n in 3..=7 {
        out.push(Family::Cycle(n));
    }
    for e in 1..=7 {
        out.push(Family::Banana(e));
    }
    for n in 2..=7 {
        for e in 1..=7 {
            out.push(Family::GenBanana(n, e));
        }
    }
    for a in 2..=7 {
        for b in a..=7 {
            out.push(Family::DescBanana(a, b));
        }
    }
    for m in 1..=6 {
        for n in m..=7 - m {
            out.push(Family::CompleteBipartite(m, n));
        }
    }
    out
}

/// Cases whose candidate count times opponent count exceeds this are skipped.
const CLOSED_FORM_BUDGET: u128 = 3_000_000;

#[test]
fn closed_forms_agree_with_search() {
    let mut checked = 0;
    for family in closed_form_families() {
        let g = family.build().unwrap();
        let genus = g.genus() as usize;
        for r in 1..=genus + 1 {
            let Ok(want) = expected_family_gonality(&family, r) else { continue };
            let n = g.num_vertices();
            if count_effective(n, want) * count_effective(n, r) > CLOSED_FORM_BUDGET {
                continue;
            }
            let got = gonality(&g, r, &SearchOptions::default()).unwrap().value;
            assert_eq!(got, want, "{family} r = {r}");
            checked += 1;
        }
    }
    assert!(checked >= 200, "only {checked} closed-form cases ran");
}

#[test]
fn pruned_and_parallel_searches_agree() {
    for (name, g) in fixtures() {
        if g.num_vertices() > 6 {
            continue;
        }
        for r in 1..=g.genus() as usize + 1 {
            let plain = gonality(&g, r, &SearchOptions::default()).unwrap();
            let pruned = gonality(&g, r, &SearchOptions { reduced_only: true, jobs: 1 }).unwrap();
            let parallel = gonality(&g, r, &SearchOptions { reduced_only: false, jobs: 4 }).unwrap();
            assert_eq!(pruned.value, plain.value, "{name} r = {r}");
            assert_eq!(parallel, plain, "{name} r = {r}");
            assert!(has_rank_at_least(&g, &plain.witness, r).unwrap());
            assert!(!is_gon_gt(&g, r, plain.value, &SearchOptions::default()).unwrap());
            assert!(is_gon_gt(&g, r, plain.value - 1, &SearchOptions::default()).unwrap());
        }
    }
}

#[test]
fn propagated_bounds_contain_true_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, g) in fixtures() {
        let genus = g.genus() as usize;
        let terms = computed_sequence(&g);
        let empty = propagate_bounds(genus, &[]).unwrap();
        for trial in 0..6 {
            let mut facts = Vec::new();
            for (i, &v) in terms.iter().enumerate() {
                if trial > 0 && !rng.gen_bool(0.4) {
                    continue;
                }
                facts.push(match rng.gen_range(0..3) {
                    0 => BoundFact::exact(i + 1, v),
                    1 => BoundFact::at_least(i + 1, v),
                    _ => BoundFact::at_most(i + 1, v),
                });
            }
            let table = propagate_bounds(genus, &facts).unwrap();
            for (i, &v) in terms.iter().enumerate().take(empty.horizon()) {
                let (lo, hi) = table.bounds(i + 1);
                let (elo, ehi) = empty.bounds(i + 1);
                assert!(lo <= v && v <= hi, "{name}: gon_{} = {v} outside [{lo}, {hi}] from {facts:?}", i + 1);
                assert!(elo <= lo && hi <= ehi, "{name}: facts loosened gon_{}", i + 1);
            }
        }
        // Knowing every value pins the table down.
        let all: Vec<BoundFact> = terms.iter().enumerate().map(|(i, &v)| BoundFact::exact(i + 1, v)).collect();
        let table = propagate_bounds(genus, &all).unwrap();
        assert!((1..=terms.len()).all(|r| table.exact(r) == Some(terms[r - 1])), "{name}");
    }
}

#[test]
fn trigonal_reports() {
    let g = chain_of(&[3, 2, 2, 2]);
    let report = check_trigonal_conjecture(&g).unwrap();
    assert_eq!(report.genus, 5);
    assert_eq!(report.mismatches().count(), 0);
    assert!(check_trigonal_conjecture(&chipfire::families::banana(4).unwrap()).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_graphs_recover_their_genus(g in arb_graph(5)) {
        prop_assume!(g.genus() <= 5);
        let terms = computed_sequence(&g);
        prop_assert_eq!(genus_from_sequence(&terms).unwrap(), g.genus() as usize);
        let eta = g.edge_connectivity().unwrap() as usize;
        prop_assert!(terms[0] >= eta.min(g.num_vertices()));
    }
}
