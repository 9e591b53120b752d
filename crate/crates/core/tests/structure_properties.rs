use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rigidity_core::enumeration::search_space_size;
use rigidity_core::{GroupElement, GroupSpec, StructureConstants};

fn z(moduli: &[u64]) -> GroupSpec {
    GroupSpec::new(moduli.to_vec()).unwrap()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn random_constants<R: Rng>(g: &GroupSpec, rng: &mut R) -> StructureConstants {
    let k = g.rank();
    let table = (0..k * k)
        .map(|idx| {
            let options = g.killed_by(gcd(g.moduli()[idx / k], g.moduli()[idx % k]));
            options[rng.gen_range(0..options.len())].clone()
        })
        .collect();
    StructureConstants::from_flat(g, table).unwrap()
}

/// Every admissible constant table, in lexicographic order.
fn all_constants(g: &GroupSpec) -> Vec<StructureConstants> {
    let k = g.rank();
    let options: Vec<Vec<GroupElement>> = (0..k * k)
        .map(|idx| g.killed_by(gcd(g.moduli()[idx / k], g.moduli()[idx % k])))
        .collect();
    let mut out = vec![Vec::new()];
    for cell in &options {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<GroupElement>| {
                cell.iter().map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|t| StructureConstants::from_flat(g, t).unwrap())
        .collect()
}

fn exhaustive_associativity(c: &StructureConstants) -> bool {
    let all: Vec<_> = c.group().all_elements(10_000).unwrap().collect();
    all.iter().all(|x| {
        all.iter().all(|y| {
            let xy = c.eval(x, y).unwrap();
            all.iter()
                .all(|w| c.eval(&xy, w).unwrap() == c.eval(x, &c.eval(y, w).unwrap()).unwrap())
        })
    })
}

fn brute_force_identities(c: &StructureConstants) -> Vec<GroupElement> {
    let all: Vec<_> = c.group().all_elements(10_000).unwrap().collect();
    all.iter()
        .filter(|u| all.iter().all(|x| c.eval(u, x).unwrap() == *x && c.eval(x, u).unwrap() == *x))
        .cloned()
        .collect()
}

const SMALL_GROUPS: &[&[u64]] = &[
    &[2], &[3], &[4], &[5], &[6], &[7], &[8], &[9], &[10], &[12], &[16],
    &[2, 2], &[2, 3], &[2, 4], &[3, 3], &[2, 6], &[4, 4], &[2, 8], &[2, 2, 2], &[2, 2, 4], &[2, 2, 2, 2],
];

#[test]
fn generator_triples_decide_associativity() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for moduli in SMALL_GROUPS {
        let g = z(moduli);
        assert!(g.order() <= 16);
        let tables = if search_space_size(&g) <= 600 {
            all_constants(&g)
        } else {
            (0..150).map(|_| random_constants(&g, &mut rng)).collect()
        };
        for c in tables {
            assert_eq!(c.check_associativity(), exhaustive_associativity(&c), "{c:?}");
        }
    }
}

#[test]
fn both_verdicts_occur_on_the_klein_group() {
    let tables = all_constants(&z(&[2, 2]));
    assert_eq!(tables.len(), 256);
    let associative = tables.iter().filter(|c| c.check_associativity()).count();
    assert!(associative > 0 && associative < 256);
}

#[test]
fn find_unit_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for moduli in SMALL_GROUPS {
        let g = z(moduli);
        let tables = if search_space_size(&g) <= 600 {
            all_constants(&g)
        } else {
            (0..150).map(|_| random_constants(&g, &mut rng)).collect()
        };
        for c in tables {
            let brute = brute_force_identities(&c);
            assert!(brute.len() <= 1);
            assert_eq!(c.find_unit(10_000).unwrap(), brute.first().cloned(), "{c:?}");
        }
    }
}

#[test]
fn eval_is_bilinear_exhaustively_on_small_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for moduli in [&[8][..], &[2, 2], &[2, 4], &[4, 4], &[2, 2, 2], &[3, 6], &[4, 8], &[2, 2, 2, 2, 2, 2]] {
        let g = z(moduli);
        assert!(g.order() <= 64);
        let all: Vec<_> = g.all_elements(64).unwrap().collect();
        let tables = if g.order() > 32 { 1 } else { 3 };
        for _ in 0..tables {
            let c = random_constants(&g, &mut rng);
            for x in &all {
                for x2 in &all {
                    let sum = x.add(x2).unwrap();
                    for y in &all {
                        let left = c.eval(&sum, y).unwrap();
                        assert_eq!(left, c.eval(x, y).unwrap().add(&c.eval(x2, y).unwrap()).unwrap());
                        let right = c.eval(y, &sum).unwrap();
                        assert_eq!(right, c.eval(y, x).unwrap().add(&c.eval(y, x2).unwrap()).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn eval_is_bilinear_on_samples_from_larger_groups() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for moduli in [&[1000][..], &[12, 18, 30], &[64, 64], &[7, 49, 343]] {
        let g = z(moduli);
        let c = random_constants(&g, &mut rng);
        for _ in 0..10_000 / 4 {
            let mut pick = || g.element_at(rng.gen_range(0..g.order()));
            let (x, x2, y) = (pick(), pick(), pick());
            let sum = x.add(&x2).unwrap();
            assert_eq!(c.eval(&sum, &y).unwrap(), c.eval(&x, &y).unwrap().add(&c.eval(&x2, &y).unwrap()).unwrap());
            assert_eq!(c.eval(&y, &sum).unwrap(), c.eval(&y, &x).unwrap().add(&c.eval(&y, &x2).unwrap()).unwrap());
        }
    }
}

proptest! {
    #[test]
    fn commutativity_flag_matches_full_table(seed in any::<u64>(), pick in 0usize..6) {
        let moduli: [&[u64]; 6] = [&[2, 2], &[2, 4], &[3, 3], &[2, 2, 2], &[4, 6], &[6]];
        let g = z(moduli[pick]);
        let c = random_constants(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        let all: Vec<_> = g.all_elements(100).unwrap().collect();
        let symmetric = all.iter().all(|x| all.iter().all(|y| c.eval(x, y).unwrap() == c.eval(y, x).unwrap()));
        prop_assert_eq!(c.check_commutativity(), symmetric);
    }
}
