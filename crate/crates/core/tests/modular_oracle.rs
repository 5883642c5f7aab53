use rand::Rng;
use umod_core::gen;
use umod_core::oracle::{from_mask, overlaps};
use umod_core::{modular_strong_tree, HomogeneousRelation, ModKind, ModularTree, StandardRelation};

fn oracle_strong_modules(h: &HomogeneousRelation) -> Vec<Vec<usize>> {
    let n = h.len();
    let modules: Vec<u64> = (1u64..1 << n).filter(|&m| h.is_module(&from_mask(m))).collect();
    let mut out: Vec<Vec<usize>> = modules
        .iter()
        .filter(|&&a| modules.iter().all(|&b| !overlaps(a, b)))
        .map(|&m| from_mask(m))
        .collect();
    out.sort();
    out
}

fn union_of(t: &ModularTree, nodes: &[usize]) -> Vec<usize> {
    let mut u: Vec<usize> = nodes.iter().flat_map(|&c| t.leaves(c)).collect();
    u.sort_unstable();
    u
}

fn check_types(h: &HomogeneousRelation, t: &ModularTree) {
    for v in t.leaf_count()..t.node_count() {
        let kids = t.children(v);
        let k = kids.len();
        assert!(k >= 2);
        for i in 0..k {
            for j in i + 1..k {
                if j - i + 1 == k {
                    continue;
                }
                let pair = h.is_module(&union_of(t, &[kids[i], kids[j]]));
                match t.kind(v) {
                    ModKind::Complete => assert!(pair),
                    ModKind::Linear => assert_eq!(pair, j == i + 1),
                    ModKind::Prime => assert!(!pair),
                    ModKind::Leaf => unreachable!(),
                }
            }
        }
        if t.kind(v) == ModKind::Linear {
            for a in 0..k {
                for b in a + 1..k {
                    if b - a + 1 < k {
                        assert!(h.is_module(&union_of(t, &kids[a..=b])));
                    }
                }
            }
        }
    }
}

#[test]
fn strong_modules_match_brute_force() {
    let mut rng = gen::rng(21);
    for i in 0..600 {
        let n = rng.gen_range(1..=9);
        let h = match i % 4 {
            0 => {
                let p = rng.gen_range(0.1..0.9);
                gen::graph(&mut rng, n, p).standard_relation()
            }
            1 => gen::tournament(&mut rng, n).standard_relation(),
            2 => gen::two_structure(&mut rng, n, 3).standard_relation(),
            _ => gen::extended::<umod_core::Tournament, _>(&mut rng, n).standard_relation(),
        };
        let t = modular_strong_tree(&h);
        assert_eq!(t.strong_modules(), oracle_strong_modules(&h), "case {i}");
        check_types(&h, &t);
    }
}

#[test]
fn substituted_structures() {
    // modules nested inside modules: substitute random tournaments into a
    // random tournament several times
    let mut rng = gen::rng(22);
    for _ in 0..200 {
        let n = rng.gen_range(4..=10);
        let group: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
        let outer = gen::tournament(&mut rng, 3);
        let inner = gen::tournament(&mut rng, n);
        let t = <umod_core::Tournament as umod_core::ArcStructure>::from_predicate(n, |x, y| {
            if group[x] == group[y] {
                inner.beats(x, y)
            } else {
                outer.beats(group[x], group[y])
            }
        })
        .unwrap();
        let h = t.standard_relation();
        let mt = modular_strong_tree(&h);
        assert_eq!(mt.strong_modules(), oracle_strong_modules(&h));
        check_types(&h, &mt);
    }
}
