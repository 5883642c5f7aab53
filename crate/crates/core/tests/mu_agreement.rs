use proptest::prelude::*;
use umod_core::gen;
use umod_core::oracle::Oracle;
use umod_core::{mu, mu_hopcroft, mu_naive};

#[test]
fn naive_and_hopcroft_agree_on_random_relations() {
    let mut rng = gen::rng(7);
    for i in 0..500 {
        let n = 2 + i % 39;
        let h = match i % 3 {
            0 => gen::graph(&mut rng, n, 0.5).into_relation(),
            1 => gen::tournament(&mut rng, n).into_relation(),
            _ => gen::relation(&mut rng, n, 1 + (i % 4) as u32),
        };
        let s: Vec<usize> = (0..n).filter(|x| (x * 7 + i) % 3 == 0).collect();
        if s.is_empty() || s.len() == n {
            continue;
        }
        assert_eq!(mu_naive(&h, &s).unwrap(), mu_hopcroft(&h, &s).unwrap(), "instance {i}");
    }
}

trait IntoRelation {
    fn into_relation(self) -> umod_core::HomogeneousRelation;
}
impl<T: umod_core::StandardRelation> IntoRelation for T {
    fn into_relation(self) -> umod_core::HomogeneousRelation {
        self.standard_relation()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn mu_is_symmetric_in_the_cut(seed in any::<u64>(), n in 2usize..9, k in 1u32..5) {
        let mut rng = gen::rng(seed);
        let h = gen::relation(&mut rng, n, k);
        let s: Vec<usize> = (0..n).filter(|x| (seed >> x) & 1 == 1).collect();
        prop_assume!(!s.is_empty() && s.len() < n);
        let rest: Vec<usize> = (0..n).filter(|x| !s.contains(x)).collect();
        let a = mu(&h, &s).unwrap();
        prop_assert_eq!(&a, &mu(&h, &rest).unwrap());
        let oracle = Oracle::default().mu(&h, &s).unwrap();
        prop_assert_eq!(a.parts(), oracle.as_slice());
    }
}
