use std::collections::BTreeSet;

use kmodal_core::gen::{self, FormulaParams};
use kmodal_core::unification::{classify_unifier, is_unifier, margin_rule_admissible, Dominators};
use kmodal_core::{Formula, Prover, SigmaIndex, Substitution};
use proptest::prelude::*;

const PARAMS: FormulaParams = FormulaParams {
    atoms: 2,
    max_modal_degree: 2,
    max_depth: 4,
};

fn index() -> impl Strategy<Value = SigmaIndex> {
    prop_oneof![
        (0usize..=4).prop_map(SigmaIndex::Finite),
        Just(SigmaIndex::Top)
    ]
}

fn unifier(seed: u64, a: SigmaIndex) -> Substitution {
    gen::substitution(&mut gen::rng(seed), &PARAMS).compose(&Substitution::sigma(a))
}

fn box_bot(n: usize) -> Formula {
    Formula::box_n(n, Formula::Bottom)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn composites_with_sigma_unify(seed in any::<u64>(), a in index()) {
        let s = unifier(seed, a);
        let gamma = [Formula::implies(Formula::p(), Formula::boxed(Formula::p()))];
        prop_assert!(is_unifier(&Prover::default(), &s, &gamma).unwrap().unifies());
    }

    #[test]
    fn classification_is_total_and_tight(seed in any::<u64>(), a in index()) {
        let prover = Prover::default();
        let s = unifier(seed, a);
        let image = s.image(0);
        let d = classify_unifier(&prover, &s).unwrap().dominators().expect("a unifier");
        match d {
            Dominators::Top => prop_assert!(prover.prove(&image).unwrap().is_proved()),
            Dominators::AtLeast(m) => {
                prop_assert!(m <= image.modal_degree().0);
                for k in 0..m {
                    let g = Formula::implies(image.clone(), box_bot(k));
                    prop_assert!(!prover.prove(&g).unwrap().is_proved());
                }
                for k in m..=m + 3 {
                    let g = Formula::implies(image.clone(), box_bot(k));
                    prop_assert!(prover.prove(&g).unwrap().is_proved());
                }
            }
        }
    }

    #[test]
    fn bounded_images_absorb_sigma(seed in any::<u64>(), a in index(), n in 0usize..=5) {
        let prover = Prover::default();
        let s = unifier(seed, a).restrict_to_p();
        let bounded = prover.prove(&Formula::implies(s.image(0), box_bot(n))).unwrap().is_proved();
        let p_only = BTreeSet::from([0]);
        let absorbs = s
            .equiv(&s.compose(&Substitution::sigma(SigmaIndex::Finite(n))), Some(&p_only), &prover)
            .unwrap();
        prop_assert_eq!(bounded, absorbs);
    }

    #[test]
    fn admissibility_evidence_agrees(seed in any::<u64>(), size in 1usize..=3) {
        let mut rng = gen::rng(seed);
        let delta: Vec<Formula> = (0..size).map(|_| gen::formula(&mut rng, &PARAMS)).collect();
        prop_assert!(margin_rule_admissible(&Prover::default(), &delta).is_ok());
    }

    #[test]
    fn substitution_text_round_trips(seed in any::<u64>()) {
        let s = gen::substitution(&mut gen::rng(seed), &PARAMS);
        prop_assert_eq!(s.to_string().parse::<Substitution>().unwrap(), s);
    }
}
