use kmodal_core::gen::{self, FormulaParams, ModelParams};
use kmodal_core::{prove, ConsequenceVerdict, Formula, Prover, ProverVerdict};
use proptest::prelude::*;

fn params(md: usize) -> FormulaParams {
    FormulaParams {
        atoms: 2,
        max_modal_degree: md,
        max_depth: 6,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn verdicts_are_sound(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let phi = gen::formula(&mut rng, &params(3));
        match prove(&phi).unwrap() {
            ProverVerdict::Refuted { countermodel } => {
                prop_assert_eq!(countermodel.model().eval(countermodel.root(), &phi), Ok(false));
            }
            ProverVerdict::Proved { .. } => {
                for _ in 0..50 {
                    let m = gen::model(&mut rng, &ModelParams::default());
                    prop_assert!(m.globally_valid(&phi), "{} fails on {}", phi, m.to_json());
                }
            }
        }
    }

    #[test]
    fn proved_and_negation_refuted(seed in any::<u64>()) {
        let phi = gen::formula(&mut gen::rng(seed), &params(2));
        let p = prove(&phi).unwrap().is_proved();
        let q = prove(&Formula::not(phi.clone())).unwrap().is_proved();
        prop_assert!(!(p && q));
        if p {
            prop_assert!(prove(&Formula::boxed(phi)).unwrap().is_proved());
        }
    }

    #[test]
    fn consequence_certificates(seed in any::<u64>()) {
        let mut rng = gen::rng(seed);
        let p = FormulaParams { atoms: 2, max_modal_degree: 2, max_depth: 4 };
        let gamma = vec![gen::formula(&mut rng, &p)];
        let phi = gen::formula(&mut rng, &p);
        match Prover::default().global_consequence(&gamma, &phi).unwrap() {
            ConsequenceVerdict::NotDerivable { countermodel, world } => {
                prop_assert!(countermodel.globally_valid(&gamma[0]));
                prop_assert_eq!(countermodel.eval(&world, &phi), Ok(false));
            }
            ConsequenceVerdict::Derivable { deduction_depth } => {
                if let Some(n) = deduction_depth {
                    let goal = Formula::implies(Formula::box_lt(n, gamma[0].clone()), phi.clone());
                    prop_assert!(prove(&goal).unwrap().is_proved());
                }
            }
        }
    }
}

#[test]
fn proved_formulas_hold_on_a_thousand_models() {
    let mut rng = gen::rng(99);
    let theorems: Vec<Formula> = (0..400)
        .map(|_| gen::formula(&mut rng, &params(2)))
        .filter(|f| prove(f).unwrap().is_proved())
        .collect();
    assert!(!theorems.is_empty());
    for _ in 0..1000 {
        let m = gen::model(&mut rng, &ModelParams::default());
        for t in &theorems {
            assert!(m.globally_valid(t), "{t}");
        }
    }
}
