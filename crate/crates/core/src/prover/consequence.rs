use super::types::{eliminate, Elimination};
use super::{tableau, Budget, ConsequenceVerdict, ProverConfig, ProverError};
use crate::formula::Formula;

pub(crate) fn global_consequence(
    premises: &[Formula],
    f: &Formula,
    config: &ProverConfig,
) -> Result<ConsequenceVerdict, ProverError> {
    let mut budget = Budget::new(config.max_nodes);
    match eliminate(premises, f, config, &mut budget)? {
        Elimination::Countermodel { model, world } => Ok(ConsequenceVerdict::NotDerivable {
            countermodel: model,
            world,
        }),
        Elimination::Valid { closure_len } => {
            let cap = if closure_len >= 63 {
                usize::MAX
            } else {
                (1usize << closure_len) + 1
            };
            let deduction_depth = deduction_depth(premises, f, cap, config).ok().flatten();
            Ok(ConsequenceVerdict::Derivable { deduction_depth })
        }
    }
}

/// Least `n <= cap` with `|- [<n](/\premises) -> f`, by running the tableau
/// for `n = 0, 1, ...` on one shared node budget. `Ok(None)` means every
/// `n <= cap` was refuted.
pub fn deduction_depth(
    premises: &[Formula],
    f: &Formula,
    cap: usize,
    config: &ProverConfig,
) -> Result<Option<usize>, ProverError> {
    let gamma = Formula::conjunction(premises.iter().cloned());
    let mut budget = Budget::new(config.max_nodes);
    let mut n = 0;
    loop {
        let goal = Formula::implies(Formula::box_lt(n, gamma.clone()), f.clone());
        if tableau::prove(&goal, &mut budget)?.is_proved() {
            return Ok(Some(n));
        }
        if n >= cap {
            return Ok(None);
        }
        n += 1;
    }
}
