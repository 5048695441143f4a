use rand::seq::SliceRandom;
use rand::Rng;

use super::{E3Equation, E3LinInstance};
use crate::superstring::Name;

/// x ⊕ y ⊕ z = 0 three times: the smallest system with three occurrences per variable.
pub fn template_triple() -> E3LinInstance {
    let eq = E3Equation {
        vars: ["x".into(), "y".into(), "z".into()],
        rhs: false,
    };
    E3LinInstance::new(vec![eq.clone(), eq.clone(), eq])
}

/// Random system over `nvars` variables, each occurring exactly three times,
/// with `nvars` equations and uniform right-hand sides.
pub fn random_e3<R: Rng>(nvars: usize, rng: &mut R) -> E3LinInstance {
    let names: Vec<Name> = (0..nvars).map(|i| Name::from(format!("v{i}"))).collect();
    let mut slots: Vec<usize> = (0..nvars).flat_map(|i| [i, i, i]).collect();
    slots.shuffle(rng);
    let equations = slots
        .chunks(3)
        .map(|c| E3Equation {
            vars: [names[c[0]].clone(), names[c[1]].clone(), names[c[2]].clone()],
            rhs: rng.gen(),
        })
        .collect();
    E3LinInstance::new(equations)
}

/// `k` disjoint copies of `e3`; copy `c` renames every variable `v` to `v_c`.
pub fn replicate(e3: &E3LinInstance, k: usize) -> E3LinInstance {
    let mut equations = Vec::with_capacity(e3.equations.len() * k);
    for c in 1..=k {
        for eq in &e3.equations {
            equations.push(E3Equation {
                vars: eq.vars.clone().map(|v| Name::from(format!("{v}_{c}"))),
                rhs: eq.rhs,
            });
        }
    }
    E3LinInstance::new(equations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_has_three_occurrences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for nvars in 1..20 {
            let e3 = random_e3(nvars, &mut rng);
            assert_eq!(e3.equations.len(), nvars);
            assert!(e3.occurrences().values().all(|&c| c == 3));
        }
    }

    #[test]
    fn replication_doubles() {
        let e3 = replicate(&template_triple(), 2);
        assert_eq!(e3.equations.len(), 6);
        assert_eq!(e3.variables().len(), 6);
    }
}
