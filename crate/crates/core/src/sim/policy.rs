use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::splitmix64;

/// How the scheduler picks the activation set each round.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PolicyKind {
    /// Every robot, every round (fully synchronous).
    All,
    /// Each robot independently with probability 1/2; redrawn when empty.
    RandomSubset,
    /// One robot per round, cycling by id.
    RoundRobinSingleton,
    /// A fixed list of activation sets, cycled.
    Scripted(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActivationPolicy {
    pub kind: PolicyKind,
    pub seed: u64,
}

impl ActivationPolicy {
    pub fn all() -> Self {
        Self {
            kind: PolicyKind::All,
            seed: 0,
        }
    }

    pub fn random_subset(seed: u64) -> Self {
        Self {
            kind: PolicyKind::RandomSubset,
            seed,
        }
    }

    pub fn round_robin() -> Self {
        Self {
            kind: PolicyKind::RoundRobinSingleton,
            seed: 0,
        }
    }

    pub fn scripted(sets: Vec<Vec<usize>>) -> Self {
        Self {
            kind: PolicyKind::Scripted(sets),
            seed: 0,
        }
    }

    /// Stateful activation stream for one run.
    pub fn stream(&self, master_seed: u64) -> ActivationStream {
        ActivationStream {
            policy: self.clone(),
            rng: ChaCha8Rng::seed_from_u64(splitmix64(master_seed ^ self.seed)),
        }
    }
}

pub struct ActivationStream {
    policy: ActivationPolicy,
    rng: ChaCha8Rng,
}

impl ActivationStream {
    /// Non-empty, sorted activation set for `round`.
    pub fn next_set(&mut self, round: u64, n: usize) -> Vec<usize> {
        match &self.policy.kind {
            PolicyKind::All => (0..n).collect(),
            PolicyKind::RoundRobinSingleton => vec![(round as usize) % n],
            PolicyKind::RandomSubset => loop {
                let set: Vec<usize> = (0..n).filter(|_| self.rng.gen::<bool>()).collect();
                if !set.is_empty() {
                    break set;
                }
            },
            PolicyKind::Scripted(sets) => {
                let mut set = sets[(round as usize) % sets.len()].clone();
                set.sort_unstable();
                set.dedup();
                set
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_subset_is_deterministic_and_nonempty() {
        let policy = ActivationPolicy::random_subset(11);
        let mut a = policy.stream(42);
        let mut b = policy.stream(42);
        for round in 0..200 {
            let sa = a.next_set(round, 5);
            assert!(!sa.is_empty());
            assert_eq!(sa, b.next_set(round, 5));
        }
    }

    #[test]
    fn round_robin_cycles() {
        let policy = ActivationPolicy::round_robin();
        let mut s = policy.stream(0);
        assert_eq!(s.next_set(0, 3), vec![0]);
        assert_eq!(s.next_set(1, 3), vec![1]);
        assert_eq!(s.next_set(2, 3), vec![2]);
        assert_eq!(s.next_set(3, 3), vec![0]);
    }
}
