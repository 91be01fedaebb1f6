//! Generators for 3-free test corpora.
//!
//! Random families draw from [`ChaCha8Rng`] seeded with `seed_from_u64`, so a
//! `(spec, seed)` pair produces the same graph on every platform.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, FreenessWitness};
use crate::error::FamilyError;

/// Largest admissible circulant step on `n` vertices: `ceil(n/3) - 1`.
pub fn max_circulant_step(n: usize) -> usize {
    n.div_ceil(3).saturating_sub(1)
}

/// Circulant digraph with edges `i -> (i + j) mod n` for every `j` in `steps`.
pub fn circulant(n: usize, steps: &[usize]) -> Result<Digraph, FamilyError> {
    let max = max_circulant_step(n);
    if steps.is_empty() || steps.iter().any(|&j| j == 0 || j > max) {
        return Err(FamilyError::CirculantSteps { n, steps: steps.to_vec(), max });
    }
    let edges = (0..n).flat_map(|i| steps.iter().map(move |&j| (i, (i + j) % n)));
    Ok(Digraph::from_edges(n, edges).expect("circulant edges are in range and loop-free"))
}

/// Blow-up of a directed `sizes.len()`-cycle: part `i` is an independent set of
/// `sizes[i]` vertices, fully joined to part `i + 1 (mod k)`.
pub fn cycle_blowup(sizes: &[usize]) -> Result<Digraph, FamilyError> {
    let k = sizes.len();
    if k < 4 {
        return Err(FamilyError::TooFewParts(k));
    }
    if let Some(i) = sizes.iter().position(|&s| s == 0) {
        return Err(FamilyError::EmptyPart(i));
    }
    let mut starts = Vec::with_capacity(k + 1);
    starts.push(0);
    for &s in sizes {
        starts.push(starts.last().unwrap() + s);
    }
    let n = starts[k];
    let mut edges = Vec::new();
    for i in 0..k {
        let next = (i + 1) % k;
        for u in starts[i]..starts[i + 1] {
            for v in starts[next]..starts[next + 1] {
                edges.push((u, v));
            }
        }
    }
    Ok(Digraph::from_edges(n, edges).expect("blow-up edges are in range and loop-free"))
}

fn check_probability(p: f64) -> Result<(), FamilyError> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(FamilyError::Probability(p))
    }
}

/// Random orientation of `G(n, p)`, then triangles are broken one at a time by
/// deleting a uniformly chosen edge of the first triangle in scan order.
pub fn random_repaired(n: usize, p: f64, seed: u64) -> Result<Digraph, FamilyError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    let mut g = Digraph::from_edges(n, edges).expect("pairs are distinct and in range");
    while let Some(witness) = g.three_free_check() {
        let FreenessWitness::Triangle(a, b, c) = witness else {
            unreachable!("one orientation per pair never creates a digon")
        };
        let victim = [(a, b), (b, c), (c, a)][rng.gen_range(0..3)];
        g = g.remove_edges(&[victim]).expect("triangle edge exists");
    }
    Ok(g)
}

/// Random DAG: a uniform random topological order, each forward pair kept with
/// probability `p`.
pub fn random_dag(n: usize, p: f64, seed: u64) -> Result<Digraph, FamilyError> {
    check_probability(p)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((order[i], order[j]));
            }
        }
    }
    Ok(Digraph::from_edges(n, edges).expect("forward pairs are distinct and in range"))
}

/// A generator invocation. The canonical text form is a family name followed
/// by `key=value` tokens, e.g. `circulant n=9 steps=1,2` or
/// `random_repaired n=12 p=0.4 seed=7`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FamilySpec {
    Circulant { n: usize, steps: Vec<usize> },
    CycleBlowup { sizes: Vec<usize> },
    RandomRepaired { n: usize, p: f64, seed: u64 },
    RandomDag { n: usize, p: f64, seed: u64 },
}

impl FamilySpec {
    pub fn generate(&self) -> Result<Digraph, FamilyError> {
        match self {
            FamilySpec::Circulant { n, steps } => circulant(*n, steps),
            FamilySpec::CycleBlowup { sizes } => cycle_blowup(sizes),
            FamilySpec::RandomRepaired { n, p, seed } => random_repaired(*n, *p, *seed),
            FamilySpec::RandomDag { n, p, seed } => random_dag(*n, *p, *seed),
        }
    }

    /// Checks parameter constraints without generating.
    pub fn validate(&self) -> Result<(), FamilyError> {
        match self {
            FamilySpec::Circulant { n, steps } => {
                let max = max_circulant_step(*n);
                if steps.is_empty() || steps.iter().any(|&j| j == 0 || j > max) {
                    return Err(FamilyError::CirculantSteps { n: *n, steps: steps.clone(), max });
                }
                Ok(())
            }
            FamilySpec::CycleBlowup { sizes } => {
                if sizes.len() < 4 {
                    return Err(FamilyError::TooFewParts(sizes.len()));
                }
                match sizes.iter().position(|&s| s == 0) {
                    Some(i) => Err(FamilyError::EmptyPart(i)),
                    None => Ok(()),
                }
            }
            FamilySpec::RandomRepaired { p, .. } | FamilySpec::RandomDag { p, .. } => check_probability(*p),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            FamilySpec::Circulant { .. } => "circulant",
            FamilySpec::CycleBlowup { .. } => "cycle_blowup",
            FamilySpec::RandomRepaired { .. } => "random_repaired",
            FamilySpec::RandomDag { .. } => "random_dag",
        }
    }

    /// The seed of a random family, `None` for deterministic ones.
    pub fn seed(&self) -> Option<u64> {
        match self {
            FamilySpec::RandomRepaired { seed, .. } | FamilySpec::RandomDag { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    /// Same family with a different seed. Deterministic families are unchanged.
    pub fn with_seed(&self, new_seed: u64) -> FamilySpec {
        let mut spec = self.clone();
        if let FamilySpec::RandomRepaired { seed, .. } | FamilySpec::RandomDag { seed, .. } = &mut spec {
            *seed = new_seed;
        }
        spec
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Circulant { n, steps } => write!(f, "circulant n={n} steps={}", join(steps)),
            FamilySpec::CycleBlowup { sizes } => write!(f, "cycle_blowup sizes={}", join(sizes)),
            FamilySpec::RandomRepaired { n, p, seed } => write!(f, "random_repaired n={n} p={p} seed={seed}"),
            FamilySpec::RandomDag { n, p, seed } => write!(f, "random_dag n={n} p={p} seed={seed}"),
        }
    }
}

#[derive(Default)]
struct Fields {
    n: Option<usize>,
    p: Option<f64>,
    seed: Option<u64>,
    list: Option<Vec<usize>>,
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T, FamilyError> {
    value
        .parse()
        .map_err(|_| FamilyError::Syntax(format!("cannot parse {key}={value:?}")))
}

fn parse_list(key: &str, value: &str) -> Result<Vec<usize>, FamilyError> {
    value.split(',').map(|x| parse_num(key, x.trim())).collect()
}

impl FromStr for FamilySpec {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut tokens = s.split_whitespace();
        let family = tokens.next().ok_or_else(|| FamilyError::Syntax("empty spec".into()))?;
        let list_key = match family {
            "circulant" => "steps",
            "cycle_blowup" => "sizes",
            "random_repaired" | "random_dag" => "",
            other => return Err(FamilyError::Syntax(format!("unknown family {other:?}"))),
        };
        let mut fields = Fields::default();
        for token in tokens {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| FamilyError::Syntax(format!("expected key=value, got {token:?}")))?;
            let duplicate = match key {
                "n" => fields.n.replace(parse_num(key, value)?).is_some(),
                "p" => fields.p.replace(parse_num(key, value)?).is_some(),
                "seed" => fields.seed.replace(parse_num(key, value)?).is_some(),
                k if k == list_key && !k.is_empty() => fields.list.replace(parse_list(key, value)?).is_some(),
                _ => return Err(FamilyError::Syntax(format!("unexpected key {key:?} for {family}"))),
            };
            if duplicate {
                return Err(FamilyError::Syntax(format!("repeated key {key:?}")));
            }
        }
        let missing = |k: &str| FamilyError::Syntax(format!("{family} needs {k}="));
        let spec = match family {
            "circulant" => FamilySpec::Circulant {
                n: fields.n.ok_or_else(|| missing("n"))?,
                steps: fields.list.ok_or_else(|| missing("steps"))?,
            },
            "cycle_blowup" => {
                let sizes = fields.list.ok_or_else(|| missing("sizes"))?;
                if fields.n.is_some_and(|n| n != sizes.iter().sum::<usize>()) {
                    return Err(FamilyError::Syntax("n does not match the part sizes".into()));
                }
                FamilySpec::CycleBlowup { sizes }
            }
            _ => {
                let n = fields.n.ok_or_else(|| missing("n"))?;
                let p = fields.p.ok_or_else(|| missing("p"))?;
                let seed = fields.seed.unwrap_or(0);
                if family == "random_dag" {
                    FamilySpec::RandomDag { n, p, seed }
                } else {
                    FamilySpec::RandomRepaired { n, p, seed }
                }
            }
        };
        spec.validate()?;
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::tests::cycle;

    #[test]
    fn circulant_examples() {
        assert_eq!(circulant(4, &[1]).unwrap(), cycle(4));
        let g = circulant(9, &[1, 2]).unwrap();
        assert_eq!(g.edge_count(), 18);
        assert_eq!(g.gamma(), 18);
        assert!(g.is_three_free());
        assert!(matches!(circulant(6, &[2]), Err(FamilyError::CirculantSteps { max: 1, .. })));
        assert!(circulant(3, &[1]).is_err());
        assert!(circulant(9, &[]).is_err());
    }

    #[test]
    fn blowup_examples() {
        assert_eq!(cycle_blowup(&[1, 1, 1, 1]).unwrap(), cycle(4));
        let g = cycle_blowup(&[2, 1, 1, 1, 1]).unwrap();
        assert_eq!((g.n(), g.edge_count()), (6, 7));
        assert!(g.is_three_free());
        assert_eq!(cycle_blowup(&[3, 3, 3]).unwrap_err(), FamilyError::TooFewParts(3));
        assert_eq!(cycle_blowup(&[1, 0, 1, 1]).unwrap_err(), FamilyError::EmptyPart(1));
    }

    #[test]
    fn random_repaired_examples() {
        assert_eq!(random_repaired(7, 0.0, 3).unwrap(), Digraph::empty(7));
        let a = random_repaired(8, 0.5, 42).unwrap();
        let b = random_repaired(8, 0.5, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.is_three_free());
        assert!(random_repaired(8, 1.5, 0).is_err());
    }

    #[test]
    fn random_repaired_is_three_free_on_many_seeds() {
        for seed in 0..1000 {
            let n = 4 + (seed as usize % 10);
            let p = [0.2, 0.5, 0.9][seed as usize % 3];
            assert!(random_repaired(n, p, seed).unwrap().is_three_free(), "seed {seed}");
        }
    }

    #[test]
    fn random_dag_examples() {
        let g = random_dag(6, 1.0, 9).unwrap();
        assert_eq!(g.gamma(), 0);
        assert!(g.is_acyclic());
        assert_eq!(random_dag(6, 0.0, 9).unwrap(), Digraph::empty(6));
        assert!(random_dag(10, 0.3, 7).unwrap().is_acyclic());
        assert!(random_dag(3, -0.1, 0).is_err());
    }

    #[test]
    fn spec_text_form() {
        let spec: FamilySpec = "circulant n=9 steps=1,2".parse().unwrap();
        assert_eq!(spec, FamilySpec::Circulant { n: 9, steps: vec![1, 2] });
        assert_eq!(spec.to_string(), "circulant n=9 steps=1,2");
        let spec: FamilySpec = "random_repaired n=12 p=0.4 seed=7".parse().unwrap();
        assert_eq!(spec.to_string().parse::<FamilySpec>().unwrap(), spec);
        let spec: FamilySpec = "cycle_blowup sizes=2,1,1,1,1".parse().unwrap();
        assert_eq!(spec.generate().unwrap().n(), 6);

        for bad in [
            "",
            "petersen n=10",
            "circulant n=6 steps=2",
            "circulant n=9",
            "circulant n=9 steps=1 steps=2",
            "random_dag n=4 p=2",
            "random_dag n=4 p=0.5 sizes=1",
            "cycle_blowup sizes=1,1,1",
            "cycle_blowup n=5 sizes=1,1,1,1",
            "circulant n=x steps=1",
        ] {
            assert!(bad.parse::<FamilySpec>().is_err(), "{bad:?} should be rejected");
        }
    }
}
