//! Direct-definition oracles checked against the fast kernels.

use std::collections::{BTreeMap, VecDeque};

use plateau_core::boolfun::variable_bit;
use plateau_core::regularity::{brute_force_walk_counts, odd_walk_parameters, three_walk_parameters, WalkCounts};
use plateau_core::{fourier, full_characterization, walsh_hadamard, AnalysisConfig, BooleanFunction, CayleyGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn naive_dot(w: usize, x: usize, n: u32) -> bool {
    (1..=n).fold(false, |acc, v| acc ^ (variable_bit(w, v, n) & variable_bit(x, v, n)))
}

fn naive_wht(f: &BooleanFunction) -> Vec<i64> {
    let n = f.n();
    (0..f.len())
        .map(|w| {
            (0..f.len())
                .map(|x| if f.value(x) ^ naive_dot(w, x, n) { -1 } else { 1 })
                .sum()
        })
        .collect()
}

fn naive_fourier(f: &BooleanFunction) -> Vec<i64> {
    let n = f.n();
    (0..f.len())
        .map(|w| {
            (0..f.len())
                .filter(|&x| f.value(x))
                .map(|x| if naive_dot(w, x, n) { -1 } else { 1 })
                .sum()
        })
        .collect()
}

/// Evaluates the ANF by summing monomials over F₂ at every point.
fn naive_anf_eval(f: &BooleanFunction) -> Vec<bool> {
    let n = f.n();
    let anf = f.to_anf();
    (0..f.len())
        .map(|x| {
            anf.monomial_sets()
                .iter()
                .fold(false, |acc, m| acc ^ m.iter().all(|&v| variable_bit(x, v, n)))
        })
        .collect()
}

fn bfs_components(f: &BooleanFunction) -> Vec<Vec<u32>> {
    let size = f.len();
    let mut seen = vec![false; size];
    let mut out = Vec::new();
    for start in 0..size {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start as u32];
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for (y, visited) in seen.iter_mut().enumerate() {
                if !*visited && f.value(x ^ y) {
                    *visited = true;
                    comp.push(y as u32);
                    queue.push_back(y);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Walks of length `ell` from `i` to `j`, by explicit recursion.
fn count_walks(adj: &[Vec<usize>], i: usize, j: usize, ell: u32) -> u64 {
    if ell == 0 {
        return (i == j) as u64;
    }
    adj[i].iter().map(|&k| count_walks(adj, k, j, ell - 1)).sum()
}

fn random_function(n: u32, rng: &mut ChaCha8Rng) -> BooleanFunction {
    let mut t: Vec<bool> = (0..1usize << n).map(|_| rng.gen()).collect();
    t[0] = false;
    BooleanFunction::from_vec(t).unwrap()
}

#[test]
fn transforms_match_definitions() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=7 {
        for _ in 0..20 {
            let f = random_function(n, &mut rng);
            assert_eq!(walsh_hadamard(&f).values, naive_wht(&f), "{f}");
            assert_eq!(fourier(&f).values, naive_fourier(&f), "{f}");
        }
    }
}

#[test]
fn anf_matches_pointwise_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=8 {
        for _ in 0..10 {
            let f = random_function(n, &mut rng);
            assert_eq!(naive_anf_eval(&f), f.truth_table(), "{f}");
        }
    }
}

#[test]
fn components_match_bfs() {
    for packed in 0..1u64 << 16 {
        if packed & 1 == 1 || packed % 7 != 0 {
            continue;
        }
        let f = BooleanFunction::from_packed(4, packed).unwrap();
        let g = CayleyGraph::build(&f).unwrap();
        assert_eq!(g.connected_components(), bfs_components(&f), "{f}");
    }
}

#[test]
fn walk_counts_match_recursion() {
    let maj = BooleanFunction::from_bit_string("00010111").unwrap();
    let g = CayleyGraph::build(&maj).unwrap();
    let adj: Vec<Vec<usize>> = (0..8).map(|x| g.neighbors(x).collect()).collect();
    let a = g.adjacency_matrix(8).unwrap();
    for ell in [3u32, 5] {
        let p = a.pow(ell).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(*p.get(i, j), count_walks(&adj, i, j, ell) as i128);
            }
        }
    }
    let WalkCounts::Constant {
        adjacent,
        nonadjacent,
        identical,
    } = brute_force_walk_counts(&a, 3).unwrap()
    else {
        panic!("majority graph is 3-walk-regular");
    };
    let expect = three_walk_parameters(3, 1, 4).unwrap();
    assert_eq!(
        (adjacent, nonadjacent, identical),
        (Some(expect.sigma), Some(expect.mu), expect.nu)
    );
}

/// Independent derivation of the t-th parameters: repeated squaring of the
/// 2×2 action of A² on span{A, J} applied to A³ = x₁A + y₁J.
#[test]
fn higher_walk_parameters_by_linear_algebra() {
    for (n, s, r) in [(3u32, 1u32, 4u64), (5, 1, 16), (4, 0, 6), (6, 2, 24), (5, 3, 8)] {
        let Ok(base) = three_walk_parameters(n, s, r) else {
            continue;
        };
        let x1 = 1i128 << (n + s - 2);
        let (mut x, mut y) = (x1, base.mu);
        for t in 1..=4u32 {
            let c = odd_walk_parameters(n, s, r, t).unwrap();
            assert_eq!((c.sigma - c.mu, c.mu, c.nu), (x, y, y), "n={n} s={s} r={r} t={t}");
            // A^{2t+3} = A²·(xA + yJ) = x·A³ + y·r²J = x·x₁A + (x·y₁ + y·r²)J
            let next_y = x * base.mu + y * (r as i128) * (r as i128);
            x *= x1;
            y = next_y;
        }
    }
}

#[test]
fn common_neighbour_counts_match_certificate() {
    let bent = plateau_core::parse_anf("x1*x2 + x3*x4", 4).unwrap().to_function();
    let c = full_characterization(&bent, &AnalysisConfig::default()).unwrap();
    let srg = c.srg.expect("bent functions give strongly regular graphs");
    let mut seen: BTreeMap<bool, u64> = BTreeMap::new();
    for i in 0..16usize {
        for j in i + 1..16 {
            let common = (0..16).filter(|&k| bent.value(i ^ k) && bent.value(j ^ k)).count() as u64;
            let prev = seen.insert(bent.value(i ^ j), common);
            assert!(prev.is_none_or(|p| p == common));
        }
    }
    assert_eq!(seen[&true], srg.e);
    assert_eq!(seen[&false], srg.d);
    assert_eq!(srg.e, srg.d);
}
