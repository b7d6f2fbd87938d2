//! Random formulas and random chain extensions for property tests.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cover::{cover_to_formula, Biclique, BicliqueCover};
use crate::formula::{find_redundancy, make_nonredundant, Formula};
use crate::graph::Graph;
use crate::sop;

/// A random normalized formula over `a1..a{nvars}` with at most
/// `max_leaves` leaves.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, nvars: usize, max_leaves: usize) -> Formula {
    assert!(nvars >= 1 && max_leaves >= 1);
    let leaves = rng.gen_range(1..=max_leaves);
    let sum = rng.gen_bool(0.5);
    grow(rng, nvars, leaves, sum).normalize()
}

fn grow<R: Rng + ?Sized>(rng: &mut R, nvars: usize, leaves: usize, sum: bool) -> Formula {
    if leaves == 1 {
        return Formula::var(format!("a{}", rng.gen_range(1..=nvars)));
    }
    let arity = rng.gen_range(2..=leaves.min(4));
    let mut sizes = vec![1; arity];
    for _ in arity..leaves {
        sizes[rng.gen_range(0..arity)] += 1;
    }
    let kids = sizes.into_iter().map(|s| grow(rng, nvars, s, !sum)).collect();
    if sum {
        Formula::Sum(kids)
    } else {
        Formula::Prod(kids)
    }
}

/// A random cover of `G(n)`: repeatedly picks an uncovered edge `x_i y_j`
/// and a biclique `X x Y` around it with `max X <= t <= min Y`.
pub fn random_chain_cover<R: Rng + ?Sized>(rng: &mut R, n: usize) -> BicliqueCover {
    let mut covered = vec![vec![false; n + 1]; n + 1];
    let mut out = Vec::new();
    loop {
        let open: Vec<(usize, usize)> =
            (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).filter(|&(i, j)| !covered[i][j]).collect();
        let Some(&(i, j)) = open.choose(rng) else { break };
        let t = rng.gen_range(i..=j);
        let mut xs: Vec<usize> = (1..=t).filter(|&a| a == i || rng.gen_bool(0.4)).collect();
        let mut ys: Vec<usize> = (t..=n).filter(|&b| b == j || rng.gen_bool(0.4)).collect();
        xs.sort_unstable();
        ys.sort_unstable();
        for &a in &xs {
            for &b in &ys {
                covered[a][b] = true;
            }
        }
        out.push(Biclique::new(xs.iter().map(|a| format!("x{a}")), ys.iter().map(|b| format!("y{b}"))));
    }
    BicliqueCover::new(out)
}

/// A random extension of `G(n)`: a random cover compiled to a formula,
/// optionally with pure-`x`/pure-`y` products added, then reshaped by
/// random factoring and expansion steps. The result is normalized but may
/// be redundant.
pub fn random_extension<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Formula {
    let cover = random_chain_cover(rng, n);
    let mut parts: Vec<Formula> = cover_to_formula(&cover).expect("nonempty cover").children_or_self();
    if n >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            parts.push(pure_product(rng, n));
        }
    }
    for _ in 0..rng.gen_range(0..=3) {
        if rng.gen_bool(0.5) {
            parts = factor_step(rng, parts);
        } else {
            parts = expand_step(rng, parts);
        }
    }
    Formula::sum(parts).normalize()
}

/// [`random_extension`] passed through the non-redundancy rewrite.
pub fn random_nonredundant_extension<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Formula {
    let f = make_nonredundant(&random_extension(rng, n));
    debug_assert!(find_redundancy(&f).is_none());
    f
}

/// A random extension of `G(n)` with a peelable factor: the sum of a random
/// extension and `(Σx + φ1) * (Σy + φ2) * w`, where `w` is a product of
/// two or more `x` variables including `x1` (or `y` variables including
/// `y_n`), which absorbs every new mixed term. Needs `n >= 2`.
pub fn random_peelable<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Formula {
    assert!(n >= 2, "a pure guard needs two variables on one side");
    let base = random_extension(rng, n);
    let side = |s: char| -> Vec<Formula> { (1..=n).map(|i| Formula::var(format!("{s}{i}"))).collect() };
    let mut xs = side('x');
    let mut ys = side('y');
    if rng.gen_bool(0.3) {
        xs.push(pure_product(rng, n));
    }
    if rng.gen_bool(0.3) {
        ys.push(pure_product(rng, n));
    }
    let guard = if rng.gen_bool(0.5) {
        let mut w = vec![Formula::var("x1")];
        w.extend((2..=n).filter(|_| rng.gen_bool(0.5)).map(|i| Formula::var(format!("x{i}"))));
        if w.len() < 2 {
            w.push(Formula::var(format!("x{n}")));
        }
        w
    } else {
        let mut w = vec![Formula::var(format!("y{n}"))];
        w.extend((1..n).filter(|_| rng.gen_bool(0.5)).map(|i| Formula::var(format!("y{i}"))));
        if w.len() < 2 {
            w.push(Formula::var("y1"));
        }
        w
    };
    let mut factors = vec![Formula::Sum(xs), Formula::Sum(ys)];
    factors.extend(guard);
    Formula::sum(vec![base, Formula::Prod(factors)]).normalize()
}

fn pure_product<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Formula {
    let s = if rng.gen_bool(0.5) { 'x' } else { 'y' };
    let mut idx: Vec<usize> = (1..=n).collect();
    idx.shuffle(rng);
    let take = rng.gen_range(2..=n);
    Formula::prod(idx[..take].iter().map(|i| Formula::var(format!("{s}{i}"))).collect())
}

/// `A*B + A*C -> A*(B+C)` for two summands sharing a factor.
fn factor_step<R: Rng + ?Sized>(rng: &mut R, parts: Vec<Formula>) -> Vec<Formula> {
    let mut pairs = Vec::new();
    for a in 0..parts.len() {
        for b in a + 1..parts.len() {
            if let (Formula::Prod(p), Formula::Prod(q)) = (&parts[a], &parts[b]) {
                for (fi, f) in p.iter().enumerate() {
                    if q.contains(f) {
                        pairs.push((a, b, fi));
                    }
                }
            }
        }
    }
    let Some(&(a, b, fi)) = pairs.choose(rng) else { return parts };
    let (Formula::Prod(p), Formula::Prod(q)) = (&parts[a], &parts[b]) else { unreachable!() };
    let shared = p[fi].clone();
    let rest = |xs: &[Formula]| {
        let mut v = xs.to_vec();
        let k = v.iter().position(|f| *f == shared).unwrap();
        v.remove(k);
        Formula::prod(v)
    };
    let merged = Formula::prod(vec![shared.clone(), Formula::sum(vec![rest(p), rest(q)])]);
    let mut out: Vec<Formula> =
        parts.iter().enumerate().filter(|&(k, _)| k != a && k != b).map(|(_, f)| f.clone()).collect();
    out.push(merged);
    out
}

/// `(S1 + S2) * B -> S1*B + S2*B` for a summand with a sum factor.
fn expand_step<R: Rng + ?Sized>(rng: &mut R, mut parts: Vec<Formula>) -> Vec<Formula> {
    let cands: Vec<(usize, usize)> = parts
        .iter()
        .enumerate()
        .flat_map(|(a, f)| match f {
            Formula::Prod(c) => c
                .iter()
                .enumerate()
                .filter(|(_, ch)| ch.children().len() >= 2 && matches!(ch, Formula::Sum(_)))
                .map(|(k, _)| (a, k))
                .collect(),
            _ => Vec::new(),
        })
        .collect();
    let Some(&(a, k)) = cands.choose(rng) else { return parts };
    let Formula::Prod(c) = parts.remove(a) else { unreachable!() };
    let mut terms = c[k].children().to_vec();
    terms.shuffle(rng);
    let cut = rng.gen_range(1..terms.len());
    let others: Vec<Formula> = c.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, f)| f.clone()).collect();
    for half in [&terms[..cut], &terms[cut..]] {
        let mut f = others.clone();
        f.push(Formula::sum(half.to_vec()));
        parts.push(Formula::prod(f));
    }
    parts
}

trait SummandsExt {
    fn children_or_self(self) -> Vec<Formula>;
}

impl SummandsExt for Formula {
    fn children_or_self(self) -> Vec<Formula> {
        match self {
            Formula::Sum(c) => c,
            f => vec![f],
        }
    }
}

/// One graph per isomorphism class on `n <= 6` vertices named `a1..an`.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 6, "exhaustive graph listing is limited to 6 vertices");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut perms: Vec<Vec<usize>> = vec![(0..n).collect()];
    while let Some(next) = next_permutation(perms.last().unwrap()) {
        perms.push(next);
    }
    let mut out = Vec::new();
    for mask in 0u32..1 << pairs.len() {
        let canon = perms
            .iter()
            .map(|p| {
                pairs.iter().enumerate().filter(|&(e, _)| mask >> e & 1 == 1).fold(0u32, |m, (_, &(u, v))| {
                    let (a, b) = (p[u].min(p[v]), p[u].max(p[v]));
                    m | 1 << pairs.iter().position(|&q| q == (a, b)).unwrap()
                })
            })
            .min()
            .unwrap();
        if canon == mask {
            let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|&(e, _)| mask >> e & 1 == 1)
                .map(|(_, &(u, v))| (names[u].clone(), names[v].clone()));
            out.push(Graph::new(names.clone(), edges).expect("well-formed graph"));
        }
    }
    out
}

fn next_permutation(p: &[usize]) -> Option<Vec<usize>> {
    let mut v = p.to_vec();
    let i = (1..v.len()).rev().find(|&i| v[i - 1] < v[i])?;
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}

/// Extension check used by the generators' own tests.
pub fn is_extension(f: &Formula, n: usize) -> bool {
    sop::is_extension_of_chain(f, n).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::validate_cover;
    use crate::graph::chain_graph;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn graph_classes() {
        // non-isomorphic graphs on 1..=5 vertices
        let counts: Vec<usize> = (1..=5).map(|n| all_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }

    #[test]
    fn formulas_are_normalized() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..200 {
            let f = random_formula(&mut rng, 6, 12);
            assert!(f.is_normalized());
            assert!(f.leaf_count() <= 12);
        }
    }

    #[test]
    fn covers_are_valid() {
        let mut rng = StdRng::seed_from_u64(8);
        for n in 1..=5 {
            let c = random_chain_cover(&mut rng, n);
            assert!(validate_cover(&chain_graph(n).unwrap(), &c).unwrap().valid);
        }
    }

    #[test]
    fn extensions_extend() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..100 {
            let n = rng.gen_range(1..=3);
            assert!(is_extension(&random_extension(&mut rng, n), n));
            let f = random_nonredundant_extension(&mut rng, n);
            assert!(is_extension(&f, n) && find_redundancy(&f).is_none());
            let m = n.max(2);
            assert!(is_extension(&random_peelable(&mut rng, m), m));
        }
    }
}
