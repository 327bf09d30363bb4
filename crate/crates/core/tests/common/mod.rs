#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rcpoly::restraint::ColourSet;
use rcpoly::{Graph, Restraint};

/// Counts permitted colourings by walking all `x^n` maps `V -> [x]`.
pub fn naive_count(g: &Graph, r: &Restraint, x: u64) -> BigInt {
    let n = g.n();
    if n == 0 {
        return BigInt::from(1);
    }
    if x == 0 {
        return BigInt::from(0);
    }
    let edges = g.edges();
    let mut c = vec![1u64; n];
    let mut total = 0u64;
    loop {
        let ok = (0..n).all(|v| !r.get(v).contains(&(c[v] as u32)))
            && edges.iter().all(|&(a, b)| c[a] != c[b]);
        total += ok as u64;
        let mut i = 0;
        loop {
            if i == n {
                return BigInt::from(total);
            }
            c[i] += 1;
            if c[i] <= x {
                break;
            }
            c[i] = 1;
            i += 1;
        }
    }
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut g = Graph::edgeless(n).unwrap();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

pub fn random_tree<R: Rng>(rng: &mut R, n: usize) -> Graph {
    if n < 2 {
        return Graph::edgeless(n).unwrap();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    Graph::tree_from_pruefer(&seq).unwrap()
}

/// Standard simple restraint with colours drawn from `1..=colours`.
pub fn random_simple<R: Rng>(rng: &mut R, n: usize, colours: u32) -> Restraint {
    let c: Vec<u32> = (0..n).map(|_| rng.gen_range(1..=colours)).collect();
    Restraint::simple(&c).unwrap()
}

/// Arbitrary restraint: each vertex forbids a random subset of `1..=colours`.
pub fn random_restraint<R: Rng>(rng: &mut R, n: usize, colours: u32) -> Restraint {
    let sets = (0..n)
        .map(|_| (1..=colours).filter(|_| rng.gen_bool(0.3)).collect::<ColourSet>())
        .collect();
    Restraint::new(sets).unwrap()
}

pub fn random_colour_permutation<R: Rng>(rng: &mut R, colours: u32) -> Vec<u32> {
    let mut p: Vec<u32> = (1..=colours).collect();
    p.shuffle(rng);
    p
}

/// Leaves of a tree paired with their stem, leaf ascending.
pub fn leaves(t: &Graph) -> Vec<(usize, usize)> {
    (0..t.n())
        .filter(|&v| t.degree(v) == 1)
        .map(|v| (v, t.neighbours(v).next().unwrap()))
        .collect()
}

/// Checks both leaf decompositions of a tree count at `k` for the leaf `u`
/// with stem `v`, and the component-product form of the fixed-colour term.
pub fn check_leaf_identities(t: &Graph, r: &Restraint, u: usize, v: usize, k: u64) -> Result<(), String> {
    use rcpoly::rcp::{brute_count, count_with_fixed_colour};
    let ru = *r.get(u).first().unwrap();
    let rv = *r.get(v).first().unwrap();
    let keep: Vec<usize> = (0..t.n()).filter(|&w| w != u).collect();
    let (tp, map) = t.induced_subgraph(&keep).unwrap();
    let rp = r.restrict(&map);
    let total = brute_count(t, r, k).unwrap();
    let base = brute_count(&tp, &rp, k).unwrap() * BigInt::from(k as i64 - 2);
    if ru == rv {
        return if total == base {
            Ok(())
        } else {
            Err(format!("equal-colour leaf identity fails: {total} vs {base}"))
        };
    }
    let v_new = map.iter().position(|&w| w == v).unwrap();
    let fixed = count_with_fixed_colour(&tp, &rp, v_new, ru, k).unwrap();
    if total != &base + &fixed {
        return Err(format!("distinct-colour leaf identity fails: {total} vs {base} + {fixed}"));
    }
    let keep2: Vec<usize> = (0..t.n()).filter(|&w| w != u && w != v).collect();
    let (t2, map2) = t.induced_subgraph(&keep2).unwrap();
    let mut product = BigInt::from(1);
    for comp in t2.connected_components() {
        let originals: Vec<usize> = comp.iter().map(|&i| map2[i]).collect();
        let vi = *originals.iter().find(|&&w| t.has_edge(w, v)).ok_or("component without a neighbour of v")?;
        let (ti, _) = t.induced_subgraph(&originals).unwrap();
        let mut sets: Vec<ColourSet> = originals.iter().map(|&w| r.get(w).clone()).collect();
        if *r.get(vi).first().unwrap() != ru {
            let pos = originals.iter().position(|&w| w == vi).unwrap();
            sets[pos].insert(ru);
        }
        product *= brute_count(&ti, &Restraint::new(sets).unwrap(), k).unwrap();
    }
    if product != fixed {
        return Err(format!("component product {product} differs from fixed-colour count {fixed}"));
    }
    Ok(())
}
