//! Restrained chromatic polynomials: permitted-colouring counts by
//! backtracking, and the polynomial by deletion/contraction or by
//! interpolating the counts.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::graph::Graph;
use crate::poly::IntPoly;
use crate::restraint::Restraint;

/// `poly` equals the permitted-colouring count for every integer `x >= threshold`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct RestrainedPoly {
    #[serde(rename = "coeffs")]
    pub poly: IntPoly,
    pub threshold: u32,
}

impl RestrainedPoly {
    pub fn evaluate(&self, x: u64) -> BigInt {
        self.poly.evaluate(&BigInt::from(x))
    }

    /// `(-1)^(n-i) * c_i >= 0` for every coefficient.
    pub fn signs_alternate(&self) -> bool {
        let d = self.poly.degree().unwrap_or(0);
        self.poly.coeffs().iter().enumerate().all(|(i, c)| {
            let c = if (d - i) % 2 == 0 { c.clone() } else { -c };
            c >= BigInt::zero()
        })
    }
}

/// Colours named by the restraint that lie in `[x]` (all of them when `x` is `None`).
fn named_colours(r: &Restraint, x: Option<u64>, extra: Option<u32>) -> Vec<u32> {
    let mut named: Vec<u32> = r.sets().iter().flatten().copied().chain(extra).collect();
    named.sort_unstable();
    named.dedup();
    if let Some(x) = x {
        named.retain(|&c| (c as u64) <= x);
    }
    named
}

/// Backtracking over colourings where every colour outside `named` is
/// interchangeable. Records how many colour patterns use exactly `f` distinct
/// unnamed colours; each pattern stands for `(pool)_f` real colourings.
struct PatternCounter<'a> {
    g: &'a Graph,
    order: Vec<usize>,
    forbidden: Vec<Vec<bool>>,
    fixed: Option<(usize, usize)>,
    named: usize,
    fresh_limit: usize,
    colour: Vec<usize>,
    hist: Vec<u64>,
}

impl PatternCounter<'_> {
    fn run(&mut self, pos: usize, fresh: usize) {
        if pos == self.order.len() {
            self.hist[fresh] += 1;
            return;
        }
        let v = self.order[pos];
        let nb = self.g.neighbour_mask(v);
        let mut taken = [usize::MAX; 64];
        let mut len = 0;
        for &w in &self.order[..pos] {
            if nb >> w & 1 == 1 {
                taken[len] = self.colour[w];
                len += 1;
            }
        }
        let taken = &taken[..len];
        let clash = |c: usize| taken.contains(&c);
        if let Some((fv, fc)) = self.fixed {
            if fv == v {
                if !self.forbidden[v][fc] && !clash(fc) {
                    self.colour[v] = fc;
                    self.run(pos + 1, fresh);
                }
                return;
            }
        }
        for c in 0..self.named {
            if !self.forbidden[v][c] && !clash(c) {
                self.colour[v] = c;
                self.run(pos + 1, fresh);
            }
        }
        for k in 0..fresh {
            let c = self.named + k;
            if !clash(c) {
                self.colour[v] = c;
                self.run(pos + 1, fresh);
            }
        }
        if fresh < self.fresh_limit {
            self.colour[v] = self.named + fresh;
            self.run(pos + 1, fresh + 1);
        }
    }
}

/// Vertices ordered so each next vertex has the most already-placed
/// neighbours (ties: higher degree, then lower index).
fn search_order(g: &Graph) -> Vec<usize> {
    let mut placed = 0u64;
    let mut order = Vec::with_capacity(g.n());
    while order.len() < g.n() {
        let v = (0..g.n())
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| {
                let back = (g.neighbour_mask(v) & placed).count_ones();
                (back, g.degree(v), std::cmp::Reverse(v))
            })
            .expect("unplaced vertex remains");
        placed |= 1 << v;
        order.push(v);
    }
    order
}

fn pattern_histogram(
    g: &Graph,
    r: &Restraint,
    named: &[u32],
    fixed: Option<(usize, u32)>,
    fresh_limit: usize,
) -> Vec<u64> {
    let forbidden = r
        .sets()
        .iter()
        .map(|s| named.iter().map(|c| s.contains(c)).collect())
        .collect();
    let fixed = fixed.map(|(v, c)| (v, named.iter().position(|&d| d == c).expect("fixed colour is named")));
    let mut counter = PatternCounter {
        g,
        order: search_order(g),
        forbidden,
        fixed,
        named: named.len(),
        fresh_limit,
        colour: vec![usize::MAX; g.n()],
        hist: vec![0; g.n() + 1],
    };
    counter.run(0, 0);
    counter.hist
}

fn weigh(hist: &[u64], pool: u64) -> BigInt {
    let mut total = BigInt::zero();
    let mut falling = BigInt::one();
    for (f, &h) in hist.iter().enumerate() {
        if f as u64 > pool {
            break;
        }
        total += &falling * h;
        falling *= pool - f as u64;
    }
    total
}

/// Number of proper colourings `c: V -> [x]` with `c(v) ∉ r(v)` for all `v`.
pub fn brute_count(g: &Graph, r: &Restraint, x: u64) -> Result<BigInt> {
    r.check_graph(g)?;
    let named = named_colours(r, Some(x), None);
    let pool = x - named.len() as u64;
    let hist = pattern_histogram(g, r, &named, None, pool.min(g.n() as u64) as usize);
    Ok(weigh(&hist, pool))
}

/// [`brute_count`] at `start, start+1, ..., start+len-1`. Values at or above
/// the largest restrained colour share a single enumeration.
pub fn brute_counts(g: &Graph, r: &Restraint, start: u64, len: usize) -> Result<Vec<BigInt>> {
    r.check_graph(g)?;
    let named = named_colours(r, None, None);
    let top = r.max_colour() as u64;
    let shared = (len > 0 && start + len as u64 - 1 >= top)
        .then(|| pattern_histogram(g, r, &named, None, g.n()));
    (start..start + len as u64)
        .map(|x| match &shared {
            Some(hist) if x >= top => Ok(weigh(hist, x - named.len() as u64)),
            _ => brute_count(g, r, x),
        })
        .collect()
}

/// Permitted colourings with `c(v) = colour`; zero if `colour` is forbidden at
/// `v` or exceeds `x`.
pub fn count_with_fixed_colour(
    g: &Graph,
    r: &Restraint,
    v: usize,
    colour: u32,
    x: u64,
) -> Result<BigInt> {
    r.check_graph(g)?;
    if v >= g.n() {
        return Err(crate::Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    if colour == 0 || colour as u64 > x || r.get(v).contains(&colour) {
        return Ok(BigInt::zero());
    }
    let named = named_colours(r, Some(x), Some(colour));
    let pool = x - named.len() as u64;
    let hist = pattern_histogram(g, r, &named, Some((v, colour)), pool.min(g.n() as u64) as usize);
    Ok(weigh(&hist, pool))
}

/// What deletion/contraction needs from a restraint: the set sizes and the
/// union taken when two vertices merge.
trait Forbidden: Clone + Eq + std::hash::Hash {
    fn sizes(&self) -> Vec<usize>;
    fn merged(&self, u: usize, v: usize, merge_map: &[usize]) -> Self;
}

impl Forbidden for Restraint {
    fn sizes(&self) -> Vec<usize> {
        self.sets().iter().map(|s| s.len()).collect()
    }

    fn merged(&self, u: usize, v: usize, merge_map: &[usize]) -> Self {
        self.merge_for_contraction(u, v, merge_map)
    }
}

/// Restraint with colours renumbered onto the bits of a `u64`.
#[derive(Clone, PartialEq, Eq, Hash)]
struct ColourMasks(Vec<u64>);

impl ColourMasks {
    fn from_restraint(r: &Restraint) -> Option<Self> {
        let named = named_colours(r, None, None);
        if named.len() > 64 {
            return None;
        }
        let masks = r
            .sets()
            .iter()
            .map(|s| {
                s.iter()
                    .map(|c| 1u64 << named.binary_search(c).expect("colour is named"))
                    .fold(0, |a, b| a | b)
            })
            .collect();
        Some(ColourMasks(masks))
    }
}

impl Forbidden for ColourMasks {
    fn sizes(&self) -> Vec<usize> {
        self.0.iter().map(|m| m.count_ones() as usize).collect()
    }

    fn merged(&self, u: usize, v: usize, merge_map: &[usize]) -> Self {
        let mut out = vec![0u64; self.0.len() - 1];
        for (old, &new) in merge_map.iter().enumerate() {
            out[new] |= self.0[old];
        }
        debug_assert_eq!(out[merge_map[u]], self.0[u] | self.0[v]);
        ColourMasks(out)
    }
}

/// Coefficient ring for the recursion: `i128` with overflow detection, or
/// exact big integers.
trait Coeffs: Sized + Clone {
    fn edgeless(sizes: &[usize]) -> Option<Self>;
    fn minus(&self, other: &Self) -> Option<Self>;
}

impl Coeffs for IntPoly {
    fn edgeless(sizes: &[usize]) -> Option<Self> {
        Some(sizes.iter().fold(IntPoly::one(), |acc, &k| &acc * &IntPoly::x_minus(k as u64)))
    }

    fn minus(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
}

/// Low-to-high `i128` coefficients, always of length `n + 1`.
#[derive(Clone)]
struct Small(Vec<i128>);

impl Coeffs for Small {
    fn edgeless(sizes: &[usize]) -> Option<Self> {
        let mut c = vec![1i128];
        for &k in sizes {
            let mut next = vec![0i128; c.len() + 1];
            for (i, &a) in c.iter().enumerate() {
                next[i + 1] = next[i + 1].checked_add(a)?;
                next[i] = next[i].checked_sub(a.checked_mul(k as i128)?)?;
            }
            c = next;
        }
        Some(Small(c))
    }

    fn minus(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        out.resize(out.len().max(other.0.len()), 0);
        for (o, &b) in out.iter_mut().zip(&other.0) {
            *o = o.checked_sub(b)?;
        }
        Some(Small(out))
    }
}

struct DelCon<R, C> {
    memo: HashMap<(Vec<u64>, R), C>,
}

impl<R: Forbidden, C: Coeffs> DelCon<R, C> {
    fn new() -> Self {
        DelCon { memo: HashMap::new() }
    }

    /// `None` on coefficient overflow.
    fn solve(&mut self, g: &Graph, r: &R) -> Option<C> {
        if g.is_edgeless() {
            return C::edgeless(&r.sizes());
        }
        let key = (g.adjacency().to_vec(), r.clone());
        if let Some(p) = self.memo.get(&key) {
            return Some(p.clone());
        }
        let u = (0..g.n())
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("graph has an edge");
        let v = g.neighbours(u).next().expect("u has a neighbour");
        let deleted = g.delete_edge(u, v).expect("edge exists");
        let (contracted, merge_map) = g.contract_edge(u, v).expect("edge exists");
        let merged = r.merged(u, v, &merge_map);
        let p = self.solve(&deleted, r)?.minus(&self.solve(&contracted, &merged)?)?;
        self.memo.insert(key, p.clone());
        Some(p)
    }
}

fn delcon_poly<R: Forbidden>(g: &Graph, r: &R) -> IntPoly {
    match DelCon::<R, Small>::new().solve(g, r) {
        Some(Small(c)) => IntPoly::from_coeffs(c.into_iter().map(BigInt::from).collect()),
        None => DelCon::<R, IntPoly>::new().solve(g, r).expect("big integers do not overflow"),
    }
}

/// `π_r(G, x)` by deletion/contraction with the edgeless base case
/// `∏ (x - |r(v)|)`. The contracted vertex forbids `r(u) ∪ r(v)`.
pub fn rcp_delcon(g: &Graph, r: &Restraint) -> Result<RestrainedPoly> {
    r.check_graph(g)?;
    let poly = match ColourMasks::from_restraint(r) {
        Some(masks) => delcon_poly(g, &masks),
        None => delcon_poly(g, r),
    };
    Ok(RestrainedPoly { poly, threshold: r.max_colour() })
}

/// `π_r(G, x)` by Lagrange interpolation of [`brute_counts`] at the `n + 1`
/// integers starting from the threshold.
pub fn rcp_interpolate(g: &Graph, r: &Restraint) -> Result<RestrainedPoly> {
    let threshold = r.max_colour();
    let counts = brute_counts(g, r, threshold as u64, g.n() + 1)?;
    let poly = IntPoly::interpolate_consecutive(threshold as i64, &counts)?;
    Ok(RestrainedPoly { poly, threshold })
}

/// The ordinary chromatic polynomial.
pub fn chromatic_polynomial(g: &Graph) -> IntPoly {
    rcp_delcon(g, &Restraint::empty(g.n())).expect("sizes match").poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Restraint {
        s.parse().unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Plain `x^n` enumeration.
    fn naive_count(g: &Graph, r: &Restraint, x: u64) -> BigInt {
        let n = g.n();
        let mut c = vec![1u32; n];
        let mut total = 0i64;
        if x == 0 {
            return big(if n == 0 { 1 } else { 0 });
        }
        loop {
            let ok = (0..n).all(|v| !r.get(v).contains(&c[v]))
                && g.edges().iter().all(|&(a, b)| c[a] != c[b]);
            total += ok as i64;
            let mut i = 0;
            loop {
                if i == n {
                    return big(total);
                }
                c[i] += 1;
                if c[i] as u64 <= x {
                    break;
                }
                c[i] = 1;
                i += 1;
            }
        }
    }

    #[test]
    fn counting_examples() {
        let c3 = Graph::complete(3).unwrap();
        assert_eq!(brute_count(&c3, &r("1;1;1"), 4).unwrap(), big(6));
        assert_eq!(brute_count(&c3, &r(";;"), 0).unwrap(), big(0));
        assert_eq!(brute_count(&c3, &r("1;2;3"), 3).unwrap(), big(2));
        assert_eq!(brute_count(&Graph::edgeless(0).unwrap(), &Restraint::empty(0), 0).unwrap(), big(1));
        assert!(brute_count(&c3, &r("1;1"), 4).is_err());
    }

    #[test]
    fn counting_agrees_with_naive_enumeration() {
        let graphs = [
            Graph::complete(3).unwrap(),
            Graph::path(4).unwrap(),
            Graph::cycle(4).unwrap(),
            Graph::edgeless(3).unwrap(),
            Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap(),
        ];
        let restraints = ["1;1;1;2", "1,2;3;;5", ";;;", "2;1;2;1", "4;4;1,4;2"];
        for g in &graphs {
            for s in restraints {
                let rr = r(s).restrict(&(0..g.n()).collect::<Vec<_>>());
                for x in 0..=6 {
                    assert_eq!(brute_count(g, &rr, x).unwrap(), naive_count(g, &rr, x), "{g:?} {s} x={x}");
                }
                let batch = brute_counts(g, &rr, 0, 7).unwrap();
                let single: Vec<_> = (0..7).map(|x| naive_count(g, &rr, x)).collect();
                assert_eq!(batch, single);
            }
        }
    }

    #[test]
    fn fixed_colour_counts() {
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(count_with_fixed_colour(&k2, &r(";"), 1, 1, 3).unwrap(), big(2));
        assert_eq!(count_with_fixed_colour(&k2, &r("2;1"), 1, 1, 3).unwrap(), big(0));
        // T' = edge v-w restrained [{2},{1}]; fix v to colour 1
        assert_eq!(count_with_fixed_colour(&k2, &r("2;1"), 0, 1, 3).unwrap(), big(2));
        assert_eq!(count_with_fixed_colour(&k2, &r("2;1"), 0, 4, 3).unwrap(), big(0));
    }

    #[test]
    fn delcon_examples() {
        let e2 = Graph::edgeless(2).unwrap();
        let p = rcp_delcon(&e2, &r("1;1,2")).unwrap();
        assert_eq!(p.poly, IntPoly::from_i64(&[2, -3, 1]));
        assert_eq!(p.threshold, 2);

        let c3 = Graph::complete(3).unwrap();
        assert_eq!(rcp_delcon(&c3, &r("1;2;1")).unwrap().poly, IntPoly::from_i64(&[-10, 13, -6, 1]));
        let p3 = Graph::path(3).unwrap();
        let alt = rcp_delcon(&p3, &r("1;2;1")).unwrap();
        assert_eq!(alt.poly, IntPoly::from_i64(&[-7, 10, -5, 1]));
        assert_eq!(alt.evaluate(3), big(5));
    }

    #[test]
    fn interpolation_examples() {
        let k1 = Graph::edgeless(1).unwrap();
        let p = rcp_interpolate(&k1, &r("5")).unwrap();
        assert_eq!((p.poly, p.threshold), (IntPoly::x_minus(1), 5));
        let c3 = Graph::complete(3).unwrap();
        assert_eq!(rcp_interpolate(&c3, &r("1;1;1")).unwrap().poly, IntPoly::from_i64(&[-6, 11, -6, 1]));
        let k2 = Graph::complete(2).unwrap();
        assert_eq!(brute_counts(&k2, &r("1;2"), 2, 3).unwrap(), vec![big(1), big(3), big(7)]);
        assert_eq!(rcp_interpolate(&k2, &r("1;2")).unwrap().poly, IntPoly::from_i64(&[3, -3, 1]));
    }

    #[test]
    fn chromatic_polynomials() {
        assert_eq!(chromatic_polynomial(&Graph::complete(2).unwrap()), IntPoly::from_i64(&[0, -1, 1]));
        assert_eq!(chromatic_polynomial(&Graph::edgeless(3).unwrap()), IntPoly::from_i64(&[0, 0, 0, 1]));
        let c4 = chromatic_polynomial(&Graph::cycle(4).unwrap());
        // (x-1)^4 + (x-1)
        assert_eq!(c4, IntPoly::from_i64(&[0, -3, 6, -4, 1]));
    }

    #[test]
    fn many_distinct_colours_take_the_set_path() {
        let g = Graph::path(3).unwrap();
        let wide = Restraint::new(vec![(1..=40).collect(), (30..=80).collect(), [2, 90].into()]).unwrap();
        let p = rcp_delcon(&g, &wide).unwrap();
        assert!(ColourMasks::from_restraint(&wide).is_none());
        assert_eq!(p, rcp_interpolate(&g, &wide).unwrap());
        assert_eq!(p.threshold, 90);
    }

    #[test]
    fn overflowing_fast_path_falls_back_to_big_integers() {
        let g = Graph::path(2).unwrap();
        let huge = [u32::MAX as usize; 2];
        let big_sizes = [1usize << 62, 1usize << 62, 1usize << 62];
        assert!(Small::edgeless(&huge).is_some());
        assert!(Small::edgeless(&big_sizes).is_none());
        let exact = <IntPoly as Coeffs>::edgeless(&big_sizes).unwrap();
        assert_eq!(exact.coeff(0), -(BigInt::from(1u64 << 62).pow(3)));
        let p = rcp_delcon(&g, &r("1;2")).unwrap();
        assert_eq!(p.poly, IntPoly::from_i64(&[3, -3, 1]));
    }

    #[test]
    fn sign_check() {
        let p = RestrainedPoly { poly: IntPoly::from_i64(&[-7, 10, -5, 1]), threshold: 2 };
        assert!(p.signs_alternate());
        let q = RestrainedPoly { poly: IntPoly::from_i64(&[7, 10, -5, 1]), threshold: 2 };
        assert!(!q.signs_alternate());
    }
}
