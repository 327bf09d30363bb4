//! Exhaustive extremal searches over canonical standard simple restraints,
//! and verifiers for the extremal statements about complete graphs, trees and
//! bipartite graphs.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering as AtomicOrdering};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::catalog::CatalogEntry;
use crate::error::{Error, Result};
use crate::graph::{labelled_trees, to_graph6, Graph};
use crate::poly::IntPoly;
use crate::rcp::{brute_count, rcp_delcon, RestrainedPoly};
use crate::restraint::{alternating_restraint, bell, enumerate_canonical_simple, ColourSet, Restraint, Rgs};

/// Default cap on the order of graphs searched exhaustively.
pub const DEFAULT_MAX_N: usize = 8;
/// Pointwise checks run over `[bound, bound + WINDOW]`.
pub const WINDOW: u64 = 10;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Max,
    Min,
}

impl std::str::FromStr for Direction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Direction::Max),
            "min" => Ok(Direction::Min),
            other => Err(Error::Restraint(format!("direction must be max or min, got {other:?}"))),
        }
    }
}

fn ser_bigint<S: Serializer>(v: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v.to_i64() {
        Some(i) => s.serialize_i64(i),
        None => s.collect_str(v),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Winner {
    pub rgs: Rgs,
    pub restraint: Restraint,
    pub poly: RestrainedPoly,
    pub is_alternating: bool,
    pub is_proper_colouring: bool,
    pub colours_used: usize,
    pub is_minimal_colouring: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtremalReport {
    pub graph6: String,
    pub n: usize,
    pub direction: Direction,
    pub chromatic_number: usize,
    /// Bell(n), the number of canonical simple restraints searched.
    pub search_space: u64,
    pub winners: Vec<Winner>,
    /// Past this integer every winner strictly beats every non-tied competitor.
    #[serde(serialize_with = "ser_bigint")]
    pub witness_bound: BigInt,
}

impl ExtremalReport {
    pub fn contains(&self, rgs: &Rgs) -> bool {
        self.winners.iter().any(|w| &w.rgs == rgs)
    }

    pub fn has_minimal_colouring(&self) -> bool {
        self.winners.iter().any(|w| w.is_minimal_colouring)
    }
}

/// Least `k >= 1` admitting a proper `k`-colouring (0 for the empty graph).
pub fn chromatic_number(g: &Graph) -> usize {
    if g.n() == 0 {
        return 0;
    }
    let empty = Restraint::empty(g.n());
    (1..=g.n())
        .find(|&k| !brute_count(g, &empty, k as u64).expect("sizes match").is_zero())
        .expect("n colours always suffice")
}

fn is_proper(g: &Graph, colours: &[u32]) -> bool {
    g.edges().iter().all(|&(u, v)| colours[u] != colours[v])
}

fn distinct(colours: &[u32]) -> usize {
    colours.iter().collect::<BTreeSet<_>>().len()
}

/// Whether the single forbidden colours of `r` form a proper colouring of
/// `g` with exactly `χ(g)` colours.
pub fn is_minimal_colouring(g: &Graph, r: &Restraint) -> Result<bool> {
    r.check_graph(g)?;
    let colours = r
        .simple_colours()
        .ok_or_else(|| Error::Restraint("not a standard simple restraint".into()))?;
    Ok(is_proper(g, &colours) && distinct(&colours) == chromatic_number(g))
}

/// Canonical forms of every alternating restraint: per component, one side
/// forbids colour 1 and the other colour 2, with the first component fixed.
pub fn alternating_variants(g: &Graph) -> Result<Vec<Rgs>> {
    let base = alternating_restraint(g)?;
    let colours = base.simple_colours().expect("alternating restraints are simple");
    let comps = g.connected_components();
    let mut out = BTreeSet::new();
    for mask in 0u64..1 << comps.len().saturating_sub(1) {
        let mut c = colours.clone();
        for (i, comp) in comps.iter().enumerate().skip(1) {
            if mask >> (i - 1) & 1 == 1 {
                for &v in comp {
                    c[v] = 3 - c[v];
                }
            }
        }
        out.insert(Restraint::simple(&c)?.canonical_rgs().expect("simple"));
    }
    Ok(out.into_iter().collect())
}

/// Every canonical simple restraint with its polynomial, in RGS order.
pub fn all_simple_polys(g: &Graph) -> Result<Vec<(Rgs, RestrainedPoly)>> {
    let all: Vec<Rgs> = enumerate_canonical_simple(g.n()).collect();
    all.into_par_iter()
        .map(|rgs| {
            let p = rcp_delcon(g, &rgs.to_restraint())?;
            Ok((rgs, p))
        })
        .collect()
}

/// All eventual-order maximizers (or minimizers) among the canonical simple
/// restraints of `g`, reported as a full tie class in RGS order.
pub fn extremal_restraints(g: &Graph, direction: Direction) -> Result<ExtremalReport> {
    extremal_restraints_limited(g, direction, DEFAULT_MAX_N)
}

pub fn extremal_restraints_limited(g: &Graph, direction: Direction, max_n: usize) -> Result<ExtremalReport> {
    if g.n() > max_n {
        return Err(Error::TooLarge { n: g.n(), limit: max_n });
    }
    let polys = all_simple_polys(g)?;
    Ok(report_from_polys(g, direction, &polys))
}

fn report_from_polys(g: &Graph, direction: Direction, polys: &[(Rgs, RestrainedPoly)]) -> ExtremalReport {
    let better = |a: &IntPoly, b: &IntPoly| match direction {
        Direction::Max => a.eventually_compare(b),
        Direction::Min => b.eventually_compare(a),
    };
    let best = polys
        .iter()
        .map(|(_, p)| &p.poly)
        .reduce(|a, b| if better(b, a) == Ordering::Greater { b } else { a })
        .cloned()
        .unwrap_or_else(IntPoly::one);
    let chi = chromatic_number(g);
    let alternating: Vec<Rgs> = alternating_variants(g).unwrap_or_default();
    let winners = polys
        .iter()
        .filter(|(_, p)| p.poly == best)
        .map(|(rgs, p)| {
            let colours = rgs.colours();
            let proper = is_proper(g, &colours);
            let used = rgs.blocks();
            Winner {
                rgs: rgs.clone(),
                restraint: rgs.to_restraint(),
                poly: p.clone(),
                is_alternating: alternating.contains(rgs),
                is_proper_colouring: proper,
                colours_used: used,
                is_minimal_colouring: proper && used == chi,
            }
        })
        .collect();
    let witness_bound = polys
        .iter()
        .filter(|(_, p)| p.poly != best)
        .map(|(_, p)| best.witness_bound(&p.poly))
        .max()
        .unwrap_or_else(|| BigInt::from(2));
    ExtremalReport {
        graph6: to_graph6(g).unwrap_or_default(),
        n: g.n(),
        direction,
        chromatic_number: chi,
        search_space: bell(g.n()),
        winners,
        witness_bound,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Counterexample {
    pub graph6: String,
    pub restraint: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub claim: String,
    pub holds: bool,
    /// Number of (graph, restraint) instances checked.
    pub instances: u64,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
}

impl Verdict {
    fn new(claim: &str, instances: u64, mut counterexamples: Vec<Counterexample>, notes: Vec<String>, fail_fast: bool) -> Self {
        counterexamples.sort();
        counterexamples.dedup();
        if fail_fast {
            counterexamples.truncate(1);
        }
        Verdict {
            claim: claim.to_string(),
            holds: counterexamples.is_empty(),
            instances,
            counterexamples,
            notes,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchOptions {
    /// Stop scheduling new work after the first counterexample.
    pub fail_fast: bool,
}

struct Stop<'a> {
    flag: AtomicBool,
    opts: &'a SearchOptions,
}

impl<'a> Stop<'a> {
    fn new(opts: &'a SearchOptions) -> Self {
        Stop { flag: AtomicBool::new(false), opts }
    }

    fn halted(&self) -> bool {
        self.opts.fail_fast && self.flag.load(AtomicOrdering::Relaxed)
    }

    fn record(&self, found: &[Counterexample]) {
        if !found.is_empty() {
            self.flag.store(true, AtomicOrdering::Relaxed);
        }
    }
}

fn g6(g: &Graph) -> String {
    to_graph6(g).unwrap_or_default()
}

/// Rainbow restraint `r'(v_i) = i` weakly maximizes on `K_n`: eventually and
/// at every integer in `[n, n + 10]`.
pub fn verify_theorem1(n: usize, opts: &SearchOptions) -> Result<Verdict> {
    let kn = Graph::complete(n)?;
    let rainbow = rcp_delcon(&kn, &Rgs::rainbow(n).to_restraint())?;
    let polys = all_simple_polys(&kn)?;
    let mut found = Vec::new();
    let mut ties = Vec::new();
    for (rgs, p) in &polys {
        match rainbow.poly.eventually_compare(&p.poly) {
            Ordering::Less => found.push(Counterexample {
                graph6: g6(&kn),
                restraint: rgs.to_restraint().to_string(),
                detail: format!("eventually exceeds rainbow: {} vs {}", p.poly, rainbow.poly),
            }),
            Ordering::Equal if *rgs != Rgs::rainbow(n) => ties.push(rgs.to_string()),
            _ => {}
        }
        for x in n as u64..=n as u64 + WINDOW {
            if p.evaluate(x) > rainbow.evaluate(x) {
                found.push(Counterexample {
                    graph6: g6(&kn),
                    restraint: rgs.to_restraint().to_string(),
                    detail: format!("exceeds rainbow at x = {x}"),
                });
            }
        }
        if opts.fail_fast && !found.is_empty() {
            break;
        }
    }
    let notes = vec![if ties.is_empty() {
        "rainbow class is the unique maximizer".to_string()
    } else {
        format!("classes tied with rainbow: {}", ties.join(", "))
    }];
    Ok(Verdict::new(&format!("theorem1 n={n}"), polys.len() as u64, found, notes, opts.fail_fast))
}

/// On every labelled tree of order `n`, every non-alternating canonical
/// simple restraint is strictly beaten by the alternating one, eventually and
/// at every integer in `[n, n + 10]`.
pub fn verify_theorem2(n: usize, opts: &SearchOptions) -> Result<Verdict> {
    if n < 2 {
        return Err(Error::Restraint("tree verification needs n >= 2".into()));
    }
    let classes: Vec<Rgs> = enumerate_canonical_simple(n).collect();
    let trees: Vec<Graph> = labelled_trees(n).collect();
    let stop = Stop::new(opts);
    let found: Vec<Counterexample> = trees
        .par_iter()
        .map(|t| {
            if stop.halted() {
                return Ok(Vec::new());
            }
            let found = check_tree_maximizer(t, &classes, n as u64)?;
            stop.record(&found);
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let instances = (trees.len() * classes.len()) as u64;
    let notes = vec![format!("{} labelled trees x {} restraint classes", trees.len(), classes.len())];
    Ok(Verdict::new(&format!("theorem2 n={n}"), instances, found, notes, opts.fail_fast))
}

fn check_tree_maximizer(t: &Graph, classes: &[Rgs], lo: u64) -> Result<Vec<Counterexample>> {
    let alt_rgs = alternating_restraint(t)?.canonical_rgs().expect("simple");
    let alt = rcp_delcon(t, &alt_rgs.to_restraint())?;
    let mut found = Vec::new();
    for rgs in classes {
        let p = rcp_delcon(t, &rgs.to_restraint())?;
        let mut fail = |detail: String| {
            found.push(Counterexample { graph6: g6(t), restraint: rgs.to_restraint().to_string(), detail })
        };
        if *rgs == alt_rgs {
            if p != alt {
                fail("alternating polynomial mismatch".into());
            }
            continue;
        }
        if alt.poly.eventually_compare(&p.poly) != Ordering::Greater {
            fail(format!("not eventually below alternating: {} vs {}", p.poly, alt.poly));
        }
        for x in lo..=lo + WINDOW {
            if p.evaluate(x) >= alt.evaluate(x) {
                fail(format!("not strictly below alternating at x = {x}"));
            }
        }
    }
    Ok(found)
}

/// 2-restraints on `n` vertices with colours from `[n]`, at most one vertex
/// forbidding two colours, one representative per colour-permutation class.
pub fn lemma_restraints(n: usize) -> Vec<Restraint> {
    let colours = n as u32;
    let singles: Vec<ColourSet> = std::iter::once(ColourSet::new())
        .chain((1..=colours).map(|c| ColourSet::from([c])))
        .collect();
    let pairs: Vec<ColourSet> = (1..=colours)
        .flat_map(|a| (a + 1..=colours).map(move |b| ColourSet::from([a, b])))
        .collect();
    let mut out = BTreeSet::new();
    let mut sets = vec![ColourSet::new(); n];
    fn fill(
        pos: usize,
        doubled: bool,
        sets: &mut Vec<ColourSet>,
        singles: &[ColourSet],
        pairs: &[ColourSet],
        out: &mut BTreeSet<Restraint>,
    ) {
        if pos == sets.len() {
            let r = Restraint::new(sets.clone()).expect("positive colours");
            out.insert(canonical_lemma_form(&r));
            return;
        }
        for s in singles {
            sets[pos] = s.clone();
            fill(pos + 1, doubled, sets, singles, pairs, out);
        }
        if !doubled {
            for s in pairs {
                sets[pos] = s.clone();
                fill(pos + 1, true, sets, singles, pairs, out);
            }
        }
    }
    if n > 0 {
        fill(0, false, &mut sets, &singles, &pairs, &mut out);
    }
    out.into_iter().collect()
}

/// Colours relabelled by first appearance; when a set introduces two new
/// colours at once both orders are tried and the smaller result kept.
fn canonical_lemma_form(r: &Restraint) -> Restraint {
    fn relabel(r: &Restraint, flip: bool) -> Restraint {
        let mut map: Vec<(u32, u32)> = Vec::new();
        let lookup = |map: &Vec<(u32, u32)>, c: u32| map.iter().find(|(a, _)| *a == c).map(|(_, b)| *b);
        for s in r.sets() {
            let mut fresh: Vec<u32> = s.iter().copied().filter(|&c| lookup(&map, c).is_none()).collect();
            if flip && fresh.len() == 2 {
                fresh.reverse();
            }
            for c in fresh {
                let next = map.len() as u32 + 1;
                map.push((c, next));
            }
        }
        r.permute_colours(|c| lookup(&map, c).expect("every colour mapped"))
    }
    relabel(r, false).min(relabel(r, true))
}

/// Positivity of `π_r(T, max(3, n))` for every labelled tree of order `n` and
/// every restraint from [`lemma_restraints`].
pub fn verify_lemma_trees(n: usize, opts: &SearchOptions) -> Result<Verdict> {
    if n == 0 {
        return Err(Error::Restraint("lemma verification needs n >= 1".into()));
    }
    let restraints = lemma_restraints(n);
    let trees: Vec<Graph> = labelled_trees(n).collect();
    let k = n.max(3) as u64;
    let stop = Stop::new(opts);
    let found: Vec<Counterexample> = trees
        .par_iter()
        .map(|t| {
            if stop.halted() {
                return Ok(Vec::new());
            }
            let mut found = Vec::new();
            for r in &restraints {
                if brute_count(t, r, k)?.is_zero() {
                    found.push(Counterexample {
                        graph6: g6(t),
                        restraint: r.to_string(),
                        detail: format!("no permitted colouring at k = {k}"),
                    });
                }
            }
            stop.record(&found);
            Ok(found)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let notes = vec![format!("{} labelled trees x {} restraint classes, k = {k}", trees.len(), restraints.len())];
    let instances = (trees.len() * restraints.len()) as u64;
    Ok(Verdict::new(&format!("lemma n={n}"), instances, found, notes, opts.fail_fast))
}

/// The constant restraint is among the eventual minimizers on every graph.
pub fn verify_min_is_constant(catalog: &[CatalogEntry], opts: &SearchOptions) -> Result<Verdict> {
    let stop = Stop::new(opts);
    let found: Vec<Counterexample> = catalog
        .par_iter()
        .map(|e| {
            if stop.halted() {
                return Ok(None);
            }
            let report = extremal_restraints(&e.graph, Direction::Min)?;
            let constant = Rgs::constant(e.graph.n());
            let bad = (!report.contains(&constant)).then(|| Counterexample {
                graph6: e.id.clone(),
                restraint: constant.to_restraint().to_string(),
                detail: format!(
                    "minimizers are {}",
                    report.winners.iter().map(|w| w.rgs.to_string()).collect::<Vec<_>>().join(", ")
                ),
            });
            stop.record(bad.as_slice());
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let instances = catalog.iter().map(|e| bell(e.graph.n())).sum();
    Ok(Verdict::new("min-constant", instances, found, Vec::new(), opts.fail_fast))
}

/// Some alternating restraint lies in the eventual maximizer class of every
/// bipartite graph in the catalog.
pub fn check_conjecture_bipartite(catalog: &[CatalogEntry], opts: &SearchOptions) -> Result<Verdict> {
    if let Some(e) = catalog.iter().find(|e| !e.graph.is_bipartite()) {
        return Err(Error::Catalog(format!("{}: {}", e.id, Error::NotBipartite)));
    }
    let stop = Stop::new(opts);
    let found: Vec<Counterexample> = catalog
        .par_iter()
        .map(|e| {
            if stop.halted() {
                return Ok(None);
            }
            let report = extremal_restraints(&e.graph, Direction::Max)?;
            let bad = (!report.winners.iter().any(|w| w.is_alternating)).then(|| Counterexample {
                graph6: e.id.clone(),
                restraint: alternating_restraint(&e.graph).map(|r| r.to_string()).unwrap_or_default(),
                detail: format!(
                    "maximizers are {}",
                    report.winners.iter().map(|w| w.rgs.to_string()).collect::<Vec<_>>().join(", ")
                ),
            });
            stop.record(bad.as_slice());
            Ok(bad)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let instances = catalog.iter().map(|e| bell(e.graph.n())).sum();
    let disconnected = catalog.iter().filter(|e| !e.graph.is_connected()).count();
    let mut notes = vec![format!("{} bipartite graphs", catalog.len())];
    if disconnected > 0 {
        notes.push(format!("{disconnected} disconnected: every per-component colour swap tried"));
    }
    Ok(Verdict::new("conjecture", instances, found, notes, opts.fail_fast))
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyFinding {
    pub graph6: String,
    pub report: ExtremalReport,
}

/// Graphs whose whole eventual-maximizer class contains no minimal colouring.
pub fn survey_non_minimal_maximizers(catalog: &[CatalogEntry]) -> Result<Vec<SurveyFinding>> {
    let reports = catalog
        .par_iter()
        .map(|e| Ok((e.id.clone(), extremal_restraints(&e.graph, Direction::Max)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(reports
        .into_iter()
        .filter(|(_, r)| !r.has_minimal_colouring())
        .map(|(graph6, report)| SurveyFinding { graph6, report })
        .collect())
}

/// Forbidden colours of the two restraints compared on the 6-vertex example.
pub const FIGURE_WIDE: [u32; 6] = [1, 2, 3, 1, 2, 4];
pub const FIGURE_PROPER: [u32; 6] = [1, 2, 3, 1, 2, 3];

#[derive(Clone, Debug, Serialize)]
pub struct FigureMatch {
    /// Catalog record.
    pub graph6: String,
    pub chromatic_number: usize,
    /// Each labelling maps catalog vertex `v` to position `labelling[v]` of
    /// the restraint lists.
    pub labellings: Vec<Vec<usize>>,
    /// The graph relabelled by the first labelling, so vertex `i` carries
    /// colour `FIGURE_WIDE[i]` / `FIGURE_PROPER[i]`.
    pub relabelled_graph6: String,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    fn heap(k: usize, a: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(a.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, a, out);
            let j = if k % 2 == 0 { i } else { 0 };
            a.swap(j, k - 1);
        }
    }
    heap(n, &mut current, &mut out);
    out.sort();
    out
}

/// The two restraints placed on `g` by `labelling`, as `(wide, proper)`.
pub fn figure_restraints(labelling: &[usize]) -> Result<(Restraint, Restraint)> {
    let wide = Restraint::simple(&FIGURE_WIDE)?.reorder(labelling);
    let proper = Restraint::simple(&FIGURE_PROPER)?.reorder(labelling);
    Ok((wide, proper))
}

/// Connected 6-vertex catalog graphs with `χ = 3` on which some labelling
/// makes `π_wide - π_proper = (x - 3)^2`.
pub fn reconstruct_figure_graph(catalog: &[CatalogEntry]) -> Result<Vec<FigureMatch>> {
    let target = &IntPoly::x_minus(3) * &IntPoly::x_minus(3);
    let perms = permutations(6);
    let candidates: Vec<&CatalogEntry> = catalog
        .iter()
        .filter(|e| e.graph.n() == 6 && e.graph.is_connected() && chromatic_number(&e.graph) == 3)
        .collect();
    let matches = candidates
        .par_iter()
        .map(|e| {
            let mut labellings = Vec::new();
            for perm in &perms {
                let (wide, proper) = figure_restraints(perm)?;
                let diff = &rcp_delcon(&e.graph, &wide)?.poly - &rcp_delcon(&e.graph, &proper)?.poly;
                if diff == target {
                    labellings.push(perm.clone());
                }
            }
            if labellings.is_empty() {
                return Ok(None);
            }
            let relabelled = e.graph.relabel(&labellings[0])?;
            Ok(Some(FigureMatch {
                graph6: e.id.clone(),
                chromatic_number: 3,
                relabelled_graph6: to_graph6(&relabelled)?,
                labellings,
            }))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(matches.into_iter().flatten().collect())
}
