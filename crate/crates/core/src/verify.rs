//! Seeded property campaigns for the resistance identities and the
//! inequality claimed for each graph surgery.
//!
//! Every campaign draws its own instances from a ChaCha stream derived from
//! the run seed and the campaign index, so reports are reproducible and do
//! not depend on how campaigns are scheduled.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::families::{
    closed_form_p, closed_form_p33, closed_form_s, closed_form_s33, make_b, make_cycle, make_p,
    make_s, Attachment, BaseVertex, BicyclicShape,
};
use crate::graph::{identify_vertices, Graph};
use crate::rational::Rational;
use crate::resistance::{
    compose_identified, cycle_closed_forms, cycle_pair_resistance, degree_resistance,
    identified_degree_resistance, invariants, report_from, resistance_matrix,
};
use crate::transforms::{
    contract_to_pendant, cycle_shrink, pi_transform, relocate_pendants, rewire_edge,
    sigma_transform, CycleSelector, Direction, TransformError, TransformOutcome,
};

pub const DEFAULT_SEED: u64 = 20_240_611;

#[derive(Debug, Clone, Serialize)]
pub struct LemmaConfig {
    /// Valid configurations per surgery campaign.
    pub instances: usize,
    /// Random graph pairs for the additivity and composition campaigns.
    pub pair_instances: usize,
    /// Random connected graphs for the solver sanity campaigns.
    pub sanity_instances: usize,
    pub tree_instances: usize,
    /// Cycles `C_3 ..= C_max_cycle` are checked against their closed forms.
    pub max_cycle: usize,
    /// Let the star-to-path campaign draw single-pendant stars, which are
    /// counted as equalities rather than strict increases.
    pub include_single_pendant: bool,
}

impl Default for LemmaConfig {
    fn default() -> Self {
        LemmaConfig {
            instances: 200,
            pair_instances: 100,
            sanity_instances: 200,
            tree_instances: 100,
            max_cycle: 30,
            include_single_pendant: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub before: Graph,
    pub after: Option<Graph>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub name: String,
    /// Informational suites record an observation; they do not gate the run.
    pub informational: bool,
    pub checked: usize,
    pub strict: usize,
    pub equal: usize,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.informational || s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Tallies one campaign; the first failure is kept as the counterexample.
struct Tally {
    report: SuiteReport,
}

impl Tally {
    fn new(name: &str) -> Self {
        Tally {
            report: SuiteReport {
                name: name.to_string(),
                informational: false,
                checked: 0,
                strict: 0,
                equal: 0,
                passed: true,
                counterexample: None,
            },
        }
    }

    fn fail(&mut self, before: &Graph, after: Option<&Graph>, detail: String) {
        self.report.passed = false;
        if self.report.counterexample.is_none() {
            self.report.counterexample = Some(Counterexample {
                before: before.clone(),
                after: after.cloned(),
                detail,
            });
        }
    }

    /// Records an identity check.
    fn identity(&mut self, g: &Graph, ok: bool, detail: impl FnOnce() -> String) {
        self.report.checked += 1;
        if ok {
            self.report.equal += 1;
        } else {
            self.fail(g, None, detail());
        }
    }

    /// Records a surgery outcome against the expected direction.
    fn outcome(&mut self, out: &TransformOutcome, expected: Direction) {
        self.report.checked += 1;
        match out.direction {
            Direction::Equal => self.report.equal += 1,
            _ => self.report.strict += 1,
        }
        if out.direction != expected {
            self.fail(
                &out.before,
                Some(&out.after),
                format!(
                    "expected {expected:?}, got {:?} ({} -> {})",
                    out.direction, out.dr_before, out.dr_after
                ),
            );
        }
    }

    fn error(&mut self, g: &Graph, err: TransformError) {
        self.report.checked += 1;
        self.fail(
            g,
            None,
            format!("transform rejected a generated instance: {err}"),
        );
    }

    fn finish(self) -> SuiteReport {
        self.report
    }
}

fn suite_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

type Campaign = fn(&LemmaConfig, &mut ChaCha8Rng) -> SuiteReport;

const CAMPAIGNS: &[(&str, Campaign)] = &[
    ("cycle-closed-forms", cycle_forms),
    ("cut-vertex-additivity", cut_vertex_additivity),
    ("composition", composition),
    ("sigma-star-move", sigma_campaign),
    ("pendant-relocation", relocation_campaign),
    ("pi-star-to-path", pi_campaign),
    ("path-reattachment", reattach_campaign),
    ("path-reattachment-literal", reattach_literal_campaign),
    ("path-contraction", contraction_campaign),
    ("path-splice", splice_campaign),
    ("cycle-shrink-shared", shrink_shared_campaign),
    ("cycle-shrink-joined", shrink_joined_campaign),
    ("foster-identity", foster_campaign),
    ("rayleigh-monotonicity", rayleigh_campaign),
    ("tree-degeneration", tree_campaign),
];

pub fn campaign_names() -> impl Iterator<Item = &'static str> {
    CAMPAIGNS.iter().map(|(name, _)| *name)
}

/// Runs every campaign. The report is a pure function of `config` and `seed`.
pub fn verify_lemmas(config: &LemmaConfig, seed: u64) -> LemmaReport {
    let suites = CAMPAIGNS
        .par_iter()
        .enumerate()
        .map(|(i, (_, campaign))| campaign(config, &mut suite_rng(seed, i as u64)))
        .collect();
    LemmaReport { seed, suites }
}

/// Runs one campaign by name, with the same stream it gets inside
/// [`verify_lemmas`].
pub fn verify_campaign(name: &str, config: &LemmaConfig, seed: u64) -> Option<SuiteReport> {
    let i = CAMPAIGNS.iter().position(|(n, _)| *n == name)?;
    Some((CAMPAIGNS[i].1)(config, &mut suite_rng(seed, i as u64)))
}

pub fn random_tree_edges(rng: &mut impl Rng, size: usize) -> Vec<(usize, usize)> {
    (1..size).map(|i| (rng.gen_range(0..i), i)).collect()
}

/// A random spanning tree plus up to `max_extra` random chords.
pub fn random_connected(rng: &mut impl Rng, n: usize, max_extra: usize) -> Graph {
    let mut edges = random_tree_edges(rng, n);
    let extra = rng.gen_range(0..=max_extra);
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let e = (a.min(b), a.max(b));
        if a != b && !edges.iter().any(|&(x, y)| (x.min(y), x.max(y)) == e) {
            edges.push(e);
        }
    }
    Graph::new(n, &edges).expect("generated edges are simple")
}

fn random_perm(rng: &mut impl Rng, n: usize) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn cycle_forms(config: &LemmaConfig, _: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("cycle-closed-forms");
    for k in 3..=config.max_cycle.max(3) {
        let g = make_cycle(k).expect("k >= 3");
        let res = resistance_matrix(&g).expect("cycles are connected");
        let inv = report_from(&g, &res);
        let forms = cycle_closed_forms(k).expect("k >= 3");
        let mut ok = inv.kirchhoff == forms.kf
            && inv.degree_resistance == forms.dr
            && inv
                .per_vertex
                .iter()
                .all(|s| s.kf == forms.kf_v && s.dv == forms.d_v);
        for i in 0..k {
            for j in i + 1..k {
                ok &= *res.get(i, j)
                    == cycle_pair_resistance(k, i + 1, j + 1).expect("valid positions");
            }
        }
        t.identity(&g, ok, || format!("closed forms disagree on C_{k}"));
    }
    t.finish()
}

fn cut_vertex_additivity(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("cut-vertex-additivity");
    for _ in 0..config.pair_instances {
        let n1 = rng.gen_range(2..=7);
        let n2 = rng.gen_range(2..=7);
        let g1 = random_connected(rng, n1, n1);
        let g2 = random_connected(rng, n2, n2);
        let (u1, u2) = (rng.gen_range(0..n1), rng.gen_range(0..n2));
        let (g, x) = identify_vertices(&g1, u1, &g2, u2);
        let perm = random_perm(rng, g.n());
        let h = g.relabel(&perm);
        let res = resistance_matrix(&h).expect("identified graphs are connected");
        let side1: Vec<usize> = (0..n1).filter(|&a| a != u1).map(|a| perm[a]).collect();
        let side2: Vec<usize> = (n1..g.n()).map(|b| perm[b]).collect();
        let x = perm[x];
        let bad = side1.iter().find_map(|&a| {
            side2
                .iter()
                .find(|&&b| *res.get(a, b) != res.get(a, x) + res.get(x, b))
                .map(|&b| (a, b))
        });
        t.identity(&h, bad.is_none(), || {
            let (a, b) = bad.expect("failure recorded");
            format!("r({a},{b}) differs from r({a},{x}) + r({x},{b})")
        });
    }
    t.finish()
}

fn composition(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("composition");
    for _ in 0..config.pair_instances {
        let n1 = rng.gen_range(1..=8);
        let n2 = rng.gen_range(1..=8);
        let g1 = random_connected(rng, n1, n1);
        let g2 = random_connected(rng, n2, n2);
        let (u1, u2) = (rng.gen_range(0..n1), rng.gen_range(0..n2));
        let formula = compose_identified(&g1, u1, &g2, u2).expect("connected pieces");
        let direct = identified_degree_resistance(&g1, u1, &g2, u2).expect("connected pieces");
        let (g, _) = identify_vertices(&g1, u1, &g2, u2);
        t.identity(&g, formula == direct, || {
            format!("formula {formula} vs direct {direct}")
        });
    }
    t.finish()
}

/// Distinct base vertices of a shape, each named once.
fn base_sites(p: usize, q: usize, m: usize) -> Vec<BaseVertex> {
    let mut sites: Vec<BaseVertex> = (0..p).map(BaseVertex::Cycle1).collect();
    let first = if m == 0 { 1 } else { 0 };
    sites.extend((first..q).map(BaseVertex::Cycle2));
    sites.extend((1..m).map(BaseVertex::Path));
    sites
}

fn star_edges(s: usize) -> Vec<(usize, usize)> {
    (1..=s).map(|i| (0, i)).collect()
}

fn path_edges(len: usize) -> Vec<(usize, usize)> {
    (1..=len).map(|i| (i - 1, i)).collect()
}

/// A built instance after a random relabeling, with a map from shape
/// indices to the relabeled graph.
struct Instance {
    graph: Graph,
    perm: Vec<usize>,
}

impl Instance {
    fn new(rng: &mut impl Rng, shape: &BicyclicShape) -> Instance {
        let g = make_b(shape).expect("generated shapes are valid");
        let perm = random_perm(rng, g.n());
        Instance {
            graph: g.relabel(&perm),
            perm,
        }
    }

    fn at(&self, v: usize) -> usize {
        self.perm[v]
    }
}

fn index(shape: &BicyclicShape, at: BaseVertex) -> usize {
    shape.base_index(at).expect("site drawn from the shape")
}

/// The pendant-star setting shared by the star-moving and star-to-path
/// surgeries: two cycles sharing a vertex, and a vertex `v` hanging off a
/// cycle vertex `u` with `s` pendants. Returns the shape and the index of `v`.
fn star_shape(rng: &mut impl Rng, s: usize) -> (BicyclicShape, usize) {
    let p = rng.gen_range(3..=5);
    let q = rng.gen_range(3..=5);
    let u = BaseVertex::Cycle2(rng.gen_range(0..q));
    let mut tree = vec![(0, 1)];
    tree.extend((2..=s + 1).map(|i| (1, i)));
    let shape = BicyclicShape {
        p,
        q,
        m: 0,
        attachments: vec![Attachment {
            at: u,
            tree_edges: tree,
        }],
    };
    let v = shape.base_vertex_count();
    (shape, v)
}

fn sigma_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("sigma-star-move");
    for _ in 0..config.instances {
        let s = rng.gen_range(1..=3);
        let (shape, v) = star_shape(rng, s);
        let inst = Instance::new(rng, &shape);
        match sigma_transform(&inst.graph, inst.at(v)) {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), Direction::Decreased),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

fn pi_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("pi-star-to-path");
    let low = if config.include_single_pendant { 1 } else { 2 };
    // single-pendant draws come on top of the strict quota
    let mut strict_draws = 0;
    while strict_draws < config.instances {
        let s = rng.gen_range(low..=3);
        if s >= 2 {
            strict_draws += 1;
        }
        let (shape, v) = star_shape(rng, s);
        let inst = Instance::new(rng, &shape);
        let expected = if s == 1 {
            Direction::Equal
        } else {
            Direction::Increased
        };
        match pi_transform(&inst.graph, inst.at(v)) {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), expected),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

fn relocation_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("pendant-relocation");
    for _ in 0..config.instances {
        let p = rng.gen_range(3..=5);
        let q = rng.gen_range(3..=5);
        let s = rng.gen_range(1..=3);
        let u = BaseVertex::Cycle2(rng.gen_range(1..q));
        let shape = BicyclicShape {
            p,
            q,
            m: 0,
            attachments: vec![Attachment {
                at: u,
                tree_edges: star_edges(s),
            }],
        };
        let inst = Instance::new(rng, &shape);
        match relocate_pendants(&inst.graph, inst.at(index(&shape, u)), inst.at(0)) {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), Direction::Decreased),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

/// Two cycles joined by a path of `m >= 1` edges, with random trees on the
/// first cycle and the path interior. The second cycle stays bare. Returns
/// the shape, the second contact `w`, its path neighbour `a`, and a vertex
/// `u != w` of the second cycle.
fn reattach_shape(rng: &mut impl Rng) -> (BicyclicShape, usize, usize, usize) {
    let p = rng.gen_range(3..=5);
    let q = rng.gen_range(3..=5);
    let m = rng.gen_range(1..=3);
    let mut sites: Vec<BaseVertex> = (0..p)
        .map(BaseVertex::Cycle1)
        .chain((1..m).map(BaseVertex::Path))
        .collect();
    sites.shuffle(rng);
    let trees = rng.gen_range(0..=2);
    let attachments = sites
        .into_iter()
        .take(trees)
        .map(|at| {
            let size = rng.gen_range(2..=3);
            Attachment {
                at,
                tree_edges: random_tree_edges(rng, size),
            }
        })
        .collect();
    let shape = BicyclicShape {
        p,
        q,
        m,
        attachments,
    };
    let w = index(&shape, BaseVertex::Path(m));
    let a = index(&shape, BaseVertex::Path(m - 1));
    let u = index(&shape, BaseVertex::Cycle2(rng.gen_range(1..q)));
    (shape, w, a, u)
}

fn reattach_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("path-reattachment");
    for _ in 0..config.instances {
        let (shape, w, a, u) = reattach_shape(rng);
        let inst = Instance::new(rng, &shape);
        let (w, a, u) = (inst.at(w), inst.at(a), inst.at(u));
        // the edge a w is contracted into w, and a rehung as a pendant at u
        let moved =
            contract_to_pendant(&inst.graph, (w, a)).and_then(|h| rewire_edge(&h, (w, a), (u, a)));
        match moved {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), Direction::Decreased),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

/// The single rewiring `G - aw + ua` taken at face value. On a bare cycle it
/// only slides the attachment point, so equality is expected.
fn reattach_literal_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("path-reattachment-literal");
    t.report.informational = true;
    for _ in 0..config.instances {
        let (shape, w, a, u) = reattach_shape(rng);
        let inst = Instance::new(rng, &shape);
        let (w, a, u) = (inst.at(w), inst.at(a), inst.at(u));
        match rewire_edge(&inst.graph, (a, w), (u, a)) {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), Direction::Equal),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

/// Joined cycles with `n <= 10` and the given tree kind at up to three
/// base vertices.
fn joined_shape(rng: &mut impl Rng, tree: fn(usize) -> Vec<(usize, usize)>) -> BicyclicShape {
    loop {
        let p = rng.gen_range(3..=5);
        let q = rng.gen_range(3..=5);
        let m = rng.gen_range(1..=3);
        let base = p + q + m - 1;
        if base > 10 {
            continue;
        }
        let mut spare = 10 - base;
        let mut sites = base_sites(p, q, m);
        sites.shuffle(rng);
        let mut attachments = Vec::new();
        for at in sites.into_iter().take(3) {
            if spare == 0 {
                break;
            }
            let size = rng.gen_range(0..=spare.min(3));
            if size > 0 {
                attachments.push(Attachment {
                    at,
                    tree_edges: tree(size),
                });
                spare -= size;
            }
        }
        return BicyclicShape {
            p,
            q,
            m,
            attachments,
        };
    }
}

fn contraction_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("path-contraction");
    for _ in 0..config.instances {
        let shape = joined_shape(rng, star_edges);
        let i = rng.gen_range(0..shape.m);
        let (x, y) = (
            index(&shape, BaseVertex::Path(i)),
            index(&shape, BaseVertex::Path(i + 1)),
        );
        let inst = Instance::new(rng, &shape);
        let edge = if rng.gen_bool(0.5) {
            (inst.at(x), inst.at(y))
        } else {
            (inst.at(y), inst.at(x))
        };
        match contract_to_pendant(&inst.graph, edge) {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), Direction::Decreased),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

fn splice_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("path-splice");
    for _ in 0..config.instances {
        let mut shape = joined_shape(rng, path_edges);
        let m = shape.m;
        let j = rng.gen_range(0..=m);
        let wj = BaseVertex::Path(j);
        let wj_index = index(&shape, wj);
        // the hanging path at w_j, added if the draw left it bare
        let len = match shape
            .attachments
            .iter()
            .position(|a| index(&shape, a.at) == wj_index)
        {
            Some(pos) => {
                let att = shape.attachments.remove(pos);
                att.tree_edges.len()
            }
            None => rng.gen_range(1..=3),
        };
        shape.attachments.insert(
            0,
            Attachment {
                at: wj,
                tree_edges: path_edges(len),
            },
        );
        let end = shape.base_vertex_count() + len - 1;
        let (cut, keep) = if j < m { (j + 1, j) } else { (m - 1, m) };
        let cut_index = index(&shape, BaseVertex::Path(cut));
        let keep_index = index(&shape, BaseVertex::Path(keep));
        let inst = Instance::new(rng, &shape);
        let (wk, wc, u) = (inst.at(keep_index), inst.at(cut_index), inst.at(end));
        match rewire_edge(&inst.graph, (wk, wc), (u, wc)) {
            Ok(after) => t.outcome(&outcome(&inst.graph, after), Direction::Increased),
            Err(e) => t.error(&inst.graph, e),
        }
    }
    t.finish()
}

/// Cycle lengths in `{3, 4, 5}` with at least one cycle of length four or
/// more, and the vertex count. Returns `(n, p, q, selector)` where the
/// selector names a cycle of length at least four in the family numbering.
fn shrink_params(rng: &mut impl Rng, min_path: usize) -> (usize, usize, usize, usize) {
    loop {
        let p = rng.gen_range(3..=5);
        let q = rng.gen_range(3..=5);
        if p == 3 && q == 3 {
            continue;
        }
        let n = p + q - 1 + min_path + rng.gen_range(0..=3);
        let choices: Vec<usize> = [(p, 1), (q, p + 1)]
            .into_iter()
            .filter(|&(len, _)| len >= 4)
            .map(|(_, sel)| sel)
            .collect();
        let sel = *choices.choose(rng).expect("one cycle has length >= 4");
        return (n, p, q, sel);
    }
}

fn shrink_shared_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("cycle-shrink-shared");
    for _ in 0..config.instances {
        let (n, p, q, sel) = shrink_params(rng, 0);
        // in S the second cycle is 0, p, ..., p+q-2; p stands for it
        let sel = if sel == p + 1 { p } else { sel };
        let g = make_s(n, p, q).expect("valid parameters");
        let perm = random_perm(rng, n);
        let g = g.relabel(&perm);
        match cycle_shrink(&g, CycleSelector::Containing(perm[sel])) {
            Ok(after) => t.outcome(&outcome(&g, after), Direction::Decreased),
            Err(e) => t.error(&g, e),
        }
    }
    t.finish()
}

fn shrink_joined_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("cycle-shrink-joined");
    for _ in 0..config.instances {
        let (n, p, q, sel) = shrink_params(rng, 1);
        let g = make_p(n, p, q).expect("valid parameters");
        let perm = random_perm(rng, n);
        let g = g.relabel(&perm);
        match cycle_shrink(&g, CycleSelector::Containing(perm[sel])) {
            Ok(after) => t.outcome(&outcome(&g, after), Direction::Increased),
            Err(e) => t.error(&g, e),
        }
    }
    t.finish()
}

fn outcome(before: &Graph, after: Graph) -> TransformOutcome {
    TransformOutcome::new(before.clone(), after).expect("surgeries keep graphs connected")
}

fn foster_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("foster-identity");
    for _ in 0..config.sanity_instances {
        let n = rng.gen_range(2..=10);
        let g = random_connected(rng, n, 2 * n);
        let res = resistance_matrix(&g).expect("connected");
        let total: Rational = g.edges().iter().map(|&(u, v)| res.get(u, v)).sum();
        t.identity(&g, total == Rational::from(n - 1), || {
            format!("edge resistances sum to {total}")
        });
    }
    t.finish()
}

fn rayleigh_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("rayleigh-monotonicity");
    let mut drawn = 0;
    while drawn < config.sanity_instances {
        let n = rng.gen_range(3..=10);
        let g = random_connected(rng, n, n);
        let missing: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !g.has_edge(a, b))
            .collect();
        let Some(&e) = missing.choose(rng) else {
            continue;
        };
        drawn += 1;
        let mut edges = g.edges().to_vec();
        edges.push(e);
        let h = Graph::new(n, &edges).expect("edge was missing");
        let before = resistance_matrix(&g).expect("connected");
        let after = resistance_matrix(&h).expect("connected");
        let ok = (0..n).all(|a| (0..n).all(|b| after.get(a, b) <= before.get(a, b)));
        t.identity(&g, ok, || format!("adding {e:?} increased some resistance"));
    }
    t.finish()
}

fn tree_campaign(config: &LemmaConfig, rng: &mut ChaCha8Rng) -> SuiteReport {
    let mut t = Tally::new("tree-degeneration");
    for _ in 0..config.tree_instances {
        let n = rng.gen_range(1..=12);
        let g = Graph::new(n, &random_tree_edges(rng, n)).expect("trees are simple");
        let res = resistance_matrix(&g).expect("connected");
        let dist = g.shortest_distances();
        let same = (0..n).all(|a| {
            (0..n).all(|b| *res.get(a, b) == Rational::from(dist[a][b].expect("connected")))
        });
        let inv = invariants(&g).expect("connected");
        let ok =
            same && inv.kirchhoff == inv.wiener && inv.degree_resistance == inv.degree_distance;
        t.identity(&g, ok, || {
            "resistance differs from hop distance".to_string()
        });
    }
    t.finish()
}

/// The substituted closed form for the path-joined family, evaluated at
/// one point where it departs from the raw expression.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedMismatch {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub raw: Rational,
    pub printed_substituted: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormReport {
    pub suites: Vec<SuiteReport>,
    pub printed_mismatch: PrintedMismatch,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.informational || s.passed)
    }

    pub fn suite(&self, name: &str) -> Option<&SuiteReport> {
        self.suites.iter().find(|s| s.name == name)
    }
}

/// Largest vertex count used by [`verify_closed_forms`].
pub const CLOSED_FORM_MAX_N: usize = 12;

/// Checks every closed form against direct computation: cycles up to
/// `max_cycle`, both families for `3 <= p <= q <= 6` and `n <= 12`, and the
/// `p = q = 3` extremal formulas for `5 <= n <= 12`.
pub fn verify_closed_forms(max_cycle: usize) -> ClosedFormReport {
    let config = LemmaConfig {
        max_cycle,
        ..LemmaConfig::default()
    };
    let cycles = cycle_forms(&config, &mut suite_rng(0, 0));

    let mut s_family = Tally::new("s-family");
    let mut p_family = Tally::new("p-family");
    let mut printed = Tally::new("p-family-printed-substituted");
    printed.report.informational = true;
    for p in 3..=6 {
        for q in p..=6 {
            for n in p + q - 1..=CLOSED_FORM_MAX_N {
                let s = make_s(n, p, q).expect("valid parameters");
                let direct = degree_resistance(&s).expect("connected");
                let form = closed_form_s(n, p, q).expect("valid parameters");
                s_family.identity(&s, form == direct, || {
                    format!("S({n},{p},{q}): {form} vs {direct}")
                });

                let g = make_p(n, p, q).expect("valid parameters");
                let direct = degree_resistance(&g).expect("connected");
                let form = closed_form_p(n, p, q).expect("valid parameters");
                p_family.identity(&g, form.raw == direct, || {
                    format!("P({n},{p},{q}): {} vs {direct}", form.raw)
                });
                printed.report.checked += 1;
                if form.printed_substituted == direct {
                    printed.report.equal += 1;
                } else {
                    printed.report.strict += 1;
                    printed.fail(
                        &g,
                        None,
                        format!("P({n},{p},{q}): {} vs {direct}", form.printed_substituted),
                    );
                }
            }
        }
    }

    let mut s33 = Tally::new("s33-formula");
    let mut p33 = Tally::new("p33-formula");
    for n in 5..=CLOSED_FORM_MAX_N {
        let g = make_s(n, 3, 3).expect("n >= 5");
        let (direct, form) = (
            degree_resistance(&g).expect("connected"),
            closed_form_s33(n).expect("n >= 5"),
        );
        s33.identity(&g, direct == form, || {
            format!("n = {n}: {form} vs {direct}")
        });
        let g = make_p(n, 3, 3).expect("n >= 5");
        let (direct, form) = (
            degree_resistance(&g).expect("connected"),
            closed_form_p33(n).expect("n >= 5"),
        );
        p33.identity(&g, direct == form, || {
            format!("n = {n}: {form} vs {direct}")
        });
    }

    let at = closed_form_p(8, 3, 3).expect("valid parameters");
    ClosedFormReport {
        suites: vec![
            cycles,
            s_family.finish(),
            p_family.finish(),
            printed.finish(),
            s33.finish(),
            p33.finish(),
        ],
        printed_mismatch: PrintedMismatch {
            n: 8,
            p: 3,
            q: 3,
            raw: at.raw,
            printed_substituted: at.printed_substituted,
        },
    }
}
