//! Exhaustive enumeration of small bicyclic graphs and the extremal search
//! over degree resistance distance.
//!
//! Labeled graphs are produced by walking every `(n + 1)`-subset of the edges
//! of `K_n`, keeping the connected ones that classify as bicyclic. Each
//! labeled graph is reduced to its isomorphism class by [`canonical_form`];
//! degree resistance distance is then computed once per class.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::families::{closed_form_p33, closed_form_s33, make_b, make_p, make_s, BicyclicShape};
use crate::graph::{BicyclicClass, Graph};
use crate::rational::Rational;
use crate::resistance::degree_resistance;

/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: usize = 10;
pub const MIN_ENUMERATION_N: usize = 5;
/// Largest n enumerated without the explicit opt-in.
pub const DEFAULT_MAX_ENUMERATION_N: usize = 8;
pub const MAX_ENUMERATION_N: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumerationError {
    #[error("n = {n} is outside the supported range {min}..={max}")]
    UnsupportedN { n: usize, min: usize, max: usize },
    #[error("n = 9 enumerates ~254M edge subsets; pass the large-n opt-in to run it")]
    LargeNotEnabled,
    #[error("canonical form supports at most {MAX_CANONICAL_N} vertices, got {0}")]
    TooLargeForCanonical(usize),
    #[error("cycle lengths p = {p}, q = {q} do not fit in n = {n} vertices")]
    InfeasibleClass { n: usize, p: usize, q: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Population {
    /// Bicyclic graphs whose two cycles are edge-disjoint.
    TwoCyclesOnly,
    /// Every connected graph with `n + 1` edges, theta types included.
    AllBicyclic,
}

impl Population {
    fn admits(self, class: BicyclicClass) -> bool {
        !matches!(
            (self, class),
            (_, BicyclicClass::NotBicyclic) | (Population::TwoCyclesOnly, BicyclicClass::Theta)
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            Population::TwoCyclesOnly => "two-cycle",
            Population::AllBicyclic => "all",
        }
    }
}

/// Isomorphism-class fingerprint: vertex count followed by the minimum
/// upper-triangle adjacency code over admissible vertex orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl Serialize for CanonicalForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let hex: String = self.0.iter().map(|b| format!("{b:02x}")).collect();
        serializer.serialize_str(&hex)
    }
}

/// Colour refinement from degrees until the partition stops splitting.
/// Colours are numbered by sorted signature, so they are canonical.
fn refined_colors(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = g.degrees();
    let mut classes = colors.iter().collect::<BTreeSet<_>>().len();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> = sigs
            .iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
        let count = ranks.len();
        colors = next;
        if count == classes {
            return colors;
        }
        classes = count;
    }
}

/// Pair `(i, j)` with `i < j` is bit number `j(j-1)/2 + i`, most significant
/// first, so placing positions in order fixes a prefix of the code.
struct CanonSearch<'a> {
    g: &'a Graph,
    slot_cells: Vec<usize>,
    cells: Vec<Vec<usize>>,
    order: Vec<usize>,
    used: Vec<bool>,
    total_bits: u32,
    best: Option<u64>,
}

impl CanonSearch<'_> {
    fn run(&mut self, pos: usize, code: u64) {
        let n = self.g.n();
        if pos == n {
            if self.best.is_none_or(|b| code < b) {
                self.best = Some(code);
            }
            return;
        }
        let cell = self.slot_cells[pos];
        for k in 0..self.cells[cell].len() {
            let v = self.cells[cell][k];
            if self.used[v] {
                continue;
            }
            let mut c = code;
            for i in 0..pos {
                c = (c << 1) | u64::from(self.g.has_edge(self.order[i], v));
            }
            let bits = (pos * (pos + 1) / 2) as u32;
            if let Some(best) = self.best {
                let prefix = if bits == 0 {
                    0
                } else {
                    best >> (self.total_bits - bits)
                };
                if c > prefix {
                    continue;
                }
            }
            self.used[v] = true;
            self.order.push(v);
            self.run(pos + 1, c);
            self.order.pop();
            self.used[v] = false;
        }
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm, EnumerationError> {
    canonical_labeling(g).map(|(form, _)| form)
}

/// Canonical form plus an order of the vertices realising it.
pub fn canonical_labeling(g: &Graph) -> Result<(CanonicalForm, Vec<usize>), EnumerationError> {
    let n = g.n();
    if n > MAX_CANONICAL_N {
        return Err(EnumerationError::TooLargeForCanonical(n));
    }
    let colors = refined_colors(g);
    let num_colors = colors.iter().max().map_or(0, |&c| c + 1);
    let mut cells = vec![Vec::new(); num_colors];
    for v in 0..n {
        cells[colors[v]].push(v);
    }
    let slot_cells: Vec<usize> = cells
        .iter()
        .enumerate()
        .flat_map(|(c, members)| std::iter::repeat_n(c, members.len()))
        .collect();
    let total_bits = (n * n.saturating_sub(1) / 2) as u32;
    let mut search = CanonSearch {
        g,
        slot_cells,
        cells,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        total_bits,
        best: None,
    };
    // record the order achieving the optimum with a second, guided pass
    search.run(0, 0);
    let best = search.best.unwrap_or(0);
    let order = realise(&mut search, best);
    let mut bytes = vec![n as u8];
    bytes.extend_from_slice(&best.to_be_bytes());
    Ok((CanonicalForm(bytes), order))
}

fn realise(search: &mut CanonSearch<'_>, target: u64) -> Vec<usize> {
    fn go(s: &mut CanonSearch<'_>, pos: usize, code: u64, target: u64) -> bool {
        let n = s.g.n();
        if pos == n {
            return code == target;
        }
        let cell = s.slot_cells[pos];
        for k in 0..s.cells[cell].len() {
            let v = s.cells[cell][k];
            if s.used[v] {
                continue;
            }
            let mut c = code;
            for i in 0..pos {
                c = (c << 1) | u64::from(s.g.has_edge(s.order[i], v));
            }
            let bits = (pos * (pos + 1) / 2) as u32;
            let prefix = if bits == 0 {
                0
            } else {
                target >> (s.total_bits - bits)
            };
            if c != prefix {
                continue;
            }
            s.used[v] = true;
            s.order.push(v);
            if go(s, pos + 1, c, target) {
                return true;
            }
            s.order.pop();
            s.used[v] = false;
        }
        false
    }
    search.order.clear();
    search.used.iter_mut().for_each(|u| *u = false);
    let found = go(search, 0, 0, target);
    debug_assert!(found);
    search.order.clone()
}

/// Relabels `g` so that its edge list is the canonical one.
pub fn canonical_graph(g: &Graph) -> Result<Graph, EnumerationError> {
    let (_, order) = canonical_labeling(g)?;
    let mut perm = vec![0; g.n()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    Ok(g.relabel(&perm))
}

fn check_n(n: usize, allow_large: bool) -> Result<(), EnumerationError> {
    if !(MIN_ENUMERATION_N..=MAX_ENUMERATION_N).contains(&n) {
        return Err(EnumerationError::UnsupportedN {
            n,
            min: MIN_ENUMERATION_N,
            max: MAX_ENUMERATION_N,
        });
    }
    if n > DEFAULT_MAX_ENUMERATION_N && !allow_large {
        return Err(EnumerationError::LargeNotEnabled);
    }
    Ok(())
}

fn complete_edges(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn connected_subset(n: usize, edges: &[(usize, usize)], chosen: &[usize]) -> bool {
    let mut parent = [0usize; MAX_ENUMERATION_N + 1];
    for (i, p) in parent.iter_mut().enumerate().take(n) {
        *p = i;
    }
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut components = n;
    for &i in chosen {
        let (a, b) = edges[i];
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            components -= 1;
        }
    }
    components == 1
}

/// Calls `f` on every `k`-subset of `start..total` appended to `prefix`.
fn for_each_subset(
    prefix: &[usize],
    start: usize,
    total: usize,
    k: usize,
    f: &mut impl FnMut(&[usize]),
) {
    let mut idx: Vec<usize> = prefix.to_vec();
    let base = idx.len();
    if k == 0 {
        f(&idx);
        return;
    }
    if start + k > total {
        return;
    }
    idx.extend(start..start + k);
    loop {
        f(&idx);
        // advance to the next combination in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[base + i] < total - k + i {
                break;
            }
            if i == 0 {
                return;
            }
        }
        idx[base + i] += 1;
        for j in i + 1..k {
            idx[base + j] = idx[base + j - 1] + 1;
        }
    }
}

fn subset_graph(n: usize, edges: &[(usize, usize)], chosen: &[usize]) -> Graph {
    let list: Vec<_> = chosen.iter().map(|&i| edges[i]).collect();
    Graph::new(n, &list).expect("subsets of K_n are simple")
}

/// Every labeled bicyclic graph on `n` vertices in `population`.
pub fn enumerate_bicyclic(
    n: usize,
    population: Population,
    allow_large: bool,
) -> Result<impl Iterator<Item = Graph>, EnumerationError> {
    check_n(n, allow_large)?;
    let edges = complete_edges(n);
    let mut out = Vec::new();
    // collected per call; callers at n <= 8 hold at most a few million small graphs
    for_each_subset(&[], 0, edges.len(), n + 1, &mut |chosen| {
        if connected_subset(n, &edges, chosen) {
            let g = subset_graph(n, &edges, chosen);
            if population.admits(g.classify_bicyclic()) {
                out.push(g);
            }
        }
    });
    Ok(out.into_iter())
}

/// Labeled graphs with exactly two edge-disjoint cycles.
pub fn enumerate_two_cycle_bicyclic(
    n: usize,
    allow_large: bool,
) -> Result<impl Iterator<Item = Graph>, EnumerationError> {
    enumerate_bicyclic(n, Population::TwoCyclesOnly, allow_large)
}

/// One isomorphism class found by the survey.
#[derive(Debug, Clone, Serialize)]
pub struct ClassRecord {
    pub form: CanonicalForm,
    pub graph: Graph,
    pub class: BicyclicClass,
    pub labeled_count: u64,
    pub degree_resistance: Rational,
}

#[derive(Debug, Clone)]
pub struct Survey {
    pub n: usize,
    pub population: Population,
    pub count_labeled: u64,
    /// Sorted by canonical form.
    pub classes: Vec<ClassRecord>,
}

struct Partial {
    labeled: u64,
    classes: HashMap<CanonicalForm, (Graph, BicyclicClass, u64)>,
}

impl Partial {
    fn new() -> Self {
        Partial {
            labeled: 0,
            classes: HashMap::new(),
        }
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.labeled += other.labeled;
        for (form, (g, class, count)) in other.classes {
            self.classes
                .entry(form)
                .and_modify(|e| e.2 += count)
                .or_insert((g, class, count));
        }
        self
    }
}

/// Enumerates every labeled graph in the population, groups them into
/// isomorphism classes, and evaluates degree resistance distance per class.
/// The result does not depend on `jobs`.
pub fn survey(
    n: usize,
    population: Population,
    jobs: usize,
    allow_large: bool,
) -> Result<Survey, EnumerationError> {
    check_n(n, allow_large)?;
    let edges = complete_edges(n);
    let total = edges.len();
    let k = n + 1;
    let prefixes: Vec<[usize; 2]> = (0..total)
        .flat_map(|a| (a + 1..total).map(move |b| [a, b]))
        .filter(|&[_, b]| b + (k - 2) <= total)
        .collect();

    let work = || {
        prefixes
            .par_iter()
            .map(|prefix| {
                let mut part = Partial::new();
                for_each_subset(prefix, prefix[1] + 1, total, k - 2, &mut |chosen| {
                    if !connected_subset(n, &edges, chosen) {
                        return;
                    }
                    let g = subset_graph(n, &edges, chosen);
                    let class = g.classify_bicyclic();
                    if !population.admits(class) {
                        return;
                    }
                    part.labeled += 1;
                    let (form, order) = canonical_labeling(&g).expect("n checked");
                    part.classes
                        .entry(form)
                        .and_modify(|e| e.2 += 1)
                        .or_insert_with(|| {
                            let mut perm = vec![0; n];
                            for (pos, &v) in order.iter().enumerate() {
                                perm[v] = pos;
                            }
                            (g.relabel(&perm), class, 1)
                        });
                });
                part
            })
            .reduce(Partial::new, Partial::merge)
    };
    let merged = run_with_jobs(jobs, work);

    let mut entries: Vec<_> = merged.classes.into_iter().collect();
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    let eval = || {
        entries
            .into_par_iter()
            .map(|(form, (graph, class, labeled_count))| {
                let degree_resistance =
                    degree_resistance(&graph).expect("enumerated graphs are connected");
                ClassRecord {
                    form,
                    graph,
                    class,
                    labeled_count,
                    degree_resistance,
                }
            })
            .collect::<Vec<_>>()
    };
    let classes = run_with_jobs(jobs, eval);
    Ok(Survey {
        n,
        population,
        count_labeled: merged.labeled,
        classes,
    })
}

fn run_with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    pool.install(f)
}

/// Exact minimum and maximum of degree resistance distance over one
/// population, with every attaining isomorphism class.
#[derive(Debug, Clone, Serialize)]
pub struct ExtremalReport {
    pub n: usize,
    pub population: Population,
    pub count_labeled: u64,
    pub count_iso_classes: usize,
    pub count_theta_classes: usize,
    pub min_value: Rational,
    pub max_value: Rational,
    pub min_attainers: Vec<Graph>,
    pub max_attainers: Vec<Graph>,
    pub expected_min: Rational,
    pub expected_max: Rational,
    pub agrees_min: bool,
    pub agrees_max: bool,
    /// The minimum is attained by exactly one class, that of `S_n^{3,3}`.
    pub min_unique_s33: bool,
    /// The maximum is attained by exactly one class, that of `P_n^{3,3}`.
    pub max_unique_p33: bool,
}

impl ExtremalReport {
    pub fn passed(&self) -> bool {
        self.agrees_min && self.agrees_max && self.min_unique_s33 && self.max_unique_p33
    }
}

fn extremes(
    classes: &[&ClassRecord],
) -> (
    Rational,
    Rational,
    Vec<Graph>,
    Vec<Graph>,
    Vec<CanonicalForm>,
    Vec<CanonicalForm>,
) {
    let min = classes
        .iter()
        .map(|c| &c.degree_resistance)
        .min()
        .expect("nonempty")
        .clone();
    let max = classes
        .iter()
        .map(|c| &c.degree_resistance)
        .max()
        .expect("nonempty")
        .clone();
    let pick = |v: &Rational| -> (Vec<Graph>, Vec<CanonicalForm>) {
        classes
            .iter()
            .filter(|c| &c.degree_resistance == v)
            .map(|c| (c.graph.clone(), c.form.clone()))
            .unzip()
    };
    let (min_g, min_f) = pick(&min);
    let (max_g, max_f) = pick(&max);
    (min, max, min_g, max_g, min_f, max_f)
}

fn unique_is(forms: &[CanonicalForm], target: &Graph) -> bool {
    forms.len() == 1
        && canonical_form(target)
            .map(|f| f == forms[0])
            .unwrap_or(false)
}

pub fn extremal_report(s: &Survey) -> ExtremalReport {
    let all: Vec<&ClassRecord> = s.classes.iter().collect();
    let (min_value, max_value, min_attainers, max_attainers, min_f, max_f) = extremes(&all);
    let expected_min = closed_form_s33(s.n).expect("n >= 5");
    let expected_max = closed_form_p33(s.n).expect("n >= 5");
    ExtremalReport {
        n: s.n,
        population: s.population,
        count_labeled: s.count_labeled,
        count_iso_classes: s.classes.len(),
        count_theta_classes: s
            .classes
            .iter()
            .filter(|c| c.class == BicyclicClass::Theta)
            .count(),
        agrees_min: min_value == expected_min,
        agrees_max: max_value == expected_max,
        min_unique_s33: unique_is(&min_f, &make_s(s.n, 3, 3).expect("n >= 5")),
        max_unique_p33: unique_is(&max_f, &make_p(s.n, 3, 3).expect("n >= 5")),
        min_value,
        max_value,
        min_attainers,
        max_attainers,
        expected_min,
        expected_max,
    }
}

pub fn extremal_search(
    n: usize,
    population: Population,
    jobs: usize,
    allow_large: bool,
) -> Result<ExtremalReport, EnumerationError> {
    Ok(extremal_report(&survey(n, population, jobs, allow_large)?))
}

/// Extremes of degree resistance distance inside the class with cycle
/// lengths `(p, q)`, compared against `S_n^{p,q}` and `P_n^{p,q}`.
#[derive(Debug, Clone, Serialize)]
pub struct WithinClassReport {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub class_count: usize,
    pub min_value: Rational,
    pub max_value: Rational,
    pub min_attainers: Vec<Graph>,
    pub max_attainers: Vec<Graph>,
    pub s_value: Rational,
    pub p_value: Rational,
    pub min_unique_s: bool,
    pub max_unique_p: bool,
}

impl WithinClassReport {
    pub fn passed(&self) -> bool {
        self.min_unique_s && self.max_unique_p
    }
}

pub fn within_class_report(
    s: &Survey,
    p: usize,
    q: usize,
) -> Result<WithinClassReport, EnumerationError> {
    let (p, q) = (p.min(q), p.max(q));
    let n = s.n;
    if p < 3 || p + q > n + 1 {
        return Err(EnumerationError::InfeasibleClass { n, p, q });
    }
    let members: Vec<&ClassRecord> = s
        .classes
        .iter()
        .filter(
            |c| matches!(c.class, BicyclicClass::TwoCycles { p: a, q: b, .. } if a == p && b == q),
        )
        .collect();
    let (min_value, max_value, min_attainers, max_attainers, min_f, max_f) = extremes(&members);
    let s_graph = make_s(n, p, q).expect("feasible");
    let p_graph = make_p(n, p, q).expect("feasible");
    Ok(WithinClassReport {
        n,
        p,
        q,
        class_count: members.len(),
        min_unique_s: unique_is(&min_f, &s_graph),
        max_unique_p: unique_is(&max_f, &p_graph),
        s_value: degree_resistance(&s_graph).expect("connected"),
        p_value: degree_resistance(&p_graph).expect("connected"),
        min_value,
        max_value,
        min_attainers,
        max_attainers,
    })
}

pub fn verify_within_class(
    n: usize,
    p: usize,
    q: usize,
    jobs: usize,
) -> Result<WithinClassReport, EnumerationError> {
    let s = survey(n, Population::TwoCyclesOnly, jobs, false)?;
    within_class_report(&s, p, q)
}

/// Cycle-length pairs `p <= q` that fit in `n` vertices.
pub fn feasible_classes(n: usize) -> Vec<(usize, usize)> {
    (3..=n)
        .flat_map(|p| (p..=n).map(move |q| (p, q)))
        .filter(|&(p, q)| p + q <= n + 1)
        .collect()
}

/// Independent generation of the two-cycle classes: start from every bare
/// base (two cycles and a joining path) and grow pendant vertices one at a
/// time, deduplicating by canonical form.
pub fn enumerate_by_growth(n: usize) -> Result<BTreeSet<CanonicalForm>, EnumerationError> {
    if n > MAX_CANONICAL_N {
        return Err(EnumerationError::TooLargeForCanonical(n));
    }
    // level[k] holds the classes with k vertices
    let mut levels: Vec<BTreeMap<CanonicalForm, Graph>> = vec![BTreeMap::new(); n + 1];
    for (p, q) in feasible_classes(n) {
        for m in 0..=(n + 1 - p - q) {
            let g = make_b(&BicyclicShape {
                p,
                q,
                m,
                attachments: vec![],
            })
            .expect("valid shape");
            let size = g.n();
            levels[size].insert(canonical_form(&g)?, g);
        }
    }
    for size in 0..n {
        let current: Vec<Graph> = levels[size].values().cloned().collect();
        for g in current {
            for v in 0..g.n() {
                let mut edges = g.edges().to_vec();
                edges.push((v, g.n()));
                let grown = Graph::new(g.n() + 1, &edges).expect("pendant edge is simple");
                levels[size + 1].insert(canonical_form(&grown)?, grown);
            }
        }
    }
    Ok(levels.pop().unwrap_or_default().into_keys().collect())
}
