//! Named graph families and closed-form degree resistance distances.
//!
//! Vertex numbering for the bicyclic constructions: the first cycle comes
//! first (its contact vertex is 0), then the second cycle (its contact vertex
//! leads, unless shared with the first), then interior path vertices in order
//! from the first cycle, then pendant or tree vertices.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::graph::Graph;
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyError {
    #[error("cycle length {0} is below 3")]
    CycleTooShort(usize),
    #[error("a path needs at least one vertex")]
    EmptyPath,
    #[error("n = {n} is below the minimum {min} for these parameters")]
    TooFewVertices { n: usize, min: usize },
    #[error("unknown base vertex {0:?}; expected c1:i, c2:j or path:k")]
    UnknownBaseVertex(String),
    #[error("base vertex {0} does not exist for this shape")]
    BaseVertexOutOfRange(BaseVertex),
    #[error("attachment at {at}: {reason}")]
    MalformedTree { at: BaseVertex, reason: String },
}

pub fn make_cycle(k: usize) -> Result<Graph, FamilyError> {
    if k < 3 {
        return Err(FamilyError::CycleTooShort(k));
    }
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Ok(Graph::new(k, &edges).expect("cycle edges are simple"))
}

/// Path on `k` vertices (so `k - 1` edges).
pub fn make_path(k: usize) -> Result<Graph, FamilyError> {
    if k == 0 {
        return Err(FamilyError::EmptyPath);
    }
    let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
    Ok(Graph::new(k, &edges).expect("path edges are simple"))
}

fn check_params(n: usize, p: usize, q: usize) -> Result<(), FamilyError> {
    for k in [p, q] {
        if k < 3 {
            return Err(FamilyError::CycleTooShort(k));
        }
    }
    if n + 1 < p + q {
        return Err(FamilyError::TooFewVertices { n, min: p + q - 1 });
    }
    Ok(())
}

/// Base edges: two cycles joined by a path of `m` edges.
fn base_edges(p: usize, q: usize, m: usize) -> Vec<(usize, usize)> {
    let mut edges: Vec<_> = (0..p).map(|i| (i, (i + 1) % p)).collect();
    let c2: Vec<usize> = if m == 0 {
        std::iter::once(0).chain(p..p + q - 1).collect()
    } else {
        (p..p + q).collect()
    };
    edges.extend((0..q).map(|j| (c2[j], c2[(j + 1) % q])));
    if m > 0 {
        let path: Vec<usize> = std::iter::once(0)
            .chain(p + q..p + q + m - 1)
            .chain(std::iter::once(p))
            .collect();
        edges.extend(path.windows(2).map(|w| (w[0], w[1])));
    }
    edges
}

/// Two cycles sharing one vertex, with all remaining vertices pendant at it.
pub fn make_s(n: usize, p: usize, q: usize) -> Result<Graph, FamilyError> {
    check_params(n, p, q)?;
    let mut edges = base_edges(p, q, 0);
    edges.extend((p + q - 1..n).map(|v| (0, v)));
    Ok(Graph::new(n, &edges).expect("S-family edges are simple"))
}

/// Two disjoint cycles joined by a path of `n + 1 - p - q` edges.
pub fn make_p(n: usize, p: usize, q: usize) -> Result<Graph, FamilyError> {
    check_params(n, p, q)?;
    let m = n + 1 - p - q;
    if m == 0 {
        return make_s(n, p, q);
    }
    Ok(Graph::new(n, &base_edges(p, q, m)).expect("P-family edges are simple"))
}

/// A vertex of the two-cycle base, named by role.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseVertex {
    /// Position on the first cycle; 0 is its contact vertex.
    Cycle1(usize),
    /// Position on the second cycle; 0 is its contact vertex.
    Cycle2(usize),
    /// Position along the joining path; 0 and `m` are the two contacts.
    Path(usize),
}

impl fmt::Display for BaseVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseVertex::Cycle1(i) => write!(f, "c1:{i}"),
            BaseVertex::Cycle2(j) => write!(f, "c2:{j}"),
            BaseVertex::Path(k) => write!(f, "path:{k}"),
        }
    }
}

impl FromStr for BaseVertex {
    type Err = FamilyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FamilyError::UnknownBaseVertex(s.to_string());
        let (role, idx) = s.split_once(':').ok_or_else(bad)?;
        let idx: usize = idx.trim().parse().map_err(|_| bad())?;
        match role.trim() {
            "c1" => Ok(BaseVertex::Cycle1(idx)),
            "c2" => Ok(BaseVertex::Cycle2(idx)),
            "path" => Ok(BaseVertex::Path(idx)),
            _ => Err(bad()),
        }
    }
}

impl Serialize for BaseVertex {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for BaseVertex {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// A rooted tree hung at a base vertex. Tree vertex 0 is the root and is
/// identified with the base vertex; an empty edge list is the trivial tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Attachment {
    pub at: BaseVertex,
    #[serde(default)]
    pub tree_edges: Vec<(usize, usize)>,
}

/// Parametrisation of a member of the two-cycle bicyclic class: cycle
/// lengths, joining-path length `m`, and trees rooted on base vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BicyclicShape {
    pub p: usize,
    pub q: usize,
    pub m: usize,
    #[serde(default)]
    pub attachments: Vec<Attachment>,
}

impl BicyclicShape {
    pub fn base_vertex_count(&self) -> usize {
        self.p + self.q + self.m - 1
    }

    /// Index of a base vertex in the constructed graph.
    pub fn base_index(&self, at: BaseVertex) -> Result<usize, FamilyError> {
        let (p, q, m) = (self.p, self.q, self.m);
        let out = || FamilyError::BaseVertexOutOfRange(at);
        match at {
            BaseVertex::Cycle1(i) if i < p => Ok(i),
            BaseVertex::Cycle2(0) => Ok(if m == 0 { 0 } else { p }),
            BaseVertex::Cycle2(j) if j < q => Ok(if m == 0 { p + j - 1 } else { p + j }),
            BaseVertex::Path(0) => Ok(0),
            BaseVertex::Path(k) if k == m => Ok(p),
            BaseVertex::Path(k) if k < m => Ok(p + q + k - 1),
            _ => Err(out()),
        }
    }
}

fn validate_tree(at: BaseVertex, edges: &[(usize, usize)]) -> Result<usize, FamilyError> {
    let size = edges.len() + 1;
    let bad = |reason: String| FamilyError::MalformedTree { at, reason };
    if let Some(&(a, b)) = edges.iter().find(|&&(a, b)| a >= size || b >= size) {
        return Err(bad(format!(
            "edge ({a}, {b}) uses a vertex outside 0..{size} (a tree with {} edges has {size} vertices)",
            edges.len()
        )));
    }
    let tree = Graph::new(size, edges).map_err(|e| bad(e.to_string()))?;
    if !tree.is_connected() {
        return Err(bad("edges do not form a tree".to_string()));
    }
    Ok(size)
}

/// Builds the graph described by `shape`.
pub fn make_b(shape: &BicyclicShape) -> Result<Graph, FamilyError> {
    check_params(shape.base_vertex_count(), shape.p, shape.q)?;
    let mut edges = base_edges(shape.p, shape.q, shape.m);
    let mut next = shape.base_vertex_count();
    let mut seen = BTreeSet::new();
    for att in &shape.attachments {
        let root = shape.base_index(att.at)?;
        if !seen.insert(root) {
            return Err(FamilyError::MalformedTree {
                at: att.at,
                reason: "base vertex already carries a tree".to_string(),
            });
        }
        let size = validate_tree(att.at, &att.tree_edges)?;
        let map = |v: usize| if v == 0 { root } else { next + v - 1 };
        edges.extend(att.tree_edges.iter().map(|&(a, b)| (map(a), map(b))));
        next += size - 1;
    }
    Ok(Graph::new(next, &edges).expect("shape edges are simple"))
}

fn r(x: usize) -> Rational {
    Rational::from(x)
}

/// Degree resistance distance of `S_n^{p,q}` in closed form.
pub fn closed_form_s(n: usize, p: usize, q: usize) -> Result<Rational, FamilyError> {
    check_params(n, p, q)?;
    let (n, p, q) = (r(n), r(p), r(q));
    let one = Rational::one();
    let sq = |x: &Rational| x * x;
    let cube = |x: &Rational| x * x * x;
    let inner = -cube(&p) - cube(&q)
        + (Rational::from(2) * &n + &one) * (sq(&p) + sq(&q))
        + (&one - Rational::from(9) * &n) * (&p + &q)
        + Rational::from(9) * sq(&n)
        + Rational::from(5) * &n
        - Rational::from(2);
    Ok(inner / Rational::from(3))
}

/// The two closed-form evaluations for `P_n^{p,q}`.
///
/// `raw` is the expression in the joining-path length `m = n + 1 - p - q`;
/// `printed_substituted` is the published form after substituting `m`, evaluated
/// verbatim. They disagree, and only `raw` matches direct computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PClosedForm {
    pub raw: Rational,
    pub printed_substituted: Rational,
}

pub fn closed_form_p(n: usize, p: usize, q: usize) -> Result<PClosedForm, FamilyError> {
    check_params(n, p, q)?;
    let m = r(n + 1 - p - q);
    let (n, p, q) = (r(n), r(p), r(q));
    let c = Rational::from;
    let sq = |x: &Rational| x * x;
    let cube = |x: &Rational| x * x * x;

    let raw = cube(&p)
        + cube(&q)
        + (c(2) * &q + c(2) * &m - c(1)) * sq(&p)
        + (c(2) * &p + c(2) * &m - c(1)) * sq(&q)
        + (c(6) * sq(&m) - c(3) * &m - c(3)) * (&p + &q)
        + c(12) * &m * &p * &q
        + c(2) * cube(&m)
        - c(3) * sq(&m)
        - c(3) * &m
        + c(2);

    let printed = c(3) * cube(&p)
        + c(3) * cube(&q)
        + (c(4) * &n + c(5)) * (sq(&p) + sq(&q))
        + (c(3) * &n + c(3)) * (&p + &q)
        + c(2) * cube(&n)
        + c(3) * sq(&n)
        - c(3) * &n
        - c(2);

    Ok(PClosedForm {
        raw: raw / c(3),
        printed_substituted: printed / c(3),
    })
}

fn check_n5(n: usize) -> Result<(), FamilyError> {
    if n < 5 {
        return Err(FamilyError::TooFewVertices { n, min: 5 });
    }
    Ok(())
}

/// `3n^2 - 13n/3 - 32/3`, the minimum over all two-cycle bicyclic graphs.
pub fn closed_form_s33(n: usize) -> Result<Rational, FamilyError> {
    check_n5(n)?;
    let n = r(n);
    Ok(Rational::from(3) * &n * &n - Rational::new(13, 3) * &n - Rational::new(32, 3))
}

/// `2n^3/3 + n^2 - 19n + 88/3`, the maximum over all two-cycle bicyclic graphs.
pub fn closed_form_p33(n: usize) -> Result<Rational, FamilyError> {
    check_n5(n)?;
    let n = r(n);
    Ok(
        Rational::new(2, 3) * &n * &n * &n + &n * &n - Rational::from(19) * &n
            + Rational::new(88, 3),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::BicyclicClass;
    use crate::resistance::degree_resistance;

    fn dr(g: &Graph) -> Rational {
        degree_resistance(g).unwrap()
    }

    #[test]
    fn cycles_and_paths() {
        assert_eq!(make_cycle(3).unwrap().m(), 3);
        assert_eq!(make_path(2).unwrap(), Graph::new(2, &[(0, 1)]).unwrap());
        assert_eq!(make_cycle(2), Err(FamilyError::CycleTooShort(2)));
        assert_eq!(make_path(0), Err(FamilyError::EmptyPath));
    }

    #[test]
    fn s_family() {
        let bowtie = make_s(5, 3, 3).unwrap();
        assert_eq!(bowtie.degrees(), vec![4, 2, 2, 2, 2]);
        let g = make_s(6, 3, 3).unwrap();
        assert_eq!(g.degree(0), 5);
        assert_eq!(g.m(), 7);
        assert_eq!(
            make_s(4, 3, 3),
            Err(FamilyError::TooFewVertices { n: 4, min: 5 })
        );
        assert_eq!(
            make_s(9, 3, 4).unwrap().classify_bicyclic(),
            BicyclicClass::TwoCycles {
                p: 3,
                q: 4,
                path_len: 0
            }
        );
    }

    #[test]
    fn p_family() {
        let g = make_p(8, 3, 3).unwrap();
        assert_eq!(
            g.classify_bicyclic(),
            BicyclicClass::TwoCycles {
                p: 3,
                q: 3,
                path_len: 3
            }
        );
        assert_eq!(make_p(5, 3, 3).unwrap(), make_s(5, 3, 3).unwrap());
        assert_eq!(
            make_p(7, 3, 4).unwrap().classify_bicyclic(),
            BicyclicClass::TwoCycles {
                p: 3,
                q: 4,
                path_len: 1
            }
        );
    }

    #[test]
    fn b_family_matches_s_and_p() {
        let star = BicyclicShape {
            p: 3,
            q: 3,
            m: 0,
            attachments: vec![Attachment {
                at: BaseVertex::Cycle1(0),
                tree_edges: vec![(0, 1), (0, 2)],
            }],
        };
        assert_eq!(make_b(&star).unwrap(), make_s(7, 3, 3).unwrap());
        let bare = BicyclicShape {
            p: 3,
            q: 3,
            m: 2,
            attachments: vec![],
        };
        assert_eq!(make_b(&bare).unwrap(), make_p(7, 3, 3).unwrap());
    }

    #[test]
    fn b_family_sits_between_extremes() {
        let shape = BicyclicShape {
            p: 3,
            q: 3,
            m: 0,
            attachments: vec![Attachment {
                at: BaseVertex::Cycle1(1),
                tree_edges: vec![(0, 1), (1, 2)],
            }],
        };
        let g = make_b(&shape).unwrap();
        assert_eq!(g.n(), 7);
        let v = dr(&g);
        assert!(dr(&make_s(7, 3, 3).unwrap()) < v);
        assert!(v < dr(&make_p(7, 3, 3).unwrap()));
    }

    #[test]
    fn b_family_rejects_bad_trees() {
        let shape = |at, tree_edges| BicyclicShape {
            p: 3,
            q: 4,
            m: 1,
            attachments: vec![Attachment { at, tree_edges }],
        };
        assert!(matches!(
            make_b(&shape(BaseVertex::Cycle2(1), vec![(0, 1), (1, 0)])),
            Err(FamilyError::MalformedTree { .. })
        ));
        assert!(matches!(
            make_b(&shape(BaseVertex::Cycle2(1), vec![(0, 1), (2, 3)])),
            Err(FamilyError::MalformedTree { .. })
        ));
        assert!(matches!(
            make_b(&shape(BaseVertex::Cycle2(4), vec![(0, 1)])),
            Err(FamilyError::BaseVertexOutOfRange(_))
        ));
        assert!(matches!(
            make_b(&shape(BaseVertex::Path(2), vec![(0, 1)])),
            Err(FamilyError::BaseVertexOutOfRange(_))
        ));
    }

    #[test]
    fn base_vertex_roles() {
        let s = BicyclicShape {
            p: 3,
            q: 4,
            m: 2,
            attachments: vec![],
        };
        assert_eq!(s.base_index(BaseVertex::Cycle1(0)).unwrap(), 0);
        assert_eq!(s.base_index(BaseVertex::Cycle2(0)).unwrap(), 3);
        assert_eq!(s.base_index(BaseVertex::Cycle2(3)).unwrap(), 6);
        assert_eq!(s.base_index(BaseVertex::Path(0)).unwrap(), 0);
        assert_eq!(s.base_index(BaseVertex::Path(1)).unwrap(), 7);
        assert_eq!(s.base_index(BaseVertex::Path(2)).unwrap(), 3);
        let shared = BicyclicShape {
            p: 3,
            q: 4,
            m: 0,
            attachments: vec![],
        };
        assert_eq!(shared.base_index(BaseVertex::Cycle2(0)).unwrap(), 0);
        assert_eq!(shared.base_index(BaseVertex::Cycle2(1)).unwrap(), 3);
        assert_eq!(shared.base_index(BaseVertex::Path(0)).unwrap(), 0);
        assert!(shared.base_index(BaseVertex::Path(1)).is_err());
        assert_eq!("path:3".parse::<BaseVertex>().unwrap(), BaseVertex::Path(3));
        assert!("c3:1".parse::<BaseVertex>().is_err());
    }

    #[test]
    fn shape_json() {
        let json =
            r#"{"p":3,"q":3,"m":0,"attachments":[{"at":"c1:0","tree_edges":[[0,1],[0,2]]}]}"#;
        let shape: BicyclicShape = serde_json::from_str(json).unwrap();
        assert_eq!(shape.attachments[0].at, BaseVertex::Cycle1(0));
        assert_eq!(make_b(&shape).unwrap(), make_s(7, 3, 3).unwrap());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(closed_form_s(5, 3, 3).unwrap(), Rational::new(128, 3));
        assert_eq!(closed_form_s(6, 3, 3).unwrap(), Rational::new(214, 3));
        assert_eq!(
            closed_form_s(7, 3, 4).unwrap(),
            dr(&make_s(7, 3, 4).unwrap())
        );
        let p5 = closed_form_p(5, 3, 3).unwrap();
        assert_eq!(p5.raw, Rational::new(128, 3));
        let p8 = closed_form_p(8, 3, 3).unwrap();
        assert_eq!(p8.raw, Rational::new(848, 3));
        assert_eq!(p8.printed_substituted, Rational::new(2180, 3));
        assert_eq!(p8.raw, closed_form_p33(8).unwrap());
        assert_eq!(closed_form_s33(5).unwrap(), Rational::new(128, 3));
        assert_eq!(closed_form_p33(5).unwrap(), Rational::new(128, 3));
        assert_eq!(closed_form_s33(7).unwrap(), 106.into());
        assert_eq!(closed_form_p33(7).unwrap(), 174.into());
        assert!(closed_form_s33(4).is_err());
        assert!(closed_form_p(4, 3, 3).is_err());
    }
}
