//! Exact effective resistances and the distance-based indices built on them.
//!
//! Every edge is a unit resistor. The Laplacian with vertex 0 grounded is
//! inverted once in exact rational arithmetic; pair resistances then follow
//! from `r(u,v) = M[u][u] + M[v][v] - 2 M[u][v]`, with the grounded row and
//! column of `M` taken as zero.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::graph::{identify_vertices, Graph};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResistanceError {
    #[error("graph is disconnected; effective resistance is undefined across components")]
    Disconnected,
    #[error("graph has no vertices")]
    Empty,
    #[error("cycle length {0} is below 3")]
    InvalidCycle(usize),
    #[error("cycle positions ({i}, {j}) are not 1 <= i < j <= {k}")]
    InvalidPosition { k: usize, i: usize, j: usize },
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
}

/// All-pairs effective resistances of a connected graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResistanceMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ResistanceMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, u: usize, v: usize) -> &Rational {
        &self.entries[u * self.n + v]
    }

    /// `Kf_v`: resistance from `v` to every vertex, summed.
    pub fn row_sum(&self, v: usize) -> Rational {
        self.entries[v * self.n..(v + 1) * self.n].iter().sum()
    }
}

/// Per-vertex resistance sums: `kf` is the plain sum of `r(u, v)` over all
/// `u`, `dv` weights each term by `deg(u)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexSums {
    pub kf: Rational,
    pub dv: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub wiener: Rational,
    pub kirchhoff: Rational,
    pub degree_distance: Rational,
    pub degree_resistance: Rational,
    pub per_vertex: Vec<VertexSums>,
}

/// Inverse of the Laplacian with vertex 0 removed, by Gauss-Jordan
/// elimination taking the first nonzero pivot in each column.
fn grounded_inverse(g: &Graph) -> Vec<Vec<BigRational>> {
    let size = g.n() - 1;
    let mut a = vec![vec![BigRational::zero(); size]; size];
    let mut inv = vec![vec![BigRational::zero(); size]; size];
    for v in 1..g.n() {
        a[v - 1][v - 1] = BigRational::from_integer(g.degree(v).into());
        inv[v - 1][v - 1] = BigRational::one();
        for &w in g.neighbors(v) {
            if w != 0 {
                a[v - 1][w - 1] = -BigRational::one();
            }
        }
    }
    for col in 0..size {
        let pivot = (col..size)
            .find(|&r| !a[r][col].is_zero())
            .expect("reduced Laplacian of a connected graph is nonsingular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        if !p.is_one() {
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                if !x.is_zero() {
                    *x /= &p;
                }
            }
        }
        for r in 0..size {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            let (pivot_a, row_a) = split_rows(&mut a, col, r);
            for (x, y) in row_a.iter_mut().zip(pivot_a.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            let (pivot_i, row_i) = split_rows(&mut inv, col, r);
            for (x, y) in row_i.iter_mut().zip(pivot_i.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    inv
}

fn split_rows<T>(rows: &mut [Vec<T>], a: usize, b: usize) -> (&Vec<T>, &mut Vec<T>) {
    if a < b {
        let (lo, hi) = rows.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = rows.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}

pub fn resistance_matrix(g: &Graph) -> Result<ResistanceMatrix, ResistanceError> {
    let n = g.n();
    if n == 0 {
        return Err(ResistanceError::Empty);
    }
    if !g.is_connected() {
        return Err(ResistanceError::Disconnected);
    }
    let inv = grounded_inverse(g);
    let m = |u: usize, v: usize| -> BigRational {
        if u == 0 || v == 0 {
            BigRational::zero()
        } else {
            inv[u - 1][v - 1].clone()
        }
    };
    let mut entries = vec![Rational::zero(); n * n];
    for u in 0..n {
        for v in (u + 1)..n {
            let r = m(u, u) + m(v, v) - m(u, v) * BigRational::from_integer(2.into());
            let r = Rational::from(r);
            entries[v * n + u] = r.clone();
            entries[u * n + v] = r;
        }
    }
    Ok(ResistanceMatrix { n, entries })
}

pub fn effective_resistance(g: &Graph, u: usize, v: usize) -> Result<Rational, ResistanceError> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(ResistanceError::VertexOutOfRange(x));
        }
    }
    if u == v {
        return if g.is_connected() {
            Ok(Rational::zero())
        } else {
            Err(ResistanceError::Disconnected)
        };
    }
    Ok(resistance_matrix(g)?.get(u, v).clone())
}

/// Wiener index, Kirchhoff index, degree distance and degree resistance
/// distance, plus `(Kf_v, D_v)` for every vertex.
pub fn invariants(g: &Graph) -> Result<InvariantReport, ResistanceError> {
    let res = resistance_matrix(g)?;
    Ok(report_from(g, &res))
}

pub(crate) fn report_from(g: &Graph, res: &ResistanceMatrix) -> InvariantReport {
    let n = g.n();
    let deg: Vec<Rational> = g.degrees().into_iter().map(Rational::from).collect();
    let hops = g.shortest_distances();
    let mut wiener = 0usize;
    let mut degree_distance = 0usize;
    let mut kirchhoff = Rational::zero();
    #[allow(clippy::needless_range_loop)]
    for u in 0..n {
        for v in (u + 1)..n {
            let d = hops[u][v].expect("connected");
            wiener += d;
            degree_distance += (g.degree(u) + g.degree(v)) * d;
            kirchhoff += res.get(u, v);
        }
    }
    let per_vertex: Vec<VertexSums> = (0..n)
        .map(|v| VertexSums {
            kf: res.row_sum(v),
            dv: (0..n).map(|u| &deg[u] * res.get(u, v)).sum(),
        })
        .collect();
    let degree_resistance = per_vertex.iter().zip(&deg).map(|(s, d)| d * &s.kf).sum();
    InvariantReport {
        wiener: wiener.into(),
        kirchhoff,
        degree_distance: degree_distance.into(),
        degree_resistance,
        per_vertex,
    }
}

pub fn degree_resistance(g: &Graph) -> Result<Rational, ResistanceError> {
    Ok(invariants(g)?.degree_resistance)
}

/// Closed forms for the cycle `C_k`: Kirchhoff index, degree resistance
/// distance, and the per-vertex sums (identical at every vertex).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleClosedForms {
    pub kf: Rational,
    pub dr: Rational,
    pub kf_v: Rational,
    pub d_v: Rational,
}

pub fn cycle_closed_forms(k: usize) -> Result<CycleClosedForms, ResistanceError> {
    if k < 3 {
        return Err(ResistanceError::InvalidCycle(k));
    }
    let k = k as i64;
    Ok(CycleClosedForms {
        kf: Rational::new(k * k * k - k, 12),
        dr: Rational::new(k * k * k - k, 3),
        kf_v: Rational::new(k * k - 1, 6),
        d_v: Rational::new(k * k - 1, 3),
    })
}

/// Resistance between positions `i < j` (1-based) on `C_k`: two arcs of
/// `j - i` and `k - (j - i)` unit resistors in parallel.
pub fn cycle_pair_resistance(k: usize, i: usize, j: usize) -> Result<Rational, ResistanceError> {
    if k < 3 {
        return Err(ResistanceError::InvalidCycle(k));
    }
    if !(1 <= i && i < j && j <= k) {
        return Err(ResistanceError::InvalidPosition { k, i, j });
    }
    let (k, i, j) = (k as i64, i as i64, j as i64);
    Ok(Rational::new((j - i) * (k + i - j), k))
}

/// Degree resistance distance of the graph obtained by identifying `u1` in
/// `g1` with `u2` in `g2`, assembled from quantities of the two pieces alone.
pub fn compose_identified(
    g1: &Graph,
    u1: usize,
    g2: &Graph,
    u2: usize,
) -> Result<Rational, ResistanceError> {
    if u1 >= g1.n() {
        return Err(ResistanceError::VertexOutOfRange(u1));
    }
    if u2 >= g2.n() {
        return Err(ResistanceError::VertexOutOfRange(u2));
    }
    let a = invariants(g1)?;
    let b = invariants(g2)?;
    let (n1, m1) = (Rational::from(g1.n()), Rational::from(g1.m()));
    let (n2, m2) = (Rational::from(g2.n()), Rational::from(g2.m()));
    let two = Rational::from_integer(2);
    let one = Rational::one();
    Ok(a.degree_resistance
        + b.degree_resistance
        + &two * &m2 * &a.per_vertex[u1].kf
        + &two * &m1 * &b.per_vertex[u2].kf
        + (n2 - &one) * &a.per_vertex[u1].dv
        + (n1 - &one) * &b.per_vertex[u2].dv)
}

/// Direct route for the same quantity, used to cross-check
/// [`compose_identified`].
pub fn identified_degree_resistance(
    g1: &Graph,
    u1: usize,
    g2: &Graph,
    u2: usize,
) -> Result<Rational, ResistanceError> {
    let (g, _) = identify_vertices(g1, u1, g2, u2);
    degree_resistance(&g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(k: usize) -> Graph {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(k, &edges).unwrap()
    }

    fn path(k: usize) -> Graph {
        let edges: Vec<_> = (1..k).map(|i| (i - 1, i)).collect();
        Graph::new(k, &edges).unwrap()
    }

    fn bowtie() -> Graph {
        Graph::new(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn single_edge() {
        let r = resistance_matrix(&path(2)).unwrap();
        assert_eq!(r.get(0, 1), &Rational::one());
        assert_eq!(r.get(0, 0), &Rational::zero());
        let inv = invariants(&path(2)).unwrap();
        assert_eq!(inv.wiener, 1.into());
        assert_eq!(inv.kirchhoff, 1.into());
        assert_eq!(inv.degree_distance, 2.into());
        assert_eq!(inv.degree_resistance, 2.into());
    }

    #[test]
    fn four_cycle() {
        let r = resistance_matrix(&cycle(4)).unwrap();
        assert_eq!(r.get(0, 2), &Rational::one());
        assert_eq!(r.get(0, 1), &Rational::new(3, 4));
    }

    #[test]
    fn pair_queries() {
        assert_eq!(
            effective_resistance(&cycle(3), 0, 1).unwrap(),
            Rational::new(2, 3)
        );
        assert_eq!(
            effective_resistance(&cycle(5), 0, 2).unwrap(),
            Rational::new(6, 5)
        );
        assert_eq!(
            effective_resistance(&cycle(5), 3, 3).unwrap(),
            Rational::zero()
        );
        assert_eq!(
            effective_resistance(&Graph::empty(2), 0, 1),
            Err(ResistanceError::Disconnected)
        );
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn tree_resistance_is_hop_distance() {
        let star = Graph::new(5, &[(0, 1), (0, 2), (0, 3), (3, 4)]).unwrap();
        let r = resistance_matrix(&star).unwrap();
        let d = star.shortest_distances();
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(r.get(u, v), &Rational::from(d[u][v].unwrap()));
            }
        }
    }

    #[test]
    fn triangle_invariants() {
        let inv = invariants(&cycle(3)).unwrap();
        assert_eq!(inv.kirchhoff, 2.into());
        assert_eq!(inv.degree_resistance, 8.into());
        for s in &inv.per_vertex {
            assert_eq!(s.kf, Rational::new(4, 3));
            assert_eq!(s.dv, Rational::new(8, 3));
        }
    }

    #[test]
    fn bowtie_degree_resistance() {
        assert_eq!(degree_resistance(&bowtie()).unwrap(), Rational::new(128, 3));
    }

    #[test]
    fn closed_forms_for_small_cycles() {
        let c = |k| cycle_closed_forms(k).unwrap();
        assert_eq!(
            c(3),
            CycleClosedForms {
                kf: 2.into(),
                dr: 8.into(),
                kf_v: Rational::new(4, 3),
                d_v: Rational::new(8, 3)
            }
        );
        assert_eq!(
            c(4),
            CycleClosedForms {
                kf: 5.into(),
                dr: 20.into(),
                kf_v: Rational::new(5, 2),
                d_v: 5.into()
            }
        );
        assert_eq!(
            c(5),
            CycleClosedForms {
                kf: 10.into(),
                dr: 40.into(),
                kf_v: 4.into(),
                d_v: 8.into()
            }
        );
        assert_eq!(cycle_closed_forms(2), Err(ResistanceError::InvalidCycle(2)));
    }

    #[test]
    fn cycle_pair_formula() {
        assert_eq!(cycle_pair_resistance(3, 1, 2).unwrap(), Rational::new(2, 3));
        assert_eq!(cycle_pair_resistance(6, 1, 4).unwrap(), Rational::new(3, 2));
        for k in 3..10 {
            for i in 1..k {
                assert_eq!(
                    cycle_pair_resistance(k, i, i + 1).unwrap(),
                    Rational::new(k as i64 - 1, k as i64)
                );
            }
        }
        assert!(cycle_pair_resistance(5, 3, 3).is_err());
        assert!(cycle_pair_resistance(5, 0, 3).is_err());
        assert!(cycle_pair_resistance(5, 2, 6).is_err());
    }

    #[test]
    fn composition_examples() {
        assert_eq!(
            compose_identified(&cycle(3), 0, &cycle(3), 0).unwrap(),
            Rational::new(128, 3)
        );
        assert_eq!(
            compose_identified(&path(2), 1, &path(2), 0).unwrap(),
            10.into()
        );
        assert_eq!(degree_resistance(&path(3)).unwrap(), 10.into());
        let g = bowtie();
        assert_eq!(
            compose_identified(&g, 2, &Graph::empty(1), 0).unwrap(),
            degree_resistance(&g).unwrap()
        );
    }
}
