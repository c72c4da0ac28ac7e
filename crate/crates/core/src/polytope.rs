//! Linear rate-inequality systems.
//!
//! Constraints are `Σ c_i R_i ≤ b` with integer coefficients, so the sign
//! logic of Fourier–Motzkin elimination is exact; only the bounds carry
//! floating-point mutual-information values.

use serde::Serialize;

use crate::error::{Error, Result};

/// Default membership tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Vertex deduplication distance.
const VERTEX_DEDUP: f64 = 1e-9;
/// A constant row `0 ≤ b` with `b` below this is treated as contradictory.
const EMPTY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct RateConstraint {
    /// One coefficient per variable of the owning polytope.
    pub coefficients: Vec<i64>,
    pub bound: f64,
    /// Human-readable provenance, e.g. the information expression of the bound.
    pub label: String,
}

impl RateConstraint {
    fn lhs(&self, point: &[f64]) -> f64 {
        self.coefficients
            .iter()
            .zip(point)
            .map(|(&c, &x)| c as f64 * x)
            .sum()
    }

    fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0)
    }
}

/// A linear expression `Σ c_i R_i` used by [`RatePolytope::substitute`].
pub type LinearExpr = Vec<(String, i64)>;

/// A polyhedron in named rate variables. Nonnegativity constraints are
/// stored explicitly like any other row. The empty-region marker is kept
/// separately so that "no rates achievable" differs from `{(0, 0)}`.
#[derive(Debug, Clone, PartialEq)]
pub struct RatePolytope {
    variables: Vec<String>,
    constraints: Vec<RateConstraint>,
    empty: bool,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn normalize(c: &mut RateConstraint) {
    let g = c.coefficients.iter().fold(0, |g, &x| gcd(g, x));
    if g > 1 {
        for x in &mut c.coefficients {
            *x /= g;
        }
        c.bound /= g as f64;
    }
}

impl RatePolytope {
    pub fn new<S: AsRef<str>>(variables: &[S]) -> Self {
        Self {
            variables: variables.iter().map(|s| s.as_ref().to_string()).collect(),
            constraints: Vec::new(),
            empty: false,
        }
    }

    /// The empty-region marker over the given variables.
    pub fn empty<S: AsRef<str>>(variables: &[S]) -> Self {
        Self {
            empty: true,
            ..Self::new(variables)
        }
    }

    pub fn is_marked_empty(&self) -> bool {
        self.empty
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn constraints(&self) -> &[RateConstraint] {
        &self.constraints
    }

    pub fn constraints_mut(&mut self) -> &mut Vec<RateConstraint> {
        &mut self.constraints
    }

    fn index_of(&self, var: &str) -> Result<usize> {
        self.variables
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))
    }

    /// Adds `Σ coeff·var ≤ bound`.
    pub fn add(&mut self, terms: &[(&str, i64)], bound: f64, label: impl Into<String>) -> Result<()> {
        let mut coefficients = vec![0; self.variables.len()];
        for (v, c) in terms {
            coefficients[self.index_of(v)?] += c;
        }
        if coefficients.iter().all(|&c| c == 0) {
            return Err(Error::InvalidInput("constraint has no nonzero coefficient".into()));
        }
        if !bound.is_finite() {
            return Err(Error::InvalidInput(format!("constraint bound {bound} is not finite")));
        }
        self.constraints.push(RateConstraint {
            coefficients,
            bound,
            label: label.into(),
        });
        Ok(())
    }

    /// Adds `var ≥ 0` for every variable.
    pub fn add_nonnegativity(&mut self) {
        for i in 0..self.variables.len() {
            let mut coefficients = vec![0; self.variables.len()];
            coefficients[i] = -1;
            self.constraints.push(RateConstraint {
                coefficients,
                bound: 0.0,
                label: format!("{} >= 0", self.variables[i]),
            });
        }
    }

    /// The same polytope with its variables listed in `order`, which must be
    /// a permutation of the current variables.
    pub fn reorder_as(&self, order: &[&str]) -> Result<Self> {
        if order.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variables.len(),
                got: order.len(),
            });
        }
        let idx: Vec<usize> = order.iter().map(|v| self.index_of(v)).collect::<Result<_>>()?;
        Ok(Self {
            variables: order.iter().map(|v| v.to_string()).collect(),
            constraints: self
                .constraints
                .iter()
                .map(|c| RateConstraint {
                    coefficients: idx.iter().map(|&i| c.coefficients[i]).collect(),
                    ..c.clone()
                })
                .collect(),
            empty: self.empty,
        })
    }

    /// Replaces `var` by a linear expression in (possibly new) variables and
    /// records that the expression itself is nonnegative.
    pub fn substitute(&self, var: &str, replacement: &[(&str, i64)]) -> Result<Self> {
        let k = self.index_of(var)?;
        let mut variables: Vec<String> = self.variables.clone();
        for (v, _) in replacement {
            if *v == var {
                return Err(Error::InvalidInput(format!("replacement for {var} mentions {var}")));
            }
            if !variables.iter().any(|x| x == v) {
                variables.push(v.to_string());
            }
        }
        let rep: Vec<i64> = {
            let mut r = vec![0; variables.len()];
            for (v, c) in replacement {
                let i = variables.iter().position(|x| x == v).unwrap();
                r[i] += c;
            }
            r
        };
        let remap = |row: &[i64]| -> Vec<i64> {
            let mut out = vec![0; variables.len()];
            out[..row.len()].copy_from_slice(row);
            let c = out[k];
            for (o, r) in out.iter_mut().zip(&rep) {
                *o += c * r;
            }
            out.remove(k);
            out
        };
        let mut constraints: Vec<RateConstraint> = self
            .constraints
            .iter()
            .map(|c| RateConstraint {
                coefficients: remap(&c.coefficients),
                bound: c.bound,
                label: c.label.clone(),
            })
            .collect();
        let mut nonneg: Vec<i64> = rep.iter().map(|x| -x).collect();
        nonneg.remove(k);
        let expr = replacement
            .iter()
            .map(|(v, c)| match c {
                1 => format!("+{v}"),
                -1 => format!("-{v}"),
                c => format!("{c:+}{v}"),
            })
            .collect::<String>();
        constraints.push(RateConstraint {
            coefficients: nonneg,
            bound: 0.0,
            label: format!("{var} = {} >= 0", expr.trim_start_matches('+')),
        });
        variables.remove(k);
        let mut out = Self {
            variables,
            constraints: Vec::new(),
            empty: self.empty,
        };
        out.absorb(constraints)?;
        Ok(out)
    }

    /// Projects out `var` by Fourier–Motzkin elimination.
    pub fn fm_eliminate(&self, var: &str) -> Result<Self> {
        let k = self.index_of(var)?;
        let mut variables = self.variables.clone();
        variables.remove(k);
        if self.empty {
            return Ok(Self::empty(&variables));
        }
        let drop_k = |row: &[i64]| -> Vec<i64> {
            let mut r = row.to_vec();
            r.remove(k);
            r
        };
        let (mut pos, mut neg, mut rows) = (Vec::new(), Vec::new(), Vec::new());
        for c in &self.constraints {
            match c.coefficients[k].signum() {
                1 => pos.push(c),
                -1 => neg.push(c),
                _ => rows.push(RateConstraint {
                    coefficients: drop_k(&c.coefficients),
                    bound: c.bound,
                    label: c.label.clone(),
                }),
            }
        }
        for p in &pos {
            for n in &neg {
                let a = p.coefficients[k];
                let b = -n.coefficients[k];
                let coeffs: Vec<i64> = p
                    .coefficients
                    .iter()
                    .zip(&n.coefficients)
                    .map(|(&x, &y)| b * x + a * y)
                    .collect();
                debug_assert_eq!(coeffs[k], 0);
                rows.push(RateConstraint {
                    coefficients: drop_k(&coeffs),
                    bound: b as f64 * p.bound + a as f64 * n.bound,
                    label: format!("({}) & ({})", p.label, n.label),
                });
            }
        }
        let mut out = Self {
            variables,
            constraints: Vec::new(),
            empty: false,
        };
        out.absorb(rows)?;
        if out.variables.len() == 2 && !out.empty {
            out.prune_2d();
        }
        Ok(out)
    }

    /// Installs `rows`: normalizes, drops tautologies, keeps the tightest of
    /// parallel rows, and flags contradictions as the empty region.
    fn absorb(&mut self, rows: Vec<RateConstraint>) -> Result<()> {
        for mut c in rows {
            normalize(&mut c);
            if c.is_zero() {
                if c.bound < -EMPTY_TOL {
                    self.empty = true;
                }
                continue;
            }
            match self
                .constraints
                .iter_mut()
                .find(|d| d.coefficients == c.coefficients)
            {
                Some(d) => {
                    if c.bound < d.bound {
                        *d = c;
                    }
                }
                None => self.constraints.push(c),
            }
        }
        if self.empty {
            self.constraints.clear();
        }
        Ok(())
    }

    /// Removes rows that do not cut the 2-D region, using its vertices.
    fn prune_2d(&mut self) {
        let mut i = 0;
        while i < self.constraints.len() {
            let candidate = self.constraints.remove(i);
            let keep = match self.vertices_2d() {
                Ok(vs) if !vs.is_empty() => vs
                    .iter()
                    .any(|v| candidate.lhs(&[v.0, v.1]) > candidate.bound + 1e-12),
                _ => true,
            };
            if keep {
                self.constraints.insert(i, candidate);
                i += 1;
            }
        }
    }

    /// Largest raw violation `Σ c_i x_i - b` over all rows (≤ 0 inside).
    pub fn max_violation(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.variables.len() {
            return Err(Error::DimensionMismatch {
                expected: self.variables.len(),
                got: point.len(),
            });
        }
        if self.empty {
            return Ok(f64::INFINITY);
        }
        Ok(self
            .constraints
            .iter()
            .map(|c| c.lhs(point) - c.bound)
            .fold(f64::NEG_INFINITY, f64::max))
    }

    /// Membership with tolerance on every row.
    pub fn contains(&self, point: &[f64], tol: f64) -> Result<bool> {
        Ok(self.max_violation(point)? <= tol)
    }

    /// The rows violated by more than `tol` at `point`.
    pub fn violated_by(&self, point: &[f64], tol: f64) -> Vec<&RateConstraint> {
        self.constraints
            .iter()
            .filter(|c| c.lhs(point) - c.bound > tol)
            .collect()
    }

    /// Vertices of a 2-D region, counterclockwise from the lexicographically
    /// smallest one. Empty for the empty region.
    pub fn vertices_2d(&self) -> Result<Vec<(f64, f64)>> {
        if self.variables.len() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: self.variables.len(),
            });
        }
        if self.empty {
            return Ok(Vec::new());
        }
        let rows: Vec<(f64, f64, f64)> = self
            .constraints
            .iter()
            .map(|c| (c.coefficients[0] as f64, c.coefficients[1] as f64, c.bound))
            .collect();
        let feasible = |x: f64, y: f64| {
            rows.iter()
                .all(|&(a, b, c)| a * x + b * y - c <= 1e-9 * (1.0 + c.abs()))
        };
        let mut verts: Vec<(f64, f64)> = Vec::new();
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                let (a1, b1, c1) = rows[i];
                let (a2, b2, c2) = rows[j];
                let det = a1 * b2 - a2 * b1;
                if det.abs() < 1e-12 {
                    continue;
                }
                let x = snap((c1 * b2 - c2 * b1) / det);
                let y = snap((a1 * c2 - a2 * c1) / det);
                if feasible(x, y)
                    && !verts
                        .iter()
                        .any(|v| (v.0 - x).abs() <= VERTEX_DEDUP && (v.1 - y).abs() <= VERTEX_DEDUP)
                {
                    verts.push((x, y));
                }
            }
        }
        if has_recession_direction(&rows) {
            return Err(Error::Unbounded);
        }
        Ok(sort_ccw(verts))
    }
}

fn snap(v: f64) -> f64 {
    if v.abs() < 1e-13 {
        0.0
    } else {
        v
    }
}

/// True when some nonzero direction d satisfies a·d ≤ 0 for every row.
/// In the plane a nontrivial polyhedral cone always contains a ray lying on
/// one of the lines a·d = 0, so testing those rays suffices.
fn has_recession_direction(rows: &[(f64, f64, f64)]) -> bool {
    let normals: Vec<(f64, f64)> = rows.iter().map(|&(a, b, _)| (a, b)).filter(|n| *n != (0.0, 0.0)).collect();
    if normals.is_empty() {
        return true;
    }
    normals.iter().any(|&(a, b)| {
        [(-b, a), (b, -a)]
            .iter()
            .any(|&(dx, dy)| normals.iter().all(|&(p, q)| p * dx + q * dy <= 1e-12))
    })
}

fn sort_ccw(mut verts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    if verts.len() < 2 {
        return verts;
    }
    let n = verts.len() as f64;
    let cx = verts.iter().map(|v| v.0).sum::<f64>() / n;
    let cy = verts.iter().map(|v| v.1).sum::<f64>() / n;
    verts.sort_by(|p, q| {
        let ap = (p.1 - cy).atan2(p.0 - cx);
        let aq = (q.1 - cy).atan2(q.0 - cx);
        ap.total_cmp(&aq)
    });
    let start = (0..verts.len())
        .min_by(|&i, &j| {
            verts[i]
                .0
                .total_cmp(&verts[j].0)
                .then(verts[i].1.total_cmp(&verts[j].1))
        })
        .unwrap();
    verts.rotate_left(start);
    verts
}

/// One Pareto-maximal point; `source` indexes the region it came from.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FrontierPoint {
    pub r0: f64,
    pub r2: f64,
    pub source: usize,
}

/// Pareto-maximal boundary of the convex hull of a union of 2-D regions,
/// sorted by increasing R0 (and therefore decreasing R2). Consecutive
/// points are joined by time-sharing segments.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionFrontier {
    pub points: Vec<FrontierPoint>,
}

impl RegionFrontier {
    /// Builds the frontier from raw candidate points.
    pub fn from_points(candidates: Vec<FrontierPoint>) -> Self {
        let mut pts = candidates;
        pts.sort_by(|p, q| p.r0.total_cmp(&q.r0).then(p.r2.total_cmp(&q.r2)));
        // staircase: sweep from the right keeping strict R2 improvements
        let mut stair: Vec<FrontierPoint> = Vec::new();
        let mut best = f64::NEG_INFINITY;
        for p in pts.iter().rev() {
            if p.r2 > best + 1e-12 {
                stair.push(*p);
                best = p.r2;
            }
        }
        stair.reverse();
        // upper concave hull of the staircase
        let mut hull: Vec<FrontierPoint> = Vec::new();
        for p in stair {
            while hull.len() >= 2 {
                let o = hull[hull.len() - 2];
                let a = hull[hull.len() - 1];
                let cross = (a.r0 - o.r0) * (p.r2 - o.r2) - (a.r2 - o.r2) * (p.r0 - o.r0);
                if cross >= -1e-15 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        Self { points: hull }
    }

    /// Membership of `point` in the down-closed convex region under the
    /// frontier, after shifting the point by `slack` toward the origin.
    pub fn contains(&self, point: (f64, f64), slack: f64) -> bool {
        let x = (point.0 - slack).max(0.0);
        let y = (point.1 - slack).max(0.0);
        let (Some(first), Some(last)) = (self.points.first(), self.points.last()) else {
            return false;
        };
        if x > last.r0 {
            return false;
        }
        if x <= first.r0 {
            return y <= first.r2;
        }
        for w in self.points.windows(2) {
            let (a, b) = (w[0], w[1]);
            if x <= b.r0 {
                let t = (x - a.r0) / (b.r0 - a.r0);
                return y <= a.r2 + t * (b.r2 - a.r2);
            }
        }
        y <= last.r2
    }

    /// Largest weighted sum `w0·R0 + w2·R2` over the frontier.
    pub fn support(&self, w0: f64, w2: f64) -> f64 {
        self.points
            .iter()
            .map(|p| w0 * p.r0 + w2 * p.r2)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Frontier of the time-sharing closure of a union of (R0, R2) regions.
pub fn frontier_union(regions: &[RatePolytope]) -> Result<RegionFrontier> {
    if regions.is_empty() {
        return Err(Error::InvalidInput("frontier of an empty list of regions".into()));
    }
    let mut candidates = Vec::new();
    for (i, r) in regions.iter().enumerate() {
        for (r0, r2) in r.vertices_2d()? {
            candidates.push(FrontierPoint { r0, r2, source: i });
        }
    }
    Ok(RegionFrontier::from_points(candidates))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(a: f64, b: f64) -> RatePolytope {
        let mut p = RatePolytope::new(&["R0", "R2"]);
        p.add(&[("R0", 1)], a, "a").unwrap();
        p.add(&[("R2", 1)], b, "b").unwrap();
        p.add_nonnegativity();
        p
    }

    #[test]
    fn substitute_example() {
        let mut p = RatePolytope::new(&["R2p"]);
        p.add(&[("R2p", 1)], 0.5, "cap").unwrap();
        let q = p.substitute("R2p", &[("R2", 1), ("R2c", -1)]).unwrap();
        assert_eq!(q.variables(), ["R2", "R2c"]);
        assert_eq!(q.constraints().len(), 2);
        assert_eq!(q.constraints()[0].coefficients, vec![1, -1]);
        assert_eq!(q.constraints()[0].bound, 0.5);
        assert_eq!(q.constraints()[1].coefficients, vec![-1, 1]);
        assert_eq!(q.constraints()[1].bound, 0.0);
    }

    #[test]
    fn substitute_leaves_unrelated_rows() {
        let mut p = RatePolytope::new(&["A", "B"]);
        p.add(&[("A", 1)], 2.0, "a").unwrap();
        p.add(&[("B", 1)], 3.0, "b").unwrap();
        let q = p.substitute("B", &[("C", 1), ("D", 1)]).unwrap();
        assert_eq!(q.variables(), ["A", "C", "D"]);
        assert_eq!(q.constraints()[0].coefficients, vec![1, 0, 0]);
        assert_eq!(q.constraints()[0].bound, 2.0);
        assert!(matches!(p.substitute("Z", &[("A", 1)]), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn fm_single_pair() {
        let mut p = RatePolytope::new(&["x", "y"]);
        p.add(&[("x", 1)], 3.0, "x<=3").unwrap();
        p.add(&[("x", -1)], 0.0, "x>=0").unwrap();
        p.add(&[("x", 1), ("y", 1)], 5.0, "x+y<=5").unwrap();
        let q = p.fm_eliminate("x").unwrap();
        assert_eq!(q.variables(), ["y"]);
        assert_eq!(q.constraints().len(), 1);
        assert_eq!(q.constraints()[0].coefficients, vec![1]);
        assert_eq!(q.constraints()[0].bound, 5.0);
    }

    #[test]
    fn fm_without_lower_bounds_drops_rows() {
        let mut p = RatePolytope::new(&["x", "y"]);
        p.add(&[("x", 1)], 3.0, "").unwrap();
        p.add(&[("x", 1), ("y", 1)], 5.0, "").unwrap();
        p.add(&[("y", -1)], 0.0, "").unwrap();
        let q = p.fm_eliminate("x").unwrap();
        assert_eq!(q.constraints().len(), 1);
        assert_eq!(q.constraints()[0].coefficients, vec![-1]);
    }

    #[test]
    fn fm_detects_contradiction() {
        let mut p = RatePolytope::new(&["x", "y"]);
        p.add(&[("x", 1)], 1.0, "").unwrap();
        p.add(&[("x", -1)], -2.0, "").unwrap();
        let q = p.fm_eliminate("x").unwrap();
        assert!(q.is_marked_empty());
        assert!(!q.contains(&[0.0], 1.0).unwrap());
        assert!(q.fm_eliminate("y").unwrap().is_marked_empty());
    }

    #[test]
    fn vertices_of_pentagon() {
        let mut p = square(1.0, 1.0);
        p.add(&[("R0", 1), ("R2", 1)], 1.5, "sum").unwrap();
        let v = p.vertices_2d().unwrap();
        let want = [(0.0, 0.0), (1.0, 0.0), (1.0, 0.5), (0.5, 1.0), (0.0, 1.0)];
        assert_eq!(v.len(), want.len());
        for (a, b) in v.iter().zip(want) {
            assert!((a.0 - b.0).abs() < 1e-12 && (a.1 - b.1).abs() < 1e-12, "{v:?}");
        }
    }

    #[test]
    fn vertices_of_point_region() {
        let v = square(0.0, 0.0).vertices_2d().unwrap();
        assert_eq!(v, vec![(0.0, 0.0)]);
    }

    #[test]
    fn vertices_errors() {
        let mut p = RatePolytope::new(&["R0", "R2"]);
        p.add(&[("R0", 1)], 1.0, "").unwrap();
        p.add_nonnegativity();
        assert_eq!(p.vertices_2d(), Err(Error::Unbounded));
        let q = RatePolytope::new(&["a", "b", "c"]);
        assert!(matches!(q.vertices_2d(), Err(Error::DimensionMismatch { .. })));
        assert_eq!(RatePolytope::empty(&["R0", "R2"]).vertices_2d().unwrap(), vec![]);
    }

    #[test]
    fn containment() {
        let p = square(1.0, 1.0);
        assert!(p.contains(&[0.0, 0.0], DEFAULT_TOL).unwrap());
        assert!(!p.contains(&[2.0, 0.5], DEFAULT_TOL).unwrap());
        assert!(p.contains(&[1.0 + 1e-10, 0.5], DEFAULT_TOL).unwrap());
        assert!(matches!(p.contains(&[0.0], DEFAULT_TOL), Err(Error::DimensionMismatch { .. })));
        assert_eq!(p.violated_by(&[2.0, 0.5], 1e-9).len(), 1);
    }

    #[test]
    fn empty_marker_differs_from_origin() {
        let e = RatePolytope::empty(&["R0", "R2"]);
        let z = square(0.0, 0.0);
        assert!(!e.contains(&[0.0, 0.0], 1e-9).unwrap());
        assert!(z.contains(&[0.0, 0.0], 1e-9).unwrap());
        assert_ne!(e, z);
    }

    #[test]
    fn frontier_of_rectangle() {
        let f = frontier_union(&[square(1.0, 1.0)]).unwrap();
        assert_eq!(f.points.len(), 1);
        assert_eq!((f.points[0].r0, f.points[0].r2), (1.0, 1.0));
    }

    #[test]
    fn frontier_time_sharing() {
        let f = frontier_union(&[square(1.0, 0.2), square(0.2, 1.0)]).unwrap();
        let pts: Vec<_> = f.points.iter().map(|p| (p.r0, p.r2, p.source)).collect();
        assert_eq!(pts, vec![(0.2, 1.0, 1), (1.0, 0.2, 0)]);
        // midpoint of the time-sharing segment is inside, beyond it is not
        assert!(f.contains((0.6, 0.6), 1e-9));
        assert!(!f.contains((0.65, 0.65), 1e-9));
        assert!(frontier_union(&[]).is_err());
    }

    #[test]
    fn frontier_drops_points_under_the_hull() {
        let f = frontier_union(&[square(1.0, 0.0), square(0.0, 1.0), square(0.4, 0.4)]).unwrap();
        assert_eq!(f.points.len(), 2);
        let g = frontier_union(&[square(1.0, 0.0), square(0.0, 1.0), square(0.6, 0.6)]).unwrap();
        assert_eq!(g.points.len(), 3);
    }

    #[test]
    fn prune_2d_removes_slack_rows() {
        let mut p = RatePolytope::new(&["R0", "R2", "t"]);
        p.add(&[("R0", 1)], 1.0, "").unwrap();
        p.add(&[("R2", 1)], 1.0, "").unwrap();
        p.add(&[("R0", 1), ("R2", 1)], 5.0, "slack").unwrap();
        p.add(&[("t", 1)], 1.0, "").unwrap();
        p.add(&[("t", -1)], 0.0, "").unwrap();
        p.add(&[("R0", -1)], 0.0, "").unwrap();
        p.add(&[("R2", -1)], 0.0, "").unwrap();
        let q = p.fm_eliminate("t").unwrap();
        assert_eq!(q.constraints().len(), 4);
        assert!(q.constraints().iter().all(|c| c.label != "slack"));
    }
}
