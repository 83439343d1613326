//! The cone of exponents `(m_1, .., m_k, n)` with `J_1^{m_1}...J_k^{m_k} ⊆ I^n`.
//!
//! Writing `α[s][j] = v_j(J_s) / e_j` for the Rees valuations `v_j` of `I`,
//! the closure of the cone is `{ (m, n) : m >= 0, 0 <= n <= min_j Σ_s m_s α[s][j] }`.
//! Only valuations whose region `D_j` (where form `j` is minimal) is more
//! than the origin contribute a bounding hyperplane.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::monomial::MonomialIdeal;
use crate::newton::{valuation_of_ideal, ValuationSet};
use crate::scalar::{common_denominator, dot, Scalar};
use crate::simplex::{lp_feasible, Constraint, Relation};

/// `α[s][j] = v_j(J_s) / e_j`, one row per ideal, one column per valuation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaMatrix<S> {
    rows: Vec<Vec<S>>,
}

impl<S: Scalar> AlphaMatrix<S> {
    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let h = rows
            .first()
            .ok_or_else(|| Error::Domain("alpha matrix needs at least one ideal".into()))?
            .len();
        if h == 0 {
            return Err(Error::Domain(
                "alpha matrix needs at least one valuation".into(),
            ));
        }
        for row in &rows {
            if row.len() != h {
                return Err(Error::Dimension {
                    expected: h,
                    found: row.len(),
                });
            }
            if row.iter().any(Signed::is_negative) {
                return Err(Error::Domain("alpha entries must be nonnegative".into()));
            }
        }
        Ok(Self { rows })
    }

    /// Number of ideals `k`.
    pub fn ideal_count(&self) -> usize {
        self.rows.len()
    }

    /// Number of valuations `h`.
    pub fn valuation_count(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<S>] {
        &self.rows
    }

    pub fn entry(&self, s: usize, j: usize) -> &S {
        &self.rows[s][j]
    }

    /// The coefficient vector `(α[0][j], .., α[k-1][j])` of form `j`.
    pub fn column(&self, j: usize) -> Vec<S> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Column indices grouped by identical columns, in first-occurrence order.
    fn distinct_columns(&self) -> Vec<(Vec<S>, Vec<usize>)> {
        let mut groups: Vec<(Vec<S>, Vec<usize>)> = Vec::new();
        for j in 0..self.valuation_count() {
            let col = self.column(j);
            match groups.iter_mut().find(|(c, _)| *c == col) {
                Some((_, members)) => members.push(j),
                None => groups.push((col, vec![j])),
            }
        }
        groups
    }
}

/// Builds `α[s][j] = v_j(J_s) / e_j`.
pub fn alpha_matrix<S: Scalar>(vs: &ValuationSet, js: &[MonomialIdeal]) -> Result<AlphaMatrix<S>> {
    let mut rows = Vec::with_capacity(js.len());
    for j in js {
        let mut row = Vec::with_capacity(vs.len());
        for v in vs.valuations() {
            row.push(S::from_u64(valuation_of_ideal(v, j)?) / S::from_u64(v.e()));
        }
        rows.push(row);
    }
    AlphaMatrix::from_rows(rows)
}

/// `D_j = { m >= 0 : Σ m_s α[s][j] <= Σ m_s α[s][l] for all l != j }`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionD<S> {
    pub index: usize,
    /// Each constraint reads `Σ m_s (α[s][j] - α[s][l]) <= 0`.
    pub constraints: Vec<Constraint<S>>,
}

impl<S: Scalar> RegionD<S> {
    pub fn contains(&self, m: &[S]) -> bool {
        m.iter().all(|x| !x.is_negative()) && self.constraints.iter().all(|c| c.is_satisfied_by(m))
    }
}

pub fn region_d<S: Scalar>(a: &AlphaMatrix<S>, j: usize) -> RegionD<S> {
    let col = a.column(j);
    let constraints = (0..a.valuation_count())
        .filter(|&l| l != j)
        .map(|l| {
            let other = a.column(l);
            let diff = col
                .iter()
                .zip(&other)
                .map(|(x, y)| x.clone() - y.clone())
                .collect();
            Constraint::new(diff, Relation::Le, S::zero())
        })
        .collect();
    RegionD {
        index: j,
        constraints,
    }
}

/// Valuations `j` (0-based) with `D_j != {0}`. Identical columns share the verdict.
pub fn relevant_valuations<S: Scalar>(a: &AlphaMatrix<S>) -> Vec<usize> {
    let k = a.ideal_count();
    let groups = a.distinct_columns();
    let mut relevant = Vec::new();
    for (g, (col, members)) in groups.iter().enumerate() {
        let mut cons = vec![Constraint::new(vec![S::one(); k], Relation::Eq, S::one())];
        for (h, (other, _)) in groups.iter().enumerate() {
            if h != g {
                let diff = col
                    .iter()
                    .zip(other)
                    .map(|(x, y)| x.clone() - y.clone())
                    .collect();
                cons.push(Constraint::new(diff, Relation::Le, S::zero()));
            }
        }
        if lp_feasible(k, &cons).expect("rows sized to k").is_some() {
            relevant.extend(members);
        }
    }
    relevant.sort_unstable();
    relevant
}

/// H-representation of the closure of the cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeClosure<S> {
    /// Rows `c` of the bounding hyperplanes `n = c·m`, one per distinct relevant column.
    pub hyperplanes: Vec<Vec<S>>,
    /// Relevant valuation indices (0-based).
    pub relevant: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// Strictly below every hyperplane; rational points here lie in the cone.
    Interior,
    /// On the upper boundary; membership is not decided.
    Boundary,
    /// Above some hyperplane; never in the cone.
    Outside,
}

impl PointClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PointClass::Interior => "interior",
            PointClass::Boundary => "boundary",
            PointClass::Outside => "outside",
        }
    }
}

pub fn cone_closure<S: Scalar>(a: &AlphaMatrix<S>) -> ConeClosure<S> {
    let relevant = relevant_valuations(a);
    let mut hyperplanes: Vec<Vec<S>> = Vec::new();
    for &j in &relevant {
        let col = a.column(j);
        if !hyperplanes.contains(&col) {
            hyperplanes.push(col);
        }
    }
    ConeClosure {
        hyperplanes,
        relevant,
    }
}

impl<S: Scalar> ConeClosure<S> {
    /// Number of ideals `k`; points live in dimension `k + 1`.
    pub fn ideal_count(&self) -> usize {
        self.hyperplanes[0].len()
    }

    /// `min_j c_j·m`, the height of the closure above `m`.
    pub fn ceiling(&self, m: &[S]) -> Result<S> {
        let mut best: Option<S> = None;
        for h in &self.hyperplanes {
            let v = dot(h, m)?;
            if best.as_ref().is_none_or(|b| v < *b) {
                best = Some(v);
            }
        }
        best.ok_or_else(|| Error::Domain("cone closure has no hyperplanes".into()))
    }
}

/// Classifies `(m_1, .., m_k, n)` against the closure.
pub fn classify_point<S: Scalar>(cc: &ConeClosure<S>, point: &[S]) -> Result<PointClass> {
    let k = cc.ideal_count();
    if point.len() != k + 1 {
        return Err(Error::Dimension {
            expected: k + 1,
            found: point.len(),
        });
    }
    if point.iter().any(Signed::is_negative) {
        return Err(Error::Domain("point has a negative coordinate".into()));
    }
    let ceiling = cc.ceiling(&point[..k])?;
    Ok(match point[k].cmp(&ceiling) {
        std::cmp::Ordering::Less => PointClass::Interior,
        std::cmp::Ordering::Equal => PointClass::Boundary,
        std::cmp::Ordering::Greater => PointClass::Outside,
    })
}

/// The limit of `v(m_1..m_k) / Σ a_s m_s` as all `m_s → ∞`, when it exists.
///
/// It exists iff `α[s][j] = l·a_s` for every ideal `s` and relevant `j`.
pub fn limit_exists<S: Scalar>(a: &AlphaMatrix<S>, weights: &[S]) -> Result<Option<S>> {
    let k = a.ideal_count();
    if weights.len() != k {
        return Err(Error::Dimension {
            expected: k,
            found: weights.len(),
        });
    }
    if weights.iter().any(|x| !x.is_positive()) {
        return Err(Error::Domain("limit weights must be positive".into()));
    }
    let relevant = relevant_valuations(a);
    let l = a.entry(0, relevant[0]).clone() / weights[0].clone();
    for (s, w) in weights.iter().enumerate() {
        let target = l.clone() * w.clone();
        if relevant.iter().any(|&j| *a.entry(s, j) != target) {
            return Ok(None);
        }
    }
    Ok(Some(l))
}

/// Triangle mesh of the upper boundary surface for two ideals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mesh<S> {
    pub bound: u64,
    pub vertices: Vec<[S; 3]>,
    /// 0-based vertex indices.
    pub faces: Vec<[usize; 3]>,
    /// Segments where two hyperplanes tie.
    pub seams: Vec<[usize; 2]>,
}

/// Meshes `n = min_j c_j·m` over `[0, bound]^2`.
pub fn emit_mesh<S: Scalar>(cc: &ConeClosure<S>, bound: u64) -> Result<Mesh<S>> {
    if cc.ideal_count() != 2 {
        return Err(Error::UnsupportedDimension(format!(
            "mesh needs exactly 2 ideals, got {}",
            cc.ideal_count()
        )));
    }
    if bound == 0 {
        return Err(Error::Domain("mesh bound must be positive".into()));
    }
    let b = S::from_u64(bound);
    let square = vec![
        [S::zero(), S::zero()],
        [b.clone(), S::zero()],
        [b.clone(), b.clone()],
        [S::zero(), b],
    ];
    let mut builder = MeshBuilder::new();
    let rows = &cc.hyperplanes;
    for (j, row) in rows.iter().enumerate() {
        let mut poly = square.clone();
        for (l, other) in rows.iter().enumerate() {
            if l != j {
                let normal = [
                    row[0].clone() - other[0].clone(),
                    row[1].clone() - other[1].clone(),
                ];
                poly = clip(&poly, &normal);
            }
        }
        let poly = simplify(poly);
        if poly.len() < 3 {
            continue;
        }
        let lift = |p: &[S; 2]| -> [S; 3] {
            let n = row[0].clone() * p[0].clone() + row[1].clone() * p[1].clone();
            [p[0].clone(), p[1].clone(), n]
        };
        let ids: Vec<usize> = poly.iter().map(|p| builder.vertex(lift(p))).collect();
        for w in 1..ids.len() - 1 {
            builder.faces.push([ids[0], ids[w], ids[w + 1]]);
        }
        for other in rows.iter().skip(j + 1) {
            let tie = |p: &[S; 2]| {
                (row[0].clone() - other[0].clone()) * p[0].clone()
                    + (row[1].clone() - other[1].clone()) * p[1].clone()
            };
            for e in 0..poly.len() {
                let (p, q) = (&poly[e], &poly[(e + 1) % poly.len()]);
                if tie(p).is_zero() && tie(q).is_zero() {
                    let (a, c) = (builder.vertex(lift(p)), builder.vertex(lift(q)));
                    builder.seams.push([a.min(c), a.max(c)]);
                }
            }
        }
    }
    builder.seams.sort_unstable();
    builder.seams.dedup();
    Ok(Mesh {
        bound,
        vertices: builder.vertices,
        faces: builder.faces,
        seams: builder.seams,
    })
}

struct MeshBuilder<S> {
    index: BTreeMap<[S; 3], usize>,
    vertices: Vec<[S; 3]>,
    faces: Vec<[usize; 3]>,
    seams: Vec<[usize; 2]>,
}

impl<S: Scalar> MeshBuilder<S> {
    fn new() -> Self {
        Self {
            index: BTreeMap::new(),
            vertices: Vec::new(),
            faces: Vec::new(),
            seams: Vec::new(),
        }
    }

    fn vertex(&mut self, v: [S; 3]) -> usize {
        if let Some(&i) = self.index.get(&v) {
            return i;
        }
        let i = self.vertices.len();
        self.index.insert(v.clone(), i);
        self.vertices.push(v);
        i
    }
}

/// Keeps the part of a convex polygon with `normal·p <= 0`.
fn clip<S: Scalar>(poly: &[[S; 2]], normal: &[S; 2]) -> Vec<[S; 2]> {
    let f = |p: &[S; 2]| normal[0].clone() * p[0].clone() + normal[1].clone() * p[1].clone();
    let mut out = Vec::new();
    for i in 0..poly.len() {
        let (p, q) = (&poly[i], &poly[(i + 1) % poly.len()]);
        let (fp, fq) = (f(p), f(q));
        if !fp.is_positive() {
            out.push(p.clone());
        }
        if (fp.is_negative() && fq.is_positive()) || (fp.is_positive() && fq.is_negative()) {
            let t = fp.clone() / (fp - fq);
            out.push([
                p[0].clone() + t.clone() * (q[0].clone() - p[0].clone()),
                p[1].clone() + t * (q[1].clone() - p[1].clone()),
            ]);
        }
    }
    out
}

/// Drops repeated and collinear vertices.
fn simplify<S: Scalar>(poly: Vec<[S; 2]>) -> Vec<[S; 2]> {
    let mut pts: Vec<[S; 2]> = Vec::new();
    for p in poly {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let collinear = (0..n).find(|&i| {
            let (a, b, c) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
            let cross = (b[0].clone() - a[0].clone()) * (c[1].clone() - a[1].clone())
                - (b[1].clone() - a[1].clone()) * (c[0].clone() - a[0].clone());
            cross.is_zero()
        });
        match collinear {
            Some(i) => {
                pts.remove(i);
            }
            None => return pts,
        }
    }
}

impl<S: Scalar> Mesh<S> {
    /// Common denominator applied to every coordinate on output.
    pub fn scale(&self) -> BigInt {
        common_denominator(self.vertices.iter().flatten())
    }

    /// Wavefront-style text: `v` lines with integer coordinates scaled by
    /// [`Mesh::scale`], `f` triangles and `l` seam segments (1-based).
    ///
    /// The surface is a cone, so the uniformly scaled mesh lies on it too.
    pub fn to_text(&self) -> String {
        let scale = self.scale();
        let mut out = String::new();
        let _ = writeln!(out, "# cone closure upper boundary n = min_j c_j.m");
        let _ = writeln!(out, "# bound {}", self.bound);
        let _ = writeln!(out, "# scale {scale}");
        let _ = writeln!(
            out,
            "# vertices {} faces {} seams {}",
            self.vertices.len(),
            self.faces.len(),
            self.seams.len()
        );
        let s = S::from_bigint(&scale);
        for v in &self.vertices {
            let c: Vec<String> = v
                .iter()
                .map(|x| {
                    let y = x.clone() * s.clone();
                    debug_assert!(y.is_integer());
                    y.numer_big().to_string()
                })
                .collect();
            let _ = writeln!(out, "v {} {} {}", c[0], c[1], c[2]);
        }
        for f in &self.faces {
            let _ = writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1);
        }
        for l in &self.seams {
            let _ = writeln!(out, "l {} {}", l[0] + 1, l[1] + 1);
        }
        out
    }
}
