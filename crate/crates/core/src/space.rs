//! Finite topological spaces with opens stored as bitsets over the points.

use std::fmt;

use thiserror::Error;

use crate::category::FinCategory;

pub type Subset = u64;

pub const MAX_POINTS: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpaceError {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("at most {MAX_POINTS} points are supported, got {0}")]
    TooManyPoints(usize),
    #[error("space is not T0; points {0} and {1} have the same open neighbourhoods")]
    NotT0(String, String),
    #[error("not a topology: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<SpaceViolation>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceViolation {
    MissingEmpty,
    MissingFull,
    OutOfRange(Subset),
    UnionNotOpen(Subset, Subset),
    IntersectionNotOpen(Subset, Subset),
}

impl fmt::Display for SpaceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceViolation::MissingEmpty => write!(f, "the empty set is not open"),
            SpaceViolation::MissingFull => write!(f, "the whole space is not open"),
            SpaceViolation::OutOfRange(s) => write!(f, "open set {s:#b} mentions a point that does not exist"),
            SpaceViolation::UnionNotOpen(a, b) => write!(f, "union of {a:#b} and {b:#b} is not open"),
            SpaceViolation::IntersectionNotOpen(a, b) => write!(f, "intersection of {a:#b} and {b:#b} is not open"),
        }
    }
}

/// A finite set of named points with a family of open subsets. Bit `i` of a
/// subset stands for point `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinSpace {
    points: Vec<String>,
    opens: Vec<Subset>,
}

/// Closed points `X0` and locally closed points `X_lc`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PointClassification {
    pub closed: Subset,
    pub locally_closed: Subset,
}

impl FinSpace {
    /// Opens are kept in the given order with duplicates removed; nothing
    /// about the topology is checked.
    pub fn new(points: Vec<String>, opens: Vec<Subset>) -> Result<Self, SpaceError> {
        if points.len() > MAX_POINTS {
            return Err(SpaceError::TooManyPoints(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(SpaceError::DuplicatePoint(p.clone()));
            }
        }
        let mut unique = Vec::with_capacity(opens.len());
        for o in opens {
            if !unique.contains(&o) {
                unique.push(o);
            }
        }
        Ok(FinSpace { points, opens: unique })
    }

    pub fn from_named(points: &[&str], opens: &[&[&str]]) -> Result<Self, SpaceError> {
        let points: Vec<String> = points.iter().map(|s| s.to_string()).collect();
        let mut sets = Vec::with_capacity(opens.len());
        for open in opens {
            let mut s = 0;
            for name in *open {
                let i =
                    points.iter().position(|p| p == name).ok_or_else(|| SpaceError::UnknownPoint(name.to_string()))?;
                s |= 1 << i;
            }
            sets.push(s);
        }
        Self::new(points, sets)
    }

    /// The space whose opens are all subsets.
    pub fn discrete(n: usize) -> Self {
        let opens = (0..1u64 << n).collect();
        FinSpace { points: default_names(n), opens }
    }

    /// The space whose only opens are the empty set and everything.
    pub fn indiscrete(n: usize) -> Self {
        let full = full_set(n);
        let opens = if n == 0 { vec![0] } else { vec![0, full] };
        FinSpace { points: default_names(n), opens }
    }

    /// The Alexandrov topology of a preorder given by `le[x][y]` (x ≤ y):
    /// opens are the up-closed sets.
    pub fn from_preorder(points: Vec<String>, le: &[Vec<bool>]) -> Self {
        let n = points.len();
        let opens = (0..1u64 << n)
            .filter(|&s| (0..n).all(|x| s >> x & 1 == 0 || (0..n).all(|y| !le[x][y] || s >> y & 1 == 1)))
            .collect();
        FinSpace { points, opens }
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn point_name(&self, x: usize) -> &str {
        &self.points[x]
    }

    pub fn opens(&self) -> &[Subset] {
        &self.opens
    }

    pub fn full(&self) -> Subset {
        full_set(self.points.len())
    }

    pub fn is_open(&self, s: Subset) -> bool {
        self.opens.contains(&s)
    }

    pub fn is_closed(&self, s: Subset) -> bool {
        self.is_open(self.full() & !s)
    }

    /// Names of the points in `s`, in point order.
    pub fn subset_names(&self, s: Subset) -> Vec<String> {
        (0..self.num_points()).filter(|&i| s >> i & 1 == 1).map(|i| self.points[i].clone()).collect()
    }

    /// Topology axiom violations; empty iff the family of opens is a topology.
    pub fn validate(&self) -> Vec<SpaceViolation> {
        let full = self.full();
        let mut out = Vec::new();
        for &o in &self.opens {
            if o & !full != 0 {
                out.push(SpaceViolation::OutOfRange(o));
            }
        }
        if !out.is_empty() {
            return out;
        }
        if !self.is_open(0) {
            out.push(SpaceViolation::MissingEmpty);
        }
        if !self.is_open(full) {
            out.push(SpaceViolation::MissingFull);
        }
        for (i, &a) in self.opens.iter().enumerate() {
            for &b in &self.opens[i + 1..] {
                if !self.is_open(a | b) {
                    out.push(SpaceViolation::UnionNotOpen(a, b));
                }
                if !self.is_open(a & b) {
                    out.push(SpaceViolation::IntersectionNotOpen(a, b));
                }
            }
        }
        out
    }

    /// The least open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> Subset {
        self.opens.iter().filter(|&&o| o >> x & 1 == 1).fold(self.full(), |acc, &o| acc & o)
    }

    /// The least closed set containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        let full = self.full();
        self.opens.iter().map(|&o| full & !o).filter(|&c| c & s == s).fold(full, |acc, c| acc & c)
    }

    /// `x` is closed iff `{x}` is closed; locally closed iff
    /// `{x} = U_x ∩ cl{x}` (open in its closure).
    ///
    /// Both are read up to topological indistinguishability, with the class
    /// `[x]` of points sharing `x`'s opens in place of `{x}`. This changes
    /// nothing on T0 spaces and makes every property built on it depend only
    /// on `Sh(X)`, which cannot tell indistinguishable points apart.
    pub fn classify_points(&self) -> PointClassification {
        let n = self.num_points();
        let nb: Vec<Subset> = (0..n).map(|x| self.neighbourhood(x)).collect();
        let mut closed = 0;
        let mut locally_closed = 0;
        for x in 0..n {
            let class = (0..n).filter(|&y| nb[y] == nb[x]).fold(0, |acc, y| acc | 1 << y);
            let cl = self.closure(1 << x);
            if cl == class {
                closed |= 1 << x;
            }
            if nb[x] & cl == class {
                locally_closed |= 1 << x;
            }
        }
        PointClassification { closed, locally_closed }
    }

    /// Two distinct opens that agree on `points`, if any; pairs are scanned in
    /// open order.
    pub fn separating_failure(&self, points: Subset) -> Option<(Subset, Subset)> {
        for (i, &u) in self.opens.iter().enumerate() {
            for &v in &self.opens[i + 1..] {
                if u & points == v & points {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// Opens agreeing on closed points are equal.
    pub fn is_jacobson(&self) -> Result<(), (Subset, Subset)> {
        match self.separating_failure(self.classify_points().closed) {
            None => Ok(()),
            Some(pair) => Err(pair),
        }
    }

    /// Opens agreeing on locally closed points are equal.
    pub fn is_weakly_jacobson(&self) -> Result<(), (Subset, Subset)> {
        match self.separating_failure(self.classify_points().locally_closed) {
            None => Ok(()),
            Some(pair) => Err(pair),
        }
    }

    /// `le[x][y]` iff every open containing `x` contains `y`.
    pub fn specialization_order(&self) -> Vec<Vec<bool>> {
        let n = self.num_points();
        (0..n).map(|x| (0..n).map(|y| self.neighbourhood(x) >> y & 1 == 1).collect()).collect()
    }

    /// The first pair of distinct points with the same neighbourhoods.
    pub fn t0_failure(&self) -> Option<(usize, usize)> {
        let n = self.num_points();
        let nb: Vec<Subset> = (0..n).map(|x| self.neighbourhood(x)).collect();
        (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| nb[x] == nb[y])
    }

    pub fn is_t0(&self) -> bool {
        self.t0_failure().is_none()
    }

    /// Identifies points with equal neighbourhoods. Classes are ordered and
    /// named by their least member; `map[x]` is the class of `x`.
    pub fn t0_quotient(&self) -> (FinSpace, Vec<usize>) {
        let n = self.num_points();
        let nb: Vec<Subset> = (0..n).map(|x| self.neighbourhood(x)).collect();
        let mut reps: Vec<usize> = Vec::new();
        let mut map = vec![0; n];
        for x in 0..n {
            match reps.iter().position(|&r| nb[r] == nb[x]) {
                Some(k) => map[x] = k,
                None => {
                    map[x] = reps.len();
                    reps.push(x);
                }
            }
        }
        let opens = self
            .opens
            .iter()
            .map(|&o| reps.iter().enumerate().filter(|&(_, &r)| o >> r & 1 == 1).fold(0, |acc, (k, _)| acc | 1 << k))
            .collect();
        let points = reps.iter().map(|&r| self.points[r].clone()).collect();
        (FinSpace { points, opens }, map)
    }

    /// The poset category whose presheaves are the sheaves on this space.
    ///
    /// Objects are the points, in order. There is an arrow `x → y`, named
    /// `x_to_y`, whenever `x` lies in every open containing `y` (so
    /// `U_x ⊆ U_y`); for the Sierpinski space this is the single arrow from
    /// the open point to the closed point.
    pub fn to_presheaf_site(&self) -> Result<FinCategory, SpaceError> {
        if let Some((x, y)) = self.t0_failure() {
            return Err(SpaceError::NotT0(self.points[x].clone(), self.points[y].clone()));
        }
        let n = self.num_points();
        let nb: Vec<Subset> = (0..n).map(|x| self.neighbourhood(x)).collect();
        let arrow = |x: usize, y: usize| x != y && nb[y] >> x & 1 == 1;
        let name = |x: usize, y: usize| format!("{}_to_{}", self.points[x], self.points[y]);
        let mut arrows = Vec::new();
        let mut table = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if arrow(x, y) {
                    arrows.push((name(x, y), self.points[x].clone(), self.points[y].clone()));
                    for z in 0..n {
                        if arrow(y, z) {
                            table.push((name(y, z), name(x, y), name(x, z)));
                        }
                    }
                }
            }
        }
        Ok(FinCategory::from_named_table(&self.points, &arrows, &table).expect("a finite poset is a category"))
    }
}

impl fmt::Display for FinSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opens: Vec<String> =
            self.opens.iter().map(|&o| format!("{{{}}}", self.subset_names(o).join(","))).collect();
        write!(f, "{{{}}} opens [{}]", self.points.join(", "), opens.join(" "))
    }
}

fn full_set(n: usize) -> Subset {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// Every topology on `n` points (`n ≤ 5`), as families of opens listed in
/// increasing bitset order. Points are named `p0, p1, ...`.
pub fn enumerate_topologies(n: usize) -> Vec<FinSpace> {
    assert!(n <= 5, "topology enumeration is limited to five points");
    let full = full_set(n);
    let subsets: Vec<Subset> = (0..=full).filter(|&s| s != 0 && s != full).collect();
    let mut out = Vec::new();
    // choose which proper nonempty subsets are open; reject non-closed families
    let mut chosen: Vec<Subset> = Vec::new();
    fn go(i: usize, subsets: &[Subset], chosen: &mut Vec<Subset>, n: usize, full: Subset, out: &mut Vec<FinSpace>) {
        if i == subsets.len() {
            let mut opens = vec![0];
            opens.extend(chosen.iter().copied());
            if full != 0 {
                opens.push(full);
            }
            out.push(FinSpace { points: default_names(n), opens });
            return;
        }
        go(i + 1, subsets, chosen, n, full, out);
        let s = subsets[i];
        // subsets are visited in increasing order, so an intersection with an
        // earlier choice is already decided; unions are checked at the end
        let closed = chosen.iter().all(|&t| {
            let m = s & t;
            m == 0 || m == t || chosen.contains(&m)
        });
        if closed {
            chosen.push(s);
            go(i + 1, subsets, chosen, n, full, out);
            chosen.pop();
        }
    }
    go(0, &subsets, &mut chosen, n, full, &mut out);
    out.retain(|s| s.validate().is_empty());
    out.sort_by(|a, b| a.opens.cmp(&b.opens));
    out
}
