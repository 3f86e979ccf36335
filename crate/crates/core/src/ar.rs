//! Almost split (Auslander-Reiten) sequences between interval modules.
//!
//! Only two shapes are known to exist: for `a < b` strictly inside one
//! segment, the sequences through `[a,b] ⊕ (a,b)`. Point modules away from
//! sinks and sources provably have none. Everything else is reported as
//! outside the known cases rather than guessed.

use crate::decompose::is_indecomposable;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::linalg::{Field, Matrix};
use crate::morphism::{align, factors_through_source, factors_through_target, hom_basis, Morphism};
use crate::number::{int, ExtReal, Rational};
use crate::orientation::{Direction, Orientation};
use crate::tamerep::{cell_rep, TameRep};

/// `0 → M_left → M_middle[0] ⊕ M_middle[1] → M_right → 0` with maps
/// `[1; 1]` and `[1, −1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ARSequence {
    pub left: Interval,
    pub middle: Vec<Interval>,
    pub right: Interval,
    pub f: Morphism,
    pub g: Morphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum ARAnswer {
    Exists(ARSequence),
    ProvenNonexistent,
    /// Neither shape is covered by the known existence or nonexistence results.
    OutOfPaperScope,
}

impl ARAnswer {
    pub fn tag(&self) -> &'static str {
        match self {
            ARAnswer::Exists(_) => "Exists",
            ARAnswer::ProvenNonexistent => "ProvenNonexistent",
            ARAnswer::OutOfPaperScope => "OutOfPaperScope",
        }
    }
}

/// The segment direction when `a < b` both lie strictly between two
/// consecutive elements of S ∪ {±∞}.
fn open_segment(o: &Orientation, bar: &Interval) -> Option<(Rational, Rational, Direction)> {
    let (a, b) = (bar.lo().finite()?, bar.hi().finite()?);
    if a >= b || o.kind_at(a).is_some() {
        return None;
    }
    let seg = o.segment_index(a);
    (seg.hi > *b).then(|| (a.clone(), b.clone(), seg.direction))
}

fn half_open(a: &Rational, b: &Rational, lo_closed: bool, hi_closed: bool) -> Interval {
    Interval::new(a.clone().into(), lo_closed, b.clone().into(), hi_closed).expect("a < b")
}

fn is_non_critical_point(o: &Orientation, bar: &Interval) -> bool {
    bar.is_point() && bar.lo().finite().is_some_and(|a| o.kind_at(a).is_none())
}

/// The sequence `0 → U → B → C → 0` for `a < b` in a segment whose left end
/// is a sink (`U = [a,b)`) or a source (`U = (a,b]`).
fn sequence(o: &Orientation, a: &Rational, b: &Rational, direction: Direction, field: Field) -> Result<ARSequence> {
    let closed = half_open(a, b, true, true);
    let open = Interval::new(a.clone().into(), false, b.clone().into(), false).expect("a < b");
    let (left, middle, right) = match direction {
        Direction::Ascending => (
            half_open(a, b, true, false),
            vec![closed, open],
            half_open(a, b, false, true),
        ),
        Direction::Reversed => (
            half_open(a, b, false, true),
            vec![open, closed],
            half_open(a, b, true, false),
        ),
    };
    let u = TameRep::from_intervals(o, std::slice::from_ref(&left), field);
    let m = TameRep::from_intervals(o, &middle, field);
    let c = TameRep::from_intervals(o, std::slice::from_ref(&right), field);
    let (u, m) = align(&u, &m)?;
    let (m, c) = align(&m, &c)?;
    let u = u.refine(c.grid());
    let grid = u.grid().to_vec();
    let covers = |i: &Interval, j: usize| i.contains(&cell_rep(&grid, j));
    let mut f_cells = Vec::new();
    let mut g_cells = Vec::new();
    for j in 0..u.cell_count() {
        let mids: Vec<bool> = middle.iter().map(|i| covers(i, j)).collect();
        let rows = mids.iter().filter(|&&x| x).count();
        let mut f = Matrix::zeros(field, rows, u.dims()[j]);
        let mut g = Matrix::zeros(field, c.dims()[j], rows);
        let mut r = 0;
        for (k, &inside) in mids.iter().enumerate() {
            if !inside {
                continue;
            }
            if covers(&left, j) {
                f.set(r, 0, field.one());
            }
            if covers(&right, j) {
                g.set(0, r, field.from_i64(if k == 0 { 1 } else { -1 }));
            }
            r += 1;
        }
        f_cells.push(f);
        g_cells.push(g);
    }
    let bad = |e: Error| Error::Internal(format!("almost split sequence maps: {e}"));
    let f = Morphism::new(u, m.clone(), f_cells).map_err(bad)?;
    let g = Morphism::new(m, c, g_cells).map_err(bad)?;
    Ok(ARSequence {
        left,
        middle,
        right,
        f,
        g,
    })
}

/// The almost split sequence ending at `M_w`, when it is known.
pub fn ar_ending_at(o: &Orientation, w: &Interval) -> Result<ARAnswer> {
    if is_non_critical_point(o, w) {
        return Ok(ARAnswer::ProvenNonexistent);
    }
    match open_segment(o, w) {
        Some((a, b, Direction::Ascending)) if !w.lo_closed() && w.hi_closed() => Ok(ARAnswer::Exists(sequence(
            o,
            &a,
            &b,
            Direction::Ascending,
            Field::Rational,
        )?)),
        Some((a, b, Direction::Reversed)) if w.lo_closed() && !w.hi_closed() => Ok(ARAnswer::Exists(sequence(
            o,
            &a,
            &b,
            Direction::Reversed,
            Field::Rational,
        )?)),
        _ => Ok(ARAnswer::OutOfPaperScope),
    }
}

/// The almost split sequence starting at `M_u`, when it is known.
pub fn ar_starting_at(o: &Orientation, u: &Interval) -> Result<ARAnswer> {
    if is_non_critical_point(o, u) {
        return Ok(ARAnswer::ProvenNonexistent);
    }
    match open_segment(o, u) {
        Some((a, b, Direction::Ascending)) if u.lo_closed() && !u.hi_closed() => Ok(ARAnswer::Exists(sequence(
            o,
            &a,
            &b,
            Direction::Ascending,
            Field::Rational,
        )?)),
        Some((a, b, Direction::Reversed)) if !u.lo_closed() && u.hi_closed() => Ok(ARAnswer::Exists(sequence(
            o,
            &a,
            &b,
            Direction::Reversed,
            Field::Rational,
        )?)),
        _ => Ok(ARAnswer::OutOfPaperScope),
    }
}

/// Outcome of [`verify_almost_split`], one flag per condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verification {
    pub exact: bool,
    pub ends_indecomposable: bool,
    pub non_split: bool,
    /// Probes whose maps into the right end fail to factor.
    pub right_failures: Vec<Interval>,
    /// Probes whose maps out of the left end fail to factor.
    pub left_failures: Vec<Interval>,
}

impl Verification {
    pub fn passed(&self) -> bool {
        self.exact
            && self.ends_indecomposable
            && self.non_split
            && self.right_failures.is_empty()
            && self.left_failures.is_empty()
    }
}

/// Checks that `0 → U → B → C → 0` given by `f` and `g` is almost split,
/// testing the factorization conditions against interval modules `probes`.
pub fn verify_almost_split(f: &Morphism, g: &Morphism, probes: &[Interval]) -> Result<Verification> {
    let (u, c) = (f.source(), g.target());
    let gf = f.then(g)?;
    let balanced = {
        let (m, u2) = align(f.target(), u)?;
        let (m, c2) = align(&m, c)?;
        let u2 = u2.refine(c2.grid());
        (0..m.cell_count()).all(|j| m.dims()[j] == u2.dims()[j] + c2.dims()[j])
    };
    let exact = f.is_injective() && g.is_surjective() && gf.is_zero() && balanced;
    let ends_indecomposable = is_indecomposable(u) && is_indecomposable(c);
    let section = factors_through_source(&Morphism::identity(u), f)?;
    let retraction = factors_through_target(&Morphism::identity(c), g)?;
    let non_split = !section && !retraction;

    let o = u.orientation();
    let mut right_failures = Vec::new();
    let mut left_failures = Vec::new();
    for probe in probes {
        let x = TameRep::from_intervals(o, std::slice::from_ref(probe), u.field());
        if !crate::decompose::iso(&x, c)? {
            for h in hom_basis(&x, c)? {
                if !factors_through_target(&h, g)? {
                    right_failures.push(probe.clone());
                }
            }
        }
        if !crate::decompose::iso(&x, u)? {
            for h in hom_basis(u, &x)? {
                if !factors_through_source(&h, f)? {
                    left_failures.push(probe.clone());
                }
            }
        }
    }
    Ok(Verification {
        exact,
        ends_indecomposable,
        non_split,
        right_failures,
        left_failures,
    })
}

impl ARSequence {
    pub fn verify(&self, probes: &[Interval]) -> Result<Verification> {
        verify_almost_split(&self.f, &self.g, probes)
    }
}

/// A deterministic family of `count` probe intervals for `seq`. Endpoints
/// come from the criticals, the ends of the sequence's terms, points just
/// outside them, their midpoint and ±∞. Probes with a nonzero map into the
/// right end or out of the left end come first.
pub fn standard_probes(o: &Orientation, seq: &ARSequence, count: usize) -> Result<Vec<Interval>> {
    let a = seq.left.lo().finite().cloned().unwrap_or_else(|| int(0));
    let b = seq.left.hi().finite().cloned().unwrap_or_else(|| int(1));
    let delta = (&b - &a) / int(4);
    let mut points: Vec<Rational> = o.criticals().iter().map(|c| c.pos.clone()).collect();
    points.extend([&a - &delta, a.clone(), (&a + &b) / int(2), b.clone(), &b + &delta]);
    points.sort();
    points.dedup();
    let mut ends: Vec<ExtReal> = vec![ExtReal::NegInf];
    ends.extend(points.into_iter().map(ExtReal::Finite));
    ends.push(ExtReal::PosInf);

    let mut all = Vec::new();
    for (i, lo) in ends.iter().enumerate() {
        for hi in &ends[i..] {
            for (lc, hc) in [(true, true), (true, false), (false, true), (false, false)] {
                if let Ok(bar) = Interval::new(lo.clone(), lc, hi.clone(), hc) {
                    all.push(bar);
                }
            }
        }
    }
    all.sort();
    all.dedup();
    let field = seq.f.field();
    let u = seq.f.source();
    let c = seq.g.target();
    let mut relevant = Vec::new();
    let mut rest = Vec::new();
    for bar in all {
        let x = TameRep::from_intervals(o, std::slice::from_ref(&bar), field);
        if !hom_basis(&x, c)?.is_empty() || !hom_basis(u, &x)?.is_empty() {
            relevant.push(bar);
        } else {
            rest.push(bar);
        }
    }
    relevant.extend(rest);
    relevant.truncate(count);
    Ok(relevant)
}
