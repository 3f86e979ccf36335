//! Orientations of the real line: a finite alternating set of sinks and
//! sources and the partial order ⪯ they induce.
//!
//! Arrows point toward sinks, so on a segment whose left end is a sink the
//! order ⪯ agrees with ≤, and on a segment whose left end is a source it is
//! reversed. The two unbounded end segments continue the alternation: the
//! virtual critical at −∞ (resp. +∞) has the opposite kind of the first
//! (resp. last) real critical.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::number::{ExtReal, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Sink,
    Source,
}

impl Kind {
    pub fn flip(self) -> Kind {
        match self {
            Kind::Sink => Kind::Source,
            Kind::Source => Kind::Sink,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Sink => "sink",
            Kind::Source => "source",
        })
    }
}

/// Which of the two orders is used when there are no sinks or sources.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EmptyDirection {
    /// ⪯ coincides with ≤.
    Descending,
    /// ⪯ coincides with ≥.
    Ascending,
}

impl EmptyDirection {
    pub fn flip(self) -> EmptyDirection {
        match self {
            EmptyDirection::Descending => EmptyDirection::Ascending,
            EmptyDirection::Ascending => EmptyDirection::Descending,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Critical {
    pub pos: Rational,
    pub kind: Kind,
}

/// How ⪯ relates to ≤ on a segment between consecutive criticals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `x ≤ y` implies `x ⪯ y` (the left end is a sink).
    Ascending,
    /// `x ≤ y` implies `y ⪯ x` (the left end is a source).
    Reversed,
}

/// A closed segment between consecutive elements of S ∪ {±∞}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub lo: ExtReal,
    pub hi: ExtReal,
    pub direction: Direction,
}

impl Segment {
    /// The end of the segment that is ⪯-minimal.
    pub fn sink_end(&self) -> &ExtReal {
        match self.direction {
            Direction::Ascending => &self.lo,
            Direction::Reversed => &self.hi,
        }
    }

    pub fn source_end(&self) -> &ExtReal {
        match self.direction {
            Direction::Ascending => &self.hi,
            Direction::Reversed => &self.lo,
        }
    }

    /// The segment as a set, with infinite ends open.
    pub fn as_interval(&self) -> Interval {
        Interval::new(
            self.lo.clone(),
            self.lo.is_finite(),
            self.hi.clone(),
            self.hi.is_finite(),
        )
        .expect("segment ends are ordered")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    criticals: Vec<Critical>,
    empty_direction: EmptyDirection,
}

impl Orientation {
    pub fn new(criticals: Vec<Critical>, empty_direction: EmptyDirection) -> Result<Orientation> {
        for w in criticals.windows(2) {
            if w[0].pos >= w[1].pos {
                return Err(Error::InvalidOrientation(
                    "positions must be strictly increasing".into(),
                ));
            }
            if w[0].kind == w[1].kind {
                return Err(Error::InvalidOrientation("sinks and sources must alternate".into()));
            }
        }
        Ok(Orientation {
            criticals,
            empty_direction,
        })
    }

    /// The straight descending orientation, where ⪯ is ≤.
    pub fn descending() -> Orientation {
        Orientation {
            criticals: Vec::new(),
            empty_direction: EmptyDirection::Descending,
        }
    }

    pub fn ascending() -> Orientation {
        Orientation {
            criticals: Vec::new(),
            empty_direction: EmptyDirection::Ascending,
        }
    }

    /// Alternating criticals at `positions`, the first of kind `first`.
    pub fn alternating(positions: &[Rational], first: Kind) -> Result<Orientation> {
        let mut kind = first;
        let criticals = positions
            .iter()
            .map(|p| {
                let c = Critical { pos: p.clone(), kind };
                kind = kind.flip();
                c
            })
            .collect();
        Orientation::new(criticals, EmptyDirection::Descending)
    }

    pub fn criticals(&self) -> &[Critical] {
        &self.criticals
    }

    pub fn empty_direction(&self) -> EmptyDirection {
        self.empty_direction
    }

    pub fn kind_at(&self, x: &Rational) -> Option<Kind> {
        self.criticals
            .binary_search_by(|c| c.pos.cmp(x))
            .ok()
            .map(|i| self.criticals[i].kind)
    }

    /// Kind of the virtual critical at −∞.
    pub fn neg_inf_kind(&self) -> Kind {
        match self.criticals.first() {
            Some(c) => c.kind.flip(),
            None => match self.empty_direction {
                EmptyDirection::Descending => Kind::Sink,
                EmptyDirection::Ascending => Kind::Source,
            },
        }
    }

    /// Kind of the virtual critical at +∞.
    pub fn pos_inf_kind(&self) -> Kind {
        match self.criticals.last() {
            Some(c) => c.kind.flip(),
            None => self.neg_inf_kind().flip(),
        }
    }

    /// Kind of any element of S ∪ {±∞}.
    pub fn kind_at_ext(&self, x: &ExtReal) -> Option<Kind> {
        match x {
            ExtReal::NegInf => Some(self.neg_inf_kind()),
            ExtReal::PosInf => Some(self.pos_inf_kind()),
            ExtReal::Finite(r) => self.kind_at(r),
        }
    }

    /// Number of criticals `c` with `c.pos <= x` (or `< x` when `strict`).
    fn count_below(&self, x: &Rational, strict: bool) -> usize {
        self.criticals
            .partition_point(|c| if strict { c.pos < *x } else { c.pos <= *x })
    }

    fn kind_after(&self, count: usize) -> Kind {
        if count == 0 {
            self.neg_inf_kind()
        } else {
            self.criticals[count - 1].kind
        }
    }

    fn pos_ext(&self, index: Option<usize>, below: bool) -> ExtReal {
        match index {
            Some(i) => ExtReal::Finite(self.criticals[i].pos.clone()),
            None if below => ExtReal::NegInf,
            None => ExtReal::PosInf,
        }
    }

    /// Whether ⪯ agrees with ≤ immediately to the right of `x`.
    pub fn ascending_right_of(&self, x: &Rational) -> bool {
        self.kind_after(self.count_below(x, false)) == Kind::Sink
    }

    /// Whether ⪯ agrees with ≤ immediately to the left of `x`.
    pub fn ascending_left_of(&self, x: &Rational) -> bool {
        self.kind_after(self.count_below(x, true)) == Kind::Sink
    }

    /// Whether `x ⪯ y`.
    pub fn leq(&self, x: &Rational, y: &Rational) -> bool {
        if x == y {
            return true;
        }
        let (lo, hi) = if x < y { (x, y) } else { (y, x) };
        // A critical strictly between the two makes them incomparable.
        if self.count_below(hi, true) > self.count_below(lo, false) {
            return false;
        }
        let ascending = self.ascending_right_of(lo);
        (x < y) == ascending
    }

    /// The segment containing `x`; a critical point reports the segment on
    /// its right.
    pub fn segment_index(&self, x: &Rational) -> Segment {
        let below = self.count_below(x, false);
        Segment {
            lo: self.pos_ext(below.checked_sub(1), true),
            hi: self.pos_ext((below < self.criticals.len()).then_some(below), false),
            direction: self.direction_after(below),
        }
    }

    /// Both segments containing `x` when it is a critical, otherwise one.
    pub fn segments_touching(&self, x: &Rational) -> Vec<Segment> {
        let right = self.segment_index(x);
        if self.kind_at(x).is_none() {
            return vec![right];
        }
        let below = self.count_below(x, true);
        let left = Segment {
            lo: self.pos_ext(below.checked_sub(1), true),
            hi: ExtReal::Finite(x.clone()),
            direction: self.direction_after(below),
        };
        vec![left, right]
    }

    fn direction_after(&self, count: usize) -> Direction {
        match self.kind_after(count) {
            Kind::Sink => Direction::Ascending,
            Kind::Source => Direction::Reversed,
        }
    }

    /// All segments from left to right.
    pub fn segments(&self) -> Vec<Segment> {
        (0..=self.criticals.len())
            .map(|count| Segment {
                lo: self.pos_ext(count.checked_sub(1), true),
                hi: self.pos_ext((count < self.criticals.len()).then_some(count), false),
                direction: self.direction_after(count),
            })
            .collect()
    }

    /// `{x : x ⪯ a}`.
    pub fn down_set(&self, a: &Rational) -> Interval {
        self.down_set_ext(&ExtReal::Finite(a.clone()))
            .expect("down-set of a real point contains the point")
    }

    /// `{x : a ⪯ x}`.
    pub fn up_set(&self, a: &Rational) -> Interval {
        self.reverse().down_set(a)
    }

    /// Down-set of an element of ℝ ∪ {±∞}. At an infinite end this is the
    /// support generated by the virtual critical there, which is empty for
    /// a virtual sink.
    pub fn down_set_ext(&self, a: &ExtReal) -> Option<Interval> {
        let closed_at = |e: &ExtReal| e.is_finite();
        match a {
            ExtReal::NegInf => {
                if self.neg_inf_kind() == Kind::Sink {
                    return None;
                }
                let hi = self.pos_ext((!self.criticals.is_empty()).then_some(0), false);
                Interval::new(ExtReal::NegInf, false, hi.clone(), closed_at(&hi)).ok()
            }
            ExtReal::PosInf => {
                if self.pos_inf_kind() == Kind::Sink {
                    return None;
                }
                let lo = self.pos_ext(self.criticals.len().checked_sub(1), true);
                Interval::new(lo.clone(), closed_at(&lo), ExtReal::PosInf, false).ok()
            }
            ExtReal::Finite(x) => match self.kind_at(x) {
                Some(Kind::Sink) => Some(Interval::point(x.clone())),
                Some(Kind::Source) => {
                    let i = self.count_below(x, true);
                    let lo = self.pos_ext(i.checked_sub(1), true);
                    let hi = self.pos_ext((i + 1 < self.criticals.len()).then_some(i + 1), false);
                    Interval::new(lo.clone(), closed_at(&lo), hi.clone(), closed_at(&hi)).ok()
                }
                None => {
                    let seg = self.segment_index(x);
                    let here = ExtReal::Finite(x.clone());
                    match seg.direction {
                        Direction::Ascending => Interval::new(seg.lo.clone(), closed_at(&seg.lo), here, true).ok(),
                        Direction::Reversed => Interval::new(here, true, seg.hi.clone(), closed_at(&seg.hi)).ok(),
                    }
                }
            },
        }
    }

    /// The opposite quiver: same positions, every sink and source swapped.
    pub fn reverse(&self) -> Orientation {
        Orientation {
            criticals: self
                .criticals
                .iter()
                .map(|c| Critical {
                    pos: c.pos.clone(),
                    kind: c.kind.flip(),
                })
                .collect(),
            empty_direction: self.empty_direction.flip(),
        }
    }

    /// Piecewise-linear bijection ℝ → ℝ sending the i-th critical of `self`
    /// to the i-th critical of `other`, affine between criticals and a
    /// translation on the unbounded end segments.
    pub fn reparameterize(&self, other: &Orientation, x: &Rational) -> Result<Rational> {
        let compatible = self.criticals.len() == other.criticals.len()
            && self.neg_inf_kind() == other.neg_inf_kind()
            && self.pos_inf_kind() == other.pos_inf_kind();
        if !compatible {
            return Err(Error::IncompatibleOrientations);
        }
        let (from, to) = (&self.criticals, &other.criticals);
        if from.is_empty() {
            return Ok(x.clone());
        }
        let n = from.len();
        if *x <= from[0].pos {
            return Ok(x - &from[0].pos + &to[0].pos);
        }
        if *x >= from[n - 1].pos {
            return Ok(x - &from[n - 1].pos + &to[n - 1].pos);
        }
        let i = self.count_below(x, false) - 1;
        let t = (x - &from[i].pos) / (&from[i + 1].pos - &from[i].pos);
        Ok(&to[i].pos + t * (&to[i + 1].pos - &to[i].pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat};

    fn sink0_source1() -> Orientation {
        Orientation::alternating(&[int(0), int(1)], Kind::Sink).unwrap()
    }

    #[test]
    fn descending_matches_usual_order() {
        let o = Orientation::descending();
        assert!(o.leq(&int(1), &int(2)));
        assert!(!o.leq(&int(2), &int(1)));
        assert!(o.leq(&int(5), &int(5)));
    }

    #[test]
    fn order_reverses_left_of_first_sink() {
        let o = sink0_source1();
        assert!(!o.leq(&int(-1), &rat(-1, 2)));
        assert!(o.leq(&rat(-1, 2), &int(-1)));
        assert!(o.leq(&int(0), &rat(1, 2)));
        assert!(o.leq(&int(2), &int(1)));
        // incomparable across a critical
        assert!(!o.leq(&int(-1), &rat(1, 2)) && !o.leq(&rat(1, 2), &int(-1)));
    }

    #[test]
    fn segment_lookup() {
        let o = sink0_source1();
        let s = o.segment_index(&rat(1, 2));
        assert_eq!(
            (s.lo, s.hi, s.direction),
            (int(0).into(), int(1).into(), Direction::Ascending)
        );
        let s = o.segment_index(&int(-5));
        assert_eq!(
            (s.lo, s.hi, s.direction),
            (ExtReal::NegInf, int(0).into(), Direction::Reversed)
        );
        let s = Orientation::descending().segment_index(&int(7));
        assert_eq!(
            (s.lo, s.hi, s.direction),
            (ExtReal::NegInf, ExtReal::PosInf, Direction::Ascending)
        );
        // boundary convention: the right-hand segment
        assert_eq!(o.segment_index(&int(0)).lo, ExtReal::Finite(int(0)));
        assert_eq!(o.segments_touching(&int(0)).len(), 2);
        assert_eq!(o.segments_touching(&rat(1, 3)).len(), 1);
    }

    #[test]
    fn down_sets_match_projective_supports() {
        let o = sink0_source1();
        assert_eq!(o.down_set(&int(1)), Interval::parse("[0,+inf)").unwrap());
        assert_eq!(o.down_set(&int(-3)), Interval::parse("[-3,0]").unwrap());
        assert_eq!(o.down_set(&int(0)), Interval::parse("{0}").unwrap());
        assert_eq!(o.down_set(&int(5)), Interval::parse("[5,+inf)").unwrap());
        assert_eq!(
            o.down_set_ext(&ExtReal::NegInf),
            Some(Interval::parse("(-inf,0]").unwrap())
        );
        assert_eq!(o.down_set_ext(&ExtReal::PosInf), None);
    }

    #[test]
    fn up_sets() {
        let o = Orientation::descending();
        assert_eq!(o.up_set(&int(0)), Interval::parse("[0,+inf)").unwrap());
        assert_eq!(sink0_source1().up_set(&int(0)), Interval::parse("(-inf,1]").unwrap());
    }

    #[test]
    fn reverse_is_involution() {
        let o = sink0_source1();
        let r = o.reverse();
        assert_eq!(r.criticals()[0].kind, Kind::Source);
        assert_eq!(r.reverse(), o);
        assert_eq!(Orientation::descending().reverse(), Orientation::ascending());
    }

    #[test]
    fn reparameterize_interpolates() {
        let a = sink0_source1();
        let b = Orientation::alternating(&[int(10), int(20)], Kind::Sink).unwrap();
        assert_eq!(a.reparameterize(&b, &rat(1, 2)).unwrap(), int(15));
        assert_eq!(a.reparameterize(&a, &int(1)).unwrap(), int(1));
        assert_eq!(a.reparameterize(&b, &int(-1)).unwrap(), int(9));
        let c = Orientation::alternating(&[int(0), int(1)], Kind::Source).unwrap();
        assert_eq!(a.reparameterize(&c, &int(0)), Err(Error::IncompatibleOrientations));
    }

    #[test]
    fn rejects_non_alternating() {
        let bad = vec![
            Critical {
                pos: int(0),
                kind: Kind::Sink,
            },
            Critical {
                pos: int(1),
                kind: Kind::Sink,
            },
        ];
        assert!(Orientation::new(bad, EmptyDirection::Descending).is_err());
    }
}
