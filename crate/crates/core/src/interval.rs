//! Intervals of the real line with open or closed ends, and finite multisets
//! of them (barcodes).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::number::{ExtReal, Rational};

/// A nonempty connected subset of ℝ with endpoints in ℚ ∪ {±∞}.
///
/// Infinite ends are always open and a degenerate interval is a closed point,
/// so two values are equal exactly when they describe the same set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: ExtReal,
    hi: ExtReal,
    lo_closed: bool,
    hi_closed: bool,
}

impl Interval {
    pub fn new(lo: ExtReal, lo_closed: bool, hi: ExtReal, hi_closed: bool) -> Result<Interval> {
        let bad = |why: &str| Err(Error::InvalidInterval(why.to_string()));
        if lo == ExtReal::PosInf || hi == ExtReal::NegInf {
            return bad("interval cannot start at +inf or end at -inf");
        }
        if (lo == ExtReal::NegInf && lo_closed) || (hi == ExtReal::PosInf && hi_closed) {
            return bad("infinite ends must be open");
        }
        match lo.cmp(&hi) {
            Ordering::Greater => bad("lower end exceeds upper end"),
            Ordering::Equal if !(lo_closed && hi_closed) => bad("degenerate interval must be a closed point"),
            _ => Ok(Interval {
                lo,
                hi,
                lo_closed,
                hi_closed,
            }),
        }
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Interval> {
        Interval::new(lo.into(), true, hi.into(), true)
    }

    pub fn point(a: Rational) -> Interval {
        Interval {
            lo: a.clone().into(),
            hi: a.into(),
            lo_closed: true,
            hi_closed: true,
        }
    }

    pub fn real_line() -> Interval {
        Interval {
            lo: ExtReal::NegInf,
            hi: ExtReal::PosInf,
            lo_closed: false,
            hi_closed: false,
        }
    }

    /// Parses `[a,b)`, `(-inf,b]`, `{a}` and similar.
    pub fn parse(s: &str) -> Result<Interval> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed interval {s:?}"));
        if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            return match ExtReal::parse(inner)? {
                ExtReal::Finite(a) => Ok(Interval::point(a)),
                _ => Err(bad()),
            };
        }
        let mut chars = s.chars();
        let open = chars.next().ok_or_else(bad)?;
        let close = chars.next_back().ok_or_else(bad)?;
        let lo_closed = match open {
            '[' => true,
            '(' => false,
            _ => return Err(bad()),
        };
        let hi_closed = match close {
            ']' => true,
            ')' => false,
            _ => return Err(bad()),
        };
        let (lo, hi) = chars.as_str().split_once(',').ok_or_else(bad)?;
        Interval::new(ExtReal::parse(lo)?, lo_closed, ExtReal::parse(hi)?, hi_closed)
    }

    pub fn lo(&self) -> &ExtReal {
        &self.lo
    }

    pub fn hi(&self) -> &ExtReal {
        &self.hi
    }

    pub fn lo_closed(&self) -> bool {
        self.lo_closed
    }

    pub fn hi_closed(&self) -> bool {
        self.hi_closed
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match self.lo.partial_cmp(x) {
            Some(Ordering::Less) => true,
            Some(Ordering::Equal) => self.lo_closed,
            _ => false,
        };
        let below = match self.hi.partial_cmp(x) {
            Some(Ordering::Greater) => true,
            Some(Ordering::Equal) => self.hi_closed,
            _ => false,
        };
        above && below
    }

    /// Whether `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.intersect(other).as_ref() == Some(other)
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Less => (other.lo.clone(), other.lo_closed),
            Ordering::Greater => (self.lo.clone(), self.lo_closed),
            Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (self.hi.clone(), self.hi_closed),
            Ordering::Greater => (other.hi.clone(), other.hi_closed),
            Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        Interval::new(lo, lo_closed, hi, hi_closed).ok()
    }

    /// Interval modules are isomorphic exactly when their supports agree.
    pub fn same_support_iso(&self, other: &Interval) -> bool {
        self == other
    }
}

impl Ord for Interval {
    /// Canonical bar order: lower end ascending with closed before open, then
    /// upper end ascending with open before closed.
    fn cmp(&self, other: &Self) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(other.lo_closed.cmp(&self.lo_closed))
            .then(self.hi.cmp(&other.hi))
            .then(self.hi_closed.cmp(&other.hi_closed))
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", self.lo);
        }
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{},{}{close}", self.lo, self.hi)
    }
}

/// A finite multiset of intervals: the barcode of a representation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BarMultiset {
    bars: BTreeMap<Interval, usize>,
}

impl BarMultiset {
    pub fn new() -> BarMultiset {
        BarMultiset::default()
    }

    pub fn insert(&mut self, bar: Interval, mult: usize) {
        if mult > 0 {
            *self.bars.entry(bar).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, bar: &Interval) -> usize {
        self.bars.get(bar).copied().unwrap_or(0)
    }

    /// Bars with multiplicities in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Interval, usize)> {
        self.bars.iter().map(|(bar, &m)| (bar, m))
    }

    /// Every bar repeated by its multiplicity, in canonical order.
    pub fn expanded(&self) -> impl Iterator<Item = &Interval> {
        self.iter().flat_map(|(bar, m)| std::iter::repeat_n(bar, m))
    }

    pub fn distinct(&self) -> usize {
        self.bars.len()
    }

    pub fn total(&self) -> usize {
        self.bars.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bars.is_empty()
    }

    /// Multiset sum.
    pub fn union(&self, other: &BarMultiset) -> BarMultiset {
        let mut out = self.clone();
        for (bar, m) in other.iter() {
            out.insert(bar.clone(), m);
        }
        out
    }
}

impl FromIterator<Interval> for BarMultiset {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        let mut out = BarMultiset::new();
        for bar in iter {
            out.insert(bar, 1);
        }
        out
    }
}

impl FromIterator<(Interval, usize)> for BarMultiset {
    fn from_iter<T: IntoIterator<Item = (Interval, usize)>>(iter: T) -> Self {
        let mut out = BarMultiset::new();
        for (bar, m) in iter {
            out.insert(bar, m);
        }
        out
    }
}

impl fmt::Display for BarMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (bar, m) in self.iter() {
            writeln!(f, "{bar} x{m}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;

    fn iv(s: &str) -> Interval {
        Interval::parse(s).unwrap()
    }

    #[test]
    fn containment() {
        assert!(iv("[0,1)").contains(&int(0)));
        assert!(!iv("[0,1)").contains(&int(1)));
        assert!(iv("(-inf,1]").contains(&int(-1_000_000_000)));
    }

    #[test]
    fn intersections() {
        assert_eq!(iv("[0,2)").intersect(&iv("[1,3)")), Some(iv("[1,2)")));
        assert_eq!(iv("[0,1)").intersect(&iv("[1,2)")), None);
        assert_eq!(iv("[0,1]").intersect(&iv("[1,2)")), Some(iv("{1}")));
        let i = iv("(-inf,3)");
        assert_eq!(i.intersect(&i), Some(i.clone()));
    }

    #[test]
    fn iso_is_set_equality() {
        assert!(iv("[0,1)").same_support_iso(&iv("[0,1)")));
        assert!(!iv("[0,1)").same_support_iso(&iv("[0,1]")));
        assert!(iv("{0}").same_support_iso(&iv("[0,0]")));
    }

    #[test]
    fn rejects_bad_intervals() {
        assert!(Interval::parse("[-inf,0)").is_err());
        assert!(Interval::parse("(0,+inf]").is_err());
        assert!(Interval::parse("[1,0]").is_err());
        assert!(Interval::parse("[1,1)").is_err());
        assert!(Interval::parse("(1,1)").is_err());
    }

    #[test]
    fn canonical_order() {
        let mut bars = [iv("(0,1]"), iv("[0,1]"), iv("[0,1)"), iv("(-inf,5)"), iv("{0}")];
        bars.sort();
        let shown: Vec<String> = bars.iter().map(|b| b.to_string()).collect();
        assert_eq!(shown, ["(-inf,5)", "{0}", "[0,1)", "[0,1]", "(0,1]"]);
    }

    #[test]
    fn multiset_counts() {
        let mut b: BarMultiset = [iv("[0,1]"), iv("[0,1]"), iv("(0,2)")].into_iter().collect();
        assert_eq!(b.multiplicity(&iv("[0,1]")), 2);
        b.insert(iv("(0,2)"), 3);
        assert_eq!(b.total(), 6);
        assert_eq!(b.distinct(), 2);
    }
}
