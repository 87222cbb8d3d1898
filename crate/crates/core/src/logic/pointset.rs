use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

/// Largest universe a [`PointSet`] can address.
pub const MAX_POINTS: usize = 64;

/// A set of points of a fixed universe, stored as a bitmask.
///
/// Bit `i` stands for the `i`-th point of the universe. The universe size is
/// carried alongside the mask so that complementation is exact.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: u64,
    len: u8,
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl PointSet {
    pub fn empty(len: usize) -> Self {
        assert!(len <= MAX_POINTS, "universe of {len} points exceeds {MAX_POINTS}");
        PointSet { bits: 0, len: len as u8 }
    }

    pub fn full(len: usize) -> Self {
        assert!(len <= MAX_POINTS, "universe of {len} points exceeds {MAX_POINTS}");
        PointSet { bits: mask(len), len: len as u8 }
    }

    /// Builds a set from a raw mask. Panics if `bits` mentions points beyond `len`.
    pub fn from_bits(bits: u64, len: usize) -> Self {
        assert!(len <= MAX_POINTS, "universe of {len} points exceeds {MAX_POINTS}");
        assert!(bits & !mask(len) == 0, "mask {bits:#x} exceeds universe of {len} points");
        PointSet { bits, len: len as u8 }
    }

    pub fn singleton(index: usize, len: usize) -> Self {
        assert!(index < len);
        PointSet::from_bits(1 << index, len)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I, len: usize) -> Self {
        let mut set = PointSet::empty(len);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    /// Size of the underlying universe (not the cardinality of the set).
    pub fn universe_len(self) -> usize {
        self.len as usize
    }

    pub fn count(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn is_full(self) -> bool {
        self.bits == mask(self.len as usize)
    }

    pub fn contains(self, index: usize) -> bool {
        index < self.len as usize && self.bits & (1 << index) != 0
    }

    pub fn insert(&mut self, index: usize) {
        assert!(index < self.len as usize, "point {index} outside universe of {}", self.len);
        self.bits |= 1 << index;
    }

    pub fn remove(&mut self, index: usize) {
        self.bits &= !(1u64 << index);
    }

    pub fn union(self, other: Self) -> Self {
        self.same_universe(other);
        PointSet { bits: self.bits | other.bits, len: self.len }
    }

    pub fn intersection(self, other: Self) -> Self {
        self.same_universe(other);
        PointSet { bits: self.bits & other.bits, len: self.len }
    }

    pub fn difference(self, other: Self) -> Self {
        self.same_universe(other);
        PointSet { bits: self.bits & !other.bits, len: self.len }
    }

    pub fn complement(self) -> Self {
        PointSet { bits: !self.bits & mask(self.len as usize), len: self.len }
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.same_universe(other);
        self.bits & !other.bits == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.same_universe(other);
        self.bits & other.bits != 0
    }

    /// Indices of the member points in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of this set, the empty set first and `self` last.
    pub fn subsets(self) -> impl Iterator<Item = PointSet> {
        let len = self.len;
        let whole = self.bits;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let current = next?;
            next = if current == whole { None } else { Some((current.wrapping_sub(whole)) & whole) };
            Some(PointSet { bits: current, len })
        })
    }

    /// Every subset of a universe of `len` points, ordered by mask value.
    /// Only sensible for small universes.
    pub fn all(len: usize) -> impl Iterator<Item = PointSet> {
        assert!(len < MAX_POINTS, "cannot enumerate subsets of {len} points");
        (0..1u64 << len).map(move |bits| PointSet { bits, len: len as u8 })
    }

    /// Position of this set in [`PointSet::all`]; used to key total tables.
    pub fn index(self) -> usize {
        self.bits as usize
    }

    fn same_universe(self, other: Self) {
        debug_assert_eq!(self.len, other.len, "point sets over different universes");
    }
}

impl BitOr for PointSet {
    type Output = PointSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for PointSet {
    type Output = PointSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for PointSet {
    type Output = PointSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl Not for PointSet {
    type Output = PointSet;
    fn not(self) -> Self {
        self.complement()
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}/{}", self.len)
    }
}
