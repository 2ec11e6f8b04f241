use std::cmp::Ordering;
use std::fmt;

/// A subset of block indices `{0, …, s-1}`, shown 1-based as `{1,2}`.
///
/// Ordered by size, then lexicographically on sorted indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlockSet(u64);

pub const MAX_BLOCKS: usize = 64;

impl BlockSet {
    pub fn empty() -> Self {
        BlockSet(0)
    }

    pub fn full(s: usize) -> Self {
        assert!(s <= MAX_BLOCKS);
        if s == 64 {
            BlockSet(u64::MAX)
        } else {
            BlockSet((1u64 << s) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        BlockSet(1 << i)
    }

    pub fn from_bits(bits: u64) -> Self {
        BlockSet(bits)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        BlockSet(indices.into_iter().fold(0, |acc, i| acc | 1 << i))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn is_subset(self, other: BlockSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: BlockSet) -> Self {
        BlockSet(self.0 | other.0)
    }

    pub fn intersection(self, other: BlockSet) -> Self {
        BlockSet(self.0 & other.0)
    }

    /// Complement inside `{0, …, s-1}`.
    pub fn complement(self, s: usize) -> Self {
        BlockSet(!self.0 & Self::full(s).0)
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        (0..MAX_BLOCKS).filter(move |&i| self.contains(i))
    }

    /// All nonempty subsets of `{0, …, s-1}` in canonical order.
    pub fn all_nonempty(s: usize) -> Vec<BlockSet> {
        assert!(s < MAX_BLOCKS, "too many blocks to enumerate subsets");
        let mut v: Vec<BlockSet> = (1..1u64 << s).map(BlockSet).collect();
        v.sort();
        v
    }

    /// Parses `{1,2}` (1-based).
    pub fn parse(text: &str) -> Option<Self> {
        let inner = text.trim().strip_prefix('{')?.strip_suffix('}')?;
        if inner.trim().is_empty() {
            return Some(BlockSet::empty());
        }
        let mut bits = 0u64;
        for part in inner.split(',') {
            let i: usize = part.trim().parse().ok()?;
            if i == 0 || i > MAX_BLOCKS {
                return None;
            }
            bits |= 1 << (i - 1);
        }
        Some(BlockSet(bits))
    }
}

impl Ord for BlockSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.indices().cmp(other.indices()))
    }
}

impl PartialOrd for BlockSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let names: Vec<String> = BlockSet::all_nonempty(3).iter().map(|b| b.to_string()).collect();
        assert_eq!(names, ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]);
    }

    #[test]
    fn parse_round_trip() {
        for b in BlockSet::all_nonempty(4) {
            assert_eq!(BlockSet::parse(&b.to_string()), Some(b));
        }
        assert_eq!(BlockSet::parse("{0}"), None);
        assert_eq!(BlockSet::parse("1,2"), None);
    }

    #[test]
    fn complement_and_subset() {
        let a = BlockSet::from_indices([0, 2]);
        assert_eq!(a.complement(3), BlockSet::singleton(1));
        assert!(BlockSet::singleton(2).is_subset(a));
        assert!(!a.is_subset(BlockSet::singleton(2)));
    }
}
