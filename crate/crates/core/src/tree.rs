use std::cmp::Ordering;

use crate::word::SubsetWord;

/// A dynamic binary trie over the powerset of a frame, storing values only
/// for the sets that actually carry one ("special sets").
///
/// Every node holds a key whose greatest set-bit index is `depth − 1`; the
/// root sits at the shallowest occupied depth. A node's right-descendants
/// are strict supersets of its key (strictly deeper), while left-descendants
/// are incomparable with it — so subset/superset queries can prune whole
/// branches. Nodes without a value ("disjunction" nodes) exist only where
/// two stored keys diverge and always have exactly two children; at most one
/// is created per insertion, so a store of `F` keys costs at most `2F − 1`
/// nodes, and families nested by appending ever-higher indices (for example
/// consonant chains built that way) cost exactly `F`.
///
/// The empty set cannot satisfy the depth rule, so it lives in a dedicated
/// slot beside the root.
#[derive(Debug, Clone)]
pub struct PowersetTree<V> {
    width: usize,
    root: Option<Box<Node<V>>>,
    empty_key: SubsetWord,
    empty_val: Option<V>,
    len: usize,
}

#[derive(Debug, Clone)]
struct Node<V> {
    key: SubsetWord,
    depth: usize,
    value: Option<V>,
    left: Option<Box<Node<V>>>,
    right: Option<Box<Node<V>>>,
}

impl<V> Node<V> {
    fn with_value(key: SubsetWord, value: Option<V>) -> Box<Self> {
        let depth = key.highest_index().expect("trie keys are nonempty") + 1;
        Box::new(Node { key, depth, value, left: None, right: None })
    }
}

impl<V> PowersetTree<V> {
    pub fn new(width: usize) -> Self {
        PowersetTree {
            width,
            root: None,
            empty_key: SubsetWord::empty(width),
            empty_val: None,
            len: 0,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of stored values (the empty-set slot included).
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn check_width(&self, key: &SubsetWord) {
        assert_eq!(key.width(), self.width, "key from a different frame");
    }

    /// Inserts or overwrites; returns the previous value if any.
    pub fn insert(&mut self, key: SubsetWord, value: V) -> Option<V> {
        self.check_width(&key);
        let old = if key.is_empty() {
            self.empty_val.replace(value)
        } else {
            Self::insert_slot(&mut self.root, key, value)
        };
        if old.is_none() {
            self.len += 1;
        }
        old
    }

    fn insert_slot(slot: &mut Option<Box<Node<V>>>, key: SubsetWord, value: V) -> Option<V> {
        let Some(node) = slot.as_deref_mut() else {
            *slot = Some(Node::with_value(key, Some(value)));
            return None;
        };
        if key == node.key {
            return node.value.replace(value);
        }
        let j = key.first_difference(&node.key).expect("distinct keys differ");
        if j >= node.depth {
            // key agrees with the whole of node.key: a strict superset.
            return Self::insert_slot(&mut node.right, key, value);
        }
        let key_top = key.highest_index().expect("nonempty key");
        if key_top > j && j + 1 == node.depth && !key.bit(j) {
            // key lacks exactly the node's own bit and reaches higher up.
            return Self::insert_slot(&mut node.left, key, value);
        }
        // The branch must be restructured at bit j.
        let old_node = slot.take().expect("slot occupied");
        *slot = Some(if key_top < j {
            // key is node.key's prefix-subset: it becomes the ancestor.
            let mut repl = Node::with_value(key, Some(value));
            repl.right = Some(old_node);
            repl
        } else {
            let mut dkey = key.masked_below(j);
            dkey.insert(j);
            if dkey == key {
                // The divergence point is the new key itself.
                let mut repl = Node::with_value(key, Some(value));
                repl.left = Some(old_node);
                repl
            } else {
                // Fresh disjunction node; the bit-j holder goes right.
                let mut disj = Node::with_value(dkey, None);
                let new_node = Node::with_value(key, Some(value));
                if new_node.key.bit(j) {
                    disj.left = Some(old_node);
                    disj.right = Some(new_node);
                } else {
                    disj.left = Some(new_node);
                    disj.right = Some(old_node);
                }
                disj
            }
        });
        None
    }

    pub fn get(&self, key: &SubsetWord) -> Option<&V> {
        self.get_counted(key).0
    }

    pub fn contains(&self, key: &SubsetWord) -> bool {
        self.get(key).is_some()
    }

    /// Exact lookup plus the number of trie nodes visited. The visit count
    /// is bounded by the frame width, because depth increases strictly along
    /// any root-to-descendant path.
    pub fn get_counted(&self, key: &SubsetWord) -> (Option<&V>, usize) {
        self.check_width(key);
        if key.is_empty() {
            return (self.empty_val.as_ref(), 0);
        }
        let key_top = key.highest_index().expect("nonempty key");
        let mut visited = 0;
        let mut cur = self.root.as_deref();
        while let Some(node) = cur {
            visited += 1;
            if *key == node.key {
                return (node.value.as_ref(), visited);
            }
            let j = key.first_difference(&node.key).expect("distinct keys differ");
            cur = if j >= node.depth {
                node.right.as_deref()
            } else if key_top > j && j + 1 == node.depth && !key.bit(j) {
                node.left.as_deref()
            } else {
                // key would have been restructured in at this point.
                return (None, visited);
            };
        }
        (None, visited)
    }

    /// Removes a key, splicing out any disjunction node left with fewer than
    /// two children so the structural invariants keep holding.
    pub fn remove(&mut self, key: &SubsetWord) -> Option<V> {
        self.check_width(key);
        let out = if key.is_empty() {
            self.empty_val.take()
        } else {
            Self::remove_slot(&mut self.root, key)
        };
        if out.is_some() {
            self.len -= 1;
        }
        out
    }

    fn remove_slot(slot: &mut Option<Box<Node<V>>>, key: &SubsetWord) -> Option<V> {
        let node = slot.as_deref_mut()?;
        let out = if *key == node.key {
            node.value.take()
        } else {
            let j = key.first_difference(&node.key).expect("distinct keys differ");
            let key_top = key.highest_index().expect("nonempty key");
            if j >= node.depth {
                Self::remove_slot(&mut node.right, key)
            } else if key_top > j && j + 1 == node.depth && !key.bit(j) {
                Self::remove_slot(&mut node.left, key)
            } else {
                None
            }
        };
        if out.is_some() {
            Self::splice_slot(slot);
        }
        out
    }

    fn splice_slot(slot: &mut Option<Box<Node<V>>>) {
        let Some(node) = slot.as_deref_mut() else { return };
        if node.value.is_some() {
            return;
        }
        match (node.left.is_some(), node.right.is_some()) {
            (true, true) => {}
            (true, false) => *slot = node.left.take(),
            (false, true) => *slot = node.right.take(),
            (false, false) => *slot = None,
        }
    }

    /// Iterates stored entries in no particular order.
    pub fn iter(&self) -> Iter<'_, V> {
        Iter {
            empty: self.empty_val.as_ref().map(|v| (&self.empty_key, v)),
            stack: self.root.as_deref().into_iter().collect(),
        }
    }

    /// Visits every stored value mutably (for rescaling and the like).
    pub fn for_each_value_mut<F: FnMut(&SubsetWord, &mut V)>(&mut self, mut f: F) {
        fn walk<V, F: FnMut(&SubsetWord, &mut V)>(node: &mut Node<V>, f: &mut F) {
            if let Some(v) = node.value.as_mut() {
                f(&node.key, v);
            }
            if let Some(l) = node.left.as_deref_mut() {
                walk(l, f);
            }
            if let Some(r) = node.right.as_deref_mut() {
                walk(r, f);
            }
        }
        if let Some(v) = self.empty_val.as_mut() {
            f(&self.empty_key, v);
        }
        if let Some(root) = self.root.as_deref_mut() {
            walk(root, &mut f);
        }
    }

    /// All stored entries whose key is a subset of `x`.
    pub fn subsets_of(&self, x: &SubsetWord) -> Vec<(&SubsetWord, &V)> {
        self.subsets_of_counted(x).0
    }

    pub fn subsets_of_counted(&self, x: &SubsetWord) -> (Vec<(&SubsetWord, &V)>, usize) {
        self.check_width(x);
        let mut out = Vec::new();
        let mut visited = 0;
        if let Some(v) = &self.empty_val {
            out.push((&self.empty_key, v));
        }
        if let Some(root) = self.root.as_deref() {
            Self::collect_subsets(root, x, &mut out, &mut visited);
        }
        (out, visited)
    }

    fn collect_subsets<'a>(
        node: &'a Node<V>,
        x: &SubsetWord,
        out: &mut Vec<(&'a SubsetWord, &'a V)>,
        visited: &mut usize,
    ) {
        *visited += 1;
        let d = node.depth;
        // Every key below agrees with node.key strictly under bit d−1; all
        // those fixed bits must lie inside x or nothing here qualifies.
        if !x.covers_below(&node.key, d - 1) {
            return;
        }
        if x.bit(d - 1) {
            if let Some(v) = &node.value {
                out.push((&node.key, v));
            }
            if let Some(r) = node.right.as_deref() {
                Self::collect_subsets(r, x, out, visited);
            }
        }
        if let Some(l) = node.left.as_deref() {
            Self::collect_subsets(l, x, out, visited);
        }
    }

    /// All stored entries whose key is a superset of `x`.
    pub fn supersets_of(&self, x: &SubsetWord) -> Vec<(&SubsetWord, &V)> {
        self.supersets_of_counted(x).0
    }

    pub fn supersets_of_counted(&self, x: &SubsetWord) -> (Vec<(&SubsetWord, &V)>, usize) {
        self.check_width(x);
        let mut out = Vec::new();
        let mut visited = 0;
        if x.is_empty() {
            if let Some(v) = &self.empty_val {
                out.push((&self.empty_key, v));
            }
        }
        if let Some(root) = self.root.as_deref() {
            Self::collect_supersets(root, x, &mut out, &mut visited);
        }
        (out, visited)
    }

    fn collect_supersets<'a>(
        node: &'a Node<V>,
        x: &SubsetWord,
        out: &mut Vec<(&'a SubsetWord, &'a V)>,
        visited: &mut usize,
    ) {
        *visited += 1;
        let d = node.depth;
        // x's bits under d−1 must all be fixed into the keys below.
        if !node.key.covers_below(x, d - 1) {
            return;
        }
        if let Some(v) = &node.value {
            if node.key.is_superset_of(x) {
                out.push((&node.key, v));
            }
        }
        if !x.bit(d - 1) {
            if let Some(l) = node.left.as_deref() {
                Self::collect_supersets(l, x, out, visited);
            }
        }
        if let Some(r) = node.right.as_deref() {
            Self::collect_supersets(r, x, out, visited);
        }
    }

    /// The stored superset of `x` with the fewest elements (ties broken
    /// numerically low), found by branch-and-bound with cardinality bounds.
    pub fn smallest_superset(&self, x: &SubsetWord) -> Option<(&SubsetWord, &V)> {
        self.smallest_superset_counted(x).0
    }

    pub fn smallest_superset_counted(
        &self,
        x: &SubsetWord,
    ) -> (Option<(&SubsetWord, &V)>, usize) {
        self.check_width(x);
        if x.is_empty() {
            if let Some(v) = &self.empty_val {
                // Nothing can beat cardinality zero.
                return (Some((&self.empty_key, v)), 0);
            }
        }
        let mut best: Option<(&SubsetWord, &V, usize)> = None;
        let mut visited = 0;
        if let Some(root) = self.root.as_deref() {
            Self::bb_smallest(root, x, &mut best, &mut visited);
        }
        (best.map(|(k, v, _)| (k, v)), visited)
    }

    fn bb_smallest<'a>(
        node: &'a Node<V>,
        x: &SubsetWord,
        best: &mut Option<(&'a SubsetWord, &'a V, usize)>,
        visited: &mut usize,
    ) {
        *visited += 1;
        let d = node.depth;
        if !node.key.covers_below(x, d - 1) {
            return;
        }
        // Any superset of x stored below also contains the fixed prefix.
        let lower = x.union(&node.key.masked_below(d - 1)).cardinality();
        if let Some((_, _, bc)) = best {
            if lower > *bc {
                return;
            }
        }
        if let Some(v) = &node.value {
            if node.key.is_superset_of(x) {
                let c = node.key.cardinality();
                let better = match best {
                    None => true,
                    Some((bk, _, bc)) => {
                        c < *bc || (c == *bc && node.key.numeric_cmp(bk) == Ordering::Less)
                    }
                };
                if better {
                    *best = Some((&node.key, v, c));
                }
            }
        }
        // Left first: incomparable branch tends to hold the smaller keys.
        if !x.bit(d - 1) {
            if let Some(l) = node.left.as_deref() {
                Self::bb_smallest(l, x, best, visited);
            }
        }
        if let Some(r) = node.right.as_deref() {
            Self::bb_smallest(r, x, best, visited);
        }
    }

    /// The stored subset of `x` with the most elements (ties broken
    /// numerically high), found by branch-and-bound with cardinality bounds.
    pub fn largest_subset(&self, x: &SubsetWord) -> Option<(&SubsetWord, &V)> {
        self.largest_subset_counted(x).0
    }

    pub fn largest_subset_counted(&self, x: &SubsetWord) -> (Option<(&SubsetWord, &V)>, usize) {
        self.check_width(x);
        let mut best: Option<(&SubsetWord, &V, usize)> =
            self.empty_val.as_ref().map(|v| (&self.empty_key, v, 0));
        let mut visited = 0;
        if let Some(root) = self.root.as_deref() {
            Self::bb_largest(root, x, &mut best, &mut visited);
        }
        (best.map(|(k, v, _)| (k, v)), visited)
    }

    fn bb_largest<'a>(
        node: &'a Node<V>,
        x: &SubsetWord,
        best: &mut Option<(&'a SubsetWord, &'a V, usize)>,
        visited: &mut usize,
    ) {
        *visited += 1;
        let d = node.depth;
        if !x.covers_below(&node.key, d - 1) {
            return;
        }
        // Keys below keep the fixed prefix (card − 1 bits of node.key) and may
        // add only bits ≥ d−1 that x itself has.
        let upper = node.key.cardinality() - 1 + x.cardinality_from(d - 1);
        if let Some((_, _, bc)) = best {
            if upper < *bc {
                return;
            }
        }
        if let Some(v) = &node.value {
            if node.key.is_subset_of(x) {
                let c = node.key.cardinality();
                let better = match best {
                    None => true,
                    Some((bk, _, bc)) => {
                        c > *bc || (c == *bc && node.key.numeric_cmp(bk) == Ordering::Greater)
                    }
                };
                if better {
                    *best = Some((&node.key, v, c));
                }
            }
        }
        // Right first: supersets of this key are the larger candidates.
        if x.bit(d - 1) {
            if let Some(r) = node.right.as_deref() {
                Self::bb_largest(r, x, best, visited);
            }
        }
        if let Some(l) = node.left.as_deref() {
            Self::bb_largest(l, x, best, visited);
        }
    }

    /// Total structural nodes: trie nodes (disjunctions included) plus the
    /// empty-set slot when occupied.
    pub fn node_count(&self) -> usize {
        fn count<V>(node: &Node<V>) -> usize {
            1 + node.left.as_deref().map_or(0, count) + node.right.as_deref().map_or(0, count)
        }
        self.root.as_deref().map_or(0, count) + usize::from(self.empty_val.is_some())
    }

    /// Structural nodes in the trie proper, excluding the dedicated
    /// empty-set slot. This is the quantity the storage-size analysis
    /// bounds in terms of the number of stored sets.
    pub fn trie_node_count(&self) -> usize {
        self.node_count() - usize::from(self.empty_val.is_some())
    }

    /// Number of valueless disjunction nodes.
    pub fn blank_count(&self) -> usize {
        fn count<V>(node: &Node<V>) -> usize {
            usize::from(node.value.is_none())
                + node.left.as_deref().map_or(0, count)
                + node.right.as_deref().map_or(0, count)
        }
        self.root.as_deref().map_or(0, count)
    }
}

pub struct Iter<'a, V> {
    empty: Option<(&'a SubsetWord, &'a V)>,
    stack: Vec<&'a Node<V>>,
}

impl<'a, V> Iterator for Iter<'a, V> {
    type Item = (&'a SubsetWord, &'a V);

    fn next(&mut self) -> Option<Self::Item> {
        if let Some(e) = self.empty.take() {
            return Some(e);
        }
        while let Some(node) = self.stack.pop() {
            if let Some(r) = node.right.as_deref() {
                self.stack.push(r);
            }
            if let Some(l) = node.left.as_deref() {
                self.stack.push(l);
            }
            if let Some(v) = node.value.as_ref() {
                return Some((&node.key, v));
            }
        }
        None
    }
}

impl<'a, V> IntoIterator for &'a PowersetTree<V> {
    type Item = (&'a SubsetWord, &'a V);
    type IntoIter = Iter<'a, V>;

    fn into_iter(self) -> Self::IntoIter {
        self.iter()
    }
}
