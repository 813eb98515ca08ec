//! The hook/ornament construction turning an injection `f: [m-2] ↪ [n+m-2]`
//! and an index `c ∈ [ℓ_p]` into a tree of the class, its inverse, and the
//! table from depth-first words back to hook assignments.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::tree::{Label, Node, OrderedTree};
use crate::word::{write_comma_list, Word};

/// An injection `f(1), ..., f(m-2)` into `[n+m-2]` plus `c ∈ [ℓ_p]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HookAssignment {
    pub f: Vec<usize>,
    pub c: usize,
}

impl HookAssignment {
    pub fn new(f: Vec<usize>, c: usize) -> Self {
        HookAssignment { f, c }
    }
}

impl fmt::Display for HookAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("f=(")?;
        write_comma_list(f, &self.f)?;
        write!(f, ") c={}", self.c)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slot {
    Plain(usize),
    /// Hook `f(i)`.
    Hook(usize),
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Slot::Plain(i) => write!(f, "{i}"),
            Slot::Hook(i) => write!(f, "f{i}"),
        }
    }
}

/// `[n+m-2]` labelled by cycle indices and hooks, cut into `m` factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HookedSequence {
    pub slots: Vec<Slot>,
    /// A bar after slot `b` (1-based count of slots to its left), increasing.
    pub bars: Vec<usize>,
}

impl HookedSequence {
    /// The `m` factors, in order.
    pub fn factors(&self) -> Vec<&[Slot]> {
        let mut out = Vec::with_capacity(self.bars.len() + 1);
        let mut start = 0;
        for &b in &self.bars {
            out.push(&self.slots[start..b]);
            start = b;
        }
        out.push(&self.slots[start..]);
        out
    }
}

impl fmt::Display for HookedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, factor) in self.factors().iter().enumerate() {
            if i > 0 {
                f.write_str(" |")?;
            }
            for (j, s) in factor.iter().enumerate() {
                if i > 0 || j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{s}")?;
            }
        }
        Ok(())
    }
}

struct Attachments {
    arena: Vec<Node>,
    ornament_children: Vec<Vec<usize>>,
    hook_node: Vec<usize>,
    attached: Vec<bool>,
    used: Vec<bool>,
}

impl Attachments {
    /// Identifies the root of `ornament` with hook `f(hook)`.
    fn attach(&mut self, ornament: usize, hook: usize) {
        let node = &mut self.arena[self.hook_node[hook]];
        node.label = Label::Cycle(ornament);
        node.children = std::mem::take(&mut self.ornament_children[ornament - 1]);
        self.attached[ornament] = true;
        self.used[hook] = true;
    }
}

/// Depth-first words of every tree produced by the hook construction, with
/// the assignments producing each word (in lexicographic order).
#[derive(Debug, Clone, Default)]
pub struct WordTable {
    pub(crate) entries: BTreeMap<Word, Vec<HookAssignment>>,
}

impl WordTable {
    pub fn preimages(&self, word: &Word) -> &[HookAssignment] {
        self.entries.get(word).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &[HookAssignment])> {
        self.entries.iter().map(|(w, hs)| (w, hs.as_slice()))
    }

    /// Number of distinct words reached.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl Instance {
    pub fn check_hook_assignment(&self, h: &HookAssignment) -> Result<()> {
        let m = self.m();
        if m == 1 {
            if !h.f.is_empty() || h.c != 1 {
                return Err(Error::InvalidHookAssignment(
                    "a single-cycle permutation only admits f=() c=1".into(),
                ));
            }
            return Ok(());
        }
        if h.f.len() != m - 2 {
            return Err(Error::InvalidHookAssignment(format!(
                "f needs {} values, got {}",
                m - 2,
                h.f.len()
            )));
        }
        let len = self.factor_len();
        for &v in &h.f {
            if v == 0 || v > len {
                return Err(Error::InvalidHookAssignment(format!(
                    "value {v} outside [1, {len}]"
                )));
            }
        }
        if !h.f.iter().all_unique() {
            return Err(Error::InvalidHookAssignment("f is not injective".into()));
        }
        let lp = self.cycle_len(self.p());
        if h.c == 0 || h.c > lp {
            return Err(Error::InvalidHookAssignment(format!(
                "c = {} outside [1, {lp}]",
                h.c
            )));
        }
        Ok(())
    }

    /// The whole `(f, c)` domain in lexicographic order.
    pub fn hook_assignments(&self) -> Vec<HookAssignment> {
        let m = self.m();
        if m == 1 {
            return vec![HookAssignment::new(Vec::new(), 1)];
        }
        let injections: Vec<Vec<usize>> = if m == 2 {
            vec![Vec::new()]
        } else {
            (1..=self.factor_len()).permutations(m - 2).collect()
        };
        let lp = self.cycle_len(self.p());
        injections
            .into_iter()
            .flat_map(|f| (1..=lp).map(move |c| HookAssignment::new(f.clone(), c)))
            .collect()
    }

    /// Labels `[n+m-2]` and cuts it into factors.
    ///
    /// Hook positions come from `f`; the rest read `1^{ℓ_1} 2^{ℓ_2} ⋯ m^{ℓ_m}`
    /// with the `c`-th `p` turned into hook `f(0)`. Bars go just after the
    /// last remaining `i` for `i < p` and just before the first `i` for `i > p`.
    pub fn build_hooked_sequence(&self, h: &HookAssignment) -> Result<HookedSequence> {
        self.check_hook_assignment(h)?;
        let m = self.m();
        let p = self.p();
        if m == 1 {
            return Ok(HookedSequence {
                slots: vec![Slot::Plain(p); self.factor_len()],
                bars: Vec::new(),
            });
        }
        let len = self.factor_len();
        let mut slots: Vec<Option<Slot>> = vec![None; len];
        for (i, &v) in h.f.iter().enumerate() {
            slots[v - 1] = Some(Slot::Hook(i + 1));
        }
        let mut plain = (1..=m).flat_map(|i| std::iter::repeat_n(i, self.cycle_len(i)));
        let mut seen_p = 0;
        for slot in slots.iter_mut().filter(|s| s.is_none()) {
            let label = plain.next().expect("n free slots for n plain labels");
            *slot = Some(if label == p {
                seen_p += 1;
                if seen_p == h.c {
                    Slot::Hook(0)
                } else {
                    Slot::Plain(p)
                }
            } else {
                Slot::Plain(label)
            });
        }
        let slots: Vec<Slot> = slots.into_iter().map(Option::unwrap).collect();

        let mut bars = Vec::with_capacity(m - 1);
        for i in (1..=m).filter(|&i| i != p) {
            let bar = if i < p {
                slots.iter().rposition(|&s| s == Slot::Plain(i)).unwrap() + 1
            } else {
                slots.iter().position(|&s| s == Slot::Plain(i)).unwrap()
            };
            bars.push(bar);
        }
        Ok(HookedSequence { slots, bars })
    }

    /// The tree assembled from the ornaments of the hooked sequence.
    pub fn tree_forward(&self, h: &HookAssignment) -> Result<OrderedTree> {
        let seq = self.build_hooked_sequence(h)?;
        let m = self.m();
        let p = self.p();
        if m == 1 {
            return Ok(self.pivot_sapling());
        }
        let mut arena: Vec<Node> = Vec::with_capacity(seq.slots.len() + 1);
        // ornament_children[i - 1]: arena ids of the leaves of ornament i
        let mut ornament_children: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut hook_node = vec![usize::MAX; m - 1];
        let mut hook_owner = vec![0; m - 1];
        arena.push(Node {
            label: Label::Root,
            children: Vec::new(),
        });
        for (fi, factor) in seq.factors().into_iter().enumerate() {
            for &slot in factor {
                let id = arena.len();
                let label = match slot {
                    Slot::Plain(i) => Label::Cycle(i),
                    Slot::Hook(j) => {
                        hook_node[j] = id;
                        hook_owner[j] = fi + 1;
                        Label::Hook(j)
                    }
                };
                arena.push(Node {
                    label,
                    children: Vec::new(),
                });
                ornament_children[fi].push(id);
            }
        }
        arena[0].children = std::mem::take(&mut ornament_children[p - 1]);

        let mut state = Attachments {
            arena,
            ornament_children,
            hook_node,
            attached: vec![false; m + 1],
            used: vec![false; m - 1],
        };
        state.attached[p] = true;

        for i in 1..m - 1 {
            let owner = hook_owner[i];
            if !state.attached[owner] {
                state.attach(owner, i - 1);
            }
        }

        let free_ornaments: Vec<usize> = (1..=m).filter(|&j| !state.attached[j]).collect();
        let free_hooks: Vec<usize> = (0..m - 1).filter(|&j| !state.used[j]).collect();
        assert_eq!(
            free_ornaments.len(),
            free_hooks.len(),
            "unattached ornaments and unused hooks must pair up"
        );
        assert!(
            !free_hooks.is_empty(),
            "at least one ornament is left for the final pairing"
        );
        for (ornament, hook) in free_ornaments.into_iter().zip(free_hooks) {
            state.attach(ornament, hook);
        }
        let arena = state.arena;

        let tree = OrderedTree::from_arena(&arena, 0);
        debug_assert_eq!(tree.node_count(), seq.slots.len() + 1);
        Ok(tree)
    }

    /// Recovers `(f, c)` from a tree produced by [`Instance::tree_forward`].
    ///
    /// The tree splits into `m` saplings (each parent with its leaf
    /// children), ranked by their label. Walking the sheltering chains from
    /// the pivot sapling to each free sapling, free saplings taken by
    /// increasing rank, relabels the sapling roots `f(0), f(1), ...` (skipping
    /// roots already relabelled). Reading every sapling's children by
    /// increasing rank then gives back the hooked sequence.
    pub fn tree_inverse(&self, tree: &OrderedTree) -> Result<HookAssignment> {
        let m = self.m();
        let p = self.p();
        let bad = |reason: &str| Error::TreeNotInClass(reason.to_owned());

        let word = tree.preorder_word()?;
        let mut counts = vec![0usize; m + 1];
        for &l in word.letters() {
            if l > m {
                return Err(bad("label outside [m]"));
            }
            counts[l] += 1;
        }
        if (1..=m).any(|j| counts[j] != self.letter_count(j)) {
            return Err(bad("label multiset does not match the cycle type"));
        }

        if m == 1 {
            if tree
                .children(0)
                .iter()
                .any(|&c| !tree.children(c).is_empty())
            {
                return Err(bad("the pivot sapling cannot have grandchildren"));
            }
            return Ok(HookAssignment::new(Vec::new(), 1));
        }

        // sapling_root[r] = node id of the parent with rank r
        let mut sapling_root = vec![usize::MAX; m + 1];
        let mut rank_of_node = vec![0usize; tree.node_count()];
        for id in 0..tree.node_count() {
            if id != 0 && tree.children(id).is_empty() {
                continue;
            }
            let rank = match tree.label(id) {
                Label::Root => p,
                Label::Cycle(r) if r != p => r,
                _ => return Err(bad("a node labelled with the pivot cycle has children")),
            };
            if sapling_root[rank] != usize::MAX {
                return Err(bad("two saplings share a rank"));
            }
            sapling_root[rank] = id;
            rank_of_node[id] = rank;
        }
        if (1..=m).any(|r| sapling_root[r] == usize::MAX) {
            return Err(bad("a cycle has no sapling"));
        }
        for r in 1..=m {
            for &child in tree.children(sapling_root[r]) {
                if tree.children(child).is_empty() && tree.label(child) != Label::Cycle(r) {
                    return Err(bad("a leaf is not labelled by its sapling's rank"));
                }
            }
        }

        // sheltering parent rank of every non-pivot sapling
        let mut parent_rank = vec![0usize; m + 1];
        for r in 1..=m {
            for &child in tree.children(sapling_root[r]) {
                if !tree.children(child).is_empty() {
                    parent_rank[rank_of_node[child]] = r;
                }
            }
        }
        let free: Vec<usize> = (1..=m)
            .filter(|&r| {
                tree.children(sapling_root[r])
                    .iter()
                    .all(|&c| tree.children(c).is_empty())
            })
            .collect();

        // hook_of_rank[r] = i when the root of sapling r is relabelled f(i)
        let mut hook_of_rank = vec![usize::MAX; m + 1];
        let mut next = 0;
        for &leaf in &free {
            let mut chain = Vec::new();
            let mut r = leaf;
            while r != p {
                chain.push(r);
                r = parent_rank[r];
                if chain.len() > m {
                    return Err(bad("sheltering chain does not reach the pivot sapling"));
                }
            }
            for &r in chain.iter().rev() {
                if hook_of_rank[r] == usize::MAX {
                    hook_of_rank[r] = next;
                    next += 1;
                }
            }
        }
        if next != m - 1 {
            return Err(bad("saplings are not all reachable from the pivot sapling"));
        }

        let mut slots = Vec::with_capacity(self.factor_len());
        for r in 1..=m {
            for &child in tree.children(sapling_root[r]) {
                slots.push(if tree.children(child).is_empty() {
                    Slot::Plain(r)
                } else {
                    Slot::Hook(hook_of_rank[rank_of_node[child]])
                });
            }
        }
        let mut f = vec![0; m - 2];
        let mut c = 0;
        let mut plain_p_before = 0;
        for (pos, slot) in slots.iter().enumerate() {
            match *slot {
                Slot::Hook(0) => c = plain_p_before + 1,
                Slot::Hook(i) => f[i - 1] = pos + 1,
                Slot::Plain(r) if r == p => plain_p_before += 1,
                Slot::Plain(_) => {}
            }
        }
        let h = HookAssignment::new(f, c);
        match self.tree_forward(&h) {
            Ok(rebuilt) if rebuilt == *tree => Ok(h),
            _ => Err(bad("not produced by the hook construction")),
        }
    }

    /// Word table over the whole `(f, c)` domain, built on first use.
    pub fn word_table(&self) -> &WordTable {
        self.table.get_or_init(|| {
            let mut entries: BTreeMap<Word, Vec<HookAssignment>> = BTreeMap::new();
            for h in self.hook_assignments() {
                let word = self
                    .tree_forward(&h)
                    .and_then(|t| t.preorder_word())
                    .expect("domain elements are valid");
                entries.entry(word).or_default().push(h);
            }
            WordTable { entries }
        })
    }

    /// Every `(f, c)` whose tree reads `word` depth-first.
    pub fn word_preimages(&self, word: &Word) -> &[HookAssignment] {
        self.word_table().preimages(word)
    }
}
