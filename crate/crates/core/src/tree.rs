//! Ordered rooted trees whose non-root nodes carry cycle indices, their
//! depth-first words, text and DOT forms, and the tree class grown from the
//! pivot sapling by inserting the other saplings.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Root,
    /// A cycle index in `[m]`.
    Cycle(usize),
    /// Hook `f(i)`; only present in intermediate trees.
    Hook(usize),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Root => f.write_str("*"),
            Label::Cycle(i) => write!(f, "{i}"),
            Label::Hook(i) => write!(f, "f{i}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Node {
    pub(crate) label: Label,
    pub(crate) children: Vec<usize>,
}

/// An ordered rooted tree.
///
/// Nodes are kept in preorder with the root at index 0, so two trees are
/// equal exactly when they have the same shape and labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderedTree {
    nodes: Vec<Node>,
}

impl OrderedTree {
    /// A root with the given leaf children.
    pub fn sapling(leaves: impl IntoIterator<Item = Label>) -> Self {
        let mut nodes = vec![Node {
            label: Label::Root,
            children: Vec::new(),
        }];
        for label in leaves {
            let id = nodes.len();
            nodes.push(Node {
                label,
                children: Vec::new(),
            });
            nodes[0].children.push(id);
        }
        OrderedTree { nodes }
    }

    /// Renumbers the nodes reachable from `root` in preorder.
    pub(crate) fn from_arena(arena: &[Node], root: usize) -> Self {
        let mut nodes = Vec::with_capacity(arena.len());
        // (arena id, slot in parent's child list to patch)
        let mut stack = vec![(root, None::<(usize, usize)>)];
        while let Some((id, parent_slot)) = stack.pop() {
            let new_id = nodes.len();
            if let Some((parent, slot)) = parent_slot {
                let parent: &mut Node = &mut nodes[parent];
                parent.children[slot] = new_id;
            }
            let src = &arena[id];
            nodes.push(Node {
                label: src.label,
                children: vec![usize::MAX; src.children.len()],
            });
            for (slot, &child) in src.children.iter().enumerate().rev() {
                stack.push((child, Some((new_id, slot))));
            }
        }
        OrderedTree { nodes }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn label(&self, id: usize) -> Label {
        self.nodes[id].label
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.nodes[id].children
    }

    /// Labels of the non-root nodes in preorder.
    pub fn preorder_labels(&self) -> impl Iterator<Item = Label> + '_ {
        // preorder storage makes this a plain scan
        self.nodes[1..].iter().map(|n| n.label)
    }

    /// The depth-first word of a finished tree.
    pub fn preorder_word(&self) -> Result<Word> {
        self.preorder_labels()
            .map(|l| match l {
                Label::Cycle(i) => Ok(i),
                other => Err(Error::TreeNotInClass(format!(
                    "non-root node carries label {other}"
                ))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Inserts a sapling with root label `Cycle(label)` and `leaves` leaf
    /// children labelled the same, as child number `pos` of `parent`.
    fn with_sapling_inserted(
        &self,
        parent: usize,
        pos: usize,
        label: usize,
        leaves: usize,
    ) -> Self {
        let mut arena = self.nodes.clone();
        let root = arena.len();
        arena.push(Node {
            label: Label::Cycle(label),
            children: (root + 1..=root + leaves).collect(),
        });
        for _ in 0..leaves {
            arena.push(Node {
                label: Label::Cycle(label),
                children: Vec::new(),
            });
        }
        arena[parent].children.insert(pos, root);
        OrderedTree::from_arena(&arena, 0)
    }

    /// Parses the nested form `"*(2 1(1 1 3(3) 1))"`. Hooks are written `f0`, `f1`, ...
    pub fn parse(text: &str) -> Result<Self> {
        let mut parser = TreeParser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            arena: Vec::new(),
        };
        parser.skip_ws();
        let root = parser.node(0)?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(Error::parse(text, "trailing characters"));
        }
        if parser.arena[root].label != Label::Root {
            return Err(Error::parse(text, "tree must start with '*'"));
        }
        Ok(OrderedTree::from_arena(&parser.arena, root))
    }

    /// Graphviz description. Child order is kept by `ordering=out` and an
    /// `ordinal` attribute on every edge.
    pub fn to_dot(&self) -> String {
        let mut s =
            String::from("digraph tree {\n  graph [ordering=out];\n  node [shape=circle];\n");
        for (id, node) in self.nodes.iter().enumerate() {
            let _ = writeln!(s, "  n{id} [label=\"{}\"];", node.label);
        }
        for (id, node) in self.nodes.iter().enumerate() {
            for (ord, &child) in node.children.iter().enumerate() {
                let _ = writeln!(s, "  n{id} -> n{child} [ordinal={}];", ord + 1);
            }
        }
        s.push_str("}\n");
        s
    }

    fn write_node(&self, f: &mut fmt::Formatter<'_>, id: usize) -> fmt::Result {
        let node = &self.nodes[id];
        write!(f, "{}", node.label)?;
        if !node.children.is_empty() {
            f.write_str("(")?;
            for (i, &child) in node.children.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                self.write_node(f, child)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for OrderedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_node(f, 0)
    }
}

const MAX_DEPTH: usize = 256;

struct TreeParser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    arena: Vec<Node>,
}

impl TreeParser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::parse(
                self.text,
                format!("expected a label at byte {start}"),
            ));
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| Error::parse(self.text, "label too large"))
    }

    fn node(&mut self, depth: usize) -> Result<usize> {
        if depth > MAX_DEPTH {
            return Err(Error::parse(self.text, "tree nested too deeply"));
        }
        let label = match self.bytes.get(self.pos) {
            Some(b'*') => {
                self.pos += 1;
                if depth > 0 {
                    return Err(Error::parse(self.text, "'*' is only allowed at the root"));
                }
                Label::Root
            }
            Some(b'f') => {
                self.pos += 1;
                Label::Hook(self.number()?)
            }
            _ => {
                let l = self.number()?;
                if l == 0 {
                    return Err(Error::parse(self.text, "labels are 1-based"));
                }
                Label::Cycle(l)
            }
        };
        if depth == 0 && label != Label::Root {
            return Err(Error::parse(self.text, "tree must start with '*'"));
        }
        let id = self.arena.len();
        self.arena.push(Node {
            label,
            children: Vec::new(),
        });
        if self.bytes.get(self.pos) == Some(&b'(') {
            self.pos += 1;
            loop {
                self.skip_ws();
                if self.bytes.get(self.pos) == Some(&b')') {
                    self.pos += 1;
                    break;
                }
                if self.pos >= self.bytes.len() {
                    return Err(Error::parse(self.text, "unclosed '('"));
                }
                let child = self.node(depth + 1)?;
                self.arena[id].children.push(child);
                match self.bytes.get(self.pos) {
                    Some(b')') | Some(b' ' | b'\t' | b'\n' | b'\r') => {}
                    Some(&b) => {
                        return Err(Error::parse(
                            self.text,
                            format!("unexpected {:?} at byte {}", b as char, self.pos),
                        ))
                    }
                    None => return Err(Error::parse(self.text, "unclosed '('")),
                }
            }
            if self.arena[id].children.is_empty() {
                return Err(Error::parse(self.text, "empty child list"));
            }
        }
        Ok(id)
    }
}

impl Instance {
    /// The pivot sapling: a root with `ℓ_p - 1` leaves labelled `p`.
    pub fn pivot_sapling(&self) -> OrderedTree {
        let p = self.p();
        OrderedTree::sapling((1..self.cycle_len(p)).map(|_| Label::Cycle(p)))
    }

    /// Every distinct tree obtained from the pivot sapling by inserting the
    /// sapling of each other cycle, in any order, as a new child at any
    /// position of the root or of any node that already has children.
    ///
    /// `budget` bounds the number of insertions tried.
    pub fn enumerate_trees(&self, budget: u64) -> Result<Vec<OrderedTree>> {
        let mut level: BTreeSet<OrderedTree> = BTreeSet::from([self.pivot_sapling()]);
        let mut tried: u64 = 0;
        for _ in 1..self.m() {
            let mut next = BTreeSet::new();
            for tree in &level {
                let present: BTreeSet<usize> = tree
                    .preorder_labels()
                    .filter_map(|l| match l {
                        Label::Cycle(i) => Some(i),
                        _ => None,
                    })
                    .collect();
                for i in self.non_pivot_cycles().filter(|i| !present.contains(i)) {
                    for parent in 0..tree.node_count() {
                        let kids = tree.children(parent).len();
                        if parent != 0 && kids == 0 {
                            continue;
                        }
                        for pos in 0..=kids {
                            tried += 1;
                            if tried > budget {
                                return Err(Error::BudgetExceeded { budget });
                            }
                            next.insert(tree.with_sapling_inserted(
                                parent,
                                pos,
                                i,
                                self.cycle_len(i),
                            ));
                        }
                    }
                }
            }
            level = next;
        }
        Ok(level.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn t(s: &str) -> OrderedTree {
        OrderedTree::parse(s).unwrap()
    }

    fn inst(text: &str, n: usize, k: usize) -> Instance {
        Instance::new(Permutation::parse_cycles(text, n).unwrap(), k).unwrap()
    }

    #[test]
    fn preorder_words_of_drawn_trees() {
        assert_eq!(
            t("*(1 3(3) 1 2(2 2))").preorder_word().unwrap().to_string(),
            "1331222"
        );
        assert_eq!(
            t("*(1 2(2 3(3) 2) 1)").preorder_word().unwrap().to_string(),
            "1223321"
        );
        assert_eq!(
            t("*(3(3) 2 1(1 1 1))").preorder_word().unwrap().to_string(),
            "3321111"
        );
        assert_eq!(
            t("*(3(1(1 1 1) 3) 2)").preorder_word().unwrap().to_string(),
            "3111132"
        );
    }

    #[test]
    fn hooks_block_the_word() {
        assert!(t("*(2 f0)").preorder_word().is_err());
    }

    #[test]
    fn serialization_round_trip() {
        for s in [
            "*",
            "*(1)",
            "*(2 1(1 1 3(3) 1))",
            "*(1(5(5 4(4 4)) 1 3(3) 1) 2 2)",
            "*(1 1 f1 1)",
        ] {
            assert_eq!(t(s).to_string(), s);
        }
        assert_eq!(
            t("  *( 2   1(1 1 3(3) 1) ) ").to_string(),
            "*(2 1(1 1 3(3) 1))"
        );
    }

    #[test]
    fn parse_errors() {
        for bad in [
            "", "1(2)", "*(", "*()", "*(1", "*(1))", "*(1 *)", "*(0)", "*(1,2)", "*x", "*(f)",
            "*(1(2)3)",
        ] {
            assert!(OrderedTree::parse(bad).is_err(), "{bad:?}");
        }
        let deep = format!("*{}1{}", "(1".repeat(400), ")".repeat(400));
        assert!(OrderedTree::parse(&deep).is_err());
    }

    #[test]
    fn dot_output_preserves_order() {
        let dot = t("*(2 1(1 3(3)))").to_dot();
        assert!(dot.starts_with("digraph tree {"));
        assert_eq!(dot.matches("[label=").count(), 6);
        assert!(dot.contains("n0 -> n1 [ordinal=1];"));
        assert!(dot.contains("n0 -> n2 [ordinal=2];"));
        assert!(dot.contains("n2 -> n4 [ordinal=2];"));
    }

    #[test]
    fn class_contains_drawn_trees() {
        let one = inst("(1 4 2)(3 5)(6)", 6, 1);
        let trees = one.enumerate_trees(1_000_000).unwrap();
        assert!(trees.contains(&t("*(1 3(3) 1 2(2 2))")));
        assert!(trees.contains(&t("*(1 2(2 3(3) 2) 1)")));

        let three = inst("(1 4 2)(3 5)(6)", 6, 3);
        let trees = three.enumerate_trees(1_000_000).unwrap();
        assert!(trees.contains(&t("*(3(3) 2 1(1 1 1))")));
        assert!(trees.contains(&t("*(3(1(1 1 1) 3) 2)")));
        for tree in &trees {
            assert!(
                three.is_valid_word(&tree.preorder_word().unwrap()),
                "{tree}"
            );
        }
    }

    #[test]
    fn class_of_single_cycle_is_the_pivot_sapling() {
        let c = inst("(1 2 3 4)", 4, 3);
        assert_eq!(c.enumerate_trees(10).unwrap(), vec![t("*(1 1 1)")]);
        let one = inst("", 1, 1);
        assert_eq!(one.enumerate_trees(10).unwrap(), vec![t("*")]);
    }

    #[test]
    fn class_budget() {
        let i = inst("(1 4 2)(3 5)(6)", 6, 3);
        assert_eq!(
            i.enumerate_trees(3).unwrap_err(),
            Error::BudgetExceeded { budget: 3 }
        );
    }
}
