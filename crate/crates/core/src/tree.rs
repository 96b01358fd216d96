//! Phrase trees: parsing, minimum branching heights and structural queries.
//!
//! Trees are stored as a preorder arena. Node ids are preorder indices, so the
//! root is always `NodeId(0)` and every child has a larger id than its parent.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::RelationMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub id: NodeId,
    pub label: String,
    pub word: Option<String>,
    pub children: Vec<NodeId>,
    pub parent: Option<NodeId>,
    pub depth: usize,
}

impl Node {
    pub fn is_leaf(&self) -> bool {
        self.children.is_empty()
    }

    /// Branching nodes have at least two children; unary nodes are skipped
    /// when looking for the first branching node above something.
    pub fn is_branching(&self) -> bool {
        self.children.len() >= 2
    }
}

/// Owned recursive form of a tree, used to build a [`PhraseTree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constituent {
    Leaf { label: String, word: String },
    Phrase { label: String, children: Vec<Constituent> },
}

impl Constituent {
    pub fn leaf(label: impl Into<String>, word: impl Into<String>) -> Self {
        Constituent::Leaf { label: label.into(), word: word.into() }
    }

    pub fn phrase(label: impl Into<String>, children: Vec<Constituent>) -> Self {
        Constituent::Phrase { label: label.into(), children }
    }
}

/// A rooted, ordered, labeled, non-reticulate tree.
///
/// Leaves carry a word and a lexical category (their label); internal nodes
/// carry phrasal labels. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhraseTree {
    nodes: Vec<Node>,
    leaves: Vec<NodeId>,
}

impl PhraseTree {
    pub fn from_constituent(root: Constituent) -> Result<Self> {
        let mut tree = PhraseTree { nodes: Vec::new(), leaves: Vec::new() };
        tree.push(root, None, 0)?;
        Ok(tree)
    }

    fn push(&mut self, c: Constituent, parent: Option<NodeId>, depth: usize) -> Result<NodeId> {
        let id = NodeId(self.nodes.len());
        match c {
            Constituent::Leaf { label, word } => {
                if label.is_empty() {
                    return Err(Error::EmptyNode { pos: 0 });
                }
                self.nodes.push(Node { id, label, word: Some(word), children: vec![], parent, depth });
                self.leaves.push(id);
            }
            Constituent::Phrase { label, children } => {
                if label.is_empty() || children.is_empty() {
                    return Err(Error::EmptyNode { pos: 0 });
                }
                self.nodes.push(Node { id, label, word: None, children: vec![], parent, depth });
                for child in children {
                    let cid = self.push(child, Some(id), depth + 1)?;
                    self.nodes[id.0].children.push(cid);
                }
            }
        }
        Ok(id)
    }

    pub fn root(&self) -> NodeId {
        NodeId(0)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn node_ids(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.nodes.len()).map(NodeId)
    }

    /// Leaves in left-to-right order.
    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn node(&self, id: NodeId) -> Result<&Node> {
        self.nodes.get(id.0).ok_or(Error::UnknownNode(id))
    }

    pub fn label(&self, id: NodeId) -> Result<&str> {
        Ok(&self.node(id)?.label)
    }

    /// True when every internal node has exactly two children.
    pub fn is_switched(&self) -> bool {
        self.nodes.iter().all(|n| n.is_leaf() || n.children.len() == 2)
    }

    pub fn max_arity(&self) -> usize {
        self.nodes.iter().map(|n| n.children.len()).max().unwrap_or(0)
    }

    /// Strict ancestors of `id`, nearest first.
    pub fn ancestors(&self, id: NodeId) -> Result<Ancestors<'_>> {
        let start = self.node(id)?.parent;
        Ok(Ancestors { tree: self, next: start })
    }

    /// Lowest common ancestor; `lca(a, a) = a`.
    pub fn lca(&self, a: NodeId, b: NodeId) -> Result<NodeId> {
        let (mut x, mut y) = (self.node(a)?, self.node(b)?);
        while x.depth > y.depth {
            x = &self.nodes[x.parent.expect("non-root has parent").0];
        }
        while y.depth > x.depth {
            y = &self.nodes[y.parent.expect("non-root has parent").0];
        }
        while x.id != y.id {
            x = &self.nodes[x.parent.expect("non-root has parent").0];
            y = &self.nodes[y.parent.expect("non-root has parent").0];
        }
        Ok(x.id)
    }

    /// Reflexive dominance: `a` is `b` or an ancestor of `b`.
    pub fn dominates(&self, a: NodeId, b: NodeId) -> Result<bool> {
        self.node(a)?;
        let mut cur = Some(self.node(b)?);
        while let Some(n) = cur {
            if n.id == a {
                return Ok(true);
            }
            if n.depth <= self.nodes[a.0].depth {
                return Ok(false);
            }
            cur = n.parent.map(|p| &self.nodes[p.0]);
        }
        Ok(false)
    }

    pub fn strictly_dominates(&self, a: NodeId, b: NodeId) -> Result<bool> {
        Ok(a != b && self.dominates(a, b)?)
    }

    /// Nearest strict ancestor with at least two children.
    pub fn first_branching_ancestor(&self, id: NodeId) -> Result<Option<NodeId>> {
        Ok(self.ancestors(id)?.find(|&p| self.nodes[p.0].is_branching()))
    }

    /// Dominance over all nodes in preorder.
    pub fn dominance_matrix(&self) -> RelationMatrix {
        let ids: Vec<NodeId> = self.node_ids().collect();
        RelationMatrix::from_fn(self.node_labels(&ids), |i, j| {
            self.dominates(ids[i], ids[j]).expect("ids come from this tree")
        })
    }

    /// Node labels for `ids`, with repeated labels suffixed by `#<node id>`.
    pub fn node_labels(&self, ids: &[NodeId]) -> Vec<String> {
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for id in ids {
            *counts.entry(self.nodes[id.0].label.as_str()).or_default() += 1;
        }
        ids.iter()
            .map(|id| {
                let label = &self.nodes[id.0].label;
                if counts[label.as_str()] > 1 {
                    format!("{label}#{}", id.0)
                } else {
                    label.clone()
                }
            })
            .collect()
    }

    pub fn to_constituent(&self) -> Constituent {
        self.constituent_at(self.root())
    }

    fn constituent_at(&self, id: NodeId) -> Constituent {
        let n = &self.nodes[id.0];
        match &n.word {
            Some(w) => Constituent::leaf(n.label.clone(), w.clone()),
            None => Constituent::phrase(
                n.label.clone(),
                n.children.iter().map(|&c| self.constituent_at(c)).collect(),
            ),
        }
    }

    fn write_node(&self, id: NodeId, out: &mut String) {
        let n = &self.nodes[id.0];
        out.push('(');
        out.push_str(&n.label);
        if let Some(w) = &n.word {
            out.push(' ');
            out.push_str(w);
        }
        for &c in &n.children {
            out.push(' ');
            self.write_node(c, out);
        }
        out.push(')');
    }
}

impl fmt::Display for PhraseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_node(self.root(), &mut out);
        f.write_str(&out)
    }
}

pub struct Ancestors<'a> {
    tree: &'a PhraseTree,
    next: Option<NodeId>,
}

impl Iterator for Ancestors<'_> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let cur = self.next?;
        self.next = self.tree.nodes[cur.0].parent;
        Some(cur)
    }
}

/// Integer height of every node: leaves sit at 0 and each internal node at one
/// more than its tallest child, the lowest height any strictly increasing
/// assignment allows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightAssignment {
    heights: Vec<u32>,
}

impl HeightAssignment {
    pub fn get(&self, id: NodeId) -> Result<u32> {
        self.heights.get(id.0).copied().ok_or(Error::UnknownNode(id))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.heights
    }

    pub fn root(&self) -> u32 {
        self.heights[0]
    }
}

pub fn assign_heights(tree: &PhraseTree) -> HeightAssignment {
    let mut heights = vec![0u32; tree.len()];
    // Children always follow their parent in preorder.
    for n in tree.nodes().iter().rev() {
        if let Some(h) = n.children.iter().map(|c| heights[c.0]).max() {
            heights[n.id.0] = h + 1;
        }
    }
    HeightAssignment { heights }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token<'a> {
    Open(usize),
    Close(usize),
    Atom(usize, &'a str),
}

fn tokenize(text: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token::Atom(s, &text[s..i]));
            }
            match ch {
                '(' => tokens.push(Token::Open(i)),
                ')' => tokens.push(Token::Close(i)),
                _ => {}
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token::Atom(s, &text[s..]));
    }
    tokens
}

/// Parse one labeled bracketing such as `(S (NP (D the) (N man)) (VP (V ran)))`.
///
/// Leaves are written `(CAT word)`. Node ids follow preorder.
pub fn parse_tree(text: &str) -> Result<PhraseTree> {
    let tokens = tokenize(text);
    if tokens.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pos = 0;
    let root = parse_node(&tokens, &mut pos, text.len())?;
    if let Some(t) = tokens.get(pos) {
        return Err(match t {
            Token::Close(p) => Error::UnbalancedBrackets { pos: *p },
            Token::Open(p) | Token::Atom(p, _) => Error::TrailingInput { pos: *p },
        });
    }
    PhraseTree::from_constituent(root)
}

fn parse_node(tokens: &[Token<'_>], pos: &mut usize, end: usize) -> Result<Constituent> {
    let open = match tokens.get(*pos) {
        Some(Token::Open(p)) => *p,
        Some(Token::Atom(p, _)) | Some(Token::Close(p)) => {
            return Err(Error::UnbalancedBrackets { pos: *p })
        }
        None => return Err(Error::UnbalancedBrackets { pos: end }),
    };
    *pos += 1;
    let label = match tokens.get(*pos) {
        Some(Token::Atom(_, s)) => {
            *pos += 1;
            s.to_string()
        }
        Some(_) => return Err(Error::EmptyNode { pos: open }),
        None => return Err(Error::UnbalancedBrackets { pos: end }),
    };
    let mut words = Vec::new();
    let mut children = Vec::new();
    loop {
        match tokens.get(*pos) {
            Some(Token::Close(_)) => {
                *pos += 1;
                break;
            }
            Some(Token::Open(_)) => children.push(parse_node(tokens, pos, end)?),
            Some(Token::Atom(_, w)) => {
                words.push(*w);
                *pos += 1;
            }
            None => return Err(Error::UnbalancedBrackets { pos: end }),
        }
    }
    match (words.len(), children.is_empty()) {
        (0, true) => Err(Error::EmptyNode { pos: open }),
        (0, false) => Ok(Constituent::Phrase { label, children }),
        (1, true) => Ok(Constituent::Leaf { label, word: words[0].to_string() }),
        _ => Err(Error::MixedNode { pos: open }),
    }
}

/// A tree read from a tree file, with its 1-based line number.
#[derive(Debug, Clone)]
pub struct NumberedTree {
    pub line: usize,
    pub tree: PhraseTree,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {source}")]
pub struct TreeFileError {
    pub line: usize,
    pub source: Error,
}

/// Parse a tree file: one bracketed tree per line, `#` comment lines and blank
/// lines skipped.
pub fn parse_tree_file(text: &str) -> std::result::Result<Vec<NumberedTree>, TreeFileError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        })
        .map(|(i, l)| {
            parse_tree(l)
                .map(|tree| NumberedTree { line: i + 1, tree })
                .map_err(|source| TreeFileError { line: i + 1, source })
        })
        .collect()
}
