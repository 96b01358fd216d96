//! Linguistic hierarchies: relativization strategies against the
//! accessibility hierarchy, and term inventories against a partial order.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A total order, most accessible first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Chain {
    elements: Vec<String>,
}

impl Chain {
    pub fn new<I, S>(elements: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let elements: Vec<String> = elements.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.as_str()) {
                return Err(Error::DuplicateLabel(e.clone()));
            }
        }
        Ok(Chain { elements })
    }

    /// SU > DO > IO > OBL > GEN > OCOMP
    pub fn accessibility() -> Self {
        Chain::new(["SU", "DO", "IO", "OBL", "GEN", "OCOMP"]).expect("distinct")
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }
}

impl Default for Chain {
    fn default() -> Self {
        Chain::accessibility()
    }
}

impl TryFrom<Vec<String>> for Chain {
    type Error = Error;
    fn try_from(v: Vec<String>) -> Result<Self> {
        Chain::new(v)
    }
}

impl From<Chain> for Vec<String> {
    fn from(c: Chain) -> Self {
        c.elements
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Strategy {
    pub name: String,
    pub covered: BTreeSet<String>,
    #[serde(default)]
    pub primary: bool,
}

impl Strategy {
    pub fn new<I, S>(name: impl Into<String>, covered: I, primary: bool) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Strategy { name: name.into(), covered: covered.into_iter().map(Into::into).collect(), primary }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Constraint {
    /// The language relativizes subjects.
    AHC1,
    /// A strategy covers a contiguous segment.
    AHC2,
    /// The language has a primary strategy.
    PRC1,
    /// A primary strategy covers every position above its lowest one.
    PRC2,
    /// An inventory is a down-set of the ordering.
    CP3,
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstraintViolation {
    pub constraint: Constraint,
    pub detail: String,
}

impl ConstraintViolation {
    fn new(constraint: Constraint, detail: impl Into<String>) -> Self {
        ConstraintViolation { constraint, detail: detail.into() }
    }
}

pub fn check_strategy(chain: &Chain, strategy: &Strategy) -> Result<Vec<ConstraintViolation>> {
    let mut positions: Vec<usize> = strategy.covered.iter().map(|l| chain.position(l)).collect::<Result<_>>()?;
    positions.sort_unstable();
    let mut out = Vec::new();
    match (positions.first(), positions.last()) {
        (Some(&lo), Some(&hi)) => {
            if hi - lo + 1 != positions.len() {
                let gaps: Vec<&str> = (lo..=hi)
                    .filter(|p| positions.binary_search(p).is_err())
                    .map(|p| chain.elements()[p].as_str())
                    .collect();
                out.push(ConstraintViolation::new(
                    Constraint::AHC2,
                    format!("strategy `{}` skips {}", strategy.name, gaps.join(", ")),
                ));
            }
        }
        _ => out.push(ConstraintViolation::new(
            Constraint::AHC2,
            format!("strategy `{}` covers no position", strategy.name),
        )),
    }
    if strategy.primary {
        let prefix = positions.iter().enumerate().all(|(i, &p)| i == p);
        if positions.is_empty() || !prefix {
            let top = chain.elements().first().map(String::as_str).unwrap_or("");
            out.push(ConstraintViolation::new(
                Constraint::PRC2,
                format!("primary strategy `{}` is not an unbroken segment from {top}", strategy.name),
            ));
        }
    }
    Ok(out)
}

pub fn check_language(chain: &Chain, strategies: &[Strategy]) -> Result<Vec<ConstraintViolation>> {
    let mut out = Vec::new();
    if !strategies.iter().any(|s| s.primary) {
        out.push(ConstraintViolation::new(Constraint::PRC1, "no primary strategy"));
    }
    if let Some(top) = chain.elements().first() {
        if !strategies.iter().any(|s| s.covered.contains(top)) {
            out.push(ConstraintViolation::new(Constraint::AHC1, format!("no strategy covers {top}")));
        }
    }
    for s in strategies {
        out.extend(check_strategy(chain, s)?);
    }
    Ok(out)
}

/// A finite partial order given by covering (or any generating) edges
/// `(earlier, later)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialOrder {
    pub nodes: Vec<String>,
    pub edges: Vec<(String, String)>,
}

impl PartialOrder {
    /// Strict predecessors of every node under the transitive closure.
    pub fn predecessors(&self) -> Result<BTreeMap<&str, BTreeSet<&str>>> {
        let known: HashSet<&str> = self.nodes.iter().map(String::as_str).collect();
        let mut parents: BTreeMap<&str, Vec<&str>> = self.nodes.iter().map(|n| (n.as_str(), vec![])).collect();
        for (a, b) in &self.edges {
            for x in [a, b] {
                if !known.contains(x.as_str()) {
                    return Err(Error::UnknownLabel(x.clone()));
                }
            }
            parents.get_mut(b.as_str()).expect("known").push(a.as_str());
        }
        let order = self.topological(&parents)?;
        let mut preds: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for n in order {
            let mut set = BTreeSet::new();
            for &p in &parents[n] {
                set.insert(p);
                set.extend(preds[p].iter().copied());
            }
            preds.insert(n, set);
        }
        Ok(preds)
    }

    fn topological<'a>(&'a self, parents: &BTreeMap<&'a str, Vec<&'a str>>) -> Result<Vec<&'a str>> {
        let mut indegree: BTreeMap<&str, usize> = parents.iter().map(|(&n, p)| (n, p.len())).collect();
        let mut children: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (&n, ps) in parents {
            for &p in ps {
                children.entry(p).or_default().push(n);
            }
        }
        let mut ready: Vec<&str> = indegree.iter().filter(|(_, &d)| d == 0).map(|(&n, _)| n).collect();
        let mut out = Vec::with_capacity(indegree.len());
        while let Some(n) = ready.pop() {
            out.push(n);
            for &c in children.get(n).map(Vec::as_slice).unwrap_or(&[]) {
                let d = indegree.get_mut(c).expect("known");
                *d -= 1;
                if *d == 0 {
                    ready.push(c);
                }
            }
        }
        if out.len() < indegree.len() {
            let stuck = indegree.iter().find(|(n, &d)| d > 0 && !out.contains(n)).map(|(n, _)| n.to_string());
            return Err(Error::CyclicOrder(stuck.unwrap_or_default()));
        }
        Ok(out)
    }
}

/// True iff every predecessor of a member is a member.
pub fn check_downset<S: AsRef<str>>(order: &PartialOrder, inventory: &[S]) -> Result<bool> {
    let preds = order.predecessors()?;
    let members: BTreeSet<&str> = inventory.iter().map(AsRef::as_ref).collect();
    for m in &members {
        let p = preds.get(m).ok_or_else(|| Error::UnknownLabel(m.to_string()))?;
        if !p.is_subset(&members) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Input document for hierarchy checks. Every part is optional; the chain
/// defaults to the accessibility hierarchy.
#[derive(Debug, Clone, Default, Deserialize)]
pub struct HierarchyDocument {
    #[serde(default)]
    pub chain: Option<Chain>,
    #[serde(default)]
    pub strategies: Option<Vec<Strategy>>,
    #[serde(default)]
    pub order: Option<PartialOrder>,
    #[serde(default)]
    pub inventories: BTreeMap<String, Vec<String>>,
}

impl HierarchyDocument {
    /// Language constraints (when strategies are given) followed by one CP3
    /// entry per inventory that is not a down-set.
    pub fn check(&self) -> Result<Vec<ConstraintViolation>> {
        let chain = self.chain.clone().unwrap_or_default();
        let mut out = match &self.strategies {
            Some(s) => check_language(&chain, s)?,
            None => vec![],
        };
        if let Some(order) = &self.order {
            for (name, inv) in &self.inventories {
                if !check_downset(order, inv)? {
                    out.push(ConstraintViolation::new(
                        Constraint::CP3,
                        format!("inventory `{name}` is not closed under predecessors"),
                    ));
                }
            }
        }
        Ok(out)
    }
}
