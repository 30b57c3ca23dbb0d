use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::graphs::LabeledGraph;

/// Finite abelian group `Z_{n_1} × … × Z_{n_r}`. Elements are encoded as
/// mixed-radix integers with the first factor most significant.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AbelianGroup {
    orders: Vec<u32>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidParameter("cyclic factor of order 0".into()));
        }
        Ok(Self { orders })
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    /// Parse `Z2xZ3`, `Z4`, `Z2 x Z2`.
    pub fn parse(spec: &str) -> Result<Self> {
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let orders = compact
            .split(['x', 'X', '*'])
            .map(|f| {
                f.strip_prefix('Z')
                    .or_else(|| f.strip_prefix('z'))
                    .and_then(|n| n.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad group factor `{f}` in `{spec}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&n| n as usize).product()
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn to_tuple(&self, mut e: usize) -> Vec<u32> {
        let mut t = vec![0; self.orders.len()];
        for (slot, &n) in t.iter_mut().zip(&self.orders).rev() {
            *slot = (e % n as usize) as u32;
            e /= n as usize;
        }
        t
    }

    pub fn from_tuple(&self, t: &[u32]) -> Result<usize> {
        if t.len() != self.orders.len() {
            return Err(Error::InvalidParameter(format!(
                "element {t:?} has {} coordinates, group {self} has {}",
                t.len(),
                self.orders.len()
            )));
        }
        t.iter().zip(&self.orders).try_fold(0usize, |acc, (&x, &n)| {
            if x >= n {
                Err(Error::InvalidParameter(format!("coordinate {x} out of range for Z{n}")))
            } else {
                Ok(acc * n as usize + x as usize)
            }
        })
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ta, tb) = (self.to_tuple(a), self.to_tuple(b));
        let sum: Vec<u32> = ta
            .iter()
            .zip(&tb)
            .zip(&self.orders)
            .map(|((&x, &y), &n)| (x + y) % n)
            .collect();
        self.from_tuple(&sum).expect("in range")
    }

    pub fn neg(&self, a: usize) -> usize {
        let t: Vec<u32> = self
            .to_tuple(a)
            .iter()
            .zip(&self.orders)
            .map(|(&x, &n)| (n - x) % n)
            .collect();
        self.from_tuple(&t).expect("in range")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Subset of an [`AbelianGroup`] closed under inversion.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupSubset {
    group_order: usize,
    elements: BTreeSet<usize>,
}

impl GroupSubset {
    pub fn new(group: &AbelianGroup, elements: impl IntoIterator<Item = usize>) -> Result<Self> {
        let elements: BTreeSet<usize> = elements.into_iter().collect();
        if let Some(&e) = elements.iter().find(|&&e| e >= group.order()) {
            return Err(Error::InvalidParameter(format!("{e} is not an element of {group}")));
        }
        if let Some(&e) = elements.iter().find(|&&e| !elements.contains(&group.neg(e))) {
            return Err(Error::InvalidParameter(format!(
                "subset is not closed under inversion: {:?} has no inverse in it",
                group.to_tuple(e)
            )));
        }
        Ok(Self {
            group_order: group.order(),
            elements,
        })
    }

    /// All nonzero elements.
    pub fn nonzero(group: &AbelianGroup) -> Self {
        Self::new(group, 1..group.order()).expect("closed under inversion")
    }

    /// Parse a JSON list of element tuples; for a cyclic group plain
    /// integers are accepted too.
    pub fn from_json(group: &AbelianGroup, v: &Value) -> Result<Self> {
        let items = v
            .as_array()
            .ok_or_else(|| Error::Parse("subset must be a JSON array".into()))?;
        let mut out = Vec::new();
        for item in items {
            let tuple: Vec<u32> = match item {
                Value::Number(n) => vec![n.as_u64().ok_or_else(|| Error::Parse(format!("bad element {n}")))? as u32],
                Value::Array(xs) => xs
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .map(|x| x as u32)
                            .ok_or_else(|| Error::Parse(format!("bad coordinate {x}")))
                    })
                    .collect::<Result<_>>()?,
                other => return Err(Error::Parse(format!("bad element {other}"))),
            };
            out.push(group.from_tuple(&tuple)?);
        }
        Self::new(group, out)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: usize) -> bool {
        self.elements.contains(&e)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.elements.iter().copied()
    }
}

/// Number of `S`-flows: assignments of elements of `S` to the edges with
/// inflow equal to outflow at every node, each edge `uv` (`u ≤ v`) oriented
/// from `u` to `v`.
pub fn flo(g: &LabeledGraph, group: &AbelianGroup, s: &GroupSubset) -> Result<BigInt> {
    flo_oriented(g, group, s, &vec![false; g.edge_count()])
}

/// As [`flo`], with the orientation of the `i`-th edge of
/// [`LabeledGraph::edge_list`] reversed when `flip[i]` is set.
pub fn flo_oriented(g: &LabeledGraph, group: &AbelianGroup, s: &GroupSubset, flip: &[bool]) -> Result<BigInt> {
    if s.group_order != group.order() {
        return Err(Error::InvalidParameter(format!(
            "subset belongs to a group of order {}, not {group}",
            s.group_order
        )));
    }
    // Revalidate closure against this group.
    GroupSubset::new(group, s.iter())?;
    let edges = g.edge_list();
    if flip.len() != edges.len() {
        return Err(Error::Dimension(format!(
            "{} orientation flags for {} edges",
            flip.len(),
            edges.len()
        )));
    }
    let mut arcs = Vec::new();
    let mut loops = 0u32;
    for (&(u, v), &f) in edges.iter().zip(flip) {
        if u == v {
            loops += 1;
        } else {
            arcs.push(if f { (v, u) } else { (u, v) });
        }
    }

    // Spanning forest by BFS; `parent[w] = arc index` for non-roots.
    let n = g.node_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, &(a, b)) in arcs.iter().enumerate() {
        adj[a].push(i);
        adj[b].push(i);
    }
    let mut parent = vec![None; n];
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut in_tree = vec![false; arcs.len()];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &i in &adj[x] {
                let (a, b) = arcs[i];
                let y = if a == x { b } else { a };
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(i);
                    in_tree[i] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    let free: Vec<usize> = (0..arcs.len()).filter(|&i| !in_tree[i]).collect();
    let values: Vec<usize> = s.iter().collect();

    let mut count = BigInt::from(0);
    if values.is_empty() && !free.is_empty() {
        return Ok(count);
    }
    let mut digits = vec![0usize; free.len()];
    'outer: loop {
        let mut excess = vec![0usize; n];
        for (&i, &d) in free.iter().zip(&digits) {
            let (a, b) = arcs[i];
            let x = values[d];
            excess[b] = group.add(excess[b], x);
            excess[a] = group.add(excess[a], group.neg(x));
        }
        let mut ok = true;
        for &w in order.iter().rev() {
            let Some(i) = parent[w] else {
                if excess[w] != 0 {
                    ok = false;
                    break;
                }
                continue;
            };
            let (a, b) = arcs[i];
            let x = if b == w { group.neg(excess[w]) } else { excess[w] };
            if !s.contains(x) {
                ok = false;
                break;
            }
            excess[w] = 0;
            if b == w {
                excess[a] = group.add(excess[a], group.neg(x));
            } else {
                excess[b] = group.add(excess[b], x);
            }
        }
        if ok {
            count += 1;
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < values.len() {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    Ok(count * BigInt::from(s.len()).pow(loops))
}
