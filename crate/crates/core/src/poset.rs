//! Partial orders as graphs: validation, Möbius functions, Hasse graphs.
//!
//! A partial order here is a reflexive, antisymmetric, transitive graph on a
//! single set. Its zeta function is invertible in the incidence algebra; the
//! inverse is the Möbius function, computed either by the standard recursion
//! or by alternating chain counts. Both run in integer arithmetic.

use std::collections::BTreeMap;

use crate::error::{Error, OrderViolation, Result};
use crate::graph::{FiniteSet, Graph, WeightedGraph};

/// How to compute a Möbius function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobiusMethod {
    /// mu(s, s) = 1 and mu(s, t) = -sum of mu(s, x) over s <= x < t.
    Recursive,
    /// Alternating sum of chain counts: sum over i of (-1)^i times the
    /// number of chains of length i from s to t. The strict order of a
    /// finite poset is nilpotent, so the sum is finite.
    Chains,
}

/// Dense boolean view of an order relation.
struct OrderMatrix {
    size: usize,
    le: Vec<bool>,
}

impl OrderMatrix {
    fn from_graph(g: &Graph) -> OrderMatrix {
        let size = g.source().size();
        let mut le = vec![false; size * size];
        for (s, t) in g.arrows() {
            le[s * size + t] = true;
        }
        OrderMatrix { size, le }
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.le[a * self.size + b]
    }

    fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.le(a, b)
    }
}

/// Check the partial-order axioms, naming the first violated one.
pub fn check_partial_order(g: &Graph) -> Result<()> {
    if g.source().size() != g.target().size() {
        return Err(Error::NotPartialOrder(OrderViolation::NotEndorelation {
            source: g.source().size(),
            target: g.target().size(),
        }));
    }
    let m = OrderMatrix::from_graph(g);
    for a in 0..m.size {
        if !m.le(a, a) {
            return Err(Error::NotPartialOrder(OrderViolation::Reflexivity {
                element: a,
            }));
        }
    }
    for a in 0..m.size {
        for b in 0..m.size {
            if a != b && m.le(a, b) && m.le(b, a) {
                return Err(Error::NotPartialOrder(OrderViolation::Antisymmetry {
                    a,
                    b,
                }));
            }
        }
    }
    for a in 0..m.size {
        for b in 0..m.size {
            if !m.le(a, b) {
                continue;
            }
            for c in 0..m.size {
                if m.le(b, c) && !m.le(a, c) {
                    return Err(Error::NotPartialOrder(OrderViolation::Transitivity {
                        a,
                        b,
                        c,
                    }));
                }
            }
        }
    }
    Ok(())
}

/// Reflexive-transitive closure of a graph on one set.
pub fn reflexive_transitive_closure(g: &Graph) -> Result<Graph> {
    if g.source().size() != g.target().size() {
        return Err(Error::SetMismatch {
            left: g.source().size(),
            right: g.target().size(),
        });
    }
    let size = g.source().size();
    let mut reach = vec![false; size * size];
    for (s, t) in g.arrows() {
        reach[s * size + t] = true;
    }
    for i in 0..size {
        reach[i * size + i] = true;
    }
    for k in 0..size {
        for i in 0..size {
            if reach[i * size + k] {
                for j in 0..size {
                    if reach[k * size + j] {
                        reach[i * size + j] = true;
                    }
                }
            }
        }
    }
    let arrows = (0..size)
        .flat_map(|i| (0..size).map(move |j| (i, j)))
        .filter(|&(i, j)| reach[i * size + j]);
    Graph::new(g.source().clone(), g.source().clone(), arrows)
}

/// Integer-valued Möbius function of a validated partial order, as a sparse
/// table over the pairs `s <= t`.
pub fn mobius_function_entries(
    poset: &Graph,
    method: MobiusMethod,
) -> Result<BTreeMap<(usize, usize), i64>> {
    check_partial_order(poset)?;
    let m = OrderMatrix::from_graph(poset);
    let table = match method {
        MobiusMethod::Recursive => mobius_recursive(&m),
        MobiusMethod::Chains => mobius_chains(&m),
    };
    Ok(table)
}

/// The Möbius function as a weighted graph, so that
/// `zeta(poset) * mu = delta = mu * zeta(poset)`.
pub fn mobius_function(poset: &Graph, method: MobiusMethod) -> Result<WeightedGraph> {
    let entries = mobius_function_entries(poset, method)?;
    WeightedGraph::new(
        poset.source().clone(),
        poset.source().clone(),
        entries.into_iter().map(|((s, t), v)| (s, t, v as f64)),
    )
}

fn topological_order(m: &OrderMatrix) -> Vec<usize> {
    // counting sort by number of strict predecessors works for any poset:
    // if a < b then a has strictly fewer predecessors than b
    let mut order: Vec<usize> = (0..m.size).collect();
    let below: Vec<usize> = (0..m.size)
        .map(|t| (0..m.size).filter(|&s| m.lt(s, t)).count())
        .collect();
    order.sort_by_key(|&t| below[t]);
    order
}

fn mobius_recursive(m: &OrderMatrix) -> BTreeMap<(usize, usize), i64> {
    let order = topological_order(m);
    let mut table = BTreeMap::new();
    for s in 0..m.size {
        let mut mu = vec![0i64; m.size];
        for &t in &order {
            if t == s {
                mu[t] = 1;
            } else if m.lt(s, t) {
                let below: i64 = (0..m.size)
                    .filter(|&x| m.le(s, x) && m.lt(x, t))
                    .map(|x| mu[x])
                    .sum();
                mu[t] = -below;
            }
        }
        for (t, &v) in mu.iter().enumerate() {
            if v != 0 {
                table.insert((s, t), v);
            }
        }
    }
    table
}

fn mobius_chains(m: &OrderMatrix) -> BTreeMap<(usize, usize), i64> {
    let size = m.size;
    // strict-order incidence matrix; nilpotent, so its powers vanish
    let strict: Vec<i64> = (0..size * size)
        .map(|idx| i64::from(m.lt(idx / size, idx % size)))
        .collect();
    // mu = sum over i >= 0 of (-1)^i * strict^i, starting from the identity
    let mut mu = vec![0i64; size * size];
    for i in 0..size {
        mu[i * size + i] = 1;
    }
    let mut term = strict.clone();
    let mut sign = -1i64;
    while term.iter().any(|&v| v != 0) {
        for (acc, &t) in mu.iter_mut().zip(term.iter()) {
            *acc += sign * t;
        }
        // next chain length
        let mut next = vec![0i64; size * size];
        for a in 0..size {
            for b in 0..size {
                let t_ab = term[a * size + b];
                if t_ab == 0 {
                    continue;
                }
                for c in 0..size {
                    next[a * size + c] += t_ab * strict[b * size + c];
                }
            }
        }
        term = next;
        sign = -sign;
    }
    let mut table = BTreeMap::new();
    for s in 0..size {
        for t in 0..size {
            let v = mu[s * size + t];
            if v != 0 {
                table.insert((s, t), v);
            }
        }
    }
    table
}

/// Covering relation of a validated partial order, with loops added when
/// `reflexive` is set. The reflexive-transitive closure of the result is
/// the original order.
pub fn hasse_graph(poset: &Graph, reflexive: bool) -> Result<Graph> {
    check_partial_order(poset)?;
    let m = OrderMatrix::from_graph(poset);
    let mut arrows = Vec::new();
    for a in 0..m.size {
        if reflexive {
            arrows.push((a, a));
        }
        for b in 0..m.size {
            if m.lt(a, b) && !(0..m.size).any(|x| m.lt(a, x) && m.lt(x, b)) {
                arrows.push((a, b));
            }
        }
    }
    Graph::new(poset.source().clone(), poset.source().clone(), arrows)
}

/// Convenience: the chain 0 < 1 < ... < size-1 as a poset graph.
pub fn chain_poset(size: usize) -> Graph {
    let set = FiniteSet::of_size(size);
    let arrows = (0..size).flat_map(|i| (i..size).map(move |j| (i, j)));
    Graph::new(set.clone(), set, arrows).expect("chain arrows are in range")
}

/// Convenience: the discrete order (loops only) on a set of the given size.
pub fn antichain_poset(size: usize) -> Graph {
    Graph::identity(FiniteSet::of_size(size))
}
