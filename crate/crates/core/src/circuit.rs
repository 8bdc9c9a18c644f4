use alloc::format;
use alloc::vec::Vec;

use crate::assignment::PartialAssignment;
use crate::error::{Error, Result};
use crate::term::Literal;
use crate::ternary::Ternary;

/// One gate of a [`Circuit`]. Children are indices of earlier gates.
///
/// An AND or OR gate with no children is the constant 1 or 0
/// respectively.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Input(Literal),
    And(Vec<usize>),
    Or(Vec<usize>),
    Not(usize),
}

impl Node {
    pub fn children(&self) -> &[usize] {
        match self {
            Node::Input(_) => &[],
            Node::And(c) | Node::Or(c) => c,
            Node::Not(c) => core::slice::from_ref(c),
        }
    }
}

/// A single-output combinational circuit over AND, OR and NOT gates whose
/// inputs are literals.
///
/// Gates are stored in topological order. `is_formula` is derived at
/// construction: every gate except the output feeds exactly one parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circuit {
    num_vars: usize,
    nodes: Vec<Node>,
    output: usize,
    is_formula: bool,
}

impl Circuit {
    pub fn new(num_vars: usize, nodes: Vec<Node>, output: usize) -> Result<Self> {
        if output >= nodes.len() {
            return Err(Error::MalformedCircuit(format!(
                "output gate {output} does not exist ({} gates)",
                nodes.len()
            )));
        }
        let mut parents = alloc::vec![0usize; nodes.len()];
        for (id, node) in nodes.iter().enumerate() {
            if let Node::Input(lit) = node {
                if lit.var >= num_vars {
                    return Err(Error::VarOutOfRange {
                        var: lit.var,
                        num_vars,
                    });
                }
            }
            for &child in node.children() {
                if child >= id {
                    return Err(Error::MalformedCircuit(format!(
                        "gate {id} refers to gate {child}, which is not earlier"
                    )));
                }
                parents[child] += 1;
            }
        }
        let is_formula = parents
            .iter()
            .enumerate()
            .all(|(id, &p)| if id == output { p == 0 } else { p == 1 });
        Ok(Circuit {
            num_vars,
            nodes,
            output,
            is_formula,
        })
    }

    /// The circuit consisting of one input gate.
    pub fn literal(num_vars: usize, lit: Literal) -> Result<Self> {
        Circuit::new(num_vars, alloc::vec![Node::Input(lit)], 0)
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn is_formula(&self) -> bool {
        self.is_formula
    }

    /// Number of gates, inputs included.
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// No NOT gates and no negated input literals.
    pub fn is_monotone(&self) -> bool {
        self.nodes.iter().all(|n| match n {
            Node::Input(l) => !l.negated,
            Node::Not(_) => false,
            _ => true,
        })
    }

    /// Same gates over a larger variable set.
    pub fn widen(&self, num_vars: usize) -> Result<Self> {
        if num_vars < self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: num_vars,
            });
        }
        Ok(Circuit {
            num_vars,
            ..self.clone()
        })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.num_vars {
            return Err(Error::DimensionMismatch {
                expected: self.num_vars,
                found: len,
            });
        }
        Ok(())
    }

    /// Evaluates the circuit under three-valued semantics.
    pub fn eval_ternary(&self, a: &PartialAssignment) -> Result<Ternary> {
        self.check_len(a.len())?;
        let mut values: Vec<Ternary> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(lit) => lit.eval(a),
                Node::And(c) => Ternary::all(c.iter().map(|&i| values[i])),
                Node::Or(c) => Ternary::any(c.iter().map(|&i| values[i])),
                Node::Not(c) => !values[*c],
            };
            values.push(v);
        }
        Ok(values[self.output])
    }

    /// Ordinary Boolean evaluation.
    pub fn eval_bool(&self, bits: &[bool]) -> Result<bool> {
        self.check_len(bits.len())?;
        let mut values: Vec<bool> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Input(lit) => bits[lit.var] != lit.negated,
                Node::And(c) => c.iter().all(|&i| values[i]),
                Node::Or(c) => c.iter().any(|&i| values[i]),
                Node::Not(c) => !values[*c],
            };
            values.push(v);
        }
        Ok(values[self.output])
    }

    /// Maximum number of AND/OR gates on an input-to-output path. NOT
    /// gates do not count.
    pub fn depth(&self) -> usize {
        let mut depth: Vec<usize> = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let d = match node {
                Node::Input(_) => 0,
                Node::Not(c) => depth[*c],
                Node::And(c) | Node::Or(c) => 1 + c.iter().map(|&i| depth[i]).max().unwrap_or(0),
            };
            depth.push(d);
        }
        depth[self.output]
    }

    /// Merges every AND gate feeding an AND parent (and OR feeding OR) into
    /// its parent, to a fixpoint. The ternary function is unchanged since
    /// both gate types are associative under three-valued semantics.
    pub fn collapse_adjacent_gates(&self) -> Result<Circuit> {
        if !self.is_formula {
            return Err(Error::NotAFormula);
        }
        let mut parent = alloc::vec![usize::MAX; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            for &c in node.children() {
                parent[c] = id;
            }
        }
        let same_kind = |a: &Node, b: &Node| {
            matches!(
                (a, b),
                (Node::And(_), Node::And(_)) | (Node::Or(_), Node::Or(_))
            )
        };
        let absorbed: Vec<bool> = (0..self.nodes.len())
            .map(|id| {
                parent[id] != usize::MAX && same_kind(&self.nodes[id], &self.nodes[parent[id]])
            })
            .collect();

        let mut new_index = alloc::vec![usize::MAX; self.nodes.len()];
        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (id, node) in self.nodes.iter().enumerate() {
            if absorbed[id] {
                continue;
            }
            let new_node = match node {
                Node::Input(l) => Node::Input(*l),
                Node::Not(c) => Node::Not(new_index[*c]),
                Node::And(c) | Node::Or(c) => {
                    let mut flat = Vec::with_capacity(c.len());
                    for &child in c {
                        self.expand_absorbed(child, &absorbed, &new_index, &mut flat);
                    }
                    if matches!(node, Node::And(_)) {
                        Node::And(flat)
                    } else {
                        Node::Or(flat)
                    }
                }
            };
            new_index[id] = nodes.len();
            nodes.push(new_node);
        }
        Circuit::new(self.num_vars, nodes, new_index[self.output])
    }

    fn expand_absorbed(
        &self,
        id: usize,
        absorbed: &[bool],
        new_index: &[usize],
        out: &mut Vec<usize>,
    ) {
        if absorbed[id] {
            for &c in self.nodes[id].children() {
                self.expand_absorbed(c, absorbed, new_index, out);
            }
        } else {
            out.push(new_index[id]);
        }
    }
}

/// Incremental construction of a [`Circuit`].
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    num_vars: usize,
    nodes: Vec<Node>,
}

impl CircuitBuilder {
    pub fn new(num_vars: usize) -> Self {
        CircuitBuilder {
            num_vars,
            nodes: Vec::new(),
        }
    }

    fn push(&mut self, node: Node) -> usize {
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn input(&mut self, lit: Literal) -> usize {
        self.push(Node::Input(lit))
    }

    pub fn and(&mut self, children: Vec<usize>) -> usize {
        self.push(Node::And(children))
    }

    pub fn or(&mut self, children: Vec<usize>) -> usize {
        self.push(Node::Or(children))
    }

    pub fn not(&mut self, child: usize) -> usize {
        self.push(Node::Not(child))
    }

    /// Copies every gate of `c` and returns the index of its output.
    pub fn append(&mut self, c: &Circuit) -> usize {
        let offset = self.nodes.len();
        for node in &c.nodes {
            let shifted = match node {
                Node::Input(l) => Node::Input(*l),
                Node::And(ch) => Node::And(ch.iter().map(|i| i + offset).collect()),
                Node::Or(ch) => Node::Or(ch.iter().map(|i| i + offset).collect()),
                Node::Not(ch) => Node::Not(ch + offset),
            };
            self.nodes.push(shifted);
        }
        offset + c.output
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn finish(self, output: usize) -> Result<Circuit> {
        Circuit::new(self.num_vars, self.nodes, output)
    }
}

/// Bit-parallel three-valued evaluation of 64 inputs at a time.
///
/// Each signal is a dual-rail pair `(can_be_0, can_be_1)` of lane masks:
/// a stable 0 is `(1, 0)`, a stable 1 is `(0, 1)` and `U` is `(1, 1)`.
/// Under this encoding AND and OR reduce to word operations.
#[derive(Clone, Debug)]
pub struct LaneEvaluator<'c> {
    circuit: &'c Circuit,
    scratch: Vec<(u64, u64)>,
}

impl<'c> LaneEvaluator<'c> {
    pub fn new(circuit: &'c Circuit) -> Self {
        LaneEvaluator {
            circuit,
            scratch: Vec::with_capacity(circuit.nodes.len()),
        }
    }

    /// `inputs[v]` is the dual-rail pair of variable `v`. Returns the
    /// dual-rail pair of the output.
    pub fn eval(&mut self, inputs: &[(u64, u64)]) -> (u64, u64) {
        let values = &mut self.scratch;
        values.clear();
        for node in &self.circuit.nodes {
            let v = match node {
                Node::Input(lit) => {
                    let (z, o) = inputs[lit.var];
                    if lit.negated {
                        (o, z)
                    } else {
                        (z, o)
                    }
                }
                Node::And(c) => c.iter().fold((0, u64::MAX), |(z, o), &i| {
                    (z | values[i].0, o & values[i].1)
                }),
                Node::Or(c) => c.iter().fold((u64::MAX, 0), |(z, o), &i| {
                    (z & values[i].0, o | values[i].1)
                }),
                Node::Not(c) => (values[*c].1, values[*c].0),
            };
            values.push(v);
        }
        values[self.circuit.output]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::DnfFormula;

    fn example_f() -> Circuit {
        "(x1&x2)|(!x1&x2)|(!x1&!x2)"
            .parse::<DnfFormula>()
            .unwrap()
            .to_circuit()
    }

    fn pa(s: &str) -> PartialAssignment {
        s.parse().unwrap()
    }

    #[test]
    fn and_gate_absorbs_unstable() {
        let mut b = CircuitBuilder::new(2);
        let x1 = b.input(Literal::pos(0));
        let x2 = b.input(Literal::pos(1));
        let g = b.and(alloc::vec![x1, x2]);
        let c = b.finish(g).unwrap();
        assert_eq!(c.eval_ternary(&pa("0u")).unwrap(), Ternary::Zero);
        assert_eq!(c.eval_ternary(&pa("1u")).unwrap(), Ternary::U);
    }

    #[test]
    fn example_formula_is_unstable_at_0u() {
        assert_eq!(example_f().eval_ternary(&pa("0u")).unwrap(), Ternary::U);
        assert_eq!(example_f().eval_ternary(&pa("00")).unwrap(), Ternary::One);
        assert_eq!(example_f().eval_ternary(&pa("10")).unwrap(), Ternary::Zero);
    }

    #[test]
    fn dimension_mismatch() {
        assert_eq!(
            example_f().eval_ternary(&pa("0")),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn depths() {
        assert_eq!(example_f().depth(), 2);
        let lit = Circuit::literal(1, Literal::pos(0)).unwrap();
        assert_eq!(lit.depth(), 0);
        assert!(lit.is_formula());
    }

    #[test]
    fn rejects_forward_edges() {
        let nodes = alloc::vec![Node::And(alloc::vec![1]), Node::Input(Literal::pos(0))];
        assert!(matches!(
            Circuit::new(1, nodes, 0),
            Err(Error::MalformedCircuit(_))
        ));
    }

    #[test]
    fn shared_gate_is_not_formula() {
        let mut b = CircuitBuilder::new(1);
        let x = b.input(Literal::pos(0));
        let g = b.and(alloc::vec![x, x]);
        let c = b.finish(g).unwrap();
        assert!(!c.is_formula());
        assert_eq!(c.collapse_adjacent_gates(), Err(Error::NotAFormula));
    }

    #[test]
    fn collapse_nested_and() {
        let mut b = CircuitBuilder::new(3);
        let a = b.input(Literal::pos(0));
        let bb = b.input(Literal::pos(1));
        let c = b.input(Literal::pos(2));
        let inner = b.and(alloc::vec![bb, c]);
        let outer = b.and(alloc::vec![a, inner]);
        let circuit = b.finish(outer).unwrap();
        let collapsed = circuit.collapse_adjacent_gates().unwrap();
        assert_eq!(collapsed.size(), 4);
        assert_eq!(
            collapsed.nodes()[collapsed.output()],
            Node::And(alloc::vec![0, 1, 2])
        );
        assert_eq!(collapsed.depth(), 1);
    }

    #[test]
    fn collapse_keeps_alternation() {
        // x1 | (x2 & (x3 | (x4 & x5)))
        let mut b = CircuitBuilder::new(5);
        let l: Vec<usize> = (0..5).map(|v| b.input(Literal::pos(v))).collect();
        let g1 = b.and(alloc::vec![l[3], l[4]]);
        let g2 = b.or(alloc::vec![l[2], g1]);
        let g3 = b.and(alloc::vec![l[1], g2]);
        let g4 = b.or(alloc::vec![l[0], g3]);
        let c = b.finish(g4).unwrap();
        assert_eq!(c.collapse_adjacent_gates().unwrap(), c);
    }

    #[test]
    fn lanes_agree_with_scalar() {
        let c = example_f();
        let mut ev = LaneEvaluator::new(&c);
        for idx in 0..9u64 {
            let a = PartialAssignment::from_index(2, idx);
            let inputs: Vec<(u64, u64)> = a
                .values()
                .iter()
                .map(|v| match v {
                    Ternary::U => (1, 1),
                    Ternary::Zero => (1, 0),
                    Ternary::One => (0, 1),
                })
                .collect();
            let (z, o) = ev.eval(&inputs);
            let expected = c.eval_ternary(&a).unwrap();
            let got = match (z & 1, o & 1) {
                (1, 1) => Ternary::U,
                (1, 0) => Ternary::Zero,
                (0, 1) => Ternary::One,
                _ => unreachable!(),
            };
            assert_eq!(got, expected, "{a}");
        }
    }
}
