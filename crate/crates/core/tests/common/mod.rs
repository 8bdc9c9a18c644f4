//! Reference oracles and random generators shared by the integration tests.
//!
//! The oracles work on plain integers (0 = false, 1 = unstable, 2 = true),
//! so ternary AND is `min`, OR is `max` and NOT is `2 - v`. They do not
//! touch the evaluation or scanning code of the crate.

#![allow(dead_code)]

use hazardkit_core::{
    BooleanFunction, Circuit, Connective, DnfFormula, Literal, Node, PartialAssignment, Term,
    Ternary,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub const F: u8 = 0;
pub const U: u8 = 1;
pub const T: u8 = 2;

pub fn to_level(v: Ternary) -> u8 {
    match v {
        Ternary::Zero => F,
        Ternary::U => U,
        Ternary::One => T,
    }
}

pub fn from_level(v: u8) -> Ternary {
    match v {
        F => Ternary::Zero,
        U => Ternary::U,
        _ => Ternary::One,
    }
}

/// Ternary value of every node, by min/max.
pub fn naive_eval(c: &Circuit, input: &[u8]) -> u8 {
    let mut vals: Vec<u8> = Vec::with_capacity(c.nodes().len());
    for node in c.nodes() {
        let v = match node {
            Node::Input(l) => {
                let x = input[l.var];
                if l.negated {
                    2 - x
                } else {
                    x
                }
            }
            Node::Not(i) => 2 - vals[*i],
            Node::And(ch) => ch.iter().map(|&i| vals[i]).min().unwrap_or(T),
            Node::Or(ch) => ch.iter().map(|&i| vals[i]).max().unwrap_or(F),
        };
        vals.push(v);
    }
    vals[c.output()]
}

/// All vectors in `{0,1,2}^n`.
pub fn all_inputs(n: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..3).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// All resolutions of an input, as Boolean vectors.
pub fn resolutions(input: &[u8]) -> Vec<Vec<bool>> {
    let free: Vec<usize> = (0..input.len()).filter(|&i| input[i] == U).collect();
    (0..1u64 << free.len())
        .map(|mask| {
            let mut bits: Vec<bool> = input.iter().map(|&x| x == T).collect();
            for (k, &p) in free.iter().enumerate() {
                bits[p] = mask >> k & 1 == 1;
            }
            bits
        })
        .collect()
}

fn bools_to_levels(bits: &[bool]) -> Vec<u8> {
    bits.iter().map(|&b| if b { T } else { F }).collect()
}

/// `Some(true)` for a 1-hazard, `Some(false)` for a 0-hazard.
pub fn naive_hazard(c: &Circuit, input: &[u8]) -> Option<bool> {
    if naive_eval(c, input) != U {
        return None;
    }
    let vals: Vec<u8> = resolutions(input)
        .iter()
        .map(|b| naive_eval(c, &bools_to_levels(b)))
        .collect();
    if vals.iter().all(|&v| v == T) {
        Some(true)
    } else if vals.iter().all(|&v| v == F) {
        Some(false)
    } else {
        None
    }
}

/// Every hazard of `c` as `(input, is_one_hazard)`.
pub fn naive_all_hazards(c: &Circuit) -> Vec<(Vec<u8>, bool)> {
    all_inputs(c.num_vars())
        .into_iter()
        .filter_map(|a| naive_hazard(c, &a).map(|k| (a, k)))
        .collect()
}

pub fn to_assignment(input: &[u8]) -> PartialAssignment {
    PartialAssignment::new(input.iter().map(|&v| from_level(v)).collect())
}

pub fn to_levels(a: &PartialAssignment) -> Vec<u8> {
    a.values().iter().map(|&v| to_level(v)).collect()
}

/// Minimal implicants by definition: every input whose resolutions all
/// give `value`, none of whose one-step generalizations do.
pub fn naive_minimal_implicants<B: BooleanFunction>(f: &B, value: bool) -> Vec<Vec<u8>> {
    let forced = |a: &[u8]| resolutions(a).iter().all(|b| f.eval(b) == value);
    all_inputs(f.num_vars())
        .into_iter()
        .filter(|a| {
            forced(a)
                && (0..a.len()).all(|i| {
                    if a[i] == U {
                        return true;
                    }
                    let mut g = a.clone();
                    g[i] = U;
                    !forced(&g)
                })
        })
        .collect()
}

pub fn random_literal(rng: &mut impl Rng, n: usize) -> Literal {
    Literal::new(rng.gen_range(0..n), rng.gen_bool(0.5))
}

/// A DNF with `1..=max_terms` terms of `1..=max_len` literals over `n`
/// variables. Terms may be contradictory when `allow_contradictory`.
pub fn random_dnf(
    rng: &mut impl Rng,
    n: usize,
    max_terms: usize,
    max_len: usize,
    allow_contradictory: bool,
) -> DnfFormula {
    let m = rng.gen_range(1..=max_terms);
    let terms = (0..m)
        .map(|_| loop {
            let len = rng.gen_range(1..=max_len.min(n).max(1));
            let lits: Vec<Literal> = (0..len).map(|_| random_literal(rng, n)).collect();
            let t = Term::new_unchecked(Connective::Conjunction, lits);
            if allow_contradictory || !t.is_contradictory() {
                break t;
            }
        })
        .collect();
    DnfFormula::new(n, terms).unwrap()
}

/// A random DAG circuit with `gates` AND/OR/NOT gates over a layer of
/// literal inputs. Gates may share children.
pub fn random_circuit(rng: &mut impl Rng, n: usize, gates: usize, monotone: bool) -> Circuit {
    let mut nodes = Vec::new();
    for v in 0..n {
        nodes.push(Node::Input(Literal::pos(v)));
        if !monotone {
            nodes.push(Node::Input(Literal::neg(v)));
        }
    }
    for _ in 0..gates {
        let avail = nodes.len();
        let pick = rng.gen_range(0..if monotone { 2 } else { 5 });
        let node = if pick == 4 {
            Node::Not(rng.gen_range(0..avail))
        } else {
            let k = rng.gen_range(1..=3.min(avail));
            let mut idx: Vec<usize> = (0..avail).collect();
            idx.shuffle(rng);
            // bias towards recent nodes so the circuit gets deep
            let mut ch: Vec<usize> = idx.into_iter().take(k).collect();
            if rng.gen_bool(0.7) {
                ch[0] = avail - 1;
            }
            ch.sort_unstable();
            ch.dedup();
            if pick % 2 == 0 {
                Node::And(ch)
            } else {
                Node::Or(ch)
            }
        };
        nodes.push(node);
    }
    let out = nodes.len() - 1;
    Circuit::new(n, nodes, out).unwrap()
}

/// A random tree-shaped circuit (a formula) of roughly `size` gates.
pub fn random_formula(rng: &mut impl Rng, n: usize, size: usize) -> Circuit {
    fn build(rng: &mut impl Rng, n: usize, budget: usize, nodes: &mut Vec<Node>) -> usize {
        if budget == 0 || rng.gen_bool(0.2) {
            nodes.push(Node::Input(random_literal(rng, n)));
            return nodes.len() - 1;
        }
        let k = rng.gen_range(1..=3);
        let share = (budget - 1) / k;
        let ch: Vec<usize> = (0..k).map(|_| build(rng, n, share, nodes)).collect();
        nodes.push(if rng.gen_bool(0.5) {
            Node::And(ch)
        } else {
            Node::Or(ch)
        });
        nodes.len() - 1
    }
    let mut nodes = Vec::new();
    let out = build(rng, n, size, &mut nodes);
    Circuit::new(n, nodes, out).unwrap()
}

/// A random truth table as row values, big-endian rows.
pub fn random_rows(rng: &mut impl Rng, n: usize) -> Vec<bool> {
    let p = rng.gen_range(0.1..0.9);
    (0..1usize << n).map(|_| rng.gen_bool(p)).collect()
}
