use alloc::vec;
use alloc::vec::Vec;

use crate::finring::{Elem, RingTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Add,
    Mul,
}

impl Operation {
    #[inline]
    pub(crate) fn apply(self, ring: &RingTable, x: Elem, y: Elem) -> Elem {
        match self {
            Operation::Add => ring.add(x, y),
            Operation::Mul => ring.mul(x, y),
        }
    }

    fn identity(self, ring: &RingTable) -> Elem {
        match self {
            Operation::Add => ring.zero(),
            Operation::Mul => ring.one(),
        }
    }
}

/// Generators of `(R, ·, 1)` or `(R, +, 0)` with one derivation word per
/// element. The identity has the empty word; every other element's word is
/// its parent's word followed by one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub op: Operation,
    pub gens: Vec<Elem>,
    pub words: Vec<Vec<Elem>>,
}

impl GeneratorSet {
    /// Evaluates a word starting from the identity.
    pub fn evaluate(&self, ring: &RingTable, word: &[Elem]) -> Elem {
        word.iter().fold(self.op.identity(ring), |acc, &g| self.op.apply(ring, acc, g))
    }
}

/// Greedy generating set: repeatedly adjoin the smallest element outside the
/// current closure.
pub fn greedy_generators(ring: &RingTable, op: Operation) -> GeneratorSet {
    let n = ring.size();
    let start = op.identity(ring);
    let mut words: Vec<Option<Vec<Elem>>> = vec![None; n];
    words[start as usize] = Some(Vec::new());
    let mut members = vec![start];
    let mut gens = Vec::new();
    let mut cursor = 0usize;

    loop {
        while cursor < n && words[cursor].is_some() {
            cursor += 1;
        }
        if cursor == n {
            break;
        }
        let g = cursor as Elem;
        gens.push(g);
        let mut queue = Vec::new();
        for &y in &members {
            let z = op.apply(ring, y, g);
            if words[z as usize].is_none() {
                let mut w = words[y as usize].clone().unwrap();
                w.push(g);
                words[z as usize] = Some(w);
                queue.push(z);
            }
        }
        let mut head = 0;
        while head < queue.len() {
            let y = queue[head];
            head += 1;
            for &h in &gens {
                let z = op.apply(ring, y, h);
                if words[z as usize].is_none() {
                    let mut w = words[y as usize].clone().unwrap();
                    w.push(h);
                    words[z as usize] = Some(w);
                    queue.push(z);
                }
            }
        }
        members.extend(queue);
    }
    GeneratorSet { op, gens, words: words.into_iter().map(|w| w.unwrap()).collect() }
}

/// Words for the closure of `gens` from the identity, breadth-first with
/// generators tried in the given order.
fn closure_words(ring: &RingTable, op: Operation, gens: &[Elem]) -> Vec<Option<Vec<Elem>>> {
    let mut words: Vec<Option<Vec<Elem>>> = vec![None; ring.size()];
    let start = op.identity(ring);
    words[start as usize] = Some(Vec::new());
    let mut queue = vec![start];
    let mut head = 0;
    while head < queue.len() {
        let y = queue[head];
        head += 1;
        for &g in gens {
            let z = op.apply(ring, y, g);
            if words[z as usize].is_none() {
                let mut w = words[y as usize].clone().unwrap();
                w.push(g);
                words[z as usize] = Some(w);
                queue.push(z);
            }
        }
    }
    words
}

/// The greedy set with redundant generators dropped, smallest first. The
/// result is irredundant but loses the greedy property that every element
/// is generated by smaller-index generators, which enumeration relies on.
pub fn irredundant_generators(ring: &RingTable, op: Operation) -> GeneratorSet {
    let mut gens = greedy_generators(ring, op).gens;
    let mut i = 0;
    while i < gens.len() {
        let mut rest = gens.clone();
        rest.remove(i);
        if closure_words(ring, op, &rest).iter().all(Option::is_some) {
            gens = rest;
        } else {
            i += 1;
        }
    }
    let words = closure_words(ring, op, &gens).into_iter().map(Option::unwrap).collect();
    GeneratorSet { op, gens, words }
}

/// Greedy generators of the multiplicative monoid `(R, ·, 1)`.
pub fn monoid_generators(ring: &RingTable) -> GeneratorSet {
    greedy_generators(ring, Operation::Mul)
}
