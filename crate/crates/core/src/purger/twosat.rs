//! 2-SAT by strongly connected components of the implication graph.

/// Literal over boolean variable `var`; `positive == false` is its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Self {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Self {
        Lit { var, positive: false }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn negate(self) -> Self {
        Lit {
            var: self.var,
            positive: !self.positive,
        }
    }
}

#[derive(Clone, Debug)]
pub struct TwoSat {
    num_vars: usize,
    implications: Vec<Vec<usize>>,
}

impl TwoSat {
    pub fn new(num_vars: usize) -> Self {
        TwoSat {
            num_vars,
            implications: vec![Vec::new(); 2 * num_vars],
        }
    }

    /// Adds the clause `a ∨ b` as the implications `¬a → b` and `¬b → a`.
    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        self.implications[a.negate().node()].push(b.node());
        self.implications[b.negate().node()].push(a.node());
    }

    pub fn add_unit(&mut self, a: Lit) {
        self.add_clause(a, a);
    }

    /// A satisfying assignment, or `None` when some variable shares a
    /// component with its negation.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let comp = self.components();
        (0..self.num_vars)
            .map(|v| {
                let (t, f) = (comp[2 * v], comp[2 * v + 1]);
                // Tarjan numbers components in reverse topological order.
                (t != f).then_some(t < f)
            })
            .collect()
    }

    /// Iterative Tarjan; returns the component id of every node.
    fn components(&self) -> Vec<usize> {
        const UNSEEN: usize = usize::MAX;
        let n = self.implications.len();
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![UNSEEN; n];
        let mut stack = Vec::new();
        let mut call: Vec<(usize, usize)> = Vec::new();
        let mut next_index = 0;
        let mut next_comp = 0;

        for root in 0..n {
            if index[root] != UNSEEN {
                continue;
            }
            call.push((root, 0));
            while let Some(&(u, edge)) = call.last() {
                if edge == 0 && index[u] == UNSEEN {
                    index[u] = next_index;
                    low[u] = next_index;
                    next_index += 1;
                    stack.push(u);
                    on_stack[u] = true;
                }
                if let Some(&w) = self.implications[u].get(edge) {
                    call.last_mut().expect("frame").1 += 1;
                    if index[w] == UNSEEN {
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[u] = low[u].min(index[w]);
                    }
                    continue;
                }
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[u]);
                }
                if low[u] == index[u] {
                    loop {
                        let w = stack.pop().expect("component root on stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == u {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
        comp
    }
}
