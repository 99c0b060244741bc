//! Green's relations via strongly connected components of Cayley graphs.

use crate::relation::Partition;
use crate::semigroup::CayleyTable;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct GreenData {
    pub r: Partition,
    pub l: Partition,
    pub j: Partition,
    pub h: Partition,
    pub d: Partition,
}

impl GreenData {
    pub fn new(s: &CayleyTable) -> Self {
        let n = s.order();
        let r = scc(n, |a, out| out.extend((0..n).map(|x| s.mul(a, x))));
        let l = scc(n, |a, out| out.extend((0..n).map(|x| s.mul(x, a))));
        let j = scc(n, |a, out| {
            out.extend((0..n).map(|x| s.mul(a, x)));
            out.extend((0..n).map(|x| s.mul(x, a)));
        });
        let h = r.meet(&l);
        let d = r.join(&l);
        GreenData { r, l, j, h, d }
    }
}

/// Strongly connected components of the graph on `0..n` whose out-neighbours
/// are produced by `succ`. Iterative Tarjan.
pub fn scc(n: usize, succ: impl Fn(usize, &mut Vec<usize>)) -> Partition {
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = vec![];
    let mut comp = vec![UNSEEN; n];
    let mut next_index = 0;
    let mut ncomp = 0;
    // call frames: (vertex, successors, position)
    let mut frames: Vec<(usize, Vec<usize>, usize)> = vec![];
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        let mut buf = vec![];
        succ(root, &mut buf);
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, buf, 0));
        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.2 < frame.1.len() {
                let w = frame.1[frame.2];
                frame.2 += 1;
                if index[w] == UNSEEN {
                    let mut buf = vec![];
                    succ(w, &mut buf);
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, buf, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(parent) = frames.last() {
                    let p = parent.0;
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    Partition::from_labels(&comp)
}
