//! Directed-graph helpers: strongly connected components and reachability.

/// Strongly connected components by iterative Tarjan. Ids follow reverse
/// topological order, so an edge between components goes from a higher id
/// to a lower one.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> (usize, Vec<usize>) {
    let n = adj.len();
    const UNSEEN: usize = usize::MAX;
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0usize; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut count = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        while let Some(frame) = call.last_mut() {
            let v = frame.0;
            if frame.1 == 0 && index[v] == UNSEEN {
                index[v] = next_index;
                low[v] = next_index;
                next_index += 1;
                stack.push(v);
                on_stack[v] = true;
            }
            if let Some(&w) = adj[v].get(frame.1) {
                frame.1 += 1;
                if index[w] == UNSEEN {
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("scc stack underflow");
                    on_stack[w] = false;
                    comp[w] = count;
                    if w == v {
                        break;
                    }
                }
                count += 1;
            }
        }
    }
    (count, comp)
}

/// Vertices reachable from `src` by a path of length at least one.
pub fn reachable_from(adj: &[Vec<usize>], src: usize) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = adj[src].clone();
    while let Some(v) = stack.pop() {
        if !seen[v] {
            seen[v] = true;
            stack.extend(adj[v].iter().copied().filter(|&w| !seen[w]));
        }
    }
    seen
}

/// True iff the graph contains a directed cycle (self-loops included).
pub fn has_cycle(adj: &[Vec<usize>]) -> bool {
    let (count, _) = tarjan_scc(adj);
    count < adj.len() || adj.iter().enumerate().any(|(v, out)| out.contains(&v))
}
