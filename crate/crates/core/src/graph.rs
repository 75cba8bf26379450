//! Structural checks on the positivity pattern of a square matrix.
//!
//! A nonnegative matrix is irreducible exactly when the directed graph with
//! an edge `i -> j` for every positive entry `(i, j)` is strongly connected.

/// Strongly connected components of a graph given as adjacency lists.
///
/// Iterative Tarjan, so deep graphs do not blow the stack. Components come
/// out in reverse topological order of the condensation.
pub fn strongly_connected_components(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adjacency.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (node, position of the next neighbour to visit)
    let mut call_stack: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        call_stack.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call_stack.last_mut() {
            if let Some(&w) = adjacency[v].get(*pos) {
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call_stack.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }

            call_stack.pop();
            if let Some(&(parent, _)) = call_stack.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

/// Number of strongly connected components of the graph whose edge set is
/// `{(i, j) : edge(i, j)}` on `n` nodes.
pub fn component_count<F>(n: usize, edge: F) -> usize
where
    F: Fn(usize, usize) -> bool,
{
    let adjacency: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| edge(i, j)).collect())
        .collect();
    strongly_connected_components(&adjacency).len()
}

/// True iff every node reaches every other node along directed edges.
///
/// Rows of `pattern` are adjacency rows; a ragged pattern is treated as
/// missing edges. The empty graph is not irreducible.
pub fn is_irreducible(pattern: &[Vec<bool>]) -> bool {
    let n = pattern.len();
    n > 0 && component_count(n, |i, j| pattern[i].get(j).copied().unwrap_or(false)) == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Vec<Vec<bool>> {
        (0..n)
            .map(|i| (0..n).map(|j| j == (i + 1) % n).collect())
            .collect()
    }

    #[test]
    fn directed_ring_is_irreducible() {
        assert!(is_irreducible(&ring(5)));
    }

    #[test]
    fn path_without_return_is_reducible() {
        let path = vec![
            vec![false, true, false],
            vec![false, false, true],
            vec![false, false, false],
        ];
        assert!(!is_irreducible(&path));
    }

    #[test]
    fn complete_graph_without_loops() {
        let complete: Vec<Vec<bool>> = (0..4).map(|i| (0..4).map(|j| i != j).collect()).collect();
        assert!(is_irreducible(&complete));
    }

    #[test]
    fn two_disjoint_cycles() {
        let mut p = vec![vec![false; 4]; 4];
        p[0][1] = true;
        p[1][0] = true;
        p[2][3] = true;
        p[3][2] = true;
        assert!(!is_irreducible(&p));
        let adj: Vec<Vec<usize>> = p
            .iter()
            .map(|r| (0..4).filter(|&j| r[j]).collect())
            .collect();
        assert_eq!(strongly_connected_components(&adj).len(), 2);
    }

    #[test]
    fn long_ring_does_not_overflow() {
        let n = 200_000;
        let adj: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + 1) % n]).collect();
        assert_eq!(strongly_connected_components(&adj).len(), 1);
    }

    #[test]
    fn single_node_and_empty() {
        assert!(is_irreducible(&[vec![false]]));
        assert!(!is_irreducible(&[]));
    }
}
