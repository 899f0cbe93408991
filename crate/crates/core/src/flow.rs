//! Vertex-disjoint paths by unit-capacity max-flow with node splitting.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

struct Net {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Net {
    fn new(nodes: usize) -> Self {
        Net { head: vec![NIL; nodes], to: Vec::new(), cap: Vec::new(), next: Vec::new() }
    }

    fn arc(&mut self, a: usize, b: usize) {
        for (x, y, c) in [(a, b, 1), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![NIL; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            let mut e = self.head[x];
            while e != NIL {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    if y == t {
                        let mut z = t;
                        while z != s {
                            let a = via[z];
                            self.cap[a] -= 1;
                            self.cap[a ^ 1] += 1;
                            z = self.to[a ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
                e = self.next[e];
            }
        }
        false
    }
}

/// Finds `sources.len()` vertex-disjoint paths, each from a distinct source
/// to a distinct target, in the graph given by adjacency lists. Vertices
/// with `blocked[v]` set are unusable. Sources are only path starts and
/// targets only path ends. Returns `None` when fewer paths exist.
///
/// The output is deterministic: it depends only on the adjacency order.
pub fn disjoint_paths(
    adj: &[Vec<usize>],
    blocked: &[bool],
    sources: &[usize],
    targets: &[usize],
) -> Option<Vec<Vec<usize>>> {
    let n = adj.len();
    if sources.len() != targets.len() {
        return None;
    }
    let (s, t) = (2 * n, 2 * n + 1);
    let mut is_source = vec![false; n];
    let mut is_target = vec![false; n];
    for &x in sources {
        is_source[x] = true;
    }
    for &x in targets {
        is_target[x] = true;
    }
    let mut net = Net::new(2 * n + 2);
    for v in 0..n {
        if blocked[v] {
            continue;
        }
        net.arc(2 * v, 2 * v + 1);
        if is_target[v] {
            continue;
        }
        for &w in &adj[v] {
            if !blocked[w] && !is_source[w] {
                net.arc(2 * v + 1, 2 * w);
            }
        }
    }
    for &x in sources {
        net.arc(s, 2 * x);
    }
    for &x in targets {
        net.arc(2 * x + 1, t);
    }
    for _ in 0..sources.len() {
        if !net.augment(s, t) {
            return None;
        }
    }
    let mut paths = Vec::with_capacity(sources.len());
    for &x in sources {
        let mut path = vec![x];
        let mut v = x;
        while !is_target[v] {
            let mut e = net.head[2 * v + 1];
            let mut nxt = NIL;
            while e != NIL {
                // Forward arcs sit at even positions; a used one has no capacity left.
                if e.is_multiple_of(2) && net.cap[e] == 0 && net.to[e] < 2 * n {
                    nxt = net.to[e] / 2;
                    net.cap[e] = 1;
                    break;
                }
                e = net.next[e];
            }
            if nxt == NIL {
                return None;
            }
            path.push(nxt);
            v = nxt;
        }
        paths.push(path);
    }
    Some(paths)
}
