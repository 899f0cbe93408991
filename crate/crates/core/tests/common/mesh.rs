use upg_core::mesh::Mesh;

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in start..n {
            cur.push(x);
            go(x + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every order-reversing injection of size `k` from c1 into c2: ascending
/// c1 indices go to cyclically ascending c2 indices.
pub fn reversing_injections(mesh: &Mesh, k: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    for dom in subsets(mesh.m, k) {
        for img in subsets(mesh.n, k) {
            for r in 0..k {
                out.push((0..k).map(|t| (mesh.a(dom[t]), mesh.b(img[(t + r) % k]))).collect());
            }
        }
    }
    out
}
