use std::collections::BTreeSet;

/// Bipartite graph between paths `U` (one equivalence class of stuck paths)
/// and candidate elements `V`, with an edge from a path to every element
/// that would advance it by one step.
#[derive(Debug, Clone)]
pub struct BipartiteDominationInstance {
    /// Caller's identifiers for the vertices of `U`.
    pub u: Vec<usize>,
    /// Candidate elements, ascending.
    pub v: Vec<u32>,
    /// For each vertex of `U`, indices into `v` of its neighbors.
    pub edges: Vec<Vec<usize>>,
}

impl BipartiteDominationInstance {
    /// Builds the graph from each `U` vertex's neighbor elements. Every
    /// vertex of `U` must have at least one neighbor.
    pub fn new(u: Vec<(usize, Vec<u32>)>) -> Self {
        let mut v: Vec<u32> = u.iter().flat_map(|(_, ns)| ns.iter().copied()).collect();
        v.sort_unstable();
        v.dedup();
        let mut ids = Vec::with_capacity(u.len());
        let mut edges = Vec::with_capacity(u.len());
        for (id, ns) in u {
            assert!(!ns.is_empty(), "path {id} has no candidate step");
            ids.push(id);
            edges.push(
                ns.iter()
                    .map(|x| v.binary_search(x).expect("collected above"))
                    .collect(),
            );
        }
        BipartiteDominationInstance { u: ids, v, edges }
    }

    /// A minimal subset of `V` dominating every vertex of `U`.
    ///
    /// Repeatedly takes a vertex of `V` that is the only remaining neighbor
    /// of some undominated `U` vertex (smallest element first); when there is
    /// none, deletes the remaining `V` vertex of smallest (degree, element).
    /// Every chosen vertex is the sole chosen neighbor of the `U` vertex that
    /// forced it, so no chosen vertex can be dropped.
    pub fn minimal_dominating_subset(&self) -> Vec<u32> {
        let nu = self.u.len();
        let nv = self.v.len();
        let mut by_v: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (u, ns) in self.edges.iter().enumerate() {
            for &v in ns {
                by_v[v].push(u);
            }
        }
        let mut u_deg: Vec<usize> = self.edges.iter().map(Vec::len).collect();
        let mut v_deg: Vec<usize> = by_v.iter().map(Vec::len).collect();
        let mut dominated = vec![false; nu];
        let mut alive = vec![true; nv];
        let mut undominated = nu;
        let mut forced: BTreeSet<usize> = BTreeSet::new();
        let mut by_degree: BTreeSet<(usize, usize)> = (0..nv).map(|v| (v_deg[v], v)).collect();
        for u in 0..nu {
            if u_deg[u] == 1 {
                forced.insert(self.edges[u][0]);
            }
        }

        let mut chosen = Vec::new();
        'outer: while undominated > 0 {
            while let Some(v) = forced.pop_first() {
                let still_forced = alive[v]
                    && by_v[v].iter().any(|&u| !dominated[u] && u_deg[u] == 1);
                if !still_forced {
                    continue;
                }
                chosen.push(self.v[v]);
                alive[v] = false;
                by_degree.remove(&(v_deg[v], v));
                for &u in &by_v[v] {
                    if dominated[u] {
                        continue;
                    }
                    dominated[u] = true;
                    undominated -= 1;
                    for &w in &self.edges[u] {
                        if alive[w] {
                            by_degree.remove(&(v_deg[w], w));
                            v_deg[w] -= 1;
                            by_degree.insert((v_deg[w], w));
                        }
                    }
                }
                continue 'outer;
            }
            let (_, v) = by_degree
                .pop_first()
                .expect("an undominated vertex always has a live neighbor");
            alive[v] = false;
            for &u in &by_v[v] {
                if dominated[u] {
                    continue;
                }
                u_deg[u] -= 1;
                if u_deg[u] == 1 {
                    let w = self.edges[u]
                        .iter()
                        .copied()
                        .find(|&w| alive[w])
                        .expect("degree counts live neighbors");
                    forced.insert(w);
                }
            }
        }
        chosen
    }
}
