//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use cayley2dt::{Graph, GroupElement, GroupParams};

pub type Mat = [[u64; 3]; 3];

pub fn mat_mul(p: u64, x: &Mat, y: &Mat) -> Mat {
    let mut out = [[0u64; 3]; 3];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| x[r][k] * y[k][c]).sum::<u64>() % p;
        }
    }
    out
}

fn unit(p: u64, r: usize, c: usize, e: u64) -> Mat {
    let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    m[r][c] = e % p;
    m
}

/// `a ↦ E₁₂`, `b ↦ E₂₃`, `c ↦ E₁₃` in the unitriangular group mod p;
/// the normal form `a^i b^j c^k` is the product of the three powers.
pub fn to_matrix(params: &GroupParams, g: GroupElement) -> Mat {
    let p = params.p() as u64;
    let m = mat_mul(p, &unit(p, 0, 1, g.i as u64), &unit(p, 1, 2, g.j as u64));
    mat_mul(p, &m, &unit(p, 0, 2, g.k as u64))
}

pub fn from_matrix(params: &GroupParams, m: &Mat) -> GroupElement {
    let p = params.p() as u64;
    let (i, j) = (m[0][1], m[1][2]);
    let k = (m[0][2] + p * p - i * j % p) % p;
    GroupElement::new(i as u32, j as u32, k as u32)
}

/// Product computed through matrices.
pub fn oracle_multiply(params: &GroupParams, x: GroupElement, y: GroupElement) -> GroupElement {
    let p = params.p() as u64;
    from_matrix(
        params,
        &mat_mul(p, &to_matrix(params, x), &to_matrix(params, y)),
    )
}

/// Product of a word in `a`, `b`, `c` with integer exponents.
pub fn oracle_word(params: &GroupParams, word: &[(char, i64)]) -> GroupElement {
    let p = params.p() as i64;
    let mut m = to_matrix(params, GroupElement::IDENTITY);
    for &(sym, e) in word {
        let e = e.rem_euclid(p) as u64;
        let g = match sym {
            'a' => GroupElement::new(1, 0, 0),
            'b' => GroupElement::new(0, 1, 0),
            'c' => GroupElement::new(0, 0, 1),
            _ => panic!("unknown generator {sym}"),
        };
        for _ in 0..e {
            m = mat_mul(params.p() as u64, &m, &to_matrix(params, g));
        }
    }
    from_matrix(params, &m)
}

/// Plain BFS distances.
pub fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.n()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &w in g.neighbors(u) {
            let w = w as usize;
            if d[w] == usize::MAX {
                d[w] = d[u] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Number of s-arcs by dynamic programming over (previous, current) pairs.
pub fn count_s_arcs(g: &Graph, s: usize) -> u64 {
    if s == 0 {
        return g.n() as u64;
    }
    // ways[(u, v)] = number of walks ending in arc u→v without backtracking
    let arcs: Vec<(usize, usize)> = (0..g.n())
        .flat_map(|u| g.neighbors(u).iter().map(move |&v| (u, v as usize)))
        .collect();
    let idx = |u: usize, v: usize| arcs.binary_search(&(u, v)).unwrap();
    let mut ways = vec![1u64; arcs.len()];
    for _ in 1..s {
        let mut next = vec![0u64; arcs.len()];
        for (ai, &(u, v)) in arcs.iter().enumerate() {
            for &w in g.neighbors(v) {
                let w = w as usize;
                if w != u {
                    next[idx(v, w)] += ways[ai];
                }
            }
        }
        ways = next;
    }
    ways.iter().sum()
}

/// Every subgroup of G of order p², by closing all pairs of elements.
pub fn subgroups_of_order_p2(params: &GroupParams) -> BTreeSet<BTreeSet<GroupElement>> {
    let elems: Vec<GroupElement> = params.elements().collect();
    let target = (params.p() as usize).pow(2);
    let mut out = BTreeSet::new();
    for (xi, &x) in elems.iter().enumerate() {
        for &y in &elems[xi + 1..] {
            if out
                .iter()
                .any(|h: &BTreeSet<GroupElement>| h.contains(&x) && h.contains(&y))
            {
                continue;
            }
            let mut h = BTreeSet::from([GroupElement::IDENTITY]);
            let mut frontier = vec![GroupElement::IDENTITY];
            while let Some(z) = frontier.pop() {
                for g in [x, y] {
                    let w = oracle_multiply(params, z, g);
                    if h.insert(w) {
                        frontier.push(w);
                    }
                }
                if h.len() > target {
                    break;
                }
            }
            if h.len() == target {
                out.insert(h);
            }
        }
    }
    out
}

pub fn p7_aut_enabled() -> bool {
    std::env::var("CAYLEY2DT_P7_AUT").is_ok_and(|v| v == "1")
}
