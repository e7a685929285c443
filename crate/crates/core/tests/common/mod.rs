//! Brute-force oracles and instance generators shared by the integration tests.
//! Nothing here calls the solvers under test.
#![allow(dead_code)]

use std::collections::HashSet;

use gapforge::codes::Code;
use gapforge::frontends::{Cnf3, PartitionedGraph};
use gapforge::maxcover::{MaxCoverGraph, MaxCoverInstance, Vertex};
use gapforge::Rational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Base-`q` digits of `rank`, most significant first.
pub fn digits(mut rank: usize, q: usize, len: usize) -> Vec<usize> {
    let mut d = vec![0; len];
    for slot in d.iter_mut().rev() {
        *slot = rank % q;
        rank /= q;
    }
    d
}

/// All evaluations of polynomials of degree `< r` over GF(q) at `0..q`.
pub fn rs_words(q: usize, r: usize) -> Vec<Vec<u32>> {
    (0..q.pow(r as u32))
        .map(|m| {
            let coeffs = digits(m, q, r);
            (0..q)
                .map(|x| coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c) % q) as u32)
                .collect()
        })
        .collect()
}

pub fn words(code: &Code) -> Vec<Vec<u32>> {
    (0..code.len()).map(|m| code.codeword(m).to_vec()).collect()
}

/// Minimum number of coordinates on which two distinct words differ.
pub fn min_disagreements(words: &[Vec<u32>]) -> Option<usize> {
    let mut best = None;
    for a in 0..words.len() {
        for b in a + 1..words.len() {
            let d = words[a]
                .iter()
                .zip(&words[b])
                .filter(|(x, y)| x != y)
                .count();
            best = Some(best.map_or(d, |m: usize| m.min(d)));
        }
    }
    best
}

fn collides_everywhere(words: &[Vec<u32>], subset: &[usize]) -> bool {
    let ell = words[0].len();
    (0..ell).all(|i| {
        let mut seen = HashSet::new();
        subset.iter().any(|&m| !seen.insert(words[m][i]))
    })
}

/// Smallest subset colliding on every coordinate, by plain subset enumeration.
pub fn brute_col(words: &[Vec<u32>], max_size: usize) -> Option<(usize, Vec<usize>)> {
    let n = words.len();
    for size in 2..=max_size.min(n) {
        let mut found = None;
        for_each_subset(n, size, &mut |s| {
            if found.is_none() && collides_everywhere(words, s) {
                found = Some(s.to_vec());
            }
        });
        if let Some(s) = found {
            return Some((size, s));
        }
    }
    None
}

/// Calls `f` on every `size`-subset of `0..n` in lexicographic order.
pub fn for_each_subset(n: usize, size: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == size {
            f(cur);
            return;
        }
        for x in start..n {
            if n - x < size - cur.len() {
                break;
            }
            cur.push(x);
            go(x + 1, n, size, cur, f);
            cur.pop();
        }
    }
    go(0, n, size, &mut Vec::new(), f);
}

/// Calls `f` on every point of `radices[0] × radices[1] × …`.
pub fn for_each_tuple(radices: &[usize], f: &mut dyn FnMut(&[usize])) {
    if radices.contains(&0) {
        return;
    }
    let mut cur = vec![0; radices.len()];
    loop {
        f(&cur);
        let mut p = radices.len();
        loop {
            if p == 0 {
                return;
            }
            p -= 1;
            cur[p] += 1;
            if cur[p] < radices[p] {
                break;
            }
            cur[p] = 0;
        }
    }
}

/// MaxCover value from the adjacency predicate alone.
pub fn brute_value<G: MaxCoverGraph + ?Sized>(g: &G) -> Rational {
    let mut best = 0;
    for_each_tuple(g.v_parts(), &mut |labeling| {
        let covered = (0..g.t())
            .filter(|&j| {
                (0..g.w_parts()[j]).any(|w| {
                    labeling
                        .iter()
                        .enumerate()
                        .all(|(i, &v)| g.adjacent(Vertex::new(i, v), Vertex::new(j, w)))
                })
            })
            .count();
        best = best.max(covered);
    });
    Rational::new(best as i64, g.t() as i64)
}

/// Composition rule read off the definition: `v` is adjacent to tuple `a` of
/// coordinate `l` iff some choice of neighbors `w_1 ∈ W_1, …, w_t ∈ W_t` of `v`
/// has every matched codeword `C(m_j)` equal to `a_j` at `l`.
pub fn composed_adjacent(
    g0: &MaxCoverInstance,
    code: &Code,
    matching: &[Vec<usize>],
    v: Vertex,
    l: usize,
    a: usize,
) -> bool {
    let t = g0.t();
    let tuple = digits(a, code.q() as usize, t);
    let nbrs: Vec<Vec<usize>> = (0..t)
        .map(|j| {
            (0..g0.w_parts()[j])
                .filter(|&w| g0.adjacent(v, Vertex::new(j, w)))
                .collect()
        })
        .collect();
    let radices: Vec<usize> = nbrs.iter().map(Vec::len).collect();
    let mut hit = false;
    for_each_tuple(&radices, &mut |choice| {
        if !hit {
            hit = (0..t)
                .all(|j| code.symbol(matching[j][nbrs[j][choice[j]]], l) as usize == tuple[j]);
        }
    });
    hit
}

/// Random instance where each `(V_i, W_j)` pair is either complete or a
/// function, optionally with a planted labeling covering everything.
pub fn random_pseudo_projection(
    r: &mut ChaCha8Rng,
    k: usize,
    t: usize,
    max_part: usize,
    plant: bool,
) -> MaxCoverInstance {
    let v_parts: Vec<usize> = (0..k).map(|_| r.gen_range(1..=max_part)).collect();
    let w_parts: Vec<usize> = (0..t).map(|_| r.gen_range(1..=max_part)).collect();
    let planted_v: Vec<usize> = v_parts.iter().map(|&s| r.gen_range(0..s)).collect();
    let planted_w: Vec<usize> = w_parts.iter().map(|&s| r.gen_range(0..s)).collect();
    let full: Vec<Vec<bool>> = (0..k)
        .map(|_| (0..t).map(|_| r.gen_bool(0.3)).collect())
        .collect();
    let image: Vec<Vec<Vec<usize>>> = (0..k)
        .map(|i| {
            (0..t)
                .map(|j| {
                    (0..v_parts[i])
                        .map(|v| {
                            if plant && v == planted_v[i] {
                                planted_w[j]
                            } else {
                                r.gen_range(0..w_parts[j])
                            }
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    MaxCoverInstance::from_fn(v_parts, w_parts, "random pseudo-projection", |v, w| {
        full[v.part][w.part] || image[v.part][w.part][v.index] == w.index
    })
    .unwrap()
}

/// Two left parts, every vertex with between 1 and `d` neighbors in each right part.
pub fn random_degree_bounded(
    r: &mut ChaCha8Rng,
    t: usize,
    max_part: usize,
    d: usize,
    plant: bool,
) -> MaxCoverInstance {
    let v_parts: Vec<usize> = (0..2).map(|_| r.gen_range(1..=max_part)).collect();
    let w_parts: Vec<usize> = (0..t).map(|_| r.gen_range(1..=max_part)).collect();
    let planted_v: Vec<usize> = v_parts.iter().map(|&s| r.gen_range(0..s)).collect();
    let planted_w: Vec<usize> = w_parts.iter().map(|&s| r.gen_range(0..s)).collect();
    let mut nbrs: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
    for (i, &vs) in v_parts.iter().enumerate() {
        let mut part = Vec::new();
        for v in 0..vs {
            let mut per_j = Vec::new();
            for (j, &ws) in w_parts.iter().enumerate() {
                let mut all: Vec<usize> = (0..ws).collect();
                all.shuffle(r);
                let deg = r.gen_range(1..=d.min(ws));
                let mut chosen: Vec<usize> = all[..deg].to_vec();
                if plant && v == planted_v[i] && !chosen.contains(&planted_w[j]) {
                    chosen[0] = planted_w[j];
                }
                per_j.push(chosen);
            }
            part.push(per_j);
        }
        nbrs.push(part);
    }
    MaxCoverInstance::from_fn(v_parts, w_parts, "random degree-bounded", |v, w| {
        nbrs[v.part][v.index][w.part].contains(&w.index)
    })
    .unwrap()
}

/// Smallest number of sets whose union is `0..universe`, trying sizes up to `cap`.
pub fn brute_min_cover(universe: usize, sets: &[Vec<usize>], cap: usize) -> Option<usize> {
    for size in 0..=cap.min(sets.len()) {
        let mut ok = false;
        for_each_subset(sets.len(), size, &mut |s| {
            if !ok {
                let mut seen = vec![false; universe];
                for &x in s {
                    for &e in &sets[x] {
                        seen[e] = true;
                    }
                }
                ok = seen.iter().all(|&b| b);
            }
        });
        if ok {
            return Some(size);
        }
    }
    None
}

/// Membership in a composed set: `(i, f)` lies in the set built from base set
/// `S` of collection `j` (matched to message `m`) iff some tuple `a` with
/// `a_j = C(m)_i` has `f(a) ∈ S`.
pub fn composed_member(
    code: &Code,
    k: usize,
    base_set: &[usize],
    j: usize,
    m: usize,
    i: usize,
    f: &[usize],
) -> bool {
    let q = code.q() as usize;
    (0..q.pow(k as u32))
        .any(|a| digits(a, q, k)[j] == code.symbol(m, i) as usize && base_set.contains(&f[a]))
}

pub fn has_colorful_clique(h: &PartitionedGraph) -> bool {
    let parts: Vec<Vec<usize>> = (0..h.t()).map(|i| h.part(i)).collect();
    let radices: Vec<usize> = parts.iter().map(Vec::len).collect();
    let mut found = false;
    for_each_tuple(&radices, &mut |pick| {
        if !found {
            let vs: Vec<usize> = pick.iter().enumerate().map(|(i, &x)| parts[i][x]).collect();
            found =
                (0..vs.len()).all(|a| (a + 1..vs.len()).all(|b| h.graph().has_edge(vs[a], vs[b])));
        }
    });
    found
}

pub fn brute_sat(phi: &Cnf3) -> bool {
    (0..1usize << phi.vars()).any(|bits| {
        let a: Vec<bool> = (0..phi.vars()).map(|x| bits >> x & 1 == 1).collect();
        phi.satisfied_by(&a)
    })
}

/// Random formula on `n` variables, each used 1 to 3 times, clauses of width 1 to 3.
pub fn random_cnf3(r: &mut ChaCha8Rng, n: usize) -> Cnf3 {
    let mut slots: Vec<usize> = (1..=n)
        .flat_map(|x| std::iter::repeat_n(x, r.gen_range(1..=3)))
        .collect();
    slots.shuffle(r);
    let mut clauses = Vec::new();
    let mut rest = &slots[..];
    while !rest.is_empty() {
        let w = r.gen_range(1..=3).min(rest.len());
        let (head, tail) = rest.split_at(w);
        clauses.push(
            head.iter()
                .map(|&x| {
                    if r.gen_bool(0.5) {
                        x as i64
                    } else {
                        -(x as i64)
                    }
                })
                .collect(),
        );
        rest = tail;
    }
    Cnf3::new(n, clauses).unwrap()
}
