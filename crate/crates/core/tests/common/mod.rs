//! Brute-force oracles written against definitions only.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use latcon::{Congruence, FiniteLattice};

/// A partition as a restricted growth string.
pub type Labels = Vec<usize>;

pub fn normalize<K: Ord + Clone>(keys: &[K]) -> Labels {
    let mut seen = BTreeMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len();
            *seen.entry(k.clone()).or_insert(next)
        })
        .collect()
}

pub fn labels_of(c: &Congruence) -> Labels {
    let n = c.partition().len();
    normalize(&(0..n).map(|a| c.partition().rep_of(a)).collect::<Vec<_>>())
}

pub fn discrete(n: usize) -> Labels {
    (0..n).collect()
}

pub fn full(n: usize) -> Labels {
    vec![0; n]
}

pub fn classes(p: &Labels) -> usize {
    p.iter().copied().collect::<BTreeSet<_>>().len()
}

pub fn refines(p: &Labels, q: &Labels) -> bool {
    (0..p.len()).all(|a| (0..p.len()).all(|b| p[a] != p[b] || q[a] == q[b]))
}

pub fn intersect(p: &Labels, q: &Labels) -> Labels {
    normalize(&p.iter().zip(q).map(|(a, b)| (*a, *b)).collect::<Vec<_>>())
}

/// Partition from `{a,b},{c}` text over lattice labels.
pub fn blocks(l: &FiniteLattice, text: &str) -> Labels {
    let mut keys = vec![usize::MAX; l.len()];
    let inner = text.trim().trim_start_matches('{').trim_end_matches('}');
    for (i, block) in inner.split("},{").enumerate() {
        for name in block.split(',') {
            keys[l.index_of(name.trim()).unwrap_or_else(|| panic!("no label {name}"))] = i;
        }
    }
    assert!(keys.iter().all(|&k| k != usize::MAX), "{text} does not cover the lattice");
    normalize(&keys)
}

/// Every partition of `0..n`.
pub fn partitions(n: usize) -> Vec<Labels> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn go(n: usize, cur: &mut Vec<usize>, out: &mut Vec<Labels>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let next = cur.iter().max().map_or(0, |m| m + 1);
        for v in 0..=next {
            cur.push(v);
            go(n, cur, out);
            cur.pop();
        }
    }
    go(n, &mut cur, &mut out);
    out
}

pub fn is_congruence(l: &FiniteLattice, p: &Labels) -> bool {
    let n = l.len();
    for a in 0..n {
        for b in 0..n {
            if p[a] != p[b] {
                continue;
            }
            for c in 0..n {
                if p[l.meet(a, c)] != p[l.meet(b, c)] || p[l.join(a, c)] != p[l.join(b, c)] {
                    return false;
                }
            }
        }
    }
    true
}

/// `Con(L)` by filtering all partitions.
pub fn con_brute(l: &FiniteLattice) -> BTreeSet<Labels> {
    partitions(l.len()).into_iter().filter(|p| is_congruence(l, p)).collect()
}

/// Least equivalence containing `pairs`.
fn equivalence(n: usize, pairs: &[(usize, usize)]) -> Labels {
    let mut lab: Vec<usize> = (0..n).collect();
    for &(a, b) in pairs {
        let (x, y) = (lab[a], lab[b]);
        if x != y {
            for v in lab.iter_mut() {
                if *v == y {
                    *v = x;
                }
            }
        }
    }
    normalize(&lab)
}

/// `Cg(a, b)` by saturating under translations until stable.
pub fn principal(l: &FiniteLattice, a: usize, b: usize) -> Labels {
    let n = l.len();
    let mut p = equivalence(n, &[(a, b)]);
    loop {
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x < y && p[x] == p[y] {
                    pairs.push((x, y));
                    for c in 0..n {
                        pairs.push((l.meet(x, c), l.meet(y, c)));
                        pairs.push((l.join(x, c), l.join(y, c)));
                    }
                }
            }
        }
        let next = equivalence(n, &pairs);
        if next == p || pairs.is_empty() {
            return p;
        }
        p = next;
    }
}

pub fn join(p: &Labels, q: &Labels) -> Labels {
    let n = p.len();
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if p[a] == p[b] || q[a] == q[b] {
                pairs.push((a, b));
            }
        }
    }
    equivalence(n, &pairs)
}

/// `Con(L)` as the join-closure of the principal congruences.
pub fn con_closure(l: &FiniteLattice) -> BTreeSet<Labels> {
    let n = l.len();
    let principals: BTreeSet<Labels> =
        (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| principal(l, a, b)).collect();
    let mut all: BTreeSet<Labels> = principals.clone();
    all.insert(discrete(n));
    let mut frontier: Vec<Labels> = all.iter().cloned().collect();
    while let Some(p) = frontier.pop() {
        for q in &principals {
            let j = join(&p, q);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    all
}

/// Oracle for `Con(L)`: brute force up to 8 elements, closure above.
pub fn con(l: &FiniteLattice) -> BTreeSet<Labels> {
    if l.len() <= 8 {
        con_brute(l)
    } else {
        con_closure(l)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectra {
    pub con: BTreeSet<Labels>,
    pub spec: BTreeSet<Labels>,
    pub max: BTreeSet<Labels>,
    pub con2: BTreeSet<Labels>,
}

/// Prime: proper and `α ∩ β ⊆ θ` forces `α ⊆ θ` or `β ⊆ θ`.
/// Maximal: a coatom of `Con`. Two-class: exactly two blocks.
pub fn spectra_of(con: BTreeSet<Labels>) -> Spectra {
    let n = con.iter().next().map_or(0, Vec::len);
    let nabla = full(n);
    let proper: Vec<&Labels> = con.iter().filter(|t| **t != nabla).collect();
    let spec = proper
        .iter()
        .filter(|&&t| {
            con.iter().all(|a| con.iter().all(|b| !refines(&intersect(a, b), t) || refines(a, t) || refines(b, t)))
        })
        .map(|t| (*t).clone())
        .collect();
    let max = proper
        .iter()
        .filter(|&&t| proper.iter().all(|g| g == &t || !refines(t, g)))
        .map(|t| (*t).clone())
        .collect();
    let con2 = con.iter().filter(|t| classes(t) == 2).cloned().collect();
    Spectra { con, spec, max, con2 }
}

pub fn spectra(l: &FiniteLattice) -> Spectra {
    spectra_of(con(l))
}

/// `Con` ordered by refinement is a Boolean lattice: distributive and complemented.
pub fn is_boolean(con: &BTreeSet<Labels>) -> bool {
    let items: Vec<&Labels> = con.iter().collect();
    let k = items.len();
    let n = items[0].len();
    let le: Vec<Vec<bool>> = items.iter().map(|a| items.iter().map(|b| refines(a, b)).collect()).collect();
    let lub: Vec<Vec<usize>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| {
                    (0..k)
                        .filter(|&c| le[a][c] && le[b][c])
                        .find(|&c| (0..k).all(|d| !(le[a][d] && le[b][d]) || le[c][d]))
                        .expect("join exists")
                })
                .collect()
        })
        .collect();
    let index = |p: &Labels| items.iter().position(|c| *c == p).expect("closed under intersection");
    let glb: Vec<Vec<usize>> = (0..k).map(|a| (0..k).map(|b| index(&intersect(items[a], items[b]))).collect()).collect();
    let (bottom, top) = (index(&discrete(n)), index(&full(n)));
    let distributive =
        (0..k).all(|a| (0..k).all(|b| (0..k).all(|c| glb[a][lub[b][c]] == lub[glb[a][b]][glb[a][c]])));
    let complemented = (0..k).all(|a| (0..k).any(|b| glb[a][b] == bottom && lub[a][b] == top));
    distributive && complemented
}

pub fn is_distributive(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| l.meet(a, l.join(b, c)) == l.join(l.meet(a, b), l.meet(a, c)))))
}

pub fn is_modular(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|a| {
        (0..n).all(|b| (0..n).all(|c| !l.leq(a, c) || l.join(a, l.meet(b, c)) == l.meet(l.join(a, b), c)))
    })
}

pub fn is_morphism(a: &FiniteLattice, b: &FiniteLattice, f: &[usize]) -> bool {
    (0..a.len()).all(|x| {
        (0..a.len()).all(|y| f[a.meet(x, y)] == b.meet(f[x], f[y]) && f[a.join(x, y)] == b.join(f[x], f[y]))
    })
}

/// Every lattice morphism `a → b`, by trying all maps.
pub fn morphisms(a: &FiniteLattice, b: &FiniteLattice) -> Vec<Vec<usize>> {
    let (n, m) = (a.len(), b.len());
    let total = m.pow(n as u32);
    (0..total)
        .map(|mut code| {
            (0..n)
                .map(|_| {
                    let d = code % m;
                    code /= m;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|f| is_morphism(a, b, f))
        .collect()
}

/// `f*(ψ)`.
pub fn pullback(f: &[usize], psi: &Labels) -> Labels {
    normalize(&f.iter().map(|&y| psi[y]).collect::<Vec<_>>())
}

/// `f(θ)` as a relation; `None` if it is not an equivalence on the codomain.
pub fn image(f: &[usize], theta: &Labels, m: usize) -> Option<Labels> {
    let mut rel = vec![vec![false; m]; m];
    for a in 0..f.len() {
        for b in 0..f.len() {
            if theta[a] == theta[b] {
                rel[f[a]][f[b]] = true;
            }
        }
    }
    let equivalence = (0..m).all(|x| rel[x][x])
        && (0..m).all(|x| (0..m).all(|y| (0..m).all(|z| !(rel[x][y] && rel[y][z]) || rel[x][z])));
    if !equivalence {
        return None;
    }
    let keys: Vec<usize> = (0..m).map(|x| (0..m).find(|&y| rel[x][y]).expect("reflexive")).collect();
    Some(normalize(&keys))
}

/// Smallest member of `con` containing the pairs of `f(θ)`.
pub fn generated(con: &BTreeSet<Labels>, f: &[usize], theta: &Labels) -> Labels {
    con.iter()
        .filter(|c| {
            (0..f.len()).all(|a| (0..f.len()).all(|b| theta[a] != theta[b] || c[f[a]] == c[f[b]]))
        })
        .min_by_key(|c| std::cmp::Reverse(classes(c)))
        .cloned()
        .expect("∇ contains everything")
}

pub fn admissible(f: &[usize], dom: &Spectra, cod: &Spectra) -> bool {
    cod.spec.iter().all(|psi| dom.spec.contains(&pullback(f, psi)))
}

pub fn max_admissible(f: &[usize], dom: &Spectra, cod: &Spectra) -> bool {
    cod.max.iter().all(|psi| dom.max.contains(&pullback(f, psi)))
}

/// Order isomorphism by trying every bijection.
pub fn isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let sig = |l: &FiniteLattice| {
        let mut s: Vec<(usize, usize)> =
            (0..n).map(|x| ((0..n).filter(|&y| l.leq(y, x)).count(), (0..n).filter(|&y| l.leq(x, y)).count())).collect();
        s.sort();
        s
    };
    if sig(a) != sig(b) {
        return false;
    }
    let mut perm: Vec<usize> = Vec::new();
    let mut used = vec![false; n];
    fn go(a: &FiniteLattice, b: &FiniteLattice, perm: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = perm.len();
        if x == a.len() {
            return true;
        }
        for y in 0..a.len() {
            if used[y] {
                continue;
            }
            if (0..x).all(|q| a.leq(q, x) == b.leq(perm[q], y) && a.leq(x, q) == b.leq(y, perm[q])) {
                used[y] = true;
                perm.push(y);
                if go(a, b, perm, used) {
                    return true;
                }
                perm.pop();
                used[y] = false;
            }
        }
        false
    }
    go(a, b, &mut perm, &mut used)
}
