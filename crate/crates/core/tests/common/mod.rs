//! Oracles written directly from the definitions, sharing nothing with the
//! library beyond the quantale operations.

#![allow(dead_code)]

use qfilter_core::quantale::{FiniteQuantale, Level, Quantale};

/// All functions `X -> Q` for `|X| = n`, in the library's index order.
pub fn functions(q: &FiniteQuantale, n: usize) -> Vec<Vec<Level>> {
    let levels: Vec<Level> = q.levels().collect();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|f| {
                levels.iter().map(move |&l| {
                    let mut g = f.clone();
                    g.push(l);
                    g
                })
            })
            .collect();
    }
    out
}

pub fn sub(q: &FiniteQuantale, a: &[Level], b: &[Level]) -> Level {
    a.iter().zip(b).fold(q.top(), |acc, (x, y)| q.meet(&acc, &q.residuum(x, y)))
}

fn pointwise_meet(q: &FiniteQuantale, a: &[Level], b: &[Level]) -> Vec<Level> {
    a.iter().zip(b).map(|(x, y)| q.meet(x, y)).collect()
}

/// Every map `Q^X -> Q` satisfying F1, F2 and F3, found by testing each
/// candidate constraint by constraint.
pub fn semifilters(q: &FiniteQuantale, n: usize) -> Vec<Vec<Level>> {
    let funcs = functions(q, n);
    let m = funcs.len();
    let index = |f: &[Level]| funcs.iter().position(|g| g == f).unwrap();
    let k_index = index(&vec![q.unit(); n]);
    let levels: Vec<Level> = q.levels().collect();
    let meets: Vec<Vec<usize>> =
        (0..m).map(|i| (0..m).map(|j| index(&pointwise_meet(q, &funcs[i], &funcs[j]))).collect()).collect();
    let subs: Vec<Vec<Level>> = (0..m).map(|i| (0..m).map(|j| sub(q, &funcs[i], &funcs[j])).collect()).collect();

    let mut out = Vec::new();
    let mut table = vec![levels[0]; m];
    let total = levels.len().pow(m as u32);
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut().rev() {
            *slot = levels[c % levels.len()];
            c /= levels.len();
        }
        let f1 = q.leq(&q.unit(), &table[k_index]);
        let f2 = || (0..m).all(|i| (0..m).all(|j| q.leq(&q.meet(&table[i], &table[j]), &table[meets[i][j]])));
        let f3 = || (0..m).all(|i| (0..m).all(|j| q.leq(&subs[i][j], &q.residuum(&table[i], &table[j]))));
        if f1 && f3() && f2() {
            out.push(table.clone());
        }
    }
    out
}

/// `λ ↦ sup_{μ ∈ F} sub(μ, λ)` for a set of functions given by indices.
pub fn lambda(q: &FiniteQuantale, funcs: &[Vec<Level>], set: &[usize]) -> Vec<Level> {
    funcs
        .iter()
        .map(|l| set.iter().fold(q.bottom(), |acc, &i| q.join(&acc, &sub(q, &funcs[i], l))))
        .collect()
}

/// Every table `Λ(F)` for `F` a set of functions containing `k_X` and closed
/// under binary meets; exhaustive, so only for tiny function spaces.
pub fn conical_tables(q: &FiniteQuantale, n: usize) -> Vec<Vec<Level>> {
    let funcs = functions(q, n);
    assert!(funcs.len() <= 16, "too many subsets");
    let k = vec![q.unit(); n];
    let mut out: Vec<Vec<Level>> = (0u32..1 << funcs.len())
        .filter_map(|mask| {
            let set: Vec<usize> = (0..funcs.len()).filter(|i| mask >> i & 1 == 1).collect();
            let has = |f: &[Level]| set.iter().any(|&i| funcs[i] == f);
            let closed = has(&k)
                && set.iter().all(|&i| set.iter().all(|&j| has(&pointwise_meet(q, &funcs[i], &funcs[j]))));
            closed.then(|| lambda(q, &funcs, &set))
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Greatest conical table below `t`, searched among all conical tables.
pub fn largest_conical_below(q: &FiniteQuantale, conical: &[Vec<Level>], t: &[Level]) -> Option<Vec<Level>> {
    let below: Vec<&Vec<Level>> = conical.iter().filter(|c| c.iter().zip(t).all(|(a, b)| q.leq(a, b))).collect();
    below
        .iter()
        .find(|c| below.iter().all(|d| d.iter().zip(c.iter()).all(|(a, b)| q.leq(a, b))))
        .map(|c| (*c).clone())
}
