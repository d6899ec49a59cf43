//! Brute-force class counts, used as an independent test oracle.
//!
//! Every form in the box `|a|, |b|, |c|, |d| ≤ M` with `0 < |Disc| ≤ X` is
//! listed. Orbits are merged with a union–find over the generator moves
//! `n_{±1}`, `S` and `−I` that stay inside the box, and additionally with the
//! output of [`reduce_form`](super::reduce_form) after checking its witness.
//! Stabilisers are found by exhaustive search over matrices with entries of
//! size at most [`STAB_SEARCH_BOUND`].

use std::collections::HashMap;

use super::cubic::IntegerCubicForm;
use super::matrix::{special_matrices_up_to, IntMatrix};
use super::reduce::reduce_form;
use super::table::{ClassRecord, ClassTable};
use crate::{Error, Result};

pub const STAB_SEARCH_BOUND: i64 = 10;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, x: usize, y: usize) {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx != ry {
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
        }
    }
}

fn disc_i64(v: [i64; 4]) -> i64 {
    let [a, b, c, d] = v;
    b * b * c * c - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d + 18 * a * b * c * d
}

/// Class counts for `0 < |Disc| ≤ x` from the coefficient box of size `m`.
///
/// The box must be large enough that every class has a member inside it
/// (heuristically `m ≥ 4·x^{1/3}`); the caller is responsible for that.
pub fn brute_force_class_oracle(x: u64, m: i64) -> Result<ClassTable> {
    if m > 200 {
        return Err(Error::InvalidInput("box too large for the brute-force oracle".into()));
    }
    let mut forms: Vec<[i64; 4]> = Vec::new();
    let xi = x as i64;
    for a in -m..=m {
        for b in -m..=m {
            for c in -m..=m {
                for d in -m..=m {
                    let v = [a, b, c, d];
                    let dd = disc_i64(v);
                    if dd != 0 && dd.abs() <= xi {
                        forms.push(v);
                    }
                }
            }
        }
    }
    let in_box = forms.len();
    let mut index: HashMap<[i64; 4], usize> = forms.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut uf = UnionFind { parent: (0..forms.len()).collect() };
    let moves = [IntMatrix::T, IntMatrix::unipotent(-1), IntMatrix::S, IntMatrix::MINUS_IDENTITY];
    for i in 0..in_box {
        let f = IntegerCubicForm::from_array(forms[i]);
        for g in &moves {
            if let Some(w) = f.act(g)?.small() {
                if let Some(&j) = index.get(&w) {
                    uf.union(i, j);
                }
            }
        }
        let r = reduce_form(&f)?;
        if f.act(&r.witness)? != r.representative || !r.witness.is_special() {
            return Err(Error::Validation(format!("bad reduction witness for {f}")));
        }
        let w = r
            .representative
            .small()
            .ok_or_else(|| Error::Overflow("oracle representative".into()))?;
        // canonical representatives outside the box become extra nodes
        let j = *index.entry(w).or_insert_with(|| {
            forms.push(w);
            uf.parent.push(uf.parent.len());
            forms.len() - 1
        });
        uf.union(i, j);
    }

    // One smallest-height member per component.
    let mut best: HashMap<usize, usize> = HashMap::new();
    for i in 0..in_box {
        let root = uf.find(i);
        let h = |k: usize| forms[k].iter().map(|x| x.abs()).max().unwrap_or(0);
        let e = best.entry(root).or_insert(i);
        if (h(i), forms[i]) < (h(*e), forms[*e]) {
            *e = i;
        }
    }
    let search = special_matrices_up_to(STAB_SEARCH_BOUND);
    let mut records = Vec::with_capacity(best.len());
    let mut roots: Vec<_> = best.into_iter().collect();
    roots.sort();
    for (_, i) in roots {
        let f = IntegerCubicForm::from_array(forms[i]);
        let mut stab = 0u32;
        for g in &search {
            if f.act(g)? == f {
                stab += 1;
            }
        }
        records.push(ClassRecord { representative: f, disc: disc_i64(forms[i]), stab_order: stab });
    }
    ClassTable::from_records(x, records)
}

/// Stabiliser order by exhaustive search over entries bounded by `bound`.
pub fn stabilizer_by_search(f: &IntegerCubicForm, bound: i64) -> Result<u32> {
    let mut n = 0;
    for g in special_matrices_up_to(bound) {
        if f.act(&g)? == *f {
            n += 1;
        }
    }
    Ok(n)
}
