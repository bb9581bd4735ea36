use serde::Serialize;

use super::FinCategory;

/// `α_X : C(A, X) → C(B, X)` for each object `X`; `family[X][i]` is the
/// image of the `i`-th arrow of `hom(A, X)`.
pub type Family = Vec<Vec<usize>>;

/// All natural transformations `C(A, −) → C(B, −)`. Slots are filled by
/// backtracking; every naturality equation between two filled slots is
/// checked as soon as both are known.
pub fn yoneda_enumerate(c: &FinCategory, a: usize, b: usize) -> Vec<Family> {
    let n = c.n_objects();
    // slots in order, (A, id_A) first
    let mut slots: Vec<(usize, usize)> = vec![(a, 0)];
    let id_pos = c.hom(a, a).iter().position(|&f| f == c.id(a)).expect("identity");
    slots[0].1 = id_pos;
    for x in 0..n {
        for i in 0..c.hom(a, x).len() {
            if (x, i) != (a, id_pos) {
                slots.push((x, i));
            }
        }
    }
    let mut fam: Family = (0..n).map(|x| vec![usize::MAX; c.hom(a, x).len()]).collect();
    let mut out = Vec::new();
    go(c, a, b, &slots, 0, &mut fam, &mut out);
    out
}

fn consistent(c: &FinCategory, a: usize, fam: &Family, x: usize, i: usize) -> bool {
    let u = c.hom(a, x)[i];
    let v = fam[x][i];
    // h ∘ u lands in a filled slot
    for h in c.out_of(x) {
        let y = c.cod(h);
        let j = c.hom(a, y).iter().position(|&w| w == c.comp(h, u)).expect("in hom");
        if fam[y][j] != usize::MAX && fam[y][j] != c.comp(h, v) {
            return false;
        }
    }
    // u = h ∘ w for a filled slot w
    for (w_obj, row) in fam.iter().enumerate() {
        for (k, &img) in row.iter().enumerate() {
            if img == usize::MAX {
                continue;
            }
            let w = c.hom(a, w_obj)[k];
            for &h in c.hom(w_obj, x) {
                if c.comp(h, w) == u && c.comp(h, img) != v {
                    return false;
                }
            }
        }
    }
    true
}

fn go(
    c: &FinCategory,
    a: usize,
    b: usize,
    slots: &[(usize, usize)],
    k: usize,
    fam: &mut Family,
    out: &mut Vec<Family>,
) {
    let Some(&(x, i)) = slots.get(k) else {
        out.push(fam.clone());
        return;
    };
    for &v in c.hom(b, x) {
        fam[x][i] = v;
        if consistent(c, a, fam, x, i) {
            go(c, a, b, slots, k + 1, fam, out);
        }
    }
    fam[x][i] = usize::MAX;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct YonedaReport {
    pub transformations: usize,
    pub hom_size: usize,
    /// Each transformation is `C(f, −)` for `f = α_A(id_A)`, and distinct
    /// transformations come from distinct `f`.
    pub representable: bool,
}

pub fn yoneda_check(c: &FinCategory, a: usize, b: usize) -> YonedaReport {
    let fams = yoneda_enumerate(c, a, b);
    let id_pos = c.hom(a, a).iter().position(|&f| f == c.id(a)).expect("identity");
    let mut fs: Vec<usize> = fams.iter().map(|fam| fam[a][id_pos]).collect();
    let each = fams.iter().zip(&fs).all(|(fam, &f)| {
        fam.iter()
            .enumerate()
            .all(|(x, row)| row.iter().enumerate().all(|(i, &v)| v == c.comp(c.hom(a, x)[i], f)))
    });
    fs.sort_unstable();
    fs.dedup();
    YonedaReport {
        transformations: fams.len(),
        hom_size: c.hom(b, a).len(),
        representable: each && fs.len() == fams.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cat::{chain, divisors, terminal};

    #[test]
    fn small_counts() {
        let t = terminal();
        assert_eq!(yoneda_enumerate(&t, 0, 0).len(), 1);
        let c = chain(3);
        let r = yoneda_check(&c, 1, 2);
        assert_eq!((r.transformations, r.hom_size), (0, 0));
        let r = yoneda_check(&c, 2, 1);
        assert_eq!((r.transformations, r.hom_size, r.representable), (1, 1, true));
        let d = divisors(12);
        let (two, twelve) = (d.object_index("2").unwrap(), d.object_index("12").unwrap());
        let r = yoneda_check(&d, two, twelve);
        assert_eq!((r.transformations, r.hom_size), (0, 0));
        let r = yoneda_check(&d, twelve, two);
        assert_eq!((r.transformations, r.hom_size, r.representable), (1, 1, true));
    }
}
