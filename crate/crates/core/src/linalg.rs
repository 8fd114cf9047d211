//! Dense row reduction over F_p.
//!
//! Every linear question in the crate (relation ideals, spans of Steenrod
//! products, multiplication maps, Steenrod images) is small at the degree caps
//! we work with, so a plain reduced-row-echelon accumulator is enough.

use crate::fp::Prime;

/// A reduced row echelon basis for a growing subspace of F_p^n.
///
/// Optionally records, for every stored row, the combination of inserted
/// vectors that produced it, which is what `solve` needs.
#[derive(Clone, Debug)]
pub struct Echelon {
    prime: Prime,
    ncols: usize,
    rows: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    tracking: Option<Tracking>,
}

#[derive(Clone, Debug)]
struct Tracking {
    inserted: usize,
    combos: Vec<Vec<u32>>,
}

impl Echelon {
    pub fn new(prime: Prime, ncols: usize) -> Echelon {
        Echelon {
            prime,
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            tracking: None,
        }
    }

    /// Like `new`, but remembers which inserted vectors each row came from.
    pub fn with_tracking(prime: Prime, ncols: usize) -> Echelon {
        Echelon {
            tracking: Some(Tracking {
                inserted: 0,
                combos: Vec::new(),
            }),
            ..Echelon::new(prime, ncols)
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn axpy(p: Prime, dst: &mut [u32], coef: u32, src: &[u32]) {
        if coef == 0 {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d = p.add(*d, p.mul(coef, *s));
            }
        }
    }

    /// Reduce `v` against the stored rows; returns the remainder together
    /// with the (negated) coefficients used on each stored row.
    fn reduce_with_coeffs(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let p = self.prime;
        let mut r = v.to_vec();
        let mut used = vec![0u32; self.rows.len()];
        for (idx, (row, &pc)) in self.rows.iter().zip(&self.pivots).enumerate() {
            let c = r[pc];
            if c != 0 {
                used[idx] = c;
                Self::axpy(p, &mut r, p.neg(c), row);
            }
        }
        (r, used)
    }

    /// Remainder of `v` modulo the stored subspace. Zero iff `v` lies in it.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        self.reduce_with_coeffs(v).0
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&c| c == 0)
    }

    /// Insert a vector; returns `true` if it enlarged the span.
    pub fn insert(&mut self, v: &[u32]) -> bool {
        assert_eq!(v.len(), self.ncols, "vector length mismatch");
        let p = self.prime;
        let (mut r, used) = self.reduce_with_coeffs(v);
        let mut combo = None;
        if let Some(t) = &self.tracking {
            // r = v - sum used_i row_i, so combo(r) = e_new - sum used_i combo_i
            let mut c = vec![0u32; t.inserted + 1];
            c[t.inserted] = 1;
            for (i, &u) in used.iter().enumerate() {
                if u != 0 {
                    let src = &t.combos[i];
                    for (j, &s) in src.iter().enumerate() {
                        c[j] = p.sub(c[j], p.mul(u, s));
                    }
                }
            }
            combo = Some(c);
        }
        if let Some(t) = &mut self.tracking {
            t.inserted += 1;
        }
        let Some(pc) = r.iter().position(|&c| c != 0) else {
            return false;
        };
        let inv = p.inv(r[pc]);
        for c in r.iter_mut() {
            *c = p.mul(*c, inv);
        }
        let mut combo = combo.map(|mut c| {
            for x in c.iter_mut() {
                *x = p.mul(*x, inv);
            }
            c
        });
        // Keep the echelon form fully reduced.
        for i in 0..self.rows.len() {
            let c = self.rows[i][pc];
            if c != 0 {
                let neg = p.neg(c);
                let (row, r_ref) = (&mut self.rows[i], &r);
                Self::axpy(p, row, neg, r_ref);
                if let (Some(t), Some(new)) = (&mut self.tracking, &combo) {
                    let old = &mut t.combos[i];
                    old.resize(new.len(), 0);
                    Self::axpy(p, old, neg, new);
                }
            }
        }
        // Insert sorted by pivot column so reduction is a single pass.
        let pos = self.pivots.partition_point(|&q| q < pc);
        self.rows.insert(pos, r);
        self.pivots.insert(pos, pc);
        if let (Some(t), Some(c)) = (&mut self.tracking, combo.take()) {
            t.combos.insert(pos, c);
        }
        true
    }

    /// Express `target` as a combination of the inserted vectors, if possible.
    /// Only available on a tracking echelon.
    pub fn solve(&self, target: &[u32]) -> Option<Vec<u32>> {
        let t = self
            .tracking
            .as_ref()
            .expect("solve requires Echelon::with_tracking");
        let p = self.prime;
        let (r, used) = self.reduce_with_coeffs(target);
        if r.iter().any(|&c| c != 0) {
            return None;
        }
        let mut out = vec![0u32; t.inserted];
        for (i, &u) in used.iter().enumerate() {
            if u != 0 {
                for (j, &s) in t.combos[i].iter().enumerate() {
                    out[j] = p.add(out[j], p.mul(u, s));
                }
            }
        }
        Some(out)
    }
}

/// Rank of a list of row vectors.
pub fn rank(prime: Prime, ncols: usize, rows: &[Vec<u32>]) -> usize {
    let mut e = Echelon::new(prime, ncols);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Find `c` with `sum_j c_j * columns[j] = target`.
pub fn solve(prime: Prime, columns: &[Vec<u32>], target: &[u32]) -> Option<Vec<u32>> {
    let mut e = Echelon::with_tracking(prime, target.len());
    for c in columns {
        e.insert(c);
    }
    e.solve(target)
}

/// Enumerate every vector of F_p^dim (including zero) in a fixed order.
/// The caller is responsible for keeping `p^dim` manageable.
pub fn all_vectors(prime: Prime, dim: usize) -> impl Iterator<Item = Vec<u32>> {
    let p = prime.value();
    let total = (p as u128).pow(dim as u32);
    (0..total).map(move |mut n| {
        let mut v = vec![0u32; dim];
        for slot in v.iter_mut() {
            *slot = (n % p as u128) as u32;
            n /= p as u128;
        }
        v
    })
}
