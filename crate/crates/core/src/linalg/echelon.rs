use super::vector::{inv_mod, neg_mod, FpVector};

/// Incremental semi-echelon basis. Each stored row has a leading 1 at its
/// pivot and is zero at the pivots of earlier rows, so reduction processes
/// rows in insertion order.
///
/// With tracking enabled every row carries the combination of inserted
/// vectors that produced it, which turns the structure into a solver.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    width: usize,
    rows: Vec<FpVector>,
    pivots: Vec<usize>,
    combos: Option<Vec<FpVector>>,
    track_len: usize,
}

impl Echelon {
    pub fn new(p: u32, width: usize) -> Self {
        Echelon { p, width, rows: Vec::new(), pivots: Vec::new(), combos: None, track_len: 0 }
    }

    pub fn tracked(p: u32, width: usize, track_len: usize) -> Self {
        Echelon { p, width, rows: Vec::new(), pivots: Vec::new(), combos: Some(Vec::new()), track_len }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[FpVector] {
        &self.rows
    }

    pub fn reduce(&self, v: &mut FpVector) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(pc);
            if c != 0 {
                v.add_scaled(row, neg_mod(c, self.p));
            }
        }
    }

    /// Inserts `v`; returns true if it was independent of the current rows.
    pub fn insert(&mut self, mut v: FpVector) -> bool {
        assert_eq!(v.len(), self.width);
        self.reduce(&mut v);
        match v.first_nonzero() {
            None => false,
            Some(pc) => {
                let lead = v.get(pc);
                if lead != 1 {
                    v.scale(inv_mod(lead, self.p));
                }
                self.rows.push(v);
                self.pivots.push(pc);
                true
            }
        }
    }

    /// Inserts `v` whose preimage label is `combo`. If `v` is dependent,
    /// returns the relation (a combination of labels mapping to zero).
    pub fn insert_tracked(&mut self, mut v: FpVector, mut combo: FpVector) -> Option<FpVector> {
        assert_eq!(v.len(), self.width);
        assert_eq!(combo.len(), self.track_len);
        let combos = self.combos.as_mut().expect("untracked echelon");
        for ((row, &pc), cb) in self.rows.iter().zip(&self.pivots).zip(combos.iter()) {
            let c = v.get(pc);
            if c != 0 {
                let m = neg_mod(c, self.p);
                v.add_scaled(row, m);
                combo.add_scaled(cb, m);
            }
        }
        match v.first_nonzero() {
            None => Some(combo),
            Some(pc) => {
                let lead = v.get(pc);
                if lead != 1 {
                    let inv = inv_mod(lead, self.p);
                    v.scale(inv);
                    combo.scale(inv);
                }
                self.rows.push(v);
                self.pivots.push(pc);
                combos.push(combo);
                None
            }
        }
    }

    /// Some label combination mapping to `target`, if `target` is in the span.
    pub fn solve(&self, target: &FpVector) -> Option<FpVector> {
        let combos = self.combos.as_ref().expect("untracked echelon");
        let mut v = target.clone();
        let mut out = if target.is_packed() || self.p != 2 {
            FpVector::zero(self.p, self.track_len)
        } else {
            FpVector::zero_generic(self.p, self.track_len)
        };
        for ((row, &pc), cb) in self.rows.iter().zip(&self.pivots).zip(combos) {
            let c = v.get(pc);
            if c != 0 {
                v.add_scaled(row, neg_mod(c, self.p));
                out.add_scaled(cb, c);
            }
        }
        v.is_zero().then_some(out)
    }

    pub fn contains(&self, v: &FpVector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tracked_relations_and_solutions() {
        let p = 3;
        let vs = [[1u32, 2, 0], [2, 1, 0], [0, 0, 1], [1, 2, 1]];
        let mut e = Echelon::tracked(p, 3, 4);
        let mut relations = Vec::new();
        for (i, v) in vs.iter().enumerate() {
            if let Some(r) = e.insert_tracked(FpVector::from_entries(p, v), FpVector::unit(p, 4, i)) {
                relations.push(r);
            }
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(relations.len(), 2);
        for r in &relations {
            let mut sum = FpVector::zero(p, 3);
            for (i, c) in r.iter_nonzero() {
                sum.add_scaled(&FpVector::from_entries(p, &vs[i]), c);
            }
            assert!(sum.is_zero());
        }
        let target = FpVector::from_entries(p, &[2, 1, 2]);
        let x = e.solve(&target).unwrap();
        let mut sum = FpVector::zero(p, 3);
        for (i, c) in x.iter_nonzero() {
            sum.add_scaled(&FpVector::from_entries(p, &vs[i]), c);
        }
        assert_eq!(sum, target);
        assert!(e.solve(&FpVector::from_entries(p, &[1, 0, 0])).is_none());
    }
}
