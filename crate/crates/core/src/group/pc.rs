use super::table::Group;
use super::GroupError;
use crate::linalg::is_prime;

/// Power-commutator presentation of a finite p-group with generators
/// g_1..g_n (stored 0-based). Relations are normal-form exponent vectors:
/// `powers[i]` is g_i^p and `comms[j][i]` (i < j) is [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PcPresentation {
    p: u32,
    n: usize,
    powers: Vec<Vec<u32>>,
    comms: Vec<Vec<Vec<u32>>>,
}

/// Normal form g_1^{e_1} .. g_n^{e_n}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub Vec<u32>);

impl PcPresentation {
    /// Presentation with all relations trivial: (Z/p)^n.
    pub fn elementary_abelian(p: u32, n: usize) -> Result<Self, GroupError> {
        if !is_prime(p) {
            return Err(GroupError::NotPrime(p));
        }
        Ok(PcPresentation { p, n, powers: vec![vec![0; n]; n], comms: (0..n).map(|j| vec![vec![0; n]; j]).collect() })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn num_gens(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    pub fn power(&self, i: usize) -> &[u32] {
        &self.powers[i]
    }

    /// [g_j, g_i] for i < j.
    pub fn commutator(&self, j: usize, i: usize) -> &[u32] {
        &self.comms[j][i]
    }

    fn check_word(&self, w: &[u32], after: usize) -> Result<(), GroupError> {
        if w.len() != self.n {
            return Err(GroupError::MalformedWord(format!("expected {} exponents, found {}", self.n, w.len())));
        }
        if let Some(k) = w.iter().position(|&e| e >= self.p) {
            return Err(GroupError::MalformedWord(format!("exponent of g{} out of range", k + 1)));
        }
        if let Some(k) = w[..=after].iter().position(|&e| e != 0) {
            return Err(GroupError::MalformedWord(format!("relation involves g{} but must use later generators", k + 1)));
        }
        Ok(())
    }

    /// Sets g_i^p (0-based i).
    pub fn set_power(&mut self, i: usize, word: Vec<u32>) -> Result<(), GroupError> {
        self.check_word(&word, i)?;
        self.powers[i] = word;
        Ok(())
    }

    /// Sets [g_j, g_i] (0-based, i < j).
    pub fn set_commutator(&mut self, j: usize, i: usize, word: Vec<u32>) -> Result<(), GroupError> {
        if i >= j || j >= self.n {
            return Err(GroupError::MalformedWord(format!("commutator indices must satisfy i < j < n, got j={j} i={i}")));
        }
        self.check_word(&word, j)?;
        self.comms[j][i] = word;
        Ok(())
    }

    pub fn index_of(&self, e: &[u32]) -> usize {
        e.iter().fold(0usize, |acc, &x| acc * self.p as usize + x as usize)
    }

    pub fn element_of(&self, mut idx: usize) -> Element {
        let mut e = vec![0; self.n];
        for k in (0..self.n).rev() {
            e[k] = (idx % self.p as usize) as u32;
            idx /= self.p as usize;
        }
        Element(e)
    }

    /// Letters (generator indices) of a normal-form word, left to right.
    fn letters(w: &[u32]) -> impl Iterator<Item = usize> + '_ {
        w.iter().enumerate().flat_map(|(k, &e)| std::iter::repeat(k).take(e as usize))
    }

    /// Collects an arbitrary word, given as generator letters with integer
    /// exponents (negative allowed), using a pending-letter stack.
    pub fn normal_form(&self, word: &[(usize, i64)]) -> Result<Element, GroupError> {
        let mut x = vec![0u32; self.n];
        let mut stack: Vec<usize> = Vec::new();
        for &(k, e) in word.iter() {
            if k >= self.n {
                return Err(GroupError::MalformedWord(format!("unknown generator g{}", k + 1)));
            }
            // g_k^-1 = g_k^(ord - 1)
            let ord = self.generator_order(k) as i64;
            let e = e.rem_euclid(ord);
            for _ in 0..e {
                stack.push(k);
                self.drain(&mut x, &mut stack)?;
            }
        }
        Ok(Element(x))
    }

    fn drain(&self, x: &mut [u32], stack: &mut Vec<usize>) -> Result<(), GroupError> {
        let mut steps = 0usize;
        while let Some(k) = stack.pop() {
            steps += 1;
            if steps > 50_000_000 {
                return Err(GroupError::CollectionDiverged);
            }
            // x * g_k = head * g_k^{x_k+1} * (power word if overflow) * prod_{j>k} (g_j c_jk)^{x_j}
            let tail: Vec<u32> = x[k + 1..].to_vec();
            for v in x[k + 1..].iter_mut() {
                *v = 0;
            }
            let mut pending: Vec<usize> = Vec::new();
            if x[k] + 1 == self.p {
                x[k] = 0;
                pending.extend(Self::letters(&self.powers[k]));
            } else {
                x[k] += 1;
            }
            for (off, &e) in tail.iter().enumerate() {
                let j = k + 1 + off;
                for _ in 0..e {
                    pending.push(j);
                    pending.extend(Self::letters(&self.comms[j][k]));
                }
            }
            stack.extend(pending.into_iter().rev());
        }
        Ok(())
    }

    /// Order of g_k (a power of p).
    fn generator_order(&self, k: usize) -> u64 {
        let mut ord = self.p as u64;
        let mut w = self.powers[k].clone();
        // g_k^(p^m) = (g_k^p)^(p^(m-1)); follow the power chain through later generators.
        while w.iter().any(|&e| e != 0) {
            let pw = self.word_power(&w);
            ord *= self.p as u64;
            w = pw;
        }
        ord
    }

    fn word_power(&self, w: &[u32]) -> Vec<u32> {
        let mut x = vec![0u32; self.n];
        let mut stack = Vec::new();
        for _ in 0..self.p {
            for k in Self::letters(w) {
                stack.push(k);
                self.drain(&mut x, &mut stack).expect("collection");
            }
        }
        x
    }

    /// Builds the multiplication table by memoized collection and validates
    /// consistency exhaustively.
    pub fn to_group(&self) -> Result<Group, GroupError> {
        let order = self.order();
        if order > 1 << 12 {
            return Err(GroupError::TooLarge(order));
        }
        let mut c = Collector { pres: self, memo: vec![u32::MAX; order * self.n.max(1)], depth: 0 };
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let mut z = x;
                let ey = self.element_of(y);
                for k in Self::letters(&ey.0).collect::<Vec<_>>() {
                    z = c.mul_gen(z, k)?;
                }
                table[x * order + y] = z as u32;
            }
        }
        // (x*y)*g_k == x*(y*g_k) for every x, y, k forces associativity.
        for x in 0..order {
            for y in 0..order {
                let xy = table[x * order + y] as usize;
                for k in 0..self.n {
                    let yg = c.mul_gen(y, k)?;
                    if c.mul_gen(xy, k)? != table[x * order + yg] as usize {
                        return Err(GroupError::Inconsistent(format!(
                            "associativity fails for {:?} {:?} g{}",
                            self.element_of(x).0,
                            self.element_of(y).0,
                            k + 1
                        )));
                    }
                }
            }
        }
        let g = Group::from_table(self.p, order, table).map_err(|e| GroupError::Inconsistent(e.to_string()))?;
        // Relations must hold in the group actually built.
        let gen = |k: usize| self.index_of(&unit(self.n, k));
        for i in 0..self.n {
            if g.pow(gen(i), self.p as u64) != self.index_of(&self.powers[i]) {
                return Err(GroupError::Inconsistent(format!("power relation for g{} does not hold", i + 1)));
            }
            for j in i + 1..self.n {
                if g.commutator(gen(j), gen(i)) != self.index_of(&self.comms[j][i]) {
                    return Err(GroupError::Inconsistent(format!("commutator relation [g{}, g{}] does not hold", j + 1, i + 1)));
                }
            }
        }
        Ok(g)
    }

    /// Pc presentation of a p-group given by its table, via a central
    /// series refinement. Returns the presentation and, for each pc index,
    /// the corresponding element of `g`.
    pub fn from_group(g: &Group) -> Result<(PcPresentation, Vec<usize>), GroupError> {
        let p = g.prime();
        let order = g.order();
        let mut in_n = vec![false; order];
        in_n[0] = true;
        let mut size = 1;
        let mut chosen = Vec::new();
        let gens = g.generators().to_vec();
        while size < order {
            let cand = (1..order).find(|&x| {
                !in_n[x] && in_n[g.pow(x, p as u64)] && gens.iter().all(|&s| in_n[g.commutator(x, s)])
            });
            let x = cand.ok_or_else(|| GroupError::Inconsistent("not a p-group".into()))?;
            let members: Vec<usize> = (0..order).filter(|&y| in_n[y]).collect();
            let mut xi = x;
            for _ in 1..p {
                for &y in &members {
                    in_n[g.mul(xi, y)] = true;
                }
                xi = g.mul(xi, x);
            }
            size *= p as usize;
            chosen.push(x);
        }
        chosen.reverse();
        let n = chosen.len();
        let mut pres = PcPresentation::elementary_abelian(p, n)?;
        // Enumerate normal forms g_1^e_1 .. g_n^e_n.
        let mut pc_to_elem = vec![0usize; order];
        let mut elem_to_pc = vec![usize::MAX; order];
        for idx in 0..order {
            let e = pres.element_of(idx);
            let mut z = 0;
            for (k, &ek) in e.0.iter().enumerate() {
                z = g.mul(z, g.pow(chosen[k], ek as u64));
            }
            pc_to_elem[idx] = z;
            elem_to_pc[z] = idx;
        }
        if elem_to_pc.contains(&usize::MAX) {
            return Err(GroupError::Inconsistent("normal forms do not cover the group".into()));
        }
        let shape = pres.clone();
        let word = |z: usize| shape.element_of(elem_to_pc[z]).0;
        for i in 0..n {
            let w = word(g.pow(chosen[i], p as u64));
            pres.powers[i] = w;
            for j in i + 1..n {
                pres.comms[j][i] = word(g.commutator(chosen[j], chosen[i]));
            }
        }
        Ok((pres, pc_to_elem))
    }

    /// Generators of `a` first, then those of `b`; cross commutators trivial.
    pub fn direct_product(a: &PcPresentation, b: &PcPresentation) -> Result<PcPresentation, GroupError> {
        if a.p != b.p {
            return Err(GroupError::PrimeMismatch);
        }
        let n = a.n + b.n;
        let mut out = PcPresentation::elementary_abelian(a.p, n)?;
        let shift_a = |w: &[u32]| -> Vec<u32> { w.iter().copied().chain(std::iter::repeat(0).take(b.n)).collect() };
        let shift_b = |w: &[u32]| -> Vec<u32> { std::iter::repeat(0).take(a.n).chain(w.iter().copied()).collect() };
        for i in 0..a.n {
            out.powers[i] = shift_a(&a.powers[i]);
            for j in i + 1..a.n {
                out.comms[j][i] = shift_a(&a.comms[j][i]);
            }
        }
        for i in 0..b.n {
            out.powers[a.n + i] = shift_b(&b.powers[i]);
            for j in i + 1..b.n {
                out.comms[a.n + j][a.n + i] = shift_b(&b.comms[j][i]);
            }
        }
        Ok(out)
    }

    /// Canonical text form used for hashing and the `.pcp` writer.
    pub fn relations(&self) -> (Vec<(usize, Vec<u32>)>, Vec<(usize, usize, Vec<u32>)>) {
        let pows = (0..self.n).filter(|&i| self.powers[i].iter().any(|&e| e != 0)).map(|i| (i, self.powers[i].clone())).collect();
        let mut comms = Vec::new();
        for j in 0..self.n {
            for i in 0..j {
                if self.comms[j][i].iter().any(|&e| e != 0) {
                    comms.push((j, i, self.comms[j][i].clone()));
                }
            }
        }
        (pows, comms)
    }

    pub fn generator(&self, k: usize) -> usize {
        self.index_of(&unit(self.n, k))
    }
}

fn unit(n: usize, k: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[k] = 1;
    v
}

struct Collector<'a> {
    pres: &'a PcPresentation,
    memo: Vec<u32>,
    depth: usize,
}

impl Collector<'_> {
    /// x * g_k on element indices, memoized.
    fn mul_gen(&mut self, x: usize, k: usize) -> Result<usize, GroupError> {
        let n = self.pres.n;
        let slot = x * n + k;
        if self.memo[slot] != u32::MAX {
            return Ok(self.memo[slot] as usize);
        }
        self.depth += 1;
        if self.depth > 10_000 {
            return Err(GroupError::CollectionDiverged);
        }
        let p = self.pres.p;
        let mut e = self.pres.element_of(x).0;
        let tail: Vec<u32> = e[k + 1..].to_vec();
        for v in e[k + 1..].iter_mut() {
            *v = 0;
        }
        let mut letters: Vec<usize> = Vec::new();
        if e[k] + 1 == p {
            e[k] = 0;
            letters.extend(PcPresentation::letters(&self.pres.powers[k]));
        } else {
            e[k] += 1;
        }
        for (off, &t) in tail.iter().enumerate() {
            let j = k + 1 + off;
            for _ in 0..t {
                letters.push(j);
                letters.extend(PcPresentation::letters(&self.pres.comms[j][k]));
            }
        }
        let mut z = self.pres.index_of(&e);
        for l in letters {
            z = self.mul_gen(z, l)?;
        }
        self.depth -= 1;
        self.memo[slot] = z as u32;
        Ok(z)
    }
}

/// Hash of the presentation used to key caches.
pub fn presentation_digest(pres: &PcPresentation) -> String {
    use sha2::{Digest, Sha256};
    let mut h = Sha256::new();
    h.update(crate::catalog::write_pcp(pres).as_bytes());
    hex::encode(&h.finalize()[..12])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q8() -> PcPresentation {
        let mut q = PcPresentation::elementary_abelian(2, 3).unwrap();
        q.set_power(0, vec![0, 0, 1]).unwrap();
        q.set_power(1, vec![0, 0, 1]).unwrap();
        q.set_commutator(1, 0, vec![0, 0, 1]).unwrap();
        q
    }

    #[test]
    fn q8_relation_table() {
        let pres = q8();
        let g = pres.to_group().unwrap();
        assert_eq!(g.order(), 8);
        let a = pres.generator(0);
        let b = pres.generator(1);
        assert_eq!(g.mul(a, a), g.mul(b, b));
        // every element other than 1 and z has order 4
        let orders: Vec<u64> = (0..8).map(|x| g.element_order(x)).collect();
        assert_eq!(orders.iter().filter(|&&o| o == 4).count(), 6);
        assert_eq!(orders.iter().filter(|&&o| o == 2).count(), 1);
        // b a = a b z
        let z = pres.generator(2);
        assert_eq!(g.mul(b, a), g.mul(g.mul(a, b), z));
    }

    #[test]
    fn normal_form_basics() {
        let pres = q8();
        assert_eq!(pres.normal_form(&[]).unwrap(), Element(vec![0, 0, 0]));
        assert_eq!(pres.normal_form(&[(0, 1), (0, -1)]).unwrap(), Element(vec![0, 0, 0]));
        assert_eq!(pres.normal_form(&[(1, 1), (0, 1)]).unwrap(), Element(vec![1, 1, 1]));
    }

    #[test]
    fn inconsistent_rejected() {
        // g1^2 = g2 must commute with g1, but [g2, g1] = g3.
        let mut bad = PcPresentation::elementary_abelian(2, 3).unwrap();
        bad.set_power(0, vec![0, 1, 0]).unwrap();
        bad.set_commutator(1, 0, vec![0, 0, 1]).unwrap();
        assert!(bad.to_group().is_err());
    }

    #[test]
    fn roundtrip_through_table() {
        let g = q8().to_group().unwrap();
        let (pres, map) = PcPresentation::from_group(&g).unwrap();
        let h = pres.to_group().unwrap();
        for x in 0..8 {
            for y in 0..8 {
                assert_eq!(map[h.mul(x, y)], g.mul(map[x], map[y]));
            }
        }
    }
}
