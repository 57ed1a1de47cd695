use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use super::GroupError;

/// A finite group given by its Cayley table. Element 0 is the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Group {
    p: u32,
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    generators: Vec<usize>,
}

impl Group {
    /// Validates a table (identity at 0, Latin square) and
    /// picks a minimal generating set.
    pub fn from_table(p: u32, order: usize, table: Vec<u32>) -> Result<Self, GroupError> {
        if table.len() != order * order {
            return Err(GroupError::Inconsistent("table has wrong size".into()));
        }
        let mut n = order;
        while n > 1 && n % p as usize == 0 {
            n /= p as usize;
        }
        if n != 1 {
            return Err(GroupError::Inconsistent(format!("order {order} is not a power of {p}")));
        }
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(GroupError::Inconsistent("element 0 is not the identity".into()));
            }
        }
        let mut inverse = vec![u32::MAX; order];
        for x in 0..order {
            let mut seen = vec![false; order];
            for y in 0..order {
                let z = table[x * order + y] as usize;
                if z >= order || seen[z] {
                    return Err(GroupError::Inconsistent("table is not a Latin square".into()));
                }
                seen[z] = true;
                if z == 0 {
                    inverse[x] = y as u32;
                }
            }
        }
        let mut g = Group { p, order, table, inverse, generators: Vec::new() };
        g.generators = g.minimal_generators();
        Ok(g)
    }

    /// Closure of `gens` under an explicit multiplication.
    pub fn from_elements<T: Clone + Eq + Hash>(
        p: u32,
        identity: T,
        gens: &[T],
        mul: impl Fn(&T, &T) -> T,
    ) -> Result<Self, GroupError> {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for s in gens {
                let z = mul(&elems[i], s);
                if !index.contains_key(&z) {
                    if elems.len() >= 1 << 12 {
                        return Err(GroupError::TooLarge(elems.len()));
                    }
                    index.insert(z.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(z);
                }
            }
        }
        let order = elems.len();
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                table[x * order + y] = index[&mul(&elems[x], &elems[y])] as u32;
            }
        }
        Self::from_table(p, order, table)
    }

    /// Direct product with element (a, b) at index a*|B| + b.
    pub fn direct_product(a: &Group, b: &Group) -> Result<Group, GroupError> {
        if a.p != b.p {
            return Err(GroupError::PrimeMismatch);
        }
        let (na, nb) = (a.order, b.order);
        let order = na * nb;
        let mut table = vec![0u32; order * order];
        for x in 0..order {
            for y in 0..order {
                let z = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
                table[x * order + y] = z as u32;
            }
        }
        Self::from_table(a.p, order, table)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.table[x * self.order + y] as usize
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inverse[x] as usize
    }

    /// Row of the table: y ↦ x*y.
    pub fn left_row(&self, x: usize) -> &[u32] {
        &self.table[x * self.order..(x + 1) * self.order]
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let mut r = 0;
        let mut b = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    pub fn element_order(&self, x: usize) -> u64 {
        let mut o = 1;
        let mut y = x;
        while y != 0 {
            y = self.mul(y, x);
            o += 1;
        }
        o
    }

    /// x^-1 y^-1 x y
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))
    }

    /// g x g^-1
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutes(&self, x: usize, y: usize) -> bool {
        self.mul(x, y) == self.mul(y, x)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|&a| self.generators.iter().all(|&b| self.commutes(a, b)))
    }

    /// A generating set of minimal size (a basis of G/Φ(G) lifted).
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Sorted elements of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut list = vec![0usize];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for &s in gens {
                let z = self.mul(x, s);
                if !member[z] {
                    member[z] = true;
                    list.push(z);
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// Φ(G) = ⟨x^p, [x, y]⟩.
    pub fn frattini(&self) -> Vec<usize> {
        let mut gens: Vec<usize> = (0..self.order).map(|x| self.pow(x, self.p as u64)).collect();
        for x in 0..self.order {
            for y in 0..x {
                gens.push(self.commutator(x, y));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.closure(&gens)
    }

    fn minimal_generators(&self) -> Vec<usize> {
        // Adding an element outside ⟨Φ, chosen⟩ raises the rank of the image in G/Φ.
        let phi = self.frattini();
        let mut current = phi.clone();
        let mut chosen = Vec::new();
        let mut member = vec![false; self.order];
        for &x in &current {
            member[x] = true;
        }
        for x in 0..self.order {
            if !member[x] {
                chosen.push(x);
                let mut gens = phi.clone();
                gens.extend(chosen.iter().copied());
                current = self.closure(&gens);
                member.iter_mut().for_each(|m| *m = false);
                for &y in &current {
                    member[y] = true;
                }
            }
        }
        chosen
    }

    /// Homomorphism check for an explicit element map into `target`.
    pub fn is_hom_into(&self, target: &Group, map: &[usize]) -> bool {
        map.len() == self.order
            && (0..self.order).all(|x| (0..self.order).all(|y| map[self.mul(x, y)] == target.mul(map[x], map[y])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyclic(n: usize) -> Group {
        Group::from_elements(2, 0usize, &[1usize], |a, b| (a + b) % n).unwrap()
    }

    #[test]
    fn cyclic_group_basics() {
        let g = cyclic(8);
        assert_eq!(g.order(), 8);
        assert_eq!(g.generators().len(), 1);
        assert_eq!(g.frattini().len(), 4);
        assert!(g.is_abelian());
    }

    #[test]
    fn product_indexing() {
        let a = cyclic(2);
        let b = cyclic(4);
        let g = Group::direct_product(&a, &b).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.generators().len(), 2);
    }
}
