use std::fmt;

/// Residue arithmetic helpers for a small prime `p`.
#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn inv_mod(a: u32, p: u32) -> u32 {
    assert!(a % p != 0, "zero has no inverse mod {p}");
    let mut result = 1u32;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    result
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Storage {
    /// p = 2, 64 entries per word.
    Packed(Vec<u64>),
    /// One residue per byte; works for every p < 256.
    Bytes(Vec<u8>),
}

/// A vector over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpVector {
    p: u32,
    len: usize,
    data: Storage,
}

impl FpVector {
    /// Zero vector; bit-packed when p = 2.
    pub fn zero(p: u32, len: usize) -> Self {
        if p == 2 {
            FpVector { p, len, data: Storage::Packed(vec![0; len.div_ceil(64)]) }
        } else {
            Self::zero_generic(p, len)
        }
    }

    /// Zero vector in byte-per-entry storage regardless of p.
    pub fn zero_generic(p: u32, len: usize) -> Self {
        assert!(p < 256, "byte storage needs p < 256");
        FpVector { p, len, data: Storage::Bytes(vec![0; len]) }
    }

    pub fn from_entries(p: u32, entries: &[u32]) -> Self {
        let mut v = Self::zero(p, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            v.set(i, e % p);
        }
        v
    }

    pub fn from_entries_generic(p: u32, entries: &[u32]) -> Self {
        let mut v = Self::zero_generic(p, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            v.set(i, e % p);
        }
        v
    }

    pub fn unit(p: u32, len: usize, i: usize) -> Self {
        let mut v = Self::zero(p, len);
        v.set(i, 1);
        v
    }

    /// Same vector with the other storage layout matching `generic`.
    pub fn with_layout(&self, generic: bool) -> Self {
        let mut v = if generic { Self::zero_generic(self.p, self.len) } else { Self::zero(self.p, self.len) };
        for (i, c) in self.iter_nonzero() {
            v.set(i, c);
        }
        v
    }

    pub fn is_packed(&self) -> bool {
        matches!(self.data, Storage::Packed(_))
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u32 {
        debug_assert!(i < self.len);
        match &self.data {
            Storage::Packed(w) => ((w[i >> 6] >> (i & 63)) & 1) as u32,
            Storage::Bytes(b) => b[i] as u32,
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: u32) {
        debug_assert!(i < self.len);
        let value = value % self.p;
        match &mut self.data {
            Storage::Packed(w) => {
                let mask = 1u64 << (i & 63);
                if value == 1 {
                    w[i >> 6] |= mask;
                } else {
                    w[i >> 6] &= !mask;
                }
            }
            Storage::Bytes(b) => b[i] = value as u8,
        }
    }

    #[inline]
    pub fn add_to_entry(&mut self, i: usize, value: u32) {
        match &mut self.data {
            Storage::Packed(w) => {
                if value & 1 == 1 {
                    w[i >> 6] ^= 1u64 << (i & 63);
                }
            }
            Storage::Bytes(b) => b[i] = ((b[i] as u32 + value % self.p) % self.p) as u8,
        }
    }

    /// self += c * other
    pub fn add_scaled(&mut self, other: &FpVector, c: u32) {
        assert_eq!(self.len, other.len, "length mismatch");
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        match (&mut self.data, &other.data) {
            (Storage::Packed(a), Storage::Packed(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
            (Storage::Bytes(a), Storage::Bytes(b)) => {
                if p == 2 {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x ^= *y;
                    }
                } else {
                    for (x, &y) in a.iter_mut().zip(b) {
                        if y != 0 {
                            *x = ((*x as u32 + c * y as u32) % p) as u8;
                        }
                    }
                }
            }
            _ => panic!("mixed vector layouts"),
        }
    }

    pub fn add(&mut self, other: &FpVector) {
        self.add_scaled(other, 1);
    }

    pub fn scale(&mut self, c: u32) {
        let p = self.p;
        let c = c % p;
        match &mut self.data {
            Storage::Packed(w) => {
                if c == 0 {
                    w.iter_mut().for_each(|x| *x = 0);
                }
            }
            Storage::Bytes(b) => b.iter_mut().for_each(|x| *x = ((*x as u32 * c) % p) as u8),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Packed(w) => w.iter().all(|&x| x == 0),
            Storage::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        match &self.data {
            Storage::Packed(w) => w
                .iter()
                .enumerate()
                .find(|(_, &x)| x != 0)
                .map(|(k, &x)| k * 64 + x.trailing_zeros() as usize),
            Storage::Bytes(b) => b.iter().position(|&x| x != 0),
        }
    }

    /// Nonzero entries in increasing index order.
    pub fn iter_nonzero(&self) -> Box<dyn Iterator<Item = (usize, u32)> + '_> {
        match &self.data {
            Storage::Packed(w) => Box::new(w.iter().enumerate().flat_map(|(k, &word)| {
                let mut bits = word;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let t = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some((k * 64 + t, 1))
                    }
                })
            })),
            Storage::Bytes(b) => {
                Box::new(b.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x as u32)))
            }
        }
    }

    pub fn count_nonzero(&self) -> usize {
        match &self.data {
            Storage::Packed(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Storage::Bytes(b) => b.iter().filter(|&&x| x != 0).count(),
        }
    }

    pub fn entries(&self) -> Vec<u32> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn dot(&self, other: &FpVector) -> u32 {
        assert_eq!(self.len, other.len);
        match (&self.data, &other.data) {
            (Storage::Packed(a), Storage::Packed(b)) => {
                let ones: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
                ones & 1
            }
            _ => {
                let p = self.p as u64;
                let mut acc = 0u64;
                for (i, c) in self.iter_nonzero() {
                    acc += c as u64 * other.get(i) as u64;
                }
                (acc % p) as u32
            }
        }
    }

    /// Sum of all entries.
    pub fn entry_sum(&self) -> u32 {
        match &self.data {
            Storage::Packed(w) => w.iter().map(|x| x.count_ones()).sum::<u32>() & 1,
            Storage::Bytes(b) => (b.iter().map(|&x| x as u64).sum::<u64>() % self.p as u64) as u32,
        }
    }

    /// Entries `start..start+len` as a new vector.
    pub fn slice(&self, start: usize, len: usize) -> FpVector {
        let mut out = if self.is_packed() { Self::zero(self.p, len) } else { Self::zero_generic(self.p, len) };
        for i in 0..len {
            let c = self.get(start + i);
            if c != 0 {
                out.set(i, c);
            }
        }
        out
    }

    /// Raw words of a packed vector (for serialization).
    pub fn words(&self) -> Option<&[u64]> {
        match &self.data {
            Storage::Packed(w) => Some(w),
            Storage::Bytes(_) => None,
        }
    }

    pub fn from_words(len: usize, words: Vec<u64>) -> Self {
        assert_eq!(words.len(), len.div_ceil(64));
        FpVector { p: 2, len, data: Storage::Packed(words) }
    }
}

impl fmt::Debug for FpVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            if i > 0 && self.p > 2 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(mul_mod(a, inv_mod(a, p), p), 1);
            }
        }
    }

    #[test]
    fn packed_ops_cross_words() {
        let mut v = FpVector::zero(2, 130);
        v.set(3, 1);
        v.set(64, 1);
        v.set(129, 1);
        assert_eq!(v.iter_nonzero().map(|x| x.0).collect::<Vec<_>>(), vec![3, 64, 129]);
        assert_eq!(v.first_nonzero(), Some(3));
        let w = v.clone();
        v.add(&w);
        assert!(v.is_zero());
    }

    #[test]
    fn generic_arithmetic() {
        let mut v = FpVector::from_entries(5, &[1, 2, 3]);
        let w = FpVector::from_entries(5, &[4, 4, 4]);
        v.add_scaled(&w, 2);
        assert_eq!(v.entries(), vec![4, 0, 1]);
        assert_eq!(v.dot(&w), (16 + 4) % 5);
    }
}
