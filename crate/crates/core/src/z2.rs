//! Bit-packed vectors and incremental Gaussian elimination over Z₂.
//!
//! This is the linear-algebra substrate for everything combinatorial in the
//! crate: cycle tests, circuit extraction, matroid connectivity and the
//! brute-force enumeration oracle all reduce to rank and fundamental-circuit
//! queries on boundary matrices over Z₂.

/// A dense bit vector. Bit `i` lives in word `i / 64`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_set_bit(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * 64 + b)
                }
            })
        })
    }
}

struct Row {
    vec: BitVec,
    pivot: usize,
    /// Expression of `vec` as a sum of inserted columns, by insertion id.
    tag: BitVec,
}

/// Incremental eliminator that remembers, for every dependent insertion, a
/// combination of previously inserted columns summing to it.
#[derive(Default)]
pub struct Eliminator {
    rows: Vec<Row>,
    inserted: usize,
}

impl Eliminator {
    pub fn new() -> Self {
        Eliminator::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn inserted(&self) -> usize {
        self.inserted
    }

    /// Inserts a column. Returns `None` if it was independent of the span so
    /// far; otherwise returns the support (over insertion ids, including this
    /// one) of a zero-sum combination, i.e. the fundamental circuit of the
    /// column against the greedily maintained basis.
    pub fn insert(&mut self, mut vec: BitVec, tag_capacity: usize) -> Option<BitVec> {
        let id = self.inserted;
        self.inserted += 1;
        let mut tag = BitVec::zeros(tag_capacity.max(id + 1));
        tag.set(id);
        loop {
            match vec.lowest_set_bit() {
                None => return Some(tag),
                Some(p) => match self.rows.iter().find(|r| r.pivot == p) {
                    Some(r) => {
                        vec.xor_assign(&r.vec);
                        tag.xor_assign(&r.tag);
                    }
                    None => {
                        self.rows.push(Row {
                            vec,
                            pivot: p,
                            tag,
                        });
                        return None;
                    }
                },
            }
        }
    }

    /// Reduces `vec` against the basis without inserting it. Returns the
    /// combination of basis columns used when the reduction reaches zero.
    pub fn express(&self, mut vec: BitVec) -> Option<BitVec> {
        let mut tag = BitVec::zeros(self.inserted.max(1));
        loop {
            match vec.lowest_set_bit() {
                None => return Some(tag),
                Some(p) => {
                    let r = self.rows.iter().find(|r| r.pivot == p)?;
                    vec.xor_assign(&r.vec);
                    tag.xor_assign(&r.tag);
                },
            }
        }
    }
}

/// Rank of a set of Z₂ columns.
pub fn rank(columns: &[BitVec]) -> usize {
    let mut e = Eliminator::new();
    for c in columns {
        e.insert(c.clone(), columns.len());
    }
    e.rank()
}

/// A basis of the kernel of the matrix whose columns are `columns`; each
/// kernel vector is a support over column indices.
pub fn kernel_basis(columns: &[BitVec]) -> Vec<BitVec> {
    let mut e = Eliminator::new();
    let mut out = Vec::new();
    for c in columns {
        if let Some(dep) = e.insert(c.clone(), columns.len()) {
            out.push(dep);
        }
    }
    out
}
