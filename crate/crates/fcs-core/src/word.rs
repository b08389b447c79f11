//! Words over the alphabet {0..d-1} and tables of Kraus-operator products.

use crate::error::{FcsError, Result};
use crate::mat::{identity, CMat};

/// A finite word; letters index the Kraus family (0-based). Empty allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Site-order reversal (i_1..i_n ↦ i_n..i_1); an involution.
    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

/// All products v_I = v_{i_1}···v_{i_m} for |I| ≤ max_len, indexed by the
/// base-d enumeration (length-major, lexicographic within a length).
pub struct WordTable {
    pub d: usize,
    pub max_len: usize,
    /// offsets[l] = index of the first word of length l
    offsets: Vec<usize>,
    products: Vec<CMat>,
}

/// Number of words of length ≤ max_len over d letters.
pub fn word_count(d: usize, max_len: usize) -> usize {
    let mut total = 0usize;
    let mut pow = 1usize;
    for _ in 0..=max_len {
        total += pow;
        pow = pow.saturating_mul(d);
    }
    total
}

impl WordTable {
    /// Build the product table. `cap` bounds the total number of entries.
    pub fn build(kraus: &[CMat], max_len: usize, cap: usize) -> Result<WordTable> {
        let d = kraus.len();
        let k = kraus[0].nrows();
        let total = word_count(d, max_len);
        if total > cap {
            return Err(FcsError::Cap(format!(
                "word table with {total} entries exceeds cap {cap}"
            )));
        }
        let mut offsets = Vec::with_capacity(max_len + 2);
        let mut products: Vec<CMat> = Vec::with_capacity(total);
        offsets.push(0);
        products.push(identity(k));
        let mut prev_start = 0usize;
        let mut prev_count = 1usize;
        for _l in 1..=max_len {
            offsets.push(products.len());
            let start = products.len();
            for p in 0..prev_count {
                let base = products[prev_start + p].clone();
                for v in kraus {
                    products.push(base.dot(v));
                }
            }
            prev_start = start;
            prev_count = prev_count * d;
        }
        offsets.push(products.len());
        Ok(WordTable {
            d,
            max_len,
            offsets,
            products,
        })
    }

    pub fn index(&self, w: &Word) -> usize {
        debug_assert!(w.len() <= self.max_len);
        let mut idx = 0usize;
        for &c in &w.0 {
            idx = idx * self.d + c;
        }
        self.offsets[w.len()] + idx
    }

    pub fn product(&self, w: &Word) -> &CMat {
        &self.products[self.index(w)]
    }

    /// Iterate (word, product) over all words of the given length.
    pub fn words_of_len(&self, l: usize) -> impl Iterator<Item = (Word, &CMat)> {
        let d = self.d;
        let start = self.offsets[l];
        let count = if l == 0 { 1 } else { d.pow(l as u32) };
        (0..count).map(move |i| {
            let mut letters = vec![0usize; l];
            let mut x = i;
            for slot in (0..l).rev() {
                letters[slot] = x % d;
                x /= d;
            }
            (Word(letters), &self.products[start + i])
        })
    }

    /// Iterate over all words of length ≤ max_len.
    pub fn all_words(&self) -> impl Iterator<Item = (Word, &CMat)> {
        (0..=self.max_len).flat_map(move |l| self.words_of_len(l))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::frob_norm;
    use crate::zoo;

    #[test]
    fn reversal_is_involution() {
        let w = Word(vec![0, 2, 1, 1]);
        assert_eq!(w.reversed().reversed(), w);
        assert_eq!(w.reversed().len(), w.len());
        assert_eq!(Word::empty().reversed(), Word::empty());
    }

    #[test]
    fn empty_word_is_identity() {
        let sys = zoo::aklt_system();
        let table = WordTable::build(&sys.kraus, 2, 1000).unwrap();
        assert_eq!(table.product(&Word::empty()), &identity(2));
    }

    #[test]
    fn products_compose() {
        let sys = zoo::aklt_system();
        let table = WordTable::build(&sys.kraus, 4, 100_000).unwrap();
        // v_{IJ} = v_I v_J for all |I|,|J| <= 2
        for (wi, pi) in table.all_words().filter(|(w, _)| w.len() <= 2) {
            for (wj, pj) in table.all_words().filter(|(w, _)| w.len() <= 2) {
                let cat = wi.concat(&wj);
                let direct = table.product(&cat);
                let err = frob_norm(&(direct - &pi.dot(pj)));
                assert!(err < 1e-14);
            }
        }
    }

    #[test]
    fn aklt_xy_product_is_iz_over_3() {
        // v_x v_y = σ_x σ_y / 3 = i σ_z / 3
        let sys = zoo::aklt_system();
        let table = WordTable::build(&sys.kraus, 2, 1000).unwrap();
        let p = table.product(&Word(vec![0, 1]));
        let expect = zoo::pauli(2).mapv(|z| z * crate::mat::I / 3.0);
        assert!(frob_norm(&(p - &expect)) < 1e-15);
    }

    #[test]
    fn product_system_words() {
        // v_0 = 1, v_1 = 0 on a 1-dim bond space
        let sys = zoo::product_system();
        let table = WordTable::build(&sys.kraus, 3, 1000).unwrap();
        for (w, p) in table.all_words() {
            let expect = if w.0.iter().any(|&c| c == 1) { 0.0 } else { 1.0 };
            assert!((p[(0, 0)].re - expect).abs() < 1e-15);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let sys = zoo::aklt_system();
        assert!(matches!(
            WordTable::build(&sys.kraus, 12, 1000),
            Err(crate::FcsError::Cap(_))
        ));
    }
}
