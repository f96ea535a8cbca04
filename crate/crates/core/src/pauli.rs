//! Phase-free Pauli letters and sparse Pauli strings.
//!
//! Letters carry the 2-bit symplectic code (`x` in bit 0, `z` in bit 1), so
//! the conflict test on a single qubit is a comparison of two small integers.
//! Qubit indices are 0-based.

use std::fmt;

use crate::error::PauliError;

/// Qubit index. Indices are stored as 32-bit values.
pub type Qubit = u32;

/// One of the four one-qubit Pauli matrices, phase ignored.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum PauliLetter {
    I = 0b00,
    X = 0b01,
    Z = 0b10,
    Y = 0b11,
}

impl PauliLetter {
    /// The three non-identity letters.
    pub const NON_IDENTITY: [PauliLetter; 3] = [PauliLetter::X, PauliLetter::Y, PauliLetter::Z];

    /// 2-bit code: bit 0 is the `x` component, bit 1 the `z` component.
    #[inline]
    pub const fn code(self) -> u8 {
        self as u8
    }

    #[inline]
    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0b00 => Some(PauliLetter::I),
            0b01 => Some(PauliLetter::X),
            0b10 => Some(PauliLetter::Z),
            0b11 => Some(PauliLetter::Y),
            _ => None,
        }
    }

    #[inline]
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' => Some(PauliLetter::I),
            'X' => Some(PauliLetter::X),
            'Y' => Some(PauliLetter::Y),
            'Z' => Some(PauliLetter::Z),
            _ => None,
        }
    }

    #[inline]
    pub const fn as_char(self) -> char {
        match self {
            PauliLetter::I => 'I',
            PauliLetter::X => 'X',
            PauliLetter::Y => 'Y',
            PauliLetter::Z => 'Z',
        }
    }

    #[inline]
    pub const fn is_identity(self) -> bool {
        matches!(self, PauliLetter::I)
    }

    #[inline]
    pub const fn x_bit(self) -> bool {
        self.code() & 0b01 != 0
    }

    #[inline]
    pub const fn z_bit(self) -> bool {
        self.code() & 0b10 != 0
    }

    /// The two non-identity letters different from `self`.
    ///
    /// For the identity this returns `None`: every non-identity letter would
    /// differ from it, but none of them conflicts with it.
    pub fn others(self) -> Option<[PauliLetter; 2]> {
        match self {
            PauliLetter::I => None,
            PauliLetter::X => Some([PauliLetter::Y, PauliLetter::Z]),
            PauliLetter::Y => Some([PauliLetter::X, PauliLetter::Z]),
            PauliLetter::Z => Some([PauliLetter::X, PauliLetter::Y]),
        }
    }

    /// True when both letters are non-identity and differ.
    #[inline]
    pub fn conflicts_with(self, other: PauliLetter) -> bool {
        let (a, b) = (self.code(), other.code());
        a != 0 && b != 0 && a != b
    }
}

impl fmt::Display for PauliLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A Pauli string stored by its support: `(qubit, letter)` pairs sorted by
/// strictly ascending qubit, with no identity letters.
///
/// The total qubit count is not part of the value.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SparsePauliString {
    entries: Vec<(Qubit, PauliLetter)>,
}

impl SparsePauliString {
    /// The weight-0 string.
    pub fn identity() -> Self {
        Self::default()
    }

    /// Canonicalize raw `(index, letter)` pairs.
    ///
    /// Identity letters are dropped and the result is sorted. Repeating an
    /// index with the same letter is accepted; repeating it with two
    /// different non-identity letters is rejected.
    pub fn normalize<I>(raw: I) -> Result<Self, PauliError>
    where
        I: IntoIterator<Item = (i64, PauliLetter)>,
    {
        let mut entries = Vec::new();
        for (index, letter) in raw {
            if index < 0 {
                return Err(PauliError::NegativeIndex(index));
            }
            let qubit = Qubit::try_from(index).map_err(|_| PauliError::IndexOutOfRange(index))?;
            if !letter.is_identity() {
                entries.push((qubit, letter));
            }
        }
        entries.sort_unstable();
        entries.dedup();
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(PauliError::DuplicateIndex(w[0].0));
        }
        Ok(Self { entries })
    }

    /// Build from entries that are already canonical.
    pub fn from_sorted(entries: Vec<(Qubit, PauliLetter)>) -> Result<Self, PauliError> {
        for w in entries.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(PauliError::DuplicateIndex(w[1].0));
            }
        }
        if entries.iter().any(|&(_, l)| l.is_identity()) {
            return Err(PauliError::IdentityEntry);
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[(Qubit, PauliLetter)] {
        &self.entries
    }

    pub fn weight(&self) -> usize {
        self.entries.len()
    }

    pub fn support(&self) -> impl Iterator<Item = Qubit> + '_ {
        self.entries.iter().map(|&(q, _)| q)
    }

    pub fn max_index(&self) -> Option<Qubit> {
        self.entries.last().map(|&(q, _)| q)
    }

    /// Letter on `qubit`; `I` outside the support.
    pub fn letter(&self, qubit: Qubit) -> PauliLetter {
        match self.entries.binary_search_by_key(&qubit, |&(q, _)| q) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => PauliLetter::I,
        }
    }

    pub fn is_local(&self, k: usize) -> bool {
        self.weight() <= k
    }
}

impl fmt::Display for SparsePauliString {
    /// Sparse rendering, e.g. `X0 Z3`. The weight-0 string renders as `I`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "I");
        }
        for (pos, (q, l)) in self.entries.iter().enumerate() {
            if pos > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}{q}")?;
        }
        Ok(())
    }
}

/// Qubits where both strings act non-trivially with different letters.
///
/// Merge over the two sorted entry lists; `O(wt(p) + wt(q))`.
pub fn conflict_set(p: &SparsePauliString, q: &SparsePauliString) -> Vec<Qubit> {
    let mut out = Vec::new();
    merge_shared(p, q, |qubit, a, b| {
        if a != b {
            out.push(qubit);
        }
    });
    out
}

/// `p` and `q` anticommute iff their conflict set has odd size.
pub fn anticommutes(p: &SparsePauliString, q: &SparsePauliString) -> bool {
    let mut odd = false;
    merge_shared(p, q, |_, a, b| odd ^= a != b);
    odd
}

#[inline]
fn merge_shared<F>(p: &SparsePauliString, q: &SparsePauliString, mut on_shared: F)
where
    F: FnMut(Qubit, PauliLetter, PauliLetter),
{
    let (a, b) = (&p.entries, &q.entries);
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                on_shared(a[i].0, a[i].1, b[j].1);
                i += 1;
                j += 1;
            }
        }
    }
}

/// Binary symplectic encoding of a Pauli string. Both bit vectors are stored
/// sparsely as ascending lists of set positions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SymplecticPair {
    pub x: Vec<Qubit>,
    pub z: Vec<Qubit>,
}

impl SymplecticPair {
    /// Dense rendering as two bit vectors of length `n`.
    pub fn to_dense(&self, n: usize) -> (Vec<bool>, Vec<bool>) {
        let mut x = vec![false; n];
        let mut z = vec![false; n];
        for &q in &self.x {
            x[q as usize] = true;
        }
        for &q in &self.z {
            z[q as usize] = true;
        }
        (x, z)
    }
}

/// `X -> (1,0)`, `Z -> (0,1)`, `Y -> (1,1)`, absent `-> (0,0)`.
pub fn to_symplectic(p: &SparsePauliString) -> SymplecticPair {
    let mut out = SymplecticPair::default();
    for &(q, l) in p.entries() {
        if l.x_bit() {
            out.x.push(q);
        }
        if l.z_bit() {
            out.z.push(q);
        }
    }
    out
}

/// The symplectic form `x·z' + z·x' (mod 2)`.
pub fn symplectic_anticommutes(a: &SymplecticPair, b: &SymplecticPair) -> bool {
    (intersection_size(&a.x, &b.z) + intersection_size(&a.z, &b.x)) % 2 == 1
}

fn intersection_size(a: &[Qubit], b: &[Qubit]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            i += 1;
        } else if a[i] > b[j] {
            j += 1;
        } else {
            n += 1;
            i += 1;
            j += 1;
        }
    }
    n
}
