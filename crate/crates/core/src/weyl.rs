//! The symmetric group `S_n` as the Weyl group of `GL_n`.
//!
//! Permutations are kept in one-line notation, the single canonical
//! representation; reduced words, codes and coset data are derived from it.
//! Bruhat comparisons use the sorted-prefix criterion ("reordered to
//! increasing values"), which is quadratic instead of the exponential subword
//! search; the subword characterization survives as a test oracle.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A permutation of `{1, ..., n}` in one-line notation.
///
/// `images[i]` is `w(i+1)`; the window `n` is explicit and two permutations
/// with different windows are different values. Use [`Permutation::embed`]
/// for the stability embedding `S_n -> S_m` that fixes trailing points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<usize>,
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Permutation {
    /// Builds a permutation from one-line notation, validating bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotAPermutation(n));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The order-reversing permutation `w_o = (n, n-1, ..., 1)`.
    pub fn longest_element(n: usize) -> Self {
        Permutation {
            images: (1..=n).rev().collect(),
        }
    }

    /// The elementary transposition `s_i` exchanging `i` and `i+1`, inside `S_n`.
    pub fn simple(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i + 1 > n {
            return Err(Error::IndexOutOfRange(i, n.saturating_sub(1)));
        }
        let mut w = Self::identity(n);
        w.images.swap(i - 1, i);
        Ok(w)
    }

    /// The transposition `s_{ij}` exchanging `i` and `j`, inside `S_n`.
    pub fn transposition(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n || i == j {
            return Err(Error::IndexOutOfRange(i.max(j), n));
        }
        let mut w = Self::identity(n);
        w.images.swap(i - 1, j - 1);
        Ok(w)
    }

    pub fn window(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `w(i)` with `i` in `1..=n`.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// Smallest `m` with `w(i) = i` for all `i > m`.
    pub fn natural_window(&self) -> usize {
        let mut m = self.window();
        while m > 0 && self.images[m - 1] == m {
            m -= 1;
        }
        m
    }

    /// Stability embedding into `S_m`, fixing the trailing points.
    pub fn embed(&self, m: usize) -> Result<Self> {
        if m < self.natural_window() {
            return Err(Error::WindowMismatch(self.natural_window(), m));
        }
        let mut images = self.images.clone();
        images.truncate(self.natural_window());
        images.extend(images.len() + 1..=m);
        Ok(Permutation { images })
    }

    /// Group law `(self . other)(i) = self(other(i))`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.window() != other.window() {
            return Err(Error::WindowMismatch(self.window(), other.window()));
        }
        Ok(Permutation {
            images: other.images.iter().map(|&v| self.images[v - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.window()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Permutation { images }
    }

    /// Number of inversions; the dimension of the Schubert cell `C_w`.
    pub fn length(&self) -> usize {
        let n = self.window();
        let mut len = 0;
        for i in 0..n {
            for j in i + 1..n {
                if self.images[i] > self.images[j] {
                    len += 1;
                }
            }
        }
        len
    }

    /// Lehmer code: `c_i = #{j > i : w(j) < w(i)}`; sums to the length.
    pub fn code(&self) -> Vec<u32> {
        let n = self.window();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.images[j] < self.images[i]).count() as u32)
            .collect()
    }

    /// Reconstructs the unique permutation with the given Lehmer code, in the
    /// smallest window containing it. Trailing zeros in `code` are allowed.
    pub fn from_code(code: &[u32]) -> Self {
        let mut trimmed = code.to_vec();
        while trimmed.last() == Some(&0) {
            trimmed.pop();
        }
        let n = trimmed
            .iter()
            .enumerate()
            .map(|(i, &c)| i + 1 + c as usize)
            .max()
            .unwrap_or(0)
            .max(trimmed.len());
        let mut avail: Vec<usize> = (1..=n).collect();
        let mut images = Vec::with_capacity(n);
        for i in 0..n {
            let c = *trimmed.get(i).unwrap_or(&0) as usize;
            images.push(avail.remove(c));
        }
        Permutation { images }
    }

    /// Right product with `s_i`: swaps the entries in positions `i`, `i+1`.
    pub fn times_simple_right(&self, i: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, i);
        Permutation { images }
    }

    /// Right product with the transposition `s_{ij}`.
    pub fn times_transposition_right(&self, i: usize, j: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(i - 1, j - 1);
        Permutation { images }
    }

    /// Left product with `s_i`: swaps the values `i` and `i+1`.
    pub fn times_simple_left(&self, i: usize) -> Self {
        let images = self
            .images
            .iter()
            .map(|&v| {
                if v == i {
                    i + 1
                } else if v == i + 1 {
                    i
                } else {
                    v
                }
            })
            .collect();
        Permutation { images }
    }

    /// True iff `w(i) < w(i+1)` (so `l(w s_i) = l(w) + 1`).
    pub fn has_ascent(&self, i: usize) -> bool {
        self.images[i - 1] < self.images[i]
    }

    /// Bruhat order by the sorted-prefix criterion: `v <= w` iff for each
    /// `d`, the increasingly reordered prefix of `v` is entrywise at most
    /// the reordered prefix of `w`.
    pub fn bruhat_leq(v: &Self, w: &Self) -> Result<bool> {
        if v.window() != w.window() {
            return Err(Error::WindowMismatch(v.window(), w.window()));
        }
        let n = v.window();
        let mut vp: Vec<usize> = Vec::with_capacity(n);
        let mut wp: Vec<usize> = Vec::with_capacity(n);
        for d in 0..n {
            let iv = vp.partition_point(|&x| x < v.images[d]);
            vp.insert(iv, v.images[d]);
            let iw = wp.partition_point(|&x| x < w.images[d]);
            wp.insert(iw, w.images[d]);
            if vp.iter().zip(wp.iter()).any(|(a, b)| a > b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All `v` covered by `w`: `v <= w` with `l(v) = l(w) - 1`. Each cover is
    /// `w s_{ij}` for a transposition; returned sorted, with the `(i, j)` pair.
    pub fn covers_with_transpositions(&self) -> Vec<(Permutation, (usize, usize))> {
        let n = self.window();
        let len = self.length();
        let mut out = Vec::new();
        for i in 1..n {
            for j in i + 1..=n {
                if self.images[i - 1] > self.images[j - 1] {
                    let v = self.times_transposition_right(i, j);
                    if v.length() + 1 == len {
                        out.push((v, (i, j)));
                    }
                }
            }
        }
        out.sort();
        out
    }

    pub fn covers(&self) -> Vec<Permutation> {
        self.covers_with_transpositions()
            .into_iter()
            .map(|(v, _)| v)
            .collect()
    }

    /// Closed-form Moebius function of the Bruhat order:
    /// `(-1)^{l(w)-l(v)}` if `v <= w`, else `0`.
    pub fn mobius(v: &Self, w: &Self) -> Result<i64> {
        if Self::bruhat_leq(v, w)? {
            Ok(if (w.length() - v.length()) % 2 == 0 {
                1
            } else {
                -1
            })
        } else {
            Ok(0)
        }
    }

    /// One reduced word `(a_1, ..., a_l)` with `w = s_{a_1} ... s_{a_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        // Peel simple reflections off the right: a right descent i gives
        // w = (w s_i) s_i with l(w s_i) = l(w) - 1.
        let mut w = self.clone();
        let mut word = Vec::with_capacity(self.length());
        'outer: while !w.is_identity() {
            for i in 1..w.window() {
                if !w.has_ascent(i) {
                    w = w.times_simple_right(i);
                    word.push(i);
                    continue 'outer;
                }
            }
            unreachable!("non-identity permutation has a descent");
        }
        word.reverse();
        word
    }

    /// All reduced words of `w`, guarded by a hard count limit: the word
    /// count grows super-exponentially with the length.
    pub fn reduced_words(&self, limit: Option<usize>) -> Result<Vec<Vec<usize>>> {
        let cap = limit.unwrap_or(100_000);
        let mut out = Vec::new();
        let mut prefix = Vec::new();
        self.reduced_words_rec(&mut prefix, &mut out, cap)?;
        out.sort();
        Ok(out)
    }

    fn reduced_words_rec(
        &self,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<()> {
        if self.is_identity() {
            if out.len() >= cap {
                return Err(Error::WordLimitExceeded(cap));
            }
            out.push(prefix.clone());
            return Ok(());
        }
        // Left descents i (position of i after position of i+1) give
        // words starting with i: w = s_i (s_i w) with l(s_i w) = l(w) - 1.
        let inv = self.inverse();
        for i in 1..self.window() {
            if inv.images[i - 1] > inv.images[i] {
                prefix.push(i);
                self.times_simple_left(i)
                    .reduced_words_rec(prefix, out, cap)?;
                prefix.pop();
            }
        }
        Ok(())
    }

    /// `{i : s_i <= w}`, the support of `w` in the simple reflections.
    pub fn support(&self) -> BTreeSet<usize> {
        let n = self.window();
        (1..n)
            .filter(|&i| {
                let si = Permutation::simple(i, n).expect("i < n");
                Permutation::bruhat_leq(&si, self).expect("equal windows")
            })
            .collect()
    }

    /// Enumerates all of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut images: Vec<usize> = (1..=n).collect();
        loop {
            out.push(Permutation {
                images: images.clone(),
            });
            if !next_lex(&mut images) {
                break;
            }
        }
        out
    }

    /// All elements of the interval `[v, w]` in Bruhat order, sorted.
    pub fn interval(v: &Self, w: &Self) -> Result<Vec<Permutation>> {
        if !Self::bruhat_leq(v, w)? {
            return Err(Error::NotComparable);
        }
        let mut out: Vec<Permutation> = Self::all(v.window())
            .into_iter()
            .filter(|z| {
                Self::bruhat_leq(v, z).expect("equal windows")
                    && Self::bruhat_leq(z, w).expect("equal windows")
            })
            .collect();
        out.sort();
        Ok(out)
    }
}

fn next_lex(v: &mut [usize]) -> bool {
    let n = v.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// An integer weight `(lambda_1, ..., lambda_n)` of the diagonal torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight { entries }
    }

    /// `chi_d = (1^d, 0^{n-d})`; `chi_n` is the determinant weight.
    pub fn fundamental(d: usize, n: usize) -> Result<Self> {
        if d == 0 || d > n {
            return Err(Error::IndexOutOfRange(d, n));
        }
        let mut entries = vec![0; n];
        entries[..d].fill(1);
        Ok(Weight { entries })
    }

    /// `rho = chi_1 + ... + chi_{n-1} = (n-1, n-2, ..., 1, 0)`.
    pub fn rho(n: usize) -> Self {
        Weight {
            entries: (0..n).rev().map(|k| k as i64).collect(),
        }
    }

    /// The `i`-th coordinate weight `epsilon_i`.
    pub fn epsilon(i: usize, n: usize) -> Result<Self> {
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange(i, n));
        }
        let mut entries = vec![0; n];
        entries[i - 1] = 1;
        Ok(Weight { entries })
    }

    pub fn zero(n: usize) -> Self {
        Weight {
            entries: vec![0; n],
        }
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.entries.windows(2).all(|p| p[0] >= p[1])
    }

    pub fn is_regular_dominant(&self) -> bool {
        self.entries.windows(2).all(|p| p[0] > p[1])
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::WindowMismatch(self.len(), other.len()));
        }
        Ok(Weight {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn negate(&self) -> Self {
        Weight {
            entries: self.entries.iter().map(|a| -a).collect(),
        }
    }
}

/// A composition `(d_1, ..., d_m)` of the window, the type of a partial flag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Composition {
    parts: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>, window: usize) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.iter().sum::<usize>() != window {
            return Err(Error::InvalidComposition(parts, window));
        }
        Ok(Composition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn window(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Block starting offsets (0-based) paired with block sizes.
    fn blocks(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.parts.len());
        let mut start = 0;
        for &d in &self.parts {
            out.push((start, d));
            start += d;
        }
        out
    }

    /// The longest element `w_{0,P} = (w_{0,d_1}, ..., w_{0,d_m})` of `W_P`.
    pub fn parabolic_longest(&self) -> Permutation {
        let mut images = Vec::with_capacity(self.window());
        for (start, d) in self.blocks() {
            images.extend((start + 1..=start + d).rev());
        }
        Permutation { images }
    }

    /// Dimension of the partial flag variety: `sum_{i<j} d_i d_j`.
    pub fn flag_dimension(&self) -> usize {
        let p = &self.parts;
        let mut dim = 0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                dim += p[i] * p[j];
            }
        }
        dim
    }
}

/// Mode for parabolic coset representatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetMode {
    Minimal,
    Maximal,
}

/// Representative of the coset `w W_P`: minimal mode sorts each block of
/// values increasingly; maximal is the minimal representative times `w_{0,P}`.
pub fn coset_rep(w: &Permutation, ctype: &Composition, mode: CosetMode) -> Result<Permutation> {
    if ctype.window() != w.window() {
        return Err(Error::InvalidComposition(
            ctype.parts().to_vec(),
            w.window(),
        ));
    }
    let mut images = w.images().to_vec();
    for (start, d) in ctype.blocks() {
        let block = &mut images[start..start + d];
        block.sort_unstable();
        if mode == CosetMode::Maximal {
            block.reverse();
        }
    }
    Ok(Permutation { images })
}

/// The minimal representatives `W^P`, sorted.
pub fn minimal_coset_reps(ctype: &Composition) -> Vec<Permutation> {
    let n = ctype.window();
    let mut out: Vec<Permutation> = Permutation::all(n)
        .into_iter()
        .filter(|w| {
            ctype
                .blocks()
                .iter()
                .all(|&(start, d)| w.images()[start..start + d].windows(2).all(|p| p[0] < p[1]))
        })
        .collect();
    out.sort();
    out
}

/// Hasse diagram of a restriction of the Bruhat order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BruhatPoset {
    pub elements: Vec<Permutation>,
    /// Cover pairs `(v, w)` with `v` covered by `w`, sorted.
    pub covers: Vec<(Permutation, Permutation)>,
}

impl BruhatPoset {
    /// The full Bruhat order on `S_n`.
    pub fn full(n: usize) -> Self {
        let mut elements = Permutation::all(n);
        elements.sort();
        let mut covers = Vec::new();
        for w in &elements {
            for v in w.covers() {
                covers.push((v, w.clone()));
            }
        }
        covers.sort();
        BruhatPoset { elements, covers }
    }

    /// Nodes labeled by one-line notation; edges point from the covered
    /// element up to the covering one. Byte-stable for fixed input.
    pub fn to_dot(&self, name: &str) -> String {
        let label = |w: &Permutation| {
            w.images()
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut s = String::new();
        s.push_str(&format!("digraph \"{name}\" {{\n  rankdir=BT;\n"));
        let mut elements = self.elements.clone();
        elements.sort_by_key(|w| (w.length(), w.images().to_vec()));
        for w in &elements {
            s.push_str(&format!("  \"{}\";\n", label(w)));
        }
        for (v, w) in &self.covers {
            s.push_str(&format!("  \"{}\" -> \"{}\";\n", label(v), label(w)));
        }
        s.push_str("}\n");
        s
    }
}
