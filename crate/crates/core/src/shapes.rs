//! Partitions in a rectangle, Grassmannian permutations, ribbons (rim
//! hooks), and the indexing combinatorics connecting them.
//!
//! Row indices are 1-based everywhere. Partitions carry exactly `k` parts
//! with explicit trailing zeros, which keeps row anchors unambiguous.

use std::fmt;

use crate::error::Error;

/// Ambient rank `n` and parabolic position `k` (so shapes live in the
/// `k x (n-k)` rectangle).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GrassSetting {
    pub n: usize,
    pub k: usize,
}

impl GrassSetting {
    pub fn new(n: usize, k: usize) -> Result<Self, Error> {
        if n == 0 || k > n {
            return Err(Error::Domain(format!("invalid setting n={n}, k={k}")));
        }
        Ok(GrassSetting { n, k })
    }

    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    /// Number of boxes of the full rectangle.
    pub fn capacity(&self) -> usize {
        self.k * (self.n - self.k)
    }
}

/// Weakly decreasing sequence of exactly `k` nonnegative parts (trailing
/// zeros kept), confined to the `k x (n-k)` rectangle of its setting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(pub Vec<u32>);

impl Partition {
    pub fn new(setting: GrassSetting, mut parts: Vec<u32>) -> Result<Self, Error> {
        if parts.len() > setting.k {
            return Err(Error::Domain(format!(
                "partition has {} parts but k = {}",
                parts.len(),
                setting.k
            )));
        }
        parts.resize(setting.k, 0);
        let p = Partition(parts);
        if !p.0.windows(2).all(|w| w[0] >= w[1]) {
            return Err(Error::Domain(format!("parts not weakly decreasing: {p}")));
        }
        if p.0.first().copied().unwrap_or(0) as usize > setting.cols() {
            return Err(Error::Domain(format!(
                "partition {p} does not fit the {}x{} rectangle",
                setting.k,
                setting.cols()
            )));
        }
        Ok(p)
    }

    pub fn empty(setting: GrassSetting) -> Self {
        Partition(vec![0; setting.k])
    }

    pub fn full(setting: GrassSetting) -> Self {
        Partition(vec![setting.cols() as u32; setting.k])
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// 1-based row access; rows past the last part read as zero.
    pub fn part(&self, row: usize) -> u32 {
        if row == 0 || row > self.0.len() {
            0
        } else {
            self.0[row - 1]
        }
    }

    pub fn contains(&self, other: &Partition) -> bool {
        (1..=self.0.len().max(other.0.len())).all(|r| self.part(r) >= other.part(r))
    }

    /// Complement in the rectangle: `dual(λ)_{k+1-i} = n-k-λ_i`.
    pub fn dual(&self, setting: GrassSetting) -> Partition {
        let c = setting.cols() as u32;
        Partition(self.0.iter().rev().map(|&p| c - p).collect())
    }

    /// Conjugate shape, not confined to any rectangle.
    pub fn conjugate_parts(&self) -> Vec<u32> {
        conjugate_parts(&self.0)
    }

    /// Diagonal labels `{λ_i + k + 1 - i : 1 <= i <= k}` of the rows.
    pub fn row_labels(&self, setting: GrassSetting) -> Vec<u32> {
        (1..=setting.k)
            .map(|i| self.part(i) + (setting.k + 1 - i) as u32)
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}]",
            self.0
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

pub fn parse_partition(setting: GrassSetting, s: &str) -> Result<Partition, Error> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    let parts = if s.is_empty() {
        Vec::new()
    } else {
        s.split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    Partition::new(setting, parts)
}

/// Conjugate of an arbitrary weakly decreasing sequence.
pub fn conjugate_parts(parts: &[u32]) -> Vec<u32> {
    let max = parts.first().copied().unwrap_or(0);
    (1..=max)
        .map(|j| parts.iter().filter(|&&p| p >= j).count() as u32)
        .collect()
}

/// All partitions in the rectangle, ordered by (size, parts) so output is
/// deterministic and graded.
pub fn partitions_in_rectangle(setting: GrassSetting) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; setting.k];
    fn rec(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, row: usize, max: u32) {
        if row == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max {
            cur[row] = v;
            rec(out, cur, row + 1, v);
        }
    }
    let mut raw = Vec::new();
    rec(&mut raw, &mut cur, 0, setting.cols() as u32);
    for parts in raw {
        out.push(Partition(parts));
    }
    out.sort_by_key(|p| (p.size(), p.0.clone()));
    out
}

/// Element of the symmetric group in one-line notation (1-based values).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u8>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u8).collect())
    }

    pub fn longest(n: usize) -> Self {
        Permutation((1..=n as u8).rev().collect())
    }

    pub fn new(images: Vec<u8>) -> Result<Self, Error> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &v in &images {
            if v == 0 || v as usize > n || seen[v as usize] {
                return Err(Error::Domain(format!("invalid one-line notation {images:?}")));
            }
            seen[v as usize] = true;
        }
        Ok(Permutation(images))
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// 1-based application.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation(inv)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&v| self.0[v as usize - 1]).collect())
    }

    /// Coxeter length = inversion count.
    pub fn length(&self) -> usize {
        let mut l = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    l += 1;
                }
            }
        }
        l
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// `w * s_i` (swap positions i, i+1). Returns the product and whether
    /// the length went up.
    pub fn mul_right_s(&self, i: usize) -> (Permutation, bool) {
        let mut v = self.0.clone();
        v.swap(i - 1, i);
        let up = self.0[i - 1] < self.0[i];
        (Permutation(v), up)
    }

    /// `s_i * w` (swap values i, i+1). Returns the product and whether the
    /// length went up.
    pub fn mul_left_s(&self, i: usize) -> (Permutation, bool) {
        let v = self
            .0
            .iter()
            .map(|&x| {
                if x as usize == i {
                    (i + 1) as u8
                } else if x as usize == i + 1 {
                    i as u8
                } else {
                    x
                }
            })
            .collect();
        let up = self.inverse().0[i - 1] < self.inverse().0[i];
        (Permutation(v), up)
    }

    pub fn from_word(n: usize, word: &[usize]) -> Permutation {
        let mut w = Permutation::identity(n);
        for &i in word {
            w = w.mul_right_s(i).0;
        }
        w
    }

    /// Reduced word by repeatedly peeling the smallest right descent.
    /// Reading the result left to right gives `w = s_{i_1} ... s_{i_l}`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut rev = Vec::new();
        'outer: loop {
            for i in 1..w.n() {
                if w.0[i - 1] > w.0[i] {
                    rev.push(i);
                    w = w.mul_right_s(i).0;
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// Alternative reduced word by peeling the smallest left descent; used
    /// to check reduced-word independence of rewriting.
    pub fn reduced_word_left(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            let inv = w.inverse();
            for i in 1..w.n() {
                if inv.0[i - 1] > inv.0[i] {
                    word.push(i);
                    w = w.mul_left_s(i).0;
                    continue 'outer;
                }
            }
            break;
        }
        word
    }

    /// Membership in the parabolic subgroup `S_k x S_{n-k}`.
    pub fn in_parabolic(&self, k: usize) -> bool {
        self.0[..k].iter().all(|&v| v as usize <= k)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.0 {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            write!(
                f,
                "{}",
                self.0
                    .iter()
                    .map(|v| v.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = Vec::new();
    let mut used = vec![false; n + 1];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation(cur.clone()));
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// Elements of `S_k x S_{n-k}` (block permutations), in a deterministic order.
pub fn parabolic_elements(setting: GrassSetting) -> Vec<Permutation> {
    let k = setting.k;
    let n = setting.n;
    let firsts = all_permutations(k);
    let seconds = all_permutations(n - k);
    let mut out = Vec::new();
    for a in &firsts {
        for b in &seconds {
            let mut v: Vec<u8> = a.0.clone();
            v.extend(b.0.iter().map(|&x| x + k as u8));
            out.push(Permutation(v));
        }
    }
    out
}

/// Longest element of `S_k x S_{n-k}`.
pub fn parabolic_longest(setting: GrassSetting) -> Permutation {
    let mut v: Vec<u8> = (1..=setting.k as u8).rev().collect();
    v.extend((setting.k as u8 + 1..=setting.n as u8).rev());
    Permutation(v)
}

/// `d = C(k,2) + C(n-k,2)`, the length of the longest parabolic element.
pub fn parabolic_top_length(setting: GrassSetting) -> usize {
    let k = setting.k;
    let m = setting.n - setting.k;
    k * (k - 1) / 2 + m * (m - 1) / 2
}

/// The Grassmannian permutation `w_λ`, defined by
/// `w_λ(k+1-i) = λ_i + k + 1 - i` with the remaining values increasing.
pub fn grassmannian_perm(setting: GrassSetting, lambda: &Partition) -> Permutation {
    let k = setting.k;
    let n = setting.n;
    let mut images = vec![0u8; n];
    for i in 1..=k {
        images[k - i] = (lambda.part(i) as usize + k + 1 - i) as u8;
    }
    let used: std::collections::BTreeSet<u8> = images.iter().copied().filter(|&v| v > 0).collect();
    let mut rest: Vec<u8> = (1..=n as u8).filter(|v| !used.contains(v)).collect();
    rest.sort();
    let mut it = rest.into_iter();
    for slot in images.iter_mut() {
        if *slot == 0 {
            *slot = it.next().unwrap();
        }
    }
    Permutation(images)
}

/// Unique parabolic decomposition `w = w_λ v` with `v` in `S_k x S_{n-k}`.
/// Returns `(λ, v)`.
pub fn parabolic_decompose(setting: GrassSetting, w: &Permutation) -> (Partition, Permutation) {
    let k = setting.k;
    let mut first: Vec<u8> = w.0[..k].to_vec();
    let mut last: Vec<u8> = w.0[k..].to_vec();
    first.sort();
    last.sort();
    let mut images = first;
    images.extend(last);
    let w_lambda = Permutation(images);
    let lambda = Partition(
        (1..=k)
            .map(|i| w_lambda.0[k - i] as u32 - (k + 1 - i) as u32)
            .collect(),
    );
    let v = w_lambda.inverse().compose(w);
    (lambda, v)
}

/// The partition `Gr(w)` of the parabolic decomposition.
pub fn gr_of(setting: GrassSetting, w: &Permutation) -> Partition {
    parabolic_decompose(setting, w).0
}

/// The column reduced word of `w_λ`:
/// `s_1^{[λ_k]} s_2^{[λ_{k-1}]} ... s_k^{[λ_1]}`, where
/// `s_i^{[j]] = s_{i+j-1} ... s_{i+1} s_i`.
pub fn column_word(setting: GrassSetting, lambda: &Partition) -> Vec<usize> {
    let k = setting.k;
    let mut word = Vec::new();
    for b in 1..=k {
        let j = lambda.part(k + 1 - b) as usize;
        for s in (b..b + j).rev() {
            word.push(s);
        }
    }
    word
}

/// A ribbon (rim hook, border strip): a connected nonempty skew shape
/// `outer/inner` with no 2x2 square, plus its cached statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ribbon {
    pub inner: Partition,
    pub outer: Partition,
    /// 1-based row of the head (top-right box).
    pub head_row: usize,
    /// 1-based row of the tail (bottom-left box).
    pub tail_row: usize,
    /// Number of rows.
    pub ht: u32,
    /// Number of columns.
    pub wd: u32,
    /// Diagonal label of the head: `outer_{head_row} + k + 1 - head_row`.
    pub h_stat: u32,
    /// Diagonal label of the tail: `inner_{tail_row} + k + 1 - tail_row`.
    pub t_stat: u32,
}

impl Ribbon {
    pub fn boxes(&self) -> Vec<(usize, u32)> {
        skew_boxes(&self.inner, &self.outer)
    }

    pub fn size(&self) -> u32 {
        self.outer.size() - self.inner.size()
    }
}

/// Boxes of `outer/inner` as (row, column) pairs, both 1-based.
pub fn skew_boxes(inner: &Partition, outer: &Partition) -> Vec<(usize, u32)> {
    let rows = outer.0.len().max(inner.0.len());
    let mut out = Vec::new();
    for r in 1..=rows {
        for c in inner.part(r) + 1..=outer.part(r) {
            out.push((r, c));
        }
    }
    out
}

fn is_connected(boxes: &[(usize, u32)]) -> bool {
    if boxes.is_empty() {
        return false;
    }
    let set: std::collections::HashSet<(usize, u32)> = boxes.iter().copied().collect();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![boxes[0]];
    seen.insert(boxes[0]);
    while let Some((r, c)) = stack.pop() {
        let mut neighbors = vec![(r + 1, c), (r, c + 1)];
        if r > 1 {
            neighbors.push((r - 1, c));
        }
        if c > 1 {
            neighbors.push((r, c - 1));
        }
        for nb in neighbors {
            if set.contains(&nb) && seen.insert(nb) {
                stack.push(nb);
            }
        }
    }
    seen.len() == boxes.len()
}

fn has_two_by_two(boxes: &[(usize, u32)]) -> bool {
    let set: std::collections::HashSet<(usize, u32)> = boxes.iter().copied().collect();
    boxes.iter().any(|&(r, c)| {
        set.contains(&(r + 1, c)) && set.contains(&(r, c + 1)) && set.contains(&(r + 1, c + 1))
    })
}

/// If `outer/inner` is a ribbon, build it with its statistics.
pub fn ribbon_between(
    setting: GrassSetting,
    inner: &Partition,
    outer: &Partition,
) -> Option<Ribbon> {
    if !outer.contains(inner) {
        return None;
    }
    let boxes = skew_boxes(inner, outer);
    if boxes.is_empty() || !is_connected(&boxes) || has_two_by_two(&boxes) {
        return None;
    }
    let head_row = boxes.iter().map(|&(r, _)| r).min().unwrap();
    let tail_row = boxes.iter().map(|&(r, _)| r).max().unwrap();
    let min_col = boxes.iter().map(|&(_, c)| c).min().unwrap();
    let max_col = boxes.iter().map(|&(_, c)| c).max().unwrap();
    let k = setting.k;
    Some(Ribbon {
        ht: (tail_row - head_row + 1) as u32,
        wd: max_col - min_col + 1,
        h_stat: outer.part(head_row) + (k + 1 - head_row) as u32,
        t_stat: inner.part(tail_row) + (k + 1 - tail_row) as u32,
        head_row,
        tail_row,
        inner: inner.clone(),
        outer: outer.clone(),
    })
}

/// Which row the ribbon is anchored at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Anchor {
    Head,
    Tail,
}

/// All ribbons `μ/λ` with `μ` in the rectangle and the chosen anchor (head
/// or tail) in row `i`, for adding a ribbon to `λ`.
pub fn ribbons_added(setting: GrassSetting, lambda: &Partition, i: usize, anchor: Anchor) -> Vec<Ribbon> {
    partitions_in_rectangle(setting)
        .into_iter()
        .filter(|mu| mu.contains(lambda))
        .filter_map(|mu| ribbon_between(setting, lambda, &mu))
        .filter(|r| match anchor {
            Anchor::Head => r.head_row == i,
            Anchor::Tail => r.tail_row == i,
        })
        .collect()
}

/// All ribbons `μ/λ` with `λ` in the rectangle and the chosen anchor in row
/// `i`, for deleting a ribbon from `μ`.
pub fn ribbons_deleted(setting: GrassSetting, mu: &Partition, i: usize, anchor: Anchor) -> Vec<Ribbon> {
    partitions_in_rectangle(setting)
        .into_iter()
        .filter(|lambda| mu.contains(lambda))
        .filter_map(|lambda| ribbon_between(setting, &lambda, mu))
        .filter(|r| match anchor {
            Anchor::Head => r.head_row == i,
            Anchor::Tail => r.tail_row == i,
        })
        .collect()
}

/// `μ/λ` has at most one box per row.
pub fn is_vertical_strip(lambda: &Partition, mu: &Partition) -> bool {
    if !mu.contains(lambda) {
        return false;
    }
    (1..=mu.0.len()).all(|r| mu.part(r) - lambda.part(r) <= 1)
}

/// Number of connected components of a vertical strip `μ/λ` under box
/// adjacency. Each component is a width-1 ribbon. Returns `None` if the
/// skew shape is not a vertical strip.
pub fn vertical_strip_components(lambda: &Partition, mu: &Partition) -> Option<usize> {
    if !is_vertical_strip(lambda, mu) {
        return None;
    }
    let boxes = skew_boxes(lambda, mu);
    let set: std::collections::HashSet<(usize, u32)> = boxes.iter().copied().collect();
    // a component starts at a box with no box directly above it
    Some(
        boxes
            .iter()
            .filter(|&&(r, c)| r == 1 || !set.contains(&(r - 1, c)))
            .count(),
    )
}
