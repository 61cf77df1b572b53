//! Subsets of the ground set `[n] = {1, ..., n}` as bitmasks.
//!
//! Element `i` corresponds to bit `i - 1`.

pub type Subset = usize;

/// Bitmask for a list of 1-based elements.
pub fn from_elements(elements: &[usize]) -> Subset {
    elements.iter().fold(0, |acc, &i| {
        debug_assert!(i >= 1, "elements are 1-based");
        acc | 1 << (i - 1)
    })
}

/// 1-based elements of a bitmask, ascending.
pub fn elements(s: Subset) -> Vec<usize> {
    (0..usize::BITS as usize)
        .filter(|b| s >> b & 1 == 1)
        .map(|b| b + 1)
        .collect()
}

pub fn contains(s: Subset, element: usize) -> bool {
    s >> (element - 1) & 1 == 1
}

pub fn full(n: usize) -> Subset {
    (1 << n) - 1
}

pub fn size(s: Subset) -> usize {
    s.count_ones() as usize
}

/// Renders a subset as `{1,3}`.
pub fn display(s: Subset) -> String {
    let parts: Vec<String> = elements(s).iter().map(|e| e.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// Index of each unordered pair `(i, j)`, `i < j`, 0-based, in
/// lexicographic order: (0,1), (0,2), ..., (1,2), ...
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            out.push((i, j));
        }
    }
    out
}
