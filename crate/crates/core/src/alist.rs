//! alist text format (MacKay): sizes, max weights, weight lists, then 1-based
//! index lists per column and per row, zero-padded to the max weight.

use crate::error::{Error, Result};
use crate::sparse::SparseBinaryMatrix;

fn join(xs: impl Iterator<Item = usize>) -> String {
    xs.map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn padded(idx: &[usize], width: usize) -> String {
    join(idx.iter().map(|&i| i + 1).chain(std::iter::repeat(0)).take(width.max(idx.len())))
}

pub fn export_alist(h: &SparseBinaryMatrix) -> String {
    let (cols, rows) = (h.cols(), h.rows());
    let max_c = cols.iter().map(Vec::len).max().unwrap_or(0);
    let max_r = rows.iter().map(Vec::len).max().unwrap_or(0);
    let mut lines = vec![
        format!("{} {}", h.n_cols(), h.n_rows()),
        format!("{max_c} {max_r}"),
        join(cols.iter().map(Vec::len)),
        join(rows.iter().map(Vec::len)),
    ];
    lines.extend(cols.iter().map(|c| padded(c, max_c)));
    lines.extend(rows.iter().map(|r| padded(r, max_r)));
    let mut s = lines.join("\n");
    s.push('\n');
    s
}

struct Lines<'a> {
    it: std::iter::Enumerate<std::str::Lines<'a>>,
}

impl Lines<'_> {
    fn next_nums(&mut self, what: &str) -> Result<(usize, Vec<usize>)> {
        let (k, line) = self.it.next().ok_or_else(|| Error::AlistParse { line: 0, msg: format!("file ends before {what}") })?;
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| Error::AlistParse { line: k + 1, msg: format!("bad number {t:?} in {what}") }))
            .collect::<Result<Vec<_>>>()?;
        Ok((k + 1, nums))
    }

    fn exact(&mut self, what: &str, n: usize) -> Result<Vec<usize>> {
        let (k, nums) = self.next_nums(what)?;
        if nums.len() != n {
            return Err(Error::AlistParse { line: k, msg: format!("{what}: expected {n} numbers, got {}", nums.len()) });
        }
        Ok(nums)
    }

    /// One index line; zeros are padding.
    fn indices(&mut self, what: &str, bound: usize, weight: usize) -> Result<Vec<usize>> {
        let (k, nums) = self.next_nums(what)?;
        let mut idx = Vec::with_capacity(weight);
        for x in nums.into_iter().filter(|&x| x != 0) {
            if x > bound {
                return Err(Error::AlistParse { line: k, msg: format!("{what}: index {x} exceeds {bound}") });
            }
            idx.push(x - 1);
        }
        if idx.len() != weight {
            return Err(Error::AlistWeight(format!("{what} (line {k}) lists {} entries, weight says {weight}", idx.len())));
        }
        idx.sort_unstable();
        if idx.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::AlistParse { line: k, msg: format!("{what}: repeated index") });
        }
        Ok(idx)
    }
}

pub fn import_alist(text: &str) -> Result<SparseBinaryMatrix> {
    let mut ls = Lines { it: text.lines().enumerate() };
    let size = ls.exact("header", 2)?;
    let (n_cols, n_rows) = (size[0], size[1]);
    let maxw = ls.exact("max weights", 2)?;
    let cw = ls.exact("column weights", n_cols)?;
    let rw = ls.exact("row weights", n_rows)?;
    if cw.iter().copied().max().unwrap_or(0) != maxw[0] || rw.iter().copied().max().unwrap_or(0) != maxw[1] {
        return Err(Error::AlistWeight(format!("max weights {maxw:?} disagree with the weight lists")));
    }
    if cw.iter().sum::<usize>() != rw.iter().sum::<usize>() {
        return Err(Error::AlistWeight("column and row weights have different totals".into()));
    }
    let cols = (0..n_cols)
        .map(|j| ls.indices(&format!("column {}", j + 1), n_rows, cw[j]))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..n_rows)
        .map(|i| ls.indices(&format!("row {}", i + 1), n_cols, rw[i]))
        .collect::<Result<Vec<_>>>()?;
    for (k, line) in ls.it {
        if !line.trim().is_empty() {
            return Err(Error::AlistParse { line: k + 1, msg: "trailing content".into() });
        }
    }
    let m = SparseBinaryMatrix::from_rows(n_cols, rows)?;
    for (j, c) in cols.iter().enumerate() {
        if m.col(j) != c.as_slice() {
            return Err(Error::AlistInconsistent(format!("column {} lists rows {:?}, row view gives {:?}", j + 1, c, m.col(j))));
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_text() {
        let t = export_alist(&SparseBinaryMatrix::identity(3));
        assert_eq!(t, "3 3\n1 1\n1 1 1\n1 1 1\n1\n2\n3\n1\n2\n3\n");
        assert_eq!(import_alist(&t).unwrap(), SparseBinaryMatrix::identity(3));
    }

    #[test]
    fn irregular_rows_are_zero_padded() {
        let m = SparseBinaryMatrix::from_rows(3, vec![vec![0, 1, 2], vec![1]]).unwrap();
        let t = export_alist(&m);
        assert!(t.contains("\n2 0 0\n"));
        assert_eq!(import_alist(&t).unwrap(), m);
    }

    #[test]
    fn distinct_errors() {
        let good = export_alist(&SparseBinaryMatrix::identity(3));
        let truncated: String = good.lines().take(6).map(|l| format!("{l}\n")).collect();
        assert!(matches!(import_alist(&truncated), Err(Error::AlistParse { .. })));
        let swapped = good.replacen("1\n2\n3\n1\n2\n3\n", "1\n2\n3\n2\n1\n3\n", 1);
        assert!(matches!(import_alist(&swapped), Err(Error::AlistInconsistent(_))));
        let heavy = good.replacen("\n1\n2\n3\n", "\n1 2\n2\n3\n", 1);
        assert!(matches!(import_alist(&heavy), Err(Error::AlistWeight(_))));
        assert!(matches!(import_alist(&good.replace("3 3\n", "3 x\n")), Err(Error::AlistParse { line: 1, .. })));
    }
}
