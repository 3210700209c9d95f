use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Sparse integer matrix stored by rows; each row is sorted by column and
/// holds no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, BigInt)>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions add up.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> IntMatrix {
        let mut m = IntMatrix::zeros(rows, cols);
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            m.add_to(r, c, &v);
        }
        m
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> IntMatrix {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix::from_triplets(
            rows.len(),
            cols,
            rows.iter()
                .enumerate()
                .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone().into()))),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        match self.data[r].binary_search_by_key(&c, |e| e.0) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn row(&self, r: usize) -> &[(usize, BigInt)] {
        &self.data[r]
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                out[r][*c] = v.clone();
            }
        }
        out
    }

    fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.data[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => {
                row[k].1 += v;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (c, v.clone())),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for (r, row) in self.data.iter().enumerate() {
            for (k, a) in row {
                for (c, b) in &other.data[*k] {
                    out.add_to(r, *c, &(a * b));
                }
            }
        }
        out
    }

    /// `row dst += factor * row src`.
    fn add_row(&mut self, src: usize, dst: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        let a = std::mem::take(&mut self.data[dst]);
        let b = &self.data[src];
        let mut merged = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                merged.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                merged.push((b[j].0, factor * &b[j].1));
                j += 1;
            } else {
                let v = &a[i].1 + factor * &b[j].1;
                if !v.is_zero() {
                    merged.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        self.data[dst] = merged;
    }

    fn add_col(&mut self, src: usize, dst: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.get(r, src);
            if !v.is_zero() {
                self.add_to(r, dst, &(factor * v));
            }
        }
    }
}

/// Elementary unimodular operation. Row operations act on the left, column
/// operations on the right.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElementaryOp {
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// `row dst += factor * row src`
    AddRow { src: usize, dst: usize, factor: BigInt },
    /// `col dst += factor * col src`
    AddCol { src: usize, dst: usize, factor: BigInt },
    NegateRow(usize),
    NegateCol(usize),
}

impl ElementaryOp {
    pub fn apply(&self, m: &mut IntMatrix) {
        match self {
            ElementaryOp::SwapRows(a, b) => m.data.swap(*a, *b),
            ElementaryOp::SwapCols(a, b) => {
                for row in &mut m.data {
                    for e in row.iter_mut() {
                        if e.0 == *a {
                            e.0 = *b;
                        } else if e.0 == *b {
                            e.0 = *a;
                        }
                    }
                    row.sort_by_key(|e| e.0);
                }
            }
            ElementaryOp::AddRow { src, dst, factor } => m.add_row(*src, *dst, factor),
            ElementaryOp::AddCol { src, dst, factor } => m.add_col(*src, *dst, factor),
            ElementaryOp::NegateRow(r) => {
                for e in &mut m.data[*r] {
                    e.1 = -&e.1;
                }
            }
            ElementaryOp::NegateCol(c) => {
                for row in &mut m.data {
                    for e in row.iter_mut().filter(|e| e.0 == *c) {
                        e.1 = -&e.1;
                    }
                }
            }
        }
    }
}

/// `D = P M Q` with `D` diagonal, `d_1 | d_2 | ...`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries; the rank is their number.
    pub diagonal: Vec<BigInt>,
    /// Row operations in application order (the factors of `P`).
    pub row_ops: Vec<ElementaryOp>,
    /// Column operations in application order (the factors of `Q`).
    pub col_ops: Vec<ElementaryOp>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn matrix(&self) -> IntMatrix {
        IntMatrix::from_triplets(
            self.rows,
            self.cols,
            self.diagonal.iter().enumerate().map(|(k, d)| (k, k, d.clone())),
        )
    }

    /// Applies the recorded operations to `m`.
    pub fn replay(&self, m: &IntMatrix) -> IntMatrix {
        let mut out = m.clone();
        for op in self.row_ops.iter().chain(&self.col_ops) {
            op.apply(&mut out);
        }
        out
    }
}

struct Recorder {
    on: bool,
    row_ops: Vec<ElementaryOp>,
    col_ops: Vec<ElementaryOp>,
}

impl Recorder {
    fn row(&mut self, op: impl FnOnce() -> ElementaryOp) {
        if self.on {
            self.row_ops.push(op());
        }
    }

    fn col(&mut self, op: impl FnOnce() -> ElementaryOp) {
        if self.on {
            self.col_ops.push(op());
        }
    }
}

/// Smith normal form with the operations that produce it.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    reduce(m, true)
}

/// Nonzero Smith invariants only, without recording operations.
pub fn smith_invariants(m: &IntMatrix) -> Vec<BigInt> {
    reduce(m, false).diagonal
}

fn reduce(m: &IntMatrix, record: bool) -> SmithForm {
    let mut a = m.clone();
    let mut rec = Recorder {
        on: record,
        row_ops: Vec::new(),
        col_ops: Vec::new(),
    };
    let mut active_row = vec![true; a.rows];
    let mut active_col = vec![true; a.cols];
    let mut pivots: Vec<(usize, usize)> = Vec::new();

    // Pivot: smallest absolute value, then leftmost, then topmost.
    let choose = |a: &IntMatrix, active_row: &[bool], active_col: &[bool]| {
        let mut best: Option<(BigInt, usize, usize)> = None;
        for (r, row) in a.data.iter().enumerate().filter(|(r, _)| active_row[*r]) {
            for (c, v) in row.iter().filter(|e| active_col[e.0]) {
                let key = (v.abs(), *c, r);
                if best.as_ref().is_none_or(|b| key < *b) {
                    best = Some(key);
                }
            }
        }
        best.map(|(_, c, r)| (r, c))
    };

    while let Some((r, c)) = choose(&a, &active_row, &active_col) {
        let p = a.get(r, c);
        let mut clean = true;
        for rr in 0..a.rows {
            if rr == r || !active_row[rr] {
                continue;
            }
            let v = a.get(rr, c);
            if v.is_zero() {
                continue;
            }
            let (q, rem) = v.div_rem(&p);
            let f = -q;
            a.add_row(r, rr, &f);
            rec.row(|| ElementaryOp::AddRow { src: r, dst: rr, factor: f });
            clean &= rem.is_zero();
        }
        if clean {
            // Column c now holds only the pivot, so column operations only
            // touch row r.
            let entries: Vec<(usize, BigInt)> = a.data[r].iter().filter(|e| e.0 != c).cloned().collect();
            for (cc, v) in entries {
                let (q, rem) = v.div_rem(&p);
                let f = -q;
                a.add_to(r, cc, &(&f * &p));
                rec.col(|| ElementaryOp::AddCol { src: c, dst: cc, factor: f });
                clean &= rem.is_zero();
            }
        }
        if clean {
            active_row[r] = false;
            active_col[c] = false;
            pivots.push((r, c));
        }
    }

    // Move pivot (r_k, c_k) to (k, k).
    let mut diagonal: Vec<BigInt> = pivots.iter().map(|&(r, c)| a.get(r, c)).collect();
    for (axis, len) in [(0, a.rows), (1, a.cols)] {
        let mut at: Vec<usize> = (0..len).collect();
        let mut where_: Vec<usize> = (0..len).collect();
        for (k, &(r, c)) in pivots.iter().enumerate() {
            let orig = if axis == 0 { r } else { c };
            let cur = where_[orig];
            if cur != k {
                if axis == 0 {
                    rec.row(|| ElementaryOp::SwapRows(k, cur));
                } else {
                    rec.col(|| ElementaryOp::SwapCols(k, cur));
                }
                let displaced = at[k];
                at.swap(k, cur);
                where_[orig] = k;
                where_[displaced] = cur;
            }
        }
    }
    for (k, d) in diagonal.iter_mut().enumerate() {
        if d.is_negative() {
            *d = -&*d;
            rec.row(|| ElementaryOp::NegateRow(k));
        }
    }

    for i in 0..diagonal.len() {
        for j in i + 1..diagonal.len() {
            if !diagonal[j].is_multiple_of(&diagonal[i]) {
                let (g, l) = fix_pair(&mut rec, i, j, &diagonal[i], &diagonal[j]);
                diagonal[i] = g;
                diagonal[j] = l;
            }
        }
    }

    SmithForm {
        rows: m.rows,
        cols: m.cols,
        diagonal,
        row_ops: rec.row_ops,
        col_ops: rec.col_ops,
    }
}

/// Replaces `diag(a, b)` at positions `i < j` by `diag(gcd, lcm)`.
fn fix_pair(rec: &mut Recorder, i: usize, j: usize, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    let idx = [i, j];
    let mut blk = [[a.clone(), BigInt::zero()], [BigInt::zero(), b.clone()]];
    let add_row = |blk: &mut [[BigInt; 2]; 2], rec: &mut Recorder, src: usize, dst: usize, f: BigInt| {
        for c in 0..2 {
            let v = &f * &blk[src][c];
            blk[dst][c] += v;
        }
        rec.row(|| ElementaryOp::AddRow { src: idx[src], dst: idx[dst], factor: f });
    };
    add_row(&mut blk, rec, 1, 0, BigInt::one());
    while !blk[0][1].is_zero() {
        let q = blk[0][0].div_floor(&blk[0][1]);
        for row in blk.iter_mut() {
            let v = &q * &row[1];
            row[0] -= v;
        }
        rec.col(|| ElementaryOp::AddCol { src: idx[1], dst: idx[0], factor: -q });
        for row in blk.iter_mut() {
            row.swap(0, 1);
        }
        rec.col(|| ElementaryOp::SwapCols(i, j));
    }
    let f = -(&blk[1][0] / &blk[0][0]);
    add_row(&mut blk, rec, 0, 1, f);
    for k in 0..2 {
        if blk[k][k].is_negative() {
            blk[k][k] = -&blk[k][k];
            rec.row(|| ElementaryOp::NegateRow(idx[k]));
        }
    }
    let [[g, _], [_, l]] = blk;
    (g, l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn det(m: &[Vec<BigInt>]) -> BigInt {
        if m.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for (c, v) in m[0].iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let minor: Vec<Vec<BigInt>> = m[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = v * det(&minor);
            if c % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![Vec::new()];
        }
        if n < k {
            return Vec::new();
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// Invariant factors from determinantal divisors: `d_k = D_k / D_{k-1}`
    /// where `D_k` is the gcd of all `k x k` minors.
    fn determinantal_oracle(m: &[Vec<BigInt>]) -> Vec<BigInt> {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = BigInt::zero();
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c].clone()).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g.is_zero() {
                break;
            }
            out.push(&g / &prev);
            prev = g;
        }
        out
    }

    #[test]
    fn small_examples() {
        assert!(smith_normal_form(&IntMatrix::zeros(3, 2)).diagonal.is_empty());
        assert_eq!(smith_normal_form(&IntMatrix::from_dense(&[vec![2]])).diagonal, big(&[2]));
        let m = IntMatrix::from_dense(&[vec![2, 4], vec![6, 8]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, big(&[2, 4]));
        assert_eq!(s.diagonal, determinantal_oracle(&m.to_dense()));
        assert_eq!(s.replay(&m), s.matrix());
    }

    #[test]
    fn divisibility_fixup() {
        let m = IntMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, big(&[1, 6]));
        assert_eq!(s.replay(&m), s.matrix());
        let m = IntMatrix::from_dense(&[vec![4, 0, 0], vec![0, 6, 0], vec![0, 0, 10]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, big(&[2, 2, 60]));
        assert_eq!(s.replay(&m), s.matrix());
    }

    #[test]
    fn large_entries_do_not_overflow() {
        let huge = BigInt::from(i64::MAX) * BigInt::from(i64::MAX);
        let m = IntMatrix::from_triplets(2, 2, [(0, 0, huge.clone()), (1, 1, huge.clone() + 1)]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::one(), &huge * (&huge + 1)]);
        assert_eq!(s.replay(&m), s.matrix());
    }

    proptest! {
        #[test]
        fn replay_and_invariants(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-6i64..7, 16)) {
            let dense: Vec<Vec<i64>> = (0..rows).map(|r| (0..cols).map(|c| seed[r * 4 + c]).collect()).collect();
            let m = IntMatrix::from_dense(&dense);
            let s = smith_normal_form(&m);
            prop_assert_eq!(s.replay(&m), s.matrix());
            for w in s.diagonal.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
            prop_assert_eq!(&s.diagonal, &determinantal_oracle(&m.to_dense()));
            prop_assert_eq!(smith_invariants(&m), s.diagonal);
        }
    }
}
