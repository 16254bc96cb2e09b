//! Fraction-free row reduction on primitive integer rows.
//!
//! Rational Gauss-Jordan on dense inputs suffers badly from denominator
//! growth. Here each row is scaled to a primitive integer vector, rows are
//! combined as `a·row_i - b·row_r` and divided by their content again, and
//! rationals only appear when the pivots are normalized at the very end.
//! Elimination first runs on `i128` and restarts on big integers if any
//! intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{Matrix, Scalar};

trait Entry: Clone {
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn size(&self) -> u64;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    /// `self·a - b·p`.
    fn combine(&self, a: &Self, b: &Self, p: &Self) -> Option<Self>;
    fn scale(&self, a: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn size(&self) -> u64 {
        self.unsigned_abs().min(u64::MAX as u128) as u64
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn combine(&self, a: &Self, b: &Self, p: &Self) -> Option<Self> {
        self.checked_mul(*a)?.checked_sub(b.checked_mul(*p)?)
    }
    fn scale(&self, a: &Self) -> Option<Self> {
        self.checked_mul(*a)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn size(&self) -> u64 {
        self.bits()
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn combine(&self, a: &Self, b: &Self, p: &Self) -> Option<Self> {
        Some(self * a - b * p)
    }
    fn scale(&self, a: &Self) -> Option<Self> {
        Some(self * a)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

fn primitive_big(row: &[Scalar]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row.iter().filter(|x| !x.is_zero()) {
        lcm = lcm.lcm(&x.denom());
    }
    let mut out: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    make_primitive(&mut out);
    out
}

fn primitive_small(row: &[Scalar]) -> Option<Vec<i128>> {
    let big = primitive_big(row);
    big.iter().map(ToPrimitive::to_i128).collect()
}

fn make_primitive<E: Entry>(row: &mut [E]) {
    let mut g: Option<E> = None;
    for x in row.iter().filter(|x| !x.is_zero()) {
        let next = match &g {
            None => x.gcd(x),
            Some(g) => g.gcd(x),
        };
        if next.is_one() {
            return;
        }
        g = Some(next);
    }
    if let Some(g) = g {
        for x in row.iter_mut().filter(|x| !x.is_zero()) {
            *x = x.div_exact(&g);
        }
    }
}

/// `target := a·target - b·pivot` with `a, b` chosen to clear column `c`.
fn eliminate<E: Entry>(target: &mut [E], pivot: &[E], c: usize) -> Option<()> {
    let g = pivot[c].gcd(&target[c]);
    let a = pivot[c].div_exact(&g);
    let b = target[c].div_exact(&g);
    for j in 0..target.len() {
        if pivot[j].is_zero() {
            if !a.is_one() && !target[j].is_zero() {
                target[j] = target[j].scale(&a)?;
            }
        } else {
            target[j] = target[j].combine(&a, &b, &pivot[j])?;
        }
    }
    make_primitive(target);
    Some(())
}

/// Forward elimination; the rows are truncated to the rank.
fn forward<E: Entry>(rows: &mut Vec<Vec<E>>, cols: usize) -> Option<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).filter(|&i| !rows[i][c].is_zero()).min_by_key(|&i| rows[i][c].size()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot = &head[r];
        for row in tail.iter_mut().filter(|row| !row[c].is_zero()) {
            eliminate(row, pivot, c)?;
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Some(pivots)
}

fn backward<E: Entry>(rows: &mut [Vec<E>], pivots: &[usize]) -> Option<()> {
    for r in (0..rows.len()).rev() {
        let c = pivots[r];
        let (head, tail) = rows.split_at_mut(r);
        let pivot = &tail[0];
        for row in head.iter_mut().filter(|row| !row[c].is_zero()) {
            eliminate(row, pivot, c)?;
        }
    }
    Some(())
}

fn reduce<E: Entry>(mut rows: Vec<Vec<E>>, cols: usize, full: bool) -> Option<(Vec<Vec<BigInt>>, Vec<usize>)> {
    let pivots = forward(&mut rows, cols)?;
    if full {
        backward(&mut rows, &pivots)?;
    }
    Some((rows.iter().map(|r| r.iter().map(Entry::to_big).collect()).collect(), pivots))
}

fn run(m: &Matrix, full: bool) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let small: Option<Vec<Vec<i128>>> = (0..m.rows()).map(|i| primitive_small(m.row(i))).collect();
    if let Some(out) = small.and_then(|rows| reduce(rows, m.cols(), full)) {
        return out;
    }
    let rows = (0..m.rows()).map(|i| primitive_big(m.row(i))).collect();
    reduce(rows, m.cols(), full).expect("big integers do not overflow")
}

pub(super) fn rank(m: &Matrix) -> usize {
    run(m, false).1.len()
}

/// Overwrites `m` with its reduced row-echelon form; returns the pivot columns.
pub(super) fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let (rows, pivots) = run(m, true);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            m[(i, j)] = Scalar::zero();
        }
    }
    for (i, (row, &c)) in rows.iter().zip(&pivots).enumerate() {
        let p = row[c].clone();
        for (j, x) in row.iter().enumerate().skip(c) {
            if !Zero::is_zero(x) {
                m[(i, j)] = Scalar::from(BigRational::new(x.clone(), p.clone()));
            }
        }
    }
    pivots
}
