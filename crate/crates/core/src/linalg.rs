//! Exact rational linear algebra on small dense matrices.

use num::{BigInt, BigRational, One, Signed, Zero};

pub type Q = BigRational;
pub type Matrix = Vec<Vec<Q>>;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

pub fn zeros(n: usize) -> Matrix {
    vec![vec![Q::zero(); n]; n]
}

pub fn identity(n: usize) -> Matrix {
    let mut m = zeros(n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn from_int(m: &[Vec<i64>]) -> Matrix {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

pub fn is_zero(m: &Matrix) -> bool {
    m.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u + v).collect()).collect()
}

pub fn sub(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u - v).collect()).collect()
}

pub fn scale(a: &Matrix, c: &Q) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * c).collect()).collect()
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][l] * &b[l][j];
            }
        }
    }
    out
}

/// Commutator bracket `ab − ba`.
pub fn bracket(a: &Matrix, b: &Matrix) -> Matrix {
    sub(&mul(a, b), &mul(b, a))
}

/// `log(M)` for unipotent `M`, as the finite series in `N = M − I`.
/// Returns `None` when `M` is not unipotent.
pub fn log_unipotent(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let nil = sub(m, &identity(n));
    let mut out = zeros(n);
    let mut pow = nil.clone();
    for k in 1..=n {
        if is_zero(&pow) {
            return Some(out);
        }
        let c = Q::new(BigInt::from(if k % 2 == 1 { 1 } else { -1 }), BigInt::from(k));
        out = add(&out, &scale(&pow, &c));
        pow = mul(&pow, &nil);
    }
    if is_zero(&pow) {
        Some(out)
    } else {
        None
    }
}

/// Rank of a list of vectors.
pub fn rank(rows: &[Vec<Q>]) -> usize {
    let mut basis: Vec<Vec<Q>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for r in rows {
        if let Some(v) = reduce_against(&basis, &pivots, r.clone()) {
            let p = v.iter().position(|x| !x.is_zero()).unwrap();
            let inv = v[p].recip();
            let v: Vec<Q> = v.iter().map(|x| x * &inv).collect();
            basis.push(v);
            pivots.push(p);
        }
    }
    basis.len()
}

fn reduce_against(basis: &[Vec<Q>], pivots: &[usize], mut v: Vec<Q>) -> Option<Vec<Q>> {
    for (b, &p) in basis.iter().zip(pivots) {
        if !v[p].is_zero() {
            let c = v[p].clone();
            for (x, y) in v.iter_mut().zip(b) {
                *x -= &c * y;
            }
        }
    }
    if v.iter().all(Zero::is_zero) {
        None
    } else {
        Some(v)
    }
}

/// Incremental basis of a subspace, used for spans and closures.
#[derive(Clone, Debug, Default)]
pub struct Span {
    basis: Vec<Vec<Q>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert(&mut self, v: &[Q]) -> bool {
        match reduce_against(&self.basis, &self.pivots, v.to_vec()) {
            None => false,
            Some(r) => {
                let p = r.iter().position(|x| !x.is_zero()).unwrap();
                let inv = r[p].recip();
                let r: Vec<Q> = r.iter().map(|x| x * &inv).collect();
                // keep the basis fully reduced at earlier pivots
                for b in self.basis.iter_mut() {
                    if !b[p].is_zero() {
                        let c = b[p].clone();
                        for (x, y) in b.iter_mut().zip(&r) {
                            *x -= &c * y;
                        }
                    }
                }
                self.basis.push(r);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        reduce_against(&self.basis, &self.pivots, v.to_vec()).is_none()
    }
}

pub fn flatten(m: &Matrix) -> Vec<Q> {
    m.iter().flatten().cloned().collect()
}

pub fn max_abs(m: &Matrix) -> Q {
    m.iter().flatten().map(|x| x.abs()).fold(Q::zero(), |a, b| if b > a { b } else { a })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_log() {
        let rows = vec![vec![q(1), q(2)], vec![q(2), q(4)], vec![q(0), q(1)]];
        assert_eq!(rank(&rows), 2);
        let m = from_int(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]);
        let l = log_unipotent(&m).unwrap();
        // log of a 3×3 Jordan block: N − N²/2
        assert_eq!(l[0][2], Q::new(BigInt::from(-1), BigInt::from(2)));
        assert!(log_unipotent(&from_int(&[vec![-1]])).is_none());
        let mut s = Span::new();
        assert!(s.insert(&[q(1), q(1)]));
        assert!(!s.insert(&[q(2), q(2)]));
        assert!(s.contains(&[q(3), q(3)]));
    }
}
