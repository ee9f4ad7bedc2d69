//! Symmetric tridiagonal eigensolver.
//!
//! Sturm-sequence bisection for the lowest eigenvalues and inverse iteration
//! with partial pivoting for the eigenvectors. Bisection costs O(n) per
//! eigenvalue, which keeps the grid-halving Richardson check in the subband
//! solver cheap.

/// Symmetric tridiagonal matrix; `off` has length `diag.len() - 1`.
#[derive(Debug, Clone)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, off }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via the LDL^T
    /// pivot recurrence).
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = 1e-300;
        let mut count = 0usize;
        let mut d = 1.0f64;
        for i in 0..self.dim() {
            let off2 = if i == 0 { 0.0 } else { self.off[i - 1] * self.off[i - 1] };
            d = self.diag[i] - x - off2 / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin bounds on the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let n = self.dim();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `m` lowest eigenvalues, ascending, each bisected to a few ulps of
    /// the Gershgorin range.
    pub fn lowest_eigenvalues(&self, m: usize) -> Vec<f64> {
        let m = m.min(self.dim());
        let (glo, ghi) = self.bounds();
        let mut out = Vec::with_capacity(m);
        for j in 0..m {
            let mut lo = glo;
            let mut hi = ghi;
            for _ in 0..120 {
                let mid = 0.5 * (lo + hi);
                if self.count_below(mid) > j {
                    hi = mid;
                } else {
                    lo = mid;
                }
                if hi - lo <= 8.0 * f64::EPSILON * hi.abs().max(lo.abs()).max(1.0) {
                    break;
                }
            }
            out.push(0.5 * (lo + hi));
        }
        out
    }

    /// Eigenvector for an already-converged eigenvalue, by two rounds of
    /// inverse iteration. `previous` holds lower eigenvectors to project out,
    /// which keeps near-degenerate pairs orthogonal.
    pub fn eigenvector(&self, lambda: f64, previous: &[Vec<f64>]) -> Vec<f64> {
        let n = self.dim();
        // Deterministic pseudo-random start (xorshift64*), never the zero vector.
        let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ (lambda.to_bits().rotate_left(17));
        let mut v: Vec<f64> = (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        normalize(&mut v);
        for _ in 0..3 {
            self.solve_shifted(lambda, &mut v);
            for p in previous {
                let c = dot(&v, p);
                for (vi, pi) in v.iter_mut().zip(p) {
                    *vi -= c * pi;
                }
            }
            normalize(&mut v);
        }
        v
    }

    /// Solve (A - lambda I) y = rhs in place by LU with partial pivoting.
    fn solve_shifted(&self, lambda: f64, rhs: &mut [f64]) {
        let n = self.dim();
        let mut a: Vec<f64> = self.diag.iter().map(|d| d - lambda).collect();
        let mut b: Vec<f64> = (0..n.saturating_sub(1)).map(|i| self.off[i]).collect();
        let mut c = vec![0.0f64; n];
        // Forward elimination; rows may be swapped so a second superdiagonal
        // fills in.
        for k in 0..n - 1 {
            let sub = self.off[k];
            if a[k].abs() >= sub.abs() {
                let piv = if a[k] != 0.0 { a[k] } else { 1e-300 };
                let m = sub / piv;
                a[k + 1] -= m * b[k];
                if k + 2 < n {
                    // c[k+1] stays; b[k+1] unchanged in the no-swap branch
                }
                rhs[k + 1] -= m * rhs[k];
            } else {
                // Swap row k with row k+1.
                let (rk, rk1) = (rhs[k], rhs[k + 1]);
                rhs[k] = rk1;
                rhs[k + 1] = rk;
                let ak = a[k];
                let bk = b[k];
                let ck = c[k];
                a[k] = sub;
                b[k] = a[k + 1];
                c[k] = if k + 2 < n { b[k + 1] } else { 0.0 };
                let m = ak / a[k];
                a[k + 1] = bk - m * b[k];
                if k + 2 < n {
                    b[k + 1] = ck - m * c[k];
                }
                rhs[k + 1] -= m * rhs[k];
            }
        }
        // Back substitution.
        for k in (0..n).rev() {
            let mut s = rhs[k];
            if k + 1 < n {
                s -= b[k] * rhs[k + 1];
            }
            if k + 2 < n {
                s -= c[k] * rhs[k + 2];
            }
            let piv = if a[k] != 0.0 { a[k] } else { 1e-300 };
            rhs[k] = s / piv;
        }
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn normalize(v: &mut [f64]) {
    let norm = dot(v, v).sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
}
