//! Thomas-type direct solvers for the two banded shapes the method produces:
//! a scalar tridiagonal system (initial fit) and a tridiagonal system of
//! 2x2 blocks (each time step). Neither solver pivots.

use crate::error::{Error, Result};

/// Relative pivot threshold below which a system is reported singular.
pub const PIVOT_TOLERANCE: f64 = 1e-14;

/// Scalar tridiagonal system. `sub[0]` and `sup[n-1]` are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn zeros(n: usize) -> Self {
        Self {
            sub: vec![0.0; n],
            diag: vec![0.0; n],
            sup: vec![0.0; n],
            rhs: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.diag.len();
        for len in [self.sub.len(), self.sup.len(), self.rhs.len()] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(())
    }

    /// `A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i] * x[i - 1];
                }
                if i + 1 < n {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// `max_i |(A x - rhs)_i|`.
    pub fn residual_inf(&self, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(&self.rhs)
            .map(|(ax, r)| (ax - r).abs())
            .fold(0.0, f64::max)
    }
}

/// Solves `A x = rhs` by forward elimination and back substitution.
pub fn solve_tridiagonal(system: &TridiagonalSystem) -> Result<Vec<f64>> {
    system.check_shape()?;
    let n = system.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let TridiagonalSystem {
        sub,
        diag,
        sup,
        rhs,
    } = system;

    let row_scale = |i: usize| {
        let mut s = diag[i].abs();
        if i > 0 {
            s = s.max(sub[i].abs());
        }
        if i + 1 < n {
            s = s.max(sup[i].abs());
        }
        s
    };

    let mut w = vec![0.0; n];
    let mut g = vec![0.0; n];
    for i in 0..n {
        let (denom, carried) = if i == 0 {
            (diag[0], rhs[0])
        } else {
            (diag[i] - sub[i] * w[i - 1], rhs[i] - sub[i] * g[i - 1])
        };
        let scale = row_scale(i);
        if denom.is_nan() || denom.abs() < PIVOT_TOLERANCE * scale || scale == 0.0 {
            return Err(Error::Singular {
                row: i,
                pivot: denom.abs(),
                scale,
            });
        }
        if i + 1 < n {
            w[i] = sup[i] / denom;
        }
        g[i] = carried / denom;
    }
    for i in (0..n - 1).rev() {
        g[i] -= w[i] * g[i + 1];
    }

    debug_assert!(
        system.residual_inf(&g) <= 1e-10 * backward_scale_scalar(system, &g),
        "tridiagonal residual too large"
    );
    Ok(g)
}

fn backward_scale_scalar(system: &TridiagonalSystem, x: &[f64]) -> f64 {
    let a_norm = (0..system.len())
        .map(|i| system.sub[i].abs() + system.diag[i].abs() + system.sup[i].abs())
        .fold(0.0, f64::max);
    let x_norm = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let r_norm = system.rhs.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    1.0 + a_norm * x_norm + r_norm
}

pub type Block = [[f64; 2]; 2];
pub type Pair = [f64; 2];

pub const ZERO_BLOCK: Block = [[0.0; 2]; 2];
pub const IDENTITY_BLOCK: Block = [[1.0, 0.0], [0.0, 1.0]];

#[inline]
fn block_mul(a: &Block, b: &Block) -> Block {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

#[inline]
fn block_apply(a: &Block, x: &Pair) -> Pair {
    [
        a[0][0] * x[0] + a[0][1] * x[1],
        a[1][0] * x[0] + a[1][1] * x[1],
    ]
}

#[inline]
fn block_sub(a: &Block, b: &Block) -> Block {
    [
        [a[0][0] - b[0][0], a[0][1] - b[0][1]],
        [a[1][0] - b[1][0], a[1][1] - b[1][1]],
    ]
}

#[inline]
fn block_norm(a: &Block) -> f64 {
    a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()))
}

/// A 2x2 pivot block reduced by Gaussian elimination on its first column,
/// swapping rows when the lower entry is larger.
///
/// Eliminating instead of multiplying by the adjugate keeps a diagonal block
/// acting on each component independently, bit for bit.
#[derive(Debug, Clone, Copy)]
struct PivotBlock {
    swap: bool,
    a: f64,
    b: f64,
    l: f64,
    d: f64,
}

impl PivotBlock {
    fn factor(block: &Block, row: usize) -> Result<Self> {
        let [[a, b], [c, d]] = *block;
        let scale = block_norm(block);
        let det = a * d - b * c;
        let threshold = PIVOT_TOLERANCE * scale * scale;
        if det.is_nan() || det.abs() < threshold || scale == 0.0 {
            return Err(Error::Singular {
                row,
                pivot: det.abs(),
                scale: scale * scale,
            });
        }
        let swap = c.abs() > a.abs();
        let (a, b, c, d) = if swap { (c, d, a, b) } else { (a, b, c, d) };
        let l = c / a;
        Ok(Self {
            swap,
            a,
            b,
            l,
            d: d - l * b,
        })
    }

    #[inline]
    fn solve(&self, r: &Pair) -> Pair {
        let r = if self.swap { [r[1], r[0]] } else { *r };
        let x1 = (r[1] - self.l * r[0]) / self.d;
        let x0 = (r[0] - self.b * x1) / self.a;
        [x0, x1]
    }

    #[inline]
    fn solve_block(&self, m: &Block) -> Block {
        let c0 = self.solve(&[m[0][0], m[1][0]]);
        let c1 = self.solve(&[m[0][1], m[1][1]]);
        [[c0[0], c1[0]], [c0[1], c1[1]]]
    }
}

/// Block tridiagonal system with 2x2 blocks.
///
/// Block row `m` reads `lower[m] x[m-1] + main[m] x[m] + upper[m] x[m+1] =
/// rhs[m]`; `lower[0]` and `upper[last]` are outside the matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockTridiagonalSystem {
    pub lower: Vec<Block>,
    pub main: Vec<Block>,
    pub upper: Vec<Block>,
    pub rhs: Vec<Pair>,
}

impl BlockTridiagonalSystem {
    pub fn zeros(rows: usize) -> Self {
        Self {
            lower: vec![ZERO_BLOCK; rows],
            main: vec![ZERO_BLOCK; rows],
            upper: vec![ZERO_BLOCK; rows],
            rhs: vec![[0.0; 2]; rows],
        }
    }

    pub fn rows(&self) -> usize {
        self.main.len()
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.main.len();
        for len in [self.lower.len(), self.upper.len(), self.rhs.len()] {
            if len != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(())
    }

    /// `A x`, ignoring the out-of-matrix corner blocks.
    pub fn apply(&self, x: &[Pair]) -> Vec<Pair> {
        let n = self.rows();
        (0..n)
            .map(|m| {
                let mut acc = block_apply(&self.main[m], &x[m]);
                if m > 0 {
                    let t = block_apply(&self.lower[m], &x[m - 1]);
                    acc = [acc[0] + t[0], acc[1] + t[1]];
                }
                if m + 1 < n {
                    let t = block_apply(&self.upper[m], &x[m + 1]);
                    acc = [acc[0] + t[0], acc[1] + t[1]];
                }
                acc
            })
            .collect()
    }

    pub fn residual_inf(&self, x: &[Pair]) -> f64 {
        self.apply(x)
            .iter()
            .zip(&self.rhs)
            .flat_map(|(ax, r)| [(ax[0] - r[0]).abs(), (ax[1] - r[1]).abs()])
            .fold(0.0, f64::max)
    }

    /// Expands to the dense `2n x 2n` matrix with unknowns interleaved as
    /// `(x_0[0], x_0[1], x_1[0], ...)`.
    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let n = self.rows();
        let mut dense = vec![vec![0.0; 2 * n]; 2 * n];
        for m in 0..n {
            let mut place = |col_block: usize, blk: &Block| {
                for r in 0..2 {
                    for c in 0..2 {
                        dense[2 * m + r][2 * col_block + c] = blk[r][c];
                    }
                }
            };
            if m > 0 {
                place(m - 1, &self.lower[m]);
            }
            place(m, &self.main[m]);
            if m + 1 < n {
                place(m + 1, &self.upper[m]);
            }
        }
        dense
    }

    fn backward_scale(&self, x: &[Pair]) -> f64 {
        let a_norm = (0..self.rows())
            .map(|m| 2.0 * (block_norm(&self.lower[m]) + block_norm(&self.main[m]) + block_norm(&self.upper[m])))
            .fold(0.0, f64::max);
        let x_norm = x.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let r_norm = self.rhs.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        1.0 + a_norm * x_norm + r_norm
    }
}

/// Block-Thomas solver that keeps its elimination workspace between solves.
#[derive(Debug, Default, Clone)]
pub struct BlockThomas {
    w: Vec<Block>,
    g: Vec<Pair>,
}

impl BlockThomas {
    pub fn new() -> Self {
        Self::default()
    }

    /// Solves into `out`, which is resized to the number of block rows.
    pub fn solve_into(&mut self, system: &BlockTridiagonalSystem, out: &mut Vec<Pair>) -> Result<()> {
        system.check_shape()?;
        let n = system.rows();
        out.clear();
        if n == 0 {
            return Ok(());
        }
        self.w.clear();
        self.w.resize(n, ZERO_BLOCK);
        self.g.clear();
        self.g.resize(n, [0.0; 2]);

        for m in 0..n {
            let (pivot, carried) = if m == 0 {
                (system.main[0], system.rhs[0])
            } else {
                let lw = block_mul(&system.lower[m], &self.w[m - 1]);
                let lg = block_apply(&system.lower[m], &self.g[m - 1]);
                (
                    block_sub(&system.main[m], &lw),
                    [system.rhs[m][0] - lg[0], system.rhs[m][1] - lg[1]],
                )
            };
            let factored = PivotBlock::factor(&pivot, m)?;
            if m + 1 < n {
                self.w[m] = factored.solve_block(&system.upper[m]);
            }
            self.g[m] = factored.solve(&carried);
        }

        out.extend_from_slice(&self.g);
        for m in (0..n - 1).rev() {
            let t = block_apply(&self.w[m], &out[m + 1]);
            out[m] = [out[m][0] - t[0], out[m][1] - t[1]];
        }

        debug_assert!(
            system.residual_inf(out) <= 1e-10 * system.backward_scale(out),
            "block tridiagonal residual too large"
        );
        Ok(())
    }
}

/// Solves a block tridiagonal system with a fresh workspace.
pub fn solve_block_tridiagonal(system: &BlockTridiagonalSystem) -> Result<Vec<Pair>> {
    let mut out = Vec::with_capacity(system.rows());
    BlockThomas::new().solve_into(system, &mut out)?;
    Ok(out)
}
