//! Block matrices whose blocks are circulants of a common size m.

use crate::circulant::CirculantSpec;
use crate::error::{Error, Result};
use crate::sparse::SparseBinaryMatrix;
use serde::{Deserialize, Serialize};

/// A (gamma*alpha) x (beta*alpha) grid of m x m circulants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockMatrix {
    m: u32,
    alpha: usize,
    beta: usize,
    gamma: usize,
    grid: Vec<Vec<CirculantSpec>>,
    family: Option<String>,
}

impl BlockMatrix {
    pub fn assemble(grid: Vec<Vec<CirculantSpec>>, alpha: usize, beta: usize, gamma: usize) -> Result<Self> {
        if grid.is_empty() || grid[0].is_empty() {
            return Err(Error::Empty("block grid"));
        }
        if alpha == 0 || beta == 0 || gamma == 0 {
            return Err(Error::Dimension("alpha, beta and gamma must be positive".into()));
        }
        if grid.len() != gamma * alpha || grid.iter().any(|r| r.len() != beta * alpha) {
            return Err(Error::Dimension(format!(
                "grid must be {}x{} blocks for alpha={alpha}, beta={beta}, gamma={gamma}",
                gamma * alpha,
                beta * alpha
            )));
        }
        let m = grid[0][0].m();
        if let Some(bad) = grid.iter().flatten().find(|c| c.m() != m) {
            return Err(Error::ModulusMismatch(m, bad.m()));
        }
        Ok(Self { m, alpha, beta, gamma, grid, family: None })
    }

    /// A grid without the alpha/beta/gamma structure (alpha = 1).
    pub fn from_grid(grid: Vec<Vec<CirculantSpec>>) -> Result<Self> {
        let (r, c) = (grid.len(), grid.first().map_or(0, Vec::len));
        Self::assemble(grid, 1, c.max(1), r.max(1))
    }

    pub fn with_family(mut self, family: &str) -> Self {
        self.family = Some(family.to_string());
        self
    }

    pub fn family(&self) -> Option<&str> {
        self.family.as_deref()
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    pub fn beta(&self) -> usize {
        self.beta
    }

    pub fn gamma(&self) -> usize {
        self.gamma
    }

    pub fn block_rows(&self) -> usize {
        self.grid.len()
    }

    pub fn block_cols(&self) -> usize {
        self.grid[0].len()
    }

    pub fn block(&self, i: usize, j: usize) -> &CirculantSpec {
        &self.grid[i][j]
    }

    pub fn grid(&self) -> &[Vec<CirculantSpec>] {
        &self.grid
    }

    /// Rate (beta - gamma) / beta, meaningful when beta > gamma and H has full rank.
    pub fn designed_rate(&self) -> Option<f64> {
        (self.beta > self.gamma).then(|| (self.beta - self.gamma) as f64 / self.beta as f64)
    }

    /// All blocks zero, or some block row/column entirely zero.
    pub fn is_degenerate(&self) -> bool {
        let zero_row = self.grid.iter().any(|r| r.iter().all(CirculantSpec::is_zero));
        let zero_col = (0..self.block_cols()).any(|j| self.grid.iter().all(|r| r[j].is_zero()));
        zero_row || zero_col
    }

    /// Block (i, j) occupies rows [i m, (i+1) m) and columns [j m, (j+1) m).
    pub fn expand(&self) -> SparseBinaryMatrix {
        let m = self.m as usize;
        let mut rows = Vec::with_capacity(self.block_rows() * m);
        for brow in &self.grid {
            for i in 0..m {
                let mut r = Vec::new();
                for (j, spec) in brow.iter().enumerate() {
                    r.extend(spec.exponents().iter().map(|&e| j * m + (i + e as usize) % m));
                }
                rows.push(r);
            }
        }
        SparseBinaryMatrix::from_rows(self.block_cols() * m, rows).expect("block expansion is valid")
    }

    /// Transposing swaps the grid and negates every exponent.
    pub fn transposed(&self) -> Self {
        let grid = (0..self.block_cols())
            .map(|j| self.grid.iter().map(|r| r[j].transposed()).collect())
            .collect();
        Self { m: self.m, alpha: self.alpha, beta: self.gamma, gamma: self.beta, grid, family: self.family.clone() }
    }

    pub fn minor(&self, d: &DecompositionMinor) -> Result<Self> {
        if d.rows.is_empty() || d.cols.is_empty() {
            return Err(Error::Empty("minor index set"));
        }
        if d.rows.iter().any(|&i| i >= self.block_rows()) || d.cols.iter().any(|&j| j >= self.block_cols()) {
            return Err(Error::Dimension("minor index out of range".into()));
        }
        Self::from_grid(d.rows.iter().map(|&i| d.cols.iter().map(|&j| self.grid[i][j]).collect()).collect())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&BlockMatrixDoc::from(self))?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str::<BlockMatrixDoc>(text)?.try_into()
    }
}

/// Block-index sets selecting a sub-grid (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMinor {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

pub const FORMAT_NAME: &str = "qcgirth-blocks";
pub const FORMAT_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CellRepr {
    kind: String,
    #[serde(default)]
    exponents: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct BlockMatrixDoc {
    #[serde(default = "default_format")]
    format: String,
    #[serde(default = "default_version")]
    version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    family: Option<String>,
    m: u32,
    alpha: usize,
    beta: usize,
    gamma: usize,
    blocks: Vec<Vec<CellRepr>>,
}

fn default_format() -> String {
    FORMAT_NAME.into()
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

impl From<&BlockMatrix> for BlockMatrixDoc {
    fn from(b: &BlockMatrix) -> Self {
        let blocks = b
            .grid
            .iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        let kind = match c.weight() {
                            0 => "zero",
                            1 => "weight1",
                            _ => "weight2",
                        };
                        CellRepr { kind: kind.into(), exponents: c.exponents().into_iter().map(i64::from).collect() }
                    })
                    .collect()
            })
            .collect();
        Self {
            format: default_format(),
            version: FORMAT_VERSION,
            family: b.family.clone(),
            m: b.m,
            alpha: b.alpha,
            beta: b.beta,
            gamma: b.gamma,
            blocks,
        }
    }
}

impl TryFrom<BlockMatrixDoc> for BlockMatrix {
    type Error = Error;
    fn try_from(d: BlockMatrixDoc) -> Result<Self> {
        if d.format != FORMAT_NAME || d.version > FORMAT_VERSION {
            return Err(Error::InvalidParams(format!("unsupported document {} v{}", d.format, d.version)));
        }
        let m = d.m;
        let grid = d
            .blocks
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|c| match (c.kind.as_str(), c.exponents.as_slice()) {
                        ("zero", []) => CirculantSpec::zero(m),
                        ("weight1", [e]) => CirculantSpec::weight_one(m, *e),
                        ("weight2", [a, b]) => CirculantSpec::weight_two(m, *a, *b),
                        (k, e) => Err(Error::InvalidParams(format!("block kind {k:?} with {} exponents", e.len()))),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut b = BlockMatrix::assemble(grid, d.alpha, d.beta, d.gamma)?;
        b.family = d.family;
        Ok(b)
    }
}
