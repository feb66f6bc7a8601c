//! Weighted digraph model: edge-list parsing, the four Laplacian variants,
//! arc reversal, and the structural in-forest dimension computed from the
//! sink components of the condensation.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{rel_eps, Matrix};

/// A weighted arc; vertex ids are 1-based, weights strictly positive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

/// Loop-free weighted digraph on vertices `1..=n`.
///
/// Arcs are stored sorted by `(tail, head)` with parallel arcs merged by
/// weight summation, so equal graphs have identical representations.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDigraph {
    n: usize,
    arcs: Vec<Arc>,
}

impl WeightedDigraph {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput(
                "vertex count must be at least 1".into(),
            ));
        }
        let mut merged: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (tail, head, weight) in arcs {
            validate_arc(n, tail, head, weight)?;
            *merged.entry((tail, head)).or_insert(0.0) += weight;
        }
        let arcs = merged
            .into_iter()
            .map(|((tail, head), weight)| Arc { tail, head, weight })
            .collect();
        Ok(WeightedDigraph { n, arcs })
    }

    /// Parses the edge-list format: `#` comment lines, an optional single
    /// header `n=<N>` before any arc, and arc lines `<tail> <head> <weight>`
    /// with 1-based vertex ids and positive weights. Without a header, `n`
    /// is the largest vertex id seen. Duplicate `(tail, head)` pairs merge
    /// by weight summation.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared_n: Option<usize> = None;
        let mut raw: Vec<(usize, usize, f64)> = Vec::new();
        let mut max_id = 0usize;
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw_line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n=") {
                if declared_n.is_some() {
                    return Err(parse_err(line_no, "duplicate n= header"));
                }
                if !raw.is_empty() {
                    return Err(parse_err(line_no, "n= header must precede all arcs"));
                }
                let n: usize = rest
                    .trim()
                    .parse()
                    .map_err(|_| parse_err(line_no, "malformed n= header"))?;
                if n == 0 {
                    return Err(parse_err(line_no, "vertex count must be at least 1"));
                }
                declared_n = Some(n);
                continue;
            }
            let fields: Vec<&str> = line.split_ascii_whitespace().collect();
            if fields.len() != 3 {
                return Err(parse_err(
                    line_no,
                    "expected `<tail> <head> <weight>` separated by whitespace",
                ));
            }
            let tail: usize = fields[0]
                .parse()
                .map_err(|_| parse_err(line_no, "malformed tail vertex id"))?;
            let head: usize = fields[1]
                .parse()
                .map_err(|_| parse_err(line_no, "malformed head vertex id"))?;
            let weight: f64 = fields[2]
                .parse()
                .map_err(|_| parse_err(line_no, "malformed weight"))?;
            if !weight.is_finite() || weight <= 0.0 {
                return Err(parse_err(line_no, "arc weight must be positive"));
            }
            if tail == 0 || head == 0 {
                return Err(parse_err(line_no, "vertex ids are 1-based"));
            }
            if tail == head {
                return Err(parse_err(
                    line_no,
                    "loop arcs (tail = head) are not allowed",
                ));
            }
            if let Some(n) = declared_n {
                if tail > n || head > n {
                    return Err(parse_err(
                        line_no,
                        &format!("vertex id exceeds declared n={n}"),
                    ));
                }
            }
            max_id = max_id.max(tail).max(head);
            raw.push((tail, head, weight));
        }
        let n = match declared_n {
            Some(n) => n,
            None if max_id > 0 => max_id,
            None => {
                return Err(Error::Parse {
                    line: 0,
                    message: "empty edge list: declare `n=<N>` or give at least one arc".into(),
                })
            }
        };
        WeightedDigraph::new(n, raw)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Matrix of arc weights `W`; zero where no arc exists.
    pub fn weight_matrix(&self) -> Matrix {
        let mut w = Matrix::zeros(self.n, self.n);
        for arc in &self.arcs {
            w[(arc.tail - 1, arc.head - 1)] = arc.weight;
        }
        w
    }

    /// Row Laplacian: `l_ij = -w_ij` off the diagonal, zero row sums.
    pub fn laplacian(&self) -> LaplacianMatrix {
        let mut m = Matrix::zeros(self.n, self.n);
        let mut out_sum = vec![0.0; self.n];
        for arc in &self.arcs {
            m[(arc.tail - 1, arc.head - 1)] = -arc.weight;
            out_sum[arc.tail - 1] += arc.weight;
        }
        for i in 0..self.n {
            m[(i, i)] = out_sum[i];
        }
        LaplacianMatrix(m)
    }

    /// Column Laplacian `L'`: same off-diagonal entries as `L`, diagonal
    /// chosen so that column sums vanish.
    pub fn column_laplacian(&self) -> Matrix {
        let mut m = Matrix::zeros(self.n, self.n);
        let mut in_sum = vec![0.0; self.n];
        for arc in &self.arcs {
            m[(arc.tail - 1, arc.head - 1)] = -arc.weight;
            in_sum[arc.head - 1] += arc.weight;
        }
        for j in 0..self.n {
            m[(j, j)] = in_sum[j];
        }
        m
    }

    /// Kirchhoff matrix `K = L'^T`.
    pub fn kirchhoff(&self) -> Matrix {
        self.column_laplacian().transpose()
    }

    /// Column Kirchhoff matrix `K' = L^T`.
    pub fn column_kirchhoff(&self) -> Matrix {
        self.laplacian().into_matrix().transpose()
    }

    /// Digraph with every arc reversed. Out-forest quantities of a digraph
    /// are the in-forest quantities of its reversal.
    pub fn reverse(&self) -> WeightedDigraph {
        let arcs = self
            .arcs
            .iter()
            .map(|a| (a.head, a.tail, a.weight))
            .collect::<Vec<_>>();
        WeightedDigraph::new(self.n, arcs).expect("reversal preserves validity")
    }

    /// Strongly connected components with no outgoing arc in the
    /// condensation, each sorted, ordered by smallest contained vertex.
    pub fn sink_components(&self) -> Vec<Vec<usize>> {
        let adjacency = self.adjacency();
        let components = tarjan_scc(&adjacency);
        let mut comp_of = vec![usize::MAX; self.n];
        for (id, comp) in components.iter().enumerate() {
            for &v in comp {
                comp_of[v] = id;
            }
        }
        let mut has_exit = vec![false; components.len()];
        for arc in &self.arcs {
            let (cu, cv) = (comp_of[arc.tail - 1], comp_of[arc.head - 1]);
            if cu != cv {
                has_exit[cu] = true;
            }
        }
        let mut sinks: Vec<Vec<usize>> = components
            .into_iter()
            .enumerate()
            .filter(|(id, _)| !has_exit[*id])
            .map(|(_, mut comp)| {
                comp.sort_unstable();
                comp.iter().map(|v| v + 1).collect()
            })
            .collect();
        sinks.sort_by_key(|comp| comp[0]);
        sinks
    }

    /// In-forest dimension `d`: the number of sink components, which equals
    /// both the minimum number of trees over all in-forests and the
    /// multiplicity of the zero eigenvalue of the Laplacian.
    pub fn forest_dimension(&self) -> usize {
        self.sink_components().len()
    }

    /// Transitive closure: `reach[i][j]` is true iff `j+1` is accessible from
    /// `i+1` by a directed path (every vertex reaches itself).
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let adjacency = self.adjacency();
        let mut reach = vec![vec![false; self.n]; self.n];
        for (start, row) in reach.iter_mut().enumerate() {
            let mut stack = vec![start];
            row[start] = true;
            while let Some(v) = stack.pop() {
                for &w in &adjacency[v] {
                    if !row[w] {
                        row[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        reach
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adjacency = vec![Vec::new(); self.n];
        for arc in &self.arcs {
            adjacency[arc.tail - 1].push(arc.head - 1);
        }
        adjacency
    }
}

fn validate_arc(n: usize, tail: usize, head: usize, weight: f64) -> Result<()> {
    if tail == 0 || head == 0 || tail > n || head > n {
        return Err(Error::InvalidInput(format!(
            "arc ({tail}, {head}) out of range for n = {n}"
        )));
    }
    if tail == head {
        return Err(Error::InvalidInput(format!("loop arc at vertex {tail}")));
    }
    if !weight.is_finite() || weight <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "arc ({tail}, {head}) has nonpositive weight {weight}"
        )));
    }
    Ok(())
}

fn parse_err(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Row Laplacian of a weighted digraph: zero row sums, nonpositive
/// off-diagonal entries, nonnegative diagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianMatrix(Matrix);

impl LaplacianMatrix {
    /// Validates the Laplacian structure of an arbitrary square matrix.
    pub fn new(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::DimensionMismatch(
                "Laplacian matrix must be square".into(),
            ));
        }
        let scale = m.max_abs();
        let eps = rel_eps(1e-12, scale);
        for i in 0..m.rows() {
            let row_sum: f64 = m.row(i).iter().sum();
            if row_sum.abs() > eps {
                return Err(Error::InvalidInput(format!(
                    "row {} sums to {row_sum:e}, not zero",
                    i + 1
                )));
            }
            if m[(i, i)] < -eps {
                return Err(Error::InvalidInput(format!(
                    "negative diagonal entry at row {}",
                    i + 1
                )));
            }
            for j in 0..m.cols() {
                if j != i && m[(i, j)] > eps {
                    return Err(Error::InvalidInput(format!(
                        "positive off-diagonal entry at ({}, {})",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(LaplacianMatrix(m))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }
}

fn tarjan_scc(adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adjacency: &'a [Vec<usize>],
        index: usize,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        components: Vec<Vec<usize>>,
    }

    fn connect(v: usize, st: &mut State<'_>) {
        st.idx[v] = Some(st.index);
        st.low[v] = st.index;
        st.index += 1;
        st.stack.push(v);
        st.on_stack[v] = true;
        for &w in &st.adjacency[v] {
            if st.idx[w].is_none() {
                connect(w, st);
                st.low[v] = st.low[v].min(st.low[w]);
            } else if st.on_stack[w] {
                st.low[v] = st.low[v].min(st.idx[w].unwrap());
            }
        }
        if st.low[v] == st.idx[v].unwrap() {
            let mut comp = Vec::new();
            loop {
                let w = st.stack.pop().expect("tarjan stack underflow");
                st.on_stack[w] = false;
                comp.push(w);
                if w == v {
                    break;
                }
            }
            st.components.push(comp);
        }
    }

    let n = adjacency.len();
    let mut st = State {
        adjacency,
        index: 0,
        idx: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        components: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.components
}
