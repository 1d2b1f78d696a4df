//! Line-oriented text formats for matrices, systems, states, Latin
//! squares, and solver traces.
//!
//! A matrix is a `<rows> <cols>` header followed by one whitespace-
//! separated line per row. Scalar tokens are signed integers, reduced
//! fractions `p/q`, `-inf`, or `+inf`. A system file opens with the word
//! `system` and carries the two matrices separated by blank lines; a state
//! file is a single-column matrix with the `u` block on top. Rendering is
//! canonical (single spaces, one trailing newline) and parsing accepts any
//! run of blanks between sections but none inside a matrix.
//!
//! Parse failures carry 1-based line and column positions.

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::matrix::{TropicalMatrix, TropicalVector};
use crate::solver::SolverTrace;
use crate::system::{BipartiteSystem, StateVector};
use crate::value::ExtendedValue;

fn parse_err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        col,
        message: message.into(),
    }
}

/// Line source with 1-based numbering.
struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            lines: src.lines().collect(),
            pos: 0,
        }
    }

    fn next_raw(&mut self) -> Option<(usize, &'a str)> {
        let line = *self.lines.get(self.pos)?;
        self.pos += 1;
        Some((self.pos, line))
    }

    fn next_nonblank(&mut self) -> Option<(usize, &'a str)> {
        while let Some((no, line)) = self.next_raw() {
            if !line.trim().is_empty() {
                return Some((no, line));
            }
        }
        None
    }

    fn end_of_input(&self) -> usize {
        self.lines.len() + 1
    }

    fn expect_end(&mut self) -> Result<()> {
        while let Some((no, line)) = self.next_raw() {
            if !line.trim().is_empty() {
                let col = tokens(line)[0].0;
                return Err(parse_err(no, col, "unexpected trailing content"));
            }
        }
        Ok(())
    }
}

/// Whitespace-separated tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_scalar(no: usize, col: usize, tok: &str) -> Result<ExtendedValue> {
    tok.parse()
        .map_err(|_| parse_err(no, col, format!("invalid scalar token `{tok}`")))
}

fn parse_count(no: usize, col: usize, tok: &str, what: &str) -> Result<usize> {
    let n: usize = tok
        .parse()
        .map_err(|_| parse_err(no, col, format!("invalid {what} `{tok}`")))?;
    if n == 0 {
        return Err(parse_err(no, col, format!("{what} must be positive")));
    }
    Ok(n)
}

fn expect_token_count(
    no: usize,
    line: &str,
    toks: &[(usize, &str)],
    want: usize,
    what: &str,
) -> Result<()> {
    if toks.len() < want {
        return Err(parse_err(
            no,
            line.len() + 1,
            format!("expected {want} {what}, found {}", toks.len()),
        ));
    }
    if toks.len() > want {
        return Err(parse_err(
            no,
            toks[want].0,
            format!("expected {want} {what}, found {}", toks.len()),
        ));
    }
    Ok(())
}

fn parse_matrix_section(cur: &mut Cursor) -> Result<TropicalMatrix> {
    let (no, line) = cur
        .next_nonblank()
        .ok_or_else(|| parse_err(cur.end_of_input(), 1, "expected a matrix header"))?;
    let toks = tokens(line);
    expect_token_count(no, line, &toks, 2, "header fields")?;
    let rows = parse_count(no, toks[0].0, toks[0].1, "row count")?;
    let cols = parse_count(no, toks[1].0, toks[1].1, "column count")?;

    let mut entries = Vec::with_capacity(rows * cols);
    for _ in 0..rows {
        let (no, line) = cur
            .next_raw()
            .ok_or_else(|| parse_err(cur.end_of_input(), 1, "expected a matrix row"))?;
        if line.trim().is_empty() {
            return Err(parse_err(
                no,
                1,
                "expected a matrix row, found a blank line",
            ));
        }
        let toks = tokens(line);
        expect_token_count(no, line, &toks, cols, "entries")?;
        for (col, tok) in toks {
            entries.push(parse_scalar(no, col, tok)?);
        }
    }
    Ok(TropicalMatrix::new(rows, cols, entries))
}

/// Parses a file holding exactly one matrix.
pub fn parse_matrix(src: &str) -> Result<TropicalMatrix> {
    let mut cur = Cursor::new(src);
    let m = parse_matrix_section(&mut cur)?;
    cur.expect_end()?;
    Ok(m)
}

pub fn render_matrix(m: &TropicalMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(ExtendedValue::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a system file: the literal header `system`, then A, then B.
pub fn parse_system(src: &str) -> Result<BipartiteSystem> {
    let mut cur = Cursor::new(src);
    let (no, line) = cur
        .next_nonblank()
        .ok_or_else(|| parse_err(cur.end_of_input(), 1, "expected `system` header"))?;
    let toks = tokens(line);
    if toks.len() != 1 || toks[0].1 != "system" {
        return Err(parse_err(no, toks[0].0, "expected `system` header"));
    }
    let a = parse_matrix_section(&mut cur)?;
    let b = parse_matrix_section(&mut cur)?;
    cur.expect_end()?;
    BipartiteSystem::new(a, b)
}

pub fn render_system(sys: &BipartiteSystem) -> String {
    format!(
        "system\n\n{}\n{}",
        render_matrix(sys.a()),
        render_matrix(sys.b())
    )
}

/// Parses a state file for a system with blocks of size `m` and `n`:
/// a single-column matrix of height m + n, `u` stacked over `w`.
pub fn parse_state(src: &str, m: usize, n: usize) -> Result<StateVector> {
    let mat = parse_matrix(src)?;
    if mat.cols() != 1 || mat.rows() != m + n {
        return Err(Error::DimensionMismatch {
            expected_rows: m + n,
            expected_cols: 1,
            found_rows: mat.rows(),
            found_cols: mat.cols(),
        });
    }
    let u: Vec<ExtendedValue> = (0..m).map(|i| mat.get(i, 0).clone()).collect();
    let w: Vec<ExtendedValue> = (m..m + n).map(|i| mat.get(i, 0).clone()).collect();
    Ok(StateVector::new(
        TropicalVector::new(u),
        TropicalVector::new(w),
    ))
}

pub fn render_state(x: &StateVector) -> String {
    let mut out = format!("{} 1\n", x.m() + x.n());
    for e in x.entries() {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

/// Parses a Latin square file: the order, then the grid.
pub fn parse_latin(src: &str) -> Result<LatinSquare> {
    let mut cur = Cursor::new(src);
    let (no, line) = cur
        .next_nonblank()
        .ok_or_else(|| parse_err(cur.end_of_input(), 1, "expected a latin square order"))?;
    let toks = tokens(line);
    expect_token_count(no, line, &toks, 1, "header fields")?;
    let n = parse_count(no, toks[0].0, toks[0].1, "order")?;

    let mut grid: Vec<Vec<i64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let (no, line) = cur
            .next_raw()
            .ok_or_else(|| parse_err(cur.end_of_input(), 1, "expected a latin square row"))?;
        if line.trim().is_empty() {
            return Err(parse_err(
                no,
                1,
                "expected a latin square row, found a blank line",
            ));
        }
        let toks = tokens(line);
        expect_token_count(no, line, &toks, n, "symbols")?;
        let mut row = Vec::with_capacity(n);
        for (col, tok) in toks {
            let s: i64 = tok
                .parse()
                .map_err(|_| parse_err(no, col, format!("invalid symbol `{tok}`")))?;
            row.push(s);
        }
        grid.push(row);
    }
    cur.expect_end()?;
    LatinSquare::from_grid(&grid)
}

pub fn render_latin(l: &LatinSquare) -> String {
    let mut out = format!("{}\n", l.order());
    for row in l.rows() {
        let row: Vec<String> = row.iter().map(usize::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Renders a solver trace: one header with the phase statistics, then the
/// recorded iterates, one state per line in coordinate order.
pub fn render_trace(t: &SolverTrace) -> String {
    let c = match &t.c {
        Some(c) => c.to_string(),
        None => "none".to_string(),
    };
    let mut out = format!(
        "trace s={} r={} c={} cont={} apps={}\n",
        t.s, t.r, c, t.continuation_steps, t.map_applications
    );
    for x in &t.iterates {
        let row: Vec<String> = x.entries().map(ExtendedValue::to_string).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
