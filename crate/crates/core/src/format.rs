//! Line-oriented text records for lattices, partitions, matroids, ideals and
//! supports. Blank lines and lines starting with `#` are ignored. Writers emit
//! canonical forms, so `parse(write(x)) == x`.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::ideal::{IdealError, Support, TropicalIdeal};
use crate::lattice::{IntVector, IntegerLattice, LatticeError};
use crate::matroid::{matroid_from_hyperplanes, FiniteMatroid, Label, MatroidError};
use crate::partition::{Block, GeneratorSet, PartitionError, QuotientBlock, QuotientGeneratorSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("unexpected end of input, expected {0}")]
    Eof(&'static str),
    #[error("line {0}: unexpected trailing input")]
    Trailing(usize),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|&(_, l)| l)
    }

    fn next(&mut self, what: &'static str) -> Result<(usize, &'a str), FormatError> {
        let l = *self.lines.get(self.pos).ok_or(FormatError::Eof(what))?;
        self.pos += 1;
        Ok(l)
    }

    fn finish(&self) -> Result<(), FormatError> {
        match self.lines.get(self.pos) {
            Some(&(line, _)) => Err(FormatError::Trailing(line)),
            None => Ok(()),
        }
    }

    /// `keyword a b c` with the given number of unsigned arguments.
    fn header(&mut self, keyword: &'static str, args: usize) -> Result<Vec<usize>, FormatError> {
        let (line, text) = self.next(keyword)?;
        let mut words = text.split_whitespace();
        if words.next() != Some(keyword) {
            return Err(syntax(line, format!("expected `{keyword}`")));
        }
        let vals: Vec<usize> = words
            .map(|w| w.parse::<usize>().map_err(|_| syntax(line, format!("bad number `{w}`"))))
            .collect::<Result<_, _>>()?;
        if vals.len() != args {
            return Err(syntax(line, format!("`{keyword}` takes {args} arguments")));
        }
        Ok(vals)
    }

    fn point(&mut self, n: usize) -> Result<IntVector, FormatError> {
        let (line, text) = self.next("a point")?;
        parse_point(line, text, n)
    }

    fn index_set(&mut self, size: usize) -> Result<Vec<usize>, FormatError> {
        let (line, text) = self.next("an index set")?;
        text.split_whitespace()
            .map(|w| match w.parse::<usize>() {
                Ok(i) if i < size => Ok(i),
                _ => Err(syntax(line, format!("bad index `{w}`"))),
            })
            .collect()
    }
}

fn syntax(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn parse_point(line: usize, text: &str, n: usize) -> Result<IntVector, FormatError> {
    let coords: Vec<BigInt> = text
        .split_whitespace()
        .map(|w| w.parse::<BigInt>().map_err(|_| syntax(line, format!("bad integer `{w}`"))))
        .collect::<Result<_, _>>()?;
    if coords.len() != n {
        return Err(syntax(line, format!("expected {n} coordinates, found {}", coords.len())));
    }
    Ok(IntVector::new(coords))
}

fn push_point(out: &mut String, p: &IntVector) {
    let words: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
    out.push_str(&words.join(" "));
    out.push('\n');
}

fn push_indices(out: &mut String, s: &[usize]) {
    let words: Vec<String> = s.iter().map(|i| i.to_string()).collect();
    out.push_str(&words.join(" "));
    out.push('\n');
}

// ---- lattices

/// `lattice <n> <k>` and the HNF rows.
pub fn write_lattice(l: &IntegerLattice) -> String {
    let mut out = format!("lattice {} {}\n", l.ambient_dim(), l.rank());
    for b in l.basis() {
        push_point(&mut out, b);
    }
    out
}

/// Accepts any generating set.
pub fn parse_lattice(text: &str) -> Result<IntegerLattice, FormatError> {
    let mut lines = Lines::new(text);
    let l = read_lattice(&mut lines)?;
    lines.finish()?;
    Ok(l)
}

fn read_lattice(lines: &mut Lines) -> Result<IntegerLattice, FormatError> {
    let h = lines.header("lattice", 2)?;
    let (n, k) = (h[0], h[1]);
    let rows = (0..k).map(|_| lines.point(n)).collect::<Result<Vec<_>, _>>()?;
    Ok(IntegerLattice::hnf(n, &rows)?)
}

// ---- partitions

pub fn write_generators(g: &GeneratorSet) -> String {
    let mut out = format!("dpartition {} {} {}\n", g.ambient_dim(), g.d(), g.blocks().len());
    for b in g.blocks() {
        match b {
            Block::Finite(points) => {
                let _ = writeln!(out, "finite {}", points.len());
                for p in points {
                    push_point(&mut out, p);
                }
            }
            Block::Affine(a) => {
                out.push_str("affine\n");
                push_point(&mut out, a.offset());
                out.push_str(&write_lattice(a.lattice()));
            }
        }
    }
    out
}

/// Parses without checking (A1)–(A3).
pub fn parse_generators(text: &str) -> Result<GeneratorSet, FormatError> {
    let mut lines = Lines::new(text);
    let g = read_generators(&mut lines)?;
    lines.finish()?;
    Ok(g)
}

enum RawBlock {
    Finite(Vec<IntVector>),
    Affine(IntegerLattice),
}

fn read_blocks(lines: &mut Lines) -> Result<(usize, usize, Vec<RawBlock>), FormatError> {
    let h = lines.header("dpartition", 3)?;
    let (n, d, count) = (h[0], h[1], h[2]);
    let mut blocks = Vec::with_capacity(count);
    for _ in 0..count {
        let (line, text) = lines.next("a block")?;
        let words: Vec<&str> = text.split_whitespace().collect();
        match words.as_slice() {
            ["finite", k] => {
                let k: usize = k.parse().map_err(|_| syntax(line, "bad block size"))?;
                blocks.push(RawBlock::Finite((0..k).map(|_| lines.point(n)).collect::<Result<_, _>>()?));
            }
            ["affine"] => {
                // Blocks are orbit representatives, so the offset only needs to parse.
                lines.point(n)?;
                let l = read_lattice(lines)?;
                if l.ambient_dim() != n {
                    return Err(LatticeError::DimensionMismatch { expected: n, found: l.ambient_dim() }.into());
                }
                blocks.push(RawBlock::Affine(l));
            }
            _ => return Err(syntax(line, "expected `finite <k>` or `affine`")),
        }
    }
    Ok((n, d, blocks))
}

fn read_generators(lines: &mut Lines) -> Result<GeneratorSet, FormatError> {
    let (n, d, raw) = read_blocks(lines)?;
    let blocks = raw
        .into_iter()
        .map(|b| match b {
            RawBlock::Finite(p) => Block::finite(p),
            RawBlock::Affine(l) => Block::affine(l),
        })
        .collect();
    Ok(GeneratorSet::new(n, d, blocks)?)
}

/// A lattice record for `L`, then a partition record whose finite blocks list
/// class representatives and whose affine blocks give intermediate lattices.
pub fn write_quotient_generators(g: &QuotientGeneratorSet) -> String {
    let mut out = write_lattice(g.quotient().lattice());
    let n = g.ambient_dim();
    let _ = writeln!(out, "dpartition {} {} {}", n, g.d(), g.blocks().len());
    for b in g.blocks() {
        match b {
            QuotientBlock::Finite(points) => {
                let _ = writeln!(out, "finite {}", points.len());
                for p in points {
                    push_point(&mut out, p);
                }
            }
            QuotientBlock::Coset(m) => {
                out.push_str("affine\n");
                push_point(&mut out, &IntVector::zeros(n));
                out.push_str(&write_lattice(m));
            }
        }
    }
    out
}

pub fn parse_quotient_generators(text: &str) -> Result<QuotientGeneratorSet, FormatError> {
    let mut lines = Lines::new(text);
    let g = read_quotient_generators(&mut lines)?;
    lines.finish()?;
    Ok(g)
}

fn read_quotient_generators(lines: &mut Lines) -> Result<QuotientGeneratorSet, FormatError> {
    let l = read_lattice(lines)?;
    let (n, d, raw) = read_blocks(lines)?;
    if n != l.ambient_dim() {
        return Err(LatticeError::DimensionMismatch { expected: l.ambient_dim(), found: n }.into());
    }
    let blocks = raw
        .into_iter()
        .map(|b| match b {
            RawBlock::Finite(p) => QuotientBlock::Finite(p),
            RawBlock::Affine(m) => QuotientBlock::Coset(m),
        })
        .collect();
    Ok(QuotientGeneratorSet::new(l.quotient(), d, blocks)?)
}

// ---- matroids

fn write_matroid_header(m: &FiniteMatroid) -> String {
    let mut out = format!("matroid {} {}\n", m.len(), m.rank());
    for l in m.ground() {
        match l {
            Label::Point(p) => {
                out.push_str("point ");
                push_point(&mut out, p);
            }
            Label::Token(s) => {
                let _ = writeln!(out, "token {s}");
            }
        }
    }
    out
}

/// Ground labels, then the circuits as index sets into the ground list.
pub fn write_matroid(m: &FiniteMatroid) -> String {
    let mut out = write_matroid_header(m);
    let _ = writeln!(out, "circuits {}", m.circuits().len());
    for c in m.circuits() {
        push_indices(&mut out, c);
    }
    out
}

/// Ground labels, then the hyperplanes.
pub fn write_matroid_hyperplanes(m: &FiniteMatroid) -> String {
    let mut out = write_matroid_header(m);
    let hs = m.hyperplanes();
    let _ = writeln!(out, "hyperplanes {}", hs.len());
    for h in &hs {
        push_indices(&mut out, h);
    }
    out
}

/// Accepts either a `circuits` or a `hyperplanes` section. The header rank
/// must match the rank of the parsed matroid.
pub fn parse_matroid(text: &str) -> Result<FiniteMatroid, FormatError> {
    let mut lines = Lines::new(text);
    let (hline, _) = *lines.lines.first().ok_or(FormatError::Eof("matroid"))?;
    let h = lines.header("matroid", 2)?;
    let (size, rank) = (h[0], h[1]);
    let mut ground = Vec::with_capacity(size);
    let mut dim = None;
    for _ in 0..size {
        let (line, text) = lines.next("a ground label")?;
        if let Some(rest) = text.strip_prefix("point ") {
            let n = rest.split_whitespace().count();
            if *dim.get_or_insert(n) != n {
                return Err(syntax(line, "points of different dimensions"));
            }
            ground.push(Label::Point(parse_point(line, rest, n)?));
        } else if let Some(rest) = text.strip_prefix("token ") {
            ground.push(Label::token(rest.trim()));
        } else {
            return Err(syntax(line, "expected `point ...` or `token ...`"));
        }
    }
    let (line, text) = lines.next("`circuits <k>` or `hyperplanes <k>`")?;
    let words: Vec<&str> = text.split_whitespace().collect();
    let (kind, k) = match words.as_slice() {
        [kind @ ("circuits" | "hyperplanes"), k] => {
            (*kind, k.parse::<usize>().map_err(|_| syntax(line, "bad count"))?)
        }
        _ => return Err(syntax(line, "expected `circuits <k>` or `hyperplanes <k>`")),
    };
    let sets = (0..k).map(|_| lines.index_set(size)).collect::<Result<Vec<_>, _>>()?;
    lines.finish()?;
    let m = if kind == "circuits" {
        FiniteMatroid::from_index_circuits(ground, sets)?
    } else {
        matroid_from_hyperplanes(ground, &sets)?
    };
    if m.rank() != rank {
        return Err(syntax(hline, format!("header rank {rank} but the matroid has rank {}", m.rank())));
    }
    Ok(m)
}

// ---- ideals and supports

/// `ideal <kind> <n>` followed by the defining record.
pub fn write_ideal(ideal: &TropicalIdeal) -> String {
    let mut out = format!("ideal {} {}\n", ideal.kind(), ideal.ambient_dim());
    match ideal {
        TropicalIdeal::Paving(p) => out.push_str(&write_generators(p.generators())),
        TropicalIdeal::LatticeDeg2(l) => out.push_str(&write_lattice(l.lattice())),
        TropicalIdeal::Quotient(q) => out.push_str(&write_quotient_generators(q.generators())),
    }
    out
}

pub fn parse_ideal(text: &str) -> Result<TropicalIdeal, FormatError> {
    let mut lines = Lines::new(text);
    let (line, head) = lines.next("`ideal <kind> <n>`")?;
    let words: Vec<&str> = head.split_whitespace().collect();
    let (kind, n) = match words.as_slice() {
        ["ideal", kind, n] => (*kind, n.parse::<usize>().map_err(|_| syntax(line, "bad dimension"))?),
        _ => return Err(syntax(line, "expected `ideal <kind> <n>`")),
    };
    let ideal = match kind {
        "paving" => TropicalIdeal::paving(read_generators(&mut lines)?)?,
        "lattice2" => TropicalIdeal::degree2_from_lattice(read_lattice(&mut lines)?)?,
        "degree3" => TropicalIdeal::degree3_from_pair(read_quotient_generators(&mut lines)?)?,
        "quotient" => TropicalIdeal::quotient_ideal(read_quotient_generators(&mut lines)?)?,
        other => return Err(syntax(line, format!("unknown ideal kind `{other}`"))),
    };
    lines.finish()?;
    if ideal.ambient_dim() != n {
        return Err(syntax(line, format!("header says {n} variables, body has {}", ideal.ambient_dim())));
    }
    Ok(ideal)
}

pub fn write_support(s: &Support) -> String {
    let mut out = format!("support {}\n", s.len());
    for p in s.points() {
        push_point(&mut out, p);
    }
    out
}

/// `support <k>` then `k` points, all in dimension `n`.
pub fn parse_support(text: &str, n: usize) -> Result<Support, FormatError> {
    let mut lines = Lines::new(text);
    let k = lines.header("support", 1)?[0];
    let points = (0..k).map(|_| lines.point(n)).collect::<Result<Vec<_>, _>>()?;
    lines.finish()?;
    Ok(Support::new(points)?)
}

/// Whether the text starts with the given record keyword.
pub fn starts_with_record(text: &str, keyword: &str) -> bool {
    Lines::new(text).peek().and_then(|l| l.split_whitespace().next()) == Some(keyword)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::non_pappus;

    fn v(xs: &[i64]) -> IntVector {
        IntVector::from_i64s(xs)
    }

    #[test]
    fn lattice_round_trip_and_generating_sets() {
        let l = IntegerLattice::from_rows(3, &[&[4, 0, 0], &[0, 2, 0], &[0, 0, 2]]).unwrap();
        assert_eq!(parse_lattice(&write_lattice(&l)).unwrap(), l);
        let text = "# comment\nlattice 2 3\n2 0\n0 2\n2 2\n";
        assert_eq!(parse_lattice(text).unwrap(), IntegerLattice::from_rows(2, &[&[2, 0], &[0, 2]]).unwrap());
        assert_eq!(write_lattice(&IntegerLattice::zero(2)), "lattice 2 0\n");
    }

    #[test]
    fn lattice_errors_carry_lines() {
        assert!(matches!(parse_lattice("lattice 2 1\n1 x\n"), Err(FormatError::Syntax { line: 2, .. })));
        assert!(matches!(parse_lattice("lattice 2 2\n1 0\n"), Err(FormatError::Eof(_))));
        assert!(matches!(parse_lattice("lattice 1 1\n1\n2\n"), Err(FormatError::Trailing(3))));
    }

    #[test]
    fn partition_round_trip() {
        let g = GeneratorSet::new(
            2,
            2,
            vec![
                Block::finite(vec![v(&[0, 0]), v(&[1, 0]), v(&[3, 1])]),
                Block::affine(IntegerLattice::from_rows(2, &[&[0, 5]]).unwrap()),
            ],
        )
        .unwrap();
        let text = write_generators(&g);
        assert_eq!(parse_generators(&text).unwrap(), g);
    }

    #[test]
    fn corrupted_partition_still_parses() {
        let text = "dpartition 1 2 2\nfinite 3\n0\n1\n3\nfinite 3\n0\n1\n5\n";
        let g = parse_generators(text).unwrap();
        assert!(!g.check_axioms().is_valid());
    }

    #[test]
    fn quotient_round_trip() {
        let ideal = TropicalIdeal::remark_example(3).unwrap();
        let TropicalIdeal::Quotient(q) = &ideal else { panic!() };
        let text = write_quotient_generators(q.generators());
        assert_eq!(&parse_quotient_generators(&text).unwrap(), q.generators());
    }

    #[test]
    fn matroid_round_trip_both_sections() {
        let m = non_pappus();
        assert_eq!(parse_matroid(&write_matroid(&m)).unwrap(), m);
        assert_eq!(parse_matroid(&write_matroid_hyperplanes(&m)).unwrap(), m);
        let pts = FiniteMatroid::uniform(2, vec![v(&[0]).into(), v(&[3]).into(), v(&[7]).into()]).unwrap();
        assert_eq!(parse_matroid(&write_matroid(&pts)).unwrap(), pts);
    }

    #[test]
    fn matroid_rank_mismatch() {
        let mut text = write_matroid(&non_pappus());
        text = text.replacen("matroid 9 3", "matroid 9 4", 1);
        assert!(matches!(parse_matroid(&text), Err(FormatError::Syntax { line: 1, .. })));
    }

    #[test]
    fn ideal_round_trips() {
        let ideals = vec![
            TropicalIdeal::degree2_from_lattice(IntegerLattice::from_rows(1, &[&[2]]).unwrap()).unwrap(),
            TropicalIdeal::m_s_ideal(2, &[0, 1, 2, 3, 4, 5]).unwrap(),
            TropicalIdeal::uniform_ideal(2, 3).unwrap(),
            TropicalIdeal::remark_example(3).unwrap(),
            TropicalIdeal::remark_example(4).unwrap(),
            TropicalIdeal::extend_point_matroid(&pointed_non_pappus()).unwrap(),
        ];
        for i in ideals {
            let text = write_ideal(&i);
            assert_eq!(parse_ideal(&text).unwrap(), i, "{text}");
        }
    }

    fn pointed_non_pappus() -> FiniteMatroid {
        let m = non_pappus();
        let ground: Vec<Label> = (0..9).map(|i| v(&[1 << i]).into()).collect();
        FiniteMatroid::from_index_circuits(ground, m.circuits().to_vec()).unwrap()
    }

    #[test]
    fn ideal_header_must_match() {
        let text = "ideal lattice2 2\nlattice 1 1\n2\n";
        assert!(parse_ideal(text).is_err());
        assert!(parse_ideal("ideal bogus 1\n").is_err());
    }

    #[test]
    fn support_round_trip() {
        let s = Support::new(vec![v(&[2, 0]), v(&[0, 0]), v(&[-1, 3])]).unwrap();
        assert_eq!(parse_support(&write_support(&s), 2).unwrap(), s);
        assert!(parse_support("support 2\n1\n1\n", 1).is_err());
    }
}
