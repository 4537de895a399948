//! Free Boolean algebras over finitely many generators, as truth tables.
//!
//! An element of `Fr(S)` with `|S| = s` is a Boolean function of `s`
//! variables, stored as a table of length `2^s` indexed by assignments
//! (bit `i` of the index is the value of generator `g_i`). Ultrafilters are
//! assignments; the support of an assignment is the set of generators it
//! sends to 1.

use rand::Rng;
use serde::Serialize;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::limits::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FreeAlgebra {
    generator_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FreeElement {
    #[serde(skip)]
    generator_count: usize,
    table: BitSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Assignment {
    pub bits: Vec<bool>,
    pub support: Vec<usize>,
}

impl Assignment {
    pub fn from_mask(s: usize, mask: usize) -> Self {
        let bits: Vec<bool> = (0..s).map(|i| mask >> i & 1 == 1).collect();
        let support = (0..s).filter(|&i| bits[i]).collect();
        Assignment { bits, support }
    }

    pub fn mask(&self) -> usize {
        self.support.iter().map(|&i| 1 << i).sum()
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DensityReport {
    pub generator_count: usize,
    pub exhaustive: bool,
    pub checked: usize,
    /// `(σ, τ)` pairs whose minimal support was not exactly `σ`.
    pub failures: Vec<(Vec<usize>, Vec<usize>)>,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl FreeAlgebra {
    pub fn new(generator_count: usize) -> Result<Self> {
        Self::with_limits(generator_count, &Limits::default())
    }

    pub fn with_limits(generator_count: usize, limits: &Limits) -> Result<Self> {
        if generator_count == 0 {
            return Err(Error::validation(
                "a free algebra needs at least one generator",
            ));
        }
        // Truth tables of 2^s bits stop being practical well before s = 32.
        let cap = limits.free_generators.min(26);
        if generator_count > cap {
            return Err(Error::cap("free generators", generator_count, cap));
        }
        Ok(FreeAlgebra { generator_count })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn assignment_count(&self) -> usize {
        1 << self.generator_count
    }

    fn from_fn(&self, f: impl Fn(usize) -> bool) -> FreeElement {
        let m = self.assignment_count();
        FreeElement {
            generator_count: self.generator_count,
            table: BitSet::from_indices(m, (0..m).filter(|&a| f(a))),
        }
    }

    pub fn zero(&self) -> FreeElement {
        self.from_fn(|_| false)
    }

    pub fn one(&self) -> FreeElement {
        self.from_fn(|_| true)
    }

    pub fn generator(&self, i: usize) -> Result<FreeElement> {
        self.check_generator(i)?;
        Ok(self.from_fn(|a| a >> i & 1 == 1))
    }

    fn check_generator(&self, i: usize) -> Result<()> {
        if i >= self.generator_count {
            return Err(Error::PointOutOfRange {
                point: i,
                size: self.generator_count,
            });
        }
        Ok(())
    }

    /// `∏σ · ∏_{t∈τ} −t`.
    pub fn basic_clopen(&self, sigma: &[usize], tau: &[usize]) -> Result<FreeElement> {
        for &i in sigma.iter().chain(tau) {
            self.check_generator(i)?;
        }
        if let Some(i) = sigma.iter().find(|i| tau.contains(i)) {
            return Err(Error::validation(format!(
                "generator g{i} is both required and excluded"
            )));
        }
        let pos: usize = sigma.iter().map(|&i| 1usize << i).fold(0, |a, b| a | b);
        let neg: usize = tau.iter().map(|&i| 1usize << i).fold(0, |a, b| a | b);
        Ok(self.from_fn(|a| a & pos == pos && a & neg == 0))
    }

    /// A satisfying assignment of least support. Weight levels are scanned
    /// upwards; within a level, masks come in increasing numeric order, so
    /// the result is deterministic.
    pub fn min_support_ultrafilter(&self, w: &FreeElement) -> Result<Assignment> {
        self.check(w)?;
        if w.is_zero() {
            return Err(Error::EmptyClopen);
        }
        let s = self.generator_count;
        for weight in 0..=s {
            if let Some(mask) = masks_of_weight(s, weight).find(|&m| w.table.contains(m)) {
                return Ok(Assignment::from_mask(s, mask));
            }
        }
        unreachable!("a nonzero table has a satisfying assignment")
    }

    /// Checks that the least support inside every nonzero `∏σ·∏−τ` is
    /// exactly `σ`. Exhaustive for `s <= 4`; otherwise `samples` random
    /// disjoint pairs.
    pub fn dense_small_support_check<R: Rng>(
        &self,
        samples: usize,
        rng: &mut R,
    ) -> Result<DensityReport> {
        let s = self.generator_count;
        let exhaustive = s <= 4;
        let pairs: Vec<(Vec<usize>, Vec<usize>)> = if exhaustive {
            // Each generator goes to σ, τ or neither.
            (0..3usize.pow(s as u32))
                .map(|mut code| {
                    let (mut sigma, mut tau) = (Vec::new(), Vec::new());
                    for i in 0..s {
                        match code % 3 {
                            1 => sigma.push(i),
                            2 => tau.push(i),
                            _ => {}
                        }
                        code /= 3;
                    }
                    (sigma, tau)
                })
                .collect()
        } else {
            (0..samples)
                .map(|_| {
                    let (mut sigma, mut tau) = (Vec::new(), Vec::new());
                    for i in 0..s {
                        match rng.gen_range(0..3) {
                            1 => sigma.push(i),
                            2 => tau.push(i),
                            _ => {}
                        }
                    }
                    (sigma, tau)
                })
                .collect()
        };
        let mut failures = Vec::new();
        for (sigma, tau) in &pairs {
            let w = self.basic_clopen(sigma, tau)?;
            if self.min_support_ultrafilter(&w)?.support != *sigma {
                failures.push((sigma.clone(), tau.clone()));
            }
        }
        Ok(DensityReport {
            generator_count: s,
            exhaustive,
            checked: pairs.len(),
            failures,
        })
    }

    fn check(&self, e: &FreeElement) -> Result<()> {
        if e.generator_count != self.generator_count {
            return Err(Error::AlgebraMismatch {
                left: self.generator_count,
                right: e.generator_count,
            });
        }
        Ok(())
    }

    /// Parses `g0 & !g1 | (g2 & 1)`. `!`, `~` and `-` negate; `&` and `*`
    /// bind tighter than `|` and `+`; `0` and `1` are constants.
    pub fn parse(&self, input: &str) -> Result<FreeElement> {
        let mut p = Parser {
            algebra: self,
            src: input.as_bytes(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

/// Masks over `s` bits with exactly `weight` ones, increasing.
fn masks_of_weight(s: usize, weight: usize) -> impl Iterator<Item = usize> {
    let limit = 1usize << s;
    let first = if weight == 0 {
        0
    } else {
        (1usize << weight) - 1
    };
    let mut next = Some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        if cur >= limit {
            return None;
        }
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack.
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            Some((((r ^ cur) >> 2) / c) | r)
        };
        Some(cur)
    })
}

impl FreeElement {
    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn table(&self) -> &BitSet {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.is_empty()
    }

    pub fn satisfied_by(&self, mask: usize) -> bool {
        self.table.contains(mask)
    }

    pub fn and(&self, o: &FreeElement) -> FreeElement {
        FreeElement {
            generator_count: self.generator_count,
            table: self.table.and(&o.table),
        }
    }

    pub fn or(&self, o: &FreeElement) -> FreeElement {
        FreeElement {
            generator_count: self.generator_count,
            table: self.table.or(&o.table),
        }
    }

    pub fn not(&self) -> FreeElement {
        FreeElement {
            generator_count: self.generator_count,
            table: self.table.not(),
        }
    }

    pub fn leq(&self, o: &FreeElement) -> bool {
        self.table.is_subset(&o.table)
    }
}

struct Parser<'a> {
    algebra: &'a FreeAlgebra,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, options: &[u8]) -> bool {
        self.skip_ws();
        if self.pos < self.src.len() && options.contains(&self.src[self.pos]) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FreeElement> {
        let mut acc = self.term()?;
        while self.eat(b"|+") {
            acc = acc.or(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<FreeElement> {
        let mut acc = self.factor()?;
        while self.eat(b"&*") {
            acc = acc.and(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeElement> {
        if self.eat(b"!~-") {
            return Ok(self.factor()?.not());
        }
        if self.eat(b"(") {
            let e = self.expr()?;
            if !self.eat(b")") {
                return Err(self.error("expected ')'"));
            }
            return Ok(e);
        }
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'0') => {
                self.pos += 1;
                Ok(self.algebra.zero())
            }
            Some(b'1') => {
                self.pos += 1;
                Ok(self.algebra.one())
            }
            Some(b'g') => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.src[self.pos..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .count();
                if digits == 0 {
                    return Err(self.error("expected a generator index after 'g'"));
                }
                let text = std::str::from_utf8(&self.src[self.pos..self.pos + digits])
                    .expect("ascii digits");
                self.pos += digits;
                let i: usize = text
                    .parse()
                    .map_err(|_| self.error("generator index too large"))?;
                self.algebra.generator(i).map_err(|_| Error::Parse {
                    offset: start,
                    message: format!(
                        "generator g{i} out of range for {} generators",
                        self.algebra.generator_count
                    ),
                })
            }
            Some(_) => Err(self.error("expected a generator, constant, '!' or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn fr(s: usize) -> FreeAlgebra {
        FreeAlgebra::new(s).unwrap()
    }

    #[test]
    fn basic_clopens() {
        let f = fr(3);
        assert_eq!(f.basic_clopen(&[0], &[1]).unwrap().table().count(), 2);
        assert_eq!(f.basic_clopen(&[], &[]).unwrap(), f.one());
        assert_eq!(
            f.basic_clopen(&[0, 1, 2], &[]).unwrap().table().to_vec(),
            vec![7]
        );
        assert!(f.basic_clopen(&[0], &[0]).is_err());
        assert!(f.basic_clopen(&[3], &[]).is_err());
    }

    #[test]
    fn min_support_examples() {
        let f = fr(3);
        let w = f.basic_clopen(&[0], &[1]).unwrap();
        assert_eq!(f.min_support_ultrafilter(&w).unwrap().support, vec![0]);
        assert_eq!(f.min_support_ultrafilter(&f.one()).unwrap().weight(), 0);
        let w = f.basic_clopen(&[0, 1, 2], &[]).unwrap();
        assert_eq!(f.min_support_ultrafilter(&w).unwrap().weight(), 3);
        assert_eq!(
            f.min_support_ultrafilter(&f.zero()),
            Err(Error::EmptyClopen)
        );
        let two = fr(2);
        let w = two.basic_clopen(&[0, 1], &[]).unwrap();
        assert_eq!(two.min_support_ultrafilter(&w).unwrap().weight(), 2);
    }

    #[test]
    fn density_exhaustive() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let r = fr(3).dense_small_support_check(0, &mut rng).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.checked, 27);
        assert!(r.passed());
        let r = fr(7).dense_small_support_check(50, &mut rng).unwrap();
        assert!(!r.exhaustive && r.passed());
    }

    #[test]
    fn caps() {
        assert!(FreeAlgebra::new(0).is_err());
        assert!(FreeAlgebra::new(17).unwrap_err().is_cap());
        assert!(FreeAlgebra::new(16).is_ok());
    }

    #[test]
    fn weight_masks() {
        let v: Vec<usize> = masks_of_weight(4, 2).collect();
        assert_eq!(v, vec![3, 5, 6, 9, 10, 12]);
        assert_eq!(masks_of_weight(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_of_weight(3, 3).collect::<Vec<_>>(), vec![7]);
    }

    #[test]
    fn parser() {
        let f = fr(3);
        assert_eq!(
            f.parse("g0 & !g1").unwrap(),
            f.basic_clopen(&[0], &[1]).unwrap()
        );
        assert_eq!(f.parse("g0 | -g0").unwrap(), f.one());
        assert_eq!(
            f.parse("(g0|g1)&g2").unwrap(),
            f.parse("g0&g2 | g1&g2").unwrap()
        );
        assert_eq!(f.parse(" 0 ").unwrap(), f.zero());
        assert!(matches!(
            f.parse("g0 &"),
            Err(Error::Parse { offset: 4, .. })
        ));
        assert!(matches!(f.parse("g5"), Err(Error::Parse { offset: 0, .. })));
        assert!(f.parse("(g0").is_err());
        assert!(f.parse("g0 g1").is_err());
    }
}
