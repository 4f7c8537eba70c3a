//! Presentation 2-complexes of the universal abelian cover via Fox calculus.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::BasedFreeComplex;
use crate::error::{Error, Result};
use crate::group_ring::GroupRingElem;
use crate::lattice::LatticePoint;
use crate::matrix::Matrix;
use crate::qlinalg::DenseMatrix;
use crate::ring::{int, CoeffRing, Scalar};

/// A letter `x_i^{±1}`.
pub type Letter = (usize, i8);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationInput {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<Letter>>,
    /// Image of each generator in the deck lattice.
    pub assignment: Vec<LatticePoint>,
}

/// Free reduction (no cyclic reduction).
pub fn reduce_word(w: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &(g, e) in w {
        if out.last().is_some_and(|&(h, f)| h == g && f == -e) {
            out.pop();
        } else {
            out.push((g, e));
        }
    }
    out
}

/// Parses a word such as `tat^-1a^-2`, `t a t^-1 a^-2` or `x1*x2^3`.
/// Single-character generator names may be written without separators.
pub fn parse_word(s: &str, generators: &[String]) -> Result<Vec<Letter>> {
    let single = generators.iter().all(|g| g.chars().count() == 1);
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() || ch == '*' || ch == '.' {
            i += 1;
            continue;
        }
        let start = i;
        if single {
            i += 1;
        } else {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
        }
        let name: String = chars[start..i].iter().collect();
        let gen = generators
            .iter()
            .position(|g| *g == name)
            .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator '{name}' in '{s}'")))?;
        let mut exp: i64 = 1;
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            let es = i;
            if i < chars.len() && (chars[i] == '-' || chars[i] == '+') {
                i += 1;
            }
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[es..i].iter().collect();
            exp = text.parse().map_err(|_| Error::Parse(format!("bad exponent '{text}' in '{s}'")))?;
        }
        let sign: i8 = if exp < 0 { -1 } else { 1 };
        for _ in 0..exp.unsigned_abs() {
            out.push((gen, sign));
        }
    }
    Ok(reduce_word(&out))
}

impl PresentationInput {
    pub fn new(generators: &[&str], relators: &[&str], assignment: Vec<LatticePoint>) -> Result<Self> {
        let generators: Vec<String> = generators.iter().map(|g| g.to_string()).collect();
        let relators = relators.iter().map(|r| parse_word(r, &generators)).collect::<Result<Vec<_>>>()?;
        let p = PresentationInput { generators, relators, assignment };
        p.validate()?;
        Ok(p)
    }

    pub fn deck_rank(&self) -> usize {
        self.assignment.first().map_or(0, LatticePoint::rank)
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.deck_rank();
        if self.assignment.len() != self.generators.len() {
            return Err(Error::InvalidPresentation(format!(
                "{} generators but {} images",
                self.generators.len(),
                self.assignment.len()
            )));
        }
        if r == 0 || self.assignment.iter().any(|p| p.rank() != r) {
            return Err(Error::InvalidPresentation("images must all lie in Z^r with r >= 1".into()));
        }
        for (k, w) in self.relators.iter().enumerate() {
            if w.iter().any(|&(g, _)| g >= self.generators.len()) {
                return Err(Error::InvalidPresentation(format!("relator {k} uses an unknown generator")));
            }
            if !self.image(w).is_zero() {
                return Err(Error::InvalidPresentation(format!("relator {k} does not vanish in the abelian quotient")));
            }
        }
        let mut m = DenseMatrix::zero(CoeffRing::Rationals, self.generators.len(), r);
        for (i, p) in self.assignment.iter().enumerate() {
            for (j, &e) in p.0.iter().enumerate() {
                m.data[i][j] = int(e);
            }
        }
        if m.rank() != r {
            return Err(Error::InvalidPresentation("generator images do not span a finite-index sublattice".into()));
        }
        Ok(())
    }

    fn image(&self, w: &[Letter]) -> LatticePoint {
        let mut p = LatticePoint::zero(self.deck_rank());
        for &(g, e) in w {
            p = &p + &self.assignment[g].scale(e as i64);
        }
        p
    }

    /// Abelianized Fox derivative `∂w/∂x_gen`.
    pub fn fox_derivative(&self, w: &[Letter], gen: usize, ring: CoeffRing) -> GroupRingElem {
        let r = self.deck_rank();
        let mut prefix = LatticePoint::zero(r);
        let mut d = GroupRingElem::zero(ring, r);
        for &(g, e) in w {
            let img = &self.assignment[g];
            if e > 0 {
                if g == gen {
                    d.add_term(prefix.clone(), Scalar::from_integer(1.into()));
                }
                prefix = &prefix + img;
            } else {
                prefix = &prefix - img;
                if g == gen {
                    d.add_term(prefix.clone(), ring.canonical(int(-1)).expect("integer"));
                }
            }
        }
        d
    }
}

/// Degrees 0..2: one vertex, an edge per generator, a face per relator.
pub fn presentation_complex(p: &PresentationInput, ring: CoeffRing) -> Result<BasedFreeComplex> {
    p.validate()?;
    let r = p.deck_rank();
    let ng = p.generators.len();
    let nr = p.relators.len();
    let one = GroupRingElem::one(ring, r);
    let mut d1 = Matrix::zero(ring, r, 1, ng);
    for (i, img) in p.assignment.iter().enumerate() {
        d1.set(0, i, &GroupRingElem::monomial(ring, img.clone(), int(1)) - &one);
    }
    let mut d2 = Matrix::zero(ring, r, ng, nr);
    for (j, w) in p.relators.iter().enumerate() {
        for i in 0..ng {
            d2.set(i, j, p.fox_derivative(w, i, ring));
        }
    }
    let labels = vec![
        vec!["v".to_string()],
        p.generators.clone(),
        (0..nr).map(|j| format!("r{j}")).collect(),
    ];
    Ok(BasedFreeComplex::new(ring, r, vec![1, ng, nr], vec![d1, d2])?.with_labels(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group_ring::poly;
    use CoeffRing::Integers;

    #[test]
    fn bs12_fox_derivatives() {
        let p = PresentationInput::new(&["a", "t"], &["tat^-1a^-2"], vec![LatticePoint::t(0), LatticePoint::t(1)]).unwrap();
        let c = presentation_complex(&p, Integers).unwrap();
        assert_eq!(c.boundary(2).get(0, 0), poly(Integers, &[(1, 1), (0, -2)]));
        assert!(c.boundary(2).get(1, 0).is_zero());
        assert_eq!(c.boundary(1).get(0, 1), poly(Integers, &[(1, 1), (0, -1)]));
        assert!(c.boundary(1).get(0, 0).is_zero());
    }

    #[test]
    fn word_parsing() {
        let gens = vec!["x".to_string(), "y".to_string()];
        assert_eq!(parse_word("xyx^-1x y^2", &gens).unwrap(), vec![(0, 1), (1, 1), (1, 1), (1, 1)]);
        let long = vec!["x1".to_string(), "x2".to_string()];
        assert_eq!(parse_word("x1*x2^-1 x2", &long).unwrap(), vec![(0, 1)]);
        assert!(parse_word("z", &gens).is_err());
    }

    #[test]
    fn relator_must_die_in_quotient() {
        let r = PresentationInput::new(&["x"], &["x"], vec![LatticePoint::t(1)]);
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
        let r = PresentationInput::new(&["x"], &[], vec![LatticePoint::t(0)]);
        assert!(matches!(r, Err(Error::InvalidPresentation(_))));
    }
}
