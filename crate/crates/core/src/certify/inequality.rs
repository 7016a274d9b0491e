//! The noncontextuality inequality built from SIC weights:
//!
//! ```text
//! Σ_i w_i ⟨Π_i⟩ − Σ_{i} w_i Σ_{j∈N(i)} ⟨Π_i Π_j⟩ <= y
//! ```
//!
//! with `N(i)` the neighbours of `i` in the orthogonality graph. Each edge
//! collects the coefficient `−(w_i + w_j)`.

use std::fmt;

use num_traits::{Signed, Zero};

use super::{orthogonality_graph, CertifyError, ProjectorSet, SicCertificate, SicStatus};
use crate::exact::{Pq, Rational};
use crate::graph::{max_weight_independent_set, Graph};

#[derive(Debug, Clone, PartialEq)]
pub struct Inequality {
    pub singles: Vec<(usize, Rational)>,
    pub pairs: Vec<((usize, usize), Rational)>,
    pub bound: Rational,
    pub graph: Graph,
}

impl Inequality {
    pub fn from_weights(g: &Graph, w: &[Rational], bound: Rational) -> Result<Self, CertifyError> {
        check_weights(g, w)?;
        Ok(Inequality {
            singles: w.iter().cloned().enumerate().collect(),
            pairs: g.edges().map(|(i, j)| ((i, j), -(&w[i] + &w[j]))).collect(),
            bound,
            graph: g.clone(),
        })
    }

    /// Left-hand side under a deterministic 0/1 assignment (bit `i` of
    /// `assignment` is the value of `Π_i`).
    pub fn evaluate_assignment(&self, assignment: u64) -> Rational {
        let on = |i: usize| assignment >> i & 1 == 1;
        let singles = self
            .singles
            .iter()
            .filter(|(i, _)| on(*i))
            .map(|(_, c)| c)
            .sum::<Rational>();
        let pairs = self
            .pairs
            .iter()
            .filter(|((i, j), _)| on(*i) && on(*j))
            .map(|(_, c)| c)
            .sum::<Rational>();
        singles + pairs
    }

    /// Maximum of [`Self::evaluate_assignment`] by trying all `2^n` assignments.
    pub fn brute_force_bound(&self) -> Rational {
        let n = self.graph.n();
        assert!(n <= 24, "2^{n} assignments");
        (0u64..1 << n)
            .map(|a| self.evaluate_assignment(a))
            .max()
            .expect("at least one assignment")
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: &Rational, body: String| {
            let sign = if c.is_negative() { "-" } else { "+" };
            let res = if first {
                let lead = if c.is_negative() { "-" } else { "" };
                write!(f, "{lead}{}{body}", Pq(&c.abs()))
            } else {
                write!(f, " {sign} {}{body}", Pq(&c.abs()))
            };
            first = false;
            res
        };
        for (i, c) in &self.singles {
            if !c.is_zero() {
                term(f, c, format!("<P{i}>"))?;
            }
        }
        for ((i, j), c) in &self.pairs {
            if !c.is_zero() {
                term(f, c, format!("<P{i}P{j}>"))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " <= {}", Pq(&self.bound))
    }
}

fn check_weights(g: &Graph, w: &[Rational]) -> Result<(), CertifyError> {
    if w.len() != g.n() {
        return Err(CertifyError::LengthMismatch {
            expected: g.n(),
            got: w.len(),
        });
    }
    if let Some(k) = w.iter().position(|x| x.is_negative()) {
        return Err(CertifyError::Input(format!("weight {k} is negative")));
    }
    Ok(())
}

/// Maximum of the inequality's left side over deterministic noncontextual
/// assignments, which is the heaviest independent set.
pub fn noncontextual_bound(g: &Graph, w: &[Rational]) -> Result<Rational, CertifyError> {
    check_weights(g, w)?;
    Ok(max_weight_independent_set(g, w).0)
}

pub fn emit_inequality(
    s: &ProjectorSet,
    cert: &SicCertificate,
) -> Result<Inequality, CertifyError> {
    if cert.status != SicStatus::Sic {
        return Err(CertifyError::NotSic(cert.status));
    }
    let g = orthogonality_graph(s, 1e-9)?;
    Inequality::from_weights(&g, &cert.w, cert.y.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::graph::parse_graph6;
    use proptest::prelude::*;

    #[test]
    fn small_bounds() {
        let ones = |n| vec![int(1); n];
        assert_eq!(
            noncontextual_bound(&Graph::cycle(5).unwrap(), &ones(5)).unwrap(),
            int(2)
        );
        for n in 1..8 {
            let k = Graph::complete(n).unwrap();
            assert_eq!(noncontextual_bound(&k, &ones(n)).unwrap(), int(1));
        }
        assert!(noncontextual_bound(&Graph::cycle(5).unwrap(), &ones(4)).is_err());
    }

    #[test]
    fn single_projector_has_no_pair_terms() {
        let g = Graph::new(1).unwrap();
        let ineq = Inequality::from_weights(&g, &[rat(1, 2)], rat(1, 2)).unwrap();
        assert!(ineq.pairs.is_empty());
        assert_eq!(ineq.to_string(), "1/2<P0> <= 1/2");
    }

    #[test]
    fn display_signs() {
        let g = Graph::path(2).unwrap();
        let ineq = Inequality::from_weights(&g, &[rat(1, 3), rat(1, 6)], rat(1, 3)).unwrap();
        assert_eq!(ineq.to_string(), "1/3<P0> + 1/6<P1> - 1/2<P0P1> <= 1/3");
    }

    #[test]
    fn named_graph_bounds_match_sweep() {
        for s in ["L?AB?vOLDPHa`o", "L?`D@bCUCbDgWc", "K@Q?WkiST@WB"] {
            let g = parse_graph6(s).unwrap();
            let w: Vec<Rational> = (0..g.n() as i64).map(|k| rat(k % 4 + 1, 7)).collect();
            let ineq = Inequality::from_weights(&g, &w, int(0)).unwrap();
            assert_eq!(ineq.pairs.len(), g.edge_count());
            assert_eq!(
                ineq.brute_force_bound(),
                noncontextual_bound(&g, &w).unwrap()
            );
        }
    }

    proptest! {
        #[test]
        fn bound_equals_sweep(
            n in 1usize..=10,
            edges in proptest::collection::vec((0usize..10, 0usize..10), 0..30),
            weights in proptest::collection::vec(0i64..20, 10),
        ) {
            let mut g = Graph::new(n).unwrap();
            for (u, v) in edges {
                if u < n && v < n && u != v {
                    g.add_edge(u, v);
                }
            }
            let w: Vec<Rational> = weights[..n].iter().map(|&k| rat(k, 3)).collect();
            let ineq = Inequality::from_weights(&g, &w, int(0)).unwrap();
            prop_assert_eq!(ineq.brute_force_bound(), noncontextual_bound(&g, &w).unwrap());
        }
    }
}
