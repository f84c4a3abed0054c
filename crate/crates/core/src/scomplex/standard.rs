use std::str::FromStr;

use super::{SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// Named fixture families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Δⁿ: one facet on `n + 1` vertices.
    Simplex,
    /// ∂Δⁿ: all `n`-element subsets of `n + 1` vertices.
    BoundaryOfSimplex,
    /// Cₙ: `n` vertices in a cycle, `n >= 3`.
    Cycle,
    /// Pₙ: `n` vertices in a line.
    Path,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex" => Ok(Family::Simplex),
            "boundary_of_simplex" | "boundary" => Ok(Family::BoundaryOfSimplex),
            "cycle" => Ok(Family::Cycle),
            "path" => Ok(Family::Path),
            other => Err(Error::BadParameter(format!("unknown family {other:?}"))),
        }
    }
}

pub fn standard_complex(family: Family, n: usize) -> Result<SimplicialComplex> {
    let facets: Vec<Vec<VertexId>> = match family {
        Family::Simplex => vec![(0..=n).collect()],
        Family::BoundaryOfSimplex => {
            if n == 0 {
                return Err(Error::BadParameter("∂Δ⁰ is empty".into()));
            }
            (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect()
        }
        Family::Cycle => {
            if n < 3 {
                return Err(Error::BadParameter(format!("cycle needs n >= 3, got {n}")));
            }
            (0..n).map(|i| vec![i, (i + 1) % n]).collect()
        }
        Family::Path => match n {
            0 => return Err(Error::BadParameter("path needs n >= 1".into())),
            1 => vec![vec![0]],
            _ => (0..n - 1).map(|i| vec![i, i + 1]).collect(),
        },
    };
    SimplicialComplex::from_facets(&facets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(k: &SimplicialComplex) -> Vec<String> {
        k.facet_labels().into_iter().map(|f| f.concat()).collect()
    }

    #[test]
    fn fixtures() {
        assert_eq!(labels(&standard_complex(Family::Simplex, 2).unwrap()), ["abc"]);
        assert_eq!(
            labels(&standard_complex(Family::BoundaryOfSimplex, 2).unwrap()),
            ["ab", "ac", "bc"]
        );
        assert_eq!(
            labels(&standard_complex(Family::Cycle, 4).unwrap()),
            ["ab", "ad", "bc", "cd"]
        );
        assert_eq!(labels(&standard_complex(Family::Path, 3).unwrap()), ["ab", "bc"]);
    }

    #[test]
    fn bad_parameters() {
        assert!(matches!(standard_complex(Family::Cycle, 2), Err(Error::BadParameter(_))));
        assert!(matches!(standard_complex(Family::Path, 0), Err(Error::BadParameter(_))));
        assert!("torus".parse::<Family>().is_err());
    }
}
