//! Partitions and the rank-1 monomial witnesses they define.

use serde::{Deserialize, Serialize};

use super::AdhmDatum;
use crate::exactlin::{FpMatrix, PrimeField};

/// Weakly decreasing positive parts. Row `b` of the staircase holds the
/// monomials `x^a y^b` with `a < parts[b]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Sorts the parts and drops zeros.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn distinct_parts(&self) -> usize {
        let mut d = self.parts.clone();
        d.dedup();
        d.len()
    }

    /// All partitions of `n`, largest first part first.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: prefix.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                prefix.push(p);
                go(rest - p, p, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// Staircase cells `(a, b)` in basis order; `(0, 0)` is the monomial 1.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.parts.iter().enumerate().flat_map(|(b, &len)| (0..len).map(move |a| (a, b))).collect()
    }

    fn contains(&self, (a, b): (usize, usize)) -> bool {
        self.parts.get(b).is_some_and(|&len| a < len)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Minimal generators of the monomial ideal: distinct part sizes plus one.
pub fn generator_count_oracle(lambda: &Partition) -> usize {
    lambda.distinct_parts() + 1
}

/// The `r = 1` datum of the monomial ideal with staircase `lambda`: `X`, `Y`
/// are the transposed multiplication operators, `i = 0`, `j` reads off the
/// coefficient of 1.
pub fn partition_witness(lambda: &Partition, field: &PrimeField) -> AdhmDatum {
    let cells = lambda.cells();
    let n = cells.len();
    let index = |cell: (usize, usize)| cells.iter().position(|&c| c == cell);
    let mut mult_x = FpMatrix::zeros(field, n, n);
    let mut mult_y = FpMatrix::zeros(field, n, n);
    for (col, &(a, b)) in cells.iter().enumerate() {
        if lambda.contains((a + 1, b)) {
            mult_x.set(index((a + 1, b)).expect("cell"), col, 1);
        }
        if lambda.contains((a, b + 1)) {
            mult_y.set(index((a, b + 1)).expect("cell"), col, 1);
        }
    }
    let mut j = FpMatrix::zeros(field, 1, n);
    if n > 0 {
        j.set(0, 0, 1);
    }
    AdhmDatum {
        n,
        r: 1,
        x: mult_x.transpose(),
        y: mult_y.transpose(),
        i: FpMatrix::zeros(field, n, 1),
        j,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(Partition::new(vec![1, 0, 3, 1]).parts(), &[3, 1, 1]);
    }

    #[test]
    fn single_box_is_point_datum() {
        let f = PrimeField::new(5).unwrap();
        let d = partition_witness(&Partition::new(vec![1]), &f);
        assert!(d.x.is_zero() && d.y.is_zero() && d.i.is_zero());
        assert_eq!(d.j.to_i64_rows(), vec![vec![1]]);
    }

    #[test]
    fn staircase_two_one() {
        let f = PrimeField::new(3).unwrap();
        let lambda = Partition::new(vec![2, 1]);
        let d = partition_witness(&lambda, &f);
        assert!(d.is_solution() && d.is_stable());
        assert_eq!(d.h0_at(0, 0).unwrap(), 3);
        assert_eq!(generator_count_oracle(&lambda), 3);
    }

    #[test]
    fn staircase_oracle_values() {
        assert_eq!(generator_count_oracle(&Partition::new(vec![1])), 2);
        for k in 1..6 {
            assert_eq!(generator_count_oracle(&Partition::new((1..=k).collect())), k + 1);
        }
    }
}
